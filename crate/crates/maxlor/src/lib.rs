pub mod associated;
pub mod christoffel;
pub mod cli;
pub mod error;
pub mod incircular;
pub mod io;
pub mod koebe;
pub mod lorentz;
pub mod pattern;
pub mod quad;
pub mod verify;
pub mod weierstrass;

pub use error::{GeometryError, Result};
pub use lorentz::{IsotropicLine, LIsometry, LVec3, OrientedSphere, SpacelikeCircle};
