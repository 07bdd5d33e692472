//! Rotationally symmetric hypersurfaces given as radial profiles, and their
//! area functionals.

mod functional;
mod interp;
mod length;
mod profile;

pub(crate) use functional::integrate_segments;
pub use functional::{graph_area, s_functional};
pub use length::{LengthProfile, TabulatedLength};
pub use profile::{ProfileKind, RadialProfile, ScalarFn};
