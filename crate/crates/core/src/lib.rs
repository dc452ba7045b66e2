//! Geometric convex functions with radial structure: exact Legendre,
//! polarity and gauge transforms on piecewise linear profiles, lattice
//! versions of the same transforms, the Santaló-type extremal analysis,
//! and functional covering numbers.

pub mod analysis;
pub mod bodies;
pub mod covering;
pub mod error;
pub mod grid;
pub mod profiles;
pub mod radial;
pub mod random;
pub mod roots;

pub use analysis::{LambdaMax, Regime, RegimeReport, SignPattern};
pub use bodies::{BodyDescriptor, ConvexBody};
pub use covering::{CoverSolution, CoveringEstimate, DualityReport};
pub use error::{Error, Result};
pub use grid::{Descriptor, GridFunction, GridSpec};
pub use profiles::{Profile, RadiusFunction, Tail, Transform};
pub use radial::{RadialFunction, Side};
