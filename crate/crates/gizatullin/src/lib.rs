//! Exact combinatorics of Gizatullin surfaces.
//!
//! Boundary zigzags are weighted linear chains; a surface is described by
//! an [`ExtendedDivisor`], the boundary chain plus its feathers with exact
//! base points on the punctured boundary curves.

pub mod autgroup;
pub mod configinv;
pub mod document;
pub mod dot;
pub mod extdiv;
pub mod orbits;
pub mod poly;
pub mod serieslift;
pub mod sweep;
pub mod zigzag;

pub use configinv::{CStarPoint, PointSet};
pub use extdiv::{ExtendedDivisor, Feather};
pub use orbits::{OrbitReport, Verdict};
pub use poly::Poly;
pub use zigzag::{BlowupWord, Letter, WeightedChain};
