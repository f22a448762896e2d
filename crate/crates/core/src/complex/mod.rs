//! Cube-of-resolutions complexes, their reduced subcomplexes, chain maps
//! between them, the splitting into reduced halves and mirror duality.

mod chain;
mod cube;
mod dual;
mod identities;
mod map;
mod split;

pub use chain::ChainVector;
pub use cube::{CubeComplex, Generator, ReducedAt, Reduction};
pub use identities::{matrix_identities, MatrixCheck};
pub use dual::{mirror_dual_iso, MirrorDuality, MirrorReport};
pub use map::{chain_endo, ChainMap, EndoKind, MapRule};
pub use split::{split_reduced, SplitReport, Splitting};
