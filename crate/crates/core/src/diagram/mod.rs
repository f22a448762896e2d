//! Oriented link diagrams from PD codes: signs, resolutions, Seifert
//! circles and their planar nesting, mirror and reversal.

pub mod corpus;
mod link;
pub mod moves;
mod pd;
mod planar;
mod resolution;

pub use link::{LinkDiagram, Loop, Occ};
pub use pd::{parse_batch, parse_pd, NamedDiagram};
pub use planar::{seifert_data, SeifertCircle, SeifertData};
pub use resolution::{resolve, smoothing_pairs, Resolution};
