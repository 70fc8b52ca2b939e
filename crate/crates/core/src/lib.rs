//! Median graphs and squaregraphs with their split-system and chord-diagram
//! descriptions.

pub mod chords;
pub mod embedding;
pub mod error;
pub mod generators;
pub mod genset;
pub mod graph;
pub mod hellyfication;
pub mod recognition;
pub mod splits;

pub use error::{Error, Result};
pub use graph::{Graph, GraphJson, Metric, VertexSet};
pub use splits::{Split, SplitSystem, SplitSystemJson, ThetaClasses, Zone};
