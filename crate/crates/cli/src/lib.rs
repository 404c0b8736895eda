//! File formats, diagrams, bundled data and the random game corpus behind
//! the `exact-cone` command-line tool.

pub mod bundled;
pub mod corpus;
pub mod diagram;
pub mod format;
