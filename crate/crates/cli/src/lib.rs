//! Library side of the `treepack` command: graph files and command bodies.

pub mod commands;
pub mod graph_file;

pub use graph_file::{load_graph, parse_graph, save_graph, GraphFileError};
