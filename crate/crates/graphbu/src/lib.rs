//! Two-strand graph braid groups computed through a discrete gradient
//! field on the configuration complexes of a graph, and a decision
//! procedure for the Borsuk-Ulam property of homotopy classes of maps
//! between finite graphs.

pub mod braid;
pub mod bu;
pub mod cli;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod involution;
pub mod io;
pub mod morse;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
