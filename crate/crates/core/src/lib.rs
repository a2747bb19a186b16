//! Finite, truncated decomposition spaces.
//!
//! The crate works with degreewise-finite simplicial sets truncated at a
//! bound `N`. It checks the Segal and decomposition axioms, computes
//! incidence coalgebras and Möbius functions, builds intervals with their
//! stretched/CULF factorisation, and constructs the local universal
//! simplicial groupoid `U_X` together with its classifying map.

pub mod axioms;
pub mod builders;
pub mod cli;
pub mod coalgebra;
pub mod decalage;
pub mod error;
pub mod interval;
pub mod report;
pub mod search;
pub mod sset;
pub mod square;
pub mod universal;

pub use error::{Error, Result};
pub use report::{AxiomReport, Verdict, Witness};
pub use sset::{CellMap, CellRef, Op, SimpMap, TruncSSet};
