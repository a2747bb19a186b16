//! Constructors for the standard families of decomposition sets, plus file
//! formats for their inputs.

pub mod category;
pub mod corpus;
pub mod io;
pub mod monoid;
pub mod poset;
pub mod rpt;

pub use category::{category_nerve, FinCategory};
pub use monoid::{monoid_nerve, GradedMonoidPresentation};
pub use poset::{poset_nerve, FinPoset};
pub use rpt::{rpt_build, rpt_from_forests, PlaneForest, PlaneTree};
