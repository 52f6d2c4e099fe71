//! Decomposition-based evolutionary multi-objective optimization for
//! multi-modal problems, built around an assignment, deletion and addition
//! step that lets the population size vary.

pub mod ada;
pub mod baselines;
pub mod error;
pub mod evaluate;
pub mod maxmin;
pub mod normalize;
pub mod pareto;
pub mod problems;
pub mod record;
pub mod rng;
pub mod scalarize;
pub mod types;
pub mod variation;
pub mod weights;

pub use error::{Error, Result};
pub use rng::RngStream;
pub use types::{Bounds, DecisionVector, Individual, ObjectiveVector, Population};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/ada.md")]
    mod ada {}
    #[doc = include_str!("../../../book/src/originals.md")]
    mod originals {}
    #[doc = include_str!("../../../book/src/decision.md")]
    mod decision {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
}
