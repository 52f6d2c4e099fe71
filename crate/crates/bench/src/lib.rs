//! Seeded experiment campaigns over the `mmoada` algorithms: declarative
//! configs, per-cell result directories, indicator and APS tables, and
//! decision-making and plot-data exports.

pub mod campaign;
pub mod config;
pub mod export;

pub use campaign::{run_campaign, run_campaign_with, CampaignSummary, IndicatorRow};
pub use config::{AlgorithmSpec, ExperimentConfig, ProblemSpec, Variant};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/campaigns.md")]
mod campaigns_chapter {}
