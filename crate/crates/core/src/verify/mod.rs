//! Numerical verification of the growth bounds.

pub mod campaign;
pub mod compare;
pub mod generator;
pub mod grid;
pub mod lemmas;
pub mod limit;
pub mod sharpness;
pub mod steps;
pub mod theorem;

pub use campaign::{fuzz_campaign, CampaignReport};
pub use compare::{compare_factors, ComparisonTable};
pub use generator::{generate_draw, generate_instance, generate_instance_at, GeneratorConfig};
pub use grid::{min_ratio_search, pointwise_check, CircleGrid, RatioMinimum};
pub use lemmas::{lemma_sweep, LemmaReport};
pub use limit::{limit_recovery_check, limit_sweep, LimitReport};
pub use sharpness::{sharpness_check, ExtremalFamily, SharpnessReport};
pub use steps::{check_pole_ratio_step, check_root_ratio_step, proof_step_sweep};
pub use theorem::{verify_theorem, Status, VerificationReport, VerifyPolicy};
