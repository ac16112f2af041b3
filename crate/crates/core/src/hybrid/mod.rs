//! Composite procedures: the HHO+BA binary wrapper feature selector and the
//! staged SSA→GWO tuner.

mod fitness;
mod mask;
mod select;
mod tune;

pub use fitness::{SelectionFitness, SelectionFitnessParams};
pub use mask::{binarize, binarize_raw, repair_mask, transfer, FeatureMask};
pub use select::{hybrid_hho_ba_select, HybridParams, SelectionOutcome};
pub use tune::{shrink_box, ssa_only, staged_ssa_gwo_tune, StagedOutcome, TunerStagePlan, MIN_STAGE_WIDTH};
