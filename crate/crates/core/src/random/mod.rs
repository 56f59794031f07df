//! Random graphs: seeded sampling, copy counting, Monte Carlo experiments
//! and the explicit witness constructions.

mod count;
mod estimate;
mod sample;
mod witness;

pub use count::{count_copies, count_copies_capped, count_embeddings, DEFAULT_COPY_CAP};
pub use estimate::{
    mc_estimate, poisson_check, threshold_scan, wilson_interval, Estimate, PoissonReport, Property, ScanGrid,
};
pub use sample::{log_probability, sample_gnp, splitmix64, trial_key, unit_draw, EdgeProbability, SampleSpec};
pub use witness::{
    build_theorem1_witness, build_theorem2_witness, has_unextendable_copy, has_unextendable_copy_capped,
    theorem1_alpha, theorem2_alpha, Witness, DEFAULT_UNEXTENDABLE_CAP,
};
