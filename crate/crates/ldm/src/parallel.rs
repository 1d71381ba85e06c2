//! Multi-threaded drivers. Every work unit draws from its own derived seed,
//! so results are identical to the serial functions in `ldm_core`.

use ldm_core::ldm::{column_seed, fixed_holdout, ldm_column};
use ldm_core::recorder::{run_trial, CapacityEstimate, CapacityRun};
use ldm_core::{LDMatrix, LabeledDataset, Learner, Result};
use rayon::prelude::*;

/// Parallel counterpart of [`ldm_core::ldm::build_ldm`].
pub fn build_ldm_par<L: Learner + Sync + ?Sized>(
    learner: &L,
    ds: &LabeledDataset,
    k: usize,
    holdout_size: usize,
    master_seed: u64,
) -> Result<LDMatrix> {
    if k < 2 {
        return Err(ldm_core::Error::Argument(format!(
            "an LDM needs at least 2 columns, got {k}"
        )));
    }
    let split = fixed_holdout(ds, holdout_size, master_seed)?;
    let columns = (0..k)
        .into_par_iter()
        .map(|i| ldm_column(learner, &split, master_seed, i))
        .collect::<Result<Vec<_>>>()?;
    let seeds = (0..k).map(|i| column_seed(master_seed, i)).collect();
    LDMatrix::new(columns, seeds)
}

/// Parallel counterpart of [`ldm_core::recorder::estimate_capacity`].
pub fn estimate_capacity_par<L: Learner + Sync + ?Sized>(
    learner: &L,
    ds: &LabeledDataset,
    trials: usize,
    master_seed: u64,
) -> Result<CapacityRun> {
    if trials < 2 {
        return Err(ldm_core::Error::Argument(format!(
            "need at least 2 trials, got {trials}"
        )));
    }
    let counts = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(learner, ds, master_seed, t))
        .collect::<Result<Vec<_>>>()?;
    let estimate = CapacityEstimate::from_counts(&counts, ds.len(), ds.num_classes())?;
    Ok(CapacityRun { estimate, counts })
}
