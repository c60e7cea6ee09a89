//! Rayon drivers over the core's chunked scans.

use contractlab_core::discretization::ContractFamily;
use contractlab_core::oracle::{self, ContractGrid, OracleResult};
use contractlab_core::{Error, Instance, Result};
use rayon::prelude::*;

const CHUNK: u64 = 1 << 14;

/// Parallel [`oracle::grid_optimal_contract_capped`]; same result, including
/// the lowest-index tie-break.
pub fn grid_optimal_contract(inst: &Instance, family: &ContractFamily, delta: f64, cap: u128) -> Result<OracleResult> {
    if family.m != inst.dim() {
        return Err(Error::DimensionMismatch { expected: inst.dim(), got: family.m });
    }
    let grid = ContractGrid::new(family, delta, cap)?;
    let chunks = grid.len().div_ceil(CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| oracle::scan_range(inst, &grid, c * CHUNK..((c + 1) * CHUNK).min(grid.len())))
        .reduce(|| None, oracle::merge_best);
    oracle::finish(&grid, best)
}
