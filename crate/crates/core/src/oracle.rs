//! Grid-search optimal contracts and exact pseudo-regret.
//!
//! The grid has `ceil(1/delta) + 1` points per axis (the last one clamped to
//! 1) over the family's free coordinates. Scans can be split into index
//! ranges with [`scan_range`] and merged with [`merge_best`], which is how
//! parallel drivers reproduce the sequential lowest-index tie-break.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::discretization::{ContractFamily, FamilyKind};
use crate::error::{invalid, Error, Result};
use crate::model::Instance;

pub const DEFAULT_GRID_CAP: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    Grid,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormCheck {
    pub utility: f64,
    pub contract: Vec<f64>,
    /// Grid and closed form differ by more than one grid cell of utility.
    pub disagrees: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_contract: Vec<f64>,
    pub best_utility: f64,
    pub method: OracleMethod,
    pub resolution: f64,
    pub closed_form: Option<ClosedFormCheck>,
}

impl OracleResult {
    /// Records a known optimum next to the grid result. The better of the
    /// two becomes the reported optimum.
    pub fn with_closed_form(mut self, inst: &Instance, contract: Vec<f64>) -> Self {
        let utility = inst.expected_utility(&contract);
        let cell = self.resolution * libm::sqrt(self.best_contract.len() as f64) + self.resolution;
        let disagrees = (utility - self.best_utility).abs() > 2.0 * cell;
        if utility > self.best_utility {
            self.best_utility = utility;
            self.best_contract = contract.clone();
            self.method = OracleMethod::ClosedForm;
        }
        self.closed_form = Some(ClosedFormCheck { utility, contract, disagrees });
        self
    }
}

/// Lazily indexed contract grid over a family.
#[derive(Debug, Clone)]
pub struct ContractGrid<'a> {
    family: &'a ContractFamily,
    axis: Vec<f64>,
    dim: usize,
    len: u64,
}

impl<'a> ContractGrid<'a> {
    pub fn new(family: &'a ContractFamily, delta: f64, cap: u128) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(invalid("delta", format!("must lie in (0, 1], got {delta}")));
        }
        let steps = libm::ceil(1.0 / delta - 1e-9) as usize;
        let axis: Vec<f64> = (0..=steps).map(|k| (k as f64 * delta).min(1.0)).collect();
        let dim = family.grid_dim();
        let blocks = match &family.kind {
            FamilyKind::Rays(r) => r.len().max(1) as u128,
            _ => 1,
        };
        let total = (axis.len() as u128).checked_pow(dim as u32).map(|n| n * blocks).unwrap_or(u128::MAX);
        if total > cap {
            return Err(Error::GridTooLarge {
                points: total,
                cap,
                advice: "use a linear, ray or zero-null family, or a coarser delta",
            });
        }
        Ok(Self { family, axis, dim, len: total as u64 })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Contract at grid index `i`, or `None` if it leaves the cube.
    pub fn point(&self, i: u64) -> Option<Vec<f64>> {
        let n = self.axis.len() as u64;
        let fam = self.family;
        match &fam.kind {
            FamilyKind::FullCube | FamilyKind::ZeroNull => {
                let offset = fam.m - self.dim;
                let mut f = vec![0.0; fam.m];
                let mut rest = i;
                for slot in f[offset..].iter_mut().rev() {
                    *slot = self.axis[(rest % n) as usize];
                    rest /= n;
                }
                Some(f)
            }
            FamilyKind::Linear => {
                let a = self.axis[i as usize];
                Some(fam.anchor.iter().map(|v| a * v).collect())
            }
            FamilyKind::Rays(rays) => {
                if rays.is_empty() {
                    return Some(fam.anchor.clone());
                }
                let r = &rays[(i / n) as usize];
                let beta = self.axis[(i % n) as usize];
                let f: Vec<f64> = fam.anchor.iter().zip(r).map(|(v, ri)| v + beta * ri).collect();
                f.iter().all(|x| (0.0..=1.0).contains(x)).then_some(f)
            }
        }
    }

    pub fn resolution(&self) -> f64 {
        if self.axis.len() > 1 {
            self.axis[1]
        } else {
            1.0
        }
    }
}

/// Best `(index, utility)` over grid indices `range`, lowest index on ties.
pub fn scan_range(inst: &Instance, grid: &ContractGrid<'_>, range: core::ops::Range<u64>) -> Option<(u64, f64)> {
    let mut best: Option<(u64, f64)> = None;
    for i in range {
        if let Some(f) = grid.point(i) {
            let u = inst.expected_utility(&f);
            if best.map_or(true, |(_, b)| u > b) {
                best = Some((i, u));
            }
        }
    }
    best
}

/// Combines two partial scans so that the result equals a single ordered scan.
pub fn merge_best(a: Option<(u64, f64)>, b: Option<(u64, f64)>) -> Option<(u64, f64)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if y.1 > x.1 || (y.1 == x.1 && y.0 < x.0) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

pub fn finish(grid: &ContractGrid<'_>, best: Option<(u64, f64)>) -> Result<OracleResult> {
    let (i, u) = best.ok_or_else(|| invalid("family", "grid contains no contract inside the cube"))?;
    Ok(OracleResult {
        best_contract: grid.point(i).expect("scanned point"),
        best_utility: u,
        method: OracleMethod::Grid,
        resolution: grid.resolution(),
        closed_form: None,
    })
}

pub fn grid_optimal_contract(inst: &Instance, family: &ContractFamily, delta: f64) -> Result<OracleResult> {
    grid_optimal_contract_capped(inst, family, delta, DEFAULT_GRID_CAP)
}

pub fn grid_optimal_contract_capped(
    inst: &Instance,
    family: &ContractFamily,
    delta: f64,
    cap: u128,
) -> Result<OracleResult> {
    if family.m != inst.dim() {
        return Err(Error::DimensionMismatch { expected: inst.dim(), got: family.m });
    }
    let grid = ContractGrid::new(family, delta, cap)?;
    let best = scan_range(inst, &grid, 0..grid.len());
    finish(&grid, best)
}

/// Per-round and cumulative pseudo-regret of a sequence of played contracts.
/// The benchmark is the larger of the oracle optimum and the best played
/// contract, so every round's regret is non-negative.
pub fn pseudo_regret(inst: &Instance, played: &[Vec<f64>], oracle: &OracleResult) -> Vec<(f64, f64)> {
    let utils: Vec<f64> = played.iter().map(|f| inst.expected_utility(f)).collect();
    let best = utils.iter().copied().fold(oracle.best_utility, f64::max);
    let mut cum = 0.0;
    utils
        .iter()
        .map(|u| {
            let step = best - u;
            cum += step;
            (step, cum)
        })
        .collect()
}
