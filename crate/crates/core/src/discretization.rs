//! Contract families and their finite discretizations.
//!
//! [`build_direction_cover`] runs a greedy spherical-code pass over the
//! normalized directions `f - v` of a candidate grid; [`build_s_eps`] scales a
//! cover at angle `eps^2` radially from the anchor `v` to get the arm set
//! `S_eps = { v + sqrt(m) * beta * gamma : beta in {0, eps, ..., floor(1/eps) eps} }`
//! intersected with the family.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::model::dot;

/// Membership and deduplication tolerance on arm coordinates.
pub const COORD_TOL: f64 = 1e-12;

/// Largest uniform grid [`uniform_grid`] will build.
pub const UNIFORM_GRID_CAP: u128 = 10_000_000;

/// Largest candidate set a direction cover will enumerate.
pub const CANDIDATE_CAP: u128 = 20_000_000;

const MIN_OFFSET: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyKind {
    /// All of `[0, 1]^m`.
    FullCube,
    /// The face `f_0 = 0` of the cube.
    ZeroNull,
    /// `{ alpha * v : alpha in [0, 1] }`.
    Linear,
    /// `{ v + beta * r : beta >= 0, r in rays } ∩ [0, 1]^m` with unit rays.
    Rays(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractFamily {
    pub kind: FamilyKind,
    pub m: usize,
    pub anchor: Vec<f64>,
}

fn check_anchor(anchor: &[f64]) -> Result<()> {
    if anchor.is_empty() {
        return Err(invalid("anchor", "empty value vector"));
    }
    if let Some((i, v)) = anchor.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
        return Err(Error::ContractOutOfRange { index: i, value: *v });
    }
    Ok(())
}

impl ContractFamily {
    pub fn full_cube(anchor: Vec<f64>) -> Result<Self> {
        check_anchor(&anchor)?;
        Ok(Self { kind: FamilyKind::FullCube, m: anchor.len(), anchor })
    }

    /// Cube face with zero payment on the null outcome. The anchor needs
    /// `v_0 = 0`.
    pub fn zero_null(anchor: Vec<f64>) -> Result<Self> {
        check_anchor(&anchor)?;
        if anchor[0] != 0.0 {
            return Err(invalid("anchor", "the zero-null face needs v_0 = 0"));
        }
        if anchor.len() < 2 {
            return Err(invalid("anchor", "the zero-null face needs at least two outcomes"));
        }
        Ok(Self { kind: FamilyKind::ZeroNull, m: anchor.len(), anchor })
    }

    pub fn linear(anchor: Vec<f64>) -> Result<Self> {
        check_anchor(&anchor)?;
        Ok(Self { kind: FamilyKind::Linear, m: anchor.len(), anchor })
    }

    pub fn rays(anchor: Vec<f64>, rays: Vec<Vec<f64>>) -> Result<Self> {
        check_anchor(&anchor)?;
        for r in &rays {
            if r.len() != anchor.len() {
                return Err(Error::DimensionMismatch { expected: anchor.len(), got: r.len() });
            }
            if (libm::sqrt(dot(r, r)) - 1.0).abs() > COORD_TOL {
                return Err(invalid("rays", "ray directions must have unit norm"));
            }
        }
        Ok(Self { kind: FamilyKind::Rays(rays), m: anchor.len(), anchor })
    }

    pub fn name(&self) -> String {
        let kind = match self.kind {
            FamilyKind::FullCube => "full-cube",
            FamilyKind::ZeroNull => "zero-null",
            FamilyKind::Linear => "linear",
            FamilyKind::Rays(_) => "rays",
        };
        format!("{kind}(m={})", self.m)
    }

    /// Number of free coordinates of the family's natural grid.
    pub fn grid_dim(&self) -> usize {
        match &self.kind {
            FamilyKind::FullCube => self.m,
            FamilyKind::ZeroNull => self.m - 1,
            FamilyKind::Linear | FamilyKind::Rays(_) => 1,
        }
    }

    /// Membership of `f` in the family, up to [`COORD_TOL`].
    pub fn contains(&self, f: &[f64]) -> bool {
        if f.len() != self.m || f.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return false;
        }
        match &self.kind {
            FamilyKind::FullCube => true,
            FamilyKind::ZeroNull => f[0] == 0.0,
            FamilyKind::Linear => {
                let vv = dot(&self.anchor, &self.anchor);
                if vv == 0.0 {
                    return f.iter().all(|x| *x == 0.0);
                }
                let alpha = dot(f, &self.anchor) / vv;
                (-COORD_TOL..=1.0 + COORD_TOL).contains(&alpha)
                    && f.iter().zip(&self.anchor).all(|(x, v)| (x - alpha * v).abs() <= COORD_TOL)
            }
            FamilyKind::Rays(rays) => {
                let d: Vec<f64> = f.iter().zip(&self.anchor).map(|(x, v)| x - v).collect();
                if d.iter().all(|x| x.abs() <= COORD_TOL) {
                    return true;
                }
                rays.iter().any(|r| {
                    let beta = dot(&d, r);
                    beta >= 0.0 && d.iter().zip(r).all(|(x, ri)| (x - beta * ri).abs() <= COORD_TOL)
                })
            }
        }
    }

    /// Directions `(f - v)/|f - v|` of the candidate points used by the
    /// greedy cover, in lexicographic grid order.
    fn candidates(&self, density: usize) -> Result<Vec<Vec<f64>>> {
        let v = &self.anchor;
        match &self.kind {
            FamilyKind::Linear => {
                let norm = libm::sqrt(dot(v, v));
                if norm < MIN_OFFSET {
                    return Ok(Vec::new());
                }
                Ok(vec![v.iter().map(|x| -x / norm).collect()])
            }
            FamilyKind::Rays(rays) => Ok(rays
                .iter()
                .filter(|r| {
                    let step = 1.0 / density.max(1) as f64;
                    v.iter().zip(r.iter()).all(|(vi, ri)| (0.0..=1.0).contains(&(vi + step * ri)))
                })
                .cloned()
                .collect()),
            FamilyKind::FullCube | FamilyKind::ZeroNull => {
                let free = self.grid_dim();
                let offset = self.m - free;
                let n = density.max(2);
                let total = (n as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
                if total > CANDIDATE_CAP {
                    return Err(Error::GridTooLarge {
                        points: total,
                        cap: CANDIDATE_CAP,
                        advice: "use a larger angle, the zero-null face or a linear family",
                    });
                }
                let step = 1.0 / (n - 1) as f64;
                let mut idx = vec![0usize; free];
                let mut out = Vec::new();
                loop {
                    let mut d = vec![0.0; self.m];
                    for (o, slot) in d.iter_mut().enumerate() {
                        let f = if o < offset { 0.0 } else { idx[o - offset] as f64 * step };
                        *slot = f - v[o];
                    }
                    let norm = libm::sqrt(dot(&d, &d));
                    if norm >= MIN_OFFSET {
                        d.iter_mut().for_each(|x| *x /= norm);
                        out.push(d);
                    }
                    let mut pos = free;
                    loop {
                        if pos == 0 {
                            return Ok(out);
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < n {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
            }
        }
    }

    /// Worst-case angle between a direction `f - v`, `f` in the family, and
    /// the nearest candidate direction at grid density `n`.
    pub fn angular_resolution(&self, density: usize) -> f64 {
        match self.kind {
            FamilyKind::Linear | FamilyKind::Rays(_) => 0.0,
            FamilyKind::FullCube | FamilyKind::ZeroNull => {
                let free = self.grid_dim();
                let h = 1.0 / (density.max(2) - 1) as f64;
                let r_min = self.anchor[self.m - free..]
                    .iter()
                    .filter(|v| **v > 0.0 && **v < 1.0)
                    .map(|v| v.min(1.0 - v))
                    .fold(1.0, f64::min);
                libm::asin((libm::sqrt(free as f64) * h / (2.0 * r_min)).min(1.0))
            }
        }
    }
}

/// Default candidate density `max(20, ceil(4 / angle))`.
pub fn default_density(angle: f64) -> usize {
    (libm::ceil(4.0 / angle - 1e-9) as usize).max(20)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionCode {
    pub directions: Vec<Vec<f64>>,
    /// Covering angle in radians.
    pub angle: f64,
    /// Number of candidate directions the greedy pass covered.
    pub candidates: usize,
    pub density: usize,
}

impl DirectionCode {
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Largest cosine between `d` and a code direction (`-inf` if empty).
    pub fn best_cosine(&self, d: &[f64]) -> f64 {
        self.directions.iter().map(|g| dot(g, d)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest pairwise angle between code directions.
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.directions.iter().enumerate() {
            for b in &self.directions[i + 1..] {
                best = best.min(libm::acos(dot(a, b).clamp(-1.0, 1.0)));
            }
        }
        best
    }
}

/// Buckets unit vectors by cells of side `chord`; any vector within
/// Euclidean distance `chord` of a query sits in one of the 3^m neighbours.
struct CellIndex {
    chord: f64,
    bits: u32,
    cells: BTreeMap<u128, Vec<usize>>,
}

impl CellIndex {
    fn new(m: usize, chord: f64) -> Option<Self> {
        let bits = 128 / m as u32;
        let needed = libm::ceil(1.0 / chord + 2.0);
        if bits >= 64 || needed < (1u64 << (bits - 1)) as f64 {
            Some(Self { chord, bits: bits.min(63), cells: BTreeMap::new() })
        } else {
            None
        }
    }

    fn cell(&self, d: &[f64]) -> Vec<i64> {
        d.iter().map(|x| libm::floor(x / self.chord) as i64).collect()
    }

    fn key(&self, cell: &[i64]) -> u128 {
        let bias = 1i64 << (self.bits - 1);
        cell.iter().fold(0u128, |acc, c| (acc << self.bits) | (c + bias) as u128)
    }

    fn insert(&mut self, d: &[f64], id: usize) {
        let key = self.key(&self.cell(d));
        self.cells.entry(key).or_default().push(id);
    }

    fn any_near(&self, d: &[f64], mut hit: impl FnMut(usize) -> bool) -> bool {
        let base = self.cell(d);
        let m = base.len();
        let mut off = vec![-1i64; m];
        let mut probe = vec![0i64; m];
        loop {
            for i in 0..m {
                probe[i] = base[i] + off[i];
            }
            if let Some(ids) = self.cells.get(&self.key(&probe)) {
                if ids.iter().any(|&id| hit(id)) {
                    return true;
                }
            }
            let mut pos = m;
            loop {
                if pos == 0 {
                    return false;
                }
                pos -= 1;
                off[pos] += 1;
                if off[pos] <= 1 {
                    break;
                }
                off[pos] = -1;
            }
        }
    }
}

/// Greedy spherical code at covering angle `angle` over candidate directions
/// of `family` at grid density `density` (points per axis).
///
/// Candidates are visited in lexicographic grid order; a candidate joins the
/// code when no stored direction lies within `angle` of it. The result covers
/// every candidate and is an `angle`-packing.
pub fn build_direction_cover(family: &ContractFamily, angle: f64, density: usize) -> Result<DirectionCode> {
    if !(angle > 0.0 && angle < core::f64::consts::FRAC_PI_2) {
        return Err(invalid("angle", format!("must lie in (0, pi/2), got {angle}")));
    }
    if density == 0 {
        return Err(invalid("density", "need at least one candidate per axis"));
    }
    let candidates = family.candidates(density)?;
    let cos_angle = libm::cos(angle);
    let mut directions: Vec<Vec<f64>> = Vec::new();
    let mut index = CellIndex::new(family.m, 2.0 * libm::sin(angle / 2.0));
    for c in &candidates {
        let covered = match &index {
            Some(ix) => ix.any_near(c, |id| dot(&directions[id], c) >= cos_angle),
            None => directions.iter().any(|g| dot(g, c) >= cos_angle),
        };
        if !covered {
            if let Some(ix) = index.as_mut() {
                ix.insert(c, directions.len());
            }
            directions.push(c.clone());
        }
    }
    Ok(DirectionCode { directions, angle, candidates: candidates.len(), density })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedContractSet {
    pub arms: Vec<Vec<f64>>,
    pub eps: f64,
    pub code: DirectionCode,
    pub provenance: String,
}

impl DiscretizedContractSet {
    pub fn len(&self) -> usize {
        self.arms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arms.is_empty()
    }
}

fn snap(x: f64) -> f64 {
    if x.abs() <= COORD_TOL {
        0.0
    } else if (x - 1.0).abs() <= COORD_TOL {
        1.0
    } else {
        x
    }
}

fn dedupe_key(f: &[f64]) -> Vec<i64> {
    f.iter().map(|x| libm::round(x / COORD_TOL) as i64).collect()
}

/// Radial grid `{0, eps, ..., floor(1/eps) eps}`.
fn radial_grid(eps: f64) -> Vec<f64> {
    let top = libm::floor(1.0 / eps + 1e-9) as usize;
    (0..=top).map(|k| k as f64 * eps).collect()
}

/// Two-step discretization `S_eps` with a direction cover at angle `eps^2`
/// and the default candidate density.
pub fn build_s_eps(family: &ContractFamily, eps: f64) -> Result<DiscretizedContractSet> {
    build_s_eps_with(family, eps, default_density(eps * eps))
}

pub fn build_s_eps_with(family: &ContractFamily, eps: f64, density: usize) -> Result<DiscretizedContractSet> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(invalid("eps", format!("must lie in (0, 1), got {eps}")));
    }
    let code = build_direction_cover(family, eps * eps, density)?;
    let v = &family.anchor;
    let scale = libm::sqrt(family.m as f64);
    let mut seen = BTreeSet::new();
    let mut arms = Vec::new();
    let mut push = |f: Vec<f64>, arms: &mut Vec<Vec<f64>>| {
        if family.contains(&f) && seen.insert(dedupe_key(&f)) {
            arms.push(f);
        }
    };
    if code.is_empty() {
        push(v.clone(), &mut arms);
    }
    for g in &code.directions {
        for beta in radial_grid(eps) {
            let f: Vec<f64> = v.iter().zip(g).map(|(vi, gi)| snap(vi + scale * beta * gi)).collect();
            let f = if family.kind == FamilyKind::Linear { linear_point(v, &f) } else { f };
            push(f, &mut arms);
        }
    }
    if arms.is_empty() {
        return Err(Error::EmptyArmSet { family: family.name(), eps });
    }
    Ok(DiscretizedContractSet { arms, eps, code, provenance: family.name() })
}

/// Re-expresses a point on the linear segment as an exact `alpha * v`.
fn linear_point(v: &[f64], f: &[f64]) -> Vec<f64> {
    let alpha = snap(dot(f, v) / dot(v, v));
    v.iter().map(|x| alpha * x).collect()
}

/// `{0, eps, 2 eps, ..., <= 1}^m` in lexicographic order.
pub fn uniform_grid(m: usize, eps: f64) -> Result<DiscretizedContractSet> {
    uniform_grid_capped(m, eps, UNIFORM_GRID_CAP)
}

pub fn uniform_grid_capped(m: usize, eps: f64, cap: u128) -> Result<DiscretizedContractSet> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(invalid("eps", format!("must lie in (0, 1], got {eps}")));
    }
    let axis = radial_grid(eps);
    let total = (axis.len() as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::GridTooLarge { points: total, cap, advice: "use a larger eps" });
    }
    let mut arms = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; m];
    'outer: loop {
        arms.push(idx.iter().map(|&k| axis[k]).collect());
        let mut pos = m;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < axis.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
    let code = DirectionCode { directions: Vec::new(), angle: 0.0, candidates: 0, density: 0 };
    Ok(DiscretizedContractSet { arms, eps, code, provenance: format!("uniform-grid(m={m})") })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionEstimate {
    /// `(eps, greedy cover size)` per requested eps.
    pub covers: Vec<(f64, usize)>,
    pub d_hat: f64,
}

/// Default eps list for [`estimate_intrinsic_dimension`].
pub const DEFAULT_EPS_LIST: [f64; 3] = [0.09, 0.07, 0.05];

/// `d_hat = max_eps ln N(eps) / ln(1/eps)` over greedy covers at angle `eps`.
/// `density = None` picks [`default_density`] per eps.
pub fn estimate_intrinsic_dimension(
    family: &ContractFamily,
    eps_list: &[f64],
    density: Option<usize>,
) -> Result<DimensionEstimate> {
    if eps_list.is_empty() {
        return Err(invalid("eps_list", "empty"));
    }
    let mut covers = Vec::with_capacity(eps_list.len());
    let mut d_hat = 0.0f64;
    for &eps in eps_list {
        if !(eps > 0.0 && eps < 0.1) {
            return Err(invalid("eps_list", format!("entries must lie in (0, 0.1), got {eps}")));
        }
        let n = density.unwrap_or_else(|| default_density(eps));
        let size = build_direction_cover(family, eps, n)?.len();
        if size > 1 {
            d_hat = d_hat.max(libm::log(size as f64) / libm::log(1.0 / eps));
        }
        covers.push((eps, size));
    }
    Ok(DimensionEstimate { covers, d_hat })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoveringReport {
    pub samples: usize,
    pub slack: f64,
    /// Offending points with their best angle to the code.
    pub violations: Vec<(Vec<f64>, f64)>,
}

/// Draws `samples` fresh points of the family and checks that each offset
/// `f - v` lies within `angle + 2 * resolution` of some code direction.
pub fn check_covering<R: rand_core::RngCore>(
    family: &ContractFamily,
    code: &DirectionCode,
    samples: usize,
    rng: &mut R,
) -> CoveringReport {
    let slack = 2.0 * family.angular_resolution(code.density);
    let cos_bound = libm::cos(code.angle + slack);
    let mut violations = Vec::new();
    for _ in 0..samples {
        let f = sample_member(family, rng);
        let d: Vec<f64> = f.iter().zip(&family.anchor).map(|(x, v)| x - v).collect();
        let norm = libm::sqrt(dot(&d, &d));
        if norm < MIN_OFFSET {
            continue;
        }
        let best = code.best_cosine(&d) / norm;
        if best < cos_bound {
            violations.push((f, libm::acos(best.clamp(-1.0, 1.0))));
        }
    }
    CoveringReport { samples, slack, violations }
}

/// Uniform draw from the family (uniform in `beta` along a random ray for
/// the one-dimensional kinds).
pub fn sample_member<R: rand_core::RngCore>(family: &ContractFamily, rng: &mut R) -> Vec<f64> {
    use crate::rng::{int_in, unit_f64};
    let v = &family.anchor;
    match &family.kind {
        FamilyKind::FullCube => (0..family.m).map(|_| unit_f64(rng)).collect(),
        FamilyKind::ZeroNull => {
            let mut f = vec![0.0];
            f.extend((1..family.m).map(|_| unit_f64(rng)));
            f
        }
        FamilyKind::Linear => {
            let a = unit_f64(rng);
            v.iter().map(|x| a * x).collect()
        }
        FamilyKind::Rays(rays) => {
            if rays.is_empty() {
                return v.clone();
            }
            let r = &rays[int_in(rng, 0, rays.len())];
            let reach = v
                .iter()
                .zip(r)
                .map(|(vi, ri)| {
                    if *ri > 0.0 {
                        (1.0 - vi) / ri
                    } else if *ri < 0.0 {
                        -vi / ri
                    } else {
                        f64::INFINITY
                    }
                })
                .fold(f64::INFINITY, f64::min);
            let beta = unit_f64(rng) * reach;
            v.iter().zip(r).map(|(vi, ri)| (vi + beta * ri).clamp(0.0, 1.0)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn cube2() -> ContractFamily {
        ContractFamily::full_cube(vec![0.0, 1.0]).unwrap()
    }

    #[test]
    fn linear_family_has_one_direction() {
        let fam = ContractFamily::linear(vec![0.0, 0.6, 1.0]).unwrap();
        for angle in [0.5, 0.1, 0.01] {
            let code = build_direction_cover(&fam, angle, 50).unwrap();
            assert_eq!(code.len(), 1);
            let norm = libm::sqrt(1.36);
            assert!((code.directions[0][2] + 1.0 / norm).abs() < 1e-12);
        }
        let est = estimate_intrinsic_dimension(&fam, &DEFAULT_EPS_LIST, None).unwrap();
        assert_eq!(est.d_hat, 0.0);
    }

    #[test]
    fn degenerate_linear_family_is_empty_code() {
        let fam = ContractFamily::linear(vec![0.0, 0.0]).unwrap();
        assert!(build_direction_cover(&fam, 0.2, 10).unwrap().is_empty());
        let s = build_s_eps(&fam, 0.3).unwrap();
        assert_eq!(s.arms, vec![vec![0.0, 0.0]]);
    }

    #[test]
    fn cube_cover_covers_every_candidate_and_packs() {
        let fam = cube2();
        let code = build_direction_cover(&fam, 0.3, 50).unwrap();
        let cands = fam.candidates(50).unwrap();
        assert_eq!(code.candidates, cands.len());
        let c = libm::cos(0.3);
        for d in &cands {
            assert!(code.best_cosine(d) >= c);
        }
        assert!(code.min_separation() > 0.3);
        for g in &code.directions {
            assert!((dot(g, g) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hashed_and_linear_scan_agree() {
        let fam = ContractFamily::full_cube(vec![0.0, 0.5, 1.0]).unwrap();
        let code = build_direction_cover(&fam, 0.15, 25).unwrap();
        let cos_angle = libm::cos(0.15);
        let mut plain: Vec<Vec<f64>> = Vec::new();
        for c in fam.candidates(25).unwrap() {
            if !plain.iter().any(|g| dot(g, &c) >= cos_angle) {
                plain.push(c);
            }
        }
        assert_eq!(code.directions, plain);
    }

    #[test]
    fn identical_candidates_give_one_direction() {
        let fam = ContractFamily::rays(vec![0.0, 1.0], vec![vec![0.0, -1.0], vec![0.0, -1.0]]).unwrap();
        assert_eq!(build_direction_cover(&fam, 0.1, 10).unwrap().len(), 1);
        let est = estimate_intrinsic_dimension(&fam, &DEFAULT_EPS_LIST, None).unwrap();
        assert_eq!(est.d_hat, 0.0);
    }

    #[test]
    fn s_eps_linear_quarter() {
        let fam = ContractFamily::linear(vec![0.0, 1.0]).unwrap();
        let s = build_s_eps(&fam, 0.25).unwrap();
        assert!(s.len() <= 5);
        assert_eq!(s.arms[0], vec![0.0, 1.0]);
        for f in &s.arms {
            assert!(fam.contains(f));
            assert_eq!(f[0], 0.0);
        }
    }

    #[test]
    fn s_eps_cube_stays_in_cube() {
        let fam = cube2();
        let s = build_s_eps(&fam, 0.2).unwrap();
        assert!(s.arms.iter().all(|f| f.iter().all(|x| (0.0..=1.0).contains(x))));
        assert!(s.len() <= (1 + 5) * s.code.len() + 1);
        assert_eq!(s.arms[0], vec![0.0, 1.0]);
    }

    #[test]
    fn s_eps_rejects_bad_eps() {
        assert!(build_s_eps(&cube2(), 1.0).is_err());
        assert!(build_s_eps(&cube2(), 0.0).is_err());
    }

    #[test]
    fn uniform_grids() {
        assert_eq!(uniform_grid(1, 0.5).unwrap().arms, vec![vec![0.0], vec![0.5], vec![1.0]]);
        assert_eq!(uniform_grid(2, 0.5).unwrap().len(), 9);
        assert!(uniform_grid(3, 0.01).is_ok());
        assert!(matches!(uniform_grid_capped(3, 0.01, 1_000_000), Err(Error::GridTooLarge { .. })));
        let g = uniform_grid(1, 0.3).unwrap();
        assert_eq!(g.len(), 4);
        assert!((g.arms[3][0] - 0.9).abs() < 1e-12);
    }

    #[test]
    fn cube_dimension_estimate_is_bounded() {
        let est = estimate_intrinsic_dimension(&cube2(), &DEFAULT_EPS_LIST, None).unwrap();
        assert!(est.d_hat <= 1.0 + 0.3, "{est:?}");
        assert!(est.d_hat > 0.5);
    }

    #[test]
    fn fresh_samples_are_covered() {
        for m in [2, 3] {
            let mut v = vec![1.0; m];
            v[0] = 0.0;
            let fam = ContractFamily::full_cube(v).unwrap();
            for eps in [0.3, 0.2] {
                let code = build_direction_cover(&fam, eps, default_density(eps)).unwrap();
                let rep = check_covering(&fam, &code, 2000, &mut seeded(5));
                assert!(rep.violations.is_empty(), "m={m} eps={eps} {:?}", rep.violations.first());
            }
        }
    }

    #[test]
    fn zero_null_face() {
        let fam = ContractFamily::zero_null(vec![0.0, 1.0, 1.0]).unwrap();
        assert_eq!(fam.grid_dim(), 2);
        let s = build_s_eps(&fam, 0.3).unwrap();
        assert!(s.arms.iter().all(|f| f[0] == 0.0 && fam.contains(f)));
        assert!(ContractFamily::zero_null(vec![0.5, 1.0]).is_err());
    }
}
