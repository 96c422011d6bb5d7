//! Greedy construction of covering and partial-covering linear codes, and
//! block-diagonal composition of parity checks.
//!
//! The greedy builder starts from `C_0 = {0}` and repeatedly adjoins the
//! vector `x` that leaves the fewest target points outside radius `r` of
//! `<C_j; x>`. It keeps `dist[y] = d(y, C_j)` for every point of the
//! ambient space, so adjoining `x` is one pass
//! `dist'[y] = min_a dist[y - a x]`, and scoring a candidate only touches
//! the currently uncovered target points.

use std::collections::BTreeSet;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::fq::{nullspace_basis, solve_particular, FieldSpec, FqMatrix, FqVector, Shift, Space};

/// Largest ambient space (q^n points) the greedy builder will materialize.
pub const DEFAULT_MAX_POINTS: u64 = 1 << 24;
/// Budget on candidate-scoring work per extension step (point visits).
pub const DEFAULT_MAX_WORK: u64 = 1 << 32;
/// Largest `log2 q^n` scored exhaustively without the binary transform.
pub const EXHAUSTIVE_BITS_DIRECT: f64 = 14.0;
/// Candidates drawn per step under [`CandidatePolicy::RandomSample`] by
/// [`CandidatePolicy::auto`].
pub const DEFAULT_SAMPLE: usize = 64;

/// How extension vectors are proposed at each greedy step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CandidatePolicy {
    /// Every nonzero vector whose first nonzero entry is 1 (scalar
    /// multiples give the same extended code).
    Exhaustive,
    /// `count` seeded random vectors per step, plus the smallest uncovered
    /// target point so that every step makes progress.
    RandomSample { count: usize, seed: u64 },
}

impl CandidatePolicy {
    /// Exhaustive when `n log2 q <= 20` for q = 2, where all candidates
    /// are scored by one transform. For q > 2 each candidate is scored
    /// directly, about `q^(2n)` work per step, so the cut is `q^n <= 2^14`.
    /// Otherwise a seeded sample.
    pub fn auto(field: FieldSpec, n: usize, seed: u64) -> Self {
        let bits = n as f64 * (field.q() as f64).log2();
        let cut = if field.q() == 2 { 20.0 } else { EXHAUSTIVE_BITS_DIRECT };
        if bits <= cut + 1e-9 {
            CandidatePolicy::Exhaustive
        } else {
            CandidatePolicy::RandomSample {
                count: DEFAULT_SAMPLE,
                seed,
            }
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            CandidatePolicy::Exhaustive => None,
            CandidatePolicy::RandomSample { seed, .. } => Some(*seed),
        }
    }
}

/// A set of points that must be covered.
#[derive(Clone, Debug)]
pub enum TargetSet {
    /// All of GF(q)^n.
    Full { field: FieldSpec, n: usize },
    /// An explicit list of distinct points.
    Explicit { field: FieldSpec, n: usize, points: Vec<FqVector> },
    /// Union of the cosets `{x : H x = s}` over the listed syndromes.
    Cosets { h: FqMatrix, syndromes: Vec<FqVector> },
}

impl TargetSet {
    pub fn full(field: FieldSpec, n: usize) -> Self {
        TargetSet::Full { field, n }
    }

    /// Explicit target; duplicates are dropped, first occurrence kept.
    pub fn explicit(field: FieldSpec, n: usize, points: Vec<FqVector>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != n || p.field() != field {
                return Err(Error::shape(format!("target point of length {}, expected {n}", p.len())));
            }
            if seen.insert(p.entries().to_vec()) {
                out.push(p);
            }
        }
        Ok(TargetSet::Explicit { field, n, points: out })
    }

    /// Cosets of `h` for the given syndromes; repeated syndromes count once.
    pub fn cosets(h: FqMatrix, syndromes: Vec<FqVector>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in syndromes {
            if s.len() != h.rows() {
                return Err(Error::shape("syndrome length does not match parity-check rows"));
            }
            if seen.insert(s.entries().to_vec()) {
                out.push(s);
            }
        }
        Ok(TargetSet::Cosets { h, syndromes: out })
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            TargetSet::Full { field, .. } | TargetSet::Explicit { field, .. } => *field,
            TargetSet::Cosets { h, .. } => h.field(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            TargetSet::Full { n, .. } | TargetSet::Explicit { n, .. } => *n,
            TargetSet::Cosets { h, .. } => h.cols(),
        }
    }

    /// Number of points, if it fits in a `u64`. Cosets with unsolvable
    /// syndromes are empty.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            TargetSet::Full { field, n } => crate::fq::checked_pow(field.q() as u64, *n),
            TargetSet::Explicit { points, .. } => Some(points.len() as u64),
            TargetSet::Cosets { h, syndromes } => {
                let rank = h.rank();
                let per = crate::fq::checked_pow(h.field().q() as u64, h.cols() - rank)?;
                let solvable = syndromes
                    .iter()
                    .filter(|s| solve_particular(h, s).is_ok())
                    .count() as u64;
                solvable.checked_mul(per)
            }
        }
    }

    /// Sorted, distinct point indices of the set in `space`.
    pub fn indices(&self, space: &Space) -> Result<Vec<u64>> {
        if space.n() != self.n() || space.field() != self.field() {
            return Err(Error::shape("target set does not live in this space"));
        }
        let mut out = match self {
            TargetSet::Full { .. } => (0..space.size()).collect(),
            TargetSet::Explicit { points, .. } => {
                points.iter().map(|p| space.index(p.entries())).collect::<Vec<_>>()
            }
            TargetSet::Cosets { h, syndromes } => {
                let basis = nullspace_basis(h);
                let coeffs = Space::new(h.field(), basis.rows(), space.size())?;
                let f = h.field();
                let mut pts = Vec::new();
                for s in syndromes {
                    let x0 = match solve_particular(h, s) {
                        Ok(x) => x,
                        Err(Error::NoSolution) => continue,
                        Err(e) => return Err(e),
                    };
                    let mut c = vec![0u32; basis.rows()];
                    for ci in 0..coeffs.size() {
                        coeffs.point_into(ci, &mut c);
                        let mut x = x0.entries().to_vec();
                        for (bi, &cv) in c.iter().enumerate() {
                            if cv == 0 {
                                continue;
                            }
                            for (xe, &be) in x.iter_mut().zip(basis.row_slice(bi)) {
                                *xe = f.mul_add(*xe, cv, be);
                            }
                        }
                        pts.push(space.index(&x));
                    }
                }
                pts
            }
        };
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// One row of a [`GreedyTrace`]: the state of code `C_j` and the vector
/// adjoined to it (if any).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreedyStep {
    /// Dimension j of `C_j`.
    pub dimension: usize,
    pub radius: usize,
    /// `|Q(C_j)|`, target points farther than `radius` from `C_j`.
    pub uncovered: u64,
    /// `|Q(C_j)| / |X|`.
    pub fraction: f64,
    /// Index (base q, first entry most significant) of the vector adjoined
    /// to form `C_{j+1}`.
    pub chosen: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreedyTrace {
    pub q: u32,
    pub n: usize,
    pub target_size: u64,
    pub policy: CandidatePolicy,
    pub steps: Vec<GreedyStep>,
}

impl GreedyTrace {
    pub fn seed(&self) -> Option<u64> {
        self.policy.seed()
    }

    /// True when `|Q_{j+1}| |X| <= |Q_j|^2` at every step taken at a
    /// fixed radius.
    pub fn descent_holds(&self) -> bool {
        self.descent_violations().is_empty()
    }

    /// Steps `j` (as positions in `steps`) where the squared-fraction
    /// descent fails.
    pub fn descent_violations(&self) -> Vec<usize> {
        let x = self.target_size as u128;
        self.steps
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0].radius == w[1].radius && w[0].chosen.is_some())
            .filter(|(_, w)| (w[1].uncovered as u128) * x > (w[0].uncovered as u128).pow(2))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn uncovered_non_increasing(&self) -> bool {
        self.steps
            .windows(2)
            .all(|w| w[0].radius != w[1].radius || w[1].uncovered <= w[0].uncovered)
    }

    /// CSV with header `iteration,dimension,radius,uncovered,fraction,chosen`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["iteration", "dimension", "radius", "uncovered", "fraction", "chosen"])
            .map_err(csv_err)?;
        for (i, s) in self.steps.iter().enumerate() {
            w.write_record([
                i.to_string(),
                s.dimension.to_string(),
                s.radius.to_string(),
                s.uncovered.to_string(),
                crate::bounds::fmt_sig(s.fraction, 12),
                s.chosen.map(|c| c.to_string()).unwrap_or_default(),
            ])
            .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GreedyLimits {
    pub max_points: u64,
    pub max_work: u64,
}

impl Default for GreedyLimits {
    fn default() -> Self {
        GreedyLimits {
            max_points: DEFAULT_MAX_POINTS,
            max_work: DEFAULT_MAX_WORK,
        }
    }
}

/// Result of one [`Greedy::extend`] call.
#[derive(Clone, Debug, PartialEq)]
pub enum Extension {
    /// Every target point is already covered.
    NotNeeded,
    Chosen { vector: FqVector, uncovered: u64 },
}

/// Incremental greedy covering-code builder.
#[derive(Clone, Debug)]
pub struct Greedy {
    space: Space,
    radius: usize,
    policy: CandidatePolicy,
    limits: GreedyLimits,
    rng: Option<ChaCha8Rng>,
    basis: Vec<Vec<u32>>,
    dist: Vec<u8>,
    targets: Vec<u64>,
    uncovered: Vec<u64>,
    trace: GreedyTrace,
}

impl Greedy {
    pub fn new(target: &TargetSet, radius: usize, policy: CandidatePolicy) -> Result<Self> {
        Self::with_limits(target, radius, policy, GreedyLimits::default())
    }

    pub fn with_limits(
        target: &TargetSet,
        radius: usize,
        policy: CandidatePolicy,
        limits: GreedyLimits,
    ) -> Result<Self> {
        let field = target.field();
        let n = target.n();
        if n > u8::MAX as usize {
            return Err(Error::resource("block length", n, u8::MAX));
        }
        let space = Space::new(field, n, limits.max_points)?;
        let targets = target.indices(&space)?;
        let dist: Vec<u8> = (0..space.size()).map(|i| space.weight_of(i) as u8).collect();
        let uncovered: Vec<u64> = targets
            .iter()
            .copied()
            .filter(|&y| dist[y as usize] as usize > radius)
            .collect();
        let rng = policy.seed().map(ChaCha8Rng::seed_from_u64);
        let trace = GreedyTrace {
            q: field.q(),
            n,
            target_size: targets.len() as u64,
            policy: policy.clone(),
            steps: Vec::new(),
        };
        let mut g = Greedy {
            space,
            radius,
            policy,
            limits,
            rng,
            basis: Vec::new(),
            dist,
            targets,
            uncovered,
            trace,
        };
        g.record();
        Ok(g)
    }

    fn record(&mut self) {
        let total = self.targets.len().max(1) as f64;
        self.trace.steps.push(GreedyStep {
            dimension: self.basis.len(),
            radius: self.radius,
            uncovered: self.uncovered.len() as u64,
            fraction: self.uncovered.len() as f64 / total,
            chosen: None,
        });
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn uncovered(&self) -> u64 {
        self.uncovered.len() as u64
    }

    pub fn target_size(&self) -> u64 {
        self.targets.len() as u64
    }

    /// Largest distance from a target point to the current code.
    pub fn achieved_radius(&self) -> usize {
        self.targets
            .iter()
            .map(|&y| self.dist[y as usize] as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn trace(&self) -> &GreedyTrace {
        &self.trace
    }

    pub fn code(&self) -> LinearCode {
        let field = self.space.field();
        let data: Vec<u32> = self.basis.iter().flatten().copied().collect();
        let g = FqMatrix::from_flat(field, self.basis.len(), self.space.n(), data)
            .expect("basis rows have length n");
        LinearCode::from_generator(&g)
    }

    /// Lowers the covering radius target; uncovered points are recomputed.
    pub fn set_radius(&mut self, radius: usize) {
        self.radius = radius;
        let dist = &self.dist;
        self.uncovered = self
            .targets
            .iter()
            .copied()
            .filter(|&y| dist[y as usize] as usize > radius)
            .collect();
        self.record();
    }

    /// Number of uncovered points that adjoining `x` would cover.
    fn newly_covered(&self, x_idx: u64, x: &[u32]) -> u64 {
        let q = self.space.field().q();
        let r = self.radius;
        let covered = |y: u64| self.dist[y as usize] as usize <= r;
        if q == 2 {
            return self.uncovered.iter().filter(|&&y| covered(y ^ x_idx)).count() as u64;
        }
        let shifts: Vec<Shift> = (1..q).map(|a| self.space.shift(x, a)).collect();
        self.uncovered
            .iter()
            .filter(|&&y| shifts.iter().any(|s| covered(s.apply(y))))
            .count() as u64
    }

    fn candidates(&mut self) -> Result<Vec<u64>> {
        let field = self.space.field();
        match &self.policy {
            CandidatePolicy::Exhaustive => {
                let size = self.space.size();
                let work = (size / (field.q() as u64 - 1).max(1))
                    .saturating_mul(self.uncovered.len() as u64)
                    .saturating_mul(field.q() as u64 - 1);
                let use_transform = field.q() == 2 && self.space.n() <= 20;
                if !use_transform && work > self.limits.max_work {
                    return Err(Error::resource("exhaustive candidate scoring", work, self.limits.max_work));
                }
                let mut xs = Vec::new();
                let mut digits = vec![0u32; self.space.n()];
                for i in 1..size {
                    self.space.point_into(i, &mut digits);
                    if digits.iter().find(|&&d| d != 0) == Some(&1) {
                        xs.push(i);
                    }
                }
                Ok(xs)
            }
            CandidatePolicy::RandomSample { count, .. } => {
                let count = *count;
                let work = (count as u64 + 1)
                    .saturating_mul(self.uncovered.len() as u64)
                    .saturating_mul(field.q() as u64 - 1);
                if work > self.limits.max_work {
                    return Err(Error::resource("sampled candidate scoring", work, self.limits.max_work));
                }
                let rng = self.rng.as_mut().expect("sampling policy carries an rng");
                let size = self.space.size();
                let mut xs = BTreeSet::new();
                for _ in 0..count {
                    let i = rng.gen_range(1..size);
                    xs.insert(normalize(&self.space, i));
                }
                if let Some(&y) = self.uncovered.first() {
                    xs.insert(normalize(&self.space, y));
                }
                Ok(xs.into_iter().collect())
            }
        }
    }

    /// Scores for all `x` at once via a Walsh-Hadamard xor-convolution of
    /// the uncovered indicator with the covered indicator (q = 2 only).
    fn transform_scores(&self) -> Vec<i64> {
        let size = self.space.size() as usize;
        let r = self.radius;
        let mut unc = vec![0i64; size];
        for &y in &self.uncovered {
            unc[y as usize] = 1;
        }
        let mut cov: Vec<i64> = self.dist.iter().map(|&d| (d as usize <= r) as i64).collect();
        walsh_hadamard(&mut unc);
        walsh_hadamard(&mut cov);
        for (a, b) in unc.iter_mut().zip(&cov) {
            *a *= b;
        }
        walsh_hadamard(&mut unc);
        unc.iter_mut().for_each(|v| *v /= size as i64);
        unc
    }

    /// Picks and adjoins the best extension vector.
    pub fn extend(&mut self) -> Result<Extension> {
        if self.uncovered.is_empty() {
            return Ok(Extension::NotNeeded);
        }
        if self.basis.len() == self.space.n() {
            return Err(Error::Invalid("code already spans the whole space".into()));
        }
        let xs = self.candidates()?;
        let transform = matches!(self.policy, CandidatePolicy::Exhaustive)
            && self.space.field().q() == 2
            && self.space.n() <= 20
            && self.uncovered.len() > 3 * self.space.n();
        let scores = transform.then(|| self.transform_scores());
        let mut best: Option<(u64, u64)> = None;
        let mut digits = vec![0u32; self.space.n()];
        for &x in &xs {
            let s = match &scores {
                Some(all) => all[x as usize] as u64,
                None => {
                    self.space.point_into(x, &mut digits);
                    self.newly_covered(x, &digits)
                }
            };
            // candidates are ascending, so strict > keeps the smallest index on ties
            if best.is_none_or(|(bs, _)| s > bs) {
                best = Some((s, x));
            }
        }
        let (_, x) = best.expect("candidate pool is nonempty");
        self.adjoin(x);
        let vector = FqVector::new(self.space.field(), self.space.point(x))?;
        Ok(Extension::Chosen {
            vector,
            uncovered: self.uncovered.len() as u64,
        })
    }

    /// Adjoins `x` (given by index) to the basis and updates distances.
    pub fn adjoin(&mut self, x: u64) {
        let digits = self.space.point(x);
        let q = self.space.field().q();
        let old = &self.dist;
        let shifts: Vec<Shift> = if q == 2 { Vec::new() } else { (1..q).map(|a| self.space.shift(&digits, a)).collect() };
        let new: Vec<u8> = (0..self.space.size())
            .map(|y| {
                if q == 2 {
                    return old[y as usize].min(old[(y ^ x) as usize]);
                }
                shifts.iter().map(|s| old[s.apply(y) as usize]).fold(old[y as usize], u8::min)
            })
            .collect();
        self.dist = new;
        let r = self.radius;
        let dist = &self.dist;
        self.uncovered.retain(|&y| dist[y as usize] as usize > r);
        self.basis.push(digits);
        if let Some(last) = self.trace.steps.last_mut() {
            last.chosen = Some(x);
        }
        self.record();
    }

    /// Runs until every target point is covered.
    pub fn run(&mut self) -> Result<()> {
        while let Extension::Chosen { .. } = self.extend()? {}
        Ok(())
    }

    /// Grows the code to exactly `dim` dimensions. Once the target is
    /// covered at the current radius the radius is lowered and the greedy
    /// continues, so spare dimensions still shrink distances.
    pub fn run_to_dimension(&mut self, dim: usize) -> Result<()> {
        if dim > self.space.n() {
            return Err(Error::Domain(format!("dimension {dim} exceeds length {}", self.space.n())));
        }
        while self.basis.len() < dim {
            if self.uncovered.is_empty() {
                if self.radius > 0 {
                    self.set_radius(self.radius - 1);
                    continue;
                }
                // every target is a codeword; pad with the smallest
                // normalized vector outside the code
                let digits_ok = |i: u64| {
                    let p = self.space.point(i);
                    self.dist[i as usize] != 0 && p.iter().find(|&&d| d != 0) == Some(&1)
                };
                let x = (1..self.space.size()).find(|&i| digits_ok(i)).expect("code is proper");
                self.adjoin(x);
                continue;
            }
            self.extend()?;
        }
        Ok(())
    }
}

/// Scales the point so its first nonzero entry is 1.
fn normalize(space: &Space, idx: u64) -> u64 {
    let f = space.field();
    let mut p = space.point(idx);
    if let Some(&lead) = p.iter().find(|&&d| d != 0) {
        let inv = f.inv(lead).expect("nonzero");
        p.iter_mut().for_each(|d| *d = f.mul(*d, inv));
    }
    space.index(&p)
}

fn walsh_hadamard(a: &mut [i64]) {
    let mut h = 1;
    while h < a.len() {
        for i in (0..a.len()).step_by(2 * h) {
            for j in i..i + h {
                let (x, y) = (a[j], a[j + h]);
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
        h *= 2;
    }
}

/// One greedy step on `code`: the best extension for covering `target`
/// within `radius`.
pub fn greedy_extend(
    code: &LinearCode,
    target: &TargetSet,
    radius: usize,
    policy: CandidatePolicy,
) -> Result<Extension> {
    let mut g = Greedy::new(target, radius, policy)?;
    let space = g.space;
    let basis = code.generator();
    for i in 0..basis.rows() {
        g.adjoin(space.index(basis.row_slice(i)));
    }
    g.trace.steps.clear();
    g.extend()
}

/// Greedy code covering all of GF(q)^n within `radius`.
pub fn build_covering_code(
    n: usize,
    radius: usize,
    field: FieldSpec,
    policy: CandidatePolicy,
) -> Result<(LinearCode, GreedyTrace)> {
    build_partial_covering_code(n, radius, &TargetSet::full(field, n), field, policy)
}

/// Greedy code covering the points of `target` within `radius`.
pub fn build_partial_covering_code(
    n: usize,
    radius: usize,
    target: &TargetSet,
    field: FieldSpec,
    policy: CandidatePolicy,
) -> Result<(LinearCode, GreedyTrace)> {
    if target.n() != n || target.field() != field {
        return Err(Error::shape("target set does not match (n, field)"));
    }
    let mut g = Greedy::new(target, radius, policy)?;
    g.run()?;
    Ok((g.code(), g.trace().clone()))
}

/// Code whose parity-check matrix is the block-diagonal stack of the
/// blocks' parity checks.
pub fn block_diag_parity(blocks: &[LinearCode]) -> Result<LinearCode> {
    let first = blocks
        .first()
        .ok_or_else(|| Error::Invalid("no blocks given".into()))?;
    let field = first.field();
    if let Some(b) = blocks.iter().find(|b| b.field() != field) {
        return Err(Error::FieldMismatch {
            left: field.q(),
            right: b.field().q(),
        });
    }
    let rows: usize = blocks.iter().map(LinearCode::redundancy).sum();
    let cols: usize = blocks.iter().map(LinearCode::n).sum();
    let mut h = FqMatrix::zeros(field, rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        let bh = b.parity_check();
        for i in 0..bh.rows() {
            for j in 0..bh.cols() {
                h.set(r0 + i, c0 + j, bh.get(i, j));
            }
        }
        r0 += bh.rows();
        c0 += bh.cols();
    }
    Ok(LinearCode::from_parity_check(h))
}

/// Grows a greedy code for `target` at `radius` until it is covered or
/// reaches `dim` dimensions, then pads it to exactly `dim` dimensions.
/// The flag tells whether the target was covered within the cap.
pub fn capped_cover(
    target: &TargetSet,
    radius: usize,
    dim: usize,
    policy: CandidatePolicy,
    limits: GreedyLimits,
) -> Result<(Greedy, bool)> {
    let mut g = Greedy::with_limits(target, radius, policy, limits)?;
    if dim > target.n() {
        return Err(Error::Domain(format!("dimension {dim} exceeds length {}", target.n())));
    }
    while g.uncovered() > 0 && g.dimension() < dim {
        g.extend()?;
    }
    let met = g.uncovered() == 0;
    g.run_to_dimension(dim)?;
    Ok((g, met))
}

/// Smallest radius at which [`capped_cover`] covers `target` within
/// `dim` dimensions, with the resulting builder.
pub fn smallest_capped_cover(
    target: &TargetSet,
    dim: usize,
    policy: CandidatePolicy,
    limits: GreedyLimits,
) -> Result<(Greedy, usize)> {
    for radius in 0..=target.n() {
        let (g, met) = capped_cover(target, radius, dim, policy.clone(), limits)?;
        if met {
            return Ok((g, radius));
        }
    }
    unreachable!("radius n covers every point with the zero code")
}

/// Greedy code of dimension exactly `dim` covering GF(q)^n at the
/// smallest radius the greedy reaches. Returns the radius of the final
/// code, which may be below the radius searched for.
pub fn best_capped_covering_code(
    n: usize,
    dim: usize,
    field: FieldSpec,
    policy: CandidatePolicy,
) -> Result<(LinearCode, GreedyTrace, usize)> {
    let (g, _) = smallest_capped_cover(&TargetSet::full(field, n), dim, policy, GreedyLimits::default())?;
    Ok((g.code(), g.trace().clone(), g.achieved_radius()))
}
