//! Schemes `(D, E)` with `D E = F`: construction, verification and costs.
//!
//! Server `n` computes the subfunctions in the support of row `n` of `E`
//! and broadcasts `z_n = E(n,:) w`; user `k` combines the `z_n` with the
//! coefficients of row `k` of `D`. For `T > 1` slots, coordinate
//! `t * N + n` (0-based) of the length-`NT` code is server `n` in slot `t`.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize, Serializer};

use crate::bounds::{achievable_gamma, converse_gamma};
use crate::code::{hamming_ball_volume, LinearCode, DEFAULT_MAX_TABLE};
use crate::covering::{
    capped_cover, smallest_capped_cover, CandidatePolicy, GreedyLimits, GreedyTrace, TargetSet,
    DEFAULT_MAX_POINTS, DEFAULT_MAX_WORK, DEFAULT_SAMPLE,
};
use crate::error::{Error, Result};
use crate::fq::{FieldSpec, FqMatrix, FqVector, Space};

/// Seed used by every randomized path unless one is given.
pub const DEFAULT_SEED: u64 = 0x6c73_6463;

/// The demand matrix `F` (K users x L subfunctions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemandMatrix {
    f: FqMatrix,
}

impl DemandMatrix {
    pub fn new(f: FqMatrix) -> Result<Self> {
        if f.rows() == 0 || f.cols() == 0 {
            return Err(Error::shape(format!("demand matrix must be nonempty, got {}x{}", f.rows(), f.cols())));
        }
        Ok(DemandMatrix { f })
    }

    pub fn matrix(&self) -> &FqMatrix {
        &self.f
    }

    pub fn field(&self) -> FieldSpec {
        self.f.field()
    }

    pub fn k(&self) -> usize {
        self.f.rows()
    }

    pub fn l(&self) -> usize {
        self.f.cols()
    }

    /// True when `L > q^K`, i.e. some column of `F` must repeat.
    pub fn exceeds_column_space(&self) -> bool {
        crate::fq::checked_pow(self.field().q() as u64, self.k()).is_some_and(|p| self.l() as u64 > p)
    }

    pub fn distinct_columns(&self) -> usize {
        self.f.columns().into_iter().map(FqVector::into_entries).collect::<BTreeSet<_>>().len()
    }
}

/// How `D` was obtained, and what the builder observed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub strategy: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Radius targeted by the covering construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    /// Whether the target set was covered within the dimension cap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_met: Option<bool>,
    /// Greedy iterations recorded while building the code.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_steps: Option<usize>,
    /// `max_l w(E(:,l))` before the zero-row repair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_max_column_weight: Option<usize>,
    /// Servers idle before the repair (0-based rows of `E`).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub repaired_rows: Vec<usize>,
}

impl Provenance {
    pub fn named(strategy: impl Into<String>) -> Self {
        Provenance {
            strategy: strategy.into(),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scheme {
    f: FqMatrix,
    d: FqMatrix,
    e: FqMatrix,
    n: usize,
    t: usize,
    pub provenance: Provenance,
    pub trace: Option<GreedyTrace>,
}

impl Scheme {
    /// Checks shapes only; use [`verify_scheme`] for `D E = F`.
    pub fn new(f: FqMatrix, d: FqMatrix, e: FqMatrix, t: usize, provenance: Provenance) -> Result<Self> {
        let field = f.field();
        for m in [&d, &e] {
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.q(),
                    right: m.field().q(),
                });
            }
        }
        if t == 0 {
            return Err(Error::shape("T must be at least 1"));
        }
        if d.rows() != f.rows() {
            return Err(Error::shape(format!("D has {} rows, F has {}", d.rows(), f.rows())));
        }
        if e.cols() != f.cols() {
            return Err(Error::shape(format!("E has {} columns, F has {}", e.cols(), f.cols())));
        }
        if e.rows() != d.cols() {
            return Err(Error::shape(format!("D has {} columns, E has {} rows", d.cols(), e.rows())));
        }
        if d.cols() % t != 0 || d.cols() == 0 {
            return Err(Error::shape(format!("{} coordinates do not split into {t} slots", d.cols())));
        }
        let n = d.cols() / t;
        Ok(Scheme {
            f,
            d,
            e,
            n,
            t,
            provenance,
            trace: None,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.f.field()
    }

    pub fn q(&self) -> u32 {
        self.field().q()
    }

    pub fn k(&self) -> usize {
        self.f.rows()
    }

    /// Number of servers.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.f.cols()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn f(&self) -> &FqMatrix {
        &self.f
    }

    pub fn d(&self) -> &FqMatrix {
        &self.d
    }

    pub fn e(&self) -> &FqMatrix {
        &self.e
    }

    /// Coordinate of (server, slot), both 0-based.
    pub fn coordinate(&self, server: usize, slot: usize) -> usize {
        slot * self.n + server
    }

    /// `W_l`: servers computing subfunction `l` in any slot.
    pub fn server_set(&self, l: usize) -> BTreeSet<usize> {
        (0..self.e.rows())
            .filter(|&c| self.e.get(c, l) != 0)
            .map(|c| c % self.n)
            .collect()
    }

    /// `T_{n,t}`: users that combine the symbol sent by server `n` in slot `t`.
    pub fn user_set(&self, server: usize, slot: usize) -> BTreeSet<usize> {
        let c = self.coordinate(server, slot);
        (0..self.k()).filter(|&k| self.d.get(k, c) != 0).collect()
    }

    /// Subfunctions server `n` computes over all slots.
    pub fn computed_by(&self, server: usize) -> BTreeSet<usize> {
        (0..self.t)
            .flat_map(|t| {
                let c = self.coordinate(server, t);
                (0..self.l()).filter(move |&l| self.e.get(c, l) != 0)
            })
            .collect()
    }

    pub fn costs(&self) -> CostReport {
        costs(self)
    }
}

/// Outcome of [`verify_scheme`]; `mismatch` is the first differing (row, column), 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub ok: bool,
    pub mismatch: Option<(usize, usize)>,
}

pub fn verify_scheme(s: &Scheme) -> Result<Verification> {
    let prod = s.d.mul(&s.e)?;
    for r in 0..prod.rows() {
        for c in 0..prod.cols() {
            if prod.get(r, c) != s.f.get(r, c) {
                return Ok(Verification {
                    ok: false,
                    mismatch: Some((r, c)),
                });
            }
        }
    }
    Ok(Verification { ok: true, mismatch: None })
}

fn ratio_str<S: Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Exact costs of a scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CostReport {
    /// `max_l |W_l| / N`.
    #[serde(serialize_with = "ratio_str")]
    pub gamma: Ratio<u64>,
    /// `w(D) / (K N)`.
    #[serde(serialize_with = "ratio_str")]
    pub delta: Ratio<u64>,
    /// `w(D) / K`, symbols received per user on average.
    #[serde(serialize_with = "ratio_str")]
    pub big_delta: Ratio<u64>,
    /// `max_l |W_l|`.
    pub max_servers_per_subfunction: usize,
    /// Symbols received by each user.
    pub symbols_per_user: Vec<usize>,
    /// Servers that compute at least one subfunction.
    pub active_servers: usize,
}

impl CostReport {
    pub fn gamma_f64(&self) -> f64 {
        ratio_f64(self.gamma)
    }

    pub fn delta_f64(&self) -> f64 {
        ratio_f64(self.delta)
    }
}

pub fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn costs(s: &Scheme) -> CostReport {
    let n = s.n as u64;
    let k = s.k() as u64;
    let max_w = (0..s.l()).map(|l| s.server_set(l).len()).max().unwrap_or(0);
    let wd = s.d.weight() as u64;
    let active = (0..s.n).filter(|&i| !s.computed_by(i).is_empty()).count();
    CostReport {
        gamma: Ratio::new(max_w as u64, n),
        delta: Ratio::new(wd, k * n),
        big_delta: Ratio::new(wd, k),
        max_servers_per_subfunction: max_w,
        symbols_per_user: s.d.row_weights(),
        active_servers: active,
    }
}

/// Uncoded point with one server per subfunction: `E = I`, `D = F`.
pub fn build_scheme_uncoded_decentralized(f: &DemandMatrix) -> Result<Scheme> {
    let fm = f.matrix();
    let e = FqMatrix::identity(f.field(), f.l());
    let s = Scheme::new(fm.clone(), fm.clone(), e, 1, Provenance::named("uncoded-decentralized"))?;
    assert_verified(s)
}

/// Uncoded point with K active servers, server k computing user k's whole
/// demand: `D = [I_K | 0]`, `E = [F; 0]`.
pub fn build_scheme_uncoded_centralized(f: &DemandMatrix, n: usize) -> Result<Scheme> {
    let field = f.field();
    let k = f.k();
    if n < k {
        return Err(Error::shape(format!("need N >= K, got N={n} K={k}")));
    }
    let d = FqMatrix::identity(field, k).hstack(&FqMatrix::zeros(field, k, n - k))?;
    let e = f.matrix().vstack(&FqMatrix::zeros(field, n - k, f.l()))?;
    let s = Scheme::new(f.matrix().clone(), d, e, 1, Provenance::named("uncoded-centralized"))?;
    assert_verified(s)
}

fn assert_verified(s: Scheme) -> Result<Scheme> {
    match verify_scheme(&s)? {
        Verification { ok: true, .. } => Ok(s),
        Verification { mismatch, .. } => Err(Error::Invalid(format!(
            "builder produced D E != F (first mismatch at {mismatch:?})"
        ))),
    }
}

/// How the decoding matrix is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Parity check of a greedy covering code of GF(q)^N with dimension
    /// N-K. Without a radius, the smallest radius the greedy reaches.
    FullCovering { radius: Option<usize> },
    /// Parity check of a code covering only `X_{F,D}`. With `exact`, the
    /// decoding matrix minimizing the computation cost over all `D`.
    PartialCovering { radius: Option<usize>, exact: bool },
    GivenD(FqMatrix),
    /// `blocks` copies of a covering code of length N/blocks and
    /// redundancy K/blocks on the diagonal.
    BlockDiagonal { blocks: usize },
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::FullCovering { .. } => "full-covering",
            Strategy::PartialCovering { exact: false, .. } => "partial-covering",
            Strategy::PartialCovering { exact: true, .. } => "partial-covering-exact",
            Strategy::GivenD(_) => "given-d",
            Strategy::BlockDiagonal { .. } => "block-diagonal",
        }
    }
}

/// Resource limits and knobs for the coded builders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub max_table: u64,
    pub max_points: u64,
    pub max_work: u64,
    pub seed: u64,
    /// Candidates per greedy step when sampling.
    pub sample: usize,
    /// Overrides the automatic candidate policy.
    pub policy: Option<CandidatePolicy>,
    pub repair_zero_rows: bool,
    /// Rounds of the partial-covering set growth per radius.
    pub max_rounds: usize,
    /// Cap on decoding matrices examined by the exhaustive search.
    pub brute_force_limit: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_table: DEFAULT_MAX_TABLE,
            max_points: DEFAULT_MAX_POINTS,
            max_work: DEFAULT_MAX_WORK,
            seed: DEFAULT_SEED,
            sample: DEFAULT_SAMPLE,
            policy: None,
            repair_zero_rows: true,
            max_rounds: 64,
            brute_force_limit: 1 << 20,
        }
    }
}

impl Budgets {
    fn limits(&self) -> GreedyLimits {
        GreedyLimits {
            max_points: self.max_points,
            max_work: self.max_work,
        }
    }

    fn policy(&self, field: FieldSpec, n: usize) -> CandidatePolicy {
        self.policy.clone().unwrap_or_else(|| match CandidatePolicy::auto(field, n, self.seed) {
            CandidatePolicy::RandomSample { seed, .. } => CandidatePolicy::RandomSample {
                count: self.sample,
                seed,
            },
            p => p,
        })
    }
}

fn require_full_rank(d: &FqMatrix, k: usize) -> Result<()> {
    let r = d.rank();
    if r < k {
        return Err(Error::InfeasibleD(format!("rank {r} < K = {k}")));
    }
    Ok(())
}

/// `X_{F,D}`: the union of the cosets `{x : D x = F(:,l)}`.
pub fn x_set(f: &DemandMatrix, d: &FqMatrix) -> Result<TargetSet> {
    if d.rows() != f.k() {
        return Err(Error::shape(format!("D has {} rows, K = {}", d.rows(), f.k())));
    }
    require_full_rank(d, f.k())?;
    TargetSet::cosets(d.clone(), f.matrix().columns())
}

/// Builds a coded scheme for `F` on `n` servers.
pub fn build_scheme_coded(f: &DemandMatrix, n: usize, strategy: &Strategy, budgets: &Budgets) -> Result<Scheme> {
    let k = f.k();
    let field = f.field();
    let (d, mut prov, trace) = match strategy {
        Strategy::GivenD(d) => {
            if d.rows() != k || d.cols() != n || d.field() != field {
                return Err(Error::shape(format!(
                    "given D is {}x{} over GF({}), expected {k}x{n} over {field}",
                    d.rows(),
                    d.cols(),
                    d.field().q()
                )));
            }
            require_full_rank(d, k)?;
            (d.clone(), Provenance::named(strategy.name()), None)
        }
        _ => {
            if n <= k {
                return Err(Error::shape(format!("coded schemes need N > K, got N={n} K={k}")));
            }
            obtain_d(f, n, strategy, budgets)?
        }
    };
    let code = LinearCode::from_parity_check(d.clone());
    let table = code.coset_leader_table(budgets.max_table)?;
    let cols: Vec<FqVector> = f
        .matrix()
        .columns()
        .iter()
        .map(|c| table.decode(c))
        .collect::<Result<_>>()?;
    let mut e = FqMatrix::from_columns(field, n, &cols)?;
    let mut d = d;
    prov.raw_max_column_weight = Some(e.column_weights().into_iter().max().unwrap_or(0));
    if budgets.repair_zero_rows {
        prov.repaired_rows = repair_zero_rows(&mut d, &mut e)?;
    }
    let mut s = Scheme::new(f.matrix().clone(), d, e, 1, prov)?;
    s.trace = trace;
    assert_verified(s)
}

fn obtain_d(
    f: &DemandMatrix,
    n: usize,
    strategy: &Strategy,
    budgets: &Budgets,
) -> Result<(FqMatrix, Provenance, Option<GreedyTrace>)> {
    let k = f.k();
    let field = f.field();
    let policy = budgets.policy(field, n);
    let mut prov = Provenance::named(strategy.name());
    prov.seed = policy.seed();
    let limits = budgets.limits();
    let full = TargetSet::full(field, n);
    let (g, radius, met) = match strategy {
        Strategy::FullCovering { radius: Some(r) } => {
            let (g, met) = capped_cover(&full, *r, n - k, policy, limits)?;
            (g, *r, met)
        }
        Strategy::FullCovering { radius: None } => {
            let (g, r) = smallest_capped_cover(&full, n - k, policy, limits)?;
            (g, r, true)
        }
        Strategy::PartialCovering { exact: true, .. } => {
            let best = brute_force_optimal_gamma(f, n, budgets.brute_force_limit)?;
            prov.seed = None;
            prov.radius = Some(best.max_weight);
            prov.radius_met = Some(true);
            return Ok((best.d, prov, None));
        }
        Strategy::PartialCovering { radius, exact: false } => {
            let radii: Vec<usize> = match radius {
                Some(r) => vec![*r],
                None => (0..=n).collect(),
            };
            let mut last = None;
            for r in radii {
                let (g, met) = grow_partial_cover(f, n, r, &policy, budgets)?;
                if met || radius.is_some() {
                    last = Some((g, r, met));
                    break;
                }
            }
            last.expect("radius n always succeeds")
        }
        Strategy::BlockDiagonal { blocks } => {
            let m = *blocks;
            if m == 0 || n % m != 0 || k % m != 0 {
                return Err(Error::Invalid(format!("{m} blocks must divide both N={n} and K={k}")));
            }
            let (nb, kb) = (n / m, k / m);
            let bpolicy = budgets.policy(field, nb);
            prov.seed = bpolicy.seed();
            let (g, r) = smallest_capped_cover(&TargetSet::full(field, nb), nb - kb, bpolicy, limits)?;
            let block = g.code();
            let code = crate::covering::block_diag_parity(&vec![block; m])?;
            prov.radius = Some(m * r);
            prov.radius_met = Some(true);
            prov.trace_steps = Some(g.trace().steps.len());
            let d = code.parity_check().clone();
            require_full_rank(&d, k)?;
            return Ok((d, prov, Some(g.trace().clone())));
        }
        Strategy::GivenD(_) => unreachable!("handled by the caller"),
    };
    prov.radius = Some(radius);
    prov.radius_met = Some(met);
    prov.trace_steps = Some(g.trace().steps.len());
    let d = g.code().parity_check().clone();
    require_full_rank(&d, k)?;
    Ok((d, prov, Some(g.trace().clone())))
}

/// Set-growth loop for the partial-covering strategy at a fixed radius.
///
/// Starts from `X_0 = X_{F,D_0}` with `D_0 = [I_K | 0]`, builds a greedy
/// code of dimension N-K for the current `X`, and stops when the code
/// covers its own `X_{F,D}` within `radius`. Otherwise `X_{F,D}` is added
/// to `X` and the loop repeats; it fails once `X` stops growing.
fn grow_partial_cover(
    f: &DemandMatrix,
    n: usize,
    radius: usize,
    policy: &CandidatePolicy,
    budgets: &Budgets,
) -> Result<(crate::covering::Greedy, bool)> {
    let field = f.field();
    let k = f.k();
    let space = Space::new(field, n, budgets.max_points)?;
    let d0 = FqMatrix::identity(field, k).hstack(&FqMatrix::zeros(field, k, n - k))?;
    let mut x: BTreeSet<u64> = x_set(f, &d0)?.indices(&space)?.into_iter().collect();
    let mut last = None;
    for _ in 0..budgets.max_rounds.max(1) {
        let target = TargetSet::explicit(
            field,
            n,
            x.iter().map(|&i| FqVector::new(field, space.point(i))).collect::<Result<_>>()?,
        )?;
        let (g, _) = capped_cover(&target, radius, n - k, policy.clone(), budgets.limits())?;
        let d = g.code().parity_check().clone();
        let table = LinearCode::from_parity_check(d.clone()).coset_leader_table(budgets.max_table)?;
        let worst = f
            .matrix()
            .columns()
            .iter()
            .map(|c| table.leader_weight(c))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(0);
        if worst <= radius {
            return Ok((g, true));
        }
        let before = x.len();
        x.extend(x_set(f, &d)?.indices(&space)?);
        last = Some(g);
        if x.len() == before {
            break;
        }
    }
    Ok((last.expect("at least one round"), false))
}

/// Gives idle servers work without raising the computation cost.
///
/// A zero row `i` of `E` becomes a copy of a nonzero donor row `j` with
/// the entries in the currently heaviest columns zeroed; the first donor
/// whose trimmed copy is nonzero is used. Columns `i` and `j` of `D` are
/// then re-solved per user so that `D E` is unchanged: when the copy
/// equals the donor, the users served by `j` are split alternately
/// between the two servers, otherwise server `i` sends nothing. Returns
/// the rows that were filled.
pub fn repair_zero_rows(d: &mut FqMatrix, e: &mut FqMatrix) -> Result<Vec<usize>> {
    let is_zero = |e: &FqMatrix, r: usize| e.row_slice(r).iter().all(|&v| v == 0);
    let donors: Vec<usize> = (0..e.rows()).filter(|&r| !is_zero(e, r)).collect();
    let idle: Vec<usize> = (0..e.rows()).filter(|&r| is_zero(e, r)).collect();
    let mut repaired = Vec::new();
    for i in idle {
        let weights = e.column_weights();
        let Some(&max_w) = weights.iter().max() else {
            break;
        };
        let choice = donors.iter().find_map(|&j| {
            let donor = e.row_slice(j).to_vec();
            let copy: Vec<u32> = donor
                .iter()
                .zip(&weights)
                .map(|(&v, &w)| if w == max_w { 0 } else { v })
                .collect();
            copy.iter().any(|&v| v != 0).then_some((j, copy == donor, copy))
        });
        let Some((j, shareable, copy)) = choice else {
            continue;
        };
        for (l, &v) in copy.iter().enumerate() {
            e.set(i, l, v);
        }
        // the idle server only ever sent zeros
        for user in 0..d.rows() {
            d.set(user, i, 0);
        }
        // Per user: a E(i,:) + b E(j,:) = D(k,j) E(j,:). Any split
        // a + b = D(k,j) works for an exact copy; otherwise only a = 0.
        if shareable {
            let served: Vec<usize> = (0..d.rows()).filter(|&k| d.get(k, j) != 0).collect();
            for &k in served.iter().skip(1).step_by(2) {
                d.set(k, i, d.get(k, j));
                d.set(k, j, 0);
            }
        }
        repaired.push(i);
    }
    Ok(repaired)
}

/// Result of the exhaustive search over decoding matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForce {
    pub gamma: Ratio<u64>,
    /// `max_l min { w(e) : D e = F(:,l) }` at the optimum.
    pub max_weight: usize,
    pub d: FqMatrix,
    /// Decoding matrices examined.
    pub examined: u64,
}

/// Minimum over full-rank `D` (K x N) of `max_l min { w(e) : D e = F(:,l) }`.
///
/// The cost only depends on the multiset of columns of `D`, so columns are
/// enumerated as non-decreasing tuples of indices into GF(q)^K. Ties keep
/// the first matrix in that order.
pub fn brute_force_optimal_gamma(f: &DemandMatrix, n: usize, limit: u64) -> Result<BruteForce> {
    let field = f.field();
    let k = f.k();
    let q = field.q();
    let syn = Space::new(field, k, 1 << 16)?;
    let cols = syn.size() as usize;
    let count = multiset_count(cols as u64, n).filter(|&c| c <= limit);
    let Some(count) = count else {
        return Err(Error::resource("decoding matrices to enumerate", format!("multichoose({cols}, {n})"), limit));
    };
    // addition and scaling tables on syndrome indices
    let add: Vec<u32> = (0..cols * cols)
        .map(|ab| {
            let (a, b) = (syn.point((ab / cols) as u64), syn.point((ab % cols) as u64));
            let s: Vec<u32> = a.iter().zip(&b).map(|(&x, &y)| field.add(x, y)).collect();
            syn.index(&s) as u32
        })
        .collect();
    let scale: Vec<u32> = (0..cols * q as usize)
        .map(|ca| {
            let p = syn.point((ca / q as usize) as u64);
            let a = (ca % q as usize) as u32;
            syn.index(&p.iter().map(|&x| field.mul(a, x)).collect::<Vec<_>>()) as u32
        })
        .collect();
    let targets: Vec<usize> = f.matrix().columns().iter().map(|c| syn.index(c.entries()) as usize).collect();

    let mut tuple = vec![0usize; n];
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut dist = vec![u8::MAX; cols];
    let mut queue = Vec::with_capacity(cols);
    let mut steps = Vec::new();
    let mut examined = 0u64;
    loop {
        examined += 1;
        steps.clear();
        for &c in &tuple {
            if c != 0 {
                for a in 1..q as usize {
                    steps.push(scale[c * q as usize + a] as usize);
                }
            }
        }
        dist.iter_mut().for_each(|d| *d = u8::MAX);
        dist[0] = 0;
        queue.clear();
        queue.push(0usize);
        let mut head = 0;
        while head < queue.len() {
            let cur = queue[head];
            head += 1;
            for &s in &steps {
                let nx = add[cur * cols + s] as usize;
                if dist[nx] == u8::MAX {
                    dist[nx] = dist[cur] + 1;
                    queue.push(nx);
                }
            }
        }
        if queue.len() == cols {
            let value = targets.iter().map(|&t| dist[t] as usize).max().unwrap_or(0);
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                best = Some((value, tuple.clone()));
            }
        }
        // next non-decreasing tuple
        let Some(pos) = (0..n).rev().find(|&i| tuple[i] + 1 < cols) else {
            break;
        };
        let v = tuple[pos] + 1;
        tuple[pos..].iter_mut().for_each(|x| *x = v);
    }
    debug_assert_eq!(examined, count);
    let (value, tuple) = best.ok_or_else(|| Error::InfeasibleD(format!("no rank-{k} matrix with {n} columns")))?;
    let columns: Vec<FqVector> = tuple
        .iter()
        .map(|&c| FqVector::new(field, syn.point(c as u64)))
        .collect::<Result<_>>()?;
    Ok(BruteForce {
        gamma: Ratio::new(value as u64, n as u64),
        max_weight: value,
        d: FqMatrix::from_columns(field, k, &columns)?,
        examined,
    })
}

fn multiset_count(kinds: u64, n: usize) -> Option<u64> {
    // C(kinds + n - 1, n)
    let mut acc: u128 = 1;
    for i in 0..n as u128 {
        acc = acc * (kinds as u128 + i) / (i + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Achieved cost of a scheme against the single-shot bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub gamma: f64,
    pub l_distinct: usize,
    /// `H_q^-1(log_q(L_distinct) / N)`.
    pub converse_gamma: Option<f64>,
    /// `H_q^-1(K / N)`.
    pub achievable_gamma: Option<f64>,
    /// `L_distinct <= V_q(N, gamma N)`; false would be an internal error.
    pub finite_converse_holds: bool,
}

pub fn bounds_check(s: &Scheme) -> BoundsReport {
    let c = s.costs();
    let q = s.q();
    let l_distinct = DemandMatrix::new(s.f.clone()).map(|d| d.distinct_columns()).unwrap_or(0);
    let n_total = s.d.cols();
    let radius = s.e.column_weights().into_iter().max().unwrap_or(0);
    let vol = hamming_ball_volume(n_total, radius.min(n_total), q).expect("radius within length");
    // a zero column of F is the zero vector of weight 0, always covered
    BoundsReport {
        gamma: c.gamma_f64(),
        l_distinct,
        converse_gamma: converse_gamma(l_distinct.max(1) as u64, s.n, q).ok(),
        achievable_gamma: achievable_gamma(s.k(), s.n, q).ok(),
        finite_converse_holds: num_bigint::BigUint::from(l_distinct) <= vol,
    }
}

/// The scheme used as the running example: q = 7, K = 4, N = 8, L = 6.
pub fn worked_example() -> Scheme {
    let f7 = FieldSpec::new(7).expect("7 is prime");
    let f = FqMatrix::from_rows(
        f7,
        &[
            vec![2, 4, 4, 5, 5, 0],
            vec![3, 4, 5, 2, 6, 6],
            vec![2, 4, 6, 5, 2, 0],
            vec![3, 5, 0, 2, 3, 1],
        ],
    )
    .expect("literal");
    let d = FqMatrix::from_rows(
        f7,
        &[
            vec![0, 2, 0, 3, 4, 2, 1, 0],
            vec![4, 0, 0, 2, 1, 3, 0, 0],
            vec![0, 4, 5, 2, 1, 0, 0, 0],
            vec![4, 0, 2, 1, 2, 0, 4, 5],
        ],
    )
    .expect("literal");
    let e = FqMatrix::from_rows(
        f7,
        &[
            vec![2, 6, 3, 1, 2, 0],
            vec![4, 5, 2, 0, 3, 0],
            vec![1, 2, 1, 0, 0, 2],
            vec![0, 1, 0, 2, 4, 1],
            vec![2, 0, 0, 1, 3, 2],
            vec![0, 2, 0, 0, 5, 3],
            vec![0, 1, 0, 2, 0, 4],
            vec![2, 0, 0, 0, 4, 5],
        ],
    )
    .expect("literal");
    Scheme::new(f, d, e, 1, Provenance::named("worked-example")).expect("shapes agree")
}
