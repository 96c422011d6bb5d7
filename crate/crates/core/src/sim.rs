//! Round-level simulation of a scheme: servers compute files and send
//! `z = E w`, users decode `f' = D z`, and the costs are re-derived from
//! what was actually computed and sent.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::Arc;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fq::{FieldSpec, FqVector};
use crate::scheme::{CostReport, Scheme};

/// One broadcast: server `n` in slot `t` sends `z` to `recipients` (all 0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptEntry {
    pub t: usize,
    pub n: usize,
    pub z: u32,
    pub recipients: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub k: usize,
    pub n: usize,
    pub t: usize,
    /// Slot-major, then server index.
    pub entries: Vec<TranscriptEntry>,
    /// Subfunctions each server evaluated.
    pub computed: Vec<BTreeSet<usize>>,
}

#[derive(Serialize)]
struct JsonLine<'a> {
    t: usize,
    n: usize,
    z: u32,
    recipients: &'a [usize],
}

impl Transcript {
    /// One JSON object per line, `{"t","n","z","recipients"}`, with
    /// 1-based slots, servers and users.
    pub fn write_json_lines<W: Write>(&self, mut out: W) -> Result<()> {
        for e in &self.entries {
            let rec: Vec<usize> = e.recipients.iter().map(|k| k + 1).collect();
            let line = JsonLine {
                t: e.t + 1,
                n: e.n + 1,
                z: e.z,
                recipients: &rec,
            };
            serde_json::to_writer(&mut out, &line)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundResult {
    /// `F w`.
    pub demanded: FqVector,
    /// `D z`.
    pub decoded: FqVector,
    pub transcript: Transcript,
}

impl RoundResult {
    pub fn correct(&self) -> bool {
        self.demanded == self.decoded
    }
}

/// Runs one round on file values `w` (one per subfunction).
pub fn run_round(s: &Scheme, w: &FqVector) -> Result<RoundResult> {
    if w.len() != s.l() {
        return Err(Error::shape(format!("{} file values for L = {}", w.len(), s.l())));
    }
    let z = s.e().mul_vec(w)?;
    let decoded = s.d().mul_vec(&z)?;
    let demanded = s.f().mul_vec(w)?;
    let mut entries = Vec::with_capacity(z.len());
    for t in 0..s.t() {
        for n in 0..s.n() {
            entries.push(TranscriptEntry {
                t,
                n,
                z: z.get(s.coordinate(n, t)),
                recipients: s.user_set(n, t),
            });
        }
    }
    Ok(RoundResult {
        demanded,
        decoded,
        transcript: Transcript {
            k: s.k(),
            n: s.n(),
            t: s.t(),
            entries,
            computed: (0..s.n()).map(|n| s.computed_by(n)).collect(),
        },
    })
}

/// Index of a unit file vector `e_l` on which the scheme decodes wrongly.
pub fn failing_unit_probe(s: &Scheme) -> Result<Option<usize>> {
    for l in 0..s.l() {
        let w = FqVector::unit(s.field(), s.l(), l);
        if !run_round(s, &w)?.correct() {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

pub type Dataset = Vec<u32>;

/// A subfunction `f_l`: dataset to field element.
#[derive(Clone)]
pub enum Subfunction {
    /// A pseudo-random element fixed by `(seed, l)`; ignores the dataset.
    IdentityOfSeed { seed: u64 },
    /// `sum_x p(x)` over the dataset, `p` with coefficients in increasing degree.
    PolynomialEval { coeffs: Vec<u32> },
    Custom(Arc<dyn Fn(&[u32]) -> u32 + Send + Sync>),
}

impl std::fmt::Debug for Subfunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Subfunction::IdentityOfSeed { seed } => write!(f, "IdentityOfSeed({seed})"),
            Subfunction::PolynomialEval { coeffs } => write!(f, "PolynomialEval({coeffs:?})"),
            Subfunction::Custom(_) => write!(f, "Custom"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SubfunctionSuite {
    field: FieldSpec,
    funcs: Vec<Subfunction>,
}

impl SubfunctionSuite {
    pub fn new(field: FieldSpec, funcs: Vec<Subfunction>) -> Self {
        SubfunctionSuite { field, funcs }
    }

    /// `l` seeded identity subfunctions sharing one seed.
    pub fn identity_of_seed(field: FieldSpec, l: usize, seed: u64) -> Self {
        Self::new(field, vec![Subfunction::IdentityOfSeed { seed }; l])
    }

    pub fn len(&self) -> usize {
        self.funcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.funcs.is_empty()
    }

    pub fn evaluate(&self, l: usize, data: &[u32]) -> u32 {
        let f = self.field;
        match &self.funcs[l] {
            Subfunction::IdentityOfSeed { seed } => seeded_value(f, *seed, l),
            Subfunction::PolynomialEval { coeffs } => data.iter().fold(0, |acc, &x| {
                let x = x % f.q();
                let px = coeffs.iter().rev().fold(0, |p, &c| f.mul_add(c % f.q(), p, x));
                f.add(acc, px)
            }),
            Subfunction::Custom(g) => g(data) % f.q(),
        }
    }
}

/// The value of `IdentityOfSeed` for subfunction `l`.
pub fn seeded_value(field: FieldSpec, seed: u64, l: usize) -> u32 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(l as u64);
    rng.gen_range(0..field.q())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfunctionRound {
    pub round: RoundResult,
    /// `w_l = f_l(D_l)`.
    pub files: FqVector,
    /// Times each subfunction was evaluated across servers.
    pub evaluations: Vec<usize>,
    /// Every server's symbols, formed from only the files it computed,
    /// match the symbols the matrices prescribe.
    pub local_symbols_match: bool,
}

/// Runs a round where each server evaluates only its own subfunctions on
/// the datasets and builds its symbols from those values alone.
pub fn run_with_subfunctions(s: &Scheme, suite: &SubfunctionSuite, datasets: &[Dataset]) -> Result<SubfunctionRound> {
    if suite.len() != s.l() || datasets.len() != s.l() {
        return Err(Error::shape(format!(
            "{} subfunctions and {} datasets for L = {}",
            suite.len(),
            datasets.len(),
            s.l()
        )));
    }
    let field = s.field();
    let mut evaluations = vec![0usize; s.l()];
    let mut local_z = vec![0u32; s.n() * s.t()];
    for n in 0..s.n() {
        let computed = s.computed_by(n);
        let mut local = vec![None; s.l()];
        for &l in &computed {
            local[l] = Some(suite.evaluate(l, &datasets[l]));
            evaluations[l] += 1;
        }
        for t in 0..s.t() {
            let c = s.coordinate(n, t);
            local_z[c] = (0..s.l()).fold(0, |acc, l| match (s.e().get(c, l), local[l]) {
                (0, _) => acc,
                (e, Some(w)) => field.mul_add(acc, e, w),
                (_, None) => unreachable!("server uses a file it did not compute"),
            });
        }
    }
    let files = FqVector::new(field, (0..s.l()).map(|l| suite.evaluate(l, &datasets[l])).collect())?;
    let round = run_round(s, &files)?;
    let local_symbols_match = round
        .transcript
        .entries
        .iter()
        .all(|e| local_z[s.coordinate(e.n, e.t)] == e.z);
    Ok(SubfunctionRound {
        round,
        files,
        evaluations,
        local_symbols_match,
    })
}

/// Costs recomputed from a transcript: `delta` from recipient sets and
/// `gamma` from the computed sets.
pub fn audit_costs(tr: &Transcript) -> CostReport {
    let n = tr.n as u64;
    let k = tr.k as u64;
    let mut per_user = vec![0usize; tr.k];
    let mut sent = 0u64;
    for e in &tr.entries {
        sent += e.recipients.len() as u64;
        for &u in &e.recipients {
            per_user[u] += 1;
        }
    }
    let l_max = tr.computed.iter().flat_map(|c| c.iter().copied()).max();
    let mut counts = vec![0usize; l_max.map_or(0, |l| l + 1)];
    for c in &tr.computed {
        for &l in c {
            counts[l] += 1;
        }
    }
    let max_w = counts.into_iter().max().unwrap_or(0);
    CostReport {
        gamma: Ratio::new(max_w as u64, n),
        delta: Ratio::new(sent, k * n),
        big_delta: Ratio::new(sent, k),
        max_servers_per_subfunction: max_w,
        symbols_per_user: per_user,
        active_servers: tr.computed.iter().filter(|c| !c.is_empty()).count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqMatrix;
    use crate::scheme::{worked_example, Provenance};

    #[test]
    fn worked_example_random_rounds() {
        let s = worked_example();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let w = FqVector::new(s.field(), (0..6).map(|_| rng.gen_range(0..7)).collect()).unwrap();
            assert!(run_round(&s, &w).unwrap().correct());
        }
    }

    #[test]
    fn zero_files_give_zero_everything() {
        let s = worked_example();
        let r = run_round(&s, &FqVector::zeros(s.field(), 6)).unwrap();
        assert!(r.transcript.entries.iter().all(|e| e.z == 0));
        assert!(r.decoded.is_zero() && r.demanded.is_zero());
        assert_eq!(r.transcript.entries.len(), 8);
    }

    #[test]
    fn corrupted_decoder_is_caught_by_unit_probe() {
        let s = worked_example();
        assert_eq!(failing_unit_probe(&s).unwrap(), None);
        let mut d = s.d().clone();
        d.set(0, 1, (d.get(0, 1) + 3) % 7);
        let bad = Scheme::new(s.f().clone(), d, s.e().clone(), 1, Provenance::default()).unwrap();
        assert!(failing_unit_probe(&bad).unwrap().is_some());
    }

    #[test]
    fn audit_matches_worked_costs() {
        let s = worked_example();
        let r = run_round(&s, &FqVector::zeros(s.field(), 6)).unwrap();
        let a = audit_costs(&r.transcript);
        assert_eq!(a.delta, Ratio::new(19, 32));
        assert_eq!(a.symbols_per_user, vec![5, 4, 4, 6]);
        assert_eq!(a, s.costs());
    }

    #[test]
    fn worked_server_sets() {
        let s = worked_example();
        let expect: [&[usize]; 6] = [
            &[1, 2, 3, 5, 8],
            &[1, 2, 3, 4, 6, 7],
            &[1, 2, 3],
            &[1, 4, 5, 7],
            &[1, 2, 4, 5, 6, 8],
            &[3, 4, 5, 6, 7, 8],
        ];
        let suite = SubfunctionSuite::identity_of_seed(s.field(), 6, 11);
        let data = vec![Vec::new(); 6];
        let r = run_with_subfunctions(&s, &suite, &data).unwrap();
        assert!(r.local_symbols_match && r.round.correct());
        for (l, w) in expect.iter().enumerate() {
            let got: Vec<usize> = (0..8).filter(|&n| r.round.transcript.computed[n].contains(&l)).map(|n| n + 1).collect();
            assert_eq!(&got, w, "W_{}", l + 1);
            assert_eq!(r.evaluations[l], w.len());
        }
    }

    #[test]
    fn identity_suite_matches_plain_round() {
        let s = worked_example();
        let suite = SubfunctionSuite::identity_of_seed(s.field(), 6, 99);
        let data = vec![vec![1, 2, 3]; 6];
        let r = run_with_subfunctions(&s, &suite, &data).unwrap();
        let w = FqVector::new(s.field(), (0..6).map(|l| seeded_value(s.field(), 99, l)).collect()).unwrap();
        assert_eq!(r.round, run_round(&s, &w).unwrap());
    }

    #[test]
    fn polynomial_subfunction() {
        let f5 = FieldSpec::new(5).unwrap();
        let suite = SubfunctionSuite::new(f5, vec![Subfunction::PolynomialEval { coeffs: vec![1, 0, 2] }]);
        // p(x) = 1 + 2x^2 over {1, 2, 3}: 3 + 9 + 19 = 31 = 1 mod 5
        assert_eq!(suite.evaluate(0, &[1, 2, 3]), 1);
    }

    #[test]
    fn idle_server_sends_zero() {
        let f3 = FieldSpec::new(3).unwrap();
        let f = FqMatrix::from_rows(f3, &[vec![1, 2]]).unwrap();
        let d = FqMatrix::from_rows(f3, &[vec![1, 0]]).unwrap();
        let e = FqMatrix::from_rows(f3, &[vec![1, 2], vec![0, 0]]).unwrap();
        let s = Scheme::new(f, d, e, 1, Provenance::default()).unwrap();
        let suite = SubfunctionSuite::identity_of_seed(f3, 2, 5);
        let r = run_with_subfunctions(&s, &suite, &[vec![], vec![]]).unwrap();
        assert!(r.round.transcript.computed[1].is_empty());
        assert_eq!(r.round.transcript.entries[1].z, 0);
        assert!(r.round.transcript.entries[1].recipients.is_empty());
    }

    #[test]
    fn json_lines_are_one_based() {
        let s = worked_example();
        let r = run_round(&s, &FqVector::zeros(s.field(), 6)).unwrap();
        let mut buf = Vec::new();
        r.transcript.write_json_lines(&mut buf).unwrap();
        let first = String::from_utf8(buf).unwrap().lines().next().unwrap().to_string();
        assert_eq!(first, r#"{"t":1,"n":1,"z":0,"recipients":[2,4]}"#);
    }
}
