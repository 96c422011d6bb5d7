//! Linear codes over GF(q) and minimum-distance syndrome decoding.
//!
//! A [`CosetLeaderTable`] is built by enumerating vectors in order of
//! increasing Hamming weight, lexicographically within a weight class, and
//! keeping the first vector seen for each syndrome. The stored leader is
//! therefore a minimum-weight member of its coset, and among those the
//! lexicographically smallest (entries compared as integer tuples).

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fq::{nullspace_basis, row_reduce, FieldSpec, FqMatrix, FqVector, Space};

/// Default cap on the number of syndromes a coset-leader table may hold.
pub const DEFAULT_MAX_TABLE: u64 = 1 << 24;

/// A linear code given by a full-row-rank parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    h: FqMatrix,
    g: FqMatrix,
}

impl LinearCode {
    /// Code with parity-check matrix `h`. A rank-deficient `h` is replaced
    /// by the nonzero rows of its reduced row echelon form.
    pub fn from_parity_check(h: FqMatrix) -> Self {
        let red = row_reduce(&h);
        let h = if red.rank() == h.rows() {
            h
        } else {
            let rows: Vec<FqVector> = (0..red.rank()).map(|i| red.rref.row(i)).collect();
            FqMatrix::from_row_vectors(h.field(), h.cols(), &rows).expect("rows match width")
        };
        let g = nullspace_basis(&h);
        LinearCode { h, g }
    }

    /// Code spanned by the rows of `g`.
    pub fn from_generator(g: &FqMatrix) -> Self {
        let h = nullspace_basis(g);
        Self::from_parity_check(h)
    }

    /// The zero code `{0}` of length n.
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Self::from_parity_check(FqMatrix::identity(field, n))
    }

    /// The whole space `GF(q)^n` (no parity checks).
    pub fn full(field: FieldSpec, n: usize) -> Self {
        Self::from_parity_check(FqMatrix::zeros(field, 0, n))
    }

    /// Repetition code of length n.
    pub fn repetition(field: FieldSpec, n: usize) -> Self {
        let g = FqMatrix::from_flat(field, 1, n, vec![1 % field.q(); n]).expect("shape");
        Self::from_generator(&g)
    }

    /// Binary Hamming code with `r` parity bits; column j of H is the binary
    /// expansion of j + 1.
    pub fn binary_hamming(r: usize) -> Self {
        let f2 = FieldSpec::new(2).expect("2 is prime");
        let n = (1usize << r) - 1;
        let mut h = FqMatrix::zeros(f2, r, n);
        for j in 0..n {
            for i in 0..r {
                if (j + 1) >> i & 1 == 1 {
                    h.set(i, j, 1);
                }
            }
        }
        Self::from_parity_check(h)
    }

    pub fn field(&self) -> FieldSpec {
        self.h.field()
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn redundancy(&self) -> usize {
        self.h.rows()
    }

    pub fn parity_check(&self) -> &FqMatrix {
        &self.h
    }

    pub fn generator(&self) -> &FqMatrix {
        &self.g
    }

    pub fn syndrome(&self, x: &FqVector) -> Result<FqVector> {
        if x.len() != self.n() {
            return Err(Error::shape(format!(
                "vector of length {} for a code of length {}",
                x.len(),
                self.n()
            )));
        }
        self.h.mul_vec(x)
    }

    pub fn is_codeword(&self, x: &FqVector) -> Result<bool> {
        Ok(self.syndrome(x)?.is_zero())
    }

    /// All q^k codewords, in lexicographic order of message vectors.
    pub fn codewords(&self, limit: u64) -> Result<Vec<Vec<u32>>> {
        let msgs = Space::new(self.field(), self.k(), limit)?;
        let gt = self.g.transpose();
        Ok((0..msgs.size())
            .map(|i| {
                gt.mul_slice(&msgs.point(i))
            })
            .collect())
    }

    pub fn coset_leader_table(&self, max_table: u64) -> Result<CosetLeaderTable> {
        build_coset_leader_table(self, max_table)
    }
}

/// Minimum-weight coset leader for every syndrome of a code.
#[derive(Clone, Debug)]
pub struct CosetLeaderTable {
    code: LinearCode,
    syndromes: Space,
    /// Offset into `arena` for each syndrome index.
    slot: Vec<u32>,
    /// Packed leaders: `[w, pos_1, val_1, ..., pos_w, val_w]`.
    arena: Vec<u32>,
}

pub fn build_coset_leader_table(code: &LinearCode, max_table: u64) -> Result<CosetLeaderTable> {
    let field = code.field();
    let n = code.n();
    let r = code.redundancy();
    let syndromes = Space::new(field, r, max_table.min(u32::MAX as u64))?;
    let total = syndromes.size() as usize;
    let hcols: Vec<Vec<u32>> = (0..n).map(|j| code.h.column(j).into_entries()).collect();

    let mut builder = TableBuilder {
        field,
        syndromes,
        hcols: &hcols,
        slot: vec![u32::MAX; total],
        arena: Vec::new(),
        filled: 0,
        total,
        support: Vec::with_capacity(n),
    };
    for w in 0..=n {
        let mut syn = vec![0u32; r];
        builder.walk(0, w, &mut syn);
        if builder.filled == total {
            break;
        }
    }
    debug_assert_eq!(builder.filled, total, "full-rank H reaches every syndrome");
    let TableBuilder { slot, arena, .. } = builder;
    Ok(CosetLeaderTable {
        code: code.clone(),
        syndromes,
        slot,
        arena,
    })
}

struct TableBuilder<'a> {
    field: FieldSpec,
    syndromes: Space,
    hcols: &'a [Vec<u32>],
    slot: Vec<u32>,
    arena: Vec<u32>,
    filled: usize,
    total: usize,
    support: Vec<(u32, u32)>,
}

impl TableBuilder<'_> {
    /// Visits every vector with exactly `remaining` nonzeros in positions
    /// `pos..n`, in lexicographic order (0 before 1 before ... before q-1
    /// at each position).
    fn walk(&mut self, pos: usize, remaining: usize, syn: &mut Vec<u32>) {
        if self.filled == self.total {
            return;
        }
        let n = self.hcols.len();
        if pos == n {
            debug_assert_eq!(remaining, 0);
            let idx = self.syndromes.index(syn) as usize;
            if self.slot[idx] == u32::MAX {
                self.slot[idx] = self.arena.len() as u32;
                self.arena.push(self.support.len() as u32);
                for &(p, v) in &self.support {
                    self.arena.push(p);
                    self.arena.push(v);
                }
                self.filled += 1;
            }
            return;
        }
        if n - pos > remaining {
            self.walk(pos + 1, remaining, syn);
        }
        if remaining > 0 {
            let f = self.field;
            let saved = syn.clone();
            for v in 1..f.q() {
                for ((s, &base), &h) in syn.iter_mut().zip(&saved).zip(&self.hcols[pos]) {
                    *s = f.mul_add(base, v, h);
                }
                self.support.push((pos as u32, v));
                self.walk(pos + 1, remaining - 1, syn);
                self.support.pop();
                syn.copy_from_slice(&saved);
                if self.filled == self.total {
                    return;
                }
            }
        }
    }
}

impl CosetLeaderTable {
    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    /// Number of syndromes (q^(n-k)).
    pub fn len(&self) -> usize {
        self.slot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slot.is_empty()
    }

    pub fn syndrome_space(&self) -> &Space {
        &self.syndromes
    }

    fn packed(&self, idx: usize) -> &[u32] {
        let start = self.slot[idx] as usize;
        let w = self.arena[start] as usize;
        &self.arena[start + 1..start + 1 + 2 * w]
    }

    pub fn leader_weight_at(&self, idx: usize) -> usize {
        self.arena[self.slot[idx] as usize] as usize
    }

    pub fn leader_at(&self, idx: usize) -> FqVector {
        let mut e = vec![0; self.code.n()];
        for pv in self.packed(idx).chunks_exact(2) {
            e[pv[0] as usize] = pv[1];
        }
        FqVector::from_raw(self.code.field(), e)
    }

    fn index_of(&self, s: &FqVector) -> Result<usize> {
        if s.len() != self.code.redundancy() {
            return Err(Error::shape(format!(
                "syndrome of length {}, expected {}",
                s.len(),
                self.code.redundancy()
            )));
        }
        Ok(self.syndromes.index(s.entries()) as usize)
    }

    /// Minimum-weight vector `e` with `H e = s`.
    pub fn decode(&self, s: &FqVector) -> Result<FqVector> {
        Ok(self.leader_at(self.index_of(s)?))
    }

    pub fn leader_weight(&self, s: &FqVector) -> Result<usize> {
        Ok(self.leader_weight_at(self.index_of(s)?))
    }

    /// `d(x, C)`, read off as the weight of the leader of `x`'s coset.
    pub fn distance_to_code(&self, x: &FqVector) -> Result<usize> {
        let s = self.code.syndrome(x)?;
        self.leader_weight(&s)
    }

    pub fn covering_radius(&self) -> usize {
        (0..self.len()).map(|i| self.leader_weight_at(i)).max().unwrap_or(0)
    }

    pub fn partial_covering_radius<'a>(
        &self,
        xs: impl IntoIterator<Item = &'a FqVector>,
    ) -> Result<usize> {
        let mut worst = 0;
        for x in xs {
            worst = worst.max(self.distance_to_code(x)?);
        }
        Ok(worst)
    }

    /// Histogram of leader weights, index = weight.
    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.code.n() + 1];
        for i in 0..self.len() {
            hist[self.leader_weight_at(i)] += 1;
        }
        hist
    }
}

pub fn syndrome(code: &LinearCode, x: &FqVector) -> Result<FqVector> {
    code.syndrome(x)
}

pub fn syndrome_decode(table: &CosetLeaderTable, s: &FqVector) -> Result<FqVector> {
    table.decode(s)
}

pub fn covering_radius(code: &LinearCode) -> Result<usize> {
    Ok(code.coset_leader_table(DEFAULT_MAX_TABLE)?.covering_radius())
}

pub fn partial_covering_radius<'a>(
    code: &LinearCode,
    xs: impl IntoIterator<Item = &'a FqVector>,
) -> Result<usize> {
    code.coset_leader_table(DEFAULT_MAX_TABLE)?.partial_covering_radius(xs)
}

/// Minimum coset weight for every syndrome of `h` (rows = checks), computed
/// by breadth-first search over the syndrome space with steps `alpha * h_j`.
/// Reusing a column never shortens a path, so the BFS depth of `s` equals
/// the minimum weight of a solution of `H e = s`. Unreachable syndromes
/// (rank-deficient `h`) are reported as `None`.
pub fn min_weight_by_syndrome(h: &FqMatrix, limit: u64) -> Result<Vec<Option<u8>>> {
    let field = h.field();
    let space = Space::new(field, h.rows(), limit)?;
    let mut steps: Vec<u64> = Vec::new();
    for j in 0..h.cols() {
        let col = h.column(j);
        if col.is_zero() {
            continue;
        }
        for a in 1..field.q() {
            steps.push(space.index(col.scale(a).entries()));
        }
    }
    let mut dist = vec![None; space.size() as usize];
    let mut digits = vec![0u32; h.rows()];
    let step_digits: Vec<Vec<u32>> = steps.iter().map(|&s| space.point(s)).collect();
    dist[0] = Some(0u8);
    let mut queue = VecDeque::from([0u64]);
    while let Some(cur) = queue.pop_front() {
        let d = dist[cur as usize].expect("queued nodes have a distance");
        space.point_into(cur, &mut digits);
        for sd in &step_digits {
            let next: Vec<u32> = digits.iter().zip(sd).map(|(&a, &b)| field.add(a, b)).collect();
            let ni = space.index(&next) as usize;
            if dist[ni].is_none() {
                dist[ni] = Some(d + 1);
                queue.push_back(ni as u64);
            }
        }
    }
    Ok(dist)
}

/// Number of points of GF(q)^n within Hamming distance r of a point.
pub fn hamming_ball_volume(n: usize, r: usize, q: u32) -> Result<BigUint> {
    if r > n {
        return Err(Error::Domain(format!("radius {r} exceeds length {n}")));
    }
    let qm1 = BigUint::from(q.saturating_sub(1));
    let mut binom = BigUint::one();
    let mut pow = BigUint::one();
    let mut total = BigUint::one();
    for i in 1..=r {
        binom = binom * BigUint::from(n - i + 1) / BigUint::from(i);
        pow *= &qm1;
        total += &binom * &pow;
    }
    Ok(total)
}

/// `log_q V_q(n, r)` in floating point.
pub fn log_q_ball_volume(n: usize, r: usize, q: u32) -> Result<f64> {
    let v = hamming_ball_volume(n, r, q)?;
    Ok(log2_big(&v) / (q as f64).log2())
}

pub(crate) fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 60 {
        return (v.to_u64_digits().first().copied().unwrap_or(0) as f64).log2();
    }
    let shift = bits - 53;
    let top: BigUint = v >> shift;
    (top.to_u64_digits()[0] as f64).log2() + shift as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(q: u32) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    #[test]
    fn zero_vector_has_zero_syndrome() {
        let c = LinearCode::binary_hamming(3);
        let s = c.syndrome(&FqVector::zeros(f(2), 7)).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn unit_syndrome_is_column() {
        let c = LinearCode::binary_hamming(3);
        for i in 0..7 {
            let s = c.syndrome(&FqVector::unit(f(2), 7, i)).unwrap();
            assert_eq!(s, c.parity_check().column(i));
        }
    }

    #[test]
    fn syndrome_rejects_bad_length() {
        let c = LinearCode::binary_hamming(3);
        assert!(matches!(c.syndrome(&FqVector::zeros(f(2), 6)), Err(Error::Shape(_))));
    }

    #[test]
    fn repetition_code_leaders() {
        let c = LinearCode::repetition(f(2), 3);
        assert_eq!((c.n(), c.k()), (3, 1));
        let t = c.coset_leader_table(16).unwrap();
        assert_eq!(t.len(), 4);
        let mut leaders: Vec<Vec<u32>> = (0..4).map(|i| t.leader_at(i).into_entries()).collect();
        leaders.sort();
        assert_eq!(
            leaders,
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
    }

    #[test]
    fn hamming_is_perfect() {
        let c = LinearCode::binary_hamming(3);
        let t = c.coset_leader_table(16).unwrap();
        assert_eq!(t.weight_distribution(), vec![1, 7, 0, 0, 0, 0, 0, 0]);
        assert_eq!(t.covering_radius(), 1);
        let e5 = FqVector::unit(f(2), 7, 5);
        let s = c.syndrome(&e5).unwrap();
        assert_eq!(t.decode(&s).unwrap(), e5);
    }

    #[test]
    fn full_and_zero_codes() {
        let full = LinearCode::full(f(3), 4);
        let t = full.coset_leader_table(4).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.leader_at(0).is_zero());
        assert_eq!(t.covering_radius(), 0);
        assert_eq!(covering_radius(&LinearCode::zero(f(2), 3)).unwrap(), 3);
    }

    #[test]
    fn partial_radius_examples() {
        let zero = LinearCode::zero(f(2), 4);
        let ones = FqVector::new(f(2), vec![1; 4]).unwrap();
        assert_eq!(partial_covering_radius(&zero, [&ones]).unwrap(), 4);

        let c = LinearCode::binary_hamming(3);
        let words: Vec<FqVector> = c
            .codewords(1 << 10)
            .unwrap()
            .into_iter()
            .map(|w| FqVector::new(f(2), w).unwrap())
            .collect();
        assert_eq!(words.len(), 16);
        assert_eq!(partial_covering_radius(&c, &words).unwrap(), 0);
    }

    #[test]
    fn table_size_guard() {
        let c = LinearCode::zero(f(2), 10);
        let err = c.coset_leader_table(512).unwrap_err();
        assert!(err.to_string().contains("2^10"), "{err}");
    }

    #[test]
    fn ties_break_lexicographically() {
        // H = [1 1] over GF(3): syndrome 1 has leaders (0,1) and (1,0).
        let h = FqMatrix::from_rows(f(3), &[vec![1, 1]]).unwrap();
        let t = LinearCode::from_parity_check(h).coset_leader_table(9).unwrap();
        let s1 = FqVector::new(f(3), vec![1]).unwrap();
        assert_eq!(t.decode(&s1).unwrap().entries(), &[0, 1]);
        let s2 = FqVector::new(f(3), vec![2]).unwrap();
        assert_eq!(t.decode(&s2).unwrap().entries(), &[0, 2]);
    }

    #[test]
    fn rank_deficient_parity_check_is_reduced() {
        let h = FqMatrix::from_rows(f(2), &[vec![1, 1, 0], vec![1, 1, 0]]).unwrap();
        let c = LinearCode::from_parity_check(h);
        assert_eq!((c.redundancy(), c.k()), (1, 2));
    }

    #[test]
    fn generator_is_orthogonal_to_parity_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for q in [2u32, 3, 5] {
            let field = f(q);
            for _ in 0..10 {
                let rows = rng.gen_range(1..5);
                let n = rng.gen_range(rows..9);
                let data = (0..rows * n).map(|_| rng.gen_range(0..q)).collect();
                let c = LinearCode::from_parity_check(FqMatrix::from_flat(field, rows, n, data).unwrap());
                let prod = c.generator().mul(&c.parity_check().transpose()).unwrap();
                assert!(prod.is_zero());
                assert_eq!(c.generator().rank(), c.k());
                assert_eq!(c.parity_check().rank(), c.redundancy());
                assert_eq!(c.k() + c.redundancy(), n);
            }
        }
    }

    /// Oracle: minimum weight over the coset `leader + span(G)`.
    fn brute_coset_min(code: &LinearCode, leader: &FqVector) -> usize {
        code.codewords(1 << 16)
            .unwrap()
            .iter()
            .map(|c| {
                let cv = FqVector::new(code.field(), c.clone()).unwrap();
                leader.add(&cv).unwrap().weight()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn leaders_are_minimal_and_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for q in [2u32, 3, 5] {
            let field = f(q);
            for _ in 0..6 {
                let n = rng.gen_range(2..8);
                let rows = rng.gen_range(1..=n.min(4));
                let data = (0..rows * n).map(|_| rng.gen_range(0..q)).collect();
                let code = LinearCode::from_parity_check(FqMatrix::from_flat(field, rows, n, data).unwrap());
                let t = code.coset_leader_table(1 << 16).unwrap();
                let bfs = min_weight_by_syndrome(code.parity_check(), 1 << 16).unwrap();
                for i in 0..t.len() {
                    let leader = t.leader_at(i);
                    let s = code.syndrome(&leader).unwrap();
                    assert_eq!(t.syndrome_space().index(s.entries()) as usize, i);
                    assert_eq!(leader.weight(), brute_coset_min(&code, &leader));
                    assert_eq!(Some(leader.weight() as u8), bfs[i]);
                }
            }
        }
    }

    #[test]
    fn covering_radius_matches_pairwise_distances() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [2u32, 3] {
            let field = f(q);
            for _ in 0..5 {
                let n = rng.gen_range(3..7);
                let rows = rng.gen_range(1..n);
                let data = (0..rows * n).map(|_| rng.gen_range(0..q)).collect();
                let code = LinearCode::from_parity_check(FqMatrix::from_flat(field, rows, n, data).unwrap());
                let words = code.codewords(1 << 16).unwrap();
                let space = Space::new(field, n, 1 << 20).unwrap();
                let brute = (0..space.size())
                    .map(|i| {
                        let x = space.point(i);
                        words
                            .iter()
                            .map(|c| x.iter().zip(c).filter(|(a, b)| a != b).count())
                            .min()
                            .unwrap()
                    })
                    .max()
                    .unwrap();
                assert_eq!(covering_radius(&code).unwrap(), brute);
            }
        }
    }

    #[test]
    fn ball_volumes() {
        assert_eq!(hamming_ball_volume(9, 0, 5).unwrap(), BigUint::from(1u32));
        assert_eq!(hamming_ball_volume(7, 1, 2).unwrap(), BigUint::from(8u32));
        assert_eq!(hamming_ball_volume(4, 2, 3).unwrap(), BigUint::from(33u32));
        assert_eq!(hamming_ball_volume(5, 5, 2).unwrap(), BigUint::from(32u32));
        assert!(matches!(hamming_ball_volume(3, 4, 2), Err(Error::Domain(_))));
        let lv = log_q_ball_volume(7, 1, 2).unwrap();
        assert!((lv - 3.0).abs() < 1e-12);
        let big = hamming_ball_volume(200, 100, 2).unwrap();
        let direct = log2_big(&big);
        assert!(direct > 190.0 && direct < 200.0);
    }

    #[test]
    fn sphere_covering_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for q in [2u32, 3, 5] {
            let field = f(q);
            for _ in 0..8 {
                let n = rng.gen_range(2..7);
                let rows = rng.gen_range(1..=n);
                let data = (0..rows * n).map(|_| rng.gen_range(0..q)).collect();
                let code = LinearCode::from_parity_check(FqMatrix::from_flat(field, rows, n, data).unwrap());
                let rho = covering_radius(&code).unwrap();
                let lhs = BigUint::from(q).pow(code.k() as u32) * hamming_ball_volume(n, rho, q).unwrap();
                assert!(lhs >= BigUint::from(q).pow(n as u32));
            }
        }
    }
}
