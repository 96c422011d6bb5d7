mod common;

use common::{apply, gf, kernel, min_weight_per_syndrome, product};
use lsdc::code::LinearCode;
use lsdc::fq::{mat_mul, nullspace_basis, rank, solve_particular, FqMatrix, FqVector};
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7, 11, 13])
}

fn matrix(q: u32, rows: usize, cols: usize) -> impl Strategy<Value = FqMatrix> {
    prop::collection::vec(0..q, rows * cols).prop_map(move |d| FqMatrix::from_flat(gf(q), rows, cols, d).unwrap())
}

/// Three chainable matrices over one field.
fn triple() -> impl Strategy<Value = (FqMatrix, FqMatrix, FqMatrix)> {
    (prime(), 1..5usize, 1..5usize, 1..5usize, 1..5usize)
        .prop_flat_map(|(q, a, b, c, d)| (matrix(q, a, b), matrix(q, b, c), matrix(q, c, d)))
}

proptest! {
    #[test]
    fn product_matches_integer_arithmetic((a, b, _) in triple()) {
        prop_assert_eq!(mat_mul(&a, &b).unwrap().to_rows(), product(&a, &b));
    }

    #[test]
    fn multiplication_is_associative((a, b, c) in triple()) {
        let left = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
        let right = mat_mul(&a, &mat_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes((a, b, _) in triple(), seed in any::<u64>()) {
        // a second matrix of b's shape, derived from b
        let q = b.field().q();
        let data: Vec<u32> = b.data().iter().enumerate().map(|(i, &v)| ((v as u64 + seed.rotate_left(i as u32)) % q as u64) as u32).collect();
        let b2 = FqMatrix::from_flat(b.field(), b.rows(), b.cols(), data).unwrap();
        let sum = FqMatrix::from_flat(
            b.field(),
            b.rows(),
            b.cols(),
            b.data().iter().zip(b2.data()).map(|(&x, &y)| (x + y) % q).collect(),
        )
        .unwrap();
        let lhs = mat_mul(&a, &sum).unwrap();
        let (p1, p2) = (mat_mul(&a, &b).unwrap(), mat_mul(&a, &b2).unwrap());
        let rhs: Vec<u32> = p1.data().iter().zip(p2.data()).map(|(&x, &y)| (x + y) % q).collect();
        prop_assert_eq!(lhs.data(), rhs.as_slice());
    }

    #[test]
    fn rank_plus_nullity_is_width(q in prime(), r in 1..5usize, c in 1..7usize, seed in prop::collection::vec(any::<u32>(), 35)) {
        let data: Vec<u32> = seed.iter().take(r * c).map(|v| v % q).collect();
        let a = FqMatrix::from_flat(gf(q), r, c, data).unwrap();
        let ns = nullspace_basis(&a);
        prop_assert_eq!(rank(&a) + ns.rows(), c);
        for i in 0..ns.rows() {
            prop_assert!(apply(&a, ns.row_slice(i)).iter().all(|&v| v == 0));
        }
        prop_assert_eq!(rank(&ns), ns.rows());
    }

    #[test]
    fn particular_solutions_solve(q in prime(), r in 1..4usize, c in 1..6usize, seed in prop::collection::vec(any::<u32>(), 30)) {
        let data: Vec<u32> = seed.iter().take(r * c).map(|v| v % q).collect();
        let a = FqMatrix::from_flat(gf(q), r, c, data).unwrap();
        // right-hand side in the column space
        let x: Vec<u32> = seed.iter().rev().take(c).map(|v| v % q).collect();
        let b = FqVector::new(gf(q), apply(&a, &x)).unwrap();
        let sol = solve_particular(&a, &b).unwrap();
        prop_assert_eq!(apply(&a, sol.entries()), b.entries().to_vec());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn leaders_are_minimal(q in prop::sample::select(vec![2u32, 3, 5]), n in 2..7usize, seed in prop::collection::vec(any::<u32>(), 36)) {
        let r = 1 + seed[0] as usize % (n - 1);
        let data: Vec<u32> = seed.iter().skip(1).take(r * n).map(|v| v % q).collect();
        let h = FqMatrix::from_flat(gf(q), r, n, data).unwrap();
        prop_assume!(rank(&h) == r);
        let table = LinearCode::from_parity_check(h.clone()).coset_leader_table(1 << 20).unwrap();
        for (s, w) in min_weight_per_syndrome(&h) {
            let leader = table.decode(&FqVector::new(gf(q), s.clone()).unwrap()).unwrap();
            prop_assert_eq!(leader.weight(), w);
            prop_assert_eq!(apply(&h, leader.entries()), s);
        }
        // the code is the kernel of h
        let words = kernel(&h);
        prop_assert_eq!(words.len() as u64, (q as u64).pow((n - r) as u32));
    }
}
