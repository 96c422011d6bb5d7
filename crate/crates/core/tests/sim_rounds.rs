mod common;

use std::sync::Arc;

use common::{all_vectors, apply, random_matrix, random_vector};
use lsdc::fq::FqVector;
use lsdc::multishot::build_multishot_scheme;
use lsdc::scheme::{build_scheme_coded, worked_example, Budgets, DemandMatrix, Scheme, Strategy};
use lsdc::sim::{audit_costs, run_round, run_with_subfunctions, Subfunction, SubfunctionSuite};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Decodes every file vector when `q^L <= 2^16`, else 1000 seeded ones.
fn decodes_everything(s: &Scheme, seed: u64) {
    let q = s.q();
    let exhaustive = (q as f64).powi(s.l() as i32) <= 65536.0;
    let ws: Vec<Vec<u32>> = if exhaustive {
        all_vectors(q, s.l())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..1000).map(|_| random_vector(&mut rng, q, s.l()).into_entries()).collect()
    };
    for w in ws {
        let r = run_round(s, &FqVector::new(s.field(), w.clone()).unwrap()).unwrap();
        assert!(r.correct(), "w = {w:?}");
        assert_eq!(r.demanded.entries(), apply(s.f(), &w).as_slice());
        assert_eq!(audit_costs(&r.transcript), s.costs());
    }
}

#[test]
fn worked_example_decodes_all_inputs() {
    // 7^6 > 2^16: sampled
    decodes_everything(&worked_example(), 5);
}

#[test]
fn built_schemes_decode_all_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let b = Budgets::default();
    for i in 0..12 {
        let q = [2u32, 3][i % 2];
        let k = rng.gen_range(1..=3usize);
        let l = rng.gen_range(1..=5usize);
        let n = k + rng.gen_range(1..=3);
        let f = DemandMatrix::new(random_matrix(&mut rng, q, k, l)).unwrap();
        let s = if i % 3 == 2 {
            build_multishot_scheme(&f, n, 2, &Strategy::FullCovering { radius: None }, &b).unwrap()
        } else {
            build_scheme_coded(&f, n, &Strategy::PartialCovering { radius: None, exact: i % 3 == 1 }, &b).unwrap()
        };
        decodes_everything(&s, i as u64);
    }
}

#[test]
fn servers_only_use_their_own_files() {
    let s = worked_example();
    let funcs = vec![
        Subfunction::IdentityOfSeed { seed: 3 },
        Subfunction::PolynomialEval { coeffs: vec![1, 2, 3] },
        Subfunction::PolynomialEval { coeffs: vec![0, 0, 1] },
        Subfunction::Custom(Arc::new(|d: &[u32]| d.iter().map(|x| x * x + 1).sum())),
        Subfunction::Custom(Arc::new(|d: &[u32]| d.iter().product::<u32>() % 7)),
        Subfunction::IdentityOfSeed { seed: 9 },
    ];
    let suite = SubfunctionSuite::new(s.field(), funcs);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let data: Vec<Vec<u32>> = (0..6).map(|_| (0..4).map(|_| rng.gen_range(0..50)).collect()).collect();
        let r = run_with_subfunctions(&s, &suite, &data).unwrap();
        assert!(r.round.correct());
        assert!(r.local_symbols_match);
        // each file is evaluated once per server that holds it
        let counts: Vec<usize> = (0..6).map(|l| s.server_set(l).len()).collect();
        assert_eq!(r.evaluations, counts);
    }
}
