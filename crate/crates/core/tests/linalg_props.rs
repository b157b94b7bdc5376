//! Property tests for the exact linear algebra layer.

use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, RngAlgorithm, TestRng, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superlie::linalg::{
    determinant, int, is_diagonalizable, is_nilpotent_mat, jordan_chevalley, rank, rref, Mat, Poly,
    Scalar,
};

mod common;

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Mat> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], r * c)
            .prop_map(move |v| Mat::from_flat(r, c, v.into_iter().map(int).collect()))
    })
}

/// Plain Gaussian elimination on rationals, kept separate from the library.
fn oracle_rank(m: &Mat) -> usize {
    let mut rows = m.row_vecs();
    let cols = m.cols();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn rank_plus_nullity() {
    runner(1000)
        .run(&matrix(6, 7), |m| {
            let r = rref(&m);
            prop_assert_eq!(r.rank + r.nullity(), m.cols());
            prop_assert_eq!(r.rank, oracle_rank(&m));
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            for v in &r.kernel_basis {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(r.nullspace().dim(), r.nullity());
            Ok(())
        })
        .unwrap();
}

#[test]
fn charpoly_is_conjugation_invariant() {
    let strat = (1usize..=5, any::<u64>()).prop_flat_map(|(n, seed)| {
        prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| (n, seed, v))
    });
    runner(1000)
        .run(&strat, |(n, seed, v)| {
            let m = Mat::from_flat(n, n, v.into_iter().map(int).collect());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = common::random_invertible(&mut rng, n, 3 * n);
            let pinv = p.inverse().expect("invertible by construction");
            let conj = &(&p * &m) * &pinv;
            let chi = Poly::charpoly(&m).unwrap();
            prop_assert_eq!(&chi, &Poly::charpoly(&conj).unwrap());
            // chi(l) = det(l I - m) at a few integer points
            for l in -2..=2 {
                let shifted = &Mat::identity(n).scale(&int(l)) - &m;
                prop_assert_eq!(chi.eval(&int(l)), determinant(&shifted).unwrap());
            }
            Ok(())
        })
        .unwrap();
}

/// `(P J P^{-1}, P D P^{-1})` for a random Jordan matrix `J` with integer
/// eigenvalues and diagonal `D`.
fn conjugated_jordan(seed: u64, blocks: &[(i64, usize)]) -> (Mat, Mat) {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    let mut j = Mat::zeros(n, n);
    let mut d = Mat::zeros(n, n);
    let mut at = 0;
    for &(ev, size) in blocks {
        for k in 0..size {
            j[(at + k, at + k)] = int(ev);
            d[(at + k, at + k)] = int(ev);
            if k + 1 < size {
                j[(at + k, at + k + 1)] = int(1);
            }
        }
        at += size;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = common::random_invertible(&mut rng, n, 2 * n);
    let pinv = p.inverse().unwrap();
    (&(&p * &j) * &pinv, &(&p * &d) * &pinv)
}

#[test]
fn jordan_chevalley_contract() {
    let strat = (
        any::<u64>(),
        prop::collection::vec((-3i64..=3, 1usize..=3), 1..=3),
    );
    runner(1000)
        .run(&strat, |(seed, blocks)| {
            let (m, expected_s) = conjugated_jordan(seed, &blocks);
            let jc = jordan_chevalley(&m).unwrap();
            prop_assert_eq!(&(&jc.semisimple + &jc.nilpotent), &m);
            prop_assert!(jc.semisimple.commutes_with(&jc.nilpotent));
            prop_assert!(is_nilpotent_mat(&jc.nilpotent).unwrap());
            prop_assert!(is_diagonalizable(&jc.semisimple).unwrap());
            prop_assert_eq!(&jc.semisimple, &expected_s);
            let total: usize = jc.spectrum.iter().map(|s| s.1).sum();
            prop_assert_eq!(total, m.rows());
            Ok(())
        })
        .unwrap();
}

#[test]
fn irrational_spectrum_is_refused() {
    // x^2 - 2
    let m = Mat::from_i64_rows(&[&[0, 2], &[1, 0]]);
    assert!(jordan_chevalley(&m).is_err());
    let s: Scalar = Poly::charpoly(&m).unwrap().eval(&int(0));
    assert_eq!(s, int(-2));
}
