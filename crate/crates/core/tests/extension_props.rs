//! Maximal extensions of random weight-graded nilpotent algebras.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superlie::extension::{maximal_solvable_extension, split_q, verify_model, ExtensionError};
use superlie::structure::generator_space;
use superlie::torus::TorusError;

mod common;
use common::*;

#[test]
fn random_maximal_rank_extensions_pass_every_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (mut built, mut not_max, mut nonsplit) = (0, 0, 0);
    while built < 300 {
        let a = random_weight_graded(&mut rng);
        if !a.validate().is_valid() {
            continue;
        }
        let m = match maximal_solvable_extension(&a) {
            Ok(m) => m,
            Err(ExtensionError::NotMaximalRank { .. }) => {
                not_max += 1;
                continue;
            }
            Err(ExtensionError::Torus(TorusError::IrrationalSpectrum { .. })) => {
                nonsplit += 1;
                continue;
            }
            Err(e) => panic!("{e}\n{}", superlie::format::serialize(&a, &[])),
        };
        let report = verify_model(&m);
        let table = superlie::format::serialize(&a, &[]);
        assert!(report.all_passed(), "{report}\n{table}");
        assert_eq!(report.q0_matches_torus, Some(true), "{table}");
        assert!(m.algebra.center().is_zero(), "{table}");
        let g = generator_space(&a).unwrap();
        let s = split_q(&m).unwrap();
        assert_eq!(s.q1.dim() + s.q2.dim(), g.k + g.s, "{table}");
        assert!(s.q1.dim() <= g.k, "{table}");
        built += 1;
    }
    assert!(not_max > 0 && built == 300, "{built} built, {not_max} not maximal, {nonsplit} nonsplit");
}
