use super::{is_diagonalizable, LinalgError, Mat, Poly, Scalar};

/// Additive Jordan–Chevalley split `m = semisimple + nilpotent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanChevalley {
    pub semisimple: Mat,
    pub nilpotent: Mat,
    /// Distinct eigenvalues with algebraic multiplicity, increasing.
    pub spectrum: Vec<(Scalar, usize)>,
}

/// Splits `m` into commuting semisimple and nilpotent parts.
///
/// The semisimple part is `s(m)` where `s ≡ r_i (mod (λ - r_i)^{e_i})` for
/// every eigenvalue `r_i` of multiplicity `e_i`; `s` is found by the Chinese
/// remainder theorem over `Q[λ]`. Fails when the spectrum is not rational.
pub fn jordan_chevalley(m: &Mat) -> Result<JordanChevalley, LinalgError> {
    let n = m.ensure_square()?;
    let chi = Poly::charpoly(m)?;
    let spectrum = chi.split_over_q()?;

    let modulus = spectrum
        .iter()
        .fold(Poly::one(), |acc, (r, e)| acc.mul(&Poly::linear(r).pow(*e)));
    let mut s = Poly::zero();
    for (r, e) in &spectrum {
        let qi = Poly::linear(r).pow(*e);
        let others = modulus.div_rem(&qi).0;
        // others·u ≡ 1 (mod qi)
        let (g, u, _) = others.ext_gcd(&qi);
        debug_assert_eq!(g, Poly::one());
        let term = others.mul(&u).scale(r);
        s = s.add(&term);
    }
    let s = s.rem(&modulus);
    let semisimple = if n == 0 { Mat::zeros(0, 0) } else { s.eval_mat(m) };
    let nilpotent = m - &semisimple;

    debug_assert!(semisimple.commutes_with(&nilpotent));
    debug_assert!(nilpotent.pow(n as u32).is_zero());
    debug_assert!(is_diagonalizable(&semisimple).unwrap_or(false));
    Ok(JordanChevalley {
        semisimple,
        nilpotent,
        spectrum,
    })
}
