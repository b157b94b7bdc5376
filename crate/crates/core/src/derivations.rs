//! Superderivations: `d[x,y] = [dx,y] + (-1)^{|d||x|}[x,dy]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{LinMap, Parity, SuperAlgebra};
use crate::exec::Execution;
use crate::linalg::{
    all_nilpotent_space_with, axpy, eigenspaces, jordan_chevalley, primitive_vector, rref, solve,
    LinalgError, Mat, Scalar, Subspace,
};

pub type Derivation = LinMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("map does not satisfy the signed Leibniz rule")]
    NotADerivation,
    #[error("derivation is not semisimple")]
    NotSemisimple,
    #[error("weight spaces violate [L_a, L_b] ⊆ L_(a+b)")]
    GradingLawViolated,
    #[error("semisimple part is not a derivation")]
    SemisimplePartNotDerivation,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Matrix slots allowed for a map of the given parity, column by column.
fn slots(a: &SuperAlgebra, parity: Parity) -> Vec<(usize, usize)> {
    let d = a.dim();
    let mut out = Vec::new();
    for col in 0..d {
        for row in 0..d {
            if a.parity_of(row) + a.parity_of(col) == parity {
                out.push((row, col));
            }
        }
    }
    out
}

fn sign(flag: bool) -> Scalar {
    if flag {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

pub fn derivation_space(a: &SuperAlgebra, parity: Parity) -> Vec<Derivation> {
    derivation_space_with(a, parity, Execution::default())
}

/// Basis of `Der(a)_parity`, the kernel of the Leibniz constraints imposed on
/// canonical basis pairs. Kernel vectors follow free-slot order and are
/// scaled to primitive integers.
pub fn derivation_space_with(a: &SuperAlgebra, parity: Parity, exec: Execution) -> Vec<Derivation> {
    let d = a.dim();
    let slots = slots(a, parity);
    let mut slot_of = vec![usize::MAX; d * d];
    for (u, &(r, c)) in slots.iter().enumerate() {
        slot_of[r * d + c] = u;
    }
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i..d).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j || a.parity_of(i) == Parity::Odd)
        .collect();

    let blocks: Vec<Vec<Vec<Scalar>>> = exec.map(&pairs, |&(i, j)| {
        let sgn = sign(parity.both_odd(a.parity_of(i)));
        let cij = a.product(i, j);
        let mut rows = Vec::new();
        for s in 0..d {
            let mut row = vec![Scalar::zero(); slots.len()];
            let mut add = |r: usize, c: usize, v: &Scalar| {
                let u = slot_of[r * d + c];
                if u != usize::MAX {
                    row[u] += v;
                }
            };
            // d([e_i, e_j])
            for (t, c) in cij.iter().enumerate() {
                if !c.is_zero() {
                    add(s, t, c);
                }
            }
            // -[d e_i, e_j] - sgn [e_i, d e_j]
            for k in 0..d {
                let c = &a.product(k, j)[s];
                if !c.is_zero() {
                    add(k, i, &-c.clone());
                }
                let c = &a.product(i, k)[s];
                if !c.is_zero() {
                    add(k, j, &-(c * &sgn));
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
        rows
    });
    let rows: Vec<Vec<Scalar>> = blocks.into_iter().flatten().collect();
    let red = rref(&Mat::from_rows_with_cols(rows, slots.len()));
    red.kernel_basis
        .iter()
        .map(|v| {
            let v = primitive_vector(v);
            let mut m = Mat::zeros(d, d);
            for (u, &(r, c)) in slots.iter().enumerate() {
                m[(r, c)] = v[u].clone();
            }
            LinMap::new(m, parity)
        })
        .collect()
}

/// Checks the parity pattern and the signed Leibniz rule on all basis pairs.
pub fn is_superderivation(a: &SuperAlgebra, d: &LinMap) -> bool {
    let dim = a.dim();
    if d.matrix.rows() != dim || d.matrix.cols() != dim || !d.respects_parity(a.n()) {
        return false;
    }
    let cols: Vec<Vec<Scalar>> = (0..dim).map(|i| d.matrix.col(i)).collect();
    for i in 0..dim {
        let ei = crate::linalg::unit_vec(dim, i);
        let sgn = sign(d.parity.both_odd(a.parity_of(i)));
        for j in 0..dim {
            let ej = crate::linalg::unit_vec(dim, j);
            let lhs = d.apply(a.product(i, j));
            let mut rhs = a.bracket_vec(&cols[i], &ej);
            axpy(&mut rhs, &sgn, &a.bracket_vec(&ei, &cols[j]));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `[d1, d2] = d1 d2 - (-1)^{|d1||d2|} d2 d1`.
pub fn der_bracket(d1: &LinMap, d2: &LinMap) -> Result<LinMap, DerivationError> {
    if d1.matrix.rows() != d2.matrix.rows() {
        return Err(DerivationError::DimensionMismatch {
            expected: d1.matrix.rows(),
            found: d2.matrix.rows(),
        });
    }
    let ab = &d1.matrix * &d2.matrix;
    let ba = &d2.matrix * &d1.matrix;
    let m = if d1.parity.both_odd(d2.parity) {
        &ab + &ba
    } else {
        &ab - &ba
    };
    Ok(LinMap::new(m, d1.parity + d2.parity))
}

fn binomial(n: usize, k: usize) -> Scalar {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Scalar::from_integer(acc)
}

/// Power Leibniz identities on every basis pair.
///
/// Even `d`: `d^r[x,y] = Σ C(r,i) [d^i x, d^{r-i} y]`. Odd `d` and `r = 2q`:
/// the same with `d^2` in place of `d`. Odd `d` and `r = 2q+1`:
/// `Σ C(q,i) ([d^{2(q-i)+1}x, d^{2i}y] + (-1)^{|x|}[d^{2(q-i)}x, d^{2i+1}y])`.
pub fn leibniz_power_check(a: &SuperAlgebra, d: &LinMap, r: usize) -> bool {
    let dim = a.dim();
    let mut pows = vec![Mat::identity(dim)];
    for _ in 0..r {
        let next = &pows[pows.len() - 1] * &d.matrix;
        pows.push(next);
    }
    let img = |p: usize, i: usize| pows[p].col(i);
    for i in 0..dim {
        for j in 0..dim {
            let lhs = pows[r].mul_vec(a.product(i, j));
            let mut rhs = vec![Scalar::zero(); dim];
            match d.parity {
                Parity::Even => {
                    for t in 0..=r {
                        axpy(&mut rhs, &binomial(r, t), &a.bracket_vec(&img(t, i), &img(r - t, j)));
                    }
                }
                Parity::Odd if r.is_multiple_of(2) => {
                    let q = r / 2;
                    for t in 0..=q {
                        let w = a.bracket_vec(&img(2 * t, i), &img(2 * (q - t), j));
                        axpy(&mut rhs, &binomial(q, t), &w);
                    }
                }
                Parity::Odd => {
                    let q = r / 2;
                    let sx = sign(a.parity_of(i).is_odd());
                    for t in 0..=q {
                        let c = binomial(q, t);
                        let w1 = a.bracket_vec(&img(2 * (q - t) + 1, i), &img(2 * t, j));
                        let w2 = a.bracket_vec(&img(2 * (q - t), i), &img(2 * t + 1, j));
                        axpy(&mut rhs, &c, &w1);
                        axpy(&mut rhs, &(&c * &sx), &w2);
                    }
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Every superderivation is nilpotent, certified on the joint basis of
/// `Der_0` and `Der_1`.
pub fn is_characteristically_nilpotent(a: &SuperAlgebra) -> Result<bool, LinalgError> {
    is_characteristically_nilpotent_with(a, Execution::default())
}

pub fn is_characteristically_nilpotent_with(
    a: &SuperAlgebra,
    exec: Execution,
) -> Result<bool, LinalgError> {
    let mut basis: Vec<Mat> = derivation_space_with(a, Parity::Even, exec)
        .into_iter()
        .map(|d| d.matrix)
        .collect();
    basis.extend(
        derivation_space_with(a, Parity::Odd, exec)
            .into_iter()
            .map(|d| d.matrix),
    );
    if basis.is_empty() {
        return Ok(true);
    }
    all_nilpotent_space_with(&basis, exec)
}

/// Semisimple and nilpotent parts of an even derivation; the semisimple part
/// is checked to be a derivation again.
pub fn jordan_split(a: &SuperAlgebra, d: &LinMap) -> Result<(LinMap, LinMap), DerivationError> {
    let jc = jordan_chevalley(&d.matrix)?;
    let s = LinMap::even(jc.semisimple);
    if !is_superderivation(a, &s) {
        return Err(DerivationError::SemisimplePartNotDerivation);
    }
    Ok((s, LinMap::even(jc.nilpotent)))
}

/// Eigenspaces of a semisimple even derivation, with the grading law
/// `[L_a, L_b] ⊆ L_(a+b)` checked on every pair of weights.
pub fn weight_decomposition_single(
    a: &SuperAlgebra,
    d: &LinMap,
) -> Result<Vec<(Scalar, Subspace)>, DerivationError> {
    if d.parity != Parity::Even || !is_superderivation(a, d) {
        return Err(DerivationError::NotADerivation);
    }
    let jc = jordan_chevalley(&d.matrix)?;
    if !jc.nilpotent.is_zero() {
        return Err(DerivationError::NotSemisimple);
    }
    let spaces = eigenspaces(&d.matrix)?;
    for (x, lx) in &spaces {
        for (y, ly) in &spaces {
            let br = a.subspace_bracket(lx, ly);
            if br.is_zero() {
                continue;
            }
            let target = spaces.iter().find(|(z, _)| *z == x + y);
            match target {
                Some((_, lz)) if br.is_subspace_of(lz) => {}
                _ => return Err(DerivationError::GradingLawViolated),
            }
        }
    }
    Ok(spaces)
}

/// Coefficients `c` with `d = Σ c_i ad_{e_i}` over basis vectors of the
/// same parity as `d`, if any.
pub fn inner_coefficients(a: &SuperAlgebra, d: &LinMap) -> Option<Vec<Scalar>> {
    let idx = match d.parity {
        Parity::Even => a.even_indices(),
        Parity::Odd => a.odd_indices(),
    };
    let cols: Vec<Vec<Scalar>> = idx.iter().map(|&i| a.ad_basis(i).matrix.to_vec()).collect();
    let m = Mat::from_cols(&cols, a.dim() * a.dim());
    let c = solve(&m, &d.matrix.to_vec())?;
    let mut full = vec![Scalar::zero(); a.dim()];
    for (k, &i) in idx.iter().enumerate() {
        full[i] = c[k].clone();
    }
    Some(full)
}

pub fn is_inner(a: &SuperAlgebra, d: &LinMap) -> bool {
    inner_coefficients(a, d).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraBuilder, Element};
    use crate::linalg::int;

    fn build(even: &[&str], odd: &[&str], brackets: &[(&str, &str, i64, &str)]) -> SuperAlgebra {
        let mut b = AlgebraBuilder::new("t").even(even).unwrap().odd(odd).unwrap();
        for (x, y, c, z) in brackets {
            b.bracket(x, y, &[(int(*c), z)]).unwrap();
        }
        b.build().unwrap()
    }

    fn ex26() -> SuperAlgebra {
        build(
            &["x1", "x2"],
            &["y1", "y2"],
            &[
                ("x1", "x2", 1, "x2"),
                ("x1", "y2", 1, "y2"),
                ("y1", "y1", -2, "x1"),
                ("x2", "y1", 1, "y2"),
                ("y1", "y2", 1, "x2"),
            ],
        )
    }

    fn n1() -> SuperAlgebra {
        build(&["x1"], &["y1", "y2"], &[("y1", "y2", 1, "x1")])
    }

    #[test]
    fn ex26_derivation_dimensions() {
        let a = ex26();
        let even = derivation_space(&a, Parity::Even);
        let odd = derivation_space(&a, Parity::Odd);
        assert_eq!((even.len(), odd.len()), (2, 3));
        for d in even.iter().chain(&odd) {
            assert!(is_superderivation(&a, d));
        }
    }

    #[test]
    fn abelian_derivations_are_all_even_maps() {
        let a = SuperAlgebra::abelian("ab", 2, 3);
        assert_eq!(derivation_space(&a, Parity::Even).len(), 4 + 9);
        assert_eq!(derivation_space(&a, Parity::Odd).len(), 12);
    }

    #[test]
    fn superderivation_examples() {
        let a = n1();
        assert!(!is_superderivation(&a, &LinMap::even(Mat::identity(3))));
        assert!(is_superderivation(&a, &LinMap::even(Mat::diag_i64(&[1, 1, 0]))));
        for i in 0..3 {
            assert!(is_superderivation(&a, &a.ad_basis(i)));
        }
    }

    #[test]
    fn odd_self_bracket_is_twice_the_square() {
        let a = ex26();
        for d in derivation_space(&a, Parity::Odd) {
            let b = der_bracket(&d, &d).unwrap();
            assert_eq!(b.matrix, d.matrix.pow(2).scale(&int(2)));
            assert_eq!(b.parity, Parity::Even);
            assert!(is_superderivation(&a, &b));
        }
        for d in derivation_space(&a, Parity::Even) {
            assert!(der_bracket(&d, &d).unwrap().matrix.is_zero());
        }
    }

    #[test]
    fn inner_bracket_matches_product() {
        // ad_x = -[x, ·], so [ad_x, ad_y] = ad_{[y,x]} up to the super sign.
        let a = ex26();
        for i in 0..4 {
            for j in 0..4 {
                let lhs = der_bracket(&a.ad_basis(i), &a.ad_basis(j)).unwrap();
                let e = Element::from_coords(2, a.product(i, j));
                let rhs = a.ad_matrix(&e).unwrap();
                assert_eq!(lhs.matrix, -&rhs.matrix);
            }
        }
    }

    #[test]
    fn power_leibniz_on_ex26_families() {
        let a = ex26();
        let even = derivation_space(&a, Parity::Even);
        let sum = LinMap::even(&even[0].matrix + &even[1].matrix);
        for r in 1..=4 {
            assert!(leibniz_power_check(&a, &sum, r));
        }
        for d in derivation_space(&a, Parity::Odd) {
            for r in 1..=4 {
                assert!(leibniz_power_check(&a, &d, r));
            }
        }
    }

    #[test]
    fn power_leibniz_rejects_non_derivation() {
        let a = n1();
        assert!(!leibniz_power_check(&a, &LinMap::even(Mat::identity(3)), 2));
    }

    #[test]
    fn weights_of_diagonal_derivations() {
        let a = n1();
        let w = weight_decomposition_single(&a, &LinMap::even(Mat::diag_i64(&[1, 1, 0]))).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w[0], (int(0), Subspace::coordinate(3, &[2])));
        assert_eq!(w[1], (int(1), Subspace::coordinate(3, &[0, 1])));
        let z = weight_decomposition_single(&a, &LinMap::even(Mat::zeros(3, 3))).unwrap();
        assert_eq!(z, vec![(int(0), Subspace::full(3))]);
    }

    #[test]
    fn char_nilpotency_of_small_algebras() {
        assert!(!is_characteristically_nilpotent(&n1()).unwrap());
        let filiform = build(
            &["x1", "x2", "x3"],
            &[],
            &[("x1", "x2", 1, "x3")],
        );
        assert!(!is_characteristically_nilpotent(&filiform).unwrap());
    }

    #[test]
    fn inner_derivations_of_ex26() {
        let a = ex26();
        for i in 0..4 {
            let c = inner_coefficients(&a, &a.ad_basis(i)).unwrap();
            assert_eq!(a.ad_basis(i).matrix, {
                let e = Element::from_coords(2, &c);
                a.ad_matrix(&e).unwrap().matrix
            });
        }
        assert!(is_inner(&a, &LinMap::even(Mat::diag_i64(&[0, 1, 0, 1]))));
        assert!(!is_inner(&n1(), &LinMap::even(Mat::diag_i64(&[1, 1, 0]))));
    }
}
