//! Root systems, diagonal and maximal tori, weight decompositions.
//!
//! A diagonal map `diag(α_1..α_n, β_1..β_m)` is a derivation exactly when
//! the weight of every nonzero product equals the sum of the weights of its
//! factors. Those linear conditions form the root system; its kernel is the
//! diagonal torus of the current basis.

use thiserror::Error;

use crate::algebra::{AlgebraError, LinMap, Parity, SuperAlgebra};
use crate::derivations::{derivation_space, is_superderivation, jordan_split, DerivationError};
use crate::linalg::{
    primitive_vector, rref, simultaneous_eigenbasis, LinalgError, Mat, Scalar, Subspace,
};
use crate::structure::{generator_space, is_nilpotent, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("spectrum is not rational (torus found so far has dimension {partial_dim})")]
    IrrationalSpectrum { partial_dim: usize },
    #[error("centralizer of the torus found so far (dimension {partial_dim}) is not nilpotent, but no semisimple element outside it was found")]
    Undetermined { partial_dim: usize },
    #[error("maps are not commuting semisimple even derivations")]
    NotATorus,
    #[error("weight spaces violate the graded bracket law")]
    GradingLawViolated,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The product `[e_i, e_j]` has a nonzero `e_t` coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootTag {
    pub i: usize,
    pub j: usize,
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    /// One row `w_i + w_j - w_t` per distinct equation, columns in basis order.
    pub matrix: Mat,
    pub row_tags: Vec<RootTag>,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        rref(&self.matrix).rank
    }

    /// Kernel vectors in free-variable order, scaled to primitive integers.
    pub fn solutions(&self) -> Vec<Vec<Scalar>> {
        rref(&self.matrix)
            .kernel_basis
            .iter()
            .map(|v| primitive_vector(v))
            .collect()
    }
}

pub fn build_root_system(a: &SuperAlgebra) -> RootSystem {
    let d = a.dim();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut row_tags = Vec::new();
    for (&(i, j), v) in a.products() {
        for (t, c) in v.iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let mut row = vec![0i64; d];
            row[i] += 1;
            row[j] += 1;
            row[t] -= 1;
            if !rows.contains(&row) {
                rows.push(row);
                row_tags.push(RootTag { i, j, t });
            }
        }
    }
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(crate::linalg::int).collect())
        .collect();
    RootSystem {
        matrix: Mat::from_rows_with_cols(rows, d),
        row_tags,
    }
}

/// Diagonal derivations spanning the kernel of the root system.
pub fn diagonal_torus(a: &SuperAlgebra) -> Vec<LinMap> {
    build_root_system(a)
        .solutions()
        .iter()
        .map(|v| LinMap::even(Mat::diag(v)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusRank {
    pub rank: usize,
    pub torus_dim: usize,
    pub generators: Vec<LinMap>,
}

/// Rank of the root system in the given basis and the diagonal torus it cuts out.
pub fn rank_and_torus_dim(a: &SuperAlgebra) -> Result<TorusRank, TorusError> {
    if !is_nilpotent(a) {
        return Err(TorusError::NotNilpotent);
    }
    let rs = build_root_system(a);
    let rank = rs.rank();
    let generators = diagonal_torus(a);
    debug_assert!(generators.iter().all(|g| is_superderivation(a, g)));
    Ok(TorusRank {
        rank,
        torus_dim: a.dim() - rank,
        generators,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torus {
    /// Generators in the basis of the input algebra.
    pub generators: Vec<LinMap>,
    /// Columns express the diagonalizing basis in the input basis.
    pub diag_basis: Mat,
    /// The input algebra rewritten in `diag_basis`.
    pub algebra: SuperAlgebra,
    /// `weights[v][j]`: eigenvalue of generator `j` on basis vector `v` of `algebra`.
    pub weights: Vec<Vec<Scalar>>,
    /// Dimension of the diagonal torus of the input basis.
    pub initial_dim: usize,
}

impl Torus {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Generators as diagonal matrices on `algebra`.
    pub fn diagonal_generators(&self) -> Vec<LinMap> {
        (0..self.dim())
            .map(|j| {
                let diag: Vec<Scalar> = self.weights.iter().map(|w| w[j].clone()).collect();
                LinMap::even(Mat::diag(&diag))
            })
            .collect()
    }

    /// Weight tuple of each basis vector of `algebra`.
    pub fn weight_of(&self, v: usize) -> &[Scalar] {
        &self.weights[v]
    }

    /// Torus spanned by given even derivations, diagonalized blockwise so the
    /// change of basis preserves parity.
    pub fn from_generators(a: &SuperAlgebra, generators: Vec<LinMap>) -> Result<Torus, TorusError> {
        for g in &generators {
            if g.parity != Parity::Even || !is_superderivation(a, g) {
                return Err(TorusError::NotATorus);
            }
        }
        for (i, g) in generators.iter().enumerate() {
            for h in &generators[i + 1..] {
                if !g.matrix.commutes_with(&h.matrix) {
                    return Err(TorusError::NotATorus);
                }
            }
        }
        let block = |idx: Vec<usize>| -> Result<Mat, TorusError> {
            if generators.is_empty() || idx.is_empty() {
                return Ok(Mat::identity(idx.len()));
            }
            let mats: Vec<Mat> = generators
                .iter()
                .map(|g| g.matrix.submatrix(&idx, &idx))
                .collect();
            simultaneous_eigenbasis(&mats).map_err(|e| match e {
                LinalgError::IrrationalSpectrum => TorusError::IrrationalSpectrum { partial_dim: 0 },
                LinalgError::NotDiagonalizable | LinalgError::NotCommuting => TorusError::NotATorus,
                other => other.into(),
            })
        };
        let pe = block(a.even_indices())?;
        let po = block(a.odd_indices())?;
        let algebra = a.change_basis(&pe, &po)?;
        let p = Mat::block_diag(&pe, &po);
        let pinv = p.inverse().expect("eigenbasis is invertible");
        let weights_by_gen: Vec<Vec<Scalar>> = generators
            .iter()
            .map(|g| {
                let dg = &(&pinv * &g.matrix) * &p;
                debug_assert!(dg.is_diagonal());
                dg.diagonal()
            })
            .collect();
        let weights = (0..a.dim())
            .map(|v| weights_by_gen.iter().map(|w| w[v].clone()).collect())
            .collect();
        Ok(Torus {
            initial_dim: generators.len(),
            generators,
            diag_basis: p,
            algebra,
            weights,
        })
    }
}

/// Even derivations commuting with every map in `t`.
fn centralizer(a: &SuperAlgebra, t: &[LinMap]) -> Vec<Mat> {
    let der0 = derivation_space(a, Parity::Even);
    if t.is_empty() {
        return der0.into_iter().map(|d| d.matrix).collect();
    }
    let cols: Vec<Vec<Scalar>> = der0
        .iter()
        .map(|d| {
            t.iter()
                .flat_map(|g| d.matrix.commutator(&g.matrix).to_vec())
                .collect()
        })
        .collect();
    let rows = t.len() * a.dim() * a.dim();
    let red = rref(&Mat::from_cols(&cols, rows));
    red.kernel_basis
        .iter()
        .map(|c| {
            let mut m = Mat::zeros(a.dim(), a.dim());
            for (coef, d) in c.iter().zip(&der0) {
                m = &m + &d.matrix.scale(coef);
            }
            m
        })
        .collect()
}

/// True if the matrices span a nilpotent Lie algebra under the commutator.
fn spans_nilpotent_lie_algebra(c: &[Mat]) -> bool {
    let Some(first) = c.first() else {
        return true;
    };
    let n = first.rows() * first.cols();
    let mut term: Vec<Mat> = c.to_vec();
    for _ in 0..=c.len() {
        let brackets: Vec<Vec<Scalar>> = c
            .iter()
            .flat_map(|x| term.iter().map(move |y| x.commutator(y).to_vec()))
            .collect();
        let next = Subspace::span(n, &brackets);
        if next.is_zero() {
            return true;
        }
        term = next
            .basis()
            .iter()
            .map(|v| Mat::from_flat(first.rows(), first.cols(), v.clone()))
            .collect();
    }
    false
}

/// Elements of the centralizer to try: the basis, then pairwise brackets,
/// then pairwise sums.
fn candidates(c: &[Mat]) -> impl Iterator<Item = Mat> + '_ {
    let pairs = move || (0..c.len()).flat_map(move |i| (i + 1..c.len()).map(move |j| (i, j)));
    c.iter()
        .cloned()
        .chain(pairs().map(|(i, j)| c[i].commutator(&c[j])))
        .chain(pairs().map(|(i, j)| &c[i] + &c[j]))
}

/// A maximal torus of a nilpotent algebra.
///
/// Starts from the diagonal torus of the given basis. While some element of
/// its centralizer in `Der_0` has a semisimple part outside the torus, that
/// part is adjoined, the enlarged torus is diagonalized, and the diagonal
/// torus of the new basis is taken. Stops after at most `dim` rounds.
///
/// A torus `T` is maximal iff its centralizer is nilpotent with every
/// semisimple part inside `T`; the centralizer is checked for nilpotency
/// before returning. Tori that do not split over the rationals are refused
/// with [`TorusError::IrrationalSpectrum`].
pub fn maximal_torus(a: &SuperAlgebra) -> Result<Torus, TorusError> {
    if !is_nilpotent(a) {
        return Err(TorusError::NotNilpotent);
    }
    let d = a.dim();
    let mut cur = a.clone();
    let mut p_total = Mat::identity(d);
    let mut gens = diagonal_torus(&cur);
    let initial_dim = gens.len();

    for _ in 0..=d {
        let span = Subspace::span(
            d * d,
            &gens.iter().map(|g| g.matrix.to_vec()).collect::<Vec<_>>(),
        );
        let cent = centralizer(&cur, &gens);
        let mut irrational = false;
        let mut extra = None;
        for c in candidates(&cent) {
            match jordan_split(&cur, &LinMap::even(c)) {
                Ok((s, _)) => {
                    if !span.contains(&s.matrix.to_vec()) {
                        extra = Some(s);
                        break;
                    }
                }
                Err(DerivationError::Linalg(LinalgError::IrrationalSpectrum)) => irrational = true,
                Err(e) => return Err(e.into()),
            }
        }
        let Some(s) = extra else {
            if irrational {
                return Err(TorusError::IrrationalSpectrum {
                    partial_dim: gens.len(),
                });
            }
            if !spans_nilpotent_lie_algebra(&cent) {
                return Err(TorusError::Undetermined {
                    partial_dim: gens.len(),
                });
            }
            break;
        };
        let mut enlarged = gens.clone();
        enlarged.push(s);
        let step = Torus::from_generators(&cur, enlarged).map_err(|e| match e {
            TorusError::IrrationalSpectrum { .. } => TorusError::IrrationalSpectrum {
                partial_dim: gens.len(),
            },
            other => other,
        })?;
        p_total = &p_total * &step.diag_basis;
        cur = step.algebra;
        gens = diagonal_torus(&cur);
    }

    let pinv = p_total.inverse().expect("basis change is invertible");
    let generators: Vec<LinMap> = gens
        .iter()
        .map(|g| LinMap::even(&(&p_total * &g.matrix) * &pinv))
        .collect();
    let weights = (0..d)
        .map(|v| gens.iter().map(|g| g.matrix[(v, v)].clone()).collect())
        .collect();
    Ok(Torus {
        generators,
        diag_basis: p_total,
        algebra: cur,
        weights,
        initial_dim,
    })
}

/// `dim T_max = k + s`, the number of generators.
pub fn is_maximal_rank(a: &SuperAlgebra) -> Result<bool, TorusError> {
    let g = generator_space(a)?;
    Ok(maximal_torus(a)?.dim() == g.k + g.s)
}

/// Basis vectors of `t.algebra` grouped by weight tuple, in order of first
/// appearance. The law `[L_a, L_b] ⊆ L_(a+b)` is checked on every pair.
pub fn weight_decomposition(t: &Torus) -> Result<Vec<(Vec<Scalar>, Subspace)>, TorusError> {
    let a = &t.algebra;
    let d = a.dim();
    let mut classes: Vec<(Vec<Scalar>, Vec<usize>)> = Vec::new();
    for v in 0..d {
        let w = t.weights[v].clone();
        match classes.iter_mut().find(|(k, _)| *k == w) {
            Some((_, members)) => members.push(v),
            None => classes.push((w, vec![v])),
        }
    }
    let out: Vec<(Vec<Scalar>, Subspace)> = classes
        .into_iter()
        .map(|(w, idx)| (w, Subspace::coordinate(d, &idx)))
        .collect();
    for (wa, la) in &out {
        for (wb, lb) in &out {
            let br = a.subspace_bracket(la, lb);
            if br.is_zero() {
                continue;
            }
            let sum: Vec<Scalar> = wa.iter().zip(wb).map(|(x, y)| x + y).collect();
            match out.iter().find(|(w, _)| *w == sum) {
                Some((_, lc)) if br.is_subspace_of(lc) => {}
                _ => return Err(TorusError::GradingLawViolated),
            }
        }
    }
    Ok(out)
}

/// Span of the diagonals of diagonal maps.
pub fn diagonal_span(maps: &[LinMap]) -> Subspace {
    let d = maps.first().map_or(0, |m| m.matrix.rows());
    Subspace::span(d, &maps.iter().map(|m| m.matrix.diagonal()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;
    use crate::linalg::{int, ints};

    fn build(even: &[&str], odd: &[&str], brackets: &[(&str, &str, i64, &str)]) -> SuperAlgebra {
        let mut b = AlgebraBuilder::new("t").even(even).unwrap().odd(odd).unwrap();
        for (x, y, c, z) in brackets {
            b.bracket(x, y, &[(int(*c), z)]).unwrap();
        }
        b.build().unwrap()
    }

    fn n1() -> SuperAlgebra {
        build(&["x1"], &["y1", "y2"], &[("y1", "y2", 1, "x1")])
    }

    fn n2() -> SuperAlgebra {
        build(
            &["x1", "x2"],
            &["y1", "y2", "y3"],
            &[
                ("y1", "x1", 1, "y2"),
                ("y2", "x1", 1, "y3"),
                ("y3", "y1", 1, "x2"),
                ("y2", "y2", -1, "x2"),
            ],
        )
    }

    #[test]
    fn nilpotent_basis_of_sl2_is_not_mistaken_for_a_nilpotent_algebra() {
        let e = Mat::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let f = Mat::from_i64_rows(&[&[0, 0], &[1, 0]]);
        let g = Mat::from_i64_rows(&[&[1, 1], &[-1, -1]]);
        assert!(!spans_nilpotent_lie_algebra(&[e.clone(), f, g]));
        assert!(spans_nilpotent_lie_algebra(&[e]));
    }

    #[test]
    fn odd_quadratic_form_decides_splitting() {
        // -(a+b)^2 + 3b^2 has no rational zero: the rotation part does not split.
        let anisotropic = build(
            &["x1", "x2"],
            &["y1", "y2"],
            &[("y1", "y1", -1, "x2"), ("y1", "y2", -1, "x2"), ("y2", "y2", 2, "x2")],
        );
        assert!(matches!(
            maximal_torus(&anisotropic),
            Err(TorusError::IrrationalSpectrum { partial_dim: 2 })
        ));
        let hyperbolic = build(
            &["x1", "x2"],
            &["y1", "y2"],
            &[("y1", "y1", 1, "x2"), ("y2", "y2", -1, "x2")],
        );
        assert_eq!(maximal_torus(&hyperbolic).unwrap().dim(), 3);
        assert!(is_maximal_rank(&hyperbolic).unwrap());
    }

    #[test]
    fn n1_torus() {
        let r = rank_and_torus_dim(&n1()).unwrap();
        assert_eq!((r.rank, r.torus_dim), (1, 2));
        assert_eq!(r.generators[0].matrix, Mat::diag_i64(&[1, 1, 0]));
        assert_eq!(r.generators[1].matrix, Mat::diag_i64(&[1, 0, 1]));
    }

    #[test]
    fn n2_torus_span() {
        let r = rank_and_torus_dim(&n2()).unwrap();
        assert_eq!((r.rank, r.torus_dim), (3, 2));
        let expected = Subspace::span(5, &[ints(&[1, 2, 0, 1, 2]), ints(&[0, 2, 1, 1, 1])]);
        assert_eq!(diagonal_span(&r.generators), expected);
        let rs = build_root_system(&n2());
        assert_eq!(rs.matrix.rows(), 4);
    }

    #[test]
    fn maximal_torus_recovers_hidden_diagonal() {
        // N1 written in a basis where the torus is not diagonal.
        let p = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let a = n1().change_basis(&Mat::identity(1), &p).unwrap();
        let t = maximal_torus(&a).unwrap();
        assert_eq!(t.dim(), 2);
        for g in &t.generators {
            assert!(is_superderivation(&a, g));
        }
        assert!(is_maximal_rank(&a).unwrap());
    }

    #[test]
    fn non_maximal_rank() {
        let a = build(
            &["x1", "x2", "x3", "x4", "x5"],
            &["y1"],
            &[
                ("x1", "x2", 1, "x3"),
                ("x1", "x3", 1, "x4"),
                ("x1", "x4", 1, "x5"),
                ("y1", "y1", 1, "x5"),
            ],
        );
        let r = rank_and_torus_dim(&a).unwrap();
        assert_eq!((r.rank, r.torus_dim), (4, 2));
        assert_eq!(maximal_torus(&a).unwrap().dim(), 2);
        assert!(!is_maximal_rank(&a).unwrap());
    }

    #[test]
    fn weights_of_n2() {
        let t = Torus::from_generators(
            &n2(),
            vec![
                LinMap::even(Mat::diag_i64(&[1, 2, 0, 1, 2])),
                LinMap::even(Mat::diag_i64(&[0, 2, 1, 1, 1])),
            ],
        )
        .unwrap();
        let w = weight_decomposition(&t).unwrap();
        let odd: Vec<Vec<Scalar>> = (2..5).map(|v| t.weight_of(v).to_vec()).collect();
        assert_eq!(odd, vec![ints(&[0, 1]), ints(&[1, 1]), ints(&[2, 1])]);
        assert_eq!(w.len(), 5);
        let single = crate::derivations::weight_decomposition_single(
            &n2(),
            &LinMap::even(Mat::diag_i64(&[1, 2, 0, 1, 2])),
        )
        .unwrap();
        let spaces: Vec<Subspace> = single.into_iter().map(|(_, s)| s).collect();
        assert_eq!(
            spaces,
            vec![
                Subspace::coordinate(5, &[2]),
                Subspace::coordinate(5, &[0, 3]),
                Subspace::coordinate(5, &[1, 4]),
            ]
        );
        let zero = Torus::from_generators(&n2(), vec![]).unwrap();
        assert_eq!(weight_decomposition(&zero).unwrap().len(), 1);
    }

    #[test]
    fn non_derivation_is_not_a_torus() {
        assert_eq!(
            Torus::from_generators(&n1(), vec![LinMap::even(Mat::identity(3))]),
            Err(TorusError::NotATorus)
        );
    }
}
