//! Lower central and derived series, nilpotency and solvability, generator
//! counts and the nilradical of a solvable superalgebra.

use thiserror::Error;

use crate::algebra::{AlgebraError, SuperAlgebra};
use crate::linalg::{is_nilpotent_mat, rref, LinalgError, Mat, Scalar, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("nilradical candidate failed verification: {0}")]
    NilradicalVerificationFailed(String),
    #[error("marked generators do not span a complement of the square")]
    GeneratorMarksInvalid,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Central,
    Derived,
    C0,
    C1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    /// `terms[0]` is the first term of the series; the last entry is the
    /// stable term, listed once.
    pub terms: Vec<Subspace>,
    /// Index into `terms` of the stable term.
    pub stabilized_at: usize,
}

impl SeriesReport {
    pub fn last(&self) -> &Subspace {
        &self.terms[self.stabilized_at]
    }

    pub fn reaches_zero(&self) -> bool {
        self.last().is_zero()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

fn iterate(kind: SeriesKind, start: Subspace, step: impl Fn(&Subspace) -> Subspace) -> SeriesReport {
    let mut terms = vec![start];
    loop {
        let next = step(terms.last().unwrap());
        if next.dim() == terms.last().unwrap().dim() {
            break;
        }
        terms.push(next);
    }
    let stabilized_at = terms.len() - 1;
    SeriesReport {
        kind,
        terms,
        stabilized_at,
    }
}

/// `L^1 = L`, `L^{k+1} = [L^k, L]`.
pub fn central_series(a: &SuperAlgebra) -> SeriesReport {
    let full = a.full();
    let r = iterate(SeriesKind::Central, full.clone(), |t| a.subspace_bracket(t, &full));
    debug_assert!(r.terms.iter().all(|t| a.is_ideal(t)));
    r
}

/// `L^[1] = L`, `L^[k+1] = [L^[k], L^[k]]`.
pub fn derived_series(a: &SuperAlgebra) -> SeriesReport {
    iterate(SeriesKind::Derived, a.full(), |t| a.subspace_bracket(t, t))
}

/// `C^{k+1}(L_0) = [C^k(L_0), L_0]` and `C^{k+1}(L_1) = [C^k(L_1), L_0]`.
pub fn c_sequences(a: &SuperAlgebra) -> (SeriesReport, SeriesReport) {
    let l0 = a.even_subspace();
    let c0 = iterate(SeriesKind::C0, l0.clone(), |t| a.subspace_bracket(t, &l0));
    let c1 = iterate(SeriesKind::C1, a.odd_subspace(), |t| a.subspace_bracket(t, &l0));
    (c0, c1)
}

pub fn is_nilpotent(a: &SuperAlgebra) -> bool {
    central_series(a).reaches_zero()
}

/// Nilpotency through the even-part criterion on `C^k(L_0)` and `C^k(L_1)`.
pub fn is_nilpotent_by_c_sequences(a: &SuperAlgebra) -> bool {
    let (c0, c1) = c_sequences(a);
    c0.reaches_zero() && c1.reaches_zero()
}

pub fn is_solvable(a: &SuperAlgebra) -> bool {
    derived_series(a).reaches_zero()
}

/// Smallest `s` with `L^s = 0`; `None` if the algebra is not nilpotent.
pub fn nilindex(a: &SuperAlgebra) -> Option<usize> {
    let r = central_series(a);
    r.reaches_zero().then_some(r.stabilized_at + 1)
}

/// The square `L^2 = [L, L]`.
pub fn square(a: &SuperAlgebra) -> Subspace {
    let full = a.full();
    a.subspace_bracket(&full, &full)
}

/// Lower central series of the subspace `v` taken inside itself; true if it
/// reaches zero.
pub fn is_nilpotent_subalgebra(a: &SuperAlgebra, v: &Subspace) -> bool {
    let mut t = v.clone();
    loop {
        let next = a.subspace_bracket(&t, v);
        if next.is_zero() {
            return true;
        }
        if next.dim() == t.dim() {
            return false;
        }
        t = next;
    }
}

/// Smallest ideal containing `v`.
pub fn ideal_generated(a: &SuperAlgebra, v: &Subspace) -> Subspace {
    let full = a.full();
    let mut t = v.clone();
    loop {
        let next = t.sum(&a.subspace_bracket(&t, &full));
        if next.dim() == t.dim() {
            return t;
        }
        t = next;
    }
}

/// Generators of a nilpotent algebra: a complement of `N^2`, split by parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpace {
    /// Basis indices of the chosen generators, even first.
    pub indices: Vec<usize>,
    pub span: Subspace,
    /// `dim N_0 / (N_0^2 + [N_1, N_1])`.
    pub k: usize,
    /// `dim N_1 / [N_1, N_0]`.
    pub s: usize,
}

/// Picks basis vectors independent modulo `N^2`, even ones first, unless the
/// algebra carries generator marks, which are then checked instead.
pub fn generator_space(a: &SuperAlgebra) -> Result<GeneratorSpace, StructureError> {
    if !is_nilpotent(a) {
        return Err(StructureError::NotNilpotent);
    }
    let d = a.dim();
    let sq = square(a);
    let sq0 = sq.restrict_to_coordinates(&a.even_indices());
    let k = a.n() - sq0.dim();
    let s = a.m() - (sq.dim() - sq0.dim());
    let indices = match a.generator_marks() {
        Some(marks) => {
            let mut marks = marks.to_vec();
            marks.sort_unstable();
            let span = Subspace::coordinate(d, &marks);
            if marks.len() != k + s || span.sum(&sq).dim() != d || span.dim() != marks.len() {
                return Err(StructureError::GeneratorMarksInvalid);
            }
            marks
        }
        None => sq.coordinate_complement(),
    };
    Ok(GeneratorSpace {
        span: Subspace::coordinate(d, &indices),
        indices,
        k,
        s,
    })
}

/// Nilradical of a solvable algebra, certified.
///
/// Every `x` in a nilpotent ideal makes `ad_x ad_y` nilpotent, so the
/// nilradical sits inside `V = {x : tr(ad_x ad_{e_j}) = 0 for all j}`. The
/// candidate `V` is accepted once it is shown to be a nilpotent ideal, which
/// forces equality. Each basis vector of `V` must also act nilpotently, and
/// no basis vector outside `V` may generate, together with `V`, a nilpotent
/// ideal.
pub fn nilradical_solvable(a: &SuperAlgebra) -> Result<Subspace, StructureError> {
    if !is_solvable(a) {
        return Err(StructureError::NotSolvable);
    }
    let d = a.dim();
    let ads: Vec<Mat> = (0..d).map(|i| a.ad_basis(i).matrix).collect();
    let rows: Vec<Vec<Scalar>> = (0..d)
        .map(|j| (0..d).map(|i| (&ads[i] * &ads[j]).trace()).collect())
        .collect();
    let v = rref(&Mat::from_rows_with_cols(rows, d)).nullspace();
    let fail = |msg: &str| Err(StructureError::NilradicalVerificationFailed(msg.to_string()));

    if !a.is_ideal(&v) {
        return fail("candidate is not an ideal");
    }
    if !is_nilpotent_subalgebra(a, &v) {
        return fail("candidate is not nilpotent");
    }
    for b in v.basis() {
        if !is_nilpotent_mat(&(-&a.left_mul(b)))? {
            return fail("candidate basis vector acts non-nilpotently");
        }
    }
    for i in 0..d {
        let e = crate::linalg::unit_vec(d, i);
        if v.contains(&e) {
            continue;
        }
        let bigger = ideal_generated(a, &v.sum(&Subspace::span(d, &[e])));
        if is_nilpotent_subalgebra(a, &bigger) {
            return fail("a larger nilpotent ideal exists");
        }
    }
    Ok(v)
}
