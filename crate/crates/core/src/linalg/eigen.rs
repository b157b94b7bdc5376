use std::cmp::Ordering;

use num_traits::Zero;

use super::{rref, LinalgError, Mat, Poly, Scalar, Subspace};

/// Rational eigenvalues with algebraic multiplicity; fails unless the
/// characteristic polynomial splits over Q.
pub fn rational_spectrum(m: &Mat) -> Result<Vec<(Scalar, usize)>, LinalgError> {
    Poly::charpoly(m)?.split_over_q()
}

/// Diagonalizable over Q iff the spectrum is rational and the product of
/// `m - r` over distinct eigenvalues vanishes.
pub fn is_diagonalizable(m: &Mat) -> Result<bool, LinalgError> {
    let spectrum = rational_spectrum(m)?;
    let n = m.rows();
    let mut acc = Mat::identity(n);
    for (r, _) in &spectrum {
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[(i, i)] -= r;
        }
        acc = &acc * &shifted;
    }
    Ok(acc.is_zero())
}

fn kernel_of_shift(m: &Mat, r: &Scalar) -> Subspace {
    let mut shifted = m.clone();
    for i in 0..m.rows() {
        shifted[(i, i)] -= r;
    }
    rref(&shifted).nullspace()
}

/// Eigenspaces for each distinct rational eigenvalue, increasing.
pub fn eigenspaces(m: &Mat) -> Result<Vec<(Scalar, Subspace)>, LinalgError> {
    let spectrum = rational_spectrum(m)?;
    Ok(spectrum
        .into_iter()
        .map(|(r, _)| {
            let k = kernel_of_shift(m, &r);
            (r, k)
        })
        .collect())
}

fn cmp_desc(a: &[Scalar], b: &[Scalar]) -> Ordering {
    b.cmp(a)
}

/// Invertible `P` whose columns are common eigenvectors, so that `P⁻¹·mᵢ·P`
/// is diagonal for every input.
///
/// Columns are ordered by the position of their leading nonzero entry,
/// ties broken by decreasing eigenvalue tuple; an input that is already
/// diagonal therefore yields the identity.
pub fn simultaneous_eigenbasis(mats: &[Mat]) -> Result<Mat, LinalgError> {
    let Some(first) = mats.first() else {
        return Err(LinalgError::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    };
    let n = first.ensure_square()?;
    for m in mats {
        let k = m.ensure_square()?;
        if k != n {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                found: k,
            });
        }
    }
    for (i, a) in mats.iter().enumerate() {
        for b in &mats[i + 1..] {
            if !a.commutes_with(b) {
                return Err(LinalgError::NotCommuting);
            }
        }
    }
    for m in mats {
        if !is_diagonalizable(m)? {
            return Err(LinalgError::NotDiagonalizable);
        }
    }

    let mut blocks: Vec<(Vec<Scalar>, Subspace)> = vec![(Vec::new(), Subspace::full(n))];
    for m in mats {
        let spaces = eigenspaces(m)?;
        let mut next = Vec::new();
        for (tuple, w) in &blocks {
            for (r, e) in &spaces {
                let joint = w.intersect(e);
                if joint.dim() > 0 {
                    let mut t = tuple.clone();
                    t.push(r.clone());
                    next.push((t, joint));
                }
            }
        }
        blocks = next;
    }

    let mut columns: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    for (tuple, w) in blocks {
        for v in w.basis() {
            let lead = v.iter().position(|x| !x.is_zero()).unwrap_or(n);
            columns.push((lead, tuple.clone(), v.clone()));
        }
    }
    debug_assert_eq!(columns.len(), n);
    columns.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| cmp_desc(&a.1, &b.1)));
    let cols: Vec<Vec<Scalar>> = columns.into_iter().map(|c| c.2).collect();
    Ok(Mat::from_cols(&cols, n))
}
