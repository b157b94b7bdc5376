use num_traits::Zero;

use super::{rref, unit_vec, Mat, Scalar};

/// A linear subspace of `Q^n`, stored by its reduced row-echelon basis.
///
/// The RREF basis is unique, so structural equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vec(ambient, i)).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        let nonzero: Vec<Vec<Scalar>> = vectors
            .iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        if nonzero.is_empty() {
            return Subspace::zero(ambient);
        }
        for v in &nonzero {
            assert_eq!(v.len(), ambient, "vector outside ambient space");
        }
        let red = rref(&Mat::from_rows(nonzero));
        let basis = (0..red.rank).map(|r| red.reduced.row(r).to_vec()).collect();
        Subspace { ambient, basis }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<Scalar>> = indices.iter().map(|&i| unit_vec(ambient, i)).collect();
        Subspace::span(ambient, &vs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        // Reduce v against the RREF rows; pivots are the leading ones.
        let mut r = v.to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if !r[pivot].is_zero() {
                let f = r[pivot].clone();
                for (a, b) in r.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *a -= &f * b;
                    }
                }
            }
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &vs)
    }

    /// Intersection via the kernel of `[A | -B]`.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let a = self.dim();
        let mut cols: Vec<Vec<Scalar>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = Mat::from_cols(&cols, self.ambient);
        let kernel = rref(&m).kernel_basis;
        let vecs: Vec<Vec<Scalar>> = kernel
            .iter()
            .map(|k| {
                let mut v = vec![Scalar::zero(); self.ambient];
                for (c, b) in k[..a].iter().zip(&self.basis) {
                    super::axpy(&mut v, c, b);
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &vecs)
    }

    /// Standard basis vectors, chosen greedily in index order, completing
    /// `self` to the whole space.
    pub fn coordinate_complement(&self) -> Vec<usize> {
        self.greedy_complement((0..self.ambient).map(|i| (i, unit_vec(self.ambient, i))))
    }

    /// Greedily picks candidates that are independent of `self` and of the
    /// ones already picked. Returns the picked keys.
    pub fn greedy_complement<K>(&self, candidates: impl IntoIterator<Item = (K, Vec<Scalar>)>) -> Vec<K> {
        let mut acc = self.clone();
        let mut picked = Vec::new();
        for (k, v) in candidates {
            if !acc.contains(&v) {
                acc = acc.sum(&Subspace::span(self.ambient, &[v]));
                picked.push(k);
            }
        }
        picked
    }

    /// The subspace sitting inside the coordinates `indices` (e.g. the even part).
    pub fn restrict_to_coordinates(&self, indices: &[usize]) -> Subspace {
        let coord = Subspace::coordinate(self.ambient, indices);
        self.intersect(&coord)
    }

    /// True if the subspace splits along the coordinate blocks `[0, split)` and `[split, n)`.
    pub fn is_graded(&self, split: usize) -> bool {
        let even: Vec<usize> = (0..split).collect();
        let odd: Vec<usize> = (split..self.ambient).collect();
        let e = self.restrict_to_coordinates(&even);
        let o = self.restrict_to_coordinates(&odd);
        e.dim() + o.dim() == self.dim()
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|v| super::fmt_vec(v)).collect();
        write!(f, "span{{{}}} in Q^{}", rows.join(", "), self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ints;

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(3, &[ints(&[1, 1, 0]), ints(&[1, 0, 1])]);
        let b = Subspace::span(3, &[ints(&[0, 1, -1]), ints(&[2, 1, 1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn membership_and_intersection() {
        let a = Subspace::coordinate(4, &[0, 1]);
        let b = Subspace::span(4, &[ints(&[1, 1, 1, 0]), ints(&[0, 0, 1, 0])]);
        let i = a.intersect(&b);
        assert_eq!(i, Subspace::span(4, &[ints(&[1, 1, 0, 0])]));
        assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
        assert!(!a.contains(&ints(&[0, 0, 1, 0])));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn complement_and_grading() {
        let s = Subspace::span(4, &[ints(&[1, 1, 0, 0])]);
        assert_eq!(s.coordinate_complement(), vec![0, 2, 3]);
        assert!(s.is_graded(2));
        let t = Subspace::span(4, &[ints(&[1, 0, 1, 0])]);
        assert!(!t.is_graded(2));
    }
}
