//! Finite-dimensional Lie superalgebras given by structure constants.
//!
//! The basis is ordered `x1..xn` (even) followed by `y1..ym` (odd); global
//! index `i < n` is even. Only canonical brackets are stored: `[e_i, e_j]`
//! with `i < j`, plus `[y, y]` for odd basis vectors. The mirror products
//! come from `[b, a] = -(-1)^{|a||b|} [a, b]`, so super skew-symmetry holds by
//! construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exec::Execution;
use crate::linalg::{axpy, is_zero_vec, solve, zero_vec, LinalgError, Mat, Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{|self||other|}` as a flag: true when both are odd.
    pub fn both_odd(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("label `{0}` declared twice")]
    DuplicateLabel(String),
    #[error("bracket [{0},{1}] given more than once")]
    DuplicateBracket(String, String),
    #[error("bracket [{a},{b}] has parity {expected} but its value involves `{target}`")]
    ParityMismatch {
        a: String,
        b: String,
        target: String,
        expected: Parity,
    },
    #[error("[{0},{0}] must vanish for an even basis vector")]
    EvenSelfBracket(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("change of basis is singular")]
    Singular,
    #[error("subspace is not graded")]
    NotGraded,
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A linear map on the coordinate space with a declared parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub matrix: Mat,
    pub parity: Parity,
}

impl LinMap {
    pub fn new(matrix: Mat, parity: Parity) -> Self {
        LinMap { matrix, parity }
    }

    pub fn even(matrix: Mat) -> Self {
        LinMap::new(matrix, Parity::Even)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    /// Block pattern check: an even map preserves both halves, an odd map swaps them.
    pub fn respects_parity(&self, n: usize) -> bool {
        let d = self.matrix.rows();
        (0..d).all(|r| {
            (0..d).all(|c| {
                let same = (r < n) == (c < n);
                let allowed = same == (self.parity == Parity::Even);
                allowed || self.matrix[(r, c)].is_zero()
            })
        })
    }
}

/// An element given by its even and odd coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub even: Vec<Scalar>,
    pub odd: Vec<Scalar>,
}

impl Element {
    pub fn from_coords(n: usize, coords: &[Scalar]) -> Self {
        Element {
            even: coords[..n].to_vec(),
            odd: coords[n..].to_vec(),
        }
    }

    pub fn basis(a: &SuperAlgebra, i: usize) -> Self {
        let mut c = zero_vec(a.dim());
        c[i] = Scalar::one();
        Element::from_coords(a.n(), &c)
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.even.iter().chain(&self.odd).cloned().collect()
    }

    /// `None` for a mixed element. Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        if is_zero_vec(&self.odd) {
            Some(Parity::Even)
        } else if is_zero_vec(&self.even) {
            Some(Parity::Odd)
        } else {
            None
        }
    }
}

/// Outcome of [`SuperAlgebra::validate`]. Violations are listed by basis index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub closure_violations: Vec<(usize, usize)>,
    pub skew_violations: Vec<(usize, usize)>,
    /// Triples `i <= j <= k` on which the super Jacobi identity fails.
    pub jacobi_violations: Vec<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.closure_violations.is_empty()
            && self.skew_violations.is_empty()
            && self.jacobi_violations.is_empty()
    }

    pub fn describe(&self, a: &SuperAlgebra) -> Vec<String> {
        let l = |i: usize| a.label(i).to_string();
        let mut out = Vec::new();
        for &(i, j) in &self.closure_violations {
            out.push(format!("grading: [{},{}]", l(i), l(j)));
        }
        for &(i, j) in &self.skew_violations {
            out.push(format!("skew-symmetry: [{},{}]", l(i), l(j)));
        }
        for &(i, j, k) in &self.jacobi_violations {
            out.push(format!("jacobi: ({}, {}, {})", l(i), l(j), l(k)));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperAlgebra {
    name: String,
    even: Vec<String>,
    odd: Vec<String>,
    products: BTreeMap<(usize, usize), Vec<Scalar>>,
    /// Dense `[e_i, e_j]` at `i * dim + j`.
    table: Vec<Vec<Scalar>>,
    generator_marks: Option<Vec<usize>>,
}

impl SuperAlgebra {
    /// Builds an algebra from canonical products. Keys must satisfy `i < j`,
    /// or `i == j` with `i` odd; zero values are dropped.
    pub fn from_products(
        name: impl Into<String>,
        even: Vec<String>,
        odd: Vec<String>,
        products: BTreeMap<(usize, usize), Vec<Scalar>>,
    ) -> Result<Self, AlgebraError> {
        let mut seen = BTreeSet::new();
        for l in even.iter().chain(&odd) {
            if !seen.insert(l.as_str()) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        let n = even.len();
        let dim = n + odd.len();
        let parity = |i: usize| if i < n { Parity::Even } else { Parity::Odd };
        let label = |i: usize| {
            if i < n {
                even[i].clone()
            } else {
                odd[i - n].clone()
            }
        };
        let mut kept = BTreeMap::new();
        for ((i, j), v) in products {
            if v.len() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            assert!(i < dim && j < dim && i <= j, "non-canonical key ({i}, {j})");
            if is_zero_vec(&v) {
                continue;
            }
            if i == j && parity(i) == Parity::Even {
                return Err(AlgebraError::EvenSelfBracket(label(i)));
            }
            let expected = parity(i) + parity(j);
            if let Some(t) = (0..dim).find(|&t| !v[t].is_zero() && parity(t) != expected) {
                return Err(AlgebraError::ParityMismatch {
                    a: label(i),
                    b: label(j),
                    target: label(t),
                    expected,
                });
            }
            kept.insert((i, j), v);
        }

        let mut table = vec![zero_vec(dim); dim * dim];
        for (&(i, j), v) in &kept {
            table[i * dim + j] = v.clone();
            if i != j {
                let sign = if parity(i).both_odd(parity(j)) {
                    Scalar::one()
                } else {
                    -Scalar::one()
                };
                table[j * dim + i] = v.iter().map(|x| x * &sign).collect();
            }
        }
        Ok(SuperAlgebra {
            name: name.into(),
            even,
            odd,
            products: kept,
            table,
            generator_marks: None,
        })
    }

    pub fn abelian(name: impl Into<String>, n: usize, m: usize) -> Self {
        let even = (1..=n).map(|i| format!("x{i}")).collect();
        let odd = (1..=m).map(|i| format!("y{i}")).collect();
        SuperAlgebra::from_products(name, even, odd, BTreeMap::new()).expect("abelian algebra")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn n(&self) -> usize {
        self.even.len()
    }

    pub fn m(&self) -> usize {
        self.odd.len()
    }

    pub fn dim(&self) -> usize {
        self.even.len() + self.odd.len()
    }

    pub fn even_labels(&self) -> &[String] {
        &self.even
    }

    pub fn odd_labels(&self) -> &[String] {
        &self.odd
    }

    pub fn label(&self, i: usize) -> &str {
        if i < self.n() {
            &self.even[i]
        } else {
            &self.odd[i - self.n()]
        }
    }

    pub fn labels(&self) -> Vec<&str> {
        (0..self.dim()).map(|i| self.label(i)).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.even
            .iter()
            .chain(&self.odd)
            .position(|l| l == label)
    }

    pub fn parity_of(&self, i: usize) -> Parity {
        if i < self.n() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.n()).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (self.n()..self.dim()).collect()
    }

    /// Canonical nonzero products.
    pub fn products(&self) -> &BTreeMap<(usize, usize), Vec<Scalar>> {
        &self.products
    }

    /// `[e_i, e_j]` for any ordered pair.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i * self.dim() + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.products.is_empty()
    }

    pub fn generator_marks(&self) -> Option<&[usize]> {
        self.generator_marks.as_deref()
    }

    pub fn with_generator_marks(mut self, marks: Vec<usize>) -> Self {
        self.generator_marks = Some(marks);
        self
    }

    fn check_len(&self, v: &[Scalar]) -> Result<(), AlgebraError> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            })
        }
    }

    /// Bilinear extension of the table on coordinate vectors.
    pub fn bracket_vec(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = zero_vec(d);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                axpy(&mut out, &c, self.product(i, j));
            }
        }
        out
    }

    pub fn bracket(&self, u: &Element, v: &Element) -> Result<Element, AlgebraError> {
        let (u, v) = (u.coords(), v.coords());
        self.check_len(&u)?;
        self.check_len(&v)?;
        Ok(Element::from_coords(self.n(), &self.bracket_vec(&u, &v)))
    }

    /// Matrix of left multiplication `y ↦ [x, y]`.
    pub fn left_mul(&self, x: &[Scalar]) -> Mat {
        let d = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| {
                let mut out = zero_vec(d);
                for (i, xi) in x.iter().enumerate() {
                    if !xi.is_zero() {
                        axpy(&mut out, xi, self.product(i, j));
                    }
                }
                out
            })
            .collect();
        Mat::from_cols(&cols, d)
    }

    /// Inner superderivation of a homogeneous element.
    ///
    /// For even `x` this is `y ↦ [y, x]`. For odd `x` the map `y ↦ [y, x]`
    /// breaks the signed Leibniz rule, so the sign `(-1)^{|y|}` is folded in;
    /// in both cases the result equals `-[x, ·]`.
    pub fn ad_matrix(&self, x: &Element) -> Result<LinMap, AlgebraError> {
        let parity = x.parity().ok_or(AlgebraError::NotHomogeneous)?;
        let coords = x.coords();
        self.check_len(&coords)?;
        Ok(LinMap::new(-&self.left_mul(&coords), parity))
    }

    pub fn ad_basis(&self, i: usize) -> LinMap {
        LinMap::new(-&self.left_mul(&crate::linalg::unit_vec(self.dim(), i)), self.parity_of(i))
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_with(Execution::default())
    }

    /// Checks grading, skew-symmetry and the super Leibniz form of Jacobi
    /// `[x,[y,z]] = [[x,y],z] - (-1)^{|y||z|}[[x,z],y]` on basis triples.
    pub fn validate_with(&self, exec: Execution) -> ValidationReport {
        let d = self.dim();
        let mut report = ValidationReport::default();
        for i in 0..d {
            for j in 0..d {
                let v = self.product(i, j);
                let expected = self.parity_of(i) + self.parity_of(j);
                if (0..d).any(|t| !v[t].is_zero() && self.parity_of(t) != expected) {
                    report.closure_violations.push((i, j));
                }
                if j >= i {
                    let w = self.product(j, i);
                    let same = self.parity_of(i).both_odd(self.parity_of(j));
                    let ok = v.iter().zip(w).all(|(a, b)| {
                        if same {
                            a == b
                        } else {
                            *a == -b.clone()
                        }
                    });
                    if !ok {
                        report.skew_violations.push((i, j));
                    }
                }
            }
        }
        let rows: Vec<Vec<(usize, usize, usize)>> = exec.map_range(d, |i| {
            let mut bad = Vec::new();
            for j in i..d {
                for k in j..d {
                    if !self.jacobi_holds(i, j, k) {
                        bad.push((i, j, k));
                    }
                }
            }
            bad
        });
        report.jacobi_violations = rows.into_iter().flatten().collect();
        report
    }

    fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let ei = crate::linalg::unit_vec(self.dim(), i);
        let lhs = self.bracket_vec(&ei, self.product(j, k));
        let mut rhs = self.bracket_vec(self.product(i, j), &crate::linalg::unit_vec(self.dim(), k));
        let t = self.bracket_vec(self.product(i, k), &crate::linalg::unit_vec(self.dim(), j));
        let sign = if self.parity_of(j).both_odd(self.parity_of(k)) {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        axpy(&mut rhs, &sign, &t);
        lhs == rhs
    }

    /// New basis `e'_a = Σ_i P[i,a] e_i` with `P = diag(p_even, p_odd)`.
    /// Labels are kept.
    pub fn change_basis(&self, p_even: &Mat, p_odd: &Mat) -> Result<SuperAlgebra, AlgebraError> {
        for (p, k) in [(p_even, self.n()), (p_odd, self.m())] {
            if p.rows() != k || p.cols() != k {
                return Err(AlgebraError::DimensionMismatch {
                    expected: k,
                    found: p.rows(),
                });
            }
        }
        let p = Mat::block_diag(p_even, p_odd);
        let pinv = p.inverse().ok_or(AlgebraError::Singular)?;
        let d = self.dim();
        let mut products = BTreeMap::new();
        for a in 0..d {
            for b in a..d {
                if a == b && self.parity_of(a) == Parity::Even {
                    continue;
                }
                let w = self.bracket_vec(&p.col(a), &p.col(b));
                let v = pinv.mul_vec(&w);
                if !is_zero_vec(&v) {
                    products.insert((a, b), v);
                }
            }
        }
        SuperAlgebra::from_products(
            self.name.clone(),
            self.even.clone(),
            self.odd.clone(),
            products,
        )
    }

    /// Span of `[u, v]` over basis vectors of `u` and `v`.
    pub fn subspace_bracket(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for a in u.basis() {
            for b in v.basis() {
                let w = self.bracket_vec(a, b);
                if !is_zero_vec(&w) {
                    vecs.push(w);
                }
            }
        }
        Subspace::span(self.dim(), &vecs)
    }

    pub fn even_subspace(&self) -> Subspace {
        Subspace::coordinate(self.dim(), &self.even_indices())
    }

    pub fn odd_subspace(&self) -> Subspace {
        Subspace::coordinate(self.dim(), &self.odd_indices())
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    /// `{z : [z, e_k] = 0 for every basis vector e_k}`.
    pub fn center(&self) -> Subspace {
        let d = self.dim();
        let mut rows = Vec::new();
        for k in 0..d {
            for t in 0..d {
                let row: Vec<Scalar> = (0..d).map(|i| self.product(i, k)[t].clone()).collect();
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
        crate::linalg::rref(&Mat::from_rows_with_cols(rows, d)).nullspace()
    }

    pub fn is_ideal(&self, v: &Subspace) -> bool {
        self.subspace_bracket(v, &self.full()).is_subspace_of(v)
    }

    /// The even part as an algebra with no odd generators.
    pub fn even_part(&self) -> SuperAlgebra {
        let n = self.n();
        let products = self
            .products
            .iter()
            .filter(|((i, j), _)| *i < n && *j < n)
            .map(|(&k, v)| (k, v[..n].to_vec()))
            .collect();
        SuperAlgebra::from_products(
            format!("{}_even", self.name),
            self.even.clone(),
            Vec::new(),
            products,
        )
        .expect("even part of a graded table")
    }

    /// The graded subalgebra `v` as an algebra in its own right, with the
    /// matrix whose columns embed the new basis. Coordinate basis vectors keep
    /// their labels.
    pub fn subalgebra(&self, v: &Subspace) -> Result<(SuperAlgebra, Mat), AlgebraError> {
        let d = self.dim();
        let ev = v.restrict_to_coordinates(&self.even_indices());
        let od = v.restrict_to_coordinates(&self.odd_indices());
        if ev.dim() + od.dim() != v.dim() {
            return Err(AlgebraError::NotGraded);
        }
        let basis: Vec<Vec<Scalar>> = ev.basis().iter().chain(od.basis()).cloned().collect();
        let emb = Mat::from_cols(&basis, d);
        let name_for = |k: usize, b: &[Scalar], prefix: &str| {
            let nz: Vec<usize> = (0..d).filter(|&t| !b[t].is_zero()).collect();
            if nz.len() == 1 && b[nz[0]].is_one() {
                self.label(nz[0]).to_string()
            } else {
                format!("{prefix}{}", k + 1)
            }
        };
        let even: Vec<String> = ev
            .basis()
            .iter()
            .enumerate()
            .map(|(k, b)| name_for(k, b, "u"))
            .collect();
        let odd: Vec<String> = od
            .basis()
            .iter()
            .enumerate()
            .map(|(k, b)| name_for(k, b, "w"))
            .collect();
        let sub_n = even.len();
        let mut products = BTreeMap::new();
        for a in 0..basis.len() {
            for b in a..basis.len() {
                if a == b && a < sub_n {
                    continue;
                }
                let w = self.bracket_vec(&basis[a], &basis[b]);
                if is_zero_vec(&w) {
                    continue;
                }
                let c = solve(&emb, &w).ok_or(AlgebraError::NotSubalgebra)?;
                products.insert((a, b), c);
            }
        }
        let sub = SuperAlgebra::from_products(format!("{}_sub", self.name), even, odd, products)?;
        Ok((sub, emb))
    }
}

/// Incremental construction by label, used by the file parser and tests.
/// Either orientation of a bracket may be given, but only once.
#[derive(Clone, Debug)]
pub struct AlgebraBuilder {
    name: String,
    even: Vec<String>,
    odd: Vec<String>,
    products: BTreeMap<(usize, usize), Vec<Scalar>>,
    declared: BTreeSet<(usize, usize)>,
}

impl AlgebraBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        AlgebraBuilder {
            name: name.into(),
            even: Vec::new(),
            odd: Vec::new(),
            products: BTreeMap::new(),
            declared: BTreeSet::new(),
        }
    }

    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn even<S: AsRef<str>>(mut self, labels: &[S]) -> Result<Self, AlgebraError> {
        self.add_even(labels)?;
        Ok(self)
    }

    pub fn odd<S: AsRef<str>>(mut self, labels: &[S]) -> Result<Self, AlgebraError> {
        self.add_odd(labels)?;
        Ok(self)
    }

    fn check_fresh(&self, label: &str) -> Result<(), AlgebraError> {
        if self.even.iter().chain(&self.odd).any(|l| l == label) {
            Err(AlgebraError::DuplicateLabel(label.to_string()))
        } else {
            Ok(())
        }
    }

    /// Even labels must all be declared before any odd label or bracket.
    pub fn add_even<S: AsRef<str>>(&mut self, labels: &[S]) -> Result<(), AlgebraError> {
        assert!(
            self.odd.is_empty() && self.declared.is_empty(),
            "even labels after odd labels or brackets"
        );
        for l in labels {
            self.check_fresh(l.as_ref())?;
            self.even.push(l.as_ref().to_string());
        }
        Ok(())
    }

    pub fn add_odd<S: AsRef<str>>(&mut self, labels: &[S]) -> Result<(), AlgebraError> {
        assert!(self.declared.is_empty(), "odd labels after brackets");
        for l in labels {
            self.check_fresh(l.as_ref())?;
            self.odd.push(l.as_ref().to_string());
        }
        Ok(())
    }

    pub fn has_odd(&self) -> bool {
        !self.odd.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize, AlgebraError> {
        self.even
            .iter()
            .chain(&self.odd)
            .position(|l| l == label)
            .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
    }

    fn parity(&self, i: usize) -> Parity {
        if i < self.even.len() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn label(&self, i: usize) -> &str {
        let n = self.even.len();
        if i < n {
            &self.even[i]
        } else {
            &self.odd[i - n]
        }
    }

    /// Sets `[a, b] = Σ c·g` from labelled terms.
    pub fn bracket(
        &mut self,
        a: &str,
        b: &str,
        terms: &[(Scalar, &str)],
    ) -> Result<(), AlgebraError> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        let dim = self.even.len() + self.odd.len();
        let mut v = zero_vec(dim);
        for (c, g) in terms {
            let t = self.index_of(g)?;
            v[t] += c;
        }
        self.bracket_idx(i, j, v)
    }

    pub fn bracket_idx(&mut self, i: usize, j: usize, v: Vec<Scalar>) -> Result<(), AlgebraError> {
        let key = (i.min(j), i.max(j));
        if !self.declared.insert(key) {
            return Err(AlgebraError::DuplicateBracket(
                self.label(i).to_string(),
                self.label(j).to_string(),
            ));
        }
        let expected = self.parity(i) + self.parity(j);
        if let Some(t) = (0..v.len()).find(|&t| !v[t].is_zero() && self.parity(t) != expected) {
            return Err(AlgebraError::ParityMismatch {
                a: self.label(i).to_string(),
                b: self.label(j).to_string(),
                target: self.label(t).to_string(),
                expected,
            });
        }
        if i == j && self.parity(i) == Parity::Even && !is_zero_vec(&v) {
            return Err(AlgebraError::EvenSelfBracket(self.label(i).to_string()));
        }
        let v = if i > j && !self.parity(i).both_odd(self.parity(j)) {
            v.into_iter().map(|x| -x).collect()
        } else {
            v
        };
        if !is_zero_vec(&v) {
            self.products.insert(key, v);
        }
        Ok(())
    }

    pub fn build(self) -> Result<SuperAlgebra, AlgebraError> {
        SuperAlgebra::from_products(self.name, self.even, self.odd, self.products)
    }
}
