//! Solvable extensions `R = N ⊕ Q` of nilpotent superalgebras.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, LinMap, Parity, SuperAlgebra};
use crate::derivations::{derivation_space, is_inner, is_superderivation};
use crate::linalg::{
    all_nilpotent_space, is_nilpotent_mat, rref, solve, unit_vec, LinalgError, Mat, Scalar,
    Subspace,
};
use crate::structure::{
    generator_space, is_nilpotent, is_solvable, nilradical_solvable, StructureError,
};
use crate::torus::{is_maximal_rank, maximal_torus, Torus, TorusError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("not of maximal rank: torus dimension {torus_dim}, {generators} generators")]
    NotMaximalRank { torus_dim: usize, generators: usize },
    #[error("torus weights on the generators are singular")]
    TorusNormalizationFailed,
    #[error("torus generators are not commuting even derivations")]
    InvalidTorus,
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),
    #[error("nilradical is not graded")]
    NilradicalNotGraded,
    #[error("nilpotently acting elements do not form the trace-form radical")]
    SplitNotCertified,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A solvable algebra presented over a nilpotent ideal `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvableModel {
    pub algebra: SuperAlgebra,
    pub nilradical: Subspace,
    /// Basis indices spanning a complement `Q` of `N`.
    pub complement: Vec<usize>,
    /// `(dim N_0, dim N_1)`.
    pub nilradical_dims: (usize, usize),
}

impl SolvableModel {
    pub fn q(&self) -> usize {
        self.complement.len()
    }

    /// Even part of the complement.
    pub fn q0(&self) -> Vec<usize> {
        self.complement
            .iter()
            .copied()
            .filter(|&i| self.algebra.parity_of(i) == Parity::Even)
            .collect()
    }

    /// Model over the certified nilradical, complement chosen in basis order.
    pub fn from_algebra(a: &SuperAlgebra) -> Result<SolvableModel, ExtensionError> {
        let nil = nilradical_solvable(a)?;
        SolvableModel::over(a, nil)
    }

    pub fn over(a: &SuperAlgebra, nilradical: Subspace) -> Result<SolvableModel, ExtensionError> {
        if !nilradical.is_graded(a.n()) {
            return Err(ExtensionError::NilradicalNotGraded);
        }
        let n0 = nilradical.restrict_to_coordinates(&a.even_indices()).dim();
        Ok(SolvableModel {
            algebra: a.clone(),
            complement: nilradical.coordinate_complement(),
            nilradical_dims: (n0, nilradical.dim() - n0),
            nilradical,
        })
    }

    /// `N` as an algebra, with its embedding.
    pub fn nilpotent_part(&self) -> Result<(SuperAlgebra, Mat), ExtensionError> {
        Ok(self.algebra.subalgebra(&self.nilradical)?)
    }

    /// Matrix of `v ↦ [v, z]` on `N` in the basis of [`Self::nilpotent_part`].
    pub fn action_on_nilradical(&self, z: usize) -> Result<Mat, ExtensionError> {
        let (_, emb) = self.nilpotent_part()?;
        let zv = unit_vec(self.algebra.dim(), z);
        let cols: Vec<Vec<Scalar>> = (0..emb.cols())
            .map(|c| {
                let w = self.algebra.bracket_vec(&emb.col(c), &zv);
                solve(&emb, &w).ok_or(ExtensionError::Algebra(AlgebraError::NotSubalgebra))
            })
            .collect::<Result<_, _>>()?;
        Ok(Mat::from_cols(&cols, emb.cols()))
    }
}

fn fresh_labels(nilp: &SuperAlgebra, q: usize) -> Vec<String> {
    let taken: Vec<&str> = nilp.labels();
    let mut prefix = String::from("z");
    while (1..=q).any(|j| taken.contains(&format!("{prefix}{j}").as_str())) {
        prefix.push('z');
    }
    (1..=q).map(|j| format!("{prefix}{j}")).collect()
}

/// `R_T`: adjoins one even `z_j` per torus generator with `[v, z_j] = d_j(v)`
/// and `[z_i, z_j] = 0`. The basis of `R` is `x.., z.., y..`.
pub fn attach_torus(nilp: &SuperAlgebra, t: &Torus) -> Result<SolvableModel, ExtensionError> {
    attach_derivations(nilp, &t.generators)
}

pub fn attach_derivations(
    nilp: &SuperAlgebra,
    gens: &[LinMap],
) -> Result<SolvableModel, ExtensionError> {
    for (i, g) in gens.iter().enumerate() {
        if g.parity != Parity::Even || !is_superderivation(nilp, g) {
            return Err(ExtensionError::InvalidTorus);
        }
        if gens[i + 1..].iter().any(|h| !g.matrix.commutes_with(&h.matrix)) {
            return Err(ExtensionError::InvalidTorus);
        }
    }
    let n = nilp.n();
    let q = gens.len();
    let d = nilp.dim() + q;
    let map = |i: usize| if i < n { i } else { i + q };
    let lift = |v: &[Scalar]| {
        let mut out = vec![Scalar::from_integer(0.into()); d];
        for (i, c) in v.iter().enumerate() {
            out[map(i)] = c.clone();
        }
        out
    };
    let mut products = BTreeMap::new();
    for (&(i, j), v) in nilp.products() {
        products.insert((map(i), map(j)), lift(v));
    }
    for (j, g) in gens.iter().enumerate() {
        let z = n + j;
        for v in 0..nilp.dim() {
            let img = lift(&g.matrix.col(v));
            if v < n {
                products.insert((v, z), img);
            } else {
                products.insert((z, map(v)), img.into_iter().map(|x| -x).collect());
            }
        }
    }
    let mut even: Vec<String> = nilp.even_labels().to_vec();
    even.extend(fresh_labels(nilp, q));
    let r = SuperAlgebra::from_products(
        format!("{}_ext", nilp.name()),
        even,
        nilp.odd_labels().to_vec(),
        products,
    )?;
    debug_assert!(r.validate().is_valid());
    let nil_idx: Vec<usize> = (0..nilp.dim()).map(map).collect();
    Ok(SolvableModel {
        nilradical: Subspace::coordinate(d, &nil_idx),
        complement: (n..n + q).collect(),
        nilradical_dims: (n, nilp.m()),
        algebra: r,
    })
}

/// The canonical maximal solvable extension of a nilpotent algebra of
/// maximal rank.
///
/// The maximal torus is rebased so that generator `g_i` has weight `δ_ij`
/// under `z_j`; the weights of the other basis vectors then follow from the
/// normalized torus.
pub fn maximal_solvable_extension(nilp: &SuperAlgebra) -> Result<SolvableModel, ExtensionError> {
    if !is_nilpotent(nilp) {
        return Err(ExtensionError::NotNilpotent);
    }
    let t = maximal_torus(nilp)?;
    let mut base = t.algebra.clone();
    if t.diag_basis == Mat::identity(nilp.dim()) {
        if let Some(marks) = nilp.generator_marks() {
            base = base.with_generator_marks(marks.to_vec());
        }
    }
    let g = generator_space(&base)?;
    let kg = g.k + g.s;
    if t.dim() != kg {
        return Err(ExtensionError::NotMaximalRank {
            torus_dim: t.dim(),
            generators: kg,
        });
    }
    let w = Mat::from_rows_with_cols(
        g.indices.iter().map(|&i| t.weights[i].clone()).collect(),
        kg,
    );
    let winv = w.inverse().ok_or(ExtensionError::TorusNormalizationFailed)?;
    let omega = Mat::from_rows_with_cols(t.weights.clone(), kg);
    let normalized = &omega * &winv;
    let gens: Vec<LinMap> = (0..kg)
        .map(|j| LinMap::even(Mat::diag(&normalized.col(j))))
        .collect();
    let mut model = attach_derivations(&base, &gens)?;
    model.algebra = model.algebra.with_name(format!("{}_max", nilp.name()));
    Ok(model)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSplit {
    /// Complement of `q2` inside `Q_0`.
    pub q1: Subspace,
    /// Elements of `Q_0` acting nilpotently on `N_0 / (N^2)_0`.
    pub q2: Subspace,
    /// No nonzero element of `q2` acts nilpotently on `N_1 / (N^2)_1`.
    pub odd_action_nondegenerate: bool,
}

/// Induced action of `ad_z` on `N_p / (N^2)_p`, in the basis of chosen generators.
fn induced_actions(
    model: &SuperAlgebra,
    nil: &Subspace,
    zs: &[usize],
    parity: Parity,
) -> Vec<Mat> {
    let a = model;
    let d = a.dim();
    let idx = match parity {
        Parity::Even => a.even_indices(),
        Parity::Odd => a.odd_indices(),
    };
    let np = nil.restrict_to_coordinates(&idx);
    let sq = a.subspace_bracket(nil, nil).restrict_to_coordinates(&idx);
    let gens: Vec<Vec<Scalar>> = sq
        .greedy_complement(np.basis().iter().map(|b| (b.clone(), b.clone())))
        .into_iter()
        .collect();
    let k = gens.len();
    let mut frame = gens.clone();
    frame.extend(sq.basis().iter().cloned());
    let f = Mat::from_cols(&frame, d);
    zs.iter()
        .map(|&z| {
            let zv = unit_vec(d, z);
            let cols: Vec<Vec<Scalar>> = gens
                .iter()
                .map(|g| {
                    let w = a.bracket_vec(g, &zv);
                    let c = solve(&f, &w).expect("N is an ideal");
                    c[..k].to_vec()
                })
                .collect();
            Mat::from_cols(&cols, k)
        })
        .collect()
}

/// Radical of `(u, v) ↦ tr(A(u) A(v))` on coefficient space.
fn trace_radical(actions: &[Mat]) -> Vec<Vec<Scalar>> {
    let q = actions.len();
    let rows: Vec<Vec<Scalar>> = (0..q)
        .map(|i| (0..q).map(|j| (&actions[i] * &actions[j]).trace()).collect())
        .collect();
    rref(&Mat::from_rows_with_cols(rows, q)).kernel_basis
}

fn combine(actions: &[Mat], c: &[Scalar]) -> Mat {
    let k = actions[0].rows();
    actions
        .iter()
        .zip(c)
        .fold(Mat::zeros(k, k), |acc, (m, x)| &acc + &m.scale(x))
}

/// Splits `Q_0 = Q_0^1 ⊕ Q_0^2`, where `Q_0^2` acts nilpotently on the even
/// generators. The nilpotent set is computed as the radical of the trace
/// form of the induced action and certified to be all-nilpotent.
pub fn split_q(model: &SolvableModel) -> Result<QSplit, ExtensionError> {
    let a = &model.algebra;
    let d = a.dim();
    let q0 = model.q0();
    let lift = |coeffs: &[Scalar]| {
        let mut v = vec![Scalar::from_integer(0.into()); d];
        for (c, &z) in coeffs.iter().zip(&q0) {
            v[z] = c.clone();
        }
        v
    };
    if q0.is_empty() {
        return Ok(QSplit {
            q1: Subspace::zero(d),
            q2: Subspace::zero(d),
            odd_action_nondegenerate: true,
        });
    }
    let even_act = induced_actions(a, &model.nilradical, &q0, Parity::Even);
    let rad: Vec<Vec<Scalar>> = if even_act[0].rows() == 0 {
        (0..q0.len()).map(|i| unit_vec(q0.len(), i)).collect()
    } else {
        let rad = trace_radical(&even_act);
        let mats: Vec<Mat> = rad.iter().map(|c| combine(&even_act, c)).collect();
        if !all_nilpotent_space(&mats)? {
            return Err(ExtensionError::SplitNotCertified);
        }
        rad
    };
    let q2 = Subspace::span(d, &rad.iter().map(|c| lift(c)).collect::<Vec<_>>());
    let picked = q2.greedy_complement(q0.iter().map(|&z| (z, unit_vec(d, z))));
    let q1 = Subspace::coordinate(d, &picked);

    let odd_act = induced_actions(a, &model.nilradical, &q0, Parity::Odd);
    let odd_action_nondegenerate = if q2.is_zero() {
        true
    } else if odd_act[0].rows() == 0 {
        false
    } else {
        let on_q2: Vec<Mat> = rad.iter().map(|c| combine(&odd_act, c)).collect();
        trace_radical(&on_q2).is_empty()
    };
    Ok(QSplit {
        q1,
        q2,
        odd_action_nondegenerate,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// `dim Q_0 = dim T_max(N)`, when the torus of `N` could be computed.
    pub q0_matches_torus: Option<bool>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_ids(&self) -> Vec<u8> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.id).collect()
    }

    pub fn check(&self, id: u8) -> &Check {
        &self.checks[usize::from(id) - 1]
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            writeln!(f, "({}) {:<28} {}  {}", c.id, c.name, mark, c.detail)?;
        }
        if let Some(ok) = self.q0_matches_torus {
            writeln!(f, "    dim Q0 = dim T_max(N)        {}", if ok { "pass" } else { "FAIL" })?;
        }
        Ok(())
    }
}

/// Structural checks on a solvable model `R = N ⊕ Q`:
/// 1 solvable, and not nilpotent when `Q ≠ 0`; 2 `R^2 ⊆ N`;
/// 3 `[R_1,R_1] ⊆ [R_0,R_0]`; 4 `N` is the nilradical;
/// 5 `dim R/N ≤ dim N/N^2`; 6 `dim Q_0^1 ≤ k`, `dim Q_0^2 ≤ s`;
/// 7 every `z ∈ Q_0` basis acts non-nilpotently on `N`; 8 `[z_i, z_j] = 0`;
/// 9 trivial center and every even derivation inner.
pub fn verify_model(model: &SolvableModel) -> VerificationReport {
    let a = &model.algebra;
    let nil = &model.nilradical;
    let mut checks = Vec::new();
    let mut push = |id: u8, name: &'static str, passed: bool, detail: String| {
        checks.push(Check {
            id,
            name,
            passed,
            detail,
        })
    };

    let solv = is_solvable(a);
    let nilp = is_nilpotent(a);
    push(
        1,
        "solvable, not nilpotent",
        solv && (model.q() == 0 || !nilp),
        format!("solvable={solv} nilpotent={nilp}"),
    );

    let sq = crate::structure::square(a);
    push(2, "R^2 in N", sq.is_subspace_of(nil), format!("dim R^2={}", sq.dim()));

    let r0 = a.even_subspace();
    let r1 = a.odd_subspace();
    let r11 = a.subspace_bracket(&r1, &r1);
    let r00 = a.subspace_bracket(&r0, &r0);
    push(
        3,
        "[R1,R1] in [R0,R0]",
        r11.is_subspace_of(&r00),
        format!("dim [R1,R1]={} dim [R0,R0]={}", r11.dim(), r00.dim()),
    );

    match nilradical_solvable(a) {
        Ok(v) => push(4, "N is the nilradical", v == *nil, format!("dim nilradical={}", v.dim())),
        Err(e) => push(4, "N is the nilradical", false, e.to_string()),
    }

    let nsq = a.subspace_bracket(nil, nil);
    let quot = nil.dim() - nsq.dim();
    push(
        5,
        "dim R/N <= dim N/N^2",
        model.q() <= quot,
        format!("{} vs {}", model.q(), quot),
    );

    let nsq0 = nsq.restrict_to_coordinates(&a.even_indices()).dim();
    let k = model.nilradical_dims.0 - nsq0;
    let s = model.nilradical_dims.1 - (nsq.dim() - nsq0);
    match split_q(model) {
        Ok(split) => push(
            6,
            "dim Q0^1 <= k, dim Q0^2 <= s",
            split.q1.dim() <= k && split.q2.dim() <= s,
            format!("({}, {}) vs ({k}, {s})", split.q1.dim(), split.q2.dim()),
        ),
        Err(e) => push(6, "dim Q0^1 <= k, dim Q0^2 <= s", false, e.to_string()),
    }

    let q0 = model.q0();
    let mut nilpotent_z = Vec::new();
    for &z in &q0 {
        match model.action_on_nilradical(z).map(|m| is_nilpotent_mat(&m)) {
            Ok(Ok(false)) => {}
            _ => nilpotent_z.push(a.label(z).to_string()),
        }
    }
    push(
        7,
        "ad_z non-nilpotent on N",
        nilpotent_z.is_empty(),
        if nilpotent_z.is_empty() {
            String::new()
        } else {
            format!("nilpotent: {}", nilpotent_z.join(" "))
        },
    );

    let mut nonzero = Vec::new();
    for (i, &zi) in q0.iter().enumerate() {
        for &zj in &q0[i + 1..] {
            if a.product(zi, zj).iter().any(|c| !num_traits::Zero::is_zero(c)) {
                nonzero.push(format!("[{},{}]", a.label(zi), a.label(zj)));
            }
        }
    }
    push(8, "[z_i,z_j] = 0", nonzero.is_empty(), nonzero.join(" "));

    let center = a.center();
    let der0 = derivation_space(a, Parity::Even);
    let outer = der0.iter().filter(|d| !is_inner(a, d)).count();
    push(
        9,
        "center 0, Der_0 inner",
        center.is_zero() && outer == 0,
        format!("dim center={} outer={}", center.dim(), outer),
    );

    let q0_matches_torus = model
        .nilpotent_part()
        .ok()
        .filter(|(n, _)| is_nilpotent(n))
        .and_then(|(n, _)| maximal_torus(&n).ok())
        .map(|t| t.dim() == q0.len());

    VerificationReport {
        checks,
        q0_matches_torus,
    }
}

/// No odd generator shares its weight with another odd basis vector.
pub fn check_odd_roots_distinct(t: &Torus) -> Result<bool, ExtensionError> {
    let a = &t.algebra;
    let g = generator_space(a)?;
    let odd = a.odd_indices();
    for &i in g.indices.iter().filter(|&&i| a.parity_of(i) == Parity::Odd) {
        for &j in &odd {
            if i != j && t.weights[i] == t.weights[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For a nilpotent algebra of maximal rank with `[N_1,N_1] ⊆ [N_0,N_0]`,
/// returns whether `[N_1,N_1] = 0`.
pub fn check_odd_square_collapse(nilp: &SuperAlgebra) -> Result<bool, ExtensionError> {
    if !is_nilpotent(nilp) {
        return Err(ExtensionError::PreconditionNotMet("not nilpotent".into()));
    }
    let n1 = nilp.odd_subspace();
    let n0 = nilp.even_subspace();
    let odd_sq = nilp.subspace_bracket(&n1, &n1);
    let c2 = nilp.subspace_bracket(&n0, &n0);
    if !odd_sq.is_subspace_of(&c2) {
        return Err(ExtensionError::PreconditionNotMet(
            "[N1,N1] is not contained in C^2(N0)".into(),
        ));
    }
    if !is_maximal_rank(nilp)? {
        return Err(ExtensionError::PreconditionNotMet("not of maximal rank".into()));
    }
    Ok(odd_sq.is_zero())
}

/// Same nilradical table and the same span of `Q`-actions on it.
pub fn equivalent_models(a: &SolvableModel, b: &SolvableModel) -> Result<bool, ExtensionError> {
    let (na, _) = a.nilpotent_part()?;
    let (nb, _) = b.nilpotent_part()?;
    if na.labels() != nb.labels() || na.products() != nb.products() {
        return Ok(false);
    }
    let span = |m: &SolvableModel| -> Result<Subspace, ExtensionError> {
        let d = m.nilradical.dim();
        let acts: Vec<Vec<Scalar>> = m
            .complement
            .iter()
            .map(|&z| m.action_on_nilradical(z).map(|x| x.to_vec()))
            .collect::<Result<_, _>>()?;
        Ok(Subspace::span(d * d, &acts))
    };
    Ok(span(a)? == span(b)?)
}

/// True if the model is, up to a change of torus basis, the canonical maximal
/// extension of its own nilradical.
pub fn is_canonical_extension(model: &SolvableModel) -> Result<bool, ExtensionError> {
    let (n, _) = model.nilpotent_part()?;
    match maximal_solvable_extension(&n) {
        Ok(canon) => equivalent_models(model, &canon),
        Err(ExtensionError::NotMaximalRank { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraBuilder;
    use crate::linalg::int;

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
    fn n1_extension_table() {
        let m = maximal_solvable_extension(&n1()).unwrap();
        let expected = build(
            &["x1", "z1", "z2"],
            &["y1", "y2"],
            &[
                ("y1", "y2", 1, "x1"),
                ("x1", "z1", 1, "x1"),
                ("y1", "z1", 1, "y1"),
                ("x1", "z2", 1, "x1"),
                ("y2", "z2", 1, "y2"),
            ],
        );
        assert_eq!(m.algebra.products(), expected.products());
        let r = verify_model(&m);
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.q0_matches_torus, Some(true));
    }

    #[test]
    fn n2_extension_split() {
        let m = maximal_solvable_extension(&n2()).unwrap();
        let r = verify_model(&m);
        assert!(r.all_passed(), "{r}");
        let split = split_q(&m).unwrap();
        assert_eq!((split.q1.dim(), split.q2.dim()), (1, 1));
        assert!(split.odd_action_nondegenerate);
    }

    #[test]
    fn zero_torus_adds_nothing() {
        let m = attach_derivations(&n1(), &[]).unwrap();
        assert_eq!(m.q(), 0);
        assert_eq!(m.algebra.products(), n1().products());
    }

    #[test]
    fn odd_square_collapse_preconditions() {
        assert!(matches!(
            check_odd_square_collapse(&n2()),
            Err(ExtensionError::PreconditionNotMet(_))
        ));
        assert_eq!(
            check_odd_square_collapse(&SuperAlgebra::abelian("ab", 1, 2)),
            Ok(true)
        );
    }

    #[test]
    fn repeated_odd_weight() {
        let ab = SuperAlgebra::abelian("ab", 0, 2);
        let t = Torus::from_generators(&ab, vec![LinMap::even(Mat::identity(2))]).unwrap();
        assert_eq!(check_odd_roots_distinct(&t), Ok(false));
        let t = maximal_torus(&n1()).unwrap();
        assert_eq!(check_odd_roots_distinct(&t), Ok(true));
    }
}
