#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use superlie::algebra::{Parity, SuperAlgebra};
use superlie::format::{parse_file, AlgebraFile};
use superlie::linalg::{int, Mat, Scalar, Subspace};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn load(name: &str) -> AlgebraFile {
    parse_file(&corpus_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn algebra(name: &str) -> SuperAlgebra {
    load(name).algebra
}

pub const CORPUS: &[&str] = &[
    "ex26.sla",
    "ex33.sla",
    "n1.sla",
    "n2.sla",
    "n3_m3.sla",
    "n3_m5.sla",
    "n4_n5.sla",
    "ex310.sla",
    "nine_dim.sla",
    "four_dim.sla",
    "ex54.sla",
    "thm55.sla",
];

pub fn corpus() -> Vec<(&'static str, SuperAlgebra)> {
    CORPUS.iter().map(|n| (*n, algebra(n))).collect()
}

pub fn nilpotent_corpus() -> Vec<(&'static str, SuperAlgebra)> {
    corpus()
        .into_iter()
        .filter(|(_, a)| superlie::structure::is_nilpotent(a))
        .collect()
}

pub fn parity(a: &SuperAlgebra, i: usize) -> Parity {
    if i < a.n() {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Dense `[e_i, e_j]` rebuilt from the stored canonical products and the sign
/// rule, independently of the library's cached table.
pub fn dense_table(a: &SuperAlgebra) -> Vec<Vec<Vec<Scalar>>> {
    let d = a.dim();
    let mut t = vec![vec![vec![int(0); d]; d]; d];
    for (&(i, j), v) in a.products() {
        t[i][j] = v.clone();
        if i != j {
            let both_odd = parity(a, i) == Parity::Odd && parity(a, j) == Parity::Odd;
            // [e_j, e_i] = -(-1)^{|i||j|} [e_i, e_j]
            t[j][i] = if both_odd {
                v.clone()
            } else {
                v.iter().map(|c| -c.clone()).collect()
            };
        }
    }
    t
}

pub fn br(t: &[Vec<Vec<Scalar>>], u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let d = u.len();
    let mut out = vec![int(0); d];
    for i in 0..d {
        if u[i] == int(0) {
            continue;
        }
        for j in 0..d {
            if v[j] == int(0) {
                continue;
            }
            let c = &u[i] * &v[j];
            for k in 0..d {
                out[k] += &c * &t[i][j][k];
            }
        }
    }
    out
}

fn unit(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![int(0); d];
    v[i] = int(1);
    v
}

/// Naive Jacobi check in the form
/// `[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]` over all basis triples.
pub fn naive_jacobi_holds(a: &SuperAlgebra) -> bool {
    let t = dense_table(a);
    let d = a.dim();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let (ex, ey, ez) = (unit(d, x), unit(d, y), unit(d, z));
                let lhs = br(&t, &ex, &br(&t, &ey, &ez));
                let r1 = br(&t, &br(&t, &ex, &ey), &ez);
                let mut r2 = br(&t, &ey, &br(&t, &ex, &ez));
                if parity(a, x) == Parity::Odd && parity(a, y) == Parity::Odd {
                    r2.iter_mut().for_each(|c| *c = -c.clone());
                }
                let rhs: Vec<Scalar> = r1.iter().zip(&r2).map(|(p, q)| p + q).collect();
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

pub fn naive_bracket(a: &SuperAlgebra, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    br(&dense_table(a), u, v)
}

/// Canonical slots `(i, j, t)` permitted by the grading.
pub fn graded_slots(a: &SuperAlgebra) -> Vec<(usize, usize, usize)> {
    let d = a.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in i..d {
            if i == j && parity(a, i) == Parity::Even {
                continue;
            }
            let target = parity(a, i) + parity(a, j);
            for t in 0..d {
                if parity(a, t) == target {
                    out.push((i, j, t));
                }
            }
        }
    }
    out
}

/// Adds `delta` to one structure constant.
pub fn flip(a: &SuperAlgebra, (i, j, t): (usize, usize, usize), delta: &Scalar) -> SuperAlgebra {
    let mut products: BTreeMap<(usize, usize), Vec<Scalar>> = a.products().clone();
    let entry = products.entry((i, j)).or_insert_with(|| vec![int(0); a.dim()]);
    entry[t] += delta;
    SuperAlgebra::from_products(
        format!("{}_flip", a.name()),
        a.even_labels().to_vec(),
        a.odd_labels().to_vec(),
        products,
    )
    .expect("graded flip")
}

pub fn small_int(rng: &mut ChaCha8Rng, bound: i64) -> Scalar {
    int(rng.gen_range(-bound..=bound))
}

/// Random invertible matrix: a product of elementary operations on the identity.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> Mat {
    let mut m = Mat::identity(n);
    if n < 2 {
        if n == 1 {
            m[(0, 0)] = int(rng.gen_range(1..=3));
        }
        return m;
    }
    for _ in 0..steps {
        let r = rng.gen_range(0..n);
        let mut s = rng.gen_range(0..n - 1);
        if s >= r {
            s += 1;
        }
        let c = small_int(rng, 2);
        for k in 0..n {
            let add = &c * &m[(s, k)];
            m[(r, k)] += add;
        }
    }
    m
}

/// Random unipotent upper-triangular matrix; keeps a natural basis natural
/// when the basis is ordered compatibly with the filtration.
pub fn random_unipotent(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    let mut m = Mat::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = small_int(rng, 1);
        }
    }
    m
}

pub fn random_homogeneous(rng: &mut ChaCha8Rng, a: &SuperAlgebra, p: Parity) -> Vec<Scalar> {
    (0..a.dim())
        .map(|i| {
            if parity(a, i) == p && rng.gen_bool(0.6) {
                small_int(rng, 3)
            } else {
                int(0)
            }
        })
        .collect()
}

/// Random nilpotent table graded by positive integer weights: `[e_i, e_j]`
/// only lands on basis vectors of weight `w_i + w_j`. Not checked for Jacobi.
pub fn random_weight_graded(rng: &mut ChaCha8Rng) -> SuperAlgebra {
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=3);
    let weights: Vec<i64> = (0..n + m).map(|_| rng.gen_range(1..=4)).collect();
    let mut a = SuperAlgebra::abelian("graded", n, m);
    for (i, j, t) in graded_slots(&a) {
        if weights[t] == weights[i] + weights[j] && rng.gen_bool(0.6) {
            a = flip(&a, (i, j, t), &small_int(rng, 2));
        }
    }
    a.with_name("graded")
}

/// Every nonzero bracket of two weight spaces lies in the weight space of
/// the summed weight.
pub fn weight_law_holds(a: &SuperAlgebra, spaces: &[(Vec<Scalar>, Subspace)]) -> bool {
    let table = dense_table(a);
    for (wx, lx) in spaces {
        for (wy, ly) in spaces {
            let sum: Vec<Scalar> = wx.iter().zip(wy).map(|(p, q)| p + q).collect();
            let target = spaces.iter().find(|(w, _)| *w == sum).map(|s| &s.1);
            for u in lx.basis() {
                for v in ly.basis() {
                    let b = br(&table, u, v);
                    if b.iter().all(|c| *c == int(0)) {
                        continue;
                    }
                    if !target.is_some_and(|t| t.contains(&b)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
