use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{rref, LinalgError, Mat, Scalar, Subspace};
use crate::exec::Execution;

/// `m^d = 0` for a `d × d` matrix.
pub fn is_nilpotent_mat(m: &Mat) -> Result<bool, LinalgError> {
    let d = m.ensure_square()?;
    let mut p = Mat::identity(d);
    for _ in 0..d {
        p = &p * m;
        if p.is_zero() {
            return Ok(true);
        }
    }
    Ok(p.is_zero())
}

/// Builds the flag `0 = W₀ ⊂ W₁ ⊂ …` with `W_{j+1} = {v : Dᵢ v ∈ W_j ∀ i}`.
/// Reaching the whole space proves every word of length `d` in the `Dᵢ`
/// vanishes, hence every linear combination is nilpotent.
pub fn common_flag_certifies(basis: &[Mat]) -> bool {
    let Some(first) = basis.first() else {
        return true;
    };
    let d = first.rows();
    let mut w = Subspace::zero(d);
    loop {
        if w.dim() == d {
            return true;
        }
        // Rows of `ann` cut out W: ann·v = 0 ⟺ v ∈ W.
        let ann: Vec<Vec<Scalar>> = if w.is_zero() {
            (0..d).map(|i| super::unit_vec(d, i)).collect()
        } else {
            rref(&Mat::from_rows(w.basis().to_vec())).kernel_basis
        };
        let mut rows = Vec::new();
        for m in basis {
            for a in &ann {
                // (a·M) as a row vector
                let row: Vec<Scalar> = (0..d)
                    .map(|j| (0..d).fold(Scalar::zero(), |acc, i| acc + &a[i] * &m[(i, j)]))
                    .collect();
                rows.push(row);
            }
        }
        let next = rref(&Mat::from_rows(rows)).nullspace();
        if next.dim() == w.dim() {
            return false;
        }
        w = next;
    }
}

/// Integer multiple of `m` (positive scaling leaves nilpotency untouched).
fn integer_matrix(m: &Mat) -> Vec<BigInt> {
    let lcm = m
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    m.entries()
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

fn int_mul(a: &[BigInt], b: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); d * d];
    for i in 0..d {
        for k in 0..d {
            let x = &a[i * d + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..d {
                let y = &b[k * d + j];
                if !y.is_zero() {
                    out[i * d + j] += x * y;
                }
            }
        }
    }
    out
}

/// `tr(m^k)` for an integer matrix.
fn trace_power(m: &[BigInt], d: usize, k: usize) -> BigInt {
    let half = k / 2;
    let mut a: Vec<BigInt> = (0..d * d)
        .map(|i| if i % (d + 1) == 0 { BigInt::one() } else { BigInt::zero() })
        .collect();
    for _ in 0..half {
        a = int_mul(&a, m, d);
    }
    let b = if k.is_multiple_of(2) { a.clone() } else { int_mul(&a, m, d) };
    let mut t = BigInt::zero();
    for i in 0..d {
        for j in 0..d {
            t += &a[i * d + j] * &b[j * d + i];
        }
    }
    t
}

/// All weak compositions of `total` into `parts` nonnegative parts.
fn compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    fn rec(rem: usize, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(rem as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in (0..=rem).rev() {
            cur.push(v as u32);
            rec(rem - v, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Decides whether every element of `span(basis)` is nilpotent.
///
/// Strategy, in order: a common strictly-triangular flag (complete for Lie
/// and Lie-superalgebras of nilpotent maps), a single-element nilpotency
/// screen, and finally the trace identities `tr((Σ tᵢDᵢ)^k) ≡ 0`, `1 ≤ k ≤ d`.
/// Each trace is a homogeneous form of degree `k`, so it vanishes identically
/// iff it vanishes on the simplex lattice `{t ∈ ℕ^b : Σ t = k}`, which is
/// unisolvent for such forms. The lattice sweep is deterministic.
pub fn all_nilpotent_space(basis: &[Mat]) -> Result<bool, LinalgError> {
    all_nilpotent_space_with(basis, Execution::default())
}

pub fn all_nilpotent_space_with(basis: &[Mat], exec: Execution) -> Result<bool, LinalgError> {
    let Some(first) = basis.first() else {
        return Ok(true);
    };
    let d = first.ensure_square()?;
    for m in basis {
        let k = m.ensure_square()?;
        if k != d {
            return Err(LinalgError::DimensionMismatch {
                expected: d,
                found: k,
            });
        }
    }
    if common_flag_certifies(basis) {
        return Ok(true);
    }
    for m in basis {
        if !is_nilpotent_mat(m)? {
            return Ok(false);
        }
    }
    Ok(trace_grid_vanishes(basis, d, exec))
}

/// The lattice sweep on its own, exposed so callers (and benchmarks) can run
/// the trace identities without the flag shortcut.
pub fn trace_grid_vanishes(basis: &[Mat], d: usize, exec: Execution) -> bool {
    let ints: Vec<Vec<BigInt>> = basis.iter().map(integer_matrix).collect();
    let b = ints.len();
    for k in 1..=d {
        let points = compositions(k, b);
        let nonzero = exec.any(&points, |alpha| {
            let mut m = vec![BigInt::zero(); d * d];
            for (coef, di) in alpha.iter().zip(&ints) {
                if *coef == 0 {
                    continue;
                }
                let c = BigInt::from(*coef);
                for (acc, x) in m.iter_mut().zip(di) {
                    if !x.is_zero() {
                        *acc += &c * x;
                    }
                }
            }
            !trace_power(&m, d, k).is_zero()
        });
        if nonzero {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(d: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(d, d);
        m[(i, j)] = Scalar::one();
        m
    }

    #[test]
    fn nilpotent_matrices() {
        let m = Mat::from_i64_rows(&[&[0, 1, 2], &[0, 0, 3], &[0, 0, 0]]);
        assert!(is_nilpotent_mat(&m).unwrap());
        assert!(!is_nilpotent_mat(&Mat::identity(2)).unwrap());
        assert!(is_nilpotent_mat(&Mat::zeros(2, 3)).is_err());
    }

    #[test]
    fn strictly_upper_span_is_nilpotent() {
        let basis = vec![e(3, 0, 1), e(3, 0, 2), e(3, 1, 2)];
        assert!(all_nilpotent_space(&basis).unwrap());
        assert!(trace_grid_vanishes(&basis, 3, Execution::Sequential));
    }

    #[test]
    fn transposed_pair_is_not() {
        let basis = vec![e(2, 0, 1), e(2, 1, 0)];
        assert!(!all_nilpotent_space(&basis).unwrap());
        assert!(!trace_grid_vanishes(&basis, 2, Execution::Sequential));
    }

    #[test]
    fn both_routes_agree_off_the_triangular_position() {
        let p = Mat::from_i64_rows(&[&[1, 2, 0], &[0, 1, 1], &[1, 0, 1]]);
        let pinv = p.inverse().unwrap();
        let basis: Vec<Mat> = [e(3, 0, 1), e(3, 1, 2), e(3, 0, 2)]
            .iter()
            .map(|m| &(&p * m) * &pinv)
            .collect();
        assert!(common_flag_certifies(&basis));
        assert!(trace_grid_vanishes(&basis, 3, Execution::Sequential));
        let mut bad = basis.clone();
        bad.push(&(&p * &e(3, 2, 0)) * &pinv);
        assert!(!common_flag_certifies(&bad));
        assert!(!trace_grid_vanishes(&bad, 3, Execution::Sequential));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(3, 1), vec![vec![3]]);
    }

    #[test]
    fn dimension_mismatch() {
        let basis = vec![Mat::zeros(2, 2), Mat::zeros(3, 3)];
        assert!(all_nilpotent_space(&basis).is_err());
    }
}
