//! Exact dense linear algebra over the rationals.
//!
//! Every routine here is exact: scalars are arbitrary-precision fractions and
//! no operation rounds. Eigenvalue-dependent routines only succeed when the
//! spectrum is rational and report [`LinalgError::IrrationalSpectrum`]
//! otherwise.

mod eigen;
mod jordan;
mod mat;
mod nilspace;
mod poly;
mod rref;
mod subspace;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use eigen::{eigenspaces, is_diagonalizable, rational_spectrum, simultaneous_eigenbasis};
pub use jordan::{jordan_chevalley, JordanChevalley};
pub use mat::{is_nonneg_integral, Mat};
pub use nilspace::{
    all_nilpotent_space, all_nilpotent_space_with, common_flag_certifies, is_nilpotent_mat,
    trace_grid_vanishes,
};
pub use poly::Poly;
pub use rref::{determinant, rank, rref, solve, Rref};
pub use subspace::Subspace;

/// Exact rational scalar.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("spectrum is not rational; an algebraic extension would be required")]
    IrrationalSpectrum,
    #[error("matrices do not commute")]
    NotCommuting,
    #[error("matrix is not diagonalizable")]
    NotDiagonalizable,
    #[error("matrix is singular")]
    Singular,
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `p/q` or `p` when the denominator is one.
pub fn fmt_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Scalar::new(n, d))
            }
        }
        None => t.parse::<BigInt>().ok().map(Scalar::from_integer),
    }
}

/// Rescales a vector to integer entries with gcd 1. The zero vector is returned unchanged.
pub fn primitive_vector(v: &[Scalar]) -> Vec<Scalar> {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = nums
        .iter()
        .filter(|n| !n.is_zero())
        .fold(BigInt::zero(), |acc, n| acc.gcd(n));
    nums.into_iter()
        .map(|n| Scalar::from_integer(n / &g))
        .collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn axpy(acc: &mut [Scalar], coeff: &Scalar, v: &[Scalar]) {
    if coeff.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += coeff * x;
        }
    }
}

/// Formats a vector as `(a, b, c)`.
pub fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_scalar).collect();
    format!("({})", parts.join(", "))
}
