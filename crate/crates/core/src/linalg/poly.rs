use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{fmt_scalar, LinalgError, Mat, Scalar};

/// Univariate polynomial over the rationals, coefficients stored low to high.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `λ - r`
    pub fn linear(r: &Scalar) -> Self {
        Poly::new(vec![-r.clone(), Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Poly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Scalar::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division: `self = q·d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Scalar::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc = r0.leading();
        let inv = Scalar::one() / lc;
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Square-free part `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let n = m.rows();
        let mut acc = Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    /// Monic characteristic polynomial `det(λI - m)` by Faddeev–LeVerrier.
    pub fn charpoly(m: &Mat) -> Result<Poly, LinalgError> {
        let n = m.ensure_square()?;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut mk = Mat::identity(n);
        for k in 1..=n {
            let am = m * &mk;
            let c = -am.trace() / Scalar::from_integer(BigInt::from(k));
            coeffs[n - k] = c.clone();
            mk = am;
            for i in 0..n {
                mk[(i, i)] += &c;
            }
        }
        Ok(Poly::new(coeffs))
    }

    /// Distinct rational roots with their multiplicities, in increasing order.
    pub fn rational_roots(&self) -> Vec<(Scalar, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut rest = self.monic();
        let mut mult0 = 0;
        while rest.coeffs.first().is_some_and(Zero::is_zero) {
            rest = Poly::new(rest.coeffs[1..].to_vec());
            mult0 += 1;
        }
        if mult0 > 0 {
            roots.push((Scalar::zero(), mult0));
        }
        if rest.degree().unwrap_or(0) > 0 {
            let ints = integer_coeffs(&rest);
            let a0 = ints[0].abs();
            let an = ints.last().expect("nonzero").abs();
            for p in divisors(&a0) {
                for q in divisors(&an) {
                    for sign in [1i64, -1] {
                        let cand = Scalar::new(&p * BigInt::from(sign), q.clone());
                        let mut mult = 0;
                        while rest.degree().unwrap_or(0) > 0 && rest.eval(&cand).is_zero() {
                            rest = rest.div_rem(&Poly::linear(&cand)).0;
                            mult += 1;
                        }
                        if mult > 0 {
                            roots.push((cand, mult));
                        }
                    }
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        roots
    }

    /// Roots with multiplicity if the polynomial splits over Q.
    pub fn split_over_q(&self) -> Result<Vec<(Scalar, usize)>, LinalgError> {
        let roots = self.rational_roots();
        let total: usize = roots.iter().map(|r| r.1).sum();
        if Some(total) == self.degree() || (self.degree() == Some(0) && total == 0) {
            Ok(roots)
        } else {
            Err(LinalgError::IrrationalSpectrum)
        }
    }
}

/// Coefficients scaled to coprime integers.
fn integer_coeffs(p: &Poly) -> Vec<BigInt> {
    super::primitive_vector(&p.coeffs)
        .into_iter()
        .map(|c| c.to_integer())
        .collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    if let Some(v) = n.to_u128() {
        let mut d: u128 = 1;
        while d * d <= v {
            if v % d == 0 {
                small.push(BigInt::from(d));
                if d * d != v {
                    large.push(BigInt::from(v / d));
                }
            }
            d += 1;
        }
    } else {
        let mut d = BigInt::one();
        while &d * &d <= *n {
            if n.is_multiple_of(&d) {
                small.push(d.clone());
                if &d * &d != *n {
                    large.push(n / &d);
                }
            }
            d += 1;
        }
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{}", fmt_scalar(&abs))?;
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ints, ratio};

    fn p(c: &[i64]) -> Poly {
        Poly::new(ints(c))
    }

    #[test]
    fn charpoly_of_diagonal() {
        let cp = Poly::charpoly(&Mat::diag_i64(&[1, 2])).unwrap();
        assert_eq!(cp, p(&[2, -3, 1]));
        assert_eq!(cp.to_string(), "λ^2 - 3λ + 2");
    }

    #[test]
    fn charpoly_of_strictly_upper() {
        let m = Mat::from_i64_rows(&[&[0, 1, 5], &[0, 0, 2], &[0, 0, 0]]);
        assert_eq!(Poly::charpoly(&m).unwrap(), p(&[0, 0, 0, 1]));
    }

    #[test]
    fn charpoly_rejects_rectangular() {
        assert!(Poly::charpoly(&Mat::zeros(2, 3)).is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // λ²-1
        let b = p(&[1, 1]); // λ+1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
        let (g, s, t) = p(&[0, 1]).ext_gcd(&p(&[1, 1]));
        assert_eq!(g, Poly::one());
        assert_eq!(s.mul(&p(&[0, 1])).add(&t.mul(&p(&[1, 1]))), Poly::one());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (λ-1/2)^2 (λ+3) λ
        let f = Poly::linear(&ratio(1, 2))
            .pow(2)
            .mul(&Poly::linear(&int(-3)))
            .mul(&Poly::linear(&int(0)));
        let roots = f.rational_roots();
        assert_eq!(roots, vec![(int(-3), 1), (int(0), 1), (ratio(1, 2), 2)]);
        assert!(f.split_over_q().is_ok());
        assert_eq!(
            p(&[-2, 0, 1]).split_over_q(),
            Err(LinalgError::IrrationalSpectrum)
        );
    }

    #[test]
    fn squarefree_part() {
        let f = p(&[1, 1]).pow(3).mul(&p(&[-2, 1]));
        assert_eq!(f.squarefree(), p(&[1, 1]).mul(&p(&[-2, 1])));
    }
}
