use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LinalgError, Mat, Scalar, Subspace};

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Unique reduced row-echelon form, same shape as the input.
    pub reduced: Mat,
    pub rank: usize,
    /// Pivot column of each nonzero row of `reduced`.
    pub pivots: Vec<usize>,
    /// One kernel vector per free column, in increasing free-column order.
    /// Each has a 1 in its free column and zeros in the other free columns.
    pub kernel_basis: Vec<Vec<Scalar>>,
}

impl Rref {
    pub fn nullity(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn nullspace(&self) -> Subspace {
        Subspace::span(self.reduced.cols(), &self.kernel_basis)
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.reduced.cols())
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }
}

/// Clears the denominators of one row, returning the integer row and the multiplier used.
fn integer_row(row: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    (ints, lcm)
}

/// Fraction-free forward elimination. Returns the echelon grid, the pivot
/// columns, and the sign of the applied row permutation.
fn bareiss_echelon(grid: &mut [Vec<BigInt>], cols: usize) -> (Vec<usize>, bool) {
    let rows = grid.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut odd_swaps = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !grid[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            grid.swap(p, r);
            odd_swaps = !odd_swaps;
        }
        let (top, bottom) = grid.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let num = &pv * &row[j] - &lead * &pivot_row[j];
                debug_assert!(num.is_multiple_of(&prev), "Bareiss division not exact");
                row[j] = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    (pivots, odd_swaps)
}

/// Reduced row-echelon form, rank and nullspace of `m`.
pub fn rref(m: &Mat) -> Rref {
    let rows = m.rows();
    let cols = m.cols();
    let mut grid: Vec<Vec<BigInt>> = (0..rows).map(|i| integer_row(m.row(i)).0).collect();
    let (pivots, _) = bareiss_echelon(&mut grid, cols);
    let rank = pivots.len();

    let mut reduced = Mat::zeros(rows, cols);
    for (r, &pc) in pivots.iter().enumerate() {
        let lead = Scalar::from_integer(grid[r][pc].clone());
        for j in pc..cols {
            reduced[(r, j)] = Scalar::from_integer(grid[r][j].clone()) / &lead;
        }
    }
    for (r, &pc) in pivots.iter().enumerate().rev() {
        for above in 0..r {
            let f = reduced[(above, pc)].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..cols {
                let d = &f * &reduced[(r, j)];
                reduced[(above, j)] -= d;
            }
        }
    }

    let mut kernel_basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -reduced[(r, free)].clone();
        }
        kernel_basis.push(v);
    }

    Rref {
        reduced,
        rank,
        pivots,
        kernel_basis,
    }
}

pub fn rank(m: &Mat) -> usize {
    let mut grid: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| integer_row(m.row(i)).0).collect();
    bareiss_echelon(&mut grid, m.cols()).0.len()
}

/// Determinant by Bareiss elimination.
pub fn determinant(m: &Mat) -> Result<Scalar, LinalgError> {
    let n = m.ensure_square()?;
    if n == 0 {
        return Ok(Scalar::one());
    }
    let mut scale = BigInt::one();
    let mut grid = Vec::with_capacity(n);
    for i in 0..n {
        let (row, l) = integer_row(m.row(i));
        scale *= l;
        grid.push(row);
    }
    let (pivots, odd) = bareiss_echelon(&mut grid, n);
    if pivots.len() < n {
        return Ok(Scalar::zero());
    }
    let mut det = Scalar::new(grid[n - 1][n - 1].clone(), scale);
    if odd {
        det = -det;
    }
    Ok(det)
}

/// Some solution of `a·x = b`, or `None` if the system is inconsistent.
pub fn solve(a: &Mat, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let cols = a.cols();
    let mut aug = Mat::zeros(a.rows(), cols + 1);
    for i in 0..a.rows() {
        for j in 0..cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, cols)] = b[i].clone();
    }
    let red = rref(&aug);
    if red.pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (r, &pc) in red.pivots.iter().enumerate() {
        x[pc] = red.reduced[(r, cols)].clone();
    }
    Some(x)
}
