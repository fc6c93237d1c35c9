use alloc::vec;
use alloc::vec::Vec;
use libm::fabs;

use crate::{Error, Result};

/// Pivots smaller than this in magnitude are treated as singular.
pub const PIVOT_TOL: f64 = 1e-300;

/// Square band matrix with `lower` sub- and `upper` super-diagonals.
///
/// Each row stores the window of columns `[i - lower, i + upper + lower]`;
/// the extra `lower` columns hold fill-in created by row interchanges
/// during pivoted elimination.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix {
    n: usize,
    lower: usize,
    upper: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, lower: usize, upper: usize) -> Self {
        let width = 2 * lower + upper + 1;
        BandedMatrix {
            n,
            lower,
            upper,
            width,
            data: vec![0.0; n * width],
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    fn in_window(&self, i: usize, j: usize) -> bool {
        j + self.lower >= i && j <= i + self.upper + self.lower
    }

    pub fn in_band(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && j + self.lower >= i && j <= i + self.upper
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.width + (j + self.lower - i)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i < self.n && j < self.n && self.in_window(i, j) {
            self.data[self.idx(i, j)]
        } else {
            0.0
        }
    }

    /// Panics when `(i, j)` lies outside the declared band.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(self.in_band(i, j), "entry ({i}, {j}) outside the band");
        let k = self.idx(i, j);
        self.data[k] = v;
    }

    /// Panics when `(i, j)` lies outside the declared band.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(self.in_band(i, j), "entry ({i}, {j}) outside the band");
        let k = self.idx(i, j);
        self.data[k] += v;
    }

    fn band_columns(&self, i: usize) -> core::ops::Range<usize> {
        i.saturating_sub(self.lower)..(i + self.upper + 1).min(self.n)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.band_columns(i).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// `(A + A^T) / 2`, stored with the symmetric band `max(lower, upper)`.
    pub fn symmetric_part(&self) -> BandedMatrix {
        let b = self.lower.max(self.upper);
        let mut s = BandedMatrix::zeros(self.n, b, b);
        for i in 0..self.n {
            for j in i.saturating_sub(b)..(i + b + 1).min(self.n) {
                s.set(i, j, 0.5 * (self.get(i, j) + self.get(j, i)));
            }
        }
        s
    }

    /// Diagonal pivots of Gaussian elimination without row interchanges.
    /// For a symmetric matrix all pivots are positive iff it is positive definite.
    pub fn elimination_pivots(&self) -> Vec<f64> {
        let mut a = self.clone();
        let mut pivots = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let piv = a.get(k, k);
            pivots.push(piv);
            let last = (k + self.lower).min(self.n - 1);
            let right = (k + self.upper).min(self.n - 1);
            for r in k + 1..=last {
                let m = a.get(r, k) / piv;
                if m != 0.0 {
                    for c in k..=right {
                        let v = a.get(r, c) - m * a.get(k, c);
                        let idx = a.idx(r, c);
                        a.data[idx] = v;
                    }
                }
            }
        }
        pivots
    }
}

/// A band matrix together with its right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedSystem {
    pub matrix: BandedMatrix,
    pub rhs: Vec<f64>,
}

impl BandedSystem {
    pub fn dimension(&self) -> usize {
        self.rhs.len()
    }

    /// `||A x - b||_inf / ||b||_inf` (unscaled when `b = 0`).
    pub fn relative_residual(&self, x: &[f64]) -> f64 {
        let ax = self.matrix.mul_vec(x);
        let r = ax
            .iter()
            .zip(&self.rhs)
            .map(|(a, b)| fabs(a - b))
            .fold(0.0, f64::max);
        let bn = self.rhs.iter().map(|b| fabs(*b)).fold(0.0, f64::max);
        if bn > 0.0 {
            r / bn
        } else {
            r
        }
    }
}

/// Solve by band LU with partial pivoting. The input is left untouched.
pub fn solve_banded(system: &BandedSystem) -> Result<Vec<f64>> {
    let n = system.matrix.n;
    if system.rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: system.rhs.len(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a = system.matrix.clone();
    let mut b = system.rhs.clone();
    let reach = a.lower + a.upper;

    for k in 0..n {
        let last = (k + a.lower).min(n - 1);
        let right = (k + reach).min(n - 1);
        let (piv_row, piv_abs) = (k..=last)
            .map(|r| (r, fabs(a.get(r, k))))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_abs.is_nan() || piv_abs < PIVOT_TOL {
            return Err(Error::SingularMatrix {
                row: k,
                pivot: piv_abs,
            });
        }
        if piv_row != k {
            for c in k..=right {
                let (ik, ip) = (a.idx(k, c), a.idx(piv_row, c));
                a.data.swap(ik, ip);
            }
            b.swap(k, piv_row);
        }
        let pivot = a.get(k, k);
        for r in k + 1..=last {
            let ir = a.idx(r, k);
            let m = a.data[ir] / pivot;
            if m == 0.0 {
                continue;
            }
            a.data[ir] = 0.0;
            for c in k + 1..=right {
                let (irc, ikc) = (a.idx(r, c), a.idx(k, c));
                a.data[irc] -= m * a.data[ikc];
            }
            b[r] -= m * b[k];
        }
    }

    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let right = (i + reach).min(n - 1);
        let s: f64 = (i + 1..=right).map(|c| a.get(i, c) * x[c]).sum();
        x[i] = (b[i] - s) / a.get(i, i);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tridiag(n: usize, sub: f64, diag: f64, sup: f64) -> BandedMatrix {
        let mut m = BandedMatrix::zeros(n, 1, 1);
        for i in 0..n {
            m.set(i, i, diag);
            if i > 0 {
                m.set(i, i - 1, sub);
            }
            if i + 1 < n {
                m.set(i, i + 1, sup);
            }
        }
        m
    }

    #[test]
    fn identity_returns_rhs() {
        let mut m = BandedMatrix::zeros(4, 1, 1);
        for i in 0..4 {
            m.set(i, i, 1.0);
        }
        let rhs = vec![1.0, -2.0, 3.5, 0.25];
        let x = solve_banded(&BandedSystem { matrix: m, rhs: rhs.clone() }).unwrap();
        assert_eq!(x, rhs);
    }

    #[test]
    fn three_by_three_laplacian() {
        let sys = BandedSystem {
            matrix: tridiag(3, -1.0, 2.0, -1.0),
            rhs: vec![1.0, 0.0, 0.0],
        };
        let x = solve_banded(&sys).unwrap();
        for (xi, e) in x.iter().zip([0.75, 0.5, 0.25]) {
            assert!((xi - e).abs() < 1e-15);
        }
    }

    #[test]
    fn pivoting_handles_zero_diagonal() {
        // [[0, 1], [1, 0]] needs a row swap
        let mut m = BandedMatrix::zeros(2, 1, 1);
        m.set(0, 1, 1.0);
        m.set(1, 0, 1.0);
        let x = solve_banded(&BandedSystem {
            matrix: m,
            rhs: vec![2.0, 3.0],
        })
        .unwrap();
        assert_eq!(x, [3.0, 2.0]);
    }

    #[test]
    fn singular_is_reported() {
        let m = BandedMatrix::zeros(3, 1, 1);
        let err = solve_banded(&BandedSystem {
            matrix: m,
            rhs: vec![1.0; 3],
        })
        .unwrap_err();
        assert!(matches!(err, Error::SingularMatrix { row: 0, .. }));
    }

    #[test]
    fn dimension_mismatch() {
        let m = tridiag(3, -1.0, 2.0, -1.0);
        assert!(solve_banded(&BandedSystem { matrix: m, rhs: vec![1.0; 2] }).is_err());
    }

    #[test]
    #[should_panic]
    fn out_of_band_write_panics() {
        let mut m = BandedMatrix::zeros(5, 1, 1);
        m.set(0, 3, 1.0);
    }

    #[test]
    fn spd_pivots_positive() {
        let p = tridiag(6, -1.0, 2.0, -1.0).elimination_pivots();
        assert!(p.iter().all(|&v| v > 0.0));
        let q = tridiag(3, 2.0, 1.0, 2.0).symmetric_part().elimination_pivots();
        assert!(q.iter().any(|&v| v <= 0.0));
    }
}
