//! Dense matrices over any [`Scalar`], sized for chart dimensions (≤ 10).

use std::ops::{Index, IndexMut};

use crate::fields::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..o.cols {
                    out[(i, j)] += a * o[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.cols {
                    acc += self[(i, j)] * v[j];
                }
                acc
            })
            .collect()
    }

    /// `vᵀ M`.
    pub fn vec_mul(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| {
                let mut acc = S::zero();
                for i in 0..self.rows {
                    acc += v[i] * self[(i, j)];
                }
                acc
            })
            .collect()
    }

    /// `uᵀ M w`.
    pub fn bilinear(&self, u: &[S], w: &[S]) -> S {
        let mw = self.mul_vec(w);
        u.iter().zip(&mw).fold(S::zero(), |acc, (&a, &b)| acc + a * b)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + o[(i, j)])
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - o[(i, j)])
    }

    pub fn scale(&self, k: S) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * k)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn to_f64(&self) -> Mat<f64> {
        self.map(|x| x.re())
    }

    /// Largest absolute entry of the real part.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.re().abs()))
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.data.iter().zip(&o.data).fold(0.0, |m, (a, b)| m.max((a.re() - b.re()).abs()))
    }

    /// Solve `M x = b` by Gaussian elimination with partial pivoting on the
    /// real part. Returns `None` when a pivot is below `1e-14` times the
    /// largest entry.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        assert_eq!(n, b.len());
        let mut a = self.clone();
        let mut x = b.to_vec();
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let piv = (col..n).max_by(|&r, &s| a[(r, col)].re().abs().total_cmp(&a[(s, col)].re().abs())).unwrap();
            if a[(piv, col)].re().abs() < 1e-14 * scale {
                return None;
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                }
                x.swap(piv, col);
            }
            let p = a[(col, col)];
            for r in col + 1..n {
                let f = a[(r, col)] / p;
                if f.re() == 0.0 && f == S::zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[(col, j)];
                    a[(r, j)] -= f * v;
                }
                let v = x[col];
                x[r] -= f * v;
            }
        }
        for col in (0..n).rev() {
            let mut acc = x[col];
            for j in col + 1..n {
                acc -= a[(col, j)] * x[j];
            }
            x[col] = acc / a[(col, col)];
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for j in 0..n {
            let mut e = vec![S::zero(); n];
            e[j] = S::one();
            let col = self.solve(&e)?;
            for i in 0..n {
                out[(i, j)] = col[i];
            }
        }
        Some(out)
    }

    /// Determinant by elimination with partial pivoting.
    pub fn det(&self) -> S {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let piv = (col..n).max_by(|&r, &s| a[(r, col)].re().abs().total_cmp(&a[(s, col)].re().abs())).unwrap();
            if a[(piv, col)].re() == 0.0 {
                return S::zero();
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[(col, col)];
            det *= p;
            for r in col + 1..n {
                let f = a[(r, col)] / p;
                for j in col..n {
                    let v = a[(col, j)];
                    a[(r, j)] -= f * v;
                }
            }
        }
        det
    }
}

impl Mat<f64> {
    /// Cholesky factorisation succeeds (matrix symmetric positive definite).
    pub fn is_spd(&self) -> bool {
        let n = self.rows;
        if n != self.cols {
            return false;
        }
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                if (self[(i, j)] - self[(j, i)]).abs() > 1e-12 * (1.0 + self[(i, j)].abs()) {
                    return false;
                }
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if !(s > 0.0) {
                        return false;
                    }
                    l[i * n + i] = s.sqrt();
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        true
    }

    /// Symmetric eigenvalues by cyclic Jacobi rotations (small matrices only).
    pub fn sym_eigenvalues(&self) -> Vec<f64> {
        let n = self.rows;
        let mut a = self.clone();
        for _sweep in 0..100 {
            let mut off = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    off += a[(i, j)] * a[(i, j)];
                }
            }
            if off < 1e-30 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[(p, q)].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Symbolic inverse of a square matrix of fields.
///
/// Uses the adjugate for n ≤ 3 and Gauss–Jordan elimination without pivoting
/// otherwise (adequate for positive-definite input, whose leading minors never
/// vanish). Zero entries are folded away, so diagonal input stays diagonal.
pub fn invert_fields(m: &[Vec<Field>]) -> Vec<Vec<Field>> {
    let n = m.len();
    let offdiag_zero = (0..n).all(|i| (0..n).all(|j| i == j || m[i][j].is_zero()));
    if offdiag_zero {
        return (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 / &m[i][i] } else { Field::zero() }).collect()).collect();
    }
    match n {
        1 => vec![vec![1.0 / &m[0][0]]],
        2 => {
            let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
            vec![vec![&m[1][1] / &det, -(&m[0][1] / &det)], vec![-(&m[1][0] / &det), &m[0][0] / &det]]
        }
        3 => {
            let c = |i: usize, j: usize| {
                let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
                let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
                &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
            };
            let cof: Vec<Vec<Field>> = (0..3).map(|i| (0..3).map(|j| c(i, j)).collect()).collect();
            let det = &m[0][0] * &cof[0][0] + &m[0][1] * &cof[0][1] + &m[0][2] * &cof[0][2];
            let inv_det = 1.0 / &det;
            (0..3).map(|i| (0..3).map(|j| &cof[j][i] * &inv_det).collect()).collect()
        }
        _ => {
            let mut a: Vec<Vec<Field>> = m.to_vec();
            let mut inv: Vec<Vec<Field>> =
                (0..n).map(|i| (0..n).map(|j| Field::constant(if i == j { 1.0 } else { 0.0 })).collect()).collect();
            for col in 0..n {
                let p = 1.0 / &a[col][col];
                for j in 0..n {
                    a[col][j] = &a[col][j] * &p;
                    inv[col][j] = &inv[col][j] * &p;
                }
                for r in 0..n {
                    if r == col || a[r][col].is_zero() {
                        continue;
                    }
                    let f = a[r][col].clone();
                    for j in 0..n {
                        a[r][j] = &a[r][j] - &f * &a[col][j];
                        inv[r][j] = &inv[r][j] - &f * &inv[col][j];
                    }
                }
            }
            inv
        }
    }
}
