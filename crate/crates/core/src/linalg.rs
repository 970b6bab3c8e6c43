//! Small dense complex matrices, a cyclic Jacobi eigensolver for Hermitian
//! matrices, and inertia classification.
//!
//! Sizes here never exceed a few dozen rows, so everything is row-major
//! `Vec<Complex64>` and straightforward loops.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use num_traits::{Float, Zero};

pub type C64 = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { C64::zero() })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Columns `idx[0], idx[1], …` in that order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        Float::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Eigenvalues in ascending order; column `k` of `vectors` belongs to `values[k]`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigendecomposition of the Hermitian part `(A + A*)/2`.
pub fn eigh(a: &Matrix) -> HermitianEigen {
    assert!(a.is_square(), "eigh needs a square matrix");
    let n = a.rows;
    let mut m = Matrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    for i in 0..n {
        m[(i, i)] = C64::new(m[(i, i)].re, 0.0);
    }
    let mut v = Matrix::identity(n);
    let total = m.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        let off_sq: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum();
        let off = Float::sqrt(off_sq);
        if off <= 1e-15 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    HermitianEigen {
        values: order.iter().map(|&i| m[(i, i)].re).collect(),
        vectors: v.select_columns(&order),
    }
}

/// Annihilates `m[p][q]` with a phase-adjusted plane rotation `J`, updating
/// `m ← J* m J` and `v ← v J`.
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let (app, aqq) = (m[(p, p)].re, m[(q, q)].re);
    if g * 1e18 < app.abs().min(aqq.abs()) {
        m[(p, q)] = C64::zero();
        m[(q, p)] = C64::zero();
        return;
    }
    let phase = (apq / g).conj();
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + Float::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / Float::sqrt(t * t + 1.0);
    let s = t * c;
    let (jpp, jpq) = (C64::new(c, 0.0), C64::new(s, 0.0));
    let (jqp, jqq) = (phase * -s, phase * c);

    let n = m.rows;
    for k in 0..n {
        let (xp, xq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = xp * jpp + xq * jqp;
        m[(k, q)] = xp * jpq + xq * jqq;
    }
    for k in 0..n {
        let (xp, xq) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = jpp.conj() * xp + jqp.conj() * xq;
        m[(q, k)] = jpq.conj() * xp + jqq.conj() * xq;
    }
    m[(p, q)] = C64::zero();
    m[(q, p)] = C64::zero();
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
    for k in 0..v.rows {
        let (xp, xq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = xp * jpp + xq * jqp;
        v[(k, q)] = xp * jpq + xq * jqq;
    }
}

/// Singular values in descending order, read off the Hermitian dilation
/// `[[0, A], [A*, 0]]` whose spectrum is `±σ_i` padded with zeros.
pub fn singular_values(a: &Matrix) -> Vec<f64> {
    let (r, c) = (a.rows, a.cols);
    let dilation = Matrix::from_fn(r + c, r + c, |i, j| match (i < r, j < r) {
        (true, false) => a[(i, j - r)],
        (false, true) => a[(j, i - r)].conj(),
        _ => C64::zero(),
    });
    let mut values = eigh(&dilation).values;
    values.reverse();
    values.truncate(r.min(c));
    values.iter().map(|&x| x.max(0.0)).collect()
}

/// Scale-invariant zero band: `|x| ≤ eps · max(1, scale)` counts as zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-8;

    pub fn new(eps: f64) -> Self {
        assert!(eps > 0.0 && eps.is_finite(), "tolerance must be positive");
        Self { eps }
    }

    #[inline]
    pub fn band(&self, scale: f64) -> f64 {
        self.eps * scale.max(1.0)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps: Self::DEFAULT_EPS,
        }
    }
}

/// Counts of negative, zero and positive eigenvalues.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Inertia {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

impl Inertia {
    pub fn classify(values: &[f64], band: f64) -> Self {
        let mut out = Inertia::default();
        for &x in values {
            if x < -band {
                out.negative += 1;
            } else if x > band {
                out.positive += 1;
            } else {
                out.zero += 1;
            }
        }
        out
    }
}

/// Inertia of a Hermitian matrix with the band scaled by its `∞`-norm.
pub fn inertia(a: &Matrix, tol: Tolerance) -> (Inertia, HermitianEigen) {
    let eig = eigh(a);
    let band = tol.band(a.inf_norm());
    (Inertia::classify(&eig.values, band), eig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn hermitian_from(entries: &[(f64, f64)], n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                let (re, im) = entries[k];
                k += 1;
                if i == j {
                    m[(i, i)] = c(re, 0.0);
                } else {
                    m[(i, j)] = c(re, im);
                    m[(j, i)] = c(re, -im);
                }
            }
        }
        m
    }

    #[test]
    fn two_by_two_swap() {
        let m = Matrix::from_fn(2, 2, |i, j| if i == j { c(0.0, 0.0) } else { c(1.0, 0.0) });
        let e = eigh(&m);
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_phase_pivot() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let m = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => c(0.0, 1.0),
            (1, 0) => c(0.0, -1.0),
            _ => c(2.0, 0.0),
        });
        let e = eigh(&m);
        assert!((e.values[0] - 1.0).abs() < 1e-14 && (e.values[1] - 3.0).abs() < 1e-14);
        let back = &(&e.vectors * &Matrix::diagonal(&[c(1.0, 0.0), c(3.0, 0.0)])) * &e.vectors.adjoint();
        assert!(back.max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn singular_values_of_rank_one() {
        let a = Matrix::from_fn(3, 2, |i, j| c((i + 1) as f64, 0.0) * c((j + 1) as f64, 1.0));
        let s = singular_values(&a);
        assert_eq!(s.len(), 2);
        assert!(s[1] < 1e-12);
        // σ_1 = |x| |y| with x = (1,2,3), y = (1+i, 2+i)
        let expected = (14.0f64).sqrt() * (2.0f64 + 5.0).sqrt();
        assert!((s[0] - expected).abs() < 1e-12);
    }

    #[test]
    fn full_size_backward_error() {
        let n = crate::MAX_ELEMENTS;
        // deterministic entries in [-1, 1], reflected to a Hermitian matrix
        let entry = |i: usize, j: usize, k: usize| (((i * 131 + j * 71 + k * 29) % 97) as f64) / 48.5 - 1.0;
        let a = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            core::cmp::Ordering::Less => c(entry(i, j, 0), entry(i, j, 1)),
            core::cmp::Ordering::Greater => c(entry(j, i, 0), -entry(j, i, 1)),
            core::cmp::Ordering::Equal => c(entry(i, i, 0), 0.0),
        });
        let e = eigh(&a);
        let lambda: Vec<C64> = e.values.iter().map(|&x| c(x, 0.0)).collect();
        let residual = &(&a * &e.vectors) - &(&e.vectors * &Matrix::diagonal(&lambda));
        assert!(residual.frobenius_norm() <= 1e-10 * a.frobenius_norm());
        let gram = &e.vectors.adjoint() * &e.vectors;
        assert!(gram.max_abs_diff(&Matrix::identity(n)) < 1e-10);
    }

    #[test]
    fn inertia_counts() {
        let m = Matrix::diagonal(&[c(-2.0, 0.0), c(0.0, 0.0), c(1e-12, 0.0), c(5.0, 0.0)]);
        let (inr, _) = inertia(&m, Tolerance::default());
        assert_eq!(
            inr,
            Inertia {
                negative: 1,
                zero: 2,
                positive: 1
            }
        );
    }

    proptest! {
        #[test]
        fn eigh_reconstructs(n in 1usize..7, seed in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 28)) {
            let a = hermitian_from(&seed, n);
            let e = eigh(&a);
            let lambda: Vec<C64> = e.values.iter().map(|&x| c(x, 0.0)).collect();
            let back = &(&e.vectors * &Matrix::diagonal(&lambda)) * &e.vectors.adjoint();
            prop_assert!(back.max_abs_diff(&a) < 1e-11);
            let gram = &e.vectors.adjoint() * &e.vectors;
            prop_assert!(gram.max_abs_diff(&Matrix::identity(n)) < 1e-12);
            prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn singular_values_match_gram_eigenvalues(seed in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 12)) {
            let a = Matrix::from_fn(3, 4, |i, j| c(seed[i * 4 + j].0, seed[i * 4 + j].1));
            let s = singular_values(&a);
            let mut g = eigh(&(&a * &a.adjoint())).values;
            g.reverse();
            for (sv, ev) in s.iter().zip(&g) {
                prop_assert!((sv * sv - ev.max(0.0)).abs() < 1e-10);
            }
        }
    }
}
