//! Finite-rank realizations of the reproducing kernel Hilbert space of `φ`.
//!
//! The kernel is `K(s, t) = φ(t* + s)`. Eigendecomposing the kernel matrix
//! gives an orthonormal basis of the RKHS in which each section `K_s` is a
//! coordinate column `c_s` with `⟨c_s, c_t⟩ = c_t* c_s = K(t, s)`. The shift
//! `K_s ↦ K_{s+u}` then becomes an `r × r` matrix, and every operator
//! question is a small dense matrix question.
//!
//! [`dual_realization`] computes the same operator in `L²(μ)` as a
//! multiplication operator, independently of the Gram route.

use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::characters::{Character, UnitValue};
use crate::error::{Error, Result};
use crate::linalg::{eigh, inertia, singular_values, Inertia, Matrix, Tolerance};
use crate::pdfun::{check_hermitian, gram_matrix, DualMeasure, PDTable};
use crate::semigroup::{ElementId, StarSemigroup};

/// Entrywise tolerance for `M = M*` and `M² = I`.
pub const OPERATOR_TOL: f64 = 1e-7;
/// The shift residual must stay below `RESIDUAL_FACTOR · max(1, ‖C‖_F)`.
pub const RESIDUAL_FACTOR: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct GramRealization {
    /// `G[t][s] = φ(t* + s)`.
    pub gram: Matrix,
    /// Eigenvalues of the kernel matrix, ascending.
    pub eigenvalues: Vec<f64>,
    pub rank: usize,
    /// `r × n`; column `s` represents `K_s`.
    pub coords: Matrix,
    /// `n × r` right inverse of `coords` on its row space.
    pinv: Matrix,
    pub tol: Tolerance,
}

impl GramRealization {
    pub fn dim(&self) -> usize {
        self.rank
    }

    /// `⟨c_s, c_t⟩ = c_t* c_s`, which reproduces `K(t, s) = φ(s* + t)`.
    pub fn inner(&self, s: ElementId, t: ElementId) -> Complex64 {
        (0..self.rank)
            .map(|i| self.coords[(i, s.0)] * self.coords[(i, t.0)].conj())
            .sum()
    }
}

/// Factors the kernel of a positive definite `φ`.
pub fn build_gram(s: &StarSemigroup, phi: &PDTable, tol: Tolerance) -> Result<GramRealization> {
    check_hermitian(s, phi, tol)?;
    let gram = gram_matrix(s, phi);
    // kernel matrix K[s][t] = φ(t* + s) is the transpose of G
    let (inr, eig) = inertia(&gram.transpose(), tol);
    if inr.negative > 0 {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: eig.values[0],
        });
    }
    let n = s.len();
    let rank = inr.positive;
    let keep: Vec<usize> = (n - rank..n).rev().collect();
    let w = eig.vectors.select_columns(&keep);
    let roots: Vec<f64> = keep.iter().map(|&k| Float::sqrt(eig.values[k])).collect();
    // C = Λ^{1/2} W*, C⁺ = W Λ^{-1/2}
    let coords = Matrix::from_fn(rank, n, |i, j| w[(j, i)].conj() * roots[i]);
    let pinv = Matrix::from_fn(n, rank, |i, j| w[(i, j)] / roots[j]);
    Ok(GramRealization {
        gram,
        eigenvalues: eig.values,
        rank,
        coords,
        pinv,
        tol,
    })
}

/// The shift `K_s ↦ K_{s+u}` in orthonormal coordinates.
#[derive(Clone, Debug)]
pub struct ShiftOperator {
    pub u: ElementId,
    pub matrix: Matrix,
    /// `‖M C − C P_u‖_F`; zero when the shift is well defined on the span.
    pub residual: f64,
}

/// Solves `M C = C P_u` through the pseudo-inverse of `C` and certifies the
/// solution by its residual.
pub fn shift_operator(s: &StarSemigroup, real: &GramRealization, u: ElementId) -> Result<ShiftOperator> {
    let shifted = Matrix::from_fn(real.rank, s.len(), |i, x| real.coords[(i, s.add(ElementId(x), u).0)]);
    let matrix = &shifted * &real.pinv;
    let residual = (&(&matrix * &real.coords) - &shifted).frobenius_norm();
    let tolerance = RESIDUAL_FACTOR * real.coords.frobenius_norm().max(1.0);
    if residual > tolerance {
        return Err(Error::IllDefinedShift {
            residual,
            tolerance,
        });
    }
    Ok(ShiftOperator { u, matrix, residual })
}

/// `dim ker(M − λI)`, counting singular values inside the tolerance band.
pub fn kernel_dimension(m: &Matrix, lambda: f64, tol: Tolerance) -> usize {
    let shifted = Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        if i == j {
            m[(i, j)] - lambda
        } else {
            m[(i, j)]
        }
    });
    let band = tol.band(shifted.inf_norm());
    singular_values(&shifted).iter().filter(|&&x| x <= band).count()
}

fn operator_band(m: &Matrix) -> f64 {
    OPERATOR_TOL * m.max_abs().max(1.0)
}

/// `M = M*` entrywise within [`OPERATOR_TOL`].
pub fn selfadjoint_check(m: &Matrix) -> bool {
    m.max_abs_diff(&m.adjoint()) <= operator_band(m)
}

/// `M² = I` entrywise within [`OPERATOR_TOL`].
pub fn involution_check(m: &Matrix) -> bool {
    (m * m).max_abs_diff(&Matrix::identity(m.rows())) <= operator_band(m)
}

/// Number of negative eigenvalues of `B[i][j] = φ(s_i + s_j* + u)` over the
/// whole carrier.
pub fn negative_squares(s: &StarSemigroup, phi: &PDTable, u: ElementId, tol: Tolerance) -> Result<usize> {
    let psi = phi.translate(s, u);
    check_hermitian(s, &psi, tol)?;
    let b = Matrix::from_fn(s.len(), s.len(), |i, j| {
        psi.at(s.add(ElementId(i), s.star(ElementId(j))))
    });
    Ok(negative_inertia(&b, tol).negative)
}

fn negative_inertia(b: &Matrix, tol: Tolerance) -> Inertia {
    inertia(b, tol).0
}

/// The shift as multiplication by `(σ_j(u))_j` on `P^μ ⊆ L²(μ)`.
#[derive(Clone, Debug)]
pub struct DualRealization {
    pub support: Vec<usize>,
    pub weights: Vec<f64>,
    pub multipliers: Vec<UnitValue>,
    /// `k × d` orthonormal basis of `P^μ` in `√w`-weighted coordinates.
    pub basis: Matrix,
    /// Multiplication operator compressed to `P^μ`.
    pub compressed: Matrix,
    /// `‖(I − QQ*) D Q‖_F`; zero when `P^μ` is invariant.
    pub invariance_residual: f64,
    pub kernel_minus: usize,
    pub kernel_plus: usize,
}

impl DualRealization {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

pub fn dual_realization(
    s: &StarSemigroup,
    chars: &[Character],
    mu: &DualMeasure,
    u: ElementId,
    tol: Tolerance,
) -> DualRealization {
    let support: Vec<usize> = mu.support().collect();
    let weights: Vec<f64> = mu.atoms().iter().map(|a| a.weight).collect();
    let k = support.len();
    // columns are the images ŝ restricted to the support, scaled by √w
    let a = Matrix::from_fn(k, s.len(), |j, x| {
        chars[support[j]].value(ElementId(x)).to_complex() * Float::sqrt(weights[j])
    });
    let span = &a * &a.adjoint();
    let eig = eigh(&span);
    let band = tol.band(span.inf_norm());
    let keep: Vec<usize> = (0..k).filter(|&i| eig.values[i] > band).rev().collect();
    let basis = eig.vectors.select_columns(&keep);

    let multipliers: Vec<UnitValue> = support.iter().map(|&c| chars[c].value(u)).collect();
    let d = Matrix::diagonal(&multipliers.iter().map(|v| v.to_complex()).collect::<Vec<_>>());
    let dq = &d * &basis;
    let compressed = &basis.adjoint() * &dq;
    let invariance_residual = (&dq - &(&basis * &compressed)).frobenius_norm();
    let kernel_minus = kernel_dimension(&compressed, -1.0, tol);
    let kernel_plus = kernel_dimension(&compressed, 1.0, tol);
    DualRealization {
        support,
        weights,
        multipliers,
        basis,
        compressed,
        invariance_residual,
        kernel_minus,
        kernel_plus,
    }
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_spectrum(m: &Matrix) -> Vec<f64> {
    eigh(m).values
}

/// `M_{u*}` built from `u*` is the adjoint of `M_u` on the span:
/// `⟨M_u c_s, c_t⟩ = ⟨c_s, M_{u*} c_t⟩` for all `s, t`. Returns the largest defect.
pub fn adjoint_defect(s: &StarSemigroup, real: &GramRealization, u: ElementId) -> Result<f64> {
    let mu = shift_operator(s, real, u)?;
    let mus = shift_operator(s, real, s.star(u))?;
    let col = |x: usize| real.coords.column(x);
    let apply = |m: &Matrix, v: &[Complex64]| -> Vec<Complex64> {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m[(i, j)] * v[j]).sum())
            .collect()
    };
    let inner = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
    };
    let mut worst = 0.0f64;
    for x in 0..s.len() {
        for y in 0..s.len() {
            let lhs = inner(&apply(&mu.matrix, &col(x)), &col(y));
            let rhs = inner(&col(x), &apply(&mus.matrix, &col(y)));
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;
    use crate::pdfun::{moment_function, random_measure};
    use crate::semigroup::Involution;

    fn re(v: &[f64]) -> PDTable {
        PDTable::raw(v.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    fn z2() -> StarSemigroup {
        StarSemigroup::cyclic(2, Involution::Identity).unwrap()
    }

    #[test]
    fn rank_one_on_z2() {
        let s = z2();
        let tol = Tolerance::default();
        let real = build_gram(&s, &re(&[1.0, -1.0]), tol).unwrap();
        assert_eq!(real.rank, 1);
        let expected = [[1.0, -1.0], [-1.0, 1.0]];
        for t in 0..2 {
            for x in 0..2 {
                assert_eq!(real.gram[(t, x)], Complex64::new(expected[t][x], 0.0));
                assert!((real.inner(ElementId(x), ElementId(t)) - real.gram[(t, x)]).norm() < 1e-14);
            }
        }
        let m = shift_operator(&s, &real, ElementId(1)).unwrap();
        assert_eq!(m.matrix.rows(), 1);
        assert!((m.matrix[(0, 0)] + 1.0).norm() < 1e-14);
        assert_eq!(kernel_dimension(&m.matrix, -1.0, tol), 1);
        assert_eq!(kernel_dimension(&m.matrix, 1.0, tol), 0);
        assert_eq!(negative_squares(&s, &re(&[1.0, -1.0]), ElementId(1), tol).unwrap(), 1);
    }

    #[test]
    fn full_rank_on_z2() {
        let s = z2();
        let tol = Tolerance::default();
        let real = build_gram(&s, &re(&[2.0, 0.0]), tol).unwrap();
        assert_eq!(real.rank, 2);
        assert!(real.gram.max_abs_diff(&Matrix::identity(2).scale(2.0)) < 1e-15);
        let m = shift_operator(&s, &real, ElementId(1)).unwrap();
        let mut spectrum = hermitian_spectrum(&m.matrix);
        spectrum.iter_mut().for_each(|x| *x = (*x * 1e9).round() / 1e9);
        assert_eq!(spectrum, [-1.0, 1.0]);
        assert!(selfadjoint_check(&m.matrix) && involution_check(&m.matrix));
        assert_eq!(negative_squares(&s, &re(&[2.0, 0.0]), ElementId(1), tol).unwrap(), 1);
    }

    #[test]
    fn zero_shift_is_identity() {
        let s = StarSemigroup::power_z2(2).unwrap();
        let chars = enumerate_characters(&s);
        let phi = moment_function(&s, &chars, &random_measure(4, 3, 9).unwrap());
        let tol = Tolerance::default();
        let real = build_gram(&s, &phi, tol).unwrap();
        let m = shift_operator(&s, &real, ElementId(0)).unwrap();
        assert!(m.matrix.max_abs_diff(&Matrix::identity(real.rank)) < 1e-12);
        assert!(m.residual < 1e-12);
        assert_eq!(kernel_dimension(&m.matrix, -1.0, tol), 0);
        assert_eq!(kernel_dimension(&m.matrix, 1.0, tol), real.rank);
        assert_eq!(negative_squares(&s, &phi, ElementId(0), tol).unwrap(), 0);
    }

    #[test]
    fn dirac_measures_have_rank_one() {
        let s = crate::catalog::projection_amalgam();
        let chars = enumerate_characters(&s);
        for c in 0..chars.len() {
            let phi = moment_function(&s, &chars, &DualMeasure::dirac(c, chars.len()).unwrap());
            assert_eq!(build_gram(&s, &phi, Tolerance::default()).unwrap().rank, 1);
        }
    }

    #[test]
    fn not_positive_definite_is_rejected() {
        assert!(matches!(
            build_gram(&z2(), &re(&[0.0, 1.0]), Tolerance::default()),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn indefinite_hankel_is_rejected() {
        let s = StarSemigroup::cyclic(3, Involution::Identity).unwrap();
        // G = [[2,-1,-1],[-1,-1,2],[-1,2,-1]] has eigenvalues -3, 0, 3
        let phi = re(&[2.0, -1.0, -1.0]);
        assert!(matches!(
            build_gram(&s, &phi, Tolerance::default()),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn adjoint_relation_on_span() {
        let s = StarSemigroup::cyclic(3, Involution::Negation).unwrap();
        let chars = enumerate_characters(&s);
        let phi = moment_function(&s, &chars, &random_measure(3, 2, 5).unwrap());
        let real = build_gram(&s, &phi, Tolerance::default()).unwrap();
        assert!(adjoint_defect(&s, &real, ElementId(1)).unwrap() < 1e-12);
    }

    #[test]
    fn dual_realization_on_z2_cube() {
        let s = StarSemigroup::power_z2(3).unwrap();
        let chars = enumerate_characters(&s);
        let u = s.find("(1,0,0)").unwrap();
        let minus: Vec<usize> = (0..8).filter(|&c| chars[c].value(u) == UnitValue::MINUS_ONE).collect();
        let mu = DualMeasure::uniform(minus.iter().copied().take(3), 8).unwrap();
        let d = dual_realization(&s, &chars, &mu, u, Tolerance::default());
        assert_eq!(d.dim(), 3);
        assert_eq!((d.kernel_minus, d.kernel_plus), (3, 0));
        assert!(d.invariance_residual < 1e-12);
        let plus = (0..8).find(|&c| chars[c].value(u) == UnitValue::ONE).unwrap();
        let d = dual_realization(&s, &chars, &DualMeasure::dirac(plus, 8).unwrap(), u, Tolerance::default());
        assert_eq!((d.kernel_minus, d.kernel_plus), (0, 1));
    }
}
