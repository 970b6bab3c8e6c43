//! Positive definite functions: moment functions of finitely supported
//! measures on the dual, the positive-definiteness gate, and the shift
//! identities that hold when `[2u] = 0` and `[u] = [u*]`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::{Character, QuotientMap};
use crate::error::{Error, Result};
use crate::linalg::{inertia, Inertia, Matrix, Tolerance};
use crate::semigroup::{ElementId, Homomorphism, StarSemigroup};

/// One point mass: an index into the canonical character enumeration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    pub character: usize,
    pub weight: f64,
}

/// A finitely supported positive measure on the dual semigroup.
#[derive(Clone, Debug, PartialEq)]
pub struct DualMeasure {
    atoms: Vec<Atom>,
}

impl DualMeasure {
    /// Checks weights are finite and positive and indices distinct and below `character_count`.
    pub fn new(atoms: Vec<Atom>, character_count: usize) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for a in &atoms {
            if !(a.weight.is_finite() && a.weight > 0.0) {
                return Err(Error::InvalidMeasure(format!(
                    "weight {} of character {} is not positive",
                    a.weight, a.character
                )));
            }
            if a.character >= character_count {
                return Err(Error::InvalidMeasure(format!(
                    "character index {} out of range (have {character_count})",
                    a.character
                )));
            }
            if !seen.insert(a.character) {
                return Err(Error::InvalidMeasure(format!(
                    "character {} appears twice",
                    a.character
                )));
            }
        }
        Ok(Self { atoms })
    }

    pub fn dirac(character: usize, character_count: usize) -> Result<Self> {
        Self::new(
            alloc::vec![Atom {
                character,
                weight: 1.0
            }],
            character_count,
        )
    }

    /// Unit weight on each listed character.
    pub fn uniform(characters: impl IntoIterator<Item = usize>, character_count: usize) -> Result<Self> {
        let atoms = characters
            .into_iter()
            .map(|character| Atom {
                character,
                weight: 1.0,
            })
            .collect();
        Self::new(atoms, character_count)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.atoms.iter().map(|a| a.character)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// Where a value table came from.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Moment(DualMeasure),
    Raw,
}

/// A candidate positive definite function, one value per element.
#[derive(Clone, Debug, PartialEq)]
pub struct PDTable {
    pub values: Vec<Complex64>,
    pub provenance: Provenance,
}

impl PDTable {
    pub fn raw(values: Vec<Complex64>) -> Self {
        Self {
            values,
            provenance: Provenance::Raw,
        }
    }

    #[inline]
    pub fn at(&self, e: ElementId) -> Complex64 {
        self.values[e.0]
    }

    pub fn measure(&self) -> Option<&DualMeasure> {
        match &self.provenance {
            Provenance::Moment(mu) => Some(mu),
            Provenance::Raw => None,
        }
    }

    /// `φ ∘ h`, tabulated on the domain of `h`.
    pub fn compose(&self, h: &Homomorphism) -> Self {
        Self::raw(h.as_slice().iter().map(|&e| self.at(e)).collect())
    }

    /// `ψ = φ(· + u)`; hermitian-symmetric but not in general positive definite.
    pub fn translate(&self, s: &StarSemigroup, u: ElementId) -> Self {
        Self::raw(s.elements().map(|e| self.at(s.add(e, u))).collect())
    }

    fn scale(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(1.0, f64::max)
    }

    fn check_len(&self, s: &StarSemigroup) -> Result<()> {
        if self.values.len() == s.len() {
            Ok(())
        } else {
            Err(Error::InvalidArgument("value table length differs from carrier"))
        }
    }
}

/// `L(μ)(s) = Σ_k w_k σ_k(s)`.
pub fn moment_function(s: &StarSemigroup, chars: &[Character], mu: &DualMeasure) -> PDTable {
    let mut values = alloc::vec![Complex64::zero(); s.len()];
    for atom in mu.atoms() {
        let chi = &chars[atom.character];
        for e in s.elements() {
            values[e.0] += chi.value(e).to_complex() * atom.weight;
        }
    }
    PDTable {
        values,
        provenance: Provenance::Moment(mu.clone()),
    }
}

/// First element where `φ(s*) ≠ conj φ(s)` beyond the tolerance band.
pub fn check_hermitian(s: &StarSemigroup, phi: &PDTable, tol: Tolerance) -> Result<()> {
    phi.check_len(s)?;
    let band = tol.band(phi.scale());
    match s
        .elements()
        .find(|&e| (phi.at(s.star(e)) - phi.at(e).conj()).norm() > band)
    {
        Some(e) => Err(Error::NotHermitianSymmetric { element: e.0 }),
        None => Ok(()),
    }
}

/// `G[t][s] = φ(t* + s)`.
pub fn gram_matrix(s: &StarSemigroup, phi: &PDTable) -> Matrix {
    Matrix::from_fn(s.len(), s.len(), |t, x| {
        phi.at(s.add(s.star(ElementId(t)), ElementId(x)))
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PdVerdict {
    pub positive_definite: bool,
    /// Most negative (smallest) Gram eigenvalue.
    pub min_eigenvalue: f64,
    pub inertia: Inertia,
}

/// Positive-definiteness on a finite carrier: the full Gram matrix is PSD.
pub fn is_positive_definite(s: &StarSemigroup, phi: &PDTable, tol: Tolerance) -> Result<PdVerdict> {
    check_hermitian(s, phi, tol)?;
    let (inr, eig) = inertia(&gram_matrix(s, phi), tol);
    Ok(PdVerdict {
        positive_definite: inr.negative == 0,
        min_eigenvalue: eig.values.first().copied().unwrap_or(0.0),
        inertia: inr,
    })
}

/// Outcome of the three shift identities checked at every element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftIdentities {
    /// `φ(s + u) = φ(s + u*)`
    pub star_invariant: bool,
    /// `φ(s + 2u) = φ(s)`
    pub period_two: bool,
    /// `φ(s* + u* + u + s) = φ(s* + s)`
    pub norm_preserving: bool,
}

impl ShiftIdentities {
    pub fn all(&self) -> bool {
        self.star_invariant && self.period_two && self.norm_preserving
    }
}

/// Verifies the shift identities for a positive definite `φ` and an element
/// satisfying the quotient conditions.
pub fn shift_identities_check(
    s: &StarSemigroup,
    quotient: &QuotientMap,
    u: ElementId,
    phi: &PDTable,
    tol: Tolerance,
) -> Result<ShiftIdentities> {
    let zero = s.zero().ok_or(Error::NoZero)?;
    let class = |e| quotient.class_of(e);
    let u2 = s.add(u, u);
    if class(u2) != class(zero) || class(u) != class(s.star(u)) {
        return Err(Error::Precondition(format!(
            "{} does not satisfy [2u] = 0 and [u] = [u*]",
            s.name(u)
        )));
    }
    let pd = is_positive_definite(s, phi, tol)?;
    if !pd.positive_definite {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: pd.min_eigenvalue,
        });
    }
    let band = tol.band(phi.scale());
    let eq = |a: ElementId, b: ElementId| (phi.at(a) - phi.at(b)).norm() <= band;
    let us = s.star(u);
    Ok(ShiftIdentities {
        star_invariant: s.elements().all(|x| eq(s.add(x, u), s.add(x, us))),
        period_two: s.elements().all(|x| eq(s.add(x, u2), x)),
        norm_preserving: s.elements().all(|x| {
            let xs = s.star(x);
            eq(s.add(s.add(xs, us), s.add(u, x)), s.add(xs, x))
        }),
    })
}

/// Bounds for randomly drawn atom weights.
pub const WEIGHT_RANGE: (f64, f64) = (0.1, 10.0);

/// `k` distinct characters chosen without replacement, weights uniform in
/// [`WEIGHT_RANGE`], determined by `seed`.
pub fn random_measure(character_count: usize, k: usize, seed: u64) -> Result<DualMeasure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_measure_with(&mut rng, character_count, k)
}

pub fn random_measure_with<R: Rng + ?Sized>(
    rng: &mut R,
    character_count: usize,
    k: usize,
) -> Result<DualMeasure> {
    if k > character_count {
        return Err(Error::InvalidMeasure(format!(
            "cannot pick {k} atoms from {character_count} characters"
        )));
    }
    let mut picked = index::sample(rng, character_count, k).into_vec();
    picked.sort_unstable();
    let atoms = picked
        .into_iter()
        .map(|character| Atom {
            character,
            weight: rng.gen_range(WEIGHT_RANGE.0..=WEIGHT_RANGE.1),
        })
        .collect();
    DualMeasure::new(atoms, character_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{enumerate_characters, separative_quotient};
    use crate::semigroup::Involution;
    use alloc::vec;
    use proptest::prelude::*;

    fn z2() -> (StarSemigroup, Vec<Character>) {
        let s = StarSemigroup::cyclic(2, Involution::Identity).unwrap();
        let c = enumerate_characters(&s);
        (s, c)
    }

    fn re(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn moment_functions_on_z2() {
        let (s, chars) = z2();
        let minus = DualMeasure::dirac(1, 2).unwrap();
        assert_eq!(moment_function(&s, &chars, &minus).values, re(&[1.0, -1.0]));
        let both = DualMeasure::uniform([0, 1], 2).unwrap();
        assert_eq!(moment_function(&s, &chars, &both).values, re(&[2.0, 0.0]));
        let scaled = DualMeasure::new(vec![Atom { character: 1, weight: 3.0 }], 2).unwrap();
        assert_eq!(moment_function(&s, &chars, &scaled).values, re(&[3.0, -3.0]));
    }

    #[test]
    fn measure_validation() {
        assert!(DualMeasure::new(vec![Atom { character: 0, weight: 0.0 }], 2).is_err());
        assert!(DualMeasure::new(vec![Atom { character: 2, weight: 1.0 }], 2).is_err());
        assert!(DualMeasure::uniform([1, 1], 2).is_err());
        assert!(DualMeasure::new(vec![Atom { character: 0, weight: f64::NAN }], 2).is_err());
    }

    #[test]
    fn pd_gate() {
        let (s, _) = z2();
        let tol = Tolerance::default();
        let v = is_positive_definite(&s, &PDTable::raw(re(&[1.0, -1.0])), tol).unwrap();
        assert!(v.positive_definite);
        let v = is_positive_definite(&s, &PDTable::raw(re(&[0.0, 1.0])), tol).unwrap();
        assert!(!v.positive_definite);
        assert!((v.min_eigenvalue + 1.0).abs() < 1e-14);
        let z3 = StarSemigroup::cyclic(3, Involution::Identity).unwrap();
        let bad = PDTable::raw(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)]);
        assert_eq!(
            is_positive_definite(&z3, &bad, tol),
            Err(Error::NotHermitianSymmetric { element: 1 })
        );
    }

    #[test]
    fn shift_identities_z2_cube() {
        let s = StarSemigroup::power_z2(3).unwrap();
        let chars = enumerate_characters(&s);
        let q = separative_quotient(&s, &chars).unwrap();
        let u = s.find("(1,0,0)").unwrap();
        for seed in 0..10 {
            let mu = random_measure(chars.len(), 1 + seed as usize % 8, seed).unwrap();
            let phi = moment_function(&s, &chars, &mu);
            assert!(shift_identities_check(&s, &q, u, &phi, Tolerance::default()).unwrap().all());
            assert!(shift_identities_check(&s, &q, ElementId(0), &phi, Tolerance::default()).unwrap().all());
        }
    }

    #[test]
    fn shift_identities_z4_element_two() {
        let s = StarSemigroup::cyclic(4, Involution::Identity).unwrap();
        let chars = enumerate_characters(&s);
        let q = separative_quotient(&s, &chars).unwrap();
        let phi = moment_function(&s, &chars, &DualMeasure::uniform([0, 1], 2).unwrap());
        assert!(shift_identities_check(&s, &q, ElementId(2), &phi, Tolerance::default()).unwrap().all());
        // [1] = [3] in the quotient Z_2, so u = 1 qualifies as well
        assert!(shift_identities_check(&s, &q, ElementId(1), &phi, Tolerance::default()).unwrap().all());

        let s = StarSemigroup::cyclic(4, Involution::Negation).unwrap();
        let chars = enumerate_characters(&s);
        let q = separative_quotient(&s, &chars).unwrap();
        let phi = moment_function(&s, &chars, &DualMeasure::uniform(0..4, 4).unwrap());
        assert!(shift_identities_check(&s, &q, ElementId(2), &phi, Tolerance::default()).unwrap().all());
        assert!(matches!(
            shift_identities_check(&s, &q, ElementId(1), &phi, Tolerance::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn random_measure_contract() {
        assert_eq!(random_measure(8, 3, 42), random_measure(8, 3, 42));
        assert_ne!(random_measure(8, 3, 42), random_measure(8, 3, 43));
        let full = random_measure(5, 5, 1).unwrap();
        assert_eq!(full.support().collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        assert!(random_measure(3, 4, 0).is_err());
    }

    proptest! {
        #[test]
        fn generated_measures_are_valid(count in 1usize..40, k_frac in 0.0f64..=1.0, seed in any::<u64>()) {
            let k = ((count as f64) * k_frac) as usize;
            let mu = random_measure(count, k, seed).unwrap();
            prop_assert_eq!(mu.len(), k);
            prop_assert!(mu.atoms().iter().all(|a| a.weight >= WEIGHT_RANGE.0 && a.weight <= WEIGHT_RANGE.1));
            prop_assert!(DualMeasure::new(mu.atoms().to_vec(), count).is_ok());
        }

        #[test]
        fn moment_is_additive(seed in any::<u64>()) {
            let s = StarSemigroup::power_z2(2).unwrap();
            let chars = enumerate_characters(&s);
            let a = random_measure(4, 2, seed).unwrap();
            let b = random_measure(4, 3, seed.wrapping_add(1)).unwrap();
            let fa = moment_function(&s, &chars, &a);
            let fb = moment_function(&s, &chars, &b);
            // sum of the two measures, merging shared atoms
            let mut merged: Vec<Atom> = a.atoms().to_vec();
            for atom in b.atoms() {
                match merged.iter_mut().find(|m| m.character == atom.character) {
                    Some(m) => m.weight += atom.weight,
                    None => merged.push(*atom),
                }
            }
            let fab = moment_function(&s, &chars, &DualMeasure::new(merged, 4).unwrap());
            for e in s.elements() {
                let sum = fa.at(e) + fb.at(e);
                prop_assert!((fab.at(e) - sum).norm() <= 1e-12 * sum.norm().max(1.0));
            }
        }
    }
}
