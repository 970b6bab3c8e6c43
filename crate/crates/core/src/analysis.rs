//! Symmetry reports for shift operators, transfer along homomorphisms, and
//! the fuzzing harness.
//!
//! The quotient conditions `[2u] = 0` and `[u] = [u*]` decide whether every
//! shift `u_φ` is a fundamental symmetry. Reports record the operator flags
//! measured for each supplied `φ` next to what the conditions predict, so a
//! disagreement shows up as a failed check rather than a silent verdict.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::{enumerate_characters, separative_quotient, Character, QuotientMap, UnitValue};
use crate::error::{Error, Result};
use crate::linalg::Tolerance;
use crate::pdfun::{moment_function, random_measure_with, shift_identities_check, DualMeasure, PDTable, ShiftIdentities};
use crate::rkhs::{
    build_gram, dual_realization, hermitian_spectrum, involution_check, kernel_dimension, negative_squares,
    selfadjoint_check, shift_operator,
};
use crate::semigroup::{ElementId, Homomorphism, StarSemigroup};

/// A semigroup together with its characters and separative quotient.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub semigroup: StarSemigroup,
    pub characters: Vec<Character>,
    pub quotient: QuotientMap,
}

impl Instance {
    pub fn new(name: impl Into<String>, semigroup: StarSemigroup) -> Result<Self> {
        let characters = enumerate_characters(&semigroup);
        let quotient = separative_quotient(&semigroup, &characters)?;
        Ok(Instance {
            name: name.into(),
            semigroup,
            characters,
            quotient,
        })
    }

    fn zero(&self) -> Result<ElementId> {
        self.semigroup.zero().ok_or(Error::NoZero)
    }

    /// Characters with `σ(u) = −1`, by index.
    pub fn minus_characters(&self, u: ElementId) -> Vec<usize> {
        self.characters_where(u, |v| v == UnitValue::MINUS_ONE)
    }

    pub fn characters_where(&self, u: ElementId, pred: impl Fn(UnitValue) -> bool) -> Vec<usize> {
        (0..self.characters.len())
            .filter(|&c| pred(self.characters[c].value(u)))
            .collect()
    }
}

/// `[2u] = 0` and `[u] = [u*]`, evaluated in the separative quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KreinConditions {
    pub twice_is_zero: bool,
    pub star_fixed: bool,
}

impl KreinConditions {
    pub fn hold(&self) -> bool {
        self.twice_is_zero && self.star_fixed
    }
}

pub fn krein_conditions(inst: &Instance, u: ElementId) -> Result<KreinConditions> {
    let s = &inst.semigroup;
    let zero = inst.zero()?;
    let class = |e| inst.quotient.class_of(e);
    Ok(KreinConditions {
        twice_is_zero: class(s.add(u, u)) == class(zero),
        star_fixed: class(u) == class(s.star(u)),
    })
}

/// Counting data attached to `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftCounts {
    /// `#{[s] ∈ S/∼ : [u + s] ≠ [s]}`.
    pub moved: usize,
    /// `#{σ : σ(u) = −1}`.
    pub minus_one: usize,
    /// `#{s ∈ S : u + s ≠ s}`; informational only.
    pub raw_moved: usize,
}

fn counts_unchecked(inst: &Instance, u: ElementId) -> ShiftCounts {
    let s = &inst.semigroup;
    let q = &inst.quotient.quotient;
    let qu = inst.quotient.class_of(u);
    ShiftCounts {
        moved: q.elements().filter(|&c| q.add(qu, c) != c).count(),
        minus_one: inst.minus_characters(u).len(),
        raw_moved: s.elements().filter(|&x| s.add(u, x) != x).count(),
    }
}

/// Counts for an element satisfying the quotient conditions.
pub fn shift_counts(inst: &Instance, u: ElementId) -> Result<ShiftCounts> {
    if !krein_conditions(inst, u)?.hold() {
        return Err(Error::Precondition(format!(
            "{} does not satisfy [2u] = 0 and [u] = [u*]",
            inst.semigroup.name(u)
        )));
    }
    Ok(counts_unchecked(inst, u))
}

/// Why an element is scanned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Admissibility {
    /// The quotient conditions hold.
    Krein,
    /// `u = u*` and `3u = u` in `S` while the quotient conditions fail.
    Degenerate,
}

/// Elements covered by the scans, in element order.
pub fn admissible_elements(inst: &Instance) -> Result<Vec<(ElementId, Admissibility)>> {
    let s = &inst.semigroup;
    let mut out = Vec::new();
    for u in s.elements() {
        if krein_conditions(inst, u)?.hold() {
            out.push((u, Admissibility::Krein));
        } else if s.star(u) == u && s.multiple(3, u) == u {
            out.push((u, Admissibility::Degenerate));
        }
    }
    Ok(out)
}

/// The cross-check computed in `L²(μ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualSummary {
    pub dim: usize,
    pub kernel_minus: usize,
    pub kernel_plus: usize,
    pub invariance_residual: f64,
}

/// Findings for one `φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiRecord {
    pub rank: usize,
    pub residual: f64,
    pub selfadjoint: bool,
    pub involutive: bool,
    pub kernel_minus: usize,
    pub kernel_plus: usize,
    pub kernel_zero: usize,
    /// `None` when `φ(· + u)` is not hermitian-symmetric.
    pub negative_squares: Option<usize>,
    /// Present when the quotient conditions hold.
    pub identities: Option<ShiftIdentities>,
    /// Atoms with `σ(u) = −1`, for moment functions.
    pub minus_atoms: Option<usize>,
    pub dual: Option<DualSummary>,
    /// Eigenvalues of the Hermitian part of the shift matrix, ascending.
    pub spectrum: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// negative squares of `φ(· + u)` equal `dim ker(u_φ + I)`.
    NegativeSquares,
    /// `2 · dim ker(u_φ + I) ≤ moved`.
    HalfBound,
    /// `u_φ = u_φ*` and `u_φ² = I`.
    OperatorIdentities,
    /// `φ(s+u) = φ(s+u*)`, `φ(s+2u) = φ(s)`, `φ(s*+u*+u+s) = φ(s*+s)`.
    ShiftIdentities,
    /// `dim ker(u_φ + I) + dim ker(u_φ − I) = rank`.
    KernelSum,
    /// Gram and dual realizations give the same rank and kernel dimensions.
    CrossEngine,
    /// `dim ker(u_φ + I)` equals the number of atoms with `σ(u) = −1`.
    SharpKernel,
    /// The Dirac measure at a violating character breaks the operator identities.
    Contrapositive,
    /// The largest sampled `dim ker(u_φ + I)` equals the minus-character count.
    MaxKernel,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::NegativeSquares => "negative-squares",
            Check::HalfBound => "half-bound",
            Check::OperatorIdentities => "operator-identities",
            Check::ShiftIdentities => "shift-identities",
            Check::KernelSum => "kernel-sum",
            Check::CrossEngine => "cross-engine",
            Check::SharpKernel => "sharp-kernel",
            Check::Contrapositive => "contrapositive",
            Check::MaxKernel => "max-kernel",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl PhiRecord {
    /// Checks that fail for this record. `negative_squares_offset` is added to the
    /// negative-squares count before comparison and is zero outside harness
    /// self-tests.
    pub fn failed_checks(&self, conditions: KreinConditions, moved: usize, negative_squares_offset: usize) -> Vec<Check> {
        let mut failed = Vec::new();
        if let Some(neg) = self.negative_squares {
            if neg + negative_squares_offset != self.kernel_minus {
                failed.push(Check::NegativeSquares);
            }
        }
        if conditions.hold() {
            if 2 * self.kernel_minus > moved {
                failed.push(Check::HalfBound);
            }
            if !(self.selfadjoint && self.involutive) {
                failed.push(Check::OperatorIdentities);
            }
            if self.identities.is_some_and(|i| !i.all()) {
                failed.push(Check::ShiftIdentities);
            }
            if self.kernel_minus + self.kernel_plus != self.rank {
                failed.push(Check::KernelSum);
            }
            if self.minus_atoms.is_some_and(|k| k != self.kernel_minus) {
                failed.push(Check::SharpKernel);
            }
        }
        if let Some(d) = self.dual {
            if (d.dim, d.kernel_minus, d.kernel_plus) != (self.rank, self.kernel_minus, self.kernel_plus) {
                failed.push(Check::CrossEngine);
            }
        }
        failed
    }
}

/// The Dirac measure at a character that separates `2u` from `0` or `u` from `u*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub character: usize,
    pub selfadjoint: bool,
    pub involutive: bool,
}

impl Witness {
    pub fn breaks_identities(&self) -> bool {
        !(self.selfadjoint && self.involutive)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    PontryaginFundamentalSymmetry,
    /// Selfadjoint involution whose `−1` eigenspace exceeds the half bound.
    KreinOnly,
    NotASymmetry,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::PontryaginFundamentalSymmetry => "PontryaginFundamentalSymmetry",
            Verdict::KreinOnly => "KreinOnly",
            Verdict::NotASymmetry => "NotASymmetry",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    pub instance: String,
    pub u: ElementId,
    pub u_label: String,
    pub conditions: KreinConditions,
    pub counts: ShiftCounts,
    pub records: Vec<PhiRecord>,
    pub witness: Option<Witness>,
    pub verdict: Verdict,
    /// Some `u_φ` has a nontrivial kernel while `u = u*` and `3u = u`.
    pub degenerate: bool,
}

impl SymmetryReport {
    /// Every failed check, tagged with the index of the offending record
    /// (`None` for report-level checks).
    pub fn failures(&self) -> Vec<(Option<usize>, Check)> {
        let mut out: Vec<(Option<usize>, Check)> = Vec::new();
        for (i, r) in self.records.iter().enumerate() {
            out.extend(
                r.failed_checks(self.conditions, self.counts.moved, 0)
                    .into_iter()
                    .map(|c| (Some(i), c)),
            );
        }
        if self.witness.is_some_and(|w| !w.breaks_identities()) {
            out.push((None, Check::Contrapositive));
        }
        out
    }

    pub fn assertions_hold(&self) -> bool {
        self.failures().is_empty()
    }
}

fn analyze_one(inst: &Instance, u: ElementId, phi: &PDTable, conditions: KreinConditions, tol: Tolerance) -> Result<PhiRecord> {
    let s = &inst.semigroup;
    let real = build_gram(s, phi, tol)?;
    let shift = shift_operator(s, &real, u)?;
    let m = &shift.matrix;
    let negative_squares = match negative_squares(s, phi, u, tol) {
        Ok(n) => Some(n),
        Err(Error::NotHermitianSymmetric { .. }) => None,
        Err(e) => return Err(e),
    };
    let identities = if conditions.hold() {
        Some(shift_identities_check(s, &inst.quotient, u, phi, tol)?)
    } else {
        None
    };
    let (minus_atoms, dual) = match phi.measure() {
        Some(mu) => {
            let minus = mu
                .support()
                .filter(|&c| inst.characters[c].value(u) == UnitValue::MINUS_ONE)
                .count();
            let d = dual_realization(s, &inst.characters, mu, u, tol);
            let summary = DualSummary {
                dim: d.dim(),
                kernel_minus: d.kernel_minus,
                kernel_plus: d.kernel_plus,
                invariance_residual: d.invariance_residual,
            };
            (Some(minus), Some(summary))
        }
        None => (None, None),
    };
    Ok(PhiRecord {
        rank: real.rank,
        residual: shift.residual,
        selfadjoint: selfadjoint_check(m),
        involutive: involution_check(m),
        kernel_minus: kernel_dimension(m, -1.0, tol),
        kernel_plus: kernel_dimension(m, 1.0, tol),
        kernel_zero: kernel_dimension(m, 0.0, tol),
        negative_squares,
        identities,
        minus_atoms,
        dual,
        spectrum: hermitian_spectrum(m),
    })
}

fn find_witness(inst: &Instance, u: ElementId, tol: Tolerance) -> Result<Option<Witness>> {
    let s = &inst.semigroup;
    let (u2, us) = (s.add(u, u), s.star(u));
    let violating = (0..inst.characters.len()).find(|&c| {
        let chi = &inst.characters[c];
        chi.value(u2) != UnitValue::ONE || chi.value(us) != chi.value(u)
    });
    let Some(character) = violating else {
        return Ok(None);
    };
    let mu = DualMeasure::dirac(character, inst.characters.len())?;
    let phi = moment_function(s, &inst.characters, &mu);
    let real = build_gram(s, &phi, tol)?;
    let m = shift_operator(s, &real, u)?.matrix;
    Ok(Some(Witness {
        character,
        selfadjoint: selfadjoint_check(&m),
        involutive: involution_check(&m),
    }))
}

/// Builds the report for `u` over the supplied positive definite functions.
pub fn analyze(inst: &Instance, u: ElementId, phis: &[PDTable], tol: Tolerance) -> Result<SymmetryReport> {
    let s = &inst.semigroup;
    if u.0 >= s.len() {
        return Err(Error::InvalidArgument("element out of range"));
    }
    let conditions = krein_conditions(inst, u)?;
    let counts = counts_unchecked(inst, u);
    let records = phis
        .iter()
        .map(|phi| analyze_one(inst, u, phi, conditions, tol))
        .collect::<Result<Vec<_>>>()?;
    let witness = if conditions.hold() {
        None
    } else {
        find_witness(inst, u, tol)?
    };
    let verdict = if !conditions.hold() {
        Verdict::NotASymmetry
    } else if records.iter().all(|r| 2 * r.kernel_minus <= counts.moved) {
        Verdict::PontryaginFundamentalSymmetry
    } else {
        Verdict::KreinOnly
    };
    let raw_degenerate = s.star(u) == u && s.multiple(3, u) == u;
    let degenerate = !conditions.hold() && raw_degenerate && records.iter().any(|r| r.kernel_zero > 0);
    Ok(SymmetryReport {
        instance: inst.name.clone(),
        u,
        u_label: s.name(u).to_string(),
        conditions,
        counts,
        records,
        witness,
        verdict,
        degenerate,
    })
}

/// Spectral comparison of `u_{φ∘h}` on the source with `h(u)_φ` on the target.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferReport {
    pub ranks: (usize, usize),
    pub kernels_minus: (usize, usize),
    pub kernels_plus: (usize, usize),
    /// Largest gap between sorted spectra after dividing by `max(1, |λ|_max)`.
    pub spectral_gap: f64,
    pub agrees: bool,
}

/// Absolute tolerance on normalized spectra.
pub const SPECTRAL_TOL: f64 = 1e-8;

/// Compares the shifts induced by `u` on the source and `h(u)` on the target
/// for `φ` given on the target.
pub fn transfer_check(
    source: &Instance,
    target: &StarSemigroup,
    h: &Homomorphism,
    u: ElementId,
    phi: &PDTable,
    tol: Tolerance,
) -> Result<TransferReport> {
    let s = &source.semigroup;
    if let Some(missing) = h.first_missed(target.len()) {
        return Err(Error::NotOnto { missing: missing.0 });
    }
    if !h.preserves_zero(s, target) {
        return Err(Error::Precondition("homomorphism does not preserve zero".into()));
    }
    if !krein_conditions(source, u)?.hold() {
        return Err(Error::Precondition(format!(
            "{} does not satisfy [2u] = 0 and [u] = [u*]",
            s.name(u)
        )));
    }
    let pulled = phi.compose(h);
    let real_s = build_gram(s, &pulled, tol)?;
    let m_s = shift_operator(s, &real_s, u)?.matrix;
    let real_t = build_gram(target, phi, tol)?;
    let m_t = shift_operator(target, &real_t, h.apply(u))?.matrix;

    let normalize = |mut v: Vec<f64>| {
        let scale = v.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        v.iter_mut().for_each(|x| *x /= scale);
        v
    };
    let (a, b) = (normalize(hermitian_spectrum(&m_s)), normalize(hermitian_spectrum(&m_t)));
    let spectral_gap = if a.len() == b.len() {
        a.iter().zip(&b).fold(0.0f64, |g, (x, y)| g.max((x - y).abs()))
    } else {
        f64::INFINITY
    };
    let ranks = (real_s.rank, real_t.rank);
    let kernels_minus = (kernel_dimension(&m_s, -1.0, tol), kernel_dimension(&m_t, -1.0, tol));
    let kernels_plus = (kernel_dimension(&m_s, 1.0, tol), kernel_dimension(&m_t, 1.0, tol));
    let agrees = ranks.0 == ranks.1
        && kernels_minus.0 == kernels_minus.1
        && kernels_plus.0 == kernels_plus.1
        && spectral_gap <= SPECTRAL_TOL;
    Ok(TransferReport {
        ranks,
        kernels_minus,
        kernels_plus,
        spectral_gap,
        agrees,
    })
}

/// Transfer along the separative projection for moment functions of the
/// given measures on the quotient's characters.
pub fn quotient_transfer_check(
    inst: &Instance,
    u: ElementId,
    measures: &[DualMeasure],
    tol: Tolerance,
) -> Result<Vec<TransferReport>> {
    let q = &inst.quotient;
    measures
        .iter()
        .map(|mu| {
            let psi = moment_function(&q.quotient, &q.quotient_characters, mu);
            transfer_check(inst, &q.quotient, &q.projection, u, &psi, tol)
        })
        .collect()
}

/// Knobs for [`fuzz`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FuzzConfig {
    /// Random measures per `(instance, u)` configuration.
    pub trials: usize,
    pub seed: u64,
    pub tol: Tolerance,
    /// Harness self-test: shifts the negative-squares count by one.
    pub inject_negative_squares_off_by_one: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 50,
            seed: 0,
            tol: Tolerance::default(),
            inject_negative_squares_off_by_one: false,
        }
    }
}

/// One line of the verdict table.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzRow {
    pub instance: String,
    pub u_label: String,
    pub admissibility: Admissibility,
    pub verdict: Verdict,
    pub counts: ShiftCounts,
    pub measures: usize,
    pub max_kernel_minus: usize,
    pub violations: usize,
}

/// How a fuzz measure was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasureSource {
    /// Drawn by [`random_measure_with`] from a ChaCha8 stream seeded with `seed`.
    Random { seed: u64 },
    UniformMinus,
    Dirac,
}

/// Enough to replay a failed case.
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzViolation {
    pub instance: String,
    pub u_label: String,
    pub check: Check,
    pub source: MeasureSource,
    pub measure: Option<DualMeasure>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct FuzzTable {
    pub rows: Vec<FuzzRow>,
    pub violations: Vec<FuzzViolation>,
}

impl FuzzTable {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of one trial, mixed from the run seed and the trial coordinates.
pub fn trial_seed(seed: u64, coords: &[u64]) -> u64 {
    coords.iter().fold(splitmix64(seed), |acc, &c| splitmix64(acc ^ c))
}

/// A random measure with a uniformly drawn atom count, replayable from `seed`.
pub fn fuzz_measure(character_count: usize, seed: u64) -> Result<DualMeasure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=character_count);
    random_measure_with(&mut rng, character_count, k)
}

/// Runs every check over every admissible element of every instance.
///
/// Failures become [`FuzzViolation`]s; instance-level errors are recorded the
/// same way under the check they prevented.
pub fn fuzz(instances: &[Instance], cfg: &FuzzConfig) -> FuzzTable {
    let mut table = FuzzTable::default();
    let offset = usize::from(cfg.inject_negative_squares_off_by_one);
    for (ii, inst) in instances.iter().enumerate() {
        let elements = match admissible_elements(inst) {
            Ok(e) => e,
            Err(e) => {
                table.violations.push(FuzzViolation {
                    instance: inst.name.clone(),
                    u_label: String::new(),
                    check: Check::OperatorIdentities,
                    source: MeasureSource::Dirac,
                    measure: None,
                    detail: e.to_string(),
                });
                continue;
            }
        };
        let n_chars = inst.characters.len();
        for (u, adm) in elements {
            let mut cases: Vec<(MeasureSource, DualMeasure)> = Vec::new();
            for trial in 0..cfg.trials {
                let seed = trial_seed(cfg.seed, &[ii as u64, u.0 as u64, trial as u64]);
                if let Ok(mu) = fuzz_measure(n_chars, seed) {
                    cases.push((MeasureSource::Random { seed }, mu));
                }
            }
            let minus = inst.minus_characters(u);
            if !minus.is_empty() {
                if let Ok(mu) = DualMeasure::uniform(minus.iter().copied(), n_chars) {
                    cases.push((MeasureSource::UniformMinus, mu));
                }
            }
            let before = table.violations.len();
            let push = |table: &mut FuzzTable, check, source, measure, detail: String| {
                table.violations.push(FuzzViolation {
                    instance: inst.name.clone(),
                    u_label: inst.semigroup.name(u).to_string(),
                    check,
                    source,
                    measure,
                    detail,
                });
            };
            let phis: Vec<PDTable> = cases
                .iter()
                .map(|(_, mu)| moment_function(&inst.semigroup, &inst.characters, mu))
                .collect();
            let report = match analyze(inst, u, &phis, cfg.tol) {
                Ok(r) => r,
                Err(e) => {
                    push(&mut table, Check::OperatorIdentities, MeasureSource::Dirac, None, e.to_string());
                    continue;
                }
            };
            for (rec, (source, mu)) in report.records.iter().zip(&cases) {
                for check in rec.failed_checks(report.conditions, report.counts.moved, offset) {
                    let detail = format!(
                        "rank {} ker(M+I) {} ker(M-I) {} negative squares {:?} dual {:?}",
                        rec.rank, rec.kernel_minus, rec.kernel_plus, rec.negative_squares, rec.dual
                    );
                    push(&mut table, check, source.clone(), Some(mu.clone()), detail);
                }
            }
            if let Some(w) = report.witness {
                if !w.breaks_identities() {
                    let measure = DualMeasure::dirac(w.character, n_chars).ok();
                    let detail = format!("character {} keeps the operator identities", w.character);
                    push(&mut table, Check::Contrapositive, MeasureSource::Dirac, measure, detail);
                }
            } else if !report.conditions.hold() {
                let detail = "no character separates 2u from 0 or u from u*".to_string();
                push(&mut table, Check::Contrapositive, MeasureSource::Dirac, None, detail);
            }
            let max_kernel_minus = report.records.iter().map(|r| r.kernel_minus).max().unwrap_or(0);
            if max_kernel_minus != report.counts.minus_one {
                let detail = format!(
                    "largest ker(M+I) {} against {} minus characters",
                    max_kernel_minus, report.counts.minus_one
                );
                push(&mut table, Check::MaxKernel, MeasureSource::UniformMinus, None, detail);
            }
            table.rows.push(FuzzRow {
                instance: inst.name.clone(),
                u_label: report.u_label.clone(),
                admissibility: adm,
                verdict: report.verdict,
                counts: report.counts,
                measures: report.records.len(),
                max_kernel_minus,
                violations: table.violations.len() - before,
            });
        }
    }
    table
}
