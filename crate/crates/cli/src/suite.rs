//! The built-in example suite: each acceptance criterion as a pass/fail check.
//!
//! Shared by `pontryagin examples` and the `acceptance` test target.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use pontryagin_core::analysis::{
    admissible_elements, analyze, fuzz_measure, krein_conditions, quotient_transfer_check, shift_counts,
    trial_seed, Admissibility, Instance, PhiRecord,
};
use pontryagin_core::catalog;
use pontryagin_core::characters::{enumerate_characters, Character, UnitValue};
use pontryagin_core::linalg::Tolerance;
use pontryagin_core::pdfun::{moment_function, random_measure, DualMeasure};
use pontryagin_core::rkhs::{
    build_gram, involution_check, kernel_dimension, selfadjoint_check, shift_operator,
};
use pontryagin_core::semigroup::Involution;
use pontryagin_core::{ElementId, StarSemigroup};

pub type Outcome = Result<String, String>;

const SEED: u64 = 0x5eed;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

/// Atoms on `support` with seeded weights drawn from the library generator.
fn weighted(support: &[usize], n_chars: usize, seed: u64) -> DualMeasure {
    let pool = random_measure(n_chars, n_chars, seed).expect("full draw");
    let atoms = pool
        .atoms()
        .iter()
        .filter(|a| support.contains(&a.character))
        .copied()
        .collect();
    DualMeasure::new(atoms, n_chars).expect("measure")
}

fn e1(m: usize) -> String {
    let mut coords = vec!["0"; m];
    coords[0] = "1";
    format!("({})", coords.join(","))
}

fn power_z2_dimensions() -> Outcome {
    let start = Instant::now();
    let mut configs = 0;
    for m in 1..=4 {
        let inst = Instance::new(format!("z2^{m}"), StarSemigroup::power_z2(m).unwrap()).unwrap();
        let s = &inst.semigroup;
        let u = s.find(&e1(m)).unwrap();
        let n_chars = inst.characters.len();
        ensure(n_chars == 1 << m, || format!("m={m}: {n_chars} characters"))?;
        let minus = inst.minus_characters(u);
        let plus = inst.characters_where(u, |v| v == UnitValue::ONE);
        let half = 1 << (m - 1);
        ensure(minus.len() == half && plus.len() == half, || {
            format!("m={m}: {} minus, {} plus characters", minus.len(), plus.len())
        })?;
        for k in 0..=half {
            for l in 0..=half {
                let support: Vec<usize> = minus[..k].iter().chain(&plus[..l]).copied().collect();
                let mu = weighted(&support, n_chars, trial_seed(SEED, &[m as u64, k as u64, l as u64]));
                let phi = moment_function(s, &inst.characters, &mu);
                let real = build_gram(s, &phi, tol()).map_err(|e| e.to_string())?;
                let shift = shift_operator(s, &real, u).map_err(|e| e.to_string())?;
                let got = (
                    real.rank,
                    kernel_dimension(&shift.matrix, -1.0, tol()),
                    kernel_dimension(&shift.matrix, 1.0, tol()),
                );
                ensure(got == (k + l, k, l), || format!("m={m} (k,l)=({k},{l}): got {got:?}"))?;
                configs += 1;
            }
        }
    }
    let took = within(Duration::from_secs(5), start)?;
    Ok(format!("{configs} configurations, {took:.2?}"))
}

fn projection_amalgam_counts() -> Outcome {
    let start = Instant::now();
    let inst = Instance::new("amalgam-pi", catalog::projection_amalgam()).unwrap();
    let s = &inst.semigroup;
    ensure(s.len() == 6, || format!("{} elements", s.len()))?;
    let mut parts = Vec::new();
    for (label, moved, kernel) in [("(1,0)", 6, 3), ("(0,1)", 4, 2), ("(0,0)", 0, 0)] {
        let u = s.find(label).unwrap();
        let counts = shift_counts(&inst, u).map_err(|e| e.to_string())?;
        ensure(counts.moved == moved, || format!("u={label}: M = {}", counts.moved))?;
        let minus = inst.minus_characters(u);
        let support = if minus.is_empty() { (0..inst.characters.len()).collect() } else { minus };
        let mu = DualMeasure::uniform(support, inst.characters.len()).unwrap();
        let phi = moment_function(s, &inst.characters, &mu);
        let report = analyze(&inst, u, &[phi], tol()).map_err(|e| e.to_string())?;
        let got = report.records[0].kernel_minus;
        ensure(got == kernel, || format!("u={label}: ker(M+I) = {got}, expected {kernel}"))?;
        ensure(2 * got == moved, || format!("u={label}: bound not tight"))?;
        ensure(report.assertions_hold(), || format!("u={label}: {:?}", report.failures()))?;
        parts.push(format!("{label}: M={moved} ker={got}"));
    }
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!("{}, {took:.2?}", parts.join("; ")))
}

fn constant_amalgam_bound() -> Outcome {
    let start = Instant::now();
    let mut worst = 0;
    for top in [2usize, 4, 8] {
        let inst = Instance::new(format!("amalgam-h0-{top}"), catalog::constant_amalgam(top)).unwrap();
        let s = &inst.semigroup;
        let u = s.find("S.1").unwrap();
        for trial in 0..50 {
            let mu = fuzz_measure(inst.characters.len(), trial_seed(SEED, &[top as u64, trial])).unwrap();
            let phi = moment_function(s, &inst.characters, &mu);
            let real = build_gram(s, &phi, tol()).map_err(|e| e.to_string())?;
            let m = shift_operator(s, &real, u).map_err(|e| e.to_string())?.matrix;
            let k = kernel_dimension(&m, -1.0, tol());
            ensure(k <= 1, || format!("T={top} trial {trial}: ker(M+I) = {k}"))?;
            worst = worst.max(k);
        }
    }
    let took = within(Duration::from_secs(5), start)?;
    Ok(format!("150 measures, largest kernel {worst}, {took:.2?}"))
}

struct CorpusEntry {
    instance: String,
    u: String,
    record: PhiRecord,
}

/// Every catalog instance, every admissible element, 25 seeded measures.
fn corpus() -> Result<Vec<CorpusEntry>, String> {
    let mut out = Vec::new();
    for (ii, (name, s)) in catalog::catalog().into_iter().enumerate() {
        let inst = Instance::new(name, s).map_err(|e| e.to_string())?;
        for (u, _) in admissible_elements(&inst).map_err(|e| e.to_string())? {
            let phis: Vec<_> = (0..25u64)
                .map(|t| {
                    let seed = trial_seed(SEED, &[ii as u64, u.0 as u64, t]);
                    let mu = fuzz_measure(inst.characters.len(), seed).unwrap();
                    moment_function(&inst.semigroup, &inst.characters, &mu)
                })
                .collect();
            let report = analyze(&inst, u, &phis, tol()).map_err(|e| format!("{}: {e}", inst.name))?;
            for record in report.records {
                out.push(CorpusEntry {
                    instance: inst.name.clone(),
                    u: report.u_label.clone(),
                    record,
                });
            }
        }
    }
    Ok(out)
}

fn negative_squares_identity(corpus: &[CorpusEntry], built: Duration) -> Outcome {
    let bad: Vec<_> = corpus
        .iter()
        .filter(|e| e.record.negative_squares != Some(e.record.kernel_minus))
        .collect();
    if let Some(e) = bad.first() {
        return Err(format!(
            "{} violations, first {} u={}: negative squares {:?} vs ker(M+I) {}",
            bad.len(),
            e.instance,
            e.u,
            e.record.negative_squares,
            e.record.kernel_minus
        ));
    }
    ensure(built < Duration::from_secs(60), || format!("took {built:?}"))?;
    Ok(format!("{} configurations, 0 violations, {built:.2?}", corpus.len()))
}

fn cross_engine(corpus: &[CorpusEntry]) -> Outcome {
    let mut bad = 0;
    let mut first = None;
    for e in corpus {
        let r = &e.record;
        let ok = r
            .dual
            .is_some_and(|d| (d.dim, d.kernel_minus, d.kernel_plus) == (r.rank, r.kernel_minus, r.kernel_plus));
        if !ok {
            bad += 1;
            first.get_or_insert_with(|| format!("{} u={}: gram {:?} dual {:?}", e.instance, e.u, (r.rank, r.kernel_minus, r.kernel_plus), r.dual));
        }
    }
    match first {
        Some(f) => Err(format!("{bad} disagreements, first {f}")),
        None => Ok(format!("{} configurations agree", corpus.len())),
    }
}

fn operator_identities_iff_conditions() -> Outcome {
    let mut checked = 0;
    for n in [3usize, 4] {
        for inv in [Involution::Identity, Involution::Negation] {
            let inst = Instance::new(format!("z{n}-{inv:?}"), StarSemigroup::cyclic(n, inv).unwrap()).unwrap();
            let s = &inst.semigroup;
            let n_chars = inst.characters.len();
            for u in s.elements() {
                let holds = krein_conditions(&inst, u).unwrap().hold();
                let identities = |mu: &DualMeasure| -> Result<bool, String> {
                    let phi = moment_function(s, &inst.characters, mu);
                    let real = build_gram(s, &phi, tol()).map_err(|e| e.to_string())?;
                    let m = shift_operator(s, &real, u).map_err(|e| e.to_string())?.matrix;
                    Ok(selfadjoint_check(&m) && involution_check(&m))
                };
                if holds {
                    for t in 0..10 {
                        let mu = fuzz_measure(n_chars, trial_seed(SEED, &[n as u64, u.0 as u64, t])).unwrap();
                        ensure(identities(&mu)?, || format!("z{n} {inv:?} u={u}: identities fail"))?;
                        checked += 1;
                    }
                } else {
                    let violating = (0..n_chars).find(|&c| {
                        let chi = &inst.characters[c];
                        chi.value(s.add(u, u)) != UnitValue::ONE || chi.value(s.star(u)) != chi.value(u)
                    });
                    let c = violating.ok_or_else(|| format!("z{n} {inv:?} u={u}: no violating character"))?;
                    let mu = DualMeasure::dirac(c, n_chars).unwrap();
                    ensure(!identities(&mu)?, || format!("z{n} {inv:?} u={u}: Dirac at {c} keeps identities"))?;
                    checked += 1;
                }
                // every Dirac measure: identities hold iff σ(2u) = 1 and σ(u) is real
                for c in 0..n_chars {
                    let chi = &inst.characters[c];
                    let expect = chi.value(s.add(u, u)) == UnitValue::ONE && chi.value(s.star(u)) == chi.value(u);
                    let got = identities(&DualMeasure::dirac(c, n_chars).unwrap())?;
                    ensure(got == expect, || format!("z{n} {inv:?} u={u} character {c}: {got} vs {expect}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} operator checks"))
}

fn separative_transfer() -> Outcome {
    let mut compared = 0;
    let mut worst = 0.0f64;
    for (ii, (name, s)) in catalog::catalog().into_iter().enumerate() {
        let inst = Instance::new(name, s).unwrap();
        let q_chars = inst.quotient.quotient_characters.len();
        for (u, adm) in admissible_elements(&inst).unwrap() {
            if adm != Admissibility::Krein {
                continue;
            }
            let measures: Vec<DualMeasure> = (0..10u64)
                .map(|t| fuzz_measure(q_chars, trial_seed(SEED ^ 7, &[ii as u64, u.0 as u64, t])).unwrap())
                .collect();
            let reports = quotient_transfer_check(&inst, u, &measures, tol()).map_err(|e| format!("{}: {e}", inst.name))?;
            for r in reports {
                ensure(r.agrees, || format!("{} u={}: {r:?}", inst.name, inst.semigroup.name(u)))?;
                worst = worst.max(r.spectral_gap);
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} comparisons, largest spectral gap {worst:.1e}"))
}

/// Eventual index and period of `e`, by direct iteration.
fn oracle_period(s: &StarSemigroup, e: ElementId) -> usize {
    let mut seen: Vec<ElementId> = Vec::new();
    let mut x = e;
    loop {
        if let Some(pos) = seen.iter().position(|&y| y == x) {
            return seen.len() - pos;
        }
        seen.push(x);
        x = s.add(x, e);
    }
}

/// All assignments of admissible exact values that are characters.
fn oracle_characters(s: &StarSemigroup) -> BTreeSet<Vec<UnitValue>> {
    let options: Vec<Vec<UnitValue>> = s
        .elements()
        .map(|e| {
            let p = oracle_period(s, e) as u64;
            let mut v = vec![UnitValue::Zero];
            v.extend((0..p).map(|a| UnitValue::root(a, p)));
            v
        })
        .collect();
    let n = s.len();
    let mut idx = vec![0usize; n];
    let mut found = BTreeSet::new();
    loop {
        let chi: Vec<UnitValue> = (0..n).map(|i| options[i][idx[i]]).collect();
        let at = |e: ElementId| chi[e.0];
        let ok = chi.iter().any(|v| !v.is_zero())
            && s.zero().is_none_or(|z| at(z) == UnitValue::ONE)
            && s.elements().all(|a| {
                at(s.star(a)) == at(a).conj() && s.elements().all(|b| at(s.add(a, b)) == at(a).mul(at(b)))
            });
        if ok {
            found.insert(chi);
        }
        let mut i = 0;
        loop {
            if i == n {
                return found;
            }
            idx[i] += 1;
            if idx[i] < options[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn small_instances() -> Vec<(String, StarSemigroup)> {
    let mut out = Vec::new();
    for n in 1..=6 {
        for inv in [Involution::Identity, Involution::Negation] {
            out.push((format!("z{n}-{inv:?}"), StarSemigroup::cyclic(n, inv).unwrap()));
        }
    }
    for t in 1..=5 {
        out.push((format!("trunc{t}"), StarSemigroup::truncated_nat(t).unwrap()));
        out.push((format!("max{t}"), StarSemigroup::max_nat(t).unwrap()));
    }
    for m in 1..=2 {
        out.push((format!("z2^{m}"), StarSemigroup::power_z2(m).unwrap()));
    }
    out.push(("amalgam-pi".into(), catalog::projection_amalgam()));
    for t in 1..=3 {
        out.push((format!("amalgam-h0-{t}"), catalog::constant_amalgam(t)));
    }
    out.push(("z2xtrunc2".into(), catalog::z2_times_truncated(2)));
    out.push(("z2xmax2".into(), catalog::z2_times_max(2)));
    out.extend(catalog::catalog().into_iter().filter(|(_, s)| s.len() <= 6));
    out
}

fn enumeration_completeness() -> Outcome {
    let instances = small_instances();
    for (name, s) in &instances {
        let listed: Vec<Character> = enumerate_characters(s);
        let got: BTreeSet<Vec<UnitValue>> = listed.iter().map(|c| c.values().to_vec()).collect();
        ensure(got.len() == listed.len(), || format!("{name}: duplicate characters"))?;
        let expected = oracle_characters(s);
        ensure(got == expected, || format!("{name}: {} enumerated, {} by exhaustive search", got.len(), expected.len()))?;
    }
    let count = |s: StarSemigroup| enumerate_characters(&s).len();
    let named = [
        ("Z_2", count(StarSemigroup::cyclic(2, Involution::Identity).unwrap()), 2),
        ("Z_2^2", count(StarSemigroup::power_z2(2).unwrap()), 4),
        ("Z_3 identity", count(StarSemigroup::cyclic(3, Involution::Identity).unwrap()), 1),
        ("Z_3 negation", count(StarSemigroup::cyclic(3, Involution::Negation).unwrap()), 3),
        ("projection amalgam", count(catalog::projection_amalgam()), 6),
    ];
    for (name, got, want) in named {
        ensure(got == want, || format!("{name}: {got} characters, expected {want}"))?;
    }
    Ok(format!("{} instances match exhaustive search", instances.len()))
}

fn degenerate_kernel() -> Outcome {
    let inst = Instance::new("amalgam-pi", catalog::projection_amalgam()).unwrap();
    let s = &inst.semigroup;
    let u = s.find("1").unwrap();
    ensure(s.multiple(3, u) == u && s.star(u) == u, || "u is not a 3u = u, u = u* element".into())?;
    ensure(s.add(u, u) != s.zero().unwrap(), || "2u is the zero".into())?;
    let n_chars = inst.characters.len();
    let all: Vec<usize> = (0..n_chars).collect();
    let mut kernels = BTreeSet::new();
    for (t, mu) in [DualMeasure::uniform(all.clone(), n_chars).unwrap()]
        .into_iter()
        .chain((0..10).map(|t| weighted(&all, n_chars, trial_seed(SEED, &[15, t]))))
        .enumerate()
    {
        let phi = moment_function(s, &inst.characters, &mu);
        let real = build_gram(s, &phi, tol()).map_err(|e| e.to_string())?;
        let shift = shift_operator(s, &real, u).map_err(|e| format!("shift ill-defined: {e}"))?;
        let m = &shift.matrix;
        ensure(selfadjoint_check(m), || format!("measure {t}: not selfadjoint"))?;
        ensure(!involution_check(m), || format!("measure {t}: M² = I"))?;
        let k = kernel_dimension(m, 0.0, tol());
        ensure(k > 0, || format!("measure {t}: trivial kernel"))?;
        kernels.insert(k);
    }
    Ok(format!("rank 6 shift, kernel dimensions {kernels:?}"))
}

pub struct CriterionResult {
    pub number: usize,
    pub name: &'static str,
    pub outcome: Outcome,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn line(&self) -> String {
        match &self.outcome {
            Ok(detail) => format!("criterion {} PASS  {}: {detail}", self.number, self.name),
            Err(why) => format!("criterion {} FAIL  {}: {why}", self.number, self.name),
        }
    }
}

/// Runs every criterion; the corpus shared by the fourth and sixth is built once.
pub fn run() -> Vec<CriterionResult> {
    let corpus_start = Instant::now();
    let corpus = corpus();
    let corpus_time = corpus_start.elapsed();
    let with_corpus = |f: &dyn Fn(&[CorpusEntry]) -> Outcome| match &corpus {
        Ok(c) => f(c),
        Err(e) => Err(format!("corpus: {e}")),
    };
    let results: Vec<(&'static str, Outcome)> = vec![
        ("power-of-Z_2 kernel dimensions", power_z2_dimensions()),
        ("projection amalgam counts and tight bound", projection_amalgam_counts()),
        ("constant amalgam kernel bound", constant_amalgam_bound()),
        ("negative squares equal ker(M+I)", with_corpus(&|c| negative_squares_identity(c, corpus_time))),
        ("operator identities iff quotient conditions", operator_identities_iff_conditions()),
        ("Gram and dual realizations agree", with_corpus(&cross_engine)),
        ("transfer along the separative projection", separative_transfer()),
        ("character enumeration completeness", enumeration_completeness()),
        ("degenerate shift has a kernel", degenerate_kernel()),
    ];
    results
        .into_iter()
        .enumerate()
        .map(|(i, (name, outcome))| CriterionResult { number: i + 1, name, outcome })
        .collect()
}
