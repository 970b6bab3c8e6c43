//! The seven commands. Each returns an [`Outcome`] whose report is rendered by
//! the caller; nothing here prints.

use std::fs;
use std::path::{Path, PathBuf};

use pontryagin_core::analysis::{
    self, analyze, Admissibility, FuzzConfig, FuzzTable, Instance, MeasureSource, PhiRecord,
};
use pontryagin_core::catalog;
use pontryagin_core::linalg::Tolerance;
use pontryagin_core::pdfun::{moment_function, random_measure, DualMeasure};
use pontryagin_core::structure::archimedean_components;
use pontryagin_core::StarSemigroup;
use serde_json::{json, Value};

use crate::formats::measure::{character_digest, character_listing, parse_measure, sha256_hex, write_measure};
use crate::formats::sgp::{parse_sgp, write_sgp};
use crate::report::num;
use crate::{suite, CliError, Outcome};

/// Prefix selecting a built-in instance instead of a file, as in `catalog:z2^3`.
pub const CATALOG_PREFIX: &str = "catalog:";

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Parses a `.sgp` file or looks up a `catalog:` name; no law checking.
pub fn load_semigroup(arg: &str) -> Result<(String, StarSemigroup), CliError> {
    if let Some(name) = arg.strip_prefix(CATALOG_PREFIX) {
        return catalog::by_name(name)
            .map(|s| (name.to_owned(), s))
            .ok_or_else(|| CliError::Input(format!("no catalog instance named `{name}`")));
    }
    let path = PathBuf::from(arg);
    let text = read(&path)?;
    let s = parse_sgp(&text).map_err(|source| CliError::Format {
        path: path.clone(),
        source,
    })?;
    let name = path.file_stem().map_or_else(|| arg.to_owned(), |n| n.to_string_lossy().into_owned());
    Ok((name, s))
}

/// Loads and validates; law violations are input errors here.
pub fn load_instance(arg: &str) -> Result<Instance, CliError> {
    let (name, s) = load_semigroup(arg)?;
    let report = s.validate();
    if !report.is_valid() {
        return Err(CliError::Input(format!(
            "{arg}: not a commutative *-semigroup: {}",
            report.describe(&s).join("; ")
        )));
    }
    Ok(Instance::new(name, s)?)
}

fn instance_hash(s: &StarSemigroup) -> String {
    sha256_hex(write_sgp(s).as_bytes())
}

pub fn validate(arg: &str) -> Result<Outcome, CliError> {
    let (name, s) = load_semigroup(arg)?;
    let report = s.validate();
    let valid = report.is_valid();
    Ok(Outcome {
        report: json!({
            "instance": name,
            "elements": s.len(),
            "valid": valid,
            "violations": report.describe(&s),
        }),
        success: valid,
    })
}

pub fn characters(arg: &str) -> Result<Outcome, CliError> {
    let inst = load_instance(arg)?;
    let listing = character_listing(&inst.semigroup, &inst.characters);
    Ok(Outcome {
        report: json!({
            "instance": inst.name,
            "count": inst.characters.len(),
            "character_hash": sha256_hex(listing.as_bytes()),
            "listing": listing.lines().collect::<Vec<_>>(),
        }),
        success: true,
    })
}

fn labels(s: &StarSemigroup, class: &[pontryagin_core::ElementId]) -> Vec<String> {
    class.iter().map(|&e| s.name(e).to_owned()).collect()
}

pub fn quotient(arg: &str) -> Result<Outcome, CliError> {
    let inst = load_instance(arg)?;
    let q = &inst.quotient;
    let s = &inst.semigroup;
    let classes: Vec<Value> = q
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| json!({"class": q.quotient.name(pontryagin_core::ElementId(i)), "members": labels(s, c)}))
        .collect();
    let sgp = write_sgp(&q.quotient);
    Ok(Outcome {
        report: json!({
            "instance": inst.name,
            "size": q.quotient.len(),
            "separative": q.is_trivial(),
            "classes": classes,
            "quotient": sgp.lines().collect::<Vec<_>>(),
        }),
        success: true,
    })
}

pub fn components(arg: &str) -> Result<Outcome, CliError> {
    let inst = load_instance(arg)?;
    let s = &inst.semigroup;
    let dec = archimedean_components(s)?;
    let k = dec.component_count();
    let comps: Vec<Value> = dec
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| json!({"component": i, "members": labels(s, c)}))
        .collect();
    let chain = (0..k).all(|i| (0..k).all(|j| dec.leq(i, j) || dec.leq(j, i)));
    let table: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| dec.add(i, j)).collect()).collect();
    let edges: Vec<[usize; 2]> = dec.hasse_edges().into_iter().map(|(i, j)| [i, j]).collect();
    Ok(Outcome {
        report: json!({
            "instance": inst.name,
            "count": k,
            "components": comps,
            "addition": table,
            "covers": edges,
            "chain": chain,
        }),
        success: true,
    })
}

/// Where the measure of `analyze` comes from.
pub enum MeasureArg {
    File(PathBuf),
    Random { atoms: usize, seed: u64 },
}

fn record_json(r: &PhiRecord) -> Value {
    json!({
        "rank": r.rank,
        "kernel_minus": r.kernel_minus,
        "kernel_plus": r.kernel_plus,
        "kernel_zero": r.kernel_zero,
        "negative_squares": r.negative_squares,
        "selfadjoint": r.selfadjoint,
        "involutive": r.involutive,
        "residual": num(r.residual),
        "minus_atoms": r.minus_atoms,
        "identities": r.identities.map(|i| json!({
            "star_invariant": i.star_invariant,
            "period_two": i.period_two,
            "norm_preserving": i.norm_preserving,
        })),
        "dual": r.dual.map(|d| json!({
            "dim": d.dim,
            "kernel_minus": d.kernel_minus,
            "kernel_plus": d.kernel_plus,
            "invariance_residual": num(d.invariance_residual),
        })),
        "spectrum": r.spectrum.iter().map(|&x| num(x)).collect::<Vec<_>>(),
    })
}

fn measure_json(mu: &DualMeasure) -> Vec<Value> {
    mu.atoms()
        .iter()
        .map(|a| json!({"character": a.character, "weight": num(a.weight)}))
        .collect()
}

pub fn analyze_cmd(arg: &str, u: &str, measure: &MeasureArg, tol: Tolerance) -> Result<Outcome, CliError> {
    let inst = load_instance(arg)?;
    let s = &inst.semigroup;
    let uid = s
        .find(u)
        .ok_or_else(|| CliError::Input(format!("unknown element label `{u}`; elements are {}", s.names().join(" "))))?;
    let digest = character_digest(s, &inst.characters);
    let n_chars = inst.characters.len();
    let mu = match measure {
        MeasureArg::File(path) => parse_measure(&read(path)?, n_chars, &digest).map_err(|source| CliError::Format {
            path: path.clone(),
            source,
        })?,
        MeasureArg::Random { atoms, seed } => random_measure(n_chars, *atoms, *seed)?,
    };
    let phi = moment_function(s, &inst.characters, &mu);
    let report = analyze(&inst, uid, &[phi], tol)?;
    let failures: Vec<String> = report
        .failures()
        .into_iter()
        .map(|(_, c)| c.to_string())
        .collect();
    let success = failures.is_empty();
    let c = report.counts;
    Ok(Outcome {
        report: json!({
            "instance": inst.name,
            "instance_hash": instance_hash(s),
            "character_hash": digest,
            "u": report.u_label,
            "conditions": {
                "twice_is_zero": report.conditions.twice_is_zero,
                "star_fixed": report.conditions.star_fixed,
            },
            "counts": {
                "moved": c.moved,
                "half_bound": c.moved / 2,
                "minus_one": c.minus_one,
                "raw_moved": c.raw_moved,
            },
            "measure": measure_json(&mu),
            "record": record_json(&report.records[0]),
            "witness": report.witness.map(|w| json!({
                "character": w.character,
                "selfadjoint": w.selfadjoint,
                "involutive": w.involutive,
            })),
            "degenerate": report.degenerate,
            "verdict": report.verdict.name(),
            "failures": failures,
            "assertions_hold": success,
        }),
        success,
    })
}

pub fn examples() -> Outcome {
    let results = suite::run();
    let success = results.iter().all(|r| r.passed());
    let lines: Vec<String> = results.iter().map(|r| r.line()).collect();
    Outcome {
        report: json!({
            "criteria": lines,
            "passed": results.iter().filter(|r| r.passed()).count(),
            "failed": results.iter().filter(|r| !r.passed()).count(),
        }),
        success,
    }
}

pub struct FuzzArgs<'a> {
    pub instances: &'a [String],
    pub trials: usize,
    pub seed: u64,
    pub tol: Tolerance,
    pub dump: Option<&'a Path>,
    pub inject_fault: bool,
}

fn source_json(src: &MeasureSource) -> Value {
    match src {
        MeasureSource::Random { seed } => json!({"random": seed}),
        MeasureSource::UniformMinus => json!("uniform-minus"),
        MeasureSource::Dirac => json!("dirac"),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// One directory per violation: the instance, the measure and a case summary.
fn dump_cases(dir: &Path, instances: &[Instance], table: &FuzzTable) -> Result<(), CliError> {
    let mkdir = |p: &Path| {
        fs::create_dir_all(p).map_err(|source| CliError::Io {
            path: p.to_owned(),
            source,
        })
    };
    mkdir(dir)?;
    for (i, v) in table.violations.iter().enumerate() {
        let Some(inst) = instances.iter().find(|inst| inst.name == v.instance) else {
            continue;
        };
        let case = dir.join(format!("case-{i:04}"));
        mkdir(&case)?;
        write_file(&case.join("instance.sgp"), &write_sgp(&inst.semigroup))?;
        if let Some(mu) = &v.measure {
            let digest = character_digest(&inst.semigroup, &inst.characters);
            write_file(&case.join("measure.txt"), &write_measure(mu, &digest))?;
        }
        let info = json!({
            "instance": v.instance,
            "u": v.u_label,
            "check": v.check.name(),
            "source": source_json(&v.source),
            "detail": v.detail,
        });
        write_file(&case.join("case.json"), &crate::report::render_json(&info))?;
    }
    Ok(())
}

pub fn fuzz(args: &FuzzArgs<'_>) -> Result<Outcome, CliError> {
    let instances: Vec<Instance> = if args.instances.is_empty() {
        catalog::catalog()
            .into_iter()
            .map(|(name, s)| Instance::new(name, s))
            .collect::<Result<_, _>>()?
    } else {
        args.instances.iter().map(|a| load_instance(a)).collect::<Result<_, _>>()?
    };
    let cfg = FuzzConfig {
        trials: args.trials,
        seed: args.seed,
        tol: args.tol,
        inject_negative_squares_off_by_one: args.inject_fault,
    };
    let table = analysis::fuzz(&instances, &cfg);
    if let Some(dir) = args.dump {
        dump_cases(dir, &instances, &table)?;
    }
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            json!({
                "instance": r.instance,
                "u": r.u_label,
                "admissibility": match r.admissibility {
                    Admissibility::Krein => "krein",
                    Admissibility::Degenerate => "degenerate",
                },
                "verdict": r.verdict.name(),
                "moved": r.counts.moved,
                "minus_one": r.counts.minus_one,
                "raw_moved": r.counts.raw_moved,
                "measures": r.measures,
                "max_kernel_minus": r.max_kernel_minus,
                "violations": r.violations,
            })
        })
        .collect();
    let violations: Vec<Value> = table
        .violations
        .iter()
        .map(|v| {
            json!({
                "instance": v.instance,
                "u": v.u_label,
                "check": v.check.name(),
                "source": source_json(&v.source),
                "measure": v.measure.as_ref().map(measure_json),
                "detail": v.detail,
            })
        })
        .collect();
    Ok(Outcome {
        report: json!({
            "trials": args.trials,
            "seed": args.seed,
            "rows": rows,
            "violation_count": table.violations.len(),
            "violations": violations,
        }),
        success: table.is_clean(),
    })
}
