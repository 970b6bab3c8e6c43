use std::collections::BTreeSet;

use num_complex::Complex64;
use proptest::prelude::*;

use pontryagin_core::analysis::{
    admissible_elements, analyze, fuzz, fuzz_measure, krein_conditions, trial_seed, Admissibility, FuzzConfig,
    Instance, Verdict,
};
use pontryagin_core::catalog;
use pontryagin_core::characters::{enumerate_characters, is_separative, UnitValue};
use pontryagin_core::linalg::{inertia, Matrix, Tolerance};
use pontryagin_core::pdfun::{
    check_hermitian, is_positive_definite, moment_function, random_measure, DualMeasure,
};
use pontryagin_core::rkhs::{adjoint_defect, build_gram, involution_check, kernel_dimension, selfadjoint_check, shift_operator};
use pontryagin_core::semigroup::Involution;
use pontryagin_core::structure::archimedean_components;
use pontryagin_core::{ElementId, Homomorphism, StarSemigroup};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn instances() -> Vec<Instance> {
    catalog::catalog()
        .into_iter()
        .map(|(n, s)| Instance::new(n, s).unwrap())
        .collect()
}

fn involution() -> impl Strategy<Value = Involution> {
    prop_oneof![Just(Involution::Identity), Just(Involution::Negation)]
}

/// Amalgams over a first-coordinate projection or a constant map.
fn amalgam_inputs() -> impl Strategy<Value = StarSemigroup> {
    prop_oneof![
        (1usize..=3).prop_map(|m| {
            let s = StarSemigroup::power_z2(m).unwrap();
            let t = StarSemigroup::cyclic(2, Involution::Identity).unwrap();
            let h = Homomorphism::new(&s, &t, s.elements().map(|e| ElementId(e.0 >> (m - 1))).collect()).unwrap();
            StarSemigroup::amalgam(&s, &t, &h).unwrap()
        }),
        (1usize..=6, involution(), 1usize..=6).prop_map(|(n, inv, top)| {
            let s = StarSemigroup::cyclic(n, inv).unwrap();
            let t = StarSemigroup::truncated_nat(top).unwrap();
            let h = Homomorphism::constant(&s, &t, ElementId(0)).unwrap();
            StarSemigroup::amalgam(&s, &t, &h).unwrap()
        }),
        (1usize..=4, 1usize..=4).prop_map(|(a, b)| {
            let s = StarSemigroup::max_nat(a).unwrap();
            let t = StarSemigroup::max_nat(b).unwrap();
            let h = Homomorphism::constant(&s, &t, ElementId(0)).unwrap();
            StarSemigroup::amalgam(&s, &t, &h).unwrap()
        }),
    ]
}

fn separative() -> impl Strategy<Value = StarSemigroup> {
    prop_oneof![
        (1usize..=3).prop_map(|m| StarSemigroup::power_z2(m).unwrap()),
        (1usize..=6).prop_map(|n| StarSemigroup::cyclic(n, Involution::Negation).unwrap()),
        (1usize..=5).prop_map(|t| StarSemigroup::max_nat(t).unwrap()),
        Just(catalog::projection_amalgam()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructors_validate(n in 1usize..=12, inv in involution(), m in 1usize..=4, top in 1usize..=8) {
        prop_assert!(StarSemigroup::cyclic(n, inv).unwrap().validate().is_valid());
        prop_assert!(StarSemigroup::power_z2(m).unwrap().validate().is_valid());
        prop_assert!(StarSemigroup::truncated_nat(top).unwrap().validate().is_valid());
        prop_assert!(StarSemigroup::max_nat(top).unwrap().validate().is_valid());
        let p = StarSemigroup::direct_product(
            &StarSemigroup::cyclic(n.min(6), inv).unwrap(),
            &StarSemigroup::truncated_nat(top).unwrap(),
        ).unwrap();
        prop_assert!(p.validate().is_valid());
    }

    #[test]
    fn amalgams_are_valid(s in amalgam_inputs()) {
        prop_assert!(s.validate().is_valid());
        prop_assert!(s.zero().is_some());
    }

    #[test]
    fn amalgams_of_separative_parts_are_separative(a in separative(), b in separative()) {
        let h = Homomorphism::constant(&a, &b, b.zero().unwrap()).unwrap();
        let u = StarSemigroup::amalgam(&a, &b, &h).unwrap();
        prop_assume!(u.len() <= 24);
        prop_assert!(is_separative(&u, &enumerate_characters(&u)));
    }

    #[test]
    fn product_character_count(n1 in 1usize..=5, i1 in involution(), n2 in 1usize..=5, i2 in involution()) {
        let a = StarSemigroup::cyclic(n1, i1).unwrap();
        let b = StarSemigroup::cyclic(n2, i2).unwrap();
        let p = StarSemigroup::direct_product(&a, &b).unwrap();
        prop_assert_eq!(
            enumerate_characters(&p).len(),
            enumerate_characters(&a).len() * enumerate_characters(&b).len()
        );
    }

    #[test]
    fn moment_functions_are_additive(k1 in 1usize..=6, k2 in 1usize..=6, seed in any::<u64>()) {
        let s = catalog::projection_amalgam();
        let chars = enumerate_characters(&s);
        let a = random_measure(6, k1, seed).unwrap();
        let b = random_measure(6, k2, seed.wrapping_add(1)).unwrap();
        let mut merged: Vec<_> = a.atoms().to_vec();
        for atom in b.atoms() {
            match merged.iter_mut().find(|x| x.character == atom.character) {
                Some(x) => x.weight += atom.weight,
                None => merged.push(*atom),
            }
        }
        let sum = moment_function(&s, &chars, &DualMeasure::new(merged, 6).unwrap());
        let (fa, fb) = (moment_function(&s, &chars, &a), moment_function(&s, &chars, &b));
        for e in s.elements() {
            let expect = fa.at(e) + fb.at(e);
            prop_assert!((sum.at(e) - expect).norm() <= 1e-12 * expect.norm().max(1.0));
        }
    }

    #[test]
    fn random_measures_are_positive_definite(idx in 0usize..19, seed in any::<u64>()) {
        let (_, s) = catalog::catalog().swap_remove(idx);
        let chars = enumerate_characters(&s);
        let mu = fuzz_measure(chars.len(), seed).unwrap();
        let phi = moment_function(&s, &chars, &mu);
        prop_assert!(is_positive_definite(&s, &phi, tol()).unwrap().positive_definite);
        // distinct atoms on a semigroup with zero span a space of dimension |supp μ|
        prop_assert_eq!(build_gram(&s, &phi, tol()).unwrap().rank, mu.len());
    }
}

#[test]
fn characters_are_linearly_independent() {
    for inst in instances() {
        let n = inst.semigroup.len();
        let k = inst.characters.len();
        let v = Matrix::from_fn(k, n, |c, e| inst.characters[c].value(ElementId(e)).to_complex());
        let (inr, _) = inertia(&(&v * &v.adjoint()), tol());
        assert_eq!(inr.positive, k, "{}", inst.name);
    }
}

#[test]
fn quotient_characters_correspond() {
    for inst in instances() {
        let q = &inst.quotient;
        assert_eq!(q.quotient_characters.len(), inst.characters.len(), "{}", inst.name);
        let pulled: BTreeSet<_> = q.quotient_characters.iter().map(|c| c.compose(&q.projection)).collect();
        let direct: BTreeSet<_> = inst.characters.iter().cloned().collect();
        assert_eq!(pulled, direct, "{}", inst.name);
    }
}

#[test]
fn identity_involution_gives_real_values() {
    let real = [UnitValue::Zero, UnitValue::ONE, UnitValue::MINUS_ONE];
    for inst in instances() {
        let s = &inst.semigroup;
        if s.elements().all(|e| s.star(e) == e) {
            for c in &inst.characters {
                assert!(c.values().iter().all(|v| real.contains(v)), "{}", inst.name);
            }
        }
    }
}

#[test]
fn component_laws() {
    for inst in instances() {
        let s = &inst.semigroup;
        let dec = archimedean_components(s).unwrap();
        for i in 0..dec.component_count() {
            assert!(dec.leq(i, i));
            for j in 0..dec.component_count() {
                assert_eq!(dec.add(i, j), dec.add(j, i));
            }
        }
        if !is_separative(s, &inst.characters) {
            continue;
        }
        for class in &dec.components {
            for &a in class {
                for &b in class {
                    for &c in class {
                        if s.add(a, c) == s.add(b, c) {
                            assert_eq!(a, b, "{}: component not cancellative", inst.name);
                        }
                    }
                }
            }
        }
        let zero = s.zero().unwrap();
        for u in s.elements().filter(|&u| s.add(u, u) == zero && s.star(u) == u) {
            for i in 0..dec.component_count() {
                let fixes_some = dec.components[i].iter().any(|&x| s.add(u, x) == x);
                if !fixes_some {
                    continue;
                }
                for j in (0..dec.component_count()).filter(|&j| dec.leq(i, j)) {
                    assert!(
                        dec.components[j].iter().all(|&x| s.add(u, x) == x),
                        "{}: u={} fixes a point of component {i} but not all of {j}",
                        inst.name,
                        s.name(u)
                    );
                }
            }
        }
    }
}

#[test]
fn operator_properties_over_catalog() {
    for (ii, inst) in instances().iter().enumerate() {
        let s = &inst.semigroup;
        for u in s.elements() {
            let cond = krein_conditions(inst, u).unwrap();
            for t in 0..6u64 {
                let mu = fuzz_measure(inst.characters.len(), trial_seed(11, &[ii as u64, u.0 as u64, t])).unwrap();
                let phi = moment_function(s, &inst.characters, &mu);
                let real = build_gram(s, &phi, tol()).unwrap();
                for a in s.elements() {
                    for b in s.elements() {
                        // ⟨K_a, K_b⟩ = K_a(b) = φ(a* + b)
                        let expect = phi.at(s.add(s.star(a), b));
                        assert!((real.inner(a, b) - expect).norm() < 1e-9, "{}", inst.name);
                    }
                }
                if cond.star_fixed {
                    assert!(check_hermitian(s, &phi.translate(s, u), tol()).is_ok(), "{}", inst.name);
                }
                let m = shift_operator(s, &real, u).unwrap().matrix;
                if cond.hold() {
                    assert!(selfadjoint_check(&m) && involution_check(&m), "{} u={}", inst.name, s.name(u));
                    let sum = kernel_dimension(&m, -1.0, tol()) + kernel_dimension(&m, 1.0, tol());
                    assert_eq!(sum, real.rank, "{} u={}", inst.name, s.name(u));
                }
                assert!(adjoint_defect(s, &real, u).unwrap() < 1e-9, "{} u={}", inst.name, s.name(u));
            }
        }
    }
}

#[test]
fn verdicts_follow_conditions() {
    for inst in instances() {
        let s = &inst.semigroup;
        let all = DualMeasure::uniform(0..inst.characters.len(), inst.characters.len()).unwrap();
        let phi = moment_function(s, &inst.characters, &all);
        for u in s.elements() {
            let r = analyze(&inst, u, std::slice::from_ref(&phi), tol()).unwrap();
            assert!(r.counts.raw_moved >= r.counts.moved, "{}", inst.name);
            assert_eq!(r.verdict == Verdict::PontryaginFundamentalSymmetry, r.conditions.hold(), "{}", inst.name);
            assert!(r.assertions_hold(), "{} u={}: {:?}", inst.name, s.name(u), r.failures());
        }
    }
    let z4 = Instance::new("z4", StarSemigroup::cyclic(4, Involution::Identity).unwrap()).unwrap();
    let r = analyze(&z4, ElementId(2), &[], tol()).unwrap();
    assert!(r.counts.raw_moved > r.counts.moved);
}

#[test]
fn admissible_scan_includes_degenerate_elements() {
    let inst = Instance::new("amalgam-pi", catalog::projection_amalgam()).unwrap();
    let adm = admissible_elements(&inst).unwrap();
    let kinds: Vec<_> = adm.iter().map(|&(u, k)| (inst.semigroup.name(u).to_string(), k)).collect();
    assert!(kinds.contains(&("0".into(), Admissibility::Degenerate)));
    assert!(kinds.contains(&("1".into(), Admissibility::Degenerate)));
    assert_eq!(kinds.iter().filter(|(_, k)| *k == Admissibility::Krein).count(), 4);
}

#[test]
fn catalog_fuzz_is_clean_and_reproducible() {
    let insts = instances();
    let cfg = FuzzConfig { trials: 50, seed: 0, ..FuzzConfig::default() };
    let table = fuzz(&insts, &cfg);
    assert!(table.is_clean(), "{:?}", &table.violations[..table.violations.len().min(3)]);
    assert!(table.rows.iter().all(|r| r.max_kernel_minus == r.counts.minus_one));
    let again = fuzz(&insts[..4], &cfg);
    assert_eq!(again.rows[..], table.rows[..again.rows.len()]);
}

#[test]
fn fuzz_detects_an_injected_off_by_one() {
    let insts = instances();
    let cfg = FuzzConfig {
        trials: 3,
        inject_negative_squares_off_by_one: true,
        ..FuzzConfig::default()
    };
    let table = fuzz(&insts[..3], &cfg);
    assert!(!table.is_clean());
    let v = &table.violations[0];
    assert!(v.measure.is_some());
}

#[test]
fn raw_tables_are_gated() {
    let s = StarSemigroup::cyclic(2, Involution::Identity).unwrap();
    let phi = pontryagin_core::pdfun::PDTable::raw(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    let verdict = is_positive_definite(&s, &phi, tol()).unwrap();
    assert!(!verdict.positive_definite);
    assert!((verdict.min_eigenvalue + 1.0).abs() < 1e-12);
}
