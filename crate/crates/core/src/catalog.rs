//! Named instances used by the test suites and the CLI.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::semigroup::{ElementId, Homomorphism, Involution, StarSemigroup};

/// `U(Z_2², Z_2, π)` with `π(x, y) = x`. Labels `(x,y)` on the first part,
/// `0`, `1` on the second; the zero is `(0,0)`.
pub fn projection_amalgam() -> StarSemigroup {
    let s = StarSemigroup::power_z2(2).expect("Z_2^2");
    let t = StarSemigroup::cyclic(2, Involution::Identity).expect("Z_2");
    let pi = Homomorphism::new(&s, &t, s.elements().map(|e| ElementId(e.0 >> 1)).collect())
        .expect("first-coordinate projection");
    StarSemigroup::amalgam(&s, &t, &pi).expect("amalgam")
}

/// `U(Z_2, {0..top}, h_0)` with `h_0 ≡ 0`. Labels are `S.x` and `T.n`; the
/// zero is `S.0`.
pub fn constant_amalgam(top: usize) -> StarSemigroup {
    let s = StarSemigroup::cyclic(2, Involution::Identity).expect("Z_2");
    let t = StarSemigroup::truncated_nat(top).expect("truncated");
    let h0 = Homomorphism::constant(&s, &t, ElementId(0)).expect("h_0");
    StarSemigroup::amalgam(&s, &t, &h0).expect("amalgam")
}

/// `Z_2 × {0..top}` with saturating addition.
pub fn z2_times_truncated(top: usize) -> StarSemigroup {
    let z2 = StarSemigroup::cyclic(2, Involution::Identity).expect("Z_2");
    let t = StarSemigroup::truncated_nat(top).expect("truncated");
    StarSemigroup::direct_product(&z2, &t).expect("product")
}

/// `Z_2 × {0..top}` with `max` on the second factor.
pub fn z2_times_max(top: usize) -> StarSemigroup {
    let z2 = StarSemigroup::cyclic(2, Involution::Identity).expect("Z_2");
    let t = StarSemigroup::max_nat(top).expect("max");
    StarSemigroup::direct_product(&z2, &t).expect("product")
}

/// The standard instance list, in a fixed order.
pub fn catalog() -> Vec<(String, StarSemigroup)> {
    let mut out = Vec::new();
    for m in 1..=3 {
        out.push((format!("z2^{m}"), StarSemigroup::power_z2(m).expect("power")));
    }
    for n in [3, 4] {
        for (tag, inv) in [("id", Involution::Identity), ("neg", Involution::Negation)] {
            out.push((format!("z{n}-{tag}"), StarSemigroup::cyclic(n, inv).expect("cyclic")));
        }
    }
    for t in 1..=4 {
        out.push((format!("trunc{t}"), StarSemigroup::truncated_nat(t).expect("truncated")));
    }
    for t in 1..=4 {
        out.push((format!("max{t}"), StarSemigroup::max_nat(t).expect("max")));
    }
    out.push(("amalgam-pi".into(), projection_amalgam()));
    out.push(("amalgam-h0-4".into(), constant_amalgam(4)));
    out.push(("z2xtrunc3".into(), z2_times_truncated(3)));
    out.push(("z2xmax3".into(), z2_times_max(3)));
    out
}

/// Looks up a catalog instance or a parameterized family member such as
/// `amalgam-h0-8` or `max6`.
pub fn by_name(name: &str) -> Option<StarSemigroup> {
    if let Some((_, s)) = catalog().into_iter().find(|(n, _)| n == name) {
        return Some(s);
    }
    let param = |prefix: &str| name.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
    let fits = |n: usize, f: fn(usize) -> StarSemigroup| (1..=31).contains(&n).then(|| f(n));
    if let Some(t) = param("amalgam-h0-") {
        return fits(t, constant_amalgam);
    }
    if let Some(t) = param("z2xtrunc") {
        return fits(t, z2_times_truncated);
    }
    if let Some(t) = param("z2xmax") {
        return fits(t, z2_times_max);
    }
    if let Some(m) = param("z2^") {
        return StarSemigroup::power_z2(m).ok();
    }
    if let Some(t) = param("trunc") {
        return StarSemigroup::truncated_nat(t).ok();
    }
    if let Some(t) = param("max") {
        return StarSemigroup::max_nat(t).ok();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_instances_are_valid() {
        let all = catalog();
        assert_eq!(all.len(), 19);
        for (name, s) in &all {
            assert!(s.validate().is_valid(), "{name}");
            assert!(s.zero().is_some(), "{name}");
        }
    }

    #[test]
    fn labels() {
        let s = projection_amalgam();
        assert_eq!(s.names(), ["(0,0)", "(0,1)", "(1,0)", "(1,1)", "0", "1"]);
        assert_eq!(s.zero(), s.find("(0,0)"));
        let (a, b) = (s.find("(1,1)").unwrap(), s.find("0").unwrap());
        assert_eq!(s.add(a, b), s.find("1").unwrap());

        let s = constant_amalgam(3);
        assert_eq!(s.zero(), s.find("S.0"));
        assert_eq!(s.len(), 6);
        assert_eq!(z2_times_truncated(3).len(), 8);
        assert_eq!(z2_times_max(3).len(), 8);
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(by_name("amalgam-h0-8").unwrap().len(), 11);
        assert_eq!(by_name("z4-neg").unwrap().len(), 4);
        assert_eq!(by_name("max6").unwrap().len(), 7);
        assert!(by_name("nonsense").is_none());
        assert!(by_name("amalgam-h0-0").is_none());
    }
}
