//! Exact enumeration of the dual semigroup and the greatest *-separative
//! quotient.
//!
//! On a finite semigroup every character value `x = χ(s)` satisfies
//! `x^m = x^(m+p)` where `m`, `p` are the eventual index and period of `s`,
//! so `x` is `0` or a `p`-th root of unity. Values are stored as reduced
//! angle fractions; nothing in this module compares floats.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::semigroup::{ElementId, Homomorphism, StarSemigroup};

/// `0` or `e^{2πi·num/den}` with `0 ≤ num < den` and the fraction reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnitValue {
    Zero,
    Root { num: u32, den: u32 },
}

const fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl UnitValue {
    pub const ONE: Self = UnitValue::Root { num: 0, den: 1 };
    pub const MINUS_ONE: Self = UnitValue::Root { num: 1, den: 2 };

    /// The root of unity at angle `num/den` turns, reduced mod 1.
    pub fn root(num: u64, den: u64) -> Self {
        assert!(den > 0, "denominator must be positive");
        let num = num % den;
        let g = gcd(num, den);
        let (num, den) = (num / g, den / g);
        UnitValue::Root {
            num: u32::try_from(num).expect("root of unity order overflow"),
            den: u32::try_from(den).expect("root of unity order overflow"),
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, UnitValue::Zero)
    }

    /// Multiplicative order for roots, `None` for zero.
    pub fn order(self) -> Option<u32> {
        match self {
            UnitValue::Zero => None,
            UnitValue::Root { den, .. } => Some(den),
        }
    }

    pub fn mul(self, other: Self) -> Self {
        match (self, other) {
            (UnitValue::Root { num: a, den: b }, UnitValue::Root { num: c, den: d }) => {
                let (a, b, c, d) = (a as u64, b as u64, c as u64, d as u64);
                Self::root(a * d + c * b, b * d)
            }
            _ => UnitValue::Zero,
        }
    }

    pub fn conj(self) -> Self {
        match self {
            UnitValue::Zero => UnitValue::Zero,
            UnitValue::Root { num, den } => Self::root((den - num) as u64, den as u64),
        }
    }

    pub fn pow(self, k: u32) -> Self {
        (0..k).fold(Self::ONE, |acc, _| acc.mul(self))
    }

    fn sort_key(self) -> (bool, u32, u32) {
        match self {
            UnitValue::Zero => (true, 0, 0),
            UnitValue::Root { num, den } => (false, den, num),
        }
    }

    /// Numeric image `cos(2πa/b) + i·sin(2πa/b)`; exact at quarter turns.
    pub fn to_complex(self) -> Complex64 {
        match self {
            UnitValue::Zero => Complex64::new(0.0, 0.0),
            UnitValue::Root { num, den } => {
                let (num, den) = (num as u64, den as u64);
                if (4 * num) % den == 0 {
                    return match 4 * num / den {
                        0 => Complex64::new(1.0, 0.0),
                        1 => Complex64::new(0.0, 1.0),
                        2 => Complex64::new(-1.0, 0.0),
                        _ => Complex64::new(0.0, -1.0),
                    };
                }
                let angle = 2.0 * core::f64::consts::PI * (num as f64) / (den as f64);
                Complex64::new(Float::cos(angle), Float::sin(angle))
            }
        }
    }
}

impl PartialOrd for UnitValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: roots before zero, then by denominator, then numerator.
impl Ord for UnitValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitValue::Zero => f.write_str("0"),
            UnitValue::Root { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

/// A character, stored as its value at every element of the ambient instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    values: Vec<UnitValue>,
}

impl Character {
    /// Wraps a value vector after checking the character laws on `s`.
    pub fn new(s: &StarSemigroup, values: Vec<UnitValue>) -> Result<Self> {
        let chi = Self { values };
        if chi.values.len() != s.len() {
            return Err(Error::InvalidArgument("character length differs from carrier"));
        }
        if !chi.is_character_of(s) {
            return Err(Error::InvalidArgument("values are not a character"));
        }
        Ok(chi)
    }

    /// Multiplicative, star-compatible, nonzero, and 1 at the zero if present.
    pub fn is_character_of(&self, s: &StarSemigroup) -> bool {
        if self.values.len() != s.len() || self.values.iter().all(|v| v.is_zero()) {
            return false;
        }
        if let Some(z) = s.zero() {
            if self.value(z) != UnitValue::ONE {
                return false;
            }
        }
        s.elements().all(|a| {
            self.value(s.star(a)) == self.value(a).conj()
                && s
                    .elements()
                    .all(|b| self.value(s.add(a, b)) == self.value(a).mul(self.value(b)))
        })
    }

    #[inline]
    pub fn value(&self, e: ElementId) -> UnitValue {
        self.values[e.0]
    }

    pub fn values(&self) -> &[UnitValue] {
        &self.values
    }

    pub fn to_numeric(&self) -> Vec<Complex64> {
        self.values.iter().map(|v| v.to_complex()).collect()
    }

    /// Pulls back along `h`: `(χ ∘ h)(s) = χ(h(s))`.
    pub fn compose(&self, h: &Homomorphism) -> Self {
        Self {
            values: h.as_slice().iter().map(|&e| self.value(e)).collect(),
        }
    }
}

/// Eventual index `m` and period `p` of `s`: `m·s = (m+p)·s` with both minimal.
pub fn index_and_period(s: &StarSemigroup, e: ElementId) -> (usize, usize) {
    let mut first_seen = vec![0usize; s.len()];
    let mut x = e;
    let mut k = 1;
    loop {
        if first_seen[x.0] != 0 {
            let m = first_seen[x.0];
            return (m, k - m);
        }
        first_seen[x.0] = k;
        x = s.add(x, e);
        k += 1;
    }
}

/// Whether `v` is a possible character value at an element of period `p`.
fn admissible(v: UnitValue, period: usize) -> bool {
    match v {
        UnitValue::Zero => true,
        UnitValue::Root { den, .. } => period.is_multiple_of(den as usize),
    }
}

struct Search<'a> {
    s: &'a StarSemigroup,
    periods: Vec<usize>,
    assigned: Vec<Option<UnitValue>>,
    order: Vec<ElementId>,
    trail: Vec<usize>,
    found: Vec<Character>,
}

impl Search<'_> {
    /// Assigns `v` at `e` and closes under the table and the involution.
    /// On conflict the partial work stays on the trail for the caller to undo.
    fn assign(&mut self, e: ElementId, v: UnitValue) -> bool {
        let mut queue = vec![(e, v)];
        while let Some((x, xv)) = queue.pop() {
            match self.assigned[x.0] {
                Some(old) if old == xv => continue,
                Some(_) => return false,
                None => {}
            }
            if !admissible(xv, self.periods[x.0]) {
                return false;
            }
            self.assigned[x.0] = Some(xv);
            self.trail.push(x.0);
            queue.push((self.s.star(x), xv.conj()));
            for y in self.s.elements() {
                if let Some(yv) = self.assigned[y.0] {
                    queue.push((self.s.add(x, y), xv.mul(yv)));
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.assigned[x] = None;
        }
    }

    fn run(&mut self, depth: usize) {
        let Some(&e) = self.order[depth..]
            .iter()
            .find(|e| self.assigned[e.0].is_none())
        else {
            let values: Vec<UnitValue> = self.assigned.iter().map(|v| v.unwrap()).collect();
            if values.iter().any(|v| !v.is_zero()) {
                self.found.push(Character { values });
            }
            return;
        };
        let p = self.periods[e.0];
        let candidates =
            core::iter::once(UnitValue::Zero).chain((0..p).map(|a| UnitValue::root(a as u64, p as u64)));
        for v in candidates {
            let mark = self.trail.len();
            if self.assign(e, v) {
                self.run(depth + 1);
            }
            self.undo_to(mark);
        }
    }
}

/// All characters of `s`, sorted lexicographically by value vector.
pub fn enumerate_characters(s: &StarSemigroup) -> Vec<Character> {
    let n = s.len();
    let periods = s.elements().map(|e| index_and_period(s, e).1).collect();

    let mut degree = vec![0usize; n];
    for a in s.elements() {
        for b in s.elements() {
            let c = s.add(a, b);
            degree[a.0] += 1;
            if b != a {
                degree[b.0] += 1;
            }
            if c != a && c != b {
                degree[c.0] += 1;
            }
        }
    }
    let mut order: Vec<ElementId> = s.elements().collect();
    order.sort_by_key(|e| (core::cmp::Reverse(degree[e.0]), e.0));

    let mut search = Search {
        s,
        periods,
        assigned: vec![None; n],
        order,
        trail: Vec::new(),
        found: Vec::new(),
    };
    if let Some(z) = s.zero() {
        if !search.assign(z, UnitValue::ONE) {
            return Vec::new();
        }
    }
    search.run(0);
    let mut found = search.found;
    found.sort();
    found
}

fn value_columns(s: &StarSemigroup, chars: &[Character]) -> Vec<Vec<UnitValue>> {
    s.elements()
        .map(|e| chars.iter().map(|c| c.value(e)).collect())
        .collect()
}

/// Whether the characters separate the points of `s`.
pub fn is_separative(s: &StarSemigroup, chars: &[Character]) -> bool {
    let mut cols = value_columns(s, chars);
    cols.sort();
    cols.windows(2).all(|w| w[0] != w[1])
}

/// `S → S/∼`, where `s ∼ t` iff every character agrees on `s` and `t`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub classes: Vec<Vec<ElementId>>,
    pub quotient: StarSemigroup,
    pub projection: Homomorphism,
    /// Characters of the quotient, in canonical order.
    pub quotient_characters: Vec<Character>,
}

impl QuotientMap {
    #[inline]
    pub fn class_of(&self, e: ElementId) -> ElementId {
        self.projection.apply(e)
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

/// The greatest *-separative quotient, computed from the enumerated characters.
pub fn separative_quotient(s: &StarSemigroup, chars: &[Character]) -> Result<QuotientMap> {
    let cols = value_columns(s, chars);
    let mut classes: Vec<Vec<ElementId>> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for e in s.elements() {
        match reps.iter().position(|&r| cols[r] == cols[e.0]) {
            Some(k) => classes[k].push(e),
            None => {
                reps.push(e.0);
                classes.push(vec![e]);
            }
        }
    }
    let (quotient, projection) = s.quotient(&classes).map_err(|e| match e {
        Error::NotACongruence(w) => {
            Error::Internal(alloc::format!("character agreement is not a congruence: {w:?}"))
        }
        other => other,
    })?;
    let quotient_characters = enumerate_characters(&quotient);
    if !is_separative(&quotient, &quotient_characters) {
        return Err(Error::Internal("separative quotient is not separative".into()));
    }
    if let (Some(z), Some(qz)) = (s.zero(), quotient.zero()) {
        if projection.apply(z) != qz {
            return Err(Error::Internal("projection does not preserve zero".into()));
        }
    }
    Ok(QuotientMap {
        classes,
        quotient,
        projection,
        quotient_characters,
    })
}
