//! Table-backed finite commutative *-semigroups.
//!
//! Elements are dense indices into a parallel label list; addition and the
//! involution are table lookups. The operation is always written additively.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{CongruenceWitness, Error, Result};

/// Hard cap on the carrier size of table-backed instances.
pub const MAX_ELEMENTS: usize = 64;

/// Index of an element, meaningful only relative to one [`StarSemigroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite commutative semigroup with involution and an optional zero.
///
/// Construction through [`StarSemigroup::from_parts`] only checks shapes and
/// ranges; run [`StarSemigroup::validate`] to check the algebraic laws. All
/// named constructors return validated instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSemigroup {
    names: Vec<String>,
    table: Vec<ElementId>,
    star: Vec<ElementId>,
    zero: Option<ElementId>,
}

/// Involution choice for [`StarSemigroup::cyclic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    Identity,
    Negation,
}

/// A violated law together with the indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotCommutative { a: usize, b: usize },
    NotAssociative { a: usize, b: usize, c: usize },
    StarNotInvolutive { a: usize },
    StarNotAdditive { a: usize, b: usize },
    ZeroNotNeutral { zero: usize, a: usize },
}

/// Outcome of [`StarSemigroup::validate`]: at most one witness per law.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Renders each violation with element labels instead of indices.
    pub fn describe(&self, s: &StarSemigroup) -> Vec<String> {
        let l = |i: usize| s.names[i].as_str();
        self.violations
            .iter()
            .map(|v| match *v {
                Violation::NotCommutative { a, b } => {
                    format!("commutativity fails: {0}+{1} != {1}+{0}", l(a), l(b))
                }
                Violation::NotAssociative { a, b, c } => format!(
                    "associativity fails: ({0}+{1})+{2} != {0}+({1}+{2})",
                    l(a),
                    l(b),
                    l(c)
                ),
                Violation::StarNotInvolutive { a } => {
                    format!("involution fails: {0}** != {0}", l(a))
                }
                Violation::StarNotAdditive { a, b } => format!(
                    "involution is not additive: ({0}+{1})* != {0}*+{1}*",
                    l(a),
                    l(b)
                ),
                Violation::ZeroNotNeutral { zero, a } => {
                    format!("zero law fails: {}+{} != {}", l(zero), l(a), l(a))
                }
            })
            .collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no violations");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v:?}")?;
        }
        Ok(())
    }
}

impl StarSemigroup {
    /// Assembles an instance from raw parts; `table` is row-major `n × n`.
    pub fn from_parts(
        names: Vec<String>,
        table: Vec<ElementId>,
        star: Vec<ElementId>,
        zero: Option<ElementId>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Structure("carrier is empty".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { requested: n });
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::Structure(format!("invalid label {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Structure(format!("duplicate label {name:?}")));
            }
        }
        if table.len() != n * n {
            return Err(Error::Structure(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some(bad) = table.iter().find(|e| e.0 >= n) {
            return Err(Error::Structure(format!("table entry {} out of range", bad.0)));
        }
        if star.len() != n {
            return Err(Error::Structure(format!(
                "involution has {} entries, expected {n}",
                star.len()
            )));
        }
        if let Some(bad) = star.iter().find(|e| e.0 >= n) {
            return Err(Error::Structure(format!(
                "involution entry {} out of range",
                bad.0
            )));
        }
        if let Some(z) = zero {
            if z.0 >= n {
                return Err(Error::Structure(format!("zero {} out of range", z.0)));
            }
        }
        Ok(Self {
            names,
            table,
            star,
            zero,
        })
    }

    /// Builds an instance from closures over indices.
    pub fn from_fn(
        names: Vec<String>,
        add: impl Fn(usize, usize) -> usize,
        star: impl Fn(usize) -> usize,
        zero: Option<usize>,
    ) -> Result<Self> {
        let n = names.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { requested: n });
        }
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(ElementId(add(i, j)));
            }
        }
        let star = (0..n).map(|i| ElementId(star(i))).collect();
        Self::from_parts(names, table, star, zero.map(ElementId))
    }

    fn checked(self) -> Result<Self> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidStructure(report))
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.len()).map(ElementId)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: ElementId) -> &str {
        &self.names[e.0]
    }

    pub fn find(&self, label: &str) -> Option<ElementId> {
        self.names.iter().position(|n| n == label).map(ElementId)
    }

    #[inline]
    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table[a.0 * self.len() + b.0]
    }

    #[inline]
    pub fn star(&self, a: ElementId) -> ElementId {
        self.star[a.0]
    }

    #[inline]
    pub fn zero(&self) -> Option<ElementId> {
        self.zero
    }

    /// `k·a` for `k ≥ 1`.
    pub fn multiple(&self, k: usize, a: ElementId) -> ElementId {
        assert!(k >= 1, "multiples start at 1");
        (1..k).fold(a, |acc, _| self.add(acc, a))
    }

    /// Checks commutativity, associativity, the involution laws and the zero law.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let mut violations = Vec::new();
        let ids = || (0..n).map(ElementId);

        'comm: for a in ids() {
            for b in ids().skip(a.0 + 1) {
                if self.add(a, b) != self.add(b, a) {
                    violations.push(Violation::NotCommutative { a: a.0, b: b.0 });
                    break 'comm;
                }
            }
        }
        'assoc: for a in ids() {
            for b in ids() {
                let ab = self.add(a, b);
                for c in ids() {
                    if self.add(ab, c) != self.add(a, self.add(b, c)) {
                        violations.push(Violation::NotAssociative {
                            a: a.0,
                            b: b.0,
                            c: c.0,
                        });
                        break 'assoc;
                    }
                }
            }
        }
        if let Some(a) = ids().find(|&a| self.star(self.star(a)) != a) {
            violations.push(Violation::StarNotInvolutive { a: a.0 });
        }
        'star: for a in ids() {
            for b in ids() {
                if self.star(self.add(a, b)) != self.add(self.star(a), self.star(b)) {
                    violations.push(Violation::StarNotAdditive { a: a.0, b: b.0 });
                    break 'star;
                }
            }
        }
        if let Some(z) = self.zero {
            if let Some(a) = ids().find(|&a| self.add(z, a) != a) {
                violations.push(Violation::ZeroNotNeutral { zero: z.0, a: a.0 });
            }
        }
        ValidationReport { violations }
    }

    /// The unique neutral element, if one exists.
    pub fn find_neutral(&self) -> Option<ElementId> {
        self.elements()
            .find(|&e| self.elements().all(|a| self.add(e, a) == a))
    }

    /// `Z_n` with addition mod `n` and identity or negation as involution.
    pub fn cyclic(n: usize, involution: Involution) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group order must be positive"));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { requested: n });
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        let star = move |i: usize| match involution {
            Involution::Identity => i,
            Involution::Negation => (n - i) % n,
        };
        Self::from_fn(names, |a, b| (a + b) % n, star, Some(0))?.checked()
    }

    /// `Z_2^m` with identity involution; elements in lexicographic tuple order
    /// (first coordinate most significant).
    pub fn power_z2(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("exponent must be positive"));
        }
        let n = 1usize
            .checked_shl(m as u32)
            .filter(|&n| n <= MAX_ELEMENTS)
            .ok_or(Error::TooLarge {
                requested: usize::MAX,
            })?;
        let names = (0..n)
            .map(|i| {
                let bits: Vec<String> = (0..m)
                    .map(|k| ((i >> (m - 1 - k)) & 1).to_string())
                    .collect();
                format!("({})", bits.join(","))
            })
            .collect();
        Self::from_fn(names, |a, b| a ^ b, |a| a, Some(0))?.checked()
    }

    /// `{0..top}` with saturating addition `min(a + b, top)`.
    pub fn truncated_nat(top: usize) -> Result<Self> {
        Self::nat_like(top, |a, b| (a + b).min(top))
    }

    /// `{0..top}` with `max` as the operation; every element is idempotent.
    pub fn max_nat(top: usize) -> Result<Self> {
        Self::nat_like(top, |a, b| a.max(b))
    }

    fn nat_like(top: usize, add: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if top == 0 {
            return Err(Error::InvalidArgument("truncation point must be positive"));
        }
        if top + 1 > MAX_ELEMENTS {
            return Err(Error::TooLarge { requested: top + 1 });
        }
        let names = (0..=top).map(|i| i.to_string()).collect();
        Self::from_fn(names, add, |a| a, Some(0))?.checked()
    }

    /// Componentwise product; element `(i, j)` sits at index `i·|right| + j`.
    pub fn direct_product(left: &Self, right: &Self) -> Result<Self> {
        let (n1, n2) = (left.len(), right.len());
        let n = n1.saturating_mul(n2);
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { requested: n });
        }
        let mut names = Vec::with_capacity(n);
        for a in &left.names {
            for b in &right.names {
                names.push(format!("({a},{b})"));
            }
        }
        let split = |k: usize| (ElementId(k / n2), ElementId(k % n2));
        let zero = match (left.zero, right.zero) {
            (Some(z1), Some(z2)) => Some(z1.0 * n2 + z2.0),
            _ => None,
        };
        Self::from_fn(
            names,
            |a, b| {
                let ((a1, a2), (b1, b2)) = (split(a), split(b));
                left.add(a1, b1).0 * n2 + right.add(a2, b2).0
            },
            |a| {
                let (a1, a2) = split(a);
                left.star(a1).0 * n2 + right.star(a2).0
            },
            zero,
        )?
        .checked()
    }

    /// The amalgam `U(S, T, h)` on `S ⊔ T`: inner sums as in each part, mixed
    /// sums `s + t := h(s) + t` in `T`. Elements of `S` come first.
    ///
    /// When a label occurs on both sides every label is prefixed with its side
    /// (`S.` / `T.`).
    pub fn amalgam(s: &Self, t: &Self, h: &Homomorphism) -> Result<Self> {
        h.check(s, t)?;
        let (ns, nt) = (s.len(), t.len());
        if ns + nt > MAX_ELEMENTS {
            return Err(Error::TooLarge { requested: ns + nt });
        }
        let collide = s.names.iter().any(|a| t.names.contains(a));
        let names = if collide {
            s.names
                .iter()
                .map(|a| format!("S.{a}"))
                .chain(t.names.iter().map(|b| format!("T.{b}")))
                .collect()
        } else {
            s.names.iter().chain(t.names.iter()).cloned().collect()
        };
        let in_t = |k: usize| k >= ns;
        let project = |k: usize| -> ElementId {
            if in_t(k) {
                ElementId(k - ns)
            } else {
                h.apply(ElementId(k))
            }
        };
        let add = |a: usize, b: usize| -> usize {
            if !in_t(a) && !in_t(b) {
                s.add(ElementId(a), ElementId(b)).0
            } else {
                ns + t.add(project(a), project(b)).0
            }
        };
        let star = |a: usize| -> usize {
            if in_t(a) {
                ns + t.star(ElementId(a - ns)).0
            } else {
                s.star(ElementId(a)).0
            }
        };
        let mut built = Self::from_fn(names, add, star, None)?;
        built.zero = built.find_neutral();
        built.checked()
    }

    /// Quotient by a partition that must be a congruence for `+` and `*`.
    ///
    /// Classes are ordered by least member and labelled `[label]` after it.
    pub fn quotient(&self, partition: &[Vec<ElementId>]) -> Result<(Self, Homomorphism)> {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<ElementId>> = Vec::with_capacity(partition.len());
        for class in partition {
            if class.is_empty() {
                return Err(Error::InvalidPartition("empty class".into()));
            }
            let mut sorted = class.clone();
            sorted.sort();
            sorted.dedup();
            classes.push(sorted);
        }
        classes.sort_by_key(|c| c[0]);
        for (k, class) in classes.iter().enumerate() {
            for &e in class {
                if e.0 >= n {
                    return Err(Error::InvalidPartition(format!("element {} out of range", e.0)));
                }
                if class_of[e.0] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {} appears in two classes",
                        self.names[e.0]
                    )));
                }
                class_of[e.0] = k;
            }
        }
        if let Some(missing) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "element {} is not covered",
                self.names[missing]
            )));
        }

        let rep = |k: usize| classes[k][0];
        for a in self.elements() {
            let ra = rep(class_of[a.0]);
            if class_of[self.star(a).0] != class_of[self.star(ra).0] {
                return Err(Error::NotACongruence(CongruenceWitness::Star { a: a.0, a2: ra.0 }));
            }
            for b in self.elements() {
                let rb = rep(class_of[b.0]);
                if class_of[self.add(a, b).0] != class_of[self.add(ra, rb).0] {
                    return Err(Error::NotACongruence(CongruenceWitness::Sum {
                        a: a.0,
                        b: b.0,
                        a2: ra.0,
                        b2: rb.0,
                    }));
                }
            }
        }

        let names = classes
            .iter()
            .map(|c| format!("[{}]", self.names[c[0].0]))
            .collect();
        let quotient = Self::from_fn(
            names,
            |i, j| class_of[self.add(rep(i), rep(j)).0],
            |i| class_of[self.star(rep(i)).0],
            self.zero.map(|z| class_of[z.0]),
        )?
        .checked()
        .map_err(|e| Error::Internal(format!("quotient failed re-validation: {e}")))?;
        let projection = Homomorphism {
            map: class_of.into_iter().map(ElementId).collect(),
        };
        projection.check(self, &quotient)?;
        Ok((quotient, projection))
    }
}

/// A *-homomorphism between two table-backed instances, stored as its map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    map: Vec<ElementId>,
}

impl Homomorphism {
    /// Validates `map` as a *-homomorphism from `domain` into `codomain`.
    pub fn new(domain: &StarSemigroup, codomain: &StarSemigroup, map: Vec<ElementId>) -> Result<Self> {
        let h = Self { map };
        h.check(domain, codomain)?;
        Ok(h)
    }

    pub fn identity(s: &StarSemigroup) -> Self {
        Self {
            map: s.elements().collect(),
        }
    }

    /// The constant map onto `target`; a *-homomorphism iff `target` is a
    /// self-adjoint idempotent.
    pub fn constant(domain: &StarSemigroup, codomain: &StarSemigroup, target: ElementId) -> Result<Self> {
        Self::new(domain, codomain, vec![target; domain.len()])
    }

    fn check(&self, dom: &StarSemigroup, cod: &StarSemigroup) -> Result<()> {
        if self.map.len() != dom.len() {
            return Err(Error::Structure(format!(
                "map has {} entries, domain has {}",
                self.map.len(),
                dom.len()
            )));
        }
        if let Some(bad) = self.map.iter().find(|e| e.0 >= cod.len()) {
            return Err(Error::Structure(format!("map value {} out of range", bad.0)));
        }
        for a in dom.elements() {
            if self.apply(dom.star(a)) != cod.star(self.apply(a)) {
                return Err(Error::NotAHomomorphism { a: a.0, b: None });
            }
            for b in dom.elements() {
                if self.apply(dom.add(a, b)) != cod.add(self.apply(a), self.apply(b)) {
                    return Err(Error::NotAHomomorphism {
                        a: a.0,
                        b: Some(b.0),
                    });
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn apply(&self, e: ElementId) -> ElementId {
        self.map[e.0]
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.map
    }

    pub fn preserves_zero(&self, dom: &StarSemigroup, cod: &StarSemigroup) -> bool {
        match (dom.zero(), cod.zero()) {
            (Some(z1), Some(z2)) => self.apply(z1) == z2,
            _ => false,
        }
    }

    /// First codomain element without a preimage, if any.
    pub fn first_missed(&self, codomain_len: usize) -> Option<ElementId> {
        let mut hit = vec![false; codomain_len];
        for e in &self.map {
            hit[e.0] = true;
        }
        hit.iter().position(|h| !h).map(ElementId)
    }
}
