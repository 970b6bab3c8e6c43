//! Line-oriented semigroup files.
//!
//! ```text
//! # Z_2 with the identity involution
//! elements: 0 1
//! zero: 0
//! star: 0->0 1->1
//! 0 1
//! 1 0
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Row `i` of the table
//! lists `e_i + e_j` for `j` in declaration order.

use std::collections::HashMap;
use std::fmt::Write as _;

use pontryagin_core::{ElementId, StarSemigroup};

use super::FormatError;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        self.inner.by_ref().map(|(i, l)| (i + 1, l.trim())).find(|(_, l)| !l.is_empty() && !l.starts_with('#'))
    }
}

fn header<'a>(lines: &mut Lines<'a>, key: &str) -> Result<(usize, &'a str), FormatError> {
    let (no, line) = lines
        .next_content()
        .ok_or_else(|| FormatError::new(0, format!("missing `{key}:` line")))?;
    let rest = line
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| FormatError::new(no, format!("expected `{key}: ...`")))?;
    Ok((no, rest.trim()))
}

pub fn parse_sgp(text: &str) -> Result<StarSemigroup, FormatError> {
    let mut lines = Lines::new(text);

    let (no, rest) = header(&mut lines, "elements")?;
    let names: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
    if names.is_empty() {
        return Err(FormatError::new(no, "no elements declared"));
    }
    let mut index = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(FormatError::new(no, format!("duplicate label `{n}`")));
        }
    }
    let lookup = |no: usize, label: &str| {
        index
            .get(label)
            .copied()
            .ok_or_else(|| FormatError::new(no, format!("unknown label `{label}`")))
    };

    let (no, rest) = header(&mut lines, "zero")?;
    let zero = match rest {
        "-" => None,
        label => Some(ElementId(lookup(no, label)?)),
    };

    let (no, rest) = header(&mut lines, "star")?;
    let mut star = vec![None; names.len()];
    for pair in rest.split_whitespace() {
        let (a, b) = pair
            .split_once("->")
            .ok_or_else(|| FormatError::new(no, format!("malformed star entry `{pair}`")))?;
        let (a, b) = (lookup(no, a)?, lookup(no, b)?);
        if star[a].replace(ElementId(b)).is_some() {
            return Err(FormatError::new(no, format!("star of `{}` given twice", names[a])));
        }
    }
    let star: Vec<ElementId> = star
        .iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| FormatError::new(no, format!("star of `{}` missing", names[i]))))
        .collect::<Result<_, _>>()?;

    let n = names.len();
    let mut table = Vec::with_capacity(n * n);
    for row in 0..n {
        let (no, line) = lines
            .next_content()
            .ok_or_else(|| FormatError::new(0, format!("table has {row} rows, expected {n}")))?;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != n {
            return Err(FormatError::new(no, format!("row has {} entries, expected {n}", cells.len())));
        }
        for c in cells {
            table.push(ElementId(lookup(no, c)?));
        }
    }
    if let Some((no, _)) = lines.next_content() {
        return Err(FormatError::new(no, format!("unexpected content after {n} table rows")));
    }
    StarSemigroup::from_parts(names, table, star, zero).map_err(|e| FormatError::new(0, e.to_string()))
}

/// Inverse of [`parse_sgp`]; the output is also the canonical form used for hashing.
pub fn write_sgp(s: &StarSemigroup) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "elements: {}", s.names().join(" "));
    let _ = writeln!(out, "zero: {}", s.zero().map_or("-", |z| s.name(z)));
    let star: Vec<String> = s.elements().map(|e| format!("{}->{}", s.name(e), s.name(s.star(e)))).collect();
    let _ = writeln!(out, "star: {}", star.join(" "));
    for a in s.elements() {
        let row: Vec<&str> = s.elements().map(|b| s.name(s.add(a, b))).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use pontryagin_core::catalog;

    const Z2: &str = "# Z_2\nelements: 0 1\nzero: 0\nstar: 0->0 1->1\n0 1\n1 0\n";

    #[test]
    fn parses_z2() {
        let s = parse_sgp(Z2).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.zero(), Some(ElementId(0)));
        assert_eq!(s.add(ElementId(1), ElementId(1)), ElementId(0));
    }

    #[test]
    fn round_trips_catalog() {
        for (name, s) in catalog::catalog() {
            let text = write_sgp(&s);
            assert_eq!(parse_sgp(&text).unwrap(), s, "{name}");
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        let err = |t: &str| parse_sgp(t).unwrap_err();
        assert_eq!(err("elements: a a\nzero: -\nstar: a->a\na a\na a\n").line, 1);
        let ragged = err("elements: 0 1\nzero: 0\nstar: 0->0 1->1\n0 1\n1\n");
        assert_eq!(ragged.line, 5);
        assert!(ragged.message.contains("1 entries"));
        assert!(err("elements: 0 1\nzero: 0\nstar: 0->0\n0 1\n1 0\n").message.contains("missing"));
        assert!(err("elements: 0 1\nzero: 2\nstar: 0->0 1->1\n0 1\n1 0\n").message.contains("unknown"));
        assert!(err("elements: 0 1\nzero: 0\nstar: 0->0 1->1\n0 1\n").message.contains("1 rows"));
        assert_eq!(err("elements: 0\nzero: 0\nstar: 0->0\n0\n0\n").line, 5);
        assert!(err("zero: 0\n").message.contains("elements"));
    }

    #[test]
    fn comments_and_blank_lines() {
        let s = parse_sgp("\n# a\nelements: x\n\nzero: -\n# b\nstar: x->x\nx\n").unwrap();
        assert_eq!(s.zero(), None);
    }
}
