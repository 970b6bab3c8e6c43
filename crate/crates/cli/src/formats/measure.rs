//! Measure files.
//!
//! ```text
//! # two atoms on the characters of z2.sgp
//! characters 3f1c...e9
//! atom 0 1.5
//! atom 3 0.25
//! ```
//!
//! Indices refer to the canonical character enumeration. The optional
//! `characters` line carries the digest from [`character_digest`]; a file whose
//! digest disagrees with the instance is rejected.

use std::fmt::Write as _;

use pontryagin_core::characters::Character;
use pontryagin_core::pdfun::{Atom, DualMeasure};
use pontryagin_core::StarSemigroup;
use sha2::{Digest, Sha256};

use super::FormatError;

/// One line per character, `index: v_0 v_1 ...`, after an `elements:` header.
pub fn character_listing(s: &StarSemigroup, chars: &[Character]) -> String {
    let mut out = format!("elements: {}\n", s.names().join(" "));
    for (i, c) in chars.iter().enumerate() {
        let values: Vec<String> = c.values().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{i}: {}", values.join(" "));
    }
    out
}

/// SHA-256 of [`character_listing`], hex encoded.
pub fn character_digest(s: &StarSemigroup, chars: &[Character]) -> String {
    sha256_hex(character_listing(s, chars).as_bytes())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses a measure file against `character_count` characters whose digest is `digest`.
pub fn parse_measure(text: &str, character_count: usize, digest: &str) -> Result<DualMeasure, FormatError> {
    let mut atoms = Vec::new();
    let mut seen_digest = false;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["characters", hash] => {
                if seen_digest {
                    return Err(FormatError::new(no, "second `characters` line"));
                }
                seen_digest = true;
                if !hash.eq_ignore_ascii_case(digest) {
                    return Err(FormatError::new(
                        no,
                        format!("stale measure file: character digest {hash} does not match {digest}"),
                    ));
                }
            }
            ["atom", index, weight] => {
                let character = index
                    .parse::<usize>()
                    .map_err(|_| FormatError::new(no, format!("bad character index `{index}`")))?;
                let weight = weight
                    .parse::<f64>()
                    .map_err(|_| FormatError::new(no, format!("bad weight `{weight}`")))?;
                atoms.push(Atom { character, weight });
            }
            _ => return Err(FormatError::new(no, format!("expected `atom <index> <weight>`, got `{line}`"))),
        }
    }
    DualMeasure::new(atoms, character_count).map_err(|e| FormatError::new(0, e.to_string()))
}

pub fn write_measure(mu: &DualMeasure, digest: &str) -> String {
    let mut out = format!("characters {digest}\n");
    for a in mu.atoms() {
        let _ = writeln!(out, "atom {} {}", a.character, a.weight);
    }
    out
}
