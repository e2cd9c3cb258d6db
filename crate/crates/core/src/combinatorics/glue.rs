//! Disjoint-domain union of classes.

use std::collections::HashSet;

use super::class::{FiniteClass, MAX_DOMAIN};
use crate::error::{param, Error, Result};

/// Glues classes onto disjoint copies of their domains. Instance ids are
/// namespaced by position as `"<r>:<id>"`.
pub fn glue(classes: &[FiniteClass]) -> Result<FiniteClass> {
    let parts: Vec<(String, FiniteClass)> =
        classes.iter().enumerate().map(|(r, c)| (r.to_string(), c.clone())).collect();
    glue_named(&parts)
}

/// Glues classes under explicit namespaces. Every hypothesis of part `r` is
/// extended by 0 outside that part's instances; repeated rows (typically the
/// all-zero function) are kept once.
pub fn glue_named(parts: &[(String, FiniteClass)]) -> Result<FiniteClass> {
    if parts.is_empty() {
        return param("nothing to glue");
    }
    let mut names = HashSet::new();
    for (name, _) in parts {
        if !names.insert(name.as_str()) {
            return Err(Error::Domain(format!("overlapping domains: namespace {name} used twice")));
        }
    }
    let m: usize = parts.iter().map(|(_, c)| c.domain_size()).sum();
    if m > MAX_DOMAIN {
        return param(format!("glued domain of size {m} exceeds {MAX_DOMAIN}"));
    }
    let mut ids = Vec::with_capacity(m);
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    let mut offset = 0;
    for (name, c) in parts {
        ids.extend(c.ids().iter().map(|id| format!("{name}:{id}")));
        for &r in c.rows() {
            let shifted = r << offset;
            if seen.insert(shifted) {
                rows.push(shifted);
            }
        }
        offset += c.domain_size();
    }
    FiniteClass::with_ids(m, rows, ids)
}
