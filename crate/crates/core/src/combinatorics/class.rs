//! Finite hypothesis classes stored as bit rows, and their budgeted variant.

use std::collections::HashSet;
use std::fmt::Write as _;

use bitvec::prelude::*;

use crate::error::{param, Error, Result};

/// Largest supported domain; a row is one `u128`.
pub const MAX_DOMAIN: usize = 128;

/// A non-empty set of distinct hypotheses over the domain `0..m`.
///
/// Bit `x` of a row is the hypothesis' prediction on instance `x`. Row order is
/// the hypothesis index used by certificates and expert adapters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteClass {
    m: usize,
    rows: Vec<u128>,
    ids: Vec<String>,
}

#[inline]
pub(crate) fn bit(row: u128, x: usize) -> bool {
    (row >> x) & 1 == 1
}

fn domain_mask(m: usize) -> u128 {
    if m == MAX_DOMAIN {
        u128::MAX
    } else {
        (1u128 << m) - 1
    }
}

impl FiniteClass {
    pub fn new(m: usize, rows: Vec<u128>) -> Result<Self> {
        let ids = (0..m).map(|x| x.to_string()).collect();
        Self::with_ids(m, rows, ids)
    }

    /// Builds a class whose instances carry the given opaque ids.
    pub fn with_ids(m: usize, rows: Vec<u128>, ids: Vec<String>) -> Result<Self> {
        if m == 0 {
            return param("domain must contain at least one instance");
        }
        if m > MAX_DOMAIN {
            return param(format!("domain size {m} exceeds {MAX_DOMAIN}"));
        }
        if rows.is_empty() {
            return param("class must contain at least one hypothesis");
        }
        if ids.len() != m {
            return param("one id per instance is required");
        }
        let mask = domain_mask(m);
        let mut seen = HashSet::with_capacity(rows.len());
        for &r in &rows {
            if r & !mask != 0 {
                return param("row has bits outside the domain");
            }
            if !seen.insert(r) {
                return param("hypothesis rows must be distinct");
            }
        }
        let mut id_seen = HashSet::new();
        for id in &ids {
            if !id_seen.insert(id.as_str()) {
                return param(format!("duplicate instance id {id}"));
            }
        }
        Ok(FiniteClass { m, rows, ids })
    }

    /// Builds a class from rows, silently dropping repeated rows.
    pub fn dedup(m: usize, rows: Vec<u128>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(rows.len());
        let rows = rows.into_iter().filter(|r| seen.insert(*r)).collect();
        Self::new(m, rows)
    }

    /// Rows written as strings of `0`/`1`, character `x` for instance `x`.
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return param("class must contain at least one hypothesis");
        };
        let m = first.as_ref().len();
        let mut out = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            out.push(parse_row(r.as_ref(), m).map_err(|msg| Error::Parse { line: i + 1, msg })?);
        }
        Self::new(m, out)
    }

    pub fn domain_size(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[u128] {
        &self.rows
    }

    pub fn row(&self, h: usize) -> u128 {
        self.rows[h]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    #[inline]
    pub fn get(&self, h: usize, x: usize) -> bool {
        bit(self.rows[h], x)
    }

    pub fn check_instance(&self, x: usize) -> Result<()> {
        if x < self.m {
            Ok(())
        } else {
            Err(Error::Domain(format!("instance {x} outside domain of size {}", self.m)))
        }
    }

    /// Predictions of every hypothesis on `x`, in row order.
    pub fn column(&self, x: usize) -> BitVec {
        self.rows.iter().map(|&r| bit(r, x)).collect()
    }

    /// `H^(x→y)`; `None` when no hypothesis predicts `y` on `x`.
    pub fn restrict(&self, x: usize, y: bool) -> Result<Option<FiniteClass>> {
        self.check_instance(x)?;
        let rows: Vec<u128> = self.rows.iter().copied().filter(|&r| bit(r, x) == y).collect();
        if rows.is_empty() {
            return Ok(None);
        }
        Ok(Some(FiniteClass { m: self.m, rows, ids: self.ids.clone() }))
    }

    /// Index of the first hypothesis with the given row.
    pub fn index_of(&self, row: u128) -> Option<usize> {
        self.rows.iter().position(|&r| r == row)
    }

    /// Rows sorted ascending; the canonical form used as a memo key.
    pub fn canonical_rows(&self) -> Vec<u128> {
        let mut r = self.rows.clone();
        r.sort_unstable();
        r
    }

    // ----- file format -----

    /// Parses the text format: a `m n` header line, then `n` rows of `m`
    /// characters. Lines starting with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let mut parts = header.split_whitespace();
        let mut num = |what: &str| -> Result<usize> {
            parts
                .next()
                .ok_or_else(|| Error::Parse { line: hl, msg: format!("missing {what}") })?
                .parse::<usize>()
                .map_err(|e| Error::Parse { line: hl, msg: format!("bad {what}: {e}") })
        };
        let m = num("domain size")?;
        let n = num("hypothesis count")?;
        if parts.next().is_some() {
            return Err(Error::Parse { line: hl, msg: "header has extra fields".into() });
        }
        if m == 0 || m > MAX_DOMAIN {
            return Err(Error::Parse { line: hl, msg: format!("domain size must be in 1..={MAX_DOMAIN}") });
        }
        let mut rows = Vec::with_capacity(n);
        for (ln, l) in lines.by_ref() {
            if rows.len() == n {
                return Err(Error::Parse { line: ln, msg: "more rows than declared".into() });
            }
            rows.push(parse_row(l, m).map_err(|msg| Error::Parse { line: ln, msg })?);
        }
        if rows.len() != n {
            return Err(Error::Parse { line: hl, msg: format!("declared {n} rows, found {}", rows.len()) });
        }
        Self::new(m, rows).map_err(|e| Error::Parse { line: hl, msg: e.to_string() })
    }

    /// Renders the text format, with each comment written as a `# ` line.
    pub fn to_text(&self, comments: &[String]) -> String {
        let mut s = String::new();
        for c in comments {
            let _ = writeln!(s, "# {c}");
        }
        let _ = writeln!(s, "{} {}", self.m, self.rows.len());
        for &r in &self.rows {
            s.extend((0..self.m).map(|x| if bit(r, x) { '1' } else { '0' }));
            s.push('\n');
        }
        s
    }

    // ----- catalogue -----

    /// The class of `n` experts seen as hypotheses over all `2^n` vote vectors:
    /// hypothesis `i` predicts bit `i` of the instance.
    pub fn universal(n: usize) -> Result<Self> {
        if n == 0 || n > 7 {
            return param("universal class supports 1..=7 experts");
        }
        let m = 1usize << n;
        let rows = (0..n)
            .map(|i| (0..m).filter(|x| (x >> i) & 1 == 1).fold(0u128, |r, x| r | (1u128 << x)))
            .collect();
        Self::new(m, rows)
    }

    /// All indicator functions of at most `d` instances.
    pub fn hamming_ball(m: usize, d: usize) -> Result<Self> {
        if m == 0 || m > 20 {
            return param("hamming ball supports domains of size 1..=20");
        }
        let rows = (0u128..(1u128 << m)).filter(|r| r.count_ones() as usize <= d).collect();
        Self::new(m, rows)
    }

    /// Indicators of single instances, optionally with the all-zero function.
    pub fn singletons(m: usize, with_zero: bool) -> Result<Self> {
        let mut rows: Vec<u128> = (0..m).map(|x| 1u128 << x).collect();
        if with_zero {
            rows.insert(0, 0);
        }
        Self::new(m, rows)
    }

    /// The single all-zero hypothesis.
    pub fn zero(m: usize) -> Result<Self> {
        Self::new(m, vec![0])
    }

    /// Upward thresholds `h_i(x) = 1[x ≥ i]` for `i` in `0..=m`.
    pub fn thresholds(m: usize) -> Result<Self> {
        let rows = (0..=m).map(|i| domain_mask(m) & !((1u128 << i) - 1)).collect();
        Self::new(m, rows)
    }
}

fn parse_row(s: &str, m: usize) -> std::result::Result<u128, String> {
    if s.chars().count() != m {
        return Err(format!("expected {m} characters, found {}", s.chars().count()));
    }
    let mut r = 0u128;
    for (x, c) in s.chars().enumerate() {
        match c {
            '1' => r |= 1u128 << x,
            '0' => {}
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(r)
}

/// True iff some hypothesis disagrees with the labelled sequence on at most `k`
/// examples.
pub fn is_k_realizable(seq: &[(usize, bool)], class: &FiniteClass, k: usize) -> Result<bool> {
    for &(x, _) in seq {
        class.check_instance(x)?;
    }
    Ok(class
        .rows()
        .iter()
        .any(|&r| seq.iter().filter(|&&(x, y)| bit(r, x) != y).count() <= k))
}

/// Pairs of (hypothesis row, remaining false-positive budget), kept sorted by
/// row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BudgetedClass {
    m: usize,
    entries: Vec<(u128, u32)>,
}

impl BudgetedClass {
    pub fn new(m: usize, mut entries: Vec<(u128, u32)>) -> Result<Self> {
        if m == 0 || m > MAX_DOMAIN {
            return param(format!("domain size must be in 1..={MAX_DOMAIN}"));
        }
        entries.sort_unstable();
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return param("hypothesis rows must be distinct");
        }
        Ok(BudgetedClass { m, entries })
    }

    /// `B_{H,k}`: every hypothesis with budget `k`.
    pub fn from_class(class: &FiniteClass, k: u32) -> Self {
        let mut entries: Vec<(u128, u32)> = class.rows().iter().map(|&r| (r, k)).collect();
        entries.sort_unstable();
        BudgetedClass { m: class.domain_size(), entries }
    }

    pub fn domain_size(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[(u128, u32)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn budget_of(&self, row: u128) -> Option<u32> {
        self.entries.binary_search_by_key(&row, |e| e.0).ok().map(|i| self.entries[i].1)
    }

    pub fn any_predicts_one(&self, x: usize) -> bool {
        self.entries.iter().any(|&(r, _)| bit(r, x))
    }

    /// `B^(x→1)` keeps pairs with `h(x)=1`; `B^(x→0)` keeps pairs with
    /// `h(x)=0` and charges one unit of budget to the others, dropping those
    /// already at zero.
    pub fn restrict(&self, x: usize, y: bool) -> Result<BudgetedClass> {
        if x >= self.m {
            return Err(Error::Domain(format!("instance {x} outside domain of size {}", self.m)));
        }
        Ok(BudgetedClass { m: self.m, entries: restrict_entries(&self.entries, x, y) })
    }

    /// Like [`BudgetedClass::restrict`], except that a label 1 charges one unit
    /// to pairs with `h(x)=0` instead of removing them outright.
    pub fn restrict_charging(&self, x: usize, y: bool) -> Result<BudgetedClass> {
        if !y {
            return self.restrict(x, y);
        }
        if x >= self.m {
            return Err(Error::Domain(format!("instance {x} outside domain of size {}", self.m)));
        }
        let entries = self
            .entries
            .iter()
            .filter_map(|&(r, b)| match (bit(r, x), b) {
                (true, _) => Some((r, b)),
                (false, 0) => None,
                (false, b) => Some((r, b - 1)),
            })
            .collect();
        Ok(BudgetedClass { m: self.m, entries })
    }
}

pub(crate) fn restrict_entries(entries: &[(u128, u32)], x: usize, y: bool) -> Vec<(u128, u32)> {
    if y {
        entries.iter().copied().filter(|&(r, _)| bit(r, x)).collect()
    } else {
        entries
            .iter()
            .filter_map(|&(r, b)| match (bit(r, x), b) {
                (false, _) => Some((r, b)),
                (true, 0) => None,
                (true, b) => Some((r, b - 1)),
            })
            .collect()
    }
}
