//! Littlestone dimension, width-restricted tree depths and effective width.
//!
//! Every search charges the number of rows it scans against a
//! [`SearchBudget`] and fails with [`Error::Budget`] once it is spent. Depth
//! searches saturate at a caller-supplied cap and report
//! [`Depth::CapExceeded`] instead of a value above it.

use std::collections::HashMap;

use super::class::{bit, restrict_entries, BudgetedClass, FiniteClass};
use super::tree::WidthTree;
use crate::error::{Error, Result};

/// Work allowance for one search, counted in scanned rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_work: u64,
}

impl SearchBudget {
    pub const fn new(max_work: u64) -> Self {
        SearchBudget { max_work }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_work: 200_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    Exact(u32),
    CapExceeded,
}

impl Depth {
    pub fn exact(self) -> Option<u32> {
        match self {
            Depth::Exact(d) => Some(d),
            Depth::CapExceeded => None,
        }
    }
}

impl std::fmt::Display for Depth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Depth::Exact(d) => write!(f, "{d}"),
            Depth::CapExceeded => write!(f, "cap-exceeded"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Width {
    Finite(u32),
    Unknown,
}

impl std::fmt::Display for Width {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Width::Finite(w) => write!(f, "{w}"),
            Width::Unknown => write!(f, "unknown"),
        }
    }
}

/// Learnability label derived from effective width.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trichotomy {
    Easy,
    Hard,
    UnknownAtCap,
}

impl Trichotomy {
    pub fn from_width(w: Width) -> Self {
        match w {
            Width::Finite(1) => Trichotomy::Easy,
            Width::Finite(_) => Trichotomy::Hard,
            Width::Unknown => Trichotomy::UnknownAtCap,
        }
    }
}

impl std::fmt::Display for Trichotomy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Trichotomy::Easy => "easy",
            Trichotomy::Hard => "hard",
            Trichotomy::UnknownAtCap => "unknown-at-cap",
        })
    }
}

fn floor_log2(n: usize) -> i32 {
    (usize::BITS - 1 - n.leading_zeros()) as i32
}

// ---------------------------------------------------------------------------
// Littlestone dimension
// ---------------------------------------------------------------------------

/// Memoised Littlestone-dimension evaluator over subsets of one domain.
///
/// The empty set has dimension -1 so that a one-sided split never counts.
#[derive(Clone, Debug)]
pub struct Littlestone {
    m: usize,
    memo: HashMap<Vec<u128>, i32>,
    work: u64,
    budget: SearchBudget,
}

impl Littlestone {
    pub fn new(m: usize, budget: SearchBudget) -> Self {
        Littlestone { m, memo: HashMap::new(), work: 0, budget }
    }

    pub fn domain_size(&self) -> usize {
        self.m
    }

    /// Dimension of the given set of rows, in any order.
    pub fn dim(&mut self, rows: &[u128]) -> Result<i32> {
        let mut v = rows.to_vec();
        v.sort_unstable();
        v.dedup();
        self.go(v)
    }

    fn go(&mut self, rows: Vec<u128>) -> Result<i32> {
        match rows.len() {
            0 => return Ok(-1),
            1 => return Ok(0),
            _ => {}
        }
        if let Some(&v) = self.memo.get(&rows) {
            return Ok(v);
        }
        self.work += (rows.len() * self.m) as u64;
        if self.work > self.budget.max_work {
            return Err(Error::Budget(format!("Littlestone search exceeded {} row scans", self.budget.max_work)));
        }
        let upper = floor_log2(rows.len());
        let mut best = 0;
        for x in 0..self.m {
            let (ones, zeros): (Vec<u128>, Vec<u128>) = rows.iter().partition(|&&r| bit(r, x));
            if ones.is_empty() || zeros.is_empty() {
                continue;
            }
            let (small, large) = if ones.len() <= zeros.len() { (ones, zeros) } else { (zeros, ones) };
            if 1 + floor_log2(small.len()) <= best {
                continue;
            }
            let a = self.go(small)?;
            if 1 + a <= best {
                continue;
            }
            let b = self.go(large)?;
            best = best.max(1 + a.min(b));
            if best == upper {
                break;
            }
        }
        self.memo.insert(rows, best);
        Ok(best)
    }
}

/// Depth of the deepest perfect tree shattered by the class.
pub fn littlestone_dim(class: &FiniteClass, budget: SearchBudget) -> Result<u32> {
    let mut l = Littlestone::new(class.domain_size(), budget);
    Ok(l.dim(class.rows())? as u32)
}

// ---------------------------------------------------------------------------
// Width-restricted depth
// ---------------------------------------------------------------------------

/// Memoised search for the deepest width-`w` tree shattered by a budgeted
/// class. Values saturate at `cap + 1`.
struct DepthSearch {
    m: usize,
    saturate: i32,
    memo: HashMap<(Vec<(u128, u32)>, u32), i32>,
    work: u64,
    budget: SearchBudget,
}

impl DepthSearch {
    fn new(m: usize, cap: u32, budget: SearchBudget) -> Self {
        DepthSearch { m, saturate: cap.saturating_add(1).min(i32::MAX as u32) as i32, memo: HashMap::new(), work: 0, budget }
    }

    /// Largest `d` such that a width-`w` depth-`d` tree is shattered, or -1
    /// for the empty class.
    fn depth(&mut self, entries: &[(u128, u32)], w: u32) -> Result<i32> {
        if entries.is_empty() {
            return Ok(-1);
        }
        let key = (entries.to_vec(), w);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        self.work += (entries.len() * self.m) as u64;
        if self.work > self.budget.max_work {
            return Err(Error::Budget(format!("tree search exceeded {} row scans", self.budget.max_work)));
        }
        let mut best = 0;
        for x in 0..self.m {
            let ones = restrict_entries(entries, x, true);
            if ones.is_empty() {
                continue;
            }
            let zeros = restrict_entries(entries, x, false);
            if zeros.is_empty() {
                continue;
            }
            let right = if w == 1 { self.saturate } else { self.depth(&ones, w - 1)? };
            if right < best {
                continue;
            }
            let left = self.depth(&zeros, w)?;
            best = best.max((1 + left.min(right)).min(self.saturate));
            if best == self.saturate {
                break;
            }
        }
        self.memo.insert(key, best);
        Ok(best)
    }

    fn report(&mut self, entries: &[(u128, u32)], w: u32) -> Result<Depth> {
        let f = self.depth(entries, w)?;
        Ok(if f >= self.saturate {
            Depth::CapExceeded
        } else if f >= w as i32 {
            Depth::Exact(f as u32)
        } else {
            Depth::Exact(0)
        })
    }
}

/// `D_w` of a budgeted class: the largest `d ≥ w` with a shattered width-`w`
/// depth-`d` tree, 0 when none exists.
pub fn budgeted_width_depth(class: &BudgetedClass, w: u32, cap: u32, budget: SearchBudget) -> Result<Depth> {
    if w == 0 {
        return Err(Error::Parameter("width must be at least 1".into()));
    }
    DepthSearch::new(class.domain_size(), cap, budget).report(class.entries(), w)
}

/// `D_w(H)`.
pub fn width_depth(class: &FiniteClass, w: u32, cap: u32, budget: SearchBudget) -> Result<Depth> {
    budgeted_width_depth(&BudgetedClass::from_class(class, 0), w, cap, budget)
}

/// `D_1^(k)(H)`, the deepest width-1 tree k-shattered by `H`, computed as
/// plain shattering by `B_{H,k}`.
pub fn d1_k(class: &FiniteClass, k: u32, cap: u32, budget: SearchBudget) -> Result<Depth> {
    budgeted_width_depth(&BudgetedClass::from_class(class, k), 1, cap, budget)
}

/// Smallest `w ≤ m` whose `D_w` is found at or below the cap.
pub fn effective_width(class: &FiniteClass, cap: u32, budget: SearchBudget) -> Result<Width> {
    let b = BudgetedClass::from_class(class, 0);
    let mut search = DepthSearch::new(class.domain_size(), cap, budget);
    for w in 1..=class.domain_size() as u32 {
        if let Depth::Exact(_) = search.report(b.entries(), w)? {
            return Ok(Width::Finite(w));
        }
    }
    Ok(Width::Unknown)
}

/// A width-1 tree of exactly `depth` levels shattered by `B_{H,k}`, if any.
pub fn width1_witness(class: &FiniteClass, k: u32, depth: u32, budget: SearchBudget) -> Result<Option<WidthTree>> {
    let b = BudgetedClass::from_class(class, k);
    let mut search = DepthSearch::new(class.domain_size(), depth, budget);
    let mut spine = Vec::with_capacity(depth as usize);
    let mut cur = b.entries().to_vec();
    if search.depth(&cur, 1)? < depth as i32 {
        return Ok(None);
    }
    for need in (0..depth as i32).rev() {
        let mut found = None;
        for x in 0..class.domain_size() {
            if restrict_entries(&cur, x, true).is_empty() {
                continue;
            }
            let zeros = restrict_entries(&cur, x, false);
            if search.depth(&zeros, 1)? >= need {
                found = Some((x, zeros));
                break;
            }
        }
        let (x, zeros) = found.expect("depth value guarantees a split");
        spine.push(x);
        cur = zeros;
    }
    Ok(Some(WidthTree::spine(&spine)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::tree::is_shattered;

    const B: SearchBudget = SearchBudget::new(50_000_000);

    #[test]
    fn littlestone_small_cases() {
        assert_eq!(littlestone_dim(&FiniteClass::zero(3).unwrap(), B).unwrap(), 0);
        for n in 1..=7 {
            let u = FiniteClass::universal(n).unwrap();
            assert_eq!(littlestone_dim(&u, B).unwrap(), floor_log2(n) as u32, "U_{n}");
        }
        assert_eq!(littlestone_dim(&FiniteClass::thresholds(7).unwrap(), B).unwrap(), 3);
        assert_eq!(littlestone_dim(&FiniteClass::singletons(5, true).unwrap(), B).unwrap(), 1);
        assert_eq!(littlestone_dim(&FiniteClass::hamming_ball(6, 2).unwrap(), B).unwrap(), 2);
    }

    #[test]
    fn littlestone_budget_is_enforced() {
        let h = FiniteClass::hamming_ball(10, 3).unwrap();
        assert!(matches!(littlestone_dim(&h, SearchBudget::new(100)), Err(Error::Budget(_))));
    }

    #[test]
    fn zero_class_has_no_width_one_tree() {
        let z = FiniteClass::zero(4).unwrap();
        assert_eq!(width_depth(&z, 1, 10, B).unwrap(), Depth::Exact(0));
        for k in 0..4 {
            assert_eq!(d1_k(&z, k, 10, B).unwrap(), Depth::Exact(0));
        }
        assert_eq!(effective_width(&z, 10, B).unwrap(), Width::Finite(1));
    }

    #[test]
    fn single_hypothesis_depth_grows_with_budget() {
        let h = FiniteClass::new(3, vec![0b011]).unwrap();
        for k in 0..5u32 {
            assert_eq!(d1_k(&h, k, 50, B).unwrap(), Depth::Exact(k));
        }
    }

    #[test]
    fn singletons_with_zero_have_unbounded_looking_width_one_depth() {
        let h = FiniteClass::singletons(6, true).unwrap();
        assert_eq!(width_depth(&h, 1, 10, B).unwrap(), Depth::Exact(6));
        assert_eq!(width_depth(&h, 1, 5, B).unwrap(), Depth::CapExceeded);
        assert_eq!(width_depth(&h, 2, 5, B).unwrap(), Depth::Exact(0));
        assert_eq!(effective_width(&h, 5, B).unwrap(), Width::Finite(2));
        assert_eq!(effective_width(&h, 6, B).unwrap(), Width::Finite(1));
    }

    #[test]
    fn hamming_ball_effective_width() {
        for d in 1..=2usize {
            let h = FiniteClass::hamming_ball(8, d).unwrap();
            assert_eq!(effective_width(&h, 3, B).unwrap(), Width::Finite(d as u32 + 1), "d={d}");
            assert_eq!(width_depth(&h, d as u32, 3, B).unwrap(), Depth::CapExceeded);
        }
    }

    #[test]
    fn universal_class_width_one_depth() {
        for n in 2..=5 {
            let u = FiniteClass::universal(n).unwrap();
            assert_eq!(width_depth(&u, 1, 64, B).unwrap(), Depth::Exact(n as u32 - 1));
            assert_eq!(effective_width(&u, 64, B).unwrap(), Width::Finite(1));
        }
        let u3 = FiniteClass::universal(3).unwrap();
        match effective_width(&u3, 1, B).unwrap() {
            Width::Finite(w) => assert!(w >= 2),
            Width::Unknown => {}
        }
    }

    #[test]
    fn witness_tree_is_shattered() {
        let h = FiniteClass::singletons(5, true).unwrap();
        for k in 0..3u32 {
            let d = d1_k(&h, k, 100, B).unwrap().exact().unwrap();
            let t = width1_witness(&h, k, d, B).unwrap().unwrap();
            assert_eq!(t.depth(), d as usize);
            assert!(is_shattered(&t, &BudgetedClass::from_class(&h, k)).unwrap());
            assert!(width1_witness(&h, k, d + 1, B).unwrap().is_none());
        }
    }

    #[test]
    fn trichotomy_labels() {
        assert_eq!(Trichotomy::from_width(Width::Finite(1)), Trichotomy::Easy);
        assert_eq!(Trichotomy::from_width(Width::Finite(3)), Trichotomy::Hard);
        assert_eq!(Trichotomy::from_width(Width::Unknown).to_string(), "unknown-at-cap");
    }
}
