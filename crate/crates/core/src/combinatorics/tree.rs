//! Instance-labelled binary trees and shattering.
//!
//! A branch is the sequence of `(instance, label)` pairs met on a root-to-leaf
//! path, where a left edge means label 0 and a right edge label 1. In a
//! width-`w` tree the node reached by the `w`-th right edge of a branch is an
//! unlabelled leaf.

use super::class::{restrict_entries, BudgetedClass};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WidthTree {
    Leaf,
    Node { instance: usize, left: Box<WidthTree>, right: Box<WidthTree> },
}

impl WidthTree {
    pub fn node(instance: usize, left: WidthTree, right: WidthTree) -> Self {
        WidthTree::Node { instance, left: Box::new(left), right: Box::new(right) }
    }

    /// Width-1 tree whose left spine carries `spine` in order.
    pub fn spine(spine: &[usize]) -> Self {
        spine
            .iter()
            .rev()
            .fold(WidthTree::Leaf, |acc, &x| WidthTree::node(x, acc, WidthTree::Leaf))
    }

    /// Perfect tree of the given depth where every node at depth `i` on a
    /// branch carries `pick(prefix)` for the labels taken so far.
    pub fn perfect(depth: usize, pick: &mut impl FnMut(&[bool]) -> usize) -> Self {
        fn go(depth: usize, prefix: &mut Vec<bool>, pick: &mut impl FnMut(&[bool]) -> usize) -> WidthTree {
            if depth == 0 {
                return WidthTree::Leaf;
            }
            let x = pick(prefix);
            prefix.push(false);
            let l = go(depth - 1, prefix, pick);
            prefix.pop();
            prefix.push(true);
            let r = go(depth - 1, prefix, pick);
            prefix.pop();
            WidthTree::node(x, l, r)
        }
        go(depth, &mut Vec::new(), pick)
    }

    /// Length of the longest branch.
    pub fn depth(&self) -> usize {
        match self {
            WidthTree::Leaf => 0,
            WidthTree::Node { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Most right edges on any branch.
    pub fn max_right_edges(&self) -> usize {
        match self {
            WidthTree::Leaf => 0,
            WidthTree::Node { left, right, .. } => left.max_right_edges().max(1 + right.max_right_edges()),
        }
    }

    /// True iff every branch has at most `w` right edges and each `w`-th right
    /// edge ends in a leaf.
    pub fn is_width(&self, w: usize) -> bool {
        match self {
            WidthTree::Leaf => true,
            WidthTree::Node { left, right, .. } => {
                if w == 0 {
                    return false;
                }
                let right_ok = if w == 1 { matches!(**right, WidthTree::Leaf) } else { right.is_width(w - 1) };
                right_ok && left.is_width(w)
            }
        }
    }

    /// Instances on the all-left path, root first.
    pub fn left_spine(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self;
        while let WidthTree::Node { instance, left, .. } = cur {
            out.push(*instance);
            cur = left;
        }
        out
    }

    pub fn branches(&self) -> Vec<Vec<(usize, bool)>> {
        fn go(t: &WidthTree, prefix: &mut Vec<(usize, bool)>, out: &mut Vec<Vec<(usize, bool)>>) {
            match t {
                WidthTree::Leaf => out.push(prefix.clone()),
                WidthTree::Node { instance, left, right } => {
                    prefix.push((*instance, false));
                    go(left, prefix, out);
                    prefix.pop();
                    prefix.push((*instance, true));
                    go(right, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    fn check_domain(&self, m: usize) -> Result<()> {
        match self {
            WidthTree::Leaf => Ok(()),
            WidthTree::Node { instance, left, right } => {
                if *instance >= m {
                    return Err(Error::Domain(format!("tree instance {instance} outside domain of size {m}")));
                }
                left.check_domain(m)?;
                right.check_domain(m)
            }
        }
    }
}

/// True iff every branch of `tree` is realizable by `class`: along the branch
/// the class is restricted by each `(x, y)` and must stay non-empty.
pub fn is_shattered(tree: &WidthTree, class: &BudgetedClass) -> Result<bool> {
    tree.check_domain(class.domain_size())?;
    fn go(t: &WidthTree, entries: &[(u128, u32)]) -> bool {
        if entries.is_empty() {
            return false;
        }
        match t {
            WidthTree::Leaf => true,
            WidthTree::Node { instance, left, right } => {
                go(left, &restrict_entries(entries, *instance, false))
                    && go(right, &restrict_entries(entries, *instance, true))
            }
        }
    }
    Ok(go(tree, class.entries()))
}
