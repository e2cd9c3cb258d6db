//! Covering expert sets for a finite class.
//!
//! Expert `e_S`, for a set `S` of at most `L(H)` rounds, runs the standard
//! optimal algorithm on its own version space, flips the prediction on rounds
//! in `S`, and then keeps only hypotheses agreeing with the prediction it made.
//! For every hypothesis `h` and instance sequence, the expert whose `S` lists
//! the rounds where the standard optimal algorithm would have erred on `h`
//! reproduces `h` exactly.

use std::collections::HashMap;
use std::sync::Arc;

use bitvec::prelude::*;

use crate::combinatorics::class::bit;
use crate::combinatorics::{littlestone_dim, FiniteClass, Littlestone, SearchBudget};
use crate::error::{Error, Result};

/// Standard optimal algorithm: predicts the label whose restriction keeps the
/// larger Littlestone dimension, 1 on ties. An empty version space predicts 1.
pub fn soa_predict(engine: &mut Littlestone, rows: &[u128], x: usize) -> Result<bool> {
    if x >= engine.domain_size() {
        return Err(Error::Domain(format!("instance {x} outside domain of size {}", engine.domain_size())));
    }
    let (ones, zeros): (Vec<u128>, Vec<u128>) = rows.iter().partition(|&&r| bit(r, x));
    Ok(engine.dim(&ones)? >= engine.dim(&zeros)?)
}

/// `Σ_{i≤L} C(T, i)`, or `None` on overflow.
pub fn cover_size(horizon: usize, ldim: u32) -> Option<u128> {
    let t = horizon as u128;
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for i in 0..=ldim as u128 {
        if i > t {
            break;
        }
        total = total.checked_add(c)?;
        c = c.checked_mul(t - i)? / (i + 1);
    }
    Some(total)
}

fn subsets(horizon: usize, max_len: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, horizon: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == max_len {
            return;
        }
        for t in start..=horizon {
            cur.push(t);
            go(t + 1, horizon, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, horizon, max_len, &mut Vec::new(), &mut out);
    out
}

/// The deviation-set experts for one class and horizon, in lexicographic
/// order of their (1-based) deviation rounds.
#[derive(Clone, Debug)]
pub struct CoverExpertSet {
    class: Arc<FiniteClass>,
    horizon: usize,
    ldim: u32,
    deviations: Arc<Vec<Vec<usize>>>,
}

impl CoverExpertSet {
    /// Fails with a budget error when the Littlestone search or the number of
    /// experts exceeds its allowance.
    pub fn build(class: Arc<FiniteClass>, horizon: usize, max_experts: usize, budget: SearchBudget) -> Result<Self> {
        let ldim = littlestone_dim(&class, budget)?;
        Self::with_ldim(class, horizon, ldim, max_experts)
    }

    pub(crate) fn with_ldim(class: Arc<FiniteClass>, horizon: usize, ldim: u32, max_experts: usize) -> Result<Self> {
        match cover_size(horizon, ldim) {
            Some(s) if s <= max_experts as u128 => {}
            _ => {
                return Err(Error::Budget(format!(
                    "cover for horizon {horizon} and dimension {ldim} exceeds {max_experts} experts"
                )))
            }
        }
        let deviations = subsets(horizon, ldim as usize);
        Ok(CoverExpertSet { class, horizon, ldim, deviations: Arc::new(deviations) })
    }

    pub fn class(&self) -> &Arc<FiniteClass> {
        &self.class
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn ldim(&self) -> u32 {
        self.ldim
    }

    pub fn len(&self) -> usize {
        self.deviations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deviations.is_empty()
    }

    pub fn deviation_sets(&self) -> &[Vec<usize>] {
        &self.deviations
    }

    /// `T^L(H)`.
    pub fn power_bound(&self) -> f64 {
        (self.horizon as f64).powi(self.ldim as i32)
    }

    /// Fresh per-game state producing the experts' predictions round by round.
    pub fn runner(&self, budget: SearchBudget) -> CoverRunner {
        let rows = self.class.rows().to_vec();
        CoverRunner {
            class: self.class.clone(),
            deviations: self.deviations.clone(),
            spaces: vec![rows; self.deviations.len()],
            round: 0,
            engine: Littlestone::new(self.class.domain_size(), budget),
        }
    }
}

/// Lazily advances every cover expert on the instances of one game.
#[derive(Clone, Debug)]
pub struct CoverRunner {
    class: Arc<FiniteClass>,
    deviations: Arc<Vec<Vec<usize>>>,
    spaces: Vec<Vec<u128>>,
    round: usize,
    engine: Littlestone,
}

impl CoverRunner {
    pub fn len(&self) -> usize {
        self.deviations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deviations.is_empty()
    }

    /// Rounds advanced so far.
    pub fn round(&self) -> usize {
        self.round
    }

    /// Predictions of all experts on the next instance.
    pub fn advance(&mut self, x: usize) -> Result<BitVec> {
        self.class.check_instance(x)?;
        self.round += 1;
        let t = self.round;
        let mut cache: HashMap<Vec<u128>, bool> = HashMap::new();
        let mut out = BitVec::with_capacity(self.spaces.len());
        for (space, dev) in self.spaces.iter_mut().zip(self.deviations.iter()) {
            let base = match cache.get(space.as_slice()) {
                Some(&p) => p,
                None => {
                    let p = soa_predict(&mut self.engine, space, x)?;
                    cache.insert(space.clone(), p);
                    p
                }
            };
            let p = base ^ dev.binary_search(&t).is_ok();
            space.retain(|&r| bit(r, x) == p);
            out.push(p);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn soa_on_tiny_spaces() {
        let mut e = Littlestone::new(4, budget());
        assert!(soa_predict(&mut e, &[0b010], 1).unwrap());
        assert!(!soa_predict(&mut e, &[0b010], 0).unwrap());
        let u2 = FiniteClass::universal(2).unwrap();
        assert!(soa_predict(&mut e, u2.rows(), 1).unwrap());
        assert!(soa_predict(&mut e, &[], 0).unwrap());
        assert!(soa_predict(&mut e, &[1], 4).is_err());
    }

    #[test]
    fn size_formula() {
        assert_eq!(cover_size(3, 1), Some(4));
        assert_eq!(cover_size(4, 2), Some(11));
        assert_eq!(cover_size(2, 5), Some(4));
        assert_eq!(cover_size(10, 0), Some(1));
    }

    #[test]
    fn lexicographic_order() {
        assert_eq!(subsets(3, 2), vec![vec![], vec![1], vec![1, 2], vec![1, 3], vec![2], vec![2, 3], vec![3]]);
    }

    #[test]
    fn single_hypothesis_cover_is_itself() {
        let h = Arc::new(FiniteClass::from_strings(&["101"]).unwrap());
        let c = CoverExpertSet::build(h, 5, 100, budget()).unwrap();
        assert_eq!(c.len(), 1);
        let mut r = c.runner(budget());
        for x in [0, 1, 2, 1] {
            assert_eq!(r.advance(x).unwrap()[0], x != 1);
        }
    }

    #[test]
    fn universal_two_has_four_experts() {
        let u2 = Arc::new(FiniteClass::universal(2).unwrap());
        let c = CoverExpertSet::build(u2, 3, 100, budget()).unwrap();
        assert_eq!(c.len(), 4);
        assert!(CoverExpertSet::build(Arc::new(FiniteClass::universal(2).unwrap()), 3, 3, budget()).is_err());
    }

    #[test]
    fn covers_every_hypothesis_on_every_short_sequence() {
        let h = Arc::new(FiniteClass::from_strings(&["000", "100", "110", "011"]).unwrap());
        let cover = CoverExpertSet::build(h.clone(), 4, 1000, budget()).unwrap();
        for code in 0..3usize.pow(4) {
            let seq: Vec<usize> = (0..4).map(|i| code / 3usize.pow(i) % 3).collect();
            let mut r = cover.runner(budget());
            let cols: Vec<BitVec> = seq.iter().map(|&x| r.advance(x).unwrap()).collect();
            for i in 0..h.len() {
                let ok = (0..cover.len()).any(|e| seq.iter().zip(&cols).all(|(&x, c)| c[e] == h.get(i, x)));
                assert!(ok, "hypothesis {i} uncovered on {seq:?}");
            }
        }
    }
}
