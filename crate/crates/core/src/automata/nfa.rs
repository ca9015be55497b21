use std::collections::BTreeSet;

use crate::error::{Diagnostic, Result};
use crate::forest::Forest;

use super::raw::RawAutomaton;
use super::{Alphabet, StateMonoid};

pub type StateSet = BTreeSet<usize>;

/// A nondeterministic forest automaton: the state monoid stays
/// deterministic, transitions yield (possibly empty) sets of states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    monoid: StateMonoid,
    /// `delta[a * |Q| + q]`, sorted and deduplicated.
    delta: Vec<Vec<usize>>,
    accept: Vec<bool>,
}

impl Nfa {
    pub(crate) fn from_parts_unchecked(
        alphabet: Alphabet,
        monoid: StateMonoid,
        delta: Vec<Vec<usize>>,
        accept: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(delta.len(), alphabet.len() * monoid.len());
        debug_assert_eq!(accept.len(), monoid.len());
        Nfa {
            alphabet,
            monoid,
            delta,
            accept,
        }
    }

    pub(crate) fn from_fns(
        alphabet: Alphabet,
        monoid: StateMonoid,
        step: impl Fn(usize, usize) -> Vec<usize>,
        accept: impl Fn(usize) -> bool,
    ) -> Self {
        let n = monoid.len();
        let delta = (0..alphabet.len() * n)
            .map(|k| {
                let mut t = step(k / n, k % n);
                t.sort_unstable();
                t.dedup();
                t
            })
            .collect();
        let accept = (0..n).map(accept).collect();
        Nfa::from_parts_unchecked(alphabet, monoid, delta, accept)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn monoid(&self) -> &StateMonoid {
        &self.monoid
    }

    pub fn num_states(&self) -> usize {
        self.monoid.len()
    }

    pub fn neutral(&self) -> usize {
        self.monoid.neutral()
    }

    #[inline]
    pub fn plus(&self, p: usize, q: usize) -> usize {
        self.monoid.plus(p, q)
    }

    #[inline]
    pub fn step(&self, letter: usize, q: usize) -> &[usize] {
        &self.delta[letter * self.monoid.len() + q]
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accept[q]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accept
    }

    pub fn state_name(&self, q: usize) -> &str {
        self.monoid.name(q)
    }

    /// The set of values of `f`.
    pub fn eval(&self, f: &Forest) -> Result<StateSet> {
        let mut acc: StateSet = [self.neutral()].into();
        for t in f.trees() {
            let a = self.alphabet.letter(&t.label)?;
            let below = self.eval(&t.children)?;
            let here: StateSet = below
                .iter()
                .flat_map(|&q| self.step(a, q).iter().copied())
                .collect();
            acc = self.sum_sets(&acc, &here);
        }
        Ok(acc)
    }

    pub fn sum_sets(&self, left: &StateSet, right: &StateSet) -> StateSet {
        let mut out = StateSet::new();
        for &p in left {
            for &q in right {
                out.insert(self.plus(p, q));
            }
        }
        out
    }

    pub fn accepts(&self, f: &Forest) -> Result<bool> {
        Ok(self.eval(f)?.iter().any(|&q| self.accept[q]))
    }

    pub fn with_accept(&self, accept: impl Fn(usize) -> bool) -> Nfa {
        let mut n = self.clone();
        n.accept = (0..self.num_states()).map(accept).collect();
        n
    }

    /// Whether every transition set is a singleton.
    pub fn is_deterministic(&self) -> bool {
        self.delta.iter().all(|t| t.len() == 1)
    }

    /// States that belong to the value set of some forest (marking closure).
    pub fn reachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut seen = vec![false; n];
        let mut order = vec![self.neutral()];
        seen[self.neutral()] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            let mut new = Vec::new();
            for a in 0..self.alphabet.len() {
                new.extend_from_slice(self.step(a, q));
            }
            for &p in &order[..=i] {
                new.push(self.plus(p, q));
                new.push(self.plus(q, p));
            }
            for r in new {
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
            i += 1;
        }
        seen
    }

    pub fn to_raw(&self) -> RawAutomaton {
        RawAutomaton {
            deterministic: false,
            alphabet: self.alphabet.symbols().to_vec(),
            states: self.monoid.names().to_vec(),
            neutral: Some(self.neutral()),
            plus: self.monoid.table().iter().map(|&r| Some(r)).collect(),
            delta: self.delta.iter().map(|t| Some(t.clone())).collect(),
            accept: (0..self.num_states()).filter(|&q| self.accept[q]).collect(),
        }
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        self.to_raw().validate()
    }
}
