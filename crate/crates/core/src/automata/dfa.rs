use crate::error::{Diagnostic, Error, Result};
use crate::forest::{Context, Forest, Spot, Symbol};

use super::raw::RawAutomaton;
use super::{Alphabet, Nfa, StateMonoid};

/// A deterministic forest automaton `((Q, +, 0), A, δ, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    monoid: StateMonoid,
    /// `delta[a * |Q| + q]`
    delta: Vec<usize>,
    accept: Vec<bool>,
}

impl Dfa {
    /// Build and validate. Fails with diagnostics when the monoid laws or
    /// table shapes are violated.
    pub fn new(
        alphabet: Alphabet,
        monoid: StateMonoid,
        delta: Vec<usize>,
        accept: Vec<bool>,
    ) -> Result<Self> {
        let dfa = Dfa {
            alphabet,
            monoid,
            delta,
            accept,
        };
        let n = dfa.monoid.len();
        if dfa.delta.len() != dfa.alphabet.len() * n || dfa.accept.len() != n {
            return Err(Error::invalid(Diagnostic::new("table sizes do not match")));
        }
        let diags = dfa.validate();
        if diags.is_empty() {
            Ok(dfa)
        } else {
            Err(Error::Invalid(diags))
        }
    }

    pub(crate) fn from_parts_unchecked(
        alphabet: Alphabet,
        monoid: StateMonoid,
        delta: Vec<usize>,
        accept: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(delta.len(), alphabet.len() * monoid.len());
        debug_assert_eq!(accept.len(), monoid.len());
        Dfa {
            alphabet,
            monoid,
            delta,
            accept,
        }
    }

    /// Build from closures; used by constructions whose laws hold by design
    /// of the construction and are covered by tests.
    pub(crate) fn from_fns(
        alphabet: Alphabet,
        names: Vec<String>,
        neutral: usize,
        plus: impl Fn(usize, usize) -> usize,
        step: impl Fn(usize, usize) -> usize,
        accept: impl Fn(usize) -> bool,
    ) -> Self {
        let n = names.len();
        let monoid = StateMonoid::from_fn(names, neutral, plus);
        let delta = (0..alphabet.len() * n)
            .map(|k| step(k / n, k % n))
            .collect();
        let accept = (0..n).map(accept).collect();
        Dfa::from_parts_unchecked(alphabet, monoid, delta, accept)
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

    /// `δ(letter, q)`, letters by index.
    #[inline]
    pub fn step(&self, letter: usize, q: usize) -> usize {
        self.delta[letter * self.monoid.len() + q]
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

    pub fn eval(&self, f: &Forest) -> Result<usize> {
        let mut acc = self.neutral();
        for t in f.trees() {
            let a = self.alphabet.letter(&t.label)?;
            let v = self.step(a, self.eval(&t.children)?);
            acc = self.plus(acc, v);
        }
        Ok(acc)
    }

    /// `δ̂(c, q)`: the value of `c` with the hole valued `q`.
    pub fn eval_context(&self, c: &Context, q: usize) -> Result<usize> {
        let left = self.eval(&c.left)?;
        let right = self.eval(&c.right)?;
        let mid = match &c.spot {
            Spot::Hole => q,
            Spot::Node(a, inner) => {
                let a = self.alphabet.letter(a)?;
                self.step(a, self.eval_context(inner, q)?)
            }
        };
        Ok(self.plus(self.plus(left, mid), right))
    }

    pub fn accepts(&self, f: &Forest) -> Result<bool> {
        Ok(self.accept[self.eval(f)?])
    }

    pub fn symbol_step(&self, a: &Symbol, q: usize) -> Result<usize> {
        Ok(self.step(self.alphabet.letter(a)?, q))
    }

    /// The same automaton with accepting states chosen by `accept`.
    pub fn with_accept(&self, accept: impl Fn(usize) -> bool) -> Dfa {
        let mut d = self.clone();
        d.accept = (0..self.num_states()).map(accept).collect();
        d
    }

    pub fn with_state_names(mut self, names: Vec<String>) -> Dfa {
        self.monoid.rename(names);
        self
    }

    /// States that are the value of some forest.
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
                new.push(self.step(a, q));
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

    pub fn to_nfa(&self) -> Nfa {
        Nfa::from_parts_unchecked(
            self.alphabet.clone(),
            self.monoid.clone(),
            self.delta.iter().map(|&t| vec![t]).collect(),
            self.accept.clone(),
        )
    }

    pub fn to_raw(&self) -> RawAutomaton {
        RawAutomaton {
            deterministic: true,
            alphabet: self.alphabet.symbols().to_vec(),
            states: self.monoid.names().to_vec(),
            neutral: Some(self.neutral()),
            plus: self.monoid.table().iter().map(|&r| Some(r)).collect(),
            delta: self.delta.iter().map(|&t| Some(vec![t])).collect(),
            accept: (0..self.num_states()).filter(|&q| self.accept[q]).collect(),
        }
    }

    /// Diagnostics for every violated automaton law; empty when valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        self.to_raw().validate()
    }
}
