use crate::error::{Diagnostic, Error, Result};
use crate::forest::{Forest, Symbol};

use super::monoid::{check_monoid_laws, StateMonoid};
use super::{Alphabet, Dfa, Nfa};

/// Unvalidated automaton tables, as read from a file or assembled by hand.
///
/// `plus[i * n + j]` is `i + j`; `delta[a * n + q]` is the successor set of
/// `q` under letter `a`. `None` marks a missing entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAutomaton {
    pub deterministic: bool,
    pub alphabet: Vec<Symbol>,
    pub states: Vec<String>,
    pub neutral: Option<usize>,
    pub plus: Vec<Option<usize>>,
    pub delta: Vec<Option<Vec<usize>>>,
    pub accept: Vec<usize>,
}

impl RawAutomaton {
    /// Every violated requirement: state and letter uniqueness, the neutral
    /// element, totality of both tables, monoid laws and index ranges.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let n = self.states.len();
        if n == 0 {
            out.push(Diagnostic::new("automaton has no states"));
            return out;
        }
        for (i, s) in self.states.iter().enumerate() {
            if self.states[..i].contains(s) {
                out.push(Diagnostic::new("duplicate state").with_tokens([s.clone()]));
            }
        }
        for (i, a) in self.alphabet.iter().enumerate() {
            if self.alphabet[..i].contains(a) {
                out.push(Diagnostic::new("duplicate letter").with_tokens([a.to_string()]));
            }
        }
        let neutral = match self.neutral {
            Some(z) if z < n => Some(z),
            Some(z) => {
                out.push(Diagnostic::new(format!("neutral index {z} out of range")));
                None
            }
            None => {
                out.push(Diagnostic::new("no neutral state declared"));
                None
            }
        };
        if self.plus.len() != n * n {
            out.push(Diagnostic::new(format!(
                "plus table has {} entries, expected {}",
                self.plus.len(),
                n * n
            )));
            return out;
        }
        for (k, entry) in self.plus.iter().enumerate() {
            let (p, q) = (k / n, k % n);
            match entry {
                None => out.push(
                    Diagnostic::new(format!(
                        "totality: missing plus entry for {}+{}",
                        self.states[p], self.states[q]
                    ))
                    .with_tokens([self.states[p].clone(), self.states[q].clone()]),
                ),
                Some(r) if *r >= n => out.push(Diagnostic::new(format!(
                    "plus entry {}+{} out of range",
                    self.states[p], self.states[q]
                ))),
                Some(_) => {}
            }
        }
        let letters = self.alphabet.len();
        if self.delta.len() != letters * n {
            out.push(Diagnostic::new(format!(
                "delta table has {} entries, expected {}",
                self.delta.len(),
                letters * n
            )));
            return out;
        }
        for (k, entry) in self.delta.iter().enumerate() {
            let (a, q) = (k / n, k % n);
            let label = || [self.alphabet[a].to_string(), self.states[q].clone()];
            match entry {
                None => out.push(
                    Diagnostic::new(format!(
                        "totality: missing delta entry for letter {} in state {}",
                        self.alphabet[a], self.states[q]
                    ))
                    .with_tokens(label()),
                ),
                Some(targets) => {
                    if self.deterministic && targets.len() != 1 {
                        out.push(
                            Diagnostic::new(format!(
                                "deterministic delta for {} in {} has {} targets",
                                self.alphabet[a],
                                self.states[q],
                                targets.len()
                            ))
                            .with_tokens(label()),
                        );
                    }
                    if targets.iter().any(|&t| t >= n) {
                        out.push(Diagnostic::new("delta target out of range").with_tokens(label()));
                    }
                }
            }
        }
        for &f in &self.accept {
            if f >= n {
                out.push(Diagnostic::new(format!("accepting index {f} out of range")));
            }
        }
        if out.is_empty() {
            if let Some(z) = neutral {
                out.extend(check_monoid_laws(
                    &self.states,
                    z,
                    |p, q| self.plus[p * n + q],
                    "+",
                ));
            }
        }
        out
    }

    pub fn build(self) -> Result<Automaton> {
        let diags = self.validate();
        if !diags.is_empty() {
            return Err(Error::Invalid(diags));
        }
        let alphabet = Alphabet::new(self.alphabet)?;
        let n = self.states.len();
        let monoid = StateMonoid::new_unchecked(
            self.states,
            self.neutral.expect("validated"),
            self.plus
                .into_iter()
                .map(|e| e.expect("validated"))
                .collect(),
        );
        let mut accept = vec![false; n];
        for f in self.accept {
            accept[f] = true;
        }
        let delta = self.delta.into_iter().map(|e| e.expect("validated"));
        Ok(if self.deterministic {
            Automaton::Dfa(Dfa::from_parts_unchecked(
                alphabet,
                monoid,
                delta.map(|t| t[0]).collect(),
                accept,
            ))
        } else {
            Automaton::Nfa(Nfa::from_parts_unchecked(
                alphabet,
                monoid,
                delta
                    .map(|mut t| {
                        t.sort_unstable();
                        t.dedup();
                        t
                    })
                    .collect(),
                accept,
            ))
        })
    }
}

/// Either kind of forest automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automaton {
    Dfa(Dfa),
    Nfa(Nfa),
}

impl Automaton {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Automaton::Dfa(d) => d.alphabet(),
            Automaton::Nfa(n) => n.alphabet(),
        }
    }

    pub fn monoid(&self) -> &StateMonoid {
        match self {
            Automaton::Dfa(d) => d.monoid(),
            Automaton::Nfa(n) => n.monoid(),
        }
    }

    pub fn is_deterministic(&self) -> bool {
        matches!(self, Automaton::Dfa(_))
    }

    pub fn to_nfa(&self) -> Nfa {
        match self {
            Automaton::Dfa(d) => d.to_nfa(),
            Automaton::Nfa(n) => n.clone(),
        }
    }

    pub fn as_dfa(&self) -> Result<&Dfa> {
        match self {
            Automaton::Dfa(d) => Ok(d),
            Automaton::Nfa(_) => Err(Error::NotDeterministic),
        }
    }

    pub fn into_dfa(self) -> Result<Dfa> {
        match self {
            Automaton::Dfa(d) => Ok(d),
            Automaton::Nfa(_) => Err(Error::NotDeterministic),
        }
    }

    pub fn accepts(&self, f: &Forest) -> Result<bool> {
        match self {
            Automaton::Dfa(d) => d.accepts(f),
            Automaton::Nfa(n) => n.accepts(f),
        }
    }

    pub fn to_raw(&self) -> RawAutomaton {
        match self {
            Automaton::Dfa(d) => d.to_raw(),
            Automaton::Nfa(n) => n.to_raw(),
        }
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        self.to_raw().validate()
    }
}

impl From<Dfa> for Automaton {
    fn from(d: Dfa) -> Self {
        Automaton::Dfa(d)
    }
}

impl From<Nfa> for Automaton {
    fn from(n: Nfa) -> Self {
        Automaton::Nfa(n)
    }
}
