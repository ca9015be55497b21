//! The image automaton of a relational leaf substitution.
//!
//! States are reduced words over a free product of the subject's state monoid,
//! the value automata's monoids and one marker `s_x` per variable. A marker
//! opens the replacement of an `x`-leaf; the `x`-values that follow it
//! accumulate the replacement and are closed into the subject value `x^M`
//! (the value of the leaf `x`) once something else follows.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::automata::{split_neutral, split_neutral_nfa, Dfa, Nfa, StateMonoid};
use crate::decide::Limits;
use crate::error::{Error, Result};

use super::Substitution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Letter {
    Bottom,
    Marker(usize),
    Base(usize),
    Value(usize, usize),
}

type Word = Vec<Letter>;

struct Var {
    /// Index of the leaf letter in the subject's alphabet.
    leaf_value: usize,
    value: Nfa,
    /// Letter map from the base alphabet into the value automaton.
    letters: Vec<usize>,
    zero_accepts: bool,
}

struct Rewriter<'a> {
    subject: &'a Dfa,
    vars: Vec<Var>,
    max_steps: usize,
}

impl Rewriter<'_> {
    fn is_identity(&self, l: Letter) -> bool {
        match l {
            Letter::Base(q) => q == self.subject.neutral(),
            Letter::Value(k, v) => v == self.vars[k].value.neutral(),
            _ => false,
        }
    }

    /// Leftmost rewriting to a fixpoint.
    fn normalize(&self, mut w: Word) -> Result<Word> {
        let bottom = || vec![Letter::Bottom];
        let mut steps = 0;
        'outer: loop {
            steps += 1;
            if steps > self.max_steps {
                return Err(Error::CapExceeded {
                    what: "rewriting steps",
                    limit: self.max_steps,
                });
            }
            for i in 0..w.len() {
                let here = w[i];
                if here == Letter::Bottom {
                    return Ok(bottom());
                }
                if self.is_identity(here) {
                    w.remove(i);
                    continue 'outer;
                }
                let Some(&next) = w.get(i + 1) else { break };
                match (here, next) {
                    (Letter::Base(p), Letter::Base(q)) => {
                        w.splice(i..i + 2, [Letter::Base(self.subject.plus(p, q))]);
                        continue 'outer;
                    }
                    (Letter::Value(j, v), Letter::Value(k, u)) if j == k => {
                        let sum = self.vars[k].value.plus(v, u);
                        w.splice(i..i + 2, [Letter::Value(k, sum)]);
                        continue 'outer;
                    }
                    (Letter::Base(_) | Letter::Value(..), Letter::Value(..)) => {
                        return Ok(bottom());
                    }
                    (Letter::Marker(k), Letter::Value(j, e)) if j == k => {
                        if i + 2 < w.len() && !matches!(w[i + 2], Letter::Value(l, _) if l == k) {
                            if !self.vars[k].value.is_accepting(e) {
                                return Ok(bottom());
                            }
                            w.splice(i..i + 2, [Letter::Base(self.vars[k].leaf_value)]);
                            continue 'outer;
                        }
                    }
                    (Letter::Marker(k), _) => {
                        if !self.vars[k].zero_accepts {
                            return Ok(bottom());
                        }
                        w[i] = Letter::Base(self.vars[k].leaf_value);
                        continue 'outer;
                    }
                    _ => {}
                }
            }
            return Ok(w);
        }
    }

    fn concat(&self, a: &[Letter], b: &[Letter]) -> Result<Word> {
        let mut w = Vec::with_capacity(a.len() + b.len());
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        self.normalize(w)
    }

    /// Closure of `w` under putting markers in front and behind.
    fn marker_closure(&self, w: Word) -> Result<BTreeSet<Word>> {
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut todo = vec![w];
        while let Some(w) = todo.pop() {
            if !seen.insert(w.clone()) {
                continue;
            }
            for k in 0..self.vars.len() {
                let s = [Letter::Marker(k)];
                for next in [self.concat(&s, &w)?, self.concat(&w, &s)?] {
                    if !seen.contains(&next) {
                        todo.push(next);
                    }
                }
            }
        }
        Ok(seen)
    }

    /// The subject value of a word once every open replacement is closed, if
    /// the word can be closed at all.
    fn close(&self, w: &[Letter]) -> Option<usize> {
        let (rest, tail) = match w {
            [.., Letter::Bottom] => return None,
            [rest @ .., Letter::Marker(k), Letter::Value(j, e)] if j == k => {
                if !self.vars[*k].value.is_accepting(*e) {
                    return None;
                }
                (rest, Some(self.vars[*k].leaf_value))
            }
            [rest @ .., Letter::Marker(k)] => {
                if !self.vars[*k].zero_accepts {
                    return None;
                }
                (rest, Some(self.vars[*k].leaf_value))
            }
            _ => (w, None),
        };
        let base = match rest {
            [] => self.subject.neutral(),
            [Letter::Base(q)] => *q,
            _ => return None,
        };
        Some(match tail {
            Some(t) => self.subject.plus(base, t),
            None => base,
        })
    }

    fn render(&self, w: &[Letter], var_names: &[String]) -> String {
        if w.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, l) in w.iter().enumerate() {
            if i > 0 {
                out.push('+');
            }
            match *l {
                Letter::Bottom => out.push_str("bot"),
                Letter::Marker(k) => {
                    let _ = write!(out, "s_{}", var_names[k]);
                }
                Letter::Base(q) => {
                    let _ = write!(out, "[{}]", self.subject.state_name(q));
                }
                Letter::Value(k, v) => {
                    let _ = write!(
                        out,
                        "{}[{}]",
                        var_names[k],
                        self.vars[k].value.state_name(v)
                    );
                }
            }
        }
        out
    }
}

/// An image automaton together with the subject values each of its states
/// can close to.
#[derive(Clone, Debug)]
pub struct ImageAutomaton {
    nfa: Nfa,
    subject: Dfa,
    closings: Vec<BTreeSet<usize>>,
}

impl ImageAutomaton {
    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub fn into_nfa(self) -> Nfa {
        self.nfa
    }

    /// The subject automaton after neutral splitting; [`Self::closings`] refers
    /// to its states.
    pub fn subject(&self) -> &Dfa {
        &self.subject
    }

    /// Subject values obtained by closing state `q` after putting markers in
    /// front of and behind it.
    pub fn closings(&self, q: usize) -> &BTreeSet<usize> {
        &self.closings[q]
    }
}

/// An automaton for `σ(L(m))` over the base alphabet of `sigma`.
pub fn subst_image_nfa(m: &Dfa, sigma: &Substitution, limits: &Limits) -> Result<Nfa> {
    Ok(image_automaton(m, sigma, limits)?.into_nfa())
}

pub fn image_automaton(m: &Dfa, sigma: &Substitution, limits: &Limits) -> Result<ImageAutomaton> {
    let base = sigma.base();
    for s in m.alphabet().symbols() {
        if !base.contains(s) && sigma.value(s).is_none() {
            return Err(Error::AlphabetMismatch(format!(
                "letter `{s}` is neither a base letter nor a variable"
            )));
        }
    }
    let subject = split_neutral(m);
    let mut vars = Vec::new();
    let mut var_names = Vec::new();
    for (x, value) in sigma.iter() {
        let Some(leaf) = subject.alphabet().get(x) else {
            continue;
        };
        let value = split_neutral_nfa(value);
        let letters = base.align(value.alphabet())?;
        vars.push(Var {
            leaf_value: subject.step(leaf, subject.neutral()),
            zero_accepts: value.is_accepting(value.neutral()),
            value,
            letters,
        });
        var_names.push(x.to_string());
    }
    let base_in_subject: Vec<Option<usize>> = base
        .symbols()
        .iter()
        .map(|s| subject.alphabet().get(s))
        .collect();
    let rw = Rewriter {
        subject: &subject,
        vars,
        max_steps: limits.max_steps,
    };

    let mut words: Vec<Word> = Vec::new();
    let mut index: HashMap<Word, usize> = HashMap::new();
    let mut closings: Vec<BTreeSet<usize>> = Vec::new();
    let intern = |w: Word,
                  words: &mut Vec<Word>,
                  index: &mut HashMap<Word, usize>,
                  closings: &mut Vec<BTreeSet<usize>>|
     -> Result<usize> {
        if let Some(&i) = index.get(&w) {
            return Ok(i);
        }
        if words.len() >= limits.max_states {
            return Err(Error::CapExceeded {
                what: "substitution image states",
                limit: limits.max_states,
            });
        }
        let close: BTreeSet<usize> = rw
            .marker_closure(w.clone())?
            .iter()
            .filter_map(|v| rw.close(v))
            .collect();
        let i = words.len();
        index.insert(w.clone(), i);
        words.push(w);
        closings.push(close);
        Ok(i)
    };
    intern(Vec::new(), &mut words, &mut index, &mut closings)?;
    let mut closure_cache: HashMap<Word, BTreeSet<Word>> = HashMap::new();
    let mut delta: Vec<Vec<BTreeSet<usize>>> = Vec::new();
    let mut sums: HashMap<(usize, usize), usize> = HashMap::new();
    let mut j = 0;
    while j < words.len() {
        let mut row = Vec::with_capacity(base.len());
        for (b, in_subject) in base_in_subject.iter().enumerate() {
            let mut tree_words: BTreeSet<Word> = BTreeSet::new();
            if let Some(a) = *in_subject {
                for &q in &closings[j] {
                    tree_words.insert(vec![Letter::Base(subject.step(a, q))]);
                }
            }
            for (k, var) in rw.vars.iter().enumerate() {
                let v = match words[j].as_slice() {
                    [] => var.value.neutral(),
                    [Letter::Value(l, v)] if *l == k => *v,
                    _ => continue,
                };
                for &t in var.value.step(var.letters[b], v) {
                    tree_words.insert(vec![Letter::Value(k, t)]);
                }
            }
            let mut targets = BTreeSet::new();
            for d in tree_words {
                let d = rw.normalize(d)?;
                if !closure_cache.contains_key(&d) {
                    let c = rw.marker_closure(d.clone())?;
                    closure_cache.insert(d.clone(), c);
                }
                for w in closure_cache[&d].clone() {
                    targets.insert(intern(w, &mut words, &mut index, &mut closings)?);
                }
            }
            row.push(targets);
        }
        delta.push(row);
        for i in 0..=j {
            for (x, y) in [(i, j), (j, i)] {
                if sums.contains_key(&(x, y)) {
                    continue;
                }
                let w = rw.concat(&words[x], &words[y])?;
                let k = intern(w, &mut words, &mut index, &mut closings)?;
                sums.insert((x, y), k);
            }
        }
        j += 1;
    }

    let names = words.iter().map(|w| rw.render(w, &var_names)).collect();
    let monoid = StateMonoid::from_fn(names, 0, |x, y| sums[&(x, y)]);
    let nfa = Nfa::from_fns(
        base.clone(),
        monoid,
        |b, q| delta[q][b].iter().copied().collect(),
        |q| closings[q].iter().any(|&p| subject.is_accepting(p)),
    );
    Ok(ImageAutomaton {
        nfa,
        subject: subject.clone(),
        closings,
    })
}
