//! Language constructions on forest automata.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::forest::{Context, Symbol};

use super::{Alphabet, Dfa, Nfa, StateMonoid};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    Union,
    Intersection,
}

/// Componentwise product; the result uses `m1`'s letter order.
pub fn product(m1: &Dfa, m2: &Dfa, mode: ProductMode) -> Result<Dfa> {
    let map = m1.alphabet().align(m2.alphabet())?;
    let n2 = m2.num_states();
    let names = pair_names(m1.monoid(), m2.monoid());
    Ok(Dfa::from_fns(
        m1.alphabet().clone(),
        names,
        m1.neutral() * n2 + m2.neutral(),
        |x, y| m1.plus(x / n2, y / n2) * n2 + m2.plus(x % n2, y % n2),
        |a, x| m1.step(a, x / n2) * n2 + m2.step(map[a], x % n2),
        |x| combine(mode, m1.is_accepting(x / n2), m2.is_accepting(x % n2)),
    ))
}

/// Product of nondeterministic automata. For unions both sides are first
/// completed with an absorbing dead state so that no run of one component
/// can cut off an accepting run of the other.
pub fn product_nfa(m1: &Nfa, m2: &Nfa, mode: ProductMode) -> Result<Nfa> {
    let (c1, c2);
    let (m1, m2) = match mode {
        ProductMode::Intersection => (m1, m2),
        ProductMode::Union => {
            c1 = complete(m1);
            c2 = complete(m2);
            (&c1, &c2)
        }
    };
    let map = m1.alphabet().align(m2.alphabet())?;
    let n2 = m2.num_states();
    let monoid = StateMonoid::from_fn(
        pair_names(m1.monoid(), m2.monoid()),
        m1.neutral() * n2 + m2.neutral(),
        |x, y| m1.plus(x / n2, y / n2) * n2 + m2.plus(x % n2, y % n2),
    );
    Ok(Nfa::from_fns(
        m1.alphabet().clone(),
        monoid,
        |a, x| {
            let mut out = Vec::new();
            for &p in m1.step(a, x / n2) {
                for &q in m2.step(map[a], x % n2) {
                    out.push(p * n2 + q);
                }
            }
            out
        },
        |x| combine(mode, m1.is_accepting(x / n2), m2.is_accepting(x % n2)),
    ))
}

fn combine(mode: ProductMode, a: bool, b: bool) -> bool {
    match mode {
        ProductMode::Union => a || b,
        ProductMode::Intersection => a && b,
    }
}

fn pair_names(m1: &StateMonoid, m2: &StateMonoid) -> Vec<String> {
    let mut names = Vec::with_capacity(m1.len() * m2.len());
    for p in m1.names() {
        for q in m2.names() {
            names.push(format!("({p},{q})"));
        }
    }
    names
}

/// Adds a non-accepting absorbing state reachable under every transition.
/// Every nonempty forest then has the dead state among its values.
fn complete(m: &Nfa) -> Nfa {
    let n = m.num_states();
    let dead = n;
    let mut names = m.monoid().names().to_vec();
    names.push("dead".into());
    let monoid = StateMonoid::from_fn(names, m.neutral(), |p, q| {
        if p == dead || q == dead {
            dead
        } else {
            m.plus(p, q)
        }
    });
    Nfa::from_fns(
        m.alphabet().clone(),
        monoid,
        |a, q| {
            let mut t = if q == dead {
                Vec::new()
            } else {
                m.step(a, q).to_vec()
            };
            t.push(dead);
            t
        },
        |q| q != dead && m.is_accepting(q),
    )
}

pub fn complement(m: &Dfa) -> Dfa {
    m.with_accept(|q| !m.is_accepting(q))
}

/// Subset construction over the subsets reachable from `{0}` under
/// `δ_det(P, a) = ⋃ δ(p, a)` and `P1 + P2 = {p1 + p2}`.
pub fn determinize(nfa: &Nfa, max_subsets: usize) -> Result<Dfa> {
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut intern = |s: Vec<usize>, subsets: &mut Vec<Vec<usize>>| -> Result<usize> {
        if let Some(&i) = index.get(&s) {
            return Ok(i);
        }
        if subsets.len() >= max_subsets {
            return Err(Error::CapExceeded {
                what: "determinization subset count",
                limit: max_subsets,
            });
        }
        let i = subsets.len();
        index.insert(s.clone(), i);
        subsets.push(s);
        Ok(i)
    };
    intern(vec![nfa.neutral()], &mut subsets)?;
    let letters = nfa.alphabet().len();
    let mut step: Vec<Vec<usize>> = Vec::new();
    let mut sums: HashMap<(usize, usize), usize> = HashMap::new();
    let mut j = 0;
    while j < subsets.len() {
        let mut row = Vec::with_capacity(letters);
        for a in 0..letters {
            let mut t: Vec<usize> = subsets[j]
                .iter()
                .flat_map(|&p| nfa.step(a, p).iter().copied())
                .collect();
            t.sort_unstable();
            t.dedup();
            row.push(intern(t, &mut subsets)?);
        }
        step.push(row);
        for i in 0..=j {
            for (x, y) in [(i, j), (j, i)] {
                if sums.contains_key(&(x, y)) {
                    continue;
                }
                let mut s: Vec<usize> = Vec::new();
                for &p in &subsets[x] {
                    for &q in &subsets[y] {
                        s.push(nfa.plus(p, q));
                    }
                }
                s.sort_unstable();
                s.dedup();
                let k = intern(s, &mut subsets)?;
                sums.insert((x, y), k);
            }
        }
        j += 1;
    }
    let names = subsets
        .iter()
        .map(|s| {
            let inner: Vec<&str> = s.iter().map(|&q| nfa.state_name(q)).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    Ok(Dfa::from_fns(
        nfa.alphabet().clone(),
        names,
        0,
        |x, y| sums[&(x, y)],
        |a, x| step[x][a],
        |x| subsets[x].iter().any(|&q| nfa.is_accepting(q)),
    ))
}

/// A forest-algebra homomorphism from `A^Δ` into `B^Δ`, fixed by the image
/// context of each `a(@)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpec {
    domain: Alphabet,
    images: Vec<Context>,
}

impl HomSpec {
    pub fn new(pairs: Vec<(Symbol, Context)>) -> Result<Self> {
        let (letters, images): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        Ok(HomSpec {
            domain: Alphabet::new(letters)?,
            images,
        })
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn image(&self, letter: usize) -> &Context {
        &self.images[letter]
    }

    /// Apply the homomorphism to a forest over the domain alphabet.
    pub fn apply(&self, f: &crate::forest::Forest) -> Result<crate::forest::Forest> {
        let mut out = crate::forest::Forest::empty();
        for t in f.trees() {
            let a = self.domain.letter(&t.label)?;
            let below = self.apply(&t.children)?;
            out = out + self.images[a].apply(&below);
        }
        Ok(out)
    }
}

/// Automaton for `{ f : h(f) ∈ L(m) }` with `δ'(a, q) = δ̂(h(a(@)), q)`.
pub fn inverse_hom(m: &Dfa, h: &HomSpec) -> Result<Dfa> {
    let n = m.num_states();
    let mut delta = Vec::with_capacity(h.domain.len() * n);
    for c in &h.images {
        for q in 0..n {
            delta.push(m.eval_context(c, q)?);
        }
    }
    Ok(Dfa::from_parts_unchecked(
        h.domain.clone(),
        m.monoid().clone(),
        delta,
        m.accepting().to_vec(),
    ))
}

/// Automaton for `G(L)`: forests of `L` all of whose subtrees `a(g)` have
/// `g ∈ L`. Transitions out of non-accepting states go to a fresh absorbing
/// sink.
pub fn globally(m: &Dfa) -> Dfa {
    let n = m.num_states();
    let sink = n;
    let mut names = m.monoid().names().to_vec();
    names.push("bot".into());
    Dfa::from_fns(
        m.alphabet().clone(),
        names,
        m.neutral(),
        |p, q| {
            if p == sink || q == sink {
                sink
            } else {
                m.plus(p, q)
            }
        },
        |a, q| {
            if q != sink && m.is_accepting(q) {
                m.step(a, q)
            } else {
                sink
            }
        },
        |q| q != sink && m.is_accepting(q),
    )
}

/// Adjoin a fresh neutral `0'` and demote the old neutral to an ordinary
/// element, so that no nonempty forest evaluates to the neutral state.
pub fn split_neutral(m: &Dfa) -> Dfa {
    let n = m.num_states();
    let fresh = n;
    let old = m.neutral();
    let mut names = m.monoid().names().to_vec();
    names.push(format!("{}'", m.state_name(old)));
    Dfa::from_fns(
        m.alphabet().clone(),
        names,
        fresh,
        |p, q| match (p == fresh, q == fresh) {
            (true, _) => q,
            (_, true) => p,
            _ => m.plus(p, q),
        },
        |a, q| m.step(a, if q == fresh { old } else { q }),
        |q| m.is_accepting(if q == fresh { old } else { q }),
    )
}

pub fn split_neutral_nfa(m: &Nfa) -> Nfa {
    let n = m.num_states();
    let fresh = n;
    let old = m.neutral();
    let mut names = m.monoid().names().to_vec();
    names.push(format!("{}'", m.state_name(old)));
    let monoid = StateMonoid::from_fn(names, fresh, |p, q| match (p == fresh, q == fresh) {
        (true, _) => q,
        (_, true) => p,
        _ => m.plus(p, q),
    });
    Nfa::from_fns(
        m.alphabet().clone(),
        monoid,
        |a, q| m.step(a, if q == fresh { old } else { q }).to_vec(),
        |q| m.is_accepting(if q == fresh { old } else { q }),
    )
}

/// The same automaton read over `alphabet`, which must contain every letter
/// of `m`. Letters new to `m` lead to a fresh absorbing dead state.
pub fn extend_alphabet(m: &Dfa, alphabet: &Alphabet) -> Result<Dfa> {
    let missing: Vec<&Symbol> = m
        .alphabet()
        .symbols()
        .iter()
        .filter(|s| !alphabet.contains(s))
        .collect();
    if let Some(s) = missing.first() {
        return Err(Error::AlphabetMismatch(format!(
            "letter `{s}` is not in {{{}}}",
            alphabet.display_list()
        )));
    }
    let index: Vec<Option<usize>> = alphabet
        .symbols()
        .iter()
        .map(|s| m.alphabet().get(s))
        .collect();
    if index.iter().all(Option::is_some) {
        return Ok(Dfa::from_parts_unchecked(
            alphabet.clone(),
            m.monoid().clone(),
            (0..alphabet.len() * m.num_states())
                .map(|k| {
                    m.step(
                        index[k / m.num_states()].expect("present"),
                        k % m.num_states(),
                    )
                })
                .collect(),
            m.accepting().to_vec(),
        ));
    }
    let dead = m.num_states();
    let mut names = m.monoid().names().to_vec();
    names.push("dead".into());
    Ok(Dfa::from_fns(
        alphabet.clone(),
        names,
        m.neutral(),
        |p, q| {
            if p == dead || q == dead {
                dead
            } else {
                m.plus(p, q)
            }
        },
        |a, q| match index[a] {
            Some(b) if q != dead => m.step(b, q),
            _ => dead,
        },
        |q| q != dead && m.is_accepting(q),
    ))
}

/// The same automaton with its letters listed in the order of `alphabet`,
/// which must hold the same letters.
pub fn reorder_nfa(m: &Nfa, alphabet: &Alphabet) -> Result<Nfa> {
    let map = alphabet.align(m.alphabet())?;
    Ok(Nfa::from_fns(
        alphabet.clone(),
        m.monoid().clone(),
        |a, q| m.step(map[a], q).to_vec(),
        |q| m.is_accepting(q),
    ))
}
