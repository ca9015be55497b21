//! Relational leaf substitutions: image and preimage automata, saturation,
//! unions as substitutions and the combination of several inclusions.

mod image;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::automata::{
    extend_alphabet, product_nfa, reorder_nfa, split_neutral, split_neutral_nfa, Alphabet,
    Automaton, Dfa, Nfa, ProductMode,
};
use crate::builders::singleton;
use crate::decide::{is_empty, mark, Limits};
use crate::error::{Error, Result};
use crate::forest::{Forest, Symbol};

pub use image::{image_automaton, subst_image_nfa, ImageAutomaton};

/// A map from variables to nonempty recognizable languages over a base
/// alphabet. The variables are disjoint from the base alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    base: Alphabet,
    vars: Vec<Symbol>,
    values: Vec<Nfa>,
}

impl Substitution {
    /// Checks that the variables are fresh, that every value is read over the
    /// base alphabet and that no value language is empty.
    pub fn new(base: Alphabet, pairs: Vec<(Symbol, Nfa)>) -> Result<Self> {
        let mut vars = Vec::new();
        let mut values = Vec::new();
        for (x, value) in pairs {
            if base.contains(&x) {
                return Err(Error::Precondition(format!(
                    "variable `{x}` is also a base letter"
                )));
            }
            if vars.contains(&x) {
                return Err(Error::Precondition(format!("variable `{x}` given twice")));
            }
            let value = reorder_nfa(&value, &base)?;
            if is_empty(&value)?.decision.verdict {
                return Err(Error::EmptyValue(x.to_string()));
            }
            vars.push(x);
            values.push(value);
        }
        Ok(Substitution { base, vars, values })
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn vars(&self) -> &[Symbol] {
        &self.vars
    }

    pub fn value(&self, x: &Symbol) -> Option<&Nfa> {
        self.vars
            .iter()
            .position(|v| v == x)
            .map(|i| &self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Nfa)> {
        self.vars.iter().zip(&self.values)
    }

    pub fn var_set(&self) -> BTreeSet<Symbol> {
        self.vars.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

/// The substitution `x ↦ { f : f^M ∈ T_x }` for a subject automaton `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturatedSubstitution {
    subject: Dfa,
    vars: Vec<Symbol>,
    classes: Vec<BTreeSet<usize>>,
}

impl SaturatedSubstitution {
    /// Every class must contain a state that is the value of some forest.
    pub fn new(subject: Dfa, pairs: Vec<(Symbol, BTreeSet<usize>)>) -> Result<Self> {
        let reachable = subject.reachable();
        let mut vars = Vec::new();
        let mut classes = Vec::new();
        for (x, class) in pairs {
            if class.iter().any(|&q| q >= subject.num_states()) {
                return Err(Error::Precondition(format!(
                    "class of `{x}` names unknown states"
                )));
            }
            if !class.iter().any(|&q| reachable[q]) {
                return Err(Error::EmptyValue(x.to_string()));
            }
            vars.push(x);
            classes.push(class);
        }
        Ok(SaturatedSubstitution {
            subject,
            vars,
            classes,
        })
    }

    pub fn subject(&self) -> &Dfa {
        &self.subject
    }

    pub fn vars(&self) -> &[Symbol] {
        &self.vars
    }

    pub fn class(&self, x: &Symbol) -> Option<&BTreeSet<usize>> {
        self.vars
            .iter()
            .position(|v| v == x)
            .map(|i| &self.classes[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &BTreeSet<usize>)> {
        self.vars.iter().zip(&self.classes)
    }

    pub fn to_substitution(&self) -> Result<Substitution> {
        saturated_to_substitution(self)
    }
}

impl fmt::Display for SaturatedSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, class)) in self.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let names: Vec<&str> = class.iter().map(|&q| self.subject.state_name(q)).collect();
            write!(f, "{x} -> {{{}}}", names.join(","))?;
        }
        Ok(())
    }
}

/// `T_x = { f^R : f ∈ σ(x) }`, read off the reachable pairs of the product of
/// each value automaton with `r`.
pub fn saturate(sigma: &Substitution, r: &Dfa) -> Result<SaturatedSubstitution> {
    let rn = r.to_nfa();
    let mut pairs = Vec::new();
    for (x, value) in sigma.iter() {
        let p = product_nfa(&rn, value, ProductMode::Intersection)?;
        let marked = mark(&p).marked;
        let width = value.num_states();
        let class = (0..p.num_states())
            .filter(|&s| marked[s] && value.is_accepting(s % width))
            .map(|s| s / width)
            .collect();
        pairs.push((x.clone(), class));
    }
    SaturatedSubstitution::new(r.clone(), pairs)
}

/// Each value becomes the subject automaton accepting its class.
pub fn saturated_to_substitution(s: &SaturatedSubstitution) -> Result<Substitution> {
    let pairs = s
        .iter()
        .map(|(x, class)| {
            let value = s.subject.with_accept(|q| class.contains(&q)).to_nfa();
            (x.clone(), value)
        })
        .collect();
    Substitution::new(s.subject.alphabet().clone(), pairs)
}

/// An automaton over `A ∪ X` for `{ g : σ(g) ∩ L(m) ≠ ∅ }`. A variable leaf
/// reads the values of the members of its language. It has the states of `m`,
/// unless some nonempty forest would evaluate to the neutral state; then a
/// fresh neutral is added so that a variable cannot be read above anything.
pub fn subst_preimage_nfa(m: &Automaton, sigma: &Substitution) -> Result<Nfa> {
    let n = m.to_nfa();
    n.alphabet().align(sigma.base())?;
    let mut leaf_targets = Vec::new();
    for (_, value) in sigma.iter() {
        let p = product_nfa(&n, value, ProductMode::Intersection)?;
        let marked = mark(&p).marked;
        let width = value.num_states();
        let targets: Vec<usize> = (0..p.num_states())
            .filter(|&s| marked[s] && value.is_accepting(s % width))
            .map(|s| s / width)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        leaf_targets.push(targets);
    }
    let alphabet = n.alphabet().extended(sigma.vars());
    let letters = n.alphabet().len();
    let zero = n.neutral();
    let split = split_neutral_nfa(&n);
    let fresh = split.neutral();
    let pre_split = Nfa::from_fns(
        alphabet.clone(),
        split.monoid().clone(),
        |a, q| {
            if a < letters {
                split.step(a, q).to_vec()
            } else if q == fresh {
                leaf_targets[a - letters].clone()
            } else {
                Vec::new()
            }
        },
        |q| split.is_accepting(q),
    );
    if mark(&pre_split).marked[zero] {
        return Ok(pre_split);
    }
    Ok(Nfa::from_fns(
        alphabet,
        n.monoid().clone(),
        |a, q| {
            if a < letters {
                n.step(a, q).to_vec()
            } else if q == zero {
                leaf_targets[a - letters].clone()
            } else {
                Vec::new()
            }
        },
        |q| n.is_accepting(q),
    ))
}

/// An automaton `M` over `A` plus fresh markers `m_1 … m_k` and the
/// substitution `m_i ↦ {0}` such that `σ(L(M)) = L_1 ∪ ⋯ ∪ L_k`. Every node
/// of an accepted forest carries the marker of its component among its
/// children.
pub fn union_as_subst(ls: &[Dfa]) -> Result<(Dfa, Substitution)> {
    let base = ls.first().map(|l| l.alphabet().clone()).unwrap_or_default();
    let maps = ls
        .iter()
        .map(|l| base.align(l.alphabet()))
        .collect::<Result<Vec<_>>>()?;
    let mut markers: Vec<Symbol> = Vec::new();
    for i in 1..=ls.len() {
        let m = base.fresh(&format!("m{i}"), &markers);
        markers.push(m);
    }
    // 0, bot, then (q, i) at offset[i] + 2q and (q, i') at offset[i] + 2q + 1
    const ZERO: usize = 0;
    const BOT: usize = 1;
    let mut offset = Vec::new();
    let mut owner = vec![None, None];
    let mut names = vec!["0".to_string(), "bot".to_string()];
    for (i, l) in ls.iter().enumerate() {
        offset.push(names.len());
        for q in 0..l.num_states() {
            for primed in [false, true] {
                owner.push(Some((i, q, primed)));
                let tick = if primed { "'" } else { "" };
                names.push(format!("({},{}{tick})", l.state_name(q), i + 1));
            }
        }
    }
    let state = |i: usize, q: usize, primed: bool| offset[i] + 2 * q + primed as usize;
    let alphabet = base.extended(&markers);
    let letters = base.len();
    let zero_accepted = ls.iter().any(|l| l.is_accepting(l.neutral()));
    let m = Dfa::from_fns(
        alphabet,
        names,
        ZERO,
        |x, y| match (x, y) {
            (ZERO, y) => y,
            (x, ZERO) => x,
            _ => match (owner[x], owner[y]) {
                (Some((i, p, primed)), Some((j, q, _))) if i == j => {
                    state(i, ls[i].plus(p, q), primed)
                }
                _ => BOT,
            },
        },
        |a, x| {
            if a >= letters {
                return if x == ZERO {
                    let i = a - letters;
                    state(i, ls[i].neutral(), true)
                } else {
                    BOT
                };
            }
            match owner[x] {
                Some((i, q, true)) => state(i, ls[i].step(maps[i][a], q), false),
                _ => BOT,
            }
        },
        |x| match owner[x] {
            Some((i, q, false)) => ls[i].is_accepting(q),
            _ => x == ZERO && zero_accepted,
        },
    );
    let empty_only = singleton(base.clone(), &Forest::empty()).to_nfa();
    let sigma = Substitution::new(
        base,
        markers
            .into_iter()
            .map(|x| (x, empty_only.clone()))
            .collect(),
    )?;
    Ok((m, sigma))
}

/// Two automata for `L = { i(ℓ) : ℓ ∈ L_i }` and `R = { i(r) : r ∈ R_i }`
/// over fresh index letters, so that `σ(L) ⊆ σ(R)` iff `σ(L_i) ⊆ σ(R_i)`
/// for every `i`.
pub fn combine_inequalities(ls: &[Dfa], rs: &[Dfa], limits: &Limits) -> Result<(Dfa, Dfa)> {
    if ls.len() != rs.len() {
        return Err(Error::Precondition(format!(
            "{} left and {} right languages",
            ls.len(),
            rs.len()
        )));
    }
    let mut seen = Alphabet::default();
    for m in ls.iter().chain(rs) {
        seen = seen.extended(m.alphabet().symbols());
    }
    let mut indices: Vec<Symbol> = Vec::new();
    for i in 1..=ls.len() {
        let s = seen.fresh(&format!("i{i}"), &indices);
        indices.push(s);
    }
    Ok((
        tagged_union(ls, &indices, limits)?,
        tagged_union(rs, &indices, limits)?,
    ))
}

/// `{ i(ℓ) : ℓ ∈ L(ms[i]) }` by running all automata in parallel below the
/// index letter.
fn tagged_union(ms: &[Dfa], indices: &[Symbol], limits: &Limits) -> Result<Dfa> {
    let mut letters = Alphabet::default();
    for m in ms {
        letters = letters.extended(m.alphabet().symbols());
    }
    let parts = ms
        .iter()
        .map(|m| Ok(split_neutral(&extend_alphabet(m, &letters)?)))
        .collect::<Result<Vec<_>>>()?;
    let alphabet = letters.extended(indices);
    let plain = letters.len();

    let mut tuples: Vec<Vec<usize>> = vec![parts.iter().map(Dfa::neutral).collect()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(tuples[0].clone(), 0)]);
    let mut j = 0;
    while j < tuples.len() {
        let mut fresh = Vec::new();
        for a in 0..plain {
            fresh.push(
                parts
                    .iter()
                    .zip(&tuples[j])
                    .map(|(m, &q)| m.step(a, q))
                    .collect::<Vec<_>>(),
            );
        }
        for i in 0..=j {
            for (x, y) in [(i, j), (j, i)] {
                fresh.push(
                    parts
                        .iter()
                        .enumerate()
                        .map(|(c, m)| m.plus(tuples[x][c], tuples[y][c]))
                        .collect(),
                );
            }
        }
        for t in fresh {
            if !index.contains_key(&t) {
                if tuples.len() >= limits.max_states {
                    return Err(Error::CapExceeded {
                        what: "combined automaton states",
                        limit: limits.max_states,
                    });
                }
                index.insert(t.clone(), tuples.len());
                tuples.push(t);
            }
        }
        j += 1;
    }
    let ok = tuples.len();
    let bot = ok + 1;
    let mut names: Vec<String> = tuples
        .iter()
        .map(|t| {
            let inner: Vec<&str> = t
                .iter()
                .zip(&parts)
                .map(|(&q, m)| m.state_name(q))
                .collect();
            format!("<{}>", inner.join(","))
        })
        .collect();
    names.push("ok".into());
    names.push("bot".into());
    Ok(Dfa::from_fns(
        alphabet,
        names,
        0,
        |x, y| match (x, y) {
            (0, y) => y,
            (x, 0) => x,
            _ if x >= ok || y >= ok => bot,
            _ => {
                index[&parts
                    .iter()
                    .enumerate()
                    .map(|(c, m)| m.plus(tuples[x][c], tuples[y][c]))
                    .collect::<Vec<_>>()]
            }
        },
        |a, x| {
            if x >= ok {
                bot
            } else if a < plain {
                index[&parts
                    .iter()
                    .zip(&tuples[x])
                    .map(|(m, &q)| m.step(a, q))
                    .collect::<Vec<_>>()]
            } else {
                let i = a - plain;
                if parts[i].is_accepting(tuples[x][i]) {
                    ok
                } else {
                    bot
                }
            }
        },
        |x| x == ok,
    ))
}

#[cfg(test)]
mod tests;
