//! Small ready-made automata.

use std::collections::BTreeMap;

use crate::automata::{Alphabet, Dfa, Nfa, StateMonoid};
use crate::forest::{Forest, Tree, AND, FALSE, NOT, OR, TRUE};

/// Node-count parity over `{a}`: states `e`, `o` added mod 2, `δ(a, q) = q + o`,
/// accepting `o`.
pub fn node_parity() -> Dfa {
    Dfa::from_fns(
        Alphabet::from_strs(&["a"]),
        vec!["e".into(), "o".into()],
        0,
        |p, q| p ^ q,
        |_, q| q ^ 1,
        |q| q == 1,
    )
}

/// Over `{a}`: `0`, an idempotent `s`, `δ(a, 0) = {s}` and `δ(a, s) = ∅`,
/// accepting `s`. Accepts the nonempty sums of leaves.
pub fn dying_nfa() -> Nfa {
    let monoid = StateMonoid::from_fn(vec!["0".into(), "s".into()], 0, |p, q| p | q);
    Nfa::from_fns(
        Alphabet::from_strs(&["a"]),
        monoid,
        |_, q| if q == 0 { vec![1] } else { vec![] },
        |q| q == 1,
    )
}

/// One accepting state.
pub fn universal(alphabet: Alphabet) -> Dfa {
    Dfa::from_fns(alphabet, vec!["q".into()], 0, |_, _| 0, |_, _| 0, |_| true)
}

/// One rejecting state.
pub fn empty_language(alphabet: Alphabet) -> Dfa {
    universal(alphabet).with_accept(|_| false)
}

/// A Dfa accepting exactly `forests`. States are the contiguous pieces of the
/// given forests and of all their child lists, plus a dead state.
pub fn finite_language(alphabet: Alphabet, forests: &[Forest]) -> Dfa {
    let mut pieces: BTreeMap<Forest, usize> = BTreeMap::new();
    pieces.insert(Forest::empty(), 0);
    fn collect(f: &Forest, pieces: &mut BTreeMap<Forest, usize>) {
        let trees = f.trees();
        for i in 0..trees.len() {
            for j in i + 1..=trees.len() {
                let next = pieces.len();
                pieces
                    .entry(Forest::from_trees(trees[i..j].to_vec()))
                    .or_insert(next);
            }
            collect(&trees[i].children, pieces);
        }
    }
    for f in forests {
        collect(f, &mut pieces);
    }
    let mut by_index: Vec<Forest> = vec![Forest::empty(); pieces.len()];
    for (f, &i) in &pieces {
        by_index[i] = f.clone();
    }
    let dead = by_index.len();
    let mut names: Vec<String> = by_index.iter().map(ToString::to_string).collect();
    names.push("dead".into());
    let lookup = |f: Forest| pieces.get(&f).copied().unwrap_or(dead);
    Dfa::from_fns(
        alphabet.clone(),
        names,
        0,
        |p, q| {
            if p == dead || q == dead {
                dead
            } else {
                lookup(by_index[p].concat(&by_index[q]))
            }
        },
        |a, q| {
            if q == dead {
                dead
            } else {
                let t = Tree {
                    label: alphabet.symbols()[a].clone(),
                    children: by_index[q].clone(),
                };
                lookup(Forest::from(t))
            }
        },
        |q| q != dead && forests.contains(&by_index[q]),
    )
}

pub fn singleton(alphabet: Alphabet, f: &Forest) -> Dfa {
    finite_language(alphabet, std::slice::from_ref(f))
}

/// The encodings of closed Boolean expressions that evaluate to true, over
/// the connective alphabet `and or not T F`.
///
/// States: the empty forest, a single value `0`/`1`, an ordered pair of
/// values, and a dead state for everything else.
pub fn true_formulas() -> Dfa {
    const EMPTY: usize = 0;
    const DEAD: usize = 7;
    let single = |b: bool| 1 + b as usize;
    let pair = |b: bool, c: bool| 3 + 2 * b as usize + c as usize;
    let names = ["empty", "v0", "v1", "p00", "p01", "p10", "p11", "dead"]
        .map(String::from)
        .to_vec();
    let alphabet = Alphabet::from_strs(&[AND, OR, NOT, TRUE, FALSE]);
    Dfa::from_fns(
        alphabet,
        names,
        EMPTY,
        move |p, q| match (p, q) {
            (EMPTY, q) => q,
            (p, EMPTY) => p,
            (1 | 2, 1 | 2) => pair(p == 2, q == 2),
            _ => DEAD,
        },
        move |a, q| match (a, q) {
            (0, 3..=6) => single(q == 6),
            (1, 3..=6) => single(q != 3),
            (2, 1 | 2) => single(q == 1),
            (3, EMPTY) => single(true),
            (4, EMPTY) => single(false),
            _ => DEAD,
        },
        |q| q == 2,
    )
}
