//! Brute-force ground truth by exhaustive enumeration.

use std::collections::{BTreeMap, BTreeSet};

use crate::automata::{Alphabet, Automaton};
use crate::error::{Error, Result};
use crate::forest::{Forest, Symbol, Tree};

/// Default limit on the number of forests an enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SizeBound(pub usize);

/// Number of forests over `letters` letters with at most `max_nodes` nodes.
pub fn forest_count(letters: usize, max_nodes: usize) -> u128 {
    exact_counts(letters, max_nodes).iter().sum()
}

/// `c[n]` forests with exactly n nodes: `c[n] = Σ_k letters·c[k-1]·c[n-k]`.
fn exact_counts(letters: usize, max_nodes: usize) -> Vec<u128> {
    let mut c = vec![0u128; max_nodes + 1];
    c[0] = 1;
    for n in 1..=max_nodes {
        c[n] = (1..=n)
            .map(|k| {
                (letters as u128)
                    .saturating_mul(c[k - 1])
                    .saturating_mul(c[n - k])
            })
            .fold(0u128, u128::saturating_add);
    }
    c
}

/// Every forest with at most `bound` nodes, ordered by node count and then by
/// printed form (see [`order_key`]).
pub fn enumerate_forests(alphabet: &Alphabet, bound: SizeBound) -> Result<Vec<Forest>> {
    enumerate_forests_capped(alphabet, bound, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_forests_capped(
    alphabet: &Alphabet,
    bound: SizeBound,
    cap: usize,
) -> Result<Vec<Forest>> {
    if forest_count(alphabet.len(), bound.0) > cap as u128 {
        return Err(Error::CapExceeded {
            what: "forest enumeration",
            limit: cap,
        });
    }
    let by_size = exact(alphabet.symbols(), bound.0);
    Ok(by_size.into_iter().flatten().collect())
}

/// Forests grouped by exact node count, each group sorted by printed form.
fn exact(letters: &[Symbol], max_nodes: usize) -> Vec<Vec<Forest>> {
    let mut by_size: Vec<Vec<Forest>> = vec![vec![Forest::empty()]];
    for n in 1..=max_nodes {
        let mut here = Vec::new();
        for k in 1..=n {
            for a in letters {
                for below in &by_size[k - 1] {
                    let t = Tree {
                        label: a.clone(),
                        children: below.clone(),
                    };
                    for rest in &by_size[n - k] {
                        let mut trees = Vec::with_capacity(1 + rest.trees().len());
                        trees.push(t.clone());
                        trees.extend_from_slice(rest.trees());
                        here.push(Forest::from_trees(trees));
                    }
                }
            }
        }
        let mut keyed: Vec<(Vec<u32>, Forest)> =
            here.into_iter().map(|f| (order_key(&f), f)).collect();
        keyed.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        by_size.push(keyed.into_iter().map(|(_, f)| f).collect());
    }
    by_size
}

/// The printed form with `+` ranked before `(` and `)`, so that `a+a` comes
/// before `a(a)`.
fn order_key(f: &Forest) -> Vec<u32> {
    f.to_string()
        .chars()
        .map(|c| match c {
            '+' => 0,
            '(' => 1,
            ')' => 2,
            c => 3 + c as u32,
        })
        .collect()
}

/// `L(m)` restricted to forests with at most `bound` nodes.
pub fn brute_language(m: &Automaton, bound: SizeBound) -> Result<BTreeSet<Forest>> {
    let mut out = BTreeSet::new();
    for f in enumerate_forests(m.alphabet(), bound)? {
        if m.accepts(&f)? {
            out.insert(f);
        }
    }
    Ok(out)
}

/// The relational substitution of `f`: every leaf labelled by a variable is
/// replaced independently by a member of that variable's slice. Labels that
/// are not keys of `slices` are letters.
pub fn brute_subst_apply(
    f: &Forest,
    slices: &BTreeMap<Symbol, BTreeSet<Forest>>,
) -> Result<BTreeSet<Forest>> {
    brute_subst_apply_within(f, slices, usize::MAX)
}

/// As [`brute_subst_apply`], keeping only results of at most `max_nodes` nodes.
pub fn brute_subst_apply_within(
    f: &Forest,
    slices: &BTreeMap<Symbol, BTreeSet<Forest>>,
    max_nodes: usize,
) -> Result<BTreeSet<Forest>> {
    // partial results grouped by node count
    let mut acc: BTreeMap<usize, BTreeSet<Forest>> = [(0, [Forest::empty()].into())].into();
    for t in f.trees() {
        let mut options: BTreeMap<usize, Vec<Forest>> = BTreeMap::new();
        for g in subst_tree(t, slices, max_nodes)? {
            options.entry(g.node_count()).or_default().push(g);
        }
        let mut next: BTreeMap<usize, BTreeSet<Forest>> = BTreeMap::new();
        for (&k, lefts) in &acc {
            for (&j, rights) in options.range(..=max_nodes.saturating_sub(k)) {
                let here = next.entry(k + j).or_default();
                for left in lefts {
                    for right in rights {
                        here.insert(left.concat(right));
                    }
                }
            }
        }
        acc = next;
    }
    Ok(acc.into_values().flatten().collect())
}

fn subst_tree(
    t: &Tree,
    slices: &BTreeMap<Symbol, BTreeSet<Forest>>,
    max_nodes: usize,
) -> Result<BTreeSet<Forest>> {
    if let Some(values) = slices.get(&t.label) {
        if !t.children.is_empty() {
            return Err(Error::VariableAtInnerNode(t.label.to_string()));
        }
        return Ok(values
            .iter()
            .filter(|g| g.node_count() <= max_nodes)
            .cloned()
            .collect());
    }
    if max_nodes == 0 {
        return Ok(BTreeSet::new());
    }
    Ok(
        brute_subst_apply_within(&t.children, slices, max_nodes - 1)?
            .into_iter()
            .map(|g| Forest::node(t.label.clone(), g))
            .collect(),
    )
}

/// Fails with [`Error::MissingVariable`] when a label of `f` is in `vars` but has
/// no slice.
pub fn check_slices(
    f: &Forest,
    vars: &BTreeSet<Symbol>,
    slices: &BTreeMap<Symbol, BTreeSet<Forest>>,
) -> Result<()> {
    for label in f.labels() {
        if vars.contains(&label) && !slices.contains_key(&label) {
            return Err(Error::MissingVariable(label.to_string()));
        }
    }
    Ok(())
}
