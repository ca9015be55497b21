use std::collections::VecDeque;
use std::rc::Rc;

use crate::automata::{Alphabet, Dfa};
use crate::error::{Error, Result};
use crate::forest::{Forest, Tree};

use super::union_find::UnionFind;
use super::Decision;

/// A forest built from `0` by `a(w)` and sums, shared between triples.
enum Term {
    Empty,
    Node(usize, Rc<Term>),
    Sum(Rc<Term>, Rc<Term>),
}

impl Term {
    fn to_forest(&self, alphabet: &Alphabet) -> Forest {
        match self {
            Term::Empty => Forest::empty(),
            Term::Node(a, below) => Forest::from(Tree {
                label: alphabet.symbols()[*a].clone(),
                children: below.to_forest(alphabet),
            }),
            Term::Sum(l, r) => l.to_forest(alphabet).concat(&r.to_forest(alphabet)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub decision: Decision,
    pub unions: usize,
    pub finds: usize,
    /// State pairs united by the algorithm, in order.
    pub merged: Vec<(usize, usize)>,
    /// Congruence of the final partition under every letter and under sums
    /// of related pairs; checked only after a `yes`.
    pub congruent: Option<bool>,
}

pub fn union_bound(m: usize, n: usize) -> usize {
    (m + n).saturating_sub(1)
}

pub fn find_bound(m: usize, n: usize, letters: usize) -> usize {
    1 + (m + n).saturating_sub(1) * (letters + m + n)
}

/// Union-find equivalence test with a FIFO worklist of triples. Each popped
/// triple costs one find (the comparison of both representatives).
pub fn equivalent(m1: &Dfa, m2: &Dfa) -> Result<EquivalenceReport> {
    let map = m1.alphabet().align(m2.alphabet())?;
    let off = m1.num_states();
    let mut uf = UnionFind::new(off + m2.num_states());
    let mut queue: VecDeque<(usize, usize, Rc<Term>)> = VecDeque::new();
    queue.push_back((m1.neutral(), m2.neutral(), Rc::new(Term::Empty)));
    let mut merged: Vec<(usize, usize, Rc<Term>)> = Vec::new();
    while let Some((p1, p2, w)) = queue.pop_front() {
        if uf.same(p1, off + p2) {
            continue;
        }
        if m1.is_accepting(p1) != m2.is_accepting(p2) {
            let w = w.to_forest(m1.alphabet());
            if m1.accepts(&w)? == m2.accepts(&w)? {
                return Err(Error::Internal(format!(
                    "equivalence witness {w} does not separate"
                )));
            }
            return Ok(EquivalenceReport {
                decision: Decision::no(w),
                unions: uf.unions(),
                finds: uf.finds(),
                merged: merged.iter().map(|t| (t.0, t.1)).collect(),
                congruent: None,
            });
        }
        uf.union(p1, off + p2);
        merged.push((p1, p2, w.clone()));
        for (a, &b) in map.iter().enumerate() {
            queue.push_back((
                m1.step(a, p1),
                m2.step(b, p2),
                Rc::new(Term::Node(a, w.clone())),
            ));
        }
        for (q1, q2, u) in &merged {
            queue.push_back((
                m1.plus(*q1, p1),
                m2.plus(*q2, p2),
                Rc::new(Term::Sum(u.clone(), w.clone())),
            ));
            queue.push_back((
                m1.plus(p1, *q1),
                m2.plus(p2, *q2),
                Rc::new(Term::Sum(w.clone(), u.clone())),
            ));
        }
    }
    let congruent = partition_is_congruent(m1, m2, &map, &mut uf);
    Ok(EquivalenceReport {
        decision: Decision::yes(),
        unions: uf.unions(),
        finds: uf.finds(),
        merged: merged.iter().map(|t| (t.0, t.1)).collect(),
        congruent: Some(congruent),
    })
}

/// For all `p1 ~ p2` and `q1 ~ q2` across the two automata: `δ1(p1,a) ~
/// δ2(p2,a)` and `p1+q1 ~ p2+q2`. Uses uncounted lookups.
fn partition_is_congruent(m1: &Dfa, m2: &Dfa, map: &[usize], uf: &mut UnionFind) -> bool {
    let off = m1.num_states();
    let mut related = Vec::new();
    for p1 in 0..m1.num_states() {
        for p2 in 0..m2.num_states() {
            if uf.root(p1) == uf.root(off + p2) {
                related.push((p1, p2));
            }
        }
    }
    for &(p1, p2) in &related {
        for (a, &b) in map.iter().enumerate() {
            if uf.root(m1.step(a, p1)) != uf.root(off + m2.step(b, p2)) {
                return false;
            }
        }
        for &(q1, q2) in &related {
            if uf.root(m1.plus(p1, q1)) != uf.root(off + m2.plus(p2, q2)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::complement;
    use crate::builders::{node_parity, universal};
    use crate::forest::forest;

    #[test]
    fn examples() {
        let par = node_parity();
        let renamed = par
            .clone()
            .with_state_names(vec!["even".into(), "odd".into()]);
        let r = equivalent(&par, &renamed).unwrap();
        assert!(r.decision.verdict);
        assert_eq!(r.congruent, Some(true));
        assert!(r.unions <= union_bound(2, 2));
        assert!(r.finds <= find_bound(2, 2, 1));

        let all = universal(par.alphabet().clone());
        let r = equivalent(&par, &all).unwrap();
        assert_eq!(r.decision.witness, Some(forest("0").unwrap()));
        assert_eq!((r.unions, r.finds), (0, 1));

        let r = equivalent(&par, &complement(&par)).unwrap();
        assert!(!r.decision.verdict);
    }

    #[test]
    fn finds_a_deep_witness() {
        // parity vs "parity, but a(a) counts as even only at depth 0"
        let par = node_parity();
        let c = Dfa::from_fns(
            par.alphabet().clone(),
            (0..4).map(|i| i.to_string()).collect(),
            0,
            |p, q| (p + q).min(3),
            |_, q| (q + 1).min(3),
            |q| q == 1 || q == 3,
        );
        let r = equivalent(&par, &c).unwrap();
        let w = r.decision.witness.unwrap();
        assert_ne!(par.accepts(&w).unwrap(), c.accepts(&w).unwrap());
    }
}
