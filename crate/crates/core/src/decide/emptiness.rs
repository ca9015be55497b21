use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::automata::{Alphabet, Nfa};
use crate::error::{Error, Result};
use crate::forest::{Forest, Tree};

use super::Decision;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Origin {
    Empty,
    Letter(usize, usize),
    Sum(usize, usize),
}

/// The states that are values of some forest, each with a smallest forest
/// producing it.
#[derive(Clone, Debug)]
pub struct Marking {
    pub marked: Vec<bool>,
    /// Marked states in the order they were settled.
    pub order: Vec<usize>,
    /// Node count of the smallest forest reaching each marked state.
    pub sizes: Vec<Option<usize>>,
    /// Set insertions performed: two per settled pair and one per letter
    /// and settled state.
    pub operations: usize,
    origin: Vec<Option<Origin>>,
}

impl Marking {
    /// A minimal-size forest whose value set contains `q`, if `q` is marked.
    pub fn witness(&self, q: usize, alphabet: &Alphabet) -> Option<Forest> {
        self.marked[q].then(|| self.build(q, alphabet))
    }

    fn build(&self, q: usize, alphabet: &Alphabet) -> Forest {
        match self.origin[q].expect("marked state has an origin") {
            Origin::Empty => Forest::empty(),
            Origin::Letter(a, below) => Forest::from(Tree {
                label: alphabet.symbols()[a].clone(),
                children: self.build(below, alphabet),
            }),
            Origin::Sum(p, r) => self.build(p, alphabet).concat(&self.build(r, alphabet)),
        }
    }
}

/// Marking closure of `{0}` under `+` in both orders and under `δ`, settled
/// in order of witness size so that every recorded forest is as small as
/// possible.
pub fn mark(n: &Nfa) -> Marking {
    let size = n.num_states();
    let mut sizes: Vec<Option<usize>> = vec![None; size];
    let mut origin: Vec<Option<Origin>> = vec![None; size];
    let mut settled = vec![false; size];
    let mut order = Vec::new();
    let mut operations = 0;
    let mut heap = BinaryHeap::new();
    let zero = n.neutral();
    sizes[zero] = Some(0);
    origin[zero] = Some(Origin::Empty);
    heap.push(Reverse((0usize, zero)));
    let relax = |q: usize,
                 s: usize,
                 o: Origin,
                 sizes: &mut Vec<Option<usize>>,
                 origin: &mut Vec<Option<Origin>>,
                 heap: &mut BinaryHeap<Reverse<(usize, usize)>>| {
        if sizes[q].is_none_or(|old| s < old) {
            sizes[q] = Some(s);
            origin[q] = Some(o);
            heap.push(Reverse((s, q)));
        }
    };
    while let Some(Reverse((s, q))) = heap.pop() {
        if settled[q] || sizes[q] != Some(s) {
            continue;
        }
        settled[q] = true;
        order.push(q);
        for a in 0..n.alphabet().len() {
            operations += 1;
            for &t in n.step(a, q) {
                if !settled[t] {
                    relax(
                        t,
                        s + 1,
                        Origin::Letter(a, q),
                        &mut sizes,
                        &mut origin,
                        &mut heap,
                    );
                }
            }
        }
        for &p in &order {
            let sp = sizes[p].expect("settled");
            operations += 2;
            for (x, y) in [(p, q), (q, p)] {
                let r = n.plus(x, y);
                if !settled[r] {
                    relax(
                        r,
                        sp + s,
                        Origin::Sum(x, y),
                        &mut sizes,
                        &mut origin,
                        &mut heap,
                    );
                }
            }
        }
    }
    Marking {
        marked: settled,
        order,
        sizes,
        operations,
        origin,
    }
}

#[derive(Clone, Debug)]
pub struct EmptinessReport {
    /// `yes` when the language is empty; otherwise a minimal-size witness.
    pub decision: Decision,
    pub marked: Vec<bool>,
    pub operations: usize,
}

/// Emptiness by marking. The closure always runs to completion so that the
/// full marked set is reported.
pub fn is_empty(n: &Nfa) -> Result<EmptinessReport> {
    let m = mark(n);
    let best = (0..n.num_states())
        .filter(|&q| m.marked[q] && n.is_accepting(q))
        .min_by_key(|&q| (m.sizes[q], q));
    let decision = match best {
        None => Decision::yes(),
        Some(q) => {
            let w = m.witness(q, n.alphabet()).expect("marked");
            if !n.accepts(&w)? {
                return Err(Error::Internal(format!(
                    "emptiness witness {w} is rejected"
                )));
            }
            Decision::no(w)
        }
    };
    Ok(EmptinessReport {
        decision,
        marked: m.marked,
        operations: m.operations,
    })
}

/// The operation bound `|Q|·(2|Q|+|A|)`.
pub fn operation_bound(states: usize, letters: usize) -> usize {
    states * (2 * states + letters)
}
