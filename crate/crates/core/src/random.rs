//! Random automata, substitutions and forests for property tests.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automata::{Alphabet, Dfa, Nfa, StateMonoid};
use crate::forest::{Forest, Symbol, Tree};

/// A random monoid with at most `max_size` elements, obtained as the
/// transformation monoid generated by one or two random maps on at most
/// three points. Elements are named `q0`, `q1`, … in random order.
pub fn monoid<R: Rng + ?Sized>(rng: &mut R, max_size: usize) -> StateMonoid {
    assert!(max_size >= 1);
    loop {
        let points = rng.gen_range(1..=3);
        let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=2))
            .map(|_| (0..points).map(|_| rng.gen_range(0..points)).collect())
            .collect();
        let identity: Vec<usize> = (0..points).collect();
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0)]);
        let mut j = 0;
        while j < elements.len() && elements.len() <= max_size {
            for g in &gens {
                let t: Vec<usize> = elements[j].iter().map(|&q| g[q]).collect();
                if !index.contains_key(&t) {
                    index.insert(t.clone(), elements.len());
                    elements.push(t);
                }
            }
            j += 1;
        }
        if elements.len() > max_size {
            continue;
        }
        let n = elements.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        // order[new] = old
        let mut new_of = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }
        let names = (0..n).map(|i| format!("q{i}")).collect();
        return StateMonoid::from_fn(names, new_of[0], |p, q| {
            let (u, v) = (&elements[order[p]], &elements[order[q]]);
            let t: Vec<usize> = u.iter().map(|&x| v[x]).collect();
            new_of[index[&t]]
        });
    }
}

/// The alphabet `a`, `b`, … of the given size.
pub fn letters(size: usize) -> Alphabet {
    let names: Vec<String> = (0..size)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    Alphabet::new(names.iter().map(|s| Symbol::new(s.as_str())).collect()).expect("distinct")
}

pub fn dfa<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, max_states: usize) -> Dfa {
    let m = monoid(rng, max_states);
    let n = m.len();
    let delta: Vec<usize> = (0..alphabet.len() * n)
        .map(|_| rng.gen_range(0..n))
        .collect();
    let accept: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::from_fns(
        alphabet.clone(),
        m.names().to_vec(),
        m.neutral(),
        |p, q| m.plus(p, q),
        |a, q| delta[a * n + q],
        |q| accept[q],
    )
}

/// Transition sets are empty with probability 1/4, otherwise of size one or
/// two.
pub fn nfa<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, max_states: usize) -> Nfa {
    let m = monoid(rng, max_states);
    let n = m.len();
    let delta: Vec<Vec<usize>> = (0..alphabet.len() * n)
        .map(|_| {
            if rng.gen_bool(0.25) {
                Vec::new()
            } else {
                let k = rng.gen_range(1..=2.min(n));
                rand::seq::index::sample(rng, n, k).into_vec()
            }
        })
        .collect();
    let accept: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Nfa::from_fns(
        alphabet.clone(),
        m,
        |a, q| delta[a * n + q].clone(),
        |q| accept[q],
    )
}

/// A uniformly shaped random forest with exactly `nodes` nodes.
pub fn forest<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, nodes: usize) -> Forest {
    let mut trees = Vec::new();
    let mut left = nodes;
    while left > 0 {
        let size = rng.gen_range(1..=left);
        left -= size;
        let label = alphabet.symbols()[rng.gen_range(0..alphabet.len())].clone();
        trees.push(Tree {
            label,
            children: forest(rng, alphabet, size - 1),
        });
    }
    Forest::from_trees(trees)
}
