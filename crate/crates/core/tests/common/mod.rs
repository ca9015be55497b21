#![allow(dead_code)]

use std::path::{Path, PathBuf};

use fata::automata::Alphabet;
use fata::builders::true_formulas;
use fata::forest::{BoolExpr, Symbol};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Every formula over `vars` with at most `connectives` connectives, built by
/// increasing connective count. Atoms are the variables, `T` and `F`.
pub fn formulas(vars: &[&str], connectives: usize) -> Vec<BoolExpr> {
    let mut by_size: Vec<Vec<BoolExpr>> = vec![vars
        .iter()
        .map(|v| BoolExpr::var(v))
        .chain([BoolExpr::True, BoolExpr::False])
        .collect()];
    for n in 1..=connectives {
        let mut level = Vec::new();
        for e in &by_size[n - 1] {
            level.push(BoolExpr::not(e.clone()));
        }
        for i in 0..n {
            let j = n - 1 - i;
            for l in &by_size[i] {
                for r in &by_size[j] {
                    level.push(BoolExpr::and(l.clone(), r.clone()));
                    level.push(BoolExpr::or(l.clone(), r.clone()));
                }
            }
        }
        by_size.push(level);
    }
    by_size.concat()
}

/// The alphabet of the Boolean fixture followed by the variables of `e`.
pub fn formula_alphabet(e: &BoolExpr) -> Alphabet {
    let mut letters = true_formulas().alphabet().symbols().to_vec();
    for v in e.variables() {
        if !letters.contains(&v) {
            letters.push(v);
        }
    }
    Alphabet::new(letters).expect("distinct letters")
}

pub fn sym(s: &str) -> Symbol {
    Symbol::new(s)
}

/// A random formula with exactly `connectives` connectives over `vars`.
pub fn random_formula<R: rand::Rng>(rng: &mut R, vars: &[&str], connectives: usize) -> BoolExpr {
    if connectives == 0 {
        let k = rng.gen_range(0..vars.len() + 2);
        return match k {
            k if k < vars.len() => BoolExpr::var(vars[k]),
            k if k == vars.len() => BoolExpr::True,
            _ => BoolExpr::False,
        };
    }
    match rng.gen_range(0..3) {
        0 => BoolExpr::not(random_formula(rng, vars, connectives - 1)),
        op => {
            let left = rng.gen_range(0..connectives);
            let l = random_formula(rng, vars, left);
            let r = random_formula(rng, vars, connectives - 1 - left);
            if op == 1 {
                BoolExpr::and(l, r)
            } else {
                BoolExpr::or(l, r)
            }
        }
    }
}
