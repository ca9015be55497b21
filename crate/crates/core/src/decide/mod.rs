//! Decision procedures: emptiness, equivalence, inclusion, membership,
//! intersection emptiness, the problems for a given substitution, and the
//! searches for a substitution.

mod emptiness;
mod equivalence;
mod given;
mod search;
mod union_find;

use std::fmt;

use crate::automata::{complement, product, Automaton, Dfa, ProductMode};
use crate::error::{Error, Result};
use crate::forest::Forest;

pub use emptiness::{is_empty, mark, operation_bound, EmptinessReport, Marking};
pub use equivalence::{equivalent, find_bound, union_bound, EquivalenceReport};
pub use given::{
    subst_equal, subst_subset, subst_subset_both, subst_subset_preimage, subst_superset,
};
pub use search::{exists_subst_equal, exists_subst_equal_both, exists_subst_subset, SearchOutcome};
pub use union_find::UnionFind;

/// A verdict with an optional certificate that has been re-checked by
/// direct evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: bool,
    pub witness: Option<Forest>,
}

impl Decision {
    pub fn yes() -> Self {
        Decision {
            verdict: true,
            witness: None,
        }
    }

    pub fn no(witness: Forest) -> Self {
        Decision {
            verdict: false,
            witness: Some(witness),
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verdict: {}", if self.verdict { "yes" } else { "no" })?;
        if let Some(w) = &self.witness {
            write!(f, "\nwitness: {w}")?;
        }
        Ok(())
    }
}

/// Resource caps. Exceeding one yields [`Error::CapExceeded`], never a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// States of constructed products and substitution automata.
    pub max_states: usize,
    /// Subsets produced by determinization.
    pub max_subsets: usize,
    /// Candidate substitutions examined by the searches.
    pub max_search: usize,
    /// Rewriting steps per normalization of a substitution-automaton word.
    pub max_steps: usize,
    /// Worker threads for the searches; 1 means sequential.
    pub jobs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 1 << 16,
            max_subsets: 1 << 16,
            max_search: 1 << 20,
            max_steps: 1 << 12,
            jobs: 1,
        }
    }
}

pub fn member(m: &Automaton, f: &Forest) -> Result<bool> {
    m.accepts(f)
}

/// `L(m1) ⊆ L(m2)`, decided as emptiness of `L(m1) ∖ L(m2)`.
pub fn subset(m1: &Dfa, m2: &Dfa) -> Result<Decision> {
    let diff = product(m1, &complement(m2), ProductMode::Intersection)?;
    let d = is_empty(&diff.to_nfa())?.decision;
    if let Some(w) = &d.witness {
        if !m1.accepts(w)? || m2.accepts(w)? {
            return Err(Error::Internal(format!("inclusion witness {w} is wrong")));
        }
    }
    Ok(d)
}

/// Emptiness of `L(m1) ∩ ⋯ ∩ L(mk)` via the product automaton; `yes` means
/// empty. The empty family denotes all forests.
pub fn intersect_empty(ms: &[Dfa], limits: &Limits) -> Result<Decision> {
    let Some((first, rest)) = ms.split_first() else {
        return Ok(Decision::no(Forest::empty()));
    };
    let mut acc = first.clone();
    for m in rest {
        if acc.num_states().saturating_mul(m.num_states()) > limits.max_states {
            return Err(Error::CapExceeded {
                what: "intersection product states",
                limit: limits.max_states,
            });
        }
        acc = product(&acc, m, ProductMode::Intersection)?;
    }
    let d = is_empty(&acc.to_nfa())?.decision;
    if let Some(w) = &d.witness {
        for m in ms {
            if !m.accepts(w)? {
                return Err(Error::Internal(format!(
                    "intersection witness {w} is wrong"
                )));
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{dying_nfa, node_parity, universal};
    use crate::forest::forest;

    #[test]
    fn subset_examples() {
        let par = node_parity();
        let all = universal(par.alphabet().clone());
        assert!(subset(&par, &all).unwrap().verdict);
        assert_eq!(subset(&all, &par).unwrap().witness, Some(Forest::empty()));
        assert!(subset(&par, &par).unwrap().verdict);
    }

    #[test]
    fn member_examples() {
        let par: Automaton = node_parity().into();
        assert!(member(&par, &forest("a").unwrap()).unwrap());
        assert!(!member(&par, &Forest::empty()).unwrap());
        assert!(!member(&dying_nfa().into(), &forest("a(a)").unwrap()).unwrap());
    }

    #[test]
    fn intersect_examples() {
        let par = node_parity();
        let l = Limits::default();
        assert!(
            intersect_empty(&[par.clone(), complement(&par)], &l)
                .unwrap()
                .verdict
        );
        assert_eq!(
            intersect_empty(&[par.clone(), par.clone()], &l)
                .unwrap()
                .witness,
            Some(forest("a").unwrap())
        );
        assert_eq!(
            intersect_empty(&[], &l).unwrap().witness,
            Some(Forest::empty())
        );
        let tight = Limits {
            max_states: 3,
            ..Limits::default()
        };
        assert!(intersect_empty(&[par.clone(), par], &tight)
            .unwrap_err()
            .is_cap());
    }
}
