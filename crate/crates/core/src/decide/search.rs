use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::forest::Symbol;
use crate::substitution::{saturated_to_substitution, SaturatedSubstitution};

use super::given::subst_subset_preimage;
use super::{equivalent, subst_equal, Decision, Limits};

/// The result of a search for a substitution. On `yes` the found saturated
/// substitution is the first in search order.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub decision: Decision,
    pub substitution: Option<SaturatedSubstitution>,
    /// Size of the search space.
    pub candidates: usize,
}

/// Letters of `l` that are not letters of `r`, in the order of `l`.
fn variables(l: &Dfa, r: &Dfa) -> Vec<Symbol> {
    l.alphabet()
        .symbols()
        .iter()
        .filter(|s| !r.alphabet().contains(s))
        .cloned()
        .collect()
}

fn first_success(
    total: usize,
    jobs: usize,
    check: impl Fn(usize) -> Result<bool> + Sync,
) -> Result<Option<usize>> {
    let probe = |i: usize| match check(i) {
        Ok(true) => Some(Ok(i)),
        Ok(false) => None,
        Err(e) => Some(Err(e)),
    };
    let found = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        pool.install(|| (0..total).into_par_iter().find_map_first(probe))
    } else {
        (0..total).find_map(probe)
    };
    found.transpose()
}

/// Is there a substitution `σ` with `σ(L) ⊆ R`? The variables are the
/// letters of `l` missing from `r`. Since shrinking values preserves the
/// inclusion, it suffices to try saturated substitutions whose classes are
/// single reachable states of `r`; they are tried in increasing order with
/// the first variable most significant.
pub fn exists_subst_subset(l: &Dfa, r: &Dfa, limits: &Limits) -> Result<SearchOutcome> {
    let vars = variables(l, r);
    let reachable = r.reachable();
    let states: Vec<usize> = (0..r.num_states()).filter(|&q| reachable[q]).collect();
    let total = count(states.len(), vars.len(), limits)?;
    let candidate = |i: usize| -> Result<SaturatedSubstitution> {
        let mut digits = vec![0; vars.len()];
        let mut rest = i;
        for d in digits.iter_mut().rev() {
            *d = rest % states.len();
            rest /= states.len();
        }
        let pairs = vars
            .iter()
            .zip(digits)
            .map(|(x, d)| (x.clone(), BTreeSet::from([states[d]])))
            .collect();
        SaturatedSubstitution::new(r.clone(), pairs)
    };
    let check = |i: usize| -> Result<bool> {
        let s = candidate(i)?;
        subst_subset_preimage(l, &saturated_to_substitution(&s)?, r, limits)
    };
    finish(first_success(total, limits.jobs, check)?, total, candidate)
}

/// Is there a substitution `σ` with `σ(L) = R`? Saturated substitutions with
/// arbitrary nonempty classes of reachable states are tried by increasing
/// total class size, then lexicographically.
pub fn exists_subst_equal(l: &Dfa, r: &Dfa, limits: &Limits) -> Result<SearchOutcome> {
    let vars = variables(l, r);
    if vars.is_empty() {
        let d = equivalent(l, r)?.decision;
        return Ok(SearchOutcome {
            substitution: d
                .verdict
                .then(|| SaturatedSubstitution::new(r.clone(), Vec::new()).expect("no classes")),
            decision: d.verdict.then(Decision::yes).unwrap_or(Decision {
                verdict: false,
                witness: None,
            }),
            candidates: 1,
        });
    }
    let reachable = r.reachable();
    let states: Vec<usize> = (0..r.num_states()).filter(|&q| reachable[q]).collect();
    if states.len() >= usize::BITS as usize - 1 {
        return Err(Error::CapExceeded {
            what: "substitution candidates",
            limit: limits.max_search,
        });
    }
    let subsets = (1usize << states.len()) - 1;
    let total = count(subsets, vars.len(), limits)?;
    let classes: Vec<Vec<usize>> = (1..=subsets)
        .map(|mask| {
            (0..states.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| states[b])
                .collect()
        })
        .collect();
    let mut order: Vec<Vec<usize>> = Vec::with_capacity(total);
    let mut digits = vec![0usize; vars.len()];
    for _ in 0..total {
        order.push(digits.clone());
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < subsets {
                break;
            }
            *d = 0;
        }
    }
    order.sort_by_cached_key(|ds| {
        let size: usize = ds.iter().map(|&d| classes[d].len()).sum();
        (
            size,
            ds.iter().map(|&d| classes[d].clone()).collect::<Vec<_>>(),
        )
    });
    let candidate = |i: usize| -> Result<SaturatedSubstitution> {
        let pairs = vars
            .iter()
            .zip(&order[i])
            .map(|(x, &d)| (x.clone(), classes[d].iter().copied().collect()))
            .collect();
        SaturatedSubstitution::new(r.clone(), pairs)
    };
    let check = |i: usize| -> Result<bool> {
        let sigma = saturated_to_substitution(&candidate(i)?)?;
        if !subst_subset_preimage(l, &sigma, r, limits)? {
            return Ok(false);
        }
        Ok(subst_equal(l, &sigma, r, limits)?.verdict)
    };
    finish(first_success(total, limits.jobs, check)?, total, candidate)
}

/// Existence of `σ` with `σ(L) = σ(R)` has no decision procedure.
pub fn exists_subst_equal_both() -> Result<SearchOutcome> {
    Err(Error::Undecidable(
        "existence of a substitution with σ(L) = σ(R)",
    ))
}

fn count(choices: usize, vars: usize, limits: &Limits) -> Result<usize> {
    let mut total: usize = 1;
    for _ in 0..vars {
        total = total.saturating_mul(choices);
    }
    if total > limits.max_search {
        return Err(Error::CapExceeded {
            what: "substitution candidates",
            limit: limits.max_search,
        });
    }
    Ok(total)
}

fn finish(
    found: Option<usize>,
    total: usize,
    candidate: impl Fn(usize) -> Result<SaturatedSubstitution>,
) -> Result<SearchOutcome> {
    Ok(match found {
        Some(i) => SearchOutcome {
            decision: Decision::yes(),
            substitution: Some(candidate(i)?),
            candidates: total,
        },
        None => SearchOutcome {
            decision: Decision {
                verdict: false,
                witness: None,
            },
            substitution: None,
            candidates: total,
        },
    })
}
