use crate::automata::{complement, determinize, extend_alphabet, product_nfa, Dfa, ProductMode};
use crate::error::{Error, Result};
use crate::substitution::{subst_image_nfa, subst_preimage_nfa, Substitution};

use super::{is_empty, subset, Decision, Limits};

/// `σ(L) ⊆ R`, as emptiness of the image automaton intersected with the
/// complement of `r`. No subset construction is involved.
pub fn subst_subset(l: &Dfa, sigma: &Substitution, r: &Dfa, limits: &Limits) -> Result<Decision> {
    let image = subst_image_nfa(l, sigma, limits)?;
    if image.num_states().saturating_mul(r.num_states()) > limits.max_states {
        return Err(Error::CapExceeded {
            what: "inclusion product states",
            limit: limits.max_states,
        });
    }
    let diff = product_nfa(&image, &complement(r).to_nfa(), ProductMode::Intersection)?;
    let d = is_empty(&diff)?.decision;
    if let Some(w) = &d.witness {
        if !image.accepts(w)? || r.accepts(w)? {
            return Err(Error::Internal(format!("inclusion witness {w} is wrong")));
        }
    }
    Ok(d)
}

/// `σ(L) ⊆ R` as emptiness of `L ∩ σ⁻¹(complement of R)`. Same verdict as
/// [`subst_subset`] without building the image automaton, but no witness.
pub fn subst_subset_preimage(
    l: &Dfa,
    sigma: &Substitution,
    r: &Dfa,
    limits: &Limits,
) -> Result<bool> {
    let bad = subst_preimage_nfa(&complement(r).into(), sigma)?;
    let l = if l.alphabet().same_letters(bad.alphabet()) {
        l.clone()
    } else {
        extend_alphabet(l, bad.alphabet())?
    };
    if l.num_states().saturating_mul(bad.num_states()) > limits.max_states {
        return Err(Error::CapExceeded {
            what: "inclusion product states",
            limit: limits.max_states,
        });
    }
    let meet = product_nfa(&l.to_nfa(), &bad, ProductMode::Intersection)?;
    Ok(is_empty(&meet)?.decision.verdict)
}

/// `σ(L) ⊇ R`, through the determinized image.
pub fn subst_superset(l: &Dfa, sigma: &Substitution, r: &Dfa, limits: &Limits) -> Result<Decision> {
    let image = determinize(&subst_image_nfa(l, sigma, limits)?, limits.max_subsets)?;
    subset(r, &image)
}

/// `σ(L) = R`; a witness lies in exactly one side.
pub fn subst_equal(l: &Dfa, sigma: &Substitution, r: &Dfa, limits: &Limits) -> Result<Decision> {
    let d = subst_subset(l, sigma, r, limits)?;
    if !d.verdict {
        return Ok(d);
    }
    subst_superset(l, sigma, r, limits)
}

/// `σ(L) ⊆ σ(R)` for `l` and `r` both over base letters and variables.
pub fn subst_subset_both(
    l: &Dfa,
    sigma: &Substitution,
    r: &Dfa,
    limits: &Limits,
) -> Result<Decision> {
    let left = determinize(&subst_image_nfa(l, sigma, limits)?, limits.max_subsets)?;
    let right = determinize(&subst_image_nfa(r, sigma, limits)?, limits.max_subsets)?;
    subset(&left, &right)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    use super::*;
    use crate::automata::Alphabet;
    use crate::builders::{finite_language, node_parity, universal};
    use crate::forest::{forest, Forest, Symbol};
    use crate::random;

    fn finite(letters: &[&str], members: &[&str]) -> Dfa {
        let members: Vec<Forest> = members.iter().map(|s| forest(s).unwrap()).collect();
        finite_language(Alphabet::from_strs(letters), &members)
    }

    fn sub(value: Dfa) -> Substitution {
        Substitution::new(
            Alphabet::from_strs(&["a"]),
            vec![(Symbol::new("x"), value.to_nfa())],
        )
        .unwrap()
    }

    #[test]
    fn given_substitution_examples() {
        let lim = Limits::default();
        let par = node_parity();
        let l = finite(&["a", "x"], &["x"]);
        let one = sub(finite(&["a"], &["a"]));
        assert!(subst_subset(&l, &one, &par, &lim).unwrap().verdict);
        let two = sub(finite(&["a"], &["a", "a+a"]));
        let d = subst_subset(&l, &two, &par, &lim).unwrap();
        assert_eq!(d.witness, Some(forest("a+a").unwrap()));
        assert!(!subst_subset_preimage(&l, &two, &par, &lim).unwrap());

        let none = Substitution::new(par.alphabet().clone(), Vec::new()).unwrap();
        let all = universal(par.alphabet().clone());
        assert_eq!(
            subst_subset(&all, &none, &par, &lim).unwrap(),
            subset(&all, &par).unwrap()
        );

        let odd = sub(par.clone());
        assert!(subst_equal(&l, &odd, &par, &lim).unwrap().verdict);
        let d = subst_superset(&l, &odd, &all, &lim).unwrap();
        assert_eq!(d.witness, Some(Forest::empty()));
        assert!(subst_subset_both(&l, &odd, &l, &lim).unwrap().verdict);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn both_inclusion_tests_agree(seed in any::<u64>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let base = random::letters(rng.gen_range(1..=2));
            let lx = Alphabet::new(
                base.symbols().iter().cloned().chain([Symbol::new("x")]).collect(),
            ).unwrap();
            let l = random::dfa(&mut rng, &lx, 3);
            let r = random::dfa(&mut rng, &base, 3);
            let value = random::nfa(&mut rng, &base, 3);
            prop_assume!(!is_empty(&value).unwrap().decision.verdict);
            let sigma = Substitution::new(base, vec![(Symbol::new("x"), value)]).unwrap();
            let lim = Limits::default();
            let d = subst_subset(&l, &sigma, &r, &lim).unwrap();
            prop_assert_eq!(d.verdict, subst_subset_preimage(&l, &sigma, &r, &lim).unwrap());
        }
    }
}
