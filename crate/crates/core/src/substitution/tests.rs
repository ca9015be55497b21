use std::collections::{BTreeMap, BTreeSet};

use super::*;
use crate::automata::{complement, Alphabet};
use crate::builders::{finite_language, node_parity, singleton, universal};
use crate::decide::{subset, Limits};
use crate::forest::forest;
use crate::oracle::{brute_language, brute_subst_apply_within, enumerate_forests, SizeBound};

fn f(s: &str) -> Forest {
    forest(s).unwrap()
}

fn set(list: &[&str]) -> BTreeSet<Forest> {
    list.iter().map(|s| f(s)).collect()
}

fn finite(letters: &[&str], members: &[&str]) -> Dfa {
    let members: Vec<Forest> = members.iter().map(|s| f(s)).collect();
    finite_language(Alphabet::from_strs(letters), &members)
}

fn sub(base: &[&str], pairs: Vec<(&str, Dfa)>) -> Substitution {
    Substitution::new(
        Alphabet::from_strs(base),
        pairs
            .into_iter()
            .map(|(x, d)| (Symbol::new(x), d.to_nfa()))
            .collect(),
    )
    .unwrap()
}

/// σ(L(m)) up to `bound` nodes, from subject forests up to `subject_bound`
/// nodes and value slices up to `bound` nodes.
fn oracle_image(
    m: &Dfa,
    sigma: &Substitution,
    subject_bound: usize,
    bound: usize,
) -> BTreeSet<Forest> {
    let slices: BTreeMap<Symbol, BTreeSet<Forest>> = sigma
        .iter()
        .map(|(x, v)| {
            (
                x.clone(),
                brute_language(&v.clone().into(), SizeBound(bound)).unwrap(),
            )
        })
        .collect();
    let mut out = BTreeSet::new();
    for g in brute_language(&m.clone().into(), SizeBound(subject_bound)).unwrap() {
        out.extend(brute_subst_apply_within(&g, &slices, bound).unwrap());
    }
    out
}

fn image_language(m: &Dfa, sigma: &Substitution, bound: usize) -> BTreeSet<Forest> {
    let img = subst_image_nfa(m, sigma, &Limits::default()).unwrap();
    assert!(img.validate().is_empty(), "{:?}", img.validate());
    brute_language(&img.into(), SizeBound(bound)).unwrap()
}

#[test]
fn image_of_a_lone_variable() {
    let m = finite(&["b", "x"], &["x"]);
    let sigma = sub(&["b"], vec![("x", finite(&["b"], &["b"]))]);
    assert_eq!(image_language(&m, &sigma, 4), set(&["b"]));
    assert_eq!(oracle_image(&m, &sigma, 4, 4), set(&["b"]));
}

#[test]
fn image_without_variables() {
    let m = finite(&["a"], &["a"]);
    let sigma = Substitution::new(Alphabet::from_strs(&["a"]), Vec::new()).unwrap();
    assert_eq!(image_language(&m, &sigma, 4), set(&["a"]));
}

#[test]
fn image_below_a_node() {
    let m = finite(&["a", "b", "x"], &["a(x)"]);
    let sigma = sub(
        &["a", "b"],
        vec![("x", finite(&["a", "b"], &["b", "b(b)"]))],
    );
    assert_eq!(image_language(&m, &sigma, 4), set(&["a(b)", "a(b(b))"]));
}

#[test]
fn image_with_empty_replacements() {
    let m = finite(&["b", "x"], &["x+x"]);
    let sigma = sub(&["b"], vec![("x", finite(&["b"], &["0", "b"]))]);
    assert_eq!(image_language(&m, &sigma, 4), set(&["0", "b", "b+b"]));
    let m = finite(&["a", "b", "x"], &["a(x)+x", "x(0)"]);
    let sigma = sub(&["a", "b"], vec![("x", finite(&["a", "b"], &["0", "b+b"]))]);
    assert_eq!(
        image_language(&m, &sigma, 6),
        oracle_image(&m, &sigma, 4, 6)
    );
}

#[test]
fn image_of_regular_languages() {
    // x-leaves anywhere under a-nodes, x replaced by odd forests
    let par = node_parity();
    let m = extend_alphabet(
        &universal(Alphabet::from_strs(&["a"])),
        &Alphabet::from_strs(&["a", "x"]),
    )
    .unwrap();
    let sigma = sub(&["a"], vec![("x", par.clone())]);
    assert_eq!(
        image_language(&m, &sigma, 5),
        oracle_image(&m, &sigma, 5, 5)
    );
    let two = finite(&["a", "b", "x", "y"], &["x+y", "a(y+x)", "y(0)"]);
    let sigma = sub(
        &["a", "b"],
        vec![
            ("x", finite(&["a", "b"], &["a+b", "b(a)"])),
            ("y", finite(&["a", "b"], &["b", "a+a"])),
        ],
    );
    assert_eq!(
        image_language(&two, &sigma, 6),
        oracle_image(&two, &sigma, 4, 6)
    );
}

#[test]
fn closings_contain_subject_values() {
    let m = finite(&["a", "b", "x"], &["a(x)+x", "x+b"]);
    let sigma = sub(
        &["a", "b"],
        vec![("x", finite(&["a", "b"], &["b", "a(b)+b"]))],
    );
    let img = image_automaton(&m, &sigma, &Limits::default()).unwrap();
    let slices: BTreeMap<Symbol, BTreeSet<Forest>> =
        [(Symbol::new("x"), set(&["b", "a(b)+b"]))].into();
    for g in enumerate_forests(m.alphabet(), SizeBound(4)).unwrap() {
        let Ok(images) = brute_subst_apply_within(&g, &slices, 8) else {
            continue;
        };
        let value = img.subject().eval(&g).unwrap();
        for h in images {
            let states = img.nfa().eval(&h).unwrap();
            assert!(
                states.iter().any(|&q| img.closings(q).contains(&value)),
                "{g} -> {h}"
            );
        }
    }
}

#[test]
fn image_rejects_foreign_letters() {
    let m = finite(&["a", "z"], &["z"]);
    let sigma = Substitution::new(Alphabet::from_strs(&["a"]), Vec::new()).unwrap();
    assert!(matches!(
        subst_image_nfa(&m, &sigma, &Limits::default()),
        Err(Error::AlphabetMismatch(_))
    ));
}

#[test]
fn empty_values_are_refused() {
    let empty = universal(Alphabet::from_strs(&["a"])).with_accept(|_| false);
    assert!(matches!(
        Substitution::new(
            Alphabet::from_strs(&["a"]),
            vec![(Symbol::new("x"), empty.to_nfa())]
        ),
        Err(Error::EmptyValue(_))
    ));
    assert!(Substitution::new(
        Alphabet::from_strs(&["a"]),
        vec![(Symbol::new("a"), node_parity().to_nfa())]
    )
    .is_err());
}

#[test]
fn preimage_examples() {
    let par = node_parity();
    let sigma = sub(&["a"], vec![("x", finite(&["a"], &["a"]))]);
    let pre = subst_preimage_nfa(&par.clone().into(), &sigma).unwrap();
    assert!(pre.validate().is_empty());
    for g in enumerate_forests(pre.alphabet(), SizeBound(5)).unwrap() {
        let x_inner = g.trees().iter().any(inner_x);
        let expected = !x_inner && g.node_count() % 2 == 1;
        assert_eq!(pre.accepts(&g).unwrap(), expected, "{g}");
    }

    let sigma = sub(&["a"], vec![("x", finite(&["a"], &["0"]))]);
    let pre = subst_preimage_nfa(&par.clone().into(), &sigma).unwrap();
    for g in enumerate_forests(pre.alphabet(), SizeBound(5)).unwrap() {
        let x_inner = g.trees().iter().any(inner_x);
        let a_nodes = g.node_count() - count_x(&g);
        assert_eq!(
            pre.accepts(&g).unwrap(),
            !x_inner && a_nodes % 2 == 1,
            "{g}"
        );
    }

    let none = Substitution::new(Alphabet::from_strs(&["a"]), Vec::new()).unwrap();
    let pre = subst_preimage_nfa(&par.clone().into(), &none).unwrap();
    assert_eq!(pre.num_states(), par.num_states() + 1);
    for g in enumerate_forests(pre.alphabet(), SizeBound(5)).unwrap() {
        assert_eq!(pre.accepts(&g).unwrap(), par.accepts(&g).unwrap());
    }
    // no nonempty forest evaluates to the neutral: the monoid is kept
    let count = finite(&["a"], &["a", "a+a"]);
    let leaf = sub(&["a"], vec![("x", finite(&["a"], &["a"]))]);
    let pre = subst_preimage_nfa(&count.clone().into(), &leaf).unwrap();
    assert_eq!(pre.num_states(), count.num_states());
}

fn inner_x(t: &crate::forest::Tree) -> bool {
    (t.label.as_str() == "x" && !t.children.is_empty()) || t.children.trees().iter().any(inner_x)
}

fn count_x(f: &Forest) -> usize {
    f.trees()
        .iter()
        .map(|t| usize::from(t.label.as_str() == "x") + count_x(&t.children))
        .sum()
}

#[test]
fn saturate_examples() {
    let par = node_parity();
    let s = saturate(&sub(&["a"], vec![("x", finite(&["a"], &["a"]))]), &par).unwrap();
    assert_eq!(s.class(&Symbol::new("x")), Some(&BTreeSet::from([1])));
    assert_eq!(s.to_string(), "x -> {o}");
    let all = universal(Alphabet::from_strs(&["a"]));
    let s = saturate(&sub(&["a"], vec![("x", all)]), &par).unwrap();
    assert_eq!(s.class(&Symbol::new("x")), Some(&BTreeSet::from([0, 1])));
    let s = saturate(&sub(&["a"], vec![("x", finite(&["a"], &["0"]))]), &par).unwrap();
    assert_eq!(s.class(&Symbol::new("x")), Some(&BTreeSet::from([0])));
}

#[test]
fn saturated_round_trip() {
    let par = node_parity();
    let s = SaturatedSubstitution::new(par.clone(), vec![(Symbol::new("x"), BTreeSet::from([1]))])
        .unwrap();
    let sigma = saturated_to_substitution(&s).unwrap();
    let value = sigma.value(&Symbol::new("x")).unwrap();
    assert_eq!(value, &par.to_nfa());
    assert_eq!(saturate(&sigma, &par).unwrap(), s);
    // an unreachable state denotes nothing
    let with_dead = finite(&["a"], &["a"]);
    let dead = with_dead.num_states() - 1;
    assert!(SaturatedSubstitution::new(
        finite(&["a"], &["a"]).with_accept(|_| false),
        vec![(Symbol::new("x"), BTreeSet::from([dead]))]
    )
    .is_ok());
    let lone = extend_alphabet(
        &universal(Alphabet::from_strs(&["a"])),
        &Alphabet::from_strs(&["a", "b"]),
    )
    .unwrap();
    let unreachable = BTreeSet::from([lone.num_states()]);
    assert!(SaturatedSubstitution::new(lone, vec![(Symbol::new("x"), unreachable)]).is_err());
}

#[test]
fn union_as_subst_examples() {
    let a = Alphabet::from_strs(&["a"]);
    let l1 = singleton(a.clone(), &f("a"));
    let (m, sigma) = union_as_subst(std::slice::from_ref(&l1)).unwrap();
    assert!(m.validate().is_empty());
    assert!(m.accepts(&f("a(m1)")).unwrap());
    assert!(!m.accepts(&f("a")).unwrap());
    assert_eq!(image_language(&m, &sigma, 4), set(&["a"]));

    let l2 = node_parity();
    let l3 = finite(&["a"], &["0", "a(a)"]);
    let (m, sigma) = union_as_subst(&[l1, l2.clone(), l3]).unwrap();
    assert!(m.validate().is_empty());
    assert!(!m.accepts(&f("a(m1)+a(m2)")).unwrap());
    assert!(m.accepts(&f("a(m2)+a(m2)+a(m2)")).unwrap());
    assert!(m.accepts(&Forest::empty()).unwrap());
    let mut expected = brute_language(&l2.into(), SizeBound(4)).unwrap();
    expected.extend(set(&["a", "0", "a(a)"]));
    assert_eq!(image_language(&m, &sigma, 4), expected);
}

#[test]
fn combine_examples() {
    let limits = Limits::default();
    let par = node_parity();
    let all = universal(par.alphabet().clone());
    let (l, r) = combine_inequalities(
        std::slice::from_ref(&par),
        std::slice::from_ref(&all),
        &limits,
    )
    .unwrap();
    assert!(l.validate().is_empty() && r.validate().is_empty());
    let tagged = brute_language(&l.clone().into(), SizeBound(4)).unwrap();
    let expected: BTreeSet<Forest> = brute_language(&par.clone().into(), SizeBound(3))
        .unwrap()
        .into_iter()
        .map(|g| Forest::node("i1", g))
        .collect();
    assert_eq!(tagged, expected);
    assert!(subset(&l, &r).unwrap().verdict);

    let (l, r) = combine_inequalities(
        &[par.clone(), all.clone()],
        &[all.clone(), par.clone()],
        &limits,
    )
    .unwrap();
    assert!(!subset(&l, &r).unwrap().verdict);
    let (l, r) = combine_inequalities(
        &[par.clone(), par.clone()],
        &[all.clone(), complement(&complement(&par))],
        &limits,
    )
    .unwrap();
    assert!(subset(&l, &r).unwrap().verdict);
    assert!(combine_inequalities(&[par], &[], &limits).is_err());
}
