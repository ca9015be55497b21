use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;
use crate::builders::node_parity;
use crate::forest::{context, forest};
use crate::oracle::{brute_language, SizeBound};
use crate::random;

fn z(n: usize, prefix: &str) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// `V = Z_nv` acting on `H = Z2` by `v mod 2`, one letter mapped to `1`.
fn cyclic(nv: usize) -> RawAlgebra {
    RawAlgebra {
        alphabet: Alphabet::from_strs(&["a"]),
        h_names: z(2, "h"),
        h_neutral: Some(0),
        plus_h: (0..4).map(|k| Some((k / 2) ^ (k % 2))).collect(),
        v_names: z(nv, "v"),
        v_neutral: Some(0),
        times_v: (0..nv * nv).map(|k| Some((k / nv + k % nv) % nv)).collect(),
        action: (0..nv * 2).map(|k| Some(((k / 2) + k % 2) % 2)).collect(),
        inl: vec![Some(0), Some(1)],
        inr: vec![Some(0), Some(1)],
        hom: vec![Some(1)],
        accept: vec![1],
    }
}

fn parity() -> ForestAlgebra {
    cyclic(2).build().unwrap()
}

#[test]
fn parity_algebra_is_valid() {
    let p = parity();
    assert!(validate_algebra(&p).is_empty());
    assert!(is_faithful(&p));
}

#[test]
fn broken_insertion_is_reported() {
    let mut raw = cyclic(2);
    raw.inl[1] = Some(0);
    let diags = raw.validate();
    assert!(!diags.is_empty());
    assert!(
        diags.iter().all(|d| d.message.contains("insertion")),
        "{diags:?}"
    );
    assert!(diags
        .iter()
        .any(|d| d.message.starts_with("insertion axiom violated: inl(h1)")));
}

#[test]
fn broken_monoid_is_reported() {
    let mut raw = cyclic(2);
    raw.h_names = z(3, "h");
    // h1+h1 = h2, h1+h2 = h2, h2+h1 = h1, h2+h2 = h1
    let table = [0, 1, 2, 1, 2, 2, 2, 1, 1];
    raw.plus_h = table.iter().map(|&x| Some(x)).collect();
    raw.action = vec![Some(0); 6];
    raw.inl = vec![Some(0); 3];
    raw.inr = vec![Some(0); 3];
    let diags = raw.validate();
    assert!(
        diags
            .iter()
            .any(|d| d.message.starts_with("associativity violated")),
        "{diags:?}"
    );
    let mut raw = cyclic(2);
    raw.times_v[3] = None;
    let diags = raw.validate();
    assert_eq!(diags.len(), 1);
    assert_eq!(diags[0].tokens, ["v1", "v1"]);
    let mut raw = cyclic(2);
    raw.action[1] = Some(0);
    assert!(raw.validate().iter().any(|d| d.message.contains("action")));
}

#[test]
fn parity_evaluation() {
    let p = parity();
    assert_eq!(eval_algebra(&p, &forest("0").unwrap()).unwrap(), 0);
    assert_eq!(eval_algebra(&p, &forest("a(a)").unwrap()).unwrap(), 0);
    assert_eq!(eval_algebra(&p, &forest("a+a+a").unwrap()).unwrap(), 1);
    assert!(eval_algebra(&p, &forest("b").unwrap()).is_err());
}

#[test]
fn quotient_of_z4() {
    let alg = cyclic(4).build().unwrap();
    assert!(validate_algebra(&alg).is_empty());
    assert!(!is_faithful(&alg));
    let (q, classes) = faithful_quotient(&alg);
    assert_eq!(classes.classes(), &[vec![0, 2], vec![1, 3]]);
    assert_eq!(q.vertical().len(), 2);
    assert!(validate_algebra(&q).is_empty());
    assert!(is_faithful(&q));
    let before = brute_language(&algebra_to_dfa(&alg).into(), SizeBound(6)).unwrap();
    let after = brute_language(&algebra_to_dfa(&q).into(), SizeBound(6)).unwrap();
    assert_eq!(before, after);

    let (same, classes) = faithful_quotient(&parity());
    assert_eq!(classes.classes(), &[vec![0], vec![1]]);
    assert_eq!(same, parity());
}

#[test]
fn parity_automaton() {
    let d = algebra_to_dfa(&parity());
    let par = node_parity();
    assert_eq!(d.monoid().table(), par.monoid().table());
    for q in 0..2 {
        assert_eq!(d.step(0, q), par.step(0, q));
        assert_eq!(d.is_accepting(q), par.is_accepting(q));
    }
    let mut raw = cyclic(2);
    raw.accept.clear();
    let none = algebra_to_dfa(&raw.build().unwrap());
    assert!(brute_language(&none.into(), SizeBound(6))
        .unwrap()
        .is_empty());
}

#[test]
fn parity_transformations() {
    let alg = dfa_to_algebra(&node_parity(), 64).unwrap();
    assert!(validate_algebra(&alg).is_empty());
    assert_eq!(alg.vertical().names(), ["1", "<o,e>"]);
    assert_eq!(alg.vertical().plus(1, 1), 0);
    assert_eq!(alg.hom(0), 1);
    assert!(matches!(
        dfa_to_algebra(&node_parity(), 1),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn one_state_is_trivial() {
    let u = crate::builders::universal(Alphabet::from_strs(&["a", "b"]));
    let alg = dfa_to_algebra(&u, 8).unwrap();
    assert_eq!((alg.horizontal().len(), alg.vertical().len()), (1, 1));
}

#[test]
fn random_round_trips() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..30 {
        let sigma = random::letters(rng.gen_range(1..=2));
        let m = random::dfa(&mut rng, &sigma, 4);
        let alg = dfa_to_algebra(&m, 4096).unwrap();
        assert!(validate_algebra(&alg).is_empty());
        let (q, _) = faithful_quotient(&alg);
        assert!(validate_algebra(&q).is_empty());
        assert!(is_faithful(&q));
        let expected = brute_language(&m.clone().into(), SizeBound(6)).unwrap();
        for a in [&alg, &q] {
            let back = algebra_to_dfa(a);
            assert!(back.validate().is_empty());
            assert_eq!(
                brute_language(&back.into(), SizeBound(6)).unwrap(),
                expected
            );
        }
    }
}

proptest! {
    #[test]
    fn evaluation_agrees_with_automaton(seed in any::<u64>(), nodes in 0usize..7) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sigma = random::letters(2);
        let m = random::dfa(&mut rng, &sigma, 4);
        let alg = dfa_to_algebra(&m, 4096).unwrap();
        let d = algebra_to_dfa(&alg);
        let f = random::forest(&mut rng, &sigma, nodes);
        prop_assert_eq!(eval_algebra(&alg, &f).unwrap(), d.eval(&f).unwrap());
        prop_assert_eq!(d.eval(&f).unwrap(), m.eval(&f).unwrap());
    }

    #[test]
    fn contexts_act_through_their_image(seed in any::<u64>(), h in 0usize..6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let m = random::dfa(&mut rng, &random::letters(2), 4);
        let alg = dfa_to_algebra(&m, 4096).unwrap();
        let h = h % m.num_states();
        let c = context("a(b+@+a)+b").unwrap();
        let d = algebra_to_dfa(&alg);
        // a(b+[]+a)+b = inr(b) ∘ a ∘ inl(b) ∘ inr(a)
        let a = alg.hom(0);
        let vb = d.eval(&forest("b").unwrap()).unwrap();
        let va = d.eval(&forest("a").unwrap()).unwrap();
        let v = alg.vertical();
        let image = v.plus(alg.inr(vb), v.plus(a, v.plus(alg.inl(vb), alg.inr(va))));
        prop_assert_eq!(d.eval_context(&c, h).unwrap(), alg.act(image, h));
    }
}
