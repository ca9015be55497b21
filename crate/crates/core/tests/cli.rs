mod common;

use std::path::Path;

use common::{fixture, formula_alphabet, formulas};
use fata::builders::{finite_language, singleton};
use fata::cli::{run, Outcome};
use fata::forest::{encode_bool, forest};
use fata::io::{load_automaton, save_dfa};

fn fata(args: &[&str]) -> Outcome {
    run(std::iter::once("fata").chain(args.iter().copied()))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn field<'a>(out: &'a Outcome, key: &str) -> Option<&'a str> {
    out.stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

#[test]
fn parity_is_not_empty() {
    let par = fixture("parity.fta");
    let out = fata(&["empty", p(&par)]);
    assert_eq!(out.code, 1);
    assert_eq!(field(&out, "verdict"), Some("no"));
    assert_eq!(field(&out, "witness"), Some("a"));
    let again = fata(&["member", p(&par), "a"]);
    assert_eq!(again.code, 0);
}

#[test]
fn equivalence_counters() {
    let out = fata(&[
        "equiv",
        p(&fixture("parity.fta")),
        p(&fixture("parity_renamed.fta")),
    ]);
    assert_eq!(out.code, 0, "{out:?}");
    let counters = field(&out, "counters").unwrap();
    let nums: Vec<usize> = counters
        .split(' ')
        .map(|kv| kv.split_once('=').unwrap().1.parse().unwrap())
        .collect();
    assert!(nums[0] <= 3 && nums[1] <= 1 + 3 * (1 + 4), "{counters}");

    let out = fata(&["equiv", p(&fixture("parity.fta")), p(&fixture("dying.fta"))]);
    assert_eq!(out.code, 1);
    let w = field(&out, "witness").unwrap();
    let a = fata(&["member", p(&fixture("parity.fta")), w]).code;
    let b = fata(&["member", p(&fixture("dying.fta")), w]).code;
    assert_ne!(a, b);
}

#[test]
fn sat_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let truth = fixture("true_formulas.fta");
    for (i, e) in formulas(&["x"], 1).iter().enumerate() {
        let l = singleton(formula_alphabet(e), &encode_bool(e));
        let path = dir.path().join(format!("f{i}.fta"));
        save_dfa(&path, &l).unwrap();
        let out = fata(&["exists-subst", "--mode", "subset", p(&path), p(&truth)]);
        let expected = if e.is_satisfiable() { 0 } else { 1 };
        assert_eq!(out.code, expected, "{e:?}: {out:?}");
        if expected == 0 {
            assert!(field(&out, "substitution").is_some() || e.variables().is_empty());
        }
    }
}

#[test]
fn evaluation_and_membership() {
    let par = fixture("parity.fta");
    assert_eq!(
        field(&fata(&["eval", p(&par), "a(a)+a"]), "value"),
        Some("o")
    );
    assert_eq!(
        field(&fata(&["eval", p(&fixture("dying.fta")), "a+a"]), "values"),
        Some("s")
    );
    assert_eq!(fata(&["member", p(&par), "a(a)"]).code, 1);
    let bad = fata(&["member", p(&par), "b"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("unknown symbol"));
}

#[test]
fn constructions_validate() {
    let dir = tempfile::tempdir().unwrap();
    let par = fixture("parity.fta");
    let dying = fixture("dying.fta");
    let out = |name: &str| dir.path().join(name);
    let cases: Vec<(Vec<String>, &str)> = vec![
        (vec!["complement".into(), p(&par).into()], "c.fta"),
        (
            vec![
                "product".into(),
                p(&par).into(),
                p(&dying).into(),
                "--mode".into(),
                "union".into(),
            ],
            "u.fta",
        ),
        (
            vec!["product".into(), p(&par).into(), p(&par).into()],
            "i.fta",
        ),
        (vec!["determinize".into(), p(&dying).into()], "d.fta"),
        (
            vec![
                "invhom".into(),
                p(&par).into(),
                "--map".into(),
                "b=a(@)".into(),
            ],
            "h.fta",
        ),
        (vec!["globally".into(), p(&par).into()], "g.fta"),
        (vec!["split-neutral".into(), p(&dying).into()], "s.fta"),
        (
            vec!["alg2fta".into(), p(&fixture("parity.fal")).into()],
            "a.fta",
        ),
        (vec!["fta2alg".into(), p(&par).into()], "p.fal"),
        (
            vec!["faithful".into(), p(&fixture("parity.fal")).into()],
            "q.fal",
        ),
    ];
    for (args, name) in cases {
        let target = out(name);
        let mut all: Vec<&str> = args.iter().map(String::as_str).collect();
        all.extend(["-o", p(&target)]);
        let o = fata(&all);
        assert_eq!(o.code, 0, "{all:?}: {o:?}");
        let v = fata(&["validate", p(&target)]);
        assert_eq!(v.code, 0, "{name}: {v:?}");
    }
    let h = load_automaton(out("h.fta")).unwrap();
    assert!(h.accepts(&forest("b+b+b").unwrap()).unwrap());
    assert!(!h.accepts(&forest("b+b").unwrap()).unwrap());
    let printed = fata(&["complement", p(&par)]);
    assert!(printed.stdout.starts_with("type dfa\n"));
}

#[test]
fn substitution_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = |name: &str| dir.path().join(name);
    let a = fata::automata::Alphabet::from_strs(&["a"]);
    let ax = fata::automata::Alphabet::from_strs(&["a", "x"]);
    save_dfa(
        d("leaf.fta"),
        &finite_language(a.clone(), &[forest("a").unwrap()]),
    )
    .unwrap();
    std::fs::write(d("s.sub"), "vars x\nx = leaf.fta\n").unwrap();
    save_dfa(
        d("l.fta"),
        &finite_language(ax, &[forest("x+x+x").unwrap()]),
    )
    .unwrap();

    let image = fata(&[
        "subst-image",
        p(&d("l.fta")),
        p(&d("s.sub")),
        "-o",
        p(&d("img.fta")),
    ]);
    assert_eq!(image.code, 0, "{image:?}");
    assert_eq!(fata(&["member", p(&d("img.fta")), "a+a+a"]).code, 0);
    assert_eq!(fata(&["member", p(&d("img.fta")), "a+a"]).code, 1);
    let pre = fata(&[
        "subst-preimage",
        p(&fixture("parity.fta")),
        p(&d("s.sub")),
        "-o",
        p(&d("pre.fta")),
    ]);
    assert_eq!(pre.code, 0, "{pre:?}");
    assert_eq!(fata(&["member", p(&d("pre.fta")), "x+a+x"]).code, 0);

    let par = fixture("parity.fta");
    let subset = fata(&["subst-subset", p(&d("l.fta")), p(&d("s.sub")), p(&par)]);
    assert_eq!(subset.code, 0, "{subset:?}");
    let sup = fata(&["subst-superset", p(&d("l.fta")), p(&d("s.sub")), p(&par)]);
    assert_eq!(sup.code, 1);
    assert_eq!(field(&sup, "witness"), Some("a"));
    assert_eq!(
        fata(&["subst-equal", p(&d("l.fta")), p(&d("s.sub")), p(&par)]).code,
        1
    );
    let both = fata(&[
        "subst-subset-both",
        p(&d("l.fta")),
        p(&d("s.sub")),
        p(&d("l.fta")),
    ]);
    assert_eq!(both.code, 0, "{both:?}");
    let sat = fata(&["saturate", p(&d("s.sub")), p(&par)]);
    assert_eq!(field(&sat, "substitution"), Some("x -> {o}"));

    let u = fata(&[
        "union-subst",
        p(&par),
        p(&d("leaf.fta")),
        "--sub-output",
        p(&d("u.sub")),
        "-o",
        p(&d("u.fta")),
    ]);
    assert_eq!(u.code, 0, "{u:?}");
    assert_eq!(fata(&["validate", p(&d("u.sub"))]).code, 0);
    let c = fata(&[
        "combine",
        p(&par),
        p(&par),
        p(&d("leaf.fta")),
        p(&par),
        "--right-output",
        p(&d("cr.fta")),
        "-o",
        p(&d("cl.fta")),
    ]);
    assert_eq!(c.code, 0, "{c:?}");
    assert_eq!(fata(&["validate", p(&d("cr.fta"))]).code, 0);
}

#[test]
fn exit_codes() {
    let par = fixture("parity.fta");
    let both = fata(&["exists-subst", "--mode", "equal-both", p(&par), p(&par)]);
    assert_eq!(both.code, 2);
    assert!(both.stderr.contains("undecidable in general"));
    let eq = fata(&[
        "exists-subst",
        "--mode",
        "equal",
        p(&par),
        p(&fixture("parity_renamed.fta")),
    ]);
    assert_eq!(eq.code, 0, "{eq:?}");
    let cap = fata(&["product", p(&par), p(&par), "--max-states", "3"]);
    assert_eq!(cap.code, 3);
    assert_eq!(
        fata(&["intersect-empty", p(&par), p(&fixture("dying.fta"))]).code,
        1
    );
    assert_eq!(fata(&["nonsense"]).code, 2);
    assert_eq!(fata(&["empty", "/nonexistent.fta"]).code, 2);

    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("b.fta");
    let text = std::fs::read_to_string(&par)
        .unwrap()
        .replace("plus o e o\n", "");
    std::fs::write(&broken, text).unwrap();
    let v = fata(&["validate", p(&broken)]);
    assert_eq!(v.code, 2);
    assert!(
        v.stderr.contains("missing plus entry for o+e"),
        "{}",
        v.stderr
    );
    assert!(v.stderr.contains("b.fta"));
}

#[test]
fn enumeration() {
    let out = fata(&["enumerate", p(&fixture("parity.fta")), "--max-nodes", "3"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(
        lines,
        ["a", "a+a+a", "a+a(a)", "a(a)+a", "a(a+a)", "a(a(a))"]
    );
}
