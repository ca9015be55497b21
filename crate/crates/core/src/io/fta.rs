use std::fmt::Write as _;
use std::path::Path;

use super::{check_arity, lex, located, lookup, quote_name, symbol, Line};
use crate::automata::{Automaton, RawAutomaton};
use crate::error::{Diagnostic, Result};

/// Parse a `.fta` text. `path` only labels diagnostics.
pub fn parse_fta(text: &str, path: Option<&Path>) -> Result<Automaton> {
    let lines = lex(text).map_err(|d| located(d, path))?;
    let mut diags = Vec::new();
    let raw = read_raw(&lines, &mut diags);
    match raw {
        Some(raw) if diags.is_empty() => {
            let mut d = raw.validate();
            if d.is_empty() {
                return raw.build();
            }
            diags.append(&mut d);
        }
        _ => {}
    }
    Err(located(diags, path))
}

fn read_raw(lines: &[Line], diags: &mut Vec<Diagnostic>) -> Option<RawAutomaton> {
    let mut kind: Option<bool> = None;
    let mut alphabet = None;
    let mut states: Option<Vec<String>> = None;
    for line in lines {
        match line.keyword() {
            "type" => {
                let value = match line.args() {
                    [t] if t.text == "dfa" => Some(true),
                    [t] if t.text == "nfa" => Some(false),
                    _ => {
                        diags.push(line.diag("`type` must be `dfa` or `nfa`"));
                        None
                    }
                };
                if kind.is_some() {
                    diags.push(line.diag("duplicate `type` line"));
                }
                kind = kind.or(value);
            }
            "alphabet" => {
                if alphabet.is_some() {
                    diags.push(line.diag("duplicate `alphabet` line"));
                    continue;
                }
                let mut letters = Vec::new();
                for t in line.args() {
                    match symbol(line, t) {
                        Ok(s) if letters.contains(&s) => {
                            diags.push(line.diag(format!("duplicate letter `{s}`")))
                        }
                        Ok(s) => letters.push(s),
                        Err(d) => diags.push(d),
                    }
                }
                alphabet = Some(letters);
            }
            "states" => {
                if states.is_some() {
                    diags.push(line.diag("duplicate `states` line"));
                    continue;
                }
                let mut names: Vec<String> = Vec::new();
                for t in line.args() {
                    if !t.quoted && t.text == "-" {
                        diags.push(line.diag("`-` cannot name a state"));
                    } else if names.contains(&t.text) {
                        diags.push(line.diag(format!("duplicate state `{}`", t.text)));
                    } else {
                        names.push(t.text.clone());
                    }
                }
                if names.is_empty() {
                    diags.push(line.diag("no states declared"));
                }
                states = Some(names);
            }
            "neutral" | "plus" | "delta" | "accept" => {}
            other => diags.push(line.diag(format!("unknown keyword `{other}`"))),
        }
    }
    let missing = |what: &str| Diagnostic::new(format!("missing `{what}` line"));
    if kind.is_none() {
        diags.push(missing("type"));
    }
    if alphabet.is_none() {
        diags.push(missing("alphabet"));
    }
    if states.is_none() {
        diags.push(missing("states"));
    }
    let (deterministic, alphabet, states) = (kind?, alphabet?, states?);
    let n = states.len();
    let letters: Vec<String> = alphabet.iter().map(|s| s.as_str().to_string()).collect();
    let mut raw = RawAutomaton {
        deterministic,
        alphabet,
        states,
        neutral: None,
        plus: vec![None; n * n],
        delta: vec![None; letters.len() * n],
        accept: Vec::new(),
    };
    let mut have_neutral = false;
    for line in lines {
        let result: Result<(), Diagnostic> = (|| {
            match line.keyword() {
                "neutral" => {
                    check_arity(line, 1)?;
                    if have_neutral {
                        return Err(line.diag("duplicate `neutral` line"));
                    }
                    have_neutral = true;
                    raw.neutral = Some(lookup(line, "state", &raw.states, &line.args()[0])?);
                }
                "plus" => {
                    check_arity(line, 3)?;
                    let a = line.args();
                    let p = lookup(line, "state", &raw.states, &a[0])?;
                    let q = lookup(line, "state", &raw.states, &a[1])?;
                    let r = lookup(line, "state", &raw.states, &a[2])?;
                    let slot = &mut raw.plus[p * n + q];
                    if slot.is_some() {
                        return Err(line.diag("duplicate `plus` entry"));
                    }
                    *slot = Some(r);
                }
                "delta" => {
                    let a = line.args();
                    if a.len() < 3 {
                        return Err(line.diag("`delta` takes a letter, a state and targets"));
                    }
                    let letter = symbol(line, &a[0])?;
                    let l = letters
                        .iter()
                        .position(|x| x == letter.as_str())
                        .ok_or_else(|| line.diag(format!("unknown letter `{letter}`")))?;
                    let q = lookup(line, "state", &raw.states, &a[1])?;
                    let targets = if a.len() == 3 && !a[2].quoted && a[2].text == "-" {
                        Vec::new()
                    } else {
                        a[2..]
                            .iter()
                            .map(|t| lookup(line, "state", &raw.states, t))
                            .collect::<Result<Vec<_>, _>>()?
                    };
                    if deterministic && targets.len() != 1 {
                        return Err(line.diag("a dfa transition has exactly one target"));
                    }
                    let mut sorted = targets.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    if sorted.len() != targets.len() {
                        return Err(line.diag("repeated target"));
                    }
                    let slot = &mut raw.delta[l * n + q];
                    if slot.is_some() {
                        return Err(line.diag("duplicate `delta` entry"));
                    }
                    *slot = Some(targets);
                }
                "accept" => {
                    for t in line.args() {
                        let q = lookup(line, "state", &raw.states, t)?;
                        if raw.accept.contains(&q) {
                            return Err(line.diag(format!("state `{}` accepted twice", t.text)));
                        }
                        raw.accept.push(q);
                    }
                }
                _ => {}
            }
            Ok(())
        })();
        if let Err(d) = result {
            diags.push(d);
        }
    }
    Some(raw)
}

pub fn write_fta(m: &Automaton) -> String {
    let raw = m.to_raw();
    let mut out = String::new();
    let name = |q: usize| quote_name(&raw.states[q]);
    let _ = writeln!(
        out,
        "type {}",
        if raw.deterministic { "dfa" } else { "nfa" }
    );
    let letters: Vec<String> = raw.alphabet.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "alphabet {}", letters.join(" "));
    let names: Vec<String> = (0..raw.states.len()).map(name).collect();
    let _ = writeln!(out, "states {}", names.join(" "));
    let _ = writeln!(
        out,
        "neutral {}",
        name(raw.neutral.expect("valid automaton"))
    );
    let n = raw.states.len();
    for (k, r) in raw.plus.iter().enumerate() {
        let r = r.expect("valid automaton");
        let _ = writeln!(out, "plus {} {} {}", name(k / n), name(k % n), name(r));
    }
    for (k, targets) in raw.delta.iter().enumerate() {
        let targets = targets.as_ref().expect("valid automaton");
        let list = if targets.is_empty() {
            "-".to_string()
        } else {
            targets
                .iter()
                .map(|&t| name(t))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(out, "delta {} {} {list}", letters[k / n], name(k % n));
    }
    let accept: Vec<String> = raw.accept.iter().map(|&q| name(q)).collect();
    let _ = writeln!(out, "accept {}", accept.join(" "));
    out.replace(" \n", "\n")
}
