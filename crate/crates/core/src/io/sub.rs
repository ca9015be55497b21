use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{lex, located, quote_name, symbol};
use crate::automata::{Alphabet, Automaton, Nfa};
use crate::error::{Diagnostic, Error, Result};
use crate::forest::Symbol;
use crate::substitution::Substitution;

/// The bindings of a `.sub` file, paths as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubFile {
    pub bindings: Vec<(Symbol, PathBuf)>,
}

pub fn parse_sub(text: &str, path: Option<&Path>) -> Result<SubFile> {
    let lines = lex(text).map_err(|d| located(d, path))?;
    let mut diags = Vec::new();
    let mut vars: Option<Vec<Symbol>> = None;
    let mut bindings: Vec<(Symbol, PathBuf)> = Vec::new();
    for line in &lines {
        if line.keyword() == "vars" && !line.tokens[0].quoted {
            if vars.is_some() {
                diags.push(line.diag("duplicate `vars` line"));
                continue;
            }
            let mut declared = Vec::new();
            for t in line.args() {
                match symbol(line, t) {
                    Ok(x) if declared.contains(&x) => {
                        diags.push(line.diag(format!("variable `{x}` declared twice")))
                    }
                    Ok(x) => declared.push(x),
                    Err(d) => diags.push(d),
                }
            }
            vars = Some(declared);
        }
    }
    let Some(vars) = vars else {
        diags.push(Diagnostic::new("missing `vars` line"));
        return Err(located(diags, path));
    };
    for line in &lines {
        if line.keyword() == "vars" && !line.tokens[0].quoted {
            continue;
        }
        let t = &line.tokens;
        if t.len() != 3 || t[1].quoted || t[1].text != "=" {
            diags.push(line.diag("expected `variable = path`"));
            continue;
        }
        let x = match symbol(line, &t[0]) {
            Ok(x) => x,
            Err(d) => {
                diags.push(d);
                continue;
            }
        };
        if !vars.contains(&x) {
            diags.push(line.diag(format!("variable `{x}` is not declared")));
        } else if bindings.iter().any(|(y, _)| *y == x) {
            diags.push(line.diag(format!("variable `{x}` bound twice")));
        } else {
            bindings.push((x, PathBuf::from(&t[2].text)));
        }
    }
    for x in &vars {
        if !bindings.iter().any(|(y, _)| y == x) {
            diags.push(
                Diagnostic::new(format!("variable `{x}` has no value"))
                    .with_tokens([x.to_string()]),
            );
        }
    }
    if !diags.is_empty() {
        return Err(located(diags, path));
    }
    let order = |x: &Symbol| vars.iter().position(|y| y == x);
    bindings.sort_by_key(|(x, _)| order(x));
    Ok(SubFile { bindings })
}

/// Value automata of a `.sub` file in declaration order, each over its own
/// alphabet.
pub fn read_sub_values(path: impl AsRef<Path>) -> Result<Vec<(Symbol, Nfa)>> {
    let path = path.as_ref();
    let file = parse_sub(&super::read(path)?, Some(path))?;
    let dir = path.parent().unwrap_or(Path::new(""));
    let mut out = Vec::new();
    let mut diags = Vec::new();
    for (x, rel) in file.bindings {
        match super::load_automaton(dir.join(&rel)) {
            Ok(m) => out.push((x, m.to_nfa())),
            Err(e) => diags.push(
                Diagnostic::new(format!("value of `{x}`: {e}"))
                    .with_tokens([rel.display().to_string()]),
            ),
        }
    }
    if diags.is_empty() {
        Ok(out)
    } else {
        Err(located(diags, Some(path)))
    }
}

/// `m` over `base`; letters outside `m`'s alphabet get empty transitions.
fn widen(m: &Nfa, base: &Alphabet) -> Result<Nfa> {
    let mut map = Vec::with_capacity(base.len());
    for s in base.symbols() {
        map.push(m.alphabet().get(s));
    }
    if let Some(s) = m.alphabet().symbols().iter().find(|s| !base.contains(s)) {
        return Err(Error::AlphabetMismatch(format!(
            "value letter `{s}` is not in the base alphabet"
        )));
    }
    Ok(Nfa::from_fns(
        base.clone(),
        m.monoid().clone(),
        |a, q| map[a].map(|b| m.step(b, q).to_vec()).unwrap_or_default(),
        |q| m.is_accepting(q),
    ))
}

pub(super) fn load(path: &Path, base: &Alphabet) -> Result<Substitution> {
    let values = read_sub_values(path)?;
    let mut pairs = Vec::new();
    let mut diags = Vec::new();
    for (x, m) in values {
        match widen(&m, base) {
            Ok(m) => pairs.push((x, m)),
            Err(e) => diags.push(Diagnostic::new(format!("value of `{x}`: {e}"))),
        }
    }
    if !diags.is_empty() {
        return Err(located(diags, Some(path)));
    }
    Substitution::new(base.clone(), pairs).map_err(|e| match e {
        Error::EmptyValue(x) => located(
            vec![Diagnostic::new(format!(
                "nonemptiness: the value of `{x}` has an empty language"
            ))
            .with_tokens([x])],
            Some(path),
        ),
        e => e,
    })
}

fn value_file_name(path: &Path, x: &Symbol, i: usize) -> String {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sub".into());
    let tag: String = x
        .as_str()
        .chars()
        .filter(|c| c.is_ascii_alphanumeric() || *c == '_')
        .collect();
    format!(
        "{stem}.{i}{}{tag}.fta",
        if tag.is_empty() { "" } else { "_" }
    )
}

pub fn write_sub(file: &SubFile) -> String {
    let mut out = String::new();
    let vars: Vec<String> = file.bindings.iter().map(|(x, _)| x.to_string()).collect();
    let _ = writeln!(out, "vars {}", vars.join(" "));
    for (x, p) in &file.bindings {
        let _ = writeln!(out, "{x} = {}", quote_name(&p.to_string_lossy()));
    }
    out.replace(" \n", "\n")
}

pub(super) fn save(path: &Path, sigma: &Substitution) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new(""));
    let mut bindings = Vec::new();
    for (i, (x, value)) in sigma.iter().enumerate() {
        let name = value_file_name(path, x, i);
        super::save_automaton(dir.join(&name), &Automaton::Nfa(value.clone()))?;
        bindings.push((x.clone(), PathBuf::from(name)));
    }
    super::write(path, &write_sub(&SubFile { bindings }))
}
