//! Line-oriented text formats: `.fta` automata, `.fal` algebras, `.sub`
//! substitutions and forest lists.
//!
//! A line is a keyword followed by whitespace-separated tokens. `#` starts a
//! comment. Tokens containing whitespace, `"` or `#` are written in double
//! quotes with backslash escapes.

mod fal;
mod fta;
mod sub;

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Diagnostic, Error, Result};
use crate::forest::{parse_symbol, Forest, Symbol};

pub use fal::{parse_fal, write_fal};
pub use fta::{parse_fta, write_fta};
pub use sub::{parse_sub, read_sub_values, write_sub, SubFile};

use crate::algebra::ForestAlgebra;
use crate::automata::{Alphabet, Automaton, Dfa, Nfa};
use crate::substitution::Substitution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub text: String,
    pub quoted: bool,
}

/// A nonblank line with its 1-based number.
#[derive(Clone, Debug)]
pub(crate) struct Line {
    pub number: usize,
    pub tokens: Vec<Token>,
}

impl Line {
    pub fn keyword(&self) -> &str {
        &self.tokens[0].text
    }

    pub fn args(&self) -> &[Token] {
        &self.tokens[1..]
    }

    pub fn diag(&self, message: impl Into<String>) -> Diagnostic {
        Diagnostic::new(message)
            .at_line(self.number)
            .with_tokens(self.tokens.iter().map(|t| quote_name(&t.text)))
    }
}

pub(crate) fn lex(text: &str) -> Result<Vec<Line>, Vec<Diagnostic>> {
    let mut lines = Vec::new();
    let mut diags = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        match lex_line(raw) {
            Ok(tokens) if tokens.is_empty() => {}
            Ok(tokens) => lines.push(Line {
                number: i + 1,
                tokens,
            }),
            Err(msg) => diags.push(Diagnostic::new(msg).at_line(i + 1)),
        }
    }
    if diags.is_empty() {
        Ok(lines)
    } else {
        Err(diags)
    }
}

fn lex_line(line: &str) -> Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '#' {
            break;
        } else if c == '"' {
            chars.next();
            let mut text = String::new();
            loop {
                match chars.next() {
                    None => return Err("unterminated quoted token".into()),
                    Some('"') => break,
                    Some('\\') => match chars.next() {
                        Some('"') => text.push('"'),
                        Some('\\') => text.push('\\'),
                        Some('n') => text.push('\n'),
                        Some('t') => text.push('\t'),
                        Some('u') => {
                            if chars.next() != Some('{') {
                                return Err("bad \\u escape".into());
                            }
                            let hex: String = chars.by_ref().take_while(|&c| c != '}').collect();
                            let c = u32::from_str_radix(&hex, 16)
                                .ok()
                                .and_then(char::from_u32)
                                .ok_or("bad \\u escape")?;
                            text.push(c);
                        }
                        _ => return Err("bad escape in quoted token".into()),
                    },
                    Some(c) => text.push(c),
                }
            }
            tokens.push(Token { text, quoted: true });
        } else {
            let mut text = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() || c == '"' || c == '#' {
                    break;
                }
                text.push(c);
                chars.next();
            }
            tokens.push(Token {
                text,
                quoted: false,
            });
        }
    }
    Ok(tokens)
}

/// A name as a token, quoted when it would not read back as itself.
pub fn quote_name(name: &str) -> String {
    let bare = !name.is_empty()
        && name != "-"
        && !name.ends_with(':')
        && !name
            .chars()
            .any(|c| c.is_whitespace() || c.is_control() || c == '"' || c == '#' || c == '\\');
    if bare {
        return name.to_string();
    }
    let mut out = String::from("\"");
    for c in name.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{{{:x}}}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub(crate) fn symbol(line: &Line, t: &Token) -> Result<Symbol, Diagnostic> {
    if t.quoted {
        if t.text.is_empty() {
            return Err(line.diag("empty letter"));
        }
        Ok(Symbol::new(t.text.as_str()))
    } else {
        parse_symbol(&t.text).map_err(|_| line.diag(format!("`{}` is not a letter", t.text)))
    }
}

/// Position of `name` in `names`, or a diagnostic naming the unknown token.
pub(crate) fn lookup(
    line: &Line,
    what: &str,
    names: &[String],
    name: &Token,
) -> Result<usize, Diagnostic> {
    names
        .iter()
        .position(|n| *n == name.text)
        .ok_or_else(|| line.diag(format!("unknown {what} `{}`", name.text)))
}

pub(crate) fn check_arity(line: &Line, expected: usize) -> Result<(), Diagnostic> {
    if line.args().len() == expected {
        Ok(())
    } else {
        Err(line.diag(format!(
            "`{}` takes {expected} arguments, got {}",
            line.keyword(),
            line.args().len()
        )))
    }
}

pub(crate) fn located(diags: Vec<Diagnostic>, path: Option<&Path>) -> Error {
    Error::Invalid(
        diags
            .into_iter()
            .map(|d| match path {
                Some(p) => d.in_file(p),
                None => d,
            })
            .collect(),
    )
}

pub(crate) fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_automaton(path: impl AsRef<Path>) -> Result<Automaton> {
    let path = path.as_ref();
    parse_fta(&read(path)?, Some(path))
}

/// Fails with [`Error::NotDeterministic`] on an `nfa` file.
pub fn load_dfa(path: impl AsRef<Path>) -> Result<Dfa> {
    load_automaton(path)?.into_dfa()
}

/// Either kind; a `dfa` file is read as an Nfa with singleton transitions.
pub fn load_nfa(path: impl AsRef<Path>) -> Result<Nfa> {
    Ok(load_automaton(path)?.to_nfa())
}

pub fn save_automaton(path: impl AsRef<Path>, m: &Automaton) -> Result<()> {
    write(path.as_ref(), &write_fta(m))
}

pub fn save_dfa(path: impl AsRef<Path>, m: &Dfa) -> Result<()> {
    save_automaton(path, &m.clone().into())
}

pub fn save_nfa(path: impl AsRef<Path>, m: &Nfa) -> Result<()> {
    save_automaton(path, &m.clone().into())
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<ForestAlgebra> {
    let path = path.as_ref();
    parse_fal(&read(path)?, Some(path))
}

pub fn save_algebra(path: impl AsRef<Path>, alg: &ForestAlgebra) -> Result<()> {
    write(path.as_ref(), &write_fal(alg))
}

/// Values are resolved relative to the directory of `path` and read over
/// `base`; letters of `base` missing from a value's alphabet are added with
/// empty transitions.
pub fn load_subst(path: impl AsRef<Path>, base: &Alphabet) -> Result<Substitution> {
    sub::load(path.as_ref(), base)
}

/// Writes `path` and one value file `<stem>.<variable>.fta` per variable
/// beside it.
pub fn save_subst(path: impl AsRef<Path>, sigma: &Substitution) -> Result<()> {
    sub::save(path.as_ref(), sigma)
}

/// One forest per nonblank line; `#` starts a comment.
pub fn parse_forests(text: &str) -> Result<Vec<Forest>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f = crate::forest::forest(line).map_err(|e| {
            Error::invalid(
                Diagnostic::new(e.to_string())
                    .at_line(i + 1)
                    .with_tokens([line]),
            )
        })?;
        out.push(f);
    }
    Ok(out)
}

pub fn load_forests(path: impl AsRef<Path>) -> Result<Vec<Forest>> {
    let path = path.as_ref();
    parse_forests(&read(path)?).map_err(|e| match e {
        Error::Invalid(d) => located(d, Some(path)),
        e => e,
    })
}

pub fn write_forests(forests: &[Forest]) -> String {
    forests.iter().map(|f| format!("{f}\n")).collect()
}
