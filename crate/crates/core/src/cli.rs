//! The `fata` command line.
//!
//! Verdict commands print `verdict: yes|no`, possibly a `witness:` line and
//! `counters:` lines. Exit codes: 0 yes or success, 1 no, 2 usage or input
//! error, 3 resource cap exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{algebra_to_dfa, dfa_to_algebra, faithful_quotient};
use crate::automata::{
    complement, determinize, globally, inverse_hom, product, product_nfa, split_neutral,
    split_neutral_nfa, Alphabet, Automaton, Dfa, HomSpec, ProductMode,
};
use crate::decide::{
    equivalent, exists_subst_equal, exists_subst_equal_both, exists_subst_subset, find_bound,
    intersect_empty, is_empty, member, operation_bound, subset, subst_equal, subst_subset,
    subst_subset_both, subst_superset, union_bound, Decision, Limits, SearchOutcome,
};
use crate::error::{Error, Result};
use crate::forest::{context, forest, parse_symbol};
use crate::io;
use crate::oracle::{brute_language, SizeBound};
use crate::substitution::{
    combine_inequalities, saturate, subst_image_nfa, subst_preimage_nfa, union_as_subst,
    Substitution,
};

#[derive(Parser, Debug)]
#[command(
    name = "fata",
    version,
    about = "Forest automata and leaf substitutions"
)]
struct Cli {
    /// Output file for constructions; printed to stdout when absent.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
    /// Cap on states of products and substitution automata.
    #[arg(long, global = true, default_value_t = Limits::default().max_states)]
    max_states: usize,
    /// Cap on subsets created by determinization.
    #[arg(long, global = true, default_value_t = Limits::default().max_subsets)]
    max_subsets: usize,
    /// Cap on candidate substitutions examined by `exists-subst`.
    #[arg(long, global = true, default_value_t = Limits::default().max_search)]
    max_search: usize,
    /// Worker threads for `exists-subst`.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Union,
    Intersection,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearchMode {
    Subset,
    Equal,
    EqualBoth,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Value of a forest.
    Eval { automaton: PathBuf, forest: String },
    /// Membership of a forest.
    Member { automaton: PathBuf, forest: String },
    /// Emptiness; `yes` means empty.
    Empty { automaton: PathBuf },
    /// Language equivalence with union-find counters.
    Equiv { left: PathBuf, right: PathBuf },
    /// Language inclusion of the first in the second.
    Subset { left: PathBuf, right: PathBuf },
    /// Complement, determinizing first.
    Complement { automaton: PathBuf },
    /// Product of two automata.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value = "intersection")]
        mode: Mode,
    },
    /// Subset construction.
    Determinize { automaton: PathBuf },
    /// Inverse image under a homomorphism given as `--map a=CONTEXT` pairs.
    Invhom {
        automaton: PathBuf,
        #[arg(long = "map", required = true)]
        maps: Vec<String>,
    },
    /// Forests of L whose every subtree `a(g)` has `g` in L.
    Globally { automaton: PathBuf },
    /// Adjoin a fresh neutral reached only by the empty forest.
    SplitNeutral { automaton: PathBuf },
    /// Nfa for the image of L under a substitution.
    SubstImage {
        automaton: PathBuf,
        substitution: PathBuf,
    },
    /// Nfa for the subjects with some image in L.
    SubstPreimage {
        automaton: PathBuf,
        substitution: PathBuf,
    },
    /// Saturate a substitution with respect to a target automaton.
    Saturate {
        substitution: PathBuf,
        target: PathBuf,
    },
    /// `σ(L) ⊆ R`.
    SubstSubset {
        left: PathBuf,
        substitution: PathBuf,
        right: PathBuf,
    },
    /// `σ(L) ⊇ R`.
    SubstSuperset {
        left: PathBuf,
        substitution: PathBuf,
        right: PathBuf,
    },
    /// `σ(L) = R`.
    SubstEqual {
        left: PathBuf,
        substitution: PathBuf,
        right: PathBuf,
    },
    /// `σ(L) ⊆ σ(R)` with variables on both sides.
    SubstSubsetBoth {
        left: PathBuf,
        substitution: PathBuf,
        right: PathBuf,
    },
    /// Search for a substitution over the letters of L missing from R.
    ExistsSubst {
        #[arg(long, value_enum, default_value = "subset")]
        mode: SearchMode,
        left: PathBuf,
        right: PathBuf,
    },
    /// Emptiness of the intersection of several automata.
    IntersectEmpty {
        #[arg(required = true)]
        automata: Vec<PathBuf>,
    },
    /// Dfa of a forest algebra.
    Alg2fta { algebra: PathBuf },
    /// Forest algebra of a Dfa.
    Fta2alg { automaton: PathBuf },
    /// Faithful quotient of an algebra.
    Faithful { algebra: PathBuf },
    /// Combine inclusions `L1 ⊆ R1, L2 ⊆ R2, …`, given as `L1 R1 L2 R2 …`.
    Combine {
        #[arg(required = true)]
        pairs: Vec<PathBuf>,
        /// Output file for the right-hand automaton.
        #[arg(long)]
        right_output: PathBuf,
    },
    /// A union as the image of one automaton under a substitution.
    UnionSubst {
        #[arg(required = true)]
        automata: Vec<PathBuf>,
        /// Output `.sub` file; value files are written beside it.
        #[arg(long)]
        sub_output: PathBuf,
    },
    /// Accepted forests up to a number of nodes.
    Enumerate {
        automaton: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_nodes: usize,
    },
    /// Check a `.fta`, `.fal` or `.sub` file.
    Validate { file: PathBuf },
}

/// What a run printed and its exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(code) => Outcome {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: if e.is_cap() { 3 } else { 2 },
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

fn limits(cli: &Cli) -> Limits {
    Limits {
        max_states: cli.max_states,
        max_subsets: cli.max_subsets,
        max_search: cli.max_search,
        jobs: cli.jobs.max(1),
        ..Limits::default()
    }
}

/// A Dfa, determinizing an `nfa` file.
fn load_dfa(path: &Path, limits: &Limits) -> Result<Dfa> {
    match io::load_automaton(path)? {
        Automaton::Dfa(d) => Ok(d),
        Automaton::Nfa(n) => determinize(&n, limits.max_subsets),
    }
}

fn verdict(out: &mut String, d: &Decision) -> i32 {
    let _ = writeln!(out, "{d}");
    if d.verdict {
        0
    } else {
        1
    }
}

fn emit(cli: &Cli, out: &mut String, m: &Automaton) -> Result<i32> {
    let diags = m.validate();
    if !diags.is_empty() {
        return Err(Error::Internal(format!(
            "construction produced an invalid automaton: {}",
            Error::Invalid(diags)
        )));
    }
    match &cli.output {
        Some(path) => {
            io::save_automaton(path, m)?;
            let _ = writeln!(out, "output: {}", path.display());
            let _ = writeln!(out, "states: {}", m.monoid().len());
        }
        None => out.push_str(&io::write_fta(m)),
    }
    Ok(0)
}

/// Base letters: the letters of `subject` that are not variables of the
/// `.sub` file, plus the letters of its values.
fn subst_base(sub: &Path, subject: &Alphabet) -> Result<Alphabet> {
    let values = io::read_sub_values(sub)?;
    let mut letters: Vec<_> = subject
        .symbols()
        .iter()
        .filter(|s| !values.iter().any(|(x, _)| x == *s))
        .cloned()
        .collect();
    for (_, v) in &values {
        for s in v.alphabet().symbols() {
            if !letters.contains(s) {
                letters.push(s.clone());
            }
        }
    }
    Alphabet::new(letters)
}

fn given(
    cli: &Cli,
    out: &mut String,
    left: &Path,
    sub: &Path,
    right: &Path,
    decide: fn(&Dfa, &Substitution, &Dfa, &Limits) -> Result<Decision>,
) -> Result<i32> {
    let lim = limits(cli);
    let l = load_dfa(left, &lim)?;
    let r = load_dfa(right, &lim)?;
    let sigma = io::load_subst(sub, r.alphabet())?;
    Ok(verdict(out, &decide(&l, &sigma, &r, &lim)?))
}

fn search_report(out: &mut String, s: &SearchOutcome) -> i32 {
    let code = verdict(out, &s.decision);
    if let Some(sub) = &s.substitution {
        for line in sub.to_string().lines() {
            let _ = writeln!(out, "substitution: {line}");
        }
    }
    let _ = writeln!(out, "counters: candidates={}", s.candidates);
    code
}

fn execute(cli: &Cli, out: &mut String) -> Result<i32> {
    let lim = limits(cli);
    match &cli.command {
        Command::Eval {
            automaton,
            forest: f,
        } => {
            let m = io::load_automaton(automaton)?;
            let f = forest(f)?;
            match &m {
                Automaton::Dfa(d) => {
                    let _ = writeln!(out, "value: {}", io::quote_name(d.state_name(d.eval(&f)?)));
                }
                Automaton::Nfa(n) => {
                    let names: Vec<String> = n
                        .eval(&f)?
                        .iter()
                        .map(|&q| io::quote_name(n.state_name(q)))
                        .collect();
                    let _ = writeln!(out, "values: {}", names.join(" "));
                }
            }
            Ok(0)
        }
        Command::Member {
            automaton,
            forest: f,
        } => {
            let m = io::load_automaton(automaton)?;
            let yes = member(&m, &forest(f)?)?;
            let _ = writeln!(out, "verdict: {}", if yes { "yes" } else { "no" });
            Ok(if yes { 0 } else { 1 })
        }
        Command::Empty { automaton } => {
            let n = io::load_nfa(automaton)?;
            let report = is_empty(&n)?;
            let code = verdict(out, &report.decision);
            let _ = writeln!(
                out,
                "counters: operations={} bound={}",
                report.operations,
                operation_bound(n.num_states(), n.alphabet().len())
            );
            Ok(code)
        }
        Command::Equiv { left, right } => {
            let (l, r) = (load_dfa(left, &lim)?, load_dfa(right, &lim)?);
            let report = equivalent(&l, &r)?;
            let code = verdict(out, &report.decision);
            let (m, n) = (l.num_states(), r.num_states());
            let _ = writeln!(
                out,
                "counters: unions={} finds={}",
                report.unions, report.finds
            );
            let _ = writeln!(
                out,
                "bounds: unions={} finds={}",
                union_bound(m, n),
                find_bound(m, n, l.alphabet().len())
            );
            Ok(code)
        }
        Command::Subset { left, right } => {
            let (l, r) = (load_dfa(left, &lim)?, load_dfa(right, &lim)?);
            Ok(verdict(out, &subset(&l, &r)?))
        }
        Command::Complement { automaton } => {
            emit(cli, out, &complement(&load_dfa(automaton, &lim)?).into())
        }
        Command::Product { left, right, mode } => {
            let mode = match mode {
                Mode::Union => ProductMode::Union,
                Mode::Intersection => ProductMode::Intersection,
            };
            let (l, r) = (io::load_automaton(left)?, io::load_automaton(right)?);
            let size = l.monoid().len().saturating_mul(r.monoid().len());
            if size > lim.max_states {
                return Err(Error::CapExceeded {
                    what: "product states",
                    limit: lim.max_states,
                });
            }
            let m: Automaton = match (&l, &r) {
                (Automaton::Dfa(a), Automaton::Dfa(b)) => product(a, b, mode)?.into(),
                _ => product_nfa(&l.to_nfa(), &r.to_nfa(), mode)?.into(),
            };
            emit(cli, out, &m)
        }
        Command::Determinize { automaton } => {
            let n = io::load_nfa(automaton)?;
            emit(cli, out, &determinize(&n, lim.max_subsets)?.into())
        }
        Command::Invhom { automaton, maps } => {
            let m = load_dfa(automaton, &lim)?;
            let mut pairs = Vec::new();
            for spec in maps {
                let Some((a, c)) = spec.split_once('=') else {
                    return Err(Error::Precondition(format!(
                        "`--map {spec}` is not of the form LETTER=CONTEXT"
                    )));
                };
                pairs.push((parse_symbol(a.trim())?, context(c)?));
            }
            emit(cli, out, &inverse_hom(&m, &HomSpec::new(pairs)?)?.into())
        }
        Command::Globally { automaton } => {
            emit(cli, out, &globally(&load_dfa(automaton, &lim)?).into())
        }
        Command::SplitNeutral { automaton } => {
            let m: Automaton = match io::load_automaton(automaton)? {
                Automaton::Dfa(d) => split_neutral(&d).into(),
                Automaton::Nfa(n) => split_neutral_nfa(&n).into(),
            };
            emit(cli, out, &m)
        }
        Command::SubstImage {
            automaton,
            substitution,
        } => {
            let m = load_dfa(automaton, &lim)?;
            let sigma = io::load_subst(substitution, &subst_base(substitution, m.alphabet())?)?;
            emit(cli, out, &subst_image_nfa(&m, &sigma, &lim)?.into())
        }
        Command::SubstPreimage {
            automaton,
            substitution,
        } => {
            let m = io::load_automaton(automaton)?;
            let sigma = io::load_subst(substitution, m.alphabet())?;
            emit(cli, out, &subst_preimage_nfa(&m, &sigma)?.into())
        }
        Command::Saturate {
            substitution,
            target,
        } => {
            let r = load_dfa(target, &lim)?;
            let sigma = io::load_subst(substitution, r.alphabet())?;
            let s = saturate(&sigma, &r)?;
            for line in s.to_string().lines() {
                let _ = writeln!(out, "substitution: {line}");
            }
            if let Some(path) = &cli.output {
                io::save_subst(path, &s.to_substitution()?)?;
                let _ = writeln!(out, "output: {}", path.display());
            }
            Ok(0)
        }
        Command::SubstSubset {
            left,
            substitution,
            right,
        } => given(cli, out, left, substitution, right, subst_subset),
        Command::SubstSuperset {
            left,
            substitution,
            right,
        } => given(cli, out, left, substitution, right, subst_superset),
        Command::SubstEqual {
            left,
            substitution,
            right,
        } => given(cli, out, left, substitution, right, subst_equal),
        Command::SubstSubsetBoth {
            left,
            substitution,
            right,
        } => {
            let l = load_dfa(left, &lim)?;
            let r = load_dfa(right, &lim)?;
            let mut subject = l.alphabet().symbols().to_vec();
            for s in r.alphabet().symbols() {
                if !subject.contains(s) {
                    subject.push(s.clone());
                }
            }
            let base = subst_base(substitution, &Alphabet::new(subject)?)?;
            let sigma = io::load_subst(substitution, &base)?;
            Ok(verdict(out, &subst_subset_both(&l, &sigma, &r, &lim)?))
        }
        Command::ExistsSubst { mode, left, right } => {
            if let SearchMode::EqualBoth = mode {
                return exists_subst_equal_both().map(|s| search_report(out, &s));
            }
            let (l, r) = (load_dfa(left, &lim)?, load_dfa(right, &lim)?);
            let s = match mode {
                SearchMode::Subset => exists_subst_subset(&l, &r, &lim)?,
                _ => exists_subst_equal(&l, &r, &lim)?,
            };
            Ok(search_report(out, &s))
        }
        Command::IntersectEmpty { automata } => {
            let ms = automata
                .iter()
                .map(|p| load_dfa(p, &lim))
                .collect::<Result<Vec<_>>>()?;
            Ok(verdict(out, &intersect_empty(&ms, &lim)?))
        }
        Command::Alg2fta { algebra } => emit(
            cli,
            out,
            &algebra_to_dfa(&io::load_algebra(algebra)?).into(),
        ),
        Command::Fta2alg { automaton } => {
            let alg = dfa_to_algebra(&load_dfa(automaton, &lim)?, lim.max_states)?;
            write_algebra(cli, out, &alg)
        }
        Command::Faithful { algebra } => {
            let alg = io::load_algebra(algebra)?;
            let (q, classes) = faithful_quotient(&alg);
            for class in classes.classes() {
                let names: Vec<String> = class
                    .iter()
                    .map(|&x| io::quote_name(alg.vertical().name(x)))
                    .collect();
                let _ = writeln!(out, "class: {}", names.join(" "));
            }
            write_algebra(cli, out, &q)
        }
        Command::Combine {
            pairs,
            right_output,
        } => {
            if pairs.len() % 2 != 0 {
                return Err(Error::Precondition(
                    "combine takes pairs `L1 R1 L2 R2 …`".into(),
                ));
            }
            let ms = pairs
                .iter()
                .map(|p| load_dfa(p, &lim))
                .collect::<Result<Vec<_>>>()?;
            let (ls, rs): (Vec<Dfa>, Vec<Dfa>) =
                ms.chunks(2).map(|c| (c[0].clone(), c[1].clone())).unzip();
            let (l, r) = combine_inequalities(&ls, &rs, &lim)?;
            io::save_dfa(right_output, &r)?;
            let _ = writeln!(out, "right-output: {}", right_output.display());
            emit(cli, out, &l.into())
        }
        Command::UnionSubst {
            automata,
            sub_output,
        } => {
            let ms = automata
                .iter()
                .map(|p| load_dfa(p, &lim))
                .collect::<Result<Vec<_>>>()?;
            let (m, sigma) = union_as_subst(&ms)?;
            io::save_subst(sub_output, &sigma)?;
            let _ = writeln!(out, "sub-output: {}", sub_output.display());
            emit(cli, out, &m.into())
        }
        Command::Enumerate {
            automaton,
            max_nodes,
        } => {
            let m = io::load_automaton(automaton)?;
            for f in brute_language(&m, SizeBound(*max_nodes))? {
                let _ = writeln!(out, "{f}");
            }
            Ok(0)
        }
        Command::Validate { file } => {
            match file.extension().and_then(|e| e.to_str()) {
                Some("fal") => {
                    io::load_algebra(file)?;
                }
                Some("sub") => {
                    let base = subst_base(file, &Alphabet::default())?;
                    io::load_subst(file, &base)?;
                }
                _ => {
                    io::load_automaton(file)?;
                }
            }
            let _ = writeln!(out, "valid: {}", file.display());
            Ok(0)
        }
    }
}

fn write_algebra(cli: &Cli, out: &mut String, alg: &crate::algebra::ForestAlgebra) -> Result<i32> {
    match &cli.output {
        Some(path) => {
            io::save_algebra(path, alg)?;
            let _ = writeln!(out, "output: {}", path.display());
            let _ = writeln!(
                out,
                "sizes: H={} V={}",
                alg.horizontal().len(),
                alg.vertical().len()
            );
        }
        None => out.push_str(&io::write_fal(alg)),
    }
    Ok(0)
}
