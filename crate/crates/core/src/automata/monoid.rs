use std::collections::HashSet;

use crate::error::Diagnostic;

/// A finite monoid with named elements and a dense multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMonoid {
    names: Vec<String>,
    neutral: usize,
    table: Vec<usize>,
}

impl StateMonoid {
    /// Build without checking the monoid laws. `table[i * n + j]` is `i + j`.
    pub(crate) fn new_unchecked(names: Vec<String>, neutral: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), names.len() * names.len());
        debug_assert!(neutral < names.len());
        StateMonoid {
            names: uniquify(names),
            neutral,
            table,
        }
    }

    /// Build from a closure, checking nothing.
    pub(crate) fn from_fn(
        names: Vec<String>,
        neutral: usize,
        op: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let n = names.len();
        let table = (0..n * n).map(|k| op(k / n, k % n)).collect();
        StateMonoid::new_unchecked(names, neutral, table)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn neutral(&self) -> usize {
        self.neutral
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn plus(&self, p: usize, q: usize) -> usize {
        self.table[p * self.names.len() + q]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub(crate) fn rename(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.names.len());
        self.names = uniquify(names);
    }

    /// Identity and associativity diagnostics; empty when the laws hold.
    pub fn law_violations(&self) -> Vec<Diagnostic> {
        check_monoid_laws(&self.names, self.neutral, |p, q| Some(self.plus(p, q)), "+")
    }
}

/// Check identity and associativity of a possibly partial table.
/// Missing entries are skipped; totality is reported separately by callers.
pub(crate) fn check_monoid_laws(
    names: &[String],
    neutral: usize,
    op: impl Fn(usize, usize) -> Option<usize>,
    symbol: &str,
) -> Vec<Diagnostic> {
    let n = names.len();
    let mut out = Vec::new();
    for q in 0..n {
        for (lhs, v) in [(true, op(neutral, q)), (false, op(q, neutral))] {
            if let Some(v) = v {
                if v != q {
                    let expr = if lhs {
                        format!("{}{symbol}{}", names[neutral], names[q])
                    } else {
                        format!("{}{symbol}{}", names[q], names[neutral])
                    };
                    out.push(
                        Diagnostic::new(format!(
                            "identity law violated: {expr} = {} but should be {}",
                            names[v], names[q]
                        ))
                        .with_tokens([names[neutral].clone(), names[q].clone()]),
                    );
                }
            }
        }
    }
    'outer: for p in 0..n {
        for q in 0..n {
            let Some(pq) = op(p, q) else { continue };
            for r in 0..n {
                let (Some(qr), Some(left)) = (op(q, r), op(pq, r)) else {
                    continue;
                };
                let Some(right) = op(p, qr) else { continue };
                if left != right {
                    out.push(
                        Diagnostic::new(format!(
                            "associativity violated: ({p}{s}{q}){s}{r} = {} but {p}{s}({q}{s}{r}) = {}",
                            names[left],
                            names[right],
                            p = names[p],
                            q = names[q],
                            r = names[r],
                            s = symbol
                        ))
                        .with_tokens([names[p].clone(), names[q].clone(), names[r].clone()]),
                    );
                    // one witness is enough to reject the table
                    break 'outer;
                }
            }
        }
    }
    out
}

/// Make names unique by appending primes.
pub(crate) fn uniquify(names: Vec<String>) -> Vec<String> {
    let mut seen = HashSet::new();
    names
        .into_iter()
        .map(|mut n| {
            while !seen.insert(n.clone()) {
                n.push('\'');
            }
            n
        })
        .collect()
}
