//! Finite forest algebras `(H, V, ·, inl, inr)` with a letter homomorphism
//! and an accepting subset of `H`.

use std::collections::HashMap;

use crate::automata::{check_monoid_laws, Alphabet, Dfa, StateMonoid};
use crate::error::{Diagnostic, Error, Result};
use crate::forest::Forest;

/// Unvalidated algebra tables. `None` marks a missing entry.
///
/// `plus_h[i * |H| + j]` is `i + j`, `times_v[u * |V| + v]` is `uv` and
/// `action[v * |H| + h]` is `v·h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAlgebra {
    pub alphabet: Alphabet,
    pub h_names: Vec<String>,
    pub h_neutral: Option<usize>,
    pub plus_h: Vec<Option<usize>>,
    pub v_names: Vec<String>,
    pub v_neutral: Option<usize>,
    pub times_v: Vec<Option<usize>>,
    pub action: Vec<Option<usize>>,
    pub inl: Vec<Option<usize>>,
    pub inr: Vec<Option<usize>>,
    pub hom: Vec<Option<usize>>,
    pub accept: Vec<usize>,
}

impl RawAlgebra {
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let (nh, nv) = (self.h_names.len(), self.v_names.len());
        if nh == 0 || nv == 0 {
            out.push(Diagnostic::new("H and V must be nonempty"));
            return out;
        }
        for (what, names) in [("H", &self.h_names), ("V", &self.v_names)] {
            for (i, s) in names.iter().enumerate() {
                if names[..i].contains(s) {
                    out.push(
                        Diagnostic::new(format!("duplicate {what} element"))
                            .with_tokens([s.clone()]),
                    );
                }
            }
        }
        let shapes = [
            ("plusH", self.plus_h.len(), nh * nh, nh),
            ("timesV", self.times_v.len(), nv * nv, nv),
            ("action", self.action.len(), nv * nh, nh),
            ("inl", self.inl.len(), nh, nv),
            ("inr", self.inr.len(), nh, nv),
            ("hom", self.hom.len(), self.alphabet.len(), nv),
        ];
        for (what, len, expected, _) in shapes {
            if len != expected {
                out.push(Diagnostic::new(format!(
                    "{what} table has {len} entries, expected {expected}"
                )));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let hn = |i: usize| self.h_names[i].clone();
        let vn = |i: usize| self.v_names[i].clone();
        let tables: [(&str, &[Option<usize>], usize); 6] = [
            ("plusH", &self.plus_h, nh),
            ("timesV", &self.times_v, nv),
            ("action", &self.action, nh),
            ("inl", &self.inl, nv),
            ("inr", &self.inr, nv),
            ("hom", &self.hom, nv),
        ];
        for (what, table, range) in tables {
            for (k, e) in table.iter().enumerate() {
                let key: Vec<String> = match what {
                    "plusH" => vec![hn(k / nh), hn(k % nh)],
                    "timesV" => vec![vn(k / nv), vn(k % nv)],
                    "action" => vec![vn(k / nh), hn(k % nh)],
                    "inl" | "inr" => vec![hn(k)],
                    _ => vec![self.alphabet.symbols()[k].to_string()],
                };
                match e {
                    None => {
                        out.push(Diagnostic::new(format!("missing {what} entry")).with_tokens(key))
                    }
                    Some(x) if *x >= range => out.push(
                        Diagnostic::new(format!("{what} entry {x} out of range")).with_tokens(key),
                    ),
                    _ => {}
                }
            }
        }
        for &f in &self.accept {
            if f >= nh {
                out.push(Diagnostic::new(format!("accepting index {f} out of range")));
            }
        }
        let zh = match self.h_neutral {
            Some(z) if z < nh => Some(z),
            _ => {
                out.push(Diagnostic::new("H has no valid neutral element"));
                None
            }
        };
        let zv = match self.v_neutral {
            Some(z) if z < nv => Some(z),
            _ => {
                out.push(Diagnostic::new("V has no valid neutral element"));
                None
            }
        };
        if !out.is_empty() {
            return out;
        }
        let (zh, zv) = (zh.expect("checked"), zv.expect("checked"));
        let plus = |i: usize, j: usize| self.plus_h[i * nh + j].expect("checked");
        let times = |u: usize, v: usize| self.times_v[u * nv + v].expect("checked");
        let act = |v: usize, h: usize| self.action[v * nh + h].expect("checked");
        out.extend(check_monoid_laws(
            &self.h_names,
            zh,
            |i, j| Some(plus(i, j)),
            "+",
        ));
        out.extend(check_monoid_laws(
            &self.v_names,
            zv,
            |u, v| Some(times(u, v)),
            "·",
        ));
        for h in 0..nh {
            if act(zv, h) != h {
                out.push(
                    Diagnostic::new(format!(
                        "action axiom violated: {}·{} = {} but should be {}",
                        vn(zv),
                        hn(h),
                        hn(act(zv, h)),
                        hn(h)
                    ))
                    .with_tokens([vn(zv), hn(h)]),
                );
            }
        }
        'outer: for u in 0..nv {
            for v in 0..nv {
                for h in 0..nh {
                    let (left, right) = (act(times(u, v), h), act(u, act(v, h)));
                    if left != right {
                        out.push(
                            Diagnostic::new(format!(
                                "action axiom violated: ({u}{v})·{h} = {} but {u}·({v}·{h}) = {}",
                                hn(left),
                                hn(right),
                                u = vn(u),
                                v = vn(v),
                                h = hn(h)
                            ))
                            .with_tokens([vn(u), vn(v), hn(h)]),
                        );
                        break 'outer;
                    }
                }
            }
        }
        for (side, table) in [("inl", &self.inl), ("inr", &self.inr)] {
            for (g, entry) in table.iter().enumerate() {
                let v = entry.expect("checked");
                for h in 0..nh {
                    let expected = if side == "inl" {
                        plus(g, h)
                    } else {
                        plus(h, g)
                    };
                    if act(v, h) != expected {
                        out.push(
                            Diagnostic::new(format!(
                                "insertion axiom violated: {side}({})·{} = {} but should be {}",
                                hn(g),
                                hn(h),
                                hn(act(v, h)),
                                hn(expected)
                            ))
                            .with_tokens([hn(g), hn(h)]),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn build(self) -> Result<ForestAlgebra> {
        let diags = self.validate();
        if !diags.is_empty() {
            return Err(Error::Invalid(diags));
        }
        let unwrap = |t: Vec<Option<usize>>| t.into_iter().map(|e| e.expect("validated")).collect();
        let nh = self.h_names.len();
        let mut accept = vec![false; nh];
        for f in self.accept {
            accept[f] = true;
        }
        Ok(ForestAlgebra {
            alphabet: self.alphabet,
            h: StateMonoid::new_unchecked(
                self.h_names,
                self.h_neutral.expect("validated"),
                unwrap(self.plus_h),
            ),
            v: StateMonoid::new_unchecked(
                self.v_names,
                self.v_neutral.expect("validated"),
                unwrap(self.times_v),
            ),
            action: unwrap(self.action),
            inl: unwrap(self.inl),
            inr: unwrap(self.inr),
            hom: unwrap(self.hom),
            accept,
        })
    }
}

/// A validated finite forest algebra recognizing a forest language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestAlgebra {
    alphabet: Alphabet,
    h: StateMonoid,
    v: StateMonoid,
    action: Vec<usize>,
    inl: Vec<usize>,
    inr: Vec<usize>,
    hom: Vec<usize>,
    accept: Vec<bool>,
}

impl ForestAlgebra {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn horizontal(&self) -> &StateMonoid {
        &self.h
    }

    pub fn vertical(&self) -> &StateMonoid {
        &self.v
    }

    pub fn act(&self, v: usize, h: usize) -> usize {
        self.action[v * self.h.len() + h]
    }

    pub fn inl(&self, g: usize) -> usize {
        self.inl[g]
    }

    pub fn inr(&self, g: usize) -> usize {
        self.inr[g]
    }

    pub fn hom(&self, letter: usize) -> usize {
        self.hom[letter]
    }

    pub fn is_accepting(&self, h: usize) -> bool {
        self.accept[h]
    }

    pub fn to_raw(&self) -> RawAlgebra {
        let some = |t: &[usize]| t.iter().map(|&x| Some(x)).collect();
        RawAlgebra {
            alphabet: self.alphabet.clone(),
            h_names: self.h.names().to_vec(),
            h_neutral: Some(self.h.neutral()),
            plus_h: some(self.h.table()),
            v_names: self.v.names().to_vec(),
            v_neutral: Some(self.v.neutral()),
            times_v: some(self.v.table()),
            action: some(&self.action),
            inl: some(&self.inl),
            inr: some(&self.inr),
            hom: some(&self.hom),
            accept: (0..self.h.len()).filter(|&h| self.accept[h]).collect(),
        }
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        self.to_raw().validate()
    }

    pub fn accepts(&self, f: &Forest) -> Result<bool> {
        Ok(self.accept[eval_algebra(self, f)?])
    }
}

pub fn validate_algebra(alg: &ForestAlgebra) -> Vec<Diagnostic> {
    alg.validate()
}

/// The image of `f` in `H`.
pub fn eval_algebra(alg: &ForestAlgebra, f: &Forest) -> Result<usize> {
    let mut sum = alg.h.neutral();
    for t in f.trees() {
        let a = alg.alphabet.letter(&t.label)?;
        let inner = eval_algebra(alg, &t.children)?;
        sum = alg.h.plus(sum, alg.act(alg.hom[a], inner));
    }
    Ok(sum)
}

/// A partition of `V` into classes of elements acting identically on `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceClasses {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl CongruenceClasses {
    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    /// Classes in order of their least member; members ascend.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Quotient of `V` by equality of action. Each class is named after its
/// least member.
pub fn faithful_quotient(alg: &ForestAlgebra) -> (ForestAlgebra, CongruenceClasses) {
    let nh = alg.h.len();
    let mut by_action: HashMap<&[usize], usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(alg.v.len());
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..alg.v.len() {
        let row = &alg.action[v * nh..(v + 1) * nh];
        let c = *by_action.entry(row).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(v);
        class_of.push(c);
    }
    let rep = |c: usize| classes[c][0];
    let names = (0..classes.len())
        .map(|c| alg.v.name(rep(c)).to_string())
        .collect();
    let v = StateMonoid::from_fn(names, class_of[alg.v.neutral()], |c, d| {
        class_of[alg.v.plus(rep(c), rep(d))]
    });
    let action = (0..classes.len() * nh)
        .map(|k| alg.act(rep(k / nh), k % nh))
        .collect();
    let quotient = ForestAlgebra {
        alphabet: alg.alphabet.clone(),
        h: alg.h.clone(),
        v,
        action,
        inl: alg.inl.iter().map(|&x| class_of[x]).collect(),
        inr: alg.inr.iter().map(|&x| class_of[x]).collect(),
        hom: alg.hom.iter().map(|&x| class_of[x]).collect(),
        accept: alg.accept.clone(),
    };
    (quotient, CongruenceClasses { class_of, classes })
}

/// True when distinct elements of `V` act differently on some `h`.
pub fn is_faithful(alg: &ForestAlgebra) -> bool {
    faithful_quotient(alg).1.len() == alg.v.len()
}

/// The automaton with states `H` and `δ(a, h) = hom(a)·h`.
pub fn algebra_to_dfa(alg: &ForestAlgebra) -> Dfa {
    Dfa::from_fns(
        alg.alphabet.clone(),
        alg.h.names().to_vec(),
        alg.h.neutral(),
        |p, q| alg.h.plus(p, q),
        |a, h| alg.act(alg.hom[a], h),
        |h| alg.accept[h],
    )
}

/// The algebra whose `V` is the transformation monoid on the states of `m`
/// generated by the letter transitions and the maps `q + ·` and `· + q`.
/// Fails when `V` would exceed `max_vertical` elements.
pub fn dfa_to_algebra(m: &Dfa, max_vertical: usize) -> Result<ForestAlgebra> {
    let n = m.num_states();
    let identity: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Vec<usize>> = (0..m.alphabet().len())
        .map(|a| (0..n).map(|q| m.step(a, q)).collect())
        .collect();
    let inl: Vec<Vec<usize>> = (0..n)
        .map(|g| (0..n).map(|h| m.plus(g, h)).collect())
        .collect();
    let inr: Vec<Vec<usize>> = (0..n)
        .map(|g| (0..n).map(|h| m.plus(h, g)).collect())
        .collect();
    gens.extend(inl.iter().cloned());
    gens.extend(inr.iter().cloned());

    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut j = 0;
    while j < elements.len() {
        for g in &gens {
            // g after elements[j]
            let t: Vec<usize> = elements[j].iter().map(|&q| g[q]).collect();
            if !index.contains_key(&t) {
                if elements.len() >= max_vertical {
                    return Err(Error::CapExceeded {
                        what: "vertical monoid size",
                        limit: max_vertical,
                    });
                }
                index.insert(t.clone(), elements.len());
                elements.push(t);
            }
        }
        j += 1;
    }
    let nv = elements.len();
    // (uv)·h = u·(v·h)
    let times: Vec<usize> = (0..nv * nv)
        .map(|k| {
            let (u, v) = (&elements[k / nv], &elements[k % nv]);
            let t: Vec<usize> = v.iter().map(|&q| u[q]).collect();
            index[&t]
        })
        .collect();
    let names = elements
        .iter()
        .enumerate()
        .map(|(i, t)| {
            if i == 0 {
                "1".to_string()
            } else {
                let images: Vec<&str> = t.iter().map(|&q| m.state_name(q)).collect();
                format!("<{}>", images.join(","))
            }
        })
        .collect();
    Ok(ForestAlgebra {
        alphabet: m.alphabet().clone(),
        h: m.monoid().clone(),
        v: StateMonoid::new_unchecked(names, 0, times),
        action: elements.iter().flatten().copied().collect(),
        inl: inl.iter().map(|t| index[t]).collect(),
        inr: inr.iter().map(|t| index[t]).collect(),
        hom: gens[..m.alphabet().len()]
            .iter()
            .map(|t| index[t])
            .collect(),
        accept: m.accepting().to_vec(),
    })
}

#[cfg(test)]
mod tests;
