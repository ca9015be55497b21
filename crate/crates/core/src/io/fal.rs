use std::fmt::Write as _;
use std::path::Path;

use super::{check_arity, lex, located, lookup, quote_name, symbol, Line};
use crate::algebra::{ForestAlgebra, RawAlgebra};
use crate::automata::Alphabet;
use crate::error::{Diagnostic, Result};

/// Parse a `.fal` text. `path` only labels diagnostics.
pub fn parse_fal(text: &str, path: Option<&Path>) -> Result<ForestAlgebra> {
    let lines = lex(text).map_err(|d| located(d, path))?;
    let mut diags = Vec::new();
    if let Some(raw) = read_raw(&lines, &mut diags) {
        if diags.is_empty() {
            let mut d = raw.validate();
            if d.is_empty() {
                return raw.build();
            }
            diags.append(&mut d);
        }
    }
    Err(located(diags, path))
}

fn names(line: &Line, what: &str, diags: &mut Vec<Diagnostic>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for t in line.args() {
        if out.contains(&t.text) {
            diags.push(line.diag(format!("duplicate {what} element `{}`", t.text)));
        } else {
            out.push(t.text.clone());
        }
    }
    if out.is_empty() {
        diags.push(line.diag(format!("{what} has no elements")));
    }
    out
}

fn read_raw(lines: &[Line], diags: &mut Vec<Diagnostic>) -> Option<RawAlgebra> {
    let mut alphabet = None;
    let mut h = None;
    let mut v = None;
    for line in lines {
        match line.keyword() {
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
            "H:" => {
                if h.is_some() {
                    diags.push(line.diag("duplicate `H:` line"));
                } else {
                    h = Some(names(line, "H", diags));
                }
            }
            "V:" => {
                if v.is_some() {
                    diags.push(line.diag("duplicate `V:` line"));
                } else {
                    v = Some(names(line, "V", diags));
                }
            }
            "neutralH" | "neutralV" | "plusH" | "timesV" | "action" | "inl" | "inr" | "hom"
            | "accept" => {}
            other => diags.push(line.diag(format!("unknown keyword `{other}`"))),
        }
    }
    for (what, missing) in [
        ("alphabet", alphabet.is_none()),
        ("H:", h.is_none()),
        ("V:", v.is_none()),
    ] {
        if missing {
            diags.push(Diagnostic::new(format!("missing `{what}` line")));
        }
    }
    let (alphabet, h, v) = (alphabet?, h?, v?);
    let letters: Vec<String> = alphabet.iter().map(|s| s.as_str().to_string()).collect();
    let alphabet = Alphabet::new(alphabet).ok()?;
    let (nh, nv) = (h.len(), v.len());
    let mut raw = RawAlgebra {
        alphabet,
        h_names: h,
        h_neutral: None,
        plus_h: vec![None; nh * nh],
        v_names: v,
        v_neutral: None,
        times_v: vec![None; nv * nv],
        action: vec![None; nv * nh],
        inl: vec![None; nh],
        inr: vec![None; nh],
        hom: vec![None; letters.len()],
        accept: Vec::new(),
    };
    let (h_names, v_names) = (raw.h_names.clone(), raw.v_names.clone());
    for line in lines {
        let result: Result<(), Diagnostic> = (|| {
            let a = line.args();
            let hh = |t| lookup(line, "H element", &h_names, t);
            let vv = |t| lookup(line, "V element", &v_names, t);
            let (slot, value) = match line.keyword() {
                "neutralH" | "neutralV" => {
                    check_arity(line, 1)?;
                    let (slot, x) = if line.keyword() == "neutralH" {
                        let x = hh(&a[0])?;
                        (&mut raw.h_neutral, x)
                    } else {
                        let x = vv(&a[0])?;
                        (&mut raw.v_neutral, x)
                    };
                    if slot.is_some() {
                        return Err(line.diag(format!("duplicate `{}` line", line.keyword())));
                    }
                    *slot = Some(x);
                    return Ok(());
                }
                "plusH" => {
                    check_arity(line, 3)?;
                    let k = hh(&a[0])? * nh + hh(&a[1])?;
                    let x = hh(&a[2])?;
                    (&mut raw.plus_h[k], x)
                }
                "timesV" => {
                    check_arity(line, 3)?;
                    let k = vv(&a[0])? * nv + vv(&a[1])?;
                    let x = vv(&a[2])?;
                    (&mut raw.times_v[k], x)
                }
                "action" => {
                    check_arity(line, 3)?;
                    let k = vv(&a[0])? * nh + hh(&a[1])?;
                    let x = hh(&a[2])?;
                    (&mut raw.action[k], x)
                }
                "inl" => {
                    check_arity(line, 2)?;
                    let x = vv(&a[1])?;
                    (&mut raw.inl[hh(&a[0])?], x)
                }
                "inr" => {
                    check_arity(line, 2)?;
                    let x = vv(&a[1])?;
                    (&mut raw.inr[hh(&a[0])?], x)
                }
                "hom" => {
                    check_arity(line, 2)?;
                    let s = symbol(line, &a[0])?;
                    let l = letters
                        .iter()
                        .position(|x| x == s.as_str())
                        .ok_or_else(|| line.diag(format!("unknown letter `{s}`")))?;
                    let x = vv(&a[1])?;
                    (&mut raw.hom[l], x)
                }
                "accept" => {
                    for t in a {
                        let x = hh(t)?;
                        if raw.accept.contains(&x) {
                            return Err(line.diag(format!("`{}` accepted twice", t.text)));
                        }
                        raw.accept.push(x);
                    }
                    return Ok(());
                }
                _ => return Ok(()),
            };
            if slot.is_some() {
                return Err(line.diag(format!("duplicate `{}` entry", line.keyword())));
            }
            *slot = Some(value);
            Ok(())
        })();
        if let Err(d) = result {
            diags.push(d);
        }
    }
    Some(raw)
}

pub fn write_fal(alg: &ForestAlgebra) -> String {
    let raw = alg.to_raw();
    let hn = |i: usize| quote_name(&raw.h_names[i]);
    let vn = |i: usize| quote_name(&raw.v_names[i]);
    let (nh, nv) = (raw.h_names.len(), raw.v_names.len());
    let get = |t: &[Option<usize>], k: usize| t[k].expect("valid algebra");
    let mut out = String::new();
    let letters: Vec<String> = raw
        .alphabet
        .symbols()
        .iter()
        .map(ToString::to_string)
        .collect();
    let _ = writeln!(out, "alphabet {}", letters.join(" "));
    let _ = writeln!(out, "H: {}", (0..nh).map(hn).collect::<Vec<_>>().join(" "));
    let _ = writeln!(
        out,
        "neutralH {}",
        hn(raw.h_neutral.expect("valid algebra"))
    );
    for k in 0..nh * nh {
        let _ = writeln!(
            out,
            "plusH {} {} {}",
            hn(k / nh),
            hn(k % nh),
            hn(get(&raw.plus_h, k))
        );
    }
    let _ = writeln!(out, "V: {}", (0..nv).map(vn).collect::<Vec<_>>().join(" "));
    let _ = writeln!(
        out,
        "neutralV {}",
        vn(raw.v_neutral.expect("valid algebra"))
    );
    for k in 0..nv * nv {
        let _ = writeln!(
            out,
            "timesV {} {} {}",
            vn(k / nv),
            vn(k % nv),
            vn(get(&raw.times_v, k))
        );
    }
    for k in 0..nv * nh {
        let _ = writeln!(
            out,
            "action {} {} {}",
            vn(k / nh),
            hn(k % nh),
            hn(get(&raw.action, k))
        );
    }
    for g in 0..nh {
        let _ = writeln!(out, "inl {} {}", hn(g), vn(get(&raw.inl, g)));
    }
    for g in 0..nh {
        let _ = writeln!(out, "inr {} {}", hn(g), vn(get(&raw.inr, g)));
    }
    for (a, l) in letters.iter().enumerate() {
        let _ = writeln!(out, "hom {l} {}", vn(get(&raw.hom, a)));
    }
    let accept: Vec<String> = raw.accept.iter().map(|&h| hn(h)).collect();
    let _ = writeln!(out, "accept {}", accept.join(" "));
    out.replace(" \n", "\n")
}
