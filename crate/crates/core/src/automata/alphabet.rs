use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::forest::Symbol;

/// An ordered finite alphabet with constant-time letter lookup.
#[derive(Clone, Debug, Default)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
}

impl Alphabet {
    /// Fails on duplicate letters.
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::AlphabetMismatch(format!("duplicate letter `{s}`")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    pub fn from_strs(names: &[&str]) -> Self {
        Alphabet::new(names.iter().map(|&n| Symbol::new(n)).collect()).expect("distinct letters")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn get(&self, s: &Symbol) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn letter(&self, s: &Symbol) -> Result<usize> {
        self.get(s)
            .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.index.contains_key(s)
    }

    pub fn to_set(&self) -> BTreeSet<Symbol> {
        self.symbols.iter().cloned().collect()
    }

    pub fn same_letters(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.symbols.iter().all(|s| other.contains(s))
    }

    /// Letter map from this alphabet into `other`, which must hold the same letters.
    pub fn align(&self, other: &Alphabet) -> Result<Vec<usize>> {
        if !self.same_letters(other) {
            return Err(Error::AlphabetMismatch(format!(
                "{{{}}} vs {{{}}}",
                self.display_list(),
                other.display_list()
            )));
        }
        Ok(self
            .symbols
            .iter()
            .map(|s| other.get(s).expect("checked"))
            .collect())
    }

    pub fn display_list(&self) -> String {
        self.symbols
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// This alphabet followed by the letters of `extra` not already present.
    pub fn extended(&self, extra: &[Symbol]) -> Alphabet {
        let mut symbols = self.symbols.clone();
        for s in extra {
            if !self.contains(s) && !symbols.contains(s) {
                symbols.push(s.clone());
            }
        }
        Alphabet::new(symbols).expect("deduplicated")
    }

    /// A symbol based on `stem` that is not in this alphabet nor in `avoid`.
    pub fn fresh(&self, stem: &str, avoid: &[Symbol]) -> Symbol {
        let mut name = stem.to_string();
        loop {
            let s = Symbol::new(name.clone());
            if !self.contains(&s) && !avoid.contains(&s) {
                return s;
            }
            name.insert(0, '_');
        }
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}
