use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Separator used when rendering a return symbol paired with the call it pops.
pub const PAIR_SEPARATOR: char = '|';

/// An input token. Non-empty, no whitespace, and never containing `|`
/// (reserved for stack-aware pairs).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        if token.is_empty() {
            return Err(Error::InvalidSymbol(token, "empty token"));
        }
        if token.chars().any(char::is_whitespace) {
            return Err(Error::InvalidSymbol(token, "contains whitespace"));
        }
        if token.contains(PAIR_SEPARATOR) {
            return Err(Error::InvalidSymbol(token, "contains the pair separator `|`"));
        }
        Ok(Symbol(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Symbol::new(s)
    }
}

/// Parses a whitespace-separated word. Panics on invalid tokens, so only for
/// literals in tests and built-in tables.
pub fn word(text: &str) -> Vec<Symbol> {
    text.split_whitespace()
        .map(|t| Symbol::new(t).expect("invalid symbol literal"))
        .collect()
}

/// Which partition of a [`VpaAlphabet`] a symbol belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Internal,
    Call,
    Return,
}

/// Partition of the input symbols into internal, call and return symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VpaAlphabet {
    internal: BTreeSet<Symbol>,
    call: BTreeSet<Symbol>,
    ret: BTreeSet<Symbol>,
}

impl VpaAlphabet {
    pub fn new(
        internal: impl IntoIterator<Item = Symbol>,
        call: impl IntoIterator<Item = Symbol>,
        ret: impl IntoIterator<Item = Symbol>,
    ) -> Result<Self> {
        let alphabet = VpaAlphabet {
            internal: internal.into_iter().collect(),
            call: call.into_iter().collect(),
            ret: ret.into_iter().collect(),
        };
        alphabet.validate()?;
        Ok(alphabet)
    }

    /// Convenience constructor from whitespace-separated token lists.
    pub fn from_tokens(internal: &str, call: &str, ret: &str) -> Result<Self> {
        let parse = |s: &str| -> Result<Vec<Symbol>> {
            s.split_whitespace().map(Symbol::new).collect()
        };
        VpaAlphabet::new(parse(internal)?, parse(call)?, parse(ret)?)
    }

    /// An alphabet without stack symbols.
    pub fn internal_only(internal: impl IntoIterator<Item = Symbol>) -> Self {
        VpaAlphabet {
            internal: internal.into_iter().collect(),
            call: BTreeSet::new(),
            ret: BTreeSet::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let overlaps = [
            ("internal", "call", &self.internal, &self.call),
            ("internal", "return", &self.internal, &self.ret),
            ("call", "return", &self.call, &self.ret),
        ];
        for (a, b, left, right) in overlaps {
            if let Some(s) = left.intersection(right).next() {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol `{s}` is in both the {a} and {b} sets"
                )));
            }
        }
        if self.call.is_empty() != self.ret.is_empty() {
            return Err(Error::InvalidAlphabet(
                "call and return sets must be both empty or both non-empty".into(),
            ));
        }
        Ok(())
    }

    pub fn internal(&self) -> &BTreeSet<Symbol> {
        &self.internal
    }

    pub fn call(&self) -> &BTreeSet<Symbol> {
        &self.call
    }

    pub fn ret(&self) -> &BTreeSet<Symbol> {
        &self.ret
    }

    pub fn kind(&self, symbol: &Symbol) -> Option<SymbolKind> {
        if self.internal.contains(symbol) {
            Some(SymbolKind::Internal)
        } else if self.call.contains(symbol) {
            Some(SymbolKind::Call)
        } else if self.ret.contains(symbol) {
            Some(SymbolKind::Return)
        } else {
            None
        }
    }

    pub fn contains(&self, symbol: &Symbol) -> bool {
        self.kind(symbol).is_some()
    }

    pub fn has_stack(&self) -> bool {
        !self.call.is_empty()
    }

    /// All symbols in token order.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.internal
            .iter()
            .chain(&self.call)
            .chain(&self.ret)
            .cloned()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.internal.len() + self.call.len() + self.ret.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Upper bound on the number of distinct stack-aware symbols:
    /// `|internal| + |call| + |return| * |call|`.
    pub fn stack_aware_bound(&self) -> usize {
        self.internal.len() + self.call.len() + self.ret.len() * self.call.len()
    }

    pub(crate) fn classify(&self, symbol: &Symbol) -> Result<SymbolKind> {
        self.kind(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }
}

/// A symbol of the stack-aware alphabet: internal and call symbols pass
/// through unchanged, return symbols carry the call symbol they pop.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StackAwareSymbol {
    Plain(Symbol),
    ReturnPaired { ret: Symbol, call: Symbol },
}

impl StackAwareSymbol {
    pub fn paired(ret: Symbol, call: Symbol) -> Self {
        StackAwareSymbol::ReturnPaired { ret, call }
    }

    /// The input symbol with the pairing dropped.
    pub fn input_symbol(&self) -> &Symbol {
        match self {
            StackAwareSymbol::Plain(s) => s,
            StackAwareSymbol::ReturnPaired { ret, .. } => ret,
        }
    }
}

impl fmt::Debug for StackAwareSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_string())
    }
}

impl fmt::Display for StackAwareSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StackAwareSymbol::Plain(s) => write!(f, "{s}"),
            StackAwareSymbol::ReturnPaired { ret, call } => {
                write!(f, "{ret}{PAIR_SEPARATOR}{call}")
            }
        }
    }
}

impl FromStr for StackAwareSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(PAIR_SEPARATOR) {
            None => Ok(StackAwareSymbol::Plain(Symbol::new(s)?)),
            Some((ret, call)) => Ok(StackAwareSymbol::ReturnPaired {
                ret: Symbol::new(ret)?,
                call: Symbol::new(call)?,
            }),
        }
    }
}

impl From<Symbol> for StackAwareSymbol {
    fn from(s: Symbol) -> Self {
        StackAwareSymbol::Plain(s)
    }
}
