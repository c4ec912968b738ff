//! Line-oriented textual automaton format.
//!
//! ```text
//! vdpa
//! internal: 1 +
//! call: (
//! return: )
//! states: s0 s1
//! initial: s0
//! accepting: s1
//! s0 ( push -> s0
//! s0 1 -> s1
//! s1 ) pop ( -> s1
//! s1 + -> s0
//! ```
//!
//! DFAs use the header `dfa`, an optional `alphabet:` line and only
//! `from symbol -> to` transitions. Alphabet lines are optional; symbols
//! used by transitions are added to the alphabet implicitly. An optional
//! `states:` line declares states up front, so that isolated states survive
//! and numbering is stable. States are renamed `s0, s1, ...` in
//! breadth-first order on output.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{Display, Write as _};
use std::str::FromStr;

use super::dfa::{Dfa, StateId};
use super::equivalence::Acceptor;
use super::symbol::{Symbol, VpaAlphabet};
use super::vdpa::{Vdpa, VdpaEdge};
use crate::error::{Error, Result};

fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let mut out = String::new();
    for item in items {
        write!(out, " {item}").unwrap();
    }
    out
}

fn state_names(order: &[StateId], size: usize) -> Vec<String> {
    let mut names = vec![String::new(); size];
    for (i, q) in order.iter().enumerate() {
        names[q.index()] = format!("s{i}");
    }
    names
}

pub fn write_dfa<S: Ord + Clone + Display>(dfa: &Dfa<S>) -> String {
    let order = dfa.canonical_order();
    let names = state_names(&order, dfa.size());
    let mut out = String::from("dfa\n");
    writeln!(out, "alphabet:{}", join(dfa.alphabet())).unwrap();
    writeln!(out, "states:{}", join(order.iter().map(|q| &names[q.index()]))).unwrap();
    writeln!(out, "initial: {}", names[dfa.initial().index()]).unwrap();
    let accepting = order.iter().filter(|q| dfa.is_accepting(**q)).map(|q| &names[q.index()]);
    writeln!(out, "accepting:{}", join(accepting)).unwrap();
    for &q in &order {
        for (s, to) in dfa.outgoing(q) {
            writeln!(out, "{} {s} -> {}", names[q.index()], names[to.index()]).unwrap();
        }
    }
    out
}

pub fn write_vdpa(vdpa: &Vdpa) -> String {
    let order = vdpa.canonical_order();
    let names = state_names(&order, vdpa.size());
    let alphabet = vdpa.alphabet();
    let mut out = String::from("vdpa\n");
    writeln!(out, "internal:{}", join(alphabet.internal())).unwrap();
    writeln!(out, "call:{}", join(alphabet.call())).unwrap();
    writeln!(out, "return:{}", join(alphabet.ret())).unwrap();
    writeln!(out, "states:{}", join(order.iter().map(|q| &names[q.index()]))).unwrap();
    writeln!(out, "initial: {}", names[vdpa.initial().index()]).unwrap();
    let accepting = order.iter().filter(|q| vdpa.is_accepting(**q)).map(|q| &names[q.index()]);
    writeln!(out, "accepting:{}", join(accepting)).unwrap();
    let edges = vdpa.edges();
    for &q in &order {
        for (_, edge, to) in edges.iter().filter(|(from, _, _)| *from == q) {
            let from = &names[q.index()];
            let to = &names[to.index()];
            match edge {
                VdpaEdge::Internal(s) => writeln!(out, "{from} {s} -> {to}"),
                VdpaEdge::Call(s) => writeln!(out, "{from} {s} push -> {to}"),
                VdpaEdge::Return { ret, top } => writeln!(out, "{from} {ret} pop {top} -> {to}"),
            }
            .unwrap();
        }
    }
    out
}

/// Content lines with their 1-based line numbers; comments and blanks dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

struct StateTable {
    index: BTreeMap<String, usize>,
}

impl StateTable {
    fn new() -> Self {
        StateTable { index: BTreeMap::new() }
    }

    fn id(&mut self, name: &str) -> usize {
        let next = self.index.len();
        *self.index.entry(name.to_string()).or_insert(next)
    }

    fn len(&self) -> usize {
        self.index.len()
    }
}

enum Line<'a> {
    Keyed(&'a str, Vec<&'a str>),
    Transition(Vec<&'a str>),
}

fn classify_line(line: &str) -> Line<'_> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if let Some(key) = tokens[0].strip_suffix(':') {
        Line::Keyed(key, tokens[1..].to_vec())
    } else {
        Line::Transition(tokens)
    }
}

/// Splits `from ... -> to`, returning `(from, middle, to)`.
fn split_arrow<'a>(line: usize, tokens: &[&'a str]) -> Result<(&'a str, Vec<&'a str>, &'a str)> {
    let n = tokens.len();
    if n < 4 || tokens[n - 2] != "->" {
        return Err(Error::parse(line, "expected `from symbol ... -> to`"));
    }
    Ok((tokens[0], tokens[1..n - 2].to_vec(), tokens[n - 1]))
}

fn expect_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    header: &str,
) -> Result<()> {
    match lines.next() {
        Some((_, l)) if l == header => Ok(()),
        Some((n, l)) => Err(Error::parse(n, format!("expected header `{header}`, found `{l}`"))),
        None => Err(Error::parse(0, "empty automaton file")),
    }
}

fn single_state<'a>(line: usize, values: &[&'a str]) -> Result<&'a str> {
    match values {
        [one] => Ok(one),
        _ => Err(Error::parse(line, "`initial:` takes exactly one state")),
    }
}

fn with_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    })
}

pub fn parse_dfa<S>(text: &str) -> Result<Dfa<S>>
where
    S: Ord + Clone + Display + FromStr<Err = Error>,
{
    let mut lines = content_lines(text);
    expect_header(&mut lines, "dfa")?;
    let mut states = StateTable::new();
    let mut alphabet = BTreeSet::new();
    let mut initial = None;
    let mut accepting = Vec::new();
    let mut transitions = Vec::new();
    for (n, line) in lines {
        match classify_line(line) {
            Line::Keyed("alphabet", vals) => {
                for v in vals {
                    alphabet.insert(with_line(n, v.parse::<S>())?);
                }
            }
            Line::Keyed("states", vals) => vals.iter().for_each(|v| {
                states.id(v);
            }),
            Line::Keyed("initial", vals) => initial = Some(states.id(single_state(n, &vals)?)),
            Line::Keyed("accepting", vals) => accepting.extend(vals.iter().map(|v| states.id(v))),
            Line::Keyed(key, _) => return Err(Error::parse(n, format!("unknown key `{key}:`"))),
            Line::Transition(tokens) => {
                let (from, mid, to) = split_arrow(n, &tokens)?;
                let [symbol] = mid[..] else {
                    return Err(Error::parse(n, "DFA transitions are `from symbol -> to`"));
                };
                let symbol = with_line(n, symbol.parse::<S>())?;
                alphabet.insert(symbol.clone());
                transitions.push((n, states.id(from), symbol, states.id(to)));
            }
        }
    }
    let initial = initial.ok_or_else(|| Error::parse(0, "missing `initial:` line"))?;
    let mut dfa = Dfa::new(states.len(), alphabet)?;
    dfa.set_initial(dfa.state(initial)?)?;
    for q in accepting {
        dfa.set_accepting(dfa.state(q)?, true)?;
    }
    for (n, from, symbol, to) in transitions {
        let (from, to) = (dfa.state(from)?, dfa.state(to)?);
        with_line(n, dfa.add_transition(from, symbol, to))?;
    }
    Ok(dfa)
}

pub fn parse_vdpa(text: &str) -> Result<Vdpa> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "vdpa")?;
    let mut states = StateTable::new();
    let (mut internal, mut call, mut ret) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
    let mut initial = None;
    let mut accepting = Vec::new();
    let mut edges = Vec::new();
    let sym = |n: usize, t: &str| with_line(n, Symbol::new(t));
    for (n, line) in lines {
        match classify_line(line) {
            Line::Keyed(key @ ("internal" | "call" | "return"), vals) => {
                let set = match key {
                    "internal" => &mut internal,
                    "call" => &mut call,
                    _ => &mut ret,
                };
                for v in vals {
                    set.insert(sym(n, v)?);
                }
            }
            Line::Keyed("states", vals) => vals.iter().for_each(|v| {
                states.id(v);
            }),
            Line::Keyed("initial", vals) => initial = Some(states.id(single_state(n, &vals)?)),
            Line::Keyed("accepting", vals) => accepting.extend(vals.iter().map(|v| states.id(v))),
            Line::Keyed(key, _) => return Err(Error::parse(n, format!("unknown key `{key}:`"))),
            Line::Transition(tokens) => {
                let (from, mid, to) = split_arrow(n, &tokens)?;
                let edge = match mid[..] {
                    [s] => {
                        let s = sym(n, s)?;
                        internal.insert(s.clone());
                        VdpaEdge::Internal(s)
                    }
                    [s, "push"] => {
                        let s = sym(n, s)?;
                        call.insert(s.clone());
                        VdpaEdge::Call(s)
                    }
                    [r, "pop", top] => {
                        let (r, top) = (sym(n, r)?, sym(n, top)?);
                        ret.insert(r.clone());
                        call.insert(top.clone());
                        VdpaEdge::Return { ret: r, top }
                    }
                    _ => {
                        return Err(Error::parse(
                            n,
                            "expected `from s -> to`, `from s push -> to` or `from r pop c -> to`",
                        ))
                    }
                };
                edges.push((n, states.id(from), edge, states.id(to)));
            }
        }
    }
    let initial = initial.ok_or_else(|| Error::parse(0, "missing `initial:` line"))?;
    let alphabet = VpaAlphabet::new(internal, call, ret)?;
    let mut vdpa = Vdpa::new(states.len(), alphabet)?;
    vdpa.set_initial(vdpa.state(initial)?)?;
    for q in accepting {
        vdpa.set_accepting(vdpa.state(q)?, true)?;
    }
    for (n, from, edge, to) in edges {
        let (from, to) = (vdpa.state(from)?, vdpa.state(to)?);
        with_line(n, vdpa.add_edge(from, edge, to))?;
    }
    Ok(vdpa)
}

/// A model read from disk: either automaton kind over plain input symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Dfa(Dfa<Symbol>),
    Vdpa(Vdpa),
}

impl Model {
    pub fn parse(text: &str) -> Result<Model> {
        match content_lines(text).next() {
            Some((_, "dfa")) => parse_dfa(text).map(Model::Dfa),
            Some((_, "vdpa")) => parse_vdpa(text).map(Model::Vdpa),
            Some((n, other)) => Err(Error::parse(n, format!("unknown automaton header `{other}`"))),
            None => Err(Error::parse(0, "empty automaton file")),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Model::Dfa(d) => write_dfa(d),
            Model::Vdpa(v) => write_vdpa(v),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Model::Dfa(d) => d.size(),
            Model::Vdpa(v) => v.size(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModelConfig {
    Dfa(<Dfa<Symbol> as Acceptor>::Config),
    Vdpa(<Vdpa as Acceptor>::Config),
}

impl Acceptor for Model {
    type Config = ModelConfig;

    fn input_symbols(&self) -> BTreeSet<Symbol> {
        match self {
            Model::Dfa(d) => d.input_symbols(),
            Model::Vdpa(v) => v.input_symbols(),
        }
    }

    fn start(&self) -> ModelConfig {
        match self {
            Model::Dfa(d) => ModelConfig::Dfa(d.start()),
            Model::Vdpa(v) => ModelConfig::Vdpa(v.start()),
        }
    }

    fn advance(&self, config: &ModelConfig, symbol: &Symbol) -> Option<ModelConfig> {
        match (self, config) {
            (Model::Dfa(d), ModelConfig::Dfa(c)) => d.advance(c, symbol).map(ModelConfig::Dfa),
            (Model::Vdpa(v), ModelConfig::Vdpa(c)) => v.advance(c, symbol).map(ModelConfig::Vdpa),
            _ => None,
        }
    }

    fn is_final(&self, config: &ModelConfig) -> bool {
        match (self, config) {
            (Model::Dfa(d), ModelConfig::Dfa(c)) => d.is_final(c),
            (Model::Vdpa(v), ModelConfig::Vdpa(c)) => v.is_final(c),
            _ => false,
        }
    }

    fn num_states(&self) -> usize {
        self.size()
    }
}
