//! Graphviz export.

use std::fmt::{Display, Write as _};

use super::dfa::{Dfa, StateId};
use super::symbol::{StackAwareSymbol, Symbol};
use super::vdpa::{Vdpa, VdpaEdge};

/// Edge label of a DFA symbol.
pub trait DotLabel {
    fn dot_label(&self) -> String;
}

impl DotLabel for Symbol {
    fn dot_label(&self) -> String {
        self.to_string()
    }
}

impl DotLabel for StackAwareSymbol {
    fn dot_label(&self) -> String {
        match self {
            StackAwareSymbol::Plain(s) => s.to_string(),
            StackAwareSymbol::ReturnPaired { ret, call } => format!("{ret} / pop({call})"),
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn header(out: &mut String, order: &[StateId], initial: StateId, accepting: impl Fn(StateId) -> bool) -> Vec<String> {
    let mut names = vec![String::new(); order.len()];
    for (i, q) in order.iter().enumerate() {
        names[q.index()] = format!("s{i}");
    }
    out.push_str("digraph automaton {\n    rankdir=LR;\n");
    out.push_str("    __start [shape=none, label=\"\"];\n");
    for q in order {
        let shape = if accepting(*q) { "doublecircle" } else { "circle" };
        let name = &names[q.index()];
        writeln!(out, "    {name} [shape={shape}, label=\"{name}\"];").unwrap();
    }
    writeln!(out, "    __start -> {};", names[initial.index()]).unwrap();
    names
}

fn edge(out: &mut String, from: &str, to: &str, label: &str) {
    writeln!(out, "    {from} -> {to} [label=\"{}\"];", escape(label)).unwrap();
}

pub fn dfa_to_dot<S: Ord + Clone + Display + DotLabel>(dfa: &Dfa<S>) -> String {
    let mut out = String::new();
    let order = dfa.canonical_order();
    let names = header(&mut out, &order, dfa.initial(), |q| dfa.is_accepting(q));
    for &q in &order {
        for (s, to) in dfa.outgoing(q) {
            edge(&mut out, &names[q.index()], &names[to.index()], &s.dot_label());
        }
    }
    out.push_str("}\n");
    out
}

pub fn vdpa_to_dot(vdpa: &Vdpa) -> String {
    let mut out = String::new();
    let order = vdpa.canonical_order();
    let names = header(&mut out, &order, vdpa.initial(), |q| vdpa.is_accepting(q));
    let edges = vdpa.edges();
    for &q in &order {
        for (_, e, to) in edges.iter().filter(|(from, _, _)| *from == q) {
            let label = match e {
                VdpaEdge::Internal(s) => s.to_string(),
                VdpaEdge::Call(s) => format!("{s} / push({s})"),
                VdpaEdge::Return { ret, top } => format!("{ret} / pop({top})"),
            };
            edge(&mut out, &names[q.index()], &names[to.index()], &label);
        }
    }
    out.push_str("}\n");
    out
}
