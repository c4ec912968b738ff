//! Built-in ground-truth languages.

use crate::automata::{parse_vdpa, Vdpa, VpaAlphabet};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct GroundTruth {
    pub name: String,
    pub vdpa: Vdpa,
}

impl GroundTruth {
    pub fn new(name: impl Into<String>, vdpa: Vdpa) -> Self {
        GroundTruth { name: name.into(), vdpa }
    }

    pub fn alphabet(&self) -> &VpaAlphabet {
        self.vdpa.alphabet()
    }
}

pub const BUILTIN_NAMES: [&str; 8] = [
    "balanced_parens",
    "arithmetic_expr",
    "anbn",
    "dyck1",
    "dyck2",
    "dyck1_even",
    "dyck1_odd",
    "nested_xml_tags",
];

// (^n )^n for n >= 1, with s2 as the sink for a call after a return.
const BALANCED_PARENS: &str = "\
vdpa
internal:
call: (
return: )
initial: s0
accepting: s1
s0 ( push -> s0
s0 ) pop ( -> s1
s1 ) pop ( -> s1
s1 ( push -> s2
s2 ( push -> s2
s2 ) pop ( -> s2
";

const ARITHMETIC_EXPR: &str = "\
vdpa
internal: 1 +
call: (
return: )
initial: s0
accepting: s1
s0 ( push -> s0
s0 1 -> s1
s1 ) pop ( -> s1
s1 + -> s0
";

const ANBN: &str = "\
vdpa
internal:
call: a
return: b
initial: s0
accepting: s1
s0 a push -> s0
s0 b pop a -> s1
s1 b pop a -> s1
";

const DYCK1: &str = "\
vdpa
internal:
call: (
return: )
initial: s0
accepting: s0
s0 ( push -> s0
s0 ) pop ( -> s0
";

const DYCK2: &str = "\
vdpa
internal:
call: ( [
return: ) ]
initial: s0
accepting: s0
s0 ( push -> s0
s0 [ push -> s0
s0 ) pop ( -> s0
s0 ] pop [ -> s0
";

// Parity of the number of bracket pairs, flipped on every call.
const DYCK1_PARITY: &str = "\
vdpa
internal:
call: (
return: )
initial: s0
accepting: {accepting}
s0 ( push -> s1
s1 ( push -> s0
s0 ) pop ( -> s0
s1 ) pop ( -> s1
";

// Properly nested <a>/<b> elements with text content.
const NESTED_XML_TAGS: &str = "\
vdpa
internal: text
call: <a> <b>
return: </a> </b>
initial: s0
accepting: s0
s0 text -> s0
s0 <a> push -> s0
s0 <b> push -> s0
s0 </a> pop <a> -> s0
s0 </b> pop <b> -> s0
";

fn parse(text: &str) -> Vdpa {
    parse_vdpa(text).expect("built-in automaton is well-formed")
}

pub fn balanced_parens() -> Vdpa {
    parse(BALANCED_PARENS)
}

pub fn arithmetic_expr() -> Vdpa {
    parse(ARITHMETIC_EXPR)
}

pub fn anbn() -> Vdpa {
    parse(ANBN)
}

pub fn dyck1() -> Vdpa {
    parse(DYCK1)
}

pub fn dyck2() -> Vdpa {
    parse(DYCK2)
}

pub fn dyck1_even() -> Vdpa {
    parse(&DYCK1_PARITY.replace("{accepting}", "s0"))
}

pub fn dyck1_odd() -> Vdpa {
    parse(&DYCK1_PARITY.replace("{accepting}", "s1"))
}

pub fn nested_xml_tags() -> Vdpa {
    parse(NESTED_XML_TAGS)
}

pub fn builtin(name: &str) -> Result<GroundTruth> {
    let vdpa = match name {
        "balanced_parens" => balanced_parens(),
        "arithmetic_expr" => arithmetic_expr(),
        "anbn" => anbn(),
        "dyck1" => dyck1(),
        "dyck2" => dyck2(),
        "dyck1_even" => dyck1_even(),
        "dyck1_odd" => dyck1_odd(),
        "nested_xml_tags" => nested_xml_tags(),
        other => return Err(Error::UnknownGrammar(other.to_string())),
    };
    Ok(GroundTruth::new(name, vdpa))
}
