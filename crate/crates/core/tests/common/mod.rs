//! Random automata, words and datasets shared by the property suites and the
//! acceptance target. Every case is a pure function of a `u64` seed.

#![allow(dead_code)]

use std::collections::HashMap;

use papni::automata::{Dfa, StackAwareSymbol, Symbol, Vdpa, VdpaEdge, VpaAlphabet};
use papni::{
    dfa_to_vdpa, from_stack_aware, is_well_matched, papni_learn, preprocess_dataset, to_stack_aware, Acceptor,
    Backend, LabeledDataset, PapniConfig,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type CaseResult = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn symbols(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Alphabet with 0..=2 internal symbols and 1..=2 call/return symbols each.
pub fn random_alphabet(rng: &mut ChaCha8Rng) -> VpaAlphabet {
    let i = rng.gen_range(0..=2);
    let k = rng.gen_range(1..=2);
    let r = rng.gen_range(1..=2);
    VpaAlphabet::from_tokens(&symbols("i", i).join(" "), &symbols("c", k).join(" "), &symbols("r", r).join(" "))
        .expect("disjoint")
}

pub fn internal_alphabet(rng: &mut ChaCha8Rng) -> VpaAlphabet {
    let n = rng.gen_range(1..=3);
    VpaAlphabet::from_tokens(&symbols("i", n).join(" "), "", "").expect("valid")
}

/// Uniform word over the whole alphabet.
pub fn random_word(rng: &mut ChaCha8Rng, alphabet: &VpaAlphabet, max_len: usize) -> Vec<Symbol> {
    let all: Vec<Symbol> = alphabet.symbols().into_iter().collect();
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| all.choose(rng).expect("non-empty").clone()).collect()
}

/// Well-matched word built by random insertion of internals, nested pairs
/// and concatenation.
pub fn random_well_matched(rng: &mut ChaCha8Rng, alphabet: &VpaAlphabet, budget: usize) -> Vec<Symbol> {
    let internal: Vec<&Symbol> = alphabet.internal().iter().collect();
    let call: Vec<&Symbol> = alphabet.call().iter().collect();
    let ret: Vec<&Symbol> = alphabet.ret().iter().collect();
    let mut out = Vec::new();
    let mut left = budget;
    while left > 0 {
        let nest = !call.is_empty() && left >= 2 && (internal.is_empty() || rng.gen_bool(0.5));
        if nest {
            let inner = rng.gen_range(0..=(left - 2));
            out.push((*call.choose(rng).unwrap()).clone());
            out.extend(random_well_matched(rng, alphabet, inner));
            out.push((*ret.choose(rng).unwrap()).clone());
            left -= inner + 2;
        } else if !internal.is_empty() {
            out.push((*internal.choose(rng).unwrap()).clone());
            left -= 1;
        } else {
            break;
        }
        if rng.gen_bool(0.3) {
            break;
        }
    }
    out
}

/// Either a well-matched word or a uniform one, roughly half each.
pub fn mixed_word(rng: &mut ChaCha8Rng, alphabet: &VpaAlphabet, max_len: usize) -> Vec<Symbol> {
    if rng.gen_bool(0.5) {
        random_well_matched(rng, alphabet, max_len)
    } else {
        random_word(rng, alphabet, max_len)
    }
}

/// Random VDPA: each possible edge exists with probability `density`.
pub fn random_vdpa(rng: &mut ChaCha8Rng, alphabet: &VpaAlphabet, density: f64) -> Vdpa {
    let n = rng.gen_range(1..=4);
    let mut v = Vdpa::new(n, alphabet.clone()).expect("n > 0");
    let states: Vec<_> = v.states().collect();
    for &q in &states {
        v.set_accepting(q, rng.gen_bool(0.5)).unwrap();
    }
    for &q in &states {
        let to = |rng: &mut ChaCha8Rng| *states.choose(rng).unwrap();
        for s in alphabet.internal() {
            if rng.gen_bool(density) {
                let t = to(rng);
                v.add_edge(q, VdpaEdge::Internal(s.clone()), t).unwrap();
            }
        }
        for s in alphabet.call() {
            if rng.gen_bool(density) {
                let t = to(rng);
                v.add_edge(q, VdpaEdge::Call(s.clone()), t).unwrap();
            }
        }
        for r in alphabet.ret() {
            for c in alphabet.call() {
                if rng.gen_bool(density) {
                    let t = to(rng);
                    v.add_edge(q, VdpaEdge::Return { ret: r.clone(), top: c.clone() }, t).unwrap();
                }
            }
        }
    }
    v
}

/// Every plain and paired symbol of `alphabet` over the stack-aware alphabet.
pub fn stack_aware_symbols(alphabet: &VpaAlphabet) -> Vec<StackAwareSymbol> {
    let mut out: Vec<StackAwareSymbol> =
        alphabet.internal().iter().chain(alphabet.call()).cloned().map(StackAwareSymbol::Plain).collect();
    for r in alphabet.ret() {
        for c in alphabet.call() {
            out.push(StackAwareSymbol::paired(r.clone(), c.clone()));
        }
    }
    out
}

pub fn random_stack_aware_dfa(rng: &mut ChaCha8Rng, alphabet: &VpaAlphabet) -> Dfa<StackAwareSymbol> {
    let syms = stack_aware_symbols(alphabet);
    let n = rng.gen_range(1..=5);
    let mut d = Dfa::new(n, syms.iter().cloned()).expect("n > 0");
    for q in 0..n {
        let q = d.state(q).unwrap();
        d.set_accepting(q, rng.gen_bool(0.5)).unwrap();
        for s in &syms {
            if rng.gen_bool(0.8) {
                let t = d.state(rng.gen_range(0..n)).unwrap();
                d.add_transition(q, s.clone(), t).unwrap();
            }
        }
    }
    d
}

/// Label-consistent dataset: random words with random labels, first label
/// kept on repeats.
pub fn random_dataset(rng: &mut ChaCha8Rng, alphabet: &VpaAlphabet, n: usize, max_len: usize) -> LabeledDataset<Symbol> {
    let mut seen: HashMap<Vec<Symbol>, bool> = HashMap::new();
    let mut pairs = Vec::new();
    for _ in 0..n {
        let w = mixed_word(rng, alphabet, max_len);
        let label = *seen.entry(w.clone()).or_insert_with(|| rng.gen_bool(0.5));
        pairs.push((w, label));
    }
    LabeledDataset::from_pairs(pairs).expect("consistent by construction")
}

fn render(w: &[Symbol]) -> String {
    w.iter().map(Symbol::as_str).collect::<Vec<_>>().join(" ")
}

// ---- property checks, one random case per seed -------------------------------

pub fn accepted_implies_well_matched(seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let alphabet = random_alphabet(&mut rng);
    let vdpa = random_vdpa(&mut rng, &alphabet, 0.8);
    for _ in 0..10 {
        let w = mixed_word(&mut rng, &alphabet, 12);
        if vdpa.accepts(&w).unwrap() && !is_well_matched(&w, &alphabet).unwrap() {
            return Err(format!("accepted but not well-matched: {}", render(&w)));
        }
    }
    Ok(())
}

pub fn transform_round_trip_and_injective(seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let alphabet = random_alphabet(&mut rng);
    let a = random_well_matched(&mut rng, &alphabet, 14);
    let b = random_well_matched(&mut rng, &alphabet, 14);
    let (ta, tb) = (to_stack_aware(&a, &alphabet).unwrap(), to_stack_aware(&b, &alphabet).unwrap());
    if from_stack_aware(&ta) != a {
        return Err(format!("round trip failed on {}", render(&a)));
    }
    if ta.len() != a.len() {
        return Err("transform changed the length".into());
    }
    if a != b && ta == tb {
        return Err(format!("collision: {} / {}", render(&a), render(&b)));
    }
    Ok(())
}

pub fn lifting_preserves_verdicts(seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let alphabet = random_alphabet(&mut rng);
    let dfa = random_stack_aware_dfa(&mut rng, &alphabet);
    let vdpa = dfa_to_vdpa(&dfa, &alphabet).map_err(|e| e.to_string())?;
    for _ in 0..10 {
        let w = random_well_matched(&mut rng, &alphabet, 12);
        let t = to_stack_aware(&w, &alphabet).unwrap();
        if dfa.accepts(&t).unwrap() != vdpa.accepts(&w).unwrap() {
            return Err(format!("verdicts differ on {}", render(&w)));
        }
    }
    Ok(())
}

pub fn training_consistency(seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let alphabet = random_alphabet(&mut rng);
    let data = random_dataset(&mut rng, &alphabet, 12, 8);
    for backend in [Backend::Rpni, Backend::Edsm] {
        let dfa = backend.learn(&data).map_err(|e| e.to_string())?;
        for s in &data {
            if dfa.classify(&s.word) != s.label {
                return Err(format!("{} misclassifies training word {}", backend.name(), render(&s.word)));
            }
        }
        let cfg = PapniConfig { backend, report_dropped: false };
        match papni_learn(&data, &alphabet, cfg) {
            Ok((vdpa, _)) => {
                for s in &data {
                    if is_well_matched(&s.word, &alphabet).unwrap() && vdpa.classify(&s.word) != s.label {
                        return Err(format!("papni/{} misclassifies {}", backend.name(), render(&s.word)));
                    }
                }
            }
            Err(papni::Error::NoWellMatchedSamples) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(())
}

pub fn degenerate_alphabet_agreement(seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let alphabet = internal_alphabet(&mut rng);
    let train = random_dataset(&mut rng, &alphabet, 10, 6);
    let probes: Vec<Vec<Symbol>> = (0..20).map(|_| random_word(&mut rng, &alphabet, 8)).collect();
    for backend in [Backend::Rpni, Backend::Edsm] {
        let dfa = backend.learn(&train).map_err(|e| e.to_string())?;
        let cfg = PapniConfig { backend, report_dropped: false };
        let (vdpa, report) = papni_learn(&train, &alphabet, cfg).map_err(|e| e.to_string())?;
        if report.dropped() != 0 {
            return Err("internal-only words were dropped".into());
        }
        for w in train.iter().map(|s| &s.word).chain(&probes) {
            if dfa.classify(w) != vdpa.classify(w) {
                return Err(format!("{}: learners disagree on {}", backend.name(), render(w)));
            }
        }
    }
    Ok(())
}

pub fn alphabet_bound(seed: u64) -> CaseResult {
    let mut rng = rng(seed);
    let alphabet = random_alphabet(&mut rng);
    let data = random_dataset(&mut rng, &alphabet, 30, 14);
    let (_, report) = preprocess_dataset(&data, &alphabet).unwrap();
    let bound = alphabet.internal().len() + alphabet.call().len() + alphabet.ret().len() * alphabet.call().len();
    if report.bound != bound || report.observed.len() > bound {
        return Err(format!("observed {} > bound {}", report.observed.len(), bound));
    }
    Ok(())
}

/// Runs `check` on seeds `0..cases`, reporting the first failure.
pub fn run_cases(cases: u64, check: fn(u64) -> CaseResult) -> CaseResult {
    for seed in 0..cases {
        check(seed).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    Ok(())
}
