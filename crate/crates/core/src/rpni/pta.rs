use std::collections::BTreeSet;
use std::fmt::Display;
use std::hash::Hash;

use crate::dataset::{render_word, LabeledDataset};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeLabel {
    Accepting,
    Rejecting,
    Unknown,
}

impl NodeLabel {
    fn from_bool(label: bool) -> Self {
        if label {
            NodeLabel::Accepting
        } else {
            NodeLabel::Rejecting
        }
    }

    pub fn is_known(self) -> bool {
        self != NodeLabel::Unknown
    }

    /// Combined label of two merged nodes, `None` on an accept/reject clash.
    pub fn join(self, other: NodeLabel) -> Option<NodeLabel> {
        match (self, other) {
            (NodeLabel::Unknown, x) | (x, NodeLabel::Unknown) => Some(x),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }
}

/// Prefix tree acceptor.
///
/// Node ids follow the shortlex order of access strings (root first), and
/// symbols are interned as indices into the sorted alphabet.
#[derive(Clone, Debug)]
pub struct Pta<S> {
    symbols: Vec<S>,
    children: Vec<Vec<(u32, NodeId)>>,
    parent: Vec<Option<(NodeId, u32)>>,
    labels: Vec<NodeLabel>,
}

impl<S: Ord + Clone + Eq + Hash + Display> Pta<S> {
    pub fn build(dataset: &LabeledDataset<S>) -> Result<Self> {
        let symbols: Vec<S> = dataset
            .iter()
            .flat_map(|s| s.word.iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let intern = |s: &S| symbols.binary_search(s).expect("symbol collected above") as u32;

        // Insertion-order trie first, renumbered breadth-first afterwards.
        let mut children: Vec<Vec<(u32, u32)>> = vec![Vec::new()];
        let mut labels = vec![NodeLabel::Unknown];
        for sample in dataset {
            let mut node = 0usize;
            for s in &sample.word {
                let sym = intern(s);
                node = match children[node].iter().find(|(k, _)| *k == sym) {
                    Some(&(_, c)) => c as usize,
                    None => {
                        let c = labels.len();
                        children[node].push((sym, c as u32));
                        children.push(Vec::new());
                        labels.push(NodeLabel::Unknown);
                        c
                    }
                };
            }
            let label = NodeLabel::from_bool(sample.label);
            match labels[node].join(label) {
                Some(l) => labels[node] = l,
                None => return Err(Error::LabelConflict(render_word(&sample.word))),
            }
        }

        let n = labels.len();
        let mut order = Vec::with_capacity(n);
        let mut new_id = vec![0u32; n];
        order.push(0usize);
        let mut head = 0;
        while head < order.len() {
            let node = order[head];
            head += 1;
            children[node].sort_unstable();
            for &(_, c) in &children[node] {
                new_id[c as usize] = order.len() as u32;
                order.push(c as usize);
            }
        }

        let mut pta = Pta {
            symbols,
            children: vec![Vec::new(); n],
            parent: vec![None; n],
            labels: vec![NodeLabel::Unknown; n],
        };
        for (new, &old) in order.iter().enumerate() {
            pta.labels[new] = labels[old];
            pta.children[new] = children[old]
                .iter()
                .map(|&(sym, c)| (sym, NodeId(new_id[c as usize])))
                .collect();
            for &(sym, c) in &pta.children[new] {
                pta.parent[c.index()] = Some((NodeId(new as u32), sym));
            }
        }
        Ok(pta)
    }
}

impl<S> Pta<S> {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> NodeId {
        NodeId::ROOT
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.len() as u32).map(NodeId)
    }

    pub fn label(&self, node: NodeId) -> NodeLabel {
        self.labels[node.index()]
    }

    pub fn symbols(&self) -> &[S] {
        &self.symbols
    }

    pub fn symbol(&self, id: u32) -> &S {
        &self.symbols[id as usize]
    }

    pub(crate) fn child_ids(&self, node: NodeId) -> &[(u32, NodeId)] {
        &self.children[node.index()]
    }

    /// Children of `node` in symbol order.
    pub fn children(&self, node: NodeId) -> impl Iterator<Item = (&S, NodeId)> {
        self.children[node.index()].iter().map(|&(s, c)| (&self.symbols[s as usize], c))
    }

    pub fn parent(&self, node: NodeId) -> Option<NodeId> {
        self.parent[node.index()].map(|(p, _)| p)
    }

    pub fn child(&self, node: NodeId, symbol: &S) -> Option<NodeId>
    where
        S: Ord,
    {
        let sym = self.symbols.binary_search(symbol).ok()? as u32;
        self.children[node.index()]
            .iter()
            .find(|(k, _)| *k == sym)
            .map(|&(_, c)| c)
    }

    /// Node reached by `word`, if the tree spans it.
    pub fn walk(&self, word: &[S]) -> Option<NodeId>
    where
        S: Ord,
    {
        word.iter().try_fold(self.root(), |n, s| self.child(n, s))
    }

    pub fn access_string(&self, node: NodeId) -> Vec<&S> {
        let mut out = Vec::new();
        let mut cur = node;
        while let Some((p, sym)) = self.parent[cur.index()] {
            out.push(&self.symbols[sym as usize]);
            cur = p;
        }
        out.reverse();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{word, StackAwareSymbol, Symbol};
    use crate::bench::worked_example;
    use crate::preprocessing::preprocess_dataset;

    fn distinct_prefixes<S: Clone + Eq + Hash>(d: &LabeledDataset<S>) -> usize {
        let mut set = std::collections::HashSet::new();
        for s in d {
            for i in 0..=s.word.len() {
                set.insert(s.word[..i].to_vec());
            }
        }
        set.len().max(1)
    }

    #[test]
    fn empty_dataset_is_a_single_unknown_root() {
        let pta = Pta::<Symbol>::build(&LabeledDataset::default()).unwrap();
        assert_eq!(pta.len(), 1);
        assert_eq!(pta.label(pta.root()), NodeLabel::Unknown);
    }

    #[test]
    fn node_count_is_distinct_prefix_count() {
        let raw = worked_example::sample_words();
        let pta = Pta::build(&raw).unwrap();
        assert_eq!(pta.len(), distinct_prefixes(&raw));
        // Hand count over the ten raw words.
        assert_eq!(pta.len(), 18);

        let (kept, _) = preprocess_dataset(&raw, &worked_example::alphabet()).unwrap();
        let pta: Pta<StackAwareSymbol> = Pta::build(&kept).unwrap();
        assert_eq!(pta.len(), distinct_prefixes(&kept));
        assert_eq!(pta.len(), 13);
    }

    #[test]
    fn endpoints_carry_labels() {
        let d = worked_example::training_set();
        let pta = Pta::build(&d).unwrap();
        for s in &d {
            let node = pta.walk(&s.word).unwrap();
            let expected = if s.label { NodeLabel::Accepting } else { NodeLabel::Rejecting };
            assert_eq!(pta.label(node), expected);
        }
        assert_eq!(pta.label(pta.root()), NodeLabel::Rejecting);
        let unknown = pta.walk(&word("( ( ) ) )")).unwrap();
        assert_eq!(pta.label(unknown), NodeLabel::Unknown);
    }

    #[test]
    fn tree_shape_and_shortlex_ids() {
        let pta = Pta::build(&worked_example::training_set()).unwrap();
        assert_eq!(pta.parent(pta.root()), None);
        let mut prev: Option<Vec<&Symbol>> = None;
        for n in pta.nodes().skip(1) {
            let p = pta.parent(n).unwrap();
            assert!(pta.children(p).any(|(_, c)| c == n));
            let acc = pta.access_string(n);
            if let Some(prev) = prev {
                assert!((prev.len(), &prev) < (acc.len(), &acc), "not shortlex");
            }
            prev = Some(acc);
        }
    }

    #[test]
    fn conflicting_labels_fail() {
        let d = LabeledDataset::from_samples_unchecked(vec![
            crate::dataset::LabeledSample::new(word("a"), true),
            crate::dataset::LabeledSample::new(word("a"), false),
        ]);
        assert!(matches!(Pta::build(&d), Err(Error::LabelConflict(w)) if w == "a"));
    }
}
