use std::collections::VecDeque;
use std::fmt::Display;

use super::pta::{NodeId, NodeLabel, Pta};
use crate::automata::{Dfa, StateId};

/// A merge would put an accepting and a rejecting node in one block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incompatible;

#[derive(Clone, Copy, Debug)]
enum Undo {
    Parent(u32),
    Size(u32, u32),
    Label(u32, NodeLabel),
    Min(u32, u32),
    Edge(u32),
}

/// Quotient of a PTA under a partition of its nodes.
///
/// The partition is a union-find forest (union by size, no path
/// compression) so that trial merges can be undone from a log. Each block
/// representative owns one outgoing target node per symbol; label and
/// smallest member id are tracked per representative.
#[derive(Clone, Debug)]
pub struct Hypothesis<'a, S> {
    pta: &'a Pta<S>,
    parent: Vec<u32>,
    size: Vec<u32>,
    label: Vec<NodeLabel>,
    min: Vec<u32>,
    edges: Vec<Vec<(u32, u32)>>,
    log: Vec<Undo>,
    queue: VecDeque<(u32, u32)>,
}

impl<'a, S> Hypothesis<'a, S> {
    pub fn new(pta: &'a Pta<S>) -> Self {
        let n = pta.len();
        Hypothesis {
            pta,
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            label: pta.nodes().map(|q| pta.label(q)).collect(),
            min: (0..n as u32).collect(),
            edges: pta
                .nodes()
                .map(|q| pta.child_ids(q).iter().map(|&(s, c)| (s, c.0)).collect())
                .collect(),
            log: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    pub fn pta(&self) -> &'a Pta<S> {
        self.pta
    }

    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    /// Representative node of the block containing `node`.
    pub fn block(&self, node: NodeId) -> NodeId {
        NodeId(self.find(node.0))
    }

    /// Smallest (shortlex-first) node of the block containing `node`.
    pub fn block_key(&self, node: NodeId) -> NodeId {
        NodeId(self.min[self.find(node.0) as usize])
    }

    pub fn block_label(&self, node: NodeId) -> NodeLabel {
        self.label[self.find(node.0) as usize]
    }

    /// Target blocks of the block containing `node`, in symbol order.
    pub fn successors(&self, node: NodeId) -> impl Iterator<Item = (u32, NodeId)> + '_ {
        let rep = self.find(node.0);
        let mut out: Vec<(u32, NodeId)> = self.edges[rep as usize]
            .iter()
            .map(|&(s, t)| (s, NodeId(self.find(t))))
            .collect();
        out.sort_unstable();
        out.into_iter()
    }

    fn rollback(&mut self) {
        while let Some(entry) = self.log.pop() {
            match entry {
                Undo::Parent(x) => self.parent[x as usize] = x,
                Undo::Size(x, old) => self.size[x as usize] = old,
                Undo::Label(x, old) => self.label[x as usize] = old,
                Undo::Min(x, old) => self.min[x as usize] = old,
                Undo::Edge(x) => {
                    self.edges[x as usize].pop();
                }
            }
        }
    }

    /// Merges the blocks of `red` and `blue` and folds until deterministic.
    /// Returns the evidence score: the number of block unions that joined
    /// two blocks with the same known label. Leaves changes in the log.
    fn fold(&mut self, red: NodeId, blue: NodeId) -> Result<usize, Incompatible> {
        let mut score = 0;
        self.queue.clear();
        self.queue.push_back((red.0, blue.0));
        while let Some((a, b)) = self.queue.pop_front() {
            let (mut ra, mut rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            let (la, lb) = (self.label[ra as usize], self.label[rb as usize]);
            let joined = la.join(lb).ok_or(Incompatible)?;
            if la.is_known() && la == lb {
                score += 1;
            }
            if self.size[ra as usize] < self.size[rb as usize] {
                std::mem::swap(&mut ra, &mut rb);
            }
            // rb is absorbed into ra.
            self.log.push(Undo::Parent(rb));
            self.parent[rb as usize] = ra;
            self.log.push(Undo::Size(ra, self.size[ra as usize]));
            self.size[ra as usize] += self.size[rb as usize];
            if self.label[ra as usize] != joined {
                self.log.push(Undo::Label(ra, self.label[ra as usize]));
                self.label[ra as usize] = joined;
            }
            if self.min[rb as usize] < self.min[ra as usize] {
                self.log.push(Undo::Min(ra, self.min[ra as usize]));
                self.min[ra as usize] = self.min[rb as usize];
            }
            for i in 0..self.edges[rb as usize].len() {
                let (sym, target) = self.edges[rb as usize][i];
                match self.edges[ra as usize].iter().find(|(s, _)| *s == sym) {
                    Some(&(_, existing)) => self.queue.push_back((existing, target)),
                    None => {
                        self.edges[ra as usize].push((sym, target));
                        self.log.push(Undo::Edge(ra));
                    }
                }
            }
        }
        Ok(score)
    }

    /// Performs the merge if it is compatible; the hypothesis is unchanged
    /// otherwise.
    pub fn try_merge(&mut self, red: NodeId, blue: NodeId) -> Result<usize, Incompatible> {
        self.log.clear();
        match self.fold(red, blue) {
            Ok(score) => {
                self.log.clear();
                Ok(score)
            }
            Err(e) => {
                self.rollback();
                Err(e)
            }
        }
    }

    /// Evidence score of a merge without performing it.
    pub fn merge_score(&mut self, red: NodeId, blue: NodeId) -> Result<usize, Incompatible> {
        self.log.clear();
        let result = self.fold(red, blue);
        self.rollback();
        result
    }

    /// Number of blocks reachable from the root block.
    pub fn reachable_blocks(&self) -> Vec<NodeId> {
        let mut seen = vec![false; self.pta.len()];
        let root = self.block(self.pta.root());
        let mut order = vec![root];
        seen[root.index()] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for (_, t) in self.successors(q) {
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// Recomputes the quotient from scratch and checks that it is
    /// deterministic and label-consistent.
    pub fn is_consistent(&self) -> bool {
        let n = self.pta.len();
        let mut block_label = vec![NodeLabel::Unknown; n];
        for q in self.pta.nodes() {
            let rep = self.find(q.0) as usize;
            match block_label[rep].join(self.pta.label(q)) {
                Some(l) => block_label[rep] = l,
                None => return false,
            }
        }
        let mut target: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for q in self.pta.nodes() {
            let rep = self.find(q.0) as usize;
            if block_label[rep] != self.label[rep] {
                return false;
            }
            for &(sym, c) in self.pta.child_ids(q) {
                let tc = self.find(c.0);
                match target[rep].iter().find(|(s, _)| *s == sym) {
                    Some(&(_, t)) if t != tc => return false,
                    Some(_) => {}
                    None => target[rep].push((sym, tc)),
                }
            }
        }
        true
    }
}

impl<S: Ord + Clone + Display> Hypothesis<'_, S> {
    /// Emits the quotient as a DFA. Blocks are numbered breadth-first from
    /// the root block; only blocks containing an accepting node accept.
    /// Blocks from which no labelled block is reachable are dropped along
    /// with the edges into them.
    pub fn to_dfa(&self) -> Dfa<S> {
        let blocks = self.reachable_blocks();
        let n = self.pta.len();
        let mut state_of = vec![u32::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            state_of[b.index()] = i as u32;
        }

        // Backward closure from labelled blocks.
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); blocks.len()];
        for (i, &b) in blocks.iter().enumerate() {
            for (_, t) in self.successors(b) {
                preds[state_of[t.index()] as usize].push(i);
            }
        }
        let mut live = vec![false; blocks.len()];
        let mut stack: Vec<usize> = (0..blocks.len())
            .filter(|&i| self.label[blocks[i].index()].is_known())
            .collect();
        for &i in &stack {
            live[i] = true;
        }
        while let Some(i) = stack.pop() {
            for &p in &preds[i] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live[0] = true;

        let mut new_index = vec![u32::MAX; blocks.len()];
        let mut kept = 0u32;
        for i in 0..blocks.len() {
            if live[i] {
                new_index[i] = kept;
                kept += 1;
            }
        }
        let mut dfa = Dfa::new(kept as usize, self.pta.symbols().iter().cloned())
            .expect("at least the root block");
        for (i, &b) in blocks.iter().enumerate() {
            if !live[i] {
                continue;
            }
            let from = StateId(new_index[i]);
            if self.label[b.index()] == NodeLabel::Accepting {
                dfa.set_accepting(from, true).expect("state in range");
            }
            for (sym, t) in self.successors(b) {
                let j = state_of[t.index()] as usize;
                if live[j] {
                    dfa.add_transition(from, self.pta.symbol(sym).clone(), StateId(new_index[j]))
                        .expect("quotient is deterministic");
                }
            }
        }
        dfa
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::StackAwareSymbol;
    use crate::bench::worked_example;
    use crate::preprocessing::preprocess_dataset;

    fn stack_aware_pta() -> Pta<StackAwareSymbol> {
        let (kept, _) =
            preprocess_dataset(&worked_example::training_set(), &worked_example::alphabet())
                .unwrap();
        Pta::build(&kept).unwrap()
    }

    fn sa(t: &str) -> StackAwareSymbol {
        t.parse().unwrap()
    }

    #[test]
    fn merging_a_node_with_itself_is_a_no_op() {
        let pta = stack_aware_pta();
        let mut h = Hypothesis::new(&pta);
        let before = h.to_dfa();
        assert_eq!(h.try_merge(pta.root(), pta.root()), Ok(0));
        assert_eq!(h.to_dfa(), before);
        assert_eq!(h.reachable_blocks().len(), pta.len());
    }

    #[test]
    fn root_with_its_pop_descendant_is_incompatible() {
        // The root is rejecting (empty word labelled false) while `( )|(`
        // is accepting.
        let pta = stack_aware_pta();
        let mut h = Hypothesis::new(&pta);
        let pop_child = pta.walk(&[sa("("), sa(")|(")]).unwrap();
        assert_eq!(h.try_merge(pta.root(), pop_child), Err(Incompatible));
        // Rolled back completely.
        assert!(h.is_consistent());
        assert_eq!(h.reachable_blocks().len(), pta.len());
        assert_eq!(h.block(pop_child), pop_child);
    }

    #[test]
    fn fold_cascades() {
        let pta = stack_aware_pta();
        let mut h = Hypothesis::new(&pta);
        let open = pta.walk(&[sa("(")]).unwrap();
        // Root is rejecting, `(` is unknown: compatible, and the fold pulls
        // `( (` into the same block as `(`.
        h.try_merge(pta.root(), open).unwrap();
        assert!(h.is_consistent());
        let open2 = pta.walk(&[sa("("), sa("(")]).unwrap();
        assert_eq!(h.block(open2), h.block(pta.root()));
    }

    #[test]
    fn merge_score_leaves_hypothesis_untouched() {
        let pta = stack_aware_pta();
        let mut h = Hypothesis::new(&pta);
        let n = pta.walk(&[sa("("), sa(")|("), sa("(")]).unwrap();
        let _ = h.merge_score(pta.root(), n);
        assert_eq!(h.reachable_blocks().len(), pta.len());
        assert!(h.is_consistent());
    }
}
