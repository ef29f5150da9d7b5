//! Ordered binary decision diagrams of the propagated group belief.
//!
//! Variable `i` is the raw belief of the agent at position `i` of the
//! diagram's [`TotalOrder`], so every root-to-terminal path tests beliefs from
//! the most expert agent downwards. A diagram built by [`build_propagated`]
//! computes the aggregated belief of the last agent in the order.
//!
//! Nodes live in an arena and refer to each other by index. Construction
//! never shares terminals, so [`reduce`] has real work to do: it keeps one
//! terminal per value, merges structurally identical decision nodes and drops
//! decisions whose two edges agree.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::TotalOrder;
use crate::propagation::propagate_chain;
use crate::rules::{combine_unanimous_flip, RuleSpec};

/// Largest variable count accepted by the complete-tree builders.
pub const MAX_TREE_VARS: usize = 24;

pub type NodeRef = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Terminal(bool),
    Decision {
        var: u32,
        low: NodeRef,
        high: NodeRef,
    },
}

#[derive(Clone, Debug)]
pub struct Diagram {
    nodes: Vec<Node>,
    root: NodeRef,
    order: TotalOrder,
}

impl Diagram {
    pub fn root(&self) -> NodeRef {
        self.root
    }

    pub fn node(&self, r: NodeRef) -> Node {
        self.nodes[r as usize]
    }

    pub fn order(&self) -> &TotalOrder {
        &self.order
    }

    pub fn n_vars(&self) -> usize {
        self.order.len()
    }

    /// Nodes reachable from the root, in depth-first preorder (low before high).
    pub fn reachable(&self) -> Vec<NodeRef> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(r) = stack.pop() {
            if std::mem::replace(&mut seen[r as usize], true) {
                continue;
            }
            out.push(r);
            if let Node::Decision { low, high, .. } = self.node(r) {
                stack.push(high);
                stack.push(low);
            }
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.reachable().len()
    }

    pub fn decision_count(&self) -> usize {
        self.reachable()
            .into_iter()
            .filter(|&r| matches!(self.node(r), Node::Decision { .. }))
            .count()
    }

    /// One more than the largest variable tested anywhere in the diagram.
    pub fn support_len(&self) -> usize {
        self.reachable()
            .into_iter()
            .filter_map(|r| match self.node(r) {
                Node::Decision { var, .. } => Some(var as usize + 1),
                Node::Terminal(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// True when variables strictly increase along every edge.
    pub fn is_ordered(&self) -> bool {
        self.reachable().into_iter().all(|r| match self.node(r) {
            Node::Terminal(_) => true,
            Node::Decision { var, low, high } => [low, high].iter().all(|&c| match self.node(c) {
                Node::Terminal(_) => true,
                Node::Decision { var: child, .. } => child > var,
            }),
        })
    }

    /// Graphviz description; dashed edges are the 0-branch.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph obdd {\n");
        for r in self.reachable() {
            match self.node(r) {
                Node::Terminal(v) => {
                    let _ = writeln!(out, "  n{r} [shape=box,label=\"{}\"];", u8::from(v));
                }
                Node::Decision { var, low, high } => {
                    let agent = self.order.agent(var as usize);
                    let _ = writeln!(out, "  n{r} [shape=circle,label=\"x{agent}\"];");
                    let _ = writeln!(out, "  n{r} -> n{low} [style=dashed];");
                    let _ = writeln!(out, "  n{r} -> n{high};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

struct Arena {
    nodes: Vec<Node>,
}

impl Arena {
    fn with_capacity(n: usize) -> Self {
        Arena {
            nodes: Vec::with_capacity(n),
        }
    }

    fn push(&mut self, node: Node) -> NodeRef {
        self.nodes.push(node);
        (self.nodes.len() - 1) as NodeRef
    }

    fn finish(self, root: NodeRef, order: TotalOrder) -> Diagram {
        Diagram {
            nodes: self.nodes,
            root,
            order,
        }
    }
}

/// Complete decision tree over `n` variables whose leaves hold `leaf(path)`.
pub fn build_tree(n: usize, leaf: impl Fn(&[bool]) -> bool) -> Result<Diagram> {
    if n > MAX_TREE_VARS {
        return Err(Error::TooLarge(n));
    }
    let mut arena = Arena::with_capacity((1usize << (n + 1)) - 1);
    let mut path = Vec::with_capacity(n);
    let root = grow_tree(&mut arena, &mut path, n, &leaf);
    Ok(arena.finish(root, TotalOrder::identity(n)))
}

fn grow_tree(
    arena: &mut Arena,
    path: &mut Vec<bool>,
    n: usize,
    leaf: &impl Fn(&[bool]) -> bool,
) -> NodeRef {
    if path.len() == n {
        return arena.push(Node::Terminal(leaf(path)));
    }
    let var = path.len() as u32;
    let me = arena.push(Node::Terminal(false));
    path.push(false);
    let low = grow_tree(arena, path, n, leaf);
    path.pop();
    path.push(true);
    let high = grow_tree(arena, path, n, leaf);
    path.pop();
    arena.nodes[me as usize] = Node::Decision { var, low, high };
    me
}

/// Unreduced diagram over `n` agents: the complete tree whose leaves carry
/// the last agent's own belief, `2^(n+1) - 1` nodes.
pub fn build_unreduced(n: usize) -> Result<Diagram> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    build_tree(n, |x| x[n - 1])
}

/// Complete tree of the propagated last belief, one chain evaluation per leaf.
pub fn build_propagated_tree(order: &TotalOrder, rule: RuleSpec) -> Result<Diagram> {
    rule.expert_k()
        .ok_or_else(|| Error::UnsupportedRule(rule.to_string()))?;
    let mut d = build_tree(order.len(), |x| {
        propagate_chain(order, x, rule)
            .expect("leaf path has one value per agent")
            .last()
    })?;
    d.order = order.clone();
    Ok(d)
}

/// Diagram of the aggregated belief of the last agent of `order` under an
/// expert rule, built by Shannon expansion in the expertise order.
///
/// Each path carries the aggregated beliefs of its last `k` agents. Paths with
/// the same position and window share their subdiagram, and a path whose
/// window already agrees ends at a terminal without testing later agents.
pub fn build_propagated(order: &TotalOrder, rule: RuleSpec) -> Result<Diagram> {
    let k = rule
        .expert_k()
        .ok_or_else(|| Error::UnsupportedRule(rule.to_string()))?;
    if order.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut builder = PropagatedBuilder {
        arena: Arena::with_capacity(4 * order.len()),
        memo: HashMap::new(),
        n: order.len(),
        k,
    };
    let root = builder.expand(0, Vec::new());
    Ok(builder.arena.finish(root, order.clone()))
}

struct PropagatedBuilder {
    arena: Arena,
    memo: HashMap<(usize, Vec<bool>), NodeRef>,
    n: usize,
    k: usize,
}

impl PropagatedBuilder {
    fn expand(&mut self, pos: usize, window: Vec<bool>) -> NodeRef {
        if window.len() == self.k && window.iter().all(|&b| b == window[0]) {
            return self.arena.push(Node::Terminal(window[0]));
        }
        if pos == self.n {
            let last = *window.last().expect("n >= 1");
            return self.arena.push(Node::Terminal(last));
        }
        if let Some(&r) = self.memo.get(&(pos, window.clone())) {
            return r;
        }
        let me = self.arena.push(Node::Terminal(false));
        let mut children = [0; 2];
        for (slot, own) in [false, true].into_iter().enumerate() {
            let y = if pos < self.k {
                own
            } else {
                combine_unanimous_flip(own, &window)
            };
            let mut next = window.clone();
            next.push(y);
            if next.len() > self.k {
                next.remove(0);
            }
            children[slot] = self.expand(pos + 1, next);
        }
        self.arena.nodes[me as usize] = Node::Decision {
            var: pos as u32,
            low: children[0],
            high: children[1],
        };
        self.memo.insert((pos, window), me);
        me
    }
}

/// Canonical reduced form: one terminal per value, no two identical decision
/// nodes, no decision with equal children.
pub fn reduce(d: &Diagram) -> Diagram {
    let mut r = Reducer {
        src: d,
        arena: Arena::with_capacity(16),
        unique: HashMap::new(),
        terminals: [None, None],
        done: vec![None; d.nodes.len()],
        merge_decisions: true,
    };
    let root = r.visit(d.root);
    r.arena.finish(root, d.order.clone())
}

/// Applies only duplicate-terminal removal, leaving decision nodes as they are.
pub fn reduce_terminals(d: &Diagram) -> Diagram {
    let mut r = Reducer {
        src: d,
        arena: Arena::with_capacity(d.nodes.len()),
        unique: HashMap::new(),
        terminals: [None, None],
        done: vec![None; d.nodes.len()],
        merge_decisions: false,
    };
    let root = r.visit(d.root);
    r.arena.finish(root, d.order.clone())
}

struct Reducer<'a> {
    src: &'a Diagram,
    arena: Arena,
    unique: HashMap<(u32, NodeRef, NodeRef), NodeRef>,
    terminals: [Option<NodeRef>; 2],
    done: Vec<Option<NodeRef>>,
    merge_decisions: bool,
}

impl Reducer<'_> {
    fn visit(&mut self, old: NodeRef) -> NodeRef {
        if let Some(r) = self.done[old as usize] {
            return r;
        }
        let new = match self.src.node(old) {
            Node::Terminal(v) => match self.terminals[usize::from(v)] {
                Some(t) => t,
                None => {
                    let t = self.arena.push(Node::Terminal(v));
                    self.terminals[usize::from(v)] = Some(t);
                    t
                }
            },
            Node::Decision { var, low, high } => {
                let low = self.visit(low);
                let high = self.visit(high);
                if !self.merge_decisions {
                    self.arena.push(Node::Decision { var, low, high })
                } else if low == high {
                    low
                } else {
                    match self.unique.get(&(var, low, high)) {
                        Some(&r) => r,
                        None => {
                            let r = self.arena.push(Node::Decision { var, low, high });
                            self.unique.insert((var, low, high), r);
                            r
                        }
                    }
                }
            }
        };
        self.done[old as usize] = Some(new);
        new
    }
}

/// Follows the assignment (indexed by variable) from the root to a terminal.
pub fn evaluate(d: &Diagram, assignment: &[bool]) -> Result<bool> {
    let needed = d.support_len();
    if assignment.len() < needed {
        return Err(Error::AssignmentTooShort {
            needed,
            actual: assignment.len(),
        });
    }
    Ok(eval_unchecked(d, assignment))
}

/// [`evaluate`] without the support-length check; panics on a short assignment.
pub fn eval_unchecked(d: &Diagram, assignment: &[bool]) -> bool {
    let mut r = d.root;
    loop {
        match d.node(r) {
            Node::Terminal(v) => return v,
            Node::Decision { var, low, high } => {
                r = if assignment[var as usize] { high } else { low };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
        (0u32..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
    }

    #[test]
    fn unreduced_sizes() {
        assert_eq!(build_unreduced(3).unwrap().node_count(), 15);
        assert_eq!(build_unreduced(3).unwrap().decision_count(), 7);
        assert_eq!(build_unreduced(1).unwrap().node_count(), 3);
        assert!(matches!(build_unreduced(25), Err(Error::TooLarge(25))));
    }

    #[test]
    fn constant_tree_reduces_to_one_node() {
        let d = build_tree(3, |_| true).unwrap();
        let r = reduce(&d);
        assert_eq!(r.node_count(), 1);
        assert_eq!(r.node(r.root()), Node::Terminal(true));
        assert!(evaluate(&r, &[]).unwrap());
        let zero = reduce(&build_tree(4, |_| false).unwrap());
        assert!(!evaluate(&zero, &[true, false, true, true]).unwrap());
    }

    #[test]
    fn most_expert_is_first_variable() {
        let order = TotalOrder::identity(3);
        let d = build_propagated(&order, RuleSpec::MostExpert).unwrap();
        assert_eq!(
            d.node(d.root()),
            Node::Decision {
                var: 0,
                low: 1,
                high: 2
            }
        );
        assert_eq!(d.node(1), Node::Terminal(false));
        assert_eq!(d.node(2), Node::Terminal(true));
        assert!(evaluate(&d, &[true, false, false]).unwrap());
        let big =
            reduce(&build_propagated(&TotalOrder::identity(10), RuleSpec::MostExpert).unwrap());
        assert_eq!(big.node_count(), 3);
    }

    #[test]
    fn two_expert_agreeing_heads_skip_last_variable() {
        let d = build_propagated(&TotalOrder::identity(3), RuleSpec::NExpert(2)).unwrap();
        for d in [d.clone(), reduce(&d)] {
            // x0 = x1 = v
            for v in [false, true] {
                let mut r = d.root();
                for _ in 0..2 {
                    match d.node(r) {
                        Node::Decision { low, high, .. } => r = if v { high } else { low },
                        Node::Terminal(_) => break,
                    }
                }
                assert_eq!(d.node(r), Node::Terminal(v));
            }
        }
        assert!(evaluate(&d, &[true, false, true]).unwrap());
    }

    #[test]
    fn single_agent_is_one_decision() {
        for rule in [
            RuleSpec::MostExpert,
            RuleSpec::NExpert(1),
            RuleSpec::NExpert(3),
        ] {
            let d = reduce(&build_propagated(&TotalOrder::identity(1), rule).unwrap());
            assert_eq!(d.decision_count(), 1);
            assert_eq!(d.node_count(), 3);
        }
    }

    #[test]
    fn voting_rules_unsupported() {
        for rule in [RuleSpec::Majority, RuleSpec::GravityPoint] {
            assert!(matches!(
                build_propagated(&TotalOrder::identity(3), rule),
                Err(Error::UnsupportedRule(_))
            ));
        }
    }

    #[test]
    fn propagated_matches_tree_oracle() {
        for n in 1..=8 {
            let order = TotalOrder::identity(n);
            for k in 1..=4 {
                let rule = RuleSpec::NExpert(k);
                let d = build_propagated(&order, rule).unwrap();
                assert!(d.is_ordered());
                let tree = build_propagated_tree(&order, rule).unwrap();
                for x in all_assignments(n) {
                    assert_eq!(
                        evaluate(&d, &x).unwrap(),
                        evaluate(&tree, &x).unwrap(),
                        "n={n} k={k} x={x:?}"
                    );
                }
                // canonical form does not depend on the construction route
                assert_eq!(reduce(&d).node_count(), reduce(&tree).node_count());
            }
        }
    }

    #[test]
    fn reduce_is_idempotent_and_single_terminal_per_value() {
        let d = reduce(&build_propagated(&TotalOrder::identity(9), RuleSpec::NExpert(3)).unwrap());
        let again = reduce(&d);
        assert_eq!(again.node_count(), d.node_count());
        let terminals = d
            .reachable()
            .into_iter()
            .filter(|&r| matches!(d.node(r), Node::Terminal(_)))
            .count();
        assert_eq!(terminals, 2);
    }

    #[test]
    fn terminal_only_reduction_keeps_tree_shape() {
        let d = build_unreduced(4).unwrap();
        let t = reduce_terminals(&d);
        assert_eq!(t.node_count(), 15 + 2);
        assert_eq!(reduce(&d).node_count(), 3);
    }

    #[test]
    fn short_assignment_rejected() {
        let d = build_unreduced(3).unwrap();
        assert!(matches!(
            evaluate(&d, &[true]),
            Err(Error::AssignmentTooShort {
                needed: 3,
                actual: 1
            })
        ));
    }

    #[test]
    fn dot_output_mentions_every_node() {
        let d = reduce(&build_propagated(&TotalOrder::identity(3), RuleSpec::NExpert(2)).unwrap());
        let dot = d.to_dot();
        assert!(dot.starts_with("digraph obdd {"));
        assert_eq!(dot.matches("shape=").count(), d.node_count());
    }
}
