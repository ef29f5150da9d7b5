//! Dominance over attribute vectors and the expertise order it induces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{AttributeVector, AutonomousSystem};

/// Outcome of comparing two attribute vectors componentwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DominanceRelation {
    StrictlyBetter,
    StrictlyWorse,
    Equal,
    Incomparable,
}

impl DominanceRelation {
    pub fn reverse(self) -> Self {
        match self {
            DominanceRelation::StrictlyBetter => DominanceRelation::StrictlyWorse,
            DominanceRelation::StrictlyWorse => DominanceRelation::StrictlyBetter,
            other => other,
        }
    }
}

/// Compares `a` against `b`. `StrictlyBetter` means `a` is at least as good in
/// every attribute and better in at least one.
pub fn compare(a: &AttributeVector, b: &AttributeVector) -> Result<DominanceRelation> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compare vectors of dimension {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let mut a_wins = false;
    let mut b_wins = false;
    for (x, y) in a.values().iter().zip(b.values()) {
        if x > y {
            a_wins = true;
        } else if y > x {
            b_wins = true;
        }
    }
    Ok(match (a_wins, b_wins) {
        (false, false) => DominanceRelation::Equal,
        (true, false) => DominanceRelation::StrictlyBetter,
        (false, true) => DominanceRelation::StrictlyWorse,
        (true, true) => DominanceRelation::Incomparable,
    })
}

/// Componentwise maximum (join) and minimum (meet) over all agents.
pub fn join_meet(systems: &[AutonomousSystem]) -> Result<(AttributeVector, AttributeVector)> {
    let first = systems.first().ok_or(Error::EmptyInput)?;
    let d = first.attributes.dim();
    let mut join = first.attributes.values().to_vec();
    let mut meet = join.clone();
    for s in &systems[1..] {
        if s.attributes.dim() != d {
            return Err(Error::DimensionMismatch(format!(
                "system {} has dimension {}, expected {d}",
                s.id,
                s.attributes.dim()
            )));
        }
        for (i, &v) in s.attributes.values().iter().enumerate() {
            join[i] = join[i].max(v);
            meet[i] = meet[i].min(v);
        }
    }
    Ok((join.into(), meet.into()))
}

/// Strict-dominance poset over a set of agents, kept as its Hasse diagram.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialOrder {
    n: usize,
    cover_edges: Vec<(usize, usize)>,
    depth_rank: Vec<usize>,
    meet: AttributeVector,
    join: AttributeVector,
    // relation[a][b] is the comparison of agent a against agent b
    relation: Vec<Vec<DominanceRelation>>,
}

impl PartialOrder {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Hasse edges `(dominator, dominated)`, sorted.
    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.cover_edges
    }

    /// 1 for maximal agents, otherwise one more than the deepest strict dominator.
    pub fn depth_rank(&self) -> &[usize] {
        &self.depth_rank
    }

    pub fn meet(&self) -> &AttributeVector {
        &self.meet
    }

    pub fn join(&self) -> &AttributeVector {
        &self.join
    }

    pub fn relation(&self, a: usize, b: usize) -> DominanceRelation {
        self.relation[a][b]
    }

    pub fn dominates(&self, a: usize, b: usize) -> bool {
        self.relation[a][b] == DominanceRelation::StrictlyBetter
    }

    /// Agents no other agent strictly dominates.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.depth_rank[a] == 1).collect()
    }

    /// `a` must come before `b` in every admissible total order: strict
    /// dominance, or equal vectors with `a` having the smaller id.
    fn must_precede(&self, a: usize, b: usize) -> bool {
        match self.relation[a][b] {
            DominanceRelation::StrictlyBetter => true,
            DominanceRelation::Equal => a < b,
            _ => false,
        }
    }
}

/// Builds the dominance poset of `systems`, indexed by position in the slice.
pub fn build_partial_order(systems: &[AutonomousSystem]) -> Result<PartialOrder> {
    let (join, meet) = join_meet(systems)?;
    let n = systems.len();
    let mut relation = vec![vec![DominanceRelation::Equal; n]; n];
    for a in 0..n {
        for b in (a + 1)..n {
            let r = compare(&systems[a].attributes, &systems[b].attributes)?;
            relation[a][b] = r;
            relation[b][a] = r.reverse();
        }
    }
    let better = |a: usize, b: usize| relation[a][b] == DominanceRelation::StrictlyBetter;

    let mut cover_edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if better(a, b) && !(0..n).any(|c| better(a, c) && better(c, b)) {
                cover_edges.push((a, b));
            }
        }
    }

    // Dominators always have strictly fewer dominators of their own, so
    // processing by that count is a topological order.
    let dominator_count: Vec<usize> = (0..n)
        .map(|b| (0..n).filter(|&a| better(a, b)).count())
        .collect();
    let mut by_depth: Vec<usize> = (0..n).collect();
    by_depth.sort_by_key(|&a| dominator_count[a]);
    let mut depth_rank = vec![1; n];
    for &b in &by_depth {
        depth_rank[b] = 1
            + (0..n)
                .filter(|&a| better(a, b))
                .map(|a| depth_rank[a])
                .max()
                .unwrap_or(0);
    }

    Ok(PartialOrder {
        n,
        cover_edges,
        depth_rank,
        meet,
        join,
        relation,
    })
}

/// A permutation of agent ids, most expert first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct TotalOrder(Vec<usize>);

impl TotalOrder {
    pub fn new(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut seen = vec![false; n];
        for &id in &sequence {
            if id >= n || seen[id] {
                return Err(Error::DimensionMismatch(format!(
                    "{sequence:?} is not a permutation of 0..{n}"
                )));
            }
            seen[id] = true;
        }
        Ok(TotalOrder(sequence))
    }

    pub fn identity(n: usize) -> Self {
        TotalOrder((0..n).collect())
    }

    pub fn sequence(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Agent id at `position`.
    pub fn agent(&self, position: usize) -> usize {
        self.0[position]
    }

    /// Reorders per-agent values into order positions.
    pub fn arrange<T: Copy>(&self, by_agent: &[T]) -> Vec<T> {
        self.0.iter().map(|&a| by_agent[a]).collect()
    }

    /// True when every strict dominance (and equal-vector tie) in `po` is respected.
    pub fn is_linear_extension_of(&self, po: &PartialOrder) -> bool {
        if self.len() != po.len() {
            return false;
        }
        let mut position = vec![0; self.len()];
        for (p, &a) in self.0.iter().enumerate() {
            position[a] = p;
        }
        (0..po.len())
            .all(|a| (0..po.len()).all(|b| !po.must_precede(a, b) || position[a] < position[b]))
    }
}

/// Enumerates up to `limit` linear extensions in lexicographic order of
/// their id sequences.
pub fn linear_extensions(po: &PartialOrder, limit: usize) -> Vec<TotalOrder> {
    let n = po.len();
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    let successors: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).filter(|&b| po.must_precede(a, b)).collect())
        .collect();
    let mut pending: Vec<usize> = (0..n)
        .map(|b| (0..n).filter(|&a| po.must_precede(a, b)).count())
        .collect();
    let mut placed = vec![false; n];
    let mut prefix = Vec::with_capacity(n);
    extend(
        &successors,
        &mut pending,
        &mut placed,
        &mut prefix,
        limit,
        &mut out,
    );
    out
}

fn extend(
    successors: &[Vec<usize>],
    pending: &mut [usize],
    placed: &mut [bool],
    prefix: &mut Vec<usize>,
    limit: usize,
    out: &mut Vec<TotalOrder>,
) {
    if prefix.len() == successors.len() {
        out.push(TotalOrder(prefix.clone()));
        return;
    }
    for a in 0..successors.len() {
        if out.len() >= limit {
            return;
        }
        if placed[a] || pending[a] != 0 {
            continue;
        }
        placed[a] = true;
        prefix.push(a);
        for &b in &successors[a] {
            pending[b] -= 1;
        }
        extend(successors, pending, placed, prefix, limit, out);
        for &b in &successors[a] {
            pending[b] += 1;
        }
        prefix.pop();
        placed[a] = false;
    }
}
