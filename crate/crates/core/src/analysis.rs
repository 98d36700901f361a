use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartitionKind {
    /// Bad = every vertex of some violating triangle.
    ByP,
    /// Bad = a minimum violating set.
    ByQ,
}

/// Split of the vertex set into bad and good vertices, both sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    pub bad: Vec<usize>,
    pub good: Vec<usize>,
    pub kind: PartitionKind,
}

impl VertexPartition {
    pub fn from_bad(n: usize, mut bad: Vec<usize>, kind: PartitionKind) -> Self {
        bad.sort_unstable();
        bad.dedup();
        let mut is_bad = vec![false; n];
        for &v in &bad {
            is_bad[v] = true;
        }
        let good = (0..n).filter(|&v| !is_bad[v]).collect();
        VertexPartition { bad, good, kind }
    }

    pub fn size(&self) -> usize {
        self.bad.len()
    }

    pub fn bad_mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.bad {
            m[v] = true;
        }
        m
    }
}

pub fn bad_vertices_p<W: Weight>(g: &WeightedGraph<W>) -> VertexPartition {
    let bad = g.violating_triangles().iter().flat_map(|t| t.vertices()).collect();
    VertexPartition::from_bad(g.n(), bad, PartitionKind::ByP)
}

/// Minimum violating set by iterative deepening over its size, branching
/// three ways on the first violating triple not yet hit. Among minimum sets
/// the lexicographically smallest sorted set is returned.
pub fn min_violating_set<W: Weight>(g: &WeightedGraph<W>, budget: Option<usize>) -> Result<VertexPartition> {
    let mut triples: Vec<[usize; 3]> = g.violating_triangles().iter().map(|t| t.vertices()).collect();
    triples.dedup();
    let limit = budget.unwrap_or(g.n()).min(g.n());
    let mut removed = vec![false; g.n()];
    let mut chosen = Vec::new();
    for k in 0..=limit {
        let mut best: Option<Vec<usize>> = None;
        hit(&triples, k, &mut removed, &mut chosen, &mut best);
        if let Some(set) = best {
            return Ok(VertexPartition::from_bad(g.n(), set, PartitionKind::ByQ));
        }
    }
    Err(Error::BudgetExceeded { budget: limit })
}

fn hit(
    triples: &[[usize; 3]],
    left: usize,
    removed: &mut [bool],
    chosen: &mut Vec<usize>,
    best: &mut Option<Vec<usize>>,
) {
    let open = triples.iter().find(|t| t.iter().all(|&v| !removed[v]));
    let Some(t) = open else {
        let mut set = chosen.clone();
        set.sort_unstable();
        if best.as_ref().is_none_or(|b| set < *b) {
            *best = Some(set);
        }
        return;
    };
    if left == 0 {
        return;
    }
    for &v in t {
        removed[v] = true;
        chosen.push(v);
        hit(triples, left - 1, removed, chosen, best);
        chosen.pop();
        removed[v] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four() -> WeightedGraph<u64> {
        WeightedGraph::from_fn(4, |i, j| if (i, j) == (0, 2) { 5 } else { 1 }).unwrap()
    }

    /// Two disjoint heavy edges, each violating with every third vertex.
    fn two_triangles() -> WeightedGraph<u64> {
        WeightedGraph::from_fn(6, |i, j| match (i, j) {
            (0, 1) | (3, 4) => 10,
            _ => 2,
        })
        .unwrap()
    }

    #[test]
    fn metric_has_empty_sets() {
        let g = WeightedGraph::<u32>::from_fn(5, |_, _| 3).unwrap();
        assert!(bad_vertices_p(&g).bad.is_empty());
        assert!(min_violating_set(&g, None).unwrap().bad.is_empty());
    }

    #[test]
    fn four_vertex_example() {
        let g = four();
        let p = bad_vertices_p(&g);
        assert_eq!(p.bad, vec![0, 1, 2, 3]);
        assert!(p.good.is_empty());
        let q = min_violating_set(&g, None).unwrap();
        assert_eq!(q.bad, vec![0]);
        assert_eq!(q.good, vec![1, 2, 3]);
        assert_eq!(q.kind, PartitionKind::ByQ);
    }

    #[test]
    fn single_violating_triangle() {
        // Only {0,1,2} violates: the long edge 0-2 with apex 1; the other
        // vertices sit far enough away to stay metric.
        let g = WeightedGraph::<u64>::from_fn(5, |i, j| match (i, j) {
            (0, 1) | (1, 2) => 1,
            (0, 2) => 3,
            _ => 2,
        })
        .unwrap();
        assert_eq!(bad_vertices_p(&g).bad, vec![0, 1, 2]);
    }

    #[test]
    fn disjoint_triangles_need_two() {
        let g = two_triangles();
        let q = min_violating_set(&g, None).unwrap();
        assert_eq!(q.bad, vec![0, 3]);
        assert!(g.is_metric_on(&q.good));
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(min_violating_set(&two_triangles(), Some(1)), Err(Error::BudgetExceeded { budget: 1 }));
        assert!(min_violating_set(&two_triangles(), Some(2)).is_ok());
    }
}
