use super::MultiEdgeSet;
use crate::error::{Error, Result};
use crate::weight::Weight;

/// Closed walk using every edge once, as a cyclic vertex sequence of length
/// `|E|` (the start is not repeated). Starts at the lowest non-isolated vertex
/// and always leaves along the lowest-numbered unused neighbour.
pub fn eulerian_tour<W: Weight>(g: &MultiEdgeSet<W>) -> Result<Vec<usize>> {
    if g.is_empty() {
        return Ok(Vec::new());
    }
    if let Some(v) = (0..g.universe()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(Error::NotEulerian(format!("vertex {v} has odd degree {}", g.degree(v))));
    }
    if !g.is_connected() {
        return Err(Error::NotEulerian("edges span more than one component".into()));
    }
    let n = g.universe();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        adj[e.u].push((e.v, i));
        adj[e.v].push((e.u, i));
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let mut next = vec![0usize; n];
    let mut used = vec![false; g.len()];
    let start = (0..n).find(|&v| g.degree(v) > 0).unwrap();
    let mut stack = vec![start];
    let mut walk = Vec::with_capacity(g.len() + 1);
    while let Some(&v) = stack.last() {
        while next[v] < adj[v].len() && used[adj[v][next[v]].1] {
            next[v] += 1;
        }
        if next[v] == adj[v].len() {
            walk.push(v);
            stack.pop();
        } else {
            let (u, i) = adj[v][next[v]];
            used[i] = true;
            stack.push(u);
        }
    }
    walk.reverse();
    walk.pop();
    Ok(walk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prims::Edge;
    use proptest::prelude::*;

    fn multi(n: usize, pairs: &[(usize, usize)]) -> MultiEdgeSet<u32> {
        let mut m = MultiEdgeSet::new(n);
        m.extend(pairs.iter().map(|&(a, b)| Edge::new(a, b, (a + b) as u32)));
        m
    }

    fn walk_pairs(walk: &[usize]) -> Vec<(usize, usize)> {
        let k = walk.len();
        let mut p: Vec<_> = (0..k).map(|i| (walk[i].min(walk[(i + 1) % k]), walk[i].max(walk[(i + 1) % k]))).collect();
        p.sort_unstable();
        p
    }

    #[test]
    fn triangle() {
        let m = multi(3, &[(0, 1), (1, 2), (2, 0)]);
        let w = eulerian_tour(&m).unwrap();
        assert_eq!(w, vec![0, 1, 2]);
    }

    #[test]
    fn figure_eight() {
        let m = multi(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let w = eulerian_tour(&m).unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(walk_pairs(&w), m.sorted_pairs());
    }

    #[test]
    fn doubled_tree() {
        let t = [(0, 1), (1, 2), (1, 3), (3, 4), (0, 5)];
        let pairs: Vec<_> = t.iter().chain(t.iter()).copied().collect();
        let m = multi(6, &pairs);
        let w = eulerian_tour(&m).unwrap();
        assert_eq!(w.len(), 10);
        assert_eq!(walk_pairs(&w), m.sorted_pairs());
    }

    #[test]
    fn rejects_odd_and_disconnected() {
        assert!(matches!(eulerian_tour(&multi(3, &[(0, 1), (1, 2)])), Err(Error::NotEulerian(_))));
        let two = multi(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(matches!(eulerian_tour(&two), Err(Error::NotEulerian(_))));
        assert!(eulerian_tour(&multi(3, &[])).unwrap().is_empty());
    }

    proptest! {
        #[test]
        fn walk_uses_each_edge_once(cycles in prop::collection::vec(prop::collection::vec(0usize..8, 2..6), 1..5)) {
            // union of closed walks on a shared hub is Eulerian
            let mut pairs = Vec::new();
            for c in &cycles {
                let mut seq = vec![0];
                seq.extend(c.iter().map(|&x| x + 1));
                seq.push(0);
                for s in seq.windows(2) {
                    if s[0] != s[1] {
                        pairs.push((s[0], s[1]));
                    }
                }
            }
            let m = multi(9, &pairs);
            prop_assume!(m.odd_vertices().is_empty() && !m.is_empty());
            let w = eulerian_tour(&m).unwrap();
            prop_assert_eq!(walk_pairs(&w), m.sorted_pairs());
        }
    }
}
