use super::{Edge, EdgeSet, Forest, Tree};
use crate::error::{Error, Result};
use crate::weight::Weight;

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
}

/// Kruskal over `vertices` in (weight, u, v) order, stopping after `limit`
/// accepted edges. `None` weights are forbidden.
fn kruskal<W: Weight>(
    vertices: &[usize],
    weight: impl Fn(usize, usize) -> Option<W>,
    limit: usize,
) -> (Vec<Edge<W>>, Dsu) {
    let k = vertices.len();
    let mut cand = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            if let Some(w) = weight(vertices[i], vertices[j]) {
                let e = Edge::new(vertices[i], vertices[j], w);
                cand.push((e.w, e.u, e.v, i, j));
            }
        }
    }
    cand.sort_unstable();
    let mut dsu = Dsu((0..k).collect());
    let mut out = Vec::new();
    for (w, u, v, i, j) in cand {
        if out.len() == limit {
            break;
        }
        let (a, b) = (dsu.find(i), dsu.find(j));
        if a != b {
            dsu.0[a] = b;
            out.push(Edge { u, v, w });
        }
    }
    (out, dsu)
}

/// Minimum spanning tree; ties go to the lexicographically smaller pair.
pub fn mst<W: Weight>(vertices: &[usize], weight: impl Fn(usize, usize) -> Option<W>) -> Result<EdgeSet<W>> {
    if vertices.is_empty() {
        return Err(Error::InvalidGraph("spanning tree of an empty vertex set".into()));
    }
    let (edges, _) = kruskal(vertices, weight, vertices.len() - 1);
    if edges.len() + 1 != vertices.len() {
        return Err(Error::Disconnected);
    }
    Ok(EdgeSet::new(edges))
}

/// Minimum spanning forest with exactly `t` trees (Kruskal stopped early,
/// i.e. the MST without its `t - 1` heaviest edges).
pub fn spanning_t_forest<W: Weight>(
    vertices: &[usize],
    weight: impl Fn(usize, usize) -> W,
    t: usize,
) -> Result<Forest<W>> {
    let k = vertices.len();
    if t == 0 || t > k {
        return Err(Error::InvalidT { t, k });
    }
    let (edges, mut dsu) = kruskal(vertices, |a, b| Some(weight(a, b)), k - t);
    let mut root_tree = vec![usize::MAX; k];
    let mut trees: Vec<Tree<W>> = Vec::new();
    let mut pos = std::collections::HashMap::new();
    for (i, &v) in vertices.iter().enumerate() {
        pos.insert(v, i);
        let r = dsu.find(i);
        if root_tree[r] == usize::MAX {
            root_tree[r] = trees.len();
            trees.push(Tree { vertices: Vec::new(), edges: Vec::new() });
        }
        trees[root_tree[r]].vertices.push(v);
    }
    for e in edges {
        let r = dsu.find(pos[&e.u]);
        trees[root_tree[r]].edges.push(e);
    }
    for t in &mut trees {
        t.vertices.sort_unstable();
        t.edges.sort_unstable();
    }
    trees.sort_by_key(|t| t.vertices[0]);
    Ok(Forest { trees })
}
