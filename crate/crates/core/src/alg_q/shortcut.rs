use super::connect::ConnectGuess;
use super::limb::LimbGuess;
use super::ordered::OrderedChainGuess;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::prims::{eulerian_tour, Edge, Forest, Matching, MultiEdgeSet, Tour};
use crate::shortcut::Walk;
use crate::weight::Weight;

/// `A ∪ B' ∪ R' ∪ F` over `0..n`.
pub fn assemble<W: Weight>(
    g: &WeightedGraph<W>,
    guess: &OrderedChainGuess,
    limbs: &LimbGuess<W>,
    connect: &ConnectGuess<W>,
    forest: &Forest<W>,
) -> MultiEdgeSet<W> {
    let mut m = MultiEdgeSet::new(g.n());
    for c in &guess.chains {
        m.extend(c.windows(2).map(|p| g.edge(p[0], p[1])));
    }
    m.extend(limbs.limbs.iter().copied());
    m.extend(connect.edges.iter().copied());
    m.extend(forest.edges().copied());
    m
}

/// Per tree, a minimum perfect matching on the odd-degree vertices of `g_a`
/// inside that tree.
pub fn tree_parity_matchings<W: Weight>(
    g: &WeightedGraph<W>,
    g_a: &MultiEdgeSet<W>,
    forest: &Forest<W>,
) -> Result<Vec<Matching<W>>> {
    let mut out = Vec::with_capacity(forest.len());
    for (t, tree) in forest.trees.iter().enumerate() {
        let odd: Vec<usize> = tree.vertices.iter().copied().filter(|&v| g_a.degree(v) % 2 == 1).collect();
        if odd.len() % 2 == 1 {
            return Err(Error::ParityViolated { tree: t });
        }
        let m = crate::prims::min_weight_perfect_matching(&odd, |a, b| g.w(a, b))?;
        if m.total_weight > tree.weight() {
            return Err(Error::Internal(format!("matching {} heavier than tree {t} ({})", m.total_weight, tree.weight())));
        }
        out.push(m);
    }
    Ok(out)
}

/// Resolve single anchors (delete fully anchored trees, otherwise move the
/// limbs to a fresh copy), walk the Eulerian multigraph and shortcut good
/// repeats and the originals of copied anchors.
pub fn shortcut_alg4<W: Weight>(
    g: &WeightedGraph<W>,
    guess: &OrderedChainGuess,
    limbs: &LimbGuess<W>,
    connect: &ConnectGuess<W>,
    forest: &Forest<W>,
    matchings: &[Matching<W>],
    bad: &[bool],
) -> Result<Tour> {
    let n = g.n();
    let mut multi = assemble(g, guess, limbs, connect, forest);
    for m in matchings {
        m.pairs.iter().for_each(|&(a, b)| multi.add(g.edge(a, b)));
    }
    let slots = guess.slots();
    let mut single = vec![false; n];
    for (slot, &x) in slots.iter().zip(&limbs.anchors) {
        single[x] |= slot.is_single();
    }
    let mut marked = bad.to_vec();
    let mut origin: Vec<usize> = (0..n).collect();
    for (t, tree) in forest.trees.iter().enumerate() {
        let singles: Vec<usize> = tree.vertices.iter().copied().filter(|&v| single[v]).collect();
        if singles.is_empty() {
            continue;
        }
        if singles.len() == tree.vertices.len() {
            for e in &tree.edges {
                multi.remove(e.u, e.v);
            }
            for &(a, b) in &matchings[t].pairs {
                multi.remove(a, b);
            }
            singles.iter().for_each(|&v| marked[v] = true);
            continue;
        }
        for x in singles {
            let copy = origin.len();
            origin.push(x);
            marked.push(true);
            multi.grow(copy + 1);
            let j = limbs.anchors.iter().position(|&a| a == x).unwrap();
            for y in slots[j].bad_neighbours() {
                if !multi.remove(x, y) {
                    return Err(Error::Internal(format!("limb {x}-{y} missing")));
                }
                multi.add(Edge::new(copy, y, g.w(x, y)));
            }
        }
    }
    let bound = multi.total_weight();
    let universe = origin.len();

    let deg = multi.degrees();
    if deg.iter().any(|&d| d == 0 || d % 2 == 1) || !multi.is_connected() {
        return Err(Error::StructureViolated("G'' is not a connected Eulerian cover".into()));
    }
    if let Some(v) = (0..universe).find(|&v| marked[v] && deg[v] != 2) {
        return Err(Error::StructureViolated(format!("bad vertex {v} has degree {}", deg[v])));
    }
    let mut bad_edges = vec![0usize; universe];
    for e in multi.edges() {
        if marked[e.u] && !marked[e.v] {
            bad_edges[e.v] += 1;
        } else if marked[e.v] && !marked[e.u] {
            bad_edges[e.u] += 1;
        }
    }
    if let Some(v) = (0..universe).find(|&v| bad_edges[v] > 1) {
        return Err(Error::StructureViolated(format!("good vertex {v} touches {} bad vertices", bad_edges[v])));
    }

    let w = |a: usize, b: usize| if origin[a] == origin[b] { 0 } else { g.w(origin[a], origin[b]).wide() };
    let mut walk = Walk::new(eulerian_tour(&multi)?);
    let mut appearances = vec![Vec::new(); universe];
    for pos in walk.positions() {
        appearances[walk.vertex(pos)].push(pos);
    }
    for v in (0..universe).filter(|&v| !marked[v] && appearances[v].len() > 1) {
        let keep = appearances[v]
            .iter()
            .copied()
            .find(|&p| {
                let (a, b) = walk.neighbours(p);
                marked[a] || marked[b]
            })
            .unwrap_or(appearances[v][0]);
        for &p in appearances[v].iter().filter(|&&p| p != keep) {
            let (a, b) = walk.neighbours(p);
            if marked[a] || marked[b] {
                return Err(Error::StructureViolated(format!("repeat of {v} next to a bad vertex")));
            }
            walk.remove(p, w)?;
        }
    }
    for &x in &origin[n..] {
        let pos = walk.positions().into_iter().find(|&p| walk.vertex(p) == x).unwrap();
        let (a, b) = walk.neighbours(pos);
        if marked[a] || marked[b] {
            return Err(Error::StructureViolated(format!("copied anchor {x} sits next to a bad vertex")));
        }
        walk.remove(pos, w)?;
    }
    let order = walk.order().into_iter().map(|v| origin[v]).collect();
    let tour = Tour::new(g, order).canonical();
    if !tour.is_hamiltonian(n) {
        return Err(Error::StructureViolated("shortcut walk is not Hamiltonian".into()));
    }
    if tour.total_weight > bound {
        return Err(Error::Internal(format!("ALG.4 tour {} exceeds G'' weight {bound}", tour.total_weight)));
    }
    Ok(tour)
}
