//! Solvers parameterized by `p`, the number of vertices that lie in some
//! violating triangle.

mod alg2;

pub use alg2::{alg2, alg2_guess, build_cst, parity_matching_alg2, shortcut_alg2, ConstrainedSpanningTree, ParityMatching};
pub use crate::chains::{enumerate_bad_chains, ChainSet};

use crate::analysis::VertexPartition;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::christofides;
use crate::prims::{held_karp_tour, Tour};
use crate::shortcut::Walk;
use crate::solution::Solution;
use crate::weight::Weight;

/// Fallbacks shared by both solvers: `None` when the main pipeline applies.
pub(crate) fn degenerate<W: Weight>(g: &WeightedGraph<W>, part: &VertexPartition, caps: &Caps) -> Result<Option<Solution>> {
    let all: Vec<usize> = g.vertices().collect();
    if part.bad.is_empty() {
        return christofides(g, &all).map(|t| Some(Solution::single(t)));
    }
    if part.good.len() < 3 {
        caps.check_held_karp(g.n())?;
        return held_karp_tour(g, &all).map(|t| Some(Solution::single(t)));
    }
    Ok(None)
}

/// Exact tour on the bad vertices plus the lowest good vertex `o`, spliced
/// at `o` into a Christofides tour of the good vertices.
pub fn alg1<W: Weight>(g: &WeightedGraph<W>, part: &VertexPartition, caps: &Caps) -> Result<Solution> {
    if let Some(s) = degenerate(g, part, caps)? {
        return Ok(s);
    }
    let o = part.good[0];
    let mut core = part.bad.clone();
    core.push(o);
    caps.check_held_karp(core.len())?;
    let tb = held_karp_tour(g, &core)?;
    let tg = christofides(g, &part.good)?;
    let mut walk = rotate_to(&tb.order, o);
    let split = walk.len();
    walk.extend(rotate_to(&tg.order, o));
    let mut w = Walk::new(walk);
    // second copy of o sits between the last bad vertex and a good one
    w.remove(split, |a, b| g.w(a, b).wide())?;
    let tour = Tour::new(g, w.order()).canonical();
    if !tour.is_hamiltonian(g.n()) {
        return Err(Error::Internal("ALG.1 splice is not Hamiltonian".into()));
    }
    if tour.total_weight > tb.total_weight + tg.total_weight {
        return Err(Error::Internal("ALG.1 splice heavier than its parts".into()));
    }
    Ok(Solution::single(tour))
}

pub(crate) fn rotate_to(order: &[usize], v: usize) -> Vec<usize> {
    let mut o = order.to_vec();
    let pos = o.iter().position(|&x| x == v).expect("vertex on tour");
    o.rotate_left(pos);
    o
}
