//! Christofides' heuristic and first-occurrence shortcutting on metric
//! vertex subsets.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::prims::{eulerian_tour, min_weight_perfect_matching, mst, MultiEdgeSet, Tour};
use crate::shortcut::Walk;
use crate::weight::Weight;

/// Closed walk that may revisit vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkWithRepeats {
    pub order: Vec<usize>,
    pub total_weight: u128,
}

impl WalkWithRepeats {
    pub fn new<W: Weight>(g: &WeightedGraph<W>, order: Vec<usize>) -> Self {
        let total_weight = g.cycle_weight(&order);
        WalkWithRepeats { order, total_weight }
    }
}

fn require_metric<W: Weight>(g: &WeightedGraph<W>, subset: &[usize]) -> Result<()> {
    match g.first_violation_within(subset) {
        Some(t) => {
            let (a, c) = t.ends();
            Err(Error::NotMetric { a, b: t.apex, c })
        }
        None => Ok(()),
    }
}

/// Christofides tour on `subset`, returned in canonical form.
pub fn christofides<W: Weight>(g: &WeightedGraph<W>, subset: &[usize]) -> Result<Tour> {
    if subset.is_empty() {
        return Err(Error::InvalidGraph("empty subset".into()));
    }
    require_metric(g, subset)?;
    let mut vs = subset.to_vec();
    vs.sort_unstable();
    if vs.len() <= 2 {
        return Ok(Tour::new(g, vs));
    }
    let tree = mst(&vs, |a, b| Some(g.w(a, b)))?;
    let mut multi = MultiEdgeSet::new(g.n());
    multi.extend(tree.edges().iter().copied());
    let odd = multi.odd_vertices();
    let m = min_weight_perfect_matching(&odd, |a, b| g.w(a, b))?;
    multi.extend(m.pairs.iter().map(|&(a, b)| g.edge(a, b)));
    let walk = WalkWithRepeats::new(g, eulerian_tour(&multi)?);
    debug_assert_eq!(walk.total_weight, multi.total_weight());
    Ok(shortcut_on(g, &walk, &vs)?.canonical())
}

/// Keep the first appearance of each vertex; `g` must be metric on the walk.
pub fn shortcut_metric<W: Weight>(walk: &WalkWithRepeats, g: &WeightedGraph<W>) -> Result<Tour> {
    let mut vs = walk.order.clone();
    vs.sort_unstable();
    vs.dedup();
    require_metric(g, &vs)?;
    shortcut_on(g, walk, &vs)
}

fn shortcut_on<W: Weight>(g: &WeightedGraph<W>, walk: &WalkWithRepeats, subset: &[usize]) -> Result<Tour> {
    let mut seen = vec![false; g.n()];
    for &v in &walk.order {
        seen[v] = true;
    }
    if let Some(&v) = subset.iter().find(|&&v| !seen[v]) {
        return Err(Error::IncompleteCover(v));
    }
    let mut w = Walk::new(walk.order.clone());
    w.drop_repeats(|_| true, |a, b| g.w(a, b).wide())?;
    let tour = Tour::new(g, w.order());
    if tour.total_weight > walk.total_weight {
        return Err(Error::Internal("shortcutting increased the walk weight".into()));
    }
    Ok(tour)
}
