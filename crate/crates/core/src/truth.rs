//! Ground-truth guesses read off an optimal tour, and the weight bounds the
//! approximation proofs rely on, checked on them.

use crate::alg_p::{alg2_guess, build_cst, parity_matching_alg2, ChainSet};
use crate::alg_q::{
    alg4_evaluate, assemble, connect_for, tree_parity_matchings, unanchored_trees, Contracted, LimbSearch,
    OrderedChainGuess,
};
use crate::analysis::VertexPartition;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::prims::{spanning_t_forest, Tour};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

fn le(name: &'static str, lhs: u128, rhs: u128) -> LemmaCheck {
    LemmaCheck { name, holds: lhs <= rhs, detail: format!("{lhs} <= {rhs}") }
}

fn truth(name: &'static str, holds: bool, detail: impl Into<String>) -> LemmaCheck {
    LemmaCheck { name, holds, detail: detail.into() }
}

/// Maximal bad runs and the good runs after them, in tour order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourSplit {
    pub bad_chains: Vec<Vec<usize>>,
    pub good_chains: Vec<Vec<usize>>,
}

impl TourSplit {
    /// `None` when the tour has no bad or no good vertex.
    pub fn new(order: &[usize], bad: &[bool]) -> Option<Self> {
        let k = order.len();
        let start = (0..k).find(|&i| bad[order[i]] && !bad[order[(i + k - 1) % k]])?;
        let mut bad_chains: Vec<Vec<usize>> = Vec::new();
        let mut good_chains: Vec<Vec<usize>> = Vec::new();
        for i in 0..k {
            let v = order[(start + i) % k];
            let prev_bad = i > 0 && bad[order[(start + i - 1) % k]];
            match (bad[v], i == 0 || prev_bad != bad[v]) {
                (true, true) => bad_chains.push(vec![v]),
                (false, true) => good_chains.push(vec![v]),
                (true, false) => bad_chains.last_mut().unwrap().push(v),
                (false, false) => good_chains.last_mut().unwrap().push(v),
            }
        }
        Some(TourSplit { bad_chains, good_chains })
    }

    /// Limb edges: `b_i` to the first vertex of `R_i`, the last vertex of
    /// `R_i` to `a_{i+1}`.
    pub fn limbs(&self) -> Vec<(usize, usize)> {
        let k = self.bad_chains.len();
        let mut out = Vec::with_capacity(2 * k);
        for i in 0..k {
            let r = &self.good_chains[i];
            out.push((*self.bad_chains[i].last().unwrap(), r[0]));
            out.push((*r.last().unwrap(), self.bad_chains[(i + 1) % k][0]));
        }
        out
    }
}

/// Bounds for the tree and matching of ALG.2 on the chains of `opt`.
pub fn lemma_checks_p<W: Weight>(g: &WeightedGraph<W>, part: &VertexPartition, opt: &Tour) -> Result<Vec<LemmaCheck>> {
    let bad = part.bad_mask(g.n());
    let split = TourSplit::new(&opt.order, &bad).ok_or_else(|| Error::Internal("tour has no bad or no good vertex".into()))?;
    let chains = ChainSet::new(split.bad_chains);
    let cst = build_cst(g, &chains, &part.good)?;
    let pm = parity_matching_alg2(g, &chains, &cst)?;
    let o = opt.total_weight;
    let mut out = vec![le("w(F_A) <= OPT", cst.total_weight(), o), le("2 w(M_A) <= OPT", 2 * pm.total_weight(), o)];
    let t = alg2_guess(g, &chains, part, &bad)?;
    out.push(le("2 w(ALG.2 on true chains) <= 3 OPT", 2 * t.total_weight, 3 * o));
    Ok(out)
}

/// Builds the ground-truth ordered guess, limbs and connection for `opt` and
/// checks every bound used by the ALG.4 analysis on them.
pub fn lemma_checks_q<W: Weight>(g: &WeightedGraph<W>, part: &VertexPartition, opt: &Tour) -> Result<Vec<LemmaCheck>> {
    let n = g.n();
    let q = part.size();
    let bad = part.bad_mask(n);
    let split = TourSplit::new(&opt.order, &bad).ok_or_else(|| Error::Internal("tour has no bad or no good vertex".into()))?;
    let k = split.bad_chains.len();
    let o = opt.total_weight;
    let mut out = Vec::new();

    let w_a: u128 = split.bad_chains.iter().map(|c| g.path_weight(c)).sum();
    let w_r: u128 = split.good_chains.iter().map(|c| g.path_weight(c)).sum();
    let limbs = split.limbs();
    let w_b: u128 = limbs.iter().map(|&(a, b)| g.w(a, b).wide()).sum();
    out.push(truth(
        "OPT = w(A) + w(B) + w(R), |A| = |B|/2 = |R|",
        w_a + w_b + w_r == o && limbs.len() == 2 * k && split.good_chains.len() == k,
        format!("{w_a} + {w_b} + {w_r} vs {o}; |A| {k}, |B| {}, |R| {}", limbs.len(), split.good_chains.len()),
    ));

    let forest = spanning_t_forest(&part.good, |a, b| g.w(a, b), k)?;
    out.push(le("|F| <= q", forest.len() as u128, q as u128));
    out.push(le("w(F) <= w(R)", forest.total_weight(), w_r));

    let guess = OrderedChainGuess {
        chains: split.bad_chains.clone(),
        anchor_counts: split.good_chains.iter().map(|r| if r.len() == 1 { 1 } else { 2 }).collect(),
    };
    let slots = guess.slots();
    let real: Vec<usize> = (0..slots.len())
        .map(|j| {
            let r = &split.good_chains[slots[j].gap];
            // the second pair slot of a gap sits next to a_{i+1}
            if j > 0 && slots[j - 1].gap == slots[j].gap {
                r[r.len() - 1]
            } else {
                r[0]
            }
        })
        .collect();
    let search = LimbSearch::new(g, &guess, &forest, q);
    let tree = forest.tree_index(n);
    let mut anchors = vec![usize::MAX; real.len()];
    for (j, &x) in real.iter().enumerate() {
        if search.slot_ranking(j, tree[x]).contains(&x) {
            anchors[j] = x;
        }
    }
    for (j, &x) in real.iter().enumerate() {
        if anchors[j] == usize::MAX {
            anchors[j] = search.slot_ranking(j, tree[x]).iter().copied().find(|v| !anchors.contains(v)).unwrap_or(usize::MAX);
        }
    }
    let Some(limb_guess) = search.build(&anchors) else {
        out.push(truth("true limb guess is enumerated", false, format!("anchors {anchors:?} for real {real:?}")));
        return Ok(out);
    };
    out.push(le("w(B') <= w(B)", limb_guess.weight(), w_b));

    let mut partition = Vec::new();
    for t in unanchored_trees(&guess, &limb_guess, &forest) {
        let gap = (0..k).find(|&i| split.good_chains[i].len() >= 2 && split.good_chains[i].iter().any(|&v| tree[v] == t));
        match gap {
            Some(i) => partition.push((t, i)),
            None => {
                out.push(truth("unanchored tree lies on a long good chain", false, format!("tree {t}")));
                return Ok(out);
            }
        }
    }
    let contracted = Contracted::new(g, &forest);
    let connect = connect_for(&guess, &limb_guess, &contracted, &partition)?;
    out.push(le("w(R') <= w(R)", connect.weight(), w_r));

    let g_a = assemble(g, &guess, &limb_guess, &connect, &forest);
    out.push(truth("G_A connected", g_a.is_connected() && !g_a.degrees().contains(&0), ""));
    let odd_bad: Vec<usize> = part.bad.iter().copied().filter(|&v| g_a.degree(v) % 2 == 1).collect();
    out.push(truth("no odd bad vertex in G_A", odd_bad.is_empty(), format!("{odd_bad:?}")));
    let uneven: Vec<usize> = (0..forest.len())
        .filter(|&t| forest.trees[t].vertices.iter().filter(|&&v| g_a.degree(v) % 2 == 1).count() % 2 == 1)
        .collect();
    out.push(truth("even odd-count per tree", uneven.is_empty(), format!("trees {uneven:?}")));
    if !uneven.is_empty() {
        return Ok(out);
    }
    let matchings = tree_parity_matchings(g, &g_a, &forest)?;
    let w_m: u128 = matchings.iter().map(|m| m.total_weight).sum();
    out.push(le("w(M) <= w(F)", w_m, forest.total_weight()));
    match alg4_evaluate(g, &guess, &limb_guess, &connect, &forest, &bad) {
        Ok(t) => out.push(le("w(ALG.4 on true guess) <= 3 OPT", t.total_weight, 3 * o)),
        Err(e) => out.push(truth("ALG.4 on true guess yields a tour", false, e.to_string())),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{bad_vertices_p, min_violating_set};
    use crate::generate::{generate, GeneratorKind, GeneratorSpec};
    use crate::prims::brute_force_tour;

    #[test]
    fn split_alternates() {
        let bad = [true, true, false, false, true, false];
        let s = TourSplit::new(&[2, 3, 4, 5, 0, 1], &bad).unwrap();
        assert_eq!(s.bad_chains, vec![vec![4], vec![0, 1]]);
        assert_eq!(s.good_chains, vec![vec![5], vec![2, 3]]);
        assert_eq!(s.limbs(), vec![(4, 5), (5, 0), (1, 2), (3, 4)]);
        assert!(TourSplit::new(&[0, 1], &[true, true]).is_none());
        assert!(TourSplit::new(&[0, 1], &[false, false]).is_none());
    }

    #[test]
    fn lemmas_hold_on_planted_p() {
        for seed in 0..6 {
            let g = generate(&GeneratorSpec::new(GeneratorKind::PlantedP, 9, 3 + seed as usize % 3, seed)).unwrap();
            let part = bad_vertices_p(&g);
            let opt = brute_force_tour(&g).unwrap();
            for c in lemma_checks_p(&g, &part, &opt).unwrap() {
                assert!(c.holds, "seed {seed}: {} ({})", c.name, c.detail);
            }
        }
    }

    #[test]
    fn lemmas_hold_on_planted_q() {
        for seed in 0..9 {
            let q = 1 + seed as usize % 3;
            let g = generate(&GeneratorSpec::new(GeneratorKind::PlantedQ, 9, q, seed)).unwrap();
            let part = min_violating_set(&g, None).unwrap();
            let opt = brute_force_tour(&g).unwrap();
            let checks = lemma_checks_q(&g, &part, &opt).unwrap();
            for c in &checks {
                assert!(c.holds, "seed {seed}: {} ({})", c.name, c.detail);
            }
            assert_eq!(checks.len(), 10);
        }
    }
}
