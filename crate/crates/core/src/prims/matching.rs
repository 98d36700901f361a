use super::blossom::max_weight_matching;
use super::Matching;
use crate::error::{Error, Result};
use crate::weight::Weight;

/// Sets up to this size are matched by subset DP; larger ones by blossom.
pub const MATCHING_DP_LIMIT: usize = 16;

/// Minimum-weight perfect matching on `vertices`.
///
/// On the DP path ties resolve to the lexicographically smallest pair list
/// (lowest free vertex takes the smallest optimal partner).
pub fn min_weight_perfect_matching<W: Weight>(
    vertices: &[usize],
    weight: impl Fn(usize, usize) -> W,
) -> Result<Matching<W>> {
    let k = vertices.len();
    if k % 2 == 1 {
        return Err(Error::OddSet(k));
    }
    if k == 0 {
        return Ok(Matching::empty());
    }
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() != k {
        return Err(Error::Internal("duplicate vertex in matching set".into()));
    }
    let local = if k <= MATCHING_DP_LIMIT { dp(&vs, &weight) } else { blossom(&vs, &weight)? };
    let mut pairs: Vec<(usize, usize)> = local.into_iter().map(|(i, j)| (vs[i], vs[j])).collect();
    pairs.sort_unstable();
    let weights: Vec<W> = pairs.iter().map(|&(a, b)| weight(a, b)).collect();
    let total_weight = weights.iter().map(|w| w.wide()).sum();
    Ok(Matching { pairs, weights, total_weight })
}

fn dp<W: Weight>(vs: &[usize], weight: &impl Fn(usize, usize) -> W) -> Vec<(usize, usize)> {
    let k = vs.len();
    let mut w = vec![0u128; k * k];
    for i in 0..k {
        for j in i + 1..k {
            w[i * k + j] = weight(vs[i], vs[j]).wide();
        }
    }
    let full = (1usize << k) - 1;
    // best[mask] = cheapest way to match the vertices outside `mask`
    let mut best = vec![u128::MAX; 1 << k];
    best[full] = 0;
    for mask in (0..full).rev() {
        if (mask.count_ones() as usize) % 2 == 1 {
            continue;
        }
        let i = (!mask).trailing_zeros() as usize;
        let mut b = u128::MAX;
        for j in i + 1..k {
            if mask & (1 << j) == 0 {
                let rest = best[mask | 1 << i | 1 << j];
                b = b.min(rest + w[i * k + j]);
            }
        }
        best[mask] = b;
    }
    let mut pairs = Vec::with_capacity(k / 2);
    let mut mask = 0usize;
    while mask != full {
        let i = (!mask).trailing_zeros() as usize;
        let j = (i + 1..k)
            .find(|&j| mask & (1 << j) == 0 && best[mask | 1 << i | 1 << j] + w[i * k + j] == best[mask])
            .expect("dp reconstruction");
        pairs.push((i, j));
        mask |= 1 << i | 1 << j;
    }
    pairs
}

fn blossom<W: Weight>(vs: &[usize], weight: &impl Fn(usize, usize) -> W) -> Result<Vec<(usize, usize)>> {
    let k = vs.len();
    let mut raw = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            raw.push((i, j, weight(vs[i], vs[j]).wide() as i128));
        }
    }
    let c = raw.iter().map(|e| e.2).max().unwrap_or(0) + 1;
    let edges = raw.into_iter().map(|(i, j, w)| (i, j, 2 * (c - w))).collect();
    let mate = max_weight_matching(k, edges, true);
    let mut pairs = Vec::with_capacity(k / 2);
    for (i, &m) in mate.iter().enumerate() {
        if m == usize::MAX {
            return Err(Error::Internal(format!("blossom left vertex {} unmatched", vs[i])));
        }
        if i < m {
            pairs.push((i, m));
        }
    }
    Ok(pairs)
}
