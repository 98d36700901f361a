use super::Tour;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::weight::Weight;

/// Largest subset the bitmask tables accept.
pub const HELD_KARP_CAP: usize = 20;

/// Open vertex sequence with its weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub order: Vec<usize>,
    pub total_weight: u128,
}

fn prepare(subset: &[usize]) -> Result<Vec<usize>> {
    if subset.is_empty() {
        return Err(Error::InvalidGraph("empty subset".into()));
    }
    let mut vs = subset.to_vec();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() != subset.len() {
        return Err(Error::InvalidGraph("subset has repeated vertices".into()));
    }
    if vs.len() > HELD_KARP_CAP {
        return Err(Error::CapExceeded { what: "held-karp subset", size: vs.len(), cap: HELD_KARP_CAP });
    }
    Ok(vs)
}

/// Optimal tour on `subset`. The result is the lexicographically smallest
/// optimal cyclic order starting at the lowest vertex, hence canonical.
pub fn held_karp_tour<W: Weight>(g: &WeightedGraph<W>, subset: &[usize]) -> Result<Tour> {
    held_karp_tour_by(subset, |a, b| g.w(a, b))
}

/// As [`held_karp_tour`] over an arbitrary symmetric weight oracle.
pub fn held_karp_tour_by<W: Weight>(subset: &[usize], weight: impl Fn(usize, usize) -> W) -> Result<Tour> {
    let vs = prepare(subset)?;
    let k = vs.len();
    if k <= 2 {
        let total_weight = if k == 2 { 2 * weight(vs[0], vs[1]).wide() } else { 0 };
        return Ok(Tour { order: vs, total_weight });
    }
    let (order, total_weight) = solve(&vs, &weight, None);
    Ok(Tour { order, total_weight })
}

/// Optimal Hamiltonian path from `s` to `t` on `subset`; ties go to the
/// lexicographically smallest sequence.
pub fn held_karp_path<W: Weight>(g: &WeightedGraph<W>, subset: &[usize], s: usize, t: usize) -> Result<Path> {
    held_karp_path_by(subset, s, t, |a, b| g.w(a, b))
}

pub fn held_karp_path_by<W: Weight>(
    subset: &[usize],
    s: usize,
    t: usize,
    weight: impl Fn(usize, usize) -> W,
) -> Result<Path> {
    let vs = prepare(subset)?;
    let k = vs.len();
    if !vs.contains(&s) || !vs.contains(&t) || (s == t) != (k == 1) {
        return Err(Error::InvalidEndpoints { s, t });
    }
    if k == 1 {
        return Ok(Path { order: vec![s], total_weight: 0 });
    }
    // put s at local 0 and keep the rest sorted
    let mut local = vec![s];
    local.extend(vs.iter().copied().filter(|&v| v != s));
    let t_local = local.iter().position(|&v| v == t).unwrap();
    let (order, total_weight) = solve(&local, &weight, Some(t_local));
    Ok(Path { order, total_weight })
}

/// Cost-to-finish DP with `vs[0]` fixed first. With `end = None` the walk
/// closes back to `vs[0]`; otherwise it must finish at `vs[end]`. Forward
/// reconstruction takes the smallest optimal successor at every step.
fn solve<W: Weight>(vs: &[usize], weight: &impl Fn(usize, usize) -> W, end: Option<usize>) -> (Vec<usize>, u128) {
    let k = vs.len();
    let m = k - 1;
    let mut w = vec![0u64; k * k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                w[i * k + j] = weight(vs[i], vs[j]).to_u64().expect("validated weight fits u64");
            }
        }
    }
    const INF: u64 = u64::MAX;
    let full = (1usize << m) - 1;
    // f[mask * m + (j - 1)]: vertex j is current, `mask` over 1..k visited
    let mut f = vec![INF; (1usize << m) * m];
    for j in 1..k {
        f[full * m + j - 1] = match end {
            None => w[j * k],
            Some(e) if e == j => 0,
            Some(_) => INF,
        };
    }
    for mask in (1..full).rev() {
        for j in 1..k {
            if mask & (1 << (j - 1)) == 0 {
                continue;
            }
            let mut best = INF;
            for l in 1..k {
                let bit = 1 << (l - 1);
                if mask & bit != 0 {
                    continue;
                }
                let rest = f[(mask | bit) * m + l - 1];
                if rest != INF {
                    best = best.min(rest + w[j * k + l]);
                }
            }
            f[mask * m + j - 1] = best;
        }
    }
    let opt = (1..k).map(|l| f[(1 << (l - 1)) * m + l - 1].saturating_add(w[l])).min().unwrap();
    let mut order = Vec::with_capacity(k);
    order.push(vs[0]);
    let (mut mask, mut cur, mut remaining) = (0usize, 0usize, opt);
    for _ in 1..k {
        // local indices past 0 are in increasing global order
        let next = (1..k)
            .find(|&l| {
                let bit = 1 << (l - 1);
                let rest = f[(mask | bit) * m + l - 1];
                mask & bit == 0 && rest != INF && rest + w[cur * k + l] == remaining
            })
            .expect("held-karp reconstruction");
        remaining -= w[cur * k + next];
        mask |= 1 << (next - 1);
        cur = next;
        order.push(vs[next]);
    }
    (order, opt as u128)
}
