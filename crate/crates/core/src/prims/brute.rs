use super::Tour;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::weight::Weight;

pub const BRUTE_FORCE_CAP: usize = 12;

/// Exact optimum by depth-first enumeration of tours from vertex 0 with the
/// second vertex below the last (each cycle once). Branches are cut with a
/// per-vertex cheapest-edge bound, so the result is the lexicographically
/// smallest canonical optimum.
pub fn brute_force_tour<W: Weight>(g: &WeightedGraph<W>) -> Result<Tour> {
    let n = g.n();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded { what: "brute-force instance", size: n, cap: BRUTE_FORCE_CAP });
    }
    if n <= 3 {
        return Ok(Tour::new(g, (0..n).collect()));
    }
    let w: Vec<u128> = (0..n * n).map(|i| g.w(i / n, i % n).wide()).collect();
    let cheapest: Vec<u128> =
        (0..n).map(|v| (0..n).filter(|&u| u != v).map(|u| w[v * n + u]).min().unwrap()).collect();

    let mut s = Search {
        n,
        w,
        cheapest,
        order: vec![0],
        used: vec![false; n],
        best: nearest_neighbour(g) + 1,
        best_order: Vec::new(),
    };
    s.used[0] = true;
    let rest: u128 = s.cheapest.iter().sum();
    s.dfs(0, rest);
    Ok(Tour { order: s.best_order, total_weight: s.best })
}

struct Search {
    n: usize,
    w: Vec<u128>,
    cheapest: Vec<u128>,
    order: Vec<usize>,
    used: Vec<bool>,
    best: u128,
    best_order: Vec<usize>,
}

impl Search {
    /// `rest` is the sum of cheapest edges over unvisited vertices and 0.
    fn dfs(&mut self, partial: u128, rest: u128) {
        let n = self.n;
        let cur = *self.order.last().unwrap();
        if self.order.len() == n {
            let total = partial + self.w[cur * n];
            if self.order[1] < cur && total < self.best {
                self.best = total;
                self.best_order = self.order.clone();
            }
            return;
        }
        if partial + rest >= self.best {
            return;
        }
        for v in 1..n {
            if self.used[v] {
                continue;
            }
            // the last vertex must exceed the second
            if self.order.len() == n - 1 && self.order.len() > 1 && v < self.order[1] {
                continue;
            }
            self.used[v] = true;
            self.order.push(v);
            self.dfs(partial + self.w[cur * n + v], rest - self.cheapest[v]);
            self.order.pop();
            self.used[v] = false;
        }
    }
}

fn nearest_neighbour<W: Weight>(g: &WeightedGraph<W>) -> u128 {
    let n = g.n();
    let mut used = vec![false; n];
    let mut order = vec![0];
    used[0] = true;
    for _ in 1..n {
        let cur = *order.last().unwrap();
        let next = (0..n).filter(|&v| !used[v]).min_by_key(|&v| (g.w(cur, v), v)).unwrap();
        used[next] = true;
        order.push(next);
    }
    g.cycle_weight(&order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prims::{canonicalize, held_karp_path, held_karp_tour};
    use crate::testutil::{random_graph, rng};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;

    fn example4() -> WeightedGraph<u32> {
        WeightedGraph::from_fn(4, |i, j| if (i, j) == (0, 2) { 5 } else { 1 }).unwrap()
    }

    /// Plain permutation enumeration, no pruning.
    fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permutations(items, k + 1, visit);
            items.swap(k, i);
        }
    }

    fn enumerate_opt(g: &WeightedGraph<u32>) -> u128 {
        let n = g.n();
        let mut rest: Vec<usize> = (1..n).collect();
        let mut best = u128::MAX;
        permutations(&mut rest, 0, &mut |p| {
            let mut o = vec![0];
            o.extend_from_slice(p);
            best = best.min(g.cycle_weight(&o));
        });
        best
    }

    #[test]
    fn small_instances() {
        let g = random_graph(3, 9, 1, 9);
        let t = brute_force_tour(&g).unwrap();
        assert_eq!(t.order, vec![0, 1, 2]);
        let t = brute_force_tour(&example4()).unwrap();
        assert_eq!(t.total_weight, 4);
        assert_eq!(t.order, vec![0, 1, 2, 3]);
        let big = random_graph(13, 1, 1, 9);
        assert!(matches!(brute_force_tour(&big), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn held_karp_example_and_degenerate() {
        let g = example4();
        let t = held_karp_tour(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!((t.order.clone(), t.total_weight), (vec![0, 1, 2, 3], 4));
        assert_eq!(held_karp_tour(&g, &[2]).unwrap().total_weight, 0);
        let two = held_karp_tour(&g, &[2, 0]).unwrap();
        assert_eq!((two.order, two.total_weight), (vec![0, 2], 10));
        let many: Vec<usize> = (0..21).collect();
        let g21 = random_graph(21, 0, 1, 5);
        assert!(matches!(held_karp_tour(&g21, &many), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn brute_force_matches_enumeration() {
        for seed in 0..10 {
            let g = random_graph(8, seed, 0, 40);
            assert_eq!(brute_force_tour(&g).unwrap().total_weight, enumerate_opt(&g));
        }
    }

    #[test]
    fn held_karp_nine_matches_enumeration() {
        for seed in 0..3 {
            let g = random_graph(9, 50 + seed, 0, 99);
            assert_eq!(held_karp_tour(&g, &(0..9).collect::<Vec<_>>()).unwrap().total_weight, enumerate_opt(&g));
        }
    }

    #[test]
    fn oracles_agree_on_tour_and_order() {
        for seed in 0..30 {
            let n = 4 + seed as usize % 7;
            // narrow range forces many ties
            let g = random_graph(n, 200 + seed, 1, 4);
            let all: Vec<usize> = (0..n).collect();
            let hk = held_karp_tour(&g, &all).unwrap();
            let bf = brute_force_tour(&g).unwrap();
            assert_eq!(hk, bf, "seed {seed}");
            let mut c = hk.order.clone();
            canonicalize(&mut c);
            assert_eq!(c, hk.order);
        }
    }

    #[test]
    fn held_karp_on_subset_uses_global_ids() {
        let g = random_graph(10, 4, 1, 50);
        let sub = [9, 2, 7, 4];
        let t = held_karp_tour(&g, &sub).unwrap();
        let mut best = u128::MAX;
        let mut rest = vec![4, 7, 9];
        permutations(&mut rest, 0, &mut |p| {
            best = best.min(g.cycle_weight(&[2, p[0], p[1], p[2]]));
        });
        assert_eq!(t.total_weight, best);
        assert_eq!(t.order[0], 2);
    }

    #[test]
    fn path_cases() {
        let g = random_graph(6, 3, 1, 50);
        let p = held_karp_path(&g, &[1, 4], 4, 1).unwrap();
        assert_eq!((p.order, p.total_weight), (vec![4, 1], g.w(1, 4) as u128));
        assert_eq!(held_karp_path(&g, &[3], 3, 3).unwrap().order, vec![3]);
        assert!(matches!(held_karp_path(&g, &[1, 2], 1, 1), Err(Error::InvalidEndpoints { .. })));
        assert!(matches!(held_karp_path(&g, &[1, 2], 1, 5), Err(Error::InvalidEndpoints { .. })));
        // a cheap path hidden in a heavy clique
        let line = [3, 0, 5, 1, 4, 2];
        let pos = |v: usize| line.iter().position(|&x| x == v).unwrap();
        let h = WeightedGraph::<u32>::from_fn(6, |i, j| if pos(i).abs_diff(pos(j)) == 1 { 1 } else { 100 }).unwrap();
        let p = held_karp_path(&h, &[0, 1, 2, 3, 4, 5], 3, 2).unwrap();
        assert_eq!(p.order, line.to_vec());
        assert_eq!(p.total_weight, 5);
    }

    #[test]
    fn path_matches_enumeration_n8() {
        for seed in 0..5 {
            let g = random_graph(8, 300 + seed, 0, 60);
            let (s, t) = (seed as usize % 8, (seed as usize + 3) % 8);
            let mut mid: Vec<usize> = (0..8).filter(|&v| v != s && v != t).collect();
            let mut best = u128::MAX;
            permutations(&mut mid, 0, &mut |p| {
                let mut o = vec![s];
                o.extend_from_slice(p);
                o.push(t);
                best = best.min(g.path_weight(&o));
            });
            let p = held_karp_path(&g, &(0..8).collect::<Vec<_>>(), s, t).unwrap();
            assert_eq!(p.total_weight, best);
            assert_eq!(g.path_weight(&p.order), best);
            assert_eq!((p.order[0], p.order[7]), (s, t));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn held_karp_equals_brute_force(seed in any::<u64>(), n in 1usize..=10) {
            let g = random_graph(n, seed, 0, 1000);
            let all: Vec<usize> = (0..n).collect();
            let hk = held_karp_tour(&g, &all).unwrap();
            let bf = brute_force_tour(&g).unwrap();
            prop_assert_eq!(hk.total_weight, bf.total_weight);
            prop_assert_eq!(g.cycle_weight(&hk.order), hk.total_weight);
            prop_assert!(hk.is_hamiltonian(n));
        }

        #[test]
        fn held_karp_is_no_worse_than_shuffles(seed in any::<u64>(), n in 3usize..=9) {
            let g = random_graph(n, seed, 0, 1000);
            let hk = held_karp_tour(&g, &(0..n).collect::<Vec<_>>()).unwrap();
            let mut r = rng(seed);
            let mut o: Vec<usize> = (0..n).collect();
            for _ in 0..50 {
                o.shuffle(&mut r);
                prop_assert!(hk.total_weight <= g.cycle_weight(&o));
            }
        }
    }
}
