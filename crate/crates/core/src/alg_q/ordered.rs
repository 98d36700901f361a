use crate::chains::enumerate_bad_chains;
use crate::error::{Error, Result};

/// Bad chains in tour order `a_1..b_1, a_2..b_2, ...` with the number of
/// anchors `anchor_counts[i]` in the gap between `b_i` and `a_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedChainGuess {
    pub chains: Vec<Vec<usize>>,
    pub anchor_counts: Vec<u8>,
}

/// One anchor position: a single anchor touches `y` and `z`, a pair anchor
/// only `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub gap: usize,
    pub y: usize,
    pub z: Option<usize>,
}

impl Slot {
    pub fn is_single(&self) -> bool {
        self.z.is_some()
    }

    pub fn bad_neighbours(&self) -> impl Iterator<Item = usize> {
        std::iter::once(self.y).chain(self.z)
    }
}

impl OrderedChainGuess {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Anchor slots in tour order.
    pub fn slots(&self) -> Vec<Slot> {
        let k = self.chains.len();
        let mut out = Vec::new();
        for i in 0..k {
            let b = *self.chains[i].last().unwrap();
            let a = self.chains[(i + 1) % k][0];
            if self.anchor_counts[i] == 1 {
                out.push(Slot { gap: i, y: b, z: Some(a) });
            } else {
                out.push(Slot { gap: i, y: b, z: None });
                out.push(Slot { gap: i, y: a, z: None });
            }
        }
        out
    }

    /// The same cyclic structure read in the other direction, rotated so
    /// that the chain holding the smallest vertex comes first.
    pub fn reflected(&self) -> Self {
        let k = self.chains.len();
        let chains: Vec<Vec<usize>> = self.chains.iter().rev().map(|c| c.iter().rev().copied().collect()).collect();
        // gap after reversed chain j (originally chain k-1-j) is the original gap before it
        let f: Vec<u8> = (0..k).map(|j| self.anchor_counts[(2 * k - 2 - j) % k]).collect();
        OrderedChainGuess { chains, anchor_counts: f }.rotated()
    }

    pub(crate) fn rotated(mut self) -> Self {
        let min = self.chains.iter().flatten().copied().min().unwrap();
        let r = self.chains.iter().position(|c| c.contains(&min)).unwrap();
        self.chains.rotate_left(r);
        self.anchor_counts.rotate_left(r);
        self
    }

    /// Canonical representative of the rotation and reflection class.
    pub fn canonical(self) -> Self {
        let r = self.reflected();
        let s = self.rotated();
        if r < s {
            r
        } else {
            s
        }
    }
}

/// Every ordered chain structure over `bad`, once per rotation/reflection
/// class, with every anchor-count vector.
pub fn enumerate_ordered_chains(bad: &[usize], cap: usize) -> Result<Vec<OrderedChainGuess>> {
    if bad.len() > cap {
        return Err(Error::CapExceeded { what: "violating set size", size: bad.len(), cap });
    }
    if bad.is_empty() {
        return Ok(Vec::new());
    }
    let min = *bad.iter().min().unwrap();
    let mut out = Vec::new();
    for set in enumerate_bad_chains(bad, cap)? {
        let first = set.chains.iter().position(|c| c.contains(&min)).unwrap();
        let mut rest: Vec<Vec<usize>> = set.chains.clone();
        let head = rest.remove(first);
        let k = set.chains.len();
        for order in permutations(rest) {
            let mut seq = vec![head.clone()];
            seq.extend(order);
            for orient in 0..1usize << k {
                if (0..k).any(|i| orient >> i & 1 == 1 && seq[i].len() == 1) {
                    continue;
                }
                let chains: Vec<Vec<usize>> = seq
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if orient >> i & 1 == 1 { c.iter().rev().copied().collect() } else { c.clone() })
                    .collect();
                for fs in 0..1usize << k {
                    let f = (0..k).map(|i| 1 + (fs >> i & 1) as u8).collect();
                    let guess = OrderedChainGuess { chains: chains.clone(), anchor_counts: f };
                    if guess.reflected() >= guess {
                        out.push(guess);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn permutations<T: Clone>(items: Vec<T>) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.clone();
        let x = rest.remove(i);
        for mut p in permutations(rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Brute force: every permutation of the vertices, cut into a cyclic
    /// sequence of chains, with every f vector; reduced to the minimum over
    /// all rotations and both directions.
    fn oracle(q: usize) -> usize {
        let mut seen = HashSet::new();
        let verts: Vec<usize> = (0..q).collect();
        for perm in permutations(verts) {
            for cuts in 0..1usize << (q - 1) {
                let mut chains = vec![vec![perm[0]]];
                for i in 1..q {
                    if cuts >> (i - 1) & 1 == 1 {
                        chains.push(Vec::new());
                    }
                    chains.last_mut().unwrap().push(perm[i]);
                }
                let k = chains.len();
                for fs in 0..1usize << k {
                    let f: Vec<u8> = (0..k).map(|i| 1 + (fs >> i & 1) as u8).collect();
                    let mut forms = Vec::new();
                    for r in 0..k {
                        let mut c = chains.clone();
                        let mut ff = f.clone();
                        c.rotate_left(r);
                        ff.rotate_left(r);
                        forms.push((c.clone(), ff.clone()));
                        let rc: Vec<Vec<usize>> = c.iter().rev().map(|x| x.iter().rev().copied().collect()).collect();
                        let rf: Vec<u8> = (0..k).map(|j| ff[(2 * k - 2 - j) % k]).collect();
                        for r2 in 0..k {
                            let mut a = rc.clone();
                            let mut b = rf.clone();
                            a.rotate_left(r2);
                            b.rotate_left(r2);
                            forms.push((a, b));
                        }
                    }
                    seen.insert(forms.into_iter().min().unwrap());
                }
            }
        }
        seen.len()
    }

    #[test]
    fn small_counts() {
        assert!(enumerate_ordered_chains(&[], 5).unwrap().is_empty());
        let one = enumerate_ordered_chains(&[4], 5).unwrap();
        assert_eq!(one.len(), 2);
        assert_eq!(enumerate_ordered_chains(&[0, 1], 5).unwrap().len(), 5);
    }

    #[test]
    fn counts_match_brute_force() {
        for q in 1..=4 {
            let got = enumerate_ordered_chains(&(0..q).collect::<Vec<_>>(), 5).unwrap();
            assert_eq!(got.len(), oracle(q), "q = {q}");
            let uniq: HashSet<_> = got.iter().map(|g| g.clone().canonical()).collect();
            assert_eq!(uniq.len(), got.len());
        }
    }

    #[test]
    fn reflection_is_an_involution() {
        for g in enumerate_ordered_chains(&[0, 1, 2, 3], 5).unwrap() {
            assert_eq!(g.reflected().reflected(), g.clone().rotated());
        }
    }

    #[test]
    fn slots_follow_gaps() {
        let g = OrderedChainGuess { chains: vec![vec![0, 1], vec![2]], anchor_counts: vec![1, 2] };
        let s = g.slots();
        assert_eq!(s.len(), 3);
        assert_eq!((s[0].y, s[0].z), (1, Some(2)));
        assert_eq!((s[1].y, s[1].z), (2, None));
        assert_eq!((s[2].y, s[2].z), (0, None));
    }

    #[test]
    fn cap() {
        assert!(matches!(enumerate_ordered_chains(&[0, 1, 2, 3, 4, 5], 5), Err(Error::CapExceeded { .. })));
    }
}
