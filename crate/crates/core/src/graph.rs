use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::Weight;

/// Complete symmetric graph with non-negative integer weights.
#[derive(Debug, Clone)]
pub struct WeightedGraph<W> {
    n: usize,
    w: Vec<W>,
    violations: OnceLock<Vec<TriangleViolation>>,
}

/// A triple `a < b < c` together with the vertex at which the triangle
/// inequality fails: `w(x, y) > w(x, apex) + w(apex, y)` for the other two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TriangleViolation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub apex: usize,
}

impl TriangleViolation {
    /// The two vertices joined by the overlong edge.
    pub fn ends(&self) -> (usize, usize) {
        let mut it = [self.a, self.b, self.c].into_iter().filter(|&v| v != self.apex);
        (it.next().unwrap(), it.next().unwrap())
    }

    pub fn vertices(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }
}

impl<W: Weight> WeightedGraph<W> {
    /// Build from a closure evaluated on every pair `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> W) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        let mut w = vec![W::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let x = f(i, j);
                w[i * n + j] = x;
                w[j * n + i] = x;
            }
        }
        Self::checked(n, w)
    }

    /// Build from a full matrix, checking symmetry and the zero diagonal.
    pub fn from_matrix(rows: &[Vec<W>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        let mut w = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGraph(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            w.extend_from_slice(row);
        }
        for i in 0..n {
            if w[i * n + i] != W::zero() {
                return Err(Error::InvalidGraph(format!("w({i},{i}) is not zero")));
            }
            for j in i + 1..n {
                if w[i * n + j] != w[j * n + i] {
                    return Err(Error::InvalidGraph(format!("w({i},{j}) != w({j},{i})")));
                }
            }
        }
        Self::checked(n, w)
    }

    fn checked(n: usize, w: Vec<W>) -> Result<Self> {
        let cap = W::max_value().wide().min(i64::MAX as u128);
        let mut total: u128 = 0;
        for x in &w {
            total += x.wide();
            if total > cap {
                return Err(Error::InvalidGraph("sum of all weights overflows".into()));
            }
        }
        Ok(WeightedGraph { n, w, violations: OnceLock::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn w(&self, i: usize, j: usize) -> W {
        self.w[i * self.n + j]
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Upper bound on any walk total that uses each matrix entry a bounded
    /// number of times; all totals are kept in `u128`.
    pub fn total_weight(&self) -> u128 {
        self.w.iter().map(|x| x.wide()).sum::<u128>() / 2
    }

    /// Cyclic weight of a vertex sequence, closing edge included.
    pub fn cycle_weight(&self, order: &[usize]) -> u128 {
        if order.len() < 2 {
            return 0;
        }
        let mut s: u128 = order.windows(2).map(|p| self.w(p[0], p[1]).wide()).sum();
        s += self.w(order[order.len() - 1], order[0]).wide();
        s
    }

    pub fn path_weight(&self, order: &[usize]) -> u128 {
        order.windows(2).map(|p| self.w(p[0], p[1]).wide()).sum()
    }

    /// Every failing (triple, apex) pair, sorted; computed once per instance.
    pub fn violating_triangles(&self) -> &[TriangleViolation] {
        self.violations.get_or_init(|| {
            let all: Vec<usize> = self.vertices().collect();
            self.violations_within(&all)
        })
    }

    /// Violations among the given vertices only.
    pub fn violations_within(&self, subset: &[usize]) -> Vec<TriangleViolation> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        let mut out = Vec::new();
        for (x, &a) in s.iter().enumerate() {
            for (y, &b) in s.iter().enumerate().skip(x + 1) {
                let ab = self.w(a, b).wide();
                for &c in &s[y + 1..] {
                    let ac = self.w(a, c).wide();
                    let bc = self.w(b, c).wide();
                    if ac > ab + bc {
                        out.push(TriangleViolation { a, b, c, apex: b });
                    }
                    if ab > ac + bc {
                        out.push(TriangleViolation { a, b, c, apex: c });
                    }
                    if bc > ab + ac {
                        out.push(TriangleViolation { a, b, c, apex: a });
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// First violation inside `subset`, if any.
    pub fn first_violation_within(&self, subset: &[usize]) -> Option<TriangleViolation> {
        if subset.len() == self.n {
            return self.violating_triangles().first().copied();
        }
        self.violations_within(subset).first().copied()
    }

    pub fn is_metric(&self) -> bool {
        self.violating_triangles().is_empty()
    }

    pub fn is_metric_on(&self, subset: &[usize]) -> bool {
        self.first_violation_within(subset).is_none()
    }

    /// Largest entry, used by generators and matching transforms.
    pub fn max_weight(&self) -> W {
        self.w.iter().copied().max().unwrap_or_else(W::zero)
    }

    /// Serialize to the line-oriented instance format.
    pub fn to_instance_string(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.n).unwrap();
        for i in 0..self.n.saturating_sub(1) {
            let row: Vec<String> = (i + 1..self.n).map(|j| self.w(i, j).to_string()).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }

    /// Parse the line-oriented instance format: `n`, then row `i` of the
    /// strict upper triangle on each of the next `n - 1` lines. `#` starts a
    /// comment; blank lines are skipped.
    pub fn parse_instance(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter_map(|(k, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then_some((k + 1, body))
        });
        let (first, head) = lines.next().ok_or(Error::Parse { line: 0, msg: "empty instance".into() })?;
        let n: usize = head
            .parse()
            .map_err(|_| Error::Parse { line: first, msg: format!("expected vertex count, got {head:?}") })?;
        if n == 0 {
            return Err(Error::Parse { line: first, msg: "vertex count must be positive".into() });
        }
        let mut w = vec![W::zero(); n * n];
        for i in 0..n - 1 {
            let (line, body) = lines.next().ok_or(Error::Parse {
                line: first,
                msg: format!("expected {} weight rows, found {i}", n - 1),
            })?;
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.len() != n - 1 - i {
                return Err(Error::Parse {
                    line,
                    msg: format!("row {i} needs {} weights, found {}", n - 1 - i, toks.len()),
                });
            }
            for (off, tok) in toks.iter().enumerate() {
                let x: W = tok
                    .parse()
                    .map_err(|_| Error::Parse { line, msg: format!("bad weight {tok:?}") })?;
                let j = i + 1 + off;
                w[i * n + j] = x;
                w[j * n + i] = x;
            }
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, msg: "trailing data after last row".into() });
        }
        Self::checked(n, w).map_err(|e| Error::Parse { line: first, msg: e.to_string() })
    }
}
