//! Three families counted by `1/(2n+1) C(3n, n)` and their reflections:
//! ternary trees by internal nodes, even trees by `2n` edges, and
//! non-crossing trees by edges.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::binomial;
use crate::fixed_points::count_fixed;

/// Unlabelled rooted plane tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneTree {
    pub children: Vec<PlaneTree>,
}

impl PlaneTree {
    pub fn leaf() -> Self {
        PlaneTree {
            children: Vec::new(),
        }
    }

    pub fn node(children: Vec<PlaneTree>) -> Self {
        PlaneTree { children }
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(|c| 1 + c.edge_count()).sum()
    }

    pub fn internal_count(&self) -> usize {
        usize::from(!self.children.is_empty())
            + self
                .children
                .iter()
                .map(PlaneTree::internal_count)
                .sum::<usize>()
    }

    /// Children reversed at every node.
    pub fn reflect(&self) -> PlaneTree {
        PlaneTree {
            children: self.children.iter().rev().map(PlaneTree::reflect).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.reflect() == *self
    }

    pub fn is_ternary(&self) -> bool {
        matches!(self.children.len(), 0 | 3) && self.children.iter().all(PlaneTree::is_ternary)
    }

    pub fn is_even(&self) -> bool {
        self.children.len().is_multiple_of(2) && self.children.iter().all(PlaneTree::is_even)
    }
}

impl fmt::Debug for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for c in &self.children {
            write!(f, "{c:?}")?;
        }
        f.write_str(")")
    }
}

/// Ternary trees with `n` internal nodes.
pub fn ternary_trees(n: usize) -> Vec<PlaneTree> {
    let mut memo: Vec<Vec<PlaneTree>> = vec![vec![PlaneTree::leaf()]];
    for m in 1..=n {
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m - a {
                let c = m - 1 - a - b;
                for x in &memo[a] {
                    for y in &memo[b] {
                        for z in &memo[c] {
                            out.push(PlaneTree::node(vec![x.clone(), y.clone(), z.clone()]));
                        }
                    }
                }
            }
        }
        memo.push(out);
    }
    memo.swap_remove(n)
}

/// Plane trees with `edges` edges in which every outdegree is even.
pub fn even_trees(edges: usize) -> Vec<PlaneTree> {
    // trees[e]: even trees with e edges
    let mut trees: Vec<Vec<PlaneTree>> = Vec::new();
    for e in 0..=edges {
        let mut out = Vec::new();
        for d in (0..=e).step_by(2) {
            for kids in sequences(&trees, e, d) {
                out.push(PlaneTree::node(kids));
            }
        }
        trees.push(out);
    }
    trees.swap_remove(edges)
}

// All sequences of `d` trees from `trees` whose edge counts plus `d` sum to `e`.
fn sequences(trees: &[Vec<PlaneTree>], e: usize, d: usize) -> Vec<Vec<PlaneTree>> {
    if d == 0 {
        return if e == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=e.saturating_sub(d - 1) {
        let inner = first - 1;
        if inner >= trees.len() {
            break;
        }
        for rest in sequences(trees, e - first, d - 1) {
            for t in &trees[inner] {
                let mut s = Vec::with_capacity(d);
                s.push(t.clone());
                s.extend(rest.iter().cloned());
                out.push(s);
            }
        }
    }
    out
}

/// Spanning tree on points `0..=n` of a convex polygon, root 0, with no
/// crossing chords. Edges are stored as sorted pairs `(low, high)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonCrossingTree {
    points: usize,
    edges: Vec<(u16, u16)>,
}

fn chords_cross((a, b): (u16, u16), (c, d): (u16, u16)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

impl NonCrossingTree {
    /// Checks that `edges` is a non-crossing spanning tree on `points` points.
    pub fn new(points: usize, edges: Vec<(u16, u16)>) -> Option<Self> {
        let mut edges: Vec<(u16, u16)> = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        let t = NonCrossingTree { points, edges };
        t.is_valid().then_some(t)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn edges(&self) -> &[(u16, u16)] {
        &self.edges
    }

    pub fn is_valid(&self) -> bool {
        let n = self.points;
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.edges {
            if a == b || b as usize >= n {
                return false;
            }
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        for (i, &e) in self.edges.iter().enumerate() {
            if self.edges[i + 1..].iter().any(|&f| chords_cross(e, f)) {
                return false;
            }
        }
        true
    }

    /// Reflection in the bisector through the root: `i -> (n + 1 - i) mod (n + 1)`
    /// on `n + 1` points.
    pub fn reflect(&self) -> NonCrossingTree {
        let p = self.points as u16;
        let m = |i: u16| (p - i) % p;
        let mut edges: Vec<(u16, u16)> = self
            .edges
            .iter()
            .map(|&(a, b)| (m(a).min(m(b)), m(a).max(m(b))))
            .collect();
        edges.sort_unstable();
        NonCrossingTree {
            points: self.points,
            edges,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.reflect() == *self
    }
}

fn shifted(e: &[(u16, u16)], by: usize) -> impl Iterator<Item = (u16, u16)> + '_ {
    e.iter().map(move |&(a, b)| (a + by as u16, b + by as u16))
}

/// Non-crossing trees with `n` edges.
///
/// On a run of consecutive points `i..=j`, let `k` be the largest neighbour
/// of `i`. Removing the chord `(i, k)` leaves a tree on `i..=m` and a tree on
/// `m+1..=j` containing `k`, for some `i <= m < k`. No chord of the latter
/// passes over `k`, so it is a tree on `m+1..=k` and a tree on `k..=j` sharing
/// `k`. Every such choice occurs once.
pub fn noncrossing_trees(n: usize) -> Vec<NonCrossingTree> {
    // by_len[l]: edge lists of trees on points 0..l
    let mut by_len: Vec<Vec<Vec<(u16, u16)>>> = vec![Vec::new(), vec![Vec::new()]];
    for len in 2..=n + 1 {
        let mut out = Vec::new();
        // points 0..left, left..=k, k..len
        for left in 1..len {
            for k in left..len {
                for l in &by_len[left] {
                    for mid in &by_len[k - left + 1] {
                        for r in &by_len[len - k] {
                            let mut e = l.clone();
                            e.extend(shifted(mid, left));
                            e.extend(shifted(r, k));
                            e.push((0, k as u16));
                            out.push(e);
                        }
                    }
                }
            }
        }
        by_len.push(out);
    }
    by_len
        .swap_remove(n + 1)
        .into_iter()
        .map(|mut edges| {
            edges.sort_unstable();
            NonCrossingTree {
                points: n + 1,
                edges,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ternary,
    Even,
    NonCrossing,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Ternary, Family::Even, Family::NonCrossing];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ternary => "ternary",
            Family::Even => "even",
            Family::NonCrossing => "noncrossing",
        }
    }

    /// Largest `n` enumerated.
    pub fn budget(self) -> usize {
        match self {
            Family::Ternary => 9,
            Family::Even => 7,
            Family::NonCrossing => 9,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("unknown family {0:?}: expected ternary, even or noncrossing")]
    UnknownFamily(String),
    #[error("{family} trees are enumerated up to n = {max}, got {n}")]
    OverBudget {
        family: Family,
        n: usize,
        max: usize,
    },
}

impl FromStr for Family {
    type Err = SymmetryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ternary" | "ternary-by-internal-nodes" => Ok(Family::Ternary),
            "even" | "even-by-edges" => Ok(Family::Even),
            "noncrossing" | "non-crossing" | "noncrossing-by-edges" => Ok(Family::NonCrossing),
            _ => Err(SymmetryError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetryCount {
    pub family: Family,
    pub n: usize,
    pub total: u64,
    pub symmetric: u64,
}

/// Exhaustive total and symmetric counts. For even trees `n` is half the
/// edge count.
pub fn census(family: Family, n: usize) -> Result<SymmetryCount, SymmetryError> {
    if n > family.budget() {
        return Err(SymmetryError::OverBudget {
            family,
            n,
            max: family.budget(),
        });
    }
    let (total, symmetric) = match family {
        Family::Ternary => tally(ternary_trees(n).iter().map(PlaneTree::is_symmetric)),
        Family::Even => tally(even_trees(2 * n).iter().map(PlaneTree::is_symmetric)),
        Family::NonCrossing => tally(
            noncrossing_trees(n)
                .iter()
                .map(NonCrossingTree::is_symmetric),
        ),
    };
    Ok(SymmetryCount {
        family,
        n,
        total,
        symmetric,
    })
}

fn tally(flags: impl Iterator<Item = bool>) -> (u64, u64) {
    flags.fold((0, 0), |(t, s), f| (t + 1, s + u64::from(f)))
}

pub fn count_symmetric(family: Family, n: usize) -> Result<u64, SymmetryError> {
    census(family, n).map(|c| c.symmetric)
}

/// `1/(2n+1) C(3n, n)`.
pub fn expected_total(n: usize) -> BigUint {
    binomial(3 * n as u64, n as u64) / BigUint::from(2 * n as u64 + 1)
}

/// `a_{(n+1)/2}` for odd `n`, `1/(n+1) C(3n/2, n/2)` for even `n`.
pub fn expected_symmetric(n: usize) -> BigUint {
    if n % 2 == 1 {
        count_fixed((n as u64).div_ceil(2))
    } else {
        binomial(3 * n as u64 / 2, n as u64 / 2) / BigUint::from(n as u64 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::shapes;

    fn from_shape(s: &[u8]) -> PlaneTree {
        fn rec(s: &[u8], pos: &mut usize) -> PlaneTree {
            let d = s[*pos];
            *pos += 1;
            PlaneTree::node((0..d).map(|_| rec(s, pos)).collect())
        }
        rec(s, &mut 0)
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(PlaneTree::leaf().reflect(), PlaneTree::leaf());
        let a = PlaneTree::node(vec![PlaneTree::leaf()]);
        let b = PlaneTree::leaf();
        let c = PlaneTree::node(vec![PlaneTree::leaf(), a.clone()]);
        let t = PlaneTree::node(vec![a.clone(), b.clone(), c.clone()]);
        assert_eq!(
            t.reflect(),
            PlaneTree::node(vec![c.reflect(), b, a.reflect()])
        );

        let path = NonCrossingTree::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(path.reflect(), path);
        for n in 1..6u16 {
            let star =
                NonCrossingTree::new(n as usize + 1, (1..=n).map(|i| (0, i)).collect()).unwrap();
            assert!(star.is_symmetric());
        }
        assert!(NonCrossingTree::new(4, vec![(0, 2), (1, 3), (0, 1)]).is_none());
    }

    #[test]
    fn reflections_are_involutions() {
        for n in 0..=4 {
            for t in ternary_trees(n) {
                assert_eq!(t.reflect().reflect(), t);
                assert!(t.reflect().is_ternary());
            }
        }
        for n in 0..=5 {
            for t in noncrossing_trees(n) {
                assert!(t.reflect().is_valid());
                assert_eq!(t.reflect().reflect(), t);
            }
        }
    }

    #[test]
    fn generators_match_filtered_plane_trees() {
        for n in 0..=3 {
            let mut oracle: Vec<PlaneTree> = shapes(3 * n + 1)
                .iter()
                .map(|s| from_shape(s))
                .filter(PlaneTree::is_ternary)
                .collect();
            let mut got = ternary_trees(n);
            oracle.sort();
            got.sort();
            assert_eq!(got, oracle);
        }
        for e in [0, 2, 4, 6, 8] {
            let mut oracle: Vec<PlaneTree> = shapes(e + 1)
                .iter()
                .map(|s| from_shape(s))
                .filter(PlaneTree::is_even)
                .collect();
            let mut got = even_trees(e);
            oracle.sort();
            got.sort();
            assert_eq!(got, oracle, "{e} edges");
        }
    }

    #[test]
    fn noncrossing_matches_brute_force() {
        for n in 1..=5usize {
            let points = n + 1;
            let chords: Vec<(u16, u16)> = (0..points as u16)
                .flat_map(|a| (a + 1..points as u16).map(move |b| (a, b)))
                .collect();
            let mut oracle = Vec::new();
            for mask in 0u32..(1 << chords.len()) {
                if mask.count_ones() as usize != n {
                    continue;
                }
                let edges = (0..chords.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| chords[i])
                    .collect();
                if let Some(t) = NonCrossingTree::new(points, edges) {
                    oracle.push(t);
                }
            }
            let mut got = noncrossing_trees(n);
            got.sort();
            oracle.sort();
            assert_eq!(got, oracle, "n = {n}");
        }
    }

    #[test]
    fn small_symmetric_counts() {
        assert_eq!(count_symmetric(Family::Ternary, 1).unwrap(), 1);
        assert_eq!(count_symmetric(Family::Ternary, 2).unwrap(), 1);
        assert_eq!(count_symmetric(Family::Ternary, 3).unwrap(), 2);
        assert_eq!(count_symmetric(Family::Ternary, 4).unwrap(), 3);
        assert_eq!(count_symmetric(Family::Ternary, 5).unwrap(), 7);
        for f in Family::ALL {
            for n in 0..=5 {
                let c = census(f, n).unwrap();
                assert_eq!(BigUint::from(c.total), expected_total(n), "{f} {n}");
                assert_eq!(BigUint::from(c.symmetric), expected_symmetric(n), "{f} {n}");
            }
        }
    }

    #[test]
    fn family_parsing_and_budget() {
        assert_eq!(
            "noncrossing".parse::<Family>().unwrap(),
            Family::NonCrossing
        );
        assert!(matches!(
            "binary".parse::<Family>(),
            Err(SymmetryError::UnknownFamily(_))
        ));
        assert!(matches!(
            census(Family::Even, 8),
            Err(SymmetryError::OverBudget { .. })
        ));
    }
}
