//! The standard bijection from trees to rooted non-separable maps.
//!
//! Each leaf becomes the one-edge map with root vertex `R` and other vertex
//! `*`. At a node, the children's maps are glued left to right, the `*` of
//! one onto the `R` of the next; a new root edge runs from the last `*` to
//! the first `R`, and its tail becomes the new `R`. If the node has label
//! `a`, the new `*` is the `a`-th vertex met walking the root face from `R`.
//!
//! Intermediate states keep `*` as the head of a root-face dart `star_in`;
//! the marker is dropped from the final map.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fixed_points::enumerate_fixed;
use crate::maps::{CanonicalMapCode, RootedMap};
use crate::tree::{generate_all, par_generate_all, BetaTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("no preimage: map is not the image of any tree with {0} nodes")]
    NoPreimage(usize),
    #[error("map has {edges} edges, index covers at most {max}")]
    OutOfBudget { edges: usize, max: usize },
}

struct Partial {
    sigma: Vec<usize>,
    root: usize,
    star_in: usize,
}

impl Partial {
    fn phi(&self, d: usize) -> usize {
        self.sigma[d ^ 1]
    }

    fn sigma_inv(&self, d: usize) -> usize {
        let mut p = d;
        while self.sigma[p] != d {
            p = self.sigma[p];
        }
        p
    }

    fn shift(mut self, by: usize) -> Self {
        self.sigma.iter_mut().for_each(|d| *d += by);
        self.root += by;
        self.star_in += by;
        self
    }
}

/// Image of a valid tree: a rooted non-separable map with one edge per node
/// and root-face degree `label + 1`. Darts `2e` and `2e + 1` form edge `e`.
pub fn tree_to_map(t: &BetaTree) -> RootedMap {
    let p = build(t);
    let alpha = (0..p.sigma.len()).map(|d| d ^ 1).collect();
    RootedMap::new(alpha, p.sigma, p.root).expect("construction yields well-formed arrays")
}

fn build(t: &BetaTree) -> Partial {
    if t.is_leaf() {
        return Partial {
            sigma: vec![0, 1],
            root: 0,
            star_in: 0,
        };
    }
    let mut parts = Vec::with_capacity(t.children.len());
    let mut offset = 0;
    for c in &t.children {
        let p = build(c).shift(offset);
        offset += p.sigma.len();
        parts.push(p);
    }
    let mut g = Partial {
        sigma: parts.iter().flat_map(|p| p.sigma.iter().copied()).collect(),
        root: 0,
        star_in: 0,
    };
    // glue *_i onto R_{i+1}: R_{i+1}'s rotation goes in right after the
    // dart leaving *_i back along star_in_i
    for w in parts.windows(2) {
        let p = w[0].star_in ^ 1;
        let r = w[1].root;
        let q = g.sigma_inv(r);
        let after_p = g.sigma[p];
        g.sigma[p] = r;
        g.sigma[q] = after_p;
    }
    // new root edge e: *_last -> R_first
    let e = g.sigma.len();
    let (last, first) = (parts.last().unwrap(), &parts[0]);
    g.sigma.extend([e, e + 1]);
    let p = last.star_in ^ 1;
    let after_p = g.sigma[p];
    g.sigma[p] = e;
    g.sigma[e] = after_p;
    let q = g.sigma_inv(first.root);
    g.sigma[q] = e + 1;
    g.sigma[e + 1] = first.root;

    g.root = e;
    let mut star_in = e;
    for _ in 1..t.label {
        star_in = g.phi(star_in);
    }
    g.star_in = star_in;
    g
}

/// Lookup inverse of [`tree_to_map`] over all trees up to a node budget.
pub struct BijectionIndex {
    max_nodes: usize,
    by_code: HashMap<CanonicalMapCode, BetaTree>,
}

impl BijectionIndex {
    pub fn new(max_nodes: usize) -> Self {
        let by_code = (1..=max_nodes)
            .into_par_iter()
            .flat_map_iter(|n| generate_all(n).map(|t| (tree_to_map(&t).canonical_code(), t)))
            .collect();
        BijectionIndex { max_nodes, by_code }
    }

    pub fn max_nodes(&self) -> usize {
        self.max_nodes
    }

    pub fn len(&self) -> usize {
        self.by_code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_code.is_empty()
    }

    pub fn map_to_tree(&self, m: &RootedMap) -> Result<BetaTree, BijectionError> {
        if m.edge_count() > self.max_nodes {
            return Err(BijectionError::OutOfBudget {
                edges: m.edge_count(),
                max: self.max_nodes,
            });
        }
        self.by_code
            .get(&m.canonical_code())
            .cloned()
            .ok_or(BijectionError::NoPreimage(m.edge_count()))
    }
}

/// Preimage of `m` by searching the trees with as many nodes as `m` has edges.
pub fn map_to_tree(m: &RootedMap) -> Result<BetaTree, BijectionError> {
    let code = m.canonical_code();
    let n = m.edge_count();
    par_generate_all(n)
        .find_any(|t| tree_to_map(t).canonical_code() == code)
        .ok_or(BijectionError::NoPreimage(n))
}

/// An `h`-fixed tree on `4..=max_nodes` nodes whose map is not self-dual.
/// Sizes are scanned upward; within a size the grammar order is used.
pub fn witness_noncorrespondence(max_nodes: usize) -> Option<BetaTree> {
    (4..=max_nodes)
        .step_by(2)
        .find_map(|n| enumerate_fixed(n).find(|t| !tree_to_map(t).is_self_dual()))
}

/// Per-size outcome of the corpus audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionAuditRow {
    pub nodes: usize,
    pub trees: usize,
    pub distinct_images: usize,
    pub valid: bool,
    pub nonseparable: bool,
    pub edge_count_ok: bool,
    pub degree_law: bool,
    /// Self-dual images; `None` below two edges.
    pub self_dual: Option<usize>,
    /// `dual(dual(M)) = M` and root degrees exchanged; `None` below two edges.
    pub duality_ok: Option<bool>,
}

impl BijectionAuditRow {
    pub fn passed(&self) -> bool {
        self.distinct_images == self.trees
            && self.valid
            && self.nonseparable
            && self.edge_count_ok
            && self.degree_law
            && self.duality_ok != Some(false)
    }
}

/// Runs `tree_to_map` over all trees with `n` nodes and checks the image.
pub fn audit_size(n: usize) -> BijectionAuditRow {
    struct Obs {
        code: CanonicalMapCode,
        valid: bool,
        nonsep: bool,
        edges: bool,
        degree: bool,
        self_dual: bool,
        duality: bool,
    }
    let obs: Vec<Obs> = par_generate_all(n)
        .map(|t| {
            let m = tree_to_map(&t);
            let valid = m.is_valid();
            let (self_dual, duality) = match m.dual() {
                Ok(d) => {
                    let back = d.dual().expect("dual has as many edges");
                    let ok = d.is_valid()
                        && back.is_isomorphic(&m)
                        && d.root_face_degree() == m.root_vertex_degree()
                        && d.root_vertex_degree() == m.root_face_degree();
                    (d.canonical_code() == m.canonical_code(), ok)
                }
                Err(_) => (false, true),
            };
            Obs {
                code: m.canonical_code(),
                valid,
                nonsep: valid && m.is_nonseparable(),
                edges: m.edge_count() == n,
                degree: m.root_face_degree() == t.label() as usize + 1,
                self_dual,
                duality,
            }
        })
        .collect();
    let mut codes: Vec<&CanonicalMapCode> = obs.iter().map(|o| &o.code).collect();
    codes.sort_unstable();
    codes.dedup();
    let dual_defined = n >= 2;
    BijectionAuditRow {
        nodes: n,
        trees: obs.len(),
        distinct_images: codes.len(),
        valid: obs.iter().all(|o| o.valid),
        nonseparable: obs.iter().all(|o| o.nonsep),
        edge_count_ok: obs.iter().all(|o| o.edges),
        degree_law: obs.iter().all(|o| o.degree),
        self_dual: dual_defined.then(|| obs.iter().filter(|o| o.self_dual).count()),
        duality_ok: dual_defined.then(|| obs.iter().all(|o| o.duality)),
    }
}

pub fn audit(max_nodes: usize) -> Vec<BijectionAuditRow> {
    (1..=max_nodes).map(audit_size).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_points::is_fixed;

    fn t(s: &str) -> BetaTree {
        BetaTree::parse_valid(s).unwrap()
    }

    #[test]
    fn small_images() {
        assert!(tree_to_map(&t("(1)")).is_isomorphic(&RootedMap::single_edge()));
        let m = tree_to_map(&t("(1 (1))"));
        assert!(m.is_valid());
        assert!(m.is_isomorphic(&RootedMap::digon()));
        assert_eq!(m.root_face_degree(), 2);
    }

    #[test]
    fn audit_small_sizes() {
        for row in audit(7) {
            assert!(row.passed(), "{row:?}");
        }
        let census: Vec<_> = [2, 4, 6].iter().map(|&n| audit_size(n).self_dual).collect();
        assert_eq!(census, vec![Some(1), Some(2), Some(7)]);
    }

    #[test]
    fn four_node_images_are_the_six_maps() {
        let codes: std::collections::HashSet<_> = generate_all(4)
            .map(|t| tree_to_map(&t).canonical_code())
            .collect();
        assert_eq!(codes.len(), 6);
    }

    #[test]
    fn index_round_trip() {
        let index = BijectionIndex::new(6);
        assert_eq!(index.len(), 1 + 1 + 2 + 6 + 22 + 91);
        for n in 1..=6 {
            for tree in generate_all(n) {
                assert_eq!(index.map_to_tree(&tree_to_map(&tree)).unwrap(), tree);
            }
        }
        assert_eq!(
            index.map_to_tree(&RootedMap::digon()).unwrap(),
            t("(1 (1))")
        );
        assert_eq!(map_to_tree(&RootedMap::single_edge()).unwrap(), t("(1)"));
        let loop_map = RootedMap::new(vec![1, 0], vec![1, 0], 0).unwrap();
        assert_eq!(
            index.map_to_tree(&loop_map),
            Err(BijectionError::NoPreimage(1))
        );
        let big = tree_to_map(&t("(1 (1 (1 (1 (1 (1 (1)))))))"));
        assert!(matches!(
            index.map_to_tree(&big),
            Err(BijectionError::OutOfBudget { .. })
        ));
    }

    #[test]
    fn noncorrespondence() {
        let w = witness_noncorrespondence(6).expect("some fixed point maps to a non-self-dual map");
        assert!(is_fixed(&w));
        assert!(w.node_count() >= 4);
        assert!(!tree_to_map(&w).is_self_dual());
        assert_eq!(witness_noncorrespondence(3), None);
    }
}
