//! Rooted planar maps as rotation systems.
//!
//! Darts are `0..2m` internally; the file format numbers them from 1.
//! `alpha` pairs the two darts of an edge and `sigma` sends a dart to the
//! next dart counterclockwise around its tail vertex. Vertices are the
//! orbits of `sigma`, faces the orbits of `phi = sigma . alpha`
//! (first `alpha`, then `sigma`); the `phi`-orbit of a dart is the face on
//! its right. The root vertex is the tail of the root dart and the root face
//! is the face to the right of it.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("malformed map: {0}")]
    Malformed(String),
    #[error("map violates {0}")]
    Invalid(MapViolation),
    #[error("degenerate dual: a map with {0} edge(s) has no dual in this class")]
    DegenerateDual(usize),
    #[error("map file: {0}")]
    Format(String),
}

/// The first map axiom that fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapViolation {
    #[error("permutation: {which} is not a permutation of the darts")]
    NotPermutation { which: &'static str },
    #[error("involution: alpha(alpha({dart})) != {dart}")]
    NotInvolution { dart: usize },
    #[error("fixed-point-free: alpha fixes dart {dart}")]
    AlphaFixedPoint { dart: usize },
    #[error("connectivity: only {reached} of {darts} darts reachable from the root")]
    Disconnected { reached: usize, darts: usize },
    #[error("nonplanar: V - E + F = {v} - {e} + {f} != 2")]
    Nonplanar { v: usize, e: usize, f: usize },
}

impl MapViolation {
    /// Short name of the failed axiom.
    pub fn axiom(&self) -> &'static str {
        match self {
            MapViolation::NotPermutation { .. } => "permutation",
            MapViolation::NotInvolution { .. } => "involution",
            MapViolation::AlphaFixedPoint { .. } => "fixed-point-free",
            MapViolation::Disconnected { .. } => "connectivity",
            MapViolation::Nonplanar { .. } => "nonplanar",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootedMap {
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    root: usize,
}

/// Root-anchored relabelling of a map: the dart count followed by
/// `sigma` and `alpha` of every dart in discovery order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalMapCode(pub Vec<u32>);

impl fmt::Display for CanonicalMapCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

/// Map file record, darts numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    pub edges: usize,
    pub alpha: Vec<usize>,
    pub sigma: Vec<usize>,
    pub root: usize,
}

impl RootedMap {
    /// Builds a map from 0-based `alpha`, `sigma` and root. Only the array
    /// shapes are checked here; see [`RootedMap::validate`].
    pub fn new(alpha: Vec<usize>, sigma: Vec<usize>, root: usize) -> Result<Self, MapError> {
        let n = alpha.len();
        if n == 0 || n % 2 == 1 {
            return Err(MapError::Malformed(format!(
                "dart count must be even and positive, got {n}"
            )));
        }
        if sigma.len() != n {
            return Err(MapError::Malformed(format!(
                "alpha has {n} entries but sigma has {}",
                sigma.len()
            )));
        }
        if root >= n {
            return Err(MapError::Malformed("root dart out of range".to_string()));
        }
        if let Some(&d) = alpha.iter().chain(&sigma).find(|&&d| d >= n) {
            return Err(MapError::Malformed(format!("dart {d} out of range")));
        }
        Ok(RootedMap { alpha, sigma, root })
    }

    /// Builds and validates.
    pub fn checked(alpha: Vec<usize>, sigma: Vec<usize>, root: usize) -> Result<Self, MapError> {
        let m = RootedMap::new(alpha, sigma, root)?;
        m.validate().map_err(MapError::Invalid)?;
        Ok(m)
    }

    /// The map with one edge: two vertices, one face.
    pub fn single_edge() -> Self {
        RootedMap {
            alpha: vec![1, 0],
            sigma: vec![0, 1],
            root: 0,
        }
    }

    /// Two parallel edges.
    pub fn digon() -> Self {
        RootedMap {
            alpha: vec![2, 3, 0, 1],
            sigma: vec![1, 0, 3, 2],
            root: 0,
        }
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn phi(&self, d: usize) -> usize {
        self.sigma[self.alpha[d]]
    }

    pub fn validate(&self) -> Result<(), MapViolation> {
        let n = self.dart_count();
        if !is_permutation(&self.alpha) {
            return Err(MapViolation::NotPermutation { which: "alpha" });
        }
        if !is_permutation(&self.sigma) {
            return Err(MapViolation::NotPermutation { which: "sigma" });
        }
        for d in 0..n {
            if self.alpha[d] == d {
                return Err(MapViolation::AlphaFixedPoint { dart: d + 1 });
            }
            if self.alpha[self.alpha[d]] != d {
                return Err(MapViolation::NotInvolution { dart: d + 1 });
            }
        }
        let reached = self.discovery_order().len();
        if reached != n {
            return Err(MapViolation::Disconnected { reached, darts: n });
        }
        let (v, e, f) = (self.vertex_count(), self.edge_count(), self.face_count());
        if v + f != e + 2 {
            return Err(MapViolation::Nonplanar { v, e, f });
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Vertex id of every dart; vertices numbered by first dart.
    pub fn vertex_of(&self) -> (Vec<usize>, usize) {
        orbit_ids(self.dart_count(), |d| self.sigma[d])
    }

    /// Face id of every dart; faces numbered by first dart.
    pub fn face_of(&self) -> (Vec<usize>, usize) {
        orbit_ids(self.dart_count(), |d| self.phi(d))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_of().1
    }

    pub fn face_count(&self) -> usize {
        self.face_of().1
    }

    /// Darts of the root face, starting at the root dart.
    pub fn root_face(&self) -> Vec<usize> {
        orbit(self.root, |d| self.phi(d))
    }

    pub fn root_face_degree(&self) -> usize {
        self.root_face().len()
    }

    pub fn root_vertex_degree(&self) -> usize {
        orbit(self.root, |d| self.sigma[d]).len()
    }

    /// Loopless and without cut vertices. Expects a valid map.
    pub fn is_nonseparable(&self) -> bool {
        let (vertex, v) = self.vertex_of();
        let mut adj = vec![Vec::new(); v];
        for d in 0..self.dart_count() {
            let (a, b) = (vertex[d], vertex[self.alpha[d]]);
            if a == b {
                return false;
            }
            adj[a].push(b);
        }
        !has_cut_vertex(&adj)
    }

    /// Dual map: vertices become faces, `sigma* = phi^-1 = alpha . sigma^-1`
    /// and the root moves to `phi^-1(root)`, the dart following the crossed
    /// root edge counterclockwise around the root face.
    pub fn dual(&self) -> Result<RootedMap, MapError> {
        if self.edge_count() < 2 {
            return Err(MapError::DegenerateDual(self.edge_count()));
        }
        let n = self.dart_count();
        let mut sigma_inv = vec![0; n];
        for d in 0..n {
            sigma_inv[self.sigma[d]] = d;
        }
        let sigma: Vec<usize> = (0..n).map(|d| self.alpha[sigma_inv[d]]).collect();
        let root = sigma[self.root];
        Ok(RootedMap {
            alpha: self.alpha.clone(),
            sigma,
            root,
        })
    }

    /// Darts in breadth-first order from the root, visiting `sigma(d)` before
    /// `alpha(d)`.
    fn discovery_order(&self) -> Vec<usize> {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([self.root]);
        seen[self.root] = true;
        while let Some(d) = queue.pop_front() {
            order.push(d);
            for next in [self.sigma[d], self.alpha[d]] {
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        order
    }

    /// Rooted isomorphism invariant. Expects a connected map: every dart is
    /// reached from the root, so the relabelling is forced.
    pub fn canonical_code(&self) -> CanonicalMapCode {
        let order = self.discovery_order();
        let mut label = vec![u32::MAX; self.dart_count()];
        for (i, &d) in order.iter().enumerate() {
            label[d] = i as u32;
        }
        let mut code = Vec::with_capacity(1 + 2 * order.len());
        code.push(order.len() as u32);
        for &d in &order {
            code.push(label[self.sigma[d]]);
            code.push(label[self.alpha[d]]);
        }
        CanonicalMapCode(code)
    }

    pub fn is_isomorphic(&self, other: &RootedMap) -> bool {
        self.canonical_code() == other.canonical_code()
    }

    /// False for maps with fewer than two edges, which have no dual here.
    pub fn is_self_dual(&self) -> bool {
        match self.dual() {
            Ok(d) => d.canonical_code() == self.canonical_code(),
            Err(_) => false,
        }
    }

    /// The same map with dart `d` renamed `perm[d]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<RootedMap, MapError> {
        let n = self.dart_count();
        if perm.len() != n || !is_permutation(perm) {
            return Err(MapError::Malformed(
                "relabelling is not a permutation".into(),
            ));
        }
        let mut alpha = vec![0; n];
        let mut sigma = vec![0; n];
        for d in 0..n {
            alpha[perm[d]] = perm[self.alpha[d]];
            sigma[perm[d]] = perm[self.sigma[d]];
        }
        Ok(RootedMap {
            alpha,
            sigma,
            root: perm[self.root],
        })
    }

    pub fn to_record(&self) -> MapRecord {
        MapRecord {
            edges: self.edge_count(),
            alpha: self.alpha.iter().map(|d| d + 1).collect(),
            sigma: self.sigma.iter().map(|d| d + 1).collect(),
            root: self.root + 1,
        }
    }

    pub fn from_record(r: &MapRecord) -> Result<RootedMap, MapError> {
        let n = 2 * r.edges;
        if r.alpha.len() != n || r.sigma.len() != n {
            return Err(MapError::Format(format!(
                "{} edges need {n} entries in alpha and sigma",
                r.edges
            )));
        }
        let dec = |d: usize| {
            if d == 0 || d > n {
                Err(MapError::Format(format!("dart {d} outside 1..={n}")))
            } else {
                Ok(d - 1)
            }
        };
        let alpha = r.alpha.iter().map(|&d| dec(d)).collect::<Result<_, _>>()?;
        let sigma = r.sigma.iter().map(|&d| dec(d)).collect::<Result<_, _>>()?;
        RootedMap::new(alpha, sigma, dec(r.root)?)
    }

    /// One-line JSON in the map file format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("plain record serializes")
    }

    /// Parses the map file format; the result is shape-checked but not
    /// validated.
    pub fn from_json(s: &str) -> Result<RootedMap, MapError> {
        let r: MapRecord = serde_json::from_str(s).map_err(|e| MapError::Format(e.to_string()))?;
        RootedMap::from_record(&r)
    }
}

impl fmt::Debug for RootedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn orbit(start: usize, step: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut out = vec![start];
    let mut d = step(start);
    while d != start {
        out.push(d);
        d = step(d);
    }
    out
}

fn orbit_ids(n: usize, step: impl Fn(usize) -> usize) -> (Vec<usize>, usize) {
    let mut id = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if id[start] != usize::MAX {
            continue;
        }
        let mut d = start;
        while id[d] == usize::MAX {
            id[d] = count;
            d = step(d);
        }
        count += 1;
    }
    (id, count)
}

/// Articulation points by Tarjan's low-link, iteratively. Parallel edges
/// are harmless: only the tree edge back to the parent is skipped, once.
fn has_cut_vertex(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    if n <= 2 {
        return false;
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    // (vertex, parent, next adjacency index, parent edge skipped)
    let mut stack = vec![(0usize, usize::MAX, 0usize, false)];
    disc[0] = 0;
    low[0] = 0;
    timer += 1;
    let mut root_children = 0;
    while let Some(top) = stack.last_mut() {
        let (v, parent, i, skipped) = *top;
        if i < adj[v].len() {
            top.2 += 1;
            let w = adj[v][i];
            if w == parent && !skipped {
                top.3 = true;
                continue;
            }
            if disc[w] == usize::MAX {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, v, 0, false));
            } else {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if parent != 0 && low[v] >= disc[parent] {
                    return true;
                }
            }
        }
    }
    root_children > 1
}
