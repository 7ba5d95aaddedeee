//! Fixed points of `h`.
//!
//! Every fixed point is exactly one of:
//!
//! - **F0**: the single node;
//! - **F1(A)**: the root of an arbitrary tree `A` with `h(A)` hung as a new
//!   rightmost subtree whose root is relabelled 1;
//! - **F2(A1, A2, b)**: `A2` is a fixed point with at least two nodes and
//!   `root(A2) >= b - 1`, `b >= 2`. Number the rightmost path of `A2` from
//!   the root as position 1. `h(A1)` is hung as a new rightmost child of the
//!   node at position `b - 1` with its root relabelled 1 (it becomes
//!   position `b`), the non-root nodes at positions `2..=b-1` gain 1, and the
//!   root of the result is relabelled `b`. That tree is hung as a new
//!   rightmost subtree of the root of `A1`.
//!
//! In both constructions the outer root label follows the root-sum rule.
//! Fixed points other than the single node have an even number of nodes,
//! and there are `C(3n-2, n-1) / n` of them on `2n` nodes.

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::combinatorics::binomial;
use crate::involution::h;
use crate::tree::{generate_all, BetaTree};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FixedPointStructure {
    F0,
    F1 { a: BetaTree },
    F2 { a1: BetaTree, a2: BetaTree, b: u32 },
}

impl FixedPointStructure {
    pub fn tag(&self) -> &'static str {
        match self {
            FixedPointStructure::F0 => "F0",
            FixedPointStructure::F1 { .. } => "F1",
            FixedPointStructure::F2 { .. } => "F2",
        }
    }

    /// Builds the fixed point described by this structure.
    pub fn build(&self) -> Result<BetaTree, FixedPointError> {
        match self {
            FixedPointStructure::F0 => Ok(BetaTree::leaf()),
            FixedPointStructure::F1 { a } => Ok(build_f1(a)),
            FixedPointStructure::F2 { a1, a2, b } => build_f2(a1, a2, *b),
        }
    }
}

impl fmt::Display for FixedPointStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedPointStructure::F0 => write!(f, "F0"),
            FixedPointStructure::F1 { a } => write!(f, "F1 a={a}"),
            FixedPointStructure::F2 { a1, a2, b } => write!(f, "F2 a1={a1} a2={a2} b={b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixedPointError {
    #[error("not a fixed point: {0}")]
    NotFixed(BetaTree),
    #[error("b must be at least 2, got {0}")]
    SmallB(u32),
    #[error("a2 must have at least two nodes")]
    TrivialA2,
    #[error("a2 = {0} is not a fixed point of h")]
    A2NotFixed(BetaTree),
    #[error("root(a2) = {root} is smaller than b - 1 = {need}")]
    A2RootTooSmall { root: u32, need: u32 },
    #[error("invalid input tree: {0}")]
    Invalid(String),
    #[error("structure of {0} does not rebuild to itself")]
    Inconsistent(BetaTree),
}

pub fn is_fixed(t: &BetaTree) -> bool {
    h(t) == *t
}

pub fn build_f1(a: &BetaTree) -> BetaTree {
    f1_with_image(a, &h(a))
}

fn f1_with_image(a: &BetaTree, image: &BetaTree) -> BetaTree {
    let mut children = a.children.clone();
    children.push(image.clone().with_label(1));
    BetaTree::rooted(children)
}

pub fn build_f2(a1: &BetaTree, a2: &BetaTree, b: u32) -> Result<BetaTree, FixedPointError> {
    if b < 2 {
        return Err(FixedPointError::SmallB(b));
    }
    for t in [a1, a2] {
        t.validate()
            .map_err(|e| FixedPointError::Invalid(format!("{t}: {e}")))?;
    }
    if a2.is_leaf() {
        return Err(FixedPointError::TrivialA2);
    }
    if !is_fixed(a2) {
        return Err(FixedPointError::A2NotFixed(a2.clone()));
    }
    if a2.label < b - 1 {
        return Err(FixedPointError::A2RootTooSmall {
            root: a2.label,
            need: b - 1,
        });
    }
    Ok(f2_with_image(a1, &h(a1), a2, b))
}

fn f2_with_image(a1: &BetaTree, image: &BetaTree, a2: &BetaTree, b: u32) -> BetaTree {
    let mut grafted = a2.clone();
    let mut cur = &mut grafted;
    for _ in 0..b - 2 {
        cur = cur
            .children
            .last_mut()
            .expect("rpath(a2) = root(a2) >= b - 1");
        cur.label += 1;
    }
    cur.children.push(image.clone().with_label(1));
    grafted.label = b;

    let mut children = a1.children.clone();
    children.push(grafted);
    BetaTree::rooted(children)
}

/// Recovers the structure of a fixed point. The answer is confirmed by
/// rebuilding the tree from it.
pub fn classify(t: &BetaTree) -> Result<FixedPointStructure, FixedPointError> {
    if !is_fixed(t) {
        return Err(FixedPointError::NotFixed(t.clone()));
    }
    let structure = match t.children.split_last() {
        None => return Ok(FixedPointStructure::F0),
        Some((last, rest)) if last.label == 1 => FixedPointStructure::F1 {
            a: BetaTree::rooted(rest.to_vec()),
        },
        Some((last, rest)) => {
            let b = last.label;
            let a1 = BetaTree::rooted(rest.to_vec());
            let a2 = ungraft(last, b).ok_or_else(|| FixedPointError::Inconsistent(t.clone()))?;
            FixedPointStructure::F2 { a1, a2, b }
        }
    };
    match structure.build() {
        Ok(rebuilt) if rebuilt == *t => Ok(structure),
        _ => Err(FixedPointError::Inconsistent(t.clone())),
    }
}

// Undo the F2 graft on the rightmost subtree of a fixed point.
fn ungraft(grafted: &BetaTree, b: u32) -> Option<BetaTree> {
    let mut a2 = grafted.clone();
    let mut cur = &mut a2;
    for _ in 0..b - 2 {
        cur = cur.children.last_mut()?;
        if cur.label < 2 {
            return None;
        }
        cur.label -= 1;
    }
    cur.children.pop()?;
    Some(a2.rerooted())
}

/// Closed form `C(3n-2, n-1) / n`: the number of fixed points on `2n` nodes.
pub fn count_fixed(n: u64) -> BigUint {
    assert!(n >= 1, "count_fixed is defined for n >= 1");
    binomial(3 * n - 2, n - 1) / n
}

/// Preorder (label, outdegree) pairs.
#[derive(Clone)]
struct PackedTree(Box<[u32]>);

impl PackedTree {
    fn pack(t: &BetaTree) -> Self {
        fn rec(t: &BetaTree, out: &mut Vec<u32>) {
            out.push(t.label);
            out.push(t.children.len() as u32);
            for c in &t.children {
                rec(c, out);
            }
        }
        let mut out = Vec::new();
        rec(t, &mut out);
        PackedTree(out.into_boxed_slice())
    }

    fn unpack(&self) -> BetaTree {
        fn rec(data: &[u32], pos: &mut usize) -> BetaTree {
            let (label, degree) = (data[*pos], data[*pos + 1]);
            *pos += 2;
            let children = (0..degree).map(|_| rec(data, pos)).collect();
            BetaTree::new(label, children)
        }
        rec(&self.0, &mut 0)
    }
}

/// Fixed points on fewer nodes than a target size, plus every small tree
/// with its `h`-image, so that fixed points of the target size can be
/// streamed straight from the F1/F2 grammar.
pub struct FixedPointTable {
    max_nodes: usize,
    /// `fixed[s]`: fixed points on `s` nodes, for even `2 <= s <= max_nodes - 2`.
    fixed: Vec<Vec<PackedTree>>,
    /// `small[m]`: `(A, h(A))` for every tree on `m` nodes, `m <= (max_nodes - 2) / 2`.
    small: Vec<Vec<(BetaTree, BetaTree)>>,
}

impl FixedPointTable {
    /// Table able to stream fixed points on up to `max_nodes` nodes.
    pub fn new(max_nodes: usize) -> Self {
        let max_nodes = max_nodes.max(2);
        let small_limit = (max_nodes - 2) / 2;
        let mut small = vec![Vec::new(); small_limit + 1];
        for (m, slot) in small.iter_mut().enumerate().skip(1) {
            *slot = generate_all(m)
                .map(|a| {
                    let image = h(&a);
                    (a, image)
                })
                .collect();
        }
        let mut table = FixedPointTable {
            max_nodes,
            fixed: vec![Vec::new(); max_nodes.saturating_sub(1)],
            small,
        };
        let mut s = 2;
        while s + 2 <= max_nodes {
            let packed: Vec<PackedTree> = table.stream(s).map(|t| PackedTree::pack(&t)).collect();
            table.fixed[s] = packed;
            s += 2;
        }
        table
    }

    pub fn max_nodes(&self) -> usize {
        self.max_nodes
    }

    /// All fixed points on `n` nodes (even, `2 <= n <= max_nodes`): F1 first,
    /// then F2 grouped by the size of `A1`.
    pub fn stream(&self, n: usize) -> impl Iterator<Item = BetaTree> + '_ {
        assert!(
            n >= 2 && n.is_multiple_of(2),
            "stream needs an even size >= 2"
        );
        assert!(
            n <= self.max_nodes,
            "table built for at most {} nodes",
            self.max_nodes
        );
        let f1 = generate_all(n / 2).map(|a| {
            let image = h(&a);
            f1_with_image(&a, &image)
        });
        let f2 = (1..n / 2).flat_map(move |m| {
            let s = n - 2 * m;
            self.fixed[s].iter().flat_map(move |packed| {
                let a2 = packed.unpack();
                let top_b = a2.label + 1;
                (2..=top_b).flat_map(move |b| {
                    let a2 = a2.clone();
                    self.small[m]
                        .iter()
                        .map(move |(a1, image)| f2_with_image(a1, image, &a2, b))
                })
            })
        });
        f1.chain(f2)
    }
}

/// Fixed points of one size, with a diagnostic when the size admits none
/// through the F1/F2 grammar.
pub struct FixedPointStream {
    trees: std::vec::IntoIter<BetaTree>,
    diagnostic: Option<String>,
}

impl FixedPointStream {
    pub fn diagnostic(&self) -> Option<&str> {
        self.diagnostic.as_deref()
    }
}

impl Iterator for FixedPointStream {
    type Item = BetaTree;

    fn next(&mut self) -> Option<BetaTree> {
        self.trees.next()
    }
}

/// All fixed points on `n` nodes, built directly from the F1/F2 grammar.
///
/// Odd or zero `n` yields nothing and carries a diagnostic (the single node
/// is F0 and is not produced here). The result is collected; use
/// [`FixedPointTable::stream`] for large sizes.
pub fn enumerate_fixed(n: usize) -> FixedPointStream {
    if n < 2 || n % 2 == 1 {
        return FixedPointStream {
            trees: Vec::new().into_iter(),
            diagnostic: Some(format!(
                "no fixed points are enumerated on {n} nodes: sizes must be even and at least 2"
            )),
        };
    }
    let table = FixedPointTable::new(n);
    let trees: Vec<BetaTree> = table.stream(n).collect();
    FixedPointStream {
        trees: trees.into_iter(),
        diagnostic: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn t(s: &str) -> BetaTree {
        BetaTree::parse_valid(s).unwrap()
    }

    #[test]
    fn is_fixed_examples() {
        assert!(is_fixed(&t("(1)")));
        assert!(is_fixed(&t("(1 (1))")));
        assert!(!is_fixed(&t("(1 (1 (1)))")));
    }

    #[test]
    fn build_f1_examples() {
        assert_eq!(build_f1(&t("(1)")), t("(1 (1))"));
        assert_eq!(build_f1(&t("(1 (1))")), t("(2 (1) (1 (1)))"));
        for n in 1..=6 {
            for a in generate_all(n) {
                let f = build_f1(&a);
                assert!(f.is_valid() && is_fixed(&f), "F1({a}) = {f}");
                assert_eq!(f.node_count(), 2 * n);
            }
        }
    }

    #[test]
    fn build_f2_examples() {
        assert_eq!(
            build_f2(&t("(1)"), &t("(1 (1))"), 2).unwrap(),
            t("(2 (2 (1) (1)))")
        );
        let six = build_f2(&t("(1)"), &t("(2 (1) (1 (1)))"), 2).unwrap();
        assert_eq!(six.node_count(), 6);
        assert!(is_fixed(&six));
        assert_eq!(six, t("(2 (2 (1) (1 (1)) (1)))"));
    }

    #[test]
    fn build_f2_preconditions() {
        let edge = t("(1 (1))");
        assert_eq!(build_f2(&edge, &edge, 1), Err(FixedPointError::SmallB(1)));
        assert_eq!(
            build_f2(&edge, &t("(1)"), 2),
            Err(FixedPointError::TrivialA2)
        );
        assert!(matches!(
            build_f2(&edge, &t("(1 (1 (1)))"), 2),
            Err(FixedPointError::A2NotFixed(_))
        ));
        assert_eq!(
            build_f2(&edge, &edge, 3),
            Err(FixedPointError::A2RootTooSmall { root: 1, need: 2 })
        );
        assert!(matches!(
            build_f2(&BetaTree::new(3, vec![BetaTree::leaf()]), &edge, 2),
            Err(FixedPointError::Invalid(_))
        ));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&t("(1)")).unwrap(), FixedPointStructure::F0);
        assert_eq!(
            classify(&t("(1 (1))")).unwrap(),
            FixedPointStructure::F1 { a: t("(1)") }
        );
        assert_eq!(
            classify(&t("(2 (1) (1 (1)))")).unwrap(),
            FixedPointStructure::F1 { a: t("(1 (1))") }
        );
        assert_eq!(
            classify(&t("(2 (2 (1) (1)))")).unwrap(),
            FixedPointStructure::F2 {
                a1: t("(1)"),
                a2: t("(1 (1))"),
                b: 2
            }
        );
        assert!(matches!(
            classify(&t("(1 (1 (1)))")),
            Err(FixedPointError::NotFixed(_))
        ));
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_fixed(2).count(), 1);
        assert_eq!(enumerate_fixed(4).count(), 2);
        assert_eq!(enumerate_fixed(6).count(), 7);
        let odd = enumerate_fixed(5);
        assert!(odd.diagnostic().is_some());
        assert_eq!(odd.count(), 0);
        assert!(enumerate_fixed(0).diagnostic().is_some());
    }

    #[test]
    fn enumerate_matches_brute_force() {
        for n in (2..=10).step_by(2) {
            let brute: BTreeSet<String> = generate_all(n)
                .filter(is_fixed)
                .map(|t| t.to_text())
                .collect();
            let direct: Vec<String> = enumerate_fixed(n).map(|t| t.to_text()).collect();
            let direct_set: BTreeSet<String> = direct.iter().cloned().collect();
            assert_eq!(direct.len(), direct_set.len(), "duplicates at n={n}");
            assert_eq!(brute, direct_set, "n={n}");
        }
    }

    #[test]
    fn counts() {
        let expected = [1u32, 2, 7, 30, 143, 728, 3876];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(count_fixed(i as u64 + 1), BigUint::from(*e));
        }
    }

    #[test]
    fn packing_round_trips() {
        for t in generate_all(7) {
            assert_eq!(PackedTree::pack(&t).unpack(), t);
        }
    }
}
