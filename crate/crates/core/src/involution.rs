//! The involution `h`, which trades root-level decompositions for
//! right-path decompositions.
//!
//! - The single node and the single edge are fixed.
//! - Indecomposable tree with child label `r`: re-root the child as `A`,
//!   take `h(A)`, hang a new leaf as the rightmost child of the node at
//!   depth `r - 1` on its rightmost path, and add 1 to every proper ancestor
//!   of that leaf. The image then has `rpath = r`.
//! - Decomposable tree split into `(A, B)`: the rightmost leaf of `h(B)` is
//!   replaced by `h(A)`, whose root takes the leaf's label 1.
//!
//! Under `h` the statistics swap as `root <-> rpath` and `sub <-> rsub`.

use crate::tree::{BetaTree, TreeError};

pub fn h(t: &BetaTree) -> BetaTree {
    match t.children.as_slice() {
        [] => t.clone(),
        [only] if only.is_leaf() => t.clone(),
        [only] => {
            let inner = only.clone().rerooted();
            attach_leaf_on_right_path(h(&inner), (only.label - 1) as usize)
        }
        [rest @ .., last] => {
            let left = BetaTree::rooted(rest.to_vec());
            let right = BetaTree::rooted(vec![last.clone()]);
            let image_left = h(&left).with_label(1);
            crate::tree::replace_rightmost_leaf(h(&right), image_left)
        }
    }
}

// New rightmost leaf under the rightmost-path node at `depth`, then +1 on
// every node from there up to the root.
fn attach_leaf_on_right_path(mut t: BetaTree, depth: usize) -> BetaTree {
    let mut cur = &mut t;
    for _ in 0..depth {
        cur.label += 1;
        cur = cur
            .children
            .last_mut()
            .expect("rightmost path of h(A) reaches depth root(A) - 1");
    }
    cur.label += 1;
    cur.children.push(BetaTree::leaf());
    t
}

/// Statistic swap between `t` and `h(t)`.
pub fn check_theorem1(t: &BetaTree) -> bool {
    let s = h(t);
    let (a, b) = (t.stats(), s.stats());
    a.root_label == b.rpath && b.root_label == a.rpath && a.sub == b.rsub && b.sub == a.rsub
}

/// The right-path/root-level exchange used to show `h` is an involution.
///
/// `components` are right-indecomposable trees listed top first; the
/// optional `trailing` tree is glued below the last of them and contributes
/// its own right-decomposition. With `T` the assembled tree, the image
/// `h(T)` must have one root subtree per component: the bottom component's
/// image leftmost and the top component's image rightmost, each being the
/// single root subtree of that component's image.
pub fn check_figure5_property(
    components: &[BetaTree],
    trailing: Option<&BetaTree>,
) -> Result<bool, TreeError> {
    let mut all = components.to_vec();
    if let Some(tail) = trailing {
        all.extend(tail.right_decompose()?);
    }
    if all.is_empty() {
        return Err(TreeError::Assembly("no components".to_string()));
    }
    let assembled = BetaTree::glue_right_path(&all)?;

    let mut expected_children = Vec::with_capacity(all.len());
    for c in all.iter().rev() {
        let image = h(c);
        match image.children.as_slice() {
            [only] => expected_children.push(only.clone()),
            _ => return Ok(false),
        }
    }
    Ok(h(&assembled) == BetaTree::rooted(expected_children))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::generate_all;

    fn t(s: &str) -> BetaTree {
        BetaTree::parse_valid(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(h(&t("(1)")), t("(1)"));
        assert_eq!(h(&t("(1 (1))")), t("(1 (1))"));
        assert_eq!(h(&t("(1 (1 (1)))")), t("(2 (1) (1))"));
        assert_eq!(h(&t("(2 (1) (1))")), t("(1 (1 (1)))"));
        assert_eq!(h(&t("(2 (2 (1) (1)))")), t("(2 (2 (1) (1)))"));
    }

    #[test]
    fn theorem1_examples() {
        assert!(check_theorem1(&t("(1 (1))")));
        assert!(check_theorem1(&t("(1 (1 (1)))")));
        let s = h(&t("(1 (1 (1)))")).stats();
        assert_eq!((s.root_label, s.sub, s.rpath, s.rsub), (2, 2, 1, 1));
    }

    #[test]
    fn involution_and_validity_small() {
        for n in 1..=9 {
            for tree in generate_all(n) {
                let image = h(&tree);
                assert!(image.is_valid(), "h({tree}) = {image} is invalid");
                assert_eq!(image.node_count(), n);
                assert_eq!(h(&image), tree, "h^2 != id at {tree}");
                if n >= 2 {
                    assert!(check_theorem1(&tree), "{tree}");
                }
            }
        }
    }

    #[test]
    fn figure5_examples() {
        assert!(check_figure5_property(&[BetaTree::edge()], None).unwrap());
        assert!(check_figure5_property(&[BetaTree::edge(), BetaTree::edge()], None).unwrap());
        assert!(check_figure5_property(&[BetaTree::edge()], Some(&t("(2 (1 (1)) (1))"))).unwrap());
        assert!(check_figure5_property(&[], None).is_err());
        assert!(check_figure5_property(&[t("(1 (1 (1)))")], None).is_err());
    }

    #[test]
    fn catalan_subfamily_is_stable() {
        let all_ones = |t: &BetaTree| {
            fn rec(n: &BetaTree) -> bool {
                n.label == 1 && n.children.iter().all(rec)
            }
            t.children.iter().all(rec)
        };
        for n in 1..=9 {
            for tree in generate_all(n).filter(|t| all_ones(t)) {
                assert!(all_ones(&h(&tree)), "{tree}");
            }
        }
    }
}
