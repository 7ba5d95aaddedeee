use super::{BetaTree, TreeError};

/// Root-level split of a tree on at least two nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    /// The root has a single child. `inner` is that child re-rooted (label
    /// reset by the root-sum rule); `child_label` is the label it carried
    /// before the reset.
    Indecomposable { inner: BetaTree, child_label: u32 },
    /// The root has several children. `left` keeps all but the rightmost
    /// subtree, `right` keeps only the rightmost; both are re-rooted.
    Decomposable { left: BetaTree, right: BetaTree },
}

impl Decomposition {
    /// Inverse of [`BetaTree::decompose`].
    pub fn recompose(&self) -> BetaTree {
        match self {
            Decomposition::Indecomposable { inner, child_label } => {
                BetaTree::rooted(vec![inner.clone().with_label(*child_label)])
            }
            Decomposition::Decomposable { left, right } => {
                let mut children = left.children.clone();
                children.extend(right.children.iter().cloned());
                BetaTree::rooted(children)
            }
        }
    }
}

impl BetaTree {
    pub fn decompose(&self) -> Result<Decomposition, TreeError> {
        match self.children.as_slice() {
            [] => Err(TreeError::Atomic),
            [only] => Ok(Decomposition::Indecomposable {
                inner: only.clone().rerooted(),
                child_label: only.label,
            }),
            [rest @ .., last] => Ok(Decomposition::Decomposable {
                left: BetaTree::rooted(rest.to_vec()),
                right: BetaTree::rooted(vec![last.clone()]),
            }),
        }
    }

    /// Splits the tree at every 1-labelled internal node of its rightmost
    /// path (the root excepted). Components are returned top first; each
    /// one is right-indecomposable and there are `rsub` of them.
    pub fn right_decompose(&self) -> Result<Vec<BetaTree>, TreeError> {
        if self.is_leaf() {
            return Err(TreeError::Atomic);
        }
        let mut components = Vec::new();
        let mut rest = Some(self.clone());
        while let Some(t) = rest {
            let (top, below) = cut_top(&t);
            components.push(top);
            rest = below;
        }
        Ok(components)
    }

    /// Reassembles right-path components listed top first: the rightmost
    /// leaf of each component is replaced by the next component, whose root
    /// takes label 1.
    ///
    /// Every component must be a valid right-indecomposable tree, so that
    /// the assembly right-decomposes back into exactly these components.
    pub fn glue_right_path(components: &[BetaTree]) -> Result<BetaTree, TreeError> {
        if components.is_empty() {
            return Err(TreeError::Assembly("no components".to_string()));
        }
        for (i, c) in components.iter().enumerate() {
            c.validate()?;
            if c.is_leaf() {
                return Err(TreeError::Assembly(format!(
                    "component {i} is a single node"
                )));
            }
            if c.stats().rsub != 1 {
                return Err(TreeError::Assembly(format!(
                    "component {i} ({c}) is right-decomposable"
                )));
            }
        }
        let mut iter = components.iter().rev();
        let mut acc = iter.next().cloned().expect("nonempty");
        for top in iter {
            acc = replace_rightmost_leaf(top.clone(), acc.with_label(1));
        }
        Ok(acc)
    }
}

/// Replaces the rightmost leaf of `t` with `sub`.
pub(crate) fn replace_rightmost_leaf(mut t: BetaTree, sub: BetaTree) -> BetaTree {
    let mut cur = &mut t;
    while !cur.children.is_empty() {
        cur = cur.children.last_mut().expect("nonempty");
    }
    *cur = sub;
    t
}

// Cuts `t` (taken as a root) at the first 1-labelled internal node below the
// root on its rightmost path.
fn cut_top(t: &BetaTree) -> (BetaTree, Option<BetaTree>) {
    fn go(node: &BetaTree, is_root: bool) -> (BetaTree, Option<BetaTree>) {
        if node.is_leaf() {
            return (node.clone(), None);
        }
        if !is_root && node.label == 1 {
            return (BetaTree::leaf(), Some(node.clone().rerooted()));
        }
        let (last, rest) = node.children.split_last().expect("internal");
        let (new_last, below) = go(last, false);
        let mut children = rest.to_vec();
        children.push(new_last);
        (BetaTree::new(node.label, children), below)
    }
    go(t, true)
}
