//! β(1,0)-trees.
//!
//! A β(1,0)-tree is a rooted plane tree with positive integer labels where
//! leaves carry 1, the root carries the sum of its children's labels and
//! every other node carries a value between 1 and that sum. The single-node
//! tree carries label 1.

mod decompose;
mod generate;
mod text;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub(crate) use decompose::replace_rightmost_leaf;
pub use decompose::Decomposition;
pub use generate::{
    generate_all, par_generate_all, shapes, trees_with_shape, Shape, ShapeTrees, TreeGenerator,
};
pub use text::ParseError;

/// A rooted plane tree with integer labels.
///
/// Values produced by the library are always valid β(1,0)-trees. A tree
/// assembled by hand with [`BetaTree::new`] or parsed with
/// [`BetaTree::from_text`] is only a candidate until [`BetaTree::validate`]
/// accepts it.
///
/// The children of a valid tree are sub-trees: they obey the interior rule
/// rather than the root-sum rule, so they are generally not valid trees on
/// their own.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BetaTree {
    pub(crate) label: u32,
    pub(crate) children: Vec<BetaTree>,
}

/// The four statistics exchanged by `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TreeStats {
    /// Label of the root.
    pub root_label: u32,
    /// Number of children of the root.
    pub sub: u32,
    /// Number of edges from the root to the rightmost leaf.
    pub rpath: u32,
    /// Number of 1-labels strictly below the root on the rightmost path.
    pub rsub: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] Violation),
    #[error("atomic: the single-node tree has no decomposition")]
    Atomic,
    #[error("cannot assemble right-path components: {0}")]
    Assembly(String),
}

/// Which labelling rule a node breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    NonPositive,
    LeafNotOne,
    RootSum { sum: u32 },
    InteriorBound { sum: u32 },
}

/// First offending node, in depth-first (preorder) order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} at {}", describe(.rule, .label), path_string(.path))]
pub struct Violation {
    /// Child indices leading from the root to the node (empty for the root).
    pub path: Vec<usize>,
    pub label: u32,
    pub rule: Rule,
}

fn describe(rule: &Rule, label: &u32) -> String {
    match rule {
        Rule::NonPositive => format!("nonpositive label {label}"),
        Rule::LeafNotOne => format!("leaf has label {label}, expected 1"),
        Rule::RootSum { sum } => format!("root label {label} != children sum {sum}"),
        Rule::InteriorBound { sum } => {
            format!("interior label {label} outside 1..={sum}")
        }
    }
}

fn path_string(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        let parts: Vec<String> = path.iter().map(|i| i.to_string()).collect();
        format!("root/{}", parts.join("/"))
    }
}

impl BetaTree {
    /// Structural constructor; no labelling rule is checked.
    pub fn new(label: u32, children: Vec<BetaTree>) -> Self {
        BetaTree { label, children }
    }

    pub fn leaf() -> Self {
        BetaTree::new(1, Vec::new())
    }

    pub fn edge() -> Self {
        BetaTree::new(1, vec![BetaTree::leaf()])
    }

    /// A root over `children` with its label given by the root-sum rule
    /// (1 when there are no children).
    pub fn rooted(children: Vec<BetaTree>) -> Self {
        let mut t = BetaTree::new(0, children);
        t.label = t.root_value();
        t
    }

    pub fn label(&self) -> u32 {
        self.label
    }

    pub fn children(&self) -> &[BetaTree] {
        &self.children
    }

    pub fn into_parts(self) -> (u32, Vec<BetaTree>) {
        (self.label, self.children)
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(BetaTree::node_count)
            .sum::<usize>()
    }

    pub fn child_sum(&self) -> u32 {
        self.children.iter().map(|c| c.label).sum()
    }

    /// Label this node would carry as a root: children sum, or 1 for a leaf.
    pub fn root_value(&self) -> u32 {
        if self.is_leaf() {
            1
        } else {
            self.child_sum()
        }
    }

    pub fn with_label(mut self, label: u32) -> Self {
        self.label = label;
        self
    }

    /// Re-root this sub-tree: same shape, label reset by the root-sum rule.
    pub fn rerooted(self) -> Self {
        let label = self.root_value();
        self.with_label(label)
    }

    /// Nodes of the rightmost path, root first, rightmost leaf last.
    pub fn rightmost_path(&self) -> Vec<&BetaTree> {
        let mut path = vec![self];
        let mut cur = self;
        while let Some(last) = cur.children.last() {
            path.push(last);
            cur = last;
        }
        path
    }

    pub fn stats(&self) -> TreeStats {
        let path = self.rightmost_path();
        TreeStats {
            root_label: self.label,
            sub: self.children.len() as u32,
            rpath: (path.len() - 1) as u32,
            rsub: path[1..].iter().filter(|n| n.label == 1).count() as u32,
        }
    }

    /// Checks the three labelling rules, reporting the first offending node
    /// in preorder.
    pub fn validate(&self) -> Result<(), Violation> {
        let mut path = Vec::new();
        validate_node(self, true, &mut path)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Parse then validate.
    pub fn parse_valid(s: &str) -> Result<BetaTree, TreeError> {
        let t = BetaTree::from_text(s)?;
        t.validate()?;
        Ok(t)
    }
}

fn validate_node(t: &BetaTree, is_root: bool, path: &mut Vec<usize>) -> Result<(), Violation> {
    let fail = |rule, path: &Vec<usize>| {
        Err(Violation {
            path: path.clone(),
            label: t.label,
            rule,
        })
    };
    if t.label == 0 {
        return fail(Rule::NonPositive, path);
    }
    if t.is_leaf() {
        if t.label != 1 {
            return fail(Rule::LeafNotOne, path);
        }
    } else {
        let sum = t.child_sum();
        if is_root && t.label != sum {
            return fail(Rule::RootSum { sum }, path);
        }
        if !is_root && t.label > sum {
            return fail(Rule::InteriorBound { sum }, path);
        }
    }
    for (i, c) in t.children.iter().enumerate() {
        path.push(i);
        validate_node(c, false, path)?;
        path.pop();
    }
    Ok(())
}

impl fmt::Debug for BetaTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for BetaTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
