//! Exhaustive generation.
//!
//! Trees are produced shape by shape. Shapes (unlabelled plane trees) are
//! preorder outdegree sequences, enumerated with smaller outdegrees first at
//! each position. For a fixed shape, labels run through an odometer over
//! the non-root internal nodes in postorder: a node's admissible range
//! depends only on its children, which come earlier in postorder, so
//! resetting every later position to 1 after an increment is always legal
//! and every labelling is produced exactly once.

use rayon::prelude::*;

use super::BetaTree;

/// Preorder outdegree sequence of an unlabelled plane tree.
pub type Shape = Box<[u8]>;

/// All plane tree shapes on `n` nodes, in generation order.
pub fn shapes(n: usize) -> Vec<Shape> {
    assert!(n >= 1, "a tree has at least one node");
    assert!(n <= 256, "shape encoding holds outdegrees below 256");
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    extend_shapes(n, 1, &mut cur, &mut out);
    out
}

// `slots`: children still owed to already placed nodes.
fn extend_shapes(n: usize, slots: usize, cur: &mut Vec<u8>, out: &mut Vec<Shape>) {
    let placed = cur.len();
    if placed == n {
        if slots == 0 {
            out.push(cur.clone().into_boxed_slice());
        }
        return;
    }
    if slots == 0 {
        return;
    }
    let remaining = n - placed - 1;
    let open = slots - 1;
    // every open slot needs a node of its own
    if open > remaining {
        return;
    }
    for d in 0..=(remaining - open) {
        cur.push(d as u8);
        extend_shapes(n, open + d, cur, out);
        cur.pop();
    }
}

/// Every labelling of one shape, as valid trees.
pub fn trees_with_shape(shape: &[u8]) -> ShapeTrees {
    ShapeTrees::new(shape)
}

pub struct ShapeTrees {
    children: Vec<Vec<usize>>,
    /// Non-root internal nodes, postorder.
    vars: Vec<usize>,
    labels: Vec<u32>,
    started: bool,
    done: bool,
}

impl ShapeTrees {
    fn new(shape: &[u8]) -> Self {
        let n = shape.len();
        let mut children = vec![Vec::new(); n];
        // (node, children still to attach)
        let mut stack: Vec<(usize, u8)> = Vec::new();
        for (i, &d) in shape.iter().enumerate() {
            if let Some(top) = stack.last_mut() {
                children[top.0].push(i);
                top.1 -= 1;
                if top.1 == 0 {
                    stack.pop();
                }
            }
            if d > 0 {
                stack.push((i, d));
            }
        }
        let mut vars = Vec::new();
        postorder(0, &children, &mut vars);
        vars.retain(|&v| v != 0 && !children[v].is_empty());
        ShapeTrees {
            children,
            vars,
            labels: vec![1; n],
            started: false,
            done: false,
        }
    }

    fn bound(&self, v: usize) -> u32 {
        self.children[v].iter().map(|&c| self.labels[c]).sum()
    }

    fn build(&self, v: usize) -> BetaTree {
        let kids: Vec<BetaTree> = self.children[v].iter().map(|&c| self.build(c)).collect();
        if v == 0 {
            BetaTree::rooted(kids)
        } else {
            BetaTree::new(self.labels[v], kids)
        }
    }
}

fn postorder(v: usize, children: &[Vec<usize>], out: &mut Vec<usize>) {
    for &c in &children[v] {
        postorder(c, children, out);
    }
    out.push(v);
}

impl Iterator for ShapeTrees {
    type Item = BetaTree;

    fn next(&mut self) -> Option<BetaTree> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.build(0));
        }
        for i in (0..self.vars.len()).rev() {
            let v = self.vars[i];
            if self.labels[v] < self.bound(v) {
                self.labels[v] += 1;
                for &w in &self.vars[i + 1..] {
                    self.labels[w] = 1;
                }
                return Some(self.build(0));
            }
        }
        self.done = true;
        None
    }
}

/// Stream of every valid tree on `n` nodes, each exactly once.
pub fn generate_all(n: usize) -> TreeGenerator {
    TreeGenerator {
        shapes: shapes(n).into_iter(),
        current: None,
    }
}

pub struct TreeGenerator {
    shapes: std::vec::IntoIter<Shape>,
    current: Option<ShapeTrees>,
}

impl Iterator for TreeGenerator {
    type Item = BetaTree;

    fn next(&mut self) -> Option<BetaTree> {
        loop {
            if let Some(cur) = self.current.as_mut() {
                if let Some(t) = cur.next() {
                    return Some(t);
                }
            }
            let shape = self.shapes.next()?;
            self.current = Some(trees_with_shape(&shape));
        }
    }
}

/// Same trees as [`generate_all`], partitioned by shape across the rayon pool.
pub fn par_generate_all(n: usize) -> impl ParallelIterator<Item = BetaTree> {
    shapes(n)
        .into_par_iter()
        .flat_map_iter(|s| trees_with_shape(&s))
}
