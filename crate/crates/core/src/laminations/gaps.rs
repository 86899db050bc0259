use std::collections::VecDeque;

use num_complex::Complex64;

use super::{FiniteLamination, LaminationError};

/// Index of a complementary component of a lamination.
pub type GapId = usize;

/// The complementary components of a finite lamination and their dual tree.
///
/// A gap is recorded by the side it occupies relative to every leaf. With `n` leaves there
/// are `n + 1` gaps; leaf `k` joins the gaps `across[k].0` (negative side) and
/// `across[k].1` (positive side).
#[derive(Clone, Debug)]
pub struct Gaps {
    sides: Vec<Vec<bool>>,
    across: Vec<(GapId, GapId)>,
}

impl Gaps {
    pub fn new(lam: &FiniteLamination) -> Self {
        let n = lam.len();
        if n == 0 {
            return Gaps { sides: vec![Vec::new()], across: Vec::new() };
        }
        let mut sides: Vec<Vec<bool>> = Vec::new();
        let mut across = Vec::with_capacity(n);
        for k in 0..n {
            let mut ids = [0; 2];
            for (slot, side) in [false, true].into_iter().enumerate() {
                let v: Vec<bool> = (0..n).map(|j| if j == k { side } else { lam.side_of_leaf(k, j) }).collect();
                ids[slot] = match sides.iter().position(|s| *s == v) {
                    Some(id) => id,
                    None => {
                        sides.push(v);
                        sides.len() - 1
                    }
                };
            }
            across.push((ids[0], ids[1]));
        }
        Gaps { sides, across }
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    /// The gaps on the negative and positive side of leaf `k`.
    pub fn across(&self, k: usize) -> (GapId, GapId) {
        self.across[k]
    }

    /// Whether gap `g` lies on the positive side of leaf `k`.
    pub fn on_positive_side(&self, g: GapId, k: usize) -> bool {
        self.sides[g][k]
    }

    /// The gap containing `z`. Points on a leaf are assigned to its positive side.
    pub fn gap_of(&self, lam: &FiniteLamination, z: Complex64) -> GapId {
        let v: Vec<bool> = lam.leaves().iter().map(|l| l.side(z) >= 0.0).collect();
        if v.is_empty() {
            return 0;
        }
        self.sides.iter().position(|s| *s == v).unwrap_or_else(|| {
            // Rounding can produce an unrealized side vector right next to a leaf; fall back
            // to the gap that agrees on the most leaves.
            (0..self.sides.len())
                .max_by_key(|&g| self.sides[g].iter().zip(&v).filter(|(a, b)| a == b).count())
                .unwrap()
        })
    }

    pub fn check(&self, g: GapId) -> Result<(), LaminationError> {
        if g < self.len() {
            Ok(())
        } else {
            Err(LaminationError::UnknownGap(g))
        }
    }

    /// Leaves separating `from` and `to`, ordered starting next to `from`.
    pub fn path(&self, from: GapId, to: GapId) -> Result<Vec<usize>, LaminationError> {
        self.check(from)?;
        self.check(to)?;
        let parents = self.tree_from(from);
        let mut leaves = Vec::new();
        let mut g = to;
        while g != from {
            let (parent, leaf) = parents[g].expect("dual graph is a tree");
            leaves.push(leaf);
            g = parent;
        }
        leaves.reverse();
        Ok(leaves)
    }

    /// BFS parents: for each gap, the previous gap and the leaf crossed to reach it.
    pub fn tree_from(&self, root: GapId) -> Vec<Option<(GapId, usize)>> {
        let mut parent = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(g) = queue.pop_front() {
            for (k, &(a, b)) in self.across.iter().enumerate() {
                let other = if a == g {
                    b
                } else if b == g {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    parent[other] = Some((g, k));
                    queue.push_back(other);
                }
            }
        }
        parent
    }
}
