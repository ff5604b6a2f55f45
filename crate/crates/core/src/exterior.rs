//! Monomial combinatorics of the exterior algebra `Λ(x_0, …, x_n)`.

use itertools::Itertools;

use crate::linalg::{Fp, Mat};

/// Maximum number of indeterminates supported by the bitmask encoding.
pub const MAX_VARS: usize = 16;

/// A monomial `x_{i_1} ∧ … ∧ x_{i_k}` with `i_1 < … < i_k`, stored as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtMonomial {
    n_vars: u8,
    mask: u32,
}

impl ExtMonomial {
    pub fn one(n_vars: usize) -> Self {
        assert!(n_vars <= MAX_VARS);
        ExtMonomial { n_vars: n_vars as u8, mask: 0 }
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars && n_vars <= MAX_VARS);
        ExtMonomial { n_vars: n_vars as u8, mask: 1 << i }
    }

    /// Panics unless `indices` is strictly increasing and in range.
    pub fn from_indices(n_vars: usize, indices: &[usize]) -> Self {
        assert!(n_vars <= MAX_VARS);
        assert!(indices.windows(2).all(|w| w[0] < w[1]), "indices must increase");
        let mut mask = 0;
        for &i in indices {
            assert!(i < n_vars);
            mask |= 1 << i;
        }
        ExtMonomial { n_vars: n_vars as u8, mask }
    }

    pub fn from_mask(n_vars: usize, mask: u32) -> Self {
        assert!(n_vars <= MAX_VARS && mask >> n_vars == 0);
        ExtMonomial { n_vars: n_vars as u8, mask }
    }

    pub fn n_vars(self) -> usize {
        self.n_vars as usize
    }
    pub fn mask(self) -> u32 {
        self.mask
    }
    pub fn degree(self) -> usize {
        self.mask.count_ones() as usize
    }
    pub fn indices(self) -> Vec<usize> {
        (0..self.n_vars as usize).filter(|&i| self.mask >> i & 1 == 1).collect()
    }
    pub fn contains(self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }
}

/// `a ∧ b`: `None` when the index sets meet, otherwise the sign of the merge
/// permutation and the sorted union.
pub fn wedge(a: ExtMonomial, b: ExtMonomial) -> Option<(i8, ExtMonomial)> {
    assert_eq!(a.n_vars, b.n_vars);
    if a.mask & b.mask != 0 {
        return None;
    }
    // Each index of `b` must move left past every larger index of `a`.
    let mut swaps = 0u32;
    let mut bm = b.mask;
    while bm != 0 {
        let j = bm.trailing_zeros();
        swaps += (a.mask >> (j + 1)).count_ones();
        bm &= bm - 1;
    }
    let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, ExtMonomial { n_vars: a.n_vars, mask: a.mask | b.mask }))
}

/// All `2^(n+1)` monomials, grouped by degree, lexicographic within a degree.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    n_vars: usize,
    by_degree: Vec<Vec<ExtMonomial>>,
    /// `position[mask]` = index of the monomial inside its degree block.
    position: Vec<usize>,
}

impl AlgebraBasis {
    pub fn new(n_vars: usize) -> Self {
        assert!(n_vars <= MAX_VARS);
        let mut by_degree = Vec::with_capacity(n_vars + 1);
        let mut position = vec![0; 1 << n_vars];
        for d in 0..=n_vars {
            let block: Vec<ExtMonomial> =
                (0..n_vars).combinations(d).map(|c| ExtMonomial::from_indices(n_vars, &c)).collect();
            for (k, m) in block.iter().enumerate() {
                position[m.mask as usize] = k;
            }
            by_degree.push(block);
        }
        AlgebraBasis { n_vars, by_degree, position }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Monomials of degree `d` (empty outside `0..=n+1`).
    pub fn degree(&self, d: i64) -> &[ExtMonomial] {
        if d < 0 || d as usize > self.n_vars {
            &[]
        } else {
            &self.by_degree[d as usize]
        }
    }

    pub fn position(&self, m: ExtMonomial) -> usize {
        self.position[m.mask as usize]
    }

    pub fn total_dim(&self) -> usize {
        1 << self.n_vars
    }

    /// Matrix of right multiplication by the linear form `v` from the degree-`d`
    /// span to the degree-`(d+1)` span, in row-vector convention.
    pub fn right_mult_matrix(&self, field: Fp, v: &[u32], d: usize) -> Mat {
        assert_eq!(v.len(), self.n_vars);
        let src = self.degree(d as i64);
        let tgt = self.degree(d as i64 + 1);
        let mut m = Mat::zero(field, src.len(), tgt.len());
        for (r, &mono) in src.iter().enumerate() {
            for (i, &c) in v.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if let Some((s, prod)) = wedge(mono, ExtMonomial::var(self.n_vars, i)) {
                    let val = if s > 0 { c } else { field.neg(c) };
                    m.add_at(r, self.position(prod), val);
                }
            }
        }
        m
    }

    /// Right multiplication by `v` in every degree `0..=n`.
    pub fn right_mult_matrices(&self, field: Fp, v: &[u32]) -> Vec<Mat> {
        (0..self.n_vars).map(|d| self.right_mult_matrix(field, v, d)).collect()
    }
}

pub fn binomial(n: i64, k: i64) -> usize {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}
