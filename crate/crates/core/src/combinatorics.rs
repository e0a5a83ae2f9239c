//! Indexing of edges and r-subsets.
//!
//! Edges of `K_n` are numbered lexicographically over pairs `(i, j)` with
//! `i < j`. Subsets of a fixed size are numbered in colex order, so the rank
//! of a subset does not depend on `n`.

use crate::error::{Error, Result};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// `n (n-1) ... (n-h+1)`.
pub fn falling_factorial(n: usize, h: usize) -> usize {
    if h > n {
        return 0;
    }
    (0..h).map(|i| n - i).product()
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lexicographic index of the edge `{i, j}` with `i < j < n`.
pub fn edge_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i == j {
        return Err(Error::input(format!("edge {{{i}, {j}}} is a self-loop")));
    }
    if i > j || j >= n {
        return Err(Error::input(format!(
            "edge ({i}, {j}) must satisfy i < j < n = {n}"
        )));
    }
    Ok(edge_id(i, j, n))
}

/// Unchecked [`edge_index`] accepting either endpoint order.
#[inline]
pub fn edge_id(a: usize, b: usize, n: usize) -> usize {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Endpoints of every edge of `K_n`, in index order.
pub fn edge_list(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((i, j));
        }
    }
    out
}

/// Colex rank `sum_i C(s_i, i)` (1-based `i`) of a strictly increasing set.
pub fn subset_rank(set: &[usize]) -> Result<usize> {
    if let Some(w) = set.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::input(format!(
            "subset must be strictly increasing, found {} before {}",
            w[0], w[1]
        )));
    }
    Ok(colex_rank(set))
}

#[inline]
pub fn colex_rank(set: &[usize]) -> usize {
    set.iter()
        .enumerate()
        .map(|(i, &s)| binomial(s, i + 1))
        .sum()
}

/// Inverse of [`subset_rank`] for subsets of size `r`.
pub fn subset_unrank(mut rank: usize, r: usize) -> Vec<usize> {
    let mut out = vec![0; r];
    for i in (1..=r).rev() {
        // largest s with C(s, i) <= rank
        let mut s = i - 1;
        while binomial(s + 1, i) <= rank {
            s += 1;
        }
        rank -= binomial(s, i);
        out[i - 1] = s;
    }
    out
}

/// All `r`-subsets of `[0, n)` in colex order.
///
/// Use [`ColexSubsets::current`] together with [`ColexSubsets::advance`] in
/// hot loops to avoid allocating; the `Iterator` impl clones each subset.
#[derive(Debug, Clone)]
pub struct ColexSubsets {
    n: usize,
    cur: Vec<usize>,
    started: bool,
    done: bool,
}

impl ColexSubsets {
    pub fn new(n: usize, r: usize) -> Self {
        ColexSubsets {
            n,
            cur: (0..r).collect(),
            started: false,
            done: r > n,
        }
    }

    pub fn current(&self) -> &[usize] {
        &self.cur
    }

    /// Moves to the next subset. Returns false once exhausted. The first call
    /// positions the iterator on the first subset.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        if !self.started {
            self.started = true;
            return true;
        }
        let r = self.cur.len();
        for i in 0..r {
            let limit = if i + 1 < r { self.cur[i + 1] } else { self.n };
            if self.cur[i] + 1 < limit {
                self.cur[i] += 1;
                for (t, slot) in self.cur[..i].iter_mut().enumerate() {
                    *slot = t;
                }
                return true;
            }
        }
        self.done = true;
        false
    }
}

impl Iterator for ColexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.advance() {
            Some(self.cur.clone())
        } else {
            None
        }
    }
}

/// Elements of `[0, n)` not in the sorted set `skip`.
pub(crate) fn complement(n: usize, skip: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| !skip.contains(v)).collect()
}
