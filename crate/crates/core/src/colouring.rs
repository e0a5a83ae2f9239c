//! Colouring containers: per-vertex edge colourings of `K_n`, colourings of
//! `r`-subsets, families of total orders, and binary vertex labels.

use rayon::prelude::*;

use crate::combinatorics::{binomial, colex_rank, edge_id, edge_list, pair_count};
use crate::error::{Error, Result};

pub type Colour = u32;

/// One `k`-colouring `f_v` of `E(K_n)` for every vertex `v`, stored row-major
/// (row `v`, edges in lexicographic order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalColouringCollection {
    n: usize,
    k: usize,
    table: Vec<Colour>,
}

impl LocalColouringCollection {
    pub fn new(n: usize, k: usize, table: Vec<Colour>) -> Result<Self> {
        let expected = n * pair_count(n);
        if table.len() != expected {
            return Err(Error::input(format!(
                "table has {} entries, expected n * C(n,2) = {expected}",
                table.len()
            )));
        }
        if let Some(pos) = table.iter().position(|&c| c as usize >= k) {
            return Err(Error::input(format!(
                "colour {} at row {}, edge {} is not below k = {k}",
                table[pos],
                pos / pair_count(n).max(1),
                pos % pair_count(n).max(1)
            )));
        }
        Ok(LocalColouringCollection { n, k, table })
    }

    /// Builds every row from `colour(v, (i, j))`, rows computed in parallel.
    /// Colours must be below `k`.
    pub fn from_fn<F>(n: usize, k: usize, colour: F) -> Result<Self>
    where
        F: Fn(usize, (usize, usize)) -> Colour + Sync,
    {
        let edges = edge_list(n);
        let rows: Vec<Vec<Colour>> = (0..n)
            .into_par_iter()
            .map(|v| edges.iter().map(|&e| colour(v, e)).collect())
            .collect();
        Self::new(n, k, rows.concat())
    }

    /// Every row equal to the constant colouring `0`.
    pub fn constant(n: usize) -> Self {
        LocalColouringCollection {
            n,
            k: 1,
            table: vec![0; n * pair_count(n)],
        }
    }

    /// Every row gives edge `e` colour `index(e)`.
    pub fn injective_rows(n: usize) -> Self {
        let m = pair_count(n);
        let table = (0..n).flat_map(|_| 0..m as Colour).collect();
        LocalColouringCollection {
            n,
            k: m.max(1),
            table,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        pair_count(self.n)
    }

    pub fn table(&self) -> &[Colour] {
        &self.table
    }

    pub fn row(&self, v: usize) -> &[Colour] {
        let m = pair_count(self.n);
        &self.table[v * m..(v + 1) * m]
    }

    /// `f_v` of the edge with lexicographic index `edge`.
    #[inline]
    pub fn get(&self, v: usize, edge: usize) -> Colour {
        self.table[v * pair_count(self.n) + edge]
    }

    /// `f_v({a, b})`.
    #[inline]
    pub fn colour(&self, v: usize, a: usize, b: usize) -> Colour {
        self.get(v, edge_id(a, b, self.n))
    }

    /// Number of distinct colours actually present.
    pub fn colours_used(&self) -> usize {
        let mut seen = vec![false; self.k];
        for &c in &self.table {
            seen[c as usize] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }
}

/// A colouring of all `r`-subsets of `[0, n)`, indexed by colex rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypergraphColouring {
    n: usize,
    r: usize,
    k: usize,
    values: Vec<Colour>,
}

impl HypergraphColouring {
    pub fn new(n: usize, r: usize, k: usize, values: Vec<Colour>) -> Result<Self> {
        if r < 2 {
            return Err(Error::input(format!("uniformity r = {r} must be at least 2")));
        }
        if r > n {
            return Err(Error::input(format!("uniformity r = {r} exceeds n = {n}")));
        }
        let expected = binomial(n, r);
        if values.len() != expected {
            return Err(Error::input(format!(
                "{} values given, expected C({n},{r}) = {expected}",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|&c| c as usize >= k) {
            return Err(Error::input(format!(
                "colour {} at rank {pos} is not below k = {k}",
                values[pos]
            )));
        }
        Ok(HypergraphColouring { n, r, k, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[Colour] {
        &self.values
    }

    /// Colour of the sorted `r`-set `set`.
    #[inline]
    pub fn colour_of(&self, set: &[usize]) -> Colour {
        debug_assert_eq!(set.len(), self.r);
        self.values[colex_rank(set)]
    }

    /// Colour of `set ∪ {extra}` where `extra ∉ set`; `set` sorted.
    pub fn colour_with(&self, set: &[usize], extra: usize) -> Colour {
        let mut buf = [0usize; 16];
        let mut len = 0;
        let mut placed = false;
        for &x in set {
            if !placed && extra < x {
                buf[len] = extra;
                len += 1;
                placed = true;
            }
            buf[len] = x;
            len += 1;
        }
        if !placed {
            buf[len] = extra;
            len += 1;
        }
        self.colour_of(&buf[..len])
    }

    pub fn colours_used(&self) -> usize {
        let mut seen = vec![false; self.k];
        for &c in &self.values {
            seen[c as usize] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }
}

/// `M` total orders on `[0, n)`. Each order is listed from least to greatest.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderFamily {
    n: usize,
    orders: Vec<Vec<usize>>,
    /// `ranks[j][x]` is the position of `x` in order `j`
    ranks: Vec<Vec<usize>>,
}

impl OrderFamily {
    pub fn new(n: usize, orders: Vec<Vec<usize>>) -> Result<Self> {
        let mut ranks = Vec::with_capacity(orders.len());
        for (j, order) in orders.iter().enumerate() {
            if order.len() != n {
                return Err(Error::input(format!(
                    "order {j} has {} entries, expected {n}",
                    order.len()
                )));
            }
            let mut rank = vec![usize::MAX; n];
            for (pos, &x) in order.iter().enumerate() {
                if x >= n || rank[x] != usize::MAX {
                    return Err(Error::input(format!("order {j} is not a permutation of 0..{n}")));
                }
                rank[x] = pos;
            }
            ranks.push(rank);
        }
        Ok(OrderFamily { n, orders, ranks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of orders `M`.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    pub fn rank(&self, j: usize, x: usize) -> usize {
        self.ranks[j][x]
    }

    /// The element of `set` that is largest in order `j`.
    pub fn max_in(&self, j: usize, set: &[usize]) -> usize {
        let rank = &self.ranks[j];
        *set.iter().max_by_key(|&&x| rank[x]).expect("non-empty set")
    }

    pub(crate) fn push(&mut self, order: Vec<usize>) {
        let mut rank = vec![0; self.n];
        for (pos, &x) in order.iter().enumerate() {
            rank[x] = pos;
        }
        self.orders.push(order);
        self.ranks.push(rank);
    }
}

/// Vertex `i` labelled by the binary expansion of `i` over
/// `m = ceil(log2 n)` coordinates, coordinate 0 the least significant bit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BinaryLabelling {
    n: usize,
    m: usize,
}

impl BinaryLabelling {
    pub fn new(n: usize) -> Self {
        BinaryLabelling {
            n,
            m: ceil_log2(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn label(&self, v: usize) -> Vec<u8> {
        (0..self.m).map(|t| (v >> t & 1) as u8).collect()
    }

    pub fn labels(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|v| self.label(v)).collect()
    }

    /// First coordinate where the labels of `a != b` differ.
    #[inline]
    pub fn delta(&self, a: usize, b: usize) -> usize {
        debug_assert_ne!(a, b);
        (a ^ b).trailing_zeros() as usize
    }
}

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collection_rejects_bad_shapes() {
        assert!(LocalColouringCollection::new(3, 2, vec![0; 8]).is_err());
        assert!(LocalColouringCollection::new(3, 2, vec![0, 0, 2, 0, 0, 0, 0, 0, 0]).is_err());
        let c = LocalColouringCollection::new(3, 2, vec![0, 1, 0, 1, 1, 1, 0, 0, 0]).unwrap();
        assert_eq!(c.colour(0, 2, 1), 0);
        assert_eq!(c.colour(1, 0, 1), 1);
        assert_eq!(c.colours_used(), 2);
    }

    #[test]
    fn hypergraph_colouring_lookup() {
        let values: Vec<Colour> = (0..10).collect();
        let g = HypergraphColouring::new(5, 3, 10, values).unwrap();
        assert_eq!(g.colour_of(&[2, 3, 4]), 9);
        assert_eq!(g.colour_with(&[2, 4], 3), 9);
        assert_eq!(g.colour_with(&[0, 1], 3), 1);
        assert_eq!(g.colour_with(&[1, 2], 0), 0);
        assert!(HypergraphColouring::new(5, 3, 10, vec![0; 9]).is_err());
        assert!(HypergraphColouring::new(5, 3, 1, vec![1; 10]).is_err());
    }

    #[test]
    fn order_family_validation_and_max() {
        assert!(OrderFamily::new(3, vec![vec![0, 1, 1]]).is_err());
        assert!(OrderFamily::new(3, vec![vec![0, 1]]).is_err());
        let f = OrderFamily::new(4, vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]]).unwrap();
        assert_eq!(f.max_in(0, &[1, 3]), 3);
        assert_eq!(f.max_in(1, &[1, 3]), 1);
    }

    #[test]
    fn binary_labels() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        let b = BinaryLabelling::new(5);
        assert_eq!(b.m(), 3);
        assert_eq!(b.label(6 % 5), vec![1, 0, 0]);
        let labels = b.labels();
        for i in 0..5 {
            for j in 0..i {
                assert_ne!(labels[i], labels[j]);
            }
        }
    }
}
