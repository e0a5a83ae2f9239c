//! Explicit local rainbow colourings and their ingredients.
//!
//! The `P_3` and `T_p` collections colour an edge `e` missing `v` by
//! `gamma(e ∪ {v})` for a triple colouring `gamma` in which every 4-set sees
//! at least 3 colours; edges through `v` get a colour outside `gamma`'s
//! image. `T_e` needs only the binary-label function `delta`.

use std::collections::HashMap;

use crate::certificate::{Certificate, Verdict};
use crate::colouring::{BinaryLabelling, Colour, HypergraphColouring, LocalColouringCollection};
use crate::combinatorics::{binomial, colex_rank, complement, edge_id, edge_list, ColexSubsets};
use crate::error::{Error, Result};
use crate::verification::verify_pq;

/// Least coordinate at which two equal-length bit sequences differ.
pub fn delta(x: &[u8], y: &[u8]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::input(format!(
            "labels have different lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    x.iter()
        .zip(y)
        .position(|(a, b)| a != b)
        .ok_or_else(|| Error::input("delta is undefined for equal labels"))
}

/// A single colouring of `E(K_n)` in lexicographic edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColouring {
    pub n: usize,
    pub k: usize,
    pub colours: Vec<Colour>,
}

impl EdgeColouring {
    pub fn colour(&self, a: usize, b: usize) -> Colour {
        self.colours[edge_id(a, b, self.n)]
    }

    /// First monochromatic triangle in colex order, if any.
    pub fn monochromatic_triangle(&self) -> Option<[usize; 3]> {
        ColexSubsets::new(self.n, 3)
            .map(|t| [t[0], t[1], t[2]])
            .find(|&[a, b, c]| {
                let ab = self.colour(a, b);
                ab == self.colour(a, c) && ab == self.colour(b, c)
            })
    }
}

/// Colours `{i, j}` by `delta(label(i), label(j))`; no triangle is
/// monochromatic and at most `ceil(log2 n)` colours are used.
pub fn mtf_edge_colouring(n: usize) -> Result<EdgeColouring> {
    if n < 2 {
        return Err(Error::input(format!("need n >= 2, got {n}")));
    }
    let labels = BinaryLabelling::new(n);
    let colours = edge_list(n)
        .into_iter()
        .map(|(i, j)| labels.delta(i, j) as Colour)
        .collect();
    Ok(EdgeColouring {
        n,
        k: labels.m(),
        colours,
    })
}

/// The logarithmic `(n, T_e)`-local collection. Edges through `v` get the even
/// colour `2 delta(xy)`; the others get `2 max(delta(vx), delta(vy)) + 1`.
pub fn construct_te(n: usize) -> Result<LocalColouringCollection> {
    if n < 2 {
        return Err(Error::input(format!("need n >= 2, got {n}")));
    }
    let labels = BinaryLabelling::new(n);
    let k = 2 * labels.m();
    LocalColouringCollection::from_fn(n, k, |v, (x, y)| {
        if v == x || v == y {
            2 * labels.delta(x, y) as Colour
        } else {
            let far = labels.delta(v, x).max(labels.delta(v, y));
            2 * far as Colour + 1
        }
    })
}

fn require_43(n: usize, gamma: &HypergraphColouring) -> Result<()> {
    if gamma.n() != n || gamma.r() != 3 {
        return Err(Error::input(format!(
            "gamma must colour the triples of [{n}], got n = {}, r = {}",
            gamma.n(),
            gamma.r()
        )));
    }
    if n < 4 {
        return Err(Error::input(format!("need n >= 4, got {n}")));
    }
    if let Verdict::Fails(cert) = verify_pq(gamma, 4, 3)? {
        return Err(Error::precondition("gamma is not a (4,3)-colouring", Some(cert)));
    }
    Ok(())
}

/// The `(n, P_3)`-local collection: `f_v(e) = z0` if `v ∈ e`, else
/// `gamma(e ∪ {v})`, with `z0 = gamma.k()`.
pub fn construct_p3(n: usize, gamma: &HypergraphColouring) -> Result<LocalColouringCollection> {
    require_43(n, gamma)?;
    let fresh = gamma.k() as Colour;
    LocalColouringCollection::from_fn(n, gamma.k() + 1, |v, (x, y)| {
        if v == x || v == y {
            fresh
        } else {
            gamma.colour_with(&[x, y], v)
        }
    })
}

/// The `(n, T_p)`-local collection: edges through `v` take the binary-label
/// colouring shifted past `gamma`'s colours, the rest `gamma(e ∪ {v})`.
pub fn construct_tp(n: usize, gamma: &HypergraphColouring) -> Result<LocalColouringCollection> {
    require_43(n, gamma)?;
    let labels = BinaryLabelling::new(n);
    let offset = gamma.k() as Colour;
    LocalColouringCollection::from_fn(n, gamma.k() + labels.m(), |v, (x, y)| {
        if v == x || v == y {
            offset + labels.delta(x, y) as Colour
        } else {
            gamma.colour_with(&[x, y], v)
        }
    })
}

/// Per-vertex colourings of the `w`-subsets of `[n]`: `f_v(x) = gamma(x ∪ {v})`
/// for `v ∉ x`, and the reserved colour `gamma.k()` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KwColouring {
    n: usize,
    w: usize,
    k: usize,
    /// row `v` holds `C(n, w)` colours in colex order
    table: Vec<Colour>,
}

impl KwColouring {
    pub fn new(n: usize, w: usize, k: usize, table: Vec<Colour>) -> Result<Self> {
        if w < 2 || w > n {
            return Err(Error::input(format!("need 2 <= w <= n, got w = {w}, n = {n}")));
        }
        if table.len() != n * binomial(n, w) {
            return Err(Error::input(format!(
                "table has {} entries, expected n * C(n,w) = {}",
                table.len(),
                n * binomial(n, w)
            )));
        }
        if table.iter().any(|&c| c as usize >= k) {
            return Err(Error::input(format!("a colour is not below k = {k}")));
        }
        Ok(KwColouring { n, w, k, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn table(&self) -> &[Colour] {
        &self.table
    }

    /// `f_v(set)` for a sorted `w`-set.
    pub fn colour(&self, v: usize, set: &[usize]) -> Colour {
        debug_assert_eq!(set.len(), self.w);
        self.table[v * binomial(self.n, self.w) + colex_rank(set)]
    }
}

/// Builds the bounded-weight colouring after checking that `gamma` colours
/// `(w+1)`-sets with at least `w+1` colours on every `(w+2)`-set.
pub fn construct_kw(n: usize, w: usize, gamma: &HypergraphColouring) -> Result<KwColouring> {
    if w < 2 || w + 2 > n {
        return Err(Error::input(format!("need 2 <= w and w + 2 <= n, got w = {w}, n = {n}")));
    }
    if gamma.n() != n || gamma.r() != w + 1 {
        return Err(Error::input(format!(
            "gamma must colour the {}-sets of [{n}], got n = {}, r = {}",
            w + 1,
            gamma.n(),
            gamma.r()
        )));
    }
    if let Verdict::Fails(cert) = verify_pq(gamma, w + 2, w + 1)? {
        return Err(Error::precondition(
            format!("gamma is not a ({},{})-colouring", w + 2, w + 1),
            Some(cert),
        ));
    }
    construct_kw_unchecked(n, w, gamma)
}

/// [`construct_kw`] without the `gamma` property check; used to exhibit
/// failures when the precondition is dropped.
pub fn construct_kw_unchecked(n: usize, w: usize, gamma: &HypergraphColouring) -> Result<KwColouring> {
    if gamma.n() != n || gamma.r() != w + 1 {
        return Err(Error::input("gamma shape does not match (n, w)"));
    }
    let fresh = gamma.k() as Colour;
    let sets: Vec<Vec<usize>> = ColexSubsets::new(n, w).collect();
    let mut table = Vec::with_capacity(n * sets.len());
    for v in 0..n {
        for set in &sets {
            table.push(if set.contains(&v) {
                fresh
            } else {
                gamma.colour_with(set, v)
            });
        }
    }
    KwColouring::new(n, w, gamma.k() + 1, table)
}

/// Refines every row by the rows of the anchor vertices: `f'_v(e)` is the
/// tuple `(f_v(e), f_{u_1}(e), ..., f_{u_s}(e))`, renumbered densely in
/// first-seen order (rows by vertex, edges lexicographic).
pub fn augment_for_isolated(
    base: &LocalColouringCollection,
    anchors: &[usize],
) -> Result<LocalColouringCollection> {
    if anchors.is_empty() {
        return Err(Error::input("need at least one anchor vertex"));
    }
    for (i, &u) in anchors.iter().enumerate() {
        if u >= base.n() {
            return Err(Error::input(format!("anchor {u} is not below n = {}", base.n())));
        }
        if anchors[..i].contains(&u) {
            return Err(Error::input(format!("anchor {u} repeated")));
        }
    }
    let m = base.edge_count();
    let mut ids: HashMap<Vec<Colour>, Colour> = HashMap::new();
    let mut table = Vec::with_capacity(base.table().len());
    let mut tuple = Vec::with_capacity(anchors.len() + 1);
    for v in 0..base.n() {
        for e in 0..m {
            tuple.clear();
            tuple.push(base.get(v, e));
            tuple.extend(anchors.iter().map(|&u| base.get(u, e)));
            let next = ids.len() as Colour;
            let id = *ids.entry(tuple.clone()).or_insert(next);
            table.push(id);
        }
    }
    LocalColouringCollection::new(base.n(), ids.len().max(1), table)
}

/// Every `r`-subset gets its own colour (its colex rank).
pub fn gamma_injective(n: usize, r: usize) -> Result<HypergraphColouring> {
    if r > n {
        return Err(Error::input(format!("r = {r} exceeds n = {n}")));
    }
    let total = binomial(n, r);
    HypergraphColouring::new(n, r, total, (0..total as Colour).collect())
}

/// First-fit `(p, q)`-colouring: subsets in colex order take the least colour
/// that leaves every `p`-set able to reach `q` colours even if all of its
/// still-uncoloured subsets later receive fresh colours.
pub fn gamma_greedy(n: usize, r: usize, p: usize, q: usize) -> Result<HypergraphColouring> {
    if r < 2 || r >= p || p > n {
        return Err(Error::input(format!(
            "need 2 <= r < p <= n, got r = {r}, p = {p}, n = {n}"
        )));
    }
    if q == 0 || q > binomial(p, r) {
        return Err(Error::input(format!(
            "need 1 <= q <= C(p,r) = {}, got q = {q}",
            binomial(p, r)
        )));
    }
    const UNSET: Colour = Colour::MAX;
    let total = binomial(n, r);
    let mut values = vec![UNSET; total];
    let local: Vec<Vec<usize>> = ColexSubsets::new(p, r).collect();
    let mut forbidden: Vec<Colour> = Vec::new();
    let mut pset_colours: Vec<Colour> = Vec::new();
    let mut sub = vec![0usize; r];
    let mut pset = Vec::with_capacity(p);

    let mut subsets = ColexSubsets::new(n, r);
    let mut rank = 0;
    while subsets.advance() {
        let s = subsets.current();
        let outside = complement(n, s);
        forbidden.clear();
        let mut extras = ColexSubsets::new(outside.len(), p - r);
        while extras.advance() {
            pset.clear();
            pset.extend_from_slice(s);
            pset.extend(extras.current().iter().map(|&i| outside[i]));
            pset.sort_unstable();
            pset_colours.clear();
            let mut unset = 0;
            for idx in &local {
                for (slot, &i) in sub.iter_mut().zip(idx) {
                    *slot = pset[i];
                }
                let sub_rank = colex_rank(&sub);
                if sub_rank == rank {
                    continue;
                }
                match values[sub_rank] {
                    UNSET => unset += 1,
                    c => pset_colours.push(c),
                }
            }
            pset_colours.sort_unstable();
            pset_colours.dedup();
            // reusing one of these colours keeps the optimistic count at
            // distinct + unset, which must still reach q
            if pset_colours.len() + unset < q {
                forbidden.extend_from_slice(&pset_colours);
            }
        }
        forbidden.sort_unstable();
        forbidden.dedup();
        let mut colour = 0;
        for &f in &forbidden {
            if f == colour {
                colour += 1;
            } else if f > colour {
                break;
            }
        }
        values[rank] = colour;
        rank += 1;
    }
    let k = values.iter().map(|&c| c as usize + 1).max().unwrap_or(1);
    HypergraphColouring::new(n, r, k, values)
}

/// Where the base hypergraph colouring comes from.
#[derive(Clone, Debug)]
pub enum GammaProvider {
    Injective,
    Greedy,
    FromFile(HypergraphColouring),
}

impl GammaProvider {
    /// A colouring of the `r`-subsets of `[n]` verified to be a
    /// `(p, q)`-colouring.
    pub fn provide(&self, n: usize, r: usize, p: usize, q: usize) -> Result<HypergraphColouring> {
        let g = match self {
            GammaProvider::Injective => gamma_injective(n, r)?,
            GammaProvider::Greedy => gamma_greedy(n, r, p, q)?,
            GammaProvider::FromFile(g) => {
                if g.n() != n || g.r() != r {
                    return Err(Error::input(format!(
                        "stored colouring has n = {}, r = {}; need n = {n}, r = {r}",
                        g.n(),
                        g.r()
                    )));
                }
                g.clone()
            }
        };
        match verify_pq(&g, p, q)? {
            Verdict::Holds => Ok(g),
            Verdict::Fails(cert) => Err(Error::precondition(
                format!("supplied colouring is not a ({p},{q})-colouring"),
                Some(cert),
            )),
        }
    }
}

/// Certificate-carrying helper for callers that want the failing set.
pub fn precondition_certificate(err: &Error) -> Option<&Certificate> {
    match err {
        Error::Precondition { certificate, .. } => certificate.as_deref(),
        _ => None,
    }
}
