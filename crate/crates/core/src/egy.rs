//! Scrambling order families and the product lift that raises the uniformity
//! of a `(r, r-1)`-colouring by one.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::certificate::{Certificate, Verdict};
use crate::colouring::{Colour, HypergraphColouring, OrderFamily};
use crate::combinatorics::{binomial, ColexSubsets};
use crate::error::{Error, Result};
use crate::verification::verify_pq;

/// Largest ground set accepted by [`scrambling_exact_min`].
pub const EXACT_SCRAMBLING_MAX_N: usize = 8;

/// Outcome of [`scrambling_random`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RandomScrambling {
    Found(OrderFamily),
    /// `max_rounds` orders were drawn without reaching the property.
    Exhausted {
        partial: OrderFamily,
        violation: Certificate,
    },
}

/// Outcome of [`scrambling_exact_min`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactScrambling {
    /// A family of minimum size.
    Found(OrderFamily),
    /// No family with at most `m_cap` orders exists.
    Infeasible { m_cap: usize },
}

fn check_arity(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::input(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    Ok(())
}

/// Per `k`-subset bitmask of the positions already maximal in some order.
struct Coverage {
    sets: Vec<Vec<usize>>,
    masks: Vec<u32>,
    full: u32,
}

impl Coverage {
    fn new(n: usize, k: usize) -> Self {
        let sets: Vec<Vec<usize>> = ColexSubsets::new(n, k).collect();
        let masks = vec![0; sets.len()];
        Coverage {
            sets,
            masks,
            full: if k == 32 { u32::MAX } else { (1u32 << k) - 1 },
        }
    }

    fn add(&mut self, rank: &[usize]) {
        for (set, mask) in self.sets.iter().zip(self.masks.iter_mut()) {
            let top = (0..set.len()).max_by_key(|&i| rank[set[i]]).expect("k >= 1");
            *mask |= 1 << top;
        }
    }

    fn first_gap(&self) -> Option<Vec<usize>> {
        self.sets.iter().zip(&self.masks).find_map(|(set, &mask)| {
            if mask == self.full {
                return None;
            }
            let s = (!mask).trailing_zeros() as usize;
            let mut tuple = vec![set[s]];
            tuple.extend(set.iter().enumerate().filter(|&(i, _)| i != s).map(|(_, &x)| x));
            Some(tuple)
        })
    }
}

fn ranks_of(order: &[usize]) -> Vec<usize> {
    let mut rank = vec![0; order.len()];
    for (pos, &x) in order.iter().enumerate() {
        rank[x] = pos;
    }
    rank
}

/// Appends uniformly random orders (ChaCha8 seeded by `seed`) until the family
/// is `k`-scrambling or `max_rounds` orders have been drawn.
pub fn scrambling_random(n: usize, k: usize, seed: u64, max_rounds: usize) -> Result<RandomScrambling> {
    check_arity(n, k)?;
    if k > 32 {
        return Err(Error::input(format!("arity {k} above 32 is not supported")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family = OrderFamily::new(n, Vec::new())?;
    let mut coverage = Coverage::new(n, k);
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..max_rounds {
        perm.shuffle(&mut rng);
        coverage.add(&ranks_of(&perm));
        family.push(perm.clone());
        if coverage.first_gap().is_none() {
            return Ok(RandomScrambling::Found(family));
        }
    }
    let tuple = coverage.first_gap().unwrap_or_else(|| (0..k).collect());
    Ok(RandomScrambling::Exhausted {
        partial: family,
        violation: Certificate::ScramblingViolation { tuple },
    })
}

/// Checks that for every `k`-set `S` and every `s ∈ S` some order puts `s`
/// above the rest of `S`. The violation lists `s` first, then `S ∖ {s}`.
pub fn verify_scrambling(f: &OrderFamily, k: usize) -> Result<Verdict> {
    check_arity(f.n(), k)?;
    let n = f.n();
    let m = f.len();
    let found = (0..binomial(n, k)).into_par_iter().find_map_first(|rank| {
        let set = crate::combinatorics::subset_unrank(rank, k);
        let mut covered = vec![false; k];
        for j in 0..m {
            let top = (0..k).max_by_key(|&i| f.rank(j, set[i])).expect("k >= 1");
            covered[top] = true;
        }
        covered.iter().position(|&c| !c).map(|s| {
            let mut tuple = vec![set[s]];
            tuple.extend(set.iter().enumerate().filter(|&(i, _)| i != s).map(|(_, &x)| x));
            Certificate::ScramblingViolation { tuple }
        })
    });
    Ok(match found {
        Some(cert) => Verdict::Fails(cert),
        None => Verdict::Holds,
    })
}

/// All permutations of `0..n` in lexicographic order.
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

struct ExactSearch {
    k: usize,
    full: u32,
    /// `tops[perm][set]`: position within the set of its maximum
    tops: Vec<Vec<u8>>,
    chosen: Vec<usize>,
}

impl ExactSearch {
    fn lower_bound(&self, masks: &[u32]) -> usize {
        masks
            .iter()
            .map(|&m| self.k - m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Depth-first: every family completing `masks` must contain an order
    /// that covers the first uncovered pair, so we branch only on those.
    fn dfs(&mut self, masks: &mut Vec<u32>, remaining: usize) -> bool {
        let Some((set, &mask)) = masks.iter().enumerate().find(|&(_, &m)| m != self.full) else {
            return true;
        };
        if remaining == 0 || self.lower_bound(masks) > remaining {
            return false;
        }
        let want = (!mask).trailing_zeros() as u8;
        let saved = masks.clone();
        for perm in 0..self.tops.len() {
            if self.tops[perm][set] != want {
                continue;
            }
            for (s, m) in masks.iter_mut().enumerate() {
                *m |= 1 << self.tops[perm][s];
            }
            self.chosen.push(perm);
            if self.dfs(masks, remaining - 1) {
                return true;
            }
            self.chosen.pop();
            masks.copy_from_slice(&saved);
        }
        false
    }
}

/// Smallest `k`-scrambling family on `[n]` with at most `m_cap` orders, found
/// by iterative deepening. The identity is always the first order.
pub fn scrambling_exact_min(n: usize, k: usize, m_cap: usize) -> Result<ExactScrambling> {
    check_arity(n, k)?;
    if n > EXACT_SCRAMBLING_MAX_N {
        return Err(Error::input(format!(
            "exact scrambling search is limited to n <= {EXACT_SCRAMBLING_MAX_N}, got {n}"
        )));
    }
    let perms = all_permutations(n);
    let sets: Vec<Vec<usize>> = ColexSubsets::new(n, k).collect();
    let tops: Vec<Vec<u8>> = perms
        .iter()
        .map(|p| {
            let rank = ranks_of(p);
            sets.iter()
                .map(|s| (0..k).max_by_key(|&i| rank[s[i]]).expect("k >= 1") as u8)
                .collect()
        })
        .collect();
    let mut search = ExactSearch {
        k,
        full: (1u32 << k) - 1,
        tops,
        chosen: Vec::new(),
    };
    if m_cap == 0 {
        return Ok(ExactScrambling::Infeasible { m_cap });
    }
    let start: Vec<u32> = (0..sets.len()).map(|s| 1 << search.tops[0][s]).collect();
    for m in 1..=m_cap {
        let mut masks = start.clone();
        search.chosen = vec![0];
        if search.dfs(&mut masks, m - 1) {
            let orders = search.chosen.iter().map(|&p| perms[p].clone()).collect();
            return Ok(ExactScrambling::Found(OrderFamily::new(n, orders)?));
        }
    }
    Ok(ExactScrambling::Infeasible { m_cap })
}

/// `c'(e) = (c(e - max_1 e), ..., c(e - max_M e))` for every `r`-set `e`,
/// re-encoded densely in first-seen colex order. Requires `c` to be a
/// `(r, r-1)`-colouring of `(r-1)`-sets and `f` to be `(r+1)`-scrambling.
pub fn egy_lift(c: &HypergraphColouring, f: &OrderFamily) -> Result<HypergraphColouring> {
    let r = c.r() + 1;
    if r < 4 {
        return Err(Error::input(format!("lift target uniformity must be at least 4, got {r}")));
    }
    if c.n() != f.n() {
        return Err(Error::input(format!(
            "colouring is on {} points but the orders are on {}",
            c.n(),
            f.n()
        )));
    }
    if r + 1 > c.n() {
        return Err(Error::input(format!("need n >= r + 1 = {}, got {}", r + 1, c.n())));
    }
    if let Verdict::Fails(cert) = verify_pq(c, r, r - 1)? {
        return Err(Error::precondition(
            format!("base is not a ({r},{})-colouring", r - 1),
            Some(cert),
        ));
    }
    if let Verdict::Fails(cert) = verify_scrambling(f, r + 1)? {
        return Err(Error::precondition(
            format!("order family is not {}-scrambling", r + 1),
            Some(cert),
        ));
    }
    lift_map_unchecked(c, f)
}

/// The lift map without precondition checks; `f` may be any family.
pub fn lift_map_unchecked(c: &HypergraphColouring, f: &OrderFamily) -> Result<HypergraphColouring> {
    let n = c.n();
    let r = c.r() + 1;
    if f.n() != n || r > n {
        return Err(Error::input("lift shape mismatch"));
    }
    if f.is_empty() {
        return Err(Error::input("lift needs at least one order"));
    }
    let tuples: Vec<Vec<Colour>> = (0..binomial(n, r))
        .into_par_iter()
        .map(|rank| {
            let e = crate::combinatorics::subset_unrank(rank, r);
            let mut rest = Vec::with_capacity(r - 1);
            (0..f.len())
                .map(|j| {
                    let top = f.max_in(j, &e);
                    rest.clear();
                    rest.extend(e.iter().copied().filter(|&x| x != top));
                    c.colour_of(&rest)
                })
                .collect()
        })
        .collect();
    let mut ids: HashMap<&[Colour], Colour> = HashMap::new();
    let values: Vec<Colour> = tuples
        .iter()
        .map(|t| {
            let next = ids.len() as Colour;
            *ids.entry(t.as_slice()).or_insert(next)
        })
        .collect();
    HypergraphColouring::new(n, r, ids.len(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gamma_greedy, gamma_injective};

    fn expect_found(r: RandomScrambling) -> OrderFamily {
        match r {
            RandomScrambling::Found(f) => f,
            RandomScrambling::Exhausted { .. } => panic!("random scrambling exhausted"),
        }
    }

    fn exact(n: usize, k: usize) -> OrderFamily {
        match scrambling_exact_min(n, k, 8).unwrap() {
            ExactScrambling::Found(f) => f,
            other => panic!("{other:?}"),
        }
    }

    /// Independent check: tries every tuple of distinct elements.
    fn naive_scrambling(f: &OrderFamily, k: usize) -> bool {
        let n = f.n();
        fn rec(f: &OrderFamily, n: usize, k: usize, t: &mut Vec<usize>) -> bool {
            if t.len() == k {
                return f.orders().iter().any(|o| {
                    let pos = |x: usize| o.iter().position(|&y| y == x).unwrap();
                    t[1..].iter().all(|&x| pos(x) < pos(t[0]))
                });
            }
            for x in 0..n {
                if !t.contains(&x) {
                    t.push(x);
                    let ok = rec(f, n, k, t);
                    t.pop();
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }
        rec(f, n, k, &mut Vec::new())
    }

    #[test]
    fn verify_examples() {
        let f = OrderFamily::new(4, vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]]).unwrap();
        assert!(verify_scrambling(&f, 2).unwrap().holds());
        let id = OrderFamily::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(
            verify_scrambling(&id, 2).unwrap(),
            Verdict::Fails(Certificate::ScramblingViolation { tuple: vec![0, 1] })
        );
        assert!(verify_scrambling(&id, 4).is_err());
    }

    #[test]
    fn verify_matches_naive_oracle_on_small_families() {
        let perms3 = all_permutations(3);
        let perms4 = all_permutations(4);
        for perms in [&perms3, &perms4] {
            let n = perms[0].len();
            for a in 0..perms.len() {
                for b in a..perms.len() {
                    for c in b..perms.len() {
                        let f = OrderFamily::new(
                            n,
                            vec![perms[a].clone(), perms[b].clone(), perms[c].clone()],
                        )
                        .unwrap();
                        for k in 1..=n {
                            assert_eq!(
                                verify_scrambling(&f, k).unwrap().holds(),
                                naive_scrambling(&f, k)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn random_examples() {
        for seed in 0..5 {
            let f = expect_found(scrambling_random(3, 2, seed, 100).unwrap());
            assert!(f.len() >= 2);
            assert!(verify_scrambling(&f, 2).unwrap().holds());
        }
        let one = expect_found(scrambling_random(5, 1, 9, 1).unwrap());
        assert_eq!(one.len(), 1);
        let f = expect_found(scrambling_random(6, 3, 0, 200).unwrap());
        assert!(verify_scrambling(&f, 3).unwrap().holds());
        assert!(scrambling_random(3, 4, 0, 10).is_err());
    }

    #[test]
    fn random_is_deterministic_per_seed() {
        let a = scrambling_random(8, 4, 42, 500).unwrap();
        let b = scrambling_random(8, 4, 42, 500).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exhausted_reports_a_real_violation() {
        match scrambling_random(8, 5, 1, 2).unwrap() {
            RandomScrambling::Exhausted { partial, violation } => {
                assert_eq!(partial.len(), 2);
                assert_eq!(verify_scrambling(&partial, 5).unwrap(), Verdict::Fails(violation.clone()));
            }
            RandomScrambling::Found(_) => panic!("two orders cannot 5-scramble"),
        }
    }

    /// Smallest M by trying every multiset of orders with the identity first.
    fn brute_min(n: usize, k: usize) -> usize {
        let perms = all_permutations(n);
        fn any_family(perms: &[Vec<usize>], k: usize, chosen: &mut Vec<usize>, left: usize) -> bool {
            if left == 0 {
                let orders = chosen.iter().map(|&i| perms[i].clone()).collect();
                return naive_scrambling(&OrderFamily::new(perms[0].len(), orders).unwrap(), k);
            }
            let from = *chosen.last().unwrap();
            for i in from..perms.len() {
                chosen.push(i);
                let ok = any_family(perms, k, chosen, left - 1);
                chosen.pop();
                if ok {
                    return true;
                }
            }
            false
        }
        (1..).find(|&m| any_family(&perms, k, &mut vec![0], m - 1)).unwrap()
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact(3, 2).len(), 2);
        assert_eq!(exact(3, 3).len(), 3);
        assert_eq!(exact(2, 2).len(), 2);
        assert_eq!(exact(5, 1).len(), 1);
        let f = exact(4, 3);
        assert_eq!(f.orders()[0], vec![0, 1, 2, 3]);
        assert!(verify_scrambling(&f, 3).unwrap().holds());
        assert_eq!(
            scrambling_exact_min(3, 3, 2).unwrap(),
            ExactScrambling::Infeasible { m_cap: 2 }
        );
        assert!(scrambling_exact_min(9, 2, 3).is_err());
    }

    #[test]
    fn exact_matches_brute_force() {
        for (n, k) in [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4)] {
            let f = exact(n, k);
            assert!(naive_scrambling(&f, k));
            assert_eq!(f.len(), brute_min(n, k), "n = {n}, k = {k}");
        }
    }

    #[test]
    fn lift_map_single_order_example() {
        let c = gamma_injective(5, 3).unwrap();
        let id = OrderFamily::new(5, vec![(0..5).collect()]).unwrap();
        let lifted = lift_map_unchecked(&c, &id).unwrap();
        let expect = [
            (vec![0, 1, 2, 3], vec![0, 1, 2]),
            (vec![0, 1, 2, 4], vec![0, 1, 2]),
            (vec![0, 1, 3, 4], vec![0, 1, 3]),
            (vec![0, 2, 3, 4], vec![0, 2, 3]),
            (vec![1, 2, 3, 4], vec![1, 2, 3]),
        ];
        for (e, minus) in &expect {
            for (e2, minus2) in &expect {
                assert_eq!(
                    lifted.colour_of(e) == lifted.colour_of(e2),
                    c.colour_of(minus) == c.colour_of(minus2)
                );
            }
        }
        assert_eq!(lifted.colours_used(), 4);
        // the single order is not 5-scrambling, so the checked lift refuses
        let err = egy_lift(&c, &id).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
    }

    #[test]
    fn lift_produces_54_colouring() {
        let c = gamma_greedy(8, 3, 4, 3).unwrap();
        let f = expect_found(scrambling_random(8, 5, 0, 1000).unwrap());
        let lifted = egy_lift(&c, &f).unwrap();
        assert!(verify_pq(&lifted, 5, 4).unwrap().holds());
        assert!((lifted.k() as f64) <= (c.k() as f64).powi(f.len() as i32));
    }

    #[test]
    fn lift_chain_to_five_subsets() {
        let n = 8;
        let c3 = gamma_greedy(n, 3, 4, 3).unwrap();
        let f5 = expect_found(scrambling_random(n, 5, 3, 1000).unwrap());
        let c4 = egy_lift(&c3, &f5).unwrap();
        let f6 = expect_found(scrambling_random(n, 6, 4, 1000).unwrap());
        let c5 = egy_lift(&c4, &f6).unwrap();
        assert_eq!(c5.r(), 5);
        assert!(verify_pq(&c5, 6, 5).unwrap().holds());
    }

    #[test]
    fn lift_rejects_bad_base() {
        let bad = HypergraphColouring::new(6, 3, 1, vec![0; 20]).unwrap();
        let f = expect_found(scrambling_random(6, 5, 0, 1000).unwrap());
        match egy_lift(&bad, &f).unwrap_err() {
            Error::Precondition { certificate, .. } => {
                assert!(matches!(certificate.as_deref(), Some(Certificate::PoorPSet { .. })))
            }
            other => panic!("{other}"),
        }
        let two = gamma_injective(6, 2).unwrap();
        assert!(egy_lift(&two, &f).is_err());
    }
}
