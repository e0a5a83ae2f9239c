//! Brute-force oracles shared by the integration tests. Nothing here uses
//! the library's copy enumeration, automorphism reduction or rank tables.
#![allow(dead_code)]

use lrc_core::{Colour, LocalColouringCollection, PatternGraph};
use rand::Rng;

/// Every injective map `0..h -> 0..n`, in lex order.
pub fn injections(h: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(h: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == h {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                go(h, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(h, n, &mut Vec::new(), &mut out);
    out
}

/// Every `r`-subset of `0..n`, sorted, in lex order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

fn all_distinct(xs: &[Colour]) -> bool {
    xs.iter().enumerate().all(|(i, a)| xs[i + 1..].iter().all(|b| a != b))
}

/// Checks every injective image of `h`, one per labelled embedding.
pub fn naive_local(c: &LocalColouringCollection, h: &PatternGraph) -> bool {
    injections(h.vertex_count(), c.n()).iter().all(|phi| {
        (0..h.vertex_count()).any(|u| {
            let cols: Vec<Colour> = h
                .edges()
                .iter()
                .map(|&(a, b)| c.colour(phi[u], phi[a], phi[b]))
                .collect();
            all_distinct(&cols)
        })
    })
}

/// Every `p`-set spans at least `q` colours under `colour`.
pub fn naive_pq(n: usize, r: usize, p: usize, q: usize, colour: impl Fn(&[usize]) -> Colour) -> bool {
    subsets(n, p).iter().all(|pset| {
        let mut seen: Vec<Colour> = subsets(p, r)
            .iter()
            .map(|idx| colour(&idx.iter().map(|&i| pset[i]).collect::<Vec<_>>()))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() >= q
    })
}

/// Every element of every `k`-set is the last among the set in some order.
pub fn naive_scrambling(orders: &[Vec<usize>], n: usize, k: usize) -> bool {
    subsets(n, k).iter().all(|set| {
        set.iter().all(|&s| {
            orders.iter().any(|ord| {
                let pos = |x: usize| ord.iter().position(|&y| y == x).unwrap();
                set.iter().all(|&t| pos(t) <= pos(s))
            })
        })
    })
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    injections(n, n)
}

/// Smallest family size that is `k`-scrambling, by trying every multiset of
/// permutations in turn.
pub fn brute_scrambling_min(n: usize, k: usize, cap: usize) -> Option<usize> {
    let perms = permutations(n);
    fn go(perms: &[Vec<usize>], start: usize, left: usize, cur: &mut Vec<Vec<usize>>, n: usize, k: usize) -> bool {
        if left == 0 {
            return naive_scrambling(cur, n, k);
        }
        for i in start..perms.len() {
            cur.push(perms[i].clone());
            if go(perms, i, left - 1, cur, n, k) {
                return true;
            }
            cur.pop();
        }
        false
    }
    (1..=cap).find(|&m| go(&perms, 0, m, &mut Vec::new(), n, k))
}

/// Is `sub` a subgraph of `host` (not necessarily induced)?
pub fn naive_contains(host: &PatternGraph, sub: &PatternGraph) -> bool {
    if sub.vertex_count() > host.vertex_count() {
        return false;
    }
    injections(sub.vertex_count(), host.vertex_count())
        .iter()
        .any(|phi| sub.edges().iter().all(|&(a, b)| host.has_edge(phi[a], phi[b])))
}

pub fn naive_isomorphic(a: &PatternGraph, b: &PatternGraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && naive_contains(a, b)
}

/// Distinct edges `e1, e2, f1, f2` with `(e1 ∪ e2) ∩ (f1 ∪ f2) ⊆ f1 ∩ f2`.
pub fn naive_nice(h: &PatternGraph) -> bool {
    let es = h.edges();
    let m = es.len();
    let set = |&(a, b): &(usize, usize)| [a, b];
    for e1 in 0..m {
        for e2 in 0..m {
            for f1 in 0..m {
                for f2 in 0..m {
                    let ids = [e1, e2, f1, f2];
                    if (0..4).any(|i| ids[i + 1..].contains(&ids[i])) {
                        continue;
                    }
                    let left: Vec<usize> = set(&es[e1]).into_iter().chain(set(&es[e2])).collect();
                    let right: Vec<usize> = set(&es[f1]).into_iter().chain(set(&es[f2])).collect();
                    let ok = left.iter().filter(|x| right.contains(x)).all(|x| {
                        set(&es[f1]).contains(x) && set(&es[f2]).contains(x)
                    });
                    if ok {
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn random_collection(n: usize, k: usize, rng: &mut impl Rng) -> LocalColouringCollection {
    let m = n * (n - 1) / 2;
    let table = (0..n * m).map(|_| rng.gen_range(0..k as Colour)).collect();
    LocalColouringCollection::new(n, k, table).unwrap()
}
