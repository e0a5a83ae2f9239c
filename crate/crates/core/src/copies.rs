//! Enumeration of the copies of a pattern `H` in `K_n`.
//!
//! A copy is an injective map `phi: V(H) -> [n]`; two maps describe the same
//! copy when they differ by an automorphism of `H`. We emit exactly the maps
//! that are lexicographically smallest in their orbit `{phi . sigma}`, pruning
//! partial assignments that already lose to some automorphism.

use crate::combinatorics::falling_factorial;
use crate::error::{Error, Result};
use crate::pattern::PatternGraph;

/// Streaming enumerator over copies of a pattern in `K_n`.
#[derive(Debug, Clone)]
pub struct Copies {
    n: usize,
    h: usize,
    /// non-identity automorphisms
    auts: Vec<Vec<usize>>,
    assign: Vec<usize>,
    used: Vec<bool>,
    depth: usize,
    next_candidate: Vec<usize>,
    first_range: (usize, usize),
    state: State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Yielded,
    Done,
}

/// Number of copies of `pattern` in `K_n`: `(n)_h / |Aut(H)|`.
pub fn copy_count(pattern: &PatternGraph, n: usize) -> Result<usize> {
    let aut = pattern.automorphism_group()?.len();
    Ok(falling_factorial(n, pattern.vertex_count()) / aut)
}

/// All copies of `pattern` in `K_n`, each exactly once.
pub fn enumerate_copies(pattern: &PatternGraph, n: usize) -> Result<Copies> {
    Copies::new(pattern, n, None)
}

impl Copies {
    /// With `shard = Some(s)` only copies whose first pattern vertex maps to
    /// `s` are produced; the shards `0..n` partition the full stream.
    pub fn new(pattern: &PatternGraph, n: usize, shard: Option<usize>) -> Result<Self> {
        let h = pattern.vertex_count();
        if h > n {
            return Err(Error::input(format!(
                "pattern has {h} vertices but the host has only {n}"
            )));
        }
        let auts: Vec<Vec<usize>> = pattern
            .automorphism_group()?
            .into_iter()
            .filter(|p| p.iter().enumerate().any(|(i, &x)| i != x))
            .collect();
        let first_range = match shard {
            Some(s) if s >= n => (0, 0),
            Some(s) => (s, s + 1),
            None => (0, n),
        };
        Ok(Copies {
            n,
            h,
            auts,
            assign: vec![0; h],
            used: vec![false; n],
            depth: 0,
            next_candidate: vec![0; h.max(1)],
            first_range,
            state: State::Fresh,
        })
    }

    /// Whether the prefix `assign[..=t]` can still be the orbit minimum.
    fn prefix_ok(&self, t: usize) -> bool {
        'auts: for sigma in &self.auts {
            for i in 0..=t {
                let j = sigma[i];
                if j > t {
                    continue 'auts;
                }
                let (mine, theirs) = (self.assign[i], self.assign[j]);
                if theirs < mine {
                    return false;
                }
                if theirs > mine {
                    continue 'auts;
                }
            }
        }
        true
    }

    /// Advances to the next copy and returns it without allocating.
    pub fn next_copy(&mut self) -> Option<&[usize]> {
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Yielded;
                if self.h == 0 {
                    // the empty map is the single copy of the empty pattern
                    if self.first_range.0 == 0 && (self.first_range.1 > 0 || self.n == 0) {
                        self.state = State::Done;
                        return Some(&self.assign);
                    }
                    self.state = State::Done;
                    return None;
                }
                self.depth = 0;
                self.next_candidate[0] = self.first_range.0;
            }
            State::Yielded => {
                if self.h == 0 {
                    self.state = State::Done;
                    return None;
                }
                // resume after the last leaf
                self.depth = self.h - 1;
                let v = self.assign[self.depth];
                self.used[v] = false;
                self.next_candidate[self.depth] = v + 1;
            }
        }
        loop {
            let d = self.depth;
            let limit = if d == 0 { self.first_range.1 } else { self.n };
            let mut found = None;
            let mut c = self.next_candidate[d];
            while c < limit {
                if !self.used[c] {
                    self.assign[d] = c;
                    if self.prefix_ok(d) {
                        found = Some(c);
                        break;
                    }
                }
                c += 1;
            }
            match found {
                Some(c) => {
                    self.used[c] = true;
                    if d + 1 == self.h {
                        return Some(&self.assign);
                    }
                    self.depth = d + 1;
                    self.next_candidate[d + 1] = 0;
                }
                None => {
                    if d == 0 {
                        self.state = State::Done;
                        return None;
                    }
                    self.depth = d - 1;
                    let v = self.assign[d - 1];
                    self.used[v] = false;
                    self.next_candidate[d - 1] = v + 1;
                }
            }
        }
    }
}

impl Iterator for Copies {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.next_copy().map(<[usize]>::to_vec)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::pattern::catalogue::*;

    /// Every injection, deduplicated by the set of image edges plus the image
    /// vertex set.
    fn naive_copies(pattern: &PatternGraph, n: usize) -> HashSet<(Vec<usize>, Vec<(usize, usize)>)> {
        let h = pattern.vertex_count();
        let mut out = HashSet::new();
        let mut map = vec![0; h];
        fn rec(
            pattern: &PatternGraph,
            n: usize,
            d: usize,
            map: &mut Vec<usize>,
            out: &mut HashSet<(Vec<usize>, Vec<(usize, usize)>)>,
        ) {
            if d == map.len() {
                let mut verts = map.clone();
                verts.sort();
                let mut es: Vec<_> = pattern
                    .edges()
                    .iter()
                    .map(|&(a, b)| (map[a].min(map[b]), map[a].max(map[b])))
                    .collect();
                es.sort();
                out.insert((verts, es));
                return;
            }
            for v in 0..n {
                if !map[..d].contains(&v) {
                    map[d] = v;
                    rec(pattern, n, d + 1, map, out);
                }
            }
        }
        rec(pattern, n, 0, &mut map, &mut out);
        out
    }

    #[test]
    fn copy_count_examples() {
        assert_eq!(enumerate_copies(&single_edge(), 4).unwrap().count(), 6);
        assert_eq!(enumerate_copies(&path(3), 4).unwrap().count(), 12);
        assert_eq!(naive_copies(&path(3), 4).len(), 12);
        assert_eq!(enumerate_copies(&complete(3), 5).unwrap().count(), 10);
    }

    #[test]
    fn pattern_larger_than_host_is_rejected() {
        assert!(enumerate_copies(&complete(4), 3).is_err());
    }

    #[test]
    fn catalogue_counts_match_formula_and_naive_enumeration() {
        let cat = [
            path(2),
            path(3),
            path(4),
            cycle(4),
            complete(3),
            complete(4),
            triangle_pendant(),
            triangle_edge(),
            star(4),
        ];
        for pat in &cat {
            for n in pat.vertex_count()..=8 {
                let copies: Vec<Vec<usize>> = enumerate_copies(pat, n).unwrap().collect();
                assert_eq!(copies.len(), copy_count(pat, n).unwrap(), "{pat} n={n}");
                // cheaper naive check only on small hosts
                if n <= 7 {
                    let naive = naive_copies(pat, n);
                    assert_eq!(copies.len(), naive.len(), "{pat} n={n}");
                    let ours: HashSet<_> = copies
                        .iter()
                        .map(|m| {
                            let mut verts = m.clone();
                            verts.sort();
                            let mut es: Vec<_> = pat
                                .edges()
                                .iter()
                                .map(|&(a, b)| (m[a].min(m[b]), m[a].max(m[b])))
                                .collect();
                            es.sort();
                            (verts, es)
                        })
                        .collect();
                    assert_eq!(ours, naive);
                }
            }
        }
    }

    #[test]
    fn isolated_vertices_are_placed() {
        let p = PatternGraph::parse("n=4; edges=0-1,1-2").unwrap();
        // (6)_4 / |Aut| with Aut = reversal x swap of isolated... only reversal
        assert_eq!(p.automorphism_group().unwrap().len(), 2);
        assert_eq!(enumerate_copies(&p, 6).unwrap().count(), 360 / 2);
        let two_iso = PatternGraph::parse("n=5; edges=0-1,1-2").unwrap();
        assert_eq!(two_iso.automorphism_group().unwrap().len(), 4);
        assert_eq!(enumerate_copies(&two_iso, 6).unwrap().count(), 720 / 4);
    }

    #[test]
    fn shards_partition_the_stream() {
        let pat = triangle_edge();
        let n = 7;
        let full: Vec<_> = enumerate_copies(&pat, n).unwrap().collect();
        let mut sharded = Vec::new();
        for s in 0..n {
            sharded.extend(Copies::new(&pat, n, Some(s)).unwrap());
        }
        assert_eq!(full, sharded);
    }

    #[test]
    fn empty_pattern_has_one_copy() {
        let e = PatternGraph::new(0, &[]).unwrap();
        assert_eq!(enumerate_copies(&e, 3).unwrap().count(), 1);
    }
}
