//! Refutation searches. The cycle attack walks the auxiliary graph on
//! `V(K_n) × [k]` looking for an even cycle with distinct host vertices; the
//! nice-graph attack pins two edges of `H` on a pair of host edges that many
//! rows colour alike and then pigeonholes the remaining two edges.
//!
//! A returned certificate always validates. `NotFound` never proves locality.

use rayon::prelude::*;

use crate::certificate::Certificate;
use crate::colouring::{Colour, LocalColouringCollection};
use crate::combinatorics::{edge_id, edge_list};
use crate::error::{Error, Result};
use crate::pattern::PatternGraph;
use crate::verification::{validate_certificate, Subject};

/// `(u, i) ~ (v, j)` iff `u != v`, `f_u(uv) = i` and `f_v(uv) = j`. Vertex
/// `(u, i)` has index `u * k + i`.
#[derive(Clone, Debug)]
pub struct AuxGraph {
    n: usize,
    k: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl AuxGraph {
    pub fn vertex_count(&self) -> usize {
        self.n * self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index(&self, host: usize, colour: Colour) -> usize {
        host * self.k + colour as usize
    }

    /// `(host vertex, colour)` of an aux vertex index.
    pub fn vertex(&self, idx: usize) -> (usize, Colour) {
        (idx / self.k, (idx % self.k) as Colour)
    }

    pub fn neighbours(&self, idx: usize) -> &[usize] {
        &self.adj[idx]
    }

    pub fn degree(&self, idx: usize) -> usize {
        self.adj[idx].len()
    }

    /// Aux edges as index pairs, one per host edge in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

pub fn build_aux_graph(c: &LocalColouringCollection) -> AuxGraph {
    let (n, k) = (c.n(), c.k());
    let mut adj = vec![Vec::new(); n * k];
    let mut edges = Vec::with_capacity(c.edge_count());
    for (e, (u, v)) in edge_list(n).into_iter().enumerate() {
        let x = u * k + c.get(u, e) as usize;
        let y = v * k + c.get(v, e) as usize;
        adj[x].push(y);
        adj[y].push(x);
        edges.push((x, y));
    }
    AuxGraph { n, k, adj, edges }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttackOutcome {
    Found(Certificate),
    NotFound { budget_exhausted: bool },
}

impl AttackOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            AttackOutcome::Found(c) => Some(c),
            AttackOutcome::NotFound { .. } => None,
        }
    }
}

struct CycleDfs<'a> {
    aux: &'a AuxGraph,
    len: usize,
    start: usize,
    on_path: Vec<bool>,
    path: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CycleDfs<'_> {
    /// Extends `path` (aux vertices) to a closed cycle of length `len`.
    fn extend(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let last = *self.path.last().expect("non-empty");
        let first = self.path[0];
        if self.path.len() == self.len {
            return Some(self.aux.neighbours(last).contains(&first));
        }
        for i in 0..self.aux.neighbours(last).len() {
            let next = self.aux.neighbours(last)[i];
            let host = next / self.aux.k;
            // the smallest host vertex of the cycle is its start
            if host <= self.start || self.on_path[host] {
                continue;
            }
            self.on_path[host] = true;
            self.path.push(next);
            let res = self.extend();
            if res != Some(false) {
                return res;
            }
            self.path.pop();
            self.on_path[host] = false;
        }
        Some(false)
    }
}

/// Searches for `u_1 .. u_{2l}` such that every `f_{u_i}` colours both cycle
/// edges at `u_i` alike; such a cycle refutes `(n, C_{2l})`-locality.
/// `budget` caps DFS node expansions per start vertex.
pub fn attack_cycle(c: &LocalColouringCollection, l: usize, budget: u64) -> Result<AttackOutcome> {
    if l < 2 {
        return Err(Error::input(format!("need l >= 2, got {l}")));
    }
    let len = 2 * l;
    if len > c.n() {
        return Ok(AttackOutcome::NotFound {
            budget_exhausted: false,
        });
    }
    let aux = build_aux_graph(c);
    let per_start: Vec<Option<Option<Vec<usize>>>> = (0..c.n())
        .into_par_iter()
        .map(|start| {
            let mut dfs = CycleDfs {
                aux: &aux,
                len,
                start,
                on_path: vec![false; c.n()],
                path: Vec::with_capacity(len),
                nodes: 0,
                budget,
            };
            dfs.on_path[start] = true;
            for colour in 0..c.k() as Colour {
                let x = aux.index(start, colour);
                if aux.degree(x) < 2 {
                    continue;
                }
                dfs.path.clear();
                dfs.path.push(x);
                match dfs.extend() {
                    None => return None,
                    Some(true) => {
                        return Some(Some(dfs.path.iter().map(|&v| v / aux.k).collect()))
                    }
                    Some(false) => {}
                }
            }
            Some(None)
        })
        .collect();
    let mut exhausted = false;
    for r in per_start {
        match r {
            Some(Some(cycle)) => {
                let cert = Certificate::CycleWitness { cycle };
                debug_assert!(validate_certificate(&cert, Subject::Collection(c)).unwrap_or(false));
                return Ok(AttackOutcome::Found(cert));
            }
            Some(None) => {}
            None => exhausted = true,
        }
    }
    Ok(AttackOutcome::NotFound {
        budget_exhausted: exhausted,
    })
}

/// A pair of host edges together with the number of outside vertices whose
/// rows colour them alike.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairCount {
    pub p: (usize, usize),
    pub q: (usize, usize),
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonoPairStats {
    pub disjoint: PairCount,
    pub intersecting: PairCount,
}

fn agreeing_outside(c: &LocalColouringCollection, p: (usize, usize), q: (usize, usize)) -> Vec<usize> {
    let (ep, eq) = (edge_id(p.0, p.1, c.n()), edge_id(q.0, q.1, c.n()));
    (0..c.n())
        .filter(|&v| v != p.0 && v != p.1 && v != q.0 && v != q.1)
        .filter(|&v| c.get(v, ep) == c.get(v, eq))
        .collect()
}

/// Every unordered pair of distinct edges of the requested type with its
/// agreement count, best first (ties in lexicographic pair order).
fn ranked_pairs(c: &LocalColouringCollection, disjoint: bool) -> Vec<PairCount> {
    let edges = edge_list(c.n());
    let mut all: Vec<(usize, PairCount)> = (0..edges.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let edges = &edges;
            ((a + 1)..edges.len()).filter_map(move |b| {
                let (p, q) = (edges[a], edges[b]);
                let shares = p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1;
                (shares != disjoint).then(|| {
                    let count = agreeing_outside(c, p, q).len();
                    (a * edges.len() + b, PairCount { p, q, count })
                })
            })
        })
        .collect();
    all.sort_by(|x, y| y.1.count.cmp(&x.1.count).then(x.0.cmp(&y.0)));
    all.into_iter().map(|(_, pc)| pc).collect()
}

/// The disjoint pair and the intersecting pair of host edges maximising the
/// number of vertices `v` outside both with `f_v(p) = f_v(q)`.
pub fn mono_pair_stats(c: &LocalColouringCollection) -> Result<MonoPairStats> {
    if c.n() < 5 {
        return Err(Error::input(format!("need n >= 5, got {}", c.n())));
    }
    Ok(MonoPairStats {
        disjoint: ranked_pairs(c, true)[0],
        intersecting: ranked_pairs(c, false)[0],
    })
}

/// Pattern edge indices `e1, e2, f1, f2` with
/// `(e1 ∪ e2) ∩ (f1 ∪ f2) ⊆ f1 ∩ f2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NiceWitness {
    pub e1: usize,
    pub e2: usize,
    pub f1: usize,
    pub f2: usize,
}

impl NiceWitness {
    pub fn is_valid_for(&self, h: &PatternGraph) -> bool {
        let ids = [self.e1, self.e2, self.f1, self.f2];
        let m = h.edge_count();
        if ids.iter().enumerate().any(|(i, &x)| x >= m || ids[..i].contains(&x)) {
            return false;
        }
        let mask = |e: usize| {
            let (a, b) = h.edges()[e];
            (1u64 << a) | (1u64 << b)
        };
        let es = mask(self.e1) | mask(self.e2);
        let fs = mask(self.f1) | mask(self.f2);
        let core = mask(self.f1) & mask(self.f2);
        es & fs & !core == 0
    }
}

/// First witness of niceness over ordered 4-tuples of distinct edges in
/// lexicographic order.
pub fn is_nice(h: &PatternGraph) -> Option<NiceWitness> {
    let m = h.edge_count();
    for e1 in 0..m {
        for e2 in 0..m {
            for f1 in 0..m {
                for f2 in 0..m {
                    let w = NiceWitness { e1, e2, f1, f2 };
                    if w.is_valid_for(h) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

fn shared_vertex(a: (usize, usize), b: (usize, usize)) -> Option<usize> {
    [a.0, a.1].into_iter().find(|&x| x == b.0 || x == b.1)
}

fn other_end(e: (usize, usize), x: usize) -> usize {
    if e.0 == x {
        e.1
    } else {
        e.0
    }
}

/// Colours of `xy` under the rows of `anchors`.
fn label(c: &LocalColouringCollection, anchors: &[usize], x: usize, y: usize) -> Vec<Colour> {
    anchors.iter().map(|&v| c.colour(v, x, y)).collect()
}

/// Two disjoint edges inside `a` carrying the same label.
fn disjoint_same_label(
    c: &LocalColouringCollection,
    anchors: &[usize],
    a: &[usize],
) -> Option<((usize, usize), (usize, usize))> {
    let mut groups: Vec<(Vec<Colour>, Vec<(usize, usize)>)> = Vec::new();
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let e = (a[i], a[j]);
            let lab = label(c, anchors, e.0, e.1);
            let slot = match groups.iter().position(|(l, _)| *l == lab) {
                Some(s) => s,
                None => {
                    groups.push((lab, Vec::new()));
                    groups.len() - 1
                }
            };
            let members = &mut groups[slot].1;
            if let Some(&g) = members
                .iter()
                .find(|g| g.0 != e.0 && g.0 != e.1 && g.1 != e.0 && g.1 != e.1)
            {
                return Some((g, e));
            }
            members.push(e);
        }
    }
    None
}

/// `y != z` in `a ∖ {x}` with `xy` and `xz` labelled alike.
fn fan_same_label(
    c: &LocalColouringCollection,
    anchors: &[usize],
    x: usize,
    a: &[usize],
) -> Option<(usize, usize)> {
    let mut seen: Vec<(Vec<Colour>, usize)> = Vec::new();
    for &y in a.iter().filter(|&&y| y != x) {
        let lab = label(c, anchors, x, y);
        if let Some(&(_, first)) = seen.iter().find(|(l, _)| *l == lab) {
            return Some((first, y));
        }
        seen.push((lab, y));
    }
    None
}

fn non_rainbow_witnesses(
    c: &LocalColouringCollection,
    h: &PatternGraph,
    copy: &[usize],
) -> Option<Vec<(usize, usize)>> {
    let pe = h.edges();
    copy.iter()
        .map(|&v| {
            let cols: Vec<Colour> = pe.iter().map(|&(a, b)| c.colour(v, copy[a], copy[b])).collect();
            (0..cols.len()).find_map(|j| (0..j).find(|&i| cols[i] == cols[j]).map(|i| (i, j)))
        })
        .collect()
}

/// Tries to place `h` so that `e1, e2` land on a well-agreeing pair `(p, q)`
/// and `f1, f2` on a pair labelled alike by every row of `p ∪ q`. `budget`
/// caps the number of `(p, q)` pairs tried, best first.
pub fn attack_nice(
    c: &LocalColouringCollection,
    h: &PatternGraph,
    w: &NiceWitness,
    budget: u64,
) -> Result<AttackOutcome> {
    if !w.is_valid_for(h) {
        return Err(Error::input("nice witness does not fit the pattern"));
    }
    if h.vertex_count() > c.n() {
        return Err(Error::input("pattern larger than host"));
    }
    if c.n() < 5 {
        return Err(Error::input(format!("need n >= 5, got {}", c.n())));
    }
    let pe = h.edges();
    let (e1, e2, f1, f2) = (pe[w.e1], pe[w.e2], pe[w.f1], pe[w.f2]);
    let e_shared = shared_vertex(e1, e2);
    let f_centre = shared_vertex(f1, f2);
    let hv = h.vertex_count();

    for (tried, pair) in (0u64..).zip(ranked_pairs(c, e_shared.is_none())) {
        if tried >= budget {
            return Ok(AttackOutcome::NotFound {
                budget_exhausted: true,
            });
        }
        let mut img = vec![usize::MAX; hv];
        match e_shared {
            None => {
                img[e1.0] = pair.p.0;
                img[e1.1] = pair.p.1;
                img[e2.0] = pair.q.0;
                img[e2.1] = pair.q.1;
            }
            Some(s) => {
                let hs = shared_vertex(pair.p, pair.q).expect("intersecting pair");
                img[s] = hs;
                img[other_end(e1, s)] = other_end(pair.p, hs);
                img[other_end(e2, s)] = other_end(pair.q, hs);
            }
        }
        let mut anchors = vec![pair.p.0, pair.p.1, pair.q.0, pair.q.1];
        anchors.sort_unstable();
        anchors.dedup();
        let a = agreeing_outside(c, pair.p, pair.q);

        let placed = match f_centre {
            None => disjoint_same_label(c, &anchors, &a).map(|(x, y)| {
                img[f1.0] = x.0;
                img[f1.1] = x.1;
                img[f2.0] = y.0;
                img[f2.1] = y.1;
            }),
            Some(centre) => {
                let (t1, t2) = (other_end(f1, centre), other_end(f2, centre));
                if img[centre] != usize::MAX {
                    let x = img[centre];
                    fan_same_label(c, &anchors, x, &a).map(|(y, z)| {
                        img[t1] = y;
                        img[t2] = z;
                    })
                } else {
                    a.iter().find_map(|&x| {
                        let rest: Vec<usize> = a.iter().copied().filter(|&v| v != x).collect();
                        fan_same_label(c, &anchors, x, &rest).map(|(y, z)| (x, y, z))
                    })
                    .map(|(x, y, z)| {
                        img[centre] = x;
                        img[t1] = y;
                        img[t2] = z;
                    })
                }
            }
        };
        if placed.is_none() {
            continue;
        }
        let spare_list: Vec<usize> = a.iter().copied().filter(|v| !img.contains(v)).collect();
        let mut spare = spare_list.into_iter();
        let mut complete = true;
        for slot in img.iter_mut().filter(|s| **s == usize::MAX) {
            match spare.next() {
                Some(v) => *slot = v,
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if !complete {
            continue;
        }
        if let Some(witnesses) = non_rainbow_witnesses(c, h, &img) {
            return Ok(AttackOutcome::Found(Certificate::NonRainbowCopy {
                copy: img,
                witnesses,
            }));
        }
    }
    Ok(AttackOutcome::NotFound {
        budget_exhausted: false,
    })
}
