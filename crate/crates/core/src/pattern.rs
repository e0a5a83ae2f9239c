//! Small pattern graphs `H` whose copies in `K_n` are checked for rainbow-ness.

use std::fmt;

use crate::error::{Error, Result};

/// Largest pattern for which automorphisms and canonical forms are computed
/// by brute force.
pub const MAX_BRUTE_FORCE_VERTICES: usize = 10;

/// A simple graph on `0..vertex_count`, edges stored as sorted `(i, j)` pairs
/// with `i < j`. Isolated vertices are part of the pattern.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

impl PatternGraph {
    /// Builds a pattern, normalising each pair to `(min, max)` and sorting.
    /// Self-loops, duplicates and out-of-range vertices are rejected.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count > 64 {
            return Err(Error::input(format!(
                "pattern has {vertex_count} vertices, at most 64 supported"
            )));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::input(format!("self-loop at vertex {a}")));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::input(format!(
                    "edge {a}-{b} uses a vertex >= n = {vertex_count}"
                )));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("duplicate edge {}-{}", w[0].0, w[0].1)));
        }
        let mut adj = vec![0u64; vertex_count];
        for &(a, b) in &norm {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(PatternGraph {
            vertex_count,
            edges: norm,
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.vertex_count && b < self.vertex_count && self.adj[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn isolated_count(&self) -> usize {
        (0..self.vertex_count).filter(|&v| self.adj[v] == 0).count()
    }

    /// The pattern with isolated vertices removed, relabelled in increasing
    /// order of the surviving vertices.
    pub fn strip_isolated(&self) -> PatternGraph {
        let keep: Vec<usize> = (0..self.vertex_count).filter(|&v| self.adj[v] != 0).collect();
        let mut relabel = vec![usize::MAX; self.vertex_count];
        for (new, &old) in keep.iter().enumerate() {
            relabel[old] = new;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| (relabel[a], relabel[b]))
            .collect();
        PatternGraph::new(keep.len(), &edges).expect("relabelling preserves validity")
    }

    /// Adds `extra` isolated vertices.
    pub fn with_isolated(&self, extra: usize) -> Result<PatternGraph> {
        PatternGraph::new(self.vertex_count + extra, &self.edges)
    }

    pub fn contains_triangle(&self) -> bool {
        self.edges
            .iter()
            .any(|&(a, b)| self.adj[a] & self.adj[b] != 0)
    }

    /// The pattern spanned by a subset of its edges (same vertex set).
    pub fn edge_subgraph(&self, edge_indices: &[usize]) -> PatternGraph {
        let edges: Vec<_> = edge_indices.iter().map(|&i| self.edges[i]).collect();
        PatternGraph::new(self.vertex_count, &edges).expect("sub-edge-set of a valid pattern")
    }

    fn check_brute_force_size(&self) -> Result<()> {
        if self.vertex_count > MAX_BRUTE_FORCE_VERTICES {
            return Err(Error::input(format!(
                "pattern has {} vertices; brute-force symmetry computations support at most {}",
                self.vertex_count, MAX_BRUTE_FORCE_VERTICES
            )));
        }
        Ok(())
    }

    /// All vertex permutations preserving the edge set, sorted
    /// lexicographically (identity first). `perm[v]` is the image of `v`.
    pub fn automorphism_group(&self) -> Result<Vec<Vec<usize>>> {
        self.check_brute_force_size()?;
        let h = self.vertex_count;
        let mut out = Vec::new();
        let mut perm = vec![0usize; h];
        let mut used = 0u64;
        self.extend_automorphism(0, &mut perm, &mut used, &mut out);
        Ok(out)
    }

    fn extend_automorphism(
        &self,
        depth: usize,
        perm: &mut Vec<usize>,
        used: &mut u64,
        out: &mut Vec<Vec<usize>>,
    ) {
        let h = self.vertex_count;
        if depth == h {
            out.push(perm.clone());
            return;
        }
        for img in 0..h {
            if *used >> img & 1 == 1 || self.degree(img) != self.degree(depth) {
                continue;
            }
            let consistent = (0..depth).all(|u| self.has_edge(u, depth) == self.has_edge(perm[u], img));
            if !consistent {
                continue;
            }
            perm[depth] = img;
            *used |= 1 << img;
            self.extend_automorphism(depth + 1, perm, used, out);
            *used &= !(1 << img);
        }
    }

    /// A relabelling-invariant representative: the isomorphic copy whose
    /// adjacency bits, read pair by pair in colex order, are lexicographically
    /// largest.
    pub fn canonical_form(&self) -> Result<PatternGraph> {
        self.check_brute_force_size()?;
        let h = self.vertex_count;
        let mut search = CanonSearch {
            graph: self,
            best: None,
            order: Vec::with_capacity(h),
            bits: Vec::with_capacity(h * h / 2),
        };
        search.run();
        let order = search.best.map(|(_, o)| o).unwrap_or_default();
        // order[new] = old
        let mut new_of = vec![0usize; h];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| (new_of[a], new_of[b]))
            .collect();
        PatternGraph::new(h, &edges)
    }

    pub fn is_isomorphic(&self, other: &PatternGraph) -> Result<bool> {
        if self.vertex_count != other.vertex_count || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        let mut d1: Vec<_> = (0..self.vertex_count).map(|v| self.degree(v)).collect();
        let mut d2: Vec<_> = (0..other.vertex_count).map(|v| other.degree(v)).collect();
        d1.sort_unstable();
        d2.sort_unstable();
        if d1 != d2 {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    /// Whether `sub` embeds into `self` as a (not necessarily induced)
    /// subgraph, isolated vertices of `sub` included.
    pub fn contains_subgraph(&self, sub: &PatternGraph) -> bool {
        if sub.vertex_count > self.vertex_count || sub.edge_count() > self.edge_count() {
            return false;
        }
        let mut map = vec![0usize; sub.vertex_count];
        self.embed(sub, 0, &mut map, 0)
    }

    fn embed(&self, sub: &PatternGraph, depth: usize, map: &mut Vec<usize>, used: u64) -> bool {
        if depth == sub.vertex_count {
            return true;
        }
        for img in 0..self.vertex_count {
            if used >> img & 1 == 1 || self.degree(img) < sub.degree(depth) {
                continue;
            }
            let ok = (0..depth).all(|u| !sub.has_edge(u, depth) || self.has_edge(map[u], img));
            if ok {
                map[depth] = img;
                if self.embed(sub, depth + 1, map, used | 1 << img) {
                    return true;
                }
            }
        }
        false
    }

    /// Parses `n=<int>; edges=<i>-<j>[,<i>-<j>]*` (an empty edge list is
    /// allowed). Whitespace around tokens is ignored.
    pub fn parse(text: &str) -> Result<PatternGraph> {
        let mut p = Cursor { text, pos: 0 };
        p.skip_ws();
        p.expect("n")?;
        p.skip_ws();
        p.expect("=")?;
        p.skip_ws();
        let n = p.number()?;
        p.skip_ws();
        p.expect(";")?;
        p.skip_ws();
        p.expect("edges")?;
        p.skip_ws();
        p.expect("=")?;
        p.skip_ws();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        if !p.at_end() {
            loop {
                p.skip_ws();
                let start = p.pos;
                let a = p.number()?;
                p.skip_ws();
                p.expect("-")?;
                p.skip_ws();
                let b = p.number()?;
                if a == b {
                    return Err(Error::parse(start, format!("self-loop {a}-{b}")));
                }
                if a >= n || b >= n {
                    return Err(Error::parse(start, format!("vertex in {a}-{b} is >= n = {n}")));
                }
                let e = (a.min(b), a.max(b));
                if edges.contains(&e) {
                    return Err(Error::parse(start, format!("duplicate edge {a}-{b}")));
                }
                edges.push(e);
                p.skip_ws();
                if p.at_end() {
                    break;
                }
                p.expect(",")?;
            }
        }
        PatternGraph::new(n, &edges).map_err(|e| match e {
            Error::Input(msg) => Error::parse(0, msg),
            other => other,
        })
    }
}

struct CanonSearch<'a> {
    graph: &'a PatternGraph,
    best: Option<(Vec<bool>, Vec<usize>)>,
    order: Vec<usize>,
    bits: Vec<bool>,
}

impl CanonSearch<'_> {
    fn run(&mut self) {
        let g = self.graph;
        let h = g.vertex_count;
        let t = self.order.len();
        if t == h {
            let better = match &self.best {
                None => true,
                Some((b, _)) => self.bits > *b,
            };
            if better {
                self.best = Some((self.bits.clone(), self.order.clone()));
            }
            return;
        }
        let placed: u64 = self.order.iter().fold(0, |m, &v| m | 1 << v);
        let mut tried: u64 = 0;
        for cand in 0..h {
            if placed >> cand & 1 == 1 || tried >> cand & 1 == 1 {
                continue;
            }
            // twins of an already tried vertex (same neighbourhood apart from
            // each other) lead to identical branches
            let twin_mask = (0..h)
                .filter(|&w| {
                    w != cand
                        && placed >> w & 1 == 0
                        && (g.adj[w] & !(1 << cand)) == (g.adj[cand] & !(1 << w))
                })
                .fold(0u64, |m, w| m | 1 << w);
            tried |= 1 << cand | twin_mask;

            let before = self.bits.len();
            for &u in &self.order {
                self.bits.push(g.has_edge(u, cand));
            }
            let prune = match &self.best {
                Some((b, _)) => self.bits[..] < b[..self.bits.len()],
                None => false,
            };
            if !prune {
                self.order.push(cand);
                self.run();
                self.order.pop();
            }
            self.bits.truncate(before);
        }
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.rest().trim().is_empty()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{token}'")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(Error::parse(self.pos, "expected an integer"));
        }
        let v = self.rest()[..digits]
            .parse()
            .map_err(|_| Error::parse(self.pos, "integer out of range"))?;
        self.pos += digits;
        Ok(v)
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; edges=", self.vertex_count)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternGraph({self})")
    }
}

impl std::str::FromStr for PatternGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PatternGraph::parse(s)
    }
}

/// Named patterns. `P_l` is the path with `l` edges.
pub mod catalogue {
    use super::PatternGraph;

    fn g(n: usize, edges: &[(usize, usize)]) -> PatternGraph {
        PatternGraph::new(n, edges).expect("catalogue entries are valid")
    }

    pub fn path(edges: usize) -> PatternGraph {
        let e: Vec<_> = (0..edges).map(|i| (i, i + 1)).collect();
        g(edges + 1, &e)
    }

    pub fn cycle(len: usize) -> PatternGraph {
        let e: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        g(len, &e)
    }

    pub fn complete(r: usize) -> PatternGraph {
        let mut e = Vec::new();
        for i in 0..r {
            for j in (i + 1)..r {
                e.push((i, j));
            }
        }
        g(r, &e)
    }

    pub fn star(leaves: usize) -> PatternGraph {
        let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        g(leaves + 1, &e)
    }

    pub fn single_edge() -> PatternGraph {
        path(1)
    }

    /// Triangle `1 2 3` with pendant vertex `0` attached to `1`.
    pub fn triangle_pendant() -> PatternGraph {
        g(4, &[(1, 2), (2, 3), (1, 3), (0, 1)])
    }

    /// Triangle `0 1 2` and a disjoint edge `3 4`.
    pub fn triangle_edge() -> PatternGraph {
        g(5, &[(0, 1), (1, 2), (0, 2), (3, 4)])
    }

    /// `P_3` plus a disjoint edge.
    pub fn p3_plus_edge() -> PatternGraph {
        g(6, &[(0, 1), (1, 2), (2, 3), (4, 5)])
    }

    /// `K_{1,3}` with one edge subdivided.
    pub fn spider() -> PatternGraph {
        g(5, &[(0, 1), (0, 2), (0, 3), (1, 4)])
    }

    /// `K_{1,3}` plus a disjoint edge.
    pub fn claw_plus_edge() -> PatternGraph {
        g(6, &[(0, 1), (0, 2), (0, 3), (4, 5)])
    }

    /// Two disjoint copies of `P_2`.
    pub fn two_p2() -> PatternGraph {
        g(6, &[(0, 1), (1, 2), (3, 4), (4, 5)])
    }

    /// `P_2` plus two disjoint edges.
    pub fn p2_plus_two_edges() -> PatternGraph {
        g(7, &[(0, 1), (1, 2), (3, 4), (5, 6)])
    }

    pub fn matching(edges: usize) -> PatternGraph {
        let e: Vec<_> = (0..edges).map(|i| (2 * i, 2 * i + 1)).collect();
        g(2 * edges, &e)
    }

    /// The six 4-edge graphs without isolated vertices that satisfy the
    /// niceness condition.
    pub fn nice_four_edge() -> Vec<(&'static str, PatternGraph)> {
        vec![
            ("K1,4", star(4)),
            ("spider", spider()),
            ("K1,3+K2", claw_plus_edge()),
            ("2P2", two_p2()),
            ("P2+2K2", p2_plus_two_edges()),
            ("4K2", matching(4)),
        ]
    }

    /// Looks up a pattern by short name (`p1`..`p9`, `c4`, `k3`, `k4`, `tp`,
    /// `te`, `k14`, `p3p1`, ...).
    pub fn by_name(name: &str) -> Option<PatternGraph> {
        let lower = name.to_ascii_lowercase();
        let pg = match lower.as_str() {
            "tp" => triangle_pendant(),
            "te" => triangle_edge(),
            "k14" | "star4" => star(4),
            "spider" => spider(),
            "k13k2" => claw_plus_edge(),
            "2p2" => two_p2(),
            "p22k2" => p2_plus_two_edges(),
            "4k2" => matching(4),
            "p3p1" => p3_plus_edge(),
            _ => {
                let (head, num) = lower.split_at(1);
                let num: usize = num.parse().ok()?;
                match head {
                    "p" if (1..=9).contains(&num) => path(num),
                    "c" if (3..=10).contains(&num) => cycle(num),
                    "k" if (2..=10).contains(&num) => complete(num),
                    _ => return None,
                }
            }
        };
        Some(pg)
    }
}
