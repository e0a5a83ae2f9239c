//! Exact minimum-colour search at tiny scale by backtracking.
//!
//! For `g(n, H)` cells are `(v, e)` in row-major order. Each copy of `H`
//! keeps a count of its rows that already repeat a colour on its edges; a
//! copy whose every row repeats kills the branch. For `f_r(n, p, q)` cells are
//! `r`-sets in colex order and every `p`-set must still be able to reach `q`
//! colours if all its open cells took fresh ones.

use std::time::{Duration, Instant};

use crate::colouring::{Colour, HypergraphColouring, LocalColouringCollection};
use crate::combinatorics::{binomial, colex_rank, edge_id, pair_count, ColexSubsets};
use crate::copies::enumerate_copies;
use crate::error::{Error, Result};
use crate::pattern::PatternGraph;
use crate::verification::{verify_local, verify_pq};

/// Refuse searches whose estimated magnitude exceeds this unless forced.
pub const DEFAULT_GUARD: f64 = 1e7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchBudget {
    pub node_cap: u64,
    pub time_cap_secs: f64,
    pub force: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_cap: 50_000_000,
            time_cap_secs: 60.0,
            force: false,
        }
    }
}

impl SearchBudget {
    fn validate(&self) -> Result<()> {
        if self.node_cap == 0 || !(self.time_cap_secs > 0.0) {
            return Err(Error::input("search caps must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<W> {
    Feasible(W),
    Infeasible,
    /// A cap was hit before the tree was exhausted.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport<W> {
    pub decision: Decision<W>,
    pub nodes: u64,
}

/// Result of a minimisation: the least feasible `k` with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minimum<W> {
    Found { k: usize, witness: W, nodes: u64 },
    Unknown { last_k: usize, nodes: u64 },
}

fn log2_clamped(k: usize) -> f64 {
    (k.max(2) as f64).log2()
}

fn guard(estimate: f64, budget: &SearchBudget) -> Result<()> {
    if estimate > DEFAULT_GUARD && !budget.force {
        return Err(Error::GuardExceeded {
            estimate,
            guard: DEFAULT_GUARD,
        });
    }
    Ok(())
}

struct Clock {
    start: Instant,
    cap: Duration,
    node_cap: u64,
    nodes: u64,
    stopped: bool,
}

impl Clock {
    fn new(budget: &SearchBudget) -> Self {
        Clock {
            start: Instant::now(),
            cap: Duration::from_secs_f64(budget.time_cap_secs),
            node_cap: budget.node_cap,
            nodes: 0,
            stopped: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.node_cap
            || (self.nodes & 0xfff == 0 && self.start.elapsed() > self.cap)
        {
            self.stopped = true;
        }
        !self.stopped
    }
}

struct GSearch {
    m: usize,
    k: usize,
    symmetry: bool,
    h_vertices: usize,
    /// per cell: `(copy, slot, edge ids of the copy's other edges)`
    cell_copies: Vec<Vec<(usize, u8, Vec<usize>)>>,
    dead_rows: Vec<u8>,
    row_dead: Vec<bool>,
    grid: Vec<Colour>,
    clock: Clock,
}

impl GSearch {
    /// Returns `Some(true)` when a full assignment was reached.
    fn dfs(&mut self, cell: usize, row_max: Colour) -> Option<bool> {
        if !self.clock.tick() {
            return None;
        }
        if cell == self.grid.len() {
            return Some(true);
        }
        let v = cell / self.m;
        // under symmetry breaking a row opens with colour 0 and each later
        // cell may exceed the row's running maximum by at most one
        let limit = match (self.symmetry, cell.is_multiple_of(self.m)) {
            (false, _) => self.k,
            (true, true) => 1,
            (true, false) => (row_max as usize + 2).min(self.k),
        };
        let entries = std::mem::take(&mut self.cell_copies[cell]);
        let mut result = Some(false);
        for colour in 0..limit as Colour {
            self.grid[cell] = colour;
            let mut trail: Vec<usize> = Vec::new();
            let mut killed = false;
            for (copy, slot, others) in &entries {
                let key = copy * self.h_vertices + *slot as usize;
                if self.row_dead[key] {
                    continue;
                }
                let row = v * self.m;
                if others
                    .iter()
                    .any(|&e| row + e < cell && self.grid[row + e] == colour)
                {
                    self.row_dead[key] = true;
                    self.dead_rows[*copy] += 1;
                    trail.push(key);
                    if self.dead_rows[*copy] as usize == self.h_vertices {
                        killed = true;
                        break;
                    }
                }
            }
            if !killed {
                let next_max = if cell.is_multiple_of(self.m) { colour } else { row_max.max(colour) };
                result = self.dfs(cell + 1, next_max);
                if result != Some(false) {
                    break;
                }
            }
            for key in trail {
                self.row_dead[key] = false;
                self.dead_rows[key / self.h_vertices] -= 1;
            }
        }
        self.cell_copies[cell] = entries;
        result
    }
}

/// Decides whether some `(n, H)`-local collection uses at most `k` colours
/// per row. With `symmetry` each row uses colours in first-appearance order.
pub fn g_feasible_with(
    n: usize,
    h: &PatternGraph,
    k: usize,
    budget: &SearchBudget,
    symmetry: bool,
) -> Result<SearchReport<LocalColouringCollection>> {
    budget.validate()?;
    if k == 0 {
        return Err(Error::input("k must be positive"));
    }
    if h.edge_count() < 2 {
        return Err(Error::input("pattern needs at least 2 edges"));
    }
    if h.vertex_count() > n {
        return Err(Error::input("pattern larger than host"));
    }
    guard(n as f64 * pair_count(n) as f64 * log2_clamped(k), budget)?;

    let m = pair_count(n);
    let mut cell_copies: Vec<Vec<(usize, u8, Vec<usize>)>> = vec![Vec::new(); n * m];
    let mut copy_count = 0;
    for copy in enumerate_copies(h, n)? {
        let ids: Vec<usize> = h
            .edges()
            .iter()
            .map(|&(a, b)| edge_id(copy[a], copy[b], n))
            .collect();
        for (slot, &v) in copy.iter().enumerate() {
            for (i, &e) in ids.iter().enumerate() {
                let others = ids
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &x)| x)
                    .collect();
                cell_copies[v * m + e].push((copy_count, slot as u8, others));
            }
        }
        copy_count += 1;
    }
    let hv = h.vertex_count();
    let mut s = GSearch {
        m,
        k,
        symmetry,
        h_vertices: hv,
        cell_copies,
        dead_rows: vec![0; copy_count],
        row_dead: vec![false; copy_count * hv],
        grid: vec![0; n * m],
        clock: Clock::new(budget),
    };
    let outcome = s.dfs(0, 0);
    let nodes = s.clock.nodes;
    let decision = match outcome {
        None => Decision::Unknown,
        Some(false) => Decision::Infeasible,
        Some(true) => {
            let witness = LocalColouringCollection::new(n, k, s.grid)?;
            debug_assert!(verify_local(&witness, h)?.holds());
            Decision::Feasible(witness)
        }
    };
    Ok(SearchReport { decision, nodes })
}

pub fn g_feasible(
    n: usize,
    h: &PatternGraph,
    k: usize,
    budget: &SearchBudget,
) -> Result<SearchReport<LocalColouringCollection>> {
    g_feasible_with(n, h, k, budget, true)
}

/// Least `k` for which [`g_feasible`] succeeds, trying `k = 1, 2, ...`.
pub fn g_exact_min(
    n: usize,
    h: &PatternGraph,
    budget: &SearchBudget,
) -> Result<Minimum<LocalColouringCollection>> {
    let mut total = 0;
    let top = pair_count(n).max(1);
    for k in 1..=top {
        let report = g_feasible(n, h, k, budget)?;
        total += report.nodes;
        match report.decision {
            Decision::Feasible(witness) => {
                return Ok(Minimum::Found {
                    k,
                    witness,
                    nodes: total,
                })
            }
            Decision::Infeasible => {}
            Decision::Unknown => {
                return Ok(Minimum::Unknown {
                    last_k: k,
                    nodes: total,
                })
            }
        }
    }
    unreachable!("injective rows are always local")
}

struct PqSearch {
    q: usize,
    k: usize,
    /// per cell: ranks of the p-sets containing it
    cell_psets: Vec<Vec<usize>>,
    /// per p-set: cell ranks of its r-subsets
    pset_cells: Vec<Vec<usize>>,
    values: Vec<Colour>,
    clock: Clock,
}

const OPEN: Colour = Colour::MAX;

impl PqSearch {
    fn pset_ok(&self, pset: usize) -> bool {
        let mut seen: Vec<Colour> = Vec::with_capacity(self.pset_cells[pset].len());
        let mut open = 0;
        for &cell in &self.pset_cells[pset] {
            match self.values[cell] {
                OPEN => open += 1,
                c => {
                    if !seen.contains(&c) {
                        seen.push(c);
                    }
                }
            }
        }
        seen.len() + open >= self.q
    }

    fn dfs(&mut self, cell: usize, used: usize) -> Option<bool> {
        if !self.clock.tick() {
            return None;
        }
        if cell == self.values.len() {
            return Some(true);
        }
        let limit = (used + 1).min(self.k);
        for colour in 0..limit {
            self.values[cell] = colour as Colour;
            let ok = (0..self.cell_psets[cell].len()).all(|i| self.pset_ok(self.cell_psets[cell][i]));
            if ok {
                match self.dfs(cell + 1, used.max(colour + 1)) {
                    Some(false) => {}
                    other => return other,
                }
            }
        }
        self.values[cell] = OPEN;
        Some(false)
    }
}

fn pq_feasible(
    n: usize,
    r: usize,
    p: usize,
    q: usize,
    k: usize,
    budget: &SearchBudget,
) -> Result<SearchReport<HypergraphColouring>> {
    let cells = binomial(n, r);
    let mut cell_psets = vec![Vec::new(); cells];
    let mut pset_cells = Vec::new();
    let local: Vec<Vec<usize>> = ColexSubsets::new(p, r).collect();
    for (pi, pset) in ColexSubsets::new(n, p).enumerate() {
        let ids: Vec<usize> = local
            .iter()
            .map(|idx| colex_rank(&idx.iter().map(|&i| pset[i]).collect::<Vec<_>>()))
            .collect();
        for &c in &ids {
            cell_psets[c].push(pi);
        }
        pset_cells.push(ids);
    }
    let mut s = PqSearch {
        q,
        k,
        cell_psets,
        pset_cells,
        values: vec![OPEN; cells],
        clock: Clock::new(budget),
    };
    let outcome = s.dfs(0, 0);
    let nodes = s.clock.nodes;
    let decision = match outcome {
        None => Decision::Unknown,
        Some(false) => Decision::Infeasible,
        Some(true) => {
            let witness = HypergraphColouring::new(n, r, k, s.values)?;
            debug_assert!(verify_pq(&witness, p, q)?.holds());
            Decision::Feasible(witness)
        }
    };
    Ok(SearchReport { decision, nodes })
}

/// `f_r(n, p, q)` with a witness, searching `k = max(1, q), ...`.
pub fn pq_exact_min(
    n: usize,
    r: usize,
    p: usize,
    q: usize,
    budget: &SearchBudget,
) -> Result<Minimum<HypergraphColouring>> {
    budget.validate()?;
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
    let cells = binomial(n, r);
    let mut total = 0;
    for k in q.max(1)..=cells {
        guard(cells as f64 * log2_clamped(k), budget)?;
        let report = pq_feasible(n, r, p, q, k, budget)?;
        total += report.nodes;
        match report.decision {
            Decision::Feasible(witness) => {
                return Ok(Minimum::Found {
                    k,
                    witness,
                    nodes: total,
                })
            }
            Decision::Infeasible => {}
            Decision::Unknown => {
                return Ok(Minimum::Unknown {
                    last_k: k,
                    nodes: total,
                })
            }
        }
    }
    unreachable!("an injective colouring is always a (p,q)-colouring")
}
