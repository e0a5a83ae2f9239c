//! Growth class of `g(n, H)` as a function of `n`, decided from the shape of
//! `H` with isolated vertices removed.

use std::collections::HashSet;
use std::fmt;

use crate::attacks::is_nice;
use crate::error::{Error, Result};
use crate::pattern::catalogue::{cycle, nice_four_edge, p3_plus_edge, path, triangle_edge, triangle_pendant};
use crate::pattern::PatternGraph;

/// Which subgraph supplies the polynomial lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolynomialWitness {
    /// contains `C_4`: exponent at least 1/3
    C4,
    /// contains `P_4`: exponent at least 1/5
    P4,
    /// contains a nice graph: exponent at least 1/6
    Nice,
}

impl PolynomialWitness {
    pub fn exponent_bound(&self) -> &'static str {
        match self {
            PolynomialWitness::C4 => "1/3",
            PolynomialWitness::P4 => "1/5",
            PolynomialWitness::Nice => "1/6",
        }
    }

    fn subgraph_name(&self) -> &'static str {
        match self {
            PolynomialWitness::C4 => "C4",
            PolynomialWitness::P4 => "P4",
            PolynomialWitness::Nice => "nice",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GrowthClass {
    BoundedByFive,
    UnboundedSubpolynomial,
    Polynomial(PolynomialWitness),
    /// `P_3 ∪ P_1`, whose growth is open.
    Unknown,
}

impl GrowthClass {
    pub fn tag(&self) -> &'static str {
        match self {
            GrowthClass::BoundedByFive => "bounded",
            GrowthClass::UnboundedSubpolynomial => "subpolynomial",
            GrowthClass::Polynomial(_) => "polynomial",
            GrowthClass::Unknown => "unknown",
        }
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::BoundedByFive => f.write_str("bounded (g <= 5)"),
            GrowthClass::UnboundedSubpolynomial => f.write_str("unbounded, n^o(1)"),
            GrowthClass::Polynomial(w) => write!(
                f,
                "polynomial (exponent >= {} via {})",
                w.exponent_bound(),
                w.subgraph_name()
            ),
            GrowthClass::Unknown => f.write_str("unknown (open)"),
        }
    }
}

fn iso(a: &PatternGraph, b: &PatternGraph) -> bool {
    a.is_isomorphic(b).unwrap_or(false)
}

fn polynomial_witness(core: &PatternGraph) -> Option<PolynomialWitness> {
    if core.contains_subgraph(&cycle(4)) {
        Some(PolynomialWitness::C4)
    } else if core.contains_subgraph(&path(4)) {
        Some(PolynomialWitness::P4)
    } else if is_nice(core).is_some() {
        Some(PolynomialWitness::Nice)
    } else {
        None
    }
}

pub fn classify_growth(h: &PatternGraph) -> GrowthClass {
    let core = h.strip_isolated();
    let e = core.edge_count();
    if e <= 3 {
        return if iso(&core, &path(3)) {
            GrowthClass::UnboundedSubpolynomial
        } else {
            GrowthClass::BoundedByFive
        };
    }
    if e == 4 {
        if iso(&core, &triangle_pendant()) || iso(&core, &triangle_edge()) {
            return GrowthClass::UnboundedSubpolynomial;
        }
        if iso(&core, &p3_plus_edge()) {
            return GrowthClass::Unknown;
        }
    }
    match polynomial_witness(&core) {
        Some(w) => GrowthClass::Polynomial(w),
        // every triangle-free 4-edge graph other than P3 ∪ P1, and every graph
        // with 5 or more edges, contains one of the witnesses
        None => unreachable!("no polynomial witness in {core}"),
    }
}

/// One isomorphism class in the report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRow {
    pub graph: PatternGraph,
    pub class: GrowthClass,
    /// Reported for 4-edge classes only.
    pub nice: Option<bool>,
}

pub const MAX_TABLE_EDGES: usize = 5;

/// All isolated-free graphs with `1..=max_edges` edges up to isomorphism,
/// each grown from a smaller class by one edge and deduplicated by canonical
/// form. Rows are ordered by edge count, then by vertex count, then by the
/// canonical edge list.
pub fn classification_table(max_edges: usize) -> Result<Vec<ClassRow>> {
    if max_edges > MAX_TABLE_EDGES {
        return Err(Error::input(format!(
            "max_edges = {max_edges} exceeds {MAX_TABLE_EDGES}"
        )));
    }
    let mut layer = vec![PatternGraph::new(2, &[(0, 1)])?];
    let mut rows = Vec::new();
    for e in 1..=max_edges {
        if e > 1 {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for g in &layer {
                for bigger in add_one_edge(g)? {
                    let canon = bigger.canonical_form()?;
                    if seen.insert(canon.clone()) {
                        next.push(canon);
                    }
                }
            }
            layer = next;
        } else {
            layer = vec![layer[0].canonical_form()?];
        }
        layer.sort_by(|a, b| {
            a.vertex_count()
                .cmp(&b.vertex_count())
                .then_with(|| a.edges().cmp(b.edges()))
        });
        for g in &layer {
            rows.push(ClassRow {
                graph: g.clone(),
                class: classify_growth(g),
                nice: (e == 4).then(|| is_nice(g).is_some()),
            });
        }
    }
    Ok(rows)
}

/// Every isolated-free graph obtained by adding one edge, possibly on one
/// or two new vertices.
fn add_one_edge(g: &PatternGraph) -> Result<Vec<PatternGraph>> {
    let v = g.vertex_count();
    let mut out = Vec::new();
    let mut push = |n: usize, e: (usize, usize)| -> Result<()> {
        let mut edges = g.edges().to_vec();
        edges.push(e);
        out.push(PatternGraph::new(n, &edges)?);
        Ok(())
    };
    for a in 0..v {
        for b in (a + 1)..v {
            if !g.has_edge(a, b) {
                push(v, (a, b))?;
            }
        }
        push(v + 1, (a, v))?;
    }
    push(v + 2, (v, v + 1))?;
    Ok(out)
}

/// Aligned text rendering of the report.
pub fn render_table(rows: &[ClassRow]) -> String {
    let mut lines = vec![format!(
        "{:<5} {:<45} {:<14} {}",
        "edges", "graph", "class", "nice"
    )];
    for r in rows {
        lines.push(format!(
            "{:<5} {:<45} {:<14} {}",
            r.graph.edge_count(),
            r.graph.to_string(),
            r.class.tag(),
            match r.nice {
                Some(true) => "yes",
                Some(false) => "no",
                None => "-",
            }
        ));
    }
    lines.join("\n") + "\n"
}

/// One tab-separated line per class: canonical pattern, class tag, niceness.
pub fn render_rows(rows: &[ClassRow]) -> String {
    rows.iter()
        .map(|r| {
            let nice = match r.nice {
                Some(b) => b.to_string(),
                None => "-".to_string(),
            };
            format!("{}\t{}\t{}\n", r.graph, r.class.tag(), nice)
        })
        .collect()
}

/// Whether `h` contains `C_4`, `P_4` or one of the six nice 4-edge graphs.
pub fn has_polynomial_subgraph(h: &PatternGraph) -> bool {
    let h = h.strip_isolated();
    h.contains_subgraph(&cycle(4))
        || h.contains_subgraph(&path(4))
        || nice_four_edge().iter().any(|(_, g)| h.contains_subgraph(g))
}
