//! Line-oriented text formats. Every file may start with `#` comment lines;
//! the header line names the format, the body follows.
//!
//! ```text
//! LRC1 <n> <k>        n lines of C(n,2) colours, lexicographic edge order
//! HGC1 <n> <r> <k>    C(n,r) colours in colex order, 20 per line
//! ORD1 <n> <M>        M lines, each a permutation listed least to greatest
//! KWC1 <n> <w> <k>    n lines of C(n,w) colours in colex order
//! CERT1 <variant>     labelled lines, see `write_certificate`
//! ```

use std::fmt::Write as _;

use crate::certificate::Certificate;
use crate::colouring::{Colour, HypergraphColouring, LocalColouringCollection, OrderFamily};
use crate::combinatorics::{binomial, pair_count};
use crate::constructions::KwColouring;
use crate::error::{Error, Result};

const WRAP: usize = 20;

struct Lines<'a> {
    /// `(byte offset, trimmed content)` of the non-blank lines
    lines: Vec<(usize, &'a str)>,
    next: usize,
    end: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut offset = 0;
        let mut in_preamble = true;
        for raw in text.split_inclusive('\n') {
            let t = raw.trim();
            let comment = in_preamble && t.starts_with('#');
            if !t.is_empty() && !comment {
                in_preamble = false;
                lines.push((offset, t));
            }
            offset += raw.len();
        }
        Lines {
            lines,
            next: 0,
            end: text.len(),
        }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let line = self
            .lines
            .get(self.next)
            .copied()
            .ok_or_else(|| Error::parse(self.end, format!("unexpected end of input, expected {what}")))?;
        self.next += 1;
        Ok(line)
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.next) {
            Some(&(pos, _)) => Err(Error::parse(pos, "unexpected trailing content")),
            None => Ok(()),
        }
    }

    fn header(&mut self, magic: &str, fields: usize) -> Result<Vec<usize>> {
        let (pos, line) = self.next_line("a header")?;
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some(magic) {
            return Err(Error::parse(pos, format!("expected header {magic}")));
        }
        let values = parse_numbers::<usize>(pos, tokens.collect::<Vec<_>>().join(" ").as_str())?;
        if values.len() != fields {
            return Err(Error::parse(
                pos,
                format!("{magic} header needs {fields} fields, found {}", values.len()),
            ));
        }
        Ok(values)
    }

    /// Reads exactly `count` whitespace-separated integers spread over lines.
    fn numbers<T: std::str::FromStr>(&mut self, count: usize) -> Result<Vec<T>> {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let (pos, line) = self.next_line("more values")?;
            out.extend(parse_numbers(pos, line)?);
        }
        if out.len() > count {
            return Err(Error::parse(self.lines[self.next - 1].0, "too many values"));
        }
        Ok(out)
    }

    /// One line of exactly `count` integers.
    fn row<T: std::str::FromStr>(&mut self, count: usize) -> Result<Vec<T>> {
        let (pos, line) = self.next_line("a row")?;
        let values = parse_numbers(pos, line)?;
        if values.len() != count {
            return Err(Error::parse(
                pos,
                format!("row has {} values, expected {count}", values.len()),
            ));
        }
        Ok(values)
    }
}

fn parse_numbers<T: std::str::FromStr>(pos: usize, line: &str) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(pos, format!("not a non-negative integer: {t:?}")))
        })
        .collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn shape_error(pos: usize, e: Error) -> Error {
    match e {
        Error::Input(msg) => Error::parse(pos, msg),
        other => other,
    }
}

pub fn write_local_collection(c: &LocalColouringCollection) -> String {
    let mut out = format!("LRC1 {} {}\n", c.n(), c.k());
    for v in 0..c.n() {
        out.push_str(&join(c.row(v)));
        out.push('\n');
    }
    out
}

pub fn read_local_collection(text: &str) -> Result<LocalColouringCollection> {
    let mut lines = Lines::new(text);
    let h = lines.header("LRC1", 2)?;
    let (n, k) = (h[0], h[1]);
    let m = pair_count(n);
    let mut table = Vec::with_capacity(n * m);
    for _ in 0..n {
        table.extend(lines.row::<Colour>(m)?);
    }
    lines.finish()?;
    LocalColouringCollection::new(n, k, table).map_err(|e| shape_error(0, e))
}

pub fn write_hypergraph_colouring(g: &HypergraphColouring) -> String {
    let mut out = format!("HGC1 {} {} {}\n", g.n(), g.r(), g.k());
    for chunk in g.values().chunks(WRAP) {
        out.push_str(&join(chunk));
        out.push('\n');
    }
    out
}

pub fn read_hypergraph_colouring(text: &str) -> Result<HypergraphColouring> {
    let mut lines = Lines::new(text);
    let h = lines.header("HGC1", 3)?;
    let (n, r, k) = (h[0], h[1], h[2]);
    if r > n {
        return Err(Error::parse(0, format!("uniformity {r} exceeds n = {n}")));
    }
    let values = lines.numbers::<Colour>(binomial(n, r))?;
    lines.finish()?;
    HypergraphColouring::new(n, r, k, values).map_err(|e| shape_error(0, e))
}

pub fn write_order_family(f: &OrderFamily) -> String {
    let mut out = format!("ORD1 {} {}\n", f.n(), f.len());
    for order in f.orders() {
        out.push_str(&join(order));
        out.push('\n');
    }
    out
}

pub fn read_order_family(text: &str) -> Result<OrderFamily> {
    let mut lines = Lines::new(text);
    let h = lines.header("ORD1", 2)?;
    let (n, m) = (h[0], h[1]);
    let mut orders = Vec::with_capacity(m);
    for _ in 0..m {
        orders.push(lines.row::<usize>(n)?);
    }
    lines.finish()?;
    OrderFamily::new(n, orders).map_err(|e| shape_error(0, e))
}

pub fn write_kw_colouring(kw: &KwColouring) -> String {
    let mut out = format!("KWC1 {} {} {}\n", kw.n(), kw.w(), kw.k());
    let width = binomial(kw.n(), kw.w());
    for row in kw.table().chunks(width.max(1)) {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

pub fn read_kw_colouring(text: &str) -> Result<KwColouring> {
    let mut lines = Lines::new(text);
    let h = lines.header("KWC1", 3)?;
    let (n, w, k) = (h[0], h[1], h[2]);
    if w > n {
        return Err(Error::parse(0, format!("w = {w} exceeds n = {n}")));
    }
    let width = binomial(n, w);
    let mut table = Vec::with_capacity(n * width);
    for _ in 0..n {
        table.extend(lines.row::<Colour>(width)?);
    }
    lines.finish()?;
    KwColouring::new(n, w, k, table).map_err(|e| shape_error(0, e))
}

/// ```text
/// CERT1 NonRainbowCopy        CERT1 PoorPSet
/// copy: 4 0 7                 set: 0 1 2 5
/// witness: 0-1 0-1 0-1        colours: 2
///
/// CERT1 ScramblingViolation   CERT1 CycleWitness
/// tuple: 3 0 1                cycle: 0 4 1 6
/// ```
pub fn write_certificate(cert: &Certificate) -> String {
    let mut out = format!("CERT1 {}\n", cert.variant_name());
    match cert {
        Certificate::NonRainbowCopy { copy, witnesses } => {
            let _ = writeln!(out, "copy: {}", join(copy));
            let pairs: Vec<String> = witnesses.iter().map(|(i, j)| format!("{i}-{j}")).collect();
            let _ = writeln!(out, "witness: {}", pairs.join(" "));
        }
        Certificate::PoorPSet { set, colours } => {
            let _ = writeln!(out, "set: {}", join(set));
            let _ = writeln!(out, "colours: {colours}");
        }
        Certificate::ScramblingViolation { tuple } => {
            let _ = writeln!(out, "tuple: {}", join(tuple));
        }
        Certificate::CycleWitness { cycle } => {
            let _ = writeln!(out, "cycle: {}", join(cycle));
        }
    }
    out
}

fn labelled<'a>(lines: &mut Lines<'a>, label: &str) -> Result<(usize, &'a str)> {
    let (pos, line) = lines.next_line(label)?;
    let rest = line
        .strip_prefix(label)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| Error::parse(pos, format!("expected a `{label}:` line")))?;
    Ok((pos, rest.trim()))
}

pub fn read_certificate(text: &str) -> Result<Certificate> {
    let mut lines = Lines::new(text);
    let (pos, header) = lines.next_line("a header")?;
    let variant = header
        .strip_prefix("CERT1")
        .map(str::trim)
        .ok_or_else(|| Error::parse(pos, "expected header CERT1"))?;
    let cert = match variant {
        "NonRainbowCopy" => {
            let (p1, copy) = labelled(&mut lines, "copy")?;
            let copy = parse_numbers(p1, copy)?;
            let (p2, wit) = labelled(&mut lines, "witness")?;
            let witnesses = wit
                .split_whitespace()
                .map(|t| {
                    let (i, j) = t
                        .split_once('-')
                        .ok_or_else(|| Error::parse(p2, format!("witness {t:?} is not i-j")))?;
                    let i = i.parse().map_err(|_| Error::parse(p2, "bad witness index"))?;
                    let j = j.parse().map_err(|_| Error::parse(p2, "bad witness index"))?;
                    Ok((i, j))
                })
                .collect::<Result<Vec<_>>>()?;
            Certificate::NonRainbowCopy { copy, witnesses }
        }
        "PoorPSet" => {
            let (p1, set) = labelled(&mut lines, "set")?;
            let set = parse_numbers(p1, set)?;
            let (p2, colours) = labelled(&mut lines, "colours")?;
            let colours = colours
                .parse()
                .map_err(|_| Error::parse(p2, "colours must be an integer"))?;
            Certificate::PoorPSet { set, colours }
        }
        "ScramblingViolation" => {
            let (p1, tuple) = labelled(&mut lines, "tuple")?;
            Certificate::ScramblingViolation {
                tuple: parse_numbers(p1, tuple)?,
            }
        }
        "CycleWitness" => {
            let (p1, cycle) = labelled(&mut lines, "cycle")?;
            Certificate::CycleWitness {
                cycle: parse_numbers(p1, cycle)?,
            }
        }
        other => return Err(Error::parse(pos, format!("unknown certificate variant {other:?}"))),
    };
    lines.finish()?;
    Ok(cert)
}
