//! Exhaustive checkers. Each returns [`Verdict::Holds`] or the first
//! counterexample in a fixed scan order, so results do not depend on the
//! number of worker threads.

use rayon::prelude::*;

use crate::certificate::{Certificate, Verdict};
use crate::colouring::{HypergraphColouring, LocalColouringCollection, OrderFamily};
use crate::combinatorics::{binomial, colex_rank, complement, edge_id, ColexSubsets};
use crate::constructions::KwColouring;
use crate::copies::Copies;
use crate::error::{Error, Result};
use crate::pattern::PatternGraph;

/// Checks that every copy of `pattern` has a vertex whose row colours the
/// copy's edges pairwise differently.
pub fn verify_local(c: &LocalColouringCollection, pattern: &PatternGraph) -> Result<Verdict> {
    if pattern.edge_count() < 2 {
        return Err(Error::input(format!(
            "pattern {pattern} has fewer than 2 edges; locality is degenerate"
        )));
    }
    if pattern.vertex_count() > c.n() {
        return Err(Error::input(format!(
            "pattern has {} vertices but the host has only {}",
            pattern.vertex_count(),
            c.n()
        )));
    }
    // surfaces the size error before fanning out
    pattern.automorphism_group()?;
    let found = (0..c.n())
        .into_par_iter()
        .find_map_first(|shard| scan_local_shard(c, pattern, shard));
    Ok(match found {
        Some(cert) => Verdict::Fails(cert),
        None => Verdict::Holds,
    })
}

fn scan_local_shard(
    c: &LocalColouringCollection,
    pattern: &PatternGraph,
    shard: usize,
) -> Option<Certificate> {
    let n = c.n();
    let mut copies = Copies::new(pattern, n, Some(shard)).expect("checked by caller");
    let pedges = pattern.edges();
    let mut ids = vec![0usize; pedges.len()];
    let mut cols = vec![0u32; pedges.len()];
    while let Some(copy) = copies.next_copy() {
        for (slot, &(a, b)) in ids.iter_mut().zip(pedges) {
            *slot = edge_id(copy[a], copy[b], n);
        }
        let rainbow_somewhere = copy.iter().any(|&v| {
            let row = c.row(v);
            for (slot, &id) in cols.iter_mut().zip(&ids) {
                *slot = row[id];
            }
            first_collision(&cols).is_none()
        });
        if !rainbow_somewhere {
            let witnesses = copy
                .iter()
                .map(|&v| {
                    let row = c.row(v);
                    let cs: Vec<u32> = ids.iter().map(|&id| row[id]).collect();
                    first_collision(&cs).expect("row is not rainbow")
                })
                .collect();
            return Some(Certificate::NonRainbowCopy {
                copy: copy.to_vec(),
                witnesses,
            });
        }
    }
    None
}

/// First pair `(i, j)`, `i < j`, with equal entries.
pub(crate) fn first_collision(cols: &[u32]) -> Option<(usize, usize)> {
    for j in 1..cols.len() {
        for i in 0..j {
            if cols[i] == cols[j] {
                return Some((i, j));
            }
        }
    }
    None
}

fn check_pq_params(g: &HypergraphColouring, p: usize, q: usize) -> Result<()> {
    let r = g.r();
    if p <= r || p > g.n() {
        return Err(Error::input(format!(
            "need r < p <= n, got r = {r}, p = {p}, n = {}",
            g.n()
        )));
    }
    if q == 0 || q > binomial(p, r) {
        return Err(Error::input(format!(
            "need 1 <= q <= C(p,r) = {}, got q = {q}",
            binomial(p, r)
        )));
    }
    Ok(())
}

/// Checks that every `p`-set spans at least `q` distinct colours.
pub fn verify_pq(g: &HypergraphColouring, p: usize, q: usize) -> Result<Verdict> {
    check_pq_params(g, p, q)?;
    let r = g.r();
    let local: Vec<Vec<usize>> = ColexSubsets::new(p, r).collect();
    let mut stamp = vec![0u32; g.k()];
    let mut generation = 0u32;
    let mut sub = vec![0usize; r];
    let mut psets = ColexSubsets::new(g.n(), p);
    while psets.advance() {
        let pset = psets.current();
        generation += 1;
        let mut distinct = 0;
        for idx in &local {
            for (slot, &i) in sub.iter_mut().zip(idx) {
                *slot = pset[i];
            }
            let col = g.values()[colex_rank(&sub)] as usize;
            if stamp[col] != generation {
                stamp[col] = generation;
                distinct += 1;
            }
        }
        if distinct < q {
            return Ok(Verdict::Fails(Certificate::PoorPSet {
                set: pset.to_vec(),
                colours: distinct,
            }));
        }
    }
    Ok(Verdict::Holds)
}

/// A `P_3` `a-b-c-d` and a common set `S` for which the three sets
/// `{a,b}∪S`, `{b,c}∪S`, `{c,d}∪S` are rainbow under neither `f_a` nor `f_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KwViolation {
    pub path: [usize; 4],
    pub common: Vec<usize>,
}

fn union_sorted(pair: (usize, usize), common: &[usize]) -> Vec<usize> {
    let mut v = Vec::with_capacity(common.len() + 2);
    v.extend_from_slice(common);
    v.push(pair.0);
    v.push(pair.1);
    v.sort_unstable();
    v
}

/// Checks the bounded-weight property of a [`KwColouring`].
pub fn verify_kw(kw: &KwColouring) -> Verdict<KwViolation> {
    let n = kw.n();
    let s_size = kw.w() - 2;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in (a + 1)..n {
                    if b == a || c == a || c == b || d == b || d == c {
                        continue;
                    }
                    let mut path_sorted = [a, b, c, d];
                    path_sorted.sort_unstable();
                    let rest = complement(n, &path_sorted);
                    let mut commons = ColexSubsets::new(rest.len(), s_size);
                    while commons.advance() {
                        let common: Vec<usize> =
                            commons.current().iter().map(|&i| rest[i]).collect();
                        let x = union_sorted((a, b), &common);
                        let y = union_sorted((b, c), &common);
                        let z = union_sorted((c, d), &common);
                        let rainbow = |v: usize| {
                            let cx = kw.colour(v, &x);
                            let cy = kw.colour(v, &y);
                            let cz = kw.colour(v, &z);
                            cx != cy && cy != cz && cx != cz
                        };
                        if !rainbow(a) && !rainbow(d) {
                            return Verdict::Fails(KwViolation {
                                path: [a, b, c, d],
                                common,
                            });
                        }
                    }
                }
            }
        }
    }
    Verdict::Holds
}

/// The object a certificate claims to refute.
#[derive(Clone, Copy, Debug)]
pub enum Subject<'a> {
    /// `(n, H)`-locality of a collection.
    Local {
        colouring: &'a LocalColouringCollection,
        pattern: &'a PatternGraph,
    },
    /// The `(p, q)` property of a hypergraph colouring.
    Pq {
        colouring: &'a HypergraphColouring,
        p: usize,
        q: usize,
    },
    /// The `k`-scrambling property of an order family.
    Scrambling { family: &'a OrderFamily, k: usize },
    /// Cycle-locality of a collection (any even cycle length).
    Collection(&'a LocalColouringCollection),
}

/// Re-evaluates a certificate against its subject. A certificate of the wrong
/// kind for the subject is an input error.
pub fn validate_certificate(cert: &Certificate, subject: Subject<'_>) -> Result<bool> {
    match (cert, subject) {
        (Certificate::NonRainbowCopy { copy, witnesses }, Subject::Local { colouring, pattern }) => {
            Ok(validate_copy(copy, witnesses, colouring, pattern))
        }
        (Certificate::PoorPSet { set, colours }, Subject::Pq { colouring, p, q }) => {
            Ok(validate_poor_set(set, *colours, colouring, p, q))
        }
        (Certificate::ScramblingViolation { tuple }, Subject::Scrambling { family, k }) => {
            Ok(validate_scrambling(tuple, family, k))
        }
        (Certificate::CycleWitness { cycle }, Subject::Collection(colouring))
        | (Certificate::CycleWitness { cycle }, Subject::Local { colouring, .. }) => {
            Ok(validate_cycle(cycle, colouring))
        }
        (cert, subject) => Err(Error::input(format!(
            "{} certificate cannot be checked against {}",
            cert.variant_name(),
            match subject {
                Subject::Local { .. } => "a locality claim",
                Subject::Pq { .. } => "a (p,q) claim",
                Subject::Scrambling { .. } => "a scrambling claim",
                Subject::Collection(_) => "a bare collection",
            }
        ))),
    }
}

fn distinct_in_range(xs: &[usize], n: usize) -> bool {
    xs.iter().enumerate().all(|(i, &x)| x < n && !xs[..i].contains(&x))
}

fn validate_copy(
    copy: &[usize],
    witnesses: &[(usize, usize)],
    c: &LocalColouringCollection,
    pattern: &PatternGraph,
) -> bool {
    let n = c.n();
    let pedges = pattern.edges();
    if copy.len() != pattern.vertex_count() || witnesses.len() != copy.len() {
        return false;
    }
    if !distinct_in_range(copy, n) {
        return false;
    }
    copy.iter().zip(witnesses).all(|(&v, &(i, j))| {
        if i == j || i >= pedges.len() || j >= pedges.len() {
            return false;
        }
        let (a1, b1) = pedges[i];
        let (a2, b2) = pedges[j];
        c.colour(v, copy[a1], copy[b1]) == c.colour(v, copy[a2], copy[b2])
    })
}

fn validate_poor_set(
    set: &[usize],
    colours: usize,
    g: &HypergraphColouring,
    p: usize,
    q: usize,
) -> bool {
    if set.len() != p || !distinct_in_range(set, g.n()) || set.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    let mut seen: Vec<u32> = ColexSubsets::new(p, g.r())
        .map(|idx| {
            let sub: Vec<usize> = idx.iter().map(|&i| set[i]).collect();
            g.colour_of(&sub)
        })
        .collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == colours && colours < q
}

fn validate_scrambling(tuple: &[usize], f: &OrderFamily, k: usize) -> bool {
    if tuple.len() != k || k == 0 || !distinct_in_range(tuple, f.n()) {
        return false;
    }
    (0..f.len()).all(|j| f.max_in(j, tuple) != tuple[0])
}

fn validate_cycle(cycle: &[usize], c: &LocalColouringCollection) -> bool {
    let len = cycle.len();
    if len < 4 || !len.is_multiple_of(2) || !distinct_in_range(cycle, c.n()) {
        return false;
    }
    (0..len).all(|i| {
        let prev = cycle[(i + len - 1) % len];
        let cur = cycle[i];
        let next = cycle[(i + 1) % len];
        c.colour(cur, prev, cur) == c.colour(cur, cur, next)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gamma_injective;
    use crate::pattern::catalogue::*;

    #[test]
    fn injective_rows_are_local_for_everything() {
        let c = LocalColouringCollection::injective_rows(6);
        for h in [path(3), cycle(4), complete(4), triangle_edge(), star(4)] {
            assert!(verify_local(&c, &h).unwrap().holds(), "{h}");
        }
    }

    #[test]
    fn constant_collection_fails_p3_with_valid_certificate() {
        let c = LocalColouringCollection::constant(5);
        let h = path(3);
        let v = verify_local(&c, &h).unwrap();
        let cert = v.witness().unwrap().clone();
        assert_eq!(
            cert,
            Certificate::NonRainbowCopy {
                copy: vec![0, 1, 2, 3],
                witnesses: vec![(0, 1); 4]
            }
        );
        let subject = Subject::Local {
            colouring: &c,
            pattern: &h,
        };
        assert!(validate_certificate(&cert, subject).unwrap());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        // rows injective except row 0 which is constant
        let n = 5;
        let m = 10;
        let mut table: Vec<u32> = vec![0; m];
        for _ in 1..n {
            table.extend(0..m as u32);
        }
        let c = LocalColouringCollection::new(n, m, table).unwrap();
        let h = path(2);
        let honest = Certificate::NonRainbowCopy {
            copy: vec![0, 1, 2],
            witnesses: vec![(0, 1), (0, 1), (0, 1)],
        };
        let subject = Subject::Local {
            colouring: &c,
            pattern: &h,
        };
        // rows 1 and 2 are injective so the honest-looking claim is false
        assert!(!validate_certificate(&honest, subject).unwrap());

        let constant = LocalColouringCollection::constant(n);
        let subject = Subject::Local {
            colouring: &constant,
            pattern: &h,
        };
        let mut cert = verify_local(&constant, &h).unwrap().into_witness().unwrap();
        assert!(validate_certificate(&cert, subject).unwrap());
        if let Certificate::NonRainbowCopy { witnesses, .. } = &mut cert {
            witnesses[0] = (1, 1);
        }
        assert!(!validate_certificate(&cert, subject).unwrap());
    }

    #[test]
    fn verify_local_rejects_degenerate_patterns() {
        let c = LocalColouringCollection::constant(4);
        assert!(verify_local(&c, &single_edge()).is_err());
        assert!(verify_local(&c, &complete(5)).is_err());
    }

    #[test]
    fn pq_examples() {
        let g = gamma_injective(5, 3).unwrap();
        assert!(verify_pq(&g, 4, 4).unwrap().holds());
        let constant = HypergraphColouring::new(5, 3, 1, vec![0; 10]).unwrap();
        let v = verify_pq(&constant, 4, 2).unwrap();
        assert_eq!(
            v,
            Verdict::Fails(Certificate::PoorPSet {
                set: vec![0, 1, 2, 3],
                colours: 1
            })
        );
        let subject = Subject::Pq {
            colouring: &constant,
            p: 4,
            q: 2,
        };
        assert!(validate_certificate(v.witness().unwrap(), subject).unwrap());
        assert!(verify_pq(&g, 3, 1).is_err());
        assert!(verify_pq(&g, 4, 5).is_err());
        assert!(verify_pq(&g, 6, 1).is_err());
    }

    #[test]
    fn pq_is_monotone_in_q() {
        let values: Vec<u32> = (0..20).map(|i| (i * 7 % 5) as u32).collect();
        let g = HypergraphColouring::new(6, 3, 5, values).unwrap();
        let best = (1..=4).filter(|&q| verify_pq(&g, 4, q).unwrap().holds()).max();
        if let Some(best) = best {
            for q in 1..=best {
                assert!(verify_pq(&g, 4, q).unwrap().holds());
            }
        }
    }

    #[test]
    fn mismatched_subject_is_an_error() {
        let c = LocalColouringCollection::constant(4);
        let cert = Certificate::PoorPSet {
            set: vec![0, 1, 2, 3],
            colours: 1,
        };
        assert!(validate_certificate(&cert, Subject::Collection(&c)).is_err());
    }

    #[test]
    fn cycle_witness_validation() {
        let c = LocalColouringCollection::constant(6);
        let good = Certificate::CycleWitness {
            cycle: vec![0, 1, 2, 3],
        };
        assert!(validate_certificate(&good, Subject::Collection(&c)).unwrap());
        let repeated = Certificate::CycleWitness {
            cycle: vec![0, 1, 0, 3],
        };
        assert!(!validate_certificate(&repeated, Subject::Collection(&c)).unwrap());
        let inj = LocalColouringCollection::injective_rows(6);
        assert!(!validate_certificate(&good, Subject::Collection(&inj)).unwrap());
    }
}
