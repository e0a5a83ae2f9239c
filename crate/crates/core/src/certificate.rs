//! Checkable witnesses that a claimed property fails. Revalidation lives in
//! [`crate::verification::validate_certificate`].

/// A counterexample to one of the properties checked by this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A copy of the pattern (`copy[u]` is the host image of pattern vertex
    /// `u`) that is rainbow in no row of its own vertices. `witnesses[u]` is
    /// a pair of pattern edge indices whose images share a colour under
    /// `f_{copy[u]}`.
    NonRainbowCopy {
        copy: Vec<usize>,
        witnesses: Vec<(usize, usize)>,
    },
    /// A `p`-set (sorted) spanning only `colours` distinct colours.
    PoorPSet { set: Vec<usize>, colours: usize },
    /// A tuple of distinct elements whose first entry is the maximum of the
    /// tuple in none of the orders.
    ScramblingViolation { tuple: Vec<usize> },
    /// Host vertices `u_1 .. u_{2l}` such that for every `i`, row `u_i`
    /// colours the two cycle edges at `u_i` alike.
    CycleWitness { cycle: Vec<usize> },
}

impl Certificate {
    pub fn variant_name(&self) -> &'static str {
        match self {
            Certificate::NonRainbowCopy { .. } => "NonRainbowCopy",
            Certificate::PoorPSet { .. } => "PoorPSet",
            Certificate::ScramblingViolation { .. } => "ScramblingViolation",
            Certificate::CycleWitness { .. } => "CycleWitness",
        }
    }
}

/// Outcome of an exhaustive check: the property holds, or here is why not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W = Certificate> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}
