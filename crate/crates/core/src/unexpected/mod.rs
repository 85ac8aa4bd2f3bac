//! Existence, degrees and irreducibility of unexpected curves from `mdr`, and
//! a direct interpolation oracle for the same question.

mod oracle;

use serde::Serialize;

use crate::arrangement::{delete_line, dualize, Arrangement, PointSet};
use crate::error::Result;
use crate::syzygy::{mdr_arrangement, mdr_of, numeric_invariants_from, MdrOptions, SplittingType};

pub use oracle::{
    cross_validate, extract_curve, generic_points, h0_system, h0_translated, h0_vanishing, is_certified_generic,
    is_unexpected_direct, is_unexpected_direct_with, oracle_sweep, CrossValidation, FatPointSystem, OracleBudget,
    OracleOutcome, DEFAULT_SAMPLES,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnexpectedReport {
    pub d: u64,
    pub m: u64,
    pub mdr: u64,
    pub admits_unexpected: bool,
    /// Inclusive bounds `r + 1 ..= d - r - 2`, present when curves exist.
    pub degree_range: Option<(u64, u64)>,
    pub minimal_degree: Option<u64>,
    /// Irreducibility of the curve of minimal degree, present when curves exist.
    pub irreducible: Option<bool>,
    pub deletion_mdrs: Vec<u64>,
    pub splitting: SplittingType,
}

impl UnexpectedReport {
    /// Whether curves of degree `j` are unexpected.
    pub fn in_range(&self, j: u64) -> bool {
        self.degree_range.is_some_and(|(lo, hi)| lo <= j && j <= hi)
    }
}

/// Whether `m <= r + 1 < d / 2`.
pub fn admits(d: u64, m: u64, r: u64) -> bool {
    m <= r + 1 && 2 * (r + 1) < d
}

/// The verdict from `d`, `m`, `r` and the `mdr` of every single deletion.
pub fn verdict(d: u64, m: u64, r: u64, deletion_mdrs: Vec<u64>, splitting: SplittingType) -> UnexpectedReport {
    let yes = admits(d, m, r);
    UnexpectedReport {
        d,
        m,
        mdr: r,
        admits_unexpected: yes,
        degree_range: yes.then(|| (r + 1, d - r - 2)),
        minimal_degree: yes.then_some(r + 1),
        irreducible: yes.then(|| deletion_mdrs.iter().all(|&s| s == r)),
        deletion_mdrs,
        splitting,
    }
}

/// Verdict for the dual point set of `a`.
pub fn theorem_report_arrangement(a: &Arrangement) -> Result<UnexpectedReport> {
    let (r, _) = mdr_arrangement(a, MdrOptions::default())?;
    theorem_report_with_mdr(a, r)
}

/// As [`theorem_report_arrangement`] with `mdr(f)` already known.
pub fn theorem_report_with_mdr(a: &Arrangement, r: u32) -> Result<UnexpectedReport> {
    let lat = a.lattice()?;
    let d = a.len();
    let deletion_mdrs = if d >= 2 {
        (0..d)
            .map(|i| mdr_of(&delete_line(a, i)?).map(u64::from))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let inv = numeric_invariants_from(lat, r);
    Ok(verdict(
        d as u64,
        lat.max_multiplicity() as u64,
        r as u64,
        deletion_mdrs,
        inv.splitting,
    ))
}

pub fn theorem_report(z: &PointSet) -> Result<UnexpectedReport> {
    theorem_report_arrangement(&dualize(z))
}
