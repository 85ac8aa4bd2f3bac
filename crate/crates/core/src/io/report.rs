//! The analysis report and its JSON and table renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::parse::InputDocument;
use crate::arrangement::{dualize_inv, is_supersolvable, Arrangement};
use crate::error::Result;
use crate::syzygy::{
    mdr_arrangement, numeric_invariants_from, supersolvable_numeric_from, van_lower_bound, MdrOptions, SplittingType,
};
use crate::unexpected::{oracle_sweep, theorem_report_with_mdr, CrossValidation, OracleBudget, UnexpectedReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub kind: String,
    pub label: String,
    pub d: u64,
    pub conductor: u32,
    /// Lines of the arrangement as printed scalars.
    pub lines: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSummary {
    pub d: u64,
    /// Counts `n_k` keyed by multiplicity `k`.
    pub n_k: BTreeMap<String, u64>,
    pub m: u64,
    pub min_arnold_exponent: String,
    pub modular_points: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygySummary {
    pub mdr: u64,
    pub witness_degree: u64,
    pub witness_digest: String,
    pub tau: u64,
    pub dpw_bound: i64,
    pub dpw_bound_strong: Option<i64>,
    pub is_free: bool,
    pub exponents: Option<(u64, u64)>,
    pub betti: Option<[u64; 3]>,
    pub splitting: SplittingType,
    pub mdr_lower_bound: String,
    pub supersolvable: bool,
    /// `mdr = min(m - 1, d - m)`; only defined for free arrangements.
    pub supersolvable_numeric: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub input: InputEcho,
    pub lattice: LatticeSummary,
    pub syzygy: SyzygySummary,
    pub unexpected: UnexpectedReport,
    pub oracle: Option<CrossValidation>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReportOptions {
    pub oracle: bool,
    pub seed: u64,
    pub budget: OracleBudget,
}

/// Computes every invariant of the arrangement and its dual point set.
pub fn build_report(a: &Arrangement, kind: &str, opts: &ReportOptions) -> Result<ReportDocument> {
    let lat = a.lattice()?;
    let (r, witness) = mdr_arrangement(a, MdrOptions::default())?;
    let inv = numeric_invariants_from(lat, r);
    let unexpected = theorem_report_with_mdr(a, r)?;
    let mut warnings = Vec::new();

    let lines = a
        .lines()
        .iter()
        .map(|l| l.coeffs().clone().map(|s| s.to_string()))
        .collect();
    let input = InputEcho {
        kind: kind.to_string(),
        label: a.label().to_string(),
        d: a.len() as u64,
        conductor: a.conductor(),
        lines,
    };
    let lattice = LatticeSummary {
        d: lat.d() as u64,
        n_k: lat
            .multiplicity_profile()
            .into_iter()
            .map(|(k, n)| (k.to_string(), n as u64))
            .collect(),
        m: inv.m,
        min_arnold_exponent: lat
            .min_arnold_exponent()
            .map(|q| q.to_string())
            .unwrap_or_else(|| "none".into()),
        modular_points: lat.modular_indices().len() as u64,
    };
    if !inv.splitting.determined {
        warnings.push(format!(
            "splitting type undetermined: only a <= {} is known",
            inv.splitting.a_upper_bound
        ));
    }
    if inv.d == 11 && inv.m == 4 && !inv.is_free {
        warnings.push("d = 11, m = 4 and not free: possible values of mdr here are not classified".into());
    }
    let syzygy = SyzygySummary {
        mdr: inv.mdr,
        witness_degree: witness.degree() as u64,
        witness_digest: witness.digest(),
        tau: inv.tau,
        dpw_bound: inv.dpw_bound,
        dpw_bound_strong: inv.dpw_bound_strong,
        is_free: inv.is_free,
        exponents: inv.exponents,
        betti: inv.betti,
        splitting: inv.splitting.clone(),
        mdr_lower_bound: van_lower_bound(a)?.to_string(),
        supersolvable: is_supersolvable(a)?,
        supersolvable_numeric: supersolvable_numeric_from(&inv).ok(),
    };
    let oracle = if opts.oracle {
        let z = dualize_inv(a);
        if z.len() > opts.budget.max_points {
            warnings.push(format!(
                "oracle skipped: {} points exceed the budget of {}",
                z.len(),
                opts.budget.max_points
            ));
            None
        } else {
            let cv = oracle_sweep(
                &z,
                &unexpected,
                opts.seed,
                &opts.budget,
                z.len().saturating_sub(2) as u32,
            )?;
            if !cv.skipped_degrees.is_empty() {
                warnings.push(format!("oracle skipped degrees {:?} (budget)", cv.skipped_degrees));
            }
            if let Some(j) = cv.first_disagreement {
                warnings.push(format!("oracle disagrees with the mdr criterion in degree {j}"));
            }
            Some(cv)
        }
    } else {
        None
    };
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        input,
        lattice,
        syzygy,
        unexpected,
        oracle,
        warnings,
    })
}

pub fn build_report_for(doc: &InputDocument, opts: &ReportOptions) -> Result<ReportDocument> {
    build_report(&doc.arrangement()?, doc.kind.as_str(), opts)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_else(|| "-".into())
}

fn pair(v: &Option<(u64, u64)>) -> String {
    v.map(|(a, b)| format!("({a}, {b})")).unwrap_or_else(|| "-".into())
}

fn render_table(rep: &ReportDocument) -> String {
    let mut rows: Vec<(String, String)> = Vec::new();
    let mut push = |k: &str, v: String| rows.push((k.to_string(), v));
    push("schema_version", rep.schema_version.to_string());
    push("label", rep.input.label.clone());
    push("input", rep.input.kind.clone());
    push("d", rep.input.d.to_string());
    push("conductor", rep.input.conductor.to_string());
    let nk: Vec<String> = rep.lattice.n_k.iter().map(|(k, n)| format!("n{k}={n}")).collect();
    push("multiplicities", nk.join(" "));
    push("m", rep.lattice.m.to_string());
    push("min_arnold_exponent", rep.lattice.min_arnold_exponent.clone());
    push("modular_points", rep.lattice.modular_points.to_string());
    let s = &rep.syzygy;
    push("mdr", s.mdr.to_string());
    push("witness_digest", s.witness_digest.clone());
    push("tau", s.tau.to_string());
    push("dpw_bound", s.dpw_bound.to_string());
    push("dpw_bound_strong", opt(&s.dpw_bound_strong));
    push("free", s.is_free.to_string());
    push("exponents", pair(&s.exponents));
    push("betti", opt(&s.betti.map(|b| format!("{b:?}"))));
    push(
        "splitting",
        if s.splitting.determined {
            pair(&s.splitting.a.zip(s.splitting.b))
        } else {
            format!("undetermined, a <= {}", s.splitting.a_upper_bound)
        },
    );
    push("mdr_lower_bound", s.mdr_lower_bound.clone());
    push("supersolvable", s.supersolvable.to_string());
    push("supersolvable_numeric", opt(&s.supersolvable_numeric));
    let u = &rep.unexpected;
    push("admits_unexpected", u.admits_unexpected.to_string());
    push(
        "degree_range",
        u.degree_range
            .map(|(a, b)| format!("{a}..{b}"))
            .unwrap_or_else(|| "empty".into()),
    );
    push("minimal_degree", opt(&u.minimal_degree));
    push("irreducible", opt(&u.irreducible));
    push("deletion_mdrs", format!("{:?}", u.deletion_mdrs));
    if let Some(o) = &rep.oracle {
        push("oracle_agrees", o.agree.to_string());
        let degs: Vec<String> = o
            .outcomes
            .iter()
            .filter(|x| x.unexpected)
            .map(|x| x.degree.to_string())
            .collect();
        push("oracle_unexpected_degrees", degs.join(" "));
    }
    for w in &rep.warnings {
        push("warning", w.clone());
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

/// Deterministic rendering of a report.
pub fn emit_report(rep: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rep).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Table => render_table(rep),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{catalog_build, CatalogParams};

    fn report(name: &str) -> ReportDocument {
        let a = catalog_build(name, &CatalogParams::new()).unwrap();
        build_report(&a, "catalog", &ReportOptions::default()).unwrap()
    }

    #[test]
    fn b3_json_fields() {
        let s = emit_report(&report("B3"), Format::Json);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["syzygy"]["mdr"], 3);
        assert_eq!(v["syzygy"]["tau"], 49);
        assert_eq!(v["unexpected"]["admits_unexpected"], true);
        assert_eq!(v["unexpected"]["minimal_degree"], 4);
        assert_eq!(v["unexpected"]["irreducible"], true);
        assert_eq!(v["lattice"]["n_k"]["4"], 3);
    }

    #[test]
    fn hessian_table() {
        let t = emit_report(&report("hessian"), Format::Table);
        assert!(t.lines().any(|l| l.starts_with("exponents") && l.ends_with("(4, 7)")));
        assert!(t.lines().any(|l| l.starts_with("degree_range") && l.ends_with("5..6")));
    }
}
