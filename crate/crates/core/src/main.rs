use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use unexpected_core::arrangement::{
    add_generic_line, add_generic_line_through, catalog_build, catalog_names, dualize_inv, CatalogParams,
};
use unexpected_core::io::{
    build_report_for, emit_report, parse_catalog_spec, parse_document, Format, InputDocument, ReportOptions,
    SCHEMA_VERSION,
};
use unexpected_core::syzygy::{mdr_arrangement, MdrOptions};
use unexpected_core::unexpected::{
    extract_curve, generic_points, oracle_sweep, theorem_report_arrangement, OracleBudget,
};
use unexpected_core::{Error, Result};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

/// Line arrangements, Jacobian relations and unexpected curves.
#[derive(Parser, Debug)]
#[command(name = "unexpected", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: OutputFormat,
    /// Seed for random base points and added lines.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Largest coefficient space C(j+2,2) the oracle may use.
    #[arg(long, default_value_t = 55, global = true)]
    oracle_budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report for a file, `-` (stdin) or a catalog spec such as `fermat:m=5`.
    Analyze {
        input: String,
        /// Also run the interpolation oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Minimal degree of a Jacobian relation with a witness.
    Mdr { input: String },
    /// Existence, degrees and irreducibility of unexpected curves.
    Unexpected { input: String },
    /// Equation of the unexpected curve at a random base point.
    Curve {
        input: String,
        /// Defaults to the minimal degree.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Interpolation oracle in degrees 2..=max-degree.
    Oracle {
        input: String,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Named arrangements.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Add a line: generic, or generic through a point of maximal multiplicity.
    Extend {
        input: String,
        #[arg(long, conflicts_with = "on_max_line", required_unless_present = "on_max_line")]
        generic: bool,
        #[arg(long)]
        on_max_line: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show {
        name: String,
        /// Parameters as key=value.
        params: Vec<String>,
    },
}

fn load(input: &str) -> Result<InputDocument> {
    if input == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return parse_document(&text);
    }
    if Path::new(input).is_file() {
        return parse_document(&std::fs::read_to_string(input)?);
    }
    let (name, params) = parse_catalog_spec(input)?;
    InputDocument::catalog(&name, params)
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn render(format: OutputFormat, value: &Value, rows: &[(&str, String)]) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("value serializes");
            s.push('\n');
            s
        }
        OutputFormat::Table => table(rows),
    }
}

fn lines_value(doc: &InputDocument) -> Value {
    let lines: Vec<Vec<String>> = doc
        .entries
        .iter()
        .map(|t| t.iter().map(|s| s.to_string()).collect())
        .collect();
    json!({ "schema_version": SCHEMA_VERSION, "label": doc.label, "d": doc.entries.len(), "lines": lines })
}

fn run(cli: &Cli) -> Result<String> {
    let budget = OracleBudget {
        max_coeff_space: cli.oracle_budget,
        ..OracleBudget::default()
    };
    match &cli.command {
        Command::Analyze { input, oracle } => {
            let doc = load(input)?;
            let opts = ReportOptions {
                oracle: *oracle,
                seed: cli.seed,
                budget,
            };
            let rep = build_report_for(&doc, &opts)?;
            let format = match cli.format {
                OutputFormat::Json => Format::Json,
                OutputFormat::Table => Format::Table,
            };
            Ok(emit_report(&rep, format))
        }
        Command::Mdr { input } => {
            let a = load(input)?.arrangement()?;
            let (r, w) = mdr_arrangement(&a, MdrOptions::default())?;
            let [p, q, s] = w.components().clone().map(|c| c.to_string());
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "label": a.label(),
                "mdr": r,
                "witness": { "degree": w.degree(), "a": p, "b": q, "c": s, "digest": w.digest() },
            });
            let rows = [
                ("label", a.label().to_string()),
                ("mdr", r.to_string()),
                ("a", p.clone()),
                ("b", q.clone()),
                ("c", s.clone()),
                ("digest", w.digest()),
            ];
            Ok(render(cli.format, &v, &rows))
        }
        Command::Unexpected { input } => {
            let a = load(input)?.arrangement()?;
            let rep = theorem_report_arrangement(&a)?;
            let v = serde_json::to_value(&rep).expect("report serializes");
            let rows = [
                ("label", a.label().to_string()),
                ("d", rep.d.to_string()),
                ("m", rep.m.to_string()),
                ("mdr", rep.mdr.to_string()),
                ("admits_unexpected", rep.admits_unexpected.to_string()),
                (
                    "degree_range",
                    rep.degree_range
                        .map(|(a, b)| format!("{a}..{b}"))
                        .unwrap_or_else(|| "empty".into()),
                ),
                (
                    "minimal_degree",
                    rep.minimal_degree.map(|j| j.to_string()).unwrap_or("-".into()),
                ),
                (
                    "irreducible",
                    rep.irreducible.map(|b| b.to_string()).unwrap_or("-".into()),
                ),
                ("deletion_mdrs", format!("{:?}", rep.deletion_mdrs)),
            ];
            Ok(render(cli.format, &v, &rows))
        }
        Command::Curve { input, degree } => {
            let a = load(input)?.arrangement()?;
            let z = dualize_inv(&a);
            let j = match degree {
                Some(j) => *j,
                None => match theorem_report_arrangement(&a)?.minimal_degree {
                    Some(j) => j as u32,
                    None => {
                        return Err(Error::InvalidArgument(
                            "no unexpected curves; pass --degree explicitly".into(),
                        ))
                    }
                },
            };
            let q = generic_points(&z, 1, cli.seed)?.remove(0);
            let c = extract_curve(&z, j, &q)?;
            let base: Vec<String> = q.coords().iter().map(|s| s.to_string()).collect();
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "label": a.label(),
                "degree": j,
                "base_point": base,
                "equation": c.to_string(),
            });
            let rows = [
                ("label", a.label().to_string()),
                ("degree", j.to_string()),
                ("base_point", q.to_string()),
                ("equation", c.to_string()),
            ];
            Ok(render(cli.format, &v, &rows))
        }
        Command::Oracle { input, max_degree } => {
            let a = load(input)?.arrangement()?;
            let z = dualize_inv(&a);
            let rep = theorem_report_arrangement(&a)?;
            let top = max_degree.unwrap_or(z.len().saturating_sub(2) as u32);
            let cv = oracle_sweep(&z, &rep, cli.seed, &budget, top)?;
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "label": a.label(),
                "degree_range": rep.degree_range,
                "oracle": cv,
            });
            let mut rows = vec![("label", a.label().to_string()), ("agree", cv.agree.to_string())];
            for o in &cv.outcomes {
                rows.push((
                    "degree",
                    format!(
                        "{}  h0={} expected={} unexpected={} theorem={}",
                        o.degree,
                        o.generic_h0,
                        o.expected,
                        o.unexpected,
                        rep.in_range(o.degree)
                    ),
                ));
            }
            if !cv.skipped_degrees.is_empty() {
                rows.push(("skipped", format!("{:?}", cv.skipped_degrees)));
            }
            Ok(render(cli.format, &v, &rows))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let names = catalog_names();
                let v = json!(names
                    .iter()
                    .map(|c| json!({ "name": c.name, "params": c.params, "description": c.description }))
                    .collect::<Vec<_>>());
                let rows: Vec<(&str, String)> = names
                    .iter()
                    .map(|c| (c.name, format!("{:<20} {}", c.params, c.description)))
                    .collect();
                Ok(render(cli.format, &v, &rows))
            }
            CatalogAction::Show { name, params } => {
                let mut p = CatalogParams::new();
                for kv in params {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got `{kv}`")))?;
                    p.insert(k.to_string(), v.to_string());
                }
                let a = catalog_build(name, &p)?;
                let doc = InputDocument::from_arrangement(&a);
                Ok(match cli.format {
                    OutputFormat::Json => render(cli.format, &lines_value(&doc), &[]),
                    OutputFormat::Table => doc.to_text(),
                })
            }
        },
        Command::Extend { input, on_max_line, .. } => {
            let a = load(input)?.arrangement()?;
            let b = if *on_max_line {
                let p = a
                    .lattice()?
                    .max_point()
                    .map(|p| p.point.clone())
                    .ok_or_else(|| Error::InvalidArgument("arrangement has no intersection point".into()))?;
                add_generic_line_through(&a, &p, cli.seed)?
            } else {
                add_generic_line(&a, cli.seed)?
            };
            let doc = InputDocument::from_arrangement(&b);
            Ok(match cli.format {
                OutputFormat::Json => render(cli.format, &lines_value(&doc), &[]),
                OutputFormat::Table => doc.to_text(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
