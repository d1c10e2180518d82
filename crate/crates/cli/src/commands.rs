use std::fmt::Write as _;
use std::sync::Arc;

use bimono::clt::{convergence_report, CovarianceSpec};
use bimono::fock::{moment, Grid, IntervalOp, OpKind};
use bimono::numbers::{
    format_complex, format_rational, parse_rational, rational_to_f64, Complex64, ExactComplex,
    Rational,
};
use bimono::partitions::{
    bimonotone_pair_partitions, count_bimonotone_all, count_bimonotone_pp,
    count_irreducible_bimonotone_pp, CountTable, PartitionError, Pattern, MAX_PAIRS,
};
use bimono::products::{PointedRep, ProductError, ProductRep, Word};
use bimono::spectrum::quadrature;
use serde_json::json;

use crate::word::{auto_grid, parse_word, to_ops};
use crate::{
    BackendArg, Cli, CliError, CltArgs, Command, CountArgs, FieldArg, Format, SpectrumArgs,
};

pub const COUNT_CAP: usize = 6;
pub const WORD_CAP: usize = 12;
pub const CLT_N_CAP: usize = 64;
const PATTERN_CAP: usize = 24;

type Outcome = Result<(String, bool), CliError>;

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Count(args) => count(cli, args),
        Command::Enumerate { pattern } => enumerate(cli, pattern),
        Command::Moment { word, grid } => fock_moment(cli, word, grid.as_deref()),
        Command::ProductMoment {
            reps,
            word,
            backend,
        } => product_moment(cli, reps, word, *backend),
        Command::Clt(args) => clt(cli, args),
        Command::Spectrum(args) => spectrum(cli, args),
        Command::Verify { thorough } => crate::verify::run(cli.format, *thorough),
    }
}

fn ok(text: String) -> Outcome {
    Ok((text, true))
}

fn cap_check(cli: &Cli, what: &str, value: usize, cap: usize) -> Result<(), CliError> {
    if value > cap && !cli.cap_override {
        return Err(CliError::new(
            "cap_exceeded",
            format!("{what} = {value} exceeds the default cap of {cap}; pass --cap-override to run anyway"),
        ));
    }
    Ok(())
}

fn parse_pattern(text: &str) -> Result<Pattern, CliError> {
    text.parse::<Pattern>().map_err(|e| {
        let mut err = CliError::new("parse", e.to_string());
        if let PartitionError::InvalidPattern { position, .. } = e {
            err.position = Some(position);
        }
        err
    })
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("json")
}

fn count(cli: &Cli, args: &CountArgs) -> Outcome {
    if let Some(n) = args.n {
        cap_check(cli, "n", n, COUNT_CAP)?;
        if n > MAX_PAIRS {
            return Err(CliError::new(
                "unsupported",
                format!("n is limited to {MAX_PAIRS}"),
            ));
        }
        if args.table {
            let table = CountTable::for_pairs(n);
            let total = table.total();
            return ok(match cli.format {
                Format::Json => {
                    pretty(&json!({ "n": n, "total": total.to_string(), "patterns": table }))
                }
                Format::Csv => {
                    let mut out = String::from("pattern,count\n");
                    for (p, c) in &table.entries {
                        writeln!(out, "{p},{c}").unwrap();
                    }
                    out
                }
                Format::Text => {
                    let mut out = String::new();
                    for (p, c) in &table.entries {
                        writeln!(out, "{p} {c}").unwrap();
                    }
                    writeln!(out, "total {total}").unwrap();
                    out
                }
            });
        }
        let total = count_bimonotone_all(n);
        return ok(match cli.format {
            Format::Json => pretty(&json!({ "n": n, "total": total.to_string() })),
            Format::Csv => format!("n,total\n{n},{total}\n"),
            Format::Text => format!("{total}\n"),
        });
    }
    let pattern = parse_pattern(args.pattern.as_deref().unwrap_or(""))?;
    cap_check(cli, "pattern length", pattern.len(), PATTERN_CAP)?;
    if pattern.len() > 2 * MAX_PAIRS {
        return Err(CliError::new(
            "unsupported",
            format!("patterns are limited to {} points", 2 * MAX_PAIRS),
        ));
    }
    let count = if args.irreducible {
        count_irreducible_bimonotone_pp(&pattern)
    } else {
        count_bimonotone_pp(&pattern)
    };
    ok(match cli.format {
        Format::Json => pretty(&json!({
            "pattern": pattern.to_string(),
            "irreducible": args.irreducible,
            "count": count.to_string(),
        })),
        Format::Csv => format!("pattern,count\n{pattern},{count}\n"),
        Format::Text => format!("{count}\n"),
    })
}

fn enumerate(cli: &Cli, pattern: &str) -> Outcome {
    let pattern = parse_pattern(pattern)?;
    cap_check(cli, "pattern length", pattern.len(), WORD_CAP)?;
    if pattern.len() > 2 * MAX_PAIRS {
        return Err(CliError::new(
            "unsupported",
            format!("patterns are limited to {} points", 2 * MAX_PAIRS),
        ));
    }
    let partitions = bimonotone_pair_partitions(&pattern);
    let describe = |p: &bimono::partitions::OrderedTwoFacedPartition| {
        p.partition
            .ordered_blocks()
            .map(|b| {
                format!(
                    "{{{}}}",
                    b.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect::<Vec<_>>()
            .join(" < ")
    };
    ok(match cli.format {
        Format::Json => pretty(&json!({
            "pattern": pattern.to_string(),
            "count": partitions.len(),
            "partitions": partitions,
        })),
        Format::Csv => {
            let mut out = String::from("index,ordered_blocks\n");
            for (i, p) in partitions.iter().enumerate() {
                writeln!(out, "{i},{}", describe(p)).unwrap();
            }
            out
        }
        Format::Text => partitions.iter().map(|p| describe(p) + "\n").collect(),
    })
}

fn parse_grid(text: &str) -> Result<Grid, CliError> {
    let points: Vec<Rational> = text
        .split(',')
        .map(parse_rational)
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::new("parse", e.to_string()))?;
    Grid::new(points).map_err(|e| CliError::new("parse", e.to_string()))
}

fn fock_moment(cli: &Cli, text: &str, grid: Option<&str>) -> Outcome {
    let tokens = parse_word(text).map_err(|e| CliError {
        kind: "parse",
        message: e.reason.clone(),
        position: Some(e.position),
    })?;
    cap_check(cli, "word length", tokens.len(), WORD_CAP)?;
    let grid = match grid {
        Some(g) => parse_grid(g)?,
        None => auto_grid(&tokens).map_err(|e| CliError::new("parse", e.to_string()))?,
    };
    let ops = to_ops(&tokens, &grid).map_err(|e| CliError::new("grid", e.to_string()))?;
    let value = moment(&Arc::new(grid.clone()), &ops)
        .map_err(|e| CliError::new("computation", e.to_string()))?;
    let decimal = rational_to_f64(&value);
    ok(match cli.format {
        Format::Json => pretty(&json!({
            "word": text,
            "grid": grid,
            "length": ops.len(),
            "value": format_rational(&value),
            "decimal": decimal,
        })),
        Format::Csv => format!(
            "word,value,decimal\n\"{text}\",{},{decimal}\n",
            format_rational(&value)
        ),
        Format::Text => format!("{}\n", format_rational(&value)),
    })
}

fn product_error(e: ProductError) -> CliError {
    match e {
        ProductError::WordSyntax { position, reason } => CliError {
            kind: "parse",
            message: reason,
            position: Some(position),
        },
        other => CliError::new("computation", other.to_string()),
    }
}

fn product_moment(
    cli: &Cli,
    paths: &[std::path::PathBuf],
    text: &str,
    backend: BackendArg,
) -> Outcome {
    let mut reps = Vec::new();
    for path in paths {
        let data = std::fs::read_to_string(path)
            .map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))?;
        reps.push(
            PointedRep::from_json(&data)
                .map_err(|e| CliError::new("parse", format!("{}: {e}", path.display())))?,
        );
    }
    let word: Word = text.parse().map_err(product_error)?;
    let product = ProductRep::new(reps);
    let (value, re, im) = match backend {
        BackendArg::Exact => {
            let v: ExactComplex = product.moment(&word).map_err(product_error)?;
            (
                format_complex(&v),
                rational_to_f64(&v.re),
                rational_to_f64(&v.im),
            )
        }
        BackendArg::Float => {
            let v: Complex64 = product.moment(&word).map_err(product_error)?;
            (v.to_string(), v.re, v.im)
        }
    };
    ok(match cli.format {
        Format::Json => pretty(&json!({
            "word": word.to_string(),
            "backend": if backend == BackendArg::Exact { "exact" } else { "float" },
            "value": value,
            "re": re,
            "im": im,
        })),
        Format::Csv => format!("word,value,re,im\n\"{word}\",{value},{re},{im}\n"),
        Format::Text => format!("{value}\n"),
    })
}

fn clt(cli: &Cli, args: &CltArgs) -> Outcome {
    let pattern = parse_pattern(&args.pattern)?;
    cap_check(cli, "pattern length", pattern.len(), WORD_CAP)?;
    if let Some(&max) = args.ns.iter().max() {
        cap_check(cli, "N", max, CLT_N_CAP)?;
    }
    let cov: CovarianceSpec = args
        .cov
        .parse()
        .map_err(|e: bimono::clt::CltError| CliError::new("parse", e.to_string()))?;
    let report = convergence_report(&pattern, &args.ns, &cov, args.backend.into())
        .map_err(|e| CliError::new("computation", e.to_string()))?;
    ok(match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("json"),
        Format::Csv => report.to_csv(),
        Format::Text => {
            let mut out = format!(
                "pattern {}  limit {}\n",
                report.pattern,
                format_rational(&report.limit)
            );
            for row in &report.rows {
                writeln!(
                    out,
                    "N={:<4} value={}  error={}",
                    row.n, row.value, row.error
                )
                .unwrap();
            }
            out
        }
    })
}

fn field_moments(field: FieldArg, count: usize) -> Result<Vec<Rational>, CliError> {
    let kind = match field {
        FieldArg::L => OpKind::LeftField,
        FieldArg::R => OpKind::RightField,
        FieldArg::B => OpKind::Field,
    };
    let grid = Arc::new(Grid::unit(1));
    (0..count)
        .map(|k| moment(&grid, &vec![IntervalOp::new(kind, 1, 1); k]))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::new("computation", e.to_string()))
}

fn spectrum(cli: &Cli, args: &SpectrumArgs) -> Outcome {
    if args.max_moment % 2 == 1 {
        return Err(CliError::new("usage", "--max-moment must be even"));
    }
    let nodes = args.nodes.unwrap_or(args.max_moment / 2 + 1);
    let needed = 2 * nodes;
    let moments: Vec<Rational> = match &args.moments {
        Some(list) => list
            .iter()
            .map(|m| parse_rational(m))
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::new("parse", e.to_string()))?,
        None => {
            cap_check(cli, "moment order", needed - 1, WORD_CAP)?;
            field_moments(args.field, needed)?
        }
    };
    let quad =
        quadrature(&moments, nodes).map_err(|e| CliError::new("computation", e.to_string()))?;
    for w in &quad.warnings {
        eprintln!("warning: {w}");
    }
    let checked = &moments[..moments.len().min(args.max_moment + 1)];
    let error = quad.max_relative_error(checked);
    ok(match cli.format {
        Format::Json => pretty(&json!({
            "field": if args.moments.is_some() { "explicit".to_string() } else { format!("{:?}", args.field).to_lowercase() },
            "moments": moments.iter().map(format_rational).collect::<Vec<_>>(),
            "requested_nodes": nodes,
            "nodes": quad.nodes,
            "weights": quad.weights,
            "max_relative_error": error,
            "warnings": quad.warnings,
        })),
        Format::Csv => {
            let mut out = String::from("node,weight\n");
            for (x, w) in quad.nodes.iter().zip(&quad.weights) {
                writeln!(out, "{x},{w}").unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (x, w) in quad.nodes.iter().zip(&quad.weights) {
                writeln!(out, "{x:>24.16e} {w:>24.16e}").unwrap();
            }
            writeln!(out, "max relative moment error {error:e}").unwrap();
            out
        }
    })
}
