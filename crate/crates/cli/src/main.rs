//! Command-line front end for the wreathkit toolkit. Every subcommand
//! prints deterministic JSON (or a plain table) so runs are reproducible
//! byte for byte.
//!
//! Exit codes: 0 on success, 1 when a computation succeeds but a
//! mathematical check fails (verify mismatch, unstable inner products,
//! non-integral decomposition), 2 on usage errors.

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wreathkit::applications::{
    fr_character, gauss_series, stability_report, verify_h_decomposition, AppError,
};
use wreathkit::charpoly::from_induced;
use wreathkit::coinvariants::{coinvariant_character, group_cap, ideal_subspace, MultiDegree};
use wreathkit::combinat::{MultiPartition, Partition};
use wreathkit::exactnum::{bigint_json, Cyclotomic, Integer};
use wreathkit::orlik_solomon::{equivariant_character, monomial_arrangement, poincare_polynomial};
use wreathkit::wreathchar::{
    character_table, classes, decompose, decomposition_json, ind_fig_character, irr_character,
    ClassFunction,
};

#[derive(Parser)]
#[command(
    name = "wreathkit",
    about = "Exact character theory of (Z/d) wr S_n, arrangement cohomology, and coinvariants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the conjugacy classes (labeled cycle types) of W_n
    Classes {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Irreducible characters: the full table, or one lambda
    Irrchar {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[arg(long)]
        n: u32,
        /// A d-multipartition as a JSON array of partitions, e.g. "[[2,1],[1]]"
        #[arg(long)]
        lambda: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Character of Ind^FI_G(L(lambda)) at level n
    Indchar {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Character polynomial of Ind^FI_G(L(lambda))
    Charpoly {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Monomial arrangement data: Poincare polynomial and optionally the
    /// equivariant character of one degree
    Os {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Decompose a class function into irreducibles
    Decompose {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[arg(long)]
        n: u32,
        /// Decompose H^k of the monomial arrangement
        #[arg(long, conflicts_with = "input")]
        os_degree: Option<usize>,
        /// Read a class-function JSON file (as printed by indchar/os)
        #[arg(long)]
        input: Option<std::path::PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Multigraded coinvariant algebra pieces: dimension, character,
    /// decomposition
    Coinv {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value = "1", value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        /// One multidegree as comma-separated integers, e.g. "2,1"
        #[arg(long, conflicts_with = "max_total")]
        multidegree: Option<String>,
        /// Sweep all multidegrees with total at most this value
        #[arg(long)]
        max_total: Option<u32>,
        /// Group-order cap for Reynolds averaging (env WREATHKIT_GROUP_CAP)
        #[arg(long)]
        cap: Option<u64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Gauss-sum series coefficients a_i at q, nontrivial character chi
    Gauss {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        q: u32,
        #[arg(long, default_value = "1")]
        chi: u32,
        #[arg(long, default_value = "2")]
        imax: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fouxe-Rabinovitch cohomology character for G = Z (d = 2)
    Fr {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(long, default_value = "1")]
        degree: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Multiplicity stability report for a family of characters
    Stability {
        /// Family: h1, h2 (arrangement cohomology) or fr (degree-1 FR)
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "2", value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        /// Range of n, e.g. "2..6"
        #[arg(long)]
        n: String,
        /// Stability bound to compare against (default 4i)
        #[arg(long)]
        bound: Option<u32>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verify the displayed H^k decompositions against computed characters
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        /// Range of n, e.g. "2..4" (or a single n)
        #[arg(long)]
        n: String,
        #[arg(long, default_value = "1")]
        degree: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Math(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Io(e)) => {
            eprintln!("io error: {e}");
            ExitCode::from(2)
        }
    }
}

enum CliError {
    Usage(String),
    Math(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<AppError> for CliError {
    fn from(e: AppError) -> Self {
        CliError::Math(e.to_string())
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), CliError> {
    if let Some((a, b)) = s.split_once("..") {
        let lo: u32 = a
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad range '{s}'")))?;
        let hi: u32 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| CliError::Usage(format!("bad range '{s}'")))?;
        if hi < lo {
            return Err(CliError::Usage(format!("empty range '{s}'")));
        }
        Ok((lo, hi))
    } else {
        let v: u32 = s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad n '{s}'")))?;
        Ok((v, v))
    }
}

fn parse_lambda(d: u32, s: &str) -> Result<MultiPartition, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(s).map_err(|e| CliError::Usage(format!("lambda must be JSON: {e}")))?;
    let arrays = value
        .as_array()
        .ok_or_else(|| CliError::Usage("lambda must be an array of partitions".into()))?;
    if arrays.len() != d as usize {
        return Err(CliError::Usage(format!(
            "lambda must have {d} slots, found {}",
            arrays.len()
        )));
    }
    let mut parts = Vec::new();
    for a in arrays {
        let nums = a
            .as_array()
            .ok_or_else(|| CliError::Usage("each slot must be an array".into()))?;
        let mut p = Vec::new();
        for x in nums {
            let v = x
                .as_u64()
                .ok_or_else(|| CliError::Usage("parts must be positive integers".into()))?;
            p.push(v as u32);
        }
        if !p.windows(2).all(|w| w[0] >= w[1]) || p.iter().any(|&x| x == 0) {
            return Err(CliError::Usage(format!("not a partition: {a}")));
        }
        parts.push(Partition::new(p));
    }
    Ok(MultiPartition::new(d, parts))
}

fn parse_class_function(path: &std::path::Path) -> Result<ClassFunction, CliError> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad class function JSON: {e}")))?;
    let d = value["d"]
        .as_u64()
        .ok_or_else(|| CliError::Usage("missing d".into()))? as u32;
    let n = value["n"]
        .as_u64()
        .ok_or_else(|| CliError::Usage("missing n".into()))? as u32;
    let rows = value["values"]
        .as_array()
        .ok_or_else(|| CliError::Usage("missing values".into()))?;
    let list = classes(d, n);
    if rows.len() != list.len() {
        return Err(CliError::Usage(format!(
            "expected {} class values, found {}",
            list.len(),
            rows.len()
        )));
    }
    let mut values = Vec::with_capacity(rows.len());
    for row in rows {
        values.push(parse_cyclotomic(&row["value"])?);
    }
    Ok(ClassFunction::from_values(d, n, values))
}

fn parse_cyclotomic(value: &serde_json::Value) -> Result<Cyclotomic, CliError> {
    let d = value["d"]
        .as_u64()
        .ok_or_else(|| CliError::Usage("cyclotomic missing d".into()))? as u32;
    let coeffs = value["coeffs"]
        .as_array()
        .ok_or_else(|| CliError::Usage("cyclotomic missing coeffs".into()))?;
    let mut poly = Vec::with_capacity(coeffs.len());
    for pair in coeffs {
        let arr = pair
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| CliError::Usage("coeff must be [num, den]".into()))?;
        let num = big_from_json(&arr[0])?;
        let den = big_from_json(&arr[1])?;
        poly.push(wreathkit::exactnum::Rational::new(num, den));
    }
    Ok(Cyclotomic::from_poly(d, &poly))
}

fn big_from_json(v: &serde_json::Value) -> Result<Integer, CliError> {
    match v {
        serde_json::Value::Number(n) => Integer::from_str(&n.to_string())
            .map_err(|_| CliError::Usage(format!("bad integer {n}"))),
        _ => Err(CliError::Usage("expected an integer".into())),
    }
}

fn emit(out: &OutputArgs, json: serde_json::Value, table: String) -> Result<(), CliError> {
    let body = match out.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&json).unwrap()),
        Format::Table => table,
    };
    match &out.output {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(body.as_bytes())?;
        }
        None => {
            print!("{body}");
        }
    }
    Ok(())
}

fn class_function_table(f: &ClassFunction) -> String {
    let list = classes(f.d(), f.n());
    let mut s = String::new();
    for (t, v) in list.iter().zip(f.values().iter()) {
        s.push_str(&format!("{t}\t{v}\n"));
    }
    s
}

fn decomposition_table(dec: &std::collections::BTreeMap<MultiPartition, u64>) -> String {
    let mut s = String::new();
    for (lam, m) in dec {
        s.push_str(&format!("{lam}\t{m}\n"));
    }
    s
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Classes { d, n, out } => {
            let list = classes(d, n);
            let rows: Vec<serde_json::Value> = list
                .iter()
                .map(|t| {
                    serde_json::json!({
                        "class": t.to_json(),
                        "centralizer": bigint_json(&t.centralizer_order()),
                        "size": bigint_json(&t.class_size()),
                    })
                })
                .collect();
            let json = serde_json::json!({"d": d, "n": n, "classes": rows});
            let mut table = String::new();
            for t in list.iter() {
                table.push_str(&format!("{t}\tsize {}\n", t.class_size()));
            }
            emit(&out, json, table)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Irrchar { d, n, lambda, out } => {
            let rows: Vec<(MultiPartition, ClassFunction)> = match lambda {
                Some(s) => {
                    let lam = parse_lambda(d, &s)?;
                    if lam.norm() != n {
                        return Err(CliError::Usage(format!(
                            "lambda has norm {}, expected {n}",
                            lam.norm()
                        )));
                    }
                    let chi =
                        irr_character(d, n, &lam).map_err(|e| CliError::Math(e.to_string()))?;
                    vec![(lam, chi)]
                }
                None => character_table(d, n).as_ref().clone(),
            };
            let json_rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(lam, chi)| {
                    serde_json::json!({"lambda": lam.to_json(), "character": chi.to_json()})
                })
                .collect();
            let json = serde_json::json!({"d": d, "n": n, "irreducibles": json_rows});
            let mut table = String::new();
            for (lam, chi) in &rows {
                table.push_str(&format!("{lam}:\n{}", class_function_table(chi)));
            }
            emit(&out, json, table)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Indchar { d, lambda, n, out } => {
            let lam = parse_lambda(d, &lambda)?;
            let v =
                irr_character(d, lam.norm(), &lam).map_err(|e| CliError::Math(e.to_string()))?;
            let ind = ind_fig_character(&v, n).map_err(|e| CliError::Usage(e.to_string()))?;
            let json = serde_json::json!({
                "d": d, "n": n, "lambda": lam.to_json(), "character": ind.to_json()
            });
            emit(&out, json, class_function_table(&ind))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Charpoly { d, lambda, out } => {
            let lam = parse_lambda(d, &lambda)?;
            let v =
                irr_character(d, lam.norm(), &lam).map_err(|e| CliError::Math(e.to_string()))?;
            let p = from_induced(&v);
            let json = serde_json::json!({
                "d": d, "lambda": lam.to_json(), "polynomial": p.to_json()
            });
            emit(&out, json, format!("{p}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Os { d, n, degree, out } => {
            let arr = monomial_arrangement(d, n);
            let poincare = poincare_polynomial(&arr);
            let mut json = serde_json::json!({
                "d": d, "n": n,
                "hyperplanes": arr.len(),
                "rank": arr.rank(),
                "poincare": poincare.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            let mut table = format!(
                "hyperplanes {}\nrank {}\npoincare {:?}\n",
                arr.len(),
                arr.rank(),
                poincare.iter().map(|c| c.to_string()).collect::<Vec<_>>()
            );
            if let Some(k) = degree {
                let chi =
                    equivariant_character(d, n, k).map_err(|e| CliError::Math(e.to_string()))?;
                json["character"] = chi.to_json();
                table.push_str(&class_function_table(&chi));
            }
            emit(&out, json, table)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose {
            d,
            n,
            os_degree,
            input,
            out,
        } => {
            let f = match (os_degree, input) {
                (Some(k), None) => {
                    equivariant_character(d, n, k).map_err(|e| CliError::Math(e.to_string()))?
                }
                (None, Some(path)) => parse_class_function(&path)?,
                _ => {
                    return Err(CliError::Usage(
                        "provide exactly one of --os-degree or --input".into(),
                    ))
                }
            };
            if f.d() != d || f.n() != n {
                return Err(CliError::Usage(format!(
                    "class function is on (d={}, n={}), not (d={d}, n={n})",
                    f.d(),
                    f.n()
                )));
            }
            let dec = decompose(&f).map_err(|e| CliError::Math(e.to_string()))?;
            let json = serde_json::json!({
                "d": d, "n": n, "decomposition": decomposition_json(&dec)
            });
            emit(&out, json, decomposition_table(&dec))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Coinv {
            d,
            n,
            r,
            multidegree,
            max_total,
            cap,
            out,
        } => {
            let cap = cap.unwrap_or_else(group_cap);
            let degrees: Vec<MultiDegree> = match (multidegree, max_total) {
                (Some(s), None) => {
                    let js: Result<Vec<u32>, _> =
                        s.split(',').map(|x| x.trim().parse::<u32>()).collect();
                    let js = js.map_err(|_| CliError::Usage(format!("bad multidegree '{s}'")))?;
                    if js.len() != r as usize {
                        return Err(CliError::Usage(format!(
                            "multidegree must have r={r} components"
                        )));
                    }
                    vec![MultiDegree::new(js)]
                }
                (None, Some(total)) => {
                    let top = MultiDegree::new(vec![total; r as usize]);
                    top.below()
                        .into_iter()
                        .filter(|j| j.total() <= total)
                        .collect()
                }
                _ => {
                    return Err(CliError::Usage(
                        "provide exactly one of --multidegree or --max-total".into(),
                    ))
                }
            };
            let mut rows = Vec::new();
            let mut table = String::new();
            for j in &degrees {
                let ideal =
                    ideal_subspace(d, n, j, cap).map_err(|e| CliError::Math(e.to_string()))?;
                let dim = ideal.monomials.len() - ideal.dim();
                let chi = coinvariant_character(d, n, j, cap)
                    .map_err(|e| CliError::Math(e.to_string()))?;
                let dec = decompose(&chi).map_err(|e| CliError::Math(e.to_string()))?;
                table.push_str(&format!("J={j}\tdim {dim}\n"));
                table.push_str(&decomposition_table(&dec));
                rows.push(serde_json::json!({
                    "multidegree": j.components(),
                    "dimension": dim,
                    "character": chi.to_json(),
                    "decomposition": decomposition_json(&dec),
                }));
            }
            let json = serde_json::json!({"d": d, "n": n, "r": r, "pieces": rows});
            emit(&out, json, table)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gauss { q, chi, imax, out } => {
            if chi % (q - 1) == 0 {
                return Err(CliError::Usage("chi must be nontrivial mod q-1".into()));
            }
            let report = gauss_series(q, chi, imax).map_err(CliError::from)?;
            let mut table = String::new();
            for t in &report.terms {
                table.push_str(&format!("a_{} = {}\n", t.i, t.coeff));
            }
            table.push_str(&format!(
                "matches 1/(2q) + 2/q^2: {}\n",
                report.matches_reference
            ));
            emit(&out, report.to_json(), table)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fr { n, degree, out } => {
            let f = fr_character(n, degree).map_err(CliError::from)?;
            let dec = decompose(&f).map_err(|e| CliError::Math(e.to_string()))?;
            let json = serde_json::json!({
                "n": n,
                "degree": degree,
                "model_dependent": degree >= 2,
                "character": f.to_json(),
                "decomposition": decomposition_json(&dec),
            });
            let mut table = class_function_table(&f);
            table.push_str(&decomposition_table(&dec));
            emit(&out, json, table)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Stability {
            family,
            d,
            n,
            bound,
            out,
        } => {
            let (lo, hi) = parse_range(&n)?;
            let (name, i, fam): (
                &str,
                u32,
                Box<dyn Fn(u32) -> Result<ClassFunction, AppError>>,
            ) = match family.as_str() {
                "h1" => (
                    "H^1 of the monomial arrangement",
                    1,
                    Box::new(move |n| Ok(equivariant_character(d, n, 1)?)),
                ),
                "h2" => (
                    "H^2 of the monomial arrangement",
                    2,
                    Box::new(move |n| Ok(equivariant_character(d, n, 2)?)),
                ),
                "fr" => (
                    "degree-1 Fouxe-Rabinovitch cohomology",
                    1,
                    Box::new(|n| fr_character(n, 1)),
                ),
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown family '{other}' (expected h1, h2, fr)"
                    )))
                }
            };
            let bound = bound.unwrap_or(4 * i);
            let report =
                stability_report(name, fam.as_ref(), i, lo, hi, bound).map_err(CliError::from)?;
            let mut table = String::new();
            for row in &report.table {
                table.push_str(&format!(
                    "n={}\n{}",
                    row.n,
                    decomposition_table(&row.decomposition)
                ));
            }
            table.push_str(&format!(
                "stabilized_at {:?} bound {} pass {}\n",
                report.stabilized_at, report.bound, report.pass
            ));
            emit(&out, report.to_json(), table)?;
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Verify { d, n, degree, out } => {
            let (lo, hi) = parse_range(&n)?;
            let mut reports = Vec::new();
            let mut all_pass = true;
            let mut table = String::new();
            for n in lo..=hi {
                let report = verify_h_decomposition(d, n, degree).map_err(CliError::from)?;
                all_pass &= report.pass;
                table.push_str(&format!(
                    "n={} H^{}: {} (dim {} vs {})\n",
                    n,
                    degree,
                    if report.pass { "ok" } else { "MISMATCH" },
                    report.computed_dimension,
                    report.expected_dimension
                ));
                reports.push(report.to_json());
            }
            let json = serde_json::json!({
                "d": d, "degree": degree, "pass": all_pass, "reports": reports
            });
            emit(&out, json, table)?;
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
