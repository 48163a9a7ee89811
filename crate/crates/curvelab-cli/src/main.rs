//! Batch front end to the curvelab library.
//!
//! Every subcommand reads its inputs from flags (values starting with `@`
//! are replaced by the named file's contents), runs one library operation,
//! and writes a line-oriented `key=value` report to standard output — or a
//! JSON document under `--json`. Exit codes: 0 on success, 1 on usage or
//! input-text parse errors, 2 on domain errors; domain errors still produce
//! a single machine-parsable `error=` line.

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use curvelab::curve::{parse_curve_point, slope_spectrum, CurveFamily, PlaneCurve};
use curvelab::correspond::{compose_curves, sum_curves, Correspondence, SumLaw};
use curvelab::divided::{dp_binomial, dp_embed, parse_dp};
use curvelab::error::{Error, Result};
use curvelab::fgl::{FormalGroupLaw, LawTag};
use curvelab::intersect::{
    distinct_count, mult_branch, mult_fulton, mult_ineq_check, tangency_scan, BranchMult,
};
use curvelab::ode::{binomial_series, charp_ratio_check, gm_rhs, picard_solve};
use curvelab::parse::{parse_field, parse_poly, parse_scalar};
use curvelab::poly::Poly;
use curvelab::series::{parse_series, BivarSeries};

#[derive(Parser)]
#[command(
    name = "curvelab",
    about = "Exact local computations on plane algebraic curves",
    disable_help_subcommand = true
)]
struct Cli {
    /// Emit a JSON document instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Truncated slope of a curve at an incident point.
    Slope {
        #[arg(long)]
        field: String,
        #[arg(long)]
        curve: String,
        /// Point as "x0,y0".
        #[arg(long)]
        point: String,
        #[arg(long)]
        order: usize,
    },
    /// Branch expansion of the y-offset along the x-offset at a point.
    Branch {
        #[arg(long)]
        field: String,
        #[arg(long)]
        curve: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        order: usize,
    },
    /// Composite correspondence of two curves via the shared middle coordinate.
    Compose {
        #[arg(long)]
        field: String,
        /// First curve, relating x to the middle coordinate.
        #[arg(long)]
        a: String,
        /// Second curve, relating the middle coordinate to the output.
        #[arg(long)]
        b: String,
    },
    /// Coordinate-wise sum of two curves under a group law.
    Sum {
        #[arg(long)]
        field: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// additive | multiplicative | multiplicative-centered
        #[arg(long)]
        law: String,
    },
    /// Solve y' = F(x, y), y(0) = 0, by Picard iteration; or check a
    /// characteristic-p solution pair with --y1/--y2.
    Ode {
        #[arg(long)]
        field: String,
        #[arg(long)]
        order: usize,
        /// Scalar parameter: solves the equation y' = a(1+y)/(1+x).
        #[arg(long)]
        a: Option<String>,
        /// Explicit polynomial right-hand side in x and y.
        #[arg(long)]
        rhs: Option<String>,
        /// First candidate solution series (requires --y2 and --a).
        #[arg(long)]
        y1: Option<String>,
        /// Second candidate solution series.
        #[arg(long)]
        y2: Option<String>,
    },
    /// Binomial series (1+x)^a - 1 in characteristic zero.
    Binomial {
        #[arg(long)]
        field: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        order: usize,
    },
    /// Divided-power series arithmetic: embed, binomial, derive, multiply.
    Dp {
        #[arg(long)]
        field: String,
        #[arg(long)]
        order: usize,
        /// Embed an ordinary polynomial via x^k -> k! x^[k].
        #[arg(long)]
        embed: Option<String>,
        /// Divided-power binomial element for a scalar (characteristic p).
        #[arg(long)]
        binomial: Option<String>,
        /// Derivation of a divided-power series.
        #[arg(long)]
        derive: Option<String>,
        /// Left factor of a product (requires --by).
        #[arg(long)]
        mul: Option<String>,
        /// Right factor of a product.
        #[arg(long)]
        by: Option<String>,
    },
    /// Intersection multiplicity of two curves at a point.
    Mult {
        #[arg(long)]
        field: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        point: String,
        /// fulton | branch
        #[arg(long, default_value = "fulton")]
        method: String,
        /// Expansion cap for the branch method.
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Distinct intersection points over the algebraic closure.
    Count {
        #[arg(long)]
        field: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        seed: u64,
    },
    /// Ultrametric inequality check on three pairwise multiplicities.
    Multineq {
        #[arg(long)]
        field: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        point: String,
    },
    /// Tangency scan over two curve families through a common point.
    Scan {
        /// Family document (field:/poly:/params: lines); use @path.
        #[arg(long)]
        family: String,
        #[arg(long)]
        family2: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Validate a formal group law and optionally print its inverse series.
    Fglcheck {
        /// additive | multiplicative | a law document (field:/order:/term:).
        #[arg(long)]
        law: String,
        /// Field for a built-in law.
        #[arg(long)]
        field: Option<String>,
        /// Truncation order for a built-in law.
        #[arg(long)]
        order: Option<usize>,
        /// Also compute the formal inverse series.
        #[arg(long)]
        inverse: bool,
    },
    /// Slope spectrum of a curve family at a point.
    Spectrum {
        #[arg(long)]
        family: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Slope { .. } => "slope",
        Cmd::Branch { .. } => "branch",
        Cmd::Compose { .. } => "compose",
        Cmd::Sum { .. } => "sum",
        Cmd::Ode { .. } => "ode",
        Cmd::Binomial { .. } => "binomial",
        Cmd::Dp { .. } => "dp",
        Cmd::Mult { .. } => "mult",
        Cmd::Count { .. } => "count",
        Cmd::Multineq { .. } => "multineq",
        Cmd::Scan { .. } => "scan",
        Cmd::Fglcheck { .. } => "fglcheck",
        Cmd::Spectrum { .. } => "spectrum",
    }
}

/// One finished report: flat key/value sections printed in insertion order,
/// or wrapped into the fixed JSON document shape.
struct Report {
    command: &'static str,
    field: String,
    inputs: Vec<(&'static str, Value)>,
    results: Vec<(&'static str, Value)>,
    diagnostics: Vec<(&'static str, Value)>,
}

impl Report {
    fn new(command: &'static str, field: String) -> Report {
        Report {
            command,
            field,
            inputs: Vec::new(),
            results: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    fn input(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.inputs.push((key, value.into()));
        self
    }

    fn result(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.results.push((key, value.into()));
        self
    }

    fn diagnostic(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.diagnostics.push((key, value.into()));
        self
    }

    fn print(&self, as_json: bool) {
        if as_json {
            let doc = json!({
                "command": self.command,
                "field": self.field,
                "inputs": to_map(&self.inputs),
                "result": to_map(&self.results),
                "diagnostics": to_map(&self.diagnostics),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        } else {
            println!("command={}", self.command);
            println!("field={}", self.field);
            for (key, value) in self.results.iter().chain(&self.diagnostics) {
                println!("{key}={}", flatten(value));
            }
        }
    }
}

fn to_map(pairs: &[(&'static str, Value)]) -> Value {
    let mut map = Map::new();
    for (key, value) in pairs {
        map.insert((*key).to_string(), value.clone());
    }
    Value::Object(map)
}

/// Render a report value on a single key=value line; arrays join with ';'.
fn flatten(value: &Value) -> String {
    match value {
        Value::Null => "none".to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(flatten).collect::<Vec<_>>().join(";"),
        Value::Object(_) => unreachable!("report values are flat"),
    }
}

/// Replace `@path` argument values (and `--flag=@path` forms) with the named
/// file's contents.
fn expand_argv() -> std::result::Result<Vec<String>, String> {
    std::env::args()
        .map(|arg| {
            if let Some(path) = arg.strip_prefix('@') {
                return std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {path}: {e}"));
            }
            if arg.starts_with("--") {
                if let Some((flag, path)) = arg.split_once("=@") {
                    let content = std::fs::read_to_string(path)
                        .map_err(|e| format!("cannot read {path}: {e}"))?;
                    return Ok(format!("{flag}={content}"));
                }
            }
            Ok(arg)
        })
        .collect()
}

fn main() -> ExitCode {
    let argv = match expand_argv() {
        Ok(argv) => argv,
        Err(message) => {
            println!("error={message}");
            return ExitCode::from(1);
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            report.print(cli.json);
            ExitCode::SUCCESS
        }
        Err(err) => {
            let code = match err {
                Error::Parse(_) => 1,
                _ => 2,
            };
            if cli.json {
                let doc = json!({
                    "command": command_name(&cli.command),
                    "error": err.to_string(),
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                println!("error={err}");
            }
            ExitCode::from(code)
        }
    }
}

fn run(cmd: &Cmd) -> Result<Report> {
    match cmd {
        Cmd::Slope {
            field,
            curve,
            point,
            order,
        } => {
            let fld = parse_field(field)?;
            let crv = PlaneCurve::parse(&fld, curve)?;
            let p = parse_curve_point(&fld, point)?;
            let tau = crv.slope(&p, *order)?;
            let mut report = Report::new("slope", fld.to_string());
            report
                .input("curve", curve.as_str())
                .input("point", point.as_str())
                .input("order", *order)
                .result("series", tau.display_with("e"))
                .result("automorphism", tau.is_automorphism());
            Ok(report)
        }
        Cmd::Branch {
            field,
            curve,
            point,
            order,
        } => {
            let fld = parse_field(field)?;
            let crv = PlaneCurve::parse(&fld, curve)?;
            let p = parse_curve_point(&fld, point)?;
            let expansion = crv.branch_expand(&p, *order)?;
            let mut report = Report::new("branch", fld.to_string());
            report
                .input("curve", curve.as_str())
                .input("point", point.as_str())
                .input("order", *order)
                .result("series", expansion.display_with("e"));
            Ok(report)
        }
        Cmd::Compose { field, a, b } => {
            let fld = parse_field(field)?;
            let first = PlaneCurve::parse(&fld, a)?;
            let second = PlaneCurve::parse(&fld, b)?;
            let corr = compose_curves(&first, &second)?;
            let mut report = Report::new("compose", fld.to_string());
            report.input("a", a.as_str()).input("b", b.as_str());
            correspondence_results(&mut report, &corr);
            Ok(report)
        }
        Cmd::Sum { field, a, b, law } => {
            let fld = parse_field(field)?;
            let first = PlaneCurve::parse(&fld, a)?;
            let second = PlaneCurve::parse(&fld, b)?;
            let chosen = match law.as_str() {
                "additive" => SumLaw::Additive,
                "multiplicative" => SumLaw::Multiplicative {
                    identity_centered: false,
                },
                "multiplicative-centered" => SumLaw::Multiplicative {
                    identity_centered: true,
                },
                other => {
                    return Err(Error::Parse(format!(
                        "unknown sum law {other:?}: expected additive, multiplicative, \
                         or multiplicative-centered"
                    )))
                }
            };
            let corr = sum_curves(&first, &second, chosen)?;
            let mut report = Report::new("sum", fld.to_string());
            report
                .input("a", a.as_str())
                .input("b", b.as_str())
                .input("law", law.as_str());
            report.result("law", law.as_str());
            correspondence_results(&mut report, &corr);
            Ok(report)
        }
        Cmd::Ode {
            field,
            order,
            a,
            rhs,
            y1,
            y2,
        } => run_ode(field, *order, a.as_deref(), rhs.as_deref(), y1.as_deref(), y2.as_deref()),
        Cmd::Binomial { field, a, order } => {
            let fld = parse_field(field)?;
            let scalar = parse_scalar(&fld, a)?;
            let series = binomial_series(&scalar, &fld, *order)?;
            let mut report = Report::new("binomial", fld.to_string());
            report
                .input("a", a.as_str())
                .input("order", *order)
                .result("series", series.display_with("x"));
            Ok(report)
        }
        Cmd::Dp {
            field,
            order,
            embed,
            binomial,
            derive,
            mul,
            by,
        } => run_dp(
            field,
            *order,
            embed.as_deref(),
            binomial.as_deref(),
            derive.as_deref(),
            mul.as_deref(),
            by.as_deref(),
        ),
        Cmd::Mult {
            field,
            a,
            b,
            point,
            method,
            cap,
        } => {
            let fld = parse_field(field)?;
            let first = PlaneCurve::parse(&fld, a)?;
            let second = PlaneCurve::parse(&fld, b)?;
            let p = parse_curve_point(&fld, point)?;
            let mut report = Report::new("mult", fld.to_string());
            report
                .input("a", a.as_str())
                .input("b", b.as_str())
                .input("point", point.as_str())
                .input("method", method.as_str());
            match method.as_str() {
                "fulton" => {
                    let m = mult_fulton(&first, &second, &p);
                    report.result("multiplicity", m.to_string());
                }
                "branch" => {
                    let m = mult_branch(&first, &second, &p, *cap)?;
                    let shown = match m {
                        BranchMult::Finite(v) => v.to_string(),
                        BranchMult::ExceedsCap => "exceeds-cap".to_string(),
                    };
                    report.result("multiplicity", shown);
                    report.diagnostic("cap", *cap);
                }
                other => {
                    return Err(Error::Parse(format!(
                        "unknown multiplicity method {other:?}: expected fulton or branch"
                    )))
                }
            }
            Ok(report)
        }
        Cmd::Count { field, a, b, seed } => {
            let fld = parse_field(field)?;
            let first = PlaneCurve::parse(&fld, a)?;
            let second = PlaneCurve::parse(&fld, b)?;
            let counted = distinct_count(&first, &second, *seed)?;
            let mut report = Report::new("count", fld.to_string());
            report
                .input("a", a.as_str())
                .input("b", b.as_str())
                .input("seed", *seed)
                .result("count", counted.count)
                .diagnostic("shears_tried", counted.shears_tried)
                .diagnostic("lifted", counted.lifted);
            Ok(report)
        }
        Cmd::Multineq {
            field,
            a,
            b,
            c,
            point,
        } => {
            let fld = parse_field(field)?;
            let ca = PlaneCurve::parse(&fld, a)?;
            let cb = PlaneCurve::parse(&fld, b)?;
            let cc = PlaneCurve::parse(&fld, c)?;
            let p = parse_curve_point(&fld, point)?;
            let checked = mult_ineq_check(&ca, &cb, &cc, &p)?;
            let mut report = Report::new("multineq", fld.to_string());
            report
                .input("a", a.as_str())
                .input("b", b.as_str())
                .input("c", c.as_str())
                .input("point", point.as_str())
                .result("m_ab", checked.m_ab)
                .result("m_ac", checked.m_ac)
                .result("m_bc", checked.m_bc)
                .result(
                    "rotations_pass",
                    Value::Array(checked.rotations_pass.iter().map(|&b| b.into()).collect()),
                )
                .result("pass", checked.pass);
            Ok(report)
        }
        Cmd::Scan {
            family,
            family2,
            point,
            order,
            samples,
            seed,
        } => {
            let (fld1, fam1) = CurveFamily::parse_file(family)?;
            let (fld2, fam2) = CurveFamily::parse_file(family2)?;
            if fld1 != fld2 {
                return Err(Error::FieldMismatch {
                    left: fld1.to_string(),
                    right: fld2.to_string(),
                });
            }
            let q = parse_curve_point(&fld1, point)?;
            let scan = tangency_scan(&fam1, &fam2, &q, *order, *samples, *seed)?;
            let mut report = Report::new("scan", fld1.to_string());
            report
                .input("family", family.as_str())
                .input("family2", family2.as_str())
                .input("point", point.as_str())
                .input("order", *order)
                .input("samples", *samples)
                .input("seed", *seed)
                .result("generic_count", scan.generic_count)
                .result("outlier_pairs", scan.outlier_pairs)
                .result("drop_pairs", scan.drop_pairs)
                .result("slope_equal_pairs", scan.slope_equal_pairs)
                .result(
                    "multiplicity_profile",
                    Value::Array(
                        scan.multiplicity_profile
                            .iter()
                            .map(|(m, n)| format!("{m}:{n}").into())
                            .collect(),
                    ),
                )
                .result(
                    "first_divergence_order",
                    scan.first_divergence_order.map_or(Value::Null, |k| k.into()),
                )
                .result(
                    "exceptions",
                    Value::Array(scan.exceptions.iter().map(|e| e.as_str().into()).collect()),
                )
                .diagnostic("pairs_evaluated", scan.pairs_evaluated)
                .diagnostic("identical_skipped", scan.identical_skipped)
                .diagnostic("degenerate_skipped", scan.degenerate_skipped);
            Ok(report)
        }
        Cmd::Fglcheck {
            law,
            field,
            order,
            inverse,
        } => run_fglcheck(law, field.as_deref(), *order, *inverse),
        Cmd::Spectrum {
            family,
            point,
            order,
            samples,
            seed,
        } => {
            let (fld, fam) = CurveFamily::parse_file(family)?;
            let q = parse_curve_point(&fld, point)?;
            let spec = slope_spectrum(&fam, &q, *order, *samples, *seed)?;
            let mut report = Report::new("spectrum", fld.to_string());
            report
                .input("family", family.as_str())
                .input("point", point.as_str())
                .input("order", *order)
                .input("samples", *samples)
                .input("seed", *seed)
                .result("distinct", spec.distinct)
                .result("tau1_constant", spec.tau1_constant)
                .result(
                    "obstruction_exponent",
                    spec.obstruction_exponent.map_or(Value::Null, |e| e.into()),
                )
                .result(
                    "slopes",
                    Value::Array(
                        spec.distinct_slopes
                            .iter()
                            .map(|s| s.display_with("e").into())
                            .collect(),
                    ),
                )
                .diagnostic("order", spec.order)
                .diagnostic("expanded", spec.expanded)
                .diagnostic("ramified_skipped", spec.ramified_skipped)
                .diagnostic("degenerate_skipped", spec.degenerate_skipped)
                .diagnostic("all_incident", spec.all_incident);
            Ok(report)
        }
    }
}

fn correspondence_results(report: &mut Report, corr: &Correspondence) {
    report
        .result("result", corr.poly.to_string())
        .result("out_var", corr.out_var)
        .result("kept_content", factor_list(&corr.kept_content))
        .result("stripped", factor_list(&corr.stripped));
}

fn factor_list(factors: &[(Poly, usize)]) -> Value {
    Value::Array(
        factors
            .iter()
            .map(|(factor, power)| {
                let text = factor.to_string();
                let shown = if *power == 1 {
                    text
                } else if factor.terms().count() == 1 {
                    format!("{text}^{power}")
                } else {
                    format!("({text})^{power}")
                };
                shown.into()
            })
            .collect(),
    )
}

fn run_ode(
    field: &str,
    order: usize,
    a: Option<&str>,
    rhs: Option<&str>,
    y1: Option<&str>,
    y2: Option<&str>,
) -> Result<Report> {
    let fld = parse_field(field)?;
    let mut report = Report::new("ode", fld.to_string());
    report.input("order", order);
    match (y1, y2) {
        (Some(t1), Some(t2)) => {
            let Some(a_text) = a else {
                return Err(Error::Parse(
                    "--y1/--y2 solution checking requires --a".to_string(),
                ));
            };
            let scalar = parse_scalar(&fld, a_text)?;
            let s1 = parse_series(&fld, t1, order)?;
            let s2 = parse_series(&fld, t2, order)?;
            let ratio = charp_ratio_check(&s1, &s2, &scalar)?;
            report
                .input("a", a_text)
                .input("y1", t1)
                .input("y2", t2)
                .result("ratio", ratio.ratio.display_with("x"))
                .result("support_in_p_multiples", ratio.support_in_p_multiples)
                .result("nonconstant", ratio.nonconstant);
            Ok(report)
        }
        (None, None) => {
            let table = match (a, rhs) {
                (Some(a_text), None) => {
                    let scalar = parse_scalar(&fld, a_text)?;
                    report.input("a", a_text);
                    gm_rhs(&scalar, &fld, order)
                }
                (None, Some(rhs_text)) => {
                    let poly = parse_poly(&fld, rhs_text)?;
                    report.input("rhs", rhs_text);
                    BivarSeries::from_poly(&poly, "x", "y", order)?
                }
                _ => {
                    return Err(Error::Parse(
                        "ode needs exactly one of --a or --rhs (or a --y1/--y2 pair)"
                            .to_string(),
                    ))
                }
            };
            let solution = picard_solve(&table)?;
            report.result("series", solution.display_with("x"));
            Ok(report)
        }
        _ => Err(Error::Parse(
            "--y1 and --y2 must be given together".to_string(),
        )),
    }
}

fn run_dp(
    field: &str,
    order: usize,
    embed: Option<&str>,
    binomial: Option<&str>,
    derive: Option<&str>,
    mul: Option<&str>,
    by: Option<&str>,
) -> Result<Report> {
    let fld = parse_field(field)?;
    let mut report = Report::new("dp", fld.to_string());
    report.input("order", order);
    let mode_count = [embed.is_some(), binomial.is_some(), derive.is_some(), mul.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if mode_count != 1 {
        return Err(Error::Parse(
            "dp needs exactly one of --embed, --binomial, --derive, --mul".to_string(),
        ));
    }
    if let Some(text) = embed {
        let poly = parse_poly(&fld, text)?;
        let series = dp_embed(&poly, order)?;
        report.input("embed", text).result("series", series.to_string());
        return Ok(report);
    }
    if let Some(text) = binomial {
        let scalar = parse_scalar(&fld, text)?;
        let series = dp_binomial(&scalar, &fld, order)?;
        report
            .input("binomial", text)
            .result("series", series.to_string())
            .result("in_image", series.in_embed_image());
        return Ok(report);
    }
    if let Some(text) = derive {
        let series = parse_dp(&fld, text, order)?;
        report
            .input("derive", text)
            .result("series", series.derive().to_string());
        return Ok(report);
    }
    let left_text = mul.expect("mode checked");
    let Some(right_text) = by else {
        return Err(Error::Parse("--mul requires --by".to_string()));
    };
    let left = parse_dp(&fld, left_text, order)?;
    let right = parse_dp(&fld, right_text, order)?;
    let product = left.mul(&right)?;
    report
        .input("mul", left_text)
        .input("by", right_text)
        .result("series", product.to_string());
    Ok(report)
}

fn run_fglcheck(
    law: &str,
    field: Option<&str>,
    order: Option<usize>,
    inverse: bool,
) -> Result<Report> {
    let (fld, group_law) = match law.trim() {
        "additive" | "multiplicative" => {
            let (Some(field_text), Some(n)) = (field, order) else {
                return Err(Error::Parse(
                    "built-in laws need --field and --order".to_string(),
                ));
            };
            let fld = parse_field(field_text)?;
            let built = if law.trim() == "additive" {
                FormalGroupLaw::additive(&fld, n)
            } else {
                FormalGroupLaw::multiplicative(&fld, n)
            };
            (fld, built)
        }
        document => {
            let (fld, parsed) = FormalGroupLaw::parse_file(document)?;
            (fld, parsed)
        }
    };
    let tag = match group_law.tag() {
        LawTag::Additive => "additive",
        LawTag::Multiplicative => "multiplicative",
        LawTag::Custom => "custom",
    };
    let checked = group_law.validate();
    let mut report = Report::new("fglcheck", fld.to_string());
    report
        .input("law", tag)
        .input("order", group_law.order())
        .result("tag", tag)
        .result("valid", checked.valid)
        .result("unit_x", checked.unit_x_ok)
        .result("unit_y", checked.unit_y_ok)
        .result("assoc", checked.assoc_ok)
        .result(
            "assoc_mismatch",
            checked.assoc_mismatch.map_or(Value::Null, |(i, j, k)| {
                Value::String(format!("{i},{j},{k}"))
            }),
        );
    if inverse {
        let iota = group_law.inverse()?;
        report.result("inverse", iota.display_with("e"));
    }
    Ok(report)
}
