//! Acceptance gate for the command-line front end: a fixed corpus of
//! invocations with pinned seeds must produce byte-identical reports across
//! two runs, match the committed golden files, and exit with the expected
//! codes.
//!
//! Regenerate the golden files after an intentional report change with:
//! `CURVELAB_REGEN_GOLDEN=1 cargo test -p curvelab-cli --test acceptance`.

use std::path::PathBuf;
use std::process::{Command, Output};

struct Case {
    name: &'static str,
    args: Vec<String>,
    exit: i32,
}

fn fixture(name: &str) -> String {
    format!("@{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn case(name: &'static str, exit: i32, args: &[&str]) -> Case {
    Case {
        name,
        args: args.iter().map(|s| s.to_string()).collect(),
        exit,
    }
}

fn corpus() -> Vec<Case> {
    let quad = fixture("quadratic_family.txt");
    let charp = fixture("charp_family.txt");
    let law = fixture("custom_law.txt");
    vec![
        case(
            "slope_parabola",
            0,
            &["slope", "--field", "Q", "--curve", "y - x^2", "--point", "0,0", "--order", "3"],
        ),
        case(
            "slope_parabola_json",
            0,
            &["slope", "--field", "Q", "--curve", "y - x^2", "--point", "0,0", "--order", "3", "--json"],
        ),
        case(
            "branch_circle",
            0,
            &["branch", "--field", "Q", "--curve", "x^2 + y^2 - 1", "--point", "0,1", "--order", "6"],
        ),
        case(
            "compose_graphs",
            0,
            &["compose", "--field", "Q", "--a", "y - x^2", "--b", "y - x^3"],
        ),
        case(
            "sum_additive_kept_factor",
            0,
            &["sum", "--field", "Q", "--a", "y^2 - x", "--b", "y^2 - x", "--law", "additive"],
        ),
        case(
            "sum_additive_stripped_factor",
            0,
            &["sum", "--field", "Q", "--a", "x*y - 1", "--b", "x*y - 1", "--law", "additive"],
        ),
        case(
            "sum_multiplicative_lines",
            0,
            &["sum", "--field", "Q", "--a", "y - 2*x", "--b", "y - 3*x", "--law", "multiplicative"],
        ),
        case("ode_parameter_half", 0, &["ode", "--field", "Q", "--a", "1/2", "--order", "3"]),
        case(
            "ode_explicit_rhs",
            0,
            &["ode", "--field", "Q", "--rhs", "1 + y", "--order", "5"],
        ),
        case(
            "ode_charp_solution_pair",
            0,
            &[
                "ode", "--field", "Fp:5", "--order", "20", "--a", "2",
                "--y1", "2*x + x^2",
                "--y2", "2*x + x^2 + x^5 + 2*x^6 + x^7",
            ],
        ),
        case("binomial_half", 0, &["binomial", "--field", "Q", "--a", "1/2", "--order", "3"]),
        case(
            "dp_embed_cubic",
            0,
            &["dp", "--field", "Q", "--order", "4", "--embed", "1 + x + x^3"],
        ),
        case(
            "dp_binomial_charp",
            0,
            &["dp", "--field", "Fp:3", "--order", "6", "--binomial", "5"],
        ),
        case(
            "dp_product_char2",
            0,
            &["dp", "--field", "Fp:2", "--order", "3", "--mul", "x[1]", "--by", "x[1]"],
        ),
        case(
            "mult_tangent_parabola",
            0,
            &["mult", "--field", "Q", "--a", "y", "--b", "y - x^2", "--point", "0,0"],
        ),
        case(
            "mult_branch_method",
            0,
            &[
                "mult", "--field", "Q", "--a", "y - x^2", "--b", "y - x^3",
                "--point", "0,0", "--method", "branch", "--cap", "8",
            ],
        ),
        case(
            "mult_shared_component",
            0,
            &[
                "mult", "--field", "Q", "--a", "y - x", "--b", "(y - x)*(y + x)",
                "--point", "0,0",
            ],
        ),
        case(
            "count_parabola_line",
            0,
            &["count", "--field", "Q", "--a", "y - x^2", "--b", "y - 1", "--seed", "5"],
        ),
        case(
            "count_lifts_from_f2",
            0,
            &["count", "--field", "Fp:2", "--a", "y - x^2", "--b", "y", "--seed", "7"],
        ),
        case(
            "multineq_contact_orders",
            0,
            &[
                "multineq", "--field", "Q", "--a", "y - x", "--b", "y - x - x^2",
                "--c", "y - x - x^3", "--point", "0,0",
            ],
        ),
        case(
            "scan_quadratic_pencil",
            0,
            &[
                "scan", "--family", &quad, "--family2", &quad,
                "--point", "0,0", "--order", "1", "--samples", "40", "--seed", "17",
            ],
        ),
        case(
            "scan_quadratic_pencil_json",
            0,
            &[
                "scan", "--family", &quad, "--family2", &quad,
                "--point", "0,0", "--order", "1", "--samples", "40", "--seed", "17", "--json",
            ],
        ),
        case(
            "fglcheck_multiplicative_inverse",
            0,
            &["fglcheck", "--law", "multiplicative", "--field", "Q", "--order", "3", "--inverse"],
        ),
        case("fglcheck_broken_associativity", 0, &["fglcheck", "--law", &law]),
        case(
            "spectrum_charp_collapse",
            0,
            &[
                "spectrum", "--family", &charp, "--point", "0,0",
                "--order", "1", "--samples", "12", "--seed", "5",
            ],
        ),
        case(
            "error_ramified_projection",
            2,
            &["slope", "--field", "Q", "--curve", "y^2 - x", "--point", "0,0", "--order", "3"],
        ),
        case(
            "error_ramified_projection_json",
            2,
            &["slope", "--field", "Q", "--curve", "y^2 - x", "--point", "0,0", "--order", "3", "--json"],
        ),
        case(
            "error_malformed_polynomial",
            1,
            &["slope", "--field", "Q", "--curve", "y ++ x", "--point", "0,0", "--order", "3"],
        ),
    ]
}

fn run_once(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvelab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"))
}

#[test]
fn a12_cli_reports_are_deterministic_and_match_golden_files() {
    let regen = std::env::var_os("CURVELAB_REGEN_GOLDEN").is_some();
    let mut failures: Vec<String> = Vec::new();
    let cases = corpus();
    for case in &cases {
        let first = run_once(&case.args);
        let second = run_once(&case.args);
        if first.stdout != second.stdout {
            failures.push(format!("{}: two runs differ", case.name));
            continue;
        }
        if first.status.code() != Some(case.exit) {
            failures.push(format!(
                "{}: exit {:?}, expected {}",
                case.name,
                first.status.code(),
                case.exit
            ));
            continue;
        }
        let path = golden_path(case.name);
        if regen {
            std::fs::write(&path, &first.stdout).expect("golden file written");
            continue;
        }
        let expected = match std::fs::read(&path) {
            Ok(bytes) => bytes,
            Err(e) => {
                failures.push(format!("{}: missing golden file ({e})", case.name));
                continue;
            }
        };
        if first.stdout != expected {
            failures.push(format!(
                "{}: report drifted from golden file\n--- expected\n{}\n--- got\n{}",
                case.name,
                String::from_utf8_lossy(&expected),
                String::from_utf8_lossy(&first.stdout)
            ));
        }
    }
    if regen {
        println!("regenerated {} golden files", cases.len());
        return;
    }
    if failures.is_empty() {
        println!(
            "pass: {} CLI invocations are byte-identical across runs, match \
             their golden files, and exit with the expected codes",
            cases.len()
        );
    } else {
        println!("FAIL: CLI determinism — {}", failures.join("; "));
        panic!("CLI golden corpus failed:\n{}", failures.join("\n"));
    }
}
