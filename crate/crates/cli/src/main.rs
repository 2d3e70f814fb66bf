//! `cmlab`: Gröbner bases, Krull dimensions and the commuting-scheme
//! verification suite from the command line.
//!
//! Exit codes: 0 success/pass, 1 usage or parse error, 2 budget exceeded,
//! 3 check failed.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cmlab_core::groebner::Budget;
use cmlab_core::idealops::krull_dimension;
use cmlab_core::lab::{
    self, check_jacobian_rank, dimension_report, family_check, map_27, map_28, map_44,
    psi_membership_check, regular_report, run_suite, verify_hom, Family, RegularCase, SchemeSpec,
    Status, SuiteConfig, Tag, VerificationReport,
};
use cmlab_core::{CoefficientField, Error, MonomialOrder};

mod ideal_file;
use ideal_file::{materialize, parse_field_flag, parse_ideal_file};

#[derive(Parser)]
#[command(
    name = "cmlab",
    version,
    about = "Exact Gröbner engine and commuting-scheme verification lab"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Grevlex,
}

impl OrderArg {
    fn to_order(self) -> MonomialOrder {
        match self {
            OrderArg::Lex => MonomialOrder::Lex,
            OrderArg::Grevlex => MonomialOrder::GrevLex,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the reduced Gröbner basis of an ideal file, one generator per
    /// line, sorted by leading monomial descending.
    Gb {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "grevlex")]
        order: OrderArg,
        /// Coefficient field `q` or `fp:<p>` (overrides the file header).
        #[arg(long)]
        field: Option<String>,
        /// Time budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Print the Krull dimension of the quotient by an ideal file.
    Dim {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "grevlex")]
        order: OrderArg,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Run a single named check and print one JSON report.
    Verify {
        /// One of: dimension, jacobian, psi-membership, hom, family,
        /// regular-point.
        #[arg(long)]
        check: String,
        /// Map identifier for `hom`: 2.7, 2.8 or 4.4.
        #[arg(long)]
        lemma: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        m1: Option<usize>,
        #[arg(long)]
        m2: Option<usize>,
        /// Ring family for `dimension`: R, Rt, R1, Rp or R2.
        #[arg(long)]
        family: Option<String>,
        /// Comma-separated specialization tags: t0, t1, w, det.
        #[arg(long)]
        tags: Option<String>,
        /// Family kind for `family`: L54, L55, L56 or L59.
        #[arg(long)]
        kind: Option<String>,
        /// Case for `regular-point`: distinct-diag, zero-pair or jordan.
        #[arg(long)]
        case: Option<String>,
        /// Sample count for `psi-membership`.
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value = "fp:32003")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Time budget in seconds per Gröbner computation.
        #[arg(long, default_value_t = 120.0)]
        budget: f64,
        /// Test support: corrupt the check's inputs so it must fail.
        #[arg(long, hide = true, default_value_t = false)]
        corrupt: bool,
    },
    /// Run the whole verification suite and write a JSON report array.
    Suite {
        #[arg(long = "max-n", default_value_t = 2)]
        max_n: usize,
        #[arg(long = "max-m", default_value_t = 2)]
        max_m: usize,
        #[arg(long, default_value = "fp:32003")]
        field: String,
        /// Time budget in seconds per check.
        #[arg(long, default_value_t = 120.0)]
        budget: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample count per parametrization triple.
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value = "suite_report.json")]
        out: PathBuf,
    },
}

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_FAIL: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Gb {
            file,
            order,
            field,
            budget,
        } => cmd_gb(&file, order.to_order(), field.as_deref(), budget),
        Cmd::Dim {
            file,
            order,
            field,
            budget,
        } => cmd_dim(&file, order.to_order(), field.as_deref(), budget),
        Cmd::Verify {
            check,
            lemma,
            n,
            m,
            m1,
            m2,
            family,
            tags,
            kind,
            case,
            samples,
            field,
            seed,
            budget,
            corrupt,
        } => cmd_verify(VerifyArgs {
            check,
            lemma,
            n,
            m,
            m1,
            m2,
            family,
            tags,
            kind,
            case,
            samples,
            field,
            seed,
            budget,
            corrupt,
        }),
        Cmd::Suite {
            max_n,
            max_m,
            field,
            budget,
            seed,
            samples,
            out,
        } => cmd_suite(max_n, max_m, &field, budget, seed, samples, &out),
    };
    ExitCode::from(code)
}

fn usage_error(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn load_presentation(
    path: &PathBuf,
    field_flag: Option<&str>,
) -> Result<cmlab_core::IdealPresentation, u8> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage_error(format!("{}: {e}", path.display())))?;
    let file = parse_ideal_file(&text)
        .map_err(|e| usage_error(format!("{}:{e}", path.display())))?;
    let field = match field_flag {
        Some(f) => parse_field_flag(f).map_err(usage_error)?,
        None => file.declared_field.unwrap_or(CoefficientField::Rationals),
    };
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "ideal".to_string());
    materialize(&file, field, &label)
        .map_err(|e| usage_error(format!("{}:{e}", path.display())))
}

fn make_budget(secs: Option<f64>) -> Budget {
    match secs {
        Some(s) => Budget::from_secs_f64(s),
        None => Budget::unlimited(),
    }
}

fn cmd_gb(path: &PathBuf, order: MonomialOrder, field: Option<&str>, budget: Option<f64>) -> u8 {
    let ideal = match load_presentation(path, field) {
        Ok(i) => i,
        Err(code) => return code,
    };
    match ideal.groebner(&order, &make_budget(budget)) {
        Ok(gb) => {
            for g in gb.gens() {
                println!("{}", g.render(&order));
            }
            EXIT_OK
        }
        Err(Error::BudgetExceeded) => {
            eprintln!("error: budget exceeded");
            EXIT_BUDGET
        }
        Err(e) => usage_error(e),
    }
}

fn cmd_dim(path: &PathBuf, order: MonomialOrder, field: Option<&str>, budget: Option<f64>) -> u8 {
    let ideal = match load_presentation(path, field) {
        Ok(i) => i,
        Err(code) => return code,
    };
    match krull_dimension(&ideal, &order, &make_budget(budget)) {
        Ok(dim) => {
            println!("{dim}");
            EXIT_OK
        }
        Err(Error::BudgetExceeded) => {
            eprintln!("error: budget exceeded");
            EXIT_BUDGET
        }
        Err(e) => usage_error(e),
    }
}

struct VerifyArgs {
    check: String,
    lemma: Option<String>,
    n: Option<usize>,
    m: Option<usize>,
    m1: Option<usize>,
    m2: Option<usize>,
    family: Option<String>,
    tags: Option<String>,
    kind: Option<String>,
    case: Option<String>,
    samples: u64,
    field: String,
    seed: u64,
    budget: f64,
    corrupt: bool,
}

fn parse_tags(text: Option<&str>) -> Result<BTreeSet<Tag>, String> {
    let mut out = BTreeSet::new();
    let Some(text) = text else {
        return Ok(out);
    };
    for part in text.split(',').filter(|p| !p.is_empty()) {
        let tag = match part {
            "t0" => Tag::T0,
            "t1" => Tag::T1,
            "w" => Tag::AddW,
            "det" => Tag::DetT2,
            other => return Err(format!("unknown tag `{other}` (use t0, t1, w, det)")),
        };
        out.insert(tag);
    }
    Ok(out)
}

fn parse_family(text: &str) -> Result<Family, String> {
    match text {
        "R" => Ok(Family::R),
        "Rt" => Ok(Family::RTilde),
        "R1" => Ok(Family::R1),
        "Rp" => Ok(Family::RPrime),
        "R2" => Ok(Family::R2),
        other => Err(format!("unknown family `{other}` (use R, Rt, R1, Rp, R2)")),
    }
}

/// Closed-form expected dimensions for the pinned family/tag combinations.
fn expected_dimension(family: Family, n: usize, tags: &BTreeSet<Tag>) -> Option<usize> {
    let t0 = tags.contains(&Tag::T0);
    let t1 = tags.contains(&Tag::T1);
    let w = tags.contains(&Tag::AddW);
    match (family, t0, t1, w) {
        (Family::R, false, false, false) if tags.is_empty() => Some(n * n + n),
        (Family::R1, false, false, false) if tags.is_empty() => Some(n * n + 1),
        (Family::RTilde, true, false, true) => Some(n * n + n + 2),
        (Family::RTilde, false, true, false) => Some(n * n + n + 2),
        (Family::RTilde, true, false, false) => Some(n * n + n + 2),
        (Family::RTilde, false, false, true) => Some(n * n + n + 3),
        _ => None,
    }
}

fn emit_report(report: &VerificationReport) -> u8 {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("report serializes")
    );
    match report.status {
        Status::Pass => EXIT_OK,
        Status::Fail => EXIT_FAIL,
        Status::BudgetExceeded => EXIT_BUDGET,
    }
}

fn cmd_verify(args: VerifyArgs) -> u8 {
    let field = match parse_field_flag(&args.field) {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    if args.budget <= 0.0 {
        return usage_error("budget must be positive");
    }
    let report = match args.check.as_str() {
        "dimension" => {
            let Some(family) = args.family.as_deref() else {
                return usage_error("--family is required for the dimension check");
            };
            let family = match parse_family(family) {
                Ok(f) => f,
                Err(e) => return usage_error(e),
            };
            let Some(n) = args.n else {
                return usage_error("--n is required for the dimension check");
            };
            let tags = match parse_tags(args.tags.as_deref()) {
                Ok(t) => t,
                Err(e) => return usage_error(e),
            };
            let Some(expected) = expected_dimension(family, n, &tags) else {
                return usage_error(
                    "no pinned dimension for this family/tag combination",
                );
            };
            let spec = SchemeSpec {
                family,
                n,
                tags,
            };
            dimension_report(&spec, expected, field, args.budget)
        }
        "jacobian" => {
            let (Some(m), Some(m1), Some(m2)) = (args.m, args.m1, args.m2) else {
                return usage_error("--m, --m1, --m2 are required for the jacobian check");
            };
            if m < 1 || m1 + m2 > m {
                return usage_error("need m >= 1 and m1 + m2 <= m");
            }
            check_jacobian_rank(m, m1, m2, field)
        }
        "psi-membership" => {
            let (Some(m), Some(m1), Some(m2)) = (args.m, args.m1, args.m2) else {
                return usage_error(
                    "--m, --m1, --m2 are required for the psi-membership check",
                );
            };
            if m < 1 || m1 + m2 > m {
                return usage_error("need m >= 1 and m1 + m2 <= m");
            }
            psi_membership_check(m, m1, m2, args.samples, args.seed, field)
        }
        "hom" => {
            let Some(lemma) = args.lemma.as_deref() else {
                return usage_error("--lemma is required for the hom check (2.7, 2.8, 4.4)");
            };
            let Some(n) = args.n else {
                return usage_error("--n is required for the hom check");
            };
            let map = match lemma {
                "2.7" => map_27(n, field),
                "2.8" => map_28(n, field),
                "4.4" => map_44(n, field),
                other => {
                    return usage_error(format!(
                        "unknown map identifier `{other}` (use 2.7, 2.8, 4.4)"
                    ))
                }
            };
            match map {
                Ok(mut map) => {
                    if args.corrupt {
                        // Bump one variable image so a commutator entry no
                        // longer lands in the target ideal.
                        let idx = map.source.vars.index_of("x21").expect("x21 exists");
                        let one =
                            cmlab_core::Polynomial::from_i64(&map.target.vars, field, 1);
                        map.images[idx] = map.images[idx].add(&one).expect("same ring");
                    }
                    verify_hom(&map, &Budget::from_secs_f64(args.budget))
                }
                Err(e) => return usage_error(e),
            }
        }
        "family" => {
            let Some(kind) = args.kind.as_deref() else {
                return usage_error("--kind is required for the family check");
            };
            let m = args.m.unwrap_or(2);
            let instance = match kind {
                "L54" => lab::l54_canonical(m, field),
                "L55" => lab::l55_canonical(m, field),
                "L56" => Ok(lab::l56_canonical(field)),
                "L59" => {
                    lab::l59_canonical(m, args.m1.unwrap_or(1), args.m2.unwrap_or(1), field)
                }
                other => {
                    return usage_error(format!(
                        "unknown family kind `{other}` (use L54, L55, L56, L59)"
                    ))
                }
            };
            match instance {
                Ok(instance) => family_check(&instance, field),
                Err(e) => return usage_error(e),
            }
        }
        "regular-point" => {
            let Some(case) = args.case.as_deref() else {
                return usage_error(
                    "--case is required for the regular-point check \
                     (distinct-diag, zero-pair, jordan)",
                );
            };
            let case = match case {
                "distinct-diag" => RegularCase::DistinctDiag,
                "zero-pair" => RegularCase::ZeroPair,
                "jordan" => RegularCase::Jordan,
                other => return usage_error(format!("unknown case `{other}`")),
            };
            regular_report(case, args.n.unwrap_or(2), field)
        }
        other => return usage_error(format!("unknown check id `{other}`")),
    };
    emit_report(&report)
}

fn cmd_suite(
    max_n: usize,
    max_m: usize,
    field: &str,
    budget: f64,
    seed: u64,
    samples: u64,
    out: &PathBuf,
) -> u8 {
    let field = match parse_field_flag(field) {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    let config = SuiteConfig {
        max_n,
        max_m,
        field,
        budget_secs: budget,
        seed,
        psi_samples: samples,
    };
    let reports = match run_suite(&config) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
    if let Err(e) = std::fs::write(out, json + "\n") {
        return usage_error(format!("cannot write {}: {e}", out.display()));
    }
    let pass = reports.iter().filter(|r| r.status == Status::Pass).count();
    let fail = reports.iter().filter(|r| r.status == Status::Fail).count();
    let over = reports
        .iter()
        .filter(|r| r.status == Status::BudgetExceeded)
        .count();
    println!("pass={pass} fail={fail} budget_exceeded={over}");
    EXIT_OK
}
