//! Command-line front end: orbit classification, star products, the
//! verification suites, representation checks, genus and Riemann-Roch
//! arithmetic, the discrete Hodge index and the X-complex tools.
//!
//! Everything prints JSON (or a flat table rendering of the same data).
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use orbitkit::formats;
use orbitkit::verify::{self, CheckResult, SuiteConfig};
use orbitkit_core::coadjoint::{self, CoadjointPoint, OrbitClass};
use orbitkit_core::index::divisor::riemann_roch_p1_check;
use orbitkit_core::index::genus::{ahat_series, ahat_twist_equals_todd, todd_series};
use orbitkit_core::index::simplicial::hodge_index;
use orbitkit_core::reps::RepFamily;
use orbitkit_core::scalar::Rat;
use orbitkit_core::starprod::{star, StarConvention};
use orbitkit_core::xcomplex::homology::{lift_idempotent, x_complex_homology};
use orbitkit_core::xcomplex::laurent::chern1_winding;

#[derive(Parser)]
#[command(
    name = "orbitkit",
    about = "Exact-arithmetic workbench for quantized affine coadjoint orbits",
    version
)]
struct Cli {
    /// Seed for randomized suites (ORBITKIT_SEED overrides)
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Output rendering
    #[arg(long, global = true, value_parser = ["json", "table"], default_value = "json")]
    output: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coadjoint-orbit tools for the real affine algebra
    Orbits {
        #[command(subcommand)]
        cmd: OrbitsCmd,
    },
    /// Star-multiply two symbols
    Star(StarArgs),
    /// Run verification suites
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Representation checks
    Rep {
        #[command(subcommand)]
        cmd: RepCmd,
    },
    /// Multiplicative genus series
    Genus {
        #[command(subcommand)]
        cmd: GenusCmd,
    },
    /// Riemann-Roch verification
    Rr {
        #[command(subcommand)]
        cmd: RrCmd,
    },
    /// Discrete Hodge index of a simplicial complex
    Hodge {
        /// JSON file with {"simplices": {...}}
        #[arg(long)]
        complex: String,
    },
    /// X-complex tools
    Xcq {
        #[command(subcommand)]
        cmd: XcqCmd,
    },
}

#[derive(Subcommand)]
enum OrbitsCmd {
    /// Classify the orbit through (lambda, mu)
    Classify {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        mu: f64,
    },
}

#[derive(Args)]
struct StarArgs {
    /// Convention: moyal (weight 1/(2i)) or weyl (weight i h / 2)
    #[arg(long, value_parser = ["moyal", "weyl"], default_value = "moyal")]
    conv: String,
    /// Deformation parameter for the weyl convention, a rational
    #[arg(long, default_value = "1")]
    h: String,
    /// JSON file holding the left symbol
    #[arg(long)]
    lhs: String,
    /// JSON file holding the right symbol
    #[arg(long)]
    rhs: String,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Star-commutator identity over all ordered basis pairs
    Prop31 {
        #[arg(long, value_parser = ["affR", "affC"])]
        algebra: String,
    },
    /// Conjugated-operator homomorphism
    Lhat {
        #[arg(long, value_parser = ["affR", "affC"])]
        algebra: String,
    },
    /// Partial-Fourier identities on a Gaussian
    Fourier {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        #[arg(long, default_value_t = 4096)]
        n: usize,
    },
    /// Conjugation of star multiplication against the closed-form operator
    Conjugation {
        #[arg(long, value_parser = ["X", "Y"])]
        gen: String,
        #[arg(long, default_value_t = 4096)]
        n: usize,
    },
    /// The whole suite
    All {
        #[arg(long, default_value_t = 4096)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    /// Group-law and unitarity residuals over seeded random elements
    Check {
        #[arg(long, value_parser = ["S", "U", "Ttheta"])]
        family: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum GenusCmd {
    /// Todd class in Chern generators
    Todd {
        #[arg(long)]
        degree: u32,
    },
    /// A-hat class in Pontryagin generators
    Ahat {
        #[arg(long)]
        degree: u32,
    },
    /// The half-twist identity through the given degree
    TwistCheck {
        #[arg(long)]
        degree: u32,
    },
}

#[derive(Subcommand)]
enum RrCmd {
    /// Verify the equality on the projective line for one divisor
    P1 {
        /// e.g. "2*[0] - 1*[inf]"
        #[arg(long)]
        divisor: String,
    },
}

#[derive(Subcommand)]
enum XcqCmd {
    /// Stable homology of the adic tower
    Homology {
        /// builtin name (c, c2, m2) or a JSON file
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        adic: usize,
        #[arg(long)]
        cap: usize,
    },
    /// Winding number of an invertible Laurent matrix
    Winding {
        #[arg(long)]
        matrix: String,
    },
    /// Idempotent lifting into the truncated Fedosov algebra
    Lift {
        #[arg(long)]
        algebra: String,
        /// idempotent as JSON (coefficient vector or matrix of them)
        #[arg(long)]
        idem: String,
        #[arg(long)]
        adic: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = std::env::var("ORBITKIT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(cli.seed);
    match run(&cli, seed) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, v: &Value) {
    if cli.output == "table" {
        print_table(v, "");
    } else {
        println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
    }
}

fn print_table(v: &Value, prefix: &str) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                print_table(val, &key);
            }
        }
        Value::Array(items) => {
            for (i, val) in items.iter().enumerate() {
                print_table(val, &format!("{prefix}[{i}]"));
            }
        }
        other => println!("{prefix}: {other}"),
    }
}

fn checks_value(checks: &[CheckResult], seed: u64) -> (Value, bool) {
    let all_pass = checks.iter().all(|c| c.passed);
    let v = json!({
        "seed": seed,
        "passed": all_pass,
        "checks": checks,
    });
    (v, all_pass)
}

fn run(cli: &Cli, seed: u64) -> Result<ExitCode> {
    let pass_exit = |ok: bool| {
        if ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    };
    match &cli.command {
        Command::Orbits { cmd } => match cmd {
            OrbitsCmd::Classify { lambda, mu } => {
                let class = coadjoint::classify_orbit(&CoadjointPoint {
                    lambda: *lambda,
                    mu: *mu,
                });
                let orbit = match class {
                    OrbitClass::UpperHalfPlane => json!("upper-half-plane"),
                    OrbitClass::LowerHalfPlane => json!("lower-half-plane"),
                    OrbitClass::Point(l) => json!({"point": l}),
                    other => json!(coadjoint::orbit_name(&other)),
                };
                emit(cli, &json!({ "orbit": orbit }));
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Star(args) => {
            let lhs = formats::parse_symbol(&read_json(&args.lhs)?)
                .with_context(|| format!("parsing {}", args.lhs))?;
            let rhs = formats::parse_symbol(&read_json(&args.rhs)?)
                .with_context(|| format!("parsing {}", args.rhs))?;
            let conv = match args.conv.as_str() {
                "moyal" => StarConvention::MoyalHalfI,
                _ => {
                    let h: Rat = args
                        .h
                        .parse()
                        .map_err(|e| anyhow!("bad rational --h {:?}: {e}", args.h))?;
                    StarConvention::WeylH(h)
                }
            };
            let prod = star(&lhs, &rhs, &conv).map_err(|e| anyhow!("{e}"))?;
            emit(cli, &json!({"product": formats::symbol_to_value(&prod)}));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { cmd } => {
            let checks: Vec<CheckResult> = match cmd {
                VerifyCmd::Prop31 { algebra } => vec![verify::check_prop31(algebra)],
                VerifyCmd::Lhat { algebra } => {
                    vec![verify::check_lhat(algebra), verify::check_lhat_mutation()]
                }
                VerifyCmd::Fourier { id, n } => vec![verify::check_fourier(*id, *n)],
                VerifyCmd::Conjugation { gen, n } => vec![verify::check_conjugation(gen, *n)],
                VerifyCmd::All { n, trials } => verify::all_checks(&SuiteConfig {
                    seed,
                    fourier_n: *n,
                    trials: *trials,
                }),
            };
            let (v, ok) = checks_value(&checks, seed);
            emit(cli, &v);
            Ok(pass_exit(ok))
        }
        Command::Rep { cmd } => match cmd {
            RepCmd::Check {
                family,
                trials,
                seed: rep_seed,
            } => {
                let family = RepFamily::parse(family).context("unknown family")?;
                let seed = rep_seed.unwrap_or(seed);
                let (law, unit) = rep_residuals(family, seed, *trials);
                let pass = law <= 1e-12 && unit <= 1e-12;
                emit(
                    cli,
                    &json!({
                        "family": family.name(),
                        "trials": trials,
                        "seed": seed,
                        "max_group_law_residual": law,
                        "max_unitarity_residual": unit,
                        "tolerance": 1e-12,
                        "passed": pass,
                    }),
                );
                Ok(pass_exit(pass))
            }
        },
        Command::Genus { cmd } => match cmd {
            GenusCmd::Todd { degree } => {
                let s = todd_series(*degree);
                emit(cli, &series_value("todd", &s, *degree));
                Ok(ExitCode::SUCCESS)
            }
            GenusCmd::Ahat { degree } => {
                let s = ahat_series(*degree);
                emit(cli, &series_value("ahat", &s, *degree));
                Ok(ExitCode::SUCCESS)
            }
            GenusCmd::TwistCheck { degree } => {
                let mut per_degree = Vec::new();
                let mut pass = true;
                for n in 1..=*degree {
                    let ok = ahat_twist_equals_todd(n);
                    pass &= ok;
                    per_degree.push(json!({"degree": n, "equal": ok}));
                }
                emit(cli, &json!({"identity": "ahat * e^(x/2) = todd", "per_degree": per_degree, "passed": pass}));
                Ok(pass_exit(pass))
            }
        },
        Command::Rr { cmd } => match cmd {
            RrCmd::P1 { divisor } => {
                let d = formats::parse_divisor(divisor)?;
                let r = riemann_roch_p1_check(&d);
                emit(
                    cli,
                    &json!({
                        "divisor": r.divisor,
                        "degree": r.degree,
                        "l_of_d": r.l_d,
                        "l_of_k_minus_d": r.l_k_minus_d,
                        "lhs": r.lhs,
                        "rhs": r.rhs,
                        "passed": r.pass,
                    }),
                );
                Ok(pass_exit(r.pass))
            }
        },
        Command::Hodge { complex } => {
            let c = formats::parse_complex(&read_json(complex)?)
                .with_context(|| format!("parsing {complex}"))?;
            let r = hodge_index(&c);
            emit(
                cli,
                &json!({
                    "index": r.index,
                    "euler": r.euler,
                    "kernel_dim": r.kernel_dim,
                    "cokernel_dim": r.cokernel_dim,
                    "betti": c.betti(),
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Xcq { cmd } => match cmd {
            XcqCmd::Homology { algebra, adic, cap } => {
                let alg = load_fdalgebra(algebra)?;
                let r = x_complex_homology(&alg, *adic, *cap).map_err(|e| anyhow!("{e}"))?;
                emit(
                    cli,
                    &json!({
                        "algebra": algebra,
                        "adic_order": r.adic_order,
                        "cap": r.cap,
                        "h0": r.h0,
                        "h1": r.h1,
                        "stage_h0": r.stage_h0,
                        "stage_h1": r.stage_h1,
                        "dim_even": r.dim_even,
                        "dim_odd": r.dim_odd,
                        "complex_property": r.complex_property,
                    }),
                );
                Ok(pass_exit(r.complex_property))
            }
            XcqCmd::Winding { matrix } => {
                let m = formats::parse_laurent_matrix(&read_json(matrix)?)
                    .with_context(|| format!("parsing {matrix}"))?;
                let w = chern1_winding(&m).map_err(|e| anyhow!("{e}"))?;
                emit(cli, &json!({"winding": w}));
                Ok(ExitCode::SUCCESS)
            }
            XcqCmd::Lift { algebra, idem, adic } => {
                let alg = load_fdalgebra(algebra)?;
                let idem_value: Value =
                    serde_json::from_str(idem).context("parsing the idempotent")?;
                let e = formats::parse_idempotent(&idem_value, alg.dim())?;
                let lift = lift_idempotent(&alg, e, *adic).map_err(|e| anyhow!("{e}"))?;
                let verified = lift.fedosov(&lift) == lift;
                let entries: Vec<String> = (0..lift.size)
                    .flat_map(|i| {
                        (0..lift.size)
                            .map(move |j| (i, j))
                    })
                    .map(|(i, j)| format!("[{i},{j}] = {}", lift.at(i, j)))
                    .collect();
                emit(
                    cli,
                    &json!({
                        "adic_order": adic,
                        "idempotent_mod_adic_ideal": verified,
                        "entries": entries,
                        "trace": lift.trace().render(),
                    }),
                );
                Ok(pass_exit(verified))
            }
        },
    }
}

fn rep_residuals(family: RepFamily, seed: u64, trials: usize) -> (f64, f64) {
    use num_complex::Complex64;
    use num_traits::Float;
    use orbitkit_core::reps::*;
    use rand_core::{RngCore, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut uniform = move |lo: f64, hi: f64| {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        lo + (hi - lo) * u
    };
    let f = default_test_function();
    let tf = default_torus_function();
    let (_, ds, _) = default_grid();
    let (mut law, mut unit) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        match family {
            RepFamily::S => {
                let m1 = uniform(-96.0, 96.0) as i64;
                let m2 = uniform(-96.0, 96.0) as i64;
                let g1 =
                    GroupElementAffR::new(Float::exp(m1 as f64 * ds), uniform(-2.0, 2.0)).unwrap();
                let g2 =
                    GroupElementAffR::new(Float::exp(m2 as f64 * ds), uniform(-2.0, 2.0)).unwrap();
                law = law.max(group_law_check_s(&g1, &g2, &f));
                unit = unit.max(unitarity_check_s(&g1, &f));
            }
            RepFamily::U => {
                let a1 = uniform(0.2, 5.0) * if uniform(0.0, 1.0) < 0.5 { 1.0 } else { -1.0 };
                let a2 = uniform(0.2, 5.0) * if uniform(0.0, 1.0) < 0.5 { 1.0 } else { -1.0 };
                let eps = if uniform(0.0, 1.0) < 0.5 { 0 } else { 1 };
                let lambda = uniform(-3.0, 3.0);
                law = law.max(group_law_check_u(
                    eps,
                    lambda,
                    (a1, uniform(-2.0, 2.0)),
                    (a2, uniform(-2.0, 2.0)),
                ));
                let u = rep_char_u(eps, lambda, a1, 0.0).unwrap();
                unit = unit.max((u.norm() - 1.0).abs());
            }
            RepFamily::Ttheta => {
                let theta = 0.41;
                let t1 = GroupElementAffCCover::translation(Complex64::new(
                    uniform(-2.0, 2.0),
                    uniform(-6.0, 6.0),
                ));
                let t2 = GroupElementAffCCover::translation(Complex64::new(
                    uniform(-2.0, 2.0),
                    uniform(-6.0, 6.0),
                ));
                law = law.max(group_law_check_t(theta, &t1, &t2, &tf));
                let d1 = GroupElementAffCCover::dilation(Complex64::new(
                    uniform(-2.0, 2.0),
                    uniform(-2.0, 2.0),
                ));
                let d2 = GroupElementAffCCover::dilation(Complex64::new(
                    uniform(-2.0, 2.0),
                    uniform(-2.0, 2.0),
                ));
                law = law.max(group_law_check_t(theta, &d1, &d2, &tf));
                unit = unit.max(unitarity_check_t(theta, &t1, &tf));
            }
        }
    }
    (law, unit)
}

fn series_value(name: &str, s: &orbitkit_core::index::genus::ClassSeries, degree: u32) -> Value {
    let comps: Vec<Value> = (0..=degree)
        .map(|d| json!({"degree": d, "component": s.component(d).render()}))
        .collect();
    json!({"genus": name, "degree": degree, "components": comps})
}

fn read_json(path: &str) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {path} as JSON"))
}

fn load_fdalgebra(
    spec: &str,
) -> Result<std::sync::Arc<orbitkit_core::xcomplex::algebra::FDAlgebra>> {
    if let Some(alg) = orbitkit_core::xcomplex::algebra::FDAlgebra::builtin(spec) {
        return Ok(alg);
    }
    formats::parse_fdalgebra(&read_json(spec)?)
}
