//! Command-line front end: parse system files, dispatch to the library,
//! render reports. Exit codes: 0 pass, 1 fail, 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sigmadelta::dependence::{decide_dependence, DependenceVerdict, RingMode};
use sigmadelta::expr::parse_expr;
use sigmadelta::galois::{
    chebyshev_full_group, check_product_equal, membership, root_of_unity_order, stab_delta,
    stab_sigma, verify_pv_relations, CatalogTag, ProductOutcome, PvOutcome, C2,
};
use sigmadelta::matrix::Matrix;
use sigmadelta::quotient::{verify_sigma_stability, StabilityOutcome};
use sigmadelta::rational::{parse_rat, rat_to_string, Rat};
use sigmadelta::report::{Format, Report};
use sigmadelta::sequence::{
    chebyshev_witness, fundamental_sequence, k_scalar, verify_delta_solution,
    verify_sigma_solution, VerifyOutcome, KT,
};
use sigmadelta::sysfile::parse_system_file;
use sigmadelta::system::{
    chebyshev_system, check_integrability, specialize_t, specialize_x, IntegrabilityOutcome,
};
use sigmadelta::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "sigmadelta", version, about = "Exact computation with σδ-linear systems")]
struct Cli {
    /// Report rendering
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check σ(B)A = δ(A) + AB for a system file
    CheckIntegrability { file: PathBuf },
    /// Specialize a system at t = c1 (--t) or x = c2 (--x)
    Specialize {
        file: PathBuf,
        #[arg(long, value_name = "p/q")]
        t: Option<String>,
        #[arg(long, value_name = "p/q")]
        x: Option<String>,
    },
    /// Decide linear dependence over constants for expressions in Q(x,t)
    Dependence {
        /// Elements, one expression each (shared grammar, explicit *)
        #[arg(required = true)]
        exprs: Vec<String>,
        /// Bound L on θ-word weight (default 2·m)
        #[arg(long, value_name = "L")]
        theta_bound: Option<u32>,
    },
    /// Iterate W_s = A(c1+s−1)·W_{s−1} from W_0 = I and verify the result
    Sequence {
        file: PathBuf,
        #[arg(long, value_name = "p/q")]
        c1: String,
        /// Number of steps N
        #[arg(long, value_name = "N", default_value = "5")]
        window: usize,
    },
    /// Galois-group computations for the Chebyshev family
    Galois {
        #[command(subcommand)]
        command: GaloisCommand,
    },
    /// Run the full pipeline on the built-in Chebyshev system
    DemoChebyshev,
}

#[derive(Subcommand)]
enum GaloisCommand {
    /// Print the full group G and verify the Picard-Vessiot relations
    Full,
    /// Classify stab(m) at t = c1
    StabSigma {
        #[arg(long, value_name = "p/q")]
        c1: String,
    },
    /// Classify stab(n) at x = c2
    StabDelta {
        #[arg(long, value_name = "p/q|nonrational")]
        c2: String,
    },
    /// Check G = stab(m)·stab(n) with symbolic factorization witnesses
    Product {
        #[arg(long, value_name = "p/q")]
        c1: String,
        #[arg(long, value_name = "p/q|nonrational")]
        c2: String,
    },
}

fn parse_c2(s: &str) -> Result<C2> {
    if s.eq_ignore_ascii_case("nonrational") {
        Ok(C2::NonRational)
    } else {
        Ok(C2::Rational(parse_rat(s)?))
    }
}

fn tag_name(tag: CatalogTag) -> String {
    match tag {
        CatalogTag::FullG => "FullG".into(),
        CatalogTag::DiagTorus => "DiagTorus".into(),
        CatalogTag::DiagTorusMuQ(q) => format!("DiagTorusMuQ({})", q),
        CatalogTag::DihedralMuQ(q) => format!("DihedralMuQ({})", q),
        CatalogTag::Trivial => "Trivial".into(),
        CatalogTag::Custom => "Custom".into(),
    }
}

fn equations_block(h: &sigmadelta::galois::AlgSubgroup) -> String {
    h.equations
        .iter()
        .map(|p| format!("{} = 0", p))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::CheckIntegrability { file } => {
            let sys = parse_system_file(file)?;
            Ok(match check_integrability(&sys)? {
                IntegrabilityOutcome::Pass => Report::pass("check-integrability")
                    .with("system", file.display())
                    .with("identity", "sigma(B)*A = delta(A) + A*B"),
                IntegrabilityOutcome::Fail(residual) => Report::fail("check-integrability")
                    .with("system", file.display())
                    .with("residual", residual),
            })
        }
        Command::Specialize { file, t, x } => {
            let sys = parse_system_file(file)?;
            match (t, x) {
                (Some(c1), None) => {
                    let c1 = parse_rat(c1)?;
                    let d = specialize_t(&sys, &c1)?;
                    Ok(Report::pass("specialize")
                        .with("at", format!("t = {}", rat_to_string(&c1)))
                        .with("sigma(Y) = A|Y with A|", d.a_spec))
                }
                (None, Some(c2)) => {
                    let c2 = parse_rat(c2)?;
                    let d = specialize_x(&sys, &c2)?;
                    Ok(Report::pass("specialize")
                        .with("at", format!("x = {}", rat_to_string(&c2)))
                        .with("delta(Y) = B|Y with B|", d.b_spec))
                }
                _ => Err(Error::ParseError(
                    "specialize needs exactly one of --t or --x".into(),
                )),
            }
        }
        Command::Dependence { exprs, theta_bound } => {
            let elems = exprs
                .iter()
                .map(|s| parse_expr(s))
                .collect::<Result<Vec<_>>>()?;
            let l_max = theta_bound.unwrap_or(2 * elems.len() as u32);
            let verdict = decide_dependence(&elems, RingMode::SimpleRing, l_max)?;
            Ok(match verdict {
                DependenceVerdict::Independent(words, det) => Report::pass("dependence")
                    .with("verdict", "independent")
                    .with(
                        "theta-words",
                        words
                            .iter()
                            .map(|w| w.to_string())
                            .collect::<Vec<_>>()
                            .join(", "),
                    )
                    .with("determinant", det),
                DependenceVerdict::Dependent(constants) => Report::pass("dependence")
                    .with("verdict", "dependent")
                    .with(
                        "constants",
                        constants
                            .iter()
                            .map(rat_to_string)
                            .collect::<Vec<_>>()
                            .join(", "),
                    ),
                DependenceVerdict::Inconclusive(l) => Report::fail("dependence")
                    .with("verdict", "inconclusive")
                    .with("theta-bound", l),
            })
        }
        Command::Sequence { file, c1, window } => {
            let sys = parse_system_file(file)?;
            let c = parse_rat(c1)?;
            let u: Matrix<KT> =
                Matrix::identity(sys.n).map(&|f: &Rat| k_scalar(sigmadelta::ratfunc::RatFunc::constant(f.clone())));
            let seq = fundamental_sequence(&sys.a, &c, &u, *window)?;
            let sigma_ok = verify_sigma_solution(&seq, &sys.a, &c, *window)?;
            Ok(match sigma_ok {
                VerifyOutcome::Pass => Report::pass("sequence")
                    .with("c", rat_to_string(&c))
                    .with("steps", window)
                    .with(format!("W_{}", window).as_str(), seq.last().unwrap()),
                VerifyOutcome::Fail(s, residual) => Report::fail("sequence")
                    .with("failed-at", s)
                    .with("residual", residual),
            })
        }
        Command::Galois { command } => run_galois(command),
        Command::DemoChebyshev => demo_chebyshev(),
    }
}

fn run_galois(command: &GaloisCommand) -> Result<Report> {
    match command {
        GaloisCommand::Full => {
            let g = chebyshev_full_group();
            Ok(match verify_pv_relations()? {
                PvOutcome::Pass => Report::pass("galois full")
                    .with("group", tag_name(g.tag))
                    .with("equations", equations_block(&g))
                    .with("pv-relations", "f1(W) = f2(W) = f3(W) = 0, sigma(W) = A*W, delta(W) = B*W"),
                PvOutcome::Fail(which, residual) => Report::fail("galois full")
                    .with("violated", which)
                    .with("residual", residual),
            })
        }
        GaloisCommand::StabSigma { c1 } => {
            let c1 = parse_rat(c1)?;
            let h = stab_sigma(&c1)?;
            let mut r = Report::pass("galois stab-sigma")
                .with("c1", rat_to_string(&c1))
                .with("group", tag_name(h.tag))
                .with("equations", equations_block(&h));
            if let Some(q) = root_of_unity_order(&c1) {
                r = r.with("alpha-order", q);
            }
            Ok(r)
        }
        GaloisCommand::StabDelta { c2 } => {
            let c2 = parse_c2(c2)?;
            let h = stab_delta(&c2);
            Ok(Report::pass("galois stab-delta")
                .with(
                    "c2",
                    match &c2 {
                        C2::Rational(r) => rat_to_string(r),
                        C2::NonRational => "nonrational".into(),
                    },
                )
                .with("group", tag_name(h.tag))
                .with("equations", equations_block(&h)))
        }
        GaloisCommand::Product { c1, c2 } => {
            let c1 = parse_rat(c1)?;
            let c2 = parse_c2(c2)?;
            let h = stab_sigma(&c1)?;
            let hp = stab_delta(&c2);
            match check_product_equal(&h, &hp)? {
                ProductOutcome::Pass(witnesses) => {
                    let mut r = Report::pass("galois product")
                        .with("stab-sigma", tag_name(h.tag))
                        .with("stab-delta", tag_name(hp.tag));
                    for (g, a, b) in witnesses {
                        r = r.with("factorization", format!("g =\n{}\nh =\n{}\nh' =\n{}", g, a, b));
                    }
                    Ok(r)
                }
                ProductOutcome::Fail(witness) => Ok(Report::fail("galois product")
                    .with("stab-sigma", tag_name(h.tag))
                    .with("stab-delta", tag_name(hp.tag))
                    .with("not-decomposable", witness)),
            }
        }
    }
}

fn demo_chebyshev() -> Result<Report> {
    let sys = chebyshev_system();
    if check_integrability(&sys)? != IntegrabilityOutcome::Pass {
        return Ok(Report::fail("demo-chebyshev").with("stage", "integrability"));
    }
    if verify_pv_relations()? != PvOutcome::Pass {
        return Ok(Report::fail("demo-chebyshev").with("stage", "pv-relations"));
    }
    let witnesses = chebyshev_witness(5)?;
    if witnesses.iter().any(|w| {
        w.sigma_residual != Matrix::zero(2, 1) || w.delta_residual != Matrix::zero(2, 1)
    }) {
        return Ok(Report::fail("demo-chebyshev").with("stage", "chebyshev-witness"));
    }
    let c = Rat::from_integer(0.into());
    let u = sigmadelta::sequence::chebyshev_u();
    let seq = fundamental_sequence(&sys.a, &c, &u, 10)?;
    if verify_sigma_solution(&seq, &sys.a, &c, 10)? != VerifyOutcome::Pass
        || verify_delta_solution(&seq, &sys.b, &c, 10)? != VerifyOutcome::Pass
    {
        return Ok(Report::fail("demo-chebyshev").with("stage", "fundamental-sequence"));
    }
    let c1 = parse_rat("2")?;
    let h = stab_sigma(&c1)?;
    let hp = stab_delta(&C2::Rational(parse_rat("1/3")?));
    if verify_sigma_stability(&c1)? != StabilityOutcome::Pass {
        return Ok(Report::fail("demo-chebyshev").with("stage", "sigma-stability"));
    }
    let product = check_product_equal(&h, &hp)?;
    if !matches!(product, ProductOutcome::Pass(_)) {
        return Ok(Report::fail("demo-chebyshev").with("stage", "product"));
    }
    // membership spot checks on the witnesses
    let g = chebyshev_full_group();
    if let ProductOutcome::Pass(ws) = &product {
        for (gel, a, b) in ws {
            if !membership(gel, &g) || !membership(a, &h) || !membership(b, &hp) {
                return Ok(Report::fail("demo-chebyshev").with("stage", "membership"));
            }
        }
    }
    let t5 = &witnesses.last().unwrap().t_m;
    Ok(Report::pass("demo-chebyshev")
        .with("integrability", "pass")
        .with("pv-relations", "pass")
        .with("chebyshev-witness", format!("m <= 5, T_5 = {}", t5))
        .with("fundamental-sequence", "pass (c = 0, N = 10)")
        .with("sigma-stability", "pass (c1 = 2)")
        .with("stab-sigma", tag_name(h.tag))
        .with("stab-delta", tag_name(hp.tag))
        .with("product", "G = stab(m)*stab(n)"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(Error::InvalidSpecialization(msg)) | Err(Error::SingularSpecialization(msg)) => {
            let report = Report::fail("specialization").with("error", msg);
            print!("{}", report.render(format));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
