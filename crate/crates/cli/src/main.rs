//! Command-line front end: parse elements, run individual operations, and
//! execute the named verification suites with seeds and machine-readable
//! reports.

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;
use std::sync::Arc;
use wittcenter::center::{bracket0, center_kernel, center_vars, phi_odd, serre_map};
use wittcenter::poisson2::phi_even;
use wittcenter::poly::{IntegerRing, ModRing, MultiPoly, PolyRing};
use wittcenter::suites::{run_suite, RunConfig, SUITES};
use wittcenter::witt::{parse_witt, psi, WittVector};
use wittcenter::{Error, WeylElement};

#[derive(Parser)]
#[command(
    name = "wittcenter",
    about = "Witt vectors, Weyl algebras over Z/p^k and their centers, exactly",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Witt vector arithmetic and the psi polynomials
    Witt {
        #[command(subcommand)]
        op: WittOp,
    },
    /// Weyl algebra arithmetic over Z/p^{n+1}
    Weyl {
        #[command(subcommand)]
        op: WeylOp,
    },
    /// Center maps, brackets, the Serre morphism and the center solver
    Center {
        #[command(subcommand)]
        op: CenterOp,
    },
    /// Run a named verification suite; exit code 0 iff zero failures
    Verify(VerifyArgs),
}

#[derive(Args)]
struct WittCommon {
    /// Prime p
    #[arg(long)]
    p: u32,
    /// Comma-separated variable alphabet; inferred from the input if absent
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum WittOp {
    /// Witt sum over Z[vars]: `witt add --p 2 --len 2 "[a;0]" "[b;0]"`
    Add {
        #[command(flatten)]
        common: WittCommon,
        /// Vector length (defaults to the length of the inputs)
        #[arg(long)]
        len: Option<usize>,
        lhs: String,
        rhs: String,
    },
    /// Witt product over Z[vars]
    Mul {
        #[command(flatten)]
        common: WittCommon,
        #[arg(long)]
        len: Option<usize>,
        lhs: String,
        rhs: String,
    },
    /// Ghost components: `witt ghost --p 2 "[a;b]"`
    Ghost {
        #[command(flatten)]
        common: WittCommon,
        vector: String,
    },
    /// The polynomial psi_i over Z: `witt psi --i 2 --p 3`
    Psi {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        i: u32,
    },
}

#[derive(Args)]
struct WeylCommon {
    /// Prime p
    #[arg(long)]
    p: u32,
    /// Level n: coefficients in Z/p^{n+1}
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Number of variables
    #[arg(long, default_value_t = 1)]
    d: usize,
}

#[derive(Subcommand)]
enum WeylOp {
    /// Normal-ordered product
    Mul {
        #[command(flatten)]
        common: WeylCommon,
        lhs: String,
        rhs: String,
    },
    /// Commutator: `weyl comm --p 3 --n 2 "d1^3" "x1^3"`
    Comm {
        #[command(flatten)]
        common: WeylCommon,
        lhs: String,
        rhs: String,
    },
    /// Power
    Pow {
        #[command(flatten)]
        common: WeylCommon,
        #[arg(long)]
        e: u32,
        arg: String,
    },
    /// Centrality test
    Central {
        #[command(flatten)]
        common: WeylCommon,
        arg: String,
    },
}

#[derive(Subcommand)]
enum CenterOp {
    /// The center map: `center phi --p 3 --m 1 "[X1;0]"` (p = 2 uses the
    /// corrected map)
    Phi {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        d: usize,
        vector: String,
    },
    /// Deformation bracket {z, w} computed at ambient level n
    Bracket {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        d: usize,
        lhs: String,
        rhs: String,
    },
    /// The Serre morphism of a Witt vector of center polynomials
    Serre {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        d: usize,
        vector: String,
    },
    /// Solve for the degree-bounded center at level m (Howell basis)
    Solve {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Degree bound; defaults to p^{m+1}
        #[arg(long)]
        deg: Option<u32>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// One of the named suites
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 3)]
    p: u32,
    #[arg(long, default_value_t = 2)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long)]
    deg: Option<u32>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn infer_vars(common: &WittCommon, inputs: &[&str]) -> Arc<Vec<String>> {
    if let Some(vars) = &common.vars {
        return Arc::new(vars.clone());
    }
    let mut names: Vec<String> = Vec::new();
    for s in inputs {
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_alphabetic() || bytes[i] == b'_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = s[start..i].to_string();
                if !names.contains(&name) {
                    names.push(name);
                }
            } else {
                i += 1;
            }
        }
    }
    names.sort();
    Arc::new(names)
}

fn parse_int_witt(
    input: &str,
    p: u32,
    vars: &Arc<Vec<String>>,
) -> wittcenter::Result<WittVector<PolyRing<IntegerRing>>> {
    let ring = PolyRing::new(IntegerRing, vars.clone());
    parse_witt(input, p, &ring, |s| {
        MultiPoly::parse(s, IntegerRing, vars.clone())
    })
}

fn parse_center_witt(
    input: &str,
    p: u32,
    d: usize,
) -> wittcenter::Result<WittVector<PolyRing<ModRing>>> {
    let ring = wittcenter::center::center_poly_ring(p, d)?;
    let vars = center_vars(d);
    let fp = ModRing::fp(p)?;
    parse_witt(input, p, &ring, |s| MultiPoly::parse(s, fp, vars.clone()))
}

fn run(cli: Cli) -> wittcenter::Result<ExitCode> {
    match cli.command {
        Command::Witt { op } => run_witt(op)?,
        Command::Weyl { op } => run_weyl(op)?,
        Command::Center { op } => run_center(op)?,
        Command::Verify(args) => return run_verify(args),
    }
    Ok(ExitCode::SUCCESS)
}

fn witt_binop(
    common: &WittCommon,
    len: Option<usize>,
    lhs: &str,
    rhs: &str,
    mul: bool,
) -> wittcenter::Result<()> {
    let vars = infer_vars(common, &[lhs, rhs]);
    let mut a = parse_int_witt(lhs, common.p, &vars)?;
    let mut b = parse_int_witt(rhs, common.p, &vars)?;
    if let Some(len) = len {
        if len < a.len() {
            a = a.truncate(len)?;
        }
        if len < b.len() {
            b = b.truncate(len)?;
        }
        if len != a.len() || len != b.len() {
            return Err(Error::Range("inputs shorter than --len".into()));
        }
    }
    let out = if mul { a.mul(&b)? } else { a.add(&b)? };
    println!("{out}");
    Ok(())
}

fn run_witt(op: WittOp) -> wittcenter::Result<()> {
    match op {
        WittOp::Add { common, len, lhs, rhs } => witt_binop(&common, len, &lhs, &rhs, false),
        WittOp::Mul { common, len, lhs, rhs } => witt_binop(&common, len, &lhs, &rhs, true),
        WittOp::Ghost { common, vector } => {
            let vars = infer_vars(&common, &[&vector]);
            let w = parse_int_witt(&vector, common.p, &vars)?;
            let ghost = w.ghost()?;
            let parts: Vec<String> = ghost.iter().map(|g| g.to_string()).collect();
            println!("({})", parts.join(", "));
            Ok(())
        }
        WittOp::Psi { p, i } => {
            println!("{}", psi(i, p)?.poly);
            Ok(())
        }
    }
}

fn run_weyl(op: WeylOp) -> wittcenter::Result<()> {
    match op {
        WeylOp::Mul { common, lhs, rhs } => {
            let a = WeylElement::parse(&lhs, common.p, common.n, common.d)?;
            let b = WeylElement::parse(&rhs, common.p, common.n, common.d)?;
            println!("{}", a.mul(&b)?);
        }
        WeylOp::Comm { common, lhs, rhs } => {
            let a = WeylElement::parse(&lhs, common.p, common.n, common.d)?;
            let b = WeylElement::parse(&rhs, common.p, common.n, common.d)?;
            println!("{}", a.commutator(&b)?);
        }
        WeylOp::Pow { common, e, arg } => {
            let a = WeylElement::parse(&arg, common.p, common.n, common.d)?;
            println!("{}", a.pow(e)?);
        }
        WeylOp::Central { common, arg } => {
            let a = WeylElement::parse(&arg, common.p, common.n, common.d)?;
            println!("{}", a.is_central());
        }
    }
    Ok(())
}

fn run_center(op: CenterOp) -> wittcenter::Result<()> {
    match op {
        CenterOp::Phi { p, m, d, vector } => {
            let w = parse_center_witt(&vector, p, d)?;
            let out = if p == 2 { phi_even(m, &w)? } else { phi_odd(m, &w)? };
            println!("{out}");
        }
        CenterOp::Bracket { p, n, d, lhs, rhs } => {
            let fp = ModRing::fp(p)?;
            let vars = center_vars(d);
            let a = MultiPoly::parse(&lhs, fp, vars.clone())?;
            let b = MultiPoly::parse(&rhs, fp, vars)?;
            println!("{}", bracket0(&a, &b, n)?);
        }
        CenterOp::Serre { p, m, d, vector } => {
            let w = parse_center_witt(&vector, p, d)?;
            println!("{}", serre_map(&w, m)?);
        }
        CenterOp::Solve { p, m, d, deg, json } => {
            let deg = deg.unwrap_or_else(|| p.pow(m + 1));
            let basis = center_kernel(p, m, d, deg)?;
            if json {
                let ambient: Vec<String> = basis
                    .rows_as_weyl()
                    .iter()
                    .map(|r| r.to_string())
                    .collect();
                let rows: Vec<Vec<u64>> = (0..basis.basis.rows())
                    .map(|i| basis.basis.row(i).to_vec())
                    .collect();
                let doc = serde_json::json!({
                    "schema": 1,
                    "p": p,
                    "m": m,
                    "d": d,
                    "deg": deg,
                    "rank": basis.rank(),
                    "elements": ambient,
                    "rows": rows,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
            } else {
                for row in basis.rows_as_weyl() {
                    println!("{row}");
                }
            }
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> wittcenter::Result<ExitCode> {
    if !SUITES.contains(&args.suite.as_str()) {
        return Err(Error::Unsupported(format!(
            "unknown suite {:?}; known: {}",
            args.suite,
            SUITES.join(", ")
        )));
    }
    let cfg = RunConfig::new(
        args.p,
        args.n.max(args.m),
        args.m,
        args.d,
        args.deg,
        args.trials,
        args.seed,
    )?;
    let report = run_suite(&args.suite, &cfg)?;
    if args.json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
