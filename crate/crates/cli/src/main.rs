use std::io::{Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use exalg::constructions::{
    ar_sequence, build_p_explicit, build_p_inductive, filtration_cx1, kronecker_f, m_u, m_xi, tensor, unit_form,
};
use exalg::homalg::{end_algebra, ext_dim, hom_basis, stable_hom_dim};
use exalg::homology::{complexity, cosyzygy, minimal_resolution, syzygy, DEFAULT_DEPTH};
use exalg::linalg::{Fp, DEFAULT_PRIME};
use exalg::modfile::{json_string, to_json, ModuleFile};
use exalg::verify::run_suite;
use exalg::GradedModule;

/// Graded modules over exterior algebras, exactly.
#[derive(Parser)]
#[command(name = "exalg", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the defining relations of a module file.
    Validate {
        file: String,
    },
    /// Minimal resolution Betti table.
    Betti {
        file: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Complexity from Betti growth and from a random regular sequence.
    Complexity {
        file: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    Syzygy {
        file: String,
        #[arg(short, default_value_t = 1)]
        k: usize,
    },
    Cosyzygy {
        file: String,
        #[arg(short, default_value_t = 1)]
        k: usize,
    },
    /// `M(i)`, with `M(i)_j = M_{i+j}`.
    Shift {
        file: String,
        #[arg(short, allow_hyphen_values = true)]
        i: i32,
    },
    /// Dimension of degree-0 Hom.
    Hom {
        a: String,
        b: String,
    },
    /// Dimension of stable Hom.
    Stablehom {
        a: String,
        b: String,
    },
    /// Dimension of `Ext^k` in degree 0.
    Ext {
        a: String,
        b: String,
        #[arg(short, default_value_t = 1)]
        k: usize,
    },
    /// Structure of the degree-0 endomorphism ring.
    End {
        file: String,
        #[arg(long)]
        json: bool,
    },
    Tensor {
        a: String,
        b: String,
    },
    /// Build a module and write it as JSON.
    #[command(subcommand)]
    Construct(Construct),
    /// Filtration of a complexity-one module by shifted `M_ξ`.
    Filter {
        file: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Rank {
    /// Number of variables minus one.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(short, long, default_value = "-")]
    output: String,
}

#[derive(Subcommand)]
enum Construct {
    /// `R/⟨ξ⟩`; defaults to ξ = x_0.
    Mxi {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
    },
    /// `R/⟨U⟩`; forms separated by `;`.
    Mu {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, allow_hyphen_values = true)]
        forms: String,
    },
    Pd {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    PdExplicit {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        d: usize,
    },
    /// Middle term of the almost split sequence ending in `M_ξ`.
    Xxi {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
    },
    /// `F_i(j)` over `R(x_0, x_1)`.
    Kron {
        #[arg(long, allow_hyphen_values = true)]
        i: i32,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        j: i32,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
}

/// Failure kinds mapped to exit codes.
enum Outcome {
    Ok,
    Fail,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn field() -> Result<Fp> {
    let p = match std::env::var("EXALG_PRIME") {
        Ok(s) => s.trim().parse::<u32>().with_context(|| format!("EXALG_PRIME={s:?} is not an integer"))?,
        Err(_) => DEFAULT_PRIME,
    };
    Ok(Fp::new(p)?)
}

fn read_text(path: &str) -> Result<String> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
    } else {
        s = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    }
    Ok(s)
}

fn parse_file(path: &str) -> Result<ModuleFile> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("{path}: malformed module file"))
}

fn load(path: &str) -> Result<GradedModule> {
    let m = parse_file(path)?.to_module().with_context(|| path.to_string())?;
    if std::env::var_os("EXALG_PRIME").is_some() {
        let p = field()?.p();
        if m.field().p() != p {
            bail!("{path}: modulus {} differs from EXALG_PRIME={p}", m.field().p());
        }
    }
    Ok(m)
}

fn load_pair(a: &str, b: &str) -> Result<(GradedModule, GradedModule)> {
    let (ma, mb) = (load(a)?, load(b)?);
    if ma.field() != mb.field() {
        bail!("modulus mismatch: {} vs {}", ma.field().p(), mb.field().p());
    }
    if ma.n_vars() != mb.n_vars() {
        bail!("number of variables mismatch: {} vs {}", ma.n_vars(), mb.n_vars());
    }
    Ok((ma, mb))
}

fn write_out(path: &str, text: &str) -> Result<()> {
    if path == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()?;
    } else {
        std::fs::write(path, text).with_context(|| format!("writing {path}"))?;
    }
    Ok(())
}

fn print_module(m: &GradedModule) -> Result<Outcome> {
    write_out("-", &to_json(m))?;
    Ok(Outcome::Ok)
}

/// Parse `a,b,c` as field elements; negative entries are reduced mod p.
fn parse_form(f: Fp, s: &str, n_vars: usize) -> Result<Vec<u32>> {
    let v: Vec<u32> = s
        .split(',')
        .map(|t| {
            let x: i64 = t.trim().parse().with_context(|| format!("{t:?} is not an integer"))?;
            Ok(x.rem_euclid(f.p() as i64) as u32)
        })
        .collect::<Result<_>>()?;
    if v.len() != n_vars {
        bail!("form {s:?} has {} coefficients, expected {n_vars}", v.len());
    }
    Ok(v)
}

fn check_rank(n: usize) -> Result<usize> {
    if !(1..=5).contains(&n) {
        bail!("--n must lie in 1..=5, got {n}");
    }
    Ok(n + 1)
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.cmd {
        Cmd::Validate { file } => {
            let mf = parse_file(&file)?;
            match mf.to_module() {
                Ok(m) => {
                    let dims: Vec<String> = m.degrees().map(|d| format!("{d}:{}", m.dim(d))).collect();
                    println!("valid: p = {}, n+1 = {}, dims {{{}}}", m.field().p(), m.n_vars(), dims.join(", "));
                    Ok(Outcome::Ok)
                }
                Err(e) => {
                    println!("invalid: {e}");
                    Ok(Outcome::Fail)
                }
            }
        }
        Cmd::Betti { file, depth, json } => {
            let t = minimal_resolution(&load(&file)?, depth);
            if json {
                let graded: Vec<Value> =
                    t.graded().into_iter().map(|((i, j), c)| json!({ "i": i, "j": j, "count": c })).collect();
                write_out("-", &json_string(&json!({ "betti": t.betti(), "graded": graded })))?;
            } else {
                print!("{t}");
            }
            Ok(Outcome::Ok)
        }
        Cmd::Complexity { file, depth, seed, json } => {
            let c = complexity(&load(&file)?, depth, seed);
            if json {
                write_out("-", &json_string(&serde_json::to_value(&c)?))?;
            } else {
                let betti: Vec<String> = c.betti.iter().map(usize::to_string).collect();
                println!("cx_regseq: {}", c.cx_regseq);
                match c.cx_betti {
                    Some(k) => println!("cx_betti: {k}"),
                    None => println!("cx_betti: undetermined at depth {depth}"),
                }
                println!("betti: {}", betti.join(" "));
            }
            Ok(Outcome::Ok)
        }
        Cmd::Syzygy { file, k } => print_module(&syzygy(&load(&file)?, k)),
        Cmd::Cosyzygy { file, k } => print_module(&cosyzygy(&load(&file)?, k)),
        Cmd::Shift { file, i } => print_module(&load(&file)?.shift(i)),
        Cmd::Hom { a, b } => {
            let (ma, mb) = load_pair(&a, &b)?;
            println!("{}", hom_basis(&ma, &mb)?.dim());
            Ok(Outcome::Ok)
        }
        Cmd::Stablehom { a, b } => {
            let (ma, mb) = load_pair(&a, &b)?;
            println!("{}", stable_hom_dim(&ma, &mb)?);
            Ok(Outcome::Ok)
        }
        Cmd::Ext { a, b, k } => {
            let (ma, mb) = load_pair(&a, &b)?;
            println!("{}", ext_dim(&ma, &mb, k)?);
            Ok(Outcome::Ok)
        }
        Cmd::End { file, json } => {
            let a = end_algebra(&load(&file)?)?;
            let layers: Vec<usize> = a.radical_filtration()?.iter().map(|s| s.dim()).collect();
            let report = json!({
                "dim": a.dim(),
                "local": a.is_local(),
                "commutative": a.is_commutative(),
                "radical_filtration": layers,
            });
            if json {
                write_out("-", &json_string(&report))?;
            } else {
                let layers: Vec<String> = layers.iter().map(usize::to_string).collect();
                println!("dim: {}", a.dim());
                println!("local: {}", a.is_local());
                println!("commutative: {}", a.is_commutative());
                println!("radical filtration: {}", layers.join(" "));
            }
            Ok(Outcome::Ok)
        }
        Cmd::Tensor { a, b } => {
            let (ma, mb) = load_pair(&a, &b)?;
            print_module(&tensor(&ma, &mb)?)
        }
        Cmd::Construct(c) => construct(c),
        Cmd::Filter { file, seed, json } => {
            let factors = filtration_cx1(&load(&file)?, seed)?;
            if json {
                let v: Vec<Value> = factors.iter().map(|f| json!({ "xi": f.xi, "shift": f.shift })).collect();
                write_out("-", &json_string(&Value::Array(v)))?;
            } else {
                for f in &factors {
                    let xi: Vec<String> = f.xi.iter().map(u32::to_string).collect();
                    println!("M_xi({}) xi = {}", f.shift, xi.join(","));
                }
            }
            Ok(Outcome::Ok)
        }
        Cmd::Verify { suite, n, seed, json } => {
            let report = run_suite(&suite, field()?, n, seed)?;
            if json {
                write_out("-", &report.to_json())?;
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.passed() { Outcome::Ok } else { Outcome::Fail })
        }
    }
}

fn construct(c: Construct) -> Result<Outcome> {
    let f = field()?;
    let (m, out) = match c {
        Construct::Mxi { rank, xi } => {
            let nv = check_rank(rank.n)?;
            let xi = match xi {
                Some(s) => parse_form(f, &s, nv)?,
                None => unit_form(nv, 0),
            };
            (m_xi(f, nv, &xi)?, rank.output)
        }
        Construct::Mu { rank, forms } => {
            let nv = check_rank(rank.n)?;
            let forms: Vec<Vec<u32>> = forms.split(';').map(|s| parse_form(f, s, nv)).collect::<Result<_>>()?;
            (m_u(f, nv, &forms)?, rank.output)
        }
        Construct::Pd { rank, d, seed } => {
            let nv = check_rank(rank.n)?;
            (build_p_inductive(f, nv, d, seed)?, rank.output)
        }
        Construct::PdExplicit { rank, d } => {
            let nv = check_rank(rank.n)?;
            (build_p_explicit(f, nv, d)?.module, rank.output)
        }
        Construct::Xxi { rank, xi } => {
            let nv = check_rank(rank.n)?;
            let xi = match xi {
                Some(s) => parse_form(f, &s, nv)?,
                None => unit_form(nv, 0),
            };
            (ar_sequence(f, nv, &xi)?.middle, rank.output)
        }
        Construct::Kron { i, j, output } => {
            // Fixed rank: the Kronecker modules live over two variables.
            (kronecker_f(f, i, j), output)
        }
    };
    write_out(&out, &to_json(&m))?;
    Ok(Outcome::Ok)
}
