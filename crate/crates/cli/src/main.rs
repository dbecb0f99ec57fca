mod bench;
mod cache;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use irred::construct::canonical_qnr;
use irred::factorize::{edf, rabin_is_irreducible};
use irred::modmath::{parse_natural, with_prime_field, PrimeFieldVisitor};
use irred::record::{ConstructionRecord, FORMAT_VERSION};
use irred::strategy::{resolve_modulus, Registry, Request};
use irred::{Error, ExtField, Field, Poly, PrimeField, PrimeModulus, SeededRng};
use rand::{RngCore, SeedableRng};

use crate::cache::Cache;

/// Canonical irreducible polynomials over finite fields.
///
/// Polynomials are written as space-separated coefficients, constant term
/// first. Over F_{p^k} each coefficient is a bracketed list of k residues,
/// e.g. "[0 1] [1 0]" for X + t.
#[derive(Parser, Debug)]
#[command(name = "irred", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct an irreducible of degree d over F_{p^k}.
    Construct(ConstructArgs),
    /// Canonical quadratic non-residue mod p, with its square-root chain.
    Qnr(QnrArgs),
    /// Split a product of distinct degree-DEG irreducibles.
    Factor(FactorArgs),
    /// Rabin irreducibility test (exit 0 irreducible, 3 reducible).
    Check(CheckArgs),
    /// Time every registered method on a grid of (p, d) points.
    Bench(bench::BenchArgs),
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Characteristic (decimal, any size).
    #[arg(short = 'p')]
    p: String,
    /// Extension degree of the coefficient field.
    #[arg(short = 'k', default_value_t = 1)]
    k: usize,
    /// Modulus of F_{p^k} over F_p (default: the canonical degree-k irreducible).
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub(crate) struct SeedArgs {
    /// Generator seed (default: from OS entropy, echoed on stderr).
    #[arg(long)]
    seed: Option<u64>,
}

impl SeedArgs {
    pub(crate) fn rng(&self) -> SeededRng {
        let seed = self.seed.unwrap_or_else(|| {
            let s = rand::rngs::OsRng.next_u64();
            eprintln!("seed: {s}");
            s
        });
        SeededRng::seed_from_u64(seed)
    }
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Degree of the output.
    #[arg(short = 'd')]
    d: usize,
    #[command(flatten)]
    seed: SeedArgs,
    /// Construction method (see `bench` for the list).
    #[arg(long, default_value = "canonical")]
    method: String,
    /// Print the JSON record instead of the polynomial.
    #[arg(long)]
    json: bool,
    /// Skip re-verifying the result before printing.
    #[arg(long)]
    no_verify: bool,
    /// Append-only result cache (JSON lines).
    #[arg(long, env = "IRRED_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QnrArgs {
    #[arg(short = 'p')]
    p: String,
    #[command(flatten)]
    seed: SeedArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct FactorArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Polynomial to factor.
    #[arg(short = 'f')]
    f: String,
    /// Degree of every irreducible factor.
    #[arg(long)]
    deg: usize,
    #[command(flatten)]
    seed: SeedArgs,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Polynomial to test.
    #[arg(short = 'f')]
    f: String,
    #[command(flatten)]
    seed: SeedArgs,
}

/// Exit statuses.
const EXIT_INVALID: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_REDUCIBLE: u8 = 3;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Verification(_) | Error::ModulusMismatch | Error::ContextMismatch | Error::DivisionByZero) => {
            EXIT_INTERNAL
        }
        _ => EXIT_INVALID,
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Construct(args) => cmd_construct(args),
        Command::Qnr(args) => cmd_qnr(args),
        Command::Factor(args) => cmd_factor(args),
        Command::Check(args) => cmd_check(args),
        Command::Bench(args) => bench::cmd_bench(args),
    }
}

pub(crate) fn prime(text: &str) -> Result<PrimeModulus> {
    Ok(PrimeModulus::new(parse_natural(text)?)?)
}

fn cmd_construct(args: ConstructArgs) -> Result<u8> {
    let p = prime(&args.field.p)?;
    if args.field.k == 0 || args.d == 0 {
        return Err(Error::InvalidInput("k and d must be at least 1".into()).into());
    }
    let registry = Registry::builtin();
    let method = registry.get(&args.method)?;
    let mut rng = args.seed.rng();
    let modulus = resolve_modulus(&p, args.field.k, args.field.modulus.as_deref(), &mut rng)?;
    let p_text = p.value().to_string();
    let (k, d) = (args.field.k as u64, args.d as u64);

    // only seed-independent results are cacheable
    let cache = args.cache.filter(|_| method.canonical()).map(Cache::new);
    if let Some(cache) = &cache {
        if let Some(rec) = cache.lookup(&p_text, k, d, modulus.as_deref())? {
            log::info!("cache hit in {}", cache.path().display());
            emit(&rec, args.json);
            return Ok(0);
        }
    }

    let req = Request {
        p,
        k: args.field.k,
        d: args.d,
        modulus: modulus.clone(),
    };
    let out = method.construct(&req, &mut rng)?;
    let rec = ConstructionRecord {
        p: p_text,
        k,
        d,
        modulus,
        poly: out.poly,
        verified: true,
        seeds_consumed: 1,
        version: FORMAT_VERSION.to_string(),
    };
    if !args.no_verify {
        rec.check().map_err(|e| match e {
            Error::InvalidInput(m) | Error::Parse(m) => Error::Verification(m),
            other => other,
        })?;
    }
    if let Some(cache) = &cache {
        cache.append(&rec)?;
    }
    emit(&rec, args.json);
    Ok(0)
}

fn emit(rec: &ConstructionRecord, json: bool) {
    if json {
        println!("{}", rec.to_json_line());
    } else {
        println!("{}", rec.poly);
    }
}

fn cmd_qnr(args: QnrArgs) -> Result<u8> {
    let p = prime(&args.p)?;
    let mut rng = args.seed.rng();
    struct Run<'a>(&'a mut SeededRng);
    impl PrimeFieldVisitor for Run<'_> {
        type Output = irred::Result<(Vec<String>, String)>;
        fn visit<P: PrimeField>(self, field: P) -> Self::Output {
            let r = canonical_qnr(&field, self.0)?;
            let chain = r.chain.iter().map(|a| field.format_elem(a)).collect();
            Ok((chain, r.poly.to_text()))
        }
    }
    let (chain, poly) = with_prime_field(&p, Run(&mut rng))?;
    if args.json {
        let v = serde_json::json!({ "p": p.value().to_string(), "chain": chain, "poly": poly });
        println!("{v}");
    } else {
        println!("chain: {}", chain.join(" "));
        println!("poly: {poly}");
    }
    Ok(0)
}

/// A computation generic over the coefficient field.
trait FieldTask {
    type Output;
    fn run<F: Field>(self, field: &F) -> irred::Result<Self::Output>;
}

/// Builds F_p or F_{p^k} from the flags and runs `task` over it.
fn with_field<T: FieldTask>(args: &FieldArgs, rng: &mut SeededRng, task: T) -> Result<T::Output> {
    let p = prime(&args.p)?;
    let modulus = resolve_modulus(&p, args.k, args.modulus.as_deref(), rng)?;
    struct Dispatch<T> {
        modulus: Option<String>,
        task: T,
    }
    impl<T: FieldTask> PrimeFieldVisitor for Dispatch<T> {
        type Output = irred::Result<T::Output>;
        fn visit<P: PrimeField>(self, prime: P) -> Self::Output {
            match self.modulus {
                None => self.task.run(&prime),
                Some(text) => {
                    let ctx = ExtField::new(Poly::parse_text(&prime, &text)?)?;
                    self.task.run(&ctx)
                }
            }
        }
    }
    Ok(with_prime_field(&p, Dispatch { modulus, task })?)
}

fn cmd_factor(args: FactorArgs) -> Result<u8> {
    let mut rng = args.seed.rng();
    struct Factor<'a> {
        text: &'a str,
        deg: usize,
        rng: SeededRng,
    }
    impl FieldTask for Factor<'_> {
        type Output = Vec<String>;
        fn run<F: Field>(mut self, field: &F) -> irred::Result<Vec<String>> {
            let f = Poly::parse_text(field, self.text)?;
            let factors = edf(&f, self.deg, &mut self.rng)?;
            Ok(factors.iter().map(Poly::to_text).collect())
        }
    }
    let task = Factor {
        text: &args.f,
        deg: args.deg,
        rng: SeededRng::seed_from_u64(rng.next_u64()),
    };
    for line in with_field(&args.field, &mut rng, task)? {
        println!("{line}");
    }
    Ok(0)
}

fn cmd_check(args: CheckArgs) -> Result<u8> {
    let mut rng = args.seed.rng();
    struct Check<'a>(&'a str);
    impl FieldTask for Check<'_> {
        type Output = bool;
        fn run<F: Field>(self, field: &F) -> irred::Result<bool> {
            let f = Poly::parse_text(field, self.0)?;
            if f.degree().unwrap_or(0) == 0 {
                return Err(Error::InvalidInput("constant polynomials are not tested".into()));
            }
            rabin_is_irreducible(&f.monic())
        }
    }
    if with_field(&args.field, &mut rng, Check(&args.f))? {
        println!("irreducible");
        Ok(0)
    } else {
        println!("reducible");
        Ok(EXIT_REDUCIBLE)
    }
}
