use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lawson_core::engine::{self, first_order_general_phi, render_real, FirstOrder};
use lawson_core::mpl::{li, parse_arg, MplSpec};
use lawson_core::numerics::fmt_float;
use lawson_core::omega::cache::{self, CACHE_DIR_ENV};
use lawson_core::verify::{self, VerifyOptions, SUITES};
use lawson_core::{Angle, BigComplex, Endpoint, Error, ExpansionResult, LaurentPoly, Parallelism, PrecisionConfig, Word};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "lawson", version, about = "Area expansion of Lawson surfaces and the iterated integrals behind it")]
struct Cli {
    /// Target precision in decimal digits.
    #[arg(long, global = true, default_value_t = 40)]
    precision: u32,

    /// Directory for cached Ω tables.
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,

    /// Never read or write the table cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Area coefficients α₁..α_N and the derivative polynomials.
    Expand {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "pi/4")]
        phi: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Also write the JSON report to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// A single iterated integral Ω_w from 0 to the endpoint.
    Omega {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value = "1")]
        endpoint: String,
        #[arg(long, default_value = "pi/4")]
        phi: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// A multiple polylogarithm Li_{n1..nd}(z1..zd).
    Mpl {
        #[arg(long)]
        indices: String,
        /// Comma separated: 1, -1, I, -I, e(q) for exp(iπq), or re:im.
        #[arg(long, allow_hyphen_values = true)]
        args: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run verification suites.
    Verify {
        /// closed-forms, alpha3, parity, conjectures (repeatable or comma separated).
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        /// Include the stretch checks (α₇ and the conjecture suite by default).
        #[arg(long)]
        stretch: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Inspect or empty the table cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    List,
    Clear,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Table,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PrecisionTooLow(_)
            | Error::UnknownConstant(_)
            | Error::Parse(_)
            | Error::BadWord(_)
            | Error::AngleOutOfRange(_)
            | Error::GeneralPhiOrder
            | Error::Divergent(_)
            | Error::NotConvergent(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    cfg: PrecisionConfig,
    cache: Option<PathBuf>,
    mode: Parallelism,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let cfg = PrecisionConfig::new(cli.precision)?;
    let cache = if cli.no_cache { None } else { Some(cache::cache_dir(cli.cache_dir.as_deref())) };
    let mode = if cli.sequential { Parallelism::Sequential } else { Parallelism::Auto };
    let ctx = Ctx { cfg, cache, mode };
    match cli.cmd {
        Cmd::Expand { order, phi, format, output } => expand(&ctx, order, &phi, format, output.as_deref()),
        Cmd::Omega { word, endpoint, phi, format } => omega(&ctx, &word, &endpoint, &phi, format),
        Cmd::Mpl { indices, args, format } => mpl(&ctx, &indices, &args, format),
        Cmd::Verify { suite, stretch, seed, format } => verify_cmd(&ctx, suite, stretch, seed, format),
        Cmd::Cache { action } => cache_cmd(&ctx, action, cli.cache_dir.as_deref()),
    }
}

fn parse_phi(s: &str) -> Result<Angle, Failure> {
    let phi: Angle = s.parse()?;
    phi.check_open_quadrant()?;
    Ok(phi)
}

fn expand(ctx: &Ctx, order: usize, phi: &str, format: Format, output: Option<&Path>) -> Outcome {
    if order == 0 {
        return Err(Failure::Usage("order must be at least 1".into()));
    }
    let phi = parse_phi(phi)?;
    if !phi.is_quarter_pi() {
        if order > 1 {
            return Err(Error::GeneralPhiOrder.into());
        }
        let f = first_order_general_phi(&phi, ctx.cfg.bits())?;
        return emit_first_order(ctx, &f, format, output);
    }
    let (table, cached) = cache::load_or_build(ctx.cache.as_deref(), Endpoint::One, &phi, order + 1, &ctx.cfg, ctx.mode)?;
    let key = cache::file_name(Endpoint::One, &phi, order + 1, &ctx.cfg);
    let e = engine::run_with_table(order, &table, ctx.mode)?;
    let res = e.result()?;
    let digits = ctx.cfg.target_digits as usize;

    let mut j = res.to_json(digits);
    let derivs: Vec<_> = (1..=order)
        .map(|n| {
            json!({
                "order": n,
                "a": poly_json(&e.state.a[n], digits),
                "b": poly_json(&e.state.b[n], digits),
                "c": poly_json(&e.state.c[n], digits),
                "r": fmt_float(&e.state.r[n], digits),
            })
        })
        .collect();
    j["derivatives"] = json!(derivs);
    j["tables"] = json!([{ "key": key, "cached": cached }]);
    if let Some(p) = output {
        std::fs::write(p, serde_json::to_string_pretty(&j).unwrap())?;
    }

    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&j).unwrap()),
        Format::Csv => print!("{}", alpha_csv(&res, digits)),
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "phi = {}, precision {} digits", res.phi, ctx.cfg.target_digits);
            for (k, a) in res.alphas.iter().enumerate() {
                let _ = writeln!(s, "alpha{:<2} = {}", k + 1, fmt_float(a, digits));
            }
            for n in 1..=order {
                let _ = writeln!(s, "order {}:", n);
                for (name, p) in [("a", &e.state.a[n]), ("b", &e.state.b[n]), ("c", &e.state.c[n])] {
                    let _ = writeln!(s, "  {} = {}", name, poly_text(p, digits));
                }
                let _ = writeln!(s, "  r = {}", fmt_float(&e.state.r[n], digits));
                let _ = writeln!(s, "  residual {}", fmt_float(&res.diagnostics[n - 1].worst(), 3));
            }
            print!("{}", s);
        }
    }
    Ok(true)
}

fn poly_json(p: &LaurentPoly, digits: usize) -> serde_json::Value {
    render_real(p, digits).into_iter().map(|(d, v)| json!([d, v])).collect()
}

fn poly_text(p: &LaurentPoly, digits: usize) -> String {
    let terms = render_real(p, digits);
    if terms.is_empty() {
        return "0".into();
    }
    terms.iter().map(|(d, v)| format!("({}) λ^{}", v, d)).collect::<Vec<_>>().join(" + ")
}

fn alpha_csv(res: &ExpansionResult, digits: usize) -> String {
    let mut s = String::from("order,re,im,residual\n");
    for (k, a) in res.alphas.iter().enumerate() {
        let r = res.diagnostics.get(k).map(|d| fmt_float(&d.worst(), 3)).unwrap_or_else(|| "0".into());
        let _ = writeln!(s, "{},{},0,{}", k + 1, fmt_float(a, digits), r);
    }
    s
}

fn emit_first_order(ctx: &Ctx, f: &FirstOrder, format: Format, output: Option<&Path>) -> Outcome {
    let d = ctx.cfg.target_digits as usize;
    let j = json!({
        "version": 1,
        "phi": f.phi.to_string(),
        "precision": ctx.cfg.target_digits,
        "alphas": [fmt_float(&f.alpha1, d)],
        "a": poly_json(&f.a, d),
        "b": poly_json(&f.b, d),
        "c": poly_json(&f.c, d),
        "r": fmt_float(&f.r, d),
        "theta": fmt_float(&f.theta, d),
        "mean_curvature": fmt_float(&f.mean_curvature, d),
        "willmore_slope": fmt_float(&f.willmore_slope, d),
    });
    if let Some(p) = output {
        std::fs::write(p, serde_json::to_string_pretty(&j).unwrap())?;
    }
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&j).unwrap()),
        Format::Csv => println!("order,re,im,residual\n1,{},0,0", fmt_float(&f.alpha1, d)),
        Format::Table => {
            println!("phi = {} (first-order closed forms)", f.phi);
            println!("alpha1 = {}", fmt_float(&f.alpha1, d));
            println!("a' = {}", poly_text(&f.a, d));
            println!("b' = {}", poly_text(&f.b, d));
            println!("c' = {}", poly_text(&f.c, d));
            println!("theta' = {}", fmt_float(&f.theta, d));
            println!("H' = {}", fmt_float(&f.mean_curvature, d));
            println!("W' = {}", fmt_float(&f.willmore_slope, d));
        }
    }
    Ok(true)
}

fn print_value(label: &str, z: &BigComplex, digits: usize, format: Format, extra: serde_json::Value) {
    let (re, im) = z.to_decimal(digits);
    match format {
        Format::Json => {
            let mut j = json!({ "version": 1, "re": re, "im": im });
            if let (Some(o), Some(e)) = (j.as_object_mut(), extra.as_object()) {
                for (k, v) in e {
                    o.insert(k.clone(), v.clone());
                }
            }
            println!("{}", serde_json::to_string_pretty(&j).unwrap());
        }
        Format::Csv => println!("re,im\n{},{}", re, im),
        Format::Table => println!("{} = {:.*}", label, digits, z),
    }
}

fn omega(ctx: &Ctx, word: &str, endpoint: &str, phi: &str, format: Format) -> Outcome {
    let w: Word = word.parse()?;
    let end: Endpoint = endpoint.parse()?;
    let phi = parse_phi(phi)?;
    let digits = ctx.cfg.target_digits as usize;
    let bits = ctx.cfg.bits();
    let value = if w.is_empty() {
        BigComplex::one(bits)
    } else {
        let (t, _) = cache::load_or_build(ctx.cache.as_deref(), end, &phi, w.len(), &ctx.cfg, ctx.mode)?;
        t.get(&w)?.clone()
    };
    let extra = json!({ "word": w.to_string(), "endpoint": end.to_string(), "phi": phi.to_string() });
    print_value(&format!("Omega_[{}]({})", w, end), &value, digits, format, extra);
    Ok(true)
}

fn mpl(ctx: &Ctx, indices: &str, args: &str, format: Format) -> Outcome {
    let bits = ctx.cfg.bits();
    let idx = indices
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("bad index `{}`", s))))
        .collect::<Result<Vec<_>, _>>()?;
    let zs = args.split(',').map(|s| parse_arg(s, bits)).collect::<Result<Vec<_>, _>>()?;
    let spec = MplSpec::new(idx, zs)?;
    let v = li(&spec, &ctx.cfg)?;
    let extra = json!({ "indices": indices, "args": args });
    print_value(&format!("Li_[{}]({})", indices, args), &v, ctx.cfg.target_digits as usize, format, extra);
    Ok(true)
}

fn verify_cmd(ctx: &Ctx, suites: Vec<String>, stretch: bool, seed: u64, format: Format) -> Outcome {
    let mut names: Vec<String> = suites.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    if let Some(bad) = names.iter().find(|n| !SUITES.contains(&n.as_str())) {
        return Err(Failure::Usage(format!("unknown suite `{}` (expected one of {})", bad, SUITES.join(", "))));
    }
    if names.is_empty() {
        names = SUITES.iter().filter(|s| stretch || **s != "conjectures").map(|s| s.to_string()).collect();
    }
    let mut opts = VerifyOptions::new(ctx.cfg);
    opts.seed = seed;
    opts.mode = ctx.mode;
    opts.cache_dir = ctx.cache.clone();
    opts.alpha7 = stretch;

    let mut ok = true;
    let mut reports = Vec::new();
    for n in &names {
        let r = verify::run_suite(n, &opts)?;
        if !r.stretch && !r.passed() {
            ok = false;
        }
        match format {
            Format::Table => print!("{}", r.to_table()),
            Format::Csv => {
                println!("suite,id,pass,residual");
                for c in &r.checks {
                    println!("{},{},{},{}", r.suite, c.id, c.pass, c.residual);
                }
            }
            Format::Json => reports.push(r.to_json()),
        }
    }
    if format == Format::Json {
        let j = json!({ "version": 1, "passed": ok, "reports": reports });
        println!("{}", serde_json::to_string_pretty(&j).unwrap());
    }
    Ok(ok)
}

fn cache_cmd(ctx: &Ctx, action: CacheAction, flag: Option<&Path>) -> Outcome {
    let dir = ctx.cache.clone().unwrap_or_else(|| cache::cache_dir(flag));
    match action {
        CacheAction::List => {
            let entries = cache::list(&dir)?;
            println!("{} ({} tables)", dir.display(), entries.len());
            for e in entries {
                let h = &e.header;
                println!(
                    "  z={} phi={} L={} D={}+{}  {} bytes  {}",
                    h.endpoint,
                    h.phi,
                    h.max_length,
                    h.digits,
                    h.guard_digits,
                    e.bytes,
                    e.path.file_name().and_then(|n| n.to_str()).unwrap_or("")
                );
            }
        }
        CacheAction::Clear => {
            let n = cache::clear(&dir)?;
            println!("removed {} tables from {}", n, dir.display());
        }
    }
    Ok(true)
}
