//! Command-line front end: expand one Schubert class against a minuscule
//! fundamental weight, sweep-verify a whole quotient, print per-coset
//! cancellation reports, or replay the worked Gr(3,7) example.

use clap::{Parser, ValueEnum};
use qchev::chevalley::{self, ChevCtx, SchubertExpansion};
use qchev::root_system::{Family, LieType};
use qchev::weyl::{self, WeylElem};
use qchev::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Mode {
    Expand,
    Verify,
    CancelReport,
    AppendixDemo,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "qchev",
    about = "Quantum Chevalley expansions over minuscule parabolic quotients"
)]
struct Args {
    /// Dynkin type: A, B, D or E
    #[arg(long = "type", value_name = "FAMILY")]
    family: Option<String>,

    /// Rank n
    #[arg(long)]
    rank: Option<usize>,

    /// Minuscule node k (1-based)
    #[arg(long)]
    k: Option<usize>,

    /// Reduced word for x (1-based, space separated, "e" for identity),
    /// or "all" to sweep the whole quotient
    #[arg(long, default_value = "e")]
    x: String,

    #[arg(long, value_enum, default_value_t = Mode::Expand)]
    mode: Mode,

    /// Seed for the random J-compatible reflection order; 0 is deterministic
    #[arg(long, default_value_t = 0)]
    order_seed: u64,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for sweep modes (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

const USAGE_ERR: i32 = 2;
const MISMATCH_ERR: i32 = 1;

fn main() {
    let args = Args::parse();
    std::process::exit(match run(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            USAGE_ERR
        }
    });
}

fn group_cap() -> usize {
    std::env::var("QBG_GROUP_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1_000_000)
}

fn parse_family(s: &str) -> Result<Family, Error> {
    match s {
        "A" | "a" => Ok(Family::A),
        "B" | "b" => Ok(Family::B),
        "D" | "d" => Ok(Family::D),
        "E" | "e" => Ok(Family::E),
        other => Err(Error::UnsupportedType(other.to_string())),
    }
}

fn run(args: &Args) -> Result<i32, Error> {
    if args.mode == Mode::AppendixDemo {
        return appendix_demo(args);
    }
    let (family, rank, k) = match (&args.family, args.rank, args.k) {
        (Some(f), Some(r), Some(k)) => (parse_family(f)?, r, k),
        _ => {
            eprintln!("error: --type, --rank and --k are required for this mode");
            return Ok(USAGE_ERR);
        }
    };
    if k < 1 {
        eprintln!("error: --k is 1-based");
        return Ok(USAGE_ERR);
    }
    let ctx = ChevCtx::new(LieType { family, rank }, k - 1, group_cap())?;
    let xs: Vec<WeylElem> = if args.x == "all" {
        ctx.wj.iter().map(|&i| ctx.table.elems[i].clone()).collect()
    } else {
        let word = if args.x.trim() == "e" {
            Vec::new()
        } else {
            weyl::parse_word(rank, &args.x)?
        };
        vec![ctx.element_in_quotient(&word)?]
    };

    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }

    match args.mode {
        Mode::Expand => {
            for x in &xs {
                let exp = ctx.closed_formula(x)?;
                emit(args.format, &exp);
            }
            Ok(0)
        }
        Mode::Verify => verify(&ctx, &xs, args),
        Mode::CancelReport => {
            let ord = ctx.order_for_seed(args.order_seed);
            for x in &xs {
                let report = ctx.cancellation_report(x, &ord)?;
                let word = weyl::format_word(&x.reduced_word(&ctx.rs));
                println!(
                    "x = {word} ({}): weight-carrying path cosets",
                    if report.above_s_theta {
                        "above threshold"
                    } else {
                        "below threshold"
                    }
                );
                for (v, (count, sum)) in &report.primary {
                    println!("  v = {:<20} hits {count:>3}  signed sum {sum:>3}", weyl::format_word(v));
                }
                if let Some(xset) = &report.x_set {
                    println!("  full quantum-path grouping:");
                    for (v, (count, sum)) in xset {
                        println!("  v = {:<20} hits {count:>3}  signed sum {sum:>3}", weyl::format_word(v));
                    }
                }
                match report.check() {
                    Ok(()) => println!("  structure: OK"),
                    Err(msg) => println!("  structure: VIOLATION - {msg}"),
                }
            }
            Ok(0)
        }
        Mode::AppendixDemo => unreachable!(),
    }
}

fn verify(ctx: &ChevCtx, xs: &[WeylElem], args: &Args) -> Result<i32, Error> {
    use rayon::prelude::*;
    let ord = ctx.order_for_seed(args.order_seed);
    // fan out, then report in the deterministic input order
    let results: Vec<(String, bool)> = xs
        .par_iter()
        .map(|x| {
            let word = weyl::format_word(&x.reduced_word(&ctx.rs));
            let ok = match (ctx.closed_formula(x), ctx.oracle_expansion(x, &ord)) {
                (Ok(a), Ok(b)) => a.same_terms(&b),
                _ => false,
            };
            (word, ok)
        })
        .collect();
    let mut failures = Vec::new();
    for (word, ok) in results {
        if !ok {
            failures.push(word);
        }
    }
    if failures.is_empty() {
        println!("verified {} element(s): closed formula matches path oracle", xs.len());
        Ok(0)
    } else {
        println!("MISMATCH for {} element(s):", failures.len());
        for w in failures {
            println!("  x = {w}");
        }
        Ok(MISMATCH_ERR)
    }
}

fn emit(format: Format, exp: &SchubertExpansion) {
    match format {
        Format::Text => println!("{}", chevalley::to_qk_product_string(exp)),
        Format::Json => println!("{}", chevalley::to_json(exp)),
    }
}

fn appendix_demo(args: &Args) -> Result<i32, Error> {
    let ctx = ChevCtx::new(LieType { family: Family::A, rank: 6 }, 2, group_cap())?;
    let x = ctx.element_in_quotient(&[0, 3, 2, 1, 5, 4, 3, 2])?;
    println!("Gr(3,7) walkthrough: A6, k = 3, x = 1 4 3 2 6 5 4 3");
    println!(
        "threshold element floor(s_theta) = {}, x above it: {}",
        weyl::format_word(&ctx.floor_s_theta.reduced_word(&ctx.rs)),
        ctx.above_threshold(&x)
    );
    let exp = ctx.closed_formula(&x)?;
    emit(args.format, &exp);
    let ord = ctx.order_for_seed(args.order_seed);
    let oracle = ctx.oracle_expansion(&x, &ord)?;
    if exp.same_terms(&oracle) {
        println!("path oracle agrees term by term");
        Ok(0)
    } else {
        println!("MISMATCH against path oracle");
        Ok(MISMATCH_ERR)
    }
}
