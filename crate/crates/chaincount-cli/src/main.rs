//! `chaincount` — count independent sets and cliques in cocomparability,
//! comparability, and permutation graphs.
//!
//! Subcommands: `count` (and its `profile` shorthand), `verify` against the
//! brute-force oracle, `generate` for sample instances, and `bench` for the
//! doubling-series scaling report. Results go to standard output as plain
//! decimal lines; diagnostics go to standard error.

use anyhow::{anyhow, bail, Context, Result};
use chaincount::bench::doubling_series;
use chaincount::count::{
    count_is, count_is_fast, count_is_fast_table, count_is_table, count_maximal_is,
    count_maximal_is_by_size, count_variant, permutation_counts, Count, CountMode, CountResult,
    SetClass, Variant,
};
use chaincount::graph::{validate_orientation, Graph, PermutationModel};
use chaincount::oracle::{
    enumerate_is, random_permutation, random_poset, GeneratorSpec, MAX_ENUM_N,
};
use chaincount::poset::Poset;
use chaincount::textio::{
    detect_format, parse_graph, parse_permutation, parse_poset, write_graph, write_permutation,
    write_poset, Format,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::io::{Read, Write};
use std::process::ExitCode;

/// Writes one result line to stdout. A consumer that closed the pipe early
/// (`chaincount ... | head`) ends the run quietly instead of panicking.
fn outln(args: std::fmt::Arguments) {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let outcome = lock.write_fmt(args).and_then(|()| lock.write_all(b"\n"));
    if let Err(e) = outcome {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

macro_rules! outln {
    ($($arg:tt)*) => { outln(format_args!($($arg)*)) };
}

#[derive(Parser)]
#[command(name = "chaincount", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count independent sets or cliques of one instance.
    Count(CountArgs),
    /// Shorthand for `count --variant profile`.
    Profile(ProfileArgs),
    /// Cross-check the engine against brute-force enumeration.
    Verify(VerifyArgs),
    /// Emit a random instance in one of the text formats.
    Generate(GenerateArgs),
    /// Time the counting kernels on a doubling series of instances.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Poset,
    Perm,
    Graph,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Poset => Format::Poset,
            FormatArg::Perm => Format::Permutation,
            FormatArg::Graph => Format::Graph,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    IndependentSets,
    Cliques,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    /// Every set, the empty one included.
    All,
    /// Sets maximal under inclusion.
    Maximal,
    /// Sets of size exactly k (requires --k).
    BySize,
    /// The whole size distribution, one `k count` line per size.
    Profile,
    /// The independence polynomial evaluated at --x.
    Polynomial,
    /// The independence number and the number of maximum sets.
    Alpha,
}

#[derive(Args)]
struct CountArgs {
    /// Input path; `-` reads standard input.
    input: String,
    /// Input format; inferred from the header keyword when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, value_enum, default_value = "independent-sets")]
    target: Target,
    #[arg(long, value_enum, default_value = "all")]
    variant: VariantArg,
    /// Set size for --variant by-size.
    #[arg(long)]
    k: Option<usize>,
    /// Evaluation point for --variant polynomial: an integer or `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Count modulo this odd machine-word value instead of exactly.
    #[arg(long = "mod", value_name = "M")]
    modulus: Option<u64>,
    /// Subtract the empty set from all-sets totals.
    #[arg(long)]
    exclude_empty: bool,
    /// Run the full (quadratic) input cross-validation instead of spot checks.
    #[arg(long)]
    validate: bool,
}

#[derive(Args)]
struct ProfileArgs {
    /// Input path; `-` reads standard input.
    input: String,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, value_enum, default_value = "independent-sets")]
    target: Target,
    #[arg(long = "mod", value_name = "M")]
    modulus: Option<u64>,
    #[arg(long)]
    exclude_empty: bool,
    #[arg(long)]
    validate: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Input path; omit to verify a generated instance (see --n).
    input: Option<String>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Size of the generated poset when no input file is given.
    #[arg(long)]
    n: Option<usize>,
    /// Pre-closure arc density of the generated poset.
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "poset")]
    format: FormatArg,
    #[arg(long)]
    n: usize,
    /// Pre-closure arc density (poset and graph formats).
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    /// Largest chain/antichain size in the doubling series.
    #[arg(long, default_value_t = 80_000)]
    n: usize,
    /// Modulus for the timed counting calls.
    #[arg(
        long = "mod",
        value_name = "M",
        default_value_t = 0xffff_ffff_ffff_ffc5
    )]
    modulus: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Count(args) => cmd_count(args).map(|_| ExitCode::SUCCESS),
        Command::Profile(args) => cmd_count(CountArgs {
            input: args.input,
            format: args.format,
            target: args.target,
            variant: VariantArg::Profile,
            k: None,
            x: None,
            modulus: args.modulus,
            exclude_empty: args.exclude_empty,
            validate: args.validate,
        })
        .map(|_| ExitCode::SUCCESS),
        Command::Verify(args) => cmd_verify(args),
        Command::Generate(args) => cmd_generate(args).map(|_| ExitCode::SUCCESS),
        Command::Bench(args) => cmd_bench(args).map(|_| ExitCode::SUCCESS),
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn resolve_format(text: &str, requested: Option<FormatArg>) -> Result<Format> {
    let detected = detect_format(text);
    match (requested.map(Format::from), detected) {
        (Some(f), Some(d)) if f != d => {
            bail!("input header says {:?} but --format asked for {:?}", d, f)
        }
        (Some(f), _) => Ok(f),
        (None, Some(d)) => Ok(d),
        (None, None) => bail!("unrecognized input header; expected poset, perm, or graph"),
    }
}

fn count_mode(modulus: Option<u64>) -> Result<CountMode> {
    match modulus {
        None => Ok(CountMode::Exact),
        Some(m) if m.is_multiple_of(2) => bail!("--mod must be odd, got {m}"),
        Some(m) => Ok(CountMode::Modular(m)),
    }
}

fn parse_point(text: &str) -> Result<BigRational> {
    let make = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| anyhow!("--x expects an integer or p/q fraction, got {text:?}"))
    };
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(make(text)?)),
        Some((p, q)) => {
            let denom = make(q)?;
            if num_traits::Zero::is_zero(&denom) {
                bail!("--x has a zero denominator");
            }
            Ok(BigRational::new(make(p)?, denom))
        }
    }
}

fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Resolves the CLI variant into an engine variant plus the post-processing
/// it needs; `n` is the instance size.
fn engine_variant(args: &CountArgs, n: usize) -> Result<Variant> {
    match args.variant {
        VariantArg::All => Ok(Variant::All),
        VariantArg::Maximal => Ok(Variant::Maximal),
        VariantArg::BySize => {
            let k = args
                .k
                .ok_or_else(|| anyhow!("--variant by-size requires --k"))?;
            Ok(Variant::BySize(k))
        }
        VariantArg::Profile | VariantArg::Polynomial | VariantArg::Alpha => Ok(Variant::BySize(n)),
    }
}

fn render(args: &CountArgs, result: &CountResult) -> Result<Vec<String>> {
    let one = |c: &Count| -> Count {
        let mut c = c.clone();
        if args.exclude_empty {
            let mode = match &c {
                Count::Exact(_) => CountMode::Exact,
                Count::Mod { modulus, .. } => CountMode::Modular(*modulus),
            };
            c -= &Count::one(mode);
        }
        c
    };
    match args.variant {
        VariantArg::All => Ok(vec![
            one(result.as_total().expect("total variant")).to_string()
        ]),
        VariantArg::Maximal => Ok(vec![result.as_total().expect("total variant").to_string()]),
        VariantArg::BySize => {
            let profile = result.as_profile().expect("profile variant");
            let k = args.k.expect("validated earlier");
            let c = profile.count_of_size(k);
            Ok(vec![if k == 0 { one(c) } else { c.clone() }.to_string()])
        }
        VariantArg::Profile => {
            let profile = result.as_profile().expect("profile variant");
            Ok(profile
                .counts()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let c = if i == 0 { one(c) } else { c.clone() };
                    format!("{i} {c}")
                })
                .collect())
        }
        VariantArg::Polynomial => {
            let x = parse_point(
                args.x
                    .as_deref()
                    .ok_or_else(|| anyhow!("--variant polynomial requires --x"))?,
            )?;
            let profile = result.as_profile().expect("profile variant");
            let mut value = profile.evaluate(&x).map_err(|_| {
                anyhow!(
                    "unsupported combination: polynomial evaluation needs exact mode, not --mod"
                )
            })?;
            if args.exclude_empty {
                value -= BigRational::one();
            }
            Ok(vec![format_rational(&value)])
        }
        VariantArg::Alpha => {
            let profile = result.as_profile().expect("profile variant");
            if profile.counts().iter().any(|c| c.as_biguint().is_none()) {
                bail!("unsupported combination: alpha needs exact mode, not --mod");
            }
            let (alpha, count) = profile.alpha_and_maximum_count();
            Ok(vec![
                format!("alpha {alpha}"),
                format!("maximum_count {count}"),
            ])
        }
    }
}

/// Counts on one poset, preferring the edge side when it is the smaller one.
fn run_poset_variant(
    p: &Poset,
    variant: Variant,
    mode: CountMode,
    validate: bool,
) -> Result<CountResult> {
    let le = p.linear_extension();
    if validate {
        p.check_invariants()
            .map_err(|e| anyhow!("invariant check failed: {e}"))?;
    }
    if variant == Variant::All && p.incomparable_pairs() <= p.comparable_pairs() {
        let g = Graph::incomparability_of(p);
        if validate && !validate_orientation(&g, p)? {
            bail!("incomparability graph does not match the poset");
        }
        return Ok(CountResult::Total(count_is_fast(&g, p, &le, mode)?));
    }
    Ok(count_variant(p, &le, variant, mode)?)
}

fn cmd_count(args: CountArgs) -> Result<()> {
    let text = read_input(&args.input)?;
    let format = resolve_format(&text, args.format)?;
    let mode = count_mode(args.modulus)?;

    let labeled: Vec<(Option<&str>, Vec<String>)> = match format {
        Format::Graph => bail!(
            "unsupported combination: counting needs a poset or permutation input; \
             bare graphs are accepted only by `verify`"
        ),
        Format::Poset => {
            let p = parse_poset(&text).map_err(|e| anyhow!("{}: {e}", args.input))?;
            let variant = engine_variant(&args, p.n())?;
            let result = run_poset_variant(&p, variant, mode, args.validate)?;
            let lines = render(&args, &result)?;
            match args.target {
                Target::Both => vec![
                    (Some("independent_sets"), lines.clone()),
                    (Some("cliques"), lines),
                ],
                _ => vec![(None, lines)],
            }
        }
        Format::Permutation => {
            let pi = parse_permutation(&text).map_err(|e| anyhow!("{}: {e}", args.input))?;
            let model = PermutationModel::new(pi)?;
            if args.validate && !validate_orientation(model.graph(), model.is_poset())? {
                bail!("permutation model failed validation");
            }
            let variant = engine_variant(&args, model.n())?;
            match args.target {
                Target::IndependentSets => {
                    let result = run_poset_variant(model.is_poset(), variant, mode, false)?;
                    vec![(None, render(&args, &result)?)]
                }
                Target::Cliques => {
                    let result = run_poset_variant(model.clique_poset(), variant, mode, false)?;
                    vec![(None, render(&args, &result)?)]
                }
                Target::Both => {
                    let (is, cliques) = permutation_counts(&model, variant, mode)?;
                    vec![
                        (Some("independent_sets"), render(&args, &is)?),
                        (Some("cliques"), render(&args, &cliques)?),
                    ]
                }
            }
        }
    };

    for (label, lines) in labeled {
        for line in lines {
            match label {
                Some(l) => outln!("{l} {line}"),
                None => outln!("{line}"),
            }
        }
    }
    Ok(())
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let spec = GeneratorSpec {
        n: args.n,
        density: args.density,
        seed: args.seed,
    };
    let text = match args.format {
        FormatArg::Poset => write_poset(&random_poset(&spec)),
        FormatArg::Perm => write_permutation(&random_permutation(&spec)),
        FormatArg::Graph => write_graph(&Graph::incomparability_of(&random_poset(&spec))),
    };
    for line in text.lines() {
        outln!("{line}");
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    if args.modulus.is_multiple_of(2) {
        bail!("--mod must be odd, got {}", args.modulus);
    }
    eprintln!("# modulus {}", args.modulus);
    for p in doubling_series(args.n, args.modulus, args.seed) {
        outln!(
            "{} n={} mstar={} size={} reps={} ms_per_count={:.4} residue={}",
            p.family,
            p.n,
            p.m_star,
            p.size,
            p.reps,
            p.seconds * 1e3,
            p.residue
        );
    }
    Ok(())
}

struct Checker {
    failures: usize,
    prefix: &'static str,
}

impl Checker {
    fn new() -> Checker {
        Checker {
            failures: 0,
            prefix: "",
        }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            outln!("PASS {}{name}", self.prefix);
        } else {
            outln!("FAIL {}{name}: {}", self.prefix, detail());
            self.failures += 1;
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let mut checker = Checker::new();
    match &args.input {
        Some(path) => {
            let text = read_input(path)?;
            match resolve_format(&text, args.format)? {
                Format::Poset => {
                    let p = parse_poset(&text).map_err(|e| anyhow!("{path}: {e}"))?;
                    verify_poset(&p, &mut checker)?;
                }
                Format::Permutation => {
                    let pi = parse_permutation(&text).map_err(|e| anyhow!("{path}: {e}"))?;
                    let model = PermutationModel::new(pi)?;
                    checker.prefix = "is_side.";
                    verify_poset(model.is_poset(), &mut checker)?;
                    checker.prefix = "clique_side.";
                    verify_poset(model.clique_poset(), &mut checker)?;
                }
                Format::Graph => {
                    let g = parse_graph(&text).map_err(|e| anyhow!("{path}: {e}"))?;
                    verify_graph_oracle(&g, &mut checker)?;
                }
            }
        }
        None => {
            let n = args.n.ok_or_else(|| {
                anyhow!("verify needs an input file or --n for a generated poset")
            })?;
            let spec = GeneratorSpec {
                n,
                density: args.density,
                seed: args.seed,
            };
            verify_poset(&random_poset(&spec), &mut checker)?;
        }
    }
    Ok(if checker.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Engine-versus-oracle checks for one poset instance.
fn verify_poset(p: &Poset, checker: &mut Checker) -> Result<()> {
    if p.n() > MAX_ENUM_N {
        bail!(
            "instance has {} elements; oracle verification is capped at {MAX_ENUM_N}",
            p.n()
        );
    }
    let g = Graph::incomparability_of(p);
    let le = p.linear_extension();
    let ep = p.cover_relation();
    let mode = CountMode::Exact;

    let all = enumerate_is(&g, SetClass::All)?;
    let maximal = enumerate_is(&g, SetClass::Maximal)?;

    let engine_all = count_is(p, &le, mode)?;
    checker.check("independent_sets", engine_all == all.total, || {
        format!("engine {engine_all} oracle {}", all.total)
    });

    let engine_maximal = count_maximal_is(&ep, &le, mode)?;
    checker.check(
        "maximal_independent_sets",
        engine_maximal == maximal.total,
        || format!("engine {engine_maximal} oracle {}", maximal.total),
    );

    let profile = count_variant(p, &le, Variant::BySize(p.n()), mode)?;
    let profile = profile.as_profile().expect("by-size yields a profile");
    let zero = Count::exact(0);
    let profile_ok =
        (0..=p.n()).all(|i| profile.count_of_size(i) == all.by_size.get(i).unwrap_or(&zero));
    checker.check("size_profile", profile_ok, || "profile mismatch".into());

    let mprofile = count_maximal_is_by_size(&ep, &le, p.n(), mode)?;
    let mprofile_ok =
        (0..=p.n()).all(|i| mprofile.count_of_size(i) == maximal.by_size.get(i).unwrap_or(&zero));
    checker.check("maximal_size_profile", mprofile_ok, || {
        "profile mismatch".into()
    });

    let direct = count_is_table(p, &le, mode)?;
    let fast = count_is_fast_table(&g, p, &le, mode)?;
    checker.check("prefix_sum_table", direct == fast, || {
        "tables differ".into()
    });

    let (alpha, max_count) = profile.alpha_and_maximum_count();
    let oracle_alpha = all.by_size.len() - 1;
    let oracle_count = all.by_size.last().expect("by_size is never empty");
    checker.check(
        "alpha",
        alpha == oracle_alpha && &max_count == oracle_count,
        || format!("engine ({alpha}, {max_count}) oracle ({oracle_alpha}, {oracle_count})"),
    );

    let at_one = profile.evaluate_at_integer(1)?;
    let at_zero = profile.evaluate_at_integer(0)?;
    checker.check(
        "polynomial",
        at_one
            == BigRational::from_integer(BigInt::from(
                engine_all.as_biguint().expect("exact mode").clone(),
            ))
            && at_zero == BigRational::one(),
        || format!("P(1) = {at_one}, P(0) = {at_zero}"),
    );
    Ok(())
}

/// Oracle self-consistency checks for a bare graph (no orientation, so the
/// engine cannot run).
fn verify_graph_oracle(g: &Graph, checker: &mut Checker) -> Result<()> {
    if g.n() > MAX_ENUM_N {
        bail!(
            "instance has {} vertices; oracle verification is capped at {MAX_ENUM_N}",
            g.n()
        );
    }
    let all = enumerate_is(g, SetClass::All)?;
    let maximal = enumerate_is(g, SetClass::Maximal)?;

    let sums_ok = |r: &chaincount::oracle::EnumerationResult| {
        let mut sum = Count::exact(0);
        for c in &r.by_size {
            sum += c;
        }
        sum == r.total
    };
    checker.check(
        "totals_match_size_sums",
        sums_ok(&all) && sums_ok(&maximal),
        || "by-size sums disagree with totals".into(),
    );

    let subset_ok = match (&all.sets, &maximal.sets) {
        (Some(a), Some(m)) => m.iter().all(|s| a.contains(s)),
        _ => true,
    };
    checker.check("maximal_sets_are_independent", subset_ok, || {
        "a maximal set is missing from the full enumeration".into()
    });

    let no_supersets = match &maximal.sets {
        Some(sets) => sets
            .iter()
            .all(|s| (0..g.n()).all(|v| s.contains(&v) || s.iter().any(|&u| g.has_edge(u, v)))),
        None => true,
    };
    checker.check("maximal_sets_admit_no_extension", no_supersets, || {
        "an enumerated maximal set can be extended".into()
    });
    Ok(())
}
