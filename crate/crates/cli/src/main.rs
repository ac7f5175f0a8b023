//! `seqc`: ordinary and symmetric complexity measures of binary sequences.
//!
//! Exit codes: 0 ok, 2 parse error, 3 precondition violated, 4 mismatch with
//! the reference tables, 5 property failure.

mod suites;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use seqc::aperiodic::{bm_profile, rational_complexity, rational_complexity_fast, RationalApproximation};
use seqc::constructions::{self, Family, FamilySpec};
use seqc::expectation::{self, ExpectationRow, Measures};
use seqc::numtheory::{self, PairMode, ReversiblePair};
use seqc::periodic;
use seqc::{reference, BigRational, Error, FiniteWord, PeriodicSequence};

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_MISMATCH: u8 = 4;
const EXIT_PROPERTY: u8 = 5;

/// Above this length `analyze` uses the lattice method for `Λ`.
const ANALYZE_ORACLE_MAX_N: usize = 48;

#[derive(Parser)]
#[command(
    name = "seqc",
    version,
    about = "Ordinary and symmetric 2-adic and linear complexity of binary sequences"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,

    /// Worker threads (default: available parallelism).
    #[arg(long, env = "SEQC_THREADS", global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// p and its reverse q both prime, p < q.
    Pp,
    /// p prime, its reverse q composite.
    Pc,
}

#[derive(Subcommand)]
enum Command {
    /// Measures of one word (or one period) and of its reversal.
    Analyze {
        /// Bits in index order ("0001"), or "nat:value/length".
        sequence: String,
        /// Treat the input as the initial vector of a T-periodic sequence.
        #[arg(long, value_name = "T")]
        periodic: Option<usize>,
        /// Comma-separated subset of rat, 2adic, lin.
        #[arg(long, default_value = "rat,2adic,lin")]
        measures: String,
    },
    /// Exact expected values over all words of each length.
    Expected {
        #[arg(long, default_value_t = 2)]
        min: usize,
        #[arg(long)]
        max: usize,
        /// Comma-separated subset of rat, 2adic, lin, linexp (or "all").
        #[arg(long, default_value = "rat,linexp")]
        measures: String,
        /// Compare the rat and linexp differences with the reference tables.
        #[arg(long)]
        check_paper: bool,
        /// Append the lower bounds M1+M2 and K1+K2 and check them.
        #[arg(long)]
        bounds: bool,
        /// Print the asymptotic comparison report instead.
        #[arg(long)]
        asymptotics: bool,
    },
    /// Base-2 reversible pairs (p, q) of primes by bit length.
    Pairs {
        /// Bit-length range "a..b" (or a single length).
        #[arg(long, default_value = "2..8")]
        bits: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Pp)]
        mode: ModeArg,
        /// Compare with the reference table for the mode.
        #[arg(long)]
        check_paper: bool,
        /// Print the count of primes with prime reversal per bit length instead.
        #[arg(long)]
        theta: bool,
    },
    /// Build a member of a sequence family and check its claimed bounds.
    Construct {
        /// intro21, theorem1, example1..example4, remark5, remark6A, remark6B.
        family: String,
        /// Parameters as key=value (T, N, k, p, q, tail).
        params: Vec<String>,
        /// "random" draws the example tail from --seed.
        #[arg(long)]
        tail: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a property suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random samples per length for oracle-equivalence.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Reduced versions of every suite plus the small reference rows.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            Error::Precondition(_) | Error::Budget(_) => EXIT_PRECONDITION,
            Error::Property(_) => EXIT_PROPERTY,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("seqc: --threads must be positive");
            return ExitCode::from(EXIT_PRECONDITION);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("seqc: {e}");
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("seqc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Analyze {
            sequence,
            periodic,
            measures,
        } => analyze(fmt, sequence, *periodic, measures),
        Command::Expected {
            min,
            max,
            measures,
            check_paper,
            bounds,
            asymptotics,
        } => {
            if *asymptotics {
                asymptotics_cmd(fmt, *min, *max)
            } else {
                expected(fmt, *min, *max, measures, *check_paper, *bounds)
            }
        }
        Command::Pairs {
            bits,
            mode,
            check_paper,
            theta,
        } => pairs(fmt, bits, *mode, *check_paper, *theta),
        Command::Construct {
            family,
            params,
            tail,
            seed,
        } => construct(fmt, family, params, tail.as_deref(), *seed),
        Command::Verify { suite, seed, samples } => {
            let mut scale = suites::Scale::full(*seed);
            if let Some(s) = samples {
                scale.oracle_samples = *s;
            }
            verify(fmt, &[suite.as_str()], scale)
        }
        Command::Selftest { seed } => selftest(fmt, *seed),
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn decimal(r: &BigRational) -> String {
    format!("{:.6}", r.to_f64().unwrap_or(f64::NAN))
}

fn approx_json(a: &RationalApproximation) -> Value {
    serde_json::to_value(a).expect("serializable")
}

fn analyze(fmt: Format, text: &str, period: Option<usize>, measures: &str) -> CliResult {
    let word = FiniteWord::parse(text)?;
    let wanted: Vec<&str> = measures.split(',').map(str::trim).filter(|m| !m.is_empty()).collect();
    if let Some(bad) = wanted.iter().find(|m| !["rat", "2adic", "lin"].contains(m)) {
        return Err(fail(
            EXIT_PARSE,
            format!("unknown measure {bad:?} (expected rat, 2adic or lin)"),
        ));
    }
    let has = |m: &str| wanted.contains(&m);
    let mut out = serde_json::Map::new();
    let mut rows: Vec<(String, String, String, String)> = Vec::new();

    if let Some(t) = period {
        if word.len() != t {
            return Err(fail(
                EXIT_PRECONDITION,
                format!(
                    "--periodic {t} needs an initial vector of length {t}, got {}",
                    word.len()
                ),
            ));
        }
        let seq = PeriodicSequence::new(word.clone())?;
        out.insert("T".into(), json!(t));
        out.insert("sequence".into(), json!(word.to_string()));
        if has("2adic") || has("rat") {
            let sym = periodic::adic_symmetric_periodic(&seq);
            rows.push((
                "connection".into(),
                sym.forward.connection.to_string(),
                sym.reverse.connection.to_string(),
                sym.min_connection.to_string(),
            ));
            rows.push((
                "2adic".into(),
                format!("{:.6}", sym.forward.lambda_bits),
                format!("{:.6}", sym.reverse.lambda_bits),
                format!("{:.6}", sym.min_lambda),
            ));
            out.insert("2adic".into(), serde_json::to_value(&sym).expect("serializable"));
        }
        if has("lin") {
            let l = periodic::linear_complexity_periodic(&seq);
            let l_rev = periodic::linear_complexity_periodic(&seq.reverse());
            rows.push(("lin".into(), l.to_string(), l_rev.to_string(), l.min(l_rev).to_string()));
            out.insert(
                "lin".into(),
                json!({"forward": l, "reverse": l_rev, "sym": l.min(l_rev)}),
            );
        }
    } else {
        if word.is_empty() {
            return Err(fail(EXIT_PARSE, "parse error at position 0: empty sequence"));
        }
        let rev = word.reverse();
        out.insert("N".into(), json!(word.len()));
        out.insert("sequence".into(), json!(word.to_string()));
        if has("rat") || has("2adic") {
            let lam = |w: &FiniteWord| {
                if w.len() <= ANALYZE_ORACLE_MAX_N {
                    rational_complexity(w)
                } else {
                    rational_complexity_fast(w)
                }
            };
            let (f, r) = (lam(&word)?, lam(&rev)?);
            let sym = (&f.norm).min(&r.norm).clone();
            if has("rat") {
                rows.push(("rat".into(), f.norm.to_string(), r.norm.to_string(), sym.to_string()));
                out.insert(
                    "rat".into(),
                    json!({"forward": approx_json(&f), "reverse": approx_json(&r), "sym": sym.to_u64().map_or_else(|| json!(sym.to_string()), |x| json!(x))}),
                );
            }
            if has("2adic") {
                let (a, b) = (f.log2_norm(), r.log2_norm());
                rows.push((
                    "2adic".into(),
                    format!("{a:.6}"),
                    format!("{b:.6}"),
                    format!("{:.6}", a.min(b)),
                ));
                out.insert("2adic".into(), json!({"forward": a, "reverse": b, "sym": a.min(b)}));
            }
        }
        if has("lin") {
            let (p, pr) = (bm_profile(&word)?, bm_profile(&rev)?);
            let (l, lr) = (p.final_complexity(), pr.final_complexity());
            rows.push(("lin".into(), l.to_string(), lr.to_string(), l.min(lr).to_string()));
            out.insert(
                "lin".into(),
                json!({"forward": l, "reverse": lr, "sym": l.min(lr), "profile": p.to_string(), "profile_rev": pr.to_string()}),
            );
        }
    }

    match fmt {
        Format::Json => print_json(&Value::Object(out)),
        Format::Tsv => {
            println!("measure\tforward\treverse\tsym");
            for (m, a, b, c) in rows {
                println!("{m}\t{a}\t{b}\t{c}");
            }
        }
    }
    Ok(())
}

fn parse_measures(text: &str) -> Result<Measures, Failure> {
    text.parse::<Measures>().map_err(Failure::from)
}

fn expected(fmt: Format, min: usize, max: usize, measures: &str, check: bool, bounds: bool) -> CliResult {
    let set = parse_measures(measures)?;
    if min < 1 || min > max || max > expectation::MAX_SWEEP_N {
        return Err(fail(
            EXIT_PRECONDITION,
            format!("need 1 <= min <= max <= {}, got {min}..{max}", expectation::MAX_SWEEP_N),
        ));
    }
    if bounds && (min < 2 || !set.rat || !set.linexp) {
        return Err(fail(
            EXIT_PRECONDITION,
            "--bounds needs min >= 2 and measures rat and linexp",
        ));
    }
    let mut header = vec!["N".to_string()];
    for (on, name) in [
        (set.rat, "rat"),
        (set.adic, "2adic"),
        (set.lin, "lin"),
        (set.linexp, "linexp"),
    ] {
        if on {
            header.extend([format!("e_{name}"), format!("e_{name}_sym"), format!("diff_{name}")]);
        }
    }
    if bounds {
        header.extend(["m1_plus_m2".into(), "k1_plus_k2".into()]);
    }
    if fmt == Format::Tsv {
        println!("{}", header.join("\t"));
    }
    let (t3, t4) = (reference::table3(), reference::table4());
    let mut mismatched: Vec<String> = Vec::new();
    let mut bound_failures: Vec<usize> = Vec::new();
    let stdout = std::io::stdout();
    for n in min..=max {
        let row = expectation::enumerate_expectations(n, set)?;
        let consts = if bounds {
            Some(expectation::proof_constants(n)?)
        } else {
            None
        };
        if let Some(c) = &consts {
            if row.rat_diff().unwrap() < c.rat_bound() || row.linexp_diff().unwrap() < c.linexp_bound() {
                bound_failures.push(n);
            }
        }
        if check {
            for (diff, table, label) in [(row.rat_diff(), &t3, "rat"), (row.linexp_diff(), &t4, "linexp")] {
                let (Some(d), Some(p)) = (diff, table.iter().find(|p| p.n == n)) else {
                    continue;
                };
                if !reference::within_tolerance(&d, &p.value()) {
                    mismatched.push(format!(
                        "N={n} {label}: computed {} printed {}",
                        reference::format_3dp(&d),
                        p.text
                    ));
                }
            }
        }
        match fmt {
            Format::Json => print_json(&row_json(&row, consts.as_ref())),
            Format::Tsv => println!("{}", row_tsv(&row, consts.as_ref())),
        }
        let _ = stdout.lock().flush();
    }
    if !bound_failures.is_empty() {
        return Err(fail(
            EXIT_PROPERTY,
            format!("lower bounds fail at N = {bound_failures:?}"),
        ));
    }
    if !mismatched.is_empty() {
        return Err(fail(
            EXIT_MISMATCH,
            format!("reference mismatch: {}", mismatched.join("; ")),
        ));
    }
    Ok(())
}

fn push_exact(cells: &mut Vec<String>, a: &Option<BigRational>, b: &Option<BigRational>) {
    if let (Some(a), Some(b)) = (a, b) {
        cells.extend([decimal(a), decimal(b), reference::format_3dp(&(a - b))]);
    }
}

fn row_tsv(row: &ExpectationRow, consts: Option<&expectation::ProofConstants>) -> String {
    let mut cells = vec![row.n.to_string()];
    push_exact(&mut cells, &row.e_rat, &row.e_rat_sym);
    if let (Some(a), Some(b)) = (row.e_2adic, row.e_2adic_sym) {
        cells.extend([format!("{a:.6}"), format!("{b:.6}"), format!("{:.6}", a - b)]);
    }
    push_exact(&mut cells, &row.e_lin, &row.e_lin_sym);
    push_exact(&mut cells, &row.e_linexp, &row.e_linexp_sym);
    if let Some(c) = consts {
        cells.extend([decimal(&c.rat_bound()), decimal(&c.linexp_bound())]);
    }
    cells.join("\t")
}

fn row_json(row: &ExpectationRow, consts: Option<&expectation::ProofConstants>) -> Value {
    let mut v = serde_json::to_value(row).expect("serializable");
    let obj = v.as_object_mut().expect("object");
    obj.retain(|_, x| !x.is_null());
    for (key, diff) in [
        ("diff_rat", row.rat_diff()),
        ("diff_lin", row.lin_diff()),
        ("diff_linexp", row.linexp_diff()),
    ] {
        if let Some(d) = diff {
            obj.insert(
                key.into(),
                json!({"exact": d.to_string(), "rounded": reference::format_3dp(&d)}),
            );
        }
    }
    if let Some(d) = row.adic_diff() {
        obj.insert("diff_2adic".into(), json!(d));
    }
    if let Some(c) = consts {
        obj.insert("proof_constants".into(), serde_json::to_value(c).expect("serializable"));
    }
    v
}

fn asymptotics_cmd(fmt: Format, min: usize, max: usize) -> CliResult {
    if min < 1 || min > max || max > expectation::MAX_SWEEP_N {
        return Err(fail(
            EXIT_PRECONDITION,
            format!("need 1 <= min <= max <= {}, got {min}..{max}", expectation::MAX_SWEEP_N),
        ));
    }
    let rows = expectation::asymptotics_report(min, max)?;
    match fmt {
        Format::Json => print_json(&json!({"log_base": 2, "rows": rows})),
        Format::Tsv => {
            println!("# logarithms are base 2 (a convention; the bounds hold for either base)");
            println!("N\te_rat\te_rat_sym\te_lin\te_lin_sym\tN/2-log2(N)\t2^(N/2)\t(e_rat-e_rat_sym)/2^(N/2)");
            for r in rows {
                println!(
                    "{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
                    r.n,
                    r.e_rat,
                    r.e_rat_sym,
                    r.e_lin,
                    r.e_lin_sym,
                    r.lin_sym_bound,
                    r.two_pow_half_n,
                    r.rat_diff_ratio
                );
            }
        }
    }
    Ok(())
}

fn parse_bits(text: &str) -> Result<(u32, u32), Failure> {
    let bad = || fail(EXIT_PARSE, format!("bit range must look like a..b, got {text:?}"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b),
        None => (text, text),
    };
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    Ok((a, b))
}

fn pairs(fmt: Format, bits: &str, mode: ModeArg, check: bool, theta: bool) -> CliResult {
    let (t_min, t_max) = parse_bits(bits)?;
    if theta {
        if !(2 <= t_min && t_min <= t_max) {
            return Err(fail(EXIT_PRECONDITION, format!("bad bit range {t_min}..{t_max}")));
        }
        let reports = (t_min..=t_max).map(numtheory::theta).collect::<Result<Vec<_>, _>>()?;
        match fmt {
            Format::Json => print_json(&reports),
            Format::Tsv => {
                println!("t\tcount\theuristic");
                for r in reports {
                    println!("{}\t{}\t{:.3}", r.t, r.count, r.heuristic);
                }
            }
        }
        return Ok(());
    }
    let mode = match mode {
        ModeArg::Pp => PairMode::PrimePrime,
        ModeArg::Pc => PairMode::PrimeComposite,
    };
    let found = numtheory::enumerate_reversible_pairs(t_min, t_max, mode)?;
    match fmt {
        Format::Json => print_json(&found),
        Format::Tsv => print!("{}", numtheory::pairs_to_tsv(&found)),
    }
    if check {
        let table = match mode {
            PairMode::PrimePrime => reference::table1(),
            PairMode::PrimeComposite => reference::table2(),
        };
        let in_range = |p: u64| (t_min..=t_max).contains(&(64 - p.leading_zeros()));
        let expected: Vec<_> = table.into_iter().filter(|r| in_range(r.0)).collect();
        let got: Vec<_> = found
            .iter()
            .map(|r: &ReversiblePair| (r.p, r.q, r.ord_p, r.ord_q))
            .collect();
        if got != expected {
            let missing: Vec<String> = expected
                .iter()
                .filter(|r| !got.contains(r))
                .map(|r| format!("{r:?}"))
                .collect();
            let extra: Vec<String> = got
                .iter()
                .filter(|r| !expected.contains(r))
                .map(|r| format!("{r:?}"))
                .collect();
            return Err(fail(
                EXIT_MISMATCH,
                format!(
                    "reference mismatch: rows only in the table: [{}]; rows only computed: [{}]",
                    missing.join(", "),
                    extra.join(", ")
                ),
            ));
        }
    }
    Ok(())
}

fn construct(fmt: Format, family: &str, params: &[String], tail: Option<&str>, seed: u64) -> CliResult {
    let family: Family = family.parse()?;
    let mut pairs = constructions::parse_pairs(params)?;
    match tail {
        None => {}
        Some("random") => {
            if !family.has_tail() {
                return Err(fail(EXIT_PRECONDITION, format!("{family} has no tail")));
            }
            let get = |key: &str| -> Result<usize, Failure> {
                pairs
                    .iter()
                    .rev()
                    .find(|(k, _)| k == key)
                    .and_then(|(_, v)| v.parse().ok())
                    .ok_or_else(|| fail(EXIT_PRECONDITION, format!("--tail random needs {key}")))
            };
            let (n, k) = (get("N")?, get("k")?);
            let len = n
                .checked_sub(k + 1)
                .ok_or_else(|| fail(EXIT_PRECONDITION, "k must be below N"))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bits: String = (0..len).map(|_| if rng.gen::<bool>() { '1' } else { '0' }).collect();
            pairs.push(("tail".into(), bits));
        }
        Some(bits) => pairs.push(("tail".into(), bits.to_string())),
    }
    let spec = FamilySpec::from_pairs(family, &pairs)?;
    let report = constructions::verify_family(&spec)?;
    match fmt {
        Format::Json => print_json(&report),
        Format::Tsv => {
            println!("family\t{}", report.family);
            println!("sequence\t{}", report.sequence);
            for (k, v) in &report.values {
                println!("{k}\t{v}");
            }
            for c in &report.claims {
                println!("claim\t{}\t{}", c.claim, if c.holds { "pass" } else { "FAIL" });
            }
        }
    }
    if !report.all_hold {
        let failed: Vec<&str> = report
            .claims
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.claim.as_str())
            .collect();
        return Err(fail(EXIT_PROPERTY, format!("claims failed: {}", failed.join("; "))));
    }
    Ok(())
}

fn verify(fmt: Format, names: &[&str], scale: suites::Scale) -> CliResult {
    let mut first_failure: Option<String> = None;
    for name in names {
        let rep = suites::run(name, scale)?;
        match fmt {
            Format::Json => print_json(&rep),
            Format::Tsv => {
                println!(
                    "{}\t{}\t{} checks\t{} failures",
                    rep.suite,
                    if rep.passed { "pass" } else { "FAIL" },
                    rep.checks,
                    rep.failures.len()
                );
                for f in rep.failures.iter().take(20) {
                    println!("  {f}");
                }
            }
        }
        if first_failure.is_none() {
            first_failure = rep.failures.first().map(|f| format!("{}: {f}", rep.suite));
        }
    }
    match first_failure {
        Some(f) => Err(fail(EXIT_PROPERTY, f)),
        None => Ok(()),
    }
}

fn selftest(fmt: Format, seed: u64) -> CliResult {
    verify(fmt, &suites::SUITES, suites::Scale::quick(seed))?;
    let t3 = expectation::table3(10)?;
    let t4 = expectation::table4(10)?;
    let mut bad = expectation::mismatches(&t3, &reference::table3());
    bad.extend(expectation::mismatches(&t4, &reference::table4()));
    if !bad.is_empty() {
        return Err(fail(EXIT_MISMATCH, format!("reference rows differ: {bad:?}")));
    }
    if fmt == Format::Tsv {
        println!("tables\tpass\tN <= 10");
    }
    Ok(())
}
