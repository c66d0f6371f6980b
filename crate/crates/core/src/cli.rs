//! The `multiseg` command-line front end.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 domain error (and I/O or
//! cache failures), 3 resource bound exceeded, 4 invariant violation. Code 4
//! also writes `multiseg-repro.json` into `--repro-dir` (default: the current
//! directory) so the failing invocation can be replayed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::jacquet::{jacquet_ladder, jacquet_ladder_all};
use crate::multiplicity::{composition_candidates_with, conjecture_scan, JacquetMultiplicity, Verdict};
use crate::ring::{resolve_linked, resolve_linked_by};
use crate::segments::{Multisegment, Segment};
use crate::width::{is_ladder, min_ladder_cover, width_bruteforce, width_chain, BRUTEFORCE_BOUND};

#[cfg(feature = "kl-oracle")]
use crate::kl::{KlEngine, KlOracle};

const REPRO_FILE: &str = "multiseg-repro.json";

#[derive(Parser, Debug)]
#[command(name = "multiseg", version, about = "Multisegment and ladder-representation calculator")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Directory of the persistent Kazhdan–Lusztig cache (else $MULTISEG_CACHE_DIR).
    #[arg(long, global = true, value_name = "PATH")]
    pub cache_dir: Option<PathBuf>,

    /// Largest support size handled by exact computations.
    #[arg(long, global = true, value_name = "N")]
    pub max_support: Option<u32>,

    /// Where to write the reproduction file on an invariant violation.
    #[arg(long, global = true, value_name = "PATH")]
    pub repro_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Width (longest containment chain).
    Width { multisegment: String },
    /// A minimal decomposition into ladders.
    Cover { multisegment: String },
    /// Whether the multisegment is a ladder.
    LadderCheck { multisegment: String },
    /// Jacquet module terms of a ladder, for one cut or all of them.
    Jacquet {
        multisegment: String,
        /// Degree of the left factor; all cuts when omitted.
        #[arg(long)]
        cut: Option<u32>,
    },
    /// Multiplicity of σ_⊗ (σ = L(n)) in the Jacquet module of L(m1) × L(m2).
    Multjacquet { n: String, m1: String, m2: String },
    /// Candidate constituents of L(m1) × L(m2).
    Candidates {
        m1: String,
        m2: String,
        /// Drop candidates wider than this.
        #[arg(long, default_value_t = crate::multiplicity::DEFAULT_WIDTH_CAP)]
        width_cap: usize,
        /// Compare against the exact decomposition.
        #[arg(long)]
        exact: bool,
    },
    /// Decomposition of L(m1) × L(m2): candidates, or exact with --exact.
    Decompose {
        m1: String,
        m2: String,
        /// Use Kazhdan–Lusztig polynomials.
        #[arg(long)]
        exact: bool,
    },
    /// Check one instance of the interleaved two-ladder prediction.
    Conjecture {
        /// Increasing begin points, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<i32>,
        /// Increasing end points, comma separated, same count as --a.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        b: Vec<i32>,
        /// Also compute the exact decomposition and give a verdict.
        #[arg(long)]
        exact: bool,
    },
    /// Kazhdan–Lusztig polynomial P_{u,v} (one-line notation).
    Kl { u: String, v: String },
    /// Randomised consistency checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
    /// Run VERB on every line of FILE (whitespace-separated arguments).
    Batch { file: PathBuf, verb: String },
}

/// Grammar: `0` or `[a,b]+[c,d]+…`; whitespace is ignored.
pub fn parse_multisegment(s: &str) -> Result<Multisegment> {
    s.parse()
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                1
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    let ctx = Context::new(&cli);
    let result = match &cli.command {
        Command::Batch { file, verb } => batch(&ctx, file, verb),
        command => execute(&ctx, command),
    };
    let result = result.and_then(|report| ctx.flush().map(|_| report));

    match result {
        Ok(report) => {
            let _ = emit(out, &report, cli.json);
            match report.violation {
                Some(message) => {
                    let _ = writeln!(err, "invariant violation: {message}");
                    dump_repro(&ctx, &argv, &message, err);
                    4
                }
                None => 0,
            }
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": error_json(&e) }));
            }
            let _ = writeln!(err, "error: {e}");
            if let Error::Invariant(message) = &e {
                dump_repro(&ctx, &argv, message, err);
            }
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Usage(_) => 1,
        Error::Domain(_) | Error::Io(_) | Error::Cache(_) => 2,
        Error::Resource(_) => 3,
        Error::Invariant(_) => 4,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::Usage(_) => "usage",
        Error::Domain(_) => "domain",
        Error::Resource(_) => "resource",
        Error::Invariant(_) => "invariant",
        Error::Io(_) => "io",
        Error::Cache(_) => "cache",
    }
}

fn error_json(e: &Error) -> Value {
    json!({ "kind": error_kind(e), "message": e.to_string() })
}

/// Text and JSON renderings of one result. `violation` marks a completed
/// run that nevertheless found an invariant failure.
struct Report {
    text: String,
    json: Value,
    violation: Option<String>,
}

impl Report {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Report {
            text: text.into(),
            json,
            violation: None,
        }
    }
}

fn emit(out: &mut dyn Write, report: &Report, as_json: bool) -> std::io::Result<()> {
    if as_json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("serialisable"))
    } else if report.text.is_empty() || report.text.ends_with('\n') {
        write!(out, "{}", report.text)
    } else {
        writeln!(out, "{}", report.text)
    }
}

fn dump_repro(ctx: &Context, argv: &[OsString], message: &str, err: &mut dyn Write) {
    let dir = ctx.repro_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    let path = dir.join(REPRO_FILE);
    let body = json!({
        "argv": argv.iter().map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>(),
        "error": message,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let written = std::fs::create_dir_all(&dir)
        .and_then(|_| std::fs::write(&path, serde_json::to_string_pretty(&body).expect("serialisable")));
    match written {
        Ok(()) => {
            let _ = writeln!(err, "reproduction written to {}", path.display());
        }
        Err(e) => {
            let _ = writeln!(err, "could not write {}: {e}", path.display());
        }
    }
}

struct Context {
    cache_dir: Option<PathBuf>,
    max_support: Option<u32>,
    repro_dir: Option<PathBuf>,
    multiplicity: JacquetMultiplicity,
    #[cfg(feature = "kl-oracle")]
    oracle: OnceLock<std::result::Result<KlOracle, Error>>,
    #[cfg(not(feature = "kl-oracle"))]
    oracle: OnceLock<()>,
}

impl Context {
    fn new(cli: &Cli) -> Self {
        Context {
            cache_dir: cli.cache_dir.clone(),
            max_support: cli.max_support,
            repro_dir: cli.repro_dir.clone(),
            multiplicity: JacquetMultiplicity::new(),
            oracle: OnceLock::new(),
        }
    }

    #[cfg(feature = "kl-oracle")]
    fn oracle(&self) -> Result<&KlOracle> {
        self.oracle
            .get_or_init(|| {
                let engine = KlEngine::from_config(self.cache_dir.as_deref())?;
                let oracle = KlOracle::new(engine);
                Ok(match self.max_support {
                    Some(n) => oracle.with_max_support(n),
                    None => oracle,
                })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    #[cfg(feature = "kl-oracle")]
    fn flush(&self) -> Result<()> {
        match self.oracle.get() {
            Some(Ok(oracle)) => oracle.flush(),
            _ => Ok(()),
        }
    }

    #[cfg(not(feature = "kl-oracle"))]
    fn flush(&self) -> Result<()> {
        let _ = (&self.cache_dir, &self.max_support, &self.oracle);
        Ok(())
    }
}

#[cfg(not(feature = "kl-oracle"))]
fn no_oracle<T>() -> Result<T> {
    Err(Error::Usage("exact computations need the kl-oracle feature".into()))
}

fn strings(ms: &[Multisegment]) -> Vec<String> {
    ms.iter().map(Multisegment::to_string).collect()
}

fn execute(ctx: &Context, command: &Command) -> Result<Report> {
    match command {
        Command::Width { multisegment } => {
            let m = parse_multisegment(multisegment)?;
            let w = width_chain(&m);
            Ok(Report::new(w.to_string(), json!({ "multisegment": m.to_string(), "width": w })))
        }
        Command::Cover { multisegment } => {
            let m = parse_multisegment(multisegment)?;
            let cover = min_ladder_cover(&m);
            let mut text = format!("width {}", cover.len());
            for part in &cover.parts {
                write!(text, "\n{part}").unwrap();
            }
            Ok(Report::new(
                text,
                json!({ "multisegment": m.to_string(), "width": cover.len(), "cover": strings(&cover.parts) }),
            ))
        }
        Command::LadderCheck { multisegment } => {
            let m = parse_multisegment(multisegment)?;
            let ladder = is_ladder(&m);
            Ok(Report::new(ladder.to_string(), json!({ "multisegment": m.to_string(), "ladder": ladder })))
        }
        Command::Jacquet { multisegment, cut } => {
            let m = parse_multisegment(multisegment)?;
            let terms = match cut {
                Some(d) => jacquet_ladder(&m, *d)?,
                None => jacquet_ladder_all(&m)?,
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            for t in &terms {
                let d = t.left.degree();
                writeln!(text, "d={d}: {} ⊗ {}", t.left, t.right).unwrap();
                rows.push(json!({
                    "cut": d,
                    "left": t.left.to_string(),
                    "right": t.right.to_string(),
                    "multiplicity": t.multiplicity,
                }));
            }
            Ok(Report::new(text, json!({ "multisegment": m.to_string(), "terms": rows })))
        }
        Command::Multjacquet { n, m1, m2 } => {
            let (n, m1, m2) = (parse_multisegment(n)?, parse_multisegment(m1)?, parse_multisegment(m2)?);
            let k = ctx.multiplicity.compute(&n, &m1, &m2)?;
            Ok(Report::new(
                k.to_string(),
                json!({ "n": n.to_string(), "m1": m1.to_string(), "m2": m2.to_string(), "multiplicity": k }),
            ))
        }
        Command::Candidates {
            m1,
            m2,
            width_cap,
            exact,
        } => {
            let (m1, m2) = (parse_multisegment(m1)?, parse_multisegment(m2)?);
            let cands = composition_candidates_with(&ctx.multiplicity, &m1, &m2, *width_cap)?;
            let mut text = strings(&cands).join("\n");
            let mut body = json!({
                "m1": m1.to_string(),
                "m2": m2.to_string(),
                "width_cap": width_cap,
                "candidates": strings(&cands),
            });
            if *exact {
                let product = exact_product(ctx, &m1, &m2)?;
                let constituents: Vec<Multisegment> = product.terms().map(|(m, _)| m.clone()).collect();
                let matches = constituents == cands;
                write!(text, "\nexact: {product}\ncandidates exact: {matches}").unwrap();
                body["exact"] = serde_json::to_value(&product).expect("serialisable");
                body["candidates_exact"] = json!(matches);
            }
            Ok(Report::new(text, body))
        }
        Command::Decompose { m1, m2, exact } => {
            let (m1, m2) = (parse_multisegment(m1)?, parse_multisegment(m2)?);
            if *exact {
                let product = exact_product(ctx, &m1, &m2)?;
                let mut body = serde_json::to_value(&product).expect("serialisable");
                body["m1"] = json!(m1.to_string());
                body["m2"] = json!(m2.to_string());
                body["exact"] = json!(true);
                Ok(Report::new(product.to_string(), body))
            } else {
                let cands = composition_candidates_with(
                    &ctx.multiplicity,
                    &m1,
                    &m2,
                    crate::multiplicity::DEFAULT_WIDTH_CAP,
                )?;
                let text = cands.iter().map(|m| format!("L({m})")).collect::<Vec<_>>().join(", ");
                Ok(Report::new(
                    format!("candidates: {text}"),
                    json!({ "m1": m1.to_string(), "m2": m2.to_string(), "exact": false, "candidates": strings(&cands) }),
                ))
            }
        }
        Command::Conjecture { a, b, exact } => conjecture(ctx, a, b, *exact),
        Command::Kl { u, v } => kl(ctx, u, v),
        Command::Selftest { seed, cases } => selftest(ctx, *seed, *cases),
        Command::Batch { .. } => Err(Error::Usage("batch files cannot nest".into())),
    }
}

#[cfg(feature = "kl-oracle")]
fn exact_product(ctx: &Context, m1: &Multisegment, m2: &Multisegment) -> Result<crate::ring::RingElement> {
    ctx.oracle()?.multiply_irreducibles(m1, m2)
}

#[cfg(not(feature = "kl-oracle"))]
fn exact_product(_: &Context, _: &Multisegment, _: &Multisegment) -> Result<crate::ring::RingElement> {
    no_oracle()
}

fn conjecture(ctx: &Context, a: &[i32], b: &[i32], exact: bool) -> Result<Report> {
    #[cfg(feature = "kl-oracle")]
    let oracle: Option<&dyn crate::multiplicity::DecompositionOracle> =
        if exact { Some(ctx.oracle()?) } else { None };
    #[cfg(not(feature = "kl-oracle"))]
    let oracle: Option<&dyn crate::multiplicity::DecompositionOracle> = if exact {
        return no_oracle();
    } else {
        let _ = ctx;
        None
    };

    let report = conjecture_scan(a, b, oracle)?;
    let mut text = format!(
        "k = {}\npi  = {}\npi' = {}\nlambda = {}\ncandidates: {}\n",
        report.k,
        report.pi,
        report.pi_prime,
        report.lambda,
        strings(&report.candidates).join(", ")
    );
    if let Some(x) = &report.exact {
        writeln!(text, "exact: {}", x.product).unwrap();
        writeln!(text, "predicted: {}", strings(&x.predicted).join(", ")).unwrap();
        writeln!(text, "candidates exact: {}", x.candidates_exact).unwrap();
    }
    match &report.verdict {
        Verdict::Holds => writeln!(text, "verdict: holds"),
        Verdict::Fails { missing, unexpected } => writeln!(
            text,
            "verdict: fails (missing: {}; unexpected: {})",
            strings(missing).join(", "),
            strings(unexpected).join(", ")
        ),
        Verdict::Undetermined { reason } => writeln!(text, "verdict: undetermined ({reason})"),
    }
    .unwrap();
    Ok(Report::new(text, serde_json::to_value(&report).expect("serialisable")))
}

#[cfg(feature = "kl-oracle")]
fn kl(ctx: &Context, u: &str, v: &str) -> Result<Report> {
    use crate::kl::{bruhat_leq, Permutation};
    let (u, v): (Permutation, Permutation) = (u.parse()?, v.parse()?);
    let below = bruhat_leq(&u, &v)?;
    let p = ctx.oracle()?.engine().kl_polynomial(&u, &v)?;
    Ok(Report::new(
        p.to_string(),
        json!({
            "u": u.to_string(),
            "v": v.to_string(),
            "bruhat_leq": below,
            "coefficients": p.coefficients(),
            "value_at_one": p.at_one(),
        }),
    ))
}

#[cfg(not(feature = "kl-oracle"))]
fn kl(_: &Context, _: &str, _: &str) -> Result<Report> {
    no_oracle()
}

fn batch(ctx: &Context, file: &Path, verb: &str) -> Result<Report> {
    let content = std::fs::read_to_string(file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
    let lines: Vec<(usize, &str)> = content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();

    let results: Vec<(usize, &str, Result<Report>)> = lines
        .par_iter()
        .map(|&(lineno, line)| (lineno, line, batch_line(ctx, verb, line)))
        .collect();

    let (mut ok, mut failed) = (0usize, 0usize);
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for (lineno, line, result) in results {
        match result {
            Ok(report) => {
                ok += 1;
                let flat = report.text.trim_end().replace('\n', "; ");
                writeln!(text, "{lineno}: {flat}").unwrap();
                rows.push(json!({ "line": lineno, "input": line, "ok": true, "result": report.json }));
                if let Some(v) = report.violation {
                    violations.push(format!("line {lineno}: {v}"));
                }
            }
            Err(e) => {
                failed += 1;
                writeln!(text, "{lineno}: error: {e}").unwrap();
                rows.push(json!({ "line": lineno, "input": line, "ok": false, "error": error_json(&e) }));
                if let Error::Invariant(v) = e {
                    violations.push(format!("line {lineno}: {v}"));
                }
            }
        }
    }
    writeln!(text, "# {ok} ok, {failed} errors").unwrap();
    let mut report = Report::new(
        text,
        json!({ "verb": verb, "results": rows, "summary": { "ok": ok, "errors": failed } }),
    );
    if !violations.is_empty() {
        report.violation = Some(violations.join("; "));
    }
    Ok(report)
}

fn batch_line(ctx: &Context, verb: &str, line: &str) -> Result<Report> {
    let argv = ["multiseg", verb].into_iter().chain(line.split_whitespace());
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        let rendered = e.render().to_string();
        let first = rendered.lines().next().unwrap_or_default();
        Error::Usage(first.trim_start_matches("error: ").to_string())
    })?;
    match cli.command {
        Command::Batch { .. } | Command::Selftest { .. } => Err(Error::Usage(format!("{verb} is not a batch verb"))),
        command => execute(ctx, &command),
    }
}

fn random_multisegment(rng: &mut ChaCha8Rng, max_segments: usize, hi: i32) -> Multisegment {
    let k = rng.gen_range(1..=max_segments);
    Multisegment::new((0..k).map(|_| {
        let b = rng.gen_range(0..=hi);
        Segment::new(b, rng.gen_range(b..=hi)).expect("b <= e")
    }))
}

fn random_ladder(rng: &mut ChaCha8Rng, max_segments: usize, hi: i32) -> Multisegment {
    loop {
        let k = rng.gen_range(1..=max_segments).min(hi as usize + 1);
        let mut begins: Vec<i32> = rand::seq::index::sample(rng, hi as usize + 1, k)
            .into_iter()
            .map(|x| x as i32)
            .collect();
        let mut ends: Vec<i32> = rand::seq::index::sample(rng, hi as usize + 1, k)
            .into_iter()
            .map(|x| x as i32)
            .collect();
        begins.sort_unstable();
        ends.sort_unstable();
        if begins.iter().zip(&ends).all(|(b, e)| b <= e) {
            return Multisegment::new(begins.into_iter().zip(ends).map(|(b, e)| Segment::new(b, e).expect("b <= e")));
        }
    }
}

struct Check {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }
}

fn selftest(ctx: &Context, seed: u64, cases: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let mut width = Check::new("width: chain = cover = brute force");
    let mut ladder = Check::new("ladder iff width <= 1");
    for _ in 0..cases {
        let m = random_multisegment(&mut rng, 5, 6);
        let w = width_chain(&m);
        let brute = width_bruteforce(&m, BRUTEFORCE_BOUND)?;
        width.record(w == min_ladder_cover(&m).len() && w == brute, || m.to_string());
        ladder.record(is_ladder(&m) == (w <= 1), || m.to_string());
    }
    checks.extend([width, ladder]);

    let mut jacquet = Check::new("jacquet: support conservation and ladder closure");
    for _ in 0..cases {
        let m = random_ladder(&mut rng, 5, 9);
        for t in jacquet_ladder_all(&m)? {
            let ok = t.left.support().plus(&t.right.support()) == m.support() && is_ladder(&t.left) && is_ladder(&t.right);
            jacquet.record(ok, || format!("{m}: {t}"));
        }
    }
    checks.push(jacquet);

    let mut confluence = Check::new("resolve_linked is confluent");
    for _ in 0..cases {
        let m = random_multisegment(&mut rng, 5, 6);
        let mut picker = ChaCha8Rng::seed_from_u64(rng.gen());
        let other = resolve_linked_by(&m, |k| picker.gen_range(0..k));
        confluence.record(other == resolve_linked(&m), || m.to_string());
    }
    checks.push(confluence);

    let mut mult = Check::new("multiplicity one for ladder pairs");
    for _ in 0..cases {
        let (m1, m2) = (random_ladder(&mut rng, 3, 6), random_ladder(&mut rng, 3, 6));
        let cands = composition_candidates_with(&ctx.multiplicity, &m1, &m2, usize::MAX)?;
        let top = ctx.multiplicity.compute(&m1.plus(&m2), &m1, &m2)?;
        mult.record(top == 1 && cands.contains(&m1.plus(&m2)), || format!("{m1} x {m2}"));
    }
    checks.push(mult);

    #[cfg(feature = "kl-oracle")]
    {
        let oracle = ctx.oracle()?;
        let mut exact = Check::new("exact products: 0/1 coefficients, width <= 2, within candidates");
        for _ in 0..cases {
            let (m1, m2) = (random_ladder(&mut rng, 2, 4), random_ladder(&mut rng, 2, 4));
            if m1.degree() + m2.degree() > oracle.max_support() {
                continue;
            }
            let product = oracle.multiply_irreducibles(&m1, &m2)?;
            let cands = composition_candidates_with(&ctx.multiplicity, &m1, &m2, 2)?;
            let ok = product
                .terms()
                .all(|(m, c)| c == 1 && width_chain(m) <= 2 && cands.contains(m));
            exact.record(ok, || format!("{m1} x {m2} = {product}"));
        }
        checks.push(exact);
    }

    let mut text = String::new();
    let mut rows = Vec::new();
    for c in &checks {
        let status = if c.failures.is_empty() { "ok" } else { "FAILED" };
        writeln!(text, "{status:6} {} ({} cases)", c.name, c.cases).unwrap();
        for f in &c.failures {
            writeln!(text, "       counterexample: {f}").unwrap();
        }
        rows.push(json!({ "name": c.name, "cases": c.cases, "passed": c.failures.is_empty(), "failures": c.failures }));
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.failures.is_empty()).map(|c| c.name).collect();
    writeln!(text, "selftest {} (seed {seed})", if failed.is_empty() { "passed" } else { "failed" }).unwrap();
    let mut report = Report::new(
        text,
        json!({ "seed": seed, "cases": cases, "passed": failed.is_empty(), "checks": rows }),
    );
    if !failed.is_empty() {
        report.violation = Some(format!("selftest checks failed: {}", failed.join(", ")));
    }
    Ok(report)
}
