use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kgraph_kms::eigencone::{EigenconeError, TraceVector};
use kgraph_kms::graph::{LoadError, Multidegree};
use kgraph_kms::kms::{
    evaluate_state, geq_simplex, kms_vector, phase_diagram, Algebra, Beta, KmsError, PhaseDiagram, SimplexKind,
    SubharmonicSimplex,
};
use kgraph_kms::oracle::{self, OracleError};
use kgraph_kms::spectral::SpectralError;
use kgraph_kms::{report, ColorSet, Entropy, Radius, Settings, Skeleton, Spectrum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "kgraph-kms", version, about = "KMS phase diagrams of higher-rank graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a graph file holds commuting nonnegative integer matrices.
    Validate { path: PathBuf },
    /// Perron roots, vertex radii and entropies.
    Spectrum(Common),
    /// Radii of sink subgraphs, where phase transitions can occur.
    Transitions(Common),
    /// Every regime of inverse temperature with its simplex parts.
    Diagram {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "nt")]
        algebra: AlgebraArg,
    },
    /// The parts of the equilibrium simplex at one inverse temperature.
    Simplex {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        temp: Temperature,
        #[arg(long, value_enum, default_value = "nt")]
        algebra: AlgebraArg,
        /// Restrict to one part: `1,2`, empty for the infinite part, `all`
        /// for the finite part.
        #[arg(long = "F")]
        colours: Option<String>,
    },
    /// Value of the state induced by a trace on a diagonal monomial.
    Eval {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        temp: Temperature,
        #[arg(long = "F")]
        colours: String,
        /// Trace vector, comma separated; fractions stay exact.
        #[arg(long)]
        tau: String,
        /// Multidegree of the path, comma separated.
        #[arg(long)]
        degree: String,
        /// Source vertex of the path, by label or 1-based index.
        #[arg(long)]
        vertex: String,
    },
    /// Brute-force cross-checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Number of paths of length k supported on F.
    Paths {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
        #[arg(long = "F")]
        colours: String,
    },
    /// (1/k) log of path counts against the strong entropy.
    Entropy {
        #[command(flatten)]
        common: Common,
        #[arg(long = "F")]
        colours: String,
        #[arg(long, default_value_t = 200)]
        kmax: usize,
    },
    /// Partial sums of the normalization series against the resolvent.
    Series {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        temp: Temperature,
        #[arg(long = "F")]
        colours: String,
        #[arg(long)]
        tau: String,
        #[arg(long, default_value_t = 10_000)]
        kmax: usize,
    },
    /// Exhaustive exact recomputation of one part.
    Brute {
        #[command(flatten)]
        common: Common,
        /// Exact e^beta.
        #[arg(long)]
        et: String,
        #[arg(long = "F")]
        colours: String,
    },
}

#[derive(Args)]
struct Common {
    path: PathBuf,
    /// Override the weights s_1,...,s_N.
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    json: bool,
    /// Equality tolerance for radii and e^beta.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Temperature {
    /// e^beta: integer, fraction, decimal or float.
    #[arg(long)]
    et: Option<String>,
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraArg {
    Nt,
    No,
}

impl From<AlgebraArg> for Algebra {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::Nt => Algebra::Toeplitz,
            AlgebraArg::No => Algebra::CuntzKrieger,
        }
    }
}

/// Failure with its exit code.
enum Failure {
    Validation(String),
    Usage(String),
    Refused(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Refused(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Usage(m) | Failure::Refused(m) => m,
        }
    }
}

impl From<KmsError> for Failure {
    fn from(e: KmsError) -> Self {
        match e {
            KmsError::Eigencone(EigenconeError::DimensionTooLarge { .. })
            | KmsError::Spectral(SpectralError::NonConvergence { .. }) => Failure::Refused(e.to_string()),
            KmsError::InvalidBeta(_) | KmsError::NotProper(_) => Failure::Usage(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        KmsError::from(e).into()
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::DimensionTooLarge { .. } | OracleError::Budget { .. } => Failure::Refused(e.to_string()),
            OracleError::Trace(_) => Failure::Validation(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            // a closed pipe downstream is not our failure
            let _ = std::io::Write::write_all(&mut std::io::stdout(), out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { path } => validate(&path),
        Command::Spectrum(c) => {
            let g = load(&c)?;
            let sp = Spectrum::new(&g, settings(&c))?;
            emit(&c, &report::spectrum(&sp), || spectrum_text(&sp))
        }
        Command::Transitions(c) => {
            let g = load(&c)?;
            let sp = Spectrum::new(&g, settings(&c))?;
            emit(&c, &report::transitions(&sp), || transitions_text(&sp))
        }
        Command::Diagram { common, algebra } => {
            let g = load(&common)?;
            let sp = Spectrum::new(&g, settings(&common))?;
            let d = phase_diagram(&sp, algebra.into())?;
            emit(&common, &report::diagram(&g, &d), || diagram_text(&g, &d))
        }
        Command::Simplex {
            common,
            temp,
            algebra,
            colours,
        } => {
            let g = load(&common)?;
            let sp = Spectrum::new(&g, settings(&common))?;
            let beta = temperature(&temp)?;
            let mut parts = geq_simplex(&sp, &beta, algebra.into())?;
            if let Some(text) = colours {
                let f = colour_set(&g, &text)?;
                parts.retain(|p| p.colours == f);
            }
            emit(&common, &report::simplex(&sp, &beta, &parts), || simplex_text(&g, &beta, &parts))
        }
        Command::Eval {
            common,
            temp,
            colours,
            tau,
            degree,
            vertex,
        } => {
            let g = load(&common)?;
            let sp = Spectrum::new(&g, settings(&common))?;
            let beta = temperature(&temp)?;
            let f = colour_set(&g, &colours)?;
            let tau = trace(&tau, sp.tol())?;
            let n = Multidegree(csv(&degree, "degree")?);
            let v = vertex_index(&g, &vertex)?;
            let kv = kms_vector(&sp, &tau, &beta, f)?;
            let value = evaluate_state(&g, &kv, &n, v)?;
            emit(&common, &report::kms(&g, &kv, Some(value)), || format!("{}\n", fmt_float(value)))
        }
        Command::Oracle(o) => run_oracle(o),
    }
}

fn run_oracle(command: OracleCommand) -> Outcome {
    match command {
        OracleCommand::Paths { common, k, colours } => {
            let g = load(&common)?;
            let f = colour_set(&g, &colours)?;
            let count = oracle::path_count(&g, k, f)?;
            let json = json!({"k": k, "F": report::colours(f), "count": count.to_string()});
            emit(&common, &json, || format!("{count}\n"))
        }
        OracleCommand::Entropy { common, colours, kmax } => {
            let g = load(&common)?;
            let sp = Spectrum::new(&g, settings(&common))?;
            let f = colour_set(&g, &colours)?;
            let est = oracle::entropy_estimate(&g, f, kmax)?;
            let strong = if f.is_empty() { None } else { Some(sp.strong_entropy(f)?) };
            let json = json!({
                "F": report::colours(f),
                "kmax": kmax,
                "estimate": report::num(est.limit_estimate),
                "strong_entropy": strong.map(report::entropy),
            });
            emit(&common, &json, || {
                let mut s = format!("estimate at k = {kmax}: {}\n", fmt_float(est.limit_estimate));
                if let Some(h) = strong {
                    let _ = writeln!(s, "strong entropy: {}", fmt_entropy(h));
                }
                s
            })
        }
        OracleCommand::Series {
            common,
            temp,
            colours,
            tau,
            kmax,
        } => {
            let g = load(&common)?;
            let sp = Spectrum::new(&g, settings(&common))?;
            let beta = temperature(&temp)?;
            let f = colour_set(&g, &colours)?;
            let tau = trace(&tau, sp.tol())?;
            let s = oracle::c_partial(&g, &tau, &beta, f, kmax)?;
            let resolvent = kms_vector(&sp, &tau, &beta, f).ok().map(|kv| kv.c);
            let json = json!({
                "F": report::colours(f),
                "terms": s.terms.len(),
                "limit_estimate": report::num(s.limit_estimate),
                "converged": s.converged,
                "resolvent_c": resolvent.map(report::num),
            });
            emit(&common, &json, || {
                let mut out = format!(
                    "partial sum after {} terms: {} ({})\n",
                    s.terms.len(),
                    fmt_float(s.limit_estimate),
                    if s.converged { "converged" } else { "not converged" }
                );
                if let Some(c) = resolvent {
                    let _ = writeln!(out, "resolvent constant: {}", fmt_float(c));
                }
                out
            })
        }
        OracleCommand::Brute { common, et, colours } => {
            let g = load(&common)?;
            let f = colour_set(&g, &colours)?;
            let lambda = parse_exact(&et).ok_or_else(|| Failure::Usage(format!("--et {et:?} is not an exact rational")))?;
            let gens = oracle::brute_simplex(&g, &lambda, f)?;
            let json = json!({
                "F": report::colours(f),
                "exp_beta_exact": lambda.to_string(),
                "generators": gens.iter().map(report::trace).collect::<Vec<_>>(),
            });
            emit(&common, &json, || format!("{}\n", hull(&g, &gens)))
        }
    }
}

fn emit(common: &Common, json: &Value, text: impl FnOnce() -> String) -> Outcome {
    Ok(if common.json {
        report::to_canonical_string(json)
    } else {
        text()
    })
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn load_error(path: &Path, e: LoadError) -> Failure {
    Failure::Validation(format!("{}: {e}", path.display()))
}

fn validate(path: &Path) -> Outcome {
    let g = Skeleton::from_json_str(&read(path)?).map_err(|e| load_error(path, e))?;
    Ok(format!(
        "valid: {} colours, {} vertices, commuting\n",
        g.colours(),
        g.vertex_count()
    ))
}

fn load(common: &Common) -> Result<Skeleton, Failure> {
    let g = Skeleton::from_json_str(&read(&common.path)?).map_err(|e| load_error(&common.path, e))?;
    match &common.weights {
        None => Ok(g),
        Some(text) => {
            let weights = text
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Usage(format!("--weights {text:?}: {e}")))?;
            g.with_weights(weights).map_err(|e| Failure::Validation(e.to_string()))
        }
    }
}

fn settings(common: &Common) -> Settings {
    let mut s = Settings::default();
    if let Some(tol) = common.tol {
        s.compare_tol = tol;
    }
    s
}

/// Integer, `p/q` or plain decimal; `None` for anything else.
fn parse_exact(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Ok(q) = text.parse::<BigRational>() {
        return Some(q);
    }
    let (int, frac) = text.split_once('.')?;
    if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    Some(BigRational::new(digits, scale))
}

fn temperature(t: &Temperature) -> Result<Beta, Failure> {
    let beta = match (&t.et, t.beta) {
        (Some(text), _) => match parse_exact(text) {
            Some(q) => Beta::from_exp_rational(q),
            None => {
                let x: f64 = text
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("--et {text:?} is not a number")))?;
                Beta::from_exp(x)
            }
        },
        (None, Some(b)) => Beta::from_beta(b),
        (None, None) => return Err(Failure::Usage("one of --et or --beta is required".into())),
    };
    beta.map_err(|e| Failure::Usage(e.to_string()))
}

fn colour_set(g: &Skeleton, text: &str) -> Result<ColorSet, Failure> {
    let text = text.trim().trim_start_matches('{').trim_end_matches('}');
    if text.is_empty() {
        return Ok(ColorSet::EMPTY);
    }
    if text == "all" {
        return Ok(g.all_colours());
    }
    let mut f = ColorSet::EMPTY;
    for part in text.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("--F: {part:?} is not a colour")))?;
        if i == 0 || i > g.colours() {
            return Err(Failure::Usage(format!("--F: colour {i} is out of range 1..={}", g.colours())));
        }
        f = f.union(ColorSet::singleton(i - 1));
    }
    Ok(f)
}

fn csv(text: &str, what: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("--{what} {text:?}: {e}")))
}

fn trace(text: &str, tol: f64) -> Result<TraceVector, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = |e: kgraph_kms::eigencone::TraceError| Failure::Validation(format!("--tau: {e}"));
    if let Some(exact) = parts.iter().map(|p| parse_exact(p)).collect::<Option<Vec<_>>>() {
        return TraceVector::from_exact(exact).map_err(bad);
    }
    let values = parts
        .iter()
        .map(|p| p.parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("--tau {text:?}: {e}")))?;
    TraceVector::new(values, tol).map_err(bad)
}

fn vertex_index(g: &Skeleton, text: &str) -> Result<usize, Failure> {
    if let Some(v) = g.vertex_index(text) {
        return Ok(v);
    }
    match text.parse::<usize>() {
        Ok(k) if (1..=g.vertex_count()).contains(&k) => Ok(k - 1),
        _ => Err(Failure::Usage(format!("--vertex {text:?} is not a vertex"))),
    }
}

fn fmt_float(x: f64) -> String {
    let s = format!("{:.12}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

fn fmt_entropy(h: Entropy) -> String {
    match h {
        Entropy::NegInfinity => "-inf".into(),
        Entropy::Finite(x) => fmt_float(x),
    }
}

/// `log r` for exact radii, a decimal otherwise.
fn fmt_log(r: &Radius) -> String {
    match r.exact {
        Some(1) => "0".into(),
        Some(k) => format!("log {k}"),
        None => fmt_float(r.value.ln()),
    }
}

fn fmt_trace(g: &Skeleton, tau: &TraceVector) -> String {
    if let Some(v) = tau.as_delta() {
        return format!("δ_{}", g.vertex_labels()[v]);
    }
    let entries: Vec<String> = match tau.exact() {
        Some(exact) => exact.iter().map(ToString::to_string).collect(),
        None => tau.values().iter().map(|&x| fmt_float(x)).collect(),
    };
    format!("({})", entries.join(", "))
}

/// Braces for a single point, angle brackets for a hull.
fn hull(g: &Skeleton, gens: &[TraceVector]) -> String {
    let inner: Vec<String> = gens.iter().map(|t| fmt_trace(g, t)).collect();
    match gens.len() {
        0 => "empty".into(),
        1 => format!("{{{}}}", inner[0]),
        _ => format!("<{}>", inner.join(", ")),
    }
}

fn part_name(p: &SubharmonicSimplex) -> String {
    match p.kind {
        SimplexKind::Finite => "finite part".into(),
        SimplexKind::Infinite => "infinite part".into(),
        SimplexKind::Subharmonic => format!("{}-part", p.colours),
    }
}

fn parts_line(g: &Skeleton, parts: &[SubharmonicSimplex]) -> String {
    let nonempty: Vec<String> = parts
        .iter()
        .filter(|p| !p.is_empty())
        .map(|p| format!("{} {}", part_name(p), hull(g, &p.generators)))
        .collect();
    if nonempty.is_empty() {
        "empty".into()
    } else {
        nonempty.join(" + ")
    }
}

fn diagram_text(g: &Skeleton, d: &PhaseDiagram) -> String {
    let mut s = String::new();
    let name = match d.algebra {
        Algebra::Toeplitz => "Toeplitz algebra (nt)",
        Algebra::CuntzKrieger => "Cuntz-Krieger algebra (no)",
    };
    let _ = writeln!(s, "phase diagram for the {name}");
    let set: Vec<String> = d.spectrum.iter().map(|t| t.radius.to_string()).collect();
    let _ = writeln!(s, "transition set: {{{}}}", set.join(", "));
    if !g.has_unit_weights() {
        let w: Vec<String> = g.weights().iter().map(|&x| fmt_float(x)).collect();
        let _ = writeln!(s, "weights: ({})", w.join(", "));
    }
    let _ = writeln!(s, "beta_c' = {}, beta_c = {}", fmt_float(d.beta_c_prime), fmt_entropy(d.beta_c));
    let _ = writeln!(s);

    // descending, as regimes are usually read from high temperature down
    let mut nonempty_points = Vec::new();
    let mut lines = Vec::new();
    for (k, iv) in d.intervals.iter().enumerate() {
        let lower = iv.lower_radius.as_ref().map_or("0".into(), fmt_log);
        let upper = iv.upper_radius.as_ref().map_or("+inf".into(), fmt_log);
        lines.push(format!(
            "* beta in ({lower}, {upper}): {}",
            parts_line(g, std::slice::from_ref(&iv.finite))
        ));
        if let Some(p) = iv.upper_radius.and_then(|_| d.transitions.iter().filter(|p| p.beta.is_some()).nth(k)) {
            let here = parts_line(g, &p.parts);
            if here != "empty" {
                nonempty_points.push(fmt_log(&p.transition.radius));
            }
            lines.push(format!("* beta = {}: {here}", fmt_log(&p.transition.radius)));
        }
    }
    for line in lines.iter().rev() {
        let _ = writeln!(s, "{line}");
    }
    if d.intervals.iter().all(|iv| iv.finite.is_empty()) && !nonempty_points.is_empty() {
        let _ = writeln!(s, "\nonly nonempty at beta = {}", nonempty_points.join(", "));
    }
    s
}

fn simplex_text(g: &Skeleton, beta: &Beta, parts: &[SubharmonicSimplex]) -> String {
    let mut s = String::new();
    let et = beta
        .exp_exact()
        .map_or_else(|| fmt_float(beta.exp_value()), ToString::to_string);
    let _ = writeln!(s, "e^beta = {et} (beta = {})", fmt_float(beta.value()));
    for p in parts {
        let body = match p.reason_if_empty {
            Some(r) => format!("empty [{}]", r.code()),
            None => hull(g, &p.generators),
        };
        let _ = writeln!(s, "* {} (F = {}): {body}", part_name(p), p.colours);
    }
    s
}

fn spectrum_text(sp: &Spectrum<'_>) -> String {
    let g = sp.graph();
    let mut s = String::new();
    for i in 0..g.colours() {
        let _ = writeln!(s, "rho(Lambda^({})) = {}", i + 1, sp.colour_root(i).radius());
    }
    let _ = writeln!(s, "rho(Lambda) = {}", sp.rho_graph());
    for (v, r) in sp.vertex_radii().iter().enumerate() {
        let _ = writeln!(
            s,
            "* {}: radius {r}, entropy {}",
            g.vertex_labels()[v],
            fmt_entropy(sp.vertex_entropy(v))
        );
    }
    for f in ColorSet::all_subsets(g.colours()).into_iter().filter(|f| !f.is_empty()) {
        if let Ok(h) = sp.strong_entropy(f) {
            let _ = writeln!(s, "strong entropy {f}: {}", fmt_entropy(h));
        }
    }
    let _ = writeln!(s, "beta_c' = {}, beta_c = {}", fmt_float(sp.lower_critical()), fmt_entropy(sp.critical()));
    s
}

fn transitions_text(sp: &Spectrum<'_>) -> String {
    let g = sp.graph();
    let mut s = String::new();
    for t in &sp.transition_set().values {
        let labels: Vec<&str> = t.witnesses.iter().map(|&v| g.vertex_labels()[v].as_str()).collect();
        let _ = writeln!(s, "{} (beta = {}) from {}", t.radius, fmt_log(&t.radius), labels.join(", "));
    }
    s
}
