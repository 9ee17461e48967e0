mod links;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use braidgate::braid::{markov_conjugate, markov_stabilize};
use braidgate::gates::{self, catalog, decompositions};
use braidgate::golden::{self, GoldenContext};
use braidgate::invariants::bracket::{self, BracketParams};
use braidgate::invariants::linking::{self, LinkingWeights};
use braidgate::invariants::{tau, tl_oracle};
use braidgate::quantum::{self, StateVector};
use braidgate::{rep, BraidWord, Complex, ComplexMatrix, Error, Tolerance};

use links::LinkCatalog;

/// Environment variable overriding the default numerical tolerance.
const TOL_ENV: &str = "BRAIDGATE_TOL";

#[derive(Parser)]
#[command(name = "braidgate", version, about = "Braiding operators as quantum gates")]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Check a gate against the braided or algebraic Yang-Baxter equation.
    Ybe {
        gate: Option<String>,
        #[command(flatten)]
        source: MatrixSource,
        #[arg(long, value_enum, default_value = "braided")]
        form: YbeForm,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Classify a two-qubit gate or verify a CNOT decomposition.
    Gate {
        gate: Option<String>,
        #[command(flatten)]
        source: MatrixSource,
        #[arg(long, conflicts_with = "decompose_verify")]
        classify: bool,
        #[arg(long, value_enum)]
        decompose_verify: Option<Decomposition>,
        /// Seed for the random product-state witness search.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Parse a braid word and report its closure.
    Braid {
        #[command(flatten)]
        input: BraidInput,
        /// Conjugate by this word before reporting.
        #[arg(long, allow_hyphen_values = true)]
        conjugate: Option<String>,
        /// Add a crossing on a new last strand.
        #[arg(long, value_enum)]
        stabilize: Option<Sign>,
        #[arg(long)]
        free_reduce: bool,
        /// Include the representation matrix built from R.
        #[arg(long, value_enum)]
        rep: Option<RepKind>,
    },
    /// Link invariants of a braid closure.
    Invariant {
        #[command(flatten)]
        input: BraidInput,
        #[arg(long, value_enum)]
        kind: InvariantKind,
        /// Bracket variable `A` as "re,im".
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Linking weight for crossings between different labels, "re,im".
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// Bracket angle, `A = e^{i theta}`.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        /// Also check the skein identity at this crossing (0-based).
        #[arg(long)]
        skein_site: Option<usize>,
    },
    /// Simulated quantum procedures.
    Sim {
        #[command(subcommand)]
        op: SimOp,
    },
    /// List the named gates and links.
    Catalog {
        #[arg(long)]
        links_file: Option<PathBuf>,
    },
    /// Run every reference value and report expected against computed.
    Selftest {
        /// Flip the sign of entry ROW,COL of R first (the run should then fail).
        #[arg(long, hide = true, value_parser = parse_entry)]
        flip_entry: Option<(usize, usize)>,
    },
}

#[derive(Subcommand)]
enum SimOp {
    /// Estimate |tr U|^2 / 4^n by sampling the trace measurement.
    Trace {
        #[arg(long)]
        gate: Option<String>,
        #[command(flatten)]
        source: MatrixSource,
        #[arg(long, default_value_t = 100_000)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Teleport the action of an n-qubit gate onto a state.
    Teleport {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        gate: Option<String>,
        #[command(flatten)]
        source: MatrixSource,
        /// State as a JSON amplitude array; a seeded random state otherwise.
        #[arg(long)]
        state_file: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Project one qubit of a state and classify what remains.
    Project {
        /// `aravind`, `ghz`, `ghz:N`, or a path to a JSON amplitude array.
        #[arg(long)]
        state: String,
        #[arg(long)]
        qubit: usize,
        #[arg(long)]
        bit: u8,
    },
}

#[derive(Args)]
struct MatrixSource {
    /// Read the gate from a `{"dim", "entries"}` JSON file.
    #[arg(long)]
    matrix_file: Option<PathBuf>,
}

#[derive(Args)]
struct BraidInput {
    /// Braid word such as "n=3; 1 -2 1", quoted or as separate tokens.
    #[arg(num_args = 0.., allow_negative_numbers = true)]
    word: Vec<String>,
    #[arg(long, conflicts_with = "word")]
    link: Option<String>,
    #[arg(long)]
    links_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum YbeForm {
    Braided,
    Algebraic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Decomposition {
    Thm0,
    Thm1,
    Thm2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sign {
    Pos,
    Neg,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepKind {
    Float,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum InvariantKind {
    Tau,
    Bracket,
    Linking,
}

fn parse_entry(s: &str) -> std::result::Result<(usize, usize), String> {
    let (r, c) = s.split_once(',').ok_or("expected ROW,COL")?;
    Ok((r.trim().parse().map_err(|e| format!("{e}"))?, c.trim().parse().map_err(|e| format!("{e}"))?))
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Guard { .. } => 3,
            Error::Parse(_)
            | Error::Unknown { .. }
            | Error::Json(_)
            | Error::GeneratorOutOfRange { .. }
            | Error::StrandOutOfRange { .. }
            | Error::StrandMismatch { .. }
            | Error::BadSite { .. }
            | Error::WrongDimension { .. }
            | Error::DimensionMismatch { .. }
            | Error::EntryCount { .. }
            | Error::NonFinite(_)
            | Error::ZeroWeight => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CmdResult = std::result::Result<Report, Failure>;

/// A JSON report, whether it counts as a pass, and an optional text rendering.
struct Report {
    value: Value,
    ok: bool,
    text: Option<String>,
}

impl Report {
    fn new(value: Value, ok: bool) -> Self {
        Report { value, ok, text: None }
    }
}

fn tolerance(flag: Option<f64>, fallback: f64) -> std::result::Result<Tolerance, Failure> {
    let eps = match (flag, std::env::var(TOL_ENV)) {
        (Some(t), _) => t,
        (None, Ok(s)) => s.trim().parse().map_err(|e| usage(format!("{TOL_ENV}={s:?}: {e}")))?,
        (None, Err(_)) => fallback,
    };
    Ok(Tolerance::new(eps)?)
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_gate(name: Option<&str>, source: &MatrixSource) -> std::result::Result<(String, ComplexMatrix), Failure> {
    match (name, &source.matrix_file) {
        (Some(_), Some(_)) => Err(usage("give a gate name or --matrix-file, not both")),
        (Some(n), None) => Ok((n.to_string(), catalog::resolve(n)?)),
        (None, Some(path)) => Ok((path.display().to_string(), ComplexMatrix::from_json_str(&read_file(path)?)?)),
        (None, None) => Err(usage("a gate name or --matrix-file is required")),
    }
}

fn load_braid(input: &BraidInput) -> std::result::Result<(String, BraidWord), Failure> {
    let word = (!input.word.is_empty()).then(|| input.word.join(" "));
    match (word, &input.link) {
        (Some(w), None) => {
            let b = w.parse()?;
            Ok((w, b))
        }
        (None, Some(name)) => {
            let cat = LinkCatalog::load(input.links_file.as_deref())?;
            Ok((name.clone(), cat.get(name)?.clone()))
        }
        _ => Err(usage("a braid word or --link is required")),
    }
}

fn complex_arg(flag: &str, s: &str) -> std::result::Result<Complex, Failure> {
    match catalog::parse_complex_list(s)?.as_slice() {
        [z] => Ok(*z),
        _ => Err(usage(format!("--{flag} takes one complex number \"re,im\""))),
    }
}

fn cjson(z: Complex) -> Value {
    json!([z.re, z.im])
}

fn cmd_ybe(name: Option<&str>, source: &MatrixSource, form: YbeForm, tol: Option<f64>) -> CmdResult {
    let (label, g) = load_gate(name, source)?;
    let tol = tolerance(tol, Tolerance::EXACT.eps())?;
    let (form, residual) = match form {
        YbeForm::Braided => ("braided", gates::check_ybe_braided(&g)?),
        YbeForm::Algebraic => ("algebraic", gates::check_ybe_algebraic(&g)?),
    };
    let ok = residual <= tol.eps();
    Ok(Report::new(json!({"gate": label, "form": form, "residual": residual, "tolerance": tol.eps(), "holds": ok}), ok))
}

fn cmd_gate(
    name: Option<&str>,
    source: &MatrixSource,
    classify: bool,
    decompose: Option<Decomposition>,
    seed: u64,
    tol: Option<f64>,
) -> CmdResult {
    let (label, g) = load_gate(name, source)?;
    if let Some(which) = decompose {
        let cnot = catalog::cnot();
        let (thm, expr) = match which {
            Decomposition::Thm0 => ("thm0", decompositions::qdq_expression()?),
            Decomposition::Thm1 => ("thm1", decompositions::sigma_expression(&g)?),
            Decomposition::Thm2 => ("thm2", decompositions::mrn_expression(&g)?),
        };
        let (exact, tol) = match which {
            Decomposition::Thm0 => (true, tolerance(tol, Tolerance::EXACT.eps())?),
            _ => (false, tolerance(tol, Tolerance::PHASE.eps())?),
        };
        let (holds, phase) = if exact {
            let r = expr.max_abs_diff(&cnot)?;
            (r <= tol.eps(), Complex::new(1.0, 0.0))
        } else {
            expr.equal_up_to_phase(&cnot, tol)?
        };
        let residual = expr.max_abs_diff(&cnot.scale(phase))?;
        return Ok(Report::new(
            json!({
                "gate": label,
                "decomposition": thm,
                "holds": holds,
                "residual": residual,
                "phase": cjson(phase),
                "tolerance": tol.eps(),
            }),
            holds,
        ));
    }
    if !classify {
        return Err(usage("gate needs --classify or --decompose-verify"));
    }
    let tol = tolerance(tol, Tolerance::PHASE.eps())?;
    let unitary = g.is_unitary(Tolerance::new(tol.eps().max(1e-12))?);
    if !unitary {
        return Ok(Report::new(
            json!({"gate": label, "unitary": false, "unitarity_residual": g.unitarity_residual()}),
            false,
        ));
    }
    let ent = gates::is_entangling(&g, tol, seed)?;
    let class = gates::cnot_count_class(&g, tol)?;
    Ok(Report::new(
        json!({
            "gate": label,
            "unitary": true,
            "entangling": ent.entangling,
            "schmidt_ranks": [ent.schmidt_ranks.0, ent.schmidt_ranks.1],
            "cnot_class": class.class.as_str(),
            "gamma_trace": cjson(class.gamma_trace),
            "gamma_sq_residual": class.gamma_sq_residual,
        }),
        true,
    ))
}

fn exact_json(m: &braidgate::exact::ExactScaledMatrix) -> Value {
    let entries: Vec<Value> = m
        .int_entries()
        .iter()
        .map(|&v| i64::try_from(v).map(Value::from).unwrap_or_else(|_| Value::from(v.to_string())))
        .collect();
    json!({"dim": m.dim(), "sqrt2_denominator_exp": m.scale_exp(), "entries": entries})
}

fn cmd_braid(
    input: &BraidInput,
    conjugate: Option<&str>,
    stabilize: Option<Sign>,
    free_reduce: bool,
    rep_kind: Option<RepKind>,
) -> CmdResult {
    let (_, mut b) = load_braid(input)?;
    if let Some(g) = conjugate {
        b = markov_conjugate(&b, &g.parse()?)?;
    }
    if let Some(sign) = stabilize {
        b = markov_stabilize(&b, matches!(sign, Sign::Pos));
    }
    if free_reduce {
        b = b.free_reduce();
    }
    let mut value = b.to_json();
    value["word"] = json!(b.to_string());
    value["permutation"] = json!(b.permutation());
    match rep_kind {
        Some(RepKind::Float) => value["rep"] = rep::rep_matrix(&b, &catalog::r())?.to_json(),
        Some(RepKind::Exact) => value["rep"] = exact_json(&rep::rep_exact(&b)?),
        None => {}
    }
    Ok(Report::new(value, true))
}

struct InvariantArgs<'a> {
    kind: InvariantKind,
    a: Option<&'a str>,
    c: Option<&'a str>,
    theta: Option<f64>,
    skein_site: Option<usize>,
}

fn cmd_invariant(input: &BraidInput, args: InvariantArgs) -> CmdResult {
    let (label, b) = load_braid(input)?;
    let mut value = json!({"input": label, "word": b.to_string()});
    let mut ok = true;
    match args.kind {
        InvariantKind::Tau => {
            let t = tau::tau(&b)?;
            value["kind"] = json!("tau");
            value["tau"] = t.to_json();
            value["display"] = json!(t.to_string());
            value["equivalence_class"] =
                json!(if t.is_zero() { "0".to_string() } else { format!("{} * sqrt2^k", t.mantissa()) });
            if let Some(site) = args.skein_site {
                let s = tau::skein_check(&b, site)?;
                ok = s.holds;
                value["skein"] = json!({
                    "site": site,
                    "original": s.original.to_string(),
                    "flipped": s.flipped.to_string(),
                    "smoothed": s.smoothed.to_string(),
                    "holds": s.holds,
                });
            }
        }
        InvariantKind::Bracket => {
            let p = match (args.theta, args.a) {
                (Some(_), Some(_)) => return Err(usage("give --theta or --a, not both")),
                (Some(t), None) => BracketParams::from_theta(t),
                (None, Some(a)) => BracketParams::from_a(complex_arg("a", a)?)?,
                (None, None) => return Err(usage("bracket needs --theta or --a")),
            };
            let fast = bracket::bracket3(&b, &p)?;
            let slow = tl_oracle::bracket_oracle(&b, &p)?;
            let gap = (fast - slow).norm();
            ok = gap <= Tolerance::PHASE.eps() * fast.norm().max(1.0);
            value["kind"] = json!("bracket");
            value["a"] = cjson(p.a());
            value["d"] = cjson(p.d());
            value["bracket"] = cjson(fast);
            value["state_sum"] = cjson(slow);
            value["agree"] = json!(ok);
            value["phi_unitary"] = json!(bracket::phi_is_unitary(&p, Tolerance::EXACT));
        }
        InvariantKind::Linking => {
            let (Some(a), Some(c)) = (args.a, args.c) else {
                return Err(usage("linking needs --a and --c"));
            };
            let w = LinkingWeights::new(complex_arg("a", a)?, complex_arg("c", c)?)?;
            let sum = linking::linking_state_sum(&b, w)?;
            let info = b.closure_info();
            value["kind"] = json!("linking");
            value["components"] = json!(info.component_count);
            value["sigma"] = cjson(sum.sigma);
            value["z"] = cjson(sum.z);
            value["linking"] =
                json!(info.linking_triples().iter().map(|&(i, j, lk)| [i as i64, j as i64, lk]).collect::<Vec<_>>());
            if info.component_count == 2 {
                let formula = linking::two_component_formula(w, info.linking_number(1, 2));
                ok = (formula - sum.z).norm() <= Tolerance::PHASE.eps() * formula.norm().max(1.0);
                value["two_component_formula"] = cjson(formula);
                value["agree"] = json!(ok);
            }
        }
    }
    Ok(Report::new(value, ok))
}

fn load_state(spec: &str) -> std::result::Result<StateVector, Failure> {
    match spec {
        "aravind" => Ok(quantum::aravind_state()),
        "ghz" => Ok(quantum::ghz_state(3)?),
        s if s.starts_with("ghz:") => {
            let n = s[4..].parse().map_err(|e| usage(format!("{s}: {e}")))?;
            Ok(quantum::ghz_state(n)?)
        }
        path => Ok(StateVector::from_json_str(&read_file(Path::new(path))?)?),
    }
}

fn cmd_sim(op: &SimOp) -> CmdResult {
    match op {
        SimOp::Trace { gate, source, shots, seed } => {
            let (label, u) = load_gate(gate.as_deref(), source)?;
            let s = quantum::sample_trace_probability(&u, *shots, *seed)?;
            let sigma = (s.exact_p * (1.0 - s.exact_p) / s.shots as f64).sqrt();
            let mut value = serde_json::to_value(&s).map_err(Error::from)?;
            value["gate"] = json!(label);
            value["within_3_sigma"] = json!((s.estimate - s.exact_p).abs() <= 3.0 * sigma);
            Ok(Report::new(value, true))
        }
        SimOp::Teleport { n, gate, source, state_file, seed } => {
            let (label, u) = load_gate(gate.as_deref(), source)?;
            if u.qubits() != Some(*n) {
                return Err(usage(format!("gate {label} does not act on {n} qubit(s)")));
            }
            let psi = match state_file {
                Some(path) => StateVector::from_json_str(&read_file(path)?)?,
                None => quantum::random_state(*n, *seed),
            };
            let r = quantum::teleport_protocol(&u, &psi, *seed)?;
            let target = psi.normalized()?.apply(&u)?;
            let fidelity = r.received.inner(&target)?.norm_sqr();
            let value = json!({
                "gate": label,
                "n_qubits": r.n_qubits,
                "seed": seed,
                "classical_bits": r.classical_bits,
                "alpha": r.alpha,
                "beta": r.beta,
                "outcome_probability": r.outcome_probability,
                "received": r.received.to_json(),
                "expected": target.to_json(),
                "phase": cjson(r.phase),
                "residual": r.residual,
                "fidelity": fidelity,
                "recovered": r.recovered,
            });
            Ok(Report::new(value, r.recovered))
        }
        SimOp::Project { state, qubit, bit } => {
            let psi = load_state(state)?;
            let p = quantum::project_qubit(&psi, *qubit, *bit)?;
            let verdict = match p.entangled {
                Some(true) => "entangled",
                Some(false) => "unentangled",
                None => "unclassified",
            };
            Ok(Report::new(
                json!({
                    "state": state,
                    "qubit": qubit,
                    "bit": bit,
                    "prob": p.prob,
                    "residual": p.residual.to_json(),
                    "verdict": verdict,
                }),
                true,
            ))
        }
    }
}

fn cmd_catalog(links_file: Option<&Path>) -> CmdResult {
    let gates: Vec<Value> = catalog::unitary_catalog()
        .iter()
        .map(|(name, m)| json!({"name": name, "dim": m.dim(), "unitary": m.is_unitary(Tolerance::EXACT), "matrix": m.to_json()}))
        .collect();
    let cat = LinkCatalog::load(links_file)?;
    let links: Vec<Value> = cat
        .entries()
        .iter()
        .map(|(name, w)| {
            let info = w.closure_info();
            json!({"name": name, "word": w.to_string(), "components": info.component_count, "writhe": info.writhe})
        })
        .collect();
    let mut rows: Vec<Vec<String>> = catalog::unitary_catalog()
        .iter()
        .map(|(name, m)| vec!["gate".into(), name.to_string(), format!("{}x{}", m.dim(), m.dim())])
        .collect();
    rows.extend(cat.entries().iter().map(|(name, w)| vec!["link".into(), name.clone(), w.to_string()]));
    Ok(Report {
        value: json!({"gates": gates, "links": links}),
        ok: true,
        text: Some(output::table(&["kind", "name", "shape / word"], &rows)),
    })
}

fn cmd_selftest(flip: Option<(usize, usize)>) -> CmdResult {
    let ctx = match flip {
        Some((r, c)) => GoldenContext::with_flipped_entry(r, c)?,
        None => GoldenContext::default(),
    };
    let checks = golden::run_golden(&ctx);
    let ok = golden::all_pass(&checks);
    let failed = checks.iter().filter(|c| !c.pass).count();
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            vec![if c.pass { "ok" } else { "FAIL" }.into(), c.name.clone(), c.expected.clone(), c.computed.clone()]
        })
        .collect();
    let text = format!(
        "{}\n{} checks, {} failed",
        output::table(&["", "check", "expected", "computed"], &rows),
        checks.len(),
        failed
    );
    let value = json!({
        "pass": ok,
        "total": checks.len(),
        "failed": failed,
        "checks": serde_json::to_value(&checks).map_err(Error::from)?,
    });
    Ok(Report { value, ok, text: Some(text) })
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.verb {
        Verb::Ybe { gate, source, form, tol } => cmd_ybe(gate.as_deref(), source, *form, *tol),
        Verb::Gate { gate, source, classify, decompose_verify, seed, tol } => {
            cmd_gate(gate.as_deref(), source, *classify, *decompose_verify, *seed, *tol)
        }
        Verb::Braid { input, conjugate, stabilize, free_reduce, rep } => {
            cmd_braid(input, conjugate.as_deref(), *stabilize, *free_reduce, *rep)
        }
        Verb::Invariant { input, kind, a, c, theta, skein_site } => cmd_invariant(
            input,
            InvariantArgs { kind: *kind, a: a.as_deref(), c: c.as_deref(), theta: *theta, skein_site: *skein_site },
        ),
        Verb::Sim { op } => cmd_sim(op),
        Verb::Catalog { links_file } => cmd_catalog(links_file.as_deref()),
        Verb::Selftest { flip_entry } => cmd_selftest(*flip_entry),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.value).expect("json values serialize"));
            } else {
                println!("{}", report.text.unwrap_or_else(|| output::render_text(&report.value)));
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(f) => {
            if cli.json {
                println!("{}", json!({"error": f.message, "exit_code": f.code}));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
