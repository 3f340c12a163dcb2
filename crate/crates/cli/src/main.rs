use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nakayama_core::counting::{
    classify_structures, count_enumeration, count_enumeration_with, count_formula, q_orderings, Decider, Limits,
    StructureClass, DEFAULT_ENUM_CAP,
};
use nakayama_core::format::{parse_algebra, write_algebra};
use nakayama_core::homology::{
    global_dimension, pd_simple_criterion, proj_dim_with_trace, s_connected, simple_proj_dims, Terminal,
};
use nakayama_core::qh::{canonical_q_ordering, hoods, oracle_verdict, q_set_partition, TotalOrdering};
use nakayama_core::sweep::{cross_validate, Check, SweepConfig, SweepKind};
use nakayama_core::{NakayamaAlgebra, Uniserial};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// Quasi-hereditary orderings of Nakayama algebras.
#[derive(Parser)]
#[command(name = "nakayama", version)]
struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Print nothing on success; rely on the exit code.
    #[arg(long, short)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Q-set, quasi-heredity, q, projective dimensions and a canonical q-ordering.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Test one ordering, given largest first, with the criterion and the oracle.
    CheckOrder {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<usize>,
    },
    /// Count the q-orderings.
    Count {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Also recount with the brute-force oracle and require agreement.
        #[arg(long)]
        oracle: bool,
        /// Print every q-ordering.
        #[arg(long)]
        list: bool,
        /// Print the quasi-hereditary structures.
        #[arg(long)]
        classes: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// List the q-orderings.
    Orders {
        file: PathBuf,
        /// Group them by the Weyl modules they induce.
        #[arg(long)]
        classes: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Iterate syzygies of a uniserial module until a projective or a repeat.
    Resolve {
        file: PathBuf,
        /// Top and length, as `t,l`.
        #[arg(long, value_parser = parse_module)]
        module: Uniserial,
    },
    /// Check every algebra in a range against all the identities.
    Sweep(SweepArgs),
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Largest n to enumerate orderings for.
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    cap: usize,
    /// Enumerate beyond the cap.
    #[arg(long)]
    force: bool,
}

impl From<LimitArgs> for Limits {
    fn from(l: LimitArgs) -> Self {
        Limits { cap: l.cap, force: l.force }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    kind: KindArg,
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    /// Longest cyclic relation; defaults to n+2.
    #[arg(long)]
    max_len: Option<usize>,
    /// Checks to run, by name or letter a-h. Defaults to all.
    #[arg(long, value_delimiter = ',')]
    checks: Vec<Check>,
    #[arg(long)]
    fail_fast: bool,
    /// Write one row per algebra.
    #[arg(long)]
    tsv: Option<PathBuf>,
    /// Write the full result as JSON.
    #[arg(long = "json")]
    json_path: Option<PathBuf>,
}

fn parse_module(s: &str) -> Result<Uniserial, String> {
    let (t, l) = s.split_once(',').ok_or_else(|| format!("expected t,l, got {s:?}"))?;
    let t = t.trim().parse().map_err(|e| format!("top {t:?}: {e}"))?;
    let l = l.trim().parse().map_err(|e| format!("length {l:?}: {e}"))?;
    Ok(Uniserial::new(t, l))
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Enum,
    Formula,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Linear,
    Cyclic,
    Both,
}

/// Errors in the user's input. Everything else is a result.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<Report, InputError>;

/// What a command produced: text lines, a JSON document, and whether the answer was
/// affirmative.
struct Report {
    lines: Vec<String>,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else if !cli.quiet {
                for line in &report.lines {
                    println!("{line}");
                }
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command) -> CmdResult {
    match command {
        Command::Analyze { file, limits } => analyze(&load(file)?, (*limits).into()),
        Command::CheckOrder { file, order } => check_order(&load(file)?, order),
        Command::Count { file, method, oracle, list, classes, limits } => {
            count(&load(file)?, *method, *oracle, *list, *classes, (*limits).into())
        }
        Command::Orders { file, classes, limits } => orders(&load(file)?, *classes, (*limits).into()),
        Command::Resolve { file, module } => resolve(&load(file)?, *module),
        Command::Sweep(args) => sweep(args),
    }
}

fn load(path: &Path) -> Result<NakayamaAlgebra, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    parse_algebra(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Integers up to 2^53 as JSON numbers, larger ones as decimal strings.
fn exact(q: &BigUint) -> Value {
    match q.to_u64() {
        Some(v) if v <= 1 << 53 => json!(v),
        _ => json!(q.to_string()),
    }
}

fn list(vs: impl IntoIterator<Item = usize>) -> String {
    vs.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn set(vs: &std::collections::BTreeSet<usize>) -> String {
    format!("{{{}}}", list(vs.iter().copied()))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn algebra_json(a: &NakayamaAlgebra) -> Value {
    json!({
        "kind": a.kind().to_string(),
        "n": a.n(),
        "generators": a.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    })
}

fn analyze(a: &NakayamaAlgebra, limits: Limits) -> CmdResult {
    let part = q_set_partition(a);
    let qh = !part.x.is_empty();
    let q = if limits.check(a.n()).is_ok() { Some(count_formula(a)?) } else { None };
    let pds = simple_proj_dims(a);
    let gld = global_dimension(a);
    let canonical = part.x.first().map(|&x| canonical_q_ordering(a, x).expect("x is in the Q-set"));
    let echo = write_algebra(a);

    let mut lines: Vec<String> = echo.lines().map(String::from).collect();
    lines.push(format!("kupisch = {}", list(a.kupisch().iter().copied())));
    lines.push(format!(
        "X = {}  X0 = {}  X1 = {}  X2 = {}",
        set(&part.x),
        set(&part.x0),
        set(&part.x1),
        set(&part.x2)
    ));
    lines.push(format!("quasi-hereditary: {}", yes(qh)));
    if let Some(q) = &q {
        lines.push(format!("q = {q}"));
    }
    let mut pd_table = Vec::new();
    for s in a.vertices() {
        let class = pd_simple_criterion(a, s);
        lines.push(format!("pd({s}) = {}  class {class}", pds[s - 1]));
        pd_table.push(json!({"simple": s, "pd": pds[s - 1].to_string(), "class": class.to_string()}));
    }
    let gld_text = gld.map_or_else(|| "inf".to_string(), |d| d.to_string());
    lines.push(format!("gld = {gld_text}"));
    lines.push(format!("s-connected: {}", yes(s_connected(a))));
    if let Some(ord) = &canonical {
        lines.push(format!("canonical ordering: {ord}"));
    }

    let json = json!({
        "algebra": echo,
        "quiver": algebra_json(a),
        "kupisch": a.kupisch(),
        "qset": {"x": part.x, "x0": part.x0, "x1": part.x1, "x2": part.x2},
        "quasi_hereditary": qh,
        "q": q.as_ref().map(exact),
        "pd_table": pd_table,
        "global_dimension": gld.map_or_else(|| json!("inf"), |d| json!(d)),
        "s_connected": s_connected(a),
        "canonical_ordering": canonical.map(|o| o.descending()),
    });
    Ok(Report { lines, json, ok: true })
}

fn check_order(a: &NakayamaAlgebra, order: &[usize]) -> CmdResult {
    if order.len() != a.n() {
        return Err(InputError(format!("ordering has {} entries, expected {}", order.len(), a.n())));
    }
    let ord = TotalOrdering::from_descending(order)?;
    let criterion = nakayama_core::qh::is_q_ordering_criterion(a, &ord);
    let verdict = oracle_verdict(a, &ord);
    let mut lines = vec![format!("criterion: {}", yes(criterion)), format!("oracle: {}", yes(verdict.is_q_ordering()))];
    let mut hood_json = Vec::new();
    for hood in hoods(a) {
        let max = hood.maximum(&ord);
        let interior = hood.is_interior(max);
        lines.push(format!("hood {}..{} max={max} interior={}", hood.hook(), hood.denouement(), yes(interior)));
        hood_json.push(json!({"hook": hood.hook(), "denouement": hood.denouement(), "max": max, "interior": interior}));
    }
    if !verdict.is_q_ordering() {
        lines.push(verdict.to_string());
    }
    let ok = criterion && verdict.is_q_ordering();
    let json = json!({
        "quiver": algebra_json(a),
        "order": ord.descending(),
        "criterion": criterion,
        "oracle": verdict.is_q_ordering(),
        "hoods": hood_json,
        "reason": (!verdict.is_q_ordering()).then(|| verdict.to_string()),
    });
    Ok(Report { lines, json, ok })
}

fn class_lines(classes: &[StructureClass]) -> (Vec<String>, Value) {
    let mut lines = vec![format!("{} classes", classes.len())];
    let mut js = Vec::new();
    for c in classes {
        let reps: Vec<String> = c.representatives.iter().map(|o| o.to_string()).collect();
        lines.push(format!("class ({}) size {}: {}", list(c.family.lengths.iter().copied()), c.size, reps.join(" | ")));
        js.push(json!({"weyl_lengths": c.family.lengths, "size": c.size, "orderings": reps}));
    }
    (lines, Value::Array(js))
}

fn count(a: &NakayamaAlgebra, method: Method, oracle: bool, list_all: bool, classes: bool, limits: Limits) -> CmdResult {
    let enumerated = match method {
        Method::Enum | Method::Both => Some(count_enumeration(a, limits)?),
        Method::Formula => None,
    };
    let formula = match method {
        Method::Formula | Method::Both => Some(count_formula(a)?),
        Method::Enum => None,
    };
    let mut parts = Vec::new();
    if let Some(q) = &enumerated {
        parts.push(format!("{q} (enum)"));
    }
    if let Some(q) = &formula {
        parts.push(format!("{q} (formula)"));
    }
    let mut lines = vec![format!("q = {}", parts.join(" = "))];
    let q = enumerated.clone().or(formula.clone()).expect("one method ran");
    let mut ok = enumerated.is_none() || formula.is_none() || enumerated == formula;
    if !ok {
        lines.push("enumeration and formula disagree".into());
    }
    if oracle {
        let by_oracle = count_enumeration_with(a, Decider::Oracle, limits)?;
        lines.push(format!("q = {by_oracle} (oracle)"));
        if by_oracle != q {
            ok = false;
            lines.push("oracle disagrees".into());
        }
    }
    if list_all {
        lines.extend(q_orderings(a, limits)?.iter().map(|o| o.to_string()));
    }
    let mut classes_json = Value::Null;
    if classes {
        let (more, js) = class_lines(&classify_structures(a, limits)?);
        lines.extend(more);
        classes_json = js;
    }
    let method_name = match method {
        Method::Enum => "enum",
        Method::Formula => "formula",
        Method::Both => "both",
    };
    let json = json!({
        "n": a.n(),
        "kind": a.kind().to_string(),
        "generators": a.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "q": exact(&q),
        "method": method_name,
        "classes": classes_json,
    });
    Ok(Report { lines, json, ok })
}

fn orders(a: &NakayamaAlgebra, classes: bool, limits: Limits) -> CmdResult {
    if classes {
        let (lines, js) = class_lines(&classify_structures(a, limits)?);
        return Ok(Report { lines, json: json!({"quiver": algebra_json(a), "classes": js}), ok: true });
    }
    let all: Vec<String> = q_orderings(a, limits)?.iter().map(|o| o.to_string()).collect();
    let json = json!({"quiver": algebra_json(a), "orderings": all});
    Ok(Report { lines: all, json, ok: true })
}

fn resolve(a: &NakayamaAlgebra, m: Uniserial) -> CmdResult {
    if m.len == 0 || !a.is_valid_module(m) {
        return Err(InputError(format!("{m} is not a nonzero module of this algebra")));
    }
    let (pd, trace) = proj_dim_with_trace(a, m)?;
    let trace = trace.expect("nonzero module");
    let mut lines: Vec<String> = trace.steps.iter().enumerate().map(|(i, s)| format!("Ω^{i} = {s}")).collect();
    let terminal = match trace.terminal {
        Terminal::Projective => "projective",
        Terminal::Cycle => "cycle",
    };
    lines.push(terminal.into());
    lines.push(format!("pd = {pd}"));
    let json = json!({
        "module": m.to_string(),
        "steps": trace.steps.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "terminal": terminal,
        "pd": pd.to_string(),
    });
    Ok(Report { lines, json, ok: true })
}

fn sweep(args: &SweepArgs) -> CmdResult {
    let kind = match args.kind {
        KindArg::Linear => SweepKind::Linear,
        KindArg::Cyclic => SweepKind::Cyclic,
        KindArg::Both => SweepKind::Both,
    };
    let mut config = SweepConfig::new(kind, args.n_min, args.n_max);
    if !args.checks.is_empty() {
        config = config.with_checks(args.checks.iter().copied());
    }
    config.max_len_cyclic = args.max_len;
    config.fail_fast = args.fail_fast;
    let result = cross_validate(&config)?;

    if let Some(path) = &args.tsv {
        std::fs::write(path, result.to_tsv()).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    let json = serde_json::to_value(&result)?;
    if let Some(path) = &args.json_path {
        let text = serde_json::to_string_pretty(&json)?;
        std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }

    let mut lines = vec![format!(
        "algebras {}  orderings {}  failures {}  interpretive {}",
        result.algebras_checked,
        result.orderings_checked,
        result.failures.len(),
        result.interpretive.len()
    )];
    for (check, t) in &result.tallies {
        lines.push(format!("{check}: {}/{}", t.agreed, t.total));
    }
    lines.push(format!(
        "q/n!: {}",
        result.histogram.iter().map(|(r, c)| format!("{r} x{c}")).collect::<Vec<_>>().join(", ")
    ));
    for (label, bucket) in [("FAIL", &result.failures), ("interpretive", &result.interpretive)] {
        for f in bucket {
            let ordering = f.ordering.as_deref().map(|o| format!(" order {o}")).unwrap_or_default();
            lines.push(format!(
                "{label} [{}]{ordering}: expected {}, got {} | {}",
                f.check,
                f.expected,
                f.got,
                f.algebra.trim_end().replace('\n', "; ")
            ));
        }
    }
    Ok(Report { lines, json, ok: result.passed() })
}
