use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use algact::actions::{
    action_to_morphism_in, enumerate_acting_morphisms, enumerate_actions, extract_action, is_acting_morphism_in,
    semidirect, validate_action, weak_actor, ActionData, ActionError, MorphismData, MorphismFile, SplitExtension,
    SplitExtensionFile, ValidationReport, Variety, DEFAULT_BUDGET,
};
use algact::algebra::{Algebra, IdentityReport, IdentityTag};
use algact::catalog::{
    builtin, builtin_names, open_problem_search, repro_suite, verify_finding, Fact, FindingFile, SearchParams,
};
use algact::opspace::{operator_space, OperatorKind};
use algact::FieldSpec;
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "algact", version, about = "Actions, split extensions and weak actors of small algebras")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for `hunt` and `enumerate` (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an identity on an algebra file.
    Check {
        file: PathBuf,
        #[arg(long)]
        identity: IdentityTag,
    },
    /// Compute an operator space; its induced operations are written as an algebra file.
    Space {
        file: PathBuf,
        #[arg(long)]
        kind: OperatorKind,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Validate an action, build its semidirect product, or extract one from a split extension
    #[command(subcommand)]
    Action(ActionCommand),
    /// Decide whether a morphism into the weak actor is acting
    #[command(subcommand)]
    Morphism(MorphismCommand),
    /// Re-run the worked examples.
    Repro {
        /// Restrict to these facts (a-g); repeatable.
        #[arg(long = "fact")]
        facts: Vec<Fact>,
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: FieldSpec,
    },
    /// Random search for a Poisson algebra with commuting bimultipliers whose [V] is not Poisson.
    Hunt(HuntArgs),
    /// Enumerate all actions between two algebras and all acting morphisms, and match them.
    Enumerate {
        /// Defaults to ALGACT_BUDGET, then to 3^10.
        #[arg(long)]
        budget: Option<u64>,
        /// Include every action and morphism in the output.
        #[arg(long)]
        list: bool,
        pairfile: PathBuf,
    },
    /// Print a builtin algebra, action or morphism as JSON.
    Builtin {
        name: Option<String>,
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: FieldSpec,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum ActionCommand {
    /// Check every condition of the action's variety.
    Validate { file: PathBuf },
    /// Build the split extension of a valid action.
    Semidirect {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recover the derived action from a split extension.
    Extract {
        file: PathBuf,
        #[arg(long)]
        variety: Variety,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MorphismCommand {
    /// Decide whether a morphism into the weak actor is acting.
    Check { file: PathBuf },
}

#[derive(Args)]
struct HuntArgs {
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 100)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write one bundle per finding into this directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Re-verify a saved finding bundle instead of searching.
    #[arg(long)]
    verify: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Domain(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "InputError: {m}"),
            CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Domain(e.to_string())
    }
}

type Outcome = Result<bool, CliError>;

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let digits = t.strip_prefix("F_").or_else(|| t.strip_prefix("p")).unwrap_or(t);
    let p: u64 = digits.parse().map_err(|_| format!("expected Q or a prime, got {s:?}"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

fn read_value(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Replaces string values under `keys` by the JSON of the file they name,
/// resolved relative to `origin`.
fn inline_paths(mut v: Value, origin: &Path, keys: &[&str]) -> Result<Value, CliError> {
    let dir = origin.parent().unwrap_or(Path::new("."));
    if let Value::Object(map) = &mut v {
        for key in keys {
            if let Some(Value::String(rel)) = map.get(*key) {
                let loaded = read_value(&dir.join(rel))?;
                map.insert((*key).to_string(), loaded);
            }
        }
    }
    Ok(v)
}

fn from_value<T: DeserializeOwned>(v: Value, path: &Path) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    from_value(inline_paths(read_value(path)?, path, &["acting", "kernel"])?, path)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn write_json<T: Serialize>(path: &Path, v: &T) -> Result<(), CliError> {
    fs::write(path, to_json(v) + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn print_identity(json: bool, r: &IdentityReport) {
    if json {
        println!("{}", to_json(r));
    } else if let Some(w) = &r.witness {
        println!("{} fails: {w}", r.identity);
    } else {
        println!("{} holds", r.identity);
    }
}

fn print_validation(json: bool, r: &ValidationReport) {
    if json {
        println!("{}", to_json(r));
        return;
    }
    println!("{} action: {}", r.variety, if r.pass { "valid" } else { "INVALID" });
    for (label, v) in &r.conditions {
        let mark = if v.holds { "ok  " } else { "FAIL" };
        println!("  {mark} {label:<7} {}", v.statement);
        if let Some(w) = &v.witness {
            println!("       witness {w}");
        }
    }
}

fn check(json: bool, file: &Path, identity: IdentityTag) -> Outcome {
    let a: Algebra = load(file)?;
    let r = a.check_identity(identity)?;
    print_identity(json, &r);
    Ok(r.holds)
}

fn space(json: bool, file: &Path, kind: OperatorKind, output: Option<&Path>) -> Outcome {
    let a: Algebra = load(file)?;
    let s = operator_space(&a, kind)?;
    if let Some(out) = output {
        match s.induced() {
            Some(alg) => write_json(out, alg)?,
            None => write_json(out, &s)?,
        }
    }
    if json {
        println!("{}", to_json(&s));
    } else {
        println!("{} of a {}-dimensional algebra: dimension {}", kind, a.dim(), s.dim());
        for (i, t) in s.basis().iter().enumerate() {
            let parts: Vec<String> = t
                .components
                .iter()
                .zip(kind.component_names())
                .map(|(m, name)| format!("{name}={:?}", m.to_strings()))
                .collect();
            println!("  b{i}: {}", parts.join(" "));
        }
        if s.induced().is_none() {
            println!("  (no induced operation)");
        }
    }
    Ok(true)
}

fn action(json: bool, cmd: ActionCommand) -> Outcome {
    match cmd {
        ActionCommand::Validate { file } => {
            let a: ActionData = load(&file)?;
            let r = validate_action(&a)?;
            print_validation(json, &r);
            Ok(r.pass)
        }
        ActionCommand::Semidirect { file, output } => {
            let a: ActionData = load(&file)?;
            match semidirect(&a) {
                Ok(e) => {
                    if let Some(out) = &output {
                        write_json(out, &e)?;
                    }
                    if json || output.is_none() {
                        println!("{}", to_json(&e));
                    } else {
                        println!("semidirect product of dimension {} written to {}", e.total.dim(), out_name(&output));
                    }
                    Ok(true)
                }
                Err(ActionError::InvalidAction(r)) => {
                    eprintln!("InvalidAction: fails {}", r.failed().join(", "));
                    print_validation(json, &r);
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        ActionCommand::Extract { file, variety, output } => {
            let f: SplitExtensionFile = from_value(read_value(&file)?, &file)?;
            let e = SplitExtension::try_from(f)?;
            let a = extract_action(&e, variety)?;
            match &output {
                Some(out) => {
                    write_json(out, &a)?;
                    if !json {
                        println!("{variety} action written to {}", out.display());
                    }
                }
                None => println!("{}", to_json(&a)),
            }
            if json && output.is_some() {
                println!("{}", to_json(&a));
            }
            Ok(true)
        }
    }
}

fn out_name(p: &Option<PathBuf>) -> String {
    p.as_ref().map_or_else(String::new, |p| p.display().to_string())
}

#[derive(Serialize)]
struct MorphismReport<'a> {
    variety: Variety,
    actor_dim: usize,
    #[serde(flatten)]
    acting: &'a algact::actions::ActingReport,
}

fn morphism(json: bool, cmd: MorphismCommand) -> Outcome {
    let MorphismCommand::Check { file } = cmd;
    let f: MorphismFile = load(&file)?;
    let m = MorphismData::try_from(f)?;
    let actor = weak_actor(&m.kernel, m.variety)?;
    let phi = m.matrix_in(&actor)?;
    let r = is_acting_morphism_in(&phi, &m.acting, &actor, m.variety)?;
    if json {
        println!("{}", to_json(&MorphismReport { variety: m.variety, actor_dim: actor.dim(), acting: &r }));
    } else {
        println!("homomorphism into {} (dimension {}): yes", m.variety.weak_actor_kind(), actor.dim());
        match &r.witness {
            None => println!("acting: yes ({} holds)", r.criterion),
            Some(w) => println!("acting: NO, ({}) defect {:?} at basis indices {:?}", r.criterion, w.defect.iter().map(|c| c.to_string()).collect::<Vec<_>>(), w.indices),
        }
    }
    Ok(r.acting)
}

fn repro(json: bool, facts: &[Fact], field: FieldSpec) -> Outcome {
    let r = repro_suite(field, facts)?;
    if json {
        println!("{}", to_json(&r));
    } else {
        println!("{r}");
    }
    Ok(r.pass)
}

fn hunt(json: bool, args: HuntArgs) -> Outcome {
    if let Some(path) = &args.verify {
        let f: FindingFile = from_value(read_value(path)?, path)?;
        let r = verify_finding(&f)?;
        if json {
            println!("{}", to_json(&r));
        } else {
            for c in &r.checks {
                println!("{} {}: {}", if c.pass { "ok  " } else { "FAIL" }, c.statement, c.observed);
            }
            println!("reproducible from seed: {}", r.reproducible_from_seed);
            println!("{}", if r.confirmed { "finding confirmed" } else { "finding NOT confirmed" });
        }
        return Ok(r.confirmed);
    }
    let params = SearchParams { p: args.p, dim: args.dim, samples: args.samples, seed: args.seed };
    let r = open_problem_search(params)?;
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
        for f in &r.findings {
            write_json(&dir.join(format!("finding_{}.json", f.index)), f)?;
        }
    }
    if json {
        println!("{}", to_json(&r));
    } else {
        let c = &r.counts;
        println!("F_{} dim {} seed {}: {} samples", params.p, params.dim, params.seed, c.sampled);
        println!("  Poisson                     {}", c.poisson);
        println!("  with commuting bimultipliers {}", c.bim_commutation);
        println!("  [V] Poisson                 {}", c.usga_poisson);
        println!("  [V] not Poisson             {}", c.usga_not_poisson);
        for f in &r.findings {
            println!("  candidate at sample {}: {}", f.index, f.failure);
        }
    }
    Ok(true)
}

#[derive(Deserialize)]
struct PairFile {
    variety: Variety,
    acting: Algebra,
    kernel: Algebra,
}

#[derive(Serialize)]
struct EnumerateReport {
    variety: Variety,
    field: FieldSpec,
    budget: u64,
    actions: usize,
    acting_morphisms: usize,
    bijection: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    action_list: Option<Vec<ActionData>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    morphism_list: Option<Vec<algact::Matrix>>,
}

fn budget_from_env() -> Result<u64, CliError> {
    match std::env::var("ALGACT_BUDGET") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Input(format!("ALGACT_BUDGET={s:?} is not a number"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn flat_key(m: &algact::Matrix) -> Vec<String> {
    m.as_flat().iter().map(|c| c.to_string()).collect()
}

fn enumerate(json: bool, budget: Option<u64>, list: bool, pairfile: &Path) -> Outcome {
    let pair: PairFile = load(pairfile)?;
    let budget = match budget {
        Some(b) => b,
        None => budget_from_env()?,
    };
    let actions = enumerate_actions(&pair.acting, &pair.kernel, pair.variety, budget)?;
    let morphisms = enumerate_acting_morphisms(&pair.acting, &pair.kernel, pair.variety, budget)?;
    let actor = weak_actor(&pair.kernel, pair.variety)?;
    let mut images = actions
        .iter()
        .map(|a| action_to_morphism_in(a, &actor).map(|m| flat_key(&m.map)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut expected: Vec<_> = morphisms.iter().map(flat_key).collect();
    images.sort();
    expected.sort();
    let bijection = images.len() == expected.len() && images == expected && {
        let mut d = images.clone();
        d.dedup();
        d.len() == images.len()
    };
    let report = EnumerateReport {
        variety: pair.variety,
        field: pair.acting.field(),
        budget,
        actions: actions.len(),
        acting_morphisms: morphisms.len(),
        bijection,
        action_list: list.then_some(actions),
        morphism_list: list.then_some(morphisms),
    };
    if json {
        println!("{}", to_json(&report));
    } else {
        println!("{} over {}: {} actions, {} acting morphisms", report.variety, report.field, report.actions, report.acting_morphisms);
        println!("bijection under action_to_morphism: {}", if bijection { "yes" } else { "NO" });
    }
    Ok(bijection)
}

fn show_builtin(name: Option<&str>, field: FieldSpec, list: bool) -> Outcome {
    if list || name.is_none() {
        for n in builtin_names(field)? {
            println!("{n}");
        }
        return Ok(true);
    }
    let b = builtin(name.unwrap_or_default(), field)?;
    println!("{}", to_json(&b));
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Check { file, identity } => check(json, &file, identity),
        Command::Space { file, kind, output } => space(json, &file, kind, output.as_deref()),
        Command::Action(cmd) => action(json, cmd),
        Command::Morphism(cmd) => morphism(json, cmd),
        Command::Repro { facts, field } => repro(json, &facts, field),
        Command::Hunt(args) => hunt(json, args),
        Command::Enumerate { budget, list, pairfile } => enumerate(json, budget, list, &pairfile),
        Command::Builtin { name, field, list } => show_builtin(name.as_deref(), field, list),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("InputError: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
