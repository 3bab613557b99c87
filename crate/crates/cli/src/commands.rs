use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use graded_centre::centre::{build_centre_monad, check_centrality_conditions, inclusion_into, regrade_to_centre, Bound, CentreError};
use graded_centre::effectlang::{parse_program, reorder_report, EffectError};
use graded_centre::graded_monad::laws::{
    check_commutative, check_costrength_coherence, check_monad_laws, check_order_laws, check_strength_laws,
};
use graded_centre::graded_monad::registry::BUILTINS;
use graded_centre::graded_monad::{check_graded_monad_morphism, registry, GradedMonadMorphism, GradedStrongMonad, RegistryArgs};
use graded_centre::pomonoid::{
    bimonoid_from_absorbing_top, centre_of_pomonoid, check_bimonoid, check_duoid, check_pomonoid_morphism,
    parse_structure, validate_pomonoid, Bimonoid, Duoid, Pomonoid, PomonoidError, PomonoidMorphism, SecondProduct,
};
use graded_centre::relaxations::{self, build_language_writer, check_duoidal_gradation, derive_monoidal_m};
use graded_centre::report::Report;
use serde_json::json;

use crate::{
    AnalyzeArgs, BimonoidCmd, Cli, Command, DuoidalCmd, ExamplesCmd, FileCmd, Global, MonadArgs, MonadCmd, PomonoidCmd,
};

/// Environment variable naming the directory searched for relative input
/// files that do not exist in the working directory.
pub const FIXTURES_ENV: &str = "GCENTRE_FIXTURES";

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub error: Option<String>,
}

/// Everything that stops a command before it produces a verdict.
enum Stop {
    /// Bad input: exit 2.
    Input(String),
    /// A check failed before any report could be built: exit 1.
    Check(String),
}

type Run = Result<u8, Stop>;

struct Out {
    json: bool,
    text: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn record(&mut self, v: serde_json::Value) {
        self.line(v.to_string());
    }

    /// Prints the report and returns its exit code.
    fn report(&mut self, r: &Report) -> u8 {
        if self.json {
            self.line(serde_json::to_string(r).expect("reports serialize"));
        } else {
            let _ = write!(self.text, "{r}");
        }
        if r.passed() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let mut out = Out { json: cli.global.json, text: String::new() };
    let g = &cli.global;
    let result = match &cli.command {
        Command::Pomonoid(PomonoidCmd::Check { file }) => pomonoid_check(file, &mut out),
        Command::Pomonoid(PomonoidCmd::Centre { file }) => pomonoid_centre(file, &mut out),
        Command::Duoid(FileCmd::Check { file }) => duoid_check(file, &mut out),
        Command::Bimonoid(BimonoidCmd::Check { file }) => bimonoid_check(file, &mut out),
        Command::Bimonoid(BimonoidCmd::FromTop { file, top }) => bimonoid_from_top(file, top, &mut out),
        Command::Monad(cmd) => monad(cmd, g, &mut out),
        Command::Duoidal(DuoidalCmd::Check(args)) => duoidal_check(args, g, &mut out),
        Command::Analyze(args) => analyze(args, g, &mut out),
        Command::Examples(ExamplesCmd::List) => examples(&mut out),
    };
    match result {
        Ok(code) => Outcome { code, stdout: out.text, error: None },
        Err(Stop::Input(e)) => Outcome { code: EXIT_INPUT, stdout: out.text, error: Some(e) },
        Err(Stop::Check(e)) => {
            if out.json {
                out.record(json!({ "verdict": "fail", "reason": e }));
            } else {
                out.line(format!("FAIL: {e}"));
            }
            Outcome { code: EXIT_FAIL, stdout: out.text, error: None }
        }
    }
}

fn fixtures_dir() -> Option<PathBuf> {
    std::env::var_os(FIXTURES_ENV).map(PathBuf::from)
}

/// Reads `path`, falling back to the fixture directory for relative paths.
fn read_input(path: &Path) -> Result<String, Stop> {
    let mut candidates = vec![path.to_path_buf()];
    if path.is_relative() {
        if let Some(dir) = fixtures_dir() {
            candidates.push(dir.join(path));
            if let Some(name) = path.file_name() {
                candidates.push(dir.join(name));
            }
        }
    }
    for c in &candidates {
        if c.is_file() {
            return std::fs::read_to_string(c).map_err(|e| Stop::Input(format!("{}: {e}", c.display())));
        }
    }
    Err(Stop::Input(format!("file not found: {}", path.display())))
}

/// Law violations are check failures; malformed files are input errors.
fn pomonoid_stop(file: &Path, e: PomonoidError) -> Stop {
    let msg = format!("{}: {e}", file.display());
    match e {
        PomonoidError::AssociativityViolation(..)
        | PomonoidError::UnitViolation(_)
        | PomonoidError::AntisymmetryViolation(..)
        | PomonoidError::MonotonicityViolation(..)
        | PomonoidError::NotAbsorbing(_)
        | PomonoidError::NotTop(_) => Stop::Check(msg),
        _ => Stop::Input(msg),
    }
}

fn load_pomonoid(file: &Path) -> Result<Pomonoid, Stop> {
    let text = read_input(file)?;
    let raw = parse_structure(&text).map_err(|e| pomonoid_stop(file, e))?;
    validate_pomonoid(&raw.base).map_err(|e| pomonoid_stop(file, e))
}

fn load_second_product(file: &Path) -> Result<SecondProduct, Stop> {
    let text = read_input(file)?;
    let raw = parse_structure(&text).map_err(|e| pomonoid_stop(file, e))?;
    SecondProduct::from_raw(&raw).map_err(|e| pomonoid_stop(file, e))
}

fn pomonoid_check(file: &Path, out: &mut Out) -> Run {
    let p = load_pomonoid(file)?;
    if out.json {
        out.record(json!({
            "verdict": "pass",
            "elements": p.names(),
            "unit": p.name(p.unit()),
            "commutative": p.is_commutative(),
            "ordered": p.has_nontrivial_order(),
        }));
    } else {
        out.line(format!("valid pomonoid {} with unit {}", p, p.name(p.unit())));
        out.line(format!("commutative: {}", p.is_commutative()));
        out.line(format!("nontrivial order: {}", p.has_nontrivial_order()));
    }
    Ok(EXIT_PASS)
}

fn pomonoid_centre(file: &Path, out: &mut Out) -> Run {
    let p = load_pomonoid(file)?;
    let (z, incl) = centre_of_pomonoid(&p);
    let r = check_pomonoid_morphism(&incl);
    if out.json {
        out.record(json!({ "centre": z.names(), "unit": z.name(z.unit()) }));
    } else {
        out.line(z.to_string());
    }
    if r.passed() {
        Ok(EXIT_PASS)
    } else {
        Ok(out.report(&r))
    }
}

fn duoid_check(file: &Path, out: &mut Out) -> Run {
    let d = Duoid(load_second_product(file)?);
    Ok(out.report(&check_duoid(&d)))
}

fn bimonoid_check(file: &Path, out: &mut Out) -> Run {
    let b = Bimonoid(load_second_product(file)?);
    Ok(out.report(&check_bimonoid(&b)))
}

fn bimonoid_from_top(file: &Path, top: &str, out: &mut Out) -> Run {
    let p = load_pomonoid(file)?;
    let b = bimonoid_from_absorbing_top(&p, top).map_err(|e| pomonoid_stop(file, e))?;
    if !out.json {
        out.line(b.0.to_text().trim_end());
    }
    Ok(out.report(&check_bimonoid(&b)))
}

fn bound(g: &Global) -> Bound {
    g.bound.map(Bound::Fixed).unwrap_or_default()
}

fn centre_stop(e: CentreError) -> Stop {
    match e {
        CentreError::CentralityViolation { .. } | CentreError::NotASubmonad(_) => Stop::Check(e.to_string()),
        other => Stop::Input(other.to_string()),
    }
}

/// Resolves a monad name, including the `centre:` and `regrade:` prefixes.
fn build_monad(name: &str, args: &MonadArgs, g: &Global) -> Result<GradedStrongMonad, Stop> {
    if let Some(inner) = name.strip_prefix("centre:") {
        let m = build_monad(inner, args, g)?;
        return build_centre_monad(&m, bound(g), g.max_set_size).map(|c| c.monad).map_err(centre_stop);
    }
    if let Some(inner) = name.strip_prefix("regrade:") {
        let m = build_monad(inner, args, g)?;
        return Ok(regrade_to_centre(&m).0);
    }
    let reg = RegistryArgs {
        pomonoid: args.pomonoid.as_deref().map(load_pomonoid).transpose()?,
        monoid: args.monoid.as_deref().map(load_pomonoid).transpose()?,
        alphabet: args.alphabet.clone(),
        cap: args.cap,
        generators: if args.generators.is_empty() { None } else { Some(args.generators.clone()) },
    };
    registry(name, &reg).map_err(|e| Stop::Input(e.to_string()))
}

fn required_monad(args: &MonadArgs, g: &Global) -> Result<GradedStrongMonad, Stop> {
    let name = args.monad.as_deref().ok_or_else(|| Stop::Input("--monad is required".into()))?;
    build_monad(name, args, g)
}

fn monad(cmd: &MonadCmd, g: &Global, out: &mut Out) -> Run {
    let k = g.max_set_size;
    match cmd {
        MonadCmd::Laws(args) => {
            let m = required_monad(args, g)?;
            let mut code = EXIT_PASS;
            for r in [check_monad_laws(&m, k), check_order_laws(&m, k), check_strength_laws(&m, k), check_costrength_coherence(&m, k)] {
                code = code.max(out.report(&r));
            }
            Ok(code)
        }
        MonadCmd::Commutative(args) => {
            let m = required_monad(args, g)?;
            Ok(out.report(&check_commutative(&m, k)))
        }
        MonadCmd::Centre { monad, grade, set_size } => monad_centre(monad, grade.as_deref(), *set_size, g, out),
        MonadCmd::Morphism { monad, from, to } => {
            let h = canonical_morphism(from, to, monad, g)?;
            Ok(out.report(&check_graded_monad_morphism(&h, k)))
        }
        MonadCmd::Centrality { monad, from, to } => {
            let h = canonical_morphism(from, to, monad, g)?;
            let v = check_centrality_conditions(&h, bound(g), k).map_err(centre_stop)?;
            let code = out.report(&v.report);
            if out.json {
                out.record(json!({ "condition1": v.condition1, "condition2": v.condition2, "agree": v.agree() }));
            } else {
                out.line(format!("condition 1: {}, condition 2: {}", v.condition1, v.condition2));
            }
            Ok(if v.agree() { code } else { EXIT_FAIL })
        }
    }
}

fn monad_centre(args: &MonadArgs, grade: Option<&str>, set_size: Option<usize>, g: &Global, out: &mut Out) -> Run {
    let m = required_monad(args, g)?;
    let p = m.grading();
    if let Some(z) = grade {
        let zg = p.grade(z).ok_or_else(|| Stop::Input(format!("unknown grade {z}")))?;
        if !p.is_central(zg) {
            return Err(Stop::Input(format!("grade {z} is not central in {p}")));
        }
    }
    let k = set_size.unwrap_or(g.max_set_size);
    let c = build_centre_monad(&m, bound(g), k).map_err(centre_stop)?;
    let records = c
        .records
        .iter()
        .filter(|r| grade.is_none_or(|z| r.grade == z))
        .filter(|r| set_size.is_none_or(|n| r.set == n));
    if !out.json {
        out.line(format!("{:<8} {:>4} {:>8} {:>8}  members", "grade", "|X|", "carrier", "centre"));
    }
    for r in records {
        if out.json {
            out.line(serde_json::to_string(r).expect("records serialize"));
        } else {
            out.line(format!("{:<8} {:>4} {:>8} {:>8}  {}", r.grade, r.set, r.carrier_size, r.centre_size, r.members.join(" ")));
        }
    }
    Ok(EXIT_PASS)
}

/// The morphism between two named monads that the names imply: the centre
/// inclusion, the identity, the collapse onto a trivially graded target, or
/// the inclusion of a monad graded by the centre of the target's grading.
fn canonical_morphism(from: &str, to: &str, args: &MonadArgs, g: &Global) -> Result<GradedMonadMorphism, Stop> {
    let t = build_monad(to, args, g)?;
    if from.strip_prefix("centre:") == Some(to) {
        return build_centre_monad(&t, bound(g), g.max_set_size).map(|c| c.inclusion).map_err(centre_stop);
    }
    let s = build_monad(from, args, g)?;
    let (sp, tp) = (s.grading().clone(), t.grading().clone());
    if sp == tp {
        let phi = PomonoidMorphism::identity(&sp);
        return Ok(GradedMonadMorphism::new(s, t, phi, |_, _, v| Ok(v.clone())));
    }
    if tp.len() == 1 {
        let phi = PomonoidMorphism::from_grades(sp.clone(), tp.clone(), vec![tp.unit(); sp.len()])
            .map_err(|e| Stop::Input(e.to_string()))?;
        return Ok(GradedMonadMorphism::new(s, t, phi, |_, _, v| Ok(v.clone())));
    }
    inclusion_into(&s, &t).map_err(|_| Stop::Input(format!("no canonical morphism from {from} to {to}")))
}

fn duoidal_check(args: &MonadArgs, g: &Global, out: &mut Out) -> Run {
    let k = g.max_set_size;
    let name = args.monad.as_deref().unwrap_or("language_writer");
    if name == "language_writer" {
        let alphabet = args.alphabet.clone().unwrap_or_else(|| "ab".into());
        let cap = args.cap.unwrap_or(2);
        let generators: Vec<String> = if args.generators.is_empty() {
            alphabet.chars().map(|c| format!("{{{c}}}")).collect()
        } else {
            args.generators.clone()
        };
        let duoid = relaxations::language_duoid_from_literals(&alphabet, cap, &generators, relaxations::DEFAULT_BUDGET)
            .map_err(|e| Stop::Input(e.to_string()))?;
        if !out.json {
            out.line(format!("language duoid over {{{alphabet}}} with cap {cap}: {} languages", duoid.languages.len()));
        }
        let dm = build_language_writer(&duoid);
        return Ok(out.report(&check_duoidal_gradation(&dm, k)));
    }
    let m = build_monad(name, args, g)?;
    let (_, report) = derive_monoidal_m(&m, k).map_err(|e| Stop::Check(e.to_string()))?;
    Ok(out.report(&report))
}

fn effect_stop(file: &Path, e: EffectError) -> Stop {
    Stop::Input(format!("{}:{e}", file.display()))
}

fn analyze(args: &AnalyzeArgs, g: &Global, out: &mut Out) -> Run {
    let p = load_pomonoid(&args.pomonoid)?;
    let text = read_input(&args.program)?;
    let prog = parse_program(&text).map_err(|e| effect_stop(&args.program, e))?;
    let monad = match &args.monad {
        Some(name) => {
            let margs = MonadArgs {
                monad: Some(name.clone()),
                pomonoid: Some(args.pomonoid.clone()),
                monoid: args.monoid.clone(),
                ..MonadArgs::default()
            };
            Some(build_monad(name, &margs, g)?)
        }
        None => None,
    };
    let report = reorder_report(&prog, &p, monad.as_ref(), g.max_set_size).map_err(|e| effect_stop(&args.program, e))?;
    if out.json {
        out.text.push_str(&report.to_json_lines());
    } else {
        let _ = write!(out.text, "{report}");
    }
    Ok(EXIT_PASS)
}

fn examples(out: &mut Out) -> Run {
    for (name, description) in BUILTINS {
        if out.json {
            out.record(json!({ "kind": "monad", "name": name, "description": description }));
        } else {
            out.line(format!("monad    {name:<20} {description}"));
        }
    }
    let dir = fixtures_dir().unwrap_or_else(|| PathBuf::from("fixtures"));
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map(|rd| rd.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.is_file()).collect())
        .unwrap_or_default();
    files.sort();
    for f in files {
        if out.json {
            out.record(json!({ "kind": "fixture", "path": f.display().to_string() }));
        } else {
            out.line(format!("fixture  {}", f.display()));
        }
    }
    Ok(EXIT_PASS)
}
