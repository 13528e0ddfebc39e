//! `jgroup`: normal forms, solving, orbits, centralizers, counts, Hook/UTT
//! conversion and network export from the command line.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 not in the requested
//! group, 3 search budget exceeded.

use std::fmt::Write as _;
use std::io::{Read, Write as _};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jgroup_core::analysis::{export_network, solve_uniform, solve_uniform_all, UniformSolution};
use jgroup_core::closure::orbit;
use jgroup_core::extension::ext_decode;
use jgroup_core::modring::DEFAULT_BUDGET;
use jgroup_core::notation::{parse_element, parse_matrix, parse_perm, parse_utt, parse_vec3};
use jgroup_core::prelude::*;
use jgroup_core::structure::{
    center_of_j, centralizer_in_aff, centralizer_in_gl3_with_budget, centralizer_in_m3_with_budget, count_with_budget,
    CentralizerReport, MatrixGroup,
};
use jgroup_core::triadic::{rho, rho_inverse};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "jgroup", version, about = "Voicing-reflection groups over Z/n")]
struct Cli {
    /// Modulus n of Z/n (default 12).
    #[arg(long = "mod", global = true, value_name = "N")]
    modulus: Option<u64>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form and matrix of a word or a matrix.
    NormalForm {
        /// A word such as `VW`, `(13)V` or `(12) U (UV)^3`.
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        word: Option<String>,
        /// A matrix such as `[[0,1,0],[1,0,0],[1,1,11]]`.
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Apply an element to a voicing.
    Apply {
        #[arg(long)]
        element: String,
        /// A voicing such as `(0,4,7)`.
        #[arg(long)]
        vec: String,
    },
    /// Elements realizing a progression uniformly.
    Solve {
        /// Progression JSON file, or `-` for standard input.
        file: String,
        /// Restrict to one permutation part, e.g. `(12)`.
        #[arg(long)]
        sigma: Option<String>,
        /// Restrict to one reflection parity.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        k: Option<u8>,
        /// Also require the last voicing to step back to the first.
        #[arg(long)]
        cyclic: bool,
    },
    /// Everything commuting with U, V and W in the chosen ambient.
    Centralizer {
        #[arg(long, value_enum)]
        ambient: AmbientArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// The center of the group generated by U, V, W.
    Center,
    /// Brute-force order of GL(3, Z/n) or SL(3, Z/n).
    Count {
        #[arg(value_enum)]
        group: GroupArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// The orbit of a voicing under a set of generators.
    Orbit {
        #[arg(long)]
        seed: String,
        /// A preset generator set, used when no `--gen` is given.
        #[arg(long, value_enum, default_value_t = Preset::J)]
        group: Preset,
        /// Explicit generators; repeatable.
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
    /// Convert between Hook-group elements and uniform triadic transformations.
    Hook {
        #[command(subcommand)]
        direction: HookCommand,
    },
    /// Iterate retrograde-inversion enchaining from a voicing.
    Rich {
        #[arg(long)]
        seed: String,
        /// Number of steps; by default the full cycle.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// A progression as a Graphviz graph (or JSON with `--format json`).
    ExportDot {
        /// Progression JSON file, or `-` for standard input.
        file: String,
        /// Edge labels, one per step; repeatable.
        #[arg(long = "label")]
        labels: Vec<String>,
        #[arg(long)]
        cyclic: bool,
    },
}

#[derive(Subcommand, Debug)]
enum HookCommand {
    /// The transformation ⟨s,m,n⟩ represented by an element.
    ToUtt {
        #[arg(long)]
        element: String,
    },
    /// The element representing ⟨s,m,n⟩.
    FromUtt {
        #[arg(long)]
        utt: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AmbientArg {
    M3,
    Gl3,
    Aff,
    Affx,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GroupArg {
    Gl3,
    Sl3,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Preset {
    J,
    Extension,
    SigmaJPlus,
    Hook,
}

/// A failure mapped to its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotInJ | Error::NotInExtension | Error::NotInHook => 2,
            Error::BudgetExceeded { .. } => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

/// One result in every format the command supports.
struct Report {
    text: String,
    json: Value,
    dot: Option<String>,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, dot: None }
    }
}

fn element_json(a: &ExtElement) -> Value {
    json!({
        "element": a.to_string(),
        "sigma": a.sigma.to_string(),
        "k": a.j.k(),
        "m": a.j.uv_exp(),
        "n": a.j.uw_exp(),
        "matrix": a.matrix(),
    })
}

fn element_text(a: &ExtElement) -> String {
    format!("{a}\n{}\n", a.matrix())
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

/// The progression in `path`. A modulus in the file wins over the default;
/// an explicit `--mod` that disagrees with it is an error.
fn load_progression(path: &str, modulus: Option<u64>, cyclic: bool) -> Result<Progression, Failure> {
    let mut value: Value = serde_json::from_str(&read_input(path)?).map_err(|e| usage(format!("{path}: {e}")))?;
    let object = value.as_object_mut().ok_or_else(|| usage(format!("{path}: expected a JSON object")))?;
    match (object.get("modulus").and_then(Value::as_u64), modulus) {
        (Some(file), Some(flag)) if file != flag => {
            return Err(usage(format!("{path} declares modulus {file} but --mod is {flag}")));
        }
        (None, Some(flag)) => {
            object.insert("modulus".into(), json!(flag));
        }
        _ => {}
    }
    let prog = Progression::from_json(&value.to_string())?;
    Ok(if cyclic { prog.with_cyclic(true) } else { prog })
}

fn normal_form(n: Modulus, word: Option<String>, matrix: Option<String>) -> Result<Report, Failure> {
    let a = match (word, matrix) {
        (Some(w), _) => parse_element(&w, n)?,
        (None, Some(m)) => ext_decode(&parse_matrix(&m, n)?)?,
        (None, None) => return Err(usage("give --word or --matrix")),
    };
    Ok(Report::new(element_text(&a), element_json(&a)))
}

fn apply(n: Modulus, element: &str, vec: &str) -> Result<Report, Failure> {
    let a = parse_element(element, n)?;
    let x = parse_vec3(vec, n)?;
    let y = a.apply(&x);
    Ok(Report::new(format!("{y}\n"), json!({ "element": a.to_string(), "input": x, "output": y })))
}

fn solution_json(s: &UniformSolution) -> Value {
    element_json(&s.element)
}

fn solve(n: Option<u64>, file: &str, sigma: Option<String>, k: Option<u8>, cyclic: bool) -> Result<Report, Failure> {
    let prog = load_progression(file, n, cyclic)?;
    let sols = match (sigma, k) {
        (None, None) => solve_uniform_all(&prog)?,
        (sigma, k) => {
            let sigmas = match sigma {
                Some(s) => vec![parse_perm(&s)?],
                None => Perm3::ALL.to_vec(),
            };
            let ks = k.map_or(vec![0, 1], |k| vec![k]);
            let mut all = Vec::new();
            for s in &sigmas {
                for &k in &ks {
                    all.extend(solve_uniform(&prog, *s, k)?);
                }
            }
            all.sort();
            all
        }
    };
    let mut text = String::new();
    if sols.is_empty() {
        text.push_str("no solutions\n");
    }
    for s in &sols {
        let _ = writeln!(text, "{}\t{}", s.element, s.matrix);
    }
    let json = json!({
        "modulus": prog.modulus().get(),
        "cyclic": prog.is_cyclic(),
        "solutions": sols.iter().map(solution_json).collect::<Vec<_>>(),
    });
    Ok(Report::new(text, json))
}

fn centralizer(n: Modulus, ambient: AmbientArg, budget: u64) -> Result<Report, Failure> {
    let report: CentralizerReport = match ambient {
        AmbientArg::M3 => centralizer_in_m3_with_budget(n, budget)?,
        AmbientArg::Gl3 => centralizer_in_gl3_with_budget(n, budget)?,
        AmbientArg::Aff => centralizer_in_aff(n, false)?,
        AmbientArg::Affx => centralizer_in_aff(n, true)?,
    };
    let mut text = format!("{} elements\n", report.size);
    for f in report.affine_maps() {
        match f.translation.entries() {
            [0, 0, 0] => {
                let _ = writeln!(text, "{}", f.linear);
            }
            _ => {
                let _ = writeln!(text, "{} + {}", f.linear, f.translation);
            }
        }
    }
    let json = serde_json::to_value(&report).expect("plain data serializes");
    Ok(Report::new(text, json))
}

fn center(n: Modulus) -> Report {
    let elements = center_of_j(n);
    let text: String = elements.iter().map(|e| format!("{e}\n")).collect();
    let json = json!({
        "modulus": n.get(),
        "size": elements.len(),
        "elements": elements.iter().map(|e| element_json(&ExtElement::from_j(*e))).collect::<Vec<_>>(),
    });
    Report::new(text, json)
}

fn count(n: Modulus, group: GroupArg, budget: u64) -> Result<Report, Failure> {
    let (g, name) = match group {
        GroupArg::Gl3 => (MatrixGroup::Gl3, "gl3"),
        GroupArg::Sl3 => (MatrixGroup::Sl3, "sl3"),
    };
    let order = count_with_budget(g, n, budget)?;
    Ok(Report::new(format!("{order}\n"), json!({ "group": name, "modulus": n.get(), "order": order.to_string() })))
}

fn preset(n: Modulus, p: Preset) -> Vec<ExtElement> {
    let g = |t| ExtElement::generator(t, n);
    let perm = |s| ExtElement::from_perm(s, n);
    match p {
        Preset::J => GeneratorTag::ALL.iter().map(|&t| g(t)).collect(),
        Preset::Extension => {
            GeneratorTag::ALL.iter().map(|&t| g(t)).chain([perm(Perm3::T12), perm(Perm3::T13)]).collect()
        }
        Preset::SigmaJPlus => vec![
            ExtElement::from_j(JElement::uv(n)),
            ExtElement::from_j(JElement::uw(n)),
            perm(Perm3::T12),
            perm(Perm3::T13),
        ],
        Preset::Hook => vec![perm(Perm3::T13) * g(GeneratorTag::U), ExtElement::from_j(JElement::uw(n))],
    }
}

fn orbit_cmd(n: Modulus, seed: &str, group: Preset, generators: &[String]) -> Result<Report, Failure> {
    let seed = parse_vec3(seed, n)?;
    let gens = if generators.is_empty() {
        preset(n, group)
    } else {
        generators.iter().map(|s| parse_element(s, n)).collect::<Result<Vec<_>, _>>()?
    };
    let mut points = orbit(seed, &gens, |g, x| g.apply(x));
    points.sort_unstable();
    let text: String = points.iter().map(|p| format!("{p}\n")).collect();
    let json = json!({
        "seed": seed,
        "generators": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "size": points.len(),
        "orbit": points,
    });
    Ok(Report::new(text, json))
}

fn hook(n: Modulus, direction: HookCommand) -> Result<Report, Failure> {
    if n != Modulus::TWELVE {
        return Err(Error::RequiresTwelve(n.get()).into());
    }
    match direction {
        HookCommand::ToUtt { element } => {
            let h = HookElement::new(parse_element(&element, n)?)?;
            let u = rho_inverse(&h);
            let json = json!({ "element": h.to_string(), "utt": u.to_string(), "sign": u.sign.symbol(), "m": u.m(), "n": u.n() });
            Ok(Report::new(format!("{u}\n"), json))
        }
        HookCommand::FromUtt { utt } => {
            let u = parse_utt(&utt)?;
            let h = rho(&u).element();
            let mut json = element_json(&h);
            json["utt"] = json!(u.to_string());
            Ok(Report::new(element_text(&h), json))
        }
    }
}

fn rich_cmd(n: Modulus, seed: &str, steps: Option<usize>) -> Result<Report, Failure> {
    let seed = parse_vec3(seed, n)?;
    let chain = match steps {
        Some(k) => std::iter::successors(Some(seed), |x| Some(rich(x))).take(k + 1).collect(),
        None => orbit_of_element(&rich_element(n), &seed),
    };
    let text: String = chain.iter().map(|p| format!("{p}\n")).collect();
    let json = json!({ "seed": seed, "element": rich_element(n).to_string(), "chain": chain });
    Ok(Report::new(text, json))
}

fn export(n: Option<u64>, file: &str, labels: Vec<String>, cyclic: bool) -> Result<Report, Failure> {
    let prog = load_progression(file, n, cyclic)?;
    let labels = (!labels.is_empty()).then_some(labels);
    let net = export_network(&prog, labels.as_deref())?;
    let dot = net.to_dot();
    let json = serde_json::to_value(&net).expect("plain data serializes");
    Ok(Report { text: dot.clone(), json, dot: Some(dot) })
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let n = Modulus::new(cli.modulus.unwrap_or(12))?;
    match cli.command {
        Command::NormalForm { word, matrix } => normal_form(n, word, matrix),
        Command::Apply { element, vec } => apply(n, &element, &vec),
        Command::Solve { file, sigma, k, cyclic } => solve(cli.modulus, &file, sigma, k, cyclic),
        Command::Centralizer { ambient, budget } => centralizer(n, ambient, budget),
        Command::Center => Ok(center(n)),
        Command::Count { group, budget } => count(n, group, budget),
        Command::Orbit { seed, group, generators } => orbit_cmd(n, &seed, group, &generators),
        Command::Hook { direction } => hook(n, direction),
        Command::Rich { seed, steps } => rich_cmd(n, &seed, steps),
        Command::ExportDot { file, labels, cyclic } => export(cli.modulus, &file, labels, cyclic),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = cli.format;
    let result = run(cli).and_then(|r| match format {
        Format::Text => Ok(r.text),
        Format::Json => Ok(serde_json::to_string_pretty(&r.json).expect("plain data serializes") + "\n"),
        Format::Dot => r.dot.ok_or_else(|| usage("--format dot applies only to export-dot")),
    });
    match result {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
