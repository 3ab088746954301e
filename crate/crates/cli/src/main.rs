use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use gbds::boolean::{ActionForm, AtomSet};
use gbds::constructions::remark::{self, DEFAULT_TRUNCATION};
use gbds::constructions::{import_labelled_graph, remark_example, tilde};
use gbds::dot::lattice_dot;
use gbds::dynamics::{range_gap_witness, validate_system, RelativeGBDS};
use gbds::io;
use gbds::lattice::{admissible_pairs, is_admissible, quotient_system, Pair, DEFAULT_MAX_ATOMS};
use gbds::repr::{check_giut, frobenius, validate_representation, Representation};
use gbds::syntax::{parse_element, show_element};
use gbds::words::Calculus;
use gbds::Error;

#[derive(Parser)]
#[command(name = "gbds", version, about = "Relative generalized Boolean dynamical systems: ideals, constructions, representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RemarkIdeal {
    Range,
    Principal,
}

#[derive(Subcommand)]
enum Command {
    /// Atoms, actions, B_reg, range ideals and validity of a system
    Inspect {
        system: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Admissible pairs and their order
    Lattice {
        system: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ATOMS)]
        max_atoms: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// The quotient system of an admissible pair
    Quotient {
        system: PathBuf,
        /// Atoms of H, comma separated
        #[arg(long, default_value = "")]
        h: String,
        /// Atoms of S, comma separated; defaults to J
        #[arg(long)]
        s: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// The enlarged system absorbing J, with both generator maps
    Tilde {
        system: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// A system from a labelled graph
    ImportLabelled {
        graph: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// The finite × finite/cofinite system with R_a ⊊ I_a
    RemarkExample {
        #[arg(long, value_enum, default_value = "principal")]
        ideal: RemarkIdeal,
    },
    /// Relation and uniqueness-theorem checks for a representation
    CheckRep {
        system: PathBuf,
        /// Matrix representation; the remark system uses its truncated family when omitted
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Evaluate an expression symbolically, optionally in a representation
    Eval {
        system: PathBuf,
        expr: String,
        /// Also print the normal form at this depth
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Hasse diagram of the pair lattice in DOT
    ExportDot {
        system: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ATOMS)]
        max_atoms: usize,
    },
}

/// What went wrong, and the exit status it maps to.
enum Failure {
    Lib(Error),
    Input(String),
    /// Ran fine, but the object checked did not pass.
    Rejected(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<RelativeGBDS, Failure> {
    Ok(io::parse_system(&read(path)?)?)
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Input("output format not available for this command".into()))
    }
}

fn atoms_arg(sys: &RelativeGBDS, s: &str) -> Result<AtomSet, Failure> {
    let f = sys
        .algebra()
        .as_finite()
        .ok_or_else(|| Error::UnsupportedBackend("atoms exist only in finite backends".into()))?;
    let names: Vec<&str> = s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
    Ok(f.mask_of(&names)?)
}

fn inspect(path: &Path, format: Option<Format>) -> Out {
    let format = pick(format, Format::Text, &[Format::Text, Format::Json])?;
    let sys = load_system(path)?;
    let bds = sys.bds();
    let alg = sys.algebra();
    let report = validate_system(&sys)?;
    let regular = bds.regular_ideal()?;
    let mut labels = Vec::new();
    for (l, label) in bds.labels().iter().enumerate() {
        let action = match bds.action(l).form() {
            ActionForm::Dual(d) => {
                let f = alg.as_finite().expect("dual maps live on finite algebras");
                let pairs: Vec<String> = d
                    .images()
                    .iter()
                    .enumerate()
                    .filter_map(|(x, y)| y.map(|y| format!("{} → {}", f.label(x), f.label(y))))
                    .collect();
                format!("dual map {}", if pairs.is_empty() { "∅".into() } else { pairs.join(", ") })
            }
            ActionForm::Callable(c) => c.description.clone(),
        };
        let range = bds.range_ideal(l)?;
        let ideal = sys.generalized().ideal(l);
        let gap = range_gap_witness(sys.generalized(), l)?;
        labels.push((label.clone(), action, range.describe(), ideal.describe(), gap));
    }
    let mut out = String::new();
    match format {
        Format::Json => {
            let labels: Vec<Json> = labels
                .iter()
                .map(|(label, action, range, ideal, gap)| {
                    json!({
                        "label": label,
                        "action": action,
                        "range": range,
                        "ideal": ideal,
                        "range_strictly_smaller": gap.is_some(),
                        "witness": gap.as_ref().map(|w| w.to_string()),
                    })
                })
                .collect();
            let atoms = alg.as_finite().map(|f| f.labels().to_vec());
            let v = json!({
                "algebra": io::algebra_to_json(alg),
                "atoms": atoms,
                "labels": labels,
                "regular": regular.describe(),
                "relative": sys.relative().describe(),
                "valid": report.is_valid(),
                "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            });
            out = io::to_pretty(&v);
        }
        _ => {
            match alg.as_finite() {
                Some(f) => writeln!(out, "algebra: {} atoms: {}", f.len(), f.labels().join(" ")).unwrap(),
                None => writeln!(out, "algebra: {}", io::algebra_to_json(alg)).unwrap(),
            }
            writeln!(out, "B_reg: {}", regular.describe()).unwrap();
            for (label, action, range, ideal, gap) in &labels {
                writeln!(out, "label {label}: {action}").unwrap();
                writeln!(out, "  R_{label}: {range}").unwrap();
                writeln!(out, "  I_{label}: {ideal}").unwrap();
                match gap {
                    Some(w) => writeln!(out, "  R_{label} ⊊ I_{label}, witness {w}").unwrap(),
                    None => writeln!(out, "  no element of I_{label} outside R_{label} found").unwrap(),
                }
            }
            writeln!(out, "J: {}", sys.relative().describe()).unwrap();
            if report.is_valid() {
                writeln!(out, "valid: yes").unwrap();
            } else {
                write!(out, "valid: no\n{report}").unwrap();
            }
        }
    }
    Ok(out)
}

fn lattice_cmd(path: &Path, max_atoms: usize, format: Option<Format>) -> Out {
    let format = pick(format, Format::Json, &[Format::Json, Format::Dot, Format::Text])?;
    let sys = load_system(path)?;
    let lat = admissible_pairs(&sys, max_atoms)?;
    Ok(match format {
        Format::Json => io::to_pretty(&io::lattice_to_json(&sys, &lat)),
        Format::Dot => lattice_dot(&sys, &lat),
        Format::Text => {
            let mut out = format!("{} admissible pairs\n", lat.len());
            for (i, p) in lat.pairs().iter().enumerate() {
                writeln!(out, "  {i}: H = {}, S = {}", sys.show_atoms(p.h), sys.show_atoms(p.s)).unwrap();
            }
            let covers = lat.covers();
            writeln!(out, "{} covering relations", covers.len()).unwrap();
            for (i, j) in covers {
                writeln!(out, "  {i} < {j}").unwrap();
            }
            out
        }
    })
}

fn quotient_cmd(path: &Path, h: &str, s: Option<&str>, format: Option<Format>) -> Out {
    pick(format, Format::Json, &[Format::Json])?;
    let sys = load_system(path)?;
    let h = atoms_arg(&sys, h)?;
    let s = s.map(|s| atoms_arg(&sys, s)).transpose()?;
    if let Some(s) = s {
        if !is_admissible(sys.finite()?, &Pair { h, s }) {
            return Err(Error::InvalidIdeal(format!(
                "({}, {}) is not an admissible pair",
                sys.show_atoms(h),
                sys.show_atoms(s)
            ))
            .into());
        }
    }
    let q = quotient_system(&sys, h, s)?;
    Ok(io::to_pretty(&io::system_to_json(&q.system)?))
}

fn tilde_cmd(path: &Path, format: Option<Format>) -> Out {
    let format = pick(format, Format::Json, &[Format::Json, Format::Text])?;
    let sys = load_system(path)?;
    let t = tilde(&sys)?;
    let iso = t.iso_generators()?;
    let new = t.system();
    let table = |rows: &[gbds::constructions::GeneratorImage], from: &RelativeGBDS, to: &RelativeGBDS| -> Vec<(String, String)> {
        rows.iter()
            .map(|g| (show_element(from, &g.generator), show_element(to, &g.image)))
            .collect()
    };
    let phi = table(&iso.phi, &sys, new);
    let rho = table(&iso.rho, new, &sys);
    let labels = new.atom_labels()?;
    let copies: Vec<(String, String)> = t
        .copies()
        .iter()
        .map(|x| (labels[x].clone(), labels[t.copy_atom(x).expect("copy atom")].clone()))
        .collect();
    Ok(match format {
        Format::Json => {
            let rows = |r: &[(String, String)]| -> Vec<Json> {
                r.iter().map(|(g, i)| json!({"generator": g, "image": i})).collect()
            };
            io::to_pretty(&json!({
                "system": io::system_to_json(new)?,
                "copies": copies.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
                "phi": rows(&phi),
                "rho": rows(&rho),
            }))
        }
        _ => {
            let mut out = format!("atoms: {}\n", labels.join(" "));
            for (a, b) in &copies {
                writeln!(out, "copy of {a}: {b}").unwrap();
            }
            writeln!(out, "φ:").unwrap();
            for (g, i) in &phi {
                writeln!(out, "  {g} ↦ {i}").unwrap();
            }
            writeln!(out, "ρ:").unwrap();
            for (g, i) in &rho {
                writeln!(out, "  {g} ↦ {i}").unwrap();
            }
            out
        }
    })
}

fn import_cmd(path: &Path, format: Option<Format>) -> Out {
    pick(format, Format::Json, &[Format::Json])?;
    let g = io::graph_from_json(&io::parse_json(&read(path)?)?)?;
    let sys = RelativeGBDS::with_regular(import_labelled_graph(&g)?)?;
    Ok(io::to_pretty(&io::system_to_json(&sys)?))
}

fn remark_cmd(ideal: RemarkIdeal) -> Out {
    let ex = remark_example()?;
    let sys = match ideal {
        RemarkIdeal::Range => &ex.range_system,
        RemarkIdeal::Principal => &ex.principal_system,
    };
    Ok(io::to_pretty(&io::system_to_json(sys)?))
}

fn is_remark(sys: &RelativeGBDS) -> bool {
    sys.bds().actions().iter().any(|a| {
        matches!(a.form(), ActionForm::Callable(c) if c.builtin.as_deref() == Some(remark::REMARK_BUILTIN))
    })
}

fn check_rep_cmd(path: &Path, rep: Option<&Path>, format: Option<Format>) -> Out {
    let format = pick(format, Format::Text, &[Format::Text, Format::Json])?;
    let sys = load_system(path)?;
    let (relations, giut) = match rep {
        Some(rep) => {
            let r = io::rep_from_json(&sys, &io::parse_json(&read(rep)?)?)?;
            (validate_representation(&sys, &r)?, Some(check_giut(&sys, &r)?))
        }
        None if is_remark(&sys) => (remark::validate_truncated(&sys, DEFAULT_TRUNCATION, 64, 0)?, None),
        None => return Err(Failure::Input("--rep is required for this system".into())),
    };
    // the uniqueness hypotheses are informational; only broken relations reject
    let passed = relations.passed();
    let out = match format {
        Format::Json => {
            let failures: Vec<Json> = relations
                .failures
                .iter()
                .map(|f| json!({"relation": f.relation, "instance": f.instance, "residual": f.residual}))
                .collect();
            io::to_pretty(&json!({
                "relations": {
                    "checks": relations.checks,
                    "max_residual": relations.max_residual,
                    "passed": relations.passed(),
                    "failures": failures,
                },
                "uniqueness": giut.as_ref().map(|g| g.to_string()),
            }))
        }
        _ => {
            let mut out = format!("relations: {relations}");
            if let Some(g) = &giut {
                write!(out, "{g}").unwrap();
            }
            out
        }
    };
    if passed {
        Ok(out)
    } else {
        Err(Failure::Rejected(out))
    }
}

fn eval_cmd(path: &Path, expr: &str, depth: Option<usize>, rep: Option<&Path>, format: Option<Format>) -> Out {
    let format = pick(format, Format::Text, &[Format::Text, Format::Json])?;
    let sys = load_system(path)?;
    let x = parse_element(&sys, expr)?;
    let calc = Calculus::new(&sys)?;
    let nf = depth.map(|d| calc.normal_form(&x, d));
    let matrix = match rep {
        Some(rep) => {
            let r = io::rep_from_json(&sys, &io::parse_json(&read(rep)?)?)?;
            Some(r.evaluate(&sys, &x)?)
        }
        None => None,
    };
    Ok(match format {
        Format::Json => {
            let mut v = json!({"element": show_element(&sys, &x)});
            if let (Some(d), Some(nf)) = (depth, &nf) {
                v["depth"] = json!(d);
                v["normal_form"] = json!(show_element(&sys, nf));
            }
            if let Some(m) = &matrix {
                v["matrix"] = io::matrix_to_json(m);
                v["norm"] = json!(frobenius(m));
            }
            io::to_pretty(&v)
        }
        _ => {
            let mut out = format!("{}\n", show_element(&sys, &x));
            if let (Some(d), Some(nf)) = (depth, &nf) {
                writeln!(out, "normal form at depth {d}: {}", show_element(&sys, nf)).unwrap();
            }
            if let Some(m) = &matrix {
                writeln!(out, "matrix: {}", io::matrix_to_json(m)).unwrap();
            }
            out
        }
    })
}

fn run(cli: Cli) -> Out {
    match cli.command {
        Command::Inspect { system, format } => inspect(&system, format),
        Command::Lattice { system, max_atoms, format } => lattice_cmd(&system, max_atoms, format),
        Command::Quotient { system, h, s, format } => quotient_cmd(&system, &h, s.as_deref(), format),
        Command::Tilde { system, format } => tilde_cmd(&system, format),
        Command::ImportLabelled { graph, format } => import_cmd(&graph, format),
        Command::RemarkExample { ideal } => remark_cmd(ideal),
        Command::CheckRep { system, rep, format } => check_rep_cmd(&system, rep.as_deref(), format),
        Command::Eval { system, expr, depth, rep, format } => eval_cmd(&system, &expr, depth, rep.as_deref(), format),
        Command::ExportDot { system, max_atoms } => lattice_cmd(&system, max_atoms, Some(Format::Dot)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Rejected(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error[Input]: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(if matches!(e, Error::Parse(_)) { 2 } else { 1 })
        }
    }
}
