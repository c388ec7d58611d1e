use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use superfan::decorated_fan::{enumerate_decorations, DecoratedFan};
use superfan::embedding::{binomials_in_box, verify_relation, DEFAULT_WITNESS_CAP};
use superfan::fan::Fan;
use superfan::io::{self, parse_fan, parse_monomials, parse_morphism, print_fan, print_morphism};
use superfan::morphism::{fiber_product, validate_morphism, DecoratedFanMorphism};
use superfan::report::{render, ReportRequest};
use superfan::semigroup::DEFAULT_K_MAX;
use superfan::supertorus::SupertorusDatum;
use superfan::{Error, IntVector};

#[derive(Parser)]
#[command(
    name = "superfan",
    version,
    about = "Decorated fans of toric supervarieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fan axioms and c-admissibility of the decorations.
    Validate { path: PathBuf },
    /// Print invariants of a valid decorated fan.
    Report {
        path: PathBuf,
        #[arg(long)]
        split: bool,
        #[arg(long)]
        smooth: bool,
        /// DS invariant A0/J of the chart of this cone.
        #[arg(long, value_name = "CONE")]
        ds: Option<String>,
        /// Stabilizer and orbit at this cone.
        #[arg(long, value_name = "CONE")]
        orbit: Option<String>,
        /// Orbit closure of this cone.
        #[arg(long, value_name = "CONE")]
        closure: Option<String>,
        /// Rational space of parameters the decorations admit.
        #[arg(long)]
        cspace: bool,
        /// Degree of the fermionic sheaf (rank-1 complete fans).
        #[arg(long)]
        degree: bool,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: u32,
    },
    /// List binomials of the ideal of Y_{A,B} from relations in a box.
    Ideal {
        path: PathBuf,
        #[arg(long = "box", env = "SUPERFAN_BOX", default_value_t = 4,
              value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
        witness_cap: u32,
    },
    /// Fiber product of two morphism files with a common target.
    FiberProduct {
        first: PathBuf,
        second: PathBuf,
        /// Output fan file; projections go to `<out>.proj1` and `<out>.proj2`.
        #[arg(long)]
        out: PathBuf,
    },
    /// All c-admissible decorations of the fan in a file.
    Enumerate {
        path: PathBuf,
        #[arg(long)]
        split: bool,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: u32,
    },
}

enum Failure {
    Parse(String),
    Invalid(String),
    Unsupported(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Unsupported(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Invalid(m) | Failure::Unsupported(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::FiberProductUnsupported => Failure::Unsupported(e.to_string()),
            other => Failure::Invalid(format!("error: {other}")),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn parse_error(path: &Path, e: io::ParseError) -> Failure {
    Failure::Parse(format!("{}: parse error at {e}", path.display()))
}

/// Parses and checks a fan file. Any violation is a validation failure.
fn load_fan(path: &Path) -> Outcome<DecoratedFan> {
    let file = parse_fan(&read(path)?).map_err(|e| parse_error(path, e))?;
    let fan_report = file.fan_report();
    if !fan_report.is_valid() {
        return Err(Failure::Invalid(fan_report.to_string()));
    }
    let x = file.into_decorated()?;
    let report = x.validate_decorations();
    if !report.is_valid() {
        return Err(Failure::Invalid(report.to_string()));
    }
    Ok(x)
}

fn validate(path: &Path) -> Outcome<String> {
    let x = load_fan(path)?;
    Ok(format!(
        "valid: rank {}, {} cones, c = {}",
        x.rank(),
        x.fan().len(),
        x.c()
    ))
}

fn ideal(path: &Path, bound: u32, cap: u32) -> Outcome<String> {
    let file = parse_monomials(&read(path)?).map_err(|e| parse_error(path, e))?;
    let data = file.into_data(cap)?;
    let relations = binomials_in_box(&data, bound)?;
    let mut lines = Vec::new();
    for r in &relations {
        if !verify_relation(&data, r) {
            return Err(Failure::Invalid(format!(
                "internal error: `{r}` does not vanish"
            )));
        }
        lines.push(r.to_string());
    }
    Ok(lines.join("\n"))
}

struct LoadedMorphism {
    morphism: DecoratedFanMorphism,
    src_path: PathBuf,
}

fn resolve(base: &Path, target: &str) -> PathBuf {
    let p = Path::new(target);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.parent().unwrap_or(Path::new(".")).join(p)
    }
}

fn load_morphism(path: &Path) -> Outcome<LoadedMorphism> {
    let file = parse_morphism(&read(path)?).map_err(|e| parse_error(path, e))?;
    let src_path = resolve(path, &file.src);
    let src = load_fan(&src_path)?;
    let dst = load_fan(&resolve(path, &file.dst))?;
    let phi = file.lattice_map(src.rank())?;
    let morphism = validate_morphism(&src, &dst, &phi, &file.a)?;
    Ok(LoadedMorphism { morphism, src_path })
}

fn fiber(first: &Path, second: &Path, out: &Path) -> Outcome<String> {
    let f1 = load_morphism(first)?;
    let f2 = load_morphism(second)?;
    let fp = fiber_product(&f1.morphism, &f2.morphism)?;
    let write = |p: &Path, text: String| {
        fs::write(p, text).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))
    };
    write(out, print_fan(&fp.object))?;
    let out_name = out
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let absolute = |p: &Path| {
        fs::canonicalize(p)
            .unwrap_or_else(|_| p.to_path_buf())
            .display()
            .to_string()
    };
    let mut written = vec![out.display().to_string()];
    for (k, (proj, target)) in [
        (&fp.proj_first, &f1.src_path),
        (&fp.proj_second, &f2.src_path),
    ]
    .into_iter()
    .enumerate()
    {
        let p = PathBuf::from(format!("{}.proj{}", out.display(), k + 1));
        write(
            &p,
            print_morphism(&out_name, &absolute(target), proj.phi_bar(), proj.a()),
        )?;
        written.push(p.display().to_string());
    }
    Ok(format!(
        "fiber product: rank {}, c = {}, {} cones\nwrote {}",
        fp.object.rank(),
        fp.object.c(),
        fp.object.fan().len(),
        written.join(", ")
    ))
}

fn enumerate(path: &Path, split: bool, k_max: u32) -> Outcome<String> {
    let file = parse_fan(&read(path)?).map_err(|e| parse_error(path, e))?;
    let report = file.fan_report();
    if !report.is_valid() {
        return Err(Failure::Invalid(report.to_string()));
    }
    let torus = SupertorusDatum::new(file.rank, file.c.clone())?;
    let fan = Fan::new(file.rank, file.cones)?;
    let all = enumerate_decorations(&torus, &fan, split, k_max)?;
    let mut lines = vec![format!("count: {}", all.len())];
    for (k, x) in all.iter().enumerate() {
        let parts: Vec<String> = fan
            .maximal_cones()
            .into_iter()
            .map(|i| format!("{}={}", fan.id(i), fmt_list(x.decoration_at(i))))
            .collect();
        let mut line = format!("{}: {}", k + 1, parts.join(" "));
        if let Ok(d) = x.degree() {
            line.push_str(&format!(" degree O({d})"));
        }
        lines.push(line);
    }
    Ok(lines.join("\n"))
}

fn fmt_list(vs: &[IntVector]) -> String {
    let parts: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn run(cli: Cli) -> Outcome<String> {
    match cli.command {
        Command::Validate { path } => validate(&path),
        Command::Report {
            path,
            split,
            smooth,
            ds,
            orbit,
            closure,
            cspace,
            degree,
            k_max,
        } => {
            let x = load_fan(&path)?;
            let req = ReportRequest {
                split,
                smooth,
                ds,
                orbit,
                closure,
                cspace,
                degree,
                k_max,
            };
            Ok(render(&x, &req)?)
        }
        Command::Ideal {
            path,
            bound,
            witness_cap,
        } => ideal(&path, bound, witness_cap),
        Command::FiberProduct { first, second, out } => fiber(&first, &second, &out),
        Command::Enumerate { path, split, k_max } => enumerate(&path, split, k_max),
    }
}

// a closed pipe downstream is not our failure
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            if !text.is_empty() {
                emit(&text);
            }
            ExitCode::SUCCESS
        }
        Err(f @ Failure::Invalid(_)) => {
            emit(f.message());
            ExitCode::from(f.code())
        }
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.code())
        }
    }
}
