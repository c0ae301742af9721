//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::format::{algebra_to_json, fields_to_json, parse_algebra, parse_fields, parse_point_map};
use crate::lattice::ClosureOptions;
use crate::report::{analyze, error_kind, AnalyzeOptions};
use crate::vectorfield::{extract_structure, verify_homomorphism, PolyVectorField};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "megaideal", version, about = "Megaideals and automorphisms of Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Human-readable output instead of JSON.
    #[arg(long)]
    text: bool,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check antisymmetry and the Jacobi identity.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Full pipeline: series, megaideal lattice, adapted basis, automorphisms.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = 4)]
        budget: usize,
        #[arg(long)]
        full_prop34: bool,
        #[arg(long, default_value_t = 16)]
        max_enum_dim: usize,
    },
    /// Vector-field tools.
    Vf {
        #[command(subcommand)]
        command: VfCommand,
    },
}

#[derive(Subcommand, Debug)]
enum VfCommand {
    /// All pairwise brackets of the fields.
    BracketTable {
        file: PathBuf,
        #[arg(long)]
        fields: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Structure constants of the span of the fields, as an algebra file.
    Extract {
        file: PathBuf,
        #[arg(long)]
        fields: Option<String>,
        /// Algebra name; defaults to the file stem.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Push the fields forward along a point map.
    Pushforward {
        file: PathBuf,
        map: PathBuf,
        #[arg(long)]
        fields: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that push-forward along the map respects all brackets.
    CheckMap {
        file: PathBuf,
        map: PathBuf,
        #[arg(long)]
        fields: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(e.to_string()))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn select(
    fields: Vec<(String, PolyVectorField)>,
    wanted: Option<&str>,
) -> Result<Vec<(String, PolyVectorField)>, Failure> {
    let Some(list) = wanted else {
        return Ok(fields);
    };
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if let Some(missing) = names.iter().find(|n| !fields.iter().any(|(f, _)| f == *n)) {
        return Err(Error::Format(format!("no field named {missing:?}")).into());
    }
    Ok(fields
        .into_iter()
        .filter(|(f, _)| names.contains(&f.as_str()))
        .collect())
}

fn validate(file: &Path, output: &Output) -> Outcome {
    let g = parse_algebra(&read(file)?)?;
    let report = g.validate();
    let text = if output.text {
        let mut s = format!(
            "{}: dim {}, {}\n",
            g.name(),
            g.dim(),
            if report.is_valid() { "valid" } else { "invalid" }
        );
        for [i, j, k] in &report.antisymmetry_violations {
            s.push_str(&format!("  antisymmetry fails at c[{i}][{j}][{k}]\n"));
        }
        for r in &report.jacobi_residuals {
            let [i, j, k] = r.indices;
            s.push_str(&format!(
                "  Jacobi({i}, {j}, {k}) has component {} equal to {}\n",
                r.component, r.value
            ));
        }
        s
    } else {
        pretty(&json!({
            "name": g.name(),
            "dim": g.dim(),
            "valid": report.is_valid(),
            "antisymmetry_violations": report.antisymmetry_violations,
            "jacobi_residuals": report.jacobi_residuals.iter().map(|r| json!({
                "indices": r.indices,
                "component": r.component,
                "value": r.value.to_string(),
            })).collect::<Vec<_>>(),
        }))
    };
    emit(output.out.as_deref(), &text)?;
    Ok(if report.is_valid() { EXIT_OK } else { EXIT_INVALID })
}

fn bracket_table(file: &Path, fields: Option<&str>, output: &Output) -> Outcome {
    let (vars, all) = parse_fields(&read(file)?)?;
    let fields = select(all, fields)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            let b = fields[i].1.lie_bracket(&fields[j].1)?;
            text.push_str(&format!("[{}, {}] = {}\n", fields[i].0, fields[j].0, b));
            let mut result = Map::new();
            for (v, p) in vars.iter().zip(b.components()) {
                if !p.is_zero() {
                    result.insert(v.clone(), Value::String(p.format(&vars)));
                }
            }
            rows.push(json!({"left": fields[i].0, "right": fields[j].0, "result": result}));
        }
    }
    let body = if output.text {
        text
    } else {
        pretty(&json!({"variables": vars, "brackets": rows}))
    };
    emit(output.out.as_deref(), &body)?;
    Ok(EXIT_OK)
}

fn extract(file: &Path, fields: Option<&str>, name: Option<&str>, out: Option<&Path>) -> Outcome {
    let (_, all) = parse_fields(&read(file)?)?;
    let fields = select(all, fields)?;
    let stem = file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let g = extract_structure(name.unwrap_or(&stem), &fields)?;
    emit(out, &algebra_to_json(&g))?;
    Ok(EXIT_OK)
}

fn pushforward(file: &Path, map: &Path, fields: Option<&str>, out: Option<&Path>) -> Outcome {
    let (vars, all) = parse_fields(&read(file)?)?;
    let fields = select(all, fields)?;
    let map = parse_point_map(&read(map)?)?;
    let pushed = fields
        .iter()
        .map(|(n, q)| Ok((n.clone(), map.pushforward(q)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    emit(out, &fields_to_json(&vars, &pushed))?;
    Ok(EXIT_OK)
}

fn check_map(file: &Path, map: &Path, fields: Option<&str>, output: &Output) -> Outcome {
    let (_, all) = parse_fields(&read(file)?)?;
    let fields = select(all, fields)?;
    let map = parse_point_map(&read(map)?)?;
    let report = verify_homomorphism(&map, &fields)?;
    let body = if output.text {
        let mut s = format!(
            "{} pairs checked, {} failures\n",
            report.pairs_checked,
            report.failures.len()
        );
        for (a, b) in &report.failures {
            s.push_str(&format!("  [{a}, {b}]\n"));
        }
        s
    } else {
        pretty(&json!({
            "pairs_checked": report.pairs_checked,
            "passed": report.passed(),
            "failures": report.failures.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        }))
    };
    emit(output.out.as_deref(), &body)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_INVALID })
}

fn run_command(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file, output } => validate(&file, &output),
        Command::Analyze {
            file,
            output,
            budget,
            full_prop34,
            max_enum_dim,
        } => {
            let text = read(&file)?;
            let g = parse_algebra(&text)?;
            let options = AnalyzeOptions {
                closure: ClosureOptions { budget, full_prop34 },
                max_enum_dim,
            };
            let report = analyze(&g, &text, options);
            let body = if output.text { report.to_text() } else { report.to_json() };
            emit(output.out.as_deref(), &body)?;
            Ok(report.exit_code)
        }
        Command::Vf { command } => match command {
            VfCommand::BracketTable { file, fields, output } => {
                bracket_table(&file, fields.as_deref(), &output)
            }
            VfCommand::Extract { file, fields, name, out } => {
                extract(&file, fields.as_deref(), name.as_deref(), out.as_deref())
            }
            VfCommand::Pushforward { file, map, fields, out } => {
                pushforward(&file, &map, fields.as_deref(), out.as_deref())
            }
            VfCommand::CheckMap { file, map, fields, output } => {
                check_map(&file, &map, fields.as_deref(), &output)
            }
        },
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NotClosed { .. }
        | Error::LinearlyDependent { .. }
        | Error::ResidualSystem(_)
        | Error::BudgetExceeded { .. }
        | Error::EnumerationTooLarge { .. }
        | Error::NotNilpotent(_) => EXIT_INCOMPLETE,
        _ => EXIT_INPUT,
    }
}

fn detail(e: &Error) -> Value {
    let mut v = json!({"error": error_kind(e), "message": e.to_string()});
    match e {
        Error::NotClosed { left, right, bracket } => {
            v["left"] = json!(left);
            v["right"] = json!(right);
            v["bracket"] = json!(bracket);
        }
        Error::LinearlyDependent { relation } => v["relation"] = json!(relation),
        Error::ResidualSystem(count) => v["residual_equations"] = json!(count),
        Error::Json { line, column, .. } => {
            v["line"] = json!(line);
            v["column"] = json!(column);
        }
        Error::Parse { position, .. } => v["position"] = json!(position),
        _ => {}
    }
    v
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match run_command(cli) {
        Ok(code) => code,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            let code = exit_code_for(&e);
            if code == EXIT_INCOMPLETE {
                println!("{}", serde_json::to_string(&detail(&e)).expect("json"));
            }
            code
        }
    }
}
