use clap::{Parser, Subcommand};
use linkspaces::corpus::{self, Space, Status};
use linkspaces::dsl::{self, ReportFormat};
use linkspaces::homotopy::{factor_meridians, EngineError};
use linkspaces::link_model::LinkDescription;
use std::path::PathBuf;
use std::process::ExitCode;

/// Homotopy types of spaces of links in the 3-sphere, knots in a solid
/// torus, and knots in a thickened torus, from companionship trees.
#[derive(Parser)]
#[command(name = "linkspaces", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a program, echoing its canonical form.
    Parse { file: PathBuf },
    /// Compute the fundamental group of an embedding space.
    Compute {
        /// framed | unframed | solid-torus | thickened-torus
        #[arg(long)]
        space: Space,
        /// expr | presentation | abelianization | space | json
        #[arg(long, default_value = "expr")]
        output: ReportFormat,
        /// Program file; omit when using --expr.
        file: Option<PathBuf>,
        /// Inline program text.
        #[arg(long)]
        expr: Option<String>,
    },
    /// Exhibit the meridional subgroup as a direct factor.
    FactorMeridians {
        file: Option<PathBuf>,
        #[arg(long)]
        expr: Option<String>,
    },
    /// Run the bundled corpus: oracle rows must match, snapshot rows are
    /// diffed against their stored values.
    Verify {
        /// Only run entries whose id contains this substring.
        #[arg(long)]
        filter: Option<String>,
        /// Rewrite snapshot expectations in the corpus directory
        /// (requires LINKSPACES_CORPUS to point at a writable copy).
        #[arg(long)]
        update_snapshots: bool,
    },
}

const EXIT_INTERNAL: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn read_program(file: Option<PathBuf>, expr: Option<String>) -> Result<String, String> {
    match (file, expr) {
        (Some(p), None) => std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display())),
        (None, Some(s)) => Ok(s),
        (Some(_), Some(_)) => Err("pass either a file or --expr, not both".into()),
        (None, None) => Err("pass a program file or --expr TEXT".into()),
    }
}

fn parse_program(text: &str) -> Result<LinkDescription, String> {
    // JSON documents are accepted anywhere a program is
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return dsl::from_json(text).map_err(|e| e.to_string());
    }
    dsl::parse(text).map_err(|e| e.to_string())
}

fn engine_exit(e: &EngineError) -> u8 {
    match e {
        EngineError::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Cmd::Parse { file } => {
            let text = read_program(Some(file), None)?;
            let desc = parse_program(&text)?;
            println!("{}", dsl::to_dsl(&desc));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Compute {
            space,
            output,
            file,
            expr,
        } => {
            let text = read_program(file, expr)?;
            let desc = parse_program(&text)?;
            match corpus::compute_space(&desc, space) {
                Ok(result) => {
                    print!("{}", dsl::render_report(&result, output));
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(ExitCode::from(engine_exit(&e)))
                }
            }
        }
        Cmd::FactorMeridians { file, expr } => {
            let text = read_program(file, expr)?;
            let desc = parse_program(&text)?;
            match factor_meridians(&desc) {
                Ok(split) => {
                    println!("meridional = {}", split.meridional);
                    println!("complement = {}", split.complement);
                    for (i, w) in split.words.iter().enumerate() {
                        println!("mu{i} = {w}");
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(ExitCode::from(engine_exit(&e)))
                }
            }
        }
        Cmd::Verify {
            filter,
            update_snapshots,
        } => run_verify(filter, update_snapshots),
    }
}

fn run_verify(filter: Option<String>, update_snapshots: bool) -> Result<ExitCode, String> {
    let entries = corpus::load()?;
    let selected: Vec<_> = entries
        .iter()
        .filter(|e| filter.as_ref().is_none_or(|f| e.id.contains(f.as_str())))
        .collect();
    if selected.is_empty() {
        return Err("no corpus entries match the filter".into());
    }

    if update_snapshots {
        return update_snapshot_files(&selected);
    }

    let mut failures = 0usize;
    for entry in &selected {
        for outcome in corpus::check_entry(entry) {
            let tag = match entry.status {
                Status::Oracle => "oracle",
                Status::Snapshot => "snapshot",
            };
            if outcome.passed {
                println!(
                    "PASS [{tag}] {} / {}: {}",
                    outcome.id, outcome.space, outcome.detail
                );
            } else {
                failures += 1;
                println!(
                    "FAIL [{tag}] {} / {}: {}",
                    outcome.id, outcome.space, outcome.detail
                );
            }
        }
    }
    println!(
        "{} entries checked, {} failure{}",
        selected.len(),
        failures,
        if failures == 1 { "" } else { "s" }
    );
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INPUT)
    })
}

fn update_snapshot_files(entries: &[&corpus::CorpusEntry]) -> Result<ExitCode, String> {
    let dir = std::env::var("LINKSPACES_CORPUS").map_err(|_| {
        "snapshot updates need LINKSPACES_CORPUS pointing at a writable corpus directory"
            .to_string()
    })?;
    let dir = PathBuf::from(dir);
    let mut updated = 0usize;
    for entry in entries {
        if entry.status != Status::Snapshot {
            continue;
        }
        let desc = parse_program(&entry.program)?;
        let mut new_expected = Vec::new();
        for space in Space::all() {
            if entry.expected.contains_key(space.key()) {
                let value = corpus::snapshot_value(&desc, space).map_err(|e| e.to_string())?;
                new_expected.push((space, value));
            }
        }
        let path = dir.join(format!("{}.toml", entry.id));
        let src = std::fs::read_to_string(&path)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        let mut out = String::new();
        for line in src.lines() {
            let mut replaced = false;
            for (space, value) in &new_expected {
                if line.trim_start().starts_with(&format!("{} =", space.key()))
                    && !line.contains('[')
                {
                    out.push_str(&format!("{} = \"{value}\"\n", space.key()));
                    replaced = true;
                    break;
                }
            }
            if !replaced {
                out.push_str(line);
                out.push('\n');
            }
        }
        std::fs::write(&path, out).map_err(|e| format!("{}: {e}", path.display()))?;
        updated += 1;
        println!("updated {}", path.display());
    }
    println!(
        "{updated} snapshot file{} updated",
        if updated == 1 { "" } else { "s" }
    );
    Ok(ExitCode::SUCCESS)
}
