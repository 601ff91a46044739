use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bnmodes::{
    export::{self, ExportOptions},
    fixed_points_with_cap,
    props::{self, Verdict},
    AutomataSet, BooleanNetwork, Caps, Config, GraphOrder, ModeSpec, TransitionGraph,
};

#[derive(Parser)]
#[command(
    name = "bnmodes",
    version,
    about = "Boolean network dynamics under deterministic, asynchronous, memory, interval and most-permissive updating modes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the local functions (and optional update columns) over all configurations
    Table {
        model: PathBuf,
        /// Update column to add, as comma-separated automaton indices ("" for the empty update); repeatable
        #[arg(long = "phi", value_name = "SET")]
        phi: Vec<String>,
    },
    /// Print the successor configurations of one configuration
    Step {
        model: PathBuf,
        #[arg(long)]
        mode: String,
        #[arg(long)]
        from: String,
    },
    /// Emit the whole transition graph
    Graph {
        model: PathBuf,
        #[arg(long)]
        mode: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
        /// Strip self-loops from the output
        #[arg(long)]
        no_loops: bool,
        /// Whole-space dimension cap
        #[arg(long, default_value_t = bnmodes::DEFAULT_SPACE_CAP)]
        cap: usize,
        /// Most-permissive dimension cap
        #[arg(long, default_value_t = bnmodes::DEFAULT_MP_CAP)]
        mp_cap: usize,
    },
    /// List limit sets with their classification, attractor status and basins
    Attractors {
        model: PathBuf,
        #[arg(long)]
        mode: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long, default_value_t = bnmodes::DEFAULT_SPACE_CAP)]
        cap: usize,
        #[arg(long, default_value_t = bnmodes::DEFAULT_MP_CAP)]
        mp_cap: usize,
    },
    /// Decide reachability between two configurations, with a witness path
    Reach {
        model: PathBuf,
        #[arg(long)]
        mode: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Exit with code 1 when the answer is no
        #[arg(long)]
        fail_on_no: bool,
        #[arg(long, default_value_t = bnmodes::DEFAULT_SPACE_CAP)]
        cap: usize,
        #[arg(long, default_value_t = bnmodes::DEFAULT_MP_CAP)]
        mp_cap: usize,
    },
    /// Compare the transition graphs of two modes
    Compare {
        model: PathBuf,
        /// The two modes, as two values or one comma-separated value
        #[arg(long, num_args = 1..=2, required = true)]
        modes: Vec<String>,
        #[arg(long, default_value_t = bnmodes::DEFAULT_SPACE_CAP)]
        cap: usize,
        #[arg(long, default_value_t = bnmodes::DEFAULT_MP_CAP)]
        mp_cap: usize,
    },
    /// Run the built-in property suite against the model
    Check {
        model: PathBuf,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Exit with code 1 when a property fails
        #[arg(long)]
        fail_on_no: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Table { model, phi } => {
            let net = load(&model)?;
            if net.dim() > bnmodes::DEFAULT_SPACE_CAP {
                return Err(format!(
                    "dimension {} exceeds the whole-space cap {}",
                    net.dim(),
                    bnmodes::DEFAULT_SPACE_CAP
                ));
            }
            let columns = phi
                .iter()
                .map(|spec| parse_update_set(spec, net.dim()))
                .collect::<Result<Vec<_>, _>>()?;
            print!("{}", table(&net, &columns));
            Ok(ExitCode::SUCCESS)
        }
        Command::Step { model, mode, from } => {
            let net = load(&model)?;
            if net.dim() > bnmodes::config::MAX_SET_DIM {
                return Err(format!(
                    "dimension {} exceeds the successor-set limit {}",
                    net.dim(),
                    bnmodes::config::MAX_SET_DIM
                ));
            }
            let mode = parse_mode(&mode)?;
            let update = mode.update(&net).map_err(|e| e.to_string())?;
            let x = Config::from_text(&from, net.dim()).map_err(|e| e.to_string())?;
            let succ: Vec<String> = update.successors(x).iter().map(|c| c.to_string()).collect();
            println!("{}", succ.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Graph {
            model,
            mode,
            format,
            no_loops,
            cap,
            mp_cap,
        } => {
            let net = load(&model)?;
            let g = build(&net, &mode, cap, mp_cap)?;
            let options = ExportOptions {
                skip_loops: no_loops,
            };
            match format {
                GraphFormat::Dot => print!("{}", export::to_dot(&g, options)),
                GraphFormat::Json => println!("{}", export::to_json(&g, options)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Attractors {
            model,
            mode,
            format,
            cap,
            mp_cap,
        } => {
            let net = load(&model)?;
            let g = build(&net, &mode, cap, mp_cap)?;
            let structure = g.limit_structure();
            match format {
                ReportFormat::Json => {
                    let fixed =
                        fixed_points_with_cap(&net, cap).map_err(|e| e.to_string())?;
                    println!("{}", export::analysis_to_json(&g, &structure, &fixed));
                }
                ReportFormat::Text => {
                    for s in &structure.sets {
                        let kind = match s.kind {
                            bnmodes::LimitKind::FixedPoint => "fixed-point",
                            bnmodes::LimitKind::LimitCycle => "limit-cycle",
                        };
                        let members: Vec<String> =
                            s.members.iter().map(|c| c.to_string()).collect();
                        let mut line = format!("{kind} {{{}}}", members.join(" "));
                        if s.is_attractor() {
                            let basin: Vec<String> =
                                s.basin.iter().map(|c| c.to_string()).collect();
                            line.push_str(&format!(" attractor basin: {}", basin.join(" ")));
                        } else {
                            line.push_str(" not an attractor");
                        }
                        println!("{line}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reach {
            model,
            mode,
            from,
            to,
            fail_on_no,
            cap,
            mp_cap,
        } => {
            let net = load(&model)?;
            let g = build(&net, &mode, cap, mp_cap)?;
            let from = Config::from_text(&from, net.dim()).map_err(|e| e.to_string())?;
            let to = Config::from_text(&to, net.dim()).map_err(|e| e.to_string())?;
            let result = g.reach(from, to);
            if result.reachable {
                println!("yes");
                if let Some(witness) = result.witness {
                    let path: Vec<String> = witness.iter().map(|c| c.to_string()).collect();
                    println!("{}", path.join(" "));
                }
                Ok(ExitCode::SUCCESS)
            } else {
                println!("no");
                Ok(if fail_on_no {
                    ExitCode::from(1)
                } else {
                    ExitCode::SUCCESS
                })
            }
        }
        Command::Compare {
            model,
            modes,
            cap,
            mp_cap,
        } => {
            let net = load(&model)?;
            let modes = split_modes(&modes)?;
            let [a, b]: [String; 2] = modes
                .try_into()
                .map_err(|m: Vec<String>| format!("expected exactly 2 modes, got {}", m.len()))?;
            let ga = build(&net, &a, cap, mp_cap)?;
            let gb = build(&net, &b, cap, mp_cap)?;
            let cmp = ga.compare(&gb).map_err(|e| e.to_string())?;
            let na = ga.mode().to_string();
            let nb = gb.mode().to_string();
            match cmp.order {
                GraphOrder::Equal => println!("{na} equals {nb}"),
                GraphOrder::Subset => println!("{na} strictly within {nb}"),
                GraphOrder::Superset => println!("{nb} strictly within {na}"),
                GraphOrder::Incomparable => println!("{na} and {nb} are incomparable"),
            }
            println!("edges only in {na}: {}", edge_list(net.dim(), &cmp.only_left));
            println!("edges only in {nb}: {}", edge_list(net.dim(), &cmp.only_right));
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            model,
            seed,
            fail_on_no,
        } => {
            let net = load(&model)?;
            let reports = props::check_model(&net, seed);
            let mut failed = false;
            for r in &reports {
                match r.verdict {
                    Verdict::Pass => println!("PASS {}", r.name),
                    Verdict::Fail => {
                        failed = true;
                        println!("FAIL {}: {}", r.name, r.detail);
                    }
                    Verdict::Info => println!("INFO {}: {}", r.name, r.detail),
                }
            }
            Ok(if failed && fail_on_no {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

fn load(path: &PathBuf) -> Result<BooleanNetwork, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    BooleanNetwork::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_mode(text: &str) -> Result<ModeSpec, String> {
    text.parse::<ModeSpec>().map_err(|e| e.to_string())
}

fn build(
    net: &BooleanNetwork,
    mode: &str,
    cap: usize,
    mp_cap: usize,
) -> Result<TransitionGraph, String> {
    let mode = parse_mode(mode)?;
    TransitionGraph::build_with_caps(
        net,
        &mode,
        Caps {
            space: cap,
            most_permissive: mp_cap,
        },
    )
    .map_err(|e| e.to_string())
}

fn edge_list(n: usize, edges: &[(u64, u64)]) -> String {
    if edges.is_empty() {
        return "(none)".to_string();
    }
    edges
        .iter()
        .map(|&(s, d)| format!("{}->{}", Config::new(n, s), Config::new(n, d)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_update_set(spec: &str, n: usize) -> Result<AutomataSet, String> {
    let trimmed = spec.trim();
    if trimmed.is_empty() {
        return Ok(AutomataSet::empty());
    }
    let mut set = AutomataSet::empty();
    for part in trimmed.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("bad automaton index {part:?}"))?;
        if i < 1 || i > n {
            return Err(format!("automaton {i} out of range 1..={n}"));
        }
        set.insert(i);
    }
    Ok(set)
}

fn table(net: &BooleanNetwork, columns: &[AutomataSet]) -> String {
    let n = net.dim();
    let mut header: Vec<String> = vec!["x".to_string()];
    header.extend(net.names().iter().map(|name| format!("f({name})")));
    header.extend(columns.iter().map(|w| format!("phi{w}")));

    let mut rows: Vec<Vec<String>> = Vec::new();
    for code in 0..1u64 << n {
        let x = Config::new(n, code);
        let mut row = vec![x.to_string()];
        row.extend((1..=n).map(|i| if net.local(i, x) { "1".into() } else { "0".into() }));
        row.extend(columns.iter().map(|&w| net.update(w, x).to_string()));
        rows.push(row);
    }

    let widths: Vec<usize> = header
        .iter()
        .enumerate()
        .map(|(c, h)| rows.iter().map(|r| r[c].len()).max().unwrap_or(0).max(h.len()))
        .collect();
    let mut out = String::new();
    let render = |cells: &[String], out: &mut String| {
        for (c, cell) in cells.iter().enumerate() {
            if c > 0 {
                out.push_str("  ");
            }
            out.push_str(&format!("{cell:<width$}", width = widths[c]));
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };
    render(&header, &mut out);
    for row in &rows {
        render(row, &mut out);
    }
    out
}

// Expands `--modes` values: each value may itself hold two modes separated
// by a top-level comma. Commas inside braces belong to blocks, and a
// segment of bare digits continues the index list of the previous mode
// (modes never start with a digit).
fn split_modes(values: &[String]) -> Result<Vec<String>, String> {
    let mut out: Vec<String> = Vec::new();
    for value in values {
        let mut depth = 0usize;
        let mut current = String::new();
        let mut parts: Vec<String> = Vec::new();
        for c in value.chars() {
            match c {
                '{' => {
                    depth += 1;
                    current.push(c);
                }
                '}' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| format!("unbalanced braces in {value:?}"))?;
                    current.push(c);
                }
                ',' if depth == 0 => {
                    parts.push(std::mem::take(&mut current));
                }
                _ => current.push(c),
            }
        }
        parts.push(current);
        for part in parts {
            let part = part.trim().to_string();
            if part.is_empty() {
                return Err(format!("empty mode in {value:?}"));
            }
            if part.chars().all(|c| c.is_ascii_digit()) {
                match out.last_mut() {
                    Some(prev) => {
                        prev.push(',');
                        prev.push_str(&part);
                    }
                    None => return Err(format!("mode cannot start with {part:?}")),
                }
            } else {
                out.push(part);
            }
        }
    }
    Ok(out)
}
