//! Command-line front end. [`run`] does all the work and returns the exit code
//! and output so it can be exercised without spawning a process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::error::Error;
use crate::f2linalg::BinaryMatrix;
use crate::graph::{parse_graph, GraphFormat, SimpleGraph};
use crate::graphcode::{distance, max_k, CodeBundle, GraphCode, MAX_DISTANCE_QUBITS};
use crate::graphstate::{canonical_graph6, generators, lc_operator, lc_orbit};
use crate::oracle::{verify_graph, MAX_ORACLE_QUBITS};
use crate::pauli::PauliOperator;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<String, Failure>;

#[derive(Parser, Debug)]
#[command(name = "graphcodes", version, about = "Graph states and graph codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct GraphInput {
    /// Graph file, or `-` for standard input.
    graph: PathBuf,
    /// Input format: edgelist, adj or graph6.
    #[arg(long, default_value = "edgelist", value_parser = parse_format)]
    format: GraphFormat,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the graph-state generators K_j.
    Stabilizers {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        json: bool,
    },
    /// Build the graph code for a B matrix (given or derived) and report it.
    DeriveCode {
        #[command(flatten)]
        input: GraphInput,
        /// Number of logical qubits; defaults to the kernel dimension.
        #[arg(long)]
        k: Option<usize>,
        /// File with the rows of B as bit strings.
        #[arg(long)]
        b_file: Option<PathBuf>,
        /// Skip the brute-force distance computation.
        #[arg(long)]
        no_distance: bool,
        #[arg(long)]
        json: bool,
    },
    /// Syndrome of a Pauli error against a code bundle.
    Syndrome {
        /// Code bundle as written by `derive-code --json`.
        code: PathBuf,
        /// Error as a Pauli string, e.g. IIXII.
        error: String,
        #[arg(long)]
        json: bool,
    },
    /// Local complementation at one vertex, or the whole orbit.
    Lc {
        #[command(flatten)]
        input: GraphInput,
        /// Vertex to complement at (1-based).
        #[arg(long, required_unless_present = "orbit", conflicts_with = "orbit")]
        vertex: Option<usize>,
        /// List the orbit under local complementation.
        #[arg(long)]
        orbit: bool,
        /// Orbit size limit.
        #[arg(long, default_value_t = 10_000)]
        max: usize,
        /// Report orbit members up to vertex relabelling.
        #[arg(long, requires = "orbit")]
        up_to_isomorphism: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the statevector cross-checks for a graph and code dimension.
    Verify {
        #[command(flatten)]
        input: GraphInput,
        /// Number of logical qubits; defaults to the kernel dimension.
        #[arg(long)]
        k: Option<usize>,
        /// Random measurement seeds per encoder input.
        #[arg(long, default_value_t = 10)]
        depth: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn parse_format(s: &str) -> std::result::Result<GraphFormat, String> {
    s.parse()
        .map_err(|_| format!("expected edgelist, adj or graph6, got {s:?}"))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CommandResult::ok(text)
            } else {
                CommandResult {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Stabilizers { input, json } => cmd_stabilizers(&input, json),
        Command::DeriveCode {
            input,
            k,
            b_file,
            no_distance,
            json,
        } => cmd_derive_code(&input, k, b_file.as_deref(), !no_distance, json),
        Command::Syndrome { code, error, json } => cmd_syndrome(&code, &error, json),
        Command::Lc {
            input,
            vertex,
            orbit,
            max,
            up_to_isomorphism,
            json,
        } => {
            if orbit {
                cmd_orbit(&input, max, up_to_isomorphism, json)
            } else {
                cmd_lc(&input, vertex.expect("clap enforces --vertex"), json)
            }
        }
        Command::Verify {
            input,
            k,
            depth,
            seed,
            json,
        } => cmd_verify(&input, k, depth, seed, json),
    };
    match outcome {
        Ok(stdout) => CommandResult::ok(stdout),
        Err(Failure::Usage(msg)) => CommandResult {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(msg)) => CommandResult {
            code: EXIT_DOMAIN,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn read_input(path: &Path) -> std::result::Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(input: &GraphInput) -> std::result::Result<SimpleGraph, Failure> {
    let text = read_input(&input.graph)?;
    parse_graph(&text, input.format)
        .map_err(|e| Failure::Usage(format!("{}: {e}", input.graph.display())))
}

/// Rows of B, one bit string per line (`/` also separates rows). A leading
/// `rows cols` header is accepted.
fn load_b(path: &Path) -> std::result::Result<BinaryMatrix, Failure> {
    let text = read_input(path)?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let parsed = if first.split_whitespace().count() == 2 {
        BinaryMatrix::parse_text(&text)
    } else {
        let rows: Vec<String> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .flat_map(|l| l.split('/'))
            .map(|r| r.split_whitespace().collect())
            .collect();
        BinaryMatrix::from_bit_strings(&rows)
    };
    parsed.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

fn cmd_stabilizers(input: &GraphInput, json: bool) -> CmdResult {
    let g = load_graph(input)?;
    let gens: Vec<String> = generators(&g)
        .generators()
        .iter()
        .map(ToString::to_string)
        .collect();
    if json {
        return Ok(to_json(&gens));
    }
    Ok(gens.iter().map(|s| format!("{s}\n")).collect())
}

fn cmd_derive_code(
    input: &GraphInput,
    k: Option<usize>,
    b_file: Option<&Path>,
    with_distance: bool,
    json: bool,
) -> CmdResult {
    let g = load_graph(input)?;
    let code = match b_file {
        Some(path) => {
            let b = load_b(path)?;
            if let Some(k) = k {
                if k != b.num_rows() {
                    return Err(Failure::Domain(format!(
                        "--k {k} disagrees with {} rows of B",
                        b.num_rows()
                    )));
                }
            }
            GraphCode::new(&g, b)?
        }
        None => GraphCode::derive(&g, k.unwrap_or_else(|| max_k(&g)))?,
    };
    let d = if with_distance && code.k() > 0 && code.n() <= MAX_DISTANCE_QUBITS {
        Some(distance(&code)?)
    } else {
        None
    };
    let bundle = code.to_bundle(d);
    if json {
        return Ok(to_json(&bundle));
    }
    let mut out = String::new();
    match d {
        Some(d) => writeln!(out, "[[{}, {}, {d}]]", bundle.n, bundle.k),
        None => writeln!(out, "[[{}, {}]]", bundle.n, bundle.k),
    }
    .unwrap();
    writeln!(out, "graph {}", bundle.graph).unwrap();
    let sections: [(&str, Vec<String>); 4] = [
        ("B", bundle.b.clone()),
        (
            "logical Z",
            bundle.logical_z.iter().map(ToString::to_string).collect(),
        ),
        (
            "logical X",
            bundle.logical_x.iter().map(ToString::to_string).collect(),
        ),
        (
            "stabilizers",
            bundle.stabilizers.iter().map(ToString::to_string).collect(),
        ),
    ];
    for (title, rows) in sections {
        writeln!(out, "{title}").unwrap();
        for r in rows {
            writeln!(out, "  {r}").unwrap();
        }
    }
    Ok(out)
}

fn cmd_syndrome(code_path: &Path, error: &str, json: bool) -> CmdResult {
    let text = read_input(code_path)?;
    let bundle: CodeBundle = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", code_path.display())))?;
    let code = GraphCode::from_bundle(&bundle)?;
    let error: PauliOperator = error
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let syndrome = code.syndrome(&error)?;
    if json {
        return Ok(to_json(&json!({ "syndrome": syndrome.0 })));
    }
    Ok(format!("{syndrome}\n"))
}

fn edges_1_based(g: &SimpleGraph) -> Vec<[usize; 2]> {
    g.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect()
}

fn cmd_lc(input: &GraphInput, vertex: usize, json: bool) -> CmdResult {
    let g = load_graph(input)?;
    let n = g.num_vertices();
    if vertex == 0 || vertex > n {
        return Err(Error::VertexOutOfRange { vertex, n }.into());
    }
    let v = vertex - 1;
    let h = g.local_complement(v)?;
    let op = lc_operator(&g, v)?.describe(1);
    if json {
        return Ok(to_json(&json!({
            "vertex": vertex,
            "graph6": h.to_graph6(),
            "edges": edges_1_based(&h),
            "operator": op,
        })));
    }
    let edges: Vec<String> = edges_1_based(&h)
        .iter()
        .map(|[a, b]| format!("{a}-{b}"))
        .collect();
    Ok(format!(
        "graph6   {}\nedges    {}\noperator {op}\n",
        h.to_graph6(),
        edges.join(" ")
    ))
}

fn cmd_orbit(input: &GraphInput, max: usize, up_to_isomorphism: bool, json: bool) -> CmdResult {
    let g = load_graph(input)?;
    let orbit = lc_orbit(&g, max);
    let mut graphs: Vec<String> = orbit.graphs.iter().map(SimpleGraph::to_graph6).collect();
    if up_to_isomorphism {
        let mut classes = Vec::new();
        for h in &orbit.graphs {
            let c = canonical_graph6(h)?;
            if !classes.contains(&c) {
                classes.push(c);
            }
        }
        graphs = classes;
    }
    if json {
        return Ok(to_json(&json!({
            "size": graphs.len(),
            "truncated": orbit.truncated,
            "up_to_isomorphism": up_to_isomorphism,
            "graphs": graphs,
        })));
    }
    let mut out = format!(
        "# {} graph{}{}\n",
        graphs.len(),
        if graphs.len() == 1 { "" } else { "s" },
        if orbit.truncated { " (truncated)" } else { "" }
    );
    for s in graphs {
        writeln!(out, "{s}").unwrap();
    }
    Ok(out)
}

fn cmd_verify(
    input: &GraphInput,
    k: Option<usize>,
    depth: u64,
    seed: u64,
    json: bool,
) -> CmdResult {
    let g = load_graph(input)?;
    let n = g.num_vertices();
    if n > MAX_ORACLE_QUBITS {
        return Err(Error::TooLarge {
            what: "verification",
            n,
            max: MAX_ORACLE_QUBITS,
        }
        .into());
    }
    let k = k.unwrap_or_else(|| max_k(&g).min(MAX_ORACLE_QUBITS - n));
    let checks = verify_graph(&g, k, depth, seed)?;
    let all_pass = checks.iter().all(|c| c.pass);
    let out = if json {
        to_json(&json!({ "n": n, "k": k, "pass": all_pass, "checks": checks }))
    } else {
        let mut out = format!("n = {n}, k = {k}\n");
        for c in &checks {
            writeln!(
                out,
                "{}  {:.12}  {}",
                if c.pass { "pass" } else { "FAIL" },
                c.fidelity,
                c.check
            )
            .unwrap();
        }
        out
    };
    if all_pass {
        Ok(out)
    } else {
        Err(Failure::Domain(format!("verification failed\n{out}")))
    }
}
