//! `hj`: solve, reduce and verify colouring-or-subgraph instances.
//!
//! Exit status is 0 for a decision or an all-pass report, 1 for usage and
//! input errors (and verification mismatches), 2 when a cap or search budget
//! runs out.

use std::fs;
use std::io::{self, BufReader, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hj_core::bundle::{parse_bundle, parse_graph_and_colourings, write_bundle, Bundle};
use hj_core::catalog::enumerate_graphs;
use hj_core::circuit::{encode_longhand, parse_circuit, serialize_circuit};
use hj_core::colouring::Colouring;
use hj_core::graph::Graph;
use hj_core::io::{parse_colouring, parse_graph, write_colouring, write_graph, write_path, PathReader};
use hj_core::par::Exec;
use hj_core::problems::{
    reduce_3col, reduce_4cp, reduce_succinct, reduce_succinct_with_p, solve_cos, solve_cpos, solve_scos, CosWitness,
    CposWitness, ReductionMode,
};
use hj_core::reconfig::{check_path_streaming, find_path, frozen_vertices, PathCheck, ReconfigOptions, DEFAULT_BUDGET};
use hj_core::verify::{verify_3col_cos, verify_4cp_cpos, verify_s3col_scos, Outcome, Report};
use hj_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "hj",
    version,
    about = "Colouring-or-subgraph problems, reductions and oracles"
)]
struct Cli {
    /// Worker threads for batch work; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Reconfiguration search budget in colourings (overrides HJ_BUDGET).
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance bundle and print YES or NO.
    Solve {
        kind: Kind,
        instance: PathBuf,
        /// Also print the witness of a YES answer.
        #[arg(long)]
        witness: bool,
    },
    /// Run a reduction and write the resulting instance bundle.
    Reduce {
        reduction: Reduction,
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value = "faithful")]
        mode: ModeArg,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Check a reduction against brute-force oracles.
    Verify {
        reduction: Reduction,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Half the variable count, for s3col-scos.
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// Write every graph on p vertices, up to isomorphism, into a directory.
    Enumerate {
        #[arg(long)]
        p: usize,
        outdir: PathBuf,
    },
    #[command(subcommand)]
    Circuit(CircuitCmd),
    #[command(subcommand)]
    Recon(ReconCmd),
}

#[derive(Subcommand)]
enum CircuitCmd {
    /// Longhand circuit of a graph file.
    Encode { graph: PathBuf },
    /// Graph defined by a circuit file.
    Materialize { circuit: PathBuf },
    /// Evaluate a circuit on a bit string of length 2m.
    Eval { circuit: PathBuf, bits: String },
}

#[derive(Subcommand)]
enum ReconCmd {
    /// Is there a recolouring path between two colourings?
    PathExists {
        graph: PathBuf,
        alpha: PathBuf,
        beta: PathBuf,
        #[arg(long)]
        witness: bool,
    },
    /// Check a path file, streamed from a file or stdin.
    ValidatePath {
        graph: PathBuf,
        alpha: PathBuf,
        beta: PathBuf,
        path: Option<PathBuf>,
    },
    /// List the vertices no single recolouring can move.
    Frozen { graph: PathBuf, colouring: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Cos,
    Cpos,
    Scos,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduction {
    #[value(name = "3col-cos")]
    ThreeColCos,
    #[value(name = "4cp-cpos")]
    FourCpCpos,
    #[value(name = "s3col-scos")]
    S3ColScos,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Faithful,
    Generalized,
}

struct Env {
    exec: Exec,
    reconfig: ReconfigOptions,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?)
}

fn read_colouring(path: &Path) -> Result<Colouring> {
    parse_colouring(&read(path)?)
}

fn reduction_mode(mode: ModeArg, p: Option<usize>) -> Result<ReductionMode> {
    match (mode, p) {
        (ModeArg::Faithful, None) => Ok(ReductionMode::Faithful),
        (ModeArg::Faithful, Some(_)) => Err(Error::Parameter("--p is only accepted with --mode generalized".into())),
        (ModeArg::Generalized, Some(p)) => Ok(ReductionMode::Generalized { p }),
        (ModeArg::Generalized, None) => Err(Error::Parameter("--mode generalized needs --p".into())),
    }
}

fn budget(flag: Option<usize>) -> Result<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("HJ_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parameter(format!("HJ_BUDGET must be a non-negative integer, found `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn exec_for(jobs: Option<usize>) -> Result<Exec> {
    match jobs {
        Some(0) => Err(Error::Parameter("--jobs must be at least 1".into())),
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(j) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build_global()
                .map_err(|e| Error::Parameter(format!("cannot start {j} workers: {e}")))?;
            Ok(Exec::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Exec::Sequential),
        None => Ok(Exec::default()),
    }
}

fn solve(kind: Kind, instance: &Path, witness: bool, env: &Env) -> Result<()> {
    let bundle = parse_bundle(&read(instance)?)?;
    let matches = matches!(
        (kind, &bundle),
        (Kind::Cos, Bundle::Cos(_)) | (Kind::Cpos, Bundle::Cpos(_)) | (Kind::Scos, Bundle::Scos(_))
    );
    if !matches {
        return Err(Error::Parameter(format!("bundle holds a {} instance", bundle.kind())));
    }
    let out = match &bundle {
        Bundle::Cos(i) => solve_cos(i)?.map(|w| cos_witness_text(&w)),
        Bundle::Scos(i) => solve_scos(i)?.map(|w| cos_witness_text(&w)),
        Bundle::Cpos(i) => solve_cpos(i, &env.reconfig)?.map(|w| match w {
            CposWitness::Path(p) => format!("witness path\n{}", write_path(i.graph().vertex_count(), &p)),
            CposWitness::Forbidden { index, graph } => forbidden_text(index, &graph),
        }),
    };
    match out {
        Some(text) => {
            println!("YES");
            if witness {
                print!("{text}");
            }
        }
        None => println!("NO"),
    }
    Ok(())
}

fn forbidden_text(index: usize, graph: &Graph) -> String {
    format!("witness forbidden {index}\n{}", write_graph(graph))
}

fn cos_witness_text(w: &CosWitness) -> String {
    match w {
        CosWitness::Colouring(c) => format!("witness colouring\n{}", write_colouring(c)),
        CosWitness::Forbidden { index, graph } => forbidden_text(*index, graph),
    }
}

fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".provenance.json");
    PathBuf::from(name)
}

fn to_json(value: serde_json::Value) -> String {
    serde_json::to_string_pretty(&value).expect("json values serialize") + "\n"
}

fn reduce(reduction: Reduction, input: &Path, output: &Path, mode: ReductionMode) -> Result<()> {
    let text = read(input)?;
    let (bundle, sidecar, summary) = match reduction {
        Reduction::ThreeColCos => {
            let art = reduce_3col(&parse_graph(&text)?, mode)?;
            let summary = format!("p = {}, {} vertices", art.provenance.p, art.provenance.vertex_count);
            (
                Bundle::Cos(art.instance),
                to_json(serde_json::to_value(&art.provenance).expect("provenance serializes")),
                summary,
            )
        }
        Reduction::FourCpCpos => {
            let (g, alpha, beta) = parse_graph_and_colourings(&text)?;
            let art = reduce_4cp(&g, &alpha, &beta, mode)?;
            let summary = format!("p = {}, {} vertices", art.provenance.p, art.provenance.vertex_count);
            (
                Bundle::Cpos(art.instance),
                to_json(serde_json::to_value(&art.provenance).expect("provenance serializes")),
                summary,
            )
        }
        Reduction::S3ColScos => {
            let phi = parse_circuit(&text)?;
            let red = match mode {
                ReductionMode::Faithful => reduce_succinct(&phi)?,
                ReductionMode::Generalized { p } => reduce_succinct_with_p(&phi, p)?,
            };
            let circuit = red.instance.circuit();
            let sidecar = serde_json::json!({
                "mode": mode.mode(),
                "layout": red.layout,
                "input_size": red.input_size,
                "output_size": red.output_size,
                "output_tree_size": circuit.tree_size().to_string(),
            });
            let summary = format!(
                "p = {}, {} variables, size {}",
                red.layout.p,
                circuit.var_count(),
                red.output_size
            );
            (Bundle::Scos(red.instance), to_json(sidecar), summary)
        }
    };
    write(output, &write_bundle(&bundle))?;
    let side = sidecar_path(output);
    write(&side, &sidecar)?;
    println!("wrote {} ({summary}) and {}", output.display(), side.display());
    Ok(())
}

fn print_report(report: &Report) -> ExitCode {
    for case in &report.cases {
        match &case.outcome {
            Outcome::Pass => println!("PASS {}", case.label),
            Outcome::Mismatch(m) => println!("FAIL {}: {m}", case.label),
            Outcome::ResourceLimit(m) => println!("LIMIT {}: {m}", case.label),
            Outcome::Error(m) => println!("ERROR {}: {m}", case.label),
        }
    }
    println!("{}", report.summary());
    if report.all_pass() {
        ExitCode::SUCCESS
    } else if report.mismatches() + report.errors() == 0 && report.resource_limited() > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::from(1)
    }
}

fn verify(
    reduction: Reduction,
    max_n: Option<usize>,
    samples: Option<usize>,
    seed: u64,
    m: usize,
    env: &Env,
) -> Result<ExitCode> {
    let report = match reduction {
        Reduction::ThreeColCos => verify_3col_cos(max_n.unwrap_or(6), samples.unwrap_or(200), seed, env.exec)?,
        Reduction::FourCpCpos => verify_4cp_cpos(max_n.unwrap_or(3), samples.unwrap_or(100), seed, &env.reconfig)?,
        Reduction::S3ColScos => verify_s3col_scos(m, samples.unwrap_or(20), seed, env.exec)?,
    };
    Ok(print_report(&report))
}

fn enumerate(p: usize, outdir: &Path) -> Result<()> {
    let catalog = enumerate_graphs(p)?;
    fs::create_dir_all(outdir)?;
    for (i, g) in catalog.members().iter().enumerate() {
        write(&outdir.join(format!("p{p}_{i:04}.graph")), &write_graph(g))?;
    }
    println!(
        "{} graphs on {p} vertices written to {}",
        catalog.len(),
        outdir.display()
    );
    Ok(())
}

fn circuit(cmd: CircuitCmd, env: &Env) -> Result<()> {
    match cmd {
        CircuitCmd::Encode { graph } => print!("{}", serialize_circuit(&encode_longhand(&read_graph(&graph)?)?)),
        CircuitCmd::Materialize { circuit } => {
            let c = parse_circuit(&read(&circuit)?)?;
            let g = c.materialize_with(hj_core::circuit::DEFAULT_MATERIALIZATION_CAP, env.exec)?;
            print!("{}", write_graph(&g));
        }
        CircuitCmd::Eval { circuit, bits } => {
            let c = parse_circuit(&read(&circuit)?)?;
            let assignment = bits
                .chars()
                .enumerate()
                .map(|(i, ch)| match ch {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::Parameter(format!("bit {} is `{ch}`, expected 0 or 1", i + 1))),
                })
                .collect::<Result<Vec<bool>>>()?;
            println!("{}", c.eval(&assignment)?);
        }
    }
    Ok(())
}

fn recon(cmd: ReconCmd, env: &Env) -> Result<ExitCode> {
    match cmd {
        ReconCmd::PathExists {
            graph,
            alpha,
            beta,
            witness,
        } => {
            let g = read_graph(&graph)?;
            let (a, b) = (read_colouring(&alpha)?, read_colouring(&beta)?);
            match find_path(&g, &a, &b, &env.reconfig)? {
                Some(path) => {
                    println!("YES");
                    if witness {
                        print!("witness path\n{}", write_path(g.vertex_count(), &path));
                    }
                }
                None => println!("NO"),
            }
        }
        ReconCmd::ValidatePath {
            graph,
            alpha,
            beta,
            path,
        } => {
            let g = read_graph(&graph)?;
            let (a, b) = (read_colouring(&alpha)?, read_colouring(&beta)?);
            let source: Box<dyn Read> = match &path {
                Some(p) => Box::new(
                    fs::File::open(p)
                        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", p.display()))))?,
                ),
                None => Box::new(io::stdin()),
            };
            let reader = PathReader::new(BufReader::new(source))?;
            if reader.vertex_count() != g.vertex_count() || reader.k() != a.k() {
                println!(
                    "INVALID header (n = {}, k = {}) does not match (n = {}, k = {})",
                    reader.vertex_count(),
                    reader.k(),
                    g.vertex_count(),
                    a.k()
                );
                return Ok(ExitCode::from(1));
            }
            return Ok(match check_path_streaming(&g, &a, &b, reader)? {
                PathCheck::Valid => {
                    println!("VALID");
                    ExitCode::SUCCESS
                }
                PathCheck::Invalid(why) => {
                    println!("INVALID {why}");
                    ExitCode::from(1)
                }
            });
        }
        ReconCmd::Frozen { graph, colouring } => {
            let g = read_graph(&graph)?;
            for v in frozen_vertices(&g, &read_colouring(&colouring)?)? {
                println!("{v}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let exec = exec_for(cli.jobs)?;
    let env = Env {
        exec,
        reconfig: ReconfigOptions {
            budget: budget(cli.budget)?,
            exec,
        },
    };
    match cli.command {
        Command::Solve {
            kind,
            instance,
            witness,
        } => solve(kind, &instance, witness, &env)?,
        Command::Reduce {
            reduction,
            input,
            output,
            mode,
            p,
        } => reduce(reduction, &input, &output, reduction_mode(mode, p)?)?,
        Command::Verify {
            reduction,
            max_n,
            samples,
            seed,
            m,
        } => return verify(reduction, max_n, samples, seed, m, &env),
        Command::Enumerate { p, outdir } => enumerate(p, &outdir)?,
        Command::Circuit(cmd) => circuit(cmd, &env)?,
        Command::Recon(cmd) => return recon(cmd, &env),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_limit() { 2 } else { 1 })
        }
    }
}
