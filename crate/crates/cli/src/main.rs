//! Batch front end for the reduction pipeline. Subcommands mirror the
//! library stages; every run emits a machine-readable report (JSON) or a
//! short text summary. Exit codes: 0 = yes/accept/clean, 1 = no/reject/
//! violations, 2 = error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use lapred_core::complex::{hodge_laplacian, homology_summary, CliqueComplexView};
use lapred_core::gen::random_complex_edges;
use lapred_core::graph::{
    balance_components, bipartite_components, SignedGraph, UnsignedGraph,
};
use lapred_core::io;
use lapred_core::oracle::{
    conformance_check, from_explicit_signed, from_explicit_unsigned, materialize, AccessMode,
    CheckScope, EitherGraph, MaterializeScope, SparseAccess, Strictness,
};
use lapred_core::reductions::{
    clique_oracle, construction_matrix, marked_to_traditional, negative_subdivision_oracle,
    CliqueReductionInstance, GadgetLayout, SubdivisionScheme,
};
use lapred_core::report::{
    AgreementMatrix, CrosscheckRow, CrosscheckSummary, InstanceInfo, OracleCallCounts, Report,
    StageRecord, Timing,
};
use lapred_core::spectral::{
    assemble_from_oracle, signed_laplacian, signless_laplacian, simulate_verifier, Decision,
    DiagMode, Restrict, VerifierTask,
};
use lapred_core::Error;

const DEFAULT_SUBSET_BUDGET: u64 = lapred_core::complex::DEFAULT_SUBSET_BUDGET;
const DEFAULT_INDEX_BUDGET: u64 = lapred_core::oracle::DEFAULT_INDEX_BUDGET;

#[derive(Parser)]
#[command(
    name = "lapred",
    version,
    about = "Clique complexes, signed graphs and bipartite tests under sparse oracle access"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Stage {
    /// Clique complex at dimension p to a signed marked oracle.
    CliqueToSigned,
    /// Negative subdivision: signed oracle to unsigned oracle.
    Subdivide,
    /// Marked access to traditional access (line + triangle gadget).
    MarkedToTraditional,
}

impl Stage {
    fn name(self) -> &'static str {
        match self {
            Stage::CliqueToSigned => "clique-to-signed",
            Stage::Subdivide => "subdivide",
            Stage::MarkedToTraditional => "marked-to-traditional",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum DiagModeArg {
    SignCount,
    AdjCount,
}

impl From<DiagModeArg> for DiagMode {
    fn from(d: DiagModeArg) -> Self {
        match d {
            DiagModeArg::SignCount => DiagMode::SignCount,
            DiagModeArg::AdjCount => DiagMode::AdjCount,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum TaskArg {
    Balance,
    Bipartite,
}

#[derive(Subcommand)]
enum Command {
    /// Decide clique homology: YES iff the p-th Betti number is nonzero.
    Homology {
        graph_file: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a reduction chain and compare the decision procedures.
    Reduce {
        graph_file: PathBuf,
        /// Comma-separated stages, applied left to right.
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        chain: Vec<Stage>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = DiagModeArg::SignCount)]
        diag_mode: DiagModeArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classical simulation of the phase-estimation verifier.
    Verify {
        graph_file: PathBuf,
        #[arg(long, value_enum)]
        task: TaskArg,
        #[arg(long)]
        delta: f64,
        /// Interpret the input as a clique-homology instance (needs --p).
        #[arg(long)]
        from_clique: bool,
        #[arg(long)]
        p: Option<usize>,
        /// Round the eigenvalue estimate to t bits before deciding.
        #[arg(long)]
        quantize: bool,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit an oracle against the sparse-access contract.
    Conformance {
        graph_file: PathBuf,
        #[arg(long)]
        from_clique: bool,
        #[arg(long)]
        p: Option<usize>,
        /// Treat zero-sign adjacency entries as non-edges.
        #[arg(long)]
        lenient: bool,
        /// Force the strict reading (default for constructor oracles).
        #[arg(long)]
        strict: bool,
        /// Sample this many rows instead of sweeping exhaustively.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare oracle-assembled kernels against exact Betti numbers.
    Crosscheck {
        /// Exhaustive sweep over all graphs with up to this many vertices.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Extra random instances on 5..=6 vertices.
        #[arg(long, default_value_t = 0)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Homology {
            graph_file,
            p,
            budget,
            format,
            out,
        } => cmd_homology(&graph_file, p, budget, format, out.as_deref()),
        Command::Reduce {
            graph_file,
            chain,
            p,
            budget,
            diag_mode,
            format,
            out,
        } => cmd_reduce(
            &graph_file,
            &chain,
            p,
            budget,
            diag_mode.into(),
            format,
            out.as_deref(),
        ),
        Command::Verify {
            graph_file,
            task,
            delta,
            from_clique,
            p,
            quantize,
            budget,
            format,
            out,
        } => cmd_verify(
            &graph_file,
            task,
            delta,
            from_clique,
            p,
            quantize,
            budget,
            format,
            out.as_deref(),
        ),
        Command::Conformance {
            graph_file,
            from_clique,
            p,
            lenient,
            strict,
            sample,
            seed,
            budget,
            format,
            out,
        } => cmd_conformance(
            &graph_file,
            from_clique,
            p,
            lenient,
            strict,
            sample,
            seed,
            budget,
            format,
            out.as_deref(),
        ),
        Command::Crosscheck {
            max_n,
            samples,
            seed,
            budget,
            format,
            out,
        } => cmd_crosscheck(max_n, samples, seed, budget, format, out.as_deref()),
    }
}

fn load_graph(path: &Path) -> Result<EitherGraph, Error> {
    let text = std::fs::read_to_string(path)?;
    io::parse_graph(&text)
}

fn instance_info(g: &EitherGraph, path: &Path, p: Option<usize>) -> InstanceInfo {
    InstanceInfo {
        path: Some(path.display().to_string()),
        n_bits: g.unsigned().n_bits(),
        vertices: g.unsigned().vertex_count(),
        edges: g.unsigned().edge_count(),
        signed: g.signed().is_some(),
        p,
    }
}

fn write_out(dir: &Path, name: &str, content: &str) -> Result<String, Error> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, content)?;
    Ok(path.display().to_string())
}

/// Prints to stdout, tolerating a consumer that closed the pipe early so
/// the semantic exit code survives `| head`.
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn finish(
    mut report: Report,
    started: Instant,
    format: Format,
    out: Option<&Path>,
    text_summary: &str,
    code: u8,
) -> Result<u8, Error> {
    report.timing = Timing {
        total_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    if let Some(dir) = out {
        write_out(dir, "report.json", &report.to_json())?;
    }
    match format {
        Format::Json => emit(&report.to_json()),
        Format::Text => emit(text_summary),
    }
    Ok(code)
}

fn cmd_homology(
    graph_file: &Path,
    p: usize,
    budget: Option<u64>,
    format: Format,
    out: Option<&Path>,
) -> Result<u8, Error> {
    let started = Instant::now();
    let graph = load_graph(graph_file)?;
    let EitherGraph::Unsigned(g) = &graph else {
        return Err(Error::InvalidParameter(
            "homology expects an unsigned contiguous graph".into(),
        ));
    };
    let c = CliqueComplexView::from_graph(g, p)?
        .with_budget(budget.unwrap_or(DEFAULT_SUBSET_BUDGET));
    let summary = homology_summary(&c, p)?;
    let l = hodge_laplacian(&c, p)?;
    let kernel = l.kernel_dim_float(1e-8);
    let yes = summary.betti > 0;

    let mut report = Report::new("homology", instance_info(&graph, graph_file, Some(p)));
    report.decisions.betti = Some(summary.betti);
    report.decisions.betti_nonzero = Some(yes);
    report.decisions.hodge_kernel_dim = Some(kernel);
    report.decisions.homology = Some(summary.clone());
    report.agreement = Some(AgreementMatrix::new(vec![
        ("betti_nonzero".into(), yes),
        ("hodge_kernel_nonzero".into(), kernel > 0),
    ]));
    if let Some(dir) = out {
        let path = write_out(dir, "hodge_laplacian.txt", &io::write_matrix(&l))?;
        report.stages.push(StageRecord {
            name: "hodge-laplacian".into(),
            params: BTreeMap::from([("p".into(), p.to_string())]),
            output_n_bits: g.n_bits(),
            output_vertices: None,
            output_edges: None,
            artifacts: vec![path],
        });
    }
    let text = format!(
        "homology: p={p} |S_p|={} rank(d_p)={} rank(d_p+1)={} betti={} kernel={} -> {}",
        summary.num_p_simplices,
        summary.rank_boundary_p,
        summary.rank_boundary_p_plus_1,
        summary.betti,
        kernel,
        if yes { "YES" } else { "NO" }
    );
    finish(report, started, format, out, &text, u8::from(!yes))
}

enum PipeState {
    Explicit(EitherGraph),
    Oracle(SparseAccess),
}

impl PipeState {
    fn describe(&self) -> String {
        match self {
            PipeState::Explicit(EitherGraph::Signed(_)) => "explicit signed graph".into(),
            PipeState::Explicit(EitherGraph::Unsigned(_)) => "explicit unsigned graph".into(),
            PipeState::Oracle(o) => oracle_desc(o),
        }
    }
}

fn oracle_desc(o: &SparseAccess) -> String {
    format!(
        "{} {:?} oracle",
        if o.is_signed() { "signed" } else { "unsigned" },
        o.mode()
    )
    .to_lowercase()
}

fn lift_to_marked_oracle(state: PipeState) -> Result<SparseAccess, Error> {
    match state {
        PipeState::Oracle(o) => Ok(o),
        PipeState::Explicit(EitherGraph::Signed(g)) => {
            let s = (g.base().max_degree() as u64).max(2);
            from_explicit_signed(&g, s, AccessMode::Marked)
        }
        PipeState::Explicit(EitherGraph::Unsigned(g)) => {
            let s = (g.max_degree() as u64).max(2);
            from_explicit_unsigned(&g, s, AccessMode::Marked)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_reduce(
    graph_file: &Path,
    chain: &[Stage],
    p: Option<usize>,
    budget: Option<u64>,
    diag_mode: DiagMode,
    format: Format,
    out: Option<&Path>,
) -> Result<u8, Error> {
    let started = Instant::now();
    let index_budget = budget.unwrap_or(DEFAULT_INDEX_BUDGET);
    let subset_budget = budget.unwrap_or(DEFAULT_SUBSET_BUDGET);
    let input = load_graph(graph_file)?;
    let mut report = Report::new("reduce", instance_info(&input, graph_file, p));

    let mut state = PipeState::Explicit(input.clone());
    let mut base_oracle: Option<SparseAccess> = None;
    let mut last_signed: Option<SignedGraph> = input.signed().cloned();
    let mut last_unsigned: Option<UnsignedGraph> = match &input {
        EitherGraph::Unsigned(g) => Some(g.clone()),
        EitherGraph::Signed(_) => None,
    };
    let mut text_lines: Vec<String> = Vec::new();

    for (idx, &stage) in chain.iter().enumerate() {
        let mut params: BTreeMap<String, String> = BTreeMap::new();
        let mut artifacts = Vec::new();
        let next: SparseAccess = match stage {
            Stage::CliqueToSigned => {
                let PipeState::Explicit(EitherGraph::Unsigned(g)) = &state else {
                    return Err(Error::IncompatibleChain {
                        stage: stage.name().into(),
                        expected: "explicit unsigned contiguous graph".into(),
                        got: state.describe(),
                    });
                };
                let p = p.ok_or_else(|| {
                    Error::InvalidParameter("clique-to-signed requires --p".into())
                })?;
                let c = CliqueComplexView::from_graph(g, p)?.with_budget(subset_budget);
                let inst = CliqueReductionInstance::new(c.clone())?;
                let betti = lapred_core::complex::betti_exact(&c, p)?;
                report.decisions.betti = Some(betti);
                report.decisions.betti_nonzero = Some(betti > 0);
                params.insert("p".into(), p.to_string());
                params.insert("S".into(), inst.s_bound().to_string());
                if let Some(dir) = out {
                    let m = construction_matrix(&c, p)?;
                    artifacts.push(write_out(
                        dir,
                        &format!("stage_{idx}_construction_matrix.txt"),
                        &io::write_matrix(&m),
                    )?);
                }
                clique_oracle(&inst)
            }
            Stage::Subdivide => {
                let o = lift_to_marked_oracle(state)?;
                if !o.is_signed() {
                    return Err(Error::IncompatibleChain {
                        stage: stage.name().into(),
                        expected: "signed marked oracle (subdivision needs signs)".into(),
                        got: oracle_desc(&o),
                    });
                }
                base_oracle.get_or_insert_with(|| o.clone());
                negative_subdivision_oracle(&o, SubdivisionScheme::Canonical)?
            }
            Stage::MarkedToTraditional => {
                let o = lift_to_marked_oracle(state)?;
                if o.mode() != AccessMode::Marked {
                    return Err(Error::IncompatibleChain {
                        stage: stage.name().into(),
                        expected: "marked oracle".into(),
                        got: oracle_desc(&o),
                    });
                }
                base_oracle.get_or_insert_with(|| o.clone());
                let layout = GadgetLayout::new(o.n_bits(), o.s_bound());
                params.insert("N_prime".into(), layout.n_prime.to_string());
                params.insert("line_len".into(), layout.line_len.to_string());
                params.insert("S_out".into(), (o.s_bound() + 2).to_string());
                marked_to_traditional(&o)?
            }
        };
        base_oracle.get_or_insert_with(|| next.clone());

        let materialized = materialize(&next, &MaterializeScope::Full, index_budget)?;
        if let Some(dir) = out {
            artifacts.push(write_out(
                dir,
                &format!("stage_{idx}_{}.graph.txt", stage.name()),
                &io::write_either_graph(&materialized),
            )?);
            let (mname, matrix) = match &materialized {
                EitherGraph::Signed(g) => ("signed_laplacian", signed_laplacian(g)),
                EitherGraph::Unsigned(g) => ("signless_laplacian", signless_laplacian(g)),
            };
            artifacts.push(write_out(
                dir,
                &format!("stage_{idx}_{mname}.txt"),
                &io::write_matrix(&matrix),
            )?);
        }
        match &materialized {
            EitherGraph::Signed(g) => last_signed = Some(g.clone()),
            EitherGraph::Unsigned(g) => last_unsigned = Some(g.clone()),
        }
        text_lines.push(format!(
            "stage {idx} {}: {} vertices, {} edges ({})",
            stage.name(),
            materialized.vertex_count(),
            materialized.unsigned().edge_count(),
            if materialized.signed().is_some() {
                "signed"
            } else {
                "unsigned"
            },
        ));
        report.stages.push(StageRecord {
            name: stage.name().into(),
            params,
            output_n_bits: next.n_bits(),
            output_vertices: Some(materialized.vertex_count()),
            output_edges: Some(materialized.unsigned().edge_count()),
            artifacts,
        });
        state = PipeState::Oracle(next);
    }

    // Decision table over everything this run produced.
    let mut entries: Vec<(String, bool)> = Vec::new();
    if let Some(yes) = report.decisions.betti_nonzero {
        entries.push(("betti_nonzero".into(), yes));
    }
    if let Some(g) = &last_signed {
        let outcome = balance_components(g);
        let balanced = outcome.has_balanced();
        report.decisions.balanced_component = Some(balanced);
        report.decisions.signed_kernel_dim = Some(signed_laplacian(g).kernel_dim_exact());
        entries.push(("balanced_component".into(), balanced));
        // Single-vertex components are counted as balanced; surface runs
        // where that convention alone carries the answer.
        let multi = outcome
            .components
            .iter()
            .any(|c| c.balanced() && c.vertices.len() > 1);
        if balanced && !multi {
            report.warnings.push(
                "balanced components are single vertices only; excluding isolated vertices                  the answer would be NO"
                    .into(),
            );
        }
    }
    if let Some(g) = &last_unsigned {
        let outcome = bipartite_components(g);
        let bipartite = outcome.has_bipartite();
        report.decisions.bipartite_component = Some(bipartite);
        report.decisions.signless_kernel_dim = Some(signless_laplacian(g).kernel_dim_exact());
        entries.push(("bipartite_component".into(), bipartite));
        let multi = outcome
            .components
            .iter()
            .any(|c| c.bipartite() && c.vertices.len() > 1);
        if bipartite && !multi {
            report.warnings.push(
                "bipartite components are single vertices only; excluding isolated vertices                  the answer would be NO"
                    .into(),
            );
        }
    }
    // Oracle-assembled kernel of the final stage under the chosen diagonal
    // convention, reported alongside the combinatorial answers.
    if let PipeState::Oracle(o) = &state {
        if o.index_count() <= index_budget {
            let asm = assemble_from_oracle(o, diag_mode, Restrict::Vertices, index_budget)?;
            let k = asm.matrix.kernel_dim_exact();
            let name = match diag_mode {
                DiagMode::SignCount => "assembled_kernel_nonzero(sign-count)",
                DiagMode::AdjCount => "assembled_kernel_nonzero(adj-count)",
            };
            entries.push((name.into(), k > 0));
        }
    }
    let agreement = AgreementMatrix::new(entries);
    let all_agree = agreement.all_agree;
    let answer = report
        .decisions
        .bipartite_component
        .or(report.decisions.balanced_component)
        .or(report.decisions.betti_nonzero)
        .unwrap_or(false);
    report.agreement = Some(agreement);
    if !all_agree {
        report
            .warnings
            .push("decision procedures disagree; see agreement matrix".into());
    }
    if let Some(o) = &base_oracle {
        let (adj, sign) = o.call_counts();
        report.oracle_calls = Some(OracleCallCounts { adj, sign });
    }

    text_lines.push(format!(
        "decisions: betti_nonzero={:?} balanced={:?} bipartite={:?} agree={}",
        report.decisions.betti_nonzero,
        report.decisions.balanced_component,
        report.decisions.bipartite_component,
        all_agree
    ));
    text_lines.push(format!("answer: {}", if answer { "YES" } else { "NO" }));
    let text = text_lines.join("\n");
    finish(report, started, format, out, &text, u8::from(!answer))
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    graph_file: &Path,
    task: TaskArg,
    delta: f64,
    from_clique: bool,
    p: Option<usize>,
    quantize: bool,
    budget: Option<u64>,
    format: Format,
    out: Option<&Path>,
) -> Result<u8, Error> {
    let started = Instant::now();
    let index_budget = budget.unwrap_or(DEFAULT_INDEX_BUDGET);
    let input = load_graph(graph_file)?;
    let oracle = if from_clique {
        let EitherGraph::Unsigned(g) = &input else {
            return Err(Error::InvalidParameter(
                "--from-clique expects an unsigned contiguous graph".into(),
            ));
        };
        let p = p.ok_or_else(|| Error::InvalidParameter("--from-clique requires --p".into()))?;
        let c = CliqueComplexView::from_graph(g, p)?
            .with_budget(budget.unwrap_or(DEFAULT_SUBSET_BUDGET));
        clique_oracle(&CliqueReductionInstance::new(c)?)
    } else {
        lift_to_marked_oracle(PipeState::Explicit(input.clone()))?
    };
    let task = match task {
        TaskArg::Balance => VerifierTask::Balance,
        TaskArg::Bipartite => VerifierTask::Bipartite,
    };
    let outcome = simulate_verifier(&oracle, delta, task, quantize, index_budget)?;
    let accepted = outcome.decision == Decision::Accept;

    let mut report = Report::new("verify", instance_info(&input, graph_file, p));
    if outcome.promise_warning {
        report
            .warnings
            .push("spectrum lies strictly between the promised branches".into());
    }
    let text = format!(
        "verify: task={:?} lambda_min={:.6e} delta'={:.6e} t={} -> {}{}",
        outcome.task,
        outcome.lambda_min,
        outcome.delta_prime,
        outcome.t_bits,
        if accepted { "accept" } else { "reject" },
        if outcome.promise_warning {
            " (promise violated)"
        } else {
            ""
        }
    );
    let (adj, sign) = oracle.call_counts();
    report.oracle_calls = Some(OracleCallCounts { adj, sign });
    report.decisions.verifier = Some(outcome);
    finish(report, started, format, out, &text, u8::from(!accepted))
}

#[allow(clippy::too_many_arguments)]
fn cmd_conformance(
    graph_file: &Path,
    from_clique: bool,
    p: Option<usize>,
    lenient: bool,
    strict: bool,
    sample: Option<u64>,
    seed: u64,
    budget: Option<u64>,
    format: Format,
    out: Option<&Path>,
) -> Result<u8, Error> {
    let started = Instant::now();
    let index_budget = budget.unwrap_or(DEFAULT_INDEX_BUDGET);
    if lenient && strict {
        return Err(Error::InvalidParameter(
            "--lenient and --strict are mutually exclusive".into(),
        ));
    }
    let input = load_graph(graph_file)?;
    let oracle = if from_clique {
        let EitherGraph::Unsigned(g) = &input else {
            return Err(Error::InvalidParameter(
                "--from-clique expects an unsigned contiguous graph".into(),
            ));
        };
        let p = p.ok_or_else(|| Error::InvalidParameter("--from-clique requires --p".into()))?;
        let c = CliqueComplexView::from_graph(g, p)?
            .with_budget(budget.unwrap_or(DEFAULT_SUBSET_BUDGET));
        clique_oracle(&CliqueReductionInstance::new(c)?)
    } else {
        lift_to_marked_oracle(PipeState::Explicit(input.clone()))?
    };
    // Reduction outputs default to the lenient reading, constructor oracles
    // to the strict one.
    let strictness = if lenient {
        Strictness::Lenient
    } else if strict || !from_clique {
        Strictness::Strict
    } else {
        Strictness::Lenient
    };
    let scope = match sample {
        Some(rows) => CheckScope::Sampled { rows, seed },
        None => CheckScope::Exhaustive,
    };
    let conf = conformance_check(&oracle, &scope, strictness, index_budget)?;
    let clean = conf.is_clean();
    let mut report = Report::new("conformance", instance_info(&input, graph_file, p));
    let mut lines = vec![format!(
        "conformance: {:?} over {} rows -> {} ({} violations)",
        strictness,
        conf.rows_checked,
        if clean { "clean" } else { "violations" },
        conf.violations.len()
    )];
    for v in conf.violations.iter().take(16) {
        lines.push(format!(
            "  {} at (i={}, l={}) {}",
            v.kind.describe(),
            v.i,
            v.l,
            v.detail
        ));
    }
    report.conformance = Some(conf);
    finish(
        report,
        started,
        format,
        out,
        &lines.join("\n"),
        u8::from(!clean),
    )
}

fn crosscheck_instance(
    n: usize,
    edges: &[(usize, usize)],
    p: usize,
    index_budget: u64,
) -> Result<CrosscheckRow, Error> {
    let c = CliqueComplexView::from_edges(n, edges, p)?;
    let betti = lapred_core::complex::betti_exact(&c, p)?;
    let construction = construction_matrix(&c, p)?.kernel_dim_exact();
    let o = clique_oracle(&CliqueReductionInstance::new(c)?);
    let sign_kernel =
        assemble_from_oracle(&o, DiagMode::SignCount, Restrict::Vertices, index_budget)?
            .matrix
            .kernel_dim_exact();
    let adj_kernel =
        assemble_from_oracle(&o, DiagMode::AdjCount, Restrict::Vertices, index_budget)?
            .matrix
            .kernel_dim_exact();
    Ok(CrosscheckRow {
        n,
        p,
        edges: edges.to_vec(),
        betti,
        construction_kernel_dim: construction,
        sign_count_kernel_dim: sign_kernel,
        adj_count_kernel_dim: adj_kernel,
        sign_count_agrees: sign_kernel == betti,
        adj_count_agrees: adj_kernel == betti,
    })
}

fn cmd_crosscheck(
    max_n: usize,
    samples: u64,
    seed: u64,
    budget: Option<u64>,
    format: Format,
    out: Option<&Path>,
) -> Result<u8, Error> {
    use rand::{Rng, SeedableRng};
    let started = Instant::now();
    if !(1..=6).contains(&max_n) {
        return Err(Error::InvalidParameter("--max-n must lie in 1..=6".into()));
    }
    let index_budget = budget.unwrap_or(DEFAULT_INDEX_BUDGET);
    let mut rows: Vec<CrosscheckRow> = Vec::new();
    for n in 1..=max_n {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            for p in 0..n.saturating_sub(1) {
                rows.push(crosscheck_instance(n, &edges, p, index_budget)?);
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(5..=6usize);
        let prob = rng.gen_range(0.3..0.8);
        let edges = random_complex_edges(&mut rng, n, prob);
        let p = rng.gen_range(0..n - 1);
        rows.push(crosscheck_instance(n, &edges, p, index_budget)?);
    }

    let instances = rows.len();
    let sign_dis = rows.iter().filter(|r| !r.sign_count_agrees).count();
    let adj_dis = rows.iter().filter(|r| !r.adj_count_agrees).count();
    let discrepancies: Vec<CrosscheckRow> = rows
        .into_iter()
        .filter(|r| !r.sign_count_agrees || !r.adj_count_agrees)
        .collect();
    let clean = discrepancies.is_empty();

    let mut lines = vec![format!(
        "crosscheck: {instances} instances, sign-count disagreements {sign_dis}, adj-count disagreements {adj_dis}"
    )];
    for r in discrepancies.iter().take(16) {
        lines.push(format!(
            "  n={} p={} edges={:?}: betti={} construction={} sign-count={} adj-count={}",
            r.n,
            r.p,
            r.edges,
            r.betti,
            r.construction_kernel_dim,
            r.sign_count_kernel_dim,
            r.adj_count_kernel_dim
        ));
    }
    let mut report = Report::new(
        "crosscheck",
        InstanceInfo {
            path: None,
            n_bits: max_n as u32,
            vertices: 0,
            edges: 0,
            signed: true,
            p: None,
        },
    );
    report.crosscheck = Some(CrosscheckSummary {
        instances,
        sign_count_disagreements: sign_dis,
        adj_count_disagreements: adj_dis,
        discrepancies,
    });
    finish(
        report,
        started,
        format,
        out,
        &lines.join("\n"),
        u8::from(!clean),
    )
}
