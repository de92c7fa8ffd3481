//! Command-line front end: embed graphs into the extended grid, validate
//! and redraw embedding documents, and benchmark the quadratic scaling.
//!
//! Exit codes are a contract: 0 success, 1 validation failure, 2 input
//! error, 3 internal invariant breach.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use braidgrid::{
    embed, exceeds_ascii_budget, parse_edge_list, prune, render_ascii, render_svg,
    serialize_embedding, validate, Embedding, EmbeddingDocument, SourceGraph, VertexId,
};

#[derive(Parser)]
#[command(
    name = "braidgrid",
    version,
    about = "Embed arbitrary graphs into the extended grid by braiding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a graph and write the embedding
    Embed(EmbedArgs),
    /// Check an embedding document against a source graph
    Validate(ValidateArgs),
    /// Redraw an embedding document as text or SVG
    Render(RenderArgs),
    /// Time complete-graph embeddings over a size sweep
    Bench(BenchArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Doc,
    Ascii,
    Svg,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "complete", "biclique"])))]
struct EmbedArgs {
    /// Edge-list file: one "u v" pair per line, '#' comments
    #[arg(value_name = "GRAPH")]
    input: Option<PathBuf>,
    /// Embed the complete graph on N vertices instead of reading a file
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    /// Embed the complete bipartite graph with parts of size A and B
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    biclique: Option<Vec<usize>>,
    /// File listing vertex labels in braid order, whitespace-separated
    #[arg(long, value_name = "FILE")]
    ordering: Option<PathBuf>,
    /// Shrink islands to the cells the bridges need
    #[arg(long)]
    prune: bool,
    #[arg(long, value_enum, default_value_t = Format::Doc)]
    format: Format,
    /// Output file (stdout when omitted)
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Edge-list file of the source graph
    #[arg(value_name = "GRAPH")]
    graph: PathBuf,
    /// Embedding document to check
    #[arg(value_name = "EMBEDDING")]
    embedding: PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    /// Embedding document to draw
    #[arg(value_name = "EMBEDDING")]
    embedding: PathBuf,
    #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
    format: RenderFormat,
    /// Output file (stdout when omitted)
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated complete-graph sizes, strictly increasing, each >= 2
    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512,1024")]
    sizes: Vec<usize>,
}

enum CliError {
    /// Unreadable or unparsable input (exit 2).
    Input(String),
    /// The checked embedding failed; the report is already printed (exit 1).
    Validation,
    /// A bug: an embedding this tool produced failed its own check (exit 3).
    Internal(String),
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Embed(args) => cmd_embed(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Render(args) => cmd_render(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_graph(args: &EmbedArgs) -> Result<SourceGraph, CliError> {
    let graph = if let Some(n) = args.complete {
        SourceGraph::complete(n).map_err(|e| CliError::Input(e.to_string()))?
    } else if let Some(parts) = &args.biclique {
        SourceGraph::biclique(parts[0], parts[1]).map_err(|e| CliError::Input(e.to_string()))?
    } else {
        let path = args.input.as_ref().expect("clap requires a source");
        parse_edge_list(&read_file(path)?).map_err(|e| CliError::Input(e.to_string()))?
    };
    match &args.ordering {
        None => Ok(graph),
        Some(path) => {
            let text = read_file(path)?;
            let order = text
                .split_whitespace()
                .map(|label| {
                    graph.index_of_label(label).ok_or_else(|| {
                        CliError::Input(format!("ordering names unknown vertex {label:?}"))
                    })
                })
                .collect::<Result<Vec<VertexId>, CliError>>()?;
            graph
                .with_ordering(&order)
                .map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

fn format_embedding(
    format: Format,
    embedding: &Embedding,
    graph: &SourceGraph,
) -> String {
    match format {
        Format::Doc => serialize_embedding(embedding, graph).to_json(),
        Format::Ascii => {
            if exceeds_ascii_budget(embedding.dims()) {
                eprintln!(
                    "warning: grid {} exceeds the comfortable text size; consider --format svg",
                    embedding.dims()
                );
            }
            let mut text = render_ascii(embedding, graph);
            text.push('\n');
            text
        }
        Format::Svg => render_svg(embedding, graph),
    }
}

fn cmd_embed(args: EmbedArgs) -> Result<(), CliError> {
    let graph = load_graph(&args)?;
    let mut embedding = embed(&graph);
    if args.prune {
        embedding =
            prune(&embedding, &graph).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let report = validate(&graph, &embedding);
    if !report.is_valid() {
        return Err(CliError::Internal(format!(
            "freshly built embedding fails validation\n{report}"
        )));
    }
    write_output(&args.output, &format_embedding(args.format, &embedding, &graph))
}

fn cmd_validate(args: ValidateArgs) -> Result<(), CliError> {
    let graph =
        parse_edge_list(&read_file(&args.graph)?).map_err(|e| CliError::Input(e.to_string()))?;
    let doc = EmbeddingDocument::from_json(&read_file(&args.embedding)?)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let embedding = doc
        .to_embedding(&graph)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let report = validate(&graph, &embedding);
    println!("{report}");
    if report.is_valid() {
        Ok(())
    } else {
        Err(CliError::Validation)
    }
}

fn cmd_render(args: RenderArgs) -> Result<(), CliError> {
    let doc = EmbeddingDocument::from_json(&read_file(&args.embedding)?)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let graph = doc.to_graph().map_err(|e| CliError::Input(e.to_string()))?;
    let embedding = doc
        .to_embedding(&graph)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let format = match args.format {
        RenderFormat::Ascii => Format::Ascii,
        RenderFormat::Svg => Format::Svg,
    };
    write_output(&args.output, &format_embedding(format, &embedding, &graph))
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    if args.sizes.is_empty() {
        return Err(CliError::Input("bench needs at least one size".into()));
    }
    for pair in args.sizes.windows(2) {
        if pair[0] >= pair[1] {
            return Err(CliError::Input(format!(
                "sizes must be strictly increasing, got {} before {}",
                pair[0], pair[1]
            )));
        }
    }
    if args.sizes[0] < 2 {
        return Err(CliError::Input(format!(
            "sizes must be at least 2, got {}",
            args.sizes[0]
        )));
    }
    println!("n,cells,bridges,millis");
    let mut timings: Vec<(usize, f64)> = Vec::with_capacity(args.sizes.len());
    for &n in &args.sizes {
        let graph = SourceGraph::complete(n).map_err(|e| CliError::Input(e.to_string()))?;
        // warm-up run so the timed one sees hot caches and allocator
        let warm = embed(&graph);
        let cells = warm.total_cells();
        let bridges = warm.bridges().len();
        let start = Instant::now();
        let timed = embed(&graph);
        let millis = start.elapsed().as_secs_f64() * 1e3;
        assert_eq!(timed.total_cells(), cells, "embedding is deterministic");
        println!("{n},{cells},{bridges},{millis:.3}");
        timings.push((n, millis));
    }
    if timings.len() >= 3 {
        let tail = &timings[timings.len() - 3..];
        let points: Vec<(f64, f64)> = tail
            .iter()
            .map(|&(n, ms)| ((n as f64).ln(), ms.max(f64::MIN_POSITIVE).ln()))
            .collect();
        let mean_x = points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64;
        let mean_y = points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64;
        let denom: f64 = points.iter().map(|&(x, _)| (x - mean_x) * (x - mean_x)).sum();
        let slope = points
            .iter()
            .map(|&(x, y)| (x - mean_x) * (y - mean_y))
            .sum::<f64>()
            / denom;
        eprintln!("log-log slope over largest three sizes: {slope:.3}");
    }
    Ok(())
}
