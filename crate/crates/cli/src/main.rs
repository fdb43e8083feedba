use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use edgeswap_core::{
    build_gog, canonical_form, components_intersect_classes, count_graphs, enumerate_capped,
    for_each_graph, isomorphism_classes, space_connectivity, triangle_histogram, ChainConfig,
    DegreeSequence, EnumFilter, Error, GogSpec, Graph, GraphSpace, Sampler, TriangleSequence,
};
use serde::Serialize;

const DEFAULT_MAX_CENSUS: usize = 1_000_000;

#[derive(Parser)]
#[command(
    name = "edgeswap",
    version,
    about = "Degree-preserving edge swaps across graph spaces"
)]
struct Cli {
    /// Worker threads for parallel enumeration and gog construction.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report whether the swap graph of a space is connected for a degree sequence.
    Check {
        #[arg(long, value_parser = parse_space)]
        space: GraphSpace,
        /// Comma list, or @path to a file holding one.
        #[arg(long)]
        degseq: String,
    },
    /// Enumerate every labeled graph with a degree sequence.
    Enumerate {
        #[arg(long, value_parser = parse_space)]
        space: GraphSpace,
        #[arg(long)]
        degseq: String,
        /// Keep graphs with exactly this many triangles (simple space only).
        #[arg(long)]
        triangles: Option<usize>,
        /// Keep graphs with this per-vertex triangle sequence (simple space only).
        #[arg(long, value_name = "LIST")]
        triangle_seq: Option<String>,
        /// Print a summary with a histogram instead of the graphs.
        #[arg(long, value_enum)]
        histogram: Option<Histogram>,
        /// Print only the number of graphs.
        #[arg(long, conflicts_with_all = ["histogram", "classes"])]
        count_only: bool,
        /// Print a summary with isomorphism class sizes instead of the graphs.
        #[arg(long)]
        classes: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_CENSUS)]
        max_census: usize,
    },
    /// Stream samples of the double-swap chain as JSON lines.
    Sample {
        #[arg(long, value_parser = parse_space)]
        space: GraphSpace,
        /// Start graph in text format; `-` reads standard input.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        burn_in: Option<u64>,
        #[arg(long)]
        thin: Option<u64>,
    },
    /// Build the k-swap graph of graphs and report its components.
    Gog {
        #[arg(long, value_parser = parse_space)]
        space: GraphSpace,
        #[arg(long)]
        degseq: String,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        /// Restrict to graphs with this many triangles (simple space only).
        #[arg(long, value_name = "N")]
        fix_triangles: Option<usize>,
        /// Restrict to graphs with this triangle sequence (simple space only).
        #[arg(long, value_name = "LIST")]
        fix_triangle_seq: Option<String>,
        /// Add the component by isomorphism class membership matrix.
        #[arg(long)]
        classes: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_CENSUS)]
        max_census: usize,
    },
    /// Print the canonical relabeling of a graph.
    Canon {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Serialize)]
struct EnumSummary {
    total: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    histogram: Option<BTreeMap<usize, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class_sizes: Option<Vec<usize>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Histogram {
    Triangles,
}

fn parse_space(s: &str) -> Result<GraphSpace, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read_source(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn list_arg(raw: &str) -> Result<String> {
    match raw.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}")),
        None => Ok(raw.to_string()),
    }
}

fn degrees(raw: &str) -> Result<DegreeSequence> {
    Ok(list_arg(raw)?.parse()?)
}

fn triangle_seq(raw: &str) -> Result<TriangleSequence> {
    Ok(list_arg(raw)?.parse()?)
}

fn read_graph(path: &PathBuf) -> Result<Graph> {
    Ok(Graph::parse_text(&read_source(path)?)?)
}

fn require_simple(space: GraphSpace) -> Result<()> {
    if space != GraphSpace::SIMPLE {
        return Err(Error::FilterInapplicable(space).into());
    }
    Ok(())
}

fn triangle_filter(
    space: GraphSpace,
    count: Option<usize>,
    seq: Option<&str>,
) -> Result<EnumFilter> {
    let mut f = EnumFilter::none();
    if count.is_some() || seq.is_some() {
        require_simple(space)?;
    }
    f.triangle_count = count;
    f.triangle_seq = seq.map(triangle_seq).transpose()?;
    Ok(f)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    match cli.command {
        Command::Check { space, degseq } => {
            writeln!(out, "{}", space_connectivity(space, &degrees(&degseq)?))?;
        }
        Command::Enumerate {
            space,
            degseq,
            triangles,
            triangle_seq,
            histogram,
            count_only,
            classes,
            max_census,
        } => {
            let d = degrees(&degseq)?;
            let f = triangle_filter(space, triangles, triangle_seq.as_deref())?;
            if count_only {
                writeln!(out, "{}", count_graphs(space, &d, &f)?)?;
            } else if histogram.is_some() || classes {
                let summary = EnumSummary {
                    total: count_graphs(space, &d, &f)?,
                    histogram: match histogram {
                        Some(Histogram::Triangles) => {
                            require_simple(space)?;
                            Some(triangle_histogram(&d, &f)?)
                        }
                        None => None,
                    },
                    class_sizes: if classes {
                        let census = enumerate_capped(space, &d, &f, max_census)?;
                        Some(isomorphism_classes(&census).sizes())
                    } else {
                        None
                    },
                };
                writeln!(out, "{}", serde_json::to_string(&summary)?)?;
            } else {
                let mut failure = None;
                for_each_graph(space, &d, &f, |g| {
                    match serde_json::to_writer(&mut *out, g)
                        .map_err(io::Error::from)
                        .and_then(|()| writeln!(out))
                    {
                        Ok(()) => ControlFlow::Continue(()),
                        Err(e) => {
                            failure = Some(e);
                            ControlFlow::Break(())
                        }
                    }
                })?;
                if let Some(e) = failure {
                    return Err(e.into());
                }
            }
        }
        Command::Sample {
            space,
            input,
            count,
            seed,
            burn_in,
            thin,
        } => {
            let g = read_graph(&input)?;
            let mut cfg = ChainConfig::with_defaults(space, g.edge_count(), count, seed);
            cfg.burn_in = burn_in.unwrap_or(cfg.burn_in);
            cfg.thin = thin.unwrap_or(cfg.thin);
            for s in Sampler::new(g, cfg)? {
                serde_json::to_writer(&mut *out, &s)?;
                writeln!(out)?;
            }
        }
        Command::Gog {
            space,
            degseq,
            k,
            fix_triangles,
            fix_triangle_seq,
            classes,
            max_census,
        } => {
            let d = degrees(&degseq)?;
            let mut spec = GogSpec::new(space, d, k as usize).max_census(max_census);
            if fix_triangles.is_some() || fix_triangle_seq.is_some() {
                require_simple(space)?;
                let target = fix_triangle_seq.as_deref().map(triangle_seq).transpose()?;
                spec.keep = Some(Arc::new(move |g: &Graph| {
                    fix_triangles.is_none_or(|t| g.triangle_count().is_ok_and(|c| c == t))
                        && target
                            .as_ref()
                            .is_none_or(|t| g.triangle_sequence().is_ok_and(|s| &s == t))
                }));
            }
            let report = build_gog(&spec)?;
            let matrix = if classes {
                Some(components_intersect_classes(
                    &report,
                    &isomorphism_classes(&report.graphs),
                )?)
            } else {
                None
            };
            writeln!(out, "{}", serde_json::to_string(&report.summary(matrix))?)?;
        }
        Command::Canon { input } => {
            write!(
                out,
                "{}",
                canonical_form(&read_graph(&input)?).graph.to_text()
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| Ok(out.flush()?));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e)
            if e.downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
