use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

use windigraph::generators::{
    gen_desc_of_line, gen_dmm, gen_line_z, gen_random_layered_dag, gen_regular_tree, gen_rooted_out_tree, gen_sigma,
    GeneratorSpec,
};
use windigraph::io::{read_json, to_dot, write_json, DotColoring};
use windigraph::reachability::{alternet_graph, alternets, reach_classes};
use windigraph::relations::delta_n_window_partition;
use windigraph::report::{analyze, report_json, summary, AnalyzeOptions};
use windigraph::{quotient, Window};

#[derive(Parser)]
#[command(name = "windigraph", version, about = "Finite windows of infinite digraphs and their structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated window as JSON.
    Generate {
        #[command(subcommand)]
        family: Family,
        /// Output file (stdout if omitted).
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run the full analysis and write a JSON report.
    Analyze {
        input: PathBuf,
        /// n for the δ_n partition.
        #[arg(long = "delta", default_value_t = 1)]
        delta: usize,
        /// Depth of the descendant window.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Root of the descendant window (chosen automatically if omitted).
        #[arg(long)]
        root: Option<usize>,
        /// Largest digraph handed to the isomorphism search.
        #[arg(long, default_value_t = 64)]
        iso_cap: usize,
        /// Largest number of vertices sampled for self-similarity and alternet checks.
        #[arg(long, default_value_t = 32)]
        budget: usize,
        /// Primes `p,q` for the out-valency p·q consistency check.
        #[arg(long, value_parser = parse_pq)]
        pq: Option<(usize, usize)>,
        /// Report file (the report goes to stdout if omitted).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Quotient a window by δ_n.
    Quotient {
        input: PathBuf,
        #[arg(long = "delta", default_value_t = 1)]
        delta: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the reachability classes, alternets and the alternet digraph.
    Reach {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Export as Graphviz DOT.
    ExportDot {
        input: PathBuf,
        #[arg(long, value_enum)]
        color_by: Option<ColorBy>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// D(m, M) above a sink, `levels` levels deep.
    Dmm {
        #[arg(long = "m")]
        m: usize,
        #[arg(long = "M")]
        big_m: usize,
        #[arg(long)]
        levels: usize,
    },
    /// The bipartite alternet type Σ(m, M).
    Sigma {
        #[arg(long = "m")]
        m: usize,
        #[arg(long = "M")]
        big_m: usize,
    },
    /// Rooted out-tree.
    Tree {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        depth: usize,
    },
    /// Ball in the regular directed tree.
    RegularTree {
        #[arg(long = "out")]
        out_valency: usize,
        #[arg(long = "in")]
        in_valency: usize,
        #[arg(long)]
        radius: usize,
    },
    /// Segment of the two-way infinite directed path.
    Line {
        #[arg(long)]
        length: usize,
    },
    /// Descendant set of a directed line inside D(m, M).
    DescLine {
        #[arg(long = "m")]
        m: usize,
        #[arg(long = "M")]
        big_m: usize,
        #[arg(long)]
        levels: usize,
    },
    /// Seeded random layered digraph.
    Random {
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        width: usize,
        /// Edge probability as `p/q`.
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorBy {
    Level,
    Delta,
    Alternet,
}

fn parse_pq(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or("expected p,q")?;
    let p = p.trim().parse().map_err(|e| format!("{e}"))?;
    let q = q.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((p, q))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<Window> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let loaded = read_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    if loaded.duplicate_edges > 0 {
        eprintln!("warning: {} repeated edges merged", loaded.duplicate_edges);
    }
    Ok(loaded.window)
}

fn generate(family: &Family) -> Result<Window> {
    let w = match *family {
        Family::Dmm { m, big_m, levels } => gen_dmm(m, big_m, levels)?,
        Family::Sigma { m, big_m } => gen_sigma(m, big_m)?
            .into_window()
            .with_spec(GeneratorSpec::Sigma { m, big_m }),
        Family::Tree { b, depth } => gen_rooted_out_tree(b, depth)?,
        Family::RegularTree {
            out_valency,
            in_valency,
            radius,
        } => gen_regular_tree(out_valency, in_valency, radius)?,
        Family::Line { length } => gen_line_z(length)?,
        Family::DescLine { m, big_m, levels } => gen_desc_of_line(m, big_m, levels)?,
        Family::Random {
            levels,
            width,
            ref p,
            seed,
        } => {
            let ratio: Ratio<u64> = p.parse().map_err(|_| anyhow!("edge probability {p:?} is not p/q"))?;
            gen_random_layered_dag(levels, width, ratio, seed)?
        }
    };
    Ok(w)
}

/// Quotient by δ_n as a window: a class is interior iff all its members are,
/// and keeps a level iff its members agree on one.
fn quotient_window(w: &Window, n: usize) -> Result<(Window, usize)> {
    let p = delta_n_window_partition(w, n)?;
    let q = quotient(&w.graph, &p)?;
    let classes = q.classes.classes();
    let interior = classes.iter().map(|c| c.iter().all(|&v| w.interior[v])).collect();
    let level = w.level.as_ref().and_then(|lv| {
        classes
            .iter()
            .map(|c| c.iter().all(|&v| lv[v] == lv[c[0]]).then_some(lv[c[0]]))
            .collect::<Option<Vec<i64>>>()
    });
    let labels = classes
        .iter()
        .map(|c| Some(format!("{{{}}}", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))))
        .collect();
    // classes with one level each map edges level -> level + 1
    let out = Window::new(q.graph, interior, level)?.with_labels(labels);
    Ok((out, q.dropped_self_edges))
}

fn reach_json(w: &Window) -> String {
    let (classes, _) = reach_classes(&w.graph);
    let alts = alternets(w);
    let al = alternet_graph(w, &alts.alternets);
    let value = serde_json::json!({
        "class_count": classes.len(),
        "alternets": alts.alternets,
        "signal": alts.signal,
        "alternet_graph": al,
    });
    let mut s = serde_json::to_string_pretty(&value).expect("serialisable");
    s.push('\n');
    s
}

fn dot_coloring(w: &Window, by: Option<ColorBy>) -> Result<DotColoring> {
    Ok(match by {
        None => DotColoring::default(),
        Some(ColorBy::Level) => {
            let lv = w.level.as_ref().ok_or_else(|| anyhow!("coloring by level needs levels"))?;
            let min = lv.iter().copied().min().unwrap_or(0);
            DotColoring {
                vertex_class: Some(lv.iter().map(|&l| (l - min) as usize).collect()),
                edge_class: None,
            }
        }
        Some(ColorBy::Delta) => {
            let p = delta_n_window_partition(w, 1)?;
            let mut class = vec![0; w.vertex_count()];
            for (i, c) in p.classes().iter().enumerate() {
                for &v in c {
                    class[v] = i;
                }
            }
            DotColoring {
                vertex_class: Some(class),
                edge_class: None,
            }
        }
        Some(ColorBy::Alternet) => DotColoring {
            vertex_class: None,
            edge_class: Some(reach_classes(&w.graph).1),
        },
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { family, output } => {
            let w = generate(&family)?;
            emit(output.as_deref(), &write_json(&w))
        }
        Command::Analyze {
            input,
            delta,
            depth,
            root,
            iso_cap,
            budget,
            pq,
            report,
        } => {
            let w = load(&input)?;
            if let Some(r) = root {
                if r >= w.vertex_count() {
                    bail!("root {r} is not a vertex");
                }
            }
            let opts = AnalyzeOptions {
                delta_n: delta,
                depth,
                root,
                iso_cap,
                budget,
                pq,
            };
            let r = analyze(&w, &opts)?;
            match report {
                Some(path) => {
                    emit(Some(&path), &report_json(&r))?;
                    print!("{}", summary(&r));
                }
                None => {
                    print!("{}", report_json(&r));
                    eprint!("{}", summary(&r));
                }
            }
            Ok(())
        }
        Command::Quotient { input, delta, output } => {
            let w = load(&input)?;
            let (q, dropped) = quotient_window(&w, delta)?;
            eprintln!("{} classes, {dropped} edges inside classes dropped", q.vertex_count());
            emit(output.as_deref(), &write_json(&q))
        }
        Command::Reach { input, output } => {
            let w = load(&input)?;
            emit(output.as_deref(), &reach_json(&w))
        }
        Command::ExportDot {
            input,
            color_by,
            output,
        } => {
            let w = load(&input)?;
            let coloring = dot_coloring(&w, color_by)?;
            emit(output.as_deref(), &to_dot(&w, &coloring))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
