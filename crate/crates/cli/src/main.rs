//! `squarekit` command-line front end.

mod svg;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use squarekit::chords::{diagram_from_squaregraph, squaregraph_from_diagram, ChordDiagram};
use squarekit::embedding::{embed_in_trees, min_trees};
use squarekit::generators::{generate, GeneratorSpec};
use squarekit::genset::{compatibility_stats, hull_report, min_generating_set};
use squarekit::hellyfication::hellyfy;
use squarekit::recognition::{curvature, is_squaregraph};
use squarekit::splits::halfspace_system;
use squarekit::{Graph, GraphJson, Metric, SplitSystem, SplitSystemJson, VertexSet};

#[derive(Parser)]
#[command(name = "squarekit", version, about = "Squaregraph recognition, duality and embedding tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Graph or split system JSON file (`-` for standard input).
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Generator spec such as `grid:3x4`, `cogwheel:5`, `random:seed=7,steps=20`.
    #[arg(long = "gen", value_name = "SPEC")]
    generator: Option<String>,
    /// Chord diagram as comma-separated labels, e.g. `1,2,1,2`.
    #[arg(long, value_name = "LABELS")]
    diagram: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
    Dot,
}

#[derive(Args, Clone)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the graph is a squaregraph, with a witness if not.
    Recognize(Common),
    /// Median-graph check, or the median of one triple.
    Medians {
        #[command(flatten)]
        common: Common,
        /// Three vertex names.
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"])]
        triple: Option<Vec<String>>,
    },
    /// Halfspace split system.
    Splits(Common),
    /// Chord diagram of a squaregraph, or squaregraph of a diagram.
    Dual(Common),
    /// Median graph of a split system (or of a graph's halfspaces traced on a vertex set).
    Hellyfy {
        #[command(flatten)]
        common: Common,
        /// Vertices to trace the halfspaces on; a minimum generating set by default.
        #[arg(long, num_args = 1.., value_name = "V")]
        on: Option<Vec<String>>,
    },
    /// Isometric embedding into a product of trees.
    Embed(Common),
    /// Minimum median-generating set.
    Genset(Common),
    /// Hull and star-contraction numbers.
    Hull(Common),
    /// Exact vertex curvatures.
    Curvature(Common),
    /// Emit a generated graph.
    Generate(Common),
    /// Draw a graph or chord diagram as SVG.
    Render(Common),
    /// Summary statistics.
    Stats(Common),
}

enum Failure {
    Usage(String),
    Domain { kind: String, message: String },
}

impl From<squarekit::Error> for Failure {
    fn from(e: squarekit::Error) -> Self {
        Failure::Domain { kind: e.kind().into(), message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain { kind: "io".into(), message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        squarekit::Error::Json(e).into()
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

enum Subject {
    Graph(Graph),
    Splits(SplitSystem),
    Diagram(ChordDiagram),
}

fn load(src: &Source) -> Outcome<Subject> {
    if let Some(spec) = &src.generator {
        let mut spec: GeneratorSpec = spec.parse()?;
        if let Ok(seed) = std::env::var("SQUAREKIT_SEED") {
            let seed = seed
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("SQUAREKIT_SEED must be an unsigned integer, got `{seed}`")))?;
            spec = spec.with_seed(seed);
        }
        return Ok(Subject::Graph(generate(&spec)?));
    }
    if let Some(d) = &src.diagram {
        return Ok(Subject::Diagram(d.parse()?));
    }
    let path = src.input.as_ref().expect("clap enforces one source");
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    let value: Value = serde_json::from_str(&text)?;
    if value.get("splits").is_some() {
        let j: SplitSystemJson = serde_json::from_value(value)?;
        Ok(Subject::Splits(SplitSystem::from_json(&j)?))
    } else {
        let j: GraphJson = serde_json::from_value(value)?;
        Ok(Subject::Graph(Graph::from_json(&j)?))
    }
}

fn graph_of(subject: Subject) -> Outcome<Graph> {
    match subject {
        Subject::Graph(g) => Ok(g),
        Subject::Diagram(d) => Ok(squaregraph_from_diagram(&d)?),
        Subject::Splits(_) => Err(Failure::Domain {
            kind: "wrong-input".into(),
            message: "this command needs a graph, not a split system".into(),
        }),
    }
}

fn names(g: &Graph, vs: impl IntoIterator<Item = usize>) -> Vec<String> {
    vs.into_iter().map(|v| g.name(v).to_string()).collect()
}

fn set_names(g: &Graph, s: &VertexSet) -> Vec<String> {
    names(g, s.ones())
}

fn indices(g: &Graph, list: &[String]) -> Outcome<Vec<usize>> {
    list.iter().map(|n| g.index_of(n).map_err(Failure::from)).collect()
}

/// What a command produces, before formatting.
enum Product {
    Value(Value),
    Graph(Graph),
    Text(String),
}

fn check_format(format: Format, allowed: &[Format], command: &str) -> Outcome<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        Err(Failure::Usage(format!("`{command}` does not support --format {name}")))
    }
}

fn graph_product(g: Graph, format: Format) -> Outcome<Product> {
    match format {
        Format::Json | Format::Dot => Ok(Product::Graph(g)),
        Format::Svg => Ok(Product::Text(svg::graph_svg(&g)?)),
    }
}

fn run(command: Command) -> Outcome<(Product, Format, Option<PathBuf>)> {
    let json_only = |c: &Common, name: &str| -> Outcome<Format> {
        let f = c.format.unwrap_or(Format::Json);
        check_format(f, &[Format::Json], name)?;
        Ok(f)
    };
    let (product, format, out) = match command {
        Command::Recognize(c) => {
            let f = json_only(&c, "recognize")?;
            let g = graph_of(load(&c.source)?)?;
            (Product::Value(serde_json::to_value(is_squaregraph(&g)?)?), f, c.out)
        }
        Command::Medians { common: c, triple } => {
            let f = json_only(&c, "medians")?;
            let g = graph_of(load(&c.source)?)?;
            let m = Metric::new(&g)?;
            let violation = m.median_violation().map(|(a, b, x)| names(&g, [a, b, x]));
            let mut v = json!({ "median_graph": violation.is_none(), "violation": violation });
            if let Some(t) = triple {
                let ids = indices(&g, &t)?;
                v["median"] = json!(m.median(ids[0], ids[1], ids[2]).map(|x| g.name(x).to_string()));
            }
            (Product::Value(v), f, c.out)
        }
        Command::Splits(c) => {
            let f = json_only(&c, "splits")?;
            let s = match load(&c.source)? {
                Subject::Splits(s) => s,
                other => halfspace_system(&graph_of(other)?)?,
            };
            (Product::Value(serde_json::to_value(s.to_json())?), f, c.out)
        }
        Command::Dual(c) => {
            let f = c.format.unwrap_or(Format::Json);
            match load(&c.source)? {
                Subject::Diagram(d) => (graph_product(squaregraph_from_diagram(&d)?, f)?, f, c.out),
                other => {
                    check_format(f, &[Format::Json, Format::Svg], "dual")?;
                    let d = diagram_from_squaregraph(&graph_of(other)?)?;
                    let p = match f {
                        Format::Svg => Product::Text(svg::diagram_svg(&d)),
                        _ => Product::Value(json!({ "diagram": d.to_string(), "chords": d.chords() })),
                    };
                    (p, f, c.out)
                }
            }
        }
        Command::Hellyfy { common: c, on } => {
            let f = c.format.unwrap_or(Format::Json);
            check_format(f, &[Format::Json, Format::Dot], "hellyfy")?;
            let s = match load(&c.source)? {
                Subject::Splits(s) => s,
                other => {
                    let g = graph_of(other)?;
                    let x = match on {
                        Some(list) => indices(&g, &list)?,
                        None => min_generating_set(&g)?.vertices,
                    };
                    halfspace_system(&g)?.trace(&x)?
                }
            };
            let h = hellyfy(&s)?;
            let p = if f == Format::Dot {
                Product::Graph(h.graph)
            } else {
                let mut v = serde_json::to_value(h.graph.to_json())?;
                let provenance: Map<String, Value> = (0..h.graph.len())
                    .map(|x| (h.graph.name(x).to_string(), json!(h.transversal(x, s.len()))))
                    .collect();
                let elements: Map<String, Value> = s
                    .ground()
                    .iter()
                    .zip(&h.element)
                    .map(|(e, &x)| (e.clone(), json!(h.graph.name(x))))
                    .collect();
                v["provenance"] = Value::Object(provenance);
                v["elements"] = Value::Object(elements);
                Product::Value(v)
            };
            (p, f, c.out)
        }
        Command::Embed(c) => {
            let f = json_only(&c, "embed")?;
            let g = graph_of(load(&c.source)?)?;
            let e = embed_in_trees(&g)?;
            (Product::Value(serde_json::to_value(e.to_json(&g))?), f, c.out)
        }
        Command::Genset(c) => {
            let f = json_only(&c, "genset")?;
            let g = graph_of(load(&c.source)?)?;
            let x = min_generating_set(&g)?;
            let v = json!({
                "genset": names(&g, x.vertices.iter().copied()),
                "size": x.vertices.len(),
                "inner_lines": x.lines.iter().map(|l| names(&g, l.path.iter().copied())).collect::<Vec<_>>(),
                "matching": x.matching,
            });
            (Product::Value(v), f, c.out)
        }
        Command::Hull(c) => {
            let f = json_only(&c, "hull")?;
            let g = graph_of(load(&c.source)?)?;
            let r = hull_report(&g)?;
            let v = json!({
                "h": r.h,
                "s": r.s,
                "shape": r.shape,
                "minimal_halfspaces": r.minimal.iter().map(|m| set_names(&g, m)).collect::<Vec<_>>(),
                "intersection": r.intersection.to_json(),
            });
            (Product::Value(v), f, c.out)
        }
        Command::Curvature(c) => {
            let f = json_only(&c, "curvature")?;
            let g = graph_of(load(&c.source)?)?;
            let cm = curvature(&g)?;
            let values: Map<String, Value> = cm
                .values
                .iter()
                .map(|vc| (g.name(vc.vertex).to_string(), json!(format!("{}/{}", vc.value.numer(), vc.value.denom()))))
                .collect();
            let v = json!({
                "curvature": values,
                "all_nonpositive": cm.all_nonpositive,
                "zeros": names(&g, cm.zeros.iter().copied()),
            });
            (Product::Value(v), f, c.out)
        }
        Command::Generate(c) => {
            let f = c.format.unwrap_or(Format::Json);
            let g = graph_of(load(&c.source)?)?;
            (graph_product(g, f)?, f, c.out)
        }
        Command::Render(c) => {
            let f = c.format.unwrap_or(Format::Svg);
            check_format(f, &[Format::Svg], "render")?;
            let text = match load(&c.source)? {
                Subject::Diagram(d) => svg::diagram_svg(&d),
                other => svg::graph_svg(&graph_of(other)?)?,
            };
            (Product::Text(text), f, c.out)
        }
        Command::Stats(c) => {
            let f = json_only(&c, "stats")?;
            let g = graph_of(load(&c.source)?)?;
            let report = is_squaregraph(&g)?;
            let mut v = json!({
                "vertices": g.len(),
                "edges": g.edge_count(),
                "squaregraph": report.verdict,
            });
            if report.verdict {
                let st = compatibility_stats(&g)?;
                let hull = hull_report(&g)?;
                let x = min_generating_set(&g)?;
                v["splits"] = json!(halfspace_system(&g)?.len());
                v["t"] = json!(st.t);
                v["c"] = json!(st.c);
                v["h"] = json!(hull.h);
                v["s"] = json!(hull.s);
                v["min_trees"] = json!(min_trees(&g)?.trees);
                v["genset_size"] = json!(x.vertices.len());
                v["inner_lines"] = json!(x.lines.len());
            }
            (Product::Value(v), f, c.out)
        }
    };
    Ok((product, format, out))
}

fn render(product: Product, format: Format) -> Outcome<String> {
    Ok(match (product, format) {
        (Product::Graph(g), Format::Dot) => g.to_dot(),
        (Product::Graph(g), _) => serde_json::to_string_pretty(&g.to_json())? + "\n",
        (Product::Value(v), _) => serde_json::to_string_pretty(&v)? + "\n",
        (Product::Text(t), _) => t,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(cli.command).and_then(|(p, f, out)| {
        let text = render(p, f)?;
        match out {
            Some(path) => std::fs::write(path, text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain { kind, message }) => {
            eprintln!("{}", json!({ "error": kind, "message": message }));
            ExitCode::from(1)
        }
    }
}
