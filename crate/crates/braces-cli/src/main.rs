//! Terminal front end: parse the text graph format, dispatch to the library,
//! emit deterministic line-oriented output.
//!
//! Exit codes: 0 success / all assertions hold, 1 a verification found a
//! violation, 2 usage or input errors.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use braces::expand::NarrowWitness;
use braces::text::{parse_graph, serialize_graph};
use braces::{
    classify_edges, find_mpp, generate_braces, is_brace, is_matching_covered, is_mccuaig,
    is_minimal_brace, make, minimal_braces, run_with_workers, tight_cut_decomposition,
    verify_bound, verify_generation_oracle, verify_narrow, verify_small_order,
    verify_thin_properties, BipartiteGraph, Family, FamilySpec, Side, VertexId,
};

#[derive(Parser)]
#[command(name = "braces", version, about = "Braces, tight cuts and minimal-brace machinery")]
struct Cli {
    /// Emit one JSON object per line with stable key order.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel stages (0 = library default).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report matching-covered / brace / minimal / McCuaig membership.
    Check {
        /// Graph file in the text format; standard input when omitted or `-`.
        file: Option<PathBuf>,
    },
    /// Classify every edge: removable, thin, strictly thin, index, superfluous.
    ClassifyEdges {
        file: Option<PathBuf>,
    },
    /// Tight cut decomposition; one line per brace leaf.
    Decompose {
        file: Option<PathBuf>,
    },
    /// Emit a named family member in the text graph format.
    Generate {
        /// K2, C4, K33, B8plus, M10, Q10, Q10plus, Q12, B12, biwheel, prism, moebius, Q.
        #[arg(long)]
        family: String,
        /// Order 2n for the parameterized families.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Enumerate all simple braces up to the given order.
    Enumerate {
        #[arg(long, default_value_t = 12)]
        max_order: usize,
        /// Restrict the output to minimal braces.
        #[arg(long)]
        minimal: bool,
        #[arg(long)]
        override_guardrail: bool,
    },
    /// Find and verify a narrow minimality-preserving pair.
    Mpp {
        file: Option<PathBuf>,
    },
    /// Run the full verification harness; nonzero exit on any violation.
    Verify {
        #[arg(long, default_value_t = 14)]
        max_order: usize,
        #[arg(long)]
        override_guardrail: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let workers = cli.workers;
    match run_with_workers(workers, move || dispatch(cli.command, json)) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(file: &Option<PathBuf>) -> anyhow::Result<BipartiteGraph> {
    let text = match file {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)?,
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    Ok(parse_graph(&text)?)
}

/// `a3` / `b0` style vertex names from class positions.
fn vertex_name(g: &BipartiteGraph, v: VertexId) -> String {
    match g.class_index(v).expect("vertex of g") {
        (Side::A, i) => format!("a{i}"),
        (Side::B, i) => format!("b{i}"),
    }
}

fn edge_name(g: &BipartiteGraph, id: braces::EdgeId) -> String {
    let e = g.edge(id).expect("edge of g");
    format!("{}-{}", vertex_name(g, e.a), vertex_name(g, e.b))
}

fn dispatch(command: Command, json: bool) -> anyhow::Result<ExitCode> {
    match command {
        Command::Check { file } => {
            let g = read_graph(&file)?;
            #[derive(Serialize)]
            struct CheckOut {
                matching_covered: bool,
                brace: bool,
                minimal: bool,
                mccuaig: bool,
            }
            let out = CheckOut {
                matching_covered: is_matching_covered(&g),
                brace: is_brace(&g),
                minimal: is_minimal_brace(&g),
                mccuaig: is_mccuaig(&g),
            };
            if json {
                println!("{}", serde_json::to_string(&out)?);
            } else {
                println!(
                    "matching_covered={} brace={} minimal={} mccuaig={}",
                    out.matching_covered, out.brace, out.minimal, out.mccuaig
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ClassifyEdges { file } => {
            let g = read_graph(&file)?;
            #[derive(Serialize)]
            struct EdgeOut {
                edge: u32,
                a: usize,
                b: usize,
                removable: bool,
                thin: bool,
                strictly_thin: bool,
                index: u8,
                superfluous: bool,
            }
            for c in classify_edges(&g)? {
                let e = g.edge(c.edge).expect("classified edge");
                let (_, ai) = g.class_index(e.a).expect("endpoint");
                let (_, bi) = g.class_index(e.b).expect("endpoint");
                let out = EdgeOut {
                    edge: c.edge.0,
                    a: ai,
                    b: bi,
                    removable: c.removable,
                    thin: c.thin,
                    strictly_thin: c.strictly_thin,
                    index: c.index,
                    superfluous: c.superfluous,
                };
                if json {
                    println!("{}", serde_json::to_string(&out)?);
                } else {
                    println!(
                        "edge={} a={} b={} removable={} thin={} strictly_thin={} index={} superfluous={}",
                        out.edge, out.a, out.b, out.removable, out.thin, out.strictly_thin,
                        out.index, out.superfluous
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { file } => {
            let g = read_graph(&file)?;
            if !is_matching_covered(&g) {
                anyhow::bail!("decompose needs a matching covered graph");
            }
            let d = tight_cut_decomposition(&g);
            #[derive(Serialize)]
            struct LeafOut {
                canonical: String,
                order: usize,
                size: usize,
            }
            let mut lines: Vec<LeafOut> = d
                .leaves
                .iter()
                .map(|leaf| LeafOut {
                    canonical: braces::canonical_form(leaf)
                        .expect("leaves are connected")
                        .to_hex(),
                    order: leaf.order(),
                    size: leaf.size(),
                })
                .collect();
            lines.sort_by(|x, y| x.canonical.cmp(&y.canonical));
            for out in lines {
                if json {
                    println!("{}", serde_json::to_string(&out)?);
                } else {
                    println!("{} order={} size={}", out.canonical, out.order, out.size);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate { family, order } => {
            let family: Family = family.parse()?;
            let g = make(FamilySpec::new(family, order))?;
            if json {
                #[derive(Serialize)]
                struct GraphOut {
                    n_a: usize,
                    n_b: usize,
                    edges: Vec<(usize, usize)>,
                }
                let mut edges: Vec<(usize, usize)> = g
                    .edges()
                    .iter()
                    .map(|e| {
                        let (_, ai) = g.class_index(e.a).expect("endpoint");
                        let (_, bi) = g.class_index(e.b).expect("endpoint");
                        (ai, bi)
                    })
                    .collect();
                edges.sort_unstable();
                let out = GraphOut { n_a: g.class_a().len(), n_b: g.class_b().len(), edges };
                println!("{}", serde_json::to_string(&out)?);
            } else {
                print!("{}", serialize_graph(&g));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { max_order, minimal, override_guardrail } => {
            let corpus = generate_braces(max_order, override_guardrail)?;
            let slice = if minimal { minimal_braces(&corpus) } else { corpus };
            #[derive(Serialize)]
            struct EntryOut {
                canonical: String,
                order: usize,
                size: usize,
                brace: bool,
                minimal: bool,
                mccuaig: bool,
                provenance: String,
            }
            for entry in slice.iter() {
                let g = entry.graph();
                let out = EntryOut {
                    canonical: entry.form.to_hex(),
                    order: entry.order(),
                    size: entry.size(),
                    brace: true,
                    minimal: minimal || is_minimal_brace(&g),
                    mccuaig: is_mccuaig(&g),
                    provenance: entry.provenance.to_string(),
                };
                if json {
                    println!("{}", serde_json::to_string(&out)?);
                } else {
                    println!(
                        "{} order={} size={} brace={} minimal={} mccuaig={} provenance={}",
                        out.canonical, out.order, out.size, out.brace, out.minimal, out.mccuaig,
                        out.provenance
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mpp { file } => {
            let g = read_graph(&file)?;
            let cert = find_mpp(&g)?;
            verify_narrow(&g, &cert).map_err(|f| anyhow::anyhow!("certificate rejected: {f}"))?;
            let f_names: Vec<String> = cert.f_in_g.iter().map(|&f| edge_name(&g, f)).collect();
            let witness = match cert.witness {
                NarrowWitness::Empty => "empty".to_string(),
                NarrowWitness::OuterVertex(v) => format!("outer-vertex {}", vertex_name(&g, v)),
                NarrowWitness::OuterPair(u, w) => {
                    format!("outer-pair {} {}", vertex_name(&g, u), vertex_name(&g, w))
                }
            };
            let stable_ext = match cert.stable_ext {
                Some(true) => "true",
                Some(false) => "false",
                None => "n/a",
            };
            if json {
                #[derive(Serialize)]
                struct MppOut {
                    e: String,
                    index: u8,
                    f: Vec<String>,
                    witness: String,
                    stable_extension: String,
                    j: String,
                }
                let out = MppOut {
                    e: edge_name(&g, cert.edge),
                    index: cert.index,
                    f: f_names,
                    witness,
                    stable_extension: stable_ext.to_string(),
                    j: serialize_graph(&cert.j),
                };
                println!("{}", serde_json::to_string(&out)?);
            } else {
                println!("e = {}", edge_name(&g, cert.edge));
                println!("index = {}", cert.index);
                println!("F = {}", f_names.join(", "));
                println!("witness = {witness}");
                println!("stable_extension = {stable_ext}");
                println!("J:");
                print!("{}", serialize_graph(&cert.j));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { max_order, override_guardrail } => {
            let corpus = generate_braces(max_order, override_guardrail)?;
            let mut failed = false;
            let mut emit = |name: &str, ok: bool, checked: usize, violations: Vec<String>| {
                failed |= !ok;
                if json {
                    #[derive(Serialize)]
                    struct VerifyOut<'a> {
                        check: &'a str,
                        ok: bool,
                        checked: usize,
                        violations: Vec<String>,
                    }
                    let out = VerifyOut { check: name, ok, checked, violations };
                    println!("{}", serde_json::to_string(&out).expect("serializable"));
                } else if ok {
                    println!("check {name}: ok ({checked} checked)");
                } else {
                    println!("check {name}: FAIL ({checked} checked)");
                    for v in violations {
                        println!("  {v}");
                    }
                }
            };
            let r = verify_small_order(&corpus);
            emit(r.name, r.ok(), r.checked, r.violations.iter().map(|v| v.to_string()).collect());
            let r = verify_generation_oracle(&corpus);
            emit(r.name, r.ok(), r.checked, r.violations.iter().map(|v| v.to_string()).collect());
            let r = verify_thin_properties(&corpus);
            emit(r.name, r.ok(), r.checked, r.violations.iter().map(|v| v.to_string()).collect());
            let r = verify_bound(&corpus);
            emit(
                "extremal-bound-and-narrow-pairs",
                r.ok(),
                r.minimal_checked + r.certificates_checked,
                r.violations().iter().map(|v| v.to_string()).collect(),
            );
            Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
    }
}
