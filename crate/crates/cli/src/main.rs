mod repro;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use artin_core::coset_tree::{CosetTree, CosetVertex, TreeBall, TreeVertex, DEFAULT_BUDGET};
use artin_core::deligne::{self, DefiningGraph, Dimension, DomainComplex, LinkOptions, PiMultiple};
use artin_core::dihedral::{lower_slope, DihedralGroup, ElementClass, SearchCaps};
use artin_core::freeword::{parse, Word};
use artin_core::witness::{admissible, render_svg, run_witness, DEFAULT_TOLERANCE};
use artin_core::Error;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

/// Garside normal forms, coset trees, Deligne links and malnormality certificates for
/// 2-dimensional Artin groups.
///
/// Exit codes: 0 success, 1 domain refusal, 2 usage error, 3 inconclusive numeric verdict.
#[derive(Parser)]
#[command(name = "artin", version)]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Vertex budget for balls and developed links.
    #[arg(long, global = true, env = "ARTIN_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Caps {
    /// Largest |exponent| in the syllable search.
    #[arg(long, default_value_t = 6)]
    exponent_cap: u32,
    /// Largest syllable count in the syllable search.
    #[arg(long, default_value_t = 8)]
    depth: u32,
}

impl Caps {
    fn search(self) -> SearchCaps {
        SearchCaps { exponent: self.exponent_cap, depth: self.depth }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Garside normal form of a word in A_ab.
    Nf {
        #[arg(short)]
        m: u32,
        word: String,
        /// Also print the staged rewriting trace.
        #[arg(long)]
        trace: bool,
    },
    /// Whether two words are equal in A_ab.
    Eq {
        #[arg(short)]
        m: u32,
        u: String,
        v: String,
    },
    /// Bounds on the syllabic length.
    Syl {
        #[arg(short)]
        m: u32,
        word: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Elliptic or loxodromic on the cone-off tree.
    Classify {
        #[arg(short)]
        m: u32,
        word: String,
    },
    /// Syllabic-length bounds of the powers g^n.
    Growth {
        #[arg(short)]
        m: u32,
        word: String,
        #[arg(long, default_value_t = 15)]
        nmax: u64,
        #[command(flatten)]
        caps: Caps,
        /// Print the table as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Ball of the coset tree around the base coset.
    TreeBall {
        #[arg(short)]
        m: u32,
        #[arg(long)]
        radius: u32,
        /// Print the ball as Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Distance in the cone-off tree between the cosets of two elements.
    Dhat {
        #[arg(short)]
        m: u32,
        word: String,
        /// Second element; the base coset when absent.
        #[arg(long)]
        from: Option<String>,
    },
    /// Defining graph utilities.
    Graph {
        #[command(subcommand)]
        command: GraphCommand,
    },
    /// Link of a vertex of the Deligne complex.
    Links {
        file: PathBuf,
        /// `v_∅`, `v_a` or `v_ab`.
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 6)]
        radius: u32,
        #[arg(long, default_value_t = 2)]
        exponent_cap: u32,
        /// Print the link as Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Link condition at every vertex type of the Deligne complex.
    Cat0Check {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        radius: u32,
    },
    /// Weak malnormality certificate.
    Witness {
        file: PathBuf,
        /// Write the certificate JSON here.
        #[arg(long = "json-out", alias = "cert")]
        json_out: Option<PathBuf>,
        /// Write the polygon and geodesic as SVG here.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Run an acceptance block: garside, syllabic, tree, links or witness.
    Repro {
        suite: String,
        /// Seed for the fuzzed items.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Rank, connectivity, dimension and reducibility.
    Check { file: PathBuf },
}

struct Usage(String);

impl std::fmt::Debug for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Refused(_) | Error::NotTwoDimensional(_) | Error::Elliptic) => 1,
        Some(
            Error::Inconclusive(_)
            | Error::StripOverflow(_)
            | Error::BudgetExceeded { .. }
            | Error::BallTooSmall { .. }
            | Error::Gluing { .. },
        ) => 3,
        _ => 2,
    }
}

fn group(m: u32) -> anyhow::Result<DihedralGroup> {
    Ok(DihedralGroup::new(m)?)
}

fn word(text: &str) -> anyhow::Result<Word> {
    Ok(parse(text)?)
}

fn load(path: &Path) -> anyhow::Result<DefiningGraph> {
    Ok(DefiningGraph::load(path)?)
}

fn pi(x: PiMultiple) -> String {
    match (*x.numer(), *x.denom()) {
        (1, 1) => "π".into(),
        (n, 1) => format!("{n}π"),
        (1, d) => format!("π/{d}"),
        (n, d) => format!("{n}π/{d}"),
    }
}

fn print_json(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("json"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let as_json = cli.json;
    match &cli.command {
        Command::Nf { m, word: w, trace } => {
            let g = group(*m)?;
            let u = word(w)?;
            let form = g.normal_form(&u);
            let atoms: Vec<String> = form.atoms.iter().map(|a| a.to_string()).collect();
            let stages = trace.then(|| g.staged_trace(&u));
            if as_json {
                let stages: Vec<String> =
                    stages.iter().flat_map(|t| t.stages.iter().map(|s| s.to_string())).collect();
                print_json(json!({ "m": m, "atoms": atoms, "N": form.delta_exp, "form": form.to_string(), "stages": stages }));
            } else {
                println!("atoms: {}", atoms.join(","));
                println!("N: {}", form.delta_exp);
                println!("form: {form}");
                if let Some(t) = stages {
                    for (k, s) in t.stages.iter().enumerate() {
                        println!("stage {} ({:?}): {s}", k + 1, s.step);
                    }
                }
            }
        }
        Command::Eq { m, u, v } => {
            let equal = group(*m)?.equal(&word(u)?, &word(v)?);
            if as_json {
                print_json(json!({ "equal": equal }));
            } else {
                println!("{equal}");
            }
        }
        Command::Syl { m, word: w, caps } => {
            let b = group(*m)?.syllabic_bounds(&word(w)?, caps.search());
            if as_json {
                print_json(json!({ "lower": b.lower, "upper": b.upper, "exact": b.exact(), "dhat": b.dhat, "search_best": b.search_best }));
            } else {
                match b.exact() {
                    Some(x) => println!("syllabic length: {x}"),
                    None => println!("syllabic length: between {} and {}", b.lower, b.upper),
                }
                println!("cone-off distance bound: {}", b.dhat);
            }
        }
        Command::Classify { m, word: w } => {
            let g = group(*m)?;
            let u = word(w)?;
            let class = g.classify_element(&u);
            let tl = CosetTree::new(g).translation_length(&g.normal_form(&u));
            let text = match &class {
                ElementClass::CentralPower { power, delta_exp } => {
                    format!("elliptic: g^{power} = Δ^{delta_exp}")
                }
                ElementClass::ConjGenPower { h, s, exponent, delta_exp } => {
                    format!("elliptic: g = h·{s}^{exponent}·Δ^{delta_exp}·h^-1 with h = {h}")
                }
                ElementClass::Loxodromic => "loxodromic".to_string(),
            };
            if as_json {
                print_json(json!({ "class": text.split(':').next(), "detail": text, "translation_length": tl }));
            } else {
                println!("{text}");
                println!("translation length on T: {tl}");
            }
        }
        Command::Growth { m, word: w, nmax, caps, csv } => {
            let rows = group(*m)?.growth_table(&word(w)?, *nmax, caps.search());
            let slope = lower_slope(&rows);
            if as_json {
                let table: Vec<_> = rows.iter().map(|r| json!({ "n": r.n, "lower": r.lower, "upper": r.upper })).collect();
                print_json(json!({ "rows": table, "lower_slope": slope }));
            } else if *csv {
                println!("n,lower,upper");
                for r in &rows {
                    println!("{},{},{}", r.n, r.lower, r.upper);
                }
            } else {
                println!("{:>4} {:>6} {:>6}", "n", "lower", "upper");
                for r in &rows {
                    println!("{:>4} {:>6} {:>6}", r.n, r.lower, r.upper);
                }
                println!("lower-bound slope: {slope:.3}");
            }
        }
        Command::TreeBall { m, radius, dot } => {
            let ball = TreeBall::build(group(*m)?, *radius, cli.budget)?;
            let valences: Vec<usize> = ball.interior_valences().into_iter().collect();
            if *dot {
                print!("{}", ball.to_dot());
            } else if as_json {
                print_json(json!({
                    "radius": radius, "vertices": ball.vertices().len(), "edges": ball.edge_count(),
                    "acyclic": ball.is_acyclic(), "interior_valences": valences, "axes": ball.axis_count(),
                }));
            } else {
                println!("vertices: {}", ball.vertices().len());
                println!("edges: {}", ball.edge_count());
                println!("acyclic: {}", ball.is_acyclic());
                println!("interior valences: {valences:?}");
                println!("axes meeting the ball: {}", ball.axis_count());
            }
        }
        Command::Dhat { m, word: w, from } => {
            let g = group(*m)?;
            let tree = CosetTree::new(g);
            let base = CosetVertex::base();
            let y = tree.act(&word(w)?, &base);
            let x = match from {
                Some(f) => tree.act(&word(f)?, &base),
                None => base.clone(),
            };
            let far = |v: &CosetVertex| tree.distance(&TreeVertex::Coset(base.clone()), &TreeVertex::Coset(v.clone()));
            let radius = u32::try_from(far(&x).max(far(&y))).context("radius")?;
            let ball = TreeBall::build(g, radius, cli.budget)?;
            let d = ball.dhat_distance(&x, &y)?;
            if as_json {
                print_json(json!({ "lower": d.lower, "upper": d.upper, "exact": d.exact, "tree_distance": d.tree_distance }));
            } else {
                println!("tree distance: {}", d.tree_distance);
                if d.exact {
                    println!("cone-off distance: {} (confirmed by search)", d.upper);
                } else {
                    println!("cone-off distance: between {} and {}", d.lower, d.upper);
                }
            }
        }
        Command::Graph { command: GraphCommand::Check { file } } => {
            let g = load(file)?;
            let (dim_ok, dim_note) = match g.dimension() {
                Dimension::Two => (true, String::new()),
                Dimension::Discrete => (false, " (no edges: dimension 1)".to_string()),
                Dimension::Spherical { triangle, sum } => {
                    (false, format!(" (triangle {} has 1/m sum {sum})", triangle.join(",")))
                }
            };
            let witness = admissible(&g).err().map(|e| e.to_string());
            if as_json {
                print_json(json!({
                    "rank": g.rank(), "connected": g.is_connected(), "two_dimensional": dim_ok,
                    "irreducible": !g.is_reducible(), "right_angled": g.is_right_angled(),
                    "witness_refusal": witness,
                }));
            } else {
                let yes = |b: bool| if b { "yes" } else { "no" };
                println!("rank: {}", g.rank());
                println!("connected: {}", yes(g.is_connected()));
                println!("dimension-2: {}{dim_note}", yes(dim_ok));
                println!("irreducible: {}", yes(!g.is_reducible()));
                println!("right-angled: {}", yes(g.is_right_angled()));
                match witness {
                    None => println!("witness pipeline: admissible"),
                    Some(r) => println!("witness pipeline: {r}"),
                }
            }
        }
        Command::Links { file, vertex, radius, exponent_cap, dot } => {
            let g = load(file)?;
            let opts = LinkOptions { radius: *radius, exponent_cap: *exponent_cap, budget: cli.budget };
            let l = deligne::link(&g, vertex, opts)?;
            let systole = l.systole();
            if *dot {
                print!("{}", l.to_dot(vertex));
            } else if as_json {
                print_json(json!({
                    "vertex": vertex, "vertices": l.vertex_count(), "edges": l.edge_count(),
                    "systole": systole.map(|s| s.to_string()), "girth": l.girth(),
                }));
            } else {
                println!("vertices: {}", l.vertex_count());
                println!("edges: {}", l.edge_count());
                match systole {
                    Some(s) => println!("systole: {}", pi(s)),
                    None => println!("systole: none (acyclic)"),
                }
                if let Some(gi) = l.girth() {
                    println!("girth: {gi} edges");
                }
            }
        }
        Command::Cat0Check { file, radius } => {
            let g = load(file)?;
            let opts = LinkOptions { radius: *radius, exponent_cap: 2, budget: cli.budget };
            let report = DomainComplex::build(&g)?.check_link_condition(opts)?;
            if as_json {
                let checks: Vec<_> = report
                    .checks
                    .iter()
                    .map(|c| json!({
                        "vertex": c.vertex, "vertices": c.vertices, "edges": c.edges,
                        "systole": c.systole.map(|s| s.to_string()), "passes": c.passes,
                        "scope": format!("{:?}", c.scope),
                    }))
                    .collect();
                print_json(json!({ "passes": report.passes(), "checks": checks }));
            } else {
                for c in &report.checks {
                    let s = c.systole.map_or("none".to_string(), pi);
                    let verdict = if c.passes { "ok" } else { "FAILS" };
                    println!("{:<8} systole {:<8} {:>7} vertices  {:?}  {verdict}", c.vertex, s, c.vertices, c.scope);
                }
                println!("link condition: {}", if report.passes() { "holds" } else { "fails" });
            }
            if !report.passes() {
                return Ok(1);
            }
        }
        Command::Witness { file, json_out, svg, tolerance } => {
            if !(*tolerance > 0.0 && *tolerance <= 1e-3) {
                return Err(Usage("tolerance must lie in (0, 1e-3]".into()).into());
            }
            let g = load(file)?;
            let run = run_witness(&g, *tolerance)?;
            let cert = &run.certificate;
            let text = serde_json::to_string_pretty(cert)?;
            if let Some(path) = json_out {
                std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = svg {
                std::fs::write(path, render_svg(&run)).with_context(|| format!("writing {}", path.display()))?;
            }
            if as_json {
                println!("{text}");
            } else {
                println!("situation: {}", cert.situation);
                println!("generators: {}", cert.generators.join(","));
                println!("vertex: {} (m = {})", cert.vertex, cert.m_ab);
                println!("witness: {}", cert.witness_word);
                println!("geodesic: {}", run.geodesic.vertices.join(" -> "));
                println!(
                    "crossing: {:?} in {} of tile {} at {:?}, clearance {:.6}",
                    cert.crossing.kind, cert.crossing.triangle, cert.crossing.tile, cert.crossing.barycentric, cert.crossing.clearance
                );
            }
        }
        Command::Repro { suite, seed } => {
            let items = repro::run(suite, *seed).ok_or_else(|| {
                Usage(format!("unknown suite '{suite}'; expected one of {}", repro::SUITES.join(", ")))
            })?;
            println!("suite {suite}, seed {seed}");
            for it in &items {
                println!("{} {}: {}", if it.pass { "PASS" } else { "FAIL" }, it.name, it.detail);
            }
            if items.iter().any(|i| !i.pass) {
                return Ok(1);
            }
        }
    }
    Ok(0)
}
