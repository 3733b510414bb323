//! `epp`: generators, detectors, solvers and checkers on JSON graphs.
//!
//! Exit codes: 0 success or packing, 10 hitting set, 1 counterexample,
//! 2 usage or input error, 3 budget exceeded.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ladder_epp::budget::DEFAULT_BUDGET;
use ladder_epp::constructions::{build_condensed_wall, build_counterexample, pack_ladders13};
use ladder_epp::io::{export_dot, export_graph, parse_graph, Highlight, Label, Labels};
use ladder_epp::patterns::{find_house_with, find_ladder3_with, find_ladder_with, find_linkage_with, find_xwing_with, SubdivisionWitness};
use ladder_epp::solver::{solve_core_1v_with, solve_with, EppCertificate, PatternKind};
use ladder_epp::structure::{classify_house_free_with, classify_ladder_free_with};
use ladder_epp::trees::{am_tree_solve_with, AmTreeOutcome};
use ladder_epp::verifier::{
    check_gstar_one_ladder, check_ladder_bounds, check_no_two_linkages, check_xwing_robustness, fuzz_invariants,
    LemmaReport,
};
use ladder_epp::{Budget, EdgeSet, Error, Graph, VertexId};

const HITTING: u8 = 10;
const COUNTEREXAMPLE: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "epp", version, about = "Edge-Erdos-Posa tools for ladders")]
struct Cli {
    /// Search budget in states.
    #[arg(long, global = true, env = "EPP_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a condensed wall or G*.
    Gen {
        #[command(subcommand)]
        what: GenKind,
    },
    /// Pack `n` edge-disjoint 13-rung ladders into a wall of size 5n.
    Pack13 {
        #[arg(long)]
        n: usize,
        /// Wall size; defaults to 5n.
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        dot: bool,
    },
    /// Look for a pattern subdivision.
    Detect {
        input: PathBuf,
        #[arg(long, value_enum)]
        pattern: DetectPattern,
        /// Rung count for `--pattern ladder`.
        #[arg(long, default_value_t = 3)]
        rungs: usize,
        /// Terminals a,b,c,d; defaults to the graph's labels.
        #[arg(long, value_delimiter = ',')]
        ends: Vec<u32>,
    },
    /// Structure of a 2-connected ladder-free or house-free graph.
    Classify {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "ladder3")]
        pattern: Kind,
    },
    /// Either k edge-disjoint trees with m terminals each or a small hitting set.
    Amtree {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        terminals: Vec<u32>,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// Either k edge-disjoint expansions or an edge set meeting all of them.
    Solve {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "ladder3")]
        pattern: Kind,
        /// Treat this vertex as meeting every expansion.
        #[arg(long)]
        vertex: Option<u32>,
    },
    /// Exhaustive or sampled lemma checks.
    Verify {
        #[arg(long, value_enum)]
        lemma: Lemma,
        /// Wall size; `r` for G*; maximum vertices for fuzzing.
        #[arg(long, default_value_t = 2)]
        size: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        deletions: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
    /// DOT rendering with highlighted witnesses, certificates or edge lists.
    ExportDot {
        input: PathBuf,
        #[arg(long)]
        highlight: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Wall {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        dot: bool,
    },
    Gstar {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 7)]
        la: usize,
        #[arg(long, default_value_t = 4)]
        lc: usize,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DetectPattern {
    Ladder3,
    Ladder,
    House,
    Xwing,
    Linkage,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ladder3,
    House,
}

impl From<Kind> for PatternKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Ladder3 => PatternKind::Ladder3,
            Kind::House => PatternKind::House,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    NoTwoLinkages,
    LadderBounds,
    Xwing,
    GstarOneLadder,
    Fuzz,
}

fn read_graph(path: &PathBuf) -> anyhow::Result<(Graph, Labels)> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_graph(&bytes)?)
}

fn labelled_ends(labels: &Labels, ends: &[u32]) -> anyhow::Result<[VertexId; 4]> {
    if !ends.is_empty() {
        let [a, b, c, d] = ends else { bail!("--ends takes exactly four vertices") };
        return Ok([VertexId(*a), VertexId(*b), VertexId(*c), VertexId(*d)]);
    }
    let get = |n: &str| match labels.get(n) {
        Some(Label::One(v)) => Ok(*v),
        _ => Err(anyhow::anyhow!("no --ends given and no vertex labelled {n:?}")),
    };
    Ok([get("a")?, get("b")?, get("c")?, get("d")?])
}

fn highlight_file(path: &PathBuf) -> anyhow::Result<Vec<HighlightDoc>> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    if let Ok(w) = serde_json::from_slice::<SubdivisionWitness>(&bytes) {
        return Ok(vec![HighlightDoc::Witness(w)]);
    }
    if let Ok(c) = serde_json::from_slice::<EppCertificate>(&bytes) {
        return Ok(match c {
            EppCertificate::Packing { witnesses, .. } => witnesses.into_iter().map(HighlightDoc::Witness).collect(),
            EppCertificate::HittingSet { edges, .. } => vec![HighlightDoc::Edges(edges)],
        });
    }
    if let Ok(ws) = serde_json::from_slice::<Vec<SubdivisionWitness>>(&bytes) {
        return Ok(ws.into_iter().map(HighlightDoc::Witness).collect());
    }
    let es: EdgeSet = serde_json::from_slice(&bytes)
        .map_err(|e| Error::Parse(format!("{}: not a witness, certificate or edge list: {e}", path.display())))?;
    Ok(vec![HighlightDoc::Edges(es)])
}

enum HighlightDoc {
    Witness(SubdivisionWitness),
    Edges(EdgeSet),
}

impl HighlightDoc {
    fn as_highlight(&self) -> Highlight<'_> {
        match self {
            HighlightDoc::Witness(w) => Highlight::Witness(w),
            HighlightDoc::Edges(e) => Highlight::Edges(e),
        }
    }
}

/// Output text (newline-terminated) and exit code.
fn run(cli: Cli) -> anyhow::Result<(String, u8)> {
    let budget = Budget::new(cli.budget);
    let text = |v: Value| format!("{v}\n");
    match cli.command {
        Command::Gen { what } => {
            let (g, labels, dot) = match what {
                GenKind::Wall { size, dot } => {
                    let w = build_condensed_wall(size)?;
                    (w.graph.clone(), w.labels(), dot)
                }
                GenKind::Gstar { r, la, lc, dot } => {
                    let gx = build_counterexample(r, la, lc)?;
                    (gx.graph.clone(), gx.labels(), dot)
                }
            };
            let out = if dot { export_dot(&g, &labels, &[])? } else { export_graph(&g, &labels) + "\n" };
            Ok((out, 0))
        }
        Command::Pack13 { n, size, dot } => {
            let w = build_condensed_wall(size.unwrap_or(5 * n))?;
            let ws = pack_ladders13(&w, n)?;
            if dot {
                let hs: Vec<Highlight> = ws.iter().map(Highlight::Witness).collect();
                return Ok((export_dot(&w.graph, &w.labels(), &hs)?, 0));
            }
            Ok((text(json!({ "wall_size": w.r, "witnesses": ws })), 0))
        }
        Command::Detect { input, pattern, rungs, ends } => {
            let (g, labels) = read_graph(&input)?;
            let none = EdgeSet::new();
            let found = match pattern {
                DetectPattern::Ladder3 => find_ladder3_with(&g, &none, &budget)?.map(|w| json!(w)),
                DetectPattern::Ladder => find_ladder_with(&g, rungs, &none, &budget)?.map(|w| json!(w)),
                DetectPattern::House => find_house_with(&g, &none, &budget)?.map(|w| json!(w)),
                DetectPattern::Xwing => {
                    find_xwing_with(&g, labelled_ends(&labels, &ends)?, &none, &budget)?.map(|w| json!(w))
                }
                DetectPattern::Linkage => {
                    find_linkage_with(&g, labelled_ends(&labels, &ends)?, &none, &budget)?.map(|w| json!(w))
                }
            };
            Ok((
                text(json!({ "found": found.is_some(), "witness": found, "budget_used": budget.used() })),
                0,
            ))
        }
        Command::Classify { input, pattern } => {
            let (g, _) = read_graph(&input)?;
            let c = match pattern {
                Kind::Ladder3 => classify_ladder_free_with(&g, &budget)?,
                Kind::House => classify_house_free_with(&g, &budget)?,
            };
            Ok((text(json!({ "classification": c, "budget_used": budget.used() })), 0))
        }
        Command::Amtree { input, terminals, m, k } => {
            let (g, _) = read_graph(&input)?;
            let a: BTreeSet<VertexId> = terminals.into_iter().map(VertexId).collect();
            let o = am_tree_solve_with(&g, &a, m, k, &budget)?;
            let code = if matches!(o, AmTreeOutcome::HittingSet { .. }) { HITTING } else { 0 };
            Ok((text(json!({ "outcome": o, "budget_used": budget.used() })), code))
        }
        Command::Solve { input, k, pattern, vertex } => {
            let (g, _) = read_graph(&input)?;
            let (cert, report) = match vertex {
                Some(v) => solve_core_1v_with(&g, VertexId(v), k, pattern.into(), &budget)?,
                None => solve_with(&g, k, pattern.into(), &budget)?,
            };
            let code = if cert.is_packing() { 0 } else { HITTING };
            Ok((text(json!({ "certificate": cert, "report": report })), code))
        }
        Command::Verify { lemma, size, seed, deletions, cases } => {
            let reports: Vec<LemmaReport> = match lemma {
                Lemma::NoTwoLinkages => vec![check_no_two_linkages(&build_condensed_wall(size)?, &budget)?],
                Lemma::LadderBounds => vec![check_ladder_bounds(&build_condensed_wall(size)?, &budget)?],
                Lemma::Xwing => {
                    let d = deletions.unwrap_or((size / 2).saturating_sub(1));
                    vec![check_xwing_robustness(&build_condensed_wall(size)?, d, seed.unwrap_or(0))?]
                }
                Lemma::GstarOneLadder => vec![check_gstar_one_ladder(&build_counterexample(size, 7, 4)?, seed.unwrap_or(0))?],
                Lemma::Fuzz => {
                    let Some(seed) = seed else { bail!(Error::InvalidParams("fuzzing needs --seed".into())) };
                    fuzz_invariants(seed, cases, size)
                }
            };
            let code = if reports.iter().any(|r| r.counterexample.is_some()) { COUNTEREXAMPLE } else { 0 };
            let v = if reports.len() == 1 { json!(reports[0]) } else { json!(reports) };
            Ok((text(v), code))
        }
        Command::ExportDot { input, highlight } => {
            let (g, labels) = read_graph(&input)?;
            let mut docs = Vec::new();
            for p in &highlight {
                docs.extend(highlight_file(p)?);
            }
            let hs: Vec<Highlight> = docs.iter().map(HighlightDoc::as_highlight).collect();
            Ok((export_dot(&g, &labels, &hs)?, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok((text, code)) => {
            let written = match &out {
                Some(p) => std::fs::write(p, &text).with_context(|| format!("writing {}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(USAGE);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::BudgetExceeded { .. }) => ExitCode::from(BUDGET),
                _ => ExitCode::from(USAGE),
            }
        }
    }
}
