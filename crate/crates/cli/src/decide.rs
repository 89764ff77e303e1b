//! The `decide` subcommand.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use dle::prover::{prove_with, DerivationTree, ProverConfig};
use dle::refuter::{check_refutation, refute, RefutationTree};
use dle::semantics::{find_countermodel, Countermodel, OpCap};
use dle::signature::Signature;
use dle::syntax::{parse_sequent, Sequent};
use dle::tableau::{self, BranchStatus, Decision, TableauConfig, TableauNode, Verdict};

use crate::{emit, resolve_signature, Format};

/// Version of the JSON report layout; bumped on incompatible changes.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_VALID: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_DISAGREEMENT: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Refuter,
    Prover,
    Tableau,
    All,
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    /// Sequent text, e.g. "g(p|q) |- g(p)|g(q)".
    #[arg(conflicts_with_all = ["sequent", "file"])]
    input: Option<String>,
    /// Sequent text, as an alternative to the positional argument.
    #[arg(long, conflicts_with = "file")]
    sequent: Option<String>,
    /// File holding the sequent text.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Bundled signature name or path to a JSON signature.
    #[arg(long, default_value = "unary-fg")]
    signature: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Engine::All)]
    engine: Engine,
    /// Also run the tableau and a bounded countermodel search, and require
    /// them to agree with the calculi.
    #[arg(long)]
    cross_check: bool,
    /// Largest lattice tried when searching for a countermodel.
    #[arg(long, default_value_t = 4)]
    max_lattice_size: usize,
    /// Recursion bound for the prover.
    #[arg(long)]
    depth_limit: Option<usize>,
    /// Where to write DOT output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Everything the engines said about one sequent.
struct Report {
    proof: Option<Option<DerivationTree>>,
    refutation: Option<Option<RefutationTree>>,
    tableau: Option<Decision>,
    /// `None` when no search ran, `Some(None)` when the bounded search found nothing.
    countermodel: Option<Option<Countermodel>>,
}

pub fn run(args: DecideArgs) -> Result<u8> {
    let sig = resolve_signature(&args.signature)?;
    let text = match (&args.input, &args.sequent, &args.file) {
        (Some(t), _, _) | (_, Some(t), _) => t.clone(),
        (_, _, Some(path)) => std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        _ => bail!("no sequent given; pass it as an argument, with --sequent or with --file"),
    };
    let s = parse_sequent(&sig, text.trim()).with_context(|| format!("parsing `{}`", text.trim()))?;
    if !s.is_residual_free(&sig) {
        bail!("input sequents must not contain residual connectives");
    }

    let use_prover = matches!(args.engine, Engine::Prover | Engine::All);
    let use_refuter = matches!(args.engine, Engine::Refuter | Engine::All);
    let use_tableau = args.cross_check || matches!(args.engine, Engine::Tableau | Engine::All);

    let mut report = Report { proof: None, refutation: None, tableau: None, countermodel: None };
    if use_prover {
        let mut config = ProverConfig::default();
        if let Some(limit) = args.depth_limit {
            config.depth_limit = limit;
        }
        report.proof = Some(prove_with(&sig, &s, config)?);
    }
    if use_refuter {
        report.refutation = Some(refute(&sig, &s)?);
    }
    if use_tableau {
        let config = TableauConfig { saturate: true, ..TableauConfig::default() };
        report.tableau = Some(tableau::decide(&sig, &s, config)?);
    }

    let mut problems = disagreements(&sig, &report);
    let status = verdict(&report).unwrap_or(Verdict::Invalid);
    if args.cross_check || (status == Verdict::Invalid && problems.is_empty()) {
        let found = find_countermodel(&sig, &s, args.max_lattice_size, OpCap::default());
        if status == Verdict::Valid && found.is_some() {
            problems.push("a countermodel falsifies a sequent judged valid".into());
        }
        report.countermodel = Some(found);
    }

    if !problems.is_empty() {
        eprintln!("engine disagreement on {}:", s.display(&sig));
        for p in &problems {
            eprintln!("  {p}");
        }
        eprintln!("{}", serde_json::to_string_pretty(&to_json(&sig, &s, None, &report))?);
        return Ok(EXIT_DISAGREEMENT);
    }

    match args.format {
        Format::Text => emit(&to_text(&sig, &s, status, &report, args.max_lattice_size))?,
        Format::Json => emit(&(serde_json::to_string_pretty(&to_json(&sig, &s, Some(status), &report))? + "\n"))?,
        Format::Dot => {
            let dot = to_dot(&sig, &report).unwrap_or_else(|| "digraph empty {}\n".to_string());
            match &args.out {
                Some(path) => std::fs::write(path, dot).with_context(|| format!("writing {}", path.display()))?,
                None => emit(&dot)?,
            }
        }
    }
    Ok(match status {
        Verdict::Valid => EXIT_VALID,
        Verdict::Invalid => EXIT_INVALID,
    })
}

/// The verdict of the first engine that ran, in the order prover, refuter, tableau.
fn verdict(report: &Report) -> Option<Verdict> {
    let from_bool = |valid: bool| if valid { Verdict::Valid } else { Verdict::Invalid };
    report
        .proof
        .as_ref()
        .map(|p| from_bool(p.is_some()))
        .or_else(|| report.refutation.as_ref().map(|r| from_bool(r.is_none())))
        .or_else(|| report.tableau.as_ref().map(|d| d.verdict))
}

fn disagreements(sig: &Signature, report: &Report) -> Vec<String> {
    let mut out = Vec::new();
    if let (Some(p), Some(r)) = (&report.proof, &report.refutation) {
        match (p.is_some(), r.is_some()) {
            (true, true) => out.push("both a proof and a refutation were found".to_string()),
            (false, false) => out.push("neither a proof nor a refutation was found".to_string()),
            _ => {}
        }
    }
    if let Some(Some(r)) = &report.refutation {
        if !check_refutation(sig, r) {
            out.push("the refutation fails the checker".to_string());
        }
    }
    if let (Some(d), Some(v)) = (&report.tableau, verdict(report)) {
        if d.verdict != v {
            out.push(format!("the tableau says {:?} against {:?}", d.verdict, v));
        }
    }
    out
}

fn status_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Valid => "VALID",
        Verdict::Invalid => "INVALID",
    }
}

fn to_text(sig: &Signature, s: &Sequent, status: Verdict, report: &Report, max_size: usize) -> String {
    let mut out = format!("{}\n{}\n", status_name(status), s.display(sig));
    if let Some(Some(p)) = &report.proof {
        out.push_str("\nderivation:\n");
        out.push_str(&p.to_text(sig));
    }
    if let Some(Some(r)) = &report.refutation {
        out.push_str("\nrefutation:\n");
        out.push_str(&r.to_text(sig));
    }
    if let Some(d) = &report.tableau {
        out.push_str(&format!("\ntableau ({} nodes, strategy {}):\n", d.tree.size(), d.strategy));
        write_tableau(sig, &d.tree, 0, &mut out);
    }
    match &report.countermodel {
        Some(Some(cm)) => {
            let vals: Vec<String> = cm.valuation.iter().map(|(a, e)| format!("{a}={e}")).collect();
            out.push_str(&format!(
                "\ncountermodel: lattice {} ({} elements), valuation {}\n",
                cm.model.lattice.name,
                cm.model.lattice.size(),
                vals.join(", ")
            ));
            out.push_str(&format!("{}\n", serde_json::to_string(&cm.to_json(sig)).unwrap_or_default()));
        }
        Some(None) => out.push_str(&format!("\ncountermodel: INCONCLUSIVE up to {max_size} elements\n")),
        None => {}
    }
    out
}

fn write_tableau(sig: &Signature, n: &TableauNode, indent: usize, out: &mut String) {
    out.push_str(&"  ".repeat(indent));
    out.push_str(&n.sequent.display(sig).to_string());
    if let Some(app) = &n.rule_applied {
        out.push_str(&format!("   [{} on {}]", app.rule.name(sig), app.source.display(sig)));
    }
    if let Some(st) = n.status {
        out.push_str(match st {
            BranchStatus::Open => "   OPEN",
            BranchStatus::Closed => "   CLOSED",
            BranchStatus::Unterminated => "   UNTERMINATED",
        });
    }
    out.push('\n');
    for c in &n.children {
        write_tableau(sig, c, indent + 1, out);
    }
}

fn to_json(sig: &Signature, s: &Sequent, status: Option<Verdict>, report: &Report) -> Value {
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "sequent": s.display(sig).to_string(),
        "status": status.map(status_name),
    });
    if let Some(p) = &report.proof {
        v["proof"] = p.as_ref().map_or(Value::Null, |t| t.to_json(sig));
    }
    if let Some(r) = &report.refutation {
        v["refutation"] = r.as_ref().map_or(Value::Null, |t| t.to_json(sig));
    }
    if let Some(d) = &report.tableau {
        v["tableau"] = json!({
            "verdict": status_name(d.verdict),
            "strategy": d.strategy,
            "tree": d.tree.to_json(sig),
        });
    }
    if let Some(cm) = &report.countermodel {
        v["countermodel"] = cm.as_ref().map_or(json!("INCONCLUSIVE"), |c| c.to_json(sig));
    }
    v
}

/// DOT for the most informative tree available: the proof or refutation,
/// else the tableau.
fn to_dot(sig: &Signature, report: &Report) -> Option<String> {
    if let Some(Some(p)) = &report.proof {
        return Some(p.to_dot(sig));
    }
    if let Some(Some(r)) = &report.refutation {
        return Some(r.to_dot(sig));
    }
    report.tableau.as_ref().map(|d| d.tree.to_dot(sig))
}
