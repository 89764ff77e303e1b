//! Acceptance run: one PASS/FAIL line per criterion, with every tolerance
//! pinned below.

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;

use dle::corpus::{formula_levels, random_sequent, Corpus};
use dle::display::{apply_move, display_neighbors, equivalence_class, Direction, DisplayMove, PostulateKind};
use dle::prover::{check_derivation, prove};
use dle::refuter::{check_refutation, refute, rejected_nodes, RRule, RefutationTree};
use dle::semantics::{find_countermodel, holds_under, lattices_up_to, Elem, Model, OpCap, Valuation};
use dle::syntax::{complexity, parse_sequent, Formula, Sequent};
use dle::tableau::{decide, BranchStatus, TableauConfig, Verdict};
use dle::tree::{RuleLabel, Tree};
use dle::{Family, Signature, Tonicity};

const EXAMPLE_TIME_LIMIT: Duration = Duration::from_secs(1);
const CORPUS_TIME_LIMIT: Duration = Duration::from_secs(600);
const EXHAUSTIVE_SIZE: usize = 2;
const EXPECTED_EXHAUSTIVE_LEN: usize = 21_008;
const SAMPLE_SIZE_LIMIT: usize = 3;
const SAMPLE_COUNT: usize = 2_000;
const SAMPLE_SEED: u64 = 2024;
const RANDOM_SEQUENTS: usize = 10_000;
const RANDOM_DEPTH: usize = 4;
const RANDOM_SEED: u64 = 7;
const SOUNDNESS_MAX_LATTICE: usize = 4;
const SOUNDNESS_CAP: OpCap = OpCap { per_connective: 12, exhaustive_limit: 300_000 };
const COUNTERMODEL_MAX_LATTICE: usize = 5;
const COMPLEXITY_OF_DISTINCT_ATOMS: usize = 4;

/// Criterion clauses whose failure is expected and explained in the notes.
/// The run still prints FAIL for them; it only refuses to exit successfully
/// if anything else fails or if one of these starts passing.
const KNOWN_FAILURES: [&str; 1] = ["8b"];

struct Report {
    results: Vec<(String, bool)>,
}

impl Report {
    fn line(&mut self, id: &str, ok: bool, text: String) {
        println!("criterion {:<3} {}  {}", id, if ok { "PASS" } else { "FAIL" }, text);
        self.results.push((id.to_string(), ok));
    }
}

/// Unary `f ∈ F` and `g ∈ G`, both monotone.
fn unary_sig() -> Signature {
    Signature::new(vec![
        dle::signature::PrimitiveSpec::new("f", Family::F, &[Tonicity::Monotone]),
        dle::signature::PrimitiveSpec::new("g", Family::G, &[Tonicity::Monotone]),
    ])
    .expect("valid signature")
}

fn seq(sig: &Signature, text: &str) -> Sequent {
    parse_sequent(sig, text).expect("well-formed sequent")
}

fn criterion1(report: &mut Report) {
    let sig = unary_sig();
    let s = seq(&sig, "g(p | q) -|/ g(p) | g(q)");
    let start = Instant::now();
    let tree = refute(&sig, &s).expect("residual-free").expect("refutable");
    let elapsed = start.elapsed();
    let mut names = tree.logical_rule_names(&sig);
    names.sort();
    let mut want: Vec<String> = ["∨_R", "g_R", "g_R", "g_L", "g_L", "∨_L1", "∨_L2", "Ax3", "Ax3", "Ax4", "Ax4"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    want.sort();
    let ok = names == want && check_refutation(&sig, &tree) && elapsed < EXAMPLE_TIME_LIMIT;
    report.line(
        "1",
        ok,
        format!("refutation of g(p∨q) ⊬ g(p)∨g(q): rules {{{}}}, checked, {:?} (limit {:?})", names.join(", "), elapsed, EXAMPLE_TIME_LIMIT),
    );
}

fn leaf(sig: &Signature, text: &str, rule: RRule) -> RefutationTree {
    Tree::leaf(seq(sig, text), rule)
}

fn node(sig: &Signature, text: &str, rule: RRule, premises: Vec<RefutationTree>) -> RefutationTree {
    Tree::new(seq(sig, text), rule, premises)
}

fn criterion2(report: &mut Report) {
    let sig = unary_sig();
    let f = sig.lookup("f").unwrap();
    let g = sig.lookup("g").unwrap();

    let left = node(
        &sig,
        "g(p) -|/ ~g(p & q)",
        RRule::GL { g, j: 0 },
        vec![
            node(&sig, "^T -|/ p & q", RRule::AndR2, vec![leaf(&sig, "^T -|/ q", RRule::Ax3)]),
            node(&sig, "p -|/ p & q", RRule::AndR2, vec![leaf(&sig, "p -|/ q", RRule::Ax4)]),
        ],
    );
    let right = node(
        &sig,
        "g(q) -|/ ~g(p & q)",
        RRule::GL { g, j: 0 },
        vec![
            node(&sig, "^T -|/ p & q", RRule::AndR1, vec![leaf(&sig, "^T -|/ p", RRule::Ax3)]),
            node(&sig, "q -|/ p & q", RRule::AndR1, vec![leaf(&sig, "q -|/ p", RRule::Ax4)]),
        ],
    );
    let and_tree = node(
        &sig,
        "g(p) & g(q) -|/ g(p & q)",
        RRule::GR(g),
        vec![node(&sig, "g(p) & g(q) -|/ ~g(p & q)", RRule::AndL { i: vec![], j: vec![] }, vec![left, right])],
    );
    let and_rejected: Vec<String> = rejected_nodes(&sig, &and_tree).iter().map(|n| n.rule.name(&sig)).collect();

    let mv = DisplayMove { kind: PostulateKind::FRes, conn: f, coordinate: 0, direction: Direction::Forward };
    let displayed = seq(&sig, "^f(p) -|/ f(p)");
    let residual = apply_move(&sig, &displayed, &mv).expect("move applies");
    let residual_conn = sig.residual_id(f, 0);
    let f_tree = node(
        &sig,
        "f(p) -|/ f(p)",
        RRule::FL(f),
        vec![Tree::new(
            displayed,
            RRule::Display(mv),
            vec![Tree::new(residual, RRule::AtomG(residual_conn), vec![leaf(&sig, "^T -|/ f(p)", RRule::TopF(f))])],
        )],
    );
    let f_rejected: Vec<String> = rejected_nodes(&sig, &f_tree).iter().map(|n| n.rule.name(&sig)).collect();

    let proofs: Vec<bool> = ["g(p) & g(q) |- g(p & q)", "f(p) |- f(p)"]
        .iter()
        .map(|t| match prove(&sig, &seq(&sig, t)) {
            Ok(Some(d)) => check_derivation(&sig, &d),
            _ => false,
        })
        .collect();

    let ok = !check_refutation(&sig, &and_tree)
        && and_rejected == ["∧_L"]
        && !check_refutation(&sig, &f_tree)
        && f_rejected == ["pǧ"]
        && proofs.iter().all(|&b| b);
    report.line(
        "2",
        ok,
        format!(
            "unsound trees rejected at [{}] and [{}]; checked derivations of g(p)∧g(q) ⊢ g(p∧q) and f(p) ⊢ f(p): {:?}",
            and_rejected.join(", "),
            f_rejected.join(", "),
            proofs
        ),
    );
}

fn criterion3(report: &mut Report) {
    let sig = unary_sig();
    let s = seq(&sig, "g(p | q) |- g(p) | g(q)");
    let start = Instant::now();
    let config = TableauConfig { saturate: true, ..TableauConfig::default() };
    let d = decide(&sig, &s, config).expect("decidable");
    let elapsed = start.elapsed();
    let leaves = d.tree.terminal_sequents(&sig);
    let wanted = ["q |- p", "^T |- p", "p |- q", "^T |- q"];
    let missing: Vec<&str> = wanted.iter().copied().filter(|w| !leaves.contains(&seq(&sig, w))).collect();
    let all_open = d.tree.branches().iter().all(|(_, st)| *st == BranchStatus::Open);
    let ok = d.verdict == Verdict::Invalid && d.tree.is_terminated() && all_open && missing.is_empty() && elapsed < EXAMPLE_TIME_LIMIT;
    report.line(
        "3",
        ok,
        format!(
            "tableau for g(p∨q) ⊢ g(p)∨g(q): {:?}, terminated, {} branches all open, leaves include {:?} (missing {:?}), {:?} (limit {:?})",
            d.verdict,
            d.tree.branches().len(),
            wanted,
            missing,
            elapsed,
            EXAMPLE_TIME_LIMIT
        ),
    );
}

/// Returns the proved sequents of the exhaustive corpus.
fn criterion4(report: &mut Report) -> Vec<Sequent> {
    let sig = dle::signature::bundled::mixed();
    let corpus = Corpus::new(&sig, &["p", "q"], EXHAUSTIVE_SIZE);
    let start = Instant::now();
    let outcomes: Vec<(Sequent, bool, bool)> = (0..corpus.len())
        .into_par_iter()
        .map(|i| {
            let s = corpus.get(i).expect("in range");
            let proved = prove(&sig, &s).map(|t| t.is_some()).unwrap_or(false);
            let refuted = refute(&sig, &s).map(|t| t.is_some()).unwrap_or(false);
            (s, proved, refuted)
        })
        .collect();
    let elapsed = start.elapsed();
    let bad = outcomes.iter().filter(|(_, p, r)| p == r).count();
    let proved: Vec<Sequent> = outcomes.iter().filter(|(_, p, _)| *p).map(|(s, _, _)| s.clone()).collect();
    let ok = corpus.len() == EXPECTED_EXHAUSTIVE_LEN && bad == 0 && elapsed <= CORPUS_TIME_LIMIT;
    report.line(
        "4",
        ok,
        format!(
            "{} sequents (expected {}), {} proved, {} refuted, {} with both or neither, {:?} (limit {:?})",
            corpus.len(),
            EXPECTED_EXHAUSTIVE_LEN,
            proved.len(),
            corpus.len() - proved.len(),
            bad,
            elapsed,
            CORPUS_TIME_LIMIT
        ),
    );
    proved
}

struct SampleRun {
    sequent: Sequent,
    proved: bool,
    verdict: Option<Verdict>,
    revisits: usize,
    steps: usize,
    complexity_violations: usize,
    count_violations: usize,
    count_violation_rules: Vec<String>,
    refuter_steps: usize,
    refuter_violations: usize,
}

fn run_sample(sig: &Signature, s: Sequent) -> SampleRun {
    let proved = prove(sig, &s).map(|t| t.is_some()).unwrap_or(false);
    let decision = decide(sig, &s, TableauConfig::default()).ok();
    let mut run = SampleRun {
        verdict: decision.as_ref().map(|d| d.verdict),
        sequent: s.clone(),
        proved,
        revisits: 0,
        steps: 0,
        complexity_violations: 0,
        count_violations: 0,
        count_violation_rules: Vec::new(),
        refuter_steps: 0,
        refuter_violations: 0,
    };
    if let Some(d) = &decision {
        for (branch, _) in d.tree.branches() {
            let distinct: HashSet<&Sequent> = branch.iter().collect();
            run.revisits += branch.len() - distinct.len();
        }
        for (rule, source, produced) in d.tree.steps() {
            if rule.is_residuation() {
                continue;
            }
            run.steps += 1;
            if complexity(&produced) >= complexity(&source) {
                run.complexity_violations += 1;
            }
            if produced.connective_count() >= source.connective_count() {
                run.count_violations += 1;
                run.count_violation_rules.push(rule.name(sig));
            }
        }
    }
    if let Ok(Some(t)) = refute(sig, &s) {
        for n in t.nodes() {
            if n.rule.as_display().is_some() {
                continue;
            }
            for p in &n.premises {
                run.refuter_steps += 1;
                if complexity(&p.conclusion) >= complexity(&n.conclusion) {
                    run.refuter_violations += 1;
                }
            }
        }
    }
    run
}

fn criteria5and8(report: &mut Report) {
    let sig = dle::signature::bundled::mixed();
    let corpus = Corpus::new(&sig, &["p", "q"], SAMPLE_SIZE_LIMIT);
    let mut rng = StdRng::seed_from_u64(SAMPLE_SEED);
    let sample = corpus.sample(&mut rng, SAMPLE_COUNT);
    let start = Instant::now();
    let runs: Vec<SampleRun> = sample.into_par_iter().map(|s| run_sample(&sig, s)).collect();
    let elapsed = start.elapsed();

    let undecided = runs.iter().filter(|r| r.verdict.is_none()).count();
    let disagreements: Vec<&SampleRun> =
        runs.iter().filter(|r| r.verdict.is_none_or(|v| (v == Verdict::Valid) != r.proved)).collect();
    let valid = runs.iter().filter(|r| r.verdict == Some(Verdict::Valid)).count();
    for r in disagreements.iter().take(5) {
        println!("    disagreement: {} proved={} tableau={:?}", r.sequent.display(&sig), r.proved, r.verdict);
    }
    report.line(
        "5",
        runs.len() == SAMPLE_COUNT && disagreements.is_empty(),
        format!(
            "{} of {} sampled sequents (seed {}), {} VALID, {} budget failures, {} disagreements, {:?}",
            runs.len(),
            corpus.len(),
            SAMPLE_SEED,
            valid,
            undecided,
            disagreements.len(),
            elapsed
        ),
    );

    let revisits: usize = runs.iter().map(|r| r.revisits).sum();
    let steps: usize = runs.iter().map(|r| r.steps).sum();
    let complexity_violations: usize = runs.iter().map(|r| r.complexity_violations).sum();
    let count_violations: usize = runs.iter().map(|r| r.count_violations).sum();
    let mut count_rules: Vec<String> = runs.iter().flat_map(|r| r.count_violation_rules.iter().cloned()).collect();
    count_rules.sort();
    count_rules.dedup();
    let refuter_steps: usize = runs.iter().map(|r| r.refuter_steps).sum();
    let refuter_violations: usize = runs.iter().map(|r| r.refuter_violations).sum();
    let sig_plain = unary_sig();
    let spot = complexity(&seq(&sig_plain, "p |- q"));

    report.line(
        "8a",
        revisits == 0 && complexity_violations == 0 && refuter_violations == 0 && spot == COMPLEXITY_OF_DISTINCT_ATOMS,
        format!(
            "no branch revisits ({}); {} non-residuation tableau steps, {} without complexity decrease; {} refuter logical steps, {} without decrease; complexity(p ⊢ q) = {} (expected {})",
            revisits, steps, complexity_violations, refuter_steps, refuter_violations, spot, COMPLEXITY_OF_DISTINCT_ATOMS
        ),
    );
    report.line(
        "8b",
        count_violations == 0,
        format!(
            "literal connective count (logical + structural) strictly decreases on non-residuation tableau steps: {} of {} steps keep it, all from rules {{{}}}",
            count_violations,
            steps,
            count_rules.join(", ")
        ),
    );
}

fn criterion6(report: &mut Report) {
    let sig = dle::signature::bundled::mixed();
    let mut rng = StdRng::seed_from_u64(RANDOM_SEED);
    let sequents: Vec<Sequent> = (0..RANDOM_SEQUENTS).map(|_| random_sequent(&sig, &["p", "q"], RANDOM_DEPTH, &mut rng)).collect();
    let start = Instant::now();
    let failures: Vec<(usize, usize, bool)> = sequents
        .par_iter()
        .filter_map(|s| {
            let class = equivalence_class(&sig, s);
            let involutive = class.iter().all(|m| {
                display_neighbors(&sig, m)
                    .into_iter()
                    .all(|(mv, n)| apply_move(&sig, &n, &mv.inverse()).as_ref() == Some(m))
            });
            if class.len() == s.edge_count() && involutive {
                None
            } else {
                Some((class.len(), s.edge_count(), involutive))
            }
        })
        .collect();
    let max_edges = sequents.iter().map(Sequent::edge_count).max().unwrap_or(0);
    report.line(
        "6",
        failures.is_empty(),
        format!(
            "{} random sequents (depth ≤ {}, seed {}, up to {} edges): {} with class size ≠ edge count or a non-involutive move, {:?}",
            RANDOM_SEQUENTS,
            RANDOM_DEPTH,
            RANDOM_SEED,
            max_edges,
            failures.len(),
            start.elapsed()
        ),
    );
}

/// Formula values under every valuation of `p`, `q`, indexed by formula id.
fn formula_table(model: &Model, formulas: &[Formula]) -> Vec<Vec<Elem>> {
    let n = model.lattice.size() as Elem;
    let mut out = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let v: Valuation = [("p".to_string(), p), ("q".to_string(), q)].into_iter().collect();
            out.push(formulas.iter().map(|f| dle::semantics::eval_formula(model, &v, f)).collect());
        }
    }
    out
}

fn criterion7(report: &mut Report, proved: &[Sequent]) {
    let sig = dle::signature::bundled::mixed();
    let start = Instant::now();
    let formulas: Vec<Formula> = formula_levels(&sig, &["p", "q"], EXHAUSTIVE_SIZE).into_iter().flatten().collect();
    let index: HashMap<&Formula, usize> = formulas.iter().enumerate().map(|(k, f)| (f, k)).collect();
    let pairs: Vec<(usize, usize)> = proved
        .iter()
        .map(|s| {
            let phi = s.precedent.as_formula().expect("formula sequent");
            let psi = s.succedent.as_formula().expect("formula sequent");
            (index[phi], index[psi])
        })
        .collect();

    let lattices = lattices_up_to(SOUNDNESS_MAX_LATTICE);
    let mut model_count = 0;
    let mut violations = 0usize;
    for lat in lattices {
        let lat = Arc::new(lat);
        let models: Vec<Model> = models_on_lattice(&sig, &lat);
        model_count += models.len();
        violations += models
            .par_iter()
            .map(|m| {
                let table = formula_table(m, &formulas);
                pairs
                    .iter()
                    .filter(|&&(a, b)| table.iter().any(|row| !m.lattice.le(row[a], row[b])))
                    .count()
            })
            .sum::<usize>();
    }
    report.line(
        "7a",
        violations == 0 && model_count > 0,
        format!(
            "{} proved sequents hold in all {} models (lattices ≤ {}, ≤ {} operations per connective), {} violations, {:?}",
            proved.len(),
            model_count,
            SOUNDNESS_MAX_LATTICE,
            SOUNDNESS_CAP.per_connective,
            violations,
            start.elapsed()
        ),
    );

    let unary = unary_sig();
    let named = ["p |- q", "g(p | q) |- g(p) | g(q)", "f(p) & f(q) |- f(p & q)"];
    let mut parts = Vec::new();
    let mut ok = true;
    for text in named {
        let s = seq(&unary, text);
        match find_countermodel(&unary, &s, COUNTERMODEL_MAX_LATTICE, OpCap::default()) {
            Some(cm) => {
                let genuine = !holds_under(&cm.model, &cm.valuation, &s);
                ok &= genuine;
                if text == "p |- q" {
                    ok &= cm.model.lattice.name == "chain-2" && cm.valuation["p"] == 1 && cm.valuation["q"] == 0;
                }
                parts.push(format!("{}: {} {:?}", text, cm.model.lattice.name, cm.valuation));
            }
            None => {
                ok = false;
                parts.push(format!("{}: none", text));
            }
        }
    }
    report.line("7b", ok, format!("countermodels within size {}: {}", COUNTERMODEL_MAX_LATTICE, parts.join("; ")));
}

/// All models of the signature on one lattice, within the soundness cap.
fn models_on_lattice(sig: &Signature, lat: &Arc<dle::semantics::Lattice>) -> Vec<Model> {
    let choices: Vec<Vec<dle::semantics::Operation>> = (0..sig.primitive_count())
        .map(|c| dle::semantics::normal_operations(lat, sig.family(c), sig.order_type(c), SOUNDNESS_CAP))
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let ops = pick.iter().enumerate().map(|(c, &k)| choices[c][k].clone()).collect();
        out.push(Model::new(sig, lat.clone(), ops).expect("normal operations"));
        let mut c = 0;
        loop {
            if c == pick.len() {
                return out;
            }
            pick[c] += 1;
            if pick[c] < choices[c].len() {
                break;
            }
            pick[c] = 0;
            c += 1;
        }
    }
}

fn main() -> ExitCode {
    let mut report = Report { results: Vec::new() };
    criterion1(&mut report);
    criterion2(&mut report);
    criterion3(&mut report);
    let proved = criterion4(&mut report);
    criteria5and8(&mut report);
    criterion6(&mut report);
    criterion7(&mut report, &proved);

    let unexpected: Vec<&String> = report
        .results
        .iter()
        .filter(|(id, ok)| *ok == KNOWN_FAILURES.contains(&id.as_str()))
        .map(|(id, _)| id)
        .collect();
    let failed: Vec<&String> = report.results.iter().filter(|(_, ok)| !ok).map(|(id, _)| id).collect();
    println!("summary: {} clauses, failing {:?}, expected failures {:?}", report.results.len(), failed, KNOWN_FAILURES);
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for {:?}", unexpected);
        ExitCode::FAILURE
    }
}
