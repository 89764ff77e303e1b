//! The `selftest` subcommand: engine agreement over a bounded corpus.

use std::time::{Duration, Instant};

use anyhow::Result;
use clap::{Args, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;

use dle::corpus::{random_sequent, Corpus};
use dle::display::{apply_move, display_neighbors, equivalence_class};
use dle::prover::{check_derivation, prove};
use dle::refuter::{check_refutation, refute_with, Mutation, RefuterConfig};
use dle::semantics::{holds, models, OpCap};
use dle::signature::Signature;
use dle::tableau::{self, TableauConfig, Verdict};
use dle::Sequent;

use crate::{emit, resolve_signature};

/// Faults that can be injected to confirm the harness catches them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MutationArg {
    /// Let the refuter's distinct-atom axiom fire on equal atoms.
    Ax4EqualAtoms,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Corpus bound: total connective occurrences in a sequent.
    #[arg(long, default_value_t = 2)]
    max_depth: usize,
    /// Bundled signature name or path to a JSON signature.
    #[arg(long, default_value = "mixed")]
    signature: String,
    /// Corpus sequents cross-checked against the tableau and the models.
    #[arg(long, default_value_t = 300)]
    sample: usize,
    /// Seed for corpus sampling and random structural sequents.
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Largest lattice used in the soundness check; 0 skips it.
    #[arg(long, default_value_t = 3)]
    max_lattice_size: usize,
    /// Random structural sequents used in the display-class check.
    #[arg(long, default_value_t = 1000)]
    random: usize,
    #[arg(long, hide = true, value_enum)]
    mutate: Option<MutationArg>,
}

struct Row {
    name: &'static str,
    checked: usize,
    failures: usize,
    elapsed: Duration,
    example: Option<String>,
}

pub fn run(args: SelftestArgs) -> Result<u8> {
    let sig = resolve_signature(&args.signature)?;
    let atoms = ["p", "q"];
    let config = RefuterConfig { mutation: args.mutate.map(|MutationArg::Ax4EqualAtoms| Mutation::Ax4OnEqualAtoms) };
    let corpus = Corpus::new(&sig, &atoms, args.max_depth);
    let mut rng = StdRng::seed_from_u64(args.seed);
    let sample = corpus.sample(&mut rng, args.sample);

    let mut rows = vec![
        decidability(&sig, &corpus, config),
        tableau_agreement(&sig, &sample),
    ];
    if args.max_lattice_size > 0 {
        rows.push(soundness(&sig, &sample, args.max_lattice_size));
    }
    let randoms: Vec<Sequent> = (0..args.random).map(|_| random_sequent(&sig, &atoms, 4, &mut rng)).collect();
    rows.push(display_classes(&sig, &randoms));

    let mut table = format!("{:<28} {:>9} {:>9} {:>10}  status\n", "property", "checked", "failures", "time");
    for r in &rows {
        let status = if r.failures == 0 { "PASS" } else { "FAIL" };
        table += &format!("{:<28} {:>9} {:>9} {:>9.2}s  {}\n", r.name, r.checked, r.failures, r.elapsed.as_secs_f64(), status);
    }
    table += &format!("{} sequents checked\n", corpus.len());
    emit(&table)?;
    for r in rows.iter().filter(|r| r.failures > 0) {
        if let Some(e) = &r.example {
            eprintln!("{}: first failure on {}", r.name, e);
        }
    }
    if rows.iter().any(|r| r.failures > 0) {
        return Ok(1);
    }
    Ok(0)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn row(name: &'static str, checked: usize, failed: Vec<String>, elapsed: Duration) -> Row {
    Row { name, checked, failures: failed.len(), elapsed, example: failed.into_iter().next() }
}

/// Exactly one of prove and refute succeeds, and each certificate passes
/// its checker.
fn decidability(sig: &Signature, corpus: &Corpus, config: RefuterConfig) -> Row {
    let (failed, elapsed) = timed(|| {
        (0..corpus.len())
            .into_par_iter()
            .filter_map(|i| {
                let s = corpus.get(i).expect("index in range");
                let proof = prove(sig, &s).ok().flatten();
                let refutation = refute_with(sig, &s, config).ok().flatten();
                let ok = proof.is_some() != refutation.is_some()
                    && proof.as_ref().is_none_or(|t| check_derivation(sig, t))
                    && refutation.as_ref().is_none_or(|t| check_refutation(sig, t));
                (!ok).then(|| s.display(sig).to_string())
            })
            .collect::<Vec<_>>()
    });
    row("prove xor refute, checked", corpus.len(), failed, elapsed)
}

fn tableau_agreement(sig: &Signature, sample: &[Sequent]) -> Row {
    let (failed, elapsed) = timed(|| {
        sample
            .par_iter()
            .filter_map(|s| {
                let proved = prove(sig, s).ok().flatten().is_some();
                let ok = match tableau::decide(sig, s, TableauConfig::default()) {
                    Ok(d) => (d.verdict == Verdict::Valid) == proved,
                    Err(_) => false,
                };
                (!ok).then(|| s.display(sig).to_string())
            })
            .collect::<Vec<_>>()
    });
    row("tableau agrees with prover", sample.len(), failed, elapsed)
}

/// Proved sample sequents hold in every enumerated small model.
fn soundness(sig: &Signature, sample: &[Sequent], max_size: usize) -> Row {
    let cap = OpCap { per_connective: 6, ..OpCap::default() };
    let (result, elapsed) = timed(|| {
        let all = models(sig, max_size, cap);
        let proved: Vec<&Sequent> = sample.iter().filter(|s| prove(sig, s).ok().flatten().is_some()).collect();
        let failed: Vec<String> = proved
            .par_iter()
            .filter(|s| !all.iter().all(|m| holds(m, s)))
            .map(|s| s.display(sig).to_string())
            .collect();
        (proved.len(), failed)
    });
    row("proved sequents hold", result.0, result.1, elapsed)
}

/// Class size equals edge count and every display move is involutive.
fn display_classes(sig: &Signature, sequents: &[Sequent]) -> Row {
    let (failed, elapsed) = timed(|| {
        sequents
            .par_iter()
            .filter_map(|s| {
                let class = equivalence_class(sig, s);
                let involutive = class.iter().all(|m| {
                    display_neighbors(sig, m)
                        .into_iter()
                        .all(|(mv, n)| apply_move(sig, &n, &mv.inverse()).as_ref() == Some(m))
                });
                (class.len() != s.edge_count() || !involutive).then(|| s.display(sig).to_string())
            })
            .collect::<Vec<_>>()
    });
    row("display class size", sequents.len(), failed, elapsed)
}
