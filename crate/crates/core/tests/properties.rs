//! Randomised invariants across the engines.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use dle::corpus::{random_formula, random_sequent};
use dle::display::{apply_move, display_neighbors, equivalence_class};
use dle::prover::{check_derivation, prove};
use dle::refuter::{check_refutation, refute};
use dle::semantics::{holds, models, OpCap};
use dle::signature::bundled;
use dle::syntax::{is_branching, parse_sequent, signed_tree, NodeLabel, Sign, SignedNode};
use dle::tableau::{decide, TableauConfig, Verdict};
use dle::{Family, Sequent, Signature};

const ATOMS: [&str; 2] = ["p", "q"];

fn signature(k: usize) -> Signature {
    bundled::by_name(bundled::NAMES[k % bundled::NAMES.len()]).unwrap()
}

fn formula_sequent(sig: &Signature, seed: u64, budget: usize) -> Sequent {
    let mut rng = StdRng::seed_from_u64(seed);
    let phi = random_formula(sig, &ATOMS, budget, &mut rng);
    let psi = random_formula(sig, &ATOMS, budget, &mut rng);
    Sequent::formulas(phi, psi)
}

fn structural_sequent(sig: &Signature, seed: u64, depth: usize) -> Sequent {
    random_sequent(sig, &ATOMS, depth, &mut StdRng::seed_from_u64(seed))
}

/// Every node paired with the labels and signs of its strict ancestors.
fn nodes_with_ancestors<'a>(n: &'a SignedNode, above: &mut Vec<&'a SignedNode>, out: &mut Vec<(&'a SignedNode, Vec<&'a SignedNode>)>) {
    out.push((n, above.clone()));
    above.push(n);
    for c in &n.children {
        nodes_with_ancestors(c, above, out);
    }
    above.pop();
}

fn brute_force_branching(sig: &Signature, s: &Sequent) -> bool {
    let guard = |n: &SignedNode| match n.label {
        NodeLabel::Op(c) | NodeLabel::Struct(c) => {
            sig.is_primitive(c)
                && ((sig.family(c) == Family::F && n.sign == Sign::Plus)
                    || (sig.family(c) == Family::G && n.sign == Sign::Minus))
        }
        _ => false,
    };
    [signed_tree(sig, &s.precedent, Sign::Plus), signed_tree(sig, &s.succedent, Sign::Minus)].iter().any(|root| {
        let mut all = Vec::new();
        nodes_with_ancestors(root, &mut Vec::new(), &mut all);
        all.into_iter().any(|(n, above)| {
            let branching = matches!((&n.label, n.sign), (NodeLabel::Or, Sign::Plus) | (NodeLabel::And, Sign::Minus));
            branching && above.into_iter().all(guard)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(k in 0usize..4, seed: u64, depth in 0usize..4) {
        let sig = signature(k);
        let s = structural_sequent(&sig, seed, depth);
        let text = s.display(&sig).to_string();
        prop_assert_eq!(parse_sequent(&sig, &text).unwrap(), s);
    }

    #[test]
    fn branching_matches_brute_force(k in 0usize..4, seed: u64, depth in 0usize..4) {
        let sig = signature(k);
        let s = structural_sequent(&sig, seed, depth);
        prop_assert_eq!(is_branching(&sig, &s), brute_force_branching(&sig, &s));
    }

    #[test]
    fn display_class_size_is_edge_count(k in 0usize..4, seed: u64, depth in 0usize..4) {
        let sig = signature(k);
        let s = structural_sequent(&sig, seed, depth);
        let class = equivalence_class(&sig, &s);
        prop_assert_eq!(class.len(), s.edge_count());
        for m in &class {
            for (mv, n) in display_neighbors(&sig, m) {
                prop_assert_eq!(apply_move(&sig, &n, &mv.inverse()), Some(m.clone()));
            }
        }
    }

    #[test]
    fn exactly_one_checked_certificate(k in 0usize..4, seed: u64, budget in 0usize..5) {
        let sig = signature(k);
        let s = formula_sequent(&sig, seed, budget);
        let proof = prove(&sig, &s).unwrap();
        let refutation = refute(&sig, &s).unwrap();
        prop_assert!(proof.is_some() != refutation.is_some());
        if let Some(d) = &proof {
            prop_assert!(check_derivation(&sig, d));
        }
        if let Some(r) = &refutation {
            prop_assert!(check_refutation(&sig, r));
        }
    }

    #[test]
    fn tableau_agrees_with_prover(k in 0usize..4, seed: u64, budget in 0usize..4) {
        let sig = signature(k);
        let s = formula_sequent(&sig, seed, budget);
        let proved = prove(&sig, &s).unwrap().is_some();
        let d = decide(&sig, &s, TableauConfig::default()).unwrap();
        prop_assert_eq!(d.verdict == Verdict::Valid, proved);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn proved_sequents_hold_in_small_models(seed: u64, budget in 0usize..4) {
        let sig = bundled::unary_fg();
        let s = formula_sequent(&sig, seed, budget);
        if prove(&sig, &s).unwrap().is_some() {
            for m in models(&sig, 3, OpCap { per_connective: 6, ..OpCap::default() }) {
                prop_assert!(holds(&m, &s));
            }
        }
    }
}
