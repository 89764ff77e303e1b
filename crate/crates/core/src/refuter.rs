//! The refutation calculus: backward refutation search and a forward checker
//! for refutation trees.
//!
//! Search follows the case analysis of the refutation-completeness argument.
//! Every goal is a residual-free antisequent. A constant in a position that
//! makes the sequent derivable ends the search. Otherwise the invertible
//! lattice rules (`∧_Ri` on a displayable conjunction in succedent position,
//! `∨_Li` dually), then `f_L`, `g_R`, `⊤_L` and `⊥_R` are applied through
//! display steps. When none applies, the sequent is non-branching and its two
//! roots determine a single remaining rule.

use std::collections::HashMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::display::DisplayMove;
use crate::prover::display_related;
use crate::signature::{ConnId, Family, Signature, Tonicity};
use crate::syntax::{
    complexity, leaf_positions, positions, structure_is_branching, substitute_unchecked, Formula, Polarity, Position,
    Sequent, Side, Sign, Structure, Turnstile,
};
use crate::tree::{Displayed, RuleLabel, Tree};

/// Rules of the refutation calculus. Coordinates are 0-based internally and
/// printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RRule {
    Ax1,
    Ax2,
    Ax3,
    Ax4,
    Display(DisplayMove),
    /// `f̂⊥̌`
    FBot(ConnId),
    /// `⊤̂ǧ`
    TopG(ConnId),
    /// `f̂p`
    FAtom(ConnId),
    /// `pǧ`
    AtomG(ConnId),
    /// `f̂ǧ`
    FG(ConnId, ConnId),
    /// `g⊥̌`
    GBot(ConnId),
    /// `gp`
    GAtom(ConnId),
    /// `pf`
    AtomF(ConnId),
    /// `⊤̂f`
    TopF(ConnId),
    FL(ConnId),
    /// `gf`
    GF(ConnId, ConnId),
    GR(ConnId),
    FR { f: ConnId, j: usize },
    GL { g: ConnId, j: usize },
    /// `f_R≠` with the structural and the operational connective.
    FRNeq(ConnId, ConnId),
    /// `g_L≠` with the operational and the structural connective.
    GLNeq(ConnId, ConnId),
    TopL,
    OrL1,
    OrL2,
    AndR1,
    AndR2,
    BotR,
    /// `∧_L` with the abstracted occurrence families, as positions in the succedent.
    AndL { i: Vec<Position>, j: Vec<Position> },
    /// `∨_R` with the abstracted occurrence families, as positions in the precedent.
    OrR { i: Vec<Position>, j: Vec<Position> },
}

/// Auxiliary data recorded with a rule instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aux {
    None,
    Coordinate(usize),
    Families { i: Vec<Position>, j: Vec<Position> },
}

impl RRule {
    pub fn aux(&self) -> Aux {
        match self {
            RRule::FR { j, .. } | RRule::GL { j, .. } => Aux::Coordinate(*j),
            RRule::AndL { i, j } | RRule::OrR { i, j } => Aux::Families { i: i.clone(), j: j.clone() },
            _ => Aux::None,
        }
    }

    fn connectives(&self) -> Vec<ConnId> {
        match self {
            RRule::FBot(c)
            | RRule::TopG(c)
            | RRule::FAtom(c)
            | RRule::AtomG(c)
            | RRule::GBot(c)
            | RRule::GAtom(c)
            | RRule::AtomF(c)
            | RRule::TopF(c)
            | RRule::FL(c)
            | RRule::GR(c)
            | RRule::FR { f: c, .. }
            | RRule::GL { g: c, .. } => vec![*c],
            RRule::FG(a, b) | RRule::GF(a, b) | RRule::FRNeq(a, b) | RRule::GLNeq(a, b) => vec![*a, *b],
            _ => Vec::new(),
        }
    }
}

fn format_positions(ps: &[Position]) -> String {
    let items: Vec<String> = ps
        .iter()
        .map(|p| p.path.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join("."))
        .map(|s| if s.is_empty() { "root".to_string() } else { s })
        .collect();
    format!("{{{}}}", items.join(", "))
}

impl RuleLabel for RRule {
    fn name(&self, sig: &Signature) -> String {
        match self {
            RRule::Ax1 => "Ax1".into(),
            RRule::Ax2 => "Ax2".into(),
            RRule::Ax3 => "Ax3".into(),
            RRule::Ax4 => "Ax4".into(),
            RRule::Display(mv) => mv.tag(sig),
            RRule::FBot(_) => "f̂⊥̌".into(),
            RRule::TopG(_) => "⊤̂ǧ".into(),
            RRule::FAtom(_) => "f̂p".into(),
            RRule::AtomG(_) => "pǧ".into(),
            RRule::FG(..) => "f̂ǧ".into(),
            RRule::GBot(_) => "g⊥̌".into(),
            RRule::GAtom(_) => "gp".into(),
            RRule::AtomF(_) => "pf".into(),
            RRule::TopF(_) => "⊤̂f".into(),
            RRule::FL(_) => "f_L".into(),
            RRule::GF(..) => "gf".into(),
            RRule::GR(_) => "g_R".into(),
            RRule::FR { .. } => "f_R".into(),
            RRule::GL { .. } => "g_L".into(),
            RRule::FRNeq(..) => "f_R≠".into(),
            RRule::GLNeq(..) => "g_L≠".into(),
            RRule::TopL => "⊤_L".into(),
            RRule::OrL1 => "∨_L1".into(),
            RRule::OrL2 => "∨_L2".into(),
            RRule::AndR1 => "∧_R1".into(),
            RRule::AndR2 => "∧_R2".into(),
            RRule::BotR => "⊥_R".into(),
            RRule::AndL { .. } => "∧_L".into(),
            RRule::OrR { .. } => "∨_R".into(),
        }
    }

    fn detail(&self, sig: &Signature) -> String {
        let base = self.name(sig);
        match self {
            RRule::Display(mv) => mv.label(sig),
            RRule::FR { f, j } | RRule::GL { g: f, j } => format!("{}[{}, j={}]", base, sig.name(*f), j + 1),
            RRule::AndL { i, j } | RRule::OrR { i, j } => {
                format!("{}[I={}, J={}]", base, format_positions(i), format_positions(j))
            }
            _ => {
                let names: Vec<&str> = self.connectives().into_iter().map(|c| sig.name(c)).collect();
                if names.is_empty() {
                    base
                } else {
                    format!("{}[{}]", base, names.join(", "))
                }
            }
        }
    }

    fn display(mv: DisplayMove) -> Self {
        RRule::Display(mv)
    }

    fn as_display(&self) -> Option<DisplayMove> {
        match self {
            RRule::Display(mv) => Some(*mv),
            _ => None,
        }
    }

    fn aux_json(&self, sig: &Signature) -> Option<Value> {
        let paths = |ps: &[Position]| ps.iter().map(|p| p.path.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>();
        match self {
            RRule::FR { f, j } | RRule::GL { g: f, j } => Some(json!({"connective": sig.name(*f), "j": j + 1})),
            RRule::AndL { i, j } | RRule::OrR { i, j } => Some(json!({"I": paths(i), "J": paths(j)})),
            _ => {
                let names: Vec<&str> = self.connectives().into_iter().map(|c| sig.name(c)).collect();
                if names.is_empty() {
                    None
                } else {
                    Some(json!({ "connectives": names }))
                }
            }
        }
    }
}

pub type RefutationTree = Tree<RRule>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RefuteError {
    #[error("the sequent contains residual connectives")]
    Residuals,
    #[error("the sequent is ill-typed: {0}")]
    Type(String),
}

/// Deliberate faults, used to check that the self-test harness notices a
/// broken engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Lets `Ax4` fire on two occurrences of the same atom.
    Ax4OnEqualAtoms,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RefuterConfig {
    pub mutation: Option<Mutation>,
}

/// Searches for a refutation of `s`; a `⊢` input is read as the corresponding `⊬`.
pub fn refute(sig: &Signature, s: &Sequent) -> Result<Option<RefutationTree>, RefuteError> {
    refute_with(sig, s, RefuterConfig::default())
}

pub fn refute_with(sig: &Signature, s: &Sequent, config: RefuterConfig) -> Result<Option<RefutationTree>, RefuteError> {
    s.check_type(sig).map_err(|e| RefuteError::Type(e.to_string()))?;
    if !s.is_residual_free(sig) {
        return Err(RefuteError::Residuals);
    }
    let goal = s.with_kind(Turnstile::Refutable);
    let mut search = Search { sig, config, memo: HashMap::new() };
    Ok(search.run(&goal))
}

/// Whether `s` is refutable, without keeping the tree.
pub fn is_refutable(sig: &Signature, s: &Sequent) -> Result<bool, RefuteError> {
    Ok(refute(sig, s)?.is_some())
}

struct Search<'a> {
    sig: &'a Signature,
    config: RefuterConfig,
    memo: HashMap<Sequent, Option<RefutationTree>>,
}

/// `a ⊬^ε b` for the given tonicity.
fn anti(a: Structure, b: Structure, t: Tonicity) -> Sequent {
    if t.is_monotone() {
        Sequent::refutable(a, b)
    } else {
        Sequent::refutable(b, a)
    }
}

/// Premises `Υi ⊬^ε(i) ⊥̌^ε(i)` of the rules for a structural `f̂`. In an
/// antitone coordinate this reads `⊤̂ ⊬ Υi`.
pub fn f_bottom_premises(sig: &Signature, f: ConnId, args: &[Structure]) -> Vec<Sequent> {
    args.iter()
        .enumerate()
        .map(|(i, u)| match sig.tonicity(f, i) {
            Tonicity::Monotone => Sequent::refutable(u.clone(), Structure::BotCheck),
            Tonicity::Antitone => Sequent::refutable(Structure::TopHat, u.clone()),
        })
        .collect()
}

/// Premises `⊤̂^ε(i) ⊬^ε(i) Υi` of the rules for a structural `ǧ`. In an
/// antitone coordinate this reads `Υi ⊬ ⊥̌`.
pub fn g_top_premises(sig: &Signature, g: ConnId, args: &[Structure]) -> Vec<Sequent> {
    args.iter()
        .enumerate()
        .map(|(i, u)| match sig.tonicity(g, i) {
            Tonicity::Monotone => Sequent::refutable(Structure::TopHat, u.clone()),
            Tonicity::Antitone => Sequent::refutable(u.clone(), Structure::BotCheck),
        })
        .collect()
}

/// Conjunction leaves in precedent polarity and disjunction leaves in
/// succedent polarity inside one side of a sequent.
pub fn occurrence_families(sig: &Signature, s: &Sequent, side: Side) -> (Vec<Position>, Vec<Position>) {
    let mut conj = Vec::new();
    let mut disj = Vec::new();
    for (pos, f) in leaf_positions(sig, s) {
        if pos.side != side {
            continue;
        }
        match (pos.polarity, f) {
            (Polarity::Pre, Formula::And(..)) => conj.push(pos),
            (Polarity::Suc, Formula::Or(..)) => disj.push(pos),
            _ => {}
        }
    }
    (conj, disj)
}

fn operands(s: &Sequent, pos: &Position) -> (Formula, Formula) {
    match s.at(pos) {
        Some(Structure::Leaf(Formula::And(a, b))) | Some(Structure::Leaf(Formula::Or(a, b))) => {
            ((**a).clone(), (**b).clone())
        }
        _ => panic!("occurrence is not a binary lattice formula"),
    }
}

/// Premises of `∧_L` (when `side` is the succedent) or `∨_R` (precedent) in
/// schema order: the two operand premises, then the `A_i`, `B_i`, `C_j`, `D_j`
/// substitution instances.
pub fn lattice_context_premises(s: &Sequent, side: Side, i: &[Position], j: &[Position]) -> Vec<Sequent> {
    let principal = match side {
        Side::Succedent => &s.precedent,
        Side::Precedent => &s.succedent,
    };
    let (a, b) = match principal {
        Structure::Leaf(Formula::And(a, b)) | Structure::Leaf(Formula::Or(a, b)) => ((**a).clone(), (**b).clone()),
        _ => panic!("principal side is not a binary lattice formula"),
    };
    let mut out = Vec::new();
    for part in [a, b] {
        let mut p = s.clone();
        match side {
            Side::Succedent => p.precedent = Structure::Leaf(part),
            Side::Precedent => p.succedent = Structure::Leaf(part),
        }
        out.push(p);
    }
    for family in [i, j] {
        for pick in 0..2 {
            for pos in family {
                let (x, y) = operands(s, pos);
                let part = if pick == 0 { x } else { y };
                out.push(substitute_unchecked(s, pos, Structure::Leaf(part)));
            }
        }
    }
    out
}

impl Search<'_> {
    fn run(&mut self, s: &Sequent) -> Option<RefutationTree> {
        if let Some(hit) = self.memo.get(s) {
            return hit.clone();
        }
        let result = self.search(s);
        self.memo.insert(s.clone(), result.clone());
        result
    }

    fn all(&mut self, goals: Vec<Sequent>) -> Option<Vec<RefutationTree>> {
        goals.iter().map(|g| self.run(g)).collect()
    }

    fn search(&mut self, s: &Sequent) -> Option<RefutationTree> {
        let sig = self.sig;
        let leaves: Vec<_> = leaf_positions(sig, s).into_iter().map(|(p, f)| (p, f.clone())).collect();

        for (pos, f) in &leaves {
            match (pos.polarity, f) {
                (Polarity::Pre, Formula::Bot) | (Polarity::Suc, Formula::Top) => return None,
                _ => {}
            }
        }

        for (pos, f) in &leaves {
            let options = match (pos.polarity, f) {
                (Polarity::Suc, Formula::And(a, b)) => [(RRule::AndR1, a), (RRule::AndR2, b)],
                (Polarity::Pre, Formula::Or(a, b)) => [(RRule::OrL1, a), (RRule::OrL2, b)],
                _ => continue,
            };
            for (rule, part) in options {
                let replacement = Structure::Leaf((**part).clone());
                if let Some(t) = self.displayed_step(s, pos, rule, replacement) {
                    return Some(t);
                }
            }
            return None;
        }

        for (pos, f) in &leaves {
            let step = match (pos.polarity, f) {
                (Polarity::Pre, Formula::App(c, args)) if sig.family(*c) == Family::F => {
                    (RRule::FL(*c), crate::prover::structural_copy(*c, args))
                }
                (Polarity::Suc, Formula::App(c, args)) if sig.family(*c) == Family::G => {
                    (RRule::GR(*c), crate::prover::structural_copy(*c, args))
                }
                (Polarity::Pre, Formula::Top) => (RRule::TopL, Structure::TopHat),
                (Polarity::Suc, Formula::Bot) => (RRule::BotR, Structure::BotCheck),
                _ => continue,
            };
            return self.displayed_step(s, pos, step.0, step.1);
        }

        self.root_case(s)
    }

    /// A one-premise rule applied to the member displaying `pos`.
    fn displayed_step(&mut self, s: &Sequent, pos: &Position, rule: RRule, replacement: Structure) -> Option<RefutationTree> {
        let sig = self.sig;
        let goal = substitute_unchecked(s, pos, replacement.clone());
        debug_assert!(complexity(&goal) < complexity(s));
        let sub = self.run(&goal)?;
        let d = Displayed::new(sig, s, pos).expect("valid position");
        let premise = d.back(sig, pos, replacement, sub);
        Some(d.wrap(sig, s, Tree::new(d.member.clone(), rule, vec![premise])))
    }

    fn node(&mut self, s: &Sequent, rule: RRule, goals: Vec<Sequent>) -> Option<RefutationTree> {
        let premises = self.all(goals)?;
        Some(Tree::new(s.clone(), rule, premises))
    }

    fn root_case(&mut self, s: &Sequent) -> Option<RefutationTree> {
        use Structure::*;
        let sig = self.sig;
        let leaf = |r: RRule| Some(Tree::leaf(s.clone(), r));
        match (&s.precedent, &s.succedent) {
            (_, Leaf(Formula::Or(..))) => {
                let (i, j) = occurrence_families(sig, s, Side::Precedent);
                let goals = lattice_context_premises(s, Side::Precedent, &i, &j);
                self.node(s, RRule::OrR { i, j }, goals)
            }
            (Leaf(Formula::And(..)), _) => {
                let (i, j) = occurrence_families(sig, s, Side::Succedent);
                let goals = lattice_context_premises(s, Side::Succedent, &i, &j);
                self.node(s, RRule::AndL { i, j }, goals)
            }
            (TopHat, BotCheck) => leaf(RRule::Ax1),
            (Leaf(Formula::Atom(_)), BotCheck) => leaf(RRule::Ax2),
            (TopHat, Leaf(Formula::Atom(_))) => leaf(RRule::Ax3),
            (Leaf(Formula::Atom(p)), Leaf(Formula::Atom(q))) => {
                if p != q || self.config.mutation == Some(Mutation::Ax4OnEqualAtoms) {
                    leaf(RRule::Ax4)
                } else {
                    None
                }
            }
            (Leaf(Formula::App(g, _)), BotCheck) => leaf(RRule::GBot(*g)),
            (Leaf(Formula::App(g, _)), Leaf(Formula::Atom(_))) => leaf(RRule::GAtom(*g)),
            (Leaf(Formula::Atom(_)), Leaf(Formula::App(f, _))) => leaf(RRule::AtomF(*f)),
            (TopHat, Leaf(Formula::App(f, _))) => leaf(RRule::TopF(*f)),
            (Leaf(Formula::App(g, _)), Leaf(Formula::App(f, _))) => leaf(RRule::GF(*g, *f)),
            (SApp(f, ups), BotCheck) => self.node(s, RRule::FBot(*f), f_bottom_premises(sig, *f, ups)),
            (SApp(f, ups), Leaf(Formula::Atom(_))) => self.node(s, RRule::FAtom(*f), f_bottom_premises(sig, *f, ups)),
            (TopHat, SApp(g, ups)) => self.node(s, RRule::TopG(*g), g_top_premises(sig, *g, ups)),
            (Leaf(Formula::Atom(_)), SApp(g, ups)) => self.node(s, RRule::AtomG(*g), g_top_premises(sig, *g, ups)),
            (SApp(f, ups), SApp(g, vs)) => {
                let mut goals = f_bottom_premises(sig, *f, ups);
                goals.extend(g_top_premises(sig, *g, vs));
                self.node(s, RRule::FG(*f, *g), goals)
            }
            (SApp(f1, ups), Leaf(Formula::App(f2, phis))) => {
                if f1 != f2 {
                    return self.node(s, RRule::FRNeq(*f1, *f2), f_bottom_premises(sig, *f1, ups));
                }
                let base = self.all(f_bottom_premises(sig, *f1, ups))?;
                for (j, (u, phi)) in ups.iter().zip(phis).enumerate() {
                    let goal = anti(u.clone(), Leaf(phi.clone()), sig.tonicity(*f1, j));
                    if let Some(t) = self.run(&goal) {
                        let mut premises = base.clone();
                        premises.push(t);
                        return Some(Tree::new(s.clone(), RRule::FR { f: *f1, j }, premises));
                    }
                }
                None
            }
            (Leaf(Formula::App(g1, phis)), SApp(g2, ups)) => {
                if g1 != g2 {
                    return self.node(s, RRule::GLNeq(*g1, *g2), g_top_premises(sig, *g2, ups));
                }
                let base = self.all(g_top_premises(sig, *g2, ups))?;
                for (j, (u, phi)) in ups.iter().zip(phis).enumerate() {
                    let goal = anti(Leaf(phi.clone()), u.clone(), sig.tonicity(*g1, j));
                    if let Some(t) = self.run(&goal) {
                        let mut premises = base.clone();
                        premises.push(t);
                        return Some(Tree::new(s.clone(), RRule::GL { g: *g1, j }, premises));
                    }
                }
                None
            }
            _ => unreachable!("earlier steps remove every other root shape: {:?}", s),
        }
    }
}

/// Forward check of every node against its schema and side conditions.
pub fn check_refutation(sig: &Signature, t: &RefutationTree) -> bool {
    t.nodes().into_iter().all(|n| check_node(sig, n))
}

/// Nodes, in pre-order, whose rule instance is not a valid application.
pub fn rejected_nodes<'a>(sig: &Signature, t: &'a RefutationTree) -> Vec<&'a RefutationTree> {
    t.nodes().into_iter().filter(|n| !check_node(sig, n)).collect()
}

fn is_primitive_of(sig: &Signature, c: ConnId, family: Family) -> bool {
    sig.is_primitive(c) && sig.family(c) == family
}

fn check_node(sig: &Signature, t: &RefutationTree) -> bool {
    use Structure::*;
    let c = &t.conclusion;
    if c.kind != Turnstile::Refutable || c.check_type(sig).is_err() {
        return false;
    }
    if t.premises.iter().any(|p| p.conclusion.kind != Turnstile::Refutable) {
        return false;
    }
    let ps: Vec<Sequent> = t.premises.iter().map(|p| p.conclusion.clone()).collect();
    let residual_free = c.is_residual_free(sig);
    let premises_are = |want: Vec<Sequent>| ps == want;
    match &t.rule {
        RRule::Ax1 => ps.is_empty() && c.precedent == TopHat && c.succedent == BotCheck,
        RRule::Ax2 => ps.is_empty() && matches!(c.precedent, Leaf(Formula::Atom(_))) && c.succedent == BotCheck,
        RRule::Ax3 => ps.is_empty() && c.precedent == TopHat && matches!(c.succedent, Leaf(Formula::Atom(_))),
        RRule::Ax4 => {
            ps.is_empty()
                && matches!((&c.precedent, &c.succedent), (Leaf(Formula::Atom(p)), Leaf(Formula::Atom(q))) if p != q)
        }
        RRule::Display(mv) => ps.len() == 1 && display_related(sig, &ps[0], c, mv),
        RRule::FBot(f) => match (&c.precedent, &c.succedent) {
            (SApp(f2, ups), BotCheck) if f2 == f => {
                residual_free && is_primitive_of(sig, *f, Family::F) && premises_are(f_bottom_premises(sig, *f, ups))
            }
            _ => false,
        },
        RRule::FAtom(f) => match (&c.precedent, &c.succedent) {
            (SApp(f2, ups), Leaf(Formula::Atom(_))) if f2 == f => {
                residual_free && is_primitive_of(sig, *f, Family::F) && premises_are(f_bottom_premises(sig, *f, ups))
            }
            _ => false,
        },
        RRule::TopG(g) => match (&c.precedent, &c.succedent) {
            (TopHat, SApp(g2, ups)) if g2 == g => {
                residual_free && is_primitive_of(sig, *g, Family::G) && premises_are(g_top_premises(sig, *g, ups))
            }
            _ => false,
        },
        RRule::AtomG(g) => match (&c.precedent, &c.succedent) {
            (Leaf(Formula::Atom(_)), SApp(g2, ups)) if g2 == g => {
                residual_free && is_primitive_of(sig, *g, Family::G) && premises_are(g_top_premises(sig, *g, ups))
            }
            _ => false,
        },
        RRule::FG(f, g) => match (&c.precedent, &c.succedent) {
            (SApp(f2, ups), SApp(g2, vs)) if f2 == f && g2 == g => {
                let mut want = f_bottom_premises(sig, *f, ups);
                want.extend(g_top_premises(sig, *g, vs));
                residual_free && is_primitive_of(sig, *f, Family::F) && is_primitive_of(sig, *g, Family::G) && premises_are(want)
            }
            _ => false,
        },
        RRule::GBot(g) => {
            ps.is_empty()
                && is_primitive_of(sig, *g, Family::G)
                && matches!((&c.precedent, &c.succedent), (Leaf(Formula::App(g2, _)), BotCheck) if g2 == g)
        }
        RRule::GAtom(g) => {
            ps.is_empty()
                && is_primitive_of(sig, *g, Family::G)
                && matches!((&c.precedent, &c.succedent), (Leaf(Formula::App(g2, _)), Leaf(Formula::Atom(_))) if g2 == g)
        }
        RRule::AtomF(f) => {
            ps.is_empty()
                && is_primitive_of(sig, *f, Family::F)
                && matches!((&c.precedent, &c.succedent), (Leaf(Formula::Atom(_)), Leaf(Formula::App(f2, _))) if f2 == f)
        }
        RRule::TopF(f) => {
            ps.is_empty()
                && is_primitive_of(sig, *f, Family::F)
                && matches!((&c.precedent, &c.succedent), (TopHat, Leaf(Formula::App(f2, _))) if f2 == f)
        }
        RRule::GF(g, f) => {
            ps.is_empty()
                && is_primitive_of(sig, *g, Family::G)
                && is_primitive_of(sig, *f, Family::F)
                && matches!((&c.precedent, &c.succedent), (Leaf(Formula::App(g2, _)), Leaf(Formula::App(f2, _))) if g2 == g && f2 == f)
        }
        RRule::FL(f) => match &c.precedent {
            Leaf(Formula::App(f2, args)) if f2 == f => {
                let want = Sequent::refutable(crate::prover::structural_copy(*f, args), c.succedent.clone());
                is_primitive_of(sig, *f, Family::F) && premises_are(vec![want])
            }
            _ => false,
        },
        RRule::GR(g) => match &c.succedent {
            Leaf(Formula::App(g2, args)) if g2 == g => {
                let want = Sequent::refutable(c.precedent.clone(), crate::prover::structural_copy(*g, args));
                is_primitive_of(sig, *g, Family::G) && premises_are(vec![want])
            }
            _ => false,
        },
        RRule::FR { f, j } => match (&c.precedent, &c.succedent) {
            (SApp(f1, ups), Leaf(Formula::App(f2, phis))) if f1 == f && f2 == f && *j < ups.len() => {
                let mut want = f_bottom_premises(sig, *f, ups);
                want.push(anti(ups[*j].clone(), Leaf(phis[*j].clone()), sig.tonicity(*f, *j)));
                residual_free && is_primitive_of(sig, *f, Family::F) && premises_are(want)
            }
            _ => false,
        },
        RRule::GL { g, j } => match (&c.precedent, &c.succedent) {
            (Leaf(Formula::App(g1, phis)), SApp(g2, ups)) if g1 == g && g2 == g && *j < ups.len() => {
                let mut want = g_top_premises(sig, *g, ups);
                want.push(anti(Leaf(phis[*j].clone()), ups[*j].clone(), sig.tonicity(*g, *j)));
                residual_free && is_primitive_of(sig, *g, Family::G) && premises_are(want)
            }
            _ => false,
        },
        RRule::FRNeq(f1, f2) => match (&c.precedent, &c.succedent) {
            (SApp(a, ups), Leaf(Formula::App(b, _))) if a == f1 && b == f2 && f1 != f2 => {
                residual_free
                    && is_primitive_of(sig, *f1, Family::F)
                    && is_primitive_of(sig, *f2, Family::F)
                    && premises_are(f_bottom_premises(sig, *f1, ups))
            }
            _ => false,
        },
        RRule::GLNeq(g1, g2) => match (&c.precedent, &c.succedent) {
            (Leaf(Formula::App(a, _)), SApp(b, ups)) if a == g1 && b == g2 && g1 != g2 => {
                residual_free
                    && is_primitive_of(sig, *g1, Family::G)
                    && is_primitive_of(sig, *g2, Family::G)
                    && premises_are(g_top_premises(sig, *g2, ups))
            }
            _ => false,
        },
        RRule::TopL => {
            c.precedent == Leaf(Formula::Top) && premises_are(vec![Sequent::refutable(TopHat, c.succedent.clone())])
        }
        RRule::BotR => {
            c.succedent == Leaf(Formula::Bot) && premises_are(vec![Sequent::refutable(c.precedent.clone(), BotCheck)])
        }
        RRule::OrL1 | RRule::OrL2 => match &c.precedent {
            Leaf(Formula::Or(a, b)) => {
                let part = if t.rule == RRule::OrL1 { a } else { b };
                premises_are(vec![Sequent::refutable(Leaf((**part).clone()), c.succedent.clone())])
            }
            _ => false,
        },
        RRule::AndR1 | RRule::AndR2 => match &c.succedent {
            Leaf(Formula::And(a, b)) => {
                let part = if t.rule == RRule::AndR1 { a } else { b };
                premises_are(vec![Sequent::refutable(c.precedent.clone(), Leaf((**part).clone()))])
            }
            _ => false,
        },
        RRule::AndL { i, j } => {
            matches!(c.precedent, Leaf(Formula::And(..)))
                && residual_free
                && !structure_is_branching(sig, &c.succedent, Sign::Minus)
                && (i.clone(), j.clone()) == occurrence_families(sig, c, Side::Succedent)
                && premises_are(lattice_context_premises(c, Side::Succedent, i, j))
        }
        RRule::OrR { i, j } => {
            matches!(c.succedent, Leaf(Formula::Or(..)))
                && residual_free
                && !structure_is_branching(sig, &c.precedent, Sign::Plus)
                && (i.clone(), j.clone()) == occurrence_families(sig, c, Side::Precedent)
                && premises_are(lattice_context_premises(c, Side::Precedent, i, j))
        }
    }
}

/// Every position at which `s` could be displayed, exposed for property tests.
pub fn displayable_positions(sig: &Signature, s: &Sequent) -> Vec<Position> {
    positions(sig, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{PrimitiveSpec, Tonicity::*};
    use crate::syntax::parse_sequent;

    fn sig() -> Signature {
        Signature::new(vec![
            PrimitiveSpec::new("f", Family::F, &[Monotone]),
            PrimitiveSpec::new("g", Family::G, &[Monotone]),
            PrimitiveSpec::new("h", Family::F, &[Monotone, Antitone]),
            PrimitiveSpec::new("k", Family::G, &[Antitone, Monotone]),
            PrimitiveSpec::new("c", Family::F, &[]),
            PrimitiveSpec::new("d", Family::F, &[]),
        ])
        .unwrap()
    }

    fn refutable(text: &str) -> bool {
        let sig = sig();
        let s = parse_sequent(&sig, text).unwrap();
        let t = refute(&sig, &s).unwrap();
        if let Some(t) = &t {
            assert!(check_refutation(&sig, t), "tree for {} fails the checker:\n{}", text, t.to_text(&sig));
            assert_eq!(t.conclusion, s.with_kind(Turnstile::Refutable));
        }
        t.is_some()
    }

    #[test]
    fn distinct_atoms_use_ax4() {
        let sig = sig();
        let s = parse_sequent(&sig, "p -|/ q").unwrap();
        let t = refute(&sig, &s).unwrap().unwrap();
        assert_eq!(t.rule, RRule::Ax4);
    }

    #[test]
    fn example_rule_multiset() {
        let sig = sig();
        let s = parse_sequent(&sig, "g(p | q) |- g(p) | g(q)").unwrap();
        let t = refute(&sig, &s).unwrap().unwrap();
        assert!(check_refutation(&sig, &t));
        let mut names = t.logical_rule_names(&sig);
        names.sort();
        let mut want: Vec<String> =
            ["∨_R", "g_R", "g_R", "g_L", "g_L", "∨_L1", "∨_L2", "Ax3", "Ax3", "Ax4", "Ax4"].iter().map(|s| s.to_string()).collect();
        want.sort();
        assert_eq!(names, want);
    }

    #[test]
    fn valid_sequents_are_not_refuted() {
        assert!(!refutable("f(p) |- f(p)"));
        assert!(!refutable("g(p) & g(q) |- g(p & q)"));
        assert!(!refutable("p & q |- q & p"));
        assert!(!refutable("c |- c"));
        assert!(!refutable("h(p, q) |- h(p, q & r)"));
        assert!(!refutable("bot |- g(p)"));
    }

    #[test]
    fn invalid_sequents_are_refuted() {
        assert!(refutable("p |- q"));
        assert!(refutable("c |- d"));
        assert!(refutable("p | q |- p & q"));
        assert!(refutable("p & (q | r) |- p & q | p & r"));
        assert!(refutable("h(p, q & r) |- h(p, q)"));
        assert!(refutable("f(top) |- top & f(p)"));
        assert!(refutable("k(p, q) |- g(p)"));
        assert!(refutable("top |- f(p) | g(q)"));
    }

    #[test]
    fn checker_rejects_equal_atoms_in_ax4() {
        let sig = sig();
        let s = parse_sequent(&sig, "p -|/ p").unwrap();
        assert!(!check_refutation(&sig, &Tree::leaf(s, RRule::Ax4)));
    }
}
