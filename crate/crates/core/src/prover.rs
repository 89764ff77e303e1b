//! Cut-free backward proof search in the display calculus and a forward
//! checker for its derivations.
//!
//! Search works on residual-free sequents only. A rule applied to an
//! occurrence deep inside a sequent is applied to the class member displaying
//! that occurrence; each premise is then display-equivalent to a residual-free
//! substitution instance of the original sequent, which becomes the next
//! search goal. The emitted tree spells out the display steps in both
//! directions, so it can be checked rule by rule.
//!
//! Rules that are invertible (`∨_L`, `∧_R`, `f_L`, `g_R`, `⊤_L`, `⊥_R`) are
//! applied eagerly. The remaining choices are `∧_Li`, `∨_Ri`, `f_R`, `g_L` and
//! the two weakenings at every position. Every premise produced this way has
//! strictly smaller complexity, so the search terminates without loop checks.

use std::collections::HashMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::display::{apply_move, DisplayMove};
use crate::signature::{ConnId, Family, Signature};
use crate::syntax::{complexity, leaf_positions, positions, Formula, Polarity, Sequent, Structure, Turnstile};
use crate::tree::{Displayed, RuleLabel, Tree};

/// Rules of the display calculus. Cut is representable so that hand-built
/// trees using it can be rejected by the checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DRule {
    Id,
    Cut,
    TopW,
    BotW,
    TopL,
    TopR,
    BotL,
    BotR,
    AndL1,
    AndL2,
    AndR,
    OrL,
    OrR1,
    OrR2,
    FL(ConnId),
    FR(ConnId),
    GL(ConnId),
    GR(ConnId),
    Display(DisplayMove),
}

impl RuleLabel for DRule {
    fn name(&self, sig: &Signature) -> String {
        match self {
            DRule::Id => "Id".into(),
            DRule::Cut => "Cut".into(),
            DRule::TopW => "⊤_W".into(),
            DRule::BotW => "⊥_W".into(),
            DRule::TopL => "⊤_L".into(),
            DRule::TopR => "⊤_R".into(),
            DRule::BotL => "⊥_L".into(),
            DRule::BotR => "⊥_R".into(),
            DRule::AndL1 => "∧_L1".into(),
            DRule::AndL2 => "∧_L2".into(),
            DRule::AndR => "∧_R".into(),
            DRule::OrL => "∨_L".into(),
            DRule::OrR1 => "∨_R1".into(),
            DRule::OrR2 => "∨_R2".into(),
            DRule::FL(_) => "f_L".into(),
            DRule::FR(_) => "f_R".into(),
            DRule::GL(_) => "g_L".into(),
            DRule::GR(_) => "g_R".into(),
            DRule::Display(mv) => mv.tag(sig),
        }
    }

    fn detail(&self, sig: &Signature) -> String {
        match self {
            DRule::FL(c) | DRule::FR(c) | DRule::GL(c) | DRule::GR(c) => {
                format!("{}[{}]", self.name(sig), sig.name(*c))
            }
            DRule::Display(mv) => mv.label(sig),
            _ => self.name(sig),
        }
    }

    fn display(mv: DisplayMove) -> Self {
        DRule::Display(mv)
    }

    fn as_display(&self) -> Option<DisplayMove> {
        match self {
            DRule::Display(mv) => Some(*mv),
            _ => None,
        }
    }

    fn aux_json(&self, sig: &Signature) -> Option<Value> {
        match self {
            DRule::FL(c) | DRule::FR(c) | DRule::GL(c) | DRule::GR(c) => Some(json!({"connective": sig.name(*c)})),
            _ => None,
        }
    }
}

pub type DerivationTree = Tree<DRule>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProveError {
    #[error("the sequent contains residual connectives")]
    Residuals,
    #[error("the sequent is ill-typed: {0}")]
    Type(String),
    #[error("search exceeded the depth limit of {0}")]
    DepthLimit(usize),
}

/// Search limits.
#[derive(Clone, Copy, Debug)]
pub struct ProverConfig {
    /// Hard bound on recursion depth. Premises always have smaller complexity,
    /// so the complexity of the input is a natural bound and this never fires
    /// when set above it.
    pub depth_limit: usize,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig { depth_limit: 10_000 }
    }
}

/// Searches for a cut-free derivation of `s` (read as `⊢` whatever its kind).
pub fn prove(sig: &Signature, s: &Sequent) -> Result<Option<DerivationTree>, ProveError> {
    prove_with(sig, s, ProverConfig::default())
}

pub fn prove_with(sig: &Signature, s: &Sequent, config: ProverConfig) -> Result<Option<DerivationTree>, ProveError> {
    s.check_type(sig).map_err(|e| ProveError::Type(e.to_string()))?;
    if !s.is_residual_free(sig) {
        return Err(ProveError::Residuals);
    }
    let goal = s.with_kind(Turnstile::Provable);
    let mut search = Search { sig, memo: HashMap::new(), limit: config.depth_limit, overflow: false };
    let result = search.run(&goal, 0);
    if search.overflow {
        return Err(ProveError::DepthLimit(config.depth_limit));
    }
    Ok(result)
}

/// Whether `s` is derivable, without building the tree.
pub fn is_derivable(sig: &Signature, s: &Sequent) -> Result<bool, ProveError> {
    Ok(prove(sig, s)?.is_some())
}

struct Search<'a> {
    sig: &'a Signature,
    memo: HashMap<Sequent, Option<DerivationTree>>,
    limit: usize,
    overflow: bool,
}

impl Search<'_> {
    fn run(&mut self, s: &Sequent, depth: usize) -> Option<DerivationTree> {
        if let Some(hit) = self.memo.get(s) {
            return hit.clone();
        }
        if depth > self.limit {
            self.overflow = true;
            return None;
        }
        let result = self.search(s, depth);
        self.memo.insert(s.clone(), result.clone());
        result
    }

    fn search(&mut self, s: &Sequent, depth: usize) -> Option<DerivationTree> {
        let sig = self.sig;
        let leaves: Vec<_> = leaf_positions(sig, s).into_iter().map(|(p, f)| (p, f.clone())).collect();

        // Constant leaves that make the sequent derivable outright.
        for (pos, f) in &leaves {
            match (pos.polarity, f) {
                (Polarity::Pre, Formula::Bot) => {
                    let d = Displayed::new(sig, s, pos).expect("valid position");
                    let axiom = Tree::leaf(Sequent::provable(Structure::Leaf(Formula::Bot), Structure::BotCheck), DRule::BotL);
                    let top = if d.member.succedent == Structure::BotCheck {
                        axiom
                    } else {
                        Tree::new(d.member.clone(), DRule::BotW, vec![axiom])
                    };
                    return Some(d.wrap(sig, s, top));
                }
                (Polarity::Suc, Formula::Top) => {
                    let d = Displayed::new(sig, s, pos).expect("valid position");
                    let axiom = Tree::leaf(Sequent::provable(Structure::TopHat, Structure::Leaf(Formula::Top)), DRule::TopR);
                    let top = if d.member.precedent == Structure::TopHat {
                        axiom
                    } else {
                        Tree::new(d.member.clone(), DRule::TopW, vec![axiom])
                    };
                    return Some(d.wrap(sig, s, top));
                }
                _ => {}
            }
        }

        // Zero-premise rules at the root.
        match (&s.precedent, &s.succedent) {
            (Structure::Leaf(Formula::Atom(p)), Structure::Leaf(Formula::Atom(q))) if p == q => {
                return Some(Tree::leaf(s.clone(), DRule::Id));
            }
            (Structure::SApp(f, a), Structure::Leaf(Formula::App(f2, b))) if f == f2 && a.is_empty() && b.is_empty() => {
                return Some(Tree::leaf(s.clone(), DRule::FR(*f)));
            }
            (Structure::Leaf(Formula::App(g, a)), Structure::SApp(g2, b)) if g == g2 && a.is_empty() && b.is_empty() => {
                return Some(Tree::leaf(s.clone(), DRule::GL(*g)));
            }
            _ => {}
        }

        // Invertible rules: the first applicable one decides the outcome.
        for (pos, f) in &leaves {
            let step: Option<(DRule, Vec<Structure>)> = match (pos.polarity, f) {
                (Polarity::Pre, Formula::Or(a, b)) => {
                    Some((DRule::OrL, vec![Structure::Leaf((**a).clone()), Structure::Leaf((**b).clone())]))
                }
                (Polarity::Suc, Formula::And(a, b)) => {
                    Some((DRule::AndR, vec![Structure::Leaf((**a).clone()), Structure::Leaf((**b).clone())]))
                }
                (Polarity::Pre, Formula::App(c, args)) if sig.family(*c) == Family::F => {
                    Some((DRule::FL(*c), vec![structural_copy(*c, args)]))
                }
                (Polarity::Suc, Formula::App(c, args)) if sig.family(*c) == Family::G => {
                    Some((DRule::GR(*c), vec![structural_copy(*c, args)]))
                }
                (Polarity::Pre, Formula::Top) => Some((DRule::TopL, vec![Structure::TopHat])),
                (Polarity::Suc, Formula::Bot) => Some((DRule::BotR, vec![Structure::BotCheck])),
                _ => None,
            };
            if let Some((rule, replacements)) = step {
                return self.apply_at(s, pos, rule, replacements, depth);
            }
        }

        // Non-invertible choices.
        if let Some(t) = self.try_right_introduction(s, depth) {
            return Some(t);
        }
        for (pos, f) in &leaves {
            let options: Vec<(DRule, Formula)> = match (pos.polarity, f) {
                (Polarity::Pre, Formula::And(a, b)) => vec![(DRule::AndL1, (**a).clone()), (DRule::AndL2, (**b).clone())],
                (Polarity::Suc, Formula::Or(a, b)) => vec![(DRule::OrR1, (**a).clone()), (DRule::OrR2, (**b).clone())],
                _ => Vec::new(),
            };
            for (rule, part) in options {
                if let Some(t) = self.apply_at(s, pos, rule, vec![Structure::Leaf(part)], depth) {
                    return Some(t);
                }
            }
        }
        self.try_weakenings(s, depth)
    }

    /// Applies a rule to the member displaying `pos`. Each replacement yields
    /// one premise, obtained by substituting it at `pos`.
    fn apply_at(
        &mut self,
        s: &Sequent,
        pos: &crate::syntax::Position,
        rule: DRule,
        replacements: Vec<Structure>,
        depth: usize,
    ) -> Option<DerivationTree> {
        let sig = self.sig;
        let d = Displayed::new(sig, s, pos).expect("valid position");
        let mut premises = Vec::new();
        for r in replacements {
            let goal = crate::syntax::substitute_unchecked(s, pos, r.clone());
            debug_assert!(complexity(&goal) < complexity(s));
            let sub = self.run(&goal, depth + 1)?;
            premises.push(d.back(sig, pos, r, sub));
        }
        Some(d.wrap(sig, s, Tree::new(d.member.clone(), rule, premises)))
    }

    fn try_right_introduction(&mut self, s: &Sequent, depth: usize) -> Option<DerivationTree> {
        let sig = self.sig;
        match (&s.precedent, &s.succedent) {
            (Structure::SApp(f, ups), Structure::Leaf(Formula::App(f2, phis))) if f == f2 && sig.family(*f) == Family::F => {
                let mut premises = Vec::new();
                for (i, (u, phi)) in ups.iter().zip(phis).enumerate() {
                    let goal = oriented(u.clone(), Structure::Leaf(phi.clone()), sig.tonicity(*f, i).is_monotone());
                    premises.push(self.run(&goal, depth + 1)?);
                }
                Some(Tree::new(s.clone(), DRule::FR(*f), premises))
            }
            (Structure::Leaf(Formula::App(g, phis)), Structure::SApp(g2, ups)) if g == g2 && sig.family(*g) == Family::G => {
                let mut premises = Vec::new();
                for (i, (u, phi)) in ups.iter().zip(phis).enumerate() {
                    let goal = oriented(Structure::Leaf(phi.clone()), u.clone(), sig.tonicity(*g, i).is_monotone());
                    premises.push(self.run(&goal, depth + 1)?);
                }
                Some(Tree::new(s.clone(), DRule::GL(*g), premises))
            }
            _ => None,
        }
    }

    fn try_weakenings(&mut self, s: &Sequent, depth: usize) -> Option<DerivationTree> {
        let sig = self.sig;
        for pos in positions(sig, s) {
            let d = Displayed::new(sig, s, &pos).expect("valid position");
            let here = s.at(&pos).expect("valid position").clone();
            match pos.polarity {
                Polarity::Pre => {
                    if here != Structure::TopHat {
                        let goal = crate::syntax::substitute_unchecked(s, &pos, Structure::TopHat);
                        if let Some(sub) = self.run(&goal, depth + 1) {
                            let premise = d.back(sig, &pos, Structure::TopHat, sub);
                            return Some(d.wrap(sig, s, Tree::new(d.member.clone(), DRule::TopW, vec![premise])));
                        }
                    }
                    if d.member.succedent != Structure::BotCheck {
                        let goal = Sequent::provable(here.clone(), Structure::BotCheck);
                        if let Some(sub) = self.run(&goal, depth + 1) {
                            return Some(d.wrap(sig, s, Tree::new(d.member.clone(), DRule::BotW, vec![sub])));
                        }
                    }
                }
                Polarity::Suc => {
                    if here != Structure::BotCheck {
                        let goal = crate::syntax::substitute_unchecked(s, &pos, Structure::BotCheck);
                        if let Some(sub) = self.run(&goal, depth + 1) {
                            let premise = d.back(sig, &pos, Structure::BotCheck, sub);
                            return Some(d.wrap(sig, s, Tree::new(d.member.clone(), DRule::BotW, vec![premise])));
                        }
                    }
                    if d.member.precedent != Structure::TopHat {
                        let goal = Sequent::provable(Structure::TopHat, here.clone());
                        if let Some(sub) = self.run(&goal, depth + 1) {
                            return Some(d.wrap(sig, s, Tree::new(d.member.clone(), DRule::TopW, vec![sub])));
                        }
                    }
                }
            }
        }
        None
    }
}

/// `f̂(φ̄)` or `ǧ(φ̄)` built from the arguments of an operational application.
pub(crate) fn structural_copy(c: ConnId, args: &[Formula]) -> Structure {
    Structure::SApp(c, args.iter().cloned().map(Structure::Leaf).collect())
}

/// `a ⊢ b` when `monotone`, otherwise `b ⊢ a`.
pub(crate) fn oriented(a: Structure, b: Structure, monotone: bool) -> Sequent {
    if monotone {
        Sequent::provable(a, b)
    } else {
        Sequent::provable(b, a)
    }
}

/// Forward check of every node against its rule schema.
pub fn check_derivation(sig: &Signature, t: &DerivationTree) -> bool {
    t.nodes().into_iter().all(|n| check_node(sig, n))
}

fn premise_conclusions(t: &DerivationTree) -> Vec<&Sequent> {
    t.premises.iter().map(|p| &p.conclusion).collect()
}

fn check_node(sig: &Signature, t: &DerivationTree) -> bool {
    let c = &t.conclusion;
    if c.kind != Turnstile::Provable || c.check_type(sig).is_err() {
        return false;
    }
    if t.premises.iter().any(|p| p.conclusion.kind != Turnstile::Provable) {
        return false;
    }
    let ps = premise_conclusions(t);
    let leaf = |s: &Structure| s.as_formula().cloned();
    match &t.rule {
        DRule::Cut => false,
        DRule::Id => {
            ps.is_empty() && matches!((leaf(&c.precedent), leaf(&c.succedent)), (Some(Formula::Atom(p)), Some(Formula::Atom(q))) if p == q)
        }
        DRule::TopR => ps.is_empty() && c.precedent == Structure::TopHat && c.succedent == Structure::Leaf(Formula::Top),
        DRule::BotL => ps.is_empty() && c.precedent == Structure::Leaf(Formula::Bot) && c.succedent == Structure::BotCheck,
        DRule::TopW => ps.len() == 1 && ps[0].precedent == Structure::TopHat && ps[0].succedent == c.succedent,
        DRule::BotW => ps.len() == 1 && ps[0].succedent == Structure::BotCheck && ps[0].precedent == c.precedent,
        DRule::TopL => {
            ps.len() == 1
                && c.precedent == Structure::Leaf(Formula::Top)
                && ps[0].precedent == Structure::TopHat
                && ps[0].succedent == c.succedent
        }
        DRule::BotR => {
            ps.len() == 1
                && c.succedent == Structure::Leaf(Formula::Bot)
                && ps[0].succedent == Structure::BotCheck
                && ps[0].precedent == c.precedent
        }
        DRule::AndL1 | DRule::AndL2 => match leaf(&c.precedent) {
            Some(Formula::And(a, b)) => {
                let part = if t.rule == DRule::AndL1 { a } else { b };
                ps.len() == 1 && ps[0].precedent == Structure::Leaf(*part) && ps[0].succedent == c.succedent
            }
            _ => false,
        },
        DRule::OrR1 | DRule::OrR2 => match leaf(&c.succedent) {
            Some(Formula::Or(a, b)) => {
                let part = if t.rule == DRule::OrR1 { a } else { b };
                ps.len() == 1 && ps[0].succedent == Structure::Leaf(*part) && ps[0].precedent == c.precedent
            }
            _ => false,
        },
        DRule::AndR => match leaf(&c.succedent) {
            Some(Formula::And(a, b)) => {
                ps.len() == 2
                    && ps.iter().all(|p| p.precedent == c.precedent)
                    && ps[0].succedent == Structure::Leaf(*a)
                    && ps[1].succedent == Structure::Leaf(*b)
            }
            _ => false,
        },
        DRule::OrL => match leaf(&c.precedent) {
            Some(Formula::Or(a, b)) => {
                ps.len() == 2
                    && ps.iter().all(|p| p.succedent == c.succedent)
                    && ps[0].precedent == Structure::Leaf(*a)
                    && ps[1].precedent == Structure::Leaf(*b)
            }
            _ => false,
        },
        DRule::FL(f) => match leaf(&c.precedent) {
            Some(Formula::App(f2, args)) => {
                *f == f2
                    && sig.is_primitive(*f)
                    && sig.family(*f) == Family::F
                    && ps.len() == 1
                    && ps[0].precedent == structural_copy(*f, &args)
                    && ps[0].succedent == c.succedent
            }
            _ => false,
        },
        DRule::GR(g) => match leaf(&c.succedent) {
            Some(Formula::App(g2, args)) => {
                *g == g2
                    && sig.is_primitive(*g)
                    && sig.family(*g) == Family::G
                    && ps.len() == 1
                    && ps[0].succedent == structural_copy(*g, &args)
                    && ps[0].precedent == c.precedent
            }
            _ => false,
        },
        DRule::FR(f) => match (&c.precedent, leaf(&c.succedent)) {
            (Structure::SApp(f1, ups), Some(Formula::App(f2, phis))) => {
                *f1 == *f
                    && f2 == *f
                    && sig.is_primitive(*f)
                    && sig.family(*f) == Family::F
                    && ps.len() == ups.len()
                    && ups.iter().zip(&phis).enumerate().all(|(i, (u, phi))| {
                        *ps[i] == oriented(u.clone(), Structure::Leaf(phi.clone()), sig.tonicity(*f, i).is_monotone())
                    })
            }
            _ => false,
        },
        DRule::GL(g) => match (leaf(&c.precedent), &c.succedent) {
            (Some(Formula::App(g1, phis)), Structure::SApp(g2, ups)) => {
                g1 == *g
                    && *g2 == *g
                    && sig.is_primitive(*g)
                    && sig.family(*g) == Family::G
                    && ps.len() == ups.len()
                    && ups.iter().zip(&phis).enumerate().all(|(i, (u, phi))| {
                        *ps[i] == oriented(Structure::Leaf(phi.clone()), u.clone(), sig.tonicity(*g, i).is_monotone())
                    })
            }
            _ => false,
        },
        DRule::Display(mv) => ps.len() == 1 && display_related(sig, ps[0], c, mv),
    }
}

/// Whether `a` and `b` are related by `mv` in either direction.
pub(crate) fn display_related(sig: &Signature, a: &Sequent, b: &Sequent, mv: &DisplayMove) -> bool {
    apply_move(sig, a, mv).as_ref() == Some(b) || apply_move(sig, a, &mv.inverse()).as_ref() == Some(b)
}
