//! Tableau decision procedure obtained from the refutation calculus by
//! contraposition.
//!
//! Every node carries a sequent that is assumed valid. A refutation rule with
//! premises `P1 … Pn` and conclusion `C` becomes a tableau rule reading "if `C`
//! is valid then some `Pi` is valid", so the premises of one refutation rule
//! land on separate branches. Refutation rules sharing a conclusion shape with
//! a choice of premise (`∧_R1`/`∧_R2`, or the coordinate `j` of `f_R`)
//! contribute conjunctive chains on a single branch.
//!
//! A branch is grown until no rule instance adds anything new. A terminated
//! branch is open when it holds a sequent matching a premise-free refutation
//! rule, and closed otherwise. The sequent is valid exactly when a terminated
//! tree has a closed branch.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::display::{display_neighbors, escape, DisplayMove};
use crate::refuter::{f_bottom_premises, g_top_premises, lattice_context_premises, occurrence_families};
use crate::signature::{ConnId, Family, Signature};
use crate::syntax::{structure_is_branching, Formula, Position, Sequent, Side, Sign, Structure, Turnstile};

/// Tableau rules. Names follow the refutation rules they are read off from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TRule {
    Residuation(DisplayMove),
    FL(ConnId),
    GR(ConnId),
    TopL,
    BotR,
    AndR,
    OrL,
    AndL { i: Vec<Position>, j: Vec<Position> },
    OrR { i: Vec<Position>, j: Vec<Position> },
    FR(ConnId),
    GL(ConnId),
    FRNeq(ConnId, ConnId),
    GLNeq(ConnId, ConnId),
    FBot(ConnId),
    FAtom(ConnId),
    TopG(ConnId),
    AtomG(ConnId),
    FG(ConnId, ConnId),
}

impl TRule {
    pub fn name(&self, sig: &Signature) -> String {
        match self {
            TRule::Residuation(mv) => mv.label(sig),
            TRule::FL(_) => "f_L".into(),
            TRule::GR(_) => "g_R".into(),
            TRule::TopL => "⊤_L".into(),
            TRule::BotR => "⊥_R".into(),
            TRule::AndR => "∧_R".into(),
            TRule::OrL => "∨_L".into(),
            TRule::AndL { .. } => "∧_L".into(),
            TRule::OrR { .. } => "∨_R".into(),
            TRule::FR(_) => "f_R".into(),
            TRule::GL(_) => "g_L".into(),
            TRule::FRNeq(..) => "f_R≠".into(),
            TRule::GLNeq(..) => "g_L≠".into(),
            TRule::FBot(_) => "f̂⊥̌".into(),
            TRule::FAtom(_) => "f̂p".into(),
            TRule::TopG(_) => "⊤̂ǧ".into(),
            TRule::AtomG(_) => "pǧ".into(),
            TRule::FG(..) => "f̂ǧ".into(),
        }
    }

    pub fn group(&self) -> RuleGroup {
        match self {
            TRule::Residuation(_) => RuleGroup::Residuation,
            TRule::FL(_) | TRule::GR(_) | TRule::TopL | TRule::BotR => RuleGroup::Invertible,
            TRule::AndR | TRule::OrL => RuleGroup::LatticeChain,
            TRule::AndL { .. } | TRule::OrR { .. } => RuleGroup::LatticeContext,
            TRule::FR(_) | TRule::GL(_) | TRule::FRNeq(..) | TRule::GLNeq(..) => RuleGroup::Operational,
            TRule::FBot(_) | TRule::FAtom(_) | TRule::TopG(_) | TRule::AtomG(_) | TRule::FG(..) => {
                RuleGroup::Structural
            }
        }
    }

    pub fn is_residuation(&self) -> bool {
        matches!(self, TRule::Residuation(_))
    }
}

/// Priority classes; a strategy is an ordering of these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleGroup {
    /// `f_L`, `g_R`, `⊤_L`, `⊥_R`.
    Invertible,
    /// `∧_R`, `∨_L`.
    LatticeChain,
    /// `∧_L`, `∨_R`.
    LatticeContext,
    /// `f_R`, `g_L` and their mismatched-connective forms.
    Operational,
    /// Rules for structural connectives facing `⊥̌`, `⊤̂`, atoms or each other.
    Structural,
    Residuation,
}

pub const DEFAULT_STRATEGY: [RuleGroup; 6] = [
    RuleGroup::Invertible,
    RuleGroup::LatticeChain,
    RuleGroup::LatticeContext,
    RuleGroup::Operational,
    RuleGroup::Structural,
    RuleGroup::Residuation,
];

/// All 720 orderings of the rule groups, starting with the default.
pub fn strategies() -> Vec<[RuleGroup; 6]> {
    fn permute(prefix: &mut Vec<RuleGroup>, rest: &mut Vec<RuleGroup>, out: &mut Vec<[RuleGroup; 6]>) {
        if rest.is_empty() {
            out.push(prefix.clone().try_into().expect("six groups"));
            return;
        }
        for k in 0..rest.len() {
            let g = rest.remove(k);
            prefix.push(g);
            permute(prefix, rest, out);
            prefix.pop();
            rest.insert(k, g);
        }
    }
    let mut out = Vec::new();
    permute(&mut Vec::new(), &mut DEFAULT_STRATEGY.to_vec(), &mut out);
    out
}

/// One applicable rule instance: the sequent it reads and its outcomes.
/// Each alternative is a conjunctive chain; distinct alternatives are
/// distinct branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub rule: TRule,
    pub source: Sequent,
    pub alternatives: Vec<Vec<Sequent>>,
}

impl Instance {
    /// Whether some alternative is already entirely present.
    pub fn satisfied_by(&self, history: &HashSet<Sequent>) -> bool {
        self.alternatives.iter().any(|alt| alt.iter().all(|s| history.contains(s)))
    }
}

fn provable(s: Sequent) -> Sequent {
    s.with_kind(Turnstile::Provable)
}

fn singletons(seqs: Vec<Sequent>) -> Vec<Vec<Sequent>> {
    seqs.into_iter().map(|s| vec![provable(s)]).collect()
}

fn is_family(sig: &Signature, c: ConnId, family: Family) -> bool {
    sig.is_primitive(c) && sig.family(c) == family
}

/// Every rule instance whose premise is `s`, before any history filtering.
/// Instances with no alternatives are premise-free refutation rules and
/// mark `s` as an open shape instead.
pub fn instances(sig: &Signature, s: &Sequent) -> Vec<Instance> {
    use Structure::*;
    let s = &provable(s.clone());
    let mut out = Vec::new();
    let mut push = |rule: TRule, alternatives: Vec<Vec<Sequent>>| {
        out.push(Instance { rule, source: s.clone(), alternatives });
    };

    match &s.precedent {
        Leaf(Formula::App(f, args)) if is_family(sig, *f, Family::F) => {
            let st = crate::prover::structural_copy(*f, args);
            push(TRule::FL(*f), vec![vec![Sequent::provable(st, s.succedent.clone())]]);
        }
        Leaf(Formula::Top) => push(TRule::TopL, vec![vec![Sequent::provable(TopHat, s.succedent.clone())]]),
        Leaf(Formula::Or(a, b)) => push(
            TRule::OrL,
            vec![vec![
                Sequent::provable(Leaf((**a).clone()), s.succedent.clone()),
                Sequent::provable(Leaf((**b).clone()), s.succedent.clone()),
            ]],
        ),
        _ => {}
    }
    match &s.succedent {
        Leaf(Formula::App(g, args)) if is_family(sig, *g, Family::G) => {
            let st = crate::prover::structural_copy(*g, args);
            push(TRule::GR(*g), vec![vec![Sequent::provable(s.precedent.clone(), st)]]);
        }
        Leaf(Formula::Bot) => push(TRule::BotR, vec![vec![Sequent::provable(s.precedent.clone(), BotCheck)]]),
        Leaf(Formula::And(a, b)) => push(
            TRule::AndR,
            vec![vec![
                Sequent::provable(s.precedent.clone(), Leaf((**a).clone())),
                Sequent::provable(s.precedent.clone(), Leaf((**b).clone())),
            ]],
        ),
        _ => {}
    }

    if s.is_residual_free(sig) {
        if matches!(s.precedent, Leaf(Formula::And(..))) && !structure_is_branching(sig, &s.succedent, Sign::Minus) {
            let (i, j) = occurrence_families(sig, s, Side::Succedent);
            let premises = lattice_context_premises(s, Side::Succedent, &i, &j);
            push(TRule::AndL { i, j }, singletons(premises));
        }
        if matches!(s.succedent, Leaf(Formula::Or(..))) && !structure_is_branching(sig, &s.precedent, Sign::Plus) {
            let (i, j) = occurrence_families(sig, s, Side::Precedent);
            let premises = lattice_context_premises(s, Side::Precedent, &i, &j);
            push(TRule::OrR { i, j }, singletons(premises));
        }
        match (&s.precedent, &s.succedent) {
            (SApp(f, ups), BotCheck) => push(TRule::FBot(*f), singletons(f_bottom_premises(sig, *f, ups))),
            (SApp(f, ups), Leaf(Formula::Atom(_))) => push(TRule::FAtom(*f), singletons(f_bottom_premises(sig, *f, ups))),
            (TopHat, SApp(g, ups)) => push(TRule::TopG(*g), singletons(g_top_premises(sig, *g, ups))),
            (Leaf(Formula::Atom(_)), SApp(g, ups)) => push(TRule::AtomG(*g), singletons(g_top_premises(sig, *g, ups))),
            (SApp(f, ups), SApp(g, vs)) => {
                let mut premises = f_bottom_premises(sig, *f, ups);
                premises.extend(g_top_premises(sig, *g, vs));
                push(TRule::FG(*f, *g), singletons(premises));
            }
            (SApp(f1, ups), Leaf(Formula::App(f2, phis))) if is_family(sig, *f2, Family::F) => {
                let mut alternatives = singletons(f_bottom_premises(sig, *f1, ups));
                if f1 == f2 {
                    let chain = ups
                        .iter()
                        .zip(phis)
                        .enumerate()
                        .map(|(j, (u, phi))| oriented(sig, *f1, j, u.clone(), Leaf(phi.clone())))
                        .collect();
                    alternatives.push(chain);
                    push(TRule::FR(*f1), alternatives);
                } else {
                    push(TRule::FRNeq(*f1, *f2), alternatives);
                }
            }
            (Leaf(Formula::App(g1, phis)), SApp(g2, ups)) if is_family(sig, *g1, Family::G) => {
                let mut alternatives = singletons(g_top_premises(sig, *g2, ups));
                if g1 == g2 {
                    let chain = ups
                        .iter()
                        .zip(phis)
                        .enumerate()
                        .map(|(j, (u, phi))| oriented(sig, *g1, j, Leaf(phi.clone()), u.clone()))
                        .collect();
                    alternatives.push(chain);
                    push(TRule::GL(*g1), alternatives);
                } else {
                    push(TRule::GLNeq(*g1, *g2), alternatives);
                }
            }
            _ => {}
        }
    }

    for (mv, next) in display_neighbors(sig, s) {
        push(TRule::Residuation(mv), vec![vec![next]]);
    }
    out
}

/// `a ⊢^ε b` for coordinate `j` of `c`.
fn oriented(sig: &Signature, c: ConnId, j: usize, a: Structure, b: Structure) -> Sequent {
    if sig.tonicity(c, j).is_monotone() {
        Sequent::provable(a, b)
    } else {
        Sequent::provable(b, a)
    }
}

/// Applicable instances given the sequents already on the branch: residuation
/// only towards sequents not yet obtained, and other rules only when no
/// alternative is already fully present.
pub fn expand(sig: &Signature, s: &Sequent, history: &HashSet<Sequent>) -> Vec<Instance> {
    instances(sig, s)
        .into_iter()
        .filter(|inst| !inst.alternatives.is_empty() && !inst.satisfied_by(history))
        .collect()
}

/// The premise-free refutation rule matching `s`, if any.
pub fn open_shape(sig: &Signature, s: &Sequent) -> Option<&'static str> {
    use Structure::*;
    if !s.is_residual_free(sig) {
        return None;
    }
    let named = match (&s.precedent, &s.succedent) {
        (TopHat, BotCheck) => Some("Ax1"),
        (Leaf(Formula::Atom(_)), BotCheck) => Some("Ax2"),
        (TopHat, Leaf(Formula::Atom(_))) => Some("Ax3"),
        (Leaf(Formula::Atom(p)), Leaf(Formula::Atom(q))) if p != q => Some("Ax4"),
        (Leaf(Formula::App(g, _)), BotCheck) if is_family(sig, *g, Family::G) => Some("g⊥̌"),
        (Leaf(Formula::App(g, _)), Leaf(Formula::Atom(_))) if is_family(sig, *g, Family::G) => Some("gp"),
        (Leaf(Formula::App(g, _)), Leaf(Formula::App(f, _)))
            if is_family(sig, *g, Family::G) && is_family(sig, *f, Family::F) =>
        {
            Some("gf")
        }
        (Leaf(Formula::Atom(_)), Leaf(Formula::App(f, _))) if is_family(sig, *f, Family::F) => Some("pf"),
        (TopHat, Leaf(Formula::App(f, _))) if is_family(sig, *f, Family::F) => Some("⊤̂f"),
        _ => None,
    };
    if named.is_some() {
        return named;
    }
    instances(sig, s).iter().find(|inst| inst.alternatives.is_empty()).map(|inst| match inst.rule {
        TRule::FBot(_) => "f̂⊥̌",
        TRule::FAtom(_) => "f̂p",
        TRule::TopG(_) => "⊤̂ǧ",
        TRule::AtomG(_) => "pǧ",
        TRule::FG(..) => "f̂ǧ",
        TRule::FRNeq(..) => "f_R≠",
        TRule::GLNeq(..) => "g_L≠",
        _ => "nullary",
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchStatus {
    Open,
    Closed,
    /// Not grown to termination, either because an open shape was already
    /// found on it or because a closed branch elsewhere settled the verdict.
    Unterminated,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("the sequent contains residual connectives")]
    Residuals,
    #[error("the sequent is ill-typed: {0}")]
    Type(String),
    #[error("tableau budget of {0} nodes exhausted")]
    BudgetExhausted(usize),
    #[error("the branch is not terminated")]
    NotTerminated,
}

/// Classifies a terminated branch given as its list of sequents.
pub fn classify_branch(sig: &Signature, branch: &[Sequent]) -> Result<BranchStatus, TableauError> {
    let history: HashSet<Sequent> = branch.iter().cloned().collect();
    if branch.iter().any(|s| !expand(sig, s, &history).is_empty()) {
        return Err(TableauError::NotTerminated);
    }
    if branch.iter().any(|s| open_shape(sig, s).is_some()) {
        Ok(BranchStatus::Open)
    } else {
        Ok(BranchStatus::Closed)
    }
}

/// Same-branch (conjunctive) or new-branch (disjunctive) children.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchLink {
    Conjunctive,
    Disjunctive,
}

/// A rule instance applied at a node, with the branch sequent it read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Application {
    pub rule: TRule,
    pub source: Sequent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauNode {
    pub sequent: Sequent,
    /// The rule that generated the children.
    pub rule_applied: Option<Application>,
    pub branch_link: BranchLink,
    pub children: Vec<TableauNode>,
    /// Status of the branch ending here; only set on leaves.
    pub status: Option<BranchStatus>,
}

impl TableauNode {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(TableauNode::size).sum::<usize>()
    }

    /// Root-to-leaf sequent lists with the leaf status.
    pub fn branches(&self) -> Vec<(Vec<Sequent>, BranchStatus)> {
        fn walk(n: &TableauNode, path: &mut Vec<Sequent>, out: &mut Vec<(Vec<Sequent>, BranchStatus)>) {
            path.push(n.sequent.clone());
            if n.children.is_empty() {
                out.push((path.clone(), n.status.unwrap_or(BranchStatus::Unterminated)));
            }
            for c in &n.children {
                walk(c, path, out);
            }
            path.pop();
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Every rule step as (rule, sequent read, sequent produced).
    pub fn steps(&self) -> Vec<(TRule, Sequent, Sequent)> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            if let Some(app) = &n.rule_applied {
                for c in &n.children {
                    out.push((app.rule.clone(), app.source.clone(), c.sequent.clone()));
                }
            }
            stack.extend(n.children.iter());
        }
        out
    }

    /// Distinct sequents in the tree to which no rule applies at all.
    pub fn terminal_sequents(&self, sig: &Signature) -> Vec<Sequent> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            if seen.insert(n.sequent.clone()) && instances(sig, &n.sequent).is_empty() {
                out.push(n.sequent.clone());
            }
            stack.extend(n.children.iter().rev());
        }
        out
    }

    /// Whether a closed branch passes through this node.
    pub fn has_closed_branch(&self) -> bool {
        if self.children.is_empty() {
            return self.status == Some(BranchStatus::Closed);
        }
        self.children.iter().any(TableauNode::has_closed_branch)
    }

    /// Whether every branch below this node is terminated.
    pub fn is_terminated(&self) -> bool {
        if self.children.is_empty() {
            return self.status != Some(BranchStatus::Unterminated);
        }
        self.children.iter().all(TableauNode::is_terminated)
    }

    pub fn to_json(&self, sig: &Signature) -> Value {
        let mut v = json!({
            "sequent": self.sequent.display(sig).to_string(),
            "branch_link": match self.branch_link {
                BranchLink::Conjunctive => "same-branch",
                BranchLink::Disjunctive => "new-branch",
            },
            "children": self.children.iter().map(|c| c.to_json(sig)).collect::<Vec<_>>(),
        });
        if let Some(app) = &self.rule_applied {
            v["rule"] = json!(app.rule.name(sig));
            v["source"] = json!(app.source.display(sig).to_string());
        }
        if let Some(st) = self.status {
            v["status"] = json!(match st {
                BranchStatus::Open => "OPEN",
                BranchStatus::Closed => "CLOSED",
                BranchStatus::Unterminated => "UNTERMINATED",
            });
        }
        v
    }

    /// DOT rendering; nodes on a closed branch are green, nodes whose
    /// branches are all open are red.
    pub fn to_dot(&self, sig: &Signature) -> String {
        fn write(n: &TableauNode, sig: &Signature, counter: &mut usize, out: &mut String) -> usize {
            let id = *counter;
            *counter += 1;
            let color = if n.has_closed_branch() {
                "green"
            } else if n.branches().iter().all(|(_, st)| *st == BranchStatus::Open) {
                "red"
            } else {
                "gray"
            };
            out.push_str(&format!(
                "  n{} [label=\"{}\", color={}, fontcolor={}];\n",
                id,
                escape(&n.sequent.display(sig).to_string()),
                color,
                color
            ));
            for c in &n.children {
                let child = write(c, sig, counter, out);
                let label = n.rule_applied.as_ref().map(|a| a.rule.name(sig)).unwrap_or_default();
                let style = match n.branch_link {
                    BranchLink::Conjunctive => "solid",
                    BranchLink::Disjunctive => "dashed",
                };
                out.push_str(&format!("  n{} -> n{} [label=\"{}\", style={}];\n", id, child, escape(&label), style));
            }
            id
        }
        let mut out = String::from("digraph tableau {\n  node [shape=box, fontname=\"monospace\"];\n");
        write(self, sig, &mut 0, &mut out);
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid,
}

/// Resource limits and growth mode.
#[derive(Clone, Copy, Debug)]
pub struct TableauConfig {
    /// Total tree nodes allowed per strategy.
    pub max_nodes: usize,
    /// How many strategies to try before reporting the verdict of the last.
    pub max_strategies: usize,
    /// Grow every branch to termination instead of stopping at the first
    /// open shape on a branch and at the first closed branch overall.
    pub saturate: bool,
}

impl Default for TableauConfig {
    fn default() -> Self {
        TableauConfig { max_nodes: 2_000_000, max_strategies: 1, saturate: false }
    }
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub tree: TableauNode,
    /// Index into [`strategies`] of the strategy that produced `tree`.
    pub strategy: usize,
}

/// Decides validity of a residual-free sequent.
pub fn decide(sig: &Signature, s: &Sequent, config: TableauConfig) -> Result<Decision, TableauError> {
    s.check_type(sig).map_err(|e| TableauError::Type(e.to_string()))?;
    if !s.is_residual_free(sig) {
        return Err(TableauError::Residuals);
    }
    let all = strategies();
    let tries = config.max_strategies.clamp(1, all.len());
    let mut last = None;
    for (index, order) in all.iter().take(tries).enumerate() {
        let tree = build(sig, s, order, config)?;
        let verdict = if tree.has_closed_branch() { Verdict::Valid } else { Verdict::Invalid };
        let decision = Decision { verdict, tree, strategy: index };
        if verdict == Verdict::Valid {
            return Ok(decision);
        }
        last = Some(decision);
    }
    Ok(last.expect("at least one strategy"))
}

/// Grows one tableau tree under a fixed strategy.
pub fn build(
    sig: &Signature,
    s: &Sequent,
    order: &[RuleGroup; 6],
    config: TableauConfig,
) -> Result<TableauNode, TableauError> {
    let mut grower = Grower { sig, order: *order, config, nodes: 1, cache: HashMap::new(), done: false };
    let root = provable(s.clone());
    let mut state = Branch { history: HashSet::new(), queues: Default::default(), open: false };
    grower.add(&mut state, &root);
    let (rule_applied, branch_link, children, status) = grower.grow(state)?;
    Ok(TableauNode { sequent: root, rule_applied, branch_link, children, status })
}

#[derive(Clone)]
struct Branch {
    history: HashSet<Sequent>,
    /// Pending instances per rule group, in arrival order.
    queues: [Vec<Rc<Instance>>; 6],
    open: bool,
}

struct Grower<'a> {
    sig: &'a Signature,
    order: [RuleGroup; 6],
    config: TableauConfig,
    nodes: usize,
    cache: HashMap<Sequent, Rc<Vec<Rc<Instance>>>>,
    done: bool,
}

type Growth = (Option<Application>, BranchLink, Vec<TableauNode>, Option<BranchStatus>);

impl Grower<'_> {
    fn add(&mut self, b: &mut Branch, s: &Sequent) {
        b.history.insert(s.clone());
        if open_shape(self.sig, s).is_some() {
            b.open = true;
        }
        let sig = self.sig;
        let list = self
            .cache
            .entry(s.clone())
            .or_insert_with(|| {
                Rc::new(
                    instances(sig, s).into_iter().filter(|i| !i.alternatives.is_empty()).map(Rc::new).collect(),
                )
            })
            .clone();
        for inst in list.iter() {
            b.queues[inst.rule.group() as usize].push(inst.clone());
        }
    }

    fn next(&self, b: &mut Branch) -> Option<Rc<Instance>> {
        for g in self.order {
            let q = &mut b.queues[g as usize];
            while !q.is_empty() {
                let inst = q.remove(0);
                if !inst.satisfied_by(&b.history) {
                    return Some(inst);
                }
            }
        }
        None
    }

    fn bump(&mut self, k: usize) -> Result<(), TableauError> {
        self.nodes += k;
        if self.nodes > self.config.max_nodes {
            Err(TableauError::BudgetExhausted(self.config.max_nodes))
        } else {
            Ok(())
        }
    }

    /// Grows the branch whose state is `b`, returning what hangs below its
    /// last node.
    fn grow(&mut self, mut b: Branch) -> Result<Growth, TableauError> {
        if self.done {
            return Ok((None, BranchLink::Conjunctive, Vec::new(), Some(BranchStatus::Unterminated)));
        }
        if b.open && !self.config.saturate {
            return Ok((None, BranchLink::Conjunctive, Vec::new(), Some(BranchStatus::Unterminated)));
        }
        let inst = match self.next(&mut b) {
            None => {
                let status = if b.open { BranchStatus::Open } else { BranchStatus::Closed };
                if status == BranchStatus::Closed && !self.config.saturate {
                    self.done = true;
                }
                return Ok((None, BranchLink::Conjunctive, Vec::new(), Some(status)));
            }
            Some(inst) => inst,
        };
        let app = Application { rule: inst.rule.clone(), source: inst.source.clone() };
        let fresh: Vec<Vec<Sequent>> = inst
            .alternatives
            .iter()
            .map(|alt| {
                let mut seen = HashSet::new();
                alt.iter().filter(|s| !b.history.contains(*s) && seen.insert((*s).clone())).cloned().collect()
            })
            .collect();
        if fresh.len() == 1 {
            let chain = fresh.into_iter().next().expect("one alternative");
            let child = self.chain(b, &app, chain)?;
            return Ok((Some(app), BranchLink::Conjunctive, vec![child], None));
        }
        let mut children = Vec::new();
        for chain in fresh {
            if self.done {
                break;
            }
            let child = self.chain(b.clone(), &app, chain)?;
            children.push(child);
        }
        Ok((Some(app), BranchLink::Disjunctive, children, None))
    }

    /// Adds a conjunctive chain of new sequents and grows below its end.
    fn chain(&mut self, mut b: Branch, app: &Application, chain: Vec<Sequent>) -> Result<TableauNode, TableauError> {
        self.bump(chain.len())?;
        for s in &chain {
            self.add(&mut b, s);
        }
        let (rule_applied, branch_link, children, status) = self.grow(b)?;
        let mut iter = chain.into_iter().rev();
        let last = iter.next().expect("alternatives add at least one sequent");
        let mut node = TableauNode { sequent: last, rule_applied, branch_link, children, status };
        for s in iter {
            node = TableauNode {
                sequent: s,
                rule_applied: Some(app.clone()),
                branch_link: BranchLink::Conjunctive,
                children: vec![node],
                status: None,
            };
        }
        Ok(node)
    }
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

    fn seq(text: &str) -> Sequent {
        parse_sequent(&sig(), text).unwrap()
    }

    fn verdict(text: &str) -> Verdict {
        decide(&sig(), &seq(text), TableauConfig::default()).unwrap().verdict
    }

    #[test]
    fn atoms_have_no_rules() {
        assert!(expand(&sig(), &seq("p |- q"), &HashSet::new()).is_empty());
        assert_eq!(classify_branch(&sig(), &[seq("p |- q")]), Ok(BranchStatus::Open));
        assert_eq!(classify_branch(&sig(), &[seq("p |- p")]), Ok(BranchStatus::Closed));
    }

    #[test]
    fn structural_rule_and_residuation() {
        let s = seq("^f(p) |- ~B");
        let found = expand(&sig(), &s, &HashSet::new());
        assert!(found.iter().any(|i| i.rule == TRule::FBot(sig().lookup("f").unwrap())
            && i.alternatives == vec![vec![seq("p |- ~B")]]));
        assert!(found.iter().any(|i| i.rule.is_residuation()));
    }

    #[test]
    fn operational_rule_alternatives() {
        let s = seq("^f(p) |- f(p)");
        let found = expand(&sig(), &s, &HashSet::new());
        let fr = found.iter().find(|i| matches!(i.rule, TRule::FR(_))).unwrap();
        assert_eq!(fr.alternatives, vec![vec![seq("p |- ~B")], vec![seq("p |- p")]]);
    }

    #[test]
    fn verdicts() {
        assert_eq!(verdict("f(p) |- f(p)"), Verdict::Valid);
        assert_eq!(verdict("bot |- p"), Verdict::Valid);
        assert_eq!(verdict("g(p) & g(q) |- g(p & q)"), Verdict::Valid);
        assert_eq!(verdict("g(p | q) |- g(p) | g(q)"), Verdict::Invalid);
        assert_eq!(verdict("top |- p"), Verdict::Invalid);
        assert_eq!(verdict("c |- c"), Verdict::Valid);
        assert_eq!(verdict("c |- d"), Verdict::Invalid);
        assert_eq!(verdict("h(p, q) |- h(p, q & r)"), Verdict::Valid);
        assert_eq!(verdict("h(p, q & r) |- h(p, q)"), Verdict::Invalid);
    }

    #[test]
    fn saturated_open_tree() {
        let s = seq("g(p | q) |- g(p) | g(q)");
        let config = TableauConfig { saturate: true, ..TableauConfig::default() };
        let d = decide(&sig(), &s, config).unwrap();
        assert_eq!(d.verdict, Verdict::Invalid);
        assert!(d.tree.is_terminated());
        let leaves = d.tree.terminal_sequents(&sig());
        for want in ["q |- p", "^T |- p", "p |- q", "^T |- q"] {
            assert!(leaves.contains(&seq(want)), "missing {}", want);
        }
        for (branch, status) in d.tree.branches() {
            assert_eq!(status, BranchStatus::Open);
            assert_eq!(classify_branch(&sig(), &branch), Ok(BranchStatus::Open));
        }
    }

    #[test]
    fn strategy_invariance() {
        for text in ["g(p) & g(q) |- g(p & q)", "g(p | q) |- g(p) | g(q)", "f(p | q) |- f(p) | f(q)"] {
            let s = seq(text);
            let verdicts: HashSet<bool> = strategies()
                .iter()
                .step_by(37)
                .map(|o| build(&sig(), &s, o, TableauConfig::default()).unwrap().has_closed_branch())
                .collect();
            assert_eq!(verdicts.len(), 1, "{}", text);
        }
    }
}
