//! Formulas, structures and (anti)sequents over a [`Signature`].
//!
//! Structures are polarity-typed trees: a precedent structure is a formula,
//! `⊤̂`, or an F-family structural node; a succedent structure is a formula,
//! `⊥̌`, or a G-family structural node. The type of each argument follows the
//! parent's order-type. Occurrences are addressed positionally by
//! [`Position`], never by structural equality.

mod parse;
mod print;

pub use parse::{parse_formula, parse_sequent, parse_structure, ParseError};
pub use print::{FormulaDisplay, SequentDisplay, StructureDisplay};

use serde::Serialize;
use thiserror::Error;

use crate::signature::{ConnId, Family, Signature, Tonicity};

/// Operational formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    App(ConnId, Vec<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// Nesting depth; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 0,
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
            Formula::App(_, args) => 1 + args.iter().map(Formula::depth).max().unwrap_or(0),
        }
    }

    /// Number of connective nodes, constants included.
    pub fn connective_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Top | Formula::Bot => 1,
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.connective_count() + b.connective_count(),
            Formula::App(_, args) => 1 + args.iter().map(Formula::connective_count).sum::<usize>(),
        }
    }

    fn atom_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Top | Formula::Bot => 0,
            Formula::And(a, b) | Formula::Or(a, b) => a.atom_count() + b.atom_count(),
            Formula::App(_, args) => args.iter().map(Formula::atom_count).sum(),
        }
    }

    pub fn collect_atoms(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom(p) => {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
            Formula::Top | Formula::Bot => {}
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::App(_, args) => args.iter().for_each(|a| a.collect_atoms(out)),
        }
    }

    /// True when some operational node is a residual connective.
    pub fn has_residual(&self, sig: &Signature) -> bool {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => false,
            Formula::And(a, b) | Formula::Or(a, b) => a.has_residual(sig) || b.has_residual(sig),
            Formula::App(c, args) => !sig.is_primitive(*c) || args.iter().any(|a| a.has_residual(sig)),
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> FormulaDisplay<'a> {
        FormulaDisplay { formula: self, sig }
    }
}

/// Structural terms. `TopHat` is `⊤̂`, `BotCheck` is `⊥̌`; `SApp` carries a
/// connective of `F* ∪ G*` whose family decides the hat/check marker.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    Leaf(Formula),
    TopHat,
    BotCheck,
    SApp(ConnId, Vec<Structure>),
}

impl Structure {
    pub fn leaf(f: Formula) -> Structure {
        Structure::Leaf(f)
    }

    pub fn as_formula(&self) -> Option<&Formula> {
        match self {
            Structure::Leaf(f) => Some(f),
            _ => None,
        }
    }

    /// Subtree at a root-to-node coordinate path.
    pub fn at(&self, path: &[usize]) -> Option<&Structure> {
        let mut cur = self;
        for &i in path {
            match cur {
                Structure::SApp(_, args) => cur = args.get(i)?,
                _ => return None,
            }
        }
        Some(cur)
    }

    /// Copy with the subtree at `path` replaced.
    pub fn replace_at(&self, path: &[usize], replacement: Structure) -> Option<Structure> {
        if path.is_empty() {
            return Some(replacement);
        }
        match self {
            Structure::SApp(c, args) => {
                let i = path[0];
                let child = args.get(i)?.replace_at(&path[1..], replacement)?;
                let mut args = args.clone();
                args[i] = child;
                Some(Structure::SApp(*c, args))
            }
            _ => None,
        }
    }

    /// True when no structural node is a residual connective.
    pub fn is_residual_free(&self, sig: &Signature) -> bool {
        match self {
            Structure::Leaf(f) => !f.has_residual(sig),
            Structure::TopHat | Structure::BotCheck => true,
            Structure::SApp(c, args) => sig.is_primitive(*c) && args.iter().all(|a| a.is_residual_free(sig)),
        }
    }

    /// Structural residual-freeness only, ignoring formula leaves.
    pub fn has_structural_residual(&self, sig: &Signature) -> bool {
        match self {
            Structure::Leaf(_) | Structure::TopHat | Structure::BotCheck => false,
            Structure::SApp(c, args) => !sig.is_primitive(*c) || args.iter().any(|a| a.has_structural_residual(sig)),
        }
    }

    /// Number of vertices of the generation tree; formulas are single vertices.
    pub fn vertex_count(&self) -> usize {
        match self {
            Structure::SApp(_, args) => 1 + args.iter().map(Structure::vertex_count).sum::<usize>(),
            _ => 1,
        }
    }

    /// Structural depth; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Structure::SApp(_, args) => 1 + args.iter().map(Structure::depth).max().unwrap_or(0),
            _ => 0,
        }
    }

    fn logical_count(&self) -> usize {
        match self {
            Structure::Leaf(f) => f.connective_count(),
            Structure::TopHat | Structure::BotCheck => 0,
            Structure::SApp(_, args) => args.iter().map(Structure::logical_count).sum(),
        }
    }

    fn structural_count(&self) -> usize {
        match self {
            Structure::Leaf(_) => 0,
            Structure::TopHat | Structure::BotCheck => 1,
            Structure::SApp(_, args) => 1 + args.iter().map(Structure::structural_count).sum::<usize>(),
        }
    }

    fn atom_count(&self) -> usize {
        match self {
            Structure::Leaf(f) => f.atom_count(),
            Structure::TopHat | Structure::BotCheck => 0,
            Structure::SApp(_, args) => args.iter().map(Structure::atom_count).sum(),
        }
    }

    /// Total number of connectives, logical and structural, nullary included.
    pub fn connective_count(&self) -> usize {
        self.logical_count() + self.structural_count()
    }

    pub fn collect_atoms(&self, out: &mut Vec<String>) {
        match self {
            Structure::Leaf(f) => f.collect_atoms(out),
            Structure::TopHat | Structure::BotCheck => {}
            Structure::SApp(_, args) => args.iter().for_each(|a| a.collect_atoms(out)),
        }
    }

    /// Checks the polarity typing: `want` is the polarity this structure must have.
    pub fn check_type(&self, sig: &Signature, want: Polarity) -> Result<(), TypeError> {
        match self {
            Structure::Leaf(f) => check_formula(sig, f),
            Structure::TopHat => match want {
                Polarity::Pre => Ok(()),
                Polarity::Suc => Err(TypeError::Polarity("⊤̂ in succedent position".into())),
            },
            Structure::BotCheck => match want {
                Polarity::Suc => Ok(()),
                Polarity::Pre => Err(TypeError::Polarity("⊥̌ in precedent position".into())),
            },
            Structure::SApp(c, args) => {
                let desc = sig.get(*c);
                if Polarity::of_family(desc.family) != want {
                    return Err(TypeError::Polarity(format!(
                        "structural `{}` in {} position",
                        desc.name,
                        want.describe()
                    )));
                }
                if args.len() != desc.arity {
                    return Err(TypeError::Arity { name: desc.name.clone(), expected: desc.arity, found: args.len() });
                }
                for (i, a) in args.iter().enumerate() {
                    a.check_type(sig, want.through(desc.order_type[i]))?;
                }
                Ok(())
            }
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> StructureDisplay<'a> {
        StructureDisplay { structure: self, sig }
    }
}

/// Checks connective arities inside a formula.
pub fn check_formula(sig: &Signature, f: &Formula) -> Result<(), TypeError> {
    match f {
        Formula::Atom(_) | Formula::Top | Formula::Bot => Ok(()),
        Formula::And(a, b) | Formula::Or(a, b) => {
            check_formula(sig, a)?;
            check_formula(sig, b)
        }
        Formula::App(c, args) => {
            let desc = sig.get(*c);
            if args.len() != desc.arity {
                return Err(TypeError::Arity { name: desc.name.clone(), expected: desc.arity, found: args.len() });
            }
            args.iter().try_for_each(|a| check_formula(sig, a))
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("polarity mismatch: {0}")]
    Polarity(String),
    #[error("`{name}` expects {expected} arguments, found {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("position does not address a subtree")]
    BadPosition,
}

/// `⊢` or `⊬`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Turnstile {
    Provable,
    Refutable,
}

/// A sequent `Π ⊢ Σ` or an antisequent `Π ⊬ Σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub precedent: Structure,
    pub succedent: Structure,
    pub kind: Turnstile,
}

/// Side of the turnstile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Precedent,
    Succedent,
}

/// Displayable polarity of an occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Polarity {
    Pre,
    Suc,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Pre => Polarity::Suc,
            Polarity::Suc => Polarity::Pre,
        }
    }

    /// Polarity of a child reached through a coordinate of the given tonicity.
    pub fn through(self, t: Tonicity) -> Polarity {
        if t.is_monotone() {
            self
        } else {
            self.flip()
        }
    }

    /// F-family structures live in precedent position, G-family ones in succedent position.
    pub fn of_family(family: Family) -> Polarity {
        match family {
            Family::F => Polarity::Pre,
            Family::G => Polarity::Suc,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Polarity::Pre => "precedent",
            Polarity::Suc => "succedent",
        }
    }
}

impl Side {
    pub fn polarity(self) -> Polarity {
        match self {
            Side::Precedent => Polarity::Pre,
            Side::Succedent => Polarity::Suc,
        }
    }
}

/// Address of a substructure occurrence inside a sequent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Position {
    pub side: Side,
    pub path: Vec<usize>,
    pub polarity: Polarity,
}

impl Position {
    pub fn root(side: Side) -> Position {
        Position { side, path: Vec::new(), polarity: side.polarity() }
    }
}

impl Sequent {
    pub fn new(precedent: Structure, succedent: Structure, kind: Turnstile) -> Sequent {
        Sequent { precedent, succedent, kind }
    }

    pub fn provable(precedent: Structure, succedent: Structure) -> Sequent {
        Sequent::new(precedent, succedent, Turnstile::Provable)
    }

    pub fn refutable(precedent: Structure, succedent: Structure) -> Sequent {
        Sequent::new(precedent, succedent, Turnstile::Refutable)
    }

    /// Formula sequent `φ ⊢ ψ`.
    pub fn formulas(phi: Formula, psi: Formula) -> Sequent {
        Sequent::provable(Structure::Leaf(phi), Structure::Leaf(psi))
    }

    pub fn with_kind(&self, kind: Turnstile) -> Sequent {
        Sequent { precedent: self.precedent.clone(), succedent: self.succedent.clone(), kind }
    }

    pub fn side(&self, side: Side) -> &Structure {
        match side {
            Side::Precedent => &self.precedent,
            Side::Succedent => &self.succedent,
        }
    }

    pub fn at(&self, pos: &Position) -> Option<&Structure> {
        self.side(pos.side).at(&pos.path)
    }

    pub fn is_residual_free(&self, sig: &Signature) -> bool {
        self.precedent.is_residual_free(sig) && self.succedent.is_residual_free(sig)
    }

    pub fn check_type(&self, sig: &Signature) -> Result<(), TypeError> {
        self.precedent.check_type(sig, Polarity::Pre)?;
        self.succedent.check_type(sig, Polarity::Suc)
    }

    /// Edges of the generation tree: both structure trees plus the turnstile edge.
    pub fn edge_count(&self) -> usize {
        self.precedent.vertex_count() - 1 + self.succedent.vertex_count() - 1 + 1
    }

    pub fn connective_count(&self) -> usize {
        self.precedent.connective_count() + self.succedent.connective_count()
    }

    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.precedent.collect_atoms(&mut out);
        self.succedent.collect_atoms(&mut out);
        out
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> SequentDisplay<'a> {
        SequentDisplay { sequent: self, sig }
    }
}

/// Logical connectives plus all connectives plus twice the atom occurrences.
pub fn complexity(s: &Sequent) -> usize {
    let logical = s.precedent.logical_count() + s.succedent.logical_count();
    let all = logical + s.precedent.structural_count() + s.succedent.structural_count();
    let atoms = s.precedent.atom_count() + s.succedent.atom_count();
    logical + all + 2 * atoms
}

/// Every substructure occurrence (formula leaves are atomic), in pre-order,
/// precedent first.
pub fn positions(sig: &Signature, s: &Sequent) -> Vec<Position> {
    let mut out = Vec::new();
    for side in [Side::Precedent, Side::Succedent] {
        let mut path = Vec::new();
        collect_positions(sig, s.side(side), side, side.polarity(), &mut path, &mut out);
    }
    out
}

fn collect_positions(
    sig: &Signature,
    st: &Structure,
    side: Side,
    pol: Polarity,
    path: &mut Vec<usize>,
    out: &mut Vec<Position>,
) {
    out.push(Position { side, path: path.clone(), polarity: pol });
    if let Structure::SApp(c, args) = st {
        for (i, a) in args.iter().enumerate() {
            path.push(i);
            collect_positions(sig, a, side, pol.through(sig.tonicity(*c, i)), path, out);
            path.pop();
        }
    }
}

/// Positions holding formula leaves.
pub fn leaf_positions<'a>(sig: &Signature, s: &'a Sequent) -> Vec<(Position, &'a Formula)> {
    positions(sig, s)
        .into_iter()
        .filter_map(|p| match s.at(&p) {
            Some(Structure::Leaf(_)) => {
                let f = s.at(&p).and_then(Structure::as_formula).expect("leaf");
                Some((p, f))
            }
            _ => None,
        })
        .collect()
}

/// Replaces the occurrence at `at`, checking the replacement's polarity type.
pub fn substitute(sig: &Signature, s: &Sequent, at: &Position, replacement: Structure) -> Result<Sequent, TypeError> {
    if s.at(at).is_none() {
        return Err(TypeError::BadPosition);
    }
    replacement.check_type(sig, at.polarity)?;
    Ok(substitute_unchecked(s, at, replacement))
}

/// Positional replacement without re-validating the replacement's type.
pub fn substitute_unchecked(s: &Sequent, at: &Position, replacement: Structure) -> Sequent {
    let mut out = s.clone();
    let target = match at.side {
        Side::Precedent => &mut out.precedent,
        Side::Succedent => &mut out.succedent,
    };
    *target = target.replace_at(&at.path, replacement).expect("position addresses a subtree");
    out
}

/// Sign of a node in a signed generation tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn through(self, t: Tonicity) -> Sign {
        if t.is_monotone() {
            self
        } else {
            self.flip()
        }
    }
}

/// Label of a generation-tree node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeLabel {
    Atom(String),
    Top,
    Bot,
    And,
    Or,
    /// Operational connective.
    Op(ConnId),
    /// Structural connective.
    Struct(ConnId),
    TopHat,
    BotCheck,
}

/// A node of a signed generation tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedNode {
    pub label: NodeLabel,
    pub sign: Sign,
    pub children: Vec<SignedNode>,
}

/// Signed generation tree of a structure; signs propagate through
/// structural and operational nodes alike.
pub fn signed_tree(sig: &Signature, s: &Structure, root_sign: Sign) -> SignedNode {
    match s {
        Structure::Leaf(f) => signed_formula(sig, f, root_sign),
        Structure::TopHat => SignedNode { label: NodeLabel::TopHat, sign: root_sign, children: vec![] },
        Structure::BotCheck => SignedNode { label: NodeLabel::BotCheck, sign: root_sign, children: vec![] },
        Structure::SApp(c, args) => SignedNode {
            label: NodeLabel::Struct(*c),
            sign: root_sign,
            children: args
                .iter()
                .enumerate()
                .map(|(i, a)| signed_tree(sig, a, root_sign.through(sig.tonicity(*c, i))))
                .collect(),
        },
    }
}

fn signed_formula(sig: &Signature, f: &Formula, sign: Sign) -> SignedNode {
    let (label, children) = match f {
        Formula::Atom(p) => (NodeLabel::Atom(p.clone()), vec![]),
        Formula::Top => (NodeLabel::Top, vec![]),
        Formula::Bot => (NodeLabel::Bot, vec![]),
        Formula::And(a, b) => (NodeLabel::And, vec![signed_formula(sig, a, sign), signed_formula(sig, b, sign)]),
        Formula::Or(a, b) => (NodeLabel::Or, vec![signed_formula(sig, a, sign), signed_formula(sig, b, sign)]),
        Formula::App(c, args) => (
            NodeLabel::Op(*c),
            args.iter()
                .enumerate()
                .map(|(i, a)| signed_formula(sig, a, sign.through(sig.tonicity(*c, i))))
                .collect(),
        ),
    };
    SignedNode { label, sign, children }
}

impl SignedNode {
    /// JSON rendering `{"node":…, "sign":…, "children":[…]}`.
    pub fn to_json(&self, sig: &Signature) -> serde_json::Value {
        let node = match &self.label {
            NodeLabel::Atom(p) => p.clone(),
            NodeLabel::Top => "top".into(),
            NodeLabel::Bot => "bot".into(),
            NodeLabel::And => "&".into(),
            NodeLabel::Or => "|".into(),
            NodeLabel::Op(c) => sig.name(*c).to_string(),
            NodeLabel::Struct(c) => {
                let marker = if sig.family(*c) == Family::F { "^" } else { "~" };
                format!("{}{}", marker, sig.name(*c))
            }
            NodeLabel::TopHat => "^T".into(),
            NodeLabel::BotCheck => "~B".into(),
        };
        serde_json::json!({
            "node": node,
            "sign": self.sign,
            "children": self.children.iter().map(|c| c.to_json(sig)).collect::<Vec<_>>(),
        })
    }

    /// Whether this node may guard a branching node: `+f`, `+f̂`, `−g`, `−ǧ`
    /// for primitive `f ∈ F`, `g ∈ G`.
    fn is_guard(&self, sig: &Signature) -> bool {
        let c = match self.label {
            NodeLabel::Op(c) | NodeLabel::Struct(c) => c,
            _ => return false,
        };
        sig.is_primitive(c)
            && matches!((sig.family(c), self.sign), (Family::F, Sign::Plus) | (Family::G, Sign::Minus))
    }

    fn is_branching_node(&self) -> bool {
        matches!((&self.label, self.sign), (NodeLabel::Or, Sign::Plus) | (NodeLabel::And, Sign::Minus))
    }

    fn has_guarded_branching(&self, sig: &Signature) -> bool {
        if self.is_branching_node() {
            return true;
        }
        self.is_guard(sig) && self.children.iter().any(|c| c.has_guarded_branching(sig))
    }
}

/// Whether a structure, signed with `root_sign`, contains a `+∨` or `−∧` node
/// whose strict ancestors are all guards.
pub fn structure_is_branching(sig: &Signature, s: &Structure, root_sign: Sign) -> bool {
    signed_tree(sig, s, root_sign).has_guarded_branching(sig)
}

/// Branching test on a sequent: precedent signed `+`, succedent signed `−`.
pub fn is_branching(sig: &Signature, s: &Sequent) -> bool {
    structure_is_branching(sig, &s.precedent, Sign::Plus) || structure_is_branching(sig, &s.succedent, Sign::Minus)
}
