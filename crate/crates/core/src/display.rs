//! Display postulates as reversible single-step rewrites.
//!
//! Every postulate acts on the root node of one side of the turnstile. A
//! primitive root moves one of its arguments across the turnstile and becomes
//! the corresponding residual (forward); a residual root moves its origin
//! coordinate back and becomes its parent again (backward). Viewing the
//! sequent as an unrooted tree with a marked turnstile edge, each move shifts
//! the turnstile to a neighbouring edge.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::signature::{ConnId, Family, Signature, Tonicity};
use crate::syntax::{Polarity, Position, Sequent, Side, Structure, TypeError};

/// Which postulate pair a move instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PostulateKind {
    /// `f̂ ⊣ f̌♯_i` for a monotone coordinate of an F connective.
    FRes,
    /// `(f̂, f̂♯_i)` for an antitone coordinate of an F connective.
    FGal,
    /// `ĝ♭_i ⊣ ǧ` for a monotone coordinate of a G connective.
    GRes,
    /// `(ǧ, ǧ♭_i)` for an antitone coordinate of a G connective.
    GGal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// From the primitive form to the residual form.
    Forward,
    /// From the residual form back to the primitive form.
    Backward,
}

/// One application of a display postulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DisplayMove {
    pub kind: PostulateKind,
    /// The primitive connective whose postulate is used.
    pub conn: ConnId,
    /// 0-based coordinate.
    pub coordinate: usize,
    pub direction: Direction,
}

impl DisplayMove {
    pub fn inverse(self) -> DisplayMove {
        DisplayMove {
            direction: match self.direction {
                Direction::Forward => Direction::Backward,
                Direction::Backward => Direction::Forward,
            },
            ..self
        }
    }

    /// Tag such as `F_RES(f,1)`, with a 1-based coordinate.
    pub fn tag(&self, sig: &Signature) -> String {
        let kind = match self.kind {
            PostulateKind::FRes => "F_RES",
            PostulateKind::FGal => "F_GAL",
            PostulateKind::GRes => "G_RES",
            PostulateKind::GGal => "G_GAL",
        };
        format!("{}({},{})", kind, sig.name(self.conn), self.coordinate + 1)
    }

    /// Tag plus an arrow marking the direction.
    pub fn label(&self, sig: &Signature) -> String {
        let arrow = match self.direction {
            Direction::Forward => "",
            Direction::Backward => "^-1",
        };
        format!("{}{}", self.tag(sig), arrow)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        struct D<'a>(&'a DisplayMove, &'a Signature);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.label(self.1))
            }
        }
        D(self, sig)
    }
}

fn postulate_kind(family: Family, t: Tonicity) -> PostulateKind {
    match (family, t) {
        (Family::F, Tonicity::Monotone) => PostulateKind::FRes,
        (Family::F, Tonicity::Antitone) => PostulateKind::FGal,
        (Family::G, Tonicity::Monotone) => PostulateKind::GRes,
        (Family::G, Tonicity::Antitone) => PostulateKind::GGal,
    }
}

fn side_of(family: Family) -> Side {
    match family {
        Family::F => Side::Precedent,
        Family::G => Side::Succedent,
    }
}

fn other(side: Side) -> Side {
    match side {
        Side::Precedent => Side::Succedent,
        Side::Succedent => Side::Precedent,
    }
}

/// Rewrites the root of `side`, moving argument `i` across the turnstile and
/// relabelling the root to `label`. Returns the new sequent and the side now
/// holding the moved argument.
fn rewrite_root(sig: &Signature, s: &Sequent, side: Side, i: usize, label: ConnId) -> (Sequent, Side) {
    let (args, opposite) = match s.side(side) {
        Structure::SApp(_, args) => (args, s.side(other(side))),
        _ => unreachable!("caller checked the root is structural"),
    };
    let mut new_args = args.clone();
    let child = std::mem::replace(&mut new_args[i], opposite.clone());
    let node = Structure::SApp(label, new_args);
    let node_side = side_of(sig.family(label));
    let (pre, suc) = match node_side {
        Side::Precedent => (node, child),
        Side::Succedent => (child, node),
    };
    (Sequent::new(pre, suc, s.kind), other(node_side))
}

/// The move available at the root of `side` in coordinate `i`, if any.
fn move_at(sig: &Signature, s: &Sequent, side: Side, i: usize) -> Option<(DisplayMove, ConnId)> {
    let c = match s.side(side) {
        Structure::SApp(c, args) if i < args.len() => *c,
        _ => return None,
    };
    match sig.residual_origin(c) {
        None => {
            let mv = DisplayMove {
                kind: postulate_kind(sig.family(c), sig.tonicity(c, i)),
                conn: c,
                coordinate: i,
                direction: Direction::Forward,
            };
            Some((mv, sig.residual_id(c, i)))
        }
        Some((parent, j)) if j == i => {
            let mv = DisplayMove {
                kind: postulate_kind(sig.family(parent), sig.tonicity(parent, j)),
                conn: parent,
                coordinate: j,
                direction: Direction::Backward,
            };
            Some((mv, parent))
        }
        Some(_) => None,
    }
}

/// Applies a specific move, if its pattern matches the sequent.
pub fn apply_move(sig: &Signature, s: &Sequent, mv: &DisplayMove) -> Option<Sequent> {
    let root_conn = match mv.direction {
        Direction::Forward => mv.conn,
        Direction::Backward => sig.residual_id(mv.conn, mv.coordinate),
    };
    let side = side_of(sig.family(root_conn));
    match s.side(side) {
        Structure::SApp(c, _) if *c == root_conn => {}
        _ => return None,
    }
    let (found, label) = move_at(sig, s, side, mv.coordinate)?;
    debug_assert_eq!(found, *mv);
    Some(rewrite_root(sig, s, side, mv.coordinate, label).0)
}

/// All sequents one postulate application away, in both directions.
pub fn display_neighbors(sig: &Signature, s: &Sequent) -> Vec<(DisplayMove, Sequent)> {
    let mut out = Vec::new();
    for side in [Side::Precedent, Side::Succedent] {
        if let Structure::SApp(_, args) = s.side(side) {
            for i in 0..args.len() {
                if let Some((mv, label)) = move_at(sig, s, side, i) {
                    out.push((mv, rewrite_root(sig, s, side, i, label).0));
                }
            }
        }
    }
    out
}

/// Closure of `{s}` under display moves, in breadth-first order starting with `s`.
pub fn equivalence_class(sig: &Signature, s: &Sequent) -> Vec<Sequent> {
    let mut seen = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(s.clone());
    queue.push_back(s.clone());
    while let Some(cur) = queue.pop_front() {
        for (_, next) in display_neighbors(sig, &cur) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        order.push(cur);
    }
    order
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DisplayError {
    #[error("position does not address a substructure")]
    BadPosition,
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// The class member displaying the occurrence at `at`, with the moves leading to it.
pub fn display_path(sig: &Signature, s: &Sequent, at: &Position) -> Result<(Sequent, Vec<DisplayMove>), DisplayError> {
    if s.at(at).is_none() {
        return Err(DisplayError::BadPosition);
    }
    let mut cur = s.clone();
    let mut side = at.side;
    let mut moves = Vec::new();
    for &i in &at.path {
        let c = match cur.side(side) {
            Structure::SApp(c, _) => *c,
            _ => return Err(DisplayError::BadPosition),
        };
        if let Some((parent, j)) = sig.residual_origin(c) {
            if j != i {
                // Step back to the primitive orientation first.
                let (mv, label) = move_at(sig, &cur, side, j).expect("backward move exists");
                let (next, _) = rewrite_root(sig, &cur, side, j, label);
                debug_assert_eq!(label, parent);
                moves.push(mv);
                cur = next;
                side = side_of(sig.family(parent));
            }
        }
        let (mv, label) = move_at(sig, &cur, side, i).expect("move exists on the display path");
        let (next, child_side) = rewrite_root(sig, &cur, side, i, label);
        moves.push(mv);
        cur = next;
        side = child_side;
    }
    debug_assert_eq!(side.polarity(), at.polarity);
    Ok((cur, moves))
}

/// The class member in which the occurrence at `at` is an entire side.
pub fn display_at(sig: &Signature, s: &Sequent, at: &Position) -> Result<Sequent, DisplayError> {
    Ok(display_path(sig, s, at)?.0)
}

/// Displays `at`, replaces the displayed side, then undoes the moves.
pub fn subst_displayed(
    sig: &Signature,
    s: &Sequent,
    at: &Position,
    replacement: Structure,
) -> Result<Sequent, DisplayError> {
    let (displayed, moves) = display_path(sig, s, at)?;
    replacement.check_type(sig, at.polarity)?;
    let mut cur = displayed;
    match at.polarity {
        Polarity::Pre => cur.precedent = replacement,
        Polarity::Suc => cur.succedent = replacement,
    }
    for mv in moves.iter().rev() {
        cur = apply_move(sig, &cur, &mv.inverse()).expect("inverse move applies");
    }
    Ok(cur)
}

/// Relation between a sequent and a class member, following the four-way
/// case split on where the new turnstile edge lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemberCase {
    /// `Π′[Π]` and `Σ[Σ′]`.
    One,
    /// `Π[Π′]` and `Σ′[Σ]`.
    Two,
    /// `Σ′[Π]` and `Σ[Π′]`.
    Three,
    /// `Π[Σ′]` and `Π′[Σ]`.
    Four,
}

/// Case of the member `display_at(s, at)` relative to `s`.
pub fn member_case(at: &Position) -> MemberCase {
    match (at.side, at.polarity) {
        (Side::Succedent, Polarity::Suc) => MemberCase::One,
        (Side::Precedent, Polarity::Pre) => MemberCase::Two,
        (Side::Succedent, Polarity::Pre) => MemberCase::Three,
        (Side::Precedent, Polarity::Suc) => MemberCase::Four,
    }
}

/// Whether `inner` occurs as a subtree of `outer`.
pub fn is_substructure(inner: &Structure, outer: &Structure) -> bool {
    if inner == outer {
        return true;
    }
    match outer {
        Structure::SApp(_, args) => args.iter().any(|a| is_substructure(inner, a)),
        _ => false,
    }
}

/// Checks the substructure relations claimed by a case.
pub fn case_holds(case: MemberCase, s: &Sequent, member: &Sequent) -> bool {
    let (p, q) = (&s.precedent, &s.succedent);
    let (p2, q2) = (&member.precedent, &member.succedent);
    match case {
        MemberCase::One => is_substructure(p, p2) && is_substructure(q2, q),
        MemberCase::Two => is_substructure(p2, p) && is_substructure(q, q2),
        MemberCase::Three => is_substructure(p, q2) && is_substructure(p2, q),
        MemberCase::Four => is_substructure(q2, p) && is_substructure(q, p2),
    }
}

/// Graphviz rendering of a class: nodes are sequents, edges are moves.
pub fn class_to_dot(sig: &Signature, s: &Sequent) -> String {
    let members = equivalence_class(sig, s);
    let index = |t: &Sequent| members.iter().position(|m| m == t).expect("member of class");
    let mut out = String::from("digraph display_class {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, m) in members.iter().enumerate() {
        out.push_str(&format!("  n{} [label=\"{}\"];\n", i, escape(&m.display(sig).to_string())));
    }
    for (i, m) in members.iter().enumerate() {
        for (mv, next) in display_neighbors(sig, m) {
            if mv.direction == Direction::Forward {
                out.push_str(&format!("  n{} -> n{} [label=\"{}\"];\n", i, index(&next), mv.tag(sig)));
            }
        }
    }
    out.push_str("}\n");
    out
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{PrimitiveSpec, Tonicity::*};
    use crate::syntax::{parse_sequent, parse_structure, positions};

    fn sig() -> Signature {
        Signature::new(vec![
            PrimitiveSpec::new("f", Family::F, &[Monotone]),
            PrimitiveSpec::new("h", Family::F, &[Antitone]),
            PrimitiveSpec::new("g", Family::G, &[Antitone]),
            PrimitiveSpec::new("k", Family::G, &[Monotone, Monotone]),
        ])
        .unwrap()
    }

    #[test]
    fn neighbors_examples() {
        let sig = sig();
        let n = display_neighbors(&sig, &parse_sequent(&sig, "^f(p) |- q").unwrap());
        assert_eq!(n.len(), 1);
        assert_eq!(n[0].1, parse_sequent(&sig, "p |- ~f#1(q)").unwrap());
        assert_eq!(n[0].0.tag(&sig), "F_RES(f,1)");
        let n = display_neighbors(&sig, &parse_sequent(&sig, "p |- ~g(q)").unwrap());
        assert_eq!(n.len(), 1);
        assert_eq!(n[0].1, parse_sequent(&sig, "q |- ~g@1(p)").unwrap());
        assert!(display_neighbors(&sig, &parse_sequent(&sig, "p |- q").unwrap()).is_empty());
    }

    #[test]
    fn class_examples() {
        let sig = sig();
        assert_eq!(equivalence_class(&sig, &parse_sequent(&sig, "p |- q").unwrap()).len(), 1);
        assert_eq!(equivalence_class(&sig, &parse_sequent(&sig, "^f(p) |- q").unwrap()).len(), 2);
        let class = equivalence_class(&sig, &parse_sequent(&sig, "^h(s) |- t").unwrap());
        assert_eq!(class.len(), 2);
        assert!(class.contains(&parse_sequent(&sig, "^h#1(t) |- s").unwrap()));
    }

    #[test]
    fn display_at_examples() {
        let sig = sig();
        let s = parse_sequent(&sig, "^f(p | q) |- ~B").unwrap();
        let pos = positions(&sig, &s).into_iter().find(|p| p.path == vec![0]).unwrap();
        assert_eq!(display_at(&sig, &s, &pos).unwrap(), parse_sequent(&sig, "p | q |- ~f#1(~B)").unwrap());
        assert_eq!(display_at(&sig, &s, &Position::root(Side::Precedent)).unwrap(), s);
        let s = parse_sequent(&sig, "p |- ~k(q, r)").unwrap();
        let pos = Position { side: Side::Succedent, path: vec![0], polarity: Polarity::Suc };
        assert_eq!(display_at(&sig, &s, &pos).unwrap(), parse_sequent(&sig, "^k@1(p, r) |- q").unwrap());
    }

    #[test]
    fn display_through_residual_sibling() {
        let sig = sig();
        let s = parse_sequent(&sig, "^k@1(p, r) |- q").unwrap();
        let pos = Position { side: Side::Precedent, path: vec![1], polarity: Polarity::Suc };
        let d = display_at(&sig, &s, &pos).unwrap();
        assert_eq!(d, parse_sequent(&sig, "^k@2(q, p) |- r").unwrap());
    }

    #[test]
    fn subst_displayed_commutes() {
        let sig = sig();
        let s = parse_sequent(&sig, "^f(p | q) |- ~B").unwrap();
        let pos = Position { side: Side::Precedent, path: vec![0], polarity: Polarity::Pre };
        let out = subst_displayed(&sig, &s, &pos, parse_structure(&sig, "p").unwrap()).unwrap();
        assert_eq!(out, parse_sequent(&sig, "^f(p) |- ~B").unwrap());
        let s = parse_sequent(&sig, "^h(~g(p)) |- q").unwrap();
        let pos = Position { side: Side::Precedent, path: vec![0], polarity: Polarity::Suc };
        let out = subst_displayed(&sig, &s, &pos, Structure::BotCheck).unwrap();
        assert_eq!(out, parse_sequent(&sig, "^h(~B) |- q").unwrap());
        assert!(subst_displayed(&sig, &s, &pos, Structure::TopHat).is_err());
    }
}
