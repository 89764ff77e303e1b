//! Rule-labelled trees of sequents shared by derivations and refutations.

use serde_json::{json, Value};

use crate::display::{apply_move, display_path, DisplayError, DisplayMove};
use crate::signature::Signature;
use crate::syntax::{Position, Sequent, Structure};

/// Behaviour every rule label must provide for export and chaining.
pub trait RuleLabel: Clone {
    /// Generic rule name, e.g. `g_R` or `Ax3`.
    fn name(&self, sig: &Signature) -> String;
    /// Name plus instance details such as the connective or chosen coordinate.
    fn detail(&self, sig: &Signature) -> String {
        self.name(sig)
    }
    fn display(mv: DisplayMove) -> Self;
    fn as_display(&self) -> Option<DisplayMove>;
    /// Extra JSON fields for this rule instance.
    fn aux_json(&self, _sig: &Signature) -> Option<Value> {
        None
    }
}

/// A tree whose root is the conclusion and whose children derive the premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree<R> {
    pub conclusion: Sequent,
    pub rule: R,
    pub premises: Vec<Tree<R>>,
}

impl<R: RuleLabel> Tree<R> {
    pub fn new(conclusion: Sequent, rule: R, premises: Vec<Tree<R>>) -> Tree<R> {
        Tree { conclusion, rule, premises }
    }

    pub fn leaf(conclusion: Sequent, rule: R) -> Tree<R> {
        Tree::new(conclusion, rule, Vec::new())
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Tree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Tree::height).max().unwrap_or(0)
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&Tree<R>> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            stack.extend(t.premises.iter().rev());
        }
        out
    }

    /// Generic names of all non-display rules, in pre-order.
    pub fn logical_rule_names(&self, sig: &Signature) -> Vec<String> {
        self.nodes()
            .into_iter()
            .filter(|t| t.rule.as_display().is_none())
            .map(|t| t.rule.name(sig))
            .collect()
    }

    pub fn to_text(&self, sig: &Signature) -> String {
        let mut out = String::new();
        self.write_text(sig, 0, &mut out);
        out
    }

    fn write_text(&self, sig: &Signature, indent: usize, out: &mut String) {
        out.push_str(&"  ".repeat(indent));
        out.push_str(&format!("{}   [{}]\n", self.conclusion.display(sig), self.rule.detail(sig)));
        for p in &self.premises {
            p.write_text(sig, indent + 1, out);
        }
    }

    pub fn to_json(&self, sig: &Signature) -> Value {
        let mut v = json!({
            "sequent": self.conclusion.display(sig).to_string(),
            "rule": self.rule.name(sig),
            "instance": self.rule.detail(sig),
            "premises": self.premises.iter().map(|p| p.to_json(sig)).collect::<Vec<_>>(),
        });
        if let Some(aux) = self.rule.aux_json(sig) {
            v["aux"] = aux;
        }
        v
    }

    pub fn to_dot(&self, sig: &Signature) -> String {
        let mut out = String::from("digraph proof {\n  rankdir=BT;\n  node [shape=plaintext, fontname=\"monospace\"];\n");
        let mut counter = 0;
        self.write_dot(sig, &mut counter, &mut out);
        out.push_str("}\n");
        out
    }

    fn write_dot(&self, sig: &Signature, counter: &mut usize, out: &mut String) -> usize {
        let id = *counter;
        *counter += 1;
        out.push_str(&format!(
            "  n{} [label=\"{}\"];\n",
            id,
            crate::display::escape(&self.conclusion.display(sig).to_string())
        ));
        for p in &self.premises {
            let child = p.write_dot(sig, counter, out);
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\"];\n",
                child,
                id,
                crate::display::escape(&self.rule.detail(sig))
            ));
        }
        id
    }
}

/// Prepends display steps: `moves` lead from `start` to the conclusion of `top`.
pub fn chain<R: RuleLabel>(sig: &Signature, start: &Sequent, moves: &[DisplayMove], top: Tree<R>) -> Tree<R> {
    let mut seqs = vec![start.clone()];
    for mv in moves {
        let next = apply_move(sig, seqs.last().expect("non-empty"), mv).expect("display move applies");
        seqs.push(next);
    }
    debug_assert_eq!(seqs.last(), Some(&top.conclusion));
    let mut tree = top;
    for (k, mv) in moves.iter().enumerate().rev() {
        tree = Tree::new(seqs[k].clone(), R::display(*mv), vec![tree]);
    }
    tree
}

/// The usual wrapping of a rule applied to a displayed occurrence.
///
/// `s` has the occurrence at `at`; the rule is applied to the class member
/// displaying it, and each premise is itself a substitution instance of `s` at
/// `at` that is rebuilt from its own residual-free subtree.
pub struct Displayed {
    pub member: Sequent,
    pub moves: Vec<DisplayMove>,
}

impl Displayed {
    pub fn new(sig: &Signature, s: &Sequent, at: &Position) -> Result<Displayed, DisplayError> {
        let (member, moves) = display_path(sig, s, at)?;
        Ok(Displayed { member, moves })
    }

    /// The member obtained by replacing the displayed side with `replacement`.
    pub fn replaced(&self, at: &Position, replacement: Structure) -> Sequent {
        let mut m = self.member.clone();
        match at.polarity {
            crate::syntax::Polarity::Pre => m.precedent = replacement,
            crate::syntax::Polarity::Suc => m.succedent = replacement,
        }
        m
    }

    /// Tree concluding `replaced(at, replacement)` built from a tree for the
    /// corresponding substitution instance of the original sequent.
    pub fn back<R: RuleLabel>(&self, sig: &Signature, at: &Position, replacement: Structure, sub: Tree<R>) -> Tree<R> {
        let member = self.replaced(at, replacement);
        let inverse: Vec<DisplayMove> = self.moves.iter().rev().map(|m| m.inverse()).collect();
        chain(sig, &member, &inverse, sub)
    }

    /// Tree for the original sequent given a tree for the displayed member.
    pub fn wrap<R: RuleLabel>(&self, sig: &Signature, original: &Sequent, top: Tree<R>) -> Tree<R> {
        chain(sig, original, &self.moves, top)
    }
}
