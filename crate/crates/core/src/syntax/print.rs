//! Single-line ASCII printing in the concrete grammar accepted by the parser.

use std::fmt;

use super::{Formula, Sequent, Structure, Turnstile};
use crate::signature::{Family, Signature};

pub struct FormulaDisplay<'a> {
    pub(super) formula: &'a Formula,
    pub(super) sig: &'a Signature,
}

pub struct StructureDisplay<'a> {
    pub(super) structure: &'a Structure,
    pub(super) sig: &'a Signature,
}

pub struct SequentDisplay<'a> {
    pub(super) sequent: &'a Sequent,
    pub(super) sig: &'a Signature,
}

/// Binding strength used to decide where parentheses are needed.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Or,
    And,
    Atomic,
}

fn prec(f: &Formula) -> Prec {
    match f {
        Formula::Or(..) => Prec::Or,
        Formula::And(..) => Prec::And,
        _ => Prec::Atomic,
    }
}

fn write_formula(out: &mut fmt::Formatter<'_>, sig: &Signature, f: &Formula) -> fmt::Result {
    match f {
        Formula::Atom(p) => out.write_str(p),
        Formula::Top => out.write_str("top"),
        Formula::Bot => out.write_str("bot"),
        Formula::And(a, b) => {
            write_operand(out, sig, a, prec(a) < Prec::And)?;
            out.write_str(" & ")?;
            write_operand(out, sig, b, prec(b) <= Prec::And)
        }
        Formula::Or(a, b) => {
            write_operand(out, sig, a, false)?;
            out.write_str(" | ")?;
            write_operand(out, sig, b, prec(b) <= Prec::Or)
        }
        Formula::App(c, args) => {
            out.write_str(sig.name(*c))?;
            out.write_str("(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.write_str(", ")?;
                }
                write_formula(out, sig, a)?;
            }
            out.write_str(")")
        }
    }
}

fn write_operand(out: &mut fmt::Formatter<'_>, sig: &Signature, f: &Formula, parens: bool) -> fmt::Result {
    if parens {
        out.write_str("(")?;
        write_formula(out, sig, f)?;
        out.write_str(")")
    } else {
        write_formula(out, sig, f)
    }
}

fn write_structure(out: &mut fmt::Formatter<'_>, sig: &Signature, s: &Structure) -> fmt::Result {
    match s {
        Structure::Leaf(f) => write_formula(out, sig, f),
        Structure::TopHat => out.write_str("^T"),
        Structure::BotCheck => out.write_str("~B"),
        Structure::SApp(c, args) => {
            out.write_str(if sig.family(*c) == Family::F { "^" } else { "~" })?;
            out.write_str(sig.name(*c))?;
            out.write_str("(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.write_str(", ")?;
                }
                write_structure(out, sig, a)?;
            }
            out.write_str(")")
        }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self.sig, self.formula)
    }
}

impl fmt::Display for StructureDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_structure(f, self.sig, self.structure)
    }
}

impl fmt::Display for SequentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_structure(f, self.sig, &self.sequent.precedent)?;
        f.write_str(match self.sequent.kind {
            Turnstile::Provable => " |- ",
            Turnstile::Refutable => " -|/ ",
        })?;
        write_structure(f, self.sig, &self.sequent.succedent)
    }
}
