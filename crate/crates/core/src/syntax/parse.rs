//! Recursive-descent parser for the concrete grammar.
//!
//! ```text
//! sequent   := structure ("|-" | "-|/") structure
//! structure := "^T" | "~B" | ("^" | "~") name ["(" structure ("," structure)* ")"] | formula
//! formula   := conj ("|" conj)*
//! conj      := unit ("&" unit)*
//! unit      := "top" | "bot" | name ["(" formula ("," formula)* ")"] | "(" formula ")"
//! ```
//!
//! Binary operators associate to the left. A bare name is an atom unless the
//! signature declares it as a connective.

use thiserror::Error;

use super::{Formula, Polarity, Sequent, Structure, Turnstile, TypeError};
use crate::signature::{Family, Signature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character `{ch}` at offset {offset}")]
    Lexical { offset: usize, ch: char },
    #[error("expected {expected} at offset {offset}, found {found}")]
    Unexpected { offset: usize, expected: String, found: String },
    #[error("unknown connective `{0}`")]
    UnknownConnective(String),
    #[error("`{name}` expects {expected} arguments, found {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("structural marker `{marker}` does not match the family of `{name}`")]
    Marker { marker: char, name: String },
    #[error(transparent)]
    Type(#[from] TypeError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    LParen,
    RParen,
    Comma,
    Amp,
    Bar,
    Proves,
    Refutes,
    Hat,
    Tilde,
    TopHat,
    BotCheck,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Name(n) => format!("`{}`", n),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Bar => "`|`".into(),
        Tok::Proves => "`|-`".into(),
        Tok::Refutes => "`-|/`".into(),
        Tok::Hat => "`^`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::TopHat => "`^T`".into(),
        Tok::BotCheck => "`~B`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut offsets = Vec::with_capacity(bytes.len());
    let mut off = 0;
    for c in &bytes {
        offsets.push(off);
        off += c.len_utf8();
    }
    let mut out = Vec::new();
    let mut i = 0;
    let is_name_char = |c: char| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_';
    while i < bytes.len() {
        let c = bytes[i];
        let at = offsets[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let next = bytes.get(i + 1).copied();
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '&' => Tok::Amp,
            '|' if next == Some('-') => {
                i += 1;
                Tok::Proves
            }
            '|' => Tok::Bar,
            '-' if next == Some('|') && bytes.get(i + 2) == Some(&'/') => {
                i += 2;
                Tok::Refutes
            }
            '^' if next == Some('T') => {
                i += 1;
                Tok::TopHat
            }
            '~' if next == Some('B') => {
                i += 1;
                Tok::BotCheck
            }
            '^' => Tok::Hat,
            '~' => Tok::Tilde,
            c if c.is_ascii_lowercase() => {
                let start = i;
                while i + 1 < bytes.len() && is_name_char(bytes[i + 1]) {
                    i += 1;
                }
                if i + 1 < bytes.len() && (bytes[i + 1] == '#' || bytes[i + 1] == '@') {
                    let mark = i + 1;
                    let mut j = mark;
                    while j + 1 < bytes.len() && bytes[j + 1].is_ascii_digit() {
                        j += 1;
                    }
                    if j == mark {
                        return Err(ParseError::Lexical { offset: offsets[mark], ch: bytes[mark] });
                    }
                    i = j;
                }
                Tok::Name(bytes[start..=i].iter().collect())
            }
            other => return Err(ParseError::Lexical { offset: at, ch: other }),
        };
        out.push((at, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    sig: &'a Signature,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&describe(&want)))
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::Unexpected { offset: self.offset(), expected: expected.to_string(), found: describe(self.peek()) }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conj()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let right = self.conj()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unit()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.unit()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unit(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Name(n) => {
                self.bump();
                match n.as_str() {
                    "top" => return Ok(Formula::Top),
                    "bot" => return Ok(Formula::Bot),
                    _ => {}
                }
                match self.sig.lookup(&n) {
                    Some(c) => {
                        let args = if *self.peek() == Tok::LParen {
                            self.bump();
                            self.list(Parser::formula)?
                        } else {
                            Vec::new()
                        };
                        let arity = self.sig.arity(c);
                        if args.len() != arity {
                            return Err(ParseError::Arity { name: n, expected: arity, found: args.len() });
                        }
                        Ok(Formula::App(c, args))
                    }
                    None if *self.peek() == Tok::LParen || n.contains(['#', '@']) => {
                        Err(ParseError::UnknownConnective(n))
                    }
                    None => Ok(Formula::Atom(n)),
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    /// Parses `item ("," item)* ")"` after an opening parenthesis; `)` alone gives an empty list.
    fn list<T>(&mut self, item: fn(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.bump() {
                Tok::Comma => continue,
                Tok::RParen => return Ok(out),
                _ => {
                    self.pos -= 1;
                    return Err(self.unexpected("`,` or `)`"));
                }
            }
        }
    }

    fn structure(&mut self) -> Result<Structure, ParseError> {
        match self.peek().clone() {
            Tok::TopHat => {
                self.bump();
                Ok(Structure::TopHat)
            }
            Tok::BotCheck => {
                self.bump();
                Ok(Structure::BotCheck)
            }
            Tok::Hat | Tok::Tilde => {
                let marker = if self.bump() == Tok::Hat { '^' } else { '~' };
                let name = match self.bump() {
                    Tok::Name(n) => n,
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected("a connective name"));
                    }
                };
                let c = self.sig.lookup(&name).ok_or_else(|| ParseError::UnknownConnective(name.clone()))?;
                let family = if marker == '^' { Family::F } else { Family::G };
                if self.sig.family(c) != family {
                    return Err(ParseError::Marker { marker, name });
                }
                let args = if *self.peek() == Tok::LParen {
                    self.bump();
                    self.list(Parser::structure)?
                } else {
                    Vec::new()
                };
                let arity = self.sig.arity(c);
                if args.len() != arity {
                    return Err(ParseError::Arity { name, expected: arity, found: args.len() });
                }
                Ok(Structure::SApp(c, args))
            }
            _ => Ok(Structure::Leaf(self.formula()?)),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

fn parser<'a>(sig: &'a Signature, text: &str) -> Result<Parser<'a>, ParseError> {
    Ok(Parser { sig, toks: lex(text)?, pos: 0 })
}

/// Parses a formula.
pub fn parse_formula(sig: &Signature, text: &str) -> Result<Formula, ParseError> {
    let mut p = parser(sig, text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses a structure; polarity typing is checked against the marker of its root.
pub fn parse_structure(sig: &Signature, text: &str) -> Result<Structure, ParseError> {
    let mut p = parser(sig, text)?;
    let s = p.structure()?;
    p.finish()?;
    let pol = match &s {
        Structure::BotCheck => Polarity::Suc,
        Structure::SApp(c, _) => Polarity::of_family(sig.family(*c)),
        _ => Polarity::Pre,
    };
    s.check_type(sig, pol)?;
    Ok(s)
}

/// Parses a sequent or antisequent and validates its polarity typing.
pub fn parse_sequent(sig: &Signature, text: &str) -> Result<Sequent, ParseError> {
    let mut p = parser(sig, text)?;
    let pre = p.structure()?;
    let kind = match p.bump() {
        Tok::Proves => Turnstile::Provable,
        Tok::Refutes => Turnstile::Refutable,
        _ => {
            p.pos -= 1;
            return Err(p.unexpected("`|-` or `-|/`"));
        }
    };
    let suc = p.structure()?;
    p.finish()?;
    let s = Sequent::new(pre, suc, kind);
    s.check_type(sig)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{bundled, PrimitiveSpec, Tonicity::*};

    fn modal() -> Signature {
        Signature::new(vec![PrimitiveSpec::new("g", Family::G, &[Monotone])]).unwrap()
    }

    #[test]
    fn conjunction_sequent() {
        let sig = modal();
        let s = parse_sequent(&sig, "p & q |- p").unwrap();
        assert_eq!(s, Sequent::formulas(Formula::and(Formula::atom("p"), Formula::atom("q")), Formula::atom("p")));
    }

    #[test]
    fn example_sequent() {
        let sig = modal();
        let g = sig.lookup("g").unwrap();
        let s = parse_sequent(&sig, "g(p | q) |- g(p) | g(q)").unwrap();
        let p = Formula::atom("p");
        let q = Formula::atom("q");
        let expected = Sequent::formulas(
            Formula::App(g, vec![Formula::or(p.clone(), q.clone())]),
            Formula::or(Formula::App(g, vec![p]), Formula::App(g, vec![q])),
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn unbalanced_application() {
        let sig = bundled::mixed();
        assert!(parse_formula(&sig, "f(p, q").is_err());
        assert!(matches!(parse_formula(&sig, "f(p)"), Err(ParseError::Arity { .. })));
        assert!(matches!(parse_formula(&sig, "h(p)"), Err(ParseError::UnknownConnective(_))));
        assert!(matches!(parse_formula(&sig, "p $ q"), Err(ParseError::Lexical { .. })));
    }

    #[test]
    fn precedence_and_associativity() {
        let sig = modal();
        let f = parse_formula(&sig, "p | q & r | s").unwrap();
        let expected = Formula::or(
            Formula::or(Formula::atom("p"), Formula::and(Formula::atom("q"), Formula::atom("r"))),
            Formula::atom("s"),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn structural_syntax() {
        let sig = bundled::mixed();
        let s = parse_sequent(&sig, "^f(p, ~g(q, r)) -|/ ~f#1(~B, r)").unwrap();
        assert_eq!(s.kind, Turnstile::Refutable);
        assert_eq!(s.display(&sig).to_string(), "^f(p, ~g(q, r)) -|/ ~f#1(~B, r)");
        assert!(matches!(parse_sequent(&sig, "~f(p, q) |- r"), Err(ParseError::Marker { .. })));
    }
}
