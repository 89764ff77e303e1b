//! Lattice-expansion signatures and their residual closure.
//!
//! A signature lists primitive connectives split into two families. Family
//! `F` connectives preserve joins in monotone coordinates and turn meets into
//! joins in antitone coordinates; family `G` connectives are the order dual.
//! Every primitive receives one residual per coordinate. Residuals of
//! residuals are never formed: the closure is exactly one level deep.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tonicity of one coordinate of an order-type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tonicity {
    /// Written `1`.
    Monotone,
    /// Written `∂` (or `d` in configuration files).
    Antitone,
}

impl Tonicity {
    /// Flips monotone and antitone.
    pub fn opposite(self) -> Tonicity {
        match self {
            Tonicity::Monotone => Tonicity::Antitone,
            Tonicity::Antitone => Tonicity::Monotone,
        }
    }

    /// Sign multiplication: equal entries give `1`, different ones give `∂`.
    pub fn compose(self, other: Tonicity) -> Tonicity {
        if self == other {
            Tonicity::Monotone
        } else {
            Tonicity::Antitone
        }
    }

    pub fn is_monotone(self) -> bool {
        self == Tonicity::Monotone
    }

    fn symbol(self) -> &'static str {
        match self {
            Tonicity::Monotone => "1",
            Tonicity::Antitone => "∂",
        }
    }
}

impl fmt::Display for Tonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Pointwise flip of an order-type.
pub fn opposite(order_type: &[Tonicity]) -> Vec<Tonicity> {
    order_type.iter().map(|t| t.opposite()).collect()
}

/// Renders an order-type as `(1,∂)`.
pub fn format_order_type(order_type: &[Tonicity]) -> String {
    let parts: Vec<&str> = order_type.iter().map(|t| t.symbol()).collect();
    format!("({})", parts.join(","))
}

/// The two connective families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    F,
    G,
}

impl Family {
    pub fn dual(self) -> Family {
        match self {
            Family::F => Family::G,
            Family::G => Family::F,
        }
    }
}

/// Index of a connective inside its [`Signature`].
pub type ConnId = usize;

/// Where a connective comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    Primitive,
    /// Residual of `parent` in the 0-based `coordinate`.
    Residual { parent: ConnId, coordinate: usize },
}

/// One entry of the connective table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectiveDescriptor {
    pub name: String,
    pub family: Family,
    pub arity: usize,
    pub order_type: Vec<Tonicity>,
    pub origin: Origin,
}

impl ConnectiveDescriptor {
    pub fn is_primitive(&self) -> bool {
        self.origin == Origin::Primitive
    }

    pub fn is_residual(&self) -> bool {
        !self.is_primitive()
    }
}

/// Names that collide with the built-in lattice vocabulary.
pub const RESERVED_NAMES: [&str; 4] = ["top", "bot", "and", "or"];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("malformed signature document: {0}")]
    Parse(String),
    #[error("duplicate connective name `{0}`")]
    DuplicateName(String),
    #[error("connective `{name}` declares arity {arity} but its order-type has length {len}")]
    ArityMismatch { name: String, arity: usize, len: usize },
    #[error("connective name `{0}` is reserved")]
    ReservedName(String),
    #[error("invalid connective name `{0}`: expected a lowercase identifier")]
    InvalidName(String),
    #[error("unknown order-type entry `{0}`: expected \"1\" or \"d\"")]
    BadOrderTypeEntry(String),
    #[error("unknown connective `{0}`")]
    UnknownConnective(String),
    #[error("connective `{0}` is not primitive")]
    NotPrimitive(String),
    #[error("coordinate {coordinate} out of range for `{name}` of arity {arity}")]
    CoordinateOutOfRange { name: String, coordinate: usize, arity: usize },
}

/// Immutable connective table closed under one level of residuation.
///
/// Primitives occupy ids `0..primitive_count()`; their residuals follow,
/// grouped per parent in coordinate order.
#[derive(Clone, Debug)]
pub struct Signature {
    connectives: Vec<ConnectiveDescriptor>,
    primitive_count: usize,
    by_name: HashMap<String, ConnId>,
    residual_ids: Vec<Vec<ConnId>>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.connectives == other.connectives
    }
}

impl Eq for Signature {}

/// A primitive connective as supplied by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveSpec {
    pub name: String,
    pub family: Family,
    pub order_type: Vec<Tonicity>,
}

impl PrimitiveSpec {
    pub fn new(name: &str, family: Family, order_type: &[Tonicity]) -> Self {
        PrimitiveSpec { name: name.to_string(), family, order_type: order_type.to_vec() }
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// Order-type of the residual in coordinate `i` of a connective with order-type `eps`.
pub fn residual_order_type(eps: &[Tonicity], i: usize) -> Vec<Tonicity> {
    let flip = eps[i].opposite();
    eps.iter()
        .enumerate()
        .map(|(j, &e)| if j == i { e } else { e.compose(flip) })
        .collect()
}

/// Family of the residual in coordinate `i` of a connective of `family` whose tonicity there is `t`.
pub fn residual_family(family: Family, t: Tonicity) -> Family {
    match (family, t) {
        (Family::F, Tonicity::Monotone) => Family::G,
        (Family::F, Tonicity::Antitone) => Family::F,
        (Family::G, Tonicity::Monotone) => Family::F,
        (Family::G, Tonicity::Antitone) => Family::G,
    }
}

impl Signature {
    /// Builds a signature from primitive connectives, computing the residual closure.
    pub fn new(primitives: Vec<PrimitiveSpec>) -> Result<Signature, SignatureError> {
        let mut connectives = Vec::new();
        let mut by_name = HashMap::new();
        for p in &primitives {
            if RESERVED_NAMES.contains(&p.name.as_str()) {
                return Err(SignatureError::ReservedName(p.name.clone()));
            }
            if !is_identifier(&p.name) {
                return Err(SignatureError::InvalidName(p.name.clone()));
            }
            if by_name.insert(p.name.clone(), connectives.len()).is_some() {
                return Err(SignatureError::DuplicateName(p.name.clone()));
            }
            connectives.push(ConnectiveDescriptor {
                name: p.name.clone(),
                family: p.family,
                arity: p.order_type.len(),
                order_type: p.order_type.clone(),
                origin: Origin::Primitive,
            });
        }
        let primitive_count = connectives.len();
        let mut residual_ids = vec![Vec::new(); primitive_count];
        for parent in 0..primitive_count {
            let desc = connectives[parent].clone();
            for i in 0..desc.arity {
                let marker = match desc.family {
                    Family::F => '#',
                    Family::G => '@',
                };
                let name = format!("{}{}{}", desc.name, marker, i + 1);
                let id = connectives.len();
                by_name.insert(name.clone(), id);
                connectives.push(ConnectiveDescriptor {
                    name,
                    family: residual_family(desc.family, desc.order_type[i]),
                    arity: desc.arity,
                    order_type: residual_order_type(&desc.order_type, i),
                    origin: Origin::Residual { parent, coordinate: i },
                });
                residual_ids[parent].push(id);
            }
        }
        Ok(Signature { connectives, primitive_count, by_name, residual_ids })
    }

    /// Every connective, primitives first.
    pub fn connectives(&self) -> &[ConnectiveDescriptor] {
        &self.connectives
    }

    pub fn primitives(&self) -> &[ConnectiveDescriptor] {
        &self.connectives[..self.primitive_count]
    }

    pub fn residual_closure(&self) -> &[ConnectiveDescriptor] {
        &self.connectives[self.primitive_count..]
    }

    pub fn primitive_count(&self) -> usize {
        self.primitive_count
    }

    pub fn get(&self, id: ConnId) -> &ConnectiveDescriptor {
        &self.connectives[id]
    }

    pub fn lookup(&self, name: &str) -> Option<ConnId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: ConnId) -> &str {
        &self.connectives[id].name
    }

    pub fn family(&self, id: ConnId) -> Family {
        self.connectives[id].family
    }

    pub fn arity(&self, id: ConnId) -> usize {
        self.connectives[id].arity
    }

    pub fn order_type(&self, id: ConnId) -> &[Tonicity] {
        &self.connectives[id].order_type
    }

    pub fn tonicity(&self, id: ConnId, i: usize) -> Tonicity {
        self.connectives[id].order_type[i]
    }

    pub fn is_primitive(&self, id: ConnId) -> bool {
        id < self.primitive_count
    }

    /// Id of the residual of primitive `id` in the 0-based coordinate `i`.
    pub fn residual_id(&self, id: ConnId, i: usize) -> ConnId {
        self.residual_ids[id][i]
    }

    /// Parent primitive and coordinate of a residual connective.
    pub fn residual_origin(&self, id: ConnId) -> Option<(ConnId, usize)> {
        match self.connectives[id].origin {
            Origin::Primitive => None,
            Origin::Residual { parent, coordinate } => Some((parent, coordinate)),
        }
    }

    /// Descriptor of the residual of `conn` in the 1-based coordinate `i`.
    pub fn residual(&self, conn: &str, i: usize) -> Result<&ConnectiveDescriptor, SignatureError> {
        let id = self.lookup(conn).ok_or_else(|| SignatureError::UnknownConnective(conn.to_string()))?;
        if !self.is_primitive(id) {
            return Err(SignatureError::NotPrimitive(conn.to_string()));
        }
        let arity = self.arity(id);
        if i == 0 || i > arity {
            return Err(SignatureError::CoordinateOutOfRange { name: conn.to_string(), coordinate: i, arity });
        }
        Ok(self.get(self.residual_id(id, i - 1)))
    }

    /// Primitive ids of the given family.
    pub fn primitives_of(&self, family: Family) -> impl Iterator<Item = ConnId> + '_ {
        (0..self.primitive_count).filter(move |&id| self.connectives[id].family == family)
    }

    /// Parses the JSON configuration format.
    pub fn from_json(text: &str) -> Result<Signature, SignatureError> {
        let doc: SignatureDoc = serde_json::from_str(text).map_err(|e| SignatureError::Parse(e.to_string()))?;
        let mut specs = Vec::new();
        for c in doc.connectives {
            if c.order_type.len() != c.arity {
                return Err(SignatureError::ArityMismatch { name: c.name, arity: c.arity, len: c.order_type.len() });
            }
            let mut ot = Vec::new();
            for entry in &c.order_type {
                ot.push(match entry.as_str() {
                    "1" => Tonicity::Monotone,
                    "d" | "∂" => Tonicity::Antitone,
                    other => return Err(SignatureError::BadOrderTypeEntry(other.to_string())),
                });
            }
            specs.push(PrimitiveSpec { name: c.name, family: c.family, order_type: ot });
        }
        Signature::new(specs)
    }

    /// Canonical JSON with primitives sorted by name.
    pub fn to_json(&self) -> String {
        let mut entries: Vec<ConnectiveDoc> = self
            .primitives()
            .iter()
            .map(|d| ConnectiveDoc {
                name: d.name.clone(),
                family: d.family,
                arity: d.arity,
                order_type: d
                    .order_type
                    .iter()
                    .map(|t| if t.is_monotone() { "1".to_string() } else { "d".to_string() })
                    .collect(),
            })
            .collect();
        entries.sort_by(|a, b| a.name.cmp(&b.name));
        serde_json::to_string_pretty(&SignatureDoc { connectives: entries }).expect("signature serializes")
    }
}

/// Parses a signature document.
pub fn load_signature(text: &str) -> Result<Signature, SignatureError> {
    Signature::from_json(text)
}

/// Prints a signature in canonical form.
pub fn print_signature(sig: &Signature) -> String {
    sig.to_json()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignatureDoc {
    connectives: Vec<ConnectiveDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConnectiveDoc {
    name: String,
    family: Family,
    arity: usize,
    order_type: Vec<String>,
}

/// Signatures shipped with the toolkit.
pub mod bundled {
    use super::{Family, PrimitiveSpec, Signature, Tonicity::*};

    /// `dia` in F and `box` in G, both unary and monotone.
    pub fn unary_modal() -> Signature {
        Signature::new(vec![
            PrimitiveSpec::new("dia", Family::F, &[Monotone]),
            PrimitiveSpec::new("box", Family::G, &[Monotone]),
        ])
        .expect("bundled signature is valid")
    }

    /// Binary `fusion` in F, monotone in both coordinates.
    pub fn lambek() -> Signature {
        Signature::new(vec![PrimitiveSpec::new("fusion", Family::F, &[Monotone, Monotone])])
            .expect("bundled signature is valid")
    }

    /// Binary `f` in F with order-type (1,∂) and binary `g` in G with order-type (∂,1).
    pub fn mixed() -> Signature {
        Signature::new(vec![
            PrimitiveSpec::new("f", Family::F, &[Monotone, Antitone]),
            PrimitiveSpec::new("g", Family::G, &[Antitone, Monotone]),
        ])
        .expect("bundled signature is valid")
    }

    /// Unary `f` in F and unary `g` in G, both monotone.
    pub fn unary_fg() -> Signature {
        Signature::new(vec![
            PrimitiveSpec::new("f", Family::F, &[Monotone]),
            PrimitiveSpec::new("g", Family::G, &[Monotone]),
        ])
        .expect("bundled signature is valid")
    }

    /// Looks a bundled signature up by name.
    pub fn by_name(name: &str) -> Option<Signature> {
        match name {
            "unary-modal" => Some(unary_modal()),
            "lambek" => Some(lambek()),
            "mixed" => Some(mixed()),
            "unary-fg" => Some(unary_fg()),
            _ => None,
        }
    }

    pub const NAMES: [&str; 4] = ["unary-modal", "lambek", "mixed", "unary-fg"];
}

#[cfg(test)]
mod tests {
    use super::Tonicity::*;
    use super::*;

    #[test]
    fn mixed_residual_order_types() {
        let sig = bundled::mixed();
        let f1 = sig.residual("f", 1).unwrap();
        assert_eq!((f1.name.as_str(), f1.family, f1.order_type.clone()), ("f#1", Family::G, vec![Monotone, Monotone]));
        let f2 = sig.residual("f", 2).unwrap();
        assert_eq!((f2.family, f2.order_type.clone()), (Family::F, vec![Monotone, Antitone]));
        let g1 = sig.residual("g", 1).unwrap();
        assert_eq!((g1.name.as_str(), g1.family, g1.order_type.clone()), ("g@1", Family::G, vec![Antitone, Monotone]));
        let g2 = sig.residual("g", 2).unwrap();
        assert_eq!((g2.family, g2.order_type.clone()), (Family::F, vec![Monotone, Monotone]));
    }

    #[test]
    fn unary_residual() {
        let sig = bundled::unary_modal();
        let d = sig.residual("dia", 1).unwrap();
        assert_eq!((d.family, d.order_type.clone()), (Family::G, vec![Monotone]));
        assert_eq!(sig.residual_closure().len(), 2);
    }

    #[test]
    fn residual_errors() {
        let sig = bundled::mixed();
        assert!(matches!(sig.residual("h", 1), Err(SignatureError::UnknownConnective(_))));
        assert!(matches!(sig.residual("f", 3), Err(SignatureError::CoordinateOutOfRange { .. })));
        assert!(matches!(sig.residual("f#1", 1), Err(SignatureError::NotPrimitive(_))));
    }

    #[test]
    fn opposite_examples() {
        assert_eq!(opposite(&[Monotone, Antitone]), vec![Antitone, Monotone]);
        assert_eq!(opposite(&[]), Vec::<Tonicity>::new());
        assert_eq!(opposite(&[Antitone, Antitone]), vec![Monotone, Monotone]);
    }

    #[test]
    fn load_errors() {
        let dup = r#"{"connectives":[{"name":"f","family":"F","arity":0,"order_type":[]},{"name":"f","family":"G","arity":0,"order_type":[]}]}"#;
        assert_eq!(load_signature(dup), Err(SignatureError::DuplicateName("f".into())));
        let bad = r#"{"connectives":[{"name":"f","family":"F","arity":2,"order_type":["1"]}]}"#;
        assert!(matches!(load_signature(bad), Err(SignatureError::ArityMismatch { .. })));
        let reserved = r#"{"connectives":[{"name":"and","family":"F","arity":0,"order_type":[]}]}"#;
        assert_eq!(load_signature(reserved), Err(SignatureError::ReservedName("and".into())));
    }

    #[test]
    fn json_round_trip() {
        for name in bundled::NAMES {
            let sig = bundled::by_name(name).unwrap();
            let again = load_signature(&print_signature(&sig)).unwrap();
            // Canonical printing sorts names, so compare through a second print.
            assert_eq!(print_signature(&sig), print_signature(&again));
        }
    }

    #[test]
    fn nullary_connectives_are_allowed() {
        let text = r#"{"connectives":[{"name":"c","family":"F","arity":0,"order_type":[]}]}"#;
        let sig = load_signature(text).unwrap();
        assert_eq!(sig.residual_closure().len(), 0);
    }
}
