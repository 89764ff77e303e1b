//! Finite-lattice semantics used as an independent oracle.
//!
//! A model is a finite lattice together with a normal operation for every
//! primitive connective: operations in F preserve finite joins in monotone
//! coordinates and send finite meets to joins in antitone ones, and
//! operations in G behave dually. Residual connectives are interpreted by
//! their adjoints, which exist because finite lattices are complete.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::signature::{ConnId, Family, Signature, Tonicity};
use crate::syntax::{Formula, Sequent, Structure};

pub type Elem = u8;

/// A finite bounded lattice on `0..size`, with `0` the bottom and
/// `size - 1` the top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub name: String,
    size: usize,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
}

impl Lattice {
    /// Builds a lattice from its order relation, or `None` when the relation
    /// is not a bounded lattice order with `0` bottom and `size - 1` top.
    pub fn from_order(name: &str, size: usize, leq: Vec<bool>) -> Option<Lattice> {
        let le = |a: usize, b: usize| leq[a * size + b];
        if size == 0 {
            return None;
        }
        for a in 0..size {
            if !le(a, a) || !le(0, a) || !le(a, size - 1) {
                return None;
            }
            for b in 0..size {
                if a != b && le(a, b) && le(b, a) {
                    return None;
                }
                for c in 0..size {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return None;
                    }
                }
            }
        }
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let lower: Vec<usize> = (0..size).filter(|&c| le(c, a) && le(c, b)).collect();
                let upper: Vec<usize> = (0..size).filter(|&c| le(a, c) && le(b, c)).collect();
                let m = lower.iter().copied().find(|&c| lower.iter().all(|&d| le(d, c)))?;
                let j = upper.iter().copied().find(|&c| upper.iter().all(|&d| le(c, d)))?;
                meet[a * size + b] = m as Elem;
                join[a * size + b] = j as Elem;
            }
        }
        Some(Lattice { name: name.to_string(), size, leq, meet, join })
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Lattice {
        let leq = (0..n * n).map(|k| k / n <= k % n).collect();
        Lattice::from_order(&format!("chain-{}", n), n, leq).expect("chains are lattices")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size as Elem
    }

    pub fn bot(&self) -> Elem {
        0
    }

    pub fn top(&self) -> Elem {
        (self.size - 1) as Elem
    }

    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.leq[a as usize * self.size + b as usize]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a as usize * self.size + b as usize]
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a as usize * self.size + b as usize]
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.bot(), |a, b| self.join(a, b))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.top(), |a, b| self.meet(a, b))
    }

    /// Completely join-irreducible elements: not the bottom and not a join
    /// of two strictly smaller elements.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&j| {
                j != self.bot()
                    && !self.elements().any(|a| {
                        self.elements().any(|b| a != j && b != j && self.le(a, j) && self.le(b, j) && self.join(a, b) == j)
                    })
            })
            .collect()
    }

    pub fn meet_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&m| {
                m != self.top()
                    && !self.elements().any(|a| {
                        self.elements().any(|b| a != m && b != m && self.le(m, a) && self.le(m, b) && self.meet(a, b) == m)
                    })
            })
            .collect()
    }

    /// Cover pairs `(a, b)` with `a < b` and nothing in between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if a != b
                    && self.le(a, b)
                    && !self.elements().any(|c| c != a && c != b && self.le(a, c) && self.le(c, b))
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "size": self.size,
            "covers": self.covers().iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }

    /// Canonical form of the order relation up to relabelling the inner elements.
    fn canonical(&self) -> Vec<bool> {
        let inner: Vec<usize> = (1..self.size.saturating_sub(1)).collect();
        let mut best: Option<Vec<bool>> = None;
        for perm in permutations(&inner) {
            let mut map: Vec<usize> = (0..self.size).collect();
            for (k, &x) in inner.iter().enumerate() {
                map[x] = perm[k];
            }
            let mut rel = vec![false; self.size * self.size];
            for a in 0..self.size {
                for b in 0..self.size {
                    rel[map[a] * self.size + map[b]] = self.leq[a * self.size + b];
                }
            }
            if best.as_ref().is_none_or(|cur| rel < *cur) {
                best = Some(rel);
            }
        }
        best.unwrap_or_default()
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every lattice with exactly `n` elements, up to isomorphism.
pub fn lattices_of_size(n: usize) -> Vec<Lattice> {
    if n == 0 {
        return Vec::new();
    }
    let inner: Vec<(usize, usize)> =
        (1..n.saturating_sub(1)).flat_map(|a| (a + 1..n - 1).map(move |b| (a, b))).collect();
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << inner.len()) {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
            leq[a] = true;
            leq[a * n + n - 1] = true;
        }
        for (k, &(a, b)) in inner.iter().enumerate() {
            if mask & (1 << k) != 0 {
                leq[a * n + b] = true;
            }
        }
        if let Some(lat) = Lattice::from_order("", n, leq) {
            let key = lat.canonical();
            if !seen.contains(&key) {
                seen.push(key);
                out.push(lat);
            }
        }
    }
    let count = out.len();
    for (k, lat) in out.iter_mut().enumerate() {
        lat.name = lattice_name(lat, k, count);
    }
    out
}

fn lattice_name(lat: &Lattice, index: usize, count: usize) -> String {
    let n = lat.size;
    let is_chain = lat.elements().all(|a| lat.elements().all(|b| lat.le(a, b) || lat.le(b, a)));
    if is_chain {
        return format!("chain-{}", n);
    }
    let atoms = lat.covers().iter().filter(|(a, _)| *a == lat.bot()).count();
    match (n, atoms) {
        (4, _) => "diamond".into(),
        (5, 3) => "M3".into(),
        (5, 2) if lat.covers().len() == 5 => "N5".into(),
        _ if count > 1 => format!("L{}.{}", n, index),
        _ => format!("L{}", n),
    }
}

/// Every lattice with at most `n` elements.
pub fn lattices_up_to(n: usize) -> Vec<Lattice> {
    (1..=n).flat_map(lattices_of_size).collect()
}

/// An operation table on a lattice, indexed in base `size` with the first
/// argument most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operation {
    pub arity: usize,
    pub table: Vec<Elem>,
}

impl Operation {
    pub fn apply(&self, size: usize, args: &[Elem]) -> Elem {
        let mut k = 0;
        for &a in args {
            k = k * size + a as usize;
        }
        self.table[k]
    }

    pub fn constant(arity: usize, size: usize, value: Elem) -> Operation {
        Operation { arity, table: vec![value; size.pow(arity as u32)] }
    }
}

/// All argument tuples in table order.
fn tuples(size: usize, arity: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..size as Elem).map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

/// Whether `op` is a normal operation of the given family and order type.
pub fn is_normal(lat: &Lattice, family: Family, order_type: &[Tonicity], op: &Operation) -> bool {
    let n = lat.size;
    for args in tuples(n, order_type.len()) {
        for (i, &t) in order_type.iter().enumerate() {
            let at = |x: Elem| {
                let mut a = args.clone();
                a[i] = x;
                op.apply(n, &a)
            };
            let (unit, absorbing) = match (family, t) {
                (Family::F, Tonicity::Monotone) => (lat.bot(), lat.bot()),
                (Family::F, Tonicity::Antitone) => (lat.top(), lat.bot()),
                (Family::G, Tonicity::Monotone) => (lat.top(), lat.top()),
                (Family::G, Tonicity::Antitone) => (lat.bot(), lat.top()),
            };
            if at(unit) != absorbing {
                return false;
            }
            for b in lat.elements() {
                let a = args[i];
                let (combined, expected) = match (family, t) {
                    (Family::F, Tonicity::Monotone) => (lat.join(a, b), lat.join(at(a), at(b))),
                    (Family::F, Tonicity::Antitone) => (lat.meet(a, b), lat.join(at(a), at(b))),
                    (Family::G, Tonicity::Monotone) => (lat.meet(a, b), lat.meet(at(a), at(b))),
                    (Family::G, Tonicity::Antitone) => (lat.join(a, b), lat.meet(at(a), at(b))),
                };
                if at(combined) != expected {
                    return false;
                }
            }
        }
    }
    true
}

/// Limits on operation enumeration.
#[derive(Clone, Copy, Debug)]
pub struct OpCap {
    /// Maximum number of operations kept per connective and lattice.
    pub per_connective: usize,
    /// Generator assignments examined before switching to strided sampling.
    pub exhaustive_limit: u64,
}

impl Default for OpCap {
    fn default() -> Self {
        OpCap { per_connective: 16, exhaustive_limit: 300_000 }
    }
}

/// Normal operations of the given family and order type, at most
/// `cap.per_connective` of them chosen evenly from the full enumeration.
///
/// A normal operation is determined by its values on tuples of generators:
/// join-irreducibles in coordinates where joins are preserved and
/// meet-irreducibles where meets are turned into joins (dually for G). Each
/// assignment of values to generator tuples is extended and kept when the
/// extension is normal and agrees with the assignment.
pub fn normal_operations(lat: &Lattice, family: Family, order_type: &[Tonicity], cap: OpCap) -> Vec<Operation> {
    let n = lat.size;
    let ji = lat.join_irreducibles();
    let mi = lat.meet_irreducibles();
    let gens: Vec<&Vec<Elem>> = order_type
        .iter()
        .map(|&t| match (family, t) {
            (Family::F, Tonicity::Monotone) | (Family::G, Tonicity::Antitone) => &ji,
            _ => &mi,
        })
        .collect();
    let mut gen_tuples: Vec<Vec<Elem>> = vec![Vec::new()];
    for g in &gens {
        gen_tuples = gen_tuples
            .into_iter()
            .flat_map(|t| {
                g.iter().map(move |&e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    let all_args = tuples(n, order_type.len());
    // Which generator tuples lie below (in the relevant order) each argument tuple.
    let relevant: Vec<Vec<usize>> = all_args
        .iter()
        .map(|args| {
            gen_tuples
                .iter()
                .enumerate()
                .filter(|(_, gt)| {
                    gt.iter().zip(args).zip(order_type).all(|((&g, &x), &t)| match (family, t) {
                        (Family::F, Tonicity::Monotone) | (Family::G, Tonicity::Antitone) => lat.le(g, x),
                        _ => lat.le(x, g),
                    })
                })
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    let gen_index: Vec<usize> = gen_tuples
        .iter()
        .map(|gt| gt.iter().fold(0, |k, &e| k * n + e as usize))
        .collect();

    let slots = gen_tuples.len() as u32;
    let total: u128 = (n as u128).pow(slots);
    let exhaustive = total <= cap.exhaustive_limit as u128;
    let examined = if exhaustive { total } else { cap.exhaustive_limit as u128 };
    let stride = if exhaustive { 1 } else { total / examined };

    let mut found = Vec::new();
    let mut assignment = vec![0 as Elem; gen_tuples.len()];
    for step in 0..examined {
        let mut code = step * stride;
        for slot in assignment.iter_mut().rev() {
            *slot = (code % n as u128) as Elem;
            code /= n as u128;
        }
        let table: Vec<Elem> = relevant
            .iter()
            .map(|ks| {
                let vals = ks.iter().map(|&k| assignment[k]);
                match family {
                    Family::F => lat.join_all(vals),
                    Family::G => lat.meet_all(vals),
                }
            })
            .collect();
        if gen_index.iter().zip(&assignment).any(|(&k, &v)| table[k] != v) {
            continue;
        }
        let op = Operation { arity: order_type.len(), table };
        if is_normal(lat, family, order_type, &op) {
            found.push(op);
        }
    }
    select_evenly(found, cap.per_connective)
}

fn select_evenly(items: Vec<Operation>, cap: usize) -> Vec<Operation> {
    if items.len() <= cap || cap == 0 {
        return if cap == 0 { Vec::new() } else { items };
    }
    let len = items.len();
    (0..cap).map(|k| items[k * (len - 1) / (cap - 1).max(1)].clone()).collect()
}

/// Table of the residual of `op` in coordinate `i`, whose `i`-th argument
/// is the value on the other side of the turnstile.
pub fn residual_table(lat: &Lattice, family: Family, order_type: &[Tonicity], op: &Operation, i: usize) -> Operation {
    let n = lat.size;
    let table = tuples(n, order_type.len())
        .into_iter()
        .map(|args| {
            let b = args[i];
            let at = |c: Elem| {
                let mut a = args.clone();
                a[i] = c;
                op.apply(n, &a)
            };
            match (family, order_type[i]) {
                (Family::F, Tonicity::Monotone) => lat.join_all(lat.elements().filter(|&c| lat.le(at(c), b))),
                (Family::F, Tonicity::Antitone) => lat.meet_all(lat.elements().filter(|&c| lat.le(at(c), b))),
                (Family::G, Tonicity::Monotone) => lat.meet_all(lat.elements().filter(|&c| lat.le(b, at(c)))),
                (Family::G, Tonicity::Antitone) => lat.join_all(lat.elements().filter(|&c| lat.le(b, at(c)))),
            }
        })
        .collect();
    Operation { arity: order_type.len(), table }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("operation for `{0}` is not normal")]
    NotNormal(String),
    #[error("expected {expected} operations, got {got}")]
    Count { expected: usize, got: usize },
    #[error("residual of `{0}` fails the adjunction law")]
    Residual(String),
}

/// A lattice with interpretations of every connective, residuals included.
#[derive(Clone, Debug)]
pub struct Model {
    pub lattice: Arc<Lattice>,
    /// Indexed by connective id.
    pub ops: Vec<Operation>,
}

impl Model {
    /// Builds a model from operations for the primitives, deriving and
    /// verifying the residual tables.
    pub fn new(sig: &Signature, lattice: Arc<Lattice>, primitive_ops: Vec<Operation>) -> Result<Model, SemanticsError> {
        if primitive_ops.len() != sig.primitive_count() {
            return Err(SemanticsError::Count { expected: sig.primitive_count(), got: primitive_ops.len() });
        }
        let mut ops = primitive_ops;
        for (c, op) in ops.iter().enumerate() {
            if !is_normal(&lattice, sig.family(c), sig.order_type(c), op) {
                return Err(SemanticsError::NotNormal(sig.name(c).to_string()));
            }
        }
        for r in sig.primitive_count()..sig.connectives().len() {
            let (parent, i) = sig.residual_origin(r).expect("non-primitive connectives are residuals");
            let table = residual_table(&lattice, sig.family(parent), sig.order_type(parent), &ops[parent], i);
            if !adjunction_holds(&lattice, sig.family(parent), sig.tonicity(parent, i), &ops[parent], &table, i) {
                return Err(SemanticsError::Residual(sig.name(parent).to_string()));
            }
            ops.push(table);
        }
        Ok(Model { lattice, ops })
    }

    pub fn to_json(&self, sig: &Signature) -> Value {
        let ops: BTreeMap<String, Vec<Elem>> =
            (0..self.ops.len()).map(|c| (sig.name(c).to_string(), self.ops[c].table.clone())).collect();
        json!({ "lattice": self.lattice.to_json(), "operations": ops })
    }
}

/// The defining biconditional between an operation and its residual.
fn adjunction_holds(lat: &Lattice, family: Family, t: Tonicity, op: &Operation, res: &Operation, i: usize) -> bool {
    let n = lat.size;
    tuples(n, op.arity).into_iter().all(|args| {
        lat.elements().all(|b| {
            let a = args[i];
            let lhs = op.apply(n, &args);
            let mut rargs = args.clone();
            rargs[i] = b;
            let r = res.apply(n, &rargs);
            match (family, t) {
                (Family::F, Tonicity::Monotone) => lat.le(lhs, b) == lat.le(a, r),
                (Family::F, Tonicity::Antitone) => lat.le(lhs, b) == lat.le(r, a),
                (Family::G, Tonicity::Monotone) => lat.le(b, lhs) == lat.le(r, a),
                (Family::G, Tonicity::Antitone) => lat.le(b, lhs) == lat.le(a, r),
            }
        })
    })
}

pub type Valuation = BTreeMap<String, Elem>;

pub fn eval_formula(model: &Model, v: &Valuation, f: &Formula) -> Elem {
    let lat = &model.lattice;
    match f {
        Formula::Atom(p) => *v.get(p).unwrap_or(&lat.bot()),
        Formula::Top => lat.top(),
        Formula::Bot => lat.bot(),
        Formula::And(a, b) => lat.meet(eval_formula(model, v, a), eval_formula(model, v, b)),
        Formula::Or(a, b) => lat.join(eval_formula(model, v, a), eval_formula(model, v, b)),
        Formula::App(c, args) => {
            let vals: Vec<Elem> = args.iter().map(|a| eval_formula(model, v, a)).collect();
            model.ops[*c].apply(lat.size, &vals)
        }
    }
}

pub fn eval_structure(model: &Model, v: &Valuation, s: &Structure) -> Elem {
    let lat = &model.lattice;
    match s {
        Structure::Leaf(f) => eval_formula(model, v, f),
        Structure::TopHat => lat.top(),
        Structure::BotCheck => lat.bot(),
        Structure::SApp(c, args) => {
            let vals: Vec<Elem> = args.iter().map(|a| eval_structure(model, v, a)).collect();
            model.ops[*c].apply(lat.size, &vals)
        }
    }
}

/// Whether the sequent holds under one valuation.
pub fn holds_under(model: &Model, v: &Valuation, s: &Sequent) -> bool {
    model.lattice.le(eval_structure(model, v, &s.precedent), eval_structure(model, v, &s.succedent))
}

/// Every valuation of `atoms` into the model's lattice.
pub fn valuations(lat: &Lattice, atoms: &[String]) -> Vec<Valuation> {
    tuples(lat.size, atoms.len())
        .into_iter()
        .map(|vals| atoms.iter().cloned().zip(vals).collect())
        .collect()
}

/// Whether the sequent holds under every valuation.
pub fn holds(model: &Model, s: &Sequent) -> bool {
    valuations(&model.lattice, &s.atoms()).iter().all(|v| holds_under(model, v, s))
}

/// Every model on lattices of at most `max_size` elements with operations
/// drawn from [`normal_operations`] under `cap`.
pub fn models(sig: &Signature, max_size: usize, cap: OpCap) -> Vec<Model> {
    let mut out = Vec::new();
    for lat in lattices_up_to(max_size) {
        let lat = Arc::new(lat);
        out.extend(models_on(sig, &lat, cap, &(0..sig.primitive_count()).collect::<Vec<_>>()));
    }
    out
}

/// Models on one lattice. Primitives outside `vary` are fixed to their
/// least informative normal operation (constant bottom for F, top for G).
fn models_on(sig: &Signature, lat: &Arc<Lattice>, cap: OpCap, vary: &[ConnId]) -> Vec<Model> {
    let mut memo: HashMap<(Family, Vec<Tonicity>), Vec<Operation>> = HashMap::new();
    let choices: Vec<Vec<Operation>> = (0..sig.primitive_count())
        .map(|c| {
            let family = sig.family(c);
            if vary.contains(&c) {
                memo.entry((family, sig.order_type(c).to_vec()))
                    .or_insert_with(|| normal_operations(lat, family, sig.order_type(c), cap))
                    .clone()
            } else {
                let value = if family == Family::F { lat.bot() } else { lat.top() };
                vec![Operation::constant(sig.arity(c), lat.size, value)]
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    if choices.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let ops = pick.iter().enumerate().map(|(c, &k)| choices[c][k].clone()).collect();
        out.push(Model::new(sig, lat.clone(), ops).expect("enumerated operations are normal"));
        let mut c = 0;
        loop {
            if c == pick.len() {
                return out;
            }
            pick[c] += 1;
            if pick[c] < choices[c].len() {
                break;
            }
            pick[c] = 0;
            c += 1;
        }
    }
}

/// A model and valuation falsifying a sequent.
#[derive(Clone, Debug)]
pub struct Countermodel {
    pub model: Model,
    pub valuation: Valuation,
}

impl Countermodel {
    pub fn to_json(&self, sig: &Signature) -> Value {
        let mut v = self.model.to_json(sig);
        v["valuation"] = json!(self.valuation);
        v
    }
}

fn connectives_in(s: &Sequent, sig: &Signature) -> Vec<ConnId> {
    fn formula(f: &Formula, out: &mut Vec<ConnId>) {
        match f {
            Formula::And(a, b) | Formula::Or(a, b) => {
                formula(a, out);
                formula(b, out);
            }
            Formula::App(c, args) => {
                out.push(*c);
                args.iter().for_each(|a| formula(a, out));
            }
            _ => {}
        }
    }
    fn structure(s: &Structure, out: &mut Vec<ConnId>) {
        match s {
            Structure::Leaf(f) => formula(f, out),
            Structure::SApp(c, args) => {
                out.push(*c);
                args.iter().for_each(|a| structure(a, out));
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    structure(&s.precedent, &mut out);
    structure(&s.succedent, &mut out);
    let mut prims: Vec<ConnId> = out.into_iter().map(|c| sig.residual_origin(c).map_or(c, |(p, _)| p)).collect();
    prims.sort_unstable();
    prims.dedup();
    prims
}

/// Smallest countermodel found by increasing lattice size, varying only the
/// operations of connectives that occur in the sequent.
pub fn find_countermodel(sig: &Signature, s: &Sequent, max_size: usize, cap: OpCap) -> Option<Countermodel> {
    let vary = connectives_in(s, sig);
    let atoms = s.atoms();
    for n in 1..=max_size {
        for lat in lattices_of_size(n) {
            let lat = Arc::new(lat);
            let vals = valuations(&lat, &atoms);
            for model in models_on(sig, &lat, cap, &vary) {
                if let Some(v) = vals.iter().find(|v| !holds_under(&model, v, s)) {
                    return Some(Countermodel { model, valuation: v.clone() });
                }
            }
        }
    }
    None
}
