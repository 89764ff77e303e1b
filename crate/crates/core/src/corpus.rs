//! Enumeration and sampling of small sequents, and random well-typed
//! sequents with structural connectives.
//!
//! The corpus of size `d` holds every formula sequent `φ ⊢ ψ` built from the
//! given atoms, `⊤`, `⊥`, the lattice connectives and the primitive
//! connectives of the signature, in which the two formulas together contain
//! at most `d` connective occurrences. Constants are not counted, so size 0
//! is the sixteen sequents between `p`, `q`, `⊤` and `⊥`.

use rand::seq::index;
use rand::Rng;

use crate::signature::{Family, Signature};
use crate::syntax::{Formula, Polarity, Sequent, Structure};

/// All corpus sequents up to a connective budget, addressable by index.
#[derive(Clone, Debug)]
pub struct Corpus {
    /// `levels[c]` holds the formulas with exactly `c` connectives.
    levels: Vec<Vec<Formula>>,
    /// `(c1, c2, offset)` blocks in index order.
    blocks: Vec<(usize, usize, usize)>,
    len: usize,
}

/// Formulas with exactly `count` connectives, for `count = 0..=max`.
pub fn formula_levels(sig: &Signature, atoms: &[&str], max: usize) -> Vec<Vec<Formula>> {
    let mut levels: Vec<Vec<Formula>> = Vec::new();
    let mut base: Vec<Formula> = atoms.iter().map(|a| Formula::atom(a)).collect();
    base.push(Formula::Top);
    base.push(Formula::Bot);
    let primitives: Vec<_> = (0..sig.primitive_count()).collect();
    levels.push(base);
    for c in 1..=max {
        let mut out = Vec::new();
        let pairs = tuples(&levels, c - 1, 2);
        out.extend(pairs.iter().map(|v| Formula::and(v[0].clone(), v[1].clone())));
        out.extend(pairs.iter().map(|v| Formula::or(v[0].clone(), v[1].clone())));
        for &p in &primitives {
            for args in tuples(&levels, c - 1, sig.arity(p)) {
                out.push(Formula::App(p, args));
            }
        }
        levels.push(out);
    }
    levels
}

/// Argument tuples of length `arity` whose counts sum to `total`.
fn tuples(levels: &[Vec<Formula>], total: usize, arity: usize) -> Vec<Vec<Formula>> {
    if arity == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total.min(levels.len() - 1) {
        let rest = tuples(levels, total - first, arity - 1);
        if rest.is_empty() {
            continue;
        }
        for f in &levels[first] {
            for r in &rest {
                let mut v = Vec::with_capacity(arity);
                v.push(f.clone());
                v.extend(r.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}

impl Corpus {
    pub fn new(sig: &Signature, atoms: &[&str], max: usize) -> Corpus {
        let levels = formula_levels(sig, atoms, max);
        let mut blocks = Vec::new();
        let mut len = 0;
        for total in 0..=max {
            for c1 in 0..=total {
                let c2 = total - c1;
                blocks.push((c1, c2, len));
                len += levels[c1].len() * levels[c2].len();
            }
        }
        Corpus { levels, blocks, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Option<Sequent> {
        if i >= self.len {
            return None;
        }
        let k = self.blocks.partition_point(|b| b.2 <= i) - 1;
        let (c1, c2, offset) = self.blocks[k];
        let local = i - offset;
        let width = self.levels[c2].len();
        let phi = self.levels[c1][local / width].clone();
        let psi = self.levels[c2][local % width].clone();
        Some(Sequent::formulas(phi, psi))
    }

    pub fn iter(&self) -> impl Iterator<Item = Sequent> + '_ {
        (0..self.len).map(|i| self.get(i).expect("index in range"))
    }

    /// `n` distinct sequents drawn uniformly without replacement.
    pub fn sample<R: Rng>(&self, rng: &mut R, n: usize) -> Vec<Sequent> {
        let n = n.min(self.len);
        index::sample(rng, self.len, n).into_iter().map(|i| self.get(i).expect("index in range")).collect()
    }
}

/// A random formula with at most `budget` connectives.
pub fn random_formula<R: Rng>(sig: &Signature, atoms: &[&str], budget: usize, rng: &mut R) -> Formula {
    let primitives: Vec<_> = (0..sig.primitive_count()).collect();
    let leaf = |rng: &mut R| match rng.gen_range(0..atoms.len() + 2) {
        k if k < atoms.len() => Formula::atom(atoms[k]),
        k if k == atoms.len() => Formula::Top,
        _ => Formula::Bot,
    };
    if budget == 0 || rng.gen_bool(0.35) {
        return leaf(rng);
    }
    let choice = rng.gen_range(0..2 + primitives.len());
    let sub = budget - 1;
    match choice {
        0 => Formula::and(random_formula(sig, atoms, sub / 2, rng), random_formula(sig, atoms, sub - sub / 2, rng)),
        1 => Formula::or(random_formula(sig, atoms, sub / 2, rng), random_formula(sig, atoms, sub - sub / 2, rng)),
        k => {
            let p = primitives[k - 2];
            let n = sig.arity(p);
            let share = sub.checked_div(n).unwrap_or(0);
            Formula::App(p, (0..n).map(|_| random_formula(sig, atoms, share, rng)).collect())
        }
    }
}

/// A random structure of the given polarity with structural nesting at most
/// `depth`, drawing connectives from the whole residual closure.
pub fn random_structure<R: Rng>(sig: &Signature, atoms: &[&str], pol: Polarity, depth: usize, rng: &mut R) -> Structure {
    let family = match pol {
        Polarity::Pre => Family::F,
        Polarity::Suc => Family::G,
    };
    let candidates: Vec<_> = (0..sig.connectives().len()).filter(|&c| sig.family(c) == family).collect();
    if depth == 0 || candidates.is_empty() || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 => match pol {
                Polarity::Pre => Structure::TopHat,
                Polarity::Suc => Structure::BotCheck,
            },
            _ => Structure::Leaf(random_formula(sig, atoms, 2, rng)),
        };
    }
    let c = candidates[rng.gen_range(0..candidates.len())];
    let args = (0..sig.arity(c))
        .map(|i| random_structure(sig, atoms, pol.through(sig.tonicity(c, i)), depth - 1, rng))
        .collect();
    Structure::SApp(c, args)
}

/// A random well-typed sequent whose structures nest at most `depth` deep.
pub fn random_sequent<R: Rng>(sig: &Signature, atoms: &[&str], depth: usize, rng: &mut R) -> Sequent {
    let pre = random_structure(sig, atoms, Polarity::Pre, depth, rng);
    let suc = random_structure(sig, atoms, Polarity::Suc, depth, rng);
    Sequent::provable(pre, suc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::bundled;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn corpus_sizes() {
        let sig = bundled::mixed();
        assert_eq!(Corpus::new(&sig, &["p", "q"], 0).len(), 16);
        assert_eq!(Corpus::new(&sig, &["p", "q"], 1).len(), 16 + 2 * 4 * 64);
        assert_eq!(Corpus::new(&sig, &["p", "q"], 2).len(), 21_008);
        assert_eq!(Corpus::new(&sig, &["p", "q"], 3).len(), 938_512);
    }

    #[test]
    fn indexing_is_a_bijection_onto_distinct_sequents() {
        let sig = bundled::mixed();
        let corpus = Corpus::new(&sig, &["p", "q"], 2);
        let all: std::collections::HashSet<Sequent> = corpus.iter().collect();
        assert_eq!(all.len(), corpus.len());
        assert!(corpus.get(corpus.len()).is_none());
        assert!(all.iter().all(|s| s.connective_count() <= 2 + 4 && s.check_type(&sig).is_ok()));
    }

    #[test]
    fn random_sequents_are_well_typed() {
        let sig = bundled::mixed();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..500 {
            let s = random_sequent(&sig, &["p", "q"], 4, &mut rng);
            assert!(s.check_type(&sig).is_ok());
            assert!(s.precedent.depth() <= 4 + 3 && s.succedent.depth() <= 4 + 3);
        }
    }
}
