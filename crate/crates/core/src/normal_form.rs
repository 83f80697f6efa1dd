//! Normal forms for cc-modal formulae.
//!
//! A *unary strong normal form* is either `tt` or a conjunction of diamond
//! constraints over covariant actions together with exactly one box
//! constraint per contravariant action, whose body is a disjunction of unary
//! strong normal forms. A *strong normal form* is a finite disjunction of
//! unary strong normal forms; the empty disjunction is `ff`. Every formula
//! has an equivalent strong normal form with no larger modal depth, and the
//! rewriting here follows that construction: normalize subformulae,
//! distribute conjunction over disjunction, merge box conjuncts per action
//! via `[b]x & [b]y = [b](x & y)`, complete missing boxes with `[b]tt`, and
//! split diamond-guarded disjunctions via `<a>(x | y) = <a>x | <a>y`.
//!
//! Distribution is exponential in the worst case; inputs are desk-scale and
//! the disjunct budget (`limit`) turns runaway cases into an error instead.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;
use crate::formula::Formula;
use crate::signature::{Action, Signature};

/// Default disjunct budget for normal-form rewriting.
pub const DEFAULT_MAX_DISJUNCTS: usize = 100_000;

/// A unary strong normal form. `boxes` is total over the contravariant
/// class: the empty disjunct set encodes `[b]ff` and `{Top}` encodes `[b]tt`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnarySnf {
    Top,
    Node {
        diamonds: BTreeSet<(Action, UnarySnf)>,
        boxes: BTreeMap<Action, BTreeSet<UnarySnf>>,
    },
}

impl UnarySnf {
    pub fn modal_depth(&self) -> usize {
        match self {
            UnarySnf::Top => 0,
            UnarySnf::Node { diamonds, boxes } => {
                let d = diamonds
                    .iter()
                    .map(|(_, u)| u.modal_depth())
                    .max()
                    .unwrap_or(0);
                let b = boxes
                    .values()
                    .flat_map(|set| set.iter().map(UnarySnf::modal_depth))
                    .max()
                    .unwrap_or(0);
                1 + d.max(b)
            }
        }
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            UnarySnf::Top => Formula::Top,
            UnarySnf::Node { diamonds, boxes } => {
                let mut conjuncts: Vec<Formula> = diamonds
                    .iter()
                    .map(|(a, u)| Formula::diamond(a.clone(), u.to_formula()))
                    .collect();
                for (b, set) in boxes {
                    let body = Formula::or(set.iter().map(UnarySnf::to_formula));
                    conjuncts.push(Formula::boxed(b.clone(), body));
                }
                Formula::and(conjuncts)
            }
        }
    }
}

/// A finite disjunction of unary strong normal forms; empty encodes `ff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongNormalForm {
    disjuncts: BTreeSet<UnarySnf>,
}

impl StrongNormalForm {
    pub fn disjuncts(&self) -> &BTreeSet<UnarySnf> {
        &self.disjuncts
    }

    pub fn is_bot(&self) -> bool {
        self.disjuncts.is_empty()
    }

    pub fn modal_depth(&self) -> usize {
        self.disjuncts
            .iter()
            .map(UnarySnf::modal_depth)
            .max()
            .unwrap_or(0)
    }

    pub fn to_formula(&self) -> Formula {
        Formula::or(self.disjuncts.iter().map(UnarySnf::to_formula))
    }
}

/// Counters reported by the rewriting pipeline.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SnfStats {
    /// Boxes `[b]tt` synthesized to make the box mapping total.
    pub box_completions: usize,
}

/// Rewrites `f` into an equivalent strong normal form. `limit` bounds the
/// size of every disjunct set built along the way.
pub fn to_strong_normal_form(
    f: &Formula,
    sig: &Signature,
    limit: usize,
) -> Result<StrongNormalForm, Error> {
    to_strong_normal_form_with_stats(f, sig, limit).map(|(snf, _)| snf)
}

pub fn to_strong_normal_form_with_stats(
    f: &Formula,
    sig: &Signature,
    limit: usize,
) -> Result<(StrongNormalForm, SnfStats), Error> {
    if !sig.is_bivariant_free() {
        return Err(Error::PreconditionViolated(
            "strong normal forms require a bivariant-free signature".into(),
        ));
    }
    f.validate(sig)?;
    let mut nf = Normalizer {
        sig,
        limit,
        stats: SnfStats::default(),
    };
    let disjuncts = nf.snf(f)?;
    Ok((StrongNormalForm { disjuncts }, nf.stats))
}

struct Normalizer<'a> {
    sig: &'a Signature,
    limit: usize,
    stats: SnfStats,
}

impl Normalizer<'_> {
    fn check(&self, len: usize) -> Result<(), Error> {
        if len > self.limit {
            Err(Error::TooManyDisjuncts { limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// Completes the box mapping over the contravariant class, collapses
    /// `Top`-containing box bodies to `{Top}`, and identifies the node that
    /// constrains nothing with `Top`.
    fn node(
        &mut self,
        diamonds: BTreeSet<(Action, UnarySnf)>,
        mut boxes: BTreeMap<Action, BTreeSet<UnarySnf>>,
    ) -> UnarySnf {
        for b in self.sig.contravariant() {
            if !boxes.contains_key(b) {
                boxes.insert(b.clone(), BTreeSet::from([UnarySnf::Top]));
                self.stats.box_completions += 1;
            }
        }
        for set in boxes.values_mut() {
            if set.len() > 1 && set.contains(&UnarySnf::Top) {
                *set = BTreeSet::from([UnarySnf::Top]);
            }
        }
        let trivial = diamonds.is_empty()
            && boxes
                .values()
                .all(|s| s.len() == 1 && s.contains(&UnarySnf::Top));
        if trivial {
            UnarySnf::Top
        } else {
            UnarySnf::Node { diamonds, boxes }
        }
    }

    fn snf(&mut self, f: &Formula) -> Result<BTreeSet<UnarySnf>, Error> {
        match f {
            Formula::Bot => Ok(BTreeSet::new()),
            Formula::Top => Ok(BTreeSet::from([UnarySnf::Top])),
            Formula::Or(cs) => {
                let mut out = BTreeSet::new();
                for c in cs {
                    out.extend(self.snf(c)?);
                    self.check(out.len())?;
                }
                Ok(out)
            }
            Formula::And(cs) => {
                let mut acc = BTreeSet::from([UnarySnf::Top]);
                for c in cs {
                    let rhs = self.snf(c)?;
                    let mut next = BTreeSet::new();
                    for u in &acc {
                        for v in &rhs {
                            next.insert(self.conjoin(u, v)?);
                            self.check(next.len())?;
                        }
                    }
                    acc = next;
                }
                Ok(acc)
            }
            Formula::Diamond(a, g) => {
                // <a>(x1 | ... | xn) = <a>x1 | ... | <a>xn; n = 0 collapses to ff
                let inner = self.snf(g)?;
                let mut out = BTreeSet::new();
                for u in inner {
                    let d = BTreeSet::from([(a.clone(), u)]);
                    out.insert(self.node(d, BTreeMap::new()));
                }
                Ok(out)
            }
            Formula::Box(b, g) => {
                let inner = self.snf(g)?;
                let mut boxes = BTreeMap::new();
                boxes.insert(b.clone(), inner);
                Ok(BTreeSet::from([self.node(BTreeSet::new(), boxes)]))
            }
        }
    }

    /// Conjunction of two unary strong normal forms, again in unary strong
    /// normal form: diamonds accumulate, box bodies distribute pointwise.
    fn conjoin(&mut self, u: &UnarySnf, v: &UnarySnf) -> Result<UnarySnf, Error> {
        match (u, v) {
            (UnarySnf::Top, x) | (x, UnarySnf::Top) => Ok(x.clone()),
            (
                UnarySnf::Node {
                    diamonds: d1,
                    boxes: b1,
                },
                UnarySnf::Node {
                    diamonds: d2,
                    boxes: b2,
                },
            ) => {
                let diamonds: BTreeSet<_> = d1.union(d2).cloned().collect();
                let mut boxes = BTreeMap::new();
                for b in self.sig.contravariant() {
                    let s1 = b1.get(b).cloned().unwrap_or_default();
                    let s2 = b2.get(b).cloned().unwrap_or_default();
                    let mut set = BTreeSet::new();
                    for x in &s1 {
                        for y in &s2 {
                            set.insert(self.conjoin(x, y)?);
                            self.check(set.len())?;
                        }
                    }
                    boxes.insert(b.clone(), set);
                }
                Ok(self.node(diamonds, boxes))
            }
        }
    }
}

/// Applies the unit, annihilator and modal rewrites exhaustively:
/// `x | tt = tt`, `x | ff = x`, `x & tt = x`, `x & ff = ff`, `[b]tt = tt`,
/// `[b]x & [b]y = [b](x & y)`, `<a>(x | y) = <a>x | <a>y`, `<a>ff = ff`,
/// plus flattening and deduplication of conjunctions and disjunctions.
/// Distribution of `&` over `|` is not part of this pass.
pub fn simplify(f: &Formula) -> Formula {
    match f {
        Formula::Bot | Formula::Top => f.clone(),
        Formula::Diamond(a, g) => match simplify(g) {
            Formula::Bot => Formula::Bot,
            Formula::Or(cs) => Formula::or(cs.into_iter().map(|c| Formula::diamond(a.clone(), c))),
            g => Formula::diamond(a.clone(), g),
        },
        Formula::Box(b, g) => match simplify(g) {
            Formula::Top => Formula::Top,
            g => Formula::boxed(b.clone(), g),
        },
        Formula::And(cs) => simplify_and(cs.iter().map(simplify)),
        Formula::Or(cs) => simplify_or(cs.iter().map(simplify)),
    }
}

fn simplify_and<I: IntoIterator<Item = Formula>>(children: I) -> Formula {
    let mut flat: Vec<Formula> = Vec::new();
    for c in children {
        match c {
            Formula::Top => {}
            Formula::Bot => return Formula::Bot,
            Formula::And(cs) => flat.extend(cs),
            other => flat.push(other),
        }
    }
    // [b]x & [b]y = [b](x & y), per action
    let mut box_bodies: BTreeMap<Action, Vec<Formula>> = BTreeMap::new();
    let mut rest: Vec<Formula> = Vec::new();
    for c in flat {
        match c {
            Formula::Box(b, g) => box_bodies.entry(b).or_default().push(*g),
            other => rest.push(other),
        }
    }
    for (b, bodies) in box_bodies {
        let body = if bodies.len() == 1 {
            bodies.into_iter().next().unwrap()
        } else {
            simplify_and(bodies)
        };
        match body {
            Formula::Top => {}
            other => rest.push(Formula::boxed(b, other)),
        }
    }
    Formula::and(rest)
}

fn simplify_or<I: IntoIterator<Item = Formula>>(children: I) -> Formula {
    let mut flat: Vec<Formula> = Vec::new();
    for c in children {
        match c {
            Formula::Bot => {}
            Formula::Top => return Formula::Top,
            Formula::Or(cs) => flat.extend(cs),
            other => flat.push(other),
        }
    }
    Formula::or(flat)
}

/// Syntactic check for the unary strong normal form grammar: `tt`, or a
/// conjunction of covariant diamonds whose bodies are unary strong normal
/// forms together with exactly one box per contravariant action whose body
/// is `ff`, a unary strong normal form, or a disjunction of them.
pub fn is_unary_snf(f: &Formula, sig: &Signature) -> bool {
    if *f == Formula::Top {
        return true;
    }
    let conjuncts: Vec<&Formula> = match f {
        Formula::And(cs) => cs.iter().collect(),
        other => vec![other],
    };
    let mut seen_boxes: BTreeSet<&Action> = BTreeSet::new();
    for c in &conjuncts {
        match c {
            Formula::Diamond(a, g) => {
                if !sig.covariant().contains(a) || !is_unary_snf(g, sig) {
                    return false;
                }
            }
            Formula::Box(b, g) => {
                if !sig.contravariant().contains(b)
                    || !seen_boxes.insert(b)
                    || !is_snf_disjunction(g, sig)
                {
                    return false;
                }
            }
            _ => return false,
        }
    }
    seen_boxes.len() == sig.contravariant().len()
}

fn is_snf_disjunction(f: &Formula, sig: &Signature) -> bool {
    match f {
        Formula::Bot => true,
        Formula::Or(cs) => cs.iter().all(|c| is_unary_snf(c, sig)),
        other => is_unary_snf(other, sig),
    }
}
