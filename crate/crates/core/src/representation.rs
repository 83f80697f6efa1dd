//! Graphical representation of formulae by finite sets of processes, and the
//! decision procedures built on it.
//!
//! A formula is represented by a finite antichain of terms whose upward
//! closure under cc-simulation is exactly its model class. Consistency,
//! primality, entailment and equivalence are all decided through the
//! representation: models of `f` are the upward closure of `represent(f)`,
//! and satisfaction is upward-closed along cc-simulation, so `f` entails `g`
//! iff every member of `represent(f)` satisfies `g`.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::formula::Formula;
use crate::logic::satisfies;
use crate::normal_form::{to_strong_normal_form, UnarySnf};
use crate::signature::Signature;
use crate::simulation::simulates;
use crate::term::ProcessTerm;

/// A finite set of pairwise cc-incomparable terms whose upward closure is
/// the model class of a formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationSet {
    members: Vec<ProcessTerm>,
}

impl RepresentationSet {
    /// Members in canonical (printed) order.
    pub fn members(&self) -> &[ProcessTerm] {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
}

/// The term extracted from a unary strong normal form: `theta(tt) = w`,
/// otherwise one summand `a.theta(u)` per diamond and one summand
/// `b.theta(v)` per disjunct of each box body; actions with empty box bodies
/// contribute no summand, and the empty sum is 0.
pub fn theta(u: &UnarySnf, sig: &Signature) -> Result<ProcessTerm, Error> {
    if !sig.is_bivariant_free() {
        return Err(Error::PreconditionViolated(
            "theta requires a bivariant-free signature".into(),
        ));
    }
    Ok(theta_rec(u))
}

fn theta_rec(u: &UnarySnf) -> ProcessTerm {
    match u {
        UnarySnf::Top => ProcessTerm::Omega,
        UnarySnf::Node { diamonds, boxes } => {
            let mut summands: Vec<ProcessTerm> = Vec::new();
            for (a, body) in diamonds {
                summands.push(ProcessTerm::prefix(a.clone(), theta_rec(body)));
            }
            for (b, set) in boxes {
                for v in set {
                    summands.push(ProcessTerm::prefix(b.clone(), theta_rec(v)));
                }
            }
            ProcessTerm::sum(summands)
        }
    }
}

/// The representation of `f`: theta of every strong-normal-form disjunct,
/// reduced to the cc-minimal antichain. Dominated members are dropped; ties
/// between cc-equivalent members keep the canonically first one.
pub fn represent(f: &Formula, sig: &Signature, limit: usize) -> Result<RepresentationSet, Error> {
    let snf = to_strong_normal_form(f, sig, limit)?;
    let terms: BTreeSet<ProcessTerm> = snf.disjuncts().iter().map(theta_rec).collect();
    let mut members: Vec<ProcessTerm> = terms.into_iter().collect();
    members.sort_by_key(|x| x.canonical_string());
    let members = minimal_antichain(members, sig)?;
    Ok(RepresentationSet { members })
}

/// Keeps the cc-minimal members of a canonically sorted list: `q` is dropped
/// when some other member simulates it strictly, or is cc-equivalent and
/// comes earlier.
fn minimal_antichain(
    members: Vec<ProcessTerm>,
    sig: &Signature,
) -> Result<Vec<ProcessTerm>, Error> {
    let n = members.len();
    let mut below = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                below[i][j] = simulates(&members[i], &members[j], sig)?;
            }
        }
    }
    let mut keep = Vec::new();
    for (j, q) in members.iter().enumerate() {
        let dominated = (0..n).any(|i| i != j && below[i][j] && (!below[j][i] || i < j));
        if !dominated {
            keep.push(q.clone());
        }
    }
    Ok(keep)
}

/// A formula is consistent iff its representation is nonempty; any member is
/// a satisfying witness.
pub fn is_consistent(f: &Formula, sig: &Signature, limit: usize) -> Result<bool, Error> {
    Ok(!represent(f, sig, limit)?.is_empty())
}

/// A formula is prime iff entailing a disjunction forces entailing one of
/// the disjuncts; decidable as: the reduced antichain has at most one
/// element. `ff` is vacuously prime but not representable by a single
/// process.
pub fn is_prime(f: &Formula, sig: &Signature, limit: usize) -> Result<bool, Error> {
    Ok(represent(f, sig, limit)?.len() <= 1)
}

/// `f <= g`: every model of `f` is a model of `g`.
pub fn entails(f: &Formula, g: &Formula, sig: &Signature, limit: usize) -> Result<bool, Error> {
    g.validate(sig)?;
    for p in represent(f, sig, limit)?.members() {
        if !satisfies(p, g, sig)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Mutual entailment.
pub fn equivalent(f: &Formula, g: &Formula, sig: &Signature, limit: usize) -> Result<bool, Error> {
    Ok(entails(f, g, sig, limit)? && entails(g, f, sig, limit)?)
}
