//! The covariant-contravariant simulation preorder, decided by a greatest
//! fixed point over the finite product of reachable state sets.
//!
//! The solver starts from the full relation and repeatedly deletes pairs that
//! violate either clause until the relation is stable: covariant actions must
//! be matched left-to-right, contravariant actions right-to-left, and
//! bivariant actions both ways. Omega participates as an ordinary state with
//! its contravariant self-loops; its least-element property is a theorem of
//! the semantics, not a special case of the solver.

use std::collections::{BTreeSet, VecDeque};

use crate::error::Error;
use crate::lts::{IndexedLts, Lts};
use crate::signature::{Action, Signature};
use crate::term::ProcessTerm;

/// A relation between the states of two LTSs, witnessing `from <=cc to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationRelation {
    pairs: BTreeSet<(String, String)>,
}

impl SimulationRelation {
    /// Wraps a candidate relation; [`SimulationRelation::is_cc_simulation`]
    /// checks whether it actually is one.
    pub fn from_pairs<I: IntoIterator<Item = (String, String)>>(pairs: I) -> Self {
        SimulationRelation {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn pairs(&self) -> &BTreeSet<(String, String)> {
        &self.pairs
    }

    /// One-pass closure check: every pair satisfies both clauses of the
    /// cc-simulation definition with partners inside the relation.
    pub fn is_cc_simulation(&self, left: &Lts, right: &Lts) -> Result<bool, Error> {
        if left.signature() != right.signature() {
            return Err(Error::SignatureMismatch(
                "the two systems carry different signatures".into(),
            ));
        }
        let cov = left.signature().diamond_actions();
        let con = left.signature().box_actions();
        let l = left.indexed();
        let r = right.indexed();
        let mut member = vec![false; l.len() * r.len()];
        for (s, t) in &self.pairs {
            match (l.index_of(s), r.index_of(t)) {
                (Some(i), Some(j)) => member[i * r.len() + j] = true,
                _ => return Ok(false),
            }
        }
        for i in 0..l.len() {
            for j in 0..r.len() {
                if member[i * r.len() + j] && !pair_ok(&l, &r, &cov, &con, i, j, &member) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn pair_ok(
    l: &IndexedLts,
    r: &IndexedLts,
    cov: &BTreeSet<Action>,
    con: &BTreeSet<Action>,
    s: usize,
    t: usize,
    rel: &[bool],
) -> bool {
    let m = r.len();
    for (a, ls) in &l.succ[s] {
        if !cov.contains(a) {
            continue;
        }
        let rs = r.successors(t, a);
        for &s2 in ls {
            if !rs.iter().any(|&t2| rel[s2 * m + t2]) {
                return false;
            }
        }
    }
    for (b, rts) in &r.succ[t] {
        if !con.contains(b) {
            continue;
        }
        let ls = l.successors(s, b);
        for &t2 in rts {
            if !ls.iter().any(|&s2| rel[s2 * m + t2]) {
                return false;
            }
        }
    }
    true
}

/// Greatest fixed point of the deletion operator over the full state product.
fn gfp(
    l: &IndexedLts,
    r: &IndexedLts,
    cov: &BTreeSet<Action>,
    con: &BTreeSet<Action>,
) -> Vec<bool> {
    let m = r.len();
    let mut rel = vec![true; l.len() * m];
    loop {
        let mut changed = false;
        for s in 0..l.len() {
            for t in 0..m {
                if rel[s * m + t] && !pair_ok(l, r, cov, con, s, t, &rel) {
                    rel[s * m + t] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// Decides whether state `from` of `left` is cc-simulated by state `to` of
/// `right`. Bivariant actions of the shared signature are subject to both
/// clauses.
pub fn lts_simulates(left: &Lts, from: &str, right: &Lts, to: &str) -> Result<bool, Error> {
    if left.signature() != right.signature() {
        return Err(Error::SignatureMismatch(
            "the two systems carry different signatures".into(),
        ));
    }
    let l = left.indexed();
    let r = right.indexed();
    let (i, j) = match (l.index_of(from), r.index_of(to)) {
        (Some(i), Some(j)) => (i, j),
        _ => {
            return Err(Error::PreconditionViolated(format!(
                "states `{from}` and `{to}` must exist in their systems"
            )))
        }
    };
    let cov = left.signature().diamond_actions();
    let con = left.signature().box_actions();
    let rel = gfp(&l, &r, &cov, &con);
    Ok(rel[i * r.len() + j])
}

fn require_bivariant_free(sig: &Signature) -> Result<(), Error> {
    if sig.is_bivariant_free() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(
            "this operation requires a bivariant-free signature".into(),
        ))
    }
}

/// `p <=cc q` over a bivariant-free signature.
pub fn simulates(p: &ProcessTerm, q: &ProcessTerm, sig: &Signature) -> Result<bool, Error> {
    require_bivariant_free(sig)?;
    let lp = Lts::from_term(p, sig)?;
    let lq = Lts::from_term(q, sig)?;
    lts_simulates(&lp, lp.initial(), &lq, lq.initial())
}

/// Mutual simulation.
pub fn cc_equivalent(p: &ProcessTerm, q: &ProcessTerm, sig: &Signature) -> Result<bool, Error> {
    Ok(simulates(p, q, sig)? && simulates(q, p, sig)?)
}

/// When `p <=cc q`, the greatest fixed point restricted to the pairs
/// reachable from the initial pair; `None` otherwise.
pub fn simulation_witness(
    p: &ProcessTerm,
    q: &ProcessTerm,
    sig: &Signature,
) -> Result<Option<SimulationRelation>, Error> {
    require_bivariant_free(sig)?;
    let lp = Lts::from_term(p, sig)?;
    let lq = Lts::from_term(q, sig)?;
    lts_simulation_witness(&lp, lp.initial(), &lq, lq.initial())
}

/// LTS-level variant of [`simulation_witness`].
pub fn lts_simulation_witness(
    left: &Lts,
    from: &str,
    right: &Lts,
    to: &str,
) -> Result<Option<SimulationRelation>, Error> {
    if left.signature() != right.signature() {
        return Err(Error::SignatureMismatch(
            "the two systems carry different signatures".into(),
        ));
    }
    let l = left.indexed();
    let r = right.indexed();
    let (i0, j0) = match (l.index_of(from), r.index_of(to)) {
        (Some(i), Some(j)) => (i, j),
        _ => {
            return Err(Error::PreconditionViolated(format!(
                "states `{from}` and `{to}` must exist in their systems"
            )))
        }
    };
    let cov = left.signature().diamond_actions();
    let con = left.signature().box_actions();
    let m = r.len();
    let rel = gfp(&l, &r, &cov, &con);
    if !rel[i0 * m + j0] {
        return Ok(None);
    }
    // Collect the pairs needed to close the initial pair under both clauses.
    let mut seen = vec![false; l.len() * m];
    seen[i0 * m + j0] = true;
    let mut queue = VecDeque::from([(i0, j0)]);
    let mut pairs = BTreeSet::new();
    while let Some((s, t)) = queue.pop_front() {
        pairs.insert((l.names[s].clone(), r.names[t].clone()));
        for (a, ls) in &l.succ[s] {
            if !cov.contains(a) {
                continue;
            }
            for &s2 in ls {
                for &t2 in r.successors(t, a) {
                    if rel[s2 * m + t2] && !seen[s2 * m + t2] {
                        seen[s2 * m + t2] = true;
                        queue.push_back((s2, t2));
                    }
                }
            }
        }
        for (b, rts) in &r.succ[t] {
            if !con.contains(b) {
                continue;
            }
            for &t2 in rts {
                for &s2 in l.successors(s, b) {
                    if rel[s2 * m + t2] && !seen[s2 * m + t2] {
                        seen[s2 * m + t2] = true;
                        queue.push_back((s2, t2));
                    }
                }
            }
        }
    }
    Ok(Some(SimulationRelation { pairs }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn sig() -> Signature {
        Signature::parse("r: a\nl: b").unwrap()
    }

    fn t(text: &str) -> ProcessTerm {
        parse_term(text, &sig()).unwrap()
    }

    #[test]
    fn omega_is_least() {
        let s = sig();
        assert!(simulates(&t("w"), &t("a.b.0"), &s).unwrap());
        assert!(simulates(&t("w"), &t("0"), &s).unwrap());
        assert!(simulates(&t("w"), &t("w"), &s).unwrap());
    }

    #[test]
    fn contravariant_clause_points_right_to_left() {
        let s = sig();
        assert!(simulates(&t("b.0"), &t("0"), &s).unwrap());
        assert!(!simulates(&t("0"), &t("b.0"), &s).unwrap());
    }

    #[test]
    fn covariant_clause_points_left_to_right() {
        let s = sig();
        assert!(!simulates(&t("a.0"), &t("0"), &s).unwrap());
        assert!(simulates(&t("0"), &t("a.0"), &s).unwrap());
    }

    #[test]
    fn equivalence_examples() {
        let s = sig();
        assert!(cc_equivalent(&t("0"), &t("0"), &s).unwrap());
        assert!(!cc_equivalent(&t("b.0"), &t("0"), &s).unwrap());
        assert!(cc_equivalent(&t("a.0 + a.0"), &t("a.0"), &s).unwrap());
    }

    #[test]
    fn witnesses_are_closed_relations() {
        let s = sig();
        let w = simulation_witness(&t("0"), &t("0"), &s).unwrap().unwrap();
        assert_eq!(w.pairs().len(), 1);
        assert!(w.pairs().contains(&("0".into(), "0".into())));

        let w = simulation_witness(&t("w"), &t("0"), &s).unwrap().unwrap();
        assert_eq!(w.pairs().len(), 1);
        assert!(w.pairs().contains(&("w".into(), "0".into())));

        assert!(simulation_witness(&t("0"), &t("b.0"), &s)
            .unwrap()
            .is_none());

        let lp = Lts::from_term(&t("w"), &s).unwrap();
        let lq = Lts::from_term(&t("a.b.0"), &s).unwrap();
        let w = simulation_witness(&t("w"), &t("a.b.0"), &s)
            .unwrap()
            .unwrap();
        assert!(w.is_cc_simulation(&lp, &lq).unwrap());
    }

    #[test]
    fn the_closure_check_rejects_bogus_relations() {
        let s = sig();
        let lp = Lts::from_term(&t("a.0"), &s).unwrap();
        let lq = Lts::from_term(&t("0"), &s).unwrap();
        // (a.0, 0) is not closed: the a-move of a.0 has no partner
        let bogus = SimulationRelation::from_pairs([("a.0".to_string(), "0".to_string())]);
        assert!(!bogus.is_cc_simulation(&lp, &lq).unwrap());
        // a relation mentioning unknown states is no simulation either
        let stray = SimulationRelation::from_pairs([("x".to_string(), "0".to_string())]);
        assert!(!stray.is_cc_simulation(&lp, &lq).unwrap());
    }

    #[test]
    fn bivariant_signatures_are_rejected_here() {
        let s = Signature::parse("r: a\nl: b\nbi: c").unwrap();
        assert!(matches!(
            simulates(&ProcessTerm::Nil, &ProcessTerm::Nil, &s),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn foreign_actions_are_a_signature_mismatch() {
        let s = sig();
        let other = Signature::parse("r: z\nl: b").unwrap();
        let foreign = parse_term("z.0", &other).unwrap();
        assert!(matches!(
            simulates(&foreign, &ProcessTerm::Nil, &s),
            Err(Error::SignatureMismatch(_))
        ));
    }
}
