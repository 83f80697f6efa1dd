//! Bivariant actions and their elimination.
//!
//! A bivariant action is subject to both simulation clauses at once, so it
//! cannot be approximated. The encodings here split each bivariant action
//! `c` into a covariant part `c^r` and a contravariant part `c^l`:
//!
//! * `transform_t` duplicates every `c`-transition as `c^r` and `c^l`,
//!   keeping everything else; it preserves and reflects both the simulation
//!   preorder and the logic.
//! * `transform_t0` is the composite encoding that additionally introduces
//!   an absorbing state `u` with omega behaviour and couples every covariant
//!   action `a` with an `a^l` edge into `u`.
//! * `transform_tplus` adjoins `u` and a single contravariant action edge
//!   from every state; applied to systems without that action it changes
//!   nothing about the preorder.
//!
//! `reconstruct_bivariant` inverts the term-level encoding: it prunes
//! redundant summands, re-pairs `c^r`/`c^l` parts, folds them back into `c`,
//! and accepts the result only if its re-encoding is cc-equivalent to the
//! input, which makes it a decision procedure for representability.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, ReconstructError};
use crate::formula::Formula;
use crate::lts::Lts;
use crate::signature::{Action, ActionClass, Signature};
use crate::simulation::{cc_equivalent, lts_simulates, simulates};
use crate::term::ProcessTerm;

/// cc-simulation with the covariant clause over the covariant and bivariant
/// classes and the contravariant clause over the contravariant and bivariant
/// classes.
pub fn bi_simulates(p: &ProcessTerm, q: &ProcessTerm, sig: &Signature) -> Result<bool, Error> {
    let lp = Lts::from_term(p, sig)?;
    let lq = Lts::from_term(q, sig)?;
    lts_simulates(&lp, lp.initial(), &lq, lq.initial())
}

/// Mutual bivariant simulation.
pub fn bi_equivalent(p: &ProcessTerm, q: &ProcessTerm, sig: &Signature) -> Result<bool, Error> {
    Ok(bi_simulates(p, q, sig)? && bi_simulates(q, p, sig)?)
}

/// Term-level splitting homomorphism: `c.p` becomes `c^r.p' + c^l.p'` for
/// bivariant `c`. Defined on omega-free terms only; the omega state behaves
/// differently over the split signature than the encoding of its behaviour
/// over the original one.
pub fn transform_t_term(p: &ProcessTerm, sig: &Signature) -> Result<ProcessTerm, Error> {
    p.validate(sig)?;
    if p.contains_omega() {
        return Err(Error::OmegaInBivariantTerm);
    }
    Ok(t_term(p, sig))
}

fn t_term(p: &ProcessTerm, sig: &Signature) -> ProcessTerm {
    match p {
        ProcessTerm::Nil => ProcessTerm::Nil,
        ProcessTerm::Omega => unreachable!("omega is rejected before encoding"),
        ProcessTerm::Prefix(a, q) => {
            let body = t_term(q, sig);
            if sig.bivariant().contains(a) {
                ProcessTerm::choice(
                    ProcessTerm::prefix(a.covariant_part(), body.clone()),
                    ProcessTerm::prefix(a.contravariant_part(), body),
                )
            } else {
                ProcessTerm::prefix(a.clone(), body)
            }
        }
        ProcessTerm::Choice(p1, p2) => ProcessTerm::choice(t_term(p1, sig), t_term(p2, sig)),
    }
}

/// LTS-level splitting: states unchanged, covariant and contravariant edges
/// copied, each bivariant edge duplicated as `c^r` and `c^l`.
pub fn transform_t_lts(x: &Lts) -> Result<Lts, Error> {
    let sig = x.signature();
    let out_sig = sig.split_bivariant();
    let mut edges: BTreeSet<(String, Action, String)> = BTreeSet::new();
    for (s, d, t) in x.edges() {
        if sig.bivariant().contains(d) {
            edges.insert((s.clone(), d.covariant_part(), t.clone()));
            edges.insert((s.clone(), d.contravariant_part(), t.clone()));
        } else {
            edges.insert((s.clone(), d.clone(), t.clone()));
        }
    }
    Lts::new(out_sig, x.states().clone(), x.initial().to_string(), edges)
}

/// The composite encoding: every edge label `d` is renamed `d^l`, covariant
/// and bivariant edges additionally get a `d^r` copy, every state gains an
/// `a^l` edge into a fresh absorbing state `u` for each covariant `a`, and
/// `u` loops on `d^l` for every action `d`.
pub fn transform_t0(x: &Lts) -> Result<Lts, Error> {
    let sig = x.signature();
    let out_sig = sig.composite_encoding_signature();
    let u = x.fresh_state("u");
    let mut states = x.states().clone();
    states.insert(u.clone());
    let mut edges: BTreeSet<(String, Action, String)> = BTreeSet::new();
    for (s, d, t) in x.edges() {
        edges.insert((s.clone(), d.contravariant_part(), t.clone()));
        if !sig.contravariant().contains(d) {
            edges.insert((s.clone(), d.covariant_part(), t.clone()));
        }
    }
    for s in x.states() {
        for a in sig.covariant() {
            edges.insert((s.clone(), a.contravariant_part(), u.clone()));
        }
    }
    for d in sig.actions() {
        edges.insert((u.clone(), d.contravariant_part(), u.clone()));
    }
    Lts::new(out_sig, states, x.initial().to_string(), edges)
}

/// Adjoins a fresh state `u` with omega behaviour (self-loops on every
/// contravariant action of the ambient signature) and an edge labelled
/// `action` from every original state into `u`. Requires that the input has
/// no `action`-labelled edge.
pub fn transform_tplus(x: &Lts, action: &Action) -> Result<Lts, Error> {
    let sig = x.signature().clone();
    if !sig.contravariant().contains(action) {
        return Err(Error::PreconditionViolated(format!(
            "`{action}` is not a contravariant action of the signature"
        )));
    }
    if x.edges().iter().any(|(_, d, _)| d == action) {
        return Err(Error::PreconditionViolated(format!(
            "the system already contains a `{action}` transition"
        )));
    }
    let u = x.fresh_state("u");
    let mut states = x.states().clone();
    states.insert(u.clone());
    let mut edges = x.edges().clone();
    for s in x.states() {
        edges.insert((s.clone(), action.clone(), u.clone()));
    }
    for b in sig.contravariant() {
        edges.insert((u.clone(), b.clone(), u.clone()));
    }
    Lts::new(sig, states, x.initial().to_string(), edges)
}

/// Formula translation matching `transform_t`: `<c>` becomes `<c^r>` and
/// `[c]` becomes `[c^l]` for bivariant `c`; everything else is homomorphic.
pub fn translate_formula(f: &Formula, sig: &Signature) -> Result<Formula, Error> {
    f.validate(sig)?;
    Ok(translate(f, sig))
}

fn translate(f: &Formula, sig: &Signature) -> Formula {
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Top => Formula::Top,
        Formula::And(cs) => Formula::and(cs.iter().map(|c| translate(c, sig))),
        Formula::Or(cs) => Formula::or(cs.iter().map(|c| translate(c, sig))),
        Formula::Diamond(a, g) => {
            let a = if sig.bivariant().contains(a) {
                a.covariant_part()
            } else {
                a.clone()
            };
            Formula::diamond(a, translate(g, sig))
        }
        Formula::Box(b, g) => {
            let b = if sig.bivariant().contains(b) {
                b.contravariant_part()
            } else {
                b.clone()
            };
            Formula::boxed(b, translate(g, sig))
        }
    }
}

/// Relabels the image of either encoding into the uniform signature, where
/// every original action has both a `^r` and a `^l` name: bare covariant
/// labels become `a^r`, bare contravariant labels become `b^l`, generated
/// labels stay as they are.
pub fn rename_to_uniform(x: &Lts, sig: &Signature) -> Result<Lts, Error> {
    let mut edges: BTreeSet<(String, Action, String)> = BTreeSet::new();
    for (s, d, t) in x.edges() {
        let renamed = if d.is_generated() {
            d.clone()
        } else {
            match sig.class_of(d) {
                Some(ActionClass::Covariant) => d.covariant_part(),
                Some(ActionClass::Contravariant) => d.contravariant_part(),
                Some(ActionClass::Bivariant) => {
                    return Err(Error::PreconditionViolated(format!(
                        "bare bivariant label `{d}` cannot occur in an encoding image"
                    )))
                }
                None => {
                    return Err(Error::SignatureMismatch(format!(
                        "label `{d}` does not stem from the signature"
                    )))
                }
            }
        };
        edges.insert((s.clone(), renamed, t.clone()));
    }
    Lts::new(
        sig.uniform_signature(),
        x.states().clone(),
        x.initial().to_string(),
        edges,
    )
}

/// Whether `p` (a term over the split signature) is the encoding image of
/// some system: in its transition graph, every state has identical `c^r`-
/// and `c^l`-successor sets for every bivariant `c`.
pub fn is_representation(p: &ProcessTerm, sig: &Signature) -> Result<bool, Error> {
    let abar = sig.split_bivariant();
    let lts = Lts::from_term(p, &abar)?;
    for s in lts.states() {
        for c in sig.bivariant() {
            let mut rs: Vec<&str> = lts.successors(s, &c.covariant_part());
            let mut ls: Vec<&str> = lts.successors(s, &c.contravariant_part());
            rs.sort_unstable();
            ls.sort_unstable();
            if rs != ls {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Inverts the term-level encoding whenever possible.
///
/// Bottom-up: at every level, summands with a non-maximal body under a
/// covariant action are removed, dually non-minimal bodies under
/// contravariant actions (ties keep the canonically first body); the
/// surviving `c^r` and `c^l` bodies are pooled and folded into `c`-summands
/// over the original signature. The candidate counts only if its re-encoding
/// is cc-equivalent to the input; otherwise the input is not equivalent to
/// the representation of any term and `NotRepresentable` is returned.
pub fn reconstruct_bivariant(
    p: &ProcessTerm,
    sig: &Signature,
) -> Result<ProcessTerm, ReconstructError> {
    let abar = sig.split_bivariant();
    p.validate(&abar)?;
    if *p == ProcessTerm::Nil || *p == ProcessTerm::Omega {
        return Ok(p.clone());
    }
    if p.contains_omega() {
        return Err(Error::OmegaInBivariantTerm.into());
    }
    let candidate = rebuild(p, sig, &abar)?;
    let image = transform_t_term(&candidate, sig)?;
    if cc_equivalent(p, &image, &abar)? {
        Ok(candidate)
    } else {
        Err(ReconstructError::NotRepresentable { candidate, image })
    }
}

fn rebuild(
    p: &ProcessTerm,
    sig: &Signature,
    abar: &Signature,
) -> Result<ProcessTerm, ReconstructError> {
    if *p == ProcessTerm::Nil {
        return Ok(ProcessTerm::Nil);
    }
    let mut groups: BTreeMap<Action, Vec<ProcessTerm>> = BTreeMap::new();
    for s in p.summands() {
        match s {
            ProcessTerm::Nil => {}
            ProcessTerm::Omega => return Err(Error::OmegaInBivariantTerm.into()),
            ProcessTerm::Prefix(a, body) => {
                groups.entry(a.clone()).or_default().push((**body).clone())
            }
            ProcessTerm::Choice(..) => unreachable!("summands are not choices"),
        }
    }
    for (a, bodies) in groups.iter_mut() {
        let maximal = abar.covariant().contains(a);
        *bodies = prune(std::mem::take(bodies), maximal, abar)?;
    }
    let mut out: BTreeSet<ProcessTerm> = BTreeSet::new();
    for (a, bodies) in &groups {
        if sig.contains(a) {
            for body in bodies {
                out.insert(ProcessTerm::prefix(a.clone(), rebuild(body, sig, abar)?));
            }
        }
    }
    for c in sig.bivariant() {
        let mut pool: BTreeSet<&ProcessTerm> = BTreeSet::new();
        pool.extend(groups.get(&c.covariant_part()).into_iter().flatten());
        pool.extend(groups.get(&c.contravariant_part()).into_iter().flatten());
        for body in pool {
            out.insert(ProcessTerm::prefix(c.clone(), rebuild(body, sig, abar)?));
        }
    }
    Ok(ProcessTerm::sum(out))
}

/// Keeps the cc-maximal (or minimal) bodies; cc-equivalent duplicates keep
/// the canonically first representative.
fn prune(
    mut bodies: Vec<ProcessTerm>,
    maximal: bool,
    abar: &Signature,
) -> Result<Vec<ProcessTerm>, Error> {
    bodies.sort_by_key(|x| x.canonical_string());
    let n = bodies.len();
    let mut sim = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sim[i][j] = simulates(&bodies[i], &bodies[j], abar)?;
            }
        }
    }
    let dominated = |i: usize, j: usize| if maximal { sim[j][i] } else { sim[i][j] };
    let mut keep = Vec::new();
    for (j, body) in bodies.iter().enumerate() {
        let drop = (0..n).any(|i| i != j && dominated(i, j) && (!dominated(j, i) || i < j));
        if !drop {
            keep.push(body.clone());
        }
    }
    Ok(keep)
}
