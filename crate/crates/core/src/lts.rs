//! Explicit finite labelled transition graphs and the operational semantics
//! of process terms.
//!
//! Rules: `w -b-> w` for every contravariant `b`; `a.p -a-> p`; and both
//! choice rules. Under a signature with bivariant actions omega still loops
//! only on the contravariant class.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{unknown_action, Error};
use crate::signature::{Action, Signature};
use crate::term::ProcessTerm;

/// The derivable transitions of a term, as (action, derivative) pairs.
pub fn transitions(p: &ProcessTerm, sig: &Signature) -> BTreeSet<(Action, ProcessTerm)> {
    match p {
        ProcessTerm::Nil => BTreeSet::new(),
        ProcessTerm::Omega => sig
            .contravariant()
            .iter()
            .map(|b| (b.clone(), ProcessTerm::Omega))
            .collect(),
        ProcessTerm::Prefix(a, q) => {
            let mut s = BTreeSet::new();
            s.insert((a.clone(), (**q).clone()));
            s
        }
        ProcessTerm::Choice(p1, p2) => {
            let mut s = transitions(p1, sig);
            s.extend(transitions(p2, sig));
            s
        }
    }
}

/// A finite LTS with string-named states. States built from terms are named
/// by their canonical printed form, so structurally equal subterms share a
/// state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lts {
    signature: Signature,
    states: BTreeSet<String>,
    initial: String,
    edges: BTreeSet<(String, Action, String)>,
}

/// Serialized shape: `{"states": [...], "initial": ..., "edges": [[s,a,t], ...]}`
/// with states and edges sorted.
#[derive(Serialize, Deserialize)]
struct LtsDoc {
    states: Vec<String>,
    initial: String,
    edges: Vec<(String, String, String)>,
}

impl Lts {
    pub fn new(
        signature: Signature,
        states: BTreeSet<String>,
        initial: String,
        edges: BTreeSet<(String, Action, String)>,
    ) -> Result<Self, Error> {
        let lts = Lts {
            signature,
            states,
            initial,
            edges,
        };
        lts.validate()?;
        Ok(lts)
    }

    /// Unfolds the operational semantics of `p` into its reachable transition
    /// graph. Terminates because derivatives of non-omega terms shrink and
    /// omega is a single absorbing state.
    pub fn from_term(p: &ProcessTerm, sig: &Signature) -> Result<Self, Error> {
        p.validate(sig)?;
        let mut states: BTreeSet<String> = BTreeSet::new();
        let mut edges: BTreeSet<(String, Action, String)> = BTreeSet::new();
        let mut queue: VecDeque<ProcessTerm> = VecDeque::new();
        let initial = p.canonical_string();
        states.insert(initial.clone());
        queue.push_back(p.clone());
        let mut seen: BTreeSet<String> = states.clone();
        while let Some(t) = queue.pop_front() {
            let src = t.canonical_string();
            for (a, t2) in transitions(&t, sig) {
                let dst = t2.canonical_string();
                edges.insert((src.clone(), a, dst.clone()));
                if seen.insert(dst.clone()) {
                    states.insert(dst);
                    queue.push_back(t2);
                }
            }
        }
        Ok(Lts {
            signature: sig.clone(),
            states,
            initial,
            edges,
        })
    }

    /// Image-finiteness is automatic for finite edge sets; this checks the
    /// remaining invariants: endpoints are states and labels are in the
    /// signature.
    pub fn validate(&self) -> Result<(), Error> {
        if !self.states.contains(&self.initial) {
            return Err(Error::SignatureMismatch(format!(
                "initial state `{}` is not a state",
                self.initial
            )));
        }
        for (s, a, t) in &self.edges {
            if !self.signature.contains(a) {
                return Err(unknown_action(a));
            }
            if !self.states.contains(s) || !self.states.contains(t) {
                return Err(Error::SignatureMismatch(format!(
                    "edge ({s}, {a}, {t}) mentions an unknown state"
                )));
            }
        }
        Ok(())
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn states(&self) -> &BTreeSet<String> {
        &self.states
    }

    pub fn initial(&self) -> &str {
        &self.initial
    }

    pub fn edges(&self) -> &BTreeSet<(String, Action, String)> {
        &self.edges
    }

    pub fn successors<'a>(&'a self, state: &str, action: &Action) -> Vec<&'a str> {
        self.edges
            .iter()
            .filter(|(s, a, _)| s == state && a == action)
            .map(|(_, _, t)| t.as_str())
            .collect()
    }

    /// A state name not yet used, built from `base` by appending underscores.
    pub(crate) fn fresh_state(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.states.contains(&name) {
            name.push('_');
        }
        name
    }

    /// Canonical JSON document; byte-deterministic.
    pub fn to_json(&self) -> String {
        let doc = LtsDoc {
            states: self.states.iter().cloned().collect(),
            initial: self.initial.clone(),
            edges: self
                .edges
                .iter()
                .map(|(s, a, t)| (s.clone(), a.to_string(), t.clone()))
                .collect(),
        };
        serde_json::to_string(&doc).expect("serializing an LTS cannot fail")
    }

    /// Reads back the toolkit's own serialization; the signature is supplied
    /// separately. Fails on unknown labels or dangling edge endpoints.
    pub fn from_json(text: &str, sig: &Signature) -> Result<Self, Error> {
        let doc: LtsDoc = serde_json::from_str(text)
            .map_err(|e| Error::PreconditionViolated(format!("invalid LTS document: {e}")))?;
        Lts::new(
            sig.clone(),
            doc.states.into_iter().collect(),
            doc.initial,
            doc.edges
                .into_iter()
                .map(|(s, a, t)| (s, Action::new(a), t))
                .collect(),
        )
    }

    /// Adjacency indexed for the fixed-point solvers.
    pub(crate) fn indexed(&self) -> IndexedLts {
        let names: Vec<String> = self.states.iter().cloned().collect();
        let index: BTreeMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut succ: Vec<BTreeMap<Action, Vec<usize>>> = vec![BTreeMap::new(); names.len()];
        for (s, a, t) in &self.edges {
            succ[index[s.as_str()]]
                .entry(a.clone())
                .or_default()
                .push(index[t.as_str()]);
        }
        IndexedLts { names, succ }
    }
}

pub(crate) struct IndexedLts {
    pub names: Vec<String>,
    /// Per-state successor groups, keyed by action.
    pub succ: Vec<BTreeMap<Action, Vec<usize>>>,
}

impl IndexedLts {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn successors(&self, s: usize, a: &Action) -> &[usize] {
        self.succ[s].get(a).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}
