//! Shared generators and oracles for the property suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;

use ccrep_core::logic::enumerate_terms;
use ccrep_core::{Action, Formula, ProcessTerm, Signature};

pub fn sig_ab() -> Signature {
    Signature::parse("r: a\nl: b").unwrap()
}

pub fn sig_abc() -> Signature {
    Signature::parse("r: a\nl: b\nbi: c").unwrap()
}

/// Random terms over `sig`, prefix depth bounded by `depth`, sums drawing up
/// to `width` summands.
pub fn arb_term(sig: &Signature, depth: u32, width: u32) -> BoxedStrategy<ProcessTerm> {
    let actions: Vec<Action> = sig.actions().cloned().collect();
    let leaf = prop_oneof![Just(ProcessTerm::Nil), Just(ProcessTerm::Omega)];
    leaf.prop_recursive(depth, 16, width, move |inner| {
        let actions = actions.clone();
        prop::collection::vec((prop::sample::select(actions), inner), 1..=width as usize).prop_map(
            |summands| {
                ProcessTerm::sum(summands.into_iter().map(|(a, p)| ProcessTerm::prefix(a, p)))
            },
        )
    })
    .boxed()
}

/// Random omega-free terms.
pub fn arb_term_omega_free(sig: &Signature, depth: u32, width: u32) -> BoxedStrategy<ProcessTerm> {
    let actions: Vec<Action> = sig.actions().cloned().collect();
    let leaf = Just(ProcessTerm::Nil).boxed();
    leaf.prop_recursive(depth, 16, width, move |inner| {
        let actions = actions.clone();
        prop::collection::vec((prop::sample::select(actions), inner), 1..=width as usize).prop_map(
            |summands| {
                ProcessTerm::sum(summands.into_iter().map(|(a, p)| ProcessTerm::prefix(a, p)))
            },
        )
    })
    .boxed()
}

/// Random formulae over `sig`, modal depth bounded by `depth`.
pub fn arb_formula(sig: &Signature, depth: u32, width: u32) -> BoxedStrategy<Formula> {
    let diamonds: Vec<Action> = sig.diamond_actions().into_iter().collect();
    let boxes: Vec<Action> = sig.box_actions().into_iter().collect();
    let leaf = prop_oneof![Just(Formula::Bot), Just(Formula::Top)];
    leaf.prop_recursive(depth, 32, width + 2, move |inner| {
        let diamonds = diamonds.clone();
        let boxes = boxes.clone();
        prop_oneof![
            (prop::sample::select(diamonds), inner.clone())
                .prop_map(|(a, f)| Formula::diamond(a, f)),
            (prop::sample::select(boxes), inner.clone()).prop_map(|(b, f)| Formula::boxed(b, f)),
            prop::collection::vec(inner.clone(), 2..=width as usize).prop_map(Formula::and),
            prop::collection::vec(inner, 2..=width as usize).prop_map(Formula::or),
        ]
    })
    .boxed()
}

/// The exhaustive small model universe used for pointwise formula
/// comparisons: every term to prefix depth 3 at width 1 plus every term to
/// prefix depth 2 at width 2.
pub fn universe(sig: &Signature) -> Vec<ProcessTerm> {
    let mut set: BTreeSet<ProcessTerm> = enumerate_terms(sig, 3, 1).into_iter().collect();
    set.extend(enumerate_terms(sig, 2, 2));
    set.into_iter().collect()
}

/// Pointwise satisfaction agreement of two formulae over the universe;
/// returns a counterexample term when they disagree.
pub fn models_disagree(
    f: &Formula,
    g: &Formula,
    sig: &Signature,
    terms: &[ProcessTerm],
) -> Option<ProcessTerm> {
    terms
        .iter()
        .find(|p| {
            ccrep_core::logic::satisfies(p, f, sig).unwrap()
                != ccrep_core::logic::satisfies(p, g, sig).unwrap()
        })
        .cloned()
}
