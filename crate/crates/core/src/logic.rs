//! Model checking of cc-modal formulae over process terms, plus bounded
//! enumerators of terms and formulae.
//!
//! The enumerators are the designated brute-force oracles of the test suites:
//! sound for refuting a claimed logical equivalence, incomplete for proving
//! one. The complete decision procedures live in the representation module,
//! which is exactly what makes cross-checking the two meaningful.

use crate::error::Error;
use crate::formula::Formula;
use crate::lts::transitions;
use crate::signature::Signature;
use crate::term::ProcessTerm;

/// `p |= f`, by structural recursion on the formula. Works for any signature:
/// the action classes only constrain which formulae are well-formed, not how
/// satisfaction is evaluated.
pub fn satisfies(p: &ProcessTerm, f: &Formula, sig: &Signature) -> Result<bool, Error> {
    p.validate(sig)?;
    f.validate(sig)?;
    Ok(eval(p, f, sig))
}

fn eval(p: &ProcessTerm, f: &Formula, sig: &Signature) -> bool {
    match f {
        Formula::Bot => false,
        Formula::Top => true,
        Formula::And(cs) => cs.iter().all(|c| eval(p, c, sig)),
        Formula::Or(cs) => cs.iter().any(|c| eval(p, c, sig)),
        Formula::Diamond(a, g) => transitions(p, sig)
            .iter()
            .any(|(b, p2)| b == a && eval(p2, g, sig)),
        Formula::Box(b, g) => transitions(p, sig)
            .iter()
            .all(|(c, p2)| c != b || eval(p2, g, sig)),
    }
}

/// All canonical terms of prefix nesting at most `max_prefix_depth` whose
/// sums draw at most `max_width` distinct summands, in a deterministic order.
///
/// A term is either a leaf (0 or w) or a sum of 1..=`max_width` distinct
/// action-prefixed terms; nested sums only occur under a prefix.
pub fn enumerate_terms(
    sig: &Signature,
    max_prefix_depth: usize,
    max_width: usize,
) -> Vec<ProcessTerm> {
    let actions: Vec<_> = sig.actions().cloned().collect();
    let mut layer: Vec<ProcessTerm> = vec![ProcessTerm::Nil, ProcessTerm::Omega];
    for _ in 0..max_prefix_depth {
        let prefixes: Vec<ProcessTerm> = actions
            .iter()
            .flat_map(|a| {
                layer
                    .iter()
                    .map(move |p| ProcessTerm::prefix(a.clone(), p.clone()))
            })
            .collect();
        let mut next = vec![ProcessTerm::Nil, ProcessTerm::Omega];
        for k in 1..=max_width {
            for combo in combinations(prefixes.len(), k) {
                next.push(ProcessTerm::sum(combo.iter().map(|&i| prefixes[i].clone())));
            }
        }
        layer = next;
    }
    layer
}

/// All canonical formulae of modal depth at most `max_modal_depth` whose
/// conjunctions and disjunctions have at most `max_width` children, in a
/// deterministic order.
///
/// At each modal level a formula is a disjunction of conjunctions of modal
/// atoms over the previous level; every formula is equivalent to one of this
/// layered shape with no larger modal depth, which is what makes the family a
/// useful refutation oracle.
pub fn enumerate_formulae(
    sig: &Signature,
    max_modal_depth: usize,
    max_width: usize,
) -> Vec<Formula> {
    let diamonds: Vec<_> = sig.diamond_actions().into_iter().collect();
    let boxes: Vec<_> = sig.box_actions().into_iter().collect();
    let mut layer: Vec<Formula> = vec![Formula::Bot, Formula::Top];
    for _ in 0..max_modal_depth {
        let mut atoms: Vec<Formula> = Vec::new();
        for f in &layer {
            for a in &diamonds {
                atoms.push(Formula::diamond(a.clone(), f.clone()));
            }
        }
        for f in &layer {
            for b in &boxes {
                atoms.push(Formula::boxed(b.clone(), f.clone()));
            }
        }
        let mut conjs: Vec<Formula> = atoms.clone();
        for k in 2..=max_width {
            for combo in combinations(atoms.len(), k) {
                conjs.push(Formula::and(combo.iter().map(|&i| atoms[i].clone())));
            }
        }
        let mut next: Vec<Formula> = vec![Formula::Bot, Formula::Top];
        next.extend(conjs.iter().cloned());
        for k in 2..=max_width {
            for combo in combinations(conjs.len(), k) {
                next.push(Formula::or(combo.iter().map(|&i| conjs[i].clone())));
            }
        }
        layer = next;
    }
    layer
}

/// Searches the bounded formula family for a formula satisfied by `p` but
/// not by `q`. When `p` is not cc-simulated by `q`, the logical
/// characterization guarantees a distinguishing formula exists; this finds it
/// whenever it lies within the searched bounds.
///
/// The search runs width 1 up to `max_modal_depth`, then width
/// `2..=max_width` up to modal depth 2; wider formulae at greater depths are
/// too numerous to enumerate. Candidates are generated lazily, so an early
/// hit is cheap.
pub fn find_distinguishing(
    p: &ProcessTerm,
    q: &ProcessTerm,
    sig: &Signature,
    max_modal_depth: usize,
    max_width: usize,
) -> Result<Option<Formula>, Error> {
    p.validate(sig)?;
    q.validate(sig)?;
    let mut stages: Vec<(usize, usize)> = (0..=max_modal_depth).map(|d| (d, 1)).collect();
    for w in 2..=max_width {
        for d in 1..=max_modal_depth.min(2) {
            stages.push((d, w));
        }
    }
    for (depth, width) in stages {
        if let Some(f) = search_stage(p, q, sig, depth, width) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn search_stage(
    p: &ProcessTerm,
    q: &ProcessTerm,
    sig: &Signature,
    depth: usize,
    width: usize,
) -> Option<Formula> {
    let distinguishes = |f: &Formula| -> bool { eval(p, f, sig) && !eval(q, f, sig) };
    if depth == 0 {
        return [Formula::Bot, Formula::Top]
            .into_iter()
            .find(|f| distinguishes(f));
    }
    let prev = enumerate_formulae(sig, depth - 1, width);
    let diamonds: Vec<_> = sig.diamond_actions().into_iter().collect();
    let boxes: Vec<_> = sig.box_actions().into_iter().collect();
    let mut atoms: Vec<Formula> = Vec::new();
    for f in &prev {
        for a in &diamonds {
            atoms.push(Formula::diamond(a.clone(), f.clone()));
        }
    }
    for f in &prev {
        for b in &boxes {
            atoms.push(Formula::boxed(b.clone(), f.clone()));
        }
    }
    let mut conjs: Vec<Formula> = atoms.clone();
    for k in 2..=width {
        for combo in combinations(atoms.len(), k) {
            conjs.push(Formula::and(combo.iter().map(|&i| atoms[i].clone())));
        }
    }
    if let Some(f) = conjs.iter().find(|f| distinguishes(f)) {
        return Some(f.clone());
    }
    // stream the disjunctive layer instead of materializing it
    for k in 2..=width {
        for combo in combinations(conjs.len(), k) {
            let f = Formula::or(combo.iter().map(|&i| conjs[i].clone()));
            if distinguishes(&f) {
                return Some(f);
            }
        }
    }
    None
}

/// Index combinations `0 <= i1 < ... < ik < n`, streamed in lexicographic
/// order.
fn combinations(n: usize, k: usize) -> Combinations {
    let current = if k <= n { Some((0..k).collect()) } else { None };
    Combinations { n, k, current }
}

struct Combinations {
    n: usize,
    k: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.current.as_mut()?;
        let out = current.clone();
        // advance the odometer: bump the rightmost index that still has room
        let mut i = self.k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if current[i] < self.n - self.k + i {
                current[i] += 1;
                for j in i + 1..self.k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_formula, parse_term};
    use std::collections::BTreeSet;

    fn sig() -> Signature {
        Signature::parse("r: a\nl: b").unwrap()
    }

    fn sat(p: &str, f: &str) -> bool {
        let s = sig();
        satisfies(
            &parse_term(p, &s).unwrap(),
            &parse_formula(f, &s).unwrap(),
            &s,
        )
        .unwrap()
    }

    #[test]
    fn box_is_vacuously_true_without_successors() {
        assert!(sat("0", "[b]ff"));
    }

    #[test]
    fn omega_fails_box_bot() {
        assert!(!sat("w", "[b]ff"));
    }

    #[test]
    fn diamond_needs_a_successor() {
        assert!(sat("a.0", "<a>tt"));
        assert!(!sat("0", "<a>tt"));
    }

    #[test]
    fn enumerates_depth_zero_terms() {
        let terms = enumerate_terms(&sig(), 0, 1);
        assert_eq!(terms, vec![ProcessTerm::Nil, ProcessTerm::Omega]);
    }

    #[test]
    fn enumerates_depth_one_single_action() {
        let s = Signature::parse("r: a").unwrap();
        let terms = enumerate_terms(&s, 1, 1);
        let strings: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        assert_eq!(strings, ["0", "w", "a.0", "a.w"]);
    }

    #[test]
    fn enumerated_terms_are_duplicate_free() {
        let terms = enumerate_terms(&sig(), 2, 2);
        let set: BTreeSet<_> = terms.iter().collect();
        assert_eq!(set.len(), terms.len());
    }

    #[test]
    fn enumerates_depth_zero_formulae() {
        let fs = enumerate_formulae(&sig(), 0, 1);
        assert_eq!(fs, vec![Formula::Bot, Formula::Top]);
    }

    #[test]
    fn enumerated_formulae_cover_the_atoms_and_are_duplicate_free() {
        let s = sig();
        let fs = enumerate_formulae(&s, 1, 1);
        assert!(fs.contains(&parse_formula("<a>tt", &s).unwrap()));
        assert!(fs.contains(&parse_formula("[b]ff", &s).unwrap()));
        let set: BTreeSet<_> = fs.iter().collect();
        assert_eq!(set.len(), fs.len());

        let fs = enumerate_formulae(&s, 1, 2);
        let set: BTreeSet<_> = fs.iter().collect();
        assert_eq!(set.len(), fs.len());
    }

    #[test]
    fn finds_distinguishing_formulae_for_small_pairs() {
        let s = sig();
        for (p, q) in [("a.0", "0"), ("b.b.0", "w"), ("a.a.0", "a.0"), ("0", "b.0")] {
            let p = parse_term(p, &s).unwrap();
            let q = parse_term(q, &s).unwrap();
            assert!(!crate::simulation::simulates(&p, &q, &s).unwrap());
            let f = find_distinguishing(&p, &q, &s, 3, 2).unwrap().unwrap();
            assert!(satisfies(&p, &f, &s).unwrap());
            assert!(!satisfies(&q, &f, &s).unwrap());
        }
    }
}
