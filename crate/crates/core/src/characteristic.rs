//! Characteristic formulae: the single formula whose models are exactly the
//! cc-simulation upward closure of a given term.

use crate::error::Error;
use crate::formula::Formula;
use crate::lts::transitions;
use crate::signature::Signature;
use crate::term::ProcessTerm;

/// The characteristic formula of `p` over a bivariant-free signature.
///
/// `chi(w) = tt`; otherwise the conjunction of `<a>chi(p')` for every
/// covariant transition and, for every contravariant `b`, a box
/// `[b](chi(p'_1) | ... | chi(p'_k))` over the b-derivatives, where the empty
/// disjunction is `ff`. The box conjunct is emitted for every contravariant
/// action, including the `[b]ff` ones, and structurally identical conjuncts
/// are deduplicated. The output is in unary strong normal form by
/// construction.
pub fn char_formula(p: &ProcessTerm, sig: &Signature) -> Result<Formula, Error> {
    if !sig.is_bivariant_free() {
        return Err(Error::PreconditionViolated(
            "characteristic formulae require a bivariant-free signature".into(),
        ));
    }
    p.validate(sig)?;
    Ok(chi(p, sig))
}

fn chi(p: &ProcessTerm, sig: &Signature) -> Formula {
    if *p == ProcessTerm::Omega {
        return Formula::Top;
    }
    let succs = transitions(p, sig);
    let mut conjuncts: Vec<Formula> = Vec::new();
    for (a, p2) in &succs {
        if sig.covariant().contains(a) {
            conjuncts.push(Formula::diamond(a.clone(), chi(p2, sig)));
        }
    }
    for b in sig.contravariant() {
        let disjuncts: Vec<Formula> = succs
            .iter()
            .filter(|(a, _)| a == b)
            .map(|(_, p2)| chi(p2, sig))
            .collect();
        conjuncts.push(Formula::boxed(b.clone(), Formula::or(disjuncts)));
    }
    Formula::and(conjuncts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::satisfies;
    use crate::parse::{parse_formula, parse_term};
    use crate::simulation::simulates;

    fn sig() -> Signature {
        Signature::parse("r: a\nl: b").unwrap()
    }

    fn chi_of(p: &str) -> Formula {
        let s = sig();
        char_formula(&parse_term(p, &s).unwrap(), &s).unwrap()
    }

    #[test]
    fn omega_has_top() {
        assert_eq!(chi_of("w"), Formula::Top);
    }

    #[test]
    fn nil_has_box_bot() {
        let s = sig();
        assert_eq!(chi_of("0"), parse_formula("[b]ff", &s).unwrap());
    }

    #[test]
    fn prefix_unfolds_the_recursion() {
        let s = sig();
        assert_eq!(
            chi_of("a.0"),
            parse_formula("<a>[b]ff & [b]ff", &s).unwrap()
        );
    }

    #[test]
    fn self_satisfaction_on_small_terms() {
        let s = sig();
        for text in ["0", "w", "a.0", "b.w", "a.0 + b.0", "a.(a.0 + b.w)"] {
            let p = parse_term(text, &s).unwrap();
            let f = char_formula(&p, &s).unwrap();
            assert!(
                satisfies(&p, &f, &s).unwrap(),
                "{text} should satisfy its own formula"
            );
        }
    }

    #[test]
    fn characterizes_the_upward_closure() {
        let s = sig();
        let terms = ["0", "w", "a.0", "b.0", "a.0 + b.0", "a.b.0", "b.b.0"];
        for p_text in terms {
            let p = parse_term(p_text, &s).unwrap();
            let f = char_formula(&p, &s).unwrap();
            for q_text in terms {
                let q = parse_term(q_text, &s).unwrap();
                assert_eq!(
                    satisfies(&q, &f, &s).unwrap(),
                    simulates(&p, &q, &s).unwrap(),
                    "chi({p_text}) at {q_text}"
                );
            }
        }
    }

    #[test]
    fn output_is_unary_snf() {
        let s = sig();
        for text in ["0", "w", "a.0", "a.0 + b.w", "a.(a.0 + b.0) + b.0"] {
            let p = parse_term(text, &s).unwrap();
            let f = char_formula(&p, &s).unwrap();
            assert!(
                crate::normal_form::is_unary_snf(&f, &s),
                "chi({text}) = {f}"
            );
        }
    }
}
