//! Formulae of the cc-modal logic: truth constants, n-ary conjunction and
//! disjunction, and the `<a>` / `[b]` modalities.
//!
//! Conjunction and disjunction are stored n-ary. The constructors [`Formula::and`]
//! and [`Formula::or`] flatten nested occurrences of the same connective,
//! deduplicate and sort the children, and collapse the empty and singleton
//! cases, so formulas built through them are structurally canonical. The raw
//! variants remain constructible; printing treats `And([])` as `tt` and
//! `Or([])` as `ff`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{unknown_action, Error};
use crate::signature::{Action, ActionClass, Signature};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bot,
    Top,
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Diamond(Action, Box<Formula>),
    Box(Action, Box<Formula>),
}

impl Formula {
    pub fn diamond(a: Action, f: Formula) -> Formula {
        Formula::Diamond(a, Box::new(f))
    }

    pub fn boxed(b: Action, f: Formula) -> Formula {
        Formula::Box(b, Box::new(f))
    }

    /// n-ary conjunction: flattens nested conjunctions, deduplicates and
    /// sorts; the empty conjunction is `tt` and a singleton is its child.
    pub fn and<I: IntoIterator<Item = Formula>>(children: I) -> Formula {
        let mut set = BTreeSet::new();
        for c in children {
            match c {
                Formula::And(cs) => set.extend(cs),
                other => {
                    set.insert(other);
                }
            }
        }
        match set.len() {
            0 => Formula::Top,
            1 => set.into_iter().next().unwrap(),
            _ => Formula::And(set.into_iter().collect()),
        }
    }

    /// n-ary disjunction, dual to [`Formula::and`].
    pub fn or<I: IntoIterator<Item = Formula>>(children: I) -> Formula {
        let mut set = BTreeSet::new();
        for c in children {
            match c {
                Formula::Or(cs) => set.extend(cs),
                other => {
                    set.insert(other);
                }
            }
        }
        match set.len() {
            0 => Formula::Bot,
            1 => set.into_iter().next().unwrap(),
            _ => Formula::Or(set.into_iter().collect()),
        }
    }

    /// Maximum nesting of modal operators.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Top => 0,
            Formula::And(cs) | Formula::Or(cs) => {
                cs.iter().map(Formula::modal_depth).max().unwrap_or(0)
            }
            Formula::Diamond(_, f) | Formula::Box(_, f) => 1 + f.modal_depth(),
        }
    }

    /// Checks that diamonds carry covariant or bivariant actions and boxes
    /// carry contravariant or bivariant ones.
    pub fn validate(&self, sig: &Signature) -> Result<(), Error> {
        match self {
            Formula::Bot | Formula::Top => Ok(()),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().try_for_each(|c| c.validate(sig)),
            Formula::Diamond(a, f) => {
                match sig.class_of(a) {
                    None => return Err(unknown_action(a)),
                    Some(ActionClass::Contravariant) => {
                        return Err(Error::ModalityMismatch(format!(
                            "`<{a}>` requires a covariant or bivariant action"
                        )))
                    }
                    _ => {}
                }
                f.validate(sig)
            }
            Formula::Box(b, f) => {
                match sig.class_of(b) {
                    None => return Err(unknown_action(b)),
                    Some(ActionClass::Covariant) => {
                        return Err(Error::ModalityMismatch(format!(
                            "`[{b}]` requires a contravariant or bivariant action"
                        )))
                    }
                    _ => {}
                }
                f.validate(sig)
            }
        }
    }

    pub fn canonical_string(&self) -> String {
        print(self, Prec::Or)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Or,
    And,
    Modal,
}

fn print(f: &Formula, ctx: Prec) -> String {
    match f {
        Formula::Bot => "ff".to_string(),
        Formula::Top => "tt".to_string(),
        Formula::Diamond(a, g) => format!("<{}>{}", a, print(g, Prec::Modal)),
        Formula::Box(b, g) => format!("[{}]{}", b, print(g, Prec::Modal)),
        Formula::And(cs) => match cs.len() {
            0 => "tt".to_string(),
            1 => print(&cs[0], ctx),
            _ => {
                let mut parts: Vec<String> = cs.iter().map(|c| print(c, Prec::And)).collect();
                parts.sort();
                let body = parts.join(" & ");
                if ctx > Prec::And {
                    format!("({body})")
                } else {
                    body
                }
            }
        },
        Formula::Or(cs) => match cs.len() {
            0 => "ff".to_string(),
            1 => print(&cs[0], ctx),
            _ => {
                let mut parts: Vec<String> = cs.iter().map(|c| print(c, Prec::Or)).collect();
                parts.sort();
                let body = parts.join(" | ");
                if ctx > Prec::Or {
                    format!("({body})")
                } else {
                    body
                }
            }
        },
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}
