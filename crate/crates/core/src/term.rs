//! Finite BCCSP-style process terms: 0, omega, action prefix and choice.

use std::fmt;

use crate::error::{unknown_action, Error};
use crate::signature::{Action, Signature};

/// A finite process term. `Omega` is the full contravariant process, written
/// `w` in the concrete syntax.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProcessTerm {
    Nil,
    Omega,
    Prefix(Action, Box<ProcessTerm>),
    Choice(Box<ProcessTerm>, Box<ProcessTerm>),
}

impl ProcessTerm {
    pub fn prefix(a: Action, p: ProcessTerm) -> ProcessTerm {
        ProcessTerm::Prefix(a, Box::new(p))
    }

    pub fn choice(p: ProcessTerm, q: ProcessTerm) -> ProcessTerm {
        ProcessTerm::Choice(Box::new(p), Box::new(q))
    }

    /// Left-associated sum of the given terms; the empty sum is 0.
    pub fn sum<I: IntoIterator<Item = ProcessTerm>>(terms: I) -> ProcessTerm {
        let mut it = terms.into_iter();
        match it.next() {
            None => ProcessTerm::Nil,
            Some(first) => it.fold(first, ProcessTerm::choice),
        }
    }

    /// The summands of the choice spine, in syntactic order. A term that is
    /// not a choice is its own single summand.
    pub fn summands(&self) -> Vec<&ProcessTerm> {
        let mut out = Vec::new();
        fn walk<'a>(t: &'a ProcessTerm, out: &mut Vec<&'a ProcessTerm>) {
            match t {
                ProcessTerm::Choice(p, q) => {
                    walk(p, out);
                    walk(q, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Size in symbols: 0, omega, `+` and each action prefix count one.
    pub fn size(&self) -> usize {
        match self {
            ProcessTerm::Nil | ProcessTerm::Omega => 1,
            ProcessTerm::Prefix(_, p) => 1 + p.size(),
            ProcessTerm::Choice(p, q) => 1 + p.size() + q.size(),
        }
    }

    /// Maximum nesting of action prefixes.
    pub fn prefix_depth(&self) -> usize {
        match self {
            ProcessTerm::Nil | ProcessTerm::Omega => 0,
            ProcessTerm::Prefix(_, p) => 1 + p.prefix_depth(),
            ProcessTerm::Choice(p, q) => p.prefix_depth().max(q.prefix_depth()),
        }
    }

    pub fn contains_omega(&self) -> bool {
        match self {
            ProcessTerm::Nil => false,
            ProcessTerm::Omega => true,
            ProcessTerm::Prefix(_, p) => p.contains_omega(),
            ProcessTerm::Choice(p, q) => p.contains_omega() || q.contains_omega(),
        }
    }

    /// Checks that every action in the term belongs to `sig`.
    pub fn validate(&self, sig: &Signature) -> Result<(), Error> {
        match self {
            ProcessTerm::Nil | ProcessTerm::Omega => Ok(()),
            ProcessTerm::Prefix(a, p) => {
                if !sig.contains(a) {
                    return Err(unknown_action(a));
                }
                p.validate(sig)
            }
            ProcessTerm::Choice(p, q) => {
                p.validate(sig)?;
                q.validate(sig)
            }
        }
    }

    /// Canonical text. Summands are emitted sorted lexicographically on their
    /// printed form, so the output does not depend on the tree shape of
    /// nested choices.
    pub fn canonical_string(&self) -> String {
        print(self, false)
    }

    /// The structurally canonical representative: summand spines flattened,
    /// sorted by printed form and rebuilt left-associated, recursively.
    pub fn canonical(&self) -> ProcessTerm {
        match self {
            ProcessTerm::Nil => ProcessTerm::Nil,
            ProcessTerm::Omega => ProcessTerm::Omega,
            ProcessTerm::Prefix(a, p) => ProcessTerm::prefix(a.clone(), p.canonical()),
            ProcessTerm::Choice(..) => {
                let mut parts: Vec<ProcessTerm> =
                    self.summands().into_iter().map(|s| s.canonical()).collect();
                parts.sort_by_key(|x| x.canonical_string());
                ProcessTerm::sum(parts)
            }
        }
    }
}

fn print(t: &ProcessTerm, under_prefix: bool) -> String {
    match t {
        ProcessTerm::Nil => "0".to_string(),
        ProcessTerm::Omega => "w".to_string(),
        ProcessTerm::Prefix(a, p) => format!("{}.{}", a, print(p, true)),
        ProcessTerm::Choice(..) => {
            let mut parts: Vec<String> =
                t.summands().into_iter().map(|s| print(s, false)).collect();
            parts.sort();
            let body = parts.join(" + ");
            if under_prefix {
                format!("({body})")
            } else {
                body
            }
        }
    }
}

impl fmt::Display for ProcessTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Action {
        Action::new("a")
    }

    #[test]
    fn sizes_follow_the_symbol_convention() {
        use ProcessTerm::*;
        assert_eq!(Nil.size(), 1);
        assert_eq!(ProcessTerm::prefix(a(), Nil).size(), 2);
        let t = ProcessTerm::choice(ProcessTerm::prefix(a(), Nil), Nil);
        assert_eq!(t.size(), 4);
    }

    #[test]
    fn printing_is_parenthesis_minimal() {
        let t = ProcessTerm::choice(
            ProcessTerm::prefix(a(), ProcessTerm::Nil),
            ProcessTerm::Omega,
        );
        assert_eq!(t.to_string(), "a.0 + w");
        let nested = ProcessTerm::prefix(
            a(),
            ProcessTerm::choice(ProcessTerm::Nil, ProcessTerm::Omega),
        );
        assert_eq!(nested.to_string(), "a.(0 + w)");
    }

    #[test]
    fn printing_sorts_summands() {
        let b = Action::new("b");
        let t1 = ProcessTerm::choice(
            ProcessTerm::prefix(b.clone(), ProcessTerm::Nil),
            ProcessTerm::prefix(a(), ProcessTerm::Nil),
        );
        let t2 = ProcessTerm::choice(
            ProcessTerm::prefix(a(), ProcessTerm::Nil),
            ProcessTerm::prefix(b, ProcessTerm::Nil),
        );
        assert_eq!(t1.to_string(), "a.0 + b.0");
        assert_eq!(t1.to_string(), t2.to_string());
        assert_eq!(t1.canonical(), t2.canonical());
    }
}
