//! Action names and the partition of the action set into covariant,
//! contravariant and bivariant classes.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, ParseError, Pos};

/// Words that cannot be used as action names because the term and formula
/// grammars claim them.
pub const RESERVED_WORDS: [&str; 4] = ["0", "w", "tt", "ff"];

/// An action name.
///
/// User-declared actions match `[a-zA-Z0-9_]+`. The bivariant encodings
/// additionally generate names of the form `c^r` / `c^l`; the `^` separator
/// cannot occur in user names, so generated names are always fresh.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action(String);

impl Action {
    pub fn new(name: impl Into<String>) -> Self {
        Action(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The covariant part `c^r` of a bivariant action.
    pub fn covariant_part(&self) -> Action {
        Action(format!("{}^r", self.0))
    }

    /// The contravariant part `c^l` of a bivariant action.
    pub fn contravariant_part(&self) -> Action {
        Action(format!("{}^l", self.0))
    }

    /// Whether this is a generated `^r`/`^l` name.
    pub fn is_generated(&self) -> bool {
        self.0.ends_with("^r") || self.0.ends_with("^l")
    }

    /// For a generated name, the bivariant action it was derived from.
    pub fn base(&self) -> Option<Action> {
        self.0
            .strip_suffix("^r")
            .or_else(|| self.0.strip_suffix("^l"))
            .map(|b| Action(b.to_string()))
    }

    pub(crate) fn is_valid_user_name(name: &str) -> bool {
        !name.is_empty()
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && !RESERVED_WORDS.contains(&name)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Action {
    fn from(s: &str) -> Self {
        Action(s.to_string())
    }
}

/// The class an action belongs to inside a signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionClass {
    Covariant,
    Contravariant,
    Bivariant,
}

/// A finite action set partitioned into covariant, contravariant and
/// (possibly empty) bivariant classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    covariant: BTreeSet<Action>,
    contravariant: BTreeSet<Action>,
    bivariant: BTreeSet<Action>,
}

impl Signature {
    /// Builds a signature from the three classes, checking pairwise
    /// disjointness and name validity. Empty classes are permitted.
    pub fn new<I, J, K>(covariant: I, contravariant: J, bivariant: K) -> Result<Self, Error>
    where
        I: IntoIterator<Item = Action>,
        J: IntoIterator<Item = Action>,
        K: IntoIterator<Item = Action>,
    {
        let mut sig = Signature {
            covariant: BTreeSet::new(),
            contravariant: BTreeSet::new(),
            bivariant: BTreeSet::new(),
        };
        let mut seen: BTreeSet<Action> = BTreeSet::new();
        for (class, actions) in [
            (
                ActionClass::Covariant,
                covariant.into_iter().collect::<Vec<_>>(),
            ),
            (
                ActionClass::Contravariant,
                contravariant.into_iter().collect(),
            ),
            (ActionClass::Bivariant, bivariant.into_iter().collect()),
        ] {
            for a in actions {
                if !Action::is_valid_user_name(a.as_str()) {
                    return Err(Error::SignatureMismatch(format!(
                        "invalid action name `{a}`"
                    )));
                }
                if !seen.insert(a.clone()) {
                    return Err(Error::SignatureMismatch(format!("duplicate action `{a}`")));
                }
                sig.class_set_mut(class).insert(a);
            }
        }
        Ok(sig)
    }

    /// Internal constructor for derived signatures whose names carry `^`.
    pub(crate) fn derived(covariant: BTreeSet<Action>, contravariant: BTreeSet<Action>) -> Self {
        Signature {
            covariant,
            contravariant,
            bivariant: BTreeSet::new(),
        }
    }

    fn class_set_mut(&mut self, class: ActionClass) -> &mut BTreeSet<Action> {
        match class {
            ActionClass::Covariant => &mut self.covariant,
            ActionClass::Contravariant => &mut self.contravariant,
            ActionClass::Bivariant => &mut self.bivariant,
        }
    }

    pub fn covariant(&self) -> &BTreeSet<Action> {
        &self.covariant
    }

    pub fn contravariant(&self) -> &BTreeSet<Action> {
        &self.contravariant
    }

    pub fn bivariant(&self) -> &BTreeSet<Action> {
        &self.bivariant
    }

    pub fn is_bivariant_free(&self) -> bool {
        self.bivariant.is_empty()
    }

    /// All actions, in sorted order.
    pub fn actions(&self) -> impl Iterator<Item = &Action> {
        self.covariant
            .iter()
            .chain(self.contravariant.iter())
            .chain(self.bivariant.iter())
    }

    pub fn contains(&self, a: &Action) -> bool {
        self.class_of(a).is_some()
    }

    pub fn class_of(&self, a: &Action) -> Option<ActionClass> {
        if self.covariant.contains(a) {
            Some(ActionClass::Covariant)
        } else if self.contravariant.contains(a) {
            Some(ActionClass::Contravariant)
        } else if self.bivariant.contains(a) {
            Some(ActionClass::Bivariant)
        } else {
            None
        }
    }

    /// Actions a diamond may carry: the covariant and bivariant classes.
    pub fn diamond_actions(&self) -> BTreeSet<Action> {
        self.covariant.union(&self.bivariant).cloned().collect()
    }

    /// Actions a box may carry: the contravariant and bivariant classes.
    pub fn box_actions(&self) -> BTreeSet<Action> {
        self.contravariant.union(&self.bivariant).cloned().collect()
    }

    /// The bivariant-free signature that splits each bivariant action `c`
    /// into `c^r` and `c^l` while keeping the other classes as they are.
    pub fn split_bivariant(&self) -> Signature {
        let mut cov = self.covariant.clone();
        let mut con = self.contravariant.clone();
        for c in &self.bivariant {
            cov.insert(c.covariant_part());
            con.insert(c.contravariant_part());
        }
        Signature::derived(cov, con)
    }

    /// The signature of the composite encoding: every covariant and bivariant
    /// action gets a `^r` name, and every action at all gets a `^l` name.
    pub fn composite_encoding_signature(&self) -> Signature {
        let cov = self
            .covariant
            .iter()
            .chain(self.bivariant.iter())
            .map(Action::covariant_part)
            .collect();
        let con = self.actions().map(Action::contravariant_part).collect();
        Signature::derived(cov, con)
    }

    /// The uniform signature in which every action of the original set has
    /// both a `^r` and a `^l` name.
    pub fn uniform_signature(&self) -> Signature {
        let cov = self.actions().map(Action::covariant_part).collect();
        let con = self.actions().map(Action::contravariant_part).collect();
        Signature::derived(cov, con)
    }

    /// Parses the signature file format: lines `r: <names>`, `l: <names>`,
    /// optional `bi: <names>`, with `#` comments.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut cov: Vec<(Action, Pos)> = Vec::new();
        let mut con: Vec<(Action, Pos)> = Vec::new();
        let mut biv: Vec<(Action, Pos)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            let pos = Pos {
                line: lineno + 1,
                col: 1,
            };
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| ParseError::syntax(pos, "expected `r:`, `l:` or `bi:` line"))?;
            let bucket = match key.trim() {
                "r" => &mut cov,
                "l" => &mut con,
                "bi" => &mut biv,
                other => {
                    return Err(ParseError::syntax(
                        pos,
                        format!("unknown class `{other}` (expected r, l or bi)"),
                    ))
                }
            };
            for name in rest.split_whitespace() {
                let col = raw.find(name).map(|i| i + 1).unwrap_or(1);
                let pos = Pos {
                    line: lineno + 1,
                    col,
                };
                if !Action::is_valid_user_name(name) {
                    return Err(ParseError::InvalidAction {
                        pos,
                        name: name.to_string(),
                    });
                }
                bucket.push((Action::new(name), pos));
            }
        }
        let mut seen: BTreeSet<Action> = BTreeSet::new();
        for (a, pos) in cov.iter().chain(con.iter()).chain(biv.iter()) {
            if !seen.insert(a.clone()) {
                return Err(ParseError::DuplicateAction {
                    pos: *pos,
                    name: a.to_string(),
                });
            }
        }
        Ok(Signature {
            covariant: cov.into_iter().map(|(a, _)| a).collect(),
            contravariant: con.into_iter().map(|(a, _)| a).collect(),
            bivariant: biv.into_iter().map(|(a, _)| a).collect(),
        })
    }
}
