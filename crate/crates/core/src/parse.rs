//! Recursive-descent parsers for the term and formula grammars.
//!
//! Terms:    `T ::= '0' | 'w' | ident '.' T | T '+' T | '(' T ')'`
//! Formulae: `F ::= 'tt' | 'ff' | '<'ident'>' F | '['ident']' F | F '&' F | F '|' F | '(' F ')'`
//!
//! Prefix binds tighter than `+`, and `+` associates to the left; modal
//! prefixes bind tighter than `&`, and `&` tighter than `|`.

use crate::error::{ParseError, Pos};
use crate::formula::Formula;
use crate::signature::{Action, ActionClass, Signature};
use crate::term::ProcessTerm;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Plus,
    Dot,
    Amp,
    Pipe,
    LParen,
    RParen,
    Lt,
    Gt,
    LBrack,
    RBrack,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Amp => write!(f, "`&`"),
            Tok::Pipe => write!(f, "`|`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Lt => write!(f, "`<`"),
            Tok::Gt => write!(f, "`>`"),
            Tok::LBrack => write!(f, "`[`"),
            Tok::RBrack => write!(f, "`]`"),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut toks = Vec::new();
    let cs: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    let mut line = 1usize;
    let mut col = 1usize;
    while i < cs.len() {
        let c = cs[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
            continue;
        }
        if is_ident_char(c) {
            let mut name = String::new();
            while i < cs.len() && is_ident_char(cs[i]) {
                name.push(cs[i]);
                i += 1;
                col += 1;
            }
            // generated actions carry a single ^r / ^l suffix
            if i < cs.len() && cs[i] == '^' {
                match cs.get(i + 1) {
                    Some(&d @ ('r' | 'l')) => {
                        name.push('^');
                        name.push(d);
                        i += 2;
                        col += 2;
                    }
                    _ => {
                        return Err(ParseError::syntax(
                            Pos { line, col },
                            "expected `r` or `l` after `^`",
                        ))
                    }
                }
            }
            toks.push((Tok::Ident(name), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '.' => Tok::Dot,
            '&' => Tok::Amp,
            '|' => Tok::Pipe,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '<' => Tok::Lt,
            '>' => Tok::Gt,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            other => {
                return Err(ParseError::syntax(
                    pos,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        i += 1;
        col += 1;
        toks.push((tok, pos));
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    sig: &'a Signature,
    end: Pos,
}

impl<'a> Parser<'a> {
    fn new(text: &str, sig: &'a Signature) -> Result<Self, ParseError> {
        let toks = lex(text)?;
        let lines = text.lines().count().max(1);
        let end = Pos {
            line: lines,
            col: text.lines().last().map_or(1, |l| l.chars().count() + 1),
        };
        Ok(Parser {
            toks,
            at: 0,
            sig,
            end,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, ParseError> {
        match self.next() {
            Some((t, p)) if t == tok => Ok(p),
            Some((t, p)) => Err(ParseError::syntax(p, format!("expected {tok}, found {t}"))),
            None => Err(ParseError::syntax(
                self.end,
                format!("expected {tok}, found end of input"),
            )),
        }
    }

    fn done(&self) -> bool {
        self.at == self.toks.len()
    }

    fn action(&self, name: &str, pos: Pos) -> Result<Action, ParseError> {
        let a = Action::new(name);
        if self.sig.contains(&a) {
            Ok(a)
        } else {
            Err(ParseError::UnknownAction {
                pos,
                name: name.to_string(),
            })
        }
    }

    // terms

    fn term_sum(&mut self) -> Result<ProcessTerm, ParseError> {
        let mut acc = self.term_prefix()?;
        while self.peek() == Some(&Tok::Plus) {
            self.next();
            let rhs = self.term_prefix()?;
            acc = ProcessTerm::choice(acc, rhs);
        }
        Ok(acc)
    }

    fn term_prefix(&mut self) -> Result<ProcessTerm, ParseError> {
        match self.next() {
            Some((Tok::LParen, _)) => {
                let inner = self.term_sum()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some((Tok::Ident(name), pos)) => match name.as_str() {
                "0" => Ok(ProcessTerm::Nil),
                "w" => Ok(ProcessTerm::Omega),
                "tt" | "ff" => Err(ParseError::syntax(
                    pos,
                    format!("`{name}` is a formula constant, not a term"),
                )),
                _ => {
                    let a = self.action(&name, pos)?;
                    self.expect(Tok::Dot)?;
                    let body = self.term_prefix()?;
                    Ok(ProcessTerm::prefix(a, body))
                }
            },
            Some((t, p)) => Err(ParseError::syntax(p, format!("expected a term, found {t}"))),
            None => Err(ParseError::syntax(
                self.end,
                "expected a term, found end of input",
            )),
        }
    }

    // formulae

    fn formula_disj(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.formula_conj()?];
        while self.peek() == Some(&Tok::Pipe) {
            self.next();
            parts.push(self.formula_conj()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::or(parts)
        })
    }

    fn formula_conj(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.formula_modal()?];
        while self.peek() == Some(&Tok::Amp) {
            self.next();
            parts.push(self.formula_modal()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::and(parts)
        })
    }

    fn formula_modal(&mut self) -> Result<Formula, ParseError> {
        match self.next() {
            Some((Tok::LParen, _)) => {
                let inner = self.formula_disj()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some((Tok::Lt, pos)) => {
                let (name, npos) = self.ident()?;
                self.expect(Tok::Gt)?;
                let a = self.action(&name, npos)?;
                if self.sig.class_of(&a) == Some(ActionClass::Contravariant) {
                    return Err(ParseError::ModalityMismatch {
                        pos,
                        msg: format!("`<{a}>` requires a covariant or bivariant action"),
                    });
                }
                let body = self.formula_modal()?;
                Ok(Formula::diamond(a, body))
            }
            Some((Tok::LBrack, pos)) => {
                let (name, npos) = self.ident()?;
                self.expect(Tok::RBrack)?;
                let b = self.action(&name, npos)?;
                if self.sig.class_of(&b) == Some(ActionClass::Covariant) {
                    return Err(ParseError::ModalityMismatch {
                        pos,
                        msg: format!("`[{b}]` requires a contravariant or bivariant action"),
                    });
                }
                let body = self.formula_modal()?;
                Ok(Formula::boxed(b, body))
            }
            Some((Tok::Ident(name), pos)) => match name.as_str() {
                "tt" => Ok(Formula::Top),
                "ff" => Ok(Formula::Bot),
                _ => Err(ParseError::syntax(
                    pos,
                    format!("expected a formula, found `{name}`"),
                )),
            },
            Some((t, p)) => Err(ParseError::syntax(
                p,
                format!("expected a formula, found {t}"),
            )),
            None => Err(ParseError::syntax(
                self.end,
                "expected a formula, found end of input",
            )),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match self.next() {
            Some((Tok::Ident(name), pos)) => Ok((name, pos)),
            Some((t, p)) => Err(ParseError::syntax(
                p,
                format!("expected an action name, found {t}"),
            )),
            None => Err(ParseError::syntax(
                self.end,
                "expected an action name, found end of input",
            )),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.done() {
            Ok(())
        } else {
            let (t, p) = self.toks[self.at].clone();
            Err(ParseError::syntax(
                p,
                format!("unexpected {t} after the end of the input"),
            ))
        }
    }
}

/// Parses a process term over `sig`.
pub fn parse_term(text: &str, sig: &Signature) -> Result<ProcessTerm, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let t = p.term_sum()?;
    p.finish()?;
    Ok(t)
}

/// Parses a cc-modal formula over `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text, sig)?;
    let f = p.formula_disj()?;
    p.finish()?;
    Ok(f)
}

impl ProcessTerm {
    pub fn parse(text: &str, sig: &Signature) -> Result<ProcessTerm, ParseError> {
        parse_term(text, sig)
    }
}

impl Formula {
    pub fn parse(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
        parse_formula(text, sig)
    }
}
