//! Recursive descent parser for the ASCII formula grammar.
//!
//! ```text
//! mformula := iff
//! iff      := imp ( "<->" imp )?
//! imp      := disj ( "->" imp )?
//! disj     := conj ( "|" conj )*
//! conj     := unary ( "&" unary )*
//! unary    := ( "~" | "[]" | "[M]" | "[P]" | "<>" | "<M>" | "<P>" )* atom
//! atom     := "bot" | ident | "(" mformula ")"
//! formula  := ident ":" mformula | ident ("U" | "M" | "P") ident
//! ```
//!
//! `->` associates to the right and `<->` does not associate.

use std::fmt;

use super::lexer::{tokenize, Token, TokenKind};
use super::{Formula, Label, MFormula, Relation, System};

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    pub const START: Position = Position { line: 1, column: 1 };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    /// A relation that the requested system does not have.
    WrongSystem,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    /// What would have been accepted at this position.
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    pub(crate) fn syntax(pos: Position, expected: &[&str], found: impl Into<String>) -> Self {
        ParseError {
            kind: ParseErrorKind::Syntax,
            line: pos.line,
            column: pos.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: found.into(),
        }
    }

    /// Stable machine-readable reason.
    pub fn reason(&self) -> &'static str {
        match self.kind {
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::WrongSystem => "wrong-system",
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match self.kind {
            ParseErrorKind::WrongSystem => write!(f, "wrong-system: {}", self.found),
            ParseErrorKind::Syntax => write!(
                f,
                "expected one of {}; found {}",
                self.expected.join(", "),
                self.found
            ),
        }
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    system: Option<System>,
}

impl Parser {
    fn new(src: &str, start: Position, system: Option<System>) -> Result<Self, ParseError> {
        let tokens = tokenize(src, start).map_err(|(pos, c)| {
            ParseError::syntax(pos, &["formula token"], format!("character `{c}`"))
        })?;
        Ok(Parser {
            tokens,
            pos: 0,
            system,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let tok = self.peek();
        ParseError::syntax(tok.pos, expected, tok.kind.to_string())
    }

    fn check_relation(&self, relation: Relation, pos: Position) -> Result<(), ParseError> {
        match self.system {
            Some(system) if !system.allows(relation) => Err(ParseError {
                kind: ParseErrorKind::WrongSystem,
                line: pos.line,
                column: pos.column,
                expected: vec![],
                found: format!("relation {relation} is not available in {system}"),
            }),
            _ => Ok(()),
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if self.peek().kind == TokenKind::Eof {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    fn mformula(&mut self) -> Result<MFormula, ParseError> {
        let left = self.imp()?;
        if self.peek().kind != TokenKind::Iff {
            return Ok(left);
        }
        self.bump();
        let right = self.imp()?;
        if self.peek().kind == TokenKind::Iff {
            return Err(self.error(&["`)`", "end of formula"]));
        }
        Ok(MFormula::iff(left, right))
    }

    fn imp(&mut self) -> Result<MFormula, ParseError> {
        let left = self.disj()?;
        if self.peek().kind == TokenKind::Imp {
            self.bump();
            let right = self.imp()?;
            Ok(MFormula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn disj(&mut self) -> Result<MFormula, ParseError> {
        let mut acc = self.conj()?;
        while self.peek().kind == TokenKind::Or {
            self.bump();
            acc = MFormula::or(acc, self.conj()?);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<MFormula, ParseError> {
        let mut acc = self.unary()?;
        while self.peek().kind == TokenKind::And {
            self.bump();
            acc = MFormula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MFormula, ParseError> {
        let tok = self.peek().clone();
        let op: Option<(bool, Relation)> = match tok.kind {
            TokenKind::Not => {
                self.bump();
                return Ok(MFormula::not(self.unary()?));
            }
            TokenKind::BoxU => Some((true, Relation::U)),
            TokenKind::BoxM => Some((true, Relation::M)),
            TokenKind::BoxP => Some((true, Relation::P)),
            TokenKind::DiaU => Some((false, Relation::U)),
            TokenKind::DiaM => Some((false, Relation::M)),
            TokenKind::DiaP => Some((false, Relation::P)),
            _ => None,
        };
        match op {
            Some((is_box, relation)) => {
                self.check_relation(relation, tok.pos)?;
                self.bump();
                let body = self.unary()?;
                Ok(if is_box {
                    MFormula::boxed(relation, body)
                } else {
                    MFormula::diamond(relation, body)
                })
            }
            None => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<MFormula, ParseError> {
        match self.peek().kind.clone() {
            TokenKind::Bot => {
                self.bump();
                Ok(MFormula::Bottom)
            }
            TokenKind::Ident(name) => {
                self.bump();
                Ok(MFormula::Prop(name))
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.mformula()?;
                if self.peek().kind != TokenKind::RParen {
                    return Err(self.error(&["`)`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(&[
                "`bot`",
                "proposition",
                "`(`",
                "`~`",
                "box",
                "diamond",
            ])),
        }
    }

    fn label(&mut self) -> Result<Label, ParseError> {
        match self.peek().kind.clone() {
            TokenKind::Ident(name) => {
                self.bump();
                Ok(Label(name))
            }
            _ => Err(self.error(&["label"])),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.label()?;
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::Colon => {
                self.bump();
                Ok(Formula::Labelled(left, self.mformula()?))
            }
            TokenKind::Ident(sym) if Relation::from_symbol(sym).is_some() => {
                let relation = Relation::from_symbol(sym).expect("checked above");
                self.check_relation(relation, tok.pos)?;
                self.bump();
                let right = self.label()?;
                Ok(Formula::Relational(left, relation, right))
            }
            _ => Err(self.error(&["`:`", "`U`", "`M`", "`P`"])),
        }
    }
}

/// Parses a modal formula, expanding all derived connectives.
pub fn parse_mformula(input: &str) -> Result<MFormula, ParseError> {
    parse_mformula_in(input, None)
}

/// Like [`parse_mformula`], but rejects boxes and diamonds over relations
/// that `system` lacks with a `wrong-system` error.
pub fn parse_mformula_for(input: &str, system: System) -> Result<MFormula, ParseError> {
    parse_mformula_in(input, Some(system))
}

fn parse_mformula_in(input: &str, system: Option<System>) -> Result<MFormula, ParseError> {
    let mut p = Parser::new(input, Position::START, system)?;
    let phi = p.mformula()?;
    p.expect_eof()?;
    Ok(phi)
}

/// Parses `x : A` or `x R y`.
pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    parse_formula_at(input, Position::START, None)
}

pub fn parse_formula_for(input: &str, system: System) -> Result<Formula, ParseError> {
    parse_formula_at(input, Position::START, Some(system))
}

/// Parses a formula embedded in a larger document starting at `start`.
pub(crate) fn parse_formula_at(
    input: &str,
    start: Position,
    system: Option<System>,
) -> Result<Formula, ParseError> {
    let mut p = Parser::new(input, start, system)?;
    let alpha = p.formula()?;
    p.expect_eof()?;
    Ok(alpha)
}
