//! Text formats for every model kind, one file kind each:
//!
//! | extension   | content                                   |
//! |-------------|-------------------------------------------|
//! | `.proc`     | process model (places, marking, fragments) |
//! | `.goals`    | goal graph                                |
//! | `.problems` | problem registry                          |
//! | `.cmap`     | fragment-to-component map                 |
//! | `.corr`     | place correspondence                      |
//! | `.refine`   | refinement tree                           |
//!
//! Ids match `[A-Za-z][A-Za-z0-9_.]*`, strings are double-quoted with
//! backslash escapes and `#` comments run to end of line. Every parser has a
//! serializer counterpart producing canonical text.

mod goals;
mod lexer;
mod process;
mod tables;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::id::Id;
use crate::violation::Violation;
use lexer::Token;

pub use goals::{parse_goals, parse_goals_unchecked, serialize_goals};
pub use process::{parse_process, parse_process_unchecked, serialize_process};
pub use tables::{
    parse_components, parse_correspondence, parse_refinement, parse_registry, serialize_components,
    serialize_correspondence, serialize_refinement, serialize_registry,
};

const DEFAULT_FILE: &str = "<input>";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceSpan {
    pub file: String,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
}

impl SourceSpan {
    pub(crate) fn new(line: usize, column: usize) -> Self {
        SourceSpan {
            file: DEFAULT_FILE.to_string(),
            line,
            column,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{span}: expected {expected}, found {found}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    pub(crate) fn new(span: SourceSpan, expected: impl Into<String>, found: impl Into<String>) -> Self {
        ParseError {
            span,
            expected: expected.into(),
            found: found.into(),
        }
    }

    /// Attributes the error to a named file.
    pub fn with_file(mut self, file: impl Into<String>) -> Self {
        self.span.file = file.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// Syntactically fine but the model breaks an invariant; carries the
    /// first violation found.
    #[error("invalid model: {0}")]
    Validation(Violation),
}

impl DslError {
    pub fn with_file(self, file: impl Into<String>) -> Self {
        match self {
            DslError::Parse(e) => DslError::Parse(e.with_file(file)),
            v => v,
        }
    }
}

pub(crate) struct Parser {
    tokens: Vec<(Token, SourceSpan)>,
    pos: usize,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: lexer::tokenize(text)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    pub(crate) fn span(&self) -> SourceSpan {
        self.tokens[self.pos].1.clone()
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    pub(crate) fn error(&self, expected: impl Into<String>) -> ParseError {
        ParseError::new(self.span(), expected, self.peek().to_string())
    }

    pub(crate) fn at_eof(&self) -> bool {
        *self.peek() == Token::Eof
    }

    pub(crate) fn expect_eof(&self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    pub(crate) fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Token::Ident(s) if s == kw)
    }

    pub(crate) fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.at_keyword(kw) {
            self.advance();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error(format!("'{kw}'")))
        }
    }

    /// One of `options`, returned as written.
    pub(crate) fn expect_one_of(&mut self, options: &[&str]) -> Result<String, ParseError> {
        if let Token::Ident(s) = self.peek() {
            if options.contains(&s.as_str()) {
                let s = s.clone();
                self.advance();
                return Ok(s);
            }
        }
        let expected = options.iter().map(|o| format!("'{o}'")).collect::<Vec<_>>().join(" or ");
        Err(self.error(expected))
    }

    pub(crate) fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &Token) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(tok.to_string()))
        }
    }

    pub(crate) fn expect_id(&mut self) -> Result<Id, ParseError> {
        match self.peek() {
            Token::Ident(s) if Id::is_valid(s) => {
                let id = Id::new(s.clone());
                self.advance();
                Ok(id)
            }
            _ => Err(self.error("identifier")),
        }
    }

    pub(crate) fn expect_string(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Token::Str(s) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => Err(self.error("string")),
        }
    }

    pub(crate) fn expect_int(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Token::Int(n) => {
                let n = *n;
                self.advance();
                Ok(n)
            }
            _ => Err(self.error("integer")),
        }
    }

    pub(crate) fn at_string(&self) -> bool {
        matches!(self.peek(), Token::Str(_))
    }

    /// `<id> (, <id>)*`
    pub(crate) fn id_list(&mut self) -> Result<Vec<Id>, ParseError> {
        let mut ids = vec![self.expect_id()?];
        while self.eat(&Token::Comma) {
            ids.push(self.expect_id()?);
        }
        Ok(ids)
    }

    /// `<string> (, <string>)*`
    pub(crate) fn string_list(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = vec![self.expect_string()?];
        while self.eat(&Token::Comma) {
            out.push(self.expect_string()?);
        }
        Ok(out)
    }
}

pub(crate) use lexer::quote;
