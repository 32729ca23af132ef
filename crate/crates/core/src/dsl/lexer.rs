use std::fmt;

use super::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Token {
    Ident(String),
    Str(String),
    Int(u64),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Arrow,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "identifier {s:?}"),
            Token::Str(s) => write!(f, "string {s:?}"),
            Token::Int(n) => write!(f, "integer {n}"),
            Token::LBrace => f.write_str("'{'"),
            Token::RBrace => f.write_str("'}'"),
            Token::LParen => f.write_str("'('"),
            Token::RParen => f.write_str("')'"),
            Token::Comma => f.write_str("','"),
            Token::Semi => f.write_str("';'"),
            Token::Colon => f.write_str("':'"),
            Token::Arrow => f.write_str("'->'"),
            Token::Eof => f.write_str("end of input"),
        }
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span(&self) -> SourceSpan {
        SourceSpan::new(self.line, self.column)
    }
}

/// Splits `text` into tokens. `#` starts a comment running to end of line.
/// Identifiers may contain `-` when a letter follows it, which admits
/// keywords such as `decomposes-and` while keeping `a->b` three tokens.
pub(crate) fn tokenize(text: &str) -> Result<Vec<(Token, SourceSpan)>, ParseError> {
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    loop {
        let span = cur.span();
        let Some(c) = cur.peek() else {
            out.push((Token::Eof, span));
            return Ok(out);
        };
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '#' {
            while cur.peek().is_some_and(|c| c != '\n') {
                cur.bump();
            }
            continue;
        }
        let tok = match c {
            '{' | '}' | '(' | ')' | ',' | ';' | ':' => {
                cur.bump();
                match c {
                    '{' => Token::LBrace,
                    '}' => Token::RBrace,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    ',' => Token::Comma,
                    ';' => Token::Semi,
                    _ => Token::Colon,
                }
            }
            '-' => {
                cur.bump();
                if cur.peek() == Some('>') {
                    cur.bump();
                    Token::Arrow
                } else {
                    return Err(ParseError::new(span, "'->'", "character '-'"));
                }
            }
            '"' => {
                cur.bump();
                lex_string(&mut cur, span.clone())?
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
                    digits.push(d);
                    cur.bump();
                }
                match digits.parse() {
                    Ok(n) => Token::Int(n),
                    Err(_) => return Err(ParseError::new(span, "integer", format!("out-of-range integer {digits}"))),
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(c) = cur.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '.' {
                        s.push(c);
                        cur.bump();
                    } else if c == '-' {
                        let mut ahead = cur.chars.clone();
                        ahead.next();
                        if ahead.next().is_some_and(|n| n.is_ascii_alphabetic()) {
                            s.push(c);
                            cur.bump();
                        } else {
                            break;
                        }
                    } else {
                        break;
                    }
                }
                Token::Ident(s)
            }
            other => return Err(ParseError::new(span, "token", format!("character {other:?}"))),
        };
        out.push((tok, span));
    }
}

fn lex_string(cur: &mut Cursor<'_>, start: SourceSpan) -> Result<Token, ParseError> {
    let mut s = String::new();
    loop {
        let here = cur.span();
        match cur.bump() {
            None | Some('\n') => {
                return Err(ParseError::new(start, "closing '\"'", "unterminated string"));
            }
            Some('"') => return Ok(Token::Str(s)),
            Some('\\') => match cur.bump() {
                Some('"') => s.push('"'),
                Some('\\') => s.push('\\'),
                Some('n') => s.push('\n'),
                Some('t') => s.push('\t'),
                Some(other) => {
                    return Err(ParseError::new(here, "escape sequence", format!("'\\{other}'")));
                }
                None => return Err(ParseError::new(start, "closing '\"'", "unterminated string")),
            },
            Some(c) => s.push(c),
        }
    }
}

/// Quotes `s` so that [`tokenize`] reads it back unchanged.
pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
