//! A small tokenizer shared by the process, type and proof-term readers.

use std::fmt;

use crate::name::{is_ident_continue, is_ident_start};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokKind {
    Ident(String),
    Num(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Tok {
    pub kind: TokKind,
    pub line: usize,
    pub col: usize,
}

/// Error with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

const SYMS: &str = "|.()!?{}:;*-<>&+,#=[]";

pub fn lex(src: &str) -> Result<Vec<Tok>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let (l0, c0) = (line, col);
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_continue(chars[i]) {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Tok { kind: TokKind::Ident(s), line: l0, col: c0 });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Tok { kind: TokKind::Num(s), line: l0, col: c0 });
        } else if SYMS.contains(c) {
            i += 1;
            col += 1;
            out.push(Tok { kind: TokKind::Sym(c), line: l0, col: c0 });
        } else {
            return Err(ParseError { line, col, msg: format!("unexpected character {c:?}") });
        }
    }
    out.push(Tok { kind: TokKind::Eof, line, col });
    Ok(out)
}

/// Token cursor with the usual peek/expect helpers.
pub struct Cursor {
    toks: Vec<Tok>,
    pos: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Cursor, ParseError> {
        Ok(Cursor { toks: lex(src)?, pos: 0 })
    }

    pub fn peek(&self) -> &TokKind {
        &self.toks[self.pos].kind
    }

    pub fn peek_at(&self, k: usize) -> &TokKind {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].kind
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, msg: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, col: t.col, msg: msg.into() }
    }

    pub fn is_sym(&self, c: char) -> bool {
        *self.peek() == TokKind::Sym(c)
    }

    pub fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), TokKind::Ident(x) if x == s)
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}', found {}", describe(self.peek()))))
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.is_ident(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected '{kw}', found {}", describe(self.peek()))))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            TokKind::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => Err(self.error(format!("expected a name, found {}", describe(&other)))),
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == TokKind::Eof
    }

    pub fn expect_eof(&self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", describe(self.peek()))))
        }
    }
}

pub fn describe(t: &TokKind) -> String {
    match t {
        TokKind::Ident(s) => format!("name '{s}'"),
        TokKind::Num(s) => format!("'{s}'"),
        TokKind::Sym(c) => format!("'{c}'"),
        TokKind::Eof => "end of input".to_string(),
    }
}
