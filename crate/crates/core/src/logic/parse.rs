//! Reader for the Prolog-like clause syntax used by every input file.
//!
//! ```text
//! head(args) :- b1(args), b2(args).
//! fact(c1, 'Quoted', 42, [j,a,m,e,s]).
//! % comment to end of line
//! ```

use std::collections::HashMap;
use std::iter::Peekable;
use std::str::Chars;

use thiserror::Error;

use super::symbol::Sym;
use super::term::{Atom, Clause, Program, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Quoted(String),
    Var(String),
    Int(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Bar,
    Comma,
    Neck,
    Dot,
    Eof,
}

struct Lexer<'a> {
    chars: Peekable<Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.chars().peekable(), line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line, col, message: msg.into() }
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Result<(Tok, usize, usize), ParseError> {
        self.skip_trivia();
        let (line, col) = (self.line, self.col);
        let Some(c) = self.bump() else { return Ok((Tok::Eof, line, col)) };
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '|' => Tok::Bar,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            ':' => {
                if self.bump() != Some('-') {
                    return Err(self.err(line, col, "expected ':-'"));
                }
                Tok::Neck
            }
            '\'' | '"' => {
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(self.err(line, col, "unterminated quoted atom")),
                        Some('\\') => match self.bump() {
                            Some('n') => s.push('\n'),
                            Some('t') => s.push('\t'),
                            Some(e) => s.push(e),
                            None => return Err(self.err(line, col, "unterminated quoted atom")),
                        },
                        Some(q) if q == c => break,
                        Some(o) => s.push(o),
                    }
                }
                Tok::Quoted(s)
            }
            c if c.is_ascii_digit() || (c == '-' && self.chars.peek().is_some_and(|d| d.is_ascii_digit())) => {
                let mut s = c.to_string();
                while let Some(&d) = self.chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    self.bump();
                }
                Tok::Int(s)
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = c.to_string();
                while let Some(&d) = self.chars.peek() {
                    if !(d.is_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    self.bump();
                }
                if c.is_uppercase() || c == '_' {
                    Tok::Var(s)
                } else {
                    Tok::Name(s)
                }
            }
            other => return Err(self.err(line, col, format!("unexpected character {other:?}"))),
        };
        Ok((tok, line, col))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    look: (Tok, usize, usize),
    vars: HashMap<String, u32>,
    next_var: u32,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(src);
        let look = lexer.next()?;
        Ok(Parser { lexer, look, vars: HashMap::new(), next_var: 0 })
    }

    fn advance(&mut self) -> Result<Tok, ParseError> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.look, next).0)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.look.1, col: self.look.2, message: msg.into() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.look.0 == tok {
            self.advance()?;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {:?}", self.look.0)))
        }
    }

    fn at_eof(&self) -> bool {
        self.look.0 == Tok::Eof
    }

    fn reset_vars(&mut self) {
        self.vars.clear();
        self.next_var = 0;
    }

    fn var(&mut self, name: String) -> Term {
        if name == "_" {
            let v = self.next_var;
            self.next_var += 1;
            return Term::Var(Var(v));
        }
        let next = &mut self.next_var;
        let id = *self.vars.entry(name).or_insert_with(|| {
            let v = *next;
            *next += 1;
            v
        });
        Term::Var(Var(id))
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen, "'('")?;
        let mut args = vec![self.term()?];
        while self.look.0 == Tok::Comma {
            self.advance()?;
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "')'")?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.advance()? {
            Tok::Var(name) => Ok(self.var(name)),
            Tok::Int(n) => Ok(Term::Const(Sym::new(&n))),
            Tok::Name(n) | Tok::Quoted(n) => {
                if self.look.0 == Tok::LParen {
                    let args = self.args()?;
                    Ok(Term::Compound(Sym::new(&n), args.into()))
                } else {
                    Ok(Term::Const(Sym::new(&n)))
                }
            }
            Tok::LBrack => {
                if self.look.0 == Tok::RBrack {
                    self.advance()?;
                    return Ok(Term::list(Vec::new(), None));
                }
                let mut items = vec![self.term()?];
                while self.look.0 == Tok::Comma {
                    self.advance()?;
                    items.push(self.term()?);
                }
                let tail = if self.look.0 == Tok::Bar {
                    self.advance()?;
                    Some(self.term()?)
                } else {
                    None
                };
                self.expect(Tok::RBrack, "']'")?;
                Ok(Term::list(items, tail))
            }
            other => Err(self.error(format!("expected a term, found {other:?}"))),
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let (line, col) = (self.look.1, self.look.2);
        match self.advance()? {
            Tok::Name(n) | Tok::Quoted(n) => {
                let args = if self.look.0 == Tok::LParen { self.args()? } else { Vec::new() };
                Ok(Atom { pred: Sym::new(&n), args })
            }
            other => Err(ParseError { line, col, message: format!("expected an atom, found {other:?}") }),
        }
    }

    fn clause(&mut self) -> Result<Clause, ParseError> {
        self.reset_vars();
        let head = self.atom()?;
        let mut body = Vec::new();
        if self.look.0 == Tok::Neck {
            self.advance()?;
            body.push(self.atom()?);
            while self.look.0 == Tok::Comma {
                self.advance()?;
                body.push(self.atom()?);
            }
        }
        self.expect(Tok::Dot, "'.'")?;
        Ok(Clause { head, body })
    }
}

/// Parses every clause in `src`, in order, without deduplication.
pub fn parse_clauses(src: &str) -> Result<Vec<Clause>, ParseError> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    while !p.at_eof() {
        out.push(p.clause()?);
    }
    Ok(out)
}

pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    Ok(Program::from_clauses(parse_clauses(src)?))
}

/// Parses exactly one clause.
pub fn parse_clause(src: &str) -> Result<Clause, ParseError> {
    let mut p = Parser::new(src)?;
    let c = p.clause()?;
    if !p.at_eof() {
        return Err(p.error("trailing input after clause"));
    }
    Ok(c)
}

/// Parses a single atom, with or without the terminating '.'.
pub fn parse_atom(src: &str) -> Result<Atom, ParseError> {
    let mut p = Parser::new(src)?;
    let a = p.atom()?;
    if p.look.0 == Tok::Dot {
        p.advance()?;
    }
    if !p.at_eof() {
        return Err(p.error("trailing input after atom"));
    }
    Ok(a)
}
