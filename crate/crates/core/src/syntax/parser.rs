//! Recursive-descent parser for the concrete formula grammar:
//!
//! ```text
//! formula := imp
//! imp     := or (("->" | "~>" | "<->" | "<~>") imp)?
//! or      := and ("|" and)*
//! and     := eq ("&" eq)*
//! eq      := unary ("=" ("0" | "1" | "1/2"))?
//! unary   := "!" unary | ("K" | "A" | "X") INT unary | atom
//! atom    := "top" | IDENT | "(" formula ")"
//! ```

use super::{Atom, Formula, Language, LanguageTag, Level};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at position {position}: {kind}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    InvalidCharacter(char),
    Unexpected {
        found: String,
        expected: &'static str,
    },
    IllegalOperator {
        operator: String,
        lang: Language,
    },
    AgentOutOfRange {
        agent: usize,
        agents: usize,
    },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::InvalidCharacter(c) => write!(f, "invalid character {c:?}"),
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::IllegalOperator { operator, lang } => {
                write!(
                    f,
                    "operator {operator} is not allowed in language {}",
                    lang.name()
                )
            }
            ParseErrorKind::AgentOutOfRange { agent, agents } => {
                write!(f, "agent {agent} is outside 1..={agents}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Bang,
    Amp,
    Pipe,
    Arrow,
    NArrow,
    DoubleArrow,
    NDoubleArrow,
    Equals,
    Number(String),
    Modal(char, usize),
    Ident(String),
    LParen,
    RParen,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Bang => f.write_str("'!'"),
            Token::Amp => f.write_str("'&'"),
            Token::Pipe => f.write_str("'|'"),
            Token::Arrow => f.write_str("'->'"),
            Token::NArrow => f.write_str("'~>'"),
            Token::DoubleArrow => f.write_str("'<->'"),
            Token::NDoubleArrow => f.write_str("'<~>'"),
            Token::Equals => f.write_str("'='"),
            Token::Number(n) => write!(f, "number {n}"),
            Token::Modal(op, i) => write!(f, "operator {op}{i}"),
            Token::Ident(name) => write!(f, "identifier {name:?}"),
            Token::LParen => f.write_str("'('"),
            Token::RParen => f.write_str("')'"),
            Token::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let fixed: [(&str, Token); 11] = [
        ("<~>", Token::NDoubleArrow),
        ("<->", Token::DoubleArrow),
        ("->", Token::Arrow),
        ("~>", Token::NArrow),
        ("!", Token::Bang),
        ("&", Token::Amp),
        ("|", Token::Pipe),
        ("=", Token::Equals),
        ("(", Token::LParen),
        (")", Token::RParen),
        ("1/2", Token::Number("1/2".into())),
    ];
    'outer: while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        for (spelling, token) in &fixed {
            if text[i..].starts_with(spelling) {
                out.push((i, token.clone()));
                i += spelling.len();
                continue 'outer;
            }
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Token::Number(text[start..i].to_string())));
        } else if matches!(c, 'K' | 'A' | 'X')
            && bytes.get(i + 1).is_some_and(|b| b.is_ascii_digit())
        {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let agent = text[start + 1..i].parse().unwrap_or(usize::MAX);
            out.push((start, Token::Modal(c, agent)));
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Ident(text[start..i].to_string())));
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(ParseError {
                position: i,
                kind: ParseErrorKind::InvalidCharacter(ch),
            });
        }
    }
    out.push((text.len(), Token::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    tag: LanguageTag,
}

/// Parses `text` in language `tag`, expanding every abbreviation.
pub fn parse(text: &str, tag: LanguageTag) -> Result<Formula, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        tag,
    };
    let f = parser.formula()?;
    parser.expect(Token::End, "end of input")?;
    Ok(f)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &'static str) -> ParseError {
        ParseError {
            position: self.offset(),
            kind: ParseErrorKind::Unexpected {
                found: self.peek().to_string(),
                expected,
            },
        }
    }

    fn expect(&mut self, token: Token, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == token {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn require_nimp(&self, operator: &str, position: usize) -> Result<(), ParseError> {
        if self.tag.lang == Language::Knimp {
            Ok(())
        } else {
            Err(ParseError {
                position,
                kind: ParseErrorKind::IllegalOperator {
                    operator: operator.to_string(),
                    lang: self.tag.lang,
                },
            })
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        let at = self.offset();
        let op = self.peek().clone();
        match op {
            Token::Arrow | Token::NArrow | Token::DoubleArrow | Token::NDoubleArrow => {
                if matches!(op, Token::NArrow | Token::NDoubleArrow) {
                    self.require_nimp(&op.to_string(), at)?;
                }
                self.bump();
                let rhs = self.formula()?;
                Ok(match op {
                    Token::Arrow => Formula::implies(lhs, rhs),
                    Token::NArrow => Formula::nimp(lhs, rhs),
                    Token::DoubleArrow => Formula::iff(lhs, rhs),
                    _ => Formula::equiv(lhs, rhs),
                })
            }
            _ => Ok(lhs),
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.and()?;
        while *self.peek() == Token::Pipe {
            self.bump();
            let rhs = self.and()?;
            f = Formula::or(f, rhs);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.eq()?;
        while *self.peek() == Token::Amp {
            self.bump();
            let rhs = self.eq()?;
            f = Formula::and(f, rhs);
        }
        Ok(f)
    }

    fn eq(&mut self) -> Result<Formula, ParseError> {
        let f = self.unary()?;
        if *self.peek() != Token::Equals {
            return Ok(f);
        }
        let at = self.offset();
        self.require_nimp("'='", at)?;
        self.bump();
        let level = match self.peek() {
            Token::Number(n) if n == "0" => Level::Zero,
            Token::Number(n) if n == "1" => Level::One,
            Token::Number(n) if n == "1/2" => Level::Half,
            _ => return Err(self.error("0, 1 or 1/2")),
        };
        self.bump();
        Ok(Formula::eq(f, level))
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Token::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Token::Modal(op, agent) => {
                if agent == 0 || agent > self.tag.agents {
                    return Err(ParseError {
                        position: at,
                        kind: ParseErrorKind::AgentOutOfRange {
                            agent,
                            agents: self.tag.agents,
                        },
                    });
                }
                let kxa = self.tag.lang == Language::Kxa;
                if op == 'X' && !kxa {
                    return Err(ParseError {
                        position: at,
                        kind: ParseErrorKind::IllegalOperator {
                            operator: format!("X{agent}"),
                            lang: self.tag.lang,
                        },
                    });
                }
                self.bump();
                let body = self.unary()?;
                Ok(match op {
                    'K' => Formula::know(agent, body),
                    'X' => Formula::xknow(agent, body),
                    _ if kxa => Formula::aware(agent, body),
                    _ => Formula::aware_abbrev(agent, body),
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Token::Ident(name) if name == "top" => {
                self.bump();
                Ok(Formula::Top)
            }
            Token::Ident(name) => {
                let atom = Atom::new(&name).map_err(|_| self.error("an atom"))?;
                self.bump();
                Ok(Formula::Prop(atom))
            }
            Token::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Token::RParen, "')'")?;
                Ok(f)
            }
            _ => Err(self.error("a formula")),
        }
    }
}
