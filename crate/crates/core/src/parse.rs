//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (ASCII): integer literals, identifiers `[a-zA-Z][a-zA-Z0-9_]*`,
//! jet variables written `d<k><name>` (with `d0x` meaning `x`), operators
//! `+ - * ^` and parentheses. `^` binds tighter than `*`, which binds tighter
//! than `+` and `-`; juxtaposition is not multiplication. Rational
//! coefficients are written `p/q`.

use crate::coeff::CoefficientRing;
use crate::monomial::JetVariable;
use crate::poly::Polynomial;
use num::bigint::BigInt;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("undeclared identifier `{name}` at position {position}")]
    UndeclaredIdentifier { name: String, position: usize },
    #[error("coefficient not representable at position {position}: {message}")]
    Coefficient { position: usize, message: String },
}

/// The set of symbols an expression may mention: declared jet variables and
/// constant identifiers.
#[derive(Debug, Clone, Default)]
pub struct VariableScope {
    variables: BTreeSet<JetVariable>,
    constants: BTreeSet<String>,
}

impl VariableScope {
    pub fn new(
        variables: impl IntoIterator<Item = JetVariable>,
        constants: impl IntoIterator<Item = String>,
    ) -> Self {
        VariableScope {
            variables: variables.into_iter().collect(),
            constants: constants.into_iter().collect(),
        }
    }

    pub fn variables(&self) -> impl Iterator<Item = &JetVariable> {
        self.variables.iter()
    }

    pub fn constants(&self) -> impl Iterator<Item = &String> {
        self.constants.iter()
    }

    /// Resolves an identifier token. Literal matches of a declared order-0
    /// variable or constant take precedence; otherwise `d<k><name>` resolves
    /// to the jet variable of a declared base name.
    fn resolve(&self, ident: &str) -> Option<JetVariable> {
        let as_base = JetVariable::base_var(ident);
        if self.variables.contains(&as_base) || self.constants.contains(ident) {
            return Some(as_base);
        }
        let (order, base) = split_jet_ident(ident)?;
        let jv = JetVariable::new(base, order);
        if order == 0 {
            // d0x means x, whether x is a variable or a constant
            let b = JetVariable::base_var(jv.base());
            if self.variables.contains(&b) || self.constants.contains(jv.base()) {
                return Some(b);
            }
            return None;
        }
        if self.variables.contains(&jv) {
            Some(jv)
        } else {
            None
        }
    }
}

/// Splits `d<digits><name>` into (order, name); `None` if the shape does not
/// match.
fn split_jet_ident(ident: &str) -> Option<(u32, &str)> {
    let rest = ident.strip_prefix('d')?;
    let digits_end = rest.find(|c: char| !c.is_ascii_digit())?;
    if digits_end == 0 {
        return None;
    }
    let order: u32 = rest[..digits_end].parse().ok()?;
    let name = &rest[digits_end..];
    if name.starts_with(|c: char| c.is_ascii_alphabetic()) {
        Some((order, name))
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Integer(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    input: &'a str,
    tokens: Vec<(Token, usize)>,
}

impl<'a> Lexer<'a> {
    fn lex(input: &'a str) -> Result<Vec<(Token, usize)>, ParseError> {
        let mut lexer = Lexer { input, tokens: Vec::new() };
        lexer.run()?;
        Ok(lexer.tokens)
    }

    fn run(&mut self) -> Result<(), ParseError> {
        let bytes = self.input.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            match c {
                ' ' | '\t' | '\n' | '\r' => i += 1,
                '+' => {
                    self.tokens.push((Token::Plus, i));
                    i += 1;
                }
                '-' => {
                    self.tokens.push((Token::Minus, i));
                    i += 1;
                }
                '*' => {
                    self.tokens.push((Token::Star, i));
                    i += 1;
                }
                '^' => {
                    self.tokens.push((Token::Caret, i));
                    i += 1;
                }
                '/' => {
                    self.tokens.push((Token::Slash, i));
                    i += 1;
                }
                '(' => {
                    self.tokens.push((Token::LParen, i));
                    i += 1;
                }
                ')' => {
                    self.tokens.push((Token::RParen, i));
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                    let digits = &self.input[start..i];
                    let n: BigInt = digits.parse().expect("digits parse");
                    self.tokens.push((Token::Integer(n), start));
                }
                c if c.is_ascii_alphabetic() => {
                    let start = i;
                    while i < bytes.len()
                        && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    self.tokens
                        .push((Token::Ident(self.input[start..i].to_string()), start));
                }
                other => {
                    return Err(ParseError::Syntax {
                        position: i,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    scope: &'a VariableScope,
    ring: CoefficientRing,
    input_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.input_len)
    }

    fn advance(&mut self) -> Option<(Token, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<(), ParseError> {
        match self.advance() {
            Some((t, _)) if t == token => Ok(()),
            Some((_, p)) => Err(ParseError::Syntax {
                position: p,
                message: format!("expected {what}"),
            }),
            None => Err(ParseError::Syntax {
                position: self.input_len,
                message: format!("expected {what}, found end of input"),
            }),
        }
    }

    // expression := ['+'|'-'] term (('+'|'-') term)*
    fn expression(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Plus) => {
                self.advance();
            }
            Some(Token::Minus) => {
                self.advance();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.negate();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.advance();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Token::Minus) => {
                    self.advance();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.advance();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    // factor := base ['^' natural]
    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if let Some(Token::Caret) = self.peek() {
            self.advance();
            let p = self.here();
            match self.advance() {
                Some((Token::Integer(n), _)) => {
                    let exp: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                        position: p,
                        message: "exponent out of range".to_string(),
                    })?;
                    Ok(base.pow(exp))
                }
                _ => Err(ParseError::Syntax {
                    position: p,
                    message: "expected a non-negative integer exponent".to_string(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    // base := number ['/' number] | ident | '(' expression ')'
    fn base(&mut self) -> Result<Polynomial, ParseError> {
        let p = self.here();
        match self.advance() {
            Some((Token::Integer(n), pos)) => {
                if let Some(Token::Slash) = self.peek() {
                    self.advance();
                    let q = self.here();
                    match self.advance() {
                        Some((Token::Integer(d), _)) => {
                            let c = self.ring.from_fraction(&n, &d).map_err(|e| {
                                ParseError::Coefficient { position: pos, message: e.to_string() }
                            })?;
                            Ok(Polynomial::constant(self.ring, c))
                        }
                        _ => Err(ParseError::Syntax {
                            position: q,
                            message: "expected an integer denominator".to_string(),
                        }),
                    }
                } else {
                    let c = self
                        .ring
                        .from_fraction(&n, &BigInt::from(1))
                        .map_err(|e| ParseError::Coefficient {
                            position: pos,
                            message: e.to_string(),
                        })?;
                    Ok(Polynomial::constant(self.ring, c))
                }
            }
            Some((Token::Ident(name), pos)) => match self.scope.resolve(&name) {
                Some(v) => Ok(Polynomial::variable(self.ring, v)),
                None => Err(ParseError::UndeclaredIdentifier { name, position: pos }),
            },
            Some((Token::LParen, _)) => {
                let inner = self.expression()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some((_, pos)) => Err(ParseError::Syntax {
                position: pos,
                message: "expected a number, identifier, or `(`".to_string(),
            }),
            None => Err(ParseError::Syntax {
                position: p,
                message: "unexpected end of input".to_string(),
            }),
        }
    }
}

/// Parses an expression into a canonical polynomial over `ring`, resolving
/// identifiers against `scope`.
pub fn parse_poly(
    text: &str,
    scope: &VariableScope,
    ring: CoefficientRing,
) -> Result<Polynomial, ParseError> {
    let tokens = Lexer::lex(text)?;
    let mut parser = Parser { tokens, pos: 0, scope, ring, input_len: text.len() };
    let poly = parser.expression()?;
    if parser.pos != parser.tokens.len() {
        let (_, p) = parser.tokens[parser.pos];
        return Err(ParseError::Syntax {
            position: p,
            message: "trailing input after expression".to_string(),
        });
    }
    Ok(poly)
}
