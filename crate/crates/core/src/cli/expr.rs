//! Composition expressions: `name | op(expr) | op(expr, expr)`, e.g.
//! `conv(mu,N)`, `inv(one)`, `hadamard(N, mu)`, `derivative(one)`, `pow(3)`.

use crate::arithfn::{self, builtin, ArithFn};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(u32),
    Open,
    Close,
    Comma,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                tokens.push(Token::Open);
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close);
            }
            ',' => {
                chars.next();
                tokens.push(Token::Comma);
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(d);
                    chars.next();
                }
                tokens.push(Token::Int(digits.parse().map_err(|_| Error::Parse(src.to_string()))?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                    ident.push(d);
                    chars.next();
                }
                tokens.push(Token::Ident(ident));
            }
            _ => return Err(Error::Parse(format!("unexpected `{c}` in `{src}`"))),
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in `{}`", self.src))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expect(&mut self, token: Token) -> Result<()> {
        if self.next() == Some(token.clone()) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {token:?}")))
        }
    }

    fn expr(&mut self) -> Result<ArithFn> {
        let name = match self.next() {
            Some(Token::Ident(name)) => name,
            _ => return Err(self.error("expected a function name")),
        };
        if self.peek() != Some(&Token::Open) {
            return builtin(&name);
        }
        self.expect(Token::Open)?;
        if name == "pow" {
            let Some(Token::Int(k)) = self.next() else {
                return Err(self.error("pow expects an integer exponent"));
            };
            self.expect(Token::Close)?;
            return Ok(ArithFn::power(k));
        }
        let mut args = vec![self.expr()?];
        while self.peek() == Some(&Token::Comma) {
            self.next();
            args.push(self.expr()?);
        }
        self.expect(Token::Close)?;
        match (name.as_str(), args.as_slice()) {
            ("conv", [f, g]) => Ok(arithfn::conv(f, g)),
            ("add", [f, g]) => Ok(arithfn::add(f, g)),
            ("hadamard", [f, g]) => Ok(arithfn::hadamard(f, g)),
            ("inv" | "inverse", [f]) => Ok(arithfn::inverse(f)),
            ("derivative", [f]) => Ok(arithfn::derivative(f)),
            ("conv" | "add" | "hadamard" | "inv" | "inverse" | "derivative", _) => {
                Err(self.error(&format!("wrong number of arguments to `{name}`")))
            }
            _ => Err(Error::UnknownBuiltin(name)),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<ArithFn> {
    let mut parser = Parser { src, tokens: tokenize(src)?, pos: 0 };
    let f = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(f)
}
