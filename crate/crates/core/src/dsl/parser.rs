//! Recursive-descent parser for relation definitions.
//!
//! ```text
//! expr   := poly "=" poly ["mod" int]
//! poly   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := atom ["^" uint]
//! atom   := var | int | "(" poly ")"
//! ```

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ast::{Poly, RelationExpr, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eq,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                column += 1;
            }
            Tok::Int(digits.parse().expect("ascii digits parse"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                word.push(d);
                chars.next();
                column += 1;
            }
            Tok::Ident(word)
        } else {
            chars.next();
            column += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '=' => Tok::Eq,
                other => return Err(syntax(l, col, format!("unexpected character `{other}`"))),
            }
        };
        out.push(Token {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> Error {
        let t = self.peek();
        let found = match &t.tok {
            Tok::End => "end of input".to_string(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            other => format!("{other:?}"),
        };
        syntax(t.line, t.column, format!("expected {expected}, found {found}"))
    }

    fn expr(&mut self) -> Result<RelationExpr> {
        let lhs = self.poly()?;
        if self.peek().tok != Tok::Eq {
            return Err(self.unexpected("`=`"));
        }
        self.bump();
        let rhs = self.poly()?;
        let modulus = match &self.peek().tok {
            Tok::Ident(w) if w == "mod" => {
                self.bump();
                let t = self.bump();
                match t.tok {
                    Tok::Int(m) if m >= BigInt::from(2) => Some(m),
                    Tok::Int(_) => return Err(syntax(t.line, t.column, "modulus must be at least 2")),
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected("an integer modulus"));
                    }
                }
            }
            _ => None,
        };
        if self.peek().tok != Tok::End {
            return Err(self.unexpected("end of input"));
        }
        Ok(RelationExpr { lhs, rhs, modulus })
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = Poly::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Poly::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = Poly::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.tok {
            Tok::Int(e) => {
                let e = e
                    .to_u32()
                    .ok_or_else(|| syntax(t.line, t.column, "exponent too large"))?;
                Ok(Poly::Pow(Box::new(base), e))
            }
            Tok::Minus => Err(syntax(t.line, t.column, "negative exponent")),
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a nonnegative integer exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(Poly::Int(n)),
            Tok::Ident(name) => match Var::from_name(&name) {
                Some(v) => Ok(Poly::Var(v)),
                None => Err(syntax(t.line, t.column, format!("unknown variable `{name}`"))),
            },
            Tok::LParen => {
                let inner = self.poly()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a variable, integer or `(`"))
            }
        }
    }
}

pub fn parse(text: &str) -> Result<RelationExpr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    p.expr()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(v: Var) -> Box<Poly> {
        Box::new(Poly::Var(v))
    }

    #[test]
    fn parses_sum() {
        let e = parse("x + y = z").unwrap();
        assert_eq!(e.lhs, Poly::Add(var(Var::X), var(Var::Y)));
        assert_eq!(e.rhs, Poly::Var(Var::Z));
        assert_eq!(e.modulus, None);
    }

    #[test]
    fn parses_modulus() {
        let e = parse("x*y*z = 1 mod 7").unwrap();
        assert_eq!(e.modulus, Some(BigInt::from(7)));
        assert_eq!(
            e.lhs,
            Poly::Mul(Box::new(Poly::Mul(var(Var::X), var(Var::Y))), var(Var::Z))
        );
        assert_eq!(e.rhs, Poly::Int(1.into()));
    }

    #[test]
    fn parses_powers() {
        let e = parse("x^2 + y^3 = z").unwrap();
        assert_eq!(
            e.lhs,
            Poly::Add(
                Box::new(Poly::Pow(var(Var::X), 2)),
                Box::new(Poly::Pow(var(Var::Y), 3))
            )
        );
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse("x+y=z").unwrap(), parse("  x +\n y =   z ").unwrap());
    }

    #[test]
    fn subtraction_is_left_associative() {
        let e = parse("x - y - z = 0").unwrap();
        assert_eq!(e.lhs.to_string(), "x - y - z");
        let e = parse("x - (y - z) = 0").unwrap();
        assert_eq!(e.lhs.to_string(), "x - (y - z)");
    }

    #[test]
    fn errors_carry_positions() {
        match parse("x + w = z").unwrap_err() {
            Error::Syntax { line, column, message } => {
                assert_eq!((line, column), (1, 5));
                assert!(message.contains("unknown variable"));
            }
            other => panic!("{other}"),
        }
        match parse("x +\ny^-2 = z").unwrap_err() {
            Error::Syntax { line, column, message } => {
                assert_eq!((line, column), (2, 3));
                assert!(message.contains("negative exponent"));
            }
            other => panic!("{other}"),
        }
        assert!(matches!(parse("x + y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x = y mod 1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x = (y"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x = y z"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x = y % 2"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn printer_is_canonical() {
        for src in [
            "x + y = z",
            "x*y*z = 1 mod 7",
            "x^2 + y^3 = z",
            "(x + y)^2 = z*(y - 1)",
            "(x^2)^3 = x*(y*z)",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(e.to_string(), src);
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }
}
