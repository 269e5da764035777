//! Recursive-descent parser for class expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*            '*' is the intersection product
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | NAME | NAME '[' ['-'] INT ']'
//!         | FUNC '(' expr (',' expr)* ')' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::{Expr, Func, Symbol};
use crate::error::{Error, Result};
use crate::linalg::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Name(s) => format!("name {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            _ if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(input[start..i].parse().expect("digits"))));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let mut name = input[start..i].to_string();
                // `pi*(` is the pullback; a bare `pi` is not a name.
                if name == "pi" {
                    let mut k = i;
                    while k < bytes.len() && (bytes[k] as char).is_whitespace() {
                        k += 1;
                    }
                    if k < bytes.len() && bytes[k] == b'*' {
                        name.push('*');
                        i = k + 1;
                    }
                }
                out.push((start, Tok::Name(name)));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((input.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&tok.describe())
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let Tok::Int(n) = self.peek().clone() else {
                return self.fail("an integer exponent");
            };
            let pos = self.pos();
            self.bump();
            let k: u32 = n.try_into().map_err(|_| Error::Parse {
                pos,
                message: "exponent too large".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn index(&mut self) -> Result<i64> {
        self.expect(Tok::LBracket)?;
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Int(n) = self.peek().clone() else {
            return self.fail("an integer index");
        };
        let pos = self.pos();
        self.bump();
        let n: i64 = n.try_into().map_err(|_| Error::Parse {
            pos,
            message: "index too large".into(),
        })?;
        self.expect(Tok::RBracket)?;
        Ok(if neg { -n } else { n })
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let Tok::Int(d) = self.peek().clone() else {
                        return self.fail("a denominator");
                    };
                    let dpos = self.pos();
                    self.bump();
                    let r = Rat::from_bigints(n, d).map_err(|_| Error::Parse {
                        pos: dpos,
                        message: "zero denominator".into(),
                    })?;
                    return Ok(Expr::Num(r));
                }
                Ok(Expr::Num(Rat::from(n)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Name(name) => {
                self.bump();
                if let Some(f) = Func::from_name(&name) {
                    self.expect(Tok::LParen)?;
                    let mut args = vec![self.expr()?];
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    self.expect(Tok::RParen)?;
                    if args.len() != f.arity() {
                        return Err(Error::Parse {
                            pos,
                            message: format!(
                                "{} takes {} argument(s), got {}",
                                f.name(),
                                f.arity(),
                                args.len()
                            ),
                        });
                    }
                    return Ok(Expr::Call(f, args));
                }
                match name.as_str() {
                    "W" => Ok(Expr::W(self.index()?)),
                    "Wt" => Ok(Expr::Wt(self.index()?)),
                    _ => match Symbol::from_name(&name) {
                        Some(s) => Ok(Expr::Sym(s)),
                        None => Err(Error::Parse {
                            pos,
                            message: format!("unknown identifier {name:?}"),
                        }),
                    },
                }
            }
            _ => self.fail("a number, name or '('"),
        }
    }
}

/// Parses an expression; errors carry the byte offset of the offending token.
pub fn parse_expr(input: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(input)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("theta + 2*theta^2 - -pt").unwrap();
        let expected = Expr::Sub(
            Box::new(Expr::Add(
                Box::new(Expr::Sym(Symbol::Theta)),
                Box::new(Expr::Mul(
                    Box::new(Expr::Num(Rat::from_int(2))),
                    Box::new(Expr::Pow(Box::new(Expr::Sym(Symbol::Theta)), 2)),
                )),
            )),
            Box::new(Expr::Neg(Box::new(Expr::Sym(Symbol::Pt)))),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn rationals_and_calls() {
        assert_eq!(parse_expr("5/2").unwrap(), Expr::Num(Rat::new(5, 2)));
        let e = parse_expr("pi*( W[1] )").unwrap();
        assert_eq!(e, Expr::Call(Func::PiPull, vec![Expr::W(1)]));
        let e = parse_expr("pi * (theta)").unwrap();
        assert_eq!(e, Expr::Call(Func::PiPull, vec![Expr::Sym(Symbol::Theta)]));
        assert_eq!(parse_expr("W[-1]").unwrap(), Expr::W(-1));
        assert_eq!(
            parse_expr("nstar(-1, e1)").unwrap(),
            Expr::Call(
                Func::NStar,
                vec![Expr::Neg(Box::new(Expr::Num(Rat::one()))), Expr::Sym(Symbol::E(1))]
            )
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("theta + foo") {
            Err(Error::Parse { pos, message }) => {
                assert_eq!(pos, 8);
                assert!(message.contains("foo"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("F(theta"), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(parse_expr("pont(theta)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("theta theta"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_expr("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("theta $"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_expr("pi"), Err(Error::Parse { pos: 0, .. })));
    }
}
