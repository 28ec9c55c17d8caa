//! Recursive-descent parsers for the concrete syntax.
//!
//! FO: `E x. f`, `A x. f`, `!`, `&`, `|`, `->`, atoms `P(x)`, `x < y`,
//! `x > y`, `x = y`, and bounded quantifiers `(E y > x) f`, `(A y < x) f`,
//! `(A y in (x, z)) f`, `(A y) f`.
//!
//! TL: `true`, `false`, atoms, `!`, `G`, `H`, `K+`, `K-`, `U`, `S` (right
//! associative), `&`, `|`, `->`.
//!
//! Precedence from tightest: unary, `U`/`S`, `&`, `|`, `->`.

use crate::error::{ParseError, ParseErrorKind};

use super::{FoFormula, TlFormula, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Dot,
    Comma,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Lt,
    Gt,
    Eq,
    Plus,
    Minus,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    s.push(d);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            out.push(Spanned {
                tok: Tok::Ident(s),
                line: l,
                column: col,
            });
            continue;
        } else {
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '.' => Tok::Dot,
                ',' => Tok::Comma,
                '!' => Tok::Bang,
                '&' => Tok::Amp,
                '|' => Tok::Pipe,
                '<' => Tok::Lt,
                '>' => Tok::Gt,
                '=' => Tok::Eq,
                '+' => Tok::Plus,
                '-' => {
                    bump(&mut chars);
                    if chars.peek() == Some(&'>') {
                        bump(&mut chars);
                        out.push(Spanned {
                            tok: Tok::Arrow,
                            line: l,
                            column: col,
                        });
                    } else {
                        out.push(Spanned {
                            tok: Tok::Minus,
                            line: l,
                            column: col,
                        });
                    }
                    continue;
                }
                other => {
                    return Err(ParseError {
                        kind: ParseErrorKind::UnknownToken,
                        line: l,
                        column: col,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        bump(&mut chars);
        out.push(Spanned {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

const FO_KEYWORDS: &[&str] = &["E", "A", "in"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            kind: ParseErrorKind::Syntax,
            line: s.line,
            column: s.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            )))
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", self.peek().describe())))
        }
    }

    // ---- FO ----

    fn fo_var(&mut self) -> Result<Var, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !FO_KEYWORDS.contains(&s.as_str()) => {
                self.next();
                Ok(Var::new(s))
            }
            other => Err(self.error(format!("expected a variable, found {}", other.describe()))),
        }
    }

    fn fo_imp(&mut self) -> Result<FoFormula, ParseError> {
        let lhs = self.fo_or()?;
        if *self.peek() == Tok::Arrow {
            self.next();
            let rhs = self.fo_imp()?;
            return Ok(FoFormula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn fo_or(&mut self) -> Result<FoFormula, ParseError> {
        let mut lhs = self.fo_and()?;
        while *self.peek() == Tok::Pipe {
            self.next();
            let rhs = self.fo_and()?;
            lhs = FoFormula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn fo_and(&mut self) -> Result<FoFormula, ParseError> {
        let mut lhs = self.fo_unary()?;
        while *self.peek() == Tok::Amp {
            self.next();
            let rhs = self.fo_unary()?;
            lhs = FoFormula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn fo_unary(&mut self) -> Result<FoFormula, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.next();
                Ok(FoFormula::not(self.fo_unary()?))
            }
            Tok::Ident(q) if (q == "E" || q == "A") => {
                self.next();
                let v = self.fo_var()?;
                self.expect(Tok::Dot)?;
                let body = self.fo_imp()?;
                Ok(quantify(&q, v, body))
            }
            Tok::LParen => {
                if let Tok::Ident(q) = self.peek_at(1).clone() {
                    if (q == "E" || q == "A") && matches!(self.peek_at(2), Tok::Ident(_)) {
                        let after = self.peek_at(3).clone();
                        let is_header = matches!(after, Tok::RParen | Tok::Lt | Tok::Gt)
                            || after == Tok::Ident("in".into());
                        if is_header {
                            return self.fo_bounded(&q);
                        }
                    }
                }
                self.next();
                let f = self.fo_imp()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(_) => self.fo_atom(),
            other => Err(self.error(format!("expected a formula, found {}", other.describe()))),
        }
    }

    /// `(Q y) body`, `(Q y < x) body`, `(Q y > x) body`, `(Q y in (x, z)) body`.
    fn fo_bounded(&mut self, q: &str) -> Result<FoFormula, ParseError> {
        self.expect(Tok::LParen)?;
        self.next();
        let v = self.fo_var()?;
        let guard = match self.peek().clone() {
            Tok::RParen => None,
            Tok::Lt => {
                self.next();
                let b = self.fo_var()?;
                Some(FoFormula::Less(v.clone(), b))
            }
            Tok::Gt => {
                self.next();
                let b = self.fo_var()?;
                Some(FoFormula::Less(b, v.clone()))
            }
            Tok::Ident(s) if s == "in" => {
                self.next();
                self.expect(Tok::LParen)?;
                let lo = self.fo_var()?;
                self.expect(Tok::Comma)?;
                let hi = self.fo_var()?;
                self.expect(Tok::RParen)?;
                Some(FoFormula::and(
                    FoFormula::Less(lo, v.clone()),
                    FoFormula::Less(v.clone(), hi),
                ))
            }
            other => {
                return Err(self.error(format!(
                    "expected `)`, `<`, `>` or `in` in quantifier bound, found {}",
                    other.describe()
                )))
            }
        };
        self.expect(Tok::RParen)?;
        let body = self.fo_imp()?;
        let body = match (guard, q) {
            (None, _) => body,
            (Some(g), "E") => FoFormula::and(g, body),
            (Some(g), _) => FoFormula::implies(g, body),
        };
        Ok(quantify(q, v, body))
    }

    fn fo_atom(&mut self) -> Result<FoFormula, ParseError> {
        let name = match self.next() {
            Tok::Ident(s) => s,
            _ => unreachable!(),
        };
        if FO_KEYWORDS.contains(&name.as_str()) {
            self.pos -= 1;
            return Err(self.error(format!("unexpected keyword `{name}`")));
        }
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let v = self.fo_var()?;
                self.expect(Tok::RParen)?;
                Ok(FoFormula::Pred(name, v))
            }
            Tok::Lt => {
                self.next();
                let b = self.fo_var()?;
                Ok(FoFormula::Less(Var::new(name), b))
            }
            Tok::Gt => {
                self.next();
                let b = self.fo_var()?;
                Ok(FoFormula::Less(b, Var::new(name)))
            }
            Tok::Eq => {
                self.next();
                let b = self.fo_var()?;
                Ok(FoFormula::Equal(Var::new(name), b))
            }
            other => Err(self.error(format!(
                "expected `(`, `<`, `>` or `=` after `{name}`, found {}",
                other.describe()
            ))),
        }
    }

    // ---- TL ----

    fn tl_imp(&mut self) -> Result<TlFormula, ParseError> {
        let lhs = self.tl_or()?;
        if *self.peek() == Tok::Arrow {
            self.next();
            let rhs = self.tl_imp()?;
            return Ok(TlFormula::or(TlFormula::not(lhs), rhs));
        }
        Ok(lhs)
    }

    fn tl_or(&mut self) -> Result<TlFormula, ParseError> {
        let mut lhs = self.tl_and()?;
        while *self.peek() == Tok::Pipe {
            self.next();
            let rhs = self.tl_and()?;
            lhs = TlFormula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn tl_and(&mut self) -> Result<TlFormula, ParseError> {
        let mut lhs = self.tl_us()?;
        while *self.peek() == Tok::Amp {
            self.next();
            let rhs = self.tl_us()?;
            lhs = TlFormula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn tl_us(&mut self) -> Result<TlFormula, ParseError> {
        let lhs = self.tl_unary()?;
        if self.is_keyword("U") {
            self.next();
            let rhs = self.tl_us()?;
            return Ok(TlFormula::until(lhs, rhs));
        }
        if self.is_keyword("S") {
            self.next();
            let rhs = self.tl_us()?;
            return Ok(TlFormula::since(lhs, rhs));
        }
        Ok(lhs)
    }

    fn tl_unary(&mut self) -> Result<TlFormula, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.next();
                Ok(TlFormula::not(self.tl_unary()?))
            }
            Tok::LParen => {
                self.next();
                let f = self.tl_imp()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) => {
                self.next();
                match s.as_str() {
                    "true" => Ok(TlFormula::tt()),
                    "false" => Ok(TlFormula::ff()),
                    "G" => Ok(TlFormula::always_future(self.tl_unary()?)),
                    "H" => Ok(TlFormula::always_past(self.tl_unary()?)),
                    "K" => match self.next() {
                        Tok::Plus => Ok(TlFormula::k_plus(self.tl_unary()?)),
                        Tok::Minus => Ok(TlFormula::k_minus(self.tl_unary()?)),
                        _ => {
                            self.pos -= 1;
                            Err(self.error("expected `+` or `-` after `K`"))
                        }
                    },
                    "U" | "S" => {
                        self.pos -= 1;
                        Err(self.error(format!("unexpected keyword `{s}`")))
                    }
                    _ => {
                        if *self.peek() == Tok::LParen {
                            return Err(self.error(format!(
                                "`{s}(` is first-order syntax; temporal atoms take no argument"
                            )));
                        }
                        Ok(TlFormula::atom(&s))
                    }
                }
            }
            other => Err(self.error(format!("expected a formula, found {}", other.describe()))),
        }
    }
}

fn quantify(q: &str, v: Var, body: FoFormula) -> FoFormula {
    if q == "E" {
        FoFormula::Exists(v, Box::new(body))
    } else {
        FoFormula::Forall(v, Box::new(body))
    }
}

pub fn parse_fo(text: &str) -> Result<FoFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.fo_imp()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_tl(text: &str) -> Result<TlFormula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.tl_imp()?;
    p.finish()?;
    Ok(f)
}
