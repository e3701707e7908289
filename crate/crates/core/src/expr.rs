//! Target-function expressions in one variable `x`.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' integer)?
//! atom   := number | 'x' | name '(' expr ')' | '(' expr ')' | '-' atom
//! ```

use std::fmt;

use thiserror::Error;

use crate::scalar::{parse_rational, to_exact_decimal, to_f64, ExactRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Abs,
    Sqrt,
    Log,
}

impl Func {
    pub const ALL: [Func; 6] = [Func::Sin, Func::Cos, Func::Exp, Func::Abs, Func::Sqrt, Func::Log];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Abs => "abs",
            Func::Sqrt => "sqrt",
            Func::Log => "log",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Number(ExactRational),
    Var,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: Vec<String>,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("{0} outside its domain at {1}")]
    Domain(&'static str, f64),
    #[error("non-finite result")]
    NonFinite,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(ExactRational),
    Ident(String),
    Int(i64),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek_byte(&self, at: usize) -> Option<u8> {
        self.src.as_bytes().get(at).copied()
    }

    /// Next token and its starting offset.
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(b) = self.peek_byte(start) else {
            return Ok((Tok::End, start));
        };
        if b.is_ascii_digit() || (b == b'.' && self.peek_byte(start + 1).is_some_and(|d| d.is_ascii_digit())) {
            let mut end = start;
            while self.peek_byte(end).is_some_and(|d| d.is_ascii_digit()) {
                end += 1;
            }
            let mut integral = true;
            if self.peek_byte(end) == Some(b'.') {
                integral = false;
                end += 1;
                while self.peek_byte(end).is_some_and(|d| d.is_ascii_digit()) {
                    end += 1;
                }
            }
            if matches!(self.peek_byte(end), Some(b'e' | b'E')) {
                let mut e = end + 1;
                if matches!(self.peek_byte(e), Some(b'+' | b'-')) {
                    e += 1;
                }
                if self.peek_byte(e).is_some_and(|d| d.is_ascii_digit()) {
                    integral = false;
                    while self.peek_byte(e).is_some_and(|d| d.is_ascii_digit()) {
                        e += 1;
                    }
                    end = e;
                }
            }
            self.pos = end;
            let text = &self.src[start..end];
            let value = parse_rational(text).map_err(|_| ParseError {
                offset: start,
                message: format!("malformed number {text:?}"),
                expected: vec!["number".into()],
            })?;
            let tok = match (integral, text.parse::<i64>()) {
                (true, Ok(i)) => Tok::Int(i),
                _ => Tok::Num(value),
            };
            return Ok((tok, start));
        }
        if b.is_ascii_alphabetic() {
            let mut end = start;
            while self.peek_byte(end).is_some_and(|d| d.is_ascii_alphanumeric() || d == b'_') {
                end += 1;
            }
            self.pos = end;
            return Ok((Tok::Ident(self.src[start..end].to_owned()), start));
        }
        let c = self.src[start..].chars().next().expect("non-empty");
        if "+-*/^()".contains(c) {
            self.pos += 1;
            return Ok((Tok::Sym(c), start));
        }
        Err(ParseError {
            offset: start,
            message: format!("unexpected character {c:?}"),
            expected: vec![],
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    offset: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer { src, pos: 0 };
        let (tok, offset) = lexer.next()?;
        Ok(Self { lexer, tok, offset })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, offset) = self.lexer.next()?;
        self.tok = tok;
        self.offset = offset;
        Ok(())
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let found = match &self.tok {
            Tok::End => "end of input".to_owned(),
            Tok::Num(_) | Tok::Int(_) => "number".to_owned(),
            Tok::Ident(s) => format!("{s:?}"),
            Tok::Sym(c) => format!("{c:?}"),
        };
        ParseError {
            offset: self.offset,
            message: format!("expected {}, found {found}", expected.join(" or ")),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn eat(&mut self, c: char) -> Result<bool, ParseError> {
        if self.tok == Tok::Sym(c) {
            self.bump()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.tok {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.factor()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^')? {
            return Ok(base);
        }
        let negative = self.eat('-')?;
        match self.tok {
            Tok::Int(i) => {
                let e = if negative { -i } else { i };
                let e = i32::try_from(e).map_err(|_| self.error(&["integer exponent"]))?;
                self.bump()?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(self.error(&["integer exponent"])),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        const EXPECTED: &[&str] = &["number", "'x'", "function call", "'('", "'-'"];
        match self.tok.clone() {
            Tok::Int(i) => {
                self.bump()?;
                Ok(Expr::Number(ExactRational::from_integer(i.into())))
            }
            Tok::Num(v) => {
                self.bump()?;
                Ok(Expr::Number(v))
            }
            Tok::Ident(name) if name == "x" => {
                self.bump()?;
                Ok(Expr::Var)
            }
            Tok::Ident(name) => {
                let at = self.offset;
                let func = Func::from_name(&name).ok_or_else(|| ParseError {
                    offset: at,
                    message: format!("unknown function {name:?}"),
                    expected: Func::ALL.iter().map(|f| f.name().to_owned()).collect(),
                })?;
                self.bump()?;
                if !self.eat('(')? {
                    return Err(self.error(&["'('"]));
                }
                let arg = self.expr()?;
                if !self.eat(')')? {
                    return Err(self.error(&["')'"]));
                }
                Ok(Expr::Call(func, Box::new(arg)))
            }
            Tok::Sym('(') => {
                self.bump()?;
                let inner = self.expr()?;
                if !self.eat(')')? {
                    return Err(self.error(&["')'"]));
                }
                Ok(inner)
            }
            Tok::Sym('-') => {
                self.bump()?;
                Ok(Expr::Neg(Box::new(self.atom()?)))
            }
            _ => Err(self.error(EXPECTED)),
        }
    }
}

/// Parses an expression; whitespace is insignificant.
pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

impl Expr {
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Number(v) => to_f64(v),
            Expr::Var => x,
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Binary(op, l, r) => {
                let (a, b) = (l.eval(x)?, r.eval(x)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                }
            }
            Expr::Pow(base, n) => base.eval(x)?.powi(*n),
            Expr::Call(f, arg) => {
                let a = arg.eval(x)?;
                match f {
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Exp => a.exp(),
                    Func::Abs => a.abs(),
                    Func::Sqrt if a < 0.0 => return Err(EvalError::Domain("sqrt", a)),
                    Func::Sqrt => a.sqrt(),
                    Func::Log if a <= 0.0 => return Err(EvalError::Domain("log", a)),
                    Func::Log => a.ln(),
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite)
        }
    }

    /// Prefix form, e.g. `(+ (^ x 2) 1)`.
    pub fn to_sexpr(&self) -> String {
        match self {
            Expr::Number(v) => number_literal(v),
            Expr::Var => "x".into(),
            Expr::Neg(e) => format!("(neg {})", e.to_sexpr()),
            Expr::Binary(op, l, r) => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                };
                format!("({sym} {} {})", l.to_sexpr(), r.to_sexpr())
            }
            Expr::Pow(b, n) => format!("(^ {} {n})", b.to_sexpr()),
            Expr::Call(f, a) => format!("({} {})", f.name(), a.to_sexpr()),
        }
    }

    fn is_atom(&self) -> bool {
        matches!(self, Expr::Number(_) | Expr::Var | Expr::Neg(_) | Expr::Call(..))
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_atom() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Binary(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

fn number_literal(v: &ExactRational) -> String {
    to_exact_decimal(v).unwrap_or_else(|| format!("({}/{})", v.numer(), v.denom()))
}

/// Re-parseable infix form with minimal parentheses.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(v) => {
                let lit = number_literal(v);
                match lit.strip_prefix('-') {
                    // a literal never carries a sign; negative values print as negation
                    Some(rest) => write!(f, "-{rest}"),
                    None => f.write_str(&lit),
                }
            }
            Expr::Var => f.write_str("x"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.fmt_atom(f)
            }
            Expr::Binary(op @ (BinOp::Add | BinOp::Sub), l, r) => {
                write!(f, "{l}")?;
                f.write_str(if *op == BinOp::Add { " + " } else { " - " })?;
                match **r {
                    Expr::Binary(BinOp::Add | BinOp::Sub, ..) => write!(f, "({r})"),
                    _ => write!(f, "{r}"),
                }
            }
            Expr::Binary(op, l, r) => {
                match **l {
                    Expr::Binary(BinOp::Add | BinOp::Sub, ..) => write!(f, "({l})")?,
                    _ => write!(f, "{l}")?,
                }
                f.write_str(if *op == BinOp::Mul { "*" } else { "/" })?;
                r.fmt_factor(f)
            }
            Expr::Pow(b, n) => {
                b.fmt_atom(f)?;
                write!(f, "^{n}")
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
