//! The small expression language in which equation coefficients are written.
//!
//! Grammar (precedence from loosest to tightest):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?            -- right associative
//! atom  := NUMBER | IDENT | '(' expr ')'
//! ```
//!
//! `x` is the main variable and `q` the field symbol; every other identifier
//! is a parameter resolved through [`Bindings`]. Rational literals are
//! written `p/q` and folded by constant folding, so `1/2*x` means `(1/2)*x`.
//! Exponents must constant-fold to integers after binding substitution;
//! exponents containing `x` are rejected.

use std::fmt;

use crate::exactfield::{Field, RatFun};

/// Byte range of a token or expression in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn join(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DslError {
    pub kind: DslErrorKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DslErrorKind {
    IllegalChar(char),
    UnexpectedToken {
        found: String,
        expected: &'static [&'static str],
    },
    UnexpectedEnd {
        expected: &'static [&'static str],
    },
    UnboundName(String),
    DivisionByZero,
    NonIntegerExponent,
    VariableInExponent,
    /// q was used but the active field is plain Q without a numeric q.
    QUnavailable,
    IntegerOverflow,
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: ", self.span)?;
        match &self.kind {
            DslErrorKind::IllegalChar(c) => write!(f, "illegal character `{c}`"),
            DslErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "unexpected `{found}`, expected {}", expected.join(" or "))
            }
            DslErrorKind::UnexpectedEnd { expected } => {
                write!(f, "unexpected end of input, expected {}", expected.join(" or "))
            }
            DslErrorKind::UnboundName(n) => write!(f, "unbound parameter `{n}`"),
            DslErrorKind::DivisionByZero => write!(f, "division by zero"),
            DslErrorKind::NonIntegerExponent => {
                write!(f, "exponent does not fold to an integer")
            }
            DslErrorKind::VariableInExponent => {
                write!(f, "exponent may not contain the variable x")
            }
            DslErrorKind::QUnavailable => {
                write!(f, "q is not available in the plain rational field")
            }
            DslErrorKind::IntegerOverflow => write!(f, "integer constant too large"),
        }
    }
}

impl std::error::Error for DslError {}

fn err<T>(kind: DslErrorKind, span: Span) -> Result<T, DslError> {
    Err(DslError { kind, span })
}

/// Longest-match tokenization. Numbers are unsigned integers; identifiers
/// are `[A-Za-z_][A-Za-z0-9_]*`.
pub fn tokenize(source: &str) -> Result<Vec<Token>, DslError> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let c = source[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let kind = match c {
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            '*' => TokenKind::Star,
            '/' => TokenKind::Slash,
            '^' => TokenKind::Caret,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Number,
                    text: source[start..i].to_string(),
                    span: Span { start, end: i },
                });
                continue;
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident,
                    text: source[start..i].to_string(),
                    span: Span { start, end: i },
                });
                continue;
            }
            other => {
                return err(
                    DslErrorKind::IllegalChar(other),
                    Span {
                        start,
                        end: start + other.len_utf8(),
                    },
                );
            }
        };
        i += 1;
        tokens.push(Token {
            kind,
            text: source[start..i].to_string(),
            span: Span { start, end: i },
        });
    }
    Ok(tokens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    /// Unsigned integer literal, kept as digits (arbitrary precision).
    Number(String),
    /// The main variable x.
    Var,
    /// The field symbol q.
    QSym,
    /// A named parameter to be resolved through bindings.
    Param(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_span(&self) -> Span {
        Span {
            start: self.end,
            end: self.end,
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        while let Some(t) = self.peek() {
            let op = match t.kind {
                TokenKind::Plus => BinOp::Add,
                TokenKind::Minus => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr {
                kind: ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        while let Some(t) = self.peek() {
            let op = match t.kind {
                TokenKind::Star => BinOp::Mul,
                TokenKind::Slash => BinOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr {
                kind: ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if let Some(t) = self.peek() {
            if t.kind == TokenKind::Minus {
                let start = t.span;
                self.bump();
                let inner = self.unary()?;
                let span = start.join(inner.span);
                return Ok(Expr {
                    kind: ExprKind::Neg(Box::new(inner)),
                    span,
                });
            }
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, DslError> {
        let base = self.atom()?;
        if let Some(t) = self.peek() {
            if t.kind == TokenKind::Caret {
                self.bump();
                // exponent at unary precedence: q^-2 works, -x^2 is -(x^2)
                let exp = self.unary()?;
                let span = base.span.join(exp.span);
                return Ok(Expr {
                    kind: ExprKind::Bin(BinOp::Pow, Box::new(base), Box::new(exp)),
                    span,
                });
            }
        }
        Ok(base)
    }

    const ATOM_EXPECTED: &'static [&'static str] = &["number", "identifier", "`(`"];

    fn atom(&mut self) -> Result<Expr, DslError> {
        let Some(t) = self.bump() else {
            return err(
                DslErrorKind::UnexpectedEnd {
                    expected: Self::ATOM_EXPECTED,
                },
                self.end_span(),
            );
        };
        let t = t.clone();
        match t.kind {
            TokenKind::Number => Ok(Expr {
                kind: ExprKind::Number(t.text),
                span: t.span,
            }),
            TokenKind::Ident => {
                let kind = match t.text.as_str() {
                    "x" => ExprKind::Var,
                    "q" => ExprKind::QSym,
                    _ => ExprKind::Param(t.text),
                };
                Ok(Expr { kind, span: t.span })
            }
            TokenKind::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(close) if close.kind == TokenKind::RParen => Ok(Expr {
                        span: t.span.join(close.span),
                        kind: inner.kind,
                    }),
                    Some(other) => err(
                        DslErrorKind::UnexpectedToken {
                            found: other.text.clone(),
                            expected: &["`)`"],
                        },
                        other.span,
                    ),
                    None => err(
                        DslErrorKind::UnexpectedEnd { expected: &["`)`"] },
                        self.end_span(),
                    ),
                }
            }
            _ => err(
                DslErrorKind::UnexpectedToken {
                    found: t.text,
                    expected: Self::ATOM_EXPECTED,
                },
                t.span,
            ),
        }
    }
}

/// Parses a token stream into an expression, requiring full consumption.
pub fn parse(tokens: &[Token]) -> Result<Expr, DslError> {
    let end = tokens.last().map_or(0, |t| t.span.end);
    let mut p = Parser { tokens, pos: 0, end };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return err(
            DslErrorKind::UnexpectedToken {
                found: t.text.clone(),
                expected: &["operator", "end of input"],
            },
            t.span,
        );
    }
    Ok(e)
}

/// Tokenize + parse in one step.
pub fn parse_source(source: &str) -> Result<Expr, DslError> {
    parse(&tokenize(source)?)
}

/// What a parameter name stands for.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue<K: Field> {
    /// An integer, usable in exponent positions and as a field value.
    Int(i64),
    /// A field element.
    Elem(K),
}

/// Ordered parameter bindings; later entries may not shadow earlier ones.
#[derive(Clone, Debug, Default)]
pub struct Bindings<K: Field> {
    entries: Vec<(String, BoundValue<K>)>,
}

impl<K: Field> Bindings<K> {
    pub fn new() -> Self {
        Bindings { entries: Vec::new() }
    }

    pub fn bind_int(&mut self, name: impl Into<String>, value: i64) -> &mut Self {
        self.entries.push((name.into(), BoundValue::Int(value)));
        self
    }

    pub fn bind_elem(&mut self, name: impl Into<String>, value: K) -> &mut Self {
        self.entries.push((name.into(), BoundValue::Elem(value)));
        self
    }

    pub fn get(&self, name: &str) -> Option<&BoundValue<K>> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BoundValue<K>)> {
        self.entries.iter().map(|(n, v)| (n.as_str(), v))
    }
}

fn fold_digits<K: Field>(digits: &str) -> K {
    let ten = K::from_i64(10);
    digits.bytes().fold(K::zero(), |acc, b| {
        acc.mul(&ten).add(&K::from_i64((b - b'0') as i64))
    })
}

/// Folds an exponent subtree to an integer after binding substitution.
fn int_eval<K: Field>(e: &Expr, bindings: &Bindings<K>) -> Result<i64, DslError> {
    match &e.kind {
        ExprKind::Number(text) => text
            .parse::<i64>()
            .map_err(|_| DslError {
                kind: DslErrorKind::IntegerOverflow,
                span: e.span,
            }),
        ExprKind::Var => err(DslErrorKind::VariableInExponent, e.span),
        ExprKind::QSym => err(DslErrorKind::NonIntegerExponent, e.span),
        ExprKind::Param(name) => match bindings.get(name) {
            Some(BoundValue::Int(v)) => Ok(*v),
            Some(BoundValue::Elem(_)) => err(DslErrorKind::NonIntegerExponent, e.span),
            None => err(DslErrorKind::UnboundName(name.clone()), e.span),
        },
        ExprKind::Neg(inner) => int_eval(inner, bindings)?
            .checked_neg()
            .ok_or(DslError {
                kind: DslErrorKind::IntegerOverflow,
                span: e.span,
            }),
        ExprKind::Bin(op, lhs, rhs) => {
            let a = int_eval(lhs, bindings)?;
            let b = int_eval(rhs, bindings)?;
            let overflow = DslError {
                kind: DslErrorKind::IntegerOverflow,
                span: e.span,
            };
            match op {
                BinOp::Add => a.checked_add(b).ok_or(overflow),
                BinOp::Sub => a.checked_sub(b).ok_or(overflow),
                BinOp::Mul => a.checked_mul(b).ok_or(overflow),
                BinOp::Div => {
                    if b == 0 {
                        err(DslErrorKind::DivisionByZero, rhs.span)
                    } else if a % b != 0 {
                        err(DslErrorKind::NonIntegerExponent, e.span)
                    } else {
                        Ok(a / b)
                    }
                }
                BinOp::Pow => {
                    if b < 0 {
                        match a {
                            1 => Ok(1),
                            -1 => Ok(if b % 2 == 0 { 1 } else { -1 }),
                            _ => err(DslErrorKind::NonIntegerExponent, e.span),
                        }
                    } else {
                        let exp = u32::try_from(b).map_err(|_| overflow.clone())?;
                        a.checked_pow(exp).ok_or(overflow)
                    }
                }
            }
        }
    }
}

/// Lowers an expression to a normalized rational function in x over the
/// field K. `q` supplies the value of the symbol q, if the field has one.
pub fn lower<K: Field>(
    e: &Expr,
    bindings: &Bindings<K>,
    q: Option<&K>,
) -> Result<RatFun<K>, DslError> {
    match &e.kind {
        ExprKind::Number(text) => Ok(RatFun::constant(fold_digits(text))),
        ExprKind::Var => Ok(RatFun::x()),
        ExprKind::QSym => match q {
            Some(v) => Ok(RatFun::constant(v.clone())),
            None => err(DslErrorKind::QUnavailable, e.span),
        },
        ExprKind::Param(name) => match bindings.get(name) {
            Some(BoundValue::Int(v)) => Ok(RatFun::from_i64(*v)),
            Some(BoundValue::Elem(v)) => Ok(RatFun::constant(v.clone())),
            None => err(DslErrorKind::UnboundName(name.clone()), e.span),
        },
        ExprKind::Neg(inner) => Ok(lower(inner, bindings, q)?.neg()),
        ExprKind::Bin(BinOp::Pow, base, exp) => {
            let k = int_eval(exp, bindings)?;
            let b = lower(base, bindings, q)?;
            if k < 0 && b.is_zero() {
                return err(DslErrorKind::DivisionByZero, e.span);
            }
            Ok(b.pow(k))
        }
        ExprKind::Bin(op, lhs, rhs) => {
            let a = lower(lhs, bindings, q)?;
            let b = lower(rhs, bindings, q)?;
            match op {
                BinOp::Add => Ok(a.add(&b)),
                BinOp::Sub => Ok(a.sub(&b)),
                BinOp::Mul => Ok(a.mul(&b)),
                BinOp::Div => a
                    .checked_div(&b)
                    .ok_or(DslError {
                        kind: DslErrorKind::DivisionByZero,
                        span: rhs.span,
                    }),
                BinOp::Pow => unreachable!("handled above"),
            }
        }
    }
}

/// Tokenize + parse + lower in one step.
pub fn lower_source<K: Field>(
    source: &str,
    bindings: &Bindings<K>,
    q: Option<&K>,
) -> Result<RatFun<K>, DslError> {
    lower(&parse_source(source)?, bindings, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Poly, QExt, Rat};

    type R = RatFun<Rat>;

    fn none() -> Bindings<Rat> {
        Bindings::new()
    }

    #[test]
    fn tokenize_examples() {
        let ts = tokenize("x^2+1").unwrap();
        let kinds: Vec<TokenKind> = ts.iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            vec![
                TokenKind::Ident,
                TokenKind::Caret,
                TokenKind::Number,
                TokenKind::Plus,
                TokenKind::Number
            ]
        );
        assert_eq!(ts[0].text, "x");
        assert_eq!(ts[0].span, Span { start: 0, end: 1 });

        let ts = tokenize("(q-1)^2*x").unwrap();
        assert_eq!(ts.len(), 9);
    }

    #[test]
    fn tokenize_rejects_dots() {
        let e = tokenize("3..5").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::IllegalChar('.'));
        assert_eq!(e.span.start, 1);
    }

    #[test]
    fn spans_cover_non_whitespace() {
        let src = "  12 + ab*3 ";
        let ts = tokenize(src).unwrap();
        let mut covered = vec![false; src.len()];
        for t in &ts {
            for flag in covered.iter_mut().take(t.span.end).skip(t.span.start) {
                assert!(!*flag, "overlapping spans");
                *flag = true;
            }
        }
        for (i, c) in src.char_indices() {
            assert_eq!(covered[i], !c.is_whitespace(), "byte {i}");
        }
    }

    #[test]
    fn unary_minus_binds_looser_than_caret() {
        // -x^2 is -(x^2), not (-x)^2
        let v = lower_source("-x^2", &none(), None).unwrap();
        assert_eq!(v, R::from_poly(Poly::from_i64_coeffs(&[0, 0, -1])));
    }

    #[test]
    fn division_is_left_associative() {
        let mut b = Bindings::new();
        b.bind_int("a", 12).bind_int("b", 2).bind_int("c", 3);
        let v = lower_source("a/b/c", &b, None).unwrap();
        assert_eq!(v, R::constant(Rat::from_int(2)));
    }

    #[test]
    fn exponent_expression_folds() {
        let mut b = Bindings::new();
        b.bind_int("n", 3);
        let q = QExt::q();
        let mut bq: Bindings<QExt> = Bindings::new();
        bq.bind_int("n", 3);
        let v = lower_source("q^(n-1)", &bq, Some(&q)).unwrap();
        assert_eq!(v, RatFun::constant(QExt::q_pow(2)));
        let v = lower_source("q^(2-n)", &bq, Some(&q)).unwrap();
        assert_eq!(v, RatFun::constant(QExt::q_pow(-1)));
        // used by the bindings-free integer path too
        assert_eq!(
            lower_source("2^(n+1)", &b, None).unwrap(),
            R::constant(Rat::from_int(16))
        );
    }

    #[test]
    fn euler_lambda_lowering() {
        let mut b = Bindings::new();
        b.bind_int("a", 3);
        let v = lower_source("2*(a-1)/(1+x)", &b, None).unwrap();
        assert_eq!(
            v,
            R::new(Poly::from_i64_coeffs(&[4]), Poly::from_i64_coeffs(&[1, 1]))
        );
    }

    #[test]
    fn q_laguerre_s0_lowering_matches_constructor() {
        let mut b: Bindings<QExt> = Bindings::new();
        b.bind_int("n", 5);
        let q = QExt::q();
        let v = lower_source("(q^n-1)/((q-1)^2*x*(1+q*x))", &b, Some(&q)).unwrap();
        let eq = crate::presets::q_laguerre_equation(&q, 1, 5);
        assert_eq!(v, eq.s0);
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let e = lower_source("1/(x-x)", &none(), None).unwrap_err();
        assert_eq!(e.kind, DslErrorKind::DivisionByZero);
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            lower_source("y+1", &none(), None).unwrap_err().kind,
            DslErrorKind::UnboundName(_)
        ));
        assert_eq!(
            lower_source("q+1", &none(), None).unwrap_err().kind,
            DslErrorKind::QUnavailable
        );
        assert_eq!(
            lower_source("2^x", &none(), None).unwrap_err().kind,
            DslErrorKind::VariableInExponent
        );
        assert_eq!(
            lower_source("2^(1/2)", &none(), None).unwrap_err().kind,
            DslErrorKind::NonIntegerExponent
        );
        let e = parse_source("(1+x").unwrap_err();
        assert!(matches!(e.kind, DslErrorKind::UnexpectedEnd { .. }));
        let e = parse_source("1+*2").unwrap_err();
        assert!(matches!(e.kind, DslErrorKind::UnexpectedToken { .. }));
        assert_eq!(e.span, Span { start: 2, end: 3 });
    }

    #[test]
    fn display_reparses_to_equal_value() {
        let mut b = Bindings::new();
        b.bind_int("a", 4);
        for src in [
            "2*(a-1)/(1+x)",
            "a*(1-a)/(x*(1+x))",
            "(x^2-1)/(x-1)",
            "1/2*x - 7",
        ] {
            let v = lower_source(src, &b, None).unwrap();
            let reparsed = lower_source(&v.to_string(), &none(), None).unwrap();
            assert_eq!(v, reparsed, "round-trip failed for `{src}`");
        }
    }

    #[test]
    fn numeric_q_binding() {
        let q = Rat::ratio(1, 2);
        let v = lower_source("q^2*x", &Bindings::new(), Some(&q)).unwrap();
        assert_eq!(
            v,
            R::from_poly(Poly::from_coeffs(vec![Rat::zero(), Rat::ratio(1, 4)]))
        );
    }
}
