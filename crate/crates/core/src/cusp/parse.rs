//! Text syntax for moduli.
//!
//! A modulus is an arithmetic expression in rationals, `sqrt(N)` and `i`
//! using `+ - * /` and parentheses, e.g. `-1/2+1/2*sqrt(3)*i`, `7+i`,
//! `(1+sqrt(2))*i`. `sqrt(12)` is read as `2*sqrt(3)`. All surds must lie in
//! one quadratic field. A decimal literal anywhere switches the whole value
//! to the floating path.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::modulus::{ExactModulus, FloatModulus, Modulus, DEFAULT_EPSILON};
use super::quadratic::QuadraticReal;
use crate::error::{Error, Result};

/// Parses a modulus. With `epsilon` set the result is always on the float
/// path with that tolerance.
pub fn parse_modulus(text: &str, epsilon: Option<f64>) -> Result<Modulus> {
    let fail = |reason: String| Error::Modulus { input: text.to_string(), reason };
    let tokens = lex(text).map_err(fail)?;
    let decimal = tokens.iter().any(|t| matches!(t, Token::Num(s) if s.contains('.')));
    if decimal {
        let (re, im) = Parser::<f64>::run(&tokens).map_err(fail)?;
        return Ok(Modulus::Float(FloatModulus::new(re, im, epsilon.unwrap_or(DEFAULT_EPSILON))?));
    }
    let (re, im) = Parser::<QuadraticReal>::run(&tokens).map_err(fail)?;
    let z = Modulus::Exact(ExactModulus::new(re, im).map_err(|e| match e {
        Error::Modulus { reason, .. } => fail(reason),
        Error::FieldMismatch(a, b) => fail(format!("mixes sqrt({a}) and sqrt({b})")),
        other => other,
    })?);
    match epsilon {
        Some(eps) => z.to_float(eps),
        None => Ok(z),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Sqrt,
    I,
    Op(char),
    Open,
    Close,
}

fn lex(text: &str) -> std::result::Result<Vec<Token>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' => k += 1,
            '0'..='9' | '.' => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                    k += 1;
                }
                let s: String = chars[start..k].iter().collect();
                if s.matches('.').count() > 1 || s == "." {
                    return Err(format!("bad number {s:?}"));
                }
                out.push(Token::Num(s));
            }
            '+' | '-' | '*' | '/' => {
                out.push(Token::Op(c));
                k += 1;
            }
            '(' => {
                out.push(Token::Open);
                k += 1;
            }
            ')' => {
                out.push(Token::Close);
                k += 1;
            }
            'i' => {
                out.push(Token::I);
                k += 1;
            }
            's' if chars[k..].starts_with(&['s', 'q', 'r', 't']) => {
                out.push(Token::Sqrt);
                k += 4;
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    if out.is_empty() {
        return Err("empty modulus".into());
    }
    Ok(out)
}

type Res<T> = std::result::Result<T, String>;

trait Scalar: Clone + Sized {
    fn number(literal: &str) -> Res<Self>;
    fn sqrt(literal: &str) -> Res<Self>;
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Res<Self>;
    fn sub(&self, o: &Self) -> Res<Self>;
    fn mul(&self, o: &Self) -> Res<Self>;
    fn div(&self, o: &Self) -> Res<Self>;
}

impl Scalar for QuadraticReal {
    fn number(literal: &str) -> Res<Self> {
        let n: BigInt = literal.parse().map_err(|_| format!("bad integer {literal:?}"))?;
        Ok(QuadraticReal::rational(BigRational::from_integer(n)))
    }
    fn sqrt(literal: &str) -> Res<Self> {
        let n: u64 = literal
            .parse()
            .map_err(|_| format!("sqrt needs a non-negative integer, got {literal:?}"))?;
        Ok(QuadraticReal::surd(n))
    }
    fn zero() -> Self {
        QuadraticReal::zero()
    }
    fn one() -> Self {
        QuadraticReal::one()
    }
    fn add(&self, o: &Self) -> Res<Self> {
        self.checked_add(o).map_err(|e| e.to_string())
    }
    fn sub(&self, o: &Self) -> Res<Self> {
        self.checked_sub(o).map_err(|e| e.to_string())
    }
    fn mul(&self, o: &Self) -> Res<Self> {
        self.checked_mul(o).map_err(|e| e.to_string())
    }
    fn div(&self, o: &Self) -> Res<Self> {
        self.checked_div(o).map_err(|_| "division by zero".to_string())
    }
}

impl Scalar for f64 {
    fn number(literal: &str) -> Res<Self> {
        literal.parse().map_err(|_| format!("bad number {literal:?}"))
    }
    fn sqrt(literal: &str) -> Res<Self> {
        let x: f64 = Self::number(literal)?;
        if x < 0.0 {
            return Err(format!("sqrt of negative {literal}"));
        }
        Ok(x.sqrt())
    }
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Res<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Res<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Res<Self> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Res<Self> {
        if *o == 0.0 {
            return Err("division by zero".into());
        }
        Ok(self / o)
    }
}

#[derive(Clone)]
struct Complex<S> {
    re: S,
    im: S,
}

impl<S: Scalar> Complex<S> {
    fn add(&self, o: &Self) -> Res<Self> {
        Ok(Complex { re: self.re.add(&o.re)?, im: self.im.add(&o.im)? })
    }
    fn sub(&self, o: &Self) -> Res<Self> {
        Ok(Complex { re: self.re.sub(&o.re)?, im: self.im.sub(&o.im)? })
    }
    fn mul(&self, o: &Self) -> Res<Self> {
        Ok(Complex {
            re: self.re.mul(&o.re)?.sub(&self.im.mul(&o.im)?)?,
            im: self.re.mul(&o.im)?.add(&self.im.mul(&o.re)?)?,
        })
    }
    fn div(&self, o: &Self) -> Res<Self> {
        let den = o.re.mul(&o.re)?.add(&o.im.mul(&o.im)?)?;
        let re = self.re.mul(&o.re)?.add(&self.im.mul(&o.im)?)?;
        let im = self.im.mul(&o.re)?.sub(&self.re.mul(&o.im)?)?;
        Ok(Complex { re: re.div(&den)?, im: im.div(&den)? })
    }
}

struct Parser<'a, S> {
    tokens: &'a [Token],
    at: usize,
    _scalar: std::marker::PhantomData<S>,
}

impl<'a, S: Scalar> Parser<'a, S> {
    fn run(tokens: &'a [Token]) -> Res<(S, S)> {
        let mut p = Parser { tokens, at: 0, _scalar: std::marker::PhantomData };
        let z = p.expr()?;
        if p.at != tokens.len() {
            return Err(format!("unexpected {:?} after the expression", tokens[p.at]));
        }
        Ok((z.re, z.im))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn expr(&mut self) -> Res<Complex<S>> {
        let mut acc = self.term()?;
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc.add(&rhs)? } else { acc.sub(&rhs)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Res<Complex<S>> {
        let mut acc = self.unary()?;
        while let Some(Token::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.at += 1;
            let rhs = self.unary()?;
            acc = if op == '*' { acc.mul(&rhs)? } else { acc.div(&rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Res<Complex<S>> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.at += 1;
                let zero = Complex { re: S::zero(), im: S::zero() };
                zero.sub(&self.unary()?)
            }
            Some(Token::Op('+')) => {
                self.at += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Res<Complex<S>> {
        let token = self.peek().cloned().ok_or("expression ends early")?;
        self.at += 1;
        let real = |re: S| Complex { re, im: S::zero() };
        match token {
            Token::Num(s) => Ok(real(S::number(&s)?)),
            Token::I => Ok(Complex { re: S::zero(), im: S::one() }),
            Token::Sqrt => {
                let arg = match (self.tokens.get(self.at), self.tokens.get(self.at + 1), self.tokens.get(self.at + 2)) {
                    (Some(Token::Open), Some(Token::Num(n)), Some(Token::Close)) => n.clone(),
                    _ => return Err("sqrt must be written sqrt(N) with a literal N".into()),
                };
                self.at += 3;
                Ok(real(S::sqrt(&arg)?))
            }
            Token::Open => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err("missing `)`".into());
                }
                self.at += 1;
                Ok(inner)
            }
            other => Err(format!("unexpected {other:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(text: &str) -> String {
        parse_modulus(text, None).unwrap().to_string()
    }

    #[test]
    fn canonical_inputs() {
        assert_eq!(exact("-1/2+1/2*sqrt(3)*i"), "-1/2+1/2*sqrt(3)*i");
        assert_eq!(exact("7+i"), "7+i");
        assert_eq!(exact("5/2+2*i"), "5/2+2*i");
        assert_eq!(exact("i"), "i");
        assert_eq!(exact("2*i"), "2*i");
        assert_eq!(exact("1/5 + 3/2*i"), "1/5+3/2*i");
        assert_eq!(exact("sqrt(12)*i"), "2*sqrt(3)*i");
        assert_eq!(exact("(1+sqrt(2))*i"), "(1+sqrt(2))*i");
        assert_eq!(exact("1/2+1/2*sqrt(5)+i"), "1/2+1/2*sqrt(5)+i");
    }

    #[test]
    fn printed_form_round_trips() {
        for s in ["-1/2+1/2*sqrt(3)*i", "(1+sqrt(2))*i", "3-sqrt(7)+(2-1/3*sqrt(7))*i", "-sqrt(2)+sqrt(2)*i"] {
            assert_eq!(exact(&exact(s)), exact(s), "{s}");
        }
    }

    #[test]
    fn decimals_and_epsilon_select_float() {
        assert!(matches!(parse_modulus("0.5+0.866*i", None).unwrap(), Modulus::Float(f) if f.epsilon == DEFAULT_EPSILON));
        assert!(matches!(parse_modulus("i", Some(1e-6)).unwrap(), Modulus::Float(f) if f.epsilon == 1e-6));
    }

    #[test]
    fn errors() {
        for bad in ["", "1+", "-i", "sqrt(2)+sqrt(3)*i", "1/0+i", "2+3", "x", "sqrt(3", "(1+i"] {
            assert!(parse_modulus(bad, None).is_err(), "{bad}");
        }
    }
}
