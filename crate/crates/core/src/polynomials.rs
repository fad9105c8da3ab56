//! Exact sparse Laurent polynomials over the integers.
//!
//! [`LaurentPoly`] is univariate with half-integer exponents; exponents are
//! stored doubled so that `t^(5/2)` is key `5`. The variable tag keeps `t`,
//! `q = t^(1/2)` and the bracket variable `A` from being mixed silently.
//! [`BiLaurent`] has integer exponents in two variables `x`, `y`.
//! [`GaussianInt`] holds exact evaluations at `q = -i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    T,
    Q,
    A,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::T => 't',
            Var::Q => 'q',
            Var::A => 'A',
        }
    }

    fn from_symbol(c: char) -> Option<Var> {
        match c {
            't' => Some(Var::T),
            'q' => Some(Var::Q),
            'A' | 'a' => Some(Var::A),
            _ => None,
        }
    }
}

/// Univariate Laurent polynomial with half-integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Var,
    /// doubled exponent -> nonzero coefficient
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, terms: BTreeMap::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 1, 0)
    }

    /// `c * var^exp` with an integer exponent.
    pub fn monomial(var: Var, c: impl Into<BigInt>, exp: i64) -> Self {
        Self::half_monomial(var, c, 2 * exp)
    }

    /// `c * var^(doubled/2)`.
    pub fn half_monomial(var: Var, c: impl Into<BigInt>, doubled: i64) -> Self {
        let mut p = Self::zero(var);
        p.add_term(doubled, c.into());
        p
    }

    /// Builds from `(integer exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I, C>(var: Var, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(2 * e, c.into());
        }
        p
    }

    /// Builds from `(doubled exponent, coefficient)` pairs.
    pub fn from_half_terms<I, C>(var: Var, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterates `(doubled exponent, coefficient)` in ascending exponent order.
    pub fn half_terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `var^(doubled/2)`.
    pub fn coeff_half(&self, doubled: i64) -> BigInt {
        self.terms.get(&doubled).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeff_half(2 * exp)
    }

    pub fn min_half_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_half_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, doubled: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(doubled).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&doubled);
        }
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.var.symbol(), other.var.symbol()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let mut out = Self::zero(self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let mut out = Self::zero(self.var);
        for (e, c) in &self.terms {
            out.add_term(*e, c * &k);
        }
        out
    }

    /// Multiplies by `var^(doubled/2)`.
    pub fn shift_half(&self, doubled: i64) -> Self {
        LaurentPoly { var: self.var, terms: self.terms.iter().map(|(e, c)| (e + doubled, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `var -> new_var^(num/den)`; fails if an exponent becomes non half-integral.
    pub fn substitute_power(&self, new_var: Var, num: i64, den: i64) -> Result<Self> {
        let mut out = Self::zero(new_var);
        for (e, c) in &self.terms {
            let scaled = e * num;
            if scaled % den != 0 {
                return Err(Error::BadParameters(format!(
                    "exponent {}/2 is not divisible under substitution {num}/{den}",
                    e
                )));
            }
            out.add_term(scaled / den, c.clone());
        }
        Ok(out)
    }

    /// Replaces the variable by its inverse.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { var: self.var, terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Rewrites a polynomial in `q = t^(1/2)` in terms of `t`.
    pub fn q_to_t(&self) -> Result<Self> {
        match self.var {
            Var::Q => self.substitute_power(Var::T, 1, 2),
            v => Err(Error::VariableMismatch('q', v.symbol())),
        }
    }

    /// Rewrites a polynomial in `t` in terms of `q = t^(1/2)`.
    pub fn t_to_q(&self) -> Result<Self> {
        match self.var {
            Var::T => self.substitute_power(Var::Q, 2, 1),
            v => Err(Error::VariableMismatch('t', v.symbol())),
        }
    }

    /// Exact evaluation at `q = -i` (so `q^-1 = i`).
    pub fn eval_gaussian(&self) -> Result<GaussianInt> {
        if self.var != Var::Q {
            return Err(Error::VariableMismatch('q', self.var.symbol()));
        }
        let mut acc = GaussianInt::zero();
        for (e, c) in &self.terms {
            if e % 2 != 0 {
                return Err(Error::BadParameters("half-integer power of q".into()));
            }
            let k = (e / 2).rem_euclid(4);
            // (-i)^k
            let unit = match k {
                0 => GaussianInt::new(1, 0),
                1 => GaussianInt::new(0, -1),
                2 => GaussianInt::new(-1, 0),
                _ => GaussianInt::new(0, 1),
            };
            acc = acc + unit.scale(c);
        }
        Ok(acc)
    }

    /// Sum of coefficients (value at var = 1).
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if self.var != other.var || other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.var));
        }
        let (&lead_e, lead_c) = other.terms.iter().next_back()?;
        let low_other = *other.terms.keys().next()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.var);
        while let Some((&e, c)) = rem.terms.iter().next_back() {
            let low_rem = *rem.terms.keys().next()?;
            if e - lead_e < low_rem - low_other {
                return None;
            }
            let (q, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            let step = Self::half_monomial(self.var, q, e - lead_e);
            rem = &rem - &(&step * other);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Parses the rendering produced by `Display`, forcing the variable tag.
    pub fn parse_with(var: Var, s: &str) -> Result<Self> {
        let p: LaurentPoly = parse_univariate(s, Some(var))?;
        Ok(p)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { var: self.var, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&$ty> for &$ty {
            type Output = $ty;
            /// Panics when the variable tags differ; use the `checked_*` form to handle that.
            fn $method(self, rhs: &$ty) -> $ty {
                self.$checked(rhs).expect("polynomial variable mismatch")
            }
        }
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(LaurentPoly, Add, add, checked_add);
forward_binop!(LaurentPoly, Sub, sub, checked_sub);
forward_binop!(LaurentPoly, Mul, mul, checked_mul);

fn fmt_half_exponent(doubled: i64) -> String {
    if doubled % 2 == 0 {
        format!("{}", doubled / 2)
    } else {
        format!("({doubled}/2)")
    }
}

fn write_signed_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (BigInt, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.symbol();
        write_signed_terms(
            f,
            self.terms.iter().map(|(e, c)| {
                let mono = match *e {
                    0 => String::new(),
                    2 => v.to_string(),
                    d => format!("{v}^{}", fmt_half_exponent(d)),
                };
                (c.clone(), mono)
            }),
        )
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    /// Infers the variable from the first letter; constants default to `t`.
    fn from_str(s: &str) -> Result<Self> {
        parse_univariate(s, None)
    }
}

/// Polynomial in two variables `x`, `y` with integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, x_exp: i64, y_exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term((x_exp, y_exp), c.into());
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Embeds a univariate polynomial as a polynomial in `y` (integer exponents required).
    pub fn from_univariate_y(p: &LaurentPoly) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in p.half_terms() {
            if e % 2 != 0 {
                return Err(Error::BadParameters("half-integer exponent".into()));
            }
            out.add_term((0, e / 2), c.clone());
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, x_exp: i64, y_exp: i64) -> BigInt {
        self.terms.get(&(x_exp, y_exp)).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: (i64, i64), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * &k);
        }
        out
    }

    pub fn shift(&self, dx: i64, dy: i64) -> Self {
        BiLaurent { terms: self.terms.iter().map(|((a, b), c)| ((a + dx, b + dy), c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Minimal x and y exponents over all terms.
    pub fn min_degrees(&self) -> Option<(i64, i64)> {
        let mx = self.terms.keys().map(|e| e.0).min()?;
        let my = self.terms.keys().map(|e| e.1).min()?;
        Some((mx, my))
    }

    /// Degree in `x` (max exponent), if nonzero.
    pub fn x_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.0).max()
    }

    /// Coefficient of `x^k` as a polynomial in `y`.
    pub fn x_coefficient(&self, k: i64) -> LaurentPoly {
        LaurentPoly::from_terms(Var::T, self.terms.iter().filter(|(e, _)| e.0 == k).map(|(e, c)| (e.1, c.clone())))
    }

    /// Canonical representative modulo units `±x^a y^b`: minimal x- and
    /// y-degrees shifted to zero, sign chosen so that the term with the
    /// lexicographically greatest `(x, y)` exponent is positive.
    pub fn unit_normalized(&self) -> Self {
        let Some((mx, my)) = self.min_degrees() else {
            return Self::zero();
        };
        let shifted = self.shift(-mx, -my);
        match shifted.terms.iter().next_back() {
            Some((_, c)) if c.is_negative() => -&shifted,
            _ => shifted,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        parse_bivariate(s)
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        -&self
    }
}

impl Add<&BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: &BiLaurent) -> BiLaurent {
        self + &(-rhs)
    }
}

impl Mul<&BiLaurent> for &BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Add for BiLaurent {
    type Output = BiLaurent;
    fn add(self, rhs: BiLaurent) -> BiLaurent {
        &self + &rhs
    }
}

impl Sub for BiLaurent {
    type Output = BiLaurent;
    fn sub(self, rhs: BiLaurent) -> BiLaurent {
        &self - &rhs
    }
}

impl Mul for BiLaurent {
    type Output = BiLaurent;
    fn mul(self, rhs: BiLaurent) -> BiLaurent {
        &self * &rhs
    }
}

fn fmt_var_power(v: char, e: i64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(v.to_string()),
        e => Some(format!("{v}^{e}")),
    }
}

impl fmt::Display for BiLaurent {
    /// Terms by descending x-degree, then descending y-degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(
            f,
            self.terms.iter().rev().map(|((a, b), c)| {
                let parts: Vec<String> =
                    [fmt_var_power('x', *a), fmt_var_power('y', *b)].into_iter().flatten().collect();
                (c.clone(), parts.join("*"))
            }),
        )
    }
}

impl FromStr for BiLaurent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_bivariate(s)
    }
}

/// Exact Gaussian integer `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GaussianInt { re: &self.re * k, im: &self.im * k }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn norm_sqr(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `|z|` when `z` lies on the real or imaginary axis.
    pub fn axis_abs(&self) -> Option<BigInt> {
        if self.im.is_zero() {
            Some(self.re.abs())
        } else if self.re.is_zero() {
            Some(self.im.abs())
        } else {
            None
        }
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_str = |im: &BigInt| -> String {
            if im.abs().is_one() {
                "i".to_string()
            } else {
                format!("{}i", im.abs())
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                write!(f, "{}{}", if self.im.is_negative() { "-" } else { "" }, im_str(&self.im))
            }
            (false, false) => {
                write!(f, "{} {} {}", self.re, if self.im.is_negative() { "-" } else { "+" }, im_str(&self.im))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// parsing

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { chars: s.chars().peekable() }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    /// `+`, `-` or the unicode minus sign.
    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.chars.next();
                Some(false)
            }
            Some('-') | Some('\u{2212}') => {
                self.chars.next();
                Some(true)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let mut s = String::new();
        while let Some(c) = self.chars.peek() {
            if c.is_ascii_digit() {
                s.push(*c);
                self.chars.next();
            } else {
                break;
            }
        }
        (!s.is_empty()).then_some(s)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.sign().unwrap_or(false);
        let d = self.digits().ok_or_else(|| Error::Parse("expected integer".into()))?;
        let v: i64 = d.parse().map_err(|_| Error::Parse(format!("bad integer {d}")))?;
        Ok(if neg { -v } else { v })
    }

    /// Exponent after `^`, returned doubled: `2`, `-3`, `(5/2)`, `(-1/2)`, `5/2`.
    fn half_exponent(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let n = self.signed_int()?;
        let doubled = if self.eat('/') {
            let d = self.signed_int()?;
            if d != 2 && d != 1 {
                return Err(Error::Parse(format!("denominator {d} not supported")));
            }
            if d == 1 {
                2 * n
            } else {
                n
            }
        } else {
            2 * n
        };
        if paren && !self.eat(')') {
            return Err(Error::Parse("unbalanced parenthesis".into()));
        }
        Ok(doubled)
    }
}

/// A parsed term: sign-applied coefficient and `(variable, doubled exponent)` factors.
type RawTerm = (BigInt, Vec<(char, i64)>);

fn parse_terms(s: &str) -> Result<Vec<RawTerm>> {
    let mut lx = Lexer::new(s);
    let mut out = Vec::new();
    let mut first = true;
    while lx.peek().is_some() {
        let neg = match lx.sign() {
            Some(n) => n,
            None if first => false,
            None => return Err(Error::Parse(format!("expected '+' or '-' in {s:?}"))),
        };
        first = false;
        let mut coeff = BigInt::one();
        let mut saw_coeff = false;
        if let Some(d) = lx.digits() {
            coeff = d.parse().map_err(|_| Error::Parse(format!("bad coefficient {d}")))?;
            saw_coeff = true;
        }
        let mut factors = Vec::new();
        loop {
            if saw_coeff || !factors.is_empty() {
                // factors after the first are separated by '*'
                if !lx.eat('*') {
                    break;
                }
            }
            match lx.peek() {
                Some(c) if c.is_ascii_alphabetic() => {
                    lx.bump();
                    let e = if lx.eat('^') { lx.half_exponent()? } else { 2 };
                    factors.push((c, e));
                }
                _ => return Err(Error::Parse(format!("expected variable in {s:?}"))),
            }
        }
        if !saw_coeff && factors.is_empty() {
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        out.push((if neg { -coeff } else { coeff }, factors));
    }
    if out.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    Ok(out)
}

fn parse_univariate(s: &str, var: Option<Var>) -> Result<LaurentPoly> {
    let terms = parse_terms(s)?;
    let mut found = var;
    let mut pairs = Vec::new();
    for (c, factors) in terms {
        let mut e = 0;
        for (sym, de) in factors {
            let v = Var::from_symbol(sym).ok_or_else(|| Error::Parse(format!("unknown variable {sym}")))?;
            match found {
                None => found = Some(v),
                Some(f) if f != v => return Err(Error::VariableMismatch(f.symbol(), v.symbol())),
                _ => {}
            }
            e += de;
        }
        pairs.push((e, c));
    }
    Ok(LaurentPoly::from_half_terms(found.unwrap_or(Var::T), pairs))
}

fn parse_bivariate(s: &str) -> Result<BiLaurent> {
    let mut out = BiLaurent::zero();
    for (c, factors) in parse_terms(s)? {
        let (mut a, mut b) = (0, 0);
        for (sym, de) in factors {
            if de % 2 != 0 {
                return Err(Error::Parse("half-integer exponent in two-variable polynomial".into()));
            }
            match sym {
                'x' => a += de / 2,
                'y' => b += de / 2,
                other => return Err(Error::Parse(format!("unknown variable {other}"))),
            }
        }
        out.add_term((a, b), c);
    }
    Ok(out)
}
