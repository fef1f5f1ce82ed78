//! Sparse Laurent polynomials with exact integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub type Coeff = i128;

fn checked_add(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("polynomial coefficient overflow")
}

fn checked_mul(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("polynomial coefficient overflow")
}

/// Integer Laurent polynomial in one variable. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, Coeff>,
    var: char,
}

impl LaurentPolynomial {
    pub fn zero(var: char) -> Self {
        Self { terms: BTreeMap::new(), var }
    }

    pub fn one(var: char) -> Self {
        Self::monomial(var, 1, 0)
    }

    pub fn constant(var: char, c: Coeff) -> Self {
        Self::monomial(var, c, 0)
    }

    pub fn monomial(var: char, coeff: Coeff, exp: i32) -> Self {
        let mut p = Self::zero(var);
        if coeff != 0 {
            p.terms.insert(exp, coeff);
        }
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(var: char, terms: impl IntoIterator<Item = (i32, Coeff)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, Coeff)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: i32) -> Coeff {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Coeff {
        self.terms.values().next_back().copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exp: i32, coeff: Coeff) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry = checked_add(*entry, coeff);
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn scale(&self, c: Coeff) -> Self {
        Self::from_terms(self.var, self.terms().map(|(e, k)| (e, checked_mul(k, c))))
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms().map(|(e, c)| (e + k, c)).collect(), var: self.var }
    }

    /// Substitutes `x -> x^k` (k may be negative).
    pub fn substitute_power(&self, k: i32) -> Self {
        Self::from_terms(self.var, self.terms().map(|(e, c)| (e * k, c)))
    }

    /// `p(x) -> p(1/x)`.
    pub fn invert_variable(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at an integer point; negative exponents require `x = ±1`.
    pub fn eval_unit(&self, x: Coeff) -> Coeff {
        assert!(x == 1 || x == -1, "eval_unit needs x = ±1");
        self.terms().fold(0, |acc, (e, c)| {
            let v = if x == 1 || e.rem_euclid(2) == 0 { c } else { -c };
            checked_add(acc, v)
        })
    }

    /// Exact division. Returns `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero(self.var);
        let dmax = divisor.max_exp().unwrap();
        let dmin = divisor.min_exp().unwrap();
        let dlead = divisor.leading_coeff();
        while !rem.is_zero() {
            let rmax = rem.max_exp().unwrap();
            let rmin = rem.min_exp().unwrap();
            if rmax - rmin < dmax - dmin {
                return None;
            }
            let rlead = rem.leading_coeff();
            if rlead % dlead != 0 {
                return None;
            }
            let term = Self::monomial(self.var, rlead / dlead, rmax - dmax);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Canonical representative up to multiplication by `±x^k`:
    /// lowest exponent 0 and positive leading coefficient.
    pub fn unit_reduced(&self) -> Self {
        match self.min_exp() {
            None => self.clone(),
            Some(m) => {
                let p = self.shift(-m);
                if p.leading_coeff() < 0 {
                    -p
                } else {
                    p
                }
            }
        }
    }

    /// Symmetric representative of an Alexander-type polynomial: `p(x) = p(1/x)`
    /// with `p(1) > 0`. Returns `None` when no unit multiple is symmetric.
    pub fn symmetrized(&self) -> Option<Self> {
        let (lo, hi) = (self.min_exp()?, self.max_exp()?);
        if (hi - lo) % 2 != 0 {
            return None;
        }
        let mut p = self.shift(-(lo + hi) / 2);
        if p.eval_unit(1) < 0 {
            p = -p;
        }
        if p != p.invert_variable() {
            return None;
        }
        Some(p)
    }

    pub fn to_json_map(&self) -> BTreeMap<String, Coeff> {
        self.terms().map(|(e, c)| (e.to_string(), c)).collect()
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mag, e) {
                (_, 0) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "{}", self.var)?,
                (1, _) => write!(f, "{}^{}", self.var, e)?,
                (_, 1) => write!(f, "{mag}{}", self.var)?,
                _ => write!(f, "{mag}{}^{}", self.var, e)?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.var);
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, checked_mul(c1, c2));
            }
        }
        out
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    SymmetricAlexander,
    UnitReduced,
    Exact,
}

/// A polynomial together with the normalization it has been brought into.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalizedPolynomial {
    pub poly: LaurentPolynomial,
    pub normalization: Normalization,
}

impl NormalizedPolynomial {
    pub fn exact(poly: LaurentPolynomial) -> Self {
        Self { poly, normalization: Normalization::Exact }
    }

    pub fn unit_reduced(poly: &LaurentPolynomial) -> Self {
        Self { poly: poly.unit_reduced(), normalization: Normalization::UnitReduced }
    }
}

impl fmt::Display for NormalizedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}
