//! Exact integer and polynomial arithmetic.
//!
//! Everything here is arbitrary precision: the extended weight enumerator is
//! evaluated at `T = q^r` with `r` up to `K`, which for `K = 10, q = 3` puts
//! individual coefficients well past 128 bits.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

pub type ExactInt = BigInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("field size q = {0} is not supported (need q >= 2)")]
    BadFieldSize(u64),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
}

/// `n choose k`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn check_q(q: u64) -> Result<(), AlgebraError> {
    if q < 2 {
        Err(AlgebraError::BadFieldSize(q))
    } else {
        Ok(())
    }
}

/// Number of `j`-dimensional subspaces of `F_q^r`.
///
/// Built as the telescoping product `prod (q^{r-i} - 1) / (q^{i+1} - 1)`;
/// after `m` factors the running value is exactly `[r, m]_q`, so every
/// division is exact.
pub fn gaussian_binomial(r: u32, j: u32, q: u64) -> Result<ExactInt, AlgebraError> {
    check_q(q)?;
    if j > r {
        return Ok(BigInt::zero());
    }
    let qb = BigInt::from(q);
    let mut acc = BigInt::one();
    for i in 0..j {
        let num = qb.pow(r - i) - 1u32;
        let den = qb.pow(i + 1) - 1u32;
        acc *= num;
        debug_assert!((&acc % &den).is_zero());
        acc /= den;
    }
    Ok(acc)
}

/// `|GL_r(q)| = prod_{i<r} (q^r - q^i)`.
pub fn gl_order(r: u32, q: u64) -> Result<ExactInt, AlgebraError> {
    check_q(q)?;
    let qb = BigInt::from(q);
    let qr = qb.pow(r);
    Ok((0..r).fold(BigInt::one(), |acc, i| acc * (&qr - qb.pow(i))))
}

/// Polynomial variable tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    T,
    Z,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T => write!(f, "T"),
            Var::Z => write!(f, "Z"),
        }
    }
}

/// Sparse univariate polynomial with integer coefficients.
///
/// Zero coefficients are never stored, so `==` is equality of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    var: Var,
    terms: BTreeMap<u32, ExactInt>,
}

impl UniPoly {
    pub fn zero(var: Var) -> Self {
        Self {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, BigInt::one())
    }

    pub fn constant(var: Var, c: impl Into<ExactInt>) -> Self {
        Self::monomial(var, 0, c)
    }

    pub fn monomial(var: Var, degree: u32, c: impl Into<ExactInt>) -> Self {
        let mut p = Self::zero(var);
        p.add_term(degree, c.into());
        p
    }

    /// The polynomial `x` in the given variable.
    pub fn x(var: Var) -> Self {
        Self::monomial(var, 1, 1)
    }

    /// Build from dense coefficients, lowest degree first.
    pub fn from_coeffs<I, C>(var: Var, coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<ExactInt>,
    {
        let mut p = Self::zero(var);
        for (d, c) in coeffs.into_iter().enumerate() {
            p.add_term(d as u32, c.into());
        }
        p
    }

    pub fn from_terms<I, C>(var: Var, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<ExactInt>,
    {
        let mut p = Self::zero(var);
        for (d, c) in terms {
            p.add_term(d, c.into());
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, degree: u32) -> ExactInt {
        self.terms.get(&degree).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &ExactInt)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn add_term(&mut self, degree: u32, c: ExactInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(degree).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&degree);
        }
    }

    pub fn scale(&self, c: &ExactInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        Self {
            var: self.var,
            terms: self.terms.iter().map(|(d, v)| (*d, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &ExactInt) -> ExactInt {
        // Horner over the sparse representation.
        let mut acc = BigInt::zero();
        let mut prev: Option<u32> = None;
        for (d, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc *= x.pow(p - d);
            }
            acc += c;
            prev = Some(*d);
        }
        if let Some(p) = prev {
            acc *= x.pow(p);
        }
        acc
    }

    /// Divide by `(x - root)`, failing unless the remainder is zero.
    pub fn div_linear_exact(&self, root: &ExactInt) -> Result<Self, AlgebraError> {
        let Some(deg) = self.degree() else {
            return Ok(self.clone());
        };
        let mut quotient = vec![BigInt::zero(); deg as usize];
        let mut carry = BigInt::zero();
        for d in (0..=deg).rev() {
            let c = self.coeff(d) + &carry;
            if d == 0 {
                if !c.is_zero() {
                    return Err(AlgebraError::InexactDivision(format!(
                        "remainder {c} dividing by ({} - {root})",
                        self.var
                    )));
                }
            } else {
                carry = &c * root;
                quotient[(d - 1) as usize] = c;
            }
        }
        Ok(Self::from_coeffs(self.var, quotient))
    }

    /// Divide every coefficient by `d`, failing on any remainder.
    pub fn div_scalar_exact(&self, d: &ExactInt) -> Result<Self, AlgebraError> {
        let mut terms = BTreeMap::new();
        for (deg, c) in &self.terms {
            if !(c % d).is_zero() {
                return Err(AlgebraError::InexactDivision(format!(
                    "coefficient {c} of {}^{deg} by {d}",
                    self.var
                )));
            }
            terms.insert(*deg, c / d);
        }
        Ok(Self {
            var: self.var,
            terms,
        })
    }

    /// `x^N p(1/x)` for `N >= deg p`.
    pub fn reversed(&self, n: u32) -> Self {
        Self {
            var: self.var,
            terms: self.terms.iter().map(|(d, c)| (n - d, c.clone())).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(d, c)| json!({"degree": d, "coefficient": c.to_string()}))
            .collect();
        json!({"variable": self.var.to_string(), "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let var = match v.get("variable").and_then(Value::as_str) {
            Some("T") => Var::T,
            Some("Z") => Var::Z,
            other => return Err(AlgebraError::Json(format!("bad variable {other:?}"))),
        };
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| AlgebraError::Json("missing terms".into()))?;
        let mut p = Self::zero(var);
        for t in terms {
            let d = t
                .get("degree")
                .and_then(Value::as_u64)
                .ok_or_else(|| AlgebraError::Json("bad degree".into()))?;
            let c: BigInt = t
                .get("coefficient")
                .and_then(Value::as_str)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| AlgebraError::Json("bad coefficient".into()))?;
            p.add_term(d as u32, c);
        }
        Ok(p)
    }

    /// Parse an integer polynomial expression in one variable.
    ///
    /// Accepts `+ - * ^`, parentheses, and juxtaposition as multiplication,
    /// so `"2 Z^{18}(195 Z^{18} + 390)"` and `"130*(T^7+702*T^6-703)"` both work.
    pub fn parse(var: Var, src: &str) -> Result<Self, AlgebraError> {
        let name = var.to_string().chars().next().unwrap();
        let tokens: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser {
            var,
            name,
            tokens: &tokens,
            pos: 0,
        };
        let out = p
            .expr()
            .ok_or_else(|| AlgebraError::Parse(src.to_string()))?;
        if p.pos != tokens.len() {
            return Err(AlgebraError::Parse(src.to_string()));
        }
        Ok(out)
    }

    fn check_var(&self, other: &Self) {
        assert_eq!(
            self.var, other.var,
            "mixing polynomials in different variables"
        );
    }
}

impl fmt::Display for UniPoly {
    /// Expanded form, highest degree first: `3*T^2 - T + 7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (*d, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{}", self.var)?,
                (1, false) => write!(f, "{mag}*{}", self.var)?,
                (_, true) => write!(f, "{}^{d}", self.var)?,
                (_, false) => write!(f, "{mag}*{}^{d}", self.var)?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.check_var(rhs);
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.check_var(rhs);
        let mut out = self.clone();
        for (d, c) in &rhs.terms {
            out.add_term(*d, -c);
        }
        out
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.check_var(rhs);
        let mut out = UniPoly::zero(self.var);
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

struct Parser<'a> {
    var: Var,
    name: char,
    tokens: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.tokens[start..self.pos].iter().collect();
        digits.parse().ok()
    }

    fn expr(&mut self) -> Option<UniPoly> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Some(acc);
            }
        }
    }

    fn term(&mut self) -> Option<UniPoly> {
        let mut acc = self.power()?;
        loop {
            // explicit `*` or juxtaposition
            if self.eat('*')
                || self
                    .peek()
                    .is_some_and(|c| c == '(' || c == self.name || c.is_ascii_digit())
            {
                acc = &acc * &self.power()?;
            } else {
                return Some(acc);
            }
        }
    }

    fn power(&mut self) -> Option<UniPoly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Some(base);
        }
        let braced = self.eat('{');
        let e = self.number()?.to_u32()?;
        if braced && !self.eat('}') {
            return None;
        }
        Some(base.pow(e))
    }

    fn atom(&mut self) -> Option<UniPoly> {
        match self.peek()? {
            '(' => {
                self.pos += 1;
                let inner = self.expr()?;
                self.eat(')').then_some(inner)
            }
            c if c == self.name => {
                self.pos += 1;
                Some(UniPoly::x(self.var))
            }
            c if c.is_ascii_digit() => Some(UniPoly::constant(self.var, self.number()?)),
            _ => None,
        }
    }
}

/// Polynomial in `Z` whose coefficients are polynomials in `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<u32, UniPoly>,
}

impl Default for BiPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    /// Add `coeff(T) * Z^degree`.
    pub fn add_term(&mut self, degree: u32, coeff: &UniPoly) {
        assert_eq!(coeff.var(), Var::T);
        if coeff.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(degree)
            .or_insert_with(|| UniPoly::zero(Var::T));
        *slot = &*slot + coeff;
        if slot.is_zero() {
            self.terms.remove(&degree);
        }
    }

    /// Coefficient of `Z^degree`, a polynomial in `T`.
    pub fn coeff(&self, degree: u32) -> UniPoly {
        self.terms
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(Var::T))
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &UniPoly)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Substitute an integer for `T`, leaving a polynomial in `Z`.
    pub fn eval_t(&self, t: &ExactInt) -> UniPoly {
        UniPoly::from_terms(Var::Z, self.terms.iter().map(|(d, c)| (*d, c.eval(t))))
    }

    pub fn mul_z(&self, z: &UniPoly) -> Self {
        assert_eq!(z.var(), Var::Z);
        let mut out = Self::zero();
        for (dz, cz) in z.terms() {
            for (d, c) in &self.terms {
                out.add_term(d + dz, &c.scale(cz));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(d, c)| json!({"degree": d, "coefficient": c.to_json()}))
            .collect();
        json!({"variable": "Z", "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        if v.get("variable").and_then(Value::as_str) != Some("Z") {
            return Err(AlgebraError::Json("bivariate form must be in Z".into()));
        }
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| AlgebraError::Json("missing terms".into()))?;
        let mut p = Self::zero();
        for t in terms {
            let d = t
                .get("degree")
                .and_then(Value::as_u64)
                .ok_or_else(|| AlgebraError::Json("bad degree".into()))?;
            let c = UniPoly::from_json(
                t.get("coefficient")
                    .ok_or_else(|| AlgebraError::Json("missing coefficient".into()))?,
            )?;
            p.add_term(d as u32, &c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn parse_expressions() {
        let p = UniPoly::parse(Var::T, "130(T^7+702T^6-703)").unwrap();
        assert_eq!(p.to_string(), "130*T^7 + 91260*T^6 - 91390");
        let w = UniPoly::parse(Var::Z, "4 Z^{39}(7371 Z + 10)").unwrap();
        assert_eq!(w, UniPoly::from_terms(Var::Z, [(40, 29484), (39, 40)]));
        let f = UniPoly::parse(Var::T, "-(T - 3)(T - 9)").unwrap();
        assert_eq!(f, UniPoly::from_coeffs(Var::T, [-27, 12, -1]));
        assert!(UniPoly::parse(Var::T, "3*(T").is_err());
        assert!(UniPoly::parse(Var::T, "Z").is_err());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(40, 2), big(780));
        assert_eq!(binomial(7, 0), big(1));
        assert_eq!(binomial(22, 21), big(22));
        assert_eq!(binomial(5, -1), big(0));
        assert_eq!(binomial(5, 6), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(2, 1, 3).unwrap(), big(4));
        assert_eq!(gaussian_binomial(4, 2, 3).unwrap(), big(130));
        assert_eq!(gaussian_binomial(4, 3, 3).unwrap(), big(40));
        assert_eq!(gaussian_binomial(3, 5, 3).unwrap(), big(0));
        assert_eq!(gaussian_binomial(0, 0, 2).unwrap(), big(1));
        assert!(matches!(
            gaussian_binomial(2, 1, 1),
            Err(AlgebraError::BadFieldSize(1))
        ));
    }

    #[test]
    fn gl_order_examples() {
        assert_eq!(gl_order(1, 3).unwrap(), big(2));
        assert_eq!(gl_order(4, 3).unwrap(), big(24261120));
        assert_eq!(gl_order(2, 2).unwrap(), big(6));
        assert_eq!(gl_order(0, 5).unwrap(), big(1));
        assert!(gl_order(3, 0).is_err());
    }

    #[test]
    fn gl2_over_f2_by_enumeration() {
        let mut count = 0;
        for m in 0u32..16 {
            let [a, b, c, d] = [m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1];
            if (a * d + b * c) % 2 == 1 {
                count += 1;
            }
        }
        assert_eq!(gl_order(2, 2).unwrap(), big(count));
    }

    #[test]
    fn gaussian_symmetry_small() {
        for q in [2u64, 3, 5] {
            for r in 0..=6u32 {
                for j in 0..=r {
                    assert_eq!(
                        gaussian_binomial(r, j, q).unwrap(),
                        gaussian_binomial(r, r - j, q).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn display_and_canonical_form() {
        let p = UniPoly::from_coeffs(Var::T, [7, -1, 3]);
        assert_eq!(p.to_string(), "3*T^2 - T + 7");
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q, UniPoly::zero(Var::T));
        assert_eq!(UniPoly::from_coeffs(Var::Z, [0, 0, -1]).to_string(), "-Z^2");
    }

    #[test]
    fn exact_linear_division() {
        // (T - 1)(T^2 + 2T + 5)
        let f = UniPoly::from_coeffs(Var::T, [-5, 3, 1, 1]);
        let g = f.div_linear_exact(&big(1)).unwrap();
        assert_eq!(g, UniPoly::from_coeffs(Var::T, [5, 2, 1]));
        assert!(f.div_linear_exact(&big(2)).is_err());
    }

    #[test]
    fn json_round_trip_and_shape() {
        let p = UniPoly::from_coeffs(Var::Z, [0, -3, 0, 12]);
        let v = p.to_json();
        assert_eq!(
            v,
            serde_json::json!({"variable":"Z","terms":[
                {"degree":1,"coefficient":"-3"},{"degree":3,"coefficient":"12"}]})
        );
        assert_eq!(UniPoly::from_json(&v).unwrap(), p);

        let mut b = BiPoly::zero();
        b.add_term(2, &UniPoly::from_coeffs(Var::T, [1, 1]));
        b.add_term(0, &UniPoly::one(Var::T));
        assert_eq!(BiPoly::from_json(&b.to_json()).unwrap(), b);
    }

    #[test]
    fn large_values_stay_exact() {
        let t = big(3).pow(10);
        let p = UniPoly::monomial(Var::T, 10, 1);
        assert_eq!(p.eval(&t), big(3).pow(100));
    }

    fn small_poly() -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(-50i64..50, 0..6).prop_map(|c| UniPoly::from_coeffs(Var::T, c))
    }

    proptest! {
        #[test]
        fn eval_is_ring_homomorphism(p in small_poly(), s in small_poly(), t in -20i64..20) {
            let t = big(t);
            prop_assert_eq!((&p * &s).eval(&t), p.eval(&t) * s.eval(&t));
            prop_assert_eq!((&p + &s).eval(&t), p.eval(&t) + s.eval(&t));
        }

        #[test]
        fn product_degree_adds(p in small_poly(), s in small_poly()) {
            if let (Some(a), Some(b)) = (p.degree(), s.degree()) {
                prop_assert_eq!((&p * &s).degree(), Some(a + b));
            }
        }

        #[test]
        fn bivariate_substitution_commutes(
            a in small_poly(), b in small_poly(), t in -6i64..6
        ) {
            let mut w = BiPoly::zero();
            w.add_term(0, &a);
            w.add_term(3, &b);
            let z = UniPoly::from_coeffs(Var::Z, [1, -1]);
            let t = big(t);
            let lhs = w.mul_z(&z).eval_t(&t);
            let rhs = &w.eval_t(&t) * &z;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
