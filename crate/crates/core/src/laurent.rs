//! Exact multivariate Laurent polynomials over ℤ or 𝔽₂.
//!
//! These are the elements of the group rings ℤ[ℤʳ] and 𝔽₂[ℤʳ]: the twisted
//! coefficient rings, Alexander polynomials and every invariant in the crate
//! live here. Terms are kept in a `BTreeMap` keyed by exponent tuple, so the
//! iteration (and text) order is lexicographic in the exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring of a group ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    Mod2,
}

impl CoefficientRing {
    fn reduce(self, c: BigInt) -> BigInt {
        match self {
            CoefficientRing::Integers => c,
            CoefficientRing::Mod2 => c.mod_floor(&BigInt::from(2)),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => f.write_str("Z"),
            CoefficientRing::Mod2 => f.write_str("F2"),
        }
    }
}

pub type Exponent = Vec<i64>;

/// A Laurent polynomial in `nvars` variables with no zero terms stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    nvars: usize,
    ring: CoefficientRing,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize, ring: CoefficientRing) -> Self {
        LaurentPolynomial {
            nvars,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, ring: CoefficientRing) -> Self {
        Self::constant(nvars, ring, 1)
    }

    pub fn constant(nvars: usize, ring: CoefficientRing, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, ring, vec![0; nvars], c)
    }

    pub fn monomial(
        nvars: usize,
        ring: CoefficientRing,
        exponent: Exponent,
        c: impl Into<BigInt>,
    ) -> Self {
        assert_eq!(exponent.len(), nvars, "exponent length must equal nvars");
        let mut p = Self::zero(nvars, ring);
        p.add_term(exponent, c.into());
        p
    }

    /// The variable `t_index` (zero based).
    pub fn var(nvars: usize, ring: CoefficientRing, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(nvars, ring, e, 1)
    }

    /// `t_index - 1`, the generators of the augmentation ideal.
    pub fn var_minus_one(nvars: usize, ring: CoefficientRing, index: usize) -> Self {
        Self::var(nvars, ring, index) - Self::one(nvars, ring)
    }

    /// Univariate polynomial from `(exponent, coefficient)` pairs.
    pub fn univariate<I, C>(ring: CoefficientRing, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(1, ring);
        for (e, c) in terms {
            p.add_term(vec![e], c.into());
        }
        p
    }

    pub fn from_terms<I>(nvars: usize, ring: CoefficientRing, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut p = Self::zero(nvars, ring);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must equal nvars");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exponent: Exponent, c: BigInt) {
        let ring = self.ring;
        let entry = self.terms.entry(exponent);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                let c = ring.reduce(c);
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let c = ring.reduce(o.get() + c);
                if c.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = c;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponent: &[i64]) -> BigInt {
        self.terms
            .get(exponent)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of `t^e` in a univariate polynomial.
    pub fn coeff_univariate(&self, e: i64) -> BigInt {
        debug_assert_eq!(self.nvars, 1);
        self.coeff(&[e])
    }

    /// True for `±` a monomial, i.e. the units of the group ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.ring, other.ring, "coefficient ring mismatch");
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars, self.ring);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    /// Multiply by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        LaurentPolynomial {
            nvars: self.nvars,
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Per-variable minimal exponents (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Exponent {
        let mut m: Option<Exponent> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn max_exponents(&self) -> Exponent {
        let mut m: Option<Exponent> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.max(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Lowest and highest exponent of a nonzero univariate polynomial.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        debug_assert_eq!(self.nvars, 1);
        let lo = self.terms.keys().next()?[0];
        let hi = self.terms.keys().next_back()?[0];
        Some((lo, hi))
    }

    /// Width of the support in a univariate polynomial; `None` for zero.
    pub fn span(&self) -> Option<i64> {
        self.degree_range().map(|(lo, hi)| hi - lo)
    }

    /// Image under the ring map to 𝔽₂ coefficients.
    pub fn reduce_mod2(&self) -> Self {
        self.with_ring(CoefficientRing::Mod2)
    }

    /// Reinterpret the coefficients in another ring. Lifting from 𝔽₂ to ℤ
    /// takes the representatives 0 and 1.
    pub fn with_ring(&self, ring: CoefficientRing) -> Self {
        let mut out = Self::zero(self.nvars, ring);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// The ring automorphism induced by negating every group element.
    pub fn involution(&self) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Sum of coefficients: the ring map sending every group element to 1.
    pub fn augmentation(&self) -> BigInt {
        let s: BigInt = self.terms.values().sum();
        self.ring.reduce(s)
    }

    /// Canonical representative of the orbit under multiplication by units.
    ///
    /// Every variable gets minimal exponent 0; over ℤ the coefficient on the
    /// lexicographically smallest exponent tuple is made positive.
    pub fn normalize_up_to_unit(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m: Exponent = self.min_exponents().iter().map(|x| -x).collect();
        let shifted = self.shift(&m);
        let lead = shifted.terms.values().next().expect("nonzero");
        if lead.is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    /// Substitute new variables: old variable `i` becomes new variable
    /// `mapping[i]` in a ring with `nvars` variables.
    pub fn embed(&self, nvars: usize, mapping: &[usize]) -> Self {
        assert_eq!(mapping.len(), self.nvars);
        let mut out = Self::zero(nvars, self.ring);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                ne[mapping[i]] += x;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Push forward along the group homomorphism ℤʳ → ℤˢ given by the
    /// integer matrix `hom` (s rows, r columns).
    pub fn push_forward(&self, hom: &[Vec<i64>]) -> Self {
        let s = hom.len();
        for row in hom {
            assert_eq!(row.len(), self.nvars, "homomorphism column count");
        }
        let mut out = Self::zero(s, self.ring);
        for (e, c) in &self.terms {
            let ne: Exponent = hom
                .iter()
                .map(|row| row.iter().zip(e).map(|(a, b)| a * b).sum())
                .collect();
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Keep variable `keep` and send every other variable to 1.
    pub fn specialize_to_variable(&self, keep: usize) -> Self {
        let mut out = Self::zero(1, self.ring);
        for (e, c) in &self.terms {
            out.add_term(vec![e[keep]], c.clone());
        }
        out
    }

    /// Evaluate at a point of (ℚ^×)ʳ.
    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                term *= pow_rational(x, k);
            }
            acc += term;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the divisor does not
    /// divide. Uses lexicographic long division after clearing negative
    /// exponents.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.assert_compatible(divisor);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let shift_num: Exponent = self.min_exponents().iter().map(|x| -x).collect();
        let shift_den: Exponent = divisor.min_exponents().iter().map(|x| -x).collect();
        let mut rem = self.shift(&shift_num);
        let den = divisor.shift(&shift_den);
        let (lead_e, lead_c) = den.terms.iter().next_back().expect("nonzero");
        let mut quotient = Self::zero(self.nvars, self.ring);
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            let qe: Exponent = re.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let qc = match self.ring {
                CoefficientRing::Integers => {
                    let (q, r) = rc.div_rem(lead_c);
                    if !r.is_zero() {
                        return None;
                    }
                    q
                }
                CoefficientRing::Mod2 => BigInt::one(),
            };
            let step = Self::monomial(self.nvars, self.ring, qe, qc);
            rem = &rem - &(&step * &den);
            quotient = quotient + step;
        }
        let back: Exponent = shift_den
            .iter()
            .zip(&shift_num)
            .map(|(d, n)| d - n)
            .collect();
        Some(quotient.shift(&back))
    }

    /// Render with the given variable names.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let factors: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(x, _)| **x != 0)
                .map(|(x, n)| {
                    if *x == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{x}")
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Parse with explicit variable names.
    pub fn parse_with(text: &str, names: &[&str], ring: CoefficientRing) -> Result<Self> {
        let parsed = parse_terms(text)?;
        let mut p = Self::zero(names.len(), ring);
        for (c, factors) in parsed {
            let mut e = vec![0; names.len()];
            for (name, x) in factors {
                let idx = names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                e[idx] += x;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Parse, inferring variable names: `t` alone is univariate, `t1..tn`
    /// gives `n` variables, anything else is sorted alphabetically.
    pub fn parse(text: &str, ring: CoefficientRing) -> Result<Self> {
        let parsed = parse_terms(text)?;
        let mut names: Vec<String> = parsed
            .iter()
            .flat_map(|(_, f)| f.iter().map(|(n, _)| n.clone()))
            .collect();
        names.sort();
        names.dedup();
        let names = infer_names(&names);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::parse_with(text, &refs, ring)
    }

    /// Parse a univariate polynomial in `t` (constants allowed).
    pub fn parse_univariate(text: &str, ring: CoefficientRing) -> Result<Self> {
        Self::parse_with(text, &["t"], ring)
    }
}

fn pow_rational(x: &BigRational, k: i64) -> BigRational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Default variable names: `t` for one variable, `t1..tn` otherwise.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars == 1 {
        vec!["t".to_string()]
    } else {
        (1..=nvars).map(|i| format!("t{i}")).collect()
    }
}

fn infer_names(found: &[String]) -> Vec<String> {
    if found.is_empty() || (found.len() == 1 && found[0] == "t") {
        return vec!["t".to_string()];
    }
    let indexed: Option<Vec<usize>> = found
        .iter()
        .map(|n| {
            n.strip_prefix('t')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&d| d >= 1)
        })
        .collect();
    if let Some(idx) = indexed {
        let max = idx.into_iter().max().unwrap_or(1);
        return (1..=max).map(|i| format!("t{i}")).collect();
    }
    found.to_vec()
}

type ParsedTerm = (BigInt, Vec<(String, i64)>);

fn parse_terms(text: &str) -> Result<Vec<ParsedTerm>> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut pos = 0;
    let mut out = Vec::new();
    let mut first = true;
    while pos < chars.len() {
        let mut sign = BigInt::one();
        match chars[pos] {
            '+' => pos += 1,
            '-' => {
                sign = -sign;
                pos += 1;
            }
            _ if first => {}
            c => return Err(Error::Parse(format!("expected + or -, found `{c}`"))),
        }
        first = false;
        let (coeff, factors, next) = parse_term(&chars, pos)?;
        pos = next;
        out.push((sign * coeff, factors));
    }
    Ok(out)
}

fn parse_int(chars: &[char], mut pos: usize) -> Option<(String, usize)> {
    let start = pos;
    if pos < chars.len() && chars[pos] == '-' {
        pos += 1;
    }
    let digits = pos;
    while pos < chars.len() && chars[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == digits {
        return None;
    }
    Some((chars[start..pos].iter().collect(), pos))
}

type Term = (BigInt, Vec<(String, i64)>, usize);

fn parse_term(chars: &[char], mut pos: usize) -> Result<Term> {
    let mut coeff = BigInt::one();
    let mut factors = Vec::new();
    let mut expect_factor = true;
    if pos < chars.len() && chars[pos].is_ascii_digit() {
        let (digits, next) = parse_int(chars, pos).expect("digit present");
        coeff = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient `{digits}`")))?;
        pos = next;
        expect_factor = false;
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
            expect_factor = true;
        }
    }
    loop {
        if pos < chars.len() && (chars[pos].is_ascii_alphabetic() || chars[pos] == '_') {
            let start = pos;
            while pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || chars[pos] == '_') {
                pos += 1;
            }
            let name: String = chars[start..pos].iter().collect();
            let mut exp = 1i64;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let paren = pos < chars.len() && chars[pos] == '(';
                if paren {
                    pos += 1;
                }
                let (digits, next) = parse_int(chars, pos)
                    .ok_or_else(|| Error::Parse(format!("missing exponent after `{name}^`")))?;
                exp = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent `{digits}`")))?;
                pos = next;
                if paren {
                    if pos >= chars.len() || chars[pos] != ')' {
                        return Err(Error::Parse("unbalanced parenthesis in exponent".into()));
                    }
                    pos += 1;
                }
            }
            factors.push((name, exp));
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        } else if expect_factor {
            return Err(Error::Parse(format!(
                "expected a term at position {pos} in `{}`",
                chars.iter().collect::<String>()
            )));
        } else {
            break;
        }
    }
    if pos < chars.len() && chars[pos] != '+' && chars[pos] != '-' {
        return Err(Error::Parse(format!("unexpected `{}`", chars[pos])));
    }
    Ok((coeff, factors, pos))
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.to_string_with(&refs))
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        self.assert_compatible(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        let ring = self.ring;
        LaurentPolynomial {
            nvars: self.nvars,
            ring,
            terms: self
                .terms
                .into_iter()
                .map(|(e, c)| (e, ring.reduce(-c)))
                .collect(),
        }
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -self.clone()
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self - &rhs
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.assert_compatible(rhs);
        let mut out = LaurentPolynomial::zero(self.nvars, self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

/// `t - 2 + t^{-1}`, the square of `t^{1/2} - t^{-1/2}`.
pub fn z_squared(ring: CoefficientRing) -> LaurentPolynomial {
    LaurentPolynomial::univariate(ring, [(-1, 1), (0, -2), (1, 1)])
}

/// Substitute `z² = t - 2 + t⁻¹` into a polynomial in the Conway variable.
///
/// Only even powers of `z` may occur; odd powers need `t^{1/2}` and are
/// rejected with [`Error::Parity`].
pub fn expand_z_square(conway: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    if conway.nvars() != 1 {
        return Err(Error::UnsupportedRing(format!(
            "Conway polynomial must be univariate, got {} variables",
            conway.nvars()
        )));
    }
    let ring = conway.ring();
    let zz = z_squared(ring);
    let mut out = LaurentPolynomial::zero(1, ring);
    for (e, c) in conway.terms() {
        let k = e[0];
        if k % 2 != 0 {
            return Err(Error::Parity(k));
        }
        if k < 0 {
            return Err(Error::UnsupportedRing(format!(
                "negative power z^{k} in a Conway polynomial"
            )));
        }
        out += &zz.pow((k / 2) as u32).scale(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use CoefficientRing::*;

    fn p(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse_univariate(s, Integers).unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        let tref = p("t^-1 - 1 + t");
        assert_eq!(tref.to_string(), "t^-1 - 1 + t");
        assert_eq!(p("  3*t^2-t^(-2) +0 ").to_string(), "-t^-2 + 3*t^2");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(p("2t").to_string(), "2*t");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(LaurentPolynomial::parse_univariate("t^", Integers).is_err());
        assert!(LaurentPolynomial::parse_univariate("", Integers).is_err());
        assert!(LaurentPolynomial::parse_univariate("t + u", Integers).is_err());
        assert!(LaurentPolynomial::parse_univariate("t)", Integers).is_err());
    }

    #[test]
    fn multivariate_names() {
        let q = LaurentPolynomial::parse("t1^2*t2 - 3*t2^-1", Integers).unwrap();
        assert_eq!(q.nvars(), 2);
        assert_eq!(q.to_string(), "-3*t2^-1 + t1^2*t2");
        let r = LaurentPolynomial::parse_with("t^2 + 3*t^-1*u", &["t", "u"], Integers).unwrap();
        assert_eq!(
            r.involution().to_string_with(&["t", "u"]),
            "t^-2 + 3*t*u^-1"
        );
    }

    #[test]
    fn normalize_examples() {
        assert!(LaurentPolynomial::zero(1, Integers)
            .normalize_up_to_unit()
            .is_zero());
        assert_eq!(p("t^5 - t^3").normalize_up_to_unit(), p("1 - t^2"));
        assert_eq!(p("t^-1 - 1 + t").normalize_up_to_unit(), p("1 - t + t^2"));
    }

    #[test]
    fn trefoil_canonical_form_is_unique_in_window() {
        // enumerate every ±t^k multiple for k in a window and check they all
        // land on one representative, which is the only one with min exponent 0
        // and positive lowest coefficient
        let tref = p("t^-1 - 1 + t");
        let canon = tref.normalize_up_to_unit();
        let mut seen = Vec::new();
        for k in -6..=6 {
            for s in [1, -1] {
                let u = tref.shift(&[k]).scale(&BigInt::from(s));
                assert_eq!(u.normalize_up_to_unit(), canon);
                if u.min_exponents() == vec![0] && u.coeff(&[0]) > BigInt::zero() {
                    seen.push(u);
                }
            }
        }
        assert_eq!(seen, vec![canon.clone()]);
        assert_eq!(canon, p("1 - t + t^2"));
    }

    #[test]
    fn involution_examples() {
        assert_eq!(p("1").involution(), p("1"));
        assert_eq!(p("t - 2 + t^-1").involution(), p("t - 2 + t^-1"));
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(p("t - 1").augmentation(), BigInt::zero());
        assert_eq!(p("t^-1 - 1 + t").augmentation(), BigInt::one());
        let q = p("3*t^4 - 7*t + 2");
        assert!((&p("t - 1") * &q).augmentation().is_zero());
    }

    #[test]
    fn mod2_reduction() {
        let q = p("-t^-1 + 3 - t").reduce_mod2();
        assert_eq!(q.to_string(), "t^-1 + 1 + t");
        assert_eq!(q.augmentation(), BigInt::one());
    }

    #[test]
    fn exact_division() {
        let d = p("t - 2 + t^-1");
        let q = p("t^3 + 5 - 2*t^-4");
        let prod = &d * &q;
        assert_eq!(prod.div_exact(&d), Some(q));
        assert_eq!(p("t + 1").div_exact(&p("t - 1")), None);
        assert_eq!(p("2*t").div_exact(&p("4")), None);
        let x = LaurentPolynomial::parse("t1 - t2", Integers).unwrap();
        let y = LaurentPolynomial::parse("t1^2*t2^-1 + 3", Integers).unwrap();
        assert_eq!((&x * &y).div_exact(&y), Some(x));
    }

    #[test]
    fn z_square_expansion() {
        let z = |s: &str| LaurentPolynomial::parse_with(s, &["z"], Integers).unwrap();
        assert_eq!(expand_z_square(&z("1")).unwrap(), p("1"));
        assert_eq!(expand_z_square(&z("z^2 + 1")).unwrap(), p("t - 1 + t^-1"));
        assert_eq!(expand_z_square(&z("1 - z^2")).unwrap(), p("-t + 3 - t^-1"));
        assert_eq!(expand_z_square(&z("z^3 + z")), Err(Error::Parity(1)));
        let zz = expand_z_square(&z("z^2").reduce_mod2()).unwrap();
        assert_eq!(zz.to_string(), "t^-1 + t");
        let sym = expand_z_square(&z("2*z^4 - 3*z^2 + 1")).unwrap();
        assert_eq!(sym.involution(), sym);
    }

    #[test]
    fn specialize_and_push_forward() {
        let q = LaurentPolynomial::parse("t1*t2^2 - t2 + 4", Integers).unwrap();
        assert_eq!(q.specialize_to_variable(1), p("t^2 - t + 4"));
        let pushed = q.push_forward(&[vec![1, 1]]);
        assert_eq!(pushed, p("t^3 - t + 4"));
    }
}
