//! Truncated Novikov series in the distinguished variable `t`.
//!
//! A series in the `PositivePowers` completion has finitely many terms below
//! any exponent; it is known exactly for exponents `<= truncation_order`.
//! `NegativePowers` is the mirror image: known for exponents
//! `>= -truncation_order`. Series that came out of an exact division carry
//! `terminating = true` and have no truncation error at all.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{CoefficientRing, LaurentPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, serde::Deserialize)]
pub enum Direction {
    #[default]
    PositivePowers,
    NegativePowers,
}

impl Direction {
    fn sign(self) -> i64 {
        match self {
            Direction::PositivePowers => 1,
            Direction::NegativePowers => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovikovSeries {
    ring: CoefficientRing,
    direction: Direction,
    truncation_order: i64,
    terminating: bool,
    terms: BTreeMap<i64, BigInt>,
}

impl NovikovSeries {
    /// An exact (terminating) series equal to a univariate polynomial.
    pub fn from_polynomial(p: &LaurentPolynomial, direction: Direction, order: i64) -> Self {
        assert_eq!(p.nvars(), 1, "Novikov series are univariate");
        NovikovSeries {
            ring: p.ring(),
            direction,
            truncation_order: order,
            terminating: true,
            terms: p.terms().map(|(e, c)| (e[0], c.clone())).collect(),
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn truncation_order(&self) -> i64 {
        self.truncation_order
    }

    pub fn is_terminating(&self) -> bool {
        self.terminating
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// True when the coefficient of `t^e` is determined.
    pub fn is_known(&self, e: i64) -> bool {
        self.terminating || self.direction.sign() * e <= self.truncation_order
    }

    /// The known part as a Laurent polynomial.
    pub fn truncated_polynomial(&self) -> LaurentPolynomial {
        LaurentPolynomial::univariate(self.ring, self.terms.iter().map(|(e, c)| (*e, c.clone())))
    }

    /// Checks that the coefficients agree with `p` at every exponent up to
    /// `through` in the completion direction, and that they are all known.
    pub fn agrees_with(&self, p: &LaurentPolynomial, through: i64) -> bool {
        let s = self.direction.sign();
        if !self.is_known(s * through) {
            return false;
        }
        let low = self
            .terms
            .keys()
            .map(|e| s * e)
            .chain(p.terms().map(|(e, _)| s * e[0]))
            .min()
            .unwrap_or(0);
        (low..=through).all(|k| self.coefficient(s * k) == p.coeff(&[s * k]))
    }

    fn valuation(&self) -> Option<i64> {
        let s = self.direction.sign();
        self.terms.keys().map(|e| s * e).min()
    }

    /// Flip `t -> t^{-1}`, which swaps the completion direction.
    fn mirrored(&self) -> Self {
        NovikovSeries {
            ring: self.ring,
            direction: match self.direction {
                Direction::PositivePowers => Direction::NegativePowers,
                Direction::NegativePowers => Direction::PositivePowers,
            },
            truncation_order: self.truncation_order,
            terminating: self.terminating,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Product; the result is known as far as both factors allow.
    pub fn mul(&self, other: &NovikovSeries) -> Result<NovikovSeries> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        if self.direction != other.direction {
            return Err(Error::RingMismatch(
                "Novikov series completed in opposite directions".into(),
            ));
        }
        let s = self.direction.sign();
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let c = terms.entry(e1 + e2).or_insert_with(BigInt::zero);
                *c += c1 * c2;
            }
        }
        let ring = self.ring;
        let v1 = self.valuation();
        let v2 = other.valuation();
        let (terminating, order) = match (self.terminating, other.terminating) {
            (true, true) => (true, self.truncation_order.max(other.truncation_order)),
            _ => {
                let bound = |known: &NovikovSeries, v_other: Option<i64>| -> Option<i64> {
                    if known.terminating {
                        None
                    } else {
                        // a zero partner makes the product exactly zero
                        Some(known.truncation_order + v_other.unwrap_or(0))
                    }
                };
                let b1 = bound(self, v2);
                let b2 = bound(other, v1);
                let order = match (b1, b2) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => unreachable!(),
                };
                (false, order)
            }
        };
        let terms = terms
            .into_iter()
            .map(|(e, c)| (e, reduce(ring, c)))
            .filter(|(e, c)| !c.is_zero() && (terminating || s * e <= order))
            .collect();
        Ok(NovikovSeries {
            ring,
            direction: self.direction,
            truncation_order: order,
            terminating,
            terms,
        })
    }

    pub fn mul_polynomial(&self, p: &LaurentPolynomial) -> Result<NovikovSeries> {
        self.mul(&NovikovSeries::from_polynomial(
            p,
            self.direction,
            self.truncation_order,
        ))
    }
}

fn reduce(ring: CoefficientRing, c: BigInt) -> BigInt {
    match ring {
        CoefficientRing::Integers => c,
        CoefficientRing::Mod2 => c.mod_floor(&BigInt::from(2)),
    }
}

/// Expand `numerator / denominator` in the Novikov completion.
///
/// The result is exact through exponent `order` in the completion direction
/// (`t^order` for positive powers, `t^-order` for negative). Over ℤ the
/// leading term of the denominator in the completion direction must be a
/// unit.
pub fn novikov_quotient(
    numerator: &LaurentPolynomial,
    denominator: &LaurentPolynomial,
    direction: Direction,
    order: i64,
) -> Result<NovikovSeries> {
    if numerator.nvars() != 1 || denominator.nvars() != 1 {
        return Err(Error::UnsupportedRing(
            "Novikov quotients are univariate in the distinguished variable".into(),
        ));
    }
    if numerator.ring() != denominator.ring() {
        return Err(Error::RingMismatch(format!(
            "{} vs {}",
            numerator.ring(),
            denominator.ring()
        )));
    }
    if denominator.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if direction == Direction::NegativePowers {
        let q = novikov_quotient(
            &numerator.involution(),
            &denominator.involution(),
            Direction::PositivePowers,
            order,
        )?;
        return Ok(q.mirrored());
    }
    let ring = numerator.ring();
    let (v_den, _) = denominator.degree_range().expect("nonzero");
    let lead = denominator.coeff_univariate(v_den);
    if ring == CoefficientRing::Integers && !lead.abs().is_one() {
        return Err(Error::NonUnitLeadingCoefficient(lead.to_string()));
    }
    // polynomial quotients are returned whole, whatever the requested order
    if let Some(q) = numerator.div_exact(denominator) {
        let top = q.degree_range().map_or(order, |(_, hi)| hi.max(order));
        return Ok(NovikovSeries {
            ring,
            direction,
            truncation_order: top,
            terminating: true,
            terms: q.terms().map(|(e, c)| (e[0], c.clone())).collect(),
        });
    }
    let mut rem = numerator.clone();
    let mut terms = BTreeMap::new();
    let mut terminating = false;
    loop {
        let Some((v_rem, _)) = rem.degree_range() else {
            terminating = true;
            break;
        };
        let e = v_rem - v_den;
        if e > order {
            break;
        }
        let a = rem.coeff_univariate(v_rem);
        // lead is ±1 (or 1 mod 2), so a / lead = a * lead
        let q = &a * &lead;
        let step = LaurentPolynomial::univariate(ring, [(e, q.clone())]);
        rem = &rem - &(&step * denominator);
        terms.insert(e, reduce(ring, q));
    }
    Ok(NovikovSeries {
        ring,
        direction,
        truncation_order: order,
        terminating,
        terms,
    })
}

impl fmt::Display for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.truncated_polynomial();
        if self.terminating {
            write!(f, "{body}")
        } else {
            let tail = self.direction.sign() * (self.truncation_order + 1);
            write!(f, "{body} + O(t^{tail})")
        }
    }
}

impl Serialize for NovikovSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("NovikovSeries", 5)?;
        st.serialize_field("direction", &self.direction)?;
        st.serialize_field("truncation_order", &self.truncation_order)?;
        st.serialize_field("terminating", &self.terminating)?;
        st.serialize_field("ring", &self.ring)?;
        st.serialize_field("terms", &self.truncated_polynomial().to_string())?;
        st.end()
    }
}
