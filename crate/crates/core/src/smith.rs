//! Smith normal form over Euclidean domains.
//!
//! Supported rings are ℤ, 𝔽₂[t^±] and ℚ[t^±]. The Laurent rings are
//! localisations of `F[t]`, hence Euclidean with the span
//! (highest minus lowest exponent) as norm; their units are the nonzero
//! monomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::{CoefficientRing, LaurentPolynomial};
use crate::matrix::PolyMatrix;

/// Minimal Euclidean-domain interface used by the elimination routines.
pub trait EuclideanDomain: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Division with remainder, `self = q * d + r` with `norm(r) < norm(d)`
    /// or `r = 0`. `d` is nonzero.
    fn div_rem(&self, d: &Self) -> (Self, Self);
    fn norm(&self) -> u64;
    fn is_unit(&self) -> bool;
    /// Returns `(u, u * self)` with `u` a unit and `u * self` the canonical
    /// associate.
    fn canonical(&self) -> (Self, Self);
}

impl EuclideanDomain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        num_integer::Integer::div_mod_floor(self, d)
    }
    fn norm(&self) -> u64 {
        let a = self.abs();
        u64::try_from(&a).unwrap_or(u64::MAX)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn canonical(&self) -> (Self, Self) {
        if self.is_negative() {
            (-<BigInt as One>::one(), -self)
        } else {
            (<BigInt as One>::one(), self.clone())
        }
    }
}

/// Element of 𝔽₂[t^±].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Laurent(pub LaurentPolynomial);

impl F2Laurent {
    pub fn new(p: &LaurentPolynomial) -> Self {
        assert_eq!(p.nvars(), 1);
        F2Laurent(p.reduce_mod2())
    }
}

impl fmt::Display for F2Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Shift a nonzero univariate polynomial so its lowest exponent is 0.
fn lowest_to_zero(p: &LaurentPolynomial) -> (i64, LaurentPolynomial) {
    let (lo, _) = p.degree_range().expect("nonzero");
    (lo, p.shift(&[-lo]))
}

impl EuclideanDomain for F2Laurent {
    fn zero() -> Self {
        F2Laurent(LaurentPolynomial::zero(1, CoefficientRing::Mod2))
    }
    fn one() -> Self {
        F2Laurent(LaurentPolynomial::one(1, CoefficientRing::Mod2))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        F2Laurent(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        F2Laurent(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        F2Laurent(&self.0 * &o.0)
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let (va, a) = lowest_to_zero(&self.0);
        let (vd, dd) = lowest_to_zero(&d.0);
        let (_, deg_d) = dd.degree_range().expect("nonzero");
        let mut rem = a;
        let mut q = LaurentPolynomial::zero(1, CoefficientRing::Mod2);
        while let Some((_, hi)) = rem.degree_range() {
            if hi < deg_d {
                break;
            }
            let step = LaurentPolynomial::univariate(CoefficientRing::Mod2, [(hi - deg_d, 1)]);
            rem = &rem - &(&step * &dd);
            q = q + step;
        }
        // self = t^va (q dd + rem) = (t^{va-vd} q) d + t^va rem
        (F2Laurent(q.shift(&[va - vd])), F2Laurent(rem.shift(&[va])))
    }
    fn norm(&self) -> u64 {
        self.0.span().unwrap_or(0) as u64
    }
    fn is_unit(&self) -> bool {
        self.0.is_monomial()
    }
    fn canonical(&self) -> (Self, Self) {
        if self.is_zero() {
            return (Self::one(), self.clone());
        }
        let (lo, shifted) = lowest_to_zero(&self.0);
        (
            F2Laurent(LaurentPolynomial::univariate(
                CoefficientRing::Mod2,
                [(-lo, 1)],
            )),
            F2Laurent(shifted),
        )
    }
}

/// Element of ℚ[t^±].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalLaurent {
    terms: BTreeMap<i64, BigRational>,
}

impl RationalLaurent {
    pub fn from_integer_poly(p: &LaurentPolynomial) -> Self {
        assert_eq!(p.nvars(), 1);
        let mut r = RationalLaurent::default();
        for (e, c) in p.terms() {
            r.add_term(e[0], BigRational::from_integer(c.clone()));
        }
        r
    }

    pub fn monomial(e: i64, c: BigRational) -> Self {
        let mut r = RationalLaurent::default();
        r.add_term(e, c);
        r
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        let v = self.terms.entry(e).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coefficient(&self, e: i64) -> BigRational {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn range(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    fn shift(&self, s: i64) -> Self {
        RationalLaurent {
            terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect(),
        }
    }

    /// Equal to an integer polynomial up to scaling? Used to compare with
    /// integer data.
    pub fn is_associate_of(&self, p: &LaurentPolynomial) -> bool {
        let other = RationalLaurent::from_integer_poly(p);
        self.canonical().1 == other.canonical().1
    }
}

impl fmt::Display for RationalLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl EuclideanDomain for RationalLaurent {
    fn zero() -> Self {
        RationalLaurent::default()
    }
    fn one() -> Self {
        RationalLaurent::monomial(0, BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
    fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
    fn mul(&self, o: &Self) -> Self {
        let mut r = RationalLaurent::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let Some((va, _)) = self.range() else {
            return (Self::zero(), Self::zero());
        };
        let (vd, hd) = d.range().expect("nonzero divisor");
        let dd = d.shift(-vd);
        let deg_d = hd - vd;
        let lead = dd.coefficient(deg_d);
        let mut rem = self.shift(-va);
        let mut q = RationalLaurent::default();
        while let Some((_, hi)) = rem.range() {
            if hi < deg_d {
                break;
            }
            let step = RationalLaurent::monomial(hi - deg_d, rem.coefficient(hi) / &lead);
            rem = rem.sub(&step.mul(&dd));
            q = q.add(&step);
        }
        (q.shift(va - vd), rem.shift(va))
    }
    fn norm(&self) -> u64 {
        self.range().map(|(lo, hi)| (hi - lo) as u64).unwrap_or(0)
    }
    fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }
    fn canonical(&self) -> (Self, Self) {
        let Some((lo, hi)) = self.range() else {
            return (Self::one(), self.clone());
        };
        let u = RationalLaurent::monomial(-lo, self.coefficient(hi).recip());
        let c = u.mul(self);
        (u, c)
    }
}

/// `left * input * right = diag(diagonal)` with each diagonal entry
/// dividing the next.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm<R> {
    pub diagonal: Vec<R>,
    pub left: Vec<Vec<R>>,
    pub right: Vec<Vec<R>>,
}

fn identity<R: EuclideanDomain>(n: usize) -> Vec<Vec<R>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { R::one() } else { R::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul<R: EuclideanDomain>(a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).fold(R::zero(), |acc, k| acc.add(&row[k].mul(&b[k][c]))))
                .collect()
        })
        .collect()
}

/// Smith normal form with transforms over any [`EuclideanDomain`].
pub fn smith_normal_form<R: EuclideanDomain>(m: &[Vec<R>]) -> SmithForm<R> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<R>> = m.to_vec();
    let mut u = identity::<R>(rows);
    let mut v = identity::<R>(cols);

    let row_axpy = |mat: &mut Vec<Vec<R>>, target: usize, src: usize, q: &R| {
        let (t, s) = (mat[target].clone(), &mat[src]);
        mat[target] = t.iter().zip(s).map(|(x, y)| x.sub(&q.mul(y))).collect();
    };
    let col_axpy = |mat: &mut Vec<Vec<R>>, target: usize, src: usize, q: &R| {
        for row in mat.iter_mut() {
            let y = row[src].clone();
            row[target] = row[target].sub(&q.mul(&y));
        }
    };

    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize, u64)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.is_none_or(|(_, _, n)| x.norm() < n) {
                        best = Some((i, j, x.norm()));
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break;
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in (t + 1)..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].div_rem(&pivot);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= r.is_zero();
            }
            for j in (t + 1)..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].div_rem(&pivot);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].div_rem(&pivot).1.is_zero()));
            match offender {
                Some(i) => {
                    let minus_one = R::zero().sub(&R::one());
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        let (unit, canon) = a[t][t].canonical();
        if !a[t][t].is_zero() {
            a[t][t] = canon;
            u[t] = u[t].iter().map(|x| unit.mul(x)).collect();
        }
    }
    SmithForm {
        diagonal: (0..steps).map(|i| a[i][i].clone()).collect(),
        left: u,
        right: v,
    }
}

/// Determinant by fraction-free elimination.
pub fn determinant<R: EuclideanDomain>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut a = m.to_vec();
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return R::zero();
        };
        if p != k {
            a.swap(p, k);
            sign_flip = !sign_flip;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        R::zero().sub(&d)
    } else {
        d
    }
}

/// Smith normal form over ℤ.
pub fn smith_normal_form_integer(m: &[Vec<BigInt>]) -> SmithForm<BigInt> {
    smith_normal_form(m)
}

/// Smith normal form of a univariate Laurent matrix: over 𝔽₂[t^±] for mod-2
/// input, over ℚ[t^±] for integer input.
#[derive(Clone, Debug, PartialEq)]
pub enum LaurentSmithForm {
    Mod2(SmithForm<F2Laurent>),
    Rational(SmithForm<RationalLaurent>),
}

impl LaurentSmithForm {
    pub fn diagonal_strings(&self) -> Vec<String> {
        match self {
            LaurentSmithForm::Mod2(s) => s.diagonal.iter().map(ToString::to_string).collect(),
            LaurentSmithForm::Rational(s) => s.diagonal.iter().map(ToString::to_string).collect(),
        }
    }
}

pub fn smith_normal_form_laurent(m: &PolyMatrix) -> Result<LaurentSmithForm> {
    if m.nvars() != 1 {
        return Err(Error::UnsupportedRing(format!(
            "Smith normal form needs a principal ideal domain; {} variables given",
            m.nvars()
        )));
    }
    let rows = (0..m.rows()).map(|r| m.row(r).to_vec());
    Ok(match m.ring() {
        CoefficientRing::Mod2 => LaurentSmithForm::Mod2(smith_normal_form(
            &rows
                .map(|r| r.iter().map(F2Laurent::new).collect())
                .collect::<Vec<_>>(),
        )),
        CoefficientRing::Integers => LaurentSmithForm::Rational(smith_normal_form(
            &rows
                .map(|r| r.iter().map(RationalLaurent::from_integer_poly).collect())
                .collect::<Vec<_>>(),
        )),
    })
}

/// Greatest common divisor in ℚ[t^±] of univariate integer polynomials,
/// as the canonical associate (lowest exponent 0, monic).
pub fn rational_gcd(polys: &[LaurentPolynomial]) -> RationalLaurent {
    let row: Vec<RationalLaurent> = polys
        .iter()
        .map(RationalLaurent::from_integer_poly)
        .collect();
    if row.is_empty() {
        return RationalLaurent::zero();
    }
    smith_normal_form(&[row]).diagonal[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn check<R: EuclideanDomain>(m: &[Vec<R>], s: &SmithForm<R>) {
        let prod = mat_mul(&mat_mul(&s.left, m), &s.right);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &s.diagonal[i]);
                } else {
                    assert!(x.is_zero(), "off-diagonal entry {x} at ({i},{j})");
                }
            }
        }
        for w in s.diagonal.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero());
                assert!(w[1].div_rem(&w[0]).1.is_zero());
            }
        }
        assert!(determinant(&s.left).is_unit());
        assert!(determinant(&s.right).is_unit());
    }

    #[test]
    fn diag_two_three() {
        let m = vec![vec![z(2), z(0)], vec![z(0), z(3)]];
        let s = smith_normal_form_integer(&m);
        assert_eq!(s.diagonal, vec![z(1), z(6)]);
        check(&m, &s);
    }

    #[test]
    fn zero_matrix() {
        let m = vec![vec![z(0); 3]; 2];
        let s = smith_normal_form_integer(&m);
        assert!(s.diagonal.iter().all(Zero::is_zero));
        check(&m, &s);
    }

    #[test]
    fn integer_example() {
        let m = vec![
            vec![z(2), z(4), z(4)],
            vec![z(-6), z(6), z(12)],
            vec![z(10), z(-4), z(-16)],
        ];
        let s = smith_normal_form_integer(&m);
        assert_eq!(s.diagonal, vec![z(2), z(6), z(12)]);
        check(&m, &s);
    }

    #[test]
    fn f2_single_entry() {
        let p = LaurentPolynomial::parse_univariate("t - 1", CoefficientRing::Mod2).unwrap();
        let m = PolyMatrix::from_rows(vec![vec![p.clone()]], 1, 1, CoefficientRing::Mod2).unwrap();
        let LaurentSmithForm::Mod2(s) = smith_normal_form_laurent(&m).unwrap() else {
            panic!("expected mod 2 form");
        };
        assert_eq!(s.diagonal, vec![F2Laurent::new(&p)]);
        assert!(!s.diagonal[0].is_unit());
    }

    #[test]
    fn rational_laurent_gcd() {
        let p =
            |s: &str| LaurentPolynomial::parse_univariate(s, CoefficientRing::Integers).unwrap();
        let g = rational_gcd(&[p("t^2 - 1"), p("t^-1 - t")]);
        assert!(g.is_associate_of(&p("t - 1")) || g.is_associate_of(&p("t^2 - 1")));
        assert!(g.is_associate_of(&p("t^2 - 1")));
        let g = rational_gcd(&[p("t - 1"), p("3*t^-4 - 3*t^-3")]);
        assert!(g.is_associate_of(&p("t - 1")));
        let m = vec![
            vec![
                RationalLaurent::from_integer_poly(&p("t - 1")),
                RationalLaurent::from_integer_poly(&p("t^2 - 1")),
            ],
            vec![
                RationalLaurent::from_integer_poly(&p("2*t^3")),
                RationalLaurent::from_integer_poly(&p("t + 1")),
            ],
        ];
        check(&m, &smith_normal_form(&m));
    }

    #[test]
    fn multivariate_rejected() {
        let m = PolyMatrix::zeros(1, 1, 2, CoefficientRing::Integers);
        assert!(matches!(
            smith_normal_form_laurent(&m),
            Err(Error::UnsupportedRing(_))
        ));
    }
}
