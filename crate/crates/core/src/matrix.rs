//! Dense matrices of Laurent polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{CoefficientRing, LaurentPolynomial};

/// A `rows × cols` matrix over `ring[t1^±, …, t_nvars^±]`, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    ring: CoefficientRing,
    entries: Vec<LaurentPolynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize, ring: CoefficientRing) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            ring,
            entries: vec![LaurentPolynomial::zero(nvars, ring); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize, ring: CoefficientRing) -> Self {
        let mut m = Self::zeros(n, n, nvars, ring);
        for i in 0..n {
            m.set(i, i, LaurentPolynomial::one(nvars, ring));
        }
        m
    }

    /// Build from rows; every entry must share `nvars` and `ring`.
    pub fn from_rows(
        rows: Vec<Vec<LaurentPolynomial>>,
        cols: usize,
        nvars: usize,
        ring: CoefficientRing,
    ) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for e in row {
                if e.nvars() != nvars || e.ring() != ring {
                    return Err(Error::RingMismatch(format!(
                        "entry `{e}` is not in {ring}[{nvars} variables]"
                    )));
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix {
            rows: nrows,
            cols,
            nvars,
            ring,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPolynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: LaurentPolynomial) {
        debug_assert_eq!(v.nvars(), self.nvars);
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[LaurentPolynomial] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<LaurentPolynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPolynomial::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.nvars, self.ring);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(&LaurentPolynomial) -> LaurentPolynomial) -> Self {
        let entries: Vec<_> = self.entries.iter().map(f).collect();
        let (nvars, ring) = entries
            .first()
            .map(|e| (e.nvars(), e.ring()))
            .unwrap_or((self.nvars, self.ring));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars,
            ring,
            entries,
        }
    }

    pub fn reduce_mod2(&self) -> Self {
        let mut m = self.map(LaurentPolynomial::reduce_mod2);
        m.ring = CoefficientRing::Mod2;
        m
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.nvars != other.nvars || self.ring != other.ring {
            return Err(Error::RingMismatch("matrix product across rings".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.nvars, self.ring);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.entries[idx] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Evaluate every entry at a rational point.
    pub fn eval_rational(&self, point: &[BigRational]) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|e| e.eval_rational(point)).collect())
            .collect()
    }

    /// Row-major entries rendered in the polynomial text format.
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|e| e.to_string()).collect())
            .collect()
    }

    /// Inverse of [`PolyMatrix::entry_strings`].
    pub fn parse_rows(
        rows: &[Vec<String>],
        cols: usize,
        nvars: usize,
        ring: CoefficientRing,
    ) -> Result<Self> {
        let names = crate::laurent::default_names(nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let parsed = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| LaurentPolynomial::parse_with(s, &refs, ring))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed, cols, nvars, ring)
    }

    /// Apply the augmentation to every entry.
    pub fn augment(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(LaurentPolynomial::augmentation)
                    .collect()
            })
            .collect()
    }
}

impl Serialize for PolyMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PolyMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &self.entry_strings())?;
        st.end()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Exact rank of a rational matrix by Gaussian elimination.
pub fn rank_rational(mut m: Vec<Vec<BigRational>>) -> usize {
    use num_traits::Zero;
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in (rank + 1)..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] / &pivot;
            #[allow(clippy::needless_range_loop)]
            for k in c..cols {
                let v = &factor * &m[rank][k];
                m[r][k] -= v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use CoefficientRing::Integers;

    fn p(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse_univariate(s, Integers).unwrap()
    }

    #[test]
    fn product_and_transpose() {
        let a = PolyMatrix::from_rows(vec![vec![p("t"), p("1")]], 2, 1, Integers).unwrap();
        let b = a.transpose();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.get(0, 0), &p("t^2 + 1"));
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn rows_must_have_equal_length() {
        let r = PolyMatrix::from_rows(vec![vec![p("t")], vec![]], 1, 1, Integers);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn rational_rank() {
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(rank_rational(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank_rational(vec![vec![q(0), q(1)], vec![q(1), q(0)]]), 2);
        assert_eq!(rank_rational(vec![vec![q(0), q(0)]]), 0);
    }

    #[test]
    fn text_round_trip() {
        let m = PolyMatrix::from_rows(
            vec![vec![p("t - 1"), p("0")], vec![p("-t^-2"), p("3")]],
            2,
            1,
            Integers,
        )
        .unwrap();
        let back = PolyMatrix::parse_rows(&m.entry_strings(), 2, 1, Integers).unwrap();
        assert_eq!(back, m);
    }
}
