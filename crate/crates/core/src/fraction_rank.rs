//! Ranks over the fraction field of a Laurent ring by random evaluation.
//!
//! Integer matrices are evaluated at random nonzero integer points and
//! reduced exactly over ℚ. Mod-2 matrices are evaluated in GF(2^64), which
//! is large enough that a degenerate point is vanishingly unlikely. A rank
//! is accepted once `agreement` consecutive points give the same value.

use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::laurent::{CoefficientRing, LaurentPolynomial};
use crate::matrix::{rank_rational, PolyMatrix};

pub const DEFAULT_SEED: u64 = 0x5eed_2009;

#[derive(Clone, Debug)]
pub struct RankEvaluator {
    rng: ChaCha8Rng,
    pub agreement: usize,
    pub max_attempts: usize,
    pub sample_bound: i64,
}

impl Default for RankEvaluator {
    fn default() -> Self {
        Self::seeded(DEFAULT_SEED)
    }
}

impl RankEvaluator {
    pub fn seeded(seed: u64) -> Self {
        RankEvaluator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            agreement: 3,
            max_attempts: 8,
            sample_bound: 1000,
        }
    }

    fn integer_point(&mut self, nvars: usize) -> Vec<BigRational> {
        (0..nvars)
            .map(|_| loop {
                let v = self.rng.gen_range(-self.sample_bound..=self.sample_bound);
                if v != 0 && v != 1 {
                    break BigRational::from_integer(BigInt::from(v));
                }
            })
            .collect()
    }

    fn gf_point(&mut self, nvars: usize) -> Vec<Gf64> {
        (0..nvars)
            .map(|_| loop {
                let v: u64 = self.rng.gen();
                if v > 1 {
                    break Gf64(v);
                }
            })
            .collect()
    }

    fn rank_once(&mut self, m: &PolyMatrix) -> usize {
        match m.ring() {
            CoefficientRing::Integers => {
                let pt = self.integer_point(m.nvars());
                rank_rational(m.eval_rational(&pt))
            }
            CoefficientRing::Mod2 => {
                let pt = self.gf_point(m.nvars());
                let rows = (0..m.rows())
                    .map(|r| m.row(r).iter().map(|e| eval_gf(e, &pt)).collect())
                    .collect();
                rank_gf(rows)
            }
        }
    }

    /// Rank of `m` over the fraction field of its coefficient ring.
    pub fn rank(&mut self, m: &PolyMatrix) -> Result<usize> {
        if m.rows() == 0 || m.cols() == 0 {
            return Ok(0);
        }
        if m.nvars() == 0 {
            return Ok(self.rank_once(m));
        }
        let mut attempts = 0;
        while attempts < self.max_attempts {
            attempts += 1;
            let first = self.rank_once(m);
            if (1..self.agreement).all(|_| self.rank_once(m) == first) {
                return Ok(first);
            }
        }
        Err(Error::RetryExhausted(attempts))
    }
}

/// Element of GF(2^64) = 𝔽₂[x]/(x^64 + x^4 + x^3 + x + 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf64(pub u64);

impl Mul for Gf64 {
    type Output = Gf64;
    fn mul(self, other: Gf64) -> Gf64 {
        self.times(other)
    }
}

impl Gf64 {
    pub const ZERO: Gf64 = Gf64(0);
    pub const ONE: Gf64 = Gf64(1);

    fn times(self, other: Gf64) -> Gf64 {
        let mut prod: u128 = 0;
        let a = self.0 as u128;
        let mut b = other.0;
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                prod ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        // fold the high half twice: x^64 ≡ x^4 + x^3 + x + 1
        for _ in 0..2 {
            let hi = prod >> 64;
            prod = (prod & u64::MAX as u128) ^ hi ^ (hi << 1) ^ (hi << 3) ^ (hi << 4);
        }
        Gf64(prod as u64)
    }

    pub fn pow(self, mut e: u64) -> Gf64 {
        let mut base = self;
        let mut acc = Gf64::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Gf64 {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(u64::MAX - 1)
    }

    pub fn powi(self, e: i64) -> Gf64 {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv().pow(e.unsigned_abs())
        }
    }
}

fn eval_gf(p: &LaurentPolynomial, pt: &[Gf64]) -> Gf64 {
    let two = BigInt::from(2);
    let mut acc = Gf64::ZERO;
    for (e, c) in p.terms() {
        if (c % &two).is_zero() {
            continue;
        }
        let mono = e
            .iter()
            .zip(pt)
            .fold(Gf64::ONE, |m, (&k, &x)| m.mul(x.powi(k)));
        acc = Gf64(acc.0 ^ mono.0);
    }
    acc
}

fn rank_gf(mut m: Vec<Vec<Gf64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != Gf64::ZERO) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv();
        for r in (rank + 1)..rows {
            if m[r][c] == Gf64::ZERO {
                continue;
            }
            let f = m[r][c].mul(inv);
            #[allow(clippy::needless_range_loop)]
            for k in c..cols {
                let v = f.mul(m[rank][k]);
                m[r][k] = Gf64(m[r][k].0 ^ v.0);
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

    #[test]
    fn gf_field_axioms_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = Gf64(rng.gen::<u64>() | 1);
            let b = Gf64(rng.gen());
            let c = Gf64(rng.gen());
            assert_eq!(a.mul(a.inv()), Gf64::ONE);
            assert_eq!(a.mul(b), b.mul(a));
            assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
            assert_eq!(a.mul(Gf64(b.0 ^ c.0)).0, a.mul(b).0 ^ a.mul(c).0);
            assert_eq!(a.pow(u64::MAX), Gf64::ONE);
        }
    }

    #[test]
    fn ranks_of_small_matrices() {
        let p = |s: &str, ring| LaurentPolynomial::parse_with(s, &["t1", "t2"], ring).unwrap();
        for ring in [CoefficientRing::Integers, CoefficientRing::Mod2] {
            // [t1-1, t2-1; (t1-1)(t2-1), (t2-1)^2] has rank 1
            let m = PolyMatrix::from_rows(
                vec![
                    vec![p("t1 - 1", ring), p("t2 - 1", ring)],
                    vec![p("t1*t2 - t1 - t2 + 1", ring), p("t2^2 - 2*t2 + 1", ring)],
                ],
                2,
                2,
                ring,
            )
            .unwrap();
            let mut ev = RankEvaluator::seeded(1);
            assert_eq!(ev.rank(&m).unwrap(), 1);
            let id = PolyMatrix::identity(3, 2, ring);
            assert_eq!(ev.rank(&id).unwrap(), 3);
        }
    }

    #[test]
    fn mod2_sees_cancellation() {
        // 2*t1 vanishes mod 2 but not over ℤ
        let ip = LaurentPolynomial::parse_with("2*t1", &["t1", "t2"], CoefficientRing::Integers)
            .unwrap();
        let m = PolyMatrix::from_rows(vec![vec![ip]], 1, 2, CoefficientRing::Integers).unwrap();
        let mut ev = RankEvaluator::default();
        assert_eq!(ev.rank(&m).unwrap(), 1);
        assert_eq!(ev.rank(&m.reduce_mod2()).unwrap(), 0);
    }
}
