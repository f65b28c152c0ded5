//! Free chain complexes over Laurent rings, the Koszul resolution of ℤ,
//! syzygy presentations and bigraded truncation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction_rank::RankEvaluator;
use crate::laurent::{CoefficientRing, LaurentPolynomial};
use crate::matrix::PolyMatrix;

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn wedge_label(s: &[usize]) -> String {
    if s.is_empty() {
        return "1".to_string();
    }
    s.iter()
        .map(|i| format!("e{}", i + 1))
        .collect::<Vec<_>>()
        .join("^")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub label: String,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub grading: BigRational,
    /// `(i, j)` filtration levels when the complex is bigraded.
    pub bigrading: Option<(i64, i64)>,
}

/// A bounded chain complex of free modules; `d_p : C_p → C_{p-1}` is a
/// `rank(p-1) × rank(p)` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
    nvars: usize,
    ring: CoefficientRing,
    low: i64,
    generators: Vec<Vec<Generator>>,
    differentials: Vec<PolyMatrix>,
}

impl FreeComplex {
    /// `differentials[k]` is `d_{low+k}`; checks shapes and `d∘d = 0`.
    pub fn new(
        nvars: usize,
        ring: CoefficientRing,
        low: i64,
        generators: Vec<Vec<Generator>>,
        differentials: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if generators.len() != differentials.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} positions but {} differentials",
                generators.len(),
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            let below = if k == 0 { 0 } else { generators[k - 1].len() };
            if d.rows() != below || d.cols() != generators[k].len() {
                return Err(Error::DimensionMismatch(format!(
                    "d at position {} is {}x{}, expected {}x{}",
                    low + k as i64,
                    d.rows(),
                    d.cols(),
                    below,
                    generators[k].len()
                )));
            }
            if d.nvars() != nvars || d.ring() != ring {
                return Err(Error::RingMismatch(format!(
                    "differential at position {} lives in the wrong ring",
                    low + k as i64
                )));
            }
        }
        for k in 1..differentials.len() {
            if !differentials[k - 1].mul(&differentials[k])?.is_zero() {
                return Err(Error::NotAComplex(low + k as i64));
            }
        }
        Ok(FreeComplex {
            nvars,
            ring,
            low,
            generators,
            differentials,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.generators.len() as i64 - 1
    }

    pub fn positions(&self) -> std::ops::RangeInclusive<i64> {
        self.low..=self.high()
    }

    fn index(&self, p: i64) -> Option<usize> {
        (p >= self.low && p <= self.high()).then(|| (p - self.low) as usize)
    }

    pub fn rank(&self, p: i64) -> usize {
        self.index(p).map_or(0, |k| self.generators[k].len())
    }

    pub fn generators(&self, p: i64) -> &[Generator] {
        self.index(p).map_or(&[], |k| &self.generators[k])
    }

    /// `d_p`, or a zero matrix of the right shape outside the stored range.
    pub fn differential(&self, p: i64) -> PolyMatrix {
        match self.index(p) {
            Some(k) => self.differentials[k].clone(),
            None => PolyMatrix::zeros(self.rank(p - 1), self.rank(p), self.nvars, self.ring),
        }
    }

    pub fn total_rank(&self) -> usize {
        self.generators.iter().map(Vec::len).sum()
    }

    pub fn reduce_mod2(&self) -> FreeComplex {
        FreeComplex {
            ring: CoefficientRing::Mod2,
            differentials: self
                .differentials
                .iter()
                .map(PolyMatrix::reduce_mod2)
                .collect(),
            ..self.clone()
        }
    }

    /// Evaluate every differential at `t_i = 1`.
    pub fn augmented_differentials(&self) -> BTreeMap<i64, Vec<Vec<BigInt>>> {
        self.positions()
            .zip(&self.differentials)
            .map(|(p, d)| (p, d.augment()))
            .collect()
    }

    /// Keep the generators selected by `keep`, taking the corresponding
    /// submatrices of every differential.
    fn restrict(&self, keep: impl Fn(&Generator) -> bool) -> FreeComplex {
        let kept: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|gens| (0..gens.len()).filter(|&x| keep(&gens[x])).collect())
            .collect();
        let generators = self
            .generators
            .iter()
            .zip(&kept)
            .map(|(g, idx)| idx.iter().map(|&x| g[x].clone()).collect())
            .collect();
        let differentials = (0..self.generators.len())
            .map(|k| {
                let rows: &[usize] = if k == 0 { &[] } else { &kept[k - 1] };
                let cols = &kept[k];
                let mut m = PolyMatrix::zeros(rows.len(), cols.len(), self.nvars, self.ring);
                for (r, &rr) in rows.iter().enumerate() {
                    for (c, &cc) in cols.iter().enumerate() {
                        m.set(r, c, self.differentials[k].get(rr, cc).clone());
                    }
                }
                m
            })
            .collect();
        FreeComplex {
            generators,
            differentials,
            ..self.clone()
        }
    }

    /// Whether every differential entry from a generator satisfying `from`
    /// to one failing it vanishes, i.e. the selected set spans a subcomplex.
    fn closed_under_d(&self, from: impl Fn(&Generator) -> bool) -> bool {
        (1..self.generators.len()).all(|k| {
            let d = &self.differentials[k];
            (0..d.cols()).all(|c| {
                !from(&self.generators[k][c])
                    || (0..d.rows())
                        .all(|r| from(&self.generators[k - 1][r]) || d.get(r, c).is_zero())
            })
        })
    }
}

#[derive(Serialize)]
struct ComplexJson {
    positions: [i64; 2],
    ranks: Vec<usize>,
    generators: Vec<Vec<Generator>>,
    differentials: BTreeMap<i64, Vec<Vec<String>>>,
}

impl Serialize for FreeComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson {
            positions: [self.low, self.high()],
            ranks: self.generators.iter().map(Vec::len).collect(),
            generators: self.generators.clone(),
            differentials: self
                .positions()
                .zip(&self.differentials)
                .map(|(p, d)| (p, d.entry_strings()))
                .collect(),
        }
        .serialize(s)
    }
}

impl fmt::Display for FreeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.positions() {
            writeln!(f, "position {p}: rank {}", self.rank(p))?;
            let d = self.differential(p);
            if d.rows() > 0 && d.cols() > 0 {
                write!(f, "{d}")?;
            }
        }
        Ok(())
    }
}

/// The Koszul complex of `(t_1 - 1, …, t_{2g} - 1)` over `R[t^±]` in `2g`
/// variables, which resolves ℤ. Position `ℓ` holds `Λ^ℓ`, graded `ℓ - g`.
pub fn koszul_complex(g: i64, ring: CoefficientRing) -> Result<FreeComplex> {
    if g < 1 {
        return Err(Error::out_of_range("g", g, "g >= 1"));
    }
    let n = 2 * g as usize;
    let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|l| subsets(n, l)).collect();
    let generators = bases
        .iter()
        .enumerate()
        .map(|(l, b)| {
            b.iter()
                .map(|s| Generator {
                    label: wedge_label(s),
                    grading: BigRational::from_integer(BigInt::from(l as i64 - g)),
                    bigrading: None,
                })
                .collect()
        })
        .collect();
    let mut differentials = vec![PolyMatrix::zeros(0, 1, n, ring)];
    for l in 1..=n {
        let index: BTreeMap<&Vec<usize>, usize> = bases[l - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut d = PolyMatrix::zeros(bases[l - 1].len(), bases[l].len(), n, ring);
        for (c, s) in bases[l].iter().enumerate() {
            for (k, &x) in s.iter().enumerate() {
                let mut face = s.clone();
                face.remove(k);
                let entry = LaurentPolynomial::var_minus_one(n, ring, x);
                let entry = if k % 2 == 0 { entry } else { -entry };
                d.set(index[&face], c, entry);
            }
        }
        differentials.push(d);
    }
    FreeComplex::new(n, ring, 0, generators, differentials)
}

/// Homology ranks over the fraction field:
/// `rank C_p - rank d_p - rank d_{p+1}` at each position.
pub fn fraction_field_homology_ranks(
    c: &FreeComplex,
    ev: &mut RankEvaluator,
) -> Result<BTreeMap<i64, usize>> {
    let mut d_ranks = BTreeMap::new();
    for p in c.low()..=c.high() + 1 {
        d_ranks.insert(p, ev.rank(&c.differential(p))?);
    }
    Ok(c.positions()
        .map(|p| (p, c.rank(p) - d_ranks[&p] - d_ranks[&(p + 1)]))
        .collect())
}

/// A module given by generators and relations: rows of `relation_matrix`
/// are relations among the generators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PresentedModule {
    pub name: String,
    pub generator_count: usize,
    pub relation_matrix: PolyMatrix,
    #[serde(serialize_with = "crate::rational::serialize_vec")]
    pub generator_degrees: Vec<BigRational>,
    /// For `Z_ℓ` with `ℓ ≥ 1`: the embedding into `Λ^{ℓ-1}`, one column per
    /// generator.
    #[serde(skip)]
    pub embedding: Option<PolyMatrix>,
}

impl PresentedModule {
    /// Whether the element with the given generator coefficients is zero.
    /// Exact for syzygy modules; other modules return `None`.
    pub fn represents_zero(&self, coefficients: &[LaurentPolynomial]) -> Option<bool> {
        assert_eq!(coefficients.len(), self.generator_count);
        match &self.embedding {
            Some(e) => {
                let nvars = e.nvars();
                let col = PolyMatrix::from_rows(
                    coefficients.iter().map(|c| vec![c.clone()]).collect(),
                    1,
                    nvars,
                    e.ring(),
                )
                .ok()?;
                Some(e.mul(&col).ok()?.is_zero())
            }
            None if self.name == "Z0" => {
                let aug = coefficients[0].augmentation();
                Some(match self.relation_matrix.ring() {
                    CoefficientRing::Integers => aug.is_zero(),
                    CoefficientRing::Mod2 => (aug % 2u8).is_zero(),
                })
            }
            None => None,
        }
    }

    pub fn is_free(&self) -> bool {
        self.relation_matrix.rows() == 0
    }
}

/// `Z_ℓ = im(Λ^ℓ → Λ^{ℓ-1}) = ker(Λ^{ℓ-1} → Λ^{ℓ-2})` presented on the
/// images of the `Λ^ℓ` basis, with relations the columns of `d_{ℓ+1}`.
/// `Z_0 = ℤ` and `Z_{2g}` is free of rank one.
pub fn syzygy_presentation(l: i64, g: i64, ring: CoefficientRing) -> Result<PresentedModule> {
    if g < 1 {
        return Err(Error::out_of_range("g", g, "g >= 1"));
    }
    if l < 0 || l > 2 * g {
        return Err(Error::out_of_range("l", l, format!("0 <= l <= {}", 2 * g)));
    }
    let k = koszul_complex(g, ring)?;
    let relation_matrix = k.differential(l + 1).transpose();
    Ok(PresentedModule {
        name: format!("Z{l}"),
        generator_count: k.rank(l),
        relation_matrix,
        generator_degrees: vec![BigRational::from_integer(BigInt::from(l - g)); k.rank(l)],
        embedding: (l >= 1).then(|| k.differential(l)),
    })
}

/// The four filtration regions of a bigraded complex, plus the trivial
/// ones. `k` is the knot-filtration cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "k")]
pub enum Region {
    /// `{i < 0 and j < k}`, a subcomplex.
    SubAnd(i64),
    /// `{i ≥ 0 or j ≥ k}`, a quotient complex.
    QuotientOr(i64),
    /// `{i < 0 or j < k}`, a subcomplex.
    SubOr(i64),
    /// `{i ≥ 0 and j ≥ k}`, a quotient complex.
    QuotientAnd(i64),
    Full,
    Empty,
}

impl Region {
    pub fn contains(&self, i: i64, j: i64) -> bool {
        match *self {
            Region::SubAnd(k) => i < 0 && j < k,
            Region::QuotientOr(k) => i >= 0 || j >= k,
            Region::SubOr(k) => i < 0 || j < k,
            Region::QuotientAnd(k) => i >= 0 && j >= k,
            Region::Full => true,
            Region::Empty => false,
        }
    }

    pub fn complement(&self) -> Region {
        match *self {
            Region::SubAnd(k) => Region::QuotientOr(k),
            Region::QuotientOr(k) => Region::SubAnd(k),
            Region::SubOr(k) => Region::QuotientAnd(k),
            Region::QuotientAnd(k) => Region::SubOr(k),
            Region::Full => Region::Empty,
            Region::Empty => Region::Full,
        }
    }

    pub fn is_subcomplex(&self) -> bool {
        matches!(
            self,
            Region::SubAnd(_) | Region::SubOr(_) | Region::Full | Region::Empty
        )
    }

    pub fn is_quotient(&self) -> bool {
        !matches!(self, Region::SubAnd(_) | Region::SubOr(_))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::SubAnd(k) => write!(f, "{{i<0 and j<{k}}}"),
            Region::QuotientOr(k) => write!(f, "{{i>=0 or j>={k}}}"),
            Region::SubOr(k) => write!(f, "{{i<0 or j<{k}}}"),
            Region::QuotientAnd(k) => write!(f, "{{i>=0 and j>={k}}}"),
            Region::Full => f.write_str("full"),
            Region::Empty => f.write_str("empty"),
        }
    }
}

impl std::str::FromStr for Region {
    type Err = Error;

    /// Accepts `sub-and:K`, `quotient-or:K`, `sub-or:K`, `quotient-and:K`,
    /// `full` and `empty`.
    fn from_str(s: &str) -> Result<Region> {
        let s = s.trim();
        match s {
            "full" => return Ok(Region::Full),
            "empty" => return Ok(Region::Empty),
            _ => {}
        }
        let (kind, k) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("region `{s}`: expected KIND:K")))?;
        let k: i64 = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("region `{s}`: bad cut value")))?;
        match kind.trim() {
            "sub-and" => Ok(Region::SubAnd(k)),
            "quotient-or" => Ok(Region::QuotientOr(k)),
            "sub-or" => Ok(Region::SubOr(k)),
            "quotient-and" => Ok(Region::QuotientAnd(k)),
            other => Err(Error::Parse(format!("unknown region kind `{other}`"))),
        }
    }
}

/// Restrict a bigraded complex to a region: the differential restricts on
/// subcomplex regions and projects on quotient regions.
pub fn truncate_region(c: &FreeComplex, r: Region) -> Result<FreeComplex> {
    let bigrading = |g: &Generator| {
        g.bigrading.ok_or_else(|| {
            Error::HypothesisViolation(format!("generator {} has no (i,j)", g.label))
        })
    };
    for p in c.positions() {
        for g in c.generators(p) {
            bigrading(g)?;
        }
    }
    let inside = |g: &Generator| {
        let (i, j) = g.bigrading.expect("checked");
        r.contains(i, j)
    };
    let closed = if r.is_subcomplex() {
        c.closed_under_d(inside)
    } else {
        c.closed_under_d(|g| !inside(g))
    };
    if !closed {
        return Err(Error::RegionNotClosed(r.to_string()));
    }
    Ok(c.restrict(inside))
}

#[cfg(test)]
mod tests {
    use super::*;
    use CoefficientRing::Integers;

    #[test]
    fn subsets_and_binomials() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(2, 3), Vec::<Vec<usize>>::new());
        for n in 0..9 {
            for k in 0..=n {
                assert_eq!(subsets(n, k).len(), binomial(n, k));
            }
        }
    }

    #[test]
    fn genus_one_koszul() {
        let k = koszul_complex(1, Integers).unwrap();
        let ranks: Vec<usize> = k.positions().map(|p| k.rank(p)).collect();
        assert_eq!(ranks, vec![1, 2, 1]);
        assert_eq!(
            k.differential(1).entry_strings(),
            vec![vec!["-1 + t1", "-1 + t2"]]
        );
        assert_eq!(
            k.differential(2).entry_strings(),
            vec![vec!["1 - t2"], vec!["-1 + t1"]]
        );
        for (_, m) in k.augmented_differentials() {
            assert!(m.iter().flatten().all(Zero::is_zero));
        }
        assert_eq!(
            k.generators(2)[0].grading,
            BigRational::from_integer(1.into())
        );
    }

    #[test]
    fn genus_two_ranks() {
        let k = koszul_complex(2, Integers).unwrap();
        let ranks: Vec<usize> = k.positions().map(|p| k.rank(p)).collect();
        assert_eq!(ranks, vec![1, 4, 6, 4, 1]);
        let mut ev = RankEvaluator::seeded(11);
        let d: Vec<usize> = (1..=4)
            .map(|p| ev.rank(&k.differential(p)).unwrap())
            .collect();
        assert_eq!(d, vec![1, 3, 3, 1]);
        let h = fraction_field_homology_ranks(&k, &mut ev).unwrap();
        assert!(h.values().all(|&r| r == 0));
    }

    #[test]
    fn zero_differentials_give_module_ranks() {
        let gens = |n: usize| {
            (0..n)
                .map(|x| Generator {
                    label: format!("x{x}"),
                    grading: BigRational::zero(),
                    bigrading: None,
                })
                .collect::<Vec<_>>()
        };
        let c = FreeComplex::new(
            1,
            Integers,
            0,
            vec![gens(2), gens(3)],
            vec![
                PolyMatrix::zeros(0, 2, 1, Integers),
                PolyMatrix::zeros(2, 3, 1, Integers),
            ],
        )
        .unwrap();
        let h = fraction_field_homology_ranks(&c, &mut RankEvaluator::default()).unwrap();
        assert_eq!(h.into_values().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn nonzero_square_rejected() {
        let one = LaurentPolynomial::one(1, Integers);
        let g = |l: &str| Generator {
            label: l.into(),
            grading: BigRational::zero(),
            bigrading: None,
        };
        let r = FreeComplex::new(
            1,
            Integers,
            0,
            vec![vec![g("a")], vec![g("b")], vec![g("c")]],
            vec![
                PolyMatrix::zeros(0, 1, 1, Integers),
                PolyMatrix::from_rows(vec![vec![one.clone()]], 1, 1, Integers).unwrap(),
                PolyMatrix::from_rows(vec![vec![one]], 1, 1, Integers).unwrap(),
            ],
        );
        assert_eq!(r, Err(Error::NotAComplex(2)));
    }

    #[test]
    fn syzygy_extremes() {
        let top = syzygy_presentation(4, 2, Integers).unwrap();
        assert_eq!(top.generator_count, 1);
        assert!(top.is_free());
        let z1 = syzygy_presentation(1, 1, Integers).unwrap();
        assert_eq!(z1.generator_count, 2);
        assert_eq!(
            z1.relation_matrix.entry_strings(),
            vec![vec!["1 - t2", "-1 + t1"]]
        );
        assert_eq!(
            z1.embedding.as_ref().unwrap().entry_strings(),
            vec![vec!["-1 + t1", "-1 + t2"]]
        );
        let z0 = syzygy_presentation(0, 2, Integers).unwrap();
        assert_eq!(z0.generator_count, 1);
        assert_eq!(z0.relation_matrix.rows(), 4);
        assert!(syzygy_presentation(5, 2, Integers).is_err());
        assert!(syzygy_presentation(-1, 2, Integers).is_err());
    }

    #[test]
    fn zero_test_in_syzygies() {
        let p = |s: &str| LaurentPolynomial::parse_with(s, &["t1", "t2"], Integers).unwrap();
        let z1 = syzygy_presentation(1, 1, Integers).unwrap();
        // (t2-1)·g1 - (t1-1)·g2 is the Koszul relation
        assert_eq!(z1.represents_zero(&[p("t2 - 1"), p("1 - t1")]), Some(true));
        assert_eq!(z1.represents_zero(&[p("1"), p("0")]), Some(false));
        let z0 = syzygy_presentation(0, 1, Integers).unwrap();
        assert_eq!(z0.represents_zero(&[p("t1 - t2")]), Some(true));
        assert_eq!(z0.represents_zero(&[p("t1")]), Some(false));
    }

    #[test]
    fn region_algebra() {
        for k in -3..=3 {
            for r in [Region::SubAnd(k), Region::SubOr(k)] {
                assert!(r.is_subcomplex());
                assert!(r.complement().is_quotient());
                assert_eq!(r.complement().complement(), r);
                for i in -3..=3 {
                    for j in -3..=3 {
                        assert_ne!(r.contains(i, j), r.complement().contains(i, j));
                    }
                }
            }
        }
        assert_eq!(
            "quotient-and:-1".parse::<Region>().unwrap(),
            Region::QuotientAnd(-1)
        );
        assert!("sideways:1".parse::<Region>().is_err());
    }
}
