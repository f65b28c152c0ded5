//! Formal calculus of relative invariants: group-ring module elements up to
//! units, knot-surgery multiplication, the `HF⁻(T³)` exterior-algebra model
//! with mapping-cylinder maps, fiber sums, and the rim-surgery verdict.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::circle_bundle::{hf_minus, Summand};
use crate::error::{Error, Result};
use crate::laurent::{z_squared, CoefficientRing, LaurentPolynomial};
use crate::novikov::{novikov_quotient, Direction, NovikovSeries};
use crate::rational::{int, q};
use crate::skein::{alexander_from_diagram, mod2_class, PlanarDiagram};

/// One spin^c component: an element of a free module over the group ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    #[serde(serialize_with = "crate::rational::serialize")]
    pub degree: BigRational,
    #[serde(serialize_with = "serialize_polys")]
    pub value: Vec<LaurentPolynomial>,
}

fn serialize_polys<S: serde::Serializer>(
    v: &[LaurentPolynomial],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

/// A relative invariant, defined up to an overall sign and a monomial in
/// the named circle classes when the corresponding flags are set.
#[derive(Clone, Debug, Serialize)]
pub struct FormalInvariant {
    pub ring: CoefficientRing,
    pub generators: Vec<String>,
    pub components: BTreeMap<String, Component>,
    pub sign_ambiguous: bool,
    pub unit_ambiguous: bool,
}

impl FormalInvariant {
    pub fn new(ring: CoefficientRing, generators: &[&str]) -> Self {
        FormalInvariant {
            ring,
            generators: generators.iter().map(|s| s.to_string()).collect(),
            components: BTreeMap::new(),
            sign_ambiguous: ring == CoefficientRing::Integers,
            unit_ambiguous: true,
        }
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    /// The generator of a free rank-one module in one spin^c structure.
    pub fn generator(
        ring: CoefficientRing,
        generators: &[&str],
        label: &str,
        degree: BigRational,
    ) -> Self {
        let mut inv = Self::new(ring, generators);
        let one = LaurentPolynomial::one(inv.nvars(), ring);
        inv.insert(label, degree, vec![one]).expect("shapes agree");
        inv
    }

    pub fn insert(
        &mut self,
        label: &str,
        degree: BigRational,
        value: Vec<LaurentPolynomial>,
    ) -> Result<()> {
        for p in &value {
            if p.nvars() != self.nvars() || p.ring() != self.ring {
                return Err(Error::RingMismatch(format!(
                    "component over {} in {} variables, invariant over {} in {}",
                    p.ring(),
                    p.nvars(),
                    self.ring,
                    self.nvars()
                )));
            }
        }
        self.components
            .insert(label.to_string(), Component { degree, value });
        Ok(())
    }

    pub fn component(&self, label: &str) -> Option<&Component> {
        self.components.get(label)
    }

    /// Reduction to `𝔽₂` coefficients; the sign ambiguity disappears.
    pub fn reduce_mod2(&self) -> Self {
        let mut out = self.map_values(|p| p.reduce_mod2());
        out.ring = CoefficientRing::Mod2;
        out.sign_ambiguous = false;
        out
    }

    fn map_values(&self, f: impl Fn(&LaurentPolynomial) -> LaurentPolynomial) -> Self {
        FormalInvariant {
            components: self
                .components
                .iter()
                .map(|(k, c)| {
                    (
                        k.clone(),
                        Component {
                            degree: c.degree.clone(),
                            value: c.value.iter().map(&f).collect(),
                        },
                    )
                })
                .collect(),
            generators: self.generators.clone(),
            ..*self
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring || self.generators != other.generators {
            return Err(Error::RingMismatch(format!(
                "{} on {:?} vs {} on {:?}",
                self.ring, self.generators, other.ring, other.generators
            )));
        }
        if self.components.len() != other.components.len() {
            return Err(Error::RankMismatch(
                self.components.len(),
                other.components.len(),
            ));
        }
        for (k, c) in &self.components {
            let Some(d) = other.components.get(k) else {
                return Err(Error::DimensionMismatch(format!(
                    "spin^c label {k} missing"
                )));
            };
            if c.value.len() != d.value.len() {
                return Err(Error::RankMismatch(c.value.len(), d.value.len()));
            }
        }
        Ok(())
    }

    fn entries(&self) -> impl Iterator<Item = &LaurentPolynomial> {
        self.components.values().flat_map(|c| c.value.iter())
    }
}

impl fmt::Display for FormalInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        for (k, c) in &self.components {
            let vals: Vec<String> = c.value.iter().map(|p| p.to_string_with(&names)).collect();
            writeln!(f, "[{k}] ({})", vals.join(", "))?;
        }
        Ok(())
    }
}

/// Whether `a = u·b` for a unit `u` allowed by the ambiguity flags.
pub fn unit_equivalent(a: &FormalInvariant, b: &FormalInvariant) -> Result<bool> {
    a.check_compatible(b)?;
    let sign_ok = a.sign_ambiguous || b.sign_ambiguous;
    let shift_ok = a.unit_ambiguous || b.unit_ambiguous;
    let pairs: Vec<(&LaurentPolynomial, &LaurentPolynomial)> =
        a.entries().zip(b.entries()).collect();
    let Some(&(x, y)) = pairs.iter().find(|(x, y)| !x.is_zero() || !y.is_zero()) else {
        return Ok(true);
    };
    let Some(u) = x.div_exact(y) else {
        return Ok(false);
    };
    if !u.is_monomial() {
        return Ok(false);
    }
    let (e, c) = u.terms().next().expect("monomial");
    if !shift_ok && e.iter().any(|&k| k != 0) {
        return Ok(false);
    }
    if !c.is_one() && !(sign_ok && c.abs().is_one()) {
        return Ok(false);
    }
    Ok(pairs.iter().all(|(x, y)| **x == &u * *y))
}

/// Multiply every component by `Δ(t)`, with `t` the named circle class.
/// Only available over `𝔽₂`, where the sign of the invariant is settled.
pub fn knot_surgery_multiply(
    inv: &FormalInvariant,
    alexander: &LaurentPolynomial,
    t_class: &str,
) -> Result<FormalInvariant> {
    if inv.ring != CoefficientRing::Mod2 {
        return Err(Error::SignAmbiguity(
            "knot-surgery multiplication needs F2 coefficients; reduce mod 2 first".into(),
        ));
    }
    let idx = inv
        .generators
        .iter()
        .position(|g| g == t_class)
        .ok_or_else(|| Error::UnknownGenerator(t_class.to_string()))?;
    let delta = alexander.reduce_mod2().embed(inv.nvars(), &[idx]);
    Ok(inv.map_values(|p| p * &delta))
}

/// `p·Ψ(1,0,0) + q·Ψ(0,1,0) + r·Ψ(0,0,1)`.
pub fn log_transform_combination(
    p: i64,
    qq: i64,
    r: i64,
    basis: [&FormalInvariant; 3],
) -> Result<FormalInvariant> {
    basis[0].check_compatible(basis[1])?;
    basis[0].check_compatible(basis[2])?;
    let mut out = basis[0].map_values(|x| x.scale(&BigInt::from(p)));
    for (inv, c) in [(basis[1], qq), (basis[2], r)] {
        for (k, comp) in out.components.iter_mut() {
            let other = &inv.components[k];
            for (x, y) in comp.value.iter_mut().zip(&other.value) {
                *x += &y.scale(&BigInt::from(c));
            }
        }
        out.sign_ambiguous |= inv.sign_ambiguous;
        out.unit_ambiguous |= inv.unit_ambiguous;
    }
    Ok(out)
}

/// Sum the components over a spin^c orbit and push the coefficients
/// through the quotient `hom` onto the `targets` generators (one row per
/// target, one column per old generator).
pub fn t_average(
    family: &FormalInvariant,
    orbit: &[&str],
    hom: &[Vec<i64>],
    targets: &[&str],
) -> Result<FormalInvariant> {
    let (&first, _) = orbit.split_first().ok_or(Error::EmptyOrbit)?;
    if hom.len() != targets.len() || hom.iter().any(|r| r.len() != family.nvars()) {
        return Err(Error::DimensionMismatch(format!(
            "projection must be {}x{}",
            targets.len(),
            family.nvars()
        )));
    }
    let get = |l: &str| {
        family
            .component(l)
            .ok_or_else(|| Error::DimensionMismatch(format!("spin^c label {l} missing")))
    };
    let head = get(first)?;
    let mut sum = head.value.clone();
    for l in &orbit[1..] {
        let c = get(l)?;
        if c.value.len() != sum.len() {
            return Err(Error::RankMismatch(sum.len(), c.value.len()));
        }
        for (x, y) in sum.iter_mut().zip(&c.value) {
            *x += y;
        }
    }
    let mut out = FormalInvariant::new(family.ring, targets);
    out.sign_ambiguous = family.sign_ambiguous;
    out.unit_ambiguous = family.unit_ambiguous;
    out.insert(
        first,
        head.degree.clone(),
        sum.iter().map(|p| p.push_forward(hom)).collect(),
    )?;
    Ok(out)
}

/// `⟨x, y⟩ = Σ xᵢ·ȳᵢ` summed over shared spin^c labels; antilinear in `y`.
pub fn pair_invariants(x: &FormalInvariant, y: &FormalInvariant) -> Result<LaurentPolynomial> {
    x.check_compatible(y)?;
    let mut acc = LaurentPolynomial::zero(x.nvars(), x.ring);
    for (a, b) in x.entries().zip(y.entries()) {
        acc += &(a * &b.involution());
    }
    Ok(acc)
}

/// Fiber-sum product after projecting out the rim tori:
/// `(t − 2 + t⁻¹)·o₁·o₂`.
pub fn fiber_sum_product(
    o1: &LaurentPolynomial,
    o2: &LaurentPolynomial,
) -> Result<LaurentPolynomial> {
    if o1.nvars() != 1 || o2.nvars() != 1 {
        return Err(Error::UnsupportedRing(
            "fiber sums live in one variable".into(),
        ));
    }
    if o1.ring() != o2.ring() {
        return Err(Error::RingMismatch(format!(
            "{} vs {}",
            o1.ring(),
            o2.ring()
        )));
    }
    Ok(&(&z_squared(o1.ring()) * o1) * o2)
}

pub fn fiber_sum_series(o1: &NovikovSeries, o2: &NovikovSeries) -> Result<NovikovSeries> {
    o1.mul(o2)?.mul_polynomial(&z_squared(o1.ring()))
}

/// Invariants of `S¹ × M_K` and of the knot-complement piece.
#[derive(Clone, Debug)]
pub struct S1CrossInvariant {
    /// `Δ / (t − 2 + t⁻¹)`
    pub closed: NovikovSeries,
    /// `Δ / (t − 1)`
    pub complement: NovikovSeries,
}

pub fn s1_cross_surgery_invariant(
    alexander: &LaurentPolynomial,
    direction: Direction,
    order: i64,
) -> Result<S1CrossInvariant> {
    let ring = alexander.ring();
    let t_minus_one = LaurentPolynomial::univariate(ring, [(0, -1), (1, 1)]);
    Ok(S1CrossInvariant {
        closed: novikov_quotient(alexander, &z_squared(ring), direction, order)?,
        complement: novikov_quotient(alexander, &t_minus_one, direction, order)?,
    })
}

/// A homogeneous class in `HF⁻(T³)`: `U^u` times an element of
/// `Λ²H¹` (degree `−3/2`) or `Λ¹H¹` (degree `−5/2`). The `Λ²` coordinates
/// are taken in the basis dual to the circles `c₁₀₀, c₀₁₀, c₀₀₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct T3Class {
    pub lambda2_part: [i64; 3],
    pub lambda1_part: [i64; 3],
    pub u_power: u32,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub degree: BigRational,
    pub sign_ambiguous: bool,
}

impl T3Class {
    pub fn new(lambda2: [i64; 3], lambda1: [i64; 3], u_power: u32) -> Result<Self> {
        let top = lambda2 != [0; 3];
        if top && lambda1 != [0; 3] {
            return Err(Error::DimensionMismatch(
                "a T3 class must lie in Lambda^2 or Lambda^1, not both".into(),
            ));
        }
        let base = if top || lambda1 == [0; 3] {
            q(-3, 2)
        } else {
            q(-5, 2)
        };
        Ok(T3Class {
            lambda2_part: lambda2,
            lambda1_part: lambda1,
            u_power,
            degree: base - int(2 * u_power as i64),
            sign_ambiguous: false,
        })
    }

    pub fn degree_is_consistent(&self) -> bool {
        T3Class::new(self.lambda2_part, self.lambda1_part, self.u_power)
            .is_ok_and(|c| c.degree == self.degree)
    }
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn gcd3(c: [i64; 3]) -> i64 {
    use num_integer::Integer;
    c[0].gcd(&c[1]).gcd(&c[2])
}

/// Contraction of the `Λ²` part with a circle `c`, as a `Λ¹` vector.
pub fn contract(c: [i64; 3], x: &T3Class) -> [i64; 3] {
    cross(x.lambda2_part, c)
}

/// The image of the top generator under the 2-handle along `c`: the `Λ²`
/// class Poincaré dual to `c`, defined up to sign.
pub fn t3_theta_image(c: [i64; 3]) -> Result<T3Class> {
    if gcd3(c) != 1 {
        return Err(Error::NonPrimitive(c));
    }
    let mut x = T3Class::new(c, [0; 3], 0)?;
    x.sign_ambiguous = true;
    Ok(x)
}

pub type Matrix3 = [[i64; 3]; 3];

pub fn det3(m: &Matrix3) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn mat3_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn apply(m: &Matrix3, v: [i64; 3]) -> [i64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|k| m[i][k] * v[k]).sum())
}

/// Matrix of cofactors: `det(m)·m⁻ᵀ`.
pub fn cofactor(m: &Matrix3) -> Matrix3 {
    let mut out = [[0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
            let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
            let minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]];
            *slot = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    out
}

/// Map induced by the mapping cylinder of `φ`: duals of circles go to
/// duals of their images (`c* ↦ (φc)*`), `Λ¹` transforms by `φ⁻ᵀ`.
pub fn cylinder_action(phi: &Matrix3, x: &T3Class) -> Result<T3Class> {
    let det = det3(phi);
    if det.abs() != 1 {
        return Err(Error::NotUnimodular(det));
    }
    let inv_t = cofactor(phi).map(|r| r.map(|v| v * det));
    Ok(T3Class {
        lambda2_part: apply(phi, x.lambda2_part),
        lambda1_part: apply(&inv_t, x.lambda1_part),
        ..x.clone()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    SmoothlyDistinct,
    NotDistinguished,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::SmoothlyDistinct => "smoothly distinct",
            Verdict::NotDistinguished => "not distinguished by this invariant",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KnotEntry {
    pub name: String,
    pub alexander: String,
    pub mod2_class: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairVerdict {
    pub pair: [String; 2],
    pub verdict: Verdict,
    pub mod2_class_a: String,
    pub mod2_class_b: String,
    pub blowups_applied: i64,
    pub hf_top_structure: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RimSurgeryReport {
    pub genus: i64,
    pub self_intersection: i64,
    pub blowup_path: Vec<i64>,
    pub blowups_applied: i64,
    pub hf_top_structure: String,
    pub knots: Vec<KnotEntry>,
    pub classes: Vec<Vec<String>>,
    pub pairs: Vec<PairVerdict>,
}

impl RimSurgeryReport {
    pub fn all_pairwise_distinct(&self) -> bool {
        self.pairs
            .iter()
            .all(|p| p.verdict == Verdict::SmoothlyDistinct)
    }

    pub fn verdict(&self, a: &str, b: &str) -> Option<Verdict> {
        self.pairs
            .iter()
            .find(|p| (p.pair[0] == a && p.pair[1] == b) || (p.pair[0] == b && p.pair[1] == a))
            .map(|p| p.verdict)
    }
}

/// Decide which rim surgeries along a genus-`g` surface of square `n` are
/// told apart by the mod-2 Alexander polynomials of the knots. Pairs are
/// only ever reported distinct or undistinguished.
pub fn rim_surgery_verdict(
    g: i64,
    n: i64,
    knots: &[(String, PlanarDiagram)],
) -> Result<RimSurgeryReport> {
    if g < 1 {
        return Err(Error::out_of_range("g", g, "g >= 1"));
    }
    if n < 2 - 2 * g {
        return Err(Error::HypothesisViolation(format!(
            "self-intersection {n} is below 2 - 2g = {}; blowing up cannot reach the circle bundle of degree 1 - 2g",
            2 - 2 * g
        )));
    }
    let blowup_path: Vec<i64> = (1 - 2 * g..=n).rev().collect();
    let blowups = n - (1 - 2 * g);
    // the boundary of a neighbourhood of the blown-up surface, reversed
    let top = hf_minus(2 * g - 1, g, g - 1)?;
    let top_summand = top
        .summands
        .iter()
        .find(|s| matches!(s, Summand::FreeRankOne { .. }))
        .ok_or_else(|| {
            Error::HypothesisViolation("top-degree part is not free of rank one".into())
        })?;
    let hf_top_structure = top_summand.to_string();

    let polys: Vec<LaurentPolynomial> = knots
        .par_iter()
        .map(|(_, d)| alexander_from_diagram(d))
        .collect::<Result<_>>()?;
    let classes: Vec<LaurentPolynomial> = polys.iter().map(mod2_class).collect();
    let entries: Vec<KnotEntry> = knots
        .iter()
        .zip(&polys)
        .zip(&classes)
        .map(|(((name, _), p), c)| KnotEntry {
            name: name.clone(),
            alexander: p.to_string(),
            mod2_class: c.to_string(),
        })
        .collect();
    let mut pairs = Vec::new();
    for i in 0..knots.len() {
        for j in i + 1..knots.len() {
            pairs.push(PairVerdict {
                pair: [knots[i].0.clone(), knots[j].0.clone()],
                verdict: if classes[i] == classes[j] {
                    Verdict::NotDistinguished
                } else {
                    Verdict::SmoothlyDistinct
                },
                mod2_class_a: entries[i].mod2_class.clone(),
                mod2_class_b: entries[j].mod2_class.clone(),
                blowups_applied: blowups,
                hf_top_structure: hf_top_structure.clone(),
            });
        }
    }
    let grouped = crate::skein::mod2_partition(&polys)
        .into_iter()
        .map(|c| c.into_iter().map(|i| knots[i].0.clone()).collect())
        .collect();
    Ok(RimSurgeryReport {
        genus: g,
        self_intersection: n,
        blowup_path,
        blowups_applied: blowups,
        hf_top_structure,
        knots: entries,
        classes: grouped,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein::knot_by_name;
    use CoefficientRing::*;

    fn t(s: &str, ring: CoefficientRing) -> LaurentPolynomial {
        LaurentPolynomial::parse_univariate(s, ring).unwrap()
    }

    fn rank_one(ring: CoefficientRing, v: LaurentPolynomial) -> FormalInvariant {
        let mut x = FormalInvariant::new(ring, &["t"]);
        x.insert("s0", int(0), vec![v]).unwrap();
        x
    }

    #[test]
    fn unit_equivalence_examples() {
        let b = rank_one(Mod2, t("1 + t", Mod2));
        let a = rank_one(Mod2, t("t^3 + t^4", Mod2));
        assert!(unit_equivalent(&a, &b).unwrap());
        let c = rank_one(Mod2, &t("t^-1 + 1 + t", Mod2) * &t("1 + t", Mod2));
        assert!(!unit_equivalent(&c, &b).unwrap());
        let z = rank_one(Mod2, t("0", Mod2));
        assert!(unit_equivalent(&z, &z).unwrap());
        let neg = rank_one(Integers, t("-t", Integers));
        let one = rank_one(Integers, t("1", Integers));
        assert!(unit_equivalent(&neg, &one).unwrap());
        let mut strict = one.clone();
        strict.sign_ambiguous = false;
        let mut strict_neg = neg.clone();
        strict_neg.sign_ambiguous = false;
        assert!(!unit_equivalent(&strict_neg, &strict).unwrap());
        let two = rank_one(Integers, t("2", Integers));
        assert!(!unit_equivalent(&two, &one).unwrap());
    }

    #[test]
    fn surgery_needs_mod2() {
        let g = FormalInvariant::generator(Integers, &["t"], "s0", q(-3, 2));
        let tref = t("t^-1 - 1 + t", Integers);
        assert!(matches!(
            knot_surgery_multiply(&g, &tref, "t"),
            Err(Error::SignAmbiguity(_))
        ));
        let g2 = g.reduce_mod2();
        assert!(!g2.sign_ambiguous);
        assert!(matches!(
            knot_surgery_multiply(&g2, &tref, "x"),
            Err(Error::UnknownGenerator(_))
        ));
        let out = knot_surgery_multiply(&g2, &tref, "t").unwrap();
        assert_eq!(
            out.component("s0").unwrap().value[0],
            t("t^-1 + 1 + t", Mod2)
        );
        assert!(!unit_equivalent(&out, &g2).unwrap());
        let same = knot_surgery_multiply(&g2, &t("1", Integers), "t").unwrap();
        assert!(unit_equivalent(&same, &g2).unwrap());
    }

    #[test]
    fn pairing_is_antilinear() {
        let one = FormalInvariant::generator(Integers, &["t"], "s0", int(0));
        assert_eq!(pair_invariants(&one, &one).unwrap(), t("1", Integers));
        let shifted = rank_one(Integers, t("t", Integers));
        assert_eq!(
            pair_invariants(&one, &shifted).unwrap(),
            t("t^-1", Integers)
        );
    }

    #[test]
    fn t_average_sums_orbit() {
        let mut fam = FormalInvariant::new(Integers, &["t1", "t2"]);
        let p = |s: &str| LaurentPolynomial::parse_with(s, &["t1", "t2"], Integers).unwrap();
        fam.insert("a", int(0), vec![p("t1")]).unwrap();
        fam.insert("b", int(0), vec![p("t2^2")]).unwrap();
        // t1 -> t, t2 -> t
        let out = t_average(&fam, &["a", "b"], &[vec![1, 1]], &["t"]).unwrap();
        assert_eq!(out.component("a").unwrap().value[0], t("t + t^2", Integers));
        let single = t_average(&fam, &["b"], &[vec![1, 0]], &["t"]).unwrap();
        assert_eq!(single.component("b").unwrap().value[0], t("1", Integers));
        assert_eq!(
            t_average(&fam, &[], &[vec![1, 1]], &["t"]).unwrap_err(),
            Error::EmptyOrbit
        );
    }

    #[test]
    fn log_transform_basis() {
        let basis: Vec<FormalInvariant> = ["1", "t", "t^2"]
            .iter()
            .map(|s| rank_one(Integers, t(s, Integers)))
            .collect();
        let b = [&basis[0], &basis[1], &basis[2]];
        let third = log_transform_combination(0, 0, 1, b).unwrap();
        assert_eq!(third.component("s0"), basis[2].component("s0"));
        let skein = log_transform_combination(0, 1, 1, b).unwrap();
        assert_eq!(
            skein.component("s0").unwrap().value[0],
            t("t + t^2", Integers)
        );
        let other = rank_one(Mod2, t("1", Mod2));
        assert!(log_transform_combination(1, 0, 0, [&basis[0], &basis[1], &other]).is_err());
    }

    #[test]
    fn fiber_sums() {
        let one = t("1", Integers);
        assert_eq!(
            fiber_sum_product(&one, &one).unwrap(),
            t("t^-1 - 2 + t", Integers)
        );
        let tref = t("t^-1 - 1 + t", Integers);
        // multiplying back by t - 2 + 1/t costs one order
        let s = s1_cross_surgery_invariant(&tref, Direction::PositivePowers, 21).unwrap();
        let k3 = NovikovSeries::from_polynomial(&one, Direction::PositivePowers, 21);
        let back = fiber_sum_series(&k3, &s.closed).unwrap();
        assert!(back.agrees_with(&tref, 20));
    }

    #[test]
    fn s1_cross_unknot_coefficients() {
        let s =
            s1_cross_surgery_invariant(&t("1", Integers), Direction::PositivePowers, 20).unwrap();
        for n in 1..=20 {
            assert_eq!(s.closed.coefficient(n), BigInt::from(n));
            assert_eq!(s.complement.coefficient(n), BigInt::from(-1));
        }
        let m = s1_cross_surgery_invariant(&t("1", Mod2), Direction::PositivePowers, 20).unwrap();
        for n in 1..=20 {
            assert_eq!(m.closed.coefficient(n), BigInt::from(n % 2));
        }
    }

    #[test]
    fn t3_model() {
        let x = t3_theta_image([0, 0, 1]).unwrap();
        assert_eq!(x.degree, q(-3, 2));
        assert_eq!(contract([0, 0, 1], &x), [0; 3]);
        assert_ne!(contract([1, 0, 0], &x), [0; 3]);
        assert!(t3_theta_image([0, 2, 4]).is_err());
        let (p, qq, r) = (2, 3, 1);
        // φ(e₃) = (p, q, r)
        let phi = [[1, 0, p], [0, 1, qq], [0, 0, r]];
        let y = cylinder_action(&phi, &x).unwrap();
        assert_eq!(y.lambda2_part, [p, qq, r]);
        let id = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        assert_eq!(cylinder_action(&id, &x).unwrap(), x);
        assert_eq!(
            cylinder_action(&[[2, 0, 0], [0, 1, 0], [0, 0, 1]], &x),
            Err(Error::NotUnimodular(2))
        );
        let l1 = T3Class::new([0; 3], [1, 0, 0], 1).unwrap();
        assert_eq!(l1.degree, q(-9, 2));
        assert!(T3Class::new([1, 0, 0], [1, 0, 0], 0).is_err());
    }

    #[test]
    fn verdicts() {
        let named = |names: &[&str]| -> Vec<(String, PlanarDiagram)> {
            names
                .iter()
                .map(|n| (n.to_string(), knot_by_name(n).unwrap()))
                .collect()
        };
        let r = rim_surgery_verdict(2, 0, &named(&["unknot", "trefoil"])).unwrap();
        assert_eq!(
            r.verdict("unknot", "trefoil"),
            Some(Verdict::SmoothlyDistinct)
        );
        assert_eq!(r.blowups_applied, 3);
        let r = rim_surgery_verdict(2, 0, &named(&["trefoil", "figure-eight"])).unwrap();
        assert_eq!(
            r.verdict("trefoil", "figure-eight"),
            Some(Verdict::NotDistinguished)
        );
        assert!(matches!(
            rim_surgery_verdict(2, -3, &named(&["trefoil"])),
            Err(Error::HypothesisViolation(_))
        ));
    }
}
