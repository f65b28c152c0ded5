//! Twisted Floer homology of circle bundles `Y_n` of degree `n` over a
//! genus-`g` surface, for `|n| ≥ 2g − 1`, as symbolic graded modules.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::chain_complex::PresentedModule;
use crate::error::{Error, Result};
use crate::grading::tau;
use crate::knot_floer::{delta_for_genus_one, DeltaData};
use crate::rational::{format as fmt_q, int};

/// One summand of a graded `R_Y ⊗ ℤ[U]`-module.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type")]
pub enum Summand {
    /// The tower `T_base` (`ℤ[U,U⁻¹]/Uℤ[U]` starting at `base`), kept only
    /// in degrees `≥ bottom`.
    Tower {
        #[serde(serialize_with = "crate::rational::serialize")]
        bottom_degree: BigRational,
        #[serde(serialize_with = "crate::rational::serialize")]
        base_degree: BigRational,
    },
    /// `ℤ[U]` with its top in the given degree (the HF⁻ tower).
    DownwardTower {
        #[serde(serialize_with = "crate::rational::serialize")]
        top_degree: BigRational,
    },
    FreeRankOne {
        #[serde(serialize_with = "crate::rational::serialize")]
        degree: BigRational,
    },
    /// `Q_ℓ = Z_ℓ / δ(Z_{ℓ−1})`.
    SyzygyQuotient {
        l: i64,
        #[serde(serialize_with = "crate::rational::serialize")]
        degree: BigRational,
        presentation: Option<PresentedModule>,
    },
    /// `K_ℓ = ker(δ : Z_ℓ → Z_{ℓ+1})`; the U-action is recorded only when
    /// it is known.
    SyzygyKernel {
        l: i64,
        #[serde(serialize_with = "crate::rational::serialize")]
        degree: BigRational,
        u_acts_trivially: Option<bool>,
        presentation: Option<PresentedModule>,
    },
    /// `ℤ[U]/U^length`, lowest nonzero element in `bottom_degree`.
    CyclicUTower {
        length: i64,
        #[serde(serialize_with = "crate::rational::serialize")]
        bottom_degree: BigRational,
    },
}

impl Summand {
    fn is_tower(&self) -> bool {
        matches!(self, Summand::Tower { .. } | Summand::DownwardTower { .. })
    }

    /// Degrees in which the summand is nonzero, for the finite ones.
    fn finite_degrees(&self) -> Vec<BigRational> {
        match self {
            Summand::FreeRankOne { degree }
            | Summand::SyzygyQuotient { degree, .. }
            | Summand::SyzygyKernel { degree, .. } => vec![degree.clone()],
            Summand::CyclicUTower {
                length,
                bottom_degree,
            } => (0..*length).map(|s| bottom_degree + int(2 * s)).collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Tower {
                bottom_degree,
                base_degree,
            } if bottom_degree == base_degree => write!(f, "T_{{{}}}", fmt_q(base_degree)),
            Summand::Tower {
                bottom_degree,
                base_degree,
            } => write!(
                f,
                "T_{{{}}} in degrees >= {}",
                fmt_q(base_degree),
                fmt_q(bottom_degree)
            ),
            Summand::DownwardTower { top_degree } => {
                write!(f, "Z[U] with top in degree {}", fmt_q(top_degree))
            }
            Summand::FreeRankOne { degree } => write!(f, "R_Y in degree {}", fmt_q(degree)),
            Summand::SyzygyQuotient { l, degree, .. } => {
                write!(f, "Z_{l}/delta(Z_{}) in degree {}", l - 1, fmt_q(degree))
            }
            Summand::SyzygyKernel { l, degree, .. } => {
                write!(
                    f,
                    "ker(delta: Z_{l} -> Z_{}) in degree {}",
                    l + 1,
                    fmt_q(degree)
                )
            }
            Summand::CyclicUTower {
                length,
                bottom_degree,
            } => write!(
                f,
                "Z[U]/U^{length} with bottom in degree {}",
                fmt_q(bottom_degree)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradedModuleDescription {
    pub flavor: &'static str,
    pub genus: i64,
    pub n: i64,
    pub k: i64,
    #[serde(serialize_with = "crate::rational::serialize")]
    pub tau: BigRational,
    pub summands: Vec<Summand>,
}

impl GradedModuleDescription {
    pub fn tower_count(&self) -> usize {
        self.summands.iter().filter(|s| s.is_tower()).count()
    }

    /// Degrees carried by the non-tower summands.
    pub fn reduced_degrees(&self) -> BTreeSet<BigRational> {
        self.summands
            .iter()
            .flat_map(Summand::finite_degrees)
            .collect()
    }

    /// Summands other than towers.
    pub fn reduced(&self) -> Vec<&Summand> {
        self.summands.iter().filter(|s| !s.is_tower()).collect()
    }

    /// The finite summand of highest degree, if any.
    pub fn top_reduced(&self) -> Option<&Summand> {
        self.reduced().into_iter().max_by(|a, b| {
            a.finite_degrees()
                .iter()
                .max()
                .cmp(&b.finite_degrees().iter().max())
        })
    }
}

impl fmt::Display for GradedModuleDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} of Y_{} (genus {}), spin^c k = {}, tau = {}",
            self.flavor,
            self.n,
            self.genus,
            self.k,
            fmt_q(&self.tau)
        )?;
        for s in &self.summands {
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

/// A spin^c structure on `Y_n` labelled by `k`, with `⟨c₁, Σ⟩ = 2k − n`
/// taken modulo `2n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinCLabel {
    pub k: i64,
    pub n: i64,
    pub characteristic_number: i64,
    pub conjugate: i64,
}

impl SpinCLabel {
    pub fn new(n: i64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::out_of_range(
                "n",
                0,
                "n != 0 (spin^c structures on Y_0 are not torsion)",
            ));
        }
        let k = reduce_label(n, k);
        Ok(SpinCLabel {
            k,
            n,
            characteristic_number: (2 * k - n).rem_euclid(2 * n.abs()),
            conjugate: reduce_label(n, -k),
        })
    }
}

/// Representative of `k mod n` in `(−|n|/2, |n|/2]`.
pub fn reduce_label(n: i64, k: i64) -> i64 {
    let m = n.abs();
    let r = k.rem_euclid(m);
    if 2 * r > m {
        r - m
    } else {
        r
    }
}

pub fn spinc_enumerate(n: i64) -> Result<Vec<SpinCLabel>> {
    if n == 0 {
        return Err(Error::out_of_range(
            "n",
            0,
            "n != 0 (spin^c structures on Y_0 are not torsion)",
        ));
    }
    let m = n.abs();
    let lo = -(m - 1) / 2;
    (lo..lo + m).map(|k| SpinCLabel::new(n, k)).collect()
}

fn check_genus(g: i64) -> Result<()> {
    if g < 1 {
        return Err(Error::out_of_range("g", g, "g >= 1"));
    }
    Ok(())
}

fn default_delta(g: i64, delta: Option<&DeltaData>) -> Option<DeltaData> {
    match delta {
        Some(d) if d.genus == g => Some(d.clone()),
        Some(_) => None,
        None if g == 1 => Some(delta_for_genus_one()),
        None => None,
    }
}

/// `HF⁺(Y_n, 𝔰_k)` for `n ≤ 1 − 2g`.
///
/// For `|k| ≤ g − 1` this is `T_{−g}` above degree `−|k|`, plus
/// `Z_{g−|k|}/δ(Z_{g−|k|−1})` in degree `−|k|`, all shifted by `τ_{n,k}`;
/// otherwise `T_{−g+τ}`. The quotient is resolved to a presentation when
/// δ is known (always at genus one).
pub fn hf_plus_large_negative(
    n: i64,
    g: i64,
    k: i64,
    delta: Option<&DeltaData>,
) -> Result<GradedModuleDescription> {
    check_genus(g)?;
    if n > 1 - 2 * g {
        return Err(Error::out_of_range("n", n, format!("n <= {}", 1 - 2 * g)));
    }
    let k = reduce_label(n, k);
    let t = tau(n, k)?;
    let base = int(-g) + &t;
    let a = k.abs();
    let summands = if a < g {
        let l = g - a;
        let presentation = match default_delta(g, delta) {
            Some(d) => Some(d.quotient_presentation(l)?),
            None => None,
        };
        vec![
            Summand::Tower {
                bottom_degree: int(-a + 1) + &t,
                base_degree: base,
            },
            Summand::SyzygyQuotient {
                l,
                degree: int(-a) + &t,
                presentation,
            },
        ]
    } else {
        vec![Summand::Tower {
            bottom_degree: base.clone(),
            base_degree: base,
        }]
    };
    Ok(GradedModuleDescription {
        flavor: "HF+",
        genus: g,
        n,
        k,
        tau: t,
        summands,
    })
}

/// `HF⁺(Y_n, 𝔰_k)` for `n ≥ 2g − 1`:
/// `K_{g+|k|+1} ⊕ ℤ[U]/U^{r_k} ⊕ T_{−g−τ}` with `r_k = ⌊(g−|k|)/2⌋`.
pub fn hf_plus_large_positive(
    n: i64,
    g: i64,
    k: i64,
    delta: Option<&DeltaData>,
) -> Result<GradedModuleDescription> {
    check_genus(g)?;
    if n < 2 * g - 1 {
        return Err(Error::out_of_range("n", n, format!("n >= {}", 2 * g - 1)));
    }
    let k = reduce_label(n, k);
    let t = tau(n, k)?;
    let a = k.abs();
    let mut summands = Vec::new();
    if a < g {
        let l = g + a + 1;
        let degree = int(a - 1) - &t;
        if l == 2 * g {
            summands.push(Summand::FreeRankOne { degree });
        } else {
            let presentation = match default_delta(g, delta) {
                Some(d) => d.kernel_presentation(l)?,
                None => None,
            };
            summands.push(Summand::SyzygyKernel {
                l,
                degree,
                u_acts_trivially: ((k - g) % 2 == 0).then_some(true),
                presentation,
            });
        }
        let r = (g - a) / 2;
        if r > 0 {
            summands.push(Summand::CyclicUTower {
                length: r,
                bottom_degree: int(2 * a - g) - &t,
            });
        }
    }
    let base = int(-g) - &t;
    summands.push(Summand::Tower {
        bottom_degree: base.clone(),
        base_degree: base,
    });
    Ok(GradedModuleDescription {
        flavor: "HF+",
        genus: g,
        n,
        k,
        tau: t,
        summands,
    })
}

/// `HF⁻(Y_n, 𝔰_{±(g−1)})` for `n ≥ 2g − 1`: `R_Y` in degree `g − 3 − τ`
/// and `ℤ[U]` with top in degree `−g − 2 − τ`.
pub fn hf_minus(n: i64, g: i64, k: i64) -> Result<GradedModuleDescription> {
    check_genus(g)?;
    if n < 2 * g - 1 {
        return Err(Error::out_of_range("n", n, format!("n >= {}", 2 * g - 1)));
    }
    let k = reduce_label(n, k);
    if k.abs() != g - 1 {
        return Err(Error::out_of_range("k", k, format!("k = +-{}", g - 1)));
    }
    let t = tau(n, k)?;
    Ok(GradedModuleDescription {
        flavor: "HF-",
        genus: g,
        n,
        k,
        summands: vec![
            Summand::FreeRankOne {
                degree: int(g - 3) - &t,
            },
            Summand::DownwardTower {
                top_degree: int(-g - 2) - &t,
            },
        ],
        tau: t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_complex::Region;
    use crate::grading::reduced_degree_closed_form;
    use crate::knot_floer::{e1_page, E1Label};
    use crate::rational::q;

    #[test]
    fn genus_two_negative() {
        let d = hf_plus_large_negative(-3, 2, 1, None).unwrap();
        let quotient = d.reduced();
        assert_eq!(quotient.len(), 1);
        match quotient[0] {
            Summand::SyzygyQuotient {
                l,
                degree,
                presentation,
            } => {
                assert_eq!(*l, 1);
                assert_eq!(*degree, q(-5, 6));
                assert!(presentation.is_none());
            }
            other => panic!("unexpected {other:?}"),
        }
        let d = hf_plus_large_negative(-3, 2, 2, None).unwrap();
        // 2 reduces to -1 mod 3
        assert_eq!(d.k, -1);
        let d = hf_plus_large_negative(-5, 2, 2, None).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.tower_count(), 1);
        assert!(hf_plus_large_negative(-2, 2, 0, None).is_err());
    }

    #[test]
    fn genus_one_negative_resolves_quotient() {
        let d = hf_plus_large_negative(-1, 1, 0, None).unwrap();
        match &d.summands[1] {
            Summand::SyzygyQuotient {
                l: 1,
                degree,
                presentation: Some(p),
            } => {
                assert_eq!(*degree, int(0));
                assert_eq!(p.generator_count, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn positive_examples() {
        let g = 2;
        let d = hf_plus_large_positive(3, g, 1, None).unwrap();
        assert!(matches!(d.summands[0], Summand::FreeRankOne { .. }));
        assert!(!d
            .summands
            .iter()
            .any(|s| matches!(s, Summand::CyclicUTower { .. })));
        let d = hf_plus_large_positive(3, g, 0, None).unwrap();
        assert_eq!(d.tau, q(-1, 2));
        assert!(d.summands.contains(&Summand::CyclicUTower {
            length: 1,
            bottom_degree: int(-2) + q(1, 2)
        }));
        for n in 1..6 {
            let d = hf_plus_large_positive(n, 1, 1, None).unwrap();
            if reduce_label(n, 1) != 0 {
                assert_eq!(d.summands.len(), 1);
            }
        }
    }

    #[test]
    fn minus_top_is_free() {
        let d = hf_minus(1, 1, 0).unwrap();
        assert!(matches!(d.top_reduced(), Some(Summand::FreeRankOne { .. })));
        for g in 2..6 {
            let d = hf_minus(2 * g - 1, g, g - 1).unwrap();
            assert!(matches!(d.summands[0], Summand::FreeRankOne { .. }));
        }
    }

    #[test]
    fn spinc_labels() {
        let ks: Vec<i64> = spinc_enumerate(-3).unwrap().iter().map(|s| s.k).collect();
        assert_eq!(ks, vec![-1, 0, 1]);
        let labels = spinc_enumerate(-4).unwrap();
        assert_eq!(
            labels.iter().map(|s| s.k).collect::<Vec<_>>(),
            vec![-1, 0, 1, 2]
        );
        assert_eq!(labels[3].conjugate, 2);
        for g in 1..6 {
            let ks: Vec<i64> = spinc_enumerate(1 - 2 * g)
                .unwrap()
                .iter()
                .map(|s| s.k)
                .collect();
            assert_eq!(ks, ((-g + 1)..=(g - 1)).collect::<Vec<_>>());
        }
        assert!(spinc_enumerate(0).is_err());
        assert_eq!(
            SpinCLabel::new(5, 7).unwrap(),
            SpinCLabel::new(5, 2).unwrap()
        );
    }

    #[test]
    fn conjugation_and_single_degree() {
        for g in 1..5 {
            for n in [1 - 2 * g, -2 * g, -2 * g - 3] {
                for k in 0..=g {
                    let a = hf_plus_large_negative(n, g, k, None).unwrap();
                    let b = hf_plus_large_negative(n, g, -k, None).unwrap();
                    assert_eq!(a.summands, b.summands);
                    assert!(a.reduced_degrees().len() <= 1);
                    assert_eq!(a.tower_count(), 1);
                }
            }
            for n in [2 * g - 1, 2 * g + 2] {
                for k in 0..=g {
                    let a = hf_plus_large_positive(n, g, k, None).unwrap();
                    let b = hf_plus_large_positive(n, g, -k, None).unwrap();
                    assert_eq!(a.summands, b.summands);
                    assert_eq!(a.tower_count(), 1);
                }
            }
        }
    }

    #[test]
    fn reduced_degree_is_d_of_k() {
        for g in 1..8 {
            for k in (-g + 1)..=(g - 1) {
                let d = hf_plus_large_negative(1 - 2 * g, g, k, None).unwrap();
                let degs: Vec<_> = d.reduced_degrees().into_iter().collect();
                assert_eq!(degs, vec![reduced_degree_closed_form(g, k)]);
            }
        }
    }

    #[test]
    fn agrees_with_e1_boundary_column() {
        for g in 1..=2 {
            for k in (-g + 1)..=(g - 1) {
                let d = hf_plus_large_negative(1 - 2 * g, g, k, None).unwrap();
                let Summand::SyzygyQuotient { l, .. } = d.reduced()[0] else {
                    panic!("expected quotient")
                };
                let page = e1_page(g, Region::QuotientAnd(-k.abs()), 0..=0).unwrap();
                assert_eq!(page[0].label, E1Label::Syzygy(*l));
                assert_eq!(page[0].degree, -k.abs());
            }
        }
    }
}
