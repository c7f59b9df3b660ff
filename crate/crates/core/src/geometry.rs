//! Compact subsets of `C^d` used as evaluation domains.
//!
//! Four families cover everything the estimators need: Euclidean balls,
//! polydiscs, the segment `[-1, 1]`, and Bernstein ellipses (images of the
//! circle `|w| = rho` under the Joukowski map `z = (w + 1/w) / 2`). The
//! segment and the ellipses live on the line; balls and polydiscs carry any
//! dimension.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) mod c64points {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for z in v {
            seq.serialize_element(&[z.re, z.im])?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Complex64>, D::Error> {
        let raw: Vec<[f64; 2]> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum CompactSet {
    /// Closed Euclidean ball `{ |z - center| <= radius }`.
    Ball {
        #[serde(with = "c64points")]
        center: Vec<Complex64>,
        radius: f64,
    },
    /// Closed polydisc `{ |z_k - center_k| <= radii_k }`.
    Polydisc {
        #[serde(with = "c64points")]
        center: Vec<Complex64>,
        radii: Vec<f64>,
    },
    /// The segment `[-1, 1]` on the real line.
    Segment,
    /// Closed Bernstein ellipse with parameter `rho > 1`: image of
    /// `{ |w| <= rho }` under `z = (w + 1/w) / 2`, semi-axes
    /// `(rho ± 1/rho) / 2`.
    BernsteinEllipse { rho: f64 },
}

impl CompactSet {
    pub fn ball(center: Vec<Complex64>, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::InvalidParameter("ball center must be non-empty".into()));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "ball radius must be positive and finite, got {radius}"
            )));
        }
        Ok(CompactSet::Ball { center, radius })
    }

    /// Ball centered at the origin of `C^d`.
    pub fn ball0(dim: usize, radius: f64) -> Result<Self> {
        Self::ball(vec![Complex64::new(0.0, 0.0); dim], radius)
    }

    pub fn polydisc(center: Vec<Complex64>, radii: Vec<f64>) -> Result<Self> {
        if center.is_empty() || center.len() != radii.len() {
            return Err(Error::InvalidParameter(
                "polydisc center and radii must match and be non-empty".into(),
            ));
        }
        if radii.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
            return Err(Error::InvalidParameter("polydisc radii must be positive".into()));
        }
        Ok(CompactSet::Polydisc { center, radii })
    }

    /// Polydisc centered at the origin with equal radii.
    pub fn polydisc0(dim: usize, radius: f64) -> Result<Self> {
        Self::polydisc(vec![Complex64::new(0.0, 0.0); dim], vec![radius; dim])
    }

    pub fn segment() -> Self {
        CompactSet::Segment
    }

    pub fn bernstein_ellipse(rho: f64) -> Result<Self> {
        if !(rho > 1.0) || !rho.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "ellipse parameter must exceed 1, got {rho}"
            )));
        }
        Ok(CompactSet::BernsteinEllipse { rho })
    }

    pub fn dim(&self) -> usize {
        match self {
            CompactSet::Ball { center, .. } => center.len(),
            CompactSet::Polydisc { center, .. } => center.len(),
            CompactSet::Segment | CompactSet::BernsteinEllipse { .. } => 1,
        }
    }

    /// Scale about the natural base point by `lambda >= 1`.
    ///
    /// Balls and polydiscs multiply their radii. Ellipses raise `rho` to the
    /// power `lambda`, which is multiplication at the level of the Green
    /// parameter `log rho`. The segment maps to `BernsteinEllipse(lambda)`
    /// for `lambda > 1` by the same convention.
    pub fn dilate(&self, lambda: f64) -> Result<Self> {
        if !(lambda >= 1.0) || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "dilation factor must be at least 1, got {lambda}"
            )));
        }
        Ok(match self {
            CompactSet::Ball { center, radius } => CompactSet::Ball {
                center: center.clone(),
                radius: radius * lambda,
            },
            CompactSet::Polydisc { center, radii } => CompactSet::Polydisc {
                center: center.clone(),
                radii: radii.iter().map(|r| r * lambda).collect(),
            },
            CompactSet::Segment => {
                if lambda == 1.0 {
                    CompactSet::Segment
                } else {
                    CompactSet::BernsteinEllipse { rho: lambda }
                }
            }
            CompactSet::BernsteinEllipse { rho } => CompactSet::BernsteinEllipse {
                rho: rho.powf(lambda),
            },
        })
    }

    /// Scalar size of the set: ball radius, first polydisc radius, ellipse
    /// parameter `rho`, and 1 for the segment (consistent with `dilate`,
    /// where the segment is the `rho = 1` degenerate ellipse).
    pub fn size_parameter(&self) -> f64 {
        match self {
            CompactSet::Ball { radius, .. } => *radius,
            CompactSet::Polydisc { radii, .. } => radii[0],
            CompactSet::Segment => 1.0,
            CompactSet::BernsteinEllipse { rho } => *rho,
        }
    }

    /// Sufficient containment test between same-shape sets (plus the segment
    /// inside any ellipse). Returns `false` whenever containment is not
    /// certain.
    pub fn nested_in(&self, outer: &CompactSet) -> bool {
        match (self, outer) {
            (
                CompactSet::Ball { center: c1, radius: r1 },
                CompactSet::Ball { center: c2, radius: r2 },
            ) => {
                c1.len() == c2.len() && {
                    let shift: f64 = c1
                        .iter()
                        .zip(c2)
                        .map(|(a, b)| (a - b).norm_sqr())
                        .sum::<f64>()
                        .sqrt();
                    shift + r1 <= r2 + 1e-12
                }
            }
            (
                CompactSet::Polydisc { center: c1, radii: r1 },
                CompactSet::Polydisc { center: c2, radii: r2 },
            ) => {
                c1.len() == c2.len()
                    && c1
                        .iter()
                        .zip(c2)
                        .zip(r1.iter().zip(r2))
                        .all(|((a, b), (ra, rb))| (a - b).norm() + ra <= rb + 1e-12)
            }
            (CompactSet::Segment, CompactSet::Segment) => true,
            (CompactSet::Segment, CompactSet::BernsteinEllipse { .. }) => true,
            (
                CompactSet::BernsteinEllipse { rho: a },
                CompactSet::BernsteinEllipse { rho: b },
            ) => a <= b,
            _ => false,
        }
    }

    /// Whether `z` lies in the interior (used to validate base points).
    pub fn strictly_contains(&self, z: &[Complex64]) -> bool {
        if z.len() != self.dim() {
            return false;
        }
        match self {
            CompactSet::Ball { center, radius } => {
                let d2: f64 = z.iter().zip(center).map(|(a, b)| (a - b).norm_sqr()).sum();
                d2.sqrt() < *radius
            }
            CompactSet::Polydisc { center, radii } => z
                .iter()
                .zip(center)
                .zip(radii)
                .all(|((a, b), r)| (a - b).norm() < *r),
            CompactSet::Segment => false, // empty interior in C
            CompactSet::BernsteinEllipse { rho } => {
                let (a, b) = ellipse_semi_axes(*rho);
                let x = z[0].re / a;
                let y = z[0].im / b;
                x * x + y * y < 1.0
            }
        }
    }
}

/// Semi-axes `((rho + 1/rho) / 2, (rho - 1/rho) / 2)` of the Bernstein
/// ellipse.
pub fn ellipse_semi_axes(rho: f64) -> (f64, f64) {
    ((rho + 1.0 / rho) / 2.0, (rho - 1.0 / rho) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ball_dilation_scales_the_radius() {
        let k = CompactSet::ball0(1, 2.0).unwrap();
        let d = k.dilate(3.0).unwrap();
        assert_eq!(d, CompactSet::ball0(1, 6.0).unwrap());
    }

    #[test]
    fn identity_dilation_is_a_no_op() {
        for k in [
            CompactSet::ball0(2, 1.5).unwrap(),
            CompactSet::polydisc0(3, 0.5).unwrap(),
            CompactSet::segment(),
            CompactSet::bernstein_ellipse(2.0).unwrap(),
        ] {
            assert_eq!(k.dilate(1.0).unwrap(), k);
        }
    }

    #[test]
    fn segment_dilation_opens_into_an_ellipse() {
        let e = CompactSet::segment().dilate(2.0).unwrap();
        assert_eq!(e, CompactSet::BernsteinEllipse { rho: 2.0 });
    }

    #[test]
    fn ellipse_dilation_raises_the_parameter() {
        let e = CompactSet::bernstein_ellipse(2.0).unwrap();
        assert_eq!(
            e.dilate(2.0).unwrap(),
            CompactSet::BernsteinEllipse { rho: 4.0 }
        );
    }

    #[test]
    fn contraction_is_rejected() {
        let k = CompactSet::ball0(1, 1.0).unwrap();
        assert!(k.dilate(0.5).is_err());
    }

    #[test]
    fn dilation_composes_multiplicatively() {
        let cases = [
            CompactSet::ball0(2, 0.75).unwrap(),
            CompactSet::polydisc0(2, 1.25).unwrap(),
            CompactSet::bernstein_ellipse(1.5).unwrap(),
        ];
        for k in cases {
            let chained = k.dilate(2.0).unwrap().dilate(4.0).unwrap();
            let direct = k.dilate(8.0).unwrap();
            match (&chained, &direct) {
                (
                    CompactSet::BernsteinEllipse { rho: a },
                    CompactSet::BernsteinEllipse { rho: b },
                ) => assert!((a - b).abs() <= 1e-12 * b),
                _ => assert_eq!(chained, direct),
            }
        }
    }

    #[test]
    fn nesting_detects_concentric_inclusions() {
        let small = CompactSet::ball0(2, 1.0).unwrap();
        let large = CompactSet::ball0(2, 2.0).unwrap();
        assert!(small.nested_in(&large));
        assert!(!large.nested_in(&small));
        assert!(CompactSet::segment().nested_in(&CompactSet::bernstein_ellipse(1.1).unwrap()));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(CompactSet::ball0(1, 0.0).is_err());
        assert!(CompactSet::ball0(1, -1.0).is_err());
        assert!(CompactSet::bernstein_ellipse(1.0).is_err());
        assert!(CompactSet::polydisc(vec![c(0.0, 0.0)], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn json_schema_uses_kind_and_params() {
        let k = CompactSet::ball0(1, 2.0).unwrap();
        let text = serde_json::to_string(&k).unwrap();
        assert!(text.contains("\"kind\":\"Ball\""), "{text}");
        assert!(text.contains("\"params\""), "{text}");
        let back: CompactSet = serde_json::from_str(&text).unwrap();
        assert_eq!(k, back);
    }
}
