//! Planar norm fields and the lengths they assign to polygonal curves.

use crate::error::{Result, SubRiemannianError};

/// A norm on the plane, constant across the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormFieldPlanar {
    Euclidean,
    Sup,
    L1,
    /// The p-norm for an exponent `p >= 1`.
    P(f64),
}

impl NormFieldPlanar {
    pub fn parse(name: &str) -> Result<Self> {
        match name.trim() {
            "euclidean" => Ok(NormFieldPlanar::Euclidean),
            "sup" => Ok(NormFieldPlanar::Sup),
            "ell1" | "l1" => Ok(NormFieldPlanar::L1),
            other => {
                if let Some(rest) = other.strip_prefix("p(") {
                    if let Some(inner) = rest.strip_suffix(')') {
                        if let Ok(p) = inner.trim().parse::<f64>() {
                            return NormFieldPlanar::p_norm(p);
                        }
                    }
                }
                Err(SubRiemannianError::UnknownModel(other.to_string()))
            }
        }
    }

    pub fn p_norm(p: f64) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(SubRiemannianError::BadNormExponent(p));
        }
        Ok(NormFieldPlanar::P(p))
    }

    #[inline]
    pub fn norm(&self, v: [f64; 2]) -> f64 {
        let (a, b) = (v[0].abs(), v[1].abs());
        match self {
            NormFieldPlanar::Euclidean => (a * a + b * b).sqrt(),
            NormFieldPlanar::Sup => a.max(b),
            NormFieldPlanar::L1 => a + b,
            NormFieldPlanar::P(p) => (a.powf(*p) + b.powf(*p)).powf(1.0 / *p),
        }
    }
}

/// Length of a planar polygonal curve measured segment-wise by the norm.
pub fn finsler_length(waypoints: &[Vec<f64>], field: NormFieldPlanar) -> Result<f64> {
    for w in waypoints {
        if w.len() != 2 {
            return Err(SubRiemannianError::NonPlanarWaypoint(w.len()));
        }
    }
    Ok(waypoints
        .windows(2)
        .map(|seg| field.norm([seg[1][0] - seg[0][0], seg[1][1] - seg[0][1]]))
        .sum())
}
