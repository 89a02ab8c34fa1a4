//! Axis-aligned grid domains with anisotropic shortest-path stencils.
//!
//! A [`GridDomain`] discretizes a box in `R^n` at resolution `h` per axis.
//! The stencil is the set of integer offsets with sup-norm at most the
//! stencil radius and coprime coordinates; coprimality keeps directions
//! pairwise distinct while the radius bounds the metric anisotropy of
//! shortest paths on the induced graph.

use crate::error::{Result, SubRiemannianError};

pub const DEFAULT_STENCIL_RADIUS: u32 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct GridDomain {
    bounds: Vec<(f64, f64)>,
    h: Vec<f64>,
    counts: Vec<usize>,
    strides: Vec<usize>,
    stencil: Vec<Vec<i64>>,
}

impl GridDomain {
    /// Uniform resolution on every axis with the default coprime stencil.
    pub fn new(bounds: Vec<(f64, f64)>, h: f64, stencil_radius: u32) -> Result<Self> {
        let n = bounds.len();
        Self::with_resolutions(bounds, vec![h; n], stencil_radius)
    }

    pub fn with_resolutions(
        bounds: Vec<(f64, f64)>,
        h: Vec<f64>,
        stencil_radius: u32,
    ) -> Result<Self> {
        let n = bounds.len();
        if h.len() != n {
            return Err(SubRiemannianError::DimensionMismatch { expected: n, got: h.len() });
        }
        if stencil_radius < 1 {
            return Err(SubRiemannianError::BadStencilRadius);
        }
        let mut counts = Vec::with_capacity(n);
        for (axis, (&(lo, hi), &step)) in bounds.iter().zip(h.iter()).enumerate() {
            if !(step > 0.0) || !step.is_finite() {
                return Err(SubRiemannianError::BadResolution(step));
            }
            if !(hi > lo) {
                return Err(SubRiemannianError::DegenerateBox { axis, lo, hi });
            }
            let span = hi - lo;
            let cells = span / step;
            let rounded = cells.round();
            if (cells - rounded).abs() > 1e-6 * cells.max(1.0) || rounded < 1.0 {
                return Err(SubRiemannianError::IncommensurateBox { axis, span, h: step });
            }
            counts.push(rounded as usize + 1);
        }
        let mut strides = vec![0usize; n];
        let mut acc = 1usize;
        for axis in (0..n).rev() {
            strides[axis] = acc;
            acc *= counts[axis];
        }
        let stencil = build_stencil(n, stencil_radius);
        Ok(GridDomain { bounds, h, counts, strides, stencil })
    }

    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn resolutions(&self) -> &[f64] {
        &self.h
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn stencil(&self) -> &[Vec<i64>] {
        &self.stencil
    }

    /// Total number of grid points.
    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Multi-index of a flat vertex id.
    pub fn multi_index(&self, flat: usize) -> Vec<usize> {
        let mut rest = flat;
        self.strides
            .iter()
            .map(|&s| {
                let k = rest / s;
                rest %= s;
                k
            })
            .collect()
    }

    pub fn flat_index(&self, multi: &[usize]) -> usize {
        multi.iter().zip(self.strides.iter()).map(|(k, s)| k * s).sum()
    }

    /// Coordinates of a grid vertex.
    pub fn point(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat)
            .iter()
            .zip(self.bounds.iter().zip(self.h.iter()))
            .map(|(&k, (&(lo, _), &step))| lo + k as f64 * step)
            .collect()
    }

    /// Flat vertex id of a coordinate point; the point must lie on the grid.
    pub fn index_of(&self, point: &[f64]) -> Result<usize> {
        if point.len() != self.dimension() {
            return Err(SubRiemannianError::DimensionMismatch {
                expected: self.dimension(),
                got: point.len(),
            });
        }
        let mut flat = 0usize;
        for (axis, (&x, (&(lo, hi), &step))) in point
            .iter()
            .zip(self.bounds.iter().zip(self.h.iter()))
            .enumerate()
        {
            if x < lo - 1e-9 || x > hi + 1e-9 {
                return Err(SubRiemannianError::OutOfBounds { axis, value: x, lo, hi });
            }
            let k = ((x - lo) / step).round();
            let snapped = lo + k * step;
            if (snapped - x).abs() > 1e-9 * x.abs().max(1.0) {
                return Err(SubRiemannianError::NotOnGrid { axis, value: x });
            }
            flat += (k as usize).min(self.counts[axis] - 1) * self.strides[axis];
        }
        Ok(flat)
    }

    /// Neighbor of `flat` along an integer stencil offset, if inside the box.
    #[inline]
    pub fn step(&self, multi: &[usize], offset: &[i64]) -> Option<usize> {
        let mut flat = 0usize;
        for axis in 0..multi.len() {
            let k = multi[axis] as i64 + offset[axis];
            if k < 0 || k as usize >= self.counts[axis] {
                return None;
            }
            flat += k as usize * self.strides[axis];
        }
        Some(flat)
    }

    /// Coordinate displacement realized by a stencil offset.
    pub fn displacement(&self, offset: &[i64]) -> Vec<f64> {
        offset.iter().zip(self.h.iter()).map(|(&d, &step)| d as f64 * step).collect()
    }
}

fn build_stencil(n: usize, radius: u32) -> Vec<Vec<i64>> {
    let r = radius as i64;
    let mut stencil = Vec::new();
    let mut offset = vec![-r; n];
    loop {
        if offset.iter().any(|&d| d != 0) && coprime(&offset) {
            stencil.push(offset.clone());
        }
        // Odometer increment over the box [-r, r]^n.
        let mut axis = n;
        loop {
            if axis == 0 {
                return stencil;
            }
            axis -= 1;
            if offset[axis] < r {
                offset[axis] += 1;
                break;
            }
            offset[axis] = -r;
        }
    }
}

fn coprime(offset: &[i64]) -> bool {
    let mut g = 0u64;
    for &d in offset {
        g = gcd(g, d.unsigned_abs());
    }
    g == 1
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
