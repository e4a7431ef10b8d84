//! Multivector-valued signals sampled on a uniform periodic `(s = ln r, theta)` grid.

use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Multivector, Signature};
use crate::error::{Error, Result};
use crate::roots::RootPair;
use crate::split::split_raw;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridGeometry {
    pub ns: usize,
    pub ntheta: usize,
    pub smin: f64,
    pub smax: f64,
}

impl GridGeometry {
    pub fn new(ns: usize, ntheta: usize, smin: f64, smax: f64) -> Result<Self> {
        let g = Self { ns, ntheta, smin, smax };
        g.validate()?;
        Ok(g)
    }

    /// `n x n` grid over `s in [-pi, pi)`.
    pub fn symmetric(n: usize) -> Self {
        Self::new(n, n, -std::f64::consts::PI, std::f64::consts::PI).expect("valid default grid")
    }

    pub fn validate(&self) -> Result<()> {
        for (name, n) in [("ns", self.ns), ("ntheta", self.ntheta)] {
            if n < 2 || n % 2 != 0 {
                return Err(Error::Geometry(format!("{name} = {n} must be even and >= 2")));
            }
        }
        if !(self.smin.is_finite() && self.smax.is_finite() && self.smax > self.smin) {
            return Err(Error::Geometry(format!(
                "need finite smin < smax, got [{}, {}]",
                self.smin, self.smax
            )));
        }
        Ok(())
    }

    /// Radial period `S = smax - smin`.
    pub fn period(&self) -> f64 {
        self.smax - self.smin
    }

    pub fn ds(&self) -> f64 {
        self.period() / self.ns as f64
    }

    pub fn dtheta(&self) -> f64 {
        TAU / self.ntheta as f64
    }

    /// Spectral bin width `2 pi / S`.
    pub fn dv(&self) -> f64 {
        TAU / self.period()
    }

    pub fn len(&self) -> usize {
        self.ns * self.ntheta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn s_at(&self, i: usize) -> f64 {
        self.smin + i as f64 * self.ds()
    }

    pub fn theta_at(&self, l: usize) -> f64 {
        l as f64 * self.dtheta()
    }

    /// `v_j = 2 pi j / S` for centered `j`.
    pub fn v_at(&self, j: i64) -> f64 {
        j as f64 * self.dv()
    }

    /// Centered radial frequency index for storage row `row`.
    pub fn j_of_row(&self, row: usize) -> i64 {
        row as i64 - (self.ns / 2) as i64
    }

    /// Centered angular frequency index for storage column `col`.
    pub fn k_of_col(&self, col: usize) -> i64 {
        col as i64 - (self.ntheta / 2) as i64
    }

    /// `s_min = -s_max`, so the grid is symmetric under `s -> -s`.
    pub fn is_symmetric(&self) -> bool {
        (self.smin + self.smax).abs() <= 1e-12 * self.period()
    }

    pub fn cell_area(&self) -> f64 {
        self.ds() * self.dtheta()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogPolarSignal {
    geometry: GridGeometry,
    signature: Signature,
    samples: Vec<Multivector>,
}

impl LogPolarSignal {
    pub fn new(geometry: GridGeometry, signature: Signature, samples: Vec<Multivector>) -> Result<Self> {
        geometry.validate()?;
        if samples.len() != geometry.len() {
            return Err(Error::Geometry(format!(
                "expected {} samples, got {}",
                geometry.len(),
                samples.len()
            )));
        }
        if let Some(bad) = samples.iter().find(|m| m.signature() != signature) {
            return Err(Error::SignatureMismatch {
                left: signature,
                right: bad.signature(),
            });
        }
        if samples.iter().any(|m| !m.is_finite()) {
            return Err(Error::Domain("signal contains non-finite samples".into()));
        }
        Ok(Self {
            geometry,
            signature,
            samples,
        })
    }

    pub(crate) fn from_parts_unchecked(
        geometry: GridGeometry,
        signature: Signature,
        samples: Vec<Multivector>,
    ) -> Self {
        debug_assert_eq!(samples.len(), geometry.len());
        Self {
            geometry,
            signature,
            samples,
        }
    }

    pub fn zeros(geometry: GridGeometry, signature: Signature) -> Self {
        Self::from_parts_unchecked(geometry, signature, vec![Multivector::zero(signature); geometry.len()])
    }

    /// Samples `f(s, theta)` at every grid node.
    pub fn from_fn(geometry: GridGeometry, signature: Signature, f: impl Fn(f64, f64) -> Multivector) -> Self {
        let mut samples = Vec::with_capacity(geometry.len());
        for i in 0..geometry.ns {
            let s = geometry.s_at(i);
            for l in 0..geometry.ntheta {
                samples.push(f(s, geometry.theta_at(l)));
            }
        }
        Self::from_parts_unchecked(geometry, signature, samples)
    }

    /// Real-valued signal `f(s, theta) * 1`.
    pub fn from_scalar_fn(geometry: GridGeometry, signature: Signature, f: impl Fn(f64, f64) -> f64) -> Self {
        Self::from_fn(geometry, signature, |s, t| Multivector::scalar(signature, f(s, t)))
    }

    /// Uniform `[-1, 1]` coefficients in every blade.
    pub fn random<R: Rng>(geometry: GridGeometry, signature: Signature, rng: &mut R) -> Self {
        let samples = (0..geometry.len())
            .map(|_| {
                Multivector::new(
                    signature,
                    [
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                    ],
                )
            })
            .collect();
        Self::from_parts_unchecked(geometry, signature, samples)
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn samples(&self) -> &[Multivector] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Multivector> {
        self.samples
    }

    pub fn at(&self, i: usize, l: usize) -> Multivector {
        self.samples[i * self.geometry.ntheta + l]
    }

    pub fn row(&self, i: usize) -> &[Multivector] {
        let n = self.geometry.ntheta;
        &self.samples[i * n..(i + 1) * n]
    }

    pub fn map(&self, f: impl Fn(Multivector) -> Multivector) -> Self {
        Self::from_parts_unchecked(
            self.geometry,
            self.signature,
            self.samples.iter().map(|m| f(*m)).collect(),
        )
    }

    /// Pointwise combination of two compatible signals.
    pub fn zip_with(&self, other: &Self, f: impl Fn(Multivector, Multivector) -> Multivector) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::from_parts_unchecked(
            self.geometry,
            self.signature,
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        ))
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch {
                left: self.signature,
                right: other.signature,
            });
        }
        if self.geometry != other.geometry {
            return Err(Error::Geometry("signal geometries differ".into()));
        }
        Ok(())
    }

    /// Largest coefficient difference over all samples.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples
            .iter()
            .flat_map(|m| m.coeffs())
            .fold(0.0, |a, c| a.max(c.abs()))
    }

    /// True when only the scalar channel carries data.
    pub fn is_real(&self) -> bool {
        self.samples.iter().all(|m| {
            let c = m.coeffs();
            c[1] == 0.0 && c[2] == 0.0 && c[3] == 0.0
        })
    }
}

const PAIRWISE_BLOCK: usize = 32;

/// Sum with a fixed binary-tree topology: blocks of 32 summed left to right,
/// then halves combined recursively. The result does not depend on thread count.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= PAIRWISE_BLOCK {
        xs.iter().sum()
    } else {
        let mid = xs.len() / 2;
        pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
    }
}

pub fn pairwise_sum_mv(sig: Signature, xs: &[Multivector]) -> Multivector {
    if xs.len() <= PAIRWISE_BLOCK {
        xs.iter().fold(Multivector::zero(sig), |acc, m| acc + *m)
    } else {
        let mid = xs.len() / 2;
        pairwise_sum_mv(sig, &xs[..mid]) + pairwise_sum_mv(sig, &xs[mid..])
    }
}

/// `(a, b) = sum a ~b ds dtheta`.
pub fn inner_product(a: &LogPolarSignal, b: &LogPolarSignal) -> Result<Multivector> {
    a.check_compatible(b)?;
    let terms: Vec<Multivector> = a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| x.mul_raw(&y.principal_reverse()))
        .collect();
    Ok(pairwise_sum_mv(a.signature, &terms) * a.geometry.cell_area())
}

/// `<a, b> = Sc((a, b))`, computed as the blade-wise coefficient sum.
pub fn scalar_inner_product(a: &LogPolarSignal, b: &LogPolarSignal) -> Result<f64> {
    a.check_compatible(b)?;
    let terms: Vec<f64> = a.samples.iter().zip(&b.samples).map(|(x, y)| x.coeff_dot(y)).collect();
    Ok(pairwise_sum(&terms) * a.geometry.cell_area())
}

pub fn norm(a: &LogPolarSignal) -> f64 {
    let terms: Vec<f64> = a.samples.iter().map(Multivector::modulus_sq).collect();
    (pairwise_sum(&terms) * a.geometry.cell_area()).sqrt()
}

/// Pointwise `(h_+, h_-)` split.
pub fn split_signal(a: &LogPolarSignal, pair: &RootPair) -> Result<(LogPolarSignal, LogPolarSignal)> {
    if a.signature != pair.signature() {
        return Err(Error::SignatureMismatch {
            left: a.signature,
            right: pair.signature(),
        });
    }
    let (plus, minus): (Vec<_>, Vec<_>) = a
        .samples
        .iter()
        .map(|x| {
            let sp = split_raw(x, pair);
            (sp.plus, sp.minus)
        })
        .unzip();
    Ok((
        LogPolarSignal::from_parts_unchecked(a.geometry, a.signature, plus),
        LogPolarSignal::from_parts_unchecked(a.geometry, a.signature, minus),
    ))
}
