//! The Clifford Fourier-Mellin transform on the log-polar grid.
//!
//! Forward: `H(v_j, k) = (ds dtheta / 2pi) sum_{s,theta} e^{-f v_j s} h(s,theta) e^{-g k theta}`
//! with the radial kernel always on the left and the angular kernel on the right.
//! Inverse: `h(s, theta) = (1/S) sum_{j,k} e^{f v_j s} H(v_j,k) e^{g k theta}`.
//!
//! [`cfmt_forward`] and [`cfmt_inverse`] run through the FFT path in [`fast`];
//! the `*_direct` functions evaluate the literal sums and serve as oracles.

pub mod fast;
pub mod symmetry;
pub mod theorems;

use std::f64::consts::TAU;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::algebra::{Multivector, Signature};
use crate::error::{Error, Result};
use crate::roots::RootPair;
use crate::signal::{pairwise_sum, GridGeometry, LogPolarSignal};
use crate::split::split_raw;

pub use fast::{cfmt_fast, ComplexPlanes, FastPlan};
pub use symmetry::{symmetry_decompose, SymmetryComponents};
pub use theorems::*;

/// Transform coefficients on the centered `(j, k)` grid, row-major with `j` outer.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    geometry: GridGeometry,
    pair: RootPair,
    coeffs: Vec<Multivector>,
}

impl Spectrum {
    pub fn new(geometry: GridGeometry, pair: RootPair, coeffs: Vec<Multivector>) -> Result<Self> {
        geometry.validate()?;
        if coeffs.len() != geometry.len() {
            return Err(Error::Geometry(format!(
                "expected {} spectral bins, got {}",
                geometry.len(),
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|m| m.signature() != pair.signature()) {
            return Err(Error::SignatureMismatch {
                left: pair.signature(),
                right: bad.signature(),
            });
        }
        Ok(Self { geometry, pair, coeffs })
    }

    pub(crate) fn from_parts_unchecked(geometry: GridGeometry, pair: RootPair, coeffs: Vec<Multivector>) -> Self {
        debug_assert_eq!(coeffs.len(), geometry.len());
        Self { geometry, pair, coeffs }
    }

    pub fn zeros(geometry: GridGeometry, pair: RootPair) -> Self {
        Self::from_parts_unchecked(
            geometry,
            pair,
            vec![Multivector::zero(pair.signature()); geometry.len()],
        )
    }

    /// Builds a spectrum from a function of centered `(j, k)`.
    pub fn from_fn(geometry: GridGeometry, pair: RootPair, f: impl Fn(i64, i64) -> Multivector) -> Self {
        let mut coeffs = Vec::with_capacity(geometry.len());
        for row in 0..geometry.ns {
            let j = geometry.j_of_row(row);
            for col in 0..geometry.ntheta {
                coeffs.push(f(j, geometry.k_of_col(col)));
            }
        }
        Self::from_parts_unchecked(geometry, pair, coeffs)
    }

    pub fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }

    pub fn pair(&self) -> &RootPair {
        &self.pair
    }

    pub fn signature(&self) -> Signature {
        self.pair.signature()
    }

    pub fn coeffs(&self) -> &[Multivector] {
        &self.coeffs
    }

    fn index(&self, j: i64, k: i64) -> usize {
        let row = (j + (self.geometry.ns / 2) as i64) as usize;
        let col = (k + (self.geometry.ntheta / 2) as i64) as usize;
        row * self.geometry.ntheta + col
    }

    /// Coefficient at centered indices; panics outside `[-n/2, n/2)`.
    pub fn at(&self, j: i64, k: i64) -> Multivector {
        let (hs, ht) = ((self.geometry.ns / 2) as i64, (self.geometry.ntheta / 2) as i64);
        assert!(
            (-hs..hs).contains(&j) && (-ht..ht).contains(&k),
            "bin ({j},{k}) out of range"
        );
        self.coeffs[self.index(j, k)]
    }

    /// The discrete transform evaluated at any integer `(j, k)`.
    ///
    /// It is `ntheta`-periodic in `k`. Shifting `j` by `q ns` multiplies on the left by
    /// `e^{-f 2pi q ns smin / S}`, which is 1 whenever `ns smin / S` is an integer.
    pub fn at_extended(&self, j: i64, k: i64) -> Multivector {
        let ns = self.geometry.ns as i64;
        let nt = self.geometry.ntheta as i64;
        let j0 = (j + ns / 2).rem_euclid(ns) - ns / 2;
        let k0 = (k + nt / 2).rem_euclid(nt) - nt / 2;
        let q = (j - j0) / ns;
        let base = self.at(j0, k0);
        if q == 0 {
            return base;
        }
        let phase = -TAU * q as f64 * ns as f64 * self.geometry.smin / self.geometry.period();
        Multivector::exp_root(&self.pair.f(), phase).mul_raw(&base)
    }

    pub fn check_compatible(&self, other: &Spectrum) -> Result<()> {
        if self.geometry != other.geometry {
            return Err(Error::Geometry("spectrum geometries differ".into()));
        }
        if self.pair != other.pair {
            return Err(Error::contract("spectra were produced by different root pairs"));
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &Spectrum) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .flat_map(|m| m.coeffs())
            .fold(0.0, |a, c| a.max(c.abs()))
    }

    pub fn map(&self, f: impl Fn(i64, i64, Multivector) -> Multivector) -> Spectrum {
        Spectrum::from_fn(self.geometry, self.pair, |j, k| f(j, k, self.at(j, k)))
    }

    pub fn zip_with(&self, other: &Spectrum, f: impl Fn(Multivector, Multivector) -> Multivector) -> Result<Spectrum> {
        self.check_compatible(other)?;
        Ok(Spectrum::from_parts_unchecked(
            self.geometry,
            self.pair,
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(*a, *b)).collect(),
        ))
    }

    /// Pointwise `(H_+, H_-)` split with the spectrum's own pair.
    pub fn split(&self) -> (Spectrum, Spectrum) {
        let (p, m): (Vec<_>, Vec<_>) = self
            .coeffs
            .iter()
            .map(|x| {
                let sp = split_raw(x, &self.pair);
                (sp.plus, sp.minus)
            })
            .unzip();
        (
            Spectrum::from_parts_unchecked(self.geometry, self.pair, p),
            Spectrum::from_parts_unchecked(self.geometry, self.pair, m),
        )
    }

    /// `|H(v_j, k)|` in storage order.
    pub fn magnitudes(&self) -> Vec<f64> {
        self.coeffs.iter().map(Multivector::modulus).collect()
    }

    /// Spectral norm with measure `dv` per radial bin and weight 1 per `k`.
    pub fn norm(&self) -> f64 {
        let terms: Vec<f64> = self.coeffs.iter().map(Multivector::modulus_sq).collect();
        (pairwise_sum(&terms) * self.geometry.dv()).sqrt()
    }

    /// `<H, M>` with the spectral measure.
    pub fn scalar_inner_product(&self, other: &Spectrum) -> Result<f64> {
        self.check_compatible(other)?;
        let terms: Vec<f64> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.coeff_dot(b))
            .collect();
        Ok(pairwise_sum(&terms) * self.geometry.dv())
    }
}

pub(crate) fn check_pair(h: &LogPolarSignal, pair: &RootPair) -> Result<()> {
    if h.signature() != pair.signature() {
        return Err(Error::SignatureMismatch {
            left: h.signature(),
            right: pair.signature(),
        });
    }
    Ok(())
}

/// Forward transform on the full centered grid (FFT path).
pub fn cfmt_forward(h: &LogPolarSignal, pair: &RootPair) -> Result<Spectrum> {
    cfmt_fast(h, pair)
}

/// Inverse transform (FFT path).
pub fn cfmt_inverse(spectrum: &Spectrum) -> LogPolarSignal {
    FastPlan::new(*spectrum.geometry(), *spectrum.pair()).inverse(spectrum)
}

/// Left radial kernels `e^{-f v s_i}` for one frequency `v`.
fn radial_kernels(geometry: &GridGeometry, f: &Multivector, v: f64, sign: f64) -> Vec<Multivector> {
    (0..geometry.ns)
        .map(|i| Multivector::exp_root(f, sign * v * geometry.s_at(i)))
        .collect()
}

/// Right angular kernels `e^{-g k theta_l}` for one (possibly non-integer) `k`.
fn angular_kernels(geometry: &GridGeometry, g: &Multivector, k: f64, sign: f64) -> Vec<Multivector> {
    (0..geometry.ntheta)
        .map(|l| Multivector::exp_root(g, sign * k * geometry.theta_at(l)))
        .collect()
}

fn direct_sum(h: &LogPolarSignal, left: &[Multivector], right: &[Multivector]) -> Multivector {
    let geometry = h.geometry();
    let sig = h.signature();
    let mut acc = Multivector::zero(sig);
    for (i, lk) in left.iter().enumerate() {
        let row = h.row(i);
        let mut row_acc = Multivector::zero(sig);
        for (x, rk) in row.iter().zip(right) {
            row_acc += lk.mul_raw(x).mul_raw(rk);
        }
        acc += row_acc;
    }
    acc * (geometry.cell_area() / TAU)
}

/// The literal double sum at an arbitrary real `(v, k)`.
pub fn cfmt_direct(h: &LogPolarSignal, pair: &RootPair, v: f64, k: f64) -> Result<Multivector> {
    check_pair(h, pair)?;
    let geometry = h.geometry();
    let left = radial_kernels(geometry, &pair.f(), v, -1.0);
    let right = angular_kernels(geometry, &pair.g(), k, -1.0);
    Ok(direct_sum(h, &left, &right))
}

/// Direct evaluation at every grid frequency: `O(N^2)` kernel products.
pub fn cfmt_forward_direct(h: &LogPolarSignal, pair: &RootPair) -> Result<Spectrum> {
    check_pair(h, pair)?;
    let geometry = *h.geometry();
    let rights: Vec<Vec<Multivector>> = (0..geometry.ntheta)
        .map(|col| angular_kernels(&geometry, &pair.g(), geometry.k_of_col(col) as f64, -1.0))
        .collect();
    let row_bins = |row: usize| -> Vec<Multivector> {
        let v = geometry.v_at(geometry.j_of_row(row));
        let left = radial_kernels(&geometry, &pair.f(), v, -1.0);
        rights.iter().map(|right| direct_sum(h, &left, right)).collect()
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<Multivector>> = (0..geometry.ns).into_par_iter().map(row_bins).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<Multivector>> = (0..geometry.ns).map(row_bins).collect();
    Ok(Spectrum::from_parts_unchecked(geometry, *pair, rows.concat()))
}

/// Direct evaluation of a subset of bins, given as centered `(j, k)`.
pub fn cfmt_direct_bins(h: &LogPolarSignal, pair: &RootPair, bins: &[(i64, i64)]) -> Result<Vec<Multivector>> {
    check_pair(h, pair)?;
    let geometry = h.geometry();
    bins.iter()
        .map(|&(j, k)| cfmt_direct(h, pair, geometry.v_at(j), k as f64))
        .collect()
}

/// The literal inverse Riemann sum at every grid node.
pub fn cfmt_inverse_direct(spectrum: &Spectrum) -> LogPolarSignal {
    let geometry = *spectrum.geometry();
    let pair = spectrum.pair();
    let sig = pair.signature();
    let scale = 1.0 / geometry.period();
    let node = |i: usize, l: usize| -> Multivector {
        let s = geometry.s_at(i);
        let theta = geometry.theta_at(l);
        let mut acc = Multivector::zero(sig);
        for row in 0..geometry.ns {
            let j = geometry.j_of_row(row);
            let left = Multivector::exp_root(&pair.f(), geometry.v_at(j) * s);
            for col in 0..geometry.ntheta {
                let k = geometry.k_of_col(col);
                let right = Multivector::exp_root(&pair.g(), k as f64 * theta);
                acc += left.mul_raw(&spectrum.at(j, k)).mul_raw(&right);
            }
        }
        acc * scale
    };
    let mut samples = Vec::with_capacity(geometry.len());
    for i in 0..geometry.ns {
        for l in 0..geometry.ntheta {
            samples.push(node(i, l));
        }
    }
    LogPolarSignal::from_parts_unchecked(geometry, sig, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_signal_has_zero_spectrum() {
        let g = GridGeometry::symmetric(8);
        let pair = RootPair::quaternion_default();
        let h = LogPolarSignal::zeros(g, Signature::Cl02);
        assert_eq!(cfmt_forward(&h, &pair).unwrap().max_abs(), 0.0);
        assert_eq!(cfmt_forward_direct(&h, &pair).unwrap().max_abs(), 0.0);
        let z = Spectrum::zeros(g, pair);
        assert_eq!(cfmt_inverse(&z).max_abs(), 0.0);
    }

    #[test]
    fn constant_signal_concentrates_at_dc() {
        let g = GridGeometry::new(8, 6, -1.0, 2.0).unwrap();
        let pair = RootPair::quaternion_default();
        let h = LogPolarSignal::from_scalar_fn(g, Signature::Cl02, |_, _| 1.0);
        let spec = cfmt_forward_direct(&h, &pair).unwrap();
        for j in -4..4 {
            for k in -3..3 {
                let expected = if j == 0 && k == 0 { g.period() } else { 0.0 };
                let got = spec.at(j, k);
                assert!(got.max_abs_diff(&Multivector::scalar(Signature::Cl02, expected)) < 1e-12);
            }
        }
        let dc = cfmt_direct(&h, &pair, 0.0, 0.0).unwrap();
        assert!((dc.scalar_part() - g.period()).abs() < 1e-12);
    }

    #[test]
    fn single_sample_matches_kernel_product() {
        let g = GridGeometry::symmetric(8);
        let sig = Signature::Cl20;
        let pair = RootPair::from_values(
            Multivector::e12(sig),
            crate::roots::sample_root(sig, 0.3, -0.4, crate::roots::Branch::Plus)
                .unwrap()
                .value(),
        )
        .unwrap();
        let (i0, l0) = (3usize, 5usize);
        let mut samples = vec![Multivector::zero(sig); g.len()];
        samples[i0 * g.ntheta + l0] = Multivector::one(sig);
        let h = LogPolarSignal::new(g, sig, samples).unwrap();
        let spec = cfmt_forward(&h, &pair).unwrap();
        for j in -4..4 {
            for k in -4..4 {
                let expected = Multivector::exp_root(&pair.f(), -g.v_at(j) * g.s_at(i0))
                    * Multivector::exp_root(&pair.g(), -(k as f64) * g.theta_at(l0))
                    * (g.cell_area() / TAU);
                assert!(spec.at(j, k).max_abs_diff(&expected) < 1e-12);
            }
        }
    }

    #[test]
    fn single_bin_inverse() {
        let g = GridGeometry::symmetric(8);
        let pair = RootPair::quaternion_default();
        let sig = pair.signature();
        let m = Multivector::new(sig, [0.3, -0.2, 1.0, 0.5]);
        let (j0, k0) = (2i64, -3i64);
        let spec = Spectrum::from_fn(
            g,
            pair,
            |j, k| if (j, k) == (j0, k0) { m } else { Multivector::zero(sig) },
        );
        let h = cfmt_inverse(&spec);
        for i in 0..g.ns {
            for l in 0..g.ntheta {
                let expected = Multivector::exp_root(&pair.f(), g.v_at(j0) * g.s_at(i))
                    * m
                    * Multivector::exp_root(&pair.g(), k0 as f64 * g.theta_at(l))
                    * (g.dv() / TAU);
                assert!(h.at(i, l).max_abs_diff(&expected) < 1e-12);
            }
        }
        assert!(cfmt_inverse_direct(&spec).max_abs_diff(&h) < 1e-12);
    }

    #[test]
    fn extended_index_is_consistent_with_direct_sum() {
        let g = GridGeometry::new(8, 8, -0.7, 1.9).unwrap();
        let sig = Signature::Cl11;
        let pair = RootPair::from_values(Multivector::e2(sig), -Multivector::e2(sig)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let h = LogPolarSignal::random(g, sig, &mut rng);
        let spec = cfmt_forward(&h, &pair).unwrap();
        for (j, k) in [(5i64, 1i64), (-7, 9), (12, -4), (-4, -4)] {
            let direct = cfmt_direct(&h, &pair, g.v_at(j), k as f64).unwrap();
            assert!(spec.at_extended(j, k).max_abs_diff(&direct) < 1e-12, "({j},{k})");
        }
    }

    #[test]
    fn mismatches_are_rejected() {
        let g = GridGeometry::symmetric(4);
        let h = LogPolarSignal::zeros(g, Signature::Cl20);
        let pair = RootPair::quaternion_default();
        assert!(cfmt_forward(&h, &pair).is_err());
        assert!(cfmt_direct(&h, &pair, 0.0, 0.0).is_err());
        assert!(cfmt_forward_direct(&h, &pair).is_err());
        assert!(Spectrum::new(g, pair, vec![]).is_err());
    }
}
