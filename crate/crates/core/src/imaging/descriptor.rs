use serde::Serialize;

use crate::cfmt::cfmt_fast;
use crate::error::{Error, Result};
use crate::io::magnitude_csv;
use crate::roots::RootPair;
use crate::signal::{GridGeometry, LogPolarSignal};

/// `|H(v_j, k)|` in the row-major storage order of [`crate::Spectrum`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Descriptor {
    pub geometry: GridGeometry,
    pub f: [f64; 4],
    pub g: [f64; 4],
    pub magnitudes: Vec<f64>,
}

impl Descriptor {
    /// Euclidean distance between magnitude arrays, with the spectral measure `dv`.
    pub fn distance(&self, other: &Descriptor) -> Result<f64> {
        if self.geometry != other.geometry || self.f != other.f || self.g != other.g {
            return Err(Error::contract("descriptors come from different grids or root pairs"));
        }
        let sq: f64 = self
            .magnitudes
            .iter()
            .zip(&other.magnitudes)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        Ok((sq * self.geometry.dv()).sqrt())
    }

    pub fn max_abs_diff(&self, other: &Descriptor) -> f64 {
        self.magnitudes
            .iter()
            .zip(&other.magnitudes)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        magnitude_csv(&self.geometry, &self.magnitudes)
    }
}

/// Pointwise modulus of the transform. Needs a blade-like pair, for which the
/// modulus is unchanged by the left and right exponential factors of a grid shift.
pub fn descriptor(h: &LogPolarSignal, pair: &RootPair) -> Result<Descriptor> {
    if !pair.is_blade_like() {
        return Err(Error::contract(format!(
            "magnitude descriptors need a blade-like pair, got {}",
            pair.describe()
        )));
    }
    let spec = cfmt_fast(h, pair)?;
    Ok(Descriptor {
        geometry: *h.geometry(),
        f: pair.f().coeffs(),
        g: pair.g().coeffs(),
        magnitudes: spec.magnitudes(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::cfmt::theorems::apply_scale_rotate;
    use crate::roots::random_roots;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn invariant_under_grid_shifts() {
        let geo = GridGeometry::new(8, 8, -1.0, 2.0).unwrap();
        let pair = RootPair::quaternion_default();
        let h = LogPolarSignal::random(geo, Signature::Cl02, &mut ChaCha8Rng::seed_from_u64(9));
        let d = descriptor(&h, &pair).unwrap();
        for a in 0..8 {
            for p in 0..8 {
                let m = apply_scale_rotate(&h, a, p);
                assert!(descriptor(&m, &pair).unwrap().max_abs_diff(&d) < 1e-10);
            }
        }
        let zero = descriptor(&LogPolarSignal::zeros(geo, Signature::Cl02), &pair).unwrap();
        assert!(zero.magnitudes.iter().all(|&m| m == 0.0));
    }

    #[test]
    fn rejects_non_blade_pairs() {
        let sig = Signature::Cl20;
        let roots = random_roots(sig, 2, 3).unwrap();
        let pair = RootPair::new(roots[0], roots[1]).unwrap();
        assert!(!pair.is_blade_like());
        let h = LogPolarSignal::zeros(GridGeometry::symmetric(4), sig);
        assert!(matches!(descriptor(&h, &pair), Err(Error::Contract(_))));
    }
}
