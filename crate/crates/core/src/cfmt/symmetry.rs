//! Parity separation of the transform of real signals.
//!
//! For a real `h`, the radial kernel contributes `cos(v s)` to the part of `h` that is
//! even in `s` and `-f sin(v s)` to the odd part; the angular kernel likewise gives
//! `cos(k theta)` and `-g sin(k theta)`. The four parity components therefore land in
//! `span{1}`, `span{g}`, `span{f}` and `span{fg}`. Component names below put the radial
//! parity first: `eo` is even in `s` and odd in `theta`, and is the g-part.

use crate::algebra::Multivector;
use crate::cfmt::theorems::{reflect_circle, reverse_rotation, span_residual};
use crate::cfmt::{cfmt_forward, check_pair, Spectrum};
use crate::error::{Error, Result};
use crate::roots::RootPair;
use crate::signal::LogPolarSignal;

/// Relative tolerance for the rank test on `{1, f, g, fg}` and for span membership.
pub const SYMMETRY_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct SymmetryComponents {
    /// Even in `s`, even in `theta`: real part.
    pub ee: Spectrum,
    /// Even in `s`, odd in `theta`: g-part.
    pub eo: Spectrum,
    /// Odd in `s`, even in `theta`: f-part.
    pub oe: Spectrum,
    /// Odd in both: fg-part.
    pub oo: Spectrum,
    /// Largest off-span energy of any component, relative to the total spectral energy.
    pub off_span_fraction: f64,
}

impl SymmetryComponents {
    /// The four components in `ee, eo, oe, oo` order with their spanning element.
    pub fn parts(&self) -> [(&'static str, &Spectrum); 4] {
        [("ee", &self.ee), ("eo", &self.eo), ("oe", &self.oe), ("oo", &self.oo)]
    }

    pub fn sum(&self) -> Spectrum {
        let s = self.ee.zip_with(&self.eo, |a, b| a + b).expect("same geometry");
        let s = s.zip_with(&self.oe, |a, b| a + b).expect("same geometry");
        s.zip_with(&self.oo, |a, b| a + b).expect("same geometry")
    }
}

fn independent(pair: &RootPair) -> bool {
    let sig = pair.signature();
    let (f, g) = (pair.f(), pair.g());
    let cols = [Multivector::one(sig), f, g, f * g];
    let m = nalgebra::Matrix4::from_fn(|r, c| cols[c][r]);
    let sv = m.singular_values();
    let max = sv.max();
    sv.min() > SYMMETRY_TOL * max
}

pub fn symmetry_decompose(h: &LogPolarSignal, pair: &RootPair) -> Result<SymmetryComponents> {
    check_pair(h, pair)?;
    if !h.is_real() {
        return Err(Error::contract("symmetry analysis needs a real (scalar-only) signal"));
    }
    if pair.is_degenerate() {
        return Err(Error::contract("symmetry analysis assumes g != ±f"));
    }
    if !independent(pair) {
        return Err(Error::contract("{1, f, g, fg} are linearly dependent"));
    }
    let rs = reflect_circle(h)?;
    let rt = reverse_rotation(h);
    let rst = reverse_rotation(&rs);
    let combine = |a: f64, b: f64, c: f64| -> Result<LogPolarSignal> {
        // 1/4 (h + a R_s h + b R_theta h + c R_s R_theta h)
        let t = h.zip_with(&rs, |x, y| x + y * a)?;
        let t = t.zip_with(&rt, |x, y| x + y * b)?;
        let t = t.zip_with(&rst, |x, y| (x + y * c) * 0.25)?;
        Ok(t)
    };
    let ee = cfmt_forward(&combine(1.0, 1.0, 1.0)?, pair)?;
    let eo = cfmt_forward(&combine(1.0, -1.0, -1.0)?, pair)?;
    let oe = cfmt_forward(&combine(-1.0, 1.0, -1.0)?, pair)?;
    let oo = cfmt_forward(&combine(-1.0, -1.0, 1.0)?, pair)?;

    let sig = pair.signature();
    let (f, g) = (pair.f(), pair.g());
    let total: f64 = cfmt_forward(h, pair)?
        .coeffs()
        .iter()
        .map(Multivector::modulus_sq)
        .sum();
    let mut worst = 0.0f64;
    for (spec, basis) in [(&ee, Multivector::one(sig)), (&eo, g), (&oe, f), (&oo, f * g)] {
        let off: f64 = spec.coeffs().iter().map(|x| span_residual(x, &[basis]).powi(2)).sum();
        worst = worst.max(off);
    }
    let off_span_fraction = if total > 0.0 { worst / total } else { worst };
    if off_span_fraction > SYMMETRY_TOL {
        return Err(Error::contract(format!(
            "parity component left its span (off-span energy fraction {off_span_fraction:e})"
        )));
    }
    Ok(SymmetryComponents {
        ee,
        eo,
        oe,
        oo,
        off_span_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::signal::GridGeometry;

    #[test]
    fn zero_signal_gives_zero_components() {
        let g = GridGeometry::symmetric(8);
        let h = LogPolarSignal::zeros(g, Signature::Cl02);
        let c = symmetry_decompose(&h, &RootPair::quaternion_default()).unwrap();
        for (_, s) in c.parts() {
            assert_eq!(s.max_abs(), 0.0);
        }
    }

    #[test]
    fn preconditions() {
        let g = GridGeometry::symmetric(8);
        let s = Signature::Cl02;
        let pair = RootPair::quaternion_default();
        let not_real = LogPolarSignal::from_fn(g, s, |_, _| Multivector::e1(s));
        assert!(matches!(symmetry_decompose(&not_real, &pair), Err(Error::Contract(_))));
        let h = LogPolarSignal::zeros(g, s);
        let degenerate = RootPair::from_values(pair.f(), -pair.f()).unwrap();
        assert!(matches!(symmetry_decompose(&h, &degenerate), Err(Error::Contract(_))));
    }

    #[test]
    fn odd_even_signal_lands_in_f_span() {
        let g = GridGeometry::symmetric(16);
        let s = Signature::Cl02;
        let pair = RootPair::quaternion_default();
        let h = LogPolarSignal::from_scalar_fn(g, s, |x, t| x.sin() * t.cos());
        let c = symmetry_decompose(&h, &pair).unwrap();
        assert!(c.oe.max_abs() > 1.0);
        for part in [&c.ee, &c.eo, &c.oo] {
            assert!(part.max_abs() < 1e-12);
        }
        let full = cfmt_forward(&h, &pair).unwrap();
        for x in full.coeffs() {
            assert!(span_residual(x, &[pair.f()]) < 1e-12);
        }
    }
}
