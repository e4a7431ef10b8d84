//! FFT evaluation through the quasi-complex forms of the split parts.
//!
//! On `h_+` the left radial kernel becomes a right kernel, `e^{-f v s} h_+ = h_+ e^{+g v s}`,
//! and on `h_-` it becomes `h_- e^{-g v s}`. After that both parts only see right
//! multiplication by elements of `span{1, g}`, which is a copy of the complex numbers.
//! Right multiplication by `g` is a complex structure `J` on the 4-dimensional
//! coefficient space, so every multivector is a pair of complex numbers in a basis
//! `{u1, J u1, u2, J u2}` and each split part needs two ordinary complex 2D FFTs.

use std::f64::consts::TAU;

use nalgebra::Matrix4;
use rustfft::num_complex::Complex64;

use crate::algebra::{Multivector, Signature};
use crate::cfmt::{check_pair, Spectrum};
use crate::error::Result;
use crate::fft::{fft_index, Direction, Fft2};
use crate::roots::RootPair;
use crate::signal::{GridGeometry, LogPolarSignal};
use crate::split::split_raw;

/// The two `J`-invariant planes of right multiplication by `g`.
#[derive(Clone, Debug)]
pub struct ComplexPlanes {
    signature: Signature,
    /// Columns `u1, J u1, u2, J u2`.
    basis: Matrix4<f64>,
    inverse: Matrix4<f64>,
}

impl ComplexPlanes {
    pub fn new(g: &Multivector) -> Self {
        let sig = g.signature();
        let j = Matrix4::from_fn(|r, c| g.right_matrix()[r][c]);
        let u1 = nalgebra::Vector4::new(1.0, 0.0, 0.0, 0.0);
        let ju1 = j * u1;
        let mut best: Option<(f64, Matrix4<f64>)> = None;
        for blade in 1..4 {
            let mut u2 = nalgebra::Vector4::zeros();
            u2[blade] = 1.0;
            let ju2 = j * u2;
            let m = Matrix4::from_columns(&[u1, ju1, u2, ju2]);
            let det = m.determinant().abs();
            if best.as_ref().is_none_or(|(d, _)| det > *d) {
                best = Some((det, m));
            }
        }
        let (_, basis) = best.expect("three candidates");
        let inverse = basis
            .try_inverse()
            .expect("some basis blade completes {1, g} to a complex basis");
        Self {
            signature: sig,
            basis,
            inverse,
        }
    }

    pub fn to_complex(&self, x: &Multivector) -> (Complex64, Complex64) {
        let c = self.inverse * nalgebra::Vector4::from(x.coeffs());
        (Complex64::new(c[0], c[1]), Complex64::new(c[2], c[3]))
    }

    pub fn from_complex(&self, z1: Complex64, z2: Complex64) -> Multivector {
        let c = self.basis * nalgebra::Vector4::new(z1.re, z1.im, z2.re, z2.im);
        Multivector::new(self.signature, [c[0], c[1], c[2], c[3]])
    }
}

/// Reusable plans for one geometry and root pair.
pub struct FastPlan {
    geometry: GridGeometry,
    pair: RootPair,
    planes: ComplexPlanes,
    fft: Fft2,
}

/// Four complex channels: (plus z1, plus z2, minus z1, minus z2).
type Channels = [Vec<Complex64>; 4];

impl FastPlan {
    pub fn new(geometry: GridGeometry, pair: RootPair) -> Self {
        Self {
            geometry,
            pair,
            planes: ComplexPlanes::new(&pair.g()),
            fft: Fft2::new(geometry.ns, geometry.ntheta),
        }
    }

    pub fn forward(&self, h: &LogPolarSignal) -> Result<Spectrum> {
        check_pair(h, &self.pair)?;
        let geo = self.geometry;
        let n = geo.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut ch: Channels = std::array::from_fn(|_| vec![zero; n]);
        for (idx, x) in h.samples().iter().enumerate() {
            let sp = split_raw(x, &self.pair);
            let (p1, p2) = self.planes.to_complex(&sp.plus);
            let (m1, m2) = self.planes.to_complex(&sp.minus);
            ch[0][idx] = p1;
            ch[1][idx] = p2;
            ch[2][idx] = m1;
            ch[3][idx] = m2;
        }
        // plus: e^{+i v s} along s; minus: e^{-i v s}; both e^{-i k theta}
        for (c, data) in ch.iter_mut().enumerate() {
            self.fft.rows(data, Direction::Forward);
            let radial = if c < 2 { Direction::Inverse } else { Direction::Forward };
            self.fft.cols(data, radial);
        }
        let scale = geo.cell_area() / TAU;
        let spectrum = Spectrum::from_fn(geo, self.pair, |j, k| {
            let idx = fft_index(j, geo.ns) * geo.ntheta + fft_index(k, geo.ntheta);
            let phase = Complex64::from_polar(scale, geo.v_at(j) * geo.smin);
            let plus = self.planes.from_complex(ch[0][idx] * phase, ch[1][idx] * phase);
            let cphase = phase.conj();
            let minus = self.planes.from_complex(ch[2][idx] * cphase, ch[3][idx] * cphase);
            plus + minus
        });
        Ok(spectrum)
    }

    pub fn inverse(&self, spectrum: &Spectrum) -> LogPolarSignal {
        let geo = self.geometry;
        let n = geo.len();
        let zero = Complex64::new(0.0, 0.0);
        let mut ch: Channels = std::array::from_fn(|_| vec![zero; n]);
        let scale = 1.0 / geo.period();
        for row in 0..geo.ns {
            let j = geo.j_of_row(row);
            // plus picks up e^{-i v s}, minus e^{+i v s}
            let phase = Complex64::from_polar(scale, -geo.v_at(j) * geo.smin);
            for col in 0..geo.ntheta {
                let k = geo.k_of_col(col);
                let sp = split_raw(&spectrum.at(j, k), &self.pair);
                let (p1, p2) = self.planes.to_complex(&sp.plus);
                let (m1, m2) = self.planes.to_complex(&sp.minus);
                let idx = fft_index(j, geo.ns) * geo.ntheta + fft_index(k, geo.ntheta);
                ch[0][idx] = p1 * phase;
                ch[1][idx] = p2 * phase;
                ch[2][idx] = m1 * phase.conj();
                ch[3][idx] = m2 * phase.conj();
            }
        }
        for (c, data) in ch.iter_mut().enumerate() {
            self.fft.rows(data, Direction::Inverse);
            let radial = if c < 2 { Direction::Forward } else { Direction::Inverse };
            self.fft.cols(data, radial);
        }
        let samples = (0..n)
            .map(|idx| {
                self.planes.from_complex(ch[0][idx], ch[1][idx]) + self.planes.from_complex(ch[2][idx], ch[3][idx])
            })
            .collect();
        LogPolarSignal::from_parts_unchecked(geo, self.pair.signature(), samples)
    }
}

/// Forward transform via the split quasi-complex FFT path.
pub fn cfmt_fast(h: &LogPolarSignal, pair: &RootPair) -> Result<Spectrum> {
    check_pair(h, pair)?;
    FastPlan::new(*h.geometry(), *pair).forward(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::random_roots;

    #[test]
    fn planes_round_trip_and_carry_right_multiplication_by_g() {
        for sig in Signature::ALL {
            for g in random_roots(sig, 20, 4).unwrap() {
                let planes = ComplexPlanes::new(&g.value());
                let x = Multivector::new(sig, [0.3, -1.2, 0.5, 2.0]);
                let (z1, z2) = planes.to_complex(&x);
                let tol = 1e-12 * g.value().modulus_sq().max(1.0);
                assert!(planes.from_complex(z1, z2).max_abs_diff(&x) < tol);
                let xg = x * g.value();
                let i = Complex64::new(0.0, 1.0);
                assert!(planes.from_complex(z1 * i, z2 * i).max_abs_diff(&xg) < tol);
            }
        }
    }
}
