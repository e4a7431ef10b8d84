//! Transform theorems as executable operations: the signal-side maps (shift,
//! reflection, modulation, derivatives) together with the spectrum each one predicts.

use std::f64::consts::TAU;

use rustfft::num_complex::Complex64;
use serde::Serialize;

use crate::algebra::Multivector;
use crate::cfmt::{cfmt_direct, cfmt_forward, check_pair, Spectrum};
use crate::error::{Error, Result};
use crate::fft::{centered_freq, Direction, Fft2};
use crate::roots::RootPair;
use crate::signal::{norm, scalar_inner_product, split_signal, GridGeometry, LogPolarSignal};

/// Coefficient-space distance from `x` to `span(basis)`.
pub fn span_residual(x: &Multivector, basis: &[Multivector]) -> f64 {
    // Gram-Schmidt in coefficient space
    let mut ortho: Vec<[f64; 4]> = Vec::new();
    for b in basis {
        let mut v = b.coeffs();
        for u in &ortho {
            let d: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= d * ui;
            }
        }
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-12 {
            ortho.push(v.map(|c| c / n));
        }
    }
    let mut r = x.coeffs();
    for u in &ortho {
        let d: f64 = r.iter().zip(u).map(|(a, b)| a * b).sum();
        for (ri, ui) in r.iter_mut().zip(u) {
            *ri -= d * ui;
        }
    }
    r.iter().map(|c| c * c).sum::<f64>().sqrt()
}

const SPAN_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinearityResiduals {
    pub left: f64,
    pub right: f64,
}

/// Left linearity with `alpha, beta in span{1, f}` and right linearity with
/// `alpha_r, beta_r in span{1, g}`.
pub fn check_linearity(
    h1: &LogPolarSignal,
    h2: &LogPolarSignal,
    pair: &RootPair,
    left: (Multivector, Multivector),
    right: (Multivector, Multivector),
) -> Result<LinearityResiduals> {
    h1.check_compatible(h2)?;
    check_pair(h1, pair)?;
    let sig = pair.signature();
    let one = Multivector::one(sig);
    for (name, c, basis) in [
        ("alpha", left.0, pair.f()),
        ("beta", left.1, pair.f()),
        ("alpha'", right.0, pair.g()),
        ("beta'", right.1, pair.g()),
    ] {
        let r = span_residual(&c, &[one, basis]);
        if r > SPAN_TOL * c.modulus().max(1.0) {
            return Err(Error::contract(format!(
                "coefficient {name} = ({}) lies outside the required subalgebra (residual {r:e})",
                c.to_text()
            )));
        }
    }
    let (a, b) = left;
    let (ar, br) = right;
    let s1 = cfmt_forward(h1, pair)?;
    let s2 = cfmt_forward(h2, pair)?;

    let m_left = h1.zip_with(h2, |x, y| a.mul_raw(&x) + b.mul_raw(&y))?;
    let expect_left = s1.zip_with(&s2, |x, y| a.mul_raw(&x) + b.mul_raw(&y))?;
    let m_right = h1.zip_with(h2, |x, y| x.mul_raw(&ar) + y.mul_raw(&br))?;
    let expect_right = s1.zip_with(&s2, |x, y| x.mul_raw(&ar) + y.mul_raw(&br))?;

    Ok(LinearityResiduals {
        left: cfmt_forward(&m_left, pair)?.max_abs_diff(&expect_left),
        right: cfmt_forward(&m_right, pair)?.max_abs_diff(&expect_right),
    })
}

/// Rounds `value / step` to an integer, rejecting anything that is not a grid multiple.
pub fn grid_steps(value: f64, step: f64) -> Result<i64> {
    let q = value / step;
    let r = q.round();
    if (q - r).abs() > 1e-9 * q.abs().max(1.0) {
        return Err(Error::contract(format!(
            "shift {value} is not an integer multiple of the grid step {step}"
        )));
    }
    Ok(r as i64)
}

/// `m(s, theta) = h(s + a_shift ds, theta + phi_shift dtheta)`, cyclic in both axes.
/// With `a = e^{a_shift ds}` this is `h(a r, theta + phi)`.
pub fn apply_scale_rotate(h: &LogPolarSignal, a_shift: i64, phi_shift: i64) -> LogPolarSignal {
    let g = *h.geometry();
    reindex(h, |i, l| {
        (
            (i as i64 + a_shift).rem_euclid(g.ns as i64) as usize,
            (l as i64 + phi_shift).rem_euclid(g.ntheta as i64) as usize,
        )
    })
}

/// Like [`apply_scale_rotate`] with the shifts in physical units.
pub fn apply_scale_rotate_physical(h: &LogPolarSignal, log_scale: f64, angle: f64) -> Result<LogPolarSignal> {
    let g = h.geometry();
    let a = grid_steps(log_scale, g.ds())?;
    let p = grid_steps(angle, g.dtheta())?;
    Ok(apply_scale_rotate(h, a, p))
}

/// Predicted spectrum of [`apply_scale_rotate`]: `e^{f v s_a} H(v,k) e^{g k phi}`.
pub fn scale_rotate_spectrum(spec: &Spectrum, a_shift: i64, phi_shift: i64) -> Spectrum {
    let g = *spec.geometry();
    let pair = *spec.pair();
    let s_a = a_shift as f64 * g.ds();
    let phi = phi_shift as f64 * g.dtheta();
    spec.map(|j, k, x| {
        Multivector::exp_root(&pair.f(), g.v_at(j) * s_a)
            .mul_raw(&x)
            .mul_raw(&Multivector::exp_root(&pair.g(), k as f64 * phi))
    })
}

fn reindex(h: &LogPolarSignal, src: impl Fn(usize, usize) -> (usize, usize)) -> LogPolarSignal {
    let g = *h.geometry();
    let mut samples = Vec::with_capacity(g.len());
    for i in 0..g.ns {
        for l in 0..g.ntheta {
            let (si, sl) = src(i, l);
            samples.push(h.at(si, sl));
        }
    }
    LogPolarSignal::from_parts_unchecked(g, h.signature(), samples)
}

/// `m(r, theta) = h(1/r, theta)`, i.e. `s -> -s` on a symmetric grid.
pub fn reflect_circle(h: &LogPolarSignal) -> Result<LogPolarSignal> {
    let g = *h.geometry();
    if !g.is_symmetric() {
        return Err(Error::contract(format!(
            "reflection at the unit circle needs smin = -smax, got [{}, {}]",
            g.smin, g.smax
        )));
    }
    Ok(reindex(h, |i, l| ((g.ns - i) % g.ns, l)))
}

/// `m(r, theta) = h(r, -theta)`.
pub fn reverse_rotation(h: &LogPolarSignal) -> LogPolarSignal {
    let g = *h.geometry();
    reindex(h, |i, l| (i, (g.ntheta - l) % g.ntheta))
}

/// `m(r, theta) = r^{f v0} h(r, theta) e^{g k0 theta}` with `v0` on the frequency grid.
pub fn modulate(h: &LogPolarSignal, pair: &RootPair, v0: f64, k0: i64) -> Result<LogPolarSignal> {
    check_pair(h, pair)?;
    let g = *h.geometry();
    grid_steps(v0, g.dv())?;
    let (f, gg) = (pair.f(), pair.g());
    let mut samples = Vec::with_capacity(g.len());
    for i in 0..g.ns {
        let left = Multivector::exp_root(&f, v0 * g.s_at(i));
        for l in 0..g.ntheta {
            let right = Multivector::exp_root(&gg, k0 as f64 * g.theta_at(l));
            samples.push(left.mul_raw(&h.at(i, l)).mul_raw(&right));
        }
    }
    Ok(LogPolarSignal::from_parts_unchecked(g, h.signature(), samples))
}

/// `H(v - v0, k - k0)` on the grid, using the periodic extension of the spectrum.
pub fn shifted_spectrum(spec: &Spectrum, j0: i64, k0: i64) -> Spectrum {
    spec.map(|j, k, _| spec.at_extended(j - j0, k - k0))
}

/// Spectral differentiation of every blade channel along one axis, independent of
/// the Clifford transform: plain complex DFTs per real channel.
pub fn spectral_derivative(h: &LogPolarSignal, axis: Axis, order: u32) -> LogPolarSignal {
    if order == 0 {
        return h.clone();
    }
    let g = *h.geometry();
    let fft = Fft2::new(g.ns, g.ntheta);
    let mut channels: [Vec<f64>; 4] = std::array::from_fn(|_| Vec::with_capacity(g.len()));
    for b in 0..4 {
        let mut data: Vec<Complex64> = h.samples().iter().map(|m| Complex64::new(m[b], 0.0)).collect();
        let apply = |data: &mut Vec<Complex64>, dir| match axis {
            Axis::Radial => fft.cols(data, dir),
            Axis::Angular => fft.rows(data, dir),
        };
        apply(&mut data, Direction::Forward);
        for row in 0..g.ns {
            for col in 0..g.ntheta {
                let (idx, n, unit) = match axis {
                    Axis::Radial => (row, g.ns, TAU / g.period()),
                    Axis::Angular => (col, g.ntheta, 1.0),
                };
                let freq = centered_freq(idx, n);
                let mult = if 2 * freq.unsigned_abs() as usize == n {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, freq as f64 * unit).powu(order)
                };
                data[row * g.ntheta + col] *= mult;
            }
        }
        apply(&mut data, Direction::Inverse);
        let norm = match axis {
            Axis::Radial => g.ns,
            Axis::Angular => g.ntheta,
        } as f64;
        channels[b] = data.iter().map(|z| z.re / norm).collect();
    }
    let sig = h.signature();
    let samples = (0..g.len())
        .map(|i| Multivector::new(sig, [channels[0][i], channels[1][i], channels[2][i], channels[3][i]]))
        .collect();
    LogPolarSignal::from_parts_unchecked(g, sig, samples)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axis {
    Radial,
    Angular,
}

/// Fraction of per-channel DFT energy in the top third of either frequency axis.
pub fn high_band_energy_fraction(h: &LogPolarSignal) -> f64 {
    let g = *h.geometry();
    let fft = Fft2::new(g.ns, g.ntheta);
    let (mut high, mut total) = (0.0, 0.0);
    for b in 0..4 {
        let mut data: Vec<Complex64> = h.samples().iter().map(|m| Complex64::new(m[b], 0.0)).collect();
        fft.both(&mut data, Direction::Forward);
        for row in 0..g.ns {
            let j = centered_freq(row, g.ns).unsigned_abs() as usize;
            for col in 0..g.ntheta {
                let k = centered_freq(col, g.ntheta).unsigned_abs() as usize;
                let e = data[row * g.ntheta + col].norm_sqr();
                total += e;
                if 3 * j > g.ns || 3 * k > g.ntheta {
                    high += e;
                }
            }
        }
    }
    if total == 0.0 {
        0.0
    } else {
        high / total
    }
}

/// Energy fraction above which a signal is not treated as band-limited.
pub const BAND_LIMIT_TOL: f64 = 1e-20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivativeResiduals {
    /// `M{(r d_r)^n h}` vs `(f v)^n H`, relative to the largest predicted coefficient.
    pub radial: f64,
    /// `M{d_theta^n h}` vs `H (g k)^n`.
    pub angular: f64,
    pub band_limited: bool,
}

pub fn check_derivative_theorems(h: &LogPolarSignal, pair: &RootPair, order: u32) -> Result<DerivativeResiduals> {
    check_pair(h, pair)?;
    let band_limited = high_band_energy_fraction(h) <= BAND_LIMIT_TOL;
    if order == 0 {
        return Ok(DerivativeResiduals {
            radial: 0.0,
            angular: 0.0,
            band_limited,
        });
    }
    let spec = cfmt_forward(h, pair)?;
    let (f, g) = (pair.f(), pair.g());
    let pow = |m: Multivector, n: u32| (0..n).fold(Multivector::one(m.signature()), |acc, _| acc.mul_raw(&m));

    let geo = *h.geometry();
    let radial_expect = spec.map(|j, _, x| pow(f * geo.v_at(j), order).mul_raw(&x));
    let angular_expect = spec.map(|_, k, x| x.mul_raw(&pow(g * k as f64, order)));
    let radial_got = cfmt_forward(&spectral_derivative(h, Axis::Radial, order), pair)?;
    let angular_got = cfmt_forward(&spectral_derivative(h, Axis::Angular, order), pair)?;

    let rel = |got: &Spectrum, want: &Spectrum| got.max_abs_diff(want) / want.max_abs().max(1.0);
    Ok(DerivativeResiduals {
        radial: rel(&radial_got, &radial_expect),
        angular: rel(&angular_got, &angular_expect),
        band_limited,
    })
}

/// Energy above which the angular seam columns disqualify a signal from the
/// power-scaling check.
pub const SEAM_TOL: f64 = 1e-12;

/// Sum of `|h|^2` over the columns within 1.5 grid steps of `theta = 0 = 2 pi`.
pub fn seam_energy(h: &LogPolarSignal) -> f64 {
    let g = h.geometry();
    let cols = [0, 1, g.ntheta - 1];
    (0..g.ns)
        .flat_map(|i| cols.iter().map(move |&l| (i, l)))
        .map(|(i, l)| h.at(i, l).modulus_sq())
        .sum()
}

const FD_STEP_V: f64 = 1e-3;
const FD_STEP_K: f64 = 1e-3;

fn stencil(order: u32) -> &'static [(f64, f64)] {
    // (offset in steps, weight)
    match order {
        0 => &[(0.0, 1.0)],
        1 => &[(-1.0, -0.5), (1.0, 0.5)],
        2 => &[(-1.0, 1.0), (0.0, -2.0), (1.0, 1.0)],
        _ => unreachable!("orders above 2 are rejected earlier"),
    }
}

/// `M{(ln r)^m theta^n h}(v,k)` against `f^m d_v^m d_k^n H(v,k) g^n` by central
/// finite differences of the direct sum at the given real `(v, k)` points.
/// Returns the largest discrepancy relative to the largest left-hand side.
pub fn check_power_scaling(h: &LogPolarSignal, pair: &RootPair, m: u32, n: u32, points: &[(f64, f64)]) -> Result<f64> {
    check_pair(h, pair)?;
    if m > 2 || n > 2 {
        return Err(Error::Domain(format!("power orders ({m},{n}) must be <= 2")));
    }
    let seam = seam_energy(h);
    if seam > SEAM_TOL {
        return Err(Error::contract(format!(
            "signal has energy {seam:e} at the theta seam; theta^n weighting would be discontinuous"
        )));
    }
    if m == 0 && n == 0 {
        return Ok(0.0);
    }
    let geo = *h.geometry();
    let mut samples = Vec::with_capacity(geo.len());
    for i in 0..geo.ns {
        for l in 0..geo.ntheta {
            let w = geo.s_at(i).powi(m as i32) * geo.theta_at(l).powi(n as i32);
            samples.push(h.at(i, l) * w);
        }
    }
    let weighted = LogPolarSignal::from_parts_unchecked(geo, h.signature(), samples);
    let (f, g) = (pair.f(), pair.g());
    let pow = |x: Multivector, e: u32| (0..e).fold(Multivector::one(x.signature()), |acc, _| acc.mul_raw(&x));
    let dv = FD_STEP_V * geo.dv();
    let dk = FD_STEP_K;

    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for &(v, k) in points {
        let lhs = cfmt_direct(&weighted, pair, v, k)?;
        let mut deriv = Multivector::zero(h.signature());
        for &(ov, wv) in stencil(m) {
            for &(ok, wk) in stencil(n) {
                let val = cfmt_direct(h, pair, v + ov * dv, k + ok * dk)?;
                deriv += val * (wv * wk);
            }
        }
        deriv = deriv * (1.0 / (dv.powi(m as i32) * dk.powi(n as i32)));
        let rhs = pow(f, m).mul_raw(&deriv).mul_raw(&pow(g, n));
        worst = worst.max(lhs.max_abs_diff(&rhs));
        scale = scale.max(lhs.modulus());
    }
    Ok(if scale > 0.0 { worst / scale } else { worst })
}

/// `(<h, m>, <H, M>)` with the signal measure `ds dtheta` and spectral measure `dv`.
pub fn plancherel_check(h: &LogPolarSignal, m: &LogPolarSignal, pair: &RootPair) -> Result<(f64, f64)> {
    check_pair(h, pair)?;
    let lhs = scalar_inner_product(h, m)?;
    let rhs = cfmt_forward(h, pair)?.scalar_inner_product(&cfmt_forward(m, pair)?)?;
    Ok((lhs, rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParsevalReport {
    pub norm_signal: f64,
    pub norm_spectrum: f64,
    /// `||H_+||`
    pub plus_part: f64,
    /// `||H_-||`
    pub minus_part: f64,
}

impl ParsevalReport {
    /// Largest relative violation of `||h|| = ||H||` and `||H||^2 = ||H_+||^2 + ||H_-||^2`.
    pub fn residual(&self) -> f64 {
        let scale = self.norm_signal.max(self.norm_spectrum);
        if scale == 0.0 {
            return 0.0;
        }
        let a = (self.norm_signal - self.norm_spectrum).abs() / scale;
        let b = (self.norm_spectrum.powi(2) - self.plus_part.powi(2) - self.minus_part.powi(2)).abs() / (scale * scale);
        a.max(b)
    }
}

pub fn parseval_check(h: &LogPolarSignal, pair: &RootPair) -> Result<ParsevalReport> {
    check_pair(h, pair)?;
    if !pair.is_blade_like() {
        return Err(Error::contract(
            "Parseval identity requires a blade-like pair (~f = -f and ~g = -g)",
        ));
    }
    let spec = cfmt_forward(h, pair)?;
    let (plus, minus) = spec.split();
    Ok(ParsevalReport {
        norm_signal: norm(h),
        norm_spectrum: spec.norm(),
        plus_part: plus.norm(),
        minus_part: minus.norm(),
    })
}

/// `max |M{h_±} - (M{h})_±|` over both parts.
pub fn split_commutation_residual(h: &LogPolarSignal, pair: &RootPair) -> Result<f64> {
    let (hp, hm) = split_signal(h, pair)?;
    let (sp, sm) = cfmt_forward(h, pair)?.split();
    Ok(cfmt_forward(&hp, pair)?
        .max_abs_diff(&sp)
        .max(cfmt_forward(&hm, pair)?.max_abs_diff(&sm)))
}

/// Largest relative violation of `|M{h}|^2 = |M{h_-}|^2 + |M{h_+}|^2`, pointwise.
pub fn spectral_pythagoras_residual(h: &LogPolarSignal, pair: &RootPair) -> Result<f64> {
    let (hp, hm) = split_signal(h, pair)?;
    let full = cfmt_forward(h, pair)?;
    let p = cfmt_forward(&hp, pair)?;
    let m = cfmt_forward(&hm, pair)?;
    let scale = full
        .coeffs()
        .iter()
        .map(Multivector::modulus_sq)
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    Ok(full
        .coeffs()
        .iter()
        .zip(p.coeffs())
        .zip(m.coeffs())
        .map(|((a, b), c)| (a.modulus_sq() - b.modulus_sq() - c.modulus_sq()).abs() / scale)
        .fold(0.0, f64::max))
}

/// Default geometry used by property checks.
pub fn default_geometry() -> GridGeometry {
    GridGeometry::symmetric(64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn quat() -> RootPair {
        RootPair::quaternion_default()
    }

    #[test]
    fn span_residual_basics() {
        let s = Signature::Cl02;
        let one = Multivector::one(s);
        let e1 = Multivector::e1(s);
        assert!(span_residual(&(one * 2.0 + e1 * 3.0), &[one, e1]) < 1e-15);
        assert!((span_residual(&Multivector::e2(s), &[one, e1]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn linearity_rejects_coefficients_outside_span() {
        let g = GridGeometry::symmetric(8);
        let h = LogPolarSignal::zeros(g, Signature::Cl02);
        let s = Signature::Cl02;
        let one = Multivector::one(s);
        let bad = Multivector::e2(s);
        assert!(matches!(
            check_linearity(&h, &h, &quat(), (bad, one), (one, one)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn linearity_examples() {
        let g = GridGeometry::symmetric(8);
        let s = Signature::Cl02;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h1 = LogPolarSignal::random(g, s, &mut rng);
        let h2 = LogPolarSignal::random(g, s, &mut rng);
        let one = Multivector::one(s);
        let zero = Multivector::zero(s);
        for (l, r) in [
            ((one, one), (one, one)),
            ((quat().f(), zero), (quat().g(), zero)),
            ((one * 2.5, zero), (one * 2.5, zero)),
        ] {
            let res = check_linearity(&h1, &h2, &quat(), l, r).unwrap();
            assert!(res.left <= 1e-10 && res.right <= 1e-10, "{res:?}");
        }
    }

    #[test]
    fn zero_shift_is_identity_and_half_turn_gives_alternating_sign() {
        let g = GridGeometry::symmetric(8);
        let s = Signature::Cl02;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = LogPolarSignal::random(g, s, &mut rng);
        assert_eq!(apply_scale_rotate(&h, 0, 0), h);
        let m = apply_scale_rotate(&h, 0, (g.ntheta / 2) as i64);
        let hs = cfmt_forward(&h, &quat()).unwrap();
        let ms = cfmt_forward(&m, &quat()).unwrap();
        for j in -4..4 {
            for k in -4..4i64 {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                assert!(ms.at(j, k).max_abs_diff(&(hs.at(j, k) * sign)) < 1e-12);
            }
        }
        assert!(apply_scale_rotate_physical(&h, 0.5 * g.ds(), 0.0).is_err());
        assert_eq!(
            apply_scale_rotate_physical(&h, 2.0 * g.ds(), -g.dtheta()).unwrap(),
            apply_scale_rotate(&h, 2, -1)
        );
    }

    #[test]
    fn reflections() {
        let g = GridGeometry::symmetric(8);
        let s = Signature::Cl02;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = LogPolarSignal::random(g, s, &mut rng);
        assert_eq!(reflect_circle(&reflect_circle(&h).unwrap()).unwrap(), h);
        assert_eq!(reverse_rotation(&reverse_rotation(&h)), h);
        let even = LogPolarSignal::from_scalar_fn(g, s, |x, t| (x * x).cos() + t.sin());
        assert!(reflect_circle(&even).unwrap().max_abs_diff(&even) < 1e-15);
        let lopsided = LogPolarSignal::zeros(GridGeometry::new(8, 8, 0.0, 1.0).unwrap(), s);
        assert!(matches!(reflect_circle(&lopsided), Err(Error::Contract(_))));
    }

    #[test]
    fn modulation_examples() {
        let g = GridGeometry::symmetric(8);
        let s = Signature::Cl02;
        let pair = quat();
        let one = LogPolarSignal::from_scalar_fn(g, s, |_, _| 1.0);
        assert!(modulate(&one, &pair, 0.0, 0).unwrap().max_abs_diff(&one) < 1e-15);
        let m = modulate(&one, &pair, g.v_at(1), 1).unwrap();
        let spec = cfmt_forward(&m, &pair).unwrap();
        for j in -4..4 {
            for k in -4..4 {
                let want = if (j, k) == (1, 1) { g.period() } else { 0.0 };
                assert!(
                    spec.at(j, k).max_abs_diff(&Multivector::scalar(s, want)) < 1e-12,
                    "({j},{k})"
                );
            }
        }
        assert!(matches!(
            modulate(&one, &pair, 0.5 * g.dv(), 0),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn derivative_examples() {
        let g = GridGeometry::symmetric(32);
        let s = Signature::Cl02;
        let pair = quat();
        let h = LogPolarSignal::from_scalar_fn(g, s, |x, _| x.cos());
        let r0 = check_derivative_theorems(&h, &pair, 0).unwrap();
        assert_eq!((r0.radial, r0.angular), (0.0, 0.0));
        let r1 = check_derivative_theorems(&h, &pair, 1).unwrap();
        assert!(r1.band_limited && r1.radial <= 1e-8, "{r1:?}");
        let h = LogPolarSignal::from_scalar_fn(g, s, |_, t| t.cos());
        let r1 = check_derivative_theorems(&h, &pair, 1).unwrap();
        assert!(r1.angular <= 1e-8, "{r1:?}");

        let d = spectral_derivative(&LogPolarSignal::from_scalar_fn(g, s, |x, _| x.cos()), Axis::Radial, 1);
        let want = LogPolarSignal::from_scalar_fn(g, s, |x, _| -x.sin());
        assert!(d.max_abs_diff(&want) < 1e-12);

        let rough = LogPolarSignal::from_scalar_fn(g, s, |x, _| if x > 0.0 { 1.0 } else { 0.0 });
        assert!(!check_derivative_theorems(&rough, &pair, 1).unwrap().band_limited);
    }

    #[test]
    fn power_scaling_trivial_order_and_seam_guard() {
        let g = GridGeometry::symmetric(16);
        let s = Signature::Cl02;
        let bump = LogPolarSignal::from_scalar_fn(g, s, |x, t| (-(x * x) - 4.0 * (t - 3.0).powi(2)).exp());
        assert_eq!(check_power_scaling(&bump, &quat(), 0, 0, &[(0.3, 0.5)]).unwrap(), 0.0);
        let seam = LogPolarSignal::from_scalar_fn(g, s, |_, _| 1.0);
        assert!(matches!(
            check_power_scaling(&seam, &quat(), 0, 1, &[(0.3, 0.5)]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn plancherel_and_parseval_trivial_cases() {
        let g = GridGeometry::symmetric(8);
        let s = Signature::Cl02;
        let z = LogPolarSignal::zeros(g, s);
        assert_eq!(plancherel_check(&z, &z, &quat()).unwrap(), (0.0, 0.0));
        let r = parseval_check(&z, &quat()).unwrap();
        assert_eq!(r.norm_signal + r.norm_spectrum + r.plus_part + r.minus_part, 0.0);

        let one = LogPolarSignal::from_scalar_fn(g, s, |_, _| 1.0);
        let r = parseval_check(&one, &quat()).unwrap();
        let expected = (TAU * g.period()).sqrt();
        assert!((r.norm_signal - expected).abs() < 1e-12);
        assert!((r.norm_spectrum - expected).abs() < 1e-12);

        let sig = Signature::Cl20;
        let f = crate::roots::sample_root(sig, 1.0, 0.0, crate::roots::Branch::Plus).unwrap();
        let pair = RootPair::new(f, f).unwrap();
        assert!(matches!(
            parseval_check(&LogPolarSignal::zeros(g, sig), &pair),
            Err(Error::Contract(_))
        ));
    }
}
