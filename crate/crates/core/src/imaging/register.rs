use rustfft::num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fft::{centered_freq, Direction, Fft2};
use crate::roots::RootPair;
use crate::signal::LogPolarSignal;

/// Below this peak-to-second-peak ratio the correlation is considered flat.
pub const NO_MATCH_THRESHOLD: f64 = 1.05;

/// Ratio reported when no competing local maximum is positive.
const CONFIDENCE_CAP: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Registration {
    /// `e^{p ds}`: magnification taking the first image to the second.
    pub scale: f64,
    /// `q dtheta` wrapped to `[-pi, pi)`, in the direction of increasing `theta`.
    pub angle_rad: f64,
    pub confidence: f64,
    /// Grid shift `p` along `s`, centered.
    pub shift_s: i64,
    /// Grid shift `q` along `theta`, centered.
    pub shift_theta: i64,
    pub matched: bool,
}

/// Finds `(p, q)` maximizing `c(p, q) = sum_x <h2(x), h1(x - (p, q))>` over cyclic shifts,
/// `h2(s, theta) = h1(s - ln a, theta - phi)` yields `scale = a` and `angle_rad = phi`
/// when both are whole grid steps.
///
/// Each blade channel has its mean over `theta` removed row by row first. This commutes
/// with cyclic shifts, and it drops the purely radial profile whose jump between the
/// inner and outer rim otherwise pins the peak at zero scale shift for resampled images.
/// The correlation is formed per channel with FFTs; the pair only fixes the algebra.
pub fn register(h1: &LogPolarSignal, h2: &LogPolarSignal, pair: &RootPair) -> Result<Registration> {
    h1.check_compatible(h2)?;
    if h1.signature() != pair.signature() {
        return Err(Error::SignatureMismatch {
            left: h1.signature(),
            right: pair.signature(),
        });
    }
    let geo = *h1.geometry();
    let n = geo.len();
    let fft = Fft2::new(geo.ns, geo.ntheta);
    let zero = Complex64::new(0.0, 0.0);
    let mut acc = vec![zero; n];
    for blade in 0..4 {
        let channel = |h: &LogPolarSignal| -> Vec<Complex64> {
            let mut data = Vec::with_capacity(n);
            for i in 0..geo.ns {
                let row = h.row(i);
                let mean = row.iter().map(|x| x[blade]).sum::<f64>() / geo.ntheta as f64;
                data.extend(row.iter().map(|x| Complex64::new(x[blade] - mean, 0.0)));
            }
            fft.both(&mut data, Direction::Forward);
            data
        };
        let a = channel(h1);
        let b = channel(h2);
        for ((c, a), b) in acc.iter_mut().zip(&a).zip(&b) {
            *c += a.conj() * b;
        }
    }
    fft.both(&mut acc, Direction::Inverse);
    let corr: Vec<f64> = acc.iter().map(|z| z.re / n as f64).collect();

    let (peak_idx, peak) =
        corr.iter().copied().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |best, (i, c)| if c > best.1 { (i, c) } else { best },
        );
    let second = second_local_max(&corr, geo.ns, geo.ntheta, peak_idx);
    // rounding left over from removing the mean of a constant channel is not a peak
    let energy = |h: &LogPolarSignal| h.samples().iter().map(|x| x.modulus_sq()).sum::<f64>();
    let floor = 1e-12 * (energy(h1) * energy(h2)).sqrt();
    let confidence = if peak <= floor {
        0.0
    } else if second <= 0.0 {
        CONFIDENCE_CAP
    } else {
        (peak / second).min(CONFIDENCE_CAP)
    };
    let p = centered_freq(peak_idx / geo.ntheta, geo.ns);
    let q = centered_freq(peak_idx % geo.ntheta, geo.ntheta);
    Ok(Registration {
        scale: (p as f64 * geo.ds()).exp(),
        angle_rad: q as f64 * geo.dtheta(),
        confidence,
        shift_s: p,
        shift_theta: q,
        matched: confidence >= NO_MATCH_THRESHOLD,
    })
}

/// Largest cyclic 8-neighborhood local maximum other than `skip`; ties count as maxima.
fn second_local_max(c: &[f64], rows: usize, cols: usize, skip: usize) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for r in 0..rows {
        for col in 0..cols {
            let idx = r * cols + col;
            if idx == skip || c[idx] <= best {
                continue;
            }
            let is_max = (-1i64..=1).all(|dr| {
                (-1i64..=1).all(|dc| {
                    let rr = (r as i64 + dr).rem_euclid(rows as i64) as usize;
                    let cc = (col as i64 + dc).rem_euclid(cols as i64) as usize;
                    c[rr * cols + cc] <= c[idx]
                })
            });
            if is_max {
                best = c[idx];
            }
        }
    }
    best
}
