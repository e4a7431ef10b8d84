//! Wall-clock comparison of the FFT path against the literal double sum.
//!
//! The direct sum over a full large grid takes minutes, so it is timed on a seeded
//! sample of bins and extrapolated linearly: every bin costs the same `ns * ntheta`
//! kernel products.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cfmt::{cfmt_direct_bins, FastPlan};
use crate::error::{Error, Result};
use crate::roots::RootPair;
use crate::signal::{GridGeometry, LogPolarSignal};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub ns: usize,
    pub ntheta: usize,
    /// Best of `repeats` fast forward transforms.
    pub fast_seconds: f64,
    pub direct_sampled_bins: usize,
    pub direct_sampled_seconds: f64,
    /// `direct_sampled_seconds * bins / direct_sampled_bins`.
    pub direct_seconds_estimated: f64,
    pub ratio: f64,
    /// Agreement of the two paths on the sampled bins.
    pub max_abs_diff: f64,
}

pub fn fast_bench(
    geometry: GridGeometry,
    pair: &RootPair,
    seed: u64,
    sample_bins: usize,
    repeats: usize,
) -> Result<BenchReport> {
    geometry.validate()?;
    if sample_bins == 0 || repeats == 0 {
        return Err(Error::Domain("benchmark needs at least one bin and one repeat".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = LogPolarSignal::random(geometry, pair.signature(), &mut rng);
    let bins: Vec<(i64, i64)> = (0..sample_bins)
        .map(|_| {
            (
                rng.random_range(-(geometry.ns as i64) / 2..geometry.ns as i64 / 2),
                rng.random_range(-(geometry.ntheta as i64) / 2..geometry.ntheta as i64 / 2),
            )
        })
        .collect();

    let plan = FastPlan::new(geometry, *pair);
    let mut fast_seconds = f64::INFINITY;
    let mut spectrum = None;
    for _ in 0..repeats {
        let t = Instant::now();
        let s = plan.forward(&h)?;
        fast_seconds = fast_seconds.min(t.elapsed().as_secs_f64());
        spectrum = Some(s);
    }
    let spectrum = spectrum.expect("repeats >= 1");

    let t = Instant::now();
    let direct = cfmt_direct_bins(&h, pair, &bins)?;
    let direct_sampled_seconds = t.elapsed().as_secs_f64();
    let direct_seconds_estimated = direct_sampled_seconds * geometry.len() as f64 / sample_bins as f64;
    let max_abs_diff = bins
        .iter()
        .zip(&direct)
        .map(|(&(j, k), d)| spectrum.at(j, k).max_abs_diff(d))
        .fold(0.0, f64::max);
    Ok(BenchReport {
        ns: geometry.ns,
        ntheta: geometry.ntheta,
        fast_seconds,
        direct_sampled_bins: sample_bins,
        direct_sampled_seconds,
        direct_seconds_estimated,
        ratio: direct_seconds_estimated / fast_seconds.max(f64::MIN_POSITIVE),
        max_abs_diff,
    })
}
