//! Cartesian images: ingestion, log-polar resampling, magnitude descriptors and
//! scale/rotation registration.

mod descriptor;
mod pnm;
mod register;
pub mod synth;

pub use descriptor::{descriptor, Descriptor};
pub use pnm::{parse_pnm, RasterImage, MIN_SIDE};
pub use register::{register, Registration, NO_MATCH_THRESHOLD};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::algebra::{Multivector, Signature};
use crate::error::{Error, Result};
use crate::signal::{GridGeometry, LogPolarSignal};

/// Target blade index (`0..4` in the order `1, e1, e2, e12`) for each image channel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelMap {
    blades: Vec<usize>,
}

impl ChannelMap {
    pub fn new(blades: Vec<usize>) -> Result<Self> {
        if blades.is_empty() || blades.len() > 4 || blades.iter().any(|&b| b > 3) {
            return Err(Error::Domain(format!("invalid channel map {blades:?}")));
        }
        Ok(Self { blades })
    }

    /// Gray to the scalar blade; RGB to `e1, e2, e12`.
    pub fn default_for(channels: usize) -> Self {
        if channels == 1 {
            Self { blades: vec![0] }
        } else {
            Self { blades: vec![1, 2, 3] }
        }
    }

    pub fn blades(&self) -> &[usize] {
        &self.blades
    }

    fn check(&self, img: &RasterImage) -> Result<()> {
        if self.blades.len() != img.channels() {
            return Err(Error::Format(format!(
                "channel map has {} entries but the image has {} channels",
                self.blades.len(),
                img.channels()
            )));
        }
        Ok(())
    }

    fn assemble(&self, sig: Signature, values: impl Fn(usize) -> f64) -> Multivector {
        let mut c = [0.0; 4];
        for (ch, &b) in self.blades.iter().enumerate() {
            c[b] += values(ch);
        }
        Multivector::new(sig, c)
    }
}

/// Raster ready for resampling into one algebra.
#[derive(Clone, Debug)]
pub struct Ingested {
    pub image: RasterImage,
    pub signature: Signature,
    pub map: ChannelMap,
}

impl Ingested {
    pub fn new(image: RasterImage, signature: Signature, map: Option<ChannelMap>) -> Result<Self> {
        let map = map.unwrap_or_else(|| ChannelMap::default_for(image.channels()));
        map.check(&image)?;
        Ok(Self { image, signature, map })
    }

    pub fn pixel(&self, x: usize, y: usize) -> Multivector {
        self.map.assemble(self.signature, |c| self.image.pixel(x, y, c))
    }

    /// Bilinear sample at a real position; pixels outside the image read as zero.
    pub fn sample(&self, x: f64, y: f64) -> Multivector {
        let (x0, y0) = (x.floor(), y.floor());
        let (tx, ty) = (x - x0, y - y0);
        let (xi, yi) = (x0 as i64, y0 as i64);
        let img = &self.image;
        self.map.assemble(self.signature, |c| {
            let p00 = img.pixel_or_zero(xi, yi, c);
            let p10 = img.pixel_or_zero(xi + 1, yi, c);
            let p01 = img.pixel_or_zero(xi, yi + 1, c);
            let p11 = img.pixel_or_zero(xi + 1, yi + 1, c);
            (1.0 - ty) * ((1.0 - tx) * p00 + tx * p10) + ty * ((1.0 - tx) * p01 + tx * p11)
        })
    }
}

/// Reads a PGM/PPM file and attaches a channel map.
pub fn ingest(path: &std::path::Path, sig: Signature, map: Option<ChannelMap>) -> Result<Ingested> {
    let bytes = std::fs::read(path)?;
    Ingested::new(parse_pnm(&bytes)?, sig, map)
}

/// Largest radius the resampler may reach for an image of this size.
pub fn max_radius(img: &RasterImage) -> f64 {
    img.width().min(img.height()) as f64 / 2.0 - 1.0
}

/// Samples `center + e^s (cos theta, sin theta)` at every grid node.
/// `center` defaults to the intensity centroid.
pub fn to_log_polar(src: &Ingested, center: Option<(f64, f64)>, geometry: GridGeometry) -> Result<LogPolarSignal> {
    geometry.validate()?;
    let img = &src.image;
    let (cx, cy) = center.unwrap_or_else(|| img.centroid());
    let (w, h) = (img.width() as f64, img.height() as f64);
    if !(cx >= 0.0 && cy >= 0.0 && cx <= w - 1.0 && cy <= h - 1.0) {
        return Err(Error::Geometry(format!(
            "center ({cx}, {cy}) lies outside the {w}x{h} image"
        )));
    }
    let limit = max_radius(img);
    if geometry.smax.exp() > limit * (1.0 + 1e-12) {
        return Err(Error::Geometry(format!(
            "outer radius e^smax = {} exceeds {limit} pixels for a {w}x{h} image",
            geometry.smax.exp()
        )));
    }
    let trig: Vec<(f64, f64)> = (0..geometry.ntheta).map(|l| geometry.theta_at(l).sin_cos()).collect();
    let row = |i: usize| -> Vec<Multivector> {
        let r = geometry.s_at(i).exp();
        trig.iter()
            .map(|&(sin, cos)| src.sample(cx + r * cos, cy + r * sin))
            .collect()
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<Multivector>> = (0..geometry.ns).into_par_iter().map(row).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<Multivector>> = (0..geometry.ns).map(row).collect();
    LogPolarSignal::new(geometry, src.signature, rows.concat())
}
