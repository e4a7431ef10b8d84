//! Synthetic shapes built from anisotropic Gaussian blobs, rendered analytically under
//! an exact scaling and rotation about the image center.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RasterImage;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct Blob {
    pub x: f64,
    pub y: f64,
    pub sigma_major: f64,
    pub sigma_minor: f64,
    pub orientation: f64,
    pub color: [f64; 3],
}

impl Blob {
    fn value(&self, x: f64, y: f64) -> f64 {
        let (dx, dy) = (x - self.x, y - self.y);
        let (sin, cos) = self.orientation.sin_cos();
        let u = cos * dx + sin * dy;
        let w = -sin * dx + cos * dy;
        (-0.5 * ((u / self.sigma_major).powi(2) + (w / self.sigma_minor).powi(2))).exp()
    }
}

/// Blob positions are relative to the image center, in pixels.
#[derive(Clone, Debug, PartialEq)]
pub struct Shape {
    pub blobs: Vec<Blob>,
    pub rgb: bool,
}

impl Shape {
    /// Three to five blobs placed 6 to 26 pixels from the center.
    pub fn random<R: Rng>(rng: &mut R, rgb: bool) -> Self {
        let count = rng.random_range(3..=5);
        let blobs = (0..count)
            .map(|_| {
                let radius = rng.random_range(6.0..26.0);
                let angle = rng.random_range(0.0..std::f64::consts::TAU);
                let sigma_major = rng.random_range(3.0..7.0);
                let color = if rgb {
                    [
                        rng.random_range(0.2..0.9),
                        rng.random_range(0.2..0.9),
                        rng.random_range(0.2..0.9),
                    ]
                } else {
                    [rng.random_range(0.4..0.9); 3]
                };
                Blob {
                    x: radius * angle.cos(),
                    y: radius * angle.sin(),
                    sigma_major,
                    sigma_minor: sigma_major * rng.random_range(0.35..0.9),
                    orientation: rng.random_range(0.0..std::f64::consts::PI),
                    color,
                }
            })
            .collect();
        Self { blobs, rgb }
    }

    /// Continuous intensity per channel at offset `(x, y)` from the center.
    pub fn value(&self, x: f64, y: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        for b in &self.blobs {
            let v = b.value(x, y);
            for (o, c) in out.iter_mut().zip(b.color) {
                *o += c * v;
            }
        }
        out
    }

    /// Renders `x -> shape(R(-angle) (x - c) / scale)`: the shape magnified by `scale` and
    /// turned by `angle` (from `+x` towards `+y`) about the center `c`.
    pub fn render(&self, width: usize, height: usize, scale: f64, angle: f64) -> Result<RasterImage> {
        let (cx, cy) = center(width, height);
        let (sin, cos) = angle.sin_cos();
        let warp = |x: f64, y: f64| {
            let (dx, dy) = (x - cx, y - cy);
            self.value((cos * dx + sin * dy) / scale, (-sin * dx + cos * dy) / scale)
        };
        if self.rgb {
            RasterImage::from_fn_rgb(width, height, warp)
        } else {
            RasterImage::from_fn_gray(width, height, |x, y| warp(x, y)[0])
        }
    }
}

/// Pixel coordinates of the rotation center used by [`Shape::render`].
pub fn center(width: usize, height: usize) -> (f64, f64) {
    ((width - 1) as f64 / 2.0, (height - 1) as f64 / 2.0)
}

/// `n` shapes from a ChaCha8 stream.
pub fn corpus(n: usize, seed: u64, rgb: bool) -> Vec<Shape> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Shape::random(&mut rng, rgb)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turn_moves_pixels() {
        let shape = &corpus(1, 1, false)[0];
        let a = shape.render(33, 33, 1.0, 0.0).unwrap();
        let b = shape.render(33, 33, 1.0, std::f64::consts::FRAC_PI_2).unwrap();
        // on an odd grid a quarter turn about the center is a pixel permutation
        for y in 0..33 {
            for x in 0..33 {
                let (dx, dy) = (x as i64 - 16, y as i64 - 16);
                let (rx, ry) = ((16 - dy) as usize, (16 + dx) as usize);
                assert!((a.pixel(x, y, 0) - b.pixel(rx, ry, 0)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(corpus(4, 7, true), corpus(4, 7, true));
        assert_ne!(corpus(4, 7, true), corpus(4, 8, true));
    }
}
