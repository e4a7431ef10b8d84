//! Bindings for the static demo page in `www/`.
//!
//! The work happens in [`demo`], which is plain Rust and tested natively; the
//! exported functions only convert errors into JS exceptions.

use wasm_bindgen::prelude::*;

pub mod demo {
    use clifford_mellin::imaging::{descriptor, register, synth, to_log_polar, Descriptor, Ingested, Registration};
    use clifford_mellin::roots::export_manifold;
    use clifford_mellin::{GridGeometry, RootPair, Signature};

    /// Side of the rendered demo images in pixels.
    pub const SIDE: usize = 128;

    fn shape(seed: u32) -> synth::Shape {
        synth::corpus(1, u64::from(seed), true).remove(0)
    }

    pub fn grid(n: usize) -> Result<GridGeometry, String> {
        GridGeometry::new(n, n, 0.0, ((SIDE / 2 - 1) as f64).ln()).map_err(|e| e.to_string())
    }

    fn ingest(seed: u32, scale: f64, angle: f64) -> Result<Ingested, String> {
        let img = shape(seed)
            .render(SIDE, SIDE, scale, angle)
            .map_err(|e| e.to_string())?;
        Ingested::new(img, Signature::Cl02, None).map_err(|e| e.to_string())
    }

    pub fn rgba(seed: u32, scale: f64, angle: f64) -> Result<Vec<u8>, String> {
        let img = ingest(seed, scale, angle)?.image;
        let mut out = Vec::with_capacity(SIDE * SIDE * 4);
        for px in img.data().chunks(3) {
            out.extend(px.iter().map(|v| (v * 255.0).round() as u8));
            out.push(255);
        }
        Ok(out)
    }

    fn describe(seed: u32, scale: f64, angle: f64, n: usize) -> Result<Descriptor, String> {
        let src = ingest(seed, scale, angle)?;
        let h = to_log_polar(&src, None, grid(n)?).map_err(|e| e.to_string())?;
        descriptor(&h, &RootPair::quaternion_default()).map_err(|e| e.to_string())
    }

    /// `ln(1 + |H|)` in storage order, and the descriptor distance to the
    /// untransformed shape relative to its norm.
    pub fn spectrum(seed: u32, scale: f64, angle: f64, n: usize) -> Result<(Vec<f64>, f64), String> {
        let d = describe(seed, scale, angle, n)?;
        let base = describe(seed, 1.0, 0.0, n)?;
        let zero = Descriptor {
            magnitudes: vec![0.0; base.magnitudes.len()],
            ..base.clone()
        };
        let rel = d.distance(&base).map_err(|e| e.to_string())? / base.distance(&zero).map_err(|e| e.to_string())?;
        Ok((d.magnitudes.iter().map(|m| m.ln_1p()).collect(), rel))
    }

    /// `(b1, b2, beta)` triples, flattened.
    pub fn manifold(algebra: &str, resolution: usize) -> Result<Vec<f64>, String> {
        let sig: Signature = algebra.parse().map_err(|e: clifford_mellin::Error| e.to_string())?;
        let points = export_manifold(sig, resolution).map_err(|e| e.to_string())?;
        Ok(points.iter().flat_map(|p| [p.b1, p.b2, p.beta]).collect())
    }

    pub fn registration(seed: u32, scale: f64, angle: f64, n: usize) -> Result<Registration, String> {
        let geo = grid(n)?;
        let a = to_log_polar(&ingest(seed, 1.0, 0.0)?, None, geo).map_err(|e| e.to_string())?;
        let b = to_log_polar(&ingest(seed, scale, angle)?, None, geo).map_err(|e| e.to_string())?;
        register(&a, &b, &RootPair::quaternion_default()).map_err(|e| e.to_string())
    }
}

fn js(e: String) -> JsValue {
    JsValue::from_str(&e)
}

#[wasm_bindgen]
pub fn side() -> usize {
    demo::SIDE
}

/// RGBA pixels of demo shape `seed`, magnified by `scale` and turned by `angle` radians.
#[wasm_bindgen]
pub fn render_rgba(seed: u32, scale: f64, angle: f64) -> Result<Vec<u8>, JsValue> {
    demo::rgba(seed, scale, angle).map_err(js)
}

#[wasm_bindgen]
pub struct SpectrumView {
    n: usize,
    log_magnitudes: Vec<f64>,
    /// Relative descriptor distance to the untransformed shape.
    pub distance: f64,
}

#[wasm_bindgen]
impl SpectrumView {
    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.n
    }

    #[wasm_bindgen(getter)]
    pub fn log_magnitudes(&self) -> Vec<f64> {
        self.log_magnitudes.clone()
    }
}

/// Magnitude spectrum on an `n x n` log-polar grid.
#[wasm_bindgen]
pub fn magnitude_spectrum(seed: u32, scale: f64, angle: f64, n: usize) -> Result<SpectrumView, JsValue> {
    let (log_magnitudes, distance) = demo::spectrum(seed, scale, angle, n).map_err(js)?;
    Ok(SpectrumView {
        n,
        log_magnitudes,
        distance,
    })
}

/// Flattened `(b1, b2, beta)` roots of -1 for `"Cl(2,0)"`, `"Cl(1,1)"` or `"Cl(0,2)"`.
#[wasm_bindgen]
pub fn manifold_points(algebra: &str, resolution: usize) -> Result<Vec<f64>, JsValue> {
    demo::manifold(algebra, resolution).map_err(js)
}

#[wasm_bindgen]
pub struct RegistrationView {
    pub scale: f64,
    pub angle: f64,
    pub confidence: f64,
    pub matched: bool,
    /// Grid steps of the estimate.
    pub ds: f64,
    pub dtheta: f64,
}

/// Registers the untransformed shape against its `(scale, angle)` copy.
#[wasm_bindgen]
pub fn register_shapes(seed: u32, scale: f64, angle: f64, n: usize) -> Result<RegistrationView, JsValue> {
    let r = demo::registration(seed, scale, angle, n).map_err(js)?;
    let g = demo::grid(n).map_err(js)?;
    Ok(RegistrationView {
        scale: r.scale,
        angle: r.angle_rad,
        confidence: r.confidence,
        matched: r.matched,
        ds: g.ds(),
        dtheta: g.dtheta(),
    })
}

#[cfg(test)]
mod tests {
    use super::demo;

    #[test]
    fn rgba_has_four_bytes_per_pixel() {
        let px = demo::rgba(3, 1.0, 0.0).unwrap();
        assert_eq!(px.len(), demo::SIDE * demo::SIDE * 4);
        assert!(px.chunks(4).all(|p| p[3] == 255));
        assert!(px.chunks(4).any(|p| p[0] > 0));
    }

    #[test]
    fn spectrum_of_the_base_shape_is_at_distance_zero() {
        let (mags, d) = demo::spectrum(1, 1.0, 0.0, 32).unwrap();
        assert_eq!(mags.len(), 32 * 32);
        assert_eq!(d, 0.0);
        let (_, turned) = demo::spectrum(1, 1.0, 0.7, 32).unwrap();
        assert!(turned > 0.0 && turned < 0.2, "{turned}");
    }

    #[test]
    fn manifold_points_come_in_triples() {
        let xyz = demo::manifold("Cl(0,2)", 5).unwrap();
        assert_eq!(xyz.len(), 3 * 25);
        for p in xyz.chunks(3) {
            assert!((p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 1.0).abs() < 1e-12);
        }
        assert!(demo::manifold("Cl(3,0)", 5).is_err());
    }

    #[test]
    fn registration_finds_the_rotation() {
        let g = demo::grid(64).unwrap();
        let r = demo::registration(2, 1.1, 0.6, 64).unwrap();
        assert!(r.matched);
        assert!((r.angle_rad - 0.6).abs() <= g.dtheta());
        assert!((r.scale.ln() - 1.1f64.ln()).abs() <= g.ds());
    }
}
