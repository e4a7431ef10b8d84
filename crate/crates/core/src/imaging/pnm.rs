//! Binary PGM (P5) and PPM (P6) with maxval 255.

use crate::error::{Error, Result};

/// Minimum accepted side length.
pub const MIN_SIDE: usize = 8;

/// Pixel values in `[0, 1]`, interleaved by channel, row-major, `y` down.
#[derive(Clone, Debug, PartialEq)]
pub struct RasterImage {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<f64>,
}

impl RasterImage {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        if width < MIN_SIDE || height < MIN_SIDE {
            return Err(Error::Format(format!(
                "image {width}x{height} is smaller than {MIN_SIDE}x{MIN_SIDE}"
            )));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::Format(format!("{channels} channels; expected 1 or 3")));
        }
        if data.len() != width * height * channels {
            return Err(Error::Format("pixel buffer size does not match dimensions".into()));
        }
        let data = data
            .into_iter()
            .map(|v| if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) })
            .collect();
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    /// Gray image from `f(x, y)`, clamped to `[0, 1]`.
    pub fn from_fn_gray(width: usize, height: usize, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x as f64, y as f64));
            }
        }
        Self::new(width, height, 1, data)
    }

    /// RGB image from `f(x, y) -> [r, g, b]`.
    pub fn from_fn_rgb(width: usize, height: usize, f: impl Fn(f64, f64) -> [f64; 3]) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height * 3);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x as f64, y as f64));
            }
        }
        Self::new(width, height, 3, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn pixel(&self, x: usize, y: usize, c: usize) -> f64 {
        self.data[(y * self.width + x) * self.channels + c]
    }

    /// Channel value with zero outside the image.
    #[inline]
    pub fn pixel_or_zero(&self, x: i64, y: i64, c: usize) -> f64 {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            0.0
        } else {
            self.pixel(x as usize, y as usize, c)
        }
    }

    /// Channel-averaged intensity.
    pub fn intensity(&self, x: usize, y: usize) -> f64 {
        (0..self.channels).map(|c| self.pixel(x, y, c)).sum::<f64>() / self.channels as f64
    }

    /// Intensity-weighted centroid; the geometric center for an all-black image.
    pub fn centroid(&self) -> (f64, f64) {
        let (mut sx, mut sy, mut sw) = (0.0, 0.0, 0.0);
        for y in 0..self.height {
            for x in 0..self.width {
                let w = self.intensity(x, y);
                sx += w * x as f64;
                sy += w * y as f64;
                sw += w;
            }
        }
        if sw > 0.0 {
            (sx / sw, sy / sw)
        } else {
            ((self.width - 1) as f64 / 2.0, (self.height - 1) as f64 / 2.0)
        }
    }

    /// `P5` or `P6` bytes, values rounded to 0..=255.
    pub fn to_pnm(&self) -> Vec<u8> {
        let magic = if self.channels == 1 { "P5" } else { "P6" };
        let mut out = format!("{magic}\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend(self.data.iter().map(|v| (v * 255.0).round() as u8));
        out
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::parse(start, format!("{what} out of range")))
    }
}

pub fn parse_pnm(bytes: &[u8]) -> Result<RasterImage> {
    if bytes.len() < 2 {
        return Err(Error::parse(0, "file too short for a PNM header"));
    }
    let channels = match &bytes[..2] {
        b"P5" => 1,
        b"P6" => 3,
        _ => return Err(Error::parse(0, "expected magic P5 or P6")),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    let maxval_at = cur.pos;
    let maxval = cur.number("maxval")?;
    if maxval != 255 {
        return Err(Error::Format(format!(
            "maxval {maxval} at byte {maxval_at}; only 255 is supported"
        )));
    }
    // exactly one whitespace byte separates the header from the raster
    if cur.pos >= bytes.len() || !bytes[cur.pos].is_ascii_whitespace() {
        return Err(Error::parse(cur.pos, "missing whitespace after maxval"));
    }
    let start = cur.pos + 1;
    let need = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| Error::parse(2, "image dimensions overflow"))?;
    let have = bytes.len() - start;
    if have < need {
        return Err(Error::parse(
            bytes.len(),
            format!("truncated raster: {have} of {need} bytes"),
        ));
    }
    let data = bytes[start..start + need].iter().map(|&b| b as f64 / 255.0).collect();
    RasterImage::new(width, height, channels, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray_bytes(w: usize, h: usize, v: u8) -> Vec<u8> {
        let mut b = format!("P5\n# comment\n{w} {h}\n255\n").into_bytes();
        b.extend(std::iter::repeat_n(v, w * h));
        b
    }

    #[test]
    fn gray_values_normalize() {
        let img = parse_pnm(&gray_bytes(8, 9, 128)).unwrap();
        assert_eq!((img.width(), img.height(), img.channels()), (8, 9, 1));
        assert_eq!(img.pixel(3, 4, 0), 128.0 / 255.0);
    }

    #[test]
    fn rgb_round_trip() {
        let img = RasterImage::from_fn_rgb(8, 8, |x, y| [x / 7.0, y / 7.0, 1.0]).unwrap();
        let back = parse_pnm(&img.to_pnm()).unwrap();
        assert_eq!(back.channels(), 3);
        assert!((back.pixel(7, 0, 0) - 1.0).abs() < 1e-12);
        assert_eq!(back.pixel(0, 0, 2), 1.0);
    }

    #[test]
    fn malformed_inputs() {
        let good = gray_bytes(8, 8, 1);
        assert!(matches!(parse_pnm(&good[..good.len() - 3]), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_pnm(b"P3\n8 8\n255\n"),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            parse_pnm(b"P5\n8 x\n255\n"),
            Err(Error::Parse { offset: 5, .. })
        ));
        let mut wide = b"P5\n8 8\n65535\n".to_vec();
        wide.extend(vec![0u8; 128]);
        assert!(matches!(parse_pnm(&wide), Err(Error::Format(_))));
        assert!(matches!(parse_pnm(&gray_bytes(4, 4, 0)), Err(Error::Format(_))));
        assert!(parse_pnm(b"").is_err());
    }

    #[test]
    fn centroid_of_off_center_dot() {
        let img = RasterImage::from_fn_gray(16, 16, |x, y| if x == 3.0 && y == 10.0 { 1.0 } else { 0.0 }).unwrap();
        assert_eq!(img.centroid(), (3.0, 10.0));
        let black = RasterImage::from_fn_gray(16, 8, |_, _| 0.0).unwrap();
        assert_eq!(black.centroid(), (7.5, 3.5));
    }
}
