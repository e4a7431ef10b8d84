//! Binary signal (`CLMS v1`) and spectrum (`CLMF v1`) files plus CSV exports.
//!
//! Both binary formats start with a magic line and `key=value` text header lines in a
//! fixed order, immediately followed by little-endian `f64` payload, four values per
//! sample in blade order `1, e1, e2, e12`. Spectra are stored in centered frequency
//! order (`j` from `-ns/2`, `k` from `-ntheta/2`, `j` outer).

use crate::algebra::{Multivector, Signature};
use crate::cfmt::Spectrum;
use crate::error::{Error, Result};
use crate::roots::RootPair;
use crate::signal::{GridGeometry, LogPolarSignal};

pub const SIGNAL_MAGIC: &str = "CLMS v1";
pub const SPECTRUM_MAGIC: &str = "CLMF v1";

fn header_common(out: &mut Vec<u8>, magic: &str, sig: Signature, g: &GridGeometry) {
    out.extend_from_slice(
        format!(
            "{magic}\nalgebra={sig}\nns={}\nntheta={}\nsmin={}\nsmax={}\n",
            g.ns, g.ntheta, g.smin, g.smax
        )
        .as_bytes(),
    );
}

fn payload(out: &mut Vec<u8>, values: &[Multivector]) {
    out.reserve(values.len() * 32);
    for m in values {
        for c in m.coeffs() {
            out.extend_from_slice(&c.to_le_bytes());
        }
    }
}

pub fn encode_signal(h: &LogPolarSignal) -> Vec<u8> {
    let mut out = Vec::new();
    header_common(&mut out, SIGNAL_MAGIC, h.signature(), h.geometry());
    payload(&mut out, h.samples());
    out
}

pub fn encode_spectrum(s: &Spectrum) -> Vec<u8> {
    let mut out = Vec::new();
    header_common(&mut out, SPECTRUM_MAGIC, s.signature(), s.geometry());
    out.extend_from_slice(format!("f={}\ng={}\n", s.pair().f().to_text(), s.pair().g().to_text()).as_bytes());
    payload(&mut out, s.coeffs());
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn line(&mut self) -> Result<&'a str> {
        let start = self.pos;
        let rest = &self.bytes[start..];
        let end = rest
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| Error::parse(start, "unterminated header line"))?;
        self.pos = start + end + 1;
        std::str::from_utf8(&rest[..end]).map_err(|_| Error::parse(start, "header line is not UTF-8"))
    }

    fn field(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let at = self.pos;
        let line = self.line()?;
        match line.split_once('=') {
            Some((k, v)) if k == key => Ok((at, v)),
            _ => Err(Error::parse(at, format!("expected '{key}=...', found '{line}'"))),
        }
    }

    fn parsed<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let (at, v) = self.field(key)?;
        v.trim()
            .parse()
            .map_err(|_| Error::parse(at, format!("invalid value for {key}: '{v}'")))
    }

    fn header(&mut self, magic: &str) -> Result<(Signature, GridGeometry)> {
        let line = self.line()?;
        if line != magic {
            return Err(Error::parse(0, format!("bad magic '{line}', expected '{magic}'")));
        }
        let (at, alg) = self.field("algebra")?;
        let sig: Signature = alg.parse().map_err(|e: Error| Error::parse(at, e.to_string()))?;
        let ns = self.parsed("ns")?;
        let ntheta = self.parsed("ntheta")?;
        let smin = self.parsed("smin")?;
        let at = self.pos;
        let smax = self.parsed("smax")?;
        let geometry = GridGeometry::new(ns, ntheta, smin, smax).map_err(|e| Error::parse(at, e.to_string()))?;
        Ok((sig, geometry))
    }

    fn payload(&mut self, sig: Signature, count: usize) -> Result<Vec<Multivector>> {
        let need = count * 32;
        let have = self.bytes.len() - self.pos;
        if have != need {
            return Err(Error::parse(
                self.pos,
                format!("payload has {have} bytes, expected {need}"),
            ));
        }
        let data = &self.bytes[self.pos..];
        let mut out = Vec::with_capacity(count);
        for (idx, chunk) in data.chunks_exact(32).enumerate() {
            let mut c = [0.0; 4];
            for (b, slot) in c.iter_mut().enumerate() {
                let raw: [u8; 8] = chunk[b * 8..b * 8 + 8].try_into().expect("8 bytes");
                *slot = f64::from_le_bytes(raw);
            }
            if c.iter().any(|x| !x.is_finite()) {
                return Err(Error::parse(self.pos + idx * 32, "non-finite coefficient"));
            }
            out.push(Multivector::new(sig, c));
        }
        self.pos = self.bytes.len();
        Ok(out)
    }
}

pub fn decode_signal(bytes: &[u8]) -> Result<LogPolarSignal> {
    let mut r = Reader { bytes, pos: 0 };
    let (sig, geometry) = r.header(SIGNAL_MAGIC)?;
    let samples = r.payload(sig, geometry.len())?;
    LogPolarSignal::new(geometry, sig, samples)
}

pub fn decode_spectrum(bytes: &[u8]) -> Result<Spectrum> {
    let mut r = Reader { bytes, pos: 0 };
    let (sig, geometry) = r.header(SPECTRUM_MAGIC)?;
    let (at_f, f) = r.field("f")?;
    let f = Multivector::parse_text(sig, f).map_err(|e| Error::parse(at_f, e.to_string()))?;
    let (at_g, g) = r.field("g")?;
    let g = Multivector::parse_text(sig, g).map_err(|e| Error::parse(at_g, e.to_string()))?;
    let pair = RootPair::from_values(f, g).map_err(|e| Error::parse(at_f, e.to_string()))?;
    let coeffs = r.payload(sig, geometry.len())?;
    Spectrum::new(geometry, pair, coeffs)
}

/// `j,k,v,m0,m1,m2,m12` in centered order.
pub fn spectrum_csv(s: &Spectrum) -> String {
    let g = s.geometry();
    let mut out = String::from("j,k,v,m0,m1,m2,m12\n");
    for row in 0..g.ns {
        let j = g.j_of_row(row);
        for col in 0..g.ntheta {
            let k = g.k_of_col(col);
            let c = s.at(j, k).coeffs();
            out.push_str(&format!("{j},{k},{},{},{},{},{}\n", g.v_at(j), c[0], c[1], c[2], c[3]));
        }
    }
    out
}

/// `j,k,v,mag` in centered order.
pub fn magnitude_csv(geometry: &GridGeometry, magnitudes: &[f64]) -> String {
    let mut out = String::from("j,k,v,mag\n");
    for row in 0..geometry.ns {
        let j = geometry.j_of_row(row);
        for col in 0..geometry.ntheta {
            let k = geometry.k_of_col(col);
            out.push_str(&format!(
                "{j},{k},{},{}\n",
                geometry.v_at(j),
                magnitudes[row * geometry.ntheta + col]
            ));
        }
    }
    out
}
