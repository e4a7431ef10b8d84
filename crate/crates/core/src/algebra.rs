//! Arithmetic in the three 4-dimensional real Clifford algebras Cl(p,q), p+q = 2.
//!
//! Blade order is fixed everywhere as `[1, e1, e2, e12]`. The geometric product is
//! driven by a per-signature structure table of `(target blade, sign)` entries built
//! from the rules `e_k e_l + e_l e_k = 2 eps_k delta_kl`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Blade index constants into `Multivector::coeffs`.
pub const SCALAR: usize = 0;
pub const E1: usize = 1;
pub const E2: usize = 2;
pub const E12: usize = 3;

/// Grade of each blade in `[1, e1, e2, e12]` order.
pub const BLADE_GRADE: [usize; 4] = [0, 1, 1, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Signature {
    #[serde(rename = "Cl(2,0)")]
    Cl20,
    #[serde(rename = "Cl(1,1)")]
    Cl11,
    #[serde(rename = "Cl(0,2)")]
    Cl02,
}

/// One structure-table entry: `e_i e_j = sign * e_target`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Entry {
    pub target: usize,
    pub sign: f64,
}

pub type StructureTable = [[Entry; 4]; 4];

const fn entry(target: usize, sign: f64) -> Entry {
    Entry { target, sign }
}

const fn build_table(eps1: f64, eps2: f64) -> StructureTable {
    [
        // 1 * x
        [entry(0, 1.0), entry(1, 1.0), entry(2, 1.0), entry(3, 1.0)],
        // e1 * [1, e1, e2, e12]
        [entry(1, 1.0), entry(0, eps1), entry(3, 1.0), entry(2, eps1)],
        // e2 * [1, e1, e2, e12]
        [entry(2, 1.0), entry(3, -1.0), entry(0, eps2), entry(1, -eps2)],
        // e12 * [1, e1, e2, e12]
        [entry(3, 1.0), entry(2, -eps1), entry(1, eps2), entry(0, -eps1 * eps2)],
    ]
}

static TABLE_20: StructureTable = build_table(1.0, 1.0);
static TABLE_11: StructureTable = build_table(1.0, -1.0);
static TABLE_02: StructureTable = build_table(-1.0, -1.0);

impl Signature {
    pub const ALL: [Signature; 3] = [Signature::Cl20, Signature::Cl11, Signature::Cl02];

    pub fn from_pq(p: u32, q: u32) -> Result<Self> {
        match (p, q) {
            (2, 0) => Ok(Signature::Cl20),
            (1, 1) => Ok(Signature::Cl11),
            (0, 2) => Ok(Signature::Cl02),
            _ => Err(Error::Domain(format!("unsupported signature ({p},{q}); p+q must be 2"))),
        }
    }

    pub fn p(self) -> u32 {
        match self {
            Signature::Cl20 => 2,
            Signature::Cl11 => 1,
            Signature::Cl02 => 0,
        }
    }

    pub fn q(self) -> u32 {
        2 - self.p()
    }

    /// Square of basis vector `e_k`, k in {1, 2}.
    pub fn eps(self, k: usize) -> f64 {
        debug_assert!(k == 1 || k == 2);
        if (k as u32) <= self.p() {
            1.0
        } else {
            -1.0
        }
    }

    pub fn table(self) -> &'static StructureTable {
        match self {
            Signature::Cl20 => &TABLE_20,
            Signature::Cl11 => &TABLE_11,
            Signature::Cl02 => &TABLE_02,
        }
    }

    /// Sign picked up by each blade under the principal reverse.
    pub fn principal_reverse_signs(self) -> [f64; 4] {
        let (e1, e2) = (self.eps(1), self.eps(2));
        [1.0, e1, e2, -e1 * e2]
    }

    pub fn name(self) -> &'static str {
        match self {
            Signature::Cl20 => "Cl(2,0)",
            Signature::Cl11 => "Cl(1,1)",
            Signature::Cl02 => "Cl(0,2)",
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Cl(2,0)" => Ok(Signature::Cl20),
            "Cl(1,1)" => Ok(Signature::Cl11),
            "Cl(0,2)" => Ok(Signature::Cl02),
            other => Err(Error::Domain(format!(
                "unknown algebra '{other}', expected one of Cl(2,0), Cl(1,1), Cl(0,2)"
            ))),
        }
    }
}

/// An element of Cl(p,q), p+q = 2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Multivector {
    sig: Signature,
    coeffs: [f64; 4],
}

impl Multivector {
    pub fn new(sig: Signature, coeffs: [f64; 4]) -> Self {
        Self { sig, coeffs }
    }

    pub fn zero(sig: Signature) -> Self {
        Self::new(sig, [0.0; 4])
    }

    pub fn scalar(sig: Signature, s: f64) -> Self {
        Self::new(sig, [s, 0.0, 0.0, 0.0])
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, 1.0)
    }

    /// The basis blade with index `blade` (0..4).
    pub fn basis(sig: Signature, blade: usize) -> Self {
        let mut c = [0.0; 4];
        c[blade] = 1.0;
        Self::new(sig, c)
    }

    pub fn e1(sig: Signature) -> Self {
        Self::basis(sig, E1)
    }

    pub fn e2(sig: Signature) -> Self {
        Self::basis(sig, E2)
    }

    pub fn e12(sig: Signature) -> Self {
        Self::basis(sig, E12)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> [f64; 4] {
        self.coeffs
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[SCALAR]
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    fn check_sig(&self, other: &Multivector) -> Result<()> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                left: self.sig,
                right: other.sig,
            })
        }
    }

    /// Unchecked product; callers guarantee equal signatures.
    #[inline]
    pub(crate) fn mul_raw(&self, other: &Multivector) -> Multivector {
        debug_assert_eq!(self.sig, other.sig);
        let table = self.sig.table();
        let mut out = [0.0; 4];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let e = table[i][j];
                out[e.target] += e.sign * a * b;
            }
        }
        Multivector::new(self.sig, out)
    }

    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector> {
        self.check_sig(other)?;
        Ok(self.mul_raw(other))
    }

    pub fn grade_part(&self, k: usize) -> Result<Multivector> {
        if k > 2 {
            return Err(Error::Domain(format!("grade {k} out of range 0..=2")));
        }
        let mut c = [0.0; 4];
        for (i, g) in BLADE_GRADE.iter().enumerate() {
            if *g == k {
                c[i] = self.coeffs[i];
            }
        }
        Ok(Multivector::new(self.sig, c))
    }

    pub fn scalar_product(&self, other: &Multivector) -> Result<f64> {
        self.check_sig(other)?;
        Ok(self.scalar_product_raw(other))
    }

    /// Sc(ab) without forming the full product.
    pub(crate) fn scalar_product_raw(&self, other: &Multivector) -> f64 {
        let table = self.sig.table();
        (0..4)
            .map(|i| {
                // the only j with e_i e_j scalar is j = i
                table[i][i].sign * self.coeffs[i] * other.coeffs[i]
            })
            .sum()
    }

    /// Outer product, bilinear over homogeneous parts: `<A_k B_s>_{k+s}`.
    pub fn outer_product(&self, other: &Multivector) -> Result<Multivector> {
        self.check_sig(other)?;
        let table = self.sig.table();
        let mut out = [0.0; 4];
        for i in 0..4 {
            for j in 0..4 {
                let e = table[i][j];
                if BLADE_GRADE[e.target] == BLADE_GRADE[i] + BLADE_GRADE[j] {
                    out[e.target] += e.sign * self.coeffs[i] * other.coeffs[j];
                }
            }
        }
        Ok(Multivector::new(self.sig, out))
    }

    pub fn reverse(&self) -> Multivector {
        let c = self.coeffs;
        Multivector::new(self.sig, [c[0], c[1], c[2], -c[3]])
    }

    /// Bar involution: flips the sign of every basis vector of negative square.
    pub fn bar(&self) -> Multivector {
        let (e1, e2) = (self.sig.eps(1), self.sig.eps(2));
        let c = self.coeffs;
        Multivector::new(self.sig, [c[0], e1 * c[1], e2 * c[2], e1 * e2 * c[3]])
    }

    pub fn principal_reverse(&self) -> Multivector {
        self.bar().reverse()
    }

    /// Clifford conjugate (grade involution composed with reversion).
    pub fn conjugate(&self) -> Multivector {
        let c = self.coeffs;
        Multivector::new(self.sig, [c[0], -c[1], -c[2], -c[3]])
    }

    pub fn modulus_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn modulus(&self) -> f64 {
        self.modulus_sq().sqrt()
    }

    /// `a * conj(a)`, always a scalar in these algebras. The left-regular 4x4
    /// representation of `a` has determinant equal to its square.
    pub fn norm_form(&self) -> f64 {
        let (e1, e2) = (self.sig.eps(1), self.sig.eps(2));
        let c = self.coeffs;
        c[0] * c[0] - e1 * c[1] * c[1] - e2 * c[2] * c[2] + e1 * e2 * c[3] * c[3]
    }

    /// Determinant of the left-regular representation `b -> a b`.
    pub fn regular_determinant(&self) -> f64 {
        let n = self.norm_form();
        n * n
    }

    /// Inverse via the adjugate, which for p+q = 2 is the Clifford conjugate
    /// scaled by the norm form.
    pub fn inverse(&self) -> Result<Multivector> {
        let det = self.regular_determinant();
        let scale = self.modulus_sq();
        if det.is_nan() || det.abs() <= 1e-12 * scale * scale {
            return Err(Error::Singular { det });
        }
        Ok(self.conjugate() * (1.0 / self.norm_form()))
    }

    /// Left-regular matrix `L` with `(a b).coeffs = L * b.coeffs`.
    pub fn left_matrix(&self) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for j in 0..4 {
            let col = self.mul_raw(&Multivector::basis(self.sig, j));
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.coeffs[i];
            }
        }
        m
    }

    /// Right-regular matrix `R` with `(b a).coeffs = R * b.coeffs`.
    pub fn right_matrix(&self) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for j in 0..4 {
            let col = Multivector::basis(self.sig, j).mul_raw(self);
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.coeffs[i];
            }
        }
        m
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Euclidean dot product of coefficient vectors (equals `a * ~b`).
    pub fn coeff_dot(&self, other: &Multivector) -> f64 {
        self.coeffs.iter().zip(other.coeffs.iter()).map(|(a, b)| a * b).sum()
    }

    /// `cos(angle) + root * sin(angle)`; equals `exp(angle * root)` when `root^2 = -1`.
    pub fn exp_root(root: &Multivector, angle: f64) -> Multivector {
        let (s, c) = angle.sin_cos();
        let r = root.coeffs;
        Multivector::new(root.sig, [c + s * r[0], s * r[1], s * r[2], s * r[3]])
    }

    /// Comma-separated blade coefficients `m0,m1,m2,m12`.
    pub fn to_text(&self) -> String {
        let c = self.coeffs;
        format!("{},{},{},{}", c[0], c[1], c[2], c[3])
    }

    pub fn parse_text(sig: Signature, s: &str) -> Result<Multivector> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Domain(format!(
                "expected 4 comma-separated coefficients, got '{s}'"
            )));
        }
        let mut c = [0.0; 4];
        for (slot, p) in c.iter_mut().zip(parts) {
            *slot = p
                .parse::<f64>()
                .map_err(|_| Error::Domain(format!("invalid coefficient '{p}'")))?;
            if !slot.is_finite() {
                return Err(Error::Domain(format!("non-finite coefficient '{p}'")));
            }
        }
        Ok(Multivector::new(sig, c))
    }
}

impl Index<usize> for Multivector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coeffs[i]
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(self, rhs: Multivector) -> Multivector {
        debug_assert_eq!(self.sig, rhs.sig);
        let mut c = self.coeffs;
        for (a, b) in c.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        Multivector::new(self.sig, c)
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        debug_assert_eq!(self.sig, rhs.sig);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(self, rhs: Multivector) -> Multivector {
        self + (-rhs)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self * -1.0
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        Multivector::new(self.sig, self.coeffs.map(|c| c * s))
    }
}

/// Geometric product. Panics on mismatched signatures; use
/// [`Multivector::geometric_product`] for a checked variant.
impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "geometric product across signatures");
        self.mul_raw(&rhs)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs;
        write!(f, "{} + {}e1 + {}e2 + {}e12", c[0], c[1], c[2], c[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(sig: Signature, c: [f64; 4]) -> Multivector {
        Multivector::new(sig, c)
    }

    #[test]
    fn basis_products() {
        let s = Signature::Cl20;
        assert_eq!(Multivector::e1(s) * Multivector::e1(s), Multivector::one(s));

        let s = Signature::Cl02;
        assert_eq!(Multivector::e1(s) * Multivector::e2(s), Multivector::e12(s));
        assert_eq!(Multivector::e2(s) * Multivector::e1(s), -Multivector::e12(s));

        let s = Signature::Cl11;
        assert_eq!(Multivector::e12(s) * Multivector::e12(s), Multivector::one(s));
    }

    #[test]
    fn product_rejects_mismatched_signatures() {
        let a = Multivector::e1(Signature::Cl20);
        let b = Multivector::e1(Signature::Cl02);
        assert!(matches!(a.geometric_product(&b), Err(Error::SignatureMismatch { .. })));
        assert!(a.scalar_product(&b).is_err());
        assert!(a.outer_product(&b).is_err());
    }

    #[test]
    fn grade_parts() {
        let s = Signature::Cl11;
        let m = mv(s, [3.0, 2.0, 0.0, -1.0]);
        assert_eq!(m.grade_part(2).unwrap(), mv(s, [0.0, 0.0, 0.0, -1.0]));
        assert_eq!(m.grade_part(0).unwrap(), Multivector::scalar(s, 3.0));
        assert_eq!(Multivector::e1(s).grade_part(0).unwrap(), Multivector::zero(s));
        assert!(matches!(m.grade_part(3), Err(Error::Domain(_))));
        let sum = m.grade_part(0).unwrap() + m.grade_part(1).unwrap() + m.grade_part(2).unwrap();
        assert_eq!(sum, m);
    }

    #[test]
    fn scalar_products() {
        let s = Signature::Cl20;
        assert_eq!(Multivector::e1(s).scalar_product(&Multivector::e1(s)).unwrap(), 1.0);
        assert_eq!(Multivector::e1(s).scalar_product(&Multivector::e2(s)).unwrap(), 0.0);
        let s = Signature::Cl02;
        assert_eq!(Multivector::e12(s).scalar_product(&Multivector::e12(s)).unwrap(), -1.0);
    }

    #[test]
    fn outer_products() {
        let s = Signature::Cl20;
        let (e1, e2) = (Multivector::e1(s), Multivector::e2(s));
        assert_eq!(e1.outer_product(&e2).unwrap(), Multivector::e12(s));
        assert_eq!(e1.outer_product(&e1).unwrap(), Multivector::zero(s));
        let a = Multivector::one(s) + e1;
        assert_eq!(a.outer_product(&e2).unwrap(), e2 + Multivector::e12(s));
        for sig in Signature::ALL {
            let a = mv(sig, [0.0, 0.3, -1.2, 0.0]);
            let b = mv(sig, [0.0, 2.0, 0.7, 0.0]);
            let half = (a * b - b * a) * 0.5;
            assert!(a.outer_product(&b).unwrap().max_abs_diff(&half) < 1e-15);
        }
    }

    #[test]
    fn reversions() {
        let s = Signature::Cl11;
        assert_eq!(Multivector::e12(s).reverse(), -Multivector::e12(s));
        let a = Multivector::one(s) + Multivector::e1(s);
        assert_eq!(a.reverse(), a);
        assert_eq!(mv(s, [2.0, 0.0, 0.0, -3.0]).reverse(), mv(s, [2.0, 0.0, 0.0, 3.0]));

        assert_eq!(
            Multivector::e1(Signature::Cl02).principal_reverse(),
            -Multivector::e1(Signature::Cl02)
        );
        assert_eq!(
            Multivector::e12(Signature::Cl20).principal_reverse(),
            -Multivector::e12(Signature::Cl20)
        );
        assert_eq!(
            Multivector::e12(Signature::Cl02).principal_reverse(),
            -Multivector::e12(Signature::Cl02)
        );
    }

    #[test]
    fn principal_reverse_signs_agree_with_bar_then_reverse() {
        for sig in Signature::ALL {
            let signs = sig.principal_reverse_signs();
            for (blade, sign) in signs.iter().enumerate() {
                let b = Multivector::basis(sig, blade);
                assert_eq!(b.principal_reverse(), b * *sign);
            }
        }
    }

    #[test]
    fn moduli() {
        for sig in Signature::ALL {
            assert_eq!(mv(sig, [1.0; 4]).modulus(), 2.0);
            assert_eq!(Multivector::zero(sig).modulus(), 0.0);
        }
        assert_eq!(mv(Signature::Cl11, [0.0, 0.0, 0.0, 3.0]).modulus(), 3.0);
    }

    #[test]
    fn inverses() {
        let s = Signature::Cl20;
        let two = Multivector::scalar(s, 2.0);
        assert_eq!(two.inverse().unwrap(), Multivector::scalar(s, 0.5));
        let f = Multivector::e12(s);
        assert_eq!(f.inverse().unwrap(), -f);
        let zd = Multivector::one(s) + Multivector::e1(s);
        assert!(matches!(zd.inverse(), Err(Error::Singular { .. })));
        assert!(Multivector::zero(s).inverse().is_err());

        let a = mv(Signature::Cl11, [0.4, -1.3, 0.2, 0.9]);
        let prod = a * a.inverse().unwrap();
        assert!(prod.max_abs_diff(&Multivector::one(Signature::Cl11)) < 1e-12);
    }

    #[test]
    fn text_round_trip() {
        let s = Signature::Cl02;
        let a = mv(s, [0.1, -2.5, 3.0, 1e-7]);
        assert_eq!(Multivector::parse_text(s, &a.to_text()).unwrap(), a);
        assert!(Multivector::parse_text(s, "1,2,3").is_err());
        assert!(Multivector::parse_text(s, "1,2,x,4").is_err());
        assert!(Multivector::parse_text(s, "1,2,inf,4").is_err());
    }

    #[test]
    fn signature_names() {
        for sig in Signature::ALL {
            assert_eq!(sig.name().parse::<Signature>().unwrap(), sig);
            assert_eq!(Signature::from_pq(sig.p(), sig.q()).unwrap(), sig);
        }
        assert!("Cl(3,0)".parse::<Signature>().is_err());
        assert!(Signature::from_pq(3, 0).is_err());
    }
}
