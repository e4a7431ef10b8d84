//! Square roots of -1 in Cl(p,q), p+q = 2.
//!
//! Every root has the form `b1 e1 + b2 e2 + beta e12` with
//! `beta^2 = b1^2 e2^2 + b2^2 e1^2 + e1^2 e2^2`. Depending on the signature this
//! manifold is a two-sheet hyperboloid (Cl(2,0)), a one-sheet-type quadric
//! (Cl(1,1)) or the unit sphere (Cl(0,2)).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Multivector, Signature, E1, E12, E2, SCALAR};
use crate::error::{Error, Result};

/// Tolerance for `f^2 = -1`, scaled by `max(1, |f|^2)`.
pub const ROOT_TOL: f64 = 1e-12;

/// |b2| bound used when sampling the unbounded Cl(1,1) and Cl(2,0) charts.
pub const SAMPLE_BOUND: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootOfMinusOne {
    value: Multivector,
    b1: f64,
    b2: f64,
    beta: f64,
}

impl RootOfMinusOne {
    pub fn value(&self) -> Multivector {
        self.value
    }

    pub fn signature(&self) -> Signature {
        self.value.signature()
    }

    /// Chart parameters `(b1, b2, beta)`.
    pub fn params(&self) -> (f64, f64, f64) {
        (self.b1, self.b2, self.beta)
    }

    /// Residual of the manifold constraint `beta^2 - (b1^2 e2^2 + b2^2 e1^2 + e1^2 e2^2)`.
    pub fn manifold_residual(&self) -> f64 {
        let sig = self.signature();
        self.beta * self.beta - beta_sq(sig, self.b1, self.b2)
    }

    /// `~f = -f`.
    pub fn is_blade_like(&self) -> bool {
        (self.value.principal_reverse() + self.value).modulus() <= ROOT_TOL * self.scale()
    }

    fn scale(&self) -> f64 {
        self.value.modulus_sq().max(1.0)
    }
}

/// The right-hand side of the manifold constraint for parameters `(b1, b2)`.
pub fn beta_sq(sig: Signature, b1: f64, b2: f64) -> f64 {
    let (e1, e2) = (sig.eps(1), sig.eps(2));
    b1 * b1 * e2 + b2 * b2 * e1 + e1 * e2
}

/// `|a^2 + 1|`.
pub fn root_residual(a: &Multivector) -> f64 {
    let sq = *a * *a;
    (sq + Multivector::one(a.signature())).modulus()
}

pub fn validate_root(a: Multivector) -> Result<RootOfMinusOne> {
    let residual = root_residual(&a);
    let scale = a.modulus_sq().max(1.0);
    if residual.is_nan() || residual > ROOT_TOL * scale || a.scalar_part().abs() > ROOT_TOL * scale {
        return Err(Error::NotARoot { residual });
    }
    let c = a.coeffs();
    debug_assert!(c[SCALAR].abs() <= ROOT_TOL * scale);
    Ok(RootOfMinusOne {
        value: a,
        b1: c[E1],
        b2: c[E2],
        beta: c[E12],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

pub fn sample_root(sig: Signature, b1: f64, b2: f64, branch: Branch) -> Result<RootOfMinusOne> {
    let bsq = beta_sq(sig, b1, b2);
    if bsq < 0.0 {
        return Err(Error::OffManifold { beta_sq: bsq });
    }
    let beta = branch.sign() * bsq.sqrt();
    validate_root(Multivector::new(sig, [0.0, b1, b2, beta]))
}

/// Draws `n` roots from the admissible `(b1, b2)` region with a ChaCha8 stream.
///
/// Cl(2,0): b1, b2 uniform in [-10, 10]. Cl(0,2): uniform in the unit disk.
/// Cl(1,1): |b2| uniform in [1, 10] with random sign, then b1 uniform in
/// [-sqrt(b2^2 - 1), sqrt(b2^2 - 1)].
pub fn random_roots(sig: Signature, n: usize, seed: u64) -> Result<Vec<RootOfMinusOne>> {
    if n == 0 {
        return Err(Error::Domain("random_roots needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_root(sig, &mut rng)).collect()
}

pub(crate) fn random_root<R: Rng>(sig: Signature, rng: &mut R) -> Result<RootOfMinusOne> {
    let (b1, b2) = match sig {
        Signature::Cl20 => (
            rng.random_range(-SAMPLE_BOUND..=SAMPLE_BOUND),
            rng.random_range(-SAMPLE_BOUND..=SAMPLE_BOUND),
        ),
        Signature::Cl02 => {
            let rho = rng.random::<f64>().sqrt();
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            (rho * phi.cos(), rho * phi.sin())
        }
        Signature::Cl11 => {
            let mag = rng.random_range(1.0..=SAMPLE_BOUND);
            let b2 = if rng.random::<bool>() { mag } else { -mag };
            let bound = (b2 * b2 - 1.0).max(0.0).sqrt();
            let b1 = if bound > 0.0 {
                rng.random_range(-bound..=bound)
            } else {
                0.0
            };
            (b1, b2)
        }
    };
    let branch = if rng.random::<bool>() {
        Branch::Plus
    } else {
        Branch::Minus
    };
    // rounding can push beta^2 a hair below zero on the region boundary
    let bsq = beta_sq(sig, b1, b2).max(0.0);
    let beta = branch.sign() * bsq.sqrt();
    validate_root(Multivector::new(sig, [0.0, b1, b2, beta]))
}

/// A point on the root manifold, as exported for plotting.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ManifoldPoint {
    pub b1: f64,
    pub b2: f64,
    pub beta: f64,
    pub branch: i8,
}

/// Chart extent for the unbounded manifolds.
const EXPORT_EXTENT: f64 = 2.0;

/// A `resolution x resolution` lattice over a two-parameter chart that covers
/// both beta branches. Angles are sampled at half-step offsets.
pub fn export_manifold(sig: Signature, resolution: usize) -> Result<Vec<ManifoldPoint>> {
    if resolution < 2 {
        return Err(Error::Domain("manifold resolution must be >= 2".into()));
    }
    let n = resolution;
    let lin = |i: usize, lo: f64, hi: f64| lo + (hi - lo) * i as f64 / (n - 1) as f64;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let phi = (j as f64 + 0.5) * std::f64::consts::TAU / n as f64;
            let (b1, b2, beta) = match sig {
                Signature::Cl02 => {
                    let polar = lin(i, 0.0, std::f64::consts::PI);
                    let rho = polar.sin();
                    (rho * phi.cos(), rho * phi.sin(), polar.cos())
                }
                Signature::Cl20 => {
                    let u = lin(i, -EXPORT_EXTENT, EXPORT_EXTENT);
                    let rho = u.abs().sinh();
                    let sheet = if u < 0.0 { -1.0 } else { 1.0 };
                    (rho * phi.cos(), rho * phi.sin(), sheet * u.cosh())
                }
                Signature::Cl11 => {
                    let u = lin(i, -EXPORT_EXTENT, EXPORT_EXTENT);
                    let rho = u.abs();
                    let b2 = u.signum() * (1.0 + rho * rho).sqrt();
                    (rho * phi.cos(), b2, rho * phi.sin())
                }
            };
            out.push(ManifoldPoint {
                b1,
                b2,
                beta,
                branch: if beta < 0.0 { -1 } else { 1 },
            });
        }
    }
    Ok(out)
}

pub fn manifold_csv(points: &[ManifoldPoint]) -> String {
    let mut s = String::from("b1,b2,beta,branch\n");
    for p in points {
        s.push_str(&format!("{},{},{},{}\n", p.b1, p.b2, p.beta, p.branch));
    }
    s
}

/// Two roots of -1 that parameterize the split and the transform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootPair {
    f: RootOfMinusOne,
    g: RootOfMinusOne,
}

impl RootPair {
    pub fn new(f: RootOfMinusOne, g: RootOfMinusOne) -> Result<Self> {
        if f.signature() != g.signature() {
            return Err(Error::SignatureMismatch {
                left: f.signature(),
                right: g.signature(),
            });
        }
        Ok(Self { f, g })
    }

    pub fn from_values(f: Multivector, g: Multivector) -> Result<Self> {
        Self::new(validate_root(f)?, validate_root(g)?)
    }

    /// `f = e1, g = e2` in Cl(0,2), i.e. the quaternion units i, j.
    pub fn quaternion_default() -> Self {
        let s = Signature::Cl02;
        Self::from_values(Multivector::e1(s), Multivector::e2(s)).expect("e1, e2 are roots in Cl(0,2)")
    }

    pub fn f(&self) -> Multivector {
        self.f.value()
    }

    pub fn g(&self) -> Multivector {
        self.g.value()
    }

    pub fn f_root(&self) -> &RootOfMinusOne {
        &self.f
    }

    pub fn g_root(&self) -> &RootOfMinusOne {
        &self.g
    }

    pub fn signature(&self) -> Signature {
        self.f.signature()
    }

    /// `g = f` or `g = -f`.
    pub fn is_degenerate(&self) -> bool {
        let (f, g) = (self.f(), self.g());
        f.max_abs_diff(&g) <= ROOT_TOL || f.max_abs_diff(&-g) <= ROOT_TOL
    }

    pub fn is_blade_like(&self) -> bool {
        self.f.is_blade_like() && self.g.is_blade_like()
    }

    pub fn describe(&self) -> String {
        format!("f=({}) g=({})", self.f().to_text(), self.g().to_text())
    }
}

/// The blade-like roots of each algebra (up to sign): e12 in Cl(2,0), e2 in
/// Cl(1,1), and e1, e2, e12 in Cl(0,2).
pub fn blade_roots(sig: Signature) -> Vec<Multivector> {
    match sig {
        Signature::Cl20 => vec![Multivector::e12(sig), -Multivector::e12(sig)],
        Signature::Cl11 => vec![Multivector::e2(sig), -Multivector::e2(sig)],
        Signature::Cl02 => [1usize, 2, 3]
            .iter()
            .flat_map(|&b| [Multivector::basis(sig, b), -Multivector::basis(sig, b)])
            .collect(),
    }
}
