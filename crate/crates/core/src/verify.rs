//! Seeded property suite over every algebra, with a JSON-ready report.
//!
//! Random inputs come from ChaCha8 streams keyed by `(seed, algebra, pair)`, so a
//! report depends only on its options. Nothing time-dependent is recorded.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Multivector, Signature};
use crate::cfmt::theorems::{
    apply_scale_rotate, check_derivative_theorems, check_linearity, check_power_scaling, modulate, parseval_check,
    plancherel_check, reflect_circle, reverse_rotation, scale_rotate_spectrum, shifted_spectrum,
    spectral_pythagoras_residual, split_commutation_residual, Axis,
};
use crate::cfmt::{cfmt_direct_bins, cfmt_fast, cfmt_forward, cfmt_inverse, symmetry_decompose, Spectrum};
use crate::error::{Error, Result};
use crate::roots::{blade_roots, random_root, root_residual, validate_root, RootPair};
use crate::signal::{GridGeometry, LogPolarSignal};
use crate::split::{exp_swap_check, f_split, mixed_scalar_unchecked, recombine, sandwich, split};

/// Which root pairs each algebra is checked with.
#[derive(Clone, Debug, PartialEq)]
pub enum PairSelection {
    /// A random pair plus a blade-like pair.
    Standard,
    /// `(f, f)` and `(f, -f)` for a random root `f`.
    Degenerate,
    /// One caller-supplied pair; only its algebra is checked.
    Explicit(RootPair),
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub geometry: GridGeometry,
    pub algebras: Vec<Signature>,
    pub pairs: PairSelection,
    /// Random multivectors / roots per algebraic property.
    pub samples: usize,
    /// Random signals per transform property and pair.
    pub signals: usize,
    /// Replaces every per-property tolerance when set.
    pub tolerance: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            geometry: GridGeometry::symmetric(32),
            algebras: Signature::ALL.to_vec(),
            pairs: PairSelection::Standard,
            samples: 10_000,
            signals: 2,
            tolerance: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub property: String,
    pub algebra: String,
    pub pair: String,
    /// `None` when skipped.
    pub residual: Option<f64>,
    pub tolerance: f64,
    /// `None` when skipped.
    pub pass: Option<bool>,
    /// `"pass"`, `"fail"` or `"skipped (<reason>)"`.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub geometry: GridGeometry,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.pass == Some(false))
    }
}

enum Outcome {
    Residual(f64),
    Skipped(&'static str),
}

struct Recorder<'a> {
    opts: &'a VerifyOptions,
    checks: Vec<Check>,
}

impl Recorder<'_> {
    fn record(&mut self, property: &str, algebra: Signature, pair: &str, default_tol: f64, outcome: Result<Outcome>) {
        let tolerance = self.opts.tolerance.unwrap_or(default_tol);
        let (residual, pass, status) = match outcome {
            Ok(Outcome::Residual(r)) => {
                // NaN must fail
                let ok = r <= tolerance;
                (
                    Some(r),
                    Some(ok),
                    if ok { "pass".to_string() } else { "fail".to_string() },
                )
            }
            Ok(Outcome::Skipped(why)) => (None, None, format!("skipped ({why})")),
            Err(e) => (None, Some(false), format!("fail (error: {e})")),
        };
        self.checks.push(Check {
            property: property.to_string(),
            algebra: algebra.to_string(),
            pair: pair.to_string(),
            residual,
            tolerance,
            pass,
            status,
        });
    }
}

const TOL_EXACT: f64 = 1e-12;
const TOL_RECONSTRUCT: f64 = 1e-15;
const TOL_TRANSFORM: f64 = 1e-10;
const TOL_DERIVATIVE: f64 = 1e-8;
const TOL_POWER: f64 = 1e-5;

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

pub fn random_multivector<R: Rng>(sig: Signature, rng: &mut R) -> Multivector {
    Multivector::new(sig, std::array::from_fn(|_| rng.random_range(-1.0..=1.0)))
}

fn pairs_for(sig: Signature, opts: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<Vec<RootPair>> {
    Ok(match &opts.pairs {
        PairSelection::Standard => {
            let random = RootPair::new(random_root(sig, rng)?, random_root(sig, rng)?)?;
            let blades = blade_roots(sig);
            let blade = match sig {
                Signature::Cl02 => RootPair::from_values(Multivector::e1(sig), Multivector::e2(sig))?,
                _ => RootPair::from_values(blades[0], blades[0])?,
            };
            vec![random, blade]
        }
        PairSelection::Degenerate => {
            let f = random_root(sig, rng)?;
            let minus = validate_root(-f.value())?;
            vec![RootPair::new(f, f)?, RootPair::new(f, minus)?]
        }
        PairSelection::Explicit(p) if p.signature() == sig => vec![*p],
        PairSelection::Explicit(_) => Vec::new(),
    })
}

pub fn run(opts: &VerifyOptions) -> Result<Report> {
    opts.geometry.validate()?;
    if opts.samples == 0 || opts.signals == 0 {
        return Err(Error::Domain("verify needs at least one sample and one signal".into()));
    }
    let algebras: Vec<Signature> = match &opts.pairs {
        PairSelection::Explicit(p) => vec![p.signature()],
        _ => opts.algebras.clone(),
    };
    let mut rec = Recorder {
        opts,
        checks: Vec::new(),
    };
    for (ai, &sig) in algebras.iter().enumerate() {
        let mut rng = stream(opts.seed, (ai as u64) << 8);
        algebra_checks(&mut rec, sig, &mut rng);
        let pairs = pairs_for(sig, opts, &mut rng)?;
        for (pi, pair) in pairs.iter().enumerate() {
            let mut rng = stream(opts.seed, ((ai as u64) << 8) | (pi as u64 + 1));
            split_checks(&mut rec, pair, &mut rng);
            transform_checks(&mut rec, pair, &mut rng);
        }
    }
    let checks = rec.checks;
    let passed = checks.iter().filter(|c| c.pass == Some(true)).count();
    let failed = checks.iter().filter(|c| c.pass == Some(false)).count();
    Ok(Report {
        seed: opts.seed,
        geometry: opts.geometry,
        passed,
        failed,
        skipped: checks.len() - passed - failed,
        checks,
    })
}

fn algebra_checks(rec: &mut Recorder, sig: Signature, rng: &mut ChaCha8Rng) {
    let n = rec.opts.samples;
    let basis: Vec<Multivector> = (0..4).map(|b| Multivector::basis(sig, b)).collect();
    let (e1, e2, e12) = (basis[1], basis[2], basis[3]);

    let r = e1 * e1 - Multivector::scalar(sig, sig.eps(1));
    let r = r.modulus()
        + (e2 * e2 - Multivector::scalar(sig, sig.eps(2))).modulus()
        + (e1 * e2 - e12).modulus()
        + (e2 * e1 + e12).modulus();
    rec.record(
        "algebra.basis_vector_products",
        sig,
        "-",
        TOL_EXACT,
        Ok(Outcome::Residual(r)),
    );

    let mut worst = 0.0f64;
    for _ in 0..n {
        let (a, b, c) = (
            random_multivector(sig, rng),
            random_multivector(sig, rng),
            random_multivector(sig, rng),
        );
        worst = worst.max(((a * b) * c).max_abs_diff(&(a * (b * c))));
    }
    rec.record(
        "algebra.associativity",
        sig,
        "-",
        TOL_EXACT,
        Ok(Outcome::Residual(worst)),
    );

    let mut worst = 0.0f64;
    for _ in 0..n {
        let a = random_multivector(sig, rng);
        worst = worst
            .max(a.reverse().reverse().max_abs_diff(&a))
            .max(a.principal_reverse().principal_reverse().max_abs_diff(&a));
    }
    rec.record("algebra.involutions", sig, "-", TOL_EXACT, Ok(Outcome::Residual(worst)));

    let mut worst = 0.0f64;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.principal_reverse().scalar_product_raw(b) - want).abs());
        }
    }
    for l in 1..3 {
        for k in 1..3 {
            let recip = basis[l] * sig.eps(l);
            let want = if l == k { 1.0 } else { 0.0 };
            worst = worst.max((recip.scalar_product_raw(&basis[k]) - want).abs());
        }
    }
    rec.record(
        "algebra.reciprocal_basis",
        sig,
        "-",
        TOL_EXACT,
        Ok(Outcome::Residual(worst)),
    );

    let mut worst = 0.0f64;
    for _ in 0..n {
        let (a, b) = (random_multivector(sig, rng), random_multivector(sig, rng));
        let sum_sq: f64 = a.coeffs().iter().map(|c| c * c).sum();
        let via_reverse = a.scalar_product_raw(&a.principal_reverse());
        worst = worst.max((a.modulus_sq() - sum_sq).abs() / sum_sq.max(1e-300));
        worst = worst.max((via_reverse - sum_sq).abs() / sum_sq.max(1e-300));
        let ortho = a.scalar_product_raw(&b.principal_reverse()) - a.coeff_dot(&b);
        worst = worst.max(ortho.abs());
    }
    rec.record(
        "algebra.modulus_and_orthogonality",
        sig,
        "-",
        TOL_EXACT,
        Ok(Outcome::Residual(worst)),
    );

    let mut worst = 0.0f64;
    let mut manifold = 0.0f64;
    for _ in 0..n {
        match random_root(sig, rng) {
            Ok(f) => {
                let scale = f.value().modulus_sq().max(1.0);
                worst = worst.max(root_residual(&f.value()) / scale);
                manifold = manifold.max(f.manifold_residual().abs() / scale);
            }
            Err(_) => worst = f64::INFINITY,
        }
    }
    rec.record(
        "roots.square_is_minus_one",
        sig,
        "-",
        TOL_EXACT,
        Ok(Outcome::Residual(worst)),
    );
    rec.record(
        "roots.manifold_constraint",
        sig,
        "-",
        TOL_EXACT,
        Ok(Outcome::Residual(manifold)),
    );
}

fn split_checks(rec: &mut Recorder, pair: &RootPair, rng: &mut ChaCha8Rng) {
    let sig = pair.signature();
    let name = pair.describe();
    let n = rec.opts.samples;
    let (f, g) = (pair.f(), pair.g());
    // products of f and g with x grow like |f| |g| |x|; residuals are measured relative to that
    let fg_scale = (f.modulus() * g.modulus()).max(1.0);
    let one = Multivector::one(sig);
    let fg = f * g;
    let mut recon = 0.0f64;
    let mut eigen = 0.0f64;
    let mut involution = 0.0f64;
    let mut lincomb = 0.0f64;
    let mut mixed = 0.0f64;
    let mut pythagoras = 0.0f64;
    let mut swap = 0.0f64;
    for _ in 0..n {
        let x = random_multivector(sig, rng);
        let y = random_multivector(sig, rng);
        let xm = x.modulus().max(f64::MIN_POSITIVE);
        let sp = split(&x, pair).expect("same signature");
        let fxg = sandwich(&x, pair);
        recon = recon.max(recombine(&sp).max_abs_diff(&x) / x.modulus().max(fxg.modulus()).max(f64::MIN_POSITIVE));
        let sq = fg_scale * fg_scale * xm;
        eigen = eigen
            .max(sandwich(&sp.plus, pair).max_abs_diff(&sp.plus) / sq)
            .max(sandwich(&sp.minus, pair).max_abs_diff(&-sp.minus) / sq);
        involution = involution.max(sandwich(&fxg, pair).max_abs_diff(&x) / sq);

        let (pf, mf) = f_split(&x, pair.f_root()).expect("same signature");
        let (pg, mg) = f_split(&x, pair.g_root()).expect("same signature");
        let hp = (one + fg) * 0.5;
        let hm = (one - fg) * 0.5;
        let scale3 = fg_scale.powi(3) * xm;
        lincomb = lincomb
            .max((pf * hp + mf * hm).max_abs_diff(&sp.plus) / scale3)
            .max((pf * hm + mf * hp).max_abs_diff(&sp.minus) / scale3)
            .max((hp * pg + hm * mg).max_abs_diff(&sp.plus) / scale3)
            .max((hm * pg + hp * mg).max_abs_diff(&sp.minus) / scale3);

        if pair.is_blade_like() {
            let (a, b) = mixed_scalar_unchecked(&x, &y, pair).expect("same signature");
            mixed = mixed.max(a.abs().max(b.abs()) / (sq * y.modulus().max(f64::MIN_POSITIVE)));
            let d = x.modulus_sq() - sp.plus.modulus_sq() - sp.minus.modulus_sq();
            pythagoras = pythagoras.max(d.abs() / x.modulus_sq().max(f64::MIN_POSITIVE));
        }
        let alpha = rng.random_range(-10.0..=10.0);
        let beta = rng.random_range(-10.0..=10.0);
        swap = swap.max(exp_swap_check(alpha, beta, &x, pair).expect("same signature") / sq);
    }
    let res = |r: f64| Ok(Outcome::Residual(r));
    let blade = |r: f64| {
        if pair.is_blade_like() {
            Ok(Outcome::Residual(r))
        } else {
            Ok(Outcome::Skipped("not blade-like"))
        }
    };
    rec.record("split.reconstruction", sig, &name, TOL_RECONSTRUCT, res(recon));
    rec.record("split.eigen_action", sig, &name, TOL_EXACT, res(eigen));
    rec.record("split.involution", sig, &name, TOL_EXACT, res(involution));
    rec.record("split.linear_combination", sig, &name, TOL_EXACT, res(lincomb));
    rec.record("split.mixed_scalar_orthogonality", sig, &name, TOL_EXACT, blade(mixed));
    rec.record("split.modulus_pythagoras", sig, &name, TOL_EXACT, blade(pythagoras));
    rec.record("split.exp_swap", sig, &name, TOL_TRANSFORM, res(swap));
}

/// Low-frequency trigonometric signal: at most `|a| <= ns/8`, `|b| <= ntheta/8` modes.
fn band_limited<R: Rng>(geo: GridGeometry, sig: Signature, rng: &mut R) -> LogPolarSignal {
    let amax = (geo.ns / 8).max(1) as i64;
    let bmax = (geo.ntheta / 8).max(1) as i64;
    let mut modes = Vec::new();
    for _ in 0..4 {
        let a = rng.random_range(-amax..=amax);
        let b = rng.random_range(-bmax..=bmax);
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        modes.push((a, b, phase, random_multivector(sig, rng)));
    }
    let period = geo.period();
    LogPolarSignal::from_fn(geo, sig, |s, t| {
        modes.iter().fold(Multivector::zero(sig), |acc, &(a, b, ph, c)| {
            let arg = std::f64::consts::TAU * a as f64 * (s - geo.smin) / period + b as f64 * t + ph;
            acc + c * arg.cos()
        })
    })
}

/// Smooth bump around `theta = pi`, negligible at the angular seam.
fn seam_free<R: Rng>(geo: GridGeometry, sig: Signature, rng: &mut R) -> LogPolarSignal {
    let c = random_multivector(sig, rng);
    let s0 = 0.5 * (geo.smin + geo.smax);
    let width = 0.15 * (geo.smax - geo.smin);
    LogPolarSignal::from_fn(geo, sig, |s, t| {
        c * (-((s - s0) / width).powi(2) - 4.0 * (t - std::f64::consts::PI).powi(2)).exp()
    })
}

fn transform_checks(rec: &mut Recorder, pair: &RootPair, rng: &mut ChaCha8Rng) {
    let sig = pair.signature();
    let name = pair.describe();
    let geo = rec.opts.geometry;
    let signals: Vec<LogPolarSignal> = (0..rec.opts.signals)
        .map(|_| LogPolarSignal::random(geo, sig, rng))
        .collect();
    let spectra: Vec<Spectrum> = match signals.iter().map(|h| cfmt_forward(h, pair)).collect::<Result<_>>() {
        Ok(s) => s,
        Err(e) => {
            rec.record("cfmt.forward", sig, &name, TOL_TRANSFORM, Err(e));
            return;
        }
    };
    let each = |f: &dyn Fn(&LogPolarSignal, &Spectrum) -> Result<f64>| -> Result<Outcome> {
        let mut worst = 0.0f64;
        for (h, s) in signals.iter().zip(&spectra) {
            worst = worst.max(f(h, s)?);
        }
        Ok(Outcome::Residual(worst))
    };
    let blade_only = |o: Result<Outcome>| -> Result<Outcome> {
        if pair.is_blade_like() {
            o
        } else {
            Ok(Outcome::Skipped("not blade-like"))
        }
    };

    rec.record(
        "cfmt.round_trip",
        sig,
        &name,
        TOL_TRANSFORM,
        each(&|h, s| Ok(cfmt_inverse(s).max_abs_diff(h))),
    );

    let bins: Vec<(i64, i64)> = (0..32)
        .map(|_| {
            (
                rng.random_range(-(geo.ns as i64) / 2..geo.ns as i64 / 2),
                rng.random_range(-(geo.ntheta as i64) / 2..geo.ntheta as i64 / 2),
            )
        })
        .collect();
    rec.record(
        "cfmt.fast_vs_direct",
        sig,
        &name,
        TOL_TRANSFORM,
        each(&|h, _| {
            let fast = cfmt_fast(h, pair)?;
            let direct = cfmt_direct_bins(h, pair, &bins)?;
            Ok(bins
                .iter()
                .zip(&direct)
                .map(|(&(j, k), d)| fast.at(j, k).max_abs_diff(d))
                .fold(0.0, f64::max))
        }),
    );

    let one = Multivector::one(sig);
    let (f, g) = (pair.f(), pair.g());
    let (ca, cb) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    let (cc, cd) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    let lin = check_linearity(
        &signals[0],
        signals.last().expect("at least one signal"),
        pair,
        (one * ca + f * cb, one * cc - f * cd),
        (one * cb + g * cc, one * cd - g * ca),
    );
    let (left, right) = match lin {
        Ok(l) => (Ok(Outcome::Residual(l.left)), Ok(Outcome::Residual(l.right))),
        Err(e) => (Err(Error::Contract(e.to_string())), Err(e)),
    };
    rec.record("cfmt.linearity_left", sig, &name, TOL_TRANSFORM, left);
    rec.record("cfmt.linearity_right", sig, &name, TOL_TRANSFORM, right);

    let a_shift = rng.random_range(-(geo.ns as i64)..geo.ns as i64);
    let p_shift = rng.random_range(-(geo.ntheta as i64)..geo.ntheta as i64);
    rec.record(
        "cfmt.scale_rotate_covariance",
        sig,
        &name,
        TOL_TRANSFORM,
        each(&|h, s| {
            Ok(cfmt_forward(&apply_scale_rotate(h, a_shift, p_shift), pair)?
                .max_abs_diff(&scale_rotate_spectrum(s, a_shift, p_shift)))
        }),
    );
    rec.record(
        "cfmt.magnitude_invariance",
        sig,
        &name,
        TOL_TRANSFORM,
        blade_only(each(&|h, s| {
            let m = cfmt_forward(&apply_scale_rotate(h, a_shift, p_shift), pair)?;
            Ok(m.magnitudes()
                .iter()
                .zip(s.magnitudes())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max))
        })),
    );

    let refl = if geo.is_symmetric() {
        each(&|h, s| {
            let want = s.map(|j, k, _| s.at_extended(-j, k));
            Ok(cfmt_forward(&reflect_circle(h)?, pair)?.max_abs_diff(&want))
        })
    } else {
        Ok(Outcome::Skipped("asymmetric s-range"))
    };
    rec.record("cfmt.reflection_radial", sig, &name, TOL_TRANSFORM, refl);
    rec.record(
        "cfmt.reflection_angular",
        sig,
        &name,
        TOL_TRANSFORM,
        each(&|h, s| {
            let want = s.map(|j, k, _| s.at_extended(j, -k));
            Ok(cfmt_forward(&reverse_rotation(h), pair)?.max_abs_diff(&want))
        }),
    );

    let j0 = rng.random_range(-(geo.ns as i64) / 2..geo.ns as i64 / 2);
    let k0 = rng.random_range(-(geo.ntheta as i64) / 2..geo.ntheta as i64 / 2);
    rec.record(
        "cfmt.modulation",
        sig,
        &name,
        TOL_TRANSFORM,
        each(&|h, s| {
            Ok(cfmt_forward(&modulate(h, pair, geo.v_at(j0), k0)?, pair)?.max_abs_diff(&shifted_spectrum(s, j0, k0)))
        }),
    );
    rec.record(
        "cfmt.split_commutation",
        sig,
        &name,
        TOL_TRANSFORM,
        each(&|h, _| split_commutation_residual(h, pair)),
    );
    rec.record(
        "cfmt.spectral_pythagoras",
        sig,
        &name,
        TOL_TRANSFORM,
        blade_only(each(&|h, _| spectral_pythagoras_residual(h, pair))),
    );
    rec.record(
        "cfmt.plancherel",
        sig,
        &name,
        TOL_TRANSFORM,
        blade_only((|| {
            let mut worst = 0.0f64;
            for w in signals.windows(2).chain(std::iter::once(&signals[..1])) {
                let (lhs, rhs) = plancherel_check(&w[0], w.last().expect("non-empty"), pair)?;
                worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
            }
            Ok(Outcome::Residual(worst))
        })()),
    );
    rec.record(
        "cfmt.parseval",
        sig,
        &name,
        TOL_TRANSFORM,
        blade_only(each(&|h, _| Ok(parseval_check(h, pair)?.residual()))),
    );

    let smooth = band_limited(geo, sig, rng);
    let deriv = (|| {
        let mut radial = 0.0f64;
        let mut angular = 0.0f64;
        for order in 1..=2 {
            let r = check_derivative_theorems(&smooth, pair, order)?;
            if !r.band_limited {
                return Ok(None);
            }
            radial = radial.max(r.radial);
            angular = angular.max(r.angular);
        }
        Ok(Some((radial, angular)))
    })();
    let pick = |d: &Result<Option<(f64, f64)>>, axis: Axis| -> Result<Outcome> {
        match d {
            Ok(Some((r, a))) => Ok(Outcome::Residual(if axis == Axis::Radial { *r } else { *a })),
            Ok(None) => Ok(Outcome::Skipped("test signal not band-limited on this grid")),
            Err(e) => Err(Error::Contract(e.to_string())),
        }
    };
    rec.record(
        "cfmt.derivative_radial",
        sig,
        &name,
        TOL_DERIVATIVE,
        pick(&deriv, Axis::Radial),
    );
    rec.record(
        "cfmt.derivative_angular",
        sig,
        &name,
        TOL_DERIVATIVE,
        pick(&deriv, Axis::Angular),
    );

    let bump = seam_free(geo, sig, rng);
    let points = [(0.3, 0.5), (-1.1, 2.25), (2.0, -1.5)];
    rec.record(
        "cfmt.power_scaling",
        sig,
        &name,
        TOL_POWER,
        (|| {
            let mut worst = 0.0f64;
            for (m, n) in [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)] {
                worst = worst.max(check_power_scaling(&bump, pair, m, n, &points)?);
            }
            Ok(Outcome::Residual(worst))
        })(),
    );

    let symmetry = if pair.is_degenerate() {
        Ok(Outcome::Skipped("g=±f"))
    } else if !geo.is_symmetric() {
        Ok(Outcome::Skipped("asymmetric s-range"))
    } else {
        let values = (0..geo.len()).map(|_| one * rng.random_range(-1.0..=1.0)).collect();
        match LogPolarSignal::new(geo, sig, values).and_then(|real| symmetry_decompose(&real, pair)) {
            Ok(c) => Ok(Outcome::Residual(c.off_span_fraction)),
            Err(Error::Contract(msg)) if msg.contains("linearly dependent") => {
                Ok(Outcome::Skipped("1, f, g, fg dependent"))
            }
            Err(e) => Err(e),
        }
    };
    rec.record("cfmt.symmetry_spans", sig, &name, TOL_TRANSFORM, symmetry);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyOptions {
        VerifyOptions {
            geometry: GridGeometry::symmetric(16),
            samples: 200,
            signals: 1,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn default_suite_passes_and_is_deterministic() {
        let a = run(&small()).unwrap();
        let bad: Vec<_> = a.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
        assert_eq!(a, run(&small()).unwrap());
        assert!(a.checks.iter().any(|c| c.status == "skipped (not blade-like)"));
    }

    #[test]
    fn degenerate_pairs_skip_symmetry() {
        let opts = VerifyOptions {
            pairs: PairSelection::Degenerate,
            ..small()
        };
        let r = run(&opts).unwrap();
        let sym: Vec<_> = r
            .checks
            .iter()
            .filter(|c| c.property == "cfmt.symmetry_spans")
            .collect();
        assert_eq!(sym.len(), 6);
        assert!(sym.iter().all(|c| c.status == "skipped (g=±f)"));
        assert!(r.all_passed(), "{:#?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn impossible_tolerance_fails() {
        let opts = VerifyOptions {
            tolerance: Some(-1.0),
            algebras: vec![Signature::Cl02],
            ..small()
        };
        assert!(!run(&opts).unwrap().all_passed());
    }
}
