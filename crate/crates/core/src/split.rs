//! The two-sided `x -> f x g` split and the one-sided commuting/anticommuting split.

use crate::algebra::Multivector;
use crate::error::{Error, Result};
use crate::roots::{RootOfMinusOne, RootPair};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitPair {
    pub plus: Multivector,
    pub minus: Multivector,
    pub pair: RootPair,
}

fn check(x: &Multivector, pair: &RootPair) -> Result<()> {
    if x.signature() != pair.signature() {
        return Err(Error::SignatureMismatch {
            left: x.signature(),
            right: pair.signature(),
        });
    }
    Ok(())
}

/// `f x g`.
#[inline]
pub fn sandwich(x: &Multivector, pair: &RootPair) -> Multivector {
    pair.f().mul_raw(x).mul_raw(&pair.g())
}

/// `x_+ = (x + f x g) / 2`, `x_- = (x - f x g) / 2`.
pub fn split(x: &Multivector, pair: &RootPair) -> Result<SplitPair> {
    check(x, pair)?;
    Ok(split_raw(x, pair))
}

#[inline]
pub(crate) fn split_raw(x: &Multivector, pair: &RootPair) -> SplitPair {
    let fxg = sandwich(x, pair);
    SplitPair {
        plus: (*x + fxg) * 0.5,
        minus: (*x - fxg) * 0.5,
        pair: *pair,
    }
}

/// Commuting and anticommuting parts of `x` with respect to `f`,
/// using `f^-1 = -f`.
pub fn f_split(x: &Multivector, f: &RootOfMinusOne) -> Result<(Multivector, Multivector)> {
    if x.signature() != f.signature() {
        return Err(Error::SignatureMismatch {
            left: x.signature(),
            right: f.signature(),
        });
    }
    let fv = f.value();
    let conj = (-fv).mul_raw(x).mul_raw(&fv);
    Ok(((*x + conj) * 0.5, (*x - conj) * 0.5))
}

pub fn recombine(sp: &SplitPair) -> Multivector {
    sp.plus + sp.minus
}

/// `(Sc(x_+ ~y_-), Sc(x_- ~y_+))`. Both vanish for blade-like pairs.
pub fn mixed_scalar(x: &Multivector, y: &Multivector, pair: &RootPair) -> Result<(f64, f64)> {
    if !pair.is_blade_like() {
        return Err(Error::contract(
            "mixed_scalar requires a blade-like pair (~f = -f and ~g = -g)",
        ));
    }
    mixed_scalar_unchecked(x, y, pair)
}

/// Same as [`mixed_scalar`] without the blade-like precondition; used to report
/// residuals outside the hypothesis.
pub fn mixed_scalar_unchecked(x: &Multivector, y: &Multivector, pair: &RootPair) -> Result<(f64, f64)> {
    let sx = split(x, pair)?;
    let sy = split(y, pair)?;
    Ok((
        sx.plus.scalar_product_raw(&sy.minus.principal_reverse()),
        sx.minus.scalar_product_raw(&sy.plus.principal_reverse()),
    ))
}

/// Largest componentwise discrepancy among the three expressions
/// `e^{af} x_± e^{bg}`, `x_± e^{(b ∓ a)g}`, `e^{(a ∓ b)f} x_±`, over both signs.
pub fn exp_swap_check(alpha: f64, beta: f64, x: &Multivector, pair: &RootPair) -> Result<f64> {
    let sp = split(x, pair)?;
    let (f, g) = (pair.f(), pair.g());
    let mut worst = 0.0f64;
    for (part, sign) in [(sp.plus, 1.0), (sp.minus, -1.0)] {
        let sandwiched = Multivector::exp_root(&f, alpha)
            .mul_raw(&part)
            .mul_raw(&Multivector::exp_root(&g, beta));
        let right = part.mul_raw(&Multivector::exp_root(&g, beta - sign * alpha));
        let left = Multivector::exp_root(&f, alpha - sign * beta).mul_raw(&part);
        worst = worst
            .max(sandwiched.max_abs_diff(&right))
            .max(sandwiched.max_abs_diff(&left))
            .max(right.max_abs_diff(&left));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Signature;
    use crate::roots::validate_root;

    fn q() -> Signature {
        Signature::Cl02
    }

    #[test]
    fn split_of_one_in_quaternions() {
        let pair = RootPair::quaternion_default();
        let s = split(&Multivector::one(q()), &pair).unwrap();
        let half = Multivector::new(q(), [0.5, 0.0, 0.0, 0.5]);
        assert_eq!(s.plus, half);
        assert_eq!(s.minus, Multivector::new(q(), [0.5, 0.0, 0.0, -0.5]));
        let z = split(&Multivector::zero(q()), &pair).unwrap();
        assert_eq!((z.plus, z.minus), (Multivector::zero(q()), Multivector::zero(q())));
    }

    #[test]
    fn f_split_is_the_g_equals_minus_f_case() {
        for sig in Signature::ALL {
            for f in crate::roots::random_roots(sig, 5, 11).unwrap() {
                let pair = RootPair::from_values(f.value(), -f.value()).unwrap();
                let x = Multivector::new(sig, [0.3, -1.1, 0.8, 2.0]);
                let sp = split(&x, &pair).unwrap();
                let (c, a) = f_split(&x, &f).unwrap();
                let tol = 1e-12 * f.value().modulus_sq().max(1.0) * 4.0;
                assert!(sp.plus.max_abs_diff(&c) < tol);
                assert!(sp.minus.max_abs_diff(&a) < tol);
            }
        }
    }

    #[test]
    fn f_split_examples() {
        let f = validate_root(Multivector::e12(q())).unwrap();
        let (c, a) = f_split(&Multivector::e1(q()), &f).unwrap();
        assert_eq!(c, Multivector::zero(q()));
        assert_eq!(a, Multivector::e1(q()));

        let (c, a) = f_split(&Multivector::scalar(q(), 2.5), &f).unwrap();
        assert_eq!((c, a), (Multivector::scalar(q(), 2.5), Multivector::zero(q())));

        let (c, a) = f_split(&f.value(), &f).unwrap();
        assert_eq!((c, a), (f.value(), Multivector::zero(q())));

        let wrong = Multivector::e1(Signature::Cl20);
        assert!(f_split(&wrong, &f).is_err());
    }

    #[test]
    fn resplitting_a_plus_part_is_idempotent() {
        let pair = RootPair::quaternion_default();
        let x = Multivector::new(q(), [0.2, 1.5, -0.4, 0.9]);
        let sp = split(&x, &pair).unwrap();
        let again = split(&sp.plus, &pair).unwrap();
        assert!(again.plus.max_abs_diff(&sp.plus) < 1e-15);
        assert!(again.minus.modulus() < 1e-15);
        assert_eq!(
            recombine(&SplitPair {
                plus: Multivector::zero(q()),
                minus: Multivector::zero(q()),
                pair
            }),
            Multivector::zero(q())
        );
    }

    #[test]
    fn mixed_scalar_enforces_blade_like() {
        let s = Signature::Cl20;
        let f = crate::roots::sample_root(s, 1.0, 0.0, crate::roots::Branch::Plus).unwrap();
        let g = validate_root(Multivector::e12(s)).unwrap();
        let pair = RootPair::new(f, g).unwrap();
        let x = Multivector::one(s);
        assert!(matches!(mixed_scalar(&x, &x, &pair), Err(Error::Contract(_))));

        let pair = RootPair::new(g, g).unwrap();
        let x = Multivector::new(s, [0.1, 0.7, -0.3, 1.2]);
        let y = Multivector::new(s, [-0.5, 0.2, 0.9, 0.4]);
        let (a, b) = mixed_scalar(&x, &y, &pair).unwrap();
        assert!(a.abs() < 1e-12 && b.abs() < 1e-12);
        let z = Multivector::zero(s);
        assert_eq!(mixed_scalar(&z, &z, &pair).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn exp_swap_trivial_cases() {
        let pair = RootPair::quaternion_default();
        let x = Multivector::new(q(), [0.2, 1.5, -0.4, 0.9]);
        assert_eq!(exp_swap_check(0.0, 0.0, &x, &pair).unwrap(), 0.0);
        let sp = split(&x, &pair).unwrap();
        let a = 0.7;
        let lhs = Multivector::exp_root(&pair.f(), a) * sp.plus * Multivector::exp_root(&pair.g(), a);
        assert!(lhs.max_abs_diff(&sp.plus) < 1e-15);
    }
}
