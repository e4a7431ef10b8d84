//! Test-side oracles that share no arithmetic with the library.
#![allow(dead_code)]

use std::sync::OnceLock;

use clifford_mellin::{GridGeometry, LogPolarSignal, Multivector, Signature};
use rand::Rng;

/// Generators of each blade in the order `1, e1, e2, e12`.
const WORDS: [&[u8]; 4] = [&[], &[1], &[2], &[1, 2]];

fn eps(sig: Signature, k: u8) -> f64 {
    let (p, _) = match sig {
        Signature::Cl20 => (2, 0),
        Signature::Cl11 => (1, 1),
        Signature::Cl02 => (0, 2),
    };
    if (k as usize) <= p {
        1.0
    } else {
        -1.0
    }
}

/// Product of two basis blades by reducing the concatenated generator word:
/// bubble sort with a sign flip per swap, then contract equal neighbours.
pub fn blade_product(sig: Signature, a: usize, b: usize) -> (usize, f64) {
    let mut word: Vec<u8> = WORDS[a].iter().chain(WORDS[b]).copied().collect();
    let mut sign = 1.0;
    let n = word.len();
    for i in 0..n {
        for j in 0..n.saturating_sub(1 + i) {
            if word[j] > word[j + 1] {
                word.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    let mut reduced: Vec<u8> = Vec::new();
    for g in word {
        if reduced.last() == Some(&g) {
            reduced.pop();
            sign *= eps(sig, g);
        } else {
            reduced.push(g);
        }
    }
    let idx = WORDS
        .iter()
        .position(|w| *w == reduced.as_slice())
        .expect("closed basis");
    (idx, sign)
}

type Table = [[(usize, f64); 4]; 4];

/// Word-reduced blade products, built once per signature.
fn table(sig: Signature) -> &'static Table {
    static TABLES: [OnceLock<Table>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = match sig {
        Signature::Cl20 => 0,
        Signature::Cl11 => 1,
        Signature::Cl02 => 2,
    };
    TABLES[slot].get_or_init(|| std::array::from_fn(|i| std::array::from_fn(|j| blade_product(sig, i, j))))
}

pub fn product(a: &Multivector, b: &Multivector) -> Multivector {
    let sig = a.signature();
    let t = table(sig);
    let mut out = [0.0; 4];
    for i in 0..4 {
        for j in 0..4 {
            let (k, s) = t[i][j];
            out[k] += s * a[i] * b[j];
        }
    }
    Multivector::new(sig, out)
}

/// `cos(t) + root sin(t)`.
pub fn exp(root: &Multivector, t: f64) -> Multivector {
    let c = root.coeffs();
    Multivector::new(
        root.signature(),
        [t.cos() + c[0] * t.sin(), c[1] * t.sin(), c[2] * t.sin(), c[3] * t.sin()],
    )
}

/// `ds dtheta / 2pi * sum_i sum_l e^{-f v s_i} h_il e^{-g k theta_l}` with the oracle product.
pub fn direct(h: &LogPolarSignal, f: &Multivector, g: &Multivector, v: f64, k: f64) -> Multivector {
    let geo = h.geometry();
    let sig = h.signature();
    let right: Vec<Multivector> = (0..geo.ntheta).map(|l| exp(g, -k * l as f64 * geo.dtheta())).collect();
    let mut acc = [0.0; 4];
    for i in 0..geo.ns {
        let s = geo.smin + i as f64 * geo.ds();
        let left = exp(f, -v * s);
        for (l, r) in right.iter().enumerate() {
            let term = product(&product(&left, &h.at(i, l)), r);
            for (a, t) in acc.iter_mut().zip(term.coeffs()) {
                *a += t;
            }
        }
    }
    let w = geo.ds() * geo.dtheta() / std::f64::consts::TAU;
    Multivector::new(sig, acc.map(|a| a * w))
}

pub fn random_mv<R: Rng>(sig: Signature, rng: &mut R) -> Multivector {
    Multivector::new(sig, std::array::from_fn(|_| rng.random_range(-1.0..=1.0)))
}

pub fn random_int_mv<R: Rng>(sig: Signature, rng: &mut R) -> Multivector {
    Multivector::new(sig, std::array::from_fn(|_| rng.random_range(-9i32..=9) as f64))
}

pub fn max_diff(a: &Multivector, b: &Multivector) -> f64 {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// `v_j` for centered `j`.
pub fn v_at(geo: &GridGeometry, j: i64) -> f64 {
    std::f64::consts::TAU * j as f64 / (geo.smax - geo.smin)
}
