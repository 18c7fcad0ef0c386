//! Oracles shared by the integration tests. Written without reference to the
//! library's own evaluation code.

#![allow(dead_code)]

use num_rational::BigRational;
use rand::Rng;
use segcert::Segment;

/// Range of `u_k^±` for mode `k`, taken strictly inside the segment.
pub fn coordinate_range(seg: &Segment, k: usize) -> (f64, f64) {
    match seg.mode_box(k) {
        Some(b) => (b.l.hi(), b.r.lo()),
        None => {
            let r = seg.c.lo() / (k as f64).powi(seg.s as i32) * (1.0 - 1e-12);
            (-r, r)
        }
    }
}

/// A random point `(u^+, u^-)` of the `n`-mode projection of `seg`; each
/// coordinate sits on a face with probability 1/4.
pub fn sample<R: Rng>(seg: &Segment, n: usize, rng: &mut R) -> (Vec<f64>, Vec<f64>) {
    let mut draw = |lo: f64, hi: f64| match rng.random_range(0..8u8) {
        0 => lo,
        1 => hi,
        _ => lo + (hi - lo) * rng.random::<f64>(),
    };
    let mut plus = Vec::with_capacity(n);
    let mut minus = Vec::with_capacity(n);
    for k in 1..=n {
        let (lo, hi) = coordinate_range(seg, k);
        plus.push(draw(lo, hi));
        minus.push(draw(lo, hi));
    }
    (plus, minus)
}

pub fn physical(plus: &[f64], minus: &[f64]) -> Vec<f64> {
    plus.iter().zip(minus).map(|(a, b)| a + b).collect()
}

/// `N_{k,n}(u) = −Σ u_i u_j` over ordered pairs `1 ≤ i, j ≤ n` with
/// `|i − j| = k` or `i + j = k`: for each `i` the partners are `i + k`,
/// `i − k` and `k − i` when they lie in range.
///
/// Returns the value and a bound on its floating-point error.
pub fn brute_nonlinearity(u: &[f64], k: usize) -> (f64, f64) {
    let n = u.len() as i64;
    let k = k as i64;
    let mut sum = 0.0;
    let mut abs = 0.0;
    for i in 1..=n {
        for j in [i + k, i - k, k - i] {
            if (1..=n).contains(&j) {
                let t = u[(i - 1) as usize] * u[(j - 1) as usize];
                sum -= t;
                abs += t.abs();
            }
        }
    }
    (sum, 4.0 * (2 * n + 2) as f64 * f64::EPSILON * abs + f64::MIN_POSITIVE)
}

/// `λ_k = √(k²(βk² − 1))` in floating point.
pub fn lambda(k: usize, beta: f64) -> f64 {
    let k2 = (k * k) as f64;
    (k2 * (beta * k2 - 1.0)).sqrt()
}

pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Exact value of a decimal literal such as `-1.25e-3`.
pub fn decimal_rational(text: &str) -> BigRational {
    use num_bigint::BigInt;
    let text = text.trim();
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().unwrap()),
        None => (text, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: BigInt = format!("{int}{frac}").parse().unwrap();
    let scale = exp - frac.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut q = BigRational::from_integer(digits);
    for _ in 0..scale.unsigned_abs() {
        q = if scale > 0 { q * &ten } else { q / &ten };
    }
    if neg {
        -q
    } else {
        q
    }
}
