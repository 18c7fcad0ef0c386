//! The Boussinesq problem in diagonalized Fourier coordinates.
//!
//! With `u(t, x) = Σ_{k∈ℤ} u_k(t) e^{ikx}` (real, even, zero average) and
//! `v_k = du_k/dt`, each mode's linear block has eigenvalues `±λ_k` with
//! `λ_k = sqrt(k²(βk² − 1))`. The diagonal variables are
//!
//! ```text
//! u_k^± = u_k / 2 ± v_k / (2 λ_k),    u_k = u_k^+ + u_k^-,    v_k = λ_k (u_k^+ − u_k^-).
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Uniform-in-time bounds `ε f_k(t) ∈ [f_k^l, f_k^r]` for modes `k = 1..=len`.
/// Modes beyond `len` carry no forcing.
#[derive(Debug, Clone, PartialEq)]
pub struct Forcing {
    bounds: Vec<Interval>,
}

impl Forcing {
    pub fn new(bounds: Vec<Interval>) -> Self {
        Forcing { bounds }
    }

    pub fn unforced() -> Self {
        Forcing { bounds: Vec::new() }
    }

    /// Bound for mode `k` (1-based); zero beyond the listed modes.
    pub fn bound(&self, k: usize) -> Interval {
        if k == 0 {
            return Interval::ZERO;
        }
        self.bounds.get(k - 1).copied().unwrap_or(Interval::ZERO)
    }

    pub fn bounds(&self) -> &[Interval] {
        &self.bounds
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    /// Highest mode with a bound other than `[0, 0]`, or 0 if unforced.
    pub fn support(&self) -> usize {
        self.bounds.iter().rposition(|b| *b != Interval::ZERO).map_or(0, |i| i + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ForcingFamily {
    /// `f(t, x) = 2 f_1(t) cos x`.
    A,
    /// `f(t, x) = 2 Σ_{k=1}^{4} f_k(t) cos kx`.
    B,
}

impl ForcingFamily {
    pub fn modes(self) -> usize {
        match self {
            ForcingFamily::A => 1,
            ForcingFamily::B => 4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ForcingFamily::A => "A",
            ForcingFamily::B => "B",
        }
    }
}

/// Per-mode bounds for a forcing family with `|f_k(t)| ≤ 1` and amplitude
/// range `eps`. The Fourier coefficient of `2 f_k(t) cos kx` at wavenumber
/// `k` is `f_k(t)`, so each forced mode gets `[-ε̄, ε̄]` with `ε̄ = mag(eps)`.
pub fn family_forcing(family: ForcingFamily, eps: Interval) -> Forcing {
    let bar = Interval::symmetric(eps.mag());
    Forcing::new(vec![bar; family.modes()])
}

/// PDE parameters together with the forcing bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub beta: Interval,
    pub sigma: Interval,
    pub forcing: Forcing,
}

impl Problem {
    pub fn new(beta: Interval, sigma: Interval, forcing: Forcing) -> Result<Self> {
        let p = Problem { beta, sigma, forcing };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.beta.lo() <= 1.0 {
            return Err(Error::InvalidProblem(format!("beta must satisfy beta > 1, got {}", self.beta)));
        }
        Ok(())
    }
}

/// `k²(βk² − 1)`.
pub fn lambda_sq(k: usize, beta: Interval) -> Result<Interval> {
    if k == 0 {
        return Err(Error::Domain("mode index must be at least 1".into()));
    }
    let k2 = Interval::int((k * k) as i64);
    Ok(k2 * (beta * k2 - Interval::ONE))
}

/// `λ_k = sqrt(k²(βk² − 1))`.
pub fn lambda(k: usize, beta: Interval) -> Result<Interval> {
    let sq = lambda_sq(k, beta)?;
    if sq.lo() < 0.0 {
        return Err(Error::Domain(format!("k²(βk²−1) = {sq} is not nonnegative")));
    }
    Ok(sq.sqrt()?)
}

/// `(u_k, v_k) ↦ (u_k^+, u_k^-)`.
pub fn to_diag(u: Interval, v: Interval, k: usize, beta: Interval) -> Result<(Interval, Interval)> {
    let lam = lambda(k, beta)?;
    let half_u = u.div_int(2);
    let scaled_v = v.checked_div(&(lam * Interval::int(2)))?;
    Ok((half_u + scaled_v, half_u - scaled_v))
}

/// `(u_k^+, u_k^-) ↦ (u_k, v_k)`.
pub fn from_diag(plus: Interval, minus: Interval, k: usize, beta: Interval) -> Result<(Interval, Interval)> {
    let lam = lambda(k, beta)?;
    Ok((plus + minus, lam * (plus - minus)))
}

/// A point of the `n`-th Galerkin projection in diagonal coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagPoint {
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
}

impl DiagPoint {
    pub fn zeros(n: usize) -> Self {
        DiagPoint { plus: vec![0.0; n], minus: vec![0.0; n] }
    }

    pub fn new(plus: Vec<f64>, minus: Vec<f64>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::Argument(format!("u+ has {} modes but u- has {}", plus.len(), minus.len())));
        }
        Ok(DiagPoint { plus, minus })
    }

    pub fn modes(&self) -> usize {
        self.plus.len()
    }

    /// Physical coefficients `u_k = u_k^+ + u_k^-`, index 0 holding `k = 1`.
    pub fn physical(&self) -> Vec<f64> {
        self.plus.iter().zip(&self.minus).map(|(p, m)| p + m).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.plus.iter().chain(&self.minus).all(|x| x.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64) -> Interval {
        Interval::point(x)
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(lambda_sq(2, pt(2.5)).unwrap(), pt(36.0));
        assert_eq!(lambda_sq(1, pt(1.5)).unwrap(), pt(0.5));
        assert_eq!(lambda(2, pt(2.5)).unwrap(), pt(6.0));
        let l1 = lambda(1, pt(1.5)).unwrap();
        assert!(l1.contains(std::f64::consts::FRAC_1_SQRT_2) && l1.width() <= f64::EPSILON);
        let l6 = lambda(6, pt(1.5)).unwrap();
        assert_eq!(lambda_sq(6, pt(1.5)).unwrap(), pt(1908.0));
        assert!((l6.mid() - 43.680659335683).abs() < 1e-10);
        assert!(matches!(lambda_sq(0, pt(1.5)), Err(Error::Domain(_))));
    }

    #[test]
    fn eigenvalue_near_one_stays_positive() {
        let beta = pt(1.0f64.next_up());
        let sq = lambda_sq(1, beta).unwrap();
        assert!(sq.hi() > 0.0 && sq.hi() < 1e-15);
    }

    #[test]
    fn eigenvalues_increase_with_mode() {
        let beta = pt(1.5);
        let mut prev = lambda_sq(1, beta).unwrap();
        for k in 2..=64 {
            let next = lambda_sq(k, beta).unwrap();
            assert!(prev.strictly_less(&next), "k = {k}");
            prev = next;
        }
    }

    #[test]
    fn diagonal_change_of_variables() {
        let (p, m) = to_diag(pt(1.0), pt(6.0), 2, pt(2.5)).unwrap();
        assert_eq!((p, m), (pt(1.0), pt(0.0)));
        let (p, m) = to_diag(pt(0.0), pt(0.0), 3, pt(2.5)).unwrap();
        assert_eq!((p, m), (pt(0.0), pt(0.0)));
        let (p, m) = to_diag(pt(0.3), pt(-0.2), 1, pt(1.5)).unwrap();
        let (u, v) = from_diag(p, m, 1, pt(1.5)).unwrap();
        assert!(u.contains(0.3) && v.contains(-0.2));
    }

    #[test]
    fn families() {
        let a = family_forcing(ForcingFamily::A, Interval::new(-0.05, 0.05).unwrap());
        assert_eq!(a.bounds(), &[Interval::new(-0.05, 0.05).unwrap()]);
        assert_eq!(a.support(), 1);
        let b = family_forcing(ForcingFamily::B, Interval::new(-0.3, 0.3).unwrap());
        assert_eq!(b.len(), 4);
        assert!(b.bounds().iter().all(|x| *x == Interval::new(-0.3, 0.3).unwrap()));
        assert_eq!(b.bound(5), Interval::ZERO);
        let zero = family_forcing(ForcingFamily::A, Interval::ZERO);
        assert_eq!(zero.bounds(), &[Interval::ZERO]);
        assert_eq!(zero.support(), 0);
        // Only the magnitude of ε matters.
        let pos = family_forcing(ForcingFamily::B, Interval::new(0.1, 0.2).unwrap());
        let neg = family_forcing(ForcingFamily::B, Interval::new(-0.2, -0.1).unwrap());
        assert_eq!(pos, neg);
    }

    #[test]
    fn problem_requires_beta_above_one() {
        assert!(Problem::new(pt(1.0), pt(3.0), Forcing::unforced()).is_err());
        assert!(Problem::new(Interval::new(0.9, 1.2).unwrap(), pt(3.0), Forcing::unforced()).is_err());
        assert!(Problem::new(pt(1.5), pt(3.0), Forcing::unforced()).is_ok());
    }
}
