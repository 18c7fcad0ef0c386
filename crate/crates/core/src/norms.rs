//! Norm and decay bounds for solutions inside a segment.
//!
//! Amplitudes `ā_k` bound the physical coefficients, `|u_k| ≤ ā_k`, and are
//! given explicitly up to some mode `K` and by a power law `A / k^q` beyond.
//! Two conventions are reported for the L² norm:
//!
//! * `table`: `sqrt(2π Σ_{k≥1} ā_k²)`;
//! * `parseval`: the same times `√2`, the exact Parseval value for
//!   `u = Σ_{k∈ℤ} u_k e^{ikx}` with `u_{−k} = u_k`.
//!
//! The sup-norm bound is `Σ_{k≥1} ā_k` (table) or twice that (parseval).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::{lambda, Problem};
use crate::segment::Segment;

/// Number of explicit terms summed past `M` before the tail estimate.
pub const EXPLICIT_TAIL_TERMS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Table,
    Parseval,
}

/// `ā_k` for `k = 1..=head.len()`, and `ā_k ≤ A / k^q` beyond.
#[derive(Debug, Clone, PartialEq)]
pub struct Amplitudes {
    pub head: Vec<Interval>,
    pub tail_coeff: Interval,
    pub tail_power: u32,
}

impl Amplitudes {
    fn check_power(&self, needed: u32) -> Result<()> {
        if self.tail_power < needed {
            return Err(Error::Domain(format!(
                "tail power {} makes the series diverge (need at least {needed})",
                self.tail_power
            )));
        }
        Ok(())
    }

    fn k_max(&self) -> Interval {
        Interval::int(self.head.len().max(1) as i64)
    }

    /// `Σ_{k>K} A^p / k^{pq} ≤ A^p / ((pq − 1) K^{pq−1})`.
    fn tail_sum(&self, p: u32) -> Interval {
        let e = p * self.tail_power;
        let a = Interval::point(self.tail_coeff.mag()).pow_int(p);
        let bound = a / (Interval::int(e as i64 - 1) * self.k_max().pow_int(e - 1));
        Interval::new(0.0, bound.hi()).expect("nonnegative tail")
    }

    pub fn sum(&self) -> Result<Interval> {
        self.check_power(2)?;
        let head: Interval = self.head.iter().map(|a| Interval::point(a.mag())).sum();
        Ok(head + self.tail_sum(1))
    }

    pub fn sum_squares(&self) -> Result<Interval> {
        self.check_power(1)?;
        let head: Interval = self.head.iter().map(|a| Interval::point(a.mag()).square()).sum();
        Ok(head + self.tail_sum(2))
    }
}

/// `sqrt(2π Σ ā_k²)`, times `√2` in the Parseval convention.
pub fn l2_bound(amps: &Amplitudes, convention: Convention) -> Result<Interval> {
    let table = (Interval::two_pi() * amps.sum_squares()?).sqrt()?;
    Ok(match convention {
        Convention::Table => table,
        Convention::Parseval => table * Interval::int(2).sqrt()?,
    })
}

/// `Σ ā_k`, times 2 in the Parseval convention.
pub fn c0_bound(amps: &Amplitudes, convention: Convention) -> Result<Interval> {
    let table = amps.sum()?;
    Ok(match convention {
        Convention::Table => table,
        Convention::Parseval => table * Interval::int(2),
    })
}

/// Upper bound on `|v_k| = λ_k |u_k^+ − u_k^-|`.
pub fn velocity_bound(seg: &Segment, problem: &Problem, k: usize) -> Result<Interval> {
    let lam = lambda(k, problem.beta)?;
    let half = match seg.mode_box(k) {
        Some(b) => Interval::point(b.mag()),
        None => seg.tail_radius(k),
    };
    Ok(Interval::point((Interval::int(2) * lam * half).hi()))
}

/// `2 √(hi β) · C`, the velocity tail coefficient: `λ_k ≤ √β k²`.
fn velocity_tail_coeff(seg: &Segment, problem: &Problem) -> Result<Interval> {
    let root = Interval::point(problem.beta.hi()).sqrt()?;
    Ok(Interval::point((Interval::int(2) * root * seg.c_upper()).hi()))
}

fn head_len(seg: &Segment) -> usize {
    seg.m() + EXPLICIT_TAIL_TERMS
}

/// Amplitudes of `u`: `|u_k|` from the segment, `2C / k^s` beyond.
pub fn u_amplitudes(seg: &Segment) -> Amplitudes {
    Amplitudes {
        head: (1..=head_len(seg)).map(|k| seg.abs_u(k)).collect(),
        tail_coeff: Interval::point((Interval::int(2) * seg.c_upper()).hi()),
        tail_power: seg.s,
    }
}

/// Amplitudes of `u_t`: `velocity_bound`, `2√β C / k^{s−2}` beyond.
pub fn v_amplitudes(seg: &Segment, problem: &Problem) -> Result<Amplitudes> {
    if seg.s < 2 {
        return Err(Error::Domain(format!("tail exponent s = {} is too small for velocity bounds", seg.s)));
    }
    Ok(Amplitudes {
        head: (1..=head_len(seg)).map(|k| velocity_bound(seg, problem, k)).collect::<Result<_>>()?,
        tail_coeff: velocity_tail_coeff(seg, problem)?,
        tail_power: seg.s - 2,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormBounds {
    pub convention: Convention,
    #[serde(with = "crate::serde_repr::interval")]
    pub l2_u: Interval,
    #[serde(with = "crate::serde_repr::interval")]
    pub c0_u: Interval,
    #[serde(with = "crate::serde_repr::interval")]
    pub l2_ut: Interval,
    #[serde(with = "crate::serde_repr::interval")]
    pub c0_ut: Interval,
}

pub fn norm_bounds(seg: &Segment, problem: &Problem, convention: Convention) -> Result<NormBounds> {
    let u = u_amplitudes(seg);
    let v = v_amplitudes(seg, problem)?;
    Ok(NormBounds {
        convention,
        l2_u: l2_bound(&u, convention)?,
        c0_u: c0_bound(&u, convention)?,
        l2_ut: l2_bound(&v, convention)?,
        c0_ut: c0_bound(&v, convention)?,
    })
}

/// Constants with `|u_k| ≤ Ĉ_u / k^6` and `|v_k| ≤ Ĉ_v / k^4` for all `k ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayConstants {
    #[serde(with = "crate::serde_repr::float")]
    pub c_u: f64,
    pub u_exponent: u32,
    #[serde(with = "crate::serde_repr::float")]
    pub c_v: f64,
    pub v_exponent: u32,
}

pub fn decay_constants(seg: &Segment, problem: &Problem) -> Result<DecayConstants> {
    if seg.s != 6 {
        return Err(Error::Domain(format!("decay constants need s = 6, got s = {}", seg.s)));
    }
    let mut c_u = (Interval::int(2) * seg.c_upper()).hi();
    let mut c_v = velocity_tail_coeff(seg, problem)?.hi();
    for k in 1..=seg.m() {
        let kk = Interval::int(k as i64);
        c_u = c_u.max((kk.pow_int(6) * seg.abs_u(k)).hi());
        c_v = c_v.max((kk.pow_int(4) * velocity_bound(seg, problem, k)?).hi());
    }
    Ok(DecayConstants { c_u, u_exponent: 6, c_v, v_exponent: 4 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{family_forcing, ForcingFamily};
    use crate::segment::ModeBox;

    fn col(c: f64, r: &[f64]) -> Segment {
        Segment::new(6, Interval::point(c), r.iter().map(|&x| ModeBox::symmetric(x)).collect()).unwrap()
    }

    fn problem(beta: f64) -> Problem {
        Problem::new(
            Interval::point(beta),
            Interval::point(3.0),
            family_forcing(ForcingFamily::A, Interval::symmetric(0.05)),
        )
        .unwrap()
    }

    fn col1() -> Segment {
        col(4.6941, &[0.05743, 0.004018, 0.00022427, 1.1242e-5, 5.7862e-7, 5.5904e-7])
    }

    #[test]
    fn velocity_examples() {
        let seg = col(100.64, &[0.16777, 0.020237, 0.0019934, 0.00017727, 1.8646e-5, 2.1631e-5]);
        let v2 = velocity_bound(&seg, &problem(2.5), 2).unwrap();
        assert!((v2.hi() - 2.0 * 6.0 * 0.020237).abs() < 1e-15);
        let zero = Segment::zero(6, 6);
        assert_eq!(velocity_bound(&zero, &problem(2.5), 3).unwrap(), Interval::ZERO);
        let p = problem(1.5);
        for k in 7..40 {
            let v = velocity_bound(&seg, &p, k).unwrap().hi();
            let tail = 2.0 * 1.5f64.sqrt() * 100.64 / (k as f64).powi(4);
            assert!(v <= tail * (1.0 + 1e-12), "k = {k}");
        }
    }

    #[test]
    fn table_convention_l2_matches_hand_value() {
        let r = [0.05743, 0.004018, 0.00022427, 1.1242e-5, 5.7862e-7, 5.5904e-7];
        let hand = (2.0 * std::f64::consts::PI * 4.0 * r.iter().map(|x| x * x).sum::<f64>()).sqrt();
        let l2 = l2_bound(&u_amplitudes(&col1()), Convention::Table).unwrap();
        // The tail modes add a few parts in 10^7.
        assert!(l2.lo() >= hand && l2.hi() - hand < 1e-6 * hand);
        assert!((l2.mid() - 0.288618).abs() < 5e-6);
    }

    #[test]
    fn parseval_is_root_two_times_table() {
        let amps = u_amplitudes(&col1());
        let t = l2_bound(&amps, Convention::Table).unwrap();
        let p = l2_bound(&amps, Convention::Parseval).unwrap();
        assert!((p.mid() / t.mid() - 2f64.sqrt()).abs() < 1e-14);
        let c_t = c0_bound(&amps, Convention::Table).unwrap();
        let c_p = c0_bound(&amps, Convention::Parseval).unwrap();
        assert_eq!(c_p.hi(), 2.0 * c_t.hi());
    }

    #[test]
    fn c0_examples() {
        let c0 = c0_bound(&u_amplitudes(&col1()), Convention::Table).unwrap();
        assert!((c0.hi() - 0.12349).abs() < 5e-5);
        let single = Amplitudes { head: vec![Interval::point(0.7)], tail_coeff: Interval::ZERO, tail_power: 6 };
        assert_eq!(c0_bound(&single, Convention::Table).unwrap(), Interval::point(0.7));
        let zero = Amplitudes { head: vec![Interval::ZERO; 5], tail_coeff: Interval::ZERO, tail_power: 6 };
        assert_eq!(c0_bound(&zero, Convention::Table).unwrap(), Interval::ZERO);
        assert_eq!(l2_bound(&zero, Convention::Table).unwrap(), Interval::ZERO);
    }

    #[test]
    fn divergent_series_are_rejected() {
        let amps = Amplitudes { head: vec![Interval::ONE], tail_coeff: Interval::ONE, tail_power: 1 };
        assert!(matches!(c0_bound(&amps, Convention::Table), Err(Error::Domain(_))));
        let amps = Amplitudes { tail_power: 0, ..amps };
        assert!(matches!(l2_bound(&amps, Convention::Table), Err(Error::Domain(_))));
    }

    #[test]
    fn tail_remainder_is_negligible() {
        let amps = u_amplitudes(&col1());
        assert!(amps.tail_sum(2).hi() < 1e-9 * amps.sum_squares().unwrap().hi());
        assert!(amps.tail_sum(1).hi() < 1e-7 * amps.sum().unwrap().hi());
    }

    #[test]
    fn decay_constants_dominate() {
        let seg = col1();
        let p = problem(1.5);
        let dc = decay_constants(&seg, &p).unwrap();
        for k in 1..=256usize {
            let kf = k as f64;
            assert!(kf.powi(6) * seg.abs_u(k).hi() <= dc.c_u * (1.0 + 1e-12), "u, k = {k}");
            let v = velocity_bound(&seg, &p, k).unwrap().hi();
            assert!(kf.powi(4) * v <= dc.c_v * (1.0 + 1e-12), "v, k = {k}");
        }
        let zero = Segment::zero(6, 6);
        let dz = decay_constants(&zero, &p).unwrap();
        assert_eq!((dz.c_u, dz.c_v), (0.0, 0.0));
        let mut tail_only = Segment::zero(6, 6);
        tail_only.c = Interval::point(2.0);
        let dt = decay_constants(&tail_only, &p).unwrap();
        assert_eq!(dt.c_u, 4.0);
        assert!((dt.c_v - 4.0 * 1.5f64.sqrt()).abs() < 1e-14);
        let mut s5 = seg.clone();
        s5.s = 5;
        assert!(decay_constants(&s5, &p).is_err());
    }
}
