//! Heuristic construction of candidate segments.
//!
//! One refinement step raises the tail exponent by one, resets `C` from the
//! nonlinear tail constant of the current segment and then moves every low
//! box onto the isolation boundary implied by the new segment, mode by mode
//! in increasing order. The output is only a candidate: it still has to pass
//! [`verify`].

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::isolation::{high_mode_denominator, low_mode_rhs, verify, VerificationReport};
use crate::model::Problem;
use crate::nonlinearity::{d_total, n_low};
use crate::segment::{ModeBox, Segment};

/// Tail exponent of the initial guess.
pub const INITIAL_EXPONENT: u32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct RefineOptions {
    /// Number of full refinement steps.
    pub iterations: u32,
    /// Tail amplitude of the initial guess.
    pub c_tilde: Interval,
    /// Minimal box half-width.
    pub floor: f64,
    /// Factor applied to each new box radius about its center.
    pub inflation: f64,
    /// Maximal number of box-only sweeps applied to the initial guess before
    /// the first step (0 disables them).
    pub warm_start: u32,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions { iterations: 2, c_tilde: Interval::ONE, floor: 1e-8, inflation: 1.001, warm_start: 64 }
    }
}

impl RefineOptions {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::Argument("at least one refinement iteration is required".into()));
        }
        if self.c_tilde.lo() <= 0.0 {
            return Err(Error::Argument(format!("initial tail amplitude {} must be positive", self.c_tilde)));
        }
        if !(self.floor > 0.0 && self.floor.is_finite()) {
            return Err(Error::Argument(format!("box floor {} must be positive", self.floor)));
        }
        if !(self.inflation >= 1.0 && self.inflation.is_finite()) {
            return Err(Error::Argument(format!("inflation {} must be at least 1", self.inflation)));
        }
        Ok(())
    }
}

/// Symmetric boxes at the linear response `|f_k| / (2k²(βk² − 1))` (or
/// `floor` when larger), tail `C̃ / k^4`.
pub fn initial_guess(problem: &Problem, m: usize, c_tilde: Interval, floor: f64) -> Result<Segment> {
    if m == 0 {
        return Err(Error::Argument("M must be at least 1".into()));
    }
    let boxes = (1..=m)
        .map(|k| {
            let k2 = Interval::int((k * k) as i64);
            let denom = Interval::int(2) * k2 * Interval::point((problem.beta * k2 - Interval::ONE).lo());
            let response = Interval::point(problem.forcing.bound(k).mag()) / denom;
            ModeBox::symmetric(response.hi().max(floor))
        })
        .collect();
    Segment::new(INITIAL_EXPONENT, c_tilde, boxes)
}

/// Box with center `mid(rhs)` and radius `max(inflation · rad(rhs), floor)`.
fn box_around(rhs: Interval, inflation: f64, floor: f64) -> ModeBox {
    let center = Interval::point(rhs.mid());
    let radius = Interval::point((Interval::point(rhs.rad()) * Interval::point(inflation)).hi().max(floor));
    let l = (center - radius).lo().min(rhs.lo());
    let r = (center + radius).hi().max(rhs.hi());
    ModeBox::new(Interval::point(l), Interval::point(r))
}

/// Replaces the boxes of `seg` in order `k = 1..=M`, each from the
/// enclosure of `σN_k` on the partially updated segment.
fn update_boxes(seg: &mut Segment, problem: &Problem, opts: &RefineOptions) -> Result<()> {
    for k in 1..=seg.m() {
        let n = n_low(seg, problem.sigma, k)?;
        let rhs = low_mode_rhs(problem, n, k);
        if !(rhs.lo().is_finite() && rhs.hi().is_finite()) {
            return Err(Error::Diverged(format!("box {k} became unbounded (s = {})", seg.s)));
        }
        seg.boxes[k - 1] = box_around(rhs, opts.inflation, opts.floor);
    }
    Ok(())
}

/// Box-only sweeps at fixed `s` and `C`, stopped early once the boxes no
/// longer move.
pub fn warm_start(seg: &Segment, problem: &Problem, opts: &RefineOptions) -> Result<Segment> {
    let mut current = seg.clone();
    for _ in 0..opts.warm_start {
        let before = current.boxes.clone();
        update_boxes(&mut current, problem, opts)?;
        if current.boxes == before {
            break;
        }
    }
    Ok(current)
}

/// One refinement step: `s := s + 1`, `C := |σ| D / (2(β − (M+1)^{-2}))` with
/// `D` taken on the input segment, then the inductive box update.
pub fn refine_step(seg: &Segment, problem: &Problem, opts: &RefineOptions) -> Result<Segment> {
    let d = Interval::point(d_total(seg)?.hi());
    let c = (problem.sigma.abs() * d) / high_mode_denominator(seg.m(), problem.beta);
    if !c.hi().is_finite() {
        return Err(Error::Diverged(format!("tail amplitude C became unbounded (s = {})", seg.s + 1)));
    }
    let mut next = Segment { s: seg.s + 1, c: Interval::point(c.hi().max(opts.floor)), boxes: seg.boxes.clone() };
    update_boxes(&mut next, problem, opts)?;
    Ok(next)
}

/// Initial guess, warm start, `iterations` refinement steps, verification.
///
/// If the iteration overflows, the last finite segment is returned with a
/// failed report.
pub fn refine(problem: &Problem, m: usize, opts: &RefineOptions) -> Result<(Segment, VerificationReport)> {
    opts.validate()?;
    problem.validate()?;
    let seed = initial_guess(problem, m, opts.c_tilde, opts.floor)?;
    let diverged = |seg: Segment, e: Error| {
        let report = VerificationReport::not_evaluated(seg.m(), e.to_string());
        Ok((seg, report))
    };
    let mut seg = match warm_start(&seed, problem, opts) {
        Ok(s) => s,
        Err(e @ Error::Diverged(_)) => return diverged(seed, e),
        Err(e) => return Err(e),
    };
    for _ in 0..opts.iterations {
        seg = match refine_step(&seg, problem, opts) {
            Ok(s) => s,
            Err(e @ Error::Diverged(_)) => return diverged(seg, e),
            Err(e) => return Err(e),
        };
    }
    let report = verify(&seg, problem)?;
    Ok((seg, report))
}

/// Scales boxes and `C` by `new / old`, e.g. to reuse a segment for a
/// different forcing amplitude.
pub fn rescale_for_epsilon(seg: &Segment, old_eps_mag: f64, new_eps_mag: f64) -> Result<Segment> {
    if !(old_eps_mag > 0.0 && old_eps_mag.is_finite()) {
        return Err(Error::Argument(format!("old amplitude {old_eps_mag} must be positive")));
    }
    if !(new_eps_mag >= 0.0 && new_eps_mag.is_finite()) {
        return Err(Error::Argument(format!("new amplitude {new_eps_mag} must be nonnegative")));
    }
    let ratio = Interval::point(new_eps_mag) / Interval::point(old_eps_mag);
    Ok(seg.scaled(ratio))
}
