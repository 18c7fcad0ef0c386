//! Isolation inequalities for box segments.
//!
//! High modes: `C > |σ| D / (M+1) · 1 / (2(β − (M+1)^{-2}))` settles every
//! mode `k > M` in every Galerkin projection. Low modes: for each `k ≤ M`
//! the faces must strictly enclose
//!
//! ```text
//! RHS_k = −(σ N_k + ε f_k k^{-2}) / (2(βk² − 1)).
//! ```
//!
//! All strict inequalities are decided with `hi(x) < lo(y)`, so rounding can
//! only turn a true inequality into a reported failure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::Problem;
use crate::nonlinearity::NEnclosures;
use crate::segment::Segment;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HighModeRecord {
    /// The tail amplitude `C`.
    #[serde(with = "crate::serde_repr::interval")]
    pub lhs: Interval,
    /// `|σ| D / ((M+1) · 2(β − (M+1)^{-2}))`.
    #[serde(with = "crate::serde_repr::interval")]
    pub rhs: Interval,
    /// `lo(C) − hi(rhs)`.
    #[serde(with = "crate::serde_repr::float")]
    pub margin: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowModeRecord {
    pub k: usize,
    #[serde(with = "crate::serde_repr::interval")]
    pub rhs_enclosure: Interval,
    /// `lo(u_k^r) − hi(RHS_k)`.
    #[serde(with = "crate::serde_repr::float")]
    pub upper_margin: f64,
    /// `lo(RHS_k) − hi(u_k^l)`.
    #[serde(with = "crate::serde_repr::float")]
    pub lower_margin: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub high_mode: HighModeRecord,
    pub low_modes: Vec<LowModeRecord>,
    pub s_ok: bool,
    pub forcing_support_ok: bool,
    /// Human-readable reasons for every failed condition.
    pub diagnostics: Vec<String>,
}

impl VerificationReport {
    /// A failed report for a segment whose inequalities could not be
    /// evaluated at all.
    pub fn not_evaluated(m: usize, reason: String) -> Self {
        let worst = f64::NEG_INFINITY;
        VerificationReport {
            passed: false,
            high_mode: HighModeRecord { lhs: Interval::ZERO, rhs: Interval::ZERO, margin: worst, passed: false },
            low_modes: (1..=m)
                .map(|k| LowModeRecord {
                    k,
                    rhs_enclosure: Interval::ZERO,
                    upper_margin: worst,
                    lower_margin: worst,
                    passed: false,
                })
                .collect(),
            s_ok: false,
            forcing_support_ok: false,
            diagnostics: vec![reason],
        }
    }

    /// Smallest margin over all inequalities.
    pub fn worst_margin(&self) -> f64 {
        self.low_modes.iter().flat_map(|r| [r.upper_margin, r.lower_margin]).fold(self.high_mode.margin, f64::min)
    }
}

/// `2(β − (M+1)^{-2})`, the high-mode damping factor at `k = M + 1`.
pub(crate) fn high_mode_denominator(m: usize, beta: Interval) -> Interval {
    let m1 = Interval::int((m + 1) as i64);
    Interval::int(2) * (beta - Interval::ONE / m1.square())
}

fn forcing_support_error(seg: &Segment, problem: &Problem) -> Option<String> {
    let support = problem.forcing.support();
    (support > seg.m()).then(|| {
        format!(
            "forcing mode {support} is nonzero but the segment only has M = {} explicit modes; \
             the high-mode inequality needs f_k = 0 for k > M",
            seg.m()
        )
    })
}

/// High-mode inequality for the tail amplitude, given `D` for the segment.
pub fn check_high(seg: &Segment, problem: &Problem, d: Interval) -> Result<HighModeRecord> {
    problem.validate()?;
    if let Some(msg) = forcing_support_error(seg, problem) {
        return Err(Error::Precondition(msg));
    }
    let m = seg.m();
    let sigma = problem.sigma.abs();
    let rhs = (sigma * d) / (Interval::int((m + 1) as i64) * high_mode_denominator(m, problem.beta));
    let lhs = seg.c;
    Ok(HighModeRecord { lhs, rhs, margin: lhs.lo() - rhs.hi(), passed: rhs.strictly_less(&lhs) })
}

/// `RHS_k` for one low mode.
pub fn low_mode_rhs(problem: &Problem, n_low: Interval, k: usize) -> Interval {
    let k2 = Interval::int((k * k) as i64);
    let forcing = problem.forcing.bound(k) / k2;
    let denom = Interval::int(2) * (problem.beta * k2 - Interval::ONE);
    -((n_low + forcing) / denom)
}

/// Low-mode inequalities for `k = 1..=M`.
pub fn check_low(seg: &Segment, problem: &Problem, enclosures: &NEnclosures) -> Result<Vec<LowModeRecord>> {
    if enclosures.n_low.len() != seg.m() {
        return Err(Error::Argument(format!(
            "{} low-mode enclosures supplied for M = {}",
            enclosures.n_low.len(),
            seg.m()
        )));
    }
    Ok(seg
        .boxes
        .iter()
        .zip(&enclosures.n_low)
        .enumerate()
        .map(|(i, (b, n))| {
            let k = i + 1;
            let rhs = low_mode_rhs(problem, *n, k);
            LowModeRecord {
                k,
                rhs_enclosure: rhs,
                upper_margin: b.r.lo() - rhs.hi(),
                lower_margin: rhs.lo() - b.l.hi(),
                passed: rhs.strictly_less(&b.r) && b.l.strictly_less(&rhs),
            }
        })
        .collect())
}

/// Runs every check and collects the outcome. Structural errors in the
/// inputs are returned as errors; failed inequalities, `s < 6` and forcing
/// above `M` are reported in the returned value.
pub fn verify(seg: &Segment, problem: &Problem) -> Result<VerificationReport> {
    verify_with(seg, problem).map(|(report, _)| report)
}

/// [`verify`] that also hands back the enclosures it computed.
pub fn verify_with(seg: &Segment, problem: &Problem) -> Result<(VerificationReport, NEnclosures)> {
    seg.validate()?;
    problem.validate()?;
    let enclosures = NEnclosures::compute(seg, problem.sigma)?;
    let mut diagnostics = Vec::new();

    let s_ok = seg.s >= Segment::MIN_CERTIFIED_EXPONENT;
    if !s_ok {
        diagnostics.push(format!(
            "tail exponent s = {} is below the required {}",
            seg.s,
            Segment::MIN_CERTIFIED_EXPONENT
        ));
    }

    let support_error = forcing_support_error(seg, problem);
    let forcing_support_ok = support_error.is_none();
    let high_mode = match support_error {
        Some(msg) => {
            diagnostics.push(msg);
            // Evaluate the inequality anyway so the margin is informative.
            let unforced = Problem { forcing: crate::model::Forcing::unforced(), ..problem.clone() };
            let mut rec = check_high(seg, &unforced, enclosures.d)?;
            rec.passed = false;
            rec
        }
        None => check_high(seg, problem, enclosures.d)?,
    };
    if forcing_support_ok && !high_mode.passed {
        diagnostics.push(format!(
            "high-mode inequality fails: C = {} is not above {} (margin {:e})",
            high_mode.lhs, high_mode.rhs, high_mode.margin
        ));
    }

    let low_modes = check_low(seg, problem, &enclosures)?;
    for r in low_modes.iter().filter(|r| !r.passed) {
        diagnostics.push(format!(
            "low mode {} fails: RHS = {}, upper margin {:e}, lower margin {:e}",
            r.k, r.rhs_enclosure, r.upper_margin, r.lower_margin
        ));
    }

    let passed = s_ok && forcing_support_ok && high_mode.passed && low_modes.iter().all(|r| r.passed);
    Ok((VerificationReport { passed, high_mode, low_modes, s_ok, forcing_support_ok, diagnostics }, enclosures))
}
