//! Enclosures of the quadratic nonlinearity over a segment.
//!
//! `N_k(u) = −2 IS(k) − FS(k)` with
//!
//! ```text
//! IS(k) = Σ_{k1 ≥ 1} u_{k1+k} u_{k1},        FS(k) = Σ_{k1=1}^{k−1} u_{k1} u_{k−k1}.
//! ```
//!
//! For `k ≤ M` the infinite sum is split into an explicit head and two tail
//! remainders. For `k > M` both sums are bounded by `D1 / k^{s−1}` and
//! `D2 / k^{s−1}`, giving `|N_k| ≤ D / k^{s−1}` with `D = D1 + 2 D2`.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::segment::Segment;

fn int(n: usize) -> Interval {
    Interval::int(n as i64)
}

fn require_tail_exponent(seg: &Segment) -> Result<()> {
    if seg.s < 2 {
        return Err(Error::Domain(format!("tail exponent s = {} must be at least 2", seg.s)));
    }
    Ok(())
}

/// Enclosure of `IS(k)` for `1 ≤ k ≤ M`.
pub fn is_low(seg: &Segment, k: usize) -> Result<Interval> {
    let m = seg.m();
    if k == 0 || k > m {
        return Err(Error::Domain(format!("IS(k) head enclosure needs 1 <= k <= M = {m}, got {k}")));
    }
    require_tail_exponent(seg)?;
    let s = seg.s;
    let c = seg.c_upper();

    let head: Interval = (1..=m - k).map(|k1| seg.u_box(k1 + k) * seg.u_box(k1)).sum();

    // k1 in M-k+1..=M pairs a low mode with a tail mode k+k1 > M.
    let mixed: Interval =
        (m - k + 1..=m).map(|k1| seg.abs_u(k1).checked_div(&int(k + k1).pow_int(s)).expect("positive")).sum();
    let mixed = Interval::int(2) * c * mixed;

    // Both factors in the tail.
    let far = Interval::int(4) * c.square();
    let far =
        far.checked_div(&(int(k + m + 1).pow_int(s) * int(s as usize - 1) * int(m).pow_int(s - 1))).expect("positive");

    Ok(head + Interval::symmetric((mixed + far).hi()))
}

/// Enclosure of `FS(k)` for `2 ≤ k ≤ 2M`, tail boxes used for indices above `M`.
pub fn fs_exact(seg: &Segment, k: usize) -> Result<Interval> {
    let m = seg.m();
    if k < 2 || k > 2 * m {
        return Err(Error::Domain(format!("FS(k) needs 2 <= k <= 2M = {}, got {k}", 2 * m)));
    }
    let mut sum: Interval =
        (1..k).take_while(|&k1| 2 * k1 < k).map(|k1| Interval::int(2) * (seg.u_box(k1) * seg.u_box(k - k1))).sum();
    if k.is_multiple_of(2) {
        sum += seg.u_box(k / 2).square();
    }
    Ok(sum)
}

/// `D1`, the bound `|FS(k)| ≤ D1 / k^{s−1}` for all `k > M`.
pub fn d1(seg: &Segment) -> Result<Interval> {
    require_tail_exponent(seg)?;
    let m = seg.m();
    let s = seg.s;
    let c = seg.c_upper();

    let mut explicit = Interval::ZERO;
    for k in m + 1..=2 * m {
        let scaled = int(k).pow_int(s - 1) * Interval::point(fs_exact(seg, k)?.mag());
        explicit = explicit.max(&scaled);
    }

    let two = Interval::int(2);
    let sum_low = seg.sum_abs_u_low();
    let denom = int(2 * m + 1);
    let first = two.pow_int(s + 1).checked_div(&denom)? * sum_low;
    let second = c * two.pow_int(2 * s + 1) / denom.pow_int(s + 1);
    let third = c * two.pow_int(s + 1) / (int(s as usize - 1) * int(m).pow_int(s));
    let asymptotic = two * c * (first + second + third);

    Ok(explicit.max(&asymptotic))
}

/// `D2`, the bound `|IS(k)| ≤ D2 / k^{s−1}` for all `k > M`.
pub fn d2(seg: &Segment) -> Result<Interval> {
    require_tail_exponent(seg)?;
    let m = seg.m();
    let s = seg.s;
    let c = seg.c_upper();
    let two = Interval::int(2);
    let m1 = int(m + 1);
    let tail = two * c / (m1.pow_int(s - 1) * int(s as usize - 1));
    Ok(two * c / m1 * (tail + seg.sum_abs_u_low()))
}

/// `D = D1 + 2 D2`, so that `|N_k| ≤ D / k^{s−1}` for `k > M`.
pub fn d_total(seg: &Segment) -> Result<Interval> {
    Ok(d1(seg)? + Interval::int(2) * d2(seg)?)
}

/// Enclosure of `σ N_k` over the segment for `1 ≤ k ≤ M`.
pub fn n_low(seg: &Segment, sigma: Interval, k: usize) -> Result<Interval> {
    let is = is_low(seg, k)?;
    let fs = if k >= 2 { fs_exact(seg, k)? } else { Interval::ZERO };
    Ok(sigma * -(Interval::int(2) * is + fs))
}

/// All nonlinear enclosures needed to verify one segment.
#[derive(Debug, Clone, PartialEq)]
pub struct NEnclosures {
    /// `[N_k^l, N_k^r] ∋ σ N_k` for `k = 1..=M`.
    pub n_low: Vec<Interval>,
    pub d1: Interval,
    pub d2: Interval,
    pub d: Interval,
}

impl NEnclosures {
    pub fn compute(seg: &Segment, sigma: Interval) -> Result<Self> {
        let n_low = (1..=seg.m()).map(|k| n_low(seg, sigma, k)).collect::<Result<Vec<_>>>()?;
        let d1 = d1(seg)?;
        let d2 = d2(seg)?;
        Ok(NEnclosures { n_low, d1, d2, d: d1 + Interval::int(2) * d2 })
    }
}
