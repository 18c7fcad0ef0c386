//! Candidate isolating segments: `M` explicit low-mode boxes plus a power-law
//! tail.
//!
//! For `k ≤ M` both diagonal variables satisfy `u_k^± ∈ [u_k^l, u_k^r]` (the
//! same box is shared by the two signs); for `k > M`, `|u_k^±| ≤ C / k^s`.
//! Box faces and `C` are stored as intervals so that decimal inputs keep
//! their exact values; enclosures use the outermost reading and isolation
//! checks the innermost.

use crate::error::{Error, Result};
use crate::interval::Interval;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeBox {
    /// Lower face `u_k^l`.
    pub l: Interval,
    /// Upper face `u_k^r`.
    pub r: Interval,
}

impl ModeBox {
    pub fn new(l: Interval, r: Interval) -> Self {
        ModeBox { l, r }
    }

    /// `[-r, r]`.
    pub fn symmetric(r: f64) -> Self {
        ModeBox { l: Interval::point(-r), r: Interval::point(r) }
    }

    /// Outermost reading of the box.
    pub fn hull(&self) -> Interval {
        Interval::new(self.l.lo(), self.r.hi()).unwrap_or(Interval::ZERO)
    }

    pub fn mag(&self) -> f64 {
        self.l.mag().max(self.r.mag())
    }

    pub fn is_subset(&self, other: &ModeBox) -> bool {
        other.l.lo() <= self.l.lo() && self.r.hi() <= other.r.hi()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    /// Tail exponent `s`.
    pub s: u32,
    /// Tail amplitude `C`.
    pub c: Interval,
    /// Boxes for modes `1..=M`, index 0 holding mode 1.
    pub boxes: Vec<ModeBox>,
}

impl Segment {
    /// Minimal tail exponent accepted while refining.
    pub const MIN_REFINE_EXPONENT: u32 = 2;
    /// Minimal tail exponent for a certified segment.
    pub const MIN_CERTIFIED_EXPONENT: u32 = 6;

    pub fn new(s: u32, c: Interval, boxes: Vec<ModeBox>) -> Result<Self> {
        let seg = Segment { s, c, boxes };
        seg.validate()?;
        Ok(seg)
    }

    /// The segment with all boxes and the tail collapsed to zero. It does not
    /// pass [`Segment::validate`] but is a valid argument for every enclosure.
    pub fn zero(m: usize, s: u32) -> Self {
        Segment { s, c: Interval::ZERO, boxes: vec![ModeBox::new(Interval::ZERO, Interval::ZERO); m] }
    }

    /// Structural invariants: `M ≥ 1`, `s ≥ 2`, `C > 0` and nonempty open boxes.
    /// The tail family `C/k^s` with `s ≥ 2` contains zero in every mode and is
    /// square summable, so nothing else needs checking here.
    pub fn validate(&self) -> Result<()> {
        if self.boxes.is_empty() {
            return Err(Error::InvalidSegment("at least one explicit mode is required".into()));
        }
        if self.s < Self::MIN_REFINE_EXPONENT {
            return Err(Error::InvalidSegment(format!(
                "tail exponent s = {} is below {}",
                self.s,
                Self::MIN_REFINE_EXPONENT
            )));
        }
        if self.c.lo() <= 0.0 {
            return Err(Error::InvalidSegment(format!("tail amplitude C = {} must be positive", self.c)));
        }
        for (i, b) in self.boxes.iter().enumerate() {
            if !b.l.strictly_less(&b.r) {
                return Err(Error::InvalidSegment(format!(
                    "box {} has lower face {} not strictly below upper face {}",
                    i + 1,
                    b.l,
                    b.r
                )));
            }
        }
        Ok(())
    }

    /// Number of explicit modes `M`.
    pub fn m(&self) -> usize {
        self.boxes.len()
    }

    pub fn mode_box(&self, k: usize) -> Option<&ModeBox> {
        k.checked_sub(1).and_then(|i| self.boxes.get(i))
    }

    /// `[hi(C), hi(C)]`, the conservative tail amplitude.
    pub fn c_upper(&self) -> Interval {
        Interval::point(self.c.hi())
    }

    /// Enclosure of `C / k^s` using `hi(C)`.
    pub fn tail_radius(&self, k: usize) -> Interval {
        self.c_upper().checked_div(&Interval::int(k as i64).pow_int(self.s)).expect("k >= 1")
    }

    /// Enclosure of the physical coefficient `u_k = u_k^+ + u_k^-` over the
    /// segment.
    pub fn u_box(&self, k: usize) -> Interval {
        assert!(k >= 1, "mode index must be at least 1");
        match self.mode_box(k) {
            Some(b) => {
                let h = b.hull();
                Interval::new(2.0 * h.lo(), 2.0 * h.hi()).expect("finite box")
            }
            None => Interval::symmetric((self.tail_radius(k) * Interval::int(2)).hi()),
        }
    }

    /// Upper bound on `|u_k|` (returned as a point interval).
    pub fn abs_u(&self, k: usize) -> Interval {
        Interval::point(self.u_box(k).mag())
    }

    /// `Σ_{k=1}^{M} |u_k|`.
    pub fn sum_abs_u_low(&self) -> Interval {
        (1..=self.m()).map(|k| self.abs_u(k)).sum()
    }

    /// Inclusion of segments as sets: same `M` and `s`, every box and the
    /// tail of `self` inside those of `other`.
    pub fn is_subset(&self, other: &Segment) -> bool {
        self.m() == other.m()
            && self.s == other.s
            && self.c.hi() <= other.c.hi()
            && self.boxes.iter().zip(&other.boxes).all(|(a, b)| a.is_subset(b))
    }

    /// Multiplies every box face and `C` by `factor > 0`, rounding outward.
    pub fn scaled(&self, factor: Interval) -> Segment {
        let grow = |x: Interval| {
            let y = x * factor;
            if x.hi() <= 0.0 {
                Interval::point(y.lo())
            } else {
                Interval::point(y.hi())
            }
        };
        Segment {
            s: self.s,
            c: Interval::point((self.c * factor).hi()),
            boxes: self.boxes.iter().map(|b| ModeBox::new(Interval::point((b.l * factor).lo()), grow(b.r))).collect(),
        }
    }
}
