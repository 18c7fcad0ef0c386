//! The six published configurations (σ = 3, M = 6) with their printed
//! segment parameters and norm bounds.

use crate::error::Result;
use crate::interval::Interval;
use crate::model::{family_forcing, ForcingFamily, Problem};
use crate::segment::{ModeBox, Segment};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedNorms {
    pub l2_u: f64,
    pub c0_u: f64,
    pub l2_ut: f64,
    pub c0_ut: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceConfig {
    pub family: ForcingFamily,
    pub beta: &'static str,
    /// Upper end of the symmetric range `[-ε̄, ε̄]`.
    pub eps: &'static str,
    /// Printed `u_k^r = −u_k^l`, five significant digits.
    pub boxes: [&'static str; 6],
    pub c: &'static str,
    pub norms: PublishedNorms,
}

pub const SIGMA: &str = "3";
pub const M: usize = 6;

pub const CONFIGS: [ReferenceConfig; 6] = [
    ReferenceConfig {
        family: ForcingFamily::A,
        beta: "1.5",
        eps: "0.05",
        boxes: ["0.05743", "0.004018", "0.00022427", "1.1242e-5", "5.7862e-7", "5.5904e-7"],
        c: "4.6941",
        norms: PublishedNorms { l2_u: 0.28862115, c0_u: 0.12440683, l2_ut: 0.24610779, c0_ut: 0.2143523 },
    },
    ReferenceConfig {
        family: ForcingFamily::A,
        beta: "1.75",
        eps: "0.1",
        boxes: ["0.082489", "0.0069984", "0.0004798", "2.9597e-5", "1.9415e-6", "1.9328e-6"],
        c: "13.039",
        norms: PublishedNorms { l2_u: 0.41504192, c0_u: 0.1820825, l2_ut: 0.39340084, c0_ut: 0.42461205 },
    },
    ReferenceConfig {
        family: ForcingFamily::A,
        beta: "2.5",
        eps: "0.3",
        boxes: ["0.16777", "0.020237", "0.0019934", "0.00017727", "1.8646e-5", "2.1631e-5"],
        c: "100.64",
        norms: PublishedNorms { l2_u: 0.84724825, c0_u: 0.38676747, l2_ut: 0.96839709, c0_ut: 1.4795576 },
    },
    ReferenceConfig {
        family: ForcingFamily::B,
        beta: "1.5",
        eps: "0.05",
        boxes: ["0.059242", "0.0055667", "0.00054628", "9.3307e-5", "2.9174e-6", "7.7255e-7"],
        c: "4.8878",
        norms: PublishedNorms { l2_u: 0.29831987, c0_u: 0.13194161, l2_ut: 0.25703095, c0_ut: 0.24099758 },
    },
    ReferenceConfig {
        family: ForcingFamily::B,
        beta: "1.75",
        eps: "0.1",
        boxes: ["0.085611", "0.0097091", "0.0010739", "0.000179", "7.6705e-6", "2.596e-6"],
        c: "13.613",
        norms: PublishedNorms { l2_u: 0.43198386, c0_u: 0.19524766, l2_ut: 0.41478653, c0_ut: 0.47720834 },
    },
    ReferenceConfig {
        family: ForcingFamily::B,
        beta: "2.5",
        eps: "0.3",
        boxes: ["0.17515", "0.026475", "0.0035043", "0.00055121", "4.3434e-5", "2.6004e-5"],
        c: "102.99",
        norms: PublishedNorms { l2_u: 0.88825406, c0_u: 0.41784158, l2_ut: 1.0309512, c0_ut: 1.637095 },
    },
];

fn dec(s: &str) -> Interval {
    Interval::from_decimal(s).expect("valid built-in literal")
}

impl ReferenceConfig {
    pub fn label(&self) -> String {
        format!("beta={} family {} eps=±{}", self.beta, self.family.label(), self.eps)
    }

    pub fn epsilon(&self) -> Interval {
        let e = dec(self.eps);
        Interval::new(-e.hi(), e.hi()).expect("ordered")
    }

    pub fn problem(&self) -> Result<Problem> {
        Problem::new(dec(self.beta), dec(SIGMA), family_forcing(self.family, self.epsilon()))
    }

    /// The printed segment (symmetric boxes, `s = 6`).
    pub fn published_segment(&self) -> Result<Segment> {
        let boxes = self
            .boxes
            .iter()
            .map(|r| {
                let r = dec(r);
                ModeBox::new(-r, r)
            })
            .collect();
        Segment::new(6, dec(self.c), boxes)
    }

    pub fn published_u1(&self) -> f64 {
        self.boxes[0].parse().expect("valid literal")
    }

    pub fn published_c(&self) -> f64 {
        self.c.parse().expect("valid literal")
    }
}
