//! Machine-readable verification certificates.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::interval::Interval;
use crate::isolation::{verify_with, VerificationReport};
use crate::model::Problem;
use crate::nonlinearity::NEnclosures;
use crate::norms::{decay_constants, norm_bounds, Convention, DecayConstants, NormBounds};
use crate::reference::{ReferenceConfig, CONFIGS};
use crate::segment::{ModeBox, Segment};

pub const CERTIFICATE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemEcho {
    #[serde(with = "crate::serde_repr::interval")]
    pub beta: Interval,
    #[serde(with = "crate::serde_repr::interval")]
    pub sigma: Interval,
    /// Bounds on `ε f_k(t)` for `k = 1, 2, …`.
    #[serde(with = "crate::serde_repr::interval_vec")]
    pub forcing: Vec<Interval>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxEcho {
    #[serde(with = "crate::serde_repr::interval")]
    pub l: Interval,
    #[serde(with = "crate::serde_repr::interval")]
    pub r: Interval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentEcho {
    #[serde(rename = "M")]
    pub m: usize,
    pub s: u32,
    #[serde(rename = "C", with = "crate::serde_repr::interval")]
    pub c: Interval,
    pub boxes: Vec<BoxEcho>,
}

impl SegmentEcho {
    pub fn from_segment(seg: &Segment) -> Self {
        SegmentEcho {
            m: seg.m(),
            s: seg.s,
            c: seg.c,
            boxes: seg.boxes.iter().map(|b| BoxEcho { l: b.l, r: b.r }).collect(),
        }
    }

    pub fn to_segment(&self) -> Result<Segment> {
        Segment::new(self.s, self.c, self.boxes.iter().map(|b| ModeBox::new(b.l, b.r)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnclosureEcho {
    #[serde(with = "crate::serde_repr::interval_vec")]
    pub n_low: Vec<Interval>,
    #[serde(with = "crate::serde_repr::interval")]
    pub d1: Interval,
    #[serde(with = "crate::serde_repr::interval")]
    pub d2: Interval,
    #[serde(with = "crate::serde_repr::interval")]
    pub d: Interval,
}

impl From<&NEnclosures> for EnclosureEcho {
    fn from(e: &NEnclosures) -> Self {
        EnclosureEcho { n_low: e.n_low.clone(), d1: e.d1, d2: e.d2, d: e.d }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Norms {
    pub table: NormBounds,
    pub parseval: NormBounds,
}

/// Relative differences `computed / published − 1`, informational only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceComparison {
    pub configuration: String,
    #[serde(with = "crate::serde_repr::float")]
    pub u1_r: f64,
    #[serde(rename = "C", with = "crate::serde_repr::float")]
    pub c: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub norms: Option<NormDeltas>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormDeltas {
    #[serde(with = "crate::serde_repr::float")]
    pub l2_u: f64,
    #[serde(with = "crate::serde_repr::float")]
    pub c0_u: f64,
    #[serde(with = "crate::serde_repr::float")]
    pub l2_ut: f64,
    #[serde(with = "crate::serde_repr::float")]
    pub c0_ut: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Toolchain {
    pub package: String,
    pub version: String,
    pub arithmetic: String,
}

impl Toolchain {
    fn current() -> Self {
        Toolchain {
            package: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            arithmetic: "binary64 endpoints, outward rounding by error-free transforms".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub passed: bool,
    pub problem: ProblemEcho,
    pub segment: SegmentEcho,
    pub enclosures: EnclosureEcho,
    pub report: VerificationReport,
    /// Present only for passing certificates.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub norms: Option<Norms>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decay: Option<DecayConstants>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reference: Option<ReferenceComparison>,
    pub toolchain: Toolchain,
}

fn rel(computed: f64, published: f64) -> f64 {
    computed / published - 1.0
}

/// The built-in configuration with exactly this problem, if any.
pub fn matching_reference(problem: &Problem) -> Option<&'static ReferenceConfig> {
    CONFIGS.iter().find(|c| c.problem().map(|p| &p == problem).unwrap_or(false))
}

/// Verifies `seg` and, if it passes, attaches norm and decay bounds.
pub fn build_certificate(problem: &Problem, seg: &Segment) -> Result<Certificate> {
    let (report, enclosures) = verify_with(seg, problem)?;
    let passed = report.passed;

    let (norms, decay) = if passed {
        let norms = Norms {
            table: norm_bounds(seg, problem, Convention::Table)?,
            parseval: norm_bounds(seg, problem, Convention::Parseval)?,
        };
        // For s > 6 the tail C/k^s is also a C/k^6 tail.
        let six = Segment { s: 6, ..seg.clone() };
        (Some(norms), Some(decay_constants(&six, problem)?))
    } else {
        (None, None)
    };

    let reference = matching_reference(problem).map(|cfg| ReferenceComparison {
        configuration: cfg.label(),
        u1_r: rel(seg.boxes[0].r.hi(), cfg.published_u1()),
        c: rel(seg.c.hi(), cfg.published_c()),
        norms: norms.as_ref().map(|n| NormDeltas {
            l2_u: rel(n.table.l2_u.hi(), cfg.norms.l2_u),
            c0_u: rel(n.table.c0_u.hi(), cfg.norms.c0_u),
            l2_ut: rel(n.table.l2_ut.hi(), cfg.norms.l2_ut),
            c0_ut: rel(n.table.c0_ut.hi(), cfg.norms.c0_ut),
        }),
    });

    Ok(Certificate {
        schema_version: CERTIFICATE_SCHEMA_VERSION,
        passed,
        problem: ProblemEcho { beta: problem.beta, sigma: problem.sigma, forcing: problem.forcing.bounds().to_vec() },
        segment: SegmentEcho::from_segment(seg),
        enclosures: EnclosureEcho::from(&enclosures),
        report,
        norms,
        decay,
        reference,
        toolchain: Toolchain::current(),
    })
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::error::Error::Config(format!("certificate: {e}")))
    }

    /// Short human-readable summary.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let verdict = if self.passed { "CERTIFIED" } else { "NOT CERTIFIED" };
        let _ = writeln!(out, "{verdict}");
        let _ = writeln!(out, "beta = {}  sigma = {}", self.problem.beta, self.problem.sigma);
        let _ = writeln!(out, "M = {}  s = {}  C = {}", self.segment.m, self.segment.s, self.segment.c);
        for (k, b) in self.segment.boxes.iter().enumerate() {
            let _ = writeln!(out, "  u_{}: [{:e}, {:e}]", k + 1, b.l.lo(), b.r.hi());
        }
        let h = &self.report.high_mode;
        let _ = writeln!(out, "high modes: C = {:e} > {:e}  margin {:e}", h.lhs.lo(), h.rhs.hi(), h.margin);
        for r in &self.report.low_modes {
            let _ = writeln!(
                out,
                "low mode {}: {}  margins {:e} / {:e}",
                r.k,
                if r.passed { "ok" } else { "FAIL" },
                r.upper_margin,
                r.lower_margin
            );
        }
        if let Some(n) = &self.norms {
            let t = &n.table;
            let _ = writeln!(
                out,
                "norms (table): L2(u) <= {:.8}  C0(u) <= {:.8}  L2(u_t) <= {:.8}  C0(u_t) <= {:.8}",
                t.l2_u.hi(),
                t.c0_u.hi(),
                t.l2_ut.hi(),
                t.c0_ut.hi()
            );
        }
        if let Some(d) = &self.decay {
            let _ = writeln!(out, "decay: |u_k| <= {:e}/k^6, |v_k| <= {:e}/k^4", d.c_u, d.c_v);
        }
        for d in &self.report.diagnostics {
            let _ = writeln!(out, "! {d}");
        }
        out
    }
}
