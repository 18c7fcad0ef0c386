//! JSON run configuration.
//!
//! Every real number is a decimal string and is converted with
//! [`Interval::from_decimal`], so a literal such as `"0.1"` becomes the
//! tightest enclosure of one tenth. Unknown keys are rejected.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "beta": "1.5", "sigma": "3", "epsilon": ["-0.05", "0.05"],
//!   "forcing": {"family": "A"},
//!   "M": 6,
//!   "segment": {"s": 6, "C": "4.6941", "boxes": [{"lo": "-0.05743", "hi": "0.05743"}]},
//!   "refine": {"iterations": 2, "c_tilde": "1", "floor": "1e-8", "inflation": "1.001"}
//! }
//! ```
//!
//! With `forcing.modes`, each `[lo, hi]` bounds `f_k(t)` and is multiplied by
//! `epsilon`; `{"family": "A"}` is the same as a single mode `k = 1` with
//! bounds `[-1, 1]`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::{family_forcing, Forcing, ForcingFamily, Problem};
use crate::refinement::RefineOptions;
use crate::segment::{ModeBox, Segment};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub beta: String,
    pub sigma: String,
    pub epsilon: [String; 2],
    pub forcing: ForcingSpec,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segment: Option<SegmentSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refine: Option<RefineSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForcingSpec {
    Family(ForcingFamily),
    Modes(Vec<ModeSpec>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub k: usize,
    pub lo: String,
    pub hi: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentSpec {
    pub s: u32,
    #[serde(rename = "C")]
    pub c: String,
    pub boxes: Vec<BoxSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxSpec {
    pub lo: String,
    pub hi: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefineSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_tilde: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub floor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inflation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warm_start: Option<u32>,
}

/// A parsed and validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: Problem,
    pub epsilon: Interval,
    pub family: Option<ForcingFamily>,
    pub m: usize,
    pub segment: Option<Segment>,
    pub refine: RefineOptions,
}

fn real(key: &str, text: &str) -> Result<Interval> {
    Interval::from_decimal(text).map_err(|e| Error::Config(format!("{key}: {e}")))
}

fn ordered(key: &str, lo: &str, hi: &str) -> Result<Interval> {
    let a = real(key, lo)?;
    let b = real(key, hi)?;
    Interval::new(a.lo(), b.hi())
        .map_err(|_| Error::Config(format!("{key}: lower endpoint {lo} exceeds upper endpoint {hi}")))
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if path.is_empty() || path == "." {
                Error::Config(inner.to_string())
            } else {
                Error::Config(format!("{path}: {inner}"))
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn into_run_config(self) -> Result<RunConfig> {
        if let Some(v) = self.schema_version {
            if v != SCHEMA_VERSION {
                return Err(Error::Config(format!(
                    "schema_version: unsupported version {v}, expected {SCHEMA_VERSION}"
                )));
            }
        }
        let beta = real("beta", &self.beta)?;
        let sigma = real("sigma", &self.sigma)?;
        let epsilon = ordered("epsilon", &self.epsilon[0], &self.epsilon[1])?;
        if self.m == 0 {
            return Err(Error::Config("M: must be at least 1".into()));
        }

        let (forcing, family) = match &self.forcing {
            ForcingSpec::Family(f) => (family_forcing(*f, epsilon), Some(*f)),
            ForcingSpec::Modes(modes) => {
                let top = modes.iter().map(|m| m.k).max().unwrap_or(0);
                let mut bounds = vec![Interval::ZERO; top];
                let mut seen = vec![false; top];
                for (i, mode) in modes.iter().enumerate() {
                    let key = format!("forcing.modes[{i}]");
                    if mode.k == 0 {
                        return Err(Error::Config(format!("{key}.k: mode index must be at least 1")));
                    }
                    if std::mem::replace(&mut seen[mode.k - 1], true) {
                        return Err(Error::Config(format!("{key}.k: mode {} listed twice", mode.k)));
                    }
                    bounds[mode.k - 1] = ordered(&key, &mode.lo, &mode.hi)? * epsilon;
                }
                (Forcing::new(bounds), None)
            }
        };
        let problem = Problem::new(beta, sigma, forcing).map_err(|e| Error::Config(format!("beta: {e}")))?;

        let segment = match &self.segment {
            None => None,
            Some(spec) => {
                if spec.boxes.len() != self.m {
                    return Err(Error::Config(format!(
                        "segment.boxes: {} boxes given but M = {}",
                        spec.boxes.len(),
                        self.m
                    )));
                }
                let c = real("segment.C", &spec.c)?;
                let boxes = spec
                    .boxes
                    .iter()
                    .enumerate()
                    .map(|(i, b)| {
                        let key = format!("segment.boxes[{i}]");
                        Ok(ModeBox::new(real(&key, &b.lo)?, real(&key, &b.hi)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(Segment::new(spec.s, c, boxes).map_err(|e| Error::Config(format!("segment: {e}")))?)
            }
        };

        let mut refine = RefineOptions::default();
        if let Some(spec) = &self.refine {
            if let Some(n) = spec.iterations {
                refine.iterations = n;
            }
            if let Some(c) = &spec.c_tilde {
                refine.c_tilde = real("refine.c_tilde", c)?;
            }
            if let Some(f) = &spec.floor {
                refine.floor = real("refine.floor", f)?.hi();
            }
            if let Some(x) = &spec.inflation {
                refine.inflation = real("refine.inflation", x)?.hi();
            }
            if let Some(w) = spec.warm_start {
                refine.warm_start = w;
            }
            refine.validate().map_err(|e| Error::Config(format!("refine: {e}")))?;
        }

        Ok(RunConfig { problem, epsilon, family, m: self.m, segment, refine })
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    ConfigFile::parse(text)?.into_run_config()
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

impl ConfigFile {
    /// A config for one of the built-in configurations, optionally carrying
    /// its printed segment.
    pub fn from_reference(cfg: &crate::reference::ReferenceConfig, with_segment: bool) -> Self {
        ConfigFile {
            schema_version: Some(SCHEMA_VERSION),
            beta: cfg.beta.into(),
            sigma: crate::reference::SIGMA.into(),
            epsilon: [format!("-{}", cfg.eps), cfg.eps.into()],
            forcing: ForcingSpec::Family(cfg.family),
            m: crate::reference::M,
            segment: with_segment.then(|| SegmentSpec {
                s: 6,
                c: cfg.c.into(),
                boxes: cfg.boxes.iter().map(|r| BoxSpec { lo: format!("-{r}"), hi: (*r).into() }).collect(),
            }),
            refine: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::CONFIGS;

    const MINIMAL: &str =
        r#"{"beta": "1.5", "sigma": "3", "epsilon": ["-0.05", "0.05"], "forcing": {"family": "A"}, "M": 6}"#;

    #[test]
    fn minimal_config() {
        let rc = parse_config(MINIMAL).unwrap();
        assert_eq!(rc.m, 6);
        assert_eq!(rc.family, Some(ForcingFamily::A));
        assert!(rc.segment.is_none());
        assert_eq!(rc.refine, RefineOptions::default());
        assert_eq!(rc.problem.beta, Interval::point(1.5));
        assert!(rc.problem.forcing.bound(1).contains(0.05));
        assert!(rc.epsilon.contains(-0.05));
    }

    #[test]
    fn reversed_epsilon_is_rejected() {
        let text = MINIMAL.replace(r#"["-0.05", "0.05"]"#, r#"["0.05", "-0.05"]"#);
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("epsilon"), "{err}");
    }

    #[test]
    fn unknown_and_malformed_keys_are_named() {
        let text = MINIMAL.replace(r#""M": 6"#, r#""M": 6, "gamma": "1""#);
        assert!(parse_config(&text).unwrap_err().to_string().contains("gamma"));
        let text = MINIMAL.replace(r#""1.5""#, "1.5");
        assert!(parse_config(&text).unwrap_err().to_string().contains("beta"));
        let text = MINIMAL.replace(r#""3""#, r#""three""#);
        assert!(parse_config(&text).unwrap_err().to_string().contains("sigma"));
        let text = MINIMAL.replace(r#""family": "A""#, r#""family": "C""#);
        assert!(parse_config(&text).unwrap_err().to_string().contains("forcing"));
        let text = MINIMAL.replace(r#""beta": "1.5""#, r#""beta": "0.5""#);
        assert!(parse_config(&text).unwrap_err().to_string().contains("beta"));
    }

    #[test]
    fn literals_are_enclosed_exactly() {
        let text = MINIMAL.replace(r#""1.5""#, r#""1.1""#);
        let rc = parse_config(&text).unwrap();
        assert!(rc.problem.beta.lo() < rc.problem.beta.hi());
        assert!(rc.problem.beta.contains(1.1));
    }

    #[test]
    fn explicit_segment_and_modes() {
        for cfg in &CONFIGS {
            let file = ConfigFile::from_reference(cfg, true);
            let back = ConfigFile::parse(&file.to_json()).unwrap();
            assert_eq!(back, file);
            let rc = back.into_run_config().unwrap();
            assert_eq!(rc.segment.unwrap(), cfg.published_segment().unwrap());
            assert_eq!(rc.problem, cfg.problem().unwrap());
        }
        let text = r#"{"beta": "1.5", "sigma": "3", "epsilon": ["-0.1", "0.1"], "M": 6,
            "forcing": {"modes": [{"k": 2, "lo": "-1", "hi": "0.5"}]}}"#;
        let rc = parse_config(text).unwrap();
        assert_eq!(rc.problem.forcing.bound(1), Interval::ZERO);
        let b2 = rc.problem.forcing.bound(2);
        assert!(b2.contains(-0.1) && b2.contains(0.1) && b2.lo() > -0.1001);
    }

    #[test]
    fn segment_box_count_must_match() {
        let mut file = ConfigFile::from_reference(&CONFIGS[0], true);
        file.m = 5;
        assert!(file.into_run_config().unwrap_err().to_string().contains("segment.boxes"));
    }

    #[test]
    fn refine_overrides() {
        let text = MINIMAL.replace(
            r#""M": 6"#,
            r#""M": 6, "refine": {"iterations": 3, "c_tilde": "2", "floor": "1e-9", "inflation": "1.01"}"#,
        );
        let rc = parse_config(&text).unwrap();
        assert_eq!(rc.refine.iterations, 3);
        assert_eq!(rc.refine.c_tilde, Interval::point(2.0));
        let text = MINIMAL.replace(r#""M": 6"#, r#""M": 6, "refine": {"iterations": 0}"#);
        assert!(parse_config(&text).unwrap_err().to_string().contains("refine"));
    }
}
