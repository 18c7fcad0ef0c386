//! Non-rigorous floating-point tools: the Galerkin vector field, an RK4
//! integrator and a random sampler of the segment faces.
//!
//! Nothing here is used to certify anything. The sampler is a fast
//! necessary-condition check: if a verified segment shows a wrong sign at a
//! sampled face point, the verifier is broken.

use std::f64::consts::PI;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DiagPoint, ForcingFamily, Problem};
use crate::segment::Segment;

/// `f_k(t) = center + amplitude · cos(2πt/τ + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wave {
    pub center: f64,
    pub amplitude: f64,
    pub phase: f64,
}

impl Wave {
    pub fn cosine() -> Self {
        Wave { center: 0.0, amplitude: 1.0, phase: 0.0 }
    }
}

/// Concrete time-dependent forcing coefficients `f_k(t)` for `k = 1..=len`.
#[derive(Debug, Clone, PartialEq)]
pub struct ForcingInstance {
    pub tau: f64,
    pub waves: Vec<Wave>,
}

impl ForcingInstance {
    /// `f_k(t) = cos(2πt/τ)` on the first `modes` modes.
    pub fn cosine(modes: usize, tau: f64) -> Self {
        ForcingInstance { tau, waves: vec![Wave::cosine(); modes] }
    }

    pub fn family(family: ForcingFamily, tau: f64) -> Self {
        Self::cosine(family.modes(), tau)
    }

    /// Oscillates across each bound of `problem.forcing`; use with `eps = 1`.
    pub fn spanning(problem: &Problem, tau: f64) -> Self {
        let waves =
            problem.forcing.bounds().iter().map(|b| Wave { center: b.mid(), amplitude: b.rad(), phase: 0.0 }).collect();
        ForcingInstance { tau, waves }
    }

    pub fn value(&self, k: usize, t: f64) -> f64 {
        match k.checked_sub(1).and_then(|i| self.waves.get(i)) {
            Some(w) => w.center + w.amplitude * (2.0 * PI * t / self.tau + w.phase).cos(),
            None => 0.0,
        }
    }

    /// Whether `|f_k(t)| ≤ 1` for all `t` (checked from the wave parameters).
    pub fn is_bounded_by_one(&self) -> bool {
        self.waves.iter().all(|w| w.center.abs() + w.amplitude.abs() <= 1.0)
    }
}

/// Scalar parameters read off the interval problem (midpoints).
#[derive(Debug, Clone, Copy, PartialEq)]
struct Params {
    beta: f64,
    sigma: f64,
}

impl Params {
    fn of(problem: &Problem) -> Self {
        Params { beta: problem.beta.mid(), sigma: problem.sigma.mid() }
    }

    fn lambda(&self, k: usize) -> f64 {
        let k2 = (k * k) as f64;
        (k2 * (self.beta * k2 - 1.0)).sqrt()
    }
}

/// `N_{k,n}(u) = −2 Σ_{k1=1}^{n−k} u_{k1+k} u_{k1} − Σ_{k1=1}^{k−1} u_{k1} u_{k−k1}`
/// for `k = 1..=n`, where `u[i]` is the physical coefficient of mode `i + 1`.
pub fn galerkin_nonlinearity(u: &[f64]) -> Vec<f64> {
    let n = u.len();
    let at = |k: usize| u[k - 1];
    (1..=n)
        .map(|k| {
            let is: f64 = (1..=n - k).map(|k1| at(k1 + k) * at(k1)).sum();
            let fs: f64 = (1..k).map(|k1| at(k1) * at(k - k1)).sum();
            -2.0 * is - fs
        })
        .collect()
}

/// Right-hand side of the `n`-mode Galerkin system in diagonal variables,
/// `n = point.modes()`, with forcing `eps · f_k(t)`.
pub fn vector_field(t: f64, point: &DiagPoint, problem: &Problem, eps: f64, instance: &ForcingInstance) -> DiagPoint {
    let p = Params::of(problem);
    let u = point.physical();
    let nl = galerkin_nonlinearity(&u);
    let n = point.modes();
    let mut plus = Vec::with_capacity(n);
    let mut minus = Vec::with_capacity(n);
    for k in 1..=n {
        let lam = p.lambda(k);
        let push = (p.sigma * (k * k) as f64 * nl[k - 1] + eps * instance.value(k, t)) / (2.0 * lam);
        plus.push(lam * point.plus[k - 1] + push);
        minus.push(-lam * point.minus[k - 1] - push);
    }
    DiagPoint { plus, minus }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DiagPoint>,
    /// Time of the first non-finite state, if the run blew up.
    pub blow_up: Option<f64>,
}

impl Trajectory {
    /// CSV with columns `t, u_1+, u_1-, u_2+, u_2-, …`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let n = self.states.first().map_or(0, DiagPoint::modes);
        let mut header = vec!["t".to_string()];
        for k in 1..=n {
            header.push(format!("u_{k}+"));
            header.push(format!("u_{k}-"));
        }
        writeln!(w, "{}", header.join(","))?;
        for (t, s) in self.times.iter().zip(&self.states) {
            let mut row = vec![format!("{t:?}")];
            for (p, m) in s.plus.iter().zip(&s.minus) {
                row.push(format!("{p:?}"));
                row.push(format!("{m:?}"));
            }
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

fn axpy(a: f64, x: &DiagPoint, y: &DiagPoint) -> DiagPoint {
    DiagPoint {
        plus: x.plus.iter().zip(&y.plus).map(|(x, y)| y + a * x).collect(),
        minus: x.minus.iter().zip(&y.minus).map(|(x, y)| y + a * x).collect(),
    }
}

/// Classical RK4 with `steps` equal steps from `t0` to `t1`. Stops at the
/// first non-finite state, which is expected for the unstable high modes
/// over long horizons.
pub fn rk4_integrate(
    start: &DiagPoint,
    t0: f64,
    t1: f64,
    steps: usize,
    problem: &Problem,
    eps: f64,
    instance: &ForcingInstance,
) -> Result<Trajectory> {
    if steps == 0 {
        return Err(Error::Argument("at least one step is required".into()));
    }
    let h = (t1 - t0) / steps as f64;
    let f = |t: f64, x: &DiagPoint| vector_field(t, x, problem, eps, instance);
    let mut times = vec![t0];
    let mut states = vec![start.clone()];
    let mut x = start.clone();
    for i in 0..steps {
        let t = t0 + i as f64 * h;
        let k1 = f(t, &x);
        let k2 = f(t + h / 2.0, &axpy(h / 2.0, &k1, &x));
        let k3 = f(t + h / 2.0, &axpy(h / 2.0, &k2, &x));
        let k4 = f(t + h, &axpy(h, &k3, &x));
        let mut next = axpy(h / 6.0, &k1, &x);
        next = axpy(h / 3.0, &k2, &next);
        next = axpy(h / 3.0, &k3, &next);
        next = axpy(h / 6.0, &k4, &next);
        let tn = t0 + (i + 1) as f64 * h;
        if !next.is_finite() {
            return Ok(Trajectory { times, states, blow_up: Some(tn) });
        }
        x = next;
        times.push(tn);
        states.push(x.clone());
    }
    Ok(Trajectory { times, states, blow_up: None })
}

/// Bounds `[lo, hi]` of `u_k^±` in the `n`-mode projection of the segment.
fn coordinate_range(seg: &Segment, k: usize) -> (f64, f64) {
    match seg.mode_box(k) {
        Some(b) => (b.l.hi(), b.r.lo()),
        None => {
            let r = seg.c.lo() / (k as f64).powi(seg.s as i32);
            (-r, r)
        }
    }
}

/// A coordinate in `[lo, hi]`, at an endpoint with probability 1/4.
fn draw<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    match rng.random_range(0..8u8) {
        0 => lo,
        1 => hi,
        _ => lo + (hi - lo) * rng.random::<f64>(),
    }
}

/// A random point of the `n`-mode projection of the segment.
pub fn sample_point<R: Rng>(seg: &Segment, n: usize, rng: &mut R) -> DiagPoint {
    let mut p = DiagPoint::zeros(n);
    for k in 1..=n {
        let (lo, hi) = coordinate_range(seg, k);
        p.plus[k - 1] = draw(rng, lo, hi);
        p.minus[k - 1] = draw(rng, lo, hi);
    }
    p
}

/// Face families: `u^+` at its upper/lower face and `u^-` at its
/// upper/lower face, for low modes (`k ≤ M`) and tail modes (`M < k ≤ n`).
pub const FACE_FAMILIES: [&str; 8] = [
    "low u+ upper",
    "low u+ lower",
    "low u- upper",
    "low u- lower",
    "high u+ upper",
    "high u+ lower",
    "high u- upper",
    "high u- lower",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceMargin {
    pub family: String,
    pub samples: usize,
    /// Smallest outward-signed derivative seen: positive means the vector
    /// field crossed the face in the required direction at every sample.
    #[serde(with = "crate::serde_repr::float")]
    pub min_margin: f64,
    pub worst_mode: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub seed: u64,
    pub modes: usize,
    pub faces: Vec<FaceMargin>,
}

impl SampleReport {
    pub fn all_positive(&self) -> bool {
        self.faces.iter().all(|f| f.samples == 0 || f.min_margin > 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleOptions {
    /// Galerkin dimension `n ≥ M`.
    pub modes: usize,
    pub samples_per_family: usize,
    pub seed: u64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { modes: 24, samples_per_family: 1000, seed: 0 }
    }
}

/// Samples points on every face family of the `n`-mode segment together with
/// a random time in one period and records the signed crossing margins.
pub fn boundary_sample(
    seg: &Segment,
    problem: &Problem,
    eps: f64,
    instance: &ForcingInstance,
    opts: &SampleOptions,
) -> Result<SampleReport> {
    let m = seg.m();
    let n = opts.modes;
    if n < m {
        return Err(Error::Argument(format!("sampling dimension n = {n} is below M = {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut faces = Vec::with_capacity(FACE_FAMILIES.len());
    for (fi, name) in FACE_FAMILIES.iter().enumerate() {
        let high = fi >= 4;
        let modes: Vec<usize> = if high { (m + 1..=n).collect() } else { (1..=m).collect() };
        let on_plus = fi % 4 < 2;
        let upper = fi % 2 == 0;
        let mut record = FaceMargin { family: name.to_string(), samples: 0, min_margin: f64::INFINITY, worst_mode: 0 };
        if modes.is_empty() {
            faces.push(record);
            continue;
        }
        for _ in 0..opts.samples_per_family {
            let k = modes[rng.random_range(0..modes.len())];
            let mut p = sample_point(seg, n, &mut rng);
            let (lo, hi) = coordinate_range(seg, k);
            let face = if upper { hi } else { lo };
            if on_plus {
                p.plus[k - 1] = face;
            } else {
                p.minus[k - 1] = face;
            }
            let t = instance.tau * rng.random::<f64>();
            let d = vector_field(t, &p, problem, eps, instance);
            let deriv = if on_plus { d.plus[k - 1] } else { d.minus[k - 1] };
            // u+ leaves through both of its faces, u- enters through both.
            let outward = if upper { deriv } else { -deriv };
            let margin = if on_plus { outward } else { -outward };
            record.samples += 1;
            if margin < record.min_margin {
                record.min_margin = margin;
                record.worst_mode = k;
            }
        }
        faces.push(record);
    }
    Ok(SampleReport { seed: opts.seed, modes: n, faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::model::{family_forcing, Forcing};
    use crate::reference::CONFIGS;
    use crate::segment::ModeBox;

    fn problem(sigma: f64) -> Problem {
        Problem::new(Interval::point(1.5), Interval::point(sigma), Forcing::unforced()).unwrap()
    }

    #[test]
    fn zero_is_an_equilibrium() {
        let inst = ForcingInstance::cosine(1, 1.0);
        let d = vector_field(0.3, &DiagPoint::zeros(8), &problem(3.0), 0.0, &inst);
        assert!(d.plus.iter().chain(&d.minus).all(|&x| x == 0.0));
    }

    #[test]
    fn linear_part_only() {
        let inst = ForcingInstance::cosine(1, 1.0);
        let mut p = DiagPoint::zeros(4);
        p.plus[0] = 0.2;
        let d = vector_field(0.0, &p, &problem(0.0), 0.0, &inst);
        assert!((d.plus[0] - 0.5f64.sqrt() * 0.2).abs() < 1e-15);
        assert_eq!(d.minus[0], 0.0);
    }

    #[test]
    fn convolution_by_hand() {
        // u = (1, 2, 3): N_1 = -2(u2 u1 + u3 u2) = -16, N_2 = -2 u3 u1 - u1² = -7,
        // N_3 = -(u1 u2 + u2 u1) = -4.
        assert_eq!(galerkin_nonlinearity(&[1.0, 2.0, 3.0]), vec![-16.0, -7.0, -4.0]);
    }

    #[test]
    fn integrator_keeps_zero() {
        let inst = ForcingInstance::cosine(1, 1.0);
        let tr = rk4_integrate(&DiagPoint::zeros(6), 0.0, 1.0, 100, &problem(3.0), 0.0, &inst).unwrap();
        assert!(tr.blow_up.is_none());
        assert!(tr.states.last().unwrap().plus.iter().all(|&x| x == 0.0));
        let mut csv = Vec::new();
        tr.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("t,u_1+,u_1-,"));
        assert_eq!(text.lines().count(), 102);
    }

    #[test]
    fn blow_up_is_reported() {
        let inst = ForcingInstance::cosine(1, 1.0);
        let mut p = DiagPoint::zeros(16);
        p.plus[15] = 1.0;
        let tr = rk4_integrate(&p, 0.0, 100.0, 200, &problem(3.0), 0.0, &inst).unwrap();
        assert!(tr.blow_up.is_some());
    }

    #[test]
    fn published_segment_has_positive_margins() {
        let cfg = &CONFIGS[0];
        let p = cfg.problem().unwrap();
        let seg = cfg.published_segment().unwrap();
        let inst = ForcingInstance::family(cfg.family, 1.0);
        let opts = SampleOptions { samples_per_family: 200, ..SampleOptions::default() };
        let rep = boundary_sample(&seg, &p, 0.05, &inst, &opts).unwrap();
        assert!(rep.all_positive(), "{rep:?}");
        assert_eq!(rep.faces.len(), 8);
    }

    #[test]
    fn shrunk_box_shows_negative_margin() {
        let cfg = &CONFIGS[0];
        let p = cfg.problem().unwrap();
        let mut seg = cfg.published_segment().unwrap();
        seg.boxes[0] = ModeBox::symmetric(0.01);
        let inst = ForcingInstance::family(cfg.family, 1.0);
        let opts = SampleOptions { samples_per_family: 400, ..SampleOptions::default() };
        let rep = boundary_sample(&seg, &p, 0.05, &inst, &opts).unwrap();
        assert!(!rep.all_positive());
        assert!(rep.faces[..4].iter().any(|f| f.min_margin < 0.0 && f.worst_mode == 1));
    }

    #[test]
    fn spanning_instance_covers_bounds() {
        let p = Problem::new(
            Interval::point(1.5),
            Interval::point(3.0),
            family_forcing(ForcingFamily::B, Interval::symmetric(0.3)),
        )
        .unwrap();
        let inst = ForcingInstance::spanning(&p, 2.0);
        assert_eq!(inst.waves.len(), 4);
        assert!((inst.value(2, 0.0) - 0.3).abs() < 1e-15);
        assert!((inst.value(2, 1.0) + 0.3).abs() < 1e-15);
        assert_eq!(inst.value(5, 0.0), 0.0);
        assert!(ForcingInstance::cosine(2, 1.0).is_bounded_by_one());
    }
}
