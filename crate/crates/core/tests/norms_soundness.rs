//! The emitted amplitude, velocity and norm bounds dominate floating-point
//! evaluations at sampled segment points.

mod common;

use std::f64::consts::PI;

use common::{lambda, physical, sample};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use segcert::norms::{decay_constants, norm_bounds, velocity_bound, Convention};
use segcert::reference::CONFIGS;
use segcert::refinement::{refine, RefineOptions};
use segcert::Interval;

const POINTS: usize = 1000;
const MODES: usize = 64;
/// Relative slack for rounding in the float evaluation itself.
const SLACK: f64 = 1.0 + 16.0 * f64::EPSILON;

#[test]
fn sampled_amplitudes_and_norms_stay_below_bounds() {
    for (i, cfg) in CONFIGS.iter().enumerate() {
        let problem = cfg.problem().unwrap();
        let (refined, _) = refine(&problem, 6, &RefineOptions::default()).unwrap();
        for seg in [cfg.published_segment().unwrap(), refined] {
            let table = norm_bounds(&seg, &problem, Convention::Table).unwrap();
            let parseval = norm_bounds(&seg, &problem, Convention::Parseval).unwrap();
            let vb: Vec<f64> = (1..=MODES).map(|k| velocity_bound(&seg, &problem, k).unwrap().hi()).collect();
            let beta = problem.beta.mid();
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
            for _ in 0..POINTS {
                let (plus, minus) = sample(&seg, MODES, &mut rng);
                let u = physical(&plus, &minus);
                let v: Vec<f64> = (1..=MODES).map(|k| lambda(k, beta) * (plus[k - 1] - minus[k - 1])).collect();
                for k in 1..=MODES {
                    assert!(u[k - 1].abs() <= seg.abs_u(k).hi() * SLACK, "{}: |u_{k}|", cfg.label());
                    assert!(
                        v[k - 1].abs() <= vb[k - 1] * SLACK,
                        "{}: |v_{k}| = {} > {}",
                        cfg.label(),
                        v[k - 1],
                        vb[k - 1]
                    );
                }
                let sum_u: f64 = u.iter().map(|x| x.abs()).sum();
                let sum_v: f64 = v.iter().map(|x| x.abs()).sum();
                let sq_u: f64 = u.iter().map(|x| x * x).sum();
                let sq_v: f64 = v.iter().map(|x| x * x).sum();
                assert!(sum_u <= table.c0_u.hi() * SLACK);
                assert!(sum_v <= table.c0_ut.hi() * SLACK);
                assert!((2.0 * PI * sq_u).sqrt() <= table.l2_u.hi() * SLACK);
                assert!((2.0 * PI * sq_v).sqrt() <= table.l2_ut.hi() * SLACK);
                // u(x) = Σ_k 2 u_k cos kx: sup ≤ 2Σ|u_k| and ‖u‖² = 2π Σ_k 2 u_k².
                assert!(2.0 * sum_v <= parseval.c0_ut.hi() * SLACK);
                assert!((4.0 * PI * sq_v).sqrt() <= parseval.l2_ut.hi() * SLACK);
            }
        }
    }
}

#[test]
fn parseval_is_root_two_times_table() {
    let root2 = Interval::int(2).sqrt().unwrap();
    for cfg in &CONFIGS {
        let problem = cfg.problem().unwrap();
        let seg = cfg.published_segment().unwrap();
        let t = norm_bounds(&seg, &problem, Convention::Table).unwrap();
        let p = norm_bounds(&seg, &problem, Convention::Parseval).unwrap();
        for (a, b) in [(t.l2_u, p.l2_u), (t.l2_ut, p.l2_ut)] {
            let ratio = b.hi() / a.hi();
            assert!((ratio - root2.mid()).abs() <= 4.0 * f64::EPSILON * root2.mid(), "{ratio}");
        }
        assert_eq!(p.c0_u.hi(), (t.c0_u * Interval::int(2)).hi());
    }
}

#[test]
fn decay_constants_dominate_every_mode() {
    for cfg in &CONFIGS {
        let problem = cfg.problem().unwrap();
        let seg = cfg.published_segment().unwrap();
        let dc = decay_constants(&seg, &problem).unwrap();
        for k in 1..=256usize {
            let k2 = (k * k) as f64;
            let u = seg.abs_u(k).hi() * k2 * k2 * k2;
            let v = velocity_bound(&seg, &problem, k).unwrap().hi() * k2 * k2;
            assert!(u <= dc.c_u * SLACK, "{} k={k}: {u} > {}", cfg.label(), dc.c_u);
            assert!(v <= dc.c_v * SLACK, "{} k={k}: {v} > {}", cfg.label(), dc.c_v);
        }
    }
}
