//! Acceptance checks. Runs every criterion, prints one PASS/FAIL line for
//! each, and exits nonzero if any failed.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;

use common::{dense_posterior_mean, gp_config, law_of_sines_errors, random_control, random_pose, rng, signal_var};
use common::GroundTruth;
use planar_push::executor::execute;
use planar_push::harness::{gen_circle, sweep, to_csv, ExperimentConfig, ModelSetting, RunLog, SweepResult};
use planar_push::model::{learn_models, GpRegressor, ModelConfig, MotionModel};
use planar_push::mpc::{desired_motion, greedy_control, nearest_waypoint, plan, simulate_rollout, MpcConfig};
use planar_push::plant::{builtin_shape, builtin_shapes, Disturbance, Plant, PlantParams, TARGET_SHAPES};
use planar_push::se2::{distance, wrap_angle, DistanceWeights};
use planar_push::{Perturbation, Pose2};

const SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn maes(r: &SweepResult) -> Vec<f64> {
    r.runs.values().map(|l| l.mae_mm).collect()
}

fn close(a: &Pose2, b: &Pose2, tol: f64) -> bool {
    (a.x - b.x).abs() <= tol && (a.y - b.y).abs() <= tol && wrap_angle(a.theta - b.theta).abs() <= tol
}

fn within(limit: Duration, t: Instant) -> (bool, f64) {
    let s = t.elapsed().as_secs_f64();
    (s < limit.as_secs_f64(), s)
}

fn geometry() -> Outcome {
    let t = Instant::now();
    let mut r = rng(1);
    let w = DistanceWeights::default();
    let mut bad = 0;
    for _ in 0..1000 {
        let (a, b, c) = (random_pose(&mut r), random_pose(&mut r), random_pose(&mut r));
        let e = Pose2::identity();
        if !close(&a.compose(&b).compose(&c), &a.compose(&b.compose(&c)), 1e-10) {
            bad += 1;
        }
        if !close(&a.compose(&e), &a, 1e-12) || !close(&e.compose(&a), &a, 1e-12) {
            bad += 1;
        }
        if !close(&a.compose(&a.inverse()), &e, 1e-12) || !close(&a.compose(&a.relative_motion(&b)), &b, 1e-12) {
            bad += 1;
        }
        let ab = distance(&a, &b, &w);
        if ab < 0.0 || ab != distance(&b, &a, &w) || distance(&a, &c, &w) > ab + distance(&b, &c, &w) + 1e-12 {
            bad += 1;
        }
        let th: f64 = r.gen_range(-100.0..100.0);
        let once = wrap_angle(th);
        if wrap_angle(once) != once || !(once > -std::f64::consts::PI && once <= std::f64::consts::PI) {
            bad += 1;
        }
    }
    let (fast, s) = within(Duration::from_secs(1), t);
    outcome(bad == 0 && fast, format!("{bad} violations in 10^3 cases per law, {s:.3} s"))
}

fn gp_oracle() -> Outcome {
    let t = Instant::now();
    let mut worst_rel: f64 = 0.0;
    let mut worst_interp: f64 = 0.0;
    for seed in 0..20u64 {
        let mut r = rng(100 + seed);
        let n = r.gen_range(5..=60);
        let xs: Vec<Vec<f64>> = (0..n).map(|_| (0..3).map(|_| r.gen_range(-1.0..1.0)).collect()).collect();
        let ys: Vec<Vec<f64>> = (0..n).map(|_| (0..3).map(|_| r.gen_range(-0.05..0.05)).collect()).collect();
        let cfg = gp_config(3, 3, 0.5, 0.01);
        let gp = GpRegressor::fit(&xs, &ys, &cfg).unwrap();
        for q in xs.iter().take(10) {
            let got = gp.predict_mean(q);
            for d in 0..3 {
                let col: Vec<f64> = ys.iter().map(|y| y[d]).collect();
                let want = dense_posterior_mean(&xs, &col, &cfg.lengthscales, signal_var(&col, 1e-4), 1e-4, q);
                worst_rel = worst_rel.max((got[d] - want).abs() / want.abs().max(1e-12));
            }
        }
        // σₙ² = 1e-10 on a well-separated subset
        let m = n.min(15);
        let cfg = gp_config(3, 3, 0.3, 1e-5);
        let gp = GpRegressor::fit(&xs[..m], &ys[..m], &cfg).unwrap();
        let scale = ys[..m].iter().flatten().fold(0.0f64, |a, y| a.max(y.abs()));
        for (x, y) in xs[..m].iter().zip(&ys[..m]) {
            for (p, v) in gp.predict_mean(x).iter().zip(y) {
                worst_interp = worst_interp.max((p - v).abs() / scale);
            }
        }
    }
    let (fast, s) = within(Duration::from_secs(5), t);
    outcome(
        worst_rel < 1e-8 && worst_interp < 1e-5 && fast,
        format!("max relative error {worst_rel:.2e}, interpolation residual {worst_interp:.2e}, {s:.3} s"),
    )
}

fn law_of_sines() -> Outcome {
    let mut r = rng(3);
    let (mut worst_angle, mut worst_r): (f64, f64) = (0.0, 0.0);
    let mut degenerate = 0;
    for _ in 0..10_000 {
        let u = random_control(&mut r);
        let radius = r.gen_range(0.05..0.3);
        let lo = (radius * u.beta().sin().abs()).max(1e-4);
        let rr = r.gen_range(lo..=radius);
        match law_of_sines_errors(&u, radius, rr) {
            Some((a, d)) => {
                worst_angle = worst_angle.max(a);
                worst_r = worst_r.max(d.abs());
            }
            None => degenerate += 1,
        }
    }
    outcome(
        worst_angle < 1e-9 && worst_r < 1e-12 && degenerate == 0,
        format!("max angle {worst_angle:.2e} rad, max |‖P'‖ - r| {worst_r:.2e}, {degenerate} degenerate"),
    )
}

fn transfer_models(seed: u64) -> planar_push::model::TransitionModels {
    let s = builtin_shape("cylinder_x").unwrap();
    let p = PlantParams::for_shape(&s);
    let mut plant = Plant::new(s, p, Pose2::identity()).unwrap();
    learn_models(&mut plant, 10, ModelConfig::default(), &mut rng(seed)).unwrap()
}

fn greedy() -> Outcome {
    let m = transfer_models(4);
    let traj = gen_circle(0.15, 60).unwrap();
    let cfg = MpcConfig {
        rollouts: 0,
        ..MpcConfig::default()
    };
    let mut r = rng(5);
    let mut mismatches = 0;
    for _ in 0..100 {
        let x = Pose2::new(r.gen_range(-0.2..0.2), r.gen_range(-0.2..0.2), r.gen_range(-3.0..3.0));
        let j = nearest_waypoint(&x, &traj, &cfg.weights);
        let want = m.predict_inverse(&desired_motion(&x, &traj, j));
        let got = plan(&m, &x, &traj, &cfg, &mut rng(0));
        if got.alpha().to_bits() != want.alpha().to_bits() || got.beta().to_bits() != want.beta().to_bits() {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("{mismatches}/100 states differ"))
}

fn perfect_model() -> Outcome {
    let mut worst: f64 = 0.0;
    for shape in TARGET_SHAPES {
        let truth = GroundTruth::new(shape);
        let traj = gen_circle(0.15, 60).unwrap();
        let cfg = MpcConfig {
            horizon: 20,
            rollouts: 1,
            perturbation: Perturbation::ZERO,
            ..MpcConfig::default()
        };
        let x0 = traj.waypoints()[0];
        let ro = simulate_rollout(&truth, &x0, &traj, &cfg, &mut rng(0));
        let mut plant = truth.plant.clone();
        plant.reset_object(x0);
        for k in 1..=20 {
            let x = plant.object_pose();
            let u = greedy_control(&truth, &x, &traj, &cfg.weights);
            let y = execute(&mut plant, &u, &mut rng(0)).pose;
            let p = ro.poses[k];
            worst = worst
                .max((p.x - y.x).abs())
                .max((p.y - y.y).abs())
                .max(wrap_angle(p.theta - y.theta).abs());
        }
    }
    outcome(worst < 1e-9, format!("max rollout/execution deviation {worst:.2e} over L = 20"))
}

fn convergence() -> Outcome {
    let mut r = rng(6);
    let (mut dp_max, mut dt_max): (f64, f64) = (0.0, 0.0);
    for shape in builtin_shapes().into_values() {
        let coarse = PlantParams::for_shape(&shape);
        let mut fine = coarse.clone();
        fine.integration_step *= 0.5;
        for _ in 0..20 {
            let u = random_control(&mut r);
            let run = |p: &PlantParams| {
                let mut plant = Plant::new(shape.clone(), p.clone(), Pose2::identity()).unwrap();
                execute(&mut plant, &u, &mut rng(0)).pose
            };
            let (a, b) = (run(&coarse), run(&fine));
            dp_max = dp_max.max((a.x - b.x).hypot(a.y - b.y));
            dt_max = dt_max.max(wrap_angle(a.theta - b.theta).abs());
        }
    }
    outcome(
        dp_max < 5e-4 && dt_max < 0.01,
        format!("max change {:.4} mm / {dt_max:.5} rad", dp_max * 1e3),
    )
}

fn base_config() -> ExperimentConfig {
    let mut cfg = ExperimentConfig::default();
    cfg.setting = ModelSetting::TransferOnline;
    cfg.exploration_count = 10;
    cfg.mpc.horizon = 20;
    cfg.mpc.rollouts = 50;
    cfg
}

fn tracking(r: &SweepResult, secs: f64) -> Outcome {
    let med = median(maes(r));
    let reached = r.runs.values().filter(|l| l.reached() && l.pushes <= 500).count();
    let n = r.runs.len();
    outcome(
        med < 10.0 && reached == n && n == 20 && secs < 120.0,
        format!("median MAE {med:.3} mm, {reached}/{n} reached, {secs:.1} s"),
    )
}

fn settings_trend() -> Outcome {
    let mut cfg = base_config();
    cfg.sweep.settings = Some(vec![ModelSetting::TransferFrozen, ModelSetting::TransferOnline]);
    let r = sweep(&cfg, &SEEDS).unwrap();
    let (s1, s2) = (&r.cells[0], &r.cells[1]);
    outcome(
        s2.mean_mae_mm < s1.mean_mae_mm,
        format!(
            "mean MAE setting 1 {:.3} mm ({}/20 reached), setting 2 {:.3} mm ({}/20 reached)",
            s1.mean_mae_mm, s1.reached, s2.mean_mae_mm, s2.reached
        ),
    )
}

fn rollouts_trend() -> Outcome {
    let mut cfg = base_config();
    cfg.sweep.rollouts = Some(vec![0, 10, 20, 50]);
    let r = sweep(&cfg, &SEEDS).unwrap();
    let means: Vec<f64> = r.cells.iter().map(|c| c.mean_mae_mm).collect();
    let monotone = means.windows(2).all(|w| w[1] <= w[0]);
    let gain = 1.0 - means[3] / means[0];
    let listed = r
        .cells
        .iter()
        .map(|c| format!("Q={} {:.3}", c.key.rollouts, c.mean_mae_mm))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(
        monotone && gain >= 0.15,
        format!("mean MAE [{listed}] mm, gain {:.1} %, non-increasing: {monotone}", gain * 100.0),
    )
}

fn disturbances(undisturbed: &SweepResult) -> Outcome {
    let mut cfg = base_config();
    cfg.plant.disturbance = Some(Disturbance {
        trans_mag: 0.005,
        rot_mag: 0.05,
        probability: 0.2,
    });
    let r = sweep(&cfg, &SEEDS).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for shape in TARGET_SHAPES {
        fn of<'a>(res: &'a SweepResult, shape: &str) -> Vec<&'a RunLog> {
            res.runs.iter().filter(|((_, s, _), _)| s == shape).map(|(_, l)| l).collect()
        }
        let dis = of(&r, shape);
        let reached = dis.iter().filter(|l| l.reached()).count();
        let m_dis = median(dis.iter().map(|l| l.mae_mm).collect());
        let m_und = median(of(undisturbed, shape).iter().map(|l| l.mae_mm).collect());
        pass &= reached >= 4 && m_dis < 2.0 * m_und;
        parts.push(format!("{shape} {reached}/5 reached, median {m_dis:.2} vs {m_und:.2} mm"));
    }
    outcome(pass, parts.join("; "))
}

fn reproducible(first: &SweepResult) -> Outcome {
    let again = sweep(&base_config(), &SEEDS).unwrap();
    let differing = first
        .runs
        .iter()
        .filter(|(k, log)| again.runs.get(*k).map(to_csv) != Some(to_csv(log)))
        .count();
    outcome(
        differing == 0 && again.runs.len() == first.runs.len(),
        format!("{differing}/{} CSV exports differ", first.runs.len()),
    )
}

fn main() {
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut report = |n: u32, name: &'static str, o: Outcome| {
        println!("criterion {n:>2} {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((n, name, o));
    };

    report(1, "geometry laws", geometry());
    report(2, "GP dense-solve oracle", gp_oracle());
    report(3, "law of sines", law_of_sines());
    report(4, "greedy equivalence", greedy());
    report(5, "perfect-model consistency", perfect_model());
    report(6, "simulator convergence", convergence());

    let t = Instant::now();
    let tracked = sweep(&base_config(), &SEEDS).unwrap();
    report(7, "desk-scale tracking", tracking(&tracked, t.elapsed().as_secs_f64()));
    report(8, "online update beats frozen transfer", settings_trend());
    report(9, "more rollouts track better", rollouts_trend());
    report(10, "disturbance robustness", disturbances(&tracked));
    report(11, "reproducible exports", reproducible(&tracked));

    let failed: Vec<u32> = results.iter().filter(|r| !r.2.pass).map(|r| r.0).collect();
    if failed.is_empty() {
        println!("all {} criteria passed", results.len());
    } else {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
