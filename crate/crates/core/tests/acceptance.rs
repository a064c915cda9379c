//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines always show.

use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kemeny_core::experiments::{run_sweep, sample_seed, SweepResult, SweepSpec};
use kemeny_core::format::emit_solution;
use kemeny_core::mallows::{sample_profile, sample_ranking, MallowsConfig};
use kemeny_core::parameters::{
    avg_kt_distance, blocking_size, consensus_distance, max_range, unanimity_width,
};
use kemeny_core::solvers::{lemma_window_check, max_score, WindowSource};
use kemeny_core::{
    kt_distance, parameter_report, solve, Algorithm, Lambda, Limits, Mode, Profile, Ranking,
    SolveRequest,
};
use num_rational::Ratio;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Profiles whose parameter inequalities were checked, across all criteria.
#[derive(Default)]
struct Ledger {
    profiles_checked: usize,
    violations: Vec<String>,
}

impl Ledger {
    fn check(&mut self, p: &Profile) {
        let rep = parameter_report(p, &Limits::default()).expect("m is within limits");
        self.profiles_checked += 1;
        let v = rep.violations();
        if !v.is_empty() && self.violations.len() < 5 {
            self.violations.push(format!("{v:?} on {rep:?}"));
        }
    }
}

fn oracle_profile(rng: &mut ChaCha8Rng, i: usize) -> Profile {
    let m = rng.gen_range(3..=6);
    let n = rng.gen_range(2..=8);
    if i % 2 == 0 {
        let votes: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                let mut v: Vec<usize> = (0..m).collect();
                v.shuffle(rng);
                v
            })
            .collect();
        Profile::from_orders(votes).unwrap()
    } else {
        let theta = *[1.0, 2.0, 4.0].choose(rng).unwrap();
        sample_profile(&MallowsConfig::identity(m, theta, rng.gen()).unwrap(), n).unwrap()
    }
}

fn criterion_1_and_7(ledger: &mut Ledger) -> (Outcome, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut comparisons = 0;
    let mut mismatches = Vec::new();
    let mut budget_runs = 0;
    let mut over_bound = Vec::new();
    let profiles = 500;
    for i in 0..profiles {
        let p = oracle_profile(&mut rng, i);
        ledger.check(&p);
        let brute = |mode, r| solve(&SolveRequest::new(&p, r, mode, Algorithm::Brute)).unwrap();
        let k_opt = brute(Mode::Opt, 1).k_opt.unwrap();
        let mut modes: Vec<(Mode, usize)> = [1, 3, 10].map(|r| (Mode::Opt, r)).to_vec();
        for delta in 0..3 {
            modes.push((Mode::Budget((k_opt + delta).min(max_score(&p))), 10));
        }
        for l in ["1", "1.5", "2"] {
            modes.push((Mode::Approx(l.parse::<Lambda>().unwrap()), 10));
        }
        for (mode, r) in modes {
            let want = emit_solution(&p, &brute(mode, r).rankings);
            for alg in Algorithm::ALL.into_iter().filter(|&a| a != Algorithm::Brute) {
                let out = solve(&SolveRequest::new(&p, r, mode, alg)).unwrap();
                comparisons += 1;
                if emit_solution(&p, &out.rankings) != want && mismatches.len() < 3 {
                    mismatches.push(format!("{alg} {mode:?} r={r} on {:?}", p.votes()));
                }
                if let Mode::Budget(_) = mode {
                    for run in &out.stats.branch_runs {
                        budget_runs += 1;
                        if run.budget < 63 && run.nodes > 1u64 << (run.budget + 1) {
                            over_bound.push(format!("{run:?}"));
                        }
                    }
                }
            }
        }
    }
    (
        outcome(
            mismatches.is_empty(),
            format!("{profiles} profiles, {comparisons} solver outputs compared; mismatches: {mismatches:?}"),
        ),
        outcome(
            over_bound.is_empty() && budget_runs > 0,
            format!("{budget_runs} budget runs; over 2^(k+1): {over_bound:?}"),
        ),
    )
}

fn criterion_2() -> Outcome {
    let block = Profile::from_orders([vec![0, 1, 2, 3], vec![2, 3, 0, 1]]).unwrap();
    let got_block = (
        consensus_distance(&block),
        blocking_size(&block),
        unanimity_width(&block, &Limits::default()).unwrap(),
    );
    let swap = Profile::from_orders([vec![0, 1, 2, 3], vec![1, 0, 3, 2]]).unwrap();
    let got_swap = (
        consensus_distance(&swap),
        unanimity_width(&swap, &Limits::default()).unwrap(),
        max_range(&swap),
        avg_kt_distance(&swap).ratio(),
    );
    let reversal = Profile::from_orders([vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
    let mut reversal_ok = true;
    for alg in Algorithm::ALL {
        let out = solve(&SolveRequest::new(&reversal, 10, Mode::Opt, alg)).unwrap();
        reversal_ok &= out.rankings.scores() == vec![3; 6];
    }
    let pass = got_block == (4, 2, 2) && got_swap == (2, 1, 2, Ratio::from_integer(2)) && reversal_ok;
    outcome(
        pass,
        format!(
            "block p=2 {got_block:?}, swap {:?}, vote+reversal six optima of score 3 for every algorithm: {reversal_ok}",
            (got_swap.0, got_swap.1, got_swap.2, got_swap.3.to_string())
        ),
    )
}

fn criterion_3(ledger: &mut Ledger, sweep: &SweepResult) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    while ledger.profiles_checked < 10_000 {
        let m = rng.gen_range(1..=8);
        let n = rng.gen_range(1..=10);
        let p = if rng.gen_bool(0.5) {
            let votes: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    let mut v: Vec<usize> = (0..m).collect();
                    v.shuffle(&mut rng);
                    v
                })
                .collect();
            Profile::from_orders(votes).unwrap()
        } else {
            let theta = rng.gen_range(0.1..6.0);
            sample_profile(&MallowsConfig::identity(m, theta, rng.gen()).unwrap(), n).unwrap()
        };
        ledger.check(&p);
    }
    let mut total = ledger.profiles_checked;
    let mut violations = ledger.violations.clone();
    for cell in &sweep.cells {
        for rep in &cell.reports {
            total += 1;
            if !rep.violations().is_empty() {
                violations.push(format!("{rep:?}"));
            }
        }
    }
    outcome(
        violations.is_empty() && total >= 10_000,
        format!("{total} profiles; violations: {violations:?}"),
    )
}

const REFERENCE_THETA8: [f64; 5] = [1.0, 0.0, 0.0, 1.0, 0.0];
const REFERENCE_THETA15: [f64; 5] = [5.200, 4.207, 2.350, 3.300, 14.050];

fn criterion_4(sweep: &SweepResult) -> Outcome {
    let mut problems = Vec::new();
    let t8 = sweep.cell(8.0, 200).unwrap().means;
    let t15 = sweep.cell(1.5, 200).unwrap().means;
    for (i, (&got, &want)) in t8.iter().zip(&REFERENCE_THETA8).enumerate() {
        if (got - want).abs() > 0.3 {
            problems.push(format!("theta=8 column {i}: {got:.3} vs {want:.3}"));
        }
    }
    for (i, (&got, &want)) in t15.iter().zip(&REFERENCE_THETA15).enumerate() {
        if (got - want).abs() > 0.3 * want {
            problems.push(format!("theta=1.5 column {i}: {got:.3} vs {want:.3}"));
        }
    }
    let series = |col: usize| -> Vec<f64> {
        [1.5, 3.0, 5.0, 8.0]
            .iter()
            .map(|&t| sweep.cell(t, 200).unwrap().means[col])
            .collect()
    };
    for (col, name) in [(4, "consensus distance"), (1, "avg KT")] {
        let s = series(col);
        if !s.windows(2).all(|w| w[1] < w[0]) {
            problems.push(format!("{name} not strictly decreasing: {s:?}"));
        }
    }
    let fmt = |v: [f64; 5]| v.map(|x| format!("{x:.3}")).join(", ");
    outcome(
        problems.is_empty(),
        format!(
            "theta=8 means ({}), theta=1.5 means ({}); problems: {problems:?}",
            fmt(t8),
            fmt(t15)
        ),
    )
}

fn criterion_5(sweep: &SweepResult) -> Outcome {
    let means: Vec<f64> = [10, 25, 50, 100, 200]
        .iter()
        .map(|&n| sweep.cell(1.5, n).unwrap().means[4])
        .collect();
    let grand = means.iter().sum::<f64>() / means.len() as f64;
    let worst = means
        .iter()
        .map(|m| (m - grand).abs() / grand)
        .fold(0.0, f64::max);
    outcome(
        worst < 0.25,
        format!(
            "consensus distance means {:?}, grand mean {grand:.3}, largest relative deviation {:.1}%",
            means.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>(),
            100.0 * worst
        ),
    )
}

fn criterion_6(spec: &SweepSpec) -> Outcome {
    let mut checked = 0;
    let mut failures: Vec<String> = Vec::new();
    let mut failing_profiles = 0;
    // violations split by whether d is below one
    let mut small_d = 0;
    let mut large_d = 0;
    let sources = [
        WindowSource::AvgKt,
        WindowSource::Range,
        WindowSource::Scaled(Lambda::new(3, 2).unwrap()),
        WindowSource::Scaled(Lambda::new(2, 1).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut profiles = Vec::new();
    for &theta in &spec.thetas {
        for &n in &spec.voter_counts {
            for s in 0..spec.samples_per_cell {
                let cfg = MallowsConfig::identity(spec.m, theta, sample_seed(spec.seed, theta, n, s)).unwrap();
                profiles.push(sample_profile(&cfg, n).unwrap());
            }
        }
    }
    for i in 0..500 {
        let p = oracle_profile(&mut rng, i);
        if i % 2 == 1 {
            profiles.push(p);
        }
    }
    for p in &profiles {
        let mut bad = false;
        for source in sources {
            let c = lemma_window_check(p, source).unwrap();
            checked += 1;
            if !c.holds {
                bad = true;
                if avg_kt_distance(p).ratio() < Ratio::from_integer(1) {
                    small_d += 1;
                } else {
                    large_d += 1;
                }
                if failures.len() < 3 {
                    failures.push(format!(
                        "{source:?}: window {} > bound {} (d = {})",
                        c.max_window,
                        c.bound,
                        avg_kt_distance(p)
                    ));
                }
            }
        }
        failing_profiles += bad as usize;
    }
    outcome(
        failing_profiles == 0,
        format!(
            "{} Mallows profiles, {checked} window checks, {failing_profiles} profiles violating ({small_d} failed checks with d < 1, {large_d} with d >= 1); first: {failures:?}",
            profiles.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let perms: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ];
    let samples = 200_000u64;
    let center = Ranking::identity(3);
    let mut worst: f64 = 0.0;
    for theta in [0.5, 1.5, 3.0] {
        let weights: Vec<f64> = perms
            .iter()
            .map(|p| {
                let d = kt_distance(&Ranking::new(p.clone()).unwrap(), &center).unwrap();
                (-theta * d as f64).exp()
            })
            .collect();
        let z: f64 = weights.iter().sum();
        let cfg = MallowsConfig::identity(3, theta, 1).unwrap();
        let mut counts = [0u64; 6];
        for i in 0..samples {
            let r = sample_ranking(&cfg, i);
            let k = perms.iter().position(|p| p == r.order()).unwrap();
            counts[k] += 1;
        }
        for (k, w) in weights.iter().enumerate() {
            let p = w / z;
            let se = (p * (1.0 - p) / samples as f64).sqrt();
            let z_score = (counts[k] as f64 / samples as f64 - p).abs() / se;
            worst = worst.max(z_score);
        }
    }
    outcome(
        worst <= 3.0,
        format!("18 permutation frequencies, largest deviation {worst:.2} standard errors"),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let votes: Vec<Vec<usize>> = (0..50)
        .map(|_| {
            let mut v: Vec<usize> = (0..16).collect();
            v.shuffle(&mut rng);
            v
        })
        .collect();
    let uniform = Profile::from_orders(votes).unwrap();
    let t = Instant::now();
    let a = solve(&SolveRequest::new(&uniform, 10, Mode::Opt, Algorithm::SubsetDp)).unwrap();
    let subset_secs = t.elapsed().as_secs_f64();

    let mallows = sample_profile(&MallowsConfig::identity(14, 3.0, 9).unwrap(), 100).unwrap();
    let t = Instant::now();
    let b = solve(&SolveRequest::new(&mallows, 5, Mode::Opt, Algorithm::PathwidthDp)).unwrap();
    let pathwidth_secs = t.elapsed().as_secs_f64();
    outcome(
        subset_secs < 60.0 && pathwidth_secs < 60.0 && !a.rankings.is_empty() && !b.rankings.is_empty(),
        format!(
            "subset-dp m=16 n=50 r=10: {subset_secs:.2}s ({} rankings); pathwidth-dp m=14 n=100 theta=3 r=5: {pathwidth_secs:.2}s (width {:?}, {} rankings)",
            a.rankings.len(),
            b.stats.decomposition_width,
            b.rankings.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, &str, Outcome, f64)> = Vec::new();
    let mut ledger = Ledger::default();

    let t = Instant::now();
    let (c1, c7) = criterion_1_and_7(&mut ledger);
    let t1 = t.elapsed().as_secs_f64();
    results.push((1, "oracle equivalence", c1, t1));
    let t = Instant::now();
    results.push((2, "reference constructions", criterion_2(), t.elapsed().as_secs_f64()));

    let spec = SweepSpec::default();
    let t = Instant::now();
    let sweep = run_sweep(&spec).unwrap();
    let sweep_secs = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let c3 = criterion_3(&mut ledger, &sweep);
    results.push((3, "parameter inequalities", c3, t.elapsed().as_secs_f64()));
    results.push((4, "Mallows reproduction", criterion_4(&sweep), sweep_secs));
    results.push((5, "voter-count stability", criterion_5(&sweep), 0.0));
    let t = Instant::now();
    results.push((6, "window-size bounds", criterion_6(&spec), t.elapsed().as_secs_f64()));
    results.push((7, "branch-tree bound", c7, t1));
    let t = Instant::now();
    results.push((8, "Mallows sampler distribution", criterion_8(), t.elapsed().as_secs_f64()));
    let t = Instant::now();
    results.push((9, "performance sanity", criterion_9(), t.elapsed().as_secs_f64()));

    let mut failed = 0;
    for (id, name, o, secs) in &results {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        failed += !o.pass as usize;
        println!("criterion {id} ({name}): {verdict} [{secs:.1}s] {}", o.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
