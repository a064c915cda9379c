//! Randomized self-check: every solver against brute force, plus the
//! parameter inequalities and window-size bounds, on random small profiles.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::format::emit_profile;
use crate::mallows::{sample_profile, MallowsConfig};
use crate::model::Profile;
use crate::parameters::parameter_report;
use crate::solvers::{
    lemma_window_check, max_score, solve, Algorithm, Lambda, Mode, Solution, SolveRequest,
    WindowSource,
};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub m_max: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: usize,
    /// The offending profile in profile-file format.
    pub profile: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub trials: usize,
    pub checks: u64,
    pub failure: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Half uniform shuffles, half Mallows draws with θ ∈ {1, 2, 4}.
pub fn random_profile(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Profile {
    if rng.gen_bool(0.5) {
        let votes: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                let mut v: Vec<usize> = (0..m).collect();
                v.shuffle(rng);
                v
            })
            .collect();
        Profile::from_orders(votes).expect("shuffles are permutations")
    } else {
        let theta = *[1.0, 2.0, 4.0].choose(rng).unwrap();
        let cfg = MallowsConfig::identity(m, theta, rng.gen()).expect("theta is positive");
        sample_profile(&cfg, n).expect("n is positive")
    }
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    run_verify_with(cfg, &mut |req| solve(req))
}

/// Like [`run_verify`] but answers every non-brute request through `solver`.
pub fn run_verify_with(
    cfg: &VerifyConfig,
    solver: &mut dyn FnMut(&SolveRequest) -> Result<Solution>,
) -> Result<VerifyReport> {
    let limits = Limits::default();
    if cfg.m_max > limits.max_brute_candidates {
        return Err(Error::Invalid(format!(
            "m-max must be at most {}",
            limits.max_brute_candidates
        )));
    }
    if cfg.trials > 0 && (cfg.m_max == 0 || cfg.n_max == 0) {
        return Err(Error::Invalid("m-max and n-max must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = VerifyReport {
        trials: cfg.trials,
        ..VerifyReport::default()
    };
    for trial in 0..cfg.trials {
        let m = rng.gen_range(1..=cfg.m_max);
        let n = rng.gen_range(1..=cfg.n_max);
        let profile = random_profile(&mut rng, m, n);
        if let Err(detail) = check_profile(&profile, solver, &mut report.checks) {
            report.failure = Some(Counterexample {
                trial,
                profile: emit_profile(&profile),
                detail,
            });
            break;
        }
    }
    Ok(report)
}

fn check_profile(
    profile: &Profile,
    solver: &mut dyn FnMut(&SolveRequest) -> Result<Solution>,
    checks: &mut u64,
) -> std::result::Result<(), String> {
    let limits = Limits::default();
    let rep = parameter_report(profile, &limits).map_err(|e| e.to_string())?;
    *checks += 1;
    if !rep.violations().is_empty() {
        return Err(format!("parameter inequalities violated: {:?}", rep.violations()));
    }
    for source in [
        WindowSource::AvgKt,
        WindowSource::Range,
        WindowSource::Scaled(Lambda::new(3, 2).unwrap()),
        WindowSource::Scaled(Lambda::new(2, 1).unwrap()),
    ] {
        let check = lemma_window_check(profile, source).map_err(|e| e.to_string())?;
        *checks += 1;
        if !check.holds {
            return Err(format!("window bound violated: {check:?}"));
        }
    }

    let brute = |mode, r| solve(&SolveRequest::new(profile, r, mode, Algorithm::Brute));
    let k_opt = brute(Mode::Opt, 1)
        .map_err(|e| e.to_string())?
        .k_opt
        .expect("brute reports the optimum");
    let mut modes: Vec<(Mode, usize)> = [1, 3, 10].into_iter().map(|r| (Mode::Opt, r)).collect();
    for delta in 0..3 {
        modes.push((Mode::Budget((k_opt + delta).min(max_score(profile))), 10));
    }
    for lambda in [Lambda::ONE, Lambda::new(3, 2).unwrap(), Lambda::new(2, 1).unwrap()] {
        modes.push((Mode::Approx(lambda), 10));
    }
    for (mode, r) in modes {
        let want = brute(mode, r).map_err(|e| e.to_string())?;
        for alg in Algorithm::ALL.into_iter().filter(|&a| a != Algorithm::Brute) {
            let got = solver(&SolveRequest::new(profile, r, mode, alg))
                .map_err(|e| format!("{alg} {mode:?} r={r}: {e}"))?;
            *checks += 1;
            if got.rankings != want.rankings {
                return Err(format!(
                    "{alg} {mode:?} r={r}: got {:?}, brute force gives {:?}",
                    got.rankings.scores(),
                    want.rankings.scores()
                ));
            }
            if let Some(run) = got
                .stats
                .branch_runs
                .iter()
                .find(|run| run.budget < 63 && run.nodes > 1 << (run.budget + 1))
            {
                return Err(format!("{alg} {mode:?}: branch tree too large: {run:?}"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_pass() {
        let cfg = VerifyConfig {
            m_max: 5,
            n_max: 5,
            trials: 0,
            seed: 1,
        };
        let rep = run_verify(&cfg).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checks, 0);
    }

    #[test]
    fn small_run_passes() {
        let cfg = VerifyConfig {
            m_max: 5,
            n_max: 6,
            trials: 30,
            seed: 2,
        };
        let rep = run_verify(&cfg).unwrap();
        assert!(rep.passed(), "{:?}", rep.failure);
        assert!(rep.checks > 30);
    }

    #[test]
    fn mutant_solver_is_caught() {
        let cfg = VerifyConfig {
            m_max: 4,
            n_max: 4,
            trials: 50,
            seed: 3,
        };
        // drops the last ranking whenever more than one is returned
        let mut mutant = |req: &SolveRequest| {
            let mut out = solve(req)?;
            let keep = out.rankings.len().saturating_sub(1).max(1);
            out.rankings.truncate(keep);
            Ok(out)
        };
        let rep = run_verify_with(&cfg, &mut mutant).unwrap();
        let failure = rep.failure.expect("mutant must be caught");
        assert!(parse_back(&failure.profile));
    }

    fn parse_back(text: &str) -> bool {
        crate::format::parse_profile(text).is_ok()
    }

    #[test]
    fn rejects_large_m() {
        let cfg = VerifyConfig {
            m_max: 9,
            n_max: 2,
            trials: 1,
            seed: 0,
        };
        assert!(matches!(run_verify(&cfg), Err(Error::Invalid(_))));
    }
}
