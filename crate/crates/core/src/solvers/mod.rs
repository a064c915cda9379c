//! The enumeration algorithms and the glue that turns each of them into a
//! solver for the three problem modes.
//!
//! Every mode asks for up to `r` distinct rankings that keep all unanimous
//! pairs in their agreed order:
//!
//! * [`Mode::Opt`]: rankings of optimal Kemeny score,
//! * [`Mode::Budget`]: rankings of score at most `k`,
//! * [`Mode::Approx`]: rankings of score at most `⌊λ·k_opt⌋`.
//!
//! Branching and the window DPs answer budget queries, so for the other modes
//! the optimum is located first by binary search over `0..=n·C(m,2)` (or an
//! escalating scan). The subset and pathwidth DPs produce the best linear
//! extensions directly and read the optimum off their first entry.

mod branch;
mod brute;
mod pathwidth_dp;
mod subset_dp;
mod window_dp;
mod windows;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::decomposition::{build_decomposition, NicePathDecomposition};
use crate::error::{Error, Result};
use crate::model::{PairwiseCosts, Profile, ScoredRanking, ScoredRankingList};
use crate::parameters::{NonUnanimityGraph, UnanimityOrder};
use crate::Limits;

pub use branch::BranchRun;
pub use windows::{build_windows, lemma_window_check, LemmaCheck, PositionWindows, WindowSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Brute,
    Branch,
    SubsetDp,
    WindowD,
    WindowRange,
    PathwidthDp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Brute,
        Algorithm::Branch,
        Algorithm::SubsetDp,
        Algorithm::WindowD,
        Algorithm::WindowRange,
        Algorithm::PathwidthDp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Brute => "brute",
            Algorithm::Branch => "branch",
            Algorithm::SubsetDp => "subset-dp",
            Algorithm::WindowD => "window-d",
            Algorithm::WindowRange => "window-range",
            Algorithm::PathwidthDp => "pathwidth-dp",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown algorithm {s:?}")))
    }
}

/// Approximation factor `λ ≥ 1`, held as an exact fraction so that `⌊λ·k⌋`
/// never suffers from binary rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lambda {
    numer: u64,
    denom: u64,
}

impl Lambda {
    pub const ONE: Lambda = Lambda { numer: 1, denom: 1 };

    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 || numer < denom {
            return Err(Error::Invalid(format!(
                "lambda must be at least 1, got {numer}/{denom}"
            )));
        }
        let r = Ratio::new(numer, denom);
        Ok(Lambda {
            numer: *r.numer(),
            denom: *r.denom(),
        })
    }

    /// Converts through the shortest decimal representation of `x`.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::Invalid(format!("lambda must be finite, got {x}")));
        }
        format!("{x}").parse()
    }

    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.numer, self.denom)
    }

    /// `⌊λ·k⌋`.
    pub fn budget(&self, k: u64) -> u64 {
        (k as u128 * self.numer as u128 / self.denom as u128) as u64
    }
}

impl FromStr for Lambda {
    type Err = Error;

    /// Accepts `"3/2"` or a plain decimal such as `"1.25"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot parse lambda {s:?}"));
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let a = a.trim().parse().map_err(|_| bad())?;
            let b = b.trim().parse().map_err(|_| bad())?;
            return Lambda::new(a, b);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() || frac.len() > 18 {
            return Err(bad());
        }
        let digits = |t: &str| t.chars().all(|c| c.is_ascii_digit());
        if !digits(int) || !digits(frac) {
            return Err(bad());
        }
        let denom = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let numer = int
            .checked_mul(denom)
            .and_then(|x| x.checked_add(frac))
            .ok_or_else(bad)?;
        Lambda::new(numer, denom)
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ratio())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Opt,
    Budget(u64),
    Approx(Lambda),
}

/// How the optimal score is located for budget-driven algorithms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KOptSearch {
    #[default]
    Binary,
    /// Try `k = 0, 1, 2, ...` and stop at the first non-empty answer.
    Escalating,
}

#[derive(Clone, Debug)]
pub struct SolveRequest<'a> {
    pub profile: &'a Profile,
    pub r: usize,
    pub mode: Mode,
    pub algorithm: Algorithm,
    pub limits: Limits,
    pub kopt_search: KOptSearch,
}

impl<'a> SolveRequest<'a> {
    pub fn new(profile: &'a Profile, r: usize, mode: Mode, algorithm: Algorithm) -> Self {
        SolveRequest {
            profile,
            r,
            mode,
            algorithm,
            limits: Limits::default(),
            kopt_search: KOptSearch::default(),
        }
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        SolveRequest { mode, ..self.clone() }
    }

    pub fn with_algorithm(&self, algorithm: Algorithm) -> Self {
        SolveRequest {
            algorithm,
            ..self.clone()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::Invalid("r must be at least 1".into()));
        }
        if let Mode::Budget(k) = self.mode {
            let cap = max_score(self.profile);
            if k > cap {
                return Err(Error::Invalid(format!(
                    "budget {k} exceeds the largest possible score {cap}"
                )));
            }
        }
        Ok(())
    }
}

/// `n·C(m,2)`, the score of a ranking every voter fully disagrees with.
pub fn max_score(profile: &Profile) -> u64 {
    let m = profile.m() as u64;
    profile.n() as u64 * (m * m.saturating_sub(1) / 2)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// One record per branching search run, with its budget and node count.
    pub branch_runs: Vec<BranchRun>,
    /// Set when the requested algorithm could not run and another answered.
    pub rerouted: Option<String>,
    /// Width of the decomposition used by the pathwidth DP.
    pub decomposition_width: Option<usize>,
    /// Largest position window used by a window DP.
    pub max_window: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub rankings: ScoredRankingList,
    /// Optimal score, when the algorithm had to determine it.
    pub k_opt: Option<u64>,
    pub stats: SolveStats,
}

/// Precomputed view of a profile shared by all algorithms.
pub(crate) struct Instance<'a> {
    pub profile: &'a Profile,
    pub costs: PairwiseCosts,
    pub order: UnanimityOrder,
    /// `preds[c]`: candidates unanimously preferred to `c`.
    pub preds: Vec<u64>,
    /// `succs[c]`: candidates `c` is unanimously preferred to.
    pub succs: Vec<u64>,
}

impl<'a> Instance<'a> {
    pub fn new(profile: &'a Profile) -> Result<Self> {
        let costs = PairwiseCosts::new(profile);
        let order = UnanimityOrder::from_costs(&costs);
        let preds = order.predecessor_masks()?;
        let succs = order.successor_masks()?;
        Ok(Instance {
            profile,
            costs,
            order,
            preds,
            succs,
        })
    }

    pub fn m(&self) -> usize {
        self.profile.m()
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.m())
    }
}

pub(crate) fn full_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Locates the smallest `k` for which `probe(k)` holds, given that `probe` is
/// monotone and `probe(upper)` is true.
pub fn find_k_opt(
    search: KOptSearch,
    upper: u64,
    mut probe: impl FnMut(u64) -> Result<bool>,
) -> Result<u64> {
    match search {
        KOptSearch::Binary => {
            let (mut lo, mut hi) = (0, upper);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if probe(mid)? {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            Ok(lo)
        }
        KOptSearch::Escalating => {
            for k in 0..=upper {
                if probe(k)? {
                    return Ok(k);
                }
            }
            Err(Error::Invalid("no ranking within the largest possible score".into()))
        }
    }
}

/// Keeps the leading entries of a sorted top-`r` list that satisfy the mode.
fn select(mut top: Vec<ScoredRanking>, mode: Mode) -> (ScoredRankingList, Option<u64>) {
    let k_opt = top.first().map(|e| e.score);
    let cap = match (mode, k_opt) {
        (_, None) => 0,
        (Mode::Opt, Some(k)) => k,
        (Mode::Budget(k), _) => k,
        (Mode::Approx(l), Some(k)) => l.budget(k),
    };
    top.retain(|e| e.score <= cap);
    (ScoredRankingList::from_unsorted(top), k_opt)
}

/// Solves `req` with the algorithm it names.
pub fn solve(req: &SolveRequest) -> Result<Solution> {
    req.validate()?;
    match req.algorithm {
        Algorithm::Brute => solve_brute(req),
        Algorithm::Branch => solve_branch(req),
        Algorithm::SubsetDp => solve_subset_dp(req),
        Algorithm::WindowD | Algorithm::WindowRange => {
            let inst = Instance::new(req.profile)?;
            let source = window_source(req);
            let windows = build_windows(req.profile, source, Ratio::from_integer(0))?;
            solve_window_dp_with(&inst, req, windows)
        }
        Algorithm::PathwidthDp => {
            let inst = Instance::new(req.profile)?;
            let graph = NonUnanimityGraph::of(&inst.order);
            let d = build_decomposition(&inst.order, &graph, &req.limits)?;
            pathwidth_dp::solve(&inst, req, &d)
        }
    }
}

/// Optimal rankings with the request's algorithm.
pub fn solve_opt(req: &SolveRequest) -> Result<Solution> {
    solve(&req.with_mode(Mode::Opt))
}

/// `λ`-approximate rankings with the request's algorithm.
pub fn solve_approx(req: &SolveRequest, lambda: Lambda) -> Result<Solution> {
    solve(&req.with_mode(Mode::Approx(lambda)))
}

/// Full enumeration of all `m!` rankings; the reference every other solver is
/// checked against.
pub fn solve_brute(req: &SolveRequest) -> Result<Solution> {
    req.validate()?;
    let limit = req.limits.max_brute_candidates;
    if req.profile.m() > limit {
        return Err(Error::Resource {
            what: "brute-force enumeration",
            limit,
            actual: req.profile.m(),
        });
    }
    brute::solve(req)
}

pub fn solve_branch(req: &SolveRequest) -> Result<Solution> {
    req.validate()?;
    let inst = Instance::new(req.profile)?;
    let mut stats = SolveStats::default();
    let enumerate = |k: u64, r: usize, first_only: bool, stats: &mut SolveStats| {
        let (found, run) = branch::enumerate(&inst, k, r, first_only);
        stats.branch_runs.push(run);
        found
    };
    let (list, k_opt) = match req.mode {
        Mode::Budget(k) => (enumerate(k, req.r, false, &mut stats), None),
        Mode::Opt | Mode::Approx(_) => {
            let k_opt = find_k_opt(req.kopt_search, max_score(req.profile), |k| {
                Ok(!enumerate(k, 1, true, &mut stats).is_empty())
            })?;
            let k = match req.mode {
                Mode::Approx(l) => l.budget(k_opt),
                _ => k_opt,
            };
            (enumerate(k, req.r, false, &mut stats), Some(k_opt))
        }
    };
    Ok(Solution {
        rankings: list,
        k_opt,
        stats,
    })
}

pub fn solve_subset_dp(req: &SolveRequest) -> Result<Solution> {
    req.validate()?;
    let inst = Instance::new(req.profile)?;
    subset_dp_solution(&inst, req, SolveStats::default())
}

fn subset_dp_solution(inst: &Instance, req: &SolveRequest, stats: SolveStats) -> Result<Solution> {
    let top = subset_dp::top_extensions(inst, req.r, &req.limits)?;
    let (rankings, k_opt) = select(top, req.mode);
    Ok(Solution {
        rankings,
        k_opt,
        stats,
    })
}

fn window_source(req: &SolveRequest) -> WindowSource {
    match (req.algorithm, req.mode) {
        (Algorithm::WindowRange, _) => WindowSource::Range,
        (_, Mode::Approx(l)) => WindowSource::Scaled(l),
        _ => WindowSource::AvgKt,
    }
}

/// Window DP over the given windows. Budget queries beyond what the windows
/// are guaranteed to contain are served by widened windows.
pub fn solve_window_dp(req: &SolveRequest, windows: PositionWindows) -> Result<Solution> {
    req.validate()?;
    let inst = Instance::new(req.profile)?;
    solve_window_dp_with(&inst, req, windows)
}

fn solve_window_dp_with(
    inst: &Instance,
    req: &SolveRequest,
    base: PositionWindows,
) -> Result<Solution> {
    let mut stats = SolveStats::default();
    if !base.is_feasible() {
        stats.rerouted = Some(format!(
            "{} windows admit no assignment of candidates to positions; answered by subset-dp",
            req.algorithm
        ));
        return subset_dp_solution(inst, req, stats);
    }
    let n = req.profile.n() as u64;
    let run = |k: u64, r: usize, stats: &mut SolveStats| -> Result<Option<Vec<ScoredRanking>>> {
        // every ranking of score <= k sits strictly within (k+1)/n of its average position
        let windows = base.widened(req.profile, Ratio::new(k as i64 + 1, n as i64))?;
        if !windows.is_feasible() {
            return Ok(None);
        }
        stats.max_window = stats.max_window.max(Some(windows.max_window_size()));
        let mut top = window_dp::top_extensions(inst, &windows, r);
        top.retain(|e| e.score <= k);
        Ok(Some(top))
    };
    let best = window_dp::top_extensions(inst, &base, 1);
    stats.max_window = Some(base.max_window_size());
    let probe_best = best.first().map(|e| e.score);
    let k_opt = match req.mode {
        Mode::Budget(_) => None,
        _ => Some(find_k_opt(req.kopt_search, max_score(req.profile), |k| {
            Ok(probe_best.is_some_and(|s| s <= k))
        })?),
    };
    let k = match (req.mode, k_opt) {
        (Mode::Budget(k), _) => k,
        (Mode::Approx(l), Some(opt)) => l.budget(opt),
        (_, Some(opt)) => opt,
        (_, None) => unreachable!(),
    };
    match run(k, req.r, &mut stats)? {
        Some(top) => Ok(Solution {
            rankings: ScoredRankingList::from_unsorted(top),
            k_opt,
            stats,
        }),
        None => {
            stats.rerouted = Some(format!(
                "widened {} windows are infeasible; answered by subset-dp",
                req.algorithm
            ));
            subset_dp_solution(inst, req, stats)
        }
    }
}

pub fn solve_pathwidth_dp(req: &SolveRequest, d: &NicePathDecomposition) -> Result<Solution> {
    req.validate()?;
    let inst = Instance::new(req.profile)?;
    let graph = NonUnanimityGraph::of(&inst.order);
    if !crate::decomposition::validate_decomposition(d, &inst.order, &graph) {
        return Err(Error::Structural(
            "not a nice unanimity-consistent path decomposition of this profile".into(),
        ));
    }
    pathwidth_dp::solve(&inst, req, d)
}
