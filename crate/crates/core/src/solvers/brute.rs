use itertools::Itertools;

use crate::error::Result;
use crate::model::{kemeny_score, Ranking, ScoredRanking, ScoredRankingList};
use crate::parameters::UnanimityOrder;

use super::{Mode, Solution, SolveRequest, SolveStats};

/// Scores every ranking straight from KT distances, sharing no code with the
/// other solvers beyond the profile itself.
pub(super) fn solve(req: &SolveRequest) -> Result<Solution> {
    let profile = req.profile;
    let m = profile.m();
    let order = UnanimityOrder::of(profile);
    let mut all = Vec::new();
    for perm in (0..m).permutations(m) {
        let ranking = Ranking::from_order_unchecked(perm);
        if !order.respected_by(&ranking) {
            continue;
        }
        let score = kemeny_score(profile, &ranking)?;
        all.push(ScoredRanking { ranking, score });
    }
    let k_opt = all.iter().map(|e| e.score).min();
    let cap = match (req.mode, k_opt) {
        (_, None) => 0,
        (Mode::Opt, Some(k)) => k,
        (Mode::Budget(k), _) => k,
        (Mode::Approx(l), Some(k)) => l.budget(k),
    };
    all.retain(|e| e.score <= cap);
    let mut rankings = ScoredRankingList::from_unsorted(all);
    rankings.truncate(req.r);
    Ok(Solution {
        rankings,
        k_opt,
        stats: SolveStats::default(),
    })
}
