//! Candidates, rankings, profiles and the score arithmetic shared by every
//! algorithm in the crate.
//!
//! Candidates are dense indices `0..m`. A [`Ranking`] lists them from most to
//! least preferred; the position of a candidate is the number of candidates
//! ranked above it, so the top candidate sits at position 0.

use std::fmt;

use crate::error::{Error, Result};

/// Dense candidate index in `0..m`.
pub type CandidateId = usize;

/// A complete strict order over `0..m`, most preferred first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking {
    order: Vec<CandidateId>,
}

impl Ranking {
    /// Builds a ranking, rejecting anything that is not a permutation of `0..len`.
    pub fn new(order: Vec<CandidateId>) -> Result<Self> {
        let m = order.len();
        let mut seen = vec![false; m];
        for &c in &order {
            if c >= m {
                return Err(Error::Structural(format!(
                    "candidate {c} out of range for {m} candidates"
                )));
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(Error::Structural(format!("candidate {c} appears twice")));
            }
        }
        Ok(Ranking { order })
    }

    pub(crate) fn from_order_unchecked(order: Vec<CandidateId>) -> Self {
        debug_assert!(Ranking::new(order.clone()).is_ok());
        Ranking { order }
    }

    pub fn identity(m: usize) -> Self {
        Ranking {
            order: (0..m).collect(),
        }
    }

    pub fn order(&self) -> &[CandidateId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `positions()[c]` is the number of candidates preferred to `c`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &c) in self.order.iter().enumerate() {
            pos[c] = i;
        }
        pos
    }

    pub fn reversed(&self) -> Ranking {
        Ranking {
            order: self.order.iter().rev().copied().collect(),
        }
    }

    pub fn into_order(self) -> Vec<CandidateId> {
        self.order
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.order.iter().enumerate() {
            if i > 0 {
                f.write_str(">")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Number of candidate pairs the two rankings order differently.
pub fn kt_distance(a: &Ranking, b: &Ranking) -> Result<u64> {
    if a.len() != b.len() {
        return Err(Error::Structural(format!(
            "rankings over {} and {} candidates",
            a.len(),
            b.len()
        )));
    }
    let pos_b = b.positions();
    let mapped: Vec<usize> = a.order.iter().map(|&c| pos_b[c]).collect();
    Ok(count_inversions(&mapped))
}

fn count_inversions(seq: &[usize]) -> u64 {
    let mut total = 0u64;
    for (i, &x) in seq.iter().enumerate() {
        total += seq[i + 1..].iter().filter(|&&y| y < x).count() as u64;
    }
    total
}

/// A multiset of complete rankings over a shared set of `m` candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    m: usize,
    votes: Vec<Ranking>,
    // row-major n x m: positions[v * m + c]
    positions: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl Profile {
    pub fn new(m: usize, votes: Vec<Ranking>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Structural("a profile needs at least one candidate".into()));
        }
        if votes.is_empty() {
            return Err(Error::Structural("a profile needs at least one vote".into()));
        }
        let mut positions = Vec::with_capacity(votes.len() * m);
        for (i, v) in votes.iter().enumerate() {
            if v.len() != m {
                return Err(Error::Structural(format!(
                    "vote {i} ranks {} candidates, expected {m}",
                    v.len()
                )));
            }
            positions.extend(v.positions());
        }
        Ok(Profile {
            m,
            votes,
            positions,
            labels: None,
        })
    }

    /// Convenience constructor from raw index sequences.
    pub fn from_orders<I, V>(orders: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<CandidateId>>,
    {
        let votes = orders
            .into_iter()
            .map(|o| Ranking::new(o.into()))
            .collect::<Result<Vec<_>>>()?;
        let m = votes.first().map_or(0, Ranking::len);
        Profile::new(m, votes)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.m {
            return Err(Error::Structural(format!(
                "{} labels for {} candidates",
                labels.len(),
                self.m
            )));
        }
        if let Some(bad) = labels
            .iter()
            .find(|l| l.is_empty() || l.contains([',', '>', '\n', '\r', '\t']))
        {
            return Err(Error::Structural(format!(
                "label {bad:?} is empty or contains a separator character"
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.votes.len()
    }

    pub fn votes(&self) -> &[Ranking] {
        &self.votes
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Position of candidate `c` in vote `v`.
    pub fn position(&self, v: usize, c: CandidateId) -> usize {
        self.positions[v * self.m + c]
    }

    /// Sum of positions of `c` over all votes (`n` times its average position).
    pub fn position_sum(&self, c: CandidateId) -> u64 {
        (0..self.n()).map(|v| self.position(v, c) as u64).sum()
    }

    pub fn label(&self, c: CandidateId) -> String {
        match &self.labels {
            Some(l) => l[c].clone(),
            None => c.to_string(),
        }
    }
}

/// Kemeny score of `q`: the sum of its KT distances to every vote.
pub fn kemeny_score(profile: &Profile, q: &Ranking) -> Result<u64> {
    profile.votes.iter().map(|v| kt_distance(q, v)).sum()
}

/// `cost(a, b)` is the number of voters preferring `b` over `a`, i.e. what it
/// costs to rank `a` above `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairwiseCosts {
    m: usize,
    n: usize,
    cost: Vec<u32>,
}

impl PairwiseCosts {
    pub fn new(profile: &Profile) -> Self {
        let m = profile.m();
        let mut cost = vec![0u32; m * m];
        for vote in profile.votes() {
            let order = vote.order();
            for (i, &above) in order.iter().enumerate() {
                for &below in &order[i + 1..] {
                    cost[below * m + above] += 1;
                }
            }
        }
        PairwiseCosts {
            m,
            n: profile.n(),
            cost,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn cost(&self, a: CandidateId, b: CandidateId) -> u64 {
        self.cost[a * self.m + b] as u64
    }

    /// Kemeny score as the sum of `cost(x, y)` over pairs with `x` above `y` in `q`.
    pub fn score(&self, q: &Ranking) -> u64 {
        let order = q.order();
        let mut total = 0;
        for (i, &x) in order.iter().enumerate() {
            for &y in &order[i + 1..] {
                total += self.cost(x, y);
            }
        }
        total
    }

    /// Sum of `cost(c, y)` over `y` in `mask` (candidates placed below `c`).
    pub(crate) fn cost_above_mask(&self, c: CandidateId, mut mask: u64) -> u64 {
        let row = &self.cost[c * self.m..(c + 1) * self.m];
        let mut total = 0;
        while mask != 0 {
            let y = mask.trailing_zeros() as usize;
            total += row[y] as u64;
            mask &= mask - 1;
        }
        total
    }
}

/// Shorthand for [`PairwiseCosts::new`].
pub fn pairwise_costs(profile: &Profile) -> PairwiseCosts {
    PairwiseCosts::new(profile)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScoredRanking {
    pub ranking: Ranking,
    pub score: u64,
}

/// Solver output: distinct rankings sorted by score, ties broken by the
/// lexicographic order of the candidate sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScoredRankingList {
    entries: Vec<ScoredRanking>,
}

impl ScoredRankingList {
    /// Sorts and removes duplicate rankings.
    pub fn from_unsorted(mut entries: Vec<ScoredRanking>) -> Self {
        entries.sort_by(|a, b| (a.score, &a.ranking).cmp(&(b.score, &b.ranking)));
        entries.dedup_by(|a, b| a.ranking == b.ranking);
        ScoredRankingList { entries }
    }

    pub fn truncate(&mut self, r: usize) {
        self.entries.truncate(r);
    }

    pub fn entries(&self) -> &[ScoredRanking] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<ScoredRanking> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ScoredRanking> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scores(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.score).collect()
    }
}

impl<'a> IntoIterator for &'a ScoredRankingList {
    type Item = &'a ScoredRanking;
    type IntoIter = std::slice::Iter<'a, ScoredRanking>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}
