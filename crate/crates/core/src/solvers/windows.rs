//! Position windows: for each candidate, the positions it may take in any
//! ranking the window DP is asked to find.
//!
//! Average-distance windows are open intervals `|i - p_avg(c)| < w` around a
//! candidate's average position. A ranking of score `s` keeps every candidate
//! within `s / n` of its average position, and `k_opt ≤ (n-1)·d`, so
//! `w = max(d, 1)` covers every optimal ranking and `w = max(λd, 1)` every
//! `λ`-approximate one. Range windows stretch each candidate's observed
//! position span by `r_max - 1` on both sides, which covers every ranking that
//! respects unanimity.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::model::Profile;
use crate::parameters::{avg_kt_distance, max_range, position_bounds};

use super::Lambda;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowSource {
    AvgKt,
    Range,
    /// Average-distance windows scaled by an approximation factor.
    Scaled(Lambda),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionWindows {
    m: usize,
    source: WindowSource,
    // inclusive position interval per candidate; None when empty
    intervals: Vec<Option<(usize, usize)>>,
    half_width: Option<Ratio<i64>>,
}

fn avg_kt(profile: &Profile) -> Ratio<i64> {
    let d = avg_kt_distance(profile).ratio();
    Ratio::new(*d.numer() as i64, *d.denom() as i64)
}

/// Positions `i` in `0..m` with `|i - sum/n| < w`.
fn open_interval(m: usize, n: usize, sum: u64, w: Ratio<i64>) -> Option<(usize, usize)> {
    let (a, b) = (*w.numer() as i128, *w.denom() as i128);
    let inside =
        |i: usize| ((i as i128) * n as i128 - sum as i128).abs() * b < a * n as i128;
    let lo = (0..m).find(|&i| inside(i))?;
    let hi = (lo..m).rev().find(|&i| inside(i))?;
    Some((lo, hi))
}

/// Builds windows from `source`. Average-distance windows use half-width at
/// least `min_half_width`.
pub fn build_windows(
    profile: &Profile,
    source: WindowSource,
    min_half_width: Ratio<i64>,
) -> Result<PositionWindows> {
    let m = profile.m();
    if m > 64 {
        return Err(Error::Resource {
            what: "window DP",
            limit: 64,
            actual: m,
        });
    }
    let one = Ratio::from_integer(1);
    let (intervals, half_width) = match source {
        WindowSource::Range => {
            let stretch = max_range(profile) - 1;
            let intervals = (0..m)
                .map(|c| {
                    let (lo, hi) = position_bounds(profile, c);
                    Some((lo.saturating_sub(stretch), (hi + stretch).min(m - 1)))
                })
                .collect();
            (intervals, None)
        }
        WindowSource::AvgKt | WindowSource::Scaled(_) => {
            let mut w = avg_kt(profile);
            if let WindowSource::Scaled(l) = source {
                let l = l.ratio();
                w *= Ratio::new(*l.numer() as i64, *l.denom() as i64);
            }
            let w = w.max(one).max(min_half_width);
            let n = profile.n();
            let intervals = (0..m)
                .map(|c| open_interval(m, n, profile.position_sum(c), w))
                .collect();
            (intervals, Some(w))
        }
    };
    Ok(PositionWindows {
        m,
        source,
        intervals,
        half_width,
    })
}

impl PositionWindows {
    #[cfg(test)]
    pub(crate) fn for_tests(intervals: Vec<Option<(usize, usize)>>) -> Self {
        PositionWindows {
            m: intervals.len(),
            source: WindowSource::AvgKt,
            intervals,
            half_width: None,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn source(&self) -> WindowSource {
        self.source
    }

    /// Half-width of average-distance windows.
    pub fn half_width(&self) -> Option<Ratio<i64>> {
        self.half_width
    }

    pub fn interval(&self, c: usize) -> Option<(usize, usize)> {
        self.intervals[c]
    }

    /// Candidates allowed at position `i`.
    pub fn window(&self, i: usize) -> Vec<usize> {
        (0..self.m)
            .filter(|&c| matches!(self.intervals[c], Some((lo, hi)) if lo <= i && i <= hi))
            .collect()
    }

    pub(crate) fn window_mask(&self, i: usize) -> u64 {
        self.window(i).into_iter().fold(0, |acc, c| acc | 1 << c)
    }

    pub fn max_window_size(&self) -> usize {
        (0..self.m).map(|i| self.window(i).len()).max().unwrap_or(0)
    }

    /// Whether some ranking puts every candidate inside its window.
    pub fn is_feasible(&self) -> bool {
        // earliest-deadline assignment is optimal for interval matching
        let mut used = vec![false; self.m];
        for i in 0..self.m {
            let pick = (0..self.m)
                .filter(|&c| !used[c])
                .filter_map(|c| self.intervals[c].map(|iv| (iv, c)))
                .filter(|&((lo, hi), _)| lo <= i && i <= hi)
                .min_by_key(|&((_, hi), c)| (hi, c));
            match pick {
                Some((_, c)) => used[c] = true,
                None => return false,
            }
        }
        true
    }

    /// Same source with average-distance half-width raised to at least `w`.
    pub fn widened(&self, profile: &Profile, w: Ratio<i64>) -> Result<PositionWindows> {
        match self.half_width {
            Some(cur) if cur >= w => Ok(self.clone()),
            Some(_) => build_windows(profile, self.source, w),
            None => Ok(self.clone()),
        }
    }
}

/// Window-size bound for one window source on one profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub source: WindowSource,
    /// Largest window, computed without the solver's widening to width one.
    pub max_window: usize,
    pub bound: Ratio<i64>,
    /// False when the bound makes no claim about this profile.
    pub applies: bool,
    pub holds: bool,
}

/// Compares the largest window against its bound: `4d` for average-distance
/// windows, `4λd - 1` for scaled windows when `d ≥ 1`, and `6·r_max` for range
/// windows.
pub fn lemma_window_check(profile: &Profile, source: WindowSource) -> Result<LemmaCheck> {
    let m = profile.m();
    let n = profile.n();
    let d = avg_kt(profile);
    let raw = |w: Ratio<i64>| {
        (0..m)
            .map(|i| {
                (0..m)
                    .filter(|&c| {
                        matches!(open_interval(m, n, profile.position_sum(c), w),
                            Some((lo, hi)) if lo <= i && i <= hi)
                    })
                    .count()
            })
            .max()
            .unwrap_or(0)
    };
    let (max_window, bound, applies) = match source {
        WindowSource::AvgKt => (raw(d), d * 4, true),
        WindowSource::Scaled(l) => {
            let l = l.ratio();
            let w = d * Ratio::new(*l.numer() as i64, *l.denom() as i64);
            (raw(w), w * 4 - 1, d >= Ratio::from_integer(1))
        }
        WindowSource::Range => {
            let windows = build_windows(profile, source, Ratio::from_integer(0))?;
            let r = max_range(profile) as i64;
            (windows.max_window_size(), Ratio::from_integer(6 * r), true)
        }
    };
    let holds = !applies || Ratio::from_integer(max_window as i64) <= bound;
    Ok(LemmaCheck {
        source,
        max_window,
        bound,
        applies,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_votes_pin_every_candidate() {
        let p = Profile::from_orders([vec![2, 0, 1], vec![2, 0, 1]]).unwrap();
        let w = build_windows(&p, WindowSource::AvgKt, Ratio::from_integer(0)).unwrap();
        assert_eq!(w.window(0), vec![2]);
        assert_eq!(w.window(1), vec![0]);
        assert_eq!(w.window(2), vec![1]);
        assert!(w.is_feasible());
        let r = build_windows(&p, WindowSource::Range, Ratio::from_integer(0)).unwrap();
        assert_eq!(r.max_window_size(), 1);
    }

    #[test]
    fn open_interval_excludes_boundary() {
        // average position 1, half-width 1: only position 1
        assert_eq!(open_interval(3, 2, 2, Ratio::from_integer(1)), Some((1, 1)));
        assert_eq!(open_interval(3, 2, 1, Ratio::from_integer(1)), Some((0, 1)));
        assert_eq!(open_interval(3, 1, 0, Ratio::new(1, 2)), Some((0, 0)));
    }

    #[test]
    fn widening_only_grows() {
        let p = Profile::from_orders([vec![0, 1, 2, 3], vec![1, 0, 3, 2]]).unwrap();
        let base = build_windows(&p, WindowSource::AvgKt, Ratio::from_integer(0)).unwrap();
        let wide = base.widened(&p, Ratio::from_integer(3)).unwrap();
        for c in 0..4 {
            let (a, b) = base.interval(c).unwrap();
            let (x, y) = wide.interval(c).unwrap();
            assert!(x <= a && b <= y);
        }
        assert_eq!(wide.max_window_size(), 4);
    }

    #[test]
    fn infeasible_windows_are_detected() {
        let w = PositionWindows {
            m: 2,
            source: WindowSource::AvgKt,
            intervals: vec![Some((0, 0)), Some((0, 0))],
            half_width: None,
        };
        assert!(!w.is_feasible());
    }

    #[test]
    fn lemma_holds_on_swap_profile() {
        let p = Profile::from_orders([vec![0, 1, 2, 3], vec![1, 0, 3, 2]]).unwrap();
        for source in [
            WindowSource::AvgKt,
            WindowSource::Range,
            WindowSource::Scaled(Lambda::new(3, 2).unwrap()),
        ] {
            let check = lemma_window_check(&p, source).unwrap();
            assert!(check.holds, "{check:?}");
        }
    }
}
