//! Distances in the cone-off `T̂`, computed along the `T`-geodesic.
//!
//! Each axis meets the geodesic `[x, y]` in a (possibly empty) interval. A path in `T̂`
//! projects onto `[x, y]` as unit steps plus jumps of cost 2 inside one interval, so the
//! cheapest such walk is found by a left-to-right dynamic program over path positions.

use serde::Serialize;

use super::{CosetTree, CosetVertex};
use crate::freeword::Letter;

/// Positions `start..=end` (in edges from `x`) where one axis runs along the geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxisInterval {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DhatDistance {
    /// Number of axes in a minimal cover of the geodesic's edges.
    pub lower: u64,
    /// Interval-cover dynamic program value.
    pub upper: u64,
    /// Set when an explicit breadth-first search on the cone-off ball returned `upper`.
    pub exact: bool,
    pub tree_distance: u64,
    pub intervals: Vec<AxisInterval>,
}

impl CosetTree {
    /// Intervals where the axes through cosets of `[x, y]` run along it.
    pub fn axis_intervals(&self, x: &CosetVertex, y: &CosetVertex) -> Vec<AxisInterval> {
        let m = self.group().m();
        let (_, atoms) = self.geodesic_steps(x, y);
        let n = atoms.len();
        let len = 2 * n;
        // continued[i][t]: the line g_i·γ_t already belongs to a chain started earlier.
        let mut continued = vec![[false; 2]; n + 1];
        let mut out = Vec::new();
        let idx = |l: Letter| if l == Letter::A { 0 } else { 1 };
        for i in 0..=n {
            for t in [Letter::A, Letter::B] {
                if continued[i][idx(t)] {
                    continue;
                }
                let (mut j, mut cur) = (i, t);
                while j < n {
                    let q = atoms[j];
                    // g_j·γ_t contains g_j·t and g_j·t^{-1}Δ = g_j·(t̄, t; m-1).
                    let next = if q.len == 1 && q.start == cur {
                        cur
                    } else if q.len == m - 1 && q.start == cur.other() {
                        cur.tilde_pow(m, 1)
                    } else {
                        break;
                    };
                    j += 1;
                    cur = next;
                    continued[j][idx(cur)] = true;
                }
                out.push(AxisInterval { start: (2 * i).saturating_sub(1), end: (2 * j + 1).min(len) });
            }
        }
        out
    }

    /// Bounds on `d_T̂(x, y)` from the interval structure along `[x, y]`.
    pub fn dhat(&self, x: &CosetVertex, y: &CosetVertex) -> DhatDistance {
        let intervals = self.axis_intervals(x, y);
        let len = intervals.iter().map(|i| i.end).max().unwrap_or(0);
        let upper = interval_dp(len, &intervals);
        let lower = min_cover(len, &intervals);
        DhatDistance { lower, upper, exact: false, tree_distance: len as u64, intervals }
    }
}

fn interval_dp(len: usize, intervals: &[AxisInterval]) -> u64 {
    let mut dp = vec![0u64; len + 1];
    let mut running = vec![u64::MAX; intervals.len()];
    for p in 1..=len {
        let mut best = dp[p - 1] + 1;
        for (k, iv) in intervals.iter().enumerate() {
            if p >= 2 && p - 2 >= iv.start && p - 2 <= iv.end {
                running[k] = running[k].min(dp[p - 2]);
            }
            if p <= iv.end && running[k] != u64::MAX {
                best = best.min(running[k] + 2);
            }
        }
        dp[p] = best;
    }
    dp[len]
}

fn min_cover(len: usize, intervals: &[AxisInterval]) -> u64 {
    let mut pos = 0;
    let mut count = 0;
    while pos < len {
        let reach = intervals
            .iter()
            .filter(|iv| iv.start <= pos)
            .map(|iv| iv.end)
            .max()
            .unwrap_or(pos);
        if reach <= pos {
            // every edge lies on an axis; this is unreachable for intervals from a geodesic
            pos += 1;
        } else {
            pos = reach;
        }
        count += 1;
    }
    count
}
