use rayon::prelude::*;
use serde::Serialize;

use super::{DihedralGroup, SearchCaps, SyllableSearch};
use crate::freeword::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: u64,
    pub lower: u64,
    pub upper: u64,
}

impl DihedralGroup {
    /// Syllabic-length bounds for `u^n`, `1 <= n <= nmax`.
    pub fn growth_table(&self, u: &Word, nmax: u64, caps: SearchCaps) -> Vec<GrowthRow> {
        let search = SyllableSearch::new(*self, caps);
        (1..=nmax)
            .into_par_iter()
            .map(|n| {
                let b = search.bounds(&u.pow(n as i64));
                GrowthRow { n, lower: b.lower, upper: b.upper }
            })
            .collect()
    }
}

/// Least-squares slope of `lower` against `n`.
pub fn lower_slope(rows: &[GrowthRow]) -> f64 {
    let k = rows.len() as f64;
    if rows.len() < 2 {
        return 0.0;
    }
    let mx = rows.iter().map(|r| r.n as f64).sum::<f64>() / k;
    let my = rows.iter().map(|r| r.lower as f64).sum::<f64>() / k;
    let sxy: f64 = rows.iter().map(|r| (r.n as f64 - mx) * (r.lower as f64 - my)).sum();
    let sxx: f64 = rows.iter().map(|r| (r.n as f64 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeword::parse;

    #[test]
    fn identity_rows_are_zero() {
        let g = DihedralGroup::new(3).unwrap();
        let rows = g.growth_table(&Word::identity(), 4, SearchCaps::default());
        assert!(rows.iter().all(|r| r.lower == 0 && r.upper == 0));
        assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn conjugated_generator_stays_short() {
        let g = DihedralGroup::new(3).unwrap();
        let rows = g.growth_table(&parse("a b a^-1").unwrap(), 6, SearchCaps::default());
        assert!(rows.iter().all(|r| r.upper <= 3 && r.lower <= r.upper));
    }

    #[test]
    fn slope_of_line() {
        let rows: Vec<GrowthRow> =
            (1..=5).map(|n| GrowthRow { n, lower: 2 * n + 1, upper: 100 }).collect();
        assert!((lower_slope(&rows) - 2.0).abs() < 1e-12);
    }
}
