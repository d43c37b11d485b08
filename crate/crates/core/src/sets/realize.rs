//! Realizing a finite `A ∋ 0` as `Δ(X ∪ Y)` with thin `X` and `Y`.
//!
//! Enumerate `A = {a_0 = 0 < a_1 < …}` and pad with `a_α = 0`. Put
//! `b_α = max(α, a_α)` and choose the triangular array `x_{αβ}` (`β <= α`)
//! as small as possible subject to
//!
//! ```text
//! x_{α0}     > x_{(α-1)(α-1)} + 2·b_α
//! x_{α(β+1)} > x_{αβ} + 2·b_α
//! ```
//!
//! Then `X = {x_{αβ}}` and `Y = {x_{αβ} + a_β}`. Column `β` supplies one
//! witness of the difference `a_β` per row.

use std::collections::BTreeSet;

use super::SetSpec;
use crate::error::{precondition, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    a: Vec<u64>,
    rows: Vec<Vec<u64>>,
    extra: BTreeSet<u64>,
}

impl Realization {
    pub fn construct(a: &BTreeSet<u64>, depth: usize) -> Result<Self> {
        if !a.contains(&0) {
            return Err(precondition("the set to realize must contain 0"));
        }
        if depth < a.len() {
            return Err(precondition(format!(
                "depth {depth} is smaller than |A| = {}",
                a.len()
            )));
        }
        let a: Vec<u64> = a.iter().copied().collect();
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(depth);
        let overflow = || Error::Construction("the array leaves u64".into());
        for alpha in 0..depth {
            let b = (alpha as u64).max(a.get(alpha).copied().unwrap_or(0));
            let step = b.checked_mul(2).and_then(|s| s.checked_add(1)).ok_or_else(overflow)?;
            let mut row = Vec::with_capacity(alpha + 1);
            let first = match rows.last() {
                None => 0,
                Some(prev) => prev.last().expect("rows are nonempty").checked_add(step).ok_or_else(overflow)?,
            };
            row.push(first);
            for _ in 0..alpha {
                let next = row.last().expect("nonempty").checked_add(step).ok_or_else(overflow)?;
                row.push(next);
            }
            rows.push(row);
        }
        Ok(Realization {
            a,
            rows,
            extra: BTreeSet::new(),
        })
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    pub fn target(&self) -> &[u64] {
        &self.a
    }

    /// `x_{αβ}` for `β <= α`.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    fn a_at(&self, beta: usize) -> u64 {
        self.a.get(beta).copied().unwrap_or(0)
    }

    /// `X` built from the first `rows` rows.
    pub fn x(&self, rows: usize) -> BTreeSet<u64> {
        self.rows[..rows].iter().flatten().copied().collect()
    }

    /// `Y` built from the first `rows` rows.
    pub fn y(&self, rows: usize) -> BTreeSet<u64> {
        self.rows[..rows]
            .iter()
            .flat_map(|row| row.iter().enumerate().map(|(beta, &x)| x + self.a_at(beta)))
            .collect()
    }

    /// `X ∪ Y` from the first `rows` rows; points added with
    /// [`Realization::with_point`] belong to the full depth only.
    pub fn union(&self, rows: usize) -> BTreeSet<u64> {
        let mut s = self.x(rows);
        s.extend(self.y(rows));
        if rows == self.depth() {
            s.extend(&self.extra);
        }
        s
    }

    pub fn to_spec(&self) -> SetSpec {
        SetSpec::Finite(self.union(self.depth()))
    }

    /// The same construction with one more point in the full union.
    pub fn with_point(mut self, p: u64) -> Self {
        self.extra.insert(p);
        self
    }

    /// `#{m ∈ S : m+d ∈ S}`
    pub fn witness_count(set: &BTreeSet<u64>, d: u64) -> usize {
        set.iter().filter(|&&m| set.contains(&(m + d))).count()
    }

    /// Compares witness counts at half depth and full depth for every
    /// `d <= d_max`. Members of `A` need at least `K - |A|` witnesses; other
    /// differences must not gain any.
    pub fn verify(&self, d_max: u64) -> RealizationReport {
        let depth = self.depth();
        let (half, full) = (self.union(depth / 2), self.union(depth));
        let required = depth - self.a.len();
        let checks: Vec<DifferenceCheck> = (0..=d_max)
            .map(|d| {
                let in_target = self.a.binary_search(&d).is_ok();
                let half_count = Self::witness_count(&half, d);
                let full_count = Self::witness_count(&full, d);
                let ok = if in_target {
                    full_count >= required
                } else {
                    half_count == full_count
                };
                DifferenceCheck {
                    d,
                    in_target,
                    half_count,
                    full_count,
                    ok,
                }
            })
            .collect();
        let offending = checks.iter().find(|c| !c.ok).map(|c| c.d);
        RealizationReport {
            depth,
            required,
            pass: offending.is_none(),
            offending,
            checks,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceCheck {
    pub d: u64,
    pub in_target: bool,
    pub half_count: usize,
    pub full_count: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationReport {
    pub depth: usize,
    /// Witnesses required for members of `A`.
    pub required: usize,
    pub pass: bool,
    /// First difference whose check failed.
    pub offending: Option<u64>,
    pub checks: Vec<DifferenceCheck>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::delta_window;

    fn build(a: &[u64], depth: usize) -> Realization {
        Realization::construct(&a.iter().copied().collect(), depth).unwrap()
    }

    #[test]
    fn minimal_array() {
        let r = build(&[0, 2, 5], 4);
        // b = 0, 2, 5, 3
        assert_eq!(r.rows(), [vec![0], vec![5, 10], vec![21, 32, 43], vec![50, 57, 64, 71]]);
        assert_eq!(r.y(2), [0, 5, 12].into());
    }

    #[test]
    fn zero_only_gives_y_equal_x() {
        let r = build(&[0], 30);
        assert_eq!(r.x(30), r.y(30));
        let top = *r.union(30).last().unwrap();
        assert_eq!(delta_window(&r.to_spec(), top, 8).unwrap(), [0].into());
    }

    #[test]
    fn zero_one_at_depth_forty() {
        let r = build(&[0, 1], 40);
        let top = *r.union(40).last().unwrap();
        assert_eq!(delta_window(&r.to_spec(), top, 8).unwrap(), [0, 1].into());
    }

    #[test]
    fn verification_examples() {
        assert!(build(&[0, 2, 5], 40).verify(8).pass);
        assert!(build(&[0], 10).verify(4).pass);

        let r = build(&[0, 2, 5], 40);
        let last = *r.rows().last().unwrap().first().unwrap();
        let report = r.with_point(last + 3).verify(8);
        assert!(!report.pass);
        assert_eq!(report.offending, Some(3));
    }

    #[test]
    fn rows_of_x_have_growing_gaps() {
        let r = build(&[0, 3, 7], 30);
        let x: Vec<u64> = r.x(30).into_iter().collect();
        let gaps: Vec<u64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        // from row max(A) on, b_α = α and the gaps never shrink
        let from = r.rows()[7][0];
        let start = x.iter().position(|&v| v == from).unwrap();
        assert!(gaps[start..].windows(2).all(|w| w[0] <= w[1]));
        assert!(gaps.last().unwrap() > &50);
    }

    #[test]
    fn preconditions() {
        assert!(Realization::construct(&[1, 2].into(), 10).is_err());
        assert!(Realization::construct(&[0, 1, 2].into(), 2).is_err());
    }
}
