//! The coarse-equivalence criterion against the cardinal ballean, checked
//! around a base point `x0` of a [`WindowBallean`], and the large subset
//! `L` with its rank map that the criterion produces.
//!
//! A shell is `B(x0, α+β) \ B(x0, α)`. The criterion asks for a step `γ`
//! whose shells are all nonempty, and for shells of every fixed step to be
//! uniformly bounded.

use fixedbitset::FixedBitSet;

use super::WindowBallean;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceConditions {
    /// Every shell of step `γ` with `α+γ <= R` is nonempty.
    pub shells_nonempty: bool,
    /// For every step `β <= R` the shells fit inside balls of one radius.
    pub shells_bounded: bool,
    /// First `α` whose `γ`-shell is empty.
    pub empty_shell: Option<usize>,
    /// First step `β` with no common bounding radius.
    pub unbounded_step: Option<usize>,
    /// Bounding radius found for each step `β = 0..=R`.
    pub bounds: Vec<Option<usize>>,
}

impl EquivalenceConditions {
    pub fn both(&self) -> bool {
        self.shells_nonempty && self.shells_bounded
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    /// The radii `0, γ, 2γ, …` with `α+γ <= R`.
    pub radii: Vec<usize>,
    /// `x(α)`, the least point of each `γ`-shell, indexed like `radii`.
    pub points: Vec<usize>,
    /// Least `δ` with `B(L, δ)` covering the window, if any `δ <= R` does.
    pub large_radius: Option<usize>,
}

impl EquivalenceWitness {
    /// `h(x(α))`: the rank of `α` among the radii.
    pub fn rank(&self, x: usize) -> Option<usize> {
        self.points.iter().position(|&p| p == x)
    }

    pub fn is_large(&self) -> bool {
        self.large_radius.is_some()
    }
}

impl WindowBallean {
    fn shell(&self, x0: usize, inner: usize, outer: usize) -> FixedBitSet {
        let mut s = self.ball(x0, outer).clone();
        s.difference_with(self.ball(x0, inner));
        s
    }

    fn check_base(&self, x0: usize, step: usize) -> Result<()> {
        if x0 > self.size() {
            return Err(domain(format!("base point {x0} lies outside the window 0..={}", self.size())));
        }
        if step == 0 || step > self.radius_cap() {
            return Err(domain(format!(
                "step must lie in 1..={}, got {step}",
                self.radius_cap()
            )));
        }
        Ok(())
    }

    /// Whether `s` lies inside some `B(y, r)`.
    fn fits_in_ball(&self, s: &FixedBitSet, r: usize) -> bool {
        s.is_clear() || (0..self.points()).any(|y| s.is_subset(self.ball(y, r)))
    }

    pub fn equivalence_conditions(&self, x0: usize, step: usize) -> Result<EquivalenceConditions> {
        self.check_base(x0, step)?;
        let cap = self.radius_cap();

        let empty_shell = (0..=cap - step).find(|&a| self.shell(x0, a, a + step).is_clear());

        let bounds: Vec<Option<usize>> = (0..=cap)
            .map(|b| {
                let shells: Vec<FixedBitSet> = (0..=cap - b).map(|a| self.shell(x0, a, a + b)).collect();
                (0..=cap).find(|&r| shells.iter().all(|s| self.fits_in_ball(s, r)))
            })
            .collect();
        let unbounded_step = bounds.iter().position(Option::is_none);

        Ok(EquivalenceConditions {
            shells_nonempty: empty_shell.is_none(),
            shells_bounded: unbounded_step.is_none(),
            empty_shell,
            unbounded_step,
            bounds,
        })
    }

    pub fn equivalence_construction(&self, x0: usize, step: usize) -> Result<EquivalenceWitness> {
        let conditions = self.equivalence_conditions(x0, step)?;
        if let Some(a) = conditions.empty_shell {
            return Err(Error::Construction(format!(
                "the shell B({x0},{}) \\ B({x0},{a}) is empty",
                a + step
            )));
        }
        if let Some(b) = conditions.unbounded_step {
            return Err(Error::Construction(format!(
                "shells of step {b} around {x0} are not bounded by any radius <= {}",
                self.radius_cap()
            )));
        }

        let radii: Vec<usize> = (0..)
            .map(|k| k * step)
            .take_while(|a| a + step <= self.radius_cap())
            .collect();
        let points: Vec<usize> = radii
            .iter()
            .map(|&a| {
                self.shell(x0, a, a + step)
                    .ones()
                    .next()
                    .expect("shells are nonempty")
            })
            .collect();
        let mut large = FixedBitSet::with_capacity(self.points());
        points.iter().for_each(|&p| large.insert(p));
        let large_radius = self.covering_radius(&large);

        Ok(EquivalenceWitness {
            radii,
            points,
            large_radius,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballean::Preset;

    #[test]
    fn symmetric_window_meets_both_conditions() {
        let w = WindowBallean::preset(Preset::Symmetric, 50, 50).unwrap();
        let c = w.equivalence_conditions(0, 1).unwrap();
        assert!(c.both(), "{c:?}");

        let witness = w.equivalence_construction(0, 1).unwrap();
        assert_eq!(witness.radii, (0..50).collect::<Vec<_>>());
        assert_eq!(witness.points, (1..=50).collect::<Vec<_>>());
        assert_eq!(witness.large_radius, Some(1));
        for a in 0..50 {
            assert_eq!(witness.rank(a + 1), Some(a));
        }
    }

    #[test]
    fn bounded_window_has_empty_shells() {
        let w = WindowBallean::preset(Preset::Bounded, 20, 10).unwrap();
        for step in 1..10 {
            let c = w.equivalence_conditions(0, step).unwrap();
            assert!(!c.shells_nonempty);
            assert_eq!(c.empty_shell, Some(1));
        }
        // with γ = R only the shell at α = 0 is inside the window
        assert!(w.equivalence_conditions(0, 10).unwrap().shells_nonempty);
        assert!(matches!(w.equivalence_construction(0, 1), Err(Error::Construction(_))));
    }

    #[test]
    fn doubling_window() {
        let w = WindowBallean::preset(Preset::Doubling, 64, 32).unwrap();
        assert!(w.equivalence_conditions(0, 1).unwrap().both());
        let witness = w.equivalence_construction(0, 1).unwrap();
        assert_eq!(witness.points, (0..32).map(|a| 2 * a + 1).collect::<Vec<_>>());
        assert!(witness.large_radius.unwrap() <= 1);
    }

    #[test]
    fn single_block() {
        let w = WindowBallean::preset(Preset::Symmetric, 10, 10).unwrap();
        let witness = w.equivalence_construction(0, 10).unwrap();
        assert_eq!(witness.radii, [0]);
        assert_eq!(witness.points, [1]);
        assert_eq!(witness.large_radius, Some(9));
    }

    #[test]
    fn parameters_are_validated() {
        let w = WindowBallean::preset(Preset::Symmetric, 10, 5).unwrap();
        assert!(w.equivalence_conditions(0, 0).is_err());
        assert!(w.equivalence_conditions(0, 6).is_err());
        assert!(w.equivalence_conditions(11, 1).is_err());
    }
}
