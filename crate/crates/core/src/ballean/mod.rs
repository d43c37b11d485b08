//! Balls of the cardinal ballean and finite window balleans on `{0..N}`.
//!
//! On ordinals every ball is order-convex, so it is stored as an
//! [`OrdinalInterval`]:
//!
//! - forward: `[x, x+α]`
//! - backward: `{y : x ∈ [y, y+α]}` = `[min{y : y+α >= x}, x]`
//! - symmetric: the union of the two.

mod equivalence;
mod window;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::ordinal::{Ordinal, OrdinalInterval};

pub use equivalence::{EquivalenceConditions, EquivalenceWitness};
pub use window::{Axiom, AxiomOutcome, AxiomReport, Counterexample, Preset, WindowBallean};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BallKind {
    Forward,
    Backward,
    Symmetric,
}

impl BallKind {
    pub const ALL: [BallKind; 3] = [BallKind::Forward, BallKind::Backward, BallKind::Symmetric];

    pub fn name(self) -> &'static str {
        match self {
            BallKind::Forward => "fwd",
            BallKind::Backward => "bwd",
            BallKind::Symmetric => "sym",
        }
    }
}

impl fmt::Display for BallKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BallKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fwd" | "forward" => Ok(BallKind::Forward),
            "bwd" | "backward" => Ok(BallKind::Backward),
            "sym" | "symmetric" => Ok(BallKind::Symmetric),
            other => Err(domain(format!(
                "unknown ball kind {other:?} (expected fwd, bwd or sym)"
            ))),
        }
    }
}

/// The ball of radius `radius` around `x`.
pub fn ball(kind: BallKind, x: &Ordinal, radius: &Ordinal) -> Result<OrdinalInterval> {
    let lo = match kind {
        BallKind::Forward => x.clone(),
        BallKind::Backward | BallKind::Symmetric => x.left_quotient(radius),
    };
    let hi = match kind {
        BallKind::Backward => x.clone(),
        BallKind::Forward | BallKind::Symmetric => x.checked_add(radius)?,
    };
    OrdinalInterval::new(lo, hi)
}

/// `B(I, α)`: the union of the balls around the points of an interval.
/// The endpoint maps are monotone, so the union is again an interval.
pub fn ball_around_interval(
    kind: BallKind,
    iv: &OrdinalInterval,
    radius: &Ordinal,
) -> Result<OrdinalInterval> {
    let lo = ball(kind, iv.lo(), radius)?.lo().clone();
    let hi = ball(kind, iv.hi(), radius)?.hi().clone();
    OrdinalInterval::new(lo, hi)
}

/// `α·ω`, the supremum of the n-fold sums of `α`. Every `α`-path from `x`
/// stays inside the symmetric ball of this radius.
pub fn cellular_radius(radius: &Ordinal) -> Result<Ordinal> {
    if radius.is_zero() {
        return Err(domain("cellular radius of 0 is undefined"));
    }
    radius.checked_mul(&Ordinal::omega())
}

/// Points of `{0..n}` joined to `x` by a chain of symmetric `radius`-steps
/// that never leaves the window.
pub fn path_ball_window(x: u64, radius: u64, n: u64) -> Result<BTreeSet<u64>> {
    if x > n {
        return Err(domain(format!("start {x} lies outside the window 0..={n}")));
    }
    let mut seen = BTreeSet::from([x]);
    let mut frontier = vec![x];
    while let Some(y) = frontier.pop() {
        let lo = y.saturating_sub(radius);
        let hi = y.saturating_add(radius).min(n);
        for z in lo..=hi {
            if seen.insert(z) {
                frontier.push(z);
            }
        }
    }
    Ok(seen)
}
