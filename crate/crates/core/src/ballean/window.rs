//! Explicit ball tables on `{0..N}` with radii `{0..R}`, and an exhaustive
//! check of the three ballean axioms on them.
//!
//! A window truncates the radii the axioms quantify over. When a required
//! radius is missing, the failure only counts as a real counterexample if
//! the relevant ball at the offending point has stopped growing at the cap
//! (`B(x, R) == B(x, R-1)`). Otherwise it is reported as window-limited.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::error::{domain, Error, Result};

/// The named ball tables the CLI understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `[x-r, x+r]`
    Symmetric,
    /// `[x, x+r]`
    Forward,
    /// `[x-2r, x+2r]`
    Doubling,
    /// `{x}`
    Trivial,
    /// `{x}` at radius 0, everything otherwise
    Bounded,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Symmetric,
        Preset::Forward,
        Preset::Doubling,
        Preset::Trivial,
        Preset::Bounded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Symmetric => "symmetric",
            Preset::Forward => "forward",
            Preset::Doubling => "doubling",
            Preset::Trivial => "trivial",
            Preset::Bounded => "bounded",
        }
    }

    fn bounds(self, x: usize, r: usize, n: usize) -> (usize, usize) {
        match self {
            Preset::Symmetric => (x.saturating_sub(r), (x + r).min(n)),
            Preset::Forward => (x, (x + r).min(n)),
            Preset::Doubling => (x.saturating_sub(2 * r), (x + 2 * r).min(n)),
            Preset::Trivial => (x, x),
            Preset::Bounded if r == 0 => (x, x),
            Preset::Bounded => (0, n),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Preset::ALL.iter().map(|p| p.name()).collect();
                domain(format!("unknown window preset {s:?} (expected one of {})", names.join(", ")))
            })
    }
}

/// A ball structure on `{0..=size}` with radii `{0..=radius_cap}`.
#[derive(Clone, PartialEq, Eq)]
pub struct WindowBallean {
    size: usize,
    radius_cap: usize,
    balls: Vec<FixedBitSet>,
}

impl fmt::Debug for WindowBallean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WindowBallean")
            .field("size", &self.size)
            .field("radius_cap", &self.radius_cap)
            .finish_non_exhaustive()
    }
}

impl WindowBallean {
    pub fn preset(preset: Preset, size: usize, radius_cap: usize) -> Result<Self> {
        Self::from_fn(size, radius_cap, |x, r| {
            let (lo, hi) = preset.bounds(x, r, size);
            lo..=hi
        })
    }

    /// Builds a table from `ball(x, r)`, checking `x ∈ ball(x, r)` and that
    /// balls grow with the radius.
    pub fn from_fn<I>(size: usize, radius_cap: usize, ball: impl Fn(usize, usize) -> I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if radius_cap == 0 {
            return Err(domain("a window needs at least the radii 0 and 1"));
        }
        let points = size + 1;
        let mut balls: Vec<FixedBitSet> = Vec::with_capacity(points * (radius_cap + 1));
        for r in 0..=radius_cap {
            for x in 0..points {
                let mut set = FixedBitSet::with_capacity(points);
                for y in ball(x, r) {
                    if y >= points {
                        return Err(domain(format!("ball({x}, {r}) leaves the window at {y}")));
                    }
                    set.insert(y);
                }
                if !set.contains(x) {
                    return Err(domain(format!("ball({x}, {r}) does not contain its centre")));
                }
                if r > 0 && !balls[(r - 1) * points + x].is_subset(&set) {
                    return Err(domain(format!("ball({x}, {r}) is smaller than ball({x}, {})", r - 1)));
                }
                balls.push(set);
            }
        }
        Ok(WindowBallean {
            size,
            radius_cap,
            balls,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn radius_cap(&self) -> usize {
        self.radius_cap
    }

    pub fn points(&self) -> usize {
        self.size + 1
    }

    pub fn ball(&self, x: usize, r: usize) -> &FixedBitSet {
        &self.balls[r * self.points() + x]
    }

    /// `B(A, r)`, the union of the balls around the members of `a`.
    pub fn ball_around(&self, a: &FixedBitSet, r: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.points());
        for x in a.ones() {
            out.union_with(self.ball(x, r));
        }
        out
    }

    /// `B*(x, r) = {y : x ∈ B(y, r)}` for every `x`, at one radius.
    fn co_balls(&self, r: usize) -> Vec<FixedBitSet> {
        let mut out = vec![FixedBitSet::with_capacity(self.points()); self.points()];
        for y in 0..self.points() {
            for x in self.ball(y, r).ones() {
                out[x].insert(y);
            }
        }
        out
    }

    /// Least radius whose balls cover `a`, if any radius within the cap does.
    pub fn covering_radius(&self, a: &FixedBitSet) -> Option<usize> {
        (0..=self.radius_cap).find(|&r| self.ball_around(a, r).count_ones(..) == self.points())
    }

    fn stationary(&self, x: usize) -> bool {
        self.ball(x, self.radius_cap) == self.ball(x, self.radius_cap - 1)
    }

    pub fn check_axioms(&self) -> AxiomReport {
        AxiomReport {
            outcomes: [self.axiom_symmetry(), self.axiom_composition(), self.axiom_connectivity()],
        }
    }

    /// (1): for every α some α' with `B(x,α) ⊆ B*(x,α')`, and for every β
    /// some β' with `B*(x,β) ⊆ B(x,β')`.
    fn axiom_symmetry(&self) -> AxiomOutcome {
        let cap = self.radius_cap;
        let co: Vec<Vec<FixedBitSet>> = (0..=cap).map(|r| self.co_balls(r)).collect();
        let co_stationary = |x: usize| co[cap][x] == co[cap - 1][x];
        let mut outcome = AxiomOutcome::new(Axiom::Symmetry);

        for a in 0..=cap {
            let need = (0..self.points())
                .map(|x| (0..=cap).find(|&r| self.ball(x, a).is_subset(&co[r][x])))
                .collect::<Vec<_>>();
            if let Some(x) = need.iter().position(Option::is_none) {
                let y = self.ball(x, a).difference(&co[cap][x]).next().expect("not a subset");
                outcome.record_gap(co_stationary(x), Counterexample {
                    x,
                    y,
                    radii: vec![a],
                    detail: format!("B({x},{a}) ⊄ B*({x},α') for every α' <= {cap}"),
                });
            } else {
                outcome.note_radius(need.into_iter().flatten().max().unwrap_or(0));
            }
        }
        for b in 0..=cap {
            let need = (0..self.points())
                .map(|x| (0..=cap).find(|&r| co[b][x].is_subset(self.ball(x, r))))
                .collect::<Vec<_>>();
            if let Some(x) = need.iter().position(Option::is_none) {
                let y = co[b][x].difference(self.ball(x, cap)).next().expect("not a subset");
                outcome.record_gap(self.stationary(x), Counterexample {
                    x,
                    y,
                    radii: vec![b],
                    detail: format!("B*({x},{b}) ⊄ B({x},β') for every β' <= {cap}"),
                });
            } else {
                outcome.note_radius(need.into_iter().flatten().max().unwrap_or(0));
            }
        }
        outcome
    }

    /// (2): for every α, β some γ with `B(B(x,α),β) ⊆ B(x,γ)`.
    fn axiom_composition(&self) -> AxiomOutcome {
        let cap = self.radius_cap;
        let mut outcome = AxiomOutcome::new(Axiom::Composition);
        for a in 0..=cap {
            for b in 0..=cap {
                let mut worst = Some(0);
                let mut failure = None;
                for x in 0..self.points() {
                    let reach = self.ball_around(self.ball(x, a), b);
                    match (0..=cap).find(|&g| reach.is_subset(self.ball(x, g))) {
                        Some(g) => worst = worst.map(|w: usize| w.max(g)),
                        None => {
                            let y = reach.difference(self.ball(x, cap)).next().expect("not a subset");
                            failure = Some((x, y));
                            worst = None;
                            break;
                        }
                    }
                }
                match (worst, failure) {
                    (Some(g), _) => outcome.note_radius(g),
                    (None, Some((x, y))) => outcome.record_gap(self.stationary(x), Counterexample {
                        x,
                        y,
                        radii: vec![a, b],
                        detail: format!("B(B({x},{a}),{b}) ⊄ B({x},γ) for every γ <= {cap}"),
                    }),
                    (None, None) => unreachable!(),
                }
            }
        }
        outcome
    }

    /// (3): any two points lie in a common ball.
    fn axiom_connectivity(&self) -> AxiomOutcome {
        let cap = self.radius_cap;
        let mut outcome = AxiomOutcome::new(Axiom::Connectivity);
        for x in 0..self.points() {
            let widest = self.ball(x, cap);
            if let Some(y) = (0..self.points()).find(|&y| !widest.contains(y)) {
                outcome.record_gap(self.stationary(x), Counterexample {
                    x,
                    y,
                    radii: vec![],
                    detail: format!("{y} ∉ B({x},α) for every α <= {cap}"),
                });
            } else {
                let need = (0..=cap)
                    .find(|&r| self.ball(x, r).count_ones(..) == self.points())
                    .expect("the widest ball is full");
                outcome.note_radius(need);
            }
        }
        outcome
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Symmetry,
    Composition,
    Connectivity,
}

impl Axiom {
    pub fn number(self) -> u8 {
        match self {
            Axiom::Symmetry => 1,
            Axiom::Composition => 2,
            Axiom::Connectivity => 3,
        }
    }
}

/// A point `x` (and, for axiom (1), its offending neighbour `y`) together
/// with the radii that could not be matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub x: usize,
    pub y: usize,
    pub radii: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    pub ok: bool,
    /// Some requirement needed a radius beyond the cap, and the ball had
    /// not stopped growing there.
    pub window_limited: bool,
    /// Largest witness radius used where one was found.
    pub max_witness_radius: usize,
    pub counterexample: Option<Counterexample>,
}

impl AxiomOutcome {
    fn new(axiom: Axiom) -> Self {
        AxiomOutcome {
            axiom,
            ok: true,
            window_limited: false,
            max_witness_radius: 0,
            counterexample: None,
        }
    }

    fn note_radius(&mut self, r: usize) {
        self.max_witness_radius = self.max_witness_radius.max(r);
    }

    fn record_gap(&mut self, genuine: bool, cx: Counterexample) {
        if genuine {
            if self.ok {
                self.ok = false;
                self.counterexample = Some(cx);
            }
        } else {
            self.window_limited = true;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub outcomes: [AxiomOutcome; 3],
}

impl AxiomReport {
    pub fn get(&self, axiom: Axiom) -> &AxiomOutcome {
        &self.outcomes[axiom.number() as usize - 1]
    }

    pub fn all_ok(&self) -> bool {
        self.outcomes.iter().all(|o| o.ok)
    }

    pub fn window_limited(&self) -> bool {
        self.outcomes.iter().any(|o| o.window_limited)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oks(report: &AxiomReport) -> [bool; 3] {
        [report.outcomes[0].ok, report.outcomes[1].ok, report.outcomes[2].ok]
    }

    #[test]
    fn symmetric_window_passes() {
        let w = WindowBallean::preset(Preset::Symmetric, 50, 25).unwrap();
        let report = w.check_axioms();
        assert_eq!(oks(&report), [true, true, true]);
        // radii beyond 25 are needed to join 0 and 50
        assert!(report.get(Axiom::Connectivity).window_limited);
        assert!(!report.get(Axiom::Symmetry).window_limited);
    }

    #[test]
    fn symmetric_window_with_full_radii_is_unconditional() {
        let w = WindowBallean::preset(Preset::Symmetric, 20, 40).unwrap();
        let report = w.check_axioms();
        assert!(report.all_ok());
        assert!(!report.window_limited());
    }

    #[test]
    fn forward_window_fails_the_first_axiom() {
        let w = WindowBallean::preset(Preset::Forward, 50, 25).unwrap();
        let report = w.check_axioms();
        let first = report.get(Axiom::Symmetry);
        assert!(!first.ok);
        let cx = first.counterexample.as_ref().unwrap();
        // x+1 lies in the forward ball but never in a co-ball at x
        assert!(w.ball(cx.x, cx.radii[0]).contains(cx.y));
        assert!(cx.y > cx.x);
    }

    #[test]
    fn trivial_window_is_disconnected() {
        let w = WindowBallean::preset(Preset::Trivial, 10, 5).unwrap();
        assert_eq!(oks(&w.check_axioms()), [true, true, false]);
    }

    #[test]
    fn bounded_and_doubling_windows_are_balleans() {
        for p in [Preset::Bounded, Preset::Doubling] {
            let w = WindowBallean::preset(p, 30, 15).unwrap();
            assert!(w.check_axioms().all_ok(), "{p}");
        }
    }

    #[test]
    fn invalid_tables_are_rejected() {
        assert!(WindowBallean::from_fn(5, 2, |x, _| [x + 1]).is_err());
        assert!(WindowBallean::from_fn(5, 2, |x, r| if r == 2 { vec![x] } else { vec![x, 0] }).is_err());
        assert!(WindowBallean::from_fn(5, 2, |x, _| [x, 9]).is_err());
        assert!(WindowBallean::preset(Preset::Symmetric, 5, 0).is_err());
    }

    #[test]
    fn preset_names() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("spiral".parse::<Preset>().is_err());
    }
}
