//! Large, small, thick and thin subsets of ω.
//!
//! On ω the symmetric ball of radius `r` is `[x-r, x+r]`, so
//!
//! - large: bounded gaps,
//! - small: the complement of every `B(A, r)` is large,
//! - thick: arbitrarily long runs,
//! - thin: eventually every gap is as long as we like.
//!
//! [`classify`] decides these from the description alone where the rules
//! allow it. [`SetSpec::classify_window`] looks at the top half of a finite
//! window instead and only reports evidence.

use std::fmt;

use fixedbitset::FixedBitSet;

use super::{GrowthClass, IntervalFamily, SetSpec};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn is_decided(self) -> bool {
        self != Verdict::Unknown
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Unknown => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Large,
    Small,
    Thick,
    Thin,
}

impl Property {
    pub const ALL: [Property; 4] = [Property::Large, Property::Small, Property::Thick, Property::Thin];

    pub fn name(self) -> &'static str {
        match self {
            Property::Large => "large",
            Property::Small => "small",
            Property::Thick => "thick",
            Property::Thin => "thin",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub evidence: String,
}

impl Decision {
    fn new(verdict: Verdict, evidence: impl Into<String>) -> Self {
        Decision {
            verdict,
            evidence: evidence.into(),
        }
    }

    fn yes(evidence: impl Into<String>) -> Self {
        Decision::new(Verdict::Yes, evidence)
    }

    fn no(evidence: impl Into<String>) -> Self {
        Decision::new(Verdict::No, evidence)
    }

    fn unknown(evidence: impl Into<String>) -> Self {
        Decision::new(Verdict::Unknown, evidence)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Whether the set is bounded, i.e. finite.
    pub bounded: Verdict,
    pub large: Decision,
    pub small: Decision,
    pub thick: Decision,
    pub thin: Decision,
}

impl Classification {
    pub fn get(&self, p: Property) -> &Decision {
        match p {
            Property::Large => &self.large,
            Property::Small => &self.small,
            Property::Thick => &self.thick,
            Property::Thin => &self.thin,
        }
    }

    /// The implications every decided classification must respect; returns
    /// the first violated one.
    pub fn inconsistency(&self) -> Option<&'static str> {
        let (large, small, thick, thin) = (
            self.large.verdict,
            self.small.verdict,
            self.thick.verdict,
            self.thin.verdict,
        );
        if thin == Verdict::Yes && self.bounded == Verdict::No && small == Verdict::No {
            return Some("an unbounded thin set must be small");
        }
        if thick == Verdict::Yes && small == Verdict::Yes {
            return Some("a thick set cannot be small");
        }
        if large == Verdict::Yes && self.bounded == Verdict::Yes {
            return Some("a large subset of ω is unbounded");
        }
        if large == Verdict::Yes && small == Verdict::Yes {
            return Some("a large set cannot be small");
        }
        if thick == Verdict::Yes && thin == Verdict::Yes {
            return Some("a thick set cannot be thin");
        }
        None
    }

    fn finite(why: &str) -> Self {
        Classification {
            bounded: Verdict::Yes,
            large: Decision::no(format!("{why}: a bounded set has bounded balls")),
            small: Decision::yes(format!("{why}: bounded sets are small")),
            thick: Decision::no(format!("{why}: no ball of every radius fits in a bounded set")),
            thin: Decision::yes(format!("{why}: a bounded set is thin with V = the set")),
        }
    }
}

pub fn classify(s: &SetSpec) -> Classification {
    match s {
        SetSpec::Finite(_) => Classification::finite("finite"),
        SetSpec::Periodic(p) if !p.is_infinite() => Classification::finite("no residues"),
        SetSpec::Periodic(p) => {
            let all = p.residues.len() as u64 == p.period;
            Classification {
                bounded: Verdict::No,
                large: Decision::yes(format!("gaps are eventually at most the period {}", p.period)),
                small: Decision::no("large sets are not small"),
                thick: if all {
                    Decision::yes(format!("contains every m >= {}", p.threshold))
                } else {
                    Decision::no(format!(
                        "runs have length < {} since some residue is missing",
                        p.period
                    ))
                },
                thin: Decision::no(format!("infinitely many pairs at distance <= {}", p.period)),
            }
        }
        SetSpec::Stream { gaps: GrowthClass::Divergent, .. } => Classification {
            bounded: Verdict::No,
            large: Decision::no("gaps tend to infinity"),
            small: Decision::yes("gaps tend to infinity, so B(A, r) has bounded runs and large complement"),
            thick: Decision::no("eventually no two members are adjacent"),
            thin: Decision::yes("gaps tend to infinity"),
        },
        SetSpec::Stream { gaps: GrowthClass::Bounded(b), .. } => Classification {
            bounded: Verdict::No,
            large: Decision::yes(format!("gaps are at most {b}")),
            small: Decision::no("large sets are not small"),
            thick: if *b == 1 {
                Decision::yes("every gap is 1")
            } else {
                Decision::unknown(format!("gaps <= {b} allow but do not force long runs"))
            },
            thin: Decision::no(format!("infinitely many pairs at distance <= {b}")),
        },
        SetSpec::Intervals(family) => classify_intervals(family),
        SetSpec::Union(members) => classify_union(members),
    }
}

fn classify_intervals(f: &IntervalFamily) -> Classification {
    use GrowthClass::*;
    let large = match f.hole_class {
        Bounded(h) => Decision::yes(format!("holes are at most {h}")),
        Divergent => Decision::no("holes tend to infinity"),
    };
    let thick = match f.length_class {
        Divergent => Decision::yes("interval lengths tend to infinity"),
        Bounded(l) => Decision::no(format!("runs are at most {} long", l + 1)),
    };
    let small = match (f.length_class, f.hole_class) {
        (Divergent, _) => Decision::no("thick sets are not small"),
        (_, Bounded(_)) => Decision::no("large sets are not small"),
        (Bounded(l), Divergent) => Decision::yes(format!(
            "B(A, r) has runs of at most {} + 2r points between holes that tend to infinity",
            l + 1
        )),
    };
    let thin = match (f.length_class, f.hole_class) {
        (Bounded(0), Divergent) => Decision::yes("single points with gaps tending to infinity"),
        (Bounded(0), Bounded(h)) => Decision::no(format!("infinitely many pairs at distance <= {}", h + 1)),
        (Bounded(_), Divergent) => Decision::unknown("intervals of positive length may or may not recur"),
        _ => Decision::no("infinitely many intervals with adjacent points"),
    };
    Classification {
        bounded: Verdict::No,
        large,
        small,
        thick,
        thin,
    }
}

fn classify_union(members: &[SetSpec]) -> Classification {
    if members.is_empty() {
        return Classification::finite("empty union");
    }
    let parts: Vec<Classification> = members.iter().map(classify).collect();
    let any = |p: Property, v: Verdict| parts.iter().any(|c| c.get(p).verdict == v);
    let all = |p: Property, v: Verdict| parts.iter().all(|c| c.get(p).verdict == v);

    let bounded = if parts.iter().all(|c| c.bounded == Verdict::Yes) {
        Verdict::Yes
    } else if parts.iter().any(|c| c.bounded == Verdict::No) {
        Verdict::No
    } else {
        Verdict::Unknown
    };
    let all_small = all(Property::Small, Verdict::Yes);

    let large = if any(Property::Large, Verdict::Yes) {
        Decision::yes("a member is large")
    } else if all_small {
        Decision::no("a finite union of small sets is small")
    } else {
        Decision::unknown("no rule decides largeness of this union")
    };
    let small = if all_small {
        Decision::yes("every member is small")
    } else if any(Property::Small, Verdict::No) {
        Decision::no("a member is not small")
    } else {
        Decision::unknown("some member's smallness is undecided")
    };
    let thick = if any(Property::Thick, Verdict::Yes) {
        Decision::yes("a member is thick")
    } else if all_small {
        Decision::no("the union is small")
    } else {
        Decision::unknown("runs of different members may join")
    };
    let infinite_thin = parts
        .iter()
        .filter(|c| c.bounded != Verdict::Yes)
        .collect::<Vec<_>>();
    let thin = if any(Property::Thin, Verdict::No) {
        Decision::no("a member is not thin")
    } else if infinite_thin.len() <= 1 && all(Property::Thin, Verdict::Yes) {
        Decision::yes("one thin member plus bounded ones")
    } else {
        Decision::unknown("members of two thin sets may come close")
    };
    Classification {
        bounded,
        large,
        small,
        thick,
        thin,
    }
}

/// Evidence for one property on a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowVerdict {
    pub holds: bool,
    /// The observed quantity the verdict is based on.
    pub margin: u64,
    /// The verdict on the lower half-window `[N/4, N/2]` differs.
    pub flipped: bool,
}

/// Empirical classification on `[N/2, N]` at radius `D`:
///
/// - large: every point lies within `D` of a member (margin: the largest
///   distance to a member),
/// - thick: some run of at least `2D+1` members (margin: longest run),
/// - thin: consecutive members are more than `2D` apart (margin: smallest
///   gap, or the window size when there are fewer than two members),
/// - small: `B(A, D)` has no run longer than `8D+1`, i.e. its complement is
///   large with radius `4D` (margin: longest run of `B(A, D)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowReport {
    pub window: u64,
    pub radius: u64,
    pub large: WindowVerdict,
    pub small: WindowVerdict,
    pub thick: WindowVerdict,
    pub thin: WindowVerdict,
}

impl WindowReport {
    pub fn get(&self, p: Property) -> &WindowVerdict {
        match p {
            Property::Large => &self.large,
            Property::Small => &self.small,
            Property::Thick => &self.thick,
            Property::Thin => &self.thin,
        }
    }
}

struct Margins {
    max_distance: u64,
    longest_run: u64,
    min_gap: u64,
    longest_ball_run: u64,
}

impl Margins {
    fn verdicts(&self, d: u64) -> [bool; 4] {
        [
            self.max_distance <= d,
            self.longest_ball_run <= 8 * d + 1,
            self.longest_run > 2 * d,
            self.min_gap > 2 * d,
        ]
    }
}

/// Distance from every point of `bits` to its nearest member.
fn distances(bits: &FixedBitSet) -> Vec<u64> {
    let len = bits.len();
    let mut dist = vec![u64::MAX; len];
    let mut last: Option<usize> = None;
    for (i, slot) in dist.iter_mut().enumerate() {
        if bits.contains(i) {
            last = Some(i);
        }
        if let Some(l) = last {
            *slot = (i - l) as u64;
        }
    }
    last = None;
    for i in (0..len).rev() {
        if bits.contains(i) {
            last = Some(i);
        }
        if let Some(l) = last {
            dist[i] = dist[i].min((l - i) as u64);
        }
    }
    dist
}

fn longest_run(lo: usize, hi: usize, inside: impl Fn(usize) -> bool) -> u64 {
    let (mut best, mut current) = (0u64, 0u64);
    for i in lo..=hi {
        if inside(i) {
            current += 1;
            best = best.max(current);
        } else {
            current = 0;
        }
    }
    best
}

fn margins(bits: &FixedBitSet, dist: &[u64], lo: usize, hi: usize, d: u64) -> Margins {
    let members: Vec<usize> = bits.ones().filter(|&m| (lo..=hi).contains(&m)).collect();
    Margins {
        max_distance: dist[lo..=hi].iter().copied().max().unwrap_or(0),
        longest_run: longest_run(lo, hi, |i| bits.contains(i)),
        min_gap: members
            .windows(2)
            .map(|w| (w[1] - w[0]) as u64)
            .min()
            .unwrap_or((hi - lo + 1) as u64),
        longest_ball_run: longest_run(lo, hi, |i| dist[i] <= d),
    }
}

impl SetSpec {
    /// Window evidence on `[N/2, N]` with radius `D`; see [`WindowReport`].
    /// Declared growth classes are cross-checked first.
    pub fn classify_window(&self, n: u64, d: u64) -> Result<WindowReport> {
        self.check_declared(n)?;
        // look past N so points near the top see their upper neighbours
        let bits = self.window(n + 2 * d + 1)?;
        let dist = distances(&bits);
        let n = n as usize;
        let upper = margins(&bits, &dist, n / 2, n, d);
        let lower = margins(&bits, &dist, n / 4, n / 2, d);
        let (now, before) = (upper.verdicts(d), lower.verdicts(d));
        let verdict = |i: usize, margin: u64| WindowVerdict {
            holds: now[i],
            margin,
            flipped: now[i] != before[i],
        };
        Ok(WindowReport {
            window: n as u64,
            radius: d,
            large: verdict(0, upper.max_distance),
            small: verdict(1, upper.longest_ball_run),
            thick: verdict(2, upper.longest_run),
            thin: verdict(3, upper.min_gap),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{Periodic, Sequence};

    fn flags(c: &Classification) -> [Verdict; 4] {
        Property::ALL.map(|p| c.get(p).verdict)
    }

    use Verdict::{No, Unknown, Yes};

    #[test]
    fn exact_rules() {
        // large, small, thick, thin
        assert_eq!(flags(&classify(&SetSpec::evens())), [Yes, No, No, No]);
        assert_eq!(flags(&classify(&SetSpec::finite([1, 2, 3]))), [No, Yes, No, Yes]);
        assert_eq!(flags(&classify(&SetSpec::powers(2).unwrap())), [No, Yes, No, Yes]);
        assert_eq!(flags(&classify(&SetSpec::naturals())), [Yes, No, Yes, No]);
        assert_eq!(flags(&classify(&SetSpec::factorial_intervals())), [No, No, Yes, No]);
        assert_eq!(flags(&classify(&SetSpec::cyclic_gaps(vec![1]).unwrap())), [Yes, No, Yes, No]);
        assert_eq!(flags(&classify(&SetSpec::cyclic_gaps(vec![1, 3]).unwrap())), [Yes, No, Unknown, No]);
        let empty_residues = SetSpec::Periodic(Periodic::new([4].into(), 0, 3, [].into()).unwrap());
        assert_eq!(flags(&classify(&empty_residues)), [No, Yes, No, Yes]);
    }

    #[test]
    fn union_rules() {
        let u = |v: Vec<SetSpec>| flags(&classify(&SetSpec::Union(v)));
        let pow2 = SetSpec::powers(2).unwrap();
        let pow3 = SetSpec::powers(3).unwrap();
        assert_eq!(u(vec![pow2.clone(), SetSpec::finite([7])]), [No, Yes, No, Yes]);
        assert_eq!(u(vec![pow2.clone(), pow3]), [No, Yes, No, Unknown]);
        assert_eq!(u(vec![pow2.clone(), SetSpec::evens()]), [Yes, No, Unknown, No]);
        assert_eq!(u(vec![pow2, SetSpec::factorial_intervals()]), [Unknown, No, Yes, No]);
        assert_eq!(u(vec![SetSpec::evens(), SetSpec::odds()]), [Yes, No, Unknown, No]);
    }

    #[test]
    fn interval_rules() {
        let family = |lengths: GrowthClass, holes: GrowthClass| {
            SetSpec::Intervals(IntervalFamily {
                starts: Sequence::polynomial(1, 3, 0),
                lengths: Sequence::cyclic(vec![0]),
                length_class: lengths,
                hole_class: holes,
            })
        };
        use GrowthClass::{Bounded, Divergent};
        assert_eq!(flags(&classify(&family(Bounded(0), Divergent))), [No, Yes, No, Yes]);
        assert_eq!(flags(&classify(&family(Bounded(3), Divergent))), [No, Yes, No, Unknown]);
        assert_eq!(flags(&classify(&family(Bounded(3), Bounded(5)))), [Yes, No, No, No]);
        assert_eq!(flags(&classify(&family(Divergent, Bounded(5)))), [Yes, No, Yes, No]);
        assert_eq!(flags(&classify(&family(Divergent, Divergent))), [No, No, Yes, No]);
    }

    #[test]
    fn window_examples() {
        let evens = SetSpec::evens().classify_window(100, 4).unwrap();
        assert!(evens.large.holds);
        assert_eq!(evens.large.margin, 1);
        assert!(!evens.thin.holds && !evens.thick.holds);

        let pow2 = SetSpec::powers(2).unwrap().classify_window(1024, 8).unwrap();
        assert!(pow2.thin.holds && !pow2.large.holds);

        let nat = SetSpec::naturals().classify_window(1000, 4).unwrap();
        assert!(nat.thick.holds);
        assert_eq!(nat.thick.margin, 501);
    }

    // facint is left out: its runs only reach 2D+1 around 129!
    #[test]
    fn window_verdicts_match_rules_on_standard_sets() {
        for text in ["evens", "nat", "pow:2", "poly:1,3,0", "fact", "finite:1,2,3", "periodic:p=7;r=0,1,2,3,4,5,6;t=40"] {
            let s: SetSpec = text.parse().unwrap();
            let exact = classify(&s);
            let window = s.classify_window(10_000, 64).unwrap();
            for p in Property::ALL {
                if let Some(b) = exact.get(p).verdict.as_bool() {
                    assert_eq!(window.get(p).holds, b, "{text} {p}");
                }
            }
            assert_eq!(exact.inconsistency(), None);
        }
    }

    #[test]
    fn declared_bound_violations_surface() {
        let liar = SetSpec::Stream {
            seq: Sequence::powers(2),
            gaps: GrowthClass::Bounded(10),
        };
        assert!(liar.classify_window(1000, 4).is_err());
    }
}
