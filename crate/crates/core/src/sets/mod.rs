//! Finite descriptions of subsets of ω.
//!
//! A [`SetSpec`] is either fully explicit (finite, eventually periodic) or
//! driven by a restartable generator whose growth behaviour is declared up
//! front. Declared classes are trusted by the exact rules in [`classify`]
//! and cross-checked whenever a window of the set is materialized.

mod classify;
mod delta;
mod partition;
pub mod random;
mod realize;
mod text;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{domain, Error, Result};

pub use classify::{classify, Classification, Decision, Property, Verdict, WindowReport, WindowVerdict};
pub use delta::{delta, delta_window, verify_delta_large, DeltaLargeReport, DeltaResult};
pub use partition::{large_partition_cell, large_partition_spec};
pub use realize::{DifferenceCheck, Realization, RealizationReport};

/// How the gaps (or lengths) produced by a generator behave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrowthClass {
    /// Every value is at most the bound.
    Bounded(u64),
    /// The values tend to infinity.
    Divergent,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::Bounded(b) => write!(f, "bounded({b})"),
            GrowthClass::Divergent => f.write_str("divergent"),
        }
    }
}

type Generator = dyn Fn() -> Box<dyn Iterator<Item = u64>> + Send + Sync;

/// A restartable, side-effect free sequence of naturals.
///
/// Two sequences are equal when their labels are; labels of the built-in
/// constructors spell out every parameter.
#[derive(Clone)]
pub struct Sequence {
    label: String,
    generator: Arc<Generator>,
}

impl Sequence {
    pub fn new<I, F>(label: impl Into<String>, f: F) -> Self
    where
        I: Iterator<Item = u64> + 'static,
        F: Fn() -> I + Send + Sync + 'static,
    {
        Sequence {
            label: label.into(),
            generator: Arc::new(move || Box::new(f())),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = u64>> {
        (self.generator)()
    }

    /// `base^0, base^1, …` until the values leave `u64`.
    pub fn powers(base: u64) -> Self {
        Sequence::new(format!("pow:{base}"), move || {
            std::iter::successors(Some(1u64), move |p| p.checked_mul(base))
        })
    }

    /// `a·n^d + c` for `n = 0, 1, …`.
    pub fn polynomial(a: u64, d: u32, c: u64) -> Self {
        Sequence::new(format!("poly:{a},{d},{c}"), move || {
            (0u64..).map_while(move |n| n.checked_pow(d)?.checked_mul(a)?.checked_add(c))
        })
    }

    /// `1!, 2!, 3!, …`
    pub fn factorials() -> Self {
        Self::factorials_from(1)
    }

    /// `k!, (k+1)!, …`
    pub fn factorials_from(k: u64) -> Self {
        Sequence::new(format!("fact:{k}"), move || {
            let start = (1..=k).try_fold(1u64, |acc, i| acc.checked_mul(i));
            std::iter::successors(start.map(|s| (k, s)), |&(i, f)| {
                f.checked_mul(i + 1).map(|g| (i + 1, g))
            })
            .map(|(_, f)| f)
        })
    }

    /// `k, k+1, …`
    pub fn counting_from(k: u64) -> Self {
        Sequence::new(format!("count:{k}"), move || k..)
    }

    /// The values repeated forever.
    pub fn cyclic(values: Vec<u64>) -> Self {
        assert!(!values.is_empty(), "a cycle needs at least one value");
        let label = format!("cycle:{}", join(&values));
        let values: Arc<[u64]> = values.into();
        Sequence::new(label, move || {
            let values = values.clone();
            (0..).map(move |i| values[i % values.len()])
        })
    }

    /// `start, start+g0, start+g0+g1, …`
    pub fn prefix_sums(start: u64, gaps: Sequence) -> Self {
        let label = format!("sums:{start}+{}", gaps.label);
        Sequence::new(label, move || {
            let mut gaps = gaps.iter();
            std::iter::successors(Some(start), move |&v| v.checked_add(gaps.next()?))
        })
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence({})", self.label)
    }
}

impl PartialEq for Sequence {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
    }
}

impl Eq for Sequence {}

/// `prefix ∪ {m >= threshold : m mod period ∈ residues}`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Periodic {
    pub prefix: BTreeSet<u64>,
    pub threshold: u64,
    pub period: u64,
    pub residues: BTreeSet<u64>,
}

impl Periodic {
    pub fn new(prefix: BTreeSet<u64>, threshold: u64, period: u64, residues: BTreeSet<u64>) -> Result<Self> {
        if period == 0 {
            return Err(domain("the period must be at least 1"));
        }
        if let Some(r) = residues.iter().find(|&&r| r >= period) {
            return Err(domain(format!("residue {r} is not below the period {period}")));
        }
        Ok(Periodic {
            prefix,
            threshold,
            period,
            residues,
        })
    }

    /// `{m : m mod period ∈ residues}`
    pub fn pure(period: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        Periodic::new(BTreeSet::new(), 0, period, residues.into_iter().collect())
    }

    pub fn contains(&self, n: u64) -> bool {
        self.prefix.contains(&n) || (n >= self.threshold && self.residues.contains(&(n % self.period)))
    }

    pub fn is_infinite(&self) -> bool {
        !self.residues.is_empty()
    }

    /// The same set with the period multiplied up to `period`.
    fn with_period(&self, period: u64) -> Periodic {
        debug_assert_eq!(period % self.period, 0);
        let residues = (0..period)
            .filter(|m| self.residues.contains(&(m % self.period)))
            .collect();
        Periodic {
            prefix: self.prefix.clone(),
            threshold: self.threshold,
            period,
            residues,
        }
    }

    /// An eventually periodic description of the union, if the common period
    /// stays below `max_period`.
    pub fn union(&self, other: &Periodic, max_period: u64) -> Option<Periodic> {
        let period = num_integer::lcm(self.period, other.period);
        if period > max_period {
            return None;
        }
        let (a, b) = (self.with_period(period), other.with_period(period));
        let threshold = a.threshold.max(b.threshold);
        let below = (a.threshold.min(b.threshold)..threshold).filter(|&m| a.contains(m) || b.contains(m));
        let prefix = a.prefix.iter().chain(&b.prefix).copied().chain(below).collect();
        Some(Periodic {
            prefix,
            threshold,
            period,
            residues: a.residues.union(&b.residues).copied().collect(),
        })
    }
}

/// `⋃ [start_k, start_k + length_k]`, where consecutive intervals are
/// separated by a hole of at least one missing point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalFamily {
    pub starts: Sequence,
    pub lengths: Sequence,
    pub length_class: GrowthClass,
    /// Growth of the holes `start_{k+1} - (start_k + length_k) - 1`.
    pub hole_class: GrowthClass,
}

impl IntervalFamily {
    /// The intervals in order, failing on overlapping or touching ones.
    fn intervals(&self) -> impl Iterator<Item = Result<(u64, u64)>> {
        let mut last_end: Option<u64> = None;
        self.starts.iter().zip(self.lengths.iter()).map(move |(s, l)| {
            if let Some(end) = last_end {
                if s <= end.saturating_add(1) {
                    return Err(Error::Evaluation(format!(
                        "interval starting at {s} touches the previous one ending at {end}"
                    )));
                }
            }
            let end = s
                .checked_add(l)
                .ok_or_else(|| Error::Evaluation(format!("interval at {s} of length {l} leaves u64")))?;
            last_end = Some(end);
            Ok((s, end))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSpec {
    Finite(BTreeSet<u64>),
    Periodic(Periodic),
    /// The values of a strictly increasing generator.
    Stream { seq: Sequence, gaps: GrowthClass },
    Intervals(IntervalFamily),
    Union(Vec<SetSpec>),
}

impl SetSpec {
    pub fn finite(elements: impl IntoIterator<Item = u64>) -> Self {
        SetSpec::Finite(elements.into_iter().collect())
    }

    pub fn empty() -> Self {
        SetSpec::Finite(BTreeSet::new())
    }

    pub fn naturals() -> Self {
        SetSpec::Periodic(Periodic::pure(1, [0]).expect("valid"))
    }

    pub fn evens() -> Self {
        SetSpec::Periodic(Periodic::pure(2, [0]).expect("valid"))
    }

    pub fn odds() -> Self {
        SetSpec::Periodic(Periodic::pure(2, [1]).expect("valid"))
    }

    /// `{base^n}`; gaps diverge for `base >= 2`.
    pub fn powers(base: u64) -> Result<Self> {
        if base < 2 {
            return Err(domain(format!("powers of {base} do not form an increasing sequence")));
        }
        Ok(SetSpec::Stream {
            seq: Sequence::powers(base),
            gaps: GrowthClass::Divergent,
        })
    }

    /// `{a·n^d + c}`; gaps are bounded by `a` for `d = 1` and diverge for
    /// `d >= 2`.
    pub fn polynomial(a: u64, d: u32, c: u64) -> Result<Self> {
        if a == 0 || d == 0 {
            return Err(domain("a polynomial stream needs a >= 1 and d >= 1"));
        }
        let gaps = if d == 1 { GrowthClass::Bounded(a) } else { GrowthClass::Divergent };
        Ok(SetSpec::Stream {
            seq: Sequence::polynomial(a, d, c),
            gaps,
        })
    }

    pub fn factorials() -> Self {
        SetSpec::Stream {
            seq: Sequence::factorials(),
            gaps: GrowthClass::Divergent,
        }
    }

    /// `0, g0, g0+g1, …` with the gaps repeated cyclically.
    pub fn cyclic_gaps(gaps: Vec<u64>) -> Result<Self> {
        if gaps.is_empty() || gaps.contains(&0) {
            return Err(domain("cyclic gaps must be a nonempty list of positive numbers"));
        }
        let bound = *gaps.iter().max().expect("nonempty");
        let label = format!("gaps:{}", join(&gaps));
        let sums = Sequence::prefix_sums(0, Sequence::cyclic(gaps));
        Ok(SetSpec::Stream {
            seq: Sequence::new(label, move || sums.iter()),
            gaps: GrowthClass::Bounded(bound),
        })
    }

    /// `⋃_{n >= 2} [n!, n!+n]`
    pub fn factorial_intervals() -> Self {
        SetSpec::Intervals(IntervalFamily {
            starts: Sequence::factorials_from(2),
            lengths: Sequence::counting_from(2),
            length_class: GrowthClass::Divergent,
            hole_class: GrowthClass::Divergent,
        })
    }

    pub fn member(&self, n: u64) -> Result<bool> {
        match self {
            SetSpec::Finite(s) => Ok(s.contains(&n)),
            SetSpec::Periodic(p) => Ok(p.contains(n)),
            SetSpec::Stream { seq, .. } => {
                for v in checked_stream(seq) {
                    let v = v?;
                    if v >= n {
                        return Ok(v == n);
                    }
                }
                Err(exhausted(seq, n))
            }
            SetSpec::Intervals(family) => {
                for iv in family.intervals() {
                    let (s, e) = iv?;
                    if e >= n {
                        return Ok(s <= n);
                    }
                }
                Err(exhausted(&family.starts, n))
            }
            SetSpec::Union(members) => {
                for m in members {
                    if m.member(n)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// The members in `0..=n` as a bitset of length `n+1`.
    pub fn window(&self, n: u64) -> Result<FixedBitSet> {
        let len = usize::try_from(n).map_err(|_| domain("window exceeds the address space"))? + 1;
        let mut bits = FixedBitSet::with_capacity(len);
        self.fill(&mut bits, n)?;
        Ok(bits)
    }

    fn fill(&self, bits: &mut FixedBitSet, n: u64) -> Result<()> {
        match self {
            SetSpec::Finite(s) => s.range(..=n).for_each(|&m| bits.insert(m as usize)),
            SetSpec::Periodic(p) => {
                p.prefix.range(..=n).for_each(|&m| bits.insert(m as usize));
                for r in &p.residues {
                    // first m >= threshold with m ≡ r
                    let first = p.threshold + (r + p.period - p.threshold % p.period) % p.period;
                    let mut m = first;
                    while m <= n {
                        bits.insert(m as usize);
                        m += p.period;
                    }
                }
            }
            SetSpec::Stream { seq, .. } => {
                for v in checked_stream(seq) {
                    let v = v?;
                    if v > n {
                        return Ok(());
                    }
                    bits.insert(v as usize);
                }
                return Err(exhausted(seq, n));
            }
            SetSpec::Intervals(family) => {
                for iv in family.intervals() {
                    let (s, e) = iv?;
                    if s > n {
                        return Ok(());
                    }
                    bits.insert_range(s as usize..e.min(n) as usize + 1);
                }
                return Err(exhausted(&family.starts, n));
            }
            SetSpec::Union(members) => {
                for m in members {
                    m.fill(bits, n)?;
                }
            }
        }
        Ok(())
    }

    /// Checks the declared growth classes against everything the generators
    /// produce up to `n`.
    pub fn check_declared(&self, n: u64) -> Result<()> {
        match self {
            SetSpec::Finite(_) | SetSpec::Periodic(_) => Ok(()),
            SetSpec::Stream { seq, gaps } => {
                let GrowthClass::Bounded(b) = *gaps else { return Ok(()) };
                let mut prev = None;
                for v in checked_stream(seq) {
                    let v = v?;
                    if let Some(p) = prev {
                        if v - p > b {
                            return Err(Error::Contradiction(format!(
                                "{} declares gaps <= {b} but jumps from {p} to {v}",
                                seq.label()
                            )));
                        }
                        if p > n {
                            return Ok(());
                        }
                    }
                    prev = Some(v);
                }
                Ok(())
            }
            SetSpec::Intervals(family) => {
                let mut prev_end: Option<u64> = None;
                for iv in family.intervals() {
                    let (s, e) = iv?;
                    if let GrowthClass::Bounded(b) = family.length_class {
                        if e - s > b {
                            return Err(Error::Contradiction(format!(
                                "{} declares lengths <= {b} but [{s}, {e}] is longer",
                                family.lengths.label()
                            )));
                        }
                    }
                    if let (GrowthClass::Bounded(h), Some(p)) = (family.hole_class, prev_end) {
                        if s - p - 1 > h {
                            return Err(Error::Contradiction(format!(
                                "{} declares holes <= {h} but nothing lies in ({p}, {s})",
                                family.starts.label()
                            )));
                        }
                    }
                    if s > n {
                        return Ok(());
                    }
                    prev_end = Some(e);
                }
                Ok(())
            }
            SetSpec::Union(members) => members.iter().try_for_each(|m| m.check_declared(n)),
        }
    }

    pub fn is_finite_variant(&self) -> bool {
        matches!(self, SetSpec::Finite(_))
    }
}

fn checked_stream(seq: &Sequence) -> impl Iterator<Item = Result<u64>> + '_ {
    let mut prev: Option<u64> = None;
    seq.iter().map(move |v| {
        if prev.is_some_and(|p| v <= p) {
            return Err(Error::Evaluation(format!(
                "{} is not strictly increasing at {v}",
                seq.label()
            )));
        }
        prev = Some(v);
        Ok(v)
    })
}

fn exhausted(seq: &Sequence, n: u64) -> Error {
    Error::Evaluation(format!("{} ran out before reaching {n}", seq.label()))
}

pub(crate) fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(s: &SetSpec, n: u64) -> Vec<u64> {
        s.window(n).unwrap().ones().map(|m| m as u64).collect()
    }

    #[test]
    fn membership() {
        assert!(SetSpec::evens().member(4).unwrap());
        assert!(!SetSpec::finite([1, 3]).member(2).unwrap());
        let u = SetSpec::Union(vec![SetSpec::evens(), SetSpec::finite([1])]);
        assert!(u.member(1).unwrap());
        assert!(!u.member(3).unwrap());
        assert!(SetSpec::powers(2).unwrap().member(1024).unwrap());
        assert!(!SetSpec::powers(2).unwrap().member(1000).unwrap());
    }

    #[test]
    fn windows_agree_with_membership() {
        let specs = [
            SetSpec::evens(),
            SetSpec::powers(3).unwrap(),
            SetSpec::factorial_intervals(),
            SetSpec::cyclic_gaps(vec![1, 4, 2]).unwrap(),
            SetSpec::Periodic(Periodic::new([1, 40].into(), 10, 7, [0, 3].into()).unwrap()),
            SetSpec::Union(vec![SetSpec::factorials(), SetSpec::finite([5, 500])]),
        ];
        for s in &specs {
            let w = members(s, 800);
            let direct: Vec<u64> = (0..=800).filter(|&m| s.member(m).unwrap()).collect();
            assert_eq!(w, direct, "{s}");
        }
    }

    #[test]
    fn factorial_intervals_start_at_two() {
        assert_eq!(members(&SetSpec::factorial_intervals(), 30), [2, 3, 4, 6, 7, 8, 9, 24, 25, 26, 27, 28]);
    }

    #[test]
    fn broken_generators_are_reported() {
        let flat = SetSpec::Stream {
            seq: Sequence::cyclic(vec![3]),
            gaps: GrowthClass::Bounded(1),
        };
        assert!(matches!(flat.member(10), Err(Error::Evaluation(_))));

        let short = SetSpec::Stream {
            seq: Sequence::new("short", || [1, 2, 3].into_iter()),
            gaps: GrowthClass::Bounded(1),
        };
        assert!(short.member(2).unwrap());
        assert!(matches!(short.member(5), Err(Error::Evaluation(_))));
    }

    #[test]
    fn declared_classes_are_cross_checked() {
        let liar = SetSpec::Stream {
            seq: Sequence::powers(2),
            gaps: GrowthClass::Bounded(100),
        };
        assert!(liar.check_declared(50).is_ok());
        assert!(matches!(liar.check_declared(1000), Err(Error::Contradiction(_))));
        assert!(SetSpec::cyclic_gaps(vec![2, 5]).unwrap().check_declared(10_000).is_ok());

        let short_intervals = SetSpec::Intervals(IntervalFamily {
            lengths: Sequence::cyclic(vec![1]),
            length_class: GrowthClass::Bounded(1),
            ..match SetSpec::factorial_intervals() {
                SetSpec::Intervals(f) => f,
                _ => unreachable!(),
            }
        });
        assert!(short_intervals.check_declared(1000).is_ok());
        assert!(matches!(
            SetSpec::Intervals(IntervalFamily {
                length_class: GrowthClass::Bounded(3),
                ..match SetSpec::factorial_intervals() {
                    SetSpec::Intervals(f) => f,
                    _ => unreachable!(),
                }
            })
            .check_declared(1000),
            Err(Error::Contradiction(_))
        ));
    }

    #[test]
    fn periodic_union() {
        let a = Periodic::new([1].into(), 5, 4, [0].into()).unwrap();
        let b = Periodic::new(BTreeSet::new(), 2, 6, [3].into()).unwrap();
        let u = a.union(&b, 1000).unwrap();
        assert_eq!(u.period, 12);
        for m in 0..200 {
            assert_eq!(u.contains(m), a.contains(m) || b.contains(m), "{m}");
        }
        assert!(a.union(&b, 10).is_none());
    }
}
