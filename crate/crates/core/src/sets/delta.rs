//! The combinatorial derivation `Δ(A) = {d : (A+d) ∩ A is unbounded}`.

use std::collections::BTreeSet;

use super::classify::{classify, Verdict};
use super::{GrowthClass, Periodic, SetSpec};
use crate::error::{precondition, Result};

/// Unions of periodic sets are merged only while the common period stays
/// below this.
const MAX_MERGED_PERIOD: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaResult {
    Exact(SetSpec),
    /// No exact rule applies; use [`delta_window`].
    NeedsWindow(String),
}

impl DeltaResult {
    pub fn exact(&self) -> Option<&SetSpec> {
        match self {
            DeltaResult::Exact(s) => Some(s),
            DeltaResult::NeedsWindow(_) => None,
        }
    }
}

fn periodic_delta(p: &Periodic) -> SetSpec {
    if !p.is_infinite() {
        return SetSpec::empty();
    }
    let residues = p
        .residues
        .iter()
        .flat_map(|&r| p.residues.iter().map(move |&s| (s + p.period - r) % p.period))
        .collect();
    SetSpec::Periodic(Periodic::new(BTreeSet::new(), 0, p.period, residues).expect("residues below the period"))
}

/// Folds finite and periodic members of a union into one periodic set.
fn merge_periodic(members: &[SetSpec]) -> Option<Periodic> {
    let mut acc = Periodic::pure(1, []).expect("valid");
    for m in members {
        let next = match m {
            SetSpec::Finite(f) => Periodic::new(f.clone(), 0, 1, BTreeSet::new()).expect("valid"),
            SetSpec::Periodic(p) => p.clone(),
            SetSpec::Union(inner) => merge_periodic(inner)?,
            _ => return None,
        };
        acc = acc.union(&next, MAX_MERGED_PERIOD)?;
    }
    Some(acc)
}

pub fn delta(s: &SetSpec) -> DeltaResult {
    match s {
        SetSpec::Finite(_) => DeltaResult::Exact(SetSpec::empty()),
        SetSpec::Periodic(p) => DeltaResult::Exact(periodic_delta(p)),
        SetSpec::Stream { gaps: GrowthClass::Divergent, .. } => DeltaResult::Exact(SetSpec::finite([0])),
        SetSpec::Stream { gaps: GrowthClass::Bounded(b), .. } => {
            DeltaResult::NeedsWindow(format!("a stream with gaps <= {b} has no exact rule"))
        }
        SetSpec::Intervals(f) => match (f.length_class, f.hole_class) {
            (GrowthClass::Divergent, _) => DeltaResult::Exact(SetSpec::naturals()),
            (GrowthClass::Bounded(0), GrowthClass::Divergent) => DeltaResult::Exact(SetSpec::finite([0])),
            _ => DeltaResult::NeedsWindow("interval family with bounded lengths".into()),
        },
        SetSpec::Union(members) => {
            if let Some(p) = merge_periodic(members) {
                return DeltaResult::Exact(periodic_delta(&p));
            }
            // bounded members never contribute
            let infinite: Vec<&SetSpec> = members
                .iter()
                .filter(|m| classify(m).bounded != Verdict::Yes)
                .collect();
            match infinite[..] {
                [] => DeltaResult::Exact(SetSpec::empty()),
                [only] => delta(only),
                _ if infinite
                    .iter()
                    .any(|m| delta(m).exact() == Some(&SetSpec::naturals())) =>
                {
                    DeltaResult::Exact(SetSpec::naturals())
                }
                _ => DeltaResult::NeedsWindow("union of several unbounded members".into()),
            }
        }
    }
}

/// The `d <= D` with a witness `m, m+d ∈ A` such that
/// `⌈3N/4⌉ <= m+d <= N`.
pub fn delta_window(s: &SetSpec, n: u64, d_max: u64) -> Result<BTreeSet<u64>> {
    let bits = s.window(n)?;
    let top = n - n / 4;
    let members: Vec<u64> = bits.ones().map(|m| m as u64).collect();
    let mut found = BTreeSet::new();
    for &hi in members.iter().filter(|&&m| m >= top) {
        for d in 0..=d_max.min(hi) {
            if !found.contains(&d) && bits.contains((hi - d) as usize) {
                found.insert(d);
            }
        }
        if found.len() as u64 == d_max + 1 {
            break;
        }
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaLargeReport {
    /// `Δ(A)` when an exact rule applied.
    pub exact: Option<SetSpec>,
    /// The windowed `Δ(A) ∩ [0, D]` otherwise.
    pub window: Option<BTreeSet<u64>>,
    /// Exact: the period of `Δ(A)`. Window: the largest gap in
    /// `Δ(A) ∩ [0, D]`, counting the stretch up to `D`.
    pub margin: u64,
    pub pass: bool,
}

/// For a set that is not small, checks that `Δ(A)` is large: exactly when
/// `Δ(A)` has an exact description, otherwise by requiring the windowed
/// `Δ(A) ∩ [0, D]` to have no gap above `D/2`.
pub fn verify_delta_large(s: &SetSpec, n: u64, d_max: u64) -> Result<DeltaLargeReport> {
    match classify(s).small.verdict {
        Verdict::No => {}
        v => {
            return Err(precondition(format!(
                "Δ is only claimed large for sets that are not small; {s} is small: {v}"
            )))
        }
    }
    match delta(s) {
        DeltaResult::Exact(ds) => {
            let large = classify(&ds).large.verdict == Verdict::Yes;
            let margin = match &ds {
                SetSpec::Periodic(p) => p.period,
                _ => 0,
            };
            Ok(DeltaLargeReport {
                exact: Some(ds),
                window: None,
                margin,
                pass: large,
            })
        }
        DeltaResult::NeedsWindow(_) => {
            let found = delta_window(s, n, d_max)?;
            let mut points: Vec<u64> = found.iter().copied().collect();
            points.push(d_max);
            let margin = match found.first() {
                None => d_max + 1,
                Some(_) => points.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0),
            };
            Ok(DeltaLargeReport {
                exact: None,
                window: Some(found),
                margin,
                pass: margin <= d_max / 2,
            })
        }
    }
}
