//! Random set descriptions for the classification and Δ suites.
//!
//! Every characteristic scale (period, gap bound, bounded length) is kept
//! below the radius 64 used by the suites, and every divergent quantity is
//! already far above it in the top half of a `10^4` window. Window evidence
//! at that scale can then see what the exact rules decide.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{GrowthClass, IntervalFamily, Periodic, Sequence, SetSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Finite,
    Periodic,
    Stream,
    Intervals,
    Union,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Finite,
        Variant::Periodic,
        Variant::Stream,
        Variant::Intervals,
        Variant::Union,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Finite => "finite",
            Variant::Periodic => "periodic",
            Variant::Stream => "stream",
            Variant::Intervals => "intervals",
            Variant::Union => "union",
        }
    }
}

pub fn spec<R: Rng>(variant: Variant, rng: &mut R) -> SetSpec {
    match variant {
        Variant::Finite => finite(rng),
        Variant::Periodic => SetSpec::Periodic(periodic(rng, true)),
        Variant::Stream => stream(rng),
        Variant::Intervals => intervals(rng),
        Variant::Union => union(rng),
    }
}

/// Up to 30 elements below 2000.
pub fn finite<R: Rng>(rng: &mut R) -> SetSpec {
    let len = rng.gen_range(0..=30);
    SetSpec::finite((0..len).map(|_| rng.gen_range(0..2000)))
}

/// Period at most 128 and a threshold below 1000. With `infinite` the
/// residues are nonempty.
pub fn periodic<R: Rng>(rng: &mut R, infinite: bool) -> Periodic {
    let period = rng.gen_range(1..=128u64);
    let mut residues: BTreeSet<u64> = (0..period).filter(|_| rng.gen_bool(0.3)).collect();
    if rng.gen_bool(0.1) {
        residues = (0..period).collect();
    }
    if infinite && residues.is_empty() {
        residues.insert(rng.gen_range(0..period));
    }
    let threshold = rng.gen_range(0..1000);
    let prefix = (0..rng.gen_range(0..10))
        .map(|_| rng.gen_range(0..threshold.max(1)))
        .collect();
    Periodic::new(prefix, threshold, period, residues).expect("residues below the period")
}

pub fn stream<R: Rng>(rng: &mut R) -> SetSpec {
    match rng.gen_range(0..5) {
        0 => SetSpec::powers(rng.gen_range(2..=6)).expect("base >= 2"),
        1 => SetSpec::polynomial(rng.gen_range(2..=5), 2, rng.gen_range(0..100)).expect("valid"),
        2 => SetSpec::polynomial(rng.gen_range(1..=5), rng.gen_range(3..=4), rng.gen_range(0..100)).expect("valid"),
        3 => SetSpec::factorials(),
        _ => {
            let len = rng.gen_range(1..=6);
            let bound = rng.gen_range(1..=128);
            let gaps = (0..len).map(|_| rng.gen_range(1..=bound)).collect();
            SetSpec::cyclic_gaps(gaps).expect("positive gaps")
        }
    }
}

/// One of the four length/hole combinations:
///
/// - bounded lengths: a cycle of values at most 20 (or all 0),
/// - divergent lengths: `a·k^2 + a`,
/// - bounded holes: a cycle of values in `1..=120`,
/// - divergent holes: `c·k^2 + 150`.
pub fn intervals<R: Rng>(rng: &mut R) -> SetSpec {
    let (lengths, length_class) = if rng.gen_bool(0.5) {
        let max = if rng.gen_bool(0.25) { 0 } else { rng.gen_range(1..=20) };
        let values: Vec<u64> = (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(0..=max)).collect();
        let bound = *values.iter().max().expect("nonempty");
        (Sequence::cyclic(values), GrowthClass::Bounded(bound))
    } else {
        let a = rng.gen_range(2..=4);
        (Sequence::polynomial(a, 2, a), GrowthClass::Divergent)
    };
    let (holes, hole_class) = if rng.gen_bool(0.5) {
        let values: Vec<u64> = (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(1..=120)).collect();
        let bound = *values.iter().max().expect("nonempty");
        (Sequence::cyclic(values), GrowthClass::Bounded(bound))
    } else {
        let c = rng.gen_range(1..=4);
        (Sequence::polynomial(c, 2, 150), GrowthClass::Divergent)
    };
    let start = rng.gen_range(0..500);
    SetSpec::Intervals(IntervalFamily {
        starts: interval_starts(start, lengths.clone(), holes),
        lengths,
        length_class,
        hole_class,
    })
}

/// `s_{k+1} = s_k + l_k + 1 + h_k`
pub fn interval_starts(start: u64, lengths: Sequence, holes: Sequence) -> Sequence {
    let label = format!("starts:{start}+({})+({})", lengths.label(), holes.label());
    Sequence::new(label, move || {
        let mut steps = lengths.iter().zip(holes.iter());
        std::iter::successors(Some(start), move |&s| {
            let (l, h) = steps.next()?;
            s.checked_add(l)?.checked_add(h + 1)
        })
    })
}

/// Two members of the other variants.
pub fn union<R: Rng>(rng: &mut R) -> SetSpec {
    let choices = [Variant::Finite, Variant::Periodic, Variant::Stream, Variant::Intervals];
    let members = (0..2)
        .map(|_| spec(*choices.choose(rng).expect("nonempty"), rng))
        .collect();
    SetSpec::Union(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_specs_respect_their_declarations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for v in Variant::ALL {
            for _ in 0..20 {
                let s = spec(v, &mut rng);
                s.check_declared(10_000).unwrap();
                s.window(10_000).unwrap();
            }
        }
    }
}
