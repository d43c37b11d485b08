//! The norm classes `S_n = {α : ‖α‖ = n}` with the witness that they are
//! small, and a thin partition of `[ω, ω^ω)` into cells `T_λ` meeting every
//! band `[ω^n, ω^{n+1})` exactly once.

use std::fmt;

use crate::ballean::{ball, BallKind};
use crate::error::{domain, precondition, Error, Result};
use crate::ordinal::{Coefficient, Ordinal, OrdinalInterval};

pub fn sn_member(x: &Ordinal, n: u64) -> bool {
    x.norm() == n
}

/// A point `z` near `x ∈ S_n` whose `γ`-ball misses `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallWitness {
    /// `x + γ·(n+2)`
    pub z: Ordinal,
    /// The symmetric ball of radius `γ` around `z`.
    pub neighbourhood: OrdinalInterval,
    /// The neighbourhood holds no ordinal of norm `n`.
    pub verified: bool,
}

/// For `x ∈ S_n` and an indecomposable `γ` not above the leading term of
/// `x`, steps `γ·(n+2)` past `x` and checks that the `γ`-ball there avoids
/// `S_n`. This exhibits points of `ω^ε \ B(S_n, γ)` near every member of
/// `S_n`.
pub fn sn_small_witness(x: &Ordinal, gamma: &Ordinal, n: u64) -> Result<SmallWitness> {
    if n == 0 {
        return Err(domain("S_0 = {0} is not considered; n must be at least 1"));
    }
    if !sn_member(x, n) {
        return Err(domain(format!("{x} has norm {}, not {n}", x.norm())));
    }
    if !gamma.is_indecomposable() {
        return Err(domain(format!("{gamma} is not a power of ω")));
    }
    let lead = Ordinal::omega_pow(x.leading_exponent().expect("norm >= 1").clone());
    if *gamma > lead {
        return Err(domain(format!("{gamma} exceeds the leading term {lead} of {x}")));
    }
    let steps = Coefficient::try_from(n + 2).map_err(|_| Error::Overflow(format!("n = {n}")))?;
    let z = x.checked_add(&gamma.checked_mul(&Ordinal::nat(steps))?)?;
    let neighbourhood = ball(BallKind::Symmetric, &z, gamma)?;
    let verified = !neighbourhood.contains_norm(n);
    Ok(SmallWitness {
        z,
        neighbourhood,
        verified,
    })
}

/// `f_n(λ)`: the member of cell `λ` in band `[ω^n, ω^{n+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThinCellIndex {
    pub cell: u64,
    pub band: u32,
}

impl fmt::Display for ThinCellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(cell {}, band {})", self.cell, self.band)
    }
}

/// Cantor pairing `π(a, b) = (a+b)(a+b+1)/2 + b`.
pub fn pair(a: u64, b: u64) -> Option<u64> {
    let s = a.checked_add(b)?;
    let t = if s % 2 == 0 {
        (s / 2).checked_mul(s.checked_add(1)?)?
    } else {
        s.checked_mul(s.div_ceil(2))?
    };
    t.checked_add(b)
}

pub fn unpair(z: u64) -> (u64, u64) {
    // largest w with w(w+1)/2 <= z
    let mut w = ((8u128 * z as u128 + 1).isqrt() as u64 - 1) / 2;
    while (w as u128) * (w as u128 + 1) / 2 > z as u128 {
        w -= 1;
    }
    let b = z - (w as u128 * (w as u128 + 1) / 2) as u64;
    (w - b, b)
}

/// `λ ↦ (d_0, …, d_{k-1})` by splitting off one coordinate per pairing.
fn decode(mut lambda: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    for _ in 1..k {
        let (a, rest) = unpair(lambda);
        out.push(a);
        lambda = rest;
    }
    out.push(lambda);
    out
}

fn encode(digits: &[u64]) -> Option<u64> {
    let (&last, init) = digits.split_last()?;
    init.iter().rev().try_fold(last, |acc, &d| pair(d, acc))
}

/// `ω^n·(d_0+1) + ω^{n-1}·d_1 + … + d_n` where `(d_0, …, d_n)` decodes `λ`.
pub fn thin_cell_element(idx: ThinCellIndex) -> Result<Ordinal> {
    if idx.band == 0 {
        return Err(domain("bands start at 1: the cells partition [ω, ω^ω)"));
    }
    let digits = decode(idx.cell, idx.band as usize + 1);
    let coefficient = |d: u64| {
        Coefficient::try_from(d).map_err(|_| Error::Overflow(format!("digit {d} of cell {}", idx.cell)))
    };
    let mut terms = Vec::with_capacity(digits.len());
    for (i, &d) in digits.iter().enumerate() {
        let exponent = idx.band - i as u32;
        let c = if i == 0 { coefficient(d + 1)? } else { coefficient(d)? };
        if c > 0 {
            terms.push((Ordinal::nat(exponent), c));
        }
    }
    Ordinal::from_terms(terms)
}

pub fn thin_cell_index(x: &Ordinal) -> Result<ThinCellIndex> {
    let band = x
        .leading_exponent()
        .and_then(Ordinal::as_natural)
        .filter(|&n| n >= 1)
        .ok_or_else(|| domain(format!("{x} does not lie in [ω, ω^ω)")))?;
    let mut digits = vec![0u64; band as usize + 1];
    for t in x.terms() {
        let e = t.exponent().as_natural().expect("below the leading natural exponent");
        digits[(band - e) as usize] = u64::from(t.coefficient());
    }
    digits[0] -= 1;
    let cell = encode(&digits).ok_or_else(|| Error::Overflow(format!("the cell of {x} exceeds u64")))?;
    Ok(ThinCellIndex { cell, band })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolationReport {
    pub x: Ordinal,
    pub ball: OrdinalInterval,
    /// Members of the same cell in other bands that fall inside the ball.
    pub intruders: Vec<(u32, Ordinal)>,
}

impl IsolationReport {
    pub fn isolated(&self) -> bool {
        self.intruders.is_empty()
    }
}

/// Whether the `ω^m`-ball around `f_n(λ)` meets cell `λ` only in its
/// centre. The ball lies below `ω^{n+1}`, so bands `1..=n+1` are checked.
pub fn thin_isolation_check(cell: u64, band: u32, m: u32) -> Result<IsolationReport> {
    if m > band {
        return Err(precondition(format!("radius exponent {m} exceeds the band {band}")));
    }
    let x = thin_cell_element(ThinCellIndex { cell, band })?;
    let radius = Ordinal::omega_pow(Ordinal::nat(m));
    if x <= radius {
        return Err(precondition(format!("{x} is not above the radius {radius}")));
    }
    let ball = ball(BallKind::Symmetric, &x, &radius)?;
    let mut intruders = Vec::new();
    for k in (1..=band + 1).filter(|&k| k != band) {
        let other = thin_cell_element(ThinCellIndex { cell, band: k })?;
        if ball.contains(&other) {
            intruders.push((k, other));
        }
    }
    Ok(IsolationReport { x, ball, intruders })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn norm_classes() {
        assert!(sn_member(&o("w^2"), 1));
        assert!(sn_member(&o("w^2*3+w*2+5"), 10));
        assert!(!sn_member(&Ordinal::zero(), 1));
    }

    #[test]
    fn small_witness_examples() {
        let w = sn_small_witness(&o("w^2"), &o("w"), 1).unwrap();
        assert_eq!(w.z, o("w^2+w*3"));
        assert_eq!(w.neighbourhood.to_string(), "[w^2+w*2, w^2+w*4]");
        assert!(w.verified);

        let w = sn_small_witness(&o("w^2+w"), &o("w"), 2).unwrap();
        assert_eq!(w.z, o("w^2+w*5"));
        assert!(w.verified);

        let w = sn_small_witness(&o("5"), &o("1"), 5).unwrap();
        assert_eq!(w.z, o("12"));
        assert_eq!(w.neighbourhood.to_string(), "[11, 13]");
        assert!(w.verified);
    }

    #[test]
    fn small_witness_preconditions() {
        assert!(sn_small_witness(&o("w"), &o("w"), 2).is_err());
        assert!(sn_small_witness(&o("w"), &o("w*2"), 1).is_err());
        assert!(sn_small_witness(&o("w"), &o("w^2"), 1).is_err());
        assert!(sn_small_witness(&o("0"), &o("1"), 0).is_err());
    }

    #[test]
    fn pairing_round_trips() {
        for z in 0..5000 {
            let (a, b) = unpair(z);
            assert_eq!(pair(a, b), Some(z));
        }
        for z in (u64::MAX - 100)..=u64::MAX {
            let (a, b) = unpair(z);
            assert_eq!(pair(a, b), Some(z));
        }
        assert_eq!(pair(u64::MAX, 1), None);
    }

    #[test]
    fn cell_elements() {
        let first = thin_cell_element(ThinCellIndex { cell: 0, band: 1 }).unwrap();
        assert_eq!(first, o("w"));
        assert!(thin_cell_element(ThinCellIndex { cell: 0, band: 0 }).is_err());
        assert!(thin_cell_index(&o("5")).is_err());
        assert!(thin_cell_index(&o("w^w")).is_err());
        for band in 1..=5 {
            for cell in 0..=500 {
                let idx = ThinCellIndex { cell, band };
                let x = thin_cell_element(idx).unwrap();
                assert_eq!(x.leading_exponent().unwrap().as_natural(), Some(band));
                assert_eq!(thin_cell_index(&x).unwrap(), idx);
            }
        }
    }

    #[test]
    fn isolation() {
        assert!(thin_isolation_check(3, 4, 2).unwrap().isolated());
        assert!(thin_isolation_check(0, 1, 0).unwrap().isolated());
        // f_1(0) = ω is not above ω^1
        assert!(thin_isolation_check(0, 1, 1).is_err());
        assert!(thin_isolation_check(0, 1, 2).is_err());
    }
}
