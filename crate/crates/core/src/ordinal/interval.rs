//! Closed ordinal intervals and exact decisions about the norms they contain.
//!
//! Every member of `[lo, hi]` shares the common CNF prefix of `lo` and `hi`,
//! so both procedures strip that prefix and then descend term by term. They
//! never enumerate: an interval such as `[ω, ω·2]` holds members of every
//! norm above one.

use std::fmt;

use super::{common_prefix, Coefficient, Ordinal, Term};
use crate::error::{domain, Result};

/// `[lo, hi]` with `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrdinalInterval {
    lo: Ordinal,
    hi: Ordinal,
}

/// A member of an interval together with its norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormWitness {
    pub ordinal: Ordinal,
    pub norm: u64,
}

impl OrdinalInterval {
    pub fn new(lo: Ordinal, hi: Ordinal) -> Result<Self> {
        if lo > hi {
            return Err(domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(OrdinalInterval { lo, hi })
    }

    pub fn singleton(x: Ordinal) -> Self {
        OrdinalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Ordinal {
        &self.lo
    }

    pub fn hi(&self) -> &Ordinal {
        &self.hi
    }

    pub fn contains(&self, y: &Ordinal) -> bool {
        self.lo <= *y && *y <= self.hi
    }

    pub fn contains_interval(&self, other: &OrdinalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// The least member of minimal norm.
    pub fn min_norm(&self) -> NormWitness {
        let shared = common_prefix(self.lo.terms(), self.hi.terms());
        let prefix = Ordinal::from_slice(&self.lo.terms()[..shared]);
        let l = Ordinal::from_slice(&self.lo.terms()[shared..]);
        let h = &self.hi.terms()[shared..];
        let rest = match (l.terms().first(), h.first()) {
            (None, _) => NormWitness {
                ordinal: Ordinal::zero(),
                norm: 0,
            },
            (Some(tl), Some(th)) if th.exponent > tl.exponent => least_power_above(&l),
            (Some(_), Some(_)) => min_norm_below_next_power(&l),
            (Some(_), None) => unreachable!("lo <= hi with a shared prefix"),
        };
        NormWitness {
            norm: prefix.norm() + rest.norm,
            ordinal: prefix.concat(&rest.ordinal),
        }
    }

    /// Some member of norm exactly `n`, if there is one.
    pub fn member_with_norm(&self, n: u64) -> Option<Ordinal> {
        find_in_closed(&self.lo, &self.hi, n)
    }

    pub fn contains_norm(&self, n: u64) -> bool {
        self.member_with_norm(n).is_some()
    }
}

impl fmt::Display for OrdinalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for OrdinalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrdinalInterval{self}")
    }
}

fn successor_of(e: &Ordinal) -> Ordinal {
    e.checked_add(&Ordinal::one())
        .expect("exponent successor overflow")
}

/// Least `ω^β >= l` for `l > 0`; norm one.
fn least_power_above(l: &Ordinal) -> NormWitness {
    let ordinal = if l.is_indecomposable() {
        l.clone()
    } else {
        Ordinal::omega_pow(successor_of(l.leading_exponent().expect("l > 0")))
    };
    NormWitness { ordinal, norm: 1 }
}

/// Least member of minimal norm in `[l, ω^(e+1))`, `e` the leading exponent of `l > 0`.
fn min_norm_below_next_power(l: &Ordinal) -> NormWitness {
    let head = &l.terms()[0];
    let (e, c) = (&head.exponent, head.coefficient);
    let rest = Ordinal::from_slice(&l.terms()[1..]);
    if rest.is_zero() {
        return NormWitness {
            ordinal: l.clone(),
            norm: u64::from(c),
        };
    }
    let bumped = NormWitness {
        ordinal: Ordinal::monomial(e.clone(), c + 1),
        norm: u64::from(c) + 1,
    };
    // members ω^e·c + v with v in [rest, ω^e)
    let rest_exp = rest.leading_exponent().expect("rest > 0");
    let v = if rest.is_indecomposable() || successor_of(rest_exp) < *e {
        least_power_above(&rest)
    } else {
        min_norm_below_next_power(&rest)
    };
    let with_rest = NormWitness {
        ordinal: Ordinal::monomial(e.clone(), c).concat(&v.ordinal),
        norm: u64::from(c) + v.norm,
    };
    // on a tie the ω^e·c + v candidate is the smaller ordinal
    if with_rest.norm <= bumped.norm {
        with_rest
    } else {
        bumped
    }
}

fn finite(n: u64) -> Option<Ordinal> {
    Coefficient::try_from(n).ok().map(Ordinal::nat)
}

/// `ω^e·c + n` with `e > 0`.
fn monomial_plus(e: &Ordinal, c: Coefficient, n: u64) -> Option<Ordinal> {
    Some(Ordinal::monomial(e.clone(), c).concat(&finite(n)?))
}

fn find_in_closed(lo: &Ordinal, hi: &Ordinal, n: u64) -> Option<Ordinal> {
    let shared = common_prefix(lo.terms(), hi.terms());
    let prefix = Ordinal::from_slice(&hi.terms()[..shared]);
    let m = n.checked_sub(prefix.norm())?;
    let l = Ordinal::from_slice(&lo.terms()[shared..]);
    let h: &[Term] = &hi.terms()[shared..];
    let Some(head) = h.first() else {
        return (m == 0).then_some(prefix);
    };
    let (e, c) = (&head.exponent, head.coefficient);
    // members whose first term is exactly that of hi
    if let Some(k) = m.checked_sub(u64::from(c)) {
        let h_rest = Ordinal::from_slice(&h[1..]);
        if let Some(v) = find_in_closed(&Ordinal::zero(), &h_rest, k) {
            return Some(prefix.concat(&Ordinal::monomial(e.clone(), c).concat(&v)));
        }
    }
    find_below(&l, e, c, m).map(|w| prefix.concat(&w))
}

/// A member of `[l, ω^e·c)` of norm `m`, where `l < ω^e·c`.
fn find_below(l: &Ordinal, e: &Ordinal, c: Coefficient, m: u64) -> Option<Ordinal> {
    let Some(head) = l.terms().first() else {
        return if e.is_zero() {
            (m < u64::from(c)).then(|| finite(m)).flatten()
        } else {
            finite(m)
        };
    };
    let (el, cl) = (&head.exponent, head.coefficient);
    let l_rest = Ordinal::from_slice(&l.terms()[1..]);
    if el == e {
        if let Some(k) = m.checked_sub(u64::from(cl)) {
            if let Some(v) = find_below(&l_rest, e, 1, k) {
                return Some(Ordinal::monomial(e.clone(), cl).concat(&v));
            }
        }
        let above = u64::from(cl) + 1;
        if e.is_zero() {
            return (above <= m && m < u64::from(c)).then(|| finite(m)).flatten();
        }
        if above < u64::from(c) && m >= above {
            return monomial_plus(e, cl + 1, m - above);
        }
        return None;
    }
    let next = successor_of(el);
    if next < *e || c >= 2 {
        // ω^(el+1) + k sits strictly between l and ω^e·c
        return m.checked_sub(1).and_then(|k| monomial_plus(&next, 1, k));
    }
    // [l, ω^(el+1))
    if let Some(k) = m.checked_sub(u64::from(cl)) {
        if let Some(v) = find_below(&l_rest, el, 1, k) {
            return Some(Ordinal::monomial(el.clone(), cl).concat(&v));
        }
    }
    if m <= u64::from(cl) {
        return None;
    }
    if el.is_zero() {
        finite(m)
    } else {
        monomial_plus(el, cl + 1, m - u64::from(cl) - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::OrdinalGrid;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn iv(lo: &str, hi: &str) -> OrdinalInterval {
        OrdinalInterval::new(o(lo), o(hi)).unwrap()
    }

    #[test]
    fn membership() {
        assert!(iv("5", "8").contains(&o("8")));
        assert!(!iv("5", "8").contains(&o("9")));
        assert!(iv("0", "w*2").contains(&o("w+7")));
        assert!(OrdinalInterval::new(o("w"), o("5")).is_err());
    }

    #[test]
    fn min_norm_examples() {
        let w = iv("w+1", "w+1").min_norm();
        assert_eq!((w.ordinal, w.norm), (o("w+1"), 2));
        // ω+1 and ω·2 both have norm 2; the lesser is reported
        let w = iv("w+1", "w*2").min_norm();
        assert_eq!((w.ordinal, w.norm), (o("w+1"), 2));
        let w = iv("5", "w^2").min_norm();
        assert_eq!((w.ordinal, w.norm), (o("w"), 1));
        let w = iv("0", "w^5").min_norm();
        assert_eq!((w.ordinal, w.norm), (o("0"), 0));
        let w = iv("w^2+w*3+1", "w^2+w*9").min_norm();
        assert_eq!((w.ordinal, w.norm), (o("w^2+w*3+1"), 5));
        let w = iv("w^3+w+1", "w^4").min_norm();
        assert_eq!((w.ordinal, w.norm), (o("w^4"), 1));
        let w = iv("w^3+w+1", "w^3*2").min_norm();
        assert_eq!((w.ordinal, w.norm), (o("w^3+w^2"), 2));
    }

    #[test]
    fn contains_norm_examples() {
        assert_eq!(iv("w+1", "w+1").member_with_norm(2), Some(o("w+1")));
        assert_eq!(iv("w+1", "w+1").member_with_norm(1), None);
        let m = iv("w*2", "w^2").member_with_norm(3).unwrap();
        assert_eq!(m.norm(), 3);
        assert!(iv("w*2", "w^2").contains(&m));
        // an interval with a limit inside holds arbitrarily large norms
        assert!(iv("w", "w*2").contains_norm(1_000));
        assert!(!iv("5", "7").contains_norm(8));
        assert!(!iv("w^2+w*2", "w^2+w*4").contains_norm(1));
    }

    /// Every ordinal below ω^(max_exp+1) whose norm is at most `max_norm`,
    /// sorted, built directly from coefficient vectors.
    fn small_norm_ordinals(max_exp: u32, max_norm: u32) -> Vec<Ordinal> {
        fn go(e: i64, budget: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<Ordinal>) {
            if e < 0 {
                out.push(
                    Ordinal::from_terms(acc.iter().map(|&(e, c)| (Ordinal::nat(e), c))).unwrap(),
                );
                return;
            }
            go(e - 1, budget, acc, out);
            for c in 1..=budget {
                acc.push((e as u32, c));
                go(e - 1, budget - c, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(max_exp as i64, max_norm, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    #[test]
    fn agrees_with_enumeration_on_a_grid() {
        let grid = OrdinalGrid::new(2, 3, 3).enumerate();
        let pool = small_norm_ordinals(2, 10);
        for (i, lo) in grid.iter().enumerate() {
            for hi in &grid[i..] {
                let range = OrdinalInterval::new(lo.clone(), hi.clone()).unwrap();
                let inside: Vec<&Ordinal> = pool.iter().filter(|x| range.contains(x)).collect();
                let best = inside.iter().min_by_key(|x| (x.norm(), (*x))).unwrap();
                let got = range.min_norm();
                assert_eq!((&got.ordinal, got.norm), (*best, best.norm()), "{range}");
                for n in 0..=8 {
                    let expect = inside.iter().any(|x| x.norm() == n);
                    let found = range.member_with_norm(n);
                    assert_eq!(found.is_some(), expect, "{range} norm {n}");
                    if let Some(wit) = found {
                        assert!(range.contains(&wit) && wit.norm() == n);
                    }
                }
            }
        }
    }
}
