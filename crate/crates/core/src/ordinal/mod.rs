//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a strictly decreasing sequence of terms `ω^e·c` where
//! every exponent `e` is itself an ordinal and every coefficient `c` is a
//! positive machine natural. Coefficients sit on the right, so `ω·2` means
//! `ω + ω`; a natural on the left would be absorbed (`2·ω = ω`).
//!
//! Values are immutable and cheap to clone; exponents are shared.

mod grid;
mod interval;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};

pub use grid::OrdinalGrid;
pub use interval::{NormWitness, OrdinalInterval};

/// Width of a CNF coefficient. Arithmetic on coefficients is checked.
pub type Coefficient = u32;

/// One CNF term `ω^exponent · coefficient`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exponent: Ordinal,
    coefficient: Coefficient,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> Coefficient {
        self.coefficient
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.exponent, self.coefficient)
    }
}

/// An ordinal below ε₀. Zero is the empty term sequence.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Option<Arc<[Term]>>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: None }
    }

    pub fn one() -> Self {
        Ordinal::nat(1)
    }

    pub fn nat(n: Coefficient) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal::from_terms_unchecked(vec![Term {
                exponent: Ordinal::zero(),
                coefficient: n,
            }])
        }
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// `ω^exponent`, the additively indecomposable ordinal with that exponent.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Ordinal::monomial(exponent, 1)
    }

    /// `ω^exponent · coefficient`; zero coefficient gives zero.
    pub fn monomial(exponent: Ordinal, coefficient: Coefficient) -> Self {
        if coefficient == 0 {
            return Ordinal::zero();
        }
        Ordinal::from_terms_unchecked(vec![Term {
            exponent,
            coefficient,
        }])
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs, rejecting
    /// anything that is not already in Cantor normal form.
    pub fn from_terms(pairs: impl IntoIterator<Item = (Ordinal, Coefficient)>) -> Result<Self> {
        let mut terms: Vec<Term> = Vec::new();
        for (exponent, coefficient) in pairs {
            if coefficient == 0 {
                return Err(domain("CNF coefficients must be positive"));
            }
            if let Some(prev) = terms.last() {
                if prev.exponent <= exponent {
                    return Err(domain("CNF exponents must be strictly decreasing"));
                }
            }
            terms.push(Term {
                exponent,
                coefficient,
            });
        }
        Ok(Ordinal::from_terms_unchecked(terms))
    }

    fn from_terms_unchecked(terms: Vec<Term>) -> Self {
        if terms.is_empty() {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: Some(terms.into()),
            }
        }
    }

    fn from_slice(terms: &[Term]) -> Self {
        Ordinal::from_terms_unchecked(terms.to_vec())
    }

    pub fn terms(&self) -> &[Term] {
        self.terms.as_deref().unwrap_or(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_none()
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms().first().map(|t| &t.exponent)
    }

    /// `Some(n)` when the ordinal is the natural `n`.
    pub fn as_natural(&self) -> Option<Coefficient> {
        match self.terms() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_natural().is_some()
    }

    /// A successor ordinal ends in a finite term.
    pub fn is_successor(&self) -> bool {
        self.terms().last().is_some_and(|t| t.exponent.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// `ω^e` for some `e`: exactly one term with coefficient one.
    pub fn is_indecomposable(&self) -> bool {
        matches!(self.terms(), [t] if t.coefficient == 1)
    }

    /// Sum of the CNF coefficients, ‖α‖.
    pub fn norm(&self) -> u64 {
        self.terms().iter().map(|t| u64::from(t.coefficient)).sum()
    }

    /// The smallest indecomposable summand `ω^e` of the normal form.
    pub fn tail(&self) -> Result<Ordinal> {
        self.terms()
            .last()
            .map(|t| Ordinal::omega_pow(t.exponent.clone()))
            .ok_or_else(|| domain("tail of 0 is undefined"))
    }

    /// The predecessor of a successor ordinal.
    pub fn predecessor(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms().to_vec();
        let last = terms.last_mut().expect("successor has a term");
        if last.coefficient == 1 {
            terms.pop();
        } else {
            last.coefficient -= 1;
        }
        Some(Ordinal::from_terms_unchecked(terms))
    }

    pub fn checked_add(&self, rhs: &Ordinal) -> Result<Ordinal> {
        let Some(head) = rhs.terms().first() else {
            return Ok(self.clone());
        };
        let mut out: Vec<Term> = Vec::with_capacity(self.terms().len() + rhs.terms().len());
        let mut rest = rhs.terms();
        for t in self.terms() {
            match t.exponent.cmp(&head.exponent) {
                Ordering::Greater => out.push(t.clone()),
                Ordering::Equal => {
                    let coefficient = t
                        .coefficient
                        .checked_add(head.coefficient)
                        .ok_or_else(|| overflow("addition"))?;
                    out.push(Term {
                        exponent: head.exponent.clone(),
                        coefficient,
                    });
                    rest = &rhs.terms()[1..];
                    break;
                }
                Ordering::Less => break,
            }
        }
        out.extend_from_slice(rest);
        Ok(Ordinal::from_terms_unchecked(out))
    }

    /// Ordinal product `self · rhs`, left factor `self`.
    pub fn checked_mul(&self, rhs: &Ordinal) -> Result<Ordinal> {
        let (Some(lead), false) = (self.terms().first(), rhs.is_zero()) else {
            return Ok(Ordinal::zero());
        };
        let mut out: Vec<Term> = Vec::new();
        for t in rhs.terms() {
            if t.exponent.is_zero() {
                // self · n keeps the tail of self and scales the leading term
                let coefficient = lead
                    .coefficient
                    .checked_mul(t.coefficient)
                    .ok_or_else(|| overflow("multiplication"))?;
                out.push(Term {
                    exponent: lead.exponent.clone(),
                    coefficient,
                });
                out.extend_from_slice(&self.terms()[1..]);
            } else {
                out.push(Term {
                    exponent: lead.exponent.checked_add(&t.exponent)?,
                    coefficient: t.coefficient,
                });
            }
        }
        Ok(Ordinal::from_terms_unchecked(out))
    }

    /// The unique `δ` with `self + δ = target`.
    pub fn right_difference(&self, target: &Ordinal) -> Result<Ordinal> {
        let (a, b) = (self.terms(), target.terms());
        let shared = common_prefix(a, b);
        let (Some(ta), Some(tb)) = (a.get(shared), b.get(shared)) else {
            return if shared == a.len() {
                Ok(Ordinal::from_slice(&b[shared..]))
            } else {
                Err(domain(format!("right_difference needs {self} <= {target}")))
            };
        };
        match tb.exponent.cmp(&ta.exponent) {
            Ordering::Greater => Ok(Ordinal::from_slice(&b[shared..])),
            Ordering::Equal if tb.coefficient > ta.coefficient => {
                let mut out = vec![Term {
                    exponent: tb.exponent.clone(),
                    coefficient: tb.coefficient - ta.coefficient,
                }];
                out.extend_from_slice(&b[shared + 1..]);
                Ok(Ordinal::from_terms_unchecked(out))
            }
            _ => Err(domain(format!("right_difference needs {self} <= {target}"))),
        }
    }

    /// The least `y` with `y + radius >= self`; the lower end of the
    /// backward ball of that radius around `self`.
    pub fn left_quotient(&self, radius: &Ordinal) -> Ordinal {
        let Some(head) = radius.terms().first() else {
            return self.clone();
        };
        let e = &head.exponent;
        let x = self.terms();
        let high = x.iter().take_while(|t| t.exponent > *e).count();
        let (x_e, low) = match x.get(high) {
            Some(t) if t.exponent == *e => (t.coefficient, &x[high + 1..]),
            _ => (0, &x[high..]),
        };
        let radius_rest = &radius.terms()[1..];
        let y_e = if x_e < head.coefficient {
            0
        } else if cmp_terms(radius_rest, low) != Ordering::Less {
            x_e - head.coefficient
        } else {
            x_e - head.coefficient + 1
        };
        let mut out = x[..high].to_vec();
        if y_e > 0 {
            out.push(Term {
                exponent: e.clone(),
                coefficient: y_e,
            });
        }
        Ordinal::from_terms_unchecked(out)
    }

    /// Concatenates `self` with `lower`, whose leading exponent must be
    /// below every exponent of `self`.
    pub(crate) fn concat(&self, lower: &Ordinal) -> Ordinal {
        debug_assert!(match (self.terms().last(), lower.terms().first()) {
            (Some(a), Some(b)) => a.exponent > b.exponent,
            _ => true,
        });
        let mut out = self.terms().to_vec();
        out.extend_from_slice(lower.terms());
        Ordinal::from_terms_unchecked(out)
    }
}

fn overflow(op: &str) -> Error {
    Error::Overflow(format!("coefficient overflow in ordinal {op}"))
}

/// Number of leading terms two normal forms share exactly.
fn common_prefix(a: &[Term], b: &[Term]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn cmp_terms(a: &[Term], b: &[Term]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x
            .exponent
            .cmp(&y.exponent)
            .then(x.coefficient.cmp(&y.coefficient));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    a.len().cmp(&b.len())
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_terms(self.terms(), other.terms())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Coefficient> for Ordinal {
    fn from(n: Coefficient) -> Self {
        Ordinal::nat(n)
    }
}

/// Panics on coefficient overflow, like unchecked integer arithmetic in
/// debug builds. Use [`Ordinal::checked_add`] on untrusted input.
impl std::ops::Add for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        self.checked_add(rhs).expect("ordinal addition overflowed")
    }
}

impl std::ops::Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        &self + &rhs
    }
}

/// Panics on coefficient overflow; see [`Ordinal::checked_mul`].
impl std::ops::Mul for &Ordinal {
    type Output = Ordinal;

    fn mul(self, rhs: &Ordinal) -> Ordinal {
        self.checked_mul(rhs)
            .expect("ordinal multiplication overflowed")
    }
}

impl std::ops::Mul for Ordinal {
    type Output = Ordinal;

    fn mul(self, rhs: Ordinal) -> Ordinal {
        &self * &rhs
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(o("w").cmp(&o("w")), Ordering::Equal);
        assert_eq!(o("w*2+1").cmp(&o("w^2")), Ordering::Less);
        assert!(o("w^w") > o("w^5*100"));
        assert!(Ordinal::zero() < Ordinal::one());
    }

    #[test]
    fn addition_absorbs_smaller_terms() {
        assert_eq!(&o("1") + &o("w"), o("w"));
        assert_eq!(&o("w") + &o("1"), o("w+1"));
        assert_eq!(&o("w^2+w") + &o("w^2*2+3"), o("w^2*3+3"));
        assert_eq!(&o("w^2+5") + &Ordinal::zero(), o("w^2+5"));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&o("w") * &o("2"), o("w*2"));
        assert_eq!(&o("2") * &o("w"), o("w"));
        assert_eq!(&o("w+1") * &o("w"), o("w^2"));
        assert_eq!(&o("w+1") * &o("2"), o("w*2+1"));
        assert_eq!(&o("w^2*3+w") * &o("w"), o("w^3"));
        assert_eq!(&o("w^w") * &o("w^w"), o("w^(w*2)"));
        assert_eq!(&o("0") * &o("w"), Ordinal::zero());
    }

    #[test]
    fn coefficient_overflow_is_an_error() {
        let big = Ordinal::nat(Coefficient::MAX);
        assert!(matches!(big.checked_add(&Ordinal::one()), Err(Error::Overflow(_))));
        assert!(matches!(
            o("w*2").checked_mul(&big),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn norm_and_tail() {
        assert_eq!(o("w^2*3+w*2+5").norm(), 10);
        assert_eq!(Ordinal::zero().norm(), 0);
        assert_eq!(o("w^w").norm(), 1);
        assert_eq!(o("w^2*3+w*2+5").tail().unwrap(), Ordinal::one());
        assert_eq!(o("w^w").tail().unwrap(), o("w^w"));
        assert!(matches!(Ordinal::zero().tail(), Err(Error::Domain(_))));
    }

    #[test]
    fn indecomposables() {
        assert!(o("w^3").is_indecomposable());
        assert!(!o("w*2").is_indecomposable());
        assert!(o("1").is_indecomposable());
        assert!(!Ordinal::zero().is_indecomposable());
        assert!(!o("w+1").is_indecomposable());
    }

    #[test]
    fn right_difference_examples() {
        assert_eq!(o("w").right_difference(&o("w+5")).unwrap(), o("5"));
        assert_eq!(o("3").right_difference(&o("w")).unwrap(), o("w"));
        let d = o("w^2").right_difference(&o("w^2*2+w")).unwrap();
        assert_eq!(d, o("w^2+w"));
        assert_eq!(&o("w^2") + &d, o("w^2*2+w"));
        assert!(o("w+1").right_difference(&o("w")).is_err());
        assert!(o("w^2").right_difference(&o("w*7")).is_err());
    }

    #[test]
    fn left_quotient_examples() {
        assert_eq!(o("5").left_quotient(&o("10")), Ordinal::zero());
        assert_eq!(o("100").left_quotient(&o("7")), o("93"));
        assert_eq!(o("w*2+3").left_quotient(&o("w")), o("w*2"));
        assert_eq!(o("w^2+w*3").left_quotient(&o("w")), o("w^2+w*2"));
        assert_eq!(o("w").left_quotient(&o("w")), Ordinal::zero());
        assert_eq!(o("w+4").left_quotient(&Ordinal::zero()), o("w+4"));
    }

    #[test]
    fn successor_structure() {
        assert!(o("w+1").is_successor());
        assert!(o("w^2").is_limit());
        assert!(!Ordinal::zero().is_limit());
        assert_eq!(o("w*2+1").predecessor(), Some(o("w*2")));
        assert_eq!(o("w+3").predecessor(), Some(o("w+2")));
        assert_eq!(o("w").predecessor(), None);
    }

    #[test]
    fn from_terms_validates() {
        assert!(Ordinal::from_terms([(o("1"), 1), (o("2"), 1)]).is_err());
        assert!(Ordinal::from_terms([(o("1"), 0)]).is_err());
        assert_eq!(
            Ordinal::from_terms([(o("2"), 3), (o("1"), 2), (o("0"), 5)]).unwrap(),
            o("w^2*3+w*2+5")
        );
    }
}
