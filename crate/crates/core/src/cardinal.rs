//! Symbolic cardinals `ℵ_ξ` with `ξ < ε₀` and the asymptotic invariants
//! of the cardinal ballean on them.
//!
//! Every limit ordinal below ε₀ has cofinality ω, so every limit cardinal
//! representable here other than `ℵ_0` is singular. Weakly inaccessible
//! cardinals are out of reach of the notation.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CardinalDesc {
    index: Ordinal,
}

impl CardinalDesc {
    pub fn aleph(index: Ordinal) -> Self {
        CardinalDesc { index }
    }

    pub fn aleph_nat(n: u32) -> Self {
        Self::aleph(Ordinal::nat(n))
    }

    pub fn aleph_zero() -> Self {
        Self::aleph(Ordinal::zero())
    }

    pub fn index(&self) -> &Ordinal {
        &self.index
    }

    pub fn successor(&self) -> Result<Self> {
        Ok(Self::aleph(self.index.checked_add(&Ordinal::one())?))
    }

    /// `κ` with `κ⁺ = self`, for successor cardinals.
    pub fn predecessor(&self) -> Option<Self> {
        self.index.predecessor().map(Self::aleph)
    }

    pub fn is_limit_cardinal(&self) -> bool {
        !self.index.is_successor()
    }

    pub fn cofinality(&self) -> Self {
        if self.is_limit_cardinal() {
            Self::aleph_zero()
        } else {
            self.clone()
        }
    }

    pub fn is_regular(&self) -> bool {
        self.cofinality() == *self
    }

    /// The `k`-th term of an increasing sequence of indices cofinal in a
    /// limit index; `None` for `0` and successor indices.
    pub fn cofinal_index(&self, k: u32) -> Option<Ordinal> {
        fundamental(&self.index, k)
    }

    pub fn invariants(&self) -> InvariantTable {
        let cf = self.cofinality();
        let thin = if self.is_limit_cardinal() {
            cf.clone()
        } else {
            self.predecessor().expect("successor index")
        };
        InvariantTable {
            den: self.clone(),
            spread: self.clone(),
            res: self.clone(),
            thick: self.clone(),
            thin,
            cores: Self::aleph_zero(),
            metrizable: cf == Self::aleph_zero(),
            cellular: !self.index.is_zero(),
        }
    }
}

/// `α[k]` for limit `α`: with `α = β + ω^e`, `β + ω^{e-1}·k` when `e` is a
/// successor and `β + ω^{e[k]}` otherwise.
fn fundamental(alpha: &Ordinal, k: u32) -> Option<Ordinal> {
    if !alpha.is_limit() {
        return None;
    }
    let last = alpha.terms().last().expect("limit ordinals are nonzero");
    let e = last.exponent();
    let prefix = Ordinal::from_terms(
        alpha.terms()[..alpha.terms().len() - 1]
            .iter()
            .map(|t| (t.exponent().clone(), t.coefficient()))
            .chain((last.coefficient() > 1).then(|| (e.clone(), last.coefficient() - 1))),
    )
    .expect("a prefix of a normal form is normal");
    let step = match e.predecessor() {
        Some(p) => Ordinal::monomial(p, k.max(1)),
        None => Ordinal::omega_pow(fundamental(e, k)?),
    };
    Some(&prefix + &step)
}

/// Coarse equivalence of the cardinal balleans: they are equivalent
/// exactly when the cardinals agree.
pub fn coarse_equivalent(a: &CardinalDesc, b: &CardinalDesc) -> bool {
    a == b
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantTable {
    pub den: CardinalDesc,
    pub spread: CardinalDesc,
    pub res: CardinalDesc,
    pub thick: CardinalDesc,
    pub thin: CardinalDesc,
    pub cores: CardinalDesc,
    pub metrizable: bool,
    pub cellular: bool,
}

impl InvariantTable {
    /// `(name, value)` rows in a fixed order.
    pub fn rows(&self) -> Vec<(&'static str, String)> {
        vec![
            ("den", self.den.to_string()),
            ("spread", self.spread.to_string()),
            ("res", self.res.to_string()),
            ("thick", self.thick.to_string()),
            ("thin", self.thin.to_string()),
            ("cores", self.cores.to_string()),
            ("metrizable", self.metrizable.to_string()),
            ("cellular", self.cellular.to_string()),
        ]
    }
}

impl fmt::Display for CardinalDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.index.to_string();
        if text.contains(['+', '*', '^']) {
            write!(f, "aleph_({text})")
        } else {
            write!(f, "aleph_{text}")
        }
    }
}

impl FromStr for CardinalDesc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let expr = s
            .strip_prefix("aleph_")
            .ok_or_else(|| domain(format!("{s:?} is not of the form aleph_<ordinal>")))?;
        expr.parse().map(Self::aleph).map_err(|e| match e {
            Error::Syntax { position, message } => Error::Syntax {
                position: position + "aleph_".len(),
                message,
            },
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::OrdinalGrid;

    fn k(s: &str) -> CardinalDesc {
        s.parse().unwrap()
    }

    #[test]
    fn text_form() {
        assert_eq!(k("aleph_0").to_string(), "aleph_0");
        assert_eq!(k("aleph_(w+1)").to_string(), "aleph_(w+1)");
        assert_eq!(k("aleph_w").to_string(), "aleph_w");
        assert_eq!(k("aleph_w^2").to_string(), "aleph_(w^2)");
        assert!("omega_1".parse::<CardinalDesc>().is_err());
        assert!(matches!(
            "aleph_(w".parse::<CardinalDesc>(),
            Err(Error::Syntax { position: 8, .. })
        ));
    }

    #[test]
    fn successor_and_cofinality() {
        assert_eq!(k("aleph_0").successor().unwrap(), k("aleph_1"));
        assert_eq!(k("aleph_w").successor().unwrap(), k("aleph_(w+1)"));
        assert_eq!(k("aleph_0").cofinality(), k("aleph_0"));
        assert_eq!(k("aleph_2").cofinality(), k("aleph_2"));
        assert_eq!(k("aleph_(w^2)").cofinality(), k("aleph_0"));
        assert!(k("aleph_0").is_regular());
        assert!(k("aleph_1").is_regular() && !k("aleph_1").is_limit_cardinal());
        assert!(!k("aleph_w").is_regular() && k("aleph_w").is_limit_cardinal());
    }

    #[test]
    fn cofinal_sequences() {
        let seq: Vec<String> = (1..4)
            .map(|n| k("aleph_(w^2)").cofinal_index(n).unwrap().to_string())
            .collect();
        assert_eq!(seq, ["w", "w*2", "w*3"]);
        assert_eq!(k("aleph_(w^w)").cofinal_index(3).unwrap().to_string(), "w^3");
        assert_eq!(k("aleph_(w*2)").cofinal_index(5).unwrap().to_string(), "w+5");
        assert!(k("aleph_3").cofinal_index(1).is_none());

        // every limit index on a grid has an increasing sequence below it
        // that passes every smaller grid member
        let grid = OrdinalGrid::new(3, 3, 3).enumerate();
        for alpha in grid.iter().filter(|a| a.is_limit()) {
            let c = CardinalDesc::aleph(alpha.clone());
            let seq: Vec<Ordinal> = (1..=4).map(|n| c.cofinal_index(n).unwrap()).collect();
            assert!(seq.windows(2).all(|w| w[0] < w[1]) && seq.iter().all(|s| s < alpha));
            for beta in grid.iter().filter(|b| *b < alpha) {
                assert!((1..=8).any(|n| c.cofinal_index(n).unwrap() > *beta), "{alpha} {beta}");
            }
        }
    }

    #[test]
    fn tables() {
        let t = k("aleph_0").invariants();
        assert_eq!((t.thin.clone(), t.metrizable, t.cellular), (k("aleph_0"), true, false));
        let t = k("aleph_1").invariants();
        assert_eq!((t.thin.clone(), t.metrizable, t.cellular), (k("aleph_0"), false, true));
        let t = k("aleph_w").invariants();
        assert_eq!((t.thin.clone(), t.metrizable, t.cellular), (k("aleph_0"), true, true));
        let t = k("aleph_(w+1)").invariants();
        assert_eq!(t.thin, k("aleph_w"));
        assert!(coarse_equivalent(&k("aleph_0"), &k("aleph_0")));
        assert!(!coarse_equivalent(&k("aleph_w"), &k("aleph_(w+1)")));
    }
}
