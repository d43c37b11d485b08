use super::{Coefficient, Ordinal};

/// A finite box of ordinals: natural exponents `<= max_exponent`,
/// coefficients `<= max_coefficient`, at most `max_terms` terms.
///
/// The box is closed under taking the tail `r(α)` and under
/// [`Ordinal::left_quotient`], which makes it a convenient brute-force domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrdinalGrid {
    pub max_exponent: u32,
    pub max_coefficient: Coefficient,
    pub max_terms: usize,
}

impl OrdinalGrid {
    pub fn new(max_exponent: u32, max_coefficient: Coefficient, max_terms: usize) -> Self {
        OrdinalGrid {
            max_exponent,
            max_coefficient,
            max_terms,
        }
    }

    /// All members in increasing order.
    pub fn enumerate(&self) -> Vec<Ordinal> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend(self.max_exponent as i64, &mut current, &mut out);
        out.sort();
        out
    }

    fn extend(&self, exponent: i64, current: &mut Vec<(u32, Coefficient)>, out: &mut Vec<Ordinal>) {
        if exponent < 0 || current.len() == self.max_terms {
            let terms = current
                .iter()
                .map(|&(e, c)| (Ordinal::nat(e), c));
            out.push(Ordinal::from_terms(terms).expect("grid terms are in normal form"));
            return;
        }
        self.extend(exponent - 1, current, out);
        for c in 1..=self.max_coefficient {
            current.push((exponent as u32, c));
            self.extend(exponent - 1, current, out);
            current.pop();
        }
    }

    pub fn contains(&self, a: &Ordinal) -> bool {
        a.terms().len() <= self.max_terms
            && a.terms().iter().all(|t| {
                t.coefficient() <= self.max_coefficient
                    && t.exponent()
                        .as_natural()
                        .is_some_and(|e| e <= self.max_exponent)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_grid_is_the_naturals() {
        let g = OrdinalGrid::new(0, 3, 1).enumerate();
        let expected: Vec<Ordinal> = (0..=3).map(Ordinal::nat).collect();
        assert_eq!(g, expected);
    }

    #[test]
    fn sorted_and_counted() {
        for (e, c, t) in [(1, 2, 2), (3, 4, 3), (2, 3, 1), (4, 2, 5)] {
            let grid = OrdinalGrid::new(e, c, t);
            let members = grid.enumerate();
            assert!(members.windows(2).all(|w| w[0] < w[1]));
            // choose which exponents appear, then a coefficient for each
            let expected: u64 = (0..=t.min(e as usize + 1) as u64)
                .map(|k| binomial(u64::from(e) + 1, k) * u64::from(c).pow(k as u32))
                .sum();
            assert_eq!(members.len() as u64, expected, "grid {e}/{c}/{t}");
            assert!(members.iter().all(|m| grid.contains(m)));
        }
    }

    #[test]
    fn closed_under_tail() {
        let grid = OrdinalGrid::new(3, 4, 3);
        for a in grid.enumerate().iter().filter(|a| !a.is_zero()) {
            assert!(grid.contains(&a.tail().unwrap()));
        }
    }
}
