//! Sparse multivariate Laurent polynomials over the integers.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

pub type Exponents = Vec<i32>;

/// `sum c_e x^e` with integer (possibly negative) exponent vectors `e`.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, i128>,
}

fn overflow() -> Error {
    Error::Overflow("Laurent polynomial arithmetic")
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i128) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn monomial(exponents: Exponents, c: i128) -> Self {
        let mut p = Self::zero(exponents.len());
        if c != 0 {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponents, i128)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector of length {} in a {nvars}-variable polynomial",
                    e.len()
                )));
            }
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(e.clone()).or_insert(0);
        *slot = slot.checked_add(c).ok_or_else(overflow)?;
        if *slot == 0 {
            self.terms.remove(&e);
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, i128)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coeff(&self, e: &[i32]) -> i128 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i128 {
        self.coeff(&vec![0; self.nvars])
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::InvalidArgument(format!(
                "variable counts differ: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            let slot = out.terms.entry(e.clone()).or_insert(0);
            *slot = slot.checked_add(c).ok_or_else(overflow)?;
        }
        out.terms.retain(|_, v| *v != 0);
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut terms: BTreeMap<Exponents, i128> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca.checked_mul(cb).ok_or_else(overflow)?;
                let slot = terms.entry(e).or_insert(0);
                *slot = slot.checked_add(c).ok_or_else(overflow)?;
            }
        }
        terms.retain(|_, v| *v != 0);
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Constant term of `self * other` without forming the product.
    pub fn constant_term_of_product(&self, other: &Self) -> Result<i128> {
        self.check_shape(other)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut total: i128 = 0;
        let mut negated = vec![0; self.nvars];
        for (e, c) in small.terms() {
            for (slot, x) in negated.iter_mut().zip(e) {
                *slot = -x;
            }
            let d = large.coeff(&negated);
            if d != 0 {
                total = c
                    .checked_mul(d)
                    .and_then(|v| total.checked_add(v))
                    .ok_or_else(overflow)?;
            }
        }
        Ok(total)
    }

    pub fn scale(&self, k: i128) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero(self.nvars));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| Ok((e.clone(), c.checked_mul(k).ok_or_else(overflow)?)))
            .collect::<Result<_>>()?;
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Divides every coefficient by `d`, failing unless each division is exact.
    pub fn div_exact(&self, d: i128, context: &'static str) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, &c) in &self.terms {
            if c % d != 0 {
                return Err(Error::InexactDivision {
                    context,
                    numerator: c,
                    denominator: d,
                });
            }
            terms.insert(e.clone(), c / d);
        }
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Substitutes `x_i -> 1/x_i` in every variable.
    pub fn invert_variables(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (e.iter().map(|x| -x).collect(), c))
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn max_abs_exponent(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().map(|x| (*x as i64).abs()))
            .max()
            .unwrap_or(0)
    }

    /// Renders with the given variable names, e.g. `2 + a1*a2^-1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, &c) in &self.terms {
            let monomial: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(x, _)| **x != 0)
                .map(|(x, name)| {
                    if *x == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            let sign = if c < 0 { "-" } else { "+" };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let mag = c.unsigned_abs();
            match (monomial.is_empty(), mag) {
                (true, m) => out.push_str(&m.to_string()),
                (false, 1) => out.push_str(&monomial.join("*")),
                (false, m) => out.push_str(&format!("{m}*{}", monomial.join("*"))),
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((proptest::collection::vec(-3i32..=3, 2), -5i128..=5), 0..8)
            .prop_map(|terms| LaurentPoly::from_terms(2, terms).unwrap())
    }

    #[test]
    fn basic_arithmetic() {
        let x = LaurentPoly::monomial(vec![1, -1], 1);
        let y = LaurentPoly::monomial(vec![-1, 1], 1);
        let s = x
            .add(&y)
            .unwrap()
            .add(&LaurentPoly::constant(2, 2))
            .unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.constant_term(), 2);
        let sq = s.mul(&s).unwrap();
        // (2 + t + 1/t)^2 has constant term 4 + 2 = 6
        assert_eq!(sq.constant_term(), 6);
        assert_eq!(s.constant_term_of_product(&s).unwrap(), 6);
        assert_eq!(x.mul(&y).unwrap(), LaurentPoly::one(2));
        assert!(x.add(&x.scale(-1).unwrap()).unwrap().is_zero());
        assert_eq!(s.to_string(), "x1^-1*x2 + 2 + x1*x2^-1");
    }

    #[test]
    fn exact_division() {
        let p = LaurentPoly::from_terms(1, [(vec![1], 4), (vec![-2], -6)]).unwrap();
        assert_eq!(p.div_exact(2, "test").unwrap().coeff(&[-2]), -3);
        assert!(matches!(
            p.div_exact(4, "test"),
            Err(Error::InexactDivision {
                numerator: -6,
                denominator: 4,
                ..
            })
        ));
        assert!(LaurentPoly::one(1).mul(&LaurentPoly::one(2)).is_err());
    }

    proptest! {
        #[test]
        fn streamed_constant_term_matches_product(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(
                a.constant_term_of_product(&b).unwrap(),
                a.mul(&b).unwrap().constant_term()
            );
        }

        #[test]
        fn multiplication_commutes(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn inversion_is_a_ring_map(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(
                a.mul(&b).unwrap().invert_variables(),
                a.invert_variables().mul(&b.invert_variables()).unwrap()
            );
        }
    }
}
