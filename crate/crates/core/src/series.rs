//! Truncated power series with exact integer coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `c_0 + c_1 x + ... + c_D x^D + O(x^{D+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeriesZ {
    coeffs: Vec<i128>,
}

/// On-disk form: `{"truncation_degree": D, "coefficients": [c0, ..., cD]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub truncation_degree: usize,
    pub coefficients: Vec<i128>,
}

fn overflow() -> Error {
    Error::Overflow("series arithmetic")
}

impl SeriesZ {
    /// Builds a series truncated at degree `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<i128>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least the constant coefficient".into(),
            ));
        }
        Ok(SeriesZ { coeffs })
    }

    pub fn one(degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[0] = 1;
        SeriesZ { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        SeriesZ {
            coeffs: vec![0; degree + 1],
        }
    }

    /// `1 + sign * x^k`, truncated at `degree`.
    pub fn binomial(k: usize, sign: i128, degree: usize) -> Self {
        let mut s = Self::one(degree);
        if k <= degree {
            s.coeffs[k] += sign;
        }
        s
    }

    /// `1 / (1 - x^k)` truncated at `degree`; `k` must be positive.
    pub fn geometric(k: usize, degree: usize) -> Self {
        assert!(k > 0, "geometric series needs a positive step");
        let mut s = Self::zero(degree);
        for d in (0..=degree).step_by(k) {
            s.coeffs[d] = 1;
        }
        s
    }

    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i128 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn truncate(&self, degree: usize) -> Self {
        let d = degree.min(self.truncation_degree());
        SeriesZ {
            coeffs: self.coeffs[..=d].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let d = self.truncation_degree().min(other.truncation_degree());
        let coeffs = (0..=d)
            .map(|k| {
                self.coeffs[k]
                    .checked_add(other.coeffs[k])
                    .ok_or_else(overflow)
            })
            .collect::<Result<_>>()?;
        Ok(SeriesZ { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let d = self.truncation_degree().min(other.truncation_degree());
        let coeffs = (0..=d)
            .map(|k| {
                self.coeffs[k]
                    .checked_sub(other.coeffs[k])
                    .ok_or_else(overflow)
            })
            .collect::<Result<_>>()?;
        Ok(SeriesZ { coeffs })
    }

    /// Product truncated at the smaller of the two truncation degrees.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.truncation_degree().min(other.truncation_degree());
        let mut coeffs = vec![0i128; d + 1];
        for (i, &a) in self.coeffs[..=d].iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..=d - i].iter().enumerate() {
                let term = a.checked_mul(b).ok_or_else(overflow)?;
                coeffs[i + j] = coeffs[i + j].checked_add(term).ok_or_else(overflow)?;
            }
        }
        Ok(SeriesZ { coeffs })
    }

    /// Multiplicative inverse; the constant term must be a unit (+1 or -1).
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 != 1 && c0 != -1 {
            return Err(Error::ConstantTerm {
                expected: "+1 or -1",
                found: c0,
            });
        }
        let d = self.truncation_degree();
        let mut inv = vec![0i128; d + 1];
        inv[0] = c0;
        for k in 1..=d {
            let mut acc: i128 = 0;
            for j in 1..=k {
                let term = self.coeffs[j]
                    .checked_mul(inv[k - j])
                    .ok_or_else(overflow)?;
                acc = acc.checked_add(term).ok_or_else(overflow)?;
            }
            // c0 is its own inverse
            inv[k] = acc.checked_neg().ok_or_else(overflow)? * c0;
        }
        Ok(SeriesZ { coeffs: inv })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse()?)
    }

    /// First degree within the common truncation where the two differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let d = self.truncation_degree().min(other.truncation_degree());
        (0..=d).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    pub fn to_file(&self) -> SeriesFile {
        SeriesFile {
            truncation_degree: self.truncation_degree(),
            coefficients: self.coeffs.clone(),
        }
    }

    pub fn from_file(file: SeriesFile) -> Result<Self> {
        if file.coefficients.len() != file.truncation_degree + 1 {
            return Err(Error::SeriesFile(format!(
                "field `coefficients` has {} entries but `truncation_degree` is {} (expected {})",
                file.coefficients.len(),
                file.truncation_degree,
                file.truncation_degree + 1
            )));
        }
        SeriesZ::new(file.coefficients)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("series serializes")
    }

    /// Parses the JSON series format; errors carry line and column context.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SeriesFile =
            serde_json::from_str(text).map_err(|e| Error::SeriesFile(e.to_string()))?;
        Self::from_file(file)
    }

    /// Renders as `1 + q + 4 q^2 + ... + O(q^{D+1})` in the variable `var`.
    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let magnitude = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let monomial = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            match (k, magnitude) {
                (0, m) => out.push_str(&m.to_string()),
                (_, 1) => out.push_str(&monomial),
                (_, m) => out.push_str(&format!("{m} {monomial}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out.push_str(&format!(" + O({var}^{})", self.coeffs.len()));
        out
    }
}

impl Serialize for SeriesZ {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SeriesZ {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let file = SeriesFile::deserialize(deserializer)?;
        SeriesZ::from_file(file).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for SeriesZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(c: &[i128]) -> SeriesZ {
        SeriesZ::new(c.to_vec()).unwrap()
    }

    #[test]
    fn arithmetic_respects_truncation() {
        let a = s(&[1, 1, 1, 1, 1]);
        let b = s(&[1, -1, 0]);
        assert_eq!(a.mul(&b).unwrap(), s(&[1, 0, 0]));
        assert_eq!(a.add(&b).unwrap(), s(&[2, 0, 1]));
        assert_eq!(SeriesZ::one(4).div(&s(&[1, -1, 0, 0, 0])).unwrap(), a);
        assert_eq!(SeriesZ::geometric(2, 5), s(&[1, 0, 1, 0, 1, 0]));
        assert_eq!(s(&[-1, 1]).inverse().unwrap(), s(&[-1, -1]));
        assert!(matches!(
            s(&[2, 1]).inverse(),
            Err(Error::ConstantTerm { found: 2, .. })
        ));
        assert!(SeriesZ::new(vec![]).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = s(&[1, i128::MAX]);
        assert!(matches!(big.mul(&big), Err(Error::Overflow(_))));
    }

    #[test]
    fn rendering() {
        let f = s(&[1, 1, 4, 6, 0, -2]);
        assert_eq!(f.render("q"), "1 + q + 4 q^2 + 6 q^3 - 2 q^5 + O(q^6)");
        assert_eq!(s(&[0, -1]).render("x"), "-x + O(x^2)");
        assert_eq!(s(&[0]).render("x"), "0 + O(x^1)");
    }

    #[test]
    fn json_format() {
        let f = s(&[1, 1, 4]);
        assert_eq!(
            f.to_json(),
            r#"{"truncation_degree":2,"coefficients":[1,1,4]}"#
        );
        assert_eq!(SeriesZ::from_json(&f.to_json()).unwrap(), f);
        let err = SeriesZ::from_json(r#"{"truncation_degree":3,"coefficients":[1,1,4]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("coefficients"), "{err}");
        let err = SeriesZ::from_json("{\n\"truncation_degree\": 1,\n\"coefficients\": [1, \"x\"]}")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 3"), "{err}");
    }

    fn arb_series() -> impl Strategy<Value = SeriesZ> {
        proptest::collection::vec(-50i128..50, 1..12).prop_map(|mut c| {
            c[0] = 1;
            SeriesZ::new(c).unwrap()
        })
    }

    proptest! {
        #[test]
        fn inverse_round_trip(a in arb_series()) {
            let d = a.truncation_degree();
            prop_assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), SeriesZ::one(d));
        }

        #[test]
        fn json_round_trip(a in arb_series()) {
            prop_assert_eq!(SeriesZ::from_json(&a.to_json()).unwrap(), a);
        }
    }
}
