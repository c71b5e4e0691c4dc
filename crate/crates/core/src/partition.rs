//! Integer partitions: the labels for both irreducible representations and
//! conjugacy classes of the symmetric group.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// The empty sequence is the unique partition of 0. Trailing zeros are never
/// stored, so two partitions are equal exactly when their part lists are.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, rejecting zero parts and increasing order.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::Parse {
                text: format_parts(&parts),
                reason: format!("part {} is zero", pos + 1),
            });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse {
                text: format_parts(&parts),
                reason: "parts must be weakly decreasing".into(),
            });
        }
        Ok(Partition { parts })
    }

    /// Sorts and strips zeros before building. Useful for cycle types.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|col| self.parts.iter().take_while(|&&p| p >= col).count())
            .collect();
        Partition { parts }
    }

    /// Centralizer order `z = prod_i i^{m_i} m_i!` of a permutation with this
    /// cycle type.
    pub fn z_order(&self) -> Result<i128> {
        let mut z: i128 = 1;
        let mut idx = 0;
        while idx < self.parts.len() {
            let size = self.parts[idx];
            let mult = self.parts[idx..].iter().take_while(|&&p| p == size).count();
            for k in 1..=mult {
                z = z
                    .checked_mul(size as i128)
                    .and_then(|z| z.checked_mul(k as i128))
                    .ok_or(Error::Overflow("z_order"))?;
            }
            idx += mult;
        }
        Ok(z)
    }

    /// Sign of a permutation with this cycle type.
    pub fn sign(&self) -> i128 {
        if (self.weight() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Dimension of the irreducible representation, by the hook-length formula.
    pub fn dimension(&self) -> Result<i128> {
        let conj = self.conjugate();
        let mut hooks: Vec<i128> = Vec::with_capacity(self.weight());
        for (row, &len) in self.parts.iter().enumerate() {
            for col in 0..len {
                let arm = len - col - 1;
                let leg = conj.parts[col] - row - 1;
                hooks.push((arm + leg + 1) as i128);
            }
        }
        // Cancel hook factors against the factorial as we go so the running
        // value stays a small integer.
        let mut numer: i128 = 1;
        let mut pending = hooks;
        for k in 1..=self.weight() as i128 {
            numer = numer.checked_mul(k).ok_or(Error::Overflow("dimension"))?;
            pending.retain(|&h| {
                if numer % h == 0 {
                    numer /= h;
                    false
                } else {
                    true
                }
            });
        }
        for h in pending {
            if numer % h != 0 {
                return Err(Error::Internal("hook product does not divide n!".into()));
            }
            numer /= h;
        }
        Ok(numer)
    }
}

fn format_parts(parts: &[usize]) -> String {
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_parts(&self.parts))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_partition(text)
    }
}

/// Parses `"6,2"` style text; `"-"` is the empty partition.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let trimmed = text.trim();
    if trimmed == "-" {
        return Ok(Partition::empty());
    }
    let err = |reason: String| Error::Parse {
        text: text.to_string(),
        reason,
    };
    if trimmed.is_empty() {
        return Err(err("empty input (use `-` for the empty partition)".into()));
    }
    let mut parts = Vec::new();
    for token in trimmed.split(',') {
        let token = token.trim();
        let value: i64 = token
            .parse()
            .map_err(|_| err(format!("token `{token}` is not an integer")))?;
        if value <= 0 {
            return Err(err(format!("token `{token}` is not a positive integer")));
        }
        let value = value as usize;
        if let Some(&prev) = parts.last() {
            if value > prev {
                return Err(err(format!(
                    "parts must be weakly decreasing (token `{token}` follows {prev})"
                )));
            }
        }
        parts.push(value);
    }
    Ok(Partition { parts })
}

pub fn format_partition(p: &Partition) -> String {
    p.to_string()
}

/// All partitions of `n` with at most `max_parts` parts, in reverse
/// lexicographic order starting from `(n)`.
pub fn partitions_of(n: usize, max_parts: Option<usize>) -> Vec<Partition> {
    let max_parts = max_parts.unwrap_or(n);
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, max_parts, &mut current, &mut out);
    out
}

fn fill(
    remaining: usize,
    largest: usize,
    slots: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    if slots == 0 {
        return;
    }
    for part in (1..=largest.min(remaining)).rev() {
        // the remaining slots must be able to absorb what is left
        if part * slots < remaining {
            break;
        }
        current.push(part);
        fill(remaining - part, part, slots - 1, current, out);
        current.pop();
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_partition(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Euler's pentagonal recurrence for the partition numbers.
    fn partition_numbers(limit: usize) -> Vec<i64> {
        let mut pn = vec![0i64; limit + 1];
        pn[0] = 1;
        for n in 1..=limit {
            let mut total = 0i64;
            for k in 1i64.. {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                total += sign * pn[n - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= n {
                    total += sign * pn[n - g2];
                }
            }
            pn[n] = total;
        }
        pn
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(partitions_of(0, None), vec![Partition::empty()]);
        assert_eq!(
            partitions_of(4, Some(2)),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]
        );
        assert_eq!(
            partitions_of(8, Some(2)),
            vec![p(&[8]), p(&[7, 1]), p(&[6, 2]), p(&[5, 3]), p(&[4, 4])]
        );
        assert!(partitions_of(3, Some(0)).is_empty());
        assert_eq!(partitions_of(0, Some(0)), vec![Partition::empty()]);
    }

    #[test]
    fn counts_match_pentagonal_recurrence() {
        let pn = partition_numbers(30);
        assert_eq!(pn[8], 22);
        assert_eq!(pn[12], 77);
        for (n, &count) in pn.iter().enumerate() {
            let all = partitions_of(n, None);
            assert_eq!(all.len() as i64, count, "n = {n}");
            assert!(all.windows(2).all(|w| w[0] > w[1]), "order at n = {n}");
            assert!(all.iter().all(|q| q.weight() == n));
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[6, 2]).conjugate(), p(&[2, 2, 1, 1, 1, 1]));
        for n in 0..=12 {
            for q in partitions_of(n, None) {
                assert_eq!(q.conjugate().conjugate(), q);
            }
        }
    }

    #[test]
    fn z_order_examples() {
        assert_eq!(p(&[1, 1, 1]).z_order().unwrap(), 6);
        assert_eq!(p(&[3]).z_order().unwrap(), 3);
        assert_eq!(p(&[2, 2, 1]).z_order().unwrap(), 8);
        assert_eq!(Partition::empty().z_order().unwrap(), 1);
    }

    #[test]
    fn dimension_examples() {
        for n in 0..=10 {
            assert_eq!(Partition::row(n).dimension().unwrap(), 1);
        }
        assert_eq!(p(&[2, 2]).dimension().unwrap(), 2);
        assert_eq!(p(&[2, 1]).dimension().unwrap(), 2);
    }

    fn factorial(n: usize) -> i128 {
        (1..=n as i128).product()
    }

    #[test]
    fn sum_rules() {
        for n in 0..=12 {
            let parts = partitions_of(n, None);
            let dims: i128 = parts.iter().map(|q| q.dimension().unwrap().pow(2)).sum();
            assert_eq!(dims, factorial(n), "dimension sum at n = {n}");
            let classes: i128 = parts
                .iter()
                .map(|q| factorial(n) / q.z_order().unwrap())
                .sum();
            assert_eq!(classes, factorial(n), "class sum at n = {n}");
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_partition("6,2").unwrap(), p(&[6, 2]));
        assert_eq!(parse_partition("-").unwrap(), Partition::empty());
        assert_eq!(format_partition(&Partition::empty()), "-");
        let err = parse_partition("2,3").unwrap_err().to_string();
        assert!(err.contains("parts must be weakly decreasing"), "{err}");
        assert!(err.contains('3'));
        let err = parse_partition("3,0").unwrap_err().to_string();
        assert!(err.contains("`0`"), "{err}");
        assert!(parse_partition("3,x")
            .unwrap_err()
            .to_string()
            .contains("`x`"));
        assert!(parse_partition("-2").is_err());
        assert!(parse_partition("").is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn json_uses_text_form() {
        let q = p(&[5, 3]);
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, "\"5,3\"");
        let back: Partition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_partition() -> impl Strategy<Value = Partition> {
            proptest::collection::vec(1usize..12, 0..10).prop_map(Partition::from_unsorted)
        }

        proptest! {
            #[test]
            fn text_round_trip(q in arb_partition()) {
                prop_assert_eq!(parse_partition(&format_partition(&q)).unwrap(), q);
            }

            #[test]
            fn conjugate_preserves_weight(q in arb_partition()) {
                prop_assert_eq!(q.conjugate().weight(), q.weight());
                prop_assert_eq!(q.conjugate().conjugate(), q);
            }
        }
    }
}
