//! Candidate integrity-basis factorisations of a Hilbert-type series.
//!
//! A candidate is a [`RationalForm`] `prod (1 + x^a_i) / prod (1 - x^b_j)`:
//! the `b_j` are degrees of free generators and the `a_i` degrees of extra
//! generators whose squares or products are relations. At finite truncation
//! many forms fit equally well, so the search ranks candidates rather than
//! picking one.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::SeriesZ;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalForm {
    numerator_degrees: Vec<usize>,
    denominator_degrees: Vec<usize>,
}

impl RationalForm {
    /// Both degree multisets are stored sorted ascending; zero degrees are
    /// rejected.
    pub fn new(mut numerator: Vec<usize>, mut denominator: Vec<usize>) -> Result<Self> {
        if numerator.contains(&0) || denominator.contains(&0) {
            return Err(Error::InvalidArgument(
                "factor degrees must be positive".into(),
            ));
        }
        numerator.sort_unstable();
        denominator.sort_unstable();
        Ok(RationalForm {
            numerator_degrees: numerator,
            denominator_degrees: denominator,
        })
    }

    pub fn numerator_degrees(&self) -> &[usize] {
        &self.numerator_degrees
    }

    pub fn denominator_degrees(&self) -> &[usize] {
        &self.denominator_degrees
    }

    pub fn free_generator_count(&self) -> usize {
        self.denominator_degrees.len()
    }

    pub fn total_invariant_count(&self) -> usize {
        self.numerator_degrees.len() + self.denominator_degrees.len()
    }

    /// `prod (1 + x^a_i)` truncated at `degree`.
    pub fn numerator_series(&self, degree: usize) -> Result<SeriesZ> {
        product(&self.numerator_degrees, degree, |a, d| {
            SeriesZ::binomial(a, 1, d)
        })
    }
}

fn product(
    degrees: &[usize],
    degree: usize,
    factor: impl Fn(usize, usize) -> SeriesZ,
) -> Result<SeriesZ> {
    degrees
        .iter()
        .try_fold(SeriesZ::one(degree), |acc, &a| acc.mul(&factor(a, degree)))
}

fn powers(degrees: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &d in degrees {
        match out.last_mut() {
            Some((last, count)) if *last == d => *count += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

fn write_factors(f: &mut fmt::Formatter<'_>, degrees: &[usize], sign: char) -> fmt::Result {
    for (d, count) in powers(degrees) {
        match d {
            1 => write!(f, "(1{sign}x)")?,
            _ => write!(f, "(1{sign}x^{d})")?,
        }
        if count > 1 {
            write!(f, "^{count}")?;
        }
    }
    Ok(())
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numerator_degrees.is_empty() {
            f.write_str("1")?;
        } else {
            write_factors(f, &self.numerator_degrees, '+')?;
        }
        if !self.denominator_degrees.is_empty() {
            f.write_str(" / ")?;
            write_factors(f, &self.denominator_degrees, '-')?;
        }
        Ok(())
    }
}

/// Exact expansion of `form` through degree `degree`.
pub fn expand(form: &RationalForm, degree: usize) -> Result<SeriesZ> {
    let den = product(&form.denominator_degrees, degree, SeriesZ::geometric)?;
    form.numerator_series(degree)?.mul(&den)
}

/// `target * prod (1 - x^b_j)` through `degree`: the numerator a chosen
/// denominator would require.
pub fn numerator_for_denominator(
    target: &SeriesZ,
    denominator_degrees: &[usize],
    degree: usize,
) -> Result<SeriesZ> {
    if target.coeff(0) != 1 {
        return Err(Error::ConstantTerm {
            expected: "1",
            found: target.coeff(0),
        });
    }
    if degree > target.truncation_degree() {
        return Err(Error::InvalidArgument(format!(
            "degree {degree} exceeds target truncation {}",
            target.truncation_degree()
        )));
    }
    if denominator_degrees.contains(&0) {
        return Err(Error::InvalidArgument(
            "factor degrees must be positive".into(),
        ));
    }
    let den = product(denominator_degrees, degree, |b, d| {
        SeriesZ::binomial(b, -1, d)
    })?;
    target.truncate(degree).mul(&den)
}

/// A coefficient disagreement between two series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub degree: usize,
    pub left: i128,
    pub right: i128,
}

/// First degree, within the common truncation, where `a` and `b` differ.
pub fn compare(a: &SeriesZ, b: &SeriesZ) -> Option<Mismatch> {
    a.first_difference(b).map(|degree| Mismatch {
        degree,
        left: a.coeff(degree),
        right: b.coeff(degree),
    })
}

/// How well a candidate form reproduces a target series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitReport {
    pub candidate: RationalForm,
    /// Highest degree through which the candidate's expansion equals the target.
    pub match_degree: usize,
    /// `left` is the candidate's coefficient, `right` the target's.
    pub first_mismatch: Option<Mismatch>,
    /// Highest degree through which the required numerator
    /// `target * prod (1 - x^b)` has no negative coefficient, if any.
    pub numerator_nonnegative_through: Option<usize>,
    pub free_generators: usize,
    pub total_invariants: usize,
    /// Whether the required numerator factored completely into `(1 + x^a)`
    /// terms within the truncation.
    pub fully_factored: bool,
    /// The required numerator, kept when it did not factor completely.
    pub raw_numerator: Option<SeriesZ>,
    /// Pruning heuristics that shaped this candidate.
    pub heuristics: Vec<String>,
}

fn nonnegative_through(s: &SeriesZ) -> Option<usize> {
    match s.coefficients().iter().position(|&c| c < 0) {
        Some(0) => None,
        Some(k) => Some(k - 1),
        None => Some(s.truncation_degree()),
    }
}

/// Compares `form` against `target` through the target's truncation.
pub fn fit(target: &SeriesZ, form: &RationalForm) -> Result<FitReport> {
    let degree = target.truncation_degree();
    let required = numerator_for_denominator(target, &form.denominator_degrees, degree)?;
    let expansion = expand(form, degree)?;
    let first_mismatch = compare(&expansion, target);
    let fully_factored = form.numerator_series(degree)? == required;
    Ok(FitReport {
        match_degree: first_mismatch.map_or(degree, |m| m.degree.saturating_sub(1)),
        first_mismatch,
        numerator_nonnegative_through: nonnegative_through(&required),
        free_generators: form.free_generator_count(),
        total_invariants: form.total_invariant_count(),
        fully_factored,
        raw_numerator: (!fully_factored).then_some(required),
        heuristics: Vec::new(),
        candidate: form.clone(),
    })
}

/// Bounds on the candidate enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConstraints {
    /// Exact number of denominator factors, when fixed.
    pub free_generators: Option<usize>,
    /// Largest degree of any numerator or denominator factor.
    pub max_factor_degree: usize,
    /// Largest number of denominator factors considered.
    pub max_total_factors: usize,
}

impl Default for SearchConstraints {
    fn default() -> Self {
        SearchConstraints {
            free_generators: None,
            max_factor_degree: 9,
            max_total_factors: 10,
        }
    }
}

const DEGREE_ONE_ANCHOR: &str = "degree-1 anchoring: target has one degree-1 invariant, so exactly one denominator factor of degree 1 is allowed";

/// Greedily peels `(1 + x^a)` factors off `numerator`, lowest degree first.
/// Returns the factors found and whether nothing is left over.
fn peel_factors(numerator: &SeriesZ, max_degree: usize) -> Result<(Vec<usize>, bool)> {
    let top = numerator.truncation_degree();
    let mut rest = numerator.clone();
    let mut found = Vec::new();
    loop {
        let Some(a) = (1..=top).find(|&k| rest.coeff(k) != 0) else {
            return Ok((found, true));
        };
        if rest.coeff(a) < 0 || a > max_degree {
            return Ok((found, false));
        }
        rest = rest.div(&SeriesZ::binomial(a, 1, top))?;
        found.push(a);
    }
}

/// Non-decreasing sequences of length `size` over `1..=max_degree`.
fn multisets(size: usize, max_degree: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for d in start..=max {
            cur.push(d);
            rec(d, left - 1, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max_degree > 0 {
        rec(1, size, max_degree, &mut Vec::with_capacity(size), &mut out);
    }
    out
}

/// Enumerates denominators, fits a `(1 + x^a)` numerator to each, and ranks
/// the survivors by match degree (descending), total invariant count
/// (ascending), then degree multisets.
pub fn search_candidates(
    target: &SeriesZ,
    constraints: &SearchConstraints,
) -> Result<Vec<FitReport>> {
    if target.coeff(0) != 1 {
        return Err(Error::ConstantTerm {
            expected: "1",
            found: target.coeff(0),
        });
    }
    let degree = target.truncation_degree();
    let sizes: Vec<usize> = match constraints.free_generators {
        Some(k) if k <= constraints.max_total_factors => vec![k],
        Some(_) => Vec::new(),
        None => (1..=constraints.max_total_factors).collect(),
    };
    let anchored = degree >= 1 && target.coeff(1) == 1;
    let denominators: Vec<Vec<usize>> = sizes
        .iter()
        .flat_map(|&k| multisets(k, constraints.max_factor_degree))
        .filter(|den| !anchored || den.iter().filter(|&&d| d == 1).count() == 1)
        .collect();

    let mut reports: Vec<FitReport> = denominators
        .into_par_iter()
        .map(|den| -> Result<Option<FitReport>> {
            let required = numerator_for_denominator(target, &den, degree)?;
            if nonnegative_through(&required) != Some(degree) {
                return Ok(None);
            }
            let (numerator, _) = peel_factors(&required, constraints.max_factor_degree)?;
            let form = RationalForm::new(numerator, den)?;
            let mut report = fit(target, &form)?;
            if anchored {
                report.heuristics.push(DEGREE_ONE_ANCHOR.to_string());
            }
            Ok(Some(report))
        })
        .filter_map(|r| r.transpose())
        .collect::<Result<_>>()?;

    reports.sort_by(|a, b| {
        b.match_degree
            .cmp(&a.match_degree)
            .then(a.total_invariants.cmp(&b.total_invariants))
            .then_with(|| {
                a.candidate
                    .denominator_degrees
                    .cmp(&b.candidate.denominator_degrees)
            })
            .then_with(|| {
                a.candidate
                    .numerator_degrees
                    .cmp(&b.candidate.numerator_degrees)
            })
    });
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(c: &[i128]) -> SeriesZ {
        SeriesZ::new(c.to_vec()).unwrap()
    }

    fn form(num: &[usize], den: &[usize]) -> RationalForm {
        RationalForm::new(num.to_vec(), den.to_vec()).unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand(&form(&[], &[1]), 4).unwrap(), s(&[1; 5]));
        assert_eq!(expand(&form(&[1], &[1]), 4).unwrap(), s(&[1, 2, 2, 2, 2]));
        assert_eq!(expand(&form(&[], &[]), 2).unwrap(), s(&[1, 0, 0]));
    }

    #[test]
    fn numerator_examples() {
        assert_eq!(
            numerator_for_denominator(&s(&[1; 7]), &[1], 6).unwrap(),
            s(&[1, 0, 0, 0, 0, 0, 0])
        );
        assert_eq!(
            numerator_for_denominator(&s(&[1, 2, 2, 2, 2, 2]), &[1], 4).unwrap(),
            s(&[1, 1, 0, 0, 0])
        );
        assert!(matches!(
            numerator_for_denominator(&s(&[2, 1]), &[1], 1),
            Err(Error::ConstantTerm { found: 2, .. })
        ));
        assert!(numerator_for_denominator(&s(&[1, 1]), &[1], 3).is_err());
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&s(&[1, 2, 3]), &s(&[1, 2, 3, 4])), None);
        assert_eq!(
            compare(&s(&[1, 1]), &s(&[1, 2])),
            Some(Mismatch {
                degree: 1,
                left: 1,
                right: 2
            })
        );
    }

    #[test]
    fn display() {
        assert_eq!(
            form(&[4, 6, 6], &[1, 2, 2]).to_string(),
            "(1+x^4)(1+x^6)^2 / (1-x)(1-x^2)^2"
        );
        assert_eq!(form(&[], &[1]).to_string(), "1 / (1-x)");
    }

    #[test]
    fn small_searches() {
        let top = |target: SeriesZ, free: usize| {
            let c = SearchConstraints {
                free_generators: Some(free),
                max_factor_degree: 6,
                max_total_factors: 10,
            };
            search_candidates(&target, &c).unwrap().remove(0).candidate
        };
        assert_eq!(top(s(&[1, 2, 2, 2, 2]), 1), form(&[1], &[1]));
        assert_eq!(top(s(&[1; 7]), 1), form(&[], &[1]));
        assert_eq!(top(s(&[1, 1, 2, 2, 3, 3, 4, 4, 5]), 2), form(&[], &[1, 2]));
    }

    #[test]
    fn empty_constraint_box() {
        let c = SearchConstraints {
            free_generators: Some(3),
            max_factor_degree: 4,
            max_total_factors: 2,
        };
        assert!(search_candidates(&s(&[1, 1, 1]), &c).unwrap().is_empty());
        let c = SearchConstraints {
            free_generators: Some(1),
            max_factor_degree: 0,
            max_total_factors: 2,
        };
        assert!(search_candidates(&s(&[1, 1, 1]), &c).unwrap().is_empty());
    }

    #[test]
    fn partial_factoring_keeps_raw_numerator() {
        // 1 + x^2 - x^3 ... never factors into (1 + x^a) terms
        let target = expand(&form(&[2], &[1]), 6).unwrap();
        let target = target.add(&s(&[0, 0, 0, 1, 0, 0, 0])).unwrap();
        let report = fit(&target, &form(&[2], &[1])).unwrap();
        assert_eq!(report.match_degree, 2);
        assert_eq!(
            report.first_mismatch,
            Some(Mismatch {
                degree: 3,
                left: 2,
                right: 3
            })
        );
        assert!(!report.fully_factored);
        assert!(report.raw_numerator.is_some());
    }

    proptest! {
        #[test]
        fn numerator_round_trip(
            num in proptest::collection::vec(1usize..8, 0..5),
            den in proptest::collection::vec(1usize..8, 0..5),
            degree in 0usize..14,
        ) {
            let f = RationalForm::new(num, den).unwrap();
            let e = expand(&f, degree).unwrap();
            prop_assert_eq!(e.coeff(0), 1);
            let n = numerator_for_denominator(&e, f.denominator_degrees(), degree).unwrap();
            prop_assert_eq!(&n, &f.numerator_series(degree).unwrap());
            // the recovered numerator, re-expanded, reproduces the target
            let back = n.mul(&expand(&RationalForm::new(vec![], f.denominator_degrees().to_vec()).unwrap(), degree).unwrap()).unwrap();
            prop_assert_eq!(back, e);
        }

        #[test]
        fn reports_are_consistent(
            num in proptest::collection::vec(1usize..6, 0..3),
            den in proptest::collection::vec(1usize..5, 1..4),
        ) {
            let target = expand(&RationalForm::new(num, den.clone()).unwrap(), 10).unwrap();
            let c = SearchConstraints { free_generators: Some(den.len()), max_factor_degree: 6, max_total_factors: 6 };
            for r in search_candidates(&target, &c).unwrap() {
                let recomputed = compare(&expand(&r.candidate, 10).unwrap(), &target);
                prop_assert_eq!(r.first_mismatch, recomputed);
                prop_assert_eq!(r.match_degree, recomputed.map_or(10, |m| m.degree - 1));
            }
        }
    }
}
