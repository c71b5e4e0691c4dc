//! Independent recomputation of `F_n` as Molien-series coefficients.
//!
//! The density matrix transforms under `U(N1) x U(N2)` with torus eigenvalues
//! `(a_i / a_j)(b_k / b_l)`. The degree-`n` part of `1/det(1 - z g)` is the
//! complete homogeneous symmetric function `h_n` of those eigenvalues, and
//! Haar integration of a class function reduces, via Weyl's formula, to
//!
//! ```text
//! CT[ f * prod_{i != j} (1 - a_i/a_j) * prod_{k != l} (1 - b_k/b_l) ] / (N1! N2!)
//! ```
//!
//! Variables are ordered `a_1..a_{N1}, b_1..b_{N2}`.

use crate::census::CensusProblem;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::series::SeriesZ;

pub fn nvars(problem: &CensusProblem) -> usize {
    problem.n1() + problem.n2()
}

/// Names `a1.., b1..` matching the variable order.
pub fn variable_names(problem: &CensusProblem) -> Vec<String> {
    (1..=problem.n1())
        .map(|i| format!("a{i}"))
        .chain((1..=problem.n2()).map(|k| format!("b{k}")))
        .collect()
}

/// `sum_{i,j} (x_i / x_j)^m` over the variables in `offset..offset+count`.
fn adjoint_power_sum(total: usize, offset: usize, count: usize, m: i32) -> Result<LaurentPoly> {
    let terms = (0..count).flat_map(|i| {
        (0..count).map(move |j| {
            let mut e = vec![0; total];
            e[offset + i] += m;
            e[offset + j] -= m;
            (e, 1)
        })
    });
    LaurentPoly::from_terms(total, terms)
}

/// Trace of `g^m` on the density-matrix space.
pub fn power_sum(problem: &CensusProblem, m: usize) -> Result<LaurentPoly> {
    if m == 0 {
        return Err(Error::InvalidArgument("power sums start at m = 1".into()));
    }
    let total = nvars(problem);
    let m = i32::try_from(m).map_err(|_| Error::Overflow("power sum exponent"))?;
    let a = adjoint_power_sum(total, 0, problem.n1(), m)?;
    let b = adjoint_power_sum(total, problem.n1(), problem.n2(), m)?;
    a.mul(&b)
}

/// `h_0, ..., h_n` of the eigenvalue multiset by Newton's identities
/// `k h_k = sum_{m=1..k} p_m h_{k-m}`.
pub fn complete_homogeneous_upto(problem: &CensusProblem, n: usize) -> Result<Vec<LaurentPoly>> {
    let total = nvars(problem);
    let widest = problem.n1().max(problem.n2()) as i64;
    let powers = (1..=n)
        .map(|m| power_sum(problem, m))
        .collect::<Result<Vec<_>>>()?;
    let mut h = vec![LaurentPoly::one(total)];
    for k in 1..=n {
        let mut acc = LaurentPoly::zero(total);
        for m in 1..=k {
            acc = acc.add(&powers[m - 1].mul(&h[k - m])?)?;
        }
        let hk = acc.div_exact(k as i128, "Newton recursion")?;
        let bound = k as i64 * widest;
        let reach = hk.max_abs_exponent();
        if reach > bound {
            return Err(Error::ExponentBound {
                exponent: reach,
                bound,
            });
        }
        h.push(hk);
    }
    Ok(h)
}

/// Degree-`n` coefficient of the Molien integrand.
pub fn complete_homogeneous(problem: &CensusProblem, n: usize) -> Result<LaurentPoly> {
    Ok(complete_homogeneous_upto(problem, n)?
        .pop()
        .expect("h_0 is always present"))
}

/// `prod_{i != j} (1 - x_i/x_j)` over the variables in `offset..offset+count`.
fn vandermonde_square(total: usize, offset: usize, count: usize) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one(total);
    for i in 0..count {
        for j in 0..count {
            if i == j {
                continue;
            }
            let mut e = vec![0; total];
            e[offset + i] = 1;
            e[offset + j] = -1;
            let factor = LaurentPoly::from_terms(total, [(vec![0; total], 1), (e, -1)])?;
            acc = acc.mul(&factor)?;
        }
    }
    Ok(acc)
}

/// Weyl density of `U(N1) x U(N2)` on its maximal torus, without the
/// `1/(N1! N2!)` normalisation.
pub fn weyl_density(problem: &CensusProblem) -> Result<LaurentPoly> {
    let total = nvars(problem);
    vandermonde_square(total, 0, problem.n1())?.mul(&vandermonde_square(
        total,
        problem.n1(),
        problem.n2(),
    )?)
}

fn factorial(n: usize) -> Result<i128> {
    (1..=n as i128)
        .try_fold(1i128, |acc, k| acc.checked_mul(k))
        .ok_or(Error::Overflow("factorial"))
}

fn normalised_constant_term(
    f: &LaurentPoly,
    density: &LaurentPoly,
    problem: &CensusProblem,
) -> Result<i128> {
    let raw = f.constant_term_of_product(density)?;
    let norm = factorial(problem.n1())?
        .checked_mul(factorial(problem.n2())?)
        .ok_or(Error::Overflow("Weyl normalisation"))?;
    if raw % norm != 0 {
        return Err(Error::InexactDivision {
            context: "Haar normalisation",
            numerator: raw,
            denominator: norm,
        });
    }
    Ok(raw / norm)
}

/// Haar integral over `U(N1) x U(N2)` of a class function given by its torus
/// restriction `f`.
///
/// Negative results are returned as computed: they can only arise from an `f`
/// that is not a genuine character.
pub fn haar_constant_term(f: &LaurentPoly, problem: &CensusProblem) -> Result<i128> {
    if f.nvars() != nvars(problem) {
        return Err(Error::InvalidArgument(format!(
            "polynomial has {} variables, problem needs {}",
            f.nvars(),
            nvars(problem)
        )));
    }
    normalised_constant_term(f, &weyl_density(problem)?, problem)
}

/// Number of degree-`n` invariants, by Haar projection of `h_n`.
pub fn molien_coefficient(problem: &CensusProblem, n: usize) -> Result<i128> {
    haar_constant_term(&complete_homogeneous(problem, n)?, problem)
}

/// Molien series through degree `max_degree`, sharing the Newton recursion
/// and the Weyl density across degrees.
pub fn molien_series(problem: &CensusProblem, max_degree: usize) -> Result<SeriesZ> {
    let density = weyl_density(problem)?;
    let coeffs = complete_homogeneous_upto(problem, max_degree)?
        .iter()
        .map(|h| normalised_constant_term(h, &density, problem))
        .collect::<Result<Vec<_>>>()?;
    SeriesZ::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prob(a: usize, b: usize) -> CensusProblem {
        CensusProblem::new(a, b).unwrap()
    }

    #[test]
    fn power_sum_examples() {
        for m in 1..=4 {
            assert_eq!(power_sum(&prob(1, 1), m).unwrap(), LaurentPoly::one(2));
            assert_eq!(power_sum(&prob(2, 2), m).unwrap().constant_term(), 4);
        }
        // eigenvalues {1, 1, a1/a2, a2/a1}
        let expect = LaurentPoly::from_terms(
            3,
            [(vec![0, 0, 0], 2), (vec![1, -1, 0], 1), (vec![-1, 1, 0], 1)],
        )
        .unwrap();
        assert_eq!(power_sum(&prob(2, 1), 1).unwrap(), expect);
        assert!(power_sum(&prob(2, 1), 0).is_err());
    }

    #[test]
    fn homogeneous_examples() {
        assert_eq!(
            complete_homogeneous(&prob(2, 2), 0).unwrap(),
            LaurentPoly::one(4)
        );
        for n in 0..=6 {
            assert_eq!(
                complete_homogeneous(&prob(1, 1), n).unwrap(),
                LaurentPoly::one(2)
            );
        }
        let h1 = complete_homogeneous(&prob(2, 2), 1).unwrap();
        assert_eq!(h1, power_sum(&prob(2, 2), 1).unwrap());
        assert_eq!(h1.constant_term(), 4);
    }

    /// h_n of an explicit eigenvalue list, by summing all degree-n monomials
    /// in the eigenvalues (multisets of indices).
    fn brute_homogeneous(eigen: &[Vec<i32>], n: usize, nv: usize) -> LaurentPoly {
        fn rec(
            eigen: &[Vec<i32>],
            start: usize,
            left: usize,
            acc: Vec<i32>,
            out: &mut Vec<Vec<i32>>,
        ) {
            if left == 0 {
                out.push(acc);
                return;
            }
            for i in start..eigen.len() {
                let next: Vec<i32> = acc.iter().zip(&eigen[i]).map(|(a, b)| a + b).collect();
                rec(eigen, i, left - 1, next, out);
            }
        }
        let mut out = Vec::new();
        rec(eigen, 0, n, vec![0; nv], &mut out);
        LaurentPoly::from_terms(nv, out.into_iter().map(|e| (e, 1))).unwrap()
    }

    #[test]
    fn newton_matches_monomial_enumeration() {
        let problem = prob(2, 2);
        let mut eigen = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let mut e = vec![0; 4];
                        e[i] += 1;
                        e[j] -= 1;
                        e[2 + k] += 1;
                        e[2 + l] -= 1;
                        eigen.push(e);
                    }
                }
            }
        }
        for n in 0..=4 {
            assert_eq!(
                complete_homogeneous(&problem, n).unwrap(),
                brute_homogeneous(&eigen, n, 4)
            );
        }
    }

    #[test]
    fn homogeneous_is_inversion_symmetric() {
        for (a, b) in [(2, 1), (2, 2), (3, 2)] {
            for h in complete_homogeneous_upto(&prob(a, b), 5).unwrap() {
                assert_eq!(h.invert_variables(), h);
            }
        }
    }

    #[test]
    fn haar_examples() {
        assert_eq!(
            haar_constant_term(&LaurentPoly::one(4), &prob(2, 2)).unwrap(),
            1
        );
        let p1 = power_sum(&prob(2, 1), 1).unwrap();
        // CT[(2 + t + 1/t)(2 - t - 1/t)] = 4 - 2 = 2, over 2!
        assert_eq!(haar_constant_term(&p1, &prob(2, 1)).unwrap(), 1);

        // a1/a2 alone is not a class function: CT[(a1/a2) * Delta] = -1, and
        // -1/2 cannot be normalised
        let lone = LaurentPoly::monomial(vec![1, -1, 0], 1);
        assert_eq!(
            haar_constant_term(&lone, &prob(2, 1)),
            Err(Error::InexactDivision {
                context: "Haar normalisation",
                numerator: -1,
                denominator: 2
            })
        );
        // symmetrised, it integrates to a negative number, returned as is
        let pair = lone.add(&lone.invert_variables()).unwrap();
        assert_eq!(haar_constant_term(&pair, &prob(2, 1)).unwrap(), -1);
        assert!(haar_constant_term(&LaurentPoly::one(2), &prob(2, 1)).is_err());
    }

    #[test]
    fn molien_examples() {
        assert_eq!(molien_coefficient(&prob(2, 2), 2).unwrap(), 4);
        assert_eq!(molien_coefficient(&prob(2, 2), 5).unwrap(), 23);
        for n in 0..=5 {
            assert_eq!(molien_coefficient(&prob(1, 1), n).unwrap(), 1);
        }
        assert_eq!(
            molien_series(&prob(2, 1), 6).unwrap().coefficients(),
            &[1, 1, 2, 2, 3, 3, 4]
        );
    }

    #[test]
    fn characters_integrate_nonnegative() {
        let problem = prob(2, 2);
        for h in complete_homogeneous_upto(&problem, 4).unwrap() {
            assert!(haar_constant_term(&h, &problem).unwrap() >= 0);
        }
        for m in 1..=4 {
            assert!(haar_constant_term(&power_sum(&problem, m).unwrap(), &problem).unwrap() >= 0);
        }
    }
}
