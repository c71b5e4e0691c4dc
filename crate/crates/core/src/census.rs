//! Degree-by-degree counts of local unitary invariants of an `N1 x N2`
//! density matrix.
//!
//! A degree-`n` invariant is a singlet of `U(N1) x U(N2)` inside the `n`-th
//! symmetric power of the density-matrix space. Resolving that power through
//! `U(N1^2) x U(N2^2)` turns the singlet count into
//!
//! ```text
//! F_n = sum_{kappa, lambda} sum_sigma g(kappa, kappa, sigma) g(lambda, lambda, sigma)
//! ```
//!
//! with `kappa |- n` of at most `N1` parts, `lambda |- n` of at most `N2` parts
//! and `sigma |- n` of at most `min(N1^2, N2^2)` parts.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::CharacterEngine;
use crate::error::{Error, Result};
use crate::kronecker::coefficient_in;
use crate::partition::{partitions_of, Partition};
use crate::series::SeriesZ;

/// Subsystem dimensions of the composite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CensusProblem {
    n1: usize,
    n2: usize,
}

impl CensusProblem {
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "subsystem dimensions must be positive, got ({n1}, {n2})"
            )));
        }
        Ok(CensusProblem { n1, n2 })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Largest number of parts an intermediate `sigma` may have.
    pub fn sigma_bound(&self) -> usize {
        (self.n1 * self.n1).min(self.n2 * self.n2)
    }

    pub fn swapped(&self) -> Self {
        CensusProblem {
            n1: self.n2,
            n2: self.n1,
        }
    }
}

/// `F_n`, the number of linearly independent degree-`n` invariants.
pub fn invariant_count(
    engine: &CharacterEngine,
    problem: &CensusProblem,
    n: usize,
) -> Result<i128> {
    engine.limits().check_degree(n)?;
    let table = engine.char_table(n)?;
    let index = |p: &Partition| {
        table
            .index_of(p)
            .ok_or_else(|| Error::Internal(format!("{p} missing from table")))
    };
    let sigmas = partitions_of(n, Some(problem.sigma_bound()))
        .iter()
        .map(index)
        .collect::<Result<Vec<_>>>()?;
    let kappas = partitions_of(n, Some(problem.n1));
    let lambdas = partitions_of(n, Some(problem.n2));

    // g(p, p, sigma) for every p that appears on either side
    let mut shapes: Vec<Partition> = kappas.iter().chain(&lambdas).cloned().collect();
    shapes.sort();
    shapes.dedup();
    let squares: HashMap<Partition, Vec<i128>> = shapes
        .into_par_iter()
        .map(|p| {
            let i = index(&p)?;
            let row = sigmas
                .iter()
                .map(|&s| coefficient_in(&table, i, i, s))
                .collect::<Result<Vec<_>>>()?;
            Ok((p, row))
        })
        .collect::<Result<_>>()?;

    let pairs: Vec<(&Partition, &Partition)> = kappas
        .iter()
        .flat_map(|k| lambdas.iter().map(move |l| (k, l)))
        .collect();
    let weights = pairs
        .par_iter()
        .map(|(k, l)| dot(&squares[*k], &squares[*l]))
        .collect::<Result<Vec<_>>>()?;
    weights
        .into_iter()
        .try_fold(0i128, |acc, w| acc.checked_add(w))
        .ok_or(Error::Overflow("invariant count"))
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y)
            .and_then(|v| acc.checked_add(v))
            .ok_or(Error::Overflow("pair weight"))
    })
}

/// `F_0 + F_1 q + ... + F_D q^D`.
pub fn generating_series(
    engine: &CharacterEngine,
    problem: &CensusProblem,
    max_degree: usize,
) -> Result<SeriesZ> {
    engine.limits().check_degree(max_degree)?;
    let coeffs = (0..=max_degree)
        .map(|n| invariant_count(engine, problem, n))
        .collect::<Result<Vec<_>>>()?;
    SeriesZ::new(coeffs)
}
