//! Kronecker (inner) products of symmetric-group irreducibles.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{CharTable, CharacterEngine};
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};

/// A nonnegative integer combination of irreducibles of one `S_n`, kept in
/// canonical partition order with zero terms dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurExpansion {
    weight: usize,
    terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub partition: Partition,
    pub multiplicity: i128,
}

impl SchurExpansion {
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, p: &Partition) -> i128 {
        self.terms
            .iter()
            .find(|t| &t.partition == p)
            .map_or(0, |t| t.multiplicity)
    }

    /// `sum_nu mult(nu) * dim(nu)`; equals `dim(lambda) * dim(mu)` for
    /// `lambda o mu`.
    pub fn dimension(&self) -> Result<i128> {
        self.terms.iter().try_fold(0i128, |acc, t| {
            let d = t.partition.dimension()?;
            d.checked_mul(t.multiplicity)
                .and_then(|v| acc.checked_add(v))
                .ok_or(Error::Overflow("expansion dimension"))
        })
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.multiplicity != 1 {
                write!(f, "{}", t.multiplicity)?;
            }
            write!(f, "{{{}}}", t.partition)?;
        }
        Ok(())
    }
}

fn same_weight(parts: &[&Partition]) -> Result<usize> {
    let n = parts[0].weight();
    for p in &parts[1..] {
        if p.weight() != n {
            return Err(Error::WeightMismatch {
                left: n,
                right: p.weight(),
            });
        }
    }
    Ok(n)
}

fn indices(table: &CharTable, parts: &[&Partition]) -> Result<Vec<usize>> {
    parts
        .iter()
        .map(|p| {
            table
                .index_of(p)
                .ok_or_else(|| Error::Internal(format!("{p} missing from table")))
        })
        .collect()
}

/// `g(lambda, mu, nu) = (1/n!) sum_rho |C_rho| chi^lambda chi^mu chi^nu`,
/// with rows given as table indices.
pub(crate) fn coefficient_in(table: &CharTable, a: usize, b: usize, c: usize) -> Result<i128> {
    let (ra, rb, rc) = (table.row(a), table.row(b), table.row(c));
    let mut total: i128 = 0;
    for (m, &size) in table.class_sizes().iter().enumerate() {
        let term = ra[m]
            .checked_mul(rb[m])
            .and_then(|v| v.checked_mul(rc[m]))
            .and_then(|v| v.checked_mul(size))
            .ok_or(Error::Overflow("kronecker coefficient"))?;
        total = total
            .checked_add(term)
            .ok_or(Error::Overflow("kronecker coefficient"))?;
    }
    let order = table.group_order();
    if total % order != 0 {
        return Err(Error::Internal(format!(
            "non-integral Kronecker aggregate {total}/{order} for ({},{},{})",
            table.partitions()[a],
            table.partitions()[b],
            table.partitions()[c]
        )));
    }
    let g = total / order;
    if g < 0 {
        return Err(Error::Internal(format!(
            "negative Kronecker coefficient {g}"
        )));
    }
    Ok(g)
}

/// Multiplicity of `{nu}` in `lambda o mu`.
pub fn kronecker_coefficient(
    engine: &CharacterEngine,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<i128> {
    let n = same_weight(&[lambda, mu, nu])?;
    let table = engine.char_table(n)?;
    let idx = indices(&table, &[lambda, mu, nu])?;
    coefficient_in(&table, idx[0], idx[1], idx[2])
}

/// Full decomposition of `lambda o mu`.
pub fn inner_product_expansion(
    engine: &CharacterEngine,
    lambda: &Partition,
    mu: &Partition,
) -> Result<SchurExpansion> {
    let n = same_weight(&[lambda, mu])?;
    let table = engine.char_table(n)?;
    let idx = indices(&table, &[lambda, mu])?;
    let coefficients: Vec<i128> = (0..table.len())
        .into_par_iter()
        .map(|c| coefficient_in(&table, idx[0], idx[1], c))
        .collect::<Result<_>>()?;
    let terms = table
        .partitions()
        .iter()
        .zip(coefficients)
        .filter(|(_, m)| *m != 0)
        .map(|(p, multiplicity)| Term {
            partition: p.clone(),
            multiplicity,
        })
        .collect();
    Ok(SchurExpansion { weight: n, terms })
}

/// `n_{kappa lambda} = sum_sigma g(kappa,kappa,sigma) g(lambda,lambda,sigma)`
/// over `sigma |- n` with at most `part_bound` parts.
pub fn pair_weight(
    engine: &CharacterEngine,
    kappa: &Partition,
    lambda: &Partition,
    part_bound: usize,
) -> Result<i128> {
    if part_bound == 0 {
        return Err(Error::InvalidArgument(
            "part bound must be at least 1".into(),
        ));
    }
    let n = same_weight(&[kappa, lambda])?;
    let table = engine.char_table(n)?;
    let idx = indices(&table, &[kappa, lambda])?;
    pair_weight_in(&table, idx[0], idx[1], part_bound)
}

pub(crate) fn pair_weight_in(
    table: &CharTable,
    kappa: usize,
    lambda: usize,
    part_bound: usize,
) -> Result<i128> {
    let mut total: i128 = 0;
    for sigma in partitions_of(table.n(), Some(part_bound)) {
        let s = table
            .index_of(&sigma)
            .ok_or_else(|| Error::Internal(format!("{sigma} missing from table")))?;
        let left = coefficient_in(table, kappa, kappa, s)?;
        if left == 0 {
            continue;
        }
        let right = coefficient_in(table, lambda, lambda, s)?;
        total = left
            .checked_mul(right)
            .and_then(|v| total.checked_add(v))
            .ok_or(Error::Overflow("pair weight"))?;
    }
    Ok(total)
}
