//! Irreducible characters of the symmetric group by the Murnaghan–Nakayama
//! rule, with an in-memory memo and an optional on-disk table cache.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::{parse_partition, partitions_of, Partition};
use crate::Limits;

/// Version tag written into every cache file.
pub const CACHE_FORMAT_VERSION: u32 = 1;

const CACHE_MAGIC: &str = "invcensus-chartable";

/// Dense character table of `S_n`.
///
/// Rows are irreducibles and columns are classes, both in the canonical order
/// of [`partitions_of`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharTable {
    n: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    values: Vec<i128>,
    class_sizes: Vec<i128>,
    group_order: i128,
}

impl CharTable {
    fn from_rows(n: usize, partitions: Vec<Partition>, values: Vec<i128>) -> Result<Self> {
        let k = partitions.len();
        if values.len() != k * k {
            return Err(Error::Internal(format!(
                "character table for n = {n} has {} entries, expected {}",
                values.len(),
                k * k
            )));
        }
        let group_order = (1..=n as i128).try_fold(1i128, |acc, k| acc.checked_mul(k));
        let group_order = group_order.ok_or(Error::Overflow("group order"))?;
        let class_sizes = partitions
            .iter()
            .map(|mu| mu.z_order().map(|z| group_order / z))
            .collect::<Result<Vec<_>>>()?;
        let index = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(CharTable {
            n,
            partitions,
            index,
            values,
            class_sizes,
            group_order,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical partition list labelling both rows and columns.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn get(&self, irrep: usize, class: usize) -> i128 {
        self.values[irrep * self.len() + class]
    }

    pub fn row(&self, irrep: usize) -> &[i128] {
        let k = self.len();
        &self.values[irrep * k..(irrep + 1) * k]
    }

    /// `chi^lambda(mu)`, or `None` if either label is not a partition of `n`.
    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Option<i128> {
        Some(self.get(self.index_of(lambda)?, self.index_of(mu)?))
    }

    /// Class sizes `n!/z_mu`, aligned with the columns.
    pub fn class_sizes(&self) -> &[i128] {
        &self.class_sizes
    }

    /// `n!`.
    pub fn group_order(&self) -> i128 {
        self.group_order
    }
}

/// Where a table returned by [`CharacterEngine::char_table_traced`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableOrigin {
    Memory,
    Disk,
    Computed,
    /// A cache file existed but failed to parse or verify.
    Recomputed,
}

type MemoKey = (Partition, Partition);

/// Character evaluator shared by every computation in a run.
///
/// All caches are fill-only and every entry is a pure function of its key,
/// so concurrent callers may race on an entry and still agree.
#[derive(Debug, Default)]
pub struct CharacterEngine {
    limits: Limits,
    cache_dir: Option<PathBuf>,
    memo: Mutex<HashMap<MemoKey, i128>>,
    tables: RwLock<HashMap<usize, Arc<CharTable>>>,
}

impl CharacterEngine {
    pub fn new(limits: Limits) -> Self {
        CharacterEngine {
            limits,
            ..Default::default()
        }
    }

    /// Persist tables under `dir` in addition to the in-memory cache.
    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    /// `chi^lambda(mu)`.
    pub fn character(&self, lambda: &Partition, mu: &Partition) -> Result<i128> {
        if lambda.weight() != mu.weight() {
            return Err(Error::WeightMismatch {
                left: lambda.weight(),
                right: mu.weight(),
            });
        }
        self.murnaghan_nakayama(lambda, mu.parts())
    }

    fn murnaghan_nakayama(&self, lambda: &Partition, cycles: &[usize]) -> Result<i128> {
        let Some((&first, rest)) = cycles.split_first() else {
            return Ok(1);
        };
        // one-row and one-column shapes are trivial or sign characters
        if lambda.len() == 1 {
            return Ok(1);
        }
        if lambda.parts()[0] == 1 {
            let n = lambda.weight();
            return Ok(if (n - cycles.len()).is_multiple_of(2) {
                1
            } else {
                -1
            });
        }
        let key = (lambda.clone(), Partition::from_unsorted(cycles.to_vec()));
        if let Some(&v) = self.memo.lock().expect("memo poisoned").get(&key) {
            return Ok(v);
        }
        let mut total: i128 = 0;
        for (inner, height) in remove_border_strips(lambda, first) {
            let v = self.murnaghan_nakayama(&inner, rest)?;
            let signed = if height % 2 == 0 { v } else { -v };
            total = total
                .checked_add(signed)
                .ok_or(Error::Overflow("character"))?;
        }
        self.memo.lock().expect("memo poisoned").insert(key, total);
        Ok(total)
    }

    /// Full character table of `S_n`.
    pub fn char_table(&self, n: usize) -> Result<Arc<CharTable>> {
        self.char_table_traced(n).map(|(t, _)| t)
    }

    pub fn char_table_traced(&self, n: usize) -> Result<(Arc<CharTable>, TableOrigin)> {
        if n > self.limits.max_table_weight {
            return Err(Error::TableTooLarge {
                requested: n,
                limit: self.limits.max_table_weight,
            });
        }
        if let Some(t) = self.tables.read().expect("table cache poisoned").get(&n) {
            return Ok((Arc::clone(t), TableOrigin::Memory));
        }
        let mut origin = TableOrigin::Computed;
        let mut table = None;
        if let Some(path) = self.cache_path(n) {
            if path.exists() {
                match self.load_verified(&path, n) {
                    Ok(t) => {
                        table = Some(t);
                        origin = TableOrigin::Disk;
                    }
                    Err(_) => origin = TableOrigin::Recomputed,
                }
            }
        }
        let table = match table {
            Some(t) => t,
            None => {
                let t = self.compute_table(n)?;
                if let Some(path) = self.cache_path(n) {
                    write_cache_file(&path, &t)?;
                }
                t
            }
        };
        let table = Arc::new(table);
        let mut tables = self.tables.write().expect("table cache poisoned");
        let entry = tables.entry(n).or_insert_with(|| Arc::clone(&table));
        Ok((Arc::clone(entry), origin))
    }

    fn compute_table(&self, n: usize) -> Result<CharTable> {
        let partitions = partitions_of(n, None);
        let rows: Vec<Vec<i128>> = partitions
            .par_iter()
            .map(|lambda| self.compute_row(lambda, &partitions))
            .collect::<Result<_>>()?;
        CharTable::from_rows(n, partitions, rows.concat())
    }

    fn compute_row(&self, lambda: &Partition, classes: &[Partition]) -> Result<Vec<i128>> {
        classes
            .iter()
            .map(|mu| self.character(lambda, mu))
            .collect()
    }

    /// Cache file location for weight `n`, when a cache directory is set.
    pub fn cache_path(&self, n: usize) -> Option<PathBuf> {
        self.cache_dir
            .as_ref()
            .map(|dir| dir.join(format!("chartable-v{CACHE_FORMAT_VERSION}-n{n}.txt")))
    }

    fn load_verified(&self, path: &Path, n: usize) -> Result<CharTable> {
        let text = fs::read_to_string(path)?;
        let table = parse_cache_file(&text, n)?;
        if table.partitions != partitions_of(n, None) {
            return Err(Error::Internal(
                "cached partition list is not canonical".into(),
            ));
        }
        let probe = rand::thread_rng().gen_range(0..table.len());
        let fresh = self.compute_row(&table.partitions[probe], &table.partitions)?;
        if fresh != table.row(probe) {
            return Err(Error::Internal(format!(
                "cached row {} does not match recomputation",
                table.partitions[probe]
            )));
        }
        Ok(table)
    }
}

/// Removes every border strip of length `len` from `lambda`.
///
/// Each strip is found from its starting row via the beta-set (first-column
/// hook lengths) of `lambda`: sliding a bead down by `len` into a free slot
/// removes a strip, and the number of beads jumped over is its height.
pub(crate) fn remove_border_strips(lambda: &Partition, len: usize) -> Vec<(Partition, usize)> {
    let rows = lambda.len();
    let beta: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + rows - 1 - i)
        .collect();
    let mut out = Vec::new();
    for (row, &b) in beta.iter().enumerate() {
        if b < len {
            continue;
        }
        let target = b - len;
        if beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[row] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (rows - 1 - i))
            .collect();
        out.push((Partition::from_unsorted(parts), height));
    }
    out
}

fn write_cache_file(path: &Path, table: &CharTable) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut text = format!("{CACHE_MAGIC} {CACHE_FORMAT_VERSION}\nn {}\n", table.n);
    let labels: Vec<String> = table.partitions.iter().map(|p| p.to_string()).collect();
    text.push_str(&format!("partitions {}\n", labels.join(" ")));
    for i in 0..table.len() {
        let row: Vec<String> = table.row(i).iter().map(|v| v.to_string()).collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn parse_cache_file(text: &str, n: usize) -> Result<CharTable> {
    let bad = |what: &str| Error::Internal(format!("cache file: {what}"));
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty"))?;
    if header != format!("{CACHE_MAGIC} {CACHE_FORMAT_VERSION}") {
        return Err(bad("unknown header"));
    }
    let n_line = lines.next().ok_or_else(|| bad("missing weight"))?;
    if n_line != format!("n {n}") {
        return Err(bad("weight mismatch"));
    }
    let labels = lines
        .next()
        .and_then(|l| l.strip_prefix("partitions "))
        .ok_or_else(|| bad("missing partition list"))?;
    let partitions = labels
        .split(' ')
        .map(parse_partition)
        .collect::<Result<Vec<_>>>()?;
    let mut values = Vec::with_capacity(partitions.len() * partitions.len());
    for line in lines.by_ref().take(partitions.len()) {
        let row = line
            .split(' ')
            .map(|v| v.parse::<i128>().map_err(|_| bad("non-integer entry")))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != partitions.len() {
            return Err(bad("ragged row"));
        }
        values.extend(row);
    }
    if lines.next().is_some() {
        return Err(bad("trailing data"));
    }
    CharTable::from_rows(n, partitions, values)
}
