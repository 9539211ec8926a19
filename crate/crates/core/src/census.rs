//! Exhaustive census of structure tables over a small prime field.
//!
//! Tables are enumerated one basis product at a time; a basis triple of the
//! identity is evaluated as soon as every product it depends on is known, so
//! whole subtrees of invalid tables are skipped.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{default_names, LeibnizAlgebra};
use crate::ct::{is_ct_exhaustive, is_ct_via_definition, witness_verifies, CtVerdict, DEFAULT_PAIR_BUDGET};
use crate::error::{check_budget, Error, Result};
use crate::field::{FieldSpec, PrimeField};
use crate::invariants::center;
use crate::linalg::power_count;

/// Default cap on the nominal number of tables `p^(n^3)`.
pub const DEFAULT_TABLE_BUDGET: u128 = 1 << 27;

/// Index of the structure constant `c[i][j][k]` in a flat table.
pub fn table_slot(n: usize, i: usize, j: usize, k: usize) -> usize {
    (i * n + j) * n + k
}

/// Position of a table in the nominal order: `sum c_t p^t`.
pub fn table_index(p: u32, table: &[u32]) -> u128 {
    table.iter().rev().fold(0u128, |acc, &c| acc * p as u128 + c as u128)
}

struct Enumerator {
    p: u32,
    n: usize,
    /// Basis pairs in assignment order.
    order: Vec<(usize, usize)>,
    table: Vec<u32>,
    assigned: Vec<bool>,
    checked: Vec<bool>,
}

impl Enumerator {
    fn new(p: u32, n: usize) -> Self {
        let mut order: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        order.sort_by_key(|&(i, j)| (i.max(j), i, j));
        Enumerator {
            p,
            n,
            order,
            table: vec![0; n * n * n],
            assigned: vec![false; n * n],
            checked: vec![false; n * n * n],
        }
    }

    fn pair(&self, i: usize, j: usize) -> &[u32] {
        let s = (i * self.n + j) * self.n;
        &self.table[s..s + self.n]
    }

    fn known(&self, i: usize, j: usize) -> bool {
        self.assigned[i * self.n + j]
    }

    /// `sum_m v[m] * c[m][k]` (or `c[k][m]` when `left`), if all needed
    /// products are assigned.
    fn combine(&self, v: &[u32], k: usize, left: bool, out: &mut [u32]) -> bool {
        out.iter_mut().for_each(|o| *o = 0);
        for (m, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (a, b) = if left { (k, m) } else { (m, k) };
            if !self.known(a, b) {
                return false;
            }
            for (o, &t) in out.iter_mut().zip(self.pair(a, b)) {
                *o = (*o + c * t) % self.p;
            }
        }
        true
    }

    /// `None` when the triple cannot be evaluated yet.
    fn triple_holds(&self, i: usize, j: usize, k: usize) -> Option<bool> {
        if !(self.known(j, k) && self.known(i, j) && self.known(i, k)) {
            return None;
        }
        let n = self.n;
        let mut lhs = vec![0; n];
        let mut a = vec![0; n];
        let mut b = vec![0; n];
        // e_i (e_j e_k) = sum_m c_jk[m] c_im
        if !self.combine(self.pair(j, k), i, true, &mut lhs) {
            return None;
        }
        if !self.combine(self.pair(i, j), k, false, &mut a) {
            return None;
        }
        if !self.combine(self.pair(i, k), j, false, &mut b) {
            return None;
        }
        Some((0..n).all(|m| lhs[m] == (a[m] + self.p - b[m]) % self.p))
    }

    /// Evaluates every newly evaluable triple; records them in `newly` so
    /// they can be reset on backtrack.
    fn consistent(&mut self, newly: &mut Vec<usize>) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s = table_slot(n, i, j, k);
                    if self.checked[s] {
                        continue;
                    }
                    match self.triple_holds(i, j, k) {
                        None => {}
                        Some(true) => {
                            self.checked[s] = true;
                            newly.push(s);
                        }
                        Some(false) => return false,
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize, prefix: &[Vec<u32>], visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.table);
        }
        let (i, j) = self.order[depth];
        let n = self.n;
        let values: Vec<Vec<u32>> = match prefix.get(depth) {
            Some(v) => vec![v.clone()],
            None => all_residue_vectors(self.p, n),
        };
        let base = (i * n + j) * n;
        for v in values {
            self.table[base..base + n].copy_from_slice(&v);
            self.assigned[i * n + j] = true;
            let mut newly = Vec::new();
            let ok = self.consistent(&mut newly);
            let keep_going = !ok || self.run(depth + 1, prefix, visit);
            for s in newly {
                self.checked[s] = false;
            }
            self.assigned[i * n + j] = false;
            self.table[base..base + n].iter_mut().for_each(|c| *c = 0);
            if !keep_going {
                return false;
            }
        }
        true
    }
}

fn all_residue_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn check_table_budget(p: u32, n: usize, budget: u128) -> Result<()> {
    if p > 7 {
        return Err(Error::Precondition(format!("census fields are limited to p <= 7, got {p}")));
    }
    FieldSpec::prime(p as u64)?;
    check_budget("tables", power_count(p as u64, n * n * n), budget)
}

/// Calls `visit` on every table over `GF(p)` of dimension `n` satisfying
/// the Leibniz identity, in enumeration order; stops when `visit` returns
/// `false`.
pub fn for_each_leibniz_table(p: u32, n: usize, budget: u128, mut visit: impl FnMut(&[u32]) -> bool) -> Result<()> {
    check_table_budget(p, n, budget)?;
    Enumerator::new(p, n).run(0, &[], &mut visit);
    Ok(())
}

/// The algebra with the given flat residue table.
pub fn table_algebra(p: u32, n: usize, table: &[u32]) -> LeibnizAlgebra<PrimeField> {
    let f = PrimeField::new(p as u64).expect("prime");
    let entries = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .map(|(i, j, k)| (i, j, k, table[table_slot(n, i, j, k)]));
    LeibnizAlgebra::from_entries(&f, default_names(n), entries).expect("indices in range")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusWitness {
    pub table_index: u128,
    pub table: Vec<u32>,
    pub x: String,
    pub y: String,
    pub z: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub p: u32,
    pub dim: usize,
    pub tables: u128,
    pub leibniz_valid: u64,
    pub ct: u64,
    pub not_ct: u64,
    /// CT tables with a nonzero product.
    pub ct_nonzero: u64,
    /// CT tables with nonzero centre.
    pub ct_with_center: u64,
    /// Tables where the raw-definition oracle disagrees.
    pub oracle_disagreements: u64,
    /// `not_ct` witnesses failing re-verification.
    pub witness_failures: u64,
    pub first_not_ct: Option<CensusWitness>,
    pub first_ct_nonzero: Option<u128>,
}

impl CensusReport {
    fn merge(&mut self, other: CensusReport) {
        self.leibniz_valid += other.leibniz_valid;
        self.ct += other.ct;
        self.not_ct += other.not_ct;
        self.ct_nonzero += other.ct_nonzero;
        self.ct_with_center += other.ct_with_center;
        self.oracle_disagreements += other.oracle_disagreements;
        self.witness_failures += other.witness_failures;
        if self.first_not_ct.is_none() {
            self.first_not_ct = other.first_not_ct;
        }
        if self.first_ct_nonzero.is_none() {
            self.first_ct_nonzero = other.first_ct_nonzero;
        }
    }

    pub fn clean(&self) -> bool {
        self.oracle_disagreements == 0 && self.witness_failures == 0
    }
}

fn classify(p: u32, n: usize, table: &[u32], report: &mut CensusReport) {
    let l = table_algebra(p, n, table);
    report.leibniz_valid += 1;
    let verdict = is_ct_exhaustive(&l, u128::MAX).expect("finite field");
    let oracle = is_ct_via_definition(&l, DEFAULT_PAIR_BUDGET.max(power_count(p as u64, 2 * n)))
        .expect("within pair budget");
    if verdict.is_ct() != oracle.is_ct() {
        report.oracle_disagreements += 1;
    }
    match verdict {
        CtVerdict::NotCt(w) => {
            report.not_ct += 1;
            if !witness_verifies(&l, &w) {
                report.witness_failures += 1;
            }
            if report.first_not_ct.is_none() {
                report.first_not_ct = Some(CensusWitness {
                    table_index: table_index(p, table),
                    table: table.to_vec(),
                    x: l.format_element(&w.x),
                    y: l.format_element(&w.y),
                    z: l.format_element(&w.z),
                });
            }
        }
        _ => {
            report.ct += 1;
            if !l.is_zero_algebra() {
                report.ct_nonzero += 1;
                if report.first_ct_nonzero.is_none() {
                    report.first_ct_nonzero = Some(table_index(p, table));
                }
                if !center(&l).is_zero() {
                    report.ct_with_center += 1;
                }
            }
        }
    }
}

/// Census of all `p^(n^3)` tables over `GF(p)`, `p <= 7`. Work is split on
/// the first two basis products and merged in enumeration order, so the
/// report does not depend on `jobs`.
pub fn ct_census(p: u32, n: usize, budget: u128, jobs: usize) -> Result<CensusReport> {
    check_table_budget(p, n, budget)?;
    let split = (n * n).min(2);
    let mut prefixes = vec![Vec::new()];
    for _ in 0..split {
        prefixes = prefixes
            .into_iter()
            .flat_map(|pre: Vec<Vec<u32>>| {
                all_residue_vectors(p, n).into_iter().map(move |v| {
                    let mut q = pre.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    let work = |prefix: &Vec<Vec<u32>>| {
        let mut part = CensusReport::default();
        Enumerator::new(p, n).run(0, prefix, &mut |t| {
            classify(p, n, t, &mut part);
            true
        });
        part
    };
    let parts: Vec<CensusReport> = if jobs <= 1 {
        prefixes.iter().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?;
        pool.install(|| prefixes.par_iter().map(work).collect())
    };
    let mut report = CensusReport {
        p,
        dim: n,
        tables: power_count(p as u64, n * n * n),
        ..CensusReport::default()
    };
    for part in parts {
        report.merge(part);
    }
    Ok(report)
}
