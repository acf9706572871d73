//! Zonal polynomials in the monomial symmetric function basis.
//!
//! Coefficients are produced by the classical eigenfunction recursion on
//! dominated partitions: within a fixed weight, the coefficient of the
//! monomial `M_λ` in `C_κ` is obtained top-down from the leading partition
//! using the Laplace–Beltrami eigenvalue `ρ_κ = Σ κ_i(κ_i - i)`,
//!
//! ```text
//! c(κ, λ) = Σ_{moves λ → μ} [(λ_i + t) - (λ_j - t)] · c(κ, μ) / (ρ_κ - ρ_λ),
//! ```
//!
//! where a move transfers `t ≥ 1` units from part `j` to an earlier part
//! `i < j` and re-sorts. The overall scale of each `C_κ` is fixed by the
//! normalization `Σ_{κ ⊢ k} C_κ(A) = (tr A)^k`, solved triangularly against
//! the multinomial expansion of `(Σ x_i)^k`.
//!
//! Tables are exact (big-rational arithmetic) for small weights and switch
//! to `f64` beyond; all coefficients are nonnegative, so the recursion
//! itself is cancellation-free and the float path stays accurate.

use super::partition::{enumerate_partitions, Partition};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Default hard cap on series degree; requests beyond it are resource errors.
pub const DEFAULT_MAX_WEIGHT: u32 = 60;

/// Tables at or below this weight are retained in the cache; heavier tables
/// are rebuilt per call (they are large and typically visited once per
/// series evaluation).
const STORE_WEIGHT_LIMIT: u32 = 36;

/// Use exact rational arithmetic up to this weight (and only for short
/// length caps, where the tables stay small).
const RATIONAL_WEIGHT_LIMIT: u32 = 20;
const RATIONAL_LEN_LIMIT: usize = 6;

/// One weight's worth of zonal expansions.
///
/// `rows[i]` holds the sparse expansion of `C_{partitions[i]}` over the
/// monomial basis, as `(column index, coefficient)` pairs with columns
/// restricted to partitions dominated by `partitions[i]`.
pub struct ZonalTable {
    weight: u32,
    len_cap: usize,
    partitions: Vec<Partition>,
    rows: Vec<Vec<(u32, f64)>>,
}

impl ZonalTable {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn len_cap(&self) -> usize {
        self.len_cap
    }

    /// Partitions of this weight in reverse-lexicographic order.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn rows(&self) -> &[Vec<(u32, f64)>] {
        &self.rows
    }

    pub fn index_of(&self, kappa: &Partition) -> Option<usize> {
        self.partitions
            .binary_search_by(|p| kappa.parts().cmp(p.parts()))
            .ok()
    }

    /// `M_λ(x)` for every partition in the table.
    pub fn monomial_values(&self, x: &[f64]) -> Vec<f64> {
        self.partitions
            .iter()
            .map(|p| monomial_eval(p, x))
            .collect()
    }

    /// `C_{partitions[idx]}(x)` given precomputed monomial values.
    pub fn eval_row_with(&self, idx: usize, monomials: &[f64]) -> f64 {
        self.rows[idx]
            .iter()
            .map(|&(j, c)| c * monomials[j as usize])
            .sum()
    }

    pub fn eval_row(&self, idx: usize, x: &[f64]) -> f64 {
        self.rows[idx]
            .iter()
            .map(|&(j, c)| c * monomial_eval(&self.partitions[j as usize], x))
            .sum()
    }
}

/// Monomial symmetric polynomial `M_λ(x)`: the sum of `∏ x_i^{σ_i}` over all
/// distinct permutations `σ` of `λ` padded with zeros.
///
/// Evaluated by dynamic programming over sub-multisets of the parts, so the
/// cost is `O(len(x) · ∏(mult_v + 1))` rather than the number of distinct
/// permutations.
pub fn monomial_eval(lambda: &Partition, x: &[f64]) -> f64 {
    let p = lambda.len();
    if p == 0 {
        return 1.0;
    }
    if p > x.len() {
        return 0.0;
    }
    // distinct part values with multiplicities
    let mut vals: Vec<(u32, usize)> = Vec::new();
    for &part in lambda.parts() {
        match vals.last_mut() {
            Some((v, m)) if *v == part => *m += 1,
            _ => vals.push((part, 1)),
        }
    }
    // mixed-radix indexing of sub-multisets
    let mut radix = Vec::with_capacity(vals.len());
    let mut states = 1usize;
    for &(_, m) in &vals {
        radix.push(states);
        states *= m + 1;
    }
    let full = states - 1;
    let mut dp = vec![0.0f64; states];
    dp[0] = 1.0;
    let mut next = vec![0.0f64; states];
    for &xi in x {
        let powers: Vec<f64> = vals.iter().map(|&(v, _)| xi.powi(v as i32)).collect();
        next.copy_from_slice(&dp);
        for s in 0..states {
            if dp[s] == 0.0 {
                continue;
            }
            for (g, &(_, m)) in vals.iter().enumerate() {
                let cnt = (s / radix[g]) % (m + 1);
                if cnt < m {
                    next[s + radix[g]] += powers[g] * dp[s];
                }
            }
        }
        std::mem::swap(&mut dp, &mut next);
    }
    dp[full]
}

/// Raising moves from a partition: transfer `t` units from part `j` to an
/// earlier part `i < j`, re-sort, and record the factor
/// `(λ_i + t) - (λ_j - t)`.
fn raising_moves(lambda: &Partition, lookup: &dyn Fn(&[u32]) -> Option<u32>) -> Vec<(u32, i64)> {
    let parts = lambda.parts();
    let mut out = Vec::new();
    let mut scratch: Vec<u32> = Vec::with_capacity(parts.len());
    for j in 1..parts.len() {
        for i in 0..j {
            for t in 1..=parts[j] {
                scratch.clear();
                scratch.extend_from_slice(parts);
                scratch[i] += t;
                scratch[j] -= t;
                scratch.sort_unstable_by(|a, b| b.cmp(a));
                while scratch.last() == Some(&0) {
                    scratch.pop();
                }
                if let Some(idx) = lookup(&scratch) {
                    let factor = i64::from(parts[i] + t) - i64::from(parts[j] - t);
                    out.push((idx, factor));
                }
            }
        }
    }
    out
}

trait Coeff: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_mul_i64(&mut self, other: &Self, factor: i64);
    fn div_i64(&self, d: i64) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn multinomial(k: u32, parts: &[u32]) -> Self;
    fn to_f64(&self) -> f64;
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add_mul_i64(&mut self, other: &Self, factor: i64) {
        *self += other * factor as f64;
    }
    fn div_i64(&self, d: i64) -> Self {
        self / d as f64
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn multinomial(k: u32, parts: &[u32]) -> Self {
        let mut v = crate::special::ln_gamma(f64::from(k) + 1.0);
        for &p in parts {
            v -= crate::special::ln_gamma(f64::from(p) + 1.0);
        }
        v.exp()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_mul_i64(&mut self, other: &Self, factor: i64) {
        *self += other * BigRational::from_integer(BigInt::from(factor));
    }
    fn div_i64(&self, d: i64) -> Self {
        self / BigRational::from_integer(BigInt::from(d))
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn multinomial(k: u32, parts: &[u32]) -> Self {
        fn factorial(n: u32) -> BigInt {
            let mut f = BigInt::one();
            for i in 2..=n {
                f *= BigInt::from(i);
            }
            f
        }
        let mut denom = BigInt::one();
        for &p in parts {
            denom *= factorial(p);
        }
        BigRational::new(factorial(k), denom)
    }
    fn to_f64(&self) -> f64 {
        // exact conversion can overflow BigInt->f64 only far beyond the
        // rational weight limit
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            let n = self.numer().abs().to_f64().unwrap_or(f64::INFINITY);
            let d = self.denom().abs().to_f64().unwrap_or(f64::INFINITY);
            let sign = if self.is_negative() { -1.0 } else { 1.0 };
            sign * n / d
        })
    }
}

fn build_rows<T: Coeff>(partitions: &[Partition], weight: u32) -> Vec<Vec<(u32, f64)>> {
    let count = partitions.len();
    let lookup = |parts: &[u32]| -> Option<u32> {
        partitions
            .binary_search_by(|p| parts.cmp(p.parts()))
            .ok()
            .map(|i| i as u32)
    };
    let moves: Vec<Vec<(u32, i64)>> = partitions
        .iter()
        .map(|p| raising_moves(p, &lookup))
        .collect();
    let rhos: Vec<i64> = partitions.iter().map(Partition::rho).collect();
    let targets: Vec<T> = partitions
        .iter()
        .map(|p| T::multinomial(weight, p.parts()))
        .collect();

    // unit-leading rows from the recursion
    let mut rows: Vec<Vec<(u32, T)>> = Vec::with_capacity(count);
    let mut dense: Vec<T> = vec![T::zero(); count];
    for ri in 0..count {
        for slot in dense.iter_mut() {
            *slot = T::zero();
        }
        dense[ri] = T::multinomial(0, &[]); // one
        for li in (ri + 1)..count {
            let mut acc = T::zero();
            for &(mi, factor) in &moves[li] {
                let mi = mi as usize;
                // coefficients above the leading partition are structurally zero
                if mi >= ri && !dense[mi].is_zero() {
                    acc.add_mul_i64(&dense[mi], factor);
                }
            }
            if !acc.is_zero() {
                dense[li] = acc.div_i64(rhos[ri] - rhos[li]);
            }
        }
        let row: Vec<(u32, T)> = dense
            .iter()
            .enumerate()
            .skip(ri)
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as u32, c.clone()))
            .collect();
        rows.push(row);
    }

    // scale each row so that Σ_κ C_κ expands to (Σ x_i)^k
    let mut col_acc: Vec<T> = vec![T::zero(); count];
    let mut scaled: Vec<Vec<(u32, f64)>> = Vec::with_capacity(count);
    for (ri, row) in rows.iter().enumerate() {
        let scale = targets[ri].sub(&col_acc[ri]);
        let mut out_row = Vec::with_capacity(row.len());
        for (j, c) in row {
            let final_c = scale.mul(c);
            col_acc[*j as usize].add_mul_i64(&final_c, 1);
            out_row.push((*j, final_c.to_f64()));
        }
        scaled.push(out_row);
    }
    scaled
}

fn build_table(weight: u32, len_cap: usize) -> ZonalTable {
    let len_cap = len_cap.clamp(1, weight.max(1) as usize);
    let partitions = enumerate_partitions(weight, len_cap);
    let rows = if weight <= RATIONAL_WEIGHT_LIMIT && len_cap <= RATIONAL_LEN_LIMIT {
        build_rows::<BigRational>(&partitions, weight)
    } else {
        build_rows::<f64>(&partitions, weight)
    };
    ZonalTable {
        weight,
        len_cap,
        partitions,
        rows,
    }
}

/// Memoized zonal tables keyed by `(weight, length cap)`.
///
/// Readers share `Arc`s to immutable tables; insertion happens under a write
/// lock and entries are never mutated afterwards.
pub struct ZonalCache {
    max_weight: u32,
    store_limit: u32,
    tables: RwLock<HashMap<(u32, usize), Arc<ZonalTable>>>,
}

impl ZonalCache {
    pub fn new(max_weight: u32, store_limit: u32) -> Self {
        ZonalCache {
            max_weight,
            store_limit,
            tables: RwLock::new(HashMap::new()),
        }
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn table(&self, weight: u32, len_cap: usize) -> Result<Arc<ZonalTable>> {
        if weight > self.max_weight {
            return Err(Error::Resource(format!(
                "partition weight {weight} exceeds the configured maximum degree {}",
                self.max_weight
            )));
        }
        let len_cap = len_cap.clamp(1, weight.max(1) as usize);
        if weight > self.store_limit {
            return Ok(Arc::new(build_table(weight, len_cap)));
        }
        let key = (weight, len_cap);
        if let Some(t) = self.tables.read().unwrap().get(&key) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(build_table(weight, len_cap));
        let mut guard = self.tables.write().unwrap();
        let entry = guard.entry(key).or_insert_with(|| Arc::clone(&table));
        Ok(Arc::clone(entry))
    }
}

/// Process-wide cache with the default degree cap.
pub fn global_cache() -> &'static ZonalCache {
    static CACHE: OnceLock<ZonalCache> = OnceLock::new();
    CACHE.get_or_init(|| ZonalCache::new(DEFAULT_MAX_WEIGHT, STORE_WEIGHT_LIMIT))
}

/// A zonal polynomial expansion `C_κ = Σ_λ c_λ M_λ` over the monomial basis.
#[derive(Debug, Clone)]
pub struct ZonalExpansion {
    kappa: Partition,
    terms: Vec<(Partition, f64)>,
}

impl ZonalExpansion {
    pub fn kappa(&self) -> &Partition {
        &self.kappa
    }

    /// Monomial-basis terms, keyed by partitions of the same weight
    /// dominated by `kappa`.
    pub fn terms(&self) -> &[(Partition, f64)] {
        &self.terms
    }

    pub fn coefficient(&self, lambda: &Partition) -> f64 {
        self.terms
            .iter()
            .find(|(p, _)| p == lambda)
            .map(|(_, c)| *c)
            .unwrap_or(0.0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| c * monomial_eval(p, x))
            .sum()
    }
}

/// Full monomial expansion of `C_κ` (terms of every length). Fails with a
/// resource error when the weight exceeds the configured maximum degree.
pub fn zonal_expansion(kappa: &Partition) -> Result<ZonalExpansion> {
    let weight = kappa.weight();
    let table = global_cache().table(weight, weight.max(1) as usize)?;
    let idx = table
        .index_of(kappa)
        .expect("partition must appear in its weight table");
    let terms = table.rows()[idx]
        .iter()
        .map(|&(j, c)| (table.partitions()[j as usize].clone(), c))
        .collect();
    Ok(ZonalExpansion {
        kappa: kappa.clone(),
        terms,
    })
}

/// `C_κ` evaluated at the eigenvalues of a symmetric matrix. Returns 0 when
/// `κ` has more nonzero parts than there are arguments.
pub fn zonal_eval(kappa: &Partition, eigenvalues: &[f64]) -> Result<f64> {
    if kappa.len() > eigenvalues.len() {
        return Ok(0.0);
    }
    let weight = kappa.weight();
    if weight == 0 {
        return Ok(1.0);
    }
    let cap = eigenvalues.len().min(weight as usize);
    let table = global_cache().table(weight, cap)?;
    let idx = table
        .index_of(kappa)
        .expect("partition must appear in its weight table");
    Ok(table.eval_row(idx, eigenvalues))
}

/// `C_κ(I_m)` in closed form:
///
/// ```text
/// C_κ(I_m) = 2^{2k} k! (m/2)_κ ∏_{i<j}(2κ_i - 2κ_j - i + j) / ∏_i (2κ_i + p - i)!
/// ```
///
/// with `p = len(κ)`. Evaluates to 0 when `len(κ) > m` via the vanishing
/// Pochhammer factor.
pub fn zonal_unit(kappa: &Partition, m: usize) -> f64 {
    assert!(m >= 1, "dimension must be >= 1");
    let k = kappa.weight();
    if k == 0 {
        return 1.0;
    }
    if kappa.len() > m {
        return 0.0;
    }
    let p = kappa.len();
    let parts = kappa.parts();
    let mut log = 2.0 * f64::from(k) * std::f64::consts::LN_2
        + crate::special::ln_gamma(f64::from(k) + 1.0);
    let poch = super::pochhammer_partition(m as f64 / 2.0, kappa);
    debug_assert!(poch > 0.0);
    log += poch.ln();
    for i in 0..p {
        for j in (i + 1)..p {
            let f = 2.0 * f64::from(parts[i]) - 2.0 * f64::from(parts[j]) + (j as f64 - i as f64);
            log += f.ln();
        }
        log -= crate::special::ln_gamma(2.0 * f64::from(parts[i]) + (p - i) as f64);
    }
    log.exp()
}
