//! Integer partitions indexing zonal polynomials.

use crate::error::{Error, Result};
use std::fmt;

/// A weakly decreasing sequence of positive integers.
///
/// The empty partition (weight 0) is valid and indexes the degree-0 term of
/// every matrix-argument series.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, validating that parts are positive and weakly
    /// decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::Domain(format!(
                    "partition parts must be weakly decreasing, got {parts:?}"
                )));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Domain(format!(
                "partition parts must be positive, got {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Eigenvalue of the Laplace–Beltrami operator attached to this
    /// partition: `ρ_κ = Σ κ_i (κ_i - i)`.
    pub fn rho(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i64::from(p) * (i64::from(p) - (i as i64 + 1)))
            .sum()
    }

    /// Dominance order on partitions of equal weight: `self ⊴ other` iff all
    /// prefix sums of `self` are bounded by those of `other`.
    pub fn is_dominated_by(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.weight(), other.weight());
        let mut a = 0u64;
        let mut b = 0u64;
        for i in 0..self.parts.len().max(other.parts.len()) {
            a += u64::from(self.part(i));
            b += u64::from(other.part(i));
            if a > b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `k` with at most `max_length` parts, in reverse
/// lexicographic (descending) order. For `k = 0` the single empty partition
/// is returned.
///
/// Reverse-lexicographic order refines the dominance order, which the zonal
/// recursion relies on: any partition dominating another appears earlier.
pub fn enumerate_partitions(k: u32, max_length: usize) -> Vec<Partition> {
    assert!(max_length >= 1, "max_length must be >= 1");
    let mut out = Vec::new();
    if k == 0 {
        out.push(Partition::empty());
        return out;
    }
    let mut current: Vec<u32> = Vec::with_capacity(max_length);

    fn rec(remaining: u32, max_part: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        if slots == 0 {
            return;
        }
        // largest feasible first gives reverse-lexicographic output
        let hi = remaining.min(max_part);
        // the remaining weight must fit in the available slots
        let lo = remaining.div_ceil(slots as u32);
        let mut p = hi;
        while p >= lo {
            current.push(p);
            rec(remaining - p, p, slots - 1, current, out);
            current.pop();
            if p == 0 {
                break;
            }
            p -= 1;
        }
    }

    rec(k, k, max_length, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(list: &[&[u32]]) -> Vec<Partition> {
        list.iter().map(|p| Partition::new(p.to_vec()).unwrap()).collect()
    }

    #[test]
    fn zero_weight_gives_empty_partition() {
        assert_eq!(enumerate_partitions(0, 3), vec![Partition::empty()]);
    }

    #[test]
    fn respects_length_bound() {
        assert_eq!(enumerate_partitions(3, 2), parts(&[&[3], &[2, 1]]));
    }

    #[test]
    fn classical_counts_and_revlex_order() {
        let p4 = enumerate_partitions(4, 4);
        assert_eq!(
            p4,
            parts(&[&[4], &[3, 1], &[2, 2], &[2, 1, 1], &[1, 1, 1, 1]])
        );
        // p(k) for k = 1..8 with unrestricted length
        let counts: Vec<usize> = (1..=8)
            .map(|k| enumerate_partitions(k, k as usize).len())
            .collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn revlex_refines_dominance() {
        for k in 1..=9u32 {
            let all = enumerate_partitions(k, k as usize);
            for (i, a) in all.iter().enumerate() {
                for b in &all[i + 1..] {
                    // b comes after a, so a must not be strictly dominated by b
                    assert!(
                        !(a.is_dominated_by(b) && a != b),
                        "revlex order violated dominance for {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn rho_is_strictly_monotone_on_dominance() {
        for k in 2..=10u32 {
            let all = enumerate_partitions(k, k as usize);
            for a in &all {
                for b in &all {
                    if a != b && a.is_dominated_by(b) {
                        assert!(a.rho() < b.rho(), "rho not monotone: {a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_invalid_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![3, 1]).is_ok());
    }
}
