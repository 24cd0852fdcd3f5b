//! Permutations, cycle decompositions, integer partitions and symmetric-group
//! characters.
//!
//! Indices are 0-based throughout the Rust API; [`fmt::Display`] prints the
//! usual 1-based cycle notation, so `(1 2 4)(3 6 5)` reads as expected.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::skewmat::scalar::Scalar;

/// A bijection of `{0, .., m-1}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds from 1-based one-line notation, e.g. `[2, 3, 1]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("1-based images must be positive".into()));
        }
        Self::new(images.iter().map(|&x| x - 1).collect())
    }

    pub fn identity(m: usize) -> Self {
        Self { images: (0..m).collect() }
    }

    /// Product of disjoint cycles (0-based entries) on `{0, .., m-1}`.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut used = vec![false; m];
        for cycle in cycles {
            for (p, &x) in cycle.iter().enumerate() {
                if x >= m || used[x] {
                    return Err(Error::InvalidPermutation(format!("cycles {cycles:?} are not disjoint in S_{m}")));
                }
                used[x] = true;
                images[x] = cycle[(p + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let m = self.images.len();
        let mut seen = vec![false; m];
        let mut count = 0;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
            }
        }
        count
    }

    pub fn sign(&self) -> i64 {
        if (self.images.len() - self.cycle_count()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn decompose(&self) -> CycleDecomposition {
        decompose(self)
    }
}

/// Disjoint cycles, each rotated so its smallest element leads, listed by increasing leader.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    m: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// ν(σ), the number of cycles.
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn reconstruct(&self) -> Permutation {
        Permutation::from_cycles(self.m, &self.cycles).expect("decomposition cycles are disjoint")
    }

    pub fn cycle_type(&self) -> IntegerPartition {
        IntegerPartition::from_unsorted(self.cycles.iter().map(Vec::len).collect())
            .expect("cycle lengths are positive")
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            write!(f, "(")?;
            for (p, x) in c.iter().enumerate() {
                if p > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Canonical cycle decomposition: leaders are the smallest entries, in increasing order.
pub fn decompose(sigma: &Permutation) -> CycleDecomposition {
    let m = sigma.len();
    let mut seen = vec![false; m];
    let mut cycles = Vec::new();
    // Scanning starts in increasing order, so every start is the minimum of its cycle.
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = sigma.apply(start);
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = sigma.apply(x);
        }
        cycles.push(cycle);
    }
    CycleDecomposition { m, cycles }
}

/// All permutations of `{0, .., m-1}` in lexicographic order of one-line notation.
pub struct Permutations {
    next: Option<Vec<usize>>,
}

pub fn permutations(m: usize) -> Permutations {
    Permutations { next: Some((0..m).collect()) }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let n = succ.len();
        if n > 1 {
            if let Some(i) = (0..n - 1).rev().find(|&i| succ[i] < succ[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| succ[j] > succ[i]).expect("successor exists");
                succ.swap(i, j);
                succ[i + 1..].reverse();
                self.next = Some(succ);
            }
        }
        Some(Permutation { images: current })
    }
}

/// `Σ_{σ ∈ S_m} x^{m - ν(σ)}` via the closed product `∏_{k=0}^{m-1} (k x + 1)`.
pub fn cycle_count_poly<S: Scalar>(m: usize, x: &S) -> S {
    (0..m).fold(S::one(), |acc, k| acc * (S::from_int(k as i64) * x.clone() + S::one()))
}

/// A partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// `(m)`
    pub fn row(m: usize) -> Self {
        Self { parts: if m == 0 { vec![] } else { vec![m] } }
    }

    /// `(1^m)`
    pub fn column(m: usize) -> Self {
        Self { parts: vec![1; m] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// m_r(ρ), the multiplicity of part `r`.
    pub fn multiplicity(&self, r: usize) -> usize {
        self.parts.iter().filter(|&&p| p == r).count()
    }

    /// `#C_ρ = k! / ∏_r r^{m_r} m_r!`.
    pub fn class_size(&self) -> u128 {
        let k = self.weight();
        let mut denom: u128 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let r = self.parts[i];
            let mult = self.multiplicity(r);
            denom *= (r as u128).pow(mult as u32) * factorial(mult);
            i += mult;
        }
        factorial(k) / denom
    }

    /// All partitions of `k`, in reverse lexicographic order (`(k)` first).
    pub fn all(k: usize) -> Vec<Self> {
        fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
            if rest == 0 {
                out.push(IntegerPartition { parts: prefix.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                prefix.push(p);
                rec(rest - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, k, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Every cycle type of `S_k` with its class size; the sizes sum to `k!`.
pub fn enumerate_conjugacy_classes(k: usize) -> Vec<(IntegerPartition, u128)> {
    IntegerPartition::all(k)
        .into_iter()
        .map(|rho| {
            let size = rho.class_size();
            (rho, size)
        })
        .collect()
}

thread_local! {
    static CHARACTER_CACHE: RefCell<HashMap<(Vec<usize>, Vec<usize>), i64>> = RefCell::new(HashMap::new());
}

/// Irreducible character `χ^λ` on the class of cycle type `ρ`, by the
/// Murnaghan–Nakayama rule on beta-sets. Results are memoized per thread.
pub fn mn_character(lambda: &IntegerPartition, rho: &IntegerPartition) -> Result<i64> {
    if lambda.weight() != rho.weight() {
        return Err(Error::WeightMismatch { left: lambda.weight(), right: rho.weight() });
    }
    Ok(mn_rec(lambda.parts(), rho.parts()))
}

fn mn_rec(lambda: &[usize], rho: &[usize]) -> i64 {
    let Some((&r, rest)) = rho.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(v) = CHARACTER_CACHE.with(|c| c.borrow().get(&key).copied()) {
        return v;
    }
    let len = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&shape, rest);
    }
    CHARACTER_CACHE.with(|c| c.borrow_mut().insert(key, total));
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewmat::scalar::QC;

    #[test]
    fn identity_has_m_cycles() {
        let d = decompose(&Permutation::identity(3));
        assert_eq!(d.cycles(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(d.cycle_count(), 3);
    }

    #[test]
    fn canonical_leaders() {
        // (1 2 4)(3 6 5) in 1-based cycle notation
        let sigma = Permutation::from_cycles(6, &[vec![3, 0, 1], vec![5, 4, 2]]).unwrap();
        let d = decompose(&sigma);
        assert_eq!(d.cycles(), &[vec![0, 1, 3], vec![2, 5, 4]]);
        assert_eq!(d.cycle_count(), 2);
        assert_eq!(d.to_string(), "(1 2 4)(3 6 5)");
        assert_eq!(d.reconstruct(), sigma);
    }

    #[test]
    fn single_long_cycle() {
        let sigma = Permutation::new(vec![1, 2, 3, 4, 0]).unwrap();
        assert_eq!(sigma.cycle_count(), 1);
        assert_eq!(sigma.sign(), 1);
        assert_eq!(sigma.inverse().inverse(), sigma);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<Vec<usize>> = permutations(3).map(|p| p.images().to_vec()).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[1], vec![0, 2, 1]);
        assert_eq!(all[5], vec![2, 1, 0]);
        assert_eq!(permutations(0).count(), 1);
    }

    #[test]
    fn cycle_count_poly_values() {
        assert_eq!(cycle_count_poly(3, &QC::from_int(1)), QC::from_int(6));
        // enumeration: 1 identity, 3 transpositions (x), 2 three-cycles (x^2) → 1 + 6 + 8
        assert_eq!(cycle_count_poly(3, &QC::from_int(2)), QC::from_int(15));
        assert_eq!(cycle_count_poly(4, &QC::from_ratio(-1, 2)), QC::from_int(0));
    }

    #[test]
    fn classes_of_s3_and_s4() {
        let c3 = enumerate_conjugacy_classes(3);
        let sizes: Vec<(Vec<usize>, u128)> = c3.iter().map(|(p, s)| (p.parts().to_vec(), *s)).collect();
        assert_eq!(sizes, vec![(vec![3], 2), (vec![2, 1], 3), (vec![1, 1, 1], 1)]);
        assert_eq!(enumerate_conjugacy_classes(1), vec![(IntegerPartition::row(1), 1)]);
        assert_eq!(enumerate_conjugacy_classes(4).iter().map(|c| c.1).sum::<u128>(), 24);
    }

    #[test]
    fn characters_small() {
        let p = |v: Vec<usize>| IntegerPartition::new(v).unwrap();
        for rho in IntegerPartition::all(4) {
            let sign = if (4 - rho.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(mn_character(&IntegerPartition::column(4), &rho).unwrap(), sign);
            assert_eq!(mn_character(&IntegerPartition::row(4), &rho).unwrap(), 1);
        }
        assert_eq!(mn_character(&p(vec![2, 1]), &p(vec![1, 1, 1])).unwrap(), 2);
        assert_eq!(mn_character(&p(vec![2, 1]), &p(vec![2, 1])).unwrap(), 0);
        assert_eq!(mn_character(&p(vec![2, 1]), &p(vec![3])).unwrap(), -1);
        assert!(matches!(
            mn_character(&p(vec![2]), &p(vec![1])),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn partition_validation() {
        assert!(IntegerPartition::new(vec![1, 2]).is_err());
        assert!(IntegerPartition::new(vec![2, 0]).is_err());
        let r = IntegerPartition::from_unsorted(vec![1, 3, 1]).unwrap();
        assert_eq!(r.parts(), &[3, 1, 1]);
        assert_eq!(r.multiplicity(1), 2);
        assert_eq!(r.class_size(), 20);
    }
}
