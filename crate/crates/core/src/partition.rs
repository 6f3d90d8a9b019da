//! Set partitions of `[n]`, the refinement lattice and Möbius inversion.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{FromPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_size, Error, Result};
use crate::perm::Permutation;
use crate::Limits;

/// A partition of `0..n`, kept canonical: every block sorted, blocks sorted
/// by their minimum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::invalid("empty block"));
            }
            for &i in block {
                if i >= n || seen[i] {
                    return Err(Error::invalid(format!("blocks {blocks:?} do not partition 0..{n}")));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid(format!("blocks {blocks:?} do not cover 0..{n}")));
        }
        Ok(Self::canonical(n, blocks))
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n, blocks }
    }

    /// Partition whose blocks are the level sets of `labels`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(i);
        }
        Self::canonical(labels.len(), groups.into_values().collect())
    }

    /// `0_n`, all singletons.
    pub fn discrete(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    /// `1_n`, a single block.
    pub fn one(n: usize) -> Self {
        SetPartition {
            n,
            blocks: if n == 0 { vec![] } else { vec![(0..n).collect()] },
        }
    }

    /// The orbit partition of a permutation (its cycles as blocks).
    pub fn from_permutation(p: &Permutation) -> Self {
        Self::canonical(p.size(), p.cycles())
    }

    /// Consecutive interval blocks of the given lengths, e.g. `1_{m,n}`.
    pub fn intervals(lengths: &[usize]) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut start = 0;
        for &m in lengths {
            if m == 0 {
                return Err(Error::invalid("interval lengths must be positive"));
            }
            blocks.push((start..start + m).collect());
            start += m;
        }
        Ok(SetPartition { n: start, blocks })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// `|A| = n − #(A)`.
    pub fn norm(&self) -> usize {
        self.n - self.blocks.len()
    }

    /// Index of the block containing each point.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &i in b {
                labels[i] = k;
            }
        }
        labels
    }

    /// `self ≤ other` in the refinement order.
    pub fn leq(&self, other: &SetPartition) -> bool {
        if self.n != other.n {
            return false;
        }
        let labels = other.labels();
        self.blocks.iter().all(|b| b.iter().all(|&i| labels[i] == labels[b[0]]))
    }

    /// `A ∨ B`, the finest partition above both.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        check_size(self.n, other.n)?;
        let mut uf = UnionFind::new(self.n);
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for w in b.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let labels: Vec<usize> = (0..self.n).map(|i| uf.find(i)).collect();
        Ok(Self::from_labels(&labels))
    }

    /// Whether `p` maps every block onto itself.
    pub fn is_pi_invariant(&self, p: &Permutation) -> Result<bool> {
        check_size(self.n, p.size())?;
        let labels = self.labels();
        Ok((0..self.n).all(|i| labels[p.apply(i)] == labels[i]))
    }

    /// The augmented norm `|(A, π)| = 2|A| − |π|` for a `π`-invariant `A`.
    pub fn augmented_norm(&self, p: &Permutation) -> Result<i64> {
        if !self.is_pi_invariant(p)? {
            return Err(Error::invalid("partition is not invariant under the permutation"));
        }
        Ok(2 * self.norm() as i64 - p.length() as i64)
    }

    /// The partition of `0..k` induced on blocks of `finer` (which must
    /// refine `self`): block `j` of `finer` goes with block `i` of `self`.
    pub(crate) fn quotient_profile(&self, finer: &SetPartition) -> Vec<usize> {
        let labels = self.labels();
        let mut counts = vec![0; self.blocks.len()];
        for b in &finer.blocks {
            counts[labels[b[0]]] += 1;
        }
        counts
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// `moeb(C, 1_n) = (−1)^{k−1}(k−1)!` with `k = #(C)`.
pub fn mobius_to_top(c: &SetPartition) -> i64 {
    let k = c.num_blocks().max(1) as i64;
    let fact: i64 = (1..k).product();
    if k % 2 == 1 {
        fact
    } else {
        -fact
    }
}

/// Möbius function of the interval `[lower, upper]` of the partition
/// lattice.
///
/// The interval is a product of full lattices `P(k_i)`, one per block of
/// `upper`, where `k_i` counts the `lower` blocks inside it. Each factor
/// `μ_k = μ(0_k, 1_k)` is obtained from `μ_1 = 1` and
/// `Σ_{0_k ≤ D ≤ 1_k} μ(0_k, D) = 0`, summing over the `D`s grouped by
/// block-size profile.
pub fn mobius_interval(lower: &SetPartition, upper: &SetPartition) -> Result<i64> {
    check_size(lower.size(), upper.size())?;
    if !lower.leq(upper) {
        return Err(Error::invalid("mobius_interval needs lower ≤ upper"));
    }
    let profile = upper.quotient_profile(lower);
    let kmax = profile.iter().copied().max().unwrap_or(1);
    let table = mobius_bottom_top_table(kmax);
    Ok(profile.iter().map(|&k| table[k]).product())
}

/// `μ(0_k, 1_k)` for `k = 0..=kmax` from the defining recursion.
fn mobius_bottom_top_table(kmax: usize) -> Vec<i64> {
    let mut mu = vec![1i64; kmax + 1];
    for k in 2..=kmax {
        let mut sum: i128 = 0;
        for shape in integer_partitions(k) {
            if shape.len() == 1 {
                continue;
            }
            let weight = set_partitions_of_shape(&shape);
            let term: i128 = shape.iter().map(|&s| mu[s] as i128).product();
            sum += weight * term;
        }
        mu[k] = -(sum as i64);
    }
    mu
}

/// Integer partitions of `k` as non-increasing part lists.
pub(crate) fn integer_partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            rec(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// Number of set partitions of `[k]` with the given block sizes:
/// `k! / (∏ λ_i! ∏ m_j!)`.
fn set_partitions_of_shape(shape: &[usize]) -> i128 {
    let fact = |m: usize| -> i128 { (1..=m as i128).product() };
    let k: usize = shape.iter().sum();
    let mut denom: i128 = shape.iter().map(|&s| fact(s)).product();
    let mut mult: HashMap<usize, usize> = HashMap::new();
    for &s in shape {
        *mult.entry(s).or_default() += 1;
    }
    for m in mult.values() {
        denom *= fact(*m);
    }
    fact(k) / denom
}

/// Iterator over all partitions of `0..n` via restricted growth strings.
pub struct Partitions {
    rgs: Vec<usize>,
    maxes: Vec<usize>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let out = SetPartition::from_labels(&self.rgs);
        // advance: rgs[i] ≤ 1 + max(rgs[..i])
        let n = self.rgs.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.rgs[i] <= self.maxes[i - 1] {
                self.rgs[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                break;
            }
        }
        Some(out)
    }
}

/// All partitions of `0..n`, duplicate-free, in restricted-growth order.
pub fn enumerate_partitions(n: usize, limits: &Limits) -> Result<Partitions> {
    if n > limits.partitions_n {
        return Err(Error::cap("partition size", n, limits.partitions_n));
    }
    Ok(Partitions {
        rgs: vec![0; n],
        maxes: vec![0; n],
        done: n == 0,
    })
}

/// All `p`-invariant partitions, generated as partitions of the cycle set of
/// `p` (each block a union of whole cycles).
pub fn enumerate_pi_invariant(p: &Permutation, limits: &Limits) -> Result<impl Iterator<Item = SetPartition>> {
    let cycles = p.cycles();
    let k = cycles.len();
    if k > limits.partitions_n {
        return Err(Error::cap("cycle count", k, limits.partitions_n));
    }
    let n = p.size();
    let inner = if k == 0 {
        None
    } else {
        Some(enumerate_partitions(k, limits)?)
    };
    let empty = if k == 0 { Some(SetPartition::one(0)) } else { None };
    Ok(empty.into_iter().chain(inner.into_iter().flatten().map(move |q| {
        let blocks = q
            .blocks()
            .iter()
            .map(|b| b.iter().flat_map(|&c| cycles[c].iter().copied()).collect())
            .collect();
        SetPartition::canonical(n, blocks)
    })))
}

/// All `C` with `lower ≤ C ≤ upper`.
pub fn interval(lower: &SetPartition, upper: &SetPartition) -> Result<Vec<SetPartition>> {
    check_size(lower.size(), upper.size())?;
    if !lower.leq(upper) {
        return Err(Error::invalid("interval needs lower ≤ upper"));
    }
    let up = upper.labels();
    let owner: Vec<usize> = lower.blocks().iter().map(|b| up[b[0]]).collect();
    let k = owner.len();
    let mut out = Vec::new();
    let mut assign = vec![0usize; k];
    // groups[g] = upper block of group g
    fn rec(
        i: usize,
        owner: &[usize],
        assign: &mut Vec<usize>,
        groups: &mut Vec<usize>,
        lower: &SetPartition,
        out: &mut Vec<SetPartition>,
    ) {
        if i == owner.len() {
            let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); groups.len()];
            for (j, &g) in assign.iter().enumerate() {
                blocks[g].extend_from_slice(&lower.blocks()[j]);
            }
            out.push(SetPartition::canonical(lower.size(), blocks));
            return;
        }
        for g in 0..groups.len() {
            if groups[g] == owner[i] {
                assign[i] = g;
                rec(i + 1, owner, assign, groups, lower, out);
            }
        }
        groups.push(owner[i]);
        assign[i] = groups.len() - 1;
        rec(i + 1, owner, assign, groups, lower, out);
        groups.pop();
    }
    rec(0, &owner, &mut assign, &mut Vec::new(), lower, &mut out);
    Ok(out)
}

/// Classical joint cumulant `k_r(a_1, …, a_r)` by Möbius inversion over
/// `P(r)`:
/// `k_r = Σ_C moeb(C, 1_r) ∏_{V ∈ C} E(∏_{j ∈ V} a_j)`.
///
/// `moment` receives the sorted 0-based indices of a non-empty subset and
/// returns the corresponding mixed moment; each subset is queried once.
pub fn cumulants_from_moments<T, E, F>(r: usize, limits: &Limits, mut moment: F) -> Result<T, E>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T> + FromPrimitive,
    E: From<Error>,
    F: FnMut(&[usize]) -> Result<T, E>,
{
    if r == 0 {
        return Err(Error::invalid("cumulant of zero observables").into());
    }
    if r > limits.cumulant_r {
        return Err(Error::cap("cumulant order", r, limits.cumulant_r).into());
    }
    let mut cache: HashMap<Vec<usize>, T> = HashMap::new();
    let mut total = T::zero();
    for c in enumerate_partitions(r, limits)? {
        let coeff = T::from_i64(mobius_to_top(&c)).ok_or_else(|| Error::Arithmetic("coefficient conversion".into()))?;
        let mut term = coeff;
        for block in c.blocks() {
            let value = match cache.get(block) {
                Some(v) => v.clone(),
                None => {
                    let v = moment(block)?;
                    cache.insert(block.clone(), v.clone());
                    v
                }
            };
            term = term * value;
        }
        total = total + term;
    }
    Ok(total)
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, i) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", i + 1)?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionJson {
            n: self.n,
            blocks: self.blocks.iter().map(|b| b.iter().map(|i| i + 1).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PartitionJson::deserialize(d)?;
        if raw.blocks.iter().flatten().any(|&i| i == 0) {
            return Err(serde::de::Error::custom("blocks are 1-based"));
        }
        let blocks = raw
            .blocks
            .into_iter()
            .map(|b| b.into_iter().map(|i| i - 1).collect())
            .collect();
        SetPartition::new(raw.n, blocks).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn part(n: usize, blocks: &[&[usize]]) -> SetPartition {
        SetPartition::new(n, blocks.iter().map(|b| b.iter().map(|i| i - 1).collect()).collect()).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    /// Equivalence-relation closure by repeated relaxation, independent of
    /// the union-find join.
    fn closure_join(a: &SetPartition, b: &SetPartition) -> SetPartition {
        let n = a.size();
        let mut rel = vec![vec![false; n]; n];
        for p in [a, b] {
            for blk in p.blocks() {
                for &i in blk {
                    for &j in blk {
                        rel[i][j] = true;
                    }
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|i| (0..n).find(|&j| rel[i][j]).unwrap()).collect();
        SetPartition::from_labels(&labels)
    }

    fn random_partition(n: usize, rng: &mut ChaCha8Rng) -> SetPartition {
        let k = rng.random_range(1..=n);
        let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
        SetPartition::from_labels(&labels)
    }

    #[test]
    fn join_examples() {
        let a = part(4, &[&[1, 2], &[3], &[4]]);
        assert_eq!(SetPartition::discrete(4).join(&a).unwrap(), a);
        let b = part(4, &[&[1, 2], &[3, 4]]);
        let c = part(4, &[&[2, 3], &[1], &[4]]);
        assert_eq!(b.join(&c).unwrap(), SetPartition::one(4));
        assert!(b.join(&SetPartition::one(3)).is_err());
    }

    #[test]
    fn join_matches_closure_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let n = rng.random_range(1..=10);
            let a = random_partition(n, &mut rng);
            let b = random_partition(n, &mut rng);
            let j = a.join(&b).unwrap();
            assert_eq!(j, closure_join(&a, &b));
            assert_eq!(j, b.join(&a).unwrap());
            assert_eq!(a.join(&a).unwrap(), a);
            assert!(a.leq(&j) && b.leq(&j));
        }
    }

    #[test]
    fn invariance_examples() {
        let p = Permutation::parse("(1 3)(2 4 5)", 5).unwrap();
        assert!(SetPartition::from_permutation(&p).is_pi_invariant(&p).unwrap());
        assert!(SetPartition::one(5).is_pi_invariant(&p).unwrap());
        let t = Permutation::parse("(1 2)", 2).unwrap();
        assert!(!SetPartition::discrete(2).is_pi_invariant(&t).unwrap());
    }

    #[test]
    fn mobius_top_values() {
        assert_eq!(mobius_to_top(&SetPartition::one(4)), 1);
        assert_eq!(mobius_to_top(&part(3, &[&[1, 2], &[3]])), -1);
        assert_eq!(mobius_to_top(&SetPartition::discrete(4)), -6);
    }

    #[test]
    fn mobius_interval_reproduces_top_formula() {
        for n in 1..=12 {
            let expected = mobius_to_top(&SetPartition::discrete(n));
            let got = mobius_interval(&SetPartition::discrete(n), &SetPartition::one(n)).unwrap();
            assert_eq!(got, expected, "n = {n}");
        }
        let a = part(3, &[&[1, 2], &[3]]);
        assert_eq!(mobius_interval(&a, &a).unwrap(), 1);
        assert!(mobius_interval(&SetPartition::one(3), &a).is_err());
    }

    #[test]
    fn mobius_interval_sums_vanish() {
        for n in 1..=5 {
            let all: Vec<_> = enumerate_partitions(n, &lim()).unwrap().collect();
            for c in &all {
                for a in &all {
                    if !c.leq(a) || c == a {
                        continue;
                    }
                    let s: i64 = all
                        .iter()
                        .filter(|d| c.leq(d) && d.leq(a))
                        .map(|d| mobius_interval(c, d).unwrap())
                        .sum();
                    assert_eq!(s, 0, "{c} < {a}");
                }
            }
        }
    }

    #[test]
    fn mobius_inversion_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            let all: Vec<_> = enumerate_partitions(n, &lim()).unwrap().collect();
            let f: HashMap<&SetPartition, i64> = all.iter().map(|p| (p, rng.random_range(-20..20))).collect();
            let g: HashMap<&SetPartition, i64> = all
                .iter()
                .map(|a| (a, all.iter().filter(|c| c.leq(a)).map(|c| f[c]).sum()))
                .collect();
            for a in &all {
                let back: i64 = all
                    .iter()
                    .filter(|c| c.leq(a))
                    .map(|c| mobius_interval(c, a).unwrap() * g[c])
                    .sum();
                assert_eq!(back, f[a]);
            }
        }
    }

    /// Number of equivalence relations on `[n]`, by brute force over all
    /// label vectors.
    fn brute_bell(n: usize) -> usize {
        let mut seen = HashSet::new();
        let total = n.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let labels: Vec<usize> = (0..n)
                .map(|_| {
                    let l = c % n;
                    c /= n;
                    l
                })
                .collect();
            seen.insert(SetPartition::from_labels(&labels));
        }
        seen.len()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_partitions(3, &lim()).unwrap().count(), 5);
        for n in 1..=6 {
            let v: Vec<_> = enumerate_partitions(n, &lim()).unwrap().collect();
            let set: HashSet<_> = v.iter().cloned().collect();
            assert_eq!(set.len(), v.len());
            assert_eq!(v.len(), brute_bell(n));
        }
        assert!(enumerate_partitions(13, &lim()).is_err());
    }

    #[test]
    fn invariant_enumeration() {
        let id = Permutation::identity(4);
        assert_eq!(enumerate_pi_invariant(&id, &lim()).unwrap().count(), 15);
        let c = Permutation::parse("(1 2 3)", 3).unwrap();
        let v: Vec<_> = enumerate_pi_invariant(&c, &lim()).unwrap().collect();
        assert_eq!(v, vec![SetPartition::one(3)]);
        // against filtering all partitions
        let p = Permutation::parse("(1 4)(2)(3 5 6)", 6).unwrap();
        let fast: HashSet<_> = enumerate_pi_invariant(&p, &lim()).unwrap().collect();
        let slow: HashSet<_> = enumerate_partitions(6, &lim())
            .unwrap()
            .filter(|a| a.is_pi_invariant(&p).unwrap())
            .collect();
        assert_eq!(fast, slow);
    }

    #[test]
    fn interval_matches_filter() {
        let lower = part(6, &[&[1, 4], &[2], &[3, 5], &[6]]);
        let upper = part(6, &[&[1, 2, 4], &[3, 5, 6]]);
        let fast: HashSet<_> = interval(&lower, &upper).unwrap().into_iter().collect();
        let slow: HashSet<_> = enumerate_partitions(6, &lim())
            .unwrap()
            .filter(|c| lower.leq(c) && c.leq(&upper))
            .collect();
        assert_eq!(fast, slow);
        assert_eq!(fast.len(), 4);
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn cumulant_small_orders() {
        let m: HashMap<Vec<usize>, i64> = [(vec![0], 3), (vec![1], 5), (vec![0, 1], 22)].into_iter().collect();
        let k1: BigRational = cumulants_from_moments(1, &lim(), |s: &[usize]| Ok::<_, Error>(q(m[s]))).unwrap();
        assert_eq!(k1, q(3));
        let k2: BigRational = cumulants_from_moments(2, &lim(), |s: &[usize]| Ok::<_, Error>(q(m[s]))).unwrap();
        assert_eq!(k2, q(22 - 15));
    }

    /// A finite probability space with uniformly weighted outcomes; each
    /// observable is a vector of values, one per outcome.
    struct Discrete {
        values: Vec<Vec<BigRational>>,
    }

    impl Discrete {
        fn moment(&self, idx: &[usize]) -> BigRational {
            let outcomes = self.values[0].len();
            let mut total = q(0);
            for w in 0..outcomes {
                let mut prod = q(1);
                for &i in idx {
                    prod *= &self.values[i][w];
                }
                total += prod;
            }
            total / q(outcomes as i64)
        }

        fn cumulant(&self, idx: &[usize]) -> BigRational {
            cumulants_from_moments(idx.len(), &lim(), |s: &[usize]| {
                let sub: Vec<usize> = s.iter().map(|&j| idx[j]).collect();
                Ok::<_, Error>(self.moment(&sub))
            })
            .unwrap()
        }
    }

    #[test]
    fn cumulant_vanishes_for_independent_third() {
        // (a1, a2) on one coordinate, a3 on an independent one
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let xs: Vec<i64> = (0..4).map(|_| rng.random_range(-3..4)).collect();
        let ys: Vec<i64> = (0..4).map(|_| rng.random_range(-3..4)).collect();
        let zs: Vec<i64> = (0..3).map(|_| rng.random_range(-3..4)).collect();
        let mut values = vec![Vec::new(), Vec::new(), Vec::new()];
        for i in 0..4 {
            for z in &zs {
                values[0].push(q(xs[i]));
                values[1].push(q(ys[i] * xs[i]));
                values[2].push(q(*z));
            }
        }
        let d = Discrete { values };
        assert_eq!(d.cumulant(&[0, 1, 2]), q(0));
        assert_ne!(d.cumulant(&[0, 1]), q(0));
    }

    #[test]
    fn product_cumulant_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for m in 1..=3 {
            for n in 1..=3 {
                let outcomes = 5;
                let values: Vec<Vec<BigRational>> = (0..m + n)
                    .map(|_| (0..outcomes).map(|_| q(rng.random_range(-3..4))).collect())
                    .collect();
                let d = Discrete { values };
                // products A = a1⋯am, B = b1⋯bn as two new observables
                let prod = |range: std::ops::Range<usize>| -> Vec<BigRational> {
                    (0..outcomes)
                        .map(|w| range.clone().fold(q(1), |acc, i| acc * &d.values[i][w]))
                        .collect()
                };
                let pair = Discrete {
                    values: vec![prod(0..m), prod(m..m + n)],
                };
                let lhs = pair.cumulant(&[0, 1]);
                let two = SetPartition::intervals(&[m, n]).unwrap();
                let one = SetPartition::one(m + n);
                let mut rhs = q(0);
                for tau in enumerate_partitions(m + n, &lim()).unwrap() {
                    if tau.join(&two).unwrap() != one {
                        continue;
                    }
                    let mut term = q(1);
                    for b in tau.blocks() {
                        term *= d.cumulant(b);
                    }
                    rhs += term;
                }
                assert_eq!(lhs, rhs, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn triangle_inequality_exhaustive_small() {
        for n in 1..=5 {
            let all: Vec<_> = enumerate_partitions(n, &lim()).unwrap().collect();
            for a in &all {
                for b in &all {
                    assert!(a.join(b).unwrap().norm() <= a.norm() + b.norm());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn triangle_inequalities_random(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(1..=10);
            let a = random_partition(n, &mut rng);
            let b = random_partition(n, &mut rng);
            prop_assert!(a.join(&b).unwrap().norm() <= a.norm() + b.norm());

            let n = rng.random_range(1..=8);
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(&mut rng);
            let pi = Permutation::from_images(v.clone()).unwrap();
            v.shuffle(&mut rng);
            let sigma = Permutation::from_images(v).unwrap();
            let ai: Vec<_> = enumerate_pi_invariant(&pi, &lim()).unwrap().collect();
            let bi: Vec<_> = enumerate_pi_invariant(&sigma, &lim()).unwrap().collect();
            let a = &ai[rng.random_range(0..ai.len())];
            let b = &bi[rng.random_range(0..bi.len())];
            let lhs = a.join(b).unwrap().augmented_norm(&pi.compose(&sigma).unwrap()).unwrap();
            let rhs = a.augmented_norm(&pi).unwrap() + b.augmented_norm(&sigma).unwrap();
            prop_assert!(lhs <= rhs);
        }
    }
}
