//! Permutations of `[n]`.
//!
//! Internally points are `0..n`. Text and JSON forms use the 1-based cycle
//! notation `(1 2 3)(4 5)`, with fixed points omitted and the identity
//! written `()`.
//!
//! Composition is `(p ∘ q)(i) = p(q(i))`, i.e. `p.compose(&q)` applies `q`
//! first. A product such as `γπ⁻¹` is therefore `gamma.compose(&pi.inverse())`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_size, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    /// Builds a permutation from 0-based images `i ↦ map[i]`.
    pub fn from_images(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::invalid(format!("{map:?} is not a bijection of 0..{n}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation from its 1-based one-line form.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::invalid("one-line form is 1-based"));
        }
        Self::from_images(images.iter().map(|&v| v - 1).collect())
    }

    /// Builds a permutation of `[n]` from 1-based cycles. Points not
    /// mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::invalid(format!("point {a} outside [1, {n}]")));
                }
                if seen[a - 1] {
                    return Err(Error::invalid(format!("point {a} appears twice")));
                }
                seen[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                map[a - 1] = b - 1;
            }
        }
        Ok(Permutation { map })
    }

    /// The canonical representative `(1 … λ₁)(λ₁+1 … λ₁+λ₂)⋯` of a cycle type.
    pub fn from_cycle_type(cycle_type: &[usize]) -> Result<Self> {
        if cycle_type.contains(&0) {
            return Err(Error::invalid("cycle lengths must be positive"));
        }
        Ok(gamma_unchecked(cycle_type))
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `p ∘ q`, the permutation `i ↦ p(q(i))`.
    pub fn compose(&self, q: &Permutation) -> Result<Self> {
        check_size(self.size(), q.size())?;
        Ok(self.mul(q))
    }

    pub(crate) fn mul(&self, q: &Permutation) -> Self {
        debug_assert_eq!(self.size(), q.size());
        Permutation {
            map: q.map.iter().map(|&j| self.map[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Permutation::identity(self.size());
        for _ in 0..k {
            out = self.mul(&out);
        }
        out
    }

    /// 0-based cycles, each starting at its minimum, sorted by minimum.
    /// Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.map[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.map[j];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycles_one_based(&self) -> Vec<Vec<usize>> {
        self.cycles()
            .into_iter()
            .map(|c| c.into_iter().map(|i| i + 1).collect())
            .collect()
    }

    /// `#(π)`.
    pub fn num_cycles(&self) -> usize {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.map[j];
            }
        }
        count
    }

    /// `|π| = n − #(π)`, the minimal number of transpositions.
    pub fn length(&self) -> usize {
        self.size() - self.num_cycles()
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut ct: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        ct.sort_unstable_by(|a, b| b.cmp(a));
        ct
    }

    /// The concatenation `π₁ × π₂` acting on `[n₁ + n₂]`, with `other`
    /// shifted onto the last `n₂` points.
    pub fn times(&self, other: &Permutation) -> Self {
        let shift = self.size();
        let mut map = self.map.clone();
        map.extend(other.map.iter().map(|&v| v + shift));
        Permutation { map }
    }

    /// Restriction to an invariant subset, relabelled order-preservingly
    /// onto `0..subset.len()`.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != subset.len() {
            return Err(Error::invalid("subset has repeated points"));
        }
        let mut position = vec![usize::MAX; self.size()];
        for (k, &i) in sorted.iter().enumerate() {
            if i >= self.size() {
                return Err(Error::invalid(format!("point {i} outside the domain")));
            }
            position[i] = k;
        }
        let map = sorted
            .iter()
            .map(|&i| {
                let k = position[self.map[i]];
                if k == usize::MAX {
                    Err(Error::invalid("subset is not invariant"))
                } else {
                    Ok(k)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Permutation { map })
    }

    /// All of `S_n` in lexicographic order of the one-line form.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..n).collect()),
        }
    }

    /// Parses 1-based cycle notation such as `"(1 2 3)(4 5)"` or `"()"`.
    /// Commas are accepted as separators.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::invalid(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::invalid(format!("unbalanced parenthesis in {text:?}")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::invalid(format!("bad point {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    /// Non-trivial 1-based cycles, the form used in text and JSON.
    fn display_cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_one_based().into_iter().filter(|c| c.len() > 1).collect()
    }
}

/// `γ_{m₁,…,m_k}`: consecutive full cycles on intervals of the given lengths.
pub fn gamma(block_lengths: &[usize]) -> Result<Permutation> {
    if block_lengths.is_empty() {
        return Err(Error::invalid("gamma needs at least one block"));
    }
    if block_lengths.contains(&0) {
        return Err(Error::invalid("gamma block lengths must be positive"));
    }
    Ok(gamma_unchecked(block_lengths))
}

pub(crate) fn gamma_unchecked(block_lengths: &[usize]) -> Permutation {
    let total: usize = block_lengths.iter().sum();
    let mut map = Vec::with_capacity(total);
    let mut start = 0;
    for &m in block_lengths {
        for k in 0..m {
            map.push(start + (k + 1) % m);
        }
        start += m;
    }
    Permutation { map }
}

/// Whether `⟨p, γ⟩` acts transitively on the points.
pub fn is_connected(p: &Permutation, gamma: &Permutation) -> Result<bool> {
    check_size(p.size(), gamma.size())?;
    let n = p.size();
    if n == 0 {
        return Ok(true);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(i) = stack.pop() {
        for j in [p.apply(i), gamma.apply(i)] {
            if !seen[j] {
                seen[j] = true;
                reached += 1;
                stack.push(j);
            }
        }
    }
    Ok(reached == n)
}

pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { map: current })
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.display_cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, v) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in S_{}", self.size())
    }
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermutationJson {
            n: self.size(),
            cycles: self.display_cycles(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PermutationJson::deserialize(d)?;
        Permutation::from_cycles(raw.n, &raw.cycles).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::{HashMap, VecDeque};

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        Permutation::from_images(v).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id3 = Permutation::identity(3);
        let c = cyc(3, "(1 2 3)");
        assert_eq!(id3.compose(&c).unwrap(), c);
        let t = cyc(2, "(1 2)");
        assert!(t.compose(&t).unwrap().is_identity());
        // (1 2)∘(2 3): 1 ↦ 1 ↦ 2, 2 ↦ 3 ↦ 3, 3 ↦ 2 ↦ 1
        let pq = cyc(3, "(1 2)").compose(&cyc(3, "(2 3)")).unwrap();
        assert_eq!(pq, cyc(3, "(1 2 3)"));
        assert!(Permutation::identity(2).compose(&id3).is_err());
    }

    #[test]
    fn compose_is_pointwise_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..10_000 {
            let n = 1 + trial % 9;
            let p = random_perm(n, &mut rng);
            let q = random_perm(n, &mut rng);
            let pq = p.compose(&q).unwrap();
            for i in 0..n {
                assert_eq!(pq.apply(i), p.apply(q.apply(i)));
            }
        }
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(
            Permutation::identity(3).cycles_one_based(),
            vec![vec![1], vec![2], vec![3]]
        );
        assert_eq!(
            cyc(5, "(4 5)(3 1 2)").cycles_one_based(),
            vec![vec![1, 2, 3], vec![4, 5]]
        );
        assert_eq!(cyc(5, "(1 2 3)(4 5)").to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }

    #[test]
    fn length_examples() {
        assert_eq!(Permutation::identity(6).length(), 0);
        assert_eq!(cyc(5, "(2 4)").length(), 1);
        assert_eq!(cyc(4, "(1 2 3 4)").length(), 3);
    }

    /// Minimal transposition count by breadth-first search over S_n.
    fn bfs_lengths(n: usize) -> HashMap<Permutation, usize> {
        let mut dist = HashMap::new();
        let id = Permutation::identity(n);
        dist.insert(id.clone(), 0);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            let d = dist[&p];
            for i in 0..n {
                for j in i + 1..n {
                    let mut m = p.images().to_vec();
                    m.swap(i, j);
                    let q = Permutation::from_images(m).unwrap();
                    if !dist.contains_key(&q) {
                        dist.insert(q.clone(), d + 1);
                        queue.push_back(q);
                    }
                }
            }
        }
        dist
    }

    #[test]
    fn length_matches_transposition_search() {
        for n in 1..=5 {
            let dist = bfs_lengths(n);
            assert_eq!(dist.len(), (1..=n).product::<usize>());
            for (p, d) in dist {
                assert_eq!(p.length(), d, "{p:?}");
            }
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&[3]).unwrap(), cyc(3, "(1 2 3)"));
        assert!(gamma(&[1, 1]).unwrap().is_identity());
        assert_eq!(gamma(&[2, 2]).unwrap(), cyc(4, "(1 2)(3 4)"));
        assert!(gamma(&[]).is_err());
    }

    #[test]
    fn connectivity_examples() {
        let g11 = gamma(&[1, 1]).unwrap();
        assert!(is_connected(&cyc(2, "(1 2)"), &g11).unwrap());
        assert!(!is_connected(&Permutation::identity(2), &g11).unwrap());
        let g22 = gamma(&[2, 2]).unwrap();
        assert!(is_connected(&cyc(4, "(1 3)(2 4)"), &g22).unwrap());
        assert!(!is_connected(&cyc(4, "(1 2)"), &g22).unwrap());
    }

    #[test]
    fn exhaustive_length_identity_small() {
        for n in 1..=6 {
            for p in Permutation::all(n) {
                assert_eq!(p.length() + p.num_cycles(), n);
                assert!(p.compose(&p.inverse()).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn all_enumerates_each_once() {
        let v: Vec<_> = Permutation::all(4).collect();
        assert_eq!(v.len(), 24);
        let mut dedup = v.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 24);
        assert_eq!(Permutation::all(0).count(), 1);
    }

    #[test]
    fn restrict_and_times() {
        let p = cyc(5, "(1 3)(2 5 4)");
        let r = p.restrict(&[1, 3, 4]).unwrap();
        assert_eq!(r, cyc(3, "(1 3 2)"));
        assert!(p.restrict(&[0, 1]).is_err());
        let t = cyc(2, "(1 2)").times(&cyc(3, "(1 2 3)"));
        assert_eq!(t, cyc(5, "(1 2)(3 4 5)"));
    }

    #[test]
    fn json_form() {
        let p = cyc(5, "(1 2 3)(4 5)");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":5,"cycles":[[1,2,3],[4,5]]}"#);
        let back: Permutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let id = serde_json::to_string(&Permutation::identity(3)).unwrap();
        assert_eq!(id, r#"{"n":3,"cycles":[]}"#);
    }

    fn perm_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_n)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn length_plus_cycles_is_size(p in perm_strategy(64)) {
            prop_assert_eq!(p.length() + p.num_cycles(), p.size());
        }

        #[test]
        fn cycles_round_trip(p in perm_strategy(40)) {
            let rebuilt = Permutation::from_cycles(p.size(), &p.cycles_one_based()).unwrap();
            prop_assert_eq!(&rebuilt, &p);
            let reparsed = Permutation::parse(&p.to_string(), p.size()).unwrap();
            prop_assert_eq!(reparsed, p);
        }

        #[test]
        fn length_is_subadditive(seed in any::<u64>(), n in 1usize..30) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_perm(n, &mut rng);
            let q = random_perm(n, &mut rng);
            prop_assert!(p.compose(&q).unwrap().length() <= p.length() + q.length());
        }
    }
}
