//! Trace words `Tr(D₁U^{ε₁} ⋯ D_mU^{ε_m})`, exact square matrices and
//! `Tr_π`.

use std::collections::HashMap;
use std::ops::Range;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};
use crate::noncrossing::EpsilonVector;
use crate::perm::{gamma_unchecked, Permutation};

/// One position of a trace word: the matrix `D_d` followed by `U^ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub d: usize,
    pub eps: i8,
}

impl Letter {
    pub fn new(d: usize, eps: i8) -> Result<Self> {
        if eps != 1 && eps != -1 {
            return Err(Error::invalid(format!("ε = {eps} is not ±1")));
        }
        Ok(Letter { d, eps })
    }
}

/// `k` cyclic trace words laid out on consecutive positions; the standard
/// cycle is `γ = γ_{m₁,…,m_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Letter>>", into = "Vec<Vec<Letter>>")]
pub struct TraceWordSpec {
    group_lengths: Vec<usize>,
    letters: Vec<Letter>,
}

impl TraceWordSpec {
    pub fn new(group_lengths: Vec<usize>, letters: Vec<Letter>) -> Result<Self> {
        if group_lengths.is_empty() || group_lengths.contains(&0) {
            return Err(Error::invalid("trace groups must be non-empty"));
        }
        check_size(group_lengths.iter().sum(), letters.len())?;
        for l in &letters {
            Letter::new(l.d, l.eps)?;
        }
        Ok(TraceWordSpec { group_lengths, letters })
    }

    /// One trace per inner list.
    pub fn from_groups(groups: Vec<Vec<Letter>>) -> Result<Self> {
        let lengths = groups.iter().map(Vec::len).collect();
        Self::new(lengths, groups.into_iter().flatten().collect())
    }

    /// A single trace `Tr(D_{d₁}U^{ε₁} ⋯)`.
    pub fn single(letters: &[(usize, i8)]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|&(d, e)| Letter::new(d, e))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vec![letters.len()], letters)
    }

    pub fn group_lengths(&self) -> &[usize] {
        &self.group_lengths
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn num_groups(&self) -> usize {
        self.group_lengths.len()
    }

    /// Position ranges of the groups.
    pub fn group_ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.group_lengths
            .iter()
            .map(|&m| {
                let r = start..start + m;
                start += m;
                r
            })
            .collect()
    }

    pub fn group(&self, i: usize) -> TraceWordSpec {
        let r = self.group_ranges()[i].clone();
        TraceWordSpec {
            group_lengths: vec![r.len()],
            letters: self.letters[r].to_vec(),
        }
    }

    pub fn gamma(&self) -> Permutation {
        gamma_unchecked(&self.group_lengths)
    }

    pub fn epsilon(&self) -> EpsilonVector {
        EpsilonVector::new(self.letters.iter().map(|l| l.eps).collect()).expect("validated signs")
    }

    pub fn is_balanced(&self) -> bool {
        self.letters.iter().map(|l| l.eps as i64).sum::<i64>() == 0
    }

    /// The `D`-index sitting at each position.
    pub fn d_indices(&self) -> Vec<usize> {
        self.letters.iter().map(|l| l.d).collect()
    }

    pub fn max_d_index(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.d).max()
    }

    /// Concatenation: the product of the traces of all parts.
    pub fn merge<'a>(parts: impl IntoIterator<Item = &'a TraceWordSpec>) -> Result<Self> {
        let mut lengths = Vec::new();
        let mut letters = Vec::new();
        for p in parts {
            lengths.extend_from_slice(&p.group_lengths);
            letters.extend_from_slice(&p.letters);
        }
        Self::new(lengths, letters)
    }
}

impl TryFrom<Vec<Vec<Letter>>> for TraceWordSpec {
    type Error = Error;
    fn try_from(g: Vec<Vec<Letter>>) -> Result<Self> {
        TraceWordSpec::from_groups(g)
    }
}

impl From<TraceWordSpec> for Vec<Vec<Letter>> {
    fn from(s: TraceWordSpec) -> Self {
        s.group_ranges().into_iter().map(|r| s.letters[r].to_vec()).collect()
    }
}

/// Minimal rotation of a cyclic word, used as a cache key for traces.
pub(crate) fn canonical_rotation<T: Ord + Clone>(w: &[T]) -> Vec<T> {
    (0..w.len())
        .map(|s| w[s..].iter().chain(&w[..s]).cloned().collect::<Vec<T>>())
        .min()
        .unwrap_or_default()
}

/// Square matrices that `Tr_π` can be evaluated on.
pub trait SquareMatrix: Clone {
    type Scalar: Clone + One + std::ops::Mul<Output = Self::Scalar>;
    fn dim(&self) -> usize;
    fn product(&self, other: &Self) -> Self;
    fn trace(&self) -> Self::Scalar;
}

impl SquareMatrix for DMatrix<Complex64> {
    type Scalar = Complex64;
    fn dim(&self) -> usize {
        self.nrows()
    }
    fn product(&self, other: &Self) -> Self {
        self * other
    }
    fn trace(&self) -> Complex64 {
        DMatrix::trace(self)
    }
}

/// Dense square matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::invalid("empty matrix"));
        }
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            check_size(n, r.len())?;
            data.extend(r);
        }
        Ok(ExactMatrix { n, data })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Parses entries like `"3"`, `"-1/2"`.
    pub fn from_str_rows(rows: &[Vec<String>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![BigRational::one(); n])
    }

    pub fn diagonal(d: &[BigRational]) -> Self {
        let n = d.len();
        let mut data = vec![BigRational::zero(); n * n];
        for (i, v) in d.iter().enumerate() {
            data[i * n + i] = v.clone();
        }
        ExactMatrix { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        use num_traits::ToPrimitive;
        DMatrix::from_fn(self.n, self.n, |i, j| {
            Complex64::new(self.get(i, j).to_f64().unwrap_or(f64::NAN), 0.0)
        })
    }
}

impl SquareMatrix for ExactMatrix {
    type Scalar = BigRational;
    fn dim(&self) -> usize {
        self.n
    }
    fn product(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![BigRational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        data[i * n + j] += a * b;
                    }
                }
            }
        }
        ExactMatrix { n, data }
    }
    fn trace(&self) -> BigRational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }
}

/// `"p"`, `"p/q"` or a JSON integer rendered as text.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::invalid(format!("bad rational {s:?}")))
}

/// `Tr_π(D₁,…,D_n) = ∏_{cycles (i₁ … i_r)} Tr(D_{i₁} ⋯ D_{i_r})`.
pub fn trace_pi<M: SquareMatrix>(p: &Permutation, mats: &[M]) -> Result<M::Scalar> {
    check_size(p.size(), mats.len())?;
    if let Some(first) = mats.first() {
        for m in mats {
            check_size(first.dim(), m.dim())?;
        }
    }
    Ok(p.cycles()
        .iter()
        .map(|c| word_trace(c.iter().map(|&i| &mats[i])))
        .fold(M::Scalar::one(), |a, b| a * b))
}

fn word_trace<'a, M: SquareMatrix + 'a>(mut word: impl Iterator<Item = &'a M>) -> M::Scalar {
    let first = word.next().expect("cycles are non-empty").clone();
    word.fold(first, |acc, m| acc.product(m)).trace()
}

/// `Tr_π` over positions whose matrices are `D[d_at[i]]`, memoising the
/// trace of each cyclic word of `D`-indices.
pub(crate) struct TraceCache<'a, M: SquareMatrix> {
    mats: &'a [M],
    cache: HashMap<Vec<usize>, M::Scalar>,
}

impl<'a, M: SquareMatrix> TraceCache<'a, M> {
    pub(crate) fn new(mats: &'a [M]) -> Self {
        TraceCache {
            mats,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn trace_pi(&mut self, p: &Permutation, d_at: &[usize]) -> M::Scalar {
        let mut acc = M::Scalar::one();
        for c in p.cycles() {
            let key = canonical_rotation(&c.iter().map(|&i| d_at[i]).collect::<Vec<_>>());
            let mats = self.mats;
            let v = self
                .cache
                .entry(key)
                .or_insert_with_key(|k| word_trace(k.iter().map(|&d| &mats[d])));
            acc = acc * v.clone();
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn spec_layout() {
        let s = TraceWordSpec::from_groups(vec![
            vec![Letter::new(0, 1).unwrap(), Letter::new(1, -1).unwrap()],
            vec![Letter::new(2, 1).unwrap()],
        ])
        .unwrap();
        assert_eq!(s.group_lengths(), &[2, 1]);
        assert_eq!(s.group_ranges(), vec![0..2, 2..3]);
        assert_eq!(s.gamma(), Permutation::parse("(1 2)(3)", 3).unwrap());
        assert_eq!(s.d_indices(), vec![0, 1, 2]);
        assert!(!s.is_balanced());
        assert_eq!(s.group(1).letters(), &[Letter { d: 2, eps: 1 }]);
        let merged = TraceWordSpec::merge([&s.group(0), &s.group(1)]).unwrap();
        assert_eq!(merged, s);
        assert!(Letter::new(0, 0).is_err());
        assert!(TraceWordSpec::new(vec![2], vec![]).is_err());
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"[[{"d":0,"eps":1},{"d":1,"eps":-1}],[{"d":2,"eps":1}]]"#);
        assert_eq!(serde_json::from_str::<TraceWordSpec>(&json).unwrap(), s);
    }

    #[test]
    fn rotation_key() {
        assert_eq!(canonical_rotation(&[2, 0, 1]), vec![0, 1, 2]);
        assert_eq!(canonical_rotation(&[1, 0, 1, 0]), vec![0, 1, 0, 1]);
    }

    #[test]
    fn trace_pi_examples() {
        let id = ExactMatrix::identity(4);
        let g = gamma_unchecked(&[3]);
        assert_eq!(trace_pi(&g, &[id.clone(), id.clone(), id.clone()]).unwrap(), q(4));
        let a = ExactMatrix::from_i64_rows(&[vec![1, 2, 0], vec![-1, 0, 2], vec![2, 1, 1]]).unwrap();
        let b = ExactMatrix::from_i64_rows(&[vec![0, 1, 1], vec![2, -2, 0], vec![1, 1, -1]]).unwrap();
        let c = ExactMatrix::from_i64_rows(&[vec![3, 0, 0], vec![1, 1, 0], vec![0, -1, 2]]).unwrap();
        let mats = [a.clone(), b.clone(), c.clone()];
        assert_eq!(
            trace_pi(&Permutation::identity(3), &mats).unwrap(),
            a.trace() * b.trace() * c.trace()
        );
        let p = Permutation::parse("(1 2)(3)", 3).unwrap();
        // direct entry sums for Tr(AB)
        let mut tab = q(0);
        for i in 0..3 {
            for j in 0..3 {
                tab += a.get(i, j) * b.get(j, i);
            }
        }
        assert_eq!(trace_pi(&p, &mats).unwrap(), tab * c.trace());
        assert!(trace_pi(&p, &[a.clone(), b]).is_err());
        assert!(trace_pi(&Permutation::identity(2), &[a, ExactMatrix::identity(2)]).is_err());
    }

    #[test]
    fn cached_trace_matches_direct() {
        let a = ExactMatrix::from_i64_rows(&[vec![1, 2], vec![0, -1]]).unwrap();
        let b = ExactMatrix::from_i64_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let mats = [a.clone(), b.clone()];
        let d_at = [0, 1, 1, 0];
        let positional: Vec<_> = d_at.iter().map(|&d| mats[d].clone()).collect();
        let mut cache = TraceCache::new(&mats);
        for p in Permutation::all(4) {
            assert_eq!(cache.trace_pi(&p, &d_at), trace_pi(&p, &positional).unwrap());
        }
    }

    #[test]
    fn complex_trace() {
        let m = ExactMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]])
            .unwrap()
            .to_complex();
        let v = trace_pi(&gamma_unchecked(&[2]), &[m.clone(), m]).unwrap();
        assert!((v - Complex64::new(29.0, 0.0)).norm() < 1e-12);
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(parse_rational("x").is_err());
    }
}
