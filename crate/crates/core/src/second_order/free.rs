//! Covariances prescribed by second-order freeness.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cyclically reduced word `U_{i(1)}^{k(1)} ⋯ U_{i(n)}^{k(n)}` in
/// independent Haar unitaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, i64)>", into = "Vec<(usize, i64)>")]
pub struct ReducedWord {
    letters: Vec<(usize, i64)>,
}

impl ReducedWord {
    /// Letters are `(matrix id, exponent)`; exponents are non-zero and
    /// neighbouring ids differ, including across the wrap-around.
    pub fn new(letters: Vec<(usize, i64)>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::invalid("reduced word must be non-empty"));
        }
        if letters.iter().any(|&(_, k)| k == 0) {
            return Err(Error::invalid("exponents must be non-zero"));
        }
        let n = letters.len();
        if n > 1 && (0..n).any(|s| letters[s].0 == letters[(s + 1) % n].0) {
            return Err(Error::invalid("word is not cyclically reduced"));
        }
        Ok(ReducedWord { letters })
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word of `U^{-1}` letters read backwards, i.e. the word of the
    /// adjoint.
    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            letters: self.letters.iter().rev().map(|&(i, k)| (i, -k)).collect(),
        }
    }
}

impl TryFrom<Vec<(usize, i64)>> for ReducedWord {
    type Error = Error;

    fn try_from(v: Vec<(usize, i64)>) -> Result<Self> {
        ReducedWord::new(v)
    }
}

impl From<ReducedWord> for Vec<(usize, i64)> {
    fn from(w: ReducedWord) -> Self {
        w.letters
    }
}

/// `lim_N k₂(Tr(w₁), Tr(w₂))` for independent Haar unitaries: the number of
/// rotations `r` with `i(s) = j(s+r)` and `k(s) = −l(s+r)` for all `s`, where
/// `(j, l)` is `w₂` read from right to left. Zero when the lengths differ.
pub fn reduced_word_covariance(w1: &ReducedWord, w2: &ReducedWord) -> usize {
    let n = w1.len();
    if n != w2.len() {
        return 0;
    }
    let rev: Vec<(usize, i64)> = w2.letters.iter().rev().copied().collect();
    (0..n)
        .filter(|&r| {
            (0..n).all(|s| {
                let (i, k) = w1.letters[s];
                let (j, l) = rev[(s + r) % n];
                i == j && k == -l
            })
        })
        .count()
}

/// An element of the subalgebra labelled `tag`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tagged<T> {
    pub tag: usize,
    pub elem: T,
}

impl<T> Tagged<T> {
    pub fn new(tag: usize, elem: T) -> Self {
        Tagged { tag, elem }
    }
}

fn check_alternating<T>(w: &[Tagged<T>], side: &str) -> Result<()> {
    let n = w.len();
    if n == 0 {
        return Err(Error::invalid(format!("{side} word is empty")));
    }
    if n > 1 && (0..n).any(|k| w[k].tag == w[(k + 1) % n].tag) {
        return Err(Error::invalid(format!("{side} word is not cyclically alternating")));
    }
    Ok(())
}

/// `φ₂(a₁⋯a_n, b_m⋯b_1)` for centered, cyclically alternating tuples from
/// subalgebras that are free of second order. `b` is given as
/// `[b₁, …, b_m]`, so the right-hand word is `b` read backwards.
///
/// `phi1(x, y)` must return `φ₁(xy)` for elements of the same subalgebra.
/// Centering is the caller's responsibility. For `n = m = 1` with the same
/// tag the value is not determined by freeness and an error is returned.
pub fn second_order_free_covariance<T, F>(a: &[Tagged<T>], b: &[Tagged<T>], mut phi1: F) -> Result<BigRational>
where
    F: FnMut(&T, &T) -> Result<BigRational>,
{
    check_alternating(a, "left")?;
    check_alternating(b, "right")?;
    let n = a.len();
    if n != b.len() {
        return Ok(BigRational::zero());
    }
    if n == 1 {
        if a[0].tag != b[0].tag {
            return Ok(BigRational::zero());
        }
        return Err(Error::invalid(
            "covariance of two elements of one subalgebra is not determined by freeness",
        ));
    }
    let mut total = BigRational::zero();
    for k in 0..n {
        let mut prod = BigRational::one();
        for (i, ai) in a.iter().enumerate() {
            let bj = &b[(i + k) % n];
            if ai.tag != bj.tag {
                prod = BigRational::zero();
                break;
            }
            prod *= phi1(&ai.elem, &bj.elem)?;
            if prod.is_zero() {
                break;
            }
        }
        total += prod;
    }
    Ok(total)
}
