//! Non-crossing and annular non-crossing permutations, and the
//! ε-alternating permutations `S^{(ε)}` that carry the `U` / `U*` pattern of
//! a trace word.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};
use crate::perm::{gamma_unchecked, is_connected, Permutation};
use crate::Limits;

/// Whether `#(p) + #(γ_n p⁻¹) = n + 1`.
pub fn is_noncrossing(p: &Permutation) -> bool {
    let n = p.size();
    if n == 0 {
        return true;
    }
    let g = gamma_unchecked(&[n]);
    p.num_cycles() + g.mul(&p.inverse()).num_cycles() == n + 1
}

/// Kreweras complement `p⁻¹ γ_n`. Fails for crossing input.
pub fn kreweras(p: &Permutation) -> Result<Permutation> {
    if !is_noncrossing(p) {
        return Err(Error::invalid(format!("{p} is not non-crossing")));
    }
    Ok(complement(p))
}

/// `p⁻¹ γ_n` without the non-crossing check.
pub fn complement(p: &Permutation) -> Permutation {
    let g = gamma_unchecked(&[p.size().max(1)]);
    if p.size() == 0 {
        return p.clone();
    }
    p.inverse().mul(&g)
}

/// Whether `p ∈ S_NC(m, n)`: connected with respect to `γ_{m,n}` and
/// `|p| + |γ_{m,n} p⁻¹| = m + n`.
pub fn is_annular_noncrossing(p: &Permutation, m: usize, n: usize) -> Result<bool> {
    check_size(m + n, p.size())?;
    if m == 0 || n == 0 {
        return Err(Error::invalid("annular circles must be non-empty"));
    }
    let g = gamma_unchecked(&[m, n]);
    if !is_connected(p, &g)? {
        return Ok(false);
    }
    Ok(p.length() + g.mul(&p.inverse()).length() == m + n)
}

/// `NC(n)`, by filtering `S_n`.
pub fn enumerate_nc(n: usize, limits: &Limits) -> Result<impl Iterator<Item = Permutation>> {
    if n > limits.enumerate_n {
        return Err(Error::cap("NC(n) size", n, limits.enumerate_n));
    }
    Ok(Permutation::all(n).filter(is_noncrossing))
}

/// `S_NC(m, n)`, by filtering `S_{m+n}`.
pub fn enumerate_snc(m: usize, n: usize, limits: &Limits) -> Result<impl Iterator<Item = Permutation>> {
    if m + n > limits.enumerate_n {
        return Err(Error::cap("S_NC(m, n) size", m + n, limits.enumerate_n));
    }
    if m == 0 || n == 0 {
        return Err(Error::invalid("annular circles must be non-empty"));
    }
    Ok(Permutation::all(m + n).filter(move |p| is_annular_noncrossing(p, m, n).unwrap_or(false)))
}

/// A sign pattern `ε : [k] → {−1, +1}`; `+1` marks a `U`, `−1` a `U*`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct EpsilonVector {
    signs: Vec<i8>,
}

impl EpsilonVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(s) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::invalid(format!("sign {s} is not ±1")));
        }
        Ok(EpsilonVector { signs })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sum(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.sum() == 0
    }

    /// `p₁ < ⋯ < p_l`, the 0-based positions carrying `+1`.
    pub fn positives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.signs[i] == 1).collect()
    }

    /// `q₁ < ⋯ < q_l`, the 0-based positions carrying `−1`.
    pub fn negatives(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.signs[i] == -1).collect()
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> EpsilonVector {
        EpsilonVector {
            signs: self.signs[range].to_vec(),
        }
    }

    /// `l` for a balanced vector of length `2l`.
    fn half(&self) -> Result<usize> {
        if !self.is_balanced() {
            return Err(Error::invalid("ε is not balanced"));
        }
        Ok(self.len() / 2)
    }
}

impl TryFrom<Vec<i8>> for EpsilonVector {
    type Error = Error;
    fn try_from(v: Vec<i8>) -> Result<Self> {
        EpsilonVector::new(v)
    }
}

impl From<EpsilonVector> for Vec<i8> {
    fn from(e: EpsilonVector) -> Self {
        e.signs
    }
}

impl FromStr for EpsilonVector {
    type Err = Error;

    /// Parses strings like `"+-+-"` or `"1,-1"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.chars().all(|c| c == '+' || c == '-') {
            return EpsilonVector::new(s.chars().map(|c| if c == '+' { 1 } else { -1 }).collect());
        }
        let signs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i8>()
                    .map_err(|_| Error::invalid(format!("bad sign {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        EpsilonVector::new(signs)
    }
}

impl fmt::Display for EpsilonVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            write!(f, "{}", if s == 1 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for EpsilonVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ε{self}")
    }
}

/// Whether `p` maps the `+1` positions onto the `−1` positions and back.
pub fn in_s_epsilon(p: &Permutation, eps: &EpsilonVector) -> bool {
    p.size() == eps.len() && eps.is_balanced() && (0..p.size()).all(|i| eps.signs[p.apply(i)] == -eps.signs[i])
}

/// `π_{α,β}` with `π(p_{α(k)}) = q_k` and `π(q_k) = p_{β(k)}`.
pub fn from_alpha_beta(alpha: &Permutation, beta: &Permutation, eps: &EpsilonVector) -> Result<Permutation> {
    let l = eps.half()?;
    check_size(l, alpha.size())?;
    check_size(l, beta.size())?;
    let (pos, neg) = (eps.positives(), eps.negatives());
    Ok(build_from_alpha_beta(alpha, beta, &pos, &neg))
}

fn build_from_alpha_beta(alpha: &Permutation, beta: &Permutation, pos: &[usize], neg: &[usize]) -> Permutation {
    let mut map = vec![0; pos.len() + neg.len()];
    for k in 0..pos.len() {
        map[pos[alpha.apply(k)]] = neg[k];
        map[neg[k]] = pos[beta.apply(k)];
    }
    Permutation::from_images(map).expect("α, β bijections give a bijection")
}

/// Inverse of [`from_alpha_beta`].
pub fn to_alpha_beta(p: &Permutation, eps: &EpsilonVector) -> Result<(Permutation, Permutation)> {
    if !in_s_epsilon(p, eps) {
        return Err(Error::invalid(format!("{p} is not in S^(ε) for {eps}")));
    }
    let (pos, neg) = (eps.positives(), eps.negatives());
    let l = pos.len();
    let mut rank = vec![0; p.size()];
    for (k, &i) in pos.iter().enumerate() {
        rank[i] = k;
    }
    for (k, &i) in neg.iter().enumerate() {
        rank[i] = k;
    }
    // π(p_j) = q_{α⁻¹(j)}
    let mut alpha = vec![0; l];
    let mut beta = vec![0; l];
    for j in 0..l {
        alpha[rank[p.apply(pos[j])]] = j;
    }
    for k in 0..l {
        beta[k] = rank[p.apply(neg[k])];
    }
    Ok((Permutation::from_images(alpha)?, Permutation::from_images(beta)?))
}

/// `π̃ ∈ S_l` defined by `π²(p_k) = p_{π̃(k)}`.
pub fn tilde(p: &Permutation, eps: &EpsilonVector) -> Result<Permutation> {
    if !in_s_epsilon(p, eps) {
        return Err(Error::invalid(format!("{p} is not in S^(ε) for {eps}")));
    }
    Ok(tilde_unchecked(p, &eps.positives()))
}

pub(crate) fn tilde_unchecked(p: &Permutation, pos: &[usize]) -> Permutation {
    let mut rank = vec![usize::MAX; p.size()];
    for (k, &i) in pos.iter().enumerate() {
        rank[i] = k;
    }
    let map = pos.iter().map(|&i| rank[p.apply(p.apply(i))]).collect();
    Permutation::from_images(map).expect("π² permutes the positive positions")
}

/// Streams `S^{(ε)}` through the `(α, β)` parametrisation; empty when `ε`
/// is unbalanced.
pub fn s_epsilon(eps: &EpsilonVector, limits: &Limits) -> Result<Box<dyn Iterator<Item = Permutation> + Send>> {
    if !eps.is_balanced() {
        return Ok(Box::new(std::iter::empty()));
    }
    let l = eps.len() / 2;
    if l > limits.epsilon_l {
        return Err(Error::cap("S^(ε) half-length", l, limits.epsilon_l));
    }
    let pos = eps.positives();
    let neg = eps.negatives();
    Ok(Box::new(Permutation::all(l).flat_map(move |alpha| {
        let (pos, neg) = (pos.clone(), neg.clone());
        Permutation::all(l).map(move |beta| build_from_alpha_beta(&alpha, &beta, &pos, &neg))
    })))
}

/// `NC^{(ε)}(m) = S^{(ε)}_m ∩ NC(m)`.
pub fn enumerate_nc_eps(eps: &EpsilonVector, limits: &Limits) -> Result<impl Iterator<Item = Permutation>> {
    Ok(s_epsilon(eps, limits)?.filter(is_noncrossing))
}

/// `S^{(ε)}_NC(m, n) = S^{(ε)}_{m+n} ∩ S_NC(m, n)`.
pub fn enumerate_snc_eps(
    m: usize,
    n: usize,
    eps: &EpsilonVector,
    limits: &Limits,
) -> Result<impl Iterator<Item = Permutation>> {
    check_size(m + n, eps.len())?;
    if m == 0 || n == 0 {
        return Err(Error::invalid("annular circles must be non-empty"));
    }
    Ok(s_epsilon(eps, limits)?.filter(move |p| is_annular_noncrossing(p, m, n).unwrap_or(false)))
}
