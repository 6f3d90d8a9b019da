//! Second-order probability spaces `(A, φ₁, φ₂)` given by oracles on cyclic
//! words, and the extensions of `φ₁`, `φ₂` to permutations.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{check_size, Error, Result};
use crate::perm::Permutation;

use super::limit::ds_covariance;
use super::words::canonical_rotation;

/// Oracle access to `φ₁` on cyclic words and `φ₂` on ordered pairs of
/// cyclic words over an alphabet of letters.
///
/// Implementations are expected to be tracial in every argument, with
/// `φ₁(empty) = 1` and `φ₂` vanishing when either word is empty.
pub trait SecondOrderSpace: Sync {
    type Letter: Clone + Debug + Send + Sync;

    fn phi1(&self, word: &[Self::Letter]) -> Result<BigRational>;

    fn phi2(&self, left: &[Self::Letter], right: &[Self::Letter]) -> Result<BigRational>;
}

/// The space in which every letter is the unit: `φ₁ ≡ 1`, `φ₂ ≡ 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitSpace;

impl SecondOrderSpace for UnitSpace {
    type Letter = ();

    fn phi1(&self, _word: &[()]) -> Result<BigRational> {
        Ok(BigRational::one())
    }

    fn phi2(&self, _left: &[()], _right: &[()]) -> Result<BigRational> {
        Ok(BigRational::zero())
    }
}

/// Limit of a single Haar unitary `u`: the letter `k` stands for `u^k`.
///
/// `φ₁(u^k) = δ_{k,0}` and `φ₂(u^r, u^s) = |r| δ_{r,−s}` for non-zero `r, s`.
#[derive(Clone, Copy, Debug, Default)]
pub struct HaarUnitarySpace;

impl SecondOrderSpace for HaarUnitarySpace {
    type Letter = i64;

    fn phi1(&self, word: &[i64]) -> Result<BigRational> {
        Ok(if word.iter().sum::<i64>() == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        })
    }

    fn phi2(&self, left: &[i64], right: &[i64]) -> Result<BigRational> {
        let (r, s) = (left.iter().sum::<i64>(), right.iter().sum::<i64>());
        if r == 0 || s == 0 {
            return Ok(BigRational::zero());
        }
        Ok(BigRational::from_integer(ds_covariance(r, s)?.into()))
    }
}

/// A space given by finite tables of values on words.
///
/// Words are stored up to rotation and with unit letters removed. A query
/// for a word without an entry is an error rather than an implicit zero.
#[derive(Clone, Debug)]
pub struct TableSpace<L: Ord + Hash> {
    units: Vec<L>,
    phi1: HashMap<Vec<L>, BigRational>,
    phi2: HashMap<(Vec<L>, Vec<L>), BigRational>,
}

impl<L: Ord + Hash + Clone + Debug> TableSpace<L> {
    /// `units` lists letters that stand for the unit of the algebra.
    pub fn new(units: Vec<L>) -> Self {
        TableSpace {
            units,
            phi1: HashMap::new(),
            phi2: HashMap::new(),
        }
    }

    fn key(&self, w: &[L]) -> Vec<L> {
        let stripped: Vec<L> = w.iter().filter(|x| !self.units.contains(x)).cloned().collect();
        canonical_rotation(&stripped)
    }

    pub fn set_phi1(&mut self, word: &[L], value: BigRational) -> &mut Self {
        let k = self.key(word);
        self.phi1.insert(k, value);
        self
    }

    /// Sets `φ₂(left, right)`; `φ₂(right, left)` is not implied.
    pub fn set_phi2(&mut self, left: &[L], right: &[L], value: BigRational) -> &mut Self {
        let k = (self.key(left), self.key(right));
        self.phi2.insert(k, value);
        self
    }
}

impl<L: Ord + Hash + Clone + Debug + Send + Sync> SecondOrderSpace for TableSpace<L> {
    type Letter = L;

    fn phi1(&self, word: &[L]) -> Result<BigRational> {
        let k = self.key(word);
        if k.is_empty() {
            return Ok(BigRational::one());
        }
        self.phi1
            .get(&k)
            .cloned()
            .ok_or_else(|| Error::MissingTableEntry(format!("phi1{k:?}")))
    }

    fn phi2(&self, left: &[L], right: &[L]) -> Result<BigRational> {
        let k = (self.key(left), self.key(right));
        if k.0.is_empty() || k.1.is_empty() {
            return Ok(BigRational::zero());
        }
        self.phi2
            .get(&k)
            .cloned()
            .ok_or_else(|| Error::MissingTableEntry(format!("phi2({:?}, {:?})", k.0, k.1)))
    }
}

/// A space given by two closures.
pub struct FnSpace<L, F1, F2> {
    phi1: F1,
    phi2: F2,
    _letter: std::marker::PhantomData<fn() -> L>,
}

impl<L, F1, F2> FnSpace<L, F1, F2>
where
    F1: Fn(&[L]) -> Result<BigRational> + Sync,
    F2: Fn(&[L], &[L]) -> Result<BigRational> + Sync,
{
    pub fn new(phi1: F1, phi2: F2) -> Self {
        FnSpace {
            phi1,
            phi2,
            _letter: std::marker::PhantomData,
        }
    }
}

impl<L, F1, F2> SecondOrderSpace for FnSpace<L, F1, F2>
where
    L: Clone + Debug + Send + Sync,
    F1: Fn(&[L]) -> Result<BigRational> + Sync,
    F2: Fn(&[L], &[L]) -> Result<BigRational> + Sync,
{
    type Letter = L;

    fn phi1(&self, word: &[L]) -> Result<BigRational> {
        (self.phi1)(word)
    }

    fn phi2(&self, left: &[L], right: &[L]) -> Result<BigRational> {
        (self.phi2)(left, right)
    }
}

fn cycle_word<L: Clone>(cycle: &[usize], letters: &[L]) -> Vec<L> {
    cycle.iter().map(|&i| letters[i].clone()).collect()
}

/// `φ₁(p)[a₁, …, a_n] = ∏_{cycles (i₁ … i_r)} φ₁(a_{i₁} ⋯ a_{i_r})`.
pub fn phi1_extension<S: SecondOrderSpace + ?Sized>(
    p: &Permutation,
    letters: &[S::Letter],
    space: &S,
) -> Result<BigRational> {
    check_size(p.size(), letters.len())?;
    let mut acc = BigRational::one();
    for c in p.cycles() {
        acc *= space.phi1(&cycle_word(&c, letters))?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Which side the derivation rule splits first in
/// [`phi2_extension_recursive`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivationOrder {
    LeftFirst,
    RightFirst,
}

fn check_two_sided<L>(p1: &Permutation, p2: &Permutation, letters: &[L]) -> Result<()> {
    if p1.size() == 0 || p2.size() == 0 {
        return Err(Error::invalid("both sides need at least one point"));
    }
    check_size(p1.size() + p2.size(), letters.len())
}

/// `φ₂(p₁, p₂)[a₁, …, a_m; b₁, …, b_n]` with `p₁ ∈ S_m` acting on the first
/// `m` letters and `p₂ ∈ S_n` on the remaining `n`:
/// `Σ_{c ∈ p₁, c' ∈ p₂} φ₂(c, c') · ∏_{other cycles} φ₁`.
pub fn phi2_extension<S: SecondOrderSpace + ?Sized>(
    p1: &Permutation,
    p2: &Permutation,
    letters: &[S::Letter],
    space: &S,
) -> Result<BigRational> {
    check_two_sided(p1, p2, letters)?;
    let (a, b) = letters.split_at(p1.size());
    let left: Vec<Vec<S::Letter>> = p1.cycles().iter().map(|c| cycle_word(c, a)).collect();
    let right: Vec<Vec<S::Letter>> = p2.cycles().iter().map(|c| cycle_word(c, b)).collect();
    let f1l = left.iter().map(|w| space.phi1(w)).collect::<Result<Vec<_>>>()?;
    let f1r = right.iter().map(|w| space.phi1(w)).collect::<Result<Vec<_>>>()?;
    let mut total = BigRational::zero();
    for (i, wl) in left.iter().enumerate() {
        let rest_l: BigRational = f1l
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, v)| v.clone())
            .product();
        if rest_l.is_zero() {
            continue;
        }
        for (j, wr) in right.iter().enumerate() {
            let rest_r: BigRational = f1r
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, v)| v.clone())
                .product();
            if rest_r.is_zero() {
                continue;
            }
            total += space.phi2(wl, wr)? * &rest_l * rest_r;
        }
    }
    Ok(total)
}

/// The same value computed by literally applying the left derivation rule
/// `φ₂(π₁×π₂, π₃) = φ₂(π₁,π₃)φ₁(π₂) + φ₂(π₂,π₃)φ₁(π₁)` and the right rule
/// `φ₂(π₁, π₂×π₃) = φ₂(π₁,π₂)φ₁(π₃) + φ₂(π₁,π₃)φ₁(π₂)`, peeling one cycle
/// at a time from the side selected by `order` until both sides are cycles.
pub fn phi2_extension_recursive<S: SecondOrderSpace + ?Sized>(
    p1: &Permutation,
    p2: &Permutation,
    letters: &[S::Letter],
    space: &S,
    order: DerivationOrder,
) -> Result<BigRational> {
    check_two_sided(p1, p2, letters)?;
    let (a, b) = letters.split_at(p1.size());
    let left: Vec<Vec<S::Letter>> = p1.cycles().iter().map(|c| cycle_word(c, a)).collect();
    let right: Vec<Vec<S::Letter>> = p2.cycles().iter().map(|c| cycle_word(c, b)).collect();
    derive(&left, &right, space, order)
}

fn phi1_product<S: SecondOrderSpace + ?Sized>(words: &[Vec<S::Letter>], space: &S) -> Result<BigRational> {
    let mut acc = BigRational::one();
    for w in words {
        acc *= space.phi1(w)?;
    }
    Ok(acc)
}

fn derive<S: SecondOrderSpace + ?Sized>(
    left: &[Vec<S::Letter>],
    right: &[Vec<S::Letter>],
    space: &S,
    order: DerivationOrder,
) -> Result<BigRational> {
    let split_left = match (left.len() > 1, right.len() > 1) {
        (false, false) => return space.phi2(&left[0], &right[0]),
        (true, false) => true,
        (false, true) => false,
        (true, true) => order == DerivationOrder::LeftFirst,
    };
    if split_left {
        let (first, rest) = left.split_at(1);
        Ok(derive(first, right, space, order)? * phi1_product(rest, space)?
            + derive(rest, right, space, order)? * phi1_product(first, space)?)
    } else {
        let (first, rest) = right.split_at(1);
        Ok(derive(left, first, space, order)? * phi1_product(rest, space)?
            + derive(left, rest, space, order)? * phi1_product(first, space)?)
    }
}
