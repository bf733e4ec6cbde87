//! Congruence diagonalization over fields with an involution.
//!
//! The same routine serves symmetric forms over Q (trivial involution) and
//! hermitian forms over totally real or CM fields. Forms are linear in the
//! first argument and conjugate-linear in the second.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Scalars of a field carrying an involution `x ↦ x̄`.
pub trait StarField: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    /// An element with `θ̄ = -θ`, if the involution is nontrivial.
    fn skew_unit(&self) -> Option<Self>;
}

impl StarField for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn skew_unit(&self) -> Option<Self> {
        None
    }
}

/// Result of diagonalizing a Gram matrix `G` by congruence.
///
/// Row `k` of `basis` holds the coordinates of the new basis vector `u_k` in
/// the old basis, so `Φ(u_k, u_l) = δ_kl · diagonal[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Congruence<T> {
    pub diagonal: Vec<T>,
    pub basis: Vec<Vec<T>>,
}

struct Work<T> {
    gram: Vec<Vec<T>>,
    basis: Vec<Vec<T>>,
}

impl<T: StarField> Work<T> {
    fn swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.gram.swap(a, b);
        for row in self.gram.iter_mut() {
            row.swap(a, b);
        }
        self.basis.swap(a, b);
    }

    /// `u_i ← u_i + c·u_j`.
    fn add_multiple(&mut self, i: usize, j: usize, c: &T) {
        let n = self.gram.len();
        let row_j = self.gram[j].clone();
        for (l, g) in row_j.iter().enumerate() {
            self.gram[i][l] = self.gram[i][l].plus(&c.times(g));
        }
        let cbar = c.conj();
        for l in 0..n {
            let g = self.gram[l][j].clone();
            self.gram[l][i] = self.gram[l][i].plus(&cbar.times(&g));
        }
        let pj = self.basis[j].clone();
        for (l, b) in pj.iter().enumerate() {
            self.basis[i][l] = self.basis[i][l].plus(&c.times(b));
        }
    }
}

/// Diagonalizes a hermitian (or symmetric) Gram matrix by congruence.
///
/// Pivots are taken from the diagonal when possible. When the remaining
/// block has a zero diagonal, the first nonzero entry `G[i][j]` (smallest
/// `i`, then smallest `j`) is used through `u_i ← u_i + u_j`, or through
/// `u_i ← u_i + θ·u_j` when that vector is isotropic.
pub fn diagonalize_congruence<T: StarField>(gram: &[Vec<T>]) -> Result<Congruence<T>> {
    let n = gram.len();
    if n == 0 {
        return Ok(Congruence { diagonal: Vec::new(), basis: Vec::new() });
    }
    if gram.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare);
    }
    let zero = gram[0][0].zero_like();
    let one = gram[0][0].one_like();
    let basis = (0..n)
        .map(|i| (0..n).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
        .collect();
    let mut w = Work { gram: gram.to_vec(), basis };

    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| !w.gram[i][i].is_zero_elem()) {
            w.swap(i, k);
        } else {
            let (i, j) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !w.gram[i][j].is_zero_elem())
                .ok_or(Error::Degenerate)?;
            let gij = w.gram[i][j].clone();
            if !gij.plus(&gij.conj()).is_zero_elem() {
                w.add_multiple(i, j, &one);
            } else {
                let theta = gij.skew_unit().ok_or_else(|| {
                    Error::Internal("isotropic pivot with a trivial involution".into())
                })?;
                w.add_multiple(i, j, &theta);
            }
            if w.gram[i][i].is_zero_elem() {
                return Err(Error::Internal("pivot creation produced a zero pivot".into()));
            }
            w.swap(i, k);
        }
        let pivot_inv = w.gram[k][k]
            .inverse()
            .ok_or_else(|| Error::Internal("zero pivot".into()))?;
        for l in k + 1..n {
            if w.gram[l][k].is_zero_elem() {
                continue;
            }
            let c = w.gram[l][k].times(&pivot_inv).negated();
            w.add_multiple(l, k, &c);
        }
    }
    let diagonal = (0..n).map(|k| w.gram[k][k].clone()).collect();
    Ok(Congruence { diagonal, basis: w.basis })
}

/// Determinant by Gaussian elimination over Q.
pub fn determinant(m: &[Vec<Rational>]) -> Result<Rational> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare);
    }
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    Ok(det)
}

/// `Tᵀ · G · T` over Q.
pub fn congruent_transform(gram: &[Vec<Rational>], t: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = gram.len();
    let k = t.first().map_or(0, Vec::len);
    let mut gt = vec![vec![Rational::zero(); k]; n];
    for i in 0..n {
        for j in 0..k {
            gt[i][j] = (0..n).map(|l| &gram[i][l] * &t[l][j]).sum();
        }
    }
    (0..k)
        .map(|i| (0..k).map(|j| (0..n).map(|l| &t[l][i] * &gt[l][j]).sum()).collect())
        .collect()
}
