//! Rational quadratic spaces and their local invariants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    factorize, hilbert_local, hilbert_symbol, is_square_local, primes_of, rat, square_class, LocalDatum, Place,
    Prime, Rational, SquareClass,
};
use crate::error::{Error, Result};
use crate::linalg::{congruent_transform, diagonalize_congruence};

/// Finite-place Hasse invariants; places not stored are `+1`.
#[derive(Debug, Clone, Default)]
pub struct HasseProfile {
    values: BTreeMap<Prime, i8>,
}

impl HasseProfile {
    pub fn new(values: BTreeMap<Prime, i8>) -> Self {
        HasseProfile { values }
    }

    pub fn trivial() -> Self {
        HasseProfile::default()
    }

    /// Profile that is `-1` exactly at the given primes.
    pub fn minus_at(primes: impl IntoIterator<Item = Prime>) -> Self {
        HasseProfile { values: primes.into_iter().map(|p| (p, -1)).collect() }
    }

    pub fn get(&self, p: &Prime) -> i8 {
        self.values.get(p).copied().unwrap_or(1)
    }

    pub fn set(&mut self, p: Prime, value: i8) {
        self.values.insert(p, value);
    }

    /// Stored entries, including explicit `+1`s.
    pub fn iter(&self) -> impl Iterator<Item = (&Prime, i8)> {
        self.values.iter().map(|(p, v)| (p, *v))
    }

    pub fn minus_primes(&self) -> BTreeSet<Prime> {
        self.values.iter().filter(|(_, v)| **v == -1).map(|(p, _)| p.clone()).collect()
    }
}

impl PartialEq for HasseProfile {
    fn eq(&self, other: &Self) -> bool {
        self.minus_primes() == other.minus_primes()
    }
}

impl Eq for HasseProfile {}

impl fmt::Display for HasseProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(p, v)| format!("{p}: {v:+}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Nondegenerate symmetric bilinear space over Q, with invariants computed at construction.
#[derive(Debug, Clone)]
pub struct QuadraticSpace {
    gram: Vec<Vec<Rational>>,
    diagonal: Vec<Rational>,
    det: Rational,
    signature: (usize, usize),
    disc: SquareClass,
    primes: BTreeSet<Prime>,
    hasse: HasseProfile,
}

impl PartialEq for QuadraticSpace {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl QuadraticSpace {
    pub fn new(gram: Vec<Vec<Rational>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        let diagonal = diagonalize_congruence(&gram)?.diagonal;
        Ok(QuadraticSpace::with_diagonal(gram, diagonal))
    }

    pub fn from_diagonal(entries: Vec<Rational>) -> Result<Self> {
        if entries.iter().any(Zero::is_zero) {
            return Err(Error::Degenerate);
        }
        let n = entries.len();
        let mut gram = vec![vec![Rational::zero(); n]; n];
        for (i, d) in entries.iter().enumerate() {
            gram[i][i] = d.clone();
        }
        Ok(QuadraticSpace::with_diagonal(gram, entries))
    }

    pub fn from_integer_diagonal(entries: &[i64]) -> Result<Self> {
        QuadraticSpace::from_diagonal(entries.iter().map(|&d| rat(d)).collect())
    }

    pub fn from_integer_gram(rows: &[&[i64]]) -> Result<Self> {
        QuadraticSpace::new(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// The zero-dimensional space.
    pub fn empty() -> Self {
        QuadraticSpace::with_diagonal(Vec::new(), Vec::new())
    }

    fn with_diagonal(gram: Vec<Vec<Rational>>, diagonal: Vec<Rational>) -> Self {
        let det: Rational = diagonal.iter().fold(Rational::one(), |acc, d| acc * d);
        let neg = diagonal.iter().filter(|d| d.is_negative()).count();
        let signature = (diagonal.len() - neg, neg);
        let disc = square_class(&det).expect("diagonal entries are nonzero");
        let mut primes = primes_of(&det);
        primes.insert(Prime::two());
        let mut denoms = BTreeSet::new();
        for row in &gram {
            for g in row {
                if !g.denom().is_one() {
                    denoms.insert(g.denom().clone());
                }
            }
        }
        for d in denoms {
            let (_, mag) = d.into_parts();
            primes.extend(factorize(&mag).into_iter().map(|(p, _)| p));
        }
        let hasse = HasseProfile::new(primes.iter().map(|p| (p.clone(), hasse_of_diagonal(&diagonal, p))).collect());
        QuadraticSpace { gram, diagonal, det, signature, disc, primes, hasse }
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn diagonal(&self) -> &[Rational] {
        &self.diagonal
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn det(&self) -> &Rational {
        &self.det
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn disc(&self) -> &SquareClass {
        &self.disc
    }

    /// Hasse invariants over [`QuadraticSpace::primes`].
    pub fn hasse(&self) -> &HasseProfile {
        &self.hasse
    }

    /// `{2}` together with the primes where the form is not unimodular.
    pub fn primes(&self) -> &BTreeSet<Prime> {
        &self.primes
    }

    /// `ε_p = ∏_{i<j} (d_i, d_j)_p` on the diagonalization.
    pub fn hasse_invariant(&self, p: &Prime) -> i8 {
        match self.hasse.values.get(p) {
            Some(v) => *v,
            None => hasse_of_diagonal(&self.diagonal, p),
        }
    }

    /// `ε_∞ = (-1)^{n₋(n₋-1)/2}`.
    pub fn hasse_infinity(&self) -> i8 {
        let n = self.signature.1;
        if (n * n.saturating_sub(1) / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn direct_sum(&self, other: &QuadraticSpace) -> QuadraticSpace {
        let (a, b) = (self.rank(), other.rank());
        let mut gram = vec![vec![Rational::zero(); a + b]; a + b];
        for i in 0..a {
            gram[i][..a].clone_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            gram[a + i][a..].clone_from_slice(&other.gram[i]);
        }
        let diagonal = self.diagonal.iter().chain(&other.diagonal).cloned().collect();
        QuadraticSpace::with_diagonal(gram, diagonal)
    }

    pub fn direct_sum_all<'a>(spaces: impl IntoIterator<Item = &'a QuadraticSpace>) -> QuadraticSpace {
        spaces.into_iter().fold(QuadraticSpace::empty(), |acc, s| acc.direct_sum(s))
    }

    /// `W(c)`: every Gram entry multiplied by `c`.
    pub fn scale(&self, c: &Rational) -> Result<QuadraticSpace> {
        if c.is_zero() {
            return Err(Error::Zero("scaling factor"));
        }
        let gram = self.gram.iter().map(|row| row.iter().map(|g| g * c).collect()).collect();
        let diagonal = self.diagonal.iter().map(|d| d * c).collect();
        Ok(QuadraticSpace::with_diagonal(gram, diagonal))
    }

    /// The space with Gram `TᵀGT`; fails if `T` is singular.
    pub fn congruent(&self, t: &[Vec<Rational>]) -> Result<QuadraticSpace> {
        QuadraticSpace::new(congruent_transform(&self.gram, t))
    }
}

fn hasse_of_diagonal(diagonal: &[Rational], p: &Prime) -> i8 {
    let data: Vec<LocalDatum> =
        diagonal.iter().map(|d| LocalDatum::of_rational(d, p).expect("nonzero diagonal")).collect();
    let two = p.is_two();
    let three_mod_four = !two && (p.value() % 4u32) == 3u32.into();
    let mut eps = 1i8;
    for i in 0..data.len() {
        for j in i + 1..data.len() {
            eps *= hilbert_local(data[i], data[j], two, three_mod_four);
        }
    }
    eps
}

/// Congruence diagonalization of a symmetric nondegenerate Gram matrix.
pub fn diagonalize(gram: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    Ok(QuadraticSpace::new(gram.to_vec())?.diagonal)
}

/// Union of [`QuadraticSpace::primes`]; off this set every local condition is trivial.
pub fn relevant_primes(spaces: &[&QuadraticSpace]) -> BTreeSet<Prime> {
    let mut out = BTreeSet::from([Prime::two()]);
    for s in spaces {
        out.extend(s.primes.iter().cloned());
    }
    out
}

fn square_at(c: &SquareClass, p: &Prime) -> bool {
    is_square_local(&c.to_rational(), &Place::Finite(p.clone())).expect("square classes are nonzero")
}

fn symbol(a: &SquareClass, b: &SquareClass, place: &Place) -> i8 {
    hilbert_symbol(&a.to_rational(), &b.to_rational(), place).expect("square classes are nonzero")
}

/// Whether some rational quadratic space has exactly these invariants.
pub fn invariants_realizable(
    rank: usize,
    signature: (usize, usize),
    disc: &SquareClass,
    hasse: &HasseProfile,
) -> Result<bool> {
    let (_, neg) = signature;
    if signature.0 + signature.1 != rank {
        return Err(Error::InconsistentSignature);
    }
    let minus = hasse.minus_primes();
    if rank == 0 {
        return Ok(*disc == SquareClass::one() && minus.is_empty());
    }
    if disc.is_negative() != (neg % 2 == 1) {
        return Ok(false);
    }
    let eps_inf_minus = (neg * neg.saturating_sub(1) / 2) % 2 == 1;
    if (minus.len() + usize::from(eps_inf_minus)) % 2 == 1 {
        return Ok(false);
    }
    match rank {
        1 => Ok(minus.is_empty()),
        2 => {
            let minus_disc = disc.neg();
            Ok(minus.iter().all(|p| !square_at(&minus_disc, p)))
        }
        _ => Ok(true),
    }
}

/// Local conditions for an embedding `M ↪ N` of rational quadratic spaces.
pub fn witt_embeds(m: &QuadraticSpace, n: &QuadraticSpace) -> bool {
    let (mr, nr) = (m.rank(), n.rank());
    if mr > nr {
        return false;
    }
    let (mp, mn) = m.signature();
    let (np, nn) = n.signature();
    if np < mp || nn < mn {
        return false;
    }
    let dm = m.disc();
    let minus_dn = n.disc().neg();
    let expected_inf = if mn * (nn + 1) % 2 == 0 { 1 } else { -1 };
    if symbol(dm, &minus_dn, &Place::Infinity) != expected_inf {
        return false;
    }
    let primes = relevant_primes(&[m, n]);
    match nr - mr {
        0 => dm == n.disc() && primes.iter().all(|p| m.hasse_invariant(p) == n.hasse_invariant(p)),
        1 => primes.iter().all(|p| {
            n.hasse_invariant(p) * m.hasse_invariant(p) == symbol(dm, &minus_dn, &Place::Finite(p.clone()))
        }),
        2 => {
            let test = dm.mul(&minus_dn);
            let minus_one = SquareClass::one().neg();
            primes.iter().filter(|p| square_at(&test, p)).all(|p| {
                n.hasse_invariant(p) * m.hasse_invariant(p) == symbol(dm, &minus_one, &Place::Finite(p.clone()))
            })
        }
        _ => true,
    }
}

/// Embedding test into `Λ⊗Q` for `M` of signature `(2, t)`.
pub fn embeds_into_lambda_q(m: &QuadraticSpace) -> Result<bool> {
    let (pos, t) = m.signature();
    if pos != 2 {
        return Err(Error::SignatureShape(pos, t));
    }
    if t > 19 {
        return Ok(false);
    }
    if t < 18 {
        return Ok(true);
    }
    let primes = relevant_primes(&[m]);
    Ok(primes
        .iter()
        .filter(|p| t == 19 || square_at(m.disc(), p))
        .all(|p| m.hasse_invariant(p) == p.parity_sign()))
}

/// Bourbaki's E8 Cartan matrix, negated.
pub fn e8_minus() -> QuadraticSpace {
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut g = vec![vec![0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for (a, b) in edges {
        g[a][b] = 1;
        g[b][a] = 1;
    }
    let rows: Vec<&[i64]> = g.iter().map(Vec::as_slice).collect();
    QuadraticSpace::from_integer_gram(&rows).expect("E8 is nondegenerate")
}

/// The hyperbolic plane `[[0,1],[1,0]]`.
pub fn hyperbolic_u() -> QuadraticSpace {
    QuadraticSpace::from_integer_gram(&[&[0, 1], &[1, 0]]).expect("U is nondegenerate")
}

/// `Λ⊗Q` for `Λ = E8(-1)^2 ⊕ U^3`.
pub fn lambda_space() -> QuadraticSpace {
    let e8 = e8_minus();
    let u = hyperbolic_u();
    QuadraticSpace::direct_sum_all([&e8, &e8, &u, &u, &u])
}

/// `ε_p(W(2))` predicted from the invariants of `W`.
pub fn scaled_by_two_hasse(w: &QuadraticSpace, p: &Prime) -> i8 {
    let rk = w.rank() as u64;
    let sign = if (rk * rk.saturating_sub(1) / 2).is_odd() { SquareClass::one().neg() } else { SquareClass::one() };
    let arg = sign.mul(&w.disc().pow(rk.saturating_sub(1)));
    let two = SquareClass::from_squarefree(2).expect("2 is squarefree");
    w.hasse_invariant(p) * symbol(&two, &arg, &Place::Finite(p.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn diagonalize_examples() {
        let d = diagonalize(&[vec![rat(0), rat(1)], vec![rat(1), rat(0)]]).unwrap();
        assert_eq!(d, vec![rat(2), ratio(-1, 2)]);
        let d = diagonalize(&[vec![rat(3), rat(0)], vec![rat(0), rat(-5)]]).unwrap();
        assert_eq!(d, vec![rat(3), rat(-5)]);
        let d = diagonalize(&[vec![rat(2), rat(1)], vec![rat(1), rat(2)]]).unwrap();
        assert_eq!(d, vec![rat(2), ratio(3, 2)]);
        assert_eq!(QuadraticSpace::from_integer_gram(&[&[1, 2], &[3, 4]]), Err(Error::NotSymmetric(0, 1)));
    }

    #[test]
    fn lambda_invariants() {
        let l = lambda_space();
        assert_eq!(l.rank(), 22);
        assert_eq!(l.signature(), (3, 19));
        assert_eq!(*l.det(), rat(-1));
        assert_eq!(l.disc().representative(), &(-1).into());
        assert_eq!(l.primes(), &BTreeSet::from([p(2)]));
        for q in [2, 3, 5, 7, 11] {
            assert_eq!(l.hasse_invariant(&p(q)), p(q).parity_sign());
        }
        assert_eq!(*e8_minus().det(), rat(1));
    }

    #[test]
    fn signatures_and_discs() {
        let u = hyperbolic_u();
        assert_eq!(u.signature(), (1, 1));
        assert_eq!(u.disc().representative(), &(-1).into());
        let i3 = QuadraticSpace::from_integer_diagonal(&[1, 1, 1]).unwrap();
        assert_eq!(i3.signature(), (3, 0));
        assert_eq!(*i3.disc(), SquareClass::one());
        assert_eq!(relevant_primes(&[&i3]), BTreeSet::from([p(2)]));
        let d35 = QuadraticSpace::from_integer_diagonal(&[3, 5]).unwrap();
        assert_eq!(relevant_primes(&[&d35]), BTreeSet::from([p(2), p(3), p(5)]));
    }

    #[test]
    fn hasse_examples() {
        let i2 = QuadraticSpace::from_integer_diagonal(&[1, 1]).unwrap();
        for q in [2, 3, 5, 7] {
            assert_eq!(i2.hasse_invariant(&p(q)), 1);
        }
        let m2 = QuadraticSpace::from_integer_diagonal(&[-1, -1]).unwrap();
        assert_eq!(m2.hasse_invariant(&p(2)), -1);
        assert_eq!(m2.hasse_infinity(), -1);
    }

    #[test]
    fn realizability_examples() {
        let one = SquareClass::one();
        let minus = one.neg();
        assert!(invariants_realizable(1, (1, 0), &one, &HasseProfile::trivial()).unwrap());
        assert!(!invariants_realizable(2, (2, 0), &minus, &HasseProfile::trivial()).unwrap());
        assert!(!invariants_realizable(2, (1, 1), &minus, &HasseProfile::minus_at([p(2)])).unwrap());
        assert!(invariants_realizable(0, (0, 0), &one, &HasseProfile::trivial()).unwrap());
        assert_eq!(invariants_realizable(3, (1, 1), &one, &HasseProfile::trivial()), Err(Error::InconsistentSignature));
        // <-1,-1> has ε_2 = -1 and ε_∞ = -1
        assert!(invariants_realizable(2, (0, 2), &one, &HasseProfile::minus_at([p(2)])).unwrap());
    }

    #[test]
    fn witt_examples() {
        let i1 = QuadraticSpace::from_integer_diagonal(&[1]).unwrap();
        let i2 = QuadraticSpace::from_integer_diagonal(&[1, 1]).unwrap();
        assert!(witt_embeds(&i1, &i2));
        assert!(witt_embeds(&i2, &i2));
        assert!(!witt_embeds(&i2, &i1));
        let two = QuadraticSpace::from_integer_diagonal(&[2]).unwrap();
        assert!(!witt_embeds(&two, &i1));
        // <3> does not embed in <1,1>: 3 is not a sum of two rational squares
        let three = QuadraticSpace::from_integer_diagonal(&[3]).unwrap();
        assert!(!witt_embeds(&three, &i2));
        let l = lambda_space();
        assert!(witt_embeds(&hyperbolic_u(), &l));
    }

    #[test]
    fn lambda_embedding_examples() {
        let m = QuadraticSpace::from_integer_diagonal(&[1, 1, -1]).unwrap();
        assert!(embeds_into_lambda_q(&m).unwrap());
        let mut big = vec![1, 1];
        big.extend(std::iter::repeat(-1).take(20));
        let m20 = QuadraticSpace::from_integer_diagonal(&big).unwrap();
        assert!(!embeds_into_lambda_q(&m20).unwrap());
        big.pop();
        let m19 = QuadraticSpace::from_integer_diagonal(&big).unwrap();
        assert_eq!(embeds_into_lambda_q(&m19).unwrap(), witt_embeds(&m19, &lambda_space()));
        assert!(matches!(embeds_into_lambda_q(&hyperbolic_u()), Err(Error::SignatureShape(1, 1))));
    }

    #[test]
    fn scaling() {
        let w = QuadraticSpace::from_integer_diagonal(&[1]).unwrap();
        assert_eq!(w.scale(&rat(2)).unwrap().gram(), &[vec![rat(2)]]);
        let w = QuadraticSpace::from_integer_diagonal(&[3, -5, 7]).unwrap();
        let w2 = w.scale(&rat(2)).unwrap();
        for q in relevant_primes(&[&w, &w2]) {
            assert_eq!(w2.hasse_invariant(&q), scaled_by_two_hasse(&w, &q));
        }
    }
}
