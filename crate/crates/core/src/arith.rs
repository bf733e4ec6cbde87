//! Exact rationals and their local invariants at the places of Q.
//!
//! Every local computation first replaces a rational `n/d` by the integer
//! `n*d`, which lies in the same square class. Hilbert symbols and local
//! square tests only depend on the square class, so nothing is lost.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

/// Builds an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `n/d`; panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"p/q"` (optionally signed, surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Zero("denominator"));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Formats as `"n"` for integers and `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A rational prime. Values coming from users are certified by trial division.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(BigUint);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::NotPrime(p.to_string()));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::NotPrime(p.to_string()));
            }
            d += 1;
        }
        Ok(Prime(BigUint::from(p)))
    }

    /// Wraps a value already known to be prime (output of factorization).
    pub(crate) fn trusted(p: BigUint) -> Self {
        Prime(p)
    }

    pub fn two() -> Self {
        Prime(BigUint::from(2u32))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_two(&self) -> bool {
        self.0 == BigUint::from(2u32)
    }

    /// `(-1)^(p-1)`: -1 at 2 and +1 at odd primes.
    pub fn parity_sign(&self) -> i8 {
        if self.is_two() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A place of Q: the real place or a finite prime.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Finite(Prime),
}

impl Place {
    pub fn prime(p: u64) -> Result<Self> {
        Prime::new(p).map(Place::Finite)
    }
}

impl From<Prime> for Place {
    fn from(p: Prime) -> Self {
        Place::Finite(p)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Finite(p) => p.fmt(f),
        }
    }
}

/// Element of Q*/(Q*)^2, represented by its unique squarefree integer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn one() -> Self {
        SquareClass(BigInt::one())
    }

    pub fn representative(&self) -> &BigInt {
        &self.0
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(self.0.clone())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Product of classes; the squarefree part of `a*b` is `(a/g)*(b/g)` with `g = gcd(a, b)`.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let g = self.0.gcd(&other.0);
        SquareClass((&self.0 / &g) * (&other.0 / &g))
    }

    pub fn neg(&self) -> SquareClass {
        SquareClass(-&self.0)
    }

    pub fn pow(&self, e: u64) -> SquareClass {
        if e % 2 == 0 {
            SquareClass::one()
        } else {
            self.clone()
        }
    }

    /// Builds a class from an integer already known to be squarefree.
    pub fn from_squarefree(n: i64) -> Result<Self> {
        let q = rat(n);
        let c = square_class(&q)?;
        if c.0 != BigInt::from(n) {
            return Err(Error::InvalidInput(format!("{n} is not squarefree")));
        }
        Ok(c)
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Prime factorization of a positive integer, smallest prime first.
pub fn factorize(n: &BigUint) -> Vec<(Prime, usize)> {
    if n.is_zero() || n.is_one() {
        return Vec::new();
    }
    if let Some(small) = n.to_u64() {
        return num_prime::nt_funcs::factorize64(small)
            .into_iter()
            .map(|(p, e)| (Prime::trusted(BigUint::from(p)), e))
            .collect();
    }
    num_prime::nt_funcs::factorize(n.clone())
        .into_iter()
        .map(|(p, e)| (Prime::trusted(p), e))
        .collect()
}

/// Primes dividing the numerator or denominator of `q`.
pub fn primes_of(q: &Rational) -> BTreeSet<Prime> {
    let mut out = BTreeSet::new();
    for n in [q.numer(), q.denom()] {
        let (_, mag) = n.clone().into_parts();
        out.extend(factorize(&mag).into_iter().map(|(p, _)| p));
    }
    out
}

fn square_class_integer(q: &Rational) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::Zero("rational argument"));
    }
    Ok(q.numer() * q.denom())
}

/// Splits `n = p^v * u` with `p` not dividing `u`. `n` must be nonzero.
fn split_prime(n: &BigInt, p: &BigUint) -> (u64, BigInt) {
    let p = BigInt::from_biguint(Sign::Plus, p.clone());
    let mut u = n.clone();
    let mut v = 0u64;
    loop {
        let (quo, rem) = u.div_rem(&p);
        if !rem.is_zero() {
            return (v, u);
        }
        u = quo;
        v += 1;
    }
}

pub fn padic_valuation(q: &Rational, p: &Prime) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::Zero("argument of the valuation"));
    }
    let (vn, _) = split_prime(q.numer(), p.value());
    let (vd, _) = split_prime(q.denom(), p.value());
    Ok(vn as i64 - vd as i64)
}

/// Jacobi symbol `(a | n)` for odd positive `n`.
fn jacobi(a: &BigInt, n: &BigUint) -> i8 {
    let n_int = BigInt::from_biguint(Sign::Plus, n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().expect("nonnegative after mod_floor");
    let mut n = n.clone();
    let mut result = 1i8;
    let three = BigUint::from(3u32);
    let five = BigUint::from(5u32);
    let eight = BigUint::from(8u32);
    let four = BigUint::from(4u32);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn mod_small(n: &BigInt, m: u32) -> u32 {
    n.mod_floor(&BigInt::from(m)).to_u32().expect("residue fits in u32")
}

pub fn is_square_local(q: &Rational, place: &Place) -> Result<bool> {
    let n = square_class_integer(q)?;
    Ok(match place {
        Place::Infinity => n.is_positive(),
        Place::Finite(p) => {
            let (v, u) = split_prime(&n, p.value());
            if v % 2 == 1 {
                false
            } else if p.is_two() {
                mod_small(&u, 8) == 1
            } else {
                jacobi(&u, p.value()) == 1
            }
        }
    })
}

/// Hilbert symbol `(a, b)_v` by the closed-form residue formulas.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: &Place) -> Result<i8> {
    let a = square_class_integer(a)?;
    let b = square_class_integer(b)?;
    Ok(hilbert_integers(&a, &b, place))
}

pub(crate) fn hilbert_integers(a: &BigInt, b: &BigInt, place: &Place) -> i8 {
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) => {
            let (alpha, u) = split_prime(a, p.value());
            let (beta, v) = split_prime(b, p.value());
            if p.is_two() {
                let eps = |x: &BigInt| u32::from(mod_small(x, 4) == 3);
                let omega = |x: &BigInt| u32::from(matches!(mod_small(x, 8), 3 | 5));
                let e = eps(&u) * eps(&v)
                    + (alpha as u32 % 2) * omega(&v)
                    + (beta as u32 % 2) * omega(&u);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let mut s = 1i8;
                let half: BigUint = (p.value() - 1u32) >> 1;
                if alpha % 2 == 1 && beta % 2 == 1 && half.is_odd() {
                    s = -s;
                }
                if beta % 2 == 1 {
                    s *= jacobi(&u, p.value());
                }
                if alpha % 2 == 1 {
                    s *= jacobi(&v, p.value());
                }
                s
            }
        }
    }
}

/// Local data of a nonzero integer at `p`: valuation parity and unit residue.
///
/// The residue is `u mod 8` at 2 and the Legendre symbol `(u | p)` mapped to
/// 0/1 at odd `p`; this is all the Hilbert symbol at `p` depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct LocalDatum {
    odd: bool,
    residue: u32,
}

impl LocalDatum {
    pub(crate) fn new(n: &BigInt, p: &Prime) -> Self {
        let (v, u) = split_prime(n, p.value());
        let residue = if p.is_two() { mod_small(&u, 8) } else { u32::from(jacobi(&u, p.value()) == -1) };
        LocalDatum { odd: v % 2 == 1, residue }
    }

    pub(crate) fn of_rational(q: &Rational, p: &Prime) -> Result<Self> {
        Ok(LocalDatum::new(&square_class_integer(q)?, p))
    }
}

/// `(a, b)_p` from precomputed local data; `p_is_3_mod_4` is ignored at 2.
pub(crate) fn hilbert_local(a: LocalDatum, b: LocalDatum, p_is_two: bool, p_is_3_mod_4: bool) -> i8 {
    let e = if p_is_two {
        let eps = |r: u32| u32::from(r % 4 == 3);
        let omega = |r: u32| u32::from(matches!(r, 3 | 5));
        eps(a.residue) * eps(b.residue)
            + u32::from(a.odd) * omega(b.residue)
            + u32::from(b.odd) * omega(a.residue)
    } else {
        u32::from(a.odd && b.odd && p_is_3_mod_4)
            + u32::from(b.odd) * a.residue
            + u32::from(a.odd) * b.residue
    };
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn square_class(q: &Rational) -> Result<SquareClass> {
    let n = square_class_integer(q)?;
    let (sign, mag) = n.into_parts();
    let mut rep = BigUint::one();
    for (p, e) in factorize(&mag) {
        if e % 2 == 1 {
            rep *= p.value();
        }
    }
    let rep = BigInt::from_biguint(Sign::Plus, rep);
    Ok(SquareClass(if sign == Sign::Minus { -rep } else { rep }))
}

/// `{inf} ∪ {2} ∪ primes of a and b`: outside this set `(a, b)_v = +1`.
pub fn hilbert_support(a: &Rational, b: &Rational) -> BTreeSet<Place> {
    let mut places: BTreeSet<Place> = primes_of(a)
        .into_iter()
        .chain(primes_of(b))
        .chain(std::iter::once(Prime::two()))
        .map(Place::Finite)
        .collect();
    places.insert(Place::Infinity);
    places
}
