//! Dense univariate polynomials over Q, Sturm chains, and the small amount
//! of F_p arithmetic needed to certify irreducibility.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{format_rational, Rational};

/// Coefficients are stored lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.lead().recip();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") * &lead_inv;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * d;
                }
            }
            rem.pop();
            quo[k] = c;
        }
        (Poly::new(quo), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s)` with `g = gcd(self, modulus)` monic and `s*self ≡ g (mod modulus)`.
    pub fn ext_gcd(&self, modulus: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (modulus.clone(), self.clone());
        let (mut s0, mut s1) = (Poly::zero(), Poly::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let inv_lead = r0.lead().recip();
        (r0.scale(&inv_lead), s0.scale(&inv_lead))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Horner evaluation in interval arithmetic; the result encloses `{p(x) : lo <= x <= hi}`.
    pub fn eval_interval(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mut acc_lo = Rational::zero();
        let mut acc_hi = Rational::zero();
        for c in self.coeffs.iter().rev() {
            let products = [&acc_lo * lo, &acc_lo * hi, &acc_hi * lo, &acc_hi * hi];
            let min = products.iter().min().expect("four products").clone();
            let max = products.iter().max().expect("four products").clone();
            acc_lo = min + c;
            acc_hi = max + c;
        }
        (acc_lo, acc_hi)
    }

    /// `1 + max |c_i / lead|`, a strict upper bound on the absolute value of every root.
    pub fn cauchy_bound(&self) -> Rational {
        let lead = self.lead().abs();
        let n = self.coeffs.len().saturating_sub(1);
        let max = self.coeffs[..n]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        max + Rational::one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// The integer polynomial `c * self` with coprime integer coefficients and positive lead.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.lead().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Reduction mod `p`; `None` if `p` divides a denominator.
    pub fn reduce_mod(&self, p: u64) -> Option<Vec<u64>> {
        let pb = BigInt::from(p);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let d = c.denom().mod_floor(&pb).to_u64().expect("residue");
            if d == 0 {
                return None;
            }
            let n = c.numer().mod_floor(&pb).to_u64().expect("residue");
            out.push(fp::mul(n, fp::inv(d, p), p));
        }
        fp::trim(&mut out);
        Some(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            let coef = format_rational(&a);
            match (i, a.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{coef}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{coef}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...` of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    seq: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        SturmChain { seq }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.seq {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }

    pub fn count_real_roots(&self) -> usize {
        let bound = self.seq[0].cauchy_bound();
        self.count_roots(&-&bound, &bound)
    }

    /// Disjoint isolating intervals `[lo, hi]`, one per real root, sorted increasingly.
    ///
    /// Endpoints are never roots unless the root is rational, in which case
    /// the interval degenerates to a point.
    pub fn isolate(&self) -> Vec<(Rational, Rational)> {
        let p = &self.seq[0];
        let bound = p.cauchy_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-&bound, bound)];
        let two = Rational::from_integer(BigInt::from(2));
        while let Some((a, b)) = stack.pop() {
            let n = self.count_roots(&a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 {
                if p.eval(&b).is_zero() {
                    out.push((b.clone(), b));
                } else {
                    out.push((a, b));
                }
                continue;
            }
            let mid = (&a + &b) / &two;
            stack.push((mid.clone(), b));
            stack.push((a, mid));
        }
        out.sort_by(|x, y| (&x.0 + &x.1).cmp(&(&y.0 + &y.1)));
        out
    }
}

/// Arithmetic in F_p[x] for word-sized primes, coefficients lowest degree first.
pub(crate) mod fp {
    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a, p);
            }
            a = mul(a, a, p);
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mulpoly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul(x, y, p)) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = b.len() - 1;
        let inv_lead = inv(b[db], p);
        let mut rem = a.to_vec();
        let mut quo = vec![0u64; rem.len().saturating_sub(db)];
        while rem.len() > db && !rem.is_empty() {
            let k = rem.len() - 1 - db;
            let c = mul(*rem.last().expect("nonempty"), inv_lead, p);
            for (i, &d) in b.iter().enumerate() {
                rem[k + i] = (rem[k + i] + p - mul(c, d, p)) % p;
            }
            rem.pop();
            quo[k] = c;
            trim(&mut rem);
            if rem.len() <= db {
                break;
            }
        }
        trim(&mut rem);
        trim(&mut quo);
        (quo, rem)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = divrem(&a, &b, p).1;
            a = b;
            b = r;
        }
        if let Some(&l) = a.last() {
            let li = inv(l, p);
            for c in a.iter_mut() {
                *c = mul(*c, li, p);
            }
        }
        a
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul(c, i as u64 % p, p))
            .collect();
        trim(&mut out);
        out
    }

    fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = divrem(base, m, p).1;
        while e > 0 {
            if e & 1 == 1 {
                result = divrem(&mulpoly(&result, &b, p), m, p).1;
            }
            b = divrem(&mulpoly(&b, &b, p), m, p).1;
            e >>= 1;
        }
        result
    }

    /// Degrees of the irreducible factors of a monic `f` squarefree mod `p`
    /// (distinct-degree factorization). `None` if `f` is not squarefree mod `p`.
    pub fn factor_degrees(f: &[u64], p: u64) -> Option<Vec<usize>> {
        let df = derivative(f, p);
        if df.is_empty() || gcd(f, &df, p).len() != 1 {
            return None;
        }
        let x = vec![0u64, 1u64];
        let mut f = f.to_vec();
        let mut h = x.clone();
        let mut degrees = Vec::new();
        let mut i = 0;
        while f.len() > 1 {
            i += 1;
            if 2 * i > f.len() - 1 {
                degrees.push(f.len() - 1);
                break;
            }
            h = powmod(&h, p, &f, p);
            let g = gcd(&f, &sub(&h, &x, p), p);
            if g.len() > 1 {
                let dg = g.len() - 1;
                degrees.extend(std::iter::repeat(i).take(dg / i));
                f = divrem(&f, &g, p).0;
                h = divrem(&h, &f, p).1;
            }
        }
        Some(degrees)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn poly(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let f = poly(&[-1, 0, 1]);
        let g = poly(&[1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(q, poly(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&poly(&[-1, 1])), poly(&[-1, 1]));
        let (g, s) = poly(&[0, 1]).ext_gcd(&poly(&[-2, 0, 1]));
        assert_eq!(g, poly(&[1]));
        assert_eq!(s, Poly::new(vec![rat(0), ratio(1, 2)]));
    }

    #[test]
    fn sturm_counts() {
        // x^3 - x - 1 has a single real root near 1.3247
        let f = poly(&[-1, -1, 0, 1]);
        let chain = SturmChain::new(&f);
        assert_eq!(chain.count_real_roots(), 1);
        assert_eq!(chain.count_roots(&rat(1), &rat(2)), 1);
        assert_eq!(SturmChain::new(&poly(&[-1, -1, 0, 0, 1])).count_real_roots(), 2);
        assert_eq!(SturmChain::new(&poly(&[1, 0, 1])).count_real_roots(), 0);
        let roots = SturmChain::new(&poly(&[-2, 0, 1])).isolate();
        assert_eq!(roots.len(), 2);
        for (lo, hi) in &roots {
            let (a, b) = (lo.to_f64().unwrap(), hi.to_f64().unwrap());
            assert!(a < b);
            assert!((a..=b).contains(&2f64.sqrt()) || (a..=b).contains(&-2f64.sqrt()));
        }
    }

    #[test]
    fn interval_evaluation_encloses_values() {
        let f = poly(&[1, -3, 0, 2]);
        let (lo, hi) = f.eval_interval(&ratio(-1, 2), &ratio(3, 2));
        for k in 0..=20 {
            let x = ratio(-1, 2) + ratio(k, 10);
            let v = f.eval(&x);
            assert!(lo <= v && v <= hi);
        }
    }

    #[test]
    fn distinct_degree_patterns() {
        // x^2 + 1 is irreducible mod 3 and splits mod 5
        let f = poly(&[1, 0, 1]);
        assert_eq!(fp::factor_degrees(&f.reduce_mod(3).unwrap(), 3), Some(vec![2]));
        assert_eq!(fp::factor_degrees(&f.reduce_mod(5).unwrap(), 5), Some(vec![1, 1]));
        // x^2 - 2 is not squarefree mod 2
        assert_eq!(fp::factor_degrees(&poly(&[-2, 0, 1]).reduce_mod(2).unwrap(), 2), None);
        // (x^2+1)(x^2+x+1) mod 7: x^2+1 irreducible, x^2+x+1 = (x-2)(x-4)
        let g = poly(&[1, 0, 1]).mul(&poly(&[1, 1, 1]));
        let mut d = fp::factor_degrees(&g.reduce_mod(7).unwrap(), 7).unwrap();
        d.sort();
        assert_eq!(d, vec![1, 1, 2]);
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[-1, -1, 0, 1]).to_string(), "x^3 - x - 1");
        assert_eq!(Poly::new(vec![ratio(1, 2), rat(0), rat(-3)]).to_string(), "-3*x^2 + 1/2");
    }
}
