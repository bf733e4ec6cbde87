//! Number fields `Q[x]/(f)`, their real embeddings, and CM fields `E0(θ)`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use nalgebra::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, Rational};
use crate::error::{Error, Result};
use crate::linalg::{determinant, StarField};
use crate::poly::{fp, Poly, SturmChain};
use crate::quadratic::QuadraticSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    TotallyReal,
    Cm,
    Generic,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldKind::TotallyReal => "totally_real",
            FieldKind::Cm => "cm",
            FieldKind::Generic => "generic",
        })
    }
}

/// A real embedding, given by an isolating interval of a root of the minimal polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealEmbedding {
    lo: Rational,
    hi: Rational,
}

impl RealEmbedding {
    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    /// Halves the interval, keeping the half containing the root.
    pub fn bisect(&self, minpoly: &Poly) -> RealEmbedding {
        if self.lo == self.hi {
            return self.clone();
        }
        let mid = self.midpoint();
        let fm = minpoly.eval(&mid);
        if fm.is_zero() {
            return RealEmbedding { lo: mid.clone(), hi: mid };
        }
        let flo = minpoly.eval(&self.lo);
        if flo.is_positive() == fm.is_positive() {
            RealEmbedding { lo: mid, hi: self.hi.clone() }
        } else {
            RealEmbedding { lo: self.lo.clone(), hi: mid }
        }
    }

    /// Refines until the width is at most `width`.
    pub fn refine_to(&self, minpoly: &Poly, width: &Rational) -> RealEmbedding {
        let mut e = self.clone();
        while &e.width() > width {
            e = e.bisect(minpoly);
        }
        e
    }
}

#[derive(Debug)]
pub struct NumberField {
    minpoly: Poly,
    degree: usize,
    kind: FieldKind,
    embeddings: Vec<RealEmbedding>,
    // intervals of width <= 2^-80, the starting point for sign and numeric queries
    precise: Vec<RealEmbedding>,
    power_traces: Vec<Rational>,
    warnings: Vec<String>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}

impl NumberField {
    /// Builds `Q[x]/(minpoly)`; coefficients lowest degree first.
    pub fn new(coeffs: Vec<Rational>) -> Result<Arc<Self>> {
        let minpoly = Poly::new(coeffs);
        let degree = match minpoly.degree() {
            Some(d) if d >= 1 && minpoly.lead().is_one() => d,
            _ => return Err(Error::NonMonic),
        };
        if !minpoly.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let mut warnings = Vec::new();
        if degree >= 2 {
            if let Some(r) = rational_root(&minpoly) {
                let factor = Poly::new(vec![-r, Rational::one()]);
                return Err(Error::Reducible(factor.to_string()));
            }
            if !irreducibility_certificate(&minpoly) {
                warnings.push(format!(
                    "irreducibility of {minpoly} could not be certified by factorization patterns mod small primes"
                ));
            }
        }
        let chain = SturmChain::new(&minpoly);
        let embeddings: Vec<RealEmbedding> = chain
            .isolate()
            .into_iter()
            .map(|(lo, hi)| RealEmbedding { lo, hi })
            .collect();
        let eps = Rational::new(BigInt::one(), BigInt::one() << 80usize);
        let precise = embeddings.iter().map(|e| e.refine_to(&minpoly, &eps)).collect();
        let kind = if embeddings.len() == degree { FieldKind::TotallyReal } else { FieldKind::Generic };
        let power_traces = power_traces(&minpoly, degree);
        Ok(Arc::new(NumberField { minpoly, degree, kind, embeddings, precise, power_traces, warnings }))
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Arc<Self>> {
        NumberField::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// Q itself, presented as `Q[x]/(x)`.
    pub fn rationals() -> Arc<Self> {
        NumberField::from_integers(&[0, 1]).expect("x is a valid minimal polynomial")
    }

    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn is_totally_real(&self) -> bool {
        self.kind == FieldKind::TotallyReal
    }

    pub fn is_rationals(&self) -> bool {
        self.degree == 1
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Real embeddings sorted by the position of the root.
    pub fn real_embeddings(&self) -> &[RealEmbedding] {
        &self.embeddings
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Rational>) -> Result<FieldElement> {
        if coeffs.len() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, got: coeffs.len() });
        }
        Ok(FieldElement { field: Arc::clone(self), coeffs })
    }

    pub fn element_from_integers(self: &Arc<Self>, coeffs: &[i64]) -> Result<FieldElement> {
        self.element(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_rational(self: &Arc<Self>, q: Rational) -> FieldElement {
        let mut coeffs = vec![Rational::zero(); self.degree];
        coeffs[0] = q;
        FieldElement { field: Arc::clone(self), coeffs }
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        self.from_rational(Rational::zero())
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_rational(Rational::one())
    }

    /// The class of `x`.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.from_poly(&Poly::x())
    }

    /// Power basis `1, α, …, α^{n-1}`.
    pub fn power_basis(self: &Arc<Self>) -> Vec<FieldElement> {
        (0..self.degree)
            .map(|i| {
                let mut c = vec![Rational::zero(); self.degree];
                c[i] = Rational::one();
                FieldElement { field: Arc::clone(self), coeffs: c }
            })
            .collect()
    }

    fn from_poly(self: &Arc<Self>, p: &Poly) -> FieldElement {
        let r = p.rem(&self.minpoly);
        let coeffs = (0..self.degree).map(|i| r.coeff(i)).collect();
        FieldElement { field: Arc::clone(self), coeffs }
    }

    /// The scaled trace form `(ξ, ζ) ↦ tr(ξ·ζ·a)` in the power basis.
    pub fn trace_pairing_gram(self: &Arc<Self>, a: &FieldElement) -> Result<QuadraticSpace> {
        self.check_same(a)?;
        if a.is_zero() {
            return Err(Error::Zero("scaling element"));
        }
        let basis = self.power_basis();
        let gram = basis
            .iter()
            .map(|ei| basis.iter().map(|ej| (&(ei * ej) * a).trace()).collect())
            .collect();
        QuadraticSpace::new(gram)
    }

    fn check_same(self: &Arc<Self>, a: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(self, &a.field) || **self == *a.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub(crate) fn precise_embedding(&self, index: usize) -> &RealEmbedding {
        &self.precise[index]
    }
}

/// `tr(α^k)` for `k < n`, read off the multiplication-by-`α^k` matrices.
fn power_traces(minpoly: &Poly, n: usize) -> Vec<Rational> {
    let mut powers = Vec::with_capacity(2 * n);
    let mut cur = Poly::constant(Rational::one());
    for _ in 0..2 * n {
        powers.push(cur.clone());
        cur = cur.mul(&Poly::x()).rem(minpoly);
    }
    (0..n).map(|k| (0..n).map(|j| powers[k + j].coeff(j)).sum()).collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let (_, mag) = n.clone().into_parts();
    if mag.bits() > 64 {
        return None;
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(&mag) {
        let p = BigInt::from(p.value().clone());
        let mut next = Vec::with_capacity(divs.len() * (e + 1));
        for d in &divs {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q *= &p;
            }
        }
        divs = next;
        if divs.len() > 20_000 {
            return None;
        }
    }
    Some(divs)
}

/// A rational root by the rational root test on the primitive integer polynomial.
fn rational_root(f: &Poly) -> Option<Rational> {
    let ints = f.primitive_integer();
    if ints[0].is_zero() {
        return Some(Rational::zero());
    }
    let num_divs = divisors(&ints[0])?;
    let den_divs = divisors(ints.last().expect("nonzero polynomial"))?;
    for a in &num_divs {
        for b in &den_divs {
            if !a.gcd(b).is_one() {
                continue;
            }
            for s in [BigInt::one(), -BigInt::one()] {
                let r = Rational::new(a * &s, b.clone());
                if f.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// True when factorization degree patterns mod small primes rule out every proper factor.
fn irreducibility_certificate(f: &Poly) -> bool {
    let n = f.degree().expect("nonzero");
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    let mut primes_tried = 0;
    for p in 3u64..2000 {
        if !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            continue;
        }
        let Some(red) = f.reduce_mod(p) else { continue };
        if red.len() != n + 1 {
            continue;
        }
        let Some(degs) = fp::factor_degrees(&red, p) else { continue };
        let mut sums = BTreeSet::from([0usize]);
        for d in degs {
            let shifted: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(shifted);
        }
        possible = possible.intersection(&sums).copied().collect();
        if possible.len() == 2 {
            return true;
        }
        primes_tried += 1;
        if primes_tried >= 40 {
            break;
        }
    }
    false
}

/// Element of a number field in the power basis.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && *self.field == *other.field
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = Poly::new(self.coeffs.clone()).to_string().replace('x', "a");
        f.write_str(&s)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    fn poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(FieldElement { field: Arc::clone(&self.field), coeffs })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(FieldElement { field: Arc::clone(&self.field), coeffs })
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.field.from_poly(&self.poly().mul(&other.poly())))
    }

    pub fn scale(&self, c: &Rational) -> FieldElement {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        FieldElement { field: Arc::clone(&self.field), coeffs }
    }

    /// Inverse via the extended Euclidean algorithm against the minimal polynomial.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::Zero("inverted element"));
        }
        let (g, s) = self.poly().ext_gcd(&self.field.minpoly);
        if g.degree() != Some(0) {
            return Err(Error::Internal("minimal polynomial has a common factor with an element".into()));
        }
        Ok(self.field.from_poly(&s))
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        (0..e).fold(self.field.one(), |acc, _| &acc * self)
    }

    /// Columns are `a·α^j` in the power basis.
    pub fn multiplication_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.field.degree;
        let cols: Vec<FieldElement> = self.field.power_basis().iter().map(|b| self * b).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j].coeffs[i].clone()).collect()).collect()
    }

    pub fn trace(&self) -> Rational {
        self.coeffs.iter().zip(&self.field.power_traces).map(|(a, t)| a * t).sum()
    }

    pub fn norm(&self) -> Rational {
        determinant(&self.multiplication_matrix()).expect("multiplication matrix is square")
    }

    /// Exact sign of `σ(a)`, refining the embedding until interval evaluation is conclusive.
    pub fn sign_at(&self, embedding: &RealEmbedding) -> Result<i8> {
        if self.is_zero() {
            return Err(Error::Zero("element whose sign is requested"));
        }
        let p = self.poly();
        let mut e = embedding.clone();
        loop {
            let (lo, hi) = p.eval_interval(&e.lo, &e.hi);
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            if e.lo == e.hi {
                return Err(Error::Internal("nonzero element vanishes at an embedding".into()));
            }
            e = e.bisect(&self.field.minpoly);
        }
    }

    /// Sign at the `index`-th real embedding of the owning field.
    pub fn sign_at_index(&self, index: usize) -> Result<i8> {
        self.sign_at(self.field.precise_embedding(index))
    }

    /// `σ(a)` as a float, evaluated exactly on a root approximation of width <= 2^-80.
    pub fn to_f64_at(&self, index: usize) -> f64 {
        let e = self.field.precise_embedding(index);
        self.poly().eval(&e.midpoint()).to_f64().unwrap_or(f64::NAN)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("operands in the same field")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("operands in the same field")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("operands in the same field")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        FieldElement { field: Arc::clone(&self.field), coeffs }
    }
}

impl StarField for FieldElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
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
        self.inv().ok()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn skew_unit(&self) -> Option<Self> {
        None
    }
}

/// CM field `E = E0(θ)` with `θ² = t` totally negative in the totally real `E0`.
#[derive(Debug)]
pub struct CmField {
    base: Arc<NumberField>,
    theta_sq: FieldElement,
}

impl PartialEq for CmField {
    fn eq(&self, other: &Self) -> bool {
        *self.base == *other.base && self.theta_sq.coeffs == other.theta_sq.coeffs
    }
}

impl CmField {
    pub fn new(base: Arc<NumberField>, theta_sq: FieldElement) -> Result<Arc<Self>> {
        if !base.is_totally_real() {
            return Err(Error::NotTotallyReal);
        }
        base.check_same(&theta_sq)?;
        if theta_sq.is_zero() {
            return Err(Error::Zero("theta^2"));
        }
        for e in base.real_embeddings() {
            if theta_sq.sign_at(e)? > 0 {
                return Err(Error::NotTotallyNegative);
            }
        }
        Ok(Arc::new(CmField { base, theta_sq }))
    }

    /// `Q(√-1)` as `Q(θ)` with `θ² = -1`.
    pub fn gaussian() -> Arc<Self> {
        let q = NumberField::rationals();
        let t = q.from_rational(-Rational::one());
        CmField::new(q, t).expect("-1 is totally negative")
    }

    pub fn base(&self) -> &Arc<NumberField> {
        &self.base
    }

    pub fn theta_sq(&self) -> &FieldElement {
        &self.theta_sq
    }

    pub fn kind(&self) -> FieldKind {
        FieldKind::Cm
    }

    /// `[E:Q] = 2s`.
    pub fn degree(&self) -> usize {
        2 * self.base.degree()
    }

    /// `s = [E0:Q]`, the number of conjugate pairs of complex embeddings.
    pub fn pair_count(&self) -> usize {
        self.base.degree()
    }

    pub fn element(self: &Arc<Self>, re: FieldElement, im: FieldElement) -> Result<CmElement> {
        self.base.check_same(&re)?;
        self.base.check_same(&im)?;
        Ok(CmElement { field: Arc::clone(self), re, im })
    }

    /// From `2s` coefficients in the basis `e_1, …, e_s, θe_1, …, θe_s`.
    pub fn element_from_coeffs(self: &Arc<Self>, coeffs: Vec<Rational>) -> Result<CmElement> {
        let s = self.base.degree();
        if coeffs.len() != 2 * s {
            return Err(Error::DegreeMismatch { expected: 2 * s, got: coeffs.len() });
        }
        let im = coeffs[s..].to_vec();
        let re = coeffs[..s].to_vec();
        self.element(self.base.element(re)?, self.base.element(im)?)
    }

    pub fn from_base(self: &Arc<Self>, re: FieldElement) -> CmElement {
        let im = self.base.zero();
        CmElement { field: Arc::clone(self), re, im }
    }

    pub fn from_rational(self: &Arc<Self>, q: Rational) -> CmElement {
        self.from_base(self.base.from_rational(q))
    }

    pub fn theta(self: &Arc<Self>) -> CmElement {
        CmElement { field: Arc::clone(self), re: self.base.zero(), im: self.base.one() }
    }

    /// `e_1, …, e_s, θe_1, …, θe_s` with `e_i` the power basis of `E0`.
    pub fn basis(self: &Arc<Self>) -> Vec<CmElement> {
        let pb = self.base.power_basis();
        let zero = self.base.zero();
        pb.iter()
            .map(|e| CmElement { field: Arc::clone(self), re: e.clone(), im: zero.clone() })
            .chain(pb.iter().map(|e| CmElement { field: Arc::clone(self), re: zero.clone(), im: e.clone() }))
            .collect()
    }

    /// `|τ(θ²)|^{1/2}` at the `index`-th real embedding `τ` of `E0`.
    pub(crate) fn theta_modulus(&self, index: usize) -> f64 {
        (-self.theta_sq.to_f64_at(index)).sqrt()
    }
}

/// Element `re + im·θ` of a CM field.
#[derive(Clone)]
pub struct CmElement {
    field: Arc<CmField>,
    re: FieldElement,
    im: FieldElement,
}

impl PartialEq for CmElement {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im && *self.field == *other.field
    }
}

impl fmt::Debug for CmElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})·θ", self.re, self.im)
    }
}

impl fmt::Display for CmElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl CmElement {
    pub fn field(&self) -> &Arc<CmField> {
        &self.field
    }

    /// The component in `E0`.
    pub fn re(&self) -> &FieldElement {
        &self.re
    }

    /// The coefficient of `θ`.
    pub fn im(&self) -> &FieldElement {
        &self.im
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        self.re.coeffs.iter().chain(&self.im.coeffs).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Whether the element lies in `E0`.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conjugate(&self) -> CmElement {
        CmElement { field: Arc::clone(&self.field), re: self.re.clone(), im: -&self.im }
    }

    fn same_field(&self, other: &CmElement) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(&self, other: &CmElement) -> Result<CmElement> {
        self.same_field(other)?;
        Ok(CmElement { field: Arc::clone(&self.field), re: &self.re + &other.re, im: &self.im + &other.im })
    }

    pub fn checked_sub(&self, other: &CmElement) -> Result<CmElement> {
        self.same_field(other)?;
        Ok(CmElement { field: Arc::clone(&self.field), re: &self.re - &other.re, im: &self.im - &other.im })
    }

    pub fn checked_mul(&self, other: &CmElement) -> Result<CmElement> {
        self.same_field(other)?;
        let t = &self.field.theta_sq;
        let re = &(&self.re * &other.re) + &(&(&self.im * &other.im) * t);
        let im = &(&self.re * &other.im) + &(&self.im * &other.re);
        Ok(CmElement { field: Arc::clone(&self.field), re, im })
    }

    /// `x·x̄ = re² - t·im²`, the relative norm to `E0`.
    pub fn relative_norm(&self) -> FieldElement {
        &(&self.re * &self.re) - &(&(&self.im * &self.im) * &self.field.theta_sq)
    }

    pub fn inv(&self) -> Result<CmElement> {
        if self.is_zero() {
            return Err(Error::Zero("inverted element"));
        }
        let n_inv = self.relative_norm().inv()?;
        let c = self.conjugate();
        Ok(CmElement { field: Arc::clone(&self.field), re: &c.re * &n_inv, im: &c.im * &n_inv })
    }

    /// Absolute trace `tr_{E/Q} = 2·tr_{E0/Q}(re)`.
    pub fn trace(&self) -> Rational {
        self.re.trace() * Rational::from_integer(BigInt::from(2))
    }

    /// Absolute norm `N_{E0/Q}(x·x̄)`.
    pub fn norm(&self) -> Rational {
        self.relative_norm().norm()
    }

    /// `σ(x)` for the complex embedding over the `index`-th real embedding of `E0`
    /// with `Im σ(θ) > 0`; the conjugate embedding gives the complex conjugate.
    pub fn to_complex_at(&self, index: usize) -> Complex<f64> {
        let m = self.field.theta_modulus(index);
        Complex::new(self.re.to_f64_at(index), self.im.to_f64_at(index) * m)
    }
}

impl Add for &CmElement {
    type Output = CmElement;
    fn add(self, rhs: &CmElement) -> CmElement {
        self.checked_add(rhs).expect("operands in the same field")
    }
}

impl Sub for &CmElement {
    type Output = CmElement;
    fn sub(self, rhs: &CmElement) -> CmElement {
        self.checked_sub(rhs).expect("operands in the same field")
    }
}

impl Mul for &CmElement {
    type Output = CmElement;
    fn mul(self, rhs: &CmElement) -> CmElement {
        self.checked_mul(rhs).expect("operands in the same field")
    }
}

impl Neg for &CmElement {
    type Output = CmElement;
    fn neg(self) -> CmElement {
        CmElement { field: Arc::clone(&self.field), re: -&self.re, im: -&self.im }
    }
}

impl StarField for CmElement {
    fn zero_like(&self) -> Self {
        self.field.from_rational(Rational::zero())
    }
    fn one_like(&self) -> Self {
        self.field.from_rational(Rational::one())
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
        self.inv().ok()
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn skew_unit(&self) -> Option<Self> {
        Some(self.field.theta())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio, square_class};

    fn sqrt2() -> Arc<NumberField> {
        NumberField::from_integers(&[-2, 0, 1]).unwrap()
    }

    #[test]
    fn field_construction() {
        let f = sqrt2();
        assert_eq!(f.kind(), FieldKind::TotallyReal);
        assert_eq!(f.degree(), 2);
        assert!(f.warnings().is_empty());
        let g = NumberField::from_integers(&[1, 0, 1]).unwrap();
        assert_eq!(g.real_embeddings().len(), 0);
        assert_eq!(g.kind(), FieldKind::Generic);
        let h = NumberField::from_integers(&[-1, -1, 0, 1]).unwrap();
        assert_eq!(h.kind(), FieldKind::Generic);
        assert_eq!(h.real_embeddings().len(), 1);
        assert_eq!(NumberField::from_integers(&[-1, -1, 0, 0, 1]).unwrap().real_embeddings().len(), 2);
    }

    #[test]
    fn field_rejections() {
        assert_eq!(NumberField::from_integers(&[1, 1]).unwrap().degree(), 1);
        assert_eq!(NumberField::from_integers(&[1, 2, 2]).unwrap_err(), Error::NonMonic);
        assert_eq!(NumberField::from_integers(&[1, -2, 1]).unwrap_err(), Error::NotSquarefree);
        assert!(matches!(NumberField::from_integers(&[2, -3, 1]), Err(Error::Reducible(_))));
        assert!(matches!(
            NumberField::new(vec![ratio(-1, 4), rat(0), rat(1)]),
            Err(Error::Reducible(_))
        ));
        // (x^2-2)(x^2-3) has no rational root and cannot be certified
        let f = NumberField::from_integers(&[6, 0, -5, 0, 1]).unwrap();
        assert_eq!(f.warnings().len(), 1);
    }

    #[test]
    fn arithmetic() {
        let f = sqrt2();
        let a = f.generator();
        let one = f.one();
        assert_eq!(&(&one + &a) * &(&one - &a), f.from_rational(rat(-1)));
        assert_eq!(a.inv().unwrap(), a.scale(&ratio(1, 2)));
        assert!(f.zero().inv().is_err());
        let c = NumberField::from_integers(&[-1, -1, 0, 1]).unwrap();
        let b = c.generator();
        assert_eq!(&b * &b.pow(2), &b + &c.one());
        assert_eq!(f.generator().checked_mul(&c.generator()), Err(Error::MixedFields));
    }

    #[test]
    fn trace_and_norm() {
        let f = sqrt2();
        assert_eq!(f.one().trace(), rat(2));
        assert_eq!(f.generator().trace(), rat(0));
        assert_eq!((&f.one() + &f.generator()).norm(), rat(-1));
        let c = NumberField::from_integers(&[-1, -1, 0, 1]).unwrap();
        assert_eq!(c.one().trace(), rat(3));
        // roots of x^3 - x - 1 sum to 0 and multiply to 1
        assert_eq!(c.generator().trace(), rat(0));
        assert_eq!(c.generator().norm(), rat(1));
    }

    #[test]
    fn signs_at_embeddings() {
        let f = sqrt2();
        let e = f.real_embeddings();
        assert!(e[0].hi() <= e[1].lo());
        let a = f.generator();
        assert_eq!(a.sign_at(&e[0]).unwrap(), -1);
        assert_eq!(a.sign_at(&e[1]).unwrap(), 1);
        assert!(f.zero().sign_at(&e[0]).is_err());
        let c = NumberField::from_integers(&[-1, -1, 0, 1]).unwrap();
        let x = &c.one() + &c.generator();
        assert_eq!(x.sign_at(&c.real_embeddings()[0]).unwrap(), 1);
        // α - 1.3247 flips sign around the plastic number
        let lo = &c.generator() - &c.from_rational(ratio(13247, 10000));
        let hi = &c.generator() - &c.from_rational(ratio(13248, 10000));
        assert_eq!(lo.sign_at(&c.real_embeddings()[0]).unwrap(), 1);
        assert_eq!(hi.sign_at(&c.real_embeddings()[0]).unwrap(), -1);
        assert!((c.generator().to_f64_at(0) - 1.324_717_957_244_746).abs() < 1e-14);
    }

    #[test]
    fn trace_pairing_examples() {
        let f = sqrt2();
        let t1 = f.trace_pairing_gram(&f.one()).unwrap();
        assert_eq!(t1.gram(), &[vec![rat(2), rat(0)], vec![rat(0), rat(4)]]);
        assert_eq!(t1.disc(), &square_class(&rat(2)).unwrap());
        let t2 = f.trace_pairing_gram(&f.generator()).unwrap();
        assert_eq!(t2.gram(), &[vec![rat(0), rat(4)], vec![rat(4), rat(0)]]);
        assert_eq!(t2.signature(), (1, 1));
        let q = NumberField::rationals();
        let t3 = q.trace_pairing_gram(&q.from_rational(rat(-7))).unwrap();
        assert_eq!(t3.gram(), &[vec![rat(-7)]]);
        assert!(f.trace_pairing_gram(&f.zero()).is_err());
        let g = NumberField::from_integers(&[1, 0, 1]).unwrap();
        let t4 = g.trace_pairing_gram(&g.one()).unwrap();
        assert_eq!(t4.gram(), &[vec![rat(2), rat(0)], vec![rat(0), rat(-2)]]);
    }

    #[test]
    fn cm_fields() {
        let gauss = CmField::gaussian();
        assert_eq!(gauss.degree(), 2);
        let f = sqrt2();
        let minus_one = f.from_rational(rat(-1));
        let e = CmField::new(f.clone(), minus_one).unwrap();
        assert_eq!(e.degree(), 4);
        let t = &f.generator() - &f.from_rational(rat(3));
        assert!(CmField::new(f.clone(), t).is_ok());
        assert_eq!(CmField::new(f.clone(), f.generator()).unwrap_err(), Error::NotTotallyNegative);
        assert_eq!(CmField::new(f.clone(), f.zero()).unwrap_err(), Error::Zero("theta^2"));

        let theta = e.theta();
        assert_eq!(theta.conjugate(), -&theta);
        assert_eq!(&theta * &theta, e.from_rational(rat(-1)));
        let x = e.from_base(f.generator());
        assert_eq!(x.conjugate(), x);
        assert_eq!(gauss.theta().trace(), rat(0));
        assert_eq!(gauss.theta().norm(), rat(1));
        let y = &x + &theta;
        assert_eq!(&y * &y.inv().unwrap(), e.from_rational(rat(1)));
        assert_eq!(e.basis().len(), 4);
    }
}
