#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use k3type::arith::{rat, Rational};
use k3type::{AnySpace, CmElement, CmField, FieldElement, HermitianSpace, NumberField, QuadraticSpace};
use rand::seq::SliceRandom;
use rand::Rng;

pub const SMALL: [i64; 10] = [1, 2, 3, 5, 6, 7, 10, 11, 13, 15];

pub fn q_diag(entries: &[i64]) -> AnySpace {
    let q = NumberField::rationals();
    HermitianSpace::from_diagonal(entries.iter().map(|&x| q.from_rational(rat(x))).collect()).unwrap().into()
}

pub fn q_sqrt2() -> Arc<NumberField> {
    NumberField::from_integers(&[-2, 0, 1]).unwrap()
}

pub fn q_sqrt5() -> Arc<NumberField> {
    NumberField::from_integers(&[-5, 0, 1]).unwrap()
}

pub fn cubic() -> Arc<NumberField> {
    NumberField::from_integers(&[-1, -2, 1, 1]).unwrap()
}

pub fn quartic() -> Arc<NumberField> {
    NumberField::from_integers(&[2, 0, -4, 0, 1]).unwrap()
}

pub fn totally_real_fields() -> Vec<Arc<NumberField>> {
    vec![NumberField::rationals(), q_sqrt2(), q_sqrt5(), cubic(), quartic()]
}

pub fn cm_fields() -> Vec<Arc<CmField>> {
    let q = NumberField::rationals();
    let e0 = q_sqrt2();
    let t = &e0.generator() - &e0.from_rational(rat(3));
    vec![
        CmField::gaussian(),
        CmField::new(q.clone(), q.from_rational(rat(-2))).unwrap(),
        CmField::new(q.clone(), q.from_rational(rat(-3))).unwrap(),
        CmField::new(e0.clone(), t).unwrap(),
        CmField::new(e0.clone(), e0.from_rational(rat(-1))).unwrap(),
    ]
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            return Rational::new(n.into(), rng.gen_range(1..=bound).into());
        }
    }
}

pub fn random_element<R: Rng>(rng: &mut R, field: &Arc<NumberField>, bound: i64) -> FieldElement {
    loop {
        let coeffs: Vec<i64> = (0..field.degree()).map(|_| rng.gen_range(-bound..=bound)).collect();
        let e = field.element_from_integers(&coeffs).unwrap();
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn random_cm_element<R: Rng>(rng: &mut R, field: &Arc<CmField>, bound: i64) -> CmElement {
    loop {
        let coeffs: Vec<Rational> = (0..field.degree()).map(|_| rat(rng.gen_range(-bound..=bound))).collect();
        let e = field.element_from_coeffs(coeffs).unwrap();
        if !e.is_zero() {
            return e;
        }
    }
}

/// Nonzero elements with small coefficients, grouped by their sign vector over the real embeddings.
pub struct SignPool {
    pub field: Arc<NumberField>,
    pub by_signs: BTreeMap<Vec<i8>, Vec<FieldElement>>,
}

impl SignPool {
    pub fn new(field: Arc<NumberField>, bound: i64) -> Self {
        let n = field.degree();
        let mut by_signs: BTreeMap<Vec<i8>, Vec<FieldElement>> = BTreeMap::new();
        let width = (2 * bound + 1) as usize;
        for code in 0..width.pow(n as u32) {
            let mut c = code;
            let coeffs: Vec<i64> = (0..n)
                .map(|_| {
                    let v = (c % width) as i64 - bound;
                    c /= width;
                    v
                })
                .collect();
            let e = field.element_from_integers(&coeffs).unwrap();
            if e.is_zero() {
                continue;
            }
            let signs: Vec<i8> = (0..n).map(|i| e.sign_at_index(i).unwrap()).collect();
            by_signs.entry(signs).or_default().push(e);
        }
        SignPool { field, by_signs }
    }

    pub fn pick<R: Rng>(&self, rng: &mut R, signs: &[i8]) -> Option<FieldElement> {
        self.by_signs.get(signs).and_then(|v| v.choose(rng)).map(|e| e.scale(&rat(*SMALL.choose(rng).unwrap())))
    }

    pub fn any<R: Rng>(&self, rng: &mut R) -> FieldElement {
        let keys: Vec<&Vec<i8>> = self.by_signs.keys().collect();
        let k = keys.choose(rng).unwrap();
        self.pick(rng, k).unwrap()
    }
}

/// A diagonal with prescribed signature pattern at one embedding (the rest totally negative), or
/// with probability `noise` per entry a random element.
pub fn near_k3_diagonal<R: Rng>(rng: &mut R, pool: &SignPool, m: usize, positives: usize, noise: f64) -> Vec<FieldElement> {
    let n = pool.field.degree();
    let sigma0 = rng.gen_range(0..n);
    let mut at_sigma0 = vec![-1i8; n];
    at_sigma0[sigma0] = 1;
    let negative = vec![-1i8; n];
    (0..m)
        .map(|k| {
            if rng.gen_bool(noise) {
                return pool.any(rng);
            }
            let want = if k < positives { &at_sigma0 } else { &negative };
            pool.pick(rng, want).unwrap_or_else(|| pool.any(rng))
        })
        .collect()
}

pub fn random_tr_space<R: Rng>(rng: &mut R, pool: &SignPool, m: usize, noise: f64) -> AnySpace {
    let d = near_k3_diagonal(rng, pool, m, 2, noise);
    HermitianSpace::from_diagonal(d).unwrap().into()
}

pub fn random_cm_space<R: Rng>(rng: &mut R, cm: &Arc<CmField>, pool: &SignPool, m: usize, noise: f64) -> AnySpace {
    let d = near_k3_diagonal(rng, pool, m, 1, noise);
    HermitianSpace::from_diagonal(d.into_iter().map(|e| cm.from_base(e)).collect()).unwrap().into()
}

/// A random invertible matrix over the field, as rows.
pub fn random_invertible_tr<R: Rng>(rng: &mut R, field: &Arc<NumberField>, n: usize) -> Vec<Vec<FieldElement>> {
    loop {
        let t: Vec<Vec<FieldElement>> = (0..n)
            .map(|_| (0..n).map(|_| if rng.gen_bool(0.3) { field.zero() } else { random_element(rng, field, 2) }).collect())
            .collect();
        if invertible(&t) {
            return t;
        }
    }
}

pub fn random_invertible_cm<R: Rng>(rng: &mut R, field: &Arc<CmField>, n: usize) -> Vec<Vec<CmElement>> {
    loop {
        let t: Vec<Vec<CmElement>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| if rng.gen_bool(0.3) { field.from_rational(rat(0)) } else { random_cm_element(rng, field, 2) })
                    .collect()
            })
            .collect();
        if invertible_cm(&t) {
            return t;
        }
    }
}

fn invertible(t: &[Vec<FieldElement>]) -> bool {
    let mut a: Vec<Vec<FieldElement>> = t.to_vec();
    let n = a.len();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return false };
        a.swap(c, p);
        let inv = a[c][c].inv().unwrap();
        for r in c + 1..n {
            let f = &a[r][c] * &inv;
            for k in c..n {
                a[r][k] = &a[r][k] - &(&f * &a[c][k]);
            }
        }
    }
    true
}

fn invertible_cm(t: &[Vec<CmElement>]) -> bool {
    let mut a: Vec<Vec<CmElement>> = t.to_vec();
    let n = a.len();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return false };
        a.swap(c, p);
        let inv = a[c][c].inv().unwrap();
        for r in c + 1..n {
            let f = &a[r][c] * &inv;
            for k in c..n {
                a[r][k] = &a[r][k] - &(&f * &a[c][k]);
            }
        }
    }
    true
}

pub fn random_rational_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<Rational>> {
    (0..n).map(|_| (0..n).map(|_| Rational::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=2).into())).collect()).collect()
}

pub fn random_symmetric_gram<R: Rng>(rng: &mut R, n: usize) -> QuadraticSpace {
    loop {
        let mut g = vec![vec![rat(0); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=3).into());
                g[i][j] = v.clone();
                g[j][i] = v;
            }
        }
        if let Ok(q) = QuadraticSpace::new(g) {
            return q;
        }
    }
}

pub fn random_diagonal_space<R: Rng>(rng: &mut R, n: usize) -> QuadraticSpace {
    let entries: Vec<i64> = (0..n).map(|_| SMALL.choose(rng).unwrap() * if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    QuadraticSpace::from_integer_diagonal(&entries).unwrap()
}

pub fn same_invariants(a: &QuadraticSpace, b: &QuadraticSpace) -> bool {
    a.rank() == b.rank() && a.signature() == b.signature() && a.disc() == b.disc() && a.hasse() == b.hasse()
}
