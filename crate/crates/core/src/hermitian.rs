//! Hermitian spaces over totally real and CM fields, and their trace forms.

use std::fmt;

use nalgebra::Complex;
use num_traits::Zero;

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};
use crate::linalg::{diagonalize_congruence, Congruence, StarField};
use crate::number_field::{CmElement, CmField, FieldElement, FieldKind};
use crate::quadratic::QuadraticSpace;
use std::sync::Arc;

/// Scalars a hermitian space can live over.
pub trait HermitianScalar: StarField + fmt::Display {
    /// `[E:Q]`.
    fn q_degree(&self) -> usize;
    /// A Q-basis of `E`.
    fn q_basis(&self) -> Vec<Self>;
    fn trace_q(&self) -> Rational;
    /// Number of localizations: real embeddings, or conjugate pairs for CM fields.
    fn place_count(&self) -> usize;
    /// Sign of an involution-fixed element at a place.
    fn sign_at_place(&self, place: usize) -> Result<i8>;
    /// Value at a place; for CM fields the embedding with `Im σ(θ) > 0`.
    fn numeric_at_place(&self, place: usize) -> Complex<f64>;
    fn kind(&self) -> FieldKind;
}

impl HermitianScalar for FieldElement {
    fn q_degree(&self) -> usize {
        self.field().degree()
    }
    fn q_basis(&self) -> Vec<Self> {
        self.field().power_basis()
    }
    fn trace_q(&self) -> Rational {
        self.trace()
    }
    fn place_count(&self) -> usize {
        self.field().real_embeddings().len()
    }
    fn sign_at_place(&self, place: usize) -> Result<i8> {
        self.sign_at_index(place)
    }
    fn numeric_at_place(&self, place: usize) -> Complex<f64> {
        Complex::new(self.to_f64_at(place), 0.0)
    }
    fn kind(&self) -> FieldKind {
        self.field().kind()
    }
}

impl HermitianScalar for CmElement {
    fn q_degree(&self) -> usize {
        self.field().degree()
    }
    fn q_basis(&self) -> Vec<Self> {
        self.field().basis()
    }
    fn trace_q(&self) -> Rational {
        self.trace()
    }
    fn place_count(&self) -> usize {
        self.field().pair_count()
    }
    fn sign_at_place(&self, place: usize) -> Result<i8> {
        if !self.is_real() {
            return Err(Error::Precondition("sign requested for an element outside E0".into()));
        }
        self.re().sign_at_index(place)
    }
    fn numeric_at_place(&self, place: usize) -> Complex<f64> {
        self.to_complex_at(place)
    }
    fn kind(&self) -> FieldKind {
        FieldKind::Cm
    }
}

/// A nondegenerate hermitian space `(V, Φ)` given by its Gram matrix on an E-basis.
#[derive(Debug, Clone)]
pub struct HermitianSpace<K> {
    gram: Vec<Vec<K>>,
    congruence: Congruence<K>,
    signatures: Vec<(usize, usize)>,
}

impl<K: HermitianScalar> HermitianSpace<K> {
    pub fn new(gram: Vec<Vec<K>>) -> Result<Self> {
        let m = gram.len();
        if m == 0 {
            return Err(Error::InvalidInput("form dimension must be at least 1".into()));
        }
        if gram.iter().any(|row| row.len() != m) {
            return Err(Error::NotSquare);
        }
        for i in 0..m {
            for j in i..m {
                if gram[j][i] != gram[i][j].conj() {
                    return Err(Error::NotHermitian(i, j));
                }
            }
        }
        let congruence = diagonalize_congruence(&gram)?;
        for (k, d) in congruence.diagonal.iter().enumerate() {
            if d.conj() != *d {
                return Err(Error::NonFixedDiagonal(k));
            }
        }
        let places = gram[0][0].place_count();
        let mut signatures = Vec::with_capacity(places);
        for place in 0..places {
            let mut pos = 0;
            for d in &congruence.diagonal {
                if d.sign_at_place(place)? > 0 {
                    pos += 1;
                }
            }
            signatures.push((pos, m - pos));
        }
        Ok(HermitianSpace { gram, congruence, signatures })
    }

    pub fn from_diagonal(entries: Vec<K>) -> Result<Self> {
        let zero = entries
            .first()
            .ok_or_else(|| Error::InvalidInput("form dimension must be at least 1".into()))?
            .zero_like();
        let m = entries.len();
        let gram = (0..m)
            .map(|i| (0..m).map(|j| if i == j { entries[i].clone() } else { zero.clone() }).collect())
            .collect();
        HermitianSpace::new(gram)
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<K>] {
        &self.gram
    }

    /// `d_j = Φ(u_j, u_j)` for an orthogonal basis `u_j`.
    pub fn diagonal(&self) -> &[K] {
        &self.congruence.diagonal
    }

    /// Row `j` holds the coordinates of `u_j` in the original basis.
    pub fn diagonal_basis(&self) -> &[Vec<K>] {
        &self.congruence.basis
    }

    pub fn kind(&self) -> FieldKind {
        self.gram[0][0].kind()
    }

    /// `[E:Q]`.
    pub fn field_degree(&self) -> usize {
        self.gram[0][0].q_degree()
    }

    /// `(p, q)` at each real embedding (totally real) or conjugate pair (CM).
    pub fn localization_signatures(&self) -> &[(usize, usize)] {
        &self.signatures
    }

    /// The Q-form `tr∘Φ` on the basis `e_i·u_j`, indexed `j·[E:Q] + i`.
    pub fn trace_form(&self) -> Result<QuadraticSpace> {
        let basis = self.gram[0][0].q_basis();
        let n = basis.len();
        let m = self.dim();
        let products: Vec<Vec<K>> =
            basis.iter().map(|a| basis.iter().map(|b| a.times(&b.conj())).collect()).collect();
        let mut out = vec![vec![Rational::zero(); n * m]; n * m];
        for j in 0..m {
            for jj in j..m {
                let phi = &self.gram[j][jj];
                if phi.is_zero_elem() {
                    continue;
                }
                for i in 0..n {
                    for ii in 0..n {
                        let t = products[i][ii].times(phi).trace_q();
                        out[jj * n + ii][j * n + i] = t.clone();
                        out[j * n + i][jj * n + ii] = t;
                    }
                }
            }
        }
        QuadraticSpace::new(out)
    }

    /// Gram of the basis `v_k = Σ_l t[k][l]·u_l`.
    pub fn transform(&self, t: &[Vec<K>]) -> Result<Self> {
        let m = self.dim();
        if t.len() != m || t.iter().any(|r| r.len() != m) {
            return Err(Error::NotSquare);
        }
        let zero = self.gram[0][0].zero_like();
        let mut gt = vec![vec![zero.clone(); m]; m];
        for k in 0..m {
            for l2 in 0..m {
                let mut acc = zero.clone();
                for l in 0..m {
                    acc = acc.plus(&t[k][l].times(&self.gram[l][l2]));
                }
                gt[k][l2] = acc;
            }
        }
        let gram = (0..m)
            .map(|k| {
                (0..m)
                    .map(|k2| {
                        (0..m).fold(zero.clone(), |acc, l2| acc.plus(&gt[k][l2].times(&t[k2][l2].conj())))
                    })
                    .collect()
            })
            .collect();
        HermitianSpace::new(gram)
    }
}

impl HermitianSpace<FieldElement> {
    /// `⊕_j Tr_E<d_j>`.
    pub fn trace_form_decomposition(&self) -> Result<Vec<QuadraticSpace>> {
        let field = self.gram[0][0].field().clone();
        self.diagonal().iter().map(|d| field.trace_pairing_gram(d)).collect()
    }
}

impl HermitianSpace<CmElement> {
    pub fn cm_field(&self) -> &Arc<CmField> {
        self.gram[0][0].field()
    }

    /// The diagonal entries as elements of `E0`.
    pub fn base_diagonal(&self) -> Vec<FieldElement> {
        self.diagonal().iter().map(|d| d.re().clone()).collect()
    }

    /// `⊕_j (Tr_{E0}<d_j>(2) ⊕ Tr_{E0}<-θ²d_j>(2))`.
    pub fn trace_form_decomposition(&self) -> Result<Vec<QuadraticSpace>> {
        let cm = self.cm_field();
        let base = cm.base();
        let minus_t = -cm.theta_sq();
        let two = rat(2);
        let mut out = Vec::with_capacity(2 * self.dim());
        for d in self.base_diagonal() {
            out.push(base.trace_pairing_gram(&d)?.scale(&two)?);
            out.push(base.trace_pairing_gram(&(&minus_t * &d))?.scale(&two)?);
        }
        Ok(out)
    }

    /// `Φ0(u_j, u_k) = Φ(u_j, u_k) + Φ(u_k, u_j)` as a symmetric form over `E0`.
    pub fn phi_zero(&self) -> Result<HermitianSpace<FieldElement>> {
        let gram = self
            .gram
            .iter()
            .map(|row| row.iter().map(|g| g.re().scale(&rat(2))).collect())
            .collect();
        HermitianSpace::new(gram)
    }
}

/// A hermitian space over either kind of field.
#[derive(Debug, Clone)]
pub enum AnySpace {
    TotallyReal(HermitianSpace<FieldElement>),
    Cm(HermitianSpace<CmElement>),
}

impl AnySpace {
    pub fn dim(&self) -> usize {
        match self {
            AnySpace::TotallyReal(s) => s.dim(),
            AnySpace::Cm(s) => s.dim(),
        }
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            AnySpace::TotallyReal(s) => s.kind(),
            AnySpace::Cm(_) => FieldKind::Cm,
        }
    }

    pub fn field_degree(&self) -> usize {
        match self {
            AnySpace::TotallyReal(s) => s.field_degree(),
            AnySpace::Cm(s) => s.field_degree(),
        }
    }

    pub fn localization_signatures(&self) -> &[(usize, usize)] {
        match self {
            AnySpace::TotallyReal(s) => s.localization_signatures(),
            AnySpace::Cm(s) => s.localization_signatures(),
        }
    }

    pub fn trace_form(&self) -> Result<QuadraticSpace> {
        match self {
            AnySpace::TotallyReal(s) => s.trace_form(),
            AnySpace::Cm(s) => s.trace_form(),
        }
    }

    pub fn trace_form_decomposition(&self) -> Result<Vec<QuadraticSpace>> {
        match self {
            AnySpace::TotallyReal(s) => s.trace_form_decomposition(),
            AnySpace::Cm(s) => s.trace_form_decomposition(),
        }
    }

    /// Diagonal entries rendered for reports.
    pub fn diagonal_strings(&self) -> Vec<String> {
        match self {
            AnySpace::TotallyReal(s) => s.diagonal().iter().map(ToString::to_string).collect(),
            AnySpace::Cm(s) => s.base_diagonal().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn field_warnings(&self) -> Vec<String> {
        match self {
            AnySpace::TotallyReal(s) => s.gram[0][0].field().warnings().to_vec(),
            AnySpace::Cm(s) => s.cm_field().base().warnings().to_vec(),
        }
    }
}

impl From<HermitianSpace<FieldElement>> for AnySpace {
    fn from(s: HermitianSpace<FieldElement>) -> Self {
        AnySpace::TotallyReal(s)
    }
}

impl From<HermitianSpace<CmElement>> for AnySpace {
    fn from(s: HermitianSpace<CmElement>) -> Self {
        AnySpace::Cm(s)
    }
}
