//! Numeric period vectors `f` with `B(f,f) = 0` and `B(f,f̄) > 0`, and the
//! rank-two obstruction.

use std::cmp::Ordering;

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decision::signature_condition;
use crate::error::{Error, Result};
use crate::hermitian::{AnySpace, HermitianScalar, HermitianSpace};
use crate::linalg::StarField;
use crate::number_field::{FieldElement, FieldKind};
use num_traits::ToPrimitive;

type C64 = Complex<f64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessChecks {
    /// `|B(f, f)|`.
    pub b_ff_residual: f64,
    /// `B(f, f̄)`, real up to rounding.
    pub b_ffbar: f64,
    /// `B(f, f̄)` as predicted by the closed formula of the construction.
    pub b_ffbar_predicted: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodWitness {
    /// 1 and 2 for totally real fields with `m >= 4` and `m = 3`, 4 for CM fields.
    pub case: u8,
    pub sigma0: usize,
    pub seed: u64,
    /// The random parameters `x_i` (and `y_i`), real and imaginary parts interleaved for CM.
    pub parameters: Vec<f64>,
    /// Coordinates of `f` on the Q-basis `e_i·w_k` (index `k·[E:Q] + i`) of `V`.
    pub f_real: Vec<f64>,
    pub f_imag: Vec<f64>,
    pub checks: WitnessChecks,
}

/// Sorts indices so that `σ0(d_1) ≥ σ0(d_2) ≥ …`, comparing exactly.
fn sorted_order<K: HermitianScalar>(diag: &[K], place: usize) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..diag.len()).collect();
    let mut err = None;
    order.sort_by(|&a, &b| {
        let diff = diag[b].minus(&diag[a]);
        if diff.is_zero_elem() {
            return Ordering::Equal;
        }
        match diff.sign_at_place(place) {
            Ok(s) if s > 0 => Ordering::Greater,
            Ok(_) => Ordering::Less,
            Err(e) => {
                err = Some(e);
                Ordering::Equal
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(order),
    }
}

/// `σ(e_i)` for every embedding σ of E, with `place` first.
fn embedding_matrix<K: HermitianScalar>(sample: &K, place: usize) -> DMatrix<C64> {
    let basis = sample.q_basis();
    let n = basis.len();
    let places = sample.place_count();
    let mut rows: Vec<(usize, bool)> = vec![(place, false)];
    rows.extend((0..places).filter(|&p| p != place).map(|p| (p, false)));
    if sample.kind() == FieldKind::Cm {
        rows.extend((0..places).map(|p| (p, true)));
    }
    DMatrix::from_fn(n, n, |r, i| {
        let (p, conj) = rows[r];
        let v = basis[i].numeric_at_place(p);
        if conj {
            v.conj()
        } else {
            v
        }
    })
}

/// Q-coordinates of `Σ_j c_j u_j ⊗ 1` in `V ⊗_{E,σ0} C`.
fn rational_coordinates<K: HermitianScalar>(space: &HermitianSpace<K>, place: usize, c: &[(usize, C64)]) -> Result<Vec<C64>> {
    let sample = &space.gram()[0][0];
    let m = space.dim();
    let mut w = vec![C64::new(0.0, 0.0); m];
    for &(j, cj) in c {
        for (l, wl) in w.iter_mut().enumerate() {
            *wl += cj * space.diagonal_basis()[j][l].numeric_at_place(place);
        }
    }
    let mat = embedding_matrix(sample, place);
    let n = mat.nrows();
    let mut e0 = DVector::from_element(n, C64::new(0.0, 0.0));
    e0[0] = C64::new(1.0, 0.0);
    let v = mat
        .lu()
        .solve(&e0)
        .ok_or_else(|| Error::Internal("embedding matrix is singular".into()))?;
    let mut out = Vec::with_capacity(m * n);
    for wl in &w {
        for vi in v.iter() {
            out.push(wl * vi);
        }
    }
    Ok(out)
}

fn bilinear(gram: &[Vec<f64>], x: &[C64], y: &[C64]) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (a, row) in gram.iter().enumerate() {
        let mut inner = C64::new(0.0, 0.0);
        for (b, g) in row.iter().enumerate() {
            inner += y[b] * *g;
        }
        acc += x[a] * inner;
    }
    acc
}

fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| {
            // Box–Muller
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen();
            (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn finish<K: HermitianScalar>(
    space: &HermitianSpace<K>,
    case: u8,
    sigma0: usize,
    seed: u64,
    parameters: Vec<f64>,
    coeffs: Vec<(usize, C64)>,
    predicted: f64,
    tolerance: f64,
) -> Result<PeriodWitness> {
    let x = rational_coordinates(space, sigma0, &coeffs)?;
    let trace = space.trace_form()?;
    let gram: Vec<Vec<f64>> = trace
        .gram()
        .iter()
        .map(|row| row.iter().map(|g| g.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let xbar: Vec<C64> = x.iter().map(|v| v.conj()).collect();
    let b_ff = bilinear(&gram, &x, &x);
    let b_ffbar = bilinear(&gram, &x, &xbar);
    let residual = b_ff.norm();
    let value = b_ffbar.re;
    let passed = residual <= tolerance * value.max(1.0) && value > 0.0;
    Ok(PeriodWitness {
        case,
        sigma0,
        seed,
        parameters,
        f_real: x.iter().map(|v| v.re).collect(),
        f_imag: x.iter().map(|v| v.im).collect(),
        checks: WitnessChecks { b_ff_residual: residual, b_ffbar: value, b_ffbar_predicted: predicted, tolerance, passed },
    })
}

fn abs_at<K: HermitianScalar>(d: &K, place: usize) -> f64 {
    d.numeric_at_place(place).re.abs()
}

fn totally_real_witness(
    space: &HermitianSpace<FieldElement>,
    sigma0: usize,
    seed: u64,
    tolerance: f64,
) -> Result<PeriodWitness> {
    let m = space.dim();
    let diag = space.diagonal();
    let order = sorted_order(diag, sigma0)?;
    let s = |k: usize| abs_at(&diag[order[k]], sigma0).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let re = |v: f64| C64::new(v, 0.0);
    if m == 3 {
        let x3: f64 = rng.gen_range(0.05..0.95);
        let coeffs = vec![
            (order[0], re(1.0 / s(0))),
            (order[1], C64::new(0.0, (1.0 - x3 * x3).sqrt() / s(1))),
            (order[2], re(x3 / s(2))),
        ];
        return finish(space, 2, sigma0, seed, vec![x3], coeffs, 2.0 * (1.0 - x3 * x3), tolerance);
    }
    let k = m - 2;
    let x = gaussian_vec(&mut rng, k);
    let mut y = gaussian_vec(&mut rng, k);
    let xx = dot(&x, &x);
    let proj = dot(&x, &y) / xx;
    for (yi, xi) in y.iter_mut().zip(&x) {
        *yi -= proj * xi;
    }
    let lambda: f64 = rng.gen_range(0.1..0.9);
    let sx = lambda / xx.sqrt();
    let sy = lambda / dot(&y, &y).sqrt();
    let x: Vec<f64> = x.iter().map(|v| v * sx).collect();
    let y: Vec<f64> = y.iter().map(|v| v * sy).collect();
    let mut coeffs = vec![(order[0], re(1.0 / s(0))), (order[1], C64::new(0.0, 1.0 / s(1)))];
    for i in 0..k {
        coeffs.push((order[i + 2], C64::new(x[i], y[i]) / s(i + 2)));
    }
    let predicted = 2.0 * (1.0 - dot(&x, &x));
    let parameters = x.iter().chain(&y).copied().collect();
    finish(space, 1, sigma0, seed, parameters, coeffs, predicted, tolerance)
}

fn cm_witness<K: HermitianScalar>(space: &HermitianSpace<K>, sigma0: usize, seed: u64, tolerance: f64) -> Result<PeriodWitness> {
    let m = space.dim();
    let diag = space.diagonal();
    let order = sorted_order(diag, sigma0)?;
    let s = |k: usize| abs_at(&diag[order[k]], sigma0).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![(order[0], C64::new(1.0 / s(0), 0.0))];
    let mut parameters = Vec::new();
    let mut norm2 = 0.0;
    if m > 1 {
        let raw = gaussian_vec(&mut rng, 2 * (m - 1));
        let len = dot(&raw, &raw).sqrt();
        let radius: f64 = rng.gen_range(0.1..0.9);
        for i in 0..m - 1 {
            let xi = C64::new(raw[2 * i], raw[2 * i + 1]) * (radius / len);
            norm2 += xi.norm_sqr();
            parameters.extend([xi.re, xi.im]);
            coeffs.push((order[i + 1], xi / s(i + 1)));
        }
    }
    finish(space, 4, sigma0, seed, parameters, coeffs, 1.0 - norm2, tolerance)
}

/// Builds `f` by the explicit formulas for the cases `m ≥ 4`, `m = 3` (totally real) and CM.
pub fn construct_period_witness(space: &AnySpace, seed: u64, tolerance: f64) -> Result<PeriodWitness> {
    if space.kind() == FieldKind::TotallyReal && space.dim() == 2 {
        return Err(Error::Precondition("m = 2 over a totally real field: no period exists (see case3_obstruction)".into()));
    }
    let check = signature_condition(space);
    let sigma0 = match (check.passed, check.sigma0) {
        (true, Some(s)) => s,
        _ => return Err(Error::Precondition(format!("signature condition fails: {}", check.details))),
    };
    match space {
        AnySpace::TotallyReal(s) => totally_real_witness(s, sigma0, seed, tolerance),
        AnySpace::Cm(s) => cm_witness(s, sigma0, seed, tolerance),
    }
}

/// The endomorphism `α = [[0, -d1], [d2, 0]]` (`α(u_i) = Σ_j α_ij u_j`) and its eigenvector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case3Obstruction {
    pub sigma0: usize,
    pub d1: String,
    pub d2: String,
    /// `α` entries as field elements.
    pub matrix: Vec<Vec<String>>,
    /// `α` at `σ0`.
    pub matrix_numeric: [[f64; 2]; 2],
    /// `μ = √(-σ0(d1)·σ0(d2))`, principal branch.
    pub eigenvalue: [f64; 2],
    /// `f` on the basis `u_1, u_2` of `V ⊗_{E,σ0} C`: `[re, im]` pairs.
    pub f: [[f64; 2]; 2],
    pub residual: f64,
}

/// The extra Hodge endomorphism for a totally real space of dimension 2.
///
/// `σ0` is the embedding with signature `(2,0)` when there is one, and
/// otherwise the first embedding of signature `(1,1)`.
pub fn case3_obstruction(space: &AnySpace) -> Result<Case3Obstruction> {
    let AnySpace::TotallyReal(s) = space else {
        return Err(Error::Precondition("case 3 needs a totally real field".into()));
    };
    if s.kind() != FieldKind::TotallyReal || s.dim() != 2 {
        return Err(Error::Precondition("case 3 needs m = 2 over a totally real field".into()));
    }
    let sigs = s.localization_signatures();
    let sigma0 = sigs
        .iter()
        .position(|&p| p == (2, 0))
        .or_else(|| sigs.iter().position(|&p| p == (1, 1)))
        .ok_or_else(|| Error::Precondition("no embedding with signature (2,0) or (1,1)".into()))?;
    let diag = s.diagonal();
    let order = sorted_order(diag, sigma0)?;
    let (d1, d2) = (&diag[order[0]], &diag[order[1]]);
    let (a, b) = (d1.to_f64_at(sigma0), d2.to_f64_at(sigma0));
    let mu = C64::new(-a * b, 0.0).sqrt();
    let f = [C64::new(1.0 / a.sqrt(), 0.0), C64::new(-a.sqrt(), 0.0) / mu];
    let alpha = [[0.0, -a], [b, 0.0]];
    let residual = case3_residual(&alpha, &f, mu);
    let zero = d1.zero_like();
    let matrix = vec![vec![zero.to_string(), (-d1).to_string()], vec![d2.to_string(), zero.to_string()]];
    Ok(Case3Obstruction {
        sigma0,
        d1: d1.to_string(),
        d2: d2.to_string(),
        matrix,
        matrix_numeric: alpha,
        eigenvalue: [mu.re, mu.im],
        f: [[f[0].re, f[0].im], [f[1].re, f[1].im]],
        residual,
    })
}

/// `‖α(f) − μ·f‖` with `α(u_i) = Σ_j α_ij u_j`.
pub fn case3_residual(alpha: &[[f64; 2]; 2], f: &[C64; 2], mu: C64) -> f64 {
    let image = [f[0] * alpha[0][0] + f[1] * alpha[1][0], f[0] * alpha[0][1] + f[1] * alpha[1][1]];
    ((image[0] - mu * f[0]).norm_sqr() + (image[1] - mu * f[1]).norm_sqr()).sqrt()
}
