//! Deciding whether a hermitian space is of K3 type.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{hilbert_symbol, is_square_local, square_class, Place, Prime, Rational, SquareClass};
use crate::error::{Error, Result};
use crate::hermitian::{AnySpace, HermitianSpace};
use crate::number_field::{CmElement, FieldElement, FieldKind};
use crate::quadratic::{embeds_into_lambda_q, lambda_space, relevant_primes, witt_embeds, QuadraticSpace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl Condition {
    fn new(name: &str, passed: bool, details: impl Into<String>) -> Self {
        Condition { name: name.to_string(), passed, details: details.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K3Verdict {
    pub is_k3_type: bool,
    pub route: String,
    pub conditions: Vec<Condition>,
    pub warnings: Vec<String>,
}

impl K3Verdict {
    fn from_conditions(route: &str, conditions: Vec<Condition>, warnings: Vec<String>) -> Self {
        let is_k3_type = conditions.iter().all(|c| c.passed);
        K3Verdict { is_k3_type, route: route.to_string(), conditions, warnings }
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureCheck {
    pub passed: bool,
    /// Index of the distinguished real embedding, or conjugate pair for CM fields.
    pub sigma0: Option<usize>,
    pub details: String,
}

/// One place with signature `(2, m-2)` (resp. `(1, m-1)` for CM) and `(0, m)` at all others.
pub fn signature_condition(space: &AnySpace) -> SignatureCheck {
    let m = space.dim();
    let sigs = space.localization_signatures();
    let (min_m, wanted) = match space.kind() {
        FieldKind::Cm => (1, (1, m.saturating_sub(1))),
        _ => (3, (2, m.saturating_sub(2))),
    };
    let listing: Vec<String> = sigs.iter().map(|(p, q)| format!("({p},{q})")).collect();
    let listing = listing.join(", ");
    if space.kind() == FieldKind::Generic {
        return SignatureCheck {
            passed: false,
            sigma0: None,
            details: "field is neither totally real nor CM".into(),
        };
    }
    if m < min_m {
        return SignatureCheck {
            passed: false,
            sigma0: None,
            details: format!("m = {m} < {min_m}; localization signatures {listing}"),
        };
    }
    let hits: Vec<usize> = (0..sigs.len()).filter(|&i| sigs[i] == wanted).collect();
    let others_definite = sigs.iter().enumerate().all(|(i, s)| hits.first() == Some(&i) || *s == (0, m));
    if hits.len() == 1 && others_definite {
        SignatureCheck {
            passed: true,
            sigma0: Some(hits[0]),
            details: format!("sigma0 = {}; localization signatures {listing}", hits[0]),
        }
    } else {
        SignatureCheck {
            passed: false,
            sigma0: None,
            details: format!(
                "need exactly one ({},{}) and (0,{m}) elsewhere; localization signatures {listing}",
                wanted.0, wanted.1
            ),
        }
    }
}

fn require_decidable(space: &AnySpace) -> Result<()> {
    if space.kind() == FieldKind::Generic {
        return Err(Error::Precondition("field is neither totally real nor CM".into()));
    }
    Ok(())
}

fn common_warnings(space: &AnySpace) -> Vec<String> {
    let mut warnings = space.field_warnings();
    if let AnySpace::Cm(s) = space {
        if s.phi_zero().is_err() {
            warnings.push("the symmetric form Phi0 = Phi + Phi^t over E0 is degenerate on this basis".into());
        }
    }
    warnings
}

/// Embedding of the trace form into `Λ⊗Q` together with the signature condition.
pub fn is_k3_type(space: &AnySpace) -> Result<K3Verdict> {
    require_decidable(space)?;
    let trace = space.trace_form()?;
    let (pos, neg) = trace.signature();
    let embeds = if pos == 2 { embeds_into_lambda_q(&trace)? } else { witt_embeds(&trace, &lambda_space()) };
    let mut conditions = vec![Condition::new(
        "lattice_embedding",
        embeds,
        format!("trace form of rank {} and signature ({pos},{neg}), disc {}", trace.rank(), trace.disc()),
    )];
    let sig = signature_condition(space);
    conditions.push(Condition::new("signature", sig.passed, sig.details));
    Ok(K3Verdict::from_conditions("theorem1", conditions, common_warnings(space)))
}

fn parity(p: &Prime) -> i8 {
    p.parity_sign()
}

fn is_square_at(c: &SquareClass, p: &Prime) -> bool {
    is_square_local(&c.to_rational(), &Place::Finite(p.clone())).expect("square classes are nonzero")
}

fn join_primes(ps: &BTreeSet<Prime>) -> String {
    let v: Vec<String> = ps.iter().map(ToString::to_string).collect();
    format!("{{{}}}", v.join(","))
}

fn product_norm(ds: &[FieldElement]) -> Rational {
    let prod = ds[1..].iter().fold(ds[0].clone(), |acc, d| &acc * d);
    prod.norm()
}

fn totally_real_route(space: &HermitianSpace<FieldElement>, any: &AnySpace) -> Result<K3Verdict> {
    let m = space.dim();
    let field = space.gram()[0][0].field().clone();
    let r = field.degree();
    let mut conditions = vec![
        Condition::new("m_range", (3..=21).contains(&m), format!("3 <= m <= 21 with m = {m}")),
        Condition::new("r_range", r >= 1 && m * r <= 21, format!("1 <= r <= 21/m with r = {r}, mr = {}", m * r)),
    ];
    let sig = signature_condition(any);
    conditions.push(Condition::new("signature", sig.passed, sig.details));

    let mr = m * r;
    if mr == 20 || mr == 21 {
        let d = space.diagonal();
        let pieces: Vec<QuadraticSpace> = d.iter().map(|dj| field.trace_pairing_gram(dj)).collect::<Result<_>>()?;
        let sum = QuadraticSpace::direct_sum_all(&pieces);
        let d_field = field.trace_pairing_gram(&field.one())?.disc().clone();
        let test = d_field.pow(m as u64).mul(&square_class(&product_norm(d))?);
        let primes = relevant_primes(&[&sum]);
        let checked: BTreeSet<Prime> = primes.into_iter().filter(|p| mr == 21 || is_square_at(&test, p)).collect();
        let bad: BTreeSet<Prime> = checked.iter().filter(|p| sum.hasse_invariant(p) != parity(p)).cloned().collect();
        conditions.push(Condition::new(
            "edge_local",
            bad.is_empty(),
            format!(
                "mr = {mr}: epsilon_p(sum Tr<d_j>) = (-1)^(p-1) required at {}; violated at {}",
                join_primes(&checked),
                join_primes(&bad)
            ),
        ));
    } else {
        conditions.push(Condition::new("edge_local", true, format!("mr = {mr}: no local condition")));
    }
    Ok(K3Verdict::from_conditions("corollary4", conditions, common_warnings(any)))
}

fn cm_route(space: &HermitianSpace<CmElement>, any: &AnySpace) -> Result<K3Verdict> {
    let m = space.dim();
    let cm = space.cm_field().clone();
    let base = cm.base().clone();
    let s = base.degree();
    let mut conditions = vec![
        Condition::new("m_range", (1..=10).contains(&m), format!("1 <= m <= 10 with m = {m}")),
        Condition::new("s_range", s >= 1 && m * s <= 10, format!("1 <= s <= 10/m with s = {s}, ms = {}", m * s)),
    ];
    let sig = signature_condition(any);
    conditions.push(Condition::new("signature", sig.passed, sig.details));

    if m * s == 10 {
        let d = space.base_diagonal();
        let minus_t = -cm.theta_sq();
        let a_pieces: Vec<QuadraticSpace> = d.iter().map(|dj| base.trace_pairing_gram(dj)).collect::<Result<_>>()?;
        let b_pieces: Vec<QuadraticSpace> =
            d.iter().map(|dj| base.trace_pairing_gram(&(&minus_t * dj))).collect::<Result<_>>()?;
        let a = QuadraticSpace::direct_sum_all(&a_pieces);
        let b = QuadraticSpace::direct_sum_all(&b_pieces);
        let theta_norm = square_class(&cm.theta().norm())?;
        let test = theta_norm.pow(m as u64);
        let d_base = base.trace_pairing_gram(&base.one())?.disc().clone();
        let two_s = SquareClass::from_squarefree(2).expect("2 is squarefree").pow(s as u64);
        let arg = two_s.mul(&d_base.pow(m as u64)).mul(&square_class(&product_norm(&d))?);
        let primes = relevant_primes(&[&a, &b]);
        let checked: BTreeSet<Prime> = primes.into_iter().filter(|p| is_square_at(&test, p)).collect();
        let bad: BTreeSet<Prime> = checked
            .iter()
            .filter(|p| {
                let rhs = parity(p)
                    * hilbert_symbol(&arg.to_rational(), &Rational::from_integer((-1).into()), &Place::Finite((*p).clone()))
                        .expect("nonzero");
                a.hasse_invariant(p) * b.hasse_invariant(p) != rhs
            })
            .cloned()
            .collect();
        conditions.push(Condition::new(
            "edge_local",
            bad.is_empty(),
            format!(
                "ms = 10: epsilon_p(A)*epsilon_p(B) = (-1)^(p-1)*(2^s d^m N(disc), -1)_p required at {}; violated at {}",
                join_primes(&checked),
                join_primes(&bad)
            ),
        ));
    } else {
        conditions.push(Condition::new("edge_local", true, format!("ms = {}: no local condition", m * s)));
    }
    Ok(K3Verdict::from_conditions("corollary4cm", conditions, common_warnings(any)))
}

/// The direct conditions on `m`, the field degree, signatures and edge-case Hasse invariants.
pub fn corollary_route(space: &AnySpace) -> Result<K3Verdict> {
    require_decidable(space)?;
    match space {
        AnySpace::TotallyReal(s) => totally_real_route(s, space),
        AnySpace::Cm(s) => cm_route(s, space),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmissibleCase {
    TotallyReal,
    Cm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissible {
    pub necessary: BTreeSet<(usize, usize)>,
    pub sufficient: BTreeSet<(usize, usize)>,
}

/// Pairs `(m, r)` (resp. `(m, s)`) for fields other than Q (resp. `E0 ≠ Q`).
pub fn enumerate_admissible(case: AdmissibleCase) -> Admissible {
    let (min_m, bound, suff_bound) = match case {
        AdmissibleCase::TotallyReal => (3, 21, 19),
        AdmissibleCase::Cm => (1, 10, 9),
    };
    let mut necessary = BTreeSet::new();
    let mut sufficient = BTreeSet::new();
    for m in min_m..=bound {
        for r in 2..=bound / m {
            necessary.insert((m, r));
            if m * r <= suff_bound {
                sufficient.insert((m, r));
            }
        }
    }
    Admissible { necessary, sufficient }
}

/// Compact form such as `(3,≤7), (4,≤5), (6,3), (6,2)`.
pub fn compact_notation(pairs: &BTreeSet<(usize, usize)>) -> String {
    let ms: BTreeSet<usize> = pairs.iter().map(|p| p.0).collect();
    let mut parts = Vec::new();
    for m in ms {
        let rs: Vec<usize> = pairs.iter().filter(|p| p.0 == m).map(|p| p.1).rev().collect();
        let max = rs[0];
        if max >= 4 && rs.len() == max - 1 {
            parts.push(format!("({m},≤{max})"));
        } else {
            parts.extend(rs.iter().map(|r| format!("({m},{r})")));
        }
    }
    parts.join(", ")
}
