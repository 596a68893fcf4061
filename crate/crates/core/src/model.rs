//! Defining equations of the projective models over `CP^1`.
//!
//! For a pair `(i, j)` with `m_i ≥ m_j` the model lives in
//! `P(O(m_i)^2 ⊕ O(m_j)^2 ⊕ O)` and is cut out by
//!
//! ```text
//! ξ1 ξ2 = c1 ∏_{β≥2} (λ - r_β)^{l_iβ}
//! ξ3 ξ4 = c2 ∏_{β≥2} (λ - r_β)^{l_jβ}
//! ```
//!
//! The full version inside the `P^{2(μ+2)}`-bundle adds
//! `ξ_{2α-1} ξ_{2α} = c_α λ^{2(α-2)} ∏ (λ - r_β)^{l_jβ}` for `2 ≤ α ≤ μ+2`.
//! The point `λ = ∞` (where `r_1` sits) is never a coordinate here: a
//! polynomial vanishes there to the order by which its degree falls short
//! of the bundle degree.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::divisors::TwistorDivisorData;
use crate::poly::{format_rational, parse_rational, rational_serde, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("expected {expected} roots r_3..r_k, got {found}")]
    RootCount { expected: usize, found: usize },
    #[error("roots collide: r_{first} = r_{second} = {value}")]
    RootCollision { first: usize, second: usize, value: String },
    #[error("roots r_3..r_k must share one sign and grow strictly in absolute value (violated at r_{index})")]
    RootOrder { index: usize },
    #[error("constant c_{index} is zero")]
    DegenerateConstants { index: usize },
    #[error("expected {expected} constants, got {found}")]
    ConstantCount { expected: usize, found: usize },
    #[error("divisor data for indices {i} and {j} cannot form a model pair")]
    BadIndices { i: usize, j: usize },
    #[error("divisor data has k = {found}, roots have k = {expected}")]
    KMismatch { expected: usize, found: usize },
    #[error("degree bookkeeping failed for P{index}: degree {degree}, expected {expected}")]
    DegreeMismatch { index: usize, degree: i64, expected: i64 },
}

/// The base points `r_2 = 0, r_3, ..., r_k` of the reducible fibers;
/// `r_1 = ∞` is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalRoots {
    values: Vec<BigRational>,
}

impl ConformalRoots {
    /// Build from `r_3..r_k`.
    pub fn new(k: usize, rest: Vec<BigRational>) -> Result<Self, ModelError> {
        if rest.len() + 2 != k {
            return Err(ModelError::RootCount {
                expected: k.saturating_sub(2),
                found: rest.len(),
            });
        }
        let mut values = vec![BigRational::zero()];
        values.extend(rest);
        for a in 0..values.len() {
            for b in a + 1..values.len() {
                if values[a] == values[b] {
                    return Err(ModelError::RootCollision {
                        first: a + 2,
                        second: b + 2,
                        value: format_rational(&values[a]),
                    });
                }
            }
        }
        let positive = values.get(1).is_some_and(Signed::is_positive);
        for idx in 1..values.len() {
            let wrong_sign = values[idx].is_positive() != positive;
            let not_growing = idx >= 2 && values[idx].abs() <= values[idx - 1].abs();
            if wrong_sign || not_growing {
                return Err(ModelError::RootOrder { index: idx + 2 });
            }
        }
        Ok(Self { values })
    }

    /// `r_β = β - 2`, i.e. `0, 1, ..., k - 2`.
    pub fn evenly_spaced(k: usize) -> Self {
        let rest = (1..k.saturating_sub(1))
            .map(|v| BigRational::from_integer((v as i64).into()))
            .collect();
        Self::new(k, rest).expect("evenly spaced roots are admissible")
    }

    pub fn k(&self) -> usize {
        self.values.len() + 1
    }

    /// `r_β` for `2 ≤ β ≤ k`.
    pub fn root(&self, beta: usize) -> &BigRational {
        &self.values[beta - 2]
    }

    /// `r_2, ..., r_k`.
    pub fn finite(&self) -> &[BigRational] {
        &self.values
    }

    /// A point carrying no reducible fiber: `⌊max |r_β|⌋ + 1`.
    pub fn generic_point(&self) -> BigRational {
        let max = self
            .values
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigRational::zero);
        max.floor() + BigRational::one()
    }
}

impl Serialize for ConformalRoots {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rational_serde::vec::serialize(&self.values, s)
    }
}

impl<'de> Deserialize<'de> for ConformalRoots {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let values = rational_serde::vec::deserialize(d)?;
        if values.first().is_none_or(|v| !v.is_zero()) {
            return Err(serde::de::Error::custom("roots must start with r_2 = 0"));
        }
        let k = values.len() + 1;
        Self::new(k, values[1..].to_vec()).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FiberLocation {
    Infinity,
    Finite(BigRational),
}

impl fmt::Display for FiberLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberLocation::Infinity => f.write_str("inf"),
            FiberLocation::Finite(r) => f.write_str(&format_rational(r)),
        }
    }
}

impl Serialize for FiberLocation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FiberLocation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text == "inf" {
            return Ok(FiberLocation::Infinity);
        }
        parse_rational(&text)
            .map(FiberLocation::Finite)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiberKind {
    /// Irreducible toric fiber with four ordinary double points.
    GenericFourNodal,
    /// Two quadric cones of full rank in two hyperplanes.
    TwoQuadricCones,
    /// Four planes.
    FourPlanes,
}

impl FiberKind {
    /// The kind is decided by how many of the two right-hand sides vanish.
    pub fn from_vanishing(first: bool, second: bool) -> Self {
        match (first, second) {
            (false, false) => FiberKind::GenericFourNodal,
            (true, true) => FiberKind::FourPlanes,
            _ => FiberKind::TwoQuadricCones,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FiberClass {
    pub at: FiberLocation,
    pub kind: FiberKind,
    /// A right-hand side vanishes to order > 1 here, so the model is
    /// singular along a curve in this fiber.
    pub non_reduced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelEquations {
    pub i: usize,
    pub j: usize,
    pub mu: i64,
    pub bundle: [i64; 4],
    #[serde(with = "rational_serde::vec")]
    pub c: Vec<BigRational>,
    #[serde(rename = "P")]
    pub polys: Vec<Polynomial>,
    pub fibers: Vec<FiberClass>,
}

impl ModelEquations {
    pub fn m_i(&self) -> i64 {
        self.bundle[0]
    }

    pub fn m_j(&self) -> i64 {
        self.bundle[2]
    }

    pub fn is_full(&self) -> bool {
        self.polys.len() > 2
    }

    /// `ξ_{2α-1} ξ_{2α} = P_α(λ)` for each emitted polynomial.
    pub fn equation_strings(&self) -> Vec<String> {
        self.polys
            .iter()
            .enumerate()
            .map(|(idx, p)| format!("ξ{}ξ{} = {}", 2 * idx + 1, 2 * idx + 2, p))
            .collect()
    }
}

fn ordered<'a>(
    data_i: &'a TwistorDivisorData,
    data_j: &'a TwistorDivisorData,
) -> Result<(&'a TwistorDivisorData, &'a TwistorDivisorData), ModelError> {
    if data_i.alpha == data_j.alpha || data_i.k() != data_j.k() {
        return Err(ModelError::BadIndices {
            i: data_i.alpha,
            j: data_j.alpha,
        });
    }
    // the pair is used with m_i ≥ m_j
    Ok(if data_i.m < data_j.m {
        (data_j, data_i)
    } else {
        (data_i, data_j)
    })
}

fn root_factors(data: &TwistorDivisorData, roots: &ConformalRoots) -> Vec<(BigRational, usize)> {
    (2..=data.k())
        .filter(|&beta| data.l(beta) > 0)
        .map(|beta| (roots.root(beta).clone(), data.l(beta) as usize))
        .collect()
}

fn emit(
    data_i: &TwistorDivisorData,
    data_j: &TwistorDivisorData,
    roots: &ConformalRoots,
    constants: &[BigRational],
    full: bool,
) -> Result<ModelEquations, ModelError> {
    let (di, dj) = ordered(data_i, data_j)?;
    if di.k() != roots.k() {
        return Err(ModelError::KMismatch {
            expected: roots.k(),
            found: di.k(),
        });
    }
    let mu = di.m - dj.m;
    let expected = if full { mu as usize + 2 } else { 2 };
    if constants.len() != expected {
        return Err(ModelError::ConstantCount {
            expected,
            found: constants.len(),
        });
    }
    if let Some(idx) = constants.iter().position(Zero::is_zero) {
        return Err(ModelError::DegenerateConstants { index: idx + 1 });
    }

    let base_i = Polynomial::from_roots(&BigRational::one(), &root_factors(di, roots));
    let base_j = Polynomial::from_roots(&BigRational::one(), &root_factors(dj, roots));
    let mut polys = vec![base_i.scale(&constants[0])];
    for (offset, c) in constants[1..].iter().enumerate() {
        let p = &Polynomial::monomial(2 * offset) * &base_j;
        polys.push(p.scale(c));
    }

    let check = |index: usize, p: &Polynomial, expected: i64| {
        let degree = p.degree().map_or(-1, |d| d as i64);
        if degree == expected {
            Ok(())
        } else {
            Err(ModelError::DegreeMismatch {
                index,
                degree,
                expected,
            })
        }
    };
    check(1, &polys[0], 2 * di.m - di.l(1))?;
    for (offset, p) in polys.iter().enumerate().skip(1) {
        check(offset + 1, p, 2 * dj.m - dj.l(1) + 2 * (offset as i64 - 1))?;
    }

    let mut eqs = ModelEquations {
        i: di.alpha,
        j: dj.alpha,
        mu,
        bundle: [di.m, di.m, dj.m, dj.m],
        c: constants.to_vec(),
        polys,
        fibers: Vec::new(),
    };
    eqs.fibers = classify_fibers(&eqs, roots);
    Ok(eqs)
}

/// The two equations in `P(O(m_i)^2 ⊕ O(m_j)^2 ⊕ O)`; `constants = [c1, c2]`.
pub fn emit_reduced_model(
    data_i: &TwistorDivisorData,
    data_j: &TwistorDivisorData,
    roots: &ConformalRoots,
    constants: &[BigRational],
) -> Result<ModelEquations, ModelError> {
    emit(data_i, data_j, roots, constants, false)
}

/// All `μ + 2` equations in the `P^{2(μ+2)}`-bundle; `constants = [c1, ..., c_{μ+2}]`.
pub fn emit_full_model(
    data_i: &TwistorDivisorData,
    data_j: &TwistorDivisorData,
    roots: &ConformalRoots,
    constants: &[BigRational],
) -> Result<ModelEquations, ModelError> {
    emit(data_i, data_j, roots, constants, true)
}

/// Vanishing order of a right-hand side at a base point.
fn order_at(p: &Polynomial, bundle_degree: i64, at: &FiberLocation) -> usize {
    match at {
        FiberLocation::Infinity => {
            let deg = p.degree().map_or(0, |d| d as i64);
            (bundle_degree - deg).max(0) as usize
        }
        FiberLocation::Finite(x) => p.multiplicity_at(x).unwrap_or(usize::MAX),
    }
}

/// Fiber types over `∞, r_2, ..., r_k` and one generic point, read off from
/// the vanishing of the two reduced right-hand sides.
pub fn classify_fibers(eqs: &ModelEquations, roots: &ConformalRoots) -> Vec<FiberClass> {
    let mut points = vec![FiberLocation::Infinity];
    points.extend(roots.finite().iter().cloned().map(FiberLocation::Finite));
    points.push(FiberLocation::Finite(roots.generic_point()));

    let (p1, p2) = (&eqs.polys[0], &eqs.polys[1]);
    points
        .into_iter()
        .map(|at| {
            let o1 = order_at(p1, 2 * eqs.m_i(), &at);
            let o2 = order_at(p2, 2 * eqs.m_j(), &at);
            FiberClass {
                kind: FiberKind::from_vanishing(o1 > 0, o2 > 0),
                non_reduced: o1 > 1 || o2 > 1,
                at,
            }
        })
        .collect()
}

/// Dimensions of the linear systems behind the model for a pair `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystemMeta {
    pub i: usize,
    pub j: usize,
    #[serde(rename = "dimWi")]
    pub dim_w_i: i64,
    #[serde(rename = "dimWj")]
    pub dim_w_j: i64,
    #[serde(rename = "dimCombined")]
    pub dim_combined: i64,
    #[serde(rename = "N")]
    pub n_coords: i64,
    pub mu: i64,
    /// Section behind each homogeneous coordinate `ζ_1..ζ_N`.
    pub basis: Vec<String>,
}

fn monomial_label(p1: i64, p2: i64) -> String {
    let part = |name: &str, e: i64| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    let s = format!("{}{}", part("u1", p1), part("u2", p2));
    if s.is_empty() {
        "1".to_string()
    } else {
        s
    }
}

pub fn system_meta(data_i: &TwistorDivisorData, data_j: &TwistorDivisorData) -> Result<LinearSystemMeta, ModelError> {
    let (di, dj) = ordered(data_i, data_j)?;
    let (mi, mj) = (di.m, dj.m);
    let mu = mi - mj;
    let with_section = |mono: String, y: &str| {
        if mono == "1" {
            y.to_string()
        } else {
            format!("{mono}·{y}")
        }
    };

    let mut basis = vec![format!("y{}", di.alpha), format!("ȳ{}", di.alpha)];
    for a in 0..=mu {
        let mono = monomial_label(mu - a, a);
        basis.push(with_section(mono.clone(), &format!("y{}", dj.alpha)));
        basis.push(with_section(mono, &format!("ȳ{}", dj.alpha)));
    }
    for b in 0..=mi {
        basis.push(monomial_label(mi - b, b));
    }

    let meta = LinearSystemMeta {
        i: di.alpha,
        j: dj.alpha,
        dim_w_i: mi + 3,
        dim_w_j: mj + 3,
        dim_combined: 3 * mi - 2 * mj + 5,
        n_coords: 5 + 3 * mi - 2 * mj,
        mu,
        basis,
    };
    debug_assert_eq!(meta.n_coords - mi, 2 * mu + 5);
    debug_assert_eq!(meta.dim_combined, meta.dim_w_i + 2 * (mu + 1));
    debug_assert_eq!(meta.basis.len() as i64, meta.n_coords);
    Ok(meta)
}

/// The affine part of the model inside the rank-4 bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OpenModelDescription {
    pub i: usize,
    pub j: usize,
    pub bundle: [i64; 4],
    pub total_space: String,
    pub equations: Vec<String>,
    pub degree: i64,
    pub statement: String,
    pub warnings: Vec<String>,
}

pub fn emit_open_model_description(eqs: &ModelEquations, degree: i64) -> OpenModelDescription {
    let (mi, mj) = (eqs.m_i(), eqs.m_j());
    let mut equations = eqs.equation_strings();
    equations.truncate(2);
    let mut warnings = Vec::new();
    let statement = if degree == 1 {
        format!(
            "X ⊂ P(O({mi})^2 ⊕ O({mj})^2 ⊕ O) is bimeromorphic to the twistor space Z; \
             its affine part in O({mi})^2 ⊕ O({mj})^2 contains the biholomorphic image of \
             U = Z \\ (C ∪ L_1 ∪ ... ∪ L_k), hence the twistor space of H^2 × T^2"
        )
    } else {
        warnings.push(format!("map is {degree}:1, not a projective model"));
        format!("X ⊂ P(O({mi})^2 ⊕ O({mj})^2 ⊕ O) is the image of a generically {degree}:1 map from Z")
    };
    OpenModelDescription {
        i: eqs.i,
        j: eqs.j,
        bundle: eqs.bundle,
        total_space: format!("O({mi})^2 ⊕ O({mj})^2 → CP^1"),
        equations,
        degree,
        statement,
        warnings,
    }
}
