//! Torus-invariant fibers of the quotient maps `π_α: S → CP^1`.
//!
//! The subgroup fixing `C_α` has cocharacter `v_α`; its quotient map is
//! given on the lattice by the linear form `φ_α(v) = det(v, v_α)`. The two
//! invariant fibers collect the rays on either side of `±v_α`, weighted by
//! `|φ_α|`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{det, LatticeVector};
use crate::surface::{ComponentDivisor, ToricSurface};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("index {index} is outside 1..={k}")]
    BadIndex { index: usize, k: usize },
    #[error("indices ({i}, {j}) must be distinct and inside 1..={k}")]
    BadIndices { i: usize, j: usize, k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientForm {
    pub index: usize,
    pub direction: LatticeVector,
}

impl QuotientForm {
    pub fn new(surface: &ToricSurface, index: usize) -> Result<Self, FiberError> {
        check_index(surface, index)?;
        Ok(Self {
            index,
            direction: surface.ray(index - 1),
        })
    }

    pub fn eval(&self, v: LatticeVector) -> i64 {
        det(v, self.direction)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InvariantFiber {
    pub base: ComponentDivisor,
}

fn check_index(surface: &ToricSurface, index: usize) -> Result<(), FiberError> {
    if (1..=surface.k).contains(&index) {
        Ok(())
    } else {
        Err(FiberError::BadIndex { index, k: surface.k })
    }
}

/// The invariant fibers `(f_α, f̄_α)`: `f_α` on the side where `φ_α > 0`.
pub fn invariant_fibers(surface: &ToricSurface, alpha: usize) -> Result<(InvariantFiber, InvariantFiber), FiberError> {
    let form = QuotientForm::new(surface, alpha)?;
    let values: Vec<i64> = surface.rays.iter().map(|&u| form.eval(u)).collect();
    let f = values.iter().map(|&x| x.max(0)).collect();
    let fbar = values.iter().map(|&x| (-x).max(0)).collect();
    Ok((
        InvariantFiber {
            base: ComponentDivisor::new(f),
        },
        InvariantFiber {
            base: ComponentDivisor::new(fbar),
        },
    ))
}

/// `d = (f_i · f_j)_S`, the degree of the model map for the pair `(i, j)`.
pub fn model_degree(surface: &ToricSurface, i: usize, j: usize) -> Result<i64, FiberError> {
    let k = surface.k;
    if i == j || !(1..=k).contains(&i) || !(1..=k).contains(&j) {
        return Err(FiberError::BadIndices { i, j, k });
    }
    let (fi, _) = invariant_fibers(surface, i)?;
    let (fj, _) = invariant_fibers(surface, j)?;
    Ok(surface
        .intersect(&fi.base, &fj.base)
        .expect("fibers are indexed by the surface"))
}

/// The full `k × k` matrix of `(f_i · f_j)_S`; the diagonal holds `f_i · f_i`.
pub fn degree_matrix(surface: &ToricSurface) -> Vec<Vec<i64>> {
    let fibers: Vec<InvariantFiber> = (1..=surface.k)
        .map(|a| invariant_fibers(surface, a).expect("index in range").0)
        .collect();
    fibers
        .iter()
        .map(|fi| {
            fibers
                .iter()
                .map(|fj| surface.intersect(&fi.base, &fj.base).expect("same surface"))
                .collect()
        })
        .collect()
}

/// All pairs `i < j` whose model map is bimeromorphic (`d = 1`).
pub fn bimeromorphic_pairs(surface: &ToricSurface) -> Vec<(usize, usize)> {
    let matrix = degree_matrix(surface);
    let k = surface.k;
    let mut out = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            if matrix[i - 1][j - 1] == 1 {
                out.push((i, j));
            }
        }
    }
    out
}
