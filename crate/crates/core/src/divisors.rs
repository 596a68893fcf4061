//! Divisor data `(m_α, l_{αβ}^±)` of the distinguished divisors
//! `Y_α = Σ_β (l_{αβ}^+ S_β^+ + l_{αβ}^- S_β^-)`.
//!
//! On `S` each `S_β^±` cuts out a half of the boundary cycle, and `Y_α`
//! restricts to `m_α C - f_α + f̄_α`. Together with `l^+ l^- = 0` that
//! identity pins the data down uniquely: the jump of the right-hand side
//! between two neighbouring components sits on exactly one half-cycle
//! boundary, and gives the signed multiplicity `l^+ - l^-` there.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fibers::{invariant_fibers, FiberError};
use crate::surface::{ComponentDivisor, ToricSurface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HalfSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// The restriction `S_β^±|_S`: `k` circularly consecutive components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfCycle {
    pub index: usize,
    pub sign: HalfSign,
    /// 0-based component positions, in circular order.
    pub positions: Vec<usize>,
    components: usize,
}

impl HalfCycle {
    pub fn divisor(&self) -> ComponentDivisor {
        let mut d = ComponentDivisor::zero(self.components);
        for &p in &self.positions {
            d.coeffs[p] = 1;
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DivisorError {
    #[error(transparent)]
    Fiber(#[from] FiberError),
    #[error("half-cycle index {index} is outside 1..={k}")]
    BadHalfIndex { index: usize, k: usize },
    #[error("restriction identity is inconsistent at component {position}")]
    InconsistentSystem { position: usize },
    #[error("negative multiplicity at S_{beta}")]
    NegativeMultiplicity { beta: usize },
    #[error("solved degree m = {m} is not positive")]
    NonPositiveDegree { m: i64 },
}

/// `H_β^+` is the window of positions `β+1, ..., β+k` (1-based, mod `2k`);
/// `H_β^-` is the complementary window.
pub fn half_cycles(k: usize, beta: usize) -> Result<(HalfCycle, HalfCycle), DivisorError> {
    if !(1..=k).contains(&beta) {
        return Err(DivisorError::BadHalfIndex { index: beta, k });
    }
    let count = 2 * k;
    let window = |start: usize| (0..k).map(|t| (start + t) % count).collect::<Vec<_>>();
    Ok((
        HalfCycle {
            index: beta,
            sign: HalfSign::Plus,
            positions: window(beta),
            components: count,
        },
        HalfCycle {
            index: beta,
            sign: HalfSign::Minus,
            positions: window(beta + k),
            components: count,
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TwistorDivisorData {
    pub alpha: usize,
    pub m: i64,
    pub l_plus: Vec<i64>,
    pub l_minus: Vec<i64>,
}

impl TwistorDivisorData {
    pub fn k(&self) -> usize {
        self.l_plus.len()
    }

    /// `l_{αβ} = l^+ + l^-` for a 1-based `β`.
    pub fn l(&self, beta: usize) -> i64 {
        self.l_plus[beta - 1] + self.l_minus[beta - 1]
    }

    pub fn l_total(&self) -> Vec<i64> {
        (1..=self.k()).map(|b| self.l(b)).collect()
    }

    /// `l_{α1}`: how far the model polynomial drops below degree `2m` at `λ = ∞`.
    pub fn degree_drop_at_infinity(&self) -> i64 {
        self.l(1)
    }

    /// `Σ_β (l^+ H_β^+ + l^- H_β^-)` as a component vector.
    pub fn restriction(&self) -> ComponentDivisor {
        let k = self.k();
        let mut total = ComponentDivisor::zero(2 * k);
        for beta in 1..=k {
            let (plus, minus) = half_cycles(k, beta).expect("beta in range");
            total = &total + &(self.l_plus[beta - 1] * &plus.divisor());
            total = &total + &(self.l_minus[beta - 1] * &minus.divisor());
        }
        total
    }

    /// Human-readable `Y_α` as a sum of `S_β^±`.
    pub fn describe(&self) -> String {
        let mut terms = Vec::new();
        for beta in 1..=self.k() {
            for (mult, sign) in [(self.l_minus[beta - 1], "-"), (self.l_plus[beta - 1], "+")] {
                match mult {
                    0 => {}
                    1 => terms.push(format!("S{beta}{sign}")),
                    _ => terms.push(format!("{mult}S{beta}{sign}")),
                }
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Solve `Σ_β (l^+ H_β^+ + l^- H_β^-) = m C - f + f̄` with `l^+ l^- = 0`.
///
/// `f` and `fbar` are component vectors of length `2k`.
pub fn solve_restriction(
    alpha: usize,
    f: &ComponentDivisor,
    fbar: &ComponentDivisor,
) -> Result<TwistorDivisorData, DivisorError> {
    let count = f.len();
    let k = count / 2;
    // the right-hand side up to the unknown multiple of C
    let shift = fbar - f;
    let jump = |r: usize| shift.coeffs[(r + 1) % count] - shift.coeffs[r];

    let mut l_plus = vec![0; k];
    let mut l_minus = vec![0; k];
    for beta in 1..=k {
        // H_β^+ starts right after position β - 1 (0-based) and ends at β - 1 + k
        let signed = jump(beta - 1);
        if jump(beta - 1 + k) != -signed {
            return Err(DivisorError::InconsistentSystem { position: beta + k });
        }
        l_plus[beta - 1] = signed.max(0);
        l_minus[beta - 1] = (-signed).max(0);
    }

    let mut data = TwistorDivisorData {
        alpha,
        m: 0,
        l_plus,
        l_minus,
    };
    let residual = &data.restriction() - &shift;
    let m = residual.coeffs[0];
    if let Some(pos) = residual.coeffs.iter().position(|&c| c != m) {
        return Err(DivisorError::InconsistentSystem { position: pos + 1 });
    }
    if m < 1 {
        return Err(DivisorError::NonPositiveDegree { m });
    }
    data.m = m;

    if let Some(beta) = (1..=k).find(|&b| data.l_plus[b - 1] < 0 || data.l_minus[b - 1] < 0) {
        return Err(DivisorError::NegativeMultiplicity { beta });
    }
    let total: i64 = data.l_total().iter().sum();
    if total != 2 * m {
        return Err(DivisorError::InconsistentSystem { position: 0 });
    }
    Ok(data)
}

/// Divisor data of `Y_α` from the invariant fibers of `π_α`.
pub fn solve_divisor_data(surface: &ToricSurface, alpha: usize) -> Result<TwistorDivisorData, DivisorError> {
    let (f, fbar) = invariant_fibers(surface, alpha)?;
    let data = solve_restriction(alpha, &f.base, &fbar.base)?;

    let c = surface.anticanonical_cycle();
    let check = &(&(&data.restriction() - &(data.m * &c)) + &f.base) - &fbar.base;
    if let Some(pos) = check.coeffs.iter().position(|&x| x != 0) {
        return Err(DivisorError::InconsistentSystem { position: pos + 1 });
    }
    Ok(data)
}
