//! The smooth complete toric surface `S` attached to an action sequence.
//!
//! Its fan has the `2k` rays `v_1, ..., v_k, -v_1, ..., -v_k` in this
//! circular order. Component position `r` (0-based) is `C_{r+1}` for
//! `r < k` and the conjugate curve `C̄_{r+1-k}` for `r >= k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{det, ActionSequence, LatticeVector};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("rays {index} and {next} do not span the lattice (det = {det})", next = index + 1)]
    NonSmoothFan { index: usize, det: i64 },
    #[error("ray relation fails at ray {index}")]
    RayRelation { index: usize },
    #[error("divisor has {found} coefficients, surface has {expected} components")]
    IndexMismatch { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ToricSurface {
    pub rays: Vec<LatticeVector>,
    pub self_int: Vec<i64>,
    pub k: usize,
}

impl ToricSurface {
    pub fn build(seq: &ActionSequence) -> Result<Self, SurfaceError> {
        let k = seq.k();
        let mut rays: Vec<LatticeVector> = seq.vectors().iter().map(|v| v.get()).collect();
        rays.extend(seq.vectors().iter().map(|v| -v.get()));
        let count = rays.len();
        let ray = |r: usize| rays[r % count];

        for r in 0..count {
            let d = det(ray(r), ray(r + 1));
            if d.abs() != 1 {
                return Err(SurfaceError::NonSmoothFan { index: r + 1, det: d });
            }
        }

        let mut self_int = Vec::with_capacity(count);
        for r in 0..count {
            let (prev, cur, next) = (ray(r + count - 1), ray(r), ray(r + 1));
            // u_{r-1} + u_{r+1} = a u_r with a = det(u_{r-1}, u_{r+1}) / det(u_r, u_{r+1})
            let a = det(prev, next) * det(cur, next);
            if prev + next != cur.scale(a) {
                return Err(SurfaceError::RayRelation { index: r + 1 });
            }
            self_int.push(-a);
        }
        Ok(ToricSurface { rays, self_int, k })
    }

    /// Number of boundary components, `2k`.
    pub fn components(&self) -> usize {
        self.rays.len()
    }

    pub fn ray(&self, r: usize) -> LatticeVector {
        self.rays[r % self.rays.len()]
    }

    /// Intersection number of two boundary components (0-based positions).
    pub fn pairing(&self, r: usize, s: usize) -> i64 {
        let count = self.components();
        let (r, s) = (r % count, s % count);
        if r == s {
            self.self_int[r]
        } else if (r + 1) % count == s || (s + 1) % count == r {
            1
        } else {
            0
        }
    }

    pub fn intersect(&self, d1: &ComponentDivisor, d2: &ComponentDivisor) -> Result<i64, SurfaceError> {
        let count = self.components();
        for d in [d1, d2] {
            if d.len() != count {
                return Err(SurfaceError::IndexMismatch {
                    expected: count,
                    found: d.len(),
                });
            }
        }
        let mut total = 0;
        for (r, &x) in d1.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for s in [r + count - 1, r, r + 1] {
                total += x * d2.coeffs[s % count] * self.pairing(r, s);
            }
        }
        Ok(total)
    }

    /// The boundary cycle `C = Σ (C_i + C̄_i)`, an anticanonical divisor.
    pub fn anticanonical_cycle(&self) -> ComponentDivisor {
        ComponentDivisor::ones(self.components())
    }
}

/// Integer combination of the `2k` boundary components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentDivisor {
    pub coeffs: Vec<i64>,
}

impl ComponentDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        Self::new(vec![0; len])
    }

    pub fn ones(len: usize) -> Self {
        Self::new(vec![1; len])
    }

    pub fn unit(len: usize, r: usize) -> Self {
        let mut d = Self::zero(len);
        d.coeffs[r] = 1;
        d
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Relabel `r ↦ r + k`, exchanging each `C_i` with `C̄_i`.
    pub fn conjugate(&self) -> Self {
        let half = self.len() / 2;
        let mut coeffs = self.coeffs.clone();
        coeffs.rotate_right(half);
        Self { coeffs }
    }

    pub fn is_conjugation_symmetric(&self) -> bool {
        self.conjugate() == *self
    }
}

impl Add for &ComponentDivisor {
    type Output = ComponentDivisor;

    fn add(self, rhs: Self) -> ComponentDivisor {
        ComponentDivisor::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ComponentDivisor {
    type Output = ComponentDivisor;

    fn sub(self, rhs: Self) -> ComponentDivisor {
        ComponentDivisor::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ComponentDivisor {
    type Output = ComponentDivisor;

    fn neg(self) -> ComponentDivisor {
        ComponentDivisor::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul<&ComponentDivisor> for i64 {
    type Output = ComponentDivisor;

    fn mul(self, rhs: &ComponentDivisor) -> ComponentDivisor {
        ComponentDivisor::new(rhs.coeffs.iter().map(|a| self * a).collect())
    }
}

impl fmt::Display for ComponentDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.len() / 2;
        let mut first = true;
        for (r, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let label = if r < k {
                format!("C{}", r + 1)
            } else {
                format!("C̄{}", r + 1 - k)
            };
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if !first {
                write!(f, " ")?;
            }
            if mag == 1 {
                write!(f, "{sign}{label}")?;
            } else {
                write!(f, "{sign}{mag}{label}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate;

    fn surface(pairs: &[[i64; 2]]) -> ToricSurface {
        ToricSurface::build(&validate(pairs).unwrap()).unwrap()
    }

    #[test]
    fn hexagon() {
        let s = surface(&[[0, 1], [1, 1], [1, 0]]);
        let rays: Vec<[i64; 2]> = s.rays.iter().map(|&r| r.into()).collect();
        assert_eq!(rays, vec![[0, 1], [1, 1], [1, 0], [0, -1], [-1, -1], [-1, 0]]);
        assert_eq!(s.self_int, vec![-1; 6]);
    }

    #[test]
    fn quadric() {
        let s = surface(&[[0, 1], [1, 0]]);
        assert_eq!(s.rays.len(), 4);
        assert_eq!(s.self_int, vec![0; 4]);
    }

    #[test]
    fn two_point_chain() {
        let s = surface(&[[0, 1], [1, 1], [2, 1], [1, 0]]);
        assert_eq!(&s.self_int[..4], &[-1, -2, -1, -2]);
        assert_eq!(&s.self_int[4..], &[-1, -2, -1, -2]);
    }

    #[test]
    fn cycle_and_units() {
        let s = surface(&[[0, 1], [1, 1], [1, 0]]);
        let c = s.anticanonical_cycle();
        assert_eq!(c.coeffs, vec![1; 6]);
        assert_eq!(s.intersect(&c, &c).unwrap(), 6);
        for r in 0..6 {
            let e = ComponentDivisor::unit(6, r);
            assert_eq!(s.intersect(&e, &e).unwrap(), s.self_int[r]);
            assert_eq!(s.intersect(&c, &e).unwrap(), 2 + s.self_int[r]);
        }
        assert_eq!(surface(&[[0, 1], [1, 0]]).anticanonical_cycle().coeffs, vec![1; 4]);
        assert_eq!(
            surface(&[[0, 1], [1, 1], [2, 1], [1, 0]]).anticanonical_cycle().coeffs,
            vec![1; 8]
        );
    }

    #[test]
    fn quadric_cycle_square() {
        let s = surface(&[[0, 1], [1, 0]]);
        let c = s.anticanonical_cycle();
        assert_eq!(s.intersect(&c, &c).unwrap(), 8);
    }

    #[test]
    fn index_mismatch() {
        let s = surface(&[[0, 1], [1, 0]]);
        let err = s
            .intersect(&ComponentDivisor::ones(4), &ComponentDivisor::ones(6))
            .unwrap_err();
        assert_eq!(err, SurfaceError::IndexMismatch { expected: 4, found: 6 });
    }

    #[test]
    fn display_labels() {
        let d = ComponentDivisor::new(vec![0, 1, 2, -1, 0, 0]);
        assert_eq!(d.to_string(), "C2 +2C3 -C̄1");
        assert_eq!(ComponentDivisor::zero(4).to_string(), "0");
    }

    #[test]
    fn conjugate_shift() {
        let d = ComponentDivisor::new(vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(d.conjugate().coeffs, vec![4, 5, 6, 1, 2, 3]);
    }
}
