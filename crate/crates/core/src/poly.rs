//! Dense univariate polynomials in `λ` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Canonical text form of a rational: `"p/q"` in lowest terms, or `"p"` when `q = 1`.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as a rational number")]
pub struct ParseRationalError(pub String);

/// Parse `"p"`, `"p/q"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let s = text.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().map_err(|_| err())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| err())?;
        let value = BigRational::new(whole * &scale + frac, scale);
        return Ok(if negative { -value } else { value });
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(n))
}

/// Comma-separated list of rationals, e.g. `"1,5/2,3"`.
pub fn parse_rational_list(text: &str) -> Result<Vec<BigRational>, ParseRationalError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

/// Serde adapters writing rationals as strings.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
            let strings: Vec<String> = v.iter().map(format_rational).collect();
            strings.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
            let strings = Vec::<String>::deserialize(d)?;
            strings
                .iter()
                .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rational_serde::vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        rational_serde::vec::deserialize(d).map(Polynomial::new)
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// `λ^e`.
    pub fn monomial(e: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        Self { coeffs }
    }

    /// `λ - r`.
    pub fn linear(root: &BigRational) -> Self {
        Self::new(vec![-root.clone(), BigRational::one()])
    }

    /// `c · ∏ (λ - r)^e`.
    pub fn from_roots(c: &BigRational, roots: &[(BigRational, usize)]) -> Self {
        roots
            .iter()
            .fold(Self::constant(c.clone()), |acc, (r, e)| &acc * &Self::linear(r).pow(*e))
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d_deg];
        for shift in (0..quot.len()).rev() {
            let c = &rem[shift + d_deg] / &lead;
            if c.is_zero() {
                continue;
            }
            for (idx, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + idx] -= &c * dc;
            }
            quot[shift] = c;
        }
        rem.truncate(d_deg);
        (Self::new(quot), Self::new(rem))
    }

    /// Order of vanishing at `x` (`None` for the zero polynomial).
    pub fn multiplicity_at(&self, x: &BigRational) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut coeffs = self.coeffs.clone();
        let mut count = 0;
        // synthetic division by λ - x while the remainder vanishes
        while coeffs.len() > 1 {
            let mut quot = vec![BigRational::zero(); coeffs.len() - 1];
            let mut carry = BigRational::zero();
            for idx in (1..coeffs.len()).rev() {
                carry = &coeffs[idx] + &carry * x;
                quot[idx - 1] = carry.clone();
            }
            if !(&coeffs[0] + &carry * x).is_zero() {
                break;
            }
            coeffs = quot;
            count += 1;
        }
        Some(count)
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn integer_part(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(Signed::is_negative) {
            content = -content;
        }
        if content.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &content).collect()
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(lead) => a.scale(&(BigRational::one() / lead)),
            None => a,
        }
    }

    /// Monic product of the distinct irreducible factors.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        let q = self.div_rem(&g).0;
        let lead = q.leading().expect("nonzero").clone();
        q.scale(&(BigRational::one() / lead))
    }

    /// Split off every rational linear factor.
    ///
    /// Candidates come from the rational root theorem applied to the
    /// primitive integer multiple of the square-free part, so its constant
    /// and leading terms must fit in `u64` for divisor enumeration.
    pub fn factor_rational(&self) -> Result<RationalFactorization, FactorError> {
        if self.is_zero() {
            return Err(FactorError::ZeroPolynomial);
        }
        let mut roots: Vec<(BigRational, usize)> = Vec::new();
        let mut rest = self.clone();

        let zero = BigRational::zero();
        let at_zero = rest.multiplicity_at(&zero).expect("nonzero");
        if at_zero > 0 {
            rest = rest.div_rem(&Self::monomial(at_zero)).0;
            roots.push((zero, at_zero));
        }

        if rest.degree().unwrap_or(0) > 0 {
            let ints = rest.square_free().integer_part();
            let wanted = ints.len() - 1;
            let constant = ints[0].abs().to_u64().ok_or(FactorError::CoefficientTooLarge)?;
            let lead = ints[wanted].abs().to_u64().ok_or(FactorError::CoefficientTooLarge)?;
            let mut found = 0;
            'search: for p in divisors(constant) {
                for q in divisors(lead) {
                    if p.gcd(&q) != 1 {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let num = BigInt::from(sign) * BigInt::from(p);
                        let den = BigInt::from(q);
                        if !vanishes_at(&ints, &num, &den) {
                            continue;
                        }
                        let root = BigRational::new(num, den);
                        let mult = rest.multiplicity_at(&root).expect("nonzero");
                        rest = rest.div_rem(&Self::linear(&root).pow(mult)).0;
                        roots.push((root, mult));
                        found += 1;
                        if found == wanted {
                            break 'search;
                        }
                    }
                }
            }
        }
        roots.sort();
        let lead = self.leading().expect("nonzero").clone();
        let remainder = rest.scale(&(BigRational::one() / &lead));
        Ok(RationalFactorization {
            leading: lead,
            roots,
            remainder,
        })
    }

    /// Render with the given variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match deg {
                0 => out.push_str(&format_rational(&mag)),
                _ => {
                    if !unit {
                        out.push_str(&format_rational(&mag));
                    }
                    out.push_str(var);
                    if deg > 1 {
                        out.push('^');
                        out.push_str(&deg.to_string());
                    }
                }
            }
        }
        out
    }
}

/// `Σ a_i p^i q^(n-i) = 0`, i.e. `p/q` is a root of the integer polynomial.
fn vanishes_at(ints: &[BigInt], p: &BigInt, q: &BigInt) -> bool {
    let deg = ints.len() - 1;
    let mut total = BigInt::zero();
    let mut p_pow = BigInt::one();
    let mut q_pows = vec![BigInt::one(); deg + 1];
    for e in 1..=deg {
        q_pows[e] = &q_pows[e - 1] * q;
    }
    for (i, a) in ints.iter().enumerate() {
        total += a * &p_pow * &q_pows[deg - i];
        p_pow *= p;
    }
    total.is_zero()
}

fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return vec![1];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("coefficients too large for rational root search")]
    CoefficientTooLarge,
}

/// `leading · ∏ (λ - r)^e · remainder`, with `remainder` monic and free of
/// rational roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFactorization {
    pub leading: BigRational,
    pub roots: Vec<(BigRational, usize)>,
    pub remainder: Polynomial,
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("λ"))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Self) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Polynomial::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Self) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Self) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}
