//! Integer vector sequences describing effective torus actions.
//!
//! An [`ActionSequence`] is the list `v_1, ..., v_k` (`k = n + 2`) of
//! primitive isotropy vectors, normalized so that `v_1 = (0, 1)`,
//! `v_k = (1, 0)`, every `v_i` with `i > 1` has positive first coordinate,
//! and consecutive determinants are all `-1`.
//!
//! Indices in reports and errors are 1-based to match the usual labelling
//! of the invariant spheres.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A vector of the rank-2 lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticeVector {
    pub a: i64,
    pub b: i64,
}

impl LatticeVector {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn is_primitive(self) -> bool {
        (self.a, self.b) != (0, 0) && self.a.gcd(&self.b) == 1
    }

    pub fn scale(self, t: i64) -> Self {
        Self::new(t * self.a, t * self.b)
    }

    /// Swap the two coordinates.
    pub fn swapped(self) -> Self {
        Self::new(self.b, self.a)
    }
}

impl std::ops::Neg for LatticeVector {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl std::ops::Add for LatticeVector {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        Self::new(self.a + other.a, self.b + other.b)
    }
}

impl From<[i64; 2]> for LatticeVector {
    fn from([a, b]: [i64; 2]) -> Self {
        Self::new(a, b)
    }
}

impl From<LatticeVector> for [i64; 2] {
    fn from(v: LatticeVector) -> Self {
        [v.a, v.b]
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// `det(u, v) = u.a * v.b - u.b * v.a`.
pub fn det(u: LatticeVector, v: LatticeVector) -> i64 {
    u.a * v.b - u.b * v.a
}

fn det_wide(u: LatticeVector, v: LatticeVector) -> i128 {
    u.a as i128 * v.b as i128 - u.b as i128 * v.a as i128
}

/// A lattice vector with coprime coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct PrimitiveVector(LatticeVector);

impl PrimitiveVector {
    pub fn new(a: i64, b: i64) -> Option<Self> {
        let v = LatticeVector::new(a, b);
        v.is_primitive().then_some(Self(v))
    }

    pub fn get(self) -> LatticeVector {
        self.0
    }

    pub fn a(self) -> i64 {
        self.0.a
    }

    pub fn b(self) -> i64 {
        self.0.b
    }
}

impl TryFrom<[i64; 2]> for PrimitiveVector {
    type Error = String;

    fn try_from([a, b]: [i64; 2]) -> Result<Self, Self::Error> {
        Self::new(a, b).ok_or_else(|| format!("({a},{b}) is not primitive"))
    }
}

impl From<PrimitiveVector> for [i64; 2] {
    fn from(v: PrimitiveVector) -> Self {
        v.0.into()
    }
}

impl fmt::Display for PrimitiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One violated normalization condition. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Violation {
    #[error("sequence is empty")]
    Empty,
    #[error("sequence has {len} vector(s), at least 2 are required")]
    TooShort { len: usize },
    #[error("declared n = {declared} but {len} vectors were given (expected n + 2)")]
    LengthMismatch { declared: i64, len: usize },
    #[error("vector {index} = {vector} is not primitive")]
    NonPrimitiveVector { index: usize, vector: LatticeVector },
    #[error("vector {index} = {found} must be {expected}")]
    EndpointMismatch {
        index: usize,
        expected: LatticeVector,
        found: LatticeVector,
    },
    #[error("vector {index} = {vector} must have positive first coordinate")]
    PositivityViolation { index: usize, vector: LatticeVector },
    #[error("det(v_{index}, v_{next}) = {det}, expected -1", next = index + 1)]
    DeterminantViolation { index: usize, det: i128 },
}

/// Every violated condition of a candidate sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Error)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid action sequence:")?;
        for v in &self.violations {
            write!(f, " [{v}]")?;
        }
        Ok(())
    }
}

/// The input file layout: `{"n": int, "vectors": [[a, b], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceFile {
    pub n: i64,
    pub vectors: Vec<[i64; 2]>,
}

impl SequenceFile {
    pub fn validate(&self) -> Result<ActionSequence, ValidationReport> {
        let mut report = check_conditions(&self.vectors);
        let len = self.vectors.len();
        if len >= 2 && self.n != len as i64 - 2 {
            report.insert(0, Violation::LengthMismatch { declared: self.n, len });
        }
        finish(&self.vectors, report)
    }
}

/// A validated, normalized torus-action sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "SequenceFile", into = "SequenceFile")]
pub struct ActionSequence {
    vectors: Vec<PrimitiveVector>,
}

impl ActionSequence {
    /// `n`, the number of `CP^2` summands.
    pub fn n(&self) -> usize {
        self.vectors.len() - 2
    }

    /// `k = n + 2`, the number of invariant spheres.
    pub fn k(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[PrimitiveVector] {
        &self.vectors
    }

    /// `v_index` with a 1-based index.
    pub fn vector(&self, index: usize) -> PrimitiveVector {
        self.vectors[index - 1]
    }

    pub fn pairs(&self) -> Vec<[i64; 2]> {
        self.vectors.iter().map(|&v| v.into()).collect()
    }

    /// `(n'_{k+1-i}, n_{k+1-i})`: reverse the order and swap coordinates.
    pub fn reversal_dual(&self) -> ActionSequence {
        let vectors = self
            .vectors
            .iter()
            .rev()
            .map(|v| PrimitiveVector(v.get().swapped()))
            .collect();
        ActionSequence { vectors }
    }
}

impl TryFrom<SequenceFile> for ActionSequence {
    type Error = ValidationReport;

    fn try_from(file: SequenceFile) -> Result<Self, Self::Error> {
        file.validate()
    }
}

impl From<ActionSequence> for SequenceFile {
    fn from(seq: ActionSequence) -> Self {
        SequenceFile {
            n: seq.n() as i64,
            vectors: seq.pairs(),
        }
    }
}

impl fmt::Display for ActionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (idx, v) in self.vectors.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

const FIRST: LatticeVector = LatticeVector::new(0, 1);
const LAST: LatticeVector = LatticeVector::new(1, 0);

fn check_conditions(pairs: &[[i64; 2]]) -> Vec<Violation> {
    let mut out = Vec::new();
    let vs: Vec<LatticeVector> = pairs.iter().map(|&p| p.into()).collect();
    match vs.len() {
        0 => return vec![Violation::Empty],
        1 => out.push(Violation::TooShort { len: 1 }),
        _ => {}
    }
    for (idx, &v) in vs.iter().enumerate() {
        if !v.is_primitive() {
            out.push(Violation::NonPrimitiveVector {
                index: idx + 1,
                vector: v,
            });
        }
    }
    if vs[0] != FIRST {
        out.push(Violation::EndpointMismatch {
            index: 1,
            expected: FIRST,
            found: vs[0],
        });
    }
    if vs.len() >= 2 && vs[vs.len() - 1] != LAST {
        out.push(Violation::EndpointMismatch {
            index: vs.len(),
            expected: LAST,
            found: vs[vs.len() - 1],
        });
    }
    for (idx, &v) in vs.iter().enumerate().skip(1) {
        if v.a <= 0 {
            out.push(Violation::PositivityViolation {
                index: idx + 1,
                vector: v,
            });
        }
    }
    for (idx, w) in vs.windows(2).enumerate() {
        let d = det_wide(w[0], w[1]);
        if d != -1 {
            out.push(Violation::DeterminantViolation { index: idx + 1, det: d });
        }
    }
    out
}

fn finish(pairs: &[[i64; 2]], violations: Vec<Violation>) -> Result<ActionSequence, ValidationReport> {
    if !violations.is_empty() {
        return Err(ValidationReport { violations });
    }
    let vectors = pairs
        .iter()
        .map(|&[a, b]| PrimitiveVector::new(a, b).expect("checked primitive"))
        .collect();
    Ok(ActionSequence { vectors })
}

/// Check the normalization conditions on a candidate list of pairs.
///
/// On failure the report lists every violated condition, not just the first.
pub fn validate(pairs: &[[i64; 2]]) -> Result<ActionSequence, ValidationReport> {
    finish(pairs, check_conditions(pairs))
}

/// A 2x2 integer matrix with determinant `±1`, acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct UnimodularMatrix([[i64; 2]; 2]);

impl UnimodularMatrix {
    pub const IDENTITY: Self = Self([[1, 0], [0, 1]]);

    pub fn new(rows: [[i64; 2]; 2]) -> Option<Self> {
        let d = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
        (d == 1 || d == -1).then_some(Self(rows))
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        self.0
    }

    pub fn det(&self) -> i64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn apply(&self, v: LatticeVector) -> LatticeVector {
        let m = self.0;
        LatticeVector::new(m[0][0] * v.a + m[0][1] * v.b, m[1][0] * v.a + m[1][1] * v.b)
    }

    pub fn inverse(&self) -> Self {
        let [[p, q], [r, s]] = self.0;
        let d = self.det();
        // d = ±1, so the adjugate divided by d stays integral
        Self([[s * d, -q * d], [-r * d, p * d]])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = self.0;
        let b = other.0;
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Self([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

impl TryFrom<[[i64; 2]; 2]> for UnimodularMatrix {
    type Error = String;

    fn try_from(rows: [[i64; 2]; 2]) -> Result<Self, Self::Error> {
        Self::new(rows).ok_or_else(|| "matrix determinant is not ±1".to_string())
    }
}

impl From<UnimodularMatrix> for [[i64; 2]; 2] {
    fn from(m: UnimodularMatrix) -> Self {
        m.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("not normalizable: {0}")]
    NotNormalizable(String),
}

/// Bring a sequence whose consecutive determinants are all `-1` (or all
/// `+1`) into normal form.
///
/// Returns the normalized sequence together with the matrix `M` such that
/// `M v_i` is the `i`-th normalized vector. `M` is forced by the two
/// endpoint conditions, so the result is unique when it exists.
pub fn normalize(pairs: &[[i64; 2]]) -> Result<(ActionSequence, UnimodularMatrix), NormalizeError> {
    let fail = |msg: String| Err(NormalizeError::NotNormalizable(msg));
    let vs: Vec<LatticeVector> = pairs.iter().map(|&p| p.into()).collect();
    if vs.len() < 2 {
        return fail(format!("{} vector(s) given, at least 2 required", vs.len()));
    }
    if let Some(idx) = vs.iter().position(|v| !v.is_primitive()) {
        return fail(format!("vector {} = {} is not primitive", idx + 1, vs[idx]));
    }
    let chain: Vec<i128> = vs.windows(2).map(|w| det_wide(w[0], w[1])).collect();
    let sign = chain[0];
    if sign.abs() != 1 || chain.iter().any(|&d| d != sign) {
        return fail("consecutive determinants are not all -1 or all +1".to_string());
    }

    let first = vs[0];
    let last = vs[vs.len() - 1];
    // columns (v_1, v_k) must map to columns ((0,1), (1,0))
    let ends = det_wide(first, last);
    if ends.abs() != 1 {
        return fail(format!(
            "det(v_1, v_k) = {ends}, endpoints cannot be mapped to (0,1), (1,0)"
        ));
    }
    let e = ends as i64;
    let ends_inv = [[last.b * e, -last.a * e], [-first.b * e, first.a * e]];
    let swap = UnimodularMatrix([[0, 1], [1, 0]]);
    let m = swap.mul(&UnimodularMatrix(ends_inv));

    let image: Vec<[i64; 2]> = vs.iter().map(|&v| m.apply(v).into()).collect();
    match validate(&image) {
        Ok(seq) => Ok((seq, m)),
        Err(report) => fail(report.to_string()),
    }
}

/// The Fibonacci numbers with `F(1) = F(2) = 1`.
pub fn fibonacci(index: usize) -> i64 {
    let (mut prev, mut cur) = (0i64, 1i64);
    for _ in 1..index {
        let next = prev + cur;
        prev = cur;
        cur = next;
    }
    if index == 0 {
        0
    } else {
        cur
    }
}

/// One solution `w` of `det(v, w) = -1`; all others are `w + t v`.
fn unimodular_partner(v: LatticeVector) -> LatticeVector {
    let g = v.a.extended_gcd(&v.b);
    // a x + b y = g with g = ±1
    let (x, y) = (g.x * g.gcd, g.y * g.gcd);
    LatticeVector::new(y, -x)
}

struct Enumerator {
    bound: i64,
    k: usize,
    reachable: HashMap<(LatticeVector, usize), bool>,
}

impl Enumerator {
    /// Vectors `w` strictly inside the search box with `det(v, w) = -1`.
    fn successors(&self, v: LatticeVector) -> Vec<LatticeVector> {
        let base = unimodular_partner(v);
        // pick a nonzero coordinate of v to bound the parameter t
        let (step, offset) = if v.a != 0 { (v.a, base.a) } else { (v.b, base.b) };
        let (lo, hi) = (1 - offset, self.bound - offset);
        let (t_min, t_max) = if step > 0 {
            (Integer::div_ceil(&lo, &step), Integer::div_floor(&hi, &step))
        } else {
            (Integer::div_ceil(&hi, &step), Integer::div_floor(&lo, &step))
        };
        (t_min..=t_max)
            .map(|t| base + v.scale(t))
            .filter(|w| (1..=self.bound).contains(&w.a) && (1..=self.bound).contains(&w.b))
            .collect()
    }

    /// Whether `(1, 0)` can be reached from `v` in exactly `steps` steps.
    fn can_finish(&mut self, v: LatticeVector, steps: usize) -> bool {
        if steps == 1 {
            return det(v, LAST) == -1;
        }
        if let Some(&known) = self.reachable.get(&(v, steps)) {
            return known;
        }
        let ok = self.successors(v).into_iter().any(|w| self.can_finish(w, steps - 1));
        self.reachable.insert((v, steps), ok);
        ok
    }

    fn extend(&mut self, prefix: &mut Vec<LatticeVector>, out: &mut Vec<Vec<LatticeVector>>) {
        let cur = *prefix.last().expect("prefix starts with v_1");
        let remaining = self.k - prefix.len();
        if remaining == 1 {
            if det(cur, LAST) == -1 {
                let mut done = prefix.clone();
                done.push(LAST);
                out.push(done);
            }
            return;
        }
        for w in self.successors(cur) {
            if self.can_finish(w, remaining - 1) {
                prefix.push(w);
                self.extend(prefix, out);
                prefix.pop();
            }
        }
    }
}

/// All normalized sequences with `k = n + 2` vectors, in lexicographic order.
///
/// Interior vectors lie in the open positive quadrant with entries bounded
/// by `F(k)`; the search walks the one-parameter families of unimodular
/// successors and prunes prefixes that cannot reach `(1, 0)` in time.
pub fn enumerate(n: usize) -> Vec<ActionSequence> {
    let k = n + 2;
    let mut search = Enumerator {
        bound: fibonacci(k),
        k,
        reachable: HashMap::new(),
    };
    let mut raw = Vec::new();
    search.extend(&mut vec![FIRST], &mut raw);
    let mut seqs: Vec<ActionSequence> = raw
        .into_iter()
        .map(|vs| ActionSequence {
            vectors: vs
                .into_iter()
                .map(|v| PrimitiveVector::new(v.a, v.b).expect("unimodular chains are primitive"))
                .collect(),
        })
        .collect();
    seqs.sort();
    seqs.dedup();
    seqs
}
