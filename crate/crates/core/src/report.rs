//! The analysis pipeline and the JSON documents it produces.

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divisors::{solve_divisor_data, DivisorError, TwistorDivisorData};
use crate::fibers::{bimeromorphic_pairs, degree_matrix, invariant_fibers, model_degree, FiberError};
use crate::lattice::{enumerate, ActionSequence, SequenceFile, ValidationReport};
use crate::model::{
    classify_fibers, emit_full_model, emit_open_model_description, emit_reduced_model, system_meta, ConformalRoots,
    FiberClass, LinearSystemMeta, ModelEquations, ModelError, OpenModelDescription,
};
use crate::surface::{ComponentDivisor, SurfaceError, ToricSurface};

pub const DEFAULT_CAP: usize = 8;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot parse input: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Validation(#[from] ValidationReport),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Fiber(#[from] FiberError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

impl ReportError {
    /// Failures of the input itself, as opposed to bad options.
    pub fn is_validation(&self) -> bool {
        matches!(self, ReportError::Parse(_) | ReportError::Validation(_))
    }
}

/// Parse and validate an input document `{"n": .., "vectors": [..]}`.
pub fn parse_sequence(text: &str) -> Result<ActionSequence, ReportError> {
    let file: SequenceFile = serde_json::from_str(text)?;
    Ok(file.validate()?)
}

/// Model options shared by `analyze` and `model`.
#[derive(Clone, Debug, Default)]
pub struct ModelOptions {
    /// `r_3..r_k`; evenly spaced `1, 2, ..., k-2` when absent.
    pub roots: Option<Vec<BigRational>>,
    /// `c_1, c_2, ...`; all ones when absent.
    pub constants: Option<Vec<BigRational>>,
    pub full: bool,
}

impl ModelOptions {
    fn roots_for(&self, k: usize) -> Result<ConformalRoots, ModelError> {
        match &self.roots {
            Some(values) => ConformalRoots::new(k, values.clone()),
            None => Ok(ConformalRoots::evenly_spaced(k)),
        }
    }

    fn constants_for(&self, mu: i64) -> Vec<BigRational> {
        let count = if self.full { mu as usize + 2 } else { 2 };
        self.constants
            .clone()
            .unwrap_or_else(|| vec![BigRational::one(); count])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberPair {
    pub alpha: usize,
    pub f: ComponentDivisor,
    pub fbar: ComponentDivisor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ModelReport {
    #[serde(flatten)]
    pub equations: ModelEquations,
    pub roots: ConformalRoots,
    pub degree: i64,
    pub meta: LinearSystemMeta,
    pub open_model: OpenModelDescription,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub input: ActionSequence,
    pub surface: ToricSurface,
    pub degree_matrix: Vec<Vec<i64>>,
    pub bimeromorphic_pairs: Vec<(usize, usize)>,
    pub fibers: Vec<FiberPair>,
    pub divisors: Vec<TwistorDivisorData>,
    pub models: Vec<ModelReport>,
    pub warnings: Vec<String>,
}

fn build_model(
    surface: &ToricSurface,
    divisors: &[TwistorDivisorData],
    i: usize,
    j: usize,
    options: &ModelOptions,
) -> Result<ModelReport, ReportError> {
    let degree = model_degree(surface, i, j)?;
    let (di, dj) = (&divisors[i - 1], &divisors[j - 1]);
    let roots = options.roots_for(surface.k)?;
    let constants = options.constants_for((di.m - dj.m).abs());
    let equations = if options.full {
        emit_full_model(di, dj, &roots, &constants)?
    } else {
        emit_reduced_model(di, dj, &roots, &constants)?
    };
    let meta = system_meta(di, dj)?;
    let open_model = emit_open_model_description(&equations, degree);
    Ok(ModelReport {
        equations,
        roots,
        degree,
        meta,
        open_model,
    })
}

fn solve_all(surface: &ToricSurface) -> Result<Vec<TwistorDivisorData>, ReportError> {
    (1..=surface.k)
        .map(|a| solve_divisor_data(surface, a).map_err(ReportError::from))
        .collect()
}

/// The full pipeline for one sequence.
///
/// `pairs` selects the models to emit; all adjacent pairs `(i, i+1)` when
/// `None`.
pub fn run_analyze(
    seq: &ActionSequence,
    pairs: Option<&[(usize, usize)]>,
    options: &ModelOptions,
) -> Result<AnalysisReport, ReportError> {
    let surface = ToricSurface::build(seq)?;
    let k = surface.k;
    let matrix = degree_matrix(&surface);
    let fibers = (1..=k)
        .map(|alpha| {
            let (f, fbar) = invariant_fibers(&surface, alpha)?;
            Ok(FiberPair {
                alpha,
                f: f.base,
                fbar: fbar.base,
            })
        })
        .collect::<Result<Vec<_>, FiberError>>()?;
    let divisors = solve_all(&surface)?;

    let mut warnings = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            let d = matrix[i - 1][j - 1];
            if d > 1 {
                warnings.push(format!("pair ({i},{j}) has d = {d}: the model map is {d}:1"));
            }
        }
    }
    for data in &divisors {
        if let Some(beta) = (1..=k).find(|&b| data.l(b) > 1) {
            warnings.push(format!(
                "Y{} has a non-reduced component at S{beta} (l = {})",
                data.alpha,
                data.l(beta)
            ));
        }
    }

    let adjacent: Vec<(usize, usize)> = (1..k).map(|i| (i, i + 1)).collect();
    let chosen = pairs.unwrap_or(&adjacent);
    let models = chosen
        .iter()
        .map(|&(i, j)| build_model(&surface, &divisors, i, j, options))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(AnalysisReport {
        input: seq.clone(),
        bimeromorphic_pairs: bimeromorphic_pairs(&surface),
        surface,
        degree_matrix: matrix,
        fibers,
        divisors,
        models,
        warnings,
    })
}

/// One model for the pair `(i, j)`.
pub fn run_model(seq: &ActionSequence, i: usize, j: usize, options: &ModelOptions) -> Result<ModelReport, ReportError> {
    let surface = ToricSurface::build(seq)?;
    // reject bad pairs before solving anything
    model_degree(&surface, i, j)?;
    let divisors = solve_all(&surface)?;
    build_model(&surface, &divisors, i, j, options)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub i: usize,
    pub j: usize,
    pub roots: ConformalRoots,
    pub fibers: Vec<FiberClass>,
}

pub fn run_classify(
    seq: &ActionSequence,
    i: usize,
    j: usize,
    options: &ModelOptions,
) -> Result<ClassifyReport, ReportError> {
    let model = run_model(seq, i, j, options)?;
    let fibers = classify_fibers(&model.equations, &model.roots);
    Ok(ClassifyReport {
        i: model.equations.i,
        j: model.equations.j,
        roots: model.roots,
        fibers,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SequenceSummary {
    pub vectors: Vec<[i64; 2]>,
    pub self_int: Vec<i64>,
    pub m: Vec<i64>,
    pub bimeromorphic_pairs: Vec<(usize, usize)>,
    pub max_degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub n: usize,
    pub count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequences: Option<Vec<SequenceSummary>>,
}

pub fn summarize(seq: &ActionSequence) -> Result<SequenceSummary, ReportError> {
    let surface = ToricSurface::build(seq)?;
    let divisors = solve_all(&surface)?;
    let max_degree = degree_matrix(&surface).into_iter().flatten().max().unwrap_or(0);
    Ok(SequenceSummary {
        vectors: seq.pairs(),
        m: divisors.iter().map(|d| d.m).collect(),
        bimeromorphic_pairs: bimeromorphic_pairs(&surface),
        self_int: surface.self_int,
        max_degree,
    })
}

pub fn run_enumerate(n: usize, cap: usize, count_only: bool) -> Result<EnumerateReport, ReportError> {
    if n > cap {
        return Err(ReportError::CapExceeded { n, cap });
    }
    let seqs = enumerate(n);
    let sequences = if count_only {
        None
    } else {
        Some(seqs.iter().map(summarize).collect::<Result<Vec<_>, _>>()?)
    };
    Ok(EnumerateReport {
        n,
        count: seqs.len(),
        sequences,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate;

    #[test]
    fn analyze_hexagon() {
        let seq = validate(&[[0, 1], [1, 1], [1, 0]]).unwrap();
        let report = run_analyze(&seq, None, &ModelOptions::default()).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                assert_eq!(report.degree_matrix[i][j], 1);
            }
        }
        let ms: Vec<i64> = report.divisors.iter().map(|d| d.m).collect();
        assert_eq!(ms, vec![1, 1, 1]);
        assert_eq!(report.models.len(), 2);
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn analyze_flags_degree_two() {
        let seq = validate(&[[0, 1], [1, 1], [2, 1], [1, 0]]).unwrap();
        let report = run_analyze(&seq, None, &ModelOptions::default()).unwrap();
        assert!(report.warnings.iter().any(|w| w.starts_with("pair (1,3) has d = 2")));
    }

    #[test]
    fn enumerate_modes() {
        assert_eq!(run_enumerate(2, DEFAULT_CAP, true).unwrap().count, 2);
        let r = run_enumerate(0, DEFAULT_CAP, false).unwrap();
        assert_eq!(r.sequences.unwrap().len(), 1);
        assert!(matches!(
            run_enumerate(9, DEFAULT_CAP, true),
            Err(ReportError::CapExceeded { n: 9, cap: 8 })
        ));
    }

    #[test]
    fn model_errors() {
        let seq = validate(&[[0, 1], [1, 1], [1, 0]]).unwrap();
        assert!(matches!(
            run_model(&seq, 2, 2, &ModelOptions::default()),
            Err(ReportError::Fiber(FiberError::BadIndices { .. }))
        ));
        let dup = ModelOptions {
            roots: Some(vec![BigRational::from_integer(0.into())]),
            ..Default::default()
        };
        assert!(matches!(
            run_model(&seq, 1, 2, &dup),
            Err(ReportError::Model(ModelError::RootCollision { .. }))
        ));
    }

    #[test]
    fn parse_errors_are_validation_errors() {
        assert!(parse_sequence("{not json").unwrap_err().is_validation());
        assert!(parse_sequence(r#"{"n":1,"vectors":[[0,1],[2,1],[1,0]]}"#)
            .unwrap_err()
            .is_validation());
    }
}
