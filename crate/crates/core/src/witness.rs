//! JSON witness format: every oracle evaluation serializes to a standalone
//! record (inputs, target, seed, tolerances) that replays to the same gap.
//!
//! Witness files are written at f64 regardless of the scalar lane, so the
//! format is stable; on the default f64 lane the round-trip is lossless and a
//! replay reproduces the gap exactly.

use std::fs;
use std::path::Path;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{ScalarFunction, WeightFunction};
use crate::interval::Interval;
use crate::linalg::{ComplexMatrix, HermitianMatrix, ToleranceConfig};
use crate::oracles::{
    CheckOutcome, IndexSetInstance, InequalityId, Oracle, OracleInput, TargetSpec,
};
use crate::samplers::{ContractionPair, ResolutionOfIdentity, SeedSpec, UnitalPositiveMap};
use crate::scalar::{real, Real};

pub const SCHEMA_VERSION: u32 = 1;

/// Dense complex matrix as row-major re/im tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDto {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixDto {
    pub fn from_complex<T: Real>(m: &ComplexMatrix<T>) -> Self {
        let (rows, cols) = (m.nrows(), m.ncols());
        let re = (0..rows)
            .map(|i| (0..cols).map(|j| m[(i, j)].re.as_f64()).collect())
            .collect();
        let im = (0..rows)
            .map(|i| (0..cols).map(|j| m[(i, j)].im.as_f64()).collect())
            .collect();
        Self { rows, cols, re, im }
    }

    pub fn from_hermitian<T: Real>(m: &HermitianMatrix<T>) -> Self {
        Self::from_complex(m.as_matrix())
    }

    pub fn to_complex<T: Real>(&self) -> Result<ComplexMatrix<T>> {
        if self.re.len() != self.rows
            || self.im.len() != self.rows
            || self.re.iter().chain(&self.im).any(|r| r.len() != self.cols)
        {
            return Err(Error::Parse("matrix table shape mismatch".into()));
        }
        Ok(ComplexMatrix::from_fn(self.rows, self.cols, |i, j| {
            Complex::new(real(self.re[i][j]), real(self.im[i][j]))
        }))
    }

    pub fn to_hermitian<T: Real>(&self) -> Result<HermitianMatrix<T>> {
        HermitianMatrix::new(self.to_complex()?)
    }
}

/// Interval as endpoints; an absent `hi` means unbounded above.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalDto {
    pub lo: f64,
    pub hi: Option<f64>,
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl IntervalDto {
    pub fn from_interval<T: Real>(k: &Interval<T>) -> Self {
        Self {
            lo: k.lo().as_f64(),
            hi: if k.is_bounded() { Some(k.hi().as_f64()) } else { None },
            closed_lo: k.closed_lo(),
            closed_hi: k.closed_hi(),
        }
    }

    pub fn to_interval<T: Real>(&self) -> Result<Interval<T>> {
        Interval::new(
            real(self.lo),
            self.hi.map(real).unwrap_or_else(T::infinity),
            self.closed_lo,
            self.closed_hi,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceDto {
    pub atol: f64,
    pub rtol: f64,
}

impl ToleranceDto {
    pub fn from_config<T: Real>(tol: &ToleranceConfig<T>) -> Self {
        Self { atol: tol.atol.as_f64(), rtol: tol.rtol.as_f64() }
    }

    pub fn to_config<T: Real>(&self) -> Result<ToleranceConfig<T>> {
        ToleranceConfig::new(real(self.atol), real(self.rtol))
    }
}

/// Serializable operands, one variant per inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputDto {
    Definition { a: MatrixDto, b: MatrixDto, alpha: f64 },
    Subunit { a: MatrixDto, b: MatrixDto, alpha: f64, beta: f64 },
    Jensen { matrices: Vec<MatrixDto>, weights: Vec<f64> },
    IndexSuperadd { weights: Vec<f64>, matrices: Vec<MatrixDto>, m: Vec<usize>, e: Vec<usize> },
    IndexChain { weights: Vec<f64>, matrices: Vec<MatrixDto> },
    HansenPedersen { a: MatrixDto, b: MatrixDto, c: MatrixDto, d: MatrixDto },
    Contraction { a: MatrixDto, v: MatrixDto },
    Projection { a: MatrixDto, q: MatrixDto },
    Resolution { weights: Vec<f64>, operators: Vec<MatrixDto>, points: Vec<f64> },
    Cdj { a: MatrixDto, kraus: Vec<MatrixDto>, transpose_twist: bool },
    InverseRatio { a: MatrixDto, b: MatrixDto },
    PowerMeanMonotone { a: MatrixDto, b: MatrixDto, p_lo: f64, p_hi: f64 },
    LogEuclideanLimit { a: MatrixDto, b: MatrixDto, p_small: f64 },
    ChaoticMean { a: MatrixDto, b: MatrixDto },
}

impl InputDto {
    pub fn from_input<T: Real>(input: &OracleInput<T>) -> Self {
        let h = MatrixDto::from_hermitian::<T>;
        match input {
            OracleInput::Definition { a, b, alpha } => {
                InputDto::Definition { a: h(a), b: h(b), alpha: alpha.as_f64() }
            }
            OracleInput::Subunit { a, b, alpha, beta } => InputDto::Subunit {
                a: h(a),
                b: h(b),
                alpha: alpha.as_f64(),
                beta: beta.as_f64(),
            },
            OracleInput::Jensen { matrices, weights } => InputDto::Jensen {
                matrices: matrices.iter().map(h).collect(),
                weights: weights.iter().map(|w| w.as_f64()).collect(),
            },
            OracleInput::IndexSuperadd { instance, m, e } => InputDto::IndexSuperadd {
                weights: instance.weights().iter().map(|w| w.as_f64()).collect(),
                matrices: instance.matrices().iter().map(h).collect(),
                m: m.clone(),
                e: e.clone(),
            },
            OracleInput::IndexChain { instance } => InputDto::IndexChain {
                weights: instance.weights().iter().map(|w| w.as_f64()).collect(),
                matrices: instance.matrices().iter().map(h).collect(),
            },
            OracleInput::HansenPedersen { a, b, pair } => InputDto::HansenPedersen {
                a: h(a),
                b: h(b),
                c: MatrixDto::from_complex(pair.c()),
                d: MatrixDto::from_complex(pair.d()),
            },
            OracleInput::Contraction { a, v } => {
                InputDto::Contraction { a: h(a), v: MatrixDto::from_complex(v) }
            }
            OracleInput::Projection { a, q } => InputDto::Projection { a: h(a), q: h(q) },
            OracleInput::Resolution { resolution } => InputDto::Resolution {
                weights: resolution.weights().iter().map(|w| w.as_f64()).collect(),
                operators: resolution.operators().iter().map(h).collect(),
                points: resolution.points().iter().map(|x| x.as_f64()).collect(),
            },
            OracleInput::Cdj { a, map } => InputDto::Cdj {
                a: h(a),
                kraus: map.kraus().iter().map(MatrixDto::from_complex).collect(),
                transpose_twist: map.transpose_twist(),
            },
            OracleInput::InverseRatio { a, b } => InputDto::InverseRatio { a: h(a), b: h(b) },
            OracleInput::PowerMeanMonotone { a, b, p_lo, p_hi } => InputDto::PowerMeanMonotone {
                a: h(a),
                b: h(b),
                p_lo: p_lo.as_f64(),
                p_hi: p_hi.as_f64(),
            },
            OracleInput::LogEuclideanLimit { a, b, p_small } => InputDto::LogEuclideanLimit {
                a: h(a),
                b: h(b),
                p_small: p_small.as_f64(),
            },
            OracleInput::ChaoticMean { a, b } => InputDto::ChaoticMean { a: h(a), b: h(b) },
        }
    }

    pub fn to_input<T: Real>(&self) -> Result<OracleInput<T>> {
        Ok(match self {
            InputDto::Definition { a, b, alpha } => OracleInput::Definition {
                a: a.to_hermitian()?,
                b: b.to_hermitian()?,
                alpha: real(*alpha),
            },
            InputDto::Subunit { a, b, alpha, beta } => OracleInput::Subunit {
                a: a.to_hermitian()?,
                b: b.to_hermitian()?,
                alpha: real(*alpha),
                beta: real(*beta),
            },
            InputDto::Jensen { matrices, weights } => OracleInput::Jensen {
                matrices: matrices.iter().map(|m| m.to_hermitian()).collect::<Result<_>>()?,
                weights: weights.iter().map(|&w| real(w)).collect(),
            },
            InputDto::IndexSuperadd { weights, matrices, m, e } => OracleInput::IndexSuperadd {
                instance: IndexSetInstance::new(
                    weights.iter().map(|&w| real(w)).collect(),
                    matrices.iter().map(|m| m.to_hermitian()).collect::<Result<_>>()?,
                )?,
                m: m.clone(),
                e: e.clone(),
            },
            InputDto::IndexChain { weights, matrices } => OracleInput::IndexChain {
                instance: IndexSetInstance::new(
                    weights.iter().map(|&w| real(w)).collect(),
                    matrices.iter().map(|m| m.to_hermitian()).collect::<Result<_>>()?,
                )?,
            },
            InputDto::HansenPedersen { a, b, c, d } => OracleInput::HansenPedersen {
                a: a.to_hermitian()?,
                b: b.to_hermitian()?,
                pair: ContractionPair::new(c.to_complex()?, d.to_complex()?)?,
            },
            InputDto::Contraction { a, v } => {
                OracleInput::Contraction { a: a.to_hermitian()?, v: v.to_complex()? }
            }
            InputDto::Projection { a, q } => {
                OracleInput::Projection { a: a.to_hermitian()?, q: q.to_hermitian()? }
            }
            InputDto::Resolution { weights, operators, points } => OracleInput::Resolution {
                resolution: ResolutionOfIdentity::new(
                    weights.iter().map(|&w| real(w)).collect(),
                    operators.iter().map(|m| m.to_hermitian()).collect::<Result<_>>()?,
                    points.iter().map(|&x| real(x)).collect(),
                )?,
            },
            InputDto::Cdj { a, kraus, transpose_twist } => OracleInput::Cdj {
                a: a.to_hermitian()?,
                map: UnitalPositiveMap::new(
                    kraus.iter().map(|m| m.to_complex()).collect::<Result<_>>()?,
                    *transpose_twist,
                )?,
            },
            InputDto::InverseRatio { a, b } => {
                OracleInput::InverseRatio { a: a.to_hermitian()?, b: b.to_hermitian()? }
            }
            InputDto::PowerMeanMonotone { a, b, p_lo, p_hi } => OracleInput::PowerMeanMonotone {
                a: a.to_hermitian()?,
                b: b.to_hermitian()?,
                p_lo: real(*p_lo),
                p_hi: real(*p_hi),
            },
            InputDto::LogEuclideanLimit { a, b, p_small } => OracleInput::LogEuclideanLimit {
                a: a.to_hermitian()?,
                b: b.to_hermitian()?,
                p_small: real(*p_small),
            },
            InputDto::ChaoticMean { a, b } => {
                OracleInput::ChaoticMean { a: a.to_hermitian()?, b: b.to_hermitian()? }
            }
        })
    }
}

/// A standalone, replayable record of one oracle evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub schema_version: u32,
    pub target: TargetSpec,
    /// The interval K the scalar function lives on.
    pub k: IntervalDto,
    pub tol: ToleranceDto,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<SeedSpec>,
    pub input: InputDto,
    pub gap: f64,
    pub holds: bool,
    /// `λ_max(LHS - RHS)` when positive.
    pub violation: f64,
    pub certified: bool,
}

impl WitnessFile {
    pub fn from_outcome<T: Real>(
        outcome: &CheckOutcome<T>,
        k: &Interval<T>,
        tol: &ToleranceConfig<T>,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            target: outcome.target.clone(),
            k: IntervalDto::from_interval(k),
            tol: ToleranceDto::from_config(tol),
            seed: outcome.seed,
            input: InputDto::from_input(&outcome.input),
            gap: outcome.gap.as_f64(),
            holds: outcome.holds,
            violation: outcome.violation().as_f64(),
            certified: outcome.certified_violation(),
        }
    }

    /// Rebuilds the oracle this witness was produced by.
    pub fn oracle<T: Real>(&self) -> Result<Oracle<T>> {
        let k: Interval<T> = self.k.to_interval()?;
        let f = self
            .target
            .f
            .as_ref()
            .map(|spec| ScalarFunction::parse(spec, k))
            .transpose()?;
        let h = self.target.h.as_ref().map(|spec| WeightFunction::parse(spec)).transpose()?;
        let p = real(self.target.p.unwrap_or(1.0));
        Oracle::new(self.target.inequality, f, h, p, k, self.tol.to_config()?)
    }

    /// Re-runs the oracle on the stored inputs.
    pub fn replay<T: Real>(&self) -> Result<CheckOutcome<T>> {
        let oracle = self.oracle::<T>()?;
        let input = self.input.to_input::<T>()?;
        let mut outcome = oracle.run(&input)?;
        outcome.seed = self.seed;
        Ok(outcome)
    }

    pub fn inequality(&self) -> InequalityId {
        self.target.inequality
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?)
            .map_err(|e| Error::Usage(format!("cannot write witness {}: {e}", path.display())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read witness {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{ScalarFunction, WeightFunction};
    use crate::oracles::{ExtraParams, InequalityId, Oracle};
    use crate::samplers::SeedSpec;

    fn k10() -> Interval<f64> {
        Interval::closed(0.0, 10.0).unwrap()
    }

    #[test]
    fn witness_round_trip_replays_to_identical_gap() {
        let tol = ToleranceConfig::default();
        for (idx, id) in InequalityId::ALL.iter().enumerate() {
            let f = if id.needs_f() {
                Some(ScalarFunction::power(1.5, k10()).unwrap())
            } else {
                None
            };
            let h = if id.needs_h() { Some(WeightFunction::identity()) } else { None };
            let oracle = Oracle::new(*id, f, h, 1.0, k10(), tol).unwrap();
            let mut rng = SeedSpec::new(31, idx as u64).rng();
            let input = oracle.sample_input(3, &ExtraParams::default(), &mut rng).unwrap();
            let mut outcome = oracle.run(&input).unwrap();
            outcome.seed = Some(SeedSpec::new(31, idx as u64));

            let witness = WitnessFile::from_outcome(&outcome, &k10(), &tol);
            let json = witness.to_json().unwrap();
            let back = WitnessFile::from_json(&json).unwrap();
            assert_eq!(witness, back, "{id}: witness JSON round-trips");

            let replayed = back.replay::<f64>().unwrap();
            assert_eq!(
                replayed.gap, outcome.gap,
                "{id}: replay reproduces the gap bit-for-bit on f64"
            );
        }
    }

    #[test]
    fn witness_payload_is_portable_across_lanes() {
        let tol = ToleranceConfig::default();
        let oracle = Oracle::new(
            InequalityId::Definition,
            Some(ScalarFunction::power(1.5, k10()).unwrap()),
            Some(WeightFunction::identity()),
            1.0,
            k10(),
            tol,
        )
        .unwrap();
        let mut rng = SeedSpec::new(32, 0).rng();
        let input = oracle.sample_input(2, &ExtraParams::default(), &mut rng).unwrap();
        let outcome = oracle.run(&input).unwrap();
        let witness = WitnessFile::from_outcome(&outcome, &k10(), &tol);
        // the same witness replays on the f32 lane within f32 accuracy
        let replayed = witness.replay::<f32>().unwrap();
        assert!((replayed.gap as f64 - outcome.gap).abs() < 1e-3);
    }
}
