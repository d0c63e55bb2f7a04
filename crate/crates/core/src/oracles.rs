//! One checkable predicate per inequality: each oracle computes the two sides
//! as matrices, validates the stated hypotheses (returning a named
//! hypothesis-violation error when one fails), and reports a Loewner gap
//! verdict together with a replayable record of its inputs.

use std::time::Instant;

use num_traits::Float;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{ScalarFunction, WeightFunction};
use crate::interval::Interval;
use crate::linalg::{
    loewner_compare, matrix_exp, matrix_log, spectral_decompose, ComplexMatrix, HermitianMatrix,
    OrderVerdict, SpectralDecomposition, ToleranceConfig,
};
use crate::samplers::{
    projection_defect, random_coisometry_pair, random_contraction, random_projection,
    random_psd_with_spectrum, random_resolution, random_simplex_weights,
    random_unital_positive_map, ContractionPair, ResolutionOfIdentity, SeedSpec,
    UnitalPositiveMap,
};
use crate::scalar::{real, scaled_tol, Real};

/// Matching tolerance for weight-sum and probability hypotheses.
const WEIGHT_ATOL: f64 = 1e-12;

/// Strictly-positive-definite floor used by the log/inverse based checks.
const STRICT_PD_ATOL: f64 = 1e-9;

/// Structural defect allowance, relative to dimension.
const STRUCTURAL_RTOL: f64 = 1e-12;

/// The inequalities the workbench knows how to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityId {
    Definition,
    Subunit,
    Jensen,
    IndexSuperadd,
    IndexChain,
    HansenPedersen,
    Contraction,
    Projection,
    Resolution,
    Cdj,
    InverseRatio,
    ChaoticMean,
    PowerMeanMonotone,
    LogEuclideanLimit,
}

impl InequalityId {
    pub const ALL: [InequalityId; 14] = [
        InequalityId::Definition,
        InequalityId::Subunit,
        InequalityId::Jensen,
        InequalityId::IndexSuperadd,
        InequalityId::IndexChain,
        InequalityId::HansenPedersen,
        InequalityId::Contraction,
        InequalityId::Projection,
        InequalityId::Resolution,
        InequalityId::Cdj,
        InequalityId::InverseRatio,
        InequalityId::ChaoticMean,
        InequalityId::PowerMeanMonotone,
        InequalityId::LogEuclideanLimit,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InequalityId::Definition => "definition",
            InequalityId::Subunit => "subunit",
            InequalityId::Jensen => "jensen",
            InequalityId::IndexSuperadd => "index_superadd",
            InequalityId::IndexChain => "index_chain",
            InequalityId::HansenPedersen => "hansen_pedersen",
            InequalityId::Contraction => "contraction",
            InequalityId::Projection => "projection",
            InequalityId::Resolution => "resolution",
            InequalityId::Cdj => "cdj",
            InequalityId::InverseRatio => "inverse_ratio",
            InequalityId::ChaoticMean => "chaotic_mean",
            InequalityId::PowerMeanMonotone => "power_mean_monotone",
            InequalityId::LogEuclideanLimit => "log_euclidean_limit",
        }
    }

    /// Whether this oracle needs a scalar function `f`.
    pub fn needs_f(&self) -> bool {
        !matches!(self, InequalityId::PowerMeanMonotone | InequalityId::LogEuclideanLimit)
    }

    /// Whether this oracle needs a weight function `h`.
    pub fn needs_h(&self) -> bool {
        !matches!(
            self,
            InequalityId::PowerMeanMonotone
                | InequalityId::LogEuclideanLimit
                | InequalityId::ChaoticMean
        )
    }

    /// Chaotic-mean verdicts are exploration data, never assertions; runners
    /// must not turn them into failure exit codes.
    pub fn is_exploratory(&self) -> bool {
        matches!(self, InequalityId::ChaoticMean)
    }
}

impl std::fmt::Display for InequalityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InequalityId::ALL
            .iter()
            .find(|id| id.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown inequality {s:?}")))
    }
}

/// Weighted family for the index-set function: positive weights and PSD
/// matrices, indexed 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexSetInstance<T: Real> {
    weights: Vec<T>,
    matrices: Vec<HermitianMatrix<T>>,
}

impl<T: Real> IndexSetInstance<T> {
    pub fn new(weights: Vec<T>, matrices: Vec<HermitianMatrix<T>>) -> Result<Self> {
        if weights.len() != matrices.len() || weights.is_empty() {
            return Err(Error::Usage("weights and matrices must align and be non-empty".into()));
        }
        if weights.iter().any(|&w| !(w > T::zero())) {
            return Err(Error::HypothesisViolation("all index weights must be positive".into()));
        }
        let n = matrices[0].dim();
        if matrices.iter().any(|m| m.dim() != n) {
            return Err(Error::Usage("index matrices must share one dimension".into()));
        }
        Ok(Self { weights, matrices })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].dim()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn matrices(&self) -> &[HermitianMatrix<T>] {
        &self.matrices
    }

    /// `W_E`, the weight of a subset.
    pub fn weight_of(&self, set: &[usize]) -> T {
        set.iter().map(|&i| self.weights[i]).sum()
    }

    fn validate_subset(&self, set: &[usize]) -> Result<()> {
        if set.is_empty() {
            return Err(Error::Usage("index set must be non-empty".into()));
        }
        let mut seen = vec![false; self.len()];
        for &i in set {
            if i >= self.len() {
                return Err(Error::Usage(format!("index {i} out of range 0..{}", self.len())));
            }
            if seen[i] {
                return Err(Error::Usage(format!("index {i} repeated in set")));
            }
            seen[i] = true;
        }
        Ok(())
    }
}

/// Typed operands of one oracle evaluation; this is the replayable part of a
/// witness.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleInput<T: Real> {
    Definition { a: HermitianMatrix<T>, b: HermitianMatrix<T>, alpha: T },
    Subunit { a: HermitianMatrix<T>, b: HermitianMatrix<T>, alpha: T, beta: T },
    Jensen { matrices: Vec<HermitianMatrix<T>>, weights: Vec<T> },
    IndexSuperadd { instance: IndexSetInstance<T>, m: Vec<usize>, e: Vec<usize> },
    IndexChain { instance: IndexSetInstance<T> },
    HansenPedersen { a: HermitianMatrix<T>, b: HermitianMatrix<T>, pair: ContractionPair<T> },
    Contraction { a: HermitianMatrix<T>, v: ComplexMatrix<T> },
    Projection { a: HermitianMatrix<T>, q: HermitianMatrix<T> },
    Resolution { resolution: ResolutionOfIdentity<T> },
    Cdj { a: HermitianMatrix<T>, map: UnitalPositiveMap<T> },
    InverseRatio { a: HermitianMatrix<T>, b: HermitianMatrix<T> },
    PowerMeanMonotone { a: HermitianMatrix<T>, b: HermitianMatrix<T>, p_lo: T, p_hi: T },
    LogEuclideanLimit { a: HermitianMatrix<T>, b: HermitianMatrix<T>, p_small: T },
    ChaoticMean { a: HermitianMatrix<T>, b: HermitianMatrix<T> },
}

impl<T: Real> OracleInput<T> {
    pub fn inequality(&self) -> InequalityId {
        match self {
            OracleInput::Definition { .. } => InequalityId::Definition,
            OracleInput::Subunit { .. } => InequalityId::Subunit,
            OracleInput::Jensen { .. } => InequalityId::Jensen,
            OracleInput::IndexSuperadd { .. } => InequalityId::IndexSuperadd,
            OracleInput::IndexChain { .. } => InequalityId::IndexChain,
            OracleInput::HansenPedersen { .. } => InequalityId::HansenPedersen,
            OracleInput::Contraction { .. } => InequalityId::Contraction,
            OracleInput::Projection { .. } => InequalityId::Projection,
            OracleInput::Resolution { .. } => InequalityId::Resolution,
            OracleInput::Cdj { .. } => InequalityId::Cdj,
            OracleInput::InverseRatio { .. } => InequalityId::InverseRatio,
            OracleInput::PowerMeanMonotone { .. } => InequalityId::PowerMeanMonotone,
            OracleInput::LogEuclideanLimit { .. } => InequalityId::LogEuclideanLimit,
            OracleInput::ChaoticMean { .. } => InequalityId::ChaoticMean,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            OracleInput::Definition { a, .. }
            | OracleInput::Subunit { a, .. }
            | OracleInput::HansenPedersen { a, .. }
            | OracleInput::Contraction { a, .. }
            | OracleInput::Projection { a, .. }
            | OracleInput::Cdj { a, .. }
            | OracleInput::InverseRatio { a, .. }
            | OracleInput::PowerMeanMonotone { a, .. }
            | OracleInput::LogEuclideanLimit { a, .. }
            | OracleInput::ChaoticMean { a, .. } => a.dim(),
            OracleInput::Jensen { matrices, .. } => matrices[0].dim(),
            OracleInput::IndexSuperadd { instance, .. } => instance.dim(),
            OracleInput::IndexChain { instance } => instance.dim(),
            OracleInput::Resolution { resolution } => resolution.dim(),
        }
    }
}

/// Serializable description of what an oracle was checking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub inequality: InequalityId,
    pub f: Option<String>,
    pub h: Option<String>,
    pub p: Option<f64>,
}

/// Outcome of one inequality instance: both sides, the signed Loewner gap,
/// and the inputs needed to replay it.
#[derive(Debug, Clone)]
pub struct CheckOutcome<T: Real> {
    pub inequality: InequalityId,
    /// `λ_min(RHS - LHS)`; non-negative means the inequality holds.
    pub gap: T,
    pub holds: bool,
    pub verdict: OrderVerdict<T>,
    pub lhs: HermitianMatrix<T>,
    pub rhs: HermitianMatrix<T>,
    pub input: OracleInput<T>,
    pub target: TargetSpec,
    pub seed: Option<SeedSpec>,
    pub wall_time: f64,
}

impl<T: Real> CheckOutcome<T> {
    pub fn certified_violation(&self) -> bool {
        self.verdict.certified_violation()
    }

    pub fn violation(&self) -> T {
        self.verdict.violation()
    }
}

// ---------------------------------------------------------------------------
// hypothesis gating
// ---------------------------------------------------------------------------

fn hypothesis(name: impl Into<String>) -> Error {
    Error::HypothesisViolation(name.into())
}

fn ensure_supermultiplicative<T: Real>(h: &WeightFunction<T>) -> Result<()> {
    if !h.is_supermultiplicative() {
        return Err(hypothesis(format!("h = {} is not super-multiplicative on its domain", h.spec_string())));
    }
    Ok(())
}

fn ensure_half_condition<T: Real>(h: &WeightFunction<T>) -> Result<()> {
    if !h.satisfies_half_condition() {
        return Err(hypothesis(format!(
            "h = {} fails the half-condition 2h(1/2) <= h(a)/a on (0,1)",
            h.spec_string()
        )));
    }
    Ok(())
}

fn ensure_vanishes_at_zero<T: Real>(f: &ScalarFunction<T>) -> Result<()> {
    if !f.vanishes_at_zero() {
        return Err(hypothesis("f(0) = 0 is required".to_string()));
    }
    Ok(())
}

fn ensure_spectrum<T: Real>(
    label: &str,
    a: &HermitianMatrix<T>,
    k: &Interval<T>,
    tol: &ToleranceConfig<T>,
) -> Result<()> {
    let check = crate::linalg::spectrum_in_interval(a, k, tol.atol)?;
    if let Some(w) = check.worst {
        return Err(hypothesis(format!(
            "spectrum of {label} leaves K: eigenvalue {} at distance {:.3e}",
            w.value.as_f64(),
            w.distance.as_f64()
        )));
    }
    Ok(())
}

fn ensure_open_unit<T: Real>(label: &str, x: T) -> Result<()> {
    if !(x > T::zero() && x < T::one()) {
        return Err(hypothesis(format!("{label} = {} is outside (0,1)", x.as_f64())));
    }
    Ok(())
}

fn ensure_positive_p<T: Real>(p: T) -> Result<()> {
    if !(p > T::zero() && Float::is_finite(p)) {
        return Err(hypothesis(format!("p = {} must be positive", p.as_f64())));
    }
    Ok(())
}

fn ensure_strictly_pd<T: Real>(label: &str, dec: &SpectralDecomposition<T>) -> Result<()> {
    if dec.lambda_min() <= real(STRICT_PD_ATOL) {
        return Err(hypothesis(format!(
            "{label} must be strictly positive definite (lambda_min = {:.3e})",
            dec.lambda_min().as_f64()
        )));
    }
    Ok(())
}

fn structural_allowance<T: Real>(n: usize) -> T {
    scaled_tol::<T>(STRUCTURAL_RTOL) * real::<T>(n as f64)
}

// ---------------------------------------------------------------------------
// shared computation helpers
// ---------------------------------------------------------------------------

/// `[Σ w_i A_i^p]^{1/p}` from pre-decomposed operands.
fn weighted_p_mean<T: Real>(
    terms: &[(T, &SpectralDecomposition<T>)],
    p: T,
) -> Result<HermitianMatrix<T>> {
    let n = terms[0].1.dim();
    let mut sum = HermitianMatrix::zeros(n);
    for (w, dec) in terms {
        sum = sum.add(&dec.power(p)?.scale(*w));
    }
    spectral_decompose(&sum)?.power(T::one() / p)
}

fn finish<T: Real>(
    inequality: InequalityId,
    target: TargetSpec,
    input: OracleInput<T>,
    lhs: HermitianMatrix<T>,
    rhs: HermitianMatrix<T>,
    tol: &ToleranceConfig<T>,
    started: Instant,
) -> Result<CheckOutcome<T>> {
    let verdict = loewner_compare(&lhs, &rhs, tol)?;
    Ok(CheckOutcome {
        inequality,
        gap: verdict.gap,
        holds: verdict.holds,
        verdict,
        lhs,
        rhs,
        input,
        target,
        seed: None,
        wall_time: started.elapsed().as_secs_f64(),
    })
}

fn target_of<T: Real>(
    inequality: InequalityId,
    f: Option<&ScalarFunction<T>>,
    h: Option<&WeightFunction<T>>,
    p: Option<T>,
) -> TargetSpec {
    TargetSpec {
        inequality,
        f: f.map(|f| f.spec_string()),
        h: h.map(|h| h.spec_string()),
        p: p.map(|p| p.as_f64()),
    }
}

// ---------------------------------------------------------------------------
// the oracles
// ---------------------------------------------------------------------------

/// Definition check: `f([αA^p + (1-α)B^p]^{1/p}) ⪯ h(α)f(A) + h(1-α)f(B)`.
pub fn check_definition<T: Real>(
    f: &ScalarFunction<T>,
    h: &WeightFunction<T>,
    p: T,
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
    alpha: T,
    tol: &ToleranceConfig<T>,
) -> Result<CheckOutcome<T>> {
    let started = Instant::now();
    ensure_positive_p(p)?;
    ensure_open_unit("alpha", alpha)?;
    ensure_supermultiplicative(h)?;
    let k = f.domain();
    ensure_spectrum("A", a, k, tol)?;
    ensure_spectrum("B", b, k, tol)?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }

    let da = spectral_decompose(a)?;
    let db = spectral_decompose(b)?;
    let beta = T::one() - alpha;
    let mean = weighted_p_mean(&[(alpha, &da), (beta, &db)], p)?;
    let lhs = spectral_decompose(&mean)?.apply_in(f, k)?;
    let rhs = da.apply_in(f, k)?.scale(h.eval(alpha)?).add(&db.apply_in(f, k)?.scale(h.eval(beta)?));

    let input = OracleInput::Definition { a: a.clone(), b: b.clone(), alpha };
    let target = target_of(InequalityId::Definition, Some(f), Some(h), Some(p));
    finish(InequalityId::Definition, target, input, lhs, rhs, tol, started)
}

/// Sub-unit weight check: `f([αA^p + βB^p]^{1/p}) ⪯ h(α)f(A) + h(β)f(B)` for
/// `α, β > 0` with `α + β <= 1`; requires `f(0) = 0` and `0 ∈ K`.
pub fn check_subunit_weights<T: Real>(
    f: &ScalarFunction<T>,
    h: &WeightFunction<T>,
    p: T,
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
    alpha: T,
    beta: T,
    tol: &ToleranceConfig<T>,
) -> Result<CheckOutcome<T>> {
    let started = Instant::now();
    ensure_positive_p(p)?;
    if !(alpha > T::zero() && beta > T::zero()) {
        return Err(hypothesis("alpha and beta must be positive"));
    }
    if alpha + beta > T::one() + scaled_tol::<T>(WEIGHT_ATOL) {
        return Err(hypothesis(format!(
            "alpha + beta = {} exceeds 1",
            (alpha + beta).as_f64()
        )));
    }
    ensure_vanishes_at_zero(f)?;
    ensure_supermultiplicative(h)?;
    let k = f.domain();
    if !k.contains_within(T::zero(), tol.atol) {
        return Err(hypothesis("K must contain 0 for the sub-unit weight bound"));
    }
    ensure_spectrum("A", a, k, tol)?;
    ensure_spectrum("B", b, k, tol)?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }

    let da = spectral_decompose(a)?;
    let db = spectral_decompose(b)?;
    let mean = weighted_p_mean(&[(alpha, &da), (beta, &db)], p)?;
    let lhs = spectral_decompose(&mean)?.apply_in(f, k)?;
    let rhs = da.apply_in(f, k)?.scale(h.eval(alpha)?).add(&db.apply_in(f, k)?.scale(h.eval(beta)?));

    let input = OracleInput::Subunit { a: a.clone(), b: b.clone(), alpha, beta };
    let target = target_of(InequalityId::Subunit, Some(f), Some(h), Some(p));
    finish(InequalityId::Subunit, target, input, lhs, rhs, tol, started)
}

/// Jensen check: `f([Σ α_i A_i^p]^{1/p}) ⪯ Σ h(α_i) f(A_i)` over a weight
/// simplex.
pub fn check_jensen<T: Real>(
    f: &ScalarFunction<T>,
    h: &WeightFunction<T>,
    p: T,
    matrices: &[HermitianMatrix<T>],
    weights: &[T],
    tol: &ToleranceConfig<T>,
) -> Result<CheckOutcome<T>> {
    let started = Instant::now();
    ensure_positive_p(p)?;
    if matrices.len() != weights.len() || matrices.is_empty() {
        return Err(Error::Usage("need equally many matrices and weights".into()));
    }
    let total: T = weights.iter().copied().sum();
    if Float::abs(total - T::one()) > scaled_tol::<T>(WEIGHT_ATOL) {
        return Err(hypothesis(format!("weights sum to {}, not 1", total.as_f64())));
    }
    for &w in weights {
        ensure_open_unit("alpha_i", w)?;
    }
    ensure_supermultiplicative(h)?;
    let k = f.domain();
    let n = matrices[0].dim();
    for (i, a) in matrices.iter().enumerate() {
        if a.dim() != n {
            return Err(Error::DimensionMismatch { left: a.dim(), right: n });
        }
        ensure_spectrum(&format!("A_{i}"), a, k, tol)?;
    }

    let decs: Vec<SpectralDecomposition<T>> =
        matrices.iter().map(spectral_decompose).collect::<Result<_>>()?;
    let terms: Vec<(T, &SpectralDecomposition<T>)> =
        weights.iter().copied().zip(decs.iter()).collect();
    let mean = weighted_p_mean(&terms, p)?;
    let lhs = spectral_decompose(&mean)?.apply_in(f, k)?;
    let mut rhs = HermitianMatrix::zeros(n);
    for (dec, &w) in decs.iter().zip(weights) {
        rhs = rhs.add(&dec.apply_in(f, k)?.scale(h.eval(w)?));
    }

    let input = OracleInput::Jensen { matrices: matrices.to_vec(), weights: weights.to_vec() };
    let target = target_of(InequalityId::Jensen, Some(f), Some(h), Some(p));
    finish(InequalityId::Jensen, target, input, lhs, rhs, tol, started)
}

/// Index-set function
/// `F(E) = h(W_E) f([W_E^{-1} Σ_{i∈E} w_i A_i^p]^{1/p}) - Σ_{i∈E} h(w_i) f(A_i)`.
pub fn index_set_value<T: Real>(
    f: &ScalarFunction<T>,
    h: &WeightFunction<T>,
    p: T,
    instance: &IndexSetInstance<T>,
    set: &[usize],
) -> Result<HermitianMatrix<T>> {
    ensure_positive_p(p)?;
    instance.validate_subset(set)?;
    let w_e = instance.weight_of(set);
    // weight sums may overshoot the domain boundary by roundoff
    let weight_in_domain = |label: String, w: T| -> Result<T> {
        if !h.domain().contains_within(w, scaled_tol::<T>(WEIGHT_ATOL)) {
            return Err(hypothesis(format!("{label} = {} outside domain of h", w.as_f64())));
        }
        Ok(h.domain().clamp_into(w))
    };
    for &i in set {
        weight_in_domain(format!("weight w_{i}"), instance.weights()[i])?;
    }
    let w_e = weight_in_domain("W_E".into(), w_e)?;

    let k = f.domain();
    let decs: Vec<(usize, SpectralDecomposition<T>)> = set
        .iter()
        .map(|&i| spectral_decompose(&instance.matrices()[i]).map(|d| (i, d)))
        .collect::<Result<_>>()?;
    let terms: Vec<(T, &SpectralDecomposition<T>)> = decs
        .iter()
        .map(|(i, d)| (instance.weights()[*i] / w_e, d))
        .collect();
    let mean = weighted_p_mean(&terms, p)?;
    let mut value = spectral_decompose(&mean)?.apply_in(f, k)?.scale(h.eval(w_e)?);
    for (i, dec) in &decs {
        let w = h.domain().clamp_into(instance.weights()[*i]);
        value = value.sub(&dec.apply_in(f, k)?.scale(h.eval(w)?));
    }
    Ok(value)
}

/// Superadditivity of the index-set function: `F(M ∪ E) ⪯ F(M) + F(E)` for
/// disjoint non-empty `M`, `E`.
pub fn check_index_superadditive<T: Real>(
    f: &ScalarFunction<T>,
    h: &WeightFunction<T>,
    p: T,
    instance: &IndexSetInstance<T>,
    m: &[usize],
    e: &[usize],
    tol: &ToleranceConfig<T>,
) -> Result<CheckOutcome<T>> {
    let started = Instant::now();
    instance.validate_subset(m)?;
    instance.validate_subset(e)?;
    if m.iter().any(|i| e.contains(i)) {
        return Err(Error::Usage("M and E must be disjoint".into()));
    }
    ensure_supermultiplicative(h)?;
    let k = f.domain();
    for (i, a) in instance.matrices().iter().enumerate() {
        ensure_spectrum(&format!("A_{i}"), a, k, tol)?;
    }

    let mut union: Vec<usize> = m.iter().chain(e.iter()).copied().collect();
    union.sort_unstable();
    let lhs = index_set_value(f, h, p, instance, &union)?;
    let rhs = index_set_value(f, h, p, instance, m)?.add(&index_set_value(f, h, p, instance, e)?);

    let input = OracleInput::IndexSuperadd {
        instance: instance.clone(),
        m: m.to_vec(),
        e: e.to_vec(),
    };
    let target = target_of(InequalityId::IndexSuperadd, Some(f), Some(h), Some(p));
    finish(InequalityId::IndexSuperadd, target, input, lhs, rhs, tol, started)
}

/// Chain report for `F(M_k) ⪯ F(M_{k-1}) ⪯ ... ⪯ F(M_2) ⪯ 0` plus the
/// min-over-pairs bound `F(M_k) ⪯ F({i,j})` for all `i < j`.
#[derive(Debug, Clone)]
pub struct IndexChainReport<T: Real> {
    /// One verdict per chain stage, `F(M_2) ⪯ 0` first.
    pub links: Vec<CheckOutcome<T>>,
    /// The pairwise bound, reported at its worst pair.
    pub min_pair: CheckOutcome<T>,
    pub worst_gap: T,
    pub holds_all: bool,
}

impl<T: Real> IndexChainReport<T> {
    /// The stage outcome with the smallest gap (the chain's verdict).
    pub fn worst(&self) -> &CheckOutcome<T> {
        self.links
            .iter()
            .chain(std::iter::once(&self.min_pair))
            .min_by(|a, b| a.gap.partial_cmp(&b.gap).unwrap())
            .unwrap()
    }
}

pub fn check_index_chain<T: Real>(
    f: &ScalarFunction<T>,
    h: &WeightFunction<T>,
    p: T,
    instance: &IndexSetInstance<T>,
    tol: &ToleranceConfig<T>,
) -> Result<IndexChainReport<T>> {
    let started = Instant::now();
    let k = instance.len();
    if k < 2 {
        return Err(Error::Usage("chain needs at least two indices".into()));
    }
    ensure_supermultiplicative(h)?;
    for (i, a) in instance.matrices().iter().enumerate() {
        ensure_spectrum(&format!("A_{i}"), a, f.domain(), tol)?;
    }

    let target = target_of(InequalityId::IndexChain, Some(f), Some(h), Some(p));
    let input = OracleInput::IndexChain { instance: instance.clone() };
    let n = instance.dim();

    let prefix = |l: usize| -> Vec<usize> { (0..l).collect() };
    let mut links = Vec::with_capacity(k - 1);
    let mut prev = index_set_value(f, h, p, instance, &prefix(2))?;
    // F(M_2) <= 0
    {
        let verdict = loewner_compare(&prev, &HermitianMatrix::zeros(n), tol)?;
        links.push(CheckOutcome {
            inequality: InequalityId::IndexChain,
            gap: verdict.gap,
            holds: verdict.holds,
            verdict,
            lhs: prev.clone(),
            rhs: HermitianMatrix::zeros(n),
            input: input.clone(),
            target: target.clone(),
            seed: None,
            wall_time: started.elapsed().as_secs_f64(),
        });
    }
    for l in 3..=k {
        let cur = index_set_value(f, h, p, instance, &prefix(l))?;
        let verdict = loewner_compare(&cur, &prev, tol)?;
        links.push(CheckOutcome {
            inequality: InequalityId::IndexChain,
            gap: verdict.gap,
            holds: verdict.holds,
            verdict,
            lhs: cur.clone(),
            rhs: prev,
            input: input.clone(),
            target: target.clone(),
            seed: None,
            wall_time: started.elapsed().as_secs_f64(),
        });
        prev = cur;
    }

    // min-over-pairs bound on F(M_k)
    let f_mk = index_set_value(f, h, p, instance, &prefix(k))?;
    let mut worst_pair: Option<(OrderVerdict<T>, HermitianMatrix<T>)> = None;
    for i in 0..k {
        for j in (i + 1)..k {
            let pair_value = index_set_value(f, h, p, instance, &[i, j])?;
            let verdict = loewner_compare(&f_mk, &pair_value, tol)?;
            if worst_pair.as_ref().map_or(true, |(w, _)| verdict.gap < w.gap) {
                worst_pair = Some((verdict, pair_value));
            }
        }
    }
    let (pair_verdict, pair_value) = worst_pair.expect("k >= 2 has at least one pair");
    let min_pair = CheckOutcome {
        inequality: InequalityId::IndexChain,
        gap: pair_verdict.gap,
        holds: pair_verdict.holds,
        verdict: pair_verdict,
        lhs: f_mk,
        rhs: pair_value,
        input,
        target,
        seed: None,
        wall_time: started.elapsed().as_secs_f64(),
    };

    let worst_gap = links
        .iter()
        .map(|o| o.gap)
        .chain(std::iter::once(min_pair.gap))
        .fold(T::infinity(), Float::min);
    let holds_all = links.iter().all(|o| o.holds) && min_pair.holds;
    Ok(IndexChainReport { links, min_pair, worst_gap, holds_all })
}

/// Hansen-Pedersen check:
/// `f([C A^p C† + D B^p D†]^{1/p}) ⪯ 2h(1/2)(C f(A) C† + D f(B) D†)`.
pub fn check_hansen_pedersen<T: Real>(
    f: &ScalarFunction<T>,
    h: &WeightFunction<T>,
    p: T,
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
    pair: &ContractionPair<T>,
    tol: &ToleranceConfig<T>,
) -> Result<CheckOutcome<T>> {
    let started = Instant::now();
    ensure_positive_p(p)?;
    pair.validate()?;
    ensure_supermultiplicative(h)?;
    let k = f.domain();
    ensure_spectrum("A", a, k, tol)?;
    ensure_spectrum("B", b, k, tol)?;
    if a.dim() != pair.dim() || b.dim() != pair.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: pair.dim() });
    }

    let da = spectral_decompose(a)?;
    let db = spectral_decompose(b)?;
    let inner = da.power(p)?.conjugate_by(pair.c())?.add(&db.power(p)?.conjugate_by(pair.d())?);
    let mean = spectral_decompose(&inner)?.power(T::one() / p)?;
    let lhs = spectral_decompose(&mean)?.apply_in(f, k)?;
    let rhs = da
        .apply_in(f, k)?
        .conjugate_by(pair.c())?
        .add(&db.apply_in(f, k)?.conjugate_by(pair.d())?)
        .scale(h.two_h_half());

    let input = OracleInput::HansenPedersen { a: a.clone(), b: b.clone(), pair: pair.clone() };
    let target = target_of(InequalityId::HansenPedersen, Some(f), Some(h), Some(p));
    finish(InequalityId::HansenPedersen, target, input, lhs, rhs, tol, started)
}

/// Contraction form: `f((V†A^pV)^{1/p}) ⪯ 2h(1/2) V†f(A)V` for `||V|| <= 1`.
pub fn check_contraction_form<T: Real>(
    f: &ScalarFunction<T>,
    h: &WeightFunction<T>,
    p: T,
    a: &HermitianMatrix<T>,
    v: &ComplexMatrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<CheckOutcome<T>> {
    let started = Instant::now();
    ensure_positive_p(p)?;
    let norm = crate::linalg::operator_norm(v)?;
    if norm > T::one() + scaled_tol::<T>(STRICT_PD_ATOL) {
        return Err(hypothesis(format!("V is not a contraction: ||V|| = {}", norm.as_f64())));
    }
    ensure_vanishes_at_zero(f)?;
    ensure_half_condition(h)?;
    ensure_supermultiplicative(h)?;
    let k = f.domain();
    ensure_spectrum("A", a, k, tol)?;
    if v.nrows() != a.dim() || v.ncols() != a.dim() {
        return Err(Error::DimensionMismatch { left: v.nrows(), right: a.dim() });
    }

    let da = spectral_decompose(a)?;
    let inner = da.power(p)?.conjugate_by(&v.adjoint())?;
    let mean = spectral_decompose(&inner)?.power(T::one() / p)?;
    let lhs = spectral_decompose(&mean)?.apply_in(f, k)?;
    let rhs = da.apply_in(f, k)?.conjugate_by(&v.adjoint())?.scale(h.two_h_half());

    let input = OracleInput::Contraction { a: a.clone(), v: v.clone() };
    let target = target_of(InequalityId::Contraction, Some(f), Some(h), Some(p));
    finish(InequalityId::Contraction, target, input, lhs, rhs, tol, started)
}

/// Projection form: `f((QA^pQ)^{1/p}) ⪯ 2h(1/2) Q f(A) Q` for an orthogonal
/// projection `Q`.
pub fn check_projection_form<T: Real>(
    f: &ScalarFunction<T>,
    h: &WeightFunction<T>,
    p: T,
    a: &HermitianMatrix<T>,
    q: &HermitianMatrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<CheckOutcome<T>> {
    let started = Instant::now();
    ensure_positive_p(p)?;
    let defect = projection_defect(q);
    if defect > structural_allowance::<T>(q.dim()) {
        return Err(hypothesis(format!(
            "Q is not an orthogonal projection: ||Q^2 - Q|| = {:.3e}",
            defect.as_f64()
        )));
    }
    ensure_vanishes_at_zero(f)?;
    ensure_half_condition(h)?;
    ensure_supermultiplicative(h)?;
    let k = f.domain();
    ensure_spectrum("A", a, k, tol)?;
    if q.dim() != a.dim() {
        return Err(Error::DimensionMismatch { left: q.dim(), right: a.dim() });
    }

    let da = spectral_decompose(a)?;
    let inner = da.power(p)?.conjugate_by(q.as_matrix())?;
    let mean = spectral_decompose(&inner)?.power(T::one() / p)?;
    let lhs = spectral_decompose(&mean)?.apply_in(f, k)?;
    let rhs = da.apply_in(f, k)?.conjugate_by(q.as_matrix())?.scale(h.two_h_half());

    let input = OracleInput::Projection { a: a.clone(), q: q.clone() };
    let target = target_of(InequalityId::Projection, Some(f), Some(h), Some(p));
    finish(InequalityId::Projection, target, input, lhs, rhs, tol, started)
}

/// Resolution form: `f([Σ α_i x_i^p A_i]^{1/p}) ⪯ Σ h(α_i) f(x_i) A_i` for
/// `Σ α_i A_i = I`.
pub fn check_resolution_form<T: Real>(
    f: &ScalarFunction<T>,
    h: &WeightFunction<T>,
    p: T,
    resolution: &ResolutionOfIdentity<T>,
    tol: &ToleranceConfig<T>,
) -> Result<CheckOutcome<T>> {
    let started = Instant::now();
    ensure_positive_p(p)?;
    resolution.validate()?;
    ensure_half_condition(h)?;
    ensure_supermultiplicative(h)?;
    let k = f.domain();
    for &x in resolution.points() {
        if !k.contains_within(x, tol.atol) {
            return Err(hypothesis(format!("point x = {} leaves K", x.as_f64())));
        }
    }

    let n = resolution.dim();
    let mut inner = HermitianMatrix::zeros(n);
    let mut rhs = HermitianMatrix::zeros(n);
    for ((&alpha, &x), op) in resolution
        .weights()
        .iter()
        .zip(resolution.points())
        .zip(resolution.operators())
    {
        let x = k.clamp_into(x);
        inner = inner.add(&op.scale(alpha * Float::powf(x, p)));
        rhs = rhs.add(&op.scale(h.eval(alpha)? * f.eval(x)?));
    }
    let mean = spectral_decompose(&inner)?.power(T::one() / p)?;
    let lhs = spectral_decompose(&mean)?.apply_in(f, k)?;

    let input = OracleInput::Resolution { resolution: resolution.clone() };
    let target = target_of(InequalityId::Resolution, Some(f), Some(h), Some(p));
    finish(InequalityId::Resolution, target, input, lhs, rhs, tol, started)
}

/// Choi-Davis-Jensen form: `f((Φ(A^p))^{1/p}) ⪯ 2h(1/2) Φ(f(A))` for a unital
/// positive map `Φ`.
pub fn check_cdj<T: Real>(
    f: &ScalarFunction<T>,
    h: &WeightFunction<T>,
    p: T,
    a: &HermitianMatrix<T>,
    map: &UnitalPositiveMap<T>,
    tol: &ToleranceConfig<T>,
) -> Result<CheckOutcome<T>> {
    let started = Instant::now();
    ensure_positive_p(p)?;
    map.validate()?;
    ensure_vanishes_at_zero(f)?;
    ensure_half_condition(h)?;
    ensure_supermultiplicative(h)?;
    let k = f.domain();
    ensure_spectrum("A", a, k, tol)?;
    if map.dim() != a.dim() {
        return Err(Error::DimensionMismatch { left: map.dim(), right: a.dim() });
    }

    let da = spectral_decompose(a)?;
    let mapped = map.apply(&da.power(p)?)?;
    let mean = spectral_decompose(&mapped)?.power(T::one() / p)?;
    let lhs = spectral_decompose(&mean)?.apply_in(f, k)?;
    let rhs = map.apply(&da.apply_in(f, k)?)?.scale(h.two_h_half());

    let input = OracleInput::Cdj { a: a.clone(), map: map.clone() };
    let target = target_of(InequalityId::Cdj, Some(f), Some(h), Some(p));
    finish(InequalityId::Cdj, target, input, lhs, rhs, tol, started)
}

/// Inverse-ratio check (p = 1): `A^{-1}f(A) ⪯ 2h(1/2) B^{-1}f(B)` for
/// strictly positive definite `A ⪯ B`. Both sides go through the functional
/// calculus of `t ↦ f(t)/t`, so they are Hermitian by construction.
pub fn check_inverse_ratio<T: Real>(
    f: &ScalarFunction<T>,
    h: &WeightFunction<T>,
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<CheckOutcome<T>> {
    let started = Instant::now();
    ensure_vanishes_at_zero(f)?;
    ensure_half_condition(h)?;
    ensure_supermultiplicative(h)?;
    let k = f.domain();
    ensure_spectrum("A", a, k, tol)?;
    ensure_spectrum("B", b, k, tol)?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }

    let da = spectral_decompose(a)?;
    let db = spectral_decompose(b)?;
    ensure_strictly_pd("A", &da)?;
    ensure_strictly_pd("B", &db)?;
    let order = loewner_compare(a, b, tol)?;
    if !order.holds {
        return Err(hypothesis(format!("A <= B fails: gap {:.3e}", order.gap.as_f64())));
    }

    let ratio = |dec: &SpectralDecomposition<T>| -> Result<HermitianMatrix<T>> {
        let slack = dec.spectrum_slack();
        dec.try_map(|l| {
            if !k.contains_within(l, slack) {
                return Err(Error::SpectrumViolation {
                    value: l.as_f64(),
                    lo: k.lo().as_f64(),
                    hi: k.hi().as_f64(),
                });
            }
            let x = k.clamp_into(l);
            Ok(f.eval(x)? / x)
        })
    };
    let lhs = ratio(&da)?;
    let rhs = ratio(&db)?.scale(h.two_h_half());

    let input = OracleInput::InverseRatio { a: a.clone(), b: b.clone() };
    let target = target_of(InequalityId::InverseRatio, Some(f), Some(h), Some(T::one()));
    finish(InequalityId::InverseRatio, target, input, lhs, rhs, tol, started)
}

/// The power mean `F(p) = ((A^p + B^p)/2)^{1/p}` of two PSD matrices.
pub fn power_mean<T: Real>(
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
    p: T,
) -> Result<HermitianMatrix<T>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    ensure_positive_p(p)?;
    let half = real::<T>(0.5);
    let da = spectral_decompose(a)?;
    let db = spectral_decompose(b)?;
    weighted_p_mean(&[(half, &da), (half, &db)], p)
}

/// Monotonicity of the power mean in `p` on `[1, ∞)`:
/// `F(p_lo) ⪯ F(p_hi)` for `1 <= p_lo < p_hi`.
pub fn check_power_mean_monotone<T: Real>(
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
    p_lo: T,
    p_hi: T,
    tol: &ToleranceConfig<T>,
) -> Result<CheckOutcome<T>> {
    let started = Instant::now();
    if !(p_lo >= T::one() && p_hi > p_lo) {
        return Err(hypothesis(format!(
            "need 1 <= p_lo < p_hi, got ({}, {})",
            p_lo.as_f64(),
            p_hi.as_f64()
        )));
    }
    let lhs = power_mean(a, b, p_lo)?;
    let rhs = power_mean(a, b, p_hi)?;

    let input =
        OracleInput::PowerMeanMonotone { a: a.clone(), b: b.clone(), p_lo, p_hi };
    let target = target_of::<T>(InequalityId::PowerMeanMonotone, None, None, None);
    finish(InequalityId::PowerMeanMonotone, target, input, lhs, rhs, tol, started)
}

/// Relative residual of `F(p)` against the chaotic mean
/// `exp((log A + log B)/2)` at one value of `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitResidual<T> {
    pub p: T,
    pub residual: T,
}

/// Residual report for the `p -> 0` limit of the power mean.
pub fn check_log_euclidean_limit<T: Real>(
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
    p_small: T,
) -> Result<LimitResidual<T>> {
    if !(p_small > T::zero() && p_small <= real(1e-2)) {
        return Err(hypothesis(format!(
            "p_small = {} must lie in (0, 1e-2]",
            p_small.as_f64()
        )));
    }
    let da = spectral_decompose(a)?;
    let db = spectral_decompose(b)?;
    ensure_strictly_pd("A", &da)?;
    ensure_strictly_pd("B", &db)?;

    let chaotic = chaotic_mean_matrix(a, b)?;
    let f_p = power_mean(a, b, p_small)?;
    let scale = chaotic.fro_norm();
    let residual = f_p.sub(&chaotic).fro_norm() / scale;
    Ok(LimitResidual { p: p_small, residual })
}

/// `exp((log A + log B)/2)`, the chaotic mean of two PD matrices.
pub fn chaotic_mean_matrix<T: Real>(
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
) -> Result<HermitianMatrix<T>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    let log_mean = matrix_log(a)?.add(&matrix_log(b)?).scale(real(0.5));
    matrix_exp(&log_mean)
}

/// Exploration check of the open question:
/// `f(exp((log A + log B)/2)) ⪯ (f(A) + f(B))/2`. Verdicts are recorded as
/// data, never asserted as theorem checks.
pub fn check_chaotic_mean<T: Real>(
    f: &ScalarFunction<T>,
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<CheckOutcome<T>> {
    let started = Instant::now();
    let da = spectral_decompose(a)?;
    let db = spectral_decompose(b)?;
    ensure_strictly_pd("A", &da)?;
    ensure_strictly_pd("B", &db)?;
    let k = f.domain();
    ensure_spectrum("A", a, k, tol)?;
    ensure_spectrum("B", b, k, tol)?;

    let mean = chaotic_mean_matrix(a, b)?;
    let lhs = spectral_decompose(&mean)?.apply_in(f, k)?;
    let rhs = da.apply_in(f, k)?.add(&db.apply_in(f, k)?).scale(real(0.5));

    let input = OracleInput::ChaoticMean { a: a.clone(), b: b.clone() };
    let target = target_of(InequalityId::ChaoticMean, Some(f), None, None);
    finish(InequalityId::ChaoticMean, target, input, lhs, rhs, tol, started)
}

// ---------------------------------------------------------------------------
// uniform dispatch: resolved oracle + input sampling
// ---------------------------------------------------------------------------

/// Sampling knobs for the structured operands.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtraParams<T> {
    /// Family size for Jensen / index sets / resolutions.
    pub k: usize,
    pub m_kraus: usize,
    /// Projection rank; `None` draws uniformly from `0..=n`.
    pub rank: Option<usize>,
    /// Upper exponent for the power-mean monotonicity check.
    pub p_hi: T,
    /// Starting `p` for the log-Euclidean limit residual.
    pub p_small: T,
    pub isometry: bool,
    pub transpose_twist: bool,
}

impl<T: Real> Default for ExtraParams<T> {
    fn default() -> Self {
        Self {
            k: 4,
            m_kraus: 3,
            rank: None,
            p_hi: real(2.0),
            p_small: real(1e-2),
            isometry: false,
            transpose_twist: false,
        }
    }
}

/// A fully resolved check target: which inequality, with which `f`, `h`, `p`,
/// over which spectral interval, at which tolerances.
#[derive(Debug, Clone)]
pub struct Oracle<T: Real> {
    pub inequality: InequalityId,
    pub f: Option<ScalarFunction<T>>,
    pub h: Option<WeightFunction<T>>,
    pub p: T,
    pub spectrum: Interval<T>,
    pub tol: ToleranceConfig<T>,
}

impl<T: Real> Oracle<T> {
    pub fn new(
        inequality: InequalityId,
        f: Option<ScalarFunction<T>>,
        h: Option<WeightFunction<T>>,
        p: T,
        spectrum: Interval<T>,
        tol: ToleranceConfig<T>,
    ) -> Result<Self> {
        if inequality.needs_f() && f.is_none() {
            return Err(Error::Usage(format!("{inequality} requires a scalar function f")));
        }
        if inequality.needs_h() && h.is_none() {
            return Err(Error::Usage(format!("{inequality} requires a weight function h")));
        }
        if let Some(f) = &f {
            if *f.domain() != spectrum {
                return Err(Error::Usage("the sampling interval K must equal the domain of f".into()));
            }
        }
        Ok(Self { inequality, f, h, p, spectrum, tol })
    }

    pub fn target_spec(&self) -> TargetSpec {
        TargetSpec {
            inequality: self.inequality,
            f: self.f.as_ref().map(|f| f.spec_string()),
            h: self.h.as_ref().map(|h| h.spec_string()),
            p: if self.inequality.needs_f() { Some(self.p.as_f64()) } else { None },
        }
    }

    fn f(&self) -> Result<&ScalarFunction<T>> {
        self.f.as_ref().ok_or_else(|| Error::Usage("oracle is missing f".into()))
    }

    fn h(&self) -> Result<&WeightFunction<T>> {
        self.h.as_ref().ok_or_else(|| Error::Usage("oracle is missing h".into()))
    }

    /// Runs this oracle on a typed input. The input variant must match the
    /// target inequality.
    pub fn run(&self, input: &OracleInput<T>) -> Result<CheckOutcome<T>> {
        if input.inequality() != self.inequality {
            return Err(Error::Usage(format!(
                "input is for {} but the oracle targets {}",
                input.inequality(),
                self.inequality
            )));
        }
        let tol = &self.tol;
        match input {
            OracleInput::Definition { a, b, alpha } => {
                check_definition(self.f()?, self.h()?, self.p, a, b, *alpha, tol)
            }
            OracleInput::Subunit { a, b, alpha, beta } => {
                check_subunit_weights(self.f()?, self.h()?, self.p, a, b, *alpha, *beta, tol)
            }
            OracleInput::Jensen { matrices, weights } => {
                check_jensen(self.f()?, self.h()?, self.p, matrices, weights, tol)
            }
            OracleInput::IndexSuperadd { instance, m, e } => {
                check_index_superadditive(self.f()?, self.h()?, self.p, instance, m, e, tol)
            }
            OracleInput::IndexChain { instance } => {
                check_index_chain(self.f()?, self.h()?, self.p, instance, tol)
                    .map(|report| report.worst().clone())
            }
            OracleInput::HansenPedersen { a, b, pair } => {
                check_hansen_pedersen(self.f()?, self.h()?, self.p, a, b, pair, tol)
            }
            OracleInput::Contraction { a, v } => {
                check_contraction_form(self.f()?, self.h()?, self.p, a, v, tol)
            }
            OracleInput::Projection { a, q } => {
                check_projection_form(self.f()?, self.h()?, self.p, a, q, tol)
            }
            OracleInput::Resolution { resolution } => {
                check_resolution_form(self.f()?, self.h()?, self.p, resolution, tol)
            }
            OracleInput::Cdj { a, map } => check_cdj(self.f()?, self.h()?, self.p, a, map, tol),
            OracleInput::InverseRatio { a, b } => {
                check_inverse_ratio(self.f()?, self.h()?, a, b, tol)
            }
            OracleInput::PowerMeanMonotone { a, b, p_lo, p_hi } => {
                check_power_mean_monotone(a, b, *p_lo, *p_hi, tol)
            }
            OracleInput::LogEuclideanLimit { a, b, p_small } => {
                self.run_limit_sequence(a, b, *p_small)
            }
            OracleInput::ChaoticMean { a, b } => check_chaotic_mean(self.f()?, a, b, tol),
        }
    }

    /// Residuals at `p, p/10, p/100` must decrease, with the last below 1e-3.
    /// The gap is the worst margin across those requirements.
    fn run_limit_sequence(
        &self,
        a: &HermitianMatrix<T>,
        b: &HermitianMatrix<T>,
        p_small: T,
    ) -> Result<CheckOutcome<T>> {
        let started = Instant::now();
        let tenth = real::<T>(0.1);
        let ps = [p_small, p_small * tenth, p_small * tenth * tenth];
        let mut residuals = Vec::with_capacity(3);
        for &p in &ps {
            residuals.push(check_log_euclidean_limit(a, b, p)?.residual);
        }
        let mut gap = real::<T>(1e-3) - residuals[2];
        for w in residuals.windows(2) {
            gap = Float::min(gap, w[0] - w[1]);
        }
        let chaotic = chaotic_mean_matrix(a, b)?;
        let last = power_mean(a, b, ps[2])?;
        let holds = gap >= -self.tol.atol;
        let verdict = OrderVerdict { gap, scale: T::one(), band: self.tol.atol, holds };
        Ok(CheckOutcome {
            inequality: InequalityId::LogEuclideanLimit,
            gap,
            holds,
            verdict,
            lhs: last,
            rhs: chaotic,
            input: OracleInput::LogEuclideanLimit { a: a.clone(), b: b.clone(), p_small },
            target: self.target_spec(),
            seed: None,
            wall_time: started.elapsed().as_secs_f64(),
        })
    }

    /// Samples a random input for this oracle's inequality. Strictly
    /// positive-definite targets draw spectra from `[max(lo, 0.1), hi]`.
    pub fn sample_input(
        &self,
        dim: usize,
        extra: &ExtraParams<T>,
        rng: &mut ChaCha12Rng,
    ) -> Result<OracleInput<T>> {
        let k_int = self.spectrum.capped_default();
        let psd = |rng: &mut ChaCha12Rng| random_psd_with_spectrum::<T>(dim, &k_int, rng);
        let open_unit = |rng: &mut ChaCha12Rng| {
            let eps = 1e-9;
            real::<T>(eps + rng.random::<f64>() * (1.0 - 2.0 * eps))
        };
        let strict = || -> Result<Interval<T>> {
            let lo = Float::max(k_int.lo(), real(0.1));
            if lo >= k_int.hi() {
                return Err(Error::Usage(
                    "K is too narrow for a strictly positive-definite sampler".into(),
                ));
            }
            Interval::closed(lo, k_int.hi())
        };

        Ok(match self.inequality {
            InequalityId::Definition => {
                let a = psd(rng);
                let b = psd(rng);
                OracleInput::Definition { a, b, alpha: open_unit(rng) }
            }
            InequalityId::Subunit => {
                let a = psd(rng);
                let b = psd(rng);
                let gamma = real::<T>(0.05) + real::<T>(0.95) * real(rng.random::<f64>());
                let split = open_unit(rng);
                OracleInput::Subunit { a, b, alpha: gamma * split, beta: gamma * (T::one() - split) }
            }
            InequalityId::Jensen => {
                let k = extra.k.max(2);
                let matrices = (0..k).map(|_| psd(rng)).collect();
                let weights = random_simplex_weights::<T>(k, rng);
                OracleInput::Jensen { matrices, weights }
            }
            InequalityId::IndexSuperadd => {
                let instance = self.sample_index_instance(dim, extra.k.max(2), rng)?;
                let k = instance.len();
                let mut order: Vec<usize> = (0..k).collect();
                for i in (1..k).rev() {
                    order.swap(i, rng.random_range(0..=i));
                }
                let cut = rng.random_range(1..k);
                let (m, e) = order.split_at(cut);
                let mut m = m.to_vec();
                let mut e = e.to_vec();
                m.sort_unstable();
                e.sort_unstable();
                OracleInput::IndexSuperadd { instance, m, e }
            }
            InequalityId::IndexChain => {
                let instance = self.sample_index_instance(dim, extra.k.max(2), rng)?;
                OracleInput::IndexChain { instance }
            }
            InequalityId::HansenPedersen => {
                let a = psd(rng);
                let b = psd(rng);
                let pair = random_coisometry_pair(dim, rng)?;
                OracleInput::HansenPedersen { a, b, pair }
            }
            InequalityId::Contraction => {
                let a = psd(rng);
                let v = random_contraction(dim, extra.isometry, rng)?;
                OracleInput::Contraction { a, v }
            }
            InequalityId::Projection => {
                let a = psd(rng);
                let rank = match extra.rank {
                    Some(r) => r.min(dim),
                    None => rng.random_range(0..=dim),
                };
                let q = random_projection(dim, rank, rng)?;
                OracleInput::Projection { a, q }
            }
            InequalityId::Resolution => {
                let resolution = random_resolution(dim, extra.k.max(2), &k_int, rng)?;
                OracleInput::Resolution { resolution }
            }
            InequalityId::Cdj => {
                let a = psd(rng);
                let map = random_unital_positive_map(dim, extra.m_kraus.max(1), extra.transpose_twist, rng)?;
                OracleInput::Cdj { a, map }
            }
            InequalityId::InverseRatio => {
                let pd = strict()?;
                let a = random_psd_with_spectrum::<T>(dim, &pd, rng);
                let head = pd.hi() - spectral_decompose(&a)?.lambda_max();
                let bump_spectrum = Interval::closed(T::zero(), Float::max(head, T::zero()))?;
                let bump = random_psd_with_spectrum::<T>(dim, &bump_spectrum, rng);
                OracleInput::InverseRatio { a: a.clone(), b: a.add(&bump) }
            }
            InequalityId::PowerMeanMonotone => {
                let a = psd(rng);
                let b = psd(rng);
                let p_lo = Float::max(self.p, T::one());
                OracleInput::PowerMeanMonotone { a, b, p_lo, p_hi: extra.p_hi }
            }
            InequalityId::LogEuclideanLimit => {
                let pd = strict()?;
                let a = random_psd_with_spectrum::<T>(dim, &pd, rng);
                let b = random_psd_with_spectrum::<T>(dim, &pd, rng);
                OracleInput::LogEuclideanLimit { a, b, p_small: extra.p_small }
            }
            InequalityId::ChaoticMean => {
                let pd = strict()?;
                let a = random_psd_with_spectrum::<T>(dim, &pd, rng);
                let b = random_psd_with_spectrum::<T>(dim, &pd, rng);
                OracleInput::ChaoticMean { a, b }
            }
        })
    }

    fn sample_index_instance(
        &self,
        dim: usize,
        k: usize,
        rng: &mut ChaCha12Rng,
    ) -> Result<IndexSetInstance<T>> {
        let k_int = self.spectrum.capped_default();
        let matrices: Vec<HermitianMatrix<T>> =
            (0..k).map(|_| random_psd_with_spectrum::<T>(dim, &k_int, rng)).collect();
        // weights normalized to total 1 so every W_E stays inside (0, 1],
        // the domain shared by all shipped weight families
        let weights = random_simplex_weights::<T>(k, rng);
        IndexSetInstance::new(weights, matrices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samplers::SeedSpec;
    use approx::assert_relative_eq;

    fn k10() -> Interval<f64> {
        Interval::closed(0.0, 10.0).unwrap()
    }

    fn f_power(s: f64) -> ScalarFunction<f64> {
        ScalarFunction::power(s, k10()).unwrap()
    }

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    #[test]
    fn definition_scalar_example() {
        // n=1, f=t^2, p=1, h=identity, A=[2], B=[4], alpha=1/2: LHS=9, RHS=10
        let f = f_power(2.0);
        let h = WeightFunction::identity();
        let a = HermitianMatrix::from_real_diagonal(&[2.0]);
        let b = HermitianMatrix::from_real_diagonal(&[4.0]);
        let out = check_definition(&f, &h, 1.0, &a, &b, 0.5, &tol()).unwrap();
        assert_relative_eq!(out.lhs.entry(0, 0).re, 9.0, epsilon = 1e-12);
        assert_relative_eq!(out.rhs.entry(0, 0).re, 10.0, epsilon = 1e-12);
        assert_relative_eq!(out.gap, 1.0, epsilon = 1e-12);
        assert!(out.holds);
    }

    #[test]
    fn definition_equal_arguments_identity_weight() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let mut rng = SeedSpec::new(11, 0).rng();
        let a = crate::samplers::random_psd_with_spectrum::<f64>(3, &k10(), &mut rng);
        let out = check_definition(&f, &h, 1.0, &a, &a, 0.37, &tol()).unwrap();
        assert!(out.gap.abs() <= 1e-10 * out.verdict.scale.max(1.0));
    }

    #[test]
    fn definition_rejects_bad_hypotheses() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let a = HermitianMatrix::from_real_diagonal(&[1.0]);
        let err = check_definition(&f, &h, 1.0, &a, &a, 1.5, &tol()).unwrap_err();
        assert!(err.is_hypothesis_violation());
        let err = check_definition(&f, &h, -1.0, &a, &a, 0.5, &tol()).unwrap_err();
        assert!(err.is_hypothesis_violation());
        let outside = HermitianMatrix::from_real_diagonal(&[11.0]);
        let err = check_definition(&f, &h, 1.0, &outside, &a, 0.5, &tol()).unwrap_err();
        assert!(err.is_hypothesis_violation());
    }

    #[test]
    fn subunit_reduces_to_definition_on_the_simplex() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let mut rng = SeedSpec::new(12, 0).rng();
        let a = crate::samplers::random_psd_with_spectrum::<f64>(3, &k10(), &mut rng);
        let b = crate::samplers::random_psd_with_spectrum::<f64>(3, &k10(), &mut rng);
        let alpha = 0.3;
        let sub = check_subunit_weights(&f, &h, 1.0, &a, &b, alpha, 1.0 - alpha, &tol()).unwrap();
        let def = check_definition(&f, &h, 1.0, &a, &b, alpha, &tol()).unwrap();
        assert_relative_eq!(sub.gap, def.gap, epsilon = 1e-12);
    }

    #[test]
    fn subunit_zero_matrix_absorbs() {
        // B = 0 and f(0)=0: LHS = f(alpha^{1/p} A), RHS = h(alpha) f(A)
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let a = HermitianMatrix::from_real_diagonal(&[4.0, 1.0]);
        let zero = HermitianMatrix::zeros(2);
        let alpha = 0.4;
        let beta = 0.3;
        let out = check_subunit_weights(&f, &h, 1.0, &a, &zero, alpha, beta, &tol()).unwrap();
        let expect_00 = alpha.powf(1.5) * 4.0f64.powf(1.5);
        assert_relative_eq!(out.lhs.entry(0, 0).re, expect_00, epsilon = 1e-10);
        let rhs_00 = alpha * 4.0f64.powf(1.5);
        assert_relative_eq!(out.rhs.entry(0, 0).re, rhs_00, epsilon = 1e-10);
        assert!(out.holds);
    }

    #[test]
    fn subunit_requires_vanishing_f_and_zero_in_k() {
        let h = WeightFunction::identity();
        let a = HermitianMatrix::from_real_diagonal(&[1.0]);
        let f_const = ScalarFunction::polynomial(vec![1.0], k10()).unwrap();
        let err = check_subunit_weights(&f_const, &h, 1.0, &a, &a, 0.3, 0.3, &tol()).unwrap_err();
        assert!(err.is_hypothesis_violation());

        let shifted = Interval::closed(0.5, 10.0).unwrap();
        let f = ScalarFunction::power(1.5, shifted).unwrap();
        let a = HermitianMatrix::from_real_diagonal(&[1.0]);
        let err = check_subunit_weights(&f, &h, 1.0, &a, &a, 0.3, 0.3, &tol()).unwrap_err();
        assert!(err.is_hypothesis_violation());
    }

    #[test]
    fn jensen_two_terms_matches_definition() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let mut rng = SeedSpec::new(13, 0).rng();
        for _ in 0..10 {
            let a = crate::samplers::random_psd_with_spectrum::<f64>(3, &k10(), &mut rng);
            let b = crate::samplers::random_psd_with_spectrum::<f64>(3, &k10(), &mut rng);
            let alpha = 0.25;
            let jen = check_jensen(
                &f,
                &h,
                1.0,
                &[a.clone(), b.clone()],
                &[alpha, 1.0 - alpha],
                &tol(),
            )
            .unwrap();
            let def = check_definition(&f, &h, 1.0, &a, &b, alpha, &tol()).unwrap();
            let scale = jen.verdict.scale.max(1.0);
            assert!((jen.gap - def.gap).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn jensen_q_class_uses_reciprocal_weights() {
        let f = f_power(1.5);
        let h = WeightFunction::reciprocal();
        let mut rng = SeedSpec::new(14, 0).rng();
        let mats: Vec<_> = (0..3)
            .map(|_| crate::samplers::random_psd_with_spectrum::<f64>(2, &k10(), &mut rng))
            .collect();
        let w = vec![0.5, 0.25, 0.25];
        let out = check_jensen(&f, &h, 1.0, &mats, &w, &tol()).unwrap();
        assert!(out.holds, "Q-class Jensen should hold, gap {}", out.gap);
        // RHS is sum of f(A_i)/alpha_i
        let mut rhs = HermitianMatrix::zeros(2);
        for (m, &wi) in mats.iter().zip(&w) {
            rhs = rhs.add(&f.apply(m).unwrap().scale(1.0 / wi));
        }
        assert!(rhs.sub(&out.rhs).fro_norm() < 1e-10);
    }

    #[test]
    fn index_singleton_is_zero() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let a = HermitianMatrix::from_real_diagonal(&[2.0, 5.0]);
        let inst = IndexSetInstance::new(vec![1.0], vec![a]).unwrap();
        // w = 1 sits on the boundary of J = [0,1]
        let v = index_set_value(&f, &h, 1.0, &inst, &[0]).unwrap();
        assert!(v.fro_norm() < 1e-12);
    }

    #[test]
    fn index_equal_matrices_vanish() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let a = HermitianMatrix::from_real_diagonal(&[2.0, 5.0]);
        let inst =
            IndexSetInstance::new(vec![0.5, 0.5], vec![a.clone(), a.clone()]).unwrap();
        let v = index_set_value(&f, &h, 1.0, &inst, &[0, 1]).unwrap();
        assert!(v.fro_norm() < 1e-10);
        let report = check_index_chain(&f, &h, 1.0, &inst, &tol()).unwrap();
        assert!(report.holds_all);
        assert!(report.worst_gap.abs() < 1e-9);
    }

    #[test]
    fn index_superadditive_random() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let tol = tol();
        let oracle = Oracle::new(
            InequalityId::IndexSuperadd,
            Some(f),
            Some(h),
            1.0,
            k10(),
            tol,
        )
        .unwrap();
        let extra = ExtraParams { k: 5, ..ExtraParams::default() };
        for t in 0..25 {
            let mut rng = SeedSpec::new(15, t).rng();
            let input = oracle.sample_input(3, &extra, &mut rng).unwrap();
            let out = oracle.run(&input).unwrap();
            assert!(out.holds, "trial {t} gap {}", out.gap);
        }
    }

    #[test]
    fn index_weights_must_fit_h_domain() {
        let f = f_power(1.5);
        let h = WeightFunction::identity(); // J = [0,1]
        let a = HermitianMatrix::from_real_diagonal(&[1.0]);
        let inst = IndexSetInstance::new(vec![0.8, 0.8], vec![a.clone(), a]).unwrap();
        // W_E = 1.6 leaves J
        let err = index_set_value(&f, &h, 1.0, &inst, &[0, 1]).unwrap_err();
        assert!(err.is_hypothesis_violation());
    }

    #[test]
    fn hansen_pedersen_degenerate_pairs() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let mut rng = SeedSpec::new(16, 0).rng();
        let a = crate::samplers::random_psd_with_spectrum::<f64>(2, &k10(), &mut rng);
        let b = crate::samplers::random_psd_with_spectrum::<f64>(2, &k10(), &mut rng);

        // (C, D) = (I, 0): equality at h = identity
        let id = ComplexMatrix::<f64>::identity(2, 2);
        let z = ComplexMatrix::<f64>::zeros(2, 2);
        let pair = ContractionPair::new(id.clone(), z).unwrap();
        let out = check_hansen_pedersen(&f, &h, 1.0, &a, &b, &pair, &tol()).unwrap();
        assert!(out.gap.abs() <= 1e-10 * out.verdict.scale.max(1.0));

        // (C, D) = (sqrt(1/2) I, sqrt(1/2) I) with A = B reduces to alpha = 1/2
        let half = (0.5f64).sqrt();
        let pair = ContractionPair::new(id.clone().scale(half), id.scale(half)).unwrap();
        let out = check_hansen_pedersen(&f, &h, 1.0, &a, &a, &pair, &tol()).unwrap();
        let def = check_definition(&f, &h, 1.0, &a, &a, 0.5, &tol()).unwrap();
        assert!((out.gap - def.gap).abs() <= 1e-9 * out.verdict.scale.max(1.0));
    }

    #[test]
    fn contraction_degenerate_cases() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let mut rng = SeedSpec::new(17, 0).rng();
        let a = crate::samplers::random_psd_with_spectrum::<f64>(3, &k10(), &mut rng);

        // unitary V: exact covariance, gap 0 at h = identity
        let u = crate::samplers::random_unitary::<f64>(3, &mut rng);
        let out = check_contraction_form(&f, &h, 1.0, &a, &u, &tol()).unwrap();
        assert!(out.gap.abs() <= 1e-9 * out.verdict.scale.max(1.0));

        // V = 0 needs f(0) = 0 and gives 0 on both sides
        let z = ComplexMatrix::<f64>::zeros(3, 3);
        let out = check_contraction_form(&f, &h, 1.0, &a, &z, &tol()).unwrap();
        assert!(out.lhs.fro_norm() < 1e-10);
        assert!(out.rhs.fro_norm() < 1e-10);

        // expansions are rejected as hypothesis violations
        let big = ComplexMatrix::<f64>::identity(3, 3).scale(1.5);
        assert!(check_contraction_form(&f, &h, 1.0, &a, &big, &tol())
            .unwrap_err()
            .is_hypothesis_violation());
    }

    #[test]
    fn projection_degenerate_cases() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let mut rng = SeedSpec::new(18, 0).rng();
        let a = crate::samplers::random_psd_with_spectrum::<f64>(3, &k10(), &mut rng);

        let q_id = HermitianMatrix::<f64>::identity(3);
        let out = check_projection_form(&f, &h, 1.0, &a, &q_id, &tol()).unwrap();
        assert!(out.gap.abs() <= 1e-9 * out.verdict.scale.max(1.0));

        let q_zero = HermitianMatrix::<f64>::zeros(3);
        let out = check_projection_form(&f, &h, 1.0, &a, &q_zero, &tol()).unwrap();
        assert!(out.lhs.fro_norm() < 1e-12 && out.rhs.fro_norm() < 1e-12);

        let not_q = HermitianMatrix::from_real_diagonal(&[0.5, 1.0, 0.0]);
        assert!(check_projection_form(&f, &h, 1.0, &a, &not_q, &tol())
            .unwrap_err()
            .is_hypothesis_violation());
    }

    #[test]
    fn resolution_constant_points_give_equality() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let mut rng = SeedSpec::new(19, 0).rng();
        let res = crate::samplers::random_resolution::<f64>(3, 3, &k10(), &mut rng).unwrap();
        let x = 2.5;
        let constant = ResolutionOfIdentity::new(
            res.weights().to_vec(),
            res.operators().to_vec(),
            vec![x; res.len()],
        )
        .unwrap();
        let out = check_resolution_form(&f, &h, 1.0, &constant, &tol()).unwrap();
        assert!(out.gap.abs() <= 1e-9 * out.verdict.scale.max(1.0));
    }

    #[test]
    fn resolution_scalar_reduction() {
        // k = 2, A_1 = A_2 = I reduces to the scalar definition check
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let alpha = 0.35;
        let (x1, x2) = (1.2, 4.0);
        let res = ResolutionOfIdentity::new(
            vec![alpha, 1.0 - alpha],
            vec![HermitianMatrix::identity(2), HermitianMatrix::identity(2)],
            vec![x1, x2],
        )
        .unwrap();
        let out = check_resolution_form(&f, &h, 1.0, &res, &tol()).unwrap();
        let a = HermitianMatrix::from_real_diagonal(&[x1]);
        let b = HermitianMatrix::from_real_diagonal(&[x2]);
        let def = check_definition(&f, &h, 1.0, &a, &b, alpha, &tol()).unwrap();
        assert_relative_eq!(out.gap, def.gap, epsilon = 1e-10);
    }

    #[test]
    fn cdj_unitary_conjugation_is_equality() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let mut rng = SeedSpec::new(20, 0).rng();
        let a = crate::samplers::random_psd_with_spectrum::<f64>(3, &k10(), &mut rng);
        let u = crate::samplers::random_unitary::<f64>(3, &mut rng);
        let phi = UnitalPositiveMap::new(vec![u], false).unwrap();
        let out = check_cdj(&f, &h, 1.0, &a, &phi, &tol()).unwrap();
        assert!(out.gap.abs() <= 1e-10 * out.verdict.scale.max(1.0));
    }

    #[test]
    fn cdj_pinching_diagonal_is_equality() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let a = HermitianMatrix::from_real_diagonal(&[1.0, 4.0, 9.0]);
        let kraus: Vec<ComplexMatrix<f64>> = (0..3)
            .map(|i| {
                let mut k = ComplexMatrix::<f64>::zeros(3, 3);
                k[(i, i)] = nalgebra::Complex::new(1.0, 0.0);
                k
            })
            .collect();
        let phi = UnitalPositiveMap::new(kraus, false).unwrap();
        let out = check_cdj(&f, &h, 1.0, &a, &phi, &tol()).unwrap();
        assert!(out.gap.abs() <= 1e-10 * out.verdict.scale.max(1.0));
    }

    #[test]
    fn inverse_ratio_examples() {
        let h = WeightFunction::identity();
        let mut rng = SeedSpec::new(21, 0).rng();
        let pd = Interval::closed(0.5, 5.0).unwrap();
        let f = ScalarFunction::power(1.5, pd).unwrap();
        let a = crate::samplers::random_psd_with_spectrum::<f64>(3, &Interval::closed(0.5, 3.0).unwrap(), &mut rng);

        // A = B: gap = (2h(1/2) - 1) lambda_min(A^{-1} f(A)) = 0 at identity
        let out = check_inverse_ratio(&f, &h, &a, &a, &tol()).unwrap();
        assert!(out.gap.abs() <= 1e-10 * out.verdict.scale.max(1.0));

        // f = t^2: both sides are A and B themselves
        let f2 = ScalarFunction::power(2.0, pd).unwrap();
        let bump = crate::samplers::random_psd_with_spectrum::<f64>(
            3,
            &Interval::closed(0.0, 2.0).unwrap(),
            &mut rng,
        );
        let b = a.add(&bump);
        let out = check_inverse_ratio(&f2, &h, &a, &b, &tol()).unwrap();
        assert!(out.holds);
        assert!(out.lhs.sub(&a).fro_norm() < 1e-9);
        assert!(out.rhs.sub(&b).fro_norm() < 1e-9);

        // A <= B hypothesis is enforced
        let err = check_inverse_ratio(&f2, &h, &b, &a, &tol()).unwrap_err();
        assert!(err.is_hypothesis_violation());
    }

    #[test]
    fn power_mean_examples() {
        let tol = tol();
        let mut rng = SeedSpec::new(22, 0).rng();
        let a = crate::samplers::random_psd_with_spectrum::<f64>(3, &k10(), &mut rng);

        // A = B: F(p) = A for every p
        for p in [1.0, 2.0, 3.7] {
            let m = power_mean(&a, &a, p).unwrap();
            assert!(m.sub(&a).fro_norm() < 1e-8 * a.fro_norm().max(1.0));
        }
        let out = check_power_mean_monotone(&a, &a, 1.0, 2.0, &tol).unwrap();
        assert!(out.gap.abs() <= 1e-9 * out.verdict.scale.max(1.0));

        // commuting diagonal pair reduces to scalar power means
        let d1 = HermitianMatrix::from_real_diagonal(&[1.0, 4.0]);
        let d2 = HermitianMatrix::from_real_diagonal(&[9.0, 0.25]);
        let m = power_mean(&d1, &d2, 2.0).unwrap();
        assert_relative_eq!(m.entry(0, 0).re, ((1.0 + 81.0) / 2.0f64).sqrt(), epsilon = 1e-10);
        let out = check_power_mean_monotone(&d1, &d2, 1.0, 2.0, &tol).unwrap();
        assert!(out.holds);

        // hypothesis gate
        assert!(check_power_mean_monotone(&d1, &d2, 0.5, 2.0, &tol)
            .unwrap_err()
            .is_hypothesis_violation());
    }

    #[test]
    fn log_euclidean_limit_examples() {
        let mut rng = SeedSpec::new(23, 0).rng();
        let pd = Interval::closed(0.5, 3.0).unwrap();
        let a = crate::samplers::random_psd_with_spectrum::<f64>(3, &pd, &mut rng);
        let b = crate::samplers::random_psd_with_spectrum::<f64>(3, &pd, &mut rng);

        // A = B: residual at machine level for any p
        let r = check_log_euclidean_limit(&a, &a, 1e-2).unwrap();
        assert!(r.residual <= 1e-10);

        // commuting pair: the scalar expansion gives residual ~ p (ln a/b)^2/8
        // per eigenvalue, so the residual scales linearly in p
        let d1 = HermitianMatrix::from_real_diagonal(&[1.0, 4.0]);
        let d2 = HermitianMatrix::from_real_diagonal(&[2.0, 0.5]);
        let r_coarse = check_log_euclidean_limit(&d1, &d2, 1e-4).unwrap();
        let r_fine = check_log_euclidean_limit(&d1, &d2, 1e-6).unwrap();
        let rate = (r_coarse.residual / 1e-4) / (r_fine.residual / 1e-6);
        assert!((rate - 1.0).abs() < 0.05, "O(p) law violated: rate {rate}");
        assert!(r_fine.residual <= 1e-5, "commuting residual {}", r_fine.residual);

        // random pair: decreasing residuals
        let r2 = check_log_euclidean_limit(&a, &b, 1e-2).unwrap();
        let r3 = check_log_euclidean_limit(&a, &b, 1e-3).unwrap();
        let r4 = check_log_euclidean_limit(&a, &b, 1e-4).unwrap();
        assert!(r2.residual > r3.residual && r3.residual > r4.residual);
        assert!(r4.residual <= 1e-3);
    }

    #[test]
    fn chaotic_mean_equal_arguments() {
        let pd = Interval::closed(0.5, 3.0).unwrap();
        let f = ScalarFunction::power(3.0, pd).unwrap();
        let mut rng = SeedSpec::new(24, 0).rng();
        let a = crate::samplers::random_psd_with_spectrum::<f64>(3, &pd, &mut rng);
        let out = check_chaotic_mean(&f, &a, &a, &tol()).unwrap();
        assert!(out.gap.abs() <= 1e-9 * out.verdict.scale.max(1.0));
    }

    #[test]
    fn oracle_dispatch_round_trip() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let oracle =
            Oracle::new(InequalityId::Definition, Some(f), Some(h), 1.0, k10(), tol()).unwrap();
        let mut rng = SeedSpec::new(25, 3).rng();
        let input = oracle.sample_input(3, &ExtraParams::default(), &mut rng).unwrap();
        let out1 = oracle.run(&input).unwrap();
        let out2 = oracle.run(&input).unwrap();
        assert_eq!(out1.gap, out2.gap, "same input replays to the identical gap");
        assert!(out1.holds);
    }

    #[test]
    fn oracle_requires_matching_input() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let oracle =
            Oracle::new(InequalityId::Definition, Some(f), Some(h), 1.0, k10(), tol()).unwrap();
        let a = HermitianMatrix::from_real_diagonal(&[1.0]);
        let err = oracle
            .run(&OracleInput::ChaoticMean { a: a.clone(), b: a })
            .unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn unitary_covariance_of_gaps() {
        let f = f_power(1.5);
        let h = WeightFunction::identity();
        let mut rng = SeedSpec::new(26, 0).rng();
        let a = crate::samplers::random_psd_with_spectrum::<f64>(3, &k10(), &mut rng);
        let b = crate::samplers::random_psd_with_spectrum::<f64>(3, &k10(), &mut rng);
        let base = check_definition(&f, &h, 1.0, &a, &b, 0.3, &tol()).unwrap();
        let u = crate::samplers::random_unitary::<f64>(3, &mut rng);
        let au = a.conjugate_by(&u).unwrap();
        let bu = b.conjugate_by(&u).unwrap();
        let conj = check_definition(&f, &h, 1.0, &au, &bu, 0.3, &tol()).unwrap();
        let scale = base.verdict.scale.max(1.0);
        assert!((base.gap - conj.gap).abs() <= 1e-9 * scale);
    }
}
