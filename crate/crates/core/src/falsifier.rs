//! Randomized counterexample search: random restarts plus derivative-free
//! hill climbing on the violation `λ_max(LHS - RHS)`, with every perturbation
//! re-projected into the hypothesis space of the target inequality.

use num_traits::Float;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functions::{classify_power_function, PowerClassification, ScalarFamily, WeightFamily};
use crate::interval::Interval;
use crate::linalg::{operator_norm, spectral_decompose, ComplexMatrix, HermitianMatrix};
use crate::oracles::{CheckOutcome, ExtraParams, IndexSetInstance, Oracle, OracleInput};
use crate::samplers::{
    gaussian_complex, gaussian_hermitian, ContractionPair, ResolutionOfIdentity, SeedSpec,
    UnitalPositiveMap,
};
use crate::scalar::{real, Real};

/// Consecutive rejected steps before the perturbation scale is halved.
const STALL_BEFORE_DECAY: usize = 10;

/// Search plan: restarts sample fresh operands, each restart hill-climbs for
/// a fixed number of steps, and the total evaluation budget bounds
/// `restarts · perturb_steps`.
#[derive(Debug, Clone)]
pub struct SearchConfig<T: Real> {
    pub oracle: Oracle<T>,
    pub extra: ExtraParams<T>,
    pub budget: usize,
    pub restarts: usize,
    pub perturb_steps: usize,
    /// Initial relative step size (default 0.1).
    pub perturb_scale: T,
    pub dims: Vec<usize>,
    pub seed: SeedSpec,
}

impl<T: Real> SearchConfig<T> {
    pub fn new(
        oracle: Oracle<T>,
        extra: ExtraParams<T>,
        budget: usize,
        restarts: usize,
        perturb_steps: usize,
        perturb_scale: T,
        dims: Vec<usize>,
        seed: SeedSpec,
    ) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Usage("dims must be non-empty and all >= 1".into()));
        }
        if restarts == 0 {
            return Err(Error::Usage("need at least one restart".into()));
        }
        if restarts.saturating_mul(perturb_steps) > budget {
            return Err(Error::Usage(format!(
                "budget {budget} cannot cover {restarts} restarts x {perturb_steps} steps"
            )));
        }
        if !(perturb_scale > T::zero()) {
            return Err(Error::Usage("perturbation scale must be positive".into()));
        }
        Ok(Self { oracle, extra, budget, restarts, perturb_steps, perturb_scale, dims, seed })
    }

    /// Splits a raw evaluation budget into restarts of ~`steps` climbing
    /// steps each.
    pub fn from_budget(
        oracle: Oracle<T>,
        extra: ExtraParams<T>,
        budget: usize,
        dims: Vec<usize>,
        seed: SeedSpec,
    ) -> Result<Self> {
        let steps = 400.min(budget.max(1));
        let restarts = (budget / steps).max(1);
        Self::new(oracle, extra, budget, restarts, steps, real(0.1), dims, seed)
    }
}

/// A certified counterexample: replaying `outcome.input` through the oracle
/// reproduces the violation.
#[derive(Debug, Clone)]
pub struct ViolationWitness<T: Real> {
    pub outcome: CheckOutcome<T>,
    /// `λ_max(LHS - RHS) > 0`.
    pub violation: T,
    /// Violation exceeds the 10·ε hysteresis band of its own instance.
    pub certified: bool,
    /// Restart that produced the witness (lowest index wins ties).
    pub restart: usize,
}

#[derive(Debug, Clone)]
struct RestartBest<T: Real> {
    outcome: CheckOutcome<T>,
    /// Signed objective `-gap`; positive once the inequality is violated.
    objective: T,
}

/// Maximizes the violation of the target inequality over its hypothesis
/// space. Returns `None` iff no trial exceeded the hysteresis band `10ε`.
pub fn falsify<T: Real>(cfg: &SearchConfig<T>) -> Result<Option<ViolationWitness<T>>> {
    // feasibility probe: the hypothesis combination must admit at least one
    // valid sample before any budget is spent
    {
        let mut rng = SeedSpec::new(cfg.seed.master_seed ^ 0x70_72_6f_62_65, 0).rng();
        let input = cfg.oracle.sample_input(cfg.dims[0], &cfg.extra, &mut rng)?;
        if let Err(e) = cfg.oracle.run(&input) {
            if e.is_hypothesis_violation() {
                return Err(Error::Usage(format!("infeasible hypothesis combination: {e}")));
            }
            return Err(e);
        }
    }

    let bests: Vec<Option<RestartBest<T>>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|restart| run_restart(cfg, restart))
        .collect::<Result<Vec<_>>>()?;

    // deterministic reduction: strict improvement only, so the lowest restart
    // index wins ties
    let mut best: Option<ViolationWitness<T>> = None;
    for (restart, candidate) in bests.into_iter().enumerate() {
        let Some(candidate) = candidate else { continue };
        if best.as_ref().map_or(true, |b| candidate.objective > b.violation) {
            let certified = candidate.outcome.certified_violation();
            best = Some(ViolationWitness {
                violation: candidate.objective,
                certified,
                outcome: candidate.outcome,
                restart,
            });
        }
    }
    Ok(best.filter(|w| w.certified))
}

fn run_restart<T: Real>(cfg: &SearchConfig<T>, restart: usize) -> Result<Option<RestartBest<T>>> {
    let mut rng = SeedSpec::new(cfg.seed.master_seed, restart as u64).rng();
    let dim = cfg.dims[restart % cfg.dims.len()];

    let mut state = match cfg.oracle.sample_input(dim, &cfg.extra, &mut rng) {
        Ok(s) => s,
        // sampling can fail transiently (singular draws); skip the restart
        Err(Error::Numerical(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut current = match cfg.oracle.run(&state) {
        Ok(out) => out,
        Err(e) if e.is_hypothesis_violation() => return Ok(None),
        Err(e) => return Err(e),
    };
    // climb the signed objective -gap: even a feasible start then drifts
    // toward the violation boundary instead of random-walking on zero
    let mut objective = -current.gap;
    let mut best = RestartBest { outcome: current.clone(), objective };

    let mut scale = cfg.perturb_scale;
    let mut stalled = 0usize;
    for _ in 0..cfg.perturb_steps {
        let accepted = match perturb(&cfg.oracle, &state, scale, &mut rng) {
            Ok(candidate) => match cfg.oracle.run(&candidate) {
                Ok(out) if -out.gap > objective => {
                    objective = -out.gap;
                    state = candidate;
                    current = out;
                    true
                }
                _ => false,
            },
            Err(_) => false,
        };
        if accepted {
            stalled = 0;
            if objective > best.objective {
                best = RestartBest { outcome: current.clone(), objective };
            }
        } else {
            stalled += 1;
            if stalled >= STALL_BEFORE_DECAY {
                scale = scale * real(0.5);
                stalled = 0;
            }
        }
    }

    Ok(if best.objective > T::zero() { Some(best) } else { None })
}

// ---------------------------------------------------------------------------
// perturbations: bump one operand, re-project into the hypothesis space
// ---------------------------------------------------------------------------

/// Hermitian Gaussian bump of relative size `scale`, eigenvalue-projected
/// back into `K`.
fn bump_psd<T: Real>(
    a: &HermitianMatrix<T>,
    k: &Interval<T>,
    scale: T,
    rng: &mut ChaCha12Rng,
) -> Result<HermitianMatrix<T>> {
    let n = a.dim();
    let magnitude = scale * Float::max(a.fro_norm(), T::one()) / real::<T>(n as f64);
    let bumped = a.add(&gaussian_hermitian(n, rng).scale(magnitude));
    Ok(spectral_decompose(&bumped)?.map(|l| k.clamp_into(l)))
}

fn bump_complex<T: Real>(
    m: &ComplexMatrix<T>,
    scale: T,
    rng: &mut ChaCha12Rng,
) -> ComplexMatrix<T> {
    let magnitude = scale * Float::max(m.norm(), T::one()) / real::<T>(m.nrows() as f64);
    m + gaussian_complex::<T>(m.nrows(), m.ncols(), rng).scale(magnitude)
}

fn jitter_open_unit<T: Real>(x: T, scale: T, rng: &mut ChaCha12Rng) -> T {
    let eps = real::<T>(1e-9);
    let delta = scale * real::<T>(0.25) * real::<T>(rng.random::<f64>() * 2.0 - 1.0);
    Float::min(Float::max(x + delta, eps), T::one() - eps)
}

/// Multiplicative jitter of simplex weights, renormalized to sum 1.
fn jitter_simplex<T: Real>(weights: &[T], scale: T, rng: &mut ChaCha12Rng) -> Vec<T> {
    let mut out: Vec<T> = weights
        .iter()
        .map(|&w| {
            let factor = Float::exp(scale * real::<T>(rng.random::<f64>() * 2.0 - 1.0));
            Float::max(w * factor, real(1e-12))
        })
        .collect();
    let total: T = out.iter().copied().sum();
    for w in &mut out {
        *w = *w / total;
    }
    out
}

fn reorthonormalize_pair<T: Real>(
    c: ComplexMatrix<T>,
    d: ComplexMatrix<T>,
) -> Result<ContractionPair<T>> {
    let n = c.nrows();
    let mut m = ComplexMatrix::<T>::zeros(n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&c);
    m.view_mut((0, n), (n, n)).copy_from(&d);
    let gram = HermitianMatrix::from_symmetric_product(&m * m.adjoint());
    let whitener = crate::linalg::matrix_power(&gram, real(-0.5))?;
    let w = whitener.as_matrix() * m;
    ContractionPair::new(w.view((0, 0), (n, n)).into_owned(), w.view((0, n), (n, n)).into_owned())
}

fn renormalize_kraus<T: Real>(
    kraus: Vec<ComplexMatrix<T>>,
    transpose_twist: bool,
) -> Result<UnitalPositiveMap<T>> {
    let n = kraus[0].nrows();
    let mut t_sum = ComplexMatrix::<T>::zeros(n, n);
    for k in &kraus {
        t_sum += k.adjoint() * k;
    }
    let t_herm = HermitianMatrix::from_symmetric_product(t_sum);
    let t_inv_sqrt = crate::linalg::matrix_power(&t_herm, real(-0.5))?;
    let kraus = kraus.iter().map(|k| k * t_inv_sqrt.as_matrix()).collect();
    UnitalPositiveMap::new(kraus, transpose_twist)
}

fn rederive_resolution<T: Real>(
    weights: Vec<T>,
    latents: Vec<HermitianMatrix<T>>,
    points: Vec<T>,
) -> Result<ResolutionOfIdentity<T>> {
    let n = latents[0].dim();
    let mut s = HermitianMatrix::zeros(n);
    for (b, &w) in latents.iter().zip(&weights) {
        s = s.add(&b.scale(w));
    }
    let s_inv_sqrt = crate::linalg::matrix_power(&s, real(-0.5))?;
    let operators: Vec<HermitianMatrix<T>> = latents
        .iter()
        .map(|b| b.conjugate_by(s_inv_sqrt.as_matrix()))
        .collect::<Result<_>>()?;
    ResolutionOfIdentity::new(weights, operators, points)
}

fn perturb<T: Real>(
    oracle: &Oracle<T>,
    input: &OracleInput<T>,
    scale: T,
    rng: &mut ChaCha12Rng,
) -> Result<OracleInput<T>> {
    let k = oracle.spectrum.capped_default();
    let strict_lo = Float::max(k.lo(), real(0.1));
    let strict = Interval::closed(strict_lo, Float::max(k.hi(), strict_lo + real(1e-3)))?;

    Ok(match input {
        OracleInput::Definition { a, b, alpha } => match rng.random_range(0..3u8) {
            0 => OracleInput::Definition {
                a: bump_psd(a, &k, scale, rng)?,
                b: b.clone(),
                alpha: *alpha,
            },
            1 => OracleInput::Definition {
                a: a.clone(),
                b: bump_psd(b, &k, scale, rng)?,
                alpha: *alpha,
            },
            _ => OracleInput::Definition {
                a: a.clone(),
                b: b.clone(),
                alpha: jitter_open_unit(*alpha, scale, rng),
            },
        },
        OracleInput::Subunit { a, b, alpha, beta } => match rng.random_range(0..3u8) {
            0 => OracleInput::Subunit {
                a: bump_psd(a, &k, scale, rng)?,
                b: b.clone(),
                alpha: *alpha,
                beta: *beta,
            },
            1 => OracleInput::Subunit {
                a: a.clone(),
                b: bump_psd(b, &k, scale, rng)?,
                alpha: *alpha,
                beta: *beta,
            },
            _ => {
                let mut alpha = jitter_open_unit(*alpha, scale, rng);
                let mut beta = jitter_open_unit(*beta, scale, rng);
                let total = alpha + beta;
                if total > T::one() {
                    let shrink = (T::one() - real(1e-9)) / total;
                    alpha = alpha * shrink;
                    beta = beta * shrink;
                }
                OracleInput::Subunit { a: a.clone(), b: b.clone(), alpha, beta }
            }
        },
        OracleInput::Jensen { matrices, weights } => {
            if rng.random::<f64>() < 0.3 {
                OracleInput::Jensen {
                    matrices: matrices.clone(),
                    weights: jitter_simplex(weights, scale, rng),
                }
            } else {
                let i = rng.random_range(0..matrices.len());
                let mut matrices = matrices.clone();
                matrices[i] = bump_psd(&matrices[i], &k, scale, rng)?;
                OracleInput::Jensen { matrices, weights: weights.clone() }
            }
        }
        OracleInput::IndexSuperadd { instance, m, e } => {
            let instance = perturb_index_instance(instance, &k, scale, rng)?;
            OracleInput::IndexSuperadd { instance, m: m.clone(), e: e.clone() }
        }
        OracleInput::IndexChain { instance } => OracleInput::IndexChain {
            instance: perturb_index_instance(instance, &k, scale, rng)?,
        },
        OracleInput::HansenPedersen { a, b, pair } => match rng.random_range(0..3u8) {
            0 => OracleInput::HansenPedersen {
                a: bump_psd(a, &k, scale, rng)?,
                b: b.clone(),
                pair: pair.clone(),
            },
            1 => OracleInput::HansenPedersen {
                a: a.clone(),
                b: bump_psd(b, &k, scale, rng)?,
                pair: pair.clone(),
            },
            _ => {
                let c = bump_complex(pair.c(), scale * real(0.3), rng);
                let d = bump_complex(pair.d(), scale * real(0.3), rng);
                OracleInput::HansenPedersen {
                    a: a.clone(),
                    b: b.clone(),
                    pair: reorthonormalize_pair(c, d)?,
                }
            }
        },
        OracleInput::Contraction { a, v } => {
            if rng.random::<f64>() < 0.5 {
                OracleInput::Contraction { a: bump_psd(a, &k, scale, rng)?, v: v.clone() }
            } else {
                let mut v = bump_complex(v, scale * real(0.3), rng);
                let norm = operator_norm(&v)?;
                if norm > T::one() {
                    v = v.unscale(norm * (T::one() + real(1e-12)));
                }
                OracleInput::Contraction { a: a.clone(), v }
            }
        }
        OracleInput::Projection { a, q } => {
            if rng.random::<f64>() < 0.5 {
                OracleInput::Projection { a: bump_psd(a, &k, scale, rng)?, q: q.clone() }
            } else {
                // bump then round eigenvalues back to a projection of the
                // same rank
                let rank = Float::round(q.trace()).as_f64() as usize;
                let n = q.dim();
                let magnitude = scale / real::<T>(n as f64);
                let bumped = q.add(&gaussian_hermitian(n, rng).scale(magnitude));
                let dec = spectral_decompose(&bumped)?;
                let cut = n - rank;
                let mut idx = 0usize;
                let q = dec.map(|_| {
                    let v = if idx >= cut { T::one() } else { T::zero() };
                    idx += 1;
                    v
                });
                OracleInput::Projection { a: a.clone(), q }
            }
        }
        OracleInput::Resolution { resolution } => {
            let mut weights = resolution.weights().to_vec();
            let mut latents = resolution.operators().to_vec();
            let mut points = resolution.points().to_vec();
            match rng.random_range(0..3u8) {
                0 => weights = jitter_simplex(&weights, scale, rng),
                1 => {
                    let i = rng.random_range(0..latents.len());
                    let psd = Interval::new(T::zero(), T::infinity(), true, false)?;
                    latents[i] = bump_psd(&latents[i], &psd, scale, rng)?;
                }
                _ => {
                    let i = rng.random_range(0..points.len());
                    let delta = scale * k.width() * real::<T>(0.1)
                        * real::<T>(rng.random::<f64>() * 2.0 - 1.0);
                    points[i] = k.clamp_into(points[i] + delta);
                }
            }
            OracleInput::Resolution { resolution: rederive_resolution(weights, latents, points)? }
        }
        OracleInput::Cdj { a, map } => {
            if rng.random::<f64>() < 0.5 {
                OracleInput::Cdj { a: bump_psd(a, &k, scale, rng)?, map: map.clone() }
            } else {
                let i = rng.random_range(0..map.kraus().len());
                let mut kraus = map.kraus().to_vec();
                kraus[i] = bump_complex(&kraus[i], scale * real(0.3), rng);
                OracleInput::Cdj {
                    a: a.clone(),
                    map: renormalize_kraus(kraus, map.transpose_twist())?,
                }
            }
        }
        OracleInput::InverseRatio { a, b } => {
            // latent parametrization (A, D = B - A) keeps A <= B exact
            let d = b.sub(a);
            if rng.random::<f64>() < 0.5 {
                let a = bump_psd(a, &strict, scale, rng)?;
                let head = Float::max(k.hi() - spectral_decompose(&a)?.lambda_max(), T::zero());
                let clamp_d = Interval::closed(T::zero(), Float::max(head, real(1e-9)))?;
                let d = spectral_decompose(&d)?.map(|l| clamp_d.clamp_into(l));
                OracleInput::InverseRatio { a: a.clone(), b: a.add(&d) }
            } else {
                let head = Float::max(k.hi() - spectral_decompose(a)?.lambda_max(), T::zero());
                let clamp_d = Interval::closed(T::zero(), Float::max(head, real(1e-9)))?;
                let d = bump_psd(&d, &clamp_d, scale, rng)?;
                OracleInput::InverseRatio { a: a.clone(), b: a.add(&d) }
            }
        }
        OracleInput::PowerMeanMonotone { a, b, p_lo, p_hi } => {
            let (a, b) = bump_one_of_two(a, b, &k, scale, rng)?;
            OracleInput::PowerMeanMonotone { a, b, p_lo: *p_lo, p_hi: *p_hi }
        }
        OracleInput::LogEuclideanLimit { a, b, p_small } => {
            let (a, b) = bump_one_of_two(a, b, &strict, scale, rng)?;
            OracleInput::LogEuclideanLimit { a, b, p_small: *p_small }
        }
        OracleInput::ChaoticMean { a, b } => {
            let (a, b) = bump_one_of_two(a, b, &strict, scale, rng)?;
            OracleInput::ChaoticMean { a, b }
        }
    })
}

fn bump_one_of_two<T: Real>(
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
    k: &Interval<T>,
    scale: T,
    rng: &mut ChaCha12Rng,
) -> Result<(HermitianMatrix<T>, HermitianMatrix<T>)> {
    Ok(if rng.random::<f64>() < 0.5 {
        (bump_psd(a, k, scale, rng)?, b.clone())
    } else {
        (a.clone(), bump_psd(b, k, scale, rng)?)
    })
}

fn perturb_index_instance<T: Real>(
    instance: &IndexSetInstance<T>,
    k: &Interval<T>,
    scale: T,
    rng: &mut ChaCha12Rng,
) -> Result<IndexSetInstance<T>> {
    let mut weights = instance.weights().to_vec();
    let mut matrices = instance.matrices().to_vec();
    if rng.random::<f64>() < 0.3 {
        weights = jitter_simplex(&weights, scale, rng);
    } else {
        let i = rng.random_range(0..matrices.len());
        matrices[i] = bump_psd(&matrices[i], k, scale, rng)?;
    }
    IndexSetInstance::new(weights, matrices)
}

// ---------------------------------------------------------------------------
// empirical classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum EmpiricalVerdict<T: Real> {
    NoViolationFound,
    Violated(ViolationWitness<T>),
}

#[derive(Debug, Clone)]
pub struct ClassifyReport<T: Real> {
    pub verdict: EmpiricalVerdict<T>,
    /// Membership prediction for `f = t^s` under the identity weight.
    pub prediction: Option<PowerClassification<T>>,
    /// `Some(true)` when the empirical verdict is consistent with the
    /// prediction; disagreement must be reported loudly, never resolved.
    pub agreement: Option<bool>,
}

impl<T: Real> ClassifyReport<T> {
    pub fn found_violation(&self) -> bool {
        matches!(self.verdict, EmpiricalVerdict::Violated(_))
    }
}

/// Runs the falsifier and compares the outcome against the power-function
/// membership criterion when `f = t^s` and `h` is the identity.
pub fn classify_empirical<T: Real>(cfg: &SearchConfig<T>) -> Result<ClassifyReport<T>> {
    let prediction = match (&cfg.oracle.f, &cfg.oracle.h) {
        (Some(f), Some(h)) if h.family() == WeightFamily::Identity => match f.family() {
            ScalarFamily::Power { exponent } => {
                Some(classify_power_function(*exponent, cfg.oracle.p))
            }
            _ => None,
        },
        _ => None,
    };
    let verdict = match falsify(cfg)? {
        Some(witness) => EmpiricalVerdict::Violated(witness),
        None => EmpiricalVerdict::NoViolationFound,
    };
    let found = matches!(verdict, EmpiricalVerdict::Violated(_));
    let agreement = prediction.as_ref().map(|p| found == !p.member);
    Ok(ClassifyReport { verdict, prediction, agreement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{ScalarFunction, WeightFunction};
    use crate::linalg::ToleranceConfig;
    use crate::oracles::InequalityId;

    fn k10() -> Interval<f64> {
        Interval::closed(0.0, 10.0).unwrap()
    }

    fn definition_config(s: f64, budget: usize, dims: Vec<usize>) -> SearchConfig<f64> {
        let oracle = Oracle::new(
            InequalityId::Definition,
            Some(ScalarFunction::power(s, k10()).unwrap()),
            Some(WeightFunction::identity()),
            1.0,
            k10(),
            ToleranceConfig::default(),
        )
        .unwrap();
        SearchConfig::from_budget(oracle, ExtraParams::default(), budget, dims, SeedSpec::new(97, 0))
            .unwrap()
    }

    #[test]
    fn cube_is_falsified_in_matrix_dimensions() {
        let cfg = definition_config(3.0, 4000, vec![2, 3]);
        let witness = falsify(&cfg).unwrap().expect("t^3 must be falsified");
        assert!(witness.certified);
        assert!(witness.violation > 1e-6, "violation {}", witness.violation);
        // the witness replays to the same verdict
        let replay = cfg.oracle.run(&witness.outcome.input).unwrap();
        assert!((replay.violation() - witness.violation).abs() <= 1e-12 * witness.violation.max(1.0));
    }

    #[test]
    fn cube_is_scalar_convex_so_dimension_one_finds_nothing() {
        let cfg = definition_config(3.0, 1500, vec![1]);
        assert!(falsify(&cfg).unwrap().is_none(), "t^3 is convex on scalars");
    }

    #[test]
    fn sqrt_is_falsified_even_on_scalars() {
        // s/p = 0.5: the scalar inequality already fails (t^0.5 is concave)
        let cfg = definition_config(0.5, 1500, vec![1]);
        let witness = falsify(&cfg).unwrap().expect("t^0.5 fails on scalars");
        assert!(witness.violation > 1e-6);
    }

    #[test]
    fn member_power_survives_search() {
        let cfg = definition_config(1.5, 2000, vec![2, 3]);
        assert!(falsify(&cfg).unwrap().is_none(), "t^1.5 is operator convex");
    }

    #[test]
    fn classify_agrees_with_theory() {
        let cfg = definition_config(3.0, 3000, vec![2, 3]);
        let report = classify_empirical(&cfg).unwrap();
        assert!(report.found_violation());
        let predicted = report.prediction.unwrap();
        assert!(!predicted.member);
        assert_eq!(report.agreement, Some(true));

        let cfg = definition_config(1.5, 1500, vec![2]);
        let report = classify_empirical(&cfg).unwrap();
        assert!(!report.found_violation());
        assert_eq!(report.agreement, Some(true));
    }

    #[test]
    fn determinism_of_search() {
        let cfg = definition_config(3.0, 2000, vec![2]);
        let w1 = falsify(&cfg).unwrap().unwrap();
        let w2 = falsify(&cfg).unwrap().unwrap();
        assert_eq!(w1.violation, w2.violation);
        assert_eq!(w1.restart, w2.restart);
    }

    #[test]
    fn infeasible_hypotheses_error_before_search() {
        // constant f does not vanish at zero, so the contraction form's
        // hypotheses can never be satisfied
        let oracle = Oracle::new(
            InequalityId::Contraction,
            Some(ScalarFunction::polynomial(vec![1.0], k10()).unwrap()),
            Some(WeightFunction::identity()),
            1.0,
            k10(),
            ToleranceConfig::default(),
        )
        .unwrap();
        let cfg = SearchConfig::from_budget(
            oracle,
            ExtraParams::default(),
            500,
            vec![2],
            SeedSpec::new(5, 0),
        )
        .unwrap();
        assert!(matches!(falsify(&cfg), Err(Error::Usage(_))));
    }

    #[test]
    fn budget_feasibility_is_validated() {
        let oracle = Oracle::new(
            InequalityId::Definition,
            Some(ScalarFunction::power(1.5, k10()).unwrap()),
            Some(WeightFunction::identity()),
            1.0,
            k10(),
            ToleranceConfig::default(),
        )
        .unwrap();
        let err = SearchConfig::new(
            oracle,
            ExtraParams::default(),
            100,
            10,
            100,
            0.1,
            vec![2],
            SeedSpec::new(1, 0),
        );
        assert!(err.is_err());
    }
}
