//! Seeded generators for every structured operand the inequalities quantify
//! over, plus the constructive unitary dilation of a contraction.
//!
//! Every sampler is a pure function of a [`SeedSpec`]-derived generator, so a
//! run is reproducible bit-for-bit on one platform from the master seed.

use nalgebra::Complex;
use num_traits::Float;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::{
    matrix_power, operator_norm, spectral_decompose, ComplexMatrix, HermitianMatrix,
};
use crate::scalar::{real, scaled_tol, Real};

/// Structural invariants of sampled operands must hold to `1e-12 · n`.
const STRUCTURAL_RTOL: f64 = 1e-12;

/// Bounded retries for samplers that can hit a numerically singular draw.
const MAX_RESAMPLES: usize = 8;

/// Identifies one trial's generator: a pure function of the pair, so a suite
/// re-run with the same master seed reproduces every sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub trial_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        Self { master_seed, trial_index }
    }

    /// Derives the trial generator. Platform-independent: the key is built by
    /// a splitmix64 chain over the two seed words.
    pub fn rng(&self) -> ChaCha12Rng {
        let mut state = self
            .master_seed
            .wrapping_add(self.trial_index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0xD1B5_4A32_D192_ED03));
        let mut key = [0u8; 32];
        for chunk in key.chunks_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        ChaCha12Rng::from_seed(key)
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn standard_normal<T: Real>(rng: &mut ChaCha12Rng) -> T {
    let x: f64 = StandardNormal.sample(rng);
    real(x)
}

fn uniform<T: Real>(rng: &mut ChaCha12Rng, lo: T, hi: T) -> T {
    lo + (hi - lo) * real(rng.random::<f64>())
}

/// A matrix of i.i.d. standard complex Gaussians.
pub fn gaussian_complex<T: Real>(rows: usize, cols: usize, rng: &mut ChaCha12Rng) -> ComplexMatrix<T> {
    let half = real::<T>(0.5);
    let scale = Float::sqrt(half);
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex::new(standard_normal::<T>(rng) * scale, standard_normal::<T>(rng) * scale)
    })
}

/// A Gaussian Hermitian matrix `(G + G†)/2`, the generic perturbation.
pub fn gaussian_hermitian<T: Real>(n: usize, rng: &mut ChaCha12Rng) -> HermitianMatrix<T> {
    let g = gaussian_complex::<T>(n, n, rng);
    HermitianMatrix::from_symmetric_product(g)
}

/// Haar-distributed unitary: QR of a complex Gaussian, with the phases of the
/// diagonal of R folded back into Q.
pub fn random_unitary<T: Real>(n: usize, rng: &mut ChaCha12Rng) -> ComplexMatrix<T> {
    let g = gaussian_complex::<T>(n, n, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let m = d.norm();
        let phase = if m > T::zero() { d / Complex::new(m, T::zero()) } else { Complex::new(T::one(), T::zero()) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    #[cfg(debug_assertions)]
    {
        let resid = (q.adjoint() * &q - ComplexMatrix::<T>::identity(n, n)).norm();
        debug_assert!(resid <= scaled_tol::<T>(STRUCTURAL_RTOL) * real::<T>(n as f64), "unitary residual {resid:?}");
    }
    q
}

/// Random PSD matrix `U diag(λ) U†` with eigenvalues i.i.d. uniform in `K`
/// (capped at width 10 when `K` is unbounded).
pub fn random_psd_with_spectrum<T: Real>(
    n: usize,
    k: &Interval<T>,
    rng: &mut ChaCha12Rng,
) -> HermitianMatrix<T> {
    let k = k.capped_default();
    let u = random_unitary::<T>(n, rng);
    let lam: Vec<T> = (0..n).map(|_| uniform(rng, k.lo(), k.hi())).collect();
    let d = HermitianMatrix::from_real_diagonal(&lam);
    d.conjugate_by(&u).expect("square congruence")
}

/// Random strict contraction: a Gaussian matrix divided by its spectral norm
/// times a uniform(1,2) factor. With `isometry` set, returns a Haar unitary
/// (spectral norm exactly 1) instead.
pub fn random_contraction<T: Real>(
    n: usize,
    isometry: bool,
    rng: &mut ChaCha12Rng,
) -> Result<ComplexMatrix<T>> {
    if isometry {
        return Ok(random_unitary::<T>(n, rng));
    }
    let g = gaussian_complex::<T>(n, n, rng);
    let norm = operator_norm(&g)?;
    if norm == T::zero() {
        return Ok(g);
    }
    let slack = uniform(rng, T::one(), real(2.0));
    Ok(g.unscale(norm * slack))
}

/// PSD square root of `I - M` where `M` is PSD with spectrum in `[0, 1]` up
/// to roundoff; used for the defect operators of a contraction.
///
/// Defect eigenvalues below the noise floor snap to exactly zero: the square
/// root would otherwise turn eigenvalue roundoff `ε` into `√ε`-sized blocks
/// and spoil the unitarity of the dilation for (near-)unitary `V`.
fn defect_sqrt<T: Real>(m: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
    let floor = Float::max(real(1e-12), real::<T>(64.0) * T::epsilon());
    let dec = spectral_decompose(m)?;
    dec.try_map(|lam| {
        let mu = T::one() - lam;
        if mu < -real::<T>(1e-9) {
            return Err(Error::NotAContraction { norm: Float::sqrt(Float::max(lam, T::zero())).as_f64() });
        }
        if mu < floor {
            return Ok(T::zero());
        }
        Ok(Float::sqrt(mu))
    })
}

/// Halmos dilation of a contraction `V`:
/// `[[V, (I-VV†)^{1/2}], [(I-V†V)^{1/2}, -V†]]`, unitary of twice the size,
/// with `V` sitting verbatim in the top-left block.
pub fn unitary_dilation<T: Real>(v: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if v.nrows() != v.ncols() || v.nrows() == 0 {
        return Err(Error::Usage("unitary dilation needs a square non-empty matrix".into()));
    }
    let n = v.nrows();
    let norm = operator_norm(v)?;
    if norm > T::one() + scaled_tol::<T>(1e-9) {
        return Err(Error::NotAContraction { norm: norm.as_f64() });
    }
    let vvh = HermitianMatrix::from_symmetric_product(v * v.adjoint());
    let vhv = HermitianMatrix::from_symmetric_product(v.adjoint() * v);
    let dc = defect_sqrt(&vvh)?;
    let dr = defect_sqrt(&vhv)?;

    let mut w = ComplexMatrix::<T>::zeros(2 * n, 2 * n);
    w.view_mut((0, 0), (n, n)).copy_from(v);
    w.view_mut((0, n), (n, n)).copy_from(dc.as_matrix());
    w.view_mut((n, 0), (n, n)).copy_from(dr.as_matrix());
    w.view_mut((n, n), (n, n)).copy_from(&(-v.adjoint()));

    let resid = (w.adjoint() * &w - ComplexMatrix::<T>::identity(2 * n, 2 * n)).norm();
    if resid > scaled_tol::<T>(1e-10) * real::<T>(n as f64) {
        return Err(Error::Numerical(format!(
            "dilation is not unitary: residual {:.3e}",
            resid.as_f64()
        )));
    }
    Ok(w)
}

/// A pair `(C, D)` with `CC† + DD† = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionPair<T: Real> {
    c: ComplexMatrix<T>,
    d: ComplexMatrix<T>,
}

impl<T: Real> ContractionPair<T> {
    pub fn new(c: ComplexMatrix<T>, d: ComplexMatrix<T>) -> Result<Self> {
        let pair = Self { c, d };
        pair.validate()?;
        Ok(pair)
    }

    pub fn c(&self) -> &ComplexMatrix<T> {
        &self.c
    }

    pub fn d(&self) -> &ComplexMatrix<T> {
        &self.d
    }

    pub fn dim(&self) -> usize {
        self.c.nrows()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.c.nrows();
        if self.c.ncols() != n || self.d.nrows() != n || self.d.ncols() != n || n == 0 {
            return Err(Error::Usage("co-isometry pair must be two square blocks of equal size".into()));
        }
        let sum = &self.c * self.c.adjoint() + &self.d * self.d.adjoint();
        let resid = (&sum - ComplexMatrix::<T>::identity(n, n)).norm();
        let allowed = scaled_tol::<T>(STRUCTURAL_RTOL) * real::<T>(n as f64);
        if resid > allowed {
            return Err(Error::HypothesisViolation(format!(
                "CC† + DD† = I fails: residual {:.3e} (allowed {:.3e})",
                resid.as_f64(),
                allowed.as_f64()
            )));
        }
        Ok(())
    }
}

/// The two left blocks of the first `n` rows of a Haar unitary of size `2n`.
pub fn random_coisometry_pair<T: Real>(n: usize, rng: &mut ChaCha12Rng) -> Result<ContractionPair<T>> {
    let w = random_unitary::<T>(2 * n, rng);
    let c = w.view((0, 0), (n, n)).into_owned();
    let d = w.view((0, n), (n, n)).into_owned();
    ContractionPair::new(c, d)
}

/// Rank-`r` orthogonal projection `U diag(1,...,1,0,...,0) U†`.
pub fn random_projection<T: Real>(
    n: usize,
    rank: usize,
    rng: &mut ChaCha12Rng,
) -> Result<HermitianMatrix<T>> {
    if rank > n {
        return Err(Error::Usage(format!("projection rank {rank} exceeds dimension {n}")));
    }
    let u = random_unitary::<T>(n, rng);
    let diag: Vec<T> = (0..n).map(|i| if i < rank { T::one() } else { T::zero() }).collect();
    let q = HermitianMatrix::from_real_diagonal(&diag).conjugate_by(&u)?;
    debug_assert!(projection_defect(&q).as_f64() <= STRUCTURAL_RTOL * n as f64);
    Ok(q)
}

/// `||Q² - Q||_F`, the idempotence defect of a would-be projection.
pub fn projection_defect<T: Real>(q: &HermitianMatrix<T>) -> T {
    (q.as_matrix() * q.as_matrix() - q.as_matrix()).norm()
}

/// Weights, PSD operators and scalar points with `Σ α_i A_i = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionOfIdentity<T: Real> {
    weights: Vec<T>,
    operators: Vec<HermitianMatrix<T>>,
    points: Vec<T>,
}

impl<T: Real> ResolutionOfIdentity<T> {
    pub fn new(weights: Vec<T>, operators: Vec<HermitianMatrix<T>>, points: Vec<T>) -> Result<Self> {
        let res = Self { weights, operators, points };
        res.validate()?;
        Ok(res)
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn operators(&self) -> &[HermitianMatrix<T>] {
        &self.operators
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.weights.len();
        if k < 2 || self.operators.len() != k || self.points.len() != k {
            return Err(Error::Usage("resolution needs k >= 2 aligned weights, operators and points".into()));
        }
        let n = self.operators[0].dim();
        let mut wsum = T::zero();
        for &w in &self.weights {
            if !(w > T::zero() && w < T::one()) {
                return Err(Error::HypothesisViolation(format!(
                    "resolution weight {} is outside (0,1)",
                    w.as_f64()
                )));
            }
            wsum += w;
        }
        if Float::abs(wsum - T::one()) > scaled_tol::<T>(1e-10) {
            return Err(Error::HypothesisViolation(format!(
                "resolution weights sum to {}, not 1",
                wsum.as_f64()
            )));
        }
        let mut sum = HermitianMatrix::zeros(n);
        for (a, &w) in self.operators.iter().zip(&self.weights) {
            if a.dim() != n {
                return Err(Error::DimensionMismatch { left: a.dim(), right: n });
            }
            let lam_min = spectral_decompose(a)?.lambda_min();
            if lam_min < -scaled_tol::<T>(STRUCTURAL_RTOL) * Float::max(T::one(), a.fro_norm()) {
                return Err(Error::NotPositiveSemidefinite { lambda_min: lam_min.as_f64() });
            }
            sum = sum.add(&a.scale(w));
        }
        let resid = sum.sub(&HermitianMatrix::identity(n)).fro_norm();
        let allowed = scaled_tol::<T>(STRUCTURAL_RTOL) * real::<T>(n as f64);
        if resid > allowed {
            return Err(Error::HypothesisViolation(format!(
                "Σ α_i A_i = I fails: residual {:.3e} (allowed {:.3e})",
                resid.as_f64(),
                allowed.as_f64()
            )));
        }
        Ok(())
    }
}

/// Flat (Dirichlet(1,..,1)) simplex sample of `k` weights.
pub fn random_simplex_weights<T: Real>(k: usize, rng: &mut ChaCha12Rng) -> Vec<T> {
    let draws: Vec<T> = (0..k)
        .map(|_| {
            let u: f64 = rng.random::<f64>();
            real::<T>(-(u.max(f64::MIN_POSITIVE)).ln())
        })
        .collect();
    let total: T = draws.iter().copied().sum();
    draws.into_iter().map(|e| e / total).collect()
}

/// Samples a resolution of identity: flat simplex weights, random PSD
/// latents `B_i`, then `A_i = S^{-1/2} B_i S^{-1/2}` with `S = Σ α_i B_i`,
/// which makes the sum exactly the identity by construction.
pub fn random_resolution<T: Real>(
    n: usize,
    k: usize,
    points_in: &Interval<T>,
    rng: &mut ChaCha12Rng,
) -> Result<ResolutionOfIdentity<T>> {
    if k < 2 {
        return Err(Error::Usage("resolution sampler needs k >= 2".into()));
    }
    let latent_spectrum = Interval::closed(real(0.1), T::one())?;
    let points_in = points_in.capped_default();
    let mut last_err = None;
    for _ in 0..MAX_RESAMPLES {
        let weights = random_simplex_weights::<T>(k, rng);
        let latents: Vec<HermitianMatrix<T>> =
            (0..k).map(|_| random_psd_with_spectrum(n, &latent_spectrum, rng)).collect();
        let mut s = HermitianMatrix::zeros(n);
        for (b, &w) in latents.iter().zip(&weights) {
            s = s.add(&b.scale(w));
        }
        match matrix_power(&s, real(-0.5)) {
            Ok(s_inv_sqrt) => {
                let operators: Vec<HermitianMatrix<T>> = latents
                    .iter()
                    .map(|b| b.conjugate_by(s_inv_sqrt.as_matrix()))
                    .collect::<Result<_>>()?;
                let points: Vec<T> =
                    (0..k).map(|_| uniform(rng, points_in.lo(), points_in.hi())).collect();
                return ResolutionOfIdentity::new(weights, operators, points);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(Error::Numerical(format!(
        "resolution sampler exhausted retries: {}",
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}

/// Unital positive linear map in Kraus form `Φ(X) = Σ K_i† X K_i`, with an
/// optional transpose twist (`X ↦ Σ K_i† Xᵀ K_i`) that stays positive and
/// unital but is no longer completely positive.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitalPositiveMap<T: Real> {
    kraus: Vec<ComplexMatrix<T>>,
    transpose_twist: bool,
    unital_residual: T,
}

impl<T: Real> UnitalPositiveMap<T> {
    pub fn new(kraus: Vec<ComplexMatrix<T>>, transpose_twist: bool) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::Usage("a Kraus family needs at least one operator".into()));
        }
        let n = kraus[0].nrows();
        if kraus.iter().any(|k| k.nrows() != n || k.ncols() != n) || n == 0 {
            return Err(Error::Usage("Kraus operators must all be square of one size".into()));
        }
        let mut sum = ComplexMatrix::<T>::zeros(n, n);
        for k in &kraus {
            sum += k.adjoint() * k;
        }
        let unital_residual = (&sum - ComplexMatrix::<T>::identity(n, n)).norm();
        if unital_residual > scaled_tol::<T>(STRUCTURAL_RTOL) {
            return Err(Error::HypothesisViolation(format!(
                "map is not unital: ||Σ K†K - I|| = {:.3e}",
                unital_residual.as_f64()
            )));
        }
        Ok(Self { kraus, transpose_twist, unital_residual })
    }

    pub fn kraus(&self) -> &[ComplexMatrix<T>] {
        &self.kraus
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].nrows()
    }

    pub fn transpose_twist(&self) -> bool {
        self.transpose_twist
    }

    pub fn unital_residual(&self) -> T {
        self.unital_residual
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.kraus.clone(), self.transpose_twist).map(|_| ())
    }

    /// Applies the map; positivity is structural (congruences of a PSD
    /// matrix, with the transpose preserving positivity in the twisted case).
    pub fn apply(&self, x: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
        let arg = if self.transpose_twist { x.transpose() } else { x.clone() };
        let mut out = HermitianMatrix::zeros(self.dim());
        for k in &self.kraus {
            out = out.add(&arg.conjugate_by(&k.adjoint())?);
        }
        Ok(out)
    }
}

/// Stacks `m` Gaussian Kraus operators and renormalizes by `T^{-1/2}` where
/// `T = Σ K_i† K_i`, which makes the map exactly unital.
pub fn random_unital_positive_map<T: Real>(
    n: usize,
    m_kraus: usize,
    transpose_twist: bool,
    rng: &mut ChaCha12Rng,
) -> Result<UnitalPositiveMap<T>> {
    if m_kraus == 0 {
        return Err(Error::Usage("need at least one Kraus operator".into()));
    }
    let mut last_err = None;
    for _ in 0..MAX_RESAMPLES {
        let raw: Vec<ComplexMatrix<T>> = (0..m_kraus).map(|_| gaussian_complex(n, n, rng)).collect();
        let mut t_sum = ComplexMatrix::<T>::zeros(n, n);
        for k in &raw {
            t_sum += k.adjoint() * k;
        }
        let t_herm = HermitianMatrix::from_symmetric_product(t_sum);
        match matrix_power(&t_herm, real(-0.5)) {
            Ok(t_inv_sqrt) => {
                let kraus: Vec<ComplexMatrix<T>> =
                    raw.iter().map(|k| k * t_inv_sqrt.as_matrix()).collect();
                return UnitalPositiveMap::new(kraus, transpose_twist);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(Error::Numerical(format!(
        "Kraus sampler exhausted retries: {}",
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}
