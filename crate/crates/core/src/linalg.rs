//! Dense Hermitian linear algebra: spectral decomposition, functional
//! calculus, matrix powers/exp/log and tolerance-aware Loewner comparison.
//!
//! Everything here is immutable after construction and pure, so values can be
//! shared freely across worker threads.

use nalgebra::{Complex, DMatrix};
use num_traits::Float;

use crate::error::{Error, Result};
use crate::functions::ScalarFunction;
use crate::interval::Interval;
use crate::scalar::{real, scaled_tol, Real};

/// Dense complex matrix alias used for general (non-Hermitian) operands such
/// as contractions and Kraus operators.
pub type ComplexMatrix<T> = DMatrix<Complex<T>>;

/// Relative bound on the correction applied when symmetrizing input.
const HERMITIZE_RTOL: f64 = 1e-12;

/// Eigenvalues in `[-clamp, 0)` with `clamp = SPECTRAL_CLAMP_RTOL * ||A||_2`
/// are treated as exact zeros before fractional powers and logarithms.
const SPECTRAL_CLAMP_RTOL: f64 = 1e-10;

/// Absolute positivity floor required of arguments to `matrix_log` and of
/// the strictly positive-definite hypothesis checks.
const STRICT_PD_ATOL: f64 = 1e-9;

/// A validated complex Hermitian matrix.
///
/// Construction symmetrizes the input as `(A + A†)/2` and fails if that moved
/// the matrix by more than `1e-12 · ||A||_F`; afterwards `entry(i,j)` is the
/// exact conjugate of `entry(j,i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix<T: Real> {
    mat: ComplexMatrix<T>,
}

impl<T: Real> HermitianMatrix<T> {
    pub fn new(raw: ComplexMatrix<T>) -> Result<Self> {
        if raw.nrows() != raw.ncols() || raw.nrows() == 0 {
            return Err(Error::Usage(format!(
                "Hermitian matrix must be square and non-empty, got {}x{}",
                raw.nrows(),
                raw.ncols()
            )));
        }
        let sym = hermitize(&raw);
        let correction = (&sym - &raw).norm();
        let allowed = scaled_tol::<T>(HERMITIZE_RTOL) * raw.norm();
        if correction > allowed && correction > real(f64::MIN_POSITIVE) {
            return Err(Error::NotHermitian {
                correction: correction.as_f64(),
                allowed: allowed.as_f64(),
            });
        }
        Ok(Self { mat: sym })
    }

    /// Builds from a closure over (row, col); the strict upper triangle is
    /// ignored and filled by conjugation.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Usage("dimension must be at least 1".into()));
        }
        let mut m = ComplexMatrix::<T>::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(f(i, i).re, T::zero());
            for j in 0..i {
                let v = f(i, j);
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
        Ok(Self { mat: m })
    }

    /// Internal constructor for matrices Hermitian by construction
    /// (U Λ U†, M A M†, sums of Hermitians). Symmetrizes unconditionally to
    /// keep the exactness invariant, without the correction check.
    pub(crate) fn from_symmetric_product(raw: ComplexMatrix<T>) -> Self {
        let sym = hermitize(&raw);
        Self { mat: sym }
    }

    pub fn zeros(n: usize) -> Self {
        Self { mat: ComplexMatrix::zeros(n, n) }
    }

    pub fn identity(n: usize) -> Self {
        Self { mat: ComplexMatrix::identity(n, n) }
    }

    pub fn scaled_identity(n: usize, c: T) -> Self {
        Self { mat: ComplexMatrix::identity(n, n).scale(c) }
    }

    pub fn from_real_diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = ComplexMatrix::<T>::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, T::zero());
        }
        Self { mat: m }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.mat[(i, j)]
    }

    pub fn as_matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.mat
    }

    pub fn fro_norm(&self) -> T {
        self.mat.norm()
    }

    /// Spectral norm, i.e. max |eigenvalue|. Needs one eigendecomposition.
    pub fn spectral_norm(&self) -> Result<T> {
        let dec = spectral_decompose(self)?;
        Ok(Float::max(
            Float::abs(dec.lambda_min()),
            Float::abs(dec.lambda_max()),
        ))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "Hermitian add: dimension mismatch");
        Self { mat: &self.mat + &other.mat }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "Hermitian sub: dimension mismatch");
        Self { mat: &self.mat - &other.mat }
    }

    pub fn scale(&self, c: T) -> Self {
        Self { mat: self.mat.scale(c) }
    }

    /// Congruence `M · A · M†` for a general k×n matrix `M`; the result is
    /// Hermitian of dimension k.
    pub fn conjugate_by(&self, m: &ComplexMatrix<T>) -> Result<Self> {
        if m.ncols() != self.dim() {
            return Err(Error::DimensionMismatch { left: m.ncols(), right: self.dim() });
        }
        if m.nrows() == 0 {
            return Err(Error::Usage("congruence by an empty matrix".into()));
        }
        Ok(Self::from_symmetric_product(m * &self.mat * m.adjoint()))
    }

    /// Transpose (equals entrywise conjugate for a Hermitian matrix).
    pub fn transpose(&self) -> Self {
        Self { mat: self.mat.transpose() }
    }

    pub fn trace(&self) -> T {
        self.mat.trace().re
    }
}

fn hermitize<T: Real>(raw: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let mut sym = (raw + raw.adjoint()).scale(real(0.5));
    for i in 0..sym.nrows() {
        sym[(i, i)] = Complex::new(sym[(i, i)].re, T::zero());
    }
    sym
}

/// Eigendecomposition `A = U diag(λ) U†` with ascending eigenvalues and
/// unitary `U` (columns are eigenvectors).
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<T: Real> {
    eigenvalues: Vec<T>,
    eigenvectors: ComplexMatrix<T>,
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix<T> {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda_min(&self) -> T {
        self.eigenvalues[0]
    }

    pub fn lambda_max(&self) -> T {
        *self.eigenvalues.last().unwrap()
    }

    /// Spectral norm of the decomposed matrix.
    pub fn spectral_norm(&self) -> T {
        Float::max(Float::abs(self.lambda_min()), Float::abs(self.lambda_max()))
    }

    /// Functional calculus: `U diag(g(λ)) U†`.
    pub fn map(&self, mut g: impl FnMut(T) -> T) -> HermitianMatrix<T> {
        let n = self.dim();
        let mut d = ComplexMatrix::<T>::zeros(n, n);
        for i in 0..n {
            d[(i, i)] = Complex::new(g(self.eigenvalues[i]), T::zero());
        }
        HermitianMatrix::from_symmetric_product(&self.eigenvectors * d * self.eigenvectors.adjoint())
    }

    /// Fallible functional calculus; the first eigenvalue `g` rejects aborts.
    pub fn try_map(&self, mut g: impl FnMut(T) -> Result<T>) -> Result<HermitianMatrix<T>> {
        let n = self.dim();
        let mut d = ComplexMatrix::<T>::zeros(n, n);
        for i in 0..n {
            d[(i, i)] = Complex::new(g(self.eigenvalues[i])?, T::zero());
        }
        Ok(HermitianMatrix::from_symmetric_product(
            &self.eigenvectors * d * self.eigenvectors.adjoint(),
        ))
    }

    pub fn reconstruct(&self) -> HermitianMatrix<T> {
        self.map(|l| l)
    }

    /// Eigenvalue clamp threshold `1e-10 · ||A||_2` used before fractional
    /// powers and logarithms.
    pub fn clamp_tol(&self) -> T {
        scaled_tol::<T>(SPECTRAL_CLAMP_RTOL) * self.spectral_norm()
    }

    /// Eigenvalues with the tiny-negative band flushed to zero; errors if any
    /// eigenvalue is negative beyond the clamp tolerance.
    pub fn psd_eigenvalues(&self) -> Result<Vec<T>> {
        let clamp = self.clamp_tol();
        let mut out = Vec::with_capacity(self.dim());
        for &l in &self.eigenvalues {
            if l < -clamp {
                return Err(Error::NotPositiveSemidefinite { lambda_min: l.as_f64() });
            }
            out.push(Float::max(l, T::zero()));
        }
        Ok(out)
    }

    /// `A^p` through the eigenvalues, with PSD clamping. See [`matrix_power`].
    pub fn power(&self, p: T) -> Result<HermitianMatrix<T>> {
        if p == T::zero() {
            return Err(Error::Usage("matrix power requires p != 0".into()));
        }
        let lam = self.psd_eigenvalues()?;
        if p < T::zero() {
            if let Some(&l) = lam.iter().find(|&&l| l == T::zero()) {
                return Err(Error::Singular {
                    context: "negative matrix power".into(),
                    lambda_min: l.as_f64(),
                });
            }
        }
        let n = self.dim();
        let mut d = ComplexMatrix::<T>::zeros(n, n);
        for (i, &l) in lam.iter().enumerate() {
            d[(i, i)] = Complex::new(Float::powf(l, p), T::zero());
        }
        Ok(HermitianMatrix::from_symmetric_product(
            &self.eigenvectors * d * self.eigenvectors.adjoint(),
        ))
    }

    /// `f(A)` with eigenvalues clamped into `K`; eigenvalues outside the
    /// widened interval raise a spectrum violation naming the offender.
    pub fn apply_in(&self, f: &ScalarFunction<T>, k: &Interval<T>) -> Result<HermitianMatrix<T>> {
        let slack = self.spectrum_slack();
        self.try_map(|l| {
            if !k.contains_within(l, slack) {
                return Err(Error::SpectrumViolation {
                    value: l.as_f64(),
                    lo: k.lo().as_f64(),
                    hi: if k.is_bounded() { k.hi().as_f64() } else { f64::INFINITY },
                });
            }
            f.eval(k.clamp_into(l))
        })
    }

    /// Slack allowed when checking spectra against an interval: the larger
    /// of the absolute default and the relative eigenvalue clamp.
    pub fn spectrum_slack(&self) -> T {
        Float::max(real(STRICT_PD_ATOL), self.clamp_tol())
    }
}

/// Tolerances for Loewner-order verdicts: the acceptance band is
/// `atol + rtol · (||X||_2 + ||Y||_2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig<T> {
    pub atol: T,
    pub rtol: T,
}

impl<T: Real> ToleranceConfig<T> {
    pub fn new(atol: T, rtol: T) -> Result<Self> {
        if !(Float::is_finite(atol) && Float::is_finite(rtol) && atol > T::zero() && rtol > T::zero()) {
            return Err(Error::Usage("tolerances must be finite and positive".into()));
        }
        Ok(Self { atol, rtol })
    }
}

impl<T: Real> Default for ToleranceConfig<T> {
    fn default() -> Self {
        Self { atol: real(1e-9), rtol: real(1e-8) }
    }
}

/// Outcome of a Loewner comparison `X ⪯ Y`.
///
/// `holds` uses the two-sided band `ε = atol + rtol·scale`; a *violation*
/// claim additionally requires `gap < -10ε` so noise never certifies a
/// counterexample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderVerdict<T> {
    /// `λ_min(Y - X)`; non-negative means the order holds exactly.
    pub gap: T,
    /// `||X||_2 + ||Y||_2`, the scale the band is relative to.
    pub scale: T,
    /// The band `ε` itself.
    pub band: T,
    pub holds: bool,
}

impl<T: Real> OrderVerdict<T> {
    /// Hysteresis: the failure is beyond ten times the tolerance band.
    pub fn certified_violation(&self) -> bool {
        self.gap < -real::<T>(10.0) * self.band
    }

    /// Positive part of the violation magnitude `λ_max(X - Y) = -gap`.
    pub fn violation(&self) -> T {
        Float::max(-self.gap, T::zero())
    }
}

/// Worst offender reported by [`spectrum_in_interval`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOffender<T> {
    pub index: usize,
    pub value: T,
    pub distance: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumCheck<T> {
    pub inside: bool,
    pub worst: Option<SpectrumOffender<T>>,
}

/// Eigendecomposition with validated reconstruction and unitarity residuals.
pub fn spectral_decompose<T: Real>(a: &HermitianMatrix<T>) -> Result<SpectralDecomposition<T>> {
    let n = a.dim();
    let eig = a
        .as_matrix()
        .clone()
        .try_symmetric_eigen(T::default_epsilon(), 20_000)
        .ok_or_else(|| Error::EigenFailure {
            context: "Hermitian eigensolver did not converge".into(),
            residual: f64::NAN,
        })?;

    // sort ascending, permuting eigenvector columns alongside
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let eigenvalues: Vec<T> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut eigenvectors = ComplexMatrix::<T>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }

    let dec = SpectralDecomposition { eigenvalues, eigenvectors };

    let nt = scaled_tol::<T>(1e-10) * real::<T>(n as f64);
    let unit_resid =
        (dec.eigenvectors.adjoint() * &dec.eigenvectors - ComplexMatrix::<T>::identity(n, n)).norm();
    if unit_resid > nt {
        return Err(Error::EigenFailure {
            context: "eigenvector basis is not unitary".into(),
            residual: unit_resid.as_f64(),
        });
    }
    let recon_resid = (dec.reconstruct().as_matrix() - a.as_matrix()).norm();
    if recon_resid > nt * Float::max(a.fro_norm(), T::one()) {
        return Err(Error::EigenFailure {
            context: "eigendecomposition does not reconstruct the input".into(),
            residual: recon_resid.as_f64(),
        });
    }
    Ok(dec)
}

/// Functional calculus `f(A)` with the spectrum checked against `K`.
pub fn apply_scalar_function<T: Real>(
    f: &ScalarFunction<T>,
    a: &HermitianMatrix<T>,
    k: &Interval<T>,
) -> Result<HermitianMatrix<T>> {
    spectral_decompose(a)?.apply_in(f, k)
}

/// `A^p` by functional calculus. Tiny negative eigenvalues (within
/// `1e-10 · ||A||_2`) are clamped to zero first; beyond that the matrix is
/// rejected as not PSD. Negative `p` additionally requires strict positivity.
pub fn matrix_power<T: Real>(a: &HermitianMatrix<T>, p: T) -> Result<HermitianMatrix<T>> {
    spectral_decompose(a)?.power(p)
}

pub fn matrix_exp<T: Real>(a: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
    Ok(spectral_decompose(a)?.map(|l| Float::exp(l)))
}

/// Matrix logarithm; requires `λ_min > 1e-9`.
pub fn matrix_log<T: Real>(a: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
    let dec = spectral_decompose(a)?;
    if dec.lambda_min() <= real(STRICT_PD_ATOL) {
        return Err(Error::Singular {
            context: "matrix logarithm".into(),
            lambda_min: dec.lambda_min().as_f64(),
        });
    }
    Ok(dec.map(|l| Float::ln(l)))
}

/// Loewner comparison `X ⪯ Y` with the two-sided tolerance band.
pub fn loewner_compare<T: Real>(
    x: &HermitianMatrix<T>,
    y: &HermitianMatrix<T>,
    tol: &ToleranceConfig<T>,
) -> Result<OrderVerdict<T>> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    let diff = y.sub(x);
    let gap = spectral_decompose(&diff)?.lambda_min();
    let scale = x.spectral_norm()? + y.spectral_norm()?;
    let band = tol.atol + tol.rtol * scale;
    Ok(OrderVerdict { gap, scale, band, holds: gap >= -band })
}

/// Checks `σ(A) ⊂ K` with the interval widened by `atol` at each finite
/// endpoint, reporting the worst offender when the check fails.
pub fn spectrum_in_interval<T: Real>(
    a: &HermitianMatrix<T>,
    k: &Interval<T>,
    atol: T,
) -> Result<SpectrumCheck<T>> {
    let dec = spectral_decompose(a)?;
    let mut worst: Option<SpectrumOffender<T>> = None;
    for (index, &value) in dec.eigenvalues().iter().enumerate() {
        if !k.contains_within(value, atol) {
            let distance = k.distance(value);
            if worst.map_or(true, |w| distance > w.distance) {
                worst = Some(SpectrumOffender { index, value, distance });
            }
        }
    }
    Ok(SpectrumCheck { inside: worst.is_none(), worst })
}

/// Spectral norm of a general complex matrix via `sqrt(λ_max(M†M))`.
pub fn operator_norm<T: Real>(m: &ComplexMatrix<T>) -> Result<T> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(T::zero());
    }
    let gram = HermitianMatrix::from_symmetric_product(m.adjoint() * m);
    let top = spectral_decompose(&gram)?.lambda_max();
    Ok(Float::sqrt(Float::max(top, T::zero())))
}
