//! Evaluable families for the candidate functions `f` (applied to matrices
//! through the functional calculus) and the weight functions `h`, plus the
//! hypothesis scans and the power-function membership classifier.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::{apply_scalar_function, HermitianMatrix};
use crate::samplers::SeedSpec;
use crate::scalar::{real, Real};

/// Threshold below which a scanned discrepancy counts as a genuine failure.
const HYPOTHESIS_ATOL: f64 = 1e-12;

/// Grid size used when validating non-negativity of a new function.
const NONNEGATIVITY_GRID: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub enum ScalarFamily<T: Real> {
    /// `t^s` with `s >= 0`.
    Power { exponent: T },
    /// Coefficients low-to-high: `c0 + c1 t + c2 t^2 + ...`.
    Polynomial { coeffs: Vec<T> },
    /// Positive combination `sum_i w_i f_i`.
    AffineCombo { terms: Vec<(T, ScalarFunction<T>)> },
}

/// A non-negative continuous function on an interval `K` of the half line.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFunction<T: Real> {
    family: ScalarFamily<T>,
    domain: Interval<T>,
}

impl<T: Real> ScalarFunction<T> {
    pub fn power(exponent: T, domain: Interval<T>) -> Result<Self> {
        if exponent < T::zero() || !Float::is_finite(exponent) {
            return Err(Error::Usage(format!(
                "power exponent must be finite and >= 0, got {}",
                exponent.as_f64()
            )));
        }
        Ok(Self { family: ScalarFamily::Power { exponent }, domain })
    }

    /// Polynomial with low-to-high coefficients; non-negativity is validated
    /// on a 1000-point grid over the (capped) domain and a failing point is
    /// named in the error.
    pub fn polynomial(coeffs: Vec<T>, domain: Interval<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Usage("polynomial needs at least one coefficient".into()));
        }
        let f = Self { family: ScalarFamily::Polynomial { coeffs }, domain };
        f.validate_nonnegative()?;
        Ok(f)
    }

    /// Pointwise sum, defined on the common domain.
    pub fn sum(f: Self, g: Self) -> Result<Self> {
        if f.domain != g.domain {
            return Err(Error::Usage("summands must share the same domain".into()));
        }
        let domain = f.domain;
        Ok(Self {
            family: ScalarFamily::AffineCombo { terms: vec![(T::one(), f), (T::one(), g)] },
            domain,
        })
    }

    /// Positive scaling `λ f` with `λ > 0`.
    pub fn scaled(lambda: T, f: Self) -> Result<Self> {
        if lambda <= T::zero() || !Float::is_finite(lambda) {
            return Err(Error::Usage(format!(
                "scaling factor must be finite and > 0, got {}",
                lambda.as_f64()
            )));
        }
        let domain = f.domain;
        Ok(Self { family: ScalarFamily::AffineCombo { terms: vec![(lambda, f)] }, domain })
    }

    pub fn domain(&self) -> &Interval<T> {
        &self.domain
    }

    pub fn family(&self) -> &ScalarFamily<T> {
        &self.family
    }

    /// Whether `f(0) = 0`. Several theorems gate on this flag.
    pub fn vanishes_at_zero(&self) -> bool {
        match &self.family {
            ScalarFamily::Power { exponent } => *exponent > T::zero(),
            ScalarFamily::Polynomial { coeffs } => coeffs[0] == T::zero(),
            ScalarFamily::AffineCombo { terms } => terms.iter().all(|(_, f)| f.vanishes_at_zero()),
        }
    }

    /// Closed-form evaluation; `x` must lie in the domain.
    pub fn eval(&self, x: T) -> Result<T> {
        if !self.domain.contains(x) {
            return Err(Error::DomainViolation {
                value: x.as_f64(),
                lo: self.domain.lo().as_f64(),
                hi: self.domain.hi().as_f64(),
            });
        }
        Ok(self.eval_raw(x))
    }

    fn eval_raw(&self, x: T) -> T {
        match &self.family {
            ScalarFamily::Power { exponent } => Float::powf(x, *exponent),
            ScalarFamily::Polynomial { coeffs } => {
                let mut acc = T::zero();
                for &c in coeffs.iter().rev() {
                    acc = acc * x + c;
                }
                acc
            }
            ScalarFamily::AffineCombo { terms } => {
                terms.iter().map(|(w, f)| *w * f.eval_raw(x)).sum()
            }
        }
    }

    /// `f(A)` over the function's own domain.
    pub fn apply(&self, a: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
        apply_scalar_function(self, a, &self.domain)
    }

    fn validate_nonnegative(&self) -> Result<()> {
        let window = self.domain.capped_default();
        let n = NONNEGATIVITY_GRID;
        let step = window.width() / real((n - 1) as f64);
        for i in 0..n {
            let x = window.lo() + step * real(i as f64);
            let v = self.eval_raw(x);
            if v < T::zero() {
                return Err(Error::Usage(format!(
                    "function is negative on its domain: f({}) = {}",
                    x.as_f64(),
                    v.as_f64()
                )));
            }
        }
        Ok(())
    }

    /// Parses the CLI text syntax: `power:s=1.5`, `poly:1,0,2`,
    /// `sum(power:s=1.2,power:s=1.8)`, `scale:3(power:s=2)`.
    pub fn parse(spec: &str, domain: Interval<T>) -> Result<Self> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("power:s=") {
            let s = parse_real(rest)?;
            return Self::power(s, domain);
        }
        if let Some(rest) = spec.strip_prefix("poly:") {
            let coeffs = rest
                .split(',')
                .map(|c| parse_real(c.trim()))
                .collect::<Result<Vec<T>>>()?;
            return Self::polynomial(coeffs, domain);
        }
        if let Some(rest) = spec.strip_prefix("sum(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {spec:?}")))?;
            // poly coefficients also use commas, so try each top-level comma
            // as the operand separator until both halves parse
            for split in top_level_commas(inner)? {
                let (lhs, rhs) = (&inner[..split], &inner[split + 1..]);
                if let (Ok(f), Ok(g)) = (Self::parse(lhs, domain), Self::parse(rhs, domain)) {
                    return Self::sum(f, g);
                }
            }
            return Err(Error::Parse(format!("cannot split sum operands in {spec:?}")));
        }
        if let Some(rest) = spec.strip_prefix("scale:") {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::Parse(format!("scale expects scale:<λ>(<f>), got {spec:?}")))?;
            let lambda = parse_real(&rest[..open])?;
            let inner = rest[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {spec:?}")))?;
            let f = Self::parse(inner, domain)?;
            return Self::scaled(lambda, f);
        }
        Err(Error::Parse(format!("unknown scalar function spec {spec:?}")))
    }

    /// Inverse of [`parse`]; used for witnesses, so the format must round-trip.
    pub fn spec_string(&self) -> String {
        match &self.family {
            ScalarFamily::Power { exponent } => format!("power:s={}", exponent.as_f64()),
            ScalarFamily::Polynomial { coeffs } => {
                let cs: Vec<String> = coeffs.iter().map(|c| format!("{}", c.as_f64())).collect();
                format!("poly:{}", cs.join(","))
            }
            ScalarFamily::AffineCombo { terms } => match terms.as_slice() {
                [(w, f)] => format!("scale:{}({})", w.as_f64(), f.spec_string()),
                [(wf, f), (wg, g)] if *wf == T::one() && *wg == T::one() => {
                    format!("sum({},{})", f.spec_string(), g.spec_string())
                }
                _ => {
                    // general combos re-render as nested sums of scalings
                    let mut it = terms.iter();
                    let (w0, f0) = it.next().expect("combo has at least one term");
                    let mut acc = format!("scale:{}({})", w0.as_f64(), f0.spec_string());
                    for (w, f) in it {
                        acc = format!("sum({acc},scale:{}({}))", w.as_f64(), f.spec_string());
                    }
                    acc
                }
            },
        }
    }
}

fn parse_real<T: Real>(s: &str) -> Result<T> {
    s.parse::<f64>()
        .map(real)
        .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}

/// Byte offsets of commas that are not nested inside parentheses.
fn top_level_commas(s: &str) -> Result<Vec<usize>> {
    let mut commas = Vec::new();
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?
            }
            ',' if depth == 0 => commas.push(i),
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
    }
    Ok(commas)
}

/// Weight function families for `h`. The domain `J` always contains `(0,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightFamily {
    Identity,
    /// `x^s` with `s > 0`.
    Power,
    ConstantOne,
    Reciprocal,
    /// `x^3 - x^2 + x`.
    Cubic,
    /// `(x^3 - x^2 + x) / 2`.
    HalfCubic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction<T: Real> {
    family: WeightFamily,
    exponent: T,
    domain: Interval<T>,
}

impl<T: Real> WeightFunction<T> {
    pub fn identity() -> Self {
        Self { family: WeightFamily::Identity, exponent: T::one(), domain: Interval::unit() }
    }

    pub fn power(exponent: T) -> Result<Self> {
        if exponent <= T::zero() || !Float::is_finite(exponent) {
            return Err(Error::Usage(format!(
                "weight power exponent must be finite and > 0, got {}",
                exponent.as_f64()
            )));
        }
        Ok(Self { family: WeightFamily::Power, exponent, domain: Interval::unit() })
    }

    pub fn constant_one() -> Self {
        Self { family: WeightFamily::ConstantOne, exponent: T::one(), domain: Interval::unit() }
    }

    /// `1/x`, defined on `(0, 1]` by default.
    pub fn reciprocal() -> Self {
        Self {
            family: WeightFamily::Reciprocal,
            exponent: T::one(),
            domain: Interval::unit_open_lo(),
        }
    }

    pub fn cubic() -> Self {
        Self { family: WeightFamily::Cubic, exponent: T::one(), domain: Interval::unit() }
    }

    pub fn half_cubic() -> Self {
        Self { family: WeightFamily::HalfCubic, exponent: T::one(), domain: Interval::unit() }
    }

    /// Same family on a caller-chosen `J`.
    pub fn with_domain(mut self, j: Interval<T>) -> Self {
        self.domain = j;
        self
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    pub fn domain(&self) -> &Interval<T> {
        &self.domain
    }

    pub fn eval(&self, x: T) -> Result<T> {
        if !self.domain.contains(x) {
            return Err(Error::DomainViolation {
                value: x.as_f64(),
                lo: self.domain.lo().as_f64(),
                hi: self.domain.hi().as_f64(),
            });
        }
        Ok(self.eval_raw(x))
    }

    fn eval_raw(&self, x: T) -> T {
        match self.family {
            WeightFamily::Identity => x,
            WeightFamily::Power => Float::powf(x, self.exponent),
            WeightFamily::ConstantOne => T::one(),
            WeightFamily::Reciprocal => T::one() / x,
            WeightFamily::Cubic => cubic(x),
            WeightFamily::HalfCubic => cubic(x) * real(0.5),
        }
    }

    /// The constant `2 h(1/2)` appearing in the Hansen-Pedersen-type bounds.
    pub fn two_h_half(&self) -> T {
        real::<T>(2.0) * self.eval_raw(real(0.5))
    }

    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "identity" => Ok(Self::identity()),
            "one" => Ok(Self::constant_one()),
            "recip" => Ok(Self::reciprocal()),
            "cubic" => Ok(Self::cubic()),
            "half_cubic" => Ok(Self::half_cubic()),
            _ => {
                if let Some(rest) = spec.strip_prefix("power:s=") {
                    Self::power(parse_real(rest)?)
                } else {
                    Err(Error::Parse(format!("unknown weight function spec {spec:?}")))
                }
            }
        }
    }

    pub fn spec_string(&self) -> String {
        match self.family {
            WeightFamily::Identity => "identity".into(),
            WeightFamily::Power => format!("power:s={}", self.exponent.as_f64()),
            WeightFamily::ConstantOne => "one".into(),
            WeightFamily::Reciprocal => "recip".into(),
            WeightFamily::Cubic => "cubic".into(),
            WeightFamily::HalfCubic => "half_cubic".into(),
        }
    }

    /// Canonical super-multiplicativity scan used for hypothesis gating.
    pub fn is_supermultiplicative(&self) -> bool {
        check_supermultiplicative(self, &self.domain, 48, 128, SeedSpec::new(0x5eed_0001, 0))
            .map(|r| r.holds)
            .unwrap_or(false)
    }

    /// Canonical scan of `2h(1/2) <= h(α)/α` on `(0,1)`.
    pub fn satisfies_half_condition(&self) -> bool {
        check_half_condition(self, 999).map(|r| r.holds).unwrap_or(false)
    }
}

fn cubic<T: Real>(x: T) -> T {
    ((x - T::one()) * x + T::one()) * x
}

/// Result of a sampled hypothesis scan on a weight function.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport<T> {
    pub property: String,
    pub min_discrepancy: T,
    /// Sample point(s) attaining the minimum.
    pub arg_min: Vec<T>,
    pub holds: bool,
    pub samples_used: usize,
    /// Pairs whose product fell outside `J` (skipped, not errors).
    pub skipped: usize,
}

fn grid_points<T: Real>(j: &Interval<T>, n: usize) -> Vec<T> {
    let j = j.capped_default();
    if n == 1 {
        return vec![(j.lo() + j.hi()) * real(0.5)];
    }
    let mut pts = Vec::with_capacity(n);
    if j.closed_lo() && j.closed_hi() {
        let step = j.width() / real((n - 1) as f64);
        for i in 0..n {
            pts.push(j.lo() + step * real(i as f64));
        }
    } else {
        // interior points, robust to open endpoints
        let step = j.width() / real((n + 1) as f64);
        for i in 0..n {
            pts.push(j.lo() + step * real((i + 1) as f64));
        }
    }
    pts
}

/// Scans `h(xy) - h(x)h(y)` over a grid of `J × J` plus random pairs.
/// Products that leave `J` are skipped and counted.
pub fn check_supermultiplicative<T: Real>(
    h: &WeightFunction<T>,
    j: &Interval<T>,
    n_grid: usize,
    n_random: usize,
    seed: SeedSpec,
) -> Result<HypothesisReport<T>> {
    use rand::Rng;

    let pts = grid_points(j, n_grid);
    let mut min_disc = T::infinity();
    let mut arg_min = vec![T::zero(), T::zero()];
    let mut scale_at_min = T::one();
    let mut used = 0usize;
    let mut skipped = 0usize;

    let mut visit = |x: T, y: T, h: &WeightFunction<T>| -> Result<()> {
        let prod = x * y;
        if !j.contains(prod) {
            skipped += 1;
            return Ok(());
        }
        let hxhy = h.eval(x)? * h.eval(y)?;
        let disc = h.eval(prod)? - hxhy;
        used += 1;
        if disc < min_disc {
            min_disc = disc;
            arg_min = vec![x, y];
            scale_at_min = Float::max(T::one(), Float::abs(hxhy));
        }
        Ok(())
    };

    for &x in &pts {
        for &y in &pts {
            visit(x, y, h)?;
        }
    }

    let mut rng = seed.rng();
    let capped = j.capped_default();
    let mut out_of_domain = 0usize;
    for _ in 0..n_random {
        let x = capped.lo() + (capped.hi() - capped.lo()) * real(rng.random::<f64>());
        let y = capped.lo() + (capped.hi() - capped.lo()) * real(rng.random::<f64>());
        if !j.contains(x) || !j.contains(y) {
            out_of_domain += 1;
            continue;
        }
        visit(x, y, h)?;
    }
    skipped += out_of_domain;

    if used == 0 {
        return Err(Error::Usage("super-multiplicativity scan evaluated no pairs".into()));
    }
    // the failure threshold scales with |h(x)h(y)| so that exactly
    // multiplicative but unbounded families (reciprocal) are not failed by
    // roundoff at large values
    Ok(HypothesisReport {
        property: "super-multiplicative".into(),
        min_discrepancy: min_disc,
        arg_min,
        holds: min_disc >= -real::<T>(HYPOTHESIS_ATOL) * scale_at_min,
        samples_used: used,
        skipped,
    })
}

/// Scans `h(α)/α - 2h(1/2)` over the grid `α = k/(n_grid+1)`.
pub fn check_half_condition<T: Real>(
    h: &WeightFunction<T>,
    n_grid: usize,
) -> Result<HypothesisReport<T>> {
    if n_grid == 0 {
        return Err(Error::Usage("half-condition scan needs a non-empty grid".into()));
    }
    let target = h.two_h_half();
    let mut min_disc = T::infinity();
    let mut arg_min = vec![T::zero()];
    let denom = real::<T>((n_grid + 1) as f64);
    for k in 1..=n_grid {
        let alpha = real::<T>(k as f64) / denom;
        let disc = h.eval(alpha)? / alpha - target;
        if disc < min_disc {
            min_disc = disc;
            arg_min = vec![alpha];
        }
    }
    Ok(HypothesisReport {
        property: "half-condition".into(),
        min_discrepancy: min_disc,
        arg_min,
        holds: min_disc >= -real::<T>(HYPOTHESIS_ATOL),
        samples_used: n_grid,
        skipped: 0,
    })
}

/// Membership verdict for `f(t) = t^s` under `h(α) = α`: member iff
/// `s/p ∈ [1,2]`, with the operator-monotone / operator-convex sub-cases
/// flagged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerClassification<T> {
    pub member: bool,
    pub ratio: T,
    pub operator_monotone: bool,
    pub operator_convex: bool,
}

impl<T: Real> PowerClassification<T> {
    pub fn reason(&self) -> String {
        if !self.member {
            return format!("s/p = {} lies outside [1, 2]", self.ratio.as_f64());
        }
        let mut r = format!("s/p = {} lies in [1, 2]", self.ratio.as_f64());
        if self.operator_monotone {
            r.push_str("; t^s is also operator monotone (s <= 1)");
        }
        if self.operator_convex {
            r.push_str("; t^s is also operator convex (s in [1, 2])");
        }
        if !self.operator_monotone && !self.operator_convex {
            r.push_str("; t^s is neither operator monotone nor operator convex");
        }
        r
    }
}

/// Classifies `t^s` for exponent `p`-convexity with identity weight.
pub fn classify_power_function<T: Real>(s: T, p: T) -> PowerClassification<T> {
    assert!(s >= T::zero(), "exponent s must be >= 0");
    assert!(p > T::zero(), "power p must be > 0");
    let ratio = s / p;
    let member = ratio >= T::one() && ratio <= real(2.0);
    PowerClassification {
        member,
        ratio,
        operator_monotone: member && s <= T::one(),
        operator_convex: member && s >= T::one() && s <= real(2.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn k10() -> Interval<f64> {
        Interval::closed(0.0, 10.0).unwrap()
    }

    #[test]
    fn eval_examples() {
        let h = WeightFunction::<f64>::cubic();
        assert_relative_eq!(h.eval(0.5).unwrap(), 3.0 / 8.0, epsilon = 1e-15);

        let f = ScalarFunction::power(2.0, k10()).unwrap();
        assert_relative_eq!(f.eval(3.0).unwrap(), 9.0, epsilon = 1e-15);

        let r = WeightFunction::<f64>::reciprocal();
        assert_relative_eq!(r.eval(0.25).unwrap(), 4.0, epsilon = 1e-15);
        assert!(r.eval(0.0).is_err());
    }

    #[test]
    fn combine_examples() {
        let s = ScalarFunction::sum(
            ScalarFunction::power(1.2, k10()).unwrap(),
            ScalarFunction::power(1.8, k10()).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(s.eval(1.0).unwrap(), 2.0, epsilon = 1e-15);

        let sc = ScalarFunction::scaled(3.0, ScalarFunction::power(2.0, k10()).unwrap()).unwrap();
        assert_relative_eq!(sc.eval(2.0).unwrap(), 12.0, epsilon = 1e-15);

        let other = Interval::closed(0.0, 1.0).unwrap();
        assert!(ScalarFunction::sum(
            ScalarFunction::power(1.0, k10()).unwrap(),
            ScalarFunction::power(1.0, other).unwrap()
        )
        .is_err());
    }

    #[test]
    fn polynomial_nonnegativity_guard() {
        let ok = ScalarFunction::polynomial(vec![1.0, 0.0, 2.0], k10()).unwrap();
        assert_relative_eq!(ok.eval(2.0).unwrap(), 9.0, epsilon = 1e-15);
        // 1 - t is negative beyond t = 1
        let err = ScalarFunction::polynomial(vec![1.0, -1.0], k10()).unwrap_err();
        assert!(err.to_string().contains("negative"));
    }

    #[test]
    fn vanishing_flag() {
        assert!(ScalarFunction::power(1.5, k10()).unwrap().vanishes_at_zero());
        assert!(!ScalarFunction::power(0.0, k10()).unwrap().vanishes_at_zero());
        assert!(ScalarFunction::polynomial(vec![0.0, 1.0, 2.0], k10()).unwrap().vanishes_at_zero());
        assert!(!ScalarFunction::polynomial(vec![0.5, 1.0], k10()).unwrap().vanishes_at_zero());
    }

    #[test]
    fn supermultiplicative_families() {
        let j = Interval::closed(0.0, 1.0).unwrap();
        for h in [
            WeightFunction::<f64>::identity(),
            WeightFunction::power(1.7).unwrap(),
            WeightFunction::power(0.4).unwrap(),
            WeightFunction::constant_one(),
            WeightFunction::cubic(),
            WeightFunction::half_cubic(),
        ] {
            let dom = h.domain().clone();
            let jj = if dom.closed_lo() { j } else { dom };
            let rep = check_supermultiplicative(&h, &jj, 64, 200, SeedSpec::new(7, 0)).unwrap();
            assert!(rep.holds, "{} min {}", h.spec_string(), rep.min_discrepancy);
        }
        let r = WeightFunction::<f64>::reciprocal();
        let rep =
            check_supermultiplicative(&r, &Interval::unit_open_lo(), 64, 200, SeedSpec::new(7, 0))
                .unwrap();
        assert!(rep.holds);
        assert!(rep.min_discrepancy.abs() < 1e-9, "reciprocal is exactly multiplicative");
    }

    #[test]
    fn identity_and_powers_are_exactly_multiplicative() {
        let j = Interval::closed(0.0, 1.0).unwrap();
        for h in [WeightFunction::<f64>::identity(), WeightFunction::power(2.3).unwrap()] {
            let rep = check_supermultiplicative(&h, &j, 32, 100, SeedSpec::new(3, 1)).unwrap();
            assert!(rep.min_discrepancy.abs() < 1e-12);
        }
    }

    #[test]
    fn half_condition_examples() {
        let cubic = WeightFunction::<f64>::cubic();
        let rep = check_half_condition(&cubic, 999).unwrap();
        assert!(rep.holds);
        assert_relative_eq!(rep.min_discrepancy, 0.0, epsilon = 1e-12);
        assert_relative_eq!(rep.arg_min[0], 0.5, epsilon = 1e-12);

        let id = WeightFunction::<f64>::identity();
        let rep = check_half_condition(&id, 999).unwrap();
        assert_relative_eq!(rep.min_discrepancy, 0.0, epsilon = 1e-12);

        let half = WeightFunction::<f64>::half_cubic();
        let rep = check_half_condition(&half, 999).unwrap();
        assert!(rep.holds);
        assert_relative_eq!(rep.min_discrepancy, 0.0, epsilon = 1e-12);
        assert_relative_eq!(half.two_h_half(), 3.0 / 8.0, epsilon = 1e-15);

        // Q-class and P-class weights fail the half-condition
        assert!(!WeightFunction::<f64>::reciprocal().satisfies_half_condition());
        assert!(!WeightFunction::<f64>::constant_one().satisfies_half_condition());
        assert!(WeightFunction::<f64>::identity().satisfies_half_condition());
    }

    #[test]
    fn classify_examples() {
        assert!(classify_power_function(1.5, 1.0).member);
        assert!(!classify_power_function(3.0, 1.0).member);
        assert!(!classify_power_function(1.0, 2.0).member);

        let c = classify_power_function(0.8, 0.6);
        assert!(c.member);
        assert!(c.operator_monotone);
        assert!(!c.operator_convex);

        let c = classify_power_function(3.0, 2.0);
        assert!(c.member);
        assert!(!c.operator_monotone);
        assert!(!c.operator_convex);
        assert!(c.reason().contains("neither"));
    }

    #[test]
    fn classify_depends_only_on_ratio() {
        for (s, p) in [(1.5, 1.0), (0.5, 1.0), (2.0, 0.7), (3.3, 1.4)] {
            let base = classify_power_function(s, p);
            for c in [0.3, 2.0, 11.0] {
                assert_eq!(classify_power_function(s * c, p * c).member, base.member);
            }
        }
    }

    #[test]
    fn parse_round_trips() {
        let k = k10();
        for spec in [
            "power:s=1.5",
            "poly:1,0,2",
            "sum(power:s=1.2,power:s=1.8)",
            "scale:3(power:s=2)",
            "sum(scale:2(power:s=1),poly:0,1)",
        ] {
            let f = ScalarFunction::<f64>::parse(spec, k).unwrap();
            let back = ScalarFunction::<f64>::parse(&f.spec_string(), k).unwrap();
            assert_eq!(f, back, "spec {spec}");
        }
        for spec in ["identity", "one", "recip", "cubic", "half_cubic", "power:s=1.3"] {
            let h = WeightFunction::<f64>::parse(spec).unwrap();
            assert_eq!(h, WeightFunction::parse(&h.spec_string()).unwrap());
        }
        assert!(ScalarFunction::<f64>::parse("gauss", k10()).is_err());
        assert!(WeightFunction::<f64>::parse("power:s=-1").is_err());
    }
}
