//! Canonicalization of the general quadratic commutation relation
//!
//! ```text
//! [X, P] = i (1 + a X^2 + b P^2 + k XP + k* PX),   a, b real, k complex,
//! ```
//!
//! and the minimal uncertainties it implies. A complex deformation `k` is
//! first made real by rescaling the operators; the remaining `k (XP + PX)`
//! term is removed by a rotation of `(X, P)`, leaving a Kempf-form relation
//! with parameters `(a', b')`. Admissibility (`a > 0`, `b > 0`,
//! `|k| < sqrt(ab)`) guarantees `a' > 0`, `b' > 0` and nonzero minimal
//! uncertainties
//!
//! ```text
//! dX0 = sqrt(b / ((1+|k|)^2 - ab)),   dP0 = sqrt(a / ((1+|k|)^2 - ab)).
//! ```

use thiserror::Error;

use crate::real::{r, Real};

#[derive(Debug, Error, PartialEq)]
pub enum QuadAlgebraError {
    /// `1 + Im k <= 0`: the operator rescaling that makes `k` real is singular.
    #[error("degenerate rescale: 1 + Im(kappa) = {0} <= 0")]
    DegenerateRescale(f64),
    /// The Kempf admissibility conditions `a > 0, b > 0, |k| < sqrt(ab)` fail.
    #[error("not admissible: {0}")]
    NotAdmissible(&'static str),
    /// Parameter magnitudes must stay below 1 for the closed forms to apply.
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(&'static str),
}

/// Parameters of `[X, P] = i(1 + a X^2 + b P^2 + k XP + k* PX)`.
///
/// The relation only makes sense as a small deformation; construction
/// rejects magnitudes `>= 1` and [`Self::is_large`] flags anything above
/// `0.1` (the closed forms stay well-defined there, so it is a warning,
/// not an error).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticAlgebraParams<R: Real> {
    pub alpha: R,
    pub beta: R,
    pub kappa_re: R,
    pub kappa_im: R,
}

impl<R: Real> QuadraticAlgebraParams<R> {
    pub fn new(alpha: R, beta: R, kappa_re: R, kappa_im: R) -> Result<Self, QuadAlgebraError> {
        let one = R::one();
        if alpha.abs() >= one || beta.abs() >= one {
            return Err(QuadAlgebraError::ParameterOutOfRange("|alpha|, |beta| must be < 1"));
        }
        if (kappa_re * kappa_re + kappa_im * kappa_im).sqrt() >= one {
            return Err(QuadAlgebraError::ParameterOutOfRange("|kappa| must be < 1"));
        }
        Ok(Self { alpha, beta, kappa_re, kappa_im })
    }

    /// Real-`k` constructor.
    pub fn real(alpha: R, beta: R, kappa: R) -> Result<Self, QuadAlgebraError> {
        Self::new(alpha, beta, kappa, R::zero())
    }

    pub fn kappa_abs(&self) -> R {
        (self.kappa_re * self.kappa_re + self.kappa_im * self.kappa_im).sqrt()
    }

    /// True when any magnitude exceeds 0.1 — still valid, but outside the
    /// "very small parameter" regime the closed forms are derived for.
    pub fn is_large(&self) -> bool {
        let lim = r::<R>(0.1);
        self.alpha.abs() > lim || self.beta.abs() > lim || self.kappa_abs() > lim
    }
}

/// Output of [`normalize_complex_kappa`]: the rescaled, real-`k` parameter
/// set together with the operator scale factor `sqrt(1 + Im k)` that maps
/// uncertainties of the rescaled operators back to the original ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedParams<R: Real> {
    pub params: QuadraticAlgebraParams<R>,
    pub operator_scale: R,
}

/// Rescale `X, P -> X sqrt(1+k2), P sqrt(1+k2)` so the deformation becomes
/// real: `a -> a/(1+k2)`, `b -> b/(1+k2)`, `k -> k1/(1+k2)`.
pub fn normalize_complex_kappa<R: Real>(
    p: QuadraticAlgebraParams<R>,
) -> Result<NormalizedParams<R>, QuadAlgebraError> {
    let denom = R::one() + p.kappa_im;
    if denom <= R::zero() {
        return Err(QuadAlgebraError::DegenerateRescale(denom.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(NormalizedParams {
        params: QuadraticAlgebraParams {
            alpha: p.alpha / denom,
            beta: p.beta / denom,
            kappa_re: p.kappa_re / denom,
            kappa_im: R::zero(),
        },
        operator_scale: denom.sqrt(),
    })
}

/// Result of rotating `(X, P)` by the angle that kills the `XP + PX` term.
///
/// Invariants (up to rounding): `kappa_p = 0`, `alpha_p + beta_p = a + b`,
/// `alpha_p * beta_p = a b - k^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationResult<R: Real> {
    /// Rotation angle, in `(-pi/4, pi/4]`; `pi/4` exactly when `a = b`.
    pub phi: R,
    pub alpha_p: R,
    pub beta_p: R,
    /// Residual cross coefficient; zero by construction, reported as a check.
    pub kappa_p: R,
    /// `sqrt((a-b)^2 + 4k^2)`.
    pub delta: R,
    /// Sign of `a - b`; fixed to `+1` when `a = b` to keep the branch total.
    pub sigma: i8,
}

/// Rotate the real-`k` relation to canonical form, `tan 2phi = -2k/(a-b)`.
pub fn rotate_to_canonical<R: Real>(alpha: R, beta: R, kappa: R) -> RotationResult<R> {
    let two = r::<R>(2.0);
    let half = r::<R>(0.5);
    let diff = alpha - beta;
    let delta = (diff * diff + r::<R>(4.0) * kappa * kappa).sqrt();

    if diff == R::zero() {
        // cos 2phi = 0; phi = pi/4 gives a' = a - k, b' = b + k.
        return RotationResult {
            phi: r::<R>(std::f64::consts::FRAC_PI_4),
            alpha_p: alpha - kappa,
            beta_p: beta + kappa,
            kappa_p: R::zero(),
            delta,
            sigma: 1,
        };
    }

    let sigma = if diff > R::zero() { 1i8 } else { -1i8 };
    let sig = if sigma > 0 { R::one() } else { -R::one() };
    let cos2 = diff.abs() / delta;
    let sin2 = -two * sig * kappa / delta;
    let phi = half * sin2.atan2(cos2);
    let sum = half * (alpha + beta);
    let alpha_p = sum + half * diff * cos2 - kappa * sin2;
    let beta_p = sum - half * diff * cos2 + kappa * sin2;
    let kappa_p = half * diff * sin2 + kappa * cos2;
    RotationResult { phi, alpha_p, beta_p, kappa_p, delta, sigma }
}

/// Admissibility verdict for `a > 0, b > 0, |k| < sqrt(ab)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Admissibility<R: Real> {
    pub admissible: bool,
    /// First violated condition, if any.
    pub violated: Option<&'static str>,
    pub sqrt_alpha_beta: R,
}

pub fn kempf_admissible<R: Real>(alpha: R, beta: R, kappa: R) -> Admissibility<R> {
    let sqrt_ab = if alpha > R::zero() && beta > R::zero() {
        (alpha * beta).sqrt()
    } else {
        R::zero()
    };
    let violated = if alpha <= R::zero() {
        Some("alpha > 0")
    } else if beta <= R::zero() {
        Some("beta > 0")
    } else if kappa.abs() >= sqrt_ab {
        Some("kappa bound")
    } else {
        None
    };
    Admissibility { admissible: violated.is_none(), violated, sqrt_alpha_beta: sqrt_ab }
}

/// First and second moments entering the uncertainty relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectationContext<R: Real> {
    pub mean_x: R,
    pub mean_p: R,
    /// `gamma = a <X>^2 + b <P>^2 + 2k <X><P>`; nonnegative for admissible
    /// parameters.
    pub gamma_exp: R,
}

impl<R: Real> ExpectationContext<R> {
    pub fn new(mean_x: R, mean_p: R, alpha: R, beta: R, kappa: R) -> Self {
        let gamma_exp = alpha * mean_x * mean_x
            + beta * mean_p * mean_p
            + r::<R>(2.0) * kappa * mean_x * mean_p;
        Self { mean_x, mean_p, gamma_exp }
    }

    /// Centered state (`<X> = <P> = 0`, `gamma = 0`).
    pub fn centered() -> Self {
        Self { mean_x: R::zero(), mean_p: R::zero(), gamma_exp: R::zero() }
    }
}

/// Minimal uncertainties: `dx_min`/`dp_min` at the given expectations and the
/// absolutely smallest values `dx0`/`dp0` (the `gamma = 0` case).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimalUncertainties<R: Real> {
    pub dx_min: R,
    pub dp_min: R,
    pub dx0: R,
    pub dp0: R,
}

fn uncertainties_from_denominator<R: Real>(
    alpha: R,
    beta: R,
    denom: R,
    gamma: R,
) -> MinimalUncertainties<R> {
    let one_plus_gamma = R::one() + gamma;
    MinimalUncertainties {
        dx_min: (beta * one_plus_gamma / denom).sqrt(),
        dp_min: (alpha * one_plus_gamma / denom).sqrt(),
        dx0: (beta / denom).sqrt(),
        dp0: (alpha / denom).sqrt(),
    }
}

/// Minimal uncertainties of the real-`k` relation,
/// `dX_min = sqrt(b(1+gamma) / ((1+|k|)^2 - ab))` and its `P` analogue.
pub fn minimal_uncertainties<R: Real>(
    alpha: R,
    beta: R,
    kappa: R,
    ctx: &ExpectationContext<R>,
) -> Result<MinimalUncertainties<R>, QuadAlgebraError> {
    let adm = kempf_admissible(alpha, beta, kappa);
    if !adm.admissible {
        return Err(QuadAlgebraError::NotAdmissible(adm.violated.unwrap()));
    }
    let opk = R::one() + kappa.abs();
    let denom = opk * opk - alpha * beta;
    Ok(uncertainties_from_denominator(alpha, beta, denom, ctx.gamma_exp))
}

/// Complex-`k` form: the denominator becomes `(1 + k2 + |k1|)^2 - ab`,
/// provided `|k1| < sqrt(ab)`. Reduces bit-for-bit to the real path when
/// `k2 = 0`.
pub fn minimal_uncertainties_complex<R: Real>(
    p: &QuadraticAlgebraParams<R>,
    ctx: &ExpectationContext<R>,
) -> Result<MinimalUncertainties<R>, QuadAlgebraError> {
    let adm = kempf_admissible(p.alpha, p.beta, p.kappa_re);
    if !adm.admissible {
        return Err(QuadAlgebraError::NotAdmissible(adm.violated.unwrap()));
    }
    if R::one() + p.kappa_im <= R::zero() {
        return Err(QuadAlgebraError::DegenerateRescale(
            (R::one() + p.kappa_im).to_f64().unwrap_or(f64::NAN),
        ));
    }
    let opk = R::one() + p.kappa_im + p.kappa_re.abs();
    let denom = opk * opk - p.alpha * p.beta;
    Ok(uncertainties_from_denominator(p.alpha, p.beta, denom, ctx.gamma_exp))
}

/// Boundary of the allowed `(dX, dP)` region at fixed `dP`: the equality case
/// of the uncertainty relation,
/// `a dX^2 - 2(1+|k|) dP dX + (1 + gamma + b dP^2) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBound<R: Real> {
    /// Smaller positive root — the bound curve. `None` below `dP_min`.
    pub dx_bound: Option<R>,
    /// Larger root of the same quadratic.
    pub dx_upper: Option<R>,
    /// Vertex of the quadratic, `(1+|k|) dP / a`.
    pub vertex: R,
    pub discriminant: R,
    /// True when `dP < dP_min`: no real root, every `dX` violates the
    /// relation; the vertex is reported instead.
    pub below_minimum: bool,
}

/// Solve the equality case of the uncertainty relation for `dX` at given `dP`.
///
/// Uses the cancellation-safe root form `x- = 2c / (-B + sqrt(B^2 - 4ac))`,
/// which degrades gracefully into the Kempf `a -> 0` limit
/// `(1 + gamma + b dP^2) / (2(1+|k|) dP)`.
pub fn uncertainty_lower_bound<R: Real>(
    alpha: R,
    beta: R,
    kappa: R,
    ctx: &ExpectationContext<R>,
    dp: R,
) -> Result<LowerBound<R>, QuadAlgebraError> {
    let adm = kempf_admissible(alpha, beta, kappa);
    if !adm.admissible {
        return Err(QuadAlgebraError::NotAdmissible(adm.violated.unwrap()));
    }
    if dp <= R::zero() {
        return Err(QuadAlgebraError::ParameterOutOfRange("dP must be > 0"));
    }
    let two = r::<R>(2.0);
    let opk = R::one() + kappa.abs();
    let b_coef = -two * opk * dp;
    let c_coef = R::one() + ctx.gamma_exp + beta * dp * dp;
    let disc = b_coef * b_coef - r::<R>(4.0) * alpha * c_coef;
    let vertex = opk * dp / alpha;
    if disc < R::zero() {
        return Ok(LowerBound {
            dx_bound: None,
            dx_upper: None,
            vertex,
            discriminant: disc,
            below_minimum: true,
        });
    }
    let sq = disc.sqrt();
    let smaller = two * c_coef / (-b_coef + sq);
    let larger = (-b_coef + sq) / (two * alpha);
    Ok(LowerBound {
        dx_bound: Some(smaller),
        dx_upper: Some(larger),
        vertex,
        discriminant: disc,
        below_minimum: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn normalize_identity_when_kappa_real() {
        let p = QuadraticAlgebraParams::new(0.02, 0.01, 0.005, 0.0).unwrap();
        let n = normalize_complex_kappa(p).unwrap();
        assert_eq!(n.params, p);
        assert_eq!(n.operator_scale, 1.0);
    }

    #[test]
    fn normalize_divides_by_one_plus_im() {
        // (0.02, 0.01, 0 + 0.1i) -> (0.02, 0.01, 0)/1.1; oracle: exact division.
        let p = QuadraticAlgebraParams::new(0.02, 0.01, 0.0, 0.1).unwrap();
        let n = normalize_complex_kappa(p).unwrap();
        assert_relative_eq!(n.params.alpha, 0.018181818181818184, max_relative = 1e-15);
        assert_relative_eq!(n.params.beta, 0.009090909090909092, max_relative = 1e-15);
        assert_eq!(n.params.kappa_re, 0.0);
        assert_relative_eq!(n.operator_scale, 1.1f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn normalize_degenerate() {
        let p = QuadraticAlgebraParams::new(0.02, 0.01, 0.0, -1.0).unwrap();
        assert!(matches!(
            normalize_complex_kappa(p),
            Err(QuadAlgebraError::DegenerateRescale(_))
        ));
    }

    #[test]
    fn rotation_example_distinct_alpha_beta() {
        // (0.02, 0.01, 0.005): phi = -pi/8, a' = 0.022071067811865475,
        // b' = 0.007928932188134525 (mpmath, 40 digits).
        let rot = rotate_to_canonical(0.02, 0.01, 0.005);
        assert_relative_eq!(rot.phi, -std::f64::consts::FRAC_PI_8, max_relative = 1e-14);
        assert_relative_eq!(rot.alpha_p, 0.022071067811865475, max_relative = 1e-13);
        assert_relative_eq!(rot.beta_p, 0.007928932188134525, max_relative = 1e-13);
        assert!(rot.kappa_p.abs() < 1e-14);
        // determinant invariance: a'b' = ab - k^2 = 1.75e-4
        assert_relative_eq!(rot.alpha_p * rot.beta_p, 1.75e-4, max_relative = 1e-12);
    }

    #[test]
    fn rotation_equal_alpha_beta() {
        let rot = rotate_to_canonical(0.01, 0.01, 0.002);
        assert_eq!(rot.phi, std::f64::consts::FRAC_PI_4);
        assert_eq!(rot.alpha_p, 0.008);
        assert_eq!(rot.beta_p, 0.012);
        assert_eq!(rot.kappa_p, 0.0);
        assert_eq!(rot.sigma, 1);
    }

    #[test]
    fn rotation_identity_at_zero_kappa() {
        let rot = rotate_to_canonical(0.02, 0.01, 0.0);
        assert_eq!(rot.phi, 0.0);
        assert_eq!(rot.alpha_p, 0.02);
        assert_eq!(rot.beta_p, 0.01);
        assert_eq!(rot.kappa_p, 0.0);
    }

    #[test]
    fn admissibility_cases() {
        assert!(kempf_admissible(0.02, 0.01, 0.005).admissible);
        let k_bound = kempf_admissible(0.02, 0.01, 0.02);
        assert!(!k_bound.admissible);
        assert_eq!(k_bound.violated, Some("kappa bound"));
        let neg = kempf_admissible(-0.01, 0.01, 0.0);
        assert!(!neg.admissible);
        assert_eq!(neg.violated, Some("alpha > 0"));
    }

    #[test]
    fn kempf_limit_dx0() {
        // k = 0: dx0 = sqrt(b/(1 - ab)); at a = b = 0.01 this is 0.10000500037503125.
        let u = minimal_uncertainties(0.01, 0.01, 0.0, &ExpectationContext::centered()).unwrap();
        assert_relative_eq!(u.dx0, 0.10000500037503125, max_relative = 1e-14);
        assert_eq!(u.dx0, u.dx_min);
    }

    #[test]
    fn dx0_with_kappa() {
        // (0.01, 0.01, 0.005), gamma = 0: dx0 = 0.09950741367177978 (mpmath).
        let u = minimal_uncertainties(0.01, 0.01, 0.005, &ExpectationContext::centered()).unwrap();
        assert_relative_eq!(u.dx0, 0.09950741367177978, max_relative = 1e-13);
        // identity: dx0^2 ((1+|k|)^2 - ab) = b
        let denom = 1.005f64 * 1.005 - 1e-4;
        assert_relative_eq!(u.dx0 * u.dx0 * denom, 0.01, epsilon = 1e-14);
        assert_relative_eq!(u.dp0 * u.dp0 * denom, 0.01, epsilon = 1e-14);
    }

    #[test]
    fn complex_path_matches_real_path_bit_for_bit() {
        let p = QuadraticAlgebraParams::new(0.013, 0.007, 0.0, 0.0).unwrap();
        let ctx = ExpectationContext::new(0.3, -0.2, p.alpha, p.beta, p.kappa_re);
        let a = minimal_uncertainties(p.alpha, p.beta, p.kappa_re, &ctx).unwrap();
        let b = minimal_uncertainties_complex(&p, &ctx).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn not_admissible_error() {
        let ctx = ExpectationContext::centered();
        assert_eq!(
            minimal_uncertainties(0.01, 0.01, 0.05, &ctx),
            Err(QuadAlgebraError::NotAdmissible("kappa bound"))
        );
    }

    #[test]
    fn lower_bound_quadratic_example() {
        // (0.01, 0.01, 0.005), gamma = 0, dP = 1: 0.01 x^2 - 2.01 x + 1.01 = 0,
        // smaller root 0.5037500703151369 (mpmath quadratic oracle).
        let lb =
            uncertainty_lower_bound(0.01, 0.01, 0.005, &ExpectationContext::centered(), 1.0)
                .unwrap();
        assert_relative_eq!(lb.dx_bound.unwrap(), 0.5037500703151369, max_relative = 1e-12);
        assert!(!lb.below_minimum);
    }

    #[test]
    fn lower_bound_kempf_small_alpha_limit() {
        // a -> 0+, k = 0: bound -> (1 + gamma + b dP^2) / (2 dP).
        let ctx = ExpectationContext::centered();
        let lb = uncertainty_lower_bound(1e-14, 0.01, 0.0, &ctx, 2.0).unwrap();
        assert_relative_eq!(lb.dx_bound.unwrap(), (1.0 + 0.01 * 4.0) / 4.0, max_relative = 1e-9);
    }

    #[test]
    fn lower_bound_below_dp_min_reports_vertex() {
        // dP below dP_min: no real root; vertex flagged.
        let ctx = ExpectationContext::centered();
        let u = minimal_uncertainties(0.01, 0.01, 0.005, &ctx).unwrap();
        let lb = uncertainty_lower_bound(0.01, 0.01, 0.005, &ctx, 0.5 * u.dp0).unwrap();
        assert!(lb.below_minimum);
        assert!(lb.dx_bound.is_none());
        assert!(lb.vertex > 0.0);
    }

    #[test]
    fn bound_minimum_over_dp_equals_dx_min() {
        // 1-D golden-section minimization oracle over dP.
        let ctx = ExpectationContext::centered();
        let (alpha, beta, kappa) = (0.01, 0.01, 0.005);
        let f = |dp: f64| {
            uncertainty_lower_bound(alpha, beta, kappa, &ctx, dp)
                .unwrap()
                .dx_bound
                .unwrap_or(f64::INFINITY)
        };
        let u = minimal_uncertainties(alpha, beta, kappa, &ctx).unwrap();
        let (mut lo, mut hi) = (u.dp0 * 1.0000001, 100.0);
        let gr = (5.0f64.sqrt() - 1.0) / 2.0;
        for _ in 0..300 {
            let x1 = hi - gr * (hi - lo);
            let x2 = lo + gr * (hi - lo);
            if f(x1) < f(x2) {
                hi = x2;
            } else {
                lo = x1;
            }
        }
        let min_bound = f(0.5 * (lo + hi));
        assert_relative_eq!(min_bound, u.dx_min, epsilon = 1e-10);
    }

    #[test]
    fn f32_smoke() {
        let rot = rotate_to_canonical(0.02f32, 0.01, 0.005);
        assert!((rot.alpha_p + rot.beta_p - 0.03).abs() < 1e-6);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn admissible_triple() -> impl Strategy<Value = (f64, f64, f64)> {
            (1e-4f64..0.09, 1e-4f64..0.09, -0.99f64..0.99).prop_map(|(a, b, t)| {
                let k = t * (a * b).sqrt();
                (a, b, k)
            })
        }

        proptest! {
            #[test]
            fn rotation_invariants((a, b, k) in admissible_triple()) {
                let rot = rotate_to_canonical(a, b, k);
                prop_assert!(rot.kappa_p.abs() < 1e-14);
                prop_assert!((rot.alpha_p + rot.beta_p - (a + b)).abs() < 1e-12);
                prop_assert!((rot.alpha_p * rot.beta_p - (a * b - k * k)).abs() < 1e-12);
                prop_assert!(rot.alpha_p > 0.0 && rot.beta_p > 0.0);
                prop_assert!(rot.phi > -std::f64::consts::FRAC_PI_4
                    && rot.phi <= std::f64::consts::FRAC_PI_4);
            }

            #[test]
            fn gamma_nonnegative_for_admissible((a, b, k) in admissible_triple(),
                                                x in -3.0f64..3.0, p in -3.0f64..3.0) {
                let ctx = ExpectationContext::new(x, p, a, b, k);
                prop_assert!(ctx.gamma_exp >= -1e-15);
            }

            #[test]
            fn dx0_below_dx_min((a, b, k) in admissible_triple(),
                                x in -2.0f64..2.0, p in -2.0f64..2.0) {
                let ctx = ExpectationContext::new(x, p, a, b, k);
                let u = minimal_uncertainties(a, b, k, &ctx).unwrap();
                prop_assert!(u.dx0 <= u.dx_min * (1.0 + 1e-15));
                prop_assert!(u.dp0 <= u.dp_min * (1.0 + 1e-15));
            }
        }
    }
}
