//! Symbolic archimedean L-factor arithmetic and the intertwining integral.
//!
//! Local abelian factors `L(s, z^α z̄^β) = 2(2π)^{−(s+e)} Γ(s+e)` with
//! `e = (α+β)/2 + |α−β|/2` are evaluated exactly as [`PiRational`] values.
//! Successive-value ratios collapse to `2π/(m+e)`; the Rankin–Selberg ratio
//! at a critical point is the product of those over the `ℓ_{i,j}` grid and
//! carries π-exponent `r·n·n'`. The standard intertwining operator enters
//! twice: numerically, through the GL(2) integral it reduces to, and
//! symbolically, through the minimal-word factorization schedule whose
//! per-step ratios multiply back to the full ratio.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::Serialize;

use crate::critical::{self, WidthData};
use crate::field::FieldModel;
use crate::rational::Half;
use crate::weight::Weight;
use crate::{Error, Result};

/// An exact value `q · 2^{t/2} · π^{p/2}` with `q` a rational carrying no
/// powers of two, or a pole marker. Γ at positive half-integer arguments
/// introduces `√2` through the `(2π)^{−(s+e)}` prefactor, so the exponent of
/// 2 is tracked in half-steps; every value reachable from ratio and product
/// operations has an integral 2-exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiRational {
    Finite {
        /// Odd-reduced rational part (numerator and denominator odd).
        q: BigRational,
        /// Exponent of √2.
        two_half: i64,
        /// Exponent of √π; `pi_half/2` is the π-exponent.
        pi_half: i64,
    },
    Pole,
}

impl PiRational {
    pub fn one() -> PiRational {
        PiRational::Finite {
            q: BigRational::one(),
            two_half: 0,
            pi_half: 0,
        }
    }

    /// Canonical finite value: all powers of two are moved from `q` into the
    /// √2-exponent.
    pub fn finite(q: BigRational, pi_half: i64) -> PiRational {
        PiRational::finite_with_two(q, 0, pi_half)
    }

    pub fn finite_with_two(q: BigRational, two_half: i64, pi_half: i64) -> PiRational {
        assert!(!q.is_zero(), "PiRational cannot be zero");
        let two = BigInt::from(2);
        let mut numer = q.numer().clone();
        let mut denom = q.denom().clone();
        let mut t = two_half;
        while (&numer % &two).is_zero() {
            numer /= &two;
            t += 2;
        }
        while (&denom % &two).is_zero() {
            denom /= &two;
            t -= 2;
        }
        PiRational::Finite {
            q: BigRational::new(numer, denom),
            two_half: t,
            pi_half,
        }
    }

    pub fn from_integer(n: i64) -> PiRational {
        PiRational::finite(BigRational::from_integer(BigInt::from(n)), 0)
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, PiRational::Pole)
    }

    /// The π-exponent as a half-integer, when finite.
    pub fn pi_exponent(&self) -> Option<Half> {
        match self {
            PiRational::Finite { pi_half, .. } => Some(Half::from_twice(*pi_half)),
            PiRational::Pole => None,
        }
    }

    pub fn mul(&self, other: &PiRational) -> PiRational {
        match (self, other) {
            (
                PiRational::Finite { q, two_half, pi_half },
                PiRational::Finite {
                    q: q2,
                    two_half: t2,
                    pi_half: p2,
                },
            ) => PiRational::finite_with_two(q * q2, two_half + t2, pi_half + p2),
            _ => PiRational::Pole,
        }
    }

    /// Division; a pole on either side has no meaningful quotient.
    pub fn div(&self, other: &PiRational) -> Result<PiRational> {
        match (self, other) {
            (
                PiRational::Finite { q, two_half, pi_half },
                PiRational::Finite {
                    q: q2,
                    two_half: t2,
                    pi_half: p2,
                },
            ) => Ok(PiRational::finite_with_two(
                q / q2,
                two_half - t2,
                pi_half - p2,
            )),
            _ => Err(Error::PoleRatio("division involving a pole".into())),
        }
    }

    /// Numeric value, for cross-checks against quadrature.
    pub fn to_f64(&self) -> Option<f64> {
        match self {
            PiRational::Finite { q, two_half, pi_half } => {
                let qf = bigrational_to_f64(q);
                Some(
                    qf * 2f64.powf(*two_half as f64 / 2.0)
                        * std::f64::consts::PI.powf(*pi_half as f64 / 2.0),
                )
            }
            PiRational::Pole => None,
        }
    }

    /// Serialized form `{numerator, denominator, two_exponent,
    /// pi_exponent_times_2}`; requires the 2-exponent to be integral, which
    /// holds for every ratio and product this crate emits.
    pub fn to_schema(&self) -> Result<PiRationalSchema> {
        match self {
            PiRational::Finite { q, two_half, pi_half } => {
                if two_half % 2 != 0 {
                    return Err(Error::GammaArgument(
                        "value carries √2; not representable in the integer schema".into(),
                    ));
                }
                Ok(PiRationalSchema {
                    numerator: q.numer().to_string(),
                    denominator: q.denom().to_string(),
                    two_exponent: two_half / 2,
                    pi_exponent_times_2: *pi_half,
                })
            }
            PiRational::Pole => Err(Error::GammaArgument("pole has no finite schema".into())),
        }
    }
}

fn bigrational_to_f64(q: &BigRational) -> f64 {
    use num::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiRational::Pole => write!(f, "pole"),
            PiRational::Finite { q, two_half, pi_half } => {
                write!(f, "{q}")?;
                if *two_half != 0 {
                    if two_half % 2 == 0 {
                        write!(f, " * 2^{}", two_half / 2)?;
                    } else {
                        write!(f, " * 2^({two_half}/2)")?;
                    }
                }
                if *pi_half != 0 {
                    if pi_half % 2 == 0 {
                        write!(f, " * pi^{}", pi_half / 2)?;
                    } else {
                        write!(f, " * pi^({pi_half}/2)")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// JSON shape of a finite [`PiRational`]; numerator and denominator are odd.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PiRationalSchema {
    pub numerator: String,
    pub denominator: String,
    pub two_exponent: i64,
    pub pi_exponent_times_2: i64,
}

/// The exponent data of one abelian local factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbelianFactor {
    pub alpha: Half,
    pub beta: Half,
}

impl AbelianFactor {
    pub fn new(alpha: Half, beta: Half) -> AbelianFactor {
        AbelianFactor { alpha, beta }
    }

    /// `e = (α+β)/2 + |α−β|/2 = max(α, β)`.
    pub fn e(&self) -> Half {
        let sum = self.alpha + self.beta;
        let diff = (self.alpha - self.beta).abs();
        Half::from_twice((sum.twice() + diff.twice()) / 2)
    }
}

/// Γ at a positive integer or half-integer argument, as `q · π^{p/2}`:
/// `Γ(k) = (k−1)!`, `Γ(j + ½) = (2j)!/(4^j j!) · √π`.
fn gamma_exact(arg: Half) -> Result<(BigRational, i64)> {
    if arg <= Half::ZERO {
        return Err(Error::GammaArgument(format!("Γ({arg}) is not positive")));
    }
    if let Some(k) = arg.as_integer() {
        let mut q = BigRational::one();
        for i in 1..k {
            q *= BigRational::from_integer(BigInt::from(i));
        }
        Ok((q, 0))
    } else {
        let j = (arg.twice() - 1) / 2; // arg = j + 1/2
        let mut numer = BigRational::one();
        for i in 1..=2 * j {
            numer *= BigRational::from_integer(BigInt::from(i));
        }
        let mut denom = BigRational::one();
        for i in 1..=j {
            denom *= BigRational::from_integer(BigInt::from(i));
        }
        let four_j = BigRational::from_integer(BigInt::from(4).pow(j as u32));
        Ok((numer / (denom * four_j), 1))
    }
}

/// The local value `L(s, z^α z̄^β) = 2(2π)^{−(s+e)} Γ(s+e)`: finite for
/// `s+e > 0`, a pole at non-positive integers, and an error for negative
/// half-integer arguments (reflection is out of scope).
pub fn local_value(f: &AbelianFactor, s: Half) -> Result<PiRational> {
    let arg = s + f.e();
    if arg > Half::ZERO {
        let (gamma_q, gamma_pi_half) = gamma_exact(arg)?;
        // 2 · 2^{−arg} · π^{−arg} · Γ(arg)
        Ok(PiRational::finite_with_two(
            gamma_q * BigRational::from_integer(BigInt::from(2)),
            -arg.twice(),
            -arg.twice() + gamma_pi_half,
        ))
    } else if arg.is_integer() {
        Ok(PiRational::Pole)
    } else {
        Err(Error::GammaArgument(format!(
            "Γ({arg}): negative half-integer arguments are unsupported"
        )))
    }
}

/// `L(m, f) / L(m+1, f) = 2π/(m+e)`, computed by dividing local values.
pub fn successive_ratio(f: &AbelianFactor, m: Half) -> Result<PiRational> {
    if m + f.e() < Half::ONE {
        return Err(Error::PoleRatio(format!(
            "successive ratio at m = {m} has m + e = {} < 1",
            m + f.e()
        )));
    }
    let num = local_value(f, m)?;
    let den = local_value(f, m + Half::ONE)?;
    num.div(&den)
}

/// Closed form of [`successive_ratio`], for cross-checks: `2π/(m+e)`.
pub fn successive_ratio_closed(f: &AbelianFactor, m: Half) -> Result<PiRational> {
    let me = m + f.e();
    if me < Half::ONE {
        return Err(Error::PoleRatio(format!("m + e = {me} < 1")));
    }
    // 2π / (m+e): with m+e = t/2 this is 4π/t.
    Ok(PiRational::finite_with_two(
        BigRational::new(BigInt::from(4), BigInt::from(me.twice())),
        0,
        2,
    ))
}

/// Per-grid-entry abelian factors of `σ × σ'ᵛ` at one place:
/// exponents `(α_i − α'_j, β_i − β'_j)`.
pub fn pair_factors(
    alpha: &[Half],
    beta: &[Half],
    alpha_p: &[Half],
    beta_p: &[Half],
) -> Vec<((usize, usize), AbelianFactor)> {
    let mut out = Vec::new();
    for (i, (&a, &b)) in alpha.iter().zip(beta).enumerate() {
        for (j, (&ap, &bp)) in alpha_p.iter().zip(beta_p).enumerate() {
            out.push(((i + 1, j + 1), AbelianFactor::new(a - ap, b - bp)));
        }
    }
    out
}

/// The ratio `L_∞(m, σ × σ'ᵛ) / L_∞(m+1, σ × σ'ᵛ)` as an exact
/// `rational × (2π)^{r·n·n'}`, defined when `m` and `m+1` are both critical.
pub fn rankin_selberg_ratio(
    mu: &Weight,
    mu_prime: &Weight,
    model: &FieldModel,
    m: Half,
) -> Result<PiRational> {
    let data = critical::widths(mu, mu_prime, model)?;
    let total = mu.rank() + mu_prime.rank();
    check_successive_critical(&data, total, m)?;
    let params = critical::cuspidal_params(mu, model)?;
    let params_p = critical::cuspidal_params(mu_prime, model)?;
    let mut out = PiRational::one();
    for ((alpha, beta), (alpha_p, beta_p)) in params.per_place.iter().zip(&params_p.per_place) {
        for (_, factor) in pair_factors(alpha, beta, alpha_p, beta_p) {
            out = out.mul(&successive_ratio(&factor, m)?);
        }
    }
    Ok(out)
}

/// Errors with the violating `(place, i, j)` unless `m` and `m+1` are both
/// critical.
pub fn check_successive_critical(data: &WidthData, total: usize, m: Half) -> Result<()> {
    let set = critical::critical_set_from_widths(data);
    for point in [m, m + Half::ONE] {
        if !set.contains(point) || !critical::is_critical_pointwise(data, total, point) {
            let triple = critical::violating_triple(data, point)
                .map(|(v, i, j)| format!("(v={v}, i={i}, j={j})"))
                .unwrap_or_else(|| "lattice membership".into());
            return Err(Error::NotCritical(point.to_string(), triple));
        }
    }
    Ok(())
}

/// One adjacent-transposition step of the intertwining factorization: the
/// simple reflection applied and the `(χ_i, χ'_j)` pair it swaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScheduleStep {
    /// Index of the simple reflection `s_k`, 1-based.
    pub reflection: usize,
    /// 1-based index into the first character block.
    pub chi: usize,
    /// 1-based index into the second character block.
    pub chi_prime: usize,
}

/// The minimal-word factorization schedule
/// `(s_{n'} … s_1) ⋯ (s_{N−1} … s_n)`, rightmost group applied first, each
/// step tagged with the character pair it swaps. Length is `nn' = l(w₀)`.
pub fn factorization_schedule(n: usize, n_prime: usize) -> Vec<ScheduleStep> {
    #[derive(Clone, Copy, PartialEq)]
    enum Slot {
        Chi(usize),
        ChiPrime(usize),
    }
    let mut arrangement: Vec<Slot> = (1..=n)
        .map(Slot::Chi)
        .chain((1..=n_prime).map(Slot::ChiPrime))
        .collect();
    let mut steps = Vec::with_capacity(n * n_prime);
    // group g (from the rightmost, g = 0) applies s_{n−g}, …, s_{n−g+n'−1}
    for g in 0..n {
        for offset in 0..n_prime {
            let k = n - g + offset; // 1-based reflection index
            let (left, right) = (arrangement[k - 1], arrangement[k]);
            let (chi, chi_prime) = match (left, right) {
                (Slot::Chi(i), Slot::ChiPrime(j)) => (i, j),
                _ => unreachable!("schedule always swaps a (χ, χ') pair"),
            };
            steps.push(ScheduleStep {
                reflection: k,
                chi,
                chi_prime,
            });
            arrangement.swap(k - 1, k);
        }
    }
    debug_assert_eq!(steps.len(), n * n_prime);
    debug_assert!(
        arrangement[..n_prime]
            .iter()
            .enumerate()
            .all(|(j, s)| *s == Slot::ChiPrime(j + 1)),
        "schedule must end in the swapped arrangement"
    );
    steps
}

/// Composes per-step successive ratios along the factorization schedule.
/// Symbolically equal to [`rankin_selberg_ratio`].
pub fn schedule_ratio(
    mu: &Weight,
    mu_prime: &Weight,
    model: &FieldModel,
    m: Half,
) -> Result<PiRational> {
    let data = critical::widths(mu, mu_prime, model)?;
    let total = mu.rank() + mu_prime.rank();
    check_successive_critical(&data, total, m)?;
    let params = critical::cuspidal_params(mu, model)?;
    let params_p = critical::cuspidal_params(mu_prime, model)?;
    let steps = factorization_schedule(mu.rank(), mu_prime.rank());
    let mut out = PiRational::one();
    for ((alpha, beta), (alpha_p, beta_p)) in params.per_place.iter().zip(&params_p.per_place) {
        for step in &steps {
            let (i, j) = (step.chi - 1, step.chi_prime - 1);
            let factor = AbelianFactor::new(alpha[i] - alpha_p[j], beta[i] - beta_p[j]);
            out = out.mul(&successive_ratio(&factor, m)?);
        }
    }
    Ok(out)
}

/// Evaluates the highest-weight vector of the minimal K-type on the lower
/// unipotent matrix with entry `−r·e^{iθ}`, walking the explicit Iwasawa
/// decomposition. The result is `Δ_r^{−(2m+1)}` with `Δ_r = √(1+r²)`,
/// independent of θ.
pub fn gl2_minimal_ktype_value(m: u32, r: f64, theta: f64) -> f64 {
    let delta = (1.0 + r * r).sqrt();
    // Iwasawa: [[1,0],[−r e^{iθ},1]] = [[Δ⁻¹, *],[0, Δ]] · k with k ∈ SU(2),
    // and Cartan on k: k = t(φ₁)·𝔯(α)·t(φ₂) with cos α = Δ⁻¹,
    // sin α = −r/Δ, φ₁ = −θ/2, φ₂ = θ/2.
    let phi1 = -theta / 2.0;
    let phi2 = theta / 2.0;
    let alpha = (-r / delta).atan2(1.0 / delta);
    // weight-2m torus character on both torus factors; the phases cancel
    let phase = (2.0 * f64::from(m) * (phi1 + phi2)).cos();
    // character exponents cancel on the real diagonal (Δ⁻¹, Δ) by purity;
    // the half-density contributes Δ⁻¹
    let half_density = 1.0 / delta;
    phase * half_density * gl2_rotation_value(m, alpha)
}

/// The rotation path `f_μ(𝔯(θ)) = cos^{2m}(θ)`.
pub fn gl2_rotation_value(m: u32, theta: f64) -> f64 {
    theta.cos().powi(2 * m as i32)
}

/// Improper-integral tail bound:
/// `∫_{r_max}^∞ r(1+r²)^{−(2m+1)/2} dr = (1+r_max²)^{−(2m−1)/2}/(2m−1)`.
pub fn gl2_tail_bound(m: u32, r_max: f64) -> f64 {
    (1.0 + r_max * r_max).powf(-((2 * m - 1) as f64) / 2.0) / (2 * m - 1) as f64
}

/// Picks `r_max` so the truncated tail stays below `tol` relative to the
/// limit value `2π/(2m−1)`.
pub fn gl2_r_max_for_tolerance(m: u32, tol: f64) -> f64 {
    // tail·2π relative to 2π/(2m−1): (1+R²)^{−(2m−1)/2}·(2m−1) ≤ tol
    let target = tol / (2 * m - 1) as f64;
    (target.powf(-2.0 / (2 * m - 1) as f64) - 1.0).max(1.0).sqrt()
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        adaptive_simpson(f, a, m, fa, flm, fm, left, eps * 0.5, depth - 1)
            + adaptive_simpson(f, m, b, fm, frm, fb, right, eps * 0.5, depth - 1)
    }
}

fn integrate_radial(f: &dyn Fn(f64) -> f64, r_max: f64, eps: f64) -> f64 {
    // geometric panels keep the adaptive rule local on huge ranges
    let mut breaks = vec![0.0, 1.0_f64.min(r_max)];
    while *breaks.last().unwrap() < r_max {
        breaks.push((breaks.last().unwrap() * 8.0).min(r_max));
    }
    let panel_eps = eps / breaks.len() as f64;
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let m = 0.5 * (a + b);
        let (fa, fm, fb) = (f(a), f(m), f(b));
        let whole = simpson(a, b, fa, fm, fb);
        total += adaptive_simpson(f, a, b, fa, fm, fb, whole, panel_eps, 40);
    }
    total
}

/// Quadrature mode for the GL(2) intertwining integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gl2Quadrature {
    /// The integrand is θ-independent; θ contributes the factor 2π
    /// analytically and only the radial integral is quadrature.
    Fast,
    /// Midpoint rule in θ with the given panel count, exercising the full
    /// two-variable decomposition.
    Slow { theta_steps: usize },
}

/// Numerically integrates
/// `∫₀^{2π} ∫₀^{r_max} f_μ([[1,0],[−r e^{iθ},1]]) · r dr dθ`,
/// which converges to `2π/(2m−1)` as `r_max → ∞`.
pub fn gl2_intertwining_numeric(m: u32, r_max: f64, mode: Gl2Quadrature) -> f64 {
    assert!(m >= 1, "minimal K-type requires m ≥ 1");
    let eps = 1e-10 / (2 * m - 1) as f64;
    match mode {
        Gl2Quadrature::Fast => {
            let integrand = move |r: f64| r * gl2_minimal_ktype_value(m, r, 0.0);
            let radial = integrate_radial(&integrand, r_max, eps);
            2.0 * std::f64::consts::PI * radial
        }
        Gl2Quadrature::Slow { theta_steps } => {
            let dtheta = 2.0 * std::f64::consts::PI / theta_steps as f64;
            let mut total = 0.0;
            for k in 0..theta_steps {
                let theta = (k as f64 + 0.5) * dtheta;
                let integrand = move |r: f64| r * gl2_minimal_ktype_value(m, r, theta);
                total += integrate_radial(&integrand, r_max, eps) * dtheta;
            }
            total
        }
    }
}
