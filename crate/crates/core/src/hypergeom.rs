//! Generalized hypergeometric series and the closed-form summation
//! theorems of Gauss (second theorem) and Watson.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{cos_pi, digamma, sin_pi, Constants, GammaProduct};
use crate::series::{self, SeriesResult, SignPattern, SumMethod, TermGenerator};

/// Distance below which a parameter counts as a nonpositive integer.
pub const POLE_PROXIMITY: f64 = 1e-9;

/// `pFq(upper; lower; z)` for real parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct PfqSpec {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub z: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convergence {
    /// Polynomial of the given degree.
    Terminating { degree: usize },
    /// `|z| < 1`, or an entire series (`p ≤ q`).
    Geometric,
    /// `z = ±1` with `p = q + 1` and the parameter excess condition met.
    UnitCircle,
}

fn nonpositive_integer(x: f64) -> Option<usize> {
    let r = x.round();
    if r <= 0.0 && (x - r).abs() <= POLE_PROXIMITY {
        Some((-r) as usize)
    } else {
        None
    }
}

impl PfqSpec {
    pub fn new(upper: impl Into<Vec<f64>>, lower: impl Into<Vec<f64>>, z: f64) -> Self {
        Self {
            upper: upper.into(),
            lower: lower.into(),
            z,
        }
    }

    pub fn classify(&self) -> Result<Convergence> {
        let degree = self
            .upper
            .iter()
            .filter_map(|&a| nonpositive_integer(a))
            .min();
        for &b in &self.lower {
            if let Some(j) = nonpositive_integer(b) {
                match degree {
                    Some(n) if n < j => {}
                    _ => {
                        return Err(Error::NonConvergentSeries(format!(
                            "lower parameter {b} is a nonpositive integer"
                        )))
                    }
                }
            }
        }
        if let Some(degree) = degree {
            return Ok(Convergence::Terminating { degree });
        }
        let (p, q) = (self.upper.len(), self.lower.len());
        if p <= q || self.z == 0.0 {
            return Ok(Convergence::Geometric);
        }
        if p > q + 1 {
            return Err(Error::NonConvergentSeries(format!(
                "{p}F{q} diverges for z != 0"
            )));
        }
        let az = self.z.abs();
        if az < 1.0 {
            return Ok(Convergence::Geometric);
        }
        if az > 1.0 {
            return Err(Error::NonConvergentSeries(format!(
                "|z| = {az} outside the unit disk"
            )));
        }
        let excess: f64 = self.lower.iter().sum::<f64>() - self.upper.iter().sum::<f64>();
        let ok = if self.z > 0.0 {
            excess > 0.0
        } else {
            excess > -1.0
        };
        if ok {
            Ok(Convergence::UnitCircle)
        } else {
            Err(Error::NonConvergentSeries(format!(
                "parameter excess {excess} too small at z = {}",
                self.z
            )))
        }
    }

    /// `t_{k+1} / t_k`.
    fn ratio(&self, k: usize) -> f64 {
        let k = k as f64;
        let num: f64 = self.upper.iter().map(|a| a + k).product();
        let den: f64 = self.lower.iter().map(|b| b + k).product();
        num / den * self.z / (k + 1.0)
    }

    fn terms(&self, pattern: SignPattern) -> TermGenerator<'_> {
        let mut t = 1.0;
        TermGenerator::sequential(pattern, move |k| {
            if k > 0 {
                t *= self.ratio(k - 1);
            }
            t
        })
    }
}

/// Double-word arithmetic for terminating sums, whose terms can exceed the
/// result by twenty orders of magnitude.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn quick(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Dd {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        Dd {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, o.hi);
        Dd::quick(s.hi, s.lo + self.lo + o.lo)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p) + (self.hi * o.lo + self.lo * o.hi);
        Dd::quick(p, e)
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(Dd::from(-q1)));
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul(Dd::from(-q2)));
        let q3 = r.hi / o.hi;
        Dd::quick(q1, q2).add(Dd::from(q3))
    }
}

fn terminating_sum(spec: &PfqSpec, degree: usize) -> f64 {
    // ₂F₁(-n, b; c; z) = (c-b)_n/(c)_n ₂F₁(-n, b; b-c-n+1; 1-z) keeps the
    // terms small for z > 1/2
    if let ([a, b], [c], z) = (spec.upper.as_slice(), spec.lower.as_slice(), spec.z) {
        let (n, b) = if nonpositive_integer(*a) == Some(degree) {
            (*a, *b)
        } else {
            (*b, *a)
        };
        let c_new = b - c + n + 1.0;
        let c_new_ok = match nonpositive_integer(c_new) {
            Some(j) => degree < j,
            None => true,
        };
        if z > 0.5 && c_new_ok {
            let reflected = PfqSpec::new([n, b], [c_new], 1.0 - z);
            let mut pre = Dd::ONE;
            for j in 0..degree {
                let j = j as f64;
                pre = pre.mul(Dd::two_sum(c - b, j)).div(Dd::two_sum(*c, j));
            }
            return pre.mul(dd_series(&reflected, degree)).hi;
        }
    }
    dd_series(spec, degree).hi
}

fn dd_series(spec: &PfqSpec, degree: usize) -> Dd {
    let z = Dd::from(spec.z);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for k in 0..degree {
        let kf = k as f64;
        let num = spec
            .upper
            .iter()
            .fold(z, |acc, &a| acc.mul(Dd::two_sum(a, kf)));
        let den = spec
            .lower
            .iter()
            .fold(Dd::from(kf + 1.0), |acc, &b| acc.mul(Dd::two_sum(b, kf)));
        term = term.mul(num).div(den);
        sum = sum.add(term);
    }
    sum
}

/// Sum a generalized hypergeometric series.
///
/// Terminating series are summed exactly; `z = -1` on the unit circle goes
/// through alternating acceleration; everything else is summed directly.
pub fn pfq(spec: &PfqSpec, max_terms: usize, tol: f64) -> Result<SeriesResult> {
    match spec.classify()? {
        Convergence::Terminating { degree } => Ok(SeriesResult {
            value: terminating_sum(spec, degree),
            terms_used: degree + 1,
            method: SumMethod::Direct,
            tail_estimate: 0.0,
            converged: true,
        }),
        Convergence::UnitCircle if spec.z < 0.0 => {
            let lowest = spec
                .upper
                .iter()
                .chain(spec.lower.iter())
                .fold(0.0f64, |m, &p| m.min(p));
            let start = (-lowest).ceil() as usize + 1;
            let mut g = spec.terms(SignPattern::Alternating);
            series::sum_alternating_accel_from(&mut g, start, 8, tol)
        }
        _ => {
            let mut g = spec.terms(SignPattern::Oscillating);
            series::sum_direct(&mut g, tol, max_terms)
        }
    }
}

/// Power series of `₂F₁(a, b; c; z)`; meant for `|z| ≤ 1/2`.
pub fn gauss_2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if z.abs() > 0.75 {
        return Err(Error::Domain {
            function: "gauss_2f1_series",
            at: z,
            domain: "|z| <= 0.75",
        });
    }
    if nonpositive_integer(c).is_some() {
        return Err(Error::Pole {
            function: "gauss_2f1_series",
            at: c,
        });
    }
    Ok(power_2f1(a, b, c, z))
}

fn power_2f1(a: f64, b: f64, c: f64, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut scale = 1.0f64;
    let mut quiet = 0;
    let past = a.abs().max(b.abs()).max(c.abs());
    for k in 0..2000 {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        scale = scale.max(term.abs());
        if term == 0.0 {
            break;
        }
        if kf > past && term.abs() <= 1e-17 * scale.max(sum.abs()) {
            quiet += 1;
            if quiet == 2 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    sum
}

/// `₂F₁(-ν, ν + 1; 1; x) = P_ν(1 - 2x)` for non-integer `ν ≥ -1/2`,
/// `x ∈ (0, 1)` and `w = 1 - x` supplied separately.
///
/// For `x > 1/2` the logarithmic (`c = a + b`) connection series in `w` is
/// used, with `sin(πν) ψ(k - ν)` carried as one product so near-integer
/// degrees stay finite.
pub fn legendre_function(nu: f64, x: f64, w: f64) -> Result<f64> {
    if x <= 0.5 {
        return Ok(power_2f1(-nu, nu + 1.0, 1.0, x));
    }
    let s = sin_pi(nu);
    let log_w = w.ln();
    let mut a = 1.0;
    let mut psi_k1 = -Constants::EULER_GAMMA;
    let mut psi_b = digamma(nu + 1.0)?;
    // sin(πν) ψ(k - ν), started from the reflection of ψ(-ν)
    let mut sin_psi = s * psi_b + PI * cos_pi(nu);
    let mut sum = 0.0;
    let mut scale = 0.0f64;
    let mut quiet = 0;
    for k in 0..2000 {
        let kf = k as f64;
        let term = a * (s * (psi_b + log_w - 2.0 * psi_k1) + sin_psi) / PI;
        sum += term;
        scale = scale.max(term.abs());
        if kf > nu + 1.0 && term.abs() <= 1e-17 * scale.max(sum.abs()) {
            quiet += 1;
            if quiet == 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        sin_psi += s / (kf - nu);
        psi_k1 += 1.0 / (kf + 1.0);
        psi_b += 1.0 / (kf + nu + 1.0);
        a *= (kf - nu) * (kf + nu + 1.0) / ((kf + 1.0) * (kf + 1.0)) * w;
    }
    Ok(sum)
}

/// `₂F₁(-ν, ν + 1; 1; 1/2) = √π / (Γ((1 - ν)/2) Γ((ν + 2)/2))`.
///
/// Where a denominator Gamma has a pole (`ν` odd positive or even
/// negative) the value is the exact zero of the reciprocal.
pub fn gauss_second(nu: f64) -> f64 {
    let (p, q) = (0.5 * (1.0 - nu), 0.5 * (nu + 2.0));
    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
    GammaProduct::new()
        .times(Constants::SQRT_PI)
        .over_gamma(lo)
        .over_gamma(hi)
        .value()
        .expect("no Gamma in the numerator")
}

/// Watson's sum `₃F₂(a, b, c; (a+b+1)/2, 2c; 1)` in closed form.
pub fn watson_3f2(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(-a - b + 2.0 * c > -1.0) {
        return Err(Error::Precondition(format!(
            "Watson's sum needs 2c - a - b > -1 (a = {a}, b = {b}, c = {c})"
        )));
    }
    GammaProduct::new()
        .times(Constants::SQRT_PI)
        .gamma(c + 0.5)
        .gamma(0.5 * (a + b + 1.0))
        .gamma(0.5 * (1.0 - a - b) + c)
        .over_gamma(0.5 * (a + 1.0))
        .over_gamma(0.5 * (b + 1.0))
        .over_gamma(0.5 * (1.0 - a) + c)
        .over_gamma(0.5 * (1.0 - b) + c)
        .value()
}

/// `∫_0^1 x^{μ-1} (1-x)^{ν-1} P_n(2x - 1) dx` through the terminating
/// `(-1)^n Γ(μ)Γ(ν)/Γ(μ+ν) ₃F₂(-n, n+1, μ; 1, μ+ν; 1)`.
pub fn jacobi_moment_3f2(n: usize, mu: f64, nu: f64) -> Result<f64> {
    if !(mu > 0.0 && nu > 0.0) {
        return Err(Error::Precondition(format!(
            "jacobi moment needs mu > 0 and nu > 0 (mu = {mu}, nu = {nu})"
        )));
    }
    let nf = n as f64;
    let spec = PfqSpec::new([-nf, nf + 1.0, mu], [1.0, mu + nu], 1.0);
    let f = pfq(&spec, n + 1, 0.0)?.value;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let beta = GammaProduct::new()
        .gamma(mu)
        .gamma(nu)
        .over_gamma(mu + nu)
        .value()?;
    Ok(sign * beta * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{elliptic_k, legendre_p};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn pfq_basics() {
        let r = pfq(&PfqSpec::new([-0.3, 1.3], [1.0], 0.0), 100, 1e-15).unwrap();
        assert_eq!(r.value, 1.0);
        let r = pfq(&PfqSpec::new([0.5, 0.5], [1.0], 0.5), 1000, 1e-16).unwrap();
        assert!(rel(r.value, 2.0 / PI * elliptic_k(0.5).unwrap()) < 1e-14);
        assert_eq!(r.method, SumMethod::Direct);
    }

    #[test]
    fn five_f_four_combination() {
        let a = pfq(&PfqSpec::new([0.5; 5], [1.0; 4], -1.0), 100_000, 1e-15).unwrap();
        let b = pfq(&PfqSpec::new([1.5; 5], [2.0; 4], -1.0), 100_000, 1e-15).unwrap();
        assert_eq!(a.method, SumMethod::AlternatingAccel);
        let closed = 8.0 * Constants::GAMMA_QUARTER.powi(4) / (2.0 * PI.powi(4));
        assert!(rel(8.0 * a.value - b.value, closed) < 1e-12);
    }

    #[test]
    fn classification() {
        assert_eq!(
            PfqSpec::new([-3.0, 2.0], [1.0], 5.0).classify().unwrap(),
            Convergence::Terminating { degree: 3 }
        );
        assert!(PfqSpec::new([1.0, 2.0], [-2.0], 0.5).classify().is_err());
        assert!(PfqSpec::new([-1.0, 2.0], [-2.0], 0.5).classify().is_ok());
        assert!(PfqSpec::new([1.0, 1.0], [1.0], 1.0).classify().is_err());
        assert!(PfqSpec::new([0.5, 0.5], [1.0], 2.0).classify().is_err());
        assert!(PfqSpec::new([1.0, 1.0, 1.0], [1.0], 0.5)
            .classify()
            .is_err());
        assert_eq!(
            PfqSpec::new([0.5; 5], [1.0; 4], -1.0).classify().unwrap(),
            Convergence::UnitCircle
        );
        assert!(PfqSpec::new([1.0, 1.0], [1.5], -1.0).classify().is_ok());
        assert!(PfqSpec::new([1.0, 1.0], [0.5], -1.0).classify().is_err());
        assert_eq!(
            PfqSpec::new([1.0], [2.0, 3.0], 50.0).classify().unwrap(),
            Convergence::Geometric
        );
    }

    #[test]
    fn max_terms_exhaustion_is_distinct() {
        let spec = PfqSpec::new([1.0, 1.0], [2.5], 1.0);
        assert!(matches!(
            pfq(&spec, 200, 1e-15),
            Err(Error::MaxTermsExhausted { terms: 200, .. })
        ));
    }

    #[test]
    fn legendre_polynomials_from_pfq() {
        for n in 0..=30usize {
            for i in 0..10 {
                let x = i as f64 / 10.0;
                let nf = n as f64;
                let r = pfq(&PfqSpec::new([-nf, nf + 1.0], [1.0], x), 100, 0.0).unwrap();
                assert!(
                    (r.value - legendre_p(n, 1.0 - 2.0 * x)).abs() < 1e-11,
                    "n={n} x={x}"
                );
            }
        }
    }

    #[test]
    fn gauss_second_examples() {
        assert!((gauss_second(0.0) - 1.0).abs() < 1e-15);
        assert!(rel(gauss_second(-0.5), 2.0 / PI * elliptic_k(0.5).unwrap()) < 1e-14);
        assert_eq!(gauss_second(1.0), 0.0);
        assert_eq!(gauss_second(3.0), 0.0);
        assert_eq!(gauss_second(-2.0), 0.0);
        for nu in [0.25, 0.75, -0.3, 1.6, 2.2] {
            let s = pfq(&PfqSpec::new([-nu, nu + 1.0], [1.0], 0.5), 1000, 1e-16).unwrap();
            assert!(rel(gauss_second(nu), s.value) < 1e-11, "nu = {nu}");
        }
    }

    #[test]
    fn gauss_second_symmetry_dyadic() {
        for nu in [0.25, 1.375, -3.125, 7.5, 0.0625] {
            assert_eq!(
                gauss_second(nu).to_bits(),
                gauss_second(-nu - 1.0).to_bits()
            );
        }
    }

    #[test]
    fn watson_examples() {
        assert!((watson_3f2(0.0, 0.7, 1.3).unwrap() - 1.0).abs() < 1e-14);
        // ₃F₂(-2, 3, 1; 1, 2; 1) = 1 - 3 + 2
        let direct = 1.0 - 3.0 + 2.0;
        assert_eq!(watson_3f2(-2.0, 3.0, 1.0).unwrap(), direct);
        let via_pfq = pfq(&PfqSpec::new([-2.0, 3.0, 1.0], [1.0, 2.0], 1.0), 10, 0.0).unwrap();
        assert_eq!(via_pfq.value, direct);
        assert!(watson_3f2(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn jacobi_moment_examples() {
        assert!((jacobi_moment_3f2(0, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(jacobi_moment_3f2(1, 1.0, 1.0).unwrap().abs() < 1e-15);
        // ∫ x (1-x)^2 P_2(2x-1) dx = -1/60 (exact polynomial integral)
        assert!((jacobi_moment_3f2(2, 2.0, 3.0).unwrap() + 1.0 / 60.0).abs() < 1e-15);
        assert!(jacobi_moment_3f2(2, 0.0, 3.0).is_err());
    }

    #[test]
    fn legendre_function_both_halves_agree_near_half() {
        for nu in [0.3, 1.7, -0.45, 3.2] {
            let x = 0.5;
            let direct = power_2f1(-nu, nu + 1.0, 1.0, x);
            let conn = {
                // force the connection branch just above 1/2
                let xe = 0.5 + 1e-15;
                legendre_function(nu, xe, 1.0 - xe).unwrap()
            };
            assert!((direct - conn).abs() < 1e-13, "nu = {nu}");
        }
    }
}
