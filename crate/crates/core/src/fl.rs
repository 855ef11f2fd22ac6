//! Fourier-Legendre expansions on `[0, 1]` in the shifted basis
//! `P_n(2x - 1)`.
//!
//! The coefficient families are the Clebsch-Gordan product expansion of
//! `P_ν(1-2x) P_ν(2x-1)`, its `ν = -1/2` specialisation for `K(x)K(1-x)`,
//! Dougall's expansion of `P_ν(1-2x)` and the expansion of `K(x)`.

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::numerics::{sin_pi, CentralBinomial, GammaProduct, LegendreSweep};

/// Distance within which a degree is snapped to an integer or half-integer.
pub const INTEGER_PROXIMITY: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeClass {
    Generic,
    NonnegInteger,
    NegInteger,
    HalfInteger,
    /// `ν ∈ {0, 2, 4, ...} ∪ {-1, -3, ...}`: the cotangent side of the
    /// Gauss-sum identity has a pole.
    ExcludedForCons1,
}

/// A real Legendre degree with its pole/limit classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeNu {
    nu: f64,
    class: DegreeClass,
}

impl DegreeNu {
    /// Classify `nu`, snapping it onto a nearby integer or half-integer.
    pub fn new(nu: f64) -> Self {
        let r = nu.round();
        if (nu - r).abs() <= INTEGER_PROXIMITY {
            let n = r as i64;
            let class = if (n >= 0 && n % 2 == 0) || (n < 0 && n % 2 != 0) {
                DegreeClass::ExcludedForCons1
            } else if n >= 0 {
                DegreeClass::NonnegInteger
            } else {
                DegreeClass::NegInteger
            };
            return Self { nu: r, class };
        }
        let h = (nu - 0.5).round() + 0.5;
        if (nu - h).abs() <= INTEGER_PROXIMITY {
            return Self {
                nu: h,
                class: DegreeClass::HalfInteger,
            };
        }
        Self {
            nu,
            class: DegreeClass::Generic,
        }
    }

    pub fn value(&self) -> f64 {
        self.nu
    }

    pub fn class(&self) -> DegreeClass {
        self.class
    }

    pub fn is_integer(&self) -> bool {
        self.nu == self.nu.round()
    }

    pub fn excluded_for_cons1(&self) -> bool {
        self.class == DegreeClass::ExcludedForCons1
    }

    /// The representative `≥ -1/2` under `ν ↦ -ν - 1`.
    pub fn canonical(&self) -> f64 {
        if self.nu < -0.5 {
            -self.nu - 1.0
        } else {
            self.nu
        }
    }
}

impl From<f64> for DegreeNu {
    fn from(nu: f64) -> Self {
        DegreeNu::new(nu)
    }
}

impl fmt::Display for DegreeNu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.nu)
    }
}

/// `∫_0^1 P_ν(1-2x) P_ν(2x-1) P_{2m}(2x-1) dx` (half the integral over
/// `[-1, 1]` in the unshifted variable), in the pole-free form
/// `(-1)^m π c_m² Γ(m+ν+1) / (2 Γ(1+ν-m) Γ(m-ν+1/2) Γ(m+ν+3/2))`.
///
/// Exactly zero for integer `ν = n < m` and for half-integer `ν ≥ m + 1/2`.
pub fn cg_coefficient(nu: DegreeNu, m: usize) -> f64 {
    let nu = nu.canonical();
    let mf = m as f64;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    // π c_m² = Γ(m+1/2)² / Γ(m+1)²
    GammaProduct::new()
        .times(0.5 * sign)
        .gamma(mf + 0.5)
        .gamma(mf + 0.5)
        .over_gamma(mf + 1.0)
        .over_gamma(mf + 1.0)
        .gamma(mf + nu + 1.0)
        .over_gamma(1.0 + nu - mf)
        .over_gamma(mf - nu + 0.5)
        .over_gamma(mf + nu + 1.5)
        .value()
        .expect("numerator Gammas are positive for canonical degrees")
}

/// `cg(ν, m + 1) / cg(ν, m)`.
fn cg_ratio(nu: f64, m: usize) -> f64 {
    let m = m as f64;
    let c = (2.0 * m + 1.0) / (2.0 * m + 2.0);
    c * c * (m + nu + 1.0) * (m - nu) / ((m - nu + 0.5) * (m + nu + 1.5))
}

fn sinc_pi(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        sin_pi(t) / (PI * t)
    }
}

/// Dougall's coefficient `sinc(m - ν) + sinc(m + ν + 1)` of `P_ν(t)` on
/// `P_m(t)`, with the removable singularities filled by 1.
pub fn dougall_coefficient(nu: DegreeNu, m: usize) -> f64 {
    let nu = nu.value();
    let m = m as f64;
    // + 0.0 turns the -0 of sin_pi at negative integers into +0
    sinc_pi(m - nu) + sinc_pi(m + nu + 1.0) + 0.0
}

/// Coefficient `2 / (2m + 1)` of `K(x)` on `P_m(2x - 1)`.
pub fn k_fl_coefficient(m: usize) -> f64 {
    2.0 / (2.0 * m as f64 + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    EvenOnly,
    All,
}

/// Which way Dougall's expansion is read on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DougallOrientation {
    /// `P_ν(1 - 2x) = Σ d_m P_m(1 - 2x)`: both sides in the same argument.
    SameArgument,
    /// `P_ν(1 - 2x) = Σ d_m P_m(2x - 1)`, as sometimes printed.
    Flipped,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `(4m + 1) cg(ν, m)` on `P_{2m}`: sums to `P_ν(1-2x) P_ν(2x-1)`.
    CgProduct(DegreeNu),
    /// `c_m⁴ (4m + 1)` on `P_{2m}`: sums to `(8/π³) K(x) K(1-x)`.
    Cons2,
    Dougall(DegreeNu, DougallOrientation),
    K,
}

/// A coefficient sequence on the basis `P_n(2x - 1)`, computed lazily and
/// memoized.
///
/// The memo is extended in index order under a write lock, so every
/// reader sees the same values no matter which thread filled them.
#[derive(Debug)]
pub struct FLSeries {
    family: Family,
    memo: RwLock<Vec<f64>>,
}

impl Clone for FLSeries {
    fn clone(&self) -> Self {
        Self {
            family: self.family,
            memo: RwLock::new(self.memo.read().expect("memo lock").clone()),
        }
    }
}

impl FLSeries {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            memo: RwLock::new(Vec::new()),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn parity(&self) -> Parity {
        match self.family {
            Family::CgProduct(_) | Family::Cons2 => Parity::EvenOnly,
            Family::Dougall(..) | Family::K => Parity::All,
        }
    }

    /// Legendre degree carried by coefficient `m`.
    pub fn degree(&self, m: usize) -> usize {
        match self.parity() {
            Parity::EvenOnly => 2 * m,
            Parity::All => m,
        }
    }

    /// Coefficient of `P_n(2x - 1)` for an arbitrary degree `n`; exact
    /// zero for odd `n` in an even-only series.
    pub fn coefficient_of_degree(&self, n: usize) -> f64 {
        match self.parity() {
            Parity::EvenOnly if n % 2 == 1 => 0.0,
            Parity::EvenOnly => self.coefficient(n / 2),
            Parity::All => self.coefficient(n),
        }
    }

    pub fn coefficient(&self, m: usize) -> f64 {
        self.coefficients(m + 1)[m]
    }

    /// The first `n` coefficients.
    pub fn coefficients(&self, n: usize) -> Vec<f64> {
        {
            let memo = self.memo.read().expect("memo lock");
            if memo.len() >= n {
                return memo[..n].to_vec();
            }
        }
        let mut memo = self.memo.write().expect("memo lock");
        while memo.len() < n {
            let m = memo.len();
            let next = self.next_coefficient(m, memo.last().copied());
            memo.push(next);
        }
        memo[..n].to_vec()
    }

    fn next_coefficient(&self, m: usize, prev: Option<f64>) -> f64 {
        let mf = m as f64;
        match self.family {
            Family::CgProduct(nu) => {
                let canon = nu.canonical();
                // the ratio has zeros and poles below ν + 1
                match prev {
                    Some(p) if mf > canon + 2.0 => {
                        let r = cg_ratio(canon, m - 1);
                        p * r * (4.0 * mf + 1.0) / (4.0 * mf - 3.0)
                    }
                    _ => (4.0 * mf + 1.0) * cg_coefficient(nu, m),
                }
            }
            Family::Cons2 => match prev {
                Some(p) => {
                    let c = (2.0 * mf - 1.0) / (2.0 * mf);
                    p * c.powi(4) * (4.0 * mf + 1.0) / (4.0 * mf - 3.0)
                }
                None => 1.0,
            },
            Family::Dougall(nu, orientation) => {
                let d = dougall_coefficient(nu, m);
                match orientation {
                    DougallOrientation::SameArgument if m % 2 == 1 => -d,
                    _ => d,
                }
            }
            Family::K => k_fl_coefficient(m),
        }
    }
}

/// The product expansion `P_ν(1-2x) P_ν(2x-1) = Σ (4m+1) cg(ν,m) P_{2m}(2x-1)`.
pub fn product_expansion(nu: DegreeNu) -> FLSeries {
    FLSeries::new(Family::CgProduct(nu))
}

/// `Σ_{m<n} a_m P_{degree(m)}(2x - 1)` in a single upward Legendre sweep.
pub fn fl_partial_sum(series: &FLSeries, x: f64, n: usize) -> f64 {
    let coef = series.coefficients(n);
    let sweep = LegendreSweep::new(2.0 * x - 1.0);
    match series.parity() {
        Parity::All => coef.iter().zip(sweep).map(|(a, p)| a * p).sum(),
        Parity::EvenOnly => coef.iter().zip(sweep.step_by(2)).map(|(a, p)| a * p).sum(),
    }
}

/// `∫_0^1 x^{μ-1} P_n(2x - 1) dx = Γ(μ)² / (Γ(μ+n+1) Γ(μ-n))`.
pub fn beta_moment_legendre(mu: f64, n: usize) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::Precondition(format!(
            "beta moment needs mu > 0, got {mu}"
        )));
    }
    GammaProduct::new()
        .gamma(mu)
        .gamma(mu)
        .over_gamma(mu + n as f64 + 1.0)
        .over_gamma(mu - n as f64)
        .value()
}

/// `∫_0^1 x^n K(x) K(1-x) dx` as a finite sum over `m ≤ n/2`.
pub fn moment_series_1(n: usize) -> f64 {
    let nf = n as f64;
    CentralBinomial::new()
        .take(n / 2 + 1)
        .enumerate()
        .map(|(m, c)| {
            let mf = m as f64;
            GammaProduct::new()
                .times(c.powi(4) * (4.0 * mf + 1.0))
                .gamma(nf + 1.0)
                .gamma(nf + 1.0)
                .over_gamma(nf + 2.0 * mf + 2.0)
                .over_gamma(nf + 1.0 - 2.0 * mf)
                .value()
                .expect("no numerator poles")
        })
        .sum::<f64>()
        * PI.powi(3)
        / 8.0
}

/// `∫_0^1 [x(1-x)]^{n-1} K(x) K(1-x) dx` as a finite sum over `m < n`.
pub fn moment_series_2(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Precondition(
            "second moment family starts at n = 1".into(),
        ));
    }
    let nf = n as f64;
    let sum: f64 = CentralBinomial::new()
        .take(n)
        .enumerate()
        .map(|(m, c)| {
            let mf = m as f64;
            GammaProduct::new()
                .times(c.powi(4) * (4.0 * mf + 1.0))
                .gamma(nf)
                .gamma(nf)
                .gamma(nf)
                .gamma(nf + 0.5)
                .over_gamma(2.0 * nf)
                .over_gamma(0.5 - mf)
                .over_gamma(mf + 1.0)
                .over_gamma(mf + 0.5 + nf)
                .over_gamma(nf - mf)
                .value()
                .expect("no numerator poles")
        })
        .sum();
    Ok(sum * PI.powf(3.5) / 8.0)
}

/// Coefficient families exposed for tabulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientFamily {
    /// The raw integral `cg(ν, m)`, degree `2m`.
    Cg,
    /// Dougall's `d_m`, degree `m`.
    Dougall,
    /// `2/(2m+1)`, degree `m`.
    K,
}

impl std::str::FromStr for CoefficientFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cg" => Ok(Self::Cg),
            "dougall" => Ok(Self::Dougall),
            "k" => Ok(Self::K),
            other => Err(Error::Config(format!(
                "unknown coefficient family `{other}` (expected cg, dougall or k)"
            ))),
        }
    }
}

/// One tabulated coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientRow {
    pub m: usize,
    pub n_degree: usize,
    pub coefficient: f64,
}

/// Rows `m = 0..=m_max` of a coefficient family.
pub fn coefficient_rows(
    family: CoefficientFamily,
    nu: DegreeNu,
    m_max: usize,
) -> Vec<CoefficientRow> {
    (0..=m_max)
        .map(|m| {
            let (n_degree, coefficient) = match family {
                CoefficientFamily::Cg => (2 * m, cg_coefficient(nu, m)),
                CoefficientFamily::Dougall => (m, dougall_coefficient(nu, m)),
                CoefficientFamily::K => (m, k_fl_coefficient(m)),
            };
            CoefficientRow {
                m,
                n_degree,
                coefficient,
            }
        })
        .collect()
}

/// CSV with header `m,n_degree,coefficient`, 17 significant digits.
pub fn write_coefficients_csv(rows: &[CoefficientRow], mut out: impl Write) -> io::Result<()> {
    writeln!(out, "m,n_degree,coefficient")?;
    for r in rows {
        writeln!(out, "{},{},{:.16e}", r.m, r.n_degree, r.coefficient)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::{gauss_second, jacobi_moment_3f2};
    use crate::numerics::{central_binomial, elliptic_k, legendre_p, legendre_pnu};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn classification() {
        use DegreeClass::*;
        let cases = [
            (0.0, ExcludedForCons1),
            (2.0, ExcludedForCons1),
            (-1.0, ExcludedForCons1),
            (-3.0 + 1e-10, ExcludedForCons1),
            (1.0, NonnegInteger),
            (3.0, NonnegInteger),
            (-2.0, NegInteger),
            (0.5, HalfInteger),
            (-1.5 - 5e-10, HalfInteger),
            (0.3, Generic),
            (2.0 + 1e-6, Generic),
        ];
        for (nu, class) in cases {
            assert_eq!(DegreeNu::new(nu).class(), class, "nu = {nu}");
        }
        assert_eq!(DegreeNu::new(1.0 + 1e-10).value(), 1.0);
        assert_eq!(DegreeNu::new(-2.5).canonical(), 1.5);
    }

    #[test]
    fn cg_examples() {
        assert_eq!(cg_coefficient(0.0.into(), 0), 1.0);
        for m in 1..6 {
            assert_eq!(cg_coefficient(0.0.into(), m), 0.0);
        }
        for m in 0..30 {
            let c = central_binomial(m);
            let expect = PI / 2.0 * c.powi(4);
            assert!(
                rel(cg_coefficient((-0.5).into(), m), expect) < 1e-13,
                "m = {m}"
            );
        }
        // 25-digit quadrature of the shifted projection integral
        assert!(rel(cg_coefficient(0.3.into(), 0), 0.367_365_782_682_795_686_282) < 1e-13);
        assert!(
            rel(
                cg_coefficient(0.3.into(), 2),
                -0.026_816_984_624_549_789_006
            ) < 1e-13
        );
        assert_eq!(cg_coefficient(0.5.into(), 0), 0.0);
        assert!(
            rel(
                cg_coefficient(0.5.into(), 2),
                -0.034_514_567_727_426_927_669
            ) < 1e-13
        );
        // 30-digit value of the closed form deep in the tail
        let s = product_expansion(0.3.into());
        assert!(rel(s.coefficient(399) / 1597.0, -8.077_716_896_477_538_927e-7) < 1e-13);
    }

    #[test]
    fn nu_one_product_expansion() {
        // -(1-2x)² = -1/3 - (2/3) P_2(2x-1)
        let s = product_expansion(1.0.into());
        assert!((s.coefficient(0) + 1.0 / 3.0).abs() < 1e-15);
        assert!((s.coefficient(1) + 2.0 / 3.0).abs() < 1e-15);
        for m in 2..10 {
            assert_eq!(s.coefficient(m), 0.0);
        }
    }

    #[test]
    fn memo_recurrence_matches_direct() {
        for nu in [0.3, -0.7, 1.6, 2.25, 3.0] {
            let s = product_expansion(nu.into());
            let coef = s.coefficients(400);
            for m in [0, 1, 2, 3, 5, 17, 100, 399] {
                let direct = (4.0 * m as f64 + 1.0) * cg_coefficient(nu.into(), m);
                // log-Gamma values near 2000 limit the direct form to ~1e-12
                assert!(
                    (coef[m] - direct).abs() <= 1e-11 * direct.abs().max(1e-300),
                    "nu = {nu}, m = {m}: {} vs {direct}",
                    coef[m]
                );
            }
        }
        let cons2 = FLSeries::new(Family::Cons2);
        let c = cons2.coefficients(1000);
        let m = 999;
        let expect = central_binomial(m).powi(4) * (4.0 * m as f64 + 1.0);
        assert!(rel(c[m], expect) < 1e-12);
    }

    #[test]
    fn product_partial_sum_at_half() {
        let s = product_expansion(0.25.into());
        let target = gauss_second(0.25).powi(2);
        assert!((fl_partial_sum(&s, 0.5, 400) - target).abs() < 5e-4);
    }

    #[test]
    fn cons2_partial_sums() {
        let s = FLSeries::new(Family::Cons2);
        let k = elliptic_k(0.5).unwrap();
        let target = 8.0 / PI.powi(3) * k * k;
        assert!((fl_partial_sum(&s, 0.5, 10_000) - target).abs() < 1e-5);
        let target = 8.0 / PI.powi(3) * elliptic_k(0.25).unwrap() * elliptic_k(0.75).unwrap();
        assert!((fl_partial_sum(&s, 0.25, 10_000) - target).abs() < 1e-4);
    }

    #[test]
    fn first_partial_sum_is_first_coefficient() {
        for series in [
            FLSeries::new(Family::K),
            FLSeries::new(Family::Cons2),
            product_expansion(0.3.into()),
        ] {
            assert_eq!(fl_partial_sum(&series, 0.37, 1), series.coefficient(0));
        }
    }

    #[test]
    fn even_series_symmetric() {
        let s = product_expansion(0.3.into());
        for x in [0.125, 0.25, 0.375, 0.0625] {
            assert_eq!(fl_partial_sum(&s, x, 500), fl_partial_sum(&s, 1.0 - x, 500));
        }
        assert_eq!(s.coefficient_of_degree(3), 0.0);
    }

    #[test]
    fn k_expansion() {
        let s = FLSeries::new(Family::K);
        assert_eq!(s.coefficient(0), 2.0);
        let v = fl_partial_sum(&s, 0.3, 2000);
        assert!((v - elliptic_k(0.3).unwrap()).abs() < 2e-4);
    }

    #[test]
    fn dougall_examples() {
        for n in 0..4 {
            for m in 0..8 {
                let d = dougall_coefficient((n as f64).into(), m);
                assert_eq!(d, if m == n { 1.0 } else { 0.0 }, "n = {n}, m = {m}");
            }
        }
        for m in 0..20 {
            let expect = 2.0 * if m % 2 == 0 { 1.0 } else { -1.0 } / (PI * (m as f64 + 0.5));
            assert!(rel(dougall_coefficient((-0.5).into(), m), expect) < 1e-14);
        }
        let nu = 0.3;
        for m in 0..10 {
            let mf = m as f64;
            let s = if m % 2 == 0 { -1.0 } else { 1.0 };
            let alt = s * sin_pi(nu) * (2.0 * mf + 1.0) / (PI * (mf - nu) * (mf + nu + 1.0));
            assert!((dougall_coefficient(nu.into(), m) - alt).abs() < 1e-15);
        }
    }

    #[test]
    fn dougall_same_argument_reproduces_legendre_function() {
        let nu = -0.5;
        let same = FLSeries::new(Family::Dougall(nu.into(), DougallOrientation::SameArgument));
        let flipped = FLSeries::new(Family::Dougall(nu.into(), DougallOrientation::Flipped));
        let x = 0.2;
        let target = legendre_pnu(nu, x).unwrap();
        assert!((fl_partial_sum(&same, x, 4000) - target).abs() < 5e-3);
        assert!((fl_partial_sum(&flipped, x, 4000) - target).abs() > 0.1);
    }

    #[test]
    fn beta_moments() {
        assert!((beta_moment_legendre(1.0, 0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(beta_moment_legendre(1.0, 3).unwrap(), 0.0);
        assert!((beta_moment_legendre(3.0, 2).unwrap() - 1.0 / 30.0).abs() < 1e-15);
        assert!(beta_moment_legendre(0.0, 2).is_err());
    }

    #[test]
    fn moment_values() {
        let p3 = PI.powi(3);
        assert!(rel(moment_series_1(0), p3 / 8.0) < 1e-15);
        assert!(rel(moment_series_1(1), p3 / 16.0) < 1e-15);
        assert!(rel(moment_series_1(2), p3 * 11.0 / 256.0) < 1e-14);
        // 30-digit references
        assert!(rel(moment_series_1(5), 0.720_795_631_751_049_439_05) < 1e-13);
        assert!(rel(moment_series_1(10), 0.426_276_499_225_097_067_63) < 1e-13);
        assert!(rel(moment_series_2(2).unwrap(), 0.605_591_341_412_105_862_8) < 1e-13);
        assert!(rel(moment_series_2(3).unwrap(), 0.118_752_677_105_030_134_03) < 1e-13);
        assert!(rel(moment_series_2(6).unwrap(), 0.001_261_610_200_681_435_998_4) < 1e-12);
        assert!(rel(moment_series_2(1).unwrap(), moment_series_1(0)) < 1e-13);
        assert!(moment_series_2(0).is_err());
    }

    #[test]
    fn moment2_matches_jacobi_route() {
        // expand K(x)K(1-x) and integrate each P_{2m} against [x(1-x)]^{n-1}
        for n in 1..=6usize {
            let nf = n as f64;
            let via_3f2: f64 = CentralBinomial::new()
                .take(n)
                .enumerate()
                .map(|(m, c)| {
                    c.powi(4) * (4.0 * m as f64 + 1.0) * jacobi_moment_3f2(2 * m, nf, nf).unwrap()
                })
                .sum::<f64>()
                * PI.powi(3)
                / 8.0;
            assert!(rel(moment_series_2(n).unwrap(), via_3f2) < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn legendre_at_zero() {
        for (m, c) in CentralBinomial::new().take(21).enumerate() {
            let s = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert!((legendre_p(2 * m, 0.0) - s * c).abs() < 1e-15);
        }
    }

    #[test]
    fn csv_format() {
        let rows = coefficient_rows(CoefficientFamily::K, 0.0.into(), 3);
        let mut buf = Vec::new();
        write_coefficients_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "m,n_degree,coefficient");
        assert_eq!(lines[1], "0,0,2.0000000000000000e0");
        let back: f64 = lines[4].split(',').nth(2).unwrap().parse().unwrap();
        assert_eq!(back, 2.0 / 7.0);
        assert!("bogus".parse::<CoefficientFamily>().is_err());
    }
}
