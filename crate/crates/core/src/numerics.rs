//! Scalar special-function kernel.
//!
//! Gamma family (log space with sign tracking), digamma and trigamma,
//! the complete elliptic integral of the first kind in parameter form,
//! Legendre polynomials and Legendre functions of real degree, and the
//! normalized central binomial sequence `c_m = binom(2m, m) / 4^m`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::hypergeom;
use crate::series::{self, SignPattern, TermGenerator};

/// Named constants used by the closed forms.
pub struct Constants;

impl Constants {
    pub const PI: f64 = PI;
    pub const SQRT_PI: f64 = 1.772_453_850_905_516_027_3;
    pub const LN_SQRT_PI: f64 = 0.572_364_942_924_700_087_07;
    /// Γ(1/4)
    pub const GAMMA_QUARTER: f64 = 3.625_609_908_221_908_311_9;
    /// Γ(1/8)
    pub const GAMMA_EIGHTH: f64 = 7.533_941_598_797_611_904_7;
    /// Catalan's constant.
    pub const CATALAN: f64 = 0.915_965_594_177_219_015_05;
    /// Euler–Mascheroni constant.
    pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;
}

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_741_78;

// Lanczos approximation, g = 607/128, 15 terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_091_82,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `sin(pi x)` with exact argument reduction, so zeros at integers are exact.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    if x.abs() >= 4_503_599_627_370_496.0 {
        return 0.0;
    }
    let n = (2.0 * x).round();
    let r = x - 0.5 * n;
    let (s, c) = (PI * r).sin_cos();
    match (n as i64).rem_euclid(4) {
        0 => s,
        1 => c,
        2 => -s,
        _ => -c,
    }
}

/// `cos(pi x)` with exact argument reduction.
pub fn cos_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    if x.abs() >= 4_503_599_627_370_496.0 {
        return 1.0;
    }
    let n = (2.0 * x).round();
    let r = x - 0.5 * n;
    let (s, c) = (PI * r).sin_cos();
    match (n as i64).rem_euclid(4) {
        0 => c,
        1 => -s,
        2 => -c,
        _ => s,
    }
}

fn lanczos_ln_gamma(x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let z = x - 1.0;
    let mut sum = LANCZOS_COEF[0];
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_2PI_HALF + (z + 0.5) * t.ln() - t + sum.ln()
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain {
            function: "ln_gamma",
            at: x,
            domain: "x > 0",
        });
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            function: "ln_gamma",
            at: x,
        });
    }
    if x < 0.0 {
        return Err(Error::Domain {
            function: "ln_gamma",
            at: x,
            domain: "x > 0 (use gamma_signed for negative arguments)",
        });
    }
    if x < 0.5 {
        Ok(lanczos_ln_gamma(x + 1.0) - x.ln())
    } else {
        Ok(lanczos_ln_gamma(x))
    }
}

/// Sign and `ln |Γ(x)|` for any real `x` that is not a pole.
///
/// Arguments below 1/2 go through the reflection formula
/// `Γ(x) Γ(1 - x) = π / sin(π x)`.
pub fn gamma_signed(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() {
        return Err(Error::Domain {
            function: "gamma_signed",
            at: x,
            domain: "real x",
        });
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            function: "gamma_signed",
            at: x,
        });
    }
    if x >= 0.5 {
        return Ok((1.0, lanczos_ln_gamma(x)));
    }
    let s = sin_pi(x);
    let ln_abs = PI.ln() - s.abs().ln() - lanczos_ln_gamma(1.0 - x);
    Ok((s.signum(), ln_abs))
}

/// A product of Gamma functions, reciprocal Gamma functions and plain
/// factors, accumulated as a sign and a logarithm.
///
/// A reciprocal Gamma at a pole makes the product an exact zero; a Gamma
/// at a pole in the numerator is reported when the value is requested.
#[derive(Debug, Clone, Copy)]
pub struct GammaProduct {
    sign: f64,
    ln_abs: f64,
    zero: bool,
    pole: Option<f64>,
}

impl Default for GammaProduct {
    fn default() -> Self {
        Self::new()
    }
}

impl GammaProduct {
    pub fn new() -> Self {
        Self {
            sign: 1.0,
            ln_abs: 0.0,
            zero: false,
            pole: None,
        }
    }

    /// Multiply by `Γ(x)`.
    pub fn gamma(mut self, x: f64) -> Self {
        match gamma_signed(x) {
            Ok((s, l)) => {
                self.sign *= s;
                self.ln_abs += l;
            }
            Err(_) => self.pole = Some(x),
        }
        self
    }

    /// Divide by `Γ(x)`.
    pub fn over_gamma(mut self, x: f64) -> Self {
        match gamma_signed(x) {
            Ok((s, l)) => {
                self.sign *= s;
                self.ln_abs -= l;
            }
            Err(_) => self.zero = true,
        }
        self
    }

    /// Multiply by a plain real factor.
    pub fn times(mut self, v: f64) -> Self {
        if v == 0.0 {
            self.zero = true;
        } else {
            self.sign *= v.signum();
            self.ln_abs += v.abs().ln();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.zero && self.pole.is_none()
    }

    pub fn ln_abs(&self) -> f64 {
        self.ln_abs
    }

    pub fn sign(&self) -> f64 {
        if self.zero {
            0.0
        } else {
            self.sign
        }
    }

    pub fn value(&self) -> Result<f64> {
        if let Some(at) = self.pole {
            return Err(Error::Pole {
                function: "Gamma product",
                at,
            });
        }
        if self.zero {
            return Ok(0.0);
        }
        Ok(self.sign * self.ln_abs.exp())
    }
}

/// Digamma `ψ(x)`.
pub fn digamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            function: "digamma",
            at: x,
        });
    }
    if x < 0.5 {
        // ψ(x) = ψ(1 - x) - π cot(π x)
        let cot = cos_pi(x) / sin_pi(x);
        return Ok(digamma(1.0 - x)? - PI * cot);
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let r = 1.0 / (x * x);
    let series = r
        * (1.0 / 12.0
            - r * (1.0 / 120.0
                - r * (1.0 / 252.0
                    - r * (1.0 / 240.0 - r * (1.0 / 132.0 - r * (691.0 / 32760.0 - r / 12.0))))));
    Ok(acc + x.ln() - 0.5 / x - series)
}

fn trigamma_asymptotic(x: f64) -> f64 {
    // 1/x + 1/(2x^2) + sum B_{2k} / x^{2k+1}
    let r = 1.0 / (x * x);
    let tail = r
        * (1.0 / 6.0
            - r * (1.0 / 30.0
                - r * (1.0 / 42.0
                    - r * (1.0 / 30.0 - r * (5.0 / 66.0 - r * (691.0 / 2730.0 - r * 7.0 / 6.0))))));
    (1.0 + 0.5 / x + tail) / x
}

/// Trigamma `ψ¹(x)` for `x > 0`: upward recurrence into the asymptotic series.
pub fn trigamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Pole {
            function: "trigamma",
            at: x,
        });
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 12.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    Ok(acc + trigamma_asymptotic(x))
}

/// `ψ¹(x + 1/2) - ψ¹(x + 1)` for `x ≥ 0`, summed as
/// `Σ_k [1/(x+k+1/2)² - 1/(x+k+1)²]` with the asymptotic remainder, so the
/// cancellation between the two trigamma values never happens in full.
pub fn trigamma_half_gap(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain {
            function: "trigamma_half_gap",
            at: x,
            domain: "x >= 0",
        });
    }
    let mut y = x;
    let mut acc = 0.0;
    while y < 12.0 {
        let a = y + 0.5;
        let b = y + 1.0;
        acc += (b - a) * (b + a) / (a * a * b * b);
        y += 1.0;
    }
    Ok(acc + (trigamma_asymptotic(y + 0.5) - trigamma_asymptotic(y + 1.0)))
}

/// Arithmetic–geometric mean of two positive numbers.
pub fn agm(a: f64, b: f64) -> f64 {
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind in parameter form,
/// `K(m) = ∫_0^{π/2} du / sqrt(1 - m sin² u)`, for any `m < 1`.
pub fn elliptic_k(m: f64) -> Result<f64> {
    if m.is_nan() {
        return Err(Error::Domain {
            function: "elliptic_k",
            at: m,
            domain: "m < 1",
        });
    }
    if m >= 1.0 {
        return Err(Error::Divergence {
            function: "elliptic_k",
            at: m,
        });
    }
    Ok(PI / (2.0 * agm(1.0, (1.0 - m).sqrt())))
}

/// `K(1 - m1)` evaluated from the complementary parameter `m1 > 0`
/// without forming `1 - m1`.
pub fn elliptic_k_complement(m1: f64) -> Result<f64> {
    if m1.is_nan() || m1 <= 0.0 {
        return Err(Error::Divergence {
            function: "elliptic_k_complement",
            at: m1,
        });
    }
    Ok(PI / (2.0 * agm(1.0, m1.sqrt())))
}

/// Legendre polynomial `P_n(t)` by the three-term recurrence.
pub fn legendre_p(n: usize, t: f64) -> f64 {
    LegendreSweep::new(t).nth(n).expect("sweep is infinite")
}

/// Upward sweep `P_0(t), P_1(t), P_2(t), ...`.
#[derive(Debug, Clone)]
pub struct LegendreSweep {
    t: f64,
    n: usize,
    prev: f64,
    cur: f64,
}

impl LegendreSweep {
    pub fn new(t: f64) -> Self {
        Self {
            t,
            n: 0,
            prev: 0.0,
            cur: 1.0,
        }
    }
}

impl Iterator for LegendreSweep {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        let next = if self.n == 0 {
            self.t
        } else {
            let n = self.n as f64;
            ((2.0 * n + 1.0) * self.t * self.cur - n * self.prev) / (n + 1.0)
        };
        self.prev = self.cur;
        self.cur = next;
        self.n += 1;
        Some(out)
    }
}

/// `P_ν(1 - 2x) = ₂F₁(-ν, ν + 1; 1; x)` for real `ν` and `x ∈ [0, 1)`.
///
/// Integer degrees (after the `ν ↦ -ν - 1` fold) use the polynomial and
/// are defined at `x = 1` as well.
pub fn legendre_pnu(nu: f64, x: f64) -> Result<f64> {
    legendre_pnu_split(nu, x, 1.0 - x)
}

/// `P_ν(t)` for `t ∈ (-1, 1]`; the distance `1 + t` is kept exact near `t = -1`.
pub fn legendre_pnu_at(nu: f64, t: f64) -> Result<f64> {
    legendre_pnu_split(nu, 0.5 * (1.0 - t), 0.5 * (1.0 + t))
}

/// `P_ν(1 - 2x)` with the complement `w = 1 - x` supplied by the caller.
pub fn legendre_pnu_split(nu: f64, x: f64, w: f64) -> Result<f64> {
    if !nu.is_finite() || !x.is_finite() || !(0.0..=1.0).contains(&x) || w < 0.0 {
        return Err(Error::Domain {
            function: "legendre_pnu",
            at: x,
            domain: "x in [0, 1]",
        });
    }
    let nu = if nu < -0.5 { -nu - 1.0 } else { nu };
    if nu == nu.round() {
        return Ok(legendre_p(nu as usize, w - x));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if w == 0.0 {
        return Err(Error::Divergence {
            function: "legendre_pnu",
            at: x,
        });
    }
    hypergeom::legendre_function(nu, x, w)
}

/// Normalized central binomial coefficients `c_m = binom(2m, m) / 4^m`,
/// generated by `c_m = c_{m-1} (2m - 1) / (2m)`.
#[derive(Debug, Clone)]
pub struct CentralBinomial {
    m: usize,
    c: f64,
}

impl CentralBinomial {
    pub fn new() -> Self {
        Self { m: 0, c: 1.0 }
    }
}

impl Default for CentralBinomial {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for CentralBinomial {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.c;
        self.m += 1;
        let m = self.m as f64;
        self.c *= (2.0 * m - 1.0) / (2.0 * m);
        Some(out)
    }
}

/// `c_m` by the recurrence (O(m)); use [`CentralBinomial`] for sweeps.
pub fn central_binomial(m: usize) -> f64 {
    CentralBinomial::new().nth(m).expect("iterator is infinite")
}

/// Catalan's constant from `Σ (-1)^k / (2k + 1)²` with alternating acceleration.
pub fn catalan_oracle() -> Result<f64> {
    let mut g = TermGenerator::new(SignPattern::Alternating, |k| {
        let d = 2.0 * k as f64 + 1.0;
        let t = 1.0 / (d * d);
        if k % 2 == 0 {
            t
        } else {
            -t
        }
    });
    Ok(series::sum_alternating_accel(&mut g, 16, 1e-15)?.value)
}
