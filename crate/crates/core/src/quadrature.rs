//! Integral oracles: tanh-sinh for endpoint singularities, adaptive
//! Gauss-Kronrod for smooth integrands, and the trapezoid rule for
//! periodic ones.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Finest tanh-sinh level (step `2^-MAX_LEVEL`).
pub const MAX_LEVEL: u32 = 12;
const MIN_LEVEL: u32 = 3;
/// Subinterval cap for [`gauss_adaptive`].
pub const MAX_SUBDIVISIONS: usize = 4000;
/// Node cap for [`periodic_trapezoid`].
pub const MAX_PERIODIC_NODES: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err_estimate: f64,
    pub fn_evals: usize,
    pub converged: bool,
}

fn eval(f: &impl Fn(f64) -> f64, x: f64, evals: &mut usize) -> Result<f64> {
    *evals += 1;
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFiniteIntegrand { at: x })
    }
}

/// Double-exponential quadrature on `(a, b)`.
///
/// Nodes are placed by their distance to the nearer endpoint, so the
/// clustering survives rounding; nodes that land on an endpoint are
/// dropped. Levels halve the step until two successive estimates differ
/// by at most `tol`.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Quadrature(format!("bad interval [{a}, {b}]")));
    }
    let half = 0.5 * (b - a);
    let mut evals = 0;

    // Σ over nodes t = k h with k ≡ offset (mod stride), both signs of t.
    let mut sweep = |h: f64, first: usize, stride: usize| -> Result<f64> {
        let mut acc = 0.0;
        let mut k = first;
        loop {
            let t = k as f64 * h;
            let s = FRAC_PI_2 * t.sinh();
            let e = (-2.0 * s).exp();
            // 1 - tanh(s), the distance of the node from the endpoint
            let d = 2.0 * e / (1.0 + e);
            if d * half < 1e-300 {
                break;
            }
            let ch = s.cosh();
            let w = FRAC_PI_2 * t.cosh() / (ch * ch);
            let off = half * d;
            if k == 0 {
                acc += w * eval(&f, a + half, &mut evals)?;
            } else {
                let lo = a + off;
                let hi = b - off;
                if lo > a && lo < b {
                    acc += w * eval(&f, lo, &mut evals)?;
                }
                if hi < b && hi > a {
                    acc += w * eval(&f, hi, &mut evals)?;
                }
            }
            k += stride;
        }
        Ok(acc)
    };

    let mut h = 1.0;
    let mut sum = sweep(h, 0, 1)?;
    let mut estimate = half * h * sum;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        sum += sweep(h, 1, 2)?;
        let next = half * h * sum;
        let err = (next - estimate).abs();
        estimate = next;
        if level >= MIN_LEVEL && err <= tol {
            return Ok(QuadResult {
                value: estimate,
                abs_err_estimate: err,
                fn_evals: evals,
                converged: true,
            });
        }
    }
    Err(Error::Quadrature(format!(
        "tanh-sinh not converged to {tol:e} by level {MAX_LEVEL} (last estimate {estimate})"
    )))
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// 15-point Kronrod and embedded 7-point Gauss values on `[a, b]`.
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64, evals: &mut usize) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = eval(f, c, evals)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = eval(f, c - dx, evals)? + eval(f, c + dx, evals)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok((kronrod * h, (kronrod - gauss).abs() * h))
}

/// Globally adaptive Gauss-Kronrod (7/15) quadrature: the interval with
/// the largest error estimate is bisected until the total estimate is
/// at most `tol`.
pub fn gauss_adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Quadrature(format!("bad interval [{a}, {b}]")));
    }
    let mut evals = 0;
    let (v, e) = gk15(&f, a, b, &mut evals)?;
    // (lo, hi, value, error)
    let mut parts = vec![(a, b, v, e)];
    loop {
        let value: f64 = parts.iter().map(|p| p.2).sum();
        let err: f64 = parts.iter().map(|p| p.3).sum();
        if err <= tol {
            return Ok(QuadResult {
                value,
                abs_err_estimate: err,
                fn_evals: evals,
                converged: true,
            });
        }
        if parts.len() >= MAX_SUBDIVISIONS {
            return Err(Error::Quadrature(format!(
                "subdivision limit {MAX_SUBDIVISIONS} reached (error estimate {err:e})"
            )));
        }
        let worst = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("at least one interval");
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) {
            return Err(Error::Quadrature(format!(
                "interval [{lo}, {hi}] cannot be bisected further"
            )));
        }
        let (v1, e1) = gk15(&f, lo, mid, &mut evals)?;
        let (v2, e2) = gk15(&f, mid, hi, &mut evals)?;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// Trapezoid rule over one period `[0, period)`, doubling the node count
/// until successive estimates differ by at most `tol`.
pub fn periodic_trapezoid(f: impl Fn(f64) -> f64, period: f64, tol: f64) -> Result<QuadResult> {
    if !(period > 0.0) || !period.is_finite() {
        return Err(Error::Quadrature(format!("bad period {period}")));
    }
    let mut evals = 0;
    let mut n = 8usize;
    let mut sum = 0.0;
    for k in 0..n {
        sum += eval(&f, period * k as f64 / n as f64, &mut evals)?;
    }
    let mut estimate = period * sum / n as f64;
    while 2 * n <= MAX_PERIODIC_NODES {
        let step = period / (2 * n) as f64;
        for k in 0..n {
            sum += eval(&f, step * (2 * k + 1) as f64, &mut evals)?;
        }
        n *= 2;
        let next = period * sum / n as f64;
        let err = (next - estimate).abs();
        estimate = next;
        if err <= tol {
            return Ok(QuadResult {
                value: estimate,
                abs_err_estimate: err,
                fn_evals: evals,
                converged: true,
            });
        }
    }
    Err(Error::Quadrature(format!(
        "periodic trapezoid not converged with {MAX_PERIODIC_NODES} nodes"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{elliptic_k, elliptic_k_complement, legendre_p};
    use std::f64::consts::PI;

    #[test]
    fn tanh_sinh_examples() {
        let r = tanh_sinh(|_| 1.0, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        let r = tanh_sinh(|m| elliptic_k(m).unwrap(), 0.0, 1.0, 1e-11).unwrap();
        assert!((r.value - 2.0).abs() < 1e-11);
        let r = tanh_sinh(
            |x| elliptic_k(x).unwrap() * elliptic_k_complement(x).unwrap(),
            0.0,
            1.0,
            1e-11,
        )
        .unwrap();
        assert!((r.value - PI.powi(3) / 8.0).abs() < 1e-11);
    }

    #[test]
    fn tanh_sinh_log_endpoint() {
        let r = tanh_sinh(f64::ln, 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value + 1.0).abs() < 1e-12);
        assert!(r.converged && r.abs_err_estimate <= 1e-13);
    }

    #[test]
    fn tanh_sinh_nan_is_error() {
        assert!(matches!(
            tanh_sinh(|x| if x > 0.7 { f64::NAN } else { x }, 0.0, 1.0, 1e-12),
            Err(Error::NonFiniteIntegrand { .. })
        ));
    }

    #[test]
    fn fn_evals_deterministic() {
        let f = |x: f64| (3.0 * x).sin() * x.exp();
        let a = tanh_sinh(f, -1.0, 2.0, 1e-12).unwrap();
        let b = tanh_sinh(f, -1.0, 2.0, 1e-12).unwrap();
        assert_eq!(a, b);
        let a = gauss_adaptive(f, -1.0, 2.0, 1e-12).unwrap();
        let b = gauss_adaptive(f, -1.0, 2.0, 1e-12).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn gk15_exact_on_degree_22() {
        for k in 0..=22 {
            let r = gauss_adaptive(|x| x.powi(k), 0.0, 1.0, 1.0).unwrap();
            assert!((r.value - 1.0 / (k as f64 + 1.0)).abs() < 1e-15, "k = {k}");
        }
    }

    #[test]
    fn gauss_adaptive_examples() {
        let r = gauss_adaptive(|x| legendre_p(3, 2.0 * x - 1.0), 0.0, 1.0, 1e-13).unwrap();
        assert!(r.value.abs() < 1e-15);
        let r = gauss_adaptive(|x| x * x * legendre_p(2, 2.0 * x - 1.0), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value - 1.0 / 30.0).abs() < 1e-15);
        let z: f64 = 0.5;
        let r = gauss_adaptive(
            |x| {
                let m = 16.0 * x * (1.0 - x) * z * z / (1.0 + z * z).powi(2);
                2.0 / PI * elliptic_k(m).unwrap() / (1.0 + z * z)
            },
            0.0,
            1.0,
            1e-13,
        )
        .unwrap();
        assert!((r.value - z.atan() / z).abs() < 1e-12);
    }

    #[test]
    fn gauss_adaptive_needs_subdivision() {
        let r = gauss_adaptive(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10).unwrap();
        let exact = 2.0 * (1.0 / 1e-2f64).atan() / 1e-2;
        assert!((r.value - exact).abs() / exact < 1e-12);
        let bad = gauss_adaptive(|x| (x - 0.3).abs().max(1e-300).powf(-0.9), 0.0, 1.0, 1e-14);
        assert!(matches!(bad, Err(Error::Quadrature(_))), "{bad:?}");
    }

    #[test]
    fn periodic_examples() {
        let r = periodic_trapezoid(f64::cos, 2.0 * PI, 1e-14).unwrap();
        assert!(r.value.abs() < 1e-14);
        let (t1, t2) = (0.4f64, 0.7f64);
        let r = periodic_trapezoid(
            |phi| legendre_p(3, t1.cos() * t2.cos() + t1.sin() * t2.sin() * phi.cos()),
            2.0 * PI,
            1e-14,
        )
        .unwrap();
        let target = legendre_p(3, t1.cos()) * legendre_p(3, t2.cos());
        assert!((r.value / (2.0 * PI) - target).abs() < 1e-14);
    }
}
