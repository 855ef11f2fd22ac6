//! Summation of slowly convergent series.
//!
//! Alternating sums are accelerated with the Chebyshev-weighted scheme of
//! Cohen, Rodriguez Villegas and Zagier (error ~ (3 + √8)^-n). Monotone
//! sums are taken directly with a tail bound, and `raw_partial_sums`
//! exposes the untransformed partial sums for oracle checks.

use std::fmt;

use crate::error::{Error, Result};

/// Number of leading terms whose signs are checked before acceleration.
pub const SIGN_CHECK_TERMS: usize = 32;

/// Largest acceleration order tried before giving up.
pub const MAX_ACCEL_ORDER: usize = 128;

/// Tail safety factor for algebraically decaying direct sums.
pub const DIRECT_TAIL_FACTOR: f64 = 10.0;

/// Term ratio below which a direct sum is treated as geometrically convergent.
pub const GEOMETRIC_RATIO: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignPattern {
    Alternating,
    Positive,
    Oscillating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMethod {
    Direct,
    AlternatingAccel,
    RawOracle,
    /// Value fixed by continuity where every summand form is indeterminate.
    Limit,
}

impl fmt::Display for SumMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumMethod::Direct => "direct",
            SumMethod::AlternatingAccel => "alternating_accel",
            SumMethod::RawOracle => "raw_oracle",
            SumMethod::Limit => "limit",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    pub method: SumMethod,
    /// Absolute error estimate.
    pub tail_estimate: f64,
    pub converged: bool,
}

/// Source of summands `k ↦ t_k` with a declared sign pattern.
///
/// Terms are produced in index order and memoized, so a sequential source
/// (one that keeps a running product, say) is only ever asked for
/// `0, 1, 2, ...` once each.
pub struct TermGenerator<'a> {
    pattern: SignPattern,
    source: Box<dyn FnMut(usize) -> f64 + 'a>,
    cache: Vec<f64>,
}

impl<'a> TermGenerator<'a> {
    /// Generator from a pure index function.
    pub fn new(pattern: SignPattern, f: impl Fn(usize) -> f64 + 'a) -> Self {
        Self {
            pattern,
            source: Box::new(f),
            cache: Vec::new(),
        }
    }

    /// Generator from a stateful closure that is called with `0, 1, 2, ...`.
    pub fn sequential(pattern: SignPattern, f: impl FnMut(usize) -> f64 + 'a) -> Self {
        Self {
            pattern,
            source: Box::new(f),
            cache: Vec::new(),
        }
    }

    pub fn pattern(&self) -> SignPattern {
        self.pattern
    }

    pub fn term(&mut self, k: usize) -> f64 {
        while self.cache.len() <= k {
            let i = self.cache.len();
            let t = (self.source)(i);
            self.cache.push(t);
        }
        self.cache[k]
    }
}

/// Σ_{k≥0} (-1)^k a_k with the order-`n` Chebyshev weights.
fn cvz(a: impl Fn(usize) -> f64, n: usize) -> f64 {
    let nf = n as f64;
    let d = (3.0 + 8f64.sqrt()).powf(nf);
    let d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..n {
        let kf = k as f64;
        c = b - c;
        s += c * a(k);
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

fn check_alternating(g: &mut TermGenerator<'_>, start: usize) -> Result<()> {
    if g.pattern() != SignPattern::Alternating {
        return Err(Error::SignPattern { index: start });
    }
    for k in start..start + SIGN_CHECK_TERMS {
        let (a, b) = (g.term(k), g.term(k + 1));
        if !(a * b < 0.0) {
            return Err(Error::SignPattern { index: k + 1 });
        }
    }
    Ok(())
}

/// Accelerated sum of an alternating series, starting at order `n` and
/// doubling until two successive orders agree to `tol · max(1, |S|)`.
pub fn sum_alternating_accel(
    g: &mut TermGenerator<'_>,
    n: usize,
    tol: f64,
) -> Result<SeriesResult> {
    sum_alternating_accel_from(g, 0, n, tol)
}

/// Like [`sum_alternating_accel`], but the terms below `start` are added
/// directly and only the tail from `start` on has to alternate.
pub fn sum_alternating_accel_from(
    g: &mut TermGenerator<'_>,
    start: usize,
    n: usize,
    tol: f64,
) -> Result<SeriesResult> {
    if n < 4 {
        return Err(Error::Precondition(format!(
            "acceleration order must be at least 4, got {n}"
        )));
    }
    check_alternating(g, start)?;
    let head: f64 = (0..start).map(|k| g.term(k)).sum();
    let lead_sign = g.term(start).signum();

    let mut order = n;
    // fill the cache once per order so the closure below can borrow it
    g.term(start + 2 * order);
    let mut prev = {
        let cache = &g.cache;
        cvz(
            |j| lead_sign * if j % 2 == 0 { 1.0 } else { -1.0 } * cache[start + j],
            order,
        )
    };
    loop {
        let next_order = 2 * order;
        g.term(start + next_order);
        let cache = &g.cache;
        let next = cvz(
            |j| lead_sign * if j % 2 == 0 { 1.0 } else { -1.0 } * cache[start + j],
            next_order,
        );
        let value = head + lead_sign * next;
        let est = (next - prev).abs();
        if est <= tol * value.abs().max(1.0) {
            return Ok(SeriesResult {
                value,
                terms_used: start + next_order,
                method: SumMethod::AlternatingAccel,
                tail_estimate: est,
                converged: true,
            });
        }
        if next_order >= MAX_ACCEL_ORDER {
            return Err(Error::AccelerationStalled {
                order: next_order,
                estimate: est,
            });
        }
        prev = next;
        order = next_order;
    }
}

/// Plain summation. Stops once three consecutive terms satisfy
/// `10 |t| ≤ tol · max(1, |S|)`; the tail estimate is `10 |t_last|`.
pub fn sum_direct(g: &mut TermGenerator<'_>, tol: f64, max_terms: usize) -> Result<SeriesResult> {
    let mut sum = 0.0;
    let mut quiet = 0;
    let mut prev = f64::INFINITY;
    let mut tail = f64::INFINITY;
    for k in 0..max_terms {
        let term = g.term(k);
        sum += term;
        let t = term.abs();
        let r = t / prev;
        // geometric decay gets its own bound; anything slower uses the safety factor
        tail = if r <= GEOMETRIC_RATIO {
            t * r / (1.0 - r)
        } else {
            DIRECT_TAIL_FACTOR * t
        };
        prev = t;
        let scale = tol * sum.abs().max(1.0);
        if t < scale && tail <= scale {
            quiet += 1;
            if quiet == 3 {
                return Ok(SeriesResult {
                    value: sum,
                    terms_used: k + 1,
                    method: SumMethod::Direct,
                    tail_estimate: tail,
                    converged: true,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::MaxTermsExhausted {
        terms: max_terms,
        estimate: tail,
    })
}

/// Partial sums `S_1, ..., S_N` exactly as accumulated.
pub fn raw_partial_sums(g: &mut TermGenerator<'_>, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut sum = 0.0;
    for k in 0..n {
        sum += g.term(k);
        out.push(sum);
    }
    out
}

/// One Richardson step for `S_N = S + A / N^order + ...`, given `S_N`
/// and `S_{N/ratio}`.
pub fn richardson(fine: f64, coarse: f64, ratio: f64, order: f64) -> f64 {
    let w = ratio.powf(order);
    (w * fine - coarse) / (w - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn alt(f: impl Fn(f64) -> f64 + 'static) -> TermGenerator<'static> {
        TermGenerator::new(SignPattern::Alternating, move |k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            s * f(k as f64)
        })
    }

    #[test]
    fn accelerated_log2_and_leibniz() {
        let r = sum_alternating_accel(&mut alt(|k| 1.0 / (k + 1.0)), 20, 1e-14).unwrap();
        assert!((r.value - LN_2).abs() < 1e-12);
        assert!(r.converged);
        assert_eq!(r.method, SumMethod::AlternatingAccel);
        let r = sum_alternating_accel(&mut alt(|k| 1.0 / (2.0 * k + 1.0)), 20, 1e-14).unwrap();
        assert!((r.value - PI / 4.0).abs() < 1e-12);
        assert!(r.tail_estimate <= 1e-14 * r.value.abs().max(1.0));
    }

    #[test]
    fn accel_with_irregular_head() {
        // 5 + 3 + Σ_{k≥0} (-1)^k/(k+1); the head does not alternate
        let mut g = TermGenerator::new(SignPattern::Alternating, |k| match k {
            0 => 5.0,
            1 => 3.0,
            _ => {
                let j = (k - 2) as f64;
                let s = if (k - 2) % 2 == 0 { 1.0 } else { -1.0 };
                s / (j + 1.0)
            }
        });
        let r = sum_alternating_accel_from(&mut g, 2, 8, 1e-14).unwrap();
        assert!((r.value - (8.0 + LN_2)).abs() < 1e-12);
    }

    #[test]
    fn sign_violation_is_reported() {
        let mut g = TermGenerator::new(SignPattern::Alternating, |k| 1.0 / (k as f64 + 1.0));
        assert!(matches!(
            sum_alternating_accel(&mut g, 8, 1e-12),
            Err(Error::SignPattern { .. })
        ));
        let mut g = TermGenerator::new(SignPattern::Positive, |k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            s / (k as f64 + 1.0)
        });
        assert!(matches!(
            sum_alternating_accel(&mut g, 8, 1e-12),
            Err(Error::SignPattern { .. })
        ));
    }

    #[test]
    fn order_below_four_rejected() {
        let mut g = alt(|k| 1.0 / (k + 1.0));
        assert!(sum_alternating_accel(&mut g, 3, 1e-12).is_err());
    }

    #[test]
    fn direct_geometric() {
        let mut g = TermGenerator::new(SignPattern::Positive, |k| 0.5f64.powi(k as i32));
        let r = sum_direct(&mut g, 1e-12, 1000).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        assert!(r.terms_used <= 45);
        assert!(r.tail_estimate <= 1e-12 * r.value);
    }

    #[test]
    fn direct_exhaustion() {
        let mut g = TermGenerator::new(SignPattern::Positive, |k| 1.0 / (k as f64 + 1.0));
        assert!(matches!(
            sum_direct(&mut g, 1e-12, 500),
            Err(Error::MaxTermsExhausted { terms: 500, .. })
        ));
    }

    #[test]
    fn raw_sums() {
        let mut g = TermGenerator::new(SignPattern::Positive, |_| 1.0);
        let s = raw_partial_sums(&mut g, 5);
        assert_eq!(s, vec![1.0, 2.0, 3.0, 4.0, 5.0]);

        let mut g = alt(|k| 1.0 / (2.0 * k + 1.0));
        let s = raw_partial_sums(&mut g, 10_001);
        // direct 10-term Leibniz sum
        let ten: f64 = (0..10)
            .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 } / (2.0 * k as f64 + 1.0))
            .sum();
        assert_eq!(s[9], ten);
        assert!((s[9] - 0.760_459_904_732_350_8).abs() < 1e-15);
        for n in 1..=10_000 {
            let next = 1.0 / (2.0 * n as f64 + 1.0);
            assert!((PI / 4.0 - s[n - 1]).abs() <= next + 1e-15);
        }
    }

    #[test]
    fn sequential_source_called_in_order() {
        let mut seen = Vec::new();
        {
            let mut g = TermGenerator::sequential(SignPattern::Positive, |k| {
                seen.push(k);
                1.0
            });
            g.term(3);
            g.term(1);
            g.term(5);
        }
        assert_eq!(seen, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn richardson_removes_leading_term() {
        let s = |n: f64| 1.0 + 3.0 / n + 1.0 / (n * n);
        let r = richardson(s(1000.0), s(500.0), 2.0, 1.0);
        assert!((r - 1.0).abs() < 1e-5);
    }

    #[test]
    fn reproducible_bits() {
        let a = sum_alternating_accel(&mut alt(|k| (k + 2.0).powf(-1.5)), 8, 1e-14).unwrap();
        let b = sum_alternating_accel(&mut alt(|k| (k + 2.0).powf(-1.5)), 8, 1e-14).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
