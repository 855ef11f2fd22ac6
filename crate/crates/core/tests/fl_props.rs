use fllab_core::fl::{
    cg_coefficient, dougall_coefficient, fl_partial_sum, moment_series_1, moment_series_2,
    product_expansion, DegreeNu, FLSeries, Family,
};
use fllab_core::hypergeom::gauss_second;
use fllab_core::numerics::{legendre_p, legendre_pnu_split, CentralBinomial};
use fllab_core::quadrature::gauss_adaptive;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn odd_degree_projections_vanish(nu in -3.0f64..3.0, k in 0usize..5) {
        let n = 2 * k + 1;
        let r = gauss_adaptive(
            |x| {
                let a = legendre_pnu_split(nu, x, 1.0 - x).unwrap();
                let b = legendre_pnu_split(nu, 1.0 - x, x).unwrap();
                a * b * legendre_p(n, 2.0 * x - 1.0)
            },
            0.0,
            1.0,
            1e-12,
        )
        .unwrap();
        prop_assert!(r.value.abs() <= 1e-9, "nu = {nu}, n = {n}: {}", r.value);
    }

    #[test]
    fn even_series_is_symmetric(nu in -2.0f64..3.0, k in 0u32..=1 << 20, n in 1usize..300) {
        // dyadic x keeps 1 - x and 2x - 1 exact
        let x = k as f64 / (1u32 << 20) as f64;
        let s = product_expansion(nu.into());
        prop_assert_eq!(fl_partial_sum(&s, x, n), fl_partial_sum(&s, 1.0 - x, n));
    }
}

#[test]
fn product_target_symmetric() {
    for nu in [0.3, -0.7, 1.6] {
        for x in [0.05, 0.2, 0.45] {
            let a = legendre_pnu_split(nu, x, 1.0 - x).unwrap()
                * legendre_pnu_split(nu, 1.0 - x, x).unwrap();
            let b = legendre_pnu_split(nu, 1.0 - x, x).unwrap()
                * legendre_pnu_split(nu, x, 1.0 - x).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn cg_continuous_across_integer_degrees() {
    for n in [0.0, 1.0, 2.0] {
        for m in 0..=4 {
            let at = cg_coefficient(DegreeNu::new(n), m);
            for d in [-1e-6, 1e-6] {
                let near = cg_coefficient(DegreeNu::new(n + d), m);
                assert!(
                    (near - at).abs() <= 1e-4,
                    "n = {n}{d:+e}, m = {m}: {near} vs {at}"
                );
            }
        }
    }
}

#[test]
fn first_moments_coincide() {
    let a = moment_series_2(1).unwrap();
    let b = moment_series_1(0);
    assert!((a - b).abs() <= 1e-13 * b);
}

#[test]
fn dougall_at_half_is_gauss_second() {
    for nu in [0.25, 0.5, -0.3] {
        let d = DegreeNu::new(nu);
        // odd degrees vanish at the midpoint and P_2k(0) = (-1)^k c_k;
        // the last two partial sums are averaged against the alternation
        let (mut sum, mut prev) = (0.0, 0.0);
        for (k, c) in CentralBinomial::new().take(1_000_000).enumerate() {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            prev = sum;
            sum += dougall_coefficient(d, 2 * k) * s * c;
        }
        let sum = 0.5 * (sum + prev);
        let g = gauss_second(nu);
        assert!((sum - g).abs() <= 1e-8, "nu = {nu}: {sum} vs {g}");
    }
}

#[test]
fn memo_is_order_independent() {
    let a = FLSeries::new(Family::CgProduct(0.3.into()));
    let b = FLSeries::new(Family::CgProduct(0.3.into()));
    let forward = a.coefficients(500);
    let _ = b.coefficient(499);
    assert_eq!(forward, b.coefficients(500));
}
