use proptest::prelude::*;
use sjk_core::families::{hermite_closed, hermite_egf, sj_closed_mm, sj_egf};
use sjk_core::lacunary::{
    coeff_bridge_check, hermite_lacunary_closed, hermite_lacunary_shift, lacunary_dilate, mu_slice,
    multisection_oracle, sj_lacunary_closed, sj_lacunary_closed_with, sj_lacunary_shift_gen,
    LacunaryParams, OddSumStart,
};
use sjk_core::poly::{CoeffSeries, Poly};
use sjk_core::scalar::{factorial, int, Rational};
use sjk_core::Result;

fn sj(n: u32) -> Result<Poly> {
    Ok(sj_closed_mm(n, &int(0)))
}

fn herm(n: u32) -> Result<Poly> {
    Ok(hermite_closed(n))
}

fn params(k: u32, l: u32, order: u32) -> LacunaryParams {
    LacunaryParams::new(k, l, order).unwrap()
}

#[test]
fn hermite_closed_forms_up_to_k5() {
    for k in 1..=5 {
        assert_eq!(
            hermite_lacunary_closed(k, 5).unwrap(),
            multisection_oracle(herm, params(k, 0, 5)).unwrap(),
            "K={k}"
        );
    }
}

#[test]
fn sj_closed_forms_up_to_k5() {
    for k in 1..=5 {
        assert_eq!(
            sj_lacunary_closed(k, 4).unwrap(),
            multisection_oracle(sj, params(k, 0, 4)).unwrap(),
            "K={k}"
        );
    }
}

#[test]
fn odd_sum_start_one_fails_for_every_odd_k() {
    for k in [3, 5] {
        let oracle = multisection_oracle(sj, params(k, 0, 2)).unwrap();
        assert_ne!(
            sj_lacunary_closed_with(k, 2, OddSumStart::One).unwrap(),
            oracle,
            "K={k}"
        );
        assert_eq!(
            sj_lacunary_closed_with(k, 2, OddSumStart::Zero).unwrap(),
            oracle,
            "K={k}"
        );
    }
    // even K does not depend on the option
    assert_eq!(
        sj_lacunary_closed_with(2, 3, OddSumStart::One).unwrap(),
        sj_lacunary_closed_with(2, 3, OddSumStart::Zero).unwrap()
    );
}

#[test]
fn shifted_generators_give_every_slice() {
    for k in 1..=3 {
        let h = hermite_lacunary_shift(k, 4, 3).unwrap();
        let s = sj_lacunary_shift_gen(k, 4, 3).unwrap();
        for l in 0..=4 {
            assert_eq!(
                mu_slice(&h, l),
                multisection_oracle(herm, params(k, l, 3)).unwrap(),
                "hermite K={k} L={l}"
            );
            assert_eq!(
                mu_slice(&s, l),
                multisection_oracle(sj, params(k, l, 3)).unwrap(),
                "sj K={k} L={l}"
            );
        }
    }
}

#[test]
fn coefficient_bridge_grid() {
    for k in 1..=3 {
        for l in 0..=2 {
            for r in 0..=3 {
                for m in 0..=3 {
                    let (g, rhs) = coeff_bridge_check(k, l, r, m).unwrap();
                    assert_eq!(g, rhs, "K={k} L={l} r={r} m={m}");
                }
            }
        }
    }
}

#[test]
fn dilation_of_full_egf_is_the_oracle() {
    let sj_x = sj_egf(12).unwrap().map(|p| p.eval("y", &int(1)));
    for k in 1..=4 {
        assert_eq!(
            lacunary_dilate(&hermite_egf(12), k).unwrap(),
            multisection_oracle(herm, params(k, 0, 12 / k)).unwrap()
        );
        assert_eq!(
            lacunary_dilate(&sj_x, k).unwrap(),
            multisection_oracle(sj, params(k, 0, 12 / k)).unwrap()
        );
    }
    assert!(lacunary_dilate(&sj_x, 0).is_err());
}

fn nth_derivative(s: &CoeffSeries, n: u32) -> CoeffSeries {
    (0..n).fold(s.clone(), |acc, _| acc.derivative())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// (∂_λ)^L ∘ L̂_K = L̂_K ∘ (∂_λ)^{KL} on arbitrary rational series.
    #[test]
    fn derivative_commutes_with_dilation(
        coeffs in prop::collection::vec((-9i64..10, 1i64..6), 13..=13),
        k in 1u32..=3,
        l in 0u32..=2,
    ) {
        let s = CoeffSeries::new(coeffs.iter().map(|&(n, d)| Poly::from_rational(Rational::new(n.into(), d.into()))).collect());
        let lhs = nth_derivative(&lacunary_dilate(&s, k).unwrap(), l);
        let rhs = lacunary_dilate(&nth_derivative(&s, k * l), k).unwrap();
        let n = lhs.order().min(rhs.order());
        prop_assert_eq!(lhs.truncate(n), rhs.truncate(n));
    }

    /// The multisection oracle picks the λ^n/n! coefficient `p_{Kn+L}` of the
    /// full generating function.
    #[test]
    fn oracle_agrees_with_egf_coefficients(k in 1u32..=4, l in 0u32..=3, n in 0u32..=2) {
        let full = hermite_egf(k * n + l);
        let idx = (k * n + l) as usize;
        let picked = full.coeff(idx).scale_rat(&Rational::new(factorial(idx as u64), factorial(n as u64)));
        let oracle = multisection_oracle(herm, params(k, l, n)).unwrap();
        prop_assert_eq!(oracle.coeff(n as usize), &picked);
    }
}
