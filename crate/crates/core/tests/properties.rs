use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use primcyc::algebra::{enum_irreducibles, factor, Elem, FieldSpec, Poly};
use primcyc::cycleindex::{centralizer_order, g_series, gl_order, icycle_rhs, type_census, Partition, VariableAssignment};
use primcyc::matrixlab::{
    blowup, char_poly, format_matrix, is_primary_cyclic_f, is_primary_cyclic_k, lambda_partition, min_poly,
    parse_matrix, primary_components, Matrix,
};
use primcyc::rational::{int, Rational};
use primcyc::series::{self, Interval, SeriesParams, TruncatedPowerSeries};

fn specs() -> Vec<FieldSpec> {
    [(2, 2), (3, 2), (2, 3), (4, 2), (2, 4)].iter().map(|&(q, b)| FieldSpec::new(q, b).unwrap()).collect()
}

fn matrix_from(spec: &FieldSpec, n: usize, raw: &[u32]) -> Matrix {
    let q = spec.ext_size() as u32;
    Matrix::from_entries(n, raw[..n * n].iter().map(|&x| Elem(x % q)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn blowup_is_a_ring_homomorphism(which in 0usize..5, n in 1usize..=3, a in prop::collection::vec(any::<u32>(), 9), b in prop::collection::vec(any::<u32>(), 9)) {
        let spec = &specs()[which];
        let (k, f) = (spec.ext(), spec.base());
        let x = matrix_from(spec, n, &a);
        let y = matrix_from(spec, n, &b);
        prop_assert_eq!(blowup(spec, &x.mul(k, &y)), blowup(spec, &x).mul(f, &blowup(spec, &y)));
        prop_assert_eq!(blowup(spec, &x.add(k, &y)), blowup(spec, &x).add(f, &blowup(spec, &y)));
        prop_assert_eq!(blowup(spec, &Matrix::identity(n)), Matrix::identity(n * spec.b() as usize));
    }

    #[test]
    fn primary_structure(which in 0usize..5, n in 1usize..=4, a in prop::collection::vec(any::<u32>(), 16)) {
        let spec = &specs()[which];
        let k = spec.ext();
        let x = matrix_from(spec, n, &a);
        let comps = primary_components(k, &x);
        let total: usize = comps.iter().map(|c| c.partition.size() as usize * c.poly.deg()).sum();
        prop_assert_eq!(total, n);
        for c in &comps {
            prop_assert_eq!(c.basis.rows(), c.partition.size() as usize * c.poly.deg());
        }
        // The minimal polynomial annihilates X and no proper divisor does.
        let m = min_poly(k, &x);
        prop_assert!(m.divides(k, &char_poly(k, &x)));
        prop_assert!(x.eval_poly(k, &m).entries().iter().all(|e| e.is_zero()));
        for (h, _) in factor(k, &m) {
            let (smaller, _) = m.divrem(k, &h);
            prop_assert!(!x.eval_poly(k, &smaller).entries().iter().all(|e| e.is_zero()));
        }
        let text = format_matrix(spec, &x);
        prop_assert_eq!(parse_matrix(spec, &text).unwrap(), x);
    }

    #[test]
    fn coefficient_power_bound(which in 0usize..3, a2_choice in 0u64..3, t in 1u64..=4) {
        let (q, b) = [(2u64, 2u32), (3, 2), (2, 3)][which];
        let p = SeriesParams::new(q, b).unwrap();
        let order = 20;
        let l = series::l_series(&p, order);
        let a2 = int([2, 3, p.big_q as i64][a2_choice as usize]);
        let a1 = (0..=order).map(|c| l.coeff(c).abs() * num_traits::pow(a2.clone(), c)).max().unwrap();
        let lt = l.pow(t);
        for c in 0..=order {
            let bound = num_traits::pow(a1.clone(), t as usize)
                * num_traits::pow(int(c as i64 + 1), t as usize - 1)
                / num_traits::pow(a2.clone(), c);
            prop_assert!(lt.coeff(c).abs() <= bound);
        }
    }

    #[test]
    fn interval_ops_contain_pointwise(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50, wa in 0i64..20, wc in 0i64..20, s in 0i64..=4) {
        let x = Rational::new(a.into(), b.into());
        let y = Rational::new(c.into(), d.into());
        let ia = Interval::new(&x - Rational::new(wa.into(), 7.into()), &x + Rational::new(wa.into(), 11.into()));
        let ib = Interval::new(&y - Rational::new(wc.into(), 5.into()), &y + Rational::new(wc.into(), 3.into()));
        // A point of each interval chosen by s.
        let px = &ia.lo + ia.width() * Rational::new(s.into(), 4.into());
        let py = &ib.hi - ib.width() * Rational::new(s.into(), 4.into());
        prop_assert!(ia.add(&ib).contains(&(&px + &py)));
        prop_assert!(ia.sub(&ib).contains(&(&px - &py)));
        prop_assert!(ia.mul(&ib).contains(&(&px * &py)));
        prop_assert!(ia.mul(&ib).round_out(8).contains(&(&px * &py)));
        prop_assert!(ia.pow(3, 16).contains(&(&px * &px * &px)));
    }

    #[test]
    fn series_inverse(c in prop::collection::vec((-9i64..9, 1i64..9), 1..8), lead in 1i64..5) {
        let mut coeffs: Vec<Rational> = c.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect();
        coeffs[0] = int(lead);
        let x = TruncatedPowerSeries::from_coeffs(coeffs, 12);
        prop_assert_eq!(x.mul(&x.inv().unwrap()), TruncatedPowerSeries::one(12));
    }

    #[test]
    fn partition_conjugation(parts in prop::collection::vec(1u32..8, 0..8)) {
        let l = Partition::new(parts);
        let c = l.conjugate();
        prop_assert_eq!(c.size(), l.size());
        prop_assert_eq!(c.conjugate(), l.clone());
        prop_assert_eq!(c.len() as u32, l.largest());
    }
}

#[test]
fn dual_criterion_exhaustive() {
    for (q, b, c) in [(2u64, 2u32, 1usize), (2, 2, 2), (3, 2, 1), (2, 3, 1)] {
        let spec = FieldSpec::new(q, b).unwrap();
        let irr = enum_irreducibles(spec.base(), b).unwrap();
        let big_q = spec.ext_size();
        for i in 0..big_q.pow((c * c) as u32) {
            let x = Matrix::from_index(c, big_q, i);
            for f in &irr {
                let kf = is_primary_cyclic_k(&spec, &x, f).unwrap();
                let ff = is_primary_cyclic_f(&spec, &x, f).unwrap();
                assert_eq!(kf.is_cyclic, ff.is_cyclic, "(q,b)=({q},{b}) X={}", format_matrix(&spec, &x));
                assert_eq!(kf.witness_g.is_some(), kf.is_cyclic);
            }
        }
    }
}

#[test]
fn large_degree_has_empty_partition() {
    let spec = FieldSpec::new(2, 2).unwrap();
    let k = spec.ext();
    let x = Matrix::from_index(2, 4, 123);
    for h in enum_irreducibles(k, 3).unwrap() {
        assert!(lambda_partition(k, &x, &h).unwrap().is_empty());
    }
}

#[test]
fn class_count_conservation() {
    for (q, n_max) in [(2u64, 3u32), (3, 3), (4, 2)] {
        let spec = if q == 4 { FieldSpec::new(2, 2).unwrap() } else { FieldSpec::new(q, 2).unwrap() };
        let f = if q == 4 { spec.ext() } else { spec.base() };
        for n in 1..=n_max {
            let census = type_census(f, n).unwrap();
            let gl = gl_order(n, q);
            let mut total = BigUint::zero();
            for (ty, count) in &census {
                let denom = ty.iter().fold(BigUint::one(), |acc, (h, l)| acc * centralizer_order(l, h.deg() as u32, q));
                assert!((&gl % &denom).is_zero());
                assert_eq!(BigUint::from(*count), &gl / &denom, "q={q} n={n} type {ty:?}");
                total += &gl / &denom;
            }
            assert_eq!(total, BigUint::from(q).pow(n * n));
        }
    }
}

#[test]
fn g_product_is_p() {
    for q in [2u64, 3] {
        let spec = FieldSpec::new(q, 2).unwrap();
        let f = spec.base();
        let order = 6;
        let mut acc = TruncatedPowerSeries::one(order);
        for d in 1..=order as u32 {
            let g = g_series(q, d, order / d as usize).unwrap();
            // G(u^d): spread coefficients out.
            let mut spread = vec![Rational::zero(); order + 1];
            for (i, c) in g.coeffs().iter().enumerate() {
                spread[i * d as usize] = c.clone();
            }
            let gd = TruncatedPowerSeries::from_coeffs(spread, order);
            acc = acc.mul(&gd.pow(enum_irreducibles(f, d).unwrap().len() as u64));
        }
        assert_eq!(acc, series::p_series_q(q, order));
        let rhs = icycle_rhs(f, order, &BTreeSet::new(), &VariableAssignment::all_ones()).unwrap();
        assert_eq!(rhs, acc);
    }
}

#[test]
fn euler_and_l_restatement() {
    for (q, b) in [(2u64, 2u32), (3, 2), (2, 3), (5, 2), (4, 3)] {
        let p = SeriesParams::new(q, b).unwrap();
        let order = 25;
        let prod = series::p_series(&p, order)
            .mul(&TruncatedPowerSeries::one_minus_u_pow(1, order))
            .mul(&series::l_series(&p, order));
        assert_eq!(prod, TruncatedPowerSeries::one(order));
        for a in series::pcb_proportions(&p, order) {
            assert!(a >= int(0) && a <= int(1));
        }
    }
}

#[test]
fn pcbi_counts_by_subset_size() {
    // |pcbI| depends only on |I|: matrices over GF(9) with c = 1, N = 3.
    let r = primcyc::census::inclusion_exclusion_check(3, 2, 1, primcyc::census::BRUTE_GUARD).unwrap();
    assert!(r.size_independent && r.holds && r.series_agrees);
    let expect: Vec<BigInt> = vec![2.into(), 0.into(), 0.into()];
    assert_eq!(r.pcbi.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>(), expect);
}

#[test]
fn polynomial_text_round_trip() {
    for spec in specs() {
        for d in 1..=2 {
            for g in enum_irreducibles(spec.ext(), d).unwrap().into_iter().take(40) {
                let s = spec.format_ext_poly(&g);
                assert_eq!(spec.parse_ext_poly(&s).unwrap(), g, "{s}");
            }
        }
        for f in enum_irreducibles(spec.base(), spec.b()).unwrap() {
            let s = spec.format_base_poly(&f);
            assert_eq!(spec.parse_base_poly(&s).unwrap(), f);
            let split: Vec<Poly> = spec.split_over_extension(&f).unwrap();
            let prod = split.iter().fold(Poly::one(), |acc, g| acc.mul(spec.ext(), g));
            assert_eq!(spec.restrict_poly(&prod), Some(f));
        }
    }
}
