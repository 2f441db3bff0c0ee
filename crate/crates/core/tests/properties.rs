use fanloop::catalog;
use fanloop::census::{self, CensusFilter, CensusQuery};
use fanloop::haar::{self, LoopFunction, TranslateMode};
use fanloop::laws::{self, LawStatus};
use fanloop::lp::{self, LpOptions, LpProblem, LpStatus, Strategy as LpStrategy};
use fanloop::products::{self, cayley_dickson_basis_loop};
use fanloop::quotient;
use fanloop::{classify, fan, FiniteLoop, Rational};
use proptest::prelude::*;
use proptest::sample::Index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sample_loops() -> Vec<FiniteLoop> {
    let mut out: Vec<FiniteLoop> = catalog::small_groups().into_iter().map(|(_, g)| g).collect();
    out.push(cayley_dickson_basis_loop(2).unwrap());
    out.push(cayley_dickson_basis_loop(3).unwrap());
    out.extend(census::enumerate(&CensusQuery::new(5, CensusFilter::NonFan).with_limit(3)).unwrap());
    out
}

fn arb_loop() -> impl Strategy<Value = FiniteLoop> {
    let loops = sample_loops();
    any::<Index>().prop_map(move |i| i.get(&loops).clone())
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(p, q)| Rational::new(p, q))
}

fn shuffle(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn law_status_is_invariant_under_relabeling(g in arb_loop(), seed in any::<u64>()) {
        let h = g.permuted(&shuffle(g.order(), seed));
        let before = laws::check_all(&g);
        let after = laws::check_all(&h);
        for (a, b) in before.iter().zip(&after) {
            prop_assert_eq!(&a.law_id, &b.law_id);
            prop_assert_eq!(a.status, b.status, "{}", a.law_id);
        }
    }

    #[test]
    fn classification_is_invariant_under_relabeling(g in arb_loop(), seed in any::<u64>()) {
        let perm = shuffle(g.order(), seed);
        let h = g.permuted(&perm);
        let (a, b) = (classify(&g), classify(&h));
        prop_assert_eq!(a.is_group, b.is_group);
        prop_assert_eq!(a.is_fan_loop, b.is_fan_loop);
        prop_assert_eq!(a.is_central_fan_loop, b.is_central_fan_loop);
        prop_assert_eq!(a.fan.len(), b.fan.len());
        prop_assert_eq!(a.parts.nucleus.len(), b.parts.nucleus.len());
        let mapped: Vec<&str> = a.fan.iter().map(|x| g.label(x)).collect();
        for l in mapped {
            prop_assert!(b.fan.contains(h.index_of(l).unwrap()));
        }
    }

    #[test]
    fn associators_recover_products(g in arb_loop(), a in any::<Index>(), b in any::<Index>(), c in any::<Index>()) {
        let n = g.order();
        let (a, b, c) = (a.index(n), b.index(n), c.index(n));
        let left = g.mul(g.mul(a, b), c);
        let right = g.mul(a, g.mul(b, c));
        prop_assert_eq!(g.mul(g.t_assoc(a, b, c), right), left);
        prop_assert_eq!(g.mul(right, g.p_assoc(a, b, c)), left);
    }

    #[test]
    fn fan_quotient_is_a_group(g in arb_loop()) {
        prop_assume!(classify(&g).is_fan_loop);
        let q = quotient::quotient(&g, &fan(&g)).unwrap();
        prop_assert!(q.is_associative());
        prop_assert_eq!(q.order() * fan(&g).len(), g.order());
    }

    #[test]
    fn direct_product_fan_is_componentwise(a in arb_loop(), b in arb_loop()) {
        prop_assume!(a.order() * b.order() <= 48);
        let g = products::direct_product(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(fan(&g), products::product_set(&[fan(&a), fan(&b)]));
        prop_assert_eq!(classify(&g).is_fan_loop, classify(&a).is_fan_loop && classify(&b).is_fan_loop);
    }

    #[test]
    fn lp_certificates_check_out(
        rows in 1usize..5,
        cols in 1usize..5,
        data in prop::collection::vec(arb_rational(), 40),
    ) {
        let mut it = data.into_iter().cycle();
        let objective: Vec<Rational> = (0..cols).map(|_| it.next().unwrap().abs()).collect();
        let constraints: Vec<Vec<Rational>> = (0..rows).map(|_| (0..cols).map(|_| it.next().unwrap()).collect()).collect();
        let rhs: Vec<Rational> = (0..rows).map(|_| it.next().unwrap()).collect();
        let p = LpProblem::new(objective, constraints, rhs);
        let auto = lp::solve(&p);
        let exact = lp::solve_with(&p, LpOptions { strategy: LpStrategy::ExactOnly, ..LpOptions::default() });
        let primal = lp::solve_with(&p, LpOptions { strategy: LpStrategy::Primal, ..LpOptions::default() });
        prop_assert_eq!(auto.status, exact.status);
        prop_assert_eq!(auto.status, primal.status);
        if auto.status == LpStatus::Optimal {
            prop_assert!(lp::verify_certificate(&p, &auto).is_ok());
            prop_assert!(lp::verify_certificate(&p, &primal).is_ok());
            prop_assert_eq!(&auto.optimum, &exact.optimum);
            prop_assert_eq!(&auto.optimum, &primal.optimum);
        }
    }

    #[test]
    fn lp_scales_linearly(data in prop::collection::vec(0i64..5, 9), s in 1i64..7) {
        let r = |i: usize| Rational::from(data[i]);
        let p = LpProblem::new(
            vec![Rational::one(), Rational::one()],
            vec![vec![r(0), r(1)], vec![r(2), r(3)]],
            vec![r(4), r(5)],
        );
        let base = lp::solve(&p);
        let scaled = lp::solve(&p.scaled(&Rational::from(s)));
        prop_assert_eq!(base.status, scaled.status);
        if let (Some(a), Some(b)) = (base.optimum, scaled.optimum) {
            prop_assert_eq!(&a * &Rational::from(s), b);
        }
    }

    #[test]
    fn covering_is_monotone_and_homogeneous(g in arb_loop(), seed in any::<u64>(), k in 1i64..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = g.order();
        let f = haar::random_function(n, &mut rng);
        let extra = haar::random_function(n, &mut rng);
        let phi = haar::random_function(n, &mut rng);
        let base = haar::covering_number(&g, &f, &phi).unwrap();
        let bigger = haar::covering_number(&g, &f.add(&extra), &phi).unwrap();
        prop_assert!(base <= bigger);
        let scaled = haar::covering_number(&g, &f.scale(&Rational::from(k)), &phi).unwrap();
        prop_assert_eq!(scaled, &base * &Rational::from(k));
        let right = haar::covering_number(&g, &f, &phi.scale(&Rational::from(k))).unwrap();
        prop_assert_eq!(&right * &Rational::from(k), base);
    }

    #[test]
    fn haar_limit_is_left_invariant(g in arb_loop(), seed in any::<u64>()) {
        prop_assume!(classify(&g).is_fan_loop);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f0 = haar::random_upsilon(&g, &fan(&g), &mut rng);
        let j = haar::haar_limit(&g, &f0).unwrap();
        let f = haar::random_function(g.order(), &mut rng);
        let v = j.value(&f).unwrap();
        prop_assert_eq!(&v, &(f.sum() / f0.sum()));
        for b in g.elements() {
            prop_assert_eq!(j.value(&haar::translate(&g, &f, b, TranslateMode::Left)).unwrap(), v.clone());
        }
    }
}

#[test]
fn census_matches_known_counts() {
    let counts: Vec<u64> = (1..=6).map(|n| census::count_reduced(n).unwrap()).collect();
    assert_eq!(counts, [1, 1, 1, 4, 56, 9408]);
}

#[test]
fn census_order_five_splits_by_filter() {
    let q = |f| census::enumerate(&CensusQuery::new(5, f)).unwrap().count();
    assert_eq!(q(CensusFilter::FanOnly) + q(CensusFilter::NonFan), 56);
    assert!(q(CensusFilter::InverseSplit) > 0);
}

#[test]
fn octonion_basis_loop_summary() {
    let g = cayley_dickson_basis_loop(3).unwrap();
    let a = classify(&g);
    assert_eq!(g.order(), 16);
    assert!(a.is_fan_loop && a.is_central_fan_loop && !a.is_group);
    assert_eq!(a.fan.len(), 2);
    for (law, status) in laws::check_all(&g).iter().map(|r| (&r.law_id, r.status)) {
        if laws::CORE_LAW_IDS.contains(&law.as_str()) {
            assert_eq!(status, LawStatus::Holds, "{law}");
        }
    }
}

#[test]
fn point_mass_covering_is_the_sum() {
    let g = cayley_dickson_basis_loop(2).unwrap();
    let f = LoopFunction::new((0..8).map(|i| Rational::new(i, 3)).collect()).unwrap();
    for h in [Rational::one(), Rational::new(5, 2)] {
        let phi = LoopFunction::point_mass(8, 0, h.clone());
        assert_eq!(haar::covering_number(&g, &f, &phi).unwrap(), f.sum() / h);
    }
}
