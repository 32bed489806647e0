use proptest::prelude::*;

use hodgecalc::algebra::{combine, equivalent, normal_form, solve_in_span};
use hodgecalc::bundle::{c1_sym, dualize, push_u, weight_from_divisor, BundleDescriptor, Dualized, HClass};
use hodgecalc::catalog::{
    boundary_pullback, expand_psi, hurwitz_psi, relations, same_class, structural_relations, symmetrize,
};
use hodgecalc::good_model::{d_class, e_class, fiber_degrees, n_class, section_restrict, strata, GMClass};
use hodgecalc::incidence::{gamma_push, gheorghita_tarasca, ksz_class, Direction};
use hodgecalc::ledger::boundary_order_profile;
use hodgecalc::plethysm::{discriminant_weight, hyperelliptic_pullback_weight, sym_sym2};
use hodgecalc::rational::{binomial, q, qi};
use hodgecalc::{FormalClass, Generator, Mark, Rational, SpaceId};

use Generator::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn generators(s: SpaceId) -> Vec<Generator> {
    let mut v = vec![Lambda];
    v.extend(s.boundary());
    match s {
        SpaceId::Mbar(_) => v.push(Kappa1),
        SpaceId::Hurwitz(g) => {
            v.push(Generator::psi());
            v.extend((2..=g).flat_map(|j| [Generator::plus(j), Generator::minus(j)]));
        }
        SpaceId::Hbar(_) => {}
    }
    v
}

fn class_on(s: SpaceId) -> impl Strategy<Value = FormalClass> {
    let gens = generators(s);
    let n = gens.len();
    prop::collection::vec(rational(), n).prop_map(move |cs| FormalClass::of(s, gens.clone().into_iter().zip(cs)))
}

fn space() -> impl Strategy<Value = SpaceId> {
    prop_oneof![
        (2u32..=5).prop_map(SpaceId::Mbar),
        (2u32..=5).prop_map(SpaceId::Hbar),
        (2u32..=5).prop_map(SpaceId::Hurwitz),
    ]
}

fn space_and_classes() -> impl Strategy<Value = (FormalClass, FormalClass, FormalClass)> {
    space().prop_flat_map(|s| (class_on(s), class_on(s), class_on(s)))
}

proptest! {
    #[test]
    fn equivalence_is_equality_of_normal_forms((a, b, _) in space_and_classes()) {
        let rels = relations(a.space());
        let nf = |c: &FormalClass| normal_form(c, &rels).unwrap();
        prop_assert_eq!(equivalent(&a, &b, &rels).unwrap(), nf(&a) == nf(&b));
        prop_assert!(equivalent(&a, &nf(&a), &rels).unwrap());
        prop_assert_eq!(nf(&nf(&a)), nf(&a));
    }

    #[test]
    fn combine_is_associative_and_commutative((a, b, c) in space_and_classes(), x in rational(), y in rational()) {
        let one = Rational::one();
        let inner = combine([(one.clone(), a.clone()), (y.clone(), b.clone())]).unwrap();
        let ab_c = combine([(x.clone(), inner), (one.clone(), c.clone())]).unwrap();
        let c_ab = combine([(one, c), (&x * &y, b), (x, a)]).unwrap();
        prop_assert_eq!(ab_c, c_ab);
    }

    #[test]
    fn solutions_recombine_to_the_target((a, b, c) in space_and_classes(), x in rational(), y in rational()) {
        let target = &a.scale(&x) + &b.scale(&y);
        let basis = [a, b, c];
        if let Ok(coeffs) = solve_in_span(&target, &basis) {
            let back = combine(coeffs.iter().cloned().zip(basis.iter().cloned())).unwrap();
            prop_assert_eq!(back, target);
        }
    }

    #[test]
    fn boundary_pullback_is_linear(g in 2u32..=3, x in rational(), seed in any::<u64>()) {
        let s = SpaceId::Mbar(g);
        let gens = [Lambda, Delta(0), Delta(1)];
        let a = FormalClass::of(s, gens.iter().enumerate().map(|(i, gen)| (*gen, qi(((seed >> (4 * i)) & 7) as i64 - 3))));
        let b = FormalClass::of(s, gens.iter().enumerate().map(|(i, gen)| (*gen, qi(((seed >> (4 * i + 16)) & 7) as i64 - 3))));
        let lhs = boundary_pullback(&(&a + &b.scale(&x)), g).unwrap();
        let rhs = &boundary_pullback(&a, g).unwrap() + &boundary_pullback(&b, g).unwrap().scale(&x);
        prop_assert_eq!(lhs, rhs);
        prop_assert!(boundary_pullback(&FormalClass::zero(s), g).unwrap().is_zero());
    }

    #[test]
    fn push_u_kills_low_powers(g in 2u32..=6, x in class_on(SpaceId::Mbar(4))) {
        let s = SpaceId::Mbar(g);
        let e = BundleDescriptor::hodge(s);
        let x = FormalClass::of(s, x.terms().filter(|(gen, _)| matches!(gen, Lambda | Delta(0))).map(|(a, b)| (*a, b.clone())));
        for i in 0..=e.rank() - 2 {
            let c = HClass::h_power(&e, i).try_mul(&HClass::pullback(&e, x.clone()).unwrap()).unwrap();
            prop_assert!(push_u(&c).unwrap().is_zero());
        }
    }

    #[test]
    fn dualize_is_an_involution_in_genus_two(j in -6i64..=6, a in class_on(SpaceId::Mbar(2))) {
        let e = BundleDescriptor::hodge(SpaceId::Mbar(2));
        let c = HClass::divisor(&e, qi(j), a).unwrap();
        let Dualized::Class(d) = dualize(&c).unwrap() else { panic!("genus two gives classes") };
        prop_assert!(d.bundle().is_dual());
        let Dualized::Class(back) = dualize(&d).unwrap() else { panic!("genus two gives classes") };
        prop_assert_eq!(back, c);
    }

    #[test]
    fn weight_round_trip(g in 2u32..=5, j in 0i64..=30, k in -40i64..=40, dual in any::<bool>(), orders in prop::collection::vec(-20i64..=20, 3)) {
        let s = SpaceId::Mbar(g);
        let b = if dual { BundleDescriptor::hodge(s).dual() } else { BundleDescriptor::hodge(s) };
        let mut base = FormalClass::of(s, [(Lambda, qi(k))]);
        for (gen, o) in s.boundary().into_iter().zip(orders) {
            base.add_term(gen, &qi(-o)).unwrap();
        }
        let c = HClass::divisor(&b, qi(j), base).unwrap();
        let w = weight_from_divisor(&c, false).unwrap();
        prop_assert_eq!(w.to_class(&b).unwrap(), c);
    }

    #[test]
    fn gamma_commutes_with_base_pullbacks(g in 2u32..=6, k in 1u32..=3, x in class_on(SpaceId::Mbar(6))) {
        let s = SpaceId::Mbar(g);
        let x = FormalClass::of(s, x.terms().filter(|(gen, _)| matches!(gen, Lambda | Delta(0) | Delta(1))).map(|(a, b)| (*a, b.clone())));
        let e = BundleDescriptor::k_hodge(s, k).unwrap();
        let r = e.rank();
        for i in 0..r.saturating_sub(1) {
            let c = HClass::h_power(&e, i).try_mul(&HClass::pullback(&e, x.clone()).unwrap()).unwrap();
            let lhs = gamma_push(&c, Direction::Forward).unwrap();
            let gi = gamma_push(&HClass::h_power(&e, i), Direction::Forward).unwrap();
            let rhs = gi.try_mul(&HClass::pullback(&e.dual(), x.clone()).unwrap()).unwrap();
            prop_assert_eq!(lhs.top(), rhs.top());
            prop_assert_eq!(lhs.next(), rhs.next());
        }
    }

    #[test]
    fn incidence_pipelines_match_closed_forms(g in 2u32..=8, k in 1u32..=4) {
        if k > 1 || g <= 3 {
            prop_assert!(gheorghita_tarasca(g, k).unwrap().equal);
        }
        if k >= 2 && (g, k) != (2, 2) {
            prop_assert!(ksz_class(g, k).unwrap().equal);
        }
    }

    #[test]
    fn order_profiles_are_symmetric(p in 1u32..=8, shift in -3i64..=3) {
        let v = boundary_order_profile(p, p, 0);
        let n = v.len();
        for i in 0..n {
            prop_assert_eq!(v[i], v[n - 1 - i]);
        }
        let min = *v.iter().min().unwrap();
        prop_assert_eq!(min, 0);
        prop_assert_eq!(v.iter().position(|&x| x == 0), Some(p as usize));
        prop_assert_eq!(v.iter().filter(|&&x| x == 0).count(), 1);
        let shifted = boundary_order_profile(p, p, shift);
        prop_assert!(shifted.iter().zip(&v).all(|(a, b)| *a == b - shift));
    }

    #[test]
    fn discriminant_weight_is_affine(g in 1u32..=10, k in -20i64..=20) {
        prop_assert_eq!(discriminant_weight(g, k + 1) - discriminant_weight(g, k), g as i64);
    }

    #[test]
    fn pullback_weights_keep_dimension(j in 0i64..=12, k in -10i64..=10, dual in any::<bool>()) {
        let k = 2 * k;
        let w = if dual { vec![0, j, k] } else { vec![j, 0, k] };
        let p = hyperelliptic_pullback_weight(&hodgecalc::bundle::WeightTuple::new(w)).unwrap();
        prop_assert_eq!(Some(p.rep.dimension() as i64), binomial(j + 2, 2).to_i64());
        let p2 = hyperelliptic_pullback_weight(&hodgecalc::bundle::WeightTuple::new(vec![j, k])).unwrap();
        prop_assert_eq!(p2.rep.dimension() as i64, j + 1);
    }
}

/// ψ = 4Σ (g−i)(i+1)/(2g+1) Δ_{2i+2} + 2Σ (2g−2i+1)(2i+1)/(2g+1) Δ_{2i+1}.
#[test]
fn symmetrized_psi_matches_closed_form() {
    for g in 2..=8u32 {
        let gi = g as i64;
        let mut expected = FormalClass::zero(SpaceId::Hurwitz(g));
        for i in 0..=(gi - 1) / 2 {
            expected
                .add_term(BigDelta((2 * i + 2) as u32), &q(4 * (gi - i) * (i + 1), 2 * gi + 1))
                .unwrap();
        }
        for i in 1..=gi / 2 {
            expected
                .add_term(
                    BigDelta((2 * i + 1) as u32),
                    &q(2 * (2 * gi - 2 * i + 1) * (2 * i + 1), 2 * gi + 1),
                )
                .unwrap();
        }
        let got = symmetrize(&hurwitz_psi(g, Mark::K), 2 * g + 2).unwrap();
        assert_eq!(got, expected, "genus {g}");
    }
}

/// c1(Sym^m E) summed over monomials: each monomial contributes its exponent of one variable.
#[test]
fn c1_of_symmetric_powers_by_monomial_count() {
    fn monomials(r: u32, m: u32) -> Vec<Vec<u32>> {
        if r == 1 {
            return vec![vec![m]];
        }
        (0..=m)
            .flat_map(|a| {
                monomials(r - 1, m - a).into_iter().map(move |mut rest| {
                    rest.insert(0, a);
                    rest
                })
            })
            .collect()
    }
    for g in 2..=4u32 {
        let e = BundleDescriptor::hodge(SpaceId::Mbar(g));
        for m in 0..=6 {
            let first_exponents: u32 = monomials(g, m).iter().map(|v| v[0]).sum();
            assert_eq!(
                c1_sym(m, &e),
                e.c1().scale(&qi(first_exponents as i64)),
                "rank {g}, m = {m}"
            );
        }
    }
    let e = BundleDescriptor::hodge(SpaceId::Mbar(2));
    for m in 0..=8i64 {
        assert_eq!(c1_sym(m as u32, &e), e.c1().scale(&q(m * (m + 1), 2)));
    }
}

#[test]
fn sym_sym2_dimension_identity() {
    for n in 0..=40u32 {
        assert_eq!(binomial(n as i64 + 2, 2).to_i64(), Some(sym_sym2(n).dimension() as i64));
    }
}

#[test]
fn fibre_degrees_of_n_are_base_point_free_data() {
    for g in 2..=6 {
        let n = n_class(g, Mark::K);
        for st in strata(g) {
            let d = fiber_degrees(&n, st).unwrap();
            assert!(d.iter().all(|x| !x.is_negative()), "genus {g}, {st:?}: {d:?}");
            let total = d.iter().fold(Rational::zero(), |a, b| &a + b);
            assert_eq!(total, qi(g as i64 - 1), "genus {g}, {st:?}");
        }
    }
}

#[test]
fn sections_restrict_m_to_half_psi() {
    for g in 2..=6 {
        let s = SpaceId::Hurwitz(g);
        let m = d_class(g, Mark::K)
            .try_add(&GMClass::pullback(e_class(g, Mark::K)).unwrap())
            .unwrap();
        let r = section_restrict(Mark::K, &m).unwrap();
        let half_psi = FormalClass::of(s, [(Generator::psi(), q(1, 2))]);
        assert!(same_class(&r, &half_psi).unwrap(), "genus {g}: {r}");
        let nf = |c: &FormalClass| normal_form(&expand_psi(c).unwrap(), &structural_relations(s)).unwrap();
        assert_eq!(nf(&r), nf(&half_psi), "genus {g}");
    }
}
