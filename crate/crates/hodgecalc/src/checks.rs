//! The verification manifest: each check runs a pipeline and compares with the expected value.

use std::fmt::Display;

use crate::algebra::{normal_form, FormalClass};
use crate::bundle::{dualize, weight_from_divisor, Dualized, WeightTuple};
use crate::catalog::{
    collapse_marked, cornalba_lambda, hurwitz_lambda, hurwitz_psi, hyperelliptic_pullback, reduce, relations,
    same_class, structural_relations, symmetrize,
};
use crate::error::Result;
use crate::good_model::{
    d_class, d_omega_closed_form, d_square_closed_form, e_class, genus2_solve, grr_c1, hh_class, m_class, n_class,
    push_quadratic, q_class, r_class, u_class, GMClass, GMGen,
};
use crate::incidence::{curve_class, gheorghita_tarasca, hypertangent_class, ksz_class};
use crate::ledger::{boundary_order_profile, relation_checks, Ledger};
use crate::plethysm::{discriminant_weight, hyperelliptic_pullback_weight, sym_sym2, GL2Rep};
use crate::rational::{binomial, q, qi, Rational};
use crate::space::{Generator, Mark, SpaceId};

use Generator::{BigDelta, Delta, Lambda, Zeta};

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    pub claimed: String,
    pub computed: String,
    pub pass: bool,
}

type Runner = fn() -> Result<Outcome>;

struct Outcome {
    claimed: String,
    computed: String,
    pass: bool,
}

fn exact(claimed: impl Display, computed: impl Display) -> Outcome {
    let (claimed, computed) = (claimed.to_string(), computed.to_string());
    Outcome {
        pass: claimed == computed,
        claimed,
        computed,
    }
}

fn judged(claimed: impl Display, computed: impl Display, pass: bool) -> Outcome {
    Outcome {
        claimed: claimed.to_string(),
        computed: computed.to_string(),
        pass,
    }
}

/// Runs a family of cases; the computed side lists the failures, if any.
fn sweep<I>(claimed: &str, cases: I) -> Outcome
where
    I: IntoIterator<Item = (String, Result<bool>)>,
{
    let mut bad = Vec::new();
    let mut n = 0;
    for (label, r) in cases {
        n += 1;
        match r {
            Ok(true) => {}
            Ok(false) => bad.push(label),
            Err(e) => bad.push(format!("{label} ({e})")),
        }
    }
    if bad.is_empty() {
        judged(claimed, format!("{claimed} ({n} cases)"), true)
    } else {
        judged(claimed, format!("fails at {}", bad.join(", ")), false)
    }
}

const MANIFEST: &[(&str, &str, Runner)] = &[
    ("AC1", "Weierstrass divisor in genus two from the good model", ac1),
    ("AC2", "image of the universal curve in the Hodge bundle", ac2),
    ("AC3", "dual and direct Weierstrass classes in genus two", ac3),
    ("AC4", "quadratic pushforwards of D_k", ac4),
    ("AC5", "first Chern class of the pushforward of M is lambda", ac5),
    (
        "AC6",
        "twisting M by the ridge curves does not change the pushforward",
        ac6,
    ),
    ("AC7", "pushforward of powers of N in genus three", ac7),
    ("AC8", "mark independence of D_k + E_k", ac8),
    ("AC9", "quadric through the canonical image in genus three", ac9),
    ("AC10", "hyperelliptic hypertangent class", ac10),
    ("AC11", "hypertangent class restricted to the hyperelliptic locus", ac11),
    ("AC12", "hypertangent lines of plane quartics", ac12),
    ("AC13", "Weierstrass divisors of k-canonical systems", ac13),
    ("AC14", "incidence classes of k-differentials", ac14),
    ("AC15", "symmetrized psi classes and lambda on the Hurwitz space", ac15),
    ("AC16", "vanishing order profiles at the boundary", ac16),
    ("AC17", "symmetric powers of Sym^2 W", ac17),
    ("AC18", "consistency of every recorded modular form", ac18),
    ("AC19", "scalar forms from divisor relations", ac19),
];

/// Check identifiers with their descriptions, in manifest order.
pub fn manifest() -> Vec<(&'static str, &'static str)> {
    MANIFEST.iter().map(|(id, a, _)| (*id, *a)).collect()
}

fn execute(id: &'static str, anchor: &'static str, f: Runner) -> Check {
    match f() {
        Ok(o) => Check {
            id,
            anchor,
            claimed: o.claimed,
            computed: o.computed,
            pass: o.pass,
        },
        Err(e) => Check {
            id,
            anchor,
            claimed: String::new(),
            computed: format!("error: {e}"),
            pass: false,
        },
    }
}

/// Runs one check by identifier.
pub fn run(id: &str) -> Option<Check> {
    MANIFEST
        .iter()
        .find(|(i, _, _)| i.eq_ignore_ascii_case(id))
        .map(|(i, a, f)| execute(i, a, *f))
}

pub fn run_all() -> Vec<Check> {
    MANIFEST.iter().map(|(i, a, f)| execute(i, a, *f)).collect()
}

fn ac1() -> Result<Outcome> {
    let s = genus2_solve()?;
    Ok(exact(
        "a=-1/5, b=3/5, 6 h + 8 lambda - delta0 - delta1",
        format!("a={}, b={}, {}", s.a, s.b, s.class),
    ))
}

/// β1 with λ and δ expanded, written out independently of κ1.
fn beta1_expanded(g: u32, k: u32) -> FormalClass {
    let (gg, kk) = (g as i64, k as i64);
    let lam = (1 - gg) * (12 * kk * kk * kk - 12 * kk * kk + 2 * kk) + 12 * kk * kk;
    let d = ((gg - 1) * kk - gg) * kk * kk;
    let mut c = FormalClass::of(SpaceId::Mbar(g), [(Lambda, qi(lam))]);
    for i in 0..=g / 2 {
        let eps = if k == 1 && i >= 1 { 1 } else { 0 };
        c.add_term(Delta(i), &qi(d - eps)).unwrap();
    }
    c
}

fn ac2() -> Result<Outcome> {
    let c = curve_class(3, 1)?;
    let mut cases = Vec::new();
    for g in 2..=8 {
        for k in 1..=4 {
            let r = curve_class(g, k).map(|c| c.beta1 == beta1_expanded(g, k));
            cases.push((format!("(g,k)=({g},{k})"), r));
        }
    }
    let s = sweep("kappa and expanded forms agree for g=2..8, k=1..4", cases);
    let claimed = format!("4 h + 8 lambda - delta0 - 2 delta1; {}", s.claimed);
    let computed = format!("{} h + {}; {}", c.beta0, c.beta1, s.computed);
    let pass = s.pass && computed.starts_with("4 h + 8 lambda - delta0 - 2 delta1;");
    Ok(judged(claimed, computed, pass))
}

fn ac3() -> Result<Outcome> {
    let gt = gheorghita_tarasca(2, 1)?.closed_form;
    let Dualized::Class(c) = dualize(&gt)? else {
        unreachable!("genus two dualizes classes")
    };
    let m2 = SpaceId::Mbar(2);
    let target = FormalClass::of(m2, [(Lambda, qi(8)), (Delta(0), qi(-1)), (Delta(1), qi(-1))]);
    let pass = c.top() == &qi(6) && same_class(c.next(), &target)?;
    Ok(judged(
        "6 h + 28 lambda - 3 delta0 - 5 delta1, equivalent to 6 h + 8 lambda - delta0 - delta1",
        format!(
            "{c}, {} to 6 h + 8 lambda - delta0 - delta1",
            if pass { "equivalent" } else { "not equivalent" }
        ),
        pass,
    ))
}

fn ac4() -> Result<Outcome> {
    let mut cases = Vec::new();
    for g in 2..=6 {
        let rels = structural_relations(SpaceId::Hurwitz(g));
        let d = d_class(g, Mark::K);
        let w = GMClass::generator(g, GMGen::Omega)?;
        let check = |x: Result<FormalClass>, y: FormalClass| -> Result<bool> {
            Ok(normal_form(&x?, &rels)? == normal_form(&y, &rels)?)
        };
        cases.push((
            format!("D.omega g={g}"),
            check(push_quadratic(&d, &w), d_omega_closed_form(g, Mark::K)),
        ));
        cases.push((
            format!("D^2 g={g}"),
            check(push_quadratic(&d, &d), d_square_closed_form(g, Mark::K)),
        ));
    }
    Ok(sweep(
        "closed forms of pi_*(D_k omega) and pi_*(D_k^2) for g=2..6",
        cases,
    ))
}

fn ac5() -> Result<Outcome> {
    let cases = (2..=6).map(|g| {
        let zero = FormalClass::zero(SpaceId::Hurwitz(g));
        let r = grr_c1(&m_class(g, Mark::K), &zero).and_then(|c| same_class(&c, &hurwitz_lambda(g)));
        (format!("g={g}"), r)
    });
    Ok(sweep("c1(pi_* M) = lambda for g=2..6", cases))
}

fn ac6() -> Result<Outcome> {
    let cases = (2..=6).map(|g| {
        let zero = FormalClass::zero(SpaceId::Hurwitz(g));
        let r = grr_c1(&m_class(g, Mark::K), &zero).and_then(|m| {
            let n = grr_c1(&n_class(g, Mark::K), &zero)?;
            same_class(&m, &n)
        });
        (format!("g={g}"), r)
    });
    Ok(sweep("c1(pi_* N) = c1(pi_* M) for g=2..6", cases))
}

fn ac7() -> Result<Outcome> {
    let h3 = SpaceId::Hurwitz(3);
    let zero = FormalClass::zero(h3);
    let mut cases = Vec::new();
    for m in 1..=6i64 {
        let expected = FormalClass::of(
            h3,
            [
                (BigDelta(2), q(2 * m * m + m, 14)),
                (BigDelta(3), q(5 * m * m - m, 14)),
                (BigDelta(4), q(5 * m * m - m, 14)),
            ],
        );
        let r = grr_c1(&n_class(3, Mark::K).scale(&qi(m)), &zero).map(|c| reduce(&c) == expected);
        cases.push((format!("m={m}"), r));
    }
    let lam = FormalClass::of(
        h3,
        [(BigDelta(2), q(3, 14)), (BigDelta(3), q(2, 7)), (BigDelta(4), q(2, 7))],
    );
    let r = grr_c1(&n_class(3, Mark::K), &zero).map(|c| reduce(&c) == lam && reduce(&hurwitz_lambda(3)) == lam);
    cases.push(("m=1 against lambda".into(), r));
    Ok(sweep(
        "(2m^2+m)/14 Delta2 + (5m^2-m)/14 (Delta3+Delta4) for m=1..6",
        cases,
    ))
}

fn ac8() -> Result<Outcome> {
    let qd = q_class()?;
    let h3 = SpaceId::Hurwitz(3);
    let stated = FormalClass::of(
        h3,
        [
            (Generator::psi(), q(3, 2)),
            (Generator::plus(2), qi(-1)),
            (Generator::plus(3), qi(-1)),
        ],
    );
    let collapsed = collapse_marked(&stated)?;
    // M = N + R with R free of marks, so N being mark independent settles M.
    let m = m_class(3, Mark::K);
    let n_plus_r = n_class(3, Mark::K).try_add(&r_class(3))?;
    let pass = qd.u_marked == stated && collapsed == u_class() && qd.u == u_class() && m.same_as(&n_plus_r)?;
    Ok(judged(
        format!("{} = {}, independent of k", stated, u_class()),
        format!("{} = {}, independent of k", qd.u_marked, qd.u),
        pass,
    ))
}

fn ac9() -> Result<Outcome> {
    let qd = q_class()?;
    let w = weight_from_divisor(&qd.class, true)?.weight;
    Ok(exact(
        "A = -1/7 Delta2 + 1/7 Delta3 + 1/7 Delta4; 2 h + 4 lambda - Delta2 - Delta3 - Delta4; weight (2,0,4)",
        format!("A = {}; {}; weight {}", qd.a, qd.class, w),
    ))
}

fn ac10() -> Result<Outcome> {
    let hh = hh_class()?;
    let h3 = SpaceId::Hurwitz(3);
    let expected =
        FormalClass::of(h3, [(Generator::plus(3), qi(-1)), (BigDelta(3), qi(-1))]).try_add(&e_class(3, Mark::K))?;
    Ok(exact(
        format!("c1(F_k) = {}; 8 h + 8 lambda - 2 Delta2 + Delta3", reduce(&expected)),
        format!("c1(F_k) = {}; {}", reduce(&hh.c1_f), hh.class),
    ))
}

fn ac11() -> Result<Outcome> {
    let hh = hh_class()?;
    Ok(exact("9 Delta3", hh.difference))
}

fn ac12() -> Result<Outcome> {
    let h = hypertangent_class()?;
    Ok(exact(
        "24 h + 216 lambda - 24 delta0 - 48 delta1; 24 h + 108 lambda - 12 delta0 - 12 delta1",
        format!("{}; {}", h.intermediate, h.class),
    ))
}

fn ac13() -> Result<Outcome> {
    let mut cases = Vec::new();
    for g in 2..=6 {
        for k in 1..=3 {
            if k == 1 && g > 3 {
                continue;
            }
            cases.push((format!("(g,k)=({g},{k})"), gheorghita_tarasca(g, k).map(|d| d.equal)));
        }
    }
    let s = sweep("pipeline equals closed form", cases);
    let w2 = gheorghita_tarasca(2, 1)?.pipeline;
    let w3 = gheorghita_tarasca(3, 1)?.pipeline;
    let claimed = format!(
        "{}; 6 hdual + 34 lambda - 3 delta0 - 5 delta1; 24 hdual + 68 lambda - 6 delta0 - 12 delta1",
        s.claimed
    );
    let computed = format!("{}; {w2}; {w3}", s.computed);
    let pass = s.pass && computed.ends_with(claimed.split_once("; ").unwrap().1);
    Ok(judged(claimed, computed, pass))
}

fn ac14() -> Result<Outcome> {
    let mut cases = Vec::new();
    for k in 2..=4 {
        for g in 2..=6 {
            if (g, k) == (2, 2) {
                continue;
            }
            cases.push((format!("(g,k)=({g},{k})"), ksz_class(g, k).map(|d| d.equal)));
        }
    }
    Ok(sweep("(4k+2)(g-1) hdual + k(k+1)(12 lambda - delta)", cases))
}

/// ψ = 4Σ (g−i)(i+1)/(2g+1) Δ_{2i+2} + 2Σ (2g−2i+1)(2i+1)/(2g+1) Δ_{2i+1}.
fn psi_sum_printed(g: u32) -> FormalClass {
    let gi = g as i64;
    let mut c = FormalClass::zero(SpaceId::Hurwitz(g));
    for i in 0..=(gi - 1) / 2 {
        c.add_term(BigDelta((2 * i + 2) as u32), &q(4 * (gi - i) * (i + 1), 2 * gi + 1))
            .unwrap();
    }
    for i in 1..=gi / 2 {
        let v = q(2 * (2 * gi - 2 * i + 1) * (2 * i + 1), 2 * gi + 1);
        c.add_term(BigDelta((2 * i + 1) as u32), &v).unwrap();
    }
    c
}

fn ac15() -> Result<Outcome> {
    let mut cases: Vec<(String, Result<bool>)> = (2..=6)
        .map(|g| {
            let r = symmetrize(&hurwitz_psi(g, Mark::K), 2 * g + 2).map(|s| reduce(&s) == psi_sum_printed(g));
            (format!("psi sum g={g}"), r)
        })
        .collect();
    let s = sweep("sum of psi_k for g=2..6", std::mem::take(&mut cases));
    let l28 = hurwitz_lambda(3).scale(&qi(28));
    let hb = SpaceId::Hbar(3);
    let cornalba = cornalba_lambda(3).scale(&qi(28));
    let printed = FormalClass::of(hb, [(Delta(0), qi(3)), (Delta(1), qi(8)), (Zeta(1), qi(8))]);
    let pulled = hyperelliptic_pullback(&cornalba)?;
    let pass = s.pass && cornalba == printed && pulled == l28;
    Ok(judged(
        format!(
            "{}; 28 lambda = 6 Delta2 + 8 Delta3 + 8 Delta4 = pullback of 3 delta0 + 8 delta1 + 8 zeta1",
            s.claimed
        ),
        format!("{}; 28 lambda = {l28} = pullback of {cornalba}", s.computed),
        pass,
    ))
}

fn ac16() -> Result<Outcome> {
    let show = |v: Vec<i64>| format!("{v:?}");
    Ok(exact(
        "[3, 2, 1, 0, 1, 2, 3] [2, 1, 0, -1, 0, 1, 2]",
        format!(
            "{} {}",
            show(boundary_order_profile(3, 3, 0)),
            show(boundary_order_profile(3, 3, 1))
        ),
    ))
}

fn ac17() -> Result<Outcome> {
    let s = sym_sym2(4);
    let p = hyperelliptic_pullback_weight(&WeightTuple::new(vec![4, 0, 8]))?;
    let dim_ok = Rational::from_int(s.dimension() as i64) == binomial(6, 2);
    let expected = GL2Rep::new([(8, 24), (4, 26), (0, 28)]);
    Ok(judged(
        format!("W[8,0] + W[4,2] + W[0,4] of dimension 15; {expected}"),
        format!("{s} of dimension {}; {}", s.dimension(), p.rep),
        dim_ok && s == GL2Rep::new([(8, 0), (4, 2), (0, 4)]) && p.rep == expected,
    ))
}

fn ac18() -> Result<Outcome> {
    let l = Ledger::shipped()?;
    let wanted = [
        "(6,8)",
        "(4,0,8)",
        "(2,0,4)",
        "(0,4,16)",
        "(0,6,24)",
        "(0,12,12)",
        "(0,24,44)",
        "(24,0,108)",
        "(2,0,0,8)",
        "(0,0,0,34)",
    ];
    let have: Vec<String> = l.records().iter().map(|r| r.weight.to_string()).collect();
    let missing: Vec<&str> = wanted
        .iter()
        .copied()
        .filter(|w| !have.iter().any(|h| h == w))
        .collect();
    let d = l.get("D_chi").map(|r| r.class.to_string()).unwrap_or_default();
    let teixidor = "34 lambda - 4 delta0 - 14 delta1 - 18 delta2";
    let pass = missing.is_empty() && d == teixidor && discriminant_weight(4, 8) == 34;
    Ok(judged(
        format!(
            "all {} records consistent, including {}; D(chi) = {teixidor}",
            l.records().len(),
            wanted.join(" ")
        ),
        if missing.is_empty() {
            format!(
                "all {} records consistent, including {}; D(chi) = {d}",
                l.records().len(),
                wanted.join(" ")
            )
        } else {
            format!("missing {}", missing.join(" "))
        },
        pass,
    ))
}

fn ac19() -> Result<Outcome> {
    let l = Ledger::shipped()?;
    let checks = relation_checks(&l)?;
    let m2 = relations(SpaceId::Mbar(2));
    let mumford = FormalClass::of(
        SpaceId::Mbar(2),
        [(Lambda, qi(10)), (Delta(0), qi(-1)), (Delta(1), qi(-2))],
    );
    let mut cases: Vec<(String, Result<bool>)> = checks.iter().map(|c| (c.name.to_string(), Ok(c.pass))).collect();
    cases.push((
        "Mumford relation".into(),
        normal_form(&mumford, &m2).map(|x| x.is_zero()),
    ));
    Ok(sweep("relation-derived scalar forms", cases))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_is_complete_and_unique() {
        let m = manifest();
        assert_eq!(m.len(), 19);
        for (i, (id, _)) in m.iter().enumerate() {
            assert_eq!(*id, format!("AC{}", i + 1));
        }
        assert!(run("bogus").is_none());
        assert_eq!(run("ac16").unwrap().id, "AC16");
    }
}
