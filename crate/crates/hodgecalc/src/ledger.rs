//! Registry of modular forms with their weights, divisor classes and vanishing orders.
//!
//! A record is accepted only if reading weight and orders back off its divisor class
//! reproduces what was stored.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::FormalClass;
use crate::bundle::{weight_from_divisor, BundleDescriptor, HClass, WeightTuple};
use crate::catalog::{
    boundary_pullback_symbolic, cornalba_lambda, hurwitz_lambda, hyperelliptic_class_m3, hyperelliptic_pullback,
    mumford_relation_m2, reduce,
};
use crate::error::{Error, Result};
use crate::good_model::{genus2_solve, q_class};
use crate::incidence::{gheorghita_tarasca, hypertangent_class};
use crate::plethysm::discriminant_weight;
use crate::rational::{qi, Rational};
use crate::space::{Generator, SpaceId};

use Generator::{Delta, Lambda};

/// A modular form known through the divisor class of its zero locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormRecord {
    pub name: String,
    pub space: SpaceId,
    pub weight: WeightTuple,
    pub class: HClass,
    /// Vanishing orders along boundary generators; zero orders are omitted.
    pub orders: BTreeMap<Generator, i64>,
    pub anchor: String,
}

impl FormRecord {
    pub fn new(
        name: &str,
        weight: WeightTuple,
        class: HClass,
        orders: impl IntoIterator<Item = (Generator, i64)>,
        anchor: &str,
    ) -> FormRecord {
        FormRecord {
            name: name.into(),
            space: class.bundle().base(),
            weight,
            class,
            orders: orders.into_iter().filter(|(_, o)| *o != 0).collect(),
            anchor: anchor.into(),
        }
    }

    /// Order along a boundary generator or one of its named aliases.
    pub fn order_at(&self, locus: &str) -> Result<i64> {
        let name = self
            .space
            .aliases()
            .iter()
            .find(|(a, _)| *a == locus)
            .map_or(locus, |(_, t)| t);
        let g: Generator = name.parse()?;
        if !self.space.boundary().contains(&g) {
            return Err(Error::UnknownGenerator {
                space: self.space.to_string(),
                generator: locus.into(),
            });
        }
        Ok(self.orders.get(&g).copied().unwrap_or(0))
    }

    /// Whether some order is negative.
    pub fn is_meromorphic(&self) -> bool {
        self.orders.values().any(|&o| o < 0)
    }
}

fn show_orders(o: &BTreeMap<Generator, i64>) -> String {
    let parts: Vec<String> = o.iter().map(|(g, v)| format!("{g}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

impl fmt::Display for FormRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on {}: weight {}, class {}, orders {}",
            self.name,
            self.space,
            self.weight,
            self.class,
            show_orders(&self.orders)
        )
    }
}

/// Recomputes weight and orders from the class and compares with the record.
pub fn check_record(r: &FormRecord) -> Result<()> {
    let dw = weight_from_divisor(&r.class, false)?;
    if dw.weight != r.weight || dw.orders != r.orders {
        return Err(Error::LedgerInconsistency {
            name: r.name.clone(),
            stored: format!("weight {} orders {}", r.weight, show_orders(&r.orders)),
            computed: format!("weight {} orders {}", dw.weight, show_orders(&dw.orders)),
        });
    }
    Ok(())
}

/// Quotient num / den^power, with weights and orders subtracted.
pub fn ratio(num: &FormRecord, den: &FormRecord, power: i64) -> Result<FormRecord> {
    if num.space != den.space {
        return Err(Error::SpaceMismatch(num.space.to_string(), den.space.to_string()));
    }
    let mut den_class = den.class.clone();
    if den_class.top().is_zero() && den_class.bundle() != num.class.bundle() {
        // Scalar forms live on either projective bundle.
        den_class = HClass::pullback(num.class.bundle(), den_class.next().clone())?;
    }
    let class = num.class.try_sub(&den_class.scale(&qi(power)))?;
    let weight = num.weight.minus(&den.weight.times(power))?;
    let mut orders = num.orders.clone();
    for (g, o) in &den.orders {
        *orders.entry(*g).or_insert(0) -= power * o;
    }
    let name = if power == 1 {
        format!("{}/{}", num.name, den.name)
    } else {
        format!("{}/{}^{}", num.name, den.name, power)
    };
    Ok(FormRecord::new(
        &name,
        weight,
        class,
        orders,
        "quotient of recorded forms",
    ))
}

/// For i = 0..p+q, the least |Λ^c ∩ G1| + |Λ ∩ G2| over #Λ = i, minus `shift`.
pub fn boundary_order_profile(p: u32, q: u32, shift: i64) -> Vec<i64> {
    (0..=p + q)
        .map(|i| {
            // Put as many of the i points as possible into the first group.
            let x = i.min(p);
            (p - x) as i64 + (i - x) as i64 - shift
        })
        .collect()
}

/// Validated records in insertion order.
#[derive(Clone, Debug, Default)]
pub struct Ledger {
    records: Vec<FormRecord>,
}

impl Ledger {
    pub fn new() -> Ledger {
        Ledger::default()
    }

    /// Stores the record if its class reproduces its weight and orders.
    pub fn register(&mut self, r: FormRecord) -> Result<()> {
        check_record(&r)?;
        self.records.push(r);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&FormRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn records(&self) -> &[FormRecord] {
        &self.records
    }

    /// Every form constructed from the divisor computations, registered and checked.
    pub fn shipped() -> Result<Ledger> {
        let mut l = Ledger::new();
        for r in shipped_records()? {
            l.register(r)?;
        }
        Ok(l)
    }
}

fn hodge(space: SpaceId) -> BundleDescriptor {
    BundleDescriptor::hodge(space)
}

fn class(space: SpaceId, j: i64, dual: bool, base: &[(Generator, i64)]) -> HClass {
    let b = if dual { hodge(space).dual() } else { hodge(space) };
    let x = FormalClass::of(space, base.iter().map(|(g, c)| (*g, qi(*c))));
    HClass::divisor(&b, qi(j), x).expect("degree-one class")
}

fn orders_of(c: &HClass) -> Vec<(Generator, i64)> {
    c.next()
        .terms()
        .filter(|(g, _)| **g != Lambda)
        .map(|(g, r)| (*g, -r.to_i64().expect("integral divisor")))
        .collect()
}

/// The record whose weight and orders are read off `c`.
fn from_class(name: &str, weight: WeightTuple, c: HClass, anchor: &str) -> FormRecord {
    let o = orders_of(&c);
    FormRecord::new(name, weight, c, o, anchor)
}

/// Scalar form whose divisor is `k·λ` rewritten through the boundary relation.
fn relation_form(name: &str, space: SpaceId, k: i64, lambda: &FormalClass, anchor: &str) -> FormRecord {
    let base = &FormalClass::of(space, [(Lambda, qi(k))]) - &lambda.scale(&qi(k));
    let c = HClass::divisor(&hodge(space), Rational::zero(), base).expect("degree-one class");
    from_class(name, WeightTuple::scalar(space.genus(), k), c, anchor)
}

/// Scalar form whose divisor class on the Hurwitz space clears the denominators of λ.
pub fn hurwitz_discriminant(g: u32) -> FormRecord {
    let s = SpaceId::Hurwitz(g);
    relation_form(
        &format!("disc_H{g}2"),
        s,
        2 * (2 * g as i64 + 1),
        &hurwitz_lambda(g),
        "discriminant form on the Hurwitz space",
    )
}

pub fn shipped_records() -> Result<Vec<FormRecord>> {
    let m2 = SpaceId::Mbar(2);
    let m3 = SpaceId::Mbar(3);
    let m4 = SpaceId::Mbar(4);
    let h3 = SpaceId::Hurwitz(3);
    let hb3 = SpaceId::Hbar(3);
    let mut v = Vec::new();

    let chi10 = from_class(
        "chi10",
        WeightTuple::scalar(2, 10),
        HClass::divisor(&hodge(m2), Rational::zero(), mumford_relation_m2())?,
        "Igusa cusp form of weight 10",
    );
    let chi68 = from_class(
        "chi_6_8",
        WeightTuple::new(vec![6, 8]),
        genus2_solve()?.class,
        "Weierstrass divisor in genus two",
    );
    let chi6m2 = FormRecord {
        name: "chi_6_-2".into(),
        anchor: "meromorphic quotient by chi10".into(),
        ..ratio(&chi68, &chi10, 1)?
    };
    let gt2 = gheorghita_tarasca(2, 1)?.closed_form;
    let chi628 = from_class(
        "chi_6_28",
        WeightTuple::new(vec![6, 28]),
        gt2,
        "Weierstrass divisor on P(E dual) in genus two",
    );
    v.extend([chi10, chi68, chi6m2, chi628]);

    let chi9 = from_class(
        "chi9",
        WeightTuple::scalar(3, 9),
        class(m3, 0, false, &[(Lambda, 9), (Delta(0), -1), (Delta(1), -3)]),
        "Teichmueller form vanishing on the hyperelliptic locus",
    );
    let chi18 = from_class(
        "chi18",
        WeightTuple::scalar(3, 18),
        chi9.class.scale(&qi(2)),
        "square of chi9",
    );
    let chi408 = from_class(
        "chi_4_0_8",
        WeightTuple::new(vec![4, 0, 8]),
        class(m3, 4, false, &[(Lambda, 8), (Delta(0), -1), (Delta(1), -2)]),
        "ternary quartic form",
    );
    let chi0416 = from_class(
        "chi_0_4_16",
        WeightTuple::new(vec![0, 4, 16]),
        class(m3, 4, true, &[(Lambda, 20), (Delta(0), -2), (Delta(1), -4)]),
        "form of weight (0,4,16)",
    );
    let chi0624 = from_class(
        "chi_0_6_24",
        WeightTuple::new(vec![0, 6, 24]),
        class(m3, 6, true, &[(Lambda, 30), (Delta(0), -3), (Delta(1), -6)]),
        "form of weight (0,6,24)",
    );
    let chi01212 = from_class(
        "chi_0_12_12",
        WeightTuple::new(vec![0, 12, 12]),
        class(m3, 12, true, &[(Lambda, 24), (Delta(0), -2), (Delta(1), -3)]),
        "cusp form of weight (0,12,12)",
    );
    let chi01248 = from_class(
        "chi_0_12_48",
        WeightTuple::new(vec![0, 12, 48]),
        chi01212.class.try_add(&HClass::pullback(
            chi01212.class.bundle(),
            chi18.class.next().scale(&qi(2)),
        )?)?,
        "product of chi_0_12_12 and chi18 squared",
    );
    let chi02444 = from_class(
        "chi_0_24_44",
        WeightTuple::new(vec![0, 24, 44]),
        gheorghita_tarasca(3, 1)?.closed_form,
        "Weierstrass divisor on P(E dual) in genus three",
    );
    let chi240108 = from_class(
        "chi_24_0_108",
        WeightTuple::new(vec![24, 0, 108]),
        hypertangent_class()?.class,
        "hypertangent lines of plane quartics",
    );
    v.extend([
        chi9, chi18, chi408, chi0416, chi0624, chi01212, chi01248, chi02444, chi240108,
    ]);

    v.push(from_class(
        "chi_2_0_4",
        WeightTuple::new(vec![2, 0, 4]),
        q_class()?.class,
        "quadric containing the canonical image of a hyperelliptic curve",
    ));
    let w14 = relation_form(
        "chi14_H32",
        h3,
        14,
        &hurwitz_lambda(3),
        "weight 14 form on the Hurwitz space",
    );
    let w28 = relation_form("chi28_H32", h3, 28, &hurwitz_lambda(3), "square of the weight 14 form");
    let c28 = relation_form(
        "chi28_H3bar",
        hb3,
        28,
        &cornalba_lambda(3),
        "weight 28 form on the hyperelliptic locus",
    );
    v.extend([w14, w28, c28]);
    for g in 2..=5 {
        v.push(hurwitz_discriminant(g));
    }

    v.push(from_class(
        "Q_genus4",
        WeightTuple::new(vec![2, 0, 0, 8]),
        class(
            m4,
            2,
            false,
            &[(Lambda, 8), (Delta(0), -1), (Delta(1), -1), (Delta(2), -1)],
        ),
        "quadric containing the canonical curve of genus four",
    ));
    v.push(from_class(
        "D_chi",
        WeightTuple::scalar(4, discriminant_weight(4, 8)),
        class(
            m4,
            0,
            false,
            &[(Lambda, 34), (Delta(0), -4), (Delta(1), -14), (Delta(2), -18)],
        ),
        "discriminant of the genus-four quadric",
    ));
    Ok(v)
}

/// A named identity between records or classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: &'static str,
    pub claimed: String,
    pub computed: String,
    pub pass: bool,
}

fn rel(name: &'static str, claimed: impl fmt::Display, computed: impl fmt::Display) -> RelationCheck {
    let (claimed, computed) = (claimed.to_string(), computed.to_string());
    RelationCheck {
        name,
        pass: claimed == computed,
        claimed,
        computed,
    }
}

fn pull_to_hurwitz(c: &HClass) -> Result<HClass> {
    let g = c.bundle().base().genus();
    let base = boundary_pullback_symbolic(c.next(), g)?;
    HClass::divisor(&hodge(SpaceId::Hurwitz(g)), c.top().clone(), base)
}

/// Identities tying the scalar forms to the divisor relations they come from.
pub fn relation_checks(l: &Ledger) -> Result<Vec<RelationCheck>> {
    let get = |n: &str| {
        l.get(n)
            .ok_or_else(|| Error::UnknownClass(format!("ledger record {n}")))
    };
    let m2 = SpaceId::Mbar(2);
    let mut out = Vec::new();

    let chi10 = get("chi10")?;
    out.push(rel(
        "chi10 divisor",
        FormalClass::of(m2, [(Delta(0), qi(1)), (Delta(1), qi(2))]),
        -chi10.class.next().try_sub(&FormalClass::of(m2, [(Lambda, qi(10))]))?,
    ));
    out.push(rel("chi10 class vanishes", "0", reduce(chi10.class.next())));

    let chi9 = get("chi9")?;
    out.push(rel(
        "chi9 divisor is the hyperelliptic locus",
        hyperelliptic_class_m3(),
        chi9.class.next(),
    ));
    let chi18 = get("chi18")?;
    out.push(rel(
        "chi9 squared has the weight of chi18",
        &chi18.weight,
        chi9.weight.times(2),
    ));

    for g in 2..=5u32 {
        let r = get(&format!("disc_H{g}2"))?;
        out.push(rel(
            "Hurwitz discriminant weight",
            2 * (2 * g + 1),
            r.weight.entries()[g as usize - 1],
        ));
        out.push(rel("Hurwitz discriminant class vanishes", "0", reduce(r.class.next())));
    }

    let w14 = get("chi14_H32")?;
    let w28 = get("chi28_H32")?;
    out.push(rel(
        "weight 14 form squares to chi28",
        &w28.class,
        w14.class.scale(&qi(2)),
    ));
    let c28 = get("chi28_H3bar")?;
    let pulled = hyperelliptic_pullback(c28.class.next())?;
    out.push(rel(
        "chi28 on the hyperelliptic locus pulls back",
        w28.class.next(),
        pulled,
    ));
    let halves = c28
        .class
        .next()
        .terms()
        .any(|(g, r)| *g != Lambda && !(r / &qi(2)).is_integer());
    out.push(rel("chi28 on the hyperelliptic locus is not a square", true, halves));

    let q = get("chi_2_0_4")?;
    let f = get("chi_4_0_8")?;
    out.push(rel(
        "chi_4_0_8 restricts to twice the quadric",
        q.class.scale(&qi(2)),
        pull_to_hurwitz(&f.class)?,
    ));

    let r = ratio(get("chi_0_12_48")?, chi18, 2)?;
    out.push(rel(
        "chi_0_12_48 over chi18 squared",
        "(0,12,12) {delta0:2, delta1:3}",
        format!("{} {}", r.weight, show_orders(&r.orders)),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(p: u32, q: u32, shift: i64) -> Vec<i64> {
        let n = p + q;
        (0..=n)
            .map(|i| {
                (0u32..1 << n)
                    .filter(|s| s.count_ones() == i)
                    .map(|s| {
                        let in_first = (0..p).filter(|b| s >> b & 1 == 1).count() as i64;
                        let in_second = (p..n).filter(|b| s >> b & 1 == 1).count() as i64;
                        (p as i64 - in_first) + in_second - shift
                    })
                    .min()
                    .unwrap()
            })
            .collect()
    }

    #[test]
    fn order_profiles() {
        assert_eq!(boundary_order_profile(3, 3, 0), vec![3, 2, 1, 0, 1, 2, 3]);
        assert_eq!(boundary_order_profile(3, 3, 1), vec![2, 1, 0, -1, 0, 1, 2]);
        assert_eq!(boundary_order_profile(1, 1, 0), vec![1, 0, 1]);
        for p in 1..=5 {
            for q in 1..=5 {
                assert_eq!(boundary_order_profile(p, q, 0), brute(p, q, 0), "{p},{q}");
            }
        }
    }

    #[test]
    fn shipped_ledger_is_consistent() {
        let l = Ledger::shipped().unwrap();
        let r = l.get("chi_6_-2").unwrap();
        assert_eq!(r.weight, WeightTuple::new(vec![6, -2]));
        assert_eq!(r.order_at("delta0").unwrap(), 0);
        assert_eq!(r.order_at("delta1").unwrap(), -1);
        assert!(r.is_meromorphic());
        let r = l.get("chi_0_24_44").unwrap();
        assert_eq!(r.order_at("delta0").unwrap(), 6);
        let r = l.get("chi_24_0_108").unwrap();
        assert_eq!((r.order_at("delta0").unwrap(), r.order_at("delta1").unwrap()), (12, 12));
        for c in relation_checks(&l).unwrap() {
            assert!(c.pass, "{}: {} vs {}", c.name, c.claimed, c.computed);
        }
    }

    #[test]
    fn ratio_arithmetic() {
        let l = Ledger::shipped().unwrap();
        let f = l.get("chi_4_0_8").unwrap();
        let one = ratio(f, f, 1).unwrap();
        assert!(one.weight.is_zero() && one.orders.is_empty());
        let r = ratio(l.get("chi_0_12_48").unwrap(), l.get("chi18").unwrap(), 2).unwrap();
        assert_eq!(r.order_at("infinity").unwrap(), 2);
        assert_eq!(r.order_at("A21").unwrap(), 3);
        check_record(&r).unwrap();
    }

    #[test]
    fn inconsistent_records_are_refused() {
        let m3 = SpaceId::Mbar(3);
        let bad = FormRecord::new(
            "bad",
            WeightTuple::new(vec![4, 0, 9]),
            class(m3, 4, false, &[(Lambda, 8), (Delta(0), -1), (Delta(1), -2)]),
            [(Delta(0), 1), (Delta(1), 2)],
            "",
        );
        assert!(matches!(
            Ledger::new().register(bad),
            Err(Error::LedgerInconsistency { .. })
        ));
    }
}
