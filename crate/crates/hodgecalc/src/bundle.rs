//! Classes on projectivized (k-)Hodge bundles and the divisor-to-weight rule.
//!
//! A class of codimension d on P(E) is kept as its two leading hyperplane terms,
//! `top·h^d + h^{d−1}·u^*(next)`, plus a flag recording whether deeper terms
//! (codimension ≥ 2 base classes) were discarded. Every pushforward used below
//! annihilates those deeper terms, and operations that would need them refuse.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{write_combination, FormalClass};
use crate::catalog::kappa1;
use crate::error::{Error, Result};
use crate::rational::{binomial, qi, Rational};
use crate::space::{Generator, SpaceId};

/// A (possibly dual) k-Hodge bundle over a base space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleDescriptor {
    base: SpaceId,
    rank: u32,
    c1: FormalClass,
    dual: bool,
    twist: u32,
}

impl BundleDescriptor {
    /// The Hodge bundle E on `base`.
    pub fn hodge(base: SpaceId) -> BundleDescriptor {
        BundleDescriptor {
            base,
            rank: base.genus(),
            c1: FormalClass::of(base, [(Generator::Lambda, qi(1))]),
            dual: false,
            twist: 1,
        }
    }

    /// E_k = π_*(ω^k) over curve moduli; rank g for k = 1 and (2k−1)(g−1) otherwise.
    pub fn k_hodge(base: SpaceId, k: u32) -> Result<BundleDescriptor> {
        if k == 0 {
            return Err(Error::Unsupported("twist index 0".into()));
        }
        if k == 1 {
            return Ok(BundleDescriptor::hodge(base));
        }
        let SpaceId::Mbar(g) = base else {
            return Err(Error::Unsupported(format!("E_{k} over {base}")));
        };
        let kk = k as i64;
        let c1 = FormalClass::of(
            base,
            [(Generator::Kappa1, qi(kk * (kk - 1) / 2)), (Generator::Lambda, qi(1))],
        );
        Ok(BundleDescriptor {
            base,
            rank: (2 * k - 1) * (g - 1),
            c1,
            dual: false,
            twist: k,
        })
    }

    /// The dual bundle, whose first Chern class is negated.
    pub fn dual(&self) -> BundleDescriptor {
        BundleDescriptor {
            base: self.base,
            rank: self.rank,
            c1: -self.c1.clone(),
            dual: !self.dual,
            twist: self.twist,
        }
    }

    pub fn base(&self) -> SpaceId {
        self.base
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn c1(&self) -> &FormalClass {
        &self.c1
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    fn symbol(&self) -> &'static str {
        if self.dual {
            "hdual"
        } else {
            "h"
        }
    }
}

/// A pushforward or leading coefficient on the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseClass {
    Zero,
    Scalar(Rational),
    Divisor(FormalClass),
}

impl BaseClass {
    pub fn is_zero(&self) -> bool {
        match self {
            BaseClass::Zero => true,
            BaseClass::Scalar(r) => r.is_zero(),
            BaseClass::Divisor(c) => c.is_zero(),
        }
    }
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseClass::Zero => write!(f, "0"),
            BaseClass::Scalar(r) => write!(f, "{r}"),
            BaseClass::Divisor(c) => write!(f, "{c}"),
        }
    }
}

/// A homogeneous class on a projectivized bundle, truncated to its two leading h-terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HClass {
    bundle: BundleDescriptor,
    degree: u32,
    top: Rational,
    next: FormalClass,
    truncated: bool,
}

impl HClass {
    /// `top·h^degree + h^{degree−1}·u^*(next)`; `truncated` marks dropped deeper terms.
    pub fn new(
        bundle: BundleDescriptor,
        degree: u32,
        top: Rational,
        next: FormalClass,
        truncated: bool,
    ) -> Result<HClass> {
        if next.space() != bundle.base {
            return Err(Error::SpaceMismatch(next.space().to_string(), bundle.base.to_string()));
        }
        if degree == 0 && !next.is_zero() {
            return Err(Error::Unsupported("a codimension-0 class has no base term".into()));
        }
        Ok(HClass {
            bundle,
            degree,
            top,
            next,
            truncated: truncated && degree >= 2,
        })
    }

    pub fn zero(bundle: &BundleDescriptor) -> HClass {
        HClass::scalar(bundle, Rational::zero())
    }

    pub fn scalar(bundle: &BundleDescriptor, r: Rational) -> HClass {
        HClass {
            next: FormalClass::zero(bundle.base),
            bundle: bundle.clone(),
            degree: 0,
            top: r,
            truncated: false,
        }
    }

    /// `j·h + u^*(base)`.
    pub fn divisor(bundle: &BundleDescriptor, j: Rational, base: FormalClass) -> Result<HClass> {
        HClass::new(bundle.clone(), 1, j, base, false)
    }

    /// The hyperplane class.
    pub fn h(bundle: &BundleDescriptor) -> HClass {
        HClass::h_power(bundle, 1)
    }

    pub fn h_power(bundle: &BundleDescriptor, i: u32) -> HClass {
        HClass {
            next: FormalClass::zero(bundle.base),
            bundle: bundle.clone(),
            degree: i,
            top: Rational::one(),
            truncated: false,
        }
    }

    /// `u^*(x)` for a base divisor x.
    pub fn pullback(bundle: &BundleDescriptor, x: FormalClass) -> Result<HClass> {
        HClass::divisor(bundle, Rational::zero(), x)
    }

    pub fn bundle(&self) -> &BundleDescriptor {
        &self.bundle
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient of h^degree.
    pub fn top(&self) -> &Rational {
        &self.top
    }

    /// Base divisor multiplying h^(degree−1).
    pub fn next(&self) -> &FormalClass {
        &self.next
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_zero() && self.next.is_zero() && !self.truncated
    }

    /// Coefficient of h^i.
    pub fn h_coefficient(&self, i: u32) -> Result<BaseClass> {
        if i > self.degree {
            return Ok(BaseClass::Zero);
        }
        if i == self.degree {
            return Ok(BaseClass::Scalar(self.top.clone()));
        }
        if i + 1 == self.degree {
            return Ok(BaseClass::Divisor(self.next.clone()));
        }
        if self.truncated {
            Err(Error::Unsupported(format!(
                "coefficient of h^{i} lies in the discarded part of a truncated class"
            )))
        } else {
            Ok(BaseClass::Zero)
        }
    }

    fn check_bundle(&self, other: &HClass) -> Result<()> {
        if self.bundle != other.bundle {
            return Err(Error::SpaceMismatch(
                format!("P({}) over {}", self.bundle.symbol(), self.bundle.base),
                format!("P({}) over {}", other.bundle.symbol(), other.bundle.base),
            ));
        }
        Ok(())
    }

    pub fn scale(&self, r: &Rational) -> HClass {
        HClass {
            bundle: self.bundle.clone(),
            degree: self.degree,
            top: &self.top * r,
            next: self.next.scale(r),
            truncated: self.truncated && !r.is_zero(),
        }
    }

    pub fn try_add(&self, other: &HClass) -> Result<HClass> {
        self.check_bundle(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Unsupported(format!(
                "sum of classes of codimension {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(HClass {
            bundle: self.bundle.clone(),
            degree: self.degree,
            top: &self.top + &other.top,
            next: &self.next + &other.next,
            truncated: self.truncated || other.truncated,
        })
    }

    pub fn try_sub(&self, other: &HClass) -> Result<HClass> {
        self.try_add(&other.scale(&qi(-1)))
    }

    /// Product, keeping the two leading terms.
    pub fn try_mul(&self, other: &HClass) -> Result<HClass> {
        self.check_bundle(other)?;
        let degree = self.degree + other.degree;
        let next = &self.next.scale(&other.top) + &other.next.scale(&self.top);
        let dropped = !self.next.is_zero() && !other.next.is_zero();
        HClass::new(
            self.bundle.clone(),
            degree,
            &self.top * &other.top,
            next,
            self.truncated || other.truncated || dropped,
        )
    }

    /// Replaces κ1 by 12λ − Σδ in the base term.
    pub fn expand_kappa(&self) -> HClass {
        let s = self.bundle.base;
        let next = self
            .next
            .substitute(s, |g| match (s, g) {
                (SpaceId::Mbar(genus), Generator::Kappa1) => Ok(kappa1(genus)),
                _ => FormalClass::generator(s, *g),
            })
            .expect("substitution stays on the base");
        HClass { next, ..self.clone() }
    }
}

impl fmt::Display for HClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.bundle.symbol();
        match self.degree {
            0 => write!(f, "{}", self.top),
            1 => {
                let mut terms: Vec<(String, &Rational)> = Vec::new();
                if !self.top.is_zero() {
                    terms.push((h.to_string(), &self.top));
                }
                let names: Vec<(String, &Rational)> = self.next.terms().map(|(g, c)| (g.to_string(), c)).collect();
                terms.extend(names);
                write_combination(f, terms)
            }
            d => {
                let pw = |e: u32| if e == 1 { h.to_string() } else { format!("{h}^{e}") };
                write!(f, "{} {}", self.top, pw(d))?;
                if !self.next.is_zero() {
                    write!(f, " + ({}) {}", self.next, pw(d - 1))?;
                }
                if self.truncated {
                    write!(f, " + ...")?;
                }
                Ok(())
            }
        }
    }
}

/// u_* of a class on P(E): h^i ↦ 0 for i ≤ r−2, h^{r−1} ↦ 1, h^r ↦ c1(E).
pub fn push_u(c: &HClass) -> Result<BaseClass> {
    let r = c.bundle.rank;
    let d = c.degree;
    if d + 1 < r {
        return Ok(BaseClass::Zero);
    }
    if d + 1 == r {
        return Ok(BaseClass::Scalar(c.top.clone()));
    }
    if d == r {
        return Ok(BaseClass::Divisor(&c.bundle.c1.scale(&c.top) + &c.next));
    }
    let exponent = if c.top.is_zero() { d - 1 } else { d };
    Err(Error::NeedsChernReduction { exponent, rank: r })
}

/// A weight: a genus-length tuple whose last entry is the det power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightTuple(Vec<i64>);

impl WeightTuple {
    pub fn new(entries: Vec<i64>) -> WeightTuple {
        assert!(entries.len() >= 2, "weights have at least two entries");
        WeightTuple(entries)
    }

    /// Weight (0,…,0,k).
    pub fn scalar(g: u32, k: i64) -> WeightTuple {
        let mut v = vec![0; g as usize];
        v[g as usize - 1] = k;
        WeightTuple(v)
    }

    /// Sym^j(E) ⊗ det^k.
    pub fn sym(g: u32, j: i64, k: i64) -> WeightTuple {
        let mut v = vec![0; g as usize];
        v[0] = j;
        v[g as usize - 1] += k;
        WeightTuple(v)
    }

    /// Sym^j(E^∨) ⊗ det^m rewritten through E^∨ ≅ ∧^{g−1}E ⊗ det^{−1}.
    pub fn dual_sym(g: u32, j: i64, m: i64) -> WeightTuple {
        let mut v = vec![0; g as usize];
        v[g as usize - 2] = j;
        v[g as usize - 1] += m - j;
        WeightTuple(v)
    }

    pub fn genus(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn det_power(&self) -> i64 {
        *self.0.last().unwrap()
    }

    pub fn is_scalar(&self) -> bool {
        self.0[..self.0.len() - 1].iter().all(|&x| x == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Entrywise difference, the weight of a quotient of forms.
    pub fn minus(&self, other: &WeightTuple) -> Result<WeightTuple> {
        if self.genus() != other.genus() {
            return Err(Error::Unsupported(format!(
                "weights {self} and {other} of different genus"
            )));
        }
        Ok(WeightTuple(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn times(&self, n: i64) -> WeightTuple {
        WeightTuple(self.0.iter().map(|a| a * n).collect())
    }
}

impl fmt::Display for WeightTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// What a divisor class on P(E) or P(E^∨) says about the modular form it defines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorWeight {
    pub weight: WeightTuple,
    /// Hyperplane degree j and λ-coefficient k of the class.
    pub j: i64,
    pub k: i64,
    pub dual: bool,
    /// Vanishing order along each boundary generator (zero orders omitted).
    pub orders: BTreeMap<Generator, i64>,
    pub cusp: bool,
    pub holomorphic: bool,
}

impl DivisorWeight {
    /// Reassembles `j·h + u^*(kλ − Σ c_i·boundary_i)`.
    pub fn to_class(&self, bundle: &BundleDescriptor) -> Result<HClass> {
        let mut base = FormalClass::zero(bundle.base);
        base.add_term(Generator::Lambda, &qi(self.k))?;
        for (g, c) in &self.orders {
            base.add_term(*g, &qi(-c))?;
        }
        HClass::divisor(bundle, qi(self.j), base)
    }
}

fn integer(r: &Rational, what: &str, c: &HClass) -> Result<i64> {
    r.to_i64()
        .ok_or_else(|| Error::NotADivisor(format!("{what} {r} is not an integer in {c}")))
}

/// Reads weight and vanishing orders off `j·h + u^*(kλ − Σ c_i·boundary_i)`.
pub fn weight_from_divisor(c: &HClass, effective: bool) -> Result<DivisorWeight> {
    if c.degree != 1 {
        return Err(Error::NotADivisor(format!("class of codimension {}", c.degree)));
    }
    let c = c.expand_kappa();
    let j = integer(&c.top, "hyperplane coefficient", &c)?;
    if j < 0 {
        return Err(Error::NotADivisor(format!("negative hyperplane coefficient in {c}")));
    }
    let base = c.bundle.base;
    let boundary = base.boundary();
    let mut k = 0;
    let mut orders = BTreeMap::new();
    for (g, r) in c.next.terms() {
        if *g == Generator::Lambda {
            k = integer(r, "lambda coefficient", &c)?;
        } else if boundary.contains(g) {
            orders.insert(*g, -integer(r, "boundary coefficient", &c)?);
        } else {
            return Err(Error::NotADivisor(format!(
                "{g} is neither lambda nor a boundary class"
            )));
        }
    }
    let genus = base.genus();
    let weight = if c.bundle.dual {
        WeightTuple::dual_sym(genus, j, k)
    } else {
        WeightTuple::sym(genus, j, k)
    };
    let cusp = boundary.iter().all(|g| orders.get(g).is_some_and(|&o| o > 0));
    let holomorphic = effective && orders.values().all(|&o| o >= 0);
    Ok(DivisorWeight {
        weight,
        j,
        k,
        dual: c.bundle.dual,
        orders,
        cusp,
        holomorphic,
    })
}

/// Result of [`dualize`]: a class in genus two, a weight in genus three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dualized {
    Class(HClass),
    Weight(WeightTuple),
}

/// Passes between P(E^∨) and P(E) using E^∨ ≅ E ⊗ det(E)^{−1}.
///
/// In genus two ȟ ↦ h − λ and h ↦ ȟ + λ; in genus three only the weight is converted.
pub fn dualize(c: &HClass) -> Result<Dualized> {
    let b = &c.bundle;
    if b.twist != 1 {
        return Err(Error::Unsupported(format!("dualizing E_{}", b.twist)));
    }
    if c.degree > 1 {
        return Err(Error::Unsupported("dualizing a class of codimension above one".into()));
    }
    match b.base.genus() {
        2 => {
            let target = b.dual();
            if c.degree == 0 {
                return Ok(Dualized::Class(HClass::scalar(&target, c.top.clone())));
            }
            let lambda = FormalClass::of(b.base, [(Generator::Lambda, c.top.clone())]);
            let next = if b.dual { &c.next - &lambda } else { &c.next + &lambda };
            Ok(Dualized::Class(HClass::divisor(&target, c.top.clone(), next)?))
        }
        3 if b.dual => Ok(Dualized::Weight(weight_from_divisor(c, false)?.weight)),
        g => Err(Error::Unsupported(format!(
            "dualizing on {} in genus {g}",
            if b.dual { "P(E^dual)" } else { "P(E)" }
        ))),
    }
}

/// c1(Sym^m E) = (m/r)·C(m+r−1, r−1)·c1(E).
pub fn c1_sym(m: u32, d: &BundleDescriptor) -> FormalClass {
    let r = d.rank as i64;
    let m = m as i64;
    let factor = &(qi(m) / qi(r)) * &binomial(m + r - 1, r - 1);
    d.c1.scale(&factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::equivalent;
    use crate::catalog::relations;
    use Generator::*;

    const M2: SpaceId = SpaceId::Mbar(2);
    const M3: SpaceId = SpaceId::Mbar(3);

    fn base(s: SpaceId, t: &[(Generator, i64)]) -> FormalClass {
        FormalClass::of(s, t.iter().map(|(g, c)| (*g, qi(*c))))
    }

    #[test]
    fn push_examples() {
        let e = BundleDescriptor::hodge(M3);
        assert_eq!(push_u(&HClass::h_power(&e, 2)).unwrap(), BaseClass::Scalar(qi(1)));
        let hl = HClass::h(&e)
            .try_mul(&HClass::pullback(&e, base(M3, &[(Lambda, 1)])).unwrap())
            .unwrap();
        assert_eq!(push_u(&hl).unwrap(), BaseClass::Scalar(qi(0)));
        assert_eq!(
            push_u(&HClass::h_power(&e, 3)).unwrap(),
            BaseClass::Divisor(base(M3, &[(Lambda, 1)]))
        );
        assert_eq!(
            push_u(&HClass::h_power(&e, 4)),
            Err(Error::NeedsChernReduction { exponent: 4, rank: 3 })
        );
        assert_eq!(push_u(&HClass::h(&e)).unwrap(), BaseClass::Zero);
    }

    #[test]
    fn weights_of_divisors() {
        let e2 = BundleDescriptor::hodge(M2);
        let c = HClass::divisor(&e2, qi(6), base(M2, &[(Lambda, 8), (Delta(0), -1), (Delta(1), -1)])).unwrap();
        let w = weight_from_divisor(&c, true).unwrap();
        assert_eq!(w.weight, WeightTuple::new(vec![6, 8]));
        assert_eq!(w.orders, BTreeMap::from([(Delta(0), 1), (Delta(1), 1)]));
        assert!(w.cusp);
        assert_eq!(w.to_class(&e2).unwrap(), c);

        let e3 = BundleDescriptor::hodge(M3);
        let c = HClass::divisor(&e3, qi(4), base(M3, &[(Lambda, 8), (Delta(0), -1), (Delta(1), -2)])).unwrap();
        let w = weight_from_divisor(&c, true).unwrap();
        assert_eq!(w.weight.to_string(), "(4,0,8)");
        assert_eq!(w.orders, BTreeMap::from([(Delta(0), 1), (Delta(1), 2)]));

        let chi10 = HClass::pullback(&e2, base(M2, &[(Lambda, 10), (Delta(0), -1), (Delta(1), -2)])).unwrap();
        let w = weight_from_divisor(&chi10, true).unwrap();
        assert!(w.weight.is_scalar());
        assert_eq!(w.weight.det_power(), 10);

        let half = HClass::divisor(&e2, Rational::new(1, 2), FormalClass::zero(M2)).unwrap();
        assert!(matches!(weight_from_divisor(&half, true), Err(Error::NotADivisor(_))));
    }

    #[test]
    fn dual_weights() {
        let e3v = BundleDescriptor::hodge(M3).dual();
        let c = HClass::divisor(&e3v, qi(4), base(M3, &[(Lambda, 20), (Delta(0), -2), (Delta(1), -4)])).unwrap();
        assert_eq!(dualize(&c).unwrap(), Dualized::Weight(WeightTuple::new(vec![0, 4, 16])));
        let c = HClass::divisor(&e3v, qi(24), base(M3, &[(Lambda, 68), (Delta(0), -6), (Delta(1), -12)])).unwrap();
        assert_eq!(weight_from_divisor(&c, true).unwrap().weight.to_string(), "(0,24,44)");
    }

    #[test]
    fn dualize_genus_two() {
        let e2v = BundleDescriptor::hodge(M2).dual();
        let c = HClass::divisor(&e2v, qi(6), base(M2, &[(Lambda, 34), (Delta(0), -3), (Delta(1), -5)])).unwrap();
        let Dualized::Class(d) = dualize(&c).unwrap() else {
            panic!()
        };
        assert!(!d.bundle().is_dual());
        assert_eq!(d.next(), &base(M2, &[(Lambda, 28), (Delta(0), -3), (Delta(1), -5)]));
        let target = base(M2, &[(Lambda, 8), (Delta(0), -1), (Delta(1), -1)]);
        assert!(equivalent(d.next(), &target, &relations(M2)).unwrap());
        let Dualized::Class(back) = dualize(&d).unwrap() else {
            panic!()
        };
        assert_eq!(back, c);
        let l = HClass::pullback(&e2v, base(M2, &[(Lambda, 1)])).unwrap();
        let Dualized::Class(ld) = dualize(&l).unwrap() else {
            panic!()
        };
        assert_eq!(ld.next(), l.next());
        assert!(matches!(
            dualize(&HClass::h(&BundleDescriptor::hodge(SpaceId::Mbar(4)))),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn sym_chern_classes() {
        let e4 = BundleDescriptor::hodge(SpaceId::Mbar(4));
        assert_eq!(c1_sym(2, &e4), base(SpaceId::Mbar(4), &[(Lambda, 5)]));
        let e3 = BundleDescriptor::hodge(M3);
        assert_eq!(c1_sym(2, &e3), base(M3, &[(Lambda, 4)]));
        assert_eq!(c1_sym(1, &e3), base(M3, &[(Lambda, 1)]));
        assert!(c1_sym(0, &e3).is_zero());
    }

    #[test]
    fn k_hodge_ranks() {
        let e = BundleDescriptor::k_hodge(SpaceId::Mbar(3), 2).unwrap();
        assert_eq!(e.rank(), 6);
        assert_eq!(e.c1(), &base(SpaceId::Mbar(3), &[(Kappa1, 1), (Lambda, 1)]));
        assert!(BundleDescriptor::k_hodge(SpaceId::Hurwitz(3), 2).is_err());
    }

    #[test]
    fn truncated_products() {
        let e = BundleDescriptor::hodge(M3).dual();
        let s = HClass::divisor(&e, qi(4), base(M3, &[(Lambda, 20), (Delta(0), -2), (Delta(1), -4)])).unwrap();
        let t = HClass::divisor(&e, qi(6), base(M3, &[(Lambda, 30), (Delta(0), -3), (Delta(1), -6)])).unwrap();
        let p = s.try_mul(&t).unwrap();
        assert_eq!(p.top(), &qi(24));
        assert!(p.is_truncated());
        assert_eq!(p.next(), &base(M3, &[(Lambda, 240), (Delta(0), -24), (Delta(1), -48)]));
        assert!(p.h_coefficient(0).is_err());
    }
}
