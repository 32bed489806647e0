//! The k-canonical curve class and the incidence correspondence between P(E_k) and P(E_k^∨).

use crate::algebra::{normal_form, FormalClass};
use crate::bundle::{BundleDescriptor, HClass};
use crate::catalog::{hyperelliptic_class_m3, structural_relations};
use crate::error::{Error, Result};
use crate::rational::{binomial, qi, Rational};
use crate::space::{Generator, SpaceId};

use Generator::*;

/// Leading coefficients β0, β1 of the image of the universal curve in P(E_k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClass {
    pub g: u32,
    pub k: u32,
    pub beta0: Rational,
    /// β1 = k²κ1 − 2k(g−1)c1(E_k) − ε, with κ1 kept.
    pub beta1_kappa: FormalClass,
    /// β1 in λ and δ_i.
    pub beta1: FormalClass,
}

/// ε = Σ_{i≥1} δ_i for k = 1 and 0 otherwise.
fn epsilon(g: u32, k: u32) -> FormalClass {
    let s = SpaceId::Mbar(g);
    if k == 1 {
        FormalClass::of(s, (1..=g / 2).map(|i| (Delta(i), qi(1))))
    } else {
        FormalClass::zero(s)
    }
}

pub fn curve_class(g: u32, k: u32) -> Result<CurveClass> {
    if g < 2 || k < 1 {
        return Err(Error::Unsupported(format!("curve class for (g,k) = ({g},{k})")));
    }
    let s = SpaceId::Mbar(g);
    let e = BundleDescriptor::k_hodge(s, k)?;
    let (gg, kk) = (g as i64, k as i64);
    let kappa = FormalClass::of(s, [(Kappa1, qi(kk * kk))]);
    let beta1_kappa = &(&kappa - &e.c1().scale(&qi(2 * kk * (gg - 1)))) - &epsilon(g, k);
    let beta1 = normal_form(&beta1_kappa, &structural_relations(s))?;
    Ok(CurveClass {
        g,
        k,
        beta0: qi(2 * kk * (gg - 1)),
        beta1_kappa,
        beta1,
    })
}

impl CurveClass {
    /// [Γ] = β0·h^{r−2} + β1·h^{r−3} + ⋯ on P(E_k).
    pub fn class(&self, bundle: &BundleDescriptor) -> Result<HClass> {
        let r = bundle.rank();
        let next = if r >= 3 {
            self.beta1.clone()
        } else {
            FormalClass::zero(bundle.base())
        };
        HClass::new(bundle.clone(), r - 2, self.beta0.clone(), next, true)
    }

    /// (a·h + u^*x)·[Γ], leading two terms; valid for every rank r ≥ 2.
    pub fn times_divisor(&self, bundle: &BundleDescriptor, a: &Rational, x: &FormalClass) -> Result<HClass> {
        let top = a * &self.beta0;
        let next = &self.beta1.scale(a) + &x.scale(&self.beta0);
        HClass::new(bundle.clone(), bundle.rank() - 1, top, next, true)
    }
}

/// Which way the correspondence is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// γ = ρ̌_*ρ^* from P(E_k) to P(E_k^∨).
    Forward,
    /// ρ_*ρ̌^* from P(E^∨) back to P(E), rank three only.
    Reverse,
}

/// The correspondence: x^i ↦ 0 for i ≤ r−3, x^{r−2} ↦ 1, x^{r−1} ↦ y + c1 of the source bundle.
pub fn gamma_push(c: &HClass, direction: Direction) -> Result<HClass> {
    let src = c.bundle();
    let r = src.rank();
    match direction {
        Direction::Forward if src.is_dual() => {
            return Err(Error::Unsupported("forward correspondence starts on P(E_k)".into()))
        }
        Direction::Reverse if !src.is_dual() => {
            return Err(Error::Unsupported("reverse correspondence starts on P(E^dual)".into()))
        }
        Direction::Reverse if r != 3 => return Err(Error::Unsupported(format!("reverse correspondence at rank {r}"))),
        _ => {}
    }
    let target = src.dual();
    let d = c.degree();
    if d + 2 < r {
        return Ok(HClass::zero(&target));
    }
    if d + 2 == r {
        return Ok(HClass::scalar(&target, c.top().clone()));
    }
    if d + 1 == r {
        let next = &src.c1().scale(c.top()) + c.next();
        return HClass::divisor(&target, c.top().clone(), next);
    }
    Err(Error::NeedsChernReduction { exponent: d, rank: r })
}

/// A class computed twice: through the incidence pipeline and from a closed formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub pipeline: HClass,
    pub closed_form: HClass,
    pub equal: bool,
    /// Remarks on how the computation was carried out.
    pub notes: Vec<String>,
}

fn derivation(pipeline: HClass, closed_form: HClass, notes: Vec<String>) -> Derivation {
    let pipeline = pipeline.expand_kappa();
    let closed_form = closed_form.expand_kappa();
    let equal = pipeline == closed_form;
    Derivation {
        pipeline,
        closed_form,
        equal,
        notes,
    }
}

/// Weierstrass-point divisor G_k in P(E_k^∨).
///
/// The closed form is g(g²−1)ȟ + k·[2(3g²+2g+1)λ − C(g+1,2)δ0 − Σ i(g−i)(g+3)δ_i].
pub fn gheorghita_tarasca(g: u32, k: u32) -> Result<Derivation> {
    if g < 2 || k < 1 {
        return Err(Error::Unsupported(format!("Weierstrass divisor for (g,k) = ({g},{k})")));
    }
    let s = SpaceId::Mbar(g);
    let e = BundleDescriptor::k_hodge(s, k)?;
    let cc = curve_class(g, k)?;
    let (gi, ki) = (g as i64, k as i64);
    let cg = binomial(gi + 1, 2);
    let mut notes = Vec::new();

    let lambda = FormalClass::of(s, [(Lambda, qi(-1))]);
    let w1 = cc.times_divisor(&e, &(&cg / &qi(ki)), &lambda)?;
    let mut pipeline = gamma_push(&w1, Direction::Forward)?.expand_kappa();

    // Each genus-i tail component over δ_{min(i,g−i)} has degree (2i−1)k; at i = g/2 both
    // components carry genus i.
    let mut w2 = FormalClass::zero(s);
    for i in 1..gi {
        let j = i.min(gi - i) as u32;
        let mult = if 2 * i == gi { 2 } else { 1 };
        let c = binomial(gi - i + 1, 2) * qi((2 * i - 1) * ki * mult);
        w2.add_term(Delta(j), &c)?;
    }
    if gi % 2 == 0 {
        notes.push(format!("both genus-{} components over delta{} counted", gi / 2, gi / 2));
    }
    let w2 = HClass::pullback(&e.dual(), w2)?;
    pipeline = pipeline.try_sub(&w2)?;

    if k == 1 {
        // Over δ_i the canonical map is 2:1 onto its image; the δ_i coefficients come from
        // twice the image class, then halved.
        let mut next = pipeline.next().clone();
        for i in 1..=gi / 2 {
            let b1 = cc.beta1.coeff(&Delta(i as u32));
            let from_w1 = &cg * &(qi(2) * b1 + qi(2));
            let from_w2 = binomial(gi - i + 1, 2) * qi(2 * (2 * i - 2) + 2)
                + binomial(i + 1, 2) * qi(2 * (2 * gi - 2 * i - 2) + 2);
            let coeff = (from_w1 - from_w2) / qi(2);
            let old = next.coeff(&Delta(i as u32));
            next.add_term(Delta(i as u32), &(coeff - old))?;
        }
        pipeline = HClass::divisor(&e.dual(), pipeline.top().clone(), next)?;
        notes.push("delta_i coefficients from the double cover over each delta_i".into());
    }

    let mut base = FormalClass::zero(s);
    base.add_term(Lambda, &qi(2 * ki * (3 * gi * gi + 2 * gi + 1)))?;
    base.add_term(Delta(0), &(-&cg * &qi(ki)))?;
    for i in 1..=gi / 2 {
        base.add_term(Delta(i as u32), &qi(-ki * i * (gi - i) * (gi + 3)))?;
    }
    let closed = HClass::divisor(&e.dual(), qi(gi * (gi * gi - 1)), base)?;
    Ok(derivation(pipeline, closed, notes))
}

/// Divisor Z_k of k-differentials with a double zero.
///
/// The closed form is (4k+2)(g−1)ȟ + k(k+1)(12λ − Σδ_i).
pub fn ksz_class(g: u32, k: u32) -> Result<Derivation> {
    if g < 2 || k < 2 || (g, k) == (2, 2) {
        return Err(Error::Unsupported(format!("double-zero divisor for (g,k) = ({g},{k})")));
    }
    let s = SpaceId::Mbar(g);
    let e = BundleDescriptor::k_hodge(s, k)?;
    let dual = e.dual();
    let cc = curve_class(g, k)?;
    let (gi, ki) = (g as i64, k as i64);

    let gamma_curve = gamma_push(&cc.class(&e)?, Direction::Forward)?;
    let first = HClass::h(&dual).try_mul(&gamma_curve)?.scale(&qi(ki));
    let h_curve = cc.times_divisor(&e, &qi(1), &FormalClass::zero(s))?;
    let second = gamma_push(&h_curve, Direction::Forward)?.scale(&qi(ki + 1));
    let pipeline = first.try_add(&second)?.scale(&Rational::new(1, ki));

    let mut base = FormalClass::of(s, [(Lambda, qi(12))]);
    for i in 0..=g / 2 {
        base.add_term(Delta(i), &qi(-1))?;
    }
    let closed = HClass::divisor(&dual, qi((4 * ki + 2) * (gi - 1)), base.scale(&qi(ki * (ki + 1))))?;
    Ok(derivation(pipeline, closed, Vec::new()))
}

/// Stages of the hypertangent computation in genus three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypertangent {
    /// Product of the two dual-bundle divisors, a codimension-2 class on P(E^∨).
    pub product: HClass,
    /// Its image on P(E).
    pub intermediate: HClass,
    /// After removing twelve times the hyperelliptic locus.
    pub class: HClass,
}

pub fn hypertangent_class() -> Result<Hypertangent> {
    let s = SpaceId::Mbar(3);
    let dual = BundleDescriptor::hodge(s).dual();
    let div = |j: i64, l: i64, d0: i64, d1: i64| {
        HClass::divisor(
            &dual,
            qi(j),
            FormalClass::of(s, [(Lambda, qi(l)), (Delta(0), qi(d0)), (Delta(1), qi(d1))]),
        )
    };
    let product = div(4, 20, -2, -4)?.try_mul(&div(6, 30, -3, -6)?)?;
    let intermediate = gamma_push(&product, Direction::Reverse)?;
    let hyp = HClass::pullback(intermediate.bundle(), hyperelliptic_class_m3().scale(&qi(12)))?;
    let class = intermediate.try_sub(&hyp)?;
    Ok(Hypertangent {
        product,
        intermediate,
        class,
    })
}
