//! The spaces' relation sets, named class formulas, mark symmetrization and pullback tables.
//!
//! On the Hurwitz space with b = 2g+2 branch points, the symmetric stratum j = b/2 = g+1
//! carries the half-weight convention: Δ_{g+1}(k+) = Δ_{g+1}(k−) = Δ_{g+1}/2.

use std::collections::BTreeSet;

use crate::algebra::{normal_form, FormalClass, RelationSet};
use crate::error::{Error, Result};
use crate::rational::{q, qi, Rational};
use crate::space::{Generator, Mark, Sign, SpaceId};

use Generator::*;

fn rat(n: u32) -> Rational {
    Rational::from(n)
}

/// λ on the Hurwitz space of genus g.
pub fn hurwitz_lambda(g: u32) -> FormalClass {
    let s = SpaceId::Hurwitz(g);
    let gg = g as i64;
    let mut terms = Vec::new();
    for i in 0..=(g - 1) / 2 {
        let i = i as i64;
        terms.push((BigDelta(2 * i as u32 + 2), q((i + 1) * (gg - i), 2 * (2 * gg + 1))));
    }
    for i in 1..=g / 2 {
        let i = i as i64;
        terms.push((BigDelta(2 * i as u32 + 1), q(i * (gg - i), 2 * gg + 1)));
    }
    FormalClass::of(s, terms)
}

/// ψ at the mark `m`, with the symmetric stratum folded to its unmarked class.
pub fn hurwitz_psi(g: u32, m: Mark) -> FormalClass {
    let s = SpaceId::Hurwitz(g);
    let gg = g as i64;
    let den = gg * (2 * gg + 1);
    let mut c = FormalClass::zero(s);
    let mut put = |j: u32, plus: Rational, minus: Rational| {
        if j == g + 1 {
            debug_assert_eq!(plus, minus);
            c.add_term(BigDelta(j), &(&(plus + minus) / &qi(2))).unwrap();
        } else {
            c.add_term(
                MarkedDelta {
                    j,
                    mark: m,
                    sign: Sign::Plus,
                },
                &plus,
            )
            .unwrap();
            c.add_term(
                MarkedDelta {
                    j,
                    mark: m,
                    sign: Sign::Minus,
                },
                &minus,
            )
            .unwrap();
        }
    };
    for i in 0..=(gg - 1) / 2 {
        put(
            (2 * i + 2) as u32,
            q((gg - i) * (2 * gg - 2 * i - 1), den),
            q((i + 1) * (2 * i + 1), den),
        );
    }
    for i in 1..=gg / 2 {
        put(
            (2 * i + 1) as u32,
            q(2 * (gg - i) * (2 * gg - 2 * i + 1), den),
            q(2 * i * (2 * i + 1), den),
        );
    }
    c
}

/// The symmetrized ψ = Σ_k ψ_k in closed form.
pub fn hurwitz_psi_sum(g: u32) -> FormalClass {
    let gg = g as i64;
    let mut terms = Vec::new();
    for i in 0..=(gg - 1) / 2 {
        terms.push((BigDelta((2 * i + 2) as u32), q(4 * (gg - i) * (i + 1), 2 * gg + 1)));
    }
    for i in 1..=gg / 2 {
        terms.push((
            BigDelta((2 * i + 1) as u32),
            q(2 * (2 * gg - 2 * i + 1) * (2 * i + 1), 2 * gg + 1),
        ));
    }
    FormalClass::of(SpaceId::Hurwitz(g), terms)
}

/// κ1 = 12λ − Σ δ_i on curve moduli.
pub fn kappa1(g: u32) -> FormalClass {
    let mut terms = vec![(Lambda, qi(12))];
    terms.extend((0..=g / 2).map(|i| (Delta(i), qi(-1))));
    FormalClass::of(SpaceId::Mbar(g), terms)
}

/// λ on the closure of the hyperelliptic locus, from (8g+4)λ = gδ0 + 4Σ i(g−i)δ_i + 2Σ (i+1)(g−i)ζ_i.
pub fn cornalba_lambda(g: u32) -> FormalClass {
    let den = rat(8 * g + 4);
    let mut terms = vec![(Delta(0), &rat(g) / &den)];
    for i in 1..=g / 2 {
        terms.push((Delta(i), &rat(4 * i * (g - i)) / &den));
    }
    for i in (1..).take_while(|i| 2 * i < g) {
        terms.push((Zeta(i), &rat(2 * (i + 1) * (g - i)) / &den));
    }
    FormalClass::of(SpaceId::Hbar(g), terms)
}

/// Class of the hyperelliptic locus in genus three.
pub fn hyperelliptic_class_m3() -> FormalClass {
    FormalClass::of(
        SpaceId::Mbar(3),
        [(Lambda, qi(9)), (Delta(0), qi(-1)), (Delta(1), qi(-3))],
    )
}

/// 10λ − δ0 − 2δ1, which vanishes in genus two.
pub fn mumford_relation_m2() -> FormalClass {
    FormalClass::of(
        SpaceId::Mbar(2),
        [(Lambda, qi(10)), (Delta(0), qi(-1)), (Delta(1), qi(-2))],
    )
}

/// Looks up a named class; the genus comes from `space`.
pub fn known_class(space: SpaceId, name: &str) -> Result<FormalClass> {
    let g = space.genus();
    let unknown = || Error::UnknownClass(format!("{name} on {space}"));
    match (space, name) {
        (SpaceId::Hurwitz(_), "hurwitz_lambda") => Ok(hurwitz_lambda(g)),
        (SpaceId::Hurwitz(_), "hurwitz_psi") => Ok(hurwitz_psi(g, Mark::K)),
        (SpaceId::Hurwitz(_), "hurwitz_psi_sum") => Ok(hurwitz_psi_sum(g)),
        (SpaceId::Mbar(_), "kappa1") => Ok(kappa1(g)),
        (SpaceId::Hbar(_), "cornalba_lambda") => Ok(cornalba_lambda(g)),
        (SpaceId::Mbar(3), "hyperelliptic_class_M3") => Ok(hyperelliptic_class_m3()),
        (SpaceId::Mbar(2), "mumford_relation_M2") => Ok(mumford_relation_m2()),
        _ => Err(unknown()),
    }
}

fn with_unit(c: FormalClass, pivot: Generator) -> FormalClass {
    let mut r = -c;
    r.add_term(pivot, &Rational::one()).unwrap();
    r
}

fn hurwitz_relations(g: u32, marks: &[Mark], with_psi: bool) -> RelationSet {
    let s = SpaceId::Hurwitz(g);
    let mut rels = vec![(with_unit(hurwitz_lambda(g), Lambda), Lambda)];
    for &m in marks {
        let p = |j| MarkedDelta {
            j,
            mark: m,
            sign: Sign::Plus,
        };
        let n = |j| MarkedDelta {
            j,
            mark: m,
            sign: Sign::Minus,
        };
        if with_psi {
            rels.push((with_unit(hurwitz_psi(g, m), Psi(m)), Psi(m)));
        }
        let top = g + 1;
        rels.push((FormalClass::of(s, [(n(top), qi(1)), (p(top), qi(-1))]), n(top)));
        rels.push((
            FormalClass::of(s, [(BigDelta(top), qi(1)), (p(top), qi(-1)), (n(top), qi(-1))]),
            p(top),
        ));
        for j in 2..=g {
            rels.push((
                FormalClass::of(s, [(BigDelta(j), qi(1)), (p(j), qi(-1)), (n(j), qi(-1))]),
                n(j),
            ));
        }
    }
    RelationSet::new(s, rels).expect("hurwitz relations are triangular")
}

/// All known relations on `space`, for the default mark.
pub fn relations(space: SpaceId) -> RelationSet {
    relations_for_marks(space, &[Mark::K])
}

/// Relations covering every mark occurring in `c`, plus the default one.
pub fn relations_for(c: &FormalClass) -> RelationSet {
    let mut marks: BTreeSet<Mark> = c.generators().filter_map(|g| g.mark()).collect();
    marks.insert(Mark::K);
    relations_for_marks(c.space(), &marks.into_iter().collect::<Vec<_>>())
}

fn relations_for_marks(space: SpaceId, marks: &[Mark]) -> RelationSet {
    match space {
        SpaceId::Mbar(g) => {
            let mut rels = vec![(with_unit(kappa1(g), Kappa1), Kappa1)];
            if g == 2 {
                rels.push((mumford_relation_m2(), Lambda));
            }
            RelationSet::new(space, rels).expect("valid")
        }
        SpaceId::Hbar(g) => {
            RelationSet::new(space, vec![(with_unit(cornalba_lambda(g), Lambda), Lambda)]).expect("valid")
        }
        SpaceId::Hurwitz(g) => hurwitz_relations(g, marks, true),
    }
}

/// Definitional relations only: κ1 on curve moduli, the mark splitting and λ on Hurwitz
/// spaces (ψ_k stays free), nothing on the hyperelliptic locus.
pub fn structural_relations(space: SpaceId) -> RelationSet {
    match space {
        SpaceId::Hurwitz(g) => hurwitz_relations(g, &[Mark::K], false),
        SpaceId::Mbar(g) => RelationSet::new(space, vec![(with_unit(kappa1(g), Kappa1), Kappa1)]).expect("valid"),
        SpaceId::Hbar(_) => RelationSet::empty(space),
    }
}

/// Normal form under all relations covering the class's marks.
pub fn reduce(c: &FormalClass) -> FormalClass {
    normal_form(c, &relations_for(c)).expect("relations built for this space")
}

/// Whether two classes agree modulo all known relations.
pub fn same_class(a: &FormalClass, b: &FormalClass) -> Result<bool> {
    let d = a.try_sub(b)?;
    Ok(reduce(&d).is_zero())
}

fn single_mark(c: &FormalClass) -> Result<Option<Mark>> {
    let marks: BTreeSet<Mark> = c.generators().filter_map(|g| g.mark()).collect();
    let mut it = marks.into_iter();
    match (it.next(), it.next()) {
        (a, None) => Ok(a),
        (Some(a), Some(b)) => Err(Error::MarkMismatch(a.0, b.0)),
        (None, Some(_)) => unreachable!(),
    }
}

fn hurwitz_genus(c: &FormalClass) -> Result<u32> {
    match c.space() {
        SpaceId::Hurwitz(g) => Ok(g),
        s => Err(Error::Unsupported(format!("expected a Hurwitz-space class, got {s}"))),
    }
}

/// Replaces ψ_m by its boundary expression.
pub fn expand_psi(c: &FormalClass) -> Result<FormalClass> {
    let g = hurwitz_genus(c)?;
    c.substitute(c.space(), |gen| match gen {
        Psi(m) => Ok(hurwitz_psi(g, *m)),
        other => FormalClass::generator(c.space(), *other),
    })
}

/// Sums a marked class over all b marks.
pub fn symmetrize(marked: &FormalClass, b: u32) -> Result<FormalClass> {
    let g = hurwitz_genus(marked)?;
    if b != 2 * g + 2 {
        return Err(Error::Unsupported(format!("b = {b} on a genus-{g} Hurwitz space")));
    }
    single_mark(marked)?;
    let s = marked.space();
    let c = expand_psi(marked)?;
    c.substitute(s, |gen| {
        let (j, w) = match *gen {
            MarkedDelta {
                j, sign: Sign::Plus, ..
            } => (j, j),
            MarkedDelta {
                j, sign: Sign::Minus, ..
            } => (j, b - j),
            BigDelta(j) => (j, b),
            Lambda => return Ok(FormalClass::of(s, [(Lambda, rat(b))])),
            other => return Err(Error::Unsupported(format!("symmetrize of {other}"))),
        };
        Ok(FormalClass::of(s, [(BigDelta(j), rat(w))]))
    })
}

/// Certifies that a marked class does not depend on the mark and returns its unmarked form.
pub fn collapse_marked(marked: &FormalClass) -> Result<FormalClass> {
    let g = hurwitz_genus(marked)?;
    single_mark(marked)?;
    let s = marked.space();
    let c = expand_psi(marked)?;
    let c = c.substitute(s, |gen| match *gen {
        Lambda => Ok(hurwitz_lambda(g)),
        other => FormalClass::generator(s, other),
    })?;
    let mut out = FormalClass::zero(s);
    let mut bad = Vec::new();
    for j in 2..=g + 1 {
        let mut plus = Rational::zero();
        let mut minus = Rational::zero();
        let mut whole = c.coeff(&BigDelta(j));
        for (gen, r) in c.terms() {
            if let MarkedDelta { j: jj, sign, .. } = *gen {
                if jj != j {
                    continue;
                }
                match sign {
                    Sign::Plus => plus += r,
                    Sign::Minus => minus += r,
                }
            }
        }
        if j == g + 1 {
            whole += &(&(plus + minus) / &qi(2));
        } else if plus == minus {
            whole += &plus;
        } else {
            bad.push(format!("Delta{j}: k+ {plus} vs k- {minus}"));
        }
        out.add_term(BigDelta(j), &whole)?;
    }
    if !bad.is_empty() {
        return Err(Error::NotMarkIndependent(bad.join(", ")));
    }
    Ok(out)
}

/// Pullback from curve moduli to the Hurwitz space for g = 2, 3, with λ expanded.
pub fn boundary_pullback(c: &FormalClass, g: u32) -> Result<FormalClass> {
    pullback_from_mbar(c, g, false)
}

/// As [`boundary_pullback`] but keeping λ as a generator.
pub fn boundary_pullback_symbolic(c: &FormalClass, g: u32) -> Result<FormalClass> {
    pullback_from_mbar(c, g, true)
}

fn pullback_from_mbar(c: &FormalClass, g: u32, keep_lambda: bool) -> Result<FormalClass> {
    if c.space() != SpaceId::Mbar(g) || !(2..=3).contains(&g) {
        return Err(Error::Unsupported(format!(
            "boundary pullback from {} at genus {g}",
            c.space()
        )));
    }
    let t = SpaceId::Hurwitz(g);
    c.substitute(t, |gen| match (g, *gen) {
        (_, Lambda) if keep_lambda => FormalClass::generator(t, Lambda),
        (_, Lambda) => Ok(hurwitz_lambda(g)),
        (2, Delta(0)) => Ok(FormalClass::of(t, [(BigDelta(2), qi(2))])),
        (3, Delta(0)) => Ok(FormalClass::of(t, [(BigDelta(2), qi(2)), (BigDelta(4), qi(2))])),
        (_, Delta(1)) => Ok(FormalClass::of(t, [(BigDelta(3), qi(1))])),
        (_, other) => Err(Error::Unsupported(format!("boundary pullback of {other}"))),
    })
}

/// Pullback from the hyperelliptic locus to the Hurwitz space for g = 2, 3, keeping λ.
///
/// δ0 ↦ 2Δ2, δ1 ↦ Δ3, ζ1 ↦ Δ4; compatible with the curve-moduli table through
/// δ0|_H = δ0 + 2ζ1.
pub fn hyperelliptic_pullback(c: &FormalClass) -> Result<FormalClass> {
    let g = match c.space() {
        SpaceId::Hbar(g @ 2..=3) => g,
        s => return Err(Error::Unsupported(format!("hyperelliptic pullback from {s}"))),
    };
    let t = SpaceId::Hurwitz(g);
    c.substitute(t, |gen| match *gen {
        Lambda => FormalClass::generator(t, Lambda),
        Delta(0) => Ok(FormalClass::of(t, [(BigDelta(2), qi(2))])),
        Delta(1) => Ok(FormalClass::of(t, [(BigDelta(3), qi(1))])),
        Zeta(1) => Ok(FormalClass::of(t, [(BigDelta(4), qi(1))])),
        other => Err(Error::Unsupported(format!("hyperelliptic pullback of {other}"))),
    })
}
