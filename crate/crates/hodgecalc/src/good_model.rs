//! Divisor calculus on the genus-zero good model P̃ → H̃_{g,2} of the universal admissible cover.
//!
//! Over a boundary point Δ^Λ the fibre of P̃ is a chain of rational curves: the component
//! carrying the marks of Λ ("near", Π^Λ), the one carrying Λ^c ("far", Π^{Λc}), and for odd
//! #Λ a (−2)-curve R^Λ between them. Products are computed stratum by stratum after
//! rewriting every piece as a multiple of these local components relative to one mark.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{solve_in_span, solve_sparse, write_combination, FormalClass};
use crate::bundle::{BundleDescriptor, HClass};
use crate::catalog::{
    boundary_pullback, collapse_marked, expand_psi, hurwitz_lambda, hurwitz_psi_sum, reduce, same_class, symmetrize,
};
use crate::error::{Error, Result};
use crate::incidence::hypertangent_class;
use crate::rational::{q, qi, Rational};
use crate::space::{Generator, Mark, Sign, SpaceId};

/// Which fibre component a piece lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// Π^Λ, the component carrying the marks in Λ.
    Near,
    /// Π^{Λc}.
    Far,
}

/// Generators of divisor classes on the good model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GMGen {
    /// The section S̃_m.
    Section(Mark),
    /// S̃ = Σ_k S̃_k.
    SectionSum,
    /// Relative dualizing class ω_π.
    Omega,
    /// Π_j (near) or Π_j^c (far), optionally split by whether the mark lies in Λ.
    Piece {
        j: u32,
        side: Side,
        mark: Option<(Mark, Sign)>,
    },
    /// R_j for odd j.
    Ridge { j: u32, mark: Option<(Mark, Sign)> },
}

impl GMGen {
    fn mark(&self) -> Option<Mark> {
        match self {
            GMGen::Section(m) => Some(*m),
            GMGen::Piece { mark, .. } | GMGen::Ridge { mark, .. } => mark.map(|(m, _)| m),
            _ => None,
        }
    }

    fn is_piece(&self) -> bool {
        matches!(self, GMGen::Piece { .. } | GMGen::Ridge { .. })
    }
}

fn mark_suffix(mark: &Option<(Mark, Sign)>) -> String {
    match mark {
        None => String::new(),
        Some((m, Sign::Plus)) => format!("({}+)", m.0),
        Some((m, Sign::Minus)) => format!("({}-)", m.0),
    }
}

impl fmt::Display for GMGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GMGen::Section(m) => write!(f, "S_{}", m.0),
            GMGen::SectionSum => write!(f, "S"),
            GMGen::Omega => write!(f, "omega"),
            GMGen::Piece {
                j,
                side: Side::Near,
                mark,
            } => write!(f, "Pi{j}{}", mark_suffix(mark)),
            GMGen::Piece {
                j,
                side: Side::Far,
                mark,
            } => write!(f, "Pic{j}{}", mark_suffix(mark)),
            GMGen::Ridge { j, mark } => write!(f, "R{j}{}", mark_suffix(mark)),
        }
    }
}

/// A divisor class on the good model over the Hurwitz space of genus g.
#[derive(Clone, PartialEq, Eq)]
pub struct GMClass {
    genus: u32,
    coeffs: BTreeMap<GMGen, Rational>,
    base: FormalClass,
}

impl GMClass {
    pub fn zero(g: u32) -> GMClass {
        GMClass {
            genus: g,
            coeffs: BTreeMap::new(),
            base: FormalClass::zero(SpaceId::Hurwitz(g)),
        }
    }

    /// Builds `Σ c·gen`, canonicalizing the symmetric stratum j = g+1.
    pub fn new<I: IntoIterator<Item = (GMGen, Rational)>>(g: u32, terms: I) -> Result<GMClass> {
        let mut c = GMClass::zero(g);
        for (gen, r) in terms {
            c.add_term(gen, &r)?;
        }
        Ok(c)
    }

    pub fn generator(g: u32, gen: GMGen) -> Result<GMClass> {
        GMClass::new(g, [(gen, Rational::one())])
    }

    /// π^*x.
    pub fn pullback(x: FormalClass) -> Result<GMClass> {
        let SpaceId::Hurwitz(g) = x.space() else {
            return Err(Error::Unsupported(format!("pullback from {}", x.space())));
        };
        let mut c = GMClass::zero(g);
        c.base = x;
        Ok(c)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn coeff(&self, gen: &GMGen) -> Rational {
        self.coeffs.get(gen).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GMGen, &Rational)> {
        self.coeffs.iter()
    }

    /// The part pulled back from the base.
    pub fn base(&self) -> &FormalClass {
        &self.base
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.base.is_zero()
    }

    fn canonical(&self, gen: GMGen) -> Result<GMGen> {
        let g = self.genus;
        let top = g + 1;
        let check_j = |j: u32| {
            if (2..=top).contains(&j) {
                Ok(())
            } else {
                Err(Error::UnknownGenerator {
                    space: format!("good model over {}", SpaceId::Hurwitz(g)),
                    generator: gen.to_string(),
                })
            }
        };
        Ok(match gen {
            GMGen::Piece { j, side, mark } => {
                check_j(j)?;
                if j != top {
                    gen
                } else {
                    match (side, mark) {
                        (Side::Far, None) => GMGen::Piece {
                            j,
                            side: Side::Near,
                            mark: None,
                        },
                        (Side::Far, Some((m, s))) => GMGen::Piece {
                            j,
                            side: Side::Near,
                            mark: Some((m, s.flip())),
                        },
                        _ => gen,
                    }
                }
            }
            GMGen::Ridge { j, mark } => {
                check_j(j)?;
                if j % 2 == 0 {
                    return Err(Error::UnknownGenerator {
                        space: format!("good model over {}", SpaceId::Hurwitz(g)),
                        generator: gen.to_string(),
                    });
                }
                match mark {
                    Some((m, Sign::Minus)) if j == top => GMGen::Ridge {
                        j,
                        mark: Some((m, Sign::Plus)),
                    },
                    _ => gen,
                }
            }
            other => other,
        })
    }

    pub fn add_term(&mut self, gen: GMGen, r: &Rational) -> Result<()> {
        let gen = self.canonical(gen)?;
        if r.is_zero() {
            return Ok(());
        }
        let e = self.coeffs.entry(gen).or_default();
        *e += r;
        if e.is_zero() {
            self.coeffs.remove(&gen);
        }
        Ok(())
    }

    pub fn scale(&self, r: &Rational) -> GMClass {
        let mut c = GMClass::zero(self.genus);
        if r.is_zero() {
            return c;
        }
        c.coeffs = self.coeffs.iter().map(|(g, x)| (*g, x * r)).collect();
        c.base = self.base.scale(r);
        c
    }

    pub fn try_add(&self, other: &GMClass) -> Result<GMClass> {
        if self.genus != other.genus {
            return Err(Error::SpaceMismatch(
                SpaceId::Hurwitz(self.genus).to_string(),
                SpaceId::Hurwitz(other.genus).to_string(),
            ));
        }
        let mut c = self.clone();
        for (g, r) in &other.coeffs {
            c.add_term(*g, r)?;
        }
        c.base = c.base.try_add(&other.base)?;
        Ok(c)
    }

    pub fn try_sub(&self, other: &GMClass) -> Result<GMClass> {
        self.try_add(&other.scale(&qi(-1)))
    }

    fn marks(&self) -> BTreeSet<Mark> {
        let mut m: BTreeSet<Mark> = self.coeffs.keys().filter_map(|g| g.mark()).collect();
        m.extend(self.base.generators().filter_map(|g| g.mark()));
        m
    }

    fn piece_marks(&self) -> BTreeSet<Mark> {
        let mut m: BTreeSet<Mark> = self
            .coeffs
            .keys()
            .filter(|g| g.is_piece())
            .filter_map(|g| g.mark())
            .collect();
        m.extend(self.base.generators().filter_map(|g| g.mark()));
        m
    }

    /// Rewrites π^*(base) in terms of pieces, leaving λ-free, ψ-free base classes behind.
    pub fn expand_base(&self) -> Result<GMClass> {
        let g = self.genus;
        let s = SpaceId::Hurwitz(g);
        let x = expand_psi(&self.base)?;
        let x = x.substitute(s, |gen| match gen {
            Generator::Lambda => Ok(hurwitz_lambda(g)),
            other => FormalClass::generator(s, *other),
        })?;
        let mut out = GMClass::zero(g);
        out.coeffs = self.coeffs.clone();
        for (gen, r) in x.terms() {
            let (j, mark) = match *gen {
                Generator::BigDelta(j) => (j, None),
                Generator::MarkedDelta { j, mark, sign } => (j, Some((mark, sign))),
                other => {
                    out.base.add_term(other, r)?;
                    continue;
                }
            };
            let mut add = |gen: GMGen, c: Rational| out.add_term(gen, &(r * &c));
            if j == g + 1 {
                // π^*Δ_{g+1} = 2Π_{g+1} (+R); marked halves split it evenly.
                let w = if mark.is_some() { q(1, 2) } else { qi(1) };
                add(
                    GMGen::Piece {
                        j,
                        side: Side::Near,
                        mark: None,
                    },
                    &w * &qi(2),
                )?;
                if j % 2 == 1 {
                    add(GMGen::Ridge { j, mark: None }, w)?;
                }
            } else {
                add(
                    GMGen::Piece {
                        j,
                        side: Side::Near,
                        mark,
                    },
                    qi(1),
                )?;
                add(
                    GMGen::Piece {
                        j,
                        side: Side::Far,
                        mark,
                    },
                    qi(1),
                )?;
                if j % 2 == 1 {
                    add(GMGen::Ridge { j, mark }, qi(1))?;
                }
            }
        }
        Ok(out)
    }

    /// Whether the two classes agree after expanding pullbacks of boundary classes.
    pub fn same_as(&self, other: &GMClass) -> Result<bool> {
        let d = self.try_sub(other)?.expand_base()?;
        if !d.base.is_zero() {
            return Ok(reduce(&d.base).is_zero() && atom_view(&d)?.is_empty());
        }
        let marks = d.marks();
        if marks.len() > 1 {
            return Err(Error::Unsupported("comparison across several marks".into()));
        }
        Ok(atom_view(&d)?.is_empty())
    }

    /// Sum over all b marks.
    pub fn symmetrize(&self) -> Result<GMClass> {
        let g = self.genus;
        let b = 2 * g + 2;
        let mut out = GMClass::zero(g);
        let weight = |j: u32, s: Sign| if s == Sign::Plus { j } else { b - j };
        for (gen, r) in &self.coeffs {
            let (img, w) = match *gen {
                GMGen::Section(_) => (GMGen::SectionSum, 1),
                GMGen::Piece {
                    j,
                    side,
                    mark: Some((_, s)),
                } => (GMGen::Piece { j, side, mark: None }, weight(j, s)),
                GMGen::Ridge { j, mark: Some((_, s)) } => (GMGen::Ridge { j, mark: None }, weight(j, s)),
                other => (other, b),
            };
            out.add_term(img, &(r * &qi(w as i64)))?;
        }
        let marks: BTreeSet<Mark> = self.coeffs.keys().filter_map(|g| g.mark()).collect();
        if marks.len() > 1 {
            let v: Vec<Mark> = marks.into_iter().collect();
            return Err(Error::MarkMismatch(v[0].0, v[1].0));
        }
        out.base = symmetrize(&self.base, b)?;
        Ok(out)
    }
}

impl fmt::Display for GMClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(String, &Rational)> = self.coeffs.iter().map(|(g, c)| (g.to_string(), c)).collect();
        let one = Rational::one();
        let pb = format!("pi*({})", self.base);
        if !self.base.is_zero() {
            terms.push((pb, &one));
        }
        write_combination(f, terms)
    }
}

impl fmt::Debug for GMClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[good model g={}] {}", self.genus, self)
    }
}

/// A fibre component relative to a reference mark.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Comp {
    N,
    R,
    F,
}

/// Local pieces: on a stratum j ≤ g, split by whether the reference mark lies in Λ; on the
/// symmetric stratum, per unordered split with "near" meaning the side of the reference mark.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Atom {
    Local(u32, Sign, Comp),
    Sym(Comp),
}

fn pairing(odd: bool, a: Comp, b: Comp) -> Rational {
    use Comp::*;
    let v = match (a, b) {
        (N, N) | (F, F) => -1,
        (R, R) => -2,
        (N, F) | (F, N) if odd => 0,
        _ => 1,
    };
    qi(v)
}

fn side_comp(side: Side) -> Comp {
    match side {
        Side::Near => Comp::N,
        Side::Far => Comp::F,
    }
}

/// Local atoms of a piece relative to `m`.
fn atoms(g: u32, gen: &GMGen, m: Mark) -> Result<Vec<(Atom, Rational)>> {
    let top = g + 1;
    let half = q(1, 2);
    let check = |mm: Mark| {
        if mm == m {
            Ok(())
        } else {
            Err(Error::MarkMismatch(mm.0, m.0))
        }
    };
    Ok(match *gen {
        GMGen::Piece { j, side, mark } if j == top => match mark {
            None => vec![(Atom::Sym(Comp::N), half.clone()), (Atom::Sym(Comp::F), half)],
            Some((mm, s)) => {
                check(mm)?;
                let near = (side == Side::Near) == (s == Sign::Plus);
                vec![(Atom::Sym(if near { Comp::N } else { Comp::F }), half)]
            }
        },
        GMGen::Ridge { j, mark } if j == top => match mark {
            None => vec![(Atom::Sym(Comp::R), qi(1))],
            Some((mm, _)) => {
                check(mm)?;
                vec![(Atom::Sym(Comp::R), half)]
            }
        },
        GMGen::Piece { j, side, mark } => {
            let c = side_comp(side);
            match mark {
                None => vec![
                    (Atom::Local(j, Sign::Plus, c), qi(1)),
                    (Atom::Local(j, Sign::Minus, c), qi(1)),
                ],
                Some((mm, s)) => {
                    check(mm)?;
                    vec![(Atom::Local(j, s, c), qi(1))]
                }
            }
        }
        GMGen::Ridge { j, mark } => match mark {
            None => vec![
                (Atom::Local(j, Sign::Plus, Comp::R), qi(1)),
                (Atom::Local(j, Sign::Minus, Comp::R), qi(1)),
            ],
            Some((mm, s)) => {
                check(mm)?;
                vec![(Atom::Local(j, s, Comp::R), qi(1))]
            }
        },
        _ => Vec::new(),
    })
}

/// Pieces of a class as atoms relative to its (single) mark, or a phantom one.
fn atom_view(c: &GMClass) -> Result<BTreeMap<Atom, Rational>> {
    let m = single(&c.piece_marks())?.unwrap_or(Mark::K);
    let mut out: BTreeMap<Atom, Rational> = BTreeMap::new();
    for (gen, r) in &c.coeffs {
        if !gen.is_piece() {
            if !r.is_zero() {
                return Err(Error::NotAPullback(format!("{gen} is not a boundary piece")));
            }
            continue;
        }
        for (a, w) in atoms(c.genus, gen, m)? {
            let e = out.entry(a).or_default();
            *e += &(r * &w);
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn single(marks: &BTreeSet<Mark>) -> Result<Option<Mark>> {
    let mut it = marks.iter();
    match (it.next(), it.next()) {
        (a, None) => Ok(a.copied()),
        (Some(a), Some(b)) => Err(Error::MarkMismatch(a.0, b.0)),
        (None, Some(_)) => unreachable!(),
    }
}

fn target(g: u32, atom: &Atom, m: Mark) -> Generator {
    match *atom {
        Atom::Local(j, sign, _) => Generator::MarkedDelta { j, mark: m, sign },
        Atom::Sym(_) => Generator::BigDelta(g + 1),
    }
}

fn comp_of(a: &Atom) -> Comp {
    match *a {
        Atom::Local(_, _, c) | Atom::Sym(c) => c,
    }
}

/// Whether the section of the reference mark meets this local component.
fn section_meets(a: &Atom) -> bool {
    matches!(
        *a,
        Atom::Local(_, Sign::Plus, Comp::N) | Atom::Local(_, Sign::Minus, Comp::F) | Atom::Sym(Comp::N)
    )
}

/// Number of marks on a local component.
fn marks_on(g: u32, a: &Atom) -> i64 {
    let b = 2 * g as i64 + 2;
    match *a {
        Atom::Local(j, _, Comp::N) => j as i64,
        Atom::Local(j, _, Comp::F) => b - j as i64,
        Atom::Sym(Comp::N) | Atom::Sym(Comp::F) => g as i64 + 1,
        _ => 0,
    }
}

/// π_* of the product of two good-model divisors.
pub fn push_quadratic(a: &GMClass, b: &GMClass) -> Result<FormalClass> {
    if a.genus != b.genus {
        return Err(Error::SpaceMismatch(
            SpaceId::Hurwitz(a.genus).to_string(),
            SpaceId::Hurwitz(b.genus).to_string(),
        ));
    }
    let g = a.genus;
    let s = SpaceId::Hurwitz(g);
    let bb = 2 * g as i64 + 2;
    let mut pieces = a.piece_marks();
    pieces.extend(b.piece_marks());
    let mut all = a.marks();
    all.extend(b.marks());
    let has_pieces = a.coeffs.keys().chain(b.coeffs.keys()).any(|x| x.is_piece());
    let reference = match single(&pieces)? {
        Some(m) => Some(m),
        None if has_pieces => single(&all)?,
        None => all.iter().next().copied(),
    };
    let phantom = reference.is_none();
    let m = reference.unwrap_or(Mark::K);

    let mut out = FormalClass::zero(s);
    for (x, cx) in &a.coeffs {
        for (y, cy) in &b.coeffs {
            let w = cx * cy;
            let term = pair(g, x, y, m)?;
            out = &out + &term.scale(&w);
        }
    }
    // Pullback parts: π_*(π^*u · X) = u · (degree of X on a generic fibre).
    for (p, other) in [(&a.base, b), (&b.base, a)] {
        if p.is_zero() {
            continue;
        }
        let mut deg = Rational::zero();
        for (gen, c) in &other.coeffs {
            let d = match gen {
                GMGen::Section(_) => qi(1),
                GMGen::SectionSum => qi(bb),
                GMGen::Omega => qi(-2),
                _ => qi(0),
            };
            deg += &(c * &d);
        }
        out = &out + &p.scale(&deg);
    }
    if phantom {
        out = collapse_marked(&out)?;
    }
    Ok(tidy(&out))
}

/// Merges Δ_j(k+) + Δ_j(k−) pairs with equal coefficients and folds the symmetric stratum.
fn tidy(c: &FormalClass) -> FormalClass {
    let s = c.space();
    let g = s.genus();
    let mut out = FormalClass::zero(s);
    for (gen, r) in c.terms() {
        match *gen {
            Generator::MarkedDelta { j, .. } if j == g + 1 => {
                out.add_term(Generator::BigDelta(j), &(r * &q(1, 2))).unwrap();
            }
            Generator::MarkedDelta {
                j,
                mark,
                sign: Sign::Plus,
            } => {
                let minus = c.coeff(&Generator::MarkedDelta {
                    j,
                    mark,
                    sign: Sign::Minus,
                });
                if &minus == r {
                    out.add_term(Generator::BigDelta(j), r).unwrap();
                } else {
                    out.add_term(*gen, r).unwrap();
                }
            }
            Generator::MarkedDelta {
                j,
                mark,
                sign: Sign::Minus,
            } => {
                let plus = c.coeff(&Generator::MarkedDelta {
                    j,
                    mark,
                    sign: Sign::Plus,
                });
                if &plus != r {
                    out.add_term(*gen, r).unwrap();
                }
            }
            other => out.add_term(other, r).unwrap(),
        }
    }
    out
}

fn pair(g: u32, x: &GMGen, y: &GMGen, m: Mark) -> Result<FormalClass> {
    use GMGen::*;
    let s = SpaceId::Hurwitz(g);
    let psi = |mk: Mark| FormalClass::of(s, [(Generator::Psi(mk), qi(1))]);
    let zero = FormalClass::zero(s);
    Ok(match (x, y) {
        (Section(a), Section(b)) => {
            if a == b {
                -psi(*a)
            } else {
                zero
            }
        }
        (Section(a), SectionSum) | (SectionSum, Section(a)) => -psi(*a),
        (SectionSum, SectionSum) => -hurwitz_psi_sum(g),
        (Section(a), Omega) | (Omega, Section(a)) => psi(*a),
        (SectionSum, Omega) | (Omega, SectionSum) => hurwitz_psi_sum(g),
        (Omega, Omega) => {
            return Err(Error::Unsupported(
                "the self-intersection of omega is not tabulated".into(),
            ))
        }
        (Section(a), p) | (p, Section(a)) => {
            if *a != m {
                return Err(Error::Unsupported(format!(
                    "section S_{} against pieces referred to mark {}",
                    a.0, m.0
                )));
            }
            let mut out = zero;
            for (atom, w) in atoms(g, p, m)? {
                if section_meets(&atom) {
                    out.add_term(target(g, &atom, m), &w)?;
                }
            }
            out
        }
        (SectionSum, p) | (p, SectionSum) => {
            let mut out = zero;
            for (atom, w) in atoms(g, p, m)? {
                out.add_term(target(g, &atom, m), &(w * qi(marks_on(g, &atom))))?;
            }
            out
        }
        (Omega, p) | (p, Omega) => {
            let mut out = zero;
            for (atom, w) in atoms(g, p, m)? {
                if comp_of(&atom) != Comp::R {
                    out.add_term(target(g, &atom, m), &-w)?;
                }
            }
            out
        }
        (p1, p2) => {
            let mut out = zero;
            let a1 = atoms(g, p1, m)?;
            let a2 = atoms(g, p2, m)?;
            for (u, wu) in &a1 {
                for (v, wv) in &a2 {
                    let same = match (u, v) {
                        (Atom::Local(j1, s1, _), Atom::Local(j2, s2, _)) => j1 == j2 && s1 == s2,
                        (Atom::Sym(_), Atom::Sym(_)) => true,
                        _ => false,
                    };
                    if !same {
                        continue;
                    }
                    let odd = match u {
                        Atom::Local(j, _, _) => j % 2 == 1,
                        Atom::Sym(_) => (g + 1) % 2 == 1,
                    };
                    let v_ = pairing(odd, comp_of(u), comp_of(v));
                    out.add_term(target(g, u, m), &(&(wu * wv) * &v_))?;
                }
            }
            out
        }
    })
}

/// c1(π_*L) by Grothendieck–Riemann–Roch: ½(π_*(L²) − π_*(L·ω)) + c1(R¹π_*L).
pub fn grr_c1(l: &GMClass, r1_correction: &FormalClass) -> Result<FormalClass> {
    let omega = GMClass::generator(l.genus, GMGen::Omega)?;
    let sq = push_quadratic(l, l)?;
    let lw = push_quadratic(l, &omega)?;
    let half = (&sq - &lw).scale(&q(1, 2));
    Ok(tidy(&half.try_add(r1_correction)?))
}

/// s̃_m^* of a divisor: π_*(S̃_m · c).
pub fn section_restrict(m: Mark, c: &GMClass) -> Result<FormalClass> {
    let s = GMClass::generator(c.genus, GMGen::Section(m))?;
    push_quadratic(&s, c)
}

/// Solves π^*x = c for a base class x.
pub fn express_as_pullback(c: &GMClass) -> Result<FormalClass> {
    let g = c.genus;
    let s = SpaceId::Hurwitz(g);
    for (gen, r) in &c.coeffs {
        if !gen.is_piece() && !r.is_zero() {
            return Err(Error::NotAPullback(format!("{gen} has coefficient {r}")));
        }
    }
    let reference = single(&c.piece_marks())?;
    let m = reference.unwrap_or(Mark::K);
    let view = atom_view(&GMClass {
        genus: g,
        coeffs: c.coeffs.clone(),
        base: FormalClass::zero(s),
    })?;

    let mut gens = Vec::new();
    let mut columns = Vec::new();
    for j in 2..=g {
        for sign in [Sign::Plus, Sign::Minus] {
            let mut col = BTreeMap::new();
            col.insert(Atom::Local(j, sign, Comp::N), qi(1));
            col.insert(Atom::Local(j, sign, Comp::F), qi(1));
            if j % 2 == 1 {
                col.insert(Atom::Local(j, sign, Comp::R), qi(1));
            }
            gens.push(Generator::MarkedDelta { j, mark: m, sign });
            columns.push(col);
        }
    }
    let mut col = BTreeMap::from([(Atom::Sym(Comp::N), qi(1)), (Atom::Sym(Comp::F), qi(1))]);
    if (g + 1) % 2 == 1 {
        col.insert(Atom::Sym(Comp::R), qi(1));
    }
    gens.push(Generator::BigDelta(g + 1));
    columns.push(col);

    let refs: Vec<&BTreeMap<Atom, Rational>> = columns.iter().collect();
    let x = solve_sparse(&view, &refs).ok_or_else(|| Error::NotAPullback(c.to_string()))?;
    let mut out = FormalClass::new(s, gens.into_iter().zip(x))?;
    if reference.is_none() && c.base.generators().all(|g| g.mark().is_none()) {
        out = collapse_marked(&out)?;
    }
    Ok(tidy(&out.try_add(&c.base)?))
}

/// A place to read off fibre degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stratum {
    Generic,
    /// A general point of Δ^Λ with #Λ = j; `k_on_near` says whether the mark lies in Λ.
    Boundary {
        j: u32,
        k_on_near: bool,
    },
}

/// Degrees on the fibre components, ordered (Λ side, [R,] Λ^c side).
pub fn fiber_degrees(c: &GMClass, stratum: Stratum) -> Result<Vec<Rational>> {
    let g = c.genus;
    let b = 2 * g as i64 + 2;
    let m = single(&c.marks())?.unwrap_or(Mark::K);
    match stratum {
        Stratum::Generic => {
            let mut d = Rational::zero();
            for (gen, r) in &c.coeffs {
                let w = match gen {
                    GMGen::Section(_) => qi(1),
                    GMGen::SectionSum => qi(b),
                    GMGen::Omega => qi(-2),
                    _ => qi(0),
                };
                d += &(r * &w);
            }
            Ok(vec![d])
        }
        Stratum::Boundary { j, k_on_near } => {
            if !(2..=g + 1).contains(&j) {
                return Err(Error::Unsupported(format!("stratum Delta{j} in genus {g}")));
            }
            let odd = j % 2 == 1;
            let comps: Vec<Comp> = if odd {
                vec![Comp::N, Comp::R, Comp::F]
            } else {
                vec![Comp::N, Comp::F]
            };
            let symmetric = j == g + 1;
            let sign = if k_on_near { Sign::Plus } else { Sign::Minus };
            // The reference mark's component, in the frame of Λ.
            let k_comp = if k_on_near { Comp::N } else { Comp::F };
            let to_lambda_frame = |c: Comp| {
                if !symmetric || k_on_near {
                    c
                } else {
                    match c {
                        Comp::N => Comp::F,
                        Comp::F => Comp::N,
                        Comp::R => Comp::R,
                    }
                }
            };
            let mut out = vec![Rational::zero(); comps.len()];
            for (gen, r) in &c.coeffs {
                for (i, x) in comps.iter().enumerate() {
                    let d = match gen {
                        GMGen::Section(mm) => {
                            if *mm != m {
                                return Err(Error::Unsupported(format!("position of mark {}", mm.0)));
                            }
                            qi((*x == k_comp) as i64)
                        }
                        GMGen::SectionSum => match x {
                            Comp::N => qi(j as i64),
                            Comp::F => qi(b - j as i64),
                            Comp::R => qi(0),
                        },
                        GMGen::Omega => qi(if *x == Comp::R { 0 } else { -1 }),
                        p => {
                            let mut d = Rational::zero();
                            for (atom, w) in atoms(g, p, m)? {
                                let here = match atom {
                                    Atom::Local(jj, ss, _) => jj == j && ss == sign,
                                    Atom::Sym(_) => symmetric,
                                };
                                if here {
                                    d += &(&w * &pairing(odd, to_lambda_frame(comp_of(&atom)), *x));
                                }
                            }
                            d
                        }
                    };
                    out[i] += &(r * &d);
                }
            }
            Ok(out)
        }
    }
}

/// All strata over which fibre degrees are tabulated in genus g.
pub fn strata(g: u32) -> Vec<Stratum> {
    let mut v = vec![Stratum::Generic];
    for j in 2..=g + 1 {
        v.push(Stratum::Boundary { j, k_on_near: true });
        if j != g + 1 {
            v.push(Stratum::Boundary { j, k_on_near: false });
        }
    }
    v
}

fn piece(j: u32, side: Side, m: Mark, sign: Sign) -> GMGen {
    GMGen::Piece {
        j,
        side,
        mark: Some((m, sign)),
    }
}

/// Ξ_m, the boundary correction making (g−1)S̃_m + Ξ_m restrict to ω on every fibre.
pub fn xi_class(g: u32, m: Mark) -> GMClass {
    let (gi, mut terms) = (g as i64, Vec::new());
    for i in 0..=(gi - 1) / 2 {
        let j = (2 * i + 2) as u32;
        terms.push((piece(j, Side::Near, m, Sign::Plus), qi(gi - 1 - i)));
        terms.push((piece(j, Side::Far, m, Sign::Minus), qi(i)));
    }
    for i in 1..=gi / 2 {
        let j = (2 * i + 1) as u32;
        terms.push((piece(j, Side::Near, m, Sign::Plus), qi(gi - i - 1)));
        terms.push((piece(j, Side::Far, m, Sign::Plus), qi(-(gi - i))));
        terms.push((piece(j, Side::Far, m, Sign::Minus), qi(i - 1)));
        terms.push((piece(j, Side::Near, m, Sign::Minus), qi(-i)));
    }
    GMClass::new(g, terms).expect("indices in range")
}

/// D_m = (g−1)S̃_m + Ξ_m.
pub fn d_class(g: u32, m: Mark) -> GMClass {
    let s = GMClass::new(g, [(GMGen::Section(m), qi(g as i64 - 1))]).unwrap();
    s.try_add(&xi_class(g, m)).unwrap()
}

/// E_m on the base, with ψ_m kept as a generator.
pub fn e_class(g: u32, m: Mark) -> FormalClass {
    let s = SpaceId::Hurwitz(g);
    let gi = g as i64;
    let mut c = FormalClass::of(s, [(Generator::Psi(m), q(2 * gi - 1, 2))]);
    let mut put = |j: u32, plus: i64, minus: i64| {
        if j == g + 1 {
            c.add_term(Generator::BigDelta(j), &q(-(plus + minus), 2)).unwrap();
        } else {
            c.add_term(
                Generator::MarkedDelta {
                    j,
                    mark: m,
                    sign: Sign::Plus,
                },
                &qi(-plus),
            )
            .unwrap();
            c.add_term(
                Generator::MarkedDelta {
                    j,
                    mark: m,
                    sign: Sign::Minus,
                },
                &qi(-minus),
            )
            .unwrap();
        }
    };
    for i in 0..=(gi - 1) / 2 {
        put((2 * i + 2) as u32, gi - i - 1, i);
    }
    for i in 1..=gi / 2 {
        put((2 * i + 1) as u32, gi - i - 1, i - 1);
    }
    c
}

fn marked_or_half(c: &mut FormalClass, g: u32, j: u32, m: Mark, sign: Sign, r: Rational) {
    let gen = if j == g + 1 {
        Generator::BigDelta(j)
    } else {
        Generator::MarkedDelta { j, mark: m, sign }
    };
    let r = if j == g + 1 { r * q(1, 2) } else { r };
    c.add_term(gen, &r).unwrap();
}

/// π_*(D_m · ω) in closed form.
pub fn d_omega_closed_form(g: u32, m: Mark) -> FormalClass {
    let s = SpaceId::Hurwitz(g);
    let gi = g as i64;
    let mut c = FormalClass::of(s, [(Generator::Psi(m), qi(gi - 1))]);
    for i in 0..=(gi - 1) / 2 {
        let j = (2 * i + 2) as u32;
        marked_or_half(&mut c, g, j, m, Sign::Plus, qi(-(gi - i - 1)));
        marked_or_half(&mut c, g, j, m, Sign::Minus, qi(-i));
    }
    for i in 1..=gi / 2 {
        c.add_term(Generator::BigDelta((2 * i + 1) as u32), &qi(1)).unwrap();
    }
    c
}

/// π_*(D_m²) in closed form.
pub fn d_square_closed_form(g: u32, m: Mark) -> FormalClass {
    let s = SpaceId::Hurwitz(g);
    let gi = g as i64;
    let mut c = FormalClass::of(s, [(Generator::Psi(m), qi(-(gi - 1) * (gi - 1)))]);
    for i in 0..=(gi - 1) / 2 {
        let j = (2 * i + 2) as u32;
        marked_or_half(&mut c, g, j, m, Sign::Plus, qi((gi - i - 1) * (gi + i - 1)));
        marked_or_half(&mut c, g, j, m, Sign::Minus, qi((2 * gi - 2 - i) * i));
    }
    for i in 1..=gi / 2 {
        let v = (2 * gi - i - 1) * (i - 1) - i * i;
        c.add_term(Generator::BigDelta((2 * i + 1) as u32), &qi(v)).unwrap();
    }
    c
}

/// R = Σ_{j odd} R_j.
pub fn r_class(g: u32) -> GMClass {
    GMClass::new(
        g,
        (2..=g + 1)
            .filter(|j| j % 2 == 1)
            .map(|j| (GMGen::Ridge { j, mark: None }, qi(1))),
    )
    .unwrap()
}

/// M = O(D_m + π^*E_m).
pub fn m_class(g: u32, m: Mark) -> GMClass {
    d_class(g, m)
        .try_add(&GMClass::pullback(e_class(g, m)).unwrap())
        .unwrap()
}

/// N = M(−R).
pub fn n_class(g: u32, m: Mark) -> GMClass {
    m_class(g, m).try_sub(&r_class(g)).unwrap()
}

/// U = 1/14 Δ2 + 3/7 (Δ3 + Δ4) in genus three.
pub fn u_class() -> FormalClass {
    FormalClass::of(
        SpaceId::Hurwitz(3),
        [
            (Generator::BigDelta(2), q(1, 14)),
            (Generator::BigDelta(3), q(3, 7)),
            (Generator::BigDelta(4), q(3, 7)),
        ],
    )
}

/// Looks up a named divisor: Xi, D, E, M, N, R, omega, S, U.
pub fn named_divisor(g: u32, name: &str, m: Option<Mark>) -> Result<GMClass> {
    if g < 2 {
        return Err(Error::Unsupported(format!("good model in genus {g}")));
    }
    let mk = m.unwrap_or(Mark::K);
    let base = name.trim_end_matches("_k");
    Ok(match base {
        "Xi" => xi_class(g, mk),
        "D" => d_class(g, mk),
        "E" => GMClass::pullback(e_class(g, mk))?,
        "M" => m_class(g, mk),
        "N" => n_class(g, mk),
        "R" => r_class(g),
        "omega" => GMClass::generator(g, GMGen::Omega)?,
        "S" => GMClass::generator(g, GMGen::Section(mk))?,
        "U" if g == 3 => GMClass::pullback(u_class())?,
        _ => return Err(Error::UnknownDivisor(format!("{name} in genus {g}"))),
    })
}

fn mismatch(step: &str, expected: impl fmt::Display, computed: impl fmt::Display) -> Error {
    Error::DerivationMismatch {
        step: step.into(),
        expected: expected.to_string(),
        computed: computed.to_string(),
    }
}

/// Output of the genus-two computation of the Weierstrass divisor class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genus2Solution {
    pub a: Rational,
    pub b: Rational,
    /// Σ_k M − 6R on the good model.
    pub pulled_back_o6: GMClass,
    /// The base class whose pullback is φ^*Σ − φ^*O(6).
    pub residual: FormalClass,
    /// a·δ0 + b·δ1.
    pub raw: FormalClass,
    /// 6h + u^*(…) with integral coefficients.
    pub class: HClass,
}

pub fn genus2_solve() -> Result<Genus2Solution> {
    let g = 2;
    let k = Mark::K;
    let m2 = SpaceId::Mbar(2);
    let o6 = m_class(g, k).symmetrize()?.try_sub(&r_class(g).scale(&qi(6)))?;
    let expected_o6 = GMClass::new(
        g,
        [
            (GMGen::SectionSum, qi(1)),
            (
                GMGen::Piece {
                    j: 2,
                    side: Side::Near,
                    mark: None,
                },
                q(12, 5),
            ),
            (
                GMGen::Piece {
                    j: 2,
                    side: Side::Far,
                    mark: None,
                },
                q(2, 5),
            ),
            (
                GMGen::Piece {
                    j: 3,
                    side: Side::Near,
                    mark: None,
                },
                q(24, 5),
            ),
            (GMGen::Ridge { j: 3, mark: None }, q(-3, 5)),
        ],
    )?;
    if !o6.same_as(&expected_o6)? {
        return Err(mismatch("pullback of O(6)", &expected_o6, &o6));
    }
    // The ramification sections blow down Π2 and the Π3 components.
    let sigma = GMClass::new(
        g,
        [
            (GMGen::SectionSum, qi(1)),
            (
                GMGen::Piece {
                    j: 2,
                    side: Side::Near,
                    mark: None,
                },
                qi(2),
            ),
            (
                GMGen::Piece {
                    j: 3,
                    side: Side::Near,
                    mark: None,
                },
                qi(6),
            ),
        ],
    )?;
    let residual = express_as_pullback(&sigma.try_sub(&o6)?.expand_base()?)?;
    let basis = [
        boundary_pullback(&FormalClass::of(m2, [(Generator::Delta(0), qi(1))]), 2)?,
        boundary_pullback(&FormalClass::of(m2, [(Generator::Delta(1), qi(1))]), 2)?,
    ];
    let ab = solve_in_span(&residual, &basis).map_err(|_| mismatch("solve for a, b", "a, b", &residual))?;
    let (a, b) = (ab[0].clone(), ab[1].clone());
    let raw = FormalClass::of(m2, [(Generator::Delta(0), a.clone()), (Generator::Delta(1), b.clone())]);

    // Least t ≥ 0 making raw + t·(10λ − δ0 − 2δ1) integral.
    let t = &a - &a.floor();
    let rep = FormalClass::of(
        m2,
        [
            (Generator::Lambda, &qi(10) * &t),
            (Generator::Delta(0), &a - &t),
            (Generator::Delta(1), &b - &(&qi(2) * &t)),
        ],
    );
    if rep.terms().any(|(_, c)| !c.is_integer()) {
        return Err(mismatch("integral representative", "integral class", &rep));
    }
    let class = HClass::divisor(&BundleDescriptor::hodge(m2), qi(6), rep)?;
    Ok(Genus2Solution {
        a,
        b,
        pulled_back_o6: o6,
        residual,
        raw,
        class,
    })
}

/// Output of the genus-three quadric computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDerivation {
    /// s̃_k^*(N − (−ω + Π2 + Π3)) before collapsing the mark.
    pub u_marked: FormalClass,
    pub u: FormalClass,
    /// A = U − λ as derived.
    pub a: FormalClass,
    /// 2h + u^*(4λ − Δ2 − Δ3 − Δ4).
    pub class: HClass,
}

/// −ω + Π2 + Π3 in genus three.
pub fn lemma_class() -> GMClass {
    GMClass::new(
        3,
        [
            (GMGen::Omega, qi(-1)),
            (
                GMGen::Piece {
                    j: 2,
                    side: Side::Near,
                    mark: None,
                },
                qi(1),
            ),
            (
                GMGen::Piece {
                    j: 3,
                    side: Side::Near,
                    mark: None,
                },
                qi(1),
            ),
        ],
    )
    .unwrap()
}

pub fn q_class() -> Result<QDerivation> {
    let g = 3;
    let k = Mark::K;
    let s = SpaceId::Hurwitz(3);
    let n = n_class(g, k);
    let lemma = lemma_class();
    let diff = n.try_sub(&lemma)?;
    for st in strata(g) {
        let d = fiber_degrees(&diff, st)?;
        if d.iter().any(|x| !x.is_zero()) {
            return Err(mismatch(
                &format!("fibre degrees over {st:?}"),
                "all zero",
                format!("{d:?}"),
            ));
        }
    }
    let u_marked = section_restrict(k, &diff)?;
    let u = collapse_marked(&u_marked)?;
    if u != u_class() {
        return Err(mismatch("U", u_class(), &u));
    }
    // π^*A = N ⊗ ω(−Π2 − Π3) ⊗ π^*det(E)^{-1}, with N = −ω + Π2 + Π3 + π^*U.
    let lambda = FormalClass::of(s, [(Generator::Lambda, qi(1))]);
    let n_rep = lemma.try_add(&GMClass::pullback(u.clone())?)?;
    let pa = n_rep.try_sub(&lemma)?.try_sub(&GMClass::pullback(lambda.clone())?)?;
    let a = reduce(&express_as_pullback(&pa)?);
    let stated = FormalClass::of(
        s,
        [
            (Generator::Lambda, qi(4)),
            (Generator::BigDelta(2), qi(-1)),
            (Generator::BigDelta(3), qi(-1)),
            (Generator::BigDelta(4), qi(-1)),
        ],
    );
    if !same_class(&a, &stated)? {
        return Err(mismatch("A", &stated, &a));
    }
    let class = HClass::divisor(&BundleDescriptor::hodge(s), qi(2), stated)?;
    Ok(QDerivation { u_marked, u, a, class })
}

/// Output of the hyperelliptic hypertangent computation on H̃_{3,2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HhDerivation {
    /// c1(π_*N(−2S̃_k)).
    pub c1_f: FormalClass,
    /// −Σ_k c1(F_k).
    pub derived: FormalClass,
    /// 8h + u^*(8λ − 2Δ2 + Δ3).
    pub class: HClass,
    /// Pullback of the genus-three hypertangent class minus three times this one.
    pub difference: FormalClass,
}

pub fn hh_class() -> Result<HhDerivation> {
    let g = 3;
    let k = Mark::K;
    let s = SpaceId::Hurwitz(3);
    let twisted = n_class(g, k).try_sub(&GMClass::generator(g, GMGen::Section(k))?.scale(&qi(2)))?;
    let r1 = FormalClass::of(s, [(Generator::plus(2), qi(1)), (Generator::plus(3), qi(1))]);
    let c1_f = grr_c1(&twisted, &r1)?;
    let expected =
        FormalClass::of(s, [(Generator::plus(3), qi(-1)), (Generator::BigDelta(3), qi(-1))]).try_add(&e_class(g, k))?;
    if !same_class(&c1_f, &expected)? {
        return Err(mismatch("c1(F_k)", &expected, &c1_f));
    }
    let derived = reduce(&-symmetrize(&c1_f, 8)?);
    let stated = FormalClass::of(
        s,
        [
            (Generator::Lambda, qi(8)),
            (Generator::BigDelta(2), qi(-2)),
            (Generator::BigDelta(3), qi(1)),
        ],
    );
    if !same_class(&derived, &stated)? {
        return Err(mismatch("hyperelliptic hypertangent class", &stated, &derived));
    }
    let class = HClass::divisor(&BundleDescriptor::hodge(s), qi(8), stated)?;

    let big = hypertangent_class()?.class;
    let pulled = boundary_pullback(big.next(), 3)?;
    if big.top() != &(qi(3) * class.top().clone()) {
        return Err(mismatch("hyperplane degrees", qi(3) * class.top().clone(), big.top()));
    }
    let difference = reduce(&(&pulled - &derived.scale(&qi(3))));
    Ok(HhDerivation {
        c1_f,
        derived,
        class,
        difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    const H3: SpaceId = SpaceId::Hurwitz(3);

    #[test]
    fn genus_three_d_and_e() {
        let d = d_class(3, Mark::K);
        let expected = GMClass::new(
            3,
            [
                (GMGen::Section(Mark::K), qi(2)),
                (piece(2, Side::Near, Mark::K, Sign::Plus), qi(2)),
                (piece(4, Side::Near, Mark::K, Sign::Plus), qi(2)),
                (piece(3, Side::Near, Mark::K, Sign::Plus), qi(1)),
                (piece(3, Side::Far, Mark::K, Sign::Plus), qi(-2)),
                (piece(3, Side::Near, Mark::K, Sign::Minus), qi(-1)),
            ],
        )
        .unwrap();
        assert_eq!(d, expected);
        let e = e_class(3, Mark::K);
        assert_eq!(
            e,
            FormalClass::of(
                H3,
                [
                    (Generator::psi(), q(5, 2)),
                    (Generator::plus(2), qi(-2)),
                    (Generator::plus(3), qi(-1)),
                    (BigDelta(4), qi(-1))
                ]
            )
        );
    }

    #[test]
    fn fibre_degree_examples() {
        let n = n_class(3, Mark::K);
        let d = fiber_degrees(&n, Stratum::Boundary { j: 3, k_on_near: true }).unwrap();
        assert_eq!(d, vec![qi(0), qi(1), qi(1)]);
        for g in 2..=6 {
            let m = m_class(g, Mark::K);
            assert_eq!(fiber_degrees(&m, Stratum::Generic).unwrap(), vec![qi(g as i64 - 1)]);
            for i in 1..=(g / 2) {
                for near in [true, false] {
                    let j = 2 * i + 1;
                    if j == g + 1 && !near {
                        continue;
                    }
                    let st = Stratum::Boundary { j, k_on_near: near };
                    let gi = g as i64;
                    let ii = i as i64;
                    assert_eq!(fiber_degrees(&m, st).unwrap(), vec![qi(ii), qi(-1), qi(gi - ii)]);
                    assert_eq!(
                        fiber_degrees(&n_class(g, Mark::K), st).unwrap(),
                        vec![qi(ii - 1), qi(1), qi(gi - ii - 1)]
                    );
                }
            }
        }
    }

    #[test]
    fn section_restriction_examples() {
        let l = lemma_class();
        assert_eq!(
            section_restrict(Mark::K, &l).unwrap(),
            FormalClass::of(
                H3,
                [
                    (Generator::psi(), qi(-1)),
                    (Generator::plus(2), qi(1)),
                    (Generator::plus(3), qi(1))
                ]
            )
        );
        let lam = GMClass::pullback(FormalClass::of(H3, [(Lambda, qi(1))])).unwrap();
        assert_eq!(
            section_restrict(Mark::K, &lam).unwrap(),
            FormalClass::of(H3, [(Lambda, qi(1))])
        );
    }

    #[test]
    fn pullback_recognition() {
        let g2 = GMClass::new(
            2,
            [
                (
                    GMGen::Piece {
                        j: 3,
                        side: Side::Near,
                        mark: None,
                    },
                    qi(2),
                ),
                (GMGen::Ridge { j: 3, mark: None }, qi(1)),
            ],
        )
        .unwrap();
        assert_eq!(
            express_as_pullback(&g2).unwrap(),
            FormalClass::of(SpaceId::Hurwitz(2), [(BigDelta(3), qi(1))])
        );
        let both = GMClass::new(
            3,
            [
                (
                    GMGen::Piece {
                        j: 2,
                        side: Side::Near,
                        mark: None,
                    },
                    qi(1),
                ),
                (
                    GMGen::Piece {
                        j: 2,
                        side: Side::Far,
                        mark: None,
                    },
                    qi(1),
                ),
            ],
        )
        .unwrap();
        assert_eq!(
            express_as_pullback(&both).unwrap(),
            FormalClass::of(H3, [(BigDelta(2), qi(1))])
        );
        let one = GMClass::generator(
            3,
            GMGen::Piece {
                j: 2,
                side: Side::Near,
                mark: None,
            },
        )
        .unwrap();
        assert!(matches!(express_as_pullback(&one), Err(Error::NotAPullback(_))));
        let w = GMClass::generator(3, GMGen::Omega).unwrap();
        assert!(matches!(express_as_pullback(&w), Err(Error::NotAPullback(_))));
    }

    #[test]
    fn pipelines() {
        let s = genus2_solve().unwrap();
        assert_eq!((s.a.clone(), s.b.clone()), (q(-1, 5), q(3, 5)));
        assert_eq!(
            s.residual,
            FormalClass::of(SpaceId::Hurwitz(2), [(BigDelta(2), q(-2, 5)), (BigDelta(3), q(3, 5))])
        );
        assert_eq!(s.class.to_string(), "6 h + 8 lambda - delta0 - delta1");

        let qd = q_class().unwrap();
        assert_eq!(
            qd.a,
            FormalClass::of(
                H3,
                [(BigDelta(2), q(-1, 7)), (BigDelta(3), q(1, 7)), (BigDelta(4), q(1, 7))]
            )
        );

        let hh = hh_class().unwrap();
        assert_eq!(
            hh.derived,
            FormalClass::of(
                H3,
                [
                    (BigDelta(2), q(-2, 7)),
                    (BigDelta(3), q(23, 7)),
                    (BigDelta(4), q(16, 7))
                ]
            )
        );
        assert_eq!(hh.difference, FormalClass::of(H3, [(BigDelta(3), qi(9))]));
    }

    #[test]
    fn quadratic_pushforwards_match_closed_forms() {
        use crate::algebra::normal_form;
        use crate::catalog::structural_relations;
        for g in 2..=6 {
            let s = SpaceId::Hurwitz(g);
            let rels = structural_relations(s);
            let d = d_class(g, Mark::K);
            let w = GMClass::generator(g, GMGen::Omega).unwrap();
            let dw = push_quadratic(&d, &w).unwrap();
            let dd = push_quadratic(&d, &d).unwrap();
            assert_eq!(
                normal_form(&dw, &rels).unwrap(),
                normal_form(&d_omega_closed_form(g, Mark::K), &rels).unwrap(),
                "D.omega in genus {g}"
            );
            assert_eq!(
                normal_form(&dd, &rels).unwrap(),
                normal_form(&d_square_closed_form(g, Mark::K), &rels).unwrap(),
                "D^2 in genus {g}"
            );
        }
    }

    #[test]
    fn grr_recovers_lambda() {
        for g in 2..=6 {
            let lam = hurwitz_lambda(g);
            let zero = FormalClass::zero(SpaceId::Hurwitz(g));
            let cm = grr_c1(&m_class(g, Mark::K), &zero).unwrap();
            assert!(same_class(&cm, &lam).unwrap(), "M in genus {g}: {cm}");
            let cn = grr_c1(&n_class(g, Mark::K), &zero).unwrap();
            assert!(same_class(&cn, &cm).unwrap(), "N in genus {g}: {cn}");
        }
        for m in 1..=6i64 {
            let nm = n_class(3, Mark::K).scale(&qi(m));
            let c = reduce(&grr_c1(&nm, &FormalClass::zero(H3)).unwrap());
            let expected = FormalClass::of(
                H3,
                [
                    (BigDelta(2), q(2 * m * m + m, 14)),
                    (BigDelta(3), q(5 * m * m - m, 14)),
                    (BigDelta(4), q(5 * m * m - m, 14)),
                ],
            );
            assert_eq!(c, expected, "N^{m}");
        }
    }

    #[test]
    fn omega_squared_is_refused() {
        let w = GMClass::generator(3, GMGen::Omega).unwrap();
        assert!(matches!(push_quadratic(&w, &w), Err(Error::Unsupported(_))));
    }
}
