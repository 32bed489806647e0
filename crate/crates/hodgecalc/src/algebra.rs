//! Formal linear combinations of Picard generators, relation normal forms and span solving.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::space::{Generator, SpaceId};

/// A space-tagged sparse linear combination of generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalClass {
    space: SpaceId,
    coeffs: BTreeMap<Generator, Rational>,
}

impl FormalClass {
    pub fn zero(space: SpaceId) -> FormalClass {
        FormalClass {
            space,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a class, rejecting generators outside the space's whitelist.
    pub fn new<I>(space: SpaceId, terms: I) -> Result<FormalClass>
    where
        I: IntoIterator<Item = (Generator, Rational)>,
    {
        let mut c = FormalClass::zero(space);
        for (g, r) in terms {
            c.add_term(g, &r)?;
        }
        Ok(c)
    }

    /// Like [`FormalClass::new`] but panics on a whitelist violation.
    pub fn of<I>(space: SpaceId, terms: I) -> FormalClass
    where
        I: IntoIterator<Item = (Generator, Rational)>,
    {
        FormalClass::new(space, terms).expect("generator outside whitelist")
    }

    pub fn generator(space: SpaceId, g: Generator) -> Result<FormalClass> {
        FormalClass::new(space, [(g, Rational::one())])
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn coeff(&self, g: &Generator) -> Rational {
        self.coeffs.get(g).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Rational)> {
        self.coeffs.iter()
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, g: Generator, r: &Rational) -> Result<()> {
        if !self.space.contains(&g) {
            return Err(Error::UnknownGenerator {
                space: self.space.to_string(),
                generator: g.to_string(),
            });
        }
        if r.is_zero() {
            return Ok(());
        }
        let e = self.coeffs.entry(g).or_default();
        *e += r;
        if e.is_zero() {
            self.coeffs.remove(&g);
        }
        Ok(())
    }

    pub fn scale(&self, r: &Rational) -> FormalClass {
        if r.is_zero() {
            return FormalClass::zero(self.space);
        }
        FormalClass {
            space: self.space,
            coeffs: self.coeffs.iter().map(|(g, c)| (*g, c * r)).collect(),
        }
    }

    pub fn try_add(&self, other: &FormalClass) -> Result<FormalClass> {
        combine([(Rational::one(), self.clone()), (Rational::one(), other.clone())])
    }

    pub fn try_sub(&self, other: &FormalClass) -> Result<FormalClass> {
        combine([(Rational::one(), self.clone()), (-Rational::one(), other.clone())])
    }

    /// Replaces each generator by a class on `target` (linear extension).
    pub fn substitute<F>(&self, target: SpaceId, mut f: F) -> Result<FormalClass>
    where
        F: FnMut(&Generator) -> Result<FormalClass>,
    {
        let mut out = FormalClass::zero(target);
        for (g, c) in &self.coeffs {
            let image = f(g)?;
            if image.space != target {
                return Err(Error::SpaceMismatch(image.space.to_string(), target.to_string()));
            }
            for (h, d) in &image.coeffs {
                out.add_term(*h, &(c * d))?;
            }
        }
        Ok(out)
    }

    pub fn as_map(&self) -> &BTreeMap<Generator, Rational> {
        &self.coeffs
    }
}

fn same_space(a: &FormalClass, b: &FormalClass) {
    assert_eq!(a.space, b.space, "formal classes on different spaces");
}

impl<'a> Add<&'a FormalClass> for &'a FormalClass {
    type Output = FormalClass;
    fn add(self, rhs: &'a FormalClass) -> FormalClass {
        same_space(self, rhs);
        self.try_add(rhs).expect("same space")
    }
}

impl Add for FormalClass {
    type Output = FormalClass;
    fn add(self, rhs: FormalClass) -> FormalClass {
        &self + &rhs
    }
}

impl<'a> Sub<&'a FormalClass> for &'a FormalClass {
    type Output = FormalClass;
    fn sub(self, rhs: &'a FormalClass) -> FormalClass {
        same_space(self, rhs);
        self.try_sub(rhs).expect("same space")
    }
}

impl Sub for FormalClass {
    type Output = FormalClass;
    fn sub(self, rhs: FormalClass) -> FormalClass {
        &self - &rhs
    }
}

impl Neg for FormalClass {
    type Output = FormalClass;
    fn neg(self) -> FormalClass {
        self.scale(&-Rational::one())
    }
}

impl<'a> Mul<&'a FormalClass> for &'a Rational {
    type Output = FormalClass;
    fn mul(self, rhs: &'a FormalClass) -> FormalClass {
        rhs.scale(self)
    }
}

impl Mul<FormalClass> for Rational {
    type Output = FormalClass;
    fn mul(self, rhs: FormalClass) -> FormalClass {
        rhs.scale(&self)
    }
}

/// Writes a linear combination `c1 x1 + c2 x2 ...` with `0` for the empty sum.
pub(crate) fn write_combination<'a, I, T>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (T, &'a Rational)>,
    T: fmt::Display,
{
    let mut first = true;
    for (name, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        let name = name.to_string();
        if name.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{mag} {name}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for FormalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, self.coeffs.iter())
    }
}

impl fmt::Debug for FormalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.space, self)
    }
}

/// Sums scaled classes; all terms must live on one space.
pub fn combine<I>(terms: I) -> Result<FormalClass>
where
    I: IntoIterator<Item = (Rational, FormalClass)>,
{
    let mut out: Option<FormalClass> = None;
    for (r, c) in terms {
        match &mut out {
            None => out = Some(c.scale(&r)),
            Some(acc) => {
                if acc.space != c.space {
                    return Err(Error::SpaceMismatch(acc.space.to_string(), c.space.to_string()));
                }
                for (g, d) in &c.coeffs {
                    acc.add_term(*g, &(&r * d))?;
                }
            }
        }
    }
    out.ok_or_else(|| Error::Unsupported("combine of an empty sequence has no space".into()))
}

/// Relations declared zero, each eliminating a designated generator.
///
/// Stored in fully reduced form: every pivot maps to a class free of pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    space: SpaceId,
    rules: Vec<(Generator, FormalClass)>,
}

impl RelationSet {
    pub fn empty(space: SpaceId) -> RelationSet {
        RelationSet {
            space,
            rules: Vec::new(),
        }
    }

    /// Triangular elimination in the given order.
    pub fn new(space: SpaceId, relations: Vec<(FormalClass, Generator)>) -> Result<RelationSet> {
        let mut set = RelationSet::empty(space);
        for (rel, pivot) in relations {
            if rel.space != space {
                return Err(Error::SpaceMismatch(rel.space.to_string(), space.to_string()));
            }
            let reduced = set.reduce(&rel);
            let p = reduced.coeff(&pivot);
            if p.is_zero() {
                return Err(Error::BadRelation(pivot.to_string()));
            }
            // pivot = -(rest)/p
            let mut rest = reduced;
            rest.coeffs.remove(&pivot);
            let replacement = rest.scale(&(-p.recip()));
            for (_, r) in set.rules.iter_mut() {
                let c = r.coeff(&pivot);
                if !c.is_zero() {
                    r.coeffs.remove(&pivot);
                    *r = &*r + &replacement.scale(&c);
                }
            }
            set.rules.push((pivot, replacement));
        }
        Ok(set)
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Generator> {
        self.rules.iter().map(|(g, _)| g)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    fn reduce(&self, c: &FormalClass) -> FormalClass {
        let mut out = c.clone();
        for (pivot, repl) in &self.rules {
            let k = out.coeff(pivot);
            if !k.is_zero() {
                out.coeffs.remove(pivot);
                out = &out + &repl.scale(&k);
            }
        }
        out
    }

    /// Restricts to the rules whose pivots satisfy `keep`, re-reducing from scratch.
    pub fn filtered<F: Fn(&Generator) -> bool>(&self, keep: F) -> RelationSet {
        let rels = self
            .rules
            .iter()
            .filter(|(p, _)| keep(p))
            .map(|(p, r)| {
                let mut rel = r.clone().neg();
                rel.coeffs.insert(*p, Rational::one());
                (rel, *p)
            })
            .collect();
        RelationSet::new(self.space, rels).expect("sub-system of a valid system")
    }
}

/// The unique representative of `c` modulo `rels`.
pub fn normal_form(c: &FormalClass, rels: &RelationSet) -> Result<FormalClass> {
    if c.space != rels.space {
        return Err(Error::SpaceMismatch(c.space.to_string(), rels.space.to_string()));
    }
    Ok(rels.reduce(c))
}

/// Whether `a - b` lies in the span of `rels`.
pub fn equivalent(a: &FormalClass, b: &FormalClass, rels: &RelationSet) -> Result<bool> {
    let d = a.try_sub(b)?;
    Ok(normal_form(&d, rels)?.is_zero())
}

/// Coefficients expressing `target` in the span of `basis`.
pub fn solve_in_span(target: &FormalClass, basis: &[FormalClass]) -> Result<Vec<Rational>> {
    for b in basis {
        if b.space != target.space {
            return Err(Error::SpaceMismatch(b.space.to_string(), target.space.to_string()));
        }
    }
    let cols: Vec<&BTreeMap<Generator, Rational>> = basis.iter().map(|b| &b.coeffs).collect();
    solve_sparse(&target.coeffs, &cols).ok_or(Error::NotInSpan)
}

/// Exact Gauss-Jordan solve of `Σ x_i basis_i = target` over sparse keyed vectors.
///
/// Free variables are set to zero.
pub fn solve_sparse<K: Ord + Clone>(
    target: &BTreeMap<K, Rational>,
    basis: &[&BTreeMap<K, Rational>],
) -> Option<Vec<Rational>> {
    let keys: BTreeSet<K> = target
        .keys()
        .chain(basis.iter().flat_map(|b| b.keys()))
        .cloned()
        .collect();
    let n = basis.len();
    let mut rows: Vec<Vec<Rational>> = keys
        .iter()
        .map(|k| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b.get(k).cloned().unwrap_or_default()).collect();
            row.push(target.get(k).cloned().unwrap_or_default());
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let (pivot, row) = if i < r {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = rows.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &(&f * y);
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &col) in pivot_cols.iter().enumerate() {
        x[col] = rows[i][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use Generator::*;

    const M2: SpaceId = SpaceId::Mbar(2);
    const M3: SpaceId = SpaceId::Mbar(3);
    const H3: SpaceId = SpaceId::Hurwitz(3);

    fn mumford() -> RelationSet {
        let rel = FormalClass::of(M2, [(Lambda, qi(10)), (Delta(0), qi(-1)), (Delta(1), qi(-2))]);
        RelationSet::new(M2, vec![(rel, Lambda)]).unwrap()
    }

    #[test]
    fn combine_examples() {
        let l = FormalClass::of(M2, [(Lambda, qi(8))]);
        let d0 = FormalClass::of(M2, [(Delta(0), qi(1))]);
        let d1 = FormalClass::of(M2, [(Delta(1), qi(1))]);
        let c = combine([(qi(1), l), (qi(-1), d0), (qi(-1), d1)]).unwrap();
        assert_eq!(c.to_string(), "8 lambda - delta0 - delta1");

        let z = combine([(qi(0), FormalClass::of(M2, [(Lambda, qi(5))]))]).unwrap();
        assert!(z.is_zero());

        let a = FormalClass::of(H3, [(BigDelta(2), q(3, 14))]);
        let b = FormalClass::of(H3, [(BigDelta(3), q(2, 7))]);
        let c = combine([(qi(3), a), (qi(1), b)]).unwrap();
        assert_eq!(
            c,
            FormalClass::of(H3, [(BigDelta(2), q(9, 14)), (BigDelta(3), q(2, 7))])
        );
    }

    #[test]
    fn combine_rejects_mixed_spaces() {
        let a = FormalClass::of(M2, [(Lambda, qi(1))]);
        let b = FormalClass::of(M3, [(Lambda, qi(1))]);
        assert!(matches!(
            combine([(qi(1), a), (qi(1), b)]),
            Err(Error::SpaceMismatch(..))
        ));
    }

    #[test]
    fn whitelist_is_enforced() {
        assert!(FormalClass::new(M2, [(BigDelta(2), qi(1))]).is_err());
        assert!(FormalClass::new(M2, [(Delta(2), qi(1))]).is_err());
    }

    #[test]
    fn kappa_elimination() {
        let rel = FormalClass::of(
            M3,
            [(Kappa1, qi(1)), (Lambda, qi(-12)), (Delta(0), qi(1)), (Delta(1), qi(1))],
        );
        let rels = RelationSet::new(M3, vec![(rel, Kappa1)]).unwrap();
        let k = FormalClass::of(M3, [(Kappa1, qi(1))]);
        assert_eq!(
            normal_form(&k, &rels).unwrap().to_string(),
            "12 lambda - delta0 - delta1"
        );
        assert!(normal_form(&FormalClass::zero(M3), &rels).unwrap().is_zero());
    }

    #[test]
    fn mumford_equivalences() {
        let rels = mumford();
        let a = FormalClass::of(M2, [(Lambda, qi(-2)), (Delta(1), qi(1))]);
        let b = FormalClass::of(M2, [(Lambda, qi(8)), (Delta(0), qi(-1)), (Delta(1), qi(-1))]);
        assert_eq!(normal_form(&a, &rels).unwrap(), normal_form(&b, &rels).unwrap());
        assert!(equivalent(&a, &b, &rels).unwrap());
        let c = FormalClass::of(M2, [(Lambda, qi(28)), (Delta(0), qi(-3)), (Delta(1), qi(-5))]);
        assert!(equivalent(&c, &b, &rels).unwrap());
        let l = FormalClass::of(M2, [(Lambda, qi(1))]);
        assert!(equivalent(&l, &l, &RelationSet::empty(M2)).unwrap());
        assert!(!equivalent(&l, &b, &rels).unwrap());
    }

    #[test]
    fn zero_pivot_is_rejected() {
        let rel = FormalClass::of(M2, [(Delta(0), qi(1))]);
        assert_eq!(
            RelationSet::new(M2, vec![(rel, Lambda)]),
            Err(Error::BadRelation("lambda".into()))
        );
    }

    #[test]
    fn dependent_relation_is_rejected() {
        let rel = FormalClass::of(M2, [(Lambda, qi(10)), (Delta(0), qi(-1)), (Delta(1), qi(-2))]);
        let r2 = rel.scale(&qi(2));
        assert!(matches!(
            RelationSet::new(M2, vec![(rel, Lambda), (r2, Delta(0))]),
            Err(Error::BadRelation(_))
        ));
    }

    #[test]
    fn later_relations_back_substitute() {
        let k = FormalClass::of(
            M2,
            [(Kappa1, qi(1)), (Lambda, qi(-12)), (Delta(0), qi(1)), (Delta(1), qi(1))],
        );
        let m = FormalClass::of(M2, [(Lambda, qi(10)), (Delta(0), qi(-1)), (Delta(1), qi(-2))]);
        let rels = RelationSet::new(M2, vec![(k, Kappa1), (m, Lambda)]).unwrap();
        let nf = normal_form(&FormalClass::of(M2, [(Kappa1, qi(1))]), &rels).unwrap();
        assert_eq!(nf, FormalClass::of(M2, [(Delta(0), q(1, 5)), (Delta(1), q(7, 5))]));
    }

    #[test]
    fn span_examples() {
        let l = FormalClass::of(M2, [(Lambda, qi(1))]);
        let two_l = FormalClass::of(M2, [(Lambda, qi(2))]);
        assert_eq!(solve_in_span(&two_l, std::slice::from_ref(&l)).unwrap(), vec![qi(2)]);
        let d0 = FormalClass::of(M2, [(Delta(0), qi(1))]);
        assert_eq!(solve_in_span(&d0, &[l]), Err(Error::NotInSpan));
        let t = FormalClass::of(H3, [(BigDelta(2), q(-2, 5)), (BigDelta(3), q(3, 5))]);
        let basis = [
            FormalClass::of(H3, [(BigDelta(2), qi(1))]),
            FormalClass::of(H3, [(BigDelta(3), qi(1))]),
        ];
        assert_eq!(solve_in_span(&t, &basis).unwrap(), vec![q(-2, 5), q(3, 5)]);
    }

    #[test]
    fn dependent_basis_solves_with_free_zero() {
        let a = FormalClass::of(M3, [(Lambda, qi(1)), (Delta(0), qi(1))]);
        let b = a.scale(&qi(2));
        let c = FormalClass::of(M3, [(Delta(1), qi(1))]);
        let t = FormalClass::of(M3, [(Lambda, qi(3)), (Delta(0), qi(3)), (Delta(1), qi(-1))]);
        let x = solve_in_span(&t, &[a.clone(), b.clone(), c.clone()]).unwrap();
        let back = combine([(x[0].clone(), a), (x[1].clone(), b), (x[2].clone(), c)]).unwrap();
        assert_eq!(back, t);
    }
}
