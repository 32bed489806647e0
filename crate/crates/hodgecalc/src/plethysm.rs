//! GL(2) bookkeeping for weights pulled back to the hyperelliptic stack, where the Hodge
//! bundle becomes a symmetric power of the standard representation W.

use std::fmt;

use crate::bundle::WeightTuple;
use crate::error::{Error, Result};
use crate::rational::binomial;

/// A direct sum of W_{a,b} = Sym^a(W) ⊗ det(W)^b, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GL2Rep(Vec<(u32, i64)>);

impl GL2Rep {
    pub fn new<I: IntoIterator<Item = (u32, i64)>>(summands: I) -> GL2Rep {
        let mut v: Vec<(u32, i64)> = summands.into_iter().collect();
        v.sort_by(|x, y| y.cmp(x));
        GL2Rep(v)
    }

    pub fn summands(&self) -> &[(u32, i64)] {
        &self.0
    }

    pub fn dimension(&self) -> u64 {
        self.0.iter().map(|(a, _)| *a as u64 + 1).sum()
    }

    /// Tensors every summand with det(W)^e.
    pub fn twist(&self, e: i64) -> GL2Rep {
        GL2Rep::new(self.0.iter().map(|&(a, b)| (a, b + e)))
    }
}

impl fmt::Display for GL2Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, b)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "W[{a},{b}]")?;
        }
        Ok(())
    }
}

/// Sym^n(Sym² W) = ⊕_{t ≤ n/2} W_{2n−4t, 2t}.
pub fn sym_sym2(n: u32) -> GL2Rep {
    let rep = GL2Rep::new((0..=n / 2).map(|t| (2 * n - 4 * t, 2 * t as i64)));
    debug_assert_eq!(binomial(n as i64 + 2, 2).to_i64(), Some(rep.dimension() as i64));
    rep
}

/// Result of pulling a weight back along the hyperelliptic map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PulledWeight {
    pub rep: GL2Rep,
    /// Degree of the corresponding invariant of binary forms, for scalar weights.
    pub invariant_degree: Option<i64>,
}

/// Substitutes E ↦ Sym^{g−1}(W) (g ≤ 3) or the scalar determinant rule, and decomposes.
pub fn hyperelliptic_pullback_weight(w: &WeightTuple) -> Result<PulledWeight> {
    let g = w.genus();
    let e = w.entries();
    if w.is_scalar() {
        let k = w.det_power();
        // Odd genus: det(E) ↦ det(W)^{g}, degree half the exponent; even genus: det(W)^{g/2}.
        let gk = g as i64 * k;
        let (det, degree) = if g % 2 == 1 {
            if k % 2 != 0 {
                return Err(Error::ParityError(k));
            }
            (gk, gk / 2)
        } else {
            (gk / 2, gk / 2)
        };
        return Ok(PulledWeight {
            rep: GL2Rep::new([(0, det)]),
            invariant_degree: Some(degree),
        });
    }
    match g {
        2 => {
            let (j, k) = (e[0], e[1]);
            Ok(PulledWeight {
                rep: GL2Rep::new([(j as u32, k)]),
                invariant_degree: None,
            })
        }
        3 => {
            let (a, b, k) = (e[0], e[1], e[2]);
            if k % 2 != 0 {
                return Err(Error::ParityError(k));
            }
            // det(Sym² W) = det(W)³ and ∧²(Sym² W) = Sym² W ⊗ det(W).
            let rep = match (a, b) {
                (j, 0) => sym_sym2(j as u32).twist(3 * k),
                (0, j) => sym_sym2(j as u32).twist(j + 3 * k),
                _ => return Err(Error::Unsupported(format!("mixed weight {w} needs a general plethysm"))),
            };
            Ok(PulledWeight {
                rep,
                invariant_degree: None,
            })
        }
        _ => Err(Error::Unsupported(format!("vector-valued weight {w} in genus {g}"))),
    }
}

/// det exponent of the pullback of a weight-k section under the normalization used for
/// covariants in genus three, det(W)^{k/2}.
pub fn covariant_det_exponent(k: i64) -> Result<i64> {
    if k % 2 != 0 {
        return Err(Error::ParityError(k));
    }
    Ok(k / 2)
}

/// A covariant of binary octics identified up to a scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covariant {
    pub order: u32,
    pub identification: &'static str,
}

pub fn covariant_bidegree(w: &WeightTuple) -> Result<Covariant> {
    let (order, identification) = match w.entries() {
        [4, 0, 8] => (8, "f_{8,-2}·d"),
        [2, 0, 4] => (4, "f_{4,-1}·d"),
        [0, 0, 14] => (0, "d"),
        [8, 12] => (8, "f_{8,-2}·d"),
        _ => return Err(Error::Unsupported(format!("no covariant tabulated for weight {w}"))),
    };
    Ok(Covariant { order, identification })
}

/// Weight of the discriminant of a quadratic form of weight (2, 0, …, 0, k) on a rank-g bundle.
pub fn discriminant_weight(g: u32, k: i64) -> i64 {
    g as i64 * k + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    // Character of Sym^n(Sym² W) as a multiset of torus weights x^p y^q.
    fn character(n: u32) -> BTreeMap<(u32, u32), i64> {
        let mut out = BTreeMap::new();
        for a in 0..=n {
            for b in 0..=n - a {
                let c = n - a - b;
                *out.entry((2 * a + b, b + 2 * c)).or_insert(0) += 1;
            }
        }
        out
    }

    fn rep_character(r: &GL2Rep) -> BTreeMap<(u32, u32), i64> {
        let mut out = BTreeMap::new();
        for &(a, b) in r.summands() {
            for i in 0..=a {
                let p = (i as i64 + b) as u32;
                let q = (a - i) as i64 + b;
                *out.entry((p, q as u32)).or_insert(0) += 1;
            }
        }
        out
    }

    #[test]
    fn decomposition_matches_characters() {
        for n in 0..=12 {
            assert_eq!(rep_character(&sym_sym2(n)), character(n), "n = {n}");
        }
    }

    #[test]
    fn examples() {
        assert_eq!(sym_sym2(4), GL2Rep::new([(8, 0), (4, 2), (0, 4)]));
        assert_eq!(sym_sym2(4).dimension(), 15);
        assert_eq!(sym_sym2(3), GL2Rep::new([(6, 0), (2, 2)]));
        let p = hyperelliptic_pullback_weight(&WeightTuple::new(vec![4, 0, 8])).unwrap();
        assert_eq!(p.rep, GL2Rep::new([(8, 24), (4, 26), (0, 28)]));
        let s = hyperelliptic_pullback_weight(&WeightTuple::scalar(3, 14)).unwrap();
        assert_eq!(s.invariant_degree, Some(21));
        assert!(matches!(
            hyperelliptic_pullback_weight(&WeightTuple::scalar(3, 9)),
            Err(Error::ParityError(9))
        ));
        assert_eq!(discriminant_weight(4, 8), 34);
        assert_eq!(discriminant_weight(2, 8), 18);
        assert_eq!(covariant_bidegree(&WeightTuple::new(vec![2, 0, 4])).unwrap().order, 4);
        assert!(covariant_bidegree(&WeightTuple::new(vec![2, 0, 6])).is_err());
    }
}
