//! Space identifiers and Picard generator names.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The moduli spaces known to the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceId {
    /// Deligne-Mumford compactification of curves of genus g.
    Mbar(u32),
    /// Closure of the hyperelliptic locus in genus g.
    Hbar(u32),
    /// Normalized Hurwitz space of degree-2 admissible covers with b = 2g+2 ordered branch points.
    Hurwitz(u32),
}

impl SpaceId {
    pub fn genus(self) -> u32 {
        match self {
            SpaceId::Mbar(g) | SpaceId::Hbar(g) | SpaceId::Hurwitz(g) => g,
        }
    }

    /// Number of branch points b = 2g+2 on Hurwitz spaces.
    pub fn marks(self) -> Option<u32> {
        match self {
            SpaceId::Hurwitz(g) => Some(2 * g + 2),
            _ => None,
        }
    }

    pub fn contains(self, gen: &Generator) -> bool {
        match (self, gen) {
            (_, Generator::Lambda) => true,
            (SpaceId::Mbar(_), Generator::Kappa1) => true,
            (SpaceId::Mbar(g), Generator::Delta(i)) => *i <= g / 2,
            (SpaceId::Hbar(g), Generator::Delta(i)) => *i <= g / 2,
            (SpaceId::Hbar(g), Generator::Zeta(i)) => *i >= 1 && 2 * i < g,
            (SpaceId::Hurwitz(g), Generator::BigDelta(j)) => (2..=g + 1).contains(j),
            (SpaceId::Hurwitz(g), Generator::MarkedDelta { j, .. }) => (2..=g + 1).contains(j),
            (SpaceId::Hurwitz(_), Generator::Psi(_)) => true,
            _ => false,
        }
    }

    /// Boundary generators in display order.
    pub fn boundary(self) -> Vec<Generator> {
        match self {
            SpaceId::Mbar(g) => (0..=g / 2).map(Generator::Delta).collect(),
            SpaceId::Hbar(g) => {
                let mut v: Vec<Generator> = (0..=g / 2).map(Generator::Delta).collect();
                v.extend((1..).take_while(|i| 2 * i < g).map(Generator::Zeta));
                v
            }
            SpaceId::Hurwitz(g) => (2..=g + 1).map(Generator::BigDelta).collect(),
        }
    }

    /// Named loci that stand for boundary generators under the Torelli map.
    pub fn aliases(self) -> &'static [(&'static str, &'static str)] {
        match self {
            SpaceId::Mbar(2) => &[("A11", "delta1"), ("infinity", "delta0")],
            SpaceId::Mbar(3) => &[("A21", "delta1"), ("infinity", "delta0")],
            SpaceId::Hurwitz(3) => &[("Delta1", "Delta3")],
            _ => &[],
        }
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceId::Mbar(g) => write!(f, "M{g}bar"),
            SpaceId::Hbar(g) => write!(f, "H{g}bar"),
            SpaceId::Hurwitz(g) if *g < 10 => write!(f, "H{g}2"),
            SpaceId::Hurwitz(g) => write!(f, "H{g},2"),
        }
    }
}

impl FromStr for SpaceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpaceId, Error> {
        let bad = || Error::Parse(format!("unknown space {s:?}"));
        let genus = |t: &str| -> Result<u32, Error> {
            let g: u32 = t.parse().map_err(|_| bad())?;
            if g < 2 {
                return Err(bad());
            }
            Ok(g)
        };
        if let Some(rest) = s.strip_prefix('M').and_then(|r| r.strip_suffix("bar")) {
            return Ok(SpaceId::Mbar(genus(rest)?));
        }
        if let Some(rest) = s.strip_prefix('H') {
            if let Some(g) = rest.strip_suffix("bar") {
                return Ok(SpaceId::Hbar(genus(g)?));
            }
            if let Some(g) = rest.strip_suffix(",2") {
                return Ok(SpaceId::Hurwitz(genus(g)?));
            }
            if let Some(g) = rest.strip_suffix('2') {
                return Ok(SpaceId::Hurwitz(genus(g)?));
            }
        }
        Err(bad())
    }
}

/// A symbolic branch-point label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mark(pub char);

impl Mark {
    pub const K: Mark = Mark('k');
}

impl Default for Mark {
    fn default() -> Mark {
        Mark::K
    }
}

/// Whether the mark lies in the distinguished subset Λ (`Plus`) or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A named Picard generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Lambda,
    Kappa1,
    /// Small delta: boundary of curve moduli (and of the hyperelliptic locus).
    Delta(u32),
    /// Hyperelliptic boundary components with two nodes.
    Zeta(u32),
    /// Hurwitz boundary Δ_j, 2 ≤ j ≤ g+1.
    BigDelta(u32),
    /// Δ_j(k±): the part of Δ_j where the mark lies in Λ (+) or not (−).
    MarkedDelta {
        j: u32,
        mark: Mark,
        sign: Sign,
    },
    /// Cotangent class at a mark.
    Psi(Mark),
}

impl Generator {
    pub fn marked(j: u32, sign: Sign) -> Generator {
        Generator::MarkedDelta { j, mark: Mark::K, sign }
    }

    pub fn plus(j: u32) -> Generator {
        Generator::marked(j, Sign::Plus)
    }

    pub fn minus(j: u32) -> Generator {
        Generator::marked(j, Sign::Minus)
    }

    pub fn psi() -> Generator {
        Generator::Psi(Mark::K)
    }

    pub fn mark(&self) -> Option<Mark> {
        match self {
            Generator::MarkedDelta { mark, .. } | Generator::Psi(mark) => Some(*mark),
            _ => None,
        }
    }

    fn sort_key(&self) -> (u8, u32, u8, char) {
        match *self {
            Generator::Lambda => (0, 0, 0, ' '),
            Generator::Kappa1 => (1, 0, 0, ' '),
            Generator::Psi(m) => (2, 0, 0, m.0),
            Generator::Delta(i) => (3, i, 0, ' '),
            Generator::Zeta(i) => (4, i, 0, ' '),
            Generator::BigDelta(j) => (5, j, 0, ' '),
            Generator::MarkedDelta { j, mark, sign } => (5, j, if sign == Sign::Plus { 1 } else { 2 }, mark.0),
        }
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Generator) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Generator) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Lambda => write!(f, "lambda"),
            Generator::Kappa1 => write!(f, "kappa1"),
            Generator::Delta(i) => write!(f, "delta{i}"),
            Generator::Zeta(i) => write!(f, "zeta{i}"),
            Generator::BigDelta(j) => write!(f, "Delta{j}"),
            Generator::MarkedDelta { j, mark, sign } => {
                write!(f, "Delta{j}({}{})", mark.0, sign.symbol())
            }
            Generator::Psi(m) => write!(f, "psi_{}", m.0),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    /// Accepts the display names plus the short forms `Delta2p`, `Delta2m` and `psi`.
    fn from_str(s: &str) -> Result<Generator, Error> {
        let bad = || Error::Parse(format!("unknown identifier {s:?}"));
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        match s {
            "lambda" => return Ok(Generator::Lambda),
            "kappa1" => return Ok(Generator::Kappa1),
            "psi" => return Ok(Generator::psi()),
            _ => {}
        }
        if let Some(m) = s.strip_prefix("psi_") {
            let mut cs = m.chars();
            return match (cs.next(), cs.next()) {
                (Some(c), None) if c.is_ascii_lowercase() => Ok(Generator::Psi(Mark(c))),
                _ => Err(bad()),
            };
        }
        if let Some(rest) = s.strip_prefix("delta") {
            return Ok(Generator::Delta(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix("zeta") {
            return Ok(Generator::Zeta(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix("Delta") {
            if let Some((j, tail)) = rest.split_once('(') {
                let inner = tail.strip_suffix(')').ok_or_else(bad)?;
                let mut cs = inner.chars();
                let (m, sg) = match (cs.next(), cs.next(), cs.next()) {
                    (Some(m), Some(sg), None) if m.is_ascii_lowercase() => (m, sg),
                    _ => return Err(bad()),
                };
                let sign = match sg {
                    '+' => Sign::Plus,
                    '-' => Sign::Minus,
                    _ => return Err(bad()),
                };
                return Ok(Generator::MarkedDelta {
                    j: num(j)?,
                    mark: Mark(m),
                    sign,
                });
            }
            if let Some(j) = rest.strip_suffix('p') {
                return Ok(Generator::plus(num(j)?));
            }
            if let Some(j) = rest.strip_suffix('m') {
                return Ok(Generator::minus(num(j)?));
            }
            return Ok(Generator::BigDelta(num(rest)?));
        }
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whitelists() {
        assert!(SpaceId::Mbar(3).contains(&Generator::Delta(1)));
        assert!(!SpaceId::Mbar(3).contains(&Generator::Delta(2)));
        assert!(!SpaceId::Mbar(3).contains(&Generator::BigDelta(2)));
        assert!(SpaceId::Hbar(3).contains(&Generator::Zeta(1)));
        assert!(!SpaceId::Hbar(4).contains(&Generator::Zeta(2)));
        assert!(SpaceId::Hbar(5).contains(&Generator::Zeta(2)));
        assert!(SpaceId::Hurwitz(3).contains(&Generator::plus(4)));
        assert!(!SpaceId::Hurwitz(3).contains(&Generator::BigDelta(5)));
        assert!(!SpaceId::Hurwitz(3).contains(&Generator::Kappa1));
    }

    #[test]
    fn generator_names_round_trip() {
        for g in [
            Generator::Lambda,
            Generator::Kappa1,
            Generator::Delta(0),
            Generator::Zeta(2),
            Generator::BigDelta(4),
            Generator::plus(3),
            Generator::MarkedDelta {
                j: 2,
                mark: Mark('l'),
                sign: Sign::Minus,
            },
            Generator::psi(),
        ] {
            assert_eq!(g.to_string().parse::<Generator>().unwrap(), g);
        }
        assert_eq!("Delta3p".parse::<Generator>().unwrap(), Generator::plus(3));
        assert_eq!("Delta3m".parse::<Generator>().unwrap(), Generator::minus(3));
        assert!("Delta".parse::<Generator>().is_err());
        assert!("mu".parse::<Generator>().is_err());
    }

    #[test]
    fn space_names_round_trip() {
        for s in [
            SpaceId::Mbar(2),
            SpaceId::Hbar(3),
            SpaceId::Hurwitz(3),
            SpaceId::Hurwitz(12),
        ] {
            assert_eq!(s.to_string().parse::<SpaceId>().unwrap(), s);
        }
        assert!("M1bar".parse::<SpaceId>().is_err());
        assert!("Q3".parse::<SpaceId>().is_err());
    }

    #[test]
    fn boundary_lists() {
        assert_eq!(
            SpaceId::Hbar(3).boundary(),
            vec![Generator::Delta(0), Generator::Delta(1), Generator::Zeta(1)]
        );
        assert_eq!(SpaceId::Hurwitz(2).boundary().len(), 2);
    }
}
