//! Shared fixtures for the benchmarks.

use hodgecalc::catalog::relations;
use hodgecalc::{FormalClass, Generator, Rational, SpaceId};

/// A dense class on `M_g` bar with coefficients 1, 2, 3, ... on λ and the boundary.
pub fn dense_class(g: u32) -> FormalClass {
    let s = SpaceId::Mbar(g);
    let gens = std::iter::once(Generator::Lambda).chain(s.boundary());
    FormalClass::of(s, gens.zip(1..).map(|(gen, i)| (gen, Rational::from_int(i))))
}

/// Genus and `k` pairs swept by the incidence benchmarks.
pub fn incidence_grid() -> Vec<(u32, u32)> {
    (2..=6).flat_map(|g| (2..=4).map(move |k| (g, k))).collect()
}

/// Number of relations known on a space, used to sanity check fixtures.
pub fn relation_count(s: SpaceId) -> usize {
    relations(s).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_nonempty() {
        assert_eq!(dense_class(3).terms().count(), 3);
        assert_eq!(incidence_grid().len(), 15);
        assert!(relation_count(SpaceId::Hurwitz(3)) > 0);
    }
}
