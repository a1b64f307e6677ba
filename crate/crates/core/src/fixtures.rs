//! Built-in two-state instances used for regression checks.
//!
//! 1. MAC, `q = 4`: `(N1, N2) = (4, 3)` w.p. `p`, `(2, 4)` w.p. `1 − p`.
//! 2. Ergodic very strong IFC: `(2, 1, 4)` and `(1, 4, 1)`, each w.p. 1/2.
//! 3. Mixed IFC meeting the lemma condition: `(2, 1, 2)` and `(3, 4, 1)`.
//! 4. Mixed IFC closed by a private level: `(2, 4, 1)` and `(2, 1, 1)`.
//!
//! IFC states are listed as `(N11, N21, N22)`.

use num_traits::One;

use crate::model::{parse_instance, Instance, MacState};
use crate::{FadingDistribution, MacDistribution, Rational};

pub const EXAMPLE1: &str = include_str!("../fixtures/example1.json");
pub const EXAMPLE2: &str = include_str!("../fixtures/example2.json");
pub const EXAMPLE3: &str = include_str!("../fixtures/example3.json");
pub const EXAMPLE4: &str = include_str!("../fixtures/example4.json");

/// `(file stem, contents)` of every embedded fixture.
pub const EMBEDDED: [(&str, &str); 4] =
    [("example1", EXAMPLE1), ("example2", EXAMPLE2), ("example3", EXAMPLE3), ("example4", EXAMPLE4)];

fn ifc(text: &str) -> FadingDistribution {
    match parse_instance(text).expect("embedded fixture is valid") {
        Instance::Ifc(d) => d,
        Instance::Mac(_) => unreachable!("fixture is an ifc instance"),
    }
}

/// MAC example with state `(4, 3)` at probability `p ∈ (0, 1]`.
///
/// # Panics
///
/// Panics if `p` is outside `(0, 1]`.
pub fn example1(p: Rational) -> MacDistribution {
    let mut atoms = vec![(MacState::new(4, 3), p.clone())];
    if !p.is_one() {
        atoms.push((MacState::new(2, 4), Rational::one() - p));
    }
    MacDistribution::new(4, atoms).expect("p must lie in (0, 1]")
}

pub fn example2() -> FadingDistribution {
    ifc(EXAMPLE2)
}

pub fn example3() -> FadingDistribution {
    ifc(EXAMPLE3)
}

pub fn example4() -> FadingDistribution {
    ifc(EXAMPLE4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational;

    #[test]
    fn embedded_example1_matches_constructor() {
        assert_eq!(parse_instance(EXAMPLE1).unwrap(), Instance::Mac(example1(rational(1, 2))));
    }

    #[test]
    fn all_fixtures_parse() {
        for (name, text) in EMBEDDED {
            assert!(parse_instance::<Rational>(text).is_ok(), "{name}");
        }
    }
}
