//! Name resolution for the built-in systems, so callers can say
//! `theta` or `d^2` instead of shipping JSON around.

use crate::error::Error;
use crate::system::{build, build_dk, build_g, build_s, build_theta, DivisorSystem, Family};
use crate::triangle::{build_structured, SizeSpec};
use crate::Result;

/// Builds the named system at the given bound.
///
/// Accepted names: `dirichlet`/`d`, `unitary`/`d1`/`d^1`, `d^k`,
/// `theta`, `theta:k`, `ternary`, `z`, `g`, `s`, `suryanarayana:k`,
/// `alladi:k`, `structured:s1,s2,...`, `fixture_noncomplete`,
/// `fixture_paradigmatic`.
pub fn resolve(name: &str, bound: u64) -> Result<DivisorSystem> {
    let lower = name.to_ascii_lowercase();
    let unknown = || Error::UnknownFamily(name.into());
    match lower.as_str() {
        "dirichlet" | "d" | "d^0" => build(&Family::Dirichlet, bound),
        "unitary" | "d1" | "d^1" => build(&Family::Unitary, bound),
        "theta" => build_theta(bound),
        "ternary" => build(&Family::Ternary, bound),
        "z" => build(&Family::Z, bound),
        "g" => build_g(bound),
        "s" => build_s(bound),
        "fixture_noncomplete" => build(&Family::FixtureNoncomplete, bound),
        "fixture_paradigmatic" => build(&Family::FixtureParadigmatic, bound),
        _ => {
            if let Some(k) = lower.strip_prefix("d^") {
                let k: u32 = k.parse().map_err(|_| unknown())?;
                return build_dk(k, bound);
            }
            if let Some(k) = lower.strip_prefix("theta:") {
                let k: u32 = k.parse().map_err(|_| unknown())?;
                return build_structured(&SizeSpec::Repeat(k), bound);
            }
            if let Some(k) = lower.strip_prefix("suryanarayana:") {
                let k: u32 = k.parse().map_err(|_| unknown())?;
                return build(&Family::Suryanarayana(k), bound);
            }
            if let Some(k) = lower.strip_prefix("alladi:") {
                let k: u32 = k.parse().map_err(|_| unknown())?;
                return build(&Family::Alladi(k), bound);
            }
            if let Some(list) = lower.strip_prefix("structured:") {
                let sizes: std::result::Result<Vec<u32>, _> =
                    list.split(',').filter(|s| !s.is_empty()).map(str::parse).collect();
                let sizes = sizes.map_err(|_| unknown())?;
                return build_structured(&SizeSpec::Finite(sizes), bound);
            }
            Err(unknown())
        }
    }
}

/// The systems exercised by the cross-cutting invariant tests.
pub fn canonical_names() -> Vec<&'static str> {
    vec![
        "dirichlet",
        "unitary",
        "d^2",
        "d^3",
        "theta",
        "theta:3",
        "ternary",
        "z",
        "g",
        "s",
        "suryanarayana:2",
        "alladi:2",
        "fixture_noncomplete",
        "fixture_paradigmatic",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_every_canonical_name() {
        for name in canonical_names() {
            let sys = resolve(name, 32).unwrap();
            assert_eq!(sys.bound(), 32, "{name}");
        }
    }

    #[test]
    fn aliases_and_parameters() {
        assert!(resolve("d", 16).unwrap().same_sets(&resolve("dirichlet", 16).unwrap()));
        assert!(resolve("d^1", 16).unwrap().same_sets(&resolve("unitary", 16).unwrap()));
        assert!(resolve("theta:2", 64).unwrap().same_sets(&resolve("theta", 64).unwrap()));
        assert!(resolve("nonsense", 16).is_err());
        assert!(resolve("d^x", 16).is_err());
        assert!(resolve("alladi:0", 16).is_err());
    }
}
