//! Class-A membership of arithmetical functions, construction of class
//! members from primitive values, maximal classes, and group-closure
//! sampling experiments.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{approx_eq, convolve, inverse, standard, ArithFunc, Side, Standard};
use crate::decomp::{merge, unique_decompositions};
use crate::error::Error;
use crate::properties::PropertyReport;
use crate::system::DivisorSystem;
use crate::Result;

/// Pass iff `m ∈ A(mn) ⇒ f(mn) = f(m) f(n)` (under the comparison rule)
/// for every pair with `mn` at bound. Witness `[m, n]`.
pub fn is_class_member(sys: &DivisorSystem, f: &ArithFunc, tol: f64) -> Result<PropertyReport> {
    if sys.bound() != f.bound() {
        return Err(Error::BoundMismatch { left: sys.bound(), right: f.bound() });
    }
    let n_max = sys.bound();
    let mut witness: Option<Vec<u64>> = None;
    for m in 1..=n_max {
        for n in 1..=(n_max / m) {
            if sys.contains(m * n, m) && !values_multiply(f, m, n, tol) {
                let cand = vec![m, n];
                if witness.as_ref().is_none_or(|w| cand < *w) {
                    witness = Some(cand);
                }
            }
        }
    }
    Ok(PropertyReport {
        predicate: "class_member".into(),
        pass: witness.is_none(),
        witness,
        bound: n_max,
    })
}

fn values_multiply(f: &ArithFunc, m: u64, n: u64, tol: f64) -> bool {
    let lhs = f.get(m * n).unwrap();
    let rhs = f.get(m).unwrap() * f.get(n).unwrap();
    if f.integer_exact() {
        lhs == rhs
    } else {
        approx_eq(lhs, rhs, tol)
    }
}

/// The unique class member with the given values at the A-primitives:
/// `g(n) = Π values(q_i)^{a_i}` along the A-decomposition of n.
pub fn extend_from_primitives(
    sys: &DivisorSystem,
    values: &BTreeMap<u64, Complex64>,
) -> Result<ArithFunc> {
    let decs = unique_decompositions(sys)?;
    let out: Result<Vec<Complex64>> = decs
        .iter()
        .map(|parts| {
            let mut acc = Complex64::new(1.0, 0.0);
            for &(q, a) in parts {
                let v = values.get(&q).ok_or(Error::MissingPrimitiveValue { q })?;
                acc *= v.powu(a);
            }
            Ok(acc)
        })
        .collect();
    ArithFunc::new(out?, false)
}

/// The maximal class `m(f)(n) = { d | n : f(n) = f(d) f(n/d) }` at the
/// comparison tolerance.
pub fn maximal_class(f: &ArithFunc, tol: f64) -> Result<DivisorSystem> {
    if !approx_eq(f.get(1)?, Complex64::new(1.0, 0.0), tol) {
        return Err(Error::NotNormalized);
    }
    let sets = (1..=f.bound())
        .map(|n| {
            crate::num::divisors(n)
                .into_iter()
                .filter(|&d| {
                    let lhs = f.get(n).unwrap();
                    let rhs = f.get(d).unwrap() * f.get(n / d).unwrap();
                    if f.integer_exact() {
                        lhs == rhs
                    } else {
                        approx_eq(lhs, rhs, tol)
                    }
                })
                .collect()
        })
        .collect();
    DivisorSystem::from_sets("m(f)", sets)
}

/// The exact maximal-class witness of a complete system: `d ∈ m(n)` iff the
/// primitive exponent vectors satisfy `e(n) = e(d) + e(n/d)`. This realizes
/// the generic-values witness without transcendental arithmetic.
pub fn maximal_class_exact(sys: &DivisorSystem) -> Result<DivisorSystem> {
    let decs = unique_decompositions(sys)?;
    let e = |n: u64| &decs[(n - 1) as usize];
    let sets = (1..=sys.bound())
        .map(|n| {
            crate::num::divisors(n)
                .into_iter()
                .filter(|&d| merge(e(d), e(n / d)) == *e(n))
                .collect()
        })
        .collect();
    DivisorSystem::from_sets(format!("m*({})", sys.name()), sets)
}

/// Draws a complex value with both components uniform in [-1, 1] and kept
/// away from zero, so inverses stay tame.
fn sample_component(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let x: f64 = rng.gen_range(-1.0..1.0);
        if x.abs() >= 0.1 {
            return x;
        }
    }
}

fn sample_class_function(sys: &DivisorSystem, rng: &mut ChaCha8Rng) -> Result<ArithFunc> {
    let values: BTreeMap<u64, Complex64> = sys
        .primitives()
        .into_iter()
        .map(|q| {
            (
                q,
                Complex64::new(sample_component(rng), sample_component(rng)),
            )
        })
        .collect();
    extend_from_primitives(sys, &values)
}

/// Samples pairs from `c(cls)` and checks that the `conv`-convolution and
/// right inversion stay inside the class. Sample 0 is always the
/// deterministic pair (u, u), so classical failures reproduce without
/// depending on the generator.
pub fn group_closure(
    conv: &DivisorSystem,
    cls: &DivisorSystem,
    samples: u32,
    seed: u64,
    tol: f64,
) -> Result<PropertyReport> {
    if conv.bound() != cls.bound() {
        return Err(Error::BoundMismatch { left: conv.bound(), right: cls.bound() });
    }
    // fail fast when cls cannot be sampled from
    unique_decompositions(cls)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = standard(Standard::U, conv.bound())?;
    for i in 0..samples {
        let (f, g) = if i == 0 {
            (u.clone(), u.clone())
        } else {
            (sample_class_function(cls, &mut rng)?, sample_class_function(cls, &mut rng)?)
        };
        let prod = convolve(conv, &f, &g)?;
        let rep = is_class_member(cls, &prod, tol)?;
        if !rep.pass {
            return Ok(PropertyReport { predicate: "group_closure".into(), ..rep });
        }
        let inv = inverse(conv, &f, Side::Right)?;
        let rep = is_class_member(cls, &inv, tol)?;
        if !rep.pass {
            return Ok(PropertyReport { predicate: "group_closure".into(), ..rep });
        }
    }
    Ok(PropertyReport {
        predicate: "group_closure".into(),
        pass: true,
        witness: None,
        bound: conv.bound(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{derived_function, Derived, DEFAULT_TOL};
    use crate::system::{build, build_g, build_s, build_theta, Family};

    #[test]
    fn class_membership_examples() {
        let d1 = build(&Family::Unitary, 128).unwrap();
        let phi = standard(Standard::Phi, 128).unwrap();
        assert!(is_class_member(&d1, &phi, DEFAULT_TOL).unwrap().pass);

        let d = build(&Family::Dirichlet, 128).unwrap();
        let rep = is_class_member(&d, &phi, DEFAULT_TOL).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.witness, Some(vec![2, 2]));

        let z = build(&Family::Z, 128).unwrap();
        let tau = standard(Standard::Tau, 128).unwrap();
        assert!(is_class_member(&z, &tau, DEFAULT_TOL).unwrap().pass);
    }

    #[test]
    fn extension_examples() {
        let d1 = build(&Family::Unitary, 100).unwrap();
        let values: BTreeMap<u64, Complex64> = d1
            .primitives()
            .into_iter()
            .map(|q| {
                let p = crate::num::factorize(q)[0].0;
                (q, Complex64::new((q - q / p) as f64, 0.0))
            })
            .collect();
        let ext = extend_from_primitives(&d1, &values).unwrap();
        let phi = standard(Standard::Phi, 100).unwrap();
        for n in 1..=100 {
            assert!(approx_eq(ext.get(n).unwrap(), phi.get(n).unwrap(), DEFAULT_TOL));
        }

        let d = build(&Family::Dirichlet, 64).unwrap();
        let values: BTreeMap<u64, Complex64> = d
            .primitives()
            .into_iter()
            .map(|p| (p, Complex64::new(p as f64, 0.0)))
            .collect();
        let ext = extend_from_primitives(&d, &values).unwrap();
        let ident = standard(Standard::I, 64).unwrap();
        for n in 1..=64 {
            assert!(approx_eq(ext.get(n).unwrap(), ident.get(n).unwrap(), DEFAULT_TOL));
        }

        let th = build_theta(64).unwrap();
        let ones: BTreeMap<u64, Complex64> = th
            .primitives()
            .into_iter()
            .map(|q| (q, Complex64::new(1.0, 0.0)))
            .collect();
        let ext = extend_from_primitives(&th, &ones).unwrap();
        for n in 1..=64 {
            assert_eq!(ext.get(n).unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn maximal_class_examples() {
        let phi = standard(Standard::Phi, 100).unwrap();
        let d1 = build(&Family::Unitary, 100).unwrap();
        assert!(maximal_class(&phi, DEFAULT_TOL).unwrap().same_sets(&d1));

        let d = build(&Family::Dirichlet, 100).unwrap();
        let tau = derived_function(&d, Derived::Tau).unwrap();
        assert!(maximal_class(&tau, DEFAULT_TOL).unwrap().same_sets(&d1));

        let mu = standard(Standard::Mu, 100).unwrap();
        assert!(maximal_class(&mu, DEFAULT_TOL).unwrap().contains(8, 2));
    }

    #[test]
    fn exact_maximal_class_examples() {
        let th = build_theta(128).unwrap();
        assert!(maximal_class_exact(&th).unwrap().same_sets(&th));
        let d = build(&Family::Dirichlet, 128).unwrap();
        assert!(maximal_class_exact(&d).unwrap().same_sets(&d));
        let g = build_g(128).unwrap();
        assert!(maximal_class_exact(&g).unwrap().same_sets(&th));
        let s = build_s(128).unwrap();
        assert!(maximal_class_exact(&s).unwrap().same_sets(&s));
    }

    #[test]
    fn group_closure_examples() {
        let th = build_theta(128).unwrap();
        assert!(group_closure(&th, &th, 5, 7, 1e-7).unwrap().pass);

        let d = build(&Family::Dirichlet, 128).unwrap();
        let d1 = build(&Family::Unitary, 128).unwrap();
        assert!(group_closure(&d, &d1, 5, 7, 1e-7).unwrap().pass);

        let rep = group_closure(&d, &d, 1, 7, 1e-7).unwrap();
        assert!(!rep.pass);
        // u * u = tau fails complete multiplicativity first at 4 = 2 * 2
        assert_eq!(rep.witness, Some(vec![2, 2]));
    }

    #[test]
    fn sampled_class_functions_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for sys in [
            build(&Family::Dirichlet, 64).unwrap(),
            build_theta(64).unwrap(),
            build_s(64).unwrap(),
        ] {
            let f_sys = crate::decomp::derive(&sys, crate::decomp::DeriveWhich::ParadigmaticF).unwrap();
            for _ in 0..10 {
                let f = sample_class_function(&sys, &mut rng).unwrap();
                assert!(is_class_member(&f_sys, &f, 1e-7).unwrap().pass);
                assert!(is_class_member(&sys, &f, 1e-7).unwrap().pass);
            }
        }
    }

    #[test]
    fn maximal_class_is_symmetric_and_contains_z() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let th = build_theta(64).unwrap();
        let f = sample_class_function(&th, &mut rng).unwrap();
        let m = maximal_class(&f, 1e-7).unwrap();
        for n in 1..=64 {
            assert!(m.contains(n, 1) && m.contains(n, n));
            for &d in m.divisor_set(n).unwrap() {
                assert!(m.contains(n, n / d));
            }
            // A ⊆ m(f) for f ∈ c(A)
            for &d in th.divisor_set(n).unwrap() {
                assert!(m.contains(n, d));
            }
        }
    }

    #[test]
    fn missing_primitive_value_is_reported() {
        let d = build(&Family::Dirichlet, 16).unwrap();
        let empty = BTreeMap::new();
        assert!(matches!(
            extend_from_primitives(&d, &empty),
            Err(Error::MissingPrimitiveValue { q: 2 })
        ));
    }
}
