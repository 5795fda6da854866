//! Tabulated divisor systems and the canonical families.
//!
//! A [`DivisorSystem`] stores, for every `n` up to a fixed bound, the set
//! `A(n)` of "A-divisors" of `n`: a strictly ascending list with
//! `1 ∈ A(n) ⊆ D(n)`. Nothing is lazily extended; every quantified check
//! elsewhere in the crate is finite because the bound is explicit.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::num::{divisors, factorize, gcd, pow};
use crate::Result;

pub const SYSTEM_FORMAT: &str = "aconv-system/1";

/// A divisor system tabulated on `1..=bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSystem {
    name: String,
    bound: u64,
    /// `sets[i]` is `A(i + 1)`, strictly ascending.
    sets: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct SystemWire {
    format: String,
    name: String,
    bound: u64,
    sets: Vec<Vec<u64>>,
}

impl DivisorSystem {
    /// Builds a system from raw sets, validating every invariant:
    /// `A(1) = {1}`, `1 ∈ A(n)`, every element divides `n`, strictly
    /// ascending.
    pub fn from_sets(name: impl Into<String>, sets: Vec<Vec<u64>>) -> Result<Self> {
        let name = name.into();
        if sets.is_empty() {
            return Err(Error::ZeroBound);
        }
        for (i, row) in sets.iter().enumerate() {
            let n = (i + 1) as u64;
            if row.first() != Some(&1) {
                return Err(Error::InvalidSystem(format!("1 missing from A({n})")));
            }
            for w in row.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidSystem(format!("A({n}) is not strictly ascending")));
                }
            }
            for &d in row {
                if d == 0 || !n.is_multiple_of(d) {
                    return Err(Error::InvalidSystem(format!("{d} in A({n}) does not divide {n}")));
                }
            }
        }
        if sets[0] != [1] {
            return Err(Error::InvalidSystem("A(1) must equal {1}".into()));
        }
        let bound = sets.len() as u64;
        Ok(Self { name, bound, sets })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `A(n)`, checked.
    pub fn divisor_set(&self, n: u64) -> Result<&[u64]> {
        if n == 0 || n > self.bound {
            return Err(Error::OutOfRange { n, bound: self.bound });
        }
        Ok(&self.sets[(n - 1) as usize])
    }

    /// `A(n)` without the range check; callers stay within `1..=bound`.
    pub(crate) fn row(&self, n: u64) -> &[u64] {
        &self.sets[(n - 1) as usize]
    }

    /// Membership test `d ∈ A(n)` by binary search.
    pub fn contains(&self, n: u64, d: u64) -> bool {
        self.row(n).binary_search(&d).is_ok()
    }

    /// True when both systems tabulate identical sets (names ignored).
    pub fn same_sets(&self, other: &DivisorSystem) -> bool {
        self.sets == other.sets
    }

    /// The iterate `A^1`: `d ∈ A^1(n)` iff `A(d) ∩ A(n/d) = {1}`.
    pub fn iterate(&self) -> DivisorSystem {
        let sets = (1..=self.bound)
            .map(|n| {
                divisors(n)
                    .into_iter()
                    .filter(|&d| intersect_trivially(self.row(d), self.row(n / d)))
                    .collect()
            })
            .collect();
        DivisorSystem {
            name: format!("{}^1", self.name),
            bound: self.bound,
            sets,
        }
    }

    /// The `k`-fold iterate (`k = 0` returns a clone).
    pub fn iterate_times(&self, k: u32) -> DivisorSystem {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.iterate();
        }
        out
    }

    /// All `n > 1` with `A(n) = {1, n}`, ascending.
    pub fn primitives(&self) -> Vec<u64> {
        (2..=self.bound).filter(|&n| self.is_primitive(n)).collect()
    }

    pub fn is_primitive(&self, n: u64) -> bool {
        n > 1 && self.row(n) == [1, n]
    }

    /// True when `n ∈ A(n)` for all tabulated `n`.
    pub fn is_reflexive(&self) -> bool {
        (1..=self.bound).all(|n| *self.row(n).last().unwrap() == n)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SystemWire {
            format: SYSTEM_FORMAT.into(),
            name: self.name.clone(),
            bound: self.bound,
            sets: self.sets.clone(),
        })
        .expect("system serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: SystemWire = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        if wire.format != SYSTEM_FORMAT {
            return Err(Error::Json(format!("unexpected format `{}`", wire.format)));
        }
        if wire.bound != wire.sets.len() as u64 {
            return Err(Error::Json("bound does not match sets length".into()));
        }
        Self::from_sets(wire.name, wire.sets)
    }
}

/// True when the sorted lists share no element besides 1.
pub(crate) fn intersect_trivially(a: &[u64], b: &[u64]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            if a[i] != 1 {
                return false;
            }
            i += 1;
            j += 1;
        } else if a[i] < b[j] {
            i += 1;
        } else {
            j += 1;
        }
    }
    true
}

/// Set product `{ab : a ∈ xs, b ∈ ys}`, sorted and deduplicated.
pub(crate) fn set_product(xs: &[u64], ys: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = xs
        .iter()
        .flat_map(|&a| ys.iter().map(move |&b| a * b))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The canonical families that can be built by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Dirichlet,
    Unitary,
    /// The regular system with odd prime-power exponents primitive and the
    /// even exponents forming a single step-2 chain.
    Ternary,
    Theta,
    Z,
    /// `d ∈ S_k(n)` iff no k-th power larger than 1 divides both `d` and `n/d`.
    Suryanarayana(u32),
    /// Alladi's recursive higher-order systems; `Alladi(1)` is the unitary system.
    Alladi(u32),
    /// Homogeneous: full chain at exponent 4, unitary elsewhere. Not complete.
    FixtureNoncomplete,
    /// Homogeneous with bespoke rows at exponents 4, 5, 7; unitary elsewhere.
    FixtureParadigmatic,
    /// Prime-by-prime mix of homogeneous component families.
    Cross {
        assignments: Vec<(u64, Family)>,
        default: Box<Family>,
    },
}

impl Family {
    fn label(&self) -> String {
        match self {
            Family::Dirichlet => "dirichlet".into(),
            Family::Unitary => "unitary".into(),
            Family::Ternary => "ternary".into(),
            Family::Theta => "theta".into(),
            Family::Z => "Z".into(),
            Family::Suryanarayana(k) => format!("suryanarayana({k})"),
            Family::Alladi(k) => format!("alladi({k})"),
            Family::FixtureNoncomplete => "fixture_noncomplete".into(),
            Family::FixtureParadigmatic => "fixture_paradigmatic".into(),
            Family::Cross { .. } => "cross".into(),
        }
    }
}

/// Builds the named family at the given bound.
pub fn build(family: &Family, bound: u64) -> Result<DivisorSystem> {
    if bound == 0 {
        return Err(Error::ZeroBound);
    }
    let name = family.label();
    match family {
        Family::Dirichlet => {
            let sets = (1..=bound).map(divisors).collect();
            DivisorSystem::from_sets(name, sets)
        }
        Family::Unitary => {
            let sets = (1..=bound)
                .map(|n| {
                    divisors(n)
                        .into_iter()
                        .filter(|&d| gcd(d, n / d) == 1)
                        .collect()
                })
                .collect();
            DivisorSystem::from_sets(name, sets)
        }
        Family::Z => {
            let sets = (1..=bound)
                .map(|n| if n == 1 { vec![1] } else { vec![1, n] })
                .collect();
            DivisorSystem::from_sets(name, sets)
        }
        Family::Theta => Ok(build_theta(bound)?.with_name(name)),
        Family::Ternary
        | Family::Suryanarayana(_)
        | Family::Alladi(_)
        | Family::FixtureNoncomplete
        | Family::FixtureParadigmatic => {
            validate_params(family)?;
            from_homogeneous_rows(name, bound, |a| homogeneous_row(family, a))
        }
        Family::Cross { assignments, default } => {
            validate_params(default)?;
            for (p, f) in assignments {
                if factorize(*p) != [(*p, 1)] {
                    return Err(Error::InvalidParams(format!("{p} is not prime")));
                }
                validate_params(f)?;
            }
            from_multiplicative_rows(name, bound, |p, a| {
                let fam = assignments
                    .iter()
                    .find(|(q, _)| *q == p)
                    .map(|(_, f)| f)
                    .unwrap_or(default);
                homogeneous_row(fam, a)
            })
        }
    }
}

fn validate_params(family: &Family) -> Result<()> {
    match family {
        Family::Suryanarayana(k) | Family::Alladi(k) if *k == 0 => {
            Err(Error::InvalidParams("k must be at least 1".into()))
        }
        Family::Z | Family::Cross { .. } => Err(Error::InvalidParams(format!(
            "`{}` is not a homogeneous cross component",
            family.label()
        ))),
        _ => Ok(()),
    }
}

/// Exponent row of a homogeneous family: the `b` with `p^b ∈ A(p^a)`.
fn homogeneous_row(family: &Family, a: u32) -> Vec<u32> {
    match family {
        Family::Dirichlet => (0..=a).collect(),
        Family::Unitary => unitary_row(a),
        Family::Ternary => {
            if a % 2 == 1 {
                vec![0, a]
            } else {
                (0..=a).step_by(2).collect()
            }
        }
        Family::Theta => (0..=a).filter(|b| b & a == *b).collect(),
        Family::Suryanarayana(k) => (0..=a).filter(|&b| b.min(a - b) < *k).collect(),
        Family::Alladi(k) => alladi_row(*k, a),
        Family::FixtureNoncomplete => {
            if a == 4 {
                (0..=4).collect()
            } else {
                unitary_row(a)
            }
        }
        Family::FixtureParadigmatic => match a {
            4 => vec![0, 2, 4],
            5 => vec![0, 2, 3, 5],
            7 => vec![0, 2, 3, 4, 5, 7],
            _ => unitary_row(a),
        },
        Family::Z | Family::Cross { .. } => unreachable!("rejected by validate_params"),
    }
}

fn unitary_row(a: u32) -> Vec<u32> {
    if a == 0 {
        vec![0]
    } else {
        vec![0, a]
    }
}

/// `p^b ∈ A_k(p^a)` iff `A_{k-1}(p^b) ∩ D(p^{a-b}) = {1}`, with `A_0 = D`.
fn alladi_row(k: u32, a: u32) -> Vec<u32> {
    let mut prev: Vec<Vec<u32>> = (0..=a).map(|x| (0..=x).collect()).collect();
    for _ in 0..k {
        let next: Vec<Vec<u32>> = (0..=a)
            .map(|x| {
                (0..=x)
                    .filter(|&b| prev[b as usize].iter().all(|&c| c == 0 || c > x - b))
                    .collect()
            })
            .collect();
        prev = next;
    }
    prev[a as usize].clone()
}

/// Extends homogeneous prime-power rows multiplicatively: `A(n)` is the set
/// product of `A(p^a)` over the prime powers of `n`.
pub(crate) fn from_homogeneous_rows(
    name: impl Into<String>,
    bound: u64,
    row: impl Fn(u32) -> Vec<u32>,
) -> Result<DivisorSystem> {
    from_multiplicative_rows(name, bound, |_, a| row(a))
}

pub(crate) fn from_multiplicative_rows(
    name: impl Into<String>,
    bound: u64,
    row: impl Fn(u64, u32) -> Vec<u32>,
) -> Result<DivisorSystem> {
    if bound == 0 {
        return Err(Error::ZeroBound);
    }
    let sets = (1..=bound)
        .map(|n| {
            let mut acc = vec![1u64];
            for (p, a) in factorize(n) {
                let block: Vec<u64> = row(p, a).into_iter().map(|b| pow(p, b)).collect();
                acc = set_product(&acc, &block);
            }
            acc
        })
        .collect();
    DivisorSystem::from_sets(name, sets)
}

/// The infinitary system: `Θ(n)` is generated by the primitives `p^(2^j)`
/// picked out by the binary digits of each prime exponent; membership is
/// binary digit domination.
pub fn build_theta(bound: u64) -> Result<DivisorSystem> {
    from_homogeneous_rows("theta", bound, |a| {
        (0..=a).filter(|b| b & a == *b).collect()
    })
}

/// `d ∈ G(n)` iff `d | n` and `D(d) ∩ Θ(n/d) = {1}`.
pub fn build_g(bound: u64) -> Result<DivisorSystem> {
    if bound == 0 {
        return Err(Error::ZeroBound);
    }
    let theta = build_theta(bound)?;
    let sets = (1..=bound)
        .map(|n| {
            divisors(n)
                .into_iter()
                .filter(|&d| intersect_trivially(&divisors(d), theta.row(n / d)))
                .collect()
        })
        .collect();
    DivisorSystem::from_sets("G", sets)
}

/// Square-free core peeling: the blocks `(q_i, a_i)` with `n = ∏ q_i^{a_i}`,
/// where each `q_i` is the multiplicative core of what remains.
pub(crate) fn s_blocks(n: u64) -> Vec<(u64, u32)> {
    let mut m = n;
    let mut out = Vec::new();
    while m > 1 {
        let q: u64 = factorize(m).iter().map(|&(p, _)| p).product();
        let a = ilog_dividing(q, m);
        for _ in 0..a {
            m /= q;
        }
        out.push((q, a));
    }
    out.sort_unstable_by_key(|&(q, _)| q);
    out
}

/// Largest `a` with `q^a | m`.
fn ilog_dividing(q: u64, m: u64) -> u32 {
    let mut a = 0;
    let mut rest = m;
    while rest.is_multiple_of(q) {
        rest /= q;
        a += 1;
    }
    a
}

/// The paradigmatic system `𝕊` with square-free primitives: `𝕊(n)` is the
/// full box spanned by the core-peeling blocks of `n`.
pub fn build_s(bound: u64) -> Result<DivisorSystem> {
    if bound == 0 {
        return Err(Error::ZeroBound);
    }
    let sets = (1..=bound)
        .map(|n| {
            let mut acc = vec![1u64];
            for (q, a) in s_blocks(n) {
                let chain: Vec<u64> = (0..=a).map(|b| pow(q, b)).collect();
                acc = set_product(&acc, &chain);
            }
            acc
        })
        .collect();
    DivisorSystem::from_sets("S", sets)
}

/// Cohen's `D^k`: the `k`-fold iterate of the full divisor system.
pub fn build_dk(k: u32, bound: u64) -> Result<DivisorSystem> {
    let d = build(&Family::Dirichlet, bound)?;
    Ok(d.iterate_times(k).with_name(if k == 0 {
        "dirichlet".to_string()
    } else {
        format!("D^{k}")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(sys: &DivisorSystem, n: u64) -> Vec<u64> {
        sys.divisor_set(n).unwrap().to_vec()
    }

    /// Brute-force unitary oracle: d | n with gcd(d, n/d) = 1.
    fn unitary_oracle(n: u64) -> Vec<u64> {
        divisors(n).into_iter().filter(|&d| gcd(d, n / d) == 1).collect()
    }

    #[test]
    fn unitary_matches_oracle() {
        let u = build(&Family::Unitary, 64).unwrap();
        for n in 1..=64 {
            assert_eq!(set(&u, n), unitary_oracle(n), "n = {n}");
        }
        assert_eq!(set(&u, 12), vec![1, 3, 4, 12]);
    }

    #[test]
    fn ternary_prime_power_rows() {
        let t = build(&Family::Ternary, 64).unwrap();
        assert_eq!(set(&t, 4), vec![1, 4]);
        assert_eq!(set(&t, 64), vec![1, 4, 16, 64]);
        assert_eq!(set(&t, 8), vec![1, 8]);
        assert_eq!(set(&t, 16), vec![1, 4, 16]);
    }

    #[test]
    fn alladi_examples() {
        let a2 = build(&Family::Alladi(2), 16).unwrap();
        assert_eq!(set(&a2, 16), vec![1, 8, 16]);
        let a1 = build(&Family::Alladi(1), 48).unwrap();
        let u = build(&Family::Unitary, 48).unwrap();
        assert!(a1.same_sets(&u));
    }

    #[test]
    fn suryanarayana_example() {
        let s2 = build(&Family::Suryanarayana(2), 16).unwrap();
        assert_eq!(set(&s2, 16), vec![1, 2, 8, 16]);
    }

    #[test]
    fn z_example() {
        let z = build(&Family::Z, 6).unwrap();
        assert_eq!(set(&z, 6), vec![1, 6]);
    }

    #[test]
    fn theta_examples() {
        let th = build_theta(16).unwrap();
        assert_eq!(set(&th, 8), vec![1, 2, 4, 8]);
        assert_eq!(set(&th, 16), vec![1, 16]);
        assert_eq!(set(&th, 12), vec![1, 3, 4, 12]);
    }

    #[test]
    fn g_examples() {
        let g = build_g(32).unwrap();
        assert_eq!(set(&g, 4), vec![1, 4]);
        assert_eq!(set(&g, 8), vec![1, 2, 8]);
        for p in [2u64, 3, 5, 7, 11, 13] {
            assert_eq!(set(&g, p), vec![1, p]);
        }
    }

    #[test]
    fn s_examples() {
        let s = build_s(72).unwrap();
        assert_eq!(set(&s, 12), vec![1, 2, 6, 12]);
        assert_eq!(set(&s, 30), vec![1, 30]);
        assert_eq!(set(&s, 72), vec![1, 2, 6, 12, 36, 72]);
    }

    #[test]
    fn iterate_of_dirichlet_is_unitary() {
        let d = build(&Family::Dirichlet, 200).unwrap();
        let u = build(&Family::Unitary, 200).unwrap();
        assert!(d.iterate().same_sets(&u));
        assert_eq!(set(&d.iterate(), 12), vec![1, 3, 4, 12]);
    }

    #[test]
    fn theta_is_iterate_fixed_point() {
        let th = build_theta(200).unwrap();
        assert!(th.iterate().same_sets(&th));
    }

    #[test]
    fn biunitary_row() {
        let d2 = build_dk(2, 16).unwrap();
        assert_eq!(set(&d2, 16), vec![1, 2, 8, 16]);
    }

    #[test]
    fn multiplicative_product_rule() {
        // brute-force the coprime product rule on every multiplicative family
        for fam in [
            Family::Unitary,
            Family::Ternary,
            Family::Theta,
            Family::Suryanarayana(2),
            Family::Alladi(2),
            Family::FixtureParadigmatic,
        ] {
            let sys = build(&fam, 120).unwrap();
            for m in 1..=120u64 {
                for n in 1..=(120 / m) {
                    if gcd(m, n) == 1 {
                        assert_eq!(
                            set(&sys, m * n),
                            set_product(sys.row(m), sys.row(n)),
                            "{fam:?} at ({m}, {n})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cross_rows_follow_assignment() {
        let cross = build(
            &Family::Cross {
                assignments: vec![(2, Family::Dirichlet), (3, Family::Theta)],
                default: Box::new(Family::Unitary),
            },
            81,
        )
        .unwrap();
        assert_eq!(set(&cross, 8), vec![1, 2, 4, 8]);
        assert_eq!(set(&cross, 81), vec![1, 81]); // 4 = 100 in binary
        assert_eq!(set(&cross, 27), vec![1, 3, 9, 27]); // 3 = 11 in binary
        assert_eq!(set(&cross, 25), vec![1, 25]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(build(&Family::Dirichlet, 0).is_err());
        assert!(build(&Family::Alladi(0), 8).is_err());
        assert!(DivisorSystem::from_sets("bad", vec![vec![1], vec![1, 3]]).is_err());
        let d = build(&Family::Dirichlet, 8).unwrap();
        assert!(d.divisor_set(9).is_err());
        assert!(d.divisor_set(0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let th = build_theta(12).unwrap();
        let json = th.to_json();
        assert!(json.starts_with("{\"format\":\"aconv-system/1\",\"name\":\"theta\",\"bound\":12,"));
        let back = DivisorSystem::from_json(&json).unwrap();
        assert_eq!(back, th);
        assert_eq!(back.to_json(), json);
    }
}
