//! Bounded checkers for the structural predicates a divisor system can
//! satisfy. Every check quantifies over tuples whose largest element stays
//! within the tabulation bound, so a "pass" is always a pass at bound.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::num::{gcd, ilog, pow, primes_upto};
use crate::system::{set_product, DivisorSystem};
use crate::Result;

/// Outcome of a bounded predicate check. Failing reports carry a
/// lexicographically minimal integer witness that re-evaluates to a
/// violation of the predicate's definition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub predicate: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<u64>>,
    pub bound: u64,
}

impl PropertyReport {
    fn from_witness(predicate: &str, bound: u64, witness: Option<Vec<u64>>) -> Self {
        Self {
            predicate: predicate.into(),
            pass: witness.is_none(),
            witness,
            bound,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Simple,
    Reflexive,
    Symmetric,
    Transitive,
    Multiplicative,
    Homogeneous,
    Associative,
    Regular,
    SemiRegular,
    Perfect,
    Split,
}

impl Predicate {
    pub const ALL: [Predicate; 11] = [
        Predicate::Simple,
        Predicate::Reflexive,
        Predicate::Symmetric,
        Predicate::Transitive,
        Predicate::Multiplicative,
        Predicate::Homogeneous,
        Predicate::Associative,
        Predicate::Regular,
        Predicate::SemiRegular,
        Predicate::Perfect,
        Predicate::Split,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Predicate::Simple => "simple",
            Predicate::Reflexive => "reflexive",
            Predicate::Symmetric => "symmetric",
            Predicate::Transitive => "transitive",
            Predicate::Multiplicative => "multiplicative",
            Predicate::Homogeneous => "homogeneous",
            Predicate::Associative => "associative",
            Predicate::Regular => "regular",
            Predicate::SemiRegular => "semi_regular",
            Predicate::Perfect => "perfect",
            Predicate::Split => "split",
        }
    }
}

impl std::str::FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Predicate::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPredicate(s.into()))
    }
}

/// Keeps the lexicographically smallest witness seen so far.
fn keep_min(best: &mut Option<Vec<u64>>, candidate: Vec<u64>) {
    if best.as_ref().is_none_or(|b| candidate < *b) {
        *best = Some(candidate);
    }
}

pub fn check(sys: &DivisorSystem, predicate: Predicate) -> PropertyReport {
    let n_max = sys.bound();
    let witness = match predicate {
        // 1 ∈ A(n); witness [n]
        Predicate::Simple => (1..=n_max).find(|&n| !sys.contains(n, 1)).map(|n| vec![n]),
        // n ∈ A(n); witness [n]
        Predicate::Reflexive => (1..=n_max).find(|&n| !sys.contains(n, n)).map(|n| vec![n]),
        // d ∈ A(n) ⇒ n/d ∈ A(n); witness [d, n]
        Predicate::Symmetric => {
            let mut best = None;
            for n in 1..=n_max {
                for &d in sys.divisor_set(n).unwrap_or(&[]) {
                    if !sys.contains(n, n / d) {
                        keep_min(&mut best, vec![d, n]);
                    }
                }
            }
            best
        }
        // d ∈ A(n) ⇒ A(d) ⊆ A(n); witness [e, d, n] with e ∈ A(d) \ A(n)
        Predicate::Transitive => {
            let mut best = None;
            for n in 1..=n_max {
                for &d in sys.row(n) {
                    for &e in sys.row(d) {
                        if !sys.contains(n, e) {
                            keep_min(&mut best, vec![e, d, n]);
                        }
                    }
                }
            }
            best
        }
        // (m,n) = 1 ⇒ A(mn) = A(m)·A(n); witness [m, n]
        Predicate::Multiplicative => multiplicative_witness(sys),
        // multiplicative + identical prime-power rows; witness [m, n] for a
        // multiplicativity failure, [p, q, a, b] for a row mismatch
        Predicate::Homogeneous => {
            if let Some(w) = multiplicative_witness(sys) {
                Some(w)
            } else {
                let mut best: Option<Vec<u64>> = None;
                let primes = primes_upto(n_max);
                for (i, &p) in primes.iter().enumerate() {
                    for &q in &primes[i + 1..] {
                        let depth = ilog(p, n_max).min(ilog(q, n_max));
                        for a in 1..=depth {
                            for b in 0..=a {
                                if sys.contains(pow(p, a), pow(p, b))
                                    != sys.contains(pow(q, a), pow(q, b))
                                {
                                    keep_min(&mut best, vec![p, q, a as u64, b as u64]);
                                }
                            }
                        }
                    }
                }
                best
            }
        }
        // Narkiewicz: d ∈ A(m) ∧ m ∈ A(n) ⟺ d ∈ A(n) ∧ m/d ∈ A(n/d),
        // over all chains d | m | n; witness [d, m, n]
        Predicate::Associative => {
            let mut best = None;
            for n in 1..=n_max {
                for m in (1..=n).filter(|m| n % m == 0) {
                    for d in (1..=m).filter(|d| m % d == 0) {
                        let lhs = sys.contains(m, d) && sys.contains(n, m);
                        let rhs = sys.contains(n, d) && sys.contains(n / d, m / d);
                        if lhs != rhs {
                            keep_min(&mut best, vec![d, m, n]);
                        }
                    }
                }
            }
            best
        }
        Predicate::Regular => regular_witness(sys, false),
        Predicate::SemiRegular => regular_witness(sys, true),
        // in_class(A, A) plus A(n) ⊆ A^1(n); witness [m, n] or [d, n]
        Predicate::Perfect => {
            let class = in_class(sys, sys);
            if !class.pass {
                class.witness
            } else {
                let it = sys.iterate();
                let mut best = None;
                for n in 1..=n_max {
                    for &d in sys.row(n) {
                        if !it.contains(n, d) {
                            keep_min(&mut best, vec![d, n]);
                        }
                    }
                }
                best
            }
        }
        // m ∈ A(mn), a ∈ A(m), b ∈ A(n) ⇒ a ∈ A(ab); witness [m, n, a, b]
        Predicate::Split => ab_split_witness(sys, sys, sys),
    };
    PropertyReport::from_witness(predicate.name(), n_max, witness)
}

fn multiplicative_witness(sys: &DivisorSystem) -> Option<Vec<u64>> {
    let n_max = sys.bound();
    let mut best = None;
    for m in 1..=n_max {
        for n in 1..=(n_max / m) {
            if gcd(m, n) == 1 && *sys.row(m * n) != set_product(sys.row(m), sys.row(n)) {
                keep_min(&mut best, vec![m, n]);
            }
        }
    }
    best
}

/// Prop.-style regularity at bound. With `semi` the chain-structure clause
/// is relaxed to "exactly one A-primitive in A(p^a), sitting at r_A(p^a)".
/// Witness schema: [m, n] for a multiplicativity failure, else [p, a].
fn regular_witness(sys: &DivisorSystem, semi: bool) -> Option<Vec<u64>> {
    if let Some(w) = multiplicative_witness(sys) {
        return Some(w);
    }
    let n_max = sys.bound();
    let mut best: Option<Vec<u64>> = None;
    for p in primes_upto(n_max) {
        for a in 1..=ilog(p, n_max) {
            let pa = pow(p, a);
            let row = sys.row(pa);
            if row.len() < 2 || *row.last().unwrap() != pa {
                keep_min(&mut best, vec![p, a as u64]);
                continue;
            }
            let r = ilog(p, row[1]);
            let ok = if semi {
                let prims: Vec<u64> = row.iter().copied().filter(|&x| sys.is_primitive(x)).collect();
                prims.len() == 1 && prims[0] == row[1]
            } else {
                let chain: Vec<u64> = (0..=a).step_by(r as usize).map(|b| pow(p, b)).collect();
                a % r == 0
                    && *row == chain
                    && row
                        .iter()
                        .all(|&x| x == 1 || (sys.row(x).len() > 1 && ilog(p, sys.row(x)[1]) == r))
            };
            if !ok {
                keep_min(&mut best, vec![p, a as u64]);
            }
        }
    }
    best
}

/// `m ∈ B(mn) ⇒ A(mn) = A(m)·A(n)` for all pairs at bound.
pub fn in_class(a: &DivisorSystem, b: &DivisorSystem) -> PropertyReport {
    let n_max = a.bound().min(b.bound());
    let mut best = None;
    for m in 1..=n_max {
        for n in 1..=(n_max / m) {
            if b.contains(m * n, m) && *a.row(m * n) != set_product(a.row(m), a.row(n)) {
                keep_min(&mut best, vec![m, n]);
            }
        }
    }
    PropertyReport::from_witness("in_class", n_max, best)
}

/// Bound-checked entry point for [`in_class`].
pub fn check_in_class(a: &DivisorSystem, b: &DivisorSystem) -> Result<PropertyReport> {
    if a.bound() != b.bound() {
        return Err(Error::BoundMismatch { left: a.bound(), right: b.bound() });
    }
    Ok(in_class(a, b))
}

fn ab_split_witness(h: &DivisorSystem, a: &DivisorSystem, b: &DivisorSystem) -> Option<Vec<u64>> {
    let n_max = h.bound();
    let mut best = None;
    for m in 1..=n_max {
        for n in 1..=(n_max / m) {
            if !b.contains(m * n, m) {
                continue;
            }
            for &x in a.row(m) {
                for &y in a.row(n) {
                    if !h.contains(x * y, x) {
                        keep_min(&mut best, vec![m, n, x, y]);
                    }
                }
            }
        }
    }
    best
}

/// `H` is (A, B)-split at bound: `m ∈ B(mn)`, `a ∈ A(m)`, `b ∈ A(n)` imply
/// `a ∈ H(ab)`.
pub fn is_ab_split(
    h: &DivisorSystem,
    a: &DivisorSystem,
    b: &DivisorSystem,
) -> Result<PropertyReport> {
    if h.bound() != a.bound() || a.bound() != b.bound() {
        return Err(Error::BoundMismatch { left: h.bound(), right: a.bound().max(b.bound()) });
    }
    Ok(PropertyReport::from_witness(
        "ab_split",
        h.bound(),
        ab_split_witness(h, a, b),
    ))
}

/// All `n ≤ bound` with `A(n) = {1, n}`, `n > 1`.
pub fn primitives(sys: &DivisorSystem) -> Vec<u64> {
    sys.primitives()
}
