//! A-decompositions into primitive parts, completeness and paradigmatic
//! checks, χ classification, and the derived systems P(A), F(A), Γ(A) and
//! the minimally-complete variant.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::num::{ilog, pow};
use crate::properties::PropertyReport;
use crate::system::{set_product, DivisorSystem};
use crate::Result;

/// Distinct part-multisets stop being tracked past this many per n.
const MULTISET_CAP: usize = 64;

/// A factorization of `n` into A-primitive parts, `parts` ascending by base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: u64,
    pub parts: Vec<(u64, u32)>,
}

impl Decomposition {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serialization cannot fail")
    }
}

/// χ of one primitive: the least `a >= 2` whose decomposition is not
/// `(q)^a`, or beyond-bound with the deepest exponent scanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chi {
    Finite(u32),
    BeyondBound { horizon: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitivitySummary {
    pub bound: u64,
    pub chis: Vec<(u64, Chi)>,
    pub label: String,
}

pub(crate) type Multiset = Vec<(u64, u32)>;

/// All part-multisets for every n, built bottom-up along A-divisor splits.
struct Table {
    per_n: Vec<Vec<Multiset>>,
}

impl Table {
    fn build(sys: &DivisorSystem) -> Result<Self> {
        for n in 1..=sys.bound() {
            if !sys.contains(n, n) {
                return Err(Error::NotReflexive { name: sys.name().into(), n });
            }
        }
        let mut per_n: Vec<Vec<Multiset>> = Vec::with_capacity(sys.bound() as usize);
        per_n.push(vec![Vec::new()]);
        for n in 2..=sys.bound() {
            let row = sys.row(n);
            let sets: Vec<Multiset> = if row == [1, n] {
                vec![vec![(n, 1)]]
            } else {
                let mut acc: BTreeSet<Multiset> = BTreeSet::new();
                for &d in row.iter().filter(|&&d| d != 1 && d != n) {
                    for left in &per_n[(d - 1) as usize] {
                        for right in &per_n[(n / d - 1) as usize] {
                            acc.insert(merge(left, right));
                            if acc.len() > MULTISET_CAP {
                                return Err(Error::DecompositionOverflow { n, cap: MULTISET_CAP });
                            }
                        }
                    }
                }
                acc.into_iter().collect()
            };
            per_n.push(sets);
        }
        Ok(Self { per_n })
    }

    fn at(&self, n: u64) -> &[Multiset] {
        &self.per_n[(n - 1) as usize]
    }
}

pub(crate) fn merge(a: &Multiset, b: &Multiset) -> Multiset {
    let mut counts: BTreeMap<u64, u32> = BTreeMap::new();
    for &(q, c) in a.iter().chain(b) {
        *counts.entry(q).or_insert(0) += c;
    }
    counts.into_iter().collect()
}

/// The set of canonical part-multisets of `n` under the recursion of the
/// representation lemma.
pub fn all_decompositions(sys: &DivisorSystem, n: u64) -> Result<Vec<Vec<(u64, u32)>>> {
    if n == 0 || n > sys.bound() {
        return Err(Error::OutOfRange { n, bound: sys.bound() });
    }
    Ok(Table::build(sys)?.at(n).to_vec())
}

/// Pass iff every n has exactly one part-multiset; witness = least ambiguous n.
pub fn check_complete(sys: &DivisorSystem) -> Result<PropertyReport> {
    let table = Table::build(sys)?;
    let witness = (1..=sys.bound())
        .find(|&n| table.at(n).len() != 1)
        .map(|n| vec![n]);
    Ok(PropertyReport {
        predicate: "complete".into(),
        pass: witness.is_none(),
        witness,
        bound: sys.bound(),
    })
}

fn unique_table(sys: &DivisorSystem) -> Result<Table> {
    let table = Table::build(sys)?;
    for n in 1..=sys.bound() {
        let count = table.at(n).len();
        if count != 1 {
            return Err(Error::Incomplete { name: sys.name().into(), n, count });
        }
    }
    Ok(table)
}

/// Every unique decomposition at once, indexed by `n - 1`; errors on the
/// least ambiguous n.
pub(crate) fn unique_decompositions(sys: &DivisorSystem) -> Result<Vec<Multiset>> {
    let table = unique_table(sys)?;
    Ok((1..=sys.bound()).map(|n| table.at(n)[0].clone()).collect())
}

/// The unique A-decomposition of `n`; errors when ambiguous.
pub fn decomposition(sys: &DivisorSystem, n: u64) -> Result<Decomposition> {
    if n == 0 || n > sys.bound() {
        return Err(Error::OutOfRange { n, bound: sys.bound() });
    }
    let sets = all_decompositions(sys, n)?;
    if sets.len() != 1 {
        return Err(Error::Ambiguous { n, count: sets.len() });
    }
    Ok(Decomposition { n, parts: sets.into_iter().next().unwrap() })
}

/// ω, ν, primitive support, and A-square-freeness of one decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub omega: usize,
    pub nu: Vec<(u64, u32)>,
    pub support: Vec<u64>,
    pub squarefree: bool,
}

pub fn stats(sys: &DivisorSystem, n: u64) -> Result<Stats> {
    let dec = decomposition(sys, n)?;
    Ok(Stats {
        omega: dec.parts.len(),
        support: dec.parts.iter().map(|&(q, _)| q).collect(),
        squarefree: dec.parts.iter().all(|&(_, a)| a <= 1),
        nu: dec.parts,
    })
}

pub fn chi_summary(sys: &DivisorSystem) -> Result<PrimitivitySummary> {
    let table = unique_table(sys)?;
    let bound = sys.bound();
    let mut chis = Vec::new();
    for q in sys.primitives() {
        let horizon = ilog(q, bound);
        let mut chi = Chi::BeyondBound { horizon };
        for a in 2..=horizon {
            if table.at(pow(q, a))[0] != vec![(q, a)] {
                chi = Chi::Finite(a);
                break;
            }
        }
        chis.push((q, chi));
    }
    let finite_max = chis
        .iter()
        .filter_map(|(_, c)| match c {
            Chi::Finite(a) => Some(*a),
            _ => None,
        })
        .max();
    let open_horizon = chis
        .iter()
        .filter_map(|(_, c)| match c {
            Chi::BeyondBound { horizon } => Some(*horizon),
            _ => None,
        })
        .max();
    let label = match (finite_max, open_horizon) {
        (Some(m), None) => format!("{m}-finitely primitive at bound"),
        (_, Some(h)) => format!("contains χ beyond bound (horizon {h})"),
        (None, None) => "no primitives past 1".into(),
    };
    Ok(PrimitivitySummary { bound, chis, label })
}

/// Which system to derive from a complete A.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeriveWhich {
    PerfectP,
    ParadigmaticF,
    Gamma,
    Minimal,
}

/// Builds P(A), F(A), Γ(A), or the minimally-complete system from the
/// decompositions of a complete A.
pub fn derive(sys: &DivisorSystem, which: DeriveWhich) -> Result<DivisorSystem> {
    let table = unique_table(sys)?;
    let bound = sys.bound();
    let prefix = match which {
        DeriveWhich::PerfectP => "P",
        DeriveWhich::ParadigmaticF => "F",
        DeriveWhich::Gamma => "Gamma",
        DeriveWhich::Minimal => "minimal",
    };
    let sets: Vec<Vec<u64>> = (1..=bound)
        .map(|n| {
            let parts = &table.at(n)[0];
            match which {
                DeriveWhich::PerfectP => {
                    // all subset products of the blocks q^a
                    let mut acc = vec![1u64];
                    for &(q, a) in parts {
                        acc = set_product(&acc, &[1, pow(q, a)]);
                    }
                    acc
                }
                DeriveWhich::ParadigmaticF => {
                    // full box: each block contributes its whole chain
                    let mut acc = vec![1u64];
                    for &(q, a) in parts {
                        let chain: Vec<u64> = (0..=a).map(|b| pow(q, b)).collect();
                        acc = set_product(&acc, &chain);
                    }
                    acc
                }
                DeriveWhich::Gamma => {
                    let mut out: Vec<u64> = vec![1, n];
                    out.extend(parts.iter().map(|&(q, _)| q));
                    out.sort_unstable();
                    out.dedup();
                    out
                }
                DeriveWhich::Minimal => {
                    let mut out = vec![1];
                    if let Some(&d) = sys.row(n).iter().find(|&&d| d != 1 && d != n) {
                        out.push(d);
                    }
                    if n > 1 {
                        out.push(n);
                    }
                    out
                }
            }
        })
        .collect();
    DivisorSystem::from_sets(format!("{prefix}({})", sys.name()), sets)
}

/// Pass iff A is complete at bound and `A(n) = F(A)(n)` everywhere.
pub fn check_paradigmatic(sys: &DivisorSystem) -> Result<PropertyReport> {
    let complete = check_complete(sys)?;
    if !complete.pass {
        return Ok(PropertyReport {
            predicate: "paradigmatic".into(),
            ..complete
        });
    }
    let f = derive(sys, DeriveWhich::ParadigmaticF)?;
    let witness = (1..=sys.bound())
        .find(|&n| sys.row(n) != f.row(n))
        .map(|n| vec![n]);
    Ok(PropertyReport {
        predicate: "paradigmatic".into(),
        pass: witness.is_none(),
        witness,
        bound: sys.bound(),
    })
}
