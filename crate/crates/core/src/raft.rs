//! A-rafts, per-primitive block solving via Newton's identities and
//! simultaneous root refinement, and rational approximation of class
//! functions with convergence reporting.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::arith::{convolve, distance, inverse, standard, ArithFunc, MetricValue, Side, Standard};
use crate::classes::{extend_from_primitives, is_class_member};
use crate::decomp::{chi_summary, derive, Chi, DeriveWhich};
use crate::error::Error;
use crate::num::{ilog, pow};
use crate::system::DivisorSystem;
use crate::Result;

pub const RAFT_FORMAT: &str = "aconv-raft/1";
pub const DEFAULT_ROOT_TOL: f64 = 1e-10;
/// Tolerance used when reporting metric distances for approximations; the
/// root refinement error amplifies through the convolutions, so the
/// reporting comparison is looser than the root residual target.
pub const APPROX_REPORT_TOL: f64 = 1e-6;
const MAX_ITERATIONS: usize = 10_000;
const MAX_RESTARTS: usize = 8;

#[derive(Debug, Clone)]
pub struct RaftFactor {
    pub func: ArithFunc,
    pub inverted: bool,
}

/// A convolution product of class functions (and inverses) under a fixed
/// system.
#[derive(Debug, Clone)]
pub struct Raft {
    pub system: DivisorSystem,
    pub factors: Vec<RaftFactor>,
}

#[derive(Serialize, Deserialize)]
struct RaftWire {
    format: String,
    system: Box<RawValue>,
    factors: Vec<FactorWire>,
}

#[derive(Serialize, Deserialize)]
struct FactorWire {
    inverted: bool,
    func: Box<RawValue>,
}

impl Raft {
    pub fn to_json(&self) -> String {
        let wire = RaftWire {
            format: RAFT_FORMAT.into(),
            system: RawValue::from_string(self.system.to_json()).expect("valid json"),
            factors: self
                .factors
                .iter()
                .map(|f| FactorWire {
                    inverted: f.inverted,
                    func: RawValue::from_string(f.func.to_json()).expect("valid json"),
                })
                .collect(),
        };
        serde_json::to_string(&wire).expect("raft serialization cannot fail")
    }

    /// Reads a raft back. The system may be inline or a catalog name; a
    /// named system takes its bound from the first factor.
    pub fn from_json(text: &str) -> Result<Self> {
        let wire: RaftWire = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        if wire.format != RAFT_FORMAT {
            return Err(Error::Json(format!("unexpected format `{}`", wire.format)));
        }
        let factors: Result<Vec<RaftFactor>> = wire
            .factors
            .iter()
            .map(|f| {
                Ok(RaftFactor {
                    inverted: f.inverted,
                    func: ArithFunc::from_json(f.func.get())?,
                })
            })
            .collect();
        let factors = factors?;
        let system_text = wire.system.get();
        let system = if let Ok(name) = serde_json::from_str::<String>(system_text) {
            let bound = factors
                .first()
                .map(|f| f.func.bound())
                .ok_or_else(|| Error::Json("named system needs a factor to infer the bound".into()))?;
            crate::catalog::resolve(&name, bound)?
        } else {
            DivisorSystem::from_json(system_text)?
        };
        Ok(Raft { system, factors })
    }
}

/// Left-to-right fold of the A-convolution; inverted factors are right
/// inverted first. The empty raft is ι.
pub fn evaluate_raft(raft: &Raft) -> Result<ArithFunc> {
    let bound = raft.system.bound();
    let mut acc = standard(Standard::Iota, bound)?;
    for factor in &raft.factors {
        let f = if factor.inverted {
            inverse(&raft.system, &factor.func, Side::Right)?
        } else {
            factor.func.clone()
        };
        acc = convolve(&raft.system, &acc, &f)?;
    }
    Ok(acc)
}

/// Solution of one per-primitive block system: the roots' complete
/// homogeneous symmetric evaluations reproduce the targets.
#[derive(Debug, Clone)]
pub struct BlockSolve {
    pub targets: Vec<Complex64>,
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
}

/// Newton-type recurrence from complete homogeneous values h_1..h_m to
/// elementary symmetric e_1..e_m.
pub fn elementary_from_homogeneous(h: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(1.0, 0.0)];
    for j in 1..=h.len() {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..j {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * e[i] * h[j - i - 1];
        }
        let sign = if (j + 1) % 2 == 0 { 1.0 } else { -1.0 };
        e.push(sign * acc);
    }
    e.remove(0);
    e
}

/// Inverse recurrence: h_j = Σ_{i=1..j} (-1)^{i+1} e_i h_{j-i}.
pub fn homogeneous_from_elementary(e: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut h = vec![Complex64::new(1.0, 0.0)];
    for j in 1..=len {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=j.min(e.len()) {
            let sign = if (i + 1) % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * e[i - 1] * h[j - i];
        }
        h.push(acc);
    }
    h.remove(0);
    h
}

/// Complete homogeneous values h_1..h_len of the given roots.
fn homogeneous_of_roots(roots: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut h = vec![Complex64::new(0.0, 0.0); len + 1];
    h[0] = Complex64::new(1.0, 0.0);
    for &x in roots {
        for a in 1..=len {
            let prev = h[a - 1];
            h[a] += x * prev;
        }
    }
    h.remove(0);
    h
}

/// All roots of the monic polynomial `z^d + coeffs[d-1] z^{d-1} + ... +
/// coeffs[0]` by simultaneous (Durand-Kerner) iteration.
fn monic_roots(coeffs: &[Complex64], eps: f64) -> Result<Vec<Complex64>> {
    let d = coeffs.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    if d == 1 {
        return Ok(vec![-coeffs[0]]);
    }
    let scale = coeffs.iter().map(|c| c.norm()).fold(1.0_f64, f64::max);
    let eval = |z: Complex64| {
        let mut p = Complex64::new(1.0, 0.0);
        for &c in coeffs.iter().rev() {
            p = p * z + c;
        }
        p
    };
    let seed_point = Complex64::new(0.4, 0.9);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best_residual = f64::INFINITY;
    for restart in 0..MAX_RESTARTS {
        let mut z: Vec<Complex64> = (0..d)
            .map(|i| {
                let base = seed_point.powu(i as u32 + 1);
                if restart == 0 {
                    base
                } else {
                    base + Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5))
                }
            })
            .collect();
        for _ in 0..MAX_ITERATIONS {
            let mut moved = 0.0_f64;
            for i in 0..d {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..d {
                    if j != i {
                        denom *= z[i] - z[j];
                    }
                }
                if denom.norm() == 0.0 {
                    // coincident iterates: nudge and continue
                    z[i] += Complex64::new(1e-6, 1e-6);
                    continue;
                }
                let delta = eval(z[i]) / denom;
                z[i] -= delta;
                moved = moved.max(delta.norm());
            }
            let residual = z.iter().map(|&zi| eval(zi).norm()).fold(0.0_f64, f64::max);
            if residual <= eps * scale && moved <= eps * scale.max(1.0) {
                return Ok(z);
            }
            best_residual = best_residual.min(residual);
        }
    }
    Err(Error::RootsDiverged { residual: best_residual })
}

/// Converts block targets to elementary symmetric coefficients, pads to k,
/// and finds the k roots. Roots come back sorted by (re, im).
pub fn solve_block(targets: &[Complex64], k: usize, eps_root: f64) -> Result<BlockSolve> {
    let m = targets.len();
    if m > k || k == 0 {
        return Err(Error::InvalidParams(format!("need 1 <= m <= k, got m = {m}, k = {k}")));
    }
    let mut e = elementary_from_homogeneous(targets);
    e.resize(k, Complex64::new(0.0, 0.0));
    // monic poly with elementary symmetric e: z^k - e1 z^{k-1} + ... +- e_k
    let mut coeffs: Vec<Complex64> = (0..k)
        .map(|j| {
            // coefficient of z^j pairs with e_{k-j}
            let i = k - j;
            let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * e[i - 1]
        })
        .collect();
    // exact zero constant terms are roots at zero; strip them first
    let mut zero_roots = 0;
    while !coeffs.is_empty() && coeffs[0] == Complex64::new(0.0, 0.0) {
        coeffs.remove(0);
        zero_roots += 1;
    }
    let mut roots = monic_roots(&coeffs, eps_root)?;
    roots.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), zero_roots));
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    let check = homogeneous_of_roots(&roots, m);
    let residuals: Vec<f64> = targets.iter().zip(&check).map(|(t, c)| (t - c).norm()).collect();
    Ok(BlockSolve { targets: targets.to_vec(), roots, residuals })
}

/// Per-approximation diagnostics.
#[derive(Debug, Clone)]
pub struct Diagnostics {
    pub blocks: Vec<(u64, BlockSolve)>,
    pub distance: MetricValue,
    pub max_residual: f64,
}

/// Builds the A-k-ic raft whose evaluation matches `f` on every primitive
/// block `q^a` with `a <= min(k, χ(q) - 1)`.
pub fn approximate(
    sys: &DivisorSystem,
    f: &ArithFunc,
    k: usize,
    eps_root: f64,
) -> Result<(Raft, ArithFunc, Diagnostics)> {
    if sys.bound() != f.bound() {
        return Err(Error::BoundMismatch { left: sys.bound(), right: f.bound() });
    }
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    let p_sys = derive(sys, DeriveWhich::PerfectP)?;
    let membership = is_class_member(&p_sys, f, APPROX_REPORT_TOL)?;
    if !membership.pass {
        let w = membership.witness.unwrap();
        return Err(Error::NotInClass { class: p_sys.name().into(), m: w[0], n: w[1] });
    }
    let f_sys = derive(sys, DeriveWhich::ParadigmaticF)?;
    let chi = chi_summary(sys)?;
    let mut blocks = Vec::new();
    let mut per_factor: Vec<BTreeMap<u64, Complex64>> = vec![BTreeMap::new(); k];
    for (q, chi_q) in chi.chis {
        let horizon = ilog(q, sys.bound());
        let depth = match chi_q {
            Chi::Finite(a) => (a - 1) as usize,
            Chi::BeyondBound { .. } => horizon as usize,
        };
        let m = k.min(depth).min(horizon as usize).max(1);
        let targets: Vec<Complex64> = (1..=m as u32).map(|a| f.get(pow(q, a)).unwrap()).collect();
        let solve = solve_block(&targets, k, eps_root)?;
        for (i, &root) in solve.roots.iter().enumerate() {
            per_factor[i].insert(q, root);
        }
        blocks.push((q, solve));
    }
    let factors: Result<Vec<RaftFactor>> = per_factor
        .iter()
        .map(|values| {
            Ok(RaftFactor { func: extend_from_primitives(sys, values)?, inverted: false })
        })
        .collect();
    let raft = Raft { system: f_sys, factors: factors? };
    let g = evaluate_raft(&raft)?;
    let max_residual = blocks
        .iter()
        .flat_map(|(_, b)| b.residuals.iter().copied())
        .fold(0.0_f64, f64::max);
    let dist = distance(f, &g, APPROX_REPORT_TOL)?;
    Ok((raft, g, Diagnostics { blocks, distance: dist, max_residual }))
}

/// One row of the convergence table.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    pub k: usize,
    pub distance: MetricValue,
    pub first_mismatch: Option<u64>,
    pub max_residual: f64,
}

/// Runs [`approximate`] for k = 1..=k_max.
pub fn convergence(
    sys: &DivisorSystem,
    f: &ArithFunc,
    k_max: usize,
) -> Result<Vec<ConvergenceRow>> {
    (1..=k_max)
        .map(|k| {
            let (_, _, diag) = approximate(sys, f, k, DEFAULT_ROOT_TOL)?;
            Ok(ConvergenceRow {
                k,
                distance: diag.distance,
                first_mismatch: diag.distance.first_mismatch(),
                max_residual: diag.max_residual,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{approx_eq, DEFAULT_TOL};
    use crate::system::{build, build_theta, Family};
    use crate::triangle::{build_structured, SizeSpec};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn raft_evaluation_examples() {
        let d = build(&Family::Dirichlet, 64).unwrap();
        let u = standard(Standard::U, 64).unwrap();
        let ident = standard(Standard::I, 64).unwrap();

        let phi_raft = Raft {
            system: d.clone(),
            factors: vec![
                RaftFactor { func: u.clone(), inverted: true },
                RaftFactor { func: ident, inverted: false },
            ],
        };
        let phi = standard(Standard::Phi, 64).unwrap();
        let eval = evaluate_raft(&phi_raft).unwrap();
        for n in 1..=64 {
            assert!(approx_eq(eval.get(n).unwrap(), phi.get(n).unwrap(), DEFAULT_TOL));
        }

        let tau_raft = Raft {
            system: d.clone(),
            factors: vec![
                RaftFactor { func: u.clone(), inverted: false },
                RaftFactor { func: u, inverted: false },
            ],
        };
        let tau = standard(Standard::Tau, 64).unwrap();
        let eval = evaluate_raft(&tau_raft).unwrap();
        for n in 1..=64 {
            assert!(approx_eq(eval.get(n).unwrap(), tau.get(n).unwrap(), DEFAULT_TOL));
        }

        let empty = Raft { system: d, factors: vec![] };
        let iota = standard(Standard::Iota, 64).unwrap();
        assert_eq!(evaluate_raft(&empty).unwrap(), iota);
    }

    #[test]
    fn solve_block_examples() {
        // phi at q = 2: h = (1, 2) gives e = (1, -1), roots (1 ± sqrt 5)/2
        let solve = solve_block(&[c(1.0), c(2.0)], 2, DEFAULT_ROOT_TOL).unwrap();
        let golden = 5.0_f64.sqrt();
        assert!(approx_eq(solve.roots[0], c((1.0 - golden) / 2.0), 1e-8));
        assert!(approx_eq(solve.roots[1], c((1.0 + golden) / 2.0), 1e-8));
        assert!(solve.residuals.iter().all(|&r| r <= 1e-8));
        // h_2 = x1^2 + x1 x2 + x2^2 target check is part of residuals

        let solve = solve_block(&[c(3.5)], 1, DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(solve.roots, vec![c(3.5)]);

        let zeros = solve_block(&[c(0.0), c(0.0), c(0.0)], 3, DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(zeros.roots, vec![c(0.0); 3]);

        assert!(solve_block(&[c(1.0), c(2.0)], 1, DEFAULT_ROOT_TOL).is_err());
    }

    #[test]
    fn newton_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let len = rng.gen_range(1..6usize);
            let h: Vec<Complex64> = (0..len)
                .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect();
            let e = elementary_from_homogeneous(&h);
            let back = homogeneous_from_elementary(&e, len);
            for (a, b) in h.iter().zip(&back) {
                assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
            }
        }
    }

    #[test]
    fn phi_convergence_under_dirichlet() {
        let d = build(&Family::Dirichlet, 256).unwrap();
        let phi = standard(Standard::Phi, 256).unwrap();
        let rows = convergence(&d, &phi, 4).unwrap();
        let expected = [4u64, 8, 16, 32];
        for (row, first) in rows.iter().zip(expected) {
            assert_eq!(row.distance, MetricValue::OneOver(first), "k = {}", row.k);
            assert!(row.max_residual <= 1e-8);
        }
    }

    #[test]
    fn theta_is_reproduced_at_k1() {
        let th = build_theta(128).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let values: BTreeMap<u64, Complex64> = th
            .primitives()
            .into_iter()
            .map(|q| (q, Complex64::new(rng.gen_range(0.2..1.5), rng.gen_range(0.2..1.5))))
            .collect();
        let f = extend_from_primitives(&th, &values).unwrap();
        let (_, g, diag) = approximate(&th, &f, 1, DEFAULT_ROOT_TOL).unwrap();
        // k = 1 reproduces f; the roots are copied targets, so this can even
        // be bitwise equality
        assert!(matches!(diag.distance, MetricValue::Zero | MetricValue::EqualAtBound));
        for n in 1..=128 {
            assert!(approx_eq(g.get(n).unwrap(), f.get(n).unwrap(), 1e-7));
        }
    }

    #[test]
    fn theta3_exact_at_k3() {
        let t3 = build_structured(&SizeSpec::Repeat(3), 243).unwrap();
        let p3 = derive(&t3, DeriveWhich::PerfectP).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let values: BTreeMap<u64, Complex64> = p3
            .primitives()
            .into_iter()
            .map(|q| (q, Complex64::new(rng.gen_range(0.3..1.4), rng.gen_range(0.3..1.4))))
            .collect();
        let f = extend_from_primitives(&p3, &values).unwrap();
        let rows = convergence(&t3, &f, 3).unwrap();
        assert_eq!(rows[2].distance, MetricValue::EqualAtBound);
        // metric is non-increasing in k
        let b = 243;
        assert!(rows[1].distance.as_f64(b) <= rows[0].distance.as_f64(b));
        assert!(rows[2].distance.as_f64(b) <= rows[1].distance.as_f64(b));
    }

    #[test]
    fn approximation_stays_in_class() {
        let d = build(&Family::Dirichlet, 128).unwrap();
        let phi = standard(Standard::Phi, 128).unwrap();
        let (raft, g, _) = approximate(&d, &phi, 2, DEFAULT_ROOT_TOL).unwrap();
        let p = derive(&d, DeriveWhich::PerfectP).unwrap();
        assert!(is_class_member(&p, &g, 1e-6).unwrap().pass);
        assert_eq!(raft.factors.len(), 2);
        assert!(raft.factors.iter().all(|f| !f.inverted));
    }

    #[test]
    fn factor_permutation_is_harmless_when_symmetric() {
        let d = build(&Family::Dirichlet, 96).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..5 {
            let fs: Vec<ArithFunc> = (0..3)
                .map(|_| {
                    ArithFunc::tabulate(96, false, |n| {
                        if n == 1 {
                            Complex64::new(1.0, 0.0)
                        } else {
                            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                        }
                    })
                    .unwrap()
                })
                .collect();
            let raft = |order: [usize; 3]| Raft {
                system: d.clone(),
                factors: order
                    .iter()
                    .map(|&i| RaftFactor { func: fs[i].clone(), inverted: i == 2 })
                    .collect(),
            };
            let a = evaluate_raft(&raft([0, 1, 2])).unwrap();
            let b = evaluate_raft(&raft([2, 0, 1])).unwrap();
            for n in 1..=96 {
                assert!(approx_eq(a.get(n).unwrap(), b.get(n).unwrap(), 1e-6));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let d = build(&Family::Dirichlet, 8).unwrap();
        let u = standard(Standard::U, 8).unwrap();
        let raft = Raft {
            system: d,
            factors: vec![RaftFactor { func: u, inverted: true }],
        };
        let json = raft.to_json();
        assert!(json.starts_with("{\"format\":\"aconv-raft/1\",\"system\":{\"format\":\"aconv-system/1\""));
        let back = Raft::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);

        let named = "{\"format\":\"aconv-raft/1\",\"system\":\"dirichlet\",\"factors\":[{\"inverted\":false,\"func\":"
            .to_string()
            + &standard(Standard::U, 8).unwrap().to_json()
            + "}]}";
        let parsed = Raft::from_json(&named).unwrap();
        assert_eq!(parsed.system.bound(), 8);
    }
}
