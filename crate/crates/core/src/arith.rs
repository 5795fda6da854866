//! Arithmetical functions, A-convolution, Narkiewicz inverses, the derived
//! functions μ_A / τ_A / φ_A, and the 1/k metric.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::num::factorize;
use crate::system::DivisorSystem;
use crate::Result;

pub const FUNC_FORMAT: &str = "aconv-func/1";
pub const DEFAULT_TOL: f64 = 1e-9;

/// A complex-valued arithmetical function tabulated on `1..=bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithFunc {
    bound: u64,
    values: Vec<Complex64>,
    /// All values are known to be exact integers; comparisons are then exact.
    integer_exact: bool,
}

#[derive(Serialize, Deserialize)]
struct FuncWire {
    format: String,
    bound: u64,
    values: Vec<(f64, f64)>,
    integer_exact: bool,
}

/// Which inverse of the (in general non-commutative) A-convolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Value of the Schwab-Silberg metric at the tabulation bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricValue {
    /// Identical representations; true distance 0.
    Zero,
    /// First disagreement at index `k`; distance 1/k.
    OneOver(u64),
    /// Agreement everywhere tabulated; true distance is at most 1/(bound+1)
    /// but unknown.
    EqualAtBound,
}

impl MetricValue {
    /// Numeric value for comparisons, with `EqualAtBound` pessimized to
    /// 1/(bound+1).
    pub fn as_f64(&self, bound: u64) -> f64 {
        match self {
            MetricValue::Zero => 0.0,
            MetricValue::OneOver(k) => 1.0 / *k as f64,
            MetricValue::EqualAtBound => 1.0 / (bound + 1) as f64,
        }
    }

    pub fn first_mismatch(&self) -> Option<u64> {
        match self {
            MetricValue::OneOver(k) => Some(*k),
            _ => None,
        }
    }
}

impl std::fmt::Display for MetricValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricValue::Zero => write!(f, "0"),
            MetricValue::OneOver(k) => write!(f, "1/{k}"),
            MetricValue::EqualAtBound => write!(f, "equal-at-bound"),
        }
    }
}

/// `|x - y| <= tol * max(1, |x|, |y|)`.
pub fn approx_eq(x: Complex64, y: Complex64, tol: f64) -> bool {
    (x - y).norm() <= tol * x.norm().max(y.norm()).max(1.0)
}

impl ArithFunc {
    pub fn new(values: Vec<Complex64>, integer_exact: bool) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ZeroBound);
        }
        Ok(Self {
            bound: values.len() as u64,
            values,
            integer_exact,
        })
    }

    /// Tabulates `f(n)` for `n` in `1..=bound`.
    pub fn tabulate(bound: u64, integer_exact: bool, f: impl FnMut(u64) -> Complex64) -> Result<Self> {
        if bound == 0 {
            return Err(Error::ZeroBound);
        }
        Self::new((1..=bound).map(f).collect(), integer_exact)
    }

    pub fn tabulate_real(bound: u64, integer_exact: bool, mut f: impl FnMut(u64) -> f64) -> Result<Self> {
        Self::tabulate(bound, integer_exact, |n| Complex64::new(f(n), 0.0))
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn integer_exact(&self) -> bool {
        self.integer_exact
    }

    pub fn get(&self, n: u64) -> Result<Complex64> {
        if n == 0 || n > self.bound {
            return Err(Error::OutOfRange { n, bound: self.bound });
        }
        Ok(self.values[(n - 1) as usize])
    }

    /// Unchecked access for hot loops; callers stay within `1..=bound`.
    pub(crate) fn at(&self, n: u64) -> Complex64 {
        self.values[(n - 1) as usize]
    }

    /// Value comparison under the crate rule: exact when both sides are
    /// integer-exact, otherwise relative tolerance.
    pub fn values_eq(&self, other: &ArithFunc, n: u64, tol: f64) -> bool {
        let (x, y) = (self.at(n), other.at(n));
        if self.integer_exact && other.integer_exact {
            x == y
        } else {
            approx_eq(x, y, tol)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FuncWire {
            format: FUNC_FORMAT.into(),
            bound: self.bound,
            values: self.values.iter().map(|z| (z.re, z.im)).collect(),
            integer_exact: self.integer_exact,
        })
        .expect("function serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: FuncWire = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        if wire.format != FUNC_FORMAT {
            return Err(Error::Json(format!("unexpected format `{}`", wire.format)));
        }
        if wire.bound != wire.values.len() as u64 {
            return Err(Error::Json("bound does not match values length".into()));
        }
        Self::new(
            wire.values.into_iter().map(|(re, im)| Complex64::new(re, im)).collect(),
            wire.integer_exact,
        )
    }
}

fn check_bounds(a: u64, b: u64) -> Result<()> {
    if a != b {
        return Err(Error::BoundMismatch { left: a, right: b });
    }
    Ok(())
}

fn check_reflexive(sys: &DivisorSystem) -> Result<()> {
    for n in 1..=sys.bound() {
        if !sys.contains(n, n) {
            return Err(Error::NotReflexive { name: sys.name().into(), n });
        }
    }
    Ok(())
}

/// The A-convolution `(f * g)(n) = Σ_{d ∈ A(n)} f(d) g(n/d)`.
pub fn convolve(sys: &DivisorSystem, f: &ArithFunc, g: &ArithFunc) -> Result<ArithFunc> {
    check_bounds(sys.bound(), f.bound)?;
    check_bounds(f.bound, g.bound)?;
    let values = (1..=sys.bound())
        .map(|n| {
            sys.row(n)
                .iter()
                .map(|&d| f.at(d) * g.at(n / d))
                .sum()
        })
        .collect();
    ArithFunc::new(values, f.integer_exact && g.integer_exact)
}

/// The Narkiewicz left or right inverse of `f` under the A-convolution.
///
/// Requires a reflexive system (so the recursion always has the `d = n`
/// term to solve for) and `f(1)` away from zero. The result is integer-exact
/// only when `f` is and `f(1) = ±1`, since the recursion then never divides.
pub fn inverse(sys: &DivisorSystem, f: &ArithFunc, side: Side) -> Result<ArithFunc> {
    check_bounds(sys.bound(), f.bound)?;
    check_reflexive(sys)?;
    let f1 = f.at(1);
    if f1.norm() <= DEFAULT_TOL {
        return Err(Error::NonInvertible);
    }
    let inv1 = 1.0 / f1;
    let mut values = vec![Complex64::new(0.0, 0.0); f.bound as usize];
    values[0] = inv1;
    for n in 2..=f.bound {
        let mut acc = Complex64::new(0.0, 0.0);
        for &d in sys.row(n) {
            match side {
                Side::Right => {
                    if d != 1 {
                        acc += f.at(d) * values[(n / d - 1) as usize];
                    }
                }
                Side::Left => {
                    if d != n {
                        acc += values[(d - 1) as usize] * f.at(n / d);
                    }
                }
            }
        }
        values[(n - 1) as usize] = -inv1 * acc;
    }
    let exact = f.integer_exact && (f1 == Complex64::new(1.0, 0.0) || f1 == Complex64::new(-1.0, 0.0));
    ArithFunc::new(values, exact)
}

/// Which derived function of a system to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derived {
    Mobius,
    Tau,
    Totient,
}

/// `μ_A` (left inverse of u), `τ_A(n) = |A(n)|`, or `φ_A = μ_A * I`.
pub fn derived_function(sys: &DivisorSystem, which: Derived) -> Result<ArithFunc> {
    match which {
        Derived::Tau => {
            check_reflexive(sys)?;
            ArithFunc::tabulate_real(sys.bound(), true, |n| sys.row(n).len() as f64)
        }
        Derived::Mobius => {
            let u = standard(Standard::U, sys.bound())?;
            inverse(sys, &u, Side::Left)
        }
        Derived::Totient => {
            let mu = derived_function(sys, Derived::Mobius)?;
            let ident = standard(Standard::I, sys.bound())?;
            convolve(sys, &mu, &ident)
        }
    }
}

/// The classical functions available by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Standard {
    /// Constant 1.
    U,
    /// Identity n.
    I,
    /// Convolution identity: 1 at n = 1, else 0.
    Iota,
    Mu,
    Phi,
    Tau,
    /// Multiplicative core γ(n), the product of the distinct primes of n.
    Core,
}

pub fn standard(name: Standard, bound: u64) -> Result<ArithFunc> {
    ArithFunc::tabulate_real(bound, true, |n| match name {
        Standard::U => 1.0,
        Standard::I => n as f64,
        Standard::Iota => {
            if n == 1 {
                1.0
            } else {
                0.0
            }
        }
        Standard::Mu => {
            let f = factorize(n);
            if f.iter().any(|&(_, a)| a > 1) {
                0.0
            } else if f.len().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            }
        }
        Standard::Phi => factorize(n)
            .iter()
            .fold(n, |acc, &(p, _)| acc / p * (p - 1)) as f64,
        Standard::Tau => {
            factorize(n).iter().map(|&(_, a)| a as u64 + 1).product::<u64>() as f64
        }
        Standard::Core => factorize(n).iter().map(|&(p, _)| p).product::<u64>() as f64,
    })
}

/// The metric `d(f, g)`: 0 for identical representations, else 1/k at the
/// first index of disagreement, else equal-at-bound.
pub fn distance(f: &ArithFunc, g: &ArithFunc, tol: f64) -> Result<MetricValue> {
    check_bounds(f.bound, g.bound)?;
    if f.values == g.values {
        return Ok(MetricValue::Zero);
    }
    for n in 1..=f.bound {
        if !f.values_eq(g, n, tol) {
            return Ok(MetricValue::OneOver(n));
        }
    }
    Ok(MetricValue::EqualAtBound)
}
