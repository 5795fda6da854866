//! Cohen triangles, Kronecker products with structures, the structured
//! systems (including Θ_k), and structure-factor detection.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::num::{ilog, pow};
use crate::system::{from_homogeneous_rows, DivisorSystem};
use crate::Result;

pub const TRIANGLE_FORMAT: &str = "aconv-triangle/1";

/// The binary triangle of a system at a prime: row `a` has entries
/// `c_{ab} = 1` iff `p^b ∈ A(p^a)`, for `b = 0..=a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohenTriangle {
    rows: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct TriangleWire {
    format: String,
    rows: Vec<Vec<u8>>,
}

impl CohenTriangle {
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self> {
        for (a, row) in rows.iter().enumerate() {
            if row.len() != a + 1 {
                return Err(Error::InvalidSystem(format!("triangle row {a} has wrong length")));
            }
            if row[0] != 1 || row[a] != 1 {
                return Err(Error::InvalidSystem(format!(
                    "triangle row {a} must start and end with 1"
                )));
            }
            if row.iter().any(|&c| c > 1) {
                return Err(Error::InvalidSystem(format!("triangle row {a} is not binary")));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Highest row index.
    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn entry(&self, a: usize, b: usize) -> u8 {
        self.rows[a][b]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TriangleWire {
            format: TRIANGLE_FORMAT.into(),
            rows: self.rows.clone(),
        })
        .expect("triangle serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: TriangleWire = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        if wire.format != TRIANGLE_FORMAT {
            return Err(Error::Json(format!("unexpected format `{}`", wire.format)));
        }
        Self::from_rows(wire.rows)
    }

    /// Renders rows as `1 . 1` glyph lines.
    pub fn render(&self) -> String {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&c| if c == 1 { "1" } else { "." })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// An all-ones lower-triangular factor of the given size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Structure {
    pub size: u32,
}

impl Structure {
    pub fn new(size: u32) -> Result<Self> {
        if size < 2 {
            return Err(Error::BadStructureSize);
        }
        Ok(Self { size })
    }
}

/// The triangle of `A` at `p`, truncated to rows `0..=rows`.
pub fn triangle_of(sys: &DivisorSystem, p: u64, rows: u32) -> Result<CohenTriangle> {
    if p < 2 || ilog(p, sys.bound()) < rows {
        return Err(Error::InsufficientBound { p, rows, bound: sys.bound() });
    }
    let out = (0..=rows)
        .map(|a| {
            (0..=a)
                .map(|b| u8::from(sys.contains(pow(p, a), pow(p, b))))
                .collect()
        })
        .collect();
    CohenTriangle::from_rows(out)
}

/// Kronecker product with a structure: entry `(a's + r, b's + t)` is
/// `C_{a'b'} · [t <= r]`.
pub fn kron(c: &CohenTriangle, s: Structure) -> CohenTriangle {
    let s = s.size as usize;
    let out_rows = (c.depth() + 1) * s;
    let rows = (0..out_rows)
        .map(|a| (0..=a).map(|b| u8::from(c.entry(a / s, b / s) == 1 && b % s <= a % s)).collect())
        .collect();
    CohenTriangle::from_rows(rows).expect("kron preserves triangle invariants")
}

/// Radix sequence for a structured system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SizeSpec {
    /// One size repeated forever; `Repeat(k)` is Θ_k and `Repeat(2)` is Θ.
    Repeat(u32),
    /// Finitely many structure factors, innermost first, topped by the full
    /// Dirichlet factor. The empty list is the trivially structured D.
    Finite(Vec<u32>),
}

impl SizeSpec {
    fn validate(&self) -> Result<()> {
        let ok = match self {
            SizeSpec::Repeat(k) => *k >= 2,
            SizeSpec::Finite(v) => v.iter().all(|&s| s >= 2),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BadStructureSize)
        }
    }

    /// Mixed-radix digit domination: `b`'s digits must sit below `a`'s
    /// digit-wise, with the quotient past a finite list only ordered.
    fn dominates(&self, a: u32, b: u32) -> bool {
        let (mut qa, mut qb) = (a, b);
        match self {
            SizeSpec::Repeat(k) => {
                while qa > 0 || qb > 0 {
                    if qb % k > qa % k {
                        return false;
                    }
                    qa /= k;
                    qb /= k;
                }
                true
            }
            SizeSpec::Finite(sizes) => {
                for &s in sizes {
                    if qb % s > qa % s {
                        return false;
                    }
                    qa /= s;
                    qb /= s;
                }
                qb <= qa
            }
        }
    }
}

/// The homogeneous system whose triangle is the (possibly infinite)
/// Kronecker chain of structures described by `sizes`.
pub fn build_structured(sizes: &SizeSpec, bound: u64) -> Result<DivisorSystem> {
    sizes.validate()?;
    let name = match sizes {
        SizeSpec::Repeat(2) => "theta".to_string(),
        SizeSpec::Repeat(k) => format!("theta_{k}"),
        SizeSpec::Finite(v) => format!(
            "structured[{}]",
            v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
        ),
    };
    from_homogeneous_rows(name, bound, |a| {
        (0..=a).filter(|&b| sizes.dominates(a, b)).collect()
    })
}

/// All structure sizes `s` such that the triangle is `quotient ⊗ γ_s` on
/// every tabulated entry, with the quotient read off the rows `a·s`.
pub fn factor_structures(c: &CohenTriangle) -> Vec<(u32, CohenTriangle)> {
    let depth = c.depth();
    let mut out = Vec::new();
    for s in 2..=depth.max(2) {
        if s > depth {
            break;
        }
        let q_depth = depth / s;
        let quotient: Vec<Vec<u8>> = (0..=q_depth)
            .map(|a| (0..=a).map(|b| c.entry(a * s, b * s)).collect())
            .collect();
        let ok = (0..=depth).all(|a| {
            (0..=a).all(|b| {
                let (aq, ar) = (a / s, a % s);
                let (bq, br) = (b / s, b % s);
                c.entry(a, b) == u8::from(quotient[aq][bq] == 1 && br <= ar)
            })
        });
        if ok {
            if let Ok(q) = CohenTriangle::from_rows(quotient) {
                out.push((s as u32, q));
            }
        }
    }
    out
}
