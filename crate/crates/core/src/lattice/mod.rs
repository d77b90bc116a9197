//! Weight-lattice coordinates for affine sl2.
//!
//! A dominant integral weight is `Λ = mΛ₀ + nΛ₁` (the δ-component is fixed
//! to zero). Points of `Γ = Λ + Zα₀ + Zα₁` are written `λ = Λ − aα₀ − bα₁`
//! and stored by their coordinates `(a, b)`.
//!
//! The Cartan matrix is `((2, −2), (−2, 2))`, so
//!
//! ```text
//! ⟨α₀^∨, λ⟩ = m − 2(a − b)
//! ⟨α₁^∨, λ⟩ = n + 2(a − b)
//! ```
//!
//! The finite weight is `⟨α₁^∨, ·⟩ = n + 2(a − b)`. Some references write
//! this as `−2(a − b)` on `Γ₀`; that sign makes the degree/finite-weight
//! covariance negative, whereas the pairing above gives the positive `N/2`
//! off-diagonal entry, which is what the computed distributions show.

mod functional;

pub use functional::Functional;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the two simple reflections `s₀`, `s₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Zero,
    One,
}

impl Generator {
    pub const ALL: [Generator; 2] = [Generator::Zero, Generator::One];

    pub fn index(self) -> u32 {
        match self {
            Generator::Zero => 0,
            Generator::One => 1,
        }
    }

    pub fn other(self) -> Generator {
        match self {
            Generator::Zero => Generator::One,
            Generator::One => Generator::Zero,
        }
    }
}

impl TryFrom<u32> for Generator {
    type Error = Error;

    fn try_from(value: u32) -> Result<Self> {
        match value {
            0 => Ok(Generator::Zero),
            1 => Ok(Generator::One),
            other => Err(Error::InvalidGenerator(other)),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Dominant integral weight `mΛ₀ + nΛ₁` of level `m + n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHighestWeight")]
pub struct HighestWeight {
    m: u32,
    n: u32,
}

#[derive(Deserialize)]
struct RawHighestWeight {
    m: u32,
    n: u32,
}

impl TryFrom<RawHighestWeight> for HighestWeight {
    type Error = Error;

    fn try_from(raw: RawHighestWeight) -> Result<Self> {
        HighestWeight::new(raw.m, raw.n)
    }
}

impl HighestWeight {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 && n == 0 {
            return Err(Error::InvalidHighestWeight { m, n });
        }
        Ok(HighestWeight { m, n })
    }

    /// The fundamental weight `Λ_j`.
    pub fn fundamental(j: Generator) -> Self {
        match j {
            Generator::Zero => HighestWeight { m: 1, n: 0 },
            Generator::One => HighestWeight { m: 0, n: 1 },
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Pairing with the canonical central element `c = α₀^∨ + α₁^∨`.
    pub fn level(&self) -> u32 {
        self.m + self.n
    }

    /// `⟨α_j^∨, Λ⟩`.
    pub fn label(&self, j: Generator) -> i64 {
        match j {
            Generator::Zero => i64::from(self.m),
            Generator::One => i64::from(self.n),
        }
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Λ0+{}Λ1", self.m, self.n)
    }
}

/// Point `Λ − aα₀ − bα₁` of the weight lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub a: i64,
    pub b: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { a: 0, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        LatticePoint { a, b }
    }

    pub fn a_minus_b(&self) -> i64 {
        self.a - self.b
    }

    /// `λ − kδ`: moves `k` steps down the δ-string.
    pub fn minus_delta(&self, k: i64) -> Self {
        LatticePoint::new(self.a + k, self.b + k)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// `⟨α_j^∨, λ⟩` for `λ` in the lattice of `hw`.
pub fn coroot_pairing(j: Generator, hw: &HighestWeight, p: &LatticePoint) -> i64 {
    let d = p.a_minus_b();
    match j {
        Generator::Zero => hw.label(j) - 2 * d,
        Generator::One => hw.label(j) + 2 * d,
    }
}

/// Degree `⟨−d, λ⟩ = a`.
pub fn degree(p: &LatticePoint) -> i64 {
    p.a
}

/// Finite weight `⟨α₁^∨, λ⟩ = n + 2(a − b)`.
pub fn finite_weight(hw: &HighestWeight, p: &LatticePoint) -> i64 {
    coroot_pairing(Generator::One, hw, p)
}

/// `λ − iα_j`.
pub fn step(p: &LatticePoint, j: Generator, i: i64) -> LatticePoint {
    match j {
        Generator::Zero => LatticePoint::new(p.a + i, p.b),
        Generator::One => LatticePoint::new(p.a, p.b + i),
    }
}
