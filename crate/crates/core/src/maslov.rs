//! Maslov indices of relative discs from framing arithmetic.
//!
//! A relative disc is assembled from capping discs, each contributing its
//! framing (a vanishing disc in a nodal fiber contributes -1), and its index
//! is the total cap framing minus the Lagrangian framing defect of the
//! boundary loop. Evenness of the Maslov class follows from two even discs
//! whose boundaries span `H_1` of the torus, provided `c_1` of the ambient
//! manifold is divisible by two.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Framing of a vanishing disc.
pub const VANISHING_DISC_FRAMING: i64 = -1;
/// Relative framing of two vanishing discs meeting once, smoothed into one.
pub const SMOOTHED_VANISHING_PAIR_FRAMING: i64 = -2;
/// Lagrangian framing of a fiber loop relative to a Seifert-surface pushoff.
pub const SEIFERT_PUSHOFF_DEFECT: i64 = -2;
/// Lagrangian framing of the circle direction, pushed off along the monodromy flow.
pub const MONODROMY_PUSHOFF_DEFECT: i64 = 0;

/// Which generator of `H_1(S^1 x gamma)` the disc boundary represents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryDirection {
    /// `pt x gamma`.
    Fiber,
    /// `S^1 x pt`.
    Circle,
}

impl BoundaryDirection {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryDirection::Fiber => "fiber",
            BoundaryDirection::Circle => "circle",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FramedDisc {
    pub cap_framings: Vec<i64>,
    pub framing_defect: i64,
    pub boundary: BoundaryDirection,
    #[serde(default)]
    pub boundary_degenerate: bool,
}

impl FramedDisc {
    pub fn new(
        cap_framings: Vec<i64>,
        framing_defect: i64,
        boundary: BoundaryDirection,
    ) -> Result<Self> {
        if cap_framings.is_empty() {
            return Err(Error::EmptyCaps);
        }
        Ok(Self {
            cap_framings,
            framing_defect,
            boundary,
            boundary_degenerate: false,
        })
    }

    /// A disc without caps, e.g. one lying entirely in the 3-manifold.
    pub fn degenerate(framing_defect: i64, boundary: BoundaryDirection) -> Self {
        Self {
            cap_framings: Vec::new(),
            framing_defect,
            boundary,
            boundary_degenerate: true,
        }
    }

    /// A fiber loop capped by `meridians` vanishing discs, with the
    /// Seifert-pushoff framing defect.
    pub fn seifert_capped(meridians: usize) -> Self {
        Self {
            cap_framings: vec![VANISHING_DISC_FRAMING; meridians],
            framing_defect: SEIFERT_PUSHOFF_DEFECT,
            boundary: BoundaryDirection::Fiber,
            boundary_degenerate: meridians == 0,
        }
    }

    /// The circle direction bounded by a smoothed pair of vanishing discs.
    pub fn smoothed_vanishing_pair() -> Self {
        Self {
            cap_framings: vec![SMOOTHED_VANISHING_PAIR_FRAMING],
            framing_defect: MONODROMY_PUSHOFF_DEFECT,
            boundary: BoundaryDirection::Circle,
            boundary_degenerate: false,
        }
    }
}

/// `sum(cap framings) - framing defect`.
pub fn maslov_index(d: &FramedDisc) -> i64 {
    d.cap_framings.iter().sum::<i64>() - d.framing_defect
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityVerdict {
    Even,
    Unverified,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ParityCertificate {
    /// Maslov indices of the fiber-direction and circle-direction discs.
    pub basis_indices: [i64; 2],
    /// Attested: `c_1` of the ambient manifold is divisible by two.
    pub c1_even: bool,
    pub verdict: ParityVerdict,
}

impl ParityCertificate {
    pub fn is_even(&self) -> bool {
        self.verdict == ParityVerdict::Even
    }
}

/// Certifies that the Maslov class is even from a basis of relative discs.
///
/// The discs may be passed in either order; their boundaries must be one
/// fiber loop and one circle loop.
pub fn parity_check(
    d_fiber: &FramedDisc,
    d_circle: &FramedDisc,
    c1_even: bool,
) -> Result<ParityCertificate> {
    let (fiber, circle) = match (d_fiber.boundary, d_circle.boundary) {
        (BoundaryDirection::Fiber, BoundaryDirection::Circle) => (d_fiber, d_circle),
        (BoundaryDirection::Circle, BoundaryDirection::Fiber) => (d_circle, d_fiber),
        (same, _) => return Err(Error::BasisNotSpanning(same.name())),
    };
    let basis_indices = [maslov_index(fiber), maslov_index(circle)];
    let verdict = if c1_even && basis_indices.iter().all(|i| i % 2 == 0) {
        ParityVerdict::Even
    } else {
        ParityVerdict::Unverified
    };
    Ok(ParityCertificate {
        basis_indices,
        c1_even,
        verdict,
    })
}
