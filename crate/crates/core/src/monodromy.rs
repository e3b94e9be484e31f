//! Homological monodromy of fibered links.
//!
//! Maps act on column vectors of coefficients in the `(A_i, B_i)` basis.
//! Composition follows matrix multiplication: `compose(m1, m2)` applies `m2`
//! first. A positive Dehn twist along `c` acts as the transvection
//! `x -> x + <x, c> c`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::surface::{CurveClass, SurfaceModel};

/// Default iteration bound for [`order`] and [`orbit_relations`].
pub const DEFAULT_BOUND: u64 = 4096;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MonodromyMap {
    surface: SurfaceModel,
    matrix: IntMatrix,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistSign {
    Positive,
    Negative,
}

impl TwistSign {
    pub fn value(self) -> i64 {
        match self {
            TwistSign::Positive => 1,
            TwistSign::Negative => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            1 => Some(TwistSign::Positive),
            -1 => Some(TwistSign::Negative),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Order {
    Finite(u64),
    ExceedsBound,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(k) => Some(k),
            Order::ExceedsBound => None,
        }
    }
}

/// `M^k c0 = sign * c1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct OrbitRelation {
    pub k: u64,
    pub sign: i8,
}

impl OrbitRelation {
    pub const fn new(k: u64, sign: i8) -> Self {
        Self { k, sign }
    }
}

impl fmt::Display for OrbitRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})",
            self.k,
            if self.sign > 0 { "+1" } else { "-1" }
        )
    }
}

impl MonodromyMap {
    pub fn identity(surface: &SurfaceModel) -> Self {
        Self {
            surface: *surface,
            matrix: IntMatrix::identity(surface.dim()),
        }
    }

    /// The identity of the genus-0 surface; neutral for [`connected_sum`].
    pub fn neutral() -> Self {
        Self::identity(&SurfaceModel::empty())
    }

    /// Validates that `matrix` is a symplectic automorphism of `surface`.
    pub fn from_matrix(surface: &SurfaceModel, matrix: IntMatrix) -> Result<Self> {
        surface.check_len(matrix.rows())?;
        surface.check_len(matrix.cols())?;
        let m = Self {
            surface: *surface,
            matrix,
        };
        if !m.preserves_form()? {
            return Err(Error::NotSymplectic);
        }
        Ok(m)
    }

    /// Like [`MonodromyMap::from_matrix`] with the genus read off the size.
    pub fn from_square_matrix(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_square() || !matrix.rows().is_multiple_of(2) {
            return Err(Error::ModelMismatch {
                expected: matrix.rows() + matrix.rows() % 2,
                found: matrix.cols(),
            });
        }
        let surface = SurfaceModel::standard(matrix.rows() / 2)?;
        Self::from_matrix(&surface, matrix)
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `M^T J M == J`.
    pub fn preserves_form(&self) -> Result<bool> {
        let j = self.surface.intersection_matrix();
        let lhs = self.matrix.transpose().mul(&j)?.mul(&self.matrix)?;
        Ok(lhs == j)
    }

    pub fn determinant(&self) -> Result<i64> {
        self.matrix.determinant()
    }

    pub fn characteristic_polynomial(&self) -> Result<Vec<i64>> {
        self.matrix.characteristic_polynomial()
    }

    pub fn apply(&self, c: &CurveClass) -> Result<CurveClass> {
        self.surface.check_len(c.dim())?;
        Ok(CurveClass::from_vec_unchecked(
            self.matrix.apply(c.coefficients())?,
        ))
    }

    pub fn power(&self, k: u64) -> Result<Self> {
        Ok(Self {
            surface: self.surface,
            matrix: self.matrix.pow(k)?,
        })
    }

    /// `M^{-1} = J^{-1} M^T J` for symplectic `M`.
    pub fn inverse(&self) -> Result<Self> {
        let j = self.surface.intersection_matrix();
        let matrix = j.neg().mul(&self.matrix.transpose())?.mul(&j)?;
        Ok(Self {
            surface: self.surface,
            matrix,
        })
    }
}

/// Homological action of a Dehn twist along `c`: `x -> x + sign <x, c> c`.
pub fn dehn_twist(surface: &SurfaceModel, c: &CurveClass, sign: TwistSign) -> Result<MonodromyMap> {
    surface.check_len(c.dim())?;
    let n = surface.dim();
    let coeffs = c.coefficients();
    let mut matrix = IntMatrix::identity(n);
    for j in 0..n {
        // <e_j, c>: <A_i, c> = b_i(c), <B_i, c> = -a_i(c)
        let p = if j % 2 == 0 {
            coeffs[j + 1]
        } else {
            -coeffs[j - 1]
        };
        let scale = p.checked_mul(sign.value()).ok_or(Error::Overflow)?;
        for (i, &ci) in coeffs.iter().enumerate() {
            let delta = scale.checked_mul(ci).ok_or(Error::Overflow)?;
            let v = matrix.get(i, j).checked_add(delta).ok_or(Error::Overflow)?;
            matrix.set(i, j, v);
        }
    }
    Ok(MonodromyMap {
        surface: *surface,
        matrix,
    })
}

/// `m1 * m2`, i.e. `m2` followed by `m1`.
pub fn compose(m1: &MonodromyMap, m2: &MonodromyMap) -> Result<MonodromyMap> {
    if m1.surface != m2.surface {
        return Err(Error::ModelMismatch {
            expected: m1.surface.dim(),
            found: m2.surface.dim(),
        });
    }
    Ok(MonodromyMap {
        surface: m1.surface,
        matrix: m1.matrix.mul(&m2.matrix)?,
    })
}

/// Composite of a twist word; the first entry is applied first.
pub fn twist_word(
    surface: &SurfaceModel,
    word: &[(CurveClass, TwistSign)],
) -> Result<MonodromyMap> {
    word.iter()
        .try_fold(MonodromyMap::identity(surface), |acc, (c, s)| {
            compose(&dehn_twist(surface, c, *s)?, &acc)
        })
}

/// The trefoil monodromy `[[1, 1], [-1, 0]]` in the basis `A, B` of its
/// genus-one fiber.
pub fn trefoil_monodromy() -> MonodromyMap {
    let surface = SurfaceModel::standard(1).expect("genus 1");
    let matrix = IntMatrix::from_rows(vec![vec![1, 1], vec![-1, 0]]).expect("square");
    MonodromyMap { surface, matrix }
}

/// The chain `c_1, ..., c_{2n}` on the genus-`n` surface with
/// `c_{2i-1} = A_i` and `c_{2i} = B_i - B_{i+1}` (`B_{n+1} = 0`).
pub fn torus_knot_chain(n: usize) -> Result<(SurfaceModel, Vec<CurveClass>)> {
    let surface = SurfaceModel::standard(n)?;
    let mut chain = Vec::with_capacity(2 * n);
    for i in 1..=n {
        chain.push(surface.a(i));
        let mut b = surface.b(i).coefficients().to_vec();
        if i < n {
            b[2 * i + 1] = -1;
        }
        chain.push(surface.class(b)?);
    }
    Ok((surface, chain))
}

/// Monodromy of the `(2, 2n+1)` torus knot as the product of positive twists
/// along [`torus_knot_chain`], `T_{c_1} T_{c_2} ... T_{c_{2n}}`.
pub fn torus_knot_monodromy(n: usize) -> Result<MonodromyMap> {
    let (surface, chain) = torus_knot_chain(n)?;
    chain
        .iter()
        .try_fold(MonodromyMap::identity(&surface), |acc, c| {
            compose(&acc, &dehn_twist(&surface, c, TwistSign::Positive)?)
        })
}

/// Block direct sum on the genus `g1 + g2` surface. The second summand's
/// basis follows the first's.
pub fn connected_sum(m1: &MonodromyMap, m2: &MonodromyMap) -> MonodromyMap {
    let genus = m1.surface.genus() + m2.surface.genus();
    let surface = if genus == 0 {
        SurfaceModel::empty()
    } else {
        SurfaceModel::standard(genus).unwrap()
    };
    MonodromyMap {
        surface,
        matrix: m1.matrix.block_sum(&m2.matrix),
    }
}

/// Smallest `k <= bound` with `M^k = I`.
///
/// A finite-order integer matrix has every power's trace bounded by its size
/// (eigenvalues are roots of unity), so a larger trace stops the scan early.
pub fn order(m: &MonodromyMap, bound: u64) -> Order {
    let n = m.matrix.rows();
    let trace_cap = n as i128;
    let mut power = IntMatrix::identity(n);
    for k in 1..=bound {
        match power.checked_mul(&m.matrix) {
            Some(p) => power = p,
            None => return order_big(m, BigMatrix::from(&power), k, bound),
        }
        if power.is_identity() {
            return Order::Finite(k);
        }
        if power.trace().abs() > trace_cap {
            return Order::ExceedsBound;
        }
    }
    Order::ExceedsBound
}

// Continues `order` once entries no longer fit in i64. `power` holds M^(k-1).
fn order_big(m: &MonodromyMap, mut power: BigMatrix, k: u64, bound: u64) -> Order {
    let step = BigMatrix::from(&m.matrix);
    let trace_cap = BigInt::from(m.matrix.rows());
    for j in k..=bound {
        power = power.mul(&step);
        if power.is_identity() {
            return Order::Finite(j);
        }
        if power.trace().abs() > trace_cap {
            return Order::ExceedsBound;
        }
    }
    Order::ExceedsBound
}

/// All `(k, sign)` with `0 <= k <= bound` and `M^k c0 = sign * c1`.
pub fn orbit_relations(
    m: &MonodromyMap,
    c0: &CurveClass,
    c1: &CurveClass,
    bound: u64,
) -> Result<BTreeSet<OrbitRelation>> {
    m.surface.check_len(c0.dim())?;
    m.surface.check_len(c1.dim())?;
    let target: Vec<BigInt> = c1.coefficients().iter().map(|&x| BigInt::from(x)).collect();
    let neg_target: Vec<BigInt> = target.iter().map(|x| -x).collect();
    let mut v: Vec<BigInt> = c0.coefficients().iter().map(|&x| BigInt::from(x)).collect();
    let mut out = BTreeSet::new();
    for k in 0..=bound {
        if v == target {
            out.insert(OrbitRelation::new(k, 1));
        }
        if v == neg_target {
            out.insert(OrbitRelation::new(k, -1));
        }
        if k < bound {
            v = apply_big(&m.matrix, &v);
        }
    }
    Ok(out)
}

fn apply_big(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    (0..m.rows())
        .map(|i| m.row(i).iter().zip(v).map(|(&a, b)| b * a).sum())
        .collect()
}

struct BigMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl From<&IntMatrix> for BigMatrix {
    fn from(m: &IntMatrix) -> Self {
        let data = (0..m.rows())
            .flat_map(|i| m.row(i).iter().map(|&x| BigInt::from(x)))
            .collect();
        Self { n: m.rows(), data }
    }
}

impl BigMatrix {
    fn mul(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * &rhs.data[k * n + j];
                }
            }
        }
        Self { n, data }
    }

    fn is_identity(&self) -> bool {
        let n = self.n;
        self.data.iter().enumerate().all(|(idx, x)| {
            if idx / n == idx % n {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }

    fn trace(&self) -> BigInt {
        (0..self.n).map(|i| &self.data[i * self.n + i]).sum()
    }
}

/// One summand of a fibered link, described by its monodromy.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkFactor {
    Trefoil,
    /// The `(2, 2n+1)` torus knot.
    TorusKnot2 {
        n: usize,
    },
    /// Positive Hopf band. The twist curve lives on the factor's own closed
    /// fiber and may be null-homologous there, in which case the homological
    /// action is trivial.
    HopfPositive {
        twist_curve: CurveClass,
    },
    HopfNegative {
        twist_curve: CurveClass,
    },
    ExplicitMatrix {
        matrix: IntMatrix,
    },
    /// Twists applied left to right.
    TwistWord {
        genus: usize,
        twists: Vec<(CurveClass, TwistSign)>,
    },
}

impl LinkFactor {
    pub fn genus(&self) -> usize {
        match self {
            LinkFactor::Trefoil => 1,
            LinkFactor::TorusKnot2 { n } => *n,
            LinkFactor::HopfPositive { twist_curve } | LinkFactor::HopfNegative { twist_curve } => {
                twist_curve.dim() / 2
            }
            LinkFactor::ExplicitMatrix { matrix } => matrix.rows() / 2,
            LinkFactor::TwistWord { genus, .. } => *genus,
        }
    }

    pub fn monodromy(&self) -> Result<MonodromyMap> {
        match self {
            LinkFactor::Trefoil => Ok(trefoil_monodromy()),
            LinkFactor::TorusKnot2 { n } => torus_knot_monodromy(*n),
            LinkFactor::HopfPositive { twist_curve } => hopf(twist_curve, TwistSign::Positive),
            LinkFactor::HopfNegative { twist_curve } => hopf(twist_curve, TwistSign::Negative),
            LinkFactor::ExplicitMatrix { matrix } => {
                MonodromyMap::from_square_matrix(matrix.clone())
            }
            LinkFactor::TwistWord { genus, twists } => {
                let surface = SurfaceModel::standard(*genus)?;
                twist_word(&surface, twists)
            }
        }
    }
}

fn hopf(c: &CurveClass, sign: TwistSign) -> Result<MonodromyMap> {
    if !c.dim().is_multiple_of(2) {
        return Err(Error::ModelMismatch {
            expected: c.dim() + 1,
            found: c.dim(),
        });
    }
    let surface = SurfaceModel::standard(c.dim() / 2)?;
    dehn_twist(&surface, c, sign)
}

/// Combinatorial description of a fibered link: its monodromy factors, glued
/// by connected sum, and the number of link components (one meridian each).
///
/// Components that only contribute a meridian, like a meridian circle added
/// to a knot, add to `meridian_count` but carry no factor and no genus.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FiberedLinkSpec {
    pub factors: Vec<LinkFactor>,
    pub meridian_count: usize,
}

impl FiberedLinkSpec {
    pub fn new(factors: Vec<LinkFactor>, meridian_count: usize) -> Self {
        Self {
            factors,
            meridian_count,
        }
    }

    pub fn fiber_genus(&self) -> usize {
        self.factors.iter().map(LinkFactor::genus).sum()
    }

    pub fn surface(&self) -> Result<SurfaceModel> {
        SurfaceModel::standard(self.fiber_genus())
    }

    pub fn monodromy(&self) -> Result<MonodromyMap> {
        self.factors
            .iter()
            .try_fold(MonodromyMap::neutral(), |acc, f| {
                Ok(connected_sum(&acc, &f.monodromy()?))
            })
    }
}

/// Least common multiple helper for finite orders.
pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
