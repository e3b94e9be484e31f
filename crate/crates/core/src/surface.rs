//! First homology of a closed fiber surface with its intersection pairing.
//!
//! A genus `g` surface has the ordered symplectic basis
//! `(A_1, B_1, ..., A_g, B_g)` and intersection matrix made of `g` diagonal
//! blocks `[[0, 1], [-1, 0]]`, so `<A_i, B_i> = +1`. Orientations of loops
//! are not canonical for Lagrangian tori, so callers that match curves
//! downstream do so up to a global sign.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SurfaceModel {
    genus: usize,
}

/// An integer homology class in the `(A_i, B_i)` basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass {
    coefficients: Vec<i64>,
}

pub fn standard_surface(genus: usize) -> Result<SurfaceModel> {
    SurfaceModel::standard(genus)
}

impl SurfaceModel {
    pub fn standard(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::GenusTooSmall(0));
        }
        Ok(Self { genus })
    }

    /// The sphere. Only used as the neutral factor of a connected sum.
    pub(crate) const fn empty() -> Self {
        Self { genus: 0 }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Rank of `H_1`, i.e. `2g`.
    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn basis_labels(&self) -> Vec<String> {
        (1..=self.genus)
            .flat_map(|i| [format!("A{i}"), format!("B{i}")])
            .collect()
    }

    pub fn intersection_matrix(&self) -> IntMatrix {
        let mut j = IntMatrix::zeros(self.dim(), self.dim());
        for i in 0..self.genus {
            j.set(2 * i, 2 * i + 1, 1);
            j.set(2 * i + 1, 2 * i, -1);
        }
        j
    }

    /// Wraps coefficients as a class on this surface.
    pub fn class(&self, coefficients: Vec<i64>) -> Result<CurveClass> {
        self.check_len(coefficients.len())?;
        Ok(CurveClass { coefficients })
    }

    /// Like [`SurfaceModel::class`], but additionally requires the class to be
    /// representable by an embedded loop: primitive or zero.
    pub fn loop_class(&self, coefficients: Vec<i64>) -> Result<CurveClass> {
        let c = self.class(coefficients)?;
        if !c.is_zero() && !c.is_primitive() {
            return Err(Error::NotPrimitive(c.coefficients));
        }
        Ok(c)
    }

    pub fn zero_class(&self) -> CurveClass {
        CurveClass {
            coefficients: vec![0; self.dim()],
        }
    }

    /// `A_i` for `i` in `1..=g`.
    pub fn a(&self, i: usize) -> CurveClass {
        self.basis_vector(2 * (i - 1))
    }

    /// `B_i` for `i` in `1..=g`.
    pub fn b(&self, i: usize) -> CurveClass {
        self.basis_vector(2 * (i - 1) + 1)
    }

    fn basis_vector(&self, idx: usize) -> CurveClass {
        let mut c = self.zero_class();
        c.coefficients[idx] = 1;
        c
    }

    pub fn contains(&self, c: &CurveClass) -> bool {
        c.coefficients.len() == self.dim()
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::ModelMismatch {
                expected: self.dim(),
                found: len,
            });
        }
        Ok(())
    }

    /// `c0^T J c1`.
    pub fn intersection_number(&self, c0: &CurveClass, c1: &CurveClass) -> Result<i64> {
        self.check_len(c0.dim())?;
        self.check_len(c1.dim())?;
        // Block structure: sum over i of a0_i b1_i - b0_i a1_i.
        let mut acc: i128 = 0;
        for pair in 0..self.genus {
            let (a0, b0) = (c0.coefficients[2 * pair], c0.coefficients[2 * pair + 1]);
            let (a1, b1) = (c1.coefficients[2 * pair], c1.coefficients[2 * pair + 1]);
            acc += i128::from(a0) * i128::from(b1) - i128::from(b0) * i128::from(a1);
        }
        i64::try_from(acc).map_err(|_| Error::Overflow)
    }

    /// Whether `c0, c1` are linearly independent over the rationals.
    pub fn independence_check(&self, c0: &CurveClass, c1: &CurveClass) -> Result<bool> {
        self.check_len(c0.dim())?;
        self.check_len(c1.dim())?;
        let m = IntMatrix::from_rows(vec![c0.coefficients.clone(), c1.coefficients.clone()])?;
        Ok(m.rank() == 2)
    }
}

pub fn intersection_number(s: &SurfaceModel, c0: &CurveClass, c1: &CurveClass) -> Result<i64> {
    s.intersection_number(c0, c1)
}

pub fn independence_check(s: &SurfaceModel, c0: &CurveClass, c1: &CurveClass) -> Result<bool> {
    s.independence_check(c0, c1)
}

impl CurveClass {
    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&x| x == 0)
    }

    /// gcd of the coefficients is 1.
    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// gcd of the coefficients (0 for the zero class).
    pub fn content(&self) -> u64 {
        self.coefficients
            .iter()
            .fold(0u64, |acc, &x| acc.gcd(&x.unsigned_abs()))
    }

    pub fn negated(&self) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|x| -x).collect(),
        }
    }

    /// `c == other` or `c == -other`.
    pub fn equal_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == other.negated()
    }

    pub(crate) fn from_vec_unchecked(coefficients: Vec<i64>) -> Self {
        Self { coefficients }
    }
}

impl fmt::Debug for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coefficients)
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_form() {
        let s = standard_surface(1).unwrap();
        assert_eq!(
            s.intersection_matrix().to_rows(),
            vec![vec![0, 1], vec![-1, 0]]
        );
        assert_eq!(s.basis_labels(), ["A1", "B1"]);
    }

    #[test]
    fn genus_two_form_is_unimodular() {
        let s = standard_surface(2).unwrap();
        let j = s.intersection_matrix();
        assert_eq!(j.rows(), 4);
        assert_eq!(j.determinant().unwrap(), 1);
        assert_eq!(j.transpose(), j.neg());
    }

    #[test]
    fn genus_zero_rejected() {
        assert_eq!(standard_surface(0), Err(Error::GenusTooSmall(0)));
    }

    #[test]
    fn basic_pairings() {
        let s = standard_surface(1).unwrap();
        let g1 = s.class(vec![1, 0]).unwrap();
        let g3 = s.class(vec![1, -1]).unwrap();
        assert_eq!(s.intersection_number(&s.a(1), &s.b(1)).unwrap(), 1);
        assert_eq!(s.intersection_number(&g3, &g3).unwrap(), 0);
        assert_eq!(s.intersection_number(&g1, &g3).unwrap(), -1);
    }

    #[test]
    fn pairing_agrees_with_matrix_form() {
        let s = standard_surface(3).unwrap();
        let u = s.class(vec![1, -2, 0, 3, 5, -1]).unwrap();
        let v = s.class(vec![4, 0, -1, 2, 1, 1]).unwrap();
        let via_matrix = s
            .intersection_matrix()
            .pairing(u.coefficients(), v.coefficients())
            .unwrap();
        assert_eq!(s.intersection_number(&u, &v).unwrap(), via_matrix);
    }

    #[test]
    fn mismatched_dimension() {
        let s = standard_surface(1).unwrap();
        let bad = CurveClass::from_vec_unchecked(vec![1, 0, 0, 0]);
        assert_eq!(
            s.intersection_number(&s.a(1), &bad),
            Err(Error::ModelMismatch {
                expected: 2,
                found: 4
            })
        );
        assert!(s.class(vec![1]).is_err());
    }

    #[test]
    fn independence() {
        let s = standard_surface(1).unwrap();
        let c = |v: Vec<i64>| s.class(v).unwrap();
        assert!(s
            .independence_check(&c(vec![1, 0]), &c(vec![0, 1]))
            .unwrap());
        assert!(!s
            .independence_check(&c(vec![1, 0]), &c(vec![2, 0]))
            .unwrap());
        assert!(s
            .independence_check(&c(vec![1, 0]), &c(vec![1, -1]))
            .unwrap());
        assert!(!s
            .independence_check(&c(vec![0, 0]), &c(vec![1, -1]))
            .unwrap());
    }

    #[test]
    fn loop_classes_must_be_primitive() {
        let s = standard_surface(1).unwrap();
        assert!(s.loop_class(vec![2, 4]).is_err());
        assert!(s.loop_class(vec![0, 0]).is_ok());
        assert!(s.loop_class(vec![3, -2]).is_ok());
    }
}
