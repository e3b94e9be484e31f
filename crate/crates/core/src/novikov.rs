//! Exact arithmetic in the universal Novikov ring.
//!
//! Elements are finite sums `sum_i a_i T^{l_i} e^{n_i}` with rational
//! coefficients `a_i`, rational energies `l_i` and integer `n_i`. The grading
//! is `deg T^l e^n = 2n`; the energy filtration `F^l` collects sums whose
//! energies are all `>= l`, and a step `s > 0` turns it into the integer
//! filtration `F^q = F^{q s}`.
//!
//! Energies are kept rational instead of real so every computation is exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One monomial `a T^energy e^shift`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub coefficient: BigRational,
    pub energy: BigRational,
    pub shift: i64,
}

impl Term {
    pub fn new(coefficient: BigRational, energy: BigRational, shift: i64) -> Self {
        Self {
            coefficient,
            energy,
            shift,
        }
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        self.energy
            .cmp(&other.energy)
            .then(self.shift.cmp(&other.shift))
    }
}

/// An element of the Novikov ring in canonical form: terms sorted by
/// `(energy, shift)`, no repeated keys, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct NovikovElement {
    terms: Vec<Term>,
}

impl NovikovElement {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), BigRational::zero(), 0)
    }

    pub fn monomial(coefficient: BigRational, energy: BigRational, shift: i64) -> Self {
        Self::from_terms(vec![Term::new(coefficient, energy, shift)])
    }

    /// `T^energy`.
    pub fn t(energy: BigRational) -> Self {
        Self::monomial(BigRational::one(), energy, 0)
    }

    /// `e^shift`.
    pub fn e(shift: i64) -> Self {
        Self::monomial(BigRational::one(), BigRational::zero(), shift)
    }

    pub fn from_terms(terms: Vec<Term>) -> Self {
        let mut terms = terms;
        terms.sort_by(Term::key_cmp);
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.key_cmp(&t) == Ordering::Equal => {
                    last.coefficient += t.coefficient;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coefficient.is_zero());
        Self { terms: merged }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.terms
            .windows(2)
            .all(|w| w[0].key_cmp(&w[1]) == Ordering::Less)
            && self.terms.iter().all(|t| !t.coefficient.is_zero())
    }

    /// Lowest energy present, i.e. the valuation.
    pub fn min_energy(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.energy)
    }

    /// `2n` when every term has the same `e`-exponent `n`.
    pub fn degree(&self) -> Result<i64> {
        let first = self.terms.first().ok_or(Error::DegreeOfZero)?;
        if self.terms.iter().any(|t| t.shift != first.shift) {
            return Err(Error::NotHomogeneous);
        }
        first.shift.checked_mul(2).ok_or(Error::Overflow)
    }

    /// Largest `q` with `self` in `F^{q step}`: `floor(min energy / step)`.
    pub fn filtration_level(&self, step: &FiltrationParam) -> Result<i64> {
        let min = self.min_energy().ok_or(Error::LevelOfZero)?;
        let q = (min / step.value()).floor();
        q.to_integer().try_into().map_err(|_| Error::Overflow)
    }

    /// Whether every energy is `>= bound`.
    pub fn in_energy_filtration(&self, bound: &BigRational) -> bool {
        self.terms.iter().all(|t| &t.energy >= bound)
    }

    /// The terms with `q s <= energy < (q+1) s`; a representative of the class
    /// of `self` in `F^q / F^{q+1}` once the lower bands vanish.
    pub fn graded_piece(&self, q: i64, step: &FiltrationParam) -> Self {
        let lo = step.value() * BigRational::from_integer(BigInt::from(q));
        let hi = &lo + step.value();
        Self {
            terms: self
                .terms
                .iter()
                .filter(|t| t.energy >= lo && t.energy < hi)
                .cloned()
                .collect(),
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                out.push(Term::new(
                    &a.coefficient * &b.coefficient,
                    &a.energy + &b.energy,
                    a.shift + b.shift,
                ));
            }
        }
        Self::from_terms(out)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&rhs.terms).cloned().collect())
    }
}

pub fn add(x: &NovikovElement, y: &NovikovElement) -> NovikovElement {
    x.add_ref(y)
}

pub fn mul(x: &NovikovElement, y: &NovikovElement) -> NovikovElement {
    x.mul_ref(y)
}

pub fn degree(x: &NovikovElement) -> Result<i64> {
    x.degree()
}

pub fn filtration_level(x: &NovikovElement, p: &FiltrationParam) -> Result<i64> {
    x.filtration_level(p)
}

pub fn graded_piece(x: &NovikovElement, q: i64, p: &FiltrationParam) -> NovikovElement {
    x.graded_piece(q, p)
}

impl Add for &NovikovElement {
    type Output = NovikovElement;
    fn add(self, rhs: Self) -> NovikovElement {
        self.add_ref(rhs)
    }
}

impl Add for NovikovElement {
    type Output = NovikovElement;
    fn add(self, rhs: Self) -> NovikovElement {
        self.add_ref(&rhs)
    }
}

impl Mul for &NovikovElement {
    type Output = NovikovElement;
    fn mul(self, rhs: Self) -> NovikovElement {
        self.mul_ref(rhs)
    }
}

impl Mul for NovikovElement {
    type Output = NovikovElement;
    fn mul(self, rhs: Self) -> NovikovElement {
        self.mul_ref(&rhs)
    }
}

impl Neg for &NovikovElement {
    type Output = NovikovElement;
    fn neg(self) -> NovikovElement {
        NovikovElement {
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(-&t.coefficient, t.energy.clone(), t.shift))
                .collect(),
        }
    }
}

impl Sub for &NovikovElement {
    type Output = NovikovElement;
    fn sub(self, rhs: Self) -> NovikovElement {
        self.add_ref(&-rhs)
    }
}

impl fmt::Display for NovikovElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} T^({}) e^{}", t.coefficient, t.energy, t.shift)?;
        }
        Ok(())
    }
}

/// Formats a rational as `p/q`, or `p` when the denominator is 1.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q` or a finite decimal like `1.25`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().ok()?;
        let mut numer = int_part.abs() * &scale + frac_part;
        if negative {
            numer = -numer;
        }
        return Some(BigRational::new(numer, scale));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// Filtration step `lambda* > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiltrationParam(BigRational);

impl FiltrationParam {
    pub fn new(step: BigRational) -> Result<Self> {
        if !step.is_positive() {
            return Err(Error::NonPositiveFiltrationStep(rational_to_string(&step)));
        }
        Ok(Self(step))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::NonPositiveFiltrationStep(format!("{numer}/0")));
        }
        Self::new(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl Default for FiltrationParam {
    fn default() -> Self {
        Self(BigRational::one())
    }
}

impl fmt::Display for FiltrationParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational_to_string(&self.0))
    }
}

impl Serialize for FiltrationParam {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for FiltrationParam {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let r = parse_rational(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("not a rational: {s:?}")))?;
        FiltrationParam::new(r).map_err(serde::de::Error::custom)
    }
}

/// A free graded module over the Novikov ring with `ranks[k]` generators in
/// degree `k`. Trailing zero ranks are dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(from = "Vec<u64>", into = "Vec<u64>")]
pub struct GradedModule {
    ranks: Vec<u64>,
}

impl GradedModule {
    pub fn new(mut ranks: Vec<u64>) -> Self {
        while ranks.last() == Some(&0) {
            ranks.pop();
        }
        Self { ranks }
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn total_rank(&self) -> u64 {
        self.ranks.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k.is_even() { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// Conventional name for the rank vectors of the point, circle and torus.
    pub fn topological_name(&self) -> Option<&'static str> {
        match self.ranks.as_slice() {
            [1] => Some("H*(pt) (x) Lambda"),
            [1, 1] => Some("H*(S^1) (x) Lambda"),
            [1, 2, 1] => Some("H*(T^2) (x) Lambda"),
            _ => None,
        }
    }
}

impl From<Vec<u64>> for GradedModule {
    fn from(v: Vec<u64>) -> Self {
        Self::new(v)
    }
}

impl From<GradedModule> for Vec<u64> {
    fn from(m: GradedModule) -> Self {
        m.ranks
    }
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks: Vec<String> = self.ranks.iter().map(u64::to_string).collect();
        write!(f, "({})", ranks.join(","))?;
        if let Some(name) = self.topological_name() {
            write!(f, " = {name}")?;
        }
        Ok(())
    }
}

/// Free modules are isomorphic iff their rank vectors agree.
pub fn module_iso(m1: &GradedModule, m2: &GradedModule) -> bool {
    m1.ranks == m2.ranks
}

pub fn euler_characteristic(m: &GradedModule) -> i64 {
    m.euler_characteristic()
}
