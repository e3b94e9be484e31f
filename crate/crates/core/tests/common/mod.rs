//! Independent reference arithmetic and shared strategies for the
//! integration tests. Nothing here calls into the library's linear algebra.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;

pub type Mat = Vec<Vec<i128>>;

pub const CASES: u32 = 256;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            for j in 0..m {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn transpose(a: &Mat) -> Mat {
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j]).collect())
        .collect()
}

/// Gram matrix of the intersection form, `<A_i, B_i> = 1`.
pub fn form(genus: usize) -> Mat {
    let mut j = vec![vec![0i128; 2 * genus]; 2 * genus];
    for i in 0..genus {
        j[2 * i][2 * i + 1] = 1;
        j[2 * i + 1][2 * i] = -1;
    }
    j
}

pub fn pairing(x: &[i128], y: &[i128]) -> i128 {
    let j = form(x.len() / 2);
    let mut s = 0;
    for (a, row) in x.iter().zip(&j) {
        for (b, jv) in y.iter().zip(row) {
            s += a * jv * b;
        }
    }
    s
}

/// Matrix of `x -> x + sign <x, c> c`, built column by column.
pub fn twist(c: &[i128], sign: i128) -> Mat {
    let n = c.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![0i128; n];
        e[j] = 1;
        let t = pairing(&e, c);
        cols.push((0..n).map(|i| e[i] + sign * t * c[i]).collect::<Vec<_>>());
    }
    transpose(&cols)
}

pub fn to_mat(rows: Vec<Vec<i64>>) -> Mat {
    rows.into_iter()
        .map(|r| r.into_iter().map(i128::from).collect())
        .collect()
}

pub fn apply(m: &Mat, v: &[i128]) -> Vec<i128> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Smallest `k` in `1..=bound` with `m^k = I`, in arbitrary precision.
pub fn brute_order(m: &Mat, bound: u64) -> Option<u64> {
    let n = m.len();
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let id: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(i128::from(i == j))).collect())
        .collect();
    let mut p = big.clone();
    for k in 1..=bound {
        if p == id {
            return Some(k);
        }
        p = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|l| &p[i][l] * &big[l][j]).sum())
                    .collect()
            })
            .collect();
    }
    None
}

/// All `(k, sign)` with `m^k c0 = sign c1`, `0 <= k <= bound`.
pub fn brute_orbits(m: &Mat, c0: &[i128], c1: &[i128], bound: u64) -> Vec<(u64, i8)> {
    let neg: Vec<i128> = c1.iter().map(|x| -x).collect();
    let mut v = c0.to_vec();
    let mut out = Vec::new();
    for k in 0..=bound {
        if v == c1 {
            out.push((k, 1));
        }
        if v == neg {
            out.push((k, -1));
        }
        v = apply(m, &v);
    }
    out.sort();
    out
}

/// Coefficients `[c0, c1, ..., cn]` of `det(lambda I - m)` by cofactor
/// expansion over exact rationals-free integer arithmetic (small `n` only).
pub fn char_poly(m: &Mat) -> Vec<i128> {
    let n = m.len();
    // entries of lambda I - m as polynomials in lambda
    let entries: Vec<Vec<Vec<i128>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        vec![-m[i][j], 1]
                    } else {
                        vec![-m[i][j]]
                    }
                })
                .collect()
        })
        .collect();
    poly_det(&entries)
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &mut Vec<i128>, b: &[i128], sign: i128) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += sign * y;
    }
}

fn poly_det(m: &[Vec<Vec<i128>>]) -> Vec<i128> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = vec![0];
    for j in 0..n {
        let minor: Vec<Vec<Vec<i128>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = poly_mul(&m[0][j], &poly_det(&minor));
        poly_add(&mut acc, &term, if j % 2 == 0 { 1 } else { -1 });
    }
    while acc.len() > 1 && *acc.last().unwrap() == 0 {
        acc.pop();
    }
    acc
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    let g = gcd(a as i128, b as i128) as u64;
    a / g * b
}

pub fn curve(genus: usize, range: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-range..=range, 2 * genus)
}

pub fn primitive_curve(genus: usize, range: i64) -> impl Strategy<Value = Vec<i64>> {
    curve(genus, range).prop_filter("primitive", |v| {
        v.iter().fold(0i128, |g, &x| gcd(g, x as i128)) == 1
    })
}

/// A genus and a word of signed twists on that surface.
pub fn twist_word(
    max_genus: usize,
    max_len: usize,
) -> impl Strategy<Value = (usize, Vec<(Vec<i64>, i64)>)> {
    (1..=max_genus).prop_flat_map(move |g| {
        (
            Just(g),
            proptest::collection::vec(
                (curve(g, 2), prop_oneof![Just(1i64), Just(-1i64)]),
                0..=max_len,
            ),
        )
    })
}

pub fn words_to_mat(genus: usize, word: &[(Vec<i64>, i64)]) -> Mat {
    let mut m = identity(2 * genus);
    for (c, s) in word {
        let c: Vec<i128> = c.iter().map(|&x| i128::from(x)).collect();
        m = mat_mul(&twist(&c, i128::from(*s)), &m);
    }
    m
}

pub const TREFOIL_MERIDIAN_SPEC: &str = include_str!("../../specs/trefoil_meridian.spec");
pub const TREFOIL_INTERIOR_SPEC: &str = include_str!("../../specs/trefoil_interior.spec");
pub mod novikov_gen;
pub mod specgen;
