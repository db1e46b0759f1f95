//! Univariate polynomials over GF(p) and their factorization.
//!
//! Coefficients are stored lowest degree first with no trailing zeros.

use num_bigint::BigUint;
use rand::Rng;

use super::PrimeField;

pub type UPoly = Vec<u32>;

pub fn trim(mut a: UPoly) -> UPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn is_one(a: &[u32]) -> bool {
    a.len() == 1 && a[0] == 1
}

pub fn x_poly() -> UPoly {
    vec![0, 1]
}

pub fn add(f: &PrimeField, a: &[u32], b: &[u32]) -> UPoly {
    let n = a.len().max(b.len());
    let r = (0..n)
        .map(|i| f.add_u(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(r)
}

pub fn sub(f: &PrimeField, a: &[u32], b: &[u32]) -> UPoly {
    let n = a.len().max(b.len());
    let r = (0..n)
        .map(|i| f.sub_u(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(r)
}

pub fn scale(f: &PrimeField, a: &[u32], s: u32) -> UPoly {
    trim(a.iter().map(|&c| f.mul_u(c, s)).collect())
}

pub fn mul(f: &PrimeField, a: &[u32], b: &[u32]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = f.add_u(r[i + j], f.mul_u(x, y));
        }
    }
    trim(r)
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(f: &PrimeField, a: &[u32], b: &[u32]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = f.inv_u(b[db]).unwrap();
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul_u(r[dr], inv);
        q[dr - db] = c;
        for (j, &bj) in b.iter().enumerate().take(db + 1) {
            r[dr - db + j] = f.sub_u(r[dr - db + j], f.mul_u(c, bj));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &PrimeField, a: &[u32], b: &[u32]) -> UPoly {
    divrem(f, a, b).1
}

pub fn monic(f: &PrimeField, a: &[u32]) -> UPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(f, a, f.inv_u(a[d]).unwrap()),
    }
}

/// Monic gcd.
pub fn gcd(f: &PrimeField, a: &[u32], b: &[u32]) -> UPoly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn xgcd(f: &PrimeField, a: &[u32], b: &[u32]) -> (UPoly, UPoly, UPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u32], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u32]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let lead = match degree(&r0) {
        Some(d) => f.inv_u(r0[d]).unwrap(),
        None => 1,
    };
    (scale(f, &r0, lead), scale(f, &s0, lead), scale(f, &t0, lead))
}

pub fn derivative(f: &PrimeField, a: &[u32]) -> UPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| f.mul_u(c, f.from_int(i as i64))).collect())
}

pub fn powmod(f: &PrimeField, base: &[u32], e: &BigUint, m: &[u32]) -> UPoly {
    let mut result = rem(f, &[1], m);
    let b = rem(f, base, m);
    let bits = e.bits();
    for i in (0..bits).rev() {
        result = rem(f, &mul(f, &result, &result), m);
        if e.bit(i) {
            result = rem(f, &mul(f, &result, &b), m);
        }
    }
    result
}

pub fn eval(f: &PrimeField, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add_u(f.mul_u(acc, x), c))
}

/// Square-free decomposition of a monic polynomial: pairs `(g, e)` with the
/// `g` square-free, pairwise coprime and `a = prod g^e`.
pub fn squarefree(f: &PrimeField, a: &[u32]) -> Vec<(UPoly, usize)> {
    let p = f.modulus() as usize;
    let a = monic(f, a);
    let mut out = Vec::new();
    if degree(&a).unwrap_or(0) == 0 {
        return out;
    }
    let da = derivative(f, &a);
    let mut c = gcd(f, &a, &da);
    let mut w = divrem(f, &a, &c).0;
    let mut i = 1;
    while !is_one(&w) {
        let y = gcd(f, &w, &c);
        let fac = divrem(f, &w, &y).0;
        if !is_one(&fac) {
            out.push((fac, i));
        }
        w = y.clone();
        c = divrem(f, &c, &y).0;
        i += 1;
    }
    if !is_one(&c) {
        // c is a p-th power
        let root: UPoly = (0..=degree(&c).unwrap() / p).map(|k| c[k * p]).collect();
        for (g, e) in squarefree(f, &root) {
            out.push((g, e * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn distinct_degree(f: &PrimeField, a: &[u32]) -> Vec<(UPoly, usize)> {
    let p = BigUint::from(f.modulus());
    let mut rest = monic(f, a);
    let mut out = Vec::new();
    let mut h = x_poly();
    let mut i = 1;
    while degree(&rest).unwrap_or(0) >= 2 * i {
        h = powmod(f, &h, &p, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x_poly()));
        if !is_one(&g) {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((g, i));
        }
        i += 1;
    }
    if degree(&rest).unwrap_or(0) > 0 {
        let d = degree(&rest).unwrap();
        out.push((rest, d));
    }
    out
}

/// Splits a monic square-free product of irreducibles of degree `d`.
pub fn equal_degree<R: Rng>(f: &PrimeField, a: &[u32], d: usize, rng: &mut R) -> Vec<UPoly> {
    let n = degree(a).unwrap();
    if n == d {
        return vec![monic(f, a)];
    }
    let p = f.modulus();
    loop {
        let r: UPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if degree(&r).unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace of r from GF(2^d) down to GF(2)
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..d {
                t = rem(f, &mul(f, &t, &t), a);
                acc = add(f, &acc, &t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            sub(f, &powmod(f, &r, &e, a), &[1])
        };
        let g = gcd(f, a, &b);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = divrem(f, a, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &monic(f, &h), d, rng));
            return out;
        }
    }
}

/// Full factorization of a nonzero polynomial into monic irreducibles with
/// multiplicities, sorted by (degree, coefficients).
pub fn factor<R: Rng>(f: &PrimeField, a: &[u32], rng: &mut R) -> Vec<(UPoly, usize)> {
    let mut out = Vec::new();
    for (g, e) in squarefree(f, a) {
        for (h, d) in distinct_degree(f, &g) {
            for q in equal_degree(f, &h, d, rng) {
                out.push((q, e));
            }
        }
    }
    out.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
    out
}
