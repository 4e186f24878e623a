//! Dense univariate polynomials over the tower, coefficients low to high.

use super::{Fe, Tower};

pub type Poly = Vec<Fe>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(a: &[Fe]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn add(f: &Tower, a: &[Fe], b: &[Fe]) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                f.add(
                    a.get(i).copied().unwrap_or_default(),
                    b.get(i).copied().unwrap_or_default(),
                )
            })
            .collect(),
    )
}

pub fn sub(f: &Tower, a: &[Fe], b: &[Fe]) -> Poly {
    let nb: Poly = b.iter().map(|&c| f.neg(c)).collect();
    add(f, a, &nb)
}

pub fn scale(f: &Tower, a: &[Fe], s: Fe) -> Poly {
    trim(a.iter().map(|&c| f.mul(c, s)).collect())
}

pub fn mul(f: &Tower, a: &[Fe], b: &[Fe]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub fn pow(f: &Tower, a: &[Fe], mut e: u64) -> Poly {
    let mut result = vec![Fe::ONE];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mul(f, &result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    result
}

pub fn eval(f: &Tower, a: &[Fe], x: Fe) -> Fe {
    a.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Quotient and remainder; panics when `b` is zero.
pub fn divrem(f: &Tower, a: &[Fe], b: &[Fe]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quo = vec![Fe::ZERO; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        quo[dr - db] = c;
        for j in 0..=db {
            r[dr - db + j] = f.sub(r[dr - db + j], f.mul(c, b[j]));
        }
        r = trim(r);
    }
    (trim(quo), r)
}

pub fn monic(f: &Tower, a: &[Fe]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(f, &a[..=d], f.inv(a[d]).unwrap()),
    }
}

/// Monic greatest common divisor (zero if both are zero).
pub fn gcd(f: &Tower, a: &[Fe], b: &[Fe]) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Multiplicity of `r` as a root of the nonzero polynomial `a`.
pub fn root_multiplicity(f: &Tower, a: &[Fe], r: Fe) -> usize {
    let lin = [f.neg(r), Fe::ONE];
    let mut cur = trim(a.to_vec());
    let mut m = 0;
    while !cur.is_empty() {
        let (quo, rem) = divrem(f, &cur, &lin);
        if !rem.is_empty() {
            break;
        }
        cur = quo;
        m += 1;
    }
    m
}

/// Roots in the top field with multiplicities, sorted by root. Roots are
/// located by exhaustive evaluation.
pub fn roots(f: &Tower, a: &[Fe]) -> Vec<(Fe, usize)> {
    let a = trim(a.to_vec());
    match degree(&a) {
        None | Some(0) => Vec::new(),
        Some(1) => {
            let r = f.neg(f.div(a[0], a[1]));
            vec![(r, 1)]
        }
        _ => (0..f.size())
            .map(Fe)
            .filter(|&x| eval(f, &a, x).is_zero())
            .map(|r| (r, root_multiplicity(f, &a, r)))
            .collect(),
    }
}
