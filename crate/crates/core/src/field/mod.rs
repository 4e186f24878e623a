//! Exact arithmetic in a tower `GF(p) ⊂ GF(q) ⊂ GF(q²) ⊂ GF(q⁴) ⊂ ...`.
//!
//! Every level is built as a vector space over the level below it, and an
//! element is identified by the integer whose base-`|lower level|` digits are
//! its coordinates (constant coordinate least significant). With that
//! encoding the embedding of a lower level into the next one is the identity
//! on indices, so `GF(q^l)` is exactly the index range `0..q^l`. Subfield
//! membership and rationality over a level are therefore structural checks.
//!
//! Arithmetic on the top level uses exponent, logarithm and Zech tables.

pub mod poly;

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An element of the tower, stored as its canonical coordinate index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const NONE: u32 = u32::MAX;
const MAX_FIELD_SIZE: u64 = 1 << 21;

/// One extension step of the tower.
#[derive(Clone, Debug)]
pub struct Step {
    /// Name of the adjoined generator; `None` for the prime field.
    pub name: Option<char>,
    /// Degree over the previous step.
    pub degree: u32,
    /// Size of the previous step (the digit base).
    pub base_size: u32,
    /// Size of this step.
    pub size: u32,
    /// Monic modulus over the previous step, low to high.
    pub modulus: Vec<Fe>,
}

/// Table-driven arithmetic for one finite field given by index encoding.
#[derive(Clone, Debug)]
struct Flat {
    size: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg: Vec<u32>,
}

impl Flat {
    fn prime(p: u32) -> Flat {
        let order = p - 1;
        let g = (2..p.max(3))
            .find(|&g| is_generator(order, |e| modpow(g as u64, e, p as u64) as u32 == 1))
            .unwrap_or(1);
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![NONE; p as usize];
        let mut cur = 1u64;
        for i in 0..order {
            exp[i as usize] = cur as u32;
            exp[(i + order) as usize] = cur as u32;
            log[cur as usize] = i;
            cur = cur * g as u64 % p as u64;
        }
        let zech = (0..order)
            .map(|k| {
                let v = (exp[k as usize] + 1) % p;
                if v == 0 {
                    NONE
                } else {
                    log[v as usize]
                }
            })
            .collect();
        let neg = (0..p).map(|a| (p - a) % p).collect();
        Flat { size: p, order, exp, log, zech, neg }
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let d = if lb >= la { lb - la } else { lb + self.order - la };
        let z = self.zech[d as usize];
        if z == NONE {
            0
        } else {
            self.exp[(la + z) as usize]
        }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }
}

fn is_generator(order: u32, is_one: impl Fn(u64) -> bool) -> bool {
    prime_factors(order as u64)
        .into_iter()
        .all(|r| !is_one(order as u64 / r))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Polynomial arithmetic over a `Flat` field on digit vectors, used only
/// while building the next level.
struct DigitRing<'a> {
    base: &'a Flat,
    modulus: &'a [u32],
}

impl DigitRing<'_> {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn digits(&self, mut idx: u64) -> Vec<u32> {
        let s = self.base.size as u64;
        (0..self.degree())
            .map(|_| {
                let d = (idx % s) as u32;
                idx /= s;
                d
            })
            .collect()
    }

    fn index(&self, digits: &[u32]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.base.size as u64 + d as u64)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let da = self.digits(a);
        let db = self.digits(b);
        let d = self.degree();
        let mut t = vec![0u32; 2 * d - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                t[i + j] = self.base.add(t[i + j], self.base.mul(x, y));
            }
        }
        for i in (d..t.len()).rev() {
            let c = t[i];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let sub = self.base.mul(c, self.modulus[j]);
                t[i - d + j] = self.base.sub(t[i - d + j], sub);
            }
            t[i] = 0;
        }
        self.index(&t[..d])
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }
}

/// Remainder of a monic-divisor division over `base`; true if zero.
fn divides(base: &Flat, divisor: &[u32], dividend: &[u32]) -> bool {
    let mut r = dividend.to_vec();
    let dd = divisor.len() - 1;
    for i in (dd..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for j in 0..=dd {
            r[i - dd + j] = base.sub(r[i - dd + j], base.mul(c, divisor[j]));
        }
    }
    r[..dd].iter().all(|&c| c == 0)
}

fn is_irreducible(base: &Flat, monic: &[u32]) -> bool {
    let d = monic.len() - 1;
    let s = base.size as u64;
    for k in 1..=d / 2 {
        for n in 0..s.pow(k as u32) {
            let mut f: Vec<u32> = Vec::with_capacity(k + 1);
            let mut m = n;
            for _ in 0..k {
                f.push((m % s) as u32);
                m /= s;
            }
            f.push(1);
            if divides(base, &f, monic) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least irreducible `x^d - r(x)`, ordering `r` by its
/// coefficient vector with the highest coefficient most significant.
fn least_irreducible(base: &Flat, d: u32) -> Vec<u32> {
    let s = base.size as u64;
    (0..s.pow(d))
        .map(|n| {
            let mut m = n;
            let mut poly: Vec<u32> = (0..d)
                .map(|_| {
                    let r = (m % s) as u32;
                    m /= s;
                    base.neg[r as usize]
                })
                .collect();
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(base, poly))
        .expect("an irreducible polynomial of every degree exists")
}

fn extend(base: &Flat, d: u32) -> (Vec<u32>, Flat) {
    let modulus = least_irreducible(base, d);
    let ring = DigitRing { base, modulus: &modulus };
    let size64 = (base.size as u64).pow(d);
    let size = size64 as u32;
    let order = size - 1;
    let g = (2..size64)
        .find(|&g| is_generator(order, |e| ring.pow(g, e) == 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![NONE; size as usize];
    let mut cur = 1u64;
    for i in 0..order {
        exp[i as usize] = cur as u32;
        exp[(i + order) as usize] = cur as u32;
        log[cur as usize] = i;
        cur = ring.mul(cur, g);
    }
    let s = base.size;
    let zech = (0..order)
        .map(|k| {
            let idx = exp[k as usize];
            let d0 = idx % s;
            let nidx = idx - d0 + base.add(d0, 1);
            if nidx == 0 {
                NONE
            } else {
                log[nidx as usize]
            }
        })
        .collect();
    let half = order / 2;
    let neg = (0..size)
        .map(|a| if a == 0 { 0 } else { exp[(log[a as usize] + half) as usize] })
        .collect();
    (modulus, Flat { size, order, exp, log, zech, neg })
}

/// The field tower `GF(p) ⊂ GF(q) ⊂ GF(q²) ⊂ ... ⊂ GF(q^m)`.
///
/// Immutable after construction; share it by reference across workers.
#[derive(Clone, Debug)]
pub struct Tower {
    p: u32,
    n: u32,
    q: u32,
    ext: u32,
    steps: Vec<Step>,
    top: Flat,
}

const STEP_NAMES: [char; 5] = ['u', 'v', 'w', 'r', 's'];

impl Tower {
    /// Builds the tower for `q = p^n` up to `GF(q^m)`, `m` a power of two.
    pub fn new(p: u32, n: u32, m: u32) -> Result<Tower> {
        if p == 2 {
            return Err(Error::EvenCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q64 = (p as u64).checked_pow(n).ok_or(Error::BadQ(u64::MAX))?;
        if n == 0 || q64 < 5 {
            return Err(Error::BadQ(q64));
        }
        if m == 0 || !m.is_power_of_two() {
            return Err(Error::UnsupportedLevel(m));
        }
        let total = q64.checked_pow(m).unwrap_or(u64::MAX);
        if total > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(total));
        }

        let mut steps = vec![Step {
            name: None,
            degree: 1,
            base_size: 1,
            size: p,
            modulus: vec![],
        }];
        let mut cur = Flat::prime(p);
        let mut degrees = Vec::new();
        if n > 1 {
            degrees.push(('a', n));
        }
        let mut lvl = 1;
        let mut names = STEP_NAMES.iter();
        while lvl < m {
            degrees.push((*names.next().ok_or(Error::UnsupportedLevel(m))?, 2));
            lvl *= 2;
        }
        for (name, d) in degrees {
            let (modulus, next) = extend(&cur, d);
            steps.push(Step {
                name: Some(name),
                degree: d,
                base_size: cur.size,
                size: next.size,
                modulus: modulus.into_iter().map(Fe).collect(),
            });
            cur = next;
        }
        Ok(Tower {
            p,
            n,
            q: q64 as u32,
            ext: m,
            steps,
            top: cur,
        })
    }

    /// Builds the tower for a prime power `q` (given as an integer).
    pub fn for_q(q: u64, m: u32) -> Result<Tower> {
        let (p, n) = prime_power(q).ok_or(Error::BadQ(q))?;
        if p == 2 {
            return Err(Error::BadQ(q));
        }
        Tower::new(p, n, m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Top level `m` (the working field is `GF(q^m)`).
    pub fn ext(&self) -> u32 {
        self.ext
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of elements of the top field.
    pub fn size(&self) -> u32 {
        self.top.size
    }

    /// Size of `GF(q^level)`.
    pub fn level_size(&self, level: u32) -> u32 {
        self.q.pow(level)
    }

    /// Elements of `GF(q^level)`, in index order. `level` must divide the top
    /// level and be a power of two.
    pub fn level_elements(&self, level: u32) -> impl Iterator<Item = Fe> + Clone {
        assert!(
            level <= self.ext && level.is_power_of_two(),
            "level {level} not in tower"
        );
        (0..self.level_size(level)).map(Fe)
    }

    /// Elements of the prime field.
    pub fn prime_elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.p).map(Fe)
    }

    /// Smallest tower level `1, 2, 4, ...` containing `a`.
    pub fn level_of(&self, a: Fe) -> u32 {
        let mut l = 1;
        while a.0 >= self.level_size(l) {
            l *= 2;
        }
        l
    }

    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.top.add(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.top.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.top.sub(a.0, b.0))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.top.mul(a.0, b.0))
    }

    #[inline]
    pub fn sqr(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        let l = self.top.log[a.index()];
        Some(Fe(self.top.exp[((self.top.order - l) % self.top.order) as usize]))
    }

    /// `a / b`; panics on `b = 0`, use [`Tower::inv`] when `b` may vanish.
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let ord = self.top.order as u64;
        let l = self.top.log[a.index()] as u64;
        Fe(self.top.exp[(l * (e % ord) % ord) as usize])
    }

    /// Discrete logarithm to the fixed primitive element; `None` for zero.
    pub fn log(&self, a: Fe) -> Option<u32> {
        (!a.is_zero()).then(|| self.top.log[a.index()])
    }

    /// `g^k` for the fixed primitive element `g` of the top field.
    pub fn exp(&self, k: u64) -> Fe {
        Fe(self.top.exp[(k % self.top.order as u64) as usize])
    }

    /// Order of the multiplicative group of the top field.
    pub fn group_order(&self) -> u32 {
        self.top.order
    }

    /// `a^(q^power)`.
    pub fn frobenius(&self, a: Fe, power: u32) -> Fe {
        if a.is_zero() {
            return a;
        }
        let ord = self.top.order as u64;
        let e = modpow(self.q as u64, power as u64, ord);
        let l = self.top.log[a.index()] as u64;
        Fe(self.top.exp[(l * e % ord) as usize])
    }

    /// `a ∈ GF(q^level)`, decided by `a^(q^level) = a`.
    pub fn is_in_subfield(&self, a: Fe, level: u32) -> bool {
        self.frobenius(a, level) == a
    }

    pub fn is_in_prime_field(&self, a: Fe) -> bool {
        a.0 < self.p
    }

    pub fn element_order(&self, a: Fe) -> Result<u64> {
        let l = self.log(a).ok_or(Error::ZeroOrder)? as u64;
        let ord = self.top.order as u64;
        Ok(ord / gcd(l, ord))
    }

    /// All solutions of `y^n = a` in the top field, sorted.
    pub fn nth_roots(&self, a: Fe, n: u64) -> Vec<Fe> {
        if a.is_zero() {
            return vec![Fe::ZERO];
        }
        let ord = self.top.order as u64;
        let g = gcd(n, ord);
        let la = self.top.log[a.index()] as u64;
        if la % g != 0 {
            return Vec::new();
        }
        let ord_g = ord / g;
        let k0 = if ord_g == 1 {
            0
        } else {
            (la / g) % ord_g * mod_inverse((n / g) % ord_g, ord_g) % ord_g
        };
        let mut out: Vec<Fe> = (0..g).map(|j| self.exp(k0 + j * ord_g)).collect();
        out.sort();
        out
    }

    /// Solutions of `y^n = a` lying in `GF(q^level)`.
    pub fn nth_roots_in(&self, a: Fe, n: u64, level: u32) -> Vec<Fe> {
        let bound = self.level_size(level);
        self.nth_roots(a, n).into_iter().filter(|r| r.0 < bound).collect()
    }

    /// Coordinates of `a` over the step below `step` (low to high).
    pub fn coords(&self, a: Fe, step: usize) -> Vec<Fe> {
        let st = &self.steps[step];
        let mut idx = a.0;
        (0..st.degree)
            .map(|_| {
                let d = idx % st.base_size;
                idx /= st.base_size;
                Fe(d)
            })
            .collect()
    }

    /// Value of the generator of `step` (`a`, `u`, `v`, ...).
    pub fn generator(&self, name: char) -> Option<Fe> {
        self.steps
            .iter()
            .find(|s| s.name == Some(name))
            .map(|s| Fe(s.base_size))
    }

    fn step_of(&self, a: Fe) -> usize {
        self.steps
            .iter()
            .position(|s| a.0 < s.size)
            .expect("element belongs to the tower")
    }

    /// Canonical string, e.g. `3`, `4*u + 2`, `(a + 1)*u`.
    pub fn elem_to_string(&self, a: Fe) -> String {
        self.elem_string_at(a, self.step_of(a))
    }

    fn elem_string_at(&self, a: Fe, step: usize) -> String {
        if step == 0 {
            return a.0.to_string();
        }
        let name = self.steps[step].name.unwrap_or('?');
        let coords = self.coords(a, step);
        let mut terms = Vec::new();
        for (i, &c) in coords.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => name.to_string(),
                _ => format!("{name}^{i}"),
            };
            let cs = self.elem_string_at(c, step - 1);
            terms.push(if mono.is_empty() {
                cs
            } else if c == Fe::ONE {
                mono
            } else if cs.contains(' ') {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Joins `coefficient * monomial` terms with signs; prime-field
    /// coefficients use the representative of least absolute value.
    pub fn signed_sum(&self, terms: &[(Fe, String)]) -> String {
        let mut out = String::new();
        for (c, mono) in terms.iter().filter(|(c, _)| !c.is_zero()) {
            let (neg, body) = if self.is_in_prime_field(*c) {
                let v = c.0;
                let (neg, mag) = if v > self.p / 2 { (true, self.p - v) } else { (false, v) };
                let body = match (mag, mono.is_empty()) {
                    (_, true) => mag.to_string(),
                    (1, false) => mono.clone(),
                    _ => format!("{mag}*{mono}"),
                };
                (neg, body)
            } else {
                let s = self.elem_to_string(*c);
                let s = if s.contains(' ') { format!("({s})") } else { s };
                (false, if mono.is_empty() { s } else { format!("{s}*{mono}") })
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Text form `p^n / modulus / modulus ...`.
    pub fn describe(&self) -> String {
        let mut s = format!("{}^{}", self.p, self.n);
        for step in &self.steps[1..] {
            let name = step.name.unwrap_or('?');
            let terms: Vec<(Fe, String)> = step
                .modulus
                .iter()
                .enumerate()
                .rev()
                .map(|(i, &c)| {
                    let mono = match i {
                        0 => String::new(),
                        1 => name.to_string(),
                        _ => format!("{name}^{i}"),
                    };
                    (c, mono)
                })
                .collect();
            let _ = write!(s, " / {}", self.signed_sum(&terms));
        }
        s
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    old_s.rem_euclid(m as i64) as u64
}

/// Decomposes `q = p^n` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut n = 0;
    let mut t = q;
    while t > 1 {
        t /= p;
        n += 1;
    }
    Some((p as u32, n))
}
