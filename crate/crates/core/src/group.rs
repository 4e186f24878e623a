//! Finite groups given by a Cayley table, and recognition of the few
//! isomorphism classes that occur as line stabilizers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::prime_factors;

#[derive(Clone, Debug, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupIsoClass {
    Cyclic { order: u64 },
    Dihedral { order: u64 },
    ElementaryAbelian { p: u64, rank: u32 },
    Abelian { invariant_factors: Vec<u64> },
    /// Order census `(element order, count)`; never compared as isomorphic
    /// to a recognized family.
    Unrecognized { order: u64, census: Vec<(u64, u64)> },
}

#[derive(PartialEq, Eq, Debug)]
enum Key {
    Abelian(Vec<u64>),
    Dihedral(u64),
    Other(u64, Vec<(u64, u64)>),
}

/// Invariant factors `d₁ | d₂ | …` (ascending, all > 1) of the abelian group
/// `∏ C_{n_i}`.
pub fn normalize_factors(cyclic_orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &n in cyclic_orders {
        let mut m = n;
        for p in prime_factors(n) {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            by_prime.entry(p).or_default().push(e);
        }
    }
    combine_primary(by_prime)
}

fn combine_primary(mut by_prime: BTreeMap<u64, Vec<u32>>) -> Vec<u64> {
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (p, exps) in by_prime.iter_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (i, &e) in exps.iter().enumerate() {
            out[i] *= p.pow(e);
        }
    }
    out.retain(|&d| d > 1);
    out.reverse();
    out
}

impl GroupIsoClass {
    pub fn order(&self) -> u64 {
        match self {
            GroupIsoClass::Cyclic { order } | GroupIsoClass::Dihedral { order } => *order,
            GroupIsoClass::ElementaryAbelian { p, rank } => p.pow(*rank),
            GroupIsoClass::Abelian { invariant_factors } => invariant_factors.iter().product(),
            GroupIsoClass::Unrecognized { order, .. } => *order,
        }
    }

    /// Canonical invariant factors when the class is abelian.
    pub fn invariant_factors(&self) -> Option<Vec<u64>> {
        match self {
            GroupIsoClass::Cyclic { order } => Some(normalize_factors(&[*order])),
            GroupIsoClass::Dihedral { order: 2 } => Some(vec![2]),
            GroupIsoClass::Dihedral { order: 4 } => Some(vec![2, 2]),
            GroupIsoClass::Dihedral { .. } => None,
            GroupIsoClass::ElementaryAbelian { p, rank } => Some(vec![*p; *rank as usize]),
            GroupIsoClass::Abelian { invariant_factors } => {
                Some(normalize_factors(invariant_factors))
            }
            GroupIsoClass::Unrecognized { .. } => None,
        }
    }

    fn key(&self) -> Key {
        if let Some(f) = self.invariant_factors() {
            return Key::Abelian(f);
        }
        match self {
            GroupIsoClass::Dihedral { order } => Key::Dihedral(*order),
            GroupIsoClass::Unrecognized { order, census } => Key::Other(*order, census.clone()),
            _ => unreachable!(),
        }
    }

    pub fn is_isomorphic(&self, other: &GroupIsoClass) -> bool {
        self.key() == other.key()
    }

    pub fn is_recognized(&self) -> bool {
        !matches!(self, GroupIsoClass::Unrecognized { .. })
    }
}

impl PartialEq for GroupIsoClass {
    fn eq(&self, other: &Self) -> bool {
        self.is_isomorphic(other)
    }
}

impl fmt::Display for GroupIsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupIsoClass::Cyclic { order } => write!(f, "C{order}"),
            GroupIsoClass::Dihedral { order } => write!(f, "D{order}"),
            GroupIsoClass::ElementaryAbelian { p, rank } => write!(f, "(C{p})^{rank}"),
            GroupIsoClass::Abelian { invariant_factors } => {
                let parts: Vec<String> =
                    invariant_factors.iter().map(|d| format!("C{d}")).collect();
                if parts.is_empty() {
                    write!(f, "C1")
                } else {
                    write!(f, "{}", parts.join(" x "))
                }
            }
            GroupIsoClass::Unrecognized { order, census } => {
                let parts: Vec<String> =
                    census.iter().map(|(o, c)| format!("{o}:{c}")).collect();
                write!(f, "unrecognized(order {order}; {})", parts.join(", "))
            }
        }
    }
}

/// Multiplication table of a finite subset closed under a group law.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    identity: usize,
}

impl CayleyTable {
    /// Builds the table; fails with `NotClosed` if a product leaves the set.
    /// The elements must come from an ambient group, so closure of a finite
    /// subset already makes it a subgroup.
    pub fn build<T, F>(elems: &[T], op: F) -> Result<CayleyTable>
    where
        T: Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let n = elems.len();
        if n == 0 {
            return Err(Error::NotClosed("empty set".into()));
        }
        let index: HashMap<&T, u32> = elems.iter().zip(0u32..).collect();
        if index.len() != n {
            return Err(Error::Precondition("duplicate elements".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for a in elems {
            for b in elems {
                match index.get(&op(a, b)) {
                    Some(&i) => mul.push(i),
                    None => return Err(Error::NotClosed("product outside the set".into())),
                }
            }
        }
        let identity = (0..n)
            .find(|&i| mul[i * n + i] as usize == i)
            .ok_or_else(|| Error::NotClosed("no identity".into()))?;
        Ok(CayleyTable { n, mul, identity })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut cur = a;
        let mut k = 1;
        while cur != self.identity {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted `(element order, count)`.
    pub fn census(&self) -> Vec<(u64, u64)> {
        let mut m: BTreeMap<u64, u64> = BTreeMap::new();
        for a in 0..self.n {
            *m.entry(self.element_order(a)).or_default() += 1;
        }
        m.into_iter().collect()
    }

    fn abelian_factors(&self, orders: &[u64]) -> Vec<u64> {
        let n = self.n as u64;
        let mut by_prime = BTreeMap::new();
        for p in prime_factors(n) {
            // s_i = log_p |{g : g^(p^i) = 1}|, and s_i - s_(i-1) counts the
            // cyclic p-factors of exponent at least i.
            let mut s_prev = 0u32;
            let mut exps: Vec<u32> = Vec::new();
            let mut i = 1;
            loop {
                let pi = p.pow(i);
                let cnt = orders.iter().filter(|&&o| pi % o == 0).count() as u64;
                let s = cnt.ilog(p);
                let at_least = s - s_prev;
                if at_least == 0 {
                    break;
                }
                if exps.len() < at_least as usize {
                    exps.resize(at_least as usize, 0);
                }
                for e in exps.iter_mut().take(at_least as usize) {
                    *e = i;
                }
                s_prev = s;
                i += 1;
            }
            by_prime.insert(p, exps);
        }
        combine_primary(by_prime)
    }

    pub fn identify(&self) -> GroupIsoClass {
        let n = self.n as u64;
        let orders: Vec<u64> = (0..self.n).map(|a| self.element_order(a)).collect();
        if self.is_abelian() {
            let f = self.abelian_factors(&orders);
            return match f.as_slice() {
                [] => GroupIsoClass::Cyclic { order: 1 },
                [d] => GroupIsoClass::Cyclic { order: *d },
                [d, ..] if prime_factors(*d) == [*d] && f.iter().all(|x| x == d) => {
                    GroupIsoClass::ElementaryAbelian { p: *d, rank: f.len() as u32 }
                }
                _ => GroupIsoClass::Abelian { invariant_factors: f },
            };
        }
        if n % 2 == 0 {
            if let Some(r) = (0..self.n).find(|&a| orders[a] == n / 2) {
                let mut rot = vec![false; self.n];
                let mut cur = self.identity;
                loop {
                    rot[cur] = true;
                    cur = self.mul(cur, r);
                    if cur == self.identity {
                        break;
                    }
                }
                if (0..self.n).all(|a| rot[a] || orders[a] == 2) {
                    return GroupIsoClass::Dihedral { order: n };
                }
            }
        }
        GroupIsoClass::Unrecognized { order: n, census: self.census() }
    }
}
