//! Concrete finite groups on dense element indices.
//!
//! Every group is stored as its right Cayley graph: `right[k][x]` is the
//! index of `x * g_k`. Element `0` is the identity. Products are read from a
//! precomputed table up to [`DENSE_TABLE_LIMIT`] elements and otherwise by
//! walking the breadth-first word of the right operand.

mod action;
mod classes;
mod series;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use num_integer::Integer;

use crate::error::{Error, Result};

pub use action::{Action, Quotient};
pub use classes::ClassPartition;
pub use series::SeriesReport;
pub use subgroup::{Embedded, Subgroup};

/// Default cap on the number of elements produced by a closure.
pub const DEFAULT_CLOSURE_CAP: usize = 20_000;

/// Groups up to this order keep a full multiplication table.
pub const DENSE_TABLE_LIMIT: usize = 4096;

#[derive(Clone, Debug)]
pub struct Group {
    order: usize,
    generators: Vec<u32>,
    right: Vec<Vec<u32>>,
    words: Vec<Box<[u8]>>,
    bfs: Vec<u32>,
    parent: Vec<(u32, u8)>,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    exponent: u32,
    prime: Option<u32>,
}

/// Returns `p` when `n = p^k` with `k ≥ 1`.
pub fn prime_of_power(n: usize) -> Option<u32> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        p = n;
    }
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p as u32)
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Group {
    /// Builds a group from right-multiplication permutations of `0..n`.
    ///
    /// The permutations must be the right regular action of a group whose
    /// identity is labelled `0`; they must generate (act transitively).
    pub fn from_cayley(right: Vec<Vec<u32>>) -> Result<Group> {
        let n = right.first().map_or(1, |r| r.len());
        if right.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("generator tables differ in length".into()));
        }
        if right.len() > u8::MAX as usize {
            return Err(Error::InvalidInput("too many generators".into()));
        }
        for (k, r) in right.iter().enumerate() {
            let mut seen = vec![false; n];
            for &y in r {
                if y as usize >= n || std::mem::replace(&mut seen[y as usize], true) {
                    return Err(Error::NonInvertible {
                        index: k,
                        reason: "right multiplication is not a bijection".into(),
                    });
                }
            }
        }
        let mut parent = vec![(u32::MAX, 0u8); n];
        let mut words: Vec<Box<[u8]>> = vec![Box::new([]); n];
        let mut bfs = Vec::with_capacity(n);
        let mut queue = VecDeque::from([0u32]);
        parent[0] = (0, 0);
        while let Some(x) = queue.pop_front() {
            bfs.push(x);
            for (k, r) in right.iter().enumerate() {
                let y = r[x as usize];
                if parent[y as usize].0 == u32::MAX {
                    parent[y as usize] = (x, k as u8);
                    let mut w = words[x as usize].to_vec();
                    w.push(k as u8);
                    words[y as usize] = w.into_boxed_slice();
                    queue.push_back(y);
                }
            }
        }
        if bfs.len() != n {
            return Err(Error::InvalidInput(format!(
                "generators reach {} of {n} elements",
                bfs.len()
            )));
        }
        let generators = right.iter().map(|r| r[0]).collect();
        let mut g = Group {
            order: n,
            generators,
            right,
            words,
            bfs,
            parent,
            table: None,
            inverses: Vec::new(),
            orders: Vec::new(),
            exponent: 1,
            prime: prime_of_power(n),
        };
        if n <= DENSE_TABLE_LIMIT {
            g.table = Some(g.build_table());
        }
        g.inverses = g.compute_inverses()?;
        let factors = prime_factors(n);
        g.orders = (0..n as u32).map(|x| g.compute_order(x, &factors)).collect();
        g.exponent = g.orders.iter().fold(1u32, |l, &o| l.lcm(&o));
        Ok(g)
    }

    fn build_table(&self) -> Vec<u32> {
        let n = self.order;
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut t[a * n..(a + 1) * n];
            row[0] = a as u32;
            for &b in &self.bfs[1..] {
                let (p, k) = self.parent[b as usize];
                row[b as usize] = self.right[k as usize][row[p as usize] as usize];
            }
        }
        t
    }

    fn compute_inverses(&self) -> Result<Vec<u32>> {
        let n = self.order;
        let inv_right: Vec<Vec<u32>> = self
            .right
            .iter()
            .map(|r| {
                let mut inv = vec![0u32; n];
                for (x, &y) in r.iter().enumerate() {
                    inv[y as usize] = x as u32;
                }
                inv
            })
            .collect();
        let mut out = vec![0u32; n];
        for x in 0..n {
            let mut y = 0u32;
            for &k in self.words[x].iter().rev() {
                y = inv_right[k as usize][y as usize];
            }
            if self.mul(x as u32, y) != 0 {
                return Err(Error::Internal(format!("element {x} has no two-sided inverse")));
            }
            out[x] = y;
        }
        Ok(out)
    }

    fn pow_raw(&self, a: u32, mut k: u64) -> u32 {
        let (mut base, mut acc) = (a, 0u32);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    fn compute_order(&self, x: u32, factors: &[usize]) -> u32 {
        let mut o = self.order;
        for &p in factors {
            while o.is_multiple_of(p) && self.pow_raw(x, (o / p) as u64) == 0 {
                o /= p;
            }
        }
        o as u32
    }

    /// The trivial group.
    pub fn trivial() -> Group {
        Group::from_cayley(Vec::new()).expect("trivial group")
    }

    /// Cyclic group of order `n`, generated by element `1`.
    pub fn cyclic(n: usize) -> Group {
        assert!(n >= 1);
        if n == 1 {
            return Group::trivial();
        }
        let perm = (0..n).map(|x| ((x + 1) % n) as u32).collect();
        Group::from_cayley(vec![perm]).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// `right_action(k)[x]` is `x * g_k`.
    pub fn right_action(&self, k: usize) -> &[u32] {
        &self.right[k]
    }

    pub fn num_generators(&self) -> usize {
        self.right.len()
    }

    /// Elements in breadth-first order from the identity.
    pub fn bfs_order(&self) -> &[u32] {
        &self.bfs
    }

    /// Generator-index word `w` with `x = g_{w0} g_{w1} ...`.
    pub fn word(&self, x: u32) -> &[u8] {
        &self.words[x as usize]
    }

    /// Breadth-first predecessor: `x = parent * g_k`.
    pub fn parent(&self, x: u32) -> (u32, usize) {
        let (p, k) = self.parent[x as usize];
        (p, k as usize)
    }

    pub fn has_dense_table(&self) -> bool {
        self.table.is_some()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.order + b as usize],
            None => self.words[b as usize]
                .iter()
                .fold(a, |acc, &k| self.right[k as usize][acc as usize]),
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn pow(&self, a: u32, k: i64) -> u32 {
        let o = self.orders[a as usize] as i64;
        self.pow_raw(a, k.rem_euclid(o) as u64)
    }

    /// `g^{-1} x g`.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[x, g] = x^{-1} g^{-1} x g`.
    #[inline]
    pub fn commutator(&self, x: u32, g: u32) -> u32 {
        self.mul(self.inv(x), self.conj(x, g))
    }

    pub fn element_order(&self, x: u32) -> u32 {
        self.orders[x as usize]
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The prime `p` when the order is `p^n` with `n ≥ 1`.
    pub fn prime(&self) -> Option<u32> {
        self.prime
    }

    /// `n` with `|G| = p^n`, for p-groups.
    pub fn prime_exponent(&self) -> Option<u32> {
        let p = self.prime? as usize;
        let mut m = self.order;
        let mut e = 0;
        while m > 1 {
            m /= p;
            e += 1;
        }
        Some(e)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, &a)| {
            self.generators[i + 1..]
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Checks associativity on all triples `(a, b, g_k)`, which implies full
    /// associativity by induction on word length.
    pub fn check_associative(&self) -> bool {
        let n = self.order as u32;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                self.right
                    .iter()
                    .all(|r| r[ab as usize] == self.mul(a, r[b as usize]))
            })
        })
    }

    /// Builds a group as the closure of `gens` under `compose`, with elements
    /// numbered in breadth-first order. Returns the group and the element list.
    pub fn closure<T, F>(identity: T, gens: &[T], compose: F, cap: usize) -> Result<(Group, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, u32> = HashMap::from([(identity, 0)]);
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut next = 0;
        while next < elements.len() {
            let x = elements[next].clone();
            for (k, g) in gens.iter().enumerate() {
                let y = compose(&x, g);
                let id = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::CapExceeded { cap });
                        }
                        let i = elements.len() as u32;
                        index.insert(y.clone(), i);
                        elements.push(y);
                        i
                    }
                };
                right[k].push(id);
            }
            next += 1;
        }
        // drop generators equal to the identity or to earlier generators
        let mut kept: Vec<Vec<u32>> = Vec::new();
        for r in right {
            if r[0] != 0 && !kept.iter().any(|k| k[0] == r[0]) {
                kept.push(r);
            }
        }
        let group = Group::from_cayley(kept).map_err(|e| match e {
            Error::NonInvertible { index, .. } => Error::NonInvertible {
                index,
                reason: "closure is not a group".into(),
            },
            other => other,
        })?;
        Ok((group, elements))
    }

    /// Closure of permutations of `0..degree`; `gens[i][j]` is the image of `j`.
    /// Products compose left to right: `(x * y)(j) = y(x(j))`.
    pub fn from_permutations(degree: usize, gens: &[Vec<u32>], cap: usize) -> Result<(Group, Vec<Vec<u32>>)> {
        for (k, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree
                || g.iter()
                    .any(|&y| y as usize >= degree || std::mem::replace(&mut seen[y as usize], true))
            {
                return Err(Error::NonInvertible {
                    index: k,
                    reason: "not a permutation".into(),
                });
            }
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        Group::closure(
            identity,
            gens,
            |x, y| x.iter().map(|&i| y[i as usize]).collect(),
            cap,
        )
    }

    /// Direct product `A × B` with element `(a, b)` at index `a + |A| b`.
    pub fn direct_product(a: &Group, b: &Group) -> Group {
        let act = Action::trivial(b.clone(), a.clone());
        Group::semidirect_product(a, b, &act).expect("trivial action is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d16() -> Group {
        let r = vec![1, 2, 3, 4, 5, 6, 7, 0];
        let s = vec![0, 7, 6, 5, 4, 3, 2, 1];
        Group::from_permutations(8, &[r, s], DEFAULT_CLOSURE_CAP).unwrap().0
    }

    #[test]
    fn identity_permutation_gives_trivial_group() {
        let (g, _) = Group::from_permutations(3, &[vec![0, 1, 2]], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn dihedral_closure() {
        let g = d16();
        assert_eq!(g.order(), 16);
        assert_eq!(g.exponent(), 8);
        assert_eq!(g.prime(), Some(2));
        assert!(g.check_associative());
        for x in 0..16 {
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
    }

    #[test]
    fn cap_and_bad_generators() {
        let r: Vec<u32> = (1..8).chain([0]).collect();
        assert_eq!(
            Group::from_permutations(8, &[r], 4).unwrap_err(),
            Error::CapExceeded { cap: 4 }
        );
        assert!(matches!(
            Group::from_permutations(3, &[vec![1, 1, 0]], 100),
            Err(Error::NonInvertible { index: 0, .. })
        ));
        // x -> 2x mod 4 is not invertible
        let res = Group::closure(1u32, &[2u32], |a, b| (a * b) % 4, 100);
        assert!(matches!(res, Err(Error::NonInvertible { .. })));
    }

    #[test]
    fn lazy_products_agree_with_table() {
        let g = Group::direct_product(&Group::cyclic(64), &Group::cyclic(65));
        assert!(!g.has_dense_table());
        let h = Group::cyclic(4160);
        assert_eq!(g.order(), h.order());
        assert_eq!(g.exponent(), 4160);
        let x = 65 + 64; // (1, 1)
        assert_eq!(g.element_order(x), 4160);
        assert_eq!(g.mul(g.inv(x), x), 0);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_of_power(512), Some(2));
        assert_eq!(prime_of_power(2187), Some(3));
        assert_eq!(prime_of_power(12), None);
        assert_eq!(prime_of_power(1), None);
        assert_eq!(prime_of_power(7), Some(7));
    }
}
