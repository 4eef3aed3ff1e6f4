//! Dixon–Schneider: central characters are the common eigenvectors of the
//! class multiplication matrices, found over `F_q` and lifted to exact
//! cyclotomic values through the power maps.

use num_integer::Integer;

use super::modular::{is_prime, Fq};
use super::Character;
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::group::{ClassPartition, Group};

/// Search limit for the Dixon modulus.
pub const DIXON_PRIME_BOUND: u64 = 1 << 31;

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Smallest prime `q ≡ 1 (mod e)` with `q > 2⌈√|G|⌉`.
pub fn dixon_prime(order: usize, exponent: u32) -> Result<u64> {
    let n = order as u64;
    let mut root = isqrt(n);
    if root * root < n {
        root += 1;
    }
    let e = exponent as u64;
    let mut q = (2 * root).div_ceil(e).max(1) * e + 1;
    while q < DIXON_PRIME_BOUND {
        if is_prime(q) {
            return Ok(q);
        }
        q += e;
    }
    Err(Error::NoDixonPrime(DIXON_PRIME_BOUND))
}

/// `M[m][l] = #{x ∈ C_j : x⁻¹ z_l ∈ C_m}` for fixed `z_l ∈ C_l`, so that
/// `M w = ω(K_j) w` for the central character values `w_l = ω(K_l)`.
fn class_matrix(g: &Group, cp: &ClassPartition, j: usize, f: Fq) -> Vec<Vec<u64>> {
    let k = cp.len();
    let mut m = vec![vec![0u64; k]; k];
    for l in 0..k {
        let z = cp.rep(l);
        for &x in cp.class(j) {
            let c = cp.class_of(g.mul(g.inv(x), z));
            m[c][l] += 1;
        }
    }
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v %= f.q;
        }
    }
    m
}

fn apply(f: Fq, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
        .collect()
}

/// A subspace as echelon rows with their pivot columns.
type Space = (Vec<Vec<u64>>, Vec<usize>);

/// Splits an invariant subspace (rows in reduced echelon form) into the
/// eigenspaces of `m`.
fn split(f: Fq, m: &[Vec<u64>], basis: Vec<Vec<u64>>, pivots: &[usize]) -> Result<Vec<Space>> {
    let d = basis.len();
    let images: Vec<Vec<u64>> = basis.iter().map(|b| apply(f, m, b)).collect();
    let c: Vec<Vec<u64>> = images
        .iter()
        .map(|y| pivots.iter().map(|&p| y[p]).collect())
        .collect();
    let poly = f.char_poly(&c);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in 0..f.q {
        if f.eval(&poly, lambda) != 0 {
            continue;
        }
        let mut shifted = c.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = f.sub(row[i], lambda);
        }
        let coords = f.left_nullspace(&shifted);
        total += coords.len();
        let mut rows: Vec<Vec<u64>> = coords
            .iter()
            .map(|u| {
                let mut v = vec![0; basis[0].len()];
                for (&ui, b) in u.iter().zip(&basis) {
                    if ui != 0 {
                        for (x, &y) in v.iter_mut().zip(b) {
                            *x = f.add(*x, f.mul(ui, y));
                        }
                    }
                }
                v
            })
            .collect();
        let piv = f.rref(&mut rows);
        out.push((rows, piv));
        if total == d {
            break;
        }
    }
    if total != d {
        return Err(Error::Internal("class matrix is not diagonalizable over F_q".into()));
    }
    Ok(out)
}

fn central_characters(g: &Group, cp: &ClassPartition, f: Fq) -> Result<Vec<Vec<u64>>> {
    let k = cp.len();
    let mut identity: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut r = vec![0; k];
            r[i] = 1;
            r
        })
        .collect();
    let piv = f.rref(&mut identity);
    let mut pending = vec![(identity, piv)];
    let mut done: Vec<Vec<u64>> = Vec::new();
    for j in 1..k {
        if pending.is_empty() {
            break;
        }
        let m = class_matrix(g, cp, j, f);
        let mut next = Vec::new();
        for (basis, piv) in pending {
            for (b, p) in split(f, &m, basis, &piv)? {
                if b.len() == 1 {
                    done.push(b.into_iter().next().expect("one row"));
                } else {
                    next.push((b, p));
                }
            }
        }
        pending = next;
    }
    for (b, _) in pending {
        if b.len() != 1 {
            return Err(Error::Internal("class matrices failed to separate characters".into()));
        }
        done.extend(b);
    }
    if done.len() != k {
        return Err(Error::Internal("wrong number of central characters".into()));
    }
    Ok(done)
}

/// Irreducible characters of `g` over conductor `exp(g)`, unsorted, with the
/// modulus used.
pub(crate) fn irreducible_characters(g: &Group, cp: &ClassPartition) -> Result<(Vec<Character>, u64)> {
    let n = g.order() as u64;
    let e = g.exponent();
    let q = dixon_prime(g.order(), e)?;
    let f = Fq { q };
    let k = cp.len();
    let z = f.primitive_root_of_order(e as u64);
    let inv_sizes: Vec<u64> = (0..k).map(|c| f.inv(cp.size(c) as u64 % q)).collect();
    // powers[c][t] = class of rep(c)^t for t < |rep(c)|
    let powers: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let x = cp.rep(c);
            let mut y = 0u32;
            (0..cp.rep_order(c))
                .map(|_| {
                    let cls = cp.class_of(y);
                    y = g.mul(y, x);
                    cls
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::with_capacity(k);
    for w in central_characters(g, cp, f)? {
        let w0 = f.inv(w[0]);
        let w: Vec<u64> = w.iter().map(|&x| f.mul(x, w0)).collect();
        let s = (0..k).fold(0, |acc, l| {
            f.add(acc, f.mul(f.mul(w[l], w[cp.inverse_class(l)]), inv_sizes[l]))
        });
        if s == 0 {
            return Err(Error::Internal("degenerate central character".into()));
        }
        let target = f.mul(n % q, f.inv(s));
        let degree = (1..=isqrt(n))
            .find(|&d| n.is_multiple_of(d) && f.mul(d, d) == target)
            .ok_or_else(|| Error::Internal("no admissible degree".into()))?;
        let modular: Vec<u64> = (0..k).map(|l| f.mul(f.mul(degree % q, w[l]), inv_sizes[l])).collect();
        rows.push(lift(cp, f, z, e, degree, &modular, &powers)?);
    }
    Ok((rows, q))
}

/// Recovers exact values from residues: at a class of order `o` the value
/// is `Σ_i m_i ζ_o^i` with eigenvalue multiplicities
/// `m_i = (1/o) Σ_t χ(x^t) ζ_o^{-it}`.
fn lift(
    cp: &ClassPartition,
    f: Fq,
    z: u64,
    e: u32,
    degree: u64,
    modular: &[u64],
    powers: &[Vec<usize>],
) -> Result<Character> {
    let k = cp.len();
    let mut values: Vec<Option<Cyclo>> = vec![None; k];
    for c in 0..k {
        if values[c].is_some() {
            continue;
        }
        let o = cp.rep_order(c);
        let step = e / o;
        let zo = f.pow(z, step as u64);
        let zo_inv = f.inv(zo);
        let inv_o = f.inv(o as u64 % f.q);
        let mut counts = vec![0i64; e as usize];
        let mut total = 0;
        for i in 0..o {
            let root = f.pow(zo_inv, i as u64);
            let mut acc = 0;
            let mut r = 1;
            for t in 0..o as usize {
                acc = f.add(acc, f.mul(modular[powers[c][t]], r));
                r = f.mul(r, root);
            }
            let m = f.mul(acc, inv_o);
            if m > degree {
                return Err(Error::Internal(format!("eigenvalue multiplicity lift failed at class {c}")));
            }
            counts[(i * step) as usize] = m as i64;
            total += m;
        }
        if total != degree {
            return Err(Error::Internal(format!("multiplicities at class {c} do not sum to the degree")));
        }
        let value = Cyclo::from_exponent_counts(e, &counts);
        for t in 1..o as i64 {
            if t.gcd(&(o as i64)) != 1 {
                continue;
            }
            let target = powers[c][t as usize];
            if values[target].is_none() {
                let mut s = t;
                while s.gcd(&(e as i64)) != 1 {
                    s += o as i64;
                }
                values[target] = Some(value.galois(s)?);
            }
        }
        values[c] = Some(value);
    }
    Ok(Character::new(values.into_iter().map(|v| v.expect("every class lifted")).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_admissible_prime() {
        assert_eq!(dixon_prime(27, 3).unwrap(), 13);
        assert_eq!(dixon_prime(16, 8).unwrap(), 17);
        assert_eq!(dixon_prime(729, 9).unwrap(), 73);
        assert_eq!(dixon_prime(1, 1).unwrap(), 3);
    }
}
