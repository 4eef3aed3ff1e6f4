//! Arithmetic and linear algebra over a prime field `F_q` with `q < 2^32`.

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fq {
    pub q: u64,
}

impl Fq {
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.q;
        a %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.q));
        self.pow(a, self.q - 2)
    }

    /// An element of multiplicative order exactly `e`; `e` must divide `q - 1`.
    pub fn primitive_root_of_order(self, e: u64) -> u64 {
        let primes = crate::group::prime_factors(e as usize);
        (2..self.q)
            .map(|a| self.pow(a, (self.q - 1) / e))
            .find(|&z| primes.iter().all(|&r| self.pow(z, e / r as u64) != 1))
            .expect("F_q^* is cyclic of order divisible by e")
    }

    /// Row-reduces in place and returns the pivot columns; zero rows are dropped.
    pub fn rref(self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, p);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{u : u M = 0}` for a square matrix `M`.
    pub fn left_nullspace(self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let d = m.len();
        // u M = 0  ⇔  M^T u^T = 0
        let mut t: Vec<Vec<u64>> = (0..d).map(|j| (0..d).map(|i| m[i][j]).collect()).collect();
        let pivots = self.rref(&mut t);
        let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut u = vec![0; d];
                u[f] = 1;
                for (row, &pc) in t.iter().zip(&pivots) {
                    u[pc] = self.sub(0, row[f]);
                }
                u
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI - M)`, coefficients from the
    /// constant term upward, via reduction to Hessenberg form.
    pub fn char_poly(self, m: &[Vec<u64>]) -> Vec<u64> {
        let n = m.len();
        let mut h: Vec<Vec<u64>> = m.to_vec();
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| h[i][c] != 0) else {
                continue;
            };
            if p != c + 1 {
                h.swap(p, c + 1);
                for row in h.iter_mut() {
                    row.swap(p, c + 1);
                }
            }
            let inv = self.inv(h[c + 1][c]);
            for i in c + 2..n {
                let f = self.mul(h[i][c], inv);
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = self.mul(f, h[c + 1][j]);
                    h[i][j] = self.sub(h[i][j], v);
                }
                for row in h.iter_mut() {
                    let v = self.mul(f, row[i]);
                    row[c + 1] = self.add(row[c + 1], v);
                }
            }
        }
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 1..=n {
            // p_k = (x - h[k-1][k-1]) p_{k-1} - Σ_i h[k-1-i][k-1] (Π sub-diagonal) p_{k-1-i}
            let prev = &polys[k - 1];
            let mut next = vec![0; k + 1];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.sub(next[i], self.mul(h[k - 1][k - 1], c));
            }
            let mut t = 1;
            for i in 1..k {
                t = self.mul(t, h[k - i][k - i - 1]);
                if t == 0 {
                    break;
                }
                let f = self.mul(t, h[k - 1 - i][k - 1]);
                for (j, &c) in polys[k - 1 - i].iter().enumerate() {
                    next[j] = self.sub(next[j], self.mul(f, c));
                }
            }
            polys.push(next);
        }
        polys.pop().expect("non-empty")
    }

    pub fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: Fq = Fq { q: 97 };

    fn det_brute(m: &[Vec<u64>]) -> u64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            let minor: Vec<Vec<u64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect())
                .collect();
            let term = F.mul(m[0][c], det_brute(&minor));
            total = if c % 2 == 0 { F.add(total, term) } else { F.sub(total, term) };
        }
        total
    }

    #[test]
    fn char_poly_matches_determinant() {
        let m: Vec<Vec<u64>> = vec![
            vec![3, 1, 4, 1],
            vec![5, 9, 2, 6],
            vec![5, 3, 5, 8],
            vec![9, 7, 9, 3],
        ];
        let p = F.char_poly(&m);
        assert_eq!(p.len(), 5);
        for x in [0u64, 1, 2, 17, 50] {
            let shifted: Vec<Vec<u64>> = (0..4)
                .map(|i| (0..4).map(|j| if i == j { F.sub(x, m[i][j]) } else { F.sub(0, m[i][j]) }).collect())
                .collect();
            assert_eq!(F.eval(&p, x), det_brute(&shifted));
        }
    }

    #[test]
    fn nullspace_and_roots() {
        let m = vec![vec![1, 2], vec![2, 4]];
        let ns = F.left_nullspace(&m);
        assert_eq!(ns.len(), 1);
        let u = &ns[0];
        assert_eq!(F.add(F.mul(u[0], 1), F.mul(u[1], 2)), 0);
        let z = F.primitive_root_of_order(16);
        assert_eq!(F.pow(z, 16), 1);
        assert_ne!(F.pow(z, 8), 1);
        assert!(is_prime(97) && !is_prime(91));
    }
}
