//! Prime-field arithmetic used by the character-table solver and by the
//! modular rank checks.

use crate::cyclotomic::Cyclotomic;

pub fn is_prime(n: u64) -> bool {
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

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no inverse mod {p}");
    pow_mod(a, p - 2, p)
}

#[inline]
pub fn from_i64(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// Least generator of the multiplicative group mod `p`.
pub fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > bound`.
pub fn prime_congruent_one(e: u64, bound: u64) -> u64 {
    let mut p = bound + 1;
    let r = (p - 1) % e;
    if r != 0 {
        p += e - r;
    }
    while !is_prime(p) {
        p += e;
    }
    p
}

/// A ring map `Z[ζ_e] -> F_p` fixed by the image of `ζ_e`.
#[derive(Debug, Clone, Copy)]
pub struct Embedding {
    pub p: u64,
    pub order: u32,
    /// A primitive `e`-th root of unity mod `p`.
    pub zeta: u64,
}

impl Embedding {
    /// Uses the primitive root `g^((p-1)/e)` for the least generator `g`.
    pub fn new(order: u32, p: u64) -> Self {
        assert!((p - 1).is_multiple_of(order as u64), "p must be 1 mod e");
        let zeta = pow_mod(primitive_root(p), (p - 1) / order as u64, p);
        Embedding { p, order, zeta }
    }

    /// A prime above `bound` admitting the embedding.
    pub fn above(order: u32, bound: u64) -> Self {
        Embedding::new(order, prime_congruent_one(order as u64, bound))
    }

    pub fn apply(&self, x: &Cyclotomic) -> u64 {
        assert_eq!(x.order(), self.order, "embedding order mismatch");
        let mut acc = 0;
        let mut zk = 1;
        for &c in x.coeffs() {
            acc = (acc + mul_mod(from_i64(c, self.p), zk, self.p)) % self.p;
            zk = mul_mod(zk, self.zeta, self.p);
        }
        acc
    }

    /// Image of `ζ_e^k`.
    pub fn root(&self, k: i64) -> u64 {
        pow_mod(self.zeta, k.rem_euclid(self.order as i64) as u64, self.p)
    }
}

/// Row-reduces `rows` in place over `F_p`; returns the pivot columns.
pub fn row_reduce(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..ncols {
                    let sub = mul_mod(f, rows[r][j], p);
                    rows[i][j] = (rows[i][j] + p - sub) % p;
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

pub fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    row_reduce(&mut rows, p).len()
}

/// Basis of the right null space `{v : A v = 0}` of a square or rectangular matrix.
pub fn null_space(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut rows = a.to_vec();
    let pivots = row_reduce(&mut rows, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - A)` (lowest degree first) via
/// reduction to upper Hessenberg form.
pub fn char_poly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = ((k + 1)..n).find(|&i| h[i][k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = inv_mod(h[k + 1][k], p);
        for i in (k + 2)..n {
            if h[i][k] == 0 {
                continue;
            }
            let f = mul_mod(h[i][k], inv, p);
            // row_i -= f * row_{k+1}
            for j in 0..n {
                let sub = mul_mod(f, h[k + 1][j], p);
                h[i][j] = (h[i][j] + p - sub) % p;
            }
            // col_{k+1} += f * col_i
            for row in h.iter_mut() {
                let add = mul_mod(f, row[i], p);
                row[k + 1] = (row[k + 1] + add) % p;
            }
        }
    }
    // Recurrence on leading principal minors of the Hessenberg matrix.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let mut next = vec![0u64; m + 1];
        let prev = &polys[m - 1];
        // (x - h[m-1][m-1]) * prev
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            let sub = mul_mod(h[m - 1][m - 1], c, p);
            next[i] = (next[i] + p - sub) % p;
        }
        let mut t = 1u64;
        for i in 1..m {
            t = mul_mod(t, h[m - i][m - i - 1], p);
            let coef = mul_mod(t, h[m - i - 1][m - 1], p);
            for (j, &c) in polys[m - i - 1].iter().enumerate() {
                let sub = mul_mod(coef, c, p);
                next[j] = (next[j] + p - sub) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

pub fn eval_poly(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// All roots of `poly` in `F_p`, ascending, by exhaustive evaluation.
pub fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p).filter(|&x| eval_poly(poly, x, p) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(prime_congruent_one(84, 25), 337);
        assert_eq!(prime_congruent_one(2, 2), 3);
        assert_eq!(prime_congruent_one(1, 2), 3);
        assert_eq!(primitive_root(7), 3);
    }

    #[test]
    fn char_poly_matches_determinant_expansion() {
        let p = 101;
        let a = vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]];
        let cp = char_poly(&a, p);
        // det(xI - A) = x^3 - 9x^2 + 24x - 18
        assert_eq!(cp, vec![p - 18, 24, p - 9, 1]);
        let b = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        // cyclic permutation matrix: x^3 - 1
        assert_eq!(char_poly(&b, p), vec![p - 1, 0, 0, 1]);
    }

    #[test]
    fn null_space_of_rank_one() {
        let p = 7;
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = null_space(&a, p);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot: u64 = a[0].iter().zip(&v).map(|(x, y)| x * y).sum::<u64>() % p;
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn embedding_is_ring_map() {
        let emb = Embedding::above(12, 50);
        let a = Cyclotomic::root(12, 5);
        let b = &Cyclotomic::root(12, 7) + &Cyclotomic::from_int(12, 3);
        assert_eq!(emb.apply(&(&a * &b)), mul_mod(emb.apply(&a), emb.apply(&b), emb.p));
        assert_eq!(emb.apply(&a), emb.root(5));
    }
}
