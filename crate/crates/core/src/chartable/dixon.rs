//! Burnside–Dixon: split the class algebra over a prime field, then lift
//! the eigenvectors back to exact cyclotomic character values.

use super::{CharError, ClassData};
use crate::cyclotomic::Cyclotomic;
use crate::group::FiniteGroup;
use crate::modular::{self, inv_mod, mul_mod, Embedding};

/// Class multiplication coefficients: `coeffs[j][k][l]` is the number of
/// pairs `(x, y)` in `C_j × C_k` with `xy = z` for a fixed `z` in `C_l`.
pub(crate) fn class_structure_constants(group: &FiniteGroup, classes: &ClassData) -> Vec<Vec<Vec<u64>>> {
    let r = classes.len();
    let mut coeffs = vec![vec![vec![0u64; r]; r]; r];
    for (j, cj) in classes.classes.iter().enumerate() {
        for (l, cl) in classes.classes.iter().enumerate() {
            let z = cl.representative;
            for &x in &cj.members {
                let y = group.mul(group.inv(x), z);
                coeffs[j][classes.class_of[y]][l] += 1;
            }
        }
    }
    coeffs
}

/// A subspace of `F_p^r` kept as a row-reduced basis with its pivots.
struct Space {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Space {
    fn new(mut basis: Vec<Vec<u64>>, p: u64) -> Self {
        let pivots = modular::row_reduce(&mut basis, p);
        Space { basis, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Splits the space into eigenspaces of `m` (which must leave it invariant).
    fn split(self, m: &[Vec<u64>], p: u64) -> Result<Vec<Space>, CharError> {
        let d = self.dim();
        let r = m.len();
        // images[i] = m * basis[i] as a column vector
        let images: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|b| {
                (0..r)
                    .map(|k| {
                        m[k].iter()
                            .zip(b)
                            .fold(0, |acc, (&a, &x)| (acc + mul_mod(a, x, p)) % p)
                    })
                    .collect()
            })
            .collect();
        // restricted[k][i]: coordinate k of m * basis[i]
        let restricted: Vec<Vec<u64>> = (0..d)
            .map(|k| (0..d).map(|i| images[i][self.pivots[k]]).collect())
            .collect();
        let eigenvalues = modular::roots(&modular::char_poly(&restricted, p), p);
        if eigenvalues.len() == 1 {
            return Ok(vec![self]);
        }
        let mut parts = Vec::new();
        let mut total = 0;
        for lambda in eigenvalues {
            let shifted: Vec<Vec<u64>> = restricted
                .iter()
                .enumerate()
                .map(|(k, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(i, &v)| if i == k { (v + p - lambda) % p } else { v })
                        .collect()
                })
                .collect();
            let coords = modular::null_space(&shifted, p);
            total += coords.len();
            let vectors = coords
                .iter()
                .map(|c| {
                    (0..r)
                        .map(|x| {
                            c.iter()
                                .zip(&self.basis)
                                .fold(0, |acc, (&ci, b)| (acc + mul_mod(ci, b[x], p)) % p)
                        })
                        .collect()
                })
                .collect();
            parts.push(Space::new(vectors, p));
        }
        if total != d {
            return Err(CharError::Internal(format!(
                "class matrix not diagonalizable over F_{p} ({total} of {d})"
            )));
        }
        Ok(parts)
    }
}

/// The prime used for a group of the given order and exponent: the least
/// `p ≡ 1 (mod e)` with `p > 2√|G|`.
pub fn dixon_prime(order: usize, exponent: usize) -> u64 {
    // b is the least integer with b >= 2 sqrt(order)
    let mut b = 0u64;
    while b * b < 4 * order as u64 {
        b += 1;
    }
    modular::prime_congruent_one(exponent as u64, b)
}

/// Irreducible characters in no particular order.
pub(crate) fn irreducible_characters(
    group: &FiniteGroup,
    classes: &ClassData,
    exponent: u32,
) -> Result<Vec<Vec<Cyclotomic>>, CharError> {
    let n = group.order() as u64;
    let r = classes.len();
    let p = dixon_prime(group.order(), exponent as usize);
    let emb = Embedding::new(exponent, p);

    let coeffs = class_structure_constants(group, classes);
    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![Space::new(identity, p)];
    for m in coeffs.iter().skip(1) {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(r);
        for s in spaces {
            if s.dim() == 1 {
                next.push(s);
            } else {
                next.extend(s.split(m, p)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(CharError::Internal(format!(
            "class algebra split into {} pieces, expected {r}",
            spaces.len()
        )));
    }

    let sizes: Vec<u64> = classes.classes.iter().map(|c| c.size() as u64).collect();
    let mut rows = Vec::with_capacity(r);
    for s in spaces {
        let v = &s.basis[0];
        if v[0] == 0 {
            return Err(CharError::Internal("central character vanishes at identity".into()));
        }
        let scale = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, scale, p)).collect();

        // |G| / χ(1)^2 = Σ_j ω_j ω_{j*} / |C_j|
        let s_sum = (0..r).fold(0, |acc, j| {
            let t = mul_mod(omega[j], omega[classes.inverse_class[j]], p);
            (acc + mul_mod(t, inv_mod(sizes[j] % p, p), p)) % p
        });
        let d_sq = mul_mod(n % p, inv_mod(s_sum, p), p);
        let degree = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|d| (d * d) % p == d_sq)
            .ok_or_else(|| CharError::Internal("no integer degree lifts".into()))?;

        let values_p: Vec<u64> = (0..r)
            .map(|j| mul_mod(mul_mod(degree % p, omega[j], p), inv_mod(sizes[j] % p, p), p))
            .collect();

        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            let m = classes.element_orders[j];
            let step = exponent as usize / m;
            let inv_m = inv_mod(m as u64 % p, p);
            let mut counts = vec![0i64; exponent as usize];
            for k in 0..m {
                // multiplicity of the eigenvalue ζ_m^k of a representing matrix
                let mut acc = 0;
                for l in 0..m {
                    let chi = values_p[classes.power_map[j][l]];
                    let root = emb.root(-((step * k * l) as i64));
                    acc = (acc + mul_mod(chi, root, p)) % p;
                }
                let mult = mul_mod(acc, inv_m, p);
                if mult > degree {
                    return Err(CharError::Internal(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {degree}"
                    )));
                }
                counts[k * step] = mult as i64;
            }
            row.push(Cyclotomic::from_power_counts(exponent, &counts));
        }
        rows.push(row);
    }
    Ok(rows)
}
