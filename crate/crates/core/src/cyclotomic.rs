//! Exact arithmetic in cyclotomic fields `Q(ζ_e)`.
//!
//! Elements are integer combinations of the power basis `1, ζ, ..., ζ^(φ(e)-1)`,
//! i.e. polynomials reduced modulo the `e`-th cyclotomic polynomial. The
//! reduced coefficient vector is canonical, so equality is coefficient
//! equality. Only algebraic integers are representable, which covers every
//! character value.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

/// Structure constants of `Q(ζ_e)`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    /// Coefficients of the monic `Φ_e`, lowest degree first.
    poly: Vec<i64>,
    /// Reduced coefficient vectors of `ζ^k` for `k` in `0..e`.
    powers: Vec<Vec<i64>>,
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<CyclotomicField>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `Φ_e` via `x^e - 1 = Π_{d | e} Φ_d`.
pub fn cyclotomic_polynomial(e: u32) -> Vec<i64> {
    assert!(e >= 1, "cyclotomic polynomial of order 0");
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in 1..e {
        if e.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Exact quotient of `num` by the monic `den`.
fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

impl CyclotomicField {
    pub fn get(order: u32) -> Arc<CyclotomicField> {
        assert!(order >= 1, "cyclotomic field of order 0");
        if let Some(f) = field_cache().read().expect("field cache").get(&order) {
            return f.clone();
        }
        let field = Arc::new(CyclotomicField::build(order));
        field_cache()
            .write()
            .expect("field cache")
            .entry(order)
            .or_insert(field)
            .clone()
    }

    fn build(order: u32) -> Self {
        let poly = cyclotomic_polynomial(order);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce the overflow term
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..phi {
                cur[i] -= top * poly[i];
            }
        }
        CyclotomicField { order, poly, powers }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(e)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        let phi = self.degree();
        for i in (phi..v.len()).rev() {
            let c = v[i];
            if c != 0 {
                for j in 0..phi {
                    v[i - phi + j] -= c * self.poly[j];
                }
            }
        }
        v.truncate(phi);
        v.resize(phi, 0);
        v
    }
}

/// An algebraic integer in `Q(ζ_e)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let field = CyclotomicField::get(order);
        let coeffs = vec![0; field.degree()];
        Cyclotomic { field, coeffs }
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        let mut z = Cyclotomic::zero(order);
        z.coeffs[0] = n;
        z
    }

    pub fn one(order: u32) -> Self {
        Cyclotomic::from_int(order, 1)
    }

    /// `ζ_e^k`.
    pub fn root(order: u32, k: i64) -> Self {
        let field = CyclotomicField::get(order);
        let k = k.rem_euclid(order as i64) as usize;
        let coeffs = field.powers[k].clone();
        Cyclotomic { field, coeffs }
    }

    /// `Σ counts[k] ζ_e^k` over the full power list.
    pub fn from_power_counts(order: u32, counts: &[i64]) -> Self {
        let field = CyclotomicField::get(order);
        let mut coeffs = vec![0; field.degree()];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                let p = &field.powers[k % order as usize];
                for (dst, &src) in coeffs.iter_mut().zip(p) {
                    *dst += c * src;
                }
            }
        }
        Cyclotomic { field, coeffs }
    }

    /// Builds an element from an already reduced coefficient vector.
    pub fn from_coeffs(order: u32, coeffs: Vec<i64>) -> Option<Self> {
        let field = CyclotomicField::get(order);
        (coeffs.len() == field.degree()).then_some(Cyclotomic { field, coeffs })
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The integer value, if the element lies in `Z`.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    /// Image under the Galois automorphism `ζ -> ζ^k` (`k` coprime to `e`).
    pub fn galois(&self, k: i64) -> Self {
        let e = self.order() as i64;
        let mut coeffs = vec![0; self.field.degree()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let p = &self.field.powers[(i as i64 * k).rem_euclid(e) as usize];
                for (dst, &src) in coeffs.iter_mut().zip(p) {
                    *dst += c * src;
                }
            }
        }
        Cyclotomic { field: self.field.clone(), coeffs }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    /// Floating-point value `(re, im)` under `ζ_e = exp(2πi/e)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.order() as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, &c)| {
            let t = std::f64::consts::TAU * i as f64 / e;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }

    /// Re-expresses the element in `Q(ζ_m)` for a multiple `m` of its order.
    pub fn embed(&self, m: u32) -> Self {
        let e = self.order();
        assert!(m.is_multiple_of(e), "Q(ζ_{e}) does not embed in Q(ζ_{m})");
        let step = (m / e) as usize;
        let mut counts = vec![0i64; m as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            counts[i * step] = c;
        }
        Cyclotomic::from_power_counts(m, &counts)
    }

    fn check_same_field(&self, other: &Cyclotomic) {
        assert_eq!(
            self.order(),
            other.order(),
            "cyclotomic orders differ; embed into a common field first"
        );
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coefficient vectors; a fixed total order, not a field order.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.order(), &self.coeffs).cmp(&(other.order(), &other.coeffs))
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same_field(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same_field(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same_field(rhs);
        let phi = self.coeffs.len();
        let mut prod = vec![0i64; 2 * phi - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.field.reduce(prod),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(-1)
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.check_same_field(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({}; {:?})", self.order(), self.coeffs)
    }
}

/// Power-basis rendering with `z = ζ_e`, e.g. `-1 - z`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            let sign = if c < 0 { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            match (i, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "z")?,
                (1, m) => write!(f, "{m}z")?,
                (k, 1) => write!(f, "z^{k}")?,
                (k, m) => write!(f, "{m}z^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(7), vec![1; 7]);
    }

    #[test]
    fn roots_of_unity() {
        let i = Cyclotomic::root(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_int(4, -1));
        let w = Cyclotomic::root(3, 1);
        // 1 + w + w^2 = 0
        let s = &(&Cyclotomic::one(3) + &w) + &(&w * &w);
        assert!(s.is_zero());
        assert_eq!(Cyclotomic::root(6, 3), Cyclotomic::from_int(6, -1));
        assert_eq!(Cyclotomic::root(1, 5), Cyclotomic::one(1));
    }

    #[test]
    fn conjugation() {
        let i = Cyclotomic::root(4, 1);
        assert_eq!(i.conj(), Cyclotomic::root(4, 3));
        let w = Cyclotomic::root(3, 1);
        assert_eq!(&w * &w.conj(), Cyclotomic::one(3));
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::from_int(3, -1).to_string(), "-1");
        assert_eq!(Cyclotomic::root(3, 2).to_string(), "-1 - z");
        assert_eq!(Cyclotomic::zero(5).to_string(), "0");
    }

    #[test]
    fn embedding_preserves_value() {
        let w = Cyclotomic::root(3, 1);
        assert_eq!(w.embed(12), Cyclotomic::root(12, 4));
        let (re, im) = w.embed(12).to_complex();
        assert!((re + 0.5).abs() < 1e-12 && (im - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    fn element(e: u32) -> impl Strategy<Value = Cyclotomic> {
        prop::collection::vec(-5i64..=5, e as usize)
            .prop_map(move |counts| Cyclotomic::from_power_counts(e, &counts))
    }

    proptest! {
        #[test]
        fn conj_is_involution(x in (1u32..=30).prop_flat_map(element)) {
            prop_assert_eq!(x.conj().conj(), x);
        }

        #[test]
        fn ring_laws(e in 1u32..=24, seed in prop::collection::vec(-4i64..=4, 72)) {
            let n = e as usize;
            let pad = |s: &[i64]| { let mut v = s.to_vec(); v.resize(n, 0); v };
            let a = Cyclotomic::from_power_counts(e, &pad(&seed[0..n.min(24)]));
            let b = Cyclotomic::from_power_counts(e, &pad(&seed[24..24 + n.min(24)]));
            let c = Cyclotomic::from_power_counts(e, &pad(&seed[48..48 + n.min(24)]));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn canonical_form_matches_complex_value(x in (1u32..=20).prop_flat_map(element),
                                                y in (1u32..=20).prop_flat_map(element)) {
            if x.order() == y.order() {
                let (a, b) = (x.to_complex(), y.to_complex());
                let close = (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9;
                prop_assert_eq!(close, x == y);
            }
        }
    }
}
