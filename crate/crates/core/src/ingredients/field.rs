//! Finite field arithmetic over a deterministic representation.
//!
//! Elements of F_{p^n} are residues of F_p\[x\] modulo a fixed monic
//! irreducible of degree n: the lexicographically smallest one, comparing
//! coefficient vectors low degree first. Elements are addressed by index
//! `Σ cᵢ pⁱ` of their coefficient vector, so 0 and 1 are the field's zero
//! and one and the element order is reproducible everywhere downstream.

use crate::error::{Error, Result};

/// Trial-division primality; plenty at the scale fields are built here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Factors `q = p^n` with p prime, if possible.
pub fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut m = q;
            let mut n = 0;
            while m % p == 0 {
                m /= p;
                n += 1;
            }
            return (m == 1).then_some((p, n));
        }
        p += 1;
    }
    Some((q, 1)) // q itself is prime
}

/// A finite field F_{p^n} with fixed modulus and element indexing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    n: u32,
    q: u64,
    /// Monic modulus of degree n, coefficients low degree first, length n+1.
    modulus: Vec<u64>,
}

/// Builds F_{p^n} with the lexicographically smallest monic irreducible
/// modulus of degree n (coefficients compared low degree first).
pub fn field_make(p: u64, n: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::parameter(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::parameter("extension degree must be at least 1"));
    }
    let q = p
        .checked_pow(n)
        .ok_or_else(|| Error::parameter("field too large"))?;
    let modulus = smallest_irreducible(p, n);
    Ok(FieldSpec { p, n, q, modulus })
}

/// Enumerates monic degree-n candidates in low-degree-first lexicographic
/// order and returns the first irreducible one.
fn smallest_irreducible(p: u64, n: u32) -> Vec<u64> {
    let n = n as usize;
    let total = p.pow(n as u32);
    for m in 0..total {
        // Digit (n-1-i) of m becomes coefficient i, so increasing m walks
        // the (c_0, c_1, ...) tuples in lexicographic order.
        let mut coeffs = vec![0u64; n + 1];
        coeffs[n] = 1;
        let mut rest = m;
        for i in (0..n).rev() {
            coeffs[n - 1 - i] = rest / p.pow(i as u32);
            rest %= p.pow(i as u32);
        }
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p");
}

fn poly_degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Remainder of f modulo g over F_p; g must be nonzero.
fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = poly_degree(g).expect("divisor is zero");
    let lead_inv = mod_inverse(g[dg], p);
    let mut r = f.to_vec();
    while let Some(dr) = poly_degree(&r) {
        if dr < dg {
            break;
        }
        let factor = (r[dr] * lead_inv) % p;
        let shift = dr - dg;
        for i in 0..=dg {
            let sub = (factor * g[i]) % p;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
    }
    r
}

fn poly_is_zero(f: &[u64]) -> bool {
    poly_degree(f).is_none()
}

/// Irreducibility by trial division: no monic factor of degree 1..n/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = poly_degree(f).unwrap();
    if n == 1 {
        return true;
    }
    for d in 1..=(n / 2) {
        // All monic polynomials of degree d.
        let count = p.pow(d as u32);
        for m in 0..count {
            let mut g = vec![0u64; d + 1];
            g[d] = 1;
            let mut rest = m;
            for c in g.iter_mut().take(d) {
                *c = rest % p;
                rest /= p;
            }
            if poly_is_zero(&poly_rem(f, &g, p)) {
                return false;
            }
        }
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid on integers.
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let quotient = r / new_r;
        (t, new_t) = (new_t, t - quotient * new_t);
        (r, new_r) = (new_r, r - quotient * new_r);
    }
    assert_eq!(r, 1, "{a} has no inverse mod {p}");
    t.rem_euclid(p as i128) as u64
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, low degree first, length n+1, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements as a usize index bound.
    pub fn order(&self) -> usize {
        self.q as usize
    }

    fn to_coeffs(&self, idx: usize) -> Vec<u64> {
        let mut coeffs = vec![0u64; self.n as usize];
        let mut rest = idx as u64;
        for c in coeffs.iter_mut() {
            *c = rest % self.p;
            rest /= self.p;
        }
        coeffs
    }

    fn index_of(&self, coeffs: &[u64]) -> usize {
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.to_coeffs(a), self.to_coeffs(b));
        let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.index_of(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let ca = self.to_coeffs(a);
        let neg: Vec<u64> = ca.iter().map(|&x| (self.p - x) % self.p).collect();
        self.index_of(&neg)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.to_coeffs(a), self.to_coeffs(b));
        let n = self.n as usize;
        let mut prod = vec![0u64; 2 * n];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut rem = poly_rem(&prod, &self.modulus, self.p);
        rem.resize(n, 0);
        self.index_of(&rem)
    }

    /// Multiplicative inverse by extended Euclid in F_p\[x\].
    pub fn inverse(&self, a: usize) -> Result<usize> {
        if a == 0 {
            return Err(Error::parameter("zero has no inverse"));
        }
        let n = self.n as usize;
        // Invariants: old_r = old_s·a (mod modulus), r = s·a (mod modulus).
        let mut old_r = self.modulus.clone();
        let mut r = {
            let mut c = self.to_coeffs(a);
            c.resize(n + 1, 0);
            c
        };
        let mut old_s = vec![0u64; n + 1];
        let mut s = vec![0u64; n + 1];
        s[0] = 1;
        while !poly_is_zero(&r) {
            let (q, rem) = poly_divmod(&old_r, &r, self.p);
            old_r = std::mem::replace(&mut r, rem);
            let qs = poly_mul_mod(&q, &s, self.p);
            let new_s = poly_sub(&old_s, &qs, self.p);
            old_s = std::mem::replace(&mut s, truncate_to(new_s, n + 1));
        }
        // old_r is the gcd; scale so it is 1.
        let d = poly_degree(&old_r).expect("gcd of nonzero inputs");
        assert_eq!(d, 0, "modulus is irreducible, gcd must be constant");
        let scale = mod_inverse(old_r[0], self.p);
        let mut inv: Vec<u64> = old_s.iter().map(|&c| (c * scale) % self.p).collect();
        inv = poly_rem(&inv, &self.modulus, self.p);
        inv.resize(n, 0);
        Ok(self.index_of(&inv))
    }
}

fn truncate_to(mut f: Vec<u64>, len: usize) -> Vec<u64> {
    // Bezout coefficients for a modulus of degree n never exceed degree n.
    debug_assert!(f.iter().skip(len).all(|&c| c == 0));
    f.resize(len, 0);
    f
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect()
}

fn poly_mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    prod
}

fn poly_divmod(f: &[u64], g: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let dg = poly_degree(g).expect("divisor is zero");
    let lead_inv = mod_inverse(g[dg], p);
    let mut r = f.to_vec();
    let mut q = vec![0u64; f.len()];
    while let Some(dr) = poly_degree(&r) {
        if dr < dg {
            break;
        }
        let factor = (r[dr] * lead_inv) % p;
        let shift = dr - dg;
        q[shift] = factor;
        for i in 0..=dg {
            let sub = (factor * g[i]) % p;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
    }
    (q, r)
}

/// Largest field order [`squares`] will enumerate; exhaustive squaring is
/// exact and plenty fast up to here.
pub const SQUARES_ORDER_BOUND: u64 = 1 << 14;

/// The set {x² : x ≠ 0} of nonzero squares, ascending by element index,
/// computed by squaring every nonzero element. Exactly (q−1)/2 of them in
/// odd characteristic. Fields above [`SQUARES_ORDER_BOUND`] are rejected.
pub fn squares(field: &FieldSpec) -> Result<Vec<usize>> {
    if field.p() == 2 {
        return Err(Error::parameter("squares of F_q need odd characteristic"));
    }
    if field.q() > SQUARES_ORDER_BOUND {
        return Err(Error::parameter(format!(
            "square enumeration capped at q = {SQUARES_ORDER_BOUND}, got {}",
            field.q()
        )));
    }
    let mut set = std::collections::BTreeSet::new();
    for x in 1..field.order() {
        set.insert(field.mul(x, x));
    }
    Ok(set.into_iter().collect())
}
