//! Table-driven arithmetic in the Galois fields GF(q), q = p^k <= 32.
//!
//! An element is encoded as the integer `sum c_i * p^i`, where `c_0 + c_1 x + ...`
//! is its polynomial representative modulo a fixed monic irreducible polynomial.
//! With this encoding GF(4) = {0, 1, a, b} has `a = 2` (the class of `x`) and
//! `b = 3` (the class of `x + 1`).
//!
//! Fixed moduli (coefficients listed from the constant term upward):
//!
//! | q  | modulus        |
//! |----|----------------|
//! | 4  | x^2 + x + 1    |
//! | 8  | x^3 + x + 1    |
//! | 9  | x^2 + 2x + 2   |
//! | 16 | x^4 + x + 1    |
//! | 25 | x^2 + 4x + 2   |
//! | 27 | x^3 + 2x + 1   |
//! | 32 | x^5 + x^2 + 1  |
//!
//! Prime fields use the modulus `x`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A field element in its canonical integer encoding, always `< q`.
pub type FieldElement = u8;

pub const MAX_ORDER: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("GF({0}) is not supported (q must be at most {MAX_ORDER})")]
    Unsupported(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("internal table check failed for GF({q}): {what}")]
    TableCheck { q: u32, what: String },
}

/// Fixed irreducible moduli, low coefficient first, leading 1 included.
const MODULI: &[(u32, &[u8])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[2, 2, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 4, 1]),
    (27, &[1, 2, 0, 1]),
    (32, &[1, 0, 1, 0, 0, 1]),
];

/// GF(q) with precomputed operation tables. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Returns the shared instance of GF(q).
pub fn build_field(q: u32) -> Result<Arc<FieldSpec>, FieldError> {
    static CACHE: OnceLock<Vec<Option<Arc<FieldSpec>>>> = OnceLock::new();
    let (_, _) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    if q > MAX_ORDER {
        return Err(FieldError::Unsupported(q));
    }
    let cache = CACHE.get_or_init(|| {
        (0..=MAX_ORDER)
            .map(|q| {
                prime_power(q)
                    .and_then(|_| FieldSpec::construct(q).ok())
                    .map(Arc::new)
            })
            .collect()
    });
    match &cache[q as usize] {
        Some(f) => Ok(Arc::clone(f)),
        None => FieldSpec::construct(q).map(Arc::new),
    }
}

// Polynomials over GF(p) as coefficient vectors, low degree first.
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let coef = r[r.len() - 1] * lead_inv % p;
        for (i, &mc) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p * p - coef * mc % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue mod prime")
}

fn decode(v: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    let mut v = v;
    for _ in 0..k {
        out.push(v % p);
        v /= p;
    }
    out
}

fn encode(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Trial division against every monic polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut div = decode(low, p, d as u32);
            div.push(1);
            if poly_rem(modulus, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    fn construct(q: u32) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(FieldError::Unsupported(q));
        }
        let modulus: Vec<u32> = if k == 1 {
            vec![0, 1]
        } else {
            MODULI
                .iter()
                .find(|(mq, _)| *mq == q)
                .map(|(_, m)| m.iter().map(|&c| c as u32).collect())
                .ok_or(FieldError::Unsupported(q))?
        };
        if !is_irreducible(&modulus, p) {
            return Err(FieldError::TableCheck {
                q,
                what: "modulus is reducible".into(),
            });
        }
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for x in 0..q {
            let cx = decode(x, p, k);
            for y in 0..q {
                let cy = decode(y, p, k);
                let sum: Vec<u32> = cx.iter().zip(&cy).map(|(a, b)| (a + b) % p).collect();
                add[(x * q + y) as usize] = encode(&sum, p) as u8;
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, a) in cx.iter().enumerate() {
                    for (j, b) in cy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                let mut r = if k == 1 {
                    vec![prod[0] % p]
                } else {
                    poly_rem(&prod, &modulus, p)
                };
                r.resize(k as usize, 0);
                mul[(x * q + y) as usize] = encode(&r, p) as u8;
            }
        }
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for x in 0..n {
            neg[x] = (0..n).find(|&y| add[x * n + y] == 0).unwrap() as u8;
            if x != 0 {
                inv[x] = (1..n).find(|&y| mul[x * n + y] == 1).ok_or_else(|| {
                    FieldError::TableCheck {
                        q,
                        what: format!("{x} has no inverse"),
                    }
                })? as u8;
            }
        }
        let field = FieldSpec {
            p,
            k,
            q,
            modulus: modulus.iter().map(|&c| c as u8).collect(),
            add,
            mul,
            neg,
            inv,
        };
        field.check_axioms()?;
        Ok(field)
    }

    fn check_axioms(&self) -> Result<(), FieldError> {
        let fail = |what: &str| {
            Err(FieldError::TableCheck {
                q: self.q,
                what: what.to_string(),
            })
        };
        let els: Vec<u8> = self.elements().collect();
        for &x in &els {
            if self.add(x, 0) != x || self.mul(x, 1) != x {
                return fail("identity");
            }
            for &y in &els {
                if self.add(x, y) != self.add(y, x) || self.mul(x, y) != self.mul(y, x) {
                    return fail("commutativity");
                }
                for &z in &els {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return fail("additive associativity");
                    }
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return fail("multiplicative associativity");
                    }
                    if self.mul(x, self.add(y, z)) != self.add(self.mul(x, y), self.mul(x, z)) {
                        return fail("distributivity");
                    }
                }
            }
        }
        if self.generator().is_none() {
            return fail("multiplicative group is not cyclic");
        }
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }
    pub fn is_char2(&self) -> bool {
        self.p == 2
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        0..self.q as u8
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> + Clone {
        1..self.q as u8
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add[x as usize * self.q as usize + y as usize]
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.mul[x as usize * self.q as usize + y as usize]
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        self.neg[x as usize]
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        if x == 0 {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(self.inv[x as usize])
        }
    }

    /// `x / y`; panics on `y == 0`, use [`FieldSpec::inv`] for a checked inverse.
    #[inline]
    pub fn div(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        assert!(y != 0, "division by zero in {self}");
        self.mul(x, self.inv[y as usize])
    }

    pub fn pow(&self, x: FieldElement, e: u32) -> FieldElement {
        (0..e).fold(1, |acc, _| self.mul(acc, x))
    }

    /// Smallest element generating the multiplicative group.
    pub fn generator(&self) -> Option<FieldElement> {
        let order = self.q - 1;
        self.nonzero().find(|&g| {
            let mut x = 1u8;
            for i in 1..=order {
                x = self.mul(x, g);
                if x == 1 {
                    return i == order;
                }
            }
            false
        })
    }

    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p)
    }

    /// Display name of an element: `a`, `b` for the two non-prime elements of
    /// GF(4), the integer encoding otherwise.
    pub fn element_name(&self, x: FieldElement) -> String {
        match (self.q, x) {
            (4, 2) => "a".into(),
            (4, 3) => "b".into(),
            _ => x.to_string(),
        }
    }

    /// Addition and multiplication tables laid out as bordered grids.
    pub fn format_tables(&self) -> String {
        let names: Vec<String> = self.elements().map(|x| self.element_name(x)).collect();
        let width = names.iter().map(|s| s.len()).max().unwrap_or(1);
        let mut out = String::new();
        for (symbol, op) in [("+", 0), ("x", 1)] {
            out.push_str(&format!("{symbol:>width$} |"));
            for n in &names {
                out.push_str(&format!(" {n:>width$}"));
            }
            out.push('\n');
            out.push_str(&"-".repeat(width + 2 + (width + 1) * names.len()));
            out.push('\n');
            for x in self.elements() {
                out.push_str(&format!("{:>width$} |", names[x as usize]));
                for y in self.elements() {
                    let v = if op == 0 { self.add(x, y) } else { self.mul(x, y) };
                    out.push_str(&format!(" {:>width$}", names[v as usize]));
                }
                out.push('\n');
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: [u32; 18] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32];

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(build_field(6).unwrap_err(), FieldError::NotPrimePower(6));
        assert_eq!(build_field(12).unwrap_err(), FieldError::NotPrimePower(12));
        assert_eq!(build_field(1).unwrap_err(), FieldError::NotPrimePower(1));
        assert_eq!(build_field(0).unwrap_err(), FieldError::NotPrimePower(0));
        assert_eq!(build_field(37).unwrap_err(), FieldError::Unsupported(37));
        assert_eq!(build_field(64).unwrap_err(), FieldError::Unsupported(64));
    }

    #[test]
    fn gf2_is_xor_and() {
        let f = build_field(2).unwrap();
        for x in 0..2u8 {
            for y in 0..2u8 {
                assert_eq!(f.add(x, y), x ^ y);
                assert_eq!(f.mul(x, y), x & y);
            }
        }
    }

    #[test]
    fn gf4_matches_published_tables() {
        let f = build_field(4).unwrap();
        let (a, b) = (2u8, 3u8);
        // rows of the + and x tables over {0, 1, a, b}
        let add = [[0, 1, a, b], [1, 0, b, a], [a, b, 0, 1], [b, a, 1, 0]];
        let mul = [[0, 0, 0, 0], [0, 1, a, b], [0, a, b, 1], [0, b, 1, a]];
        for x in 0..4u8 {
            for y in 0..4u8 {
                assert_eq!(f.add(x, y), add[x as usize][y as usize]);
                assert_eq!(f.mul(x, y), mul[x as usize][y as usize]);
            }
        }
        assert_eq!(f.element_name(a), "a");
    }

    #[test]
    fn moduli_are_irreducible() {
        for (q, m) in MODULI {
            let (p, k) = prime_power(*q).unwrap();
            let m: Vec<u32> = m.iter().map(|&c| c as u32).collect();
            assert_eq!(m.len() as u32, k + 1);
            assert!(is_irreducible(&m, p), "modulus for {q}");
        }
        // x^2 + 1 splits over GF(2) and GF(5)
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 5));
    }

    #[test]
    fn inverses_in_gf8() {
        let f = build_field(8).unwrap();
        for x in f.nonzero() {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
        }
        assert_eq!(f.inv(0), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn tables_are_latin_squares() {
        for q in SUPPORTED {
            let f = build_field(q).unwrap();
            for x in f.elements() {
                let mut row: Vec<u8> = f.elements().map(|y| f.add(x, y)).collect();
                row.sort_unstable();
                assert!(row.iter().copied().eq(f.elements()), "GF({q}) add row {x}");
                if x != 0 {
                    let mut row: Vec<u8> = f.nonzero().map(|y| f.mul(x, y)).collect();
                    row.sort_unstable();
                    assert!(row.iter().copied().eq(f.nonzero()), "GF({q}) mul row {x}");
                }
            }
        }
    }

    #[test]
    fn characteristic_and_frobenius() {
        for q in SUPPORTED {
            let f = build_field(q).unwrap();
            for x in f.elements() {
                let mut acc = 0;
                for _ in 0..f.p() {
                    acc = f.add(acc, x);
                }
                assert_eq!(acc, 0);
                if f.is_char2() {
                    assert_eq!(f.add(x, x), 0);
                    assert_eq!(f.neg(x), x);
                }
                for y in f.elements() {
                    assert_eq!(
                        f.frobenius(f.add(x, y)),
                        f.add(f.frobenius(x), f.frobenius(y))
                    );
                }
            }
            assert!(f.generator().is_some());
        }
    }

    #[test]
    fn identities() {
        for q in SUPPORTED {
            let f = build_field(q).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, 0), x);
                assert_eq!(f.mul(x, 1), x);
                assert_eq!(f.sub(x, x), 0);
            }
        }
    }
}
