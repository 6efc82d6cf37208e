//! Small finite fields with table arithmetic.
//!
//! `F_{p^e}` is `F_p[x]/(f)` for a fixed Conway polynomial `f`. An element
//! is the integer whose base-`p` digits, least significant first, are its
//! polynomial coefficients.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Conway polynomials, coefficients from the constant term up, monic
/// leading term omitted.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 1, 1, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (5, 2, &[2, 4]),
    (7, 2, &[3, 6]),
];

/// Largest field order with arithmetic tables.
const MAX_ORDER: u32 = 256;

#[derive(Debug)]
struct Tables {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    frob: Vec<u32>,
}

/// A finite field `F_q`, cheap to clone.
#[derive(Debug, Clone)]
pub struct FieldCtx(Arc<Tables>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.e == other.0.e
    }
}

impl Eq for FieldCtx {}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl FieldCtx {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) || e == 0 {
            return Err(Error::InvalidParameter(format!("no field of order {p}^{e}")));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidParameter(format!("field order {p}^{e} too large")))?;
        let modulus = if e == 1 {
            vec![0]
        } else {
            CONWAY
                .iter()
                .find(|(pp, ee, _)| *pp == p && *ee == e)
                .map(|(_, _, c)| c.to_vec())
                .ok_or_else(|| Error::InvalidParameter(format!("no shipped modulus for {p}^{e}")))?
        };
        let digits = |x: u32| -> Vec<u32> { (0..e).map(|i| x / p.pow(i) % p).collect() };
        let undigits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s);
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * e as usize];
                for i in 0..e as usize {
                    for j in 0..e as usize {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for d in (e as usize..prod.len()).rev() {
                    let c = prod[d];
                    if c == 0 {
                        continue;
                    }
                    prod[d] = 0;
                    for (i, &m) in modulus.iter().enumerate() {
                        let t = d - e as usize + i;
                        prod[t] = (prod[t] + p * p - c * m % p) % p;
                    }
                }
                mul[(a * q + b) as usize] = if e == 1 { (a * b) % p } else { undigits(&prod[..e as usize]) };
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        let frob = (0..q)
            .map(|a| {
                let mut r = 1;
                for _ in 0..p {
                    r = mul[(r * q + a) as usize];
                }
                r
            })
            .collect();
        Ok(Self(Arc::new(Tables {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            frob,
        })))
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u32) -> Result<Self> {
        for p in 2..=q {
            if q % p == 0 {
                let mut e = 0;
                let mut r = q;
                while r % p == 0 {
                    r /= p;
                    e += 1;
                }
                if r != 1 {
                    break;
                }
                return Self::new(p, e);
            }
        }
        Err(Error::InvalidParameter(format!("{q} is not a prime power")))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Non-leading coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add[(a * self.0.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.0.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul[(a * self.0.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::Singular);
        }
        Ok(self.0.inv[a as usize])
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// `a^(p^power)`.
    pub fn frobenius(&self, a: u32, power: u32) -> u32 {
        (0..power % self.0.e).fold(a, |x, _| self.0.frob[x as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> u32 {
        assert_ne!(a, 0);
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// The smallest generator of `F_q^×`.
    pub fn primitive_element(&self) -> u32 {
        (1..self.q())
            .find(|&a| self.element_order(a) == self.q() - 1)
            .expect("finite fields have primitive elements")
    }

    /// Elements of the subfield of order `p^d`, `d | e`.
    pub fn subfield(&self, d: u32) -> Result<Vec<u32>> {
        if d == 0 || self.e() % d != 0 {
            return Err(Error::InvalidParameter(format!(
                "F_{} has no subfield of degree {d}",
                self.q()
            )));
        }
        Ok((0..self.q()).filter(|&a| self.frobenius(a, d) == a).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_on_all_small_fields() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (7, 2), (2, 5), (2, 6), (3, 3)] {
            let f = FieldCtx::new(p, e).unwrap();
            let q = f.q();
            assert_eq!(q, p.pow(e));
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if q <= 32 {
                        for c in 0..q {
                            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                            assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        }
                    }
                }
            }
            assert!(f.inv(0).is_err());
        }
    }

    #[test]
    fn conway_root_is_primitive() {
        // x itself is encoded as p
        for (p, e, _) in CONWAY {
            let f = FieldCtx::new(*p, *e).unwrap();
            assert_eq!(f.element_order(*p), f.q() - 1, "{p}^{e}");
        }
    }

    #[test]
    fn frobenius_generates_automorphisms() {
        for (p, e) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            let f = FieldCtx::new(p, e).unwrap();
            for a in 0..f.q() {
                assert_eq!(f.frobenius(a, e), a);
                for b in 0..f.q() {
                    assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
                    assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
                }
            }
            // no smaller power is the identity
            for s in 1..e {
                assert!((0..f.q()).any(|a| f.frobenius(a, s) != a));
            }
        }
    }

    #[test]
    fn subfields() {
        let f = FieldCtx::new(2, 4).unwrap();
        assert_eq!(f.subfield(2).unwrap().len(), 4);
        assert_eq!(f.subfield(1).unwrap(), vec![0, 1]);
        assert!(f.subfield(3).is_err());
        assert_eq!(FieldCtx::of_order(9).unwrap().e(), 2);
        assert!(FieldCtx::of_order(6).is_err());
        assert!(FieldCtx::new(4, 1).is_err());
    }
}
