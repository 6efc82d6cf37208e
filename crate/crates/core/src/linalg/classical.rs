//! Orders of the general linear, symplectic and orthogonal groups.

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `|GL_a(q)| = Π_{i<a} (q^a - q^i)`.
pub fn gl_order(a: u32, q: u64) -> BigUint {
    let qa: BigUint = Pow::pow(&big(q), a);
    (0..a).fold(BigUint::one(), |acc, i| acc * (&qa - Pow::pow(&big(q), i)))
}

/// `|Sp_{2m}(q)| = q^{m^2} Π_{i=1}^m (q^{2i} - 1)`.
pub fn sp_order(two_m: u32, q: u64) -> Result<BigUint> {
    if two_m == 0 || two_m % 2 != 0 || q < 2 {
        return Err(Error::InvalidParameter(format!("Sp_{two_m}({q}) needs even positive dimension")));
    }
    let m = two_m / 2;
    let qb = big(q);
    let mut acc: BigUint = Pow::pow(&qb, m * m);
    for i in 1..=m {
        acc *= Pow::pow(&qb, 2 * i) - BigUint::one();
    }
    Ok(acc)
}

/// `|O^ε_{2m}(q)| = 2 q^{m(m-1)} (q^m - ε) Π_{i=1}^{m-1} (q^{2i} - 1)`,
/// the full isometry group of a nondegenerate quadratic form of type `ε`.
pub fn go_order(plus: bool, two_m: u32, q: u64) -> Result<BigUint> {
    if two_m == 0 || two_m % 2 != 0 || q < 2 {
        return Err(Error::InvalidParameter(format!("O_{two_m}({q}) needs even positive dimension")));
    }
    let m = two_m / 2;
    let qb = big(q);
    let qm: BigUint = Pow::pow(&qb, m);
    let mut acc = big(2) * Pow::pow(&qb, m * (m - 1));
    acc *= if plus { qm - BigUint::one() } else { qm + BigUint::one() };
    for i in 1..m {
        acc *= Pow::pow(&qb, 2 * i) - BigUint::one();
    }
    Ok(acc)
}
