//! Exact arithmetic behind the regular-orbit argument for groups normalizing
//! an `r`-group of symplectic type in dimension `r^m`.
//!
//! Fractional exponents are cleared by raising both sides to the
//! denominator, so every comparison is between integers.

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};
use serde::Serialize;

use crate::linalg::classical::{go_order, sp_order};

#[derive(Debug, Clone, Serialize)]
pub struct AuditCheck {
    pub name: &'static str,
    pub statement: String,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
    /// Pairs `(r, m)` with `m >= 12` and `r^m < 4m^2(2m+2)`.
    pub solutions: Vec<(u64, u32)>,
    /// Pairs `(q, m)` surviving the order comparison.
    pub survivors: Vec<(u64, u32)>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("check ({}) {}: {}\n", c.name, if c.passed { "PASS" } else { "FAIL" }, c.statement));
            for d in &c.details {
                out.push_str(&format!("    {d}\n"));
            }
        }
        out
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn pow(b: u64, e: u64) -> BigUint {
    Pow::pow(&big(b), e)
}

fn log2(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("below f64 range").log2();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap().log2() + shift as f64
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `4m^2(2m+2)`.
fn bound_b(m: u64) -> BigUint {
    big(4 * m * m * (2 * m + 2))
}

fn largest_classical(m: u32) -> BigUint {
    let sp = sp_order(2 * m, 2).expect("even dimension");
    let plus = go_order(true, 2 * m, 2).expect("even dimension");
    let minus = go_order(false, 2 * m, 2).expect("even dimension");
    sp.max(plus).max(minus)
}

fn check_a() -> AuditCheck {
    // q^{r^m/2} > q^{2m+2} for q >= 2 is the exponent inequality r^m > 4m+4
    let base = pow(2, 12) > big(4 * 12 + 4);
    // r^{m+1} >= 2 r^m > 8m+8 >= 4(m+1)+4, and r^m grows with r
    let step = (0..=64u64).all(|m| 8 * m + 8 >= 4 * (m + 1) + 4);
    let sweep = (12..=60u64).all(|m| (2..=60u64).filter(|&r| is_prime(r)).all(|r| pow(r, m) > big(4 * m + 4)));
    AuditCheck {
        name: "a",
        statement: "for m >= 12 and q >= r+1 the chain q^(r^m/2) < |R| <= q^(2m+2) is impossible".into(),
        passed: base && step && sweep,
        details: vec![
            format!("base: 2^12 = 4096 > 4*12+4 = 52: {base}"),
            format!("induction on m: 2(4m+4) >= 4(m+1)+4: {step}"),
            format!("sweep m <= 60, primes r <= 60: {sweep}"),
        ],
    }
}

fn check_b() -> (AuditCheck, Vec<(u64, u32)>) {
    // f(m) = 4m^2(2m+2) satisfies 2 f(m) >= f(m+1) from m = 4 on, since
    // 2f(m) - f(m+1) = 8m^3 - 16m^2 - 40m - 16 is positive and increasing
    // there; so once r^m >= f(m) it stays so, for every r >= 2.
    let cubic = |m: i64| 8 * m.pow(3) - 16 * m.pow(2) - 40 * m - 16;
    let tail = cubic(4) > 0 && 24 * 16 - 32 * 4 - 40 > 0 && 48 * 4 - 32 > 0;
    let identity = (4..=200u64).all(|m| big(2) * bound_b(m) - bound_b(m + 1) == big(cubic(m as i64) as u64));
    let mut solutions = Vec::new();
    for r in (2..=97u64).filter(|&r| is_prime(r)) {
        let mut m = 12u64;
        while pow(r, m) < bound_b(m) {
            solutions.push((r, m as u32));
            m += 1;
        }
    }
    // r >= 3 already fails at m = 12, and r^m increases with r
    let three_fails = pow(3, 12) >= bound_b(12);
    let sweep: Vec<(u64, u32)> = (2..=97u64)
        .filter(|&r| is_prime(r))
        .flat_map(|r| (12..=120u64).filter(move |&m| pow(r, m) < bound_b(m)).map(move |m| (r, m as u32)))
        .collect();
    let expected = vec![(2, 12), (2, 13), (2, 14)];
    let passed = tail && identity && three_fails && solutions == expected && sweep == expected;
    let check = AuditCheck {
        name: "b",
        statement: "the solutions of r^m < 4m^2(2m+2) with r prime and m >= 12 are (2,12), (2,13), (2,14)".into(),
        passed,
        details: vec![
            format!("solutions: {solutions:?}"),
            format!("2^15 = 32768 >= 4*15^2*32 = {}", bound_b(15)),
            format!("3^12 = 531441 >= 4*12^2*26 = {}: {three_fails}", bound_b(12)),
            format!("tail 2f(m) >= f(m+1) for m >= 4: {}", tail && identity),
            format!("sweep m <= 120, primes r <= 97: {sweep:?}"),
        ],
    };
    (check, solutions)
}

fn check_c(solutions: &[(u64, u32)]) -> (AuditCheck, Vec<(u64, u32)>) {
    // q^{2^m/(2m+2)} <= M  iff  q^{2^m} <= M^{2m+2}, monotone in q
    let mut survivors = Vec::new();
    let mut details = Vec::new();
    for &(r, m) in solutions {
        let bound: BigUint = Pow::pow(&largest_classical(m), 2 * m as u64 + 2);
        let mut q = 3u64;
        loop {
            let lhs = pow(q, pow(r, m as u64).to_u64().unwrap());
            let holds = lhs <= bound;
            details.push(format!(
                "m = {m}, q = {q}: log2 q^(2^m) = {:.1} vs log2 M^(2m+2) = {:.1}: {}",
                log2(&lhs),
                log2(&bound),
                if holds { "holds" } else { "fails" }
            ));
            if !holds {
                break;
            }
            survivors.push((q, m));
            q += 1;
        }
    }
    let check = AuditCheck {
        name: "c",
        statement: "q^(2^m/(2m+2)) <= max(|Sp_2m(2)|, |O+_2m(2)|, |O-_2m(2)|) with q >= 3 only for (q, m) = (3, 12)".into(),
        passed: survivors == vec![(3, 12)],
        details,
    };
    (check, survivors)
}

fn check_d() -> AuditCheck {
    let o_minus = go_order(false, 24, 2).expect("even dimension");
    // 2^24 3^{-4096/25} < 1/2  iff  2^{625} < 3^{4096}
    let first = pow(2, 25 * 25) < pow(3, 4096);
    // |O^-_24(2)| 3^{-256} < 1/2
    let second = big(2) * &o_minus < pow(3, 256);
    let l3 = 3f64.log2();
    let t1 = 24.0 - 4096.0 / 25.0 * l3;
    let t2 = log2(&o_minus) - 256.0 * l3;
    AuditCheck {
        name: "d",
        statement: "2^24 * 3^(-4096/25) + |O-_24(2)| * 3^(-4096/16) < 1".into(),
        passed: first && second,
        details: vec![
            format!("first term below 1/2 (2^625 < 3^4096): {first}, log2 = {t1:.2}"),
            format!("second term below 1/2 (2|O-_24(2)| < 3^256): {second}, log2 = {t2:.2}"),
            format!("|O-_24(2)| = {o_minus}"),
        ],
    }
}

pub fn audit_c6() -> AuditReport {
    let (b, solutions) = check_b();
    let (c, survivors) = check_c(&solutions);
    AuditReport {
        checks: vec![check_a(), b, c, check_d()],
        solutions,
        survivors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn audit_passes() {
        let r = audit_c6();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.solutions, vec![(2, 12), (2, 13), (2, 14)]);
        assert_eq!(r.survivors, vec![(3, 12)]);
        assert!(r.to_text().contains("check (d) PASS"));
    }

    #[test]
    fn big_logs() {
        assert!((log2(&pow(3, 4096)) - 4096.0 * 3f64.log2()).abs() < 1e-6);
        assert_eq!(log2(&big(1024)), 10.0);
    }
}
