//! Factorization and multiplicative orders for `u64`.

use num_integer::Integer;

use crate::field::{is_prime, Modulus};
use crate::harness::pollard::{pollard_rho, RhoOutcome};

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor 0");
    let mut primes = Vec::new();
    let mut m = n;
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while m.is_multiple_of(q) {
            primes.push(q);
            m /= q;
        }
    }
    split_into(m, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

fn split_into(m: u64, out: &mut Vec<u64>) {
    if m == 1 {
        return;
    }
    if is_prime(m) {
        out.push(m);
        return;
    }
    // m is odd, composite and free of primes below 50 here
    let mut c = 1;
    let d = loop {
        match pollard_rho(m, 1, c, 2, 1 << 24) {
            Ok(RhoOutcome::Factor(d)) => break d,
            _ => c += 1,
        }
    };
    split_into(d, out);
    split_into(m / d, out);
}

/// Carmichael function of an odd `n >= 1`.
fn carmichael_odd(factors: &[(u64, u32)]) -> u64 {
    factors.iter().fold(1u64, |acc, &(q, e)| {
        let lambda = (q - 1) * q.pow(e - 1);
        acc.lcm(&lambda)
    })
}

/// Multiplicative order of `a` modulo an odd `n`, or `None` when
/// `gcd(a, n) != 1`. The order modulo 1 is 1.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    assert!(n % 2 == 1, "odd modulus required");
    if n == 1 {
        return Some(1);
    }
    if a.gcd(&n) != 1 {
        return None;
    }
    let modulus = Modulus::new(n).expect("odd modulus >= 3");
    let mut order = carmichael_odd(&factorize(n));
    for (q, _) in factorize(order) {
        while order.is_multiple_of(q) && modulus.pow(a, order / q) == 1 {
            order /= q;
        }
    }
    Some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(a: u64, n: u64) -> Option<u64> {
        if n == 1 {
            return Some(1);
        }
        let mut x = a % n;
        for k in 1..=n {
            if x == 1 {
                return Some(k);
            }
            x = x * a % n;
        }
        None
    }

    #[test]
    fn factorize_small_and_large() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1_000_003 * 1_000_033), vec![(1_000_003, 1), (1_000_033, 1)]);
        assert_eq!(factorize(4_294_967_297), vec![(641, 1), (6_700_417, 1)]);
        let big = 4_294_967_291u64 * 4_294_967_279;
        assert_eq!(factorize(big), vec![(4_294_967_279, 1), (4_294_967_291, 1)]);
        assert_eq!(factorize(10_007 * 10_007 * 3), vec![(3, 1), (10_007, 2)]);
        for n in 1..3000u64 {
            let prod: u64 = factorize(n).iter().map(|&(q, e)| q.pow(e)).product();
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn order_matches_brute_force() {
        for n in (1..400u64).step_by(2) {
            for a in 0..n.min(60) {
                assert_eq!(multiplicative_order(a, n), brute_order(a, n), "a={a} n={n}");
            }
        }
    }
}
