//! Small-integer number theory used throughout the crate.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Prime factorization as `(p, e)` pairs with `p` ascending. `factor(1)` is empty.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor of zero");
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == [(n, 1)]
}

pub fn is_squarefree(n: u64) -> bool {
    factor(n).iter().all(|&(_, e)| e == 1)
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> usize {
    factor(n).len()
}

/// All positive divisors in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Number of divisors, `σ₀(n)`.
pub fn sigma0(n: u64) -> u64 {
    factor(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

pub fn totient(n: u64) -> u64 {
    factor(n)
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

pub fn mobius(n: u64) -> i64 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// p-adic valuation of a positive integer.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut acc: u128 = 1;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Reduce a signed integer into `0..m`.
pub fn rem_euclid(n: i64, m: u64) -> u64 {
    n.rem_euclid(m as i64) as u64
}

/// Multiplicative order of `a` modulo `m`; `None` when `gcd(a, m) > 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let phi = totient(m);
    let mut ord = phi;
    for p in prime_divisors(phi) {
        while ord % p == 0 && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    Some(ord)
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// Solve `x ≡ r1 (mod m1)`, `x ≡ r2 (mod m2)` for coprime moduli.
pub fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    debug_assert_eq!(gcd(m1, m2), 1);
    let m = m1 * m2;
    // x = r1 + m1 * ((r2 - r1) * inv(m1) mod m2)
    let inv = mod_inverse(m1 % m2, m2).unwrap_or(0);
    let diff = (r2 as i128 - r1 as i128).rem_euclid(m2 as i128) as u128;
    let k = diff * inv as u128 % m2 as u128;
    ((r1 as u128 + m1 as u128 * k) % m as u128) as u64
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn factorial(n: u64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_and_counts() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(sigma0(60), 12);
        assert_eq!(totient(8), 4);
        assert_eq!(totient(1), 1);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(omega(60), 3);
    }

    #[test]
    fn orders_and_inverses() {
        assert_eq!(multiplicative_order(2, 9), Some(6));
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(3, 6), None);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(crt(2, 3, 3, 5), 8);
    }

    #[test]
    fn squarefree_and_primes() {
        assert!(is_squarefree(210));
        assert!(!is_squarefree(12));
        assert_eq!(primes_up_to(13), vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(valuation(48, 2), 4);
        for n in 0..2000u64 {
            assert_eq!(is_prime_u64(n), is_prime(n), "{n}");
        }
        assert!(is_prime_u64((1 << 61) - 1));
    }
}
