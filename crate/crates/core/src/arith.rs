//! Small integer helpers shared across modules.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `k` when `n = p^k`, `None` otherwise.
pub fn log_p(n: u64, p: u64) -> Option<u32> {
    if n == 0 || p < 2 {
        return None;
    }
    let mut k = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

/// The prime `p` when `n` is a power `p^k` with `k >= 1`.
pub fn prime_of_power(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            break;
        }
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    log_p(n, p).map(|_| p)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    let a = a.rem_euclid(m);
    let (mut r0, mut r1) = (m, a);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m))
}

pub fn binomial2(n: i64) -> i64 {
    n * (n - 1) / 2
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Euler's totient of a prime power `p^r`.
pub fn phi_prime_power(p: u64, r: u32) -> u64 {
    if r == 0 {
        1
    } else {
        (p - 1) * p.pow(r - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_and_powers() {
        assert_eq!(mod_inv(2, 9), Some(5));
        assert_eq!(mod_inv(3, 9), None);
        assert_eq!(mod_inv(-1, 7), Some(6));
        assert_eq!(log_p(81, 3), Some(4));
        assert_eq!(log_p(18, 3), None);
        assert_eq!(prime_of_power(625), Some(5));
        assert_eq!(prime_of_power(20), None);
        assert_eq!(prime_of_power(7), Some(7));
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(phi_prime_power(3, 2), 6);
        assert!(is_prime(7) && !is_prime(9));
    }
}
