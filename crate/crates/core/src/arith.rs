//! Small integer helpers for group and element orders.

pub use num_integer::Integer;

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

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n > 0 && n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

/// `n` is 1 or a power of a single prime.
pub fn is_prime_power(n: u64) -> bool {
    n == 1 || prime_divisors(n).len() == 1
}

/// `n` is a power of `p` (including `p⁰ = 1`).
pub fn is_power_of(n: u64, p: u64) -> bool {
    p_part(n, p) == n
}

pub fn coprime(a: u64, b: u64) -> bool {
    a.gcd(&b) == 1
}
