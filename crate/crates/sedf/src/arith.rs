//! Small integer helpers: primality, factorization, divisors.

/// Deterministic primality test by trial division. Intended for n within the
/// field capacity bound, where trial division is instant.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as (prime, multiplicity) pairs, primes ascending.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut mult = 0;
            while n.is_multiple_of(d) {
                n /= d;
                mult += 1;
            }
            out.push((d, mult));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Euler's totient, via the factorization of n.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in prime_factors(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1048573));
        assert!(!is_prime(1048575));
    }

    #[test]
    fn factorization() {
        assert_eq!(prime_factors(242), vec![(2, 1), (11, 2)]);
        assert_eq!(prime_factors(1), vec![]);
        assert_eq!(prime_factors(2_u64.pow(10)), vec![(2, 10)]);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(242), vec![1, 2, 11, 22, 121, 242]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn totient() {
        // phi(242) = phi(2) * phi(121) = 1 * 110
        assert_eq!(euler_phi(242), 110);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(242, 11), 11);
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(gcd(35, 21), 7);
    }
}
