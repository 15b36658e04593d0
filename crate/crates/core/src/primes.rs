//! Deterministic sieve of Eratosthenes and the small helpers built on it.

/// Boolean primality table for `0..=limit`.
#[derive(Clone, Debug)]
pub struct Sieve {
    is_prime: Vec<bool>,
}

impl Sieve {
    pub fn new(limit: usize) -> Self {
        let mut is_prime = vec![true; limit + 1];
        is_prime[0] = false;
        if limit >= 1 {
            is_prime[1] = false;
        }
        let mut i = 2;
        while i * i <= limit {
            if is_prime[i] {
                let mut j = i * i;
                while j <= limit {
                    is_prime[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        Sieve { is_prime }
    }

    pub fn limit(&self) -> usize {
        self.is_prime.len() - 1
    }

    pub fn is_prime(&self, n: usize) -> bool {
        self.is_prime.get(n).copied().unwrap_or(false)
    }

    /// Primes `<= bound` in ascending order (bound is clamped to the sieve limit).
    pub fn primes_up_to(&self, bound: usize) -> impl Iterator<Item = usize> + '_ {
        let end = bound.min(self.limit());
        (2..=end).filter(move |&k| self.is_prime[k])
    }

    pub fn primes(&self) -> Vec<usize> {
        self.primes_up_to(self.limit()).collect()
    }
}

/// Trial-division primality, used to validate user-supplied moduli.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let s = Sieve::new(30);
        assert_eq!(s.primes(), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!s.is_prime(31));
    }

    #[test]
    fn tiny_limits() {
        assert!(Sieve::new(0).primes().is_empty());
        assert!(Sieve::new(1).primes().is_empty());
        assert_eq!(Sieve::new(2).primes(), vec![2]);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let s = Sieve::new(2000);
        for n in 0..=2000u64 {
            assert_eq!(s.is_prime(n as usize), is_prime_u64(n), "n = {n}");
        }
    }
}
