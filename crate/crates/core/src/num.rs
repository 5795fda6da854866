//! Small integer helpers used throughout the crate. Everything here is
//! desk-scale: trial division is plenty.

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Prime factorization of `n` as ascending `(p, exponent)` pairs.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut a = 0;
            while n.is_multiple_of(p) {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of `n`, ascending.
pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1];
    for (p, a) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..a {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub(crate) fn primes_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &is_p)| is_p.then_some(i as u64))
        .collect()
}

/// Largest `a` with `q^a <= n` (`q >= 2`, `n >= 1`).
pub(crate) fn ilog(q: u64, n: u64) -> u32 {
    let mut a = 0;
    let mut pw = 1u64;
    while pw <= n / q {
        pw *= q;
        a += 1;
    }
    a
}

/// `q^a`, assuming the result fits comfortably in u64 (desk-scale bounds).
pub(crate) fn pow(q: u64, a: u32) -> u64 {
    q.pow(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_and_divisors() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn ilog_edges() {
        assert_eq!(ilog(2, 256), 8);
        assert_eq!(ilog(2, 255), 7);
        assert_eq!(ilog(3, 1), 0);
    }
}
