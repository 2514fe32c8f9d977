//! Word-sized modular arithmetic helpers shared by the p-adic layer.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Euler's criterion; `a` must be coprime to the odd prime `p`.
pub(crate) fn is_quadratic_residue(a: u64, p: u64) -> bool {
    if p == 2 {
        return true;
    }
    pow_mod(a % p, (p - 1) / 2, p) == 1
}

/// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
pub(crate) fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if !is_quadratic_residue(a, p) {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while is_quadratic_residue(z, p) {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Least positive quadratic non-residue modulo an odd prime.
pub(crate) fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&a| !is_quadratic_residue(a, p))
        .expect("every odd prime has a non-residue")
}

/// Splits `n != 0` into `(v, u)` with `n = p^v * u` and `p` not dividing `u`.
pub(crate) fn split_valuation(mut n: i128, p: u64) -> (i64, i128) {
    debug_assert!(n != 0);
    let p = p as i128;
    let mut v = 0i64;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_range() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn modular_inverse_round_trip() {
        for m in [9u64, 25, 243, 1 << 20] {
            for a in 1..200u64 {
                if let Some(b) = inv_mod(a, m) {
                    assert_eq!(mul_mod(a, b, m), 1);
                }
            }
        }
    }

    #[test]
    fn tonelli_matches_brute_force() {
        for p in [3u64, 5, 7, 11, 13, 17, 41, 97] {
            for a in 1..p {
                let brute = (1..p).any(|x| x * x % p == a);
                match sqrt_mod_prime(a, p) {
                    Some(r) => {
                        assert!(brute);
                        assert_eq!(r * r % p, a);
                    }
                    None => assert!(!brute),
                }
            }
        }
    }

    #[test]
    fn least_nonresidues() {
        assert_eq!(least_nonresidue(3), 2);
        assert_eq!(least_nonresidue(5), 2);
        assert_eq!(least_nonresidue(7), 3);
        assert_eq!(least_nonresidue(41), 3);
    }
}
