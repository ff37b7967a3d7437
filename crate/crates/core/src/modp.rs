//! Modular arithmetic helpers for odd primes `p < 2^31`.
//!
//! Everything in the crate that works modulo a prime funnels through these
//! functions, so the `p < 2^31` bound is enforced in exactly one place and
//! `a * b` never overflows a `u64`.

/// Largest modulus the crate accepts.
pub const MAX_PRIME: u64 = 1 << 31;

pub fn add_m(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub_m(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn mul_m(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn neg_m(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow_m(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_m(acc, base, p);
        }
        base = mul_m(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`; `None` for `a == 0`.
pub fn inv_m(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(pow_m(a, p - 2, p))
    }
}

/// Deterministic Miller-Rabin, exact for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_m128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_m128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_m128(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_m128(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_m128(acc, base, p);
        }
        base = mul_m128(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Prime factorization by trial division (intended for exponents like `p - 1`).
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Multiplicative order of `a` in `F_p`.
pub fn order_m(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let mut ord = p - 1;
    for (q, _) in factor(p - 1) {
        while ord % q == 0 && pow_m(a, ord / q, p) == 1 {
            ord /= q;
        }
    }
    ord
}

/// Visits every point of projective n-space over `F_p` exactly once, in the
/// canonical form whose first nonzero coordinate is one.
pub fn for_each_projective_point(p: u64, n: usize, mut f: impl FnMut(&[u64])) {
    let mut coords = vec![0u64; n + 1];
    for lead in 0..=n {
        for c in coords.iter_mut() {
            *c = 0;
        }
        coords[lead] = 1;
        'stratum: loop {
            f(&coords);
            // Odometer over the free positions to the right of the leading one.
            let mut pos = n + 1;
            while pos > lead + 1 {
                pos -= 1;
                coords[pos] += 1;
                if coords[pos] < p {
                    continue 'stratum;
                }
                coords[pos] = 0;
            }
            break;
        }
    }
}

/// Number of points of projective n-space over `F_p`.
pub fn projective_point_count(p: u64, n: usize) -> u64 {
    let mut total = 0u64;
    let mut power = 1u64;
    for _ in 0..=n {
        total += power;
        power *= p;
    }
    total
}

/// Rank of a matrix over `F_p` given as rows; consumes the rows.
pub fn fp_row_rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_m(rows[rank][col] % p, p).expect("pivot is nonzero");
        for j in col..width {
            rows[rank][j] = mul_m(rows[rank][j] % p, inv, p);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let factor = rows[r][col] % p;
                for j in col..width {
                    let sub = mul_m(factor, rows[rank][j], p);
                    rows[r][j] = sub_m(rows[r][j] % p, sub, p);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_basics() {
        let p = 61;
        assert_eq!(add_m(60, 5, p), 4);
        assert_eq!(sub_m(3, 10, p), 54);
        assert_eq!(mul_m(13, 13, p), 169 % 61);
        assert_eq!(pow_m(13, 3, p), 1); // 13 is a cube root of unity mod 61
        assert_eq!(inv_m(2, p), Some(31)); // 2 * 31 = 62 = 1 mod 61
        assert_eq!(inv_m(0, p), None);
    }

    #[test]
    fn primality() {
        for p in [5u64, 7, 11, 61, 181, 241, 421, 2147483647] {
            assert!(is_prime(p), "{p} should be prime");
        }
        for n in [1u64, 4, 57, 60, 2147483649] {
            assert!(!is_prime(n), "{n} should be composite");
        }
    }

    #[test]
    fn orders() {
        assert_eq!(order_m(13, 61), 3);
        assert_eq!(order_m(9, 61), 5);
        assert_eq!(order_m(11, 61), 4);
        assert_eq!(factor(60), vec![(2, 2), (3, 1), (5, 1)]);
    }
}
