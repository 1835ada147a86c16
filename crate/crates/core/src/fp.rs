//! Arithmetic in the prime field `F_p` on `u32` residues.

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - (b % p) as u64) % p as u64) as u32
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    (p - a % p) % p
}

pub fn pow(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse; `a` must be nonzero mod `p`.
pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "zero has no inverse");
    pow(a, p as u64 - 2, p)
}

/// Reduces a signed integer into `0..p`.
pub fn from_i64(a: i64, p: u32) -> u32 {
    a.rem_euclid(p as i64) as u32
}

/// `binom(n, k) mod p` by Lucas' theorem.
pub fn binomial(mut n: u64, mut k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let pp = p as u64;
    let mut acc = 1u32;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % pp, k % pp);
        if ki > ni {
            return 0;
        }
        acc = mul(acc, small_binomial(ni, ki, p), p);
        n /= pp;
        k /= pp;
    }
    acc
}

fn small_binomial(n: u64, k: u64, p: u32) -> u32 {
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = mul(num, ((n - i) % p as u64) as u32, p);
        den = mul(den, ((i + 1) % p as u64) as u32, p);
    }
    mul(num, inv(den, p), p)
}
