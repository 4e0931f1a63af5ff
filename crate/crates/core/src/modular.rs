//! Exact arithmetic mod p: primality, primitive roots, index (discrete log)
//! tables, multiplicative characters represented by exact exponents, and
//! divisor functions.

use crate::error::{Error, Result};

/// Barrett-style reducer for a fixed modulus p < 2^31. Products of two
/// reduced residues fit in u64, so one 128-bit multiply gives the quotient.
#[derive(Clone, Copy, Debug)]
pub struct MulMod {
    p: u64,
    magic: u64, // floor((2^64 - 1) / p)
}

impl MulMod {
    pub fn new(p: u64) -> Self {
        debug_assert!(p >= 2 && p < (1 << 31));
        MulMod {
            p,
            magic: u64::MAX / p,
        }
    }

    #[inline(always)]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline(always)]
    pub fn reduce(&self, t: u64) -> u64 {
        let q = ((t as u128 * self.magic as u128) >> 64) as u64;
        let mut r = t - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    /// (a * b) mod p for a, b already reduced.
    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        self.reduce(a * b)
    }
}

/// a^e mod p via square-and-multiply; p < 2^31 so intermediates fit u64.
pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let m = MulMod::new(p);
    a %= p;
    let mut acc = 1 % p;
    while e != 0 {
        if e & 1 == 1 {
            acc = m.mul(acc, a);
        }
        a = m.mul(a, a);
        e >>= 1;
    }
    acc
}

/// Modular inverse of a mod prime p.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a % p, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all n < 3.3e24 with this base set.
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
    let r = (n - 1).trailing_zeros();
    let d = (n - 1) >> r;
    'base: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u128(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod_u128(mut a: u64, mut e: u64, n: u64) -> u64 {
    a %= n;
    let mut acc = 1u64;
    while e != 0 {
        if e & 1 == 1 {
            acc = mul_mod_u128(acc, a, n);
        }
        a = mul_mod_u128(a, a, n);
        e >>= 1;
    }
    acc
}

/// Ascending primes <= limit. Returns an empty sequence for limit < 2.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Factor n by trial division; returns (prime, exponent) pairs ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
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

/// Least t >= 1 with g^t = 1 mod p; divides p-1.
pub fn mult_order(g: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = g % p;
    if g == 0 {
        return Err(Error::ZeroResidue(0, p));
    }
    let mut t = p - 1;
    for (q, _) in factorize(p - 1) {
        while t % q == 0 && pow_mod(g, t / q, p) == 1 {
            t /= q;
        }
    }
    Ok(t)
}

/// A prime p together with its smallest primitive root and the full index
/// (discrete log) table. Immutable after construction; shared freely.
#[derive(Debug)]
pub struct PrimeContext {
    p: u64,
    g: u64,
    /// ind[x] for x in 1..p; ind[0] is a sentinel (never read).
    ind: Vec<u32>,
    p1_factors: Vec<(u64, u32)>,
}

/// Selects chi_k(x) = e^(2 pi i k ind(x) / (p-1)); k = 0 is principal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterId {
    pub k: u64,
}

impl PrimeContext {
    /// Builds the context. Deterministic: g is the smallest primitive root.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= (1 << 31) {
            return Err(Error::PrimeTooLarge(p));
        }
        let p1_factors = factorize(p - 1);
        let g = (2..p)
            .find(|&g| {
                p1_factors
                    .iter()
                    .all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1)
            })
            .unwrap_or(1); // p = 2 only: empty factor list never reached, g = 1

        let mut ind = vec![0u32; p as usize];
        let m = MulMod::new(p);
        let mut x = 1u64;
        for e in 0..p - 1 {
            ind[x as usize] = e as u32;
            x = m.mul(x, g % p);
        }
        Ok(PrimeContext {
            p,
            g,
            ind,
            p1_factors,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    pub fn p1_factors(&self) -> &[(u64, u32)] {
        &self.p1_factors
    }

    /// Index (discrete log base g) of x, for x not divisible by p.
    #[inline]
    pub fn index_of(&self, x: u64) -> Option<u64> {
        let r = x % self.p;
        if r == 0 {
            None
        } else {
            Some(self.ind[r as usize] as u64)
        }
    }

    pub fn character(&self, k: u64) -> Result<CharacterId> {
        if self.p > 2 && k > self.p - 2 {
            return Err(Error::InvalidParameter(format!(
                "character index {k} out of range [0, {}]",
                self.p - 2
            )));
        }
        Ok(CharacterId { k })
    }

    pub fn principal_character(&self) -> CharacterId {
        CharacterId { k: 0 }
    }

    /// The quadratic (Legendre) character, k = (p-1)/2. For p = 2 this is
    /// the principal character.
    pub fn quadratic_character(&self) -> CharacterId {
        CharacterId { k: (self.p - 1) / 2 }
    }

    /// Exact exponent of chi_k(x) as a (p-1)-th root of unity, or None for
    /// x = 0 mod p. Callers needing a numeric value evaluate
    /// cos/sin(2 pi exponent / (p-1)).
    #[inline]
    pub fn character_exponent(&self, k: CharacterId, x: u64) -> Option<u64> {
        let idx = self.index_of(x)?;
        Some(((k.k as u128 * idx as u128) % (self.p - 1).max(1) as u128) as u64)
    }

    /// Quadratic character value in {-1, 0, 1} via the index parity.
    #[inline]
    pub fn quadratic_value(&self, x: u64) -> i64 {
        match self.index_of(x) {
            None => 0,
            Some(idx) => {
                if self.p == 2 || idx % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// chi_k(x) as a complex number (0 for x = 0 mod p). Display/float use
    /// only; counting identities stay on exact exponents.
    pub fn character_value(&self, k: CharacterId, x: u64) -> (f64, f64) {
        match self.character_exponent(k, x) {
            None => (0.0, 0.0),
            Some(e) => {
                let theta = 2.0 * std::f64::consts::PI * e as f64 / (self.p - 1) as f64;
                (theta.cos(), theta.sin())
            }
        }
    }
}

/// Number of positive divisors of n, by trial factorization.
pub fn divisor_tau(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParameter("tau(0) is undefined".into()));
    }
    Ok(factorize(n).iter().map(|&(_, e)| e as u64 + 1).product())
}

/// Number of ordered k-tuples (d_1, ..., d_k) with product n.
/// tau_2 = tau. Computed as prod over p^a || n of C(a + k - 1, k - 1).
pub fn divisor_tau_k(n: u64, k: u32) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidParameter("tau_k(0) is undefined".into()));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "tau_k requires k >= 2, got {k}"
        )));
    }
    let mut acc: u128 = 1;
    for (_, e) in factorize(n) {
        acc = acc
            .checked_mul(binomial(e as u64 + k as u64 - 1, k as u64 - 1))
            .ok_or_else(|| Error::InvalidParameter("tau_k overflow".into()))?;
    }
    Ok(acc)
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// tau(n) for all n <= limit via a linear sieve; tau[0] = 0.
pub fn divisor_tau_table(limit: u64) -> Result<Vec<u32>> {
    if limit > 10_000_000 {
        return Err(Error::GuardExceeded {
            estimate: limit as f64,
            limit: 1e7,
        });
    }
    let n = limit as usize;
    let mut tau = vec![0u32; n + 1];
    let mut cnt = vec![0u32; n + 1]; // exponent of smallest prime factor
    let mut primes = Vec::new();
    if n >= 1 {
        tau[1] = 1;
    }
    for i in 2..=n {
        if tau[i] == 0 {
            primes.push(i);
            tau[i] = 2;
            cnt[i] = 1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            if i % p == 0 {
                cnt[ip] = cnt[i] + 1;
                tau[ip] = tau[i] / (cnt[i] + 1) * (cnt[i] + 2);
                break;
            } else {
                cnt[ip] = 1;
                tau[ip] = tau[i] * 2;
            }
        }
    }
    Ok(tau)
}
