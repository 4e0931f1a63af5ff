//! Exact evaluation of the solution-counting quantities: the asymmetric
//! counter J, the symmetric counter K (brute-force and convolution paths),
//! subset/interval multiplicative energies, the six-variable prime-twisted
//! counter, exponential-curve hits, product-set sizes and the nu(u)
//! statistic with its second moment.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modular::{inv_mod, is_prime, mult_order, sieve_primes, MulMod, PrimeContext};

/// One counting problem: p, nu, interval length h and a shift per factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceInstance {
    pub p: u64,
    pub nu: u32,
    pub h: u64,
    pub shifts: Vec<u64>,
}

impl CongruenceInstance {
    pub fn new(p: u64, nu: u32, h: u64, shifts: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= (1 << 31) {
            return Err(Error::PrimeTooLarge(p));
        }
        if nu < 1 {
            return Err(Error::InvalidParameter("nu must be >= 1".into()));
        }
        if h < 1 || h > p - 1 {
            return Err(Error::InvalidParameter(format!(
                "h = {h} outside [1, p-1] for p = {p}"
            )));
        }
        if shifts.len() != nu as usize {
            return Err(Error::InvalidParameter(format!(
                "expected {nu} shifts, got {}",
                shifts.len()
            )));
        }
        if let Some(s) = shifts.iter().find(|&&s| s >= p) {
            return Err(Error::InvalidParameter(format!(
                "shift {s} not reduced mod {p}"
            )));
        }
        Ok(CongruenceInstance { p, nu, h, shifts })
    }

    pub fn uniform(p: u64, nu: u32, h: u64, s: u64) -> Result<Self> {
        Self::new(p, nu, h, vec![s % p.max(1); nu as usize])
    }

    /// The common shift when all factors share one, else None.
    pub fn uniform_shift(&self) -> Option<u64> {
        let s = self.shifts[0];
        self.shifts.iter().all(|&t| t == s).then_some(s)
    }
}

/// An interval of consecutive integers [start, start + length - 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub start: i64,
    pub length: u64,
}

impl Interval {
    pub fn new(start: i64, length: u64) -> Self {
        Interval { start, length }
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.length as i64).map(move |k| self.start + k)
    }

    /// Residues mod p, rejecting intervals longer than p (which would wrap
    /// and turn the set into a multiset).
    pub fn residues(&self, p: u64) -> Result<Vec<u64>> {
        if self.length > p {
            return Err(Error::IntervalWraps {
                start: self.start,
                length: self.length,
                p,
            });
        }
        Ok(self.iter().map(|x| x.rem_euclid(p as i64) as u64).collect())
    }

    /// Number of integers in the interval congruent to r mod p.
    pub fn count_residue(&self, r: u64, p: u64) -> u64 {
        if self.length == 0 {
            return 0;
        }
        let lo = self.start;
        let hi = self.start + self.length as i64 - 1;
        // count k in [lo, hi] with k = r mod p
        let first = lo + (r as i64 - lo).rem_euclid(p as i64);
        if first > hi {
            0
        } else {
            ((hi - first) as u64 / p) + 1
        }
    }
}

/// Per-level factor values (x + s_j) mod p for x in [1, h], zeros removed:
/// a tuple containing a zero factor never contributes to any counter here.
fn factor_values(p: u64, h: u64, s: u64) -> Vec<u64> {
    let m = MulMod::new(p);
    (1..=h)
        .map(|x| m.reduce(x + s))
        .filter(|&v| v != 0)
        .collect()
}

/// Visits the product of every tuple in [1,h]^nu with all factors nonzero.
/// Tight inner loop: the last level multiplies into a running product.
fn for_each_product<F: FnMut(u64)>(p: u64, levels: &[Vec<u64>], f: &mut F) {
    let m = MulMod::new(p);
    match levels.len() {
        0 => {}
        1 => {
            for &v in &levels[0] {
                f(v);
            }
        }
        _ => {
            // depth-first over the prefix levels, tight loop on the last
            let last = &levels[levels.len() - 1];
            let rest = &levels[..levels.len() - 1];
            fn rec<F: FnMut(u64)>(
                m: &MulMod,
                rest: &[Vec<u64>],
                last: &[u64],
                depth: usize,
                prod: u64,
                f: &mut F,
            ) {
                if depth == rest.len() {
                    for &v in last {
                        f(m.mul(prod, v));
                    }
                } else {
                    for &v in &rest[depth] {
                        rec(m, rest, last, depth + 1, m.mul(prod, v), f);
                    }
                }
            }
            rec(&m, rest, last, 0, 1, f);
        }
    }
}

/// Histogram over F_p^* of tuple products: hist[lambda] = #{x_vec : prod = lambda}.
fn product_histogram(inst: &CongruenceInstance) -> Vec<u64> {
    let levels: Vec<Vec<u64>> = inst
        .shifts
        .iter()
        .map(|&s| factor_values(inst.p, inst.h, s))
        .collect();
    let mut hist = vec![0u64; inst.p as usize];
    for_each_product(inst.p, &levels, &mut |prod| hist[prod as usize] += 1);
    hist
}

fn sum_of_squares(hist: &[u64], skip_zero: bool) -> BigUint {
    let mut acc: u128 = 0;
    let mut big = BigUint::zero();
    let mut overflowed = false;
    for (r, &c) in hist.iter().enumerate() {
        if skip_zero && r == 0 {
            continue;
        }
        if c == 0 {
            continue;
        }
        let sq = (c as u128).checked_mul(c as u128);
        match (overflowed, sq) {
            (false, Some(sq)) => match acc.checked_add(sq) {
                Some(next) => acc = next,
                None => {
                    big = BigUint::from(acc) + BigUint::from(sq);
                    overflowed = true;
                }
            },
            _ => {
                big += BigUint::from(c) * BigUint::from(c);
                overflowed = true;
            }
        }
    }
    if overflowed {
        big
    } else {
        BigUint::from(acc)
    }
}

/// J_nu(p, h, s; lambda): tuples in [1,h]^nu with prod (x_i + s) = lambda != 0.
pub fn count_j(inst: &CongruenceInstance, lambda: u64) -> Result<BigUint> {
    let s = inst.uniform_shift().ok_or_else(|| {
        Error::InvalidParameter("count_j requires a uniform shift".into())
    })?;
    if lambda % inst.p == 0 {
        return Err(Error::ZeroResidue(lambda, inst.p));
    }
    let lambda = lambda % inst.p;
    let levels: Vec<Vec<u64>> =
        vec![factor_values(inst.p, inst.h, s); inst.nu as usize];
    let mut count: u64 = 0;
    for_each_product(inst.p, &levels, &mut |prod| {
        if prod == lambda {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// J_nu(p, h, s; lambda) for every lambda at once: one enumeration pass.
/// Entry 0 of the result is unused (always 0).
pub fn count_j_all(inst: &CongruenceInstance) -> Result<Vec<u64>> {
    if inst.uniform_shift().is_none() {
        return Err(Error::InvalidParameter(
            "count_j_all requires a uniform shift".into(),
        ));
    }
    Ok(product_histogram(inst))
}

/// K_nu(p, h, s_vec) by direct enumeration: hash left-product multiplicities
/// per lambda and sum squares. O(h^nu) time, O(p) memory.
pub fn count_k_bruteforce(inst: &CongruenceInstance) -> Result<BigUint> {
    let hist = product_histogram(inst);
    Ok(sum_of_squares(&hist, true))
}

/// K_nu(p, h, s_vec) via exact integer convolution on the index group
/// Z_{p-1}: push each interval indicator through ind, convolve nu-fold,
/// and sum the squared per-class counts. Equivalent to the orthogonality
/// identity (1/(p-1)) sum_chi prod_j |sum_x chi(x + s_j)|^2 without floats.
pub fn count_k_convolution(inst: &CongruenceInstance) -> Result<BigUint> {
    let ctx = PrimeContext::new(inst.p)?;
    count_k_convolution_with(&ctx, inst)
}

/// Convolution path reusing a prebuilt context (hot sweeps).
pub fn count_k_convolution_with(ctx: &PrimeContext, inst: &CongruenceInstance) -> Result<BigUint> {
    if ctx.p() != inst.p {
        return Err(Error::InvalidParameter("context/instance prime mismatch".into()));
    }
    let p = inst.p;
    let n = (p - 1) as usize;
    let mut acc: Option<Vec<u128>> = None;
    for &s in &inst.shifts {
        let mut indicator = vec![0u128; n];
        for v in factor_values(p, inst.h, s) {
            indicator[ctx.index_of(v).unwrap() as usize] += 1;
        }
        acc = Some(match acc {
            None => indicator,
            Some(prev) => cyclic_convolve(&prev, &indicator),
        });
    }
    let classes = acc.unwrap_or_default();
    // sum of squares <= (sum)^2 = h^(2 nu); u128 fast path when that fits
    let log2_total: f64 = 2.0 * inst.nu as f64 * (inst.h.max(2) as f64).log2();
    if log2_total < 126.0 {
        let mut sum: u128 = 0;
        for &c in &classes {
            sum += c * c;
        }
        Ok(BigUint::from(sum))
    } else {
        let mut sum = BigUint::zero();
        for &c in &classes {
            if c != 0 {
                sum += BigUint::from(c) * BigUint::from(c);
            }
        }
        Ok(sum)
    }
}

fn cyclic_convolve(a: &[u128], b: &[u128]) -> Vec<u128> {
    let n = a.len();
    let mut out = vec![0u128; n];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                let mut k = i + j;
                if k >= n {
                    k -= n;
                }
                out[k] += ai * bj;
            }
        }
    }
    out
}

/// K_nu with path dispatch: convolution once h^nu > 8 p, else enumeration.
pub fn count_k(inst: &CongruenceInstance) -> Result<BigUint> {
    let work = (inst.h as f64).powi(inst.nu as i32);
    if work > 8.0 * inst.p as f64 {
        count_k_convolution(inst)
    } else {
        count_k_bruteforce(inst)
    }
}

/// Both sides of the vector-shift comparison
/// K_nu(p,h,s_vec) <= prod_j K_nu(p,h,s_j)^(1/nu).
#[derive(Debug, Clone)]
pub struct KssHolderCheck {
    pub lhs: BigUint,
    pub rhs: f64,
    pub holds: bool,
}

pub fn check_kss_holder(inst: &CongruenceInstance) -> Result<KssHolderCheck> {
    let lhs = count_k(inst)?;
    let mut product = BigUint::one();
    let mut log_sum = 0.0f64;
    for &s in &inst.shifts {
        let kj = count_k(&CongruenceInstance::uniform(inst.p, inst.nu, inst.h, s)?)?;
        log_sum += ln_biguint(&kj);
        product *= kj;
    }
    // lhs <= (prod K_j)^(1/nu)  <=>  lhs^nu <= prod K_j, compared exactly
    let holds = lhs.pow(inst.nu) <= product;
    Ok(KssHolderCheck {
        lhs,
        rhs: (log_sum / inst.nu as f64).exp(),
        holds,
    })
}

/// Natural log of a BigUint, stable for values far beyond f64 range.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        return (u64::try_from(x.clone()).unwrap() as f64).ln();
    }
    let top = x >> ((bits - 53) as usize);
    (u64::try_from(top).unwrap() as f64).ln() + (bits - 53) as f64 * std::f64::consts::LN_2
}

/// Multiplicative energy of a subset X of [1, h] under shift s:
/// quadruples with (x1+s)(x2+s) = (y1+s)(y2+s) != 0.
pub fn count_subset_energy(p: u64, xs: &[u64], s: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if xs.is_empty() {
        return Err(Error::InvalidParameter("subset must be nonempty".into()));
    }
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != xs.len() {
        return Err(Error::InvalidParameter("subset contains duplicates".into()));
    }
    if sorted.iter().any(|&x| x == 0 || x > p - 1) {
        return Err(Error::InvalidParameter(format!(
            "subset elements must lie in [1, {}]",
            p - 1
        )));
    }
    let m = MulMod::new(p);
    let vals: Vec<u64> = sorted
        .iter()
        .map(|&x| m.reduce(x + s % p))
        .filter(|&v| v != 0)
        .collect();
    let mut hist = vec![0u64; p as usize];
    for &a in &vals {
        for &b in &vals {
            hist[m.mul(a, b) as usize] += 1;
        }
    }
    Ok(sum_of_squares(&hist, true))
}

/// Interval-times-set multiplicative energy: quadruples in I x I x Y x Y
/// with x1 y1 = x2 y2 mod p. Products equal to 0 are allowed here (I may
/// contain 0 mod p); 0 in Y is rejected.
pub fn count_interval_energy(p: u64, i: &Interval, ys: &[u64]) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let xres = i.residues(p)?;
    let mut yres: Vec<u64> = ys.iter().map(|&y| y % p).collect();
    yres.sort_unstable();
    let len_before = yres.len();
    yres.dedup();
    if yres.len() != len_before {
        return Err(Error::InvalidParameter(
            "set Y contains duplicate residues".into(),
        ));
    }
    if yres.iter().any(|&y| y == 0) {
        return Err(Error::ZeroResidue(0, p));
    }
    if yres.is_empty() {
        return Ok(BigUint::zero());
    }
    let m = MulMod::new(p);
    let mut hist = vec![0u64; p as usize];
    for &x in &xres {
        for &y in &yres {
            hist[m.mul(x, y) as usize] += 1;
        }
    }
    Ok(sum_of_squares(&hist, false))
}

/// The six-variable counter of the prime-twisted congruence
/// x2 z2 (s + x1 y1) = x1 z1 (s + x2 y2) mod p with x in [1,X], y in [1,Y]
/// and z prime in (Z/2, Z]. Counted exactly via the value histogram of
/// v(x,y,z) = z^{-1} (s x^{-1} + y) mod p.
pub fn count_xyz(p: u64, s: u64, x_max: u64, y_max: u64, z_max: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if s % p == 0 {
        return Err(Error::ZeroResidue(s, p));
    }
    if x_max < 1 {
        return Err(Error::InvalidParameter("X must be >= 1".into()));
    }
    if z_max < 2 || z_max > y_max {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= Z <= Y, got Z = {z_max}, Y = {y_max}"
        )));
    }
    if x_max >= p || y_max >= p {
        return Err(Error::IntervalWraps {
            start: 1,
            length: x_max.max(y_max),
            p,
        });
    }
    let primes: Vec<u64> = sieve_primes(z_max)
        .into_iter()
        .filter(|&z| 2 * z > z_max)
        .collect();
    let m = MulMod::new(p);
    let s = s % p;
    let mut hist = vec![0u64; p as usize];
    for x in 1..=x_max {
        let sx = m.mul(s, inv_mod(x, p));
        for &z in &primes {
            let zin = inv_mod(z, p);
            let mut w = sx;
            for _ in 1..=y_max {
                w += 1;
                if w == p {
                    w = 0;
                }
                hist[m.mul(zin, w) as usize] += 1;
            }
        }
    }
    Ok(sum_of_squares(&hist, false))
}

/// R_{a,g,p}(I1, I2): pairs (x, z) with x = a g^z mod p, x running over the
/// integers of I1 and z over I2. Computed by a z-loop and independently by
/// an x-loop through the index table; the two must agree.
pub fn count_exp_curve(
    ctx: &PrimeContext,
    g: u64,
    a: u64,
    i1: &Interval,
    i2: &Interval,
) -> Result<BigUint> {
    let p = ctx.p();
    let g = g % p;
    if g == 0 {
        return Err(Error::ZeroResidue(0, p));
    }
    if a % p == 0 {
        return Err(Error::ZeroResidue(a, p));
    }
    let a = a % p;
    let t = mult_order(g, p)?;
    if i2.length > t {
        return Err(Error::InvalidParameter(format!(
            "interval I2 of length {} exceeds the order t = {t} of g = {g}",
            i2.length
        )));
    }
    let m = MulMod::new(p);

    // z-loop
    let mut by_z: u64 = 0;
    if i2.length > 0 {
        let e0 = i2.start.rem_euclid(t as i64) as u64;
        let mut gz = m.mul(a, crate::modular::pow_mod(g, e0, p));
        for step in 0..i2.length {
            if step > 0 {
                gz = m.mul(gz, g);
            }
            by_z += i1.count_residue(gz, p);
        }
    }

    // x-loop via the index table: g^z = x / a  <=>  z * ind(g) = ind(x/a) mod p-1
    let mut by_x: u64 = 0;
    let e = ctx.index_of(g).unwrap();
    let p1 = p - 1;
    let gcd_e = gcd(e, p1);
    debug_assert_eq!(p1 / gcd_e, t);
    let a_inv = inv_mod(a, p);
    for x in i1.iter() {
        let xr = x.rem_euclid(p as i64) as u64;
        if xr == 0 {
            continue;
        }
        let d = ctx.index_of(m.mul(xr, a_inv)).unwrap();
        if d % gcd_e != 0 {
            continue;
        }
        // z = (d / gcd) * (e / gcd)^{-1} mod t, all solutions z mod t
        let z0 = if t == 1 {
            0
        } else {
            mul_mod_any(d / gcd_e, inv_mod_any(e / gcd_e, t), t)
        };
        by_x += i2.count_residue(z0, t);
    }

    if by_z != by_x {
        return Err(Error::CrossCheckFailed(format!(
            "exp-curve loops disagree: z-loop {by_z}, x-loop {by_x}"
        )));
    }
    Ok(BigUint::from(by_z))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mul_mod_any(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Inverse mod arbitrary n (gcd(a, n) = 1) by extended Euclid.
fn inv_mod_any(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(n as i128) as u64
}

/// Cardinality of the nu-fold product set of A = {x + s : 1 <= x <= h} in F_p.
/// Zero products are counted when 0 lies in A.
pub fn product_set_size(p: u64, h: u64, s: u64, nu: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if nu < 1 {
        return Err(Error::InvalidParameter("nu must be >= 1".into()));
    }
    if h < 1 || h > p - 1 {
        return Err(Error::InvalidParameter(format!(
            "h = {h} outside [1, p-1] for p = {p}"
        )));
    }
    let m = MulMod::new(p);
    let base: Vec<u64> = (1..=h).map(|x| m.reduce(x + s % p)).collect();
    let mut current = vec![false; p as usize];
    for &v in &base {
        current[v as usize] = true;
    }
    for _ in 1..nu {
        let mut next = vec![false; p as usize];
        for (r, &set) in current.iter().enumerate() {
            if set {
                for &v in &base {
                    next[m.mul(r as u64, v) as usize] = true;
                }
            }
        }
        current = next;
    }
    Ok(current.iter().filter(|&&b| b).count() as u64)
}

fn nu_histogram(p: u64, a_interval: &Interval, bs: &[u64]) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut bres: Vec<u64> = bs.iter().map(|&b| b % p).collect();
    bres.sort_unstable();
    let before = bres.len();
    bres.dedup();
    if bres.len() != before {
        return Err(Error::InvalidParameter(
            "set B contains duplicate residues".into(),
        ));
    }
    if bres.len() < 2 {
        return Err(Error::InvalidParameter(
            "set B needs at least 2 distinct residues mod p".into(),
        ));
    }
    let ares = a_interval.residues(p)?;
    let m = MulMod::new(p);
    let mut hist = vec![0u64; p as usize];
    for &b1 in &bres {
        for &b2 in &bres {
            if b1 == b2 {
                continue;
            }
            let dinv = inv_mod((b1 + p - b2) % p, p);
            for &a in &ares {
                hist[m.mul(a, dinv) as usize] += 1;
            }
        }
    }
    Ok(hist)
}

/// nu(u) = #{(a, b1, b2) : a in I, b1 != b2 in B, a (b1 - b2)^{-1} = u mod p}.
pub fn nu_statistic(p: u64, a_interval: &Interval, bs: &[u64], u: u64) -> Result<u64> {
    let hist = nu_histogram(p, a_interval, bs)?;
    Ok(hist[(u % p) as usize])
}

/// sum_u nu(u)^2.
pub fn nu_second_moment(p: u64, a_interval: &Interval, bs: &[u64]) -> Result<BigUint> {
    let hist = nu_histogram(p, a_interval, bs)?;
    Ok(sum_of_squares(&hist, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn count_j_examples() {
        let i = CongruenceInstance::uniform(7, 1, 3, 0).unwrap();
        assert_eq!(count_j(&i, 2).unwrap(), big(1));
        let i = CongruenceInstance::uniform(7, 2, 3, 0).unwrap();
        assert_eq!(count_j(&i, 1).unwrap(), big(1)); // only (1,1)
        assert_eq!(count_j(&i, 2).unwrap(), big(3)); // (1,2),(2,1),(3,3)
        assert!(matches!(
            count_j(&i, 0),
            Err(Error::ZeroResidue(0, 7))
        ));
        assert!(matches!(count_j(&i, 7), Err(Error::ZeroResidue(7, 7))));
    }

    #[test]
    fn count_k_examples() {
        let i = CongruenceInstance::uniform(7, 1, 3, 0).unwrap();
        assert_eq!(count_k_bruteforce(&i).unwrap(), big(3));
        assert_eq!(count_k_convolution(&i).unwrap(), big(3));
        let i = CongruenceInstance::uniform(5, 2, 2, 0).unwrap();
        assert_eq!(count_k_bruteforce(&i).unwrap(), big(6));
        assert_eq!(count_k_convolution(&i).unwrap(), big(6));
        let i = CongruenceInstance::uniform(7, 2, 3, 0).unwrap();
        assert_eq!(count_k_bruteforce(&i).unwrap(), big(19));
        assert_eq!(count_k_convolution(&i).unwrap(), big(19));
    }

    #[test]
    fn moment_identity_small() {
        // K = sum_lambda J(lambda)^2, with J evaluated one lambda at a time
        for p in [5u64, 7, 11] {
            for nu in 1..=2u32 {
                for s in 0..p {
                    for h in 1..p {
                        let inst = CongruenceInstance::uniform(p, nu, h, s).unwrap();
                        let k = count_k_bruteforce(&inst).unwrap();
                        let mut total = BigUint::zero();
                        for lambda in 1..p {
                            let j = count_j(&inst, lambda).unwrap();
                            total += &j * &j;
                        }
                        assert_eq!(k, total, "p={p} nu={nu} h={h} s={s}");
                    }
                }
            }
        }
    }

    #[test]
    fn holder_examples() {
        let uniform = CongruenceInstance::uniform(7, 2, 3, 4).unwrap();
        let c = check_kss_holder(&uniform).unwrap();
        assert!(c.holds);
        // identical factors: equality up to float display
        assert!((ln_biguint(&c.lhs).exp() - c.rhs).abs() < 1e-9 * c.rhs.max(1.0));

        let mixed = CongruenceInstance::new(7, 2, 3, vec![0, 1]).unwrap();
        assert!(check_kss_holder(&mixed).unwrap().holds);
        let mixed = CongruenceInstance::new(11, 2, 4, vec![2, 9]).unwrap();
        let c = check_kss_holder(&mixed).unwrap();
        assert!(c.holds);
        // brute-force both sides for the record
        let lhs = count_k_bruteforce(&mixed).unwrap();
        assert_eq!(c.lhs, lhs);
    }

    #[test]
    fn subset_energy_examples() {
        assert_eq!(count_subset_energy(5, &[1, 2], 0).unwrap(), big(6));
        // X = [1,h] coincides with count_K
        for p in [7u64, 11] {
            for s in 0..p {
                for h in 1..p.min(6) {
                    let xs: Vec<u64> = (1..=h).collect();
                    let inst = CongruenceInstance::uniform(p, 2, h, s).unwrap();
                    assert_eq!(
                        count_subset_energy(p, &xs, s).unwrap(),
                        count_k_bruteforce(&inst).unwrap()
                    );
                }
            }
        }
        // singleton
        assert_eq!(count_subset_energy(7, &[1], 2).unwrap(), big(1));
        assert_eq!(count_subset_energy(7, &[1], 6).unwrap(), big(0)); // 1+6=0 mod 7
    }

    #[test]
    fn interval_energy_examples() {
        let i = Interval::new(1, 2);
        assert_eq!(count_interval_energy(5, &i, &[1, 2]).unwrap(), big(6));
        // #Y = 1: count = #I when I has distinct residues
        let i = Interval::new(1, 3);
        assert_eq!(count_interval_energy(7, &i, &[2]).unwrap(), big(3));
        // exhaustive 4-fold oracle
        let i = Interval::new(1, 3);
        let ys = [1u64, 2];
        let mut oracle = 0u64;
        for x1 in 1..=3u64 {
            for x2 in 1..=3u64 {
                for &y1 in &ys {
                    for &y2 in &ys {
                        if (x1 * y1) % 7 == (x2 * y2) % 7 {
                            oracle += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count_interval_energy(7, &i, &ys).unwrap(), big(oracle));
        assert!(count_interval_energy(7, &i, &[7]).is_err()); // 0 in Y
    }

    #[test]
    fn xyz_examples_and_oracle() {
        assert_eq!(count_xyz(11, 1, 1, 2, 2).unwrap(), big(2));
        assert_eq!(count_xyz(11, 1, 1, 1, 2).is_err(), true); // Z > Y
        assert_eq!(count_xyz(11, 1, 1, 2, 2).unwrap(), big(2));
        assert!(count_xyz(11, 0, 1, 2, 2).is_err());

        // 6-fold loop oracle
        let (p, s, xm, ym, zm) = (13u64, 2u64, 2u64, 3u64, 3u64);
        let primes: Vec<u64> = sieve_primes(zm).into_iter().filter(|&z| 2 * z > zm).collect();
        let mut oracle = 0u64;
        for x1 in 1..=xm {
            for x2 in 1..=xm {
                for y1 in 1..=ym {
                    for y2 in 1..=ym {
                        for &z1 in &primes {
                            for &z2 in &primes {
                                let lhs = x2 * z2 % p * ((s + x1 * y1) % p) % p;
                                let rhs = x1 * z1 % p * ((s + x2 * y2) % p) % p;
                                if lhs == rhs {
                                    oracle += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(count_xyz(p, s, xm, ym, zm).unwrap(), big(oracle));
    }

    #[test]
    fn exp_curve_examples() {
        let ctx = PrimeContext::new(11).unwrap();
        let r = count_exp_curve(&ctx, 2, 1, &Interval::new(1, 3), &Interval::new(1, 3)).unwrap();
        assert_eq!(r, big(1));
        let r = count_exp_curve(&ctx, 2, 1, &Interval::new(1, 10), &Interval::new(1, 10)).unwrap();
        assert_eq!(r, big(10));
        // g = 3 has order 5 mod 11
        let r = count_exp_curve(&ctx, 3, 2, &Interval::new(1, 4), &Interval::new(1, 5)).unwrap();
        // direct loop oracle
        let mut oracle = 0u64;
        for z in 1..=5u64 {
            let val = 2 * crate::modular::pow_mod(3, z, 11) % 11;
            for x in 1..=4u64 {
                if x % 11 == val {
                    oracle += 1;
                }
            }
        }
        assert_eq!(r, big(oracle));
        // h2 > order rejected
        assert!(count_exp_curve(&ctx, 3, 2, &Interval::new(1, 4), &Interval::new(1, 6)).is_err());
        assert!(count_exp_curve(&ctx, 2, 0, &Interval::new(1, 3), &Interval::new(1, 3)).is_err());
    }

    #[test]
    fn product_set_examples() {
        assert_eq!(product_set_size(5, 2, 0, 2).unwrap(), 3); // {1,2,4}
        assert_eq!(product_set_size(7, 1, 0, 5).unwrap(), 1);
        // O(h^2) hash-set oracle
        let p = 101u64;
        let h = 10u64;
        let mut set = std::collections::BTreeSet::new();
        for a in 1..=h {
            for b in 1..=h {
                set.insert(a * b % p);
            }
        }
        assert_eq!(product_set_size(p, h, 0, 2).unwrap(), set.len() as u64);
    }

    #[test]
    fn nu_statistic_examples() {
        // #B = 2, I = {1}: two nonzero nu values of 1 each, second moment 2
        let i = Interval::new(1, 1);
        let m2 = nu_second_moment(7, &i, &[1, 3]).unwrap();
        assert_eq!(m2, big(2));
        // mass identity: sum_u nu(u) = #I * #B * (#B - 1)
        let i = Interval::new(1, 2);
        let bs = [1u64, 3];
        let mut mass = 0u64;
        for u in 0..7u64 {
            mass += nu_statistic(7, &i, &bs, u).unwrap();
        }
        assert_eq!(mass, 2 * 2 * 1);
        // 3-fold loop oracle for the second moment
        let mut hist = vec![0u64; 7];
        for a in 1..=2u64 {
            for &b1 in &bs {
                for &b2 in &bs {
                    if b1 != b2 {
                        let d = (b1 + 7 - b2) % 7;
                        let u = a * inv_mod(d, 7) % 7;
                        hist[u as usize] += 1;
                    }
                }
            }
        }
        let oracle: u64 = hist.iter().map(|c| c * c).sum();
        assert_eq!(nu_second_moment(7, &i, &bs).unwrap(), big(oracle));
        // all elements congruent -> rejection
        assert!(nu_second_moment(7, &i, &[1, 8]).is_err());
        assert!(nu_second_moment(7, &i, &[1]).is_err());
    }

    #[test]
    fn interval_residue_counts() {
        let i = Interval::new(-3, 10);
        for r in 0..7u64 {
            let oracle = i.iter().filter(|x| x.rem_euclid(7) as u64 == r).count() as u64;
            assert_eq!(i.count_residue(r, 7), oracle, "r={r}");
        }
        assert_eq!(Interval::new(5, 0).count_residue(0, 7), 0);
    }

    #[test]
    fn wrap_rejection() {
        let i = Interval::new(0, 9);
        assert!(matches!(
            i.residues(7),
            Err(Error::IntervalWraps { .. })
        ));
    }
}
