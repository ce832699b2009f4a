//! Small exact-arithmetic helpers shared by the structured-group layer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Odd part of `k`: `k` divided by its largest power-of-two divisor.
pub fn odd_part(k: u64) -> u64 {
    assert!(k >= 1, "odd part needs a positive argument");
    let mut k = k;
    while k % 2 == 0 {
        k /= 2;
    }
    k
}

/// Odd part of `j!`, using `v₂(j!) = j − s₂(j)`.
pub fn odd_part_factorial(j: u64) -> BigInt {
    let mut fact = BigInt::one();
    for i in 2..=j {
        fact *= BigInt::from(i);
    }
    let v2 = j - u64::from(j.count_ones());
    fact >> usize::try_from(v2).expect("valuation fits usize")
}

/// Is `r` a dyadic rational (denominator a power of two, in lowest terms)?
pub fn is_dyadic(r: &BigRational) -> bool {
    let d = r.denom();
    // lowest terms guarantees d ≥ 1; power of two iff d & (d-1) == 0
    (d & &(d - BigInt::one())).is_zero()
}

/// 2-adic valuation of a positive integer.
pub fn val2(n: &BigInt) -> u64 {
    assert!(n.is_positive(), "2-adic valuation of a nonpositive integer");
    let mut v = 0u64;
    let mut n = n.clone();
    while (&n % BigInt::from(2)).is_zero() {
        n /= 2;
        v += 1;
    }
    v
}

/// Inverse of `a` modulo odd `m ≥ 1` (extended Euclid); `m = 1` gives 0.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    use num_integer::Integer;
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Write a dyadic-denominator rational `x = p / 2^a` (lowest terms) and map
/// it into `Z_m` for odd `m` as `p · (2^a)⁻¹ mod m`.
pub fn dyadic_mod(x: &BigRational, m: &BigInt) -> Option<BigInt> {
    use num_integer::Integer;
    if !is_dyadic(x) {
        return None;
    }
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let inv = mod_inverse(x.denom(), m)?;
    Some((x.numer() * inv).mod_floor(m))
}

/// Canonical representative of `x + Z[1/2]` inside `Q/Z[1/2]`: the unique
/// `c/q` with `q` the odd part of the denominator and `0 ≤ c < q`.
pub fn odd_fraction_part(x: &BigRational) -> BigRational {
    use num_integer::Integer;
    let denom = x.denom();
    let mut q = denom.clone();
    let mut two_power = BigInt::one();
    while (&q % BigInt::from(2)).is_zero() {
        q /= 2;
        two_power *= 2;
    }
    if q.is_one() {
        return BigRational::zero();
    }
    let inv = mod_inverse(&two_power, &q).expect("2 is invertible modulo an odd number");
    let c = (x.numer() * inv).mod_floor(&q);
    BigRational::new(c, q)
}
