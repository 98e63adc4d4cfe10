//! Small helpers around `BigRational`: the `p/q` text form used in every
//! serialized payload, and parsing back from it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q`, always with an explicit denominator.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p`, `p/q`, with optional sign on the numerator.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(num))
        }
    }
}

/// Whether `x` equals `base^k` for some integer `k` (possibly negative).
pub fn is_power_of(x: &Q, base: u64) -> bool {
    fn int_power(v: &BigInt, base: &BigInt) -> bool {
        let mut v = v.clone();
        if v <= BigInt::zero() {
            return false;
        }
        while v > BigInt::one() {
            if (&v % base).is_zero() {
                v /= base;
            } else {
                return false;
            }
        }
        true
    }
    if x <= &Q::zero() {
        return false;
    }
    let b = BigInt::from(base);
    let (num, den) = (x.numer(), x.denom());
    (num.is_one() && int_power(den, &b)) || (den.is_one() && int_power(num, &b))
}

/// Whether the denominator of `x` divides some power of `base`.
pub fn denominator_divides_power_of(x: &Q, base: u64) -> bool {
    let mut d = x.denom().clone();
    let b = BigInt::from(base);
    loop {
        let g = num_integer::Integer::gcd(&d, &b);
        if g.is_one() {
            return d.is_one();
        }
        while (&d % &g).is_zero() {
            d /= &g;
        }
    }
}
