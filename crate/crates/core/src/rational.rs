//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qint(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

/// Parses `"7"`, `"-3/4"` (normalized on the way in).
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `p/q` with `q > 0` and `gcd(p, q) = 1`; integers print without a denominator.
pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn gcd_of_integers<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Smallest integer `s` with `s*s >= x` for `x >= 0`.
pub fn ceil_sqrt(x: &BigInt) -> BigInt {
    if !x.is_positive() {
        return BigInt::zero();
    }
    let s = x.sqrt();
    if &(&s * &s) == x {
        s
    } else {
        s + 1
    }
}

/// Integers `y` with `(y - center)^2 <= radius_sq`, as an inclusive range.
pub fn integer_window(center: &Q, radius_sq: &Q) -> Option<(BigInt, BigInt)> {
    if radius_sq.is_negative() {
        return None;
    }
    let bound = ceil_sqrt(&radius_sq.ceil().to_integer());
    let fits = |y: &BigInt| {
        let t = qint(y) - center;
        &(&t * &t) <= radius_sq
    };
    let mut lo = center.floor().to_integer() - &bound - 1;
    let mut hi = center.ceil().to_integer() + &bound + 1;
    while lo <= hi && !fits(&lo) {
        lo += 1;
    }
    while hi >= lo && !fits(&hi) {
        hi -= 1;
    }
    (lo <= hi).then_some((lo, hi))
}

/// Exact rational square root when one exists.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&(&sn * &sn) == n && &(&sd * &sd) == d).then(|| Q::new(sn, sd))
}
