use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Accepts `p`, `p/q` and plain decimals such as `-1.25`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = whole.starts_with('-');
        let w: BigInt = match whole.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => digits.parse().ok()?,
        };
        let f: BigInt = frac.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let v = Rational::new(w * &den + f, den);
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator too large for a direct conversion
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = (n - d).clamp(-1000, 1000);
        let scaled = if shift > 0 {
            r / Rational::from_integer(BigInt::one() << (shift as usize))
        } else {
            r * Rational::from_integer(BigInt::one() << ((-shift) as usize))
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// The rational with the smallest denominator (then smallest magnitude) in `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    let a = (hi - &fl).recip();
    let b = (lo - &fl).recip();
    fl + simplest_between(&a, &b).recip()
}

fn small(r: &Rational) -> Option<(i128, i128)> {
    Some((r.numer().to_i32()? as i128, r.denom().to_i32()? as i128))
}

fn from_i128(n: i128, d: i128) -> Rational {
    let g = n.gcd(&d);
    let (n, d) = if g > 1 { (n / g, d / g) } else { (n, d) };
    Rational::new_raw(BigInt::from(n), BigInt::from(d))
}

/// `a - c * b`, in machine integers when every part fits in 32 bits.
pub fn sub_mul(a: &Rational, c: &Rational, b: &Rational) -> Rational {
    match (small(a), small(c), small(b)) {
        (Some((an, ad)), Some((cn, cd)), Some((bn, bd))) => from_i128(an * cd * bd - cn * bn * ad, ad * cd * bd),
        _ => a - c * b,
    }
}

/// `-(c * b)`, with the same fast path.
pub fn neg_mul(c: &Rational, b: &Rational) -> Rational {
    match (small(c), small(b)) {
        (Some((cn, cd)), Some((bn, bd))) => from_i128(-(cn * bn), cd * bd),
        _ => -(c * b),
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational(" -6/8 "), Some(rat(-3, 4)));
        assert_eq!(parse_rational("-1.25"), Some(rat(-5, 4)));
        assert_eq!(parse_rational("-.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn fast_paths_agree_with_big_arithmetic() {
        let big = Rational::new(BigInt::from(1u64 << 40) + 1, BigInt::from(3));
        let vals = [rat(0, 1), rat(-7, 3), rat(5, 12), rat(i32::MAX as i64, 2), rat(1, i32::MAX as i64), big];
        for a in &vals {
            for c in &vals {
                for b in &vals {
                    assert_eq!(sub_mul(a, c, b), a - c * b);
                }
                assert_eq!(neg_mul(a, c), -(a * c));
            }
        }
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(2, 5)), rat(1, 3));
        assert_eq!(simplest_between(&rat(3, 10), &rat(7, 20)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-7, 20), &rat(-3, 10)), rat(-1, 3));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 2)), int(0));
        assert_eq!(simplest_between(&rat(5, 2), &rat(5, 2)), rat(5, 2));
    }

    #[test]
    fn huge_to_f64() {
        let big = Rational::from_integer(BigInt::from(10).pow(400)) / Rational::from_integer(BigInt::from(10).pow(399));
        assert!((to_f64(&big) - 10.0).abs() < 1e-9);
    }
}
