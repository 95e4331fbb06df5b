//! Exact rational scalars.
//!
//! All construction and verification arithmetic in this crate is exact;
//! `f64` shows up only in sampling heuristics and plotting. Searched
//! constants are kept dyadic (denominator a power of two) so coefficient
//! bit-growth stays additive along products.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics on `d = 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / 2^log2_den`.
pub fn dyadic(n: i64, log2_den: u32) -> Rational {
    Rational::new(BigInt::from(n), BigInt::one() << log2_den)
}

/// Canonical textual form, always `num/den` with positive denominator
/// (integers render as `n/1`).
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `num/den` or a bare integer. Decimal literals are rejected here;
/// see [`parse_decimal`].
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let numer: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let denom: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::new(numer, denom))
    } else if s.contains('.') {
        Err(Error::Parse(format!(
            "decimal literal {s:?} rejected; pass --allow-decimal to convert exactly"
        )))
    } else {
        let n: BigInt = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational literal {s:?}")))?;
        Ok(Rational::from_integer(n))
    }
}

/// Parses a decimal literal (`-1.25`) into the exact rational it denotes.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (intpart, fracpart) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => return parse_rational(s),
    };
    if fracpart.is_empty() || !fracpart.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad decimal literal {s:?}")));
    }
    let neg = intpart.starts_with('-');
    let intpart = if intpart.is_empty() || intpart == "-" { "0" } else { intpart };
    let whole: BigInt = intpart
        .parse()
        .map_err(|_| Error::Parse(format!("bad decimal literal {s:?}")))?;
    let frac: BigInt = fracpart
        .parse()
        .map_err(|_| Error::Parse(format!("bad decimal literal {s:?}")))?;
    let scale = BigInt::from(10u32).pow(fracpart.len() as u32);
    let mut numer = whole.abs() * &scale + frac;
    if neg {
        numer = -numer;
    }
    Ok(Rational::new(numer, scale))
}

/// Parses either syntax depending on `allow_decimal`.
pub fn parse_rational_opt_decimal(s: &str, allow_decimal: bool) -> Result<Rational> {
    if allow_decimal && s.contains('.') {
        parse_decimal(s)
    } else {
        parse_rational(s)
    }
}

/// Largest dyadic `k/2^bits <= x`.
pub fn round_dyadic_down(x: &Rational, bits: u32) -> Rational {
    let scaled = x * Rational::from_integer(BigInt::one() << bits);
    Rational::new(scaled.floor().to_integer(), BigInt::one() << bits)
}

/// Smallest dyadic `k/2^bits >= x`.
pub fn round_dyadic_up(x: &Rational, bits: u32) -> Rational {
    let scaled = x * Rational::from_integer(BigInt::one() << bits);
    Rational::new(scaled.ceil().to_integer(), BigInt::one() << bits)
}

/// Nearest dyadic with denominator `2^bits` (ties toward zero).
pub fn round_dyadic_nearest(x: &Rational, bits: u32) -> Rational {
    let scaled = x * Rational::from_integer(BigInt::one() << bits);
    Rational::new(scaled.round().to_integer(), BigInt::one() << bits)
}

/// Dyadic lower bound of `sqrt(x)` with `bits` fractional bits; `x >= 0`.
pub fn sqrt_lower(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return Rational::zero();
    }
    // floor(sqrt(n * d * 4^bits)) / (d * 2^bits) <= sqrt(n/d)
    let n = x.numer();
    let d = x.denom();
    let scaled = n * d * (BigInt::one() << (2 * bits));
    let root = num_integer::Roots::sqrt(&scaled);
    Rational::new(root, d * (BigInt::one() << bits))
}

/// Dyadic upper bound of `sqrt(x)` with `bits` fractional bits; `x >= 0`.
pub fn sqrt_upper(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return Rational::zero();
    }
    let n = x.numer();
    let d = x.denom();
    let scaled = n * d * (BigInt::one() << (2 * bits));
    let root = num_integer::Roots::sqrt(&scaled) + BigInt::one();
    Rational::new(root, d * (BigInt::one() << bits))
}

/// `x^n` for signed integer exponents (`x != 0` when `n < 0`).
pub fn pow_i(x: &Rational, n: i32) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let mut base = if n < 0 { x.recip() } else { x.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = Rational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Exact conversion helpers for sampling heuristics.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Squared euclidean norm of a rational vector.
pub fn norm_sq(v: &[Rational]) -> Rational {
    v.iter().map(|c| c * c).sum()
}

/// Squared euclidean distance.
pub fn dist_sq(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            &d * &d
        })
        .sum()
}

/// Dot product.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Greatest common divisor of the numerators over lcm of denominators is
/// overkill here; for normalization we only need the sup-norm.
pub fn sup_norm(v: &[Rational]) -> Rational {
    v.iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// True when `x` has a power-of-two denominator.
pub fn is_dyadic(x: &Rational) -> bool {
    let d = x.denom();
    d.is_one() || (d.abs().into_parts().1.count_ones() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let x = parse_rational("-22/7").unwrap();
        assert_eq!(format_rational(&x), "-22/7");
        assert_eq!(format_rational(&parse_rational("3").unwrap()), "3/1");
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn decimals_convert_exactly() {
        assert_eq!(parse_decimal("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_decimal("-1.2").unwrap(), rat(-6, 5));
        assert_eq!(parse_decimal("7").unwrap(), int(7));
        assert!(parse_decimal("1.2.3").is_err());
    }

    #[test]
    fn dyadic_rounding_brackets() {
        let x = rat(1, 3);
        let lo = round_dyadic_down(&x, 8);
        let hi = round_dyadic_up(&x, 8);
        assert!(lo <= x && x <= hi);
        assert_eq!(&hi - &lo, dyadic(1, 8));
        assert!(is_dyadic(&lo) && is_dyadic(&hi));
        assert!(!is_dyadic(&x));
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let x = rat(2, 1);
        let lo = sqrt_lower(&x, 20);
        let hi = sqrt_upper(&x, 20);
        assert!(&lo * &lo <= x);
        assert!(&hi * &hi >= x);
        assert!(&hi - &lo <= dyadic(1, 18));
    }

    #[test]
    fn pow_i_handles_negative() {
        assert_eq!(pow_i(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(pow_i(&rat(5, 1), 0), int(1));
        assert_eq!(pow_i(&rat(-2, 1), 3), int(-8));
    }
}
