//! Helpers around [`BigRational`]: the `p/q` text form used in certificates,
//! float conversion and best rational approximation with a denominator bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn to_string(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q`, or a finite decimal like `-1.25`.
pub fn parse(s: &str) -> Result<Rat, ParseRationalError> {
    let s = s.trim();
    let err = || ParseRationalError(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip_abs.is_empty() { BigInt::zero() } else { ip_abs.parse().map_err(|_| err())? };
        let frac: BigInt = fp.parse().map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mag = Rat::new(whole * &scale + frac, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let p: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rat::from_integer(p))
}

pub fn to_f64(q: &Rat) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            // Huge numerator or denominator: shift both down first.
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                f64::INFINITY.copysign(n)
            } else {
                n / d
            }
        }
    }
}

/// Best rational approximation of `x` with denominator at most `max_denom`,
/// from the continued fraction expansion (including the semiconvergent step).
pub fn approximate(x: f64, max_denom: u64) -> Rat {
    assert!(x.is_finite(), "cannot approximate a non-finite value");
    let max_denom = BigInt::from(max_denom.max(1));
    let exact = Rat::from_float(x).expect("finite float");
    let neg = exact.is_negative();
    let mut rest = exact.abs();

    // Convergents hm1/km1 with predecessors hm2/km2.
    let (mut hm2, mut hm1) = (BigInt::zero(), BigInt::one());
    let (mut km2, mut km1) = (BigInt::one(), BigInt::zero());
    loop {
        let a = rest.numer().div_floor(rest.denom());
        let h_new = &a * &hm1 + &hm2;
        let k_new = &a * &km1 + &km2;
        if k_new > max_denom {
            // Largest semiconvergent that still fits.
            let t = (&max_denom - &km2).div_floor(&km1);
            let h_semi = &t * &hm1 + &hm2;
            let k_semi = &t * &km1 + &km2;
            let cand_a = Rat::new(hm1.clone(), km1.clone());
            let best = if k_semi.is_zero() {
                cand_a
            } else {
                let cand_b = Rat::new(h_semi, k_semi);
                let target = exact.abs();
                if (&cand_b - &target).abs() < (&cand_a - &target).abs() {
                    cand_b
                } else {
                    cand_a
                }
            };
            return if neg { -best } else { best };
        }
        hm2 = std::mem::replace(&mut hm1, h_new);
        km2 = std::mem::replace(&mut km1, k_new);
        let frac = &rest - Rat::from_integer(a);
        if frac.is_zero() {
            let q = Rat::new(hm1, km1);
            return if neg { -q } else { q };
        }
        rest = frac.recip();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(to_string(&ratio(3, 4)), "3/4");
        assert_eq!(to_string(&ratio(-6, 3)), "-2");
        assert_eq!(parse("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse(" -7 ").unwrap(), rat(-7));
        assert_eq!(parse("-1.25").unwrap(), ratio(-5, 4));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
    }

    #[test]
    fn approximations() {
        assert_eq!(approximate(0.5, 10), ratio(1, 2));
        assert_eq!(approximate(std::f64::consts::PI, 1000), ratio(355, 113));
        assert_eq!(approximate(-0.333333333, 100), ratio(-1, 3));
        assert_eq!(approximate(3.0, 1), rat(3));
        assert_eq!(approximate(0.0, 1_000_000), rat(0));
        // semiconvergent: best approximation of pi with denominator <= 10 is 22/7
        assert_eq!(approximate(std::f64::consts::PI, 10), ratio(22, 7));
    }

    #[test]
    fn float_conversion() {
        assert_eq!(to_f64(&ratio(3, 4)), 0.75);
        let big = Rat::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((to_f64(&big) - 10.0).abs() < 1e-9);
    }
}
