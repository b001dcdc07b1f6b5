//! Exact rational bookkeeping for times (seconds) and angles (degrees).

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;

pub type Exact = Ratio<i128>;

/// Decimal places kept when an irrational quantity (e.g. an arccos phase) is
/// snapped to a rational.
pub const SNAP_DIGITS: u32 = 9;

#[inline]
pub fn int(n: i128) -> Exact {
    Exact::from_integer(n)
}

#[inline]
pub fn frac(num: i128, den: i128) -> Exact {
    Exact::new(num, den)
}

/// Snap a float to the nearest multiple of `10^-SNAP_DIGITS`.
pub fn snap(x: f64) -> Result<Exact, Error> {
    if !x.is_finite() {
        return Err(Error::NonFinite("rational snap"));
    }
    let den = 10i128.pow(SNAP_DIGITS);
    let num = (x * den as f64).round();
    if num.abs() > 1e30 {
        return Err(Error::NonFinite("rational snap overflow"));
    }
    Ok(Exact::new(num as i128, den))
}

#[inline]
pub fn to_f64(r: &Exact) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Reduce an angle in degrees to `[0, 360)`.
pub fn wrap_deg(r: Exact) -> Exact {
    let full = int(360);
    let k = (r / full).floor();
    r - k * full
}

/// Largest multiple of `grid` not exceeding `x`.
pub fn floor_to(x: Exact, grid: Exact) -> Exact {
    (x / grid).floor() * grid
}

/// Parse `"a/b"`, `"a"` or a plain decimal string into an exact rational.
pub fn parse(s: &str) -> Result<Exact, Error> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: i128 = a.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        let b: i128 = b.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        if b == 0 {
            return Err(Error::Parse(s.to_string()));
        }
        return Ok(Exact::new(a, b));
    }
    if let Ok(i) = s.parse::<i128>() {
        return Ok(int(i));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Exact, Error> {
    let bad = || Error::Parse(s.to_string());
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (ip, fp) = body.split_once('.').ok_or_else(bad)?;
    if fp.len() > 30 || !fp.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let ip: i128 = if ip.is_empty() { 0 } else { ip.parse().map_err(|_| bad())? };
    let den = 10i128.pow(fp.len() as u32);
    let fv: i128 = if fp.is_empty() { 0 } else { fp.parse().map_err(|_| bad())? };
    let v = Exact::new(ip * den + fv, den);
    Ok(if neg { -v } else { v })
}

/// Render as `a/b` (or `a` for integers).
pub fn render(r: &Exact) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fixed-point rendering with `digits` decimals, rounding half away from zero.
pub fn render_fixed(r: &Exact, digits: u32) -> String {
    let scale = 10i128.pow(digits);
    let scaled = (r * int(scale)).round();
    let v = scaled.to_integer();
    let sign = if v.is_negative() { "-" } else { "" };
    let (q, rem) = v.abs().div_rem(&scale);
    if digits == 0 {
        format!("{sign}{q}")
    } else {
        format!("{sign}{q}.{:0width$}", rem, width = digits as usize)
    }
}

/// Round half away from zero to an integer.
pub fn round_half_away(x: f64) -> i64 {
    x.round() as i64
}

pub fn is_zero(r: &Exact) -> bool {
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_keeps_range() {
        assert_eq!(wrap_deg(int(-45)), int(315));
        assert_eq!(wrap_deg(int(720)), int(0));
        assert_eq!(wrap_deg(frac(-675, 2)), frac(45, 2));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3/8").unwrap(), frac(3, 8));
        assert_eq!(parse("-45").unwrap(), int(-45));
        assert_eq!(parse("97.18").unwrap(), frac(9718, 100));
        assert_eq!(parse("-0.5").unwrap(), frac(-1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
    }

    #[test]
    fn fixed_rendering() {
        assert_eq!(render_fixed(&frac(-675, 2), 1), "-337.5");
        assert_eq!(render_fixed(&frac(1, 3), 3), "0.333");
        assert_eq!(render_fixed(&frac(2, 3), 2), "0.67");
        assert_eq!(render_fixed(&int(7), 0), "7");
    }

    #[test]
    fn snap_grid() {
        let v = snap(97.180_756_6).unwrap();
        assert_eq!(v, frac(97_180_756_600, 1_000_000_000));
        assert!(snap(f64::NAN).is_err());
    }

    #[test]
    fn floor_grid() {
        assert_eq!(floor_to(frac(68546, 10_000_000), frac(1, 10_000_000)), frac(68546, 10_000_000));
        assert_eq!(floor_to(frac(123, 100), frac(1, 10)), frac(12, 10));
    }

    #[test]
    fn half_away() {
        assert_eq!(round_half_away(2.5), 3);
        assert_eq!(round_half_away(-2.5), -3);
        assert_eq!(round_half_away(7.64), 8);
    }
}
