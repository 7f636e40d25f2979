//! Lossless hexadecimal float notation (`-0x1.8p-3`, `inf`, `-inf`).

use super::interval::Endpoint;
use crate::{Error, Result};

pub fn to_hex<F: Endpoint>(x: F) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > F::zero() { "inf".into() } else { "-inf".into() };
    }
    let (mantissa, exp, sign) = x.integer_decode();
    let s = if sign < 0 { "-" } else { "" };
    if mantissa == 0 {
        return format!("{s}0x0p+0");
    }
    // value = mantissa · 2^exp = 1.frac · 2^(exp + top)
    let top = 63 - mantissa.leading_zeros() as i32;
    let frac = mantissa - (1u64 << top);
    let e = exp as i32 + top;
    let digits = (top as u32).div_ceil(4) as usize;
    if frac == 0 || digits == 0 {
        return format!("{s}0x1p{e:+}");
    }
    let aligned = frac << (digits as u32 * 4 - top as u32);
    let hex = format!("{aligned:0digits$x}");
    let hex = hex.trim_end_matches('0');
    format!("{s}0x1.{hex}p{e:+}")
}

pub fn from_hex<F: Endpoint>(text: &str) -> Result<F> {
    let bad = || Error::Certificate(format!("malformed hex float {text:?}"));
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if body == "inf" {
        return Ok(if neg { F::neg_infinity() } else { F::infinity() });
    }
    let body = body
        .strip_prefix("0x")
        .or_else(|| body.strip_prefix("0X"))
        .ok_or_else(bad)?;
    let (mant, exp) = body.split_once(['p', 'P']).ok_or_else(bad)?;
    let mut e: i64 = exp.parse().map_err(|_| bad())?;
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let mut m: u128 = 0;
    for (i, ch) in int_part.chars().chain(frac_part.chars()).enumerate() {
        let d = ch.to_digit(16).ok_or_else(bad)? as u128;
        if m >> 120 != 0 {
            return Err(Error::Certificate(format!("hex float {text:?} has too many digits")));
        }
        m = (m << 4) | d;
        if i >= int_part.len() {
            e -= 4;
        }
    }
    if e.abs() > 4096 && m != 0 {
        return Err(Error::Certificate(format!("hex float {text:?} is out of range")));
    }
    let mut v = F::from(m).ok_or_else(bad)?;
    if v.to_u128() != Some(m) {
        return Err(Error::Certificate(format!(
            "hex float {text:?} is not exactly representable"
        )));
    }
    let two = F::one() + F::one();
    let half = F::one() / two;
    let (step, count) = if e >= 0 { (two, e) } else { (half, -e) };
    for _ in 0..count {
        v = v * step;
    }
    // scaling by powers of two is exact unless the value left the normal range
    let mut check = v;
    for _ in 0..count {
        check = if e >= 0 { check * half } else { check * two };
    }
    if m != 0 && (v.is_infinite() || v.is_zero() || check.to_u128() != Some(m)) {
        return Err(Error::Certificate(format!(
            "hex float {text:?} is not exactly representable"
        )));
    }
    Ok(if neg { -v } else { v })
}
