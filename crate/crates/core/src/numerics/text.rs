//! Text form of complex scalars: `<float>` or `<float>(+|-)<float>i`.

use super::matrix::C64;
use crate::error::{Error, Result};

pub fn parse_complex(input: &str) -> Result<C64> {
    let err = || Error::Parse { input: input.to_string() };
    let s = input.trim();
    if s.is_empty() {
        return Err(err());
    }
    let Some(body) = s.strip_suffix('i') else {
        return parse_float(s).map(|re| C64::new(re, 0.0)).ok_or_else(err);
    };
    // The split point is the last sign that is neither leading nor part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(err)?;
    let re = parse_float(&body[..split]).ok_or_else(err)?;
    let im_text = &body[split + 1..];
    if im_text.starts_with(['+', '-']) {
        return Err(err());
    }
    let im = parse_float(im_text).ok_or_else(err)?;
    Ok(C64::new(re, if bytes[split] == b'-' { -im } else { im }))
}

fn parse_float(s: &str) -> Option<f64> {
    // Rust's parser also accepts "inf"/"nan"; those are not floats in the grammar.
    let digits = s.trim_start_matches(['+', '-']);
    if digits.is_empty() || !digits.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

/// Always emits the two-part form, e.g. `1.5-2i`, using the shortest round-trip float text.
pub fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}
