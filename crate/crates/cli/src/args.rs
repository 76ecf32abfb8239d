use std::ops::RangeInclusive;
use std::str::FromStr;

/// Parses a GH parameter, which must be at most -2.
pub fn parse_param(s: &str) -> Result<i64, String> {
    let a: i64 = s
        .trim()
        .parse()
        .map_err(|e| format!("invalid parameter {s:?}: {e}"))?;
    if a > -2 {
        return Err(format!("parameter a = {a} must be <= -2"));
    }
    Ok(a)
}

/// Inclusive `lo:hi` range, or a single value meaning `v:v`.
pub fn parse_range<T>(s: &str) -> Result<RangeInclusive<T>, String>
where
    T: FromStr + PartialOrd + Copy,
    T::Err: std::fmt::Display,
{
    let one = |part: &str| {
        part.trim()
            .parse::<T>()
            .map_err(|e| format!("invalid range bound {part:?}: {e}"))
    };
    // a leading '-' belongs to the first number, so split on ':' only
    let (lo, hi) = match s.split_once(':') {
        Some((lo, hi)) => (one(lo)?, one(hi)?),
        None => {
            let v = one(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("range {s:?} has lo > hi"));
    }
    Ok(lo..=hi)
}

pub fn parse_param_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let range = parse_range::<i64>(s)?;
    if *range.end() > -2 {
        return Err(format!("parameter range {s:?} must stay <= -2"));
    }
    Ok(range)
}

pub fn parse_positive_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let range = parse_range::<u64>(s)?;
    if *range.start() == 0 {
        return Err(format!("range {s:?} must start at 1 or above"));
    }
    Ok(range)
}
