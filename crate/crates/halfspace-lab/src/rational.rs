//! Exact parameters from the command line: `p/q` or a plain decimal.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::LabError;

pub fn parse(s: &str) -> Result<BigRational, LabError> {
    let bad = || LabError::Usage(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let r = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Ok(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_and_decimals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse("1/3").unwrap(), r(1, 3));
        assert_eq!(parse("0.4").unwrap(), r(2, 5));
        assert_eq!(parse(".25").unwrap(), r(1, 4));
        assert_eq!(parse("-2").unwrap(), r(-2, 1));
        for bad in ["", "1/0", "a", "1.2.3", "."] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }
}
