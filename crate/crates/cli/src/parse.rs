use std::f64::consts::{PI, TAU};

use catchi_core::lattice::{parse_rational, LatticeVector};

/// Parses lengths such as "6.28", "tau", "0.9tau", "2pi", "3π", "inf".
pub fn parse_length(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    if matches!(t.as_str(), "inf" | "infinity" | "+inf" | "∞") {
        return Ok(f64::INFINITY);
    }
    let units: [(&str, f64); 4] = [("tau", TAU), ("τ", TAU), ("pi", PI), ("π", PI)];
    let (number, unit) = units
        .iter()
        .find_map(|(suffix, value)| {
            t.strip_suffix(suffix)
                .map(|rest| (rest.trim().trim_end_matches('*'), *value))
        })
        .unwrap_or((t.as_str(), 1.0));
    let coeff = if number.is_empty() {
        1.0
    } else {
        number
            .parse::<f64>()
            .map_err(|e| format!("bad length {s:?}: {e}"))?
    };
    let v = coeff * unit;
    if !(v > 0.0) {
        return Err(format!("length must be positive, got {s:?}"));
    }
    Ok(v)
}

/// Parses "1,0,-1/2" (or whitespace separated) into an exact vector.
pub fn parse_vector(s: &str) -> Result<LatticeVector, String> {
    let coords = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_rational(t).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.is_empty() {
        return Err("empty vector".into());
    }
    Ok(LatticeVector::new(coords))
}

/// Parses "1,0,-0.5" into floats.
pub fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|e| format!("bad number {t:?}: {e}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths() {
        assert_eq!(parse_length("tau").unwrap(), TAU);
        assert!((parse_length("0.9tau").unwrap() - 0.9 * TAU).abs() < 1e-15);
        assert_eq!(parse_length("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_length("3*π").unwrap(), 3.0 * PI);
        assert_eq!(parse_length("inf").unwrap(), f64::INFINITY);
        assert_eq!(parse_length("1.5").unwrap(), 1.5);
        assert!(parse_length("-1").is_err());
        assert!(parse_length("xtau").is_err());
    }

    #[test]
    fn vectors() {
        let v = parse_vector("1, 0, -1/2").unwrap();
        assert_eq!(v.dim(), 3);
        assert!(parse_vector("").is_err());
        assert!(parse_vector("1,a").is_err());
        assert_eq!(parse_floats("1 2.5").unwrap(), vec![1.0, 2.5]);
    }
}
