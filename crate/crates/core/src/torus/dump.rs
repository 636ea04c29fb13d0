use std::io::{self, Write};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{region_membership, Band, OrbitSampler, RegionSpec, TorusError};
use crate::exact::Rational;
use crate::floor::FracPart;

pub const DEFAULT_DUMP_DIGITS: usize = 12;

/// One record of an orbit table.
#[derive(Clone, Debug, PartialEq)]
pub struct DumpRow {
    pub n: i64,
    pub x: String,
    pub y: String,
    pub x_f64: f64,
    pub y_f64: f64,
    pub band: Option<Band>,
}

/// A fractional part in `[0, 1)` with `digits` significant digits,
/// truncated from a certified enclosure so it never prints as `1`.
pub fn format_coordinate(f: &FracPart, digits: usize) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let approx = f.to_f64();
    let leading = if approx > 0.0 { (-approx.log10()).floor().max(0.0) as usize } else { 0 };
    let places = leading + digits.max(1);
    let lo = match f.as_rational() {
        Some(r) => r,
        None => f.enclosure_at((places as f64 * 3.33).ceil() as u64 + 64).lo_rational(),
    };
    let scale = BigInt::from(10u32).pow(places as u32);
    let mut v = (lo * Rational::from_integer(scale.clone())).floor().to_integer();
    if v >= scale {
        v = &scale - 1;
    }
    if v.is_negative() {
        v = BigInt::zero();
    }
    let s = v.to_string();
    let body = format!("{}{}", "0".repeat(places - s.len().min(places)), s);
    let trimmed = body.trim_end_matches('0');
    if trimmed.is_empty() {
        "0".to_string()
    } else {
        format!("0.{trimmed}")
    }
}

/// Orbit records for `n` in `[n_lo, n_hi]`, with exact band membership
/// when a region is given.
pub fn orbit_dump(
    sampler: &OrbitSampler,
    n_lo: i64,
    n_hi: i64,
    region: Option<&RegionSpec>,
    digits: usize,
) -> Result<Vec<DumpRow>, TorusError> {
    if n_lo > n_hi {
        return Err(TorusError::EmptyRange(n_lo, n_hi));
    }
    Ok((n_lo..=n_hi)
        .into_par_iter()
        .map(|n| {
            let p = sampler.point(n);
            DumpRow {
                n,
                x: format_coordinate(&p.x, digits),
                y: format_coordinate(&p.y, digits),
                x_f64: p.x_f64(),
                y_f64: p.y_f64(),
                band: region.map(|r| region_membership(&p, r)),
            }
        })
        .collect())
}

/// Writes `n,x,y,band` with a header line; `band` is empty without a region.
pub fn write_dump<W: Write>(rows: &[DumpRow], mut w: W) -> io::Result<()> {
    writeln!(w, "n,x,y,band")?;
    for r in rows {
        let band = r.band.map(|b| b.to_string()).unwrap_or_default();
        writeln!(w, "{},{},{},{}", r.n, r.x, r.y, band)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, AlgebraicReal};

    #[test]
    fn formats() {
        let g: AlgebraicReal = "root([-1,-1,1],1,2)".parse().unwrap();
        let sampler = OrbitSampler::new(&g, 1, 1).unwrap();
        let rows = orbit_dump(&sampler, 0, 2, Some(&RegionSpec::for_identity(&g, 1)), 12).unwrap();
        assert_eq!(rows[0].x, "0");
        assert_eq!(rows[0].band, Some(Band::Outside));
        assert_eq!(rows[1].x, "0.618033988749");
        assert_eq!(rows[1].band, Some(Band::In(1)));
        let mut out = Vec::new();
        write_dump(&rows, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("n,x,y,band\n0,0,0,outside\n1,0.618033988749,0.618033988749,1\n"));

        let r = AlgebraicReal::from_rational(parse_rational("3/2").unwrap());
        let sampler = OrbitSampler::new(&r, 1, 1).unwrap();
        let rows = orbit_dump(&sampler, 1, 2, None, 12).unwrap();
        assert_eq!((rows[0].x.as_str(), rows[0].y.as_str()), ("0.5", "0.25"));
        assert_eq!(rows[1].band, None);
        // Small values keep their significant digits.
        let tiny: AlgebraicReal = "root([-1,0,1000000],0,1)".parse().unwrap();
        let sampler = OrbitSampler::new(&tiny, 1, 1).unwrap();
        let rows = orbit_dump(&sampler, 1, 1, None, 12).unwrap();
        assert_eq!(rows[0].x, "0.001");
        assert_eq!(rows[0].y, "0.000001");
    }
}
