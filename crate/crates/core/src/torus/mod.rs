//! Orbits `f(n) = ({n a^l}, {n a^(l+k)})` on the unit square, exact band
//! membership, line support, `r(n)` statistics and Weyl sums.

mod dump;
mod lines;
mod stats;
mod weyl;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{AlgebraicReal, DyadicInterval, FieldElement, IntPolynomial, ENCLOSURE_PREC};
use crate::floor::{certified_frac, floor_of_element, FracPart, LinearForm};

pub use dump::{format_coordinate, orbit_dump, write_dump, DumpRow, DEFAULT_DUMP_DIGITS};
pub use lines::{detect_line_support, FitVerdict, LineFit, LineSupport};
pub use stats::{band_counts, empirical_distribution, BandCounts, Distribution};
pub use weyl::{weyl_sum, SequenceSpec, WeylSumResult, WEYL_PRECISION};

#[derive(Debug, Error)]
pub enum TorusError {
    #[error("alpha must be irrational")]
    RationalAlpha,
    #[error("the frequency vector must be nonzero")]
    ZeroFrequency,
    #[error("frequency vector has {got} entries, the sequence has {want} coordinates")]
    DimensionMismatch { want: usize, got: usize },
    #[error("the polynomial must be non-constant")]
    ConstantPolynomial,
    #[error("{0} must be at least 1")]
    ZeroParameter(&'static str),
    #[error("empty range [{0}, {1}]")]
    EmptyRange(i64, i64),
}

fn need(v: u32, name: &'static str) -> Result<(), TorusError> {
    if v == 0 {
        Err(TorusError::ZeroParameter(name))
    } else {
        Ok(())
    }
}

/// The point `({n ex}, {n ey})`, with both coordinates kept exact.
#[derive(Clone, Debug)]
pub struct TorusPoint {
    pub n: BigInt,
    pub x: FracPart,
    pub y: FracPart,
}

impl TorusPoint {
    pub fn x_f64(&self) -> f64 {
        self.x.to_f64()
    }

    pub fn y_f64(&self) -> f64 {
        self.y.to_f64()
    }
}

/// Produces orbit points for a fixed pair of multipliers.
#[derive(Clone, Debug)]
pub struct OrbitSampler {
    ex: FieldElement,
    ey: FieldElement,
}

impl OrbitSampler {
    /// The orbit of `(a^l, a^(l+k))`.
    pub fn new(alpha: &AlgebraicReal, l: u32, k: u32) -> Result<Self, TorusError> {
        need(l, "l")?;
        need(k, "k")?;
        let a = FieldElement::generator(alpha);
        Ok(OrbitSampler { ex: a.pow(l), ey: a.pow(l + k) })
    }

    /// The orbit of an arbitrary pair, e.g. `(alpha, beta)`.
    pub fn from_elements(ex: FieldElement, ey: FieldElement) -> Self {
        OrbitSampler { ex, ey }
    }

    pub fn x_elem(&self) -> &FieldElement {
        &self.ex
    }

    pub fn y_elem(&self) -> &FieldElement {
        &self.ey
    }

    pub fn point(&self, n: impl Into<BigInt>) -> TorusPoint {
        let n = n.into();
        let (_, x) = certified_frac(&LinearForm::new(n.clone(), &self.ex));
        let (_, y) = certified_frac(&LinearForm::new(n.clone(), &self.ey));
        TorusPoint { n, x, y }
    }
}

pub fn orbit_point(n: i64, alpha: &AlgebraicReal, l: u32, k: u32) -> Result<TorusPoint, TorusError> {
    Ok(OrbitSampler::new(alpha, l, k)?.point(n))
}

/// Points at indices `P(n)` for `n` in `[n_lo, n_hi]`, skipping roots of `P`.
/// Each entry pairs `n` with the point at `P(n)`.
pub fn polynomial_orbit(
    alpha: &AlgebraicReal,
    l: u32,
    k: u32,
    p: &IntPolynomial,
    n_lo: i64,
    n_hi: i64,
) -> Result<Vec<(i64, TorusPoint)>, TorusError> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(TorusError::ConstantPolynomial);
    }
    if n_lo > n_hi {
        return Err(TorusError::EmptyRange(n_lo, n_hi));
    }
    let sampler = OrbitSampler::new(alpha, l, k)?;
    Ok((n_lo..=n_hi)
        .filter_map(|n| {
            let pn = p.eval_int(&BigInt::from(n));
            (!pn.is_zero()).then(|| (n, sampler.point(pn)))
        })
        .collect())
}

/// Bands `-j <= y - c x < -(j-1)`, `j = 1..=band_count`, in the unit square.
#[derive(Clone, Debug)]
pub struct RegionSpec {
    pub coefficient: FieldElement,
    pub band_count: u32,
}

impl RegionSpec {
    pub fn new(coefficient: FieldElement, band_count: u32) -> Self {
        assert!(band_count >= 1, "a region needs at least one band");
        RegionSpec { coefficient, band_count }
    }

    /// The single band `-1 <= y - a^k x < 0`.
    pub fn for_identity(alpha: &AlgebraicReal, k: u32) -> Self {
        RegionSpec::new(FieldElement::generator(alpha).pow(k), 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Band {
    In(u32),
    Outside,
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Band::In(j) => write!(f, "{j}"),
            Band::Outside => f.write_str("outside"),
        }
    }
}

/// Brings elements onto one base: all irrational ones must share it, the
/// rational ones are moved over.
fn unify(elems: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let Some(base) = elems.iter().find(|e| !e.base().is_rational()).map(|e| e.base().clone()) else {
        return Some(elems.to_vec());
    };
    elems
        .iter()
        .map(|e| {
            if e.base().same_number(&base) {
                Some(e.clone())
            } else {
                e.rebase_rational(&base)
            }
        })
        .collect()
}

/// Escalation limit when the exact value cannot be formed on one base.
const MIXED_PREC_LIMIT: u64 = 1 << 16;

/// `[y - c x]`, decided exactly.
fn region_floor(pt: &TorusPoint, c: &FieldElement) -> BigInt {
    let approx = pt.y.enclosure().sub(&c.enclosure().mul(&pt.x.enclosure()));
    if let Some(f) = approx.floor() {
        return f;
    }
    if let Some(v) = unify(&[pt.x.value(), pt.y.value(), c.clone()]) {
        let value = &v[1] - &(&v[2] * &v[0]);
        return floor_of_element(&value).value;
    }
    let mut prec = 2 * ENCLOSURE_PREC;
    while prec <= MIXED_PREC_LIMIT {
        let enc: DyadicInterval = pt.y.enclosure_at(prec).sub(&c.enclosure_at(prec).mul(&pt.x.enclosure_at(prec)));
        if let Some(f) = enc.floor() {
            return f;
        }
        prec *= 2;
    }
    panic!("region membership undecided: coefficient and orbit live over unrelated bases");
}

/// Band `j` with `-j <= y - c x < -(j-1)`, or `Outside`.
pub fn region_membership(pt: &TorusPoint, region: &RegionSpec) -> Band {
    let f = region_floor(pt, &region.coefficient);
    let j = -f;
    if j >= BigInt::one() && j <= BigInt::from(region.band_count) {
        Band::In(u32::try_from(j).unwrap())
    } else {
        Band::Outside
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, Rational};

    fn golden() -> AlgebraicReal {
        "root([-1,-1,1],1,2)".parse().unwrap()
    }

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn points() {
        let g = golden();
        let p = orbit_point(1, &g, 1, 1).unwrap();
        assert_eq!(p.x.value().coords(), &[q("-1"), q("1")]);
        assert_eq!(p.x.value(), p.y.value());
        let p = orbit_point(0, &g, 1, 1).unwrap();
        assert!(p.x.is_zero() && p.y.is_zero());
        let s: AlgebraicReal = "root([-1,-2,1],2,3)".parse().unwrap();
        let p = orbit_point(1, &s, 1, 1).unwrap();
        assert!((p.x_f64() - 0.414213562373).abs() < 1e-11);
        assert!((p.y_f64() - 0.828427124746).abs() < 1e-11);
        assert!((&p.y.value() - &p.x.value().scale(&q("2"))).is_zero());
    }

    #[test]
    fn memberships() {
        let g = golden();
        let region = RegionSpec::for_identity(&g, 1);
        assert_eq!(region_membership(&orbit_point(1, &g, 1, 1).unwrap(), &region), Band::In(1));
        let s2: AlgebraicReal = "root([-2,0,1],1,2)".parse().unwrap();
        let region = RegionSpec::for_identity(&s2, 1);
        assert_eq!(region_membership(&orbit_point(2, &s2, 1, 1).unwrap(), &region), Band::Outside);
        let origin = orbit_point(0, &g, 1, 1).unwrap();
        for m in 1..4 {
            let region = RegionSpec::new(FieldElement::generator(&g).pow(m), m);
            assert_eq!(region_membership(&origin, &region), Band::Outside);
        }
    }

    #[test]
    fn rational_coefficient_on_irrational_orbit() {
        let s: AlgebraicReal = "root([-1,-2,1],2,3)".parse().unwrap();
        let coeff = FieldElement::from_rational(&AlgebraicReal::from_integer(1), q("809017/500000"));
        let region = RegionSpec::new(coeff, 1);
        let sampler = OrbitSampler::new(&s, 1, 1).unwrap();
        let outside = (1..=100).filter(|&n| region_membership(&sampler.point(n), &region) == Band::Outside).count();
        assert!(outside > 0);
    }

    #[test]
    fn polynomial_orbits() {
        let r = AlgebraicReal::from_rational(q("3/2"));
        let pts = polynomial_orbit(&r, 1, 1, &IntPolynomial::from_i64s(&[1, 4]), 1, 1).unwrap();
        assert_eq!(pts[0].1.x.as_rational(), Some(q("1/2")));
        assert_eq!(pts[0].1.y.as_rational(), Some(q("1/4")));
        let s2: AlgebraicReal = "root([-2,0,1],1,2)".parse().unwrap();
        let pts = polynomial_orbit(&s2, 1, 1, &IntPolynomial::from_i64s(&[0, 0, 1]), -1, 3).unwrap();
        assert_eq!(pts.len(), 4);
        let (n, p) = pts.last().unwrap();
        assert_eq!(*n, 3);
        assert!(p.y.is_zero());
        assert!(matches!(
            polynomial_orbit(&s2, 1, 1, &IntPolynomial::from_i64s(&[3]), 0, 1),
            Err(TorusError::ConstantPolynomial)
        ));
    }
}
