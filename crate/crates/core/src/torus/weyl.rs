use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::TorusError;
use crate::exact::{DyadicInterval, FieldElement};

/// Stated absolute accuracy of a reported magnitude.
pub const WEYL_PRECISION: f64 = 1e-12;

/// Working grid for the phase coefficients; the top 128 bits of the
/// fractional part are kept.
const PHASE_PREC: u64 = 192;

const CHUNK: i64 = 8192;

/// A sequence `x(n)` in the `d`-torus.
#[derive(Clone, Debug)]
pub enum SequenceSpec {
    /// `x(n) = n * theta`.
    Linear(Vec<FieldElement>),
    /// `x_i(n) = sum_e coeffs[i][e] * n^e`.
    Polynomial(Vec<Vec<FieldElement>>),
}

impl SequenceSpec {
    fn dimension(&self) -> usize {
        match self {
            SequenceSpec::Linear(t) => t.len(),
            SequenceSpec::Polynomial(c) => c.len(),
        }
    }

    /// Coefficient vectors per power of `n`.
    fn by_power(&self) -> Vec<Vec<FieldElement>> {
        match self {
            SequenceSpec::Linear(t) => t.iter().map(|th| vec![FieldElement::zero(th.base()), th.clone()]).collect(),
            SequenceSpec::Polynomial(c) => c.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeylSumResult {
    pub k: Vec<i64>,
    pub n_bound: u64,
    /// `|(1/(2N+1)) sum_{|n|<=N} e(k . x(n))|`.
    pub magnitude: f64,
    pub precision: f64,
}

/// `frac(sum_i k_i c_i)` as a 128-bit fixed-point fraction.
fn phase_coefficient(k: &[i64], coeffs: &[Option<&FieldElement>]) -> u128 {
    let mut acc = DyadicInterval::point(&BigInt::from(0), PHASE_PREC);
    for (ki, c) in k.iter().zip(coeffs) {
        if let Some(c) = c {
            acc = acc.add(&c.enclosure_at(PHASE_PREC).mul_int(&BigInt::from(*ki)));
        }
    }
    let modulus = BigInt::from(1) << PHASE_PREC;
    let frac = acc.lo().mod_floor(&modulus) >> (PHASE_PREC - 128);
    frac.to_u128().expect("fraction fits 128 bits")
}

/// Neumaier-compensated sum.
#[derive(Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Symmetric Weyl average, evaluated in floating point with exact phase
/// reduction mod 1.
pub fn weyl_sum(spec: &SequenceSpec, k: &[i64], n_bound: u64) -> Result<WeylSumResult, TorusError> {
    if k.iter().all(|&x| x == 0) {
        return Err(TorusError::ZeroFrequency);
    }
    if k.len() != spec.dimension() {
        return Err(TorusError::DimensionMismatch { want: spec.dimension(), got: k.len() });
    }
    let rows = spec.by_power();
    let degree = rows.iter().map(Vec::len).max().unwrap_or(0);
    let phases: Vec<u128> = (0..degree)
        .map(|e| {
            let column: Vec<Option<&FieldElement>> = rows.iter().map(|r| r.get(e)).collect();
            phase_coefficient(k, &column)
        })
        .collect();
    let n = n_bound as i64;
    let chunks = (2 * n + 1 + CHUNK - 1) / CHUNK;
    let parts: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = -n + c * CHUNK;
            let hi = (lo + CHUNK - 1).min(n);
            let (mut re, mut im) = (Compensated::default(), Compensated::default());
            for i in lo..=hi {
                let ni = i as i128 as u128;
                let mut power: u128 = 1;
                let mut phase: u128 = 0;
                for b in &phases {
                    phase = phase.wrapping_add(b.wrapping_mul(power));
                    power = power.wrapping_mul(ni);
                }
                let turns = (phase >> 64) as f64 * (-64f64).exp2();
                let (s, co) = (std::f64::consts::TAU * turns).sin_cos();
                re.add(co);
                im.add(s);
            }
            (re.value(), im.value())
        })
        .collect();
    let (mut re, mut im) = (Compensated::default(), Compensated::default());
    for (r, i) in parts {
        re.add(r);
        im.add(i);
    }
    let count = (2 * n_bound + 1) as f64;
    let magnitude = re.value().hypot(im.value()) / count;
    Ok(WeylSumResult { k: k.to_vec(), n_bound, magnitude, precision: WEYL_PRECISION })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, AlgebraicReal};

    fn rational(s: &str) -> FieldElement {
        FieldElement::from_rational(&AlgebraicReal::from_integer(1), parse_rational(s).unwrap())
    }

    #[test]
    fn rational_rotation_is_periodic() {
        let r = weyl_sum(&SequenceSpec::Linear(vec![rational("3/2")]), &[2], 1000).unwrap();
        assert!((r.magnitude - 1.0).abs() <= 1e-12);
        let r = weyl_sum(&SequenceSpec::Linear(vec![rational("1/3")]), &[1], 1).unwrap();
        // 1 + 2 cos(2 pi / 3) = 0.
        assert!(r.magnitude.abs() < 1e-12);
    }

    #[test]
    fn sqrt2_decays() {
        let s2: AlgebraicReal = "root([-2,0,1],1,2)".parse().unwrap();
        let theta = FieldElement::generator(&s2);
        let r = weyl_sum(&SequenceSpec::Linear(vec![theta.clone()]), &[1], 10_000).unwrap();
        let bound = 1.0 / (20_001.0 * (std::f64::consts::PI * s2.to_f64()).sin().abs());
        assert!(r.magnitude <= bound + 1e-12);
        assert!(matches!(
            weyl_sum(&SequenceSpec::Linear(vec![theta.clone()]), &[0], 10),
            Err(TorusError::ZeroFrequency)
        ));
        assert!(matches!(
            weyl_sum(&SequenceSpec::Linear(vec![theta]), &[1, 1], 10),
            Err(TorusError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn matches_direct_float_sum() {
        let g: AlgebraicReal = "root([-1,-1,1],1,2)".parse().unwrap();
        let spec = SequenceSpec::Polynomial(vec![vec![rational("1/7"), FieldElement::zero(&g), FieldElement::generator(&g)]]);
        let r = weyl_sum(&spec, &[3], 200).unwrap();
        let phi = g.to_f64();
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for n in -200i64..=200 {
            let x = 3.0 * (1.0 / 7.0 + (n * n) as f64 * phi);
            let t = std::f64::consts::TAU * (x - x.floor());
            re += t.cos();
            im += t.sin();
        }
        let direct = re.hypot(im) / 401.0;
        assert!((direct - r.magnitude).abs() < 1e-9);
    }
}
