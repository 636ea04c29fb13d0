use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{need, region_membership, Band, OrbitSampler, RegionSpec, TorusError};
use crate::exact::{AlgebraicReal, FieldElement};
use crate::identity::r_value;

const CHUNK: u64 = 4096;

/// Frequencies of `r(n) = j` over `1 <= n <= N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    pub m: u32,
    pub n_max: u64,
    /// `counts[j-1]` is the number of `n` with `r(n) = j`.
    pub counts: Vec<u64>,
    pub frequencies: Vec<f64>,
    /// `frequencies[j-1] - 1/m`.
    pub deviations: Vec<f64>,
}

impl Distribution {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().fold(0.0, |a, d| a.max(d.abs()))
    }
}

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

pub fn empirical_distribution(alpha: &AlgebraicReal, m: u32, n_max: u64) -> Result<Distribution, TorusError> {
    need(m, "m")?;
    if n_max == 0 {
        return Err(TorusError::ZeroParameter("N"));
    }
    if alpha.is_rational() {
        return Err(TorusError::RationalAlpha);
    }
    let a = FieldElement::generator(alpha);
    let mb = BigInt::from(m);
    let ma = a.scale_int(&mb);
    let chunks = n_max.div_ceil(CHUNK);
    let parts: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut counts = vec![0u64; m as usize];
            let lo = c * CHUNK + 1;
            let hi = ((c + 1) * CHUNK).min(n_max);
            for n in lo..=hi {
                let r = r_value(&BigInt::from(n), &a, &ma, &mb);
                let j = r.to_usize().filter(|j| (1..=m as usize).contains(j));
                counts[j.expect("r(n) outside {1..m}") - 1] += 1;
            }
            counts
        })
        .collect();
    let counts = parts.into_iter().fold(vec![0u64; m as usize], add_counts);
    let frequencies: Vec<f64> = counts.iter().map(|&c| c as f64 / n_max as f64).collect();
    let deviations = frequencies.iter().map(|f| f - 1.0 / m as f64).collect();
    Ok(Distribution { m, n_max, counts, frequencies, deviations })
}

/// Exact band tallies of orbit points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandCounts {
    pub counts: Vec<u64>,
    pub outside: u64,
    pub total: u64,
}

impl BandCounts {
    pub fn frequencies(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.total as f64).collect()
    }
}

/// Band membership of `f(n)` for every `n` in `[n_lo, n_hi]`.
pub fn band_counts(sampler: &OrbitSampler, region: &RegionSpec, n_lo: i64, n_hi: i64) -> Result<BandCounts, TorusError> {
    if n_lo > n_hi {
        return Err(TorusError::EmptyRange(n_lo, n_hi));
    }
    let m = region.band_count as usize;
    let bands: Vec<Band> =
        (n_lo..=n_hi).into_par_iter().map(|n| region_membership(&sampler.point(n), region)).collect();
    let mut counts = vec![0u64; m];
    let mut outside = 0;
    for b in &bands {
        match b {
            Band::In(j) => counts[*j as usize - 1] += 1,
            Band::Outside => outside += 1,
        }
    }
    Ok(BandCounts { counts, outside, total: bands.len() as u64 })
}
