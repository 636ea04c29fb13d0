use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{need, OrbitSampler, TorusError};
use crate::exact::{AlgebraicReal, Rational};

/// Indices `|n| <= SAMPLE` are checked against every fitted family.
const SAMPLE: i64 = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitVerdict {
    /// Intercepts derived in closed form; every sampled point lies on one of
    /// the lines with an exactly zero residual.
    Exact,
    /// Intercepts collected from the sampled points only.
    Empirical,
}

/// The orbit lies on the lines `y = s x + t`, `t` in `intercepts`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineFit {
    pub slope: Rational,
    /// `r` in `a^(l+k) = s a^l + r`.
    pub offset: Rational,
    pub intercepts: Vec<Rational>,
    pub verdict: FitVerdict,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LineSupport {
    Lines(LineFit),
    /// `1, a^l, a^(l+k)` admit no relation within the height bounds.
    NoRationalRelation,
    /// `a^l` is rational, so `x` takes finitely many values; `period` is its
    /// denominator.
    RationalAbscissa { period: BigInt },
}

fn height(r: &Rational) -> BigInt {
    r.numer().abs().max(r.denom().clone())
}

/// `t = c - j` for every residue `c = i/q` and every `j` whose strip
/// `j <= s x + c < j + 1` meets `[0, 1)`.
fn closed_form_intercepts(s: &BigInt, r: &Rational) -> BTreeSet<Rational> {
    let q = r.denom().clone();
    let mut out = BTreeSet::new();
    let mut i = BigInt::zero();
    while i < q {
        let c = Rational::new(i.clone(), q.clone());
        let (lo, hi) = if s.is_negative() {
            ((&c + Rational::from_integer(s.clone())).floor().to_integer(), BigInt::zero())
        } else {
            (BigInt::zero(), (&c + Rational::from_integer(s.clone())).ceil().to_integer() - 1)
        };
        let hi = if s.is_zero() { BigInt::zero() } else { hi };
        let mut j = lo;
        while j <= hi {
            out.insert(&c - Rational::from_integer(j.clone()));
            j += 1;
        }
        i += 1;
    }
    out
}

/// Searches `a^(l+k) = s a^l + r` exactly in `Q[a]` and derives the lines
/// carrying the orbit.
pub fn detect_line_support(
    alpha: &AlgebraicReal,
    l: u32,
    k: u32,
    s_bound: u64,
    q_bound: u64,
) -> Result<LineSupport, TorusError> {
    need(l, "l")?;
    need(k, "k")?;
    let sampler = OrbitSampler::new(alpha, l, k)?;
    let (al, alk) = (sampler.x_elem(), sampler.y_elem());
    if let Some(x) = al.as_rational() {
        return Ok(LineSupport::RationalAbscissa { period: x.denom().clone() });
    }
    // al has a nonzero coordinate beyond the constant one; it fixes s.
    let i = (1..al.coords().len()).find(|&i| !al.coords()[i].is_zero()).unwrap();
    let s = &alk.coords()[i] / &al.coords()[i];
    let rest = alk - &al.scale(&s);
    let Some(r) = rest.as_rational() else {
        return Ok(LineSupport::NoRationalRelation);
    };
    if height(&s) > BigInt::from(s_bound) || height(&r) > BigInt::from(q_bound) {
        return Ok(LineSupport::NoRationalRelation);
    }

    let derived = s.is_integer().then(|| closed_form_intercepts(&s.to_integer(), &r));
    let mut seen = BTreeSet::new();
    let mut on_lines = true;
    for n in -SAMPLE..=SAMPLE {
        let p = sampler.point(n);
        // y - s x = n r + s [n al] - [n alk]
        let t = Rational::from_integer(n.into()) * &r + &s * Rational::from_integer(p.x.floor.clone())
            - Rational::from_integer(p.y.floor.clone());
        let residual = (&p.y.value() - &p.x.value().scale(&s)).add_rational(&-t.clone());
        on_lines &= residual.is_zero();
        seen.insert(t);
    }
    let (intercepts, verdict) = match derived {
        Some(d) if on_lines && seen.is_subset(&d) => (d, FitVerdict::Exact),
        _ => (seen, FitVerdict::Empirical),
    };
    Ok(LineSupport::Lines(LineFit { slope: s, offset: r, intercepts: intercepts.into_iter().collect(), verdict }))
}
