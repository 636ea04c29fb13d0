use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::DyadicInterval;
use super::factor::irreducible_factors;
use super::poly::IntPolynomial;
use super::ExactError;

/// Width exponent of the bracket cached on every irrational number.
const CACHED_BRACKET_BITS: u64 = 320;

/// A real algebraic number: the unique root of its minimal polynomial inside
/// an isolating interval.
///
/// The stored polynomial is always irreducible, primitive and has a positive
/// leading coefficient, so coordinates of [`FieldElement`](super::FieldElement)s
/// over this number are canonical. Rational numbers carry a degree-1
/// polynomial and a degenerate interval.
#[derive(Clone)]
pub struct AlgebraicReal(Arc<Inner>);

struct Inner {
    poly: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
    rational: Option<BigRational>,
    /// Sign of `poly` just left of the root.
    sign_lo: Ordering,
    /// `x^d = sum reduction[i] x^i` modulo the minimal polynomial.
    reduction: Vec<BigRational>,
    bracket: OnceLock<(BigRational, BigRational)>,
}

impl AlgebraicReal {
    pub fn from_rational(r: BigRational) -> Self {
        let poly = IntPolynomial::linear_for(&r);
        Self::build(poly, r.clone(), r.clone(), Some(r), Ordering::Less)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// The root of `poly` in `[lo, hi]`, which must contain exactly one
    /// distinct real root. The polynomial is reduced to the minimal
    /// polynomial of that root.
    pub fn new(poly: &IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Self, ExactError> {
        if poly.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        if lo > hi {
            return Err(ExactError::EmptyInterval);
        }
        let sf = poly.squarefree_part();
        if sf.count_roots_closed(&lo, &hi) != 1 {
            return Err(ExactError::NotIsolating { poly: poly.to_string(), lo, hi });
        }
        let factor = irreducible_factors(&sf)?
            .into_iter()
            .find(|f| f.count_roots_closed(&lo, &hi) == 1)
            .expect("the isolated root belongs to exactly one irreducible factor");
        if factor.degree() == Some(1) {
            let c = factor.coeffs();
            return Ok(Self::from_rational(BigRational::new(-c[0].clone(), c[1].clone())));
        }
        let sign_lo = factor.sign_at(&lo);
        Ok(Self::build(factor, lo, hi, None, sign_lo))
    }

    fn build(
        poly: IntPolynomial,
        lo: BigRational,
        hi: BigRational,
        rational: Option<BigRational>,
        sign_lo: Ordering,
    ) -> Self {
        let c = poly.coeffs();
        let d = c.len() - 1;
        let lc = BigRational::from_integer(c[d].clone());
        let reduction = c[..d]
            .iter()
            .map(|ci| -BigRational::from_integer(ci.clone()) / &lc)
            .collect();
        AlgebraicReal(Arc::new(Inner {
            poly,
            lo,
            hi,
            rational,
            sign_lo,
            reduction,
            bracket: OnceLock::new(),
        }))
    }

    /// Minimal polynomial (primitive, positive leading coefficient).
    pub fn poly(&self) -> &IntPolynomial {
        &self.0.poly
    }

    pub fn degree(&self) -> usize {
        self.0.poly.degree().unwrap()
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.0.lo, &self.0.hi)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.0.rational.as_ref()
    }

    pub fn is_rational(&self) -> bool {
        self.0.rational.is_some()
    }

    pub(crate) fn reduction(&self) -> &[BigRational] {
        &self.0.reduction
    }

    /// Sturm count of the minimal polynomial over the isolating interval.
    pub fn sturm_root_count(&self) -> usize {
        self.0.poly.count_roots_closed(&self.0.lo, &self.0.hi)
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Whether both values denote the same real number.
    pub fn same_number(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        if self.0.poly != other.0.poly {
            return false;
        }
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a == b;
        }
        let lo = (&self.0.lo).max(&other.0.lo);
        let hi = (&self.0.hi).min(&other.0.hi);
        lo <= hi && self.0.poly.count_roots_closed(lo, hi) == 1
    }

    /// Bisects the isolating interval until its width is at most
    /// `target_width`. Rational numbers return the exact point.
    pub fn refine(&self, target_width: &BigRational) -> (BigRational, BigRational) {
        assert!(target_width.is_positive(), "target width must be positive");
        if let Some(r) = self.as_rational() {
            return (r.clone(), r.clone());
        }
        bisect(&self.0.poly, self.0.sign_lo, self.0.lo.clone(), self.0.hi.clone(), target_width)
    }

    /// A rational bracket of width at most `2^-bits`; cached for the default
    /// depth.
    fn bracket(&self, bits: u64) -> (BigRational, BigRational) {
        let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
        if bits <= CACHED_BRACKET_BITS {
            return self
                .0
                .bracket
                .get_or_init(|| {
                    let t = BigRational::new(BigInt::one(), BigInt::one() << CACHED_BRACKET_BITS);
                    self.refine(&t)
                })
                .clone();
        }
        let (lo, hi) = self.bracket(CACHED_BRACKET_BITS);
        bisect(&self.0.poly, self.0.sign_lo, lo, hi, &target)
    }

    /// Dyadic enclosure of the number with grid `2^-prec`.
    pub fn dyadic_enclosure(&self, prec: u64) -> DyadicInterval {
        if let Some(r) = self.as_rational() {
            return DyadicInterval::from_rational(r, prec);
        }
        let (lo, hi) = self.bracket(prec);
        DyadicInterval::enclosing(&lo, &hi, prec)
    }

    /// Exact comparison of two algebraic reals.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if self.same_number(other) {
            return Ordering::Equal;
        }
        let mut bits = 8;
        loop {
            let a = self.dyadic_enclosure(bits);
            let b = other.dyadic_enclosure(bits);
            if a.hi() < b.lo() {
                return Ordering::Less;
            }
            if b.hi() < a.lo() {
                return Ordering::Greater;
            }
            bits *= 2;
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        if let Some(v) = self.as_rational() {
            return v.cmp(r);
        }
        if r < &self.0.lo {
            return Ordering::Greater;
        }
        if r > &self.0.hi {
            return Ordering::Less;
        }
        // r lies inside the isolating interval and is not a root.
        if self.0.poly.sign_at(r) == self.0.sign_lo {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.dyadic_enclosure(64).mid_f64()
    }
}

fn bisect(
    poly: &IntPolynomial,
    sign_lo: Ordering,
    mut lo: BigRational,
    mut hi: BigRational,
    target: &BigRational,
) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    while &hi - &lo > *target {
        let mid = (&lo + &hi) / &two;
        match poly.sign_at(&mid) {
            Ordering::Equal => return (mid.clone(), mid),
            s if s == sign_lo => lo = mid,
            _ => hi = mid,
        }
    }
    (lo, hi)
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.same_number(other)
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (~{})", self.to_f64())
    }
}

impl fmt::Display for AlgebraicReal {
    /// `root([c0,...,cd],lo,hi)`, or `p/q` for rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "root({},{},{})", self.0.poly, self.0.lo, self.0.hi),
        }
    }
}

/// Parses an exact rational: `7`, `-3/2` or a finite decimal such as `1.25`.
pub fn parse_rational(text: &str) -> Result<BigRational, ExactError> {
    let t = text.trim();
    let bad = || ExactError::Parse(format!("not a rational number: `{t}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if frac_part.is_empty() || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if neg {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10u8), frac_part.len());
        return Ok(BigRational::new(n, d));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

impl FromStr for AlgebraicReal {
    type Err = ExactError;

    /// Accepts `root([c0,c1,...],lo,hi)` or an exact rational.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let Some(body) = t.strip_prefix("root(").and_then(|b| b.strip_suffix(')')) else {
            return Ok(AlgebraicReal::from_rational(parse_rational(t)?));
        };
        let open = body.find('[').ok_or_else(|| ExactError::Parse("missing `[`".into()))?;
        let close = body.find(']').ok_or_else(|| ExactError::Parse("missing `]`".into()))?;
        if body[..open].trim() != "" {
            return Err(ExactError::Parse(format!("unexpected text before `[` in `{t}`")));
        }
        let coeffs = body[open + 1..close]
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<BigInt>()
                    .map_err(|_| ExactError::Parse(format!("bad coefficient `{}`", c.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let rest: Vec<&str> = body[close + 1..].split(',').map(str::trim).collect();
        if rest.len() != 3 || !rest[0].is_empty() {
            return Err(ExactError::Parse(format!("expected `root([..],lo,hi)`, got `{t}`")));
        }
        let lo = parse_rational(rest[1])?;
        let hi = parse_rational(rest[2])?;
        AlgebraicReal::new(&IntPolynomial::new(coeffs), lo, hi)
    }
}

/// All distinct positive real roots of `poly`, ascending.
pub fn isolate_positive_roots(poly: &IntPolynomial) -> Result<Vec<AlgebraicReal>, ExactError> {
    if poly.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    for f in irreducible_factors(poly)? {
        if f.degree() == Some(1) {
            let c = f.coeffs();
            let r = BigRational::new(-c[0].clone(), c[1].clone());
            if r.is_positive() {
                roots.push(AlgebraicReal::from_rational(r));
            }
            continue;
        }
        let bound = BigRational::from_integer(f.root_bound());
        let mut stack = vec![(BigRational::zero(), bound)];
        while let Some((a, b)) = stack.pop() {
            match f.count_roots_half_open(&a, &b) {
                0 => {}
                1 => {
                    let sign_lo = f.sign_at(&a);
                    roots.push(AlgebraicReal::build(f.clone(), a, b, None, sign_lo));
                }
                _ => {
                    let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
                    stack.push((mid.clone(), b));
                    stack.push((a, mid));
                }
            }
        }
    }
    roots.sort_by(|a, b| a.cmp_value(b));
    Ok(roots)
}

/// Integer `k`-th root, rounded down, of a non-negative integer.
fn int_root_floor(v: &BigInt, k: u32) -> BigInt {
    v.nth_root(k)
}

/// The unique positive root of `x^(l+k) - m x^l - big_m`, for parameters with
/// `1 <= big_m` and `big_m^k < (m+1)^l`. The root is certified to satisfy
/// `m < alpha^k < m+1`.
pub fn construct_characteristic_alpha(l: u32, k: u32, m: u32, big_m: i64) -> Result<AlgebraicReal, ExactError> {
    assert!(l >= 1 && k >= 1 && m >= 1, "l, k, m must be positive");
    let mb = BigInt::from(big_m);
    let upper = num_traits::pow(BigInt::from(m) + 1, l as usize);
    if big_m < 1 || num_traits::pow(mb.clone(), k as usize) >= upper {
        return Err(ExactError::MOutOfRange { l, k, m, big_m });
    }
    let mut coeffs = vec![BigInt::zero(); (l + k) as usize + 1];
    coeffs[0] = -mb;
    coeffs[l as usize] = -BigInt::from(m);
    coeffs[(l + k) as usize] = BigInt::one();
    let poly = IntPolynomial::new(coeffs);

    // lo^k <= m and hi^k >= m + 1 with integer endpoints; the polynomial is
    // negative at lo and positive at hi, and by Descartes has a single
    // positive root.
    let lo = int_root_floor(&BigInt::from(m), k);
    let mut hi = int_root_floor(&(BigInt::from(m) + 1), k);
    if num_traits::pow(hi.clone(), k as usize) < BigInt::from(m) + 1 {
        hi += 1;
    }
    let lo = BigRational::from_integer(lo);
    let hi = BigRational::from_integer(hi);
    if poly.sign_at(&lo) != Ordering::Less || poly.sign_at(&hi) != Ordering::Greater {
        return Err(ExactError::NonUniqueRoot);
    }
    let alpha = AlgebraicReal::new(&poly, lo, hi).map_err(|_| ExactError::NonUniqueRoot)?;

    // m < alpha^k < m + 1, decided exactly.
    let ak = super::FieldElement::generator(&alpha).pow(k);
    let below = ak.add_rational(&BigRational::from_integer(-BigInt::from(m)));
    let above = ak.add_rational(&BigRational::from_integer(-(BigInt::from(m) + BigInt::from(1))));
    if below.sign() != Ordering::Greater || above.sign() != Ordering::Less {
        return Err(ExactError::NonUniqueRoot);
    }
    Ok(alpha)
}

/// Admissible `M` values for `(l, k, m)`: `1 <= M` and `M^k < (m+1)^l`.
pub fn admissible_m_values(l: u32, k: u32, m: u32) -> Vec<i64> {
    let upper = num_traits::pow(BigInt::from(m) + 1, l as usize);
    (1i64..)
        .take_while(|&v| num_traits::pow(BigInt::from(v), k as usize) < upper)
        .collect()
}

/// Floor of `log2(|x|)` plus one, i.e. the bit length of the integer part.
pub(crate) fn magnitude_bits(x: &BigRational) -> u64 {
    let int = x.abs().ceil().to_integer();
    int.bits().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn golden() -> AlgebraicReal {
        "root([-1,-1,1],1,2)".parse().unwrap()
    }

    #[test]
    fn perfect_square_demotes_to_rational() {
        let roots = isolate_positive_roots(&IntPolynomial::from_i64s(&[-4, 0, 1])).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].as_rational(), Some(&q(2, 1)));
        assert_eq!(roots[0].poly(), &IntPolynomial::from_i64s(&[-2, 1]));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(matches!(
            isolate_positive_roots(&IntPolynomial::zero()),
            Err(ExactError::ZeroPolynomial)
        ));
    }

    #[test]
    fn mixed_factors_sorted() {
        // (x - 3)(x^2 - 2)(2x - 1)
        let p = IntPolynomial::from_i64s(&[-3, 1])
            .mul(&IntPolynomial::from_i64s(&[-2, 0, 1]))
            .mul(&IntPolynomial::from_i64s(&[-1, 2]));
        let roots = isolate_positive_roots(&p).unwrap();
        let approx: Vec<f64> = roots.iter().map(|r| r.to_f64()).collect();
        assert_eq!(approx.len(), 3);
        assert!((approx[0] - 0.5).abs() < 1e-15);
        assert!((approx[1] - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((approx[2] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn reducible_input_keeps_minimal_factor() {
        // x^4 - 3x^2 + 2 = (x^2 - 1)(x^2 - 2): root in [1.2, 2] is sqrt 2.
        let p = IntPolynomial::from_i64s(&[2, 0, -3, 0, 1]);
        let a = AlgebraicReal::new(&p, q(6, 5), q(2, 1)).unwrap();
        assert_eq!(a.poly(), &IntPolynomial::from_i64s(&[-2, 0, 1]));
    }

    #[test]
    fn non_isolating_interval_rejected() {
        let p = IntPolynomial::from_i64s(&[-2, 0, 1]);
        assert!(matches!(
            AlgebraicReal::new(&p, q(-2, 1), q(2, 1)),
            Err(ExactError::NotIsolating { .. })
        ));
        assert!(matches!(AlgebraicReal::new(&p, q(0, 1), q(1, 1)), Err(ExactError::NotIsolating { .. })));
    }

    #[test]
    fn rational_refine_is_a_point() {
        let a = AlgebraicReal::from_rational(q(3, 2));
        assert_eq!(a.refine(&q(1, 10)), (q(3, 2), q(3, 2)));
    }

    #[test]
    fn cmp_rational_inside_interval() {
        let g = golden();
        assert_eq!(g.cmp_rational(&q(8, 5)), Ordering::Greater);
        assert_eq!(g.cmp_rational(&q(13, 8)), Ordering::Less);
        assert_eq!(g.cmp_rational(&q(3, 1)), Ordering::Less);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let g = golden();
        let again: AlgebraicReal = g.to_string().parse().unwrap();
        assert!(again.same_number(&g));
        assert_eq!("3/2".parse::<AlgebraicReal>().unwrap().to_string(), "3/2");
        assert_eq!(parse_rational("1.914213562").unwrap(), q(957106781, 500000000));
        assert!("root([1,2],1)".parse::<AlgebraicReal>().is_err());
    }

    #[test]
    fn characteristic_alpha_boundary() {
        assert!(matches!(
            construct_characteristic_alpha(2, 1, 1, 4),
            Err(ExactError::MOutOfRange { .. })
        ));
        assert!(matches!(
            construct_characteristic_alpha(1, 1, 1, 0),
            Err(ExactError::MOutOfRange { .. })
        ));
        assert_eq!(admissible_m_values(2, 1, 1), vec![1, 2, 3]);
        assert_eq!(admissible_m_values(1, 1, 2), vec![1, 2]);
    }

    #[test]
    fn same_number_across_intervals() {
        let a: AlgebraicReal = "root([-2,0,1],1,2)".parse().unwrap();
        let b: AlgebraicReal = "root([-4,0,2],7/5,3/2)".parse().unwrap();
        let c: AlgebraicReal = "root([-2,0,1],-2,-1)".parse().unwrap();
        assert!(a.same_number(&b));
        assert!(!a.same_number(&c));
    }
}
