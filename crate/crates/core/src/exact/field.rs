use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::algebraic::{magnitude_bits, AlgebraicReal};
use super::dyadic::DyadicInterval;
use super::ExactError;

/// Grid exponent of the enclosure cached on every element.
pub const ENCLOSURE_PREC: u64 = 128;

/// An exact element `c0 + c1 a + ... + c_{d-1} a^{d-1}` of `Q[a]`, reduced
/// modulo the minimal polynomial of its base `a`.
///
/// Cloning is cheap; clones share the cached numeric enclosure.
#[derive(Clone)]
pub struct FieldElement(Arc<Inner>);

struct Inner {
    base: AlgebraicReal,
    coords: Vec<BigRational>,
    enclosure: OnceLock<DyadicInterval>,
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl FieldElement {
    fn from_canonical(base: &AlgebraicReal, coords: Vec<BigRational>) -> Self {
        debug_assert_eq!(coords.len(), base.degree());
        FieldElement(Arc::new(Inner { base: base.clone(), coords, enclosure: OnceLock::new() }))
    }

    /// Reduces an arbitrary coefficient vector modulo the minimal polynomial.
    pub fn from_coeffs(base: &AlgebraicReal, mut coeffs: Vec<BigRational>) -> Self {
        let d = base.degree();
        let red = base.reduction();
        if d == 1 {
            // a is rational; evaluate directly.
            let a = base.as_rational().unwrap();
            let mut acc = BigRational::zero();
            for c in coeffs.iter().rev() {
                acc = acc * a + c;
            }
            return Self::from_canonical(base, vec![acc]);
        }
        while coeffs.len() > d {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - d;
            for (i, r) in red.iter().enumerate() {
                coeffs[shift + i] += &top * r;
            }
        }
        coeffs.resize(d, BigRational::zero());
        Self::from_canonical(base, coeffs)
    }

    pub fn from_rational(base: &AlgebraicReal, r: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); base.degree()];
        coords[0] = r;
        Self::from_canonical(base, coords)
    }

    pub fn from_integer(base: &AlgebraicReal, n: i64) -> Self {
        Self::from_rational(base, BigRational::from_integer(n.into()))
    }

    pub fn zero(base: &AlgebraicReal) -> Self {
        Self::from_rational(base, BigRational::zero())
    }

    pub fn one(base: &AlgebraicReal) -> Self {
        Self::from_rational(base, BigRational::one())
    }

    /// The base number itself.
    pub fn generator(base: &AlgebraicReal) -> Self {
        Self::from_coeffs(base, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn base(&self) -> &AlgebraicReal {
        &self.0.base
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0.coords
    }

    pub fn is_zero(&self) -> bool {
        self.0.coords.iter().all(Zero::is_zero)
    }

    /// The rational value, if every coordinate beyond the constant one is 0.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.0.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.0.coords[0].clone())
    }

    /// Re-expresses a rational element over another base.
    pub fn rebase_rational(&self, base: &AlgebraicReal) -> Option<Self> {
        self.as_rational().map(|r| Self::from_rational(base, r))
    }

    fn same_base(&self, other: &Self) -> Result<(), ExactError> {
        if self.0.base.same_number(&other.0.base) {
            Ok(())
        } else {
            Err(ExactError::MixedBase)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_base(other)?;
        let coords = self.0.coords.iter().zip(&other.0.coords).map(|(a, b)| a + b).collect();
        Ok(Self::from_canonical(&self.0.base, coords))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_base(other)?;
        let coords = self.0.coords.iter().zip(&other.0.coords).map(|(a, b)| a - b).collect();
        Ok(Self::from_canonical(&self.0.base, coords))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_base(other)?;
        let (a, b) = (&self.0.coords, &other.0.coords);
        let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Ok(Self::from_coeffs(&self.0.base, prod))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::from_canonical(&self.0.base, self.0.coords.iter().map(|c| c * r).collect())
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(n.clone()))
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        let mut coords = self.0.coords.clone();
        coords[0] += r;
        Self::from_canonical(&self.0.base, coords)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.0.base);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the (irreducible) minimal polynomial.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let base = &self.0.base;
        let modulus: Vec<BigRational> = base
            .poly()
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut a = self.0.coords.clone();
        trim(&mut a);
        // Invariant: s_i * self == r_i  (mod modulus)
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because the modulus is irreducible.
        let c = r1[0].clone();
        let inv: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        Ok(Self::from_coeffs(base, inv))
    }

    /// Exact sign, deciding zero from the canonical coordinates first.
    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if let Some(s) = self.enclosure().sign() {
            return s;
        }
        let mut prec = 2 * ENCLOSURE_PREC;
        loop {
            if let Some(s) = self.enclosure_at(prec).sign() {
                return s;
            }
            prec *= 2;
        }
    }

    /// Cached enclosure at [`ENCLOSURE_PREC`].
    pub fn enclosure(&self) -> &DyadicInterval {
        self.0.enclosure.get_or_init(|| self.enclosure_at(ENCLOSURE_PREC))
    }

    /// Enclosure on the grid `2^-prec`, computed by interval Horner
    /// evaluation over a dyadic enclosure of the base.
    pub fn enclosure_at(&self, prec: u64) -> DyadicInterval {
        if let Some(r) = self.as_rational() {
            return DyadicInterval::from_rational(&r, prec);
        }
        let base = &self.0.base;
        let d = self.0.coords.len() as u64;
        let coord_bits = self
            .0
            .coords
            .iter()
            .map(|c| magnitude_bits(c) + c.denom().bits())
            .max()
            .unwrap_or(1);
        let base_bits = base.interval().1.abs().ceil().to_integer().bits() + 1;
        let guard = 16 + coord_bits + d * base_bits;
        let work = prec + guard;
        let a = base.dyadic_enclosure(work);
        let mut acc = DyadicInterval::from_rational(&self.0.coords[d as usize - 1], work);
        for c in self.0.coords[..d as usize - 1].iter().rev() {
            acc = acc.mul(&a).add(&DyadicInterval::from_rational(c, work));
        }
        acc.with_prec(prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure().mid_f64()
    }
}

fn poly_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    trim(&mut v);
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    poly_trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lc = &b[db];
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / lc;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &f * bc;
        }
        q[shift] = f;
        r.pop();
        trim(&mut r);
    }
    (poly_trim(q), r)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.0.base.same_number(&other.0.base) && self.0.coords == other.0.coords
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (~{})", self.to_f64())
    }
}

impl fmt::Display for FieldElement {
    /// Polynomial in `a`, e.g. `1 + 2*a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = if first { "" } else { " + " };
            first = false;
            match i {
                0 => write!(f, "{sep}{c}")?,
                1 => write!(f, "{sep}{c}*a")?,
                _ => write!(f, "{sep}{c}*a^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics if the operands live over different bases.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field elements over different bases")
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.scale(&-BigRational::one())
    }
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
    fn golden_square_reduces() {
        let a = FieldElement::generator(&golden());
        assert_eq!(a.pow(2).coords(), &[q(1, 1), q(1, 1)]);
        assert_eq!(a.pow(0).coords(), &[q(1, 1), q(0, 1)]);
    }

    #[test]
    fn silver_square_reduces() {
        let s: AlgebraicReal = "root([-1,-2,1],2,3)".parse().unwrap();
        let a = FieldElement::generator(&s);
        assert_eq!(a.pow(2).coords(), &[q(1, 1), q(2, 1)]);
        let r = (&a.pow(2) - &a.scale_int(&BigInt::from(2))).as_rational();
        assert_eq!(r, Some(q(1, 1)));
    }

    #[test]
    fn inverse_round_trip() {
        let c: AlgebraicReal = "root([-4,0,0,1],1,2)".parse().unwrap();
        let x = FieldElement::generator(&c).add_rational(&q(3, 7));
        let inv = x.inverse().unwrap();
        assert_eq!((&x * &inv).as_rational(), Some(q(1, 1)));
        assert!(matches!(FieldElement::zero(&c).inverse(), Err(ExactError::DivisionByZero)));
    }

    #[test]
    fn signs_near_the_root() {
        let g = golden();
        let a = FieldElement::generator(&g);
        assert_eq!((&a.pow(2) - &a).add_rational(&q(-1, 1)).sign(), Ordering::Equal);
        assert_eq!(a.add_rational(&q(-1, 1)).sign(), Ordering::Greater);
        assert_eq!(a.add_rational(&q(-2, 1)).sign(), Ordering::Less);
        // phi - F_{31}/F_{30} is tiny but nonzero.
        let close = a.add_rational(&-q(1346269, 832040));
        assert_eq!(close.sign(), Ordering::Less);
    }

    #[test]
    fn mixed_bases_rejected() {
        let a = FieldElement::generator(&golden());
        let b = FieldElement::generator(&"root([-2,0,1],1,2)".parse().unwrap());
        assert!(matches!(a.checked_add(&b), Err(ExactError::MixedBase)));
    }

    #[test]
    fn rational_base_collapses() {
        let r = AlgebraicReal::from_rational(q(3, 2));
        let a = FieldElement::generator(&r);
        assert_eq!(a.pow(3).as_rational(), Some(q(27, 8)));
    }
}
