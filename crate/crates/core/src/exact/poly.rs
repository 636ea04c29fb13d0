use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// constant term first. Trailing zero coefficients are never stored, so the
/// zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    /// `x - r` for an integer `r`; convenience for tests and builders.
    pub fn monomial(coeff: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self::new(coeffs)
    }

    /// Primitive linear polynomial `den*x - num` vanishing at `r`.
    pub fn linear_for(r: &BigRational) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(num/den)` computed on the homogenised integer form, which
    /// avoids rational normalisation in the inner loop.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.homogeneous_eval(x.numer(), x.denom()).cmp(&BigInt::zero())
    }

    /// Sign of `p(a / 2^scale)`.
    pub fn sign_at_dyadic(&self, a: &BigInt, scale: u64) -> Ordering {
        let Some(deg) = self.degree() else {
            return Ordering::Equal;
        };
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * a + (c << (scale * (deg - i) as u64));
        }
        acc.cmp(&BigInt::zero())
    }

    /// `den^deg * p(num/den)`; `den` must be positive.
    fn homogeneous_eval(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let Some(deg) = self.degree() else {
            return BigInt::zero();
        };
        let mut den_pows = Vec::with_capacity(deg + 1);
        den_pows.push(BigInt::one());
        for i in 1..=deg {
            let next = &den_pows[i - 1] * den;
            den_pows.push(next);
        }
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * num + c * &den_pows[deg - i];
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Divides by the (positive) content, preserving the sign of every value.
    fn positive_primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let lc = d.leading().unwrap();
        let Some(sd) = self.degree() else {
            return Self::zero();
        };
        if sd < dd {
            return self.clone();
        }
        let total = sd - dd + 1;
        let mut steps = 0;
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.pop().unwrap();
            let shift = r.len() - dd;
            for c in r.iter_mut() {
                *c *= lc;
            }
            for (i, dc) in d.coeffs[..dd].iter().enumerate() {
                r[shift + i] -= &top * dc;
            }
            steps += 1;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        // Skipped degrees still owe their factor of lc.
        let owed = num_traits::pow(lc.clone(), total - steps);
        Self::new(r.into_iter().map(|c| c * &owed).collect())
    }

    /// Exact division over the integers, `None` if `d` does not divide `self`
    /// in `Z[x]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &r[k + dd];
            let (qk, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qk * dc;
            }
            q[k] = qk;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Greatest common divisor as a primitive polynomial with positive
    /// leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// Primitive squarefree part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> Self {
        let p = self.primitive_part();
        if p.degree().unwrap_or(0) == 0 {
            return p;
        }
        let g = p.gcd(&p.derivative());
        p.div_exact(&g)
            .expect("gcd divides its argument")
            .primitive_part()
    }

    /// Sturm chain `p, p', -rem(p, p'), ...` kept primitive, with every
    /// member a positive multiple of the classical Sturm polynomial.
    pub fn sturm_chain(&self) -> Vec<IntPolynomial> {
        let mut chain = vec![self.positive_primitive()];
        let d = self.derivative().positive_primitive();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.degree() == Some(0) {
                break;
            }
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let lc = b.leading().unwrap();
            // prem = lc^(delta+1) * rem; the classical term is -rem.
            let scale_negative = lc.is_negative() && (delta + 1) % 2 == 1;
            let prem = a.pseudo_rem(b);
            if prem.is_zero() {
                break;
            }
            let next = if scale_negative { prem } else { prem.neg() };
            chain.push(next.positive_primitive());
        }
        chain
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots_half_open(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let chain = self.sturm_chain();
        let va = sign_variations(&chain, lo);
        let vb = sign_variations(&chain, hi);
        va.saturating_sub(vb)
    }

    /// Number of distinct real roots in the closed interval `[lo, hi]`.
    pub fn count_roots_closed(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let extra = usize::from(self.sign_at(lo) == Ordering::Equal);
        self.count_roots_half_open(lo, hi) + extra
    }

    /// Cauchy bound: every real root has absolute value below the result.
    pub fn root_bound(&self) -> BigInt {
        let lc = self.leading().expect("root bound of zero polynomial").abs();
        let max = self.coeffs.iter().map(|c| c.abs()).max().unwrap();
        BigInt::one() + max.div_ceil(&lc)
    }
}

fn sign_variations(chain: &[IntPolynomial], x: &BigRational) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl fmt::Display for IntPolynomial {
    /// Canonical list form `[c0,c1,...]`, as used by `root(...)` specs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn trims_and_degree() {
        let p = IntPolynomial::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(IntPolynomial::from_i64s(&[0, 0]).degree(), None);
    }

    #[test]
    fn sturm_counts_roots_of_x2_minus_2() {
        let p = IntPolynomial::from_i64s(&[-2, 0, 1]);
        assert_eq!(p.count_roots_half_open(&q(-2, 1), &q(2, 1)), 2);
        assert_eq!(p.count_roots_half_open(&q(0, 1), &q(2, 1)), 1);
        assert_eq!(p.count_roots_half_open(&q(3, 2), &q(2, 1)), 0);
    }

    #[test]
    fn sturm_counts_with_negative_leading_terms() {
        // -(x-1)(x-2)(x-3)(x+5)
        let p = IntPolynomial::from_i64s(&[1, -1])
            .mul(&IntPolynomial::from_i64s(&[-2, 1]))
            .mul(&IntPolynomial::from_i64s(&[-3, 1]))
            .mul(&IntPolynomial::from_i64s(&[5, 1]));
        assert_eq!(p.count_roots_half_open(&q(-10, 1), &q(10, 1)), 4);
        assert_eq!(p.count_roots_half_open(&q(1, 1), &q(3, 1)), 2);
        assert_eq!(p.count_roots_closed(&q(1, 1), &q(3, 1)), 3);
    }

    #[test]
    fn squarefree_and_division() {
        let a = IntPolynomial::from_i64s(&[-1, 1]);
        let b = IntPolynomial::from_i64s(&[1, 1]);
        let p = a.mul(&a).mul(&b);
        assert_eq!(p.squarefree_part(), a.mul(&b));
        assert_eq!(p.div_exact(&a.mul(&b)), Some(a.clone()));
        assert_eq!(p.div_exact(&IntPolynomial::from_i64s(&[2, 1])), None);
    }

    #[test]
    fn dyadic_sign_matches_rational_sign() {
        let p = IntPolynomial::from_i64s(&[-1, -1, 1]);
        // 13/8 = 1.625 > phi
        assert_eq!(p.sign_at_dyadic(&BigInt::from(13), 3), Ordering::Greater);
        assert_eq!(p.sign_at(&q(13, 8)), Ordering::Greater);
        assert_eq!(p.sign_at_dyadic(&BigInt::from(12), 3), Ordering::Less);
    }
}
