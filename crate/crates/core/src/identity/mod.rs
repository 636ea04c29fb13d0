//! Nested-floor identities: per-`n` checks, range scans, the algebraic
//! conditions that characterise them, and cross-validation of the two.

mod condition;
mod cross;
mod mixed;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{AlgebraicReal, ExactError, FieldElement, IntPolynomial, Rational};
use crate::floor::{eval_bracket_chain, floor_mul, floor_mul_shift};

pub use condition::{
    admissible_delta_interval, check_condition, check_condition_pair, embed_in_field, r_of, ConditionReport,
    DeltaInterval, PairCondition, PAIR_SEARCH_HEIGHT,
};
pub use cross::{cross_validate, expected_verdict, Classification, CrossRow, Expectation};
pub(crate) use mixed::field_element_equals;
use mixed::MixedQuotient;

/// Default cap on the number of violations kept by a scan.
pub const DEFAULT_VIOLATION_CAP: usize = 1000;

#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("the pair identity needs a beta")]
    BetaMissing,
    #[error("delta = {0} is outside [0, 1)")]
    BadDelta(Rational),
    #[error("alpha is outside (0,1) u (1, 2^(1/k))")]
    AlphaOutOfHypothesis,
    #[error("alpha must be irrational")]
    RationalAlpha,
    #[error("n must be nonzero")]
    ZeroN,
    #[error("{0} must be at least 1")]
    ZeroParameter(&'static str),
    #[error("the polynomial must be non-constant")]
    ConstantPolynomial,
    #[error("alpha and beta must be positive")]
    NonPositive,
    #[error("empty range [{0}, {1}]")]
    EmptyRange(i64, i64),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Which identity is being checked.
#[derive(Clone, Debug, PartialEq)]
pub enum Variant {
    /// `[([na]+1)a] = [na^2]+1` for all `n`.
    Z1,
    /// `[[na]a]+1 = [na^2]` for `n != 0`.
    Z2,
    /// `[[na^l]a^k]+1 = [na^(l+k)]` for `n != 0`.
    Main { l: u32, k: u32 },
    /// `[[na^l]a^k + delta] = [na^(l+k)]` for all `n`.
    Delta { l: u32, k: u32, delta: Rational },
    /// `[[na^l]a^k] + [nma^l] + 1 - m[na^l] = [na^(l+k)]` for `n != 0`.
    MVar { l: u32, k: u32, m: u32 },
    /// `[nb] - [[na]b/a] = [nma] + 1 - m[na]` for `n != 0`.
    Pair { m: u32 },
    /// The `Main` identity at `P(n)`, skipping the integer roots of `P`.
    Poly { l: u32, k: u32, p: IntPolynomial },
    /// `[[[na]a]a]+1 = [na^3]` for `n != 0`.
    Triple,
}

impl Variant {
    /// Whether `n = 0` is excluded from the quantifier.
    pub fn excludes_zero(&self) -> bool {
        !matches!(self, Variant::Z1 | Variant::Delta { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Z1 => "z1",
            Variant::Z2 => "z2",
            Variant::Main { .. } => "main",
            Variant::Delta { .. } => "delta",
            Variant::MVar { .. } => "mvar",
            Variant::Pair { .. } => "pair",
            Variant::Poly { .. } => "poly",
            Variant::Triple => "triple",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Z1 | Variant::Z2 | Variant::Triple => write!(f, "{}", self.name()),
            Variant::Main { l, k } => write!(f, "main(l={l},k={k})"),
            Variant::Delta { l, k, delta } => write!(f, "delta(l={l},k={k},delta={delta})"),
            Variant::MVar { l, k, m } => write!(f, "mvar(l={l},k={k},m={m})"),
            Variant::Pair { m } => write!(f, "pair(m={m})"),
            Variant::Poly { l, k, p } => write!(f, "poly(l={l},k={k},P={p})"),
        }
    }
}

/// The second number of a pair identity: either an element of `Q[a]` or an
/// algebraic number given on its own.
#[derive(Clone, Debug)]
pub enum Beta {
    InField(FieldElement),
    Independent(AlgebraicReal),
}

impl Beta {
    pub fn to_f64(&self) -> f64 {
        match self {
            Beta::InField(e) => e.to_f64(),
            Beta::Independent(b) => b.to_f64(),
        }
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Beta::InField(e) => write!(f, "{e}"),
            Beta::Independent(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityCase {
    pub variant: Variant,
    pub alpha: AlgebraicReal,
    pub beta: Option<Beta>,
}

/// One evaluated instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    pub n: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
    /// `lhs - rhs`; zero iff the identity holds at `n`.
    pub residual: BigInt,
    /// `n` is outside the identity's quantifier; nothing was evaluated.
    pub skipped: bool,
}

impl ResidualReport {
    fn skipped(n: i64) -> Self {
        ResidualReport { n, lhs: BigInt::zero(), rhs: BigInt::zero(), residual: BigInt::zero(), skipped: true }
    }

    fn evaluated(n: i64, lhs: BigInt, rhs: BigInt) -> Self {
        let residual = &lhs - &rhs;
        ResidualReport { n, lhs, rhs, residual, skipped: false }
    }

    pub fn is_violation(&self) -> bool {
        !self.skipped && !self.residual.is_zero()
    }
}

fn powers(alpha: &AlgebraicReal, l: u32, k: u32) -> (FieldElement, FieldElement, FieldElement) {
    let a = FieldElement::generator(alpha);
    (a.pow(l), a.pow(k), a.pow(l + k))
}

fn need(v: u32, name: &'static str) -> Result<(), IdentityError> {
    if v == 0 {
        Err(IdentityError::ZeroParameter(name))
    } else {
        Ok(())
    }
}

enum Ratio {
    Exact(FieldElement),
    Mixed(MixedQuotient),
}

impl Ratio {
    fn floor_mul(&self, b: &BigInt) -> BigInt {
        match self {
            Ratio::Exact(e) => floor_mul(b, e),
            Ratio::Mixed(q) => q.floor_mul(b),
        }
    }
}

enum Kernel {
    Z1 { a: FieldElement, a2: FieldElement },
    Main { al: FieldElement, ak: FieldElement, alk: FieldElement },
    Delta { al: FieldElement, ak: FieldElement, alk: FieldElement, delta: Rational },
    MVar { al: FieldElement, ak: FieldElement, alk: FieldElement, mal: FieldElement, m: BigInt },
    Pair { a: FieldElement, ma: FieldElement, m: BigInt, beta: FieldElement, ratio: Ratio },
    Poly { p: IntPolynomial, al: FieldElement, ak: FieldElement, alk: FieldElement },
    Triple { chain: [FieldElement; 3], a3: FieldElement },
}

/// An [`IdentityCase`] with every field element it needs precomputed.
pub struct PreparedCase {
    case: IdentityCase,
    kernel: Kernel,
}

impl IdentityCase {
    pub fn new(variant: Variant, alpha: AlgebraicReal) -> Self {
        IdentityCase { variant, alpha, beta: None }
    }

    pub fn with_beta(mut self, beta: Beta) -> Self {
        self.beta = Some(beta);
        self
    }

    /// Validates the parameters and precomputes the powers of `alpha`.
    pub fn prepare(&self) -> Result<PreparedCase, IdentityError> {
        let alpha = &self.alpha;
        let kernel = match &self.variant {
            Variant::Z1 => {
                let a = FieldElement::generator(alpha);
                Kernel::Z1 { a2: a.pow(2), a }
            }
            Variant::Z2 => {
                let (al, ak, alk) = powers(alpha, 1, 1);
                Kernel::Main { al, ak, alk }
            }
            Variant::Main { l, k } => {
                need(*l, "l")?;
                need(*k, "k")?;
                let (al, ak, alk) = powers(alpha, *l, *k);
                Kernel::Main { al, ak, alk }
            }
            Variant::Delta { l, k, delta } => {
                need(*l, "l")?;
                need(*k, "k")?;
                if delta.is_negative() || delta >= &Rational::one() {
                    return Err(IdentityError::BadDelta(delta.clone()));
                }
                let (al, ak, alk) = powers(alpha, *l, *k);
                Kernel::Delta { al, ak, alk, delta: delta.clone() }
            }
            Variant::MVar { l, k, m } => {
                need(*l, "l")?;
                need(*k, "k")?;
                need(*m, "m")?;
                let (al, ak, alk) = powers(alpha, *l, *k);
                let m = BigInt::from(*m);
                Kernel::MVar { mal: al.scale_int(&m), al, ak, alk, m }
            }
            Variant::Pair { m } => {
                need(*m, "m")?;
                let beta = self.beta.as_ref().ok_or(IdentityError::BetaMissing)?;
                self.pair_kernel(beta, *m)?
            }
            Variant::Poly { l, k, p } => {
                need(*l, "l")?;
                need(*k, "k")?;
                if p.degree().unwrap_or(0) == 0 {
                    return Err(IdentityError::ConstantPolynomial);
                }
                let (al, ak, alk) = powers(alpha, *l, *k);
                Kernel::Poly { p: p.clone(), al, ak, alk }
            }
            Variant::Triple => {
                let a = FieldElement::generator(alpha);
                Kernel::Triple { a3: a.pow(3), chain: [a.clone(), a.clone(), a] }
            }
        };
        Ok(PreparedCase { case: self.clone(), kernel })
    }

    fn pair_kernel(&self, beta: &Beta, m: u32) -> Result<Kernel, IdentityError> {
        let alpha = &self.alpha;
        if alpha.cmp_rational(&Rational::zero()).is_le() {
            return Err(IdentityError::NonPositive);
        }
        let a = FieldElement::generator(alpha);
        let m = BigInt::from(m);
        let in_field = match beta {
            Beta::InField(e) => Some(e.clone()),
            Beta::Independent(b) => embed_in_field(b, alpha, PAIR_SEARCH_HEIGHT),
        };
        let (beta_elem, ratio) = match in_field {
            Some(e) => {
                if e.base().same_number(alpha) {
                    let ratio = e.checked_div(&a)?;
                    (e, Ratio::Exact(ratio))
                } else {
                    // Rational beta over another base.
                    let e = e.rebase_rational(alpha).ok_or(ExactError::MixedBase)?;
                    let ratio = e.checked_div(&a)?;
                    (e, Ratio::Exact(ratio))
                }
            }
            None => {
                let Beta::Independent(b) = beta else { unreachable!() };
                let e = FieldElement::generator(b);
                (e, Ratio::Mixed(MixedQuotient::new(alpha, b)))
            }
        };
        if beta_elem.sign().is_le() {
            return Err(IdentityError::NonPositive);
        }
        Ok(Kernel::Pair { ma: a.scale_int(&m), a, m, beta: beta_elem, ratio })
    }
}

/// `[[b e1] e2]`-style helper: `[x * e]` for an integer `x`.
fn fl(x: &BigInt, e: &FieldElement) -> BigInt {
    floor_mul(x, e)
}

impl PreparedCase {
    pub fn case(&self) -> &IdentityCase {
        &self.case
    }

    /// Evaluates both sides at `n`.
    pub fn check(&self, n: i64) -> ResidualReport {
        if n == 0 && self.case.variant.excludes_zero() {
            return ResidualReport::skipped(n);
        }
        let nb = BigInt::from(n);
        match &self.kernel {
            Kernel::Z1 { a, a2 } => {
                let b = fl(&nb, a) + 1;
                ResidualReport::evaluated(n, fl(&b, a), fl(&nb, a2) + 1)
            }
            Kernel::Main { al, ak, alk } => {
                let b = fl(&nb, al);
                ResidualReport::evaluated(n, fl(&b, ak) + 1, fl(&nb, alk))
            }
            Kernel::Delta { al, ak, alk, delta } => {
                let b = fl(&nb, al);
                ResidualReport::evaluated(n, floor_mul_shift(&b, ak, delta), fl(&nb, alk))
            }
            Kernel::MVar { al, ak, alk, mal, m } => {
                let b = fl(&nb, al);
                let lhs = fl(&b, ak) + fl(&nb, mal) + 1 - m * &b;
                ResidualReport::evaluated(n, lhs, fl(&nb, alk))
            }
            Kernel::Pair { a, ma, m, beta, ratio } => {
                let b = fl(&nb, a);
                let lhs = fl(&nb, beta) - ratio.floor_mul(&b);
                let rhs = fl(&nb, ma) + 1 - m * &b;
                ResidualReport::evaluated(n, lhs, rhs)
            }
            Kernel::Poly { p, al, ak, alk } => {
                let pn = p.eval_int(&nb);
                if pn.is_zero() {
                    return ResidualReport::skipped(n);
                }
                let b = fl(&pn, al);
                ResidualReport::evaluated(n, fl(&b, ak) + 1, fl(&pn, alk))
            }
            Kernel::Triple { chain, a3 } => {
                let zero = Rational::zero();
                let lhs = eval_bracket_chain(nb.clone(), chain, &[zero.clone(), zero.clone(), zero]) + 1;
                ResidualReport::evaluated(n, lhs, fl(&nb, a3))
            }
        }
    }

    /// Checks every `n` in `[n_lo, n_hi]`, in parallel chunks merged in a
    /// fixed order.
    pub fn scan(&self, n_lo: i64, n_hi: i64, cap: usize) -> Result<ScanSummary, IdentityError> {
        if n_lo > n_hi {
            return Err(IdentityError::EmptyRange(n_lo, n_hi));
        }
        const CHUNK: i128 = 2048;
        let total = n_hi as i128 - n_lo as i128 + 1;
        let chunks = ((total + CHUNK - 1) / CHUNK) as u64;
        let parts: Vec<Partial> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = n_lo as i128 + c as i128 * CHUNK;
                let end = (start + CHUNK - 1).min(n_hi as i128);
                let mut part = Partial::default();
                for n in start..=end {
                    part.record(self.check(n as i64), cap);
                }
                part
            })
            .collect();
        let mut acc = Partial::default();
        for p in parts {
            acc.merge(p, cap);
        }
        let mut violations = acc.kept;
        violations.sort_by_key(|r| r.n);
        Ok(ScanSummary {
            n_lo,
            n_hi,
            checked: acc.checked,
            skipped: acc.skipped,
            violation_count: acc.count,
            first_violation: acc.first,
            violations,
            cap,
        })
    }
}

/// Smallest `|n|` first; `n` before `-n`.
fn priority(r: &ResidualReport) -> (u64, bool) {
    (r.n.unsigned_abs(), r.n < 0)
}

#[derive(Default)]
struct Partial {
    checked: u64,
    skipped: u64,
    count: u64,
    first: Option<ResidualReport>,
    /// Violations with the smallest `|n|`, at most `cap` of them.
    kept: Vec<ResidualReport>,
}

impl Partial {
    fn record(&mut self, r: ResidualReport, cap: usize) {
        if r.skipped {
            self.skipped += 1;
            return;
        }
        self.checked += 1;
        if r.residual.is_zero() {
            return;
        }
        self.count += 1;
        if self.first.as_ref().is_none_or(|f| priority(&r) < priority(f)) {
            self.first = Some(r.clone());
        }
        if cap > 0 {
            self.kept.push(r);
            if self.kept.len() >= cap.saturating_mul(2) {
                self.trim(cap);
            }
        }
    }

    fn trim(&mut self, cap: usize) {
        self.kept.sort_by_key(priority);
        self.kept.truncate(cap);
    }

    fn merge(&mut self, other: Partial, cap: usize) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.count += other.count;
        if let Some(f) = other.first {
            if self.first.as_ref().is_none_or(|g| priority(&f) < priority(g)) {
                self.first = Some(f);
            }
        }
        self.kept.extend(other.kept);
        self.trim(cap);
    }
}

/// Result of checking an identity over a range of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanSummary {
    pub n_lo: i64,
    pub n_hi: i64,
    /// Values of `n` actually evaluated.
    pub checked: u64,
    pub skipped: u64,
    /// Exact number of violations, regardless of the cap.
    pub violation_count: u64,
    /// Violating `n` with the smallest `|n|`, sorted by `n`.
    pub violations: Vec<ResidualReport>,
    /// The violation with the smallest `|n|` (`n` before `-n` on ties).
    pub first_violation: Option<ResidualReport>,
    pub cap: usize,
}

impl ScanSummary {
    pub fn holds(&self) -> bool {
        self.violation_count == 0
    }
}

pub fn check_identity(case: &IdentityCase, n: i64) -> Result<ResidualReport, IdentityError> {
    Ok(case.prepare()?.check(n))
}

pub fn scan_identity(case: &IdentityCase, n_lo: i64, n_hi: i64) -> Result<ScanSummary, IdentityError> {
    case.prepare()?.scan(n_lo, n_hi, DEFAULT_VIOLATION_CAP)
}

pub fn scan_identity_capped(
    case: &IdentityCase,
    n_lo: i64,
    n_hi: i64,
    cap: usize,
) -> Result<ScanSummary, IdentityError> {
    case.prepare()?.scan(n_lo, n_hi, cap)
}

/// `r(n) = [nm e] + 1 - m[n e]` for an element `e`, in `{1..m}` when `e`
/// is irrational and `n != 0`.
pub(crate) fn r_value(n: &BigInt, e: &FieldElement, me: &FieldElement, m: &BigInt) -> BigInt {
    floor_mul(n, me) + 1 - m * floor_mul(n, e)
}
