use std::fmt;

use rayon::prelude::*;

use super::{
    admissible_delta_interval, check_condition, check_condition_pair, ConditionReport, IdentityCase,
    IdentityError, PairCondition, ScanSummary, Variant,
};
use crate::exact::Rational;

/// What the algebraic side predicts for a case.
#[derive(Clone, Debug)]
pub struct Expectation {
    /// `None` when no theorem applies.
    pub condition: Option<bool>,
    pub report: Option<ConditionReport>,
    pub note: String,
}

impl Expectation {
    fn verdict(report: ConditionReport) -> Self {
        let note = report.to_string();
        Expectation { condition: Some(report.holds()), report: Some(report), note }
    }

    fn none(note: &str) -> Self {
        Expectation { condition: None, report: None, note: note.to_string() }
    }
}

pub fn expected_verdict(case: &IdentityCase) -> Result<Expectation, IdentityError> {
    let alpha = &case.alpha;
    if alpha.cmp_rational(&Rational::from_integer(0.into())).is_le() {
        return Ok(Expectation::none("alpha is not positive"));
    }
    Ok(match &case.variant {
        Variant::Z1 | Variant::Z2 => Expectation::verdict(check_condition(alpha, 1, 1, 1)),
        Variant::Main { l, k } | Variant::Poly { l, k, .. } => Expectation::verdict(check_condition(alpha, *l, *k, 1)),
        Variant::MVar { l, k, m } => Expectation::verdict(check_condition(alpha, *l, *k, *m)),
        Variant::Delta { l, k, delta } => match admissible_delta_interval(alpha, *k) {
            Err(IdentityError::AlphaOutOfHypothesis) => Expectation::none("alpha outside (0,1) u (1, 2^(1/k))"),
            Err(e) => return Err(e),
            Ok(iv) if !iv.contains(delta) => Expectation::none("delta outside [alpha^k - 1, 1)"),
            Ok(_) => Expectation::verdict(check_condition(alpha, *l, *k, 1)),
        },
        Variant::Pair { m } => {
            let beta = case.beta.as_ref().ok_or(IdentityError::BetaMissing)?;
            match check_condition_pair(alpha, beta, *m) {
                PairCondition::InField(r) => Expectation::verdict(r),
                PairCondition::NotInField => Expectation {
                    condition: Some(false),
                    report: None,
                    note: "beta not found in Q alpha + Q".to_string(),
                },
            }
        }
        Variant::Triple => Expectation::none("open problem: evidence only"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Condition and scan agree.
    Agree,
    /// The condition holds but the identity fails: a bug or a false theorem.
    HardDisagreement,
    /// The condition fails yet no violation was found in range.
    Undistinguished,
    /// No theorem gives a prediction.
    NoVerdict,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Agree => "agree",
            Classification::HardDisagreement => "hard-disagreement",
            Classification::Undistinguished => "undistinguished",
            Classification::NoVerdict => "no-verdict",
        }
    }

    pub fn classify(condition: Option<bool>, holds: bool) -> Self {
        match (condition, holds) {
            (None, _) => Classification::NoVerdict,
            (Some(true), true) | (Some(false), false) => Classification::Agree,
            (Some(true), false) => Classification::HardDisagreement,
            (Some(false), true) => Classification::Undistinguished,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct CrossRow {
    pub case: IdentityCase,
    pub expectation: Expectation,
    pub scan: ScanSummary,
    pub classification: Classification,
}

/// Condition verdict against identity scan for every case, in input order.
pub fn cross_validate(
    cases: &[IdentityCase],
    n_lo: i64,
    n_hi: i64,
    cap: usize,
) -> Result<Vec<CrossRow>, IdentityError> {
    cases
        .par_iter()
        .map(|case| {
            let expectation = expected_verdict(case)?;
            let scan = case.prepare()?.scan(n_lo, n_hi, cap)?;
            let classification = Classification::classify(expectation.condition, scan.holds());
            Ok(CrossRow { case: case.clone(), expectation, scan, classification })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, AlgebraicReal, IntPolynomial};

    #[test]
    fn table() {
        let golden: AlgebraicReal = "root([-1,-1,1],1,2)".parse().unwrap();
        let sqrt2: AlgebraicReal = "root([-2,0,1],1,2)".parse().unwrap();
        let r32 = AlgebraicReal::from_rational(parse_rational("3/2").unwrap());
        let main = Variant::Main { l: 1, k: 1 };
        let poly = Variant::Poly { l: 1, k: 1, p: IntPolynomial::from_i64s(&[1, 4]) };
        let cases = vec![
            IdentityCase::new(main.clone(), golden.clone()),
            IdentityCase::new(main, sqrt2),
            IdentityCase::new(poly, r32),
            IdentityCase::new(Variant::Triple, golden),
        ];
        let rows = cross_validate(&cases, -3000, 3000, 10).unwrap();
        let got: Vec<_> = rows.iter().map(|r| r.classification).collect();
        use Classification::*;
        assert_eq!(got, vec![Agree, Agree, Undistinguished, NoVerdict]);
        assert_eq!(rows[1].scan.first_violation.as_ref().unwrap().n.abs(), 2);
        assert_eq!(rows[2].expectation.condition, Some(false));
    }
}
