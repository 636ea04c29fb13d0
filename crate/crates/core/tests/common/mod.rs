//! Shared helpers: the characterised families and their decimal twins.
#![allow(dead_code)]

use floorlab_core::exact::{admissible_m_values, construct_characteristic_alpha};
use floorlab_core::AlgebraicReal;
use floorlab_oracle::{root_in, Decimal, DIGITS};

#[derive(Clone, Debug)]
pub struct Family {
    pub l: u32,
    pub k: u32,
    pub m: u32,
    pub big_m: i64,
    pub alpha: AlgebraicReal,
}

/// Every `(l, k, m, M)` with `l, k, m <= 3` and `1 <= M`, `M^k < (m+1)^l`.
pub fn families() -> Vec<Family> {
    let mut out = Vec::new();
    for l in 1..=3 {
        for k in 1..=3 {
            for m in 1..=3 {
                for big_m in admissible_m_values(l, k, m) {
                    let alpha = construct_characteristic_alpha(l, k, m, big_m).unwrap();
                    out.push(Family { l, k, m, big_m, alpha });
                }
            }
        }
    }
    out
}

/// The positive root of `x^(l+k) - m x^l - M`, found by the oracle's own
/// bisection. There is exactly one sign change, so `[0, 100]` brackets it.
pub fn family_decimal(f: &Family) -> Decimal {
    let mut c = vec![0i64; (f.l + f.k + 1) as usize];
    c[0] = -f.big_m;
    c[f.l as usize] = -(f.m as i64);
    c[(f.l + f.k) as usize] = 1;
    root_in(&c, "0", "100", DIGITS)
}

/// Counts the admissible `M` by brute force, independently of the library.
pub fn brute_force_m(l: u32, k: u32, m: u32) -> Vec<i64> {
    let bound = (m as i64 + 1).pow(l);
    (1..bound).filter(|big_m| big_m.pow(k) < bound).collect()
}
