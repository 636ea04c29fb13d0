//! Factorisation of squarefree integer polynomials into irreducibles.
//!
//! Kronecker's method: a factor `g` of degree `e` is pinned down by its values
//! at `e + 1` integer nodes, and each value divides the corresponding value of
//! `p`. Candidate value tuples are enumerated depth-first; Newton divided
//! differences of an integer polynomial at integer nodes are integers, which
//! prunes most branches early.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPolynomial;
use super::ExactError;

/// Values above this are not factored by trial division.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 46;

/// Irreducible primitive factors (positive leading coefficient) of the
/// squarefree part of `p`, sorted by degree then coefficients.
pub fn irreducible_factors(p: &IntPolynomial) -> Result<Vec<IntPolynomial>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let sf = p.squarefree_part();
    let mut pending = vec![sf];
    let mut done = Vec::new();
    while let Some(q) = pending.pop() {
        if q.degree().unwrap_or(0) == 0 {
            continue;
        }
        match split_once(&q)? {
            Some(g) => {
                let h = q.div_exact(&g).expect("factor divides");
                pending.push(g.primitive_part());
                pending.push(h.primitive_part());
            }
            None => done.push(q.primitive_part()),
        }
    }
    done.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(done)
}

/// A nontrivial factor of `p` of degree at most `deg p / 2`, if any.
fn split_once(p: &IntPolynomial) -> Result<Option<IntPolynomial>, ExactError> {
    let deg = p.degree().unwrap();
    if deg <= 1 {
        return Ok(None);
    }
    if p.coeffs()[0].is_zero() {
        return Ok(Some(IntPolynomial::from_i64s(&[0, 1])));
    }
    for e in 1..=deg / 2 {
        if let Some(g) = kronecker_factor(p, e)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn kronecker_factor(p: &IntPolynomial, e: usize) -> Result<Option<IntPolynomial>, ExactError> {
    // Collect nodes with small nonzero values; an integer root gives a factor
    // immediately.
    let span = (2 * e as i64 + 6).max(8);
    let mut nodes: Vec<(BigInt, BigInt)> = Vec::new();
    for x in -span..=span {
        let xb = BigInt::from(x);
        let v = p.eval_int(&xb);
        if v.is_zero() {
            return Ok(Some(IntPolynomial::from_i64s(&[-x, 1])));
        }
        nodes.push((xb, v));
    }
    nodes.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then_with(|| a.0.abs().cmp(&b.0.abs())));
    nodes.truncate(e + 1);

    let mut choices = Vec::with_capacity(e + 1);
    for (i, (_, v)) in nodes.iter().enumerate() {
        let divs = signed_divisors(v)?;
        // g and -g are both factors; fix the sign at the first node.
        let divs = if i == 0 {
            divs.into_iter().filter(|d| d.is_positive()).collect()
        } else {
            divs
        };
        choices.push(divs);
    }
    let xs: Vec<BigInt> = nodes.into_iter().map(|(x, _)| x).collect();
    let lc = p.leading().unwrap().clone();
    let mut search = Search { p, xs: &xs, choices: &choices, lc: &lc, table: Vec::new() };
    Ok(search.descend(0))
}

struct Search<'a> {
    p: &'a IntPolynomial,
    xs: &'a [BigInt],
    choices: &'a [Vec<BigInt>],
    lc: &'a BigInt,
    /// `table[i]` holds the divided differences ending at node `i`:
    /// `table[i][j] = g[x_{i-j}, ..., x_i]`.
    table: Vec<Vec<BigInt>>,
}

impl Search<'_> {
    fn descend(&mut self, level: usize) -> Option<IntPolynomial> {
        let e = self.xs.len() - 1;
        for d in &self.choices[level] {
            let mut row = vec![d.clone()];
            let mut ok = true;
            for j in 1..=level {
                let num = &row[j - 1] - &self.table[level - 1][j - 1];
                let den = &self.xs[level] - &self.xs[level - j];
                let (q, r) = num.div_rem(&den);
                if !r.is_zero() {
                    ok = false;
                    break;
                }
                row.push(q);
            }
            if !ok {
                continue;
            }
            if level == e {
                let top = &row[level];
                if top.is_zero() || !(self.lc % top).is_zero() {
                    continue;
                }
                self.table.push(row);
                let g = self.newton_to_poly();
                self.table.pop();
                if let Some(g) = g {
                    return Some(g);
                }
            } else {
                self.table.push(row);
                let found = self.descend(level + 1);
                self.table.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    fn newton_to_poly(&self) -> Option<IntPolynomial> {
        let e = self.xs.len() - 1;
        // Newton coefficients c_j = g[x_0..x_j] = table[j][j].
        let mut coeffs = vec![BigInt::zero(); e + 1];
        let mut basis = vec![BigInt::one()];
        for j in 0..=e {
            let c = &self.table[j][j];
            for (i, b) in basis.iter().enumerate() {
                coeffs[i] += c * b;
            }
            // basis *= (x - x_j)
            let mut next = vec![BigInt::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= b * &self.xs[j];
            }
            basis = next;
        }
        let g = IntPolynomial::new(coeffs);
        if g.degree() != Some(e) {
            return None;
        }
        self.p.div_exact(&g).map(|_| g)
    }
}

fn signed_divisors(v: &BigInt) -> Result<Vec<BigInt>, ExactError> {
    let n = v
        .abs()
        .to_u64()
        .filter(|&n| n <= TRIAL_DIVISION_LIMIT)
        .ok_or(ExactError::FactorizationLimit)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    let mut out = Vec::with_capacity(2 * small.len());
    for d in small {
        out.push(BigInt::from(d));
        out.push(-BigInt::from(d));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn irreducible_quadratic_stays_whole() {
        assert_eq!(irreducible_factors(&p(&[-1, -1, 1])).unwrap(), vec![p(&[-1, -1, 1])]);
    }

    #[test]
    fn splits_rational_roots() {
        // (2x - 3)(x^2 - 2)
        let f = p(&[-3, 2]).mul(&p(&[-2, 0, 1]));
        assert_eq!(irreducible_factors(&f).unwrap(), vec![p(&[-3, 2]), p(&[-2, 0, 1])]);
    }

    #[test]
    fn splits_two_quadratics() {
        // (x^2 - x - 1)(x^2 + 2x - 5)
        let f = p(&[-1, -1, 1]).mul(&p(&[-5, 2, 1]));
        let fs = irreducible_factors(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].mul(&fs[1]), f);
    }

    #[test]
    fn splits_cubic_times_cubic() {
        let a = p(&[-1, -1, 0, 1]);
        let b = p(&[-4, 0, 0, 1]);
        let fs = irreducible_factors(&a.mul(&b)).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&a) && fs.contains(&b));
    }

    #[test]
    fn removes_repeated_factors() {
        let a = p(&[-2, 0, 1]);
        let fs = irreducible_factors(&a.mul(&a).mul(&p(&[0, 1]))).unwrap();
        assert_eq!(fs, vec![p(&[0, 1]), a]);
    }

    #[test]
    fn quartic_family_member_is_irreducible() {
        // x^4 - x^2 - 1
        assert_eq!(irreducible_factors(&p(&[-1, 0, -1, 0, 1])).unwrap().len(), 1);
    }
}
