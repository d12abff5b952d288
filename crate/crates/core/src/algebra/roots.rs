use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{GaussianRational, Polynomial};

/// Largest absolute value whose divisors we are willing to enumerate.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Distinct rational roots of a polynomial with rational coefficients, by
/// the rational root theorem.
///
/// Returns `None` when some coefficient is not real or the coefficients are
/// too large to enumerate divisors.
pub fn rational_roots(p: &Polynomial) -> Option<Vec<GaussianRational>> {
    if p.coeffs().iter().any(|c| !c.is_real()) {
        return None;
    }
    let mut sq = p.squarefree_part();
    let mut roots = Vec::new();
    if sq.coeff(0).is_zero() {
        roots.push(GaussianRational::zero());
        sq = sq.unshift(1);
    }
    if sq.degree().unwrap_or(0) == 0 {
        return Some(roots);
    }
    let lcm = sq
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()));
    let ints: Vec<BigInt> = sq
        .coeffs()
        .iter()
        .map(|c| (c.re() * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let num_divs = divisors(&ints[0])?;
    let den_divs = divisors(ints.last().expect("nonconstant"))?;
    let mut seen = std::collections::BTreeSet::new();
    for &a in &num_divs {
        for &b in &den_divs {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(a) * sign, BigInt::from(b));
                if !seen.insert(r.clone()) {
                    continue;
                }
                let z = GaussianRational::real(r);
                if sq.eval(&z).is_zero() {
                    roots.push(z);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}
