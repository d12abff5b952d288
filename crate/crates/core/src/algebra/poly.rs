use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::GaussianRational;

/// Dense univariate polynomial over ℚ(i).
///
/// `coeffs[k]` is the coefficient of `x^k`; trailing zeros are never stored, so
/// the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Polynomial with integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| c.into()).collect())
    }

    /// Builds `Σ c·x^e` from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, GaussianRational)>,
    {
        let mut coeffs: Vec<GaussianRational> = Vec::new();
        for (e, c) in terms {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, GaussianRational::zero());
            }
            coeffs[e] += &c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GaussianRational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Nonzero terms as `(exponent, coefficient)`, increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &GaussianRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Least exponent with a nonzero coefficient; `None` for the zero
    /// polynomial.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divides by `x^k`, dropping terms of lower degree.
    pub fn unshift(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Drops all terms of degree `> n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(n + 1).cloned().collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussianRational::from_integer(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Polynomial) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * q) + &Self::constant(c.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &lc_inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    let t = &q * dc;
                    rem[k - dd + j] -= &t;
                }
            }
            quot[k - dd] = q;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Exact quotient; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading_coeff().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Formats with the given variable name, highest degree first.
    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayIn { p: self, var }
    }
}

struct DisplayIn<'a> {
    p: &'a Polynomial,
    var: &'a str,
}

impl fmt::Display for DisplayIn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.p.terms().collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in terms.iter().rev().enumerate() {
            let sep = if n == 0 { "" } else { "+" };
            match *e {
                0 => write!(f, "{sep}{c}")?,
                1 if c.is_one() => write!(f, "{sep}{}", self.var)?,
                1 => write!(f, "{sep}{c}*{}", self.var)?,
                e if c.is_one() => write!(f, "{sep}{}^{e}", self.var)?,
                e => write!(f, "{sep}{c}*{}^{e}", self.var)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Least exponent with a nonzero coefficient (`None` for zero).
pub fn order(p: &Polynomial) -> Option<usize> {
    p.order()
}

/// Monic greatest common divisor; `poly_gcd(p, 0) = monic(p)`.
pub fn poly_gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p.gcd(q)
}
