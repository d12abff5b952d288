use std::ops::{Add, Mul, Neg, Sub};

use super::{GaussianRational, Polynomial};
use crate::Error;

/// Selects one of the two variables of a [`BiPolynomial`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    First,
    Second,
}

/// Polynomial in two variables `(x, y)` over ℚ(i), stored as a polynomial in
/// `y` whose coefficients are polynomials in `x`:
/// `p = Σ_j y^j · coeffs[j](x)`.
///
/// For a family coordinate the first variable is the branch parameter `u`
/// and the second is the family parameter `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPolynomial {
    coeffs: Vec<Polynomial>,
}

impl BiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// From coefficients in the second variable (lowest first).
    pub fn from_second_coeffs(mut coeffs: Vec<Polynomial>) -> Self {
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `Σ c · x^i · y^j` from `((i, j), c)` terms; repeats are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), GaussianRational)>,
    {
        let mut rows: Vec<Vec<(usize, GaussianRational)>> = Vec::new();
        for ((i, j), c) in terms {
            if rows.len() <= j {
                rows.resize_with(j + 1, Vec::new);
            }
            rows[j].push((i, c));
        }
        Self::from_second_coeffs(rows.into_iter().map(Polynomial::from_terms).collect())
    }

    /// Embeds a univariate polynomial as a polynomial in the chosen variable.
    pub fn from_univariate(p: &Polynomial, var: Var) -> Self {
        match var {
            Var::First => Self::from_second_coeffs(vec![p.clone()]),
            Var::Second => Self::from_second_coeffs(
                p.coeffs().iter().map(|c| Polynomial::constant(c.clone())).collect(),
            ),
        }
    }

    pub fn second_coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms as `((i, j), c)` for `c · x^i · y^j`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &GaussianRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(j, p)| p.terms().map(move |(i, c)| ((i, j), c)))
    }

    pub fn degree_in(&self, var: Var) -> Option<usize> {
        match var {
            Var::Second => self.coeffs.len().checked_sub(1),
            Var::First => self.coeffs.iter().filter_map(Polynomial::degree).max(),
        }
    }

    /// Least total exponent of the chosen variable over all terms.
    pub fn order_in(&self, var: Var) -> Option<usize> {
        match var {
            Var::Second => self.coeffs.iter().position(|p| !p.is_zero()),
            Var::First => self.coeffs.iter().filter_map(Polynomial::order).min(),
        }
    }

    /// Swaps the roles of the two variables.
    pub fn transpose(&self) -> Self {
        Self::from_terms(self.terms().map(|((i, j), c)| ((j, i), c.clone())))
    }

    /// Substitutes the second variable, leaving a polynomial in the first.
    pub fn eval_second(&self, y0: &GaussianRational) -> Polynomial {
        self.coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, c| &acc.scale(y0) + c)
    }

    /// Substitutes the first variable, leaving a polynomial in the second.
    pub fn eval_first(&self, x0: &GaussianRational) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| c.eval(x0)).collect())
    }

    pub fn scale(&self, c: &Polynomial) -> Self {
        Self::from_second_coeffs(self.coeffs.iter().map(|p| p * c).collect())
    }

    /// Leading coefficient in the second variable.
    fn lead(&self) -> &Polynomial {
        self.coeffs.last().expect("nonzero")
    }

    /// Multiplies by `y^k`.
    fn shift_second(&self, k: usize) -> Self {
        let mut coeffs = vec![Polynomial::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_second_coeffs(coeffs)
    }

    /// Pseudo-remainder of `self` by `d` in the second variable.
    fn pseudo_rem(&self, d: &BiPolynomial) -> BiPolynomial {
        let dd = d.degree_in(Var::Second).expect("nonzero divisor");
        let lc = d.lead().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree_in(Var::Second) {
            if rd < dd {
                break;
            }
            let rl = r.lead().clone();
            r = &r.scale(&lc) - &d.scale(&rl).shift_second(rd - dd);
        }
        r
    }

    /// Gcd (over ℚ(i)) of all coefficients in the second variable.
    pub fn content(&self) -> Polynomial {
        self.coeffs
            .iter()
            .fold(Polynomial::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content; the result has a monic content-free form.
    pub fn primitive_part(&self) -> BiPolynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        let p = Self::from_second_coeffs(
            self.coeffs
                .iter()
                .map(|a| a.exact_div(&c).expect("content divides"))
                .collect(),
        );
        let lc = p.lead().leading_coeff().expect("nonzero").inv().expect("nonzero");
        p.scale(&Polynomial::constant(lc))
    }

    /// Greatest common divisor in the second variable over the field of
    /// rational functions in the first, returned primitive (content-free).
    pub fn gcd_in_second(&self, other: &BiPolynomial) -> BiPolynomial {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree_in(Var::Second) < b.degree_in(Var::Second) {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// Exact division in the second variable, assuming `d` has a constant
    /// leading coefficient; `None` if `d` does not divide.
    pub fn exact_div_second(&self, d: &BiPolynomial) -> Option<BiPolynomial> {
        let dd = d.degree_in(Var::Second)?;
        let lc = d.lead();
        if !lc.is_constant() {
            return None;
        }
        let inv = lc.coeff(0).inv()?;
        let mut r = self.clone();
        let mut q: Vec<Polynomial> = Vec::new();
        while let Some(rd) = r.degree_in(Var::Second) {
            if rd < dd {
                return None;
            }
            let c = r.lead().scale(&inv);
            if q.len() <= rd - dd {
                q.resize(rd - dd + 1, Polynomial::zero());
            }
            q[rd - dd] = c.clone();
            r = &r - &d.scale(&c).shift_second(rd - dd);
        }
        Some(Self::from_second_coeffs(q))
    }
}

impl Add<&BiPolynomial> for &BiPolynomial {
    type Output = BiPolynomial;
    fn add(self, rhs: &BiPolynomial) -> BiPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Polynomial::zero();
        BiPolynomial::from_second_coeffs(
            (0..n)
                .map(|j| {
                    self.coeffs.get(j).unwrap_or(&zero) + rhs.coeffs.get(j).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Neg for &BiPolynomial {
    type Output = BiPolynomial;
    fn neg(self) -> BiPolynomial {
        BiPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub<&BiPolynomial> for &BiPolynomial {
    type Output = BiPolynomial;
    fn sub(self, rhs: &BiPolynomial) -> BiPolynomial {
        self + &(-rhs)
    }
}

impl Mul<&BiPolynomial> for &BiPolynomial {
    type Output = BiPolynomial;
    fn mul(self, rhs: &BiPolynomial) -> BiPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return BiPolynomial::zero();
        }
        let mut coeffs = vec![Polynomial::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        BiPolynomial::from_second_coeffs(coeffs)
    }
}

/// Determinant of a square matrix over ℚ(i)[x] by fraction-free (Bareiss)
/// elimination; every division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut sign_negative = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_negative = !sign_negative;
                }
                None => return Polynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_negative {
        -det
    } else {
        det
    }
}

/// Sylvester matrix of `p`, `q` viewed as polynomials in the second variable.
fn sylvester(p: &BiPolynomial, q: &BiPolynomial) -> Vec<Vec<Polynomial>> {
    let dp = p.coeffs.len() - 1;
    let dq = q.coeffs.len() - 1;
    let n = dp + dq;
    let mut m = vec![vec![Polynomial::zero(); n]; n];
    for row in 0..dq {
        for (k, c) in p.coeffs.iter().rev().enumerate() {
            m[row][row + k] = c.clone();
        }
    }
    for row in 0..dp {
        for (k, c) in q.coeffs.iter().rev().enumerate() {
            m[dq + row][row + k] = c.clone();
        }
    }
    m
}

/// Resultant of `p` and `q` with respect to `eliminate`, as a polynomial in
/// the remaining variable.
pub fn resultant(p: &BiPolynomial, q: &BiPolynomial, eliminate: Var) -> Result<Polynomial, Error> {
    let (p, q) = match eliminate {
        Var::Second => (p.clone(), q.clone()),
        Var::First => (p.transpose(), q.transpose()),
    };
    match (p.degree_in(Var::Second), q.degree_in(Var::Second)) {
        (Some(a), Some(b)) if a > 0 && b > 0 => Ok(bareiss_determinant(sylvester(&p, &q))),
        _ => Err(Error::DegenerateResultant),
    }
}

/// Number of distinct complex roots, `deg p − deg gcd(p, p')`.
pub fn distinct_root_count(p: &Polynomial) -> Result<usize, Error> {
    let d = p.degree().ok_or(Error::ZeroInput)?;
    let g = p.gcd(&p.derivative());
    Ok(d - g.degree().unwrap_or(0))
}

/// Substitutes `t = t0` in a family coefficient (second variable = `t`).
pub fn eval_family(p: &BiPolynomial, t0: &GaussianRational) -> Polynomial {
    p.eval_second(t0)
}
