//! Power series truncated modulo `x^prec`.

use num_traits::{One, Zero};

use super::{GaussianRational, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<GaussianRational>,
}

impl Series {
    pub fn zero(prec: usize) -> Self {
        Self {
            coeffs: vec![GaussianRational::zero(); prec],
        }
    }

    pub fn one(prec: usize) -> Self {
        let mut s = Self::zero(prec);
        if prec > 0 {
            s.coeffs[0] = GaussianRational::one();
        }
        s
    }

    pub fn from_poly(p: &Polynomial, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        for (k, c) in p.coeffs().iter().enumerate().take(prec) {
            s.coeffs[k] = c.clone();
        }
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &GaussianRational {
        &self.coeffs[k]
    }

    /// First nonzero index, `None` if zero to this precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    pub fn to_poly(&self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.clone())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `self -= c · other`, touching only indices `≥ from`.
    pub fn sub_scaled(&mut self, c: &GaussianRational, other: &Series, from: usize) {
        for k in from..self.coeffs.len().min(other.coeffs.len()) {
            if !other.coeffs[k].is_zero() {
                let t = c * &other.coeffs[k];
                self.coeffs[k] -= &t;
            }
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let prec = self.precision().min(other.precision());
        Self {
            coeffs: (0..prec).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let prec = self.precision().min(other.precision());
        Self {
            coeffs: (0..prec).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    /// Truncated product; the result has the smaller of the two precisions.
    pub fn mul(&self, other: &Series) -> Series {
        let prec = self.precision().min(other.precision());
        let mut out = Self::zero(prec);
        let (Some(a0), Some(b0)) = (self.order(), other.order()) else {
            return out;
        };
        for i in a0..prec {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in b0..prec - i {
                let b = &other.coeffs[j];
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        out
    }

    pub fn with_precision(&self, prec: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(prec, GaussianRational::zero());
        Self { coeffs }
    }
}
