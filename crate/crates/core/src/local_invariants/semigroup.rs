use std::collections::BTreeSet;
use std::fmt;

use super::closure::Closure;
use crate::curvegerm::BranchParam;
use crate::Error;

/// A numerical semigroup `Γ ⊂ ℕ`, described by its gaps.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemigroupDescriptor {
    multiplicity: usize,
    generators: Vec<usize>,
    gaps: Vec<usize>,
    conductor: usize,
    delta: usize,
}

impl SemigroupDescriptor {
    /// Builds the semigroup `ℕ ∖ gaps`, checking that it is closed under
    /// addition.
    pub fn from_gaps(gaps: impl IntoIterator<Item = usize>) -> Result<Self, Error> {
        let gaps: BTreeSet<usize> = gaps.into_iter().collect();
        if gaps.contains(&0) {
            return Err(Error::InvalidInput("0 cannot be a gap".into()));
        }
        let conductor = gaps.last().map_or(0, |g| g + 1);
        let member = |v: usize| !gaps.contains(&v);
        for a in (1..conductor).filter(|&a| member(a)) {
            for b in (a..conductor).filter(|&b| member(b)) {
                if !member(a + b) {
                    return Err(Error::InvalidInput(format!(
                        "{a} and {b} are in the semigroup but {} is a gap",
                        a + b
                    )));
                }
            }
        }
        let multiplicity = (1..).find(|&v| member(v)).expect("gaps are finite");
        let generators = (1..conductor + multiplicity)
            .filter(|&v| member(v))
            .filter(|&v| !(1..v).any(|a| member(a) && member(v - a)))
            .collect();
        Ok(Self {
            multiplicity,
            generators,
            delta: gaps.len(),
            gaps: gaps.into_iter().collect(),
            conductor,
        })
    }

    /// The semigroup generated by `gens`, which must have gcd 1.
    pub fn generated_by(gens: &[usize]) -> Result<Self, Error> {
        let g = gens.iter().fold(0, |g, &a| num_integer::gcd(g, a));
        if g != 1 {
            return Err(Error::InvalidInput(format!("generators have gcd {g}, not 1")));
        }
        let smallest = *gens.iter().filter(|&&a| a > 0).min().expect("gcd 1");
        let largest = *gens.iter().max().expect("nonempty");
        // The Frobenius number is below smallest·largest.
        let limit = smallest * largest + smallest;
        let mut reach = vec![false; limit + 1];
        reach[0] = true;
        for v in 1..=limit {
            reach[v] = gens.iter().any(|&a| a > 0 && a <= v && reach[v - a]);
        }
        Self::from_gaps((1..=limit).filter(|&v| !reach[v]))
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// Minimal generators, ascending.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    /// Least `c` with `c + ℕ ⊂ Γ`.
    pub fn conductor(&self) -> usize {
        self.conductor
    }

    /// Number of gaps.
    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn contains(&self, v: usize) -> bool {
        self.gaps.binary_search(&v).is_err()
    }
}

impl fmt::Display for SemigroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩")
    }
}

/// The value semigroup `{ord_u P(φ) : P polynomial}` of a branch.
///
/// Orders below a truncation `N` are read off an exact echelon basis of the
/// algebra modulo `u^{N+1}`. Once `m` consecutive values appear the whole
/// semigroup is known; otherwise `N` doubles. A primitive branch of degree
/// `D` has conductor at most `(D−1)(D−2)`, the bound for a plane projection,
/// so failing past that bound proves the parametrization is not primitive.
pub fn branch_semigroup(b: &BranchParam) -> Result<SemigroupDescriptor, Error> {
    let m = b.multiplicity();
    let d = b.degree();
    let bound = d.saturating_sub(1) * d.saturating_sub(2) + m;
    let gens: Vec<Vec<_>> = b.coords().iter().map(|p| vec![p.clone()]).collect();
    let mut n = 16.max(2 * m);
    loop {
        let values = Closure::compute(&gens, 1, n + 1).pivot_orders(0);
        if let Some(start) = first_run(&values, m) {
            let present: BTreeSet<usize> = values.into_iter().take_while(|&v| v < start).collect();
            return SemigroupDescriptor::from_gaps((1..start).filter(|v| !present.contains(v)));
        }
        if n >= bound {
            return Err(Error::NonPrimitive {
                label: b.label().to_string(),
            });
        }
        n *= 2;
    }
}

/// Start of the first run of `m` consecutive integers in sorted `values`.
fn first_run(values: &[usize], m: usize) -> Option<usize> {
    let mut start = 0;
    let mut len = 0;
    let mut prev = None;
    for &v in values {
        if prev.is_some_and(|p| p + 1 == v) {
            len += 1;
        } else {
            start = v;
            len = 1;
        }
        if len >= m {
            return Some(start);
        }
        prev = Some(v);
    }
    None
}
