use num_traits::One;

use crate::algebra::{resultant, GaussianRational, Polynomial, Var};
use crate::curvegerm::{difference, germs_coincide, is_primitive, BranchParam};
use crate::Error;

/// Largest truncation tried when both branches revisit the origin.
const MAX_TRUNCATION: usize = 1024;

fn require_plane(b: &BranchParam) -> Result<(), Error> {
    if b.ambient_dim() == 2 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "branch `{}` is not a plane branch",
            b.label()
        )))
    }
}

fn coincident(a: &BranchParam, b: &BranchParam) -> Error {
    Error::CoincidentBranches {
        first: a.label().to_string(),
        second: b.label().to_string(),
    }
}

/// `ord_u Res_v(x_A(u) − x_B(v), y_A(u) − y_B(v))`.
///
/// Counts the intersections of `A` with every sheet of the global curve `B`
/// through the origin, so it is the local number only when `B` meets the
/// origin once. Coordinates are first rotated so both coordinates of `B` are
/// nonconstant, which keeps the resultant nondegenerate.
fn resultant_order(a: &BranchParam, b: &BranchParam) -> Result<usize, Error> {
    for k in 0..3i64 {
        let rows = [
            vec![GaussianRational::one(), GaussianRational::from_integer(k)],
            vec![GaussianRational::from_integer(-k), GaussianRational::one()],
        ];
        let bb = b.linear_image(&rows);
        if bb.iter().any(Polynomial::is_zero) {
            continue;
        }
        let aa = a.linear_image(&rows);
        let r = resultant(&difference(&aa[0], &bb[0]), &difference(&aa[1], &bb[1]), Var::Second)?;
        return r.order().ok_or_else(|| coincident(a, b));
    }
    unreachable!("a nonzero plane branch has a rotation with both coordinates nonzero")
}

/// Intersection multiplicity of two plane branches from the global
/// resultant. `B` must not pass through the origin at any other parameter.
pub fn plane_intersection_multiplicity(a: &BranchParam, b: &BranchParam) -> Result<usize, Error> {
    require_plane(a)?;
    require_plane(b)?;
    if b.revisits_origin() {
        return Err(Error::SelfOverlappingParametrization {
            label: b.label().to_string(),
        });
    }
    resultant_order(a, b)
}

/// Intersection multiplicity of the two germs at `u = 0`, whatever the
/// global maps do elsewhere.
///
/// When both maps revisit the origin, both are replaced by truncations to
/// degree `K` (perturbed at order `K + 1` if needed so they no longer
/// revisit it). A truncation changes the germ only at order `> K`, so an
/// answer `≤ K` is exact; otherwise `K` doubles.
pub fn intersection_multiplicity(a: &BranchParam, b: &BranchParam) -> Result<usize, Error> {
    require_plane(a)?;
    require_plane(b)?;
    // The eliminated branch sets the Sylvester size, so prefer the smaller.
    match (a.revisits_origin(), b.revisits_origin()) {
        (false, false) if a.degree() < b.degree() => return resultant_order(b, a),
        (_, false) => return resultant_order(a, b),
        (false, true) => return resultant_order(b, a),
        (true, true) => {}
    }
    if germs_coincide(a, b) {
        return Err(coincident(a, b));
    }
    let mut k = 4;
    while k <= MAX_TRUNCATION {
        if let (Some(ta), Some(tb)) = (truncated(a, k), truncated(b, k)) {
            match resultant_order(&ta, &tb) {
                Ok(i) if i <= k => return Ok(i),
                Ok(_) | Err(Error::CoincidentBranches { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        k *= 2;
    }
    Err(Error::PrecisionExhausted {
        limit: MAX_TRUNCATION,
    })
}

/// Degree-`k` truncation of `b` that meets the origin only at `u = 0`.
fn truncated(b: &BranchParam, k: usize) -> Option<BranchParam> {
    let base: Vec<Polynomial> = b.coords().iter().map(|p| p.truncate(k)).collect();
    if !is_primitive(&base) {
        return None;
    }
    for c in 0..8i64 {
        for slot in 0..base.len() {
            let mut coords = base.clone();
            if c > 0 {
                let bump = Polynomial::monomial(GaussianRational::from_integer(c), k + 1);
                coords[slot] = &coords[slot] + &bump;
            }
            let t = BranchParam::new(b.label(), coords).ok()?;
            if !t.revisits_origin() {
                return Some(t);
            }
            if c == 0 {
                break;
            }
        }
    }
    None
}
