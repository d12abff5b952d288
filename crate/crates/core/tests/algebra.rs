use germlab_core::algebra::expr::{format_bipolynomial, format_polynomial, parse_bipolynomial, parse_polynomial};
use germlab_core::algebra::{distinct_root_count, resultant, BiPolynomial, GaussianRational, Polynomial, Var};
use germlab_core::hypersurface::{count_exceptional_tangents, initial_form, BinaryForm, MultiPoly};
use germlab_core::Error;
use proptest::prelude::*;

fn gq(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_parts((re, 1), (im, 1))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(re, im, d)| GaussianRational::from_parts((re, d), (im, 1)))
}

fn polynomial(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(gaussian(), 1..=max_len)
        .prop_map(Polynomial::from_coeffs)
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Integer 2×2 … 5×5 determinant by cofactor expansion.
fn det(m: &[Vec<i64>]) -> i64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

#[test]
fn resultant_of_cusp_equations() {
    // Res_v(v² − x, v³ − y) = ±(y² − x³); check it at integer points
    // against the 5×5 Sylvester determinant.
    for (x, y) in [(1, 1), (2, 3), (-1, 4), (3, -2)] {
        let p = BiPolynomial::from_terms([((0, 2), gq(1, 0)), ((0, 0), gq(-x, 0))]);
        let q = BiPolynomial::from_terms([((0, 3), gq(1, 0)), ((0, 0), gq(-y, 0))]);
        let r = resultant(&p, &q, Var::Second).unwrap();
        let sylvester = vec![
            vec![1, 0, -x, 0, 0],
            vec![0, 1, 0, -x, 0],
            vec![0, 0, 1, 0, -x],
            vec![1, 0, 0, -y, 0],
            vec![0, 1, 0, 0, -y],
        ];
        assert_eq!(r.coeff(0), gq(det(&sylvester), 0));
        assert_eq!(det(&sylvester).abs(), (y * y - x * x * x).abs());
    }
}

#[test]
fn resultant_of_a_common_factor_vanishes() {
    let p = parse_bipolynomial("v^2 - u^2", "u", "v").unwrap();
    let q = parse_bipolynomial("v - u", "u", "v").unwrap();
    assert!(resultant(&p, &q, Var::Second).unwrap().is_zero());
    let constant = parse_bipolynomial("u^3", "u", "v").unwrap();
    assert_eq!(resultant(&p, &constant, Var::Second), Err(Error::DegenerateResultant));
}

#[test]
fn distinct_roots() {
    let p = |s: &str| parse_polynomial(s, "a").unwrap();
    assert_eq!(distinct_root_count(&p("a^2 - 1")).unwrap(), 2);
    assert_eq!(distinct_root_count(&p("a^12 + 2*a^6 + 1")).unwrap(), 6);
    assert_eq!(distinct_root_count(&p("a^12 + 2*a^6 + 31/27")).unwrap(), 12);
    assert_eq!(distinct_root_count(&Polynomial::zero()), Err(Error::ZeroInput));
}

#[test]
fn tangent_cone_of_the_surface_family_is_a_plane() {
    let f = MultiPoly::parse("z^3 + t*x^4*z + x^6 + y^6", &["x", "y", "z"], Some("t")).unwrap();
    for t in [0, 1, -3] {
        let cone = initial_form(&f, Some(&gq(t, 0))).unwrap();
        assert_eq!(cone.to_string(), "z^3");
    }
    let homogeneous = MultiPoly::parse("x^2*y - 3*z^3", &["x", "y", "z"], None).unwrap();
    assert_eq!(initial_form(&homogeneous, None).unwrap(), homogeneous);
}

fn binary_form() -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec(gaussian(), 2..=6)
        .prop_filter_map("zero form", |cs| BinaryForm::new(cs).ok())
}

fn form_product(f: &BinaryForm, g: &BinaryForm) -> BinaryForm {
    let mut out = vec![GaussianRational::default(); f.degree() + g.degree() + 1];
    for (i, a) in f.coeffs().iter().enumerate() {
        for (j, b) in g.coeffs().iter().enumerate() {
            out[i + j] += &(a * b);
        }
    }
    BinaryForm::new(out).unwrap()
}

proptest! {
    #[test]
    fn squaring_keeps_distinct_roots(p in polynomial(6)) {
        let sq = &p * &p;
        prop_assert_eq!(distinct_root_count(&sq).unwrap(), distinct_root_count(&p).unwrap());
    }

    #[test]
    fn distinct_roots_bounded_by_degree(p in polynomial(8)) {
        prop_assert!(distinct_root_count(&p).unwrap() <= p.degree().unwrap());
    }

    #[test]
    fn counts_ignore_scaling_and_powers(f in binary_form(), c in gaussian(), k in 1usize..=3) {
        prop_assume!(c != GaussianRational::default());
        let n = count_exceptional_tangents(&f);
        let scaled = BinaryForm::new(f.coeffs().iter().map(|a| a * &c).collect()).unwrap();
        prop_assert_eq!(count_exceptional_tangents(&scaled), n);
        let mut power = f.clone();
        for _ in 1..k {
            power = form_product(&power, &f);
        }
        prop_assert_eq!(count_exceptional_tangents(&power), n);
        prop_assert!(n <= f.degree());
    }

    #[test]
    fn initial_form_is_homogeneous_of_least_degree(
        terms in prop::collection::btree_map((0u32..=3, 0u32..=3, 0u32..=3), -3i64..=3, 1..=6),
    ) {
        let text: Vec<String> = terms
            .iter()
            .map(|((a, b, c), k)| format!("{k}*x^{a}*y^{b}*z^{c}"))
            .collect();
        let f = MultiPoly::parse(&text.join(" + "), &["x", "y", "z"], None).unwrap();
        match initial_form(&f, None) {
            Ok(g) => {
                prop_assert!(g.is_homogeneous());
                prop_assert_eq!(g.degrees()[0], f.degrees()[0]);
            }
            Err(e) => {
                prop_assert_eq!(e, Error::ZeroInput);
                prop_assert!(f.is_zero());
            }
        }
    }

    #[test]
    fn polynomials_round_trip_through_text(p in polynomial(6)) {
        let text = format_polynomial(&p, "u");
        prop_assert_eq!(parse_polynomial(&text, "u").unwrap(), p);
    }

    #[test]
    fn bipolynomials_round_trip_through_text(
        terms in prop::collection::btree_map((0usize..=4, 0usize..=3), gaussian(), 0..=6),
    ) {
        let p = BiPolynomial::from_terms(terms);
        let text = format_bipolynomial(&p, "u", "t");
        prop_assert_eq!(parse_bipolynomial(&text, "u", "t").unwrap(), p);
    }
}
