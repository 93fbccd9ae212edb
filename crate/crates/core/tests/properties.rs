use proptest::prelude::*;

use pdlab::catalog::{parse_graph_file, parse_variety_spec};
use pdlab::clifford::{CliffordAlgebra, CliffordElem};
use pdlab::exact::polymat::poly_mat_vec;
use pdlab::exact::{
    cramer_kernel_vectors, fmt_rat, parse_poly, parse_rat, rat, rat_frac, series_invert_map, MPoly, MatRat, Rat,
    Sampler, TruncSeries,
};
use pdlab::matspaces::parse_matspace_spec;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat_frac(n, d))
}

/// Polynomials in `n` variables of degree ≤ `deg` with up to six terms.
fn poly(n: usize, deg: u32) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0..=deg, n), small_rat()), 0..6).prop_map(move |terms| {
        let mut p = MPoly::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    })
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(small_rat(), n)
}

fn no_files(_: &str) -> pdlab::Result<String> {
    Err(pdlab::Error::Parse("no files".into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_laws(p in poly(3, 3), q in poly(3, 3), r in poly(3, 2)) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn eval_is_a_ring_map(p in poly(3, 3), q in poly(3, 3), x in vector(3)) {
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
    }

    #[test]
    fn shift_then_unshift(p in poly(2, 4), a in vector(2)) {
        let back: Vec<Rat> = a.iter().map(|x| -x).collect();
        prop_assert_eq!(p.shift(&a).shift(&back), p.clone());
        prop_assert_eq!(p.shift(&a).constant_term(), p.eval(&a));
    }

    #[test]
    fn display_parse_round_trip(p in poly(3, 4)) {
        prop_assert_eq!(parse_poly(&p.to_string(), 3).unwrap(), p);
    }

    #[test]
    fn rational_round_trip(x in small_rat()) {
        prop_assert_eq!(parse_rat(&fmt_rat(&x)), Some(x));
    }

    #[test]
    fn series_inverse_is_a_right_inverse(
        lin in prop::collection::vec(-3i64..=3, 4),
        higher in prop::collection::vec(poly(2, 3), 2),
    ) {
        let l = MatRat::from_i64(&[&lin[..2], &lin[2..]]);
        prop_assume!(l.rank() == 2);
        let order = 4;
        let f: Vec<TruncSeries> = (0..2)
            .map(|i| {
                let mut p = MPoly::linear(l.row(i));
                for d in 2..=3 {
                    p = &p + &higher[i].homogeneous_part(d);
                }
                TruncSeries::new(p, order)
            })
            .collect();
        let g = series_invert_map(&f, order).unwrap();
        let fg = TruncSeries::compose_many(&f, &g);
        for (i, s) in fg.iter().enumerate() {
            prop_assert_eq!(s.poly(), &MPoly::var(2, i));
        }
    }

    #[test]
    fn cramer_vectors_annihilate(entries in prop::collection::vec(poly(2, 2), 6)) {
        let m = vec![entries[..3].to_vec(), entries[3..].to_vec()];
        for v in cramer_kernel_vectors(&m).unwrap() {
            prop_assert!(poly_mat_vec(&m, &v).iter().all(MPoly::is_zero));
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(-4i64..=4, 9), b in prop::collection::vec(-4i64..=4, 9)) {
        let a = MatRat::from_i64(&[&a[..3], &a[3..6], &a[6..]]);
        let b = MatRat::from_i64(&[&b[..3], &b[3..6], &b[6..]]);
        prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv), MatRat::identity(3));
        }
    }

    #[test]
    fn clifford_square_of_a_vector(x in vector(4), seed in any::<u64>()) {
        let cl = CliffordAlgebra::hyperbolic(4).unwrap();
        let v = CliffordElem::vector(&x);
        let q = cl.form().bilinear(&x, &x);
        prop_assert_eq!(cl.mul(&v, &v).unwrap(), CliffordElem::scalar(4, q));
        // ρ of a random even product is an isometry
        let g = cl.random_pin(2, &mut Sampler::new(seed)).unwrap();
        let r = cl.rho_matrix(&g).unwrap();
        prop_assert_eq!(r.transpose().mul(cl.form()).mul(&r), cl.form().clone());
    }

    #[test]
    fn clifford_product_is_associative(x in vector(3), y in vector(3), z in vector(3), mask in 0u32..8) {
        let cl = CliffordAlgebra::hyperbolic(3).unwrap();
        let a = CliffordElem::vector(&x).add(&CliffordElem::blade(3, mask, rat(2)));
        let b = CliffordElem::vector(&y);
        let c = CliffordElem::vector(&z).add(&CliffordElem::one(3));
        let left = cl.mul(&cl.mul(&a, &b).unwrap(), &c).unwrap();
        let right = cl.mul(&a, &cl.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reversal_is_an_anti_automorphism(x in vector(3), y in vector(3), mask in 0u32..8) {
        let cl = CliffordAlgebra::hyperbolic(3).unwrap();
        let a = CliffordElem::vector(&x).add(&CliffordElem::blade(3, mask, rat(1)));
        let b = CliffordElem::vector(&y).add(&CliffordElem::one(3));
        let lhs = cl.mul(&a, &b).unwrap().reverse();
        let rhs = cl.mul(&b.reverse(), &a.reverse()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn spec_parsers_never_panic(s in "\\PC{0,40}") {
        let _ = parse_variety_spec(&s, &no_files);
        let _ = parse_matspace_spec(&s, &mut Sampler::new(0));
        let _ = parse_graph_file(&s);
        let _ = parse_poly(&s, 3);
    }

    #[test]
    fn spec_parsers_never_panic_on_near_misses(
        head in prop::sample::select(vec!["veronese", "segre", "grassmannian", "spinor", "severi", "cone", "tandev", "split", "graded", "doubled-sym", "lin"]),
        args in "[0-9,:\\-\\[\\] x]{0,12}",
    ) {
        let s = format!("{head}:{args}");
        let _ = parse_variety_spec(&s, &no_files);
        let _ = parse_matspace_spec(&s, &mut Sampler::new(0));
    }
}
