use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use strongconn::connection::{
    build_connection, colinearity_reduction, normalize_section, solve_cointegral, solve_section, verify_connection,
    Colinearity, SectionMap,
};
use strongconn::entwined::{galois_check, validate_extension};
use strongconn::homogeneous::bicolinear_section_iota;
use strongconn::instance_file::{decode_tensor, encode_tensor};
use strongconn::instances::*;
use strongconn::library::builtin;
use strongconn::linmap::kernel_basis;
use strongconn::pipeline::{run_file, Options};
use strongconn::{LinMap, NfElem, NumberField, Rationals, Scalar, ScalarField, Space, Q};

fn rational() -> impl Strategy<Value = Q> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Q::new(BigInt::from(n), BigInt::from(d)))
}

fn nonzero_rational() -> impl Strategy<Value = Q> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn cyclotomic() -> impl Strategy<Value = NfElem> {
    proptest::collection::vec(rational(), 0..=2).prop_map(|c| NumberField::cyclotomic3().element(c).unwrap())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = LinMap<Q>> {
    named_matrix("X", cols, "Y", rows)
}

fn named_matrix(dom: &'static str, cols: usize, cod: &'static str, rows: usize) -> impl Strategy<Value = LinMap<Q>> {
    proptest::collection::vec(-3i64..4, rows * cols).prop_map(move |v| {
        LinMap::new(
            Space::base(dom, cols),
            Space::base(cod, rows),
            v.into_iter().map(Q::from_i64).collect(),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.try_inv().unwrap(), Q::one());
        }
    }

    #[test]
    fn cyclotomic_field_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() - a.clone(), NfElem::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.try_inv().unwrap(), NfElem::one());
        }
    }

    #[test]
    fn cube_root_of_unity(a in cyclotomic()) {
        let k = NumberField::cyclotomic3();
        let w = k.generator();
        prop_assert_eq!(w.clone() * w.clone() * w.clone(), k.int(1));
        prop_assert_eq!(k.int(1) + w.clone() + w.clone() * w, k.int(0));
        prop_assert_eq!(a.clone() * k.int(1), a);
    }

    #[test]
    fn scalar_text_round_trips(a in rational(), b in cyclotomic()) {
        let q = Rationals;
        prop_assert_eq!(q.parse(&q.format(&a)).unwrap(), a);
        let k = NumberField::cyclotomic3();
        prop_assert_eq!(k.parse(&k.format(&b)).unwrap(), b);
    }

    #[test]
    fn rank_nullity(m in matrix(3, 5)) {
        prop_assert_eq!(m.rank() + kernel_basis(&m).dim(), 5);
    }

    #[test]
    fn kron_interchange(
        f in named_matrix("Y", 3, "W", 2),
        g in named_matrix("X", 2, "Y", 3),
        h in named_matrix("Z", 2, "Z", 2),
        j in named_matrix("Z", 2, "Z", 2),
    ) {
        let lhs = g.kron(&j).then(&f.kron(&h)).unwrap();
        let rhs = g.then(&f).unwrap().kron(&j.then(&h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_encoding_round_trips(m in matrix(4, 3)) {
        let q = Rationals;
        let spec = encode_tensor(&q, &m);
        let spaces = [("X".to_string(), 3), ("Y".to_string(), 4)].into_iter().collect();
        prop_assert_eq!(decode_tensor(&q, &spec, &spaces).unwrap(), m);
    }

    #[test]
    fn graded_extensions_admit_verified_connections(n in 2usize..=3, t in nonzero_rational()) {
        let k = Rationals;
        let ext = build_graded_extension(&k, n, t);
        prop_assert!(validate_extension(&ext).unwrap().all_pass());
        prop_assert!(galois_check(&ext).unwrap().passed("galois"));
        let delta = solve_cointegral(ext.coalgebra()).unwrap().found().unwrap().delta;
        let (s, _) = solve_section(&ext).unwrap();
        let s = normalize_section(&ext, &s).unwrap();
        let ell = build_connection(&ext, &s, &delta).unwrap().ell;
        prop_assert!(verify_connection(&ext, &ell).unwrap().all_pass());
        let back = SectionMap { sigma: ell.clone(), normalized: true };
        let red = colinearity_reduction(&ext, &back, &delta).unwrap();
        prop_assert_eq!(red.class, Colinearity::Bi);
        prop_assert_eq!(red.connection.ell, ell);
    }

    #[test]
    fn graded_t_zero_is_never_galois(n in 2usize..=4) {
        let k = Rationals;
        let ext = build_graded_extension(&k, n, k.int(0));
        prop_assert!(!galois_check(&ext).unwrap().passed("galois"));
    }

    #[test]
    fn connection_independent_of_section_choice(shift in proptest::collection::vec(-2i64..3, 4)) {
        // On k[Z_4] over k[Z_2] sections form an affine family; any member
        // satisfies conditions (a)-(c); only normalisation needs a normalised section.
        let k = Rationals;
        let ext = build_group_quotient_extension(&k, 4, 2);
        let delta = solve_cointegral(ext.coalgebra()).unwrap().found().unwrap().delta;
        let (s, _) = solve_section(&ext).unwrap();
        let can = strongconn::entwined::lifted_canonical(&ext).unwrap();
        let ker = kernel_basis(&can);
        let mut sigma = s.sigma.clone();
        for c in 0..sigma.cols() {
            let mut col = sigma.column(c).to_vec();
            for (i, v) in ker.basis().iter().enumerate().take(4) {
                let w = Q::from_i64(shift[(i + c) % 4]);
                for (x, y) in col.iter_mut().zip(v) {
                    *x = x.clone() + w.clone() * y.clone();
                }
            }
            sigma.set_column(c, &col);
        }
        let ell = build_connection(&ext, &SectionMap { sigma, normalized: false }, &delta).unwrap().ell;
        let rep = verify_connection(&ext, &ell).unwrap();
        for name in ["connection.section", "connection.right-colinear", "connection.left-colinear"] {
            prop_assert!(rep.passed(name), "{} fails", name);
        }
    }

    #[test]
    fn iota_is_a_bicolinear_section_for_any_section(a in rational(), b in rational()) {
        let k = Rationals;
        let d = build_homogeneous_z4_z2(&k);
        let delta = solve_cointegral(d.coalgebra()).unwrap().found().unwrap().delta;
        // i([g]) = g + a(g² - 1) + b(g³ - g) still satisfies π∘i = id
        let mut i = d.section().clone();
        i.set_column(1, &[-a.clone(), Q::one() - b.clone(), a, b]);
        let (iota, rep) = bicolinear_section_iota(&d, &delta, &i).unwrap();
        prop_assert!(rep.all_pass());
        let (again, _) = bicolinear_section_iota(&d, &delta, &iota).unwrap();
        prop_assert_eq!(again, iota);
    }
}

#[test]
fn pipeline_reports_are_deterministic() {
    for name in ["group-z2", "graded-n2-t2", "group-z4-over-z2", "homogeneous-z4-z2-perturbed", "sweedler"] {
        let file = builtin(name).unwrap();
        let a = run_file(&file, &Options::default()).unwrap().to_json();
        let b = run_file(&file, &Options::default()).unwrap().to_json();
        assert_eq!(a, b, "{name}");
    }
}
