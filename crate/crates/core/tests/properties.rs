mod common;

use common::*;
use gcdeform::courant::{courant_bracket, pair};
use gcdeform::exterior::Form;
use gcdeform::frame::kodaira_eigenframe;
use gcdeform::linalg;
use gcdeform::scalar::{parse_linear, GaussianRational, PolyScalar};
use gcdeform::workspace::{render_linear, Structure, WorkspaceSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gr() -> impl Strategy<Value = GaussianRational> {
    (-9i64..10, 1i64..6, -9i64..10, 1i64..6).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

fn form(degree: usize) -> impl Strategy<Value = Form> {
    let n = linalg::combinations(4, degree).len();
    prop::collection::vec(gr(), n).prop_map(move |cs| {
        let v: Vec<PolyScalar> = cs.into_iter().map(PolyScalar::constant).collect();
        Form::from_coefficient_vector(4, degree, &v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_field_axioms(a in gr(), b in gr(), c in gr()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn polynomial_ring_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (random_function_poly(&mut rng), random_function_poly(&mut rng), random_function_poly(&mut rng));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn courant_bracket_is_skew(seed in any::<u64>()) {
        let frame = kodaira_eigenframe().algebra;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_section(&mut rng, 4);
        let b = random_section(&mut rng, 4);
        let ab = courant_bracket(&frame, &a, &b).unwrap();
        let ba = courant_bracket(&frame, &b, &a).unwrap();
        prop_assert!((&ab + &ba).is_zero());
        prop_assert_eq!(pair(&a, &b), pair(&b, &a));
    }

    #[test]
    fn schouten_graded_skew_1_2(a in form(1), b in form(2)) {
        let l = kodaira_l();
        let ab = l.schouten_bracket(&a, &b).unwrap();
        let ba = l.schouten_bracket(&b, &a).unwrap();
        prop_assert_eq!(ab, -&ba);
    }

    #[test]
    fn schouten_graded_skew_same_degree(a in form(2), b in form(2), x in form(1), y in form(1)) {
        let l = kodaira_l();
        prop_assert_eq!(l.schouten_bracket(&a, &b).unwrap(), l.schouten_bracket(&b, &a).unwrap());
        prop_assert_eq!(l.schouten_bracket(&x, &y).unwrap(), -&l.schouten_bracket(&y, &x).unwrap());
    }

    #[test]
    fn d_l_is_a_graded_derivation(a in form(1), b in form(2)) {
        let l = kodaira_l();
        let lhs = l.d_l_invariant(&a.wedge(&b)).unwrap();
        let rhs = &l.d_l_invariant(&a).unwrap().wedge(&b) - &a.wedge(&l.d_l_invariant(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_combination_round_trip(cs in prop::collection::vec(gr(), 1..4)) {
        let names = ["X", "Y", "U", "V"];
        let text = cs.iter().zip(names).map(|(c, n)| format!("({c})*{n}")).collect::<Vec<_>>().join(" + ");
        let lc = parse_linear(&text).unwrap();
        let again = parse_linear(&render_linear(&lc)).unwrap();
        prop_assert_eq!(again, lc);
    }

    #[test]
    fn workspace_round_trip(c in gr(), w in gr(), prefix in "[a-z][a-z0-9]{0,3}") {
        prop_assume!(prefix != "i");
        let text = format!(
            "basis A B C D\nbracket A B = ({c})*C\nsymplectic A C = {w}\nsymplectic B D = 1\nparams {prefix}\n"
        );
        let spec = WorkspaceSpec::parse(&text).unwrap();
        let symplectic = matches!(spec.structure, Structure::Symplectic { .. });
        prop_assert!(symplectic);
        prop_assert_eq!(WorkspaceSpec::parse(&spec.render()).unwrap(), spec);
    }
}
