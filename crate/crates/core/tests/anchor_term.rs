//! The anchor term a(X0)·eps~(X1, X2) on sections with function coefficients,
//! against a hand-expanded product rule.

mod common;

use common::*;
use gcdeform::scalar::{DerivationSymbol, PolyScalar, Symbol};

fn d(direction: &str, name: &str) -> PolyScalar {
    PolyScalar::derivation(&DerivationSymbol::new(direction, Symbol::function(name)).unwrap())
}

/// `V(x_a)y_b + V(y_b)x_a − V(x_b)y_a − V(y_a)x_b` for a direction `V`.
fn product_rule(v: &str, a: usize, b: usize) -> PolyScalar {
    let (xa, xb, ya, yb) = (format!("alpha{a}"), format!("alpha{b}"), format!("beta{a}"), format!("beta{b}"));
    &(&(&d(v, &xa) * &f(&yb)) + &(&d(v, &yb) * &f(&xa))) - &(&(&d(v, &xb) * &f(&ya)) + &(&d(v, &ya) * &f(&xb)))
}

#[test]
fn anchor_term_matches_product_rule() {
    let l = kodaira_l();
    let cm = kodaira_constrained(&l);
    let eps = cm.map.two_form(&l);
    let coords = |prefix: &str| (1..=4).map(|k| f(&format!("{prefix}{k}"))).collect::<Vec<_>>();
    let (x0, x1, x2) = (coords("u"), coords("alpha"), coords("beta"));
    let got = l.anchor_apply(&x0, &eps.evaluate(&[x1, x2])).unwrap();

    // eps~ = t32 e12 − t11 e13 − t21 e14 − t12 e23 − t22 e24 + t14 e34 (1-based)
    let terms: [(&str, i64, usize, usize); 6] = [
        ("t32", 1, 1, 2),
        ("t11", -1, 1, 3),
        ("t21", -1, 1, 4),
        ("t12", -1, 2, 3),
        ("t22", -1, 2, 4),
        ("t14", 1, 3, 4),
    ];
    let mut expected = PolyScalar::zero();
    for (t, sign, a, b) in terms {
        for (u, dir) in [("u1", "Tbar"), ("u2", "Wbar")] {
            let term = &(&p(t) * &f(u)) * &product_rule(dir, a, b);
            expected += &term.scale(&c(sign, 0));
        }
    }
    assert_eq!(got, expected);
}
