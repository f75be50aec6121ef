//! Lubin-Tate laws over `Q_3`, the unramified quadratic extension of `Q_2`
//! and `Q_2(sqrt 2)`, solved degree by degree in `o_L / p^N`.

use lt_hkr::arith::field::make_field;
use lt_hkr::arith::{LocalField, ResidueElement};
use lt_hkr::fgl;

fn main() {
    let fields = [
        LocalField::qp(3, 8).unwrap(),
        make_field(2, 2, &[1, 1, 1], 1, None, 8).unwrap(),
        make_field(2, 1, &[0, 1], 2, Some(&[-2, 0, 1]), 8).unwrap(),
    ];
    for k in &fields {
        let f = fgl::standard_uniformizer_series(k, 12);
        let params = if k.f() > 1 { vec![ResidueElement::generator(k)] } else { vec![] };
        let lt = fgl::lubin_tate_law(k, &f, 12, &params).unwrap();
        println!("{} with f = pi X + X^q:", k.label());
        println!("  precision: {} p-adic digits", lt.precision());
        println!("  Weierstrass degree of [pi]: {:?}", lt.law.p_series().weierstrass_degree());
        for c in &lt.checks {
            println!("  {}: {}", c.check, if c.pass { "pass" } else { "FAIL" });
        }
    }

    let q2 = LocalField::qp(2, 8).unwrap();
    let lt = fgl::lubin_tate_law(&q2, &fgl::binomial_series(&q2, 10), 10, &[]).unwrap();
    println!("f = (1+X)^2 - 1 over Q_2, nonzero terms of F:");
    for (e, c) in lt.law.law().terms() {
        println!("  X^{} Y^{}: {c}", e[0], e[1]);
    }
}
