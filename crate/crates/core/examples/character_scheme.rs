//! Closed points of `Hom(o_L, G)/conj` under the unit group of `o_L` and,
//! for unramified `L`, the Frobenius lift.

use std::sync::Arc;

use lt_hkr::arith::field::make_field;
use lt_hkr::arith::LocalField;
use lt_hkr::groups::FiniteGroup;
use lt_hkr::hkr::{self, Budgets};

fn main() {
    let b = Budgets::default();
    let q2 = LocalField::qp(2, 8).unwrap();
    let q3 = LocalField::qp(3, 8).unwrap();
    let f4 = make_field(2, 2, &[1, 1, 1], 1, None, 8).unwrap();
    let ram = make_field(2, 1, &[0, 1], 2, Some(&[-2, 0, 1]), 8).unwrap();

    let z3 = Arc::new(FiniteGroup::cyclic(3));
    let z4 = Arc::new(FiniteGroup::cyclic(4));
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    for (k, g) in [(&q3, &z3), (&q2, &z4), (&f4, &z2)] {
        let d = hkr::unit_orbits(k, g, None, b).unwrap();
        println!("{} / {}: degrees {:?}", k.label(), g.name(), d.degrees());
    }

    let q8 = Arc::new(FiniteGroup::quaternion());
    for k in [&q2, &f4, &ram] {
        let d = hkr::unit_orbits(k, &q8, None, b).unwrap();
        println!("{} / Q8: {} classes, {} points at level {}", k.label(), d.total_classes, d.points.len(), d.level_r);
        for pt in &d.points {
            println!("  {:?}: degree {}, stabilizer order {}", pt.rep, pt.degree, pt.stabilizer_order);
        }
    }
    let fr = hkr::frobenius_orbits(&f4, &q8, None, b).unwrap();
    println!("with Frobenius over {}: degrees {:?}", f4.label(), fr.degrees());

    for nu in 1..=3 {
        let (_, found, expected) = hkr::cyclic_hom_count(&f4, nu, b).unwrap();
        println!("|Hom(o_L, Z/{})| = {found} (expected {expected})", 2u64.pow(nu));
    }
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let (r, detail) = hkr::product_check(&q2, &s3, &z2, b).unwrap();
    println!("{}: {} {detail}", r.check, if r.pass { "pass" } else { "FAIL" });
}
