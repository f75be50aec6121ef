//! Sections of the character scheme coming from characters `G -> Q/Z`, and
//! their equivariance under the trace identification.

use std::sync::Arc;

use lt_hkr::arith::field::make_field;
use lt_hkr::groups::FiniteGroup;
use lt_hkr::hkr::{self, Budgets, Character};

fn main() {
    let f4 = make_field(2, 2, &[1, 1, 1], 1, None, 8).unwrap();
    let f9 = make_field(3, 2, &[1, 0, 1], 1, None, 8).unwrap();
    let b = Budgets::default();

    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let s = hkr::hom_classes(&f4, &s3, b).unwrap();
    // generators of S3 are a transposition and a 3-cycle
    let sign = Character::new(&[(1, 2), (0, 1)]).unwrap();
    println!("sign character: {}", sign.to_json());
    for (class, values) in s.classes.iter().zip(hkr::character_pullback(&sign, &s).unwrap()) {
        let shown: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        println!("  {:?} -> ({})", class.rep, shown.join(", "));
    }

    let z9 = Arc::new(FiniteGroup::cyclic(9));
    let s = hkr::hom_classes(&f9, &z9, b).unwrap();
    for lambda in hkr::enumerate_characters(&z9).unwrap() {
        let r = hkr::equivariance_check(&f9, &lambda, &s, b.enumeration_cap).unwrap();
        println!("Z9, lambda(1) = {}: {}", lambda.images[0], if r.pass { "equivariant" } else { "NOT equivariant" });
    }
}
