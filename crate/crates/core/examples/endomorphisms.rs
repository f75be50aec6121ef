//! `[a]_F` for integers `a`, and `[x]_F` over `Q[x]/(x^2 + x + 1)` for the
//! height-two law at `p = 2`.

use lt_hkr::arith::field::make_field;
use lt_hkr::arith::numfield::{NfContext, NumberFieldElement};
use lt_hkr::arith::{Coeff, LocalRational};
use lt_hkr::fgl::{self, FormalGroupLaw};

fn main() {
    let f = FormalGroupLaw::hazewinkel(2, 1, 12).unwrap();
    let minus_one = fgl::endomorphism(&f, &LocalRational::from_int(-1, 2)).unwrap();
    println!("[-1](X) over Z_(2), the formal inverse:");
    for (e, c) in minus_one.truncated(8).terms() {
        println!("  X^{}: {c}", e[0]);
    }
    for (a, b) in [(2, 3), (-1, 4), (3, 3)] {
        let r = fgl::verify_ring_hom(&f, &LocalRational::from_int(a, 2), &LocalRational::from_int(b, 2), 12).unwrap();
        println!("a = {a}, b = {b}: {}", if r.pass { "pass" } else { "FAIL" });
    }

    let field = make_field(2, 2, &[1, 1, 1], 1, None, 8).unwrap();
    let ctx = NfContext::from_field(&field);
    let law = FormalGroupLaw::hazewinkel(2, 2, 12).unwrap().to_number_field(&ctx);
    let x = NumberFieldElement::generator(&ctx);
    let ex = fgl::endomorphism(&law, &x).unwrap();
    // the logarithm only has exponents 4^k and x^4 = x, so [x](X) = xX
    println!("[x](X) for the (2,2) law:");
    for (e, c) in ex.truncated(6).terms() {
        println!("  X^{}: {c}", e[0]);
    }
    let r = fgl::verify_ring_hom(&law, &x, &x.from_i64_like(1), 12).unwrap();
    println!("[x] o [1] = [x] and [x] +F [1] = [x + 1]: {}", if r.pass { "pass" } else { "FAIL" });
}
