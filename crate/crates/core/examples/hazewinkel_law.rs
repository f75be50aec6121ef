//! The Hazewinkel logarithm for `q = p^n`, its group law and `[p]`.
//!
//!     cargo run --example hazewinkel_law -- 2 1

use lt_hkr::arith::Coeff;
use lt_hkr::fgl::{self, FormalGroupLaw};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, n) = (args.first().copied().unwrap_or(2), args.get(1).copied().unwrap_or(1) as u32);
    let trunc = 12;

    let log = fgl::hazewinkel_log(p, n, trunc);
    println!("log(X) for p = {p}, n = {n}:");
    for (e, c) in log.terms() {
        println!("  X^{}: {c}", e[0]);
    }
    let q = p.pow(n);
    let fe = fgl::verify_functional_equation(&log, p, q, trunc);
    println!("{}: {}", fe.check, if fe.pass { "pass" } else { "FAIL" });

    let f = FormalGroupLaw::hazewinkel(p, n, trunc).expect("the law is p-integral");
    println!("F(X, Y) through total degree 4:");
    for (e, c) in f.law().truncated(4).terms() {
        println!("  X^{} Y^{}: {c}", e[0], e[1]);
    }
    for r in fgl::verify_axioms(&f) {
        println!("{}: {}", r.check, if r.pass { "pass" } else { "FAIL" });
    }
    for r in fgl::verify_p_corollary(&f).unwrap() {
        println!("{}: {}", r.check, if r.pass { "pass" } else { "FAIL" });
    }
    println!("Weierstrass degree of [p] mod p: {:?}", f.p_series().weierstrass_degree());

    for m in 0..=(q as usize * q as usize - 1).min(15) {
        let g = fgl::genus_value(p, n, m);
        if !g.is_zero() {
            println!("genus(CP^{m}) = {g}");
        }
    }
}
