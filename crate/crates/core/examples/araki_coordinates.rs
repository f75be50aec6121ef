//! Araki coordinates of p-typical laws, and what happens for a law that is
//! not p-typical.

use lt_hkr::arith::LocalField;
use lt_hkr::fgl::araki::coordinates_from_log;
use lt_hkr::fgl::{self, Convention, FormalGroupLaw, Provenance};

fn main() {
    for (p, n) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let d = (p as usize).pow(n + 1);
        let f = FormalGroupLaw::hazewinkel(p, n, d).unwrap();
        let v = fgl::araki_coordinates(&f, n + 1).unwrap();
        let h = coordinates_from_log(&f, n + 1, Convention::Hazewinkel).unwrap();
        let show = |vs: &[lt_hkr::arith::LocalRational]| vs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
        println!("({p},{n}) Araki: [{}]  Hazewinkel: [{}]", show(&v.values), show(&h.values));
    }

    let mult = fgl::law_from_log(
        &fgl::multiplicative_log(2, 16),
        16,
        2,
        Provenance::Logarithm { name: "multiplicative".into() },
    )
    .unwrap();
    println!("X + Y + XY directly: {}", fgl::araki_coordinates(&mult, 2).unwrap_err());
    let typified = fgl::ptypical_coordinates(&LocalField::qp(2, 8).unwrap(), &mult).unwrap();
    println!(
        "after p-typification: [{}]",
        typified.values.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
    );
}
