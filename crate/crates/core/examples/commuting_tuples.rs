//! Conjugacy classes of commuting tuples of p-power-order elements, counted
//! three ways.

use std::sync::Arc;

use lt_hkr::groups::{self, FiniteGroup, DEFAULT_TUPLE_BUDGET};

fn main() {
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let s = groups::tuple_classes(&s3, 2, 3, DEFAULT_TUPLE_BUDGET).unwrap();
    println!("S3, pairs of 3-elements: {} tuples in {} classes", s.tuples().len(), s.len());
    for c in &s.classes {
        println!("  {:?} ({} tuples)", c.rep, c.size);
    }

    println!("{:<8} {:>3} {:>3} {:>8} {:>11} {:>9}", "group", "n", "p", "classes", "centralizer", "burnside");
    for g in groups::standard_corpus() {
        for n in 1..=3 {
            for p in [2u64, 3] {
                let s = groups::tuple_classes(&g, n, p, DEFAULT_TUPLE_BUDGET).unwrap();
                let c = groups::centralizer_count_oracle(&g, n, p, DEFAULT_TUPLE_BUDGET).unwrap();
                let b = groups::burnside_count(&g, s.tuples()).unwrap();
                println!("{:<8} {n:>3} {p:>3} {:>8} {c:>11} {b:>9}", g.name(), s.len());
            }
        }
    }
}
