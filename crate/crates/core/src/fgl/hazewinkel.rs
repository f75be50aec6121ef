use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::CheckReport;
use crate::arith::{Coeff, LocalRational, Series};

/// Default truncation for laws with `q = p^n`: `max(q^2 + 4, 20)`.
pub fn default_truncation(p: u64, n: u32) -> usize {
    let q = p.pow(n) as usize;
    (q * q + 4).max(20)
}

fn big_pow(p: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// `prod_{1<=i<=k} (1 - p^{q^i - 1})^{-1}`.
fn product_factor(p: u64, q: u64, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 1..=k {
        let denom = BigInt::one() - big_pow(p, q.pow(i) - 1);
        acc /= BigRational::from_integer(denom);
    }
    acc
}

/// Exponents `q^k` not exceeding `d`, starting from `k = 0`.
fn q_powers(q: u64, d: usize) -> impl Iterator<Item = (u32, usize)> {
    (0u32..)
        .map(move |k| (k, q.checked_pow(k).map_or(usize::MAX, |v| v as usize)))
        .take_while(move |&(_, m)| m <= d)
}

/// The Hazewinkel logarithm
/// `X + sum_k prod_{i<=k} (1 - p^{q^i-1})^{-1} X^{q^k} / p^k`, `q = p^n`.
pub fn hazewinkel_log(p: u64, n: u32, trunc: usize) -> Series<LocalRational> {
    let q = p.pow(n);
    let proto = LocalRational::zero(p);
    let terms: Vec<(usize, LocalRational)> = q_powers(q, trunc)
        .map(|(k, m)| {
            let c = product_factor(p, q, k) / BigRational::from_integer(big_pow(p, k as u64));
            (m, LocalRational::from_big_rational(c, p))
        })
        .collect();
    Series::from_terms(&proto, trunc, &terms)
}

/// Honda's logarithm `sum_k X^{q^k} / p^k`.
pub fn honda_log(p: u64, n: u32, trunc: usize) -> Series<LocalRational> {
    let q = p.pow(n);
    let proto = LocalRational::zero(p);
    let terms: Vec<(usize, LocalRational)> = q_powers(q, trunc)
        .map(|(k, m)| {
            let c = BigRational::new(BigInt::one(), big_pow(p, k as u64));
            (m, LocalRational::from_big_rational(c, p))
        })
        .collect();
    Series::from_terms(&proto, trunc, &terms)
}

/// The additive logarithm `X`.
pub fn additive_log(p: u64, trunc: usize) -> Series<LocalRational> {
    let proto = LocalRational::zero(p);
    Series::var(&proto, 1, 0, trunc)
}

/// `log(1 + X) = sum_m (-1)^{m+1} X^m / m`, the logarithm of `X + Y + XY`.
pub fn multiplicative_log(p: u64, trunc: usize) -> Series<LocalRational> {
    let proto = LocalRational::zero(p);
    let terms: Vec<(usize, LocalRational)> = (1..=trunc)
        .map(|m| {
            let sign = if m % 2 == 1 { 1 } else { -1 };
            (m, LocalRational::ratio(sign, m as i64, p))
        })
        .collect();
    Series::from_terms(&proto, trunc, &terms)
}

/// Checks `p log(X) = log(pX) + log(X^q)` through degree `trunc`, and
/// re-verifies the per-coefficient identity `p = p^{q^k} + p(1 - p^{q^k - 1})`.
pub fn verify_functional_equation(
    log: &Series<LocalRational>,
    p: u64,
    q: u64,
    trunc: usize,
) -> CheckReport {
    let log = log.truncated(trunc.min(log.truncation()));
    let d = log.truncation();
    let pr = log.proto().from_i64_like(p as i64);
    let lhs = log.scale(&pr);
    // log(pX): scale X^m by p^m
    let mut scaled = log.clone();
    let mut pm = pr.one_like();
    for m in 0..=d {
        let c = log.c(m).mul(&pm);
        scaled.set(&[m as u32], c);
        pm = pm.mul(&pr);
    }
    let mut xq = Series::zero(log.proto(), 1, d);
    xq.set(&[q as u32], pr.one_like());
    let rhs = if q as usize <= d {
        scaled.add(&log.compose(&xq).expect("X^q has no constant term"))
    } else {
        scaled
    };
    let mut first_failure = lhs.first_difference(&rhs, None);
    for (_, m) in q_powers(q, d).skip(1) {
        let pb = BigInt::from(p);
        let ok = pb.clone() == big_pow(p, m as u64) + &pb * (BigInt::one() - big_pow(p, m as u64 - 1));
        if !ok {
            first_failure = Some(first_failure.map_or(m, |f| f.min(m)));
        }
    }
    CheckReport::exact("functional equation p*log(X) = log(pX) + log(X^q)", first_failure)
}

/// `g(X) = p^{-1} log(pX)` together with its integrality report.
pub fn integral_g(log: &Series<LocalRational>, p: u64) -> (Series<LocalRational>, CheckReport) {
    let d = log.truncation();
    let pr = log.proto().from_i64_like(p as i64);
    let mut g = Series::zero(log.proto(), 1, d);
    // coefficient of X^m is p^{m-1} c_m
    let mut pm = pr.one_like();
    for m in 1..=d {
        g.set(&[m as u32], log.c(m).mul(&pm));
        pm = pm.mul(&pr);
    }
    let report = CheckReport::exact("g(X) = log(pX)/p is p-integral", g.first_non_integral());
    (g, report)
}

/// The genus of the Hazewinkel law on `CP^m`:
/// `prod_{i<=k} (1 - p^{q^i-1})^{-1} (q/p)^k` when `m = q^k - 1`, else `0`.
pub fn genus_value(p: u64, n: u32, m: usize) -> LocalRational {
    let q = p.pow(n);
    for (k, qk) in q_powers(q, m + 1) {
        if qk == m + 1 {
            let ratio = BigRational::new(BigInt::from(q), BigInt::from(p));
            let v = product_factor(p, q, k) * num_traits::pow(ratio, k as usize);
            return LocalRational::from_big_rational(v, p);
        }
    }
    LocalRational::zero(p)
}

/// Checks p-integrality of the genus on `CP^0 .. CP^mmax` and agreement with
/// `(m+1)` times the logarithm coefficient of `X^{m+1}`.
pub fn verify_genus(p: u64, n: u32, mmax: usize) -> CheckReport {
    let log = hazewinkel_log(p, n, mmax + 1);
    let first_failure = (0..=mmax).find(|&m| {
        let g = genus_value(p, n, m);
        let via_log = log.c(m + 1).mul(&g.from_i64_like(m as i64 + 1));
        !g.is_p_integral() || g != via_log
    });
    CheckReport::exact("genus on CP^m is p-integral and equals (m+1)*log coefficient", first_failure)
}
