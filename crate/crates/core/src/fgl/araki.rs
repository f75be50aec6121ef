use serde::Serialize;

use super::law::law_from_log;
use super::{FglError, FormalGroupLaw, Provenance};
use crate::arith::{Coeff, LocalField, Series};

/// Which generator normalization the coordinates are expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `[p]_F(X) = sum_F v_k X^{p^k}`.
    Araki,
    /// `p m_n = sum_{i<n} m_i v_{n-i}^{p^i}` on logarithm coefficients `m_i`.
    Hazewinkel,
}

/// Coordinates `v_0 .. v_kmax` of a p-typical law.
#[derive(Clone, Debug, PartialEq)]
pub struct PTypicalCoordinates<C> {
    pub values: Vec<C>,
    pub convention: Convention,
    /// First degree at which `[p]_F` and the reconstructed F-sum differ,
    /// if any within the truncation.
    pub residual: Option<usize>,
}

impl<C: Coeff> PTypicalCoordinates<C> {
    pub fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "values": self.values.iter().map(Coeff::json).collect::<Vec<_>>(),
            "convention": self.convention,
            "residual": self.residual,
        })
    }
}

fn is_power_of(mut m: usize, p: usize) -> bool {
    if m == 0 {
        return false;
    }
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

fn monomial<C: Coeff>(c: &C, deg: usize, trunc: usize) -> Series<C> {
    let mut s = Series::zero(c, 1, trunc);
    s.set(&[deg as u32], c.clone());
    s
}

fn check_log_support<C: Coeff>(fgl: &FormalGroupLaw<C>) -> Result<(), FglError> {
    if let Some(log) = fgl.logarithm() {
        let p = fgl.prime() as usize;
        if let Some((_, deg, _)) = log.slots().find(|(_, d, c)| !c.is_zero() && !is_power_of(*d, p)) {
            return Err(FglError::NotPTypical { exponent: deg });
        }
    }
    Ok(())
}

/// Degree-by-degree solve of `[p]_F = sum_F v_k X^{p^k}`: one unknown enters
/// at each `p^k`, and every degree in between must already match.
fn solve_araki<C: Coeff>(fgl: &FormalGroupLaw<C>, kmax: u32) -> Result<PTypicalCoordinates<C>, FglError> {
    let p = fgl.prime() as usize;
    let d = fgl.truncation();
    let top = p.checked_pow(kmax).unwrap_or(usize::MAX);
    if top > d {
        return Err(FglError::TruncationTooSmall { needed: top, have: d });
    }
    let digits = fgl.precision();
    let target = fgl.p_series();
    let proto = target.proto();
    let zero = proto.zero_like();
    let mut sum = Series::zero(proto, 1, d);
    let mut values = Vec::new();
    let mut next = 1usize;
    for deg in 1..=top {
        let diff = target.c(deg).sub(sum.c(deg));
        if deg == next {
            values.push(diff.clone());
            sum = fgl.law().substitute(&[&sum, &monomial(&diff, deg, d)])?;
            next *= p;
        } else if !diff.agrees_with(&zero, digits) {
            return Err(FglError::NotPTypifiable { degree: deg });
        }
    }
    let residual = (1..=d).find(|&deg| !target.c(deg).agrees_with(sum.c(deg), digits));
    Ok(PTypicalCoordinates {
        values,
        convention: Convention::Araki,
        residual,
    })
}

/// Araki coordinates `v_0 .. v_kmax` of a p-typical law.
pub fn araki_coordinates<C: Coeff>(
    fgl: &FormalGroupLaw<C>,
    kmax: u32,
) -> Result<PTypicalCoordinates<C>, FglError> {
    check_log_support(fgl)?;
    solve_araki(fgl, kmax)
}

/// Coordinates read off the logarithm coefficients `m_k` at `X^{p^k}`:
/// `v_n = p m_n - sum_{1<=i<=n} m_i v_{n-i}^{p^i}` (Araki) or the same sum
/// over `1<=i<n` (Hazewinkel). `v_0 = p` in both.
pub fn coordinates_from_log<C: Coeff>(
    fgl: &FormalGroupLaw<C>,
    kmax: u32,
    convention: Convention,
) -> Result<PTypicalCoordinates<C>, FglError> {
    check_log_support(fgl)?;
    let log = fgl.logarithm().ok_or(FglError::MissingLogarithm)?;
    let p = fgl.prime();
    let top = (p as usize).checked_pow(kmax).unwrap_or(usize::MAX);
    if top > log.truncation() {
        return Err(FglError::TruncationTooSmall { needed: top, have: log.truncation() });
    }
    let pc = log.proto().from_i64_like(p as i64);
    let m: Vec<C> = (0..=kmax).map(|k| log.c((p as usize).pow(k)).clone()).collect();
    let mut v = vec![pc.clone()];
    for n in 1..=kmax as usize {
        let upper = match convention {
            Convention::Araki => n,
            Convention::Hazewinkel => n - 1,
        };
        let mut acc = pc.mul(&m[n]);
        for i in 1..=upper {
            let mut power = v[n - i].clone();
            for _ in 1..p.pow(i as u32) {
                power = power.mul(&v[n - i]);
            }
            acc = acc.sub(&m[i].mul(&power));
        }
        v.push(acc);
    }
    Ok(PTypicalCoordinates {
        values: v,
        convention,
        residual: None,
    })
}

/// Keeps only the `X^{p^k}` terms of a logarithm.
pub fn p_typify<C: Coeff>(log: &Series<C>, p: u64) -> Series<C> {
    let mut out = Series::zero(log.proto(), 1, log.truncation());
    for (e, deg, c) in log.slots() {
        if is_power_of(deg, p as usize) {
            out.set(e, c.clone());
        }
    }
    out
}

/// The coordinates `w_i(L)` of the p-typification of `F`, for every `i`
/// with `p^i` inside the truncation. With a logarithm the law is first
/// p-typified; without one the Araki solve runs directly on `[p]_F`.
pub fn ptypical_coordinates<C: Coeff>(
    field: &LocalField,
    fgl: &FormalGroupLaw<C>,
) -> Result<PTypicalCoordinates<C>, FglError> {
    let p = field.p();
    let d = fgl.truncation();
    let mut kmax = 0u32;
    while (p as usize).pow(kmax + 1) <= d {
        kmax += 1;
    }
    match fgl.logarithm() {
        Some(log) => {
            let typified = law_from_log(
                &p_typify(log, p),
                d,
                p,
                Provenance::Logarithm { name: "p-typification".into() },
            )?;
            solve_araki(&typified, kmax)
        }
        None => solve_araki(fgl, kmax),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LocalRational;
    use crate::fgl::hazewinkel::{additive_log, hazewinkel_log, multiplicative_log};

    fn r(n: i64, d: i64, p: u64) -> LocalRational {
        LocalRational::ratio(n, d, p)
    }

    fn named(log: Series<LocalRational>, p: u64, d: usize) -> FormalGroupLaw<LocalRational> {
        law_from_log(&log, d, p, Provenance::Logarithm { name: "test".into() }).unwrap()
    }

    #[test]
    fn hazewinkel_laws_have_a_single_generator() {
        for (p, n, d) in [(2u64, 1u32, 20usize), (3, 1, 27), (2, 2, 20)] {
            let f = FormalGroupLaw::hazewinkel(p, n, d).unwrap();
            let kmax = (0..).take_while(|&k| (p as usize).pow(k) <= d).last().unwrap();
            let coords = araki_coordinates(&f, kmax).unwrap();
            assert_eq!(coords.residual, None);
            for (k, v) in coords.values.iter().enumerate() {
                let expected = match k as u32 {
                    0 => p as i64,
                    k if k == n => 1,
                    _ => 0,
                };
                assert_eq!(v, &r(expected, 1, p), "({p},{n}) v_{k}");
            }
            assert_eq!(ptypical_coordinates(&LocalField::qp(p, 8).unwrap(), &f).unwrap(), coords);
        }
    }

    #[test]
    fn log_recursion_matches_solver() {
        let f = FormalGroupLaw::hazewinkel(2, 1, 20).unwrap();
        let solved = araki_coordinates(&f, 4).unwrap();
        let from_log = coordinates_from_log(&f, 4, Convention::Araki).unwrap();
        assert_eq!(solved.values, from_log.values);
        // the Honda-type normalization differs: v_1 = p m_1 = -1
        let h = coordinates_from_log(&f, 1, Convention::Hazewinkel).unwrap();
        assert_eq!(h.values, vec![r(2, 1, 2), r(-1, 1, 2)]);
        let g = FormalGroupLaw::hazewinkel(3, 1, 30).unwrap();
        assert_eq!(
            araki_coordinates(&g, 3).unwrap().values,
            coordinates_from_log(&g, 3, Convention::Araki).unwrap().values
        );
    }

    #[test]
    fn additive_and_multiplicative() {
        let add = named(additive_log(2, 16), 2, 16);
        let v = araki_coordinates(&add, 4).unwrap();
        assert_eq!(v.values, vec![r(2, 1, 2), r(0, 1, 2), r(0, 1, 2), r(0, 1, 2), r(0, 1, 2)]);
        let mult = named(multiplicative_log(2, 16), 2, 16);
        assert_eq!(araki_coordinates(&mult, 2).unwrap_err(), FglError::NotPTypical { exponent: 3 });
        assert_eq!(
            araki_coordinates(&add, 5).unwrap_err(),
            FglError::TruncationTooSmall { needed: 32, have: 16 }
        );
    }

    #[test]
    fn p_typification() {
        let log = hazewinkel_log(2, 1, 20);
        assert_eq!(p_typify(&log, 2), log);
        let t = p_typify(&multiplicative_log(2, 8), 2);
        let kept: Vec<_> = t.terms().map(|(e, c)| (e[0], c.clone())).collect();
        assert_eq!(kept, vec![(1, r(1, 1, 2)), (2, r(-1, 2, 2)), (4, r(-1, 4, 2)), (8, r(-1, 8, 2))]);
        let mult = named(multiplicative_log(2, 16), 2, 16);
        let w = ptypical_coordinates(&LocalField::qp(2, 8).unwrap(), &mult).unwrap();
        assert_eq!(w.values[0], r(2, 1, 2));
        assert_eq!(w.residual, None);
    }
}
