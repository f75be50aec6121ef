use std::sync::Arc;

use super::law::verify_axioms;
use super::{CheckReport, FglError, FormalGroupLaw, Provenance};
use crate::arith::{Coeff, LocalField, ResidueElement, Series};

/// A Lubin-Tate law together with the uniformizer series it commutes with,
/// the requested endomorphisms and the a-posteriori identity checks.
#[derive(Clone, Debug)]
pub struct LubinTateConstruction {
    pub law: FormalGroupLaw<ResidueElement>,
    /// The uniformizer series, lifted to the padded working precision.
    pub f: Series<ResidueElement>,
    /// `(a, [a]_f)`; the first entry is always the linear coefficient of `f`.
    pub endomorphisms: Vec<(ResidueElement, Series<ResidueElement>)>,
    pub checks: Vec<CheckReport>,
}

impl LubinTateConstruction {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Achieved precision in `p`-adic digits.
    pub fn precision(&self) -> i64 {
        self.law.reported_precision().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = self.law.to_json();
        obj["endomorphisms"] = self
            .endomorphisms
            .iter()
            .map(|(a, s)| serde_json::json!({"a": a.json(), "series": s.to_json()}))
            .collect();
        obj["checks"] = self.checks.iter().map(CheckReport::json).collect();
        obj
    }
}

fn check_uniformizer_series(
    f: &Series<ResidueElement>,
    q: usize,
) -> Result<(), FglError> {
    let bad = |msg: String| Err(FglError::BadUniformizerSeries(msg));
    if f.nvars() != 1 {
        return bad("series must be univariate".into());
    }
    if q > f.truncation() {
        return bad(format!("truncation {} is below q = {q}", f.truncation()));
    }
    if !f.c(0).is_zero() {
        return bad("nonzero constant term".into());
    }
    if f.c(1).pi_valuation() != Some(1) {
        return bad("linear coefficient is not a uniformizer".into());
    }
    for d in 2..=f.truncation() {
        let c = if d == q { f.c(d).sub(&f.c(d).one_like()) } else { f.c(d).clone() };
        if c.pi_valuation().map_or(false, |v| v < 1) {
            return bad(format!("coefficient of X^{d} is not congruent to that of X^{q} mod the uniformizer"));
        }
    }
    Ok(())
}

/// Solves `g(f) = f(g)` degree by degree for the series `g = phi + ...` whose
/// linear part is `phi` and whose higher terms are determined by it.
/// `divide` maps a degree-`d` obstruction `f(g) - g(f)` to the correction.
fn commuting_series(
    phi: &Series<ResidueElement>,
    f: &Series<ResidueElement>,
    d_max: usize,
    divide: &dyn Fn(&ResidueElement, usize) -> Result<ResidueElement, FglError>,
) -> Result<Series<ResidueElement>, FglError> {
    let nv = phi.nvars();
    let mut g = phi.truncated(d_max);
    for d in 2..=d_max {
        let gd = g.truncated(d);
        let fd = f.truncated(d);
        let a = fd.substitute(&[&gd])?;
        let f_args: Vec<Series<ResidueElement>> = (0..nv).map(|k| fd.embed(nv, k)).collect();
        let refs: Vec<&Series<ResidueElement>> = f_args.iter().collect();
        let b = gd.substitute(&refs)?;
        for (e, deg, c) in a.slots() {
            if deg == d {
                let obstruction = c.sub(b.coeff(e));
                g.set(e, divide(&obstruction, d)?);
            }
        }
    }
    Ok(g)
}

/// The Lubin-Tate law `F_f` of a uniformizer series `f` over `field`, built
/// at padded precision `N + D`, with endomorphisms `[a]_f` for each `a`.
///
/// The law, `[pi]_f` and every `[a]_f` are then re-verified: unit,
/// commutativity, associativity, `f(F) = F(f, f)`, `[pi]_f = f`, and
/// `[a]_f` commuting with `f` and being an endomorphism of `F`.
pub fn lubin_tate_law(
    field: &Arc<LocalField>,
    f: &Series<ResidueElement>,
    d: usize,
    params: &[ResidueElement],
) -> Result<LubinTateConstruction, FglError> {
    let q = field.residue_size() as usize;
    check_uniformizer_series(f, q)?;
    let padded = field.with_precision(field.precision() + d as u32);
    let e = field.e() as i64;
    let lift = |c: &ResidueElement| c.with_field(&padded);
    let zero = ResidueElement::zero(&padded);
    let f = f.truncated(d).map_coeffs(&zero, lift);
    let pi = f.c(1).clone();
    let eps = pi.div_uniformizer().expect("uniformizer has valuation one");
    let total_digits = e * (field.precision() + d as u32) as i64;
    // one uniformizer digit is lost per division
    let precision = total_digits - (d as i64 - 1);
    if precision < 1 {
        return Err(FglError::PrecisionExhausted { degree: d });
    }
    // (pi^d - pi) = pi * eps * (pi^{d-1} - 1)
    let divide = |obstruction: &ResidueElement, deg: usize| {
        let one = obstruction.one_like();
        let denom = eps.mul(&pi.pow(deg as u64 - 1).sub(&one));
        let inv = denom.inverse().expect("eps (pi^(d-1) - 1) is a unit");
        let quotient = obstruction
            .div_uniformizer()
            .ok_or(FglError::PrecisionExhausted { degree: deg })?;
        Ok(quotient.mul(&inv))
    };
    let x_plus_y = Series::var(&zero, 2, 0, d).add(&Series::var(&zero, 2, 1, d));
    let law = commuting_series(&x_plus_y, &f, d, &divide)?;

    let endo = |a: &ResidueElement| {
        let phi = Series::var(&zero, 1, 0, d).scale(a);
        commuting_series(&phi, &f, d, &divide)
    };
    let p_elem = zero.from_i64_like(field.p() as i64);
    let p_series = endo(&p_elem)?;
    let mut endomorphisms = vec![(pi.clone(), endo(&pi)?)];
    for a in params {
        let a = lift(a);
        if a.pi_valuation().map_or(false, |v| v < 0) {
            return Err(FglError::NonIntegralParameter);
        }
        let s = endo(&a)?;
        endomorphisms.push((a, s));
    }

    let fgl = FormalGroupLaw {
        law,
        logarithm: None,
        exponential: None,
        p_series,
        provenance: Provenance::LubinTate { f_series: f.to_json() },
        p: field.p(),
        height: Some(field.degree()),
        field: Some(Arc::clone(&padded)),
        precision: Some(precision),
    };
    let digits = Some(precision);
    let reported = fgl.reported_precision();
    let mut checks = verify_axioms(&fgl);
    let law = fgl.law();
    let f_of_law = f.substitute(&[law])?;
    let law_of_f = law.substitute(&[&f.embed(2, 0), &f.embed(2, 1)])?;
    checks.push(
        CheckReport::exact("f(F(X,Y)) = F(f(X), f(Y))", f_of_law.first_difference(&law_of_f, digits))
            .with_precision(reported),
    );
    checks.push(
        CheckReport::exact("[pi](X) = f(X)", endomorphisms[0].1.first_difference(&f, digits))
            .with_precision(reported),
    );
    for (a, s) in &endomorphisms[1..] {
        let comm = s.compose(&f)?.first_difference(&f.compose(s)?, digits);
        let hom = law
            .substitute(&[&s.embed(2, 0), &s.embed(2, 1)])?
            .first_difference(&s.compose(law)?, digits);
        let fail = [comm, hom].into_iter().flatten().min();
        checks.push(
            CheckReport::exact(format!("[a] commutes with f and F for a = {a}"), fail)
                .with_precision(reported),
        );
    }
    Ok(LubinTateConstruction {
        law: fgl,
        f,
        endomorphisms,
        checks,
    })
}

/// A univariate series from `(degree, tower coordinates)` pairs.
pub fn series_from_coords(
    field: &Arc<LocalField>,
    d: usize,
    terms: &[(usize, &[i64])],
) -> Series<ResidueElement> {
    let zero = ResidueElement::zero(field);
    let terms: Vec<_> = terms
        .iter()
        .map(|(k, c)| (*k, ResidueElement::from_i64_coords(field, c)))
        .collect();
    Series::from_terms(&zero, d, &terms)
}

/// `pi X + X^q` for the field's distinguished uniformizer.
pub fn standard_uniformizer_series(field: &Arc<LocalField>, d: usize) -> Series<ResidueElement> {
    let zero = ResidueElement::zero(field);
    let q = field.residue_size() as usize;
    let mut terms = vec![(1, ResidueElement::uniformizer(field))];
    if q <= d {
        terms.push((q, ResidueElement::one(field)));
    }
    Series::from_terms(&zero, d, &terms)
}

/// `(1 + X)^p - 1` over an unramified field.
pub fn binomial_series(field: &Arc<LocalField>, d: usize) -> Series<ResidueElement> {
    let p = field.p() as i64;
    let mut c = 1i64;
    let zero = ResidueElement::zero(field);
    let terms: Vec<(usize, ResidueElement)> = (1..=p as usize)
        .filter(|&k| k <= d)
        .map(|k| {
            c = c * (p - k as i64 + 1) / k as i64;
            (k, ResidueElement::from_int(field, &c.into()))
        })
        .collect();
    Series::from_terms(&zero, d, &terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::make_field;

    fn series(field: &Arc<LocalField>, d: usize, terms: &[(usize, &[i64])]) -> Series<ResidueElement> {
        series_from_coords(field, d, terms)
    }

    #[test]
    fn binomial_series_gives_the_multiplicative_law() {
        for p in [2u64, 3] {
            let k = LocalField::qp(p, 8).unwrap();
            let lt = lubin_tate_law(&k, &binomial_series(&k, 12), 12, &[]).unwrap();
            assert!(lt.passed(), "{:?}", lt.checks);
            let zero = lt.law.law().proto().clone();
            let xy = zero.one_like();
            for (e, deg, c) in lt.law.law().slots() {
                let expected = if deg == 1 || e == [1, 1] { &xy } else { &zero };
                assert!(c.agrees_with(expected, lt.law.precision()), "{e:?}: {c}");
            }
            assert!(lt.precision() >= 8);
            assert_eq!(lt.law.p_series().weierstrass_degree(), Some(p as usize));
        }
    }

    #[test]
    fn eisenstein_type_series_over_qp() {
        let k = LocalField::qp(3, 8).unwrap();
        let f = series(&k, 16, &[(1, &[3]), (3, &[1])]);
        let two = ResidueElement::from_i64_coords(&k, &[2]);
        let lt = lubin_tate_law(&k, &f, 16, &[two]).unwrap();
        assert!(lt.passed(), "{:?}", lt.checks);
        assert!(lt.precision() >= 8);
        let law = lt.law.law();
        assert_eq!(law.coeff(&[1, 0]), &law.proto().one_like());
        assert!(law.coeff(&[1, 1]).is_zero());
        assert_eq!(lt.law.height(), Some(1));
    }

    #[test]
    fn unramified_quadratic() {
        let k = make_field(2, 2, &[1, 1, 1], 1, None, 8).unwrap();
        let f = series(&k, 16, &[(1, &[2, 0]), (4, &[1, 0])]);
        let x = ResidueElement::generator(&k);
        let lt = lubin_tate_law(&k, &f, 16, &[x]).unwrap();
        assert!(lt.passed(), "{:?}", lt.checks);
        assert_eq!(lt.law.p_series().weierstrass_degree(), Some(4));
    }

    #[test]
    fn ramified_quadratic() {
        let k = make_field(2, 1, &[0, 1], 2, Some(&[-2, 0, 1]), 8).unwrap();
        let f = series(&k, 16, &[(1, &[0, 1]), (2, &[1, 0])]);
        let lt = lubin_tate_law(&k, &f, 16, &[]).unwrap();
        assert!(lt.passed(), "{:?}", lt.checks);
        assert!(lt.precision() >= 8);
        assert_eq!(lt.law.p_series().weierstrass_degree(), Some(4));
    }

    #[test]
    fn rejected_series() {
        let k = LocalField::qp(2, 8).unwrap();
        let cases: [&[(usize, &[i64])]; 3] = [
            &[(1, &[2])],
            &[(1, &[1]), (2, &[1])],
            &[(1, &[2]), (2, &[3]), (3, &[1])],
        ];
        for terms in cases {
            let err = lubin_tate_law(&k, &series(&k, 8, terms), 8, &[]).unwrap_err();
            assert!(matches!(err, FglError::BadUniformizerSeries(_)), "{err:?}");
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let k = LocalField::qp(2, 8).unwrap();
        let f = series(&k, 10, &[(1, &[2]), (2, &[1]), (3, &[4])]);
        let a = lubin_tate_law(&k, &f, 10, &[]).unwrap();
        let b = lubin_tate_law(&k, &f, 10, &[]).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed());
    }
}
