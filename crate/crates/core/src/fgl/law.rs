use std::sync::Arc;

use super::hazewinkel::hazewinkel_log;
use super::{CheckReport, FglError, FormalGroupLaw, Provenance};
use crate::arith::{Coeff, LocalRational, NfContext, NumberFieldElement, Series};

fn height_from_p_series<C: Coeff>(p: u64, p_series: &Series<C>) -> Option<usize> {
    let w = p_series.weierstrass_degree()?;
    let mut h = 0;
    let mut pk = 1usize;
    while pk < w {
        pk *= p as usize;
        h += 1;
    }
    (pk == w).then_some(h)
}

/// `F(X, Y) = exp(log X + log Y)` with an exact integrality check.
pub fn law_from_log<C: Coeff>(
    log: &Series<C>,
    trunc: usize,
    p: u64,
    provenance: Provenance,
) -> Result<FormalGroupLaw<C>, FglError> {
    let log = log.truncated(trunc);
    let exp = log.revert()?;
    let sum = log.embed(2, 0).add(&log.embed(2, 1));
    let law = exp.compose(&sum)?;
    if let Some(degree) = law.first_non_integral() {
        return Err(FglError::IntegralityViolation { degree });
    }
    let pc = log.proto().from_i64_like(p as i64);
    let p_series = exp.compose(&log.scale(&pc))?;
    let height = match &provenance {
        Provenance::Hazewinkel { n, .. } => Some(*n as usize),
        _ => height_from_p_series(p, &p_series),
    };
    Ok(FormalGroupLaw {
        law,
        logarithm: Some(log),
        exponential: Some(exp),
        p_series,
        provenance,
        p,
        height,
        field: None,
        precision: None,
    })
}

impl FormalGroupLaw<LocalRational> {
    /// The law of the Hazewinkel logarithm for `(p, n)`, exact over `Q`.
    pub fn hazewinkel(p: u64, n: u32, trunc: usize) -> Result<Self, FglError> {
        law_from_log(&hazewinkel_log(p, n, trunc), trunc, p, Provenance::Hazewinkel { p, n })
    }

    /// The same law with coefficients in `Q[x]/(u)`.
    pub fn to_number_field(&self, ctx: &Arc<NfContext>) -> FormalGroupLaw<NumberFieldElement> {
        let proto = NumberFieldElement::from_ints(ctx, &vec![0; ctx.degree()]);
        let conv = |s: &Series<LocalRational>| {
            s.map_coeffs(&proto, |c| NumberFieldElement::from_local(ctx, c))
        };
        FormalGroupLaw {
            law: conv(&self.law),
            logarithm: self.logarithm.as_ref().map(conv),
            exponential: self.exponential.as_ref().map(conv),
            p_series: conv(&self.p_series),
            provenance: self.provenance.clone(),
            p: self.p,
            height: self.height,
            field: self.field.clone(),
            precision: None,
        }
    }
}

/// Unit, commutativity and associativity of `F` through its truncation,
/// modulo the law's recorded precision when it has one.
pub fn verify_axioms<C: Coeff>(fgl: &FormalGroupLaw<C>) -> Vec<CheckReport> {
    let digits = fgl.precision;
    let reported = fgl.reported_precision();
    let law = &fgl.law;
    let d = law.truncation();
    let proto = law.proto();
    let x = Series::var(proto, 1, 0, d);
    let zero = Series::zero(proto, 1, d);
    let unit_left = law.substitute(&[&x, &zero]).expect("zero constant terms");
    let unit_right = law.substitute(&[&zero, &x]).expect("zero constant terms");
    let unit_fail = [
        unit_left.first_difference(&x, digits),
        unit_right.first_difference(&x, digits),
    ]
    .into_iter()
    .flatten()
    .min();
    let swapped = law.reindex(2, &[1, 0]);
    let comm_fail = law.first_difference(&swapped, digits);
    let fxy = law.reindex(3, &[0, 1]);
    let fyz = law.reindex(3, &[1, 2]);
    let x3 = Series::var(proto, 3, 0, d);
    let z3 = Series::var(proto, 3, 2, d);
    let left = law.substitute(&[&fxy, &z3]).expect("zero constant terms");
    let right = law.substitute(&[&x3, &fyz]).expect("zero constant terms");
    let assoc_fail = left.first_difference(&right, digits);
    vec![
        CheckReport::exact("unit F(X,0) = X = F(0,X)", unit_fail).with_precision(reported),
        CheckReport::exact("commutativity F(X,Y) = F(Y,X)", comm_fail).with_precision(reported),
        CheckReport::exact("associativity F(F(X,Y),Z) = F(X,F(Y,Z))", assoc_fail)
            .with_precision(reported),
    ]
}

/// `[a]_F(X) = exp(a log X)`.
pub fn endomorphism<C: Coeff>(fgl: &FormalGroupLaw<C>, a: &C) -> Result<Series<C>, FglError> {
    if !a.is_integral() {
        return Err(FglError::NonIntegralParameter);
    }
    let log = fgl.logarithm.as_ref().ok_or(FglError::MissingLogarithm)?;
    let exp = fgl.exponential.as_ref().ok_or(FglError::MissingLogarithm)?;
    let out = exp.compose(&log.scale(a))?;
    if let Some(degree) = out.first_non_integral() {
        return Err(FglError::IntegralityViolation { degree });
    }
    Ok(out)
}

/// Checks `[a] o [b] = [ab]` and `F([a]X, [b]X) = [a+b]X` through `trunc`.
pub fn verify_ring_hom<C: Coeff>(
    fgl: &FormalGroupLaw<C>,
    a: &C,
    b: &C,
    trunc: usize,
) -> Result<CheckReport, FglError> {
    let t = trunc.min(fgl.truncation());
    let ea = endomorphism(fgl, a)?.truncated(t);
    let eb = endomorphism(fgl, b)?.truncated(t);
    let eab = endomorphism(fgl, &a.mul(b))?.truncated(t);
    let esum = endomorphism(fgl, &a.add(b))?.truncated(t);
    let comp = ea.compose(&eb)?;
    let sum = fgl.law.truncated(t).substitute(&[&ea, &eb])?;
    let fail = [comp.first_difference(&eab, None), sum.first_difference(&esum, None)]
        .into_iter()
        .flatten()
        .min();
    Ok(CheckReport::exact(
        format!("[a]o[b] = [ab] and [a] +F [b] = [a+b] for a = {a:?}, b = {b:?}"),
        fail,
    ))
}

/// The cached `[p]_F`.
pub fn p_series<C: Coeff>(fgl: &FormalGroupLaw<C>) -> Series<C> {
    fgl.p_series.clone()
}

fn x_power<C: Coeff>(proto: &C, k: usize, trunc: usize) -> Series<C> {
    let mut s = Series::zero(proto, 1, trunc);
    s.set(&[k as u32], proto.one_like());
    s
}

/// For a Hazewinkel law: `[p]_F(X) = F(pX, X^q)` exactly, and
/// `[p]_F = X^q` modulo `p`.
pub fn verify_p_corollary<C: Coeff>(fgl: &FormalGroupLaw<C>) -> Result<Vec<CheckReport>, FglError> {
    let (p, n) = fgl
        .provenance
        .hazewinkel_params()
        .ok_or(FglError::WrongProvenance("hazewinkel"))?;
    let q = p.pow(n) as usize;
    let d = fgl.truncation();
    let proto = fgl.law.proto();
    let px = Series::var(proto, 1, 0, d).scale(&proto.from_i64_like(p as i64));
    let xq = x_power(proto, q, d);
    let rhs = fgl.law.substitute(&[&px, &xq])?;
    let fail = fgl.p_series.first_difference(&rhs, None);
    let diff = fgl.p_series.sub(&xq);
    let mod_p_fail = diff
        .slots()
        .find(|(_, _, c)| !c.is_integral() || c.is_unit_mod_max())
        .map(|(_, deg, _)| deg);
    Ok(vec![
        CheckReport::exact("[p](X) = F(pX, X^q)", fail),
        CheckReport::exact("[p](X) = X^q mod p", mod_p_fail),
    ])
}

/// For each unit `u`, forms `F_u(X,Y) = u^{-1} F(uX, uY)` and checks
/// `[p]_{F_u}(X) = F_u(pX, u^{q-1} X^q)` through `trunc`.
pub fn rescale_graded_check<C: Coeff>(
    fgl: &FormalGroupLaw<C>,
    u_samples: &[C],
    trunc: usize,
) -> Result<Vec<CheckReport>, FglError> {
    let (p, n) = fgl
        .provenance
        .hazewinkel_params()
        .ok_or(FglError::WrongProvenance("hazewinkel"))?;
    let q = p.pow(n) as usize;
    let d = trunc.min(fgl.truncation());
    let log = fgl.logarithm.as_ref().ok_or(FglError::MissingLogarithm)?.truncated(d);
    let exp = fgl.exponential.as_ref().ok_or(FglError::MissingLogarithm)?.truncated(d);
    let law = fgl.law.truncated(d);
    let proto = law.proto();
    let mut reports = Vec::new();
    for u in u_samples {
        let u_inv = u.inverse().ok_or(FglError::NonUnitScale)?;
        // rescaled series: coefficient of a degree-m monomial times u^{m-1}
        let rescale = |s: &Series<C>| {
            let mut out = s.clone();
            let exps: Vec<(Vec<u32>, usize, C)> =
                s.slots().map(|(e, deg, c)| (e.to_vec(), deg, c.clone())).collect();
            for (e, deg, c) in exps {
                if c.is_zero() {
                    continue;
                }
                let mut scale = u_inv.clone();
                for _ in 0..deg {
                    scale = scale.mul(u);
                }
                out.set(&e, c.mul(&scale));
            }
            out
        };
        let law_u = rescale(&law);
        let log_u = rescale(&log);
        let exp_u = rescale(&exp);
        let pc = proto.from_i64_like(p as i64);
        let p_series_u = exp_u.compose(&log_u.scale(&pc))?;
        let px = Series::var(proto, 1, 0, d).scale(&pc);
        let mut u_q1 = proto.one_like();
        for _ in 0..q - 1 {
            u_q1 = u_q1.mul(u);
        }
        let xq = x_power(proto, q, d).scale(&u_q1);
        let rhs = law_u.substitute(&[&px, &xq])?;
        reports.push(CheckReport::exact(
            format!("[p](X) = pX +F_u u^(q-1) X^q for u = {u:?}"),
            p_series_u.first_difference(&rhs, None),
        ));
    }
    Ok(reports)
}

/// Weierstrass degree of the `r`-fold composite of `[p]_F`, asserted to equal
/// `p^{r h}` for the law's height `h`.
pub fn torsion_order<C: Coeff>(fgl: &FormalGroupLaw<C>, r: u32) -> Result<usize, FglError> {
    let h = fgl.height.ok_or(FglError::HeightMismatch {
        expected: 0,
        found: fgl.p_series.weierstrass_degree(),
    })?;
    let expected = (fgl.p as usize).pow(r * h as u32);
    if expected > fgl.truncation() {
        return Err(FglError::TruncationTooSmall {
            needed: expected,
            have: fgl.truncation(),
        });
    }
    let mut acc = fgl.p_series.clone();
    for _ in 1..r {
        acc = acc.compose(&fgl.p_series)?;
    }
    let found = acc.weierstrass_degree();
    if found != Some(expected) {
        return Err(FglError::HeightMismatch { expected, found });
    }
    Ok(expected)
}
