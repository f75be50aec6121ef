use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::ModMatrix;
use super::rational::int_valuation;
use super::residue::ResidueElement;
use super::{is_prime, ArithError, DEFAULT_DEGREE_CAP, DEFAULT_ENUMERATION_CAP};

/// A finite extension `L / Q_p` presented as an unramified step
/// `Z_p[x]/(u)` followed by an Eisenstein step `o_U[y]/(E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalField {
    p: u64,
    f: usize,
    u_poly: Vec<BigInt>,
    e: usize,
    /// Coefficients of `E`, each an element of the unramified step (`f` coords).
    e_poly: Option<Vec<Vec<BigInt>>>,
    precision: u32,
    modulus: BigInt,
}

/// One coefficient of an Eisenstein polynomial in JSON: an integer or a list
/// of `f` integers over the unramified step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EisensteinCoeff {
    Int(i64),
    Unramified(Vec<i64>),
}

/// JSON form of a [`LocalField`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    pub f: usize,
    pub u_poly: Vec<i64>,
    pub e: usize,
    pub e_poly: Option<Vec<EisensteinCoeff>>,
    #[serde(default = "default_precision")]
    pub precision: u32,
}

fn default_precision() -> u32 {
    super::DEFAULT_PRECISION
}

impl FieldSpec {
    pub fn build(&self) -> Result<Arc<LocalField>, ArithError> {
        let e_poly = self.e_poly.as_ref().map(|coeffs| {
            coeffs
                .iter()
                .map(|c| match c {
                    EisensteinCoeff::Int(k) => {
                        let mut v = vec![0; self.f];
                        if self.f > 0 {
                            v[0] = *k;
                        }
                        v
                    }
                    EisensteinCoeff::Unramified(v) => v.clone(),
                })
                .collect::<Vec<_>>()
        });
        LocalField::new(
            self.p,
            self.f,
            &self.u_poly,
            self.e,
            e_poly.as_deref(),
            self.precision,
            DEFAULT_DEGREE_CAP,
        )
    }
}

/// Convenience form of [`LocalField::new`] for Eisenstein polynomials with
/// integer coefficients.
pub fn make_field(
    p: u64,
    f: usize,
    u_poly: &[i64],
    e: usize,
    e_poly: Option<&[i64]>,
    precision: u32,
) -> Result<Arc<LocalField>, ArithError> {
    let e_poly: Option<Vec<Vec<i64>>> = e_poly.map(|c| {
        c.iter()
            .map(|&k| {
                let mut v = vec![0; f.max(1)];
                v[0] = k;
                v
            })
            .collect()
    });
    LocalField::new(p, f, u_poly, e, e_poly.as_deref(), precision, DEFAULT_DEGREE_CAP)
}

impl LocalField {
    pub fn new(
        p: u64,
        f: usize,
        u_poly: &[i64],
        e: usize,
        e_poly: Option<&[Vec<i64>]>,
        precision: u32,
        degree_cap: usize,
    ) -> Result<Arc<Self>, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        if f == 0 || e == 0 {
            return Err(ArithError::Invalid("degrees must be positive".into()));
        }
        if precision == 0 {
            return Err(ArithError::ZeroPrecision);
        }
        if e * f > degree_cap {
            return Err(ArithError::DegreeCapExceeded {
                n: e * f,
                cap: degree_cap,
            });
        }
        if u_poly.len() != f + 1 || u_poly[f] != 1 {
            return Err(ArithError::NotMonic(f));
        }
        if !irreducible_mod_p(u_poly, p) {
            return Err(ArithError::NotIrreducible);
        }
        let u_big: Vec<BigInt> = u_poly.iter().map(|&c| BigInt::from(c)).collect();
        let e_big = match (e, e_poly) {
            (1, None) => None,
            (1, Some(_)) => {
                return Err(ArithError::Invalid(
                    "Eisenstein polynomial given for e = 1".into(),
                ))
            }
            (_, None) => return Err(ArithError::NotEisenstein),
            (_, Some(coeffs)) => {
                if coeffs.len() != e + 1 || coeffs.iter().any(|c| c.len() != f) {
                    return Err(ArithError::NotMonic(e));
                }
                let lead_is_one = coeffs[e][0] == 1 && coeffs[e][1..].iter().all(|&c| c == 0);
                if !lead_is_one {
                    return Err(ArithError::NotMonic(e));
                }
                let val = |c: &[i64]| {
                    c.iter()
                        .filter_map(|&k| int_valuation(&BigInt::from(k), p))
                        .min()
                };
                if val(&coeffs[0]) != Some(1) {
                    return Err(ArithError::NotEisenstein);
                }
                if coeffs[1..e].iter().any(|c| val(c).map_or(false, |v| v < 1)) {
                    return Err(ArithError::NotEisenstein);
                }
                Some(
                    coeffs
                        .iter()
                        .map(|c| c.iter().map(|&k| BigInt::from(k)).collect())
                        .collect(),
                )
            }
        };
        Ok(Arc::new(LocalField {
            p,
            f,
            u_poly: u_big,
            e,
            e_poly: e_big,
            precision,
            modulus: BigInt::from(p).pow(precision),
        }))
    }

    /// `Q_p` itself at precision `N`.
    pub fn qp(p: u64, precision: u32) -> Result<Arc<Self>, ArithError> {
        make_field(p, 1, &[0, 1], 1, None, precision)
    }

    /// The same tower at another precision.
    pub fn with_precision(&self, precision: u32) -> Arc<Self> {
        let mut k = self.clone();
        k.precision = precision;
        k.modulus = BigInt::from(self.p).pow(precision);
        Arc::new(k)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// `n = e * f`.
    pub fn degree(&self) -> usize {
        self.e * self.f
    }

    /// Residue field size `q_L = p^f`.
    pub fn residue_size(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn u_poly(&self) -> &[BigInt] {
        &self.u_poly
    }

    pub fn e_poly(&self) -> Option<&[Vec<BigInt>]> {
        self.e_poly.as_deref()
    }

    pub fn is_unramified(&self) -> bool {
        self.e == 1
    }

    pub fn spec(&self) -> FieldSpec {
        let to_i64 = |c: &BigInt| c.to_i64().expect("field polynomial coefficients fit in i64");
        FieldSpec {
            p: self.p,
            f: self.f,
            u_poly: self.u_poly.iter().map(to_i64).collect(),
            e: self.e,
            e_poly: self.e_poly.as_ref().map(|coeffs| {
                coeffs
                    .iter()
                    .map(|c| {
                        if c[1..].iter().all(|k| k.is_zero()) {
                            EisensteinCoeff::Int(to_i64(&c[0]))
                        } else {
                            EisensteinCoeff::Unramified(c.iter().map(to_i64).collect())
                        }
                    })
                    .collect()
            }),
            precision: self.precision,
        }
    }

    /// Short human label such as `Q_3` or `L(p=2,f=2,e=1)`.
    pub fn label(&self) -> String {
        if self.f == 1 && self.e == 1 {
            format!("Q_{}", self.p)
        } else {
            format!("L(p={},f={},e={})", self.p, self.f, self.e)
        }
    }
}

/// Product of two elements of `Z[x]/(u)` reduced modulo `m`.
pub fn u_mul_mod(a: &[BigInt], b: &[BigInt], u: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let f = u.len() - 1;
    let mut prod = vec![BigInt::zero(); 2 * f - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            prod[i + j] += ai * bj;
        }
    }
    for k in (f..2 * f - 1).rev() {
        let c = prod[k].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for t in 0..f {
            let s = &c * &u[t];
            prod[k - f + t] -= s;
        }
    }
    prod.truncate(f);
    prod.into_iter().map(|c| c.mod_floor(m)).collect()
}

fn poly_rem_mod_p(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    // b monic
    let mut r: Vec<i64> = a.iter().map(|c| c.rem_euclid(p)).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (t, bt) in b.iter().enumerate() {
                r[shift + t] = (r[shift + t] - lead * bt).rem_euclid(p);
            }
        }
        r.pop();
    }
    r
}

/// Irreducibility of a monic polynomial over `F_p` by exhaustive search for
/// monic factors of degree at most half the degree.
pub fn irreducible_mod_p(u: &[i64], p: u64) -> bool {
    let f = u.len() - 1;
    let p = p as i64;
    for d in 1..=f / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                g.push(k % p);
                k /= p;
            }
            g.push(1);
            if poly_rem_mod_p(u, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Hensel lift of the Frobenius: the image `s` of `x` with `u(s) = 0 mod p^N`
/// and `s = x^p mod p`.
pub fn frobenius_lift(field: &Arc<LocalField>) -> Result<ResidueElement, ArithError> {
    if !field.is_unramified() {
        return Err(ArithError::RamifiedUnsupported);
    }
    let x = ResidueElement::generator(field);
    let u = field.u_poly();
    let eval = |s: &ResidueElement, coeffs: &[BigInt]| {
        let mut acc = ResidueElement::zero(field);
        for c in coeffs.iter().rev() {
            acc = acc.mul(s).add(&ResidueElement::from_int(field, c));
        }
        acc
    };
    let du: Vec<BigInt> = u
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let mut s = x.pow(field.p());
    for _ in 0..=2 * field.precision() + 2 {
        let val = eval(&s, u);
        if val.is_zero() {
            return Ok(s);
        }
        let d = eval(&s, &du)
            .inverse()
            .expect("u is separable mod p, so u'(s) is a unit");
        s = s.sub(&val.mul(&d));
    }
    unreachable!("Newton iteration for the Frobenius lift converges")
}

/// Matrix of the Frobenius on the basis `1, x, ..., x^{f-1}` over `Z/p^N`;
/// column `i` holds the coordinates of `sigma(x^i)`.
pub fn frobenius_matrix(field: &Arc<LocalField>) -> Result<Vec<Vec<BigInt>>, ArithError> {
    let s = frobenius_lift(field)?;
    let f = field.f();
    let mut cols = Vec::with_capacity(f);
    let mut power = ResidueElement::one(field);
    for _ in 0..f {
        cols.push(power.coords().to_vec());
        power = power.mul(&s);
    }
    Ok((0..f).map(|r| (0..f).map(|c| cols[c][r].clone()).collect()).collect())
}

/// Applies the Frobenius lift `x -> s` to an element of an unramified field.
pub fn apply_frobenius(z: &ResidueElement, s: &ResidueElement) -> ResidueElement {
    let field = z.field();
    let mut acc = ResidueElement::zero(field);
    let mut power = ResidueElement::one(field);
    for c in z.coords() {
        acc = acc.add(&power.mul(&ResidueElement::from_int(field, c)));
        power = power.mul(s);
    }
    acc
}

/// `Tr_{L/Q_p}(z)` as the sum of the `f` Frobenius conjugates.
pub fn trace(z: &ResidueElement, s: &ResidueElement) -> BigInt {
    let mut acc = z.clone();
    let mut conj = z.clone();
    for _ in 1..z.field().f() {
        conj = apply_frobenius(&conj, s);
        acc = acc.add(&conj);
    }
    debug_assert!(acc.coords()[1..].iter().all(|c| c.is_zero()), "trace lies in Z_p");
    acc.coords()[0].clone()
}

/// Gram matrix of `(a, b) -> Tr(ab)` on the monomial basis, over `Z/p^nu`.
pub fn trace_pairing_matrix(field: &Arc<LocalField>, nu: u32) -> Result<ModMatrix, ArithError> {
    if !field.is_unramified() {
        return Err(ArithError::RamifiedUnsupported);
    }
    let work = field.with_precision(field.precision().max(nu));
    let s = frobenius_lift(&work)?;
    let n = work.degree();
    let modulus = field.p().checked_pow(nu).ok_or(ArithError::CapExceeded {
        size: u64::MAX,
        cap: u64::MAX,
    })?;
    let basis: Vec<ResidueElement> = (0..n)
        .map(|i| {
            let mut c = vec![0i64; n];
            c[i] = 1;
            ResidueElement::from_i64_coords(&work, &c)
        })
        .collect();
    let m = BigInt::from(modulus);
    let mut entries = Vec::with_capacity(n * n);
    for bi in &basis {
        for bj in &basis {
            let t = trace(&bi.mul(bj), &s).mod_floor(&m);
            entries.push(t.to_u64().unwrap());
        }
    }
    Ok(ModMatrix::from_entries(n, modulus, entries))
}

/// The full unit group of `o_L / p^r` with multiplication matrices.
#[derive(Clone, Debug)]
pub struct UnitGroupSample {
    pub field: Arc<LocalField>,
    pub level_r: u32,
    pub elements: Vec<ResidueElement>,
    /// Column `i` of `matrices[k]` holds the coordinates of `elements[k] * b_i`.
    pub matrices: Vec<ModMatrix>,
}

impl UnitGroupSample {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, z: &ResidueElement) -> Option<usize> {
        self.elements.iter().position(|u| u == z)
    }
}

/// Multiplication-by-`z` matrix over `Z/p^r` in the tower basis.
pub fn multiplication_matrix(z: &ResidueElement) -> ModMatrix {
    let field = z.field();
    let n = field.degree();
    let modulus = field.modulus().to_u64().expect("modulus fits in u64");
    let mut m = ModMatrix::zero(n, modulus);
    for i in 0..n {
        let mut c = vec![0i64; n];
        c[i] = 1;
        let col = z.mul(&ResidueElement::from_i64_coords(field, &c));
        for (row, v) in col.coords().iter().enumerate() {
            m.set(row, i, v.to_u64().unwrap());
        }
    }
    m
}

pub fn unit_group(field: &Arc<LocalField>, level_r: u32) -> Result<UnitGroupSample, ArithError> {
    unit_group_with_cap(field, level_r, DEFAULT_ENUMERATION_CAP)
}

pub fn unit_group_with_cap(
    field: &Arc<LocalField>,
    level_r: u32,
    cap: u64,
) -> Result<UnitGroupSample, ArithError> {
    if level_r == 0 {
        return Err(ArithError::ZeroPrecision);
    }
    let n = field.degree() as u32;
    let base = field.p().checked_pow(level_r);
    let size = base.and_then(|b| b.checked_pow(n));
    let size = match size {
        Some(s) if s <= cap => s,
        _ => {
            return Err(ArithError::CapExceeded {
                size: size.unwrap_or(u64::MAX),
                cap,
            })
        }
    };
    let base = base.unwrap();
    let k = field.with_precision(level_r);
    let mut elements = Vec::new();
    let mut matrices = Vec::new();
    for mut idx in 0..size {
        let coords: Vec<BigInt> = (0..n)
            .map(|_| {
                let c = idx % base;
                idx /= base;
                BigInt::from(c)
            })
            .collect();
        let z = ResidueElement::new(&k, coords);
        if z.is_unit() {
            matrices.push(multiplication_matrix(&z));
            elements.push(z);
        }
    }
    Ok(UnitGroupSample {
        field: k,
        level_r,
        elements,
        matrices,
    })
}

/// Reduces an arbitrary integer coordinate vector into `[0, m)`.
pub fn reduce_coords(coords: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    coords.iter().map(|c| c.mod_floor(m)).collect()
}

/// `true` when `z` is `1` in its ring.
pub fn is_one(z: &ResidueElement) -> bool {
    z.coords()[0].is_one() && z.coords()[1..].iter().all(|c| c.is_zero())
}
