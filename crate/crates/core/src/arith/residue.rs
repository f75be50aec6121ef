use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{u_mul_mod, LocalField};
use super::rational::int_valuation;
use super::{ArithError, Coeff};

/// An element of `o_L / p^N`, stored by its coordinates in the tower basis
/// `x^i y^j` (`0 <= i < f`, `0 <= j < e`) at index `i + f*j`.
#[derive(Clone)]
pub struct ResidueElement {
    field: Arc<LocalField>,
    coords: Vec<BigInt>,
}

impl ResidueElement {
    pub fn new(field: &Arc<LocalField>, coords: Vec<BigInt>) -> Self {
        assert_eq!(coords.len(), field.degree(), "coordinate count must equal n");
        let m = field.modulus();
        let coords = coords.into_iter().map(|c| c.mod_floor(m)).collect();
        ResidueElement {
            field: Arc::clone(field),
            coords,
        }
    }

    pub fn from_i64_coords(field: &Arc<LocalField>, coords: &[i64]) -> Self {
        Self::new(field, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_int(field: &Arc<LocalField>, k: &BigInt) -> Self {
        let mut coords = vec![BigInt::zero(); field.degree()];
        coords[0] = k.clone();
        Self::new(field, coords)
    }

    pub fn zero(field: &Arc<LocalField>) -> Self {
        Self::from_int(field, &BigInt::zero())
    }

    pub fn one(field: &Arc<LocalField>) -> Self {
        Self::from_int(field, &BigInt::one())
    }

    /// The image of the unramified generator `x`.
    pub fn generator(field: &Arc<LocalField>) -> Self {
        if field.f() == 1 {
            // u = x + u0, so x = -u0
            return Self::from_int(field, &(-&field.u_poly()[0]));
        }
        let mut coords = vec![BigInt::zero(); field.degree()];
        coords[1] = BigInt::one();
        Self::new(field, coords)
    }

    /// The uniformizer: `p` when `e = 1`, else the Eisenstein root `y`.
    pub fn uniformizer(field: &Arc<LocalField>) -> Self {
        if field.e() == 1 {
            return Self::from_int(field, &BigInt::from(field.p()));
        }
        let mut coords = vec![BigInt::zero(); field.degree()];
        coords[field.f()] = BigInt::one();
        Self::new(field, coords)
    }

    /// Embeds an element of the unramified step (`f` coordinates).
    pub fn from_unramified(field: &Arc<LocalField>, u: &[BigInt]) -> Self {
        let mut coords = vec![BigInt::zero(); field.degree()];
        coords[..u.len()].clone_from_slice(u);
        Self::new(field, coords)
    }

    pub fn field(&self) -> &Arc<LocalField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    fn block(&self, j: usize) -> &[BigInt] {
        let f = self.field.f();
        &self.coords[j * f..(j + 1) * f]
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        debug_assert!(self.same_field(other), "mixed fields in residue arithmetic");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| op(a, b))
            .collect();
        Self::new(&self.field, coords)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.coords.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.same_field(other), "mixed fields in residue arithmetic");
        let field = &self.field;
        let (f, e) = (field.f(), field.e());
        let m = field.modulus();
        let u = field.u_poly();
        if e == 1 {
            return Self::new(field, u_mul_mod(&self.coords, &other.coords, u, m));
        }
        let mut prod: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); f]; 2 * e - 1];
        for j1 in 0..e {
            let a = self.block(j1);
            if a.iter().all(|c| c.is_zero()) {
                continue;
            }
            for j2 in 0..e {
                let b = other.block(j2);
                let ab = u_mul_mod(a, b, u, m);
                for (acc, t) in prod[j1 + j2].iter_mut().zip(ab) {
                    *acc += t;
                }
            }
        }
        let eis = field.e_poly().expect("ramified field carries an Eisenstein polynomial");
        for k in (e..2 * e - 1).rev() {
            let c: Vec<BigInt> = prod[k].iter().map(|t| t.mod_floor(m)).collect();
            if c.iter().all(|t| t.is_zero()) {
                continue;
            }
            for (t, coeff) in eis.iter().enumerate().take(e) {
                let sub = u_mul_mod(&c, coeff, u, m);
                for (acc, s) in prod[k - e + t].iter_mut().zip(sub) {
                    *acc -= s;
                }
            }
        }
        let coords = prod.into_iter().take(e).flatten().collect();
        Self::new(field, coords)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Image in the residue field `F_q`, as `f` coordinates mod `p`.
    pub fn residue_image(&self) -> Vec<BigInt> {
        let p = BigInt::from(self.field.p());
        self.block(0).iter().map(|c| c.mod_floor(&p)).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.residue_image().iter().any(|c| !c.is_zero())
    }

    /// Valuation with respect to the uniformizer; `None` when the stored
    /// representative is zero.
    pub fn pi_valuation(&self) -> Option<i64> {
        let e = self.field.e();
        (0..e)
            .filter_map(|j| {
                self.block(j)
                    .iter()
                    .filter_map(|c| int_valuation(c, self.field.p()))
                    .min()
                    .map(|v| v * e as i64 + j as i64)
            })
            .min()
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if !self.is_unit() {
            return Err(ArithError::NotAUnit);
        }
        let field = &self.field;
        let p = BigInt::from(field.p());
        // inverse in F_q by a^(q-2), then Newton lifting b <- b(2 - ab)
        let q = field.p().pow(field.f() as u32);
        let r = self.residue_image();
        let mut acc = {
            let mut one = vec![BigInt::zero(); field.f()];
            one[0] = BigInt::one();
            one
        };
        let mut base = r;
        let mut k = q - 2;
        while k > 0 {
            if k & 1 == 1 {
                acc = u_mul_mod(&acc, &base, field.u_poly(), &p);
            }
            base = u_mul_mod(&base, &base, field.u_poly(), &p);
            k >>= 1;
        }
        let mut b = Self::from_unramified(field, &acc);
        let one = Self::one(field);
        let two = Self::from_int(field, &BigInt::from(2));
        for _ in 0..128 {
            let ab = self.mul(&b);
            if ab == one {
                return Ok(b);
            }
            b = b.mul(&two.sub(&ab));
        }
        unreachable!("Newton inversion converges quadratically")
    }

    /// Exact division by the uniformizer, when the element is divisible.
    ///
    /// The quotient is determined modulo one fewer uniformizer digit than the
    /// input; the stored representative takes integer quotients.
    pub fn div_uniformizer(&self) -> Option<Self> {
        let field = &self.field;
        let p = BigInt::from(field.p());
        let (f, e) = (field.f(), field.e());
        let divisible = |c: &BigInt| c.mod_floor(&p).is_zero();
        if e == 1 {
            if !self.coords.iter().all(divisible) {
                return None;
            }
            let coords = self.coords.iter().map(|c| c.div_floor(&p)).collect();
            return Some(Self::new(field, coords));
        }
        if !self.block(0).iter().all(divisible) {
            return None;
        }
        // shift the y^j (j >= 1) part down one step
        let mut shifted = vec![BigInt::zero(); field.degree()];
        shifted[..(e - 1) * f].clone_from_slice(&self.coords[f..]);
        let mut result = Self::new(field, shifted);
        // z0 / y = -(z0/a0) * (y^{e-1} + a_{e-1} y^{e-2} + ... + a_1)
        let eis = field.e_poly().unwrap();
        let w: Vec<BigInt> = self.block(0).iter().map(|c| c.div_floor(&p)).collect();
        let eps: Vec<BigInt> = eis[0].iter().map(|c| c.div_floor(&p)).collect();
        let eps_inv = Self::from_unramified(field, &eps)
            .inverse()
            .expect("Eisenstein constant term divided by p is a unit");
        let mut tail = vec![BigInt::zero(); field.degree()];
        for j in 0..e {
            // coefficient of y^j in the tail is a_{j+1} (with a_e = 1)
            tail[j * f..(j + 1) * f].clone_from_slice(&eis[j + 1]);
        }
        let tail = Self::new(field, tail);
        let z0_over_y = Self::from_unramified(field, &w).mul(&eps_inv).mul(&tail).neg();
        result = result.add(&z0_over_y);
        Some(result)
    }

    /// Reinterprets the coordinates at another precision of the same tower.
    pub fn with_field(&self, field: &Arc<LocalField>) -> Self {
        Self::new(field, self.coords.clone())
    }
}

impl PartialEq for ResidueElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coords == other.coords
    }
}

impl Eq for ResidueElement {}

impl fmt::Debug for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Coeff for ResidueElement {
    fn mode_name(&self) -> &'static str {
        "residue"
    }

    fn zero_like(&self) -> Self {
        Self::zero(&self.field)
    }

    fn from_int_like(&self, n: &BigInt) -> Self {
        Self::from_int(&self.field, n)
    }

    fn add(&self, o: &Self) -> Self {
        ResidueElement::add(self, o)
    }

    fn sub(&self, o: &Self) -> Self {
        ResidueElement::sub(self, o)
    }

    fn mul(&self, o: &Self) -> Self {
        ResidueElement::mul(self, o)
    }

    fn neg(&self) -> Self {
        ResidueElement::neg(self)
    }

    fn is_zero(&self) -> bool {
        ResidueElement::is_zero(self)
    }

    fn inverse(&self) -> Option<Self> {
        ResidueElement::inverse(self).ok()
    }

    fn is_integral(&self) -> bool {
        true
    }

    fn is_unit_mod_max(&self) -> bool {
        self.is_unit()
    }

    fn agrees_with(&self, other: &Self, digits: Option<i64>) -> bool {
        match digits {
            None => self == other,
            Some(d) => self.sub(other).pi_valuation().map_or(true, |v| v >= d),
        }
    }

    fn json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coords
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::make_field;

    fn q2(n: u32) -> Arc<LocalField> {
        make_field(2, 1, &[0, 1], 1, None, n).unwrap()
    }

    fn q4(n: u32) -> Arc<LocalField> {
        make_field(2, 2, &[1, 1, 1], 1, None, n).unwrap()
    }

    fn ram2(n: u32) -> Arc<LocalField> {
        make_field(2, 1, &[0, 1], 2, Some(&[-2, 0, 1]), n).unwrap()
    }

    #[test]
    fn invert_three_mod_32() {
        let k = q2(5);
        let three = ResidueElement::from_i64_coords(&k, &[3]);
        assert_eq!(three.inverse().unwrap().coords()[0], BigInt::from(11));
    }

    #[test]
    fn invert_generator_of_unramified_quadratic() {
        let k = q4(8);
        let x = ResidueElement::generator(&k);
        let expected = ResidueElement::from_i64_coords(&k, &[-1, -1]);
        assert_eq!(x.inverse().unwrap(), expected);
    }

    #[test]
    fn invert_non_units_fails() {
        let k = q2(5);
        let two = ResidueElement::from_i64_coords(&k, &[2]);
        assert_eq!(two.inverse(), Err(ArithError::NotAUnit));
        let r = ram2(6);
        assert_eq!(ResidueElement::uniformizer(&r).inverse(), Err(ArithError::NotAUnit));
    }

    #[test]
    fn uniformizer_squares_to_two_in_ramified_quadratic() {
        let r = ram2(6);
        let y = ResidueElement::uniformizer(&r);
        assert_eq!(y.mul(&y), ResidueElement::from_int(&r, &BigInt::from(2)));
        assert_eq!(y.pi_valuation(), Some(1));
        assert_eq!(y.mul(&y).mul(&y).pi_valuation(), Some(3));
    }

    #[test]
    fn division_by_uniformizer_undoes_multiplication() {
        for k in [q4(8), ram2(8)] {
            let pi = ResidueElement::uniformizer(&k);
            let coords: Vec<i64> = (0..k.degree() as i64).map(|i| 3 * i + 5).collect();
            let z = ResidueElement::from_i64_coords(&k, &coords);
            let back = z.mul(&pi).div_uniformizer().unwrap();
            // agreement modulo one fewer digit than the working precision
            let digits = k.e() as i64 * k.precision() as i64 - 1;
            assert!(back.agrees_with(&z, Some(digits)));
        }
        let r = ram2(8);
        assert!(ResidueElement::one(&r).div_uniformizer().is_none());
    }

    #[test]
    fn exhaustive_ring_axioms_mod_p() {
        for k in [q4(1), ram2(1), make_field(3, 2, &[1, 0, 1], 1, None, 1).unwrap()] {
            let p = k.p() as i64;
            let n = k.degree();
            let all: Vec<ResidueElement> = (0..p.pow(n as u32))
                .map(|mut idx| {
                    let coords: Vec<i64> = (0..n)
                        .map(|_| {
                            let c = idx % p;
                            idx /= p;
                            c
                        })
                        .collect();
                    ResidueElement::from_i64_coords(&k, &coords)
                })
                .collect();
            for a in &all {
                for b in &all {
                    assert_eq!(a.mul(b), b.mul(a));
                    assert_eq!(a.add(b), b.add(a));
                    for c in &all {
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                    }
                }
            }
        }
    }

    #[test]
    fn random_triples_at_higher_precision() {
        // deterministic pseudo-random coordinates
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 1_000_003) as i64
        };
        let fields = [
            q4(12),
            ram2(12),
            make_field(3, 2, &[1, 0, 1], 2, Some(&[3, 0, 1]), 10).unwrap(),
        ];
        for k in fields {
            for _ in 0..50 {
                let mut el = || {
                    let c: Vec<i64> = (0..k.degree()).map(|_| next()).collect();
                    ResidueElement::from_i64_coords(&k, &c)
                };
                let (a, b, c) = (el(), el(), el());
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                if a.is_unit() {
                    assert!(a.mul(&a.inverse().unwrap()).is_one());
                }
            }
        }
    }
}
