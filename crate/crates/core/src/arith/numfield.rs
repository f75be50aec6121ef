use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::LocalField;
use super::rational::{format_rational, int_valuation, LocalRational};
use super::Coeff;

/// `Q[x]/(u)` together with the prime `p` used for integrality statements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfContext {
    p: u64,
    u_poly: Vec<BigInt>,
}

impl NfContext {
    /// Context of the unramified step of `field`.
    pub fn from_field(field: &LocalField) -> Arc<Self> {
        Arc::new(NfContext {
            p: field.p(),
            u_poly: field.u_poly().to_vec(),
        })
    }

    pub fn degree(&self) -> usize {
        self.u_poly.len() - 1
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

/// An element of `Q[x]/(u)`, a dense subring of the unramified field when
/// restricted to `p`-integral coordinates.
#[derive(Clone)]
pub struct NumberFieldElement {
    ctx: Arc<NfContext>,
    coords: Vec<BigRational>,
}

impl NumberFieldElement {
    pub fn new(ctx: &Arc<NfContext>, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), ctx.degree());
        NumberFieldElement {
            ctx: Arc::clone(ctx),
            coords,
        }
    }

    pub fn from_rational(ctx: &Arc<NfContext>, r: &BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); ctx.degree()];
        coords[0] = r.clone();
        Self::new(ctx, coords)
    }

    pub fn from_local(ctx: &Arc<NfContext>, r: &LocalRational) -> Self {
        Self::from_rational(ctx, r.value())
    }

    pub fn from_ints(ctx: &Arc<NfContext>, coords: &[i64]) -> Self {
        Self::new(
            ctx,
            coords
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// The generator `x`.
    pub fn generator(ctx: &Arc<NfContext>) -> Self {
        if ctx.degree() == 1 {
            let r = BigRational::from_integer(-ctx.u_poly[0].clone());
            return Self::from_rational(ctx, &r);
        }
        let mut c = vec![0; ctx.degree()];
        c[1] = 1;
        Self::from_ints(ctx, &c)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn context(&self) -> &Arc<NfContext> {
        &self.ctx
    }

    fn valuation(&self) -> Option<i64> {
        self.coords
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| {
                int_valuation(c.numer(), self.ctx.p).unwrap()
                    - int_valuation(c.denom(), self.ctx.p).unwrap()
            })
            .min()
    }

    fn mul_matrix(&self) -> Vec<Vec<BigRational>> {
        // column i = coordinates of self * x^i
        let f = self.ctx.degree();
        let mut cols = Vec::with_capacity(f);
        let mut cur = self.clone();
        let x = Self::generator(&self.ctx);
        for _ in 0..f {
            cols.push(cur.coords.clone());
            cur = Coeff::mul(&cur, &x);
        }
        cols
    }
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx) && self.coords == other.coords
    }
}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}*x", format_rational(c)),
                _ => format!("{}*x^{}", format_rational(c), i),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Coeff for NumberFieldElement {
    fn mode_name(&self) -> &'static str {
        "number_field"
    }

    fn zero_like(&self) -> Self {
        Self::new(&self.ctx, vec![BigRational::zero(); self.ctx.degree()])
    }

    fn from_int_like(&self, n: &BigInt) -> Self {
        Self::from_rational(&self.ctx, &BigRational::from_integer(n.clone()))
    }

    fn add(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        Self::new(&self.ctx, coords)
    }

    fn sub(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        Self::new(&self.ctx, coords)
    }

    fn mul(&self, o: &Self) -> Self {
        let f = self.ctx.degree();
        if self.is_zero() || o.is_zero() {
            return self.zero_like();
        }
        let mut prod = vec![BigRational::zero(); 2 * f - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let u = &self.ctx.u_poly;
        for k in (f..2 * f - 1).rev() {
            let c = std::mem::replace(&mut prod[k], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for t in 0..f {
                prod[k - f + t] -= &c * BigRational::from_integer(u[t].clone());
            }
        }
        prod.truncate(f);
        Self::new(&self.ctx, prod)
    }

    fn neg(&self) -> Self {
        Self::new(&self.ctx, self.coords.iter().map(|c| -c).collect())
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // solve M * z = e_0 with M the multiplication matrix
        let f = self.ctx.degree();
        let cols = self.mul_matrix();
        let mut a: Vec<Vec<BigRational>> = (0..f)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..f).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..f {
            let piv = (col..f).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for v in a[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..f {
                if r != col && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    for (v, pv) in a[r].iter_mut().zip(pivot_row) {
                        *v -= &factor * pv;
                    }
                }
            }
        }
        Some(Self::new(&self.ctx, a.into_iter().map(|row| row[f].clone()).collect()))
    }

    fn is_integral(&self) -> bool {
        self.valuation().map_or(true, |v| v >= 0)
    }

    fn is_unit_mod_max(&self) -> bool {
        self.valuation() == Some(0)
    }

    fn agrees_with(&self, other: &Self, _digits: Option<i64>) -> bool {
        self == other
    }

    fn json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coords
                .iter()
                .map(|c| {
                    serde_json::json!({"num": c.numer().to_string(), "den": c.denom().to_string()})
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::make_field;

    #[test]
    fn generator_inverse_in_quadratic_field() {
        let k = make_field(2, 2, &[1, 1, 1], 1, None, 4).unwrap();
        let ctx = NfContext::from_field(&k);
        let x = NumberFieldElement::generator(&ctx);
        assert_eq!(x.inverse().unwrap(), NumberFieldElement::from_ints(&ctx, &[-1, -1]));
        assert!(x.is_unit_mod_max());
        let half = NumberFieldElement::from_rational(
            &ctx,
            &BigRational::new(BigInt::from(1), BigInt::from(2)),
        );
        assert!(!half.is_integral());
        let two_x = Coeff::mul(&x, &NumberFieldElement::from_ints(&ctx, &[2, 0]));
        assert!(two_x.is_integral() && !two_x.is_unit_mod_max());
        let y = NumberFieldElement::from_ints(&ctx, &[3, -5]);
        assert!(Coeff::mul(&y, &y.inverse().unwrap()).is_one());
    }
}
