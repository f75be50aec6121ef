use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ArithError, Coeff};

/// p-adic valuation of a nonzero integer. `None` for zero.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut cur = n.clone();
    loop {
        let (q, r) = cur.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        cur = q;
        v += 1;
    }
}

/// An exact rational number together with a distinguished prime `p` and its
/// `p`-adic valuation.
///
/// The fraction is always reduced with a positive denominator; the valuation
/// is recomputed whenever a new value is produced.
#[derive(Clone)]
pub struct LocalRational {
    value: BigRational,
    prime: u64,
    valuation: Option<i64>,
}

impl LocalRational {
    pub fn new(num: BigInt, den: BigInt, prime: u64) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::from_big_rational(BigRational::new(num, den), prime))
    }

    pub fn from_big_rational(value: BigRational, prime: u64) -> Self {
        let valuation = if value.is_zero() {
            None
        } else {
            let vn = int_valuation(value.numer(), prime).unwrap();
            let vd = int_valuation(value.denom(), prime).unwrap();
            Some(vn - vd)
        };
        LocalRational {
            value,
            prime,
            valuation,
        }
    }

    pub fn from_int(n: i64, prime: u64) -> Self {
        Self::from_big_rational(BigRational::from_integer(BigInt::from(n)), prime)
    }

    pub fn ratio(num: i64, den: i64, prime: u64) -> Self {
        Self::new(BigInt::from(num), BigInt::from(den), prime).expect("nonzero denominator")
    }

    pub fn zero(prime: u64) -> Self {
        Self::from_int(0, prime)
    }

    pub fn one(prime: u64) -> Self {
        Self::from_int(1, prime)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn numer(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.value.denom()
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    /// `v_p` of the value; `None` stands for +infinity (the value is zero).
    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn is_p_integral(&self) -> bool {
        self.valuation.map_or(true, |v| v >= 0)
    }

    /// Reduction of a `p`-integral value into `Z/p^k`.
    pub fn reduce_mod_prime_power(&self, k: u32) -> Option<BigInt> {
        if !self.is_p_integral() {
            return None;
        }
        let m = BigInt::from(self.prime).pow(k);
        let den_inv = mod_inverse(&self.denom().mod_floor(&m), &m)?;
        Some((self.numer().mod_floor(&m) * den_inv).mod_floor(&m))
    }

    pub fn pow(&self, e: i32) -> Self {
        let v = num_traits::Pow::pow(&self.value, e);
        Self::from_big_rational(v, self.prime)
    }

    fn check_prime(&self, other: &Self) {
        debug_assert_eq!(self.prime, other.prime, "mixed primes in LocalRational arithmetic");
    }
}

/// Inverse of `a` modulo `m` by extended Euclid.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

impl PartialEq for LocalRational {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime && self.value == other.value
    }
}

impl Eq for LocalRational {}

impl fmt::Debug for LocalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LocalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.denom().is_one() {
            write!(f, "{}", self.value.numer())
        } else {
            write!(f, "{}/{}", self.value.numer(), self.value.denom())
        }
    }
}

impl Coeff for LocalRational {
    fn mode_name(&self) -> &'static str {
        "rational"
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.prime)
    }

    fn from_int_like(&self, n: &BigInt) -> Self {
        Self::from_big_rational(BigRational::from_integer(n.clone()), self.prime)
    }

    fn add(&self, o: &Self) -> Self {
        self.check_prime(o);
        if o.value.is_zero() {
            return self.clone();
        }
        if self.value.is_zero() {
            return o.clone();
        }
        Self::from_big_rational(&self.value + &o.value, self.prime)
    }

    fn sub(&self, o: &Self) -> Self {
        self.check_prime(o);
        if o.value.is_zero() {
            return self.clone();
        }
        Self::from_big_rational(&self.value - &o.value, self.prime)
    }

    fn mul(&self, o: &Self) -> Self {
        self.check_prime(o);
        if self.value.is_zero() || o.value.is_zero() {
            return self.zero_like();
        }
        LocalRational {
            value: &self.value * &o.value,
            prime: self.prime,
            valuation: Some(self.valuation.unwrap() + o.valuation.unwrap()),
        }
    }

    fn neg(&self) -> Self {
        LocalRational {
            value: -self.value.clone(),
            prime: self.prime,
            valuation: self.valuation,
        }
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn inverse(&self) -> Option<Self> {
        if self.value.is_zero() {
            return None;
        }
        Some(LocalRational {
            value: self.value.recip(),
            prime: self.prime,
            valuation: self.valuation.map(|v| -v),
        })
    }

    fn is_integral(&self) -> bool {
        self.is_p_integral()
    }

    fn is_unit_mod_max(&self) -> bool {
        self.valuation == Some(0)
    }

    fn agrees_with(&self, other: &Self, _digits: Option<i64>) -> bool {
        self == other
    }

    fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "num": self.numer().to_string(),
            "den": self.denom().to_string(),
        })
    }
}

/// Sign-aware rendering used in text reports, e.g. `-1/8`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-{}/{}", r.numer().abs(), r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduced_and_valued() {
        let r = LocalRational::ratio(6, -8, 2);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(r.valuation(), Some(-2));
        assert!(!r.is_p_integral());
        assert_eq!(LocalRational::zero(5).valuation(), None);
        assert!(LocalRational::zero(5).is_p_integral());
    }

    #[test]
    fn reduction_mod_prime_power() {
        // 2/7 mod 8: 7^{-1} = 7, so 14 mod 8 = 6
        let r = LocalRational::ratio(2, 7, 2);
        assert_eq!(r.reduce_mod_prime_power(3), Some(BigInt::from(6)));
        assert_eq!(LocalRational::ratio(1, 2, 2).reduce_mod_prime_power(3), None);
    }

    #[test]
    fn mod_inverse_of_three_mod_32() {
        assert_eq!(
            mod_inverse(&BigInt::from(3), &BigInt::from(32)),
            Some(BigInt::from(11))
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn valuation_is_additive(a in -5000i64..5000, b in 1i64..5000, c in -5000i64..5000, d in 1i64..5000) {
            let x = LocalRational::ratio(a, b, 3);
            let y = LocalRational::ratio(c, d, 3);
            let xy = x.mul(&y);
            match (x.valuation(), y.valuation()) {
                (Some(u), Some(v)) => prop_assert_eq!(xy.valuation(), Some(u + v)),
                _ => prop_assert_eq!(xy.valuation(), None),
            }
            // the cached valuation agrees with a fresh computation on the reduced fraction
            let fresh = LocalRational::from_big_rational(xy.value().clone(), 3);
            prop_assert_eq!(fresh.valuation(), xy.valuation());
            let s = x.add(&y);
            prop_assert!(s.denom() > &BigInt::from(0));
            prop_assert!(num_integer::Integer::gcd(s.numer(), s.denom()).is_one() || s.is_zero());
        }
    }
}
