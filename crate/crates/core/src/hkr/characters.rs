use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{default_level, reduce_matrix, HkrError};
use crate::arith::field::{trace_pairing_matrix, unit_group_with_cap};
use crate::arith::{ArithError, LocalField};
use crate::fgl::CheckReport;
use crate::groups::tuples::apply_exponents;
use crate::groups::{abelianization, FiniteGroup, GroupError, TupleClassSet};

/// A value in `Q/Z`, kept in `[0, 1)`.
pub type QmodZ = Ratio<i64>;

fn reduce(r: QmodZ) -> QmodZ {
    r - r.floor()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FractionJson {
    pub num: i64,
    pub den: i64,
}

/// A homomorphism `G -> Q/Z` given by its values on the group's generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub images: Vec<QmodZ>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharacterJson {
    generator_images: Vec<FractionJson>,
}

impl Character {
    pub fn new(images: &[(i64, i64)]) -> Result<Self, HkrError> {
        images
            .iter()
            .map(|&(n, d)| {
                if d == 0 {
                    Err(HkrError::NotACharacter("zero denominator".into()))
                } else {
                    Ok(reduce(Ratio::new(n, d)))
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|images| Character { images })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, HkrError> {
        let parsed: CharacterJson = serde_json::from_value(value.clone())
            .map_err(|e| HkrError::NotACharacter(e.to_string()))?;
        let pairs: Vec<(i64, i64)> = parsed.generator_images.iter().map(|f| (f.num, f.den)).collect();
        Self::new(&pairs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let images: Vec<FractionJson> = self
            .images
            .iter()
            .map(|r| FractionJson { num: *r.numer(), den: *r.denom() })
            .collect();
        serde_json::to_value(CharacterJson { generator_images: images }).expect("fractions serialize")
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Character {
            images: vec![Ratio::from_integer(0); g.generators().len()],
        }
    }

    /// Pointwise sum in `Q/Z`.
    pub fn add(&self, other: &Self) -> Self {
        Character {
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| reduce(a + b))
                .collect(),
        }
    }

    /// Values on every element, extending along the Cayley graph of the
    /// generators and checking every edge.
    pub fn values(&self, g: &FiniteGroup) -> Result<Vec<QmodZ>, HkrError> {
        let gens = g.generators();
        if gens.len() != self.images.len() {
            return Err(HkrError::NotACharacter(format!(
                "{} images for {} generators",
                self.images.len(),
                gens.len()
            )));
        }
        let mut value: Vec<Option<QmodZ>> = vec![None; g.order()];
        value[0] = Some(Ratio::from_integer(0));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let vx = value[x].unwrap();
            for (&s, &ls) in gens.iter().zip(&self.images) {
                let y = g.mul(x, s);
                let vy = reduce(vx + ls);
                match value[y] {
                    None => {
                        value[y] = Some(vy);
                        queue.push_back(y);
                    }
                    Some(v) if v != vy => {
                        return Err(HkrError::NotACharacter(format!(
                            "inconsistent value at element {y}"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        value
            .into_iter()
            .map(|v| v.ok_or_else(|| HkrError::NotACharacter("generators do not span the group".into())))
            .collect()
    }
}

fn is_power_of(mut k: i64, p: i64) -> bool {
    while k % p == 0 {
        k /= p;
    }
    k == 1
}

/// The section `[(g_1, ..., g_n)] -> (lambda(g_1), ..., lambda(g_n))` on
/// every class, checked to be constant on classes and p-power torsion.
pub fn character_pullback(lambda: &Character, s: &TupleClassSet) -> Result<Vec<Vec<QmodZ>>, HkrError> {
    let g = &s.group;
    let values = lambda.values(g)?;
    let p = s.p as i64;
    let eval = |t: &[usize]| t.iter().map(|&x| values[x]).collect::<Vec<_>>();
    let table: Vec<Vec<QmodZ>> = s.classes.iter().map(|c| eval(&c.rep)).collect();
    for t in s.tuples() {
        let c = s.class_of(t).expect("tuple belongs to the class set");
        let v = eval(t);
        if v != table[c] {
            return Err(HkrError::NotACharacter(format!("not constant on class {c}")));
        }
        if v.iter().any(|r| !is_power_of(*r.denom(), p)) {
            return Err(HkrError::NotACharacter("values on p-elements are not p-power torsion".into()));
        }
    }
    Ok(table)
}

/// Checks `f(alpha . phi) = alpha f(phi)` for the section of `lambda`, with
/// `(Q_p/Z_p)^n` identified with the `p^nu`-torsion of `L/o_L` through the
/// inverse of the trace pairing.
pub fn equivariance_check(
    field: &std::sync::Arc<LocalField>,
    lambda: &Character,
    s: &TupleClassSet,
    enumeration_cap: u64,
) -> Result<CheckReport, HkrError> {
    if !field.is_unramified() {
        return Err(ArithError::RamifiedUnsupported.into());
    }
    let g = &s.group;
    let section = character_pullback(lambda, s)?;
    let values = lambda.values(g)?;
    let p = field.p();
    let nu = section
        .iter()
        .flatten()
        .map(|r| {
            let mut d = *r.denom();
            let mut k = 0u32;
            while d % p as i64 == 0 {
                d /= p as i64;
                k += 1;
            }
            k
        })
        .max()
        .unwrap_or(0);
    let check = format!("f(alpha . phi) = alpha f(phi) for lambda = {:?}", lambda.images);
    if nu == 0 {
        return Ok(CheckReport::exact(check, None));
    }
    let modulus = p.pow(nu);
    let t_inv = trace_pairing_matrix(field, nu)?
        .inverse()
        .ok_or(GroupError::MatrixNotInvertible { modulus })?;
    let level = default_level(field, g).max(nu);
    let units = unit_group_with_cap(field, level, enumeration_cap)?;
    // (lambda(g_i)) as integers mod p^nu
    let scaled = |t: &[usize]| -> Vec<u64> {
        t.iter()
            .map(|&x| {
                let v = values[x] * Ratio::from_integer(modulus as i64);
                debug_assert!(v.is_integer());
                v.to_integer().mod_floor(&(modulus as i64)) as u64
            })
            .collect()
    };
    for (c, class) in s.classes.iter().enumerate() {
        let z = t_inv.mul_vec(&scaled(&class.rep));
        for m in &units.matrices {
            let image = apply_exponents(g, &class.rep, |i, j| m.get(j, i));
            let z_image = t_inv.mul_vec(&scaled(&image));
            if z_image != reduce_matrix(m, modulus).mul_vec(&z) {
                return Ok(CheckReport::exact(check, Some(c)));
            }
        }
    }
    Ok(CheckReport::exact(check, None))
}

/// Every character of `G`, found by trying generator images in
/// `(1/e)Z/Z` for the exponent `e` of the abelianization (order at most 64).
pub fn enumerate_characters(g: &FiniteGroup) -> Result<Vec<Character>, HkrError> {
    let ab = abelianization(g);
    if ab.quotient.order() > 64 {
        return Err(GroupError::Invalid("abelianization larger than 64".into()).into());
    }
    let e = ab.quotient.exponent() as i64;
    let k = g.generators().len() as u32;
    let total = (e as u64).checked_pow(k).filter(|&t| t <= 1_000_000).ok_or_else(|| {
        HkrError::Group(GroupError::BudgetExceeded { budget: 1_000_000 })
    })?;
    let mut out = Vec::new();
    for mut idx in 0..total {
        let images: Vec<QmodZ> = (0..k)
            .map(|_| {
                let r = Ratio::new((idx % e as u64) as i64, e);
                idx /= e as u64;
                r
            })
            .collect();
        let lambda = Character { images };
        if lambda.values(g).is_ok() {
            out.push(lambda);
        }
    }
    debug_assert_eq!(out.len(), ab.quotient.order());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::make_field;
    use crate::groups::{standard_corpus, tuple_classes, DEFAULT_TUPLE_BUDGET};
    use crate::hkr::hom_classes;
    use crate::hkr::Budgets;
    use std::sync::Arc;

    #[test]
    fn direct_evaluation() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let s = tuple_classes(&z3, 1, 3, DEFAULT_TUPLE_BUDGET).unwrap();
        let lambda = Character::new(&[(1, 3)]).unwrap();
        let table = character_pullback(&lambda, &s).unwrap();
        assert_eq!(table[1], vec![Ratio::new(1, 3)]);
        let zero = character_pullback(&Character::trivial(&z3), &s).unwrap();
        assert!(zero.iter().flatten().all(|r| *r == Ratio::from_integer(0)));
    }

    #[test]
    fn sign_character() {
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let q2 = LocalField::qp(2, 8).unwrap();
        let s = hom_classes(&q2, &s3, Budgets::default()).unwrap();
        // generators: a transposition and a 3-cycle
        let sign = Character::new(&[(1, 2), (0, 1)]).unwrap();
        let table = character_pullback(&sign, &s).unwrap();
        assert_eq!(table, vec![vec![Ratio::from_integer(0)], vec![Ratio::new(1, 2)]]);
        let bogus = Character::new(&[(1, 3), (0, 1)]).unwrap();
        assert!(matches!(character_pullback(&bogus, &s), Err(HkrError::NotACharacter(_))));
        let json = sign.to_json();
        assert_eq!(json, serde_json::json!({"generator_images": [{"num":1,"den":2},{"num":0,"den":1}]}));
        assert_eq!(Character::from_json(&json).unwrap(), sign);
    }

    #[test]
    fn pullback_is_additive() {
        for g in [FiniteGroup::quaternion(), FiniteGroup::symmetric(3)] {
            let g = Arc::new(g);
            let chars = enumerate_characters(&g).unwrap();
            assert_eq!(chars.len(), abelianization(&g).quotient.order());
            for n in 1..=2 {
                let s = tuple_classes(&g, n, 2, DEFAULT_TUPLE_BUDGET).unwrap();
                for a in &chars {
                    for b in &chars {
                        let ta = character_pullback(a, &s).unwrap();
                        let tb = character_pullback(b, &s).unwrap();
                        let tab = character_pullback(&a.add(b), &s).unwrap();
                        for c in 0..s.len() {
                            let sum: Vec<QmodZ> =
                                ta[c].iter().zip(&tb[c]).map(|(x, y)| reduce(x + y)).collect();
                            assert_eq!(tab[c], sum);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn equivariance_on_corpus() {
        let fields = [
            LocalField::qp(2, 8).unwrap(),
            LocalField::qp(3, 8).unwrap(),
            make_field(2, 2, &[1, 1, 1], 1, None, 8).unwrap(),
        ];
        for field in &fields {
            for g in standard_corpus() {
                let s = hom_classes(field, &g, Budgets::default()).unwrap();
                for lambda in enumerate_characters(&g).unwrap() {
                    let rep = equivariance_check(field, &lambda, &s, 1_000_000).unwrap();
                    assert!(rep.pass, "{} {} {:?}", field.label(), g.name(), lambda);
                }
            }
        }
        let ram = make_field(2, 1, &[0, 1], 2, Some(&[-2, 0, 1]), 8).unwrap();
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let s = hom_classes(&ram, &z2, Budgets::default()).unwrap();
        let lambda = Character::new(&[(1, 2)]).unwrap();
        assert!(matches!(
            equivariance_check(&ram, &lambda, &s, 1_000_000),
            Err(HkrError::Arith(ArithError::RamifiedUnsupported))
        ));
    }

    #[test]
    fn a_wrong_identification_is_detected() {
        // over F_9 = F_3[x]/(x^2 + 1) multiplication by x is not symmetric in
        // the basis {1, x}, so reading values as coordinates directly breaks
        // equivariance while the trace identification keeps it
        let field = make_field(3, 2, &[1, 0, 1], 1, None, 8).unwrap();
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let s = hom_classes(&field, &z3, Budgets::default()).unwrap();
        let lambda = Character::new(&[(1, 3)]).unwrap();
        assert!(equivariance_check(&field, &lambda, &s, 1_000_000).unwrap().pass);
        let units = unit_group_with_cap(&field, 1, 1000).unwrap();
        let values = lambda.values(&z3).unwrap();
        let scaled = |t: &[usize]| -> Vec<u64> { t.iter().map(|&x| (values[x] * 3).to_integer() as u64).collect() };
        let mut broken = false;
        for class in &s.classes {
            for m in &units.matrices {
                let image = apply_exponents(&z3, &class.rep, |i, j| m.get(j, i));
                broken |= scaled(&image) != reduce_matrix(m, 3).mul_vec(&scaled(&class.rep));
            }
        }
        assert!(broken);
    }
}
