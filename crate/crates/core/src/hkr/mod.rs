//! Conjugacy classes of continuous homomorphisms `o_L -> G` and their
//! decomposition into Galois orbits, modelled as commuting `n`-tuples of
//! p-power-order elements with `n = [L : Q_p]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::arith::field::{frobenius_matrix, unit_group_with_cap};
use crate::arith::matrix::ModMatrix;
use crate::arith::{ArithError, LocalField, UnitGroupSample, DEFAULT_ENUMERATION_CAP};
use crate::fgl::CheckReport;
use crate::groups::tuples::permute_classes;
use crate::groups::{commuting_tuples, tuple_classes, FiniteGroup, GroupError, TupleClassSet};

pub mod characters;

pub use characters::{character_pullback, enumerate_characters, equivariance_check, Character};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HkrError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("generator images do not define a character: {0}")]
    NotACharacter(String),
}

/// Budgets shared by every construction in this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub tuple_budget: u64,
    pub enumeration_cap: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            tuple_budget: crate::groups::DEFAULT_TUPLE_BUDGET,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// Least level `r >= 1` with `p^r` covering every p-element order of `G`.
pub fn default_level(field: &LocalField, g: &FiniteGroup) -> u32 {
    g.p_level(field.p()).max(1)
}

/// `Hom(o_L, G)/conj` as classes of commuting `n`-tuples
/// `(phi(b_1), ..., phi(b_n))` over the tower basis.
pub fn hom_classes(
    field: &LocalField,
    g: &Arc<FiniteGroup>,
    budgets: Budgets,
) -> Result<TupleClassSet, HkrError> {
    Ok(tuple_classes(g, field.degree(), field.p(), budgets.tuple_budget)?)
}

/// The class set together with the unit group of `o_L / p^r` acting on it.
#[derive(Clone, Debug)]
pub struct HomModel {
    pub field: Arc<LocalField>,
    pub classes: TupleClassSet,
    pub level_r: u32,
    pub units: UnitGroupSample,
}

impl HomModel {
    pub fn new(
        field: &Arc<LocalField>,
        g: &Arc<FiniteGroup>,
        level_r: Option<u32>,
        budgets: Budgets,
    ) -> Result<Self, HkrError> {
        let r = level_r.unwrap_or_else(|| default_level(field, g));
        let classes = hom_classes(field, g, budgets)?;
        let units = unit_group_with_cap(field, r, budgets.enumeration_cap)?;
        Ok(HomModel {
            field: Arc::clone(field),
            classes,
            level_r: r,
            units,
        })
    }

    /// Class permutation of `phi -> phi o (multiplication by alpha)`: with
    /// `alpha b_i = sum_j c_ji b_j`, the tuple `(g_i)` goes to
    /// `(prod_j g_j^{c_ji})`.
    pub fn unit_permutation(&self, k: usize) -> Result<Vec<usize>, HkrError> {
        let c = &self.units.matrices[k];
        Ok(permute_classes(&self.classes, |i, j| c.get(j, i))?)
    }

    /// Class permutation of `phi -> phi o sigma` for the Frobenius lift.
    pub fn frobenius_permutation(&self) -> Result<Vec<usize>, HkrError> {
        let f = frobenius_matrix(&self.units.field)?;
        let modulus = self.units.field.modulus().clone();
        let entry = |i: usize, j: usize| -> u64 {
            let v = f[j][i].mod_floor(&modulus);
            u64::try_from(v).expect("entries reduced below p^r")
        };
        Ok(permute_classes(&self.classes, entry)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Refinement {
    None,
    Frobenius,
}

/// One closed point: a Galois orbit of classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Point {
    /// Least representative tuple among the classes of the orbit.
    pub rep: Vec<usize>,
    /// Orbit size, the degree of the point over `L`.
    pub degree: usize,
    pub stabilizer_order: usize,
    #[serde(skip)]
    pub classes: Vec<usize>,
}

/// `C_L G` as a disjoint union of closed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleDecomposition {
    pub field: serde_json::Value,
    pub group: String,
    pub points: Vec<Point>,
    pub total_classes: usize,
    pub acting_group_order: usize,
    pub level_r: u32,
    pub refinement: Refinement,
}

impl EtaleDecomposition {
    pub fn degrees(&self) -> Vec<usize> {
        self.points.iter().map(|p| p.degree).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "field": self.field,
            "group": self.group,
            "points": self.points,
            "total_classes": self.total_classes,
            "acting_group_order": self.acting_group_order,
            "level_r": self.level_r,
            "refinement": self.refinement,
        })
    }
}

/// Orbits of the classes under the group generated by `perms`, sorted by
/// degree and then representative.
fn orbits(classes: &TupleClassSet, perms: &[Vec<usize>], acting: usize) -> Vec<Point> {
    let k = classes.len();
    let mut seen = vec![false; k];
    let mut points = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let c = orbit[i];
            for perm in perms {
                let d = perm[c];
                if !seen[d] {
                    seen[d] = true;
                    orbit.push(d);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        points.push(Point {
            rep: classes.classes[orbit[0]].rep.clone(),
            degree: orbit.len(),
            stabilizer_order: acting / orbit.len(),
            classes: orbit,
        });
    }
    points.sort_by(|a, b| (a.degree, &a.rep).cmp(&(b.degree, &b.rep)));
    points
}

fn decomposition(model: &HomModel, perms: &[Vec<usize>], acting: usize, refinement: Refinement) -> EtaleDecomposition {
    EtaleDecomposition {
        field: serde_json::to_value(model.field.spec()).expect("field spec serializes"),
        group: model.classes.group.name().to_string(),
        points: orbits(&model.classes, perms, acting),
        total_classes: model.classes.len(),
        acting_group_order: acting,
        level_r: model.level_r,
        refinement,
    }
}

/// Orbits of `(o_L / p^r)^x` acting by premultiplication.
pub fn unit_orbits(
    field: &Arc<LocalField>,
    g: &Arc<FiniteGroup>,
    level_r: Option<u32>,
    budgets: Budgets,
) -> Result<EtaleDecomposition, HkrError> {
    let model = HomModel::new(field, g, level_r, budgets)?;
    unit_orbits_of(&model)
}

pub fn unit_orbits_of(model: &HomModel) -> Result<EtaleDecomposition, HkrError> {
    let perms = (0..model.units.len())
        .map(|k| model.unit_permutation(k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(decomposition(model, &perms, model.units.len(), Refinement::None))
}

/// Orbits of the units together with the Frobenius lift (unramified `L`).
pub fn frobenius_orbits(
    field: &Arc<LocalField>,
    g: &Arc<FiniteGroup>,
    level_r: Option<u32>,
    budgets: Budgets,
) -> Result<EtaleDecomposition, HkrError> {
    if !field.is_unramified() {
        return Err(ArithError::RamifiedUnsupported.into());
    }
    let model = HomModel::new(field, g, level_r, budgets)?;
    let mut perms = (0..model.units.len())
        .map(|k| model.unit_permutation(k))
        .collect::<Result<Vec<_>, _>>()?;
    perms.push(model.frobenius_permutation()?);
    let acting = model.units.len() * field.f();
    Ok(decomposition(&model, &perms, acting, Refinement::Frobenius))
}

/// `|C_L G|`, which depends on `L` only through `(p, [L : Q_p])`.
pub fn rank(field: &LocalField, g: &Arc<FiniteGroup>, budgets: Budgets) -> Result<usize, HkrError> {
    Ok(hom_classes(field, g, budgets)?.len())
}

/// Compares the decomposition of `C_L(G0 x G1)` with the orbits of the
/// diagonal unit action on pairs of classes, as multisets of orbit sizes.
pub fn product_check(
    field: &Arc<LocalField>,
    g0: &Arc<FiniteGroup>,
    g1: &Arc<FiniteGroup>,
    budgets: Budgets,
) -> Result<(CheckReport, serde_json::Value), HkrError> {
    let product = Arc::new(FiniteGroup::direct_product(g0, g1));
    let r = default_level(field, &product);
    let whole = unit_orbits(field, &product, Some(r), budgets)?;
    let m0 = HomModel::new(field, g0, Some(r), budgets)?;
    let m1 = HomModel::new(field, g1, Some(r), budgets)?;
    let (k0, k1) = (m0.classes.len(), m1.classes.len());
    let mut perms = Vec::with_capacity(m0.units.len());
    for u in 0..m0.units.len() {
        let p0 = m0.unit_permutation(u)?;
        let p1 = m1.unit_permutation(u)?;
        perms.push((0..k0 * k1).map(|c| p0[c / k1] * k1 + p1[c % k1]).collect::<Vec<_>>());
    }
    let mut seen = vec![false; k0 * k1];
    let mut diagonal = Vec::new();
    for start in 0..k0 * k1 {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            for perm in &perms {
                let d = perm[orbit[i]];
                if !seen[d] {
                    seen[d] = true;
                    orbit.push(d);
                }
            }
            i += 1;
        }
        diagonal.push(orbit.len());
    }
    let multiset = |sizes: &[usize]| {
        let mut m = BTreeMap::new();
        for &s in sizes {
            *m.entry(s).or_insert(0usize) += 1;
        }
        m
    };
    let lhs = multiset(&whole.degrees());
    let rhs = multiset(&diagonal);
    let first_failure = lhs
        .keys()
        .chain(rhs.keys())
        .copied()
        .find(|s| lhs.get(s) != rhs.get(s));
    let detail = serde_json::json!({
        "product": product.name(),
        "product_degrees": lhs,
        "diagonal_degrees": rhs,
    });
    Ok((
        CheckReport::exact(
            format!("C_L({0} x {1}) matches C_L({0}) x C_L({1})", g0.name(), g1.name()),
            first_failure,
        ),
        detail,
    ))
}

/// Counts `Hom(o_L, Z/p^nu)` in the tuple model and compares with
/// `p^{nu n}`, the size of the `p^nu`-torsion of `L / o_L`.
pub fn cyclic_hom_count(
    field: &LocalField,
    nu: u32,
    budgets: Budgets,
) -> Result<(CheckReport, u64, u64), HkrError> {
    let p = field.p();
    let n = field.degree() as u32;
    let expected = p
        .checked_pow(nu * n)
        .filter(|&e| e <= budgets.tuple_budget)
        .ok_or(GroupError::BudgetExceeded { budget: budgets.tuple_budget })?;
    let g = FiniteGroup::cyclic(p.pow(nu) as usize);
    let found = commuting_tuples(&g, n as usize, p, budgets.tuple_budget)?.len() as u64;
    let report = CheckReport::exact(
        format!("|Hom(o_L, Z/{})| = p^(nu n)", p.pow(nu)),
        (found != expected).then_some(found as usize),
    );
    Ok((report, found, expected))
}

/// Multiplication matrices reduced to `Z/p^nu`.
pub(crate) fn reduce_matrix(m: &ModMatrix, modulus: u64) -> ModMatrix {
    let n = m.size();
    let entries = m.entries().iter().map(|&v| v % modulus).collect();
    ModMatrix::from_entries(n, modulus, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::make_field;
    use crate::groups::standard_corpus;

    fn b() -> Budgets {
        Budgets::default()
    }

    fn f4() -> Arc<LocalField> {
        make_field(2, 2, &[1, 1, 1], 1, None, 8).unwrap()
    }

    fn f9() -> Arc<LocalField> {
        make_field(3, 2, &[2, 2, 1], 1, None, 8).unwrap()
    }

    fn ram2() -> Arc<LocalField> {
        make_field(2, 1, &[0, 1], 2, Some(&[-2, 0, 1]), 8).unwrap()
    }

    fn cyc(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    #[test]
    fn class_counts() {
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let q3 = LocalField::qp(3, 8).unwrap();
        assert_eq!(hom_classes(&q3, &s3, b()).unwrap().len(), 2);
        assert_eq!(hom_classes(&f9(), &s3, b()).unwrap().len(), 5);
        assert_eq!(rank(&f4(), &Arc::new(FiniteGroup::trivial()), b()).unwrap(), 1);
    }

    #[test]
    fn unit_orbit_examples() {
        let q3 = LocalField::qp(3, 8).unwrap();
        let d = unit_orbits(&q3, &cyc(3), None, b()).unwrap();
        assert_eq!(d.degrees(), vec![1, 2]);
        assert_eq!(d.acting_group_order, 2);
        let q2 = LocalField::qp(2, 8).unwrap();
        let d = unit_orbits(&q2, &cyc(4), None, b()).unwrap();
        assert_eq!(d.degrees(), vec![1, 1, 2]);
        assert_eq!(d.points[1].rep, vec![2]);
        let d = unit_orbits(&f4(), &cyc(2), None, b()).unwrap();
        assert_eq!(d.degrees(), vec![1, 3]);
    }

    #[test]
    fn frobenius_refinement() {
        let q3 = LocalField::qp(3, 8).unwrap();
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        assert_eq!(
            frobenius_orbits(&q3, &s3, None, b()).unwrap().points,
            unit_orbits(&q3, &s3, None, b()).unwrap().points
        );
        assert_eq!(frobenius_orbits(&f4(), &cyc(2), None, b()).unwrap().degrees(), vec![1, 3]);
        let z3z3 = Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(3)));
        let units = unit_orbits(&f9(), &z3z3, None, b()).unwrap();
        let frob = frobenius_orbits(&f9(), &z3z3, None, b()).unwrap();
        assert!(frob.points.len() <= units.points.len());
        assert_eq!(frob.degrees().iter().sum::<usize>(), frob.total_classes);
        // every refined orbit is a union of unit orbits
        for point in &frob.points {
            for u in &units.points {
                let inside = u.classes.iter().filter(|c| point.classes.contains(c)).count();
                assert!(inside == 0 || inside == u.classes.len());
            }
        }
        assert!(matches!(
            frobenius_orbits(&ram2(), &cyc(2), None, b()),
            Err(HkrError::Arith(ArithError::RamifiedUnsupported))
        ));
    }

    #[test]
    fn decomposition_invariants_on_corpus() {
        let fields = [LocalField::qp(2, 8).unwrap(), LocalField::qp(3, 8).unwrap(), f4(), ram2()];
        for field in &fields {
            for g in standard_corpus() {
                let d = unit_orbits(field, &g, None, b()).unwrap();
                assert_eq!(d.degrees().iter().sum::<usize>(), d.total_classes);
                assert!(d.points.iter().all(|p| d.acting_group_order % p.degree == 0));
                let bumped = unit_orbits(field, &g, Some(d.level_r + 1), b()).unwrap();
                assert_eq!(bumped.degrees(), d.degrees(), "{} {}", field.label(), g.name());
            }
        }
    }

    #[test]
    fn rank_depends_only_on_degree() {
        for g in standard_corpus() {
            assert_eq!(rank(&f4(), &g, b()).unwrap(), rank(&ram2(), &g, b()).unwrap());
        }
    }

    #[test]
    fn rank_at_degree_one_counts_p_classes() {
        for g in standard_corpus() {
            for p in [2, 3] {
                let pe = g.p_elements(p);
                let expected = g
                    .conjugacy_classes()
                    .iter()
                    .filter(|c| pe.binary_search(&c[0]).is_ok())
                    .count();
                assert_eq!(rank(&LocalField::qp(p, 8).unwrap(), &g, b()).unwrap(), expected);
            }
        }
    }

    #[test]
    fn products_and_cyclic_counts() {
        let q3 = LocalField::qp(3, 8).unwrap();
        let q2 = LocalField::qp(2, 8).unwrap();
        let triv = Arc::new(FiniteGroup::trivial());
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        assert!(product_check(&q3, &cyc(3), &cyc(3), b()).unwrap().0.pass);
        assert!(product_check(&q2, &s3, &cyc(2), b()).unwrap().0.pass);
        assert!(product_check(&f4(), &s3, &triv, b()).unwrap().0.pass);
        let (rep, found, _) = cyclic_hom_count(&q3, 1, b()).unwrap();
        assert!(rep.pass && found == 3);
        assert_eq!(cyclic_hom_count(&f4(), 1, b()).unwrap().1, 4);
        assert_eq!(cyclic_hom_count(&ram2(), 1, b()).unwrap().1, 4);
        assert_eq!(cyclic_hom_count(&f9(), 3, b()).unwrap().1, 729);
    }
}
