use super::FiniteGroup;

/// `G / [G, G]` with the projection from `G`.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub quotient: FiniteGroup,
    /// `projection[g]` is the coset of `g`.
    pub projection: Vec<usize>,
    pub commutator_subgroup: Vec<usize>,
}

/// The commutator subgroup is the closure of all commutators; cosets are
/// numbered by their least element, so the trivial coset is `0`.
pub fn abelianization(g: &FiniteGroup) -> Abelianization {
    let m = g.order();
    let mut commutators: Vec<usize> = (0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .map(|(a, b)| g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))))
        .collect();
    commutators.sort_unstable();
    commutators.dedup();
    let k = g.closure(&commutators);
    let mut projection = vec![usize::MAX; m];
    let mut reps = Vec::new();
    for x in 0..m {
        if projection[x] != usize::MAX {
            continue;
        }
        for &c in &k {
            projection[g.mul(x, c)] = reps.len();
        }
        reps.push(x);
    }
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| projection[g.mul(a, b)]).collect())
        .collect();
    let mut quotient = FiniteGroup::from_table(&format!("{}^ab", g.name()), &table, false)
        .expect("quotient by a normal subgroup is a group");
    let mut gens: Vec<usize> = g.generators().iter().map(|&s| projection[s]).filter(|&s| s != 0).collect();
    gens.dedup();
    if quotient.closure(&gens).len() == quotient.order() {
        quotient.set_generators(gens);
    }
    Abelianization {
        quotient,
        projection,
        commutator_subgroup: k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::standard_corpus;

    #[test]
    fn examples() {
        let s3 = abelianization(&FiniteGroup::symmetric(3));
        assert_eq!(s3.quotient.order(), 2);
        assert_eq!(s3.commutator_subgroup.len(), 3);
        let q8 = abelianization(&FiniteGroup::quaternion());
        assert_eq!(q8.commutator_subgroup, vec![0, 1]);
        assert_eq!(q8.quotient.element_orders(), vec![1, 2, 2, 2]);
        let z6 = FiniteGroup::cyclic(6);
        let ab = abelianization(&z6);
        assert_eq!(ab.quotient.order(), 6);
        assert_eq!(ab.projection, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn quotients_are_abelian_and_projection_is_a_homomorphism() {
        for g in standard_corpus() {
            let ab = abelianization(&g);
            assert!(ab.quotient.is_abelian());
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(
                        ab.projection[g.mul(a, b)],
                        ab.quotient.mul(ab.projection[a], ab.projection[b])
                    );
                }
            }
        }
    }
}
