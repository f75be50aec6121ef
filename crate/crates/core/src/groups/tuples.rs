use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{FiniteGroup, GroupError};
use crate::arith::matrix::ModMatrix;

/// One class of commuting tuples under simultaneous conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleClass {
    /// Lexicographically least member.
    pub rep: Vec<usize>,
    pub size: usize,
}

/// Classes of commuting `n`-tuples of `p`-power-order elements.
#[derive(Clone, Debug)]
pub struct TupleClassSet {
    pub group: Arc<FiniteGroup>,
    pub n: usize,
    pub p: u64,
    pub classes: Vec<TupleClass>,
    pub total_tuples: usize,
    tuples: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl TupleClassSet {
    /// All commuting tuples in lexicographic order.
    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// Class index of any commuting tuple.
    pub fn class_of(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).map(|&i| self.class_of[i])
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group.name(),
            "n": self.n,
            "p": self.p,
            "classes": self.classes,
            "total_tuples": self.total_tuples,
        })
    }
}

/// All ordered `n`-tuples of pairwise-commuting `p`-elements, in
/// lexicographic order. Each new entry is drawn from the intersection of
/// the centralizers of the earlier ones.
pub fn commuting_tuples(
    g: &FiniteGroup,
    n: usize,
    p: u64,
    budget: u64,
) -> Result<Vec<Vec<usize>>, GroupError> {
    fn extend(
        g: &FiniteGroup,
        n: usize,
        candidates: &[usize],
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        visits: &mut u64,
        budget: u64,
    ) -> Result<(), GroupError> {
        if prefix.len() == n {
            out.push(prefix.clone());
            return Ok(());
        }
        for &x in candidates {
            *visits += 1;
            if *visits > budget {
                return Err(GroupError::BudgetExceeded { budget });
            }
            let next: Vec<usize> = candidates.iter().copied().filter(|&y| g.commutes(x, y)).collect();
            prefix.push(x);
            extend(g, n, &next, prefix, out, visits, budget)?;
            prefix.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    let mut visits = 0;
    extend(g, n, &g.p_elements(p), &mut Vec::new(), &mut out, &mut visits, budget)?;
    Ok(out)
}

/// Orbits of commuting tuples under simultaneous conjugation. Tuples are
/// scanned in lexicographic order, so the first unvisited member of each
/// orbit is its least element.
pub fn tuple_classes(
    g: &Arc<FiniteGroup>,
    n: usize,
    p: u64,
    budget: u64,
) -> Result<TupleClassSet, GroupError> {
    let tuples = commuting_tuples(g, n, p, budget)?;
    let index: HashMap<Vec<usize>, usize> =
        tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let mut class_of = vec![usize::MAX; tuples.len()];
    let mut classes = Vec::new();
    for (i, t) in tuples.iter().enumerate() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut size = 0;
        for h in 0..g.order() {
            let image: Vec<usize> = t.iter().map(|&x| g.conjugate(h, x)).collect();
            let j = index[&image];
            if class_of[j] == usize::MAX {
                class_of[j] = classes.len();
                size += 1;
            }
        }
        classes.push(TupleClass { rep: t.clone(), size });
    }
    Ok(TupleClassSet {
        group: Arc::clone(g),
        n,
        p,
        classes,
        total_tuples: tuples.len(),
        tuples,
        class_of,
        index,
    })
}

/// `|C_{n,p}(G)|` by the recursion over p-power-order classes `[g]` of
/// `|C_{n-1,p}(C_G(g))|`, without enumerating tuples.
pub fn centralizer_count_oracle(g: &FiniteGroup, n: usize, p: u64, budget: u64) -> Result<u64, GroupError> {
    fn count(g: &FiniteGroup, n: usize, p: u64, calls: &mut u64, budget: u64) -> Result<u64, GroupError> {
        *calls += 1;
        if *calls > budget {
            return Err(GroupError::BudgetExceeded { budget });
        }
        if n == 0 {
            return Ok(1);
        }
        let p_elems = g.p_elements(p);
        let mut total = 0;
        for class in g.conjugacy_classes() {
            if p_elems.binary_search(&class[0]).is_ok() {
                let c = g.subgroup("centralizer", &g.centralizer(class[0]));
                total += count(&c, n - 1, p, calls, budget)?;
            }
        }
        Ok(total)
    }
    let mut calls = 0;
    count(g, n, p, &mut calls, budget)
}

/// Burnside's average `(1/|G|) sum_g #{tuples fixed by conjugation by g}`.
pub fn burnside_count(g: &FiniteGroup, tuples: &[Vec<usize>]) -> Result<u64, GroupError> {
    let fixed: usize = (0..g.order())
        .map(|h| {
            tuples
                .iter()
                .filter(|t| t.iter().all(|&x| g.commutes(h, x)))
                .count()
        })
        .sum();
    if fixed % g.order() != 0 {
        return Err(GroupError::Invalid("Burnside sum is not divisible by |G|".into()));
    }
    Ok((fixed / g.order()) as u64)
}

/// Applies `(t_i) -> (prod_j t_j^{e(i, j)})` to one tuple.
pub(crate) fn apply_exponents(g: &FiniteGroup, t: &[usize], e: impl Fn(usize, usize) -> u64) -> Vec<usize> {
    (0..t.len())
        .map(|i| {
            t.iter()
                .enumerate()
                .fold(0, |acc, (j, &x)| g.mul(acc, g.pow(x, e(i, j))))
        })
        .collect()
}

/// Permutation of classes induced by `M` acting as
/// `(t_i) -> (prod_j t_j^{M_ij})`, a left action of `Gl_n(Z/p^r)` with
/// `p^r` the least power covering every p-element order. Checks that the
/// action respects classes and is a bijection.
pub fn matrix_action(s: &TupleClassSet, m: &[Vec<i64>]) -> Result<Vec<usize>, GroupError> {
    let g = &s.group;
    let n = s.n;
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(GroupError::Invalid(format!("matrix must be {n} x {n}")));
    }
    let modulus = s.p.pow(g.p_level(s.p));
    let mat = ModMatrix::from_rows(m, modulus.max(s.p));
    if !mat.is_invertible() {
        return Err(GroupError::MatrixNotInvertible { modulus: mat.modulus() });
    }
    let perm = permute_classes(s, |i, j| mat.get(i, j))?;
    Ok(perm)
}

/// Shared by matrix and unit actions: image classes of every tuple, checked
/// to depend only on the class and to form a permutation.
pub(crate) fn permute_classes(
    s: &TupleClassSet,
    e: impl Fn(usize, usize) -> u64,
) -> Result<Vec<usize>, GroupError> {
    let g = &s.group;
    let mut perm = vec![usize::MAX; s.classes.len()];
    for (i, t) in s.tuples.iter().enumerate() {
        let image = apply_exponents(g, t, &e);
        let target = s.class_of(&image).ok_or(GroupError::ActionNotWellDefined)?;
        let c = s.class_of[i];
        if perm[c] == usize::MAX {
            perm[c] = target;
        } else if perm[c] != target {
            return Err(GroupError::ActionNotWellDefined);
        }
    }
    let mut hit = vec![false; perm.len()];
    for &t in &perm {
        if std::mem::replace(&mut hit[t], true) {
            return Err(GroupError::ActionNotWellDefined);
        }
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{standard_corpus, DEFAULT_TUPLE_BUDGET};

    const B: u64 = DEFAULT_TUPLE_BUDGET;

    /// Full product scan, kept as an independent check on small groups.
    fn naive_tuples(g: &FiniteGroup, n: usize, p: u64) -> Vec<Vec<usize>> {
        let pe = g.p_elements(p);
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    pe.iter().map(move |&x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        out.retain(|t| t.iter().all(|&a| t.iter().all(|&b| g.commutes(a, b))));
        out
    }

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::symmetric(3))
    }

    #[test]
    fn small_counts() {
        let g = s3();
        let singles: Vec<Vec<usize>> = g.p_elements(3).into_iter().map(|x| vec![x]).collect();
        assert_eq!(commuting_tuples(&g, 1, 3, B).unwrap(), singles);
        assert_eq!(commuting_tuples(&g, 2, 3, B).unwrap().len(), 9);
        assert_eq!(tuple_classes(&g, 1, 3, B).unwrap().len(), 2);
        assert_eq!(tuple_classes(&g, 2, 3, B).unwrap().len(), 5);
        assert_eq!(tuple_classes(&g, 1, 2, B).unwrap().len(), 2);
        let q8 = Arc::new(FiniteGroup::quaternion());
        assert_eq!(tuple_classes(&q8, 1, 2, B).unwrap().len(), 5);
        let triv = Arc::new(FiniteGroup::trivial());
        for n in 0..4 {
            assert_eq!(tuple_classes(&triv, n, 2, B).unwrap().len(), 1);
        }
        assert_eq!(centralizer_count_oracle(&g, 1, 3, B).unwrap(), 2);
        assert_eq!(centralizer_count_oracle(&g, 2, 3, B).unwrap(), 5);
    }

    #[test]
    fn enumeration_matches_naive_scan() {
        for g in standard_corpus().iter().filter(|g| g.order() <= 24) {
            for p in [2, 3] {
                for n in 0..=3 {
                    assert_eq!(
                        commuting_tuples(g, n, p, B).unwrap(),
                        naive_tuples(g, n, p),
                        "{} n={n} p={p}",
                        g.name()
                    );
                }
            }
        }
    }

    #[test]
    fn three_counts_agree_on_corpus() {
        for g in standard_corpus() {
            for p in [2, 3] {
                for n in 1..=3 {
                    let s = tuple_classes(&g, n, p, B).unwrap();
                    let sizes: usize = s.classes.iter().map(|c| c.size).sum();
                    assert_eq!(sizes, s.total_tuples);
                    assert!(s.classes.iter().all(|c| g.order() % c.size == 0));
                    let oracle = centralizer_count_oracle(&g, n, p, B).unwrap();
                    let burnside = burnside_count(&g, s.tuples()).unwrap();
                    assert_eq!(s.len() as u64, oracle, "{} n={n} p={p}", g.name());
                    assert_eq!(s.len() as u64, burnside, "{} n={n} p={p}", g.name());
                }
                // n = 1 gives the p-power-order conjugacy classes
                let pe = g.p_elements(p);
                let expected = g
                    .conjugacy_classes()
                    .iter()
                    .filter(|c| pe.binary_search(&c[0]).is_ok())
                    .count();
                assert_eq!(tuple_classes(&g, 1, p, B).unwrap().len(), expected);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2));
        let err = commuting_tuples(&g, 3, 2, 100).unwrap_err();
        assert_eq!(err, GroupError::BudgetExceeded { budget: 100 });
    }

    #[test]
    fn matrix_action_examples() {
        let g = s3();
        let s1 = tuple_classes(&g, 1, 3, B).unwrap();
        assert_eq!(matrix_action(&s1, &[vec![1]]).unwrap(), vec![0, 1]);
        assert_eq!(matrix_action(&s1, &[vec![-1]]).unwrap(), vec![0, 1]);
        assert_eq!(
            matrix_action(&s1, &[vec![3]]).unwrap_err(),
            GroupError::MatrixNotInvertible { modulus: 3 }
        );
        let s2 = tuple_classes(&g, 2, 3, B).unwrap();
        let reps: Vec<_> = s2.classes.iter().map(|c| c.rep.clone()).collect();
        let swap = matrix_action(&s2, &[vec![0, 1], vec![1, 0]]).unwrap();
        for (c, rep) in reps.iter().enumerate() {
            let swapped = vec![rep[1], rep[0]];
            assert_eq!(swap[c], s2.class_of(&swapped).unwrap());
            // (e, a) and (a, e) are exchanged; (e, e), (a, a), (a, a^2) are fixed
            let fixed = (rep[0] == 0) == (rep[1] == 0);
            assert_eq!(swap[c] == c, fixed, "{rep:?}");
        }
    }

    #[test]
    fn matrix_action_is_a_left_action() {
        let mats: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![1, 1], vec![0, 1]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![2, 1], vec![1, 1]],
            vec![vec![1, 0], vec![3, -1]],
        ];
        let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..2)
                .map(|i| (0..2).map(|j| (0..2).map(|k| a[i][k] * b[k][j]).sum()).collect())
                .collect()
        };
        for g in standard_corpus() {
            for p in [2, 3] {
                let s = tuple_classes(&g, 2, p, B).unwrap();
                for a in &mats {
                    for b in &mats {
                        let pa = matrix_action(&s, a).unwrap();
                        let pb = matrix_action(&s, b).unwrap();
                        let pab = matrix_action(&s, &mul(a, b)).unwrap();
                        let composed: Vec<usize> = (0..s.len()).map(|c| pa[pb[c]]).collect();
                        assert_eq!(pab, composed, "{} p={p}", g.name());
                    }
                }
            }
        }
    }
}
