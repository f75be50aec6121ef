//! Finite groups as dense Cayley tables, with conjugacy classes, commuting
//! tuples of p-power-order elements and their classes under simultaneous
//! conjugation.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod abelian;
pub mod tuples;

pub use abelian::{abelianization, Abelianization};
pub use tuples::{
    burnside_count, centralizer_count_oracle, commuting_tuples, matrix_action, tuple_classes,
    TupleClass, TupleClassSet,
};

/// Largest group a permutation closure may produce.
pub const DEFAULT_CLOSURE_CAP: usize = 5000;
/// Candidate visits allowed while enumerating commuting tuples.
pub const DEFAULT_TUPLE_BUDGET: u64 = 10_000_000;
/// Associativity of a table is checked exhaustively up to this order.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("permutation closure exceeds {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("tuple enumeration exceeds the budget of {budget} candidate visits")]
    BudgetExceeded { budget: u64 },
    #[error("matrix is not invertible mod {modulus}")]
    MatrixNotInvertible { modulus: u64 },
    #[error("action does not respect conjugacy classes")]
    ActionNotWellDefined,
    #[error("invalid group input: {0}")]
    Invalid(String),
}

/// Group input: permutation generators (one-line images, 0-based) or a
/// Cayley table with identity 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Permutations {
        name: String,
        perm_degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Table {
        name: String,
        order: usize,
        table: Vec<Vec<usize>>,
    },
}

/// A finite group on `0..m` with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    m: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    element_order: Vec<u32>,
    generators: Vec<usize>,
    permutations: Option<Vec<Vec<usize>>>,
}

/// Reads and validates a group from a JSON file.
pub fn load_group_file(path: &std::path::Path) -> Result<FiniteGroup, GroupError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GroupError::Invalid(format!("{}: {e}", path.display())))?;
    let spec: GroupSpec =
        serde_json::from_str(&text).map_err(|e| GroupError::Invalid(format!("{}: {e}", path.display())))?;
    load_group(&spec)
}

/// Validates a table or enumerates a permutation closure.
pub fn load_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    match spec {
        GroupSpec::Permutations {
            name,
            perm_degree,
            generators,
        } => FiniteGroup::from_permutations(name, *perm_degree, generators, DEFAULT_CLOSURE_CAP),
        GroupSpec::Table { name, order, table } => {
            if table.len() != *order {
                return Err(GroupError::Invalid(format!(
                    "table has {} rows for order {order}",
                    table.len()
                )));
            }
            FiniteGroup::from_table(name, table, *order <= ASSOCIATIVITY_CHECK_LIMIT)
        }
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a * b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

fn is_permutation(v: &[usize], degree: usize) -> bool {
    let mut seen = vec![false; degree];
    v.len() == degree
        && v.iter().all(|&i| i < degree && !std::mem::replace(&mut seen[i], true))
}

impl FiniteGroup {
    /// Builds the group from a Cayley table; `check_associativity` runs the
    /// exhaustive `O(m^3)` test.
    pub fn from_table(
        name: &str,
        table: &[Vec<usize>],
        check_associativity: bool,
    ) -> Result<Self, GroupError> {
        let m = table.len();
        if m == 0 {
            return Err(GroupError::Invalid("empty table".into()));
        }
        let mut mul = Vec::with_capacity(m * m);
        for row in table {
            if row.len() != m || row.iter().any(|&x| x >= m) {
                return Err(GroupError::Invalid("table rows must have m entries below m".into()));
            }
            mul.extend(row.iter().map(|&x| x as u32));
        }
        Self::from_flat(name, m, mul, check_associativity, Vec::new(), None)
    }

    fn from_flat(
        name: &str,
        m: usize,
        mul: Vec<u32>,
        check_associativity: bool,
        generators: Vec<usize>,
        permutations: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, GroupError> {
        let at = |a: usize, b: usize| mul[a * m + b] as usize;
        if (0..m).any(|a| at(0, a) != a || at(a, 0) != a) {
            return Err(GroupError::NoIdentity);
        }
        let mut inv = vec![0u32; m];
        for a in 0..m {
            let b = (0..m)
                .find(|&b| at(a, b) == 0)
                .ok_or(GroupError::NoInverse(a))?;
            if at(b, a) != 0 {
                return Err(GroupError::NoInverse(a));
            }
            inv[a] = b as u32;
        }
        if check_associativity {
            for a in 0..m {
                for b in 0..m {
                    let ab = at(a, b);
                    for c in 0..m {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        }
        let element_order = (0..m)
            .map(|a| {
                let mut k = 1u32;
                let mut x = a;
                while x != 0 {
                    x = at(x, a);
                    k += 1;
                    if k as usize > m {
                        break;
                    }
                }
                k
            })
            .collect();
        let mut g = FiniteGroup {
            name: name.to_string(),
            m,
            mul,
            inv,
            element_order,
            generators,
            permutations,
        };
        if g.element_order.iter().any(|&k| m % k as usize != 0) {
            return Err(GroupError::Invalid("element orders do not divide the group order".into()));
        }
        if g.generators.is_empty() {
            g.generators = g.greedy_generators();
        }
        Ok(g)
    }

    /// Breadth-first closure of permutation generators; elements are numbered
    /// in discovery order with the identity first.
    pub fn from_permutations(
        name: &str,
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self, GroupError> {
        for g in generators {
            if !is_permutation(g, degree) {
                return Err(GroupError::Invalid(format!(
                    "generator {g:?} is not a permutation of 0..{degree}"
                )));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for s in generators {
                let y = compose(&elements[x], s);
                if !index.contains_key(&y) {
                    if elements.len() == cap {
                        return Err(GroupError::ClosureCapExceeded { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let m = elements.len();
        let mut mul = Vec::with_capacity(m * m);
        for a in &elements {
            for b in &elements {
                mul.push(index[&compose(a, b)] as u32);
            }
        }
        let mut gens: Vec<usize> = generators.iter().map(|g| index[g]).filter(|&i| i != 0).collect();
        gens.dedup();
        Self::from_flat(name, m, mul, false, gens, Some(elements))
    }

    /// `Z/n` with `k` represented by `k`.
    pub fn cyclic(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mut g = Self::from_table(&format!("Z{n}"), &table, false).expect("cyclic table");
        g.generators = if n > 1 { vec![1] } else { vec![] };
        g
    }

    /// The symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        if n >= 3 {
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        Self::from_permutations(&format!("S{n}"), n, &gens, DEFAULT_CLOSURE_CAP).expect("symmetric group")
    }

    /// The alternating group on 4 points.
    pub fn alternating4() -> Self {
        let gens = vec![vec![1, 2, 0, 3], vec![0, 2, 3, 1]];
        Self::from_permutations("A4", 4, &gens, DEFAULT_CLOSURE_CAP).expect("A4")
    }

    /// The dihedral group of order `2n`, acting on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(&format!("D{n}"), n, &[rot, refl], DEFAULT_CLOSURE_CAP).expect("dihedral")
    }

    /// The quaternion group: `2u + s` stands for `(-1)^s u` with
    /// `u` in `1, i, j, k`.
    pub fn quaternion() -> Self {
        // unit products (sign, unit) for the basis 1, i, j, k
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let table: Vec<Vec<usize>> = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (s, u) = UNIT[a / 2][b / 2];
                        2 * u + (s + a % 2 + b % 2) % 2
                    })
                    .collect()
            })
            .collect();
        let mut g = Self::from_table("Q8", &table, true).expect("Q8 table");
        g.generators = vec![2, 4];
        g
    }

    /// `G x H` with `(g, h)` numbered `g |H| + h`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (ma, mb) = (a.m, b.m);
        let m = ma * mb;
        let mut mul = Vec::with_capacity(m * m);
        for x in 0..m {
            for y in 0..m {
                let g = a.mul(x / mb, y / mb);
                let h = b.mul(x % mb, y % mb);
                mul.push((g * mb + h) as u32);
            }
        }
        let gens = a
            .generators
            .iter()
            .map(|&g| g * mb)
            .chain(b.generators.iter().copied())
            .collect();
        Self::from_flat(&format!("{}x{}", a.name, b.name), m, mul, false, gens, None)
            .expect("product of groups")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.m + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_order[a] as usize
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.element_order.iter().map(|&k| k as usize).collect()
    }

    /// Generators used for characters: the input permutations, or a greedy
    /// generating set for tables.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub(crate) fn set_generators(&mut self, gens: Vec<usize>) {
        self.generators = gens;
    }

    /// Elements as permutations, when the group came from generators.
    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.permutations.as_deref()
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let k = k % self.element_order[a] as u64;
        let (mut acc, mut base, mut k) = (0, a, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.m).all(|a| (a + 1..self.m).all(|b| self.commutes(a, b)))
    }

    pub fn exponent(&self) -> usize {
        self.element_order
            .iter()
            .fold(1, |acc, &k| num_integer::lcm(acc, k as usize))
    }

    /// Re-runs the exhaustive associativity test.
    pub fn verify_associativity(&self) -> Result<(), GroupError> {
        for a in 0..self.m {
            for b in 0..self.m {
                let ab = self.mul(a, b);
                for c in 0..self.m {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.m];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.m).filter(|&x| seen[x]).collect()
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        while span.len() < self.m {
            let next = (0..self.m).find(|x| span.binary_search(x).is_err()).unwrap();
            gens.push(next);
            span = self.closure(&gens);
        }
        gens
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.m).filter(|&x| self.commutes(g, x)).collect()
    }

    /// The subgroup on `elements` (sorted, containing 0), renumbered in
    /// increasing order.
    pub fn subgroup(&self, name: &str, elements: &[usize]) -> FiniteGroup {
        let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = elements.len();
        let mut mul = Vec::with_capacity(k * k);
        for &a in elements {
            for &b in elements {
                mul.push(pos[&self.mul(a, b)] as u32);
            }
        }
        Self::from_flat(name, k, mul, false, Vec::new(), None).expect("subgroup of a group")
    }

    /// Conjugacy classes, each sorted, listed by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.m];
        let mut classes = Vec::new();
        for x in 0..self.m {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..self.m).map(|g| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                class_of[y] = classes.len();
            }
            classes.push(class);
        }
        classes
    }

    /// Elements whose order is a power of `p` (the identity included).
    pub fn p_elements(&self, p: u64) -> Vec<usize> {
        (0..self.m)
            .filter(|&x| {
                let mut k = self.element_order[x] as u64;
                while k % p == 0 {
                    k /= p;
                }
                k == 1
            })
            .collect()
    }

    /// Least `r` with `p^r` at least the largest order of a p-element.
    pub fn p_level(&self, p: u64) -> u32 {
        let top = self
            .p_elements(p)
            .iter()
            .map(|&x| self.element_order[x] as u64)
            .max()
            .unwrap_or(1);
        let mut r = 0;
        let mut pr = 1;
        while pr < top {
            pr *= p;
            r += 1;
        }
        r
    }

    pub fn to_json(&self) -> serde_json::Value {
        let classes = self.conjugacy_classes();
        serde_json::json!({
            "name": self.name,
            "order": self.m,
            "element_orders": self.element_orders(),
            "generators": self.generators,
            "abelian": self.is_abelian(),
            "exponent": self.exponent(),
            "conjugacy_classes": classes
                .iter()
                .map(|c| serde_json::json!({"rep": c[0], "size": c.len(), "order": self.element_order(c[0])}))
                .collect::<Vec<_>>(),
        })
    }
}

/// The groups used throughout the tests and the default corpus.
pub fn standard_corpus() -> Vec<Arc<FiniteGroup>> {
    vec![
        Arc::new(FiniteGroup::symmetric(3)),
        Arc::new(FiniteGroup::symmetric(4)),
        Arc::new(FiniteGroup::alternating4()),
        Arc::new(FiniteGroup::dihedral(4)),
        Arc::new(FiniteGroup::quaternion()),
        Arc::new(FiniteGroup::cyclic(6)),
        Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let mut s: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn permutation_closure() {
        let spec: GroupSpec =
            serde_json::from_str(r#"{"name":"S3","perm_degree":3,"generators":[[1,0,2],[1,2,0]]}"#).unwrap();
        let s3 = load_group(&spec).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.permutations().unwrap()[0], vec![0, 1, 2]);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::alternating4().order(), 12);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        let gens = vec![vec![1, 0, 2, 3, 4, 5, 6, 7], vec![1, 2, 3, 4, 5, 6, 7, 0]];
        let err = FiniteGroup::from_permutations("S8", 8, &gens, 5000);
        assert_eq!(err.unwrap_err(), GroupError::ClosureCapExceeded { cap: 5000 });
    }

    #[test]
    fn table_validation() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.element_orders(), vec![1, 4, 2, 4]);
        // a loop of order 5 with identity and inverses that is not a group
        let bad = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("bad", &bad, true).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative { .. }), "{err:?}");
        let no_id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(FiniteGroup::from_table("x", &no_id, true).unwrap_err(), GroupError::NoIdentity);
        let no_inv = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(FiniteGroup::from_table("x", &no_inv, true).unwrap_err(), GroupError::NoInverse(1));
    }

    #[test]
    fn conjugacy_classes_examples() {
        assert_eq!(class_sizes(&FiniteGroup::symmetric(3)), vec![1, 2, 3]);
        assert_eq!(class_sizes(&FiniteGroup::quaternion()), vec![1, 1, 2, 2, 2]);
        assert_eq!(class_sizes(&FiniteGroup::cyclic(6)), vec![1; 6]);
        assert_eq!(FiniteGroup::symmetric(4).conjugacy_classes().len(), 5);
        assert_eq!(FiniteGroup::alternating4().conjugacy_classes().len(), 4);
        for g in standard_corpus() {
            for class in g.conjugacy_classes() {
                assert_eq!(g.order() % class.len(), 0);
            }
        }
    }

    #[test]
    fn quaternion_relations() {
        let q = FiniteGroup::quaternion();
        let (i, j, k, minus_one) = (2, 4, 6, 1);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), k + 1);
        assert_eq!(q.mul(i, i), minus_one);
        assert_eq!(q.element_orders(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert_eq!(q.closure(q.generators()).len(), 8);
    }

    #[test]
    fn p_elements_examples() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.p_elements(3).len(), 3);
        assert_eq!(s3.p_elements(2).len(), 4);
        assert_eq!(s3.p_elements(5), vec![0]);
        assert_eq!(FiniteGroup::cyclic(4).p_level(2), 2);
        assert_eq!(s3.p_level(3), 1);
        assert_eq!(s3.p_level(5), 0);
    }

    #[test]
    fn generators_span() {
        for g in standard_corpus() {
            assert_eq!(g.closure(g.generators()).len(), g.order(), "{}", g.name());
            g.verify_associativity().unwrap();
        }
    }
}
