//! Truncated power series in one, two or three variables.
//!
//! Coefficients are stored densely, one per monomial of total degree at most
//! the truncation bound, in graded order. Multiplication goes through a
//! cached plan of index triples per `(variables, truncation)` shape.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Deserialize;

use super::rational::LocalRational;
use super::{ArithError, Coeff};

pub const MAX_VARS: usize = 3;

type Exps = [u32; MAX_VARS];

#[derive(Debug)]
struct MonoTable {
    nvars: usize,
    exps: Vec<Exps>,
    degrees: Vec<usize>,
    index: HashMap<Exps, usize>,
    plan: OnceLock<Vec<(u32, u32, u32)>>,
}

impl MonoTable {
    fn build(nvars: usize, trunc: usize) -> Self {
        fn fill(nvars: usize, var: usize, remaining: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
            if var == nvars - 1 {
                cur[var] = remaining;
                out.push(*cur);
                return;
            }
            for e in (0..=remaining).rev() {
                cur[var] = e;
                fill(nvars, var + 1, remaining - e, cur, out);
            }
            cur[var] = 0;
        }
        let mut exps = Vec::new();
        for d in 0..=trunc as u32 {
            fill(nvars, 0, d, &mut [0; MAX_VARS], &mut exps);
        }
        let degrees = exps.iter().map(|e| e.iter().sum::<u32>() as usize).collect();
        let index = exps.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        MonoTable {
            nvars,
            exps,
            degrees,
            index,
            plan: OnceLock::new(),
        }
    }

    fn plan(&self, trunc: usize) -> &[(u32, u32, u32)] {
        self.plan.get_or_init(|| {
            let mut plan = Vec::new();
            for (ia, ea) in self.exps.iter().enumerate() {
                let da = self.degrees[ia];
                for (ib, eb) in self.exps.iter().enumerate() {
                    // graded order: every later monomial has degree >= this one
                    if da + self.degrees[ib] > trunc {
                        break;
                    }
                    let mut sum = [0; MAX_VARS];
                    for v in 0..self.nvars {
                        sum[v] = ea[v] + eb[v];
                    }
                    plan.push((ia as u32, ib as u32, self.index[&sum] as u32));
                }
            }
            plan
        })
    }
}

fn table(nvars: usize, trunc: usize) -> Arc<MonoTable> {
    static TABLES: OnceLock<Mutex<HashMap<(usize, usize), Arc<MonoTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = tables.lock().expect("monomial table cache poisoned");
    Arc::clone(
        guard
            .entry((nvars, trunc))
            .or_insert_with(|| Arc::new(MonoTable::build(nvars, trunc))),
    )
}

/// A power series in `nvars` variables truncated above total degree `trunc`.
#[derive(Clone)]
pub struct Series<C> {
    nvars: usize,
    trunc: usize,
    coeffs: Vec<C>,
    zero: C,
    table: Arc<MonoTable>,
}

impl<C: Coeff> Series<C> {
    pub fn zero(proto: &C, nvars: usize, trunc: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&nvars), "1 to 3 variables supported");
        let table = table(nvars, trunc);
        let zero = proto.zero_like();
        Series {
            nvars,
            trunc,
            coeffs: vec![zero.clone(); table.exps.len()],
            zero,
            table,
        }
    }

    /// Univariate series from coefficients of `X^0, X^1, ...`; excess terms
    /// are dropped.
    pub fn univariate(proto: &C, trunc: usize, coeffs: Vec<C>) -> Self {
        let mut s = Self::zero(proto, 1, trunc);
        for (d, c) in coeffs.into_iter().enumerate().take(trunc + 1) {
            s.coeffs[d] = c;
        }
        s
    }

    /// Univariate series from `(exponent, coefficient)` pairs.
    pub fn from_terms(proto: &C, trunc: usize, terms: &[(usize, C)]) -> Self {
        let mut s = Self::zero(proto, 1, trunc);
        for (d, c) in terms {
            if *d <= trunc {
                s.coeffs[*d] = s.coeffs[*d].add(c);
            }
        }
        s
    }

    pub fn constant(c: &C, nvars: usize, trunc: usize) -> Self {
        let mut s = Self::zero(c, nvars, trunc);
        s.coeffs[0] = c.clone();
        s
    }

    /// The variable with index `k`.
    pub fn var(proto: &C, nvars: usize, k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(proto, nvars, trunc);
        if trunc >= 1 {
            let mut e = [0; MAX_VARS];
            e[k] = 1;
            s.set(&e[..nvars], proto.one_like());
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn proto(&self) -> &C {
        &self.zero
    }

    fn key(&self, exps: &[u32]) -> Option<usize> {
        assert_eq!(exps.len(), self.nvars, "exponent length must match variable count");
        let mut k = [0; MAX_VARS];
        k[..exps.len()].copy_from_slice(exps);
        self.table.index.get(&k).copied()
    }

    pub fn coeff(&self, exps: &[u32]) -> &C {
        match self.key(exps) {
            Some(i) => &self.coeffs[i],
            None => &self.zero,
        }
    }

    /// Coefficient of `X^d` in a univariate series.
    pub fn c(&self, d: usize) -> &C {
        debug_assert_eq!(self.nvars, 1);
        self.coeffs.get(d).unwrap_or(&self.zero)
    }

    pub fn set(&mut self, exps: &[u32], value: C) {
        if let Some(i) = self.key(exps) {
            self.coeffs[i] = value;
        }
    }

    /// Nonzero terms in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.table
            .exps
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(move |(e, c)| (&e[..self.nvars], c))
    }

    /// Iterates over every monomial slot, including zero coefficients.
    pub fn slots(&self) -> impl Iterator<Item = (&[u32], usize, &C)> {
        self.table
            .exps
            .iter()
            .zip(&self.table.degrees)
            .zip(&self.coeffs)
            .map(move |((e, d), c)| (&e[..self.nvars], *d, c))
    }

    pub fn constant_term(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncated(&self, trunc: usize) -> Self {
        if trunc == self.trunc {
            return self.clone();
        }
        let mut out = Self::zero(&self.zero, self.nvars, trunc);
        for (i, e) in self.table.exps.iter().enumerate() {
            if self.table.degrees[i] <= trunc {
                out.set(&e[..self.nvars], self.coeffs[i].clone());
            }
        }
        out
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        assert_eq!(self.nvars, other.nvars, "variable counts differ");
        let t = self.trunc.min(other.trunc);
        (self.truncated(t), other.truncated(t))
    }

    fn zip(&self, other: &Self, op: impl Fn(&C, &C) -> C) -> Self {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x = op(x, y);
        }
        a
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            if !c.is_zero() {
                *c = c.mul(k);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let aligned;
        let (a, b) = if self.trunc == other.trunc {
            assert_eq!(self.nvars, other.nvars, "variable counts differ");
            (self, other)
        } else {
            aligned = self.aligned(other);
            (&aligned.0, &aligned.1)
        };
        let mut out = Self::zero(&self.zero, a.nvars, a.trunc);
        let a_nz: Vec<bool> = a.coeffs.iter().map(|c| !c.is_zero()).collect();
        let b_nz: Vec<bool> = b.coeffs.iter().map(|c| !c.is_zero()).collect();
        for &(ia, ib, ic) in a.table.plan(a.trunc) {
            let (ia, ib, ic) = (ia as usize, ib as usize, ic as usize);
            if a_nz[ia] && b_nz[ib] {
                out.coeffs[ic] = out.coeffs[ic].add(&a.coeffs[ia].mul(&b.coeffs[ib]));
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(&self.zero.one_like(), self.nvars, self.trunc);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Lowest total degree with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.table.degrees[i])
    }

    /// Lowest total degree at which `self` and `other` disagree (modulo
    /// `pi^digits` when given).
    pub fn first_difference(&self, other: &Self, digits: Option<i64>) -> Option<usize> {
        let (a, b) = self.aligned(other);
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .position(|(x, y)| !x.agrees_with(y, digits))
            .map(|i| a.table.degrees[i])
    }

    pub fn agrees_with(&self, other: &Self, digits: Option<i64>) -> bool {
        self.first_difference(other, digits).is_none()
    }

    pub fn all_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integral())
    }

    /// Lowest degree carrying a non-integral coefficient.
    pub fn first_non_integral(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| !c.is_integral())
            .map(|i| self.table.degrees[i])
    }

    pub fn map_coeffs<D: Coeff>(&self, proto: &D, f: impl Fn(&C) -> D) -> Series<D> {
        let mut out = Series::zero(proto, self.nvars, self.trunc);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[i] = f(c);
            }
        }
        out
    }

    /// Embeds a univariate series as a series in variable `var` of `nvars`.
    pub fn embed(&self, nvars: usize, var: usize) -> Self {
        assert_eq!(self.nvars, 1);
        let mut out = Self::zero(&self.zero, nvars, self.trunc);
        for d in 0..=self.trunc {
            let mut e = [0; MAX_VARS];
            e[var] = d as u32;
            out.set(&e[..nvars], self.coeffs[d].clone());
        }
        out
    }

    /// Re-expresses the series in `nvars` variables, sending variable `i` to
    /// variable `map[i]`.
    pub fn reindex(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(&self.zero, nvars, self.trunc);
        for (i, e) in self.table.exps.iter().enumerate() {
            if self.coeffs[i].is_zero() {
                continue;
            }
            let mut target = [0; MAX_VARS];
            for (v, &t) in map.iter().enumerate() {
                target[t] += e[v];
            }
            let k = out.key(&target[..nvars]).expect("same total degree");
            out.coeffs[k] = out.coeffs[k].add(&self.coeffs[i]);
        }
        out
    }

    /// Formal derivative of a univariate series.
    pub fn derivative(&self) -> Self {
        assert_eq!(self.nvars, 1);
        let mut out = Self::zero(&self.zero, 1, self.trunc);
        for d in 1..=self.trunc {
            let k = self.zero.from_i64_like(d as i64);
            out.coeffs[d - 1] = self.coeffs[d].mul(&k);
        }
        out
    }

    /// Multiplicative inverse of a univariate series with invertible constant term.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.nvars, 1);
        let c0_inv = self.coeffs[0].inverse()?;
        let mut h = Self::zero(&self.zero, 1, self.trunc);
        h.coeffs[0] = c0_inv.clone();
        for k in 1..=self.trunc {
            let mut acc = self.zero.clone();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc = acc.add(&self.coeffs[i].mul(&h.coeffs[k - i]));
                }
            }
            h.coeffs[k] = acc.mul(&c0_inv).neg();
        }
        Some(h)
    }

    /// Substitutes `args[k]` for variable `k`. The arguments share a variable
    /// count and must have zero constant term; the result is truncated at
    /// the smaller of the two truncations.
    pub fn substitute(&self, args: &[&Series<C>]) -> Result<Series<C>, ArithError> {
        if args.len() != self.nvars {
            return Err(ArithError::VariableMismatch(self.nvars, args.len()));
        }
        let m = args[0].nvars;
        let mut trunc = self.trunc;
        for a in args {
            if a.nvars != m {
                return Err(ArithError::VariableMismatch(m, a.nvars));
            }
            if !a.constant_term().is_zero() {
                return Err(ArithError::NonzeroConstantTerm);
            }
            trunc = trunc.min(a.trunc);
        }
        let args: Vec<Series<C>> = args.iter().map(|a| a.truncated(trunc)).collect();
        let zero = &self.zero;
        match self.nvars {
            1 => {
                let g = &args[0];
                let mut acc = Series::constant(&self.coeffs[trunc.min(self.trunc)], m, trunc);
                for d in (0..trunc).rev() {
                    acc = acc.mul(g);
                    acc.coeffs[0] = acc.coeffs[0].add(&self.coeffs[d]);
                }
                Ok(acc)
            }
            2 => {
                let (a, b) = (&args[0], &args[1]);
                let mut b_pows = vec![Series::constant(&zero.one_like(), m, trunc)];
                for j in 1..=trunc {
                    let next = b_pows[j - 1].mul(b);
                    b_pows.push(next);
                }
                // sum_i A^i * (sum_j c_ij B^j), evaluated by Horner in A
                let mut acc = Series::zero(zero, m, trunc);
                for i in (0..=trunc).rev() {
                    let mut inner = Series::zero(zero, m, trunc);
                    for (j, bp) in b_pows.iter().enumerate().take(trunc - i + 1) {
                        let c = self.coeff(&[i as u32, j as u32]);
                        if !c.is_zero() {
                            inner = inner.add(&bp.scale(c));
                        }
                    }
                    acc = if i == trunc { inner } else { acc.mul(a).add(&inner) };
                }
                Ok(acc)
            }
            _ => Err(ArithError::Invalid(
                "substitution into a three-variable series is not supported".into(),
            )),
        }
    }

    /// `self(g)` for univariate `self`.
    pub fn compose(&self, g: &Series<C>) -> Result<Series<C>, ArithError> {
        self.substitute(&[g])
    }

    /// Compositional inverse of a univariate series `c X + ...` with `c`
    /// invertible. Both `self(g) = X` and `g(self) = X` are verified.
    pub fn revert(&self) -> Result<Series<C>, ArithError> {
        assert_eq!(self.nvars, 1, "reversion is univariate");
        if !self.coeffs[0].is_zero() {
            return Err(ArithError::NonzeroConstantTerm);
        }
        let x = Series::var(&self.zero, 1, 0, self.trunc);
        if self.trunc == 0 {
            return Ok(x);
        }
        let c_inv = self.coeffs[1].inverse().ok_or(ArithError::NonUnitLinearTerm)?;
        let deriv = self.derivative();
        let mut g = x.scale(&c_inv);
        // Newton: g <- g - (f(g) - X) / f'(g); the number of correct terms doubles
        let mut rounds = 0;
        loop {
            let resid = self.compose(&g)?.sub(&x);
            if resid.is_zero() {
                break;
            }
            rounds += 1;
            if rounds > 2 * usize::BITS as usize {
                return Err(ArithError::ReversionFailed(self.trunc));
            }
            let dg = deriv
                .compose(&g)?
                .inverse()
                .ok_or(ArithError::NonUnitLinearTerm)?;
            g = g.sub(&resid.mul(&dg));
        }
        if !g.compose(self)?.sub(&x).is_zero() {
            return Err(ArithError::ReversionFailed(self.trunc));
        }
        Ok(g)
    }

    /// Smallest exponent whose coefficient survives reduction modulo the
    /// maximal ideal; `None` stands for +infinity within the truncation.
    pub fn weierstrass_degree(&self) -> Option<usize> {
        assert_eq!(self.nvars, 1);
        self.coeffs.iter().position(|c| c.is_unit_mod_max())
    }

    /// Degree-`d` homogeneous component.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let mut out = Self::zero(&self.zero, self.nvars, self.trunc);
        for (i, deg) in self.table.degrees.iter().enumerate() {
            if *deg == d {
                out.coeffs[i] = self.coeffs[i].clone();
            }
        }
        out
    }

    /// JSON with exponent lists; coefficient objects are merged into each term.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .map(|(e, c)| {
                let mut obj = serde_json::Map::new();
                obj.insert("exp".into(), serde_json::json!(e));
                match c.json() {
                    serde_json::Value::Object(m) => obj.extend(m),
                    other => {
                        obj.insert("value".into(), other);
                    }
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::json!({
            "mode": self.zero.mode_name(),
            "truncation": self.trunc,
            "coeffs": terms,
        })
    }
}

impl<C: Coeff> PartialEq for Series<C> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.trunc == other.trunc && self.coeffs == other.coeffs
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<C: Coeff> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; MAX_VARS] = ["X", "Y", "Z"];
        let mut parts = Vec::new();
        for (e, c) in self.terms() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        NAMES[v].to_string()
                    } else {
                        format!("{}^{}", NAMES[v], k)
                    }
                })
                .collect();
            let coeff = c.to_string();
            parts.push(match (mono.is_empty(), coeff.as_str()) {
                (true, _) => coeff,
                (false, "1") => mono.join("*"),
                _ => format!("({})*{}", coeff, mono.join("*")),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{} + O(deg {})", parts.join(" + "), self.trunc + 1)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalTermJson {
    exp: Vec<u32>,
    num: String,
    den: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalSeriesJson {
    mode: String,
    truncation: usize,
    coeffs: Vec<RationalTermJson>,
}

/// Parses the rational-mode series JSON format.
pub fn rational_series_from_json(
    value: &serde_json::Value,
    prime: u64,
) -> Result<Series<LocalRational>, ArithError> {
    let parsed: RationalSeriesJson = serde_json::from_value(value.clone())
        .map_err(|e| ArithError::Invalid(format!("series JSON: {e}")))?;
    if parsed.mode != "rational" {
        return Err(ArithError::Invalid(format!("unsupported series mode {}", parsed.mode)));
    }
    let nvars = parsed.coeffs.first().map_or(1, |t| t.exp.len());
    if !(1..=2).contains(&nvars) {
        return Err(ArithError::Invalid("exponent lists must have length 1 or 2".into()));
    }
    let proto = LocalRational::zero(prime);
    let mut s = Series::zero(&proto, nvars, parsed.truncation);
    for t in parsed.coeffs {
        if t.exp.len() != nvars {
            return Err(ArithError::VariableMismatch(nvars, t.exp.len()));
        }
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| ArithError::Invalid(format!("bad integer {s:?}")))
        };
        let c = LocalRational::new(parse(&t.num)?, parse(&t.den)?, prime)?;
        if t.exp.iter().sum::<u32>() as usize > parsed.truncation {
            return Err(ArithError::Invalid("exponent beyond truncation".into()));
        }
        s.set(&t.exp, c);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> LocalRational {
        LocalRational::ratio(n, d, 2)
    }

    fn uni(trunc: usize, terms: &[(usize, i64, i64)]) -> Series<LocalRational> {
        let t: Vec<(usize, LocalRational)> = terms.iter().map(|&(e, n, d)| (e, q(n, d))).collect();
        Series::from_terms(&q(0, 1), trunc, &t)
    }

    #[test]
    fn compose_with_identity() {
        let f = uni(6, &[(1, 1, 1), (2, 1, 1)]);
        let x = uni(6, &[(1, 1, 1)]);
        assert_eq!(f.compose(&x).unwrap(), f);
    }

    #[test]
    fn substitute_sum_doubles() {
        let x = q(0, 1);
        let sum = Series::var(&x, 2, 0, 5).add(&Series::var(&x, 2, 1, 5));
        let g = uni(5, &[(1, 1, 1), (3, -2, 3)]);
        let out = sum.substitute(&[&g, &g]).unwrap();
        assert_eq!(out, g.scale(&q(2, 1)));
    }

    #[test]
    fn revert_examples() {
        // hand Lagrange inversion: revert(X - X^2/2) = X + X^2/2 + X^3/2 + ...
        let f = uni(3, &[(1, 1, 1), (2, -1, 2)]);
        let g = f.revert().unwrap();
        assert_eq!(g, uni(3, &[(1, 1, 1), (2, 1, 2), (3, 1, 2)]));
        assert_eq!(f.compose(&g).unwrap(), uni(3, &[(1, 1, 1)]));
        let x = uni(10, &[(1, 1, 1)]);
        assert_eq!(x.revert().unwrap(), x);
    }

    #[test]
    fn reversion_errors() {
        let f = uni(4, &[(0, 1, 1), (1, 1, 1)]);
        assert_eq!(f.revert().unwrap_err(), ArithError::NonzeroConstantTerm);
        let g = uni(4, &[(2, 1, 1)]);
        assert_eq!(g.revert().unwrap_err(), ArithError::NonUnitLinearTerm);
        let x = uni(4, &[(1, 1, 1)]);
        assert_eq!(x.compose(&f).unwrap_err(), ArithError::NonzeroConstantTerm);
    }

    #[test]
    fn weierstrass_degree_examples() {
        assert_eq!(uni(8, &[(1, 2, 1)]).weierstrass_degree(), None);
        assert_eq!(uni(8, &[(1, 2, 1), (4, 1, 1)]).weierstrass_degree(), Some(4));
        assert_eq!(uni(8, &[(1, 2, 1), (2, 1, 3)]).weierstrass_degree(), Some(2));
    }

    #[test]
    fn json_roundtrip_rational() {
        let f = uni(5, &[(1, 1, 1), (2, -1, 2), (4, 1, 28)]);
        let j = f.to_json();
        assert_eq!(
            j["coeffs"][1],
            serde_json::json!({"exp": [2], "num": "-1", "den": "2"})
        );
        assert_eq!(rational_series_from_json(&j, 2).unwrap(), f);
        let bad = serde_json::json!({"mode": "rational", "truncation": 2, "coeffs": [{"exp": [3], "num": "1", "den": "1"}]});
        assert!(rational_series_from_json(&bad, 2).is_err());
    }

    #[test]
    fn three_variable_product_matches_expansion() {
        let x = q(0, 1);
        let s = Series::var(&x, 3, 0, 4)
            .add(&Series::var(&x, 3, 1, 4))
            .add(&Series::var(&x, 3, 2, 4));
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(&[1, 1, 0]), &q(2, 1));
        assert_eq!(sq.coeff(&[2, 0, 0]), &q(1, 1));
        let cube = sq.mul(&s);
        assert_eq!(cube.coeff(&[1, 1, 1]), &q(6, 1));
    }

    proptest! {
        #[test]
        fn reversion_is_an_involution(coeffs in proptest::collection::vec(-9i64..10, 7)) {
            let mut terms = vec![(1usize, 1i64, 1i64)];
            for (i, c) in coeffs.iter().enumerate() {
                terms.push((i + 2, *c, 1));
            }
            let f = uni(8, &terms);
            let g = f.revert().unwrap();
            prop_assert!(g.all_integral());
            prop_assert_eq!(g.revert().unwrap(), f);
        }
    }
}
