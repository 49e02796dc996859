//! Based root data with a finite component-group action on the weight
//! lattice: dominance order, orbits and stabilizers, the Weyl dimension
//! formula, and Freudenthal weight multiplicities.
//!
//! Root data are given explicitly (rank, simple roots, simple coroots); the
//! full positive system and all coroots are generated by reflection closure
//! and validated, never trusted from the input.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::GroupTable;
use crate::matrix::{solve_linear, ExactMatrix};

/// A weight of the maximal torus, in coordinates of the standard basis of
/// the weight lattice X.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Pairing with a covector (an element of the dual lattice).
    pub fn pair(&self, covector: &[i64]) -> i64 {
        self.0.iter().zip(covector).map(|(a, b)| a * b).sum()
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let inner: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", inner.join(","))
    }
}

/// Serialized form of a root datum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootDatumSpec {
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    /// Optional: the sum of positive coroots, cross-checked against the
    /// recomputed value when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_rho_covector: Option<Vec<i64>>,
}

/// Based root datum: weight lattice `Z^rank`, simple roots and coroots, the
/// generated positive system, and the Weyl group as integer matrices.
#[derive(Clone, Debug)]
pub struct RootDatum {
    rank: usize,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Vec<i64>>,
    /// All positive roots with their coroots, simple ones first.
    positive: Vec<(Weight, Vec<i64>)>,
    two_rho: Weight,
    two_rho_covector: Vec<i64>,
    weyl: Vec<Vec<Vec<i64>>>,
}

const MAX_ROOTS: usize = 1024;
const MAX_WEYL: usize = 20_000;

impl RootDatum {
    pub fn from_spec(spec: &RootDatumSpec) -> Result<RootDatum> {
        let rank = spec.rank;
        if spec.simple_roots.len() != spec.simple_coroots.len() {
            return Err(Error::invalid(
                "simple roots and coroots have different counts",
            ));
        }
        for v in spec.simple_roots.iter().chain(&spec.simple_coroots) {
            if v.len() != rank {
                return Err(Error::invalid("root/coroot length does not match rank"));
            }
        }
        let simple_roots: Vec<Weight> = spec.simple_roots.iter().cloned().map(Weight).collect();
        let simple_coroots = spec.simple_coroots.clone();
        // Cartan validity: diagonal 2, off-diagonal <= 0.
        for (i, alpha) in simple_roots.iter().enumerate() {
            for (j, beta_v) in simple_coroots.iter().enumerate() {
                let c = alpha.pair(beta_v);
                if i == j && c != 2 {
                    return Err(Error::invalid(format!(
                        "Cartan diagonal entry <alpha_{i}, alpha_{i}^v> = {c} != 2"
                    )));
                }
                if i != j && c > 0 {
                    return Err(Error::invalid(format!(
                        "Cartan off-diagonal entry ({i},{j}) = {c} > 0"
                    )));
                }
            }
        }
        let mut datum = RootDatum {
            rank,
            simple_roots,
            simple_coroots,
            positive: Vec::new(),
            two_rho: Weight::zero(rank),
            two_rho_covector: vec![0; rank],
            weyl: Vec::new(),
        };
        datum.generate_roots()?;
        datum.generate_weyl()?;
        datum.two_rho = datum
            .positive
            .iter()
            .fold(Weight::zero(rank), |acc, (r, _)| acc.add(r));
        datum.two_rho_covector = datum
            .positive
            .iter()
            .fold(vec![0; rank], |mut acc, (_, c)| {
                for (a, v) in acc.iter_mut().zip(c) {
                    *a += v;
                }
                acc
            });
        if let Some(claimed) = &spec.two_rho_covector {
            if claimed != &datum.two_rho_covector {
                return Err(Error::invalid(format!(
                    "stored 2rho^v {:?} does not match the recomputed sum {:?}",
                    claimed, datum.two_rho_covector
                )));
            }
        }
        Ok(datum)
    }

    /// Reflection closure of the simple (root, coroot) pairs; positivity is
    /// decided by simple-root coordinates.
    fn generate_roots(&mut self) -> Result<()> {
        let mut all: BTreeSet<(Vec<i64>, Vec<i64>)> = BTreeSet::new();
        let mut queue: VecDeque<(Weight, Vec<i64>)> = VecDeque::new();
        for (r, c) in self.simple_roots.iter().zip(&self.simple_coroots) {
            if all.insert((r.0.clone(), c.clone())) {
                queue.push_back((r.clone(), c.clone()));
            }
        }
        while let Some((root, coroot)) = queue.pop_front() {
            if all.len() > MAX_ROOTS {
                return Err(Error::invalid("root system closure exceeds the size bound"));
            }
            for i in 0..self.simple_roots.len() {
                let pairing = root.pair(&self.simple_coroots[i]);
                let new_root = Weight(
                    root.0
                        .iter()
                        .zip(&self.simple_roots[i].0)
                        .map(|(a, b)| a - pairing * b)
                        .collect(),
                );
                let co_pairing = self.simple_roots[i].pair(&coroot);
                let new_coroot: Vec<i64> = coroot
                    .iter()
                    .zip(&self.simple_coroots[i])
                    .map(|(a, b)| a - co_pairing * b)
                    .collect();
                if all.insert((new_root.0.clone(), new_coroot.clone())) {
                    queue.push_back((new_root, new_coroot));
                }
            }
        }
        let mut positive = Vec::new();
        let mut negative = 0usize;
        for (root, coroot) in &all {
            let w = Weight(root.clone());
            match self.root_coordinates(&w) {
                Some(coords) if coords.iter().all(|&c| c >= 0) => {
                    positive.push((w, coroot.clone()));
                }
                Some(coords) if coords.iter().all(|&c| c <= 0) => negative += 1,
                _ => {
                    return Err(Error::invalid(format!(
                        "root {w} is neither positive nor negative"
                    )))
                }
            }
        }
        if positive.len() != negative {
            return Err(Error::invalid(
                "positive and negative systems differ in size",
            ));
        }
        // Order by height (sum of simple-root coordinates), then lex.
        positive.sort_by_key(|(r, _)| {
            let coords = self
                .root_coordinates(r)
                .expect("positive roots lie in the root lattice");
            let height: i64 = coords.iter().sum();
            (height, r.0.clone())
        });
        self.positive = positive;
        Ok(())
    }

    fn generate_weyl(&mut self) -> Result<()> {
        let n = self.rank;
        let id: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut gens = Vec::new();
        for (alpha, alpha_v) in self.simple_roots.iter().zip(&self.simple_coroots) {
            // s(x) = x - <x, alpha^v> alpha.
            let mut m = id.clone();
            for (r, row) in m.iter_mut().enumerate() {
                for (c, entry) in row.iter_mut().enumerate() {
                    *entry -= alpha.0[r] * alpha_v[c];
                }
            }
            gens.push(m);
        }
        let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(w) = queue.pop_front() {
            if seen.len() > MAX_WEYL {
                return Err(Error::invalid("Weyl group exceeds the size bound"));
            }
            for g in &gens {
                let prod = int_mat_mul(g, &w);
                if seen.insert(prod.clone()) {
                    queue.push_back(prod);
                }
            }
        }
        self.weyl = seen.into_iter().collect();
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple_root_count(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Weight> {
        self.positive.iter().map(|(r, _)| r)
    }

    pub fn positive_count(&self) -> usize {
        self.positive.len()
    }

    /// The covector 2rho^v (sum of positive coroots).
    pub fn two_rho_covector(&self) -> &[i64] {
        &self.two_rho_covector
    }

    /// The weight 2rho (sum of positive roots).
    pub fn two_rho(&self) -> &Weight {
        &self.two_rho
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    /// Height pairing `<lambda, 2rho^v>`.
    pub fn height(&self, lambda: &Weight) -> i64 {
        lambda.pair(&self.two_rho_covector)
    }

    fn check_rank(&self, lambda: &Weight) -> Result<()> {
        if lambda.rank() != self.rank {
            return Err(Error::ShapeMismatch(format!(
                "weight has rank {} but the datum has rank {}",
                lambda.rank(),
                self.rank
            )));
        }
        Ok(())
    }

    /// True iff `<lambda, alpha^v> >= 0` for each simple coroot.
    pub fn is_dominant(&self, lambda: &Weight) -> Result<bool> {
        self.check_rank(lambda)?;
        Ok(self.simple_coroots.iter().all(|cv| lambda.pair(cv) >= 0))
    }

    /// Coordinates of a weight in the simple-root basis, when the weight
    /// lies in the root lattice (integral coordinates).
    pub fn root_coordinates(&self, v: &Weight) -> Option<Vec<i64>> {
        let s = self.simple_roots.len();
        if s == 0 {
            return if v.0.iter().all(|&c| c == 0) {
                Some(vec![])
            } else {
                None
            };
        }
        let q = FieldSpec::Rationals;
        // Columns are the simple roots.
        let mut m = ExactMatrix::zero(q, self.rank, s);
        for (j, alpha) in self.simple_roots.iter().enumerate() {
            for (i, &c) in alpha.0.iter().enumerate() {
                m.set(i, j, Scalar::from_i64(q, c));
            }
        }
        let b: Vec<Scalar> = v.0.iter().map(|&c| Scalar::from_i64(q, c)).collect();
        let sol = solve_linear(&m, &b).ok()?;
        let x = sol.particular?;
        let mut coords = Vec::with_capacity(s);
        for c in x {
            let text = c.to_string();
            let as_int: i64 = text.parse().ok()?;
            coords.push(as_int);
        }
        Some(coords)
    }

    /// Dominance order: `mu <= lambda` iff `lambda - mu` is a nonnegative
    /// integer combination of simple roots.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        match self.root_coordinates(&lambda.sub(mu)) {
            Some(coords) => coords.iter().all(|&c| c >= 0),
            None => false,
        }
    }

    pub fn dominance_lt(&self, mu: &Weight, lambda: &Weight) -> bool {
        mu != lambda && self.dominance_leq(mu, lambda)
    }

    /// Dominant Weyl conjugate, by iterated simple reflections.
    pub fn dominant_conjugate(&self, lambda: &Weight) -> Weight {
        let mut v = lambda.clone();
        loop {
            let Some(i) = self.simple_coroots.iter().position(|cv| v.pair(cv) < 0) else {
                return v;
            };
            let pairing = v.pair(&self.simple_coroots[i]);
            v = Weight(
                v.0.iter()
                    .zip(&self.simple_roots[i].0)
                    .map(|(a, b)| a - pairing * b)
                    .collect(),
            );
        }
    }

    /// Full Weyl orbit of a weight.
    pub fn weyl_orbit(&self, lambda: &Weight) -> Vec<Weight> {
        let mut orbit: BTreeSet<Vec<i64>> = BTreeSet::new();
        for w in &self.weyl {
            orbit.insert(int_mat_apply(w, &lambda.0));
        }
        orbit.into_iter().map(Weight).collect()
    }

    /// Dimension of the Weyl module via the Weyl dimension formula
    /// `prod <lambda + rho, alpha^v> / <rho, alpha^v>`, computed with the
    /// integral covectors `2(lambda + rho)` and `2rho`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<u64> {
        if !self.is_dominant(lambda)? {
            return Err(Error::invalid(format!("{lambda} is not dominant")));
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (_, coroot) in &self.positive {
            let two_l = 2 * lambda.pair(coroot);
            let two_rho = self.two_rho.pair(coroot);
            num *= BigInt::from(two_l + two_rho);
            den *= BigInt::from(two_rho);
        }
        let q = &num / &den;
        debug_assert_eq!(&q * &den, num);
        q.to_u64()
            .ok_or_else(|| Error::unsupported("Weyl dimension exceeds u64"))
    }

    /// Weyl-invariant pairing used by the Freudenthal recursion:
    /// `B(x, y) = sum over positive coroots of <x, beta^v><y, beta^v>`.
    fn invariant_form(&self, x: &Weight, y: &Weight) -> i64 {
        self.positive
            .iter()
            .map(|(_, cv)| x.pair(cv) * y.pair(cv))
            .sum()
    }

    /// All dominant weights `mu <= lambda`, with the search bounded by the
    /// height of `lambda`.
    pub fn dominant_below(&self, lambda: &Weight) -> Result<Vec<Weight>> {
        if !self.is_dominant(lambda)? {
            return Err(Error::invalid(format!("{lambda} is not dominant")));
        }
        let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        seen.insert(lambda.0.clone());
        queue.push_back(lambda.clone());
        while let Some(v) = queue.pop_front() {
            if self.is_dominant(&v)? {
                found.insert(v.0.clone());
            }
            // Subtracting a simple root lowers <., 2rho^v> by exactly 2, so
            // heights below -<lambda, 2rho^v> cannot return to dominance.
            if self.height(&v) < -self.height(lambda) {
                continue;
            }
            for alpha in &self.simple_roots {
                let next = v.sub(alpha);
                if seen.insert(next.0.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(found.into_iter().map(Weight).collect())
    }

    /// Weight multiplicities of the Weyl module of highest weight `lambda`,
    /// over all weights (not just dominant ones), by the Freudenthal
    /// recursion.
    pub fn weight_multiplicities(&self, lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
        if !self.is_dominant(lambda)? {
            return Err(Error::invalid(format!("{lambda} is not dominant")));
        }
        let mut dominant = self.dominant_below(lambda)?;
        // Process by descending height (lambda first).
        dominant.sort_by_key(|w| (-self.height(w), w.0.clone()));
        let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
        for mu in &dominant {
            if mu == lambda {
                mult.insert(mu.clone(), 1);
                continue;
            }
            let mut numer: i64 = 0;
            for (beta, _) in &self.positive {
                let mut j = 1i64;
                loop {
                    let nu = Weight(mu.0.iter().zip(&beta.0).map(|(a, b)| a + j * b).collect());
                    let nu_dom = self.dominant_conjugate(&nu);
                    let Some(&m) = mult.get(&nu_dom) else { break };
                    numer += (m as i64) * self.invariant_form(&nu, beta);
                    j += 1;
                }
            }
            if numer == 0 {
                continue;
            }
            // Denominator: B(lambda+rho, lambda+rho) - B(mu+rho, mu+rho)
            //            = B(lambda+mu+2rho, lambda-mu).
            let den = self.invariant_form(&lambda.add(mu).add(&self.two_rho), &lambda.sub(mu));
            if den <= 0 || (2 * numer) % den != 0 {
                return Err(Error::check(format!(
                    "Freudenthal recursion is inconsistent at {mu}: 2*{numer}/{den}"
                )));
            }
            let m = (2 * numer / den) as u64;
            if m > 0 {
                mult.insert(mu.clone(), m);
            }
        }
        // Expand over Weyl orbits.
        let mut full: BTreeMap<Weight, u64> = BTreeMap::new();
        for (mu, m) in &mult {
            for nu in self.weyl_orbit(mu) {
                full.insert(nu, *m);
            }
        }
        Ok(full)
    }
}

fn int_mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn int_mat_apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn int_mat_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut det = 0;
    for j in 0..n {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        det += sign * m[0][j] * int_mat_det(&minor);
    }
    det
}

/// Serialized form of a component-group action.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentActionSpec {
    pub group_table: Vec<Vec<usize>>,
    /// One `rank x rank` integer matrix per element, acting on weights.
    pub matrices: Vec<Vec<Vec<i64>>>,
}

/// A finite group acting on the weight lattice, preserving the positive
/// system. Validated on construction.
#[derive(Clone, Debug)]
pub struct ComponentAction {
    group: GroupTable,
    matrices: Vec<Vec<Vec<i64>>>,
}

impl ComponentAction {
    pub fn from_spec(spec: &ComponentActionSpec, datum: &RootDatum) -> Result<ComponentAction> {
        let group = GroupTable::new(spec.group_table.clone())?;
        if spec.matrices.len() != group.order() {
            return Err(Error::invalid(
                "one action matrix required per group element",
            ));
        }
        let rank = datum.rank();
        for m in &spec.matrices {
            if m.len() != rank || m.iter().any(|row| row.len() != rank) {
                return Err(Error::invalid("action matrix has the wrong shape"));
            }
            let det = int_mat_det(m);
            if det != 1 && det != -1 {
                return Err(Error::invalid(format!(
                    "action matrix has determinant {det}, not invertible over Z"
                )));
            }
        }
        let id: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        if spec.matrices[0] != id {
            return Err(Error::invalid("identity element must act by the identity"));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let prod = int_mat_mul(&spec.matrices[a], &spec.matrices[b]);
                if prod != spec.matrices[group.mul(a, b)] {
                    return Err(Error::invalid(format!(
                        "matrices do not define a homomorphism at ({a},{b})"
                    )));
                }
            }
        }
        // Each matrix must permute the positive roots (rejected otherwise,
        // never symmetrized).
        let positives: BTreeSet<Vec<i64>> = datum.positive_roots().map(|r| r.0.clone()).collect();
        for (a, m) in spec.matrices.iter().enumerate() {
            let image: BTreeSet<Vec<i64>> = positives.iter().map(|r| int_mat_apply(m, r)).collect();
            if image != positives {
                return Err(Error::invalid(format!(
                    "element {a} does not preserve the positive roots"
                )));
            }
        }
        Ok(ComponentAction {
            group,
            matrices: spec.matrices.clone(),
        })
    }

    /// Trivial action of the trivial group.
    pub fn trivial(rank: usize) -> ComponentAction {
        let id: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        ComponentAction {
            group: GroupTable::cyclic(1),
            matrices: vec![id],
        }
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `a . lambda`, the action of an element on a weight.
    pub fn act(&self, a: usize, lambda: &Weight) -> Result<Weight> {
        if a >= self.group.order() {
            return Err(Error::invalid(format!("invalid element id {a}")));
        }
        Ok(Weight(int_mat_apply(&self.matrices[a], &lambda.0)))
    }

    /// Orbit (in lexicographic order) and stabilizer subgroup of a dominant
    /// weight.
    pub fn orbit_and_stabilizer(
        &self,
        datum: &RootDatum,
        lambda: &Weight,
    ) -> Result<(Vec<Weight>, Vec<usize>)> {
        if !datum.is_dominant(lambda)? {
            return Err(Error::invalid(format!("{lambda} is not dominant")));
        }
        let mut orbit: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut stabilizer = Vec::new();
        for a in 0..self.group.order() {
            let image = self.act(a, lambda)?;
            if &image == lambda {
                stabilizer.push(a);
            }
            orbit.insert(image.0);
        }
        assert_eq!(
            orbit.len() * stabilizer.len(),
            self.group.order(),
            "orbit-stabilizer bookkeeping"
        );
        Ok((orbit.into_iter().map(Weight).collect(), stabilizer))
    }

    /// Some `a` with `a.lambda` strictly below `lambda2` in dominance
    /// order, if one exists (smallest element id wins).
    pub fn order_strict_weight_witness(
        &self,
        datum: &RootDatum,
        lambda: &Weight,
        lambda2: &Weight,
    ) -> Result<Option<usize>> {
        for a in 0..self.group.order() {
            let image = self.act(a, lambda)?;
            if datum.dominance_lt(&image, lambda2) {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }
}
