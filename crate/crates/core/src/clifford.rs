//! Factor sets (2-cocycles) on stabilizer subgroups, the twisted group
//! algebras they define, enumeration of their simple modules, and the
//! conjugation transport that moves all of this along the component-group
//! action on dominant weights.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraModule, StructureConstantAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::GroupTable;
use crate::rootdata::{ComponentAction, RootDatum, Weight};

/// A 2-cocycle `alpha : A x A -> k^x` on a finite group, stored as a full
/// value table. Zero values are rejected at construction; the normalization
/// and cocycle identities are checked by [`FactorSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    group: GroupTable,
    values: Vec<Vec<Scalar>>,
}

/// First violation found by [`FactorSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleViolation {
    /// `alpha(1,a) != 1` or `alpha(a,1) != 1`.
    Normalization { a: usize },
    /// `alpha(a,b) alpha(ab,c) != alpha(a,bc) alpha(b,c)`.
    Identity { a: usize, b: usize, c: usize },
}

impl std::fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CocycleViolation::Normalization { a } => {
                write!(f, "normalization fails at element {a}")
            }
            CocycleViolation::Identity { a, b, c } => {
                write!(f, "cocycle identity fails at triple ({a},{b},{c})")
            }
        }
    }
}

impl FactorSet {
    pub fn new(group: GroupTable, values: Vec<Vec<Scalar>>) -> Result<FactorSet> {
        let n = group.order();
        if values.len() != n || values.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeMismatch(
                "factor set table does not match the group order".into(),
            ));
        }
        for row in &values {
            for v in row {
                if v.is_zero() {
                    return Err(Error::invalid("factor set contains a zero value"));
                }
            }
        }
        Ok(FactorSet { group, values })
    }

    pub fn trivial(group: GroupTable, field: FieldSpec) -> FactorSet {
        let n = group.order();
        FactorSet {
            group,
            values: vec![vec![Scalar::one(field); n]; n],
        }
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn field(&self) -> FieldSpec {
        self.values[0][0].field()
    }

    pub fn value(&self, a: usize, b: usize) -> &Scalar {
        &self.values[a][b]
    }

    /// Checks normalization and the cocycle identity over all triples;
    /// reports the first violation.
    pub fn validate(&self) -> Option<CocycleViolation> {
        let n = self.group.order();
        let one = Scalar::one(self.field());
        for a in 0..n {
            if self.values[0][a] != one || self.values[a][0] != one {
                return Some(CocycleViolation::Normalization { a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.group.mul(a, b);
                for c in 0..n {
                    let bc = self.group.mul(b, c);
                    let lhs = &self.values[a][b] * &self.values[ab][c];
                    let rhs = &self.values[a][bc] * &self.values[b][c];
                    if lhs != rhs {
                        return Some(CocycleViolation::Identity { a, b, c });
                    }
                }
            }
        }
        None
    }

    /// Rescale by a coboundary: `alpha'(a,b) = alpha(a,b) t(a) t(b) /
    /// t(ab)`, for `t` with `t(1) = 1`. The map `rho'_a -> t(a) rho_a`
    /// intertwines the two twisted algebras.
    pub fn coboundary_rescale(&self, t: &[Scalar]) -> Result<FactorSet> {
        let n = self.group.order();
        if t.len() != n {
            return Err(Error::ShapeMismatch(
                "rescaling vector does not match the group order".into(),
            ));
        }
        if !t[0].is_one() {
            return Err(Error::invalid("rescaling must satisfy t(1) = 1"));
        }
        if t.iter().any(Scalar::is_zero) {
            return Err(Error::invalid("rescaling values must be nonzero"));
        }
        let mut values = self.values.clone();
        for a in 0..n {
            for b in 0..n {
                let ab = self.group.mul(a, b);
                let scale = &(&t[a] * &t[b]) * &t[ab].inv().unwrap();
                values[a][b] = &values[a][b] * &scale;
            }
        }
        Ok(FactorSet {
            group: self.group.clone(),
            values,
        })
    }
}

/// The twisted group algebra with basis `{rho_a}` and multiplication
/// `rho_a rho_b = alpha(a,b) rho_{ab}`. Construction re-verifies the
/// cocycle identity, which is equivalent to associativity.
#[derive(Clone, Debug)]
pub struct TwistedGroupAlgebra {
    factor_set: FactorSet,
    algebra: StructureConstantAlgebra,
}

impl TwistedGroupAlgebra {
    pub fn new(factor_set: FactorSet) -> Result<TwistedGroupAlgebra> {
        if let Some(violation) = factor_set.validate() {
            return Err(Error::invalid(format!("invalid factor set: {violation}")));
        }
        let n = factor_set.group.order();
        let field = factor_set.field();
        let mult = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| vec![(factor_set.group.mul(a, b), factor_set.values[a][b].clone())])
                    .collect()
            })
            .collect();
        let mut unit = vec![Scalar::zero(field); n];
        unit[0] = Scalar::one(field);
        let algebra = StructureConstantAlgebra::new(field, mult, unit);
        debug_assert!(algebra.associativity_violation().is_none());
        Ok(TwistedGroupAlgebra {
            factor_set,
            algebra,
        })
    }

    pub fn factor_set(&self) -> &FactorSet {
        &self.factor_set
    }

    pub fn group(&self) -> &GroupTable {
        &self.factor_set.group
    }

    pub fn field(&self) -> FieldSpec {
        self.factor_set.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &StructureConstantAlgebra {
        &self.algebra
    }

    /// Pairwise non-isomorphic simple modules, sorted by (dim, trace
    /// vector); `sum(dim^2) = |A|` certifies that the field splits the
    /// algebra.
    ///
    /// The modular case (characteristic dividing the group order) is
    /// rejected. Over the rationals the computation is only attempted when
    /// every cocycle value is `+-1`; otherwise the caller must supply a
    /// finite splitting field.
    pub fn simple_modules(&self, seed: u64) -> Result<Vec<AlgebraModule>> {
        let order = self.factor_set.group.order() as u64;
        let field = self.field();
        let p = field.characteristic();
        if p != 0 && order.is_multiple_of(p) {
            return Err(Error::ModularCase {
                characteristic: p,
                order,
            });
        }
        match field {
            FieldSpec::Finite { .. } => {}
            FieldSpec::Rationals => {
                let one = Scalar::one(field);
                let minus_one = -&one;
                let plus_minus = self
                    .factor_set
                    .values
                    .iter()
                    .flatten()
                    .all(|v| *v == one || *v == minus_one);
                if !plus_minus {
                    return Err(Error::unsupported(
                        "over the rationals only +-1 factor sets are attempted; supply a finite splitting field",
                    ));
                }
            }
            FieldSpec::Cyclotomic { .. } => {
                return Err(Error::unsupported(
                    "twisted group algebras over cyclotomic fields are not supported; use a finite splitting field",
                ));
            }
        }
        self.algebra.simple_modules(seed)
    }
}

/// Serialized factor set: a grid of scalar-grammar strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorSetSpec {
    pub values: Vec<Vec<String>>,
}

impl FactorSetSpec {
    /// Parse the value grid into a concrete field. Over finite fields the
    /// symbol `z` denotes the canonical root of unity whose order is the
    /// exponent of the group (matching the cross-characteristic
    /// convention); over cyclotomic fields it is the field's generator.
    pub fn parse(&self, group: GroupTable, field: FieldSpec) -> Result<FactorSet> {
        let exponent = group.exponent();
        let values = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_cocycle_value(field, exponent, s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FactorSet::new(group, values)
    }
}

fn parse_cocycle_value(field: FieldSpec, exponent: u64, text: &str) -> Result<Scalar> {
    let t = text.trim();
    let (negate, t) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    let is_z_power = t == "z" || t.starts_with("z^");
    if is_z_power && field.is_finite() {
        let power: u64 = if t == "z" {
            1
        } else {
            t[2..]
                .parse()
                .map_err(|_| Error::invalid(format!("bad root-of-unity power in {text:?}")))?
        };
        let z = crate::field::root_of_unity(field, exponent)?;
        let v = z.pow(power);
        return Ok(if negate { -&v } else { v });
    }
    Scalar::parse(field, text)
}

/// Transport of a factor set along the component-group action: the target
/// lives on the conjugate stabilizer, with basis map
/// `rho_b -> rho~_{a b a^{-1}}`.
#[derive(Clone, Debug)]
pub struct ConjugationIso {
    /// Element ids (in A) of the source stabilizer, ascending.
    pub source_ids: Vec<usize>,
    /// Element ids (in A) of the target stabilizer, ascending.
    pub target_ids: Vec<usize>,
    /// Factor set on the target stabilizer (in its own labelling).
    pub target: FactorSet,
    /// Position map: source position of `b` to target position of
    /// `a b a^{-1}`.
    pub basis_map: Vec<usize>,
}

/// Compute the transported factor set on `A^{a.lambda} = a A^lambda a^{-1}`
/// with values `alpha~(a c a^{-1}, a b a^{-1}) = alpha(c, b)`.
pub fn conjugation_iso(
    action: &ComponentAction,
    datum: &RootDatum,
    lambda: &Weight,
    a: usize,
    source: &FactorSet,
) -> Result<ConjugationIso> {
    let (_, stab) = action.orbit_and_stabilizer(datum, lambda)?;
    if source.group.order() != stab.len() {
        return Err(Error::ShapeMismatch(
            "factor set does not live on the stabilizer of lambda".into(),
        ));
    }
    let image = action.act(a, lambda)?;
    let (_, target_stab) = action.orbit_and_stabilizer(datum, &image)?;
    let conj: Vec<usize> = stab
        .iter()
        .map(|&b| {
            action
                .group()
                .mul(action.group().mul(a, b), action.group().inverse(a))
        })
        .collect();
    // a A^lambda a^{-1} = A^{a lambda}.
    let mut sorted_conj = conj.clone();
    sorted_conj.sort_unstable();
    if sorted_conj != target_stab {
        return Err(Error::check(
            "conjugated stabilizer does not match the stabilizer of the image weight",
        ));
    }
    let basis_map: Vec<usize> = conj
        .iter()
        .map(|x| target_stab.iter().position(|y| y == x).unwrap())
        .collect();
    let (target_table, _) = subgroup_table_of(action.group(), &target_stab)?;
    let n = stab.len();
    let field = source.field();
    let mut values = vec![vec![Scalar::one(field); n]; n];
    // alpha~(x, y) = alpha(a^{-1} x a, a^{-1} y a) in stabilizer positions:
    // target position basis_map[c], basis_map[b] receives alpha(c, b).
    for c in 0..n {
        for b in 0..n {
            values[basis_map[c]][basis_map[b]] = source.values[c][b].clone();
        }
    }
    let target = FactorSet::new(target_table, values)?;
    Ok(ConjugationIso {
        source_ids: stab,
        target_ids: target_stab,
        target,
        basis_map,
    })
}

/// Transport a simple module along [`conjugation_iso`]: the new action of
/// `rho~_{a b a^{-1}}` is the old action of `rho_b`. Returns the image
/// weight and the transported module.
pub fn act_on_pairs(
    action: &ComponentAction,
    datum: &RootDatum,
    lambda: &Weight,
    a: usize,
    source: &FactorSet,
    module: &AlgebraModule,
) -> Result<(Weight, FactorSet, AlgebraModule)> {
    if module.action.len() != source.group.order() {
        return Err(Error::ShapeMismatch(
            "module does not match the factor set's group".into(),
        ));
    }
    let iso = conjugation_iso(action, datum, lambda, a, source)?;
    let image = action.act(a, lambda)?;
    let n = source.group.order();
    let mut target_action = vec![None; n];
    for b in 0..n {
        target_action[iso.basis_map[b]] = Some(module.action[b].clone());
    }
    let target_action: Vec<_> = target_action.into_iter().map(Option::unwrap).collect();
    let trace_vector = target_action
        .iter()
        .map(crate::matrix::ExactMatrix::trace)
        .collect();
    let transported = AlgebraModule {
        dim: module.dim,
        action: target_action,
        trace_vector,
    };
    Ok((image, iso.target, transported))
}

fn subgroup_table_of(group: &GroupTable, ids: &[usize]) -> Result<(GroupTable, Vec<usize>)> {
    group.subgroup_table(ids)
}

/// The Pauli-type factor set on Z/2 x Z/2 used across the test suite:
/// writing elements as x^i y^j, `alpha(a, b) = (-1)^((i1 + j1) * i2)`.
/// Cohomologically nontrivial; its twisted algebra is 2 x 2 matrices.
pub fn pauli_factor_set(field: FieldSpec) -> FactorSet {
    let table = vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ];
    let group = GroupTable::new(table).unwrap();
    let one = Scalar::one(field);
    let neg = -&one;
    let bits = [(0i64, 0i64), (1, 0), (0, 1), (1, 1)];
    let values = (0..4)
        .map(|a| {
            (0..4)
                .map(|b| {
                    let (i1, j1) = bits[a];
                    let (i2, _) = bits[b];
                    if ((i1 + j1) * i2) % 2 == 1 {
                        neg.clone()
                    } else {
                        one.clone()
                    }
                })
                .collect()
        })
        .collect();
    FactorSet::new(group, values).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::finite(p, 1).unwrap()
    }

    #[test]
    fn trivial_factor_set_is_valid() {
        let fs = FactorSet::trivial(GroupTable::cyclic(2), f(5));
        assert_eq!(fs.validate(), None);
    }

    #[test]
    fn pauli_table_is_a_cocycle() {
        // Exhaustive 64-triple check through validate().
        let fs = pauli_factor_set(f(5));
        assert_eq!(fs.validate(), None);
    }

    #[test]
    fn corrupted_table_reports_the_triple() {
        let mut values = vec![vec![Scalar::one(f(5)); 3]; 3];
        values[1][1] = Scalar::from_i64(f(5), 2);
        let fs = FactorSet::new(GroupTable::cyclic(3), values).unwrap();
        match fs.validate() {
            Some(CocycleViolation::Identity { .. }) => {}
            other => panic!("expected a cocycle violation, got {other:?}"),
        }
    }

    #[test]
    fn zero_values_are_rejected() {
        let values = vec![
            vec![Scalar::one(f(5)), Scalar::one(f(5))],
            vec![Scalar::one(f(5)), Scalar::zero(f(5))],
        ];
        assert!(FactorSet::new(GroupTable::cyclic(2), values).is_err());
    }

    #[test]
    fn associativity_iff_cocycle_identity() {
        // Both directions, on seeded random tables over F_7.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let group = GroupTable::cyclic(3);
        for _ in 0..40 {
            let mut values = vec![vec![Scalar::one(f(7)); 3]; 3];
            for a in 0..3 {
                for b in 0..3 {
                    if a == 0 || b == 0 {
                        continue;
                    }
                    values[a][b] = Scalar::from_i64(f(7), rng.gen_range(1..7));
                }
            }
            let fs = FactorSet::new(group.clone(), values).unwrap();
            let n = group.order();
            let field = fs.field();
            let mult: Vec<Vec<Vec<(usize, Scalar)>>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| vec![(group.mul(a, b), fs.value(a, b).clone())])
                        .collect()
                })
                .collect();
            let mut unit = vec![Scalar::zero(field); n];
            unit[0] = Scalar::one(field);
            let alg = StructureConstantAlgebra::new(field, mult, unit);
            assert_eq!(
                fs.validate().is_none(),
                alg.associativity_violation().is_none()
            );
        }
    }

    #[test]
    fn coboundary_rescale_examples() {
        let fs = FactorSet::trivial(GroupTable::cyclic(2), f(5));
        // t = 1 leaves the table unchanged.
        let t = vec![Scalar::one(f(5)), Scalar::one(f(5))];
        assert_eq!(fs.coboundary_rescale(&t).unwrap(), fs);
        // t(s) = c turns alpha(s,s) into c^2.
        let c = Scalar::from_i64(f(5), 3);
        let t = vec![Scalar::one(f(5)), c.clone()];
        let rescaled = fs.coboundary_rescale(&t).unwrap();
        assert_eq!(*rescaled.value(1, 1), &c * &c);
        assert_eq!(rescaled.validate(), None);
        // Coboundaries always preserve the cocycle identity.
        let pauli = pauli_factor_set(f(5));
        let t = vec![
            Scalar::one(f(5)),
            Scalar::from_i64(f(5), 2),
            Scalar::from_i64(f(5), 4),
            Scalar::from_i64(f(5), 3),
        ];
        assert_eq!(pauli.coboundary_rescale(&t).unwrap().validate(), None);
    }

    #[test]
    fn simple_modules_of_twisted_algebras() {
        // Z/2, trivial alpha over F_5: two 1-dim simples acting by +-1.
        let alg =
            TwistedGroupAlgebra::new(FactorSet::trivial(GroupTable::cyclic(2), f(5))).unwrap();
        let simples = alg.simple_modules(0).unwrap();
        assert_eq!(simples.len(), 2);
        let acts: Vec<Scalar> = simples
            .iter()
            .map(|m| m.action[1].get(0, 0).clone())
            .collect();
        assert_eq!(
            acts,
            vec![Scalar::from_i64(f(5), 1), Scalar::from_i64(f(5), 4)]
        );

        // Pauli type over F_5: exactly one simple of dimension 2.
        let alg = TwistedGroupAlgebra::new(pauli_factor_set(f(5))).unwrap();
        let simples = alg.simple_modules(0).unwrap();
        assert_eq!(simples.len(), 1);
        assert_eq!(simples[0].dim, 2);

        // Z/3, trivial alpha over F_7: cube roots of unity.
        let alg =
            TwistedGroupAlgebra::new(FactorSet::trivial(GroupTable::cyclic(3), f(7))).unwrap();
        let simples = alg.simple_modules(0).unwrap();
        assert_eq!(simples.len(), 3);
        let mut acts: Vec<Scalar> = simples
            .iter()
            .map(|m| m.action[1].get(0, 0).clone())
            .collect();
        acts.sort_by_key(Scalar::sort_key);
        assert_eq!(
            acts,
            vec![
                Scalar::from_i64(f(7), 1),
                Scalar::from_i64(f(7), 2),
                Scalar::from_i64(f(7), 4)
            ]
        );
    }

    #[test]
    fn modular_case_is_rejected() {
        let alg =
            TwistedGroupAlgebra::new(FactorSet::trivial(GroupTable::cyclic(5), f(5))).unwrap();
        assert!(matches!(
            alg.simple_modules(0),
            Err(Error::ModularCase { .. })
        ));
    }

    #[test]
    fn rationals_require_sign_cocycles() {
        let group = GroupTable::cyclic(2);
        let q = FieldSpec::Rationals;
        let ok = TwistedGroupAlgebra::new(FactorSet::trivial(group.clone(), q)).unwrap();
        assert_eq!(ok.simple_modules(0).unwrap().len(), 2);
        let mut values = vec![vec![Scalar::one(q); 2]; 2];
        values[1][1] = Scalar::from_i64(q, 4);
        let fs = FactorSet::new(group, values).unwrap();
        let alg = TwistedGroupAlgebra::new(fs).unwrap();
        assert!(matches!(alg.simple_modules(0), Err(Error::Unsupported(_))));
    }

    fn swap_action_on_a1xa1() -> (RootDatum, ComponentAction) {
        let datum = crate::presets::root_datum("a1xa1").unwrap();
        let action = ComponentAction::from_spec(
            &crate::rootdata::ComponentActionSpec {
                group_table: vec![vec![0, 1], vec![1, 0]],
                matrices: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]],
            },
            &datum,
        )
        .unwrap();
        (datum, action)
    }

    #[test]
    fn conjugation_by_identity_is_identity() {
        let (datum, action) = swap_action_on_a1xa1();
        let lambda = Weight(vec![2, 2]);
        let fs = FactorSet::trivial(GroupTable::cyclic(2), f(5));
        let iso = conjugation_iso(&action, &datum, &lambda, 0, &fs).unwrap();
        assert_eq!(iso.basis_map, vec![0, 1]);
        assert_eq!(iso.target, fs);
    }

    #[test]
    fn conjugation_moves_stabilizers() {
        let (datum, action) = swap_action_on_a1xa1();
        // lambda = (2,1) has trivial stabilizer; the swap sends it to (1,2).
        let lambda = Weight(vec![2, 1]);
        let fs = FactorSet::trivial(GroupTable::cyclic(1), f(5));
        let iso = conjugation_iso(&action, &datum, &lambda, 1, &fs).unwrap();
        assert_eq!(iso.source_ids, vec![0]);
        assert_eq!(iso.target_ids, vec![0]);
        assert_eq!(iso.target.validate(), None);
    }

    #[test]
    fn stabilizer_elements_fix_module_classes() {
        // For a in the (abelian) stabilizer, transport is the identity on
        // isomorphism classes, read off from trace vectors.
        let (datum, action) = swap_action_on_a1xa1();
        let lambda = Weight(vec![2, 2]);
        let fs = FactorSet::trivial(GroupTable::cyclic(2), f(5));
        let alg = TwistedGroupAlgebra::new(fs.clone()).unwrap();
        for module in alg.simple_modules(0).unwrap() {
            let (image, target_fs, transported) =
                act_on_pairs(&action, &datum, &lambda, 1, &fs, &module).unwrap();
            assert_eq!(image, lambda);
            assert_eq!(target_fs, fs);
            assert_eq!(transported.trace_vector, module.trace_vector);
        }
    }

    #[test]
    fn conjugation_composition_is_exact() {
        let (datum, action) = swap_action_on_a1xa1();
        let lambda = Weight(vec![3, 1]);
        let fs = FactorSet::trivial(GroupTable::cyclic(1), f(5));
        // Transport by 1 then by 1 equals transport by the product 1*1 = 0.
        let step1 = conjugation_iso(&action, &datum, &lambda, 1, &fs).unwrap();
        let mu = action.act(1, &lambda).unwrap();
        let step2 = conjugation_iso(&action, &datum, &mu, 1, &step1.target).unwrap();
        let direct = conjugation_iso(&action, &datum, &lambda, 0, &fs).unwrap();
        assert_eq!(step2.target, direct.target);
    }

    #[test]
    fn rescaling_preserves_dimension_multiset_and_traces() {
        let pauli = pauli_factor_set(f(5));
        let alg = TwistedGroupAlgebra::new(pauli.clone()).unwrap();
        let simples = alg.simple_modules(0).unwrap();
        let t = vec![
            Scalar::one(f(5)),
            Scalar::from_i64(f(5), 2),
            Scalar::from_i64(f(5), 3),
            Scalar::from_i64(f(5), 4),
        ];
        let rescaled = TwistedGroupAlgebra::new(pauli.coboundary_rescale(&t).unwrap()).unwrap();
        let simples2 = rescaled.simple_modules(0).unwrap();
        let dims: Vec<usize> = simples.iter().map(|m| m.dim).collect();
        let dims2: Vec<usize> = simples2.iter().map(|m| m.dim).collect();
        assert_eq!(dims, dims2);
        // After applying rho'_a -> t_a rho_a the trace vectors agree up to
        // the rescaling: tr' (rho'_a) = t_a tr(rho_a).
        for m2 in &simples2 {
            let adjusted: Vec<Scalar> = m2
                .trace_vector
                .iter()
                .zip(&t)
                .map(|(tr, ta)| &(ta.inv().unwrap()) * tr)
                .collect();
            assert!(simples.iter().any(|m| m.trace_vector == adjusted));
        }
    }
}
