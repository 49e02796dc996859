//! The brute-force oracle: a finite group `G` with normal subgroup `G°` and
//! a chosen section of the component group, over an exact finite field of
//! characteristic prime to `|G|`. Every Clifford-theoretic construction is
//! realized with explicit matrices here (twists, induction in two
//! independent models, intertwiners, cocycle extraction, twisted-algebra
//! modules, induced labels), so each identity is checked against plain
//! linear algebra instead of being trusted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraModule, StructureConstantAlgebra};
use crate::clifford::{FactorSet, TwistedGroupAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::group::GroupTable;
use crate::matrix::{intertwiner_space, ExactMatrix, RowSpan};

/// Serialized fixture: multiplication table, normal subgroup ids, section
/// map, field spec.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteModelSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub field: FieldSpec,
    pub table: Vec<Vec<usize>>,
    pub normal_subgroup: Vec<usize>,
    pub section: Vec<usize>,
}

/// A finite group with a distinguished normal subgroup playing the role of
/// the identity component, a section of the component group, and the factor
/// set `gamma(a,b) = section(ab)^{-1} section(a) section(b)` it defines.
#[derive(Clone, Debug)]
pub struct FiniteModel {
    name: String,
    field: FieldSpec,
    group: GroupTable,
    normal_ids: Vec<usize>,
    component: GroupTable,
    coset_label: Vec<usize>,
    section: Vec<usize>,
    gamma: Vec<Vec<usize>>,
}

impl FiniteModel {
    pub fn from_spec(spec: &FiniteModelSpec) -> Result<FiniteModel> {
        spec.field.validate()?;
        let group = GroupTable::new(spec.table.clone())?;
        let mut normal_ids = spec.normal_subgroup.clone();
        normal_ids.sort_unstable();
        normal_ids.dedup();
        if !group.is_normal(&normal_ids) {
            return Err(Error::invalid(
                "distinguished subgroup is not normal in the group",
            ));
        }
        let p = spec.field.characteristic();
        if p != 0 && (group.order() as u64).is_multiple_of(p) {
            return Err(Error::ModularCase {
                characteristic: p,
                order: group.order() as u64,
            });
        }
        let (component, coset_label) = group.quotient(&normal_ids)?;
        if spec.section.len() != component.order() {
            return Err(Error::invalid(format!(
                "section has {} entries but the component group has order {}",
                spec.section.len(),
                component.order()
            )));
        }
        if spec.section[0] != 0 {
            return Err(Error::invalid("section must send the identity coset to 1"));
        }
        for (a, &rep) in spec.section.iter().enumerate() {
            if rep >= group.order() || coset_label[rep] != a {
                return Err(Error::invalid(format!(
                    "section image {rep} does not lie in coset {a}"
                )));
            }
        }
        // gamma(a,b) = section(ab)^{-1} section(a) section(b), always in the
        // normal subgroup.
        let m = component.order();
        let mut gamma = vec![vec![0usize; m]; m];
        for a in 0..m {
            for b in 0..m {
                let ab = component.mul(a, b);
                let value = group.mul(
                    group.inverse(spec.section[ab]),
                    group.mul(spec.section[a], spec.section[b]),
                );
                if !normal_ids.contains(&value) {
                    return Err(Error::invalid(format!(
                        "gamma({a},{b}) lies outside the normal subgroup"
                    )));
                }
                gamma[a][b] = value;
            }
        }
        let model = FiniteModel {
            name: spec.name.clone(),
            field: spec.field,
            group,
            normal_ids,
            component,
            coset_label,
            section: spec.section.clone(),
            gamma,
        };
        model.check_gamma_product()?;
        Ok(model)
    }

    /// The product identity
    /// `gamma(ab,c) ad(section(c)^{-1})(gamma(a,b)) = gamma(a,bc) gamma(b,c)`
    /// over all triples.
    fn check_gamma_product(&self) -> Result<()> {
        let m = self.component.order();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let ab = self.component.mul(a, b);
                    let bc = self.component.mul(b, c);
                    let iota_c_inv = self.group.inverse(self.section[c]);
                    let conj = self.group.mul(
                        self.group.mul(iota_c_inv, self.gamma[a][b]),
                        self.section[c],
                    );
                    let lhs = self.group.mul(self.gamma[ab][c], conj);
                    let rhs = self.group.mul(self.gamma[a][bc], self.gamma[b][c]);
                    if lhs != rhs {
                        return Err(Error::check(format!(
                            "gamma product identity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn component(&self) -> &GroupTable {
        &self.component
    }

    pub fn normal_ids(&self) -> &[usize] {
        &self.normal_ids
    }

    pub fn section(&self, a: usize) -> usize {
        self.section[a]
    }

    pub fn gamma(&self, a: usize, b: usize) -> usize {
        self.gamma[a][b]
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_label[g]
    }

    /// Unique decomposition `g = section(a) h` with `h` in the normal
    /// subgroup.
    pub fn decompose(&self, g: usize) -> (usize, usize) {
        let a = self.coset_label[g];
        let h = self.group.mul(self.group.inverse(self.section[a]), g);
        debug_assert!(self.normal_ids.contains(&h));
        (a, h)
    }

    /// Global element ids of the preimage of a component subgroup.
    pub fn component_preimage(&self, component_ids: &[usize]) -> Vec<usize> {
        self.group
            .elements()
            .filter(|&g| component_ids.contains(&self.coset_label[g]))
            .collect()
    }

    /// Generators (global ids) of the subgroup spanned by a carrier set;
    /// the trivial subgroup reports the identity so operator families are
    /// never empty.
    pub fn carrier_generators(&self, carrier: &[usize]) -> Vec<usize> {
        let (table, ids) = self
            .group
            .subgroup_table(carrier)
            .expect("carrier sets are subgroups");
        let gens: Vec<usize> = table.generators().into_iter().map(|i| ids[i]).collect();
        if gens.is_empty() {
            vec![0]
        } else {
            gens
        }
    }
}

/// A representation of a subgroup of the model's group, stored per element
/// (the groups in scope are tiny). The carrier lists the global element ids,
/// ascending.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    carrier: Vec<usize>,
    position: BTreeMap<usize, usize>,
    matrices: Vec<ExactMatrix>,
    dim: usize,
}

impl MatrixRep {
    /// Build and validate: the matrices must satisfy the multiplication
    /// table of the carrier subgroup and send the identity to the identity
    /// (which forces invertibility).
    pub fn new(
        group: &GroupTable,
        carrier: Vec<usize>,
        matrices: Vec<ExactMatrix>,
    ) -> Result<MatrixRep> {
        if carrier.len() != matrices.len() {
            return Err(Error::ShapeMismatch(
                "one matrix required per carrier element".into(),
            ));
        }
        if carrier.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("carrier ids must be ascending"));
        }
        let dim = matrices.first().map_or(0, ExactMatrix::rows);
        let position: BTreeMap<usize, usize> =
            carrier.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        if !position.contains_key(&0) {
            return Err(Error::invalid("carrier must contain the identity"));
        }
        let rep = MatrixRep {
            carrier,
            position,
            matrices,
            dim,
        };
        if !rep.of(0).is_identity() {
            return Err(Error::invalid("identity must act as the identity matrix"));
        }
        for &x in &rep.carrier {
            for &y in &rep.carrier {
                let xy = group.mul(x, y);
                if !rep.position.contains_key(&xy) {
                    return Err(Error::invalid("carrier is not closed under products"));
                }
                if rep.of(x).matmul(rep.of(y)) != *rep.of(xy) {
                    return Err(Error::invalid(format!(
                        "matrices violate the multiplication table at ({x},{y})"
                    )));
                }
            }
        }
        Ok(rep)
    }

    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn of(&self, g: usize) -> &ExactMatrix {
        &self.matrices[self.position[&g]]
    }

    pub fn trace_vector(&self) -> Vec<Scalar> {
        self.matrices.iter().map(ExactMatrix::trace).collect()
    }

    /// Restriction to a sub-carrier.
    pub fn restrict(&self, sub: &[usize]) -> MatrixRep {
        let mut sub = sub.to_vec();
        sub.sort_unstable();
        let matrices = sub.iter().map(|g| self.of(*g).clone()).collect();
        let position = sub.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        MatrixRep {
            carrier: sub,
            position,
            matrices,
            dim: self.dim,
        }
    }

    pub fn sort_key(&self) -> (usize, Vec<crate::field::ScalarKey>) {
        (
            self.dim,
            self.trace_vector().iter().map(Scalar::sort_key).collect(),
        )
    }
}

/// Twist a representation by an automorphism of its carrier, given as a
/// full permutation of global ids: the new action of `g` is the old action
/// of `phi^{-1}(g)`.
pub fn twist_rep(group: &GroupTable, rep: &MatrixRep, phi: &[usize]) -> Result<MatrixRep> {
    if phi.len() != group.order() {
        return Err(Error::ShapeMismatch(
            "automorphism map has wrong length".into(),
        ));
    }
    if phi[0] != 0 {
        return Err(Error::invalid("automorphism must fix the identity"));
    }
    // Check bijectivity on the carrier and the homomorphism property there.
    let mut image: Vec<usize> = rep.carrier.iter().map(|&g| phi[g]).collect();
    image.sort_unstable();
    if image != rep.carrier {
        return Err(Error::invalid("map does not permute the carrier"));
    }
    for &x in &rep.carrier {
        for &y in &rep.carrier {
            if phi[group.mul(x, y)] != group.mul(phi[x], phi[y]) {
                return Err(Error::invalid(format!(
                    "map is not an automorphism at ({x},{y})"
                )));
            }
        }
    }
    let mut inverse = vec![0usize; group.order()];
    for g in 0..group.order() {
        inverse[phi[g]] = g;
    }
    let matrices = rep
        .carrier
        .iter()
        .map(|&g| rep.of(inverse[g]).clone())
        .collect();
    MatrixRep::new(group, rep.carrier.clone(), matrices)
}

/// The conjugation automorphism `x -> g x g^{-1}` as a full permutation.
pub fn conjugation_automorphism(group: &GroupTable, g: usize) -> Vec<usize> {
    group.elements().map(|x| group.conjugate(g, x)).collect()
}

/// Explicit induced module `k[S] (x) V` from the normal subgroup up to the
/// preimage of a component subgroup `S`, with the action
/// `section(a) g . (f (x) v) = af (x) gamma(a,f) ad(section(f)^{-1})(g) v`.
pub fn induce_tensor(model: &FiniteModel, rep: &MatrixRep, within: &[usize]) -> Result<MatrixRep> {
    if rep.carrier() != model.normal_ids() {
        return Err(Error::invalid(
            "tensor-model induction starts from the identity component",
        ));
    }
    let mut blocks = within.to_vec();
    blocks.sort_unstable();
    if !model.component_subgroup_check(&blocks) {
        return Err(Error::invalid(
            "induction range is not a subgroup of the component group",
        ));
    }
    let carrier = model.component_preimage(&blocks);
    let dim = rep.dim();
    let field = model.field();
    let block_pos = |a: usize| blocks.iter().position(|&b| b == a);
    let mut matrices = Vec::with_capacity(carrier.len());
    for &x in &carrier {
        let (a, g) = model.decompose(x);
        let mut m = ExactMatrix::zero(field, blocks.len() * dim, blocks.len() * dim);
        for (col, &f) in blocks.iter().enumerate() {
            let af = model.component().mul(a, f);
            let row = block_pos(af).ok_or_else(|| {
                Error::invalid("induction range is not closed under the acting cosets")
            })?;
            // gamma(a,f) * ad(section(f)^{-1})(g), an element of the normal
            // subgroup.
            let iota_f = model.section(f);
            let conj = model
                .group()
                .mul(model.group().mul(model.group().inverse(iota_f), g), iota_f);
            let inner = model.group().mul(model.gamma(a, f), conj);
            let block = rep.of(inner);
            for r in 0..dim {
                for c in 0..dim {
                    let v = block.get(r, c);
                    if !v.is_zero() {
                        m.set(row * dim + r, col * dim + c, v.clone());
                    }
                }
            }
        }
        matrices.push(m);
    }
    MatrixRep::new(model.group(), carrier, matrices)
}

impl FiniteModel {
    fn component_subgroup_check(&self, ids: &[usize]) -> bool {
        self.component.is_subgroup(ids)
    }
}

/// Function-space induction from an arbitrary subgroup (the carrier of
/// `rep`) up to a larger subgroup: functions `F : G -> V` with
/// `F(gh) = rep(h^{-1}) F(g)`, acted on by `(x . F)(y) = F(x^{-1} y)`.
/// The basis is indexed by (coset representative, basis vector of V); coset
/// representatives default to the minimal id in each left coset but can be
/// pinned explicitly.
pub fn induce_function(
    group: &GroupTable,
    rep: &MatrixRep,
    target: &[usize],
    coset_reps: Option<&[usize]>,
) -> Result<MatrixRep> {
    let mut target = target.to_vec();
    target.sort_unstable();
    if !group.is_subgroup(&target) {
        return Err(Error::invalid("induction target is not a subgroup"));
    }
    for &h in rep.carrier() {
        if !target.contains(&h) {
            return Err(Error::invalid("source subgroup is not inside the target"));
        }
    }
    // Left cosets x H inside the target.
    let mut assigned: BTreeMap<usize, usize> = BTreeMap::new();
    let mut reps: Vec<usize> = Vec::new();
    match coset_reps {
        Some(given) => {
            for &r in given {
                reps.push(r);
            }
        }
        None => {
            for &g in &target {
                if assigned.contains_key(&g) {
                    continue;
                }
                for &h in rep.carrier() {
                    assigned.insert(group.mul(g, h), reps.len());
                }
                reps.push(g);
            }
            assigned.clear();
        }
    }
    for (i, &r) in reps.iter().enumerate() {
        for &h in rep.carrier() {
            let prev = assigned.insert(group.mul(r, h), i);
            if prev.is_some() {
                return Err(Error::invalid("coset representatives overlap"));
            }
        }
    }
    if assigned.len() != target.len() {
        return Err(Error::invalid(
            "coset representatives do not cover the target",
        ));
    }
    let dim = rep.dim();
    let field = rep.of(0).field();
    let mut matrices = Vec::with_capacity(target.len());
    for &x in &target {
        let mut m = ExactMatrix::zero(field, reps.len() * dim, reps.len() * dim);
        for (col, &rc) in reps.iter().enumerate() {
            let xr = group.mul(x, rc);
            let row = assigned[&xr];
            // h = r_row^{-1} x r_col lies in the source subgroup.
            let h = group.mul(group.inverse(reps[row]), xr);
            let block = rep.of(h);
            for r in 0..dim {
                for c in 0..dim {
                    let v = block.get(r, c);
                    if !v.is_zero() {
                        m.set(row * dim + r, col * dim + c, v.clone());
                    }
                }
            }
        }
        matrices.push(m);
    }
    MatrixRep::new(group, target, matrices)
}

/// Induction from the identity component to the full group in the explicit
/// tensor model, cross-checked against the independently built
/// function-space model: with the section as coset representatives the two
/// models must coincide matrix by matrix.
pub fn induce(model: &FiniteModel, rep: &MatrixRep) -> Result<MatrixRep> {
    let all: Vec<usize> = model.component().elements().collect();
    let tensor = induce_tensor(model, rep, &all)?;
    let function = induce_function(
        model.group(),
        rep,
        &model.group().elements().collect::<Vec<_>>(),
        Some(
            &(0..model.component().order())
                .map(|a| model.section(a))
                .collect::<Vec<_>>(),
        ),
    )?;
    for g in model.group().elements() {
        if tensor.of(g) != function.of(g) {
            return Err(Error::check(format!(
                "tensor and function models of induction disagree at element {g}"
            )));
        }
    }
    // Restriction to the identity component decomposes blockwise into the
    // section twists of the input.
    for &h in model.normal_ids() {
        let m = tensor.of(h);
        let dim = rep.dim();
        for (i, _) in (0..model.component().order()).enumerate() {
            let iota = model.section(i);
            let conj = model
                .group()
                .mul(model.group().mul(model.group().inverse(iota), h), iota);
            let expected = rep.of(conj);
            for r in 0..dim {
                for c in 0..dim {
                    if m.get(i * dim + r, i * dim + c) != expected.get(r, c) {
                        return Err(Error::check(
                            "restriction of the induced module does not match the twisted blocks",
                        ));
                    }
                }
            }
        }
    }
    Ok(tensor)
}

/// Intertwiner `theta_a : L -> {}^{section(a)} L` for an irreducible
/// representation of the identity component, normalized so its first
/// nonzero entry is 1; `None` when the Hom space vanishes. A Hom space of
/// dimension above 1 signals a reducible input and is an error.
pub fn compute_theta(
    model: &FiniteModel,
    l_rep: &MatrixRep,
    a: usize,
) -> Result<Option<ExactMatrix>> {
    if a >= model.component().order() {
        return Err(Error::invalid(format!("invalid component element {a}")));
    }
    if a == 0 {
        return Ok(Some(ExactMatrix::identity(model.field(), l_rep.dim())));
    }
    let gens = model.carrier_generators(l_rep.carrier());
    let iota = model.section(a);
    let source: Vec<ExactMatrix> = gens.iter().map(|&g| l_rep.of(g).clone()).collect();
    let target: Vec<ExactMatrix> = gens
        .iter()
        .map(|&g| {
            let conj = model
                .group()
                .mul(model.group().mul(model.group().inverse(iota), g), iota);
            l_rep.of(conj).clone()
        })
        .collect();
    let space = intertwiner_space(&source, &target)?;
    match space.len() {
        0 => Ok(None),
        1 => Ok(Some(normalize_first_nonzero(&space[0]))),
        n => Err(Error::invalid(format!(
            "Hom space has dimension {n}; the input representation is not irreducible"
        ))),
    }
}

fn normalize_first_nonzero(m: &ExactMatrix) -> ExactMatrix {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if !v.is_zero() {
                return m.scale(&v.inv().unwrap());
            }
        }
    }
    m.clone()
}

/// Extract the 2-cocycle `alpha` on the stabilizer from a theta family:
/// `L(gamma(a,b)) theta_b theta_a = alpha(a,b) theta_{ab}`. The output
/// passes the cocycle validation by construction of the check.
pub fn extract_alpha(
    model: &FiniteModel,
    l_rep: &MatrixRep,
    stabilizer: &[usize],
    thetas: &[ExactMatrix],
) -> Result<FactorSet> {
    let (stab_table, stab_ids) = model.component().subgroup_table(stabilizer)?;
    if thetas.len() != stab_ids.len() {
        return Err(Error::ShapeMismatch(
            "one theta required per stabilizer element".into(),
        ));
    }
    let field = model.field();
    let n = stab_ids.len();
    let mut values = vec![vec![Scalar::one(field); n]; n];
    for a_pos in 0..n {
        for b_pos in 0..n {
            let ab_pos = stab_table.mul(a_pos, b_pos);
            let a = stab_ids[a_pos];
            let b = stab_ids[b_pos];
            let composite = l_rep
                .of(model.gamma(a, b))
                .matmul(&thetas[b_pos])
                .matmul(&thetas[a_pos]);
            let theta_ab = &thetas[ab_pos];
            let alpha = scalar_ratio(&composite, theta_ab).ok_or_else(|| {
                Error::check(format!(
                    "composite is not a scalar multiple of theta at ({a},{b}); the theta family is inconsistent"
                ))
            })?;
            values[a_pos][b_pos] = alpha;
        }
    }
    let fs = FactorSet::new(stab_table, values)?;
    if let Some(v) = fs.validate() {
        return Err(Error::check(format!("extracted factor set fails: {v}")));
    }
    Ok(fs)
}

/// The unique scalar `c` with `a = c b`, if it exists.
fn scalar_ratio(a: &ExactMatrix, b: &ExactMatrix) -> Option<Scalar> {
    let mut ratio = None;
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            let bv = b.get(r, c);
            if bv.is_zero() {
                continue;
            }
            let candidate = &(a.get(r, c).clone()) * &bv.inv().unwrap();
            ratio = Some(candidate);
            break;
        }
        if ratio.is_some() {
            break;
        }
    }
    let ratio = ratio?;
    if a == &b.scale(&ratio) {
        Some(ratio)
    } else {
        None
    }
}

/// The `G^lambda`-module `E (x) L` with action
/// `section(a) g . (u (x) v) = rho_a u (x) theta_a^{-1}(g v)`.
pub fn build_e_tensor_l(
    model: &FiniteModel,
    l_rep: &MatrixRep,
    stabilizer: &[usize],
    thetas: &[ExactMatrix],
    e_module: &AlgebraModule,
) -> Result<MatrixRep> {
    if e_module.action.len() != stabilizer.len() {
        return Err(Error::ShapeMismatch(
            "module does not match the stabilizer's twisted algebra".into(),
        ));
    }
    let carrier = model.component_preimage(stabilizer);
    let theta_inverses: Vec<ExactMatrix> = thetas
        .iter()
        .map(|t| {
            t.inverse()
                .ok_or_else(|| Error::invalid("theta is singular"))
        })
        .collect::<Result<_>>()?;
    let mut matrices = Vec::with_capacity(carrier.len());
    for &x in &carrier {
        let (a, g) = model.decompose(x);
        let a_pos = stabilizer
            .iter()
            .position(|&s| s == a)
            .ok_or_else(|| Error::invalid("carrier element outside the stabilizer preimage"))?;
        let right = theta_inverses[a_pos].matmul(l_rep.of(g));
        matrices.push(e_module.action[a_pos].kronecker(&right));
    }
    MatrixRep::new(model.group(), carrier, matrices)
}

/// The induced label module `L(lambda, E) = Ind_{G^lambda}^G (E (x) L)`,
/// certified irreducible through its endomorphism algebra.
pub fn induce_label(
    model: &FiniteModel,
    l_rep: &MatrixRep,
    stabilizer: &[usize],
    thetas: &[ExactMatrix],
    e_module: &AlgebraModule,
) -> Result<MatrixRep> {
    let e_tensor_l = build_e_tensor_l(model, l_rep, stabilizer, thetas, e_module)?;
    let all: Vec<usize> = model.group().elements().collect();
    let induced = induce_function(model.group(), &e_tensor_l, &all, None)?;
    let index = model.component().order() / stabilizer.len();
    if induced.dim() != index * e_module.dim * l_rep.dim() {
        return Err(Error::check("induced module has the wrong dimension"));
    }
    let end = hom_dim(model, &induced, &induced)?;
    if end != 1 {
        return Err(Error::check(format!(
            "induced label module has endomorphism dimension {end}, not irreducible"
        )));
    }
    Ok(induced)
}

/// dim Hom over the common carrier of two representations, by solving the
/// intertwining equations on subgroup generators.
pub fn hom_dim(model: &FiniteModel, from: &MatrixRep, to: &MatrixRep) -> Result<usize> {
    if from.carrier() != to.carrier() {
        return Err(Error::ShapeMismatch(
            "Hom requires representations of the same subgroup".into(),
        ));
    }
    let gens = {
        let g = model.carrier_generators(from.carrier());
        if g.is_empty() {
            vec![0]
        } else {
            g
        }
    };
    let source: Vec<ExactMatrix> = gens.iter().map(|&g| from.of(g).clone()).collect();
    let target: Vec<ExactMatrix> = gens.iter().map(|&g| to.of(g).clone()).collect();
    Ok(intertwiner_space(&source, &target)?.len())
}

/// Endomorphism algebra of `Ind_{G°}^{G^lambda} L`, compared against the
/// opposite twisted group algebra through the explicit right action
/// `(f (x) v) . rho_a = (fa) (x) gamma(f,a) theta_a(v)`.
#[derive(Debug)]
pub struct EndomorphismReport {
    pub end_dim: usize,
    pub stabilizer_order: usize,
    /// The right-action operators lie in the computed endomorphism algebra
    /// and span it.
    pub spans_endomorphisms: bool,
    /// `R_a R_b = alpha(b,a) R_{ba}` as matrices, i.e. the assignment is an
    /// anti-homomorphism whose structure constants are exactly those of the
    /// opposite algebra.
    pub anti_homomorphism: bool,
}

pub fn endomorphism_algebra(
    model: &FiniteModel,
    l_rep: &MatrixRep,
    stabilizer: &[usize],
    thetas: &[ExactMatrix],
    alpha: &FactorSet,
) -> Result<EndomorphismReport> {
    let induced = induce_tensor(model, l_rep, stabilizer)?;
    let gens = model.carrier_generators(induced.carrier());
    let mats: Vec<ExactMatrix> = gens.iter().map(|&g| induced.of(g).clone()).collect();
    let end_basis = intertwiner_space(&mats, &mats)?;
    let end_dim = end_basis.len();
    if end_dim != stabilizer.len() {
        return Err(Error::check(format!(
            "dim End = {end_dim} but the stabilizer has order {}",
            stabilizer.len()
        )));
    }
    // Right-action operators.
    let (stab_table, _) = model.component().subgroup_table(stabilizer)?;
    let dim = l_rep.dim();
    let field = model.field();
    let n = stabilizer.len();
    let mut right_ops = Vec::with_capacity(n);
    for (a_pos, &a) in stabilizer.iter().enumerate() {
        let mut m = ExactMatrix::zero(field, n * dim, n * dim);
        for (f_pos, &f) in stabilizer.iter().enumerate() {
            let fa = model.component().mul(f, a);
            let row = stabilizer.iter().position(|&s| s == fa).unwrap();
            let block = l_rep.of(model.gamma(f, a)).matmul(&thetas[a_pos]);
            for r in 0..dim {
                for c in 0..dim {
                    let v = block.get(r, c);
                    if !v.is_zero() {
                        m.set(row * dim + r, f_pos * dim + c, v.clone());
                    }
                }
            }
        }
        right_ops.push(m);
    }
    // Each right operator commutes with the module action and the family
    // spans the endomorphism algebra.
    let width = (n * dim) * (n * dim);
    let mut end_span = RowSpan::new(field, width);
    for b in &end_basis {
        end_span.insert(flatten(b));
    }
    let mut op_span = RowSpan::new(field, width);
    let mut spans = true;
    for (a_pos, op) in right_ops.iter().enumerate() {
        for (g_idx, &g) in gens.iter().enumerate() {
            let _ = g_idx;
            if op.matmul(induced.of(g)) != induced.of(g).matmul(op) {
                return Err(Error::check(format!(
                    "right action of rho_{a_pos} is not an endomorphism"
                )));
            }
        }
        if !end_span.contains(&flatten(op)) {
            spans = false;
        }
        op_span.insert(flatten(op));
    }
    spans = spans && op_span.rank() == end_dim;
    // Anti-homomorphism with the opposite structure constants:
    // R_a R_b = alpha(b,a) R_{ba}.
    let mut anti = true;
    for a_pos in 0..n {
        for b_pos in 0..n {
            let ba = stab_table.mul(b_pos, a_pos);
            let lhs = right_ops[a_pos].matmul(&right_ops[b_pos]);
            let rhs = right_ops[ba].scale(alpha.value(b_pos, a_pos));
            if lhs != rhs {
                anti = false;
            }
        }
    }
    Ok(EndomorphismReport {
        end_dim,
        stabilizer_order: stabilizer.len(),
        spans_endomorphisms: spans,
        anti_homomorphism: anti,
    })
}

fn flatten(m: &ExactMatrix) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.push(m.get(r, c).clone());
        }
    }
    out
}

/// Complete list of irreducible representations of the whole group, from
/// the regular representation of its group algebra, sorted by (dim, trace
/// vector).
pub fn enumerate_irr(model: &FiniteModel, seed: u64) -> Result<Vec<MatrixRep>> {
    irr_of_subgroup(model, &model.group().elements().collect::<Vec<_>>(), seed)
}

/// Irreducible representations of the identity component.
pub fn enumerate_irr_normal(model: &FiniteModel, seed: u64) -> Result<Vec<MatrixRep>> {
    irr_of_subgroup(model, model.normal_ids(), seed)
}

fn irr_of_subgroup(model: &FiniteModel, ids: &[usize], seed: u64) -> Result<Vec<MatrixRep>> {
    let (table, global_ids) = model.group().subgroup_table(ids)?;
    let p = model.field().characteristic();
    if p != 0 && (table.order() as u64).is_multiple_of(p) {
        return Err(Error::ModularCase {
            characteristic: p,
            order: table.order() as u64,
        });
    }
    let algebra = StructureConstantAlgebra::group_algebra(model.field(), &table);
    let simples = algebra.simple_modules(seed)?;
    let mut reps = Vec::with_capacity(simples.len());
    for simple in simples {
        reps.push(MatrixRep::new(
            model.group(),
            global_ids.clone(),
            simple.action,
        )?);
    }
    reps.sort_by_key(|a| a.sort_key());
    Ok(reps)
}

/// Seeded random rescalings of the intertwiner family: every rescaled
/// extraction must still be a valid cocycle and must agree with the
/// original one exactly after applying the corresponding coboundary.
pub fn verify_cocycle_rescaling(
    model: &FiniteModel,
    seed: u64,
    trials: usize,
) -> Result<CheckResult> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let q = model.field().order().expect("finite model field");
    let irr0 = enumerate_irr_normal(model, seed)?;
    let mut passed = true;
    let mut details = String::new();
    for l_rep in &irr0 {
        let mut stabilizer = Vec::new();
        let mut thetas = Vec::new();
        for a in 0..model.component().order() {
            if let Some(t) = compute_theta(model, l_rep, a)? {
                stabilizer.push(a);
                thetas.push(t);
            }
        }
        let alpha = extract_alpha(model, l_rep, &stabilizer, &thetas)?;
        for trial in 0..trials {
            let t: Vec<Scalar> = (0..stabilizer.len())
                .map(|i| {
                    if i == 0 {
                        Ok(Scalar::one(model.field()))
                    } else {
                        crate::field::finite_field_element(model.field(), rng.gen_range(1..q))
                    }
                })
                .collect::<Result<_>>()?;
            let rescaled_thetas: Vec<ExactMatrix> =
                thetas.iter().zip(&t).map(|(th, ti)| th.scale(ti)).collect();
            let alpha2 = extract_alpha(model, l_rep, &stabilizer, &rescaled_thetas)?;
            if alpha2.validate().is_some() {
                passed = false;
                details = format!("trial {trial}: rescaled cocycle invalid");
            }
            let expected = alpha.coboundary_rescale(&t)?;
            if alpha2 != expected {
                passed = false;
                details = format!("trial {trial}: coboundary mismatch");
            }
        }
    }
    Ok(CheckResult::new(
        format!("cocycle-rescaling/{}", model.name()),
        passed,
        if details.is_empty() {
            format!("{trials} seeded rescaling trials per class")
        } else {
            details
        },
    ))
}

/// One named check inside a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, details: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed,
            details: details.into(),
        }
    }
}

/// Summary of one classification label `[lambda, E]` in the finite model.
#[derive(Clone, Debug, Serialize)]
pub struct LabelSummary {
    /// Index of the orbit representative in the canonical irreducible list
    /// of the identity component.
    pub orbit_rep: usize,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub dim_l: usize,
    pub dim_e: usize,
    pub dim_total: usize,
}

/// Outcome of running the whole classification pipeline against the
/// regular-module oracle.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub fixture: String,
    pub irr_dims: Vec<usize>,
    pub label_dims: Vec<usize>,
    pub labels: Vec<LabelSummary>,
    pub checks: Vec<CheckResult>,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Run the full pipeline, orbit by orbit, and match the resulting label
/// modules bijectively (by trace vectors) against the independently
/// enumerated irreducibles of the whole group. Also checks the stabilizer
/// characterization through intertwiner existence, the endomorphism-algebra
/// comparison, semisimplicity of induced modules, orbit-independence of the
/// construction, and the restriction pattern of each label module.
pub fn verify_classification(model: &FiniteModel, seed: u64) -> Result<ClassificationReport> {
    let mut checks: Vec<CheckResult> = Vec::new();
    let irr0 = enumerate_irr_normal(model, seed)?;
    let irr = enumerate_irr(model, seed)?;
    let a_order = model.component().order();

    // Component-group permutation action on the classes of the identity
    // component, read off from twisted trace vectors.
    let keys: Vec<_> = irr0.iter().map(MatrixRep::sort_key).collect();
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(a_order);
    for a in 0..a_order {
        let iota = model.section(a);
        let mut perm = Vec::with_capacity(irr0.len());
        for rep in &irr0 {
            let twisted: Vec<Scalar> = rep
                .carrier()
                .iter()
                .map(|&g| {
                    let conj = model
                        .group()
                        .mul(model.group().mul(model.group().inverse(iota), g), iota);
                    rep.of(conj).trace()
                })
                .collect();
            let key = (
                rep.dim(),
                twisted.iter().map(Scalar::sort_key).collect::<Vec<_>>(),
            );
            let target = keys
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| Error::check("twisted class not found in the irreducible list"))?;
            perm.push(target);
        }
        perms.push(perm);
    }

    // Orbits, with minimal-index representatives.
    let mut orbit_of = vec![usize::MAX; irr0.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..irr0.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let members: std::collections::BTreeSet<usize> =
            (0..a_order).map(|a| perms[a][i]).collect();
        let idx = orbits.len();
        for &m in &members {
            orbit_of[m] = idx;
        }
        orbits.push(members.into_iter().collect());
    }

    let mut labels = Vec::new();
    let mut label_keys: Vec<(usize, Vec<crate::field::ScalarKey>)> = Vec::new();
    let mut stab_theta_ok = true;
    let mut numerology_ok = true;
    let mut end_ok = true;
    let mut conjugation_ok = true;

    for orbit in &orbits {
        let rep_idx = orbit[0];
        let l_rep = &irr0[rep_idx];
        let stabilizer: Vec<usize> = (0..a_order)
            .filter(|&a| perms[a][rep_idx] == rep_idx)
            .collect();
        // Stabilizer characterization: theta_a exists exactly on the
        // stabilizer.
        let mut thetas = Vec::new();
        for a in 0..a_order {
            let theta = compute_theta(model, l_rep, a)?;
            if theta.is_some() != stabilizer.contains(&a) {
                stab_theta_ok = false;
            }
            if let Some(t) = theta {
                if stabilizer.contains(&a) {
                    thetas.push(t);
                }
            }
        }
        let alpha = extract_alpha(model, l_rep, &stabilizer, &thetas)?;
        let algebra = TwistedGroupAlgebra::new(alpha.clone())?;
        let simples = algebra.simple_modules(seed)?;
        let square_sum: usize = simples.iter().map(|m| m.dim * m.dim).sum();
        if square_sum != stabilizer.len() {
            numerology_ok = false;
        }
        let end_report = endomorphism_algebra(model, l_rep, &stabilizer, &thetas, &alpha)?;
        if !(end_report.end_dim == stabilizer.len()
            && end_report.spans_endomorphisms
            && end_report.anti_homomorphism)
        {
            end_ok = false;
        }
        let mut rep_keys = Vec::new();
        for e_module in &simples {
            let module = induce_label(model, l_rep, &stabilizer, &thetas, e_module)?;
            let expected_dim = (a_order / stabilizer.len()) * e_module.dim * l_rep.dim();
            if module.dim() != expected_dim {
                numerology_ok = false;
            }
            // Restriction pattern: dim E copies of each orbit twist, none
            // of anything else.
            let res = module.restrict(model.normal_ids());
            for (j, l_other) in irr0.iter().enumerate() {
                let gens = model.carrier_generators(model.normal_ids());
                let source: Vec<ExactMatrix> =
                    gens.iter().map(|&g| l_other.of(g).clone()).collect();
                let target: Vec<ExactMatrix> = gens.iter().map(|&g| res.of(g).clone()).collect();
                let mult = intertwiner_space(&source, &target)?.len();
                let expected = if orbit.contains(&j) { e_module.dim } else { 0 };
                if mult != expected {
                    numerology_ok = false;
                }
            }
            rep_keys.push(module.sort_key());
            labels.push(LabelSummary {
                orbit_rep: rep_idx,
                orbit_size: orbit.len(),
                stabilizer_order: stabilizer.len(),
                dim_l: l_rep.dim(),
                dim_e: e_module.dim,
                dim_total: module.dim(),
            });
            label_keys.push(module.sort_key());
        }
        // Conjugation independence: running the pipeline at any other orbit
        // member produces the same multiset of induced modules.
        for &other_idx in orbit.iter().skip(1) {
            let other = &irr0[other_idx];
            let other_stab: Vec<usize> = (0..a_order)
                .filter(|&a| perms[a][other_idx] == other_idx)
                .collect();
            let other_thetas: Vec<ExactMatrix> = other_stab
                .iter()
                .map(|&a| {
                    compute_theta(model, other, a)?
                        .ok_or_else(|| Error::check("stabilizer element without an intertwiner"))
                })
                .collect::<Result<_>>()?;
            let other_alpha = extract_alpha(model, other, &other_stab, &other_thetas)?;
            let other_simples = TwistedGroupAlgebra::new(other_alpha)?.simple_modules(seed)?;
            let mut other_keys = Vec::new();
            for e_module in &other_simples {
                let module = induce_label(model, other, &other_stab, &other_thetas, e_module)?;
                other_keys.push(module.sort_key());
            }
            let mut lhs = rep_keys.clone();
            let mut rhs = other_keys;
            lhs.sort();
            rhs.sort();
            if lhs != rhs {
                conjugation_ok = false;
            }
        }
    }

    checks.push(CheckResult::new(
        "stabilizer-theta-characterization",
        stab_theta_ok,
        "theta_a exists exactly for stabilizer elements",
    ));
    checks.push(CheckResult::new(
        "twisted-algebra-numerology",
        numerology_ok,
        "sum of dim^2 equals the stabilizer order; label dimensions and restriction patterns match",
    ));
    checks.push(CheckResult::new(
        "endomorphism-algebra",
        end_ok,
        "dim End equals the stabilizer order; right action spans it as the opposite algebra",
    ));
    checks.push(CheckResult::new(
        "conjugation-independence",
        conjugation_ok,
        "every orbit member yields the same induced modules",
    ));

    // Bijection against the oracle list.
    let mut lhs = label_keys.clone();
    lhs.sort();
    let mut rhs: Vec<_> = irr.iter().map(MatrixRep::sort_key).collect();
    rhs.sort();
    let bijection = lhs == rhs;
    checks.push(CheckResult::new(
        "label-oracle-bijection",
        bijection,
        format!(
            "{} labels against {} irreducibles, matched by (dim, trace vector)",
            label_keys.len(),
            irr.len()
        ),
    ));
    let mut distinct = label_keys.clone();
    distinct.sort();
    distinct.dedup();
    checks.push(CheckResult::new(
        "labels-pairwise-distinct",
        distinct.len() == label_keys.len(),
        "distinct labels give non-isomorphic modules",
    ));

    // Semisimplicity of every induced module (Maschke-side certificate):
    // dim End(Ind V) equals the sum of squared multiplicities.
    let mut semisimple_ok = true;
    for v in &irr0 {
        let ind = induce(model, v)?;
        let mut sq = 0usize;
        let mut total = 0usize;
        for w in &irr {
            let m = hom_dim(model, &ind, w)?;
            sq += m * m;
            total += m * w.dim();
        }
        let end = hom_dim(model, &ind, &ind)?;
        if end != sq || total != ind.dim() {
            semisimple_ok = false;
        }
    }
    checks.push(CheckResult::new(
        "induced-semisimple",
        semisimple_ok,
        "induction from the identity component is semisimple with consistent multiplicities",
    ));

    Ok(ClassificationReport {
        fixture: model.name().to_string(),
        irr_dims: irr.iter().map(MatrixRep::dim).collect(),
        label_dims: labels.iter().map(|l| l.dim_total).collect(),
        labels,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s3() -> FiniteModel {
        fixtures::builtin("s3_a3").unwrap()
    }

    fn d4() -> FiniteModel {
        fixtures::builtin("d4_center").unwrap()
    }

    #[test]
    fn oracle_over_an_extension_field() {
        // Z/3 with trivial identity component over F_4: the component group
        // is the whole group, the splitting field is a genuine extension,
        // and the full pipeline must still match the regular-module
        // enumeration (three characters valued in cube roots of unity).
        let spec = FiniteModelSpec {
            name: "z3_f4".into(),
            comment: None,
            field: FieldSpec::finite(2, 2).unwrap(),
            table: vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            normal_subgroup: vec![0],
            section: vec![0, 1, 2],
        };
        let model = FiniteModel::from_spec(&spec).unwrap();
        let report = verify_classification(&model, 0).unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
        assert_eq!(report.irr_dims, vec![1, 1, 1]);
    }

    #[test]
    fn modular_characteristic_is_rejected_at_load() {
        let spec = FiniteModelSpec {
            name: "z3_f3".into(),
            comment: None,
            field: FieldSpec::finite(3, 1).unwrap(),
            table: vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            normal_subgroup: vec![0],
            section: vec![0, 1, 2],
        };
        assert!(matches!(
            FiniteModel::from_spec(&spec),
            Err(Error::ModularCase { .. })
        ));
    }

    #[test]
    fn model_loading_validates_gamma() {
        let m = s3();
        assert_eq!(m.component().order(), 2);
        assert_eq!(m.normal_ids(), &[0, 1, 2]);
        // gamma(1,1) = section(0)^{-1} section(1)^2 = (12)(12) = e here the
        // section image squares to a rotation or the identity.
        let g11 = m.gamma(1, 1);
        assert!(m.normal_ids().contains(&g11));
    }

    #[test]
    fn decompose_round_trips() {
        let m = d4();
        for g in m.group().elements() {
            let (a, h) = m.decompose(g);
            assert_eq!(m.group().mul(m.section(a), h), g);
        }
    }

    #[test]
    fn enumerate_irr_matches_known_dimensions() {
        let dims = |m: &FiniteModel| -> Vec<usize> {
            enumerate_irr(m, 0)
                .unwrap()
                .iter()
                .map(MatrixRep::dim)
                .collect()
        };
        assert_eq!(dims(&s3()), vec![1, 1, 2]);
        assert_eq!(dims(&d4()), vec![1, 1, 1, 1, 2]);
        let q8 = fixtures::builtin("q8_z4").unwrap();
        assert_eq!(dims(&q8), vec![1, 1, 1, 1, 2]);
        let z4 = fixtures::builtin("z4_z2").unwrap();
        assert_eq!(dims(&z4), vec![1, 1, 1, 1]);
        let g18 = fixtures::builtin("z3z3_z2").unwrap();
        assert_eq!(dims(&g18), vec![1, 1, 2, 2, 2, 2]);
    }

    #[test]
    fn twist_composition_law() {
        // Double twist on the 2-dimensional irreducible of S3 by inner
        // automorphisms, seeded pairs.
        let m = s3();
        let irr = enumerate_irr(&m, 0).unwrap();
        let two_dim = irr.last().unwrap();
        for (g, h) in [(1, 3), (3, 4), (2, 5), (5, 1)] {
            let phi = conjugation_automorphism(m.group(), g);
            let psi = conjugation_automorphism(m.group(), h);
            // Twisting by ad(g) and then by ad(h) composes to ad(hg).
            let hg = m.group().mul(h, g);
            let chi = conjugation_automorphism(m.group(), hg);
            let one = twist_rep(m.group(), two_dim, &phi).unwrap();
            let two = twist_rep(m.group(), &one, &psi).unwrap();
            let direct = twist_rep(m.group(), two_dim, &chi).unwrap();
            for x in m.group().elements() {
                assert_eq!(two.of(x), direct.of(x), "twist composition at {x}");
            }
        }
    }

    #[test]
    fn identity_twist_is_identity() {
        let m = s3();
        let irr = enumerate_irr(&m, 0).unwrap();
        let phi: Vec<usize> = m.group().elements().collect();
        for rep in &irr {
            let twisted = twist_rep(m.group(), rep, &phi).unwrap();
            for x in m.group().elements() {
                assert_eq!(twisted.of(x), rep.of(x));
            }
        }
    }

    #[test]
    fn inner_twist_has_explicit_intertwiner() {
        let m = s3();
        let irr = enumerate_irr(&m, 0).unwrap();
        let rep = irr.last().unwrap();
        for g in m.group().elements() {
            // rho(g^{-1}) : V -> {}^g V intertwines.
            let theta = rep.of(m.group().inverse(g));
            for h in m.group().elements() {
                let conj = m.group().mul(m.group().mul(m.group().inverse(g), h), g);
                assert_eq!(
                    theta.matmul(rep.of(h)),
                    rep.of(conj).matmul(theta),
                    "inner twist intertwiner fails at g={g}, h={h}"
                );
            }
        }
    }

    #[test]
    fn induction_dimensions_and_models_agree() {
        let m = s3();
        let irr0 = enumerate_irr_normal(&m, 0).unwrap();
        for rep in &irr0 {
            let ind = induce(&m, rep).unwrap();
            assert_eq!(ind.dim(), m.component().order() * rep.dim());
        }
    }

    #[test]
    fn inducing_the_trivial_character_gives_the_coset_permutation_rep() {
        let m = s3();
        let irr0 = enumerate_irr_normal(&m, 0).unwrap();
        let trivial = irr0
            .iter()
            .find(|r| r.dim() == 1 && r.of(1).is_identity())
            .unwrap();
        let ind = induce(&m, trivial).unwrap();
        assert_eq!(ind.dim(), 2);
        let one = Scalar::one(m.field());
        for g in m.group().elements() {
            let mat = ind.of(g);
            // Each column has a single 1: the permutation action on the
            // cosets of the identity component.
            for c in 0..2 {
                let ones = (0..2).filter(|&r| mat.get(r, c) == &one).count();
                let zeros = (0..2).filter(|&r| mat.get(r, c).is_zero()).count();
                assert_eq!((ones, zeros), (1, 1), "not a permutation matrix at {g}");
            }
            // The identity component acts trivially.
            if m.coset_of(g) == 0 {
                assert!(mat.is_identity());
            }
        }
    }

    #[test]
    fn induced_character_from_nontrivial_character_is_irreducible() {
        // S3: inducing a nontrivial character of A3 gives the standard
        // 2-dimensional irreducible.
        let m = s3();
        let irr0 = enumerate_irr_normal(&m, 0).unwrap();
        let nontrivial = irr0
            .iter()
            .find(|r| !r.of(1).is_identity())
            .expect("A3 has nontrivial characters over F7");
        let ind = induce(&m, nontrivial).unwrap();
        assert_eq!(ind.dim(), 2);
        assert_eq!(hom_dim(&m, &ind, &ind).unwrap(), 1);
    }

    #[test]
    fn frobenius_reciprocity_dimension_counts() {
        let m = s3();
        let irr0 = enumerate_irr_normal(&m, 0).unwrap();
        let irr = enumerate_irr(&m, 0).unwrap();
        for v in &irr0 {
            let ind = induce(&m, v).unwrap();
            for w in &irr {
                let lhs = hom_dim(&m, &ind, w).unwrap();
                let res = w.restrict(m.normal_ids());
                let rhs = {
                    let gens = m.carrier_generators(m.normal_ids());
                    let source: Vec<ExactMatrix> = gens.iter().map(|&g| v.of(g).clone()).collect();
                    let target: Vec<ExactMatrix> =
                        gens.iter().map(|&g| res.of(g).clone()).collect();
                    intertwiner_space(&source, &target).unwrap().len()
                };
                assert_eq!(lhs, rhs, "Frobenius reciprocity fails");
            }
        }
    }

    #[test]
    fn theta_existence_matches_stabilizers() {
        // S3/A3: the transposition coset moves each nontrivial character,
        // so theta exists only for the trivial one.
        let m = s3();
        let irr0 = enumerate_irr_normal(&m, 0).unwrap();
        for rep in &irr0 {
            let theta = compute_theta(&m, rep, 1).unwrap();
            let trivial = rep.dim() == 1 && rep.of(1).is_identity();
            assert_eq!(theta.is_some(), trivial);
        }
        // theta_1 is the identity.
        let theta0 = compute_theta(&m, &irr0[0], 0).unwrap().unwrap();
        assert!(theta0.is_identity());
    }

    #[test]
    fn d4_faithful_character_extracts_pauli_type_cocycle() {
        let m = d4();
        let irr0 = enumerate_irr_normal(&m, 0).unwrap();
        // The faithful character of the center sends r^2 to -1.
        let faithful = irr0
            .iter()
            .find(|r| !r.of(2).is_identity())
            .expect("faithful central character");
        let stab: Vec<usize> = m.component().elements().collect();
        let thetas: Vec<ExactMatrix> = stab
            .iter()
            .map(|&a| compute_theta(&m, faithful, a).unwrap().unwrap())
            .collect();
        let alpha = extract_alpha(&m, faithful, &stab, &thetas).unwrap();
        assert_eq!(alpha.validate(), None);
        // The twisted algebra has a unique simple module, of dimension 2.
        let algebra = TwistedGroupAlgebra::new(alpha).unwrap();
        let simples = algebra.simple_modules(0).unwrap();
        assert_eq!(simples.len(), 1);
        assert_eq!(simples[0].dim, 2);
    }

    #[test]
    fn e_tensor_l_with_sign_module_gives_the_sign_representation() {
        // S3/A3, trivial character of A3, E the sign character of the
        // component group: the resulting G-module is the sign
        // representation of S3.
        let m = s3();
        let irr0 = enumerate_irr_normal(&m, 0).unwrap();
        let trivial = irr0
            .iter()
            .find(|r| r.dim() == 1 && r.of(1).is_identity())
            .unwrap();
        let stab: Vec<usize> = m.component().elements().collect();
        let thetas: Vec<ExactMatrix> = stab
            .iter()
            .map(|&a| compute_theta(&m, trivial, a).unwrap().unwrap())
            .collect();
        let alpha = extract_alpha(&m, trivial, &stab, &thetas).unwrap();
        let algebra = TwistedGroupAlgebra::new(alpha).unwrap();
        let simples = algebra.simple_modules(0).unwrap();
        let sign = simples
            .iter()
            .find(|e| !e.action[1].is_identity())
            .expect("sign module of k[Z/2]");
        let module = build_e_tensor_l(&m, trivial, &stab, &thetas, sign).unwrap();
        assert_eq!(module.dim(), 1);
        // Transpositions act by -1, rotations by +1.
        let minus_one = -&Scalar::one(m.field());
        for g in m.group().elements() {
            let expected = if m.coset_of(g) == 0 {
                Scalar::one(m.field())
            } else {
                minus_one.clone()
            };
            assert_eq!(*module.of(g).get(0, 0), expected);
        }
        // The unit module with trivial alpha and full stabilizer recovers
        // the input representation (here: a trivial label gives the trivial
        // representation of the whole group).
        let unit = simples.iter().find(|e| e.action[1].is_identity()).unwrap();
        let label = induce_label(&m, trivial, &stab, &thetas, unit).unwrap();
        assert_eq!(label.dim(), 1);
        for g in m.group().elements() {
            assert!(label.of(g).is_identity());
        }
    }

    #[test]
    fn classification_pipeline_on_s3() {
        let report = verify_classification(&s3(), 0).unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
        assert_eq!(report.irr_dims, vec![1, 1, 2]);
        let mut dims = report.label_dims.clone();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2]);
    }

    #[test]
    fn classification_pipeline_on_z4() {
        let m = fixtures::builtin("z4_z2").unwrap();
        let report = verify_classification(&m, 0).unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
        assert_eq!(report.irr_dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn theta_rescaling_changes_alpha_by_the_coboundary() {
        let m = d4();
        let irr0 = enumerate_irr_normal(&m, 0).unwrap();
        let faithful = irr0.iter().find(|r| !r.of(2).is_identity()).unwrap();
        let stab: Vec<usize> = m.component().elements().collect();
        let thetas: Vec<ExactMatrix> = stab
            .iter()
            .map(|&a| compute_theta(&m, faithful, a).unwrap().unwrap())
            .collect();
        let alpha = extract_alpha(&m, faithful, &stab, &thetas).unwrap();
        let f7 = m.field();
        let t = vec![
            Scalar::one(f7),
            Scalar::from_i64(f7, 3),
            Scalar::from_i64(f7, 2),
            Scalar::from_i64(f7, 5),
        ];
        let rescaled_thetas: Vec<ExactMatrix> =
            thetas.iter().zip(&t).map(|(th, ti)| th.scale(ti)).collect();
        let alpha2 = extract_alpha(&m, faithful, &stab, &rescaled_thetas).unwrap();
        let expected = alpha.coboundary_rescale(&t).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(alpha2.value(a, b), expected.value(a, b));
            }
        }
    }
}
