//! Acceptance suite: one test per exit criterion, each printing a PASS/FAIL
//! line. Everything here is exact arithmetic; there are no numeric
//! tolerances to tune, only equalities that must hold.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use disconn_core::clifford::TwistedGroupAlgebra;
use disconn_core::decomp::{self, AbstractFactorSet};
use disconn_core::field::{FieldSpec, Scalar};
use disconn_core::finite_model::{self, verify_classification};
use disconn_core::fixtures;
use disconn_core::group::GroupTable;
use disconn_core::hw::{self, LabelPoset};
use disconn_core::modelfile::builtin_model;
use disconn_core::report::{self, Overrides, Suite};
use disconn_core::rootdata::Weight;

fn report_line(criterion: u32, name: &str, passed: bool) {
    println!(
        "ACCEPTANCE {criterion} ({name}): {}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "acceptance criterion {criterion} ({name}) failed");
}

/// Criterion 1: the classification pipeline matches the MeatAxe-enumerated
/// irreducibles bijectively on all five fixtures, with the exact dimension
/// multisets.
#[test]
fn criterion_1_clifford_oracle_equivalence() {
    let expected: &[(&str, &[usize])] = &[
        ("s3_a3", &[1, 1, 2]),
        ("d4_center", &[1, 1, 1, 1, 2]),
        ("q8_z4", &[1, 1, 1, 1, 2]),
        ("z4_z2", &[1, 1, 1, 1]),
        ("z3z3_z2", &[1, 1, 2, 2, 2, 2]),
    ];
    let mut passed = true;
    for (name, dims) in expected {
        let model = fixtures::builtin(name).unwrap();
        let report = verify_classification(&model, 0).unwrap();
        let mut label_dims = report.label_dims.clone();
        label_dims.sort_unstable();
        if !report.passed() || report.irr_dims != *dims || label_dims != *dims {
            eprintln!(
                "{name}: passed={} irr={:?} labels={:?}",
                report.passed(),
                report.irr_dims,
                label_dims
            );
            passed = false;
        }
    }
    report_line(1, "clifford oracle equivalence", passed);
}

/// Criterion 2: 20 seeded theta-rescaling trials per fixture; every
/// extraction stays a valid cocycle and equals the original up to the
/// computed coboundary, exactly.
#[test]
fn criterion_2_cocycle_mechanics() {
    let mut passed = true;
    for name in fixtures::FIXTURE_NAMES {
        let model = fixtures::builtin(name).unwrap();
        let check = finite_model::verify_cocycle_rescaling(&model, 0, 20).unwrap();
        if !check.passed {
            eprintln!("{name}: {}", check.details);
            passed = false;
        }
    }
    report_line(2, "cocycle mechanics under rescaling", passed);
}

/// Criterion 3: dim End(Ind L) equals the stabilizer order for every
/// fixture and every irreducible of the identity component, and the right
/// action realizes exactly the opposite twisted algebra.
#[test]
fn criterion_3_endomorphism_algebras() {
    let mut passed = true;
    for name in fixtures::FIXTURE_NAMES {
        let model = fixtures::builtin(name).unwrap();
        let irr0 = finite_model::enumerate_irr_normal(&model, 0).unwrap();
        for l_rep in &irr0 {
            let mut stabilizer = Vec::new();
            let mut thetas = Vec::new();
            for a in 0..model.component().order() {
                if let Some(t) = finite_model::compute_theta(&model, l_rep, a).unwrap() {
                    stabilizer.push(a);
                    thetas.push(t);
                }
            }
            let alpha = finite_model::extract_alpha(&model, l_rep, &stabilizer, &thetas).unwrap();
            let end =
                finite_model::endomorphism_algebra(&model, l_rep, &stabilizer, &thetas, &alpha)
                    .unwrap();
            if end.end_dim != stabilizer.len() || !end.spans_endomorphisms || !end.anti_homomorphism
            {
                eprintln!(
                    "{name}: end_dim={} stab={} spans={} anti={}",
                    end.end_dim,
                    stabilizer.len(),
                    end.spans_endomorphisms,
                    end.anti_homomorphism
                );
                passed = false;
            }
        }
    }
    report_line(
        3,
        "endomorphism algebra is the opposite twisted algebra",
        passed,
    );
}

/// Criterion 4: sum of squared dimensions equals the stabilizer order for
/// every computed simple list, and the central-character orbit of the
/// dihedral fixture has exactly one simple, of dimension 2.
#[test]
fn criterion_4_twisted_algebra_numerology() {
    let mut passed = true;
    for name in fixtures::FIXTURE_NAMES {
        let model = fixtures::builtin(name).unwrap();
        let irr0 = finite_model::enumerate_irr_normal(&model, 0).unwrap();
        for l_rep in &irr0 {
            let mut stabilizer = Vec::new();
            let mut thetas = Vec::new();
            for a in 0..model.component().order() {
                if let Some(t) = finite_model::compute_theta(&model, l_rep, a).unwrap() {
                    stabilizer.push(a);
                    thetas.push(t);
                }
            }
            let alpha = finite_model::extract_alpha(&model, l_rep, &stabilizer, &thetas).unwrap();
            let simples = TwistedGroupAlgebra::new(alpha)
                .unwrap()
                .simple_modules(0)
                .unwrap();
            let sq: usize = simples.iter().map(|m| m.dim * m.dim).sum();
            if sq != stabilizer.len() {
                eprintln!("{name}: sum dim^2 = {sq} != {}", stabilizer.len());
                passed = false;
            }
        }
    }
    // The dihedral fixture: the faithful central character has the full
    // component group as stabilizer and a nontrivial cocycle with a single
    // 2-dimensional simple.
    let d4 = fixtures::builtin("d4_center").unwrap();
    let irr0 = finite_model::enumerate_irr_normal(&d4, 0).unwrap();
    let faithful = irr0.iter().find(|r| !r.of(2).is_identity()).unwrap();
    let stab: Vec<usize> = d4.component().elements().collect();
    let thetas: Vec<_> = stab
        .iter()
        .map(|&a| {
            finite_model::compute_theta(&d4, faithful, a)
                .unwrap()
                .unwrap()
        })
        .collect();
    let alpha = finite_model::extract_alpha(&d4, faithful, &stab, &thetas).unwrap();
    let simples = TwistedGroupAlgebra::new(alpha)
        .unwrap()
        .simple_modules(0)
        .unwrap();
    if simples.len() != 1 || simples[0].dim != 2 {
        eprintln!(
            "d4 central orbit: {} simples, dims {:?}",
            simples.len(),
            simples.iter().map(|m| m.dim).collect::<Vec<_>>()
        );
        passed = false;
    }
    report_line(4, "twisted algebra numerology", passed);
}

/// Criterion 5: the strict order passes all partial-order checks on the
/// torus-inversion model (weights 0..5) and the swapped A1 x A1 model
/// (height <= 8), including the 2rho^v pairing invariant for every
/// (a, lambda) pair tested.
#[test]
fn criterion_5_order_correctness() {
    let mut passed = true;
    for name in ["o2", "a1xa1_swap"] {
        let resolved = builtin_model(name).unwrap().resolve().unwrap();
        let comb = resolved.combinatorial.unwrap();
        let labels = hw::classify_labels(
            &comb.datum,
            &comb.action,
            &comb.cocycles,
            resolved.field,
            &comb.ideal_weights,
            0,
        )
        .unwrap();
        let poset = LabelPoset::build(&comb.datum, &comb.action, labels).unwrap();
        let report = hw::check_partial_order(&comb.datum, &comb.action, &poset).unwrap();
        if !report.ok() {
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("{name}: {} failed: {}", c.name, c.details);
            }
            passed = false;
        }
    }
    report_line(5, "partial order and 2rho^v invariant", passed);
}

/// Criterion 6: the standard-object dimension formulas on the swapped
/// A1 x A1 model, and Freudenthal character sums equal to the Weyl
/// dimension for every dominant weight of height at most 20 in the preset
/// library.
#[test]
fn criterion_6_dimension_formulas() {
    let mut passed = true;
    let resolved = builtin_model("a1xa1_swap").unwrap().resolve().unwrap();
    let comb = resolved.combinatorial.unwrap();
    let labels = hw::classify_labels(
        &comb.datum,
        &comb.action,
        &comb.cocycles,
        resolved.field,
        &[Weight(vec![2, 1]), Weight(vec![1, 2]), Weight(vec![2, 2])],
        0,
    )
    .unwrap();
    let mut seen_12 = 0;
    let mut seen_9 = 0;
    for label in &labels {
        let (dim, _) = hw::delta_dimension_and_character(&comb.datum, &comb.action, label).unwrap();
        if label.orbit.contains(&Weight(vec![2, 1])) {
            if dim != 12 {
                eprintln!("dim Delta((2,1), unit) = {dim}, expected 12");
                passed = false;
            }
            seen_12 += 1;
        } else {
            if dim != 9 {
                eprintln!("dim Delta((2,2), E) = {dim}, expected 9");
                passed = false;
            }
            seen_9 += 1;
        }
    }
    if seen_12 != 1 || seen_9 != 2 {
        eprintln!("label counts: {seen_12} at (2,1)-orbit, {seen_9} at (2,2)");
        passed = false;
    }
    // Freudenthal sums across the preset library.
    for preset in disconn_core::presets::PRESET_NAMES {
        let datum = disconn_core::presets::root_datum(preset).unwrap();
        for lambda in dominant_box(&datum, 20) {
            let dim = datum.weyl_dimension(&lambda).unwrap();
            let total: u64 = datum.weight_multiplicities(&lambda).unwrap().values().sum();
            if total != dim {
                eprintln!("{preset}: character sum {total} != dim {dim} at {lambda}");
                passed = false;
            }
        }
    }
    report_line(6, "dimension formulas and Freudenthal sums", passed);
}

fn dominant_box(datum: &disconn_core::rootdata::RootDatum, bound: i64) -> Vec<Weight> {
    // For torus presets every weight is dominant with height zero, so a
    // small box keeps the enumeration finite.
    let box_bound = if datum.positive_count() == 0 {
        3
    } else {
        bound
    };
    let rank = datum.rank();
    let mut out = Vec::new();
    let mut coords = vec![-box_bound; rank];
    loop {
        let w = Weight(coords.clone());
        if datum.is_dominant(&w).unwrap() && datum.height(&w) <= bound {
            out.push(w);
        }
        let mut i = 0;
        loop {
            if i == rank {
                return out;
            }
            coords[i] += 1;
            if coords[i] > box_bound {
                coords[i] = -box_bound;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Criterion 7: the decomposition map of the torus-inversion model is the
/// same permutation with determinant +-1 for both auxiliary primes; the
/// (2,2)-orbit matching of the swapped model is independent of the
/// auxiliary prime; and the golden idempotent-reduction computation agrees
/// with the lifted-trace matching.
#[test]
fn criterion_7_decomposition_map() {
    let mut passed = true;
    let o2 = builtin_model("o2").unwrap();
    let csv7 = report::decompose_payload(&o2, 5, 7, 0).unwrap().primary;
    let csv13 = report::decompose_payload(&o2, 5, 13, 0).unwrap().primary;
    if csv7 != csv13 {
        eprintln!("o2 permutation differs between ell = 7 and ell = 13");
        passed = false;
    }
    let matching_json = &report::decompose_payload(&o2, 5, 7, 0).unwrap().files[1].1;
    let parsed: serde_json::Value = serde_json::from_str(matching_json).unwrap();
    let det = parsed["det"].as_i64().unwrap();
    if det != 1 && det != -1 {
        eprintln!("o2 determinant {det}");
        passed = false;
    }
    // (2,2)-orbit of the swapped model: the 2x2 matching is
    // ell-independent.
    let mut a1 = builtin_model("a1xa1_swap").unwrap();
    a1.ideal = Some(disconn_core::modelfile::IdealSpec {
        height_bound: None,
        max_abs_coord: None,
        weights: vec![vec![2, 2]],
    });
    let resolved = a1.resolve().unwrap();
    let comb = resolved.combinatorial.unwrap();
    let mut canonical = Vec::new();
    for ell in [7u64, 13] {
        let (matrix, matchings) = report::decompose_model(&comb, 5, ell, 0).unwrap();
        if matrix.matrix.len() != 2 {
            eprintln!("expected a 2x2 matrix for the (2,2)-orbit");
            passed = false;
        }
        let m = matchings.values().next().unwrap();
        canonical.push(
            m.canonical
                .iter()
                .map(|e| (e.dim, e.witness.clone(), e.charp_index))
                .collect::<Vec<_>>(),
        );
    }
    if canonical[0] != canonical[1] {
        eprintln!("(2,2)-orbit matching depends on the auxiliary prime");
        passed = false;
    }
    // Golden test: over Q the idempotents of the Z/2 group algebra are
    // (rho_1 +- rho_s)/2; their reductions mod 5 have coefficient 3, and
    // the simple they select must be the one the lifted-trace matching
    // selects.
    let alpha = AbstractFactorSet::trivial(GroupTable::cyclic(2));
    let matching = decomp::tits_match(&alpha, 5, 7, 0).unwrap();
    let f5 = FieldSpec::finite(5, 1).unwrap();
    let algebra = TwistedGroupAlgebra::new(disconn_core::clifford::FactorSet::trivial(
        GroupTable::cyclic(2),
        f5,
    ))
    .unwrap();
    let simples = algebra.simple_modules(0).unwrap();
    let three = Scalar::from_i64(f5, 3);
    for module in &simples {
        let e_plus = module.action[0].add(&module.action[1]).scale(&three);
        let e_minus = module.action[0].sub(&module.action[1]).scale(&three);
        let is_trivial = module.trace_vector[1].is_one();
        if e_plus.is_identity() != is_trivial || e_minus.is_identity() == is_trivial {
            eprintln!("golden idempotent reduction disagrees");
            passed = false;
        }
    }
    let trivial_entry = matching
        .canonical
        .iter()
        .find(|e| e.witness == vec!["1", "1"])
        .unwrap();
    // The trivial simple is index 0 on both sides in the canonical sort,
    // and the matching must pair them.
    if trivial_entry.char0_index != 0 || trivial_entry.charp_index != 0 {
        eprintln!("lifted-trace matching does not pair the trivial classes");
        passed = false;
    }
    report_line(7, "decomposition map", passed);
}

/// Criterion 8: the full verification suite produces identical verdicts for
/// seeds 0 and 1, and byte-identical payloads for repeated runs at a fixed
/// seed.
#[test]
fn criterion_8_determinism() {
    let mut passed = true;
    let (out0a, ok0a) = report::verify_payload(Suite::All, 0).unwrap();
    let (out0b, ok0b) = report::verify_payload(Suite::All, 0).unwrap();
    if out0a.primary != out0b.primary || ok0a != ok0b {
        eprintln!("repeated run at seed 0 is not byte-identical");
        passed = false;
    }
    let (out1, ok1) = report::verify_payload(Suite::All, 1).unwrap();
    if ok0a != ok1 {
        eprintln!("verdicts differ between seeds 0 and 1");
        passed = false;
    }
    let verdicts = |s: &str| -> Vec<(String, bool)> {
        let v: serde_json::Value = serde_json::from_str(s).unwrap();
        v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| {
                (
                    c["name"].as_str().unwrap().to_string(),
                    c["passed"].as_bool().unwrap(),
                )
            })
            .collect()
    };
    if verdicts(&out0a.primary) != verdicts(&out1.primary) {
        eprintln!("per-check verdicts differ between seeds 0 and 1");
        passed = false;
    }
    if !ok0a {
        eprintln!("the full suite itself fails");
        passed = false;
    }
    // The classify payload is likewise byte-stable.
    let model = builtin_model("o2").unwrap();
    let a = report::classify_payload(&model, Overrides::default(), 0).unwrap();
    let b = report::classify_payload(&model, Overrides::default(), 0).unwrap();
    if a.primary != b.primary {
        eprintln!("classify payload is not byte-stable");
        passed = false;
    }
    report_line(8, "determinism", passed);
}
