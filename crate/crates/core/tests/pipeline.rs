use num_bigint::BigInt;

use nc3_core::catalog::{base_configuration, instantiate, FamilyId, PartitionSpec};
use nc3_core::construction::{
    check_collective_divisor, extend_mu, sequential_blowup, CollectiveDivisor, CURVE_CLASS, NORMAL_CLASS_SUM,
};
use nc3_core::degeneration::{collective_normal_class, is_d_semistable, triple_sum_check};
use nc3_core::diagnostics::has_errors;
use nc3_core::exactlat::{kernel_dimension, IntegerMatrix, LatticeVector};
use nc3_core::invariants::{
    cubic_form_value, euler_closed, euler_smoothing, h11_closed, h11_kernel, hodge, picard_one_pairings,
    CubicTensor,
};
use nc3_core::ncconfig::validate::{AMPLE_MATCHING, CONNECTIVITY};
use nc3_core::ncconfig::{
    config_from_json, config_to_json, dual_complex, mu_apply, mu_matrix, ng2_generators, ng2_third,
    validate, DegenerationType,
};
use nc3_core::{Error, Severity};

fn lv(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(c)
}

fn quintic() -> nc3_core::ncconfig::NCConfiguration {
    base_configuration(FamilyId::Quintic).unwrap()
}

fn degrees(p: &[u32]) -> PartitionSpec {
    PartitionSpec::degrees(p).unwrap()
}

#[test]
fn quintic_validates_with_four_notes() {
    let d = validate(&quintic());
    assert_eq!(d.len(), 4);
    assert!(d.iter().all(|x| x.severity == Severity::Note));
}

#[test]
fn broken_ample_matching_names_d2() {
    let mut y = quintic();
    // D2 sits between Y3 and Y1; its restriction from Y3 is the first slot.
    y.surfaces[1].restrictions[0] = Some(IntegerMatrix::from_i64(&[vec![2]], 1).unwrap());
    let d = validate(&y);
    let ample: Vec<_> = d.iter().filter(|x| x.clause == AMPLE_MATCHING).collect();
    assert_eq!(ample.len(), 1);
    assert!(ample[0].is_error());
    assert!(ample[0].locus.starts_with("D2"));
}

#[test]
fn disconnected_triple_curve() {
    let mut y = quintic();
    y.triple.connected = false;
    let errors: Vec<_> = validate(&y).into_iter().filter(|x| x.is_error()).collect();
    assert_eq!(errors.len(), 1);
    assert_eq!(errors[0].clause, CONNECTIVITY);
}

#[test]
fn validate_is_deterministic() {
    let mut y = quintic();
    y.triple.euler = 3;
    y.surfaces[0].tau_class = lv(&[2]);
    assert_eq!(validate(&y), validate(&y));
}

#[test]
fn quintic_mu() {
    let m = mu_matrix(&quintic()).unwrap();
    assert_eq!(kernel_dimension(&m), 1);
    let p = base_configuration(FamilyId::P2xP2).unwrap();
    let m = mu_matrix(&p).unwrap();
    assert_eq!(m.cols(), 6);
    assert_eq!(kernel_dimension(&m), 2);
}

#[test]
fn zero_restrictions_have_full_kernel() {
    let mut y = base_configuration(FamilyId::P2xP2).unwrap();
    for s in &mut y.surfaces {
        s.restrictions = [Some(IntegerMatrix::zeros(2, 2)), Some(IntegerMatrix::zeros(2, 2))];
    }
    assert_eq!(kernel_dimension(&mu_matrix(&y).unwrap()), 6);
}

#[test]
fn missing_restriction_is_reported() {
    let mut y = quintic();
    y.surfaces[2].restrictions[1] = None;
    assert!(matches!(mu_matrix(&y), Err(Error::MissingRestriction { .. })));
}

#[test]
fn ng2_on_quintic() {
    let y = quintic();
    let g = ng2_generators(&y).unwrap();
    // Y1 meets Y2 in a hyperplane class and Y3 in three times it.
    assert_eq!(g.e1, lv(&[-4, 1, 1]));
    assert_eq!(g.e2, lv(&[1, -4, 1]));
    let third = ng2_third(&y).unwrap();
    assert!((&(&g.e1 + &g.e2) + &third).is_zero());
}

#[test]
fn ng2_lies_in_kernel_only_after_blowup() {
    let (y, c) = instantiate(FamilyId::Quintic, &degrees(&[2, 3]), None).unwrap();
    let before = ng2_generators(&y).unwrap();
    assert!(mu_apply(&y, &before.e1).unwrap().iter().any(|v| !v.is_zero()));
    let (blown, _) = sequential_blowup(&y, &c).unwrap();
    let g = ng2_generators(&blown).unwrap();
    for e in [&g.e1, &g.e2] {
        assert!(mu_apply(&blown, e).unwrap().iter().all(LatticeVector::is_zero));
    }
}

#[test]
fn dual_complex_is_a_triangle() {
    let d = dual_complex(&quintic());
    assert_eq!((d.dimension, d.max_cells, d.type_label), (2, 1, DegenerationType::III));
}

#[test]
fn json_round_trip() {
    for id in FamilyId::ALL {
        let y = base_configuration(id).unwrap();
        let text = config_to_json(&y).unwrap();
        let back = config_from_json(&text).unwrap();
        assert_eq!(validate(&back), validate(&y));
        assert_eq!(mu_matrix(&back).unwrap(), mu_matrix(&y).unwrap());
        assert_eq!(back, y, "{id}");
    }
}

#[test]
fn json_rejects_floats_and_bad_schema() {
    let text = config_to_json(&quintic()).unwrap();
    let float = text.replacen("\"euler\": 4", "\"euler\": 4.0", 1);
    assert_ne!(float, text);
    assert!(config_from_json(&float).is_err());
    let schema = text.replace("ncconfig/1", "ncconfig/9");
    assert!(config_from_json(&schema).is_err());
    assert!(config_from_json("{").is_err());
}

#[test]
fn normal_classes() {
    let n = collective_normal_class(&quintic()).unwrap();
    assert_eq!(n.classes, [lv(&[5]), lv(&[5]), lv(&[5])]);
    let r = is_d_semistable(&quintic()).unwrap();
    assert!(!r.d_semistable);
    assert_eq!(r.residual, n);
    let six = collective_normal_class(&base_configuration(FamilyId::ThreeP3Quadric).unwrap()).unwrap();
    assert_eq!(six.classes, [lv(&[6]), lv(&[6]), lv(&[6])]);
}

#[test]
fn hand_built_zero_normal_class() {
    let mut y = quintic();
    for s in &mut y.surfaces {
        let half = lv(&[-s.tau_class.to_i64().unwrap()[0]]);
        s.boundary_self = [half, lv(&[0])];
    }
    assert!(is_d_semistable(&y).unwrap().d_semistable);
}

#[test]
fn normal_class_is_additive_in_boundary_data() {
    let mut y = quintic();
    let before = collective_normal_class(&y).unwrap();
    y.surfaces[1].boundary_self[0] = &y.surfaces[1].boundary_self[0] + &lv(&[7]);
    let after = collective_normal_class(&y).unwrap();
    assert_eq!(after.classes[0], before.classes[0]);
    assert_eq!(after.classes[1], &before.classes[1] + &lv(&[7]));
    assert_eq!(after.classes[2], before.classes[2]);
}

#[test]
fn triple_sums() {
    let t = triple_sum_check(&quintic()).unwrap();
    assert_eq!(t.pairings, [15, 15, 15].map(BigInt::from));
    assert_eq!(t.tau_square_sum, BigInt::from(15));
    let sum: BigInt = t.pairings.iter().sum();
    assert_eq!(sum, &t.tau_square_sum * 3);
    let (y, c) = instantiate(FamilyId::Quintic, &degrees(&[5]), None).unwrap();
    let (blown, _) = sequential_blowup(&y, &c).unwrap();
    let t = triple_sum_check(&blown).unwrap();
    assert!(t.pairings.iter().all(|x| *x == BigInt::from(0)));
    assert_eq!(t.tau_square_sum, BigInt::from(0));
}

#[test]
fn normal_degrees_per_surface() {
    let y = quintic();
    let n = collective_normal_class(&y).unwrap();
    let degrees: Vec<BigInt> = (0..3)
        .map(|i| y.surfaces[i].lattice.pair(&n.classes[i], &lv(&[1])).unwrap())
        .collect();
    assert_eq!(degrees, [15, 15, 5].map(BigInt::from));
}

#[test]
fn divisor_checks() {
    let (y, c) = instantiate(FamilyId::Quintic, &degrees(&[1, 4]), None).unwrap();
    assert_eq!(c.tau_multiplicities, [3, 12].map(BigInt::from));
    assert_eq!(c.gamma(), BigInt::from(15));
    assert!(!has_errors(&check_collective_divisor(&y, &c)));

    let mut bad = c.clone();
    bad.classes[2] = vec![lv(&[2]), lv(&[4])];
    let d = check_collective_divisor(&y, &bad);
    let errs: Vec<_> = d.iter().filter(|x| x.is_error()).collect();
    assert!(errs.iter().any(|x| x.clause == NORMAL_CLASS_SUM && x.locus.contains("D3")));

    let p = PartitionSpec::bidegrees(&[(1, 0), (2, 3)]).unwrap();
    let (y, c) = instantiate(FamilyId::P2xP2, &p, None).unwrap();
    assert_eq!(c.tau_multiplicities, [3, 15].map(BigInt::from));
    assert_eq!(c.gamma(), BigInt::from(18));
    assert!(!has_errors(&check_collective_divisor(&y, &c)));
}

#[test]
fn odd_curve_is_flagged() {
    let y = base_configuration(FamilyId::P2xP2).unwrap();
    // (1,0) and (2,3) swapped into a class with odd adjunction sum on D1.
    let classes = [
        vec![lv(&[1, 1]), lv(&[2, 2])],
        vec![lv(&[1, 0]), lv(&[2, 3])],
        vec![lv(&[1, 0]), lv(&[2, 3])],
    ];
    let c = CollectiveDivisor::new(&y, classes, None).unwrap();
    let d = check_collective_divisor(&y, &c);
    assert!(has_errors(&d));
    let _ = CURVE_CLASS;
}

#[test]
fn quintic_blowup_bookkeeping() {
    let (y, c) = instantiate(FamilyId::Quintic, &degrees(&[5]), None).unwrap();
    let (blown, trace) = sequential_blowup(&y, &c).unwrap();
    assert_eq!(
        [blown.components[0].euler, blown.components[1].euler, blown.components[2].euler],
        [-66, -56, -6]
    );
    assert_eq!(blown.surfaces[2].euler, 18);
    assert_eq!(blown.h2_total, Some(3));
    assert!(is_d_semistable(&blown).unwrap().d_semistable);
    let steps: Vec<(&str, &str, i64)> = trace
        .steps
        .iter()
        .map(|s| (s.component.as_str(), s.surface.as_str(), s.h_degree))
        .collect();
    assert_eq!(steps, vec![("Y1", "D2", 15), ("Y2", "D1", 15), ("Y1", "D3", 5)]);
    let n = blown.components.iter().map(|c| c.chern_numbers.unwrap()).collect::<Vec<_>>();
    assert_eq!((n[0].c2_dot_h, n[0].c1sq_dot_h), (26, -4));
    assert_eq!((n[1].c2_dot_h, n[1].c1sq_dot_h), (21, 1));
}

#[test]
fn empty_divisor_is_identity() {
    let (y, c) = instantiate(FamilyId::Quintic, &degrees(&[5]), None).unwrap();
    let (blown, _) = sequential_blowup(&y, &c).unwrap();
    let empty = CollectiveDivisor::new(&blown, [vec![], vec![], vec![]], None).unwrap();
    let (out, trace) = sequential_blowup(&blown, &empty).unwrap();
    assert_eq!(out, blown);
    assert!(trace.steps.is_empty());
}

#[test]
fn blowup_refuses_inadmissible_divisors() {
    let (y, c) = instantiate(FamilyId::Quintic, &degrees(&[1, 4]), None).unwrap();
    let mut bad = c;
    bad.classes[0] = vec![lv(&[2]), lv(&[3])];
    assert!(matches!(sequential_blowup(&y, &bad), Err(Error::Inadmissible(_))));
}

#[test]
fn kernel_grows_by_two_alpha() {
    let m = mu_matrix(&quintic()).unwrap();
    assert_eq!(kernel_dimension(&extend_mu(&m, 1, 15)), 3);
    assert_eq!(kernel_dimension(&extend_mu(&m, 5, 15)), 11);
    assert_eq!(kernel_dimension(&extend_mu(&m, 0, 0)), 1);
}

#[test]
fn invariant_examples() {
    let (y, c) = instantiate(FamilyId::Quintic, &degrees(&[5]), None).unwrap();
    let (blown, _) = sequential_blowup(&y, &c).unwrap();
    assert_eq!(euler_smoothing(&blown).unwrap(), -200);
    assert_eq!(euler_closed(&y, &c).unwrap(), -200);
    assert_eq!(h11_kernel(&blown).unwrap(), 1);
    assert!(matches!(euler_smoothing(&y), Err(Error::NotDSemistable { .. })));

    let (y6, c6) = instantiate(FamilyId::ThreeP3Quadric, &degrees(&[6]), None).unwrap();
    assert_eq!(euler_smoothing(&sequential_blowup(&y6, &c6).unwrap().0).unwrap(), -204);

    let p = PartitionSpec::bidegrees(&[(3, 3)]).unwrap();
    let (yp, cp) = instantiate(FamilyId::P2xP2, &p, None).unwrap();
    assert_eq!(euler_closed(&yp, &cp).unwrap(), -162);
    let p = PartitionSpec::bidegrees(&[(1, 1), (1, 1), (1, 1)]).unwrap();
    let (yp, cp) = instantiate(FamilyId::P2xP2, &p, None).unwrap();
    assert_eq!(h11_closed(&yp, &cp).unwrap(), 6);
    assert_eq!(h11_kernel(&sequential_blowup(&yp, &cp).unwrap().0).unwrap(), 6);

    let (y3, c3) = instantiate(FamilyId::Cubic4fold111, &degrees(&[1, 1, 1]), None).unwrap();
    assert_eq!(euler_closed(&y3, &c3).unwrap(), -90);

    let (y, c) = instantiate(FamilyId::Quintic, &degrees(&[1, 1, 3]), None).unwrap();
    assert_eq!(h11_kernel(&sequential_blowup(&y, &c).unwrap().0).unwrap(), 5);
}

#[test]
fn hodge_examples() {
    let cases: [(FamilyId, &[u32], (i64, i64)); 3] = [
        (FamilyId::Quintic, &[2, 3], (3, 61)),
        (FamilyId::Quadric4fold112, &[1, 1, 2], (5, 43)),
        (FamilyId::Gr25Section, &[3], (1, 76)),
    ];
    for (id, p, want) in cases {
        let (y, c) = instantiate(id, &degrees(p), None).unwrap();
        let h = hodge(&y, &c).unwrap();
        assert_eq!((h.h11, h.h12), want, "{id}");
    }
}

#[test]
fn h11_counts_parts() {
    for (n, p) in [(1, vec![5]), (2, vec![1, 4]), (5, vec![1, 1, 1, 1, 1])] {
        let (y, c) = instantiate(FamilyId::Quintic, &degrees(&p), None).unwrap();
        assert_eq!(h11_closed(&y, &c).unwrap(), 2 * n - 1);
    }
}

#[test]
fn pairings_before_and_after() {
    let y = quintic();
    let p = picard_one_pairings(&y).unwrap();
    assert_eq!((p.h_cubed, p.h_dot_c2), (5, -20));
    assert!(p.caveat.is_some());
    let (y, c) = instantiate(FamilyId::Quintic, &degrees(&[5]), None).unwrap();
    let (blown, _) = sequential_blowup(&y, &c).unwrap();
    let p = picard_one_pairings(&blown).unwrap();
    assert_eq!((p.h_cubed, p.h_dot_c2, p.caveat), (5, 50, None));
    assert!(!p.h_cubed_is_cube);

    let ones = [CubicTensor::rank_one(1), CubicTensor::rank_one(1), CubicTensor::rank_one(1)];
    let h = [lv(&[1]), lv(&[1]), lv(&[1])];
    assert_eq!(cubic_form_value(&h, &ones).unwrap(), BigInt::from(3));
}
