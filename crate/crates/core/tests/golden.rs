use nc3_core::catalog::{
    enumerate_partitions, expected_table, instantiate, verify_family, FamilyId, PartitionSpec,
};
use nc3_core::construction::sequential_blowup;
use nc3_core::degeneration::is_d_semistable;
use nc3_core::invariants::{euler_closed, euler_smoothing, h11_closed, h11_kernel, hodge, smoothing_report};
use nc3_core::SignConventions;

#[test]
fn every_row_matches() {
    let mut total = 0;
    for id in FamilyId::ALL {
        for check in verify_family(id, SignConventions::STANDARD) {
            assert!(check.matches, "{id} {}: {:?} {:?}", check.expected.partition, check.computed, check.error);
            total += 1;
        }
    }
    assert_eq!(total, 63);
}

#[test]
fn row_counts_per_family() {
    let counts: Vec<usize> = FamilyId::ALL.iter().map(|&id| expected_table(id).len()).collect();
    assert_eq!(counts, vec![7, 11, 5, 3, 3, 3, 31]);
    for id in FamilyId::ALL {
        assert_eq!(enumerate_partitions(id).len(), expected_table(id).len());
    }
}

#[test]
fn quintic_end_to_end() {
    let p = PartitionSpec::degrees(&[5]).unwrap();
    let (y, c) = instantiate(FamilyId::Quintic, &p, None).unwrap();
    assert!(!is_d_semistable(&y).unwrap().d_semistable);
    let (blown, _) = sequential_blowup(&y, &c).unwrap();
    assert!(is_d_semistable(&blown).unwrap().d_semistable);
    let r = smoothing_report(&y, &c, SignConventions::STANDARD).unwrap();
    let inv = r.invariants;
    assert_eq!((inv.euler, inv.h11, inv.h12), (-200, 1, 101));
    assert_eq!((inv.h_cubed, inv.h_dot_c2), (Some(5), Some(50)));
    assert_eq!(inv.methods.pairings.as_deref(), Some("picard-one"));
}

#[test]
fn quintic_blown_up_euler_numbers() {
    let p = PartitionSpec::degrees(&[5]).unwrap();
    let (y, c) = instantiate(FamilyId::Quintic, &p, None).unwrap();
    let (blown, trace) = sequential_blowup(&y, &c).unwrap();
    assert_eq!(blown.components[0].euler, -66);
    assert_eq!(blown.components[1].euler, -56);
    assert_eq!(blown.surfaces[2].euler, 18);
    assert_eq!(blown.h2_total, Some(3));
    assert_eq!(trace.steps.len(), 3);
}

#[test]
fn two_paths_agree_everywhere() {
    for id in FamilyId::ALL {
        for p in enumerate_partitions(id) {
            let (y, c) = instantiate(id, &p, None).unwrap();
            let (blown, _) = sequential_blowup(&y, &c).unwrap();
            assert_eq!(euler_smoothing(&blown).unwrap(), euler_closed(&y, &c).unwrap(), "{id} {p}");
            assert_eq!(h11_kernel(&blown).unwrap(), h11_closed(&y, &c).unwrap(), "{id} {p}");
        }
    }
}

#[test]
fn p2xp2_named_rows() {
    let p = PartitionSpec::bidegrees(&[(1, 0), (2, 3)]).unwrap();
    let (y, c) = instantiate(FamilyId::P2xP2, &p, None).unwrap();
    let h = hodge(&y, &c).unwrap();
    assert_eq!((h.h11, h.h12), (4, 61));
    let starred = expected_table(FamilyId::P2xP2)
        .into_iter()
        .find(|r| r.partition == PartitionSpec::bidegrees(&[(0, 1), (0, 2), (1, 0), (2, 0)]).unwrap())
        .unwrap();
    assert_eq!((starred.h11, starred.h12, starred.star), (8, 23, true));
}

#[test]
fn component_order_does_not_change_invariants() {
    let p = PartitionSpec::degrees(&[1, 4]).unwrap();
    let (y, c) = instantiate(FamilyId::Quintic, &p, None).unwrap();
    let base = hodge(&y, &c).unwrap();
    for order in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let (y, c) = instantiate(FamilyId::Quintic, &p, Some(order)).unwrap();
        let h = hodge(&y, &c).unwrap();
        assert_eq!((h.euler, h.h11, h.h12), (base.euler, base.h11, base.h12), "{order:?}");
    }
}
