//! Hand-transcribed Hodge tables. A star marks pairs `(h11, h12)` that do
//! not occur among toric hypersurface Calabi-Yau threefolds, as annotated in
//! the source tables; it is carried as metadata only.

use serde::Serialize;

use super::partition::{PartKind, PartitionSpec};
use super::FamilyId;

/// Additional invariants recorded for some rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExpectedExtras {
    pub euler: i64,
    pub h_cubed: i64,
    pub h_dot_c2: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedRow {
    pub partition: PartitionSpec,
    pub h11: i64,
    pub h12: i64,
    pub star: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extras: Option<ExpectedExtras>,
}

type Raw = (&'static str, i64, i64, bool);

const QUINTIC: &[Raw] = &[
    ("1,1,1,1,1", 9, 39, false),
    ("1,1,1,2", 7, 44, false),
    ("1,1,3", 5, 56, false),
    ("1,4", 3, 75, false),
    ("1,2,2", 5, 49, false),
    ("2,3", 3, 61, true),
    ("5", 1, 101, false),
];

const THREE_P3_QUADRIC: &[Raw] = &[
    ("1,1,1,1,1,1", 11, 23, false),
    ("1,1,1,1,2", 9, 27, false),
    ("1,1,1,3", 7, 37, false),
    ("1,1,2,2", 7, 31, false),
    ("1,1,4", 5, 53, false),
    ("1,2,3", 5, 41, false),
    ("2,2,2", 5, 35, false),
    ("1,5", 3, 75, false),
    ("2,4", 3, 57, false),
    ("3,3", 3, 51, false),
    ("6", 1, 103, false),
];

const QUADRIC4FOLD_112: &[Raw] = &[
    ("1,1,1,1", 7, 35, false),
    ("1,1,2", 5, 43, false),
    ("1,3", 3, 61, true),
    ("2,2", 3, 51, false),
    ("4", 1, 89, true),
];

const CUBIC4FOLD_111: &[Raw] = &[
    ("1,1,1", 5, 50, false),
    ("1,2", 3, 57, false),
    ("3", 1, 73, true),
];

const TWO_QUADRICS_P6: &[Raw] = &[
    ("1,1,1", 5, 41, false),
    ("1,2", 3, 51, false),
    ("3", 1, 73, false),
];

const GR25_SECTION: &[Raw] = &[
    ("1,1,1", 5, 35, false),
    ("1,2", 3, 48, true),
    ("3", 1, 76, true),
];

const P2XP2: &[Raw] = &[
    ("(3,3)", 2, 83, false),
    ("(1,0),(2,3)", 4, 61, false),
    ("(1,3),(2,0)", 4, 43, true),
    ("(0,3),(3,0)", 4, 31, true),
    ("(0,2),(3,1)", 4, 43, true),
    ("(1,2),(2,1)", 4, 43, true),
    ("(1,1),(2,2)", 4, 49, false),
    ("(0,1),(3,2)", 4, 61, false),
    ("(1,0),(1,0),(1,3)", 6, 42, false),
    ("(0,3),(1,0),(2,0)", 6, 27, false),
    ("(0,2),(1,0),(2,1)", 6, 33, false),
    ("(1,0),(1,1),(1,2)", 6, 36, false),
    ("(0,1),(1,0),(2,2)", 6, 45, false),
    ("(0,2),(1,1),(2,0)", 6, 27, false),
    ("(0,1),(1,2),(2,0)", 6, 33, false),
    ("(0,1),(0,2),(3,0)", 6, 27, false),
    ("(0,1),(0,1),(3,1)", 6, 42, false),
    ("(0,1),(1,1),(2,1)", 6, 36, false),
    ("(1,1),(1,1),(1,1)", 6, 33, false),
    ("(0,3),(1,0),(1,0),(1,0)", 8, 26, false),
    ("(0,2),(1,0),(1,0),(1,1)", 8, 26, false),
    ("(0,1),(1,0),(1,0),(1,2)", 8, 32, false),
    ("(0,1),(0,2),(1,0),(2,0)", 8, 23, true),
    ("(0,1),(0,1),(1,0),(2,1)", 8, 32, false),
    ("(0,1),(1,0),(1,1),(1,1)", 8, 29, false),
    ("(0,1),(0,1),(1,1),(2,0)", 8, 26, false),
    ("(0,1),(0,1),(0,1),(3,0)", 8, 26, false),
    ("(0,1),(0,2),(1,0),(1,0),(1,0)", 10, 22, false),
    ("(0,1),(0,1),(1,0),(1,0),(1,1)", 10, 25, false),
    ("(0,1),(0,1),(0,1),(1,0),(2,0)", 10, 22, false),
    ("(0,1),(0,1),(0,1),(1,0),(1,0),(1,0)", 12, 21, false),
];

/// The quintic row `(5)` also records `e = -200`, `Ĥ^3 = 5`, `Ĥ.c2 = 50`.
const QUINTIC_FIVE_EXTRAS: ExpectedExtras = ExpectedExtras {
    euler: -200,
    h_cubed: 5,
    h_dot_c2: 50,
};

/// Rows in their tabulated order.
pub fn expected_table(id: FamilyId) -> Vec<ExpectedRow> {
    let (raw, kind) = match id {
        FamilyId::Quintic => (QUINTIC, PartKind::Degree),
        FamilyId::ThreeP3Quadric => (THREE_P3_QUADRIC, PartKind::Degree),
        FamilyId::Quadric4fold112 => (QUADRIC4FOLD_112, PartKind::Degree),
        FamilyId::Cubic4fold111 => (CUBIC4FOLD_111, PartKind::Degree),
        FamilyId::TwoQuadricsP6 => (TWO_QUADRICS_P6, PartKind::Degree),
        FamilyId::Gr25Section => (GR25_SECTION, PartKind::Degree),
        FamilyId::P2xP2 => (P2XP2, PartKind::Bidegree),
    };
    raw.iter()
        .map(|&(p, h11, h12, star)| {
            let partition = PartitionSpec::parse(p, kind).expect("embedded partition parses");
            let extras = (id == FamilyId::Quintic && p == "5").then_some(QUINTIC_FIVE_EXTRAS);
            ExpectedRow {
                partition,
                h11,
                h12,
                star,
                extras,
            }
        })
        .collect()
}
