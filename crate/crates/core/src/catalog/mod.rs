//! The seven built-in example families, their partitions and expected
//! Hodge tables, plus the base-change component expansion.

mod expand;
mod partition;
mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::construction::CollectiveDivisor;
use crate::conventions::SignConventions;
use crate::error::{Error, Result};
use crate::exactlat::{IntegerMatrix, IntersectionLattice, LatticeVector};
use crate::invariants::{hodge_with, SmoothingInvariants};
use crate::ncconfig::{
    adjacent, ChernNumbers, ComponentGeometry, NCConfiguration, SurfaceGeometry, TripleCurve,
};

pub use expand::{base_change_expand, AddedComponent, ExpandedConfiguration};
pub use partition::{bidegree_partitions, integer_partitions, Part, PartKind, PartitionSpec};
pub use tables::{expected_table, ExpectedExtras, ExpectedRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    Quintic,
    ThreeP3Quadric,
    Quadric4fold112,
    Cubic4fold111,
    TwoQuadricsP6,
    Gr25Section,
    P2xP2,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [
        FamilyId::Quintic,
        FamilyId::ThreeP3Quadric,
        FamilyId::Quadric4fold112,
        FamilyId::Cubic4fold111,
        FamilyId::TwoQuadricsP6,
        FamilyId::Gr25Section,
        FamilyId::P2xP2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Quintic => "quintic",
            FamilyId::ThreeP3Quadric => "three-p3-quadric",
            FamilyId::Quadric4fold112 => "quadric4fold-112",
            FamilyId::Cubic4fold111 => "cubic4fold-111",
            FamilyId::TwoQuadricsP6 => "two-quadrics-p6",
            FamilyId::Gr25Section => "gr25-section",
            FamilyId::P2xP2 => "p2xp2",
        }
    }

    pub fn part_kind(self) -> PartKind {
        match self {
            FamilyId::P2xP2 => PartKind::Bidegree,
            _ => PartKind::Degree,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

impl Serialize for FamilyId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Where a stored number comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Stated with the example itself.
    Stated,
    /// Standard geometry of the ambient variety.
    Classical,
    /// Recovered by inverting the expected Hodge table.
    TableInversion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProvenanceNote {
    pub field: &'static str,
    pub source: Source,
    pub note: &'static str,
}

/// Per-component and per-surface numbers for families whose tracked classes
/// are all multiples of one hyperplane class `h`.
///
/// Component `Y_i` has degree `d[i]`; `D_i` is cut out on `Y_j` by `Y_k`, so
/// `tau|D_i = d[i] h`, `K_{D_i} = -d[i] h` and the normal of `D_i` in `Y_k`
/// is `d[j] h`.
#[derive(Debug, Clone, Copy)]
struct RankOneData {
    component_names: [&'static str; 3],
    surface_names: [&'static str; 3],
    degree: [i64; 3],
    /// `h^2` on each `D_i`.
    surface_square: [i64; 3],
    component_euler: [i64; 3],
    surface_euler: [i64; 3],
    chern: [ChernNumbers; 3],
}

const QUINTIC_DATA: RankOneData = RankOneData {
    component_names: ["hyperplane in P4", "hyperplane in P4", "cubic threefold"],
    surface_names: ["cubic surface", "cubic surface", "plane"],
    degree: [1, 1, 3],
    surface_square: [3, 3, 1],
    component_euler: [4, 4, -6],
    surface_euler: [9, 9, 3],
    chern: [
        ChernNumbers::new(1, 6, 16),
        ChernNumbers::new(1, 6, 16),
        ChernNumbers::new(3, 12, 12),
    ],
};

const THREE_P3_DATA: RankOneData = RankOneData {
    component_names: ["P3", "P3", "P3"],
    surface_names: ["quadric surface", "quadric surface", "quadric surface"],
    degree: [2, 2, 2],
    surface_square: [2, 2, 2],
    component_euler: [4, 4, 4],
    surface_euler: [4, 4, 4],
    chern: [ChernNumbers::new(1, 6, 16); 3],
};

const QUADRIC4FOLD_DATA: RankOneData = RankOneData {
    component_names: ["quadric threefold", "quadric threefold", "quartic del Pezzo threefold"],
    surface_names: ["quartic del Pezzo surface", "quartic del Pezzo surface", "quadric surface"],
    degree: [1, 1, 2],
    surface_square: [4, 4, 2],
    component_euler: [4, 4, 0],
    surface_euler: [8, 8, 4],
    chern: [
        ChernNumbers::new(2, 8, 18),
        ChernNumbers::new(2, 8, 18),
        ChernNumbers::new(4, 12, 16),
    ],
};

const CUBIC4FOLD_DATA: RankOneData = RankOneData {
    component_names: ["cubic threefold"; 3],
    surface_names: ["cubic surface"; 3],
    degree: [1, 1, 1],
    surface_square: [3, 3, 3],
    component_euler: [-6, -6, -6],
    surface_euler: [9, 9, 9],
    chern: [ChernNumbers::new(3, 12, 12); 3],
};

const TWO_QUADRICS_DATA: RankOneData = RankOneData {
    component_names: ["quartic del Pezzo threefold"; 3],
    surface_names: ["quartic del Pezzo surface"; 3],
    degree: [1, 1, 1],
    surface_square: [4, 4, 4],
    component_euler: [0, 0, 0],
    surface_euler: [8, 8, 8],
    chern: [ChernNumbers::new(4, 12, 16); 3],
};

const GR25_DATA: RankOneData = RankOneData {
    component_names: ["quintic del Pezzo threefold"; 3],
    surface_names: ["quintic del Pezzo surface"; 3],
    degree: [1, 1, 1],
    surface_square: [5, 5, 5],
    component_euler: [4, 4, 4],
    surface_euler: [7, 7, 7],
    chern: [ChernNumbers::new(5, 12, 20); 3],
};

/// Static description of a built-in family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Family {
    pub id: FamilyId,
    pub description: &'static str,
    /// Required sum of the parts of a partition.
    pub total_degree: Part,
    /// `h . tau` on `D1` for each generator of the tracked lattice; a part
    /// `a` (or `(a, b)`) meets `tau` in `Σ a_k * gamma_per_unit[k]` points.
    pub gamma_per_unit: Vec<i64>,
    /// `γ` for any admissible partition.
    pub gamma: i64,
    pub h2_declared: usize,
    pub provenance: Vec<ProvenanceNote>,
}

fn rank_one_data(id: FamilyId) -> Option<RankOneData> {
    match id {
        FamilyId::Quintic => Some(QUINTIC_DATA),
        FamilyId::ThreeP3Quadric => Some(THREE_P3_DATA),
        FamilyId::Quadric4fold112 => Some(QUADRIC4FOLD_DATA),
        FamilyId::Cubic4fold111 => Some(CUBIC4FOLD_DATA),
        FamilyId::TwoQuadricsP6 => Some(TWO_QUADRICS_DATA),
        FamilyId::Gr25Section => Some(GR25_DATA),
        FamilyId::P2xP2 => None,
    }
}

pub fn family(id: FamilyId) -> Family {
    use Source::*;
    let note = |field, source, note| ProvenanceNote { field, source, note };
    let (description, total_degree, gamma, provenance) = match id {
        FamilyId::Quintic => (
            "degeneration of a quintic into two hyperplanes and a cubic threefold in P4",
            Part::Degree(5),
            15,
            vec![
                note("components", Stated, "two hyperplanes and one cubic threefold"),
                note("chern_numbers", Classical, "hyperplane and cubic threefold in P4"),
            ],
        ),
        FamilyId::ThreeP3Quadric => (
            "three copies of P3 glued cyclically along transverse quadric surfaces",
            Part::Degree(6),
            24,
            vec![
                note("components", Stated, "three copies of P3 with quadric double surfaces"),
                note("chern_numbers", Classical, "P3"),
            ],
        ),
        FamilyId::Quadric4fold112 => (
            "hypersurfaces of degrees 1, 1, 2 in a smooth quadric fourfold",
            Part::Degree(4),
            16,
            vec![
                note(
                    "ambient",
                    TableInversion,
                    "stated as a quartic fourfold with parts summing to 3; all five table rows sum to 4 and \
                     are reproduced only by a quadric fourfold (surfaces s=(4,4,2), e=(8,8,4); \
                     components e=(4,4,0))",
                ),
                note("chern_numbers", Classical, "quadric threefold and quartic del Pezzo threefold"),
            ],
        ),
        FamilyId::Cubic4fold111 => (
            "three hyperplane sections of a smooth cubic fourfold",
            Part::Degree(3),
            9,
            vec![
                note(
                    "degrees",
                    TableInversion,
                    "\"degree three\" read as total boundary degree, so each component has degree 1; \
                     forced by the parts summing to 3, gamma = 9 and the three table rows",
                ),
                note("chern_numbers", Classical, "cubic threefold"),
            ],
        ),
        FamilyId::TwoQuadricsP6 => (
            "three hyperplane sections of a complete intersection of two quadrics in P6",
            Part::Degree(3),
            12,
            vec![
                note("components", Stated, "degree one sections"),
                note("chern_numbers", Classical, "quartic del Pezzo threefold"),
            ],
        ),
        FamilyId::Gr25Section => (
            "three hyperplane sections of a codimension-two linear section of Gr(2,5)",
            Part::Degree(3),
            15,
            vec![
                note(
                    "euler",
                    TableInversion,
                    "e(Y_i) = 4, e(D_i) = 7, e(tau) = 0, consistent with all three rows and gamma = 15",
                ),
                note("chern_numbers", Classical, "quintic del Pezzo threefold"),
            ],
        ),
        FamilyId::P2xP2 => (
            "three bidegree (1,1) hypersurfaces in P2 x P2",
            Part::Bidegree(3, 3),
            18,
            vec![
                note("components", Stated, "bidegree (1,1) hypersurfaces"),
                note("euler", Stated, "e(Y_i) = 6, e(D_i) = 6"),
            ],
        ),
    };
    let gamma_per_unit = match rank_one_data(id) {
        Some(r) => vec![r.degree[0] * r.surface_square[0]],
        None => vec![3, 3],
    };
    Family {
        id,
        description,
        total_degree,
        gamma_per_unit,
        gamma,
        h2_declared: if id == FamilyId::P2xP2 { 2 } else { 1 },
        provenance,
    }
}

fn v(coords: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(coords)
}

fn rank_one_configuration(id: FamilyId, r: &RankOneData) -> Result<NCConfiguration> {
    let components = [0, 1, 2].map(|i| {
        let boundary: BTreeMap<usize, LatticeVector> = adjacent(i).iter().map(|&j| (j, v(&[r.degree[j]]))).collect();
        ComponentGeometry {
            name: r.component_names[i].to_string(),
            euler: r.component_euler[i],
            class_labels: vec![format!("H{}", i + 1)],
            polarization: v(&[1]),
            boundary,
            chern_numbers: Some(r.chern[i]),
        }
    });
    let mut surfaces = Vec::with_capacity(3);
    for i in 0..3 {
        let adj = adjacent(i);
        let lattice = IntersectionLattice::from_i64(r.surface_names[i], &[vec![r.surface_square[i]]], &["h"])?;
        surfaces.push(SurfaceGeometry {
            name: r.surface_names[i].to_string(),
            lattice,
            canonical: v(&[-r.degree[i]]),
            tau_class: v(&[r.degree[i]]),
            euler: r.surface_euler[i],
            restrictions: [Some(IntegerMatrix::identity(1)), Some(IntegerMatrix::identity(1))],
            // Normal in Y_{adj[p]} is cut out by the other adjacent component.
            boundary_self: [v(&[r.degree[adj[1]]]), v(&[r.degree[adj[0]]])],
        });
    }
    finish(id, components, surfaces)
}

fn p2xp2_configuration() -> Result<NCConfiguration> {
    let components = [0, 1, 2].map(|i| ComponentGeometry {
        name: "(1,1) hypersurface in P2 x P2".to_string(),
        euler: 6,
        class_labels: vec![format!("Ha{}", i + 1), format!("Hb{}", i + 1)],
        polarization: v(&[1, 1]),
        boundary: adjacent(i).iter().map(|&j| (j, v(&[1, 1]))).collect(),
        chern_numbers: Some(ChernNumbers::new(6, 12, 24)),
    });
    let mut surfaces = Vec::with_capacity(3);
    for _ in 0..3 {
        let lattice =
            IntersectionLattice::from_i64("sextic del Pezzo surface", &[vec![1, 2], vec![2, 1]], &["ha", "hb"])?;
        surfaces.push(SurfaceGeometry {
            name: "sextic del Pezzo surface".to_string(),
            lattice,
            canonical: v(&[-1, -1]),
            tau_class: v(&[1, 1]),
            euler: 6,
            restrictions: [Some(IntegerMatrix::identity(2)), Some(IntegerMatrix::identity(2))],
            boundary_self: [v(&[1, 1]), v(&[1, 1])],
        });
    }
    finish(FamilyId::P2xP2, components, surfaces)
}

fn finish(
    id: FamilyId,
    components: [ComponentGeometry; 3],
    surfaces: Vec<SurfaceGeometry>,
) -> Result<NCConfiguration> {
    let surfaces: [SurfaceGeometry; 3] = surfaces
        .try_into()
        .map_err(|_| Error::Shape("expected three surfaces".into()))?;
    let fam = family(id);
    Ok(NCConfiguration {
        name: id.as_str().to_string(),
        components,
        surfaces,
        triple: TripleCurve {
            euler: 0,
            connected: true,
        },
        h2_total: Some(fam.h2_declared),
        lattice_is_full: false,
        notes: vec![fam.description.to_string()],
    })
}

/// The configuration `Y` of a family, before any divisor is chosen.
pub fn base_configuration(id: FamilyId) -> Result<NCConfiguration> {
    match rank_one_data(id) {
        Some(r) => rank_one_configuration(id, &r),
        None => p2xp2_configuration(),
    }
}

/// Checks that `p` has the family's part kind and total.
pub fn check_partition(id: FamilyId, p: &PartitionSpec) -> Result<()> {
    if p.kind() != id.part_kind() {
        return Err(Error::Partition(format!(
            "{id} expects {} parts, got {p}",
            match id.part_kind() {
                PartKind::Degree => "degree",
                PartKind::Bidegree => "bidegree",
            }
        )));
    }
    let want = match family(id).total_degree {
        Part::Degree(a) => (a as u64, 0),
        Part::Bidegree(a, b) => (a as u64, b as u64),
    };
    if p.totals() != want {
        let (got, want) = match id.part_kind() {
            PartKind::Degree => (p.totals().0.to_string(), want.0.to_string()),
            PartKind::Bidegree => (format!("{:?}", p.totals()), format!("{want:?}")),
        };
        return Err(Error::Partition(format!(
            "partition {p} of {id} sums to {got}, expected {want}"
        )));
    }
    Ok(())
}

/// Builds `(Y, C)` for a partition, with `c_{l,i}` and the witnesses
/// `G_{l,i}` both `a_l` times the hyperplane class. Parts are used in the
/// given order. `component_order` relabels components as in
/// [`NCConfiguration::permuted`].
pub fn instantiate(
    id: FamilyId,
    p: &PartitionSpec,
    component_order: Option<[usize; 3]>,
) -> Result<(NCConfiguration, CollectiveDivisor)> {
    check_partition(id, p)?;
    let config = base_configuration(id)?;
    let per_part: Vec<LatticeVector> = p
        .parts()
        .iter()
        .map(|part| match *part {
            Part::Degree(a) => v(&[a as i64]),
            Part::Bidegree(a, b) => v(&[a as i64, b as i64]),
        })
        .collect();
    let classes = [per_part.clone(), per_part.clone(), per_part.clone()];
    let witnesses = [per_part.clone(), per_part.clone(), per_part];
    let divisor = CollectiveDivisor::new(&config, classes, Some(witnesses))?;
    match component_order {
        Some(order) => Ok((config.permuted(order)?, divisor.permuted(order)?)),
        None => Ok((config, divisor)),
    }
}

/// All admissible partitions, sorted parts, in lexicographic order.
pub fn enumerate_partitions(id: FamilyId) -> Vec<PartitionSpec> {
    match family(id).total_degree {
        Part::Degree(n) => integer_partitions(n),
        Part::Bidegree(a, b) => bidegree_partitions(a, b),
    }
}

/// Outcome of recomputing one expected row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub family: FamilyId,
    pub expected: ExpectedRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<SmoothingInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub matches: bool,
}

pub fn check_row(id: FamilyId, row: &ExpectedRow, conv: SignConventions) -> RowCheck {
    let computed = instantiate(id, &row.partition, None).and_then(|(y, c)| hodge_with(&y, &c, conv));
    match computed {
        Ok(inv) => {
            let extras_ok = row.extras.is_none_or(|x| {
                inv.euler == x.euler && inv.h_cubed == Some(x.h_cubed) && inv.h_dot_c2 == Some(x.h_dot_c2)
            });
            RowCheck {
                family: id,
                expected: row.clone(),
                matches: inv.h11 == row.h11 && inv.h12 == row.h12 && extras_ok,
                computed: Some(inv),
                error: None,
            }
        }
        Err(e) => RowCheck {
            family: id,
            expected: row.clone(),
            computed: None,
            error: Some(e.to_string()),
            matches: false,
        },
    }
}

/// Recomputes every expected row of a family.
pub fn verify_family(id: FamilyId, conv: SignConventions) -> Vec<RowCheck> {
    expected_table(id).iter().map(|row| check_row(id, row, conv)).collect()
}
