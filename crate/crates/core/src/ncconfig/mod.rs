//! Numerical model of a normal-crossing variety `Y = Y1 ∪ Y2 ∪ Y3`.
//!
//! Indices are 0-based internally and 1-based in every user-facing string.
//! Surface `i` is the double surface opposite component `i`:
//! `D1 = Y2 ∩ Y3`, `D2 = Y3 ∩ Y1`, `D3 = Y1 ∩ Y2`. Its two adjacent
//! components, in the order used by every per-surface array, are
//! [`adjacent`]`(i) = [i+1, i+2]` (mod 3).

mod json;
pub mod validate;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::conventions::SignConventions;
use crate::error::{Error, Result};
use crate::exactlat::{IntegerMatrix, IntersectionLattice, LatticeVector, RationalMatrix};

pub use json::{config_from_json, config_to_json, config_to_value, CONFIG_SCHEMA};
pub use validate::validate;

/// The two components containing surface `i`, in row-block order.
pub fn adjacent(surface: usize) -> [usize; 2] {
    [(surface + 1) % 3, (surface + 2) % 3]
}

/// The surface shared by two distinct components.
pub fn surface_between(a: usize, b: usize) -> usize {
    debug_assert!(a != b && a < 3 && b < 3);
    3 - a - b
}

pub fn component_id(i: usize) -> String {
    format!("Y{}", i + 1)
}

pub fn surface_id(i: usize) -> String {
    format!("D{}", i + 1)
}

/// Numbers `(H^3, c2.H, c1^2.H)` for the distinguished ample class of a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernNumbers {
    pub h_cubed: i64,
    pub c2_dot_h: i64,
    pub c1sq_dot_h: i64,
}

impl ChernNumbers {
    pub const fn new(h_cubed: i64, c2_dot_h: i64, c1sq_dot_h: i64) -> Self {
        ChernNumbers {
            h_cubed,
            c2_dot_h,
            c1sq_dot_h,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentGeometry {
    pub name: String,
    pub euler: i64,
    /// One label per basis class of `H^2(Y_i, Q)`; the rank is their count.
    pub class_labels: Vec<String>,
    /// Coordinates of the distinguished ample class `H_i`.
    pub polarization: LatticeVector,
    /// `boundary[j]` is the class of the double surface `Y_j ∩ Y_i` viewed as
    /// a divisor on `Y_i`. Optional: configurations without it can still be
    /// validated and blown up, but not asked for the generators `e1, e2`.
    pub boundary: BTreeMap<usize, LatticeVector>,
    pub chern_numbers: Option<ChernNumbers>,
}

impl ComponentGeometry {
    pub fn h2_rank(&self) -> usize {
        self.class_labels.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceGeometry {
    pub name: String,
    pub lattice: IntersectionLattice,
    pub canonical: LatticeVector,
    pub tau_class: LatticeVector,
    pub euler: i64,
    /// Restriction matrices from the two adjacent components, ordered as
    /// [`adjacent`]. Each has `lattice.rank()` rows and `h2_rank` columns.
    pub restrictions: [Option<IntegerMatrix>; 2],
    /// Normal class of this surface inside each adjacent component, ordered
    /// as [`adjacent`].
    pub boundary_self: [LatticeVector; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TripleCurve {
    pub euler: i64,
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCConfiguration {
    pub name: String,
    pub components: [ComponentGeometry; 3],
    pub surfaces: [SurfaceGeometry; 3],
    pub triple: TripleCurve,
    /// Declared `h^2(Y)`.
    pub h2_total: Option<usize>,
    /// Whether the surface lattices are the full Picard lattices rather than
    /// tracked sublattices.
    pub lattice_is_full: bool,
    pub notes: Vec<String>,
}

impl NCConfiguration {
    /// Column offset of each component block in `⊕ H^2(Y_i)`.
    pub fn column_offsets(&self) -> [usize; 3] {
        let r = self.components.each_ref().map(ComponentGeometry::h2_rank);
        [0, r[0], r[0] + r[1]]
    }

    pub fn total_h2_rank(&self) -> usize {
        self.components.iter().map(ComponentGeometry::h2_rank).sum()
    }

    /// Row offset of each surface block in `⊕ Pic(D_i)`.
    pub fn row_offsets(&self) -> [usize; 3] {
        let r = self.surfaces.each_ref().map(|s| s.lattice.rank());
        [0, r[0], r[0] + r[1]]
    }

    pub fn total_surface_rank(&self) -> usize {
        self.surfaces.iter().map(|s| s.lattice.rank()).sum()
    }

    /// Restriction matrix from `component` to `surface`, if recorded.
    pub fn restriction(&self, component: usize, surface: usize) -> Result<&IntegerMatrix> {
        let pos = adjacent(surface)
            .iter()
            .position(|&c| c == component)
            .ok_or_else(|| {
                Error::Shape(format!(
                    "{} is not contained in {}",
                    surface_id(surface),
                    component_id(component)
                ))
            })?;
        self.surfaces[surface].restrictions[pos]
            .as_ref()
            .ok_or_else(|| Error::MissingRestriction {
                surface: surface_id(surface),
                component: component_id(component),
            })
    }

    pub fn has_all_restrictions(&self) -> bool {
        self.surfaces
            .iter()
            .all(|s| s.restrictions.iter().all(Option::is_some))
    }

    /// Normal class of `surface` inside `component`.
    pub fn normal_in(&self, surface: usize, component: usize) -> &LatticeVector {
        let pos = adjacent(surface)
            .iter()
            .position(|&c| c == component)
            .expect("component adjacent to surface");
        &self.surfaces[surface].boundary_self[pos]
    }

    /// Relabels components so that new component `p` is old component
    /// `order[p]`. Surfaces follow their opposite component; per-surface
    /// arrays are reordered to the new adjacency.
    pub fn permuted(&self, order: [usize; 3]) -> Result<NCConfiguration> {
        check_permutation(order)?;
        let mut inverse = [0usize; 3];
        for (p, &o) in order.iter().enumerate() {
            inverse[o] = p;
        }
        let components = order.map(|o| {
            let old = &self.components[o];
            let boundary = old
                .boundary
                .iter()
                .map(|(&j, v)| (inverse[j], v.clone()))
                .collect();
            ComponentGeometry {
                boundary,
                ..old.clone()
            }
        });
        let surfaces = [0, 1, 2].map(|p| {
            let old = &self.surfaces[order[p]];
            let old_adj = adjacent(order[p]);
            let new_adj = adjacent(p);
            let pick = |k: usize| {
                old_adj
                    .iter()
                    .position(|&c| c == order[new_adj[k]])
                    .expect("adjacency is preserved by relabelling")
            };
            let (a, b) = (pick(0), pick(1));
            SurfaceGeometry {
                restrictions: [old.restrictions[a].clone(), old.restrictions[b].clone()],
                boundary_self: [old.boundary_self[a].clone(), old.boundary_self[b].clone()],
                ..old.clone()
            }
        });
        let mut notes = self.notes.clone();
        if order != [0, 1, 2] {
            notes.push(format!(
                "components relabelled: new (Y1, Y2, Y3) = old ({}, {}, {})",
                component_id(order[0]),
                component_id(order[1]),
                component_id(order[2])
            ));
        }
        Ok(NCConfiguration {
            components,
            surfaces,
            notes,
            ..self.clone()
        })
    }
}

pub(crate) fn check_permutation(order: [usize; 3]) -> Result<()> {
    let mut sorted = order;
    sorted.sort_unstable();
    if sorted == [0, 1, 2] {
        Ok(())
    } else {
        Err(Error::Partition(format!(
            "component order {:?} is not a permutation of (1, 2, 3)",
            order.map(|o| o + 1)
        )))
    }
}

/// The restriction map `⊕ H^2(Y_i) → ⊕ Pic(D_i)`. The row block of `D_i`
/// carries `+` the restriction from component `i+1` and `-` the
/// restriction from component `i+2`.
pub fn mu_matrix(config: &NCConfiguration) -> Result<RationalMatrix> {
    mu_matrix_with(config, SignConventions::STANDARD)
}

pub fn mu_matrix_with(config: &NCConfiguration, conv: SignConventions) -> Result<RationalMatrix> {
    let cols = config.column_offsets();
    let rows = config.row_offsets();
    let mut m = RationalMatrix::zeros(config.total_surface_rank(), config.total_h2_rank());
    for (s, surface) in config.surfaces.iter().enumerate() {
        for (k, &c) in adjacent(s).iter().enumerate() {
            let block = config.restriction(c, s)?;
            if block.rows() != surface.lattice.rank() || block.cols() != config.components[c].h2_rank() {
                return Err(Error::Shape(format!(
                    "restriction {} -> {} is {}x{}, expected {}x{}",
                    component_id(c),
                    surface_id(s),
                    block.rows(),
                    block.cols(),
                    surface.lattice.rank(),
                    config.components[c].h2_rank()
                )));
            }
            let sign = BigInt::from(if k == 0 { 1 } else { conv.mu_second });
            m.set_block(rows[s], cols[c], block, &sign);
        }
    }
    Ok(m)
}

/// Applies the restriction map to a vector of `⊕ H^2(Y_i)`, returning one
/// class per surface.
pub fn mu_apply(config: &NCConfiguration, v: &LatticeVector) -> Result<[LatticeVector; 3]> {
    let m = mu_matrix(config)?;
    let input: Vec<BigRational> = v
        .coords()
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    let out = m.mul_vec(&input)?;
    let rows = config.row_offsets();
    let mut classes = Vec::with_capacity(3);
    for s in 0..3 {
        let r = config.surfaces[s].lattice.rank();
        let coords = out[rows[s]..rows[s] + r]
            .iter()
            .map(|q| {
                if q.is_integer() {
                    Ok(q.to_integer())
                } else {
                    Err(Error::Inconsistent(format!("non-integral image {q}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        classes.push(LatticeVector::new(coords));
    }
    Ok(classes.try_into().expect("three surfaces"))
}

/// Generators `e1 = (-Y(21)-Y(31), Y(12), Y(13))` and
/// `e2 = (Y(21), -Y(12)-Y(32), Y(23))` of the degenerate part of `H^2`,
/// where `Y(ji)` is `Y_j ∩ Y_i` as a divisor on `Y_i`. Both lie in the kernel
/// of the restriction map exactly when the collective normal class vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ng2Generators {
    pub e1: LatticeVector,
    pub e2: LatticeVector,
}

pub fn ng2_generators(config: &NCConfiguration) -> Result<Ng2Generators> {
    let b = |i: usize, j: usize| -> Result<&LatticeVector> {
        let comp = &config.components[i];
        let v = comp.boundary.get(&j).ok_or_else(|| {
            Error::InsufficientBasis(format!(
                "{} does not record the class of {} ∩ {}",
                component_id(i),
                component_id(j),
                component_id(i)
            ))
        })?;
        if v.len() != comp.h2_rank() {
            return Err(Error::InsufficientBasis(format!(
                "boundary class {v} on {} has the wrong length",
                component_id(i)
            )));
        }
        Ok(v)
    };
    let e1 = LatticeVector::concat(&[
        -&(b(0, 1)? + b(0, 2)?),
        b(1, 0)?.clone(),
        b(2, 0)?.clone(),
    ]);
    let e2 = LatticeVector::concat(&[
        b(0, 1)?.clone(),
        -&(b(1, 0)? + b(1, 2)?),
        b(2, 1)?.clone(),
    ]);
    Ok(Ng2Generators { e1, e2 })
}

/// The third cyclic generator `(Y(31), Y(32), -Y(13)-Y(23))`; equals `-(e1 + e2)`.
pub fn ng2_third(config: &NCConfiguration) -> Result<LatticeVector> {
    let b = |i: usize, j: usize| -> Result<&LatticeVector> {
        config.components[i]
            .boundary
            .get(&j)
            .ok_or_else(|| Error::InsufficientBasis(format!("{} boundary {}", component_id(i), j + 1)))
    };
    Ok(LatticeVector::concat(&[
        b(0, 2)?.clone(),
        b(1, 2)?.clone(),
        -&(b(2, 0)? + b(2, 1)?),
    ]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DegenerationType {
    I,
    II,
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualComplexInfo {
    pub dimension: u8,
    pub max_cells: usize,
    pub type_label: DegenerationType,
}

impl DualComplexInfo {
    /// Dual complex of a configuration whose double loci and triple curves
    /// form `max_cells` triangles over `components` vertices. Fewer than three
    /// components is outside this model.
    pub fn for_components(components: usize, max_cells: usize) -> Result<Self> {
        if components < 3 {
            return Err(Error::Unsupported(format!(
                "dual complexes with {components} component(s) are not modelled; at least 3 are required"
            )));
        }
        Ok(DualComplexInfo {
            dimension: 2,
            max_cells,
            type_label: DegenerationType::III,
        })
    }
}

pub fn dual_complex(_config: &NCConfiguration) -> DualComplexInfo {
    DualComplexInfo::for_components(3, 1).expect("three components")
}
