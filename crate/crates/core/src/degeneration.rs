//! Collective normal classes and the d-semistability decision.
//!
//! The normal class of `D_i` is the sum of its normal classes in the two
//! adjacent components plus the class of the triple curve on `D_i`. `Y` is
//! d-semistable when all three vanish; this is the triple point formula.
//! Linear equivalence is decided by coordinate equality in the tracked
//! lattices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::conventions::SignConventions;
use crate::error::Result;
use crate::exactlat::LatticeVector;
use crate::ncconfig::{surface_id, NCConfiguration};

/// One class per double surface, each in that surface's lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalClassTriple {
    pub classes: [LatticeVector; 3],
}

impl NormalClassTriple {
    pub fn is_zero(&self) -> bool {
        self.classes.iter().all(LatticeVector::is_zero)
    }
}

impl fmt::Display for NormalClassTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {c}", surface_id(i))?;
        }
        Ok(())
    }
}

pub fn collective_normal_class(config: &NCConfiguration) -> Result<NormalClassTriple> {
    collective_normal_class_with(config, SignConventions::STANDARD)
}

pub fn collective_normal_class_with(
    config: &NCConfiguration,
    conv: SignConventions,
) -> Result<NormalClassTriple> {
    let mut classes = Vec::with_capacity(3);
    for surface in &config.surfaces {
        let lattice = &surface.lattice;
        lattice.check(&surface.boundary_self[0], "first normal class")?;
        lattice.check(&surface.boundary_self[1], "second normal class")?;
        lattice.check(&surface.tau_class, "tau class")?;
        let tau = surface.tau_class.scale(&BigInt::from(conv.tau_term));
        classes.push(&(&surface.boundary_self[0] + &surface.boundary_self[1]) + &tau);
    }
    Ok(NormalClassTriple {
        classes: classes.try_into().expect("three surfaces"),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemistabilityReport {
    pub d_semistable: bool,
    pub residual: NormalClassTriple,
}

/// Decides d-semistability by the triple point formula and returns the
/// residual normal classes either way. The formula's vanishing is proved to
/// imply d-semistability; under the connectedness hypotheses the two are
/// treated as equivalent.
pub fn is_d_semistable(config: &NCConfiguration) -> Result<SemistabilityReport> {
    is_d_semistable_with(config, SignConventions::STANDARD)
}

pub fn is_d_semistable_with(
    config: &NCConfiguration,
    conv: SignConventions,
) -> Result<SemistabilityReport> {
    let residual = collective_normal_class_with(config, conv)?;
    Ok(SemistabilityReport {
        d_semistable: residual.is_zero(),
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleSumReport {
    /// `N(D_i) . tau` in each surface lattice.
    pub pairings: [BigInt; 3],
    /// `sum_i (tau . tau)` over the three surfaces.
    pub tau_square_sum: BigInt,
}

/// Restricts the collective normal class to the triple curve. On every
/// configuration satisfying the standing hypotheses the pairings sum to
/// `3 * tau_square_sum`; for a d-semistable one all of them vanish.
pub fn triple_sum_check(config: &NCConfiguration) -> Result<TripleSumReport> {
    let normal = collective_normal_class(config)?;
    let mut pairings = Vec::with_capacity(3);
    let mut tau_square_sum = BigInt::zero();
    for (s, surface) in config.surfaces.iter().enumerate() {
        pairings.push(surface.lattice.pair(&normal.classes[s], &surface.tau_class)?);
        tau_square_sum += surface.lattice.square(&surface.tau_class)?;
    }
    Ok(TripleSumReport {
        pairings: pairings.try_into().expect("three surfaces"),
        tau_square_sum,
    })
}
