use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::{check_collective_divisor_with, curve_label, transport_chern_with, CollectiveDivisor};
use crate::conventions::SignConventions;
use crate::diagnostics::has_errors;
use crate::error::{Error, Result};
use crate::exactlat::{adjunction_euler, to_i64, IntegerMatrix, LatticeVector};
use crate::ncconfig::{component_id, surface_id, validate, ComponentGeometry, NCConfiguration, SurfaceGeometry};

/// One blow-up along a smooth curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupStep {
    pub component: String,
    pub center: String,
    pub surface: String,
    pub h_degree: i64,
    pub euler: i64,
    pub exceptional: String,
}

/// A class of `⊕ H^2(Ỹ_i)` in the kernel of the new restriction map that
/// does not come from `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelClass {
    pub label: String,
    pub coords: LatticeVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupTrace {
    /// `3α` steps: `Y1` along the curves on `D2`, `Y2` along the curves on
    /// `D1`, then `Y1` again along the proper transforms of the curves on `D3`.
    pub steps: Vec<BlowupStep>,
    pub exceptional_labels: Vec<String>,
    /// Labels of the `γ` exceptional point classes added to `D3`.
    pub point_labels: Vec<String>,
    pub kernel_labels: Vec<String>,
    /// Coordinates of `E_l = (E_{l,2}, E_{l,1}, G_{l,3})` and
    /// `E'_l = (E'_{l,3}, G_{l,2} - E_{l,1}, 0)`; empty without witnesses.
    pub kernel_classes: Vec<KernelClass>,
}

fn exc(l: usize, j: usize) -> String {
    format!("E_{{{},{}}}", l + 1, j + 1)
}

fn exc_prime(l: usize, j: usize) -> String {
    format!("E'_{{{},{}}}", l + 1, j + 1)
}

/// Blows `Y` up along the collective normal divisor and returns `Ỹ` with
/// every numerical datum transformed, plus the step log.
///
/// The order is fixed: `Y1` along `c_{l,2} ⊂ D2`, `Y2` along `c_{l,1} ⊂ D1`,
/// then `Y1` along the proper transforms of `c_{l,3} ⊂ D3`. `D3` acquires
/// one exceptional `(-1)`-class for each point of `C ∩ tau`.
pub fn sequential_blowup(
    config: &NCConfiguration,
    c: &CollectiveDivisor,
) -> Result<(NCConfiguration, BlowupTrace)> {
    sequential_blowup_with(config, c, SignConventions::STANDARD)
}

pub fn sequential_blowup_with(
    config: &NCConfiguration,
    c: &CollectiveDivisor,
    conv: SignConventions,
) -> Result<(NCConfiguration, BlowupTrace)> {
    let mut diags = validate(config);
    diags.extend(check_collective_divisor_with(config, c, conv));
    if has_errors(&diags) {
        diags.retain(|d| d.is_error());
        return Err(Error::Inadmissible(diags));
    }
    let alpha = c.alpha();
    if alpha == 0 {
        return Ok((config.clone(), empty_trace()));
    }
    for s in 0..3 {
        for comp in crate::ncconfig::adjacent(s) {
            config.restriction(comp, s)?;
        }
    }

    let m: Vec<usize> = c
        .tau_multiplicities
        .iter()
        .map(|x| to_i64(x, "tau multiplicity").map(|v| v as usize))
        .collect::<Result<_>>()?;
    let gamma: usize = m.iter().sum();

    // Per-curve Euler numbers and polarization degrees.
    let mut euler = [vec![0i64; alpha], vec![0i64; alpha], vec![0i64; alpha]];
    let mut degree = [vec![0i64; alpha], vec![0i64; alpha], vec![0i64; alpha]];
    for s in 0..3 {
        let surface = &config.surfaces[s];
        let h = super::restricted_polarization(config, s).expect("restrictions checked");
        for l in 0..alpha {
            let class = &c.classes[s][l];
            euler[s][l] = to_i64(&adjunction_euler(class, &surface.canonical, &surface.lattice)?, "curve Euler number")?;
            degree[s][l] = to_i64(&surface.lattice.pair(class, &h)?, "curve degree")?;
        }
    }

    let mut steps = Vec::with_capacity(3 * alpha);
    let mut exceptional_labels = Vec::with_capacity(3 * alpha);
    let mut push_step = |component: usize, s: usize, l: usize, label: String, prime: bool| {
        let center = if prime {
            format!("{}'", curve_label(l, s))
        } else {
            curve_label(l, s)
        };
        steps.push(BlowupStep {
            component: component_id(component),
            center,
            surface: surface_id(s),
            h_degree: degree[s][l],
            euler: euler[s][l],
            exceptional: label.clone(),
        });
        exceptional_labels.push(label);
    };
    for l in 0..alpha {
        push_step(0, 1, l, exc(l, 1), false);
    }
    for l in 0..alpha {
        push_step(1, 0, l, exc(l, 0), false);
    }
    for l in 0..alpha {
        push_step(0, 2, l, exc_prime(l, 2), true);
    }

    let [y1, y2, y3] = &config.components;
    let (r1, r2) = (y1.h2_rank(), y2.h2_rank());

    // Components. Y1 gains E_{l,2} then E'_{l,3}; Y2 gains E_{l,1}.
    let mut labels1 = y1.class_labels.clone();
    labels1.extend((0..alpha).map(|l| exc(l, 1)));
    labels1.extend((0..alpha).map(|l| exc_prime(l, 2)));
    let mut boundary1 = BTreeMap::new();
    for (&j, v) in &y1.boundary {
        let mut coords = v.padded(2 * alpha).into_coords();
        // Y2 ∩ Y1 = D3 loses the E'_{l,3}; Y3 ∩ Y1 = D2 loses the E_{l,2}.
        let range = if j == 1 { r1 + alpha..r1 + 2 * alpha } else { r1..r1 + alpha };
        for k in range {
            coords[k] = BigInt::from(-1);
        }
        boundary1.insert(j, LatticeVector::new(coords));
    }
    let chern1 = y1.chern_numbers.map(|n| {
        let n = degree[1].iter().fold(n, |n, &d| transport_chern_with(n, d, conv));
        degree[2].iter().fold(n, |n, &d| transport_chern_with(n, d, conv))
    });
    let new_y1 = ComponentGeometry {
        name: format!("{}~", y1.name),
        euler: y1.euler + euler[1].iter().sum::<i64>() + euler[2].iter().sum::<i64>(),
        class_labels: labels1,
        polarization: y1.polarization.padded(2 * alpha),
        boundary: boundary1,
        chern_numbers: chern1,
    };

    let mut labels2 = y2.class_labels.clone();
    labels2.extend((0..alpha).map(|l| exc(l, 0)));
    let mut boundary2 = BTreeMap::new();
    for (&j, v) in &y2.boundary {
        let mut coords = v.padded(alpha).into_coords();
        // Y3 ∩ Y2 = D1 loses the E_{l,1}.
        if j == 2 {
            for x in coords.iter_mut().skip(r2) {
                *x = BigInt::from(-1);
            }
        }
        boundary2.insert(j, LatticeVector::new(coords));
    }
    let new_y2 = ComponentGeometry {
        name: format!("{}~", y2.name),
        euler: y2.euler + euler[0].iter().sum::<i64>(),
        class_labels: labels2,
        polarization: y2.polarization.padded(alpha),
        boundary: boundary2,
        chern_numbers: y2
            .chern_numbers
            .map(|n| degree[0].iter().fold(n, |n, &d| transport_chern_with(n, d, conv))),
    };
    let new_y3 = y3.clone();

    let sum = |v: &[LatticeVector], len: usize| v.iter().fold(LatticeVector::zeros(len), |a, b| &a + b);

    // D1 ⊂ Y2, Y3: restriction from Y2 gains the columns c_{l,1}.
    let d1 = &config.surfaces[0];
    let rank1 = d1.lattice.rank();
    let cols1 = IntegerMatrix::from_columns(&c.classes[0], rank1)?;
    let new_d1 = SurfaceGeometry {
        restrictions: [
            Some(config.restriction(1, 0)?.hconcat(&cols1)?),
            Some(config.restriction(2, 0)?.clone()),
        ],
        boundary_self: [
            &d1.boundary_self[0] - &sum(&c.classes[0], rank1),
            d1.boundary_self[1].clone(),
        ],
        ..d1.clone()
    };

    // D2 ⊂ Y3, Y1: restriction from Y1 gains c_{l,2}, then α zero columns.
    let d2 = &config.surfaces[1];
    let rank2 = d2.lattice.rank();
    let cols2 = IntegerMatrix::from_columns(&c.classes[1], rank2)?.hconcat(&IntegerMatrix::zeros(rank2, alpha))?;
    let new_d2 = SurfaceGeometry {
        restrictions: [
            Some(config.restriction(2, 1)?.clone()),
            Some(config.restriction(0, 1)?.hconcat(&cols2)?),
        ],
        boundary_self: [
            d2.boundary_self[0].clone(),
            &d2.boundary_self[1] - &sum(&c.classes[1], rank2),
        ],
        ..d2.clone()
    };

    // D3 ⊂ Y1, Y2: blown up at the γ points of C ∩ tau, grouped by curve.
    let d3 = &config.surfaces[2];
    let rank3 = d3.lattice.rank();
    let mut point_labels = Vec::with_capacity(gamma);
    let mut group = Vec::with_capacity(alpha);
    for (l, &ml) in m.iter().enumerate() {
        let mut eps = LatticeVector::zeros(rank3 + gamma).into_coords();
        for k in 0..ml {
            eps[rank3 + point_labels.len()] = BigInt::from(1);
            point_labels.push(format!("p_{{{},{}}}", l + 1, k + 1));
        }
        group.push(LatticeVector::new(eps));
    }
    let lattice3 = d3
        .lattice
        .with_exceptional_points(format!("{}~", d3.lattice.name()), point_labels.clone())?;
    let all_points = sum(&group, rank3 + gamma);
    let pull = |v: &LatticeVector| v.padded(gamma);

    let r13 = config.restriction(0, 2)?.with_zero_rows(gamma);
    let mut cols13: Vec<LatticeVector> = group.clone();
    cols13.extend((0..alpha).map(|l| &pull(&c.classes[2][l]) - &group[l]));
    let r13 = r13.hconcat(&IntegerMatrix::from_columns(&cols13, rank3 + gamma)?)?;
    let r23 = config
        .restriction(1, 2)?
        .with_zero_rows(gamma)
        .hconcat(&IntegerMatrix::from_columns(&group, rank3 + gamma)?)?;
    let new_d3 = SurfaceGeometry {
        name: format!("{}~", d3.name),
        lattice: lattice3,
        canonical: &pull(&d3.canonical) + &all_points,
        tau_class: &pull(&d3.tau_class) - &all_points,
        euler: d3.euler + gamma as i64,
        restrictions: [Some(r13), Some(r23)],
        boundary_self: [
            &pull(&(&d3.boundary_self[0] - &sum(&c.classes[2], rank3))) + &all_points,
            pull(&d3.boundary_self[1]),
        ],
    };

    let kernel_labels: Vec<String> = (0..alpha)
        .flat_map(|l| [format!("E_{}", l + 1), format!("E'_{}", l + 1)])
        .collect();
    let kernel_classes = match &c.witnesses {
        Some(w) => kernel_classes(alpha, r1, r2, w),
        None => Vec::new(),
    };

    let mut notes = config.notes.clone();
    notes.push(format!(
        "blown up along a collective normal divisor with alpha = {alpha}, gamma = {gamma}"
    ));
    let blown = NCConfiguration {
        name: format!("{}~", config.name),
        components: [new_y1, new_y2, new_y3],
        surfaces: [new_d1, new_d2, new_d3],
        triple: config.triple,
        h2_total: config.h2_total.map(|h| h + 2 * alpha),
        lattice_is_full: config.lattice_is_full,
        notes,
    };
    let trace = BlowupTrace {
        steps,
        exceptional_labels,
        point_labels,
        kernel_labels,
        kernel_classes,
    };
    Ok((blown, trace))
}

fn kernel_classes(alpha: usize, r1: usize, r2: usize, w: &[Vec<LatticeVector>; 3]) -> Vec<KernelClass> {
    let mut out = Vec::with_capacity(2 * alpha);
    for l in 0..alpha {
        let e = LatticeVector::concat(&[
            LatticeVector::unit(r1 + 2 * alpha, r1 + l),
            LatticeVector::unit(r2 + alpha, r2 + l),
            w[2][l].clone(),
        ]);
        out.push(KernelClass {
            label: format!("E_{}", l + 1),
            coords: e,
        });
        let e_prime = LatticeVector::concat(&[
            LatticeVector::unit(r1 + 2 * alpha, r1 + alpha + l),
            &w[1][l].padded(alpha) - &LatticeVector::unit(r2 + alpha, r2 + l),
            LatticeVector::zeros(w[2][l].len()),
        ]);
        out.push(KernelClass {
            label: format!("E'_{}", l + 1),
            coords: e_prime,
        });
    }
    out
}

fn empty_trace() -> BlowupTrace {
    BlowupTrace {
        steps: Vec::new(),
        exceptional_labels: Vec::new(),
        point_labels: Vec::new(),
        kernel_labels: Vec::new(),
        kernel_classes: Vec::new(),
    }
}
