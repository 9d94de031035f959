//! Collective normal divisors `{C1, C2, C3}` and the blow-up construction
//! that turns `Y` into a d-semistable `Ỹ`.

mod ample;
mod blowup;
mod json;

use num_bigint::BigInt;
use serde::Serialize;

use crate::conventions::SignConventions;
use crate::degeneration::collective_normal_class_with;
use crate::diagnostics::{sort_diagnostics, Diagnostic};
use crate::error::Result;
use crate::exactlat::{adjunction_euler, LatticeVector, RationalMatrix};
use crate::ncconfig::{adjacent, check_permutation, component_id, surface_id, ChernNumbers, NCConfiguration};

pub use ample::{ample_margin, AmpleMarginCertificate, AmpleMarginProblem};
pub use json::{divisor_from_json, DIVISOR_SCHEMA};
pub use blowup::{sequential_blowup, sequential_blowup_with, BlowupStep, BlowupTrace, KernelClass};

pub const COMPONENT_COUNT: &str = "component-count";
pub const CURVE_CLASS: &str = "curve-class";
pub const CENTER_DEGREE: &str = "center-degree";
pub const DISJOINT_CENTERS: &str = "disjoint-centers";
pub const NORMAL_CLASS_SUM: &str = "normal-class-sum";
pub const PROJECTIVITY_WITNESS: &str = "projectivity-witness";
pub const TAU_MULTIPLICITY: &str = "tau-multiplicity";

/// Curves `C_i = c_{1i} + ... + c_{αi}` on each double surface `D_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollectiveDivisor {
    /// `classes[i][l]` is `c_{l,i}` in the lattice of `D_i`.
    pub classes: [Vec<LatticeVector>; 3],
    /// `m_l`, the number of points of `c_{l,i} ∩ tau` (the same for every `i`).
    pub tau_multiplicities: Vec<BigInt>,
    /// `witnesses[i][l]` is a class `G_{l,i}` on `Y_i` restricting to
    /// `c_{l,j}` on both double surfaces `D_j` of `Y_i`.
    pub witnesses: Option<[Vec<LatticeVector>; 3]>,
}

impl CollectiveDivisor {
    /// Builds a divisor, reading each `m_l` off `c_{l,1} . tau` on `D1`.
    pub fn new(
        config: &NCConfiguration,
        classes: [Vec<LatticeVector>; 3],
        witnesses: Option<[Vec<LatticeVector>; 3]>,
    ) -> Result<Self> {
        let d1 = &config.surfaces[0];
        let tau_multiplicities = classes[0]
            .iter()
            .map(|c| d1.lattice.pair(c, &d1.tau_class))
            .collect::<Result<Vec<_>>>()?;
        Ok(CollectiveDivisor {
            classes,
            tau_multiplicities,
            witnesses,
        })
    }

    pub fn alpha(&self) -> usize {
        self.tau_multiplicities.len()
    }

    /// `γ = Σ m_l`, the number of points of `C_i ∩ tau`.
    pub fn gamma(&self) -> BigInt {
        self.tau_multiplicities.iter().sum()
    }

    pub fn g_witness_present(&self) -> bool {
        self.witnesses.is_some()
    }

    /// Follows [`NCConfiguration::permuted`] with the same `order`.
    pub fn permuted(&self, order: [usize; 3]) -> Result<Self> {
        check_permutation(order)?;
        Ok(CollectiveDivisor {
            classes: order.map(|o| self.classes[o].clone()),
            tau_multiplicities: self.tau_multiplicities.clone(),
            witnesses: self
                .witnesses
                .as_ref()
                .map(|w| order.map(|o| w[o].clone())),
        })
    }
}

/// Label of `c_{l,i}` with 1-based indices.
pub fn curve_label(l: usize, surface: usize) -> String {
    format!("c_{{{},{}}}", l + 1, surface + 1)
}

/// Checks that `C` realizes the collective normal class with matched
/// triple-curve intersections, smooth-curve parity, positive degree, and
/// (if supplied) correct projectivity witnesses.
pub fn check_collective_divisor(config: &NCConfiguration, c: &CollectiveDivisor) -> Vec<Diagnostic> {
    check_collective_divisor_with(config, c, SignConventions::STANDARD)
}

pub fn check_collective_divisor_with(
    config: &NCConfiguration,
    c: &CollectiveDivisor,
    conv: SignConventions,
) -> Vec<Diagnostic> {
    let mut out = vec![Diagnostic::note(
        DISJOINT_CENTERS,
        "C",
        "the curves c_{l,i} are assumed distinct, smooth, irreducible and pairwise disjoint",
    )];
    let alpha = c.alpha();

    for s in 0..3 {
        let surface = &config.surfaces[s];
        let lattice = &surface.lattice;
        let id = surface_id(s);
        if c.classes[s].len() != alpha {
            out.push(Diagnostic::error(
                COMPONENT_COUNT,
                &id,
                format!("{} curves on {id}, expected alpha = {alpha}", c.classes[s].len()),
            ));
            continue;
        }
        if let Some((l, bad)) = c.classes[s].iter().enumerate().find(|(_, v)| v.len() != lattice.rank()) {
            out.push(Diagnostic::error(
                CURVE_CLASS,
                format!("{} on {id}", curve_label(l, s)),
                format!("class {bad} has length {}, expected {}", bad.len(), lattice.rank()),
            ));
            continue;
        }

        match collective_normal_class_with(config, conv) {
            Ok(normal) => {
                let sum = c.classes[s]
                    .iter()
                    .fold(LatticeVector::zeros(lattice.rank()), |acc, v| &acc + v);
                if sum != normal.classes[s] {
                    out.push(Diagnostic::error(
                        NORMAL_CLASS_SUM,
                        &id,
                        format!("C_{} = {sum} but the normal class of {id} is {}", s + 1, normal.classes[s]),
                    ));
                }
            }
            Err(e) => out.push(Diagnostic::error(NORMAL_CLASS_SUM, &id, e.to_string())),
        }

        let h = restricted_polarization(config, s);
        for (l, class) in c.classes[s].iter().enumerate() {
            let locus = format!("{} on {id}", curve_label(l, s));
            if class.is_zero() {
                out.push(Diagnostic::error(CURVE_CLASS, &locus, "zero class"));
                continue;
            }
            if let Err(e) = adjunction_euler(class, &surface.canonical, lattice) {
                out.push(Diagnostic::error(CURVE_CLASS, &locus, e.to_string()));
            }
            if let Ok(m) = lattice.pair(class, &surface.tau_class) {
                if m != c.tau_multiplicities[l] {
                    out.push(Diagnostic::error(
                        TAU_MULTIPLICITY,
                        &locus,
                        format!("meets tau in {m} points, expected m_{} = {}", l + 1, c.tau_multiplicities[l]),
                    ));
                }
            }
            if let Some(h) = &h {
                if let Ok(d) = lattice.pair(class, h) {
                    if d <= BigInt::from(0) {
                        out.push(Diagnostic::error(
                            CENTER_DEGREE,
                            &locus,
                            format!("degree {d} against the polarization is not positive"),
                        ));
                    }
                }
            }
        }
    }
    for (l, m) in c.tau_multiplicities.iter().enumerate() {
        if m < &BigInt::from(0) {
            out.push(Diagnostic::error(
                TAU_MULTIPLICITY,
                format!("m_{}", l + 1),
                format!("negative intersection count {m}"),
            ));
        }
    }

    match &c.witnesses {
        None => out.push(Diagnostic::warning(
            PROJECTIVITY_WITNESS,
            "G",
            "no divisors G_{l,i} supplied; projectivity of the blow-up is unattested",
        )),
        Some(w) => check_witnesses(config, c, w, &mut out),
    }

    sort_diagnostics(&mut out);
    out
}

fn check_witnesses(
    config: &NCConfiguration,
    c: &CollectiveDivisor,
    w: &[Vec<LatticeVector>; 3],
    out: &mut Vec<Diagnostic>,
) {
    for (i, list) in w.iter().enumerate() {
        if list.len() != c.alpha() {
            out.push(Diagnostic::error(
                PROJECTIVITY_WITNESS,
                component_id(i),
                format!("{} witnesses, expected {}", list.len(), c.alpha()),
            ));
            continue;
        }
        for (l, g) in list.iter().enumerate() {
            for s in (0..3).filter(|&s| s != i) {
                let Ok(r) = config.restriction(i, s) else { continue };
                let Some(target) = c.classes[s].get(l) else { continue };
                match r.mul_vec(g) {
                    Ok(img) if &img == target => {}
                    Ok(img) => out.push(Diagnostic::error(
                        PROJECTIVITY_WITNESS,
                        format!("G_{{{},{}}}", l + 1, i + 1),
                        format!("restricts to {img} on {}, expected {}", surface_id(s), curve_label(l, s)),
                    )),
                    Err(e) => out.push(Diagnostic::error(
                        PROJECTIVITY_WITNESS,
                        format!("G_{{{},{}}}", l + 1, i + 1),
                        e.to_string(),
                    )),
                }
            }
        }
    }
}

/// The common restriction of the polarizations to `D_s`, taken from the
/// first adjacent component.
pub(crate) fn restricted_polarization(config: &NCConfiguration, s: usize) -> Option<LatticeVector> {
    let c = adjacent(s)[0];
    let r = config.restriction(c, s).ok()?;
    r.mul_vec(&config.components[c].polarization).ok()
}

/// Chern numbers of a threefold after blowing up a smooth curve of
/// `H`-degree `d`: `(H^3, c2.H + d, c1^2.H - d)`, with `H` pulled back.
pub fn transport_chern(n: ChernNumbers, d: i64) -> ChernNumbers {
    transport_chern_with(n, d, SignConventions::STANDARD)
}

pub fn transport_chern_with(n: ChernNumbers, d: i64, conv: SignConventions) -> ChernNumbers {
    let shift = conv.chern_transport * d;
    ChernNumbers {
        h_cubed: n.h_cubed,
        c2_dot_h: n.c2_dot_h + shift,
        c1sq_dot_h: n.c1sq_dot_h - shift,
    }
}

/// Extends the restriction map of `Y` by `2α` domain columns (the kernel
/// classes `E_l, E'_l`, which map to zero) and `γ` codomain rows (the
/// exceptional point classes of `D̃3`, which no old class meets).
pub fn extend_mu(mu: &RationalMatrix, alpha: usize, gamma: usize) -> RationalMatrix {
    mu.padded(gamma, 2 * alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transport_examples() {
        let p3 = ChernNumbers::new(1, 6, 16);
        let once = transport_chern(p3, 15);
        assert_eq!(once, ChernNumbers::new(1, 21, 1));
        assert_eq!(transport_chern(once, 5), ChernNumbers::new(1, 26, -4));
        assert_eq!(transport_chern(p3, 0), p3);
    }

    #[test]
    fn extend_mu_adds_kernel() {
        let mu = RationalMatrix::from_i64(&[vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]], 3).unwrap();
        let ext = extend_mu(&mu, 1, 15);
        assert_eq!(crate::exactlat::kernel_dimension(&ext), 3);
        assert_eq!(ext.rows(), 18);
        assert_eq!(crate::exactlat::kernel_dimension(&extend_mu(&mu, 5, 15)), 11);
        assert_eq!(extend_mu(&mu, 0, 0), mu);
    }
}
