//! Invariants of the smoothing `M` of a d-semistable configuration: Euler
//! number, Hodge numbers and the pairings `Ĥ^3`, `Ĥ.c2`.
//!
//! The Euler number and `h^{1,1}` are each computed along two independent
//! routes: from the blown-up configuration `Ỹ`, and in closed form from
//! `(Y, C)`. [`hodge`] insists that the routes agree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::construction::{check_collective_divisor_with, sequential_blowup_with, BlowupTrace, CollectiveDivisor};
use crate::conventions::SignConventions;
use crate::degeneration::is_d_semistable_with;
use crate::diagnostics::has_errors;
use crate::error::{Error, Result};
use crate::exactlat::{adjunction_euler, kernel_dimension, to_i64, LatticeVector};
use crate::ncconfig::{mu_matrix_with, NCConfiguration};

pub const METHOD_BOTH: &str = "blown-up+closed-form";
pub const METHOD_CLOSED: &str = "closed-form";
pub const METHOD_DERIVED: &str = "derived";

/// How each field of [`SmoothingInvariants`] was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MethodTags {
    pub euler: String,
    pub h11: String,
    pub h12: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairings: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothingInvariants {
    pub euler: i64,
    pub h11: i64,
    pub h12: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_cubed: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_dot_c2: Option<i64>,
    pub methods: MethodTags,
}

/// Euler number of the smoothing from the d-semistable configuration itself:
/// `Σ e(Y_i) - 2 Σ e(D_j) + 3 e(tau)`.
pub fn euler_smoothing(config: &NCConfiguration) -> Result<i64> {
    euler_smoothing_with(config, SignConventions::STANDARD)
}

pub fn euler_smoothing_with(config: &NCConfiguration, conv: SignConventions) -> Result<i64> {
    let report = is_d_semistable_with(config, conv)?;
    if !report.d_semistable {
        return Err(Error::NotDSemistable {
            residual: report.residual.to_string(),
        });
    }
    Ok(base_euler(config))
}

fn base_euler(config: &NCConfiguration) -> i64 {
    config.components.iter().map(|c| c.euler).sum::<i64>()
        - 2 * config.surfaces.iter().map(|s| s.euler).sum::<i64>()
        + 3 * config.triple.euler
}

/// Euler number of the smoothing from `(Y, C)` without blowing up:
/// `Σ e(Y_i) - 2 Σ e(D_j) + 3 e(tau) + Σ_{i,l} e(c_{l,i}) - 2γ`.
pub fn euler_closed(config: &NCConfiguration, c: &CollectiveDivisor) -> Result<i64> {
    euler_closed_with(config, c, SignConventions::STANDARD)
}

pub fn euler_closed_with(config: &NCConfiguration, c: &CollectiveDivisor, conv: SignConventions) -> Result<i64> {
    require_admissible(config, c, conv)?;
    let mut curves = BigInt::zero();
    for (s, surface) in config.surfaces.iter().enumerate() {
        for class in &c.classes[s] {
            curves += adjunction_euler(class, &surface.canonical, &surface.lattice)?;
        }
    }
    let total = BigInt::from(base_euler(config)) + curves - BigInt::from(2) * c.gamma();
    to_i64(&total, "Euler number")
}

fn require_admissible(config: &NCConfiguration, c: &CollectiveDivisor, conv: SignConventions) -> Result<()> {
    let diags = check_collective_divisor_with(config, c, conv);
    if has_errors(&diags) {
        return Err(Error::Inadmissible(diags.into_iter().filter(|d| d.is_error()).collect()));
    }
    Ok(())
}

/// `h^2(Y)`: the declared value if present, else the kernel dimension of the
/// restriction map of `Y`. The flag is true when the value was computed.
pub fn h2_of(config: &NCConfiguration) -> Result<(usize, bool)> {
    match config.h2_total {
        Some(h) => Ok((h, false)),
        None if config.has_all_restrictions() => Ok((kernel_dimension(&mu_matrix_with(config, SignConventions::STANDARD)?), true)),
        None => Err(Error::InsufficientBasis(
            "h^2(Y) is neither declared nor computable from restriction data".into(),
        )),
    }
}

/// `h^{1,1} = h^2(Y) + 2α - 2`.
pub fn h11_closed(config: &NCConfiguration, c: &CollectiveDivisor) -> Result<i64> {
    let (h2, _) = h2_of(config)?;
    let h11 = h2 as i64 + 2 * c.alpha() as i64 - 2;
    if h11 < 0 {
        return Err(Error::Inconsistent(format!("h^2(Y) + 2 alpha - 2 = {h11} is negative")));
    }
    Ok(h11)
}

/// `h^{1,1} = dim ker μ̃ - 2` on the blown-up configuration.
pub fn h11_kernel(config_tilde: &NCConfiguration) -> Result<i64> {
    h11_kernel_with(config_tilde, SignConventions::STANDARD)
}

pub fn h11_kernel_with(config_tilde: &NCConfiguration, conv: SignConventions) -> Result<i64> {
    let kernel = kernel_dimension(&mu_matrix_with(config_tilde, conv)?) as i64;
    if kernel < 2 {
        return Err(Error::Inconsistent(format!(
            "restriction map of the blown-up configuration has kernel dimension {kernel} < 2"
        )));
    }
    Ok(kernel - 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PicardPairings {
    pub h_cubed: i64,
    pub h_dot_c2: i64,
    pub h_cubed_is_cube: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

/// `Ĥ^3 = Σ H_i^3` and `Ĥ.c2 = Σ (c2.H - c1^2.H)_i`, summed over components
/// with mixed terms zero. `None` when some component lacks Chern numbers.
pub fn picard_one_pairings(config: &NCConfiguration) -> Option<PicardPairings> {
    let mut h_cubed = 0i64;
    let mut h_dot_c2 = 0i64;
    for comp in &config.components {
        let n = comp.chern_numbers?;
        h_cubed += n.h_cubed;
        h_dot_c2 += n.c2_dot_h - n.c1sq_dot_h;
    }
    let caveat = match is_d_semistable_with(config, SignConventions::STANDARD) {
        Ok(r) if r.d_semistable => None,
        _ => Some("configuration is not d-semistable; the sums do not describe a smoothing".to_string()),
    };
    Some(PicardPairings {
        h_cubed,
        h_dot_c2,
        h_cubed_is_cube: is_perfect_cube(h_cubed),
        caveat,
    })
}

fn is_perfect_cube(n: i64) -> bool {
    let target = n.unsigned_abs() as u128;
    let (mut lo, mut hi) = (0u128, 1u128 << 22);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if mid * mid * mid < target {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo * lo * lo == target
}

/// A symmetric trilinear form on `Q^rank`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicTensor {
    rank: usize,
    entries: Vec<BigInt>,
}

impl CubicTensor {
    /// `entries[(a * rank + b) * rank + c]` is the value on `(e_a, e_b, e_c)`.
    pub fn new(rank: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rank * rank * rank {
            return Err(Error::Shape(format!(
                "cubic tensor of rank {rank} needs {} entries, got {}",
                rank * rank * rank,
                entries.len()
            )));
        }
        let t = CubicTensor { rank, entries };
        for a in 0..rank {
            for b in 0..rank {
                for c in 0..rank {
                    let v = t.get(a, b, c);
                    if v != t.get(b, a, c) || v != t.get(a, c, b) {
                        return Err(Error::Shape(format!("cubic tensor is not symmetric at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(t)
    }

    /// The rank-one form `x ↦ k x^3`.
    pub fn rank_one(k: i64) -> Self {
        CubicTensor {
            rank: 1,
            entries: vec![BigInt::from(k)],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn get(&self, a: usize, b: usize, c: usize) -> &BigInt {
        &self.entries[(a * self.rank + b) * self.rank + c]
    }

    pub fn cube(&self, v: &LatticeVector) -> Result<BigInt> {
        if v.len() != self.rank {
            return Err(Error::Shape(format!(
                "class of length {} against a cubic tensor of rank {}",
                v.len(),
                self.rank
            )));
        }
        let x = v.coords();
        let mut total = BigInt::zero();
        for a in 0..self.rank {
            for b in 0..self.rank {
                for c in 0..self.rank {
                    total += self.get(a, b, c) * &x[a] * &x[b] * &x[c];
                }
            }
        }
        Ok(total)
    }
}

/// Cup cube of a class given by its component pieces, mixed terms zero.
pub fn cubic_form_value(classes: &[LatticeVector], tensors: &[CubicTensor]) -> Result<BigInt> {
    if classes.len() != tensors.len() {
        return Err(Error::Shape(format!(
            "{} component classes but {} tensors",
            classes.len(),
            tensors.len()
        )));
    }
    classes
        .iter()
        .zip(tensors)
        .try_fold(BigInt::zero(), |acc, (v, t)| Ok(acc + t.cube(v)?))
}

/// Everything computed for one `(Y, C)`.
#[derive(Debug, Clone)]
pub struct SmoothingReport {
    pub invariants: SmoothingInvariants,
    /// `Ỹ`, when the restriction data allowed the blow-up to be carried out.
    pub blown_up: Option<(NCConfiguration, BlowupTrace)>,
    pub pairings: Option<PicardPairings>,
}

/// Hodge numbers of the smoothing of the blow-up of `Y` along `C`.
pub fn hodge(config: &NCConfiguration, c: &CollectiveDivisor) -> Result<SmoothingInvariants> {
    Ok(smoothing_report(config, c, SignConventions::STANDARD)?.invariants)
}

pub fn hodge_with(config: &NCConfiguration, c: &CollectiveDivisor, conv: SignConventions) -> Result<SmoothingInvariants> {
    Ok(smoothing_report(config, c, conv)?.invariants)
}

/// Runs both computation routes, cross-checks them and assembles the
/// invariants. Without complete restriction data only the closed forms are
/// used and the result is tagged accordingly.
pub fn smoothing_report(config: &NCConfiguration, c: &CollectiveDivisor, conv: SignConventions) -> Result<SmoothingReport> {
    let euler_cf = euler_closed_with(config, c, conv)?;
    let h11_cf = h11_closed(config, c)?;

    let (euler, h11, method, blown_up) = if config.has_all_restrictions() {
        let (blown, trace) = sequential_blowup_with(config, c, conv)?;
        let euler_bu = euler_smoothing_with(&blown, conv)?;
        let h11_bu = h11_kernel_with(&blown, conv)?;
        if euler_bu != euler_cf {
            return Err(Error::Inconsistent(format!(
                "Euler number {euler_bu} from the blown-up configuration disagrees with the closed form {euler_cf}"
            )));
        }
        if h11_bu != h11_cf {
            return Err(Error::Inconsistent(format!(
                "h11 = {h11_bu} from the restriction kernel disagrees with the closed form {h11_cf}"
            )));
        }
        (euler_bu, h11_bu, METHOD_BOTH, Some((blown, trace)))
    } else {
        (euler_cf, h11_cf, METHOD_CLOSED, None)
    };

    if euler.is_odd() {
        return Err(Error::Inconsistent(format!("Euler number {euler} is odd")));
    }
    let h12 = h11 - euler / 2;
    if h12.is_negative() {
        return Err(Error::Inconsistent(format!("h12 = {h12} is negative")));
    }

    let pairings = blown_up.as_ref().and_then(|(b, _)| picard_one_pairings(b));
    let pairing_tag = pairings.as_ref().map(|_| {
        if h11 == 1 { "picard-one" } else { "not-picard-one" }.to_string()
    });
    let invariants = SmoothingInvariants {
        euler,
        h11,
        h12,
        h_cubed: pairings.as_ref().map(|p| p.h_cubed),
        h_dot_c2: pairings.as_ref().map(|p| p.h_dot_c2),
        methods: MethodTags {
            euler: method.to_string(),
            h11: method.to_string(),
            h12: METHOD_DERIVED.to_string(),
            pairings: pairing_tag,
        },
    };
    Ok(SmoothingReport {
        invariants,
        blown_up,
        pairings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubes() {
        assert!(is_perfect_cube(27));
        assert!(is_perfect_cube(-8));
        assert!(is_perfect_cube(1));
        assert!(!is_perfect_cube(5));
        assert!(!is_perfect_cube(50));
    }

    #[test]
    fn cubic_form_examples() {
        let t = [CubicTensor::rank_one(1), CubicTensor::rank_one(1), CubicTensor::rank_one(3)];
        let h = [1, 1, 1].map(|x| LatticeVector::from_i64(&[x]));
        assert_eq!(cubic_form_value(&h, &t).unwrap(), BigInt::from(5));
        let e1 = [-2, 1, 1].map(|x| LatticeVector::from_i64(&[x]));
        assert_eq!(cubic_form_value(&e1, &t).unwrap(), BigInt::from(-4));
        let zero = [CubicTensor::rank_one(0), CubicTensor::rank_one(0), CubicTensor::rank_one(0)];
        assert_eq!(cubic_form_value(&h, &zero).unwrap(), BigInt::from(0));
    }

    #[test]
    fn cubic_tensor_rejects_asymmetry() {
        let mut entries = vec![BigInt::from(0); 8];
        entries[1] = BigInt::from(1);
        assert!(CubicTensor::new(2, entries).is_err());
    }
}
