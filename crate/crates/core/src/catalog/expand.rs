//! Summary of the configurations obtained by a base change `t -> t^3`
//! followed by resolution: each step inserts a `P1`-bundle over the triple
//! curve. Only numerical descriptors are produced.

use serde::Serialize;

use crate::degeneration::is_d_semistable;
use crate::error::{Error, Result};
use crate::ncconfig::{DualComplexInfo, NCConfiguration};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AddedComponent {
    pub description: String,
    /// `2 e(tau)`, the Euler number of a `P1`-bundle over `tau`.
    pub euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpandedConfiguration {
    pub component_count: usize,
    pub added_components: Vec<AddedComponent>,
    pub dual_complex: DualComplexInfo,
    /// False when an added component has `h^1(O) != 0`, i.e. when `tau` is
    /// not rational; the usual smoothability theorem then does not apply.
    pub kn_hypothesis_ok: bool,
}

pub fn base_change_expand(config: &NCConfiguration, times: usize) -> Result<ExpandedConfiguration> {
    if times == 0 {
        return Err(Error::Unsupported("base change must add at least one component".into()));
    }
    let report = is_d_semistable(config)?;
    if !report.d_semistable {
        return Err(Error::NotDSemistable {
            residual: report.residual.to_string(),
        });
    }
    if !config.triple.connected {
        return Err(Error::Unsupported("base change needs a connected triple curve".into()));
    }
    let e_tau = config.triple.euler;
    let added_components = (1..=times)
        .map(|k| AddedComponent {
            description: format!("P1-bundle over the triple curve (step {k})"),
            euler: 2 * e_tau,
        })
        .collect();
    Ok(ExpandedConfiguration {
        component_count: 3 + times,
        added_components,
        dual_complex: DualComplexInfo::for_components(3 + times, 1 + 2 * times)?,
        kn_hypothesis_ok: e_tau == 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{instantiate, FamilyId, PartitionSpec};
    use crate::construction::sequential_blowup;

    fn blown_quintic() -> NCConfiguration {
        let p = PartitionSpec::degrees(&[5]).unwrap();
        let (y, c) = instantiate(FamilyId::Quintic, &p, None).unwrap();
        sequential_blowup(&y, &c).unwrap().0
    }

    #[test]
    fn one_step() {
        let x = base_change_expand(&blown_quintic(), 1).unwrap();
        assert_eq!(x.component_count, 4);
        assert_eq!(x.added_components[0].euler, 0);
        assert_eq!(x.dual_complex.max_cells, 3);
        assert!(!x.kn_hypothesis_ok);
    }

    #[test]
    fn two_steps_and_rational_tau() {
        let mut y = blown_quintic();
        assert_eq!(base_change_expand(&y, 2).unwrap().component_count, 5);
        y.triple.euler = 2;
        let x = base_change_expand(&y, 1).unwrap();
        assert!(x.kn_hypothesis_ok);
        assert_eq!(x.added_components[0].euler, 4);
    }

    #[test]
    fn rejects_bad_input() {
        let raw = crate::catalog::base_configuration(FamilyId::Quintic).unwrap();
        assert!(matches!(base_change_expand(&raw, 1), Err(Error::NotDSemistable { .. })));
        assert!(base_change_expand(&blown_quintic(), 0).is_err());
        let mut y = blown_quintic();
        y.triple.connected = false;
        assert!(base_change_expand(&y, 1).is_err());
    }
}
