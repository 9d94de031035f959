use num_bigint::BigInt;
use num_integer::Integer;

use super::{adjacent, component_id, mu_matrix, surface_between, surface_id, NCConfiguration};
use crate::diagnostics::{sort_diagnostics, Diagnostic};
use crate::exactlat::{adjunction_euler, kernel_dimension, LatticeVector};

pub const ADJUNCTION_PARITY: &str = "adjunction-parity";
pub const AMPLE_MATCHING: &str = "ample-matching";
pub const ANTICANONICAL: &str = "anticanonical";
pub const BOUNDARY_RESTRICTION: &str = "boundary-restriction";
pub const CONNECTIVITY: &str = "connectivity";
pub const DIMENSION: &str = "dimension";
pub const H2_RANK: &str = "h2-rank";
pub const NORMAL_TRIPLE: &str = "normal-triple";
pub const TRACKED_SUBLATTICE: &str = "tracked-sublattice";
pub const TRIPLE_GENUS: &str = "triple-genus";
pub const VANISHING_COHOMOLOGY: &str = "vanishing-cohomology";

/// Checks every numerically checkable standing hypothesis on `Y`.
///
/// Returns the diagnostics ordered by clause then locus; the configuration
/// is valid when none has severity `Error`. Hypotheses the numerical data
/// cannot see (vanishing of `H^1, H^2` of the structure sheaves, the
/// anticanonical boundary on the threefolds themselves) are reported as notes.
pub fn validate(config: &NCConfiguration) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    out.push(Diagnostic::note(
        VANISHING_COHOMOLOGY,
        "components",
        "H^1(O) = H^2(O) = 0 on Y1, Y2, Y3 is assumed, not checked",
    ));
    out.push(Diagnostic::note(
        VANISHING_COHOMOLOGY,
        "surfaces",
        "H^1(O) = H^2(O) = 0 and connectedness of D1, D2, D3 are assumed, not checked",
    ));
    out.push(Diagnostic::note(
        ANTICANONICAL,
        "components",
        "-(sum of the double surfaces) being canonical on each Y_i is assumed; \
         only its restriction K_D = -tau to each surface is checked",
    ));
    if !config.lattice_is_full {
        out.push(Diagnostic::note(
            TRACKED_SUBLATTICE,
            "surfaces",
            "surface lattices are tracked sublattices; linear equivalence is decided on coordinates",
        ));
    }

    if !config.triple.connected {
        out.push(Diagnostic::error(CONNECTIVITY, "tau", "the triple curve is not connected"));
    }
    let e_tau = config.triple.euler;
    if e_tau.is_odd() || e_tau > 2 {
        out.push(Diagnostic::error(
            TRIPLE_GENUS,
            "tau",
            format!("e(tau) = {e_tau} is not the Euler number of a connected smooth curve"),
        ));
    }

    let dims_ok = check_dimensions(config, &mut out);
    for s in 0..3 {
        if dims_ok[s] {
            check_surface(config, s, &mut out);
        }
    }
    if dims_ok.iter().all(|&ok| ok) {
        check_boundary(config, &mut out);
        check_normal_triple(config, &mut out);
        if let Some(declared) = config.h2_total {
            if config.has_all_restrictions() {
                if let Ok(m) = mu_matrix(config) {
                    let kernel = kernel_dimension(&m);
                    if kernel != declared {
                        out.push(Diagnostic::error(
                            H2_RANK,
                            "Y",
                            format!("declared h^2(Y) = {declared} but the restriction map has kernel dimension {kernel}"),
                        ));
                    }
                }
            }
        }
    }

    sort_diagnostics(&mut out);
    out
}

/// Returns, per surface, whether every vector and matrix touching it has
/// consistent dimensions.
fn check_dimensions(config: &NCConfiguration, out: &mut Vec<Diagnostic>) -> [bool; 3] {
    let mut comp_ok = [true; 3];
    for (i, comp) in config.components.iter().enumerate() {
        let id = component_id(i);
        let rank = comp.h2_rank();
        if rank == 0 {
            out.push(Diagnostic::error(DIMENSION, &id, "H^2 rank must be positive"));
            comp_ok[i] = false;
        }
        if comp.polarization.len() != rank {
            out.push(Diagnostic::error(
                DIMENSION,
                &id,
                format!("polarization has length {}, expected {rank}", comp.polarization.len()),
            ));
            comp_ok[i] = false;
        }
        for (&j, v) in &comp.boundary {
            if j == i || j > 2 {
                out.push(Diagnostic::error(
                    DIMENSION,
                    &id,
                    format!("boundary class keyed by invalid component {}", j + 1),
                ));
                comp_ok[i] = false;
            } else if v.len() != rank {
                out.push(Diagnostic::error(
                    DIMENSION,
                    &id,
                    format!("class of {} ∩ {} has length {}, expected {rank}", component_id(j), id, v.len()),
                ));
                comp_ok[i] = false;
            }
        }
        if let Some(ch) = comp.chern_numbers {
            if ch.h_cubed < 1 {
                out.push(Diagnostic::error(DIMENSION, &id, "H^3 must be positive"));
            }
        }
    }

    let mut ok = [true; 3];
    for (s, surface) in config.surfaces.iter().enumerate() {
        let id = surface_id(s);
        let rank = surface.lattice.rank();
        let mut vectors = vec![("canonical class", &surface.canonical), ("tau class", &surface.tau_class)];
        for (k, v) in surface.boundary_self.iter().enumerate() {
            let label = if k == 0 { "first normal class" } else { "second normal class" };
            vectors.push((label, v));
        }
        for (label, v) in vectors {
            if v.len() != rank {
                out.push(Diagnostic::error(
                    DIMENSION,
                    &id,
                    format!("{label} has length {}, expected {rank}", v.len()),
                ));
                ok[s] = false;
            }
        }
        for (k, &c) in adjacent(s).iter().enumerate() {
            if !comp_ok[c] {
                ok[s] = false;
            }
            if let Some(m) = &surface.restrictions[k] {
                let cols = config.components[c].h2_rank();
                if m.rows() != rank || m.cols() != cols {
                    out.push(Diagnostic::error(
                        DIMENSION,
                        &id,
                        format!(
                            "restriction from {} is {}x{}, expected {rank}x{cols}",
                            component_id(c),
                            m.rows(),
                            m.cols()
                        ),
                    ));
                    ok[s] = false;
                }
            }
        }
    }
    ok
}

fn check_surface(config: &NCConfiguration, s: usize, out: &mut Vec<Diagnostic>) {
    let surface = &config.surfaces[s];
    let id = surface_id(s);
    let lattice = &surface.lattice;
    let tau = &surface.tau_class;
    let pair = |u: &LatticeVector, v: &LatticeVector| lattice.pair(u, v).expect("dimensions checked");

    let parity_sum = pair(tau, tau) + pair(tau, &surface.canonical);
    if parity_sum.is_odd() {
        out.push(Diagnostic::error(
            ADJUNCTION_PARITY,
            &id,
            format!("tau.tau + tau.K = {parity_sum} is odd, so tau is not a smooth curve class"),
        ));
    } else if !tau.is_zero() {
        if let Ok(e) = adjunction_euler(tau, &surface.canonical, lattice) {
            if e != BigInt::from(config.triple.euler) {
                out.push(Diagnostic::error(
                    TRIPLE_GENUS,
                    &id,
                    format!("adjunction gives e(tau) = {e} but the triple curve declares {}", config.triple.euler),
                ));
            }
        }
    }

    if !(&surface.canonical + tau).is_zero() {
        out.push(Diagnostic::error(
            ANTICANONICAL,
            &id,
            format!("K = {} is not -tau = {}", surface.canonical, -tau),
        ));
    }

    let adj = adjacent(s);
    if let (Some(r0), Some(r1)) = (&surface.restrictions[0], &surface.restrictions[1]) {
        let h0 = r0.mul_vec(&config.components[adj[0]].polarization);
        let h1 = r1.mul_vec(&config.components[adj[1]].polarization);
        if let (Ok(h0), Ok(h1)) = (h0, h1) {
            if h0 != h1 {
                out.push(Diagnostic::error(
                    AMPLE_MATCHING,
                    format!("{id} ({})", surface.name),
                    format!(
                        "H{} restricts to {h0} but H{} restricts to {h1}",
                        adj[0] + 1,
                        adj[1] + 1
                    ),
                ));
            }
        }
    }
}

/// On component `c`, the double surface `D_s` is the divisor `Y_o ∩ Y_c`
/// (`o` the third index); its restriction to `D_s` must be the recorded
/// normal class, and the other double surface must restrict to `tau`.
fn check_boundary(config: &NCConfiguration, out: &mut Vec<Diagnostic>) {
    for (c, comp) in config.components.iter().enumerate() {
        for s in (0..3).filter(|&s| s != c) {
            let Ok(r) = config.restriction(c, s) else { continue };
            let o = surface_between(c, s);
            let locus = format!("{} on {}", component_id(c), surface_id(s));
            if let Some(v) = comp.boundary.get(&o) {
                if let Ok(img) = r.mul_vec(v) {
                    let expected = config.normal_in(s, c);
                    if &img != expected {
                        out.push(Diagnostic::error(
                            BOUNDARY_RESTRICTION,
                            &locus,
                            format!(
                                "{} ∩ {} restricts to {img}, but the normal class is {expected}",
                                component_id(o),
                                component_id(c)
                            ),
                        ));
                    }
                }
            }
            if let Some(v) = comp.boundary.get(&s) {
                if let Ok(img) = r.mul_vec(v) {
                    let tau = &config.surfaces[s].tau_class;
                    if &img != tau {
                        out.push(Diagnostic::error(
                            BOUNDARY_RESTRICTION,
                            &locus,
                            format!(
                                "{} ∩ {} restricts to {img}, but tau is {tau}",
                                component_id(s),
                                component_id(c)
                            ),
                        ));
                    }
                }
            }
        }
    }
}

/// Inside `Y_k` the two double surfaces `D_i, D_j` meet along `tau`, so the
/// degree of the normal bundle of `D_j` on `tau` equals `tau^2` in `D_i`.
fn check_normal_triple(config: &NCConfiguration, out: &mut Vec<Diagnostic>) {
    for k in 0..3 {
        let [i, j] = adjacent(k);
        for (a, b) in [(i, j), (j, i)] {
            let sa = &config.surfaces[a];
            let sb = &config.surfaces[b];
            let lhs = sa.lattice.pair(config.normal_in(a, k), &sa.tau_class);
            let rhs = sb.lattice.square(&sb.tau_class);
            if let (Ok(lhs), Ok(rhs)) = (lhs, rhs) {
                if lhs != rhs {
                    out.push(Diagnostic::error(
                        NORMAL_TRIPLE,
                        format!("{} in {}", surface_id(a), component_id(k)),
                        format!(
                            "normal class of {} meets tau in degree {lhs}, but tau^2 on {} is {rhs}",
                            surface_id(a),
                            surface_id(b)
                        ),
                    ));
                }
            }
        }
    }
}
