//! Shared workloads for the criterion benches.

use qkdiff_core::adelic::check_condition_i;
use qkdiff_core::jfun::{cpn_pform, cy_limit_route, point_small_j, ToricSpec};
use qkdiff_core::rings::global_residue_parts;

/// The P-form for `ℂP^n` through degree `qdeg`.
pub fn pform(n: usize, qdeg: usize) {
    cpn_pform(&ToricSpec::new(n, qdeg)).expect("P-form");
}

/// Residue-theorem sums over every component of the `ℂP^n` P-form.
pub fn pform_residues(n: usize, qdeg: usize) {
    let pf = cpn_pform(&ToricSpec::new(n, qdeg)).expect("P-form");
    for c in pf.coeffs() {
        for comp in c.components() {
            global_residue_parts(&comp).expect("residues");
        }
    }
}

/// The `λ → 1` limit route of the local Calabi–Yau series.
pub fn cy_limit(qdeg: usize) {
    cy_limit_route(qdeg).expect("limit route");
}

/// Condition (i) on the point series.
pub fn point_condition_i(qdeg: usize, order: i64) {
    check_condition_i(&point_small_j(qdeg), order).expect("condition (i)");
}
