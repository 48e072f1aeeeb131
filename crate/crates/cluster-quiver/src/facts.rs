//! Executable checks of the basic sign facts about cluster-additive
//! functions: non-negative tables are cluster-additive iff additive, a
//! negative value forces a compensating positive at τz, and sign-constant
//! functions on Dynkin windows vanish.

use crate::cluster::{check_additive, check_cluster_additive, ClusterFunction};
use crate::error::{Error, Result};
use crate::quiver::{QuiverSpec, Window, ZVertex};
use std::collections::BTreeMap;

/// For a table with only non-negative values, the cluster-additive and
/// additive mesh checks must agree mesh by mesh. Returns whether they do.
pub fn nonneg_cluster_additive_iff_additive(
    values: &BTreeMap<ZVertex, i64>,
    window: &Window,
    q: &QuiverSpec,
) -> Result<bool> {
    if let Some((v, _)) = values.iter().find(|&(_, &x)| x < 0) {
        return Err(Error::PreconditionNotMet(format!(
            "table is negative at {}",
            q.format_vertex(*v)
        )));
    }
    let cluster: Vec<ZVertex> = check_cluster_additive(values, window, q)?
        .into_iter()
        .map(|viol| viol.z)
        .collect();
    let additive: Vec<ZVertex> = check_additive(values, window, q)?
        .into_iter()
        .map(|viol| viol.z)
        .collect();
    Ok(cluster == additive)
}

/// Vertices violating `f(z) < 0 ⇒ f(τz) ≥ −f(z)`. Empty for every
/// cluster-additive function.
pub fn negative_tau_bound_violations(f: &ClusterFunction, window: &Window) -> Vec<ZVertex> {
    window
        .vertices()
        .into_iter()
        .filter(|&z| {
            let fz = f.evaluate(z);
            fz < 0 && f.evaluate(z.tau()) < -fz
        })
        .collect()
}

/// Sign pattern of a function over a window of fundamental domains.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SignPattern {
    AllZero,
    NonNegative,
    NonPositive,
    Mixed,
}

/// Classify the sign pattern of `f` over `domains` fundamental domains
/// around its anchor slice, and report whether the vanishing fact holds:
/// a sign-constant pattern must be all-zero.
pub fn sign_constant_implies_zero(
    f: &ClusterFunction,
    domains: u32,
) -> Result<(SignPattern, bool)> {
    let q = f.quiver();
    let maps = q.shift_maps()?;
    let span = maps.max_f_level_offset() * domains.max(1) as i32;
    let anchor = f.base_level();
    let window = Window::levels(q, anchor - span, anchor + span);
    let mut any_pos = false;
    let mut any_neg = false;
    for v in window.vertices() {
        let x = f.evaluate(v);
        any_pos |= x > 0;
        any_neg |= x < 0;
    }
    let pattern = match (any_pos, any_neg) {
        (false, false) => SignPattern::AllZero,
        (true, false) => SignPattern::NonNegative,
        (false, true) => SignPattern::NonPositive,
        (true, true) => SignPattern::Mixed,
    };
    let holds = !matches!(pattern, SignPattern::NonNegative | SignPattern::NonPositive);
    Ok((pattern, holds))
}
