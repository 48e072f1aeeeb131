//! Greedy decomposition of cluster-additive functions into non-negative
//! combinations of cluster-hammock functions, plus the exhaustive anchor
//! scanner built on it.
//!
//! The decomposition repeatedly finds a vertex with a negative residual
//! value and subtracts `g(z)⁻ · h_z`. Each subtraction is guarded by the
//! order check `g(z)⁻ h_z ≤ g`, which keeps the residual cluster-additive
//! and strictly shrinks the slice norm `|g|_S = Σ_S |g(x)|`, so the loop
//! terminates. On type A the subtraction is a theorem; on D and E it is
//! conjectural and every run is re-verified, so a wrong decomposition can
//! never be reported as success.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::cluster::{neg_part, pos_part, ClusterFunction};
use crate::error::{Error, Result};
use crate::hammock::cluster_hammock;
use crate::quiver::{DynkinType, QuiverSpec, Window, ZVertex};
use crate::tilting::reps_form_partial_tilting;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DecomposeStatus {
    /// Residual identically zero on the scanned window.
    Decomposed,
    /// A subtraction would have broken cluster-additivity; the input cannot
    /// be a non-negative combination (anomaly for genuine inputs).
    ResidualNonzero,
    /// Residual non-negative but non-zero and no negative vertex remains in
    /// the window: a conjecture-anomaly signal, never dropped silently.
    WindowExhausted,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Coefficient per F-orbit representative.
    pub terms: BTreeMap<ZVertex, i64>,
    pub status: DecomposeStatus,
    /// Sum of |residual| over the scanned window after the last step.
    pub residual_norm: i64,
    pub steps: usize,
    /// Anomaly details, when any.
    pub notes: Vec<String>,
}

impl Decomposition {
    pub fn is_clean(&self) -> bool {
        self.status == DecomposeStatus::Decomposed && self.notes.is_empty()
    }
}

struct Residual<'a> {
    f: &'a ClusterFunction,
    terms: Vec<(ClusterFunction, i64)>,
}

impl Residual<'_> {
    fn value(&self, v: ZVertex) -> i64 {
        let mut sum = self.f.evaluate(v) as i128;
        for (h, c) in &self.terms {
            sum -= *c as i128 * h.evaluate(v) as i128;
        }
        i64::try_from(sum).expect("residual overflow")
    }
}

/// Scan order: levels outward from the anchor slice (forward before
/// backward), bases ascending inside a level.
fn scan_levels(anchor: i32, span: i32) -> Vec<i32> {
    let mut levels = vec![anchor];
    for d in 1..=span {
        levels.push(anchor + d);
        levels.push(anchor - d);
    }
    levels
}

/// Decompose `f` into `Σ n_x h_x`, scanning up to `max_domains` fundamental
/// domains on both sides of the anchor slice.
pub fn decompose(f: &ClusterFunction, max_domains: u32) -> Result<Decomposition> {
    let q = f.quiver();
    let maps = q.shift_maps()?;
    let is_type_a = matches!(q.dynkin_type(), Some(DynkinType::A(_)));
    let anchor = f.base_level();
    let span = maps.max_f_level_offset() * max_domains.max(1) as i32;
    let window = Window::levels(q, anchor - span, anchor + span);
    let order: Vec<ZVertex> = scan_levels(anchor, span)
        .into_iter()
        .flat_map(|level| (0..q.vertex_count() as u32).map(move |b| ZVertex::new(b, level)))
        .collect();

    let mut residual = Residual {
        f,
        terms: Vec::new(),
    };
    let mut terms: BTreeMap<ZVertex, i64> = BTreeMap::new();
    let mut notes = Vec::new();
    let mut steps = 0usize;
    let slice_norm = |r: &Residual| -> i128 {
        (0..q.vertex_count() as u32)
            .map(|b| (r.value(ZVertex::new(b, anchor)) as i128).abs())
            .sum()
    };
    let mut norm = slice_norm(&residual);
    let status = loop {
        let negative = order.iter().copied().find(|&v| residual.value(v) < 0);
        let Some(z) = negative else {
            let window_norm: i128 = window
                .vertices()
                .into_iter()
                .map(|v| (residual.value(v) as i128).abs())
                .sum();
            if window_norm == 0 {
                break DecomposeStatus::Decomposed;
            }
            break DecomposeStatus::WindowExhausted;
        };
        let c = neg_part(residual.value(z));
        let rep = maps.orbit_rep(z);
        let h = cluster_hammock(q, rep)?;
        // order guard: c·h_z ≤ residual keeps the residual cluster-additive
        let guarded = window.vertices().into_iter().all(|v| {
            let hv = h.evaluate(v);
            let rv = residual.value(v);
            pos_part(c * hv) <= pos_part(rv) && neg_part(c * hv) <= neg_part(rv)
        });
        if !guarded {
            notes.push(format!(
                "subtracting {}·h_{} breaks cluster-additivity",
                c,
                q.format_vertex(rep)
            ));
            break DecomposeStatus::ResidualNonzero;
        }
        if is_type_a && residual.value(z) != residual.value(maps.shift_f(z)) {
            notes.push(format!(
                "negative value at {} is not F-invariant",
                q.format_vertex(z)
            ));
            break DecomposeStatus::ResidualNonzero;
        }
        *terms.entry(rep).or_insert(0) += c;
        residual.terms.push((h, c));
        steps += 1;
        let new_norm = slice_norm(&residual);
        if new_norm >= norm {
            notes.push(format!(
                "slice norm failed to decrease ({norm} -> {new_norm})"
            ));
            break DecomposeStatus::ResidualNonzero;
        }
        norm = new_norm;
    };
    let residual_norm: i128 = window
        .vertices()
        .into_iter()
        .map(|v| (residual.value(v) as i128).abs())
        .sum();
    Ok(Decomposition {
        terms,
        status,
        residual_norm: i64::try_from(residual_norm).expect("norm overflow"),
        steps,
        notes,
    })
}

/// Checks of the three conjectured properties of a cluster-additive
/// function, each reported with witnesses.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    /// (a) F-invariance over the window.
    pub f_invariant: bool,
    /// (b) the negative locus is the union of F-orbits of a partial tilting set.
    pub negative_locus_partial_tilting: bool,
    /// The orbit representatives of the negative locus.
    pub negative_reps: Vec<ZVertex>,
    /// (c) `f = Σ f(x)⁻ h_x` over that set, on the window.
    pub combination_matches: bool,
    pub residual_norm: i64,
}

impl PropertyReport {
    pub fn all_hold(&self) -> bool {
        self.f_invariant && self.negative_locus_partial_tilting && self.combination_matches
    }
}

/// Evaluate conjecture properties (a), (b), (c) on `domains` fundamental
/// domains around the anchor slice.
pub fn conjecture_properties(f: &ClusterFunction, domains: u32) -> Result<PropertyReport> {
    let q = f.quiver();
    let maps = q.shift_maps()?;
    let anchor = f.base_level();
    let span = maps.max_f_level_offset() * domains.max(1) as i32;
    let window = Window::levels(q, anchor - span, anchor + span);

    let f_invariant = window
        .vertices()
        .into_iter()
        .all(|v| f.evaluate(v) == f.evaluate(maps.shift_f(v)));

    let mut negative_reps: Vec<ZVertex> = window
        .vertices()
        .into_iter()
        .filter(|&v| f.evaluate(v) < 0)
        .map(|v| maps.orbit_rep(v))
        .collect();
    negative_reps.sort();
    negative_reps.dedup();

    // every window vertex in one of those orbits must itself be negative
    let locus_exact = window
        .vertices()
        .into_iter()
        .all(|v| (f.evaluate(v) < 0) == negative_reps.binary_search(&maps.orbit_rep(v)).is_ok());
    let negative_locus_partial_tilting =
        locus_exact && reps_form_partial_tilting(q, &negative_reps)?;

    let functions: Vec<(ClusterFunction, i64)> = negative_reps
        .iter()
        .map(|&x| cluster_hammock(q, x).map(|h| (h, neg_part(f.evaluate(x)))))
        .collect::<Result<_>>()?;
    let mut residual_norm: i128 = 0;
    for v in window.vertices() {
        let mut sum = f.evaluate(v) as i128;
        for (h, c) in &functions {
            sum -= *c as i128 * h.evaluate(v) as i128;
        }
        residual_norm += sum.abs();
    }
    Ok(PropertyReport {
        f_invariant,
        negative_locus_partial_tilting,
        negative_reps,
        combination_matches: residual_norm == 0,
        residual_norm: i64::try_from(residual_norm).expect("norm overflow"),
    })
}

/// Aggregate result of an exhaustive anchor scan.
#[derive(Clone, Debug, Default)]
pub struct ScanOutcome {
    pub anchors: u64,
    pub decomposed: u64,
    pub anomalies: u64,
    /// Anchor value tuples that failed, capped at 100 entries.
    pub anomaly_anchors: Vec<Vec<i64>>,
}

impl ScanOutcome {
    pub fn summary(&self) -> String {
        format!(
            "anchors={} decomposed={} anomalies={}",
            self.anchors, self.decomposed, self.anomalies
        )
    }
}

/// Number of anchors of a scan over `[lo, hi]^Δ₀`; zero when `lo > hi`.
pub fn scan_anchor_count(q: &QuiverSpec, lo: i64, hi: i64) -> u64 {
    if lo > hi {
        return 0;
    }
    let width = (hi - lo + 1) as u64;
    width.pow(q.vertex_count() as u32)
}

/// Anchor value tuple for a lexicographic index (base order, last base
/// fastest).
pub fn anchor_values(q: &QuiverSpec, lo: i64, hi: i64, index: u64) -> Vec<i64> {
    let width = (hi - lo + 1) as u64;
    let n = q.vertex_count();
    let mut values = vec![0i64; n];
    let mut rest = index;
    for b in (0..n).rev() {
        values[b] = lo + (rest % width) as i64;
        rest /= width;
    }
    values
}

/// Worker pool size: `CLUSTER_QUIVER_THREADS` when set, otherwise the
/// available parallelism.
pub fn worker_threads() -> usize {
    std::env::var("CLUSTER_QUIVER_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Per-anchor verdict: clean flag, the term index set, the anchor values.
type AnchorVerdict = (bool, Vec<ZVertex>, Vec<i64>);

fn verify_anchor(q: &Arc<QuiverSpec>, values: Vec<i64>, max_domains: u32) -> Result<AnchorVerdict> {
    let f = ClusterFunction::from_standard(Arc::clone(q), 0, values.clone())?;
    let d = decompose(&f, max_domains)?;
    if !d.is_clean() {
        return Ok((false, Vec::new(), values));
    }
    // re-summation check with fresh hammock functions
    let maps = q.shift_maps()?;
    let span = maps.max_f_level_offset() * max_domains.max(1) as i32;
    let window = Window::levels(q, -span, span);
    let functions: Vec<(ClusterFunction, i64)> = d
        .terms
        .iter()
        .map(|(&x, &c)| cluster_hammock(q, x).map(|h| (h, c)))
        .collect::<Result<_>>()?;
    for v in window.vertices() {
        let mut sum: i128 = 0;
        for (h, c) in &functions {
            sum += *c as i128 * h.evaluate(v) as i128;
        }
        if sum != f.evaluate(v) as i128 {
            return Ok((false, Vec::new(), values));
        }
    }
    Ok((true, d.terms.keys().copied().collect(), values))
}

/// Scan a contiguous anchor index range, decomposing and verifying each
/// anchor. Index bounds are clamped to the total count.
pub fn scan_range(
    q: &Arc<QuiverSpec>,
    lo: i64,
    hi: i64,
    start: u64,
    end: u64,
    max_domains: u32,
) -> Result<ScanOutcome> {
    if q.shift_maps().is_err() {
        return Err(Error::NonDynkin);
    }
    let total = scan_anchor_count(q, lo, hi);
    let start = start.min(total);
    let end = end.min(total);
    if start >= end {
        return Ok(ScanOutcome::default());
    }
    let indices: Vec<u64> = (start..end).collect();
    let threads = worker_threads().min(indices.len()).max(1);
    let chunk = indices.len().div_ceil(threads);
    let mut slots: Vec<Option<Result<AnchorVerdict>>> = Vec::with_capacity(indices.len());
    slots.resize_with(indices.len(), || None);
    std::thread::scope(|scope| {
        for (t, slot_chunk) in slots.chunks_mut(chunk).enumerate() {
            let q = Arc::clone(q);
            let index_chunk = &indices[t * chunk..(t * chunk + slot_chunk.len())];
            scope.spawn(move || {
                for (slot, &idx) in slot_chunk.iter_mut().zip(index_chunk) {
                    let values = anchor_values(&q, lo, hi, idx);
                    *slot = Some(verify_anchor(&q, values, max_domains));
                }
            });
        }
    });
    let mut outcome = ScanOutcome::default();
    // distinct term sets verified once; they are tiny in number
    let mut tilting_cache: HashMap<Vec<ZVertex>, bool> = HashMap::new();
    for slot in slots {
        let (ok, term_set, values) = slot.expect("worker filled every slot")?;
        outcome.anchors += 1;
        let tilting_ok = if ok {
            *match tilting_cache.entry(term_set.clone()) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(e) => {
                    let verdict = reps_form_partial_tilting(q, &term_set)?;
                    e.insert(verdict)
                }
            }
        } else {
            false
        };
        if ok && tilting_ok {
            outcome.decomposed += 1;
        } else {
            outcome.anomalies += 1;
            if outcome.anomaly_anchors.len() < 100 {
                outcome.anomaly_anchors.push(values);
            }
        }
    }
    Ok(outcome)
}

/// Exhaustive scan over all anchors with values in `[lo, hi]`.
pub fn conjecture_scan(
    q: &Arc<QuiverSpec>,
    lo: i64,
    hi: i64,
    max_domains: u32,
) -> Result<ScanOutcome> {
    if lo > hi {
        return Ok(ScanOutcome::default());
    }
    let total = scan_anchor_count(q, lo, hi);
    scan_range(q, lo, hi, 0, total, max_domains)
}
