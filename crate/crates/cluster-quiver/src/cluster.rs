//! Cluster-additive functions on ZΔ: extension from a slice, evaluation,
//! reflection, and the sum/difference/compatibility/order algebra.
//!
//! A function `f` is cluster-additive when every mesh satisfies
//! `f(z) + f(τz) = Σ_y m_{yz} f(y)⁺`. Values on any slice determine the
//! function uniquely, so a [`ClusterFunction`] stores a slice assignment and
//! computes levels on demand.
//!
//! Arithmetic is overflow-checked: a value escaping `i64` aborts with a
//! panic rather than wrapping.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quiver::{QuiverSpec, Window, ZVertex};

/// `z⁺ = max(z, 0)`.
pub fn pos_part(z: i64) -> i64 {
    z.max(0)
}

/// `z⁻ = max(−z, 0)`, so that `z = z⁺ − z⁻` and `z⁺·z⁻ = 0`.
pub fn neg_part(z: i64) -> i64 {
    (-z).max(0)
}

fn to_i64(x: i128, what: &str) -> i64 {
    i64::try_from(x).unwrap_or_else(|_| panic!("integer overflow while computing {what}"))
}

/// Values on a slice of ZΔ: one level and one integer per base vertex.
///
/// A level vector is a slice exactly when every Δ-arrow `ξ → η` satisfies
/// `l_η ∈ {l_ξ, l_ξ − 1}`. The standard slice Δ₀ × {i} is the flat case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceAssignment {
    levels: Vec<i32>,
    values: Vec<i64>,
}

impl SliceAssignment {
    /// The standard slice Δ₀ × {level} with the given values (base order).
    pub fn standard(q: &QuiverSpec, level: i32, values: Vec<i64>) -> Result<Self> {
        if values.len() != q.vertex_count() {
            return Err(Error::InvalidSlice(format!(
                "expected {} values, got {}",
                q.vertex_count(),
                values.len()
            )));
        }
        Ok(SliceAssignment {
            levels: vec![level; q.vertex_count()],
            values,
        })
    }

    /// Build a standard-slice assignment from `(label, value)` pairs; every
    /// base vertex must be assigned exactly once.
    pub fn from_pairs(q: &QuiverSpec, level: i32, pairs: &[(&str, i64)]) -> Result<Self> {
        let mut values = vec![None; q.vertex_count()];
        for (label, value) in pairs {
            let base = q
                .base_index(label)
                .ok_or_else(|| Error::UnknownVertex((*label).to_string()))?;
            if values[base as usize].replace(*value).is_some() {
                return Err(Error::InvalidSlice(format!(
                    "vertex `{label}` assigned twice"
                )));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(b, v)| v.ok_or_else(|| Error::MissingValue(q.labels()[b].clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::standard(q, level, values)
    }

    /// General slice from explicit per-base levels.
    pub fn new(q: &QuiverSpec, levels: Vec<i32>, values: Vec<i64>) -> Result<Self> {
        if levels.len() != q.vertex_count() || values.len() != q.vertex_count() {
            return Err(Error::InvalidSlice("length mismatch".into()));
        }
        let s = SliceAssignment { levels, values };
        s.validate(q)?;
        Ok(s)
    }

    /// Check the slice condition `l_dst ∈ {l_src, l_src − 1}` on every arrow.
    pub fn validate(&self, q: &QuiverSpec) -> Result<()> {
        for a in q.arrows() {
            let ls = self.levels[a.src as usize];
            let ld = self.levels[a.dst as usize];
            if ld != ls && ld != ls - 1 {
                return Err(Error::InvalidSlice(format!(
                    "arrow {} -> {} spans levels {} and {}",
                    q.label(a.src),
                    q.label(a.dst),
                    ls,
                    ld
                )));
            }
        }
        Ok(())
    }

    pub fn levels(&self) -> &[i32] {
        &self.levels
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, base: u32) -> i64 {
        self.values[base as usize]
    }

    pub fn vertex(&self, base: u32) -> ZVertex {
        ZVertex::new(base, self.levels[base as usize])
    }

    pub fn vertices(&self) -> Vec<ZVertex> {
        (0..self.levels.len() as u32)
            .map(|b| self.vertex(b))
            .collect()
    }

    /// `Some(level)` when the slice is the standard one at that level.
    pub fn flat_level(&self) -> Option<i32> {
        let first = *self.levels.first()?;
        self.levels.iter().all(|&l| l == first).then_some(first)
    }

    /// Is `base` a source of the slice quiver? True when all its Δ-neighbors
    /// sit at the levels that put every slice arrow at `base` outward.
    pub fn is_slice_source(&self, q: &QuiverSpec, base: u32) -> bool {
        let l = self.levels[base as usize];
        q.arrows().iter().all(|a| {
            if a.src == base {
                self.levels[a.dst as usize] == l
            } else if a.dst == base {
                self.levels[a.src as usize] == l + 1
            } else {
                true
            }
        })
    }

    /// Is `base` a sink of the slice quiver?
    pub fn is_slice_sink(&self, q: &QuiverSpec, base: u32) -> bool {
        let l = self.levels[base as usize];
        q.arrows().iter().all(|a| {
            if a.src == base {
                self.levels[a.dst as usize] == l - 1
            } else if a.dst == base {
                self.levels[a.src as usize] == l
            } else {
                true
            }
        })
    }

    pub fn slice_sources(&self, q: &QuiverSpec) -> Vec<u32> {
        (0..self.levels.len() as u32)
            .filter(|&b| self.is_slice_source(q, b))
            .collect()
    }

    pub fn slice_sinks(&self, q: &QuiverSpec) -> Vec<u32> {
        (0..self.levels.len() as u32)
            .filter(|&b| self.is_slice_sink(q, b))
            .collect()
    }

    /// Mesh sum `Σ m_{y, τ∓¹x} f(y)⁺` over the Δ-neighbors of `base`,
    /// which for a slice source or sink are exactly the slice neighbors.
    fn neighbor_sum(&self, q: &QuiverSpec, base: u32) -> i128 {
        let mut sum: i128 = 0;
        for a in q.arrows() {
            if a.dst == base {
                sum += a.level_weight as i128 * pos_part(self.values[a.src as usize]) as i128;
            }
            if a.src == base {
                sum += a.step_weight as i128 * pos_part(self.values[a.dst as usize]) as i128;
            }
        }
        sum
    }

    /// Cluster-reflection at a slice source: replace `x` by `τ⁻¹x` and its
    /// value by `−f(x) + Σ m_{xy} f(y)⁺`.
    pub fn reflect_forward(&self, q: &QuiverSpec, base: u32) -> Result<SliceAssignment> {
        if !self.is_slice_source(q, base) {
            return Err(Error::NotSourceOrSink(q.label(base).to_string()));
        }
        let mut next = self.clone();
        let b = base as usize;
        next.levels[b] += 1;
        next.values[b] = to_i64(
            -(self.values[b] as i128) + self.neighbor_sum(q, base),
            "cluster reflection",
        );
        Ok(next)
    }

    /// Cluster-reflection at a slice sink: replace `x` by `τx`.
    pub fn reflect_backward(&self, q: &QuiverSpec, base: u32) -> Result<SliceAssignment> {
        if !self.is_slice_sink(q, base) {
            return Err(Error::NotSourceOrSink(q.label(base).to_string()));
        }
        let mut next = self.clone();
        let b = base as usize;
        next.levels[b] -= 1;
        next.values[b] = to_i64(
            -(self.values[b] as i128) + self.neighbor_sum(q, base),
            "cluster reflection",
        );
        Ok(next)
    }

    /// Reflect at `base`: forward when it is a slice source, otherwise
    /// backward when a sink.
    pub fn reflect(&self, q: &QuiverSpec, base: u32) -> Result<SliceAssignment> {
        if self.is_slice_source(q, base) {
            self.reflect_forward(q, base)
        } else if self.is_slice_sink(q, base) {
            self.reflect_backward(q, base)
        } else {
            Err(Error::NotSourceOrSink(q.label(base).to_string()))
        }
    }
}

#[derive(Debug, Default)]
struct LevelCache {
    fwd: Vec<Vec<i64>>,
    bwd: Vec<Vec<i64>>,
}

/// The unique cluster-additive extension of a slice assignment.
///
/// Levels are memoized as they are requested. The cache is interior-mutable,
/// so share instances only within one worker; scans create one instance per
/// anchor.
#[derive(Debug)]
pub struct ClusterFunction {
    quiver: Arc<QuiverSpec>,
    anchor: SliceAssignment,
    base_level: i32,
    base_values: Vec<i64>,
    cache: RefCell<LevelCache>,
}

impl Clone for ClusterFunction {
    fn clone(&self) -> Self {
        ClusterFunction {
            quiver: Arc::clone(&self.quiver),
            anchor: self.anchor.clone(),
            base_level: self.base_level,
            base_values: self.base_values.clone(),
            cache: RefCell::new(LevelCache::default()),
        }
    }
}

impl ClusterFunction {
    /// Extend a slice assignment to the unique cluster-additive function on
    /// ZΔ. Works for any finite acyclic Δ and arbitrary integer values.
    pub fn extend(quiver: Arc<QuiverSpec>, anchor: SliceAssignment) -> Result<Self> {
        anchor.validate(&quiver)?;
        if anchor.levels().len() != quiver.vertex_count() {
            return Err(Error::InvalidSlice("length mismatch".into()));
        }
        // flatten the anchor to a standard slice by forward reflections
        let mut flat = anchor.clone();
        let (base_level, base_values) = loop {
            if let Some(level) = flat.flat_level() {
                break (level, flat.values().to_vec());
            }
            let min = *flat.levels().iter().min().unwrap();
            let base = (0..quiver.vertex_count() as u32)
                .find(|&b| flat.levels()[b as usize] == min && flat.is_slice_source(&quiver, b))
                .expect("a valid slice has a source at its minimum level");
            flat = flat.reflect_forward(&quiver, base)?;
        };
        Ok(ClusterFunction {
            quiver,
            anchor,
            base_level,
            base_values,
            cache: RefCell::new(LevelCache::default()),
        })
    }

    /// Convenience constructor from a standard slice.
    pub fn from_standard(quiver: Arc<QuiverSpec>, level: i32, values: Vec<i64>) -> Result<Self> {
        let anchor = SliceAssignment::standard(&quiver, level, values)?;
        Self::extend(quiver, anchor)
    }

    pub fn quiver(&self) -> &Arc<QuiverSpec> {
        &self.quiver
    }

    pub fn anchor(&self) -> &SliceAssignment {
        &self.anchor
    }

    /// Level of the internal (flattened) standard slice.
    pub fn base_level(&self) -> i32 {
        self.base_level
    }

    fn level_values(&self, level: i32) -> Vec<i64> {
        self.ensure_level(level);
        let cache = self.cache.borrow();
        if level == self.base_level {
            self.base_values.clone()
        } else if level > self.base_level {
            cache.fwd[(level - self.base_level - 1) as usize].clone()
        } else {
            cache.bwd[(self.base_level - level - 1) as usize].clone()
        }
    }

    fn ensure_level(&self, level: i32) {
        let q = &self.quiver;
        let n = q.vertex_count();
        if level > self.base_level {
            let needed = (level - self.base_level) as usize;
            loop {
                let have = self.cache.borrow().fwd.len();
                if have >= needed {
                    break;
                }
                let cur_level = self.base_level + have as i32 + 1;
                let prev: Vec<i64> = if have == 0 {
                    self.base_values.clone()
                } else {
                    self.cache.borrow().fwd[have - 1].clone()
                };
                let mut cur = vec![0i64; n];
                for &base in q.topo_order() {
                    let b = base as usize;
                    let mut sum: i128 = -(prev[b] as i128);
                    for (y, m) in q.mesh(ZVertex::new(base, cur_level)) {
                        let val = if y.level == cur_level {
                            cur[y.base as usize]
                        } else {
                            prev[y.base as usize]
                        };
                        sum += m as i128 * pos_part(val) as i128;
                    }
                    cur[b] = to_i64(sum, "cluster-additive extension");
                }
                self.cache.borrow_mut().fwd.push(cur);
            }
        } else if level < self.base_level {
            let needed = (self.base_level - level) as usize;
            loop {
                let have = self.cache.borrow().bwd.len();
                if have >= needed {
                    break;
                }
                let cur_level = self.base_level - have as i32 - 1;
                let above: Vec<i64> = if have == 0 {
                    self.base_values.clone()
                } else {
                    self.cache.borrow().bwd[have - 1].clone()
                };
                let mut cur = vec![0i64; n];
                for &base in q.topo_order().iter().rev() {
                    let b = base as usize;
                    // mesh ending in (base, cur_level + 1)
                    let mut sum: i128 = -(above[b] as i128);
                    for (y, m) in q.mesh(ZVertex::new(base, cur_level + 1)) {
                        let val = if y.level == cur_level + 1 {
                            above[y.base as usize]
                        } else {
                            cur[y.base as usize]
                        };
                        sum += m as i128 * pos_part(val) as i128;
                    }
                    cur[b] = to_i64(sum, "cluster-additive extension");
                }
                self.cache.borrow_mut().bwd.push(cur);
            }
        }
    }

    /// Value of the unique extension at `v`; idempotent and independent of
    /// the evaluation order.
    pub fn evaluate(&self, v: ZVertex) -> i64 {
        assert!(
            (v.base as usize) < self.quiver.vertex_count(),
            "vertex base out of range"
        );
        self.ensure_level(v.level);
        if v.level == self.base_level {
            return self.base_values[v.base as usize];
        }
        let cache = self.cache.borrow();
        if v.level > self.base_level {
            cache.fwd[(v.level - self.base_level - 1) as usize][v.base as usize]
        } else {
            cache.bwd[(self.base_level - v.level - 1) as usize][v.base as usize]
        }
    }

    /// Values over a window as a map, suitable for mesh checks and TSV output.
    pub fn values_on(&self, window: &Window) -> BTreeMap<ZVertex, i64> {
        window
            .vertices()
            .into_iter()
            .map(|v| (v, self.evaluate(v)))
            .collect()
    }

    /// Restrict to the standard slice at `level`.
    pub fn slice_values(&self, level: i32) -> Vec<i64> {
        self.level_values(level)
    }
}

/// One failed mesh, with everything needed to audit it.
#[derive(Clone, Debug)]
pub struct MeshViolation {
    pub z: ZVertex,
    pub z_value: i64,
    pub tau_z_value: i64,
    /// `f(z) + f(τz)`
    pub lhs: i128,
    /// `Σ m_{yz} f(y)⁺`
    pub rhs: i128,
    pub predecessors: Vec<(ZVertex, u32, i64)>,
}

impl MeshViolation {
    pub fn describe(&self, q: &QuiverSpec) -> String {
        let preds = self
            .predecessors
            .iter()
            .map(|(y, m, val)| format!("{}·f({})={}", m, q.format_vertex(*y), val))
            .collect::<Vec<_>>()
            .join(" + ");
        format!(
            "mesh at {z}: f({z})={zv}, f(τ{z})={tv}, lhs={lhs} != rhs={rhs} [{preds}]",
            z = q.format_vertex(self.z),
            zv = self.z_value,
            tv = self.tau_z_value,
            lhs = self.lhs,
            rhs = self.rhs,
            preds = preds,
        )
    }
}

impl fmt::Display for MeshViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mesh at ({},{}) lhs={} rhs={}",
            self.z.base, self.z.level, self.lhs, self.rhs
        )
    }
}

fn lookup(values: &BTreeMap<ZVertex, i64>, v: ZVertex, q: &QuiverSpec) -> Result<i64> {
    values
        .get(&v)
        .copied()
        .ok_or_else(|| Error::MissingValue(q.format_vertex(v)))
}

/// Check the cluster-additive identity on every mesh fully contained in the
/// window. `values` must be total on the window. Returns the violations;
/// empty means every checkable mesh holds.
pub fn check_cluster_additive(
    values: &BTreeMap<ZVertex, i64>,
    window: &Window,
    q: &QuiverSpec,
) -> Result<Vec<MeshViolation>> {
    for v in window.vertices() {
        lookup(values, v, q)?;
    }
    let mut violations = Vec::new();
    for z in window.vertices() {
        if !window.contains(z.tau()) {
            continue;
        }
        let preds = q.mesh(z);
        if !preds.iter().all(|&(y, _)| window.contains(y)) {
            continue;
        }
        let zv = values[&z];
        let tv = values[&z.tau()];
        let lhs = zv as i128 + tv as i128;
        let mut rhs: i128 = 0;
        let mut detail = Vec::with_capacity(preds.len());
        for (y, m) in preds {
            let yv = values[&y];
            rhs += m as i128 * pos_part(yv) as i128;
            detail.push((y, m, yv));
        }
        if lhs != rhs {
            violations.push(MeshViolation {
                z,
                z_value: zv,
                tau_z_value: tv,
                lhs,
                rhs,
                predecessors: detail,
            });
        }
    }
    Ok(violations)
}

/// Same mesh walk with the plain additive identity (no positive part).
pub fn check_additive(
    values: &BTreeMap<ZVertex, i64>,
    window: &Window,
    q: &QuiverSpec,
) -> Result<Vec<MeshViolation>> {
    for v in window.vertices() {
        lookup(values, v, q)?;
    }
    let mut violations = Vec::new();
    for z in window.vertices() {
        if !window.contains(z.tau()) {
            continue;
        }
        let preds = q.mesh(z);
        if !preds.iter().all(|&(y, _)| window.contains(y)) {
            continue;
        }
        let zv = values[&z];
        let tv = values[&z.tau()];
        let lhs = zv as i128 + tv as i128;
        let mut rhs: i128 = 0;
        let mut detail = Vec::with_capacity(preds.len());
        for (y, m) in preds {
            let yv = values[&y];
            rhs += m as i128 * yv as i128;
            detail.push((y, m, yv));
        }
        if lhs != rhs {
            violations.push(MeshViolation {
                z,
                z_value: zv,
                tau_z_value: tv,
                lhs,
                rhs,
                predecessors: detail,
            });
        }
    }
    Ok(violations)
}

/// Vertices occurring as mesh predecessors of some mesh fully contained in
/// the window. Compatibility and ordering decide mesh checks exactly on this
/// set.
pub fn window_mesh_predecessors(q: &QuiverSpec, window: &Window) -> Vec<ZVertex> {
    let mut set = std::collections::BTreeSet::new();
    for z in window.vertices() {
        if !window.contains(z.tau()) {
            continue;
        }
        let preds = q.mesh(z);
        if preds.iter().all(|&(y, _)| window.contains(y)) {
            set.extend(preds.into_iter().map(|(y, _)| y));
        }
    }
    set.into_iter().collect()
}

fn same_quiver(f: &ClusterFunction, g: &ClusterFunction) -> Result<()> {
    let a = f.quiver();
    let b = g.quiver();
    if Arc::ptr_eq(a, b) || (a.labels() == b.labels() && a.arrows() == b.arrows()) {
        Ok(())
    } else {
        Err(Error::MismatchedQuivers)
    }
}

/// `f(x)·g(x) ≥ 0` for every `x` in the window.
pub fn compatible(f: &ClusterFunction, g: &ClusterFunction, window: &Window) -> Result<bool> {
    same_quiver(f, g)?;
    Ok(compatible_at(f, g, window.vertices()))
}

/// Compatibility over an explicit vertex set.
pub fn compatible_at(
    f: &ClusterFunction,
    g: &ClusterFunction,
    vertices: impl IntoIterator<Item = ZVertex>,
) -> bool {
    vertices.into_iter().all(|v| {
        let a = f.evaluate(v);
        let b = g.evaluate(v);
        !((a > 0 && b < 0) || (a < 0 && b > 0))
    })
}

/// Pointwise sum over the window, together with its mesh-check result.
/// By compatibility (pairwise sign agreement) this boolean matches the
/// pairwise compatibility of the summands.
pub fn sum(fs: &[&ClusterFunction], window: &Window) -> Result<(BTreeMap<ZVertex, i64>, bool)> {
    let first = fs.first().ok_or_else(|| Error::Usage("empty sum".into()))?;
    for f in &fs[1..] {
        same_quiver(first, f)?;
    }
    let mut values = BTreeMap::new();
    for v in window.vertices() {
        let total: i128 = fs.iter().map(|f| f.evaluate(v) as i128).sum();
        values.insert(v, to_i64(total, "pointwise sum"));
    }
    let clean = check_cluster_additive(&values, window, first.quiver())?.is_empty();
    Ok((values, clean))
}

/// The part-wise partial order: `g ≤ f` iff `g(x)⁺ ≤ f(x)⁺` and
/// `g(x)⁻ ≤ f(x)⁻` on the window.
pub fn leq(g: &ClusterFunction, f: &ClusterFunction, window: &Window) -> Result<bool> {
    same_quiver(g, f)?;
    Ok(leq_at(g, f, window.vertices()))
}

pub fn leq_at(
    g: &ClusterFunction,
    f: &ClusterFunction,
    vertices: impl IntoIterator<Item = ZVertex>,
) -> bool {
    vertices.into_iter().all(|v| {
        let gv = g.evaluate(v);
        let fv = f.evaluate(v);
        pos_part(gv) <= pos_part(fv) && neg_part(gv) <= neg_part(fv)
    })
}

/// Pointwise difference `f − g` over the window with its mesh-check result;
/// clean exactly when `g ≤ f` holds at the window's mesh predecessors.
pub fn difference(
    f: &ClusterFunction,
    g: &ClusterFunction,
    window: &Window,
) -> Result<(BTreeMap<ZVertex, i64>, bool)> {
    same_quiver(f, g)?;
    let mut values = BTreeMap::new();
    for v in window.vertices() {
        let d = f.evaluate(v) as i128 - g.evaluate(v) as i128;
        values.insert(v, to_i64(d, "pointwise difference"));
    }
    let clean = check_cluster_additive(&values, window, f.quiver())?.is_empty();
    Ok((values, clean))
}
