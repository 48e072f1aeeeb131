//! Left hammock functions, the Nakayama shift ν, the shifts `[1]` and F, and
//! cluster-hammock functions.
//!
//! The left hammock function `h′_p` starts from `h′_p(p) = 1` and grows by
//! `h′_p(z) = −h′_p(τz) + Σ_y m_{yz} h′_p(y)` at every `z` reached through an
//! arrow from a positive value; elsewhere it is zero. On a Dynkin quiver its
//! support is finite with a unique top vertex `νp`, and `[1] = ντ⁻¹`,
//! `F = ντ⁻²`.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use crate::cluster::{ClusterFunction, SliceAssignment};
use crate::error::{Error, Result};
use crate::quiver::{QuiverSpec, ZVertex};

/// Finite support-with-values of a left hammock function.
#[derive(Clone, Debug)]
pub struct HammockTable {
    source: ZVertex,
    values: BTreeMap<ZVertex, i64>,
}

impl HammockTable {
    pub fn source(&self) -> ZVertex {
        self.source
    }

    /// Value at `v`; zero off the support.
    pub fn value(&self, v: ZVertex) -> i64 {
        self.values.get(&v).copied().unwrap_or(0)
    }

    /// Support vertices with their (positive) values, sorted.
    pub fn entries(&self) -> impl Iterator<Item = (ZVertex, i64)> + '_ {
        self.values.iter().map(|(&v, &x)| (v, x))
    }

    pub fn support(&self) -> impl Iterator<Item = ZVertex> + '_ {
        self.values.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Budget used by hammock computations when none is given: generous for
/// Dynkin quivers, a fast failure for everything with infinite supports.
pub fn default_hammock_budget(q: &QuiverSpec) -> usize {
    let h = q.coxeter_number().unwrap_or(30) as usize;
    10 * q.vertex_count() * (h + 2)
}

/// Compute `h′_p` by walking levels upward until a whole level dies out.
///
/// Errors with [`Error::BudgetExceeded`] once the support passes `budget`,
/// which signals an infinite hammock (expected off the Dynkin diagrams).
pub fn left_hammock(q: &QuiverSpec, p: ZVertex, budget: usize) -> Result<HammockTable> {
    if budget == 0 {
        return Err(Error::Usage("hammock budget must be at least 1".into()));
    }
    let n = q.vertex_count();
    assert!((p.base as usize) < n, "vertex base out of range");
    let mut values: BTreeMap<ZVertex, i64> = BTreeMap::new();
    let mut prev = vec![0i64; n];
    let mut level = p.level;
    loop {
        let mut cur = vec![0i64; n];
        let mut all_zero = true;
        for &base in q.topo_order() {
            let z = ZVertex::new(base, level);
            let val = if z == p {
                1
            } else {
                let preds = q.mesh(z);
                let gate_open = preds.iter().any(|&(y, _)| {
                    let yv = if y.level == level {
                        cur[y.base as usize]
                    } else if y.level == level - 1 {
                        prev[y.base as usize]
                    } else {
                        0
                    };
                    yv > 0
                });
                if gate_open {
                    let mut sum: i128 = -(prev[base as usize] as i128);
                    for (y, m) in preds {
                        let yv = if y.level == level {
                            cur[y.base as usize]
                        } else if y.level == level - 1 {
                            prev[y.base as usize]
                        } else {
                            0
                        };
                        sum += m as i128 * yv as i128;
                    }
                    i64::try_from(sum)
                        .map_err(|_| Error::Anomaly("hammock value overflow".into()))?
                } else {
                    0
                }
            };
            if val < 0 {
                return Err(Error::Anomaly(format!(
                    "negative hammock value {} at {}",
                    val,
                    q.format_vertex(z)
                )));
            }
            if val > 0 {
                all_zero = false;
                values.insert(z, val);
                if values.len() > budget {
                    return Err(Error::BudgetExceeded { budget });
                }
            }
            cur[base as usize] = val;
        }
        // one dead level kills every later one: the gate only opens from
        // positive predecessors
        if all_zero && level > p.level {
            break;
        }
        if all_zero && level == p.level {
            // can only happen for budget == 0 handled above; p itself is 1
            unreachable!("source level contains h(p) = 1");
        }
        prev = cur;
        level += 1;
    }
    Ok(HammockTable { source: p, values })
}

/// The unique support vertex of which every support vertex is a predecessor.
pub fn nakayama(q: &QuiverSpec, p: ZVertex) -> Result<ZVertex> {
    let table = left_hammock(q, p, default_hammock_budget(q))?;
    let top = table
        .support()
        .max_by_key(|&v| q.phi(v))
        .expect("hammock support contains p");
    // every support vertex must reach the top
    let mut ancestors: BTreeSet<ZVertex> = BTreeSet::new();
    let mut queue = VecDeque::from([top]);
    ancestors.insert(top);
    while let Some(v) = queue.pop_front() {
        for (y, _) in q.mesh(v) {
            if y.level >= p.level && ancestors.insert(y) {
                queue.push_back(y);
            }
        }
    }
    for v in table.support() {
        if !ancestors.contains(&v) {
            return Err(Error::Anomaly(format!(
                "hammock of {} has no unique maximal vertex",
                q.format_vertex(p)
            )));
        }
    }
    Ok(top)
}

/// Nakayama shift data for a Dynkin quiver. ν acts per base vertex as an
/// affine map `(ξ, i) ↦ (ν̄ξ, i + d_ξ)`, so `[1]`, F and F⁻¹ are cheap.
#[derive(Clone, Debug)]
pub struct ShiftMaps {
    nu_base: Vec<u32>,
    nu_off: Vec<i32>,
    inv_base: Vec<u32>,
    inv_off: Vec<i32>,
    domain: Vec<ZVertex>,
    domain_set: HashSet<ZVertex>,
    domain_min: i32,
    domain_max: i32,
}

impl ShiftMaps {
    pub fn build(q: &QuiverSpec) -> Result<Self> {
        if q.dynkin_type().is_none() {
            return Err(Error::NonDynkin);
        }
        let n = q.vertex_count();
        let mut nu_base = vec![0u32; n];
        let mut nu_off = vec![0i32; n];
        for base in 0..n as u32 {
            let nak = nakayama(q, ZVertex::new(base, 0))?;
            nu_base[base as usize] = nak.base;
            nu_off[base as usize] = nak.level;
        }
        let mut inv_base = vec![u32::MAX; n];
        let mut inv_off = vec![0i32; n];
        for b in 0..n {
            let img = nu_base[b] as usize;
            if inv_base[img] != u32::MAX {
                return Err(Error::Anomaly("Nakayama shift is not a bijection".into()));
            }
            inv_base[img] = b as u32;
            inv_off[img] = nu_off[b];
        }
        // canonical fundamental domain: convex hull of the slice S at level 0
        // and its shift S[1], both included
        let s0 = q.slice(0);
        let s1: Vec<ZVertex> = s0
            .iter()
            .map(|&v| {
                let t = v.tau_inv();
                ZVertex::new(nu_base[t.base as usize], t.level + nu_off[t.base as usize])
            })
            .collect();
        let mut domain = q.convex_hull(&s0, &s1);
        for v in s0.into_iter().chain(s1) {
            if !domain.contains(&v) {
                domain.push(v);
            }
        }
        domain.sort_by_key(|v| (v.level, v.base));
        let domain_set: HashSet<ZVertex> = domain.iter().copied().collect();
        let domain_min = domain.iter().map(|v| v.level).min().unwrap();
        let domain_max = domain.iter().map(|v| v.level).max().unwrap();
        Ok(ShiftMaps {
            nu_base,
            nu_off,
            inv_base,
            inv_off,
            domain,
            domain_set,
            domain_min,
            domain_max,
        })
    }

    pub fn nu(&self, v: ZVertex) -> ZVertex {
        ZVertex::new(
            self.nu_base[v.base as usize],
            v.level + self.nu_off[v.base as usize],
        )
    }

    pub fn nu_inv(&self, v: ZVertex) -> ZVertex {
        ZVertex::new(
            self.inv_base[v.base as usize],
            v.level - self.inv_off[v.base as usize],
        )
    }

    /// `[1] = ν τ⁻¹`.
    pub fn shift_one(&self, v: ZVertex) -> ZVertex {
        self.nu(v.tau_inv())
    }

    /// `F = ν τ⁻²`.
    pub fn shift_f(&self, v: ZVertex) -> ZVertex {
        self.nu(v.tau_inv().tau_inv())
    }

    pub fn shift_f_inv(&self, v: ZVertex) -> ZVertex {
        // F⁻¹ = τ² ν⁻¹
        self.nu_inv(v).tau().tau()
    }

    /// Level gained by one application of F at this base.
    pub fn f_level_offset(&self, base: u32) -> i32 {
        2 + self.nu_off[base as usize]
    }

    pub fn max_f_level_offset(&self) -> i32 {
        (0..self.nu_off.len() as u32)
            .map(|b| self.f_level_offset(b))
            .max()
            .unwrap_or(2)
    }

    /// The canonical fundamental domain translated to `level`; meets every
    /// F-orbit exactly once.
    pub fn fundamental_domain(&self, level: i32) -> Vec<ZVertex> {
        self.domain.iter().map(|v| v.shift_level(level)).collect()
    }

    pub fn domain_contains(&self, v: ZVertex) -> bool {
        self.domain_set.contains(&v)
    }

    /// The unique member of `v`'s F-orbit inside the canonical fundamental
    /// domain at level 0.
    pub fn orbit_rep(&self, v: ZVertex) -> ZVertex {
        // walk well below the domain, then climb with F
        let mut cur = v;
        let mut guard = 0;
        while cur.level >= self.domain_min {
            cur = self.shift_f_inv(cur);
            guard += 1;
            assert!(guard < 1_000_000, "orbit walk diverged");
        }
        loop {
            if self.domain_set.contains(&cur) {
                return cur;
            }
            assert!(
                cur.level <= self.domain_max,
                "F-orbit of ({}, {}) missed the fundamental domain",
                v.base,
                v.level
            );
            cur = self.shift_f(cur);
            guard += 1;
            assert!(guard < 1_000_000, "orbit walk diverged");
        }
    }
}

/// The cluster-hammock function: the unique cluster-additive extension of
/// `−1` at `x` and `0` on the rest of a slice through `x`.
pub fn cluster_hammock(q: &Arc<QuiverSpec>, x: ZVertex) -> Result<ClusterFunction> {
    let mut values = vec![0i64; q.vertex_count()];
    values[x.base as usize] = -1;
    let anchor = SliceAssignment::standard(q, x.level, values)?;
    ClusterFunction::extend(Arc::clone(q), anchor)
}

/// Check `f(v) = f(Fv)` for every vertex of `periods` consecutive
/// fundamental domains starting at the function's anchor level.
pub fn check_f_invariance(f: &ClusterFunction, periods: u32) -> Result<bool> {
    let q = f.quiver();
    let maps = q.shift_maps()?;
    let mut vertices = Vec::new();
    let mut domain = maps.fundamental_domain(f.base_level());
    for _ in 0..periods {
        vertices.extend(domain.iter().copied());
        domain = domain.iter().map(|&v| maps.shift_f(v)).collect();
    }
    Ok(vertices
        .into_iter()
        .all(|v| f.evaluate(v) == f.evaluate(maps.shift_f(v))))
}

/// F-invariance over explicit pairs from a partial value table: pairs with a
/// missing endpoint are skipped.
pub fn f_invariant_pairs<L>(maps: &ShiftMaps, lookup: L, vertices: &[ZVertex]) -> bool
where
    L: Fn(ZVertex) -> Option<i64>,
{
    vertices
        .iter()
        .all(|&v| match (lookup(v), lookup(maps.shift_f(v))) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        })
}
