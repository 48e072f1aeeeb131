//! Confined sets, (partial) tilting sets, their enumeration, the function
//! d_T, and the exchange (mutation) of tilting sets.
//!
//! A set is confined when some slice S contains it in the convex hull of S
//! and `τS[1]`; a confined set with `h_x(x′) = 0` for all pairs is partial
//! tilting. Enumeration works inside one fundamental domain, indexing sets
//! by F-orbit representatives: a representative set with vanishing pairs
//! always lifts to a literally confined tilting set by shifting members
//! along their F-orbits (see [`realize_confined`]).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cluster::ClusterFunction;
use crate::error::{Error, Result};
use crate::hammock::cluster_hammock;
use crate::quiver::{QuiverSpec, ZVertex};

/// A set of ZΔ vertices with positive multiplicities (default 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingSet {
    members: Vec<ZVertex>,
    multiplicities: Vec<i64>,
}

impl TiltingSet {
    /// Multiplicity-free set; members are sorted and deduplicated.
    pub fn new(mut members: Vec<ZVertex>) -> Self {
        members.sort();
        members.dedup();
        let multiplicities = vec![1; members.len()];
        TiltingSet {
            members,
            multiplicities,
        }
    }

    pub fn with_multiplicities(members: Vec<ZVertex>, multiplicities: Vec<i64>) -> Result<Self> {
        if members.len() != multiplicities.len() {
            return Err(Error::Usage("one multiplicity per member required".into()));
        }
        if multiplicities.iter().any(|&m| m < 1) {
            return Err(Error::Usage("multiplicities must be positive".into()));
        }
        let mut pairs: Vec<(ZVertex, i64)> = members.into_iter().zip(multiplicities).collect();
        pairs.sort();
        pairs.dedup();
        let (members, multiplicities) = pairs.into_iter().unzip();
        Ok(TiltingSet {
            members,
            multiplicities,
        })
    }

    pub fn members(&self) -> &[ZVertex] {
        &self.members
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.multiplicities
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: ZVertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn format(&self, q: &QuiverSpec) -> String {
        self.members
            .iter()
            .map(|&v| q.format_vertex(v))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Exchange data: removing `removed` from a tilting set admits exactly one
/// replacement orbit, represented by `inserted`.
#[derive(Clone, Debug)]
pub struct MutationResult {
    pub removed: ZVertex,
    pub inserted: ZVertex,
    pub new_set: TiltingSet,
}

/// Enumerate the slice level vectors whose root (base 0) level lies in the
/// given range. Requires a connected tree underneath, which Dynkin types
/// guarantee.
fn enumerate_slices(q: &QuiverSpec, root_lo: i32, root_hi: i32) -> Vec<Vec<i32>> {
    let n = q.vertex_count();
    // undirected tree traversal order with the arrow direction per edge
    let mut adj: Vec<Vec<(u32, bool)>> = vec![Vec::new(); n]; // (neighbor, is_outgoing)
    for a in q.arrows() {
        adj[a.src as usize].push((a.dst, true));
        adj[a.dst as usize].push((a.src, false));
    }
    let mut order: Vec<(u32, u32, bool)> = Vec::new(); // (vertex, parent, arrow_from_parent)
    let mut visited = vec![false; n];
    let mut stack = vec![0u32];
    visited[0] = true;
    while let Some(v) = stack.pop() {
        for &(w, out) in &adj[v as usize] {
            if !visited[w as usize] {
                visited[w as usize] = true;
                order.push((w, v, out));
                stack.push(w);
            }
        }
    }
    let mut slices = Vec::new();
    let mut levels = vec![0i32; n];
    for root in root_lo..=root_hi {
        levels[0] = root;
        // two choices per tree edge
        let edges = order.len();
        for mask in 0u64..(1u64 << edges) {
            for (i, &(v, parent, from_parent)) in order.iter().enumerate() {
                let lp = levels[parent as usize];
                let offset = if (mask >> i) & 1 == 0 { 0 } else { 1 };
                // arrow parent→v forces l_v ∈ {l_p, l_p − 1};
                // arrow v→parent forces l_v ∈ {l_p, l_p + 1}
                levels[v as usize] = if from_parent {
                    lp - offset
                } else {
                    lp + offset
                };
            }
            slices.push(levels.clone());
        }
    }
    slices
}

fn slice_vertices(levels: &[i32]) -> Vec<ZVertex> {
    levels
        .iter()
        .enumerate()
        .map(|(b, &l)| ZVertex::new(b as u32, l))
        .collect()
}

/// Is the set contained in the convex hull of some slice S and `τS[1]`?
/// Returns the witnessing slice when so. Standard slices are tried first so
/// the witness is flat whenever a flat one works.
pub fn is_confined(q: &QuiverSpec, set: &[ZVertex]) -> Result<Option<Vec<ZVertex>>> {
    let maps = q.shift_maps()?;
    if set.is_empty() {
        return Ok(Some(q.slice(0)));
    }
    let min = set.iter().map(|v| v.level).min().unwrap();
    let max = set.iter().map(|v| v.level).max().unwrap();
    let h = q.coxeter_number().unwrap_or(30) as i32;
    let n = q.vertex_count() as i32;
    let lo = min - (h + n);
    let hi = max + n + 1;
    let check = |levels: &[i32]| -> Option<Vec<ZVertex>> {
        let s = slice_vertices(levels);
        let nu_s: Vec<ZVertex> = s.iter().map(|&v| maps.nu(v)).collect();
        let mut hull = q.convex_hull(&s, &nu_s);
        for v in s.iter().chain(&nu_s) {
            if !hull.contains(v) {
                hull.push(*v);
            }
        }
        set.iter().all(|v| hull.contains(v)).then_some(s)
    };
    for level in lo..=hi {
        if let Some(witness) = check(&vec![level; q.vertex_count()]) {
            return Ok(Some(witness));
        }
    }
    for levels in enumerate_slices(q, lo, hi) {
        if let Some(witness) = check(&levels) {
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// `h_x(x′) = 0` for every ordered pair of distinct members. The test uses
/// exact evaluation of the cluster-hammock functions.
pub fn pairwise_vanishing(q: &Arc<QuiverSpec>, set: &[ZVertex]) -> Result<bool> {
    for (i, &x) in set.iter().enumerate() {
        let h = cluster_hammock(q, x)?;
        for (j, &y) in set.iter().enumerate() {
            if i != j && h.evaluate(y) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The combinatorial partial-tilting criterion: confined and `h_x(x′) = 0`
/// for all pairs.
pub fn is_partial_tilting(q: &Arc<QuiverSpec>, set: &[ZVertex]) -> Result<bool> {
    let mut set = set.to_vec();
    set.sort();
    set.dedup();
    if is_confined(q, &set)?.is_none() {
        return Ok(false);
    }
    pairwise_vanishing(q, &set)
}

/// Search for F-shifts of the individual members that make the set literally
/// confined. A representative set with vanishing pairs always admits one.
///
/// Given a candidate slice, the members shift into its confined region
/// independently, so the search is per member: some slice in a bounded
/// family around the fundamental domain must admit every member's orbit.
pub fn realize_confined(q: &QuiverSpec, reps: &[ZVertex]) -> Result<Option<Vec<ZVertex>>> {
    let maps = q.shift_maps()?;
    if reps.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let h = q.coxeter_number().unwrap_or(30) as i32;
    let n = q.vertex_count() as i32;
    let bound = h + n;
    // enough shifts to sweep an orbit across any region in the slice family
    let max_shift = h + n + 2;
    let place = |levels: &[i32]| -> Option<Vec<ZVertex>> {
        let s = slice_vertices(levels);
        let nu_s: Vec<ZVertex> = s.iter().map(|&v| maps.nu(v)).collect();
        let mut region = q.convex_hull(&s, &nu_s);
        for v in s.iter().chain(&nu_s) {
            if !region.contains(v) {
                region.push(*v);
            }
        }
        let region: std::collections::HashSet<ZVertex> = region.into_iter().collect();
        let mut placed = Vec::with_capacity(reps.len());
        for &rep in reps {
            let mut cur = rep;
            for _ in 0..max_shift {
                cur = maps.shift_f_inv(cur);
            }
            let mut found = None;
            for _ in 0..=(2 * max_shift) {
                if region.contains(&cur) {
                    found = Some(cur);
                    break;
                }
                cur = maps.shift_f(cur);
            }
            placed.push(found?);
        }
        Some(placed)
    };
    for level in -bound..=bound {
        if let Some(set) = place(&vec![level; q.vertex_count()]) {
            return Ok(Some(set));
        }
    }
    for levels in enumerate_slices(q, -bound, bound) {
        if let Some(set) = place(&levels) {
            return Ok(Some(set));
        }
    }
    Ok(None)
}

/// Partial-tilting test for a set of F-orbit representatives: vanishing
/// pairs plus a confined realization.
pub fn reps_form_partial_tilting(q: &Arc<QuiverSpec>, reps: &[ZVertex]) -> Result<bool> {
    if !pairwise_vanishing(q, reps)? {
        return Ok(false);
    }
    Ok(realize_confined(q, reps)?.is_some())
}

/// All tilting sets with `|Δ₀|` members, one representative per F-orbit,
/// indexed inside the canonical fundamental domain, in lexicographic order.
pub fn enumerate_tilting_sets(q: &Arc<QuiverSpec>) -> Result<Vec<TiltingSet>> {
    let maps = q.shift_maps()?;
    let domain = maps.fundamental_domain(0);
    let n = q.vertex_count();
    let m = domain.len();
    let functions: Vec<ClusterFunction> = domain
        .iter()
        .map(|&x| cluster_hammock(q, x))
        .collect::<Result<_>>()?;
    // vanish[i][j]: h_{domain[i]} vanishes at domain[j]
    let vanish: Vec<Vec<bool>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| functions[i].evaluate(domain[j]) == 0)
                .collect()
        })
        .collect();
    let mut found = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        domain: &[ZVertex],
        vanish: &[Vec<bool>],
        n: usize,
        start: usize,
        stack: &mut Vec<usize>,
        found: &mut Vec<TiltingSet>,
    ) {
        if stack.len() == n {
            found.push(TiltingSet::new(stack.iter().map(|&i| domain[i]).collect()));
            return;
        }
        for i in start..domain.len() {
            if stack.iter().all(|&j| vanish[i][j] && vanish[j][i]) {
                stack.push(i);
                rec(domain, vanish, n, i + 1, stack, found);
                stack.pop();
            }
        }
    }
    rec(&domain, &vanish, n, 0, &mut stack, &mut found);
    found.sort_by(|a, b| a.members().cmp(b.members()));
    Ok(found)
}

/// Exchange a member: exactly two F-orbits avoid the supports of the
/// remaining hammock functions, one of them the removed member's.
pub fn mutate(q: &Arc<QuiverSpec>, set: &TiltingSet, at: ZVertex) -> Result<MutationResult> {
    let maps = q.shift_maps()?;
    let reps: Vec<ZVertex> = set.members().iter().map(|&v| maps.orbit_rep(v)).collect();
    let at_rep = maps.orbit_rep(at);
    if !reps.contains(&at_rep) {
        return Err(Error::NotAMember(q.format_vertex(at)));
    }
    let others: Vec<ZVertex> = reps.iter().copied().filter(|&v| v != at_rep).collect();
    let functions: Vec<ClusterFunction> = others
        .iter()
        .map(|&y| cluster_hammock(q, y))
        .collect::<Result<_>>()?;
    let domain = maps.fundamental_domain(0);
    let free: Vec<ZVertex> = domain
        .into_iter()
        .filter(|&v| functions.iter().all(|h| h.evaluate(v) == 0))
        .collect();
    if free.len() != 2 {
        return Err(Error::Anomaly(format!(
            "expected exactly two exchange orbits, found {} for set {}",
            free.len(),
            set.format(q)
        )));
    }
    if !free.contains(&at_rep) {
        return Err(Error::Anomaly(
            "removed member is not among the exchange orbits".into(),
        ));
    }
    let inserted = if free[0] == at_rep { free[1] } else { free[0] };
    let mut new_members = others;
    new_members.push(inserted);
    Ok(MutationResult {
        removed: at_rep,
        inserted,
        new_set: TiltingSet::new(new_members),
    })
}

/// `d_T = Σ n_x h_x` for non-negative multiplicities. Errors when the index
/// set is not partial tilting (the sum would not be cluster-additive).
pub fn d_t(
    q: &Arc<QuiverSpec>,
    members: &[ZVertex],
    multiplicities: &[i64],
) -> Result<ClusterFunction> {
    if members.len() != multiplicities.len() {
        return Err(Error::Usage("one multiplicity per member required".into()));
    }
    if multiplicities.iter().any(|&m| m < 0) {
        return Err(Error::Usage("multiplicities must be non-negative".into()));
    }
    if !pairwise_vanishing(q, members)? {
        return Err(Error::NotPartialTilting(format!(
            "h_x(x') != 0 for a pair in {{{}}}",
            members
                .iter()
                .map(|&v| q.format_vertex(v))
                .collect::<Vec<_>>()
                .join(",")
        )));
    }
    let functions: Vec<ClusterFunction> = members
        .iter()
        .map(|&x| cluster_hammock(q, x))
        .collect::<Result<_>>()?;
    let mut values = vec![0i64; q.vertex_count()];
    for (base, value) in values.iter_mut().enumerate() {
        let mut sum: i128 = 0;
        for (h, &m) in functions.iter().zip(multiplicities) {
            sum += m as i128 * h.evaluate(ZVertex::new(base as u32, 0)) as i128;
        }
        *value = i64::try_from(sum).map_err(|_| Error::Anomaly("d_T value overflow".into()))?;
    }
    ClusterFunction::from_standard(Arc::clone(q), 0, values)
}

/// `d_T` with the set's own multiplicities.
pub fn d_t_of(q: &Arc<QuiverSpec>, set: &TiltingSet) -> Result<ClusterFunction> {
    d_t(q, set.members(), set.multiplicities())
}

/// Parse `base:level,base:level,…` into a vertex list.
pub fn parse_vertex_set(q: &QuiverSpec, text: &str) -> Result<Vec<ZVertex>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| q.parse_vertex(s.trim()))
        .collect()
}

/// Undirected mutation graph over the enumerated tilting sets: nodes are
/// canonical member lists, edges one mutation step.
pub fn mutation_graph(q: &Arc<QuiverSpec>) -> Result<BTreeMap<Vec<ZVertex>, Vec<Vec<ZVertex>>>> {
    let sets = enumerate_tilting_sets(q)?;
    let mut graph = BTreeMap::new();
    for set in &sets {
        let mut neighbors = Vec::new();
        for &x in set.members() {
            let result = mutate(q, set, x)?;
            neighbors.push(result.new_set.members().to_vec());
        }
        neighbors.sort();
        neighbors.dedup();
        graph.insert(set.members().to_vec(), neighbors);
    }
    Ok(graph)
}
