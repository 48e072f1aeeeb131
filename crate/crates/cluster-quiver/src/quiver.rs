//! Finite directed quivers and the stable translation quiver they generate.
//!
//! A [`QuiverSpec`] holds a finite acyclic quiver Δ with weighted arrows.
//! The translation quiver ZΔ is never materialized: its vertices are
//! [`ZVertex`] coordinates `(base, level)` and its meshes are computed on
//! demand from Δ. The translation is `τ(ξ, i) = (ξ, i − 1)`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::hammock::ShiftMaps;

/// Vertex `(ξ, i)` of ZΔ: a base vertex of Δ together with a τ-level.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ZVertex {
    pub base: u32,
    pub level: i32,
}

impl ZVertex {
    pub fn new(base: u32, level: i32) -> Self {
        ZVertex { base, level }
    }

    /// τ(ξ, i) = (ξ, i − 1). Total and bijective: ZΔ is stable.
    pub fn tau(self) -> Self {
        ZVertex::new(self.base, self.level - 1)
    }

    pub fn tau_inv(self) -> Self {
        ZVertex::new(self.base, self.level + 1)
    }

    pub fn shift_level(self, k: i32) -> Self {
        ZVertex::new(self.base, self.level + k)
    }
}

/// Arrow of Δ. `level_weight` is the multiplicity of the ZΔ arrows
/// `(ξ,i) → (η,i)`, `step_weight` of the companions `(η,i) → (ξ,i+1)`.
/// Ordinary quivers have the two equal; they differ only for the valued
/// presets such as `B3`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub src: u32,
    pub dst: u32,
    pub level_weight: u32,
    pub step_weight: u32,
}

/// Simply laced Dynkin class of the underlying tree.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DynkinType {
    A(u32),
    D(u32),
    E(u32),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl DynkinType {
    pub fn coxeter_number(self) -> u32 {
        match self {
            DynkinType::A(n) => n + 1,
            DynkinType::D(n) => 2 * n - 2,
            DynkinType::E(6) => 12,
            DynkinType::E(7) => 18,
            DynkinType::E(8) => 30,
            DynkinType::E(_) => unreachable!("only E6, E7, E8 are constructed"),
        }
    }
}

/// A finite directed quiver Δ with weighted arrows, the generator of ZΔ.
///
/// Immutable after construction and safe to share across workers.
pub struct QuiverSpec {
    labels: Vec<String>,
    arrows: Vec<Arrow>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    topo: Vec<u32>,
    topo_pos: Vec<u32>,
    dynkin: Option<DynkinType>,
    shifts: OnceLock<std::result::Result<ShiftMaps, String>>,
    a_path: Option<APath>,
}

/// Path layout of an A_n quiver: the bases in path order together with the
/// level increment of each "upward" sectional step (0 when the Δ-arrow
/// follows the path, 1 when it opposes it).
#[derive(Clone, Debug)]
pub struct APath {
    pub order: Vec<u32>,
    pub pos: Vec<u32>,
    pub delta: Vec<i32>,
}

impl fmt::Debug for QuiverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuiverSpec")
            .field("labels", &self.labels)
            .field("arrows", &self.arrows)
            .finish()
    }
}

impl QuiverSpec {
    /// Build a quiver from labels and `(src, dst, weight)` arrows.
    pub fn new(labels: Vec<String>, arrows: Vec<(String, String, u32)>) -> Result<Self> {
        let valued = arrows
            .into_iter()
            .map(|(s, d, w)| (s, d, w, w))
            .collect::<Vec<_>>();
        Self::new_valued(labels, valued)
    }

    /// Build a quiver whose arrows carry separate level/step multiplicities.
    /// Equal multiplicities give an ordinary translation quiver; unequal ones
    /// are the valued (experimental) case.
    pub fn new_valued(
        labels: Vec<String>,
        arrows: Vec<(String, String, u32, u32)>,
    ) -> Result<Self> {
        let mut index: HashMap<&str, u32> = HashMap::new();
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.contains(|c: char| c.is_whitespace() || ":,=".contains(c))
            {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("invalid vertex label `{label}`"),
                });
            }
            if index.insert(label.as_str(), i as u32).is_some() {
                return Err(Error::DuplicateVertex(label.clone()));
            }
        }
        let n = labels.len();
        let mut arr = Vec::with_capacity(arrows.len());
        for (src, dst, wl, ws) in arrows {
            let s = *index
                .get(src.as_str())
                .ok_or_else(|| Error::UnknownVertex(src.clone()))?;
            let d = *index
                .get(dst.as_str())
                .ok_or_else(|| Error::UnknownVertex(dst.clone()))?;
            if wl < 1 || ws < 1 {
                return Err(Error::BadWeight);
            }
            arr.push(Arrow {
                src: s,
                dst: d,
                level_weight: wl,
                step_weight: ws,
            });
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, a) in arr.iter().enumerate() {
            out[a.src as usize].push(i);
            inc[a.dst as usize].push(i);
        }

        // Kahn topological sort; a leftover vertex witnesses an oriented cycle.
        let mut indeg: Vec<usize> = (0..n).map(|v| inc[v].len()).collect();
        let mut queue: VecDeque<u32> = (0..n as u32).filter(|&v| indeg[v as usize] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            topo.push(v);
            for &ai in &out[v as usize] {
                let d = arr[ai].dst as usize;
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    queue.push_back(d as u32);
                }
            }
        }
        if topo.len() != n {
            let stuck = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(Error::CycleDetected(labels[stuck].clone()));
        }
        let mut topo_pos = vec![0u32; n];
        for (p, &v) in topo.iter().enumerate() {
            topo_pos[v as usize] = p as u32;
        }

        let dynkin = classify_dynkin(n, &arr);
        let a_path = match dynkin {
            Some(DynkinType::A(_)) => Some(compute_a_path(n, &arr)),
            _ => None,
        };
        Ok(QuiverSpec {
            labels,
            arrows: arr,
            out,
            inc,
            topo,
            topo_pos,
            dynkin,
            shifts: OnceLock::new(),
            a_path,
        })
    }

    /// Parse the quiver file format, or a `preset:<TYPE><n>[:orientation]`
    /// string. One declaration per line: `v <id>` declares a vertex,
    /// `a <src> <dst> [weight]` an arrow (`w/w'` gives a valued arrow),
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if let Some(rest) = trimmed.strip_prefix("preset:") {
            return Self::preset(rest);
        }
        let mut labels = Vec::new();
        let mut arrows = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tok = line.split_whitespace();
            let head = tok.next().unwrap();
            let err = |msg: String| Error::Parse {
                line: lineno + 1,
                msg,
            };
            match head {
                "v" => {
                    let id = tok.next().ok_or_else(|| err("expected `v <id>`".into()))?;
                    if tok.next().is_some() {
                        return Err(err("trailing tokens after vertex declaration".into()));
                    }
                    labels.push(id.to_string());
                }
                "a" => {
                    let src = tok
                        .next()
                        .ok_or_else(|| err("expected `a <src> <dst> [weight]`".into()))?;
                    let dst = tok
                        .next()
                        .ok_or_else(|| err("expected `a <src> <dst> [weight]`".into()))?;
                    let (wl, ws) = match tok.next() {
                        None => (1, 1),
                        Some(w) => {
                            if let Some((a, b)) = w.split_once('/') {
                                let wl = a.parse::<u32>().map_err(|_| Error::BadWeight)?;
                                let ws = b.parse::<u32>().map_err(|_| Error::BadWeight)?;
                                (wl, ws)
                            } else {
                                let w = w.parse::<u32>().map_err(|_| Error::BadWeight)?;
                                (w, w)
                            }
                        }
                    };
                    if tok.next().is_some() {
                        return Err(err("trailing tokens after arrow declaration".into()));
                    }
                    arrows.push((src.to_string(), dst.to_string(), wl, ws));
                }
                other => return Err(err(format!("unknown declaration `{other}`"))),
            }
        }
        Self::new_valued(labels, arrows)
    }

    /// Standard presets: `A<n>[:linear]`, `D<n>`, `E6|E7|E8`, and the valued
    /// `B<n>` (experimental). A_n is oriented `1 → 2 → … → n`; D and E
    /// presets orient every arrow toward the branch vertex.
    pub fn preset(name: &str) -> Result<Self> {
        let (kind, orientation) = match name.split_once(':') {
            Some((k, o)) => (k, Some(o)),
            None => (name, None),
        };
        let bad = || Error::UnknownPreset(name.to_string());
        if kind.len() < 2 {
            return Err(bad());
        }
        let family = &kind[..1];
        let n: u32 = kind[1..].parse().map_err(|_| bad())?;
        match orientation {
            None => {}
            Some("linear") if family == "A" => {}
            Some("std") if family == "D" || family == "E" => {}
            Some(_) => return Err(bad()),
        }
        let labels = |n: u32| (1..=n).map(|i| i.to_string()).collect::<Vec<_>>();
        let s = |i: u32| i.to_string();
        match family {
            "A" if n >= 1 => {
                let arrows = (1..n).map(|i| (s(i), s(i + 1), 1)).collect();
                Self::new(labels(n), arrows)
            }
            "D" if n >= 4 => {
                let branch = n - 2;
                let mut arrows: Vec<_> = (1..branch).map(|i| (s(i), s(i + 1), 1)).collect();
                arrows.push((s(n - 1), s(branch), 1));
                arrows.push((s(n), s(branch), 1));
                Self::new(labels(n), arrows)
            }
            "E" if (6..=8).contains(&n) => {
                // path 1 … n−1 with the extra vertex n attached to 3,
                // everything oriented toward the branch vertex 3
                let mut arrows = vec![(s(1), s(2), 1), (s(2), s(3), 1)];
                for j in 4..n {
                    arrows.push((s(j), s(j - 1), 1));
                }
                arrows.push((s(n), s(3), 1));
                Self::new(labels(n), arrows)
            }
            "B" if n >= 2 => {
                let mut arrows = vec![(s(1), s(2), 2, 1)];
                for i in 2..n {
                    arrows.push((s(i), s(i + 1), 1, 1));
                }
                Self::new_valued(labels(n), arrows)
            }
            _ => Err(bad()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, base: u32) -> &str {
        &self.labels[base as usize]
    }

    pub fn base_index(&self, label: &str) -> Option<u32> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as u32)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Bases in a topological order of Δ (sources of Δ first).
    pub fn topo_order(&self) -> &[u32] {
        &self.topo
    }

    pub fn topo_position(&self, base: u32) -> u32 {
        self.topo_pos[base as usize]
    }

    /// All arrows of ZΔ ending in `z`, as `(source vertex, multiplicity)`.
    ///
    /// For `z = (ξ, i)` these are `((ζ, i), w)` for each Δ-arrow `ζ → ξ` and
    /// `((η, i − 1), w)` for each Δ-arrow `ξ → η`.
    pub fn mesh(&self, z: ZVertex) -> Vec<(ZVertex, u32)> {
        let mut preds = Vec::new();
        for &ai in &self.inc[z.base as usize] {
            let a = &self.arrows[ai];
            preds.push((ZVertex::new(a.src, z.level), a.level_weight));
        }
        for &ai in &self.out[z.base as usize] {
            let a = &self.arrows[ai];
            preds.push((ZVertex::new(a.dst, z.level - 1), a.step_weight));
        }
        preds
    }

    /// All arrows of ZΔ starting at `v`, as `(target vertex, multiplicity)`.
    pub fn successors(&self, v: ZVertex) -> Vec<(ZVertex, u32)> {
        let mut succ = Vec::new();
        for &ai in &self.out[v.base as usize] {
            let a = &self.arrows[ai];
            succ.push((ZVertex::new(a.dst, v.level), a.level_weight));
        }
        for &ai in &self.inc[v.base as usize] {
            let a = &self.arrows[ai];
            succ.push((ZVertex::new(a.src, v.level + 1), a.step_weight));
        }
        succ
    }

    /// The slice Δ₀ × {i}.
    pub fn slice(&self, level: i32) -> Vec<ZVertex> {
        (0..self.vertex_count() as u32)
            .map(|b| ZVertex::new(b, level))
            .collect()
    }

    /// Linear position of a vertex along the arrows of ZΔ; strictly
    /// increases along every arrow.
    pub fn phi(&self, v: ZVertex) -> i64 {
        v.level as i64 * self.vertex_count() as i64 + self.topo_pos[v.base as usize] as i64
    }

    /// Number of sectional paths from `a` to `b`: paths containing no
    /// subpath `y → z → τ⁻¹y`. The empty path counts, so the result is 1
    /// when `a = b`. Parallel arrows multiply the count.
    pub fn sectional_path_count(&self, a: ZVertex, b: ZVertex) -> u64 {
        let mut memo: HashMap<(Option<ZVertex>, ZVertex), u64> = HashMap::new();
        self.sectional_rec(None, a, b, &mut memo)
    }

    fn sectional_rec(
        &self,
        prev: Option<ZVertex>,
        cur: ZVertex,
        target: ZVertex,
        memo: &mut HashMap<(Option<ZVertex>, ZVertex), u64>,
    ) -> u64 {
        if self.phi(cur) > self.phi(target) {
            return 0;
        }
        if let Some(&c) = memo.get(&(prev, cur)) {
            return c;
        }
        let mut count: u64 = u64::from(cur == target);
        let forbidden = prev.map(ZVertex::tau_inv);
        for (next, mult) in self.successors(cur) {
            if Some(next) == forbidden {
                continue;
            }
            let sub = self.sectional_rec(Some(cur), next, target, memo);
            count = count
                .checked_add((mult as u64).checked_mul(sub).expect("path count overflow"))
                .expect("path count overflow");
        }
        memo.insert((prev, cur), count);
        count
    }

    /// Classify the underlying undirected graph; `None` for anything that is
    /// not a simply laced Dynkin tree (valued presets included).
    pub fn dynkin_type(&self) -> Option<DynkinType> {
        self.dynkin
    }

    pub fn coxeter_number(&self) -> Option<u32> {
        self.dynkin.map(DynkinType::coxeter_number)
    }

    /// Path layout when the quiver is of type A; used by the rectangle and
    /// wing geometry.
    pub fn a_path(&self) -> Option<&APath> {
        self.a_path.as_ref()
    }

    /// Nakayama shift data; built lazily, requires Dynkin type.
    pub fn shift_maps(&self) -> Result<&ShiftMaps> {
        if self.dynkin.is_none() {
            return Err(Error::NonDynkin);
        }
        let cell = self
            .shifts
            .get_or_init(|| ShiftMaps::build(self).map_err(|e| e.to_string()));
        match cell {
            Ok(maps) => Ok(maps),
            Err(msg) => Err(Error::Anomaly(msg.clone())),
        }
    }

    /// Vertices lying on some directed path from `sources` to `targets`
    /// (members of either set on a trivial path included), sorted by
    /// `(level, base)`.
    pub fn convex_hull(&self, sources: &[ZVertex], targets: &[ZVertex]) -> Vec<ZVertex> {
        if sources.is_empty() || targets.is_empty() {
            return Vec::new();
        }
        let lo = sources.iter().map(|v| v.level).min().unwrap();
        let hi = targets.iter().map(|v| v.level).max().unwrap();
        let mut fwd: BTreeSet<ZVertex> = BTreeSet::new();
        let mut queue: VecDeque<ZVertex> = VecDeque::new();
        for &s in sources {
            if fwd.insert(s) {
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for (next, _) in self.successors(v) {
                if next.level <= hi && fwd.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        let mut bwd: BTreeSet<ZVertex> = BTreeSet::new();
        for &t in targets {
            if bwd.insert(t) {
                queue.push_back(t);
            }
        }
        while let Some(v) = queue.pop_front() {
            for (prev, _) in self.mesh(v) {
                if prev.level >= lo && bwd.insert(prev) {
                    queue.push_back(prev);
                }
            }
        }
        let mut hull: Vec<ZVertex> = fwd.intersection(&bwd).copied().collect();
        hull.sort_by_key(|v| (v.level, v.base));
        hull
    }

    /// True when every arrow has equal level and step multiplicity, i.e. the
    /// translation quiver is ordinary rather than valued.
    pub fn has_symmetric_weights(&self) -> bool {
        self.arrows.iter().all(|a| a.level_weight == a.step_weight)
    }

    pub fn format_vertex(&self, v: ZVertex) -> String {
        format!("{}:{}", self.label(v.base), v.level)
    }

    /// Parse `label:level` into a vertex.
    pub fn parse_vertex(&self, text: &str) -> Result<ZVertex> {
        let (label, level) = text
            .rsplit_once(':')
            .ok_or_else(|| Error::Usage(format!("expected `base:level`, got `{text}`")))?;
        let base = self
            .base_index(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))?;
        let level: i32 = level
            .parse()
            .map_err(|_| Error::Usage(format!("bad level in `{text}`")))?;
        Ok(ZVertex::new(base, level))
    }
}

fn classify_dynkin(n: usize, arrows: &[Arrow]) -> Option<DynkinType> {
    if n == 0 {
        return None;
    }
    if arrows
        .iter()
        .any(|a| a.level_weight != 1 || a.step_weight != 1)
    {
        return None;
    }
    // multigraph check: parallel arrows (either direction) are weight > 1
    let mut seen = BTreeSet::new();
    for a in arrows {
        if a.src == a.dst {
            return None;
        }
        let key = (a.src.min(a.dst), a.src.max(a.dst));
        if !seen.insert(key) {
            return None;
        }
    }
    if arrows.len() != n - 1 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for a in arrows {
        adj[a.src as usize].push(a.dst as usize);
        adj[a.dst as usize].push(a.src as usize);
    }
    // connectivity
    let mut visited = vec![false; n];
    let mut stack = vec![0usize];
    visited[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    if count != n {
        return None;
    }
    let degrees: Vec<usize> = adj.iter().map(Vec::len).collect();
    if degrees.iter().all(|&d| d <= 2) {
        return Some(DynkinType::A(n as u32));
    }
    let branches: Vec<usize> = (0..n).filter(|&v| degrees[v] >= 3).collect();
    if branches.len() != 1 || degrees[branches[0]] != 3 {
        return None;
    }
    let center = branches[0];
    let mut arms: Vec<u32> = adj[center]
        .iter()
        .map(|&start| {
            let mut len = 1u32;
            let mut prev = center;
            let mut cur = start;
            while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, k] => Some(DynkinType::D(k + 3)),
        [1, 2, 2] => Some(DynkinType::E(6)),
        [1, 2, 3] => Some(DynkinType::E(7)),
        [1, 2, 4] => Some(DynkinType::E(8)),
        _ => None,
    }
}

fn compute_a_path(n: usize, arrows: &[Arrow]) -> APath {
    let mut adj = vec![Vec::new(); n];
    for a in arrows {
        adj[a.src as usize].push(a.dst as usize);
        adj[a.dst as usize].push(a.src as usize);
    }
    let order: Vec<u32> = if n == 1 {
        vec![0]
    } else {
        let start = (0..n)
            .filter(|&v| adj[v].len() == 1)
            .min()
            .expect("path has endpoints");
        let mut order = vec![start as u32];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < n {
            let next = *adj[cur].iter().find(|&&w| w != prev).expect("path walk");
            order.push(next as u32);
            prev = cur;
            cur = next;
        }
        order
    };
    let mut pos = vec![0u32; n];
    for (p, &b) in order.iter().enumerate() {
        pos[b as usize] = p as u32;
    }
    // delta[i]: level increment of the sectional step from path position i
    // to position i+1 (0 if the Δ-arrow points up the path, 1 otherwise).
    let delta = (0..n.saturating_sub(1))
        .map(|i| {
            let lo = order[i];
            let hi = order[i + 1];
            let follows = arrows.iter().any(|a| a.src == lo && a.dst == hi);
            if follows {
                0
            } else {
                1
            }
        })
        .collect();
    APath { order, pos, delta }
}

impl APath {
    /// Step one position up the path; `None` at the top end.
    pub fn step_up(&self, v: ZVertex) -> Option<ZVertex> {
        let p = self.pos[v.base as usize] as usize;
        if p + 1 >= self.order.len() {
            return None;
        }
        Some(ZVertex::new(self.order[p + 1], v.level + self.delta[p]))
    }

    /// Step one position down the path; `None` at the bottom end.
    pub fn step_down(&self, v: ZVertex) -> Option<ZVertex> {
        let p = self.pos[v.base as usize] as usize;
        if p == 0 {
            return None;
        }
        Some(ZVertex::new(
            self.order[p - 1],
            v.level + 1 - self.delta[p - 1],
        ))
    }

    /// Predecessor of `v` along the up-diagonal (the vertex whose up-step is `v`).
    pub fn pred_up(&self, v: ZVertex) -> Option<ZVertex> {
        let p = self.pos[v.base as usize] as usize;
        if p == 0 {
            return None;
        }
        Some(ZVertex::new(self.order[p - 1], v.level - self.delta[p - 1]))
    }

    /// Predecessor of `v` along the down-diagonal (the vertex whose down-step is `v`).
    pub fn pred_down(&self, v: ZVertex) -> Option<ZVertex> {
        let p = self.pos[v.base as usize] as usize;
        if p + 1 >= self.order.len() {
            return None;
        }
        Some(ZVertex::new(self.order[p + 1], v.level - 1 + self.delta[p]))
    }

    pub fn position(&self, base: u32) -> usize {
        self.pos[base as usize] as usize
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Finite viewport into ZΔ: an inclusive level range per base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    lo: Vec<i32>,
    hi: Vec<i32>,
}

impl Window {
    /// Uniform window: all bases over levels `lo..=hi`.
    pub fn levels(q: &QuiverSpec, lo: i32, hi: i32) -> Window {
        let n = q.vertex_count();
        Window {
            lo: vec![lo; n],
            hi: vec![hi.max(lo); n],
        }
    }

    /// Window with an explicit level range per base vertex.
    pub fn from_ranges(lo: Vec<i32>, hi: Vec<i32>) -> Window {
        assert_eq!(lo.len(), hi.len(), "one range per base vertex");
        Window { lo, hi }
    }

    /// Window covering `count` fundamental domains forward from the slice at
    /// `level` (requires Dynkin type for the shift data).
    pub fn domains(q: &QuiverSpec, level: i32, count: u32) -> Result<Window> {
        let maps = q.shift_maps()?;
        let span = maps.max_f_level_offset();
        Ok(Window::levels(q, level, level + span * count as i32))
    }

    /// Window covering `count` domains on both sides of the slice at `level`.
    pub fn domains_around(q: &QuiverSpec, level: i32, count: u32) -> Result<Window> {
        let maps = q.shift_maps()?;
        let span = maps.max_f_level_offset() * count as i32;
        Ok(Window::levels(q, level - span, level + span))
    }

    pub fn contains(&self, v: ZVertex) -> bool {
        let b = v.base as usize;
        b < self.lo.len() && self.lo[b] <= v.level && v.level <= self.hi[b]
    }

    pub fn base_count(&self) -> usize {
        self.lo.len()
    }

    pub fn level_range(&self, base: u32) -> (i32, i32) {
        (self.lo[base as usize], self.hi[base as usize])
    }

    /// All window vertices ordered by `(level, base)`.
    pub fn vertices(&self) -> Vec<ZVertex> {
        let lo = *self.lo.iter().min().unwrap_or(&0);
        let hi = *self.hi.iter().max().unwrap_or(&0);
        let mut out = Vec::new();
        for level in lo..=hi {
            for base in 0..self.lo.len() as u32 {
                let v = ZVertex::new(base, level);
                if self.contains(v) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(&l, &h)| (h - l + 1).max(0) as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
