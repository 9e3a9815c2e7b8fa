//! Weighted-DAG engine: tropical transfer matrices, the canonical totally
//! connected planar network `G_n`, trapeze/parallelogram inequality reports,
//! uppermost-path weights, path mutation, and total-connectivity testing.
//!
//! `G_n` is laid out on a grid of columns `x ∈ 0..=2n` and levels
//! `ℓ ∈ 1..=n` (bottom to top). Horizontal arcs carry tropical weight `0`
//! except at the middle transition (column `n−1 → n`), where level `ℓ`
//! carries `w[ℓ][ℓ]`. Left layer `k` (column `k−1 → k`, `k = 1..n−1`) holds
//! descending arcs `(k−1, i) → (k, i−1)` of weight `w[i][i−(n−k)]`; right
//! layer `k` (column `2n−1−k → 2n−k`, counted from the middle) holds the
//! mirror ascending arcs `(2n−1−k, j−1) → (2n−k, j)` of weight
//! `w[j−(n−k)][j]`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::scalar::{fmt_rat, Rat, TropValue};

/// Subset budget for the total-connectivity test.
pub const CONNECTIVITY_LIMIT: usize = 5;

/// An `n×n` matrix of finite weights for the canonical network `G_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    n: usize,
    w: Vec<Rat>,
}

impl WeightMatrix {
    pub fn new(n: usize, w: Vec<Rat>) -> Result<Self> {
        if w.len() != n * n {
            return Err(Error::Shape);
        }
        Ok(WeightMatrix { n, w })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let mut w = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n);
            w.extend(row.iter().map(|&v| crate::scalar::rat(v)));
        }
        WeightMatrix { n, w }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based accessor, matching the `w_{i,j}` of the network layout.
    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.w[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.w[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn to_trop_matrix(&self) -> TropMatrix {
        TropMatrix::from_fn(self.n, self.n, |i, j| {
            TropValue::Finite(self.at(i + 1, j + 1).clone())
        })
    }
}

/// A weighted acyclic directed graph with ordered sources and targets
/// (numbered bottom to top).
#[derive(Clone, Debug)]
pub struct PlanarNetwork {
    node_names: Vec<String>,
    arcs: Vec<NetArc>,
    sources: Vec<usize>,
    targets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetArc {
    pub from: usize,
    pub to: usize,
    pub weight: TropValue,
}

impl PlanarNetwork {
    pub fn new(
        node_names: Vec<String>,
        arcs: Vec<NetArc>,
        sources: Vec<usize>,
        targets: Vec<usize>,
    ) -> Result<Self> {
        let n = node_names.len();
        if arcs.iter().any(|a| a.from >= n || a.to >= n)
            || sources.iter().any(|&s| s >= n)
            || targets.iter().any(|&t| t >= n)
            || sources.iter().any(|s| targets.contains(s))
        {
            return Err(Error::BadIndex);
        }
        Ok(PlanarNetwork {
            node_names,
            arcs,
            sources,
            targets,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_names.len()
    }

    pub fn node_name(&self, v: usize) -> &str {
        &self.node_names[v]
    }

    pub fn arcs(&self) -> &[NetArc] {
        &self.arcs
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Nodes in topological order; errors on a cycle.
    fn topo_order(&self) -> Result<Vec<usize>> {
        let n = self.node_count();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (idx, arc) in self.arcs.iter().enumerate() {
            indeg[arc.to] += 1;
            out[arc.from].push(idx);
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &idx in &out[v] {
                let to = self.arcs[idx].to;
                indeg[to] -= 1;
                if indeg[to] == 0 {
                    queue.push_back(to);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Cyclic);
        }
        Ok(order)
    }

    /// Longest-path DP from one source; returns per-node best weight and the
    /// number of distinct optimal paths.
    fn longest_from(&self, source: usize) -> Result<(Vec<TropValue>, Vec<u128>)> {
        let order = self.topo_order()?;
        let n = self.node_count();
        let mut best = vec![TropValue::NegInf; n];
        let mut count = vec![0u128; n];
        best[source] = TropValue::unit();
        count[source] = 1;
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (idx, arc) in self.arcs.iter().enumerate() {
            out[arc.from].push(idx);
        }
        for &v in &order {
            if best[v] == TropValue::NegInf {
                continue;
            }
            for &idx in &out[v] {
                let arc = &self.arcs[idx];
                let cand = best[v].times(&arc.weight);
                if cand > best[arc.to] {
                    best[arc.to] = cand;
                    count[arc.to] = count[v];
                } else if cand == best[arc.to] && cand != TropValue::NegInf {
                    count[arc.to] += count[v];
                }
            }
        }
        Ok((best, count))
    }

    /// The tropical transfer matrix: entry `(i, j)` is the maximal tropical
    /// weight of a path from source `i` to target `j`, `−∞` if none exists.
    pub fn transfer_matrix(&self) -> Result<TropMatrix> {
        let mut rows = Vec::with_capacity(self.sources.len());
        for &s in &self.sources {
            let (best, _) = self.longest_from(s)?;
            rows.push(self.targets.iter().map(|&t| best[t].clone()).collect());
        }
        TropMatrix::from_rows(rows)
    }

    /// Number of distinct maximal-weight paths from source `i` to target `j`
    /// (1-based). Distinct node sequences of equal weight count separately.
    pub fn count_optimal_paths(&self, i: usize, j: usize) -> Result<u128> {
        if i == 0 || i > self.sources.len() || j == 0 || j > self.targets.len() {
            return Err(Error::BadIndex);
        }
        let (best, count) = self.longest_from(self.sources[i - 1])?;
        let t = self.targets[j - 1];
        if best[t] == TropValue::NegInf {
            return Err(Error::Disconnected);
        }
        Ok(count[t])
    }

    /// True iff every equal-size pair of source/target subsets is joined by a
    /// vertex-disjoint path system. Decided by unit-node-capacity max-flow.
    pub fn is_totally_connected(&self) -> Result<bool> {
        let n = self.sources.len();
        if n != self.targets.len() || n > CONNECTIVITY_LIMIT || self.node_count() > 400 {
            return Err(Error::TooLarge);
        }
        self.topo_order()?; // acyclicity is part of the contract
        for mask_i in 1u32..(1 << n) {
            let size = mask_i.count_ones();
            for mask_j in 1u32..(1 << n) {
                if mask_j.count_ones() != size {
                    continue;
                }
                let srcs: Vec<usize> = (0..n)
                    .filter(|&b| mask_i & (1 << b) != 0)
                    .map(|b| self.sources[b])
                    .collect();
                let tgts: Vec<usize> = (0..n)
                    .filter(|&b| mask_j & (1 << b) != 0)
                    .map(|b| self.targets[b])
                    .collect();
                if self.max_vertex_disjoint(&srcs, &tgts) < size as usize {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Max number of vertex-disjoint paths from `srcs` to `tgts`
    /// (Edmonds-Karp on the node-split graph, all capacities 1).
    fn max_vertex_disjoint(&self, srcs: &[usize], tgts: &[usize]) -> usize {
        // node v -> v_in = 2v, v_out = 2v+1; super source/sink appended
        let n = self.node_count();
        let s = 2 * n;
        let t = 2 * n + 1;
        let mut cap = std::collections::HashMap::<(usize, usize), i32>::new();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n + 2];
        let add_edge = |cap: &mut std::collections::HashMap<(usize, usize), i32>,
                            adj: &mut Vec<Vec<usize>>,
                            u: usize,
                            v: usize| {
            if !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
            }
            *cap.entry((u, v)).or_insert(0) += 1;
            cap.entry((v, u)).or_insert(0);
        };
        for v in 0..n {
            add_edge(&mut cap, &mut adj, 2 * v, 2 * v + 1);
        }
        for arc in &self.arcs {
            add_edge(&mut cap, &mut adj, 2 * arc.from + 1, 2 * arc.to);
        }
        for &v in srcs {
            add_edge(&mut cap, &mut adj, s, 2 * v);
        }
        for &v in tgts {
            add_edge(&mut cap, &mut adj, 2 * v + 1, t);
        }
        let mut flow = 0usize;
        loop {
            let mut prev = vec![usize::MAX; 2 * n + 2];
            prev[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &v in &adj[u] {
                    if prev[v] == usize::MAX && cap.get(&(u, v)).copied().unwrap_or(0) > 0 {
                        prev[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if prev[t] == usize::MAX {
                return flow;
            }
            let mut v = t;
            while v != s {
                let u = prev[v];
                *cap.get_mut(&(u, v)).unwrap() -= 1;
                *cap.get_mut(&(v, u)).unwrap() += 1;
                v = u;
            }
            flow += 1;
        }
    }
}

/// Deterministic Graphviz rendering: nodes named `x_l`, arcs labeled with
/// their weights, unit arcs unlabeled.
pub fn to_dot(net: &PlanarNetwork) -> String {
    let mut out = String::from("digraph G {\n  rankdir=LR;\n  node [shape=point];\n");
    for v in 0..net.node_count() {
        let _ = writeln!(out, "  \"{}\";", net.node_name(v));
    }
    for arc in net.arcs() {
        if arc.weight == TropValue::unit() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\";",
                net.node_name(arc.from),
                net.node_name(arc.to)
            );
        } else {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                net.node_name(arc.from),
                net.node_name(arc.to),
                arc.weight
            );
        }
    }
    out.push_str("}\n");
    out
}

/// Which weight an arc of `G_n` carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CanonWeight {
    Unit,
    W(usize, usize), // 1-based (i, j)
}

/// One arc of the canonical layout: column transition `x → x+1`,
/// levels 1-based.
#[derive(Clone, Copy, Debug)]
struct CanonArc {
    x: usize,
    from_level: usize,
    to_level: usize,
    weight: CanonWeight,
}

/// The arcs of `G_n` in the crate's fixed construction order: per transition,
/// horizontals bottom-to-top, then diagonal arcs bottom-to-top.
fn canonical_arcs(n: usize) -> Vec<CanonArc> {
    let mut arcs = Vec::new();
    for x in 0..2 * n {
        for level in 1..=n {
            let weight = if x == n - 1 {
                CanonWeight::W(level, level)
            } else {
                CanonWeight::Unit
            };
            arcs.push(CanonArc {
                x,
                from_level: level,
                to_level: level,
                weight,
            });
        }
        if x < n - 1 {
            // left layer k = x + 1: descend i -> i-1 with weight w[i][i-(n-k)]
            let k = x + 1;
            for i in (n - k + 1)..=n {
                arcs.push(CanonArc {
                    x,
                    from_level: i,
                    to_level: i - 1,
                    weight: CanonWeight::W(i, i - (n - k)),
                });
            }
        } else if x >= n && x < 2 * n - 1 {
            // right layer k = 2n-1-x: ascend j-1 -> j with weight w[j-(n-k)][j]
            let k = 2 * n - 1 - x;
            for j in (n - k + 1)..=n {
                arcs.push(CanonArc {
                    x,
                    from_level: j - 1,
                    to_level: j,
                    weight: CanonWeight::W(j - (n - k), j),
                });
            }
        }
    }
    arcs
}

fn node_index(n: usize, x: usize, level: usize) -> usize {
    x * n + (level - 1)
}

/// Builds the canonical totally connected planar network `G_n` for the given
/// weights. Sources are the column-0 nodes, targets the column-`2n` nodes,
/// both bottom to top.
pub fn build_canonical(w: &WeightMatrix) -> PlanarNetwork {
    let n = w.n();
    let mut names = Vec::with_capacity((2 * n + 1) * n);
    for x in 0..=2 * n {
        for level in 1..=n {
            names.push(format!("{}_{}", x, level));
        }
    }
    let arcs = canonical_arcs(n)
        .into_iter()
        .map(|a| NetArc {
            from: node_index(n, a.x, a.from_level),
            to: node_index(n, a.x + 1, a.to_level),
            weight: match a.weight {
                CanonWeight::Unit => TropValue::unit(),
                CanonWeight::W(i, j) => TropValue::Finite(w.at(i, j).clone()),
            },
        })
        .collect();
    let sources = (1..=n).map(|l| node_index(n, 0, l)).collect();
    let targets = (1..=n).map(|l| node_index(n, 2 * n, l)).collect();
    PlanarNetwork::new(names, arcs, sources, targets).expect("canonical layout is well formed")
}

/// Trapeze / parallelogram inequality flags for a weight matrix, with each
/// violated instance listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityReport {
    pub weak_trapeze: bool,
    pub strict_trapeze: bool,
    pub weak_parallelogram: bool,
    pub strict_parallelogram: bool,
    pub violations: Vec<InequalityViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InequalityViolation {
    /// `w[i][i] > w[i][i−1] + w[i−1][i−1] + w[i−1][i]` fails (strictly or weakly).
    Trapeze { i: usize, strict_only: bool },
    /// Level weights fail to increase toward the center at `(i, j)`.
    Parallelogram { i: usize, j: usize, strict_only: bool },
}

impl InequalityReport {
    pub fn strict(&self) -> bool {
        self.strict_trapeze && self.strict_parallelogram
    }

    pub fn weak(&self) -> bool {
        self.weak_trapeze && self.weak_parallelogram
    }
}

/// Evaluates the trapeze inequalities `w[i][i] ≥/> w[i][i−1] + w[i−1][i−1] +
/// w[i−1][i]` and the parallelogram chains `w[i][1] < … < w[i][i−1]`,
/// `w[1][i] < … < w[i−1][i]` (weak: `≤`), for `i = 2..n`.
pub fn inequality_report(w: &WeightMatrix) -> InequalityReport {
    let n = w.n();
    let mut report = InequalityReport {
        weak_trapeze: true,
        strict_trapeze: true,
        weak_parallelogram: true,
        strict_parallelogram: true,
        violations: Vec::new(),
    };
    for i in 2..=n {
        let rhs = w.at(i, i - 1) + w.at(i - 1, i - 1) + w.at(i - 1, i);
        let lhs = w.at(i, i);
        if *lhs < rhs {
            report.weak_trapeze = false;
            report.strict_trapeze = false;
            report.violations.push(InequalityViolation::Trapeze { i, strict_only: false });
        } else if *lhs == rhs {
            report.strict_trapeze = false;
            report.violations.push(InequalityViolation::Trapeze { i, strict_only: true });
        }
    }
    for i in 2..=n {
        // row chain w[i][1] < ... < w[i][i-1], column chain w[1][i] < ... < w[i-1][i]
        for j in 1..i - 1 {
            check_pair(w.at(i, j), w.at(i, j + 1), i, j + 1, &mut report);
            check_pair(w.at(j, i), w.at(j + 1, i), j + 1, i, &mut report);
        }
    }
    report
}

fn check_pair(prev: &Rat, next: &Rat, i: usize, j: usize, report: &mut InequalityReport) {
    if prev > next {
        report.weak_parallelogram = false;
        report.strict_parallelogram = false;
        report
            .violations
            .push(InequalityViolation::Parallelogram { i, j, strict_only: false });
    } else if prev == next {
        report.strict_parallelogram = false;
        report
            .violations
            .push(InequalityViolation::Parallelogram { i, j, strict_only: true });
    }
}

/// Weight of the uppermost path from source `i` to target `j` (1-based):
/// `Σ_{t=i}^{j} w[i][t]` for `i ≤ j`, `Σ_{t=j}^{i} w[t][j]` for `i > j`.
pub fn uppermost_weight(w: &WeightMatrix, i: usize, j: usize) -> Result<Rat> {
    let n = w.n();
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::BadIndex);
    }
    let mut acc = Rat::from_integer(0.into());
    if i <= j {
        for t in i..=j {
            acc += w.at(i, t);
        }
    } else {
        for t in j..=i {
            acc += w.at(t, j);
        }
    }
    Ok(acc)
}

/// A source-to-target walk in a network, as an ordered arc index list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSeq {
    pub arcs: Vec<usize>,
}

/// One rewriting step of the path normalization procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Replace descend(`level → level−1`) · middle · ascend by the middle
    /// arc at `level`.
    Trapeze { level: usize },
    /// Shift a descending arc one transition toward the middle; `transition`
    /// is the old position of the arc.
    ParallelogramLeft { transition: usize },
    /// Shift an ascending arc one transition toward the middle; `transition`
    /// is the old position of the arc.
    ParallelogramRight { transition: usize },
}

impl Mutation {
    fn position(&self) -> usize {
        match *self {
            Mutation::Trapeze { .. } => usize::MAX, // applies at the middle, after shifts settle
            Mutation::ParallelogramLeft { transition } => transition,
            Mutation::ParallelogramRight { transition } => transition,
        }
    }
}

/// Level profile of a canonical-network path: the level at each column
/// `x = 0..=2n`.
fn levels_of_path(n: usize, p: &PathSeq) -> Result<Vec<usize>> {
    let arcs = canonical_arcs(n);
    if p.arcs.len() != 2 * n {
        return Err(Error::NotAPath);
    }
    let mut levels = Vec::with_capacity(2 * n + 1);
    for (step, &idx) in p.arcs.iter().enumerate() {
        let arc = arcs.get(idx).ok_or(Error::NotAPath)?;
        if arc.x != step {
            return Err(Error::NotAPath);
        }
        if step == 0 {
            levels.push(arc.from_level);
        } else if *levels.last().unwrap() != arc.from_level {
            return Err(Error::NotAPath);
        }
        levels.push(arc.to_level);
    }
    Ok(levels)
}

/// Level profile of a canonical-network path (public wrapper).
pub fn path_levels(n: usize, p: &PathSeq) -> Result<Vec<usize>> {
    levels_of_path(n, p)
}

/// Builds a `PathSeq` from a level profile (`levels.len() == 2n + 1`).
pub fn path_from_levels(n: usize, levels: &[usize]) -> Result<PathSeq> {
    if levels.len() != 2 * n + 1 {
        return Err(Error::NotAPath);
    }
    let arcs = canonical_arcs(n);
    let mut seq = Vec::with_capacity(2 * n);
    for x in 0..2 * n {
        let idx = arcs
            .iter()
            .position(|a| a.x == x && a.from_level == levels[x] && a.to_level == levels[x + 1])
            .ok_or(Error::NotAPath)?;
        seq.push(idx);
    }
    Ok(PathSeq { arcs: seq })
}

/// Tropical weight of a path in `build_canonical(w)`.
pub fn path_weight(w: &WeightMatrix, p: &PathSeq) -> Result<Rat> {
    let n = w.n();
    let levels = levels_of_path(n, p)?;
    Ok(profile_weight(w, &levels))
}

fn profile_weight(w: &WeightMatrix, levels: &[usize]) -> Rat {
    let n = w.n();
    let mut acc = Rat::from_integer(0.into());
    for x in 0..2 * n {
        let (from, to) = (levels[x], levels[x + 1]);
        if x == n - 1 {
            acc += w.at(from, from);
        } else if x < n - 1 && to + 1 == from {
            acc += w.at(from, from - (n - x - 1));
        } else if x >= n && to == from + 1 {
            acc += w.at(to + n - x - 1, to);
        }
    }
    acc
}

fn applicable_mutations(n: usize, levels: &[usize]) -> Vec<Mutation> {
    let mut muts = Vec::new();
    if n >= 2 {
        // left shifts: descend at x followed by a horizontal still in the left region
        for x in 0..n.saturating_sub(2) {
            if levels[x + 1] + 1 == levels[x] && levels[x + 2] == levels[x + 1] && x + 1 <= n - 2 {
                muts.push(Mutation::ParallelogramLeft { transition: x });
            }
        }
        // right shifts: horizontal at x then ascend at x + 1, both right of the middle
        for x in n..(2 * n - 2) {
            if levels[x + 1] == levels[x] && levels[x + 2] == levels[x + 1] + 1 {
                muts.push(Mutation::ParallelogramRight { transition: x + 1 });
            }
        }
        // trapeze at the middle
        let v = levels[n - 2];
        if v >= 2 && levels[n - 1] + 1 == v && levels[n] + 1 == v && levels[n + 1] == v {
            muts.push(Mutation::Trapeze { level: v });
        }
    }
    muts.sort_by_key(Mutation::position);
    muts
}

fn apply_mutation(n: usize, levels: &mut [usize], m: Mutation) {
    match m {
        Mutation::Trapeze { level } => {
            levels[n - 1] = level;
            levels[n] = level;
        }
        Mutation::ParallelogramLeft { transition } => {
            levels[transition + 1] = levels[transition];
        }
        Mutation::ParallelogramRight { transition } => {
            levels[transition] = levels[transition + 1];
        }
    }
}

/// Applies trapeze and parallelogram mutations until none applies, choosing
/// the leftmost applicable mutation at each step. The fixed point is the
/// uppermost path for the path's endpoints; the trace records every applied
/// mutation.
pub fn normalize_path(w: &WeightMatrix, p: &PathSeq) -> Result<(PathSeq, Vec<Mutation>)> {
    normalize_path_with(w, p, |_| 0)
}

/// Like [`normalize_path`] but with a caller-chosen selection among the
/// applicable mutations (used to check confluence).
pub fn normalize_path_with(
    w: &WeightMatrix,
    p: &PathSeq,
    mut choose: impl FnMut(&[Mutation]) -> usize,
) -> Result<(PathSeq, Vec<Mutation>)> {
    let n = w.n();
    let mut levels = levels_of_path(n, p)?;
    let mut trace = Vec::new();
    loop {
        let muts = applicable_mutations(n, &levels);
        if muts.is_empty() {
            break;
        }
        let m = muts[choose(&muts) % muts.len()];
        apply_mutation(n, &mut levels, m);
        trace.push(m);
    }
    Ok((path_from_levels(n, &levels)?, trace))
}

/// Path weights along a mutation trace: the initial weight followed by the
/// weight after each applied mutation. Under weak inequalities the sequence
/// is non-decreasing, under strict ones strictly increasing.
pub fn replay_mutations(w: &WeightMatrix, p: &PathSeq, trace: &[Mutation]) -> Result<Vec<Rat>> {
    let n = w.n();
    let mut levels = levels_of_path(n, p)?;
    let mut weights = vec![profile_weight(w, &levels)];
    for &m in trace {
        apply_mutation(n, &mut levels, m);
        weights.push(profile_weight(w, &levels));
    }
    Ok(weights)
}

/// The uppermost path from source `i` to target `j` as a level profile.
pub fn uppermost_levels(n: usize, i: usize, j: usize) -> Vec<usize> {
    let m = i.min(j);
    let mut levels = Vec::with_capacity(2 * n + 1);
    for x in 0..=2 * n {
        let level = if x <= n - 1 {
            // descend from i to m over the last left transitions
            if i > m && x > n - 1 - (i - m) {
                i - (x - (n - 1 - (i - m)))
            } else {
                i
            }
        } else if x <= n {
            m
        } else {
            // ascend from m to j right after the middle
            if j > m && x - n <= j - m {
                m + (x - n)
            } else {
                j
            }
        };
        levels.push(level);
    }
    levels
}

/// A uniformly seeded random source-`i` to target-`j` path in `G_n`.
pub fn random_path(n: usize, i: usize, j: usize, rng: &mut impl Rng) -> PathSeq {
    let m = rng.gen_range(1..=i.min(j));
    let mut levels = vec![i];
    let mut level = i;
    // left region: n-1 transitions, descend i -> m
    for x in 0..n - 1 {
        let remaining = (n - 1) - x;
        let pending = level - m;
        let can_descend = level > m && level >= n - x;
        let must_descend = pending == remaining;
        if must_descend || (can_descend && rng.gen_bool(0.5)) {
            level -= 1;
        }
        levels.push(level);
    }
    levels.push(level); // middle transition keeps the level
    for x in n..2 * n - 1 {
        let remaining = (2 * n - 1) - x;
        let pending = j - level;
        let target = level + 1;
        // ascend to `target` only exists at transitions x ≤ target + n − 2
        let can_ascend = level < j && target + n >= x + 2;
        let must_ascend = pending > 0 && (pending == remaining || x + 2 >= target + n);
        if must_ascend || (can_ascend && rng.gen_bool(0.5)) {
            level += 1;
        }
        levels.push(level);
    }
    levels.push(level); // trailing horizontal transition
    path_from_levels(n, &levels).expect("random profile is a valid path")
}

/// Renders an inequality report line for CLI output.
pub fn report_summary(r: &InequalityReport) -> String {
    format!(
        "strict trapeze: {}, weak trapeze: {}, strict parallelogram: {}, weak parallelogram: {}",
        yn(r.strict_trapeze),
        yn(r.weak_trapeze),
        yn(r.strict_parallelogram),
        yn(r.weak_parallelogram)
    )
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The example two-source network with arc weights `3, α, 2, 1`; its transfer
/// matrix is `[[1, 3], [4, max(6, α)]]`.
pub fn example_network(alpha: Rat) -> PlanarNetwork {
    let names = vec![
        "s1".into(),
        "s2".into(),
        "a".into(),
        "b".into(),
        "t1".into(),
        "t2".into(),
    ];
    let arcs = vec![
        NetArc { from: 0, to: 2, weight: TropValue::unit() },
        NetArc { from: 1, to: 2, weight: TropValue::from(3) },
        NetArc { from: 1, to: 5, weight: TropValue::Finite(alpha) },
        NetArc { from: 2, to: 3, weight: TropValue::from(1) },
        NetArc { from: 3, to: 5, weight: TropValue::from(2) },
        NetArc { from: 3, to: 4, weight: TropValue::unit() },
    ];
    PlanarNetwork::new(names, arcs, vec![0, 1], vec![4, 5]).unwrap()
}

/// Renders a rational weight for labels.
pub fn weight_label(r: &Rat) -> String {
    fmt_rat(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn example_network_transfer() {
        let net = example_network(rat(7));
        let a = net.transfer_matrix().unwrap();
        assert_eq!(a, TropMatrix::from_ints(&[&[1, 3], &[4, 7]]));
        let net6 = example_network(rat(5));
        assert_eq!(
            net6.transfer_matrix().unwrap(),
            TropMatrix::from_ints(&[&[1, 3], &[4, 6]])
        );
    }

    #[test]
    fn example_network_path_counts() {
        assert_eq!(example_network(rat(6)).count_optimal_paths(2, 2).unwrap(), 2);
        assert_eq!(example_network(rat(7)).count_optimal_paths(2, 2).unwrap(), 1);
        assert_eq!(example_network(rat(6)).count_optimal_paths(1, 1).unwrap(), 1);
    }

    #[test]
    fn no_path_is_neginf_and_disconnected() {
        let net = PlanarNetwork::new(vec!["s".into(), "t".into()], vec![], vec![0], vec![1]).unwrap();
        assert_eq!(
            net.transfer_matrix().unwrap(),
            TropMatrix::from_rows(vec![vec![TropValue::NegInf]]).unwrap()
        );
        assert_eq!(net.count_optimal_paths(1, 1), Err(Error::Disconnected));
    }

    #[test]
    fn cycle_is_rejected() {
        let arcs = vec![
            NetArc { from: 2, to: 3, weight: TropValue::unit() },
            NetArc { from: 3, to: 2, weight: TropValue::unit() },
            NetArc { from: 0, to: 2, weight: TropValue::unit() },
            NetArc { from: 3, to: 1, weight: TropValue::unit() },
        ];
        let net = PlanarNetwork::new(
            vec!["s".into(), "t".into(), "u".into(), "v".into()],
            arcs,
            vec![0],
            vec![1],
        )
        .unwrap();
        assert_eq!(net.transfer_matrix(), Err(Error::Cyclic));
    }

    #[test]
    fn canonical_n1_and_n2() {
        let w1 = WeightMatrix::from_ints(&[&[4]]);
        assert_eq!(
            build_canonical(&w1).transfer_matrix().unwrap(),
            TropMatrix::from_ints(&[&[4]])
        );
        // A[2][2] = max(w22, w21 + w11 + w12) = max(5, 3)
        let w2 = WeightMatrix::from_ints(&[&[0, 1], &[2, 5]]);
        assert_eq!(
            build_canonical(&w2).transfer_matrix().unwrap(),
            TropMatrix::from_ints(&[&[0, 1], &[2, 5]])
        );
    }

    #[test]
    fn canonical_g3_symbolic_structure() {
        // large distinct prime-ish weights make every path weight unique, so
        // the transfer entries identify the printed G_3 expressions
        let w = WeightMatrix::from_ints(&[&[1, 2, 4], &[8, 16, 32], &[64, 128, 256]]);
        let a = build_canonical(&w).transfer_matrix().unwrap();
        let at = |i: usize, j: usize| a.get(i - 1, j - 1).as_rat().unwrap().clone();
        assert_eq!(at(1, 1), rat(1)); // w11
        assert_eq!(at(1, 2), rat(1 + 2)); // w11 w12
        assert_eq!(at(1, 3), rat(1 + 2 + 4)); // w11 w12 w13
        assert_eq!(at(2, 1), rat(8 + 1)); // w21 w11
        assert_eq!(at(2, 2), rat((8 + 1 + 2).max(16))); // w21 w11 w12 ⊕ w22
        assert_eq!(at(2, 3), rat((8 + 1 + 2 + 4).max(16 + 4).max(16 + 32)));
        assert_eq!(at(3, 1), rat(64 + 8 + 1)); // w31 w21 w11
        assert_eq!(at(3, 2), rat((64 + 8 + 1 + 2).max(64 + 16).max(128 + 16)));
        assert_eq!(
            at(3, 3),
            rat((64 + 8 + 1 + 2 + 4)
                .max(64 + 16 + 32)
                .max(64 + 16 + 4)
                .max(128 + 16 + 32)
                .max(128 + 16 + 4)
                .max(256))
        );
    }

    #[test]
    fn inequality_report_cases() {
        let w = WeightMatrix::from_ints(&[&[0, 1], &[2, 5]]);
        let r = inequality_report(&w);
        assert!(r.strict_trapeze && r.weak_trapeze); // 5 > 2+0+1
        assert!(r.strict_parallelogram && r.weak_parallelogram); // vacuous at n=2

        let weak = WeightMatrix::from_ints(&[&[0, 1], &[2, 3]]);
        let r = inequality_report(&weak);
        assert!(r.weak_trapeze && !r.strict_trapeze); // 3 = 2+0+1

        let zeros = WeightMatrix::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let r = inequality_report(&zeros);
        assert!(r.weak_trapeze && !r.strict_trapeze);
        assert!(r.weak_parallelogram && !r.strict_parallelogram);
    }

    #[test]
    fn uppermost_weight_formula() {
        let w = WeightMatrix::from_ints(&[&[0, 1], &[2, 5]]);
        assert_eq!(uppermost_weight(&w, 1, 2).unwrap(), rat(1)); // w11 + w12
        assert_eq!(uppermost_weight(&w, 2, 2).unwrap(), rat(5)); // w22
        let w3 = WeightMatrix::from_ints(&[&[1, 2, 4], &[8, 16, 32], &[64, 128, 256]]);
        assert_eq!(uppermost_weight(&w3, 3, 1).unwrap(), rat(64 + 8 + 1));
        // matches the transfer entry (3,1)
        let a = build_canonical(&w3).transfer_matrix().unwrap();
        assert_eq!(a.get(2, 0).as_rat().unwrap(), &rat(64 + 8 + 1));
    }

    #[test]
    fn normalize_fixed_point() {
        let w = WeightMatrix::from_ints(&[&[0, 1], &[2, 5]]);
        let up = path_from_levels(2, &uppermost_levels(2, 2, 2)).unwrap();
        let (result, trace) = normalize_path(&w, &up).unwrap();
        assert_eq!(result, up);
        assert!(trace.is_empty());
    }

    #[test]
    fn normalize_single_trapeze() {
        // n=2 path source 2 -> w21 -> w11 -> w12 -> target 2
        let w = WeightMatrix::from_ints(&[&[0, 1], &[2, 5]]);
        let p = path_from_levels(2, &[2, 1, 1, 2, 2]).unwrap();
        assert_eq!(path_weight(&w, &p).unwrap(), rat(3));
        let (result, trace) = normalize_path(&w, &p).unwrap();
        assert_eq!(result, path_from_levels(2, &uppermost_levels(2, 2, 2)).unwrap());
        assert_eq!(path_weight(&w, &result).unwrap(), rat(5));
        assert_eq!(trace, vec![Mutation::Trapeze { level: 2 }]);
    }

    #[test]
    fn normalize_deep_path_in_g4() {
        // a 3 -> 3 path dipping to level 1: both parallelogram kinds and two
        // trapezes fire before the uppermost path is reached
        let w = crate::param::gen_weights(4, crate::param::GenMode::Strict, 11);
        let p = path_from_levels(4, &[3, 3, 2, 1, 1, 2, 3, 3, 3]).unwrap();
        let (result, trace) = normalize_path(&w, &p).unwrap();
        assert_eq!(result, path_from_levels(4, &uppermost_levels(4, 3, 3)).unwrap());
        assert_eq!(
            trace,
            vec![
                Mutation::Trapeze { level: 2 },
                Mutation::ParallelogramLeft { transition: 1 },
                Mutation::ParallelogramRight { transition: 5 },
                Mutation::Trapeze { level: 3 },
            ]
        );
        let weights = replay_mutations(&w, &p, &trace).unwrap();
        assert!(weights.windows(2).all(|pair| pair[0] < pair[1]));
        assert_eq!(weights.last().unwrap(), w.at(3, 3));
    }

    #[test]
    fn invalid_path_rejected() {
        let w = WeightMatrix::from_ints(&[&[0, 1], &[2, 5]]);
        assert_eq!(normalize_path(&w, &PathSeq { arcs: vec![0, 0, 0, 0] }), Err(Error::NotAPath));
    }

    #[test]
    fn canonical_is_totally_connected() {
        for n in 1..=4 {
            let w = crate::param::gen_weights(n, crate::param::GenMode::Arbitrary, 3);
            assert!(build_canonical(&w).is_totally_connected().unwrap());
        }
    }

    #[test]
    fn parallel_chains_are_not_totally_connected() {
        let arcs = vec![
            NetArc { from: 0, to: 2, weight: TropValue::unit() },
            NetArc { from: 1, to: 3, weight: TropValue::unit() },
        ];
        let net = PlanarNetwork::new(
            vec!["s1".into(), "s2".into(), "t1".into(), "t2".into()],
            arcs,
            vec![0, 1],
            vec![2, 3],
        )
        .unwrap();
        assert!(!net.is_totally_connected().unwrap());
    }

    #[test]
    fn example_network_totally_connected() {
        assert!(example_network(rat(6)).is_totally_connected().unwrap());
    }

    #[test]
    fn random_paths_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let w = crate::param::gen_weights(4, crate::param::GenMode::Strict, 1);
        for _ in 0..50 {
            let i = rng.gen_range(1..=4);
            let j = rng.gen_range(1..=4);
            let p = random_path(4, i, j, &mut rng);
            let levels = levels_of_path(4, &p).unwrap();
            assert_eq!(levels[0], i);
            assert_eq!(levels[8], j);
            path_weight(&w, &p).unwrap();
        }
    }
}
