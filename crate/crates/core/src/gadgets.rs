//! Instance generators for three hardness reductions to Dominating Set.
//!
//! * cubic graphs → claw-free graphs of any diameter `d ≥ 3`,
//! * Vertex Cover → K_{1,4}-free graphs of diameter 2,
//! * split graphs of diameter 2 → triangle-free graphs of diameter 2.
//!
//! Each constructor checks the structural claims of its construction before
//! returning, and [`verify_reduction`] cross-checks yes/no equivalence with
//! the oracles and the exact solver.

use log::info;
use serde::Serialize;
use serde_json::json;

use crate::domset::{dominating_set_within, simplicial_reduce, ExactLimits};
use crate::error::{Error, Result};
use crate::graph::{diameter, is_connected, Graph, VertexSet};
use crate::oracle::{gamma_set_oracle_with, vc_set_oracle_with, OracleLimits};
use crate::pattern::{contains_induced, Pattern, PatternName};
use crate::recognition::{is_claw_free, split_partition, SplitPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    CubicClawfreeD,
    VcK14Diam2,
    SplitTrianglefreeDiam2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Outer,
    Inner,
    Grey,
    Hub,
    Pendant,
    PathVertex,
    ExtraHub,
    ExtraPendant,
    VertexCopy,
    EdgeCopy1,
    EdgeCopy2,
    PairConnector,
    CliqueCopy,
    StableCopy1,
    StableCopy2,
    CliqueApex,
    StableApex,
}

/// Where a vertex of the built graph comes from.
///
/// `source` is the source vertex (or source edge index for edge copies);
/// `slot` is the position inside a gadget. Pair connectors store the two
/// edge-copy vertices they join, as ids in the built graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Origin {
    pub role: Role,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slot: Option<usize>,
}

impl Origin {
    fn new(role: Role, source: Option<usize>, slot: Option<usize>) -> Self {
        Self { role, source, slot }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub gprime: Graph,
    pub kprime: usize,
    pub kind: ReductionKind,
    /// One entry per vertex of `gprime`.
    pub provenance: Vec<Origin>,
    /// Target diameter, cubic reduction only.
    pub d: Option<usize>,
}

impl ReductionInstance {
    pub fn sidecar(&self) -> serde_json::Value {
        let provenance: Vec<serde_json::Value> = self
            .provenance
            .iter()
            .enumerate()
            .map(|(v, o)| {
                let mut entry = serde_json::to_value(o).expect("origin serializes");
                entry["vertex"] = json!(v);
                entry
            })
            .collect();
        json!({ "kind": self.kind, "kprime": self.kprime, "provenance": provenance })
    }

    fn vertices_with(&self, role: Role) -> impl Iterator<Item = usize> + '_ {
        self.provenance
            .iter()
            .enumerate()
            .filter(move |(_, o)| o.role == role)
            .map(|(v, _)| v)
    }
}

fn wiring(msg: impl Into<String>) -> Error {
    Error::GadgetWiring(msg.into())
}

// ---------------------------------------------------------------------------
// Cubic → claw-free, diameter d.

/// Vertex numbering of the cubic construction. Gadget `v` occupies
/// `12v..12v+12`: outer `o1..o3`, inner `x1..x6`, grey `g1..g3`.
#[derive(Clone, Copy, Debug)]
struct CubicLayout {
    n: usize,
    d: usize,
}

impl CubicLayout {
    fn outer(&self, v: usize, i: usize) -> usize {
        12 * v + i - 1
    }
    fn inner(&self, v: usize, j: usize) -> usize {
        12 * v + 3 + j - 1
    }
    fn grey(&self, v: usize, i: usize) -> usize {
        12 * v + 9 + i - 1
    }
    fn hub(&self) -> usize {
        12 * self.n
    }
    /// `t` for `d = 3`, otherwise `t1..t_{d-2}`.
    fn tail(&self, i: usize) -> usize {
        12 * self.n + i
    }
    fn tail_len(&self) -> usize {
        if self.d == 3 {
            1
        } else {
            self.d - 2
        }
    }
    fn has_extra_hub(&self) -> bool {
        self.d >= 4 && self.d.is_multiple_of(3)
    }
    fn extra_hub(&self) -> usize {
        12 * self.n + self.tail_len() + 1
    }
    fn vertex_count(&self) -> usize {
        12 * self.n + 1 + self.tail_len() + if self.has_extra_hub() { 2 } else { 0 }
    }
    fn extra_budget(&self) -> usize {
        if self.d >= 4 {
            self.d / 3
        } else {
            0
        }
    }
}

/// Port of `u` used by the edge towards `v`: its rank among `u`'s neighbors.
fn port(g: &Graph, u: usize, v: usize) -> usize {
    let mut nb = g.neighbors(u).to_vec();
    nb.sort_unstable();
    nb.iter().position(|&w| w == v).expect("v is a neighbor") + 1
}

/// Builds `G'` from a connected cubic `g`, with `k' = 2n + k + 1` for
/// `d = 3` and `k' = 2n + k + 1 + ⌊d/3⌋` for `d ≥ 4`.
///
/// Each vertex becomes a 12-vertex gadget: an inner 6-cycle `x1..x6`,
/// triangles `{g_i, x_{2i-1}, x_{2i}}`, and outer `o_i` adjacent to that
/// whole triangle. All grey vertices and the hub `s` form one clique. Each
/// source edge becomes one outer–outer edge. For `d = 3` a pendant `t` hangs
/// off `s`; for larger `d` a path `t1..t_{d-2}` does, and when `3 | d` a
/// second hub with its own pendant joins the clique so that the tail costs
/// exactly `⌊d/3⌋` beyond `s`.
pub fn reduce_cubic_clawfree(g: &Graph, k: usize, d: usize) -> Result<ReductionInstance> {
    if g.n() == 0 || !g.is_regular() || g.degree(0) != 3 {
        return Err(Error::InvalidInput("source graph must be cubic".into()));
    }
    if !is_connected(g) {
        return Err(Error::InvalidInput("source graph must be connected".into()));
    }
    if d < 3 {
        return Err(Error::InvalidInput(format!("diameter {d} is below 3")));
    }
    let n = g.n();
    let lay = CubicLayout { n, d };
    let mut edges = Vec::new();
    let mut provenance = Vec::with_capacity(lay.vertex_count());
    for v in 0..n {
        for i in 1..=3 {
            provenance.push(Origin::new(Role::Outer, Some(v), Some(i)));
        }
        for j in 1..=6 {
            provenance.push(Origin::new(Role::Inner, Some(v), Some(j)));
        }
        for i in 1..=3 {
            provenance.push(Origin::new(Role::Grey, Some(v), Some(i)));
        }
        for j in 1..=6 {
            edges.push((lay.inner(v, j), lay.inner(v, j % 6 + 1)));
        }
        for i in 1..=3 {
            let (a, b) = (lay.inner(v, 2 * i - 1), lay.inner(v, 2 * i));
            edges.extend([(lay.grey(v, i), a), (lay.grey(v, i), b)]);
            edges.extend([(lay.outer(v, i), a), (lay.outer(v, i), b), (lay.outer(v, i), lay.grey(v, i))]);
        }
    }
    provenance.push(Origin::new(Role::Hub, None, None));
    let mut clique: Vec<usize> = (0..n).flat_map(|v| (1..=3).map(move |i| (v, i))).map(|(v, i)| lay.grey(v, i)).collect();
    clique.push(lay.hub());

    if d == 3 {
        provenance.push(Origin::new(Role::Pendant, None, None));
        edges.push((lay.hub(), lay.tail(1)));
    } else {
        for i in 1..=lay.tail_len() {
            provenance.push(Origin::new(Role::PathVertex, None, Some(i)));
            let prev = if i == 1 { lay.hub() } else { lay.tail(i - 1) };
            edges.push((prev, lay.tail(i)));
        }
    }
    if lay.has_extra_hub() {
        provenance.push(Origin::new(Role::ExtraHub, None, None));
        provenance.push(Origin::new(Role::ExtraPendant, None, None));
        clique.push(lay.extra_hub());
        edges.push((lay.extra_hub(), lay.extra_hub() + 1));
    }
    for (a, &x) in clique.iter().enumerate() {
        for &y in &clique[a + 1..] {
            edges.push((x, y));
        }
    }
    for &(u, v) in g.edges() {
        edges.push((lay.outer(u, port(g, u, v)), lay.outer(v, port(g, v, u))));
    }

    let inst = ReductionInstance {
        gprime: Graph::from_edges(lay.vertex_count(), edges)?,
        kprime: 2 * n + k + 1 + lay.extra_budget(),
        kind: ReductionKind::CubicClawfreeD,
        provenance,
        d: Some(d),
    };
    check_structure(&inst)?;
    Ok(inst)
}

fn check_cubic(inst: &ReductionInstance) -> Result<()> {
    let g = &inst.gprime;
    let d = inst.d.ok_or_else(|| wiring("cubic instance without diameter"))?;
    if !is_claw_free(g) {
        return Err(wiring("built graph contains a claw"));
    }
    if diameter(g) != Some(d) {
        return Err(wiring(format!("built graph has diameter {:?}, wanted {d}", diameter(g))));
    }
    let gadget_of = |v: usize| match inst.provenance[v].role {
        Role::Outer | Role::Inner | Role::Grey => inst.provenance[v].source,
        _ => None,
    };
    for x in inst.vertices_with(Role::Inner) {
        let inner_nbrs = g
            .neighbors(x)
            .iter()
            .filter(|&&y| inst.provenance[y].role == Role::Inner && gadget_of(y) == gadget_of(x))
            .count();
        if inner_nbrs != 2 {
            return Err(wiring(format!("inner vertex {x} has {inner_nbrs} inner neighbors")));
        }
    }
    for o in inst.vertices_with(Role::Outer) {
        let outside = g.neighbors(o).iter().filter(|&&y| gadget_of(y) != gadget_of(o)).count();
        if outside != 1 {
            return Err(wiring(format!("outer vertex {o} has {outside} neighbors outside its gadget")));
        }
    }
    // Two inner vertices of degree two per gadget make a 6-cycle only if the
    // inner subgraph is connected: walk it.
    let gadgets = inst.vertices_with(Role::Grey).count() / 3;
    for v in 0..gadgets {
        let lay = CubicLayout { n: gadgets, d };
        let mut prev = lay.inner(v, 1);
        let mut cur = *g
            .neighbors(prev)
            .iter()
            .find(|&&y| inst.provenance[y].role == Role::Inner)
            .ok_or_else(|| wiring("isolated inner vertex"))?;
        let mut steps = 1;
        while cur != lay.inner(v, 1) {
            let next = *g
                .neighbors(cur)
                .iter()
                .find(|&&y| y != prev && inst.provenance[y].role == Role::Inner && gadget_of(y) == Some(v))
                .ok_or_else(|| wiring("broken inner cycle"))?;
            prev = cur;
            cur = next;
            steps += 1;
            if steps > 6 {
                break;
            }
        }
        if steps != 6 {
            return Err(wiring(format!("inner vertices of gadget {v} do not induce a 6-cycle")));
        }
    }
    Ok(())
}

/// The dominating set of `G'` built from a dominating set `dom` of the cubic
/// source: `s`, the three outer vertices of each gadget in `dom`, two inner
/// vertices of every other gadget chosen to leave undominated exactly the
/// outer vertex whose outside neighbor is already covered, plus a cover of
/// the tail.
fn cubic_forward(g: &Graph, inst: &ReductionInstance, dom: &[usize]) -> Result<VertexSet> {
    let d = inst.d.ok_or_else(|| wiring("cubic instance without diameter"))?;
    let lay = CubicLayout { n: g.n(), d };
    let in_dom = |v: usize| dom.contains(&v);
    let mut set = Vec::new();
    for v in 0..g.n() {
        if in_dom(v) {
            set.extend((1..=3).map(|i| lay.outer(v, i)));
            continue;
        }
        let mut nb = g.neighbors(v).to_vec();
        nb.sort_unstable();
        let free = nb
            .iter()
            .position(|&u| in_dom(u))
            .ok_or_else(|| Error::ContractViolation(format!("{dom:?} does not dominate vertex {v}")))?
            + 1;
        let pair = match free {
            1 => [3, 6],
            2 => [2, 5],
            _ => [1, 4],
        };
        set.extend(pair.iter().map(|&j| lay.inner(v, j)));
    }
    // Tail: cover the path vertices not already handled by the hub.
    let (first, hub) = if lay.has_extra_hub() {
        (1, lay.extra_hub())
    } else {
        (2, lay.hub())
    };
    set.push(hub);
    if d >= 4 {
        let todo: Vec<usize> = (first..=lay.tail_len()).map(|i| lay.tail(i)).collect();
        for b in 0..todo.len().div_ceil(3) {
            set.push(todo[(3 * b + 1).min(todo.len() - 1)]);
        }
    }
    VertexSet::new(inst.gprime.n(), set)
}

// ---------------------------------------------------------------------------
// Vertex Cover → K_{1,4}-free, diameter 2.

/// Builds `G'` from a Vertex Cover instance `(g, k)`, with `k' = k`.
///
/// Vertices, in order: one copy `u1` per source vertex, two copies of each
/// edge, one connector per pair of edge copies that share no source
/// endpoint, then the hub `s`. The vertex copies, connectors and `s` form a
/// clique; each `u1` with its incident first copies is a clique, and
/// likewise with the second copies; each connector sees its two edge copies.
pub fn reduce_vc_k14(g: &Graph, k: usize) -> Result<ReductionInstance> {
    if g.m() == 0 {
        return Err(Error::InvalidInput("vertex cover source needs at least one edge".into()));
    }
    let (n, m) = (g.n(), g.m());
    let copy = |layer: usize, e: usize| n + layer * m + e;
    let mut provenance: Vec<Origin> = (0..n).map(|v| Origin::new(Role::VertexCopy, Some(v), None)).collect();
    provenance.extend((0..m).map(|e| Origin::new(Role::EdgeCopy1, Some(e), None)));
    provenance.extend((0..m).map(|e| Origin::new(Role::EdgeCopy2, Some(e), None)));

    let mut edges = Vec::new();
    for layer in 0..2 {
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            edges.push((a, copy(layer, e)));
            edges.push((b, copy(layer, e)));
            for (f, &(c, d)) in g.edges().iter().enumerate().skip(e + 1) {
                if a == c || a == d || b == c || b == d {
                    edges.push((copy(layer, e), copy(layer, f)));
                }
            }
        }
    }
    let mut clique: Vec<usize> = (0..n).collect();
    let copies: Vec<usize> = (0..2 * m).map(|i| n + i).collect();
    for (i, &x) in copies.iter().enumerate() {
        let (a, b) = g.edges()[i % m];
        for &y in &copies[i + 1..] {
            let (c, d) = g.edges()[(y - n) % m];
            if a != c && a != d && b != c && b != d {
                let conn = provenance.len();
                provenance.push(Origin::new(Role::PairConnector, Some(x), Some(y)));
                edges.extend([(conn, x), (conn, y)]);
                clique.push(conn);
            }
        }
    }
    let hub = provenance.len();
    provenance.push(Origin::new(Role::Hub, None, None));
    clique.push(hub);
    for (a, &x) in clique.iter().enumerate() {
        for &y in &clique[a + 1..] {
            edges.push((x, y));
        }
    }

    let inst = ReductionInstance {
        gprime: Graph::from_edges(provenance.len(), edges)?,
        kprime: k,
        kind: ReductionKind::VcK14Diam2,
        provenance,
        d: None,
    };
    check_structure(&inst)?;
    Ok(inst)
}

fn check_vc(inst: &ReductionInstance) -> Result<()> {
    let g = &inst.gprime;
    if contains_induced(g, &Pattern::new(PatternName::K14))?.is_some() {
        return Err(wiring("built graph contains an induced K_{1,4}"));
    }
    if diameter(g) != Some(2) {
        return Err(wiring(format!("built graph has diameter {:?}, wanted 2", diameter(g))));
    }
    Ok(())
}

/// Copies of a vertex cover into the vertex-copy layer.
fn vc_forward(g: &Graph, inst: &ReductionInstance, cover: &[usize]) -> Result<VertexSet> {
    if g.edges().iter().any(|&(a, b)| !cover.contains(&a) && !cover.contains(&b)) {
        return Err(Error::ContractViolation(format!("{cover:?} is not a vertex cover")));
    }
    VertexSet::new(inst.gprime.n(), cover.iter().copied())
}

// ---------------------------------------------------------------------------
// Split, diameter 2 → triangle-free, diameter 2.

fn check_split_partition(g: &Graph, p: &SplitPartition) -> Result<()> {
    let (k, s) = (&p.clique, &p.stable);
    if k.universe() != g.n() || s.universe() != g.n() {
        return Err(Error::InvalidInput("partition universe does not match the graph".into()));
    }
    if k.len() + s.len() != g.n() || k.iter().any(|v| s.contains(v)) {
        return Err(Error::InvalidInput("clique and stable parts must partition the vertices".into()));
    }
    if !g.is_clique(k.members()) || !g.is_stable(s.members()) {
        return Err(Error::InvalidInput("partition is not a clique plus a stable set".into()));
    }
    if diameter(g) != Some(2) {
        return Err(Error::InvalidInput(format!("split source has diameter {:?}, wanted 2", diameter(g))));
    }
    for u in s.iter() {
        for v in s.iter() {
            if u != v && g.neighbors(u).iter().all(|&x| g.has_edge(v, x)) {
                return Err(Error::InvalidInput(format!(
                    "N({u}) ⊆ N({v}) for stable vertices; run the simplicial reduction first"
                )));
            }
        }
    }
    Ok(())
}

/// Builds `G'` from a split graph of diameter 2, with `k' = k + 1`.
///
/// Vertices, in order: a copy `K1` of the clique (stable in `G'`), copies
/// `S1`, `S2` of the stable part, the apex `t` complete to `K1`, and the apex
/// `s` complete to `S2`, with `st` an edge. For `u ∈ K`, `v ∈ S`: `u1v1` when
/// `uv` is an edge, `u1v2` otherwise; `v1v2` always.
pub fn reduce_split_trianglefree(g: &Graph, partition: &SplitPartition, k: usize) -> Result<ReductionInstance> {
    check_split_partition(g, partition)?;
    let kk = partition.clique.members();
    let ss = partition.stable.members();
    let (a, b) = (kk.len(), ss.len());
    let k1 = |i: usize| i;
    let s1 = |j: usize| a + j;
    let s2 = |j: usize| a + b + j;
    let t = a + 2 * b;
    let s = t + 1;
    let mut provenance: Vec<Origin> = kk.iter().map(|&u| Origin::new(Role::CliqueCopy, Some(u), None)).collect();
    provenance.extend(ss.iter().map(|&v| Origin::new(Role::StableCopy1, Some(v), None)));
    provenance.extend(ss.iter().map(|&v| Origin::new(Role::StableCopy2, Some(v), None)));
    provenance.push(Origin::new(Role::CliqueApex, None, None));
    provenance.push(Origin::new(Role::StableApex, None, None));

    let mut edges = vec![(s, t)];
    for (i, &u) in kk.iter().enumerate() {
        edges.push((t, k1(i)));
        for (j, &v) in ss.iter().enumerate() {
            edges.push((k1(i), if g.has_edge(u, v) { s1(j) } else { s2(j) }));
        }
    }
    for j in 0..b {
        edges.push((s1(j), s2(j)));
        edges.push((s, s2(j)));
    }

    let inst = ReductionInstance {
        gprime: Graph::from_edges(provenance.len(), edges)?,
        kprime: k + 1,
        kind: ReductionKind::SplitTrianglefreeDiam2,
        provenance,
        d: None,
    };
    check_structure(&inst)?;
    Ok(inst)
}

fn check_split(inst: &ReductionInstance) -> Result<()> {
    let g = &inst.gprime;
    if contains_induced(g, &Pattern::new(PatternName::C3))?.is_some() {
        return Err(wiring("built graph contains a triangle"));
    }
    if diameter(g) != Some(2) {
        return Err(wiring(format!("built graph has diameter {:?}, wanted 2", diameter(g))));
    }
    for role in [Role::CliqueCopy, Role::StableCopy1, Role::StableCopy2] {
        let part: Vec<usize> = inst.vertices_with(role).collect();
        if !g.is_stable(&part) {
            return Err(wiring(format!("{role:?} part is not stable")));
        }
    }
    Ok(())
}

/// Copies of a dominating set of the split source, plus the apex `t`.
fn split_forward(g: &Graph, inst: &ReductionInstance, dom: &[usize]) -> Result<VertexSet> {
    if !g.is_dominating(dom) {
        return Err(Error::ContractViolation(format!("{dom:?} does not dominate the source")));
    }
    let mut set: Vec<usize> = inst
        .provenance
        .iter()
        .enumerate()
        .filter(|(_, o)| matches!(o.role, Role::CliqueCopy | Role::StableCopy1))
        .filter(|(_, o)| o.source.is_some_and(|v| dom.contains(&v)))
        .map(|(x, _)| x)
        .collect();
    set.extend(inst.vertices_with(Role::CliqueApex));
    VertexSet::new(inst.gprime.n(), set)
}

/// A split source made ready for [`reduce_split_trianglefree`].
#[derive(Clone, Debug)]
pub struct PreparedSplit {
    pub graph: Graph,
    /// Original id of each vertex of `graph`.
    pub kept: Vec<usize>,
    pub partition: SplitPartition,
    pub removed: VertexSet,
    pub notice: Option<String>,
}

/// Applies the simplicial reduction (γ is unchanged) and recomputes the
/// split partition. Fails if the input is not split or the reduced graph
/// no longer has diameter 2.
pub fn prepare_split_instance(g: &Graph) -> Result<PreparedSplit> {
    if split_partition(g).is_none() {
        return Err(Error::ClassMismatch("source is not a split graph".into()));
    }
    let red = simplicial_reduce(g);
    let notice = (!red.removed.is_empty()).then(|| {
        let msg = format!("simplicial reduction removed vertices {:?}", red.removed.members());
        info!("{msg}");
        msg
    });
    let partition = split_partition(&red.graph)
        .ok_or_else(|| Error::InternalInvariant("simplicial reduction broke splitness".into()))?;
    if diameter(&red.graph) != Some(2) {
        return Err(Error::ClassMismatch(format!(
            "reduced split graph has diameter {:?}, wanted 2",
            diameter(&red.graph)
        )));
    }
    Ok(PreparedSplit {
        graph: red.graph,
        kept: red.kept,
        partition,
        removed: red.removed,
        notice,
    })
}

// ---------------------------------------------------------------------------
// Verification.

fn check_structure(inst: &ReductionInstance) -> Result<()> {
    if inst.provenance.len() != inst.gprime.n() {
        return Err(wiring("provenance does not cover every vertex"));
    }
    match inst.kind {
        ReductionKind::CubicClawfreeD => check_cubic(inst),
        ReductionKind::VcK14Diam2 => check_vc(inst),
        ReductionKind::SplitTrianglefreeDiam2 => check_split(inst),
    }
}

/// The constructive direction: maps a source certificate (dominating set,
/// or vertex cover for the Vertex Cover reduction) to a dominating set of
/// `G'` of size at most `k'` when the certificate has size at most `k`.
pub fn forward_solution(inst: &ReductionInstance, source: &Graph, certificate: &[usize]) -> Result<VertexSet> {
    match inst.kind {
        ReductionKind::CubicClawfreeD => cubic_forward(source, inst, certificate),
        ReductionKind::VcK14Diam2 => vc_forward(source, inst, certificate),
        ReductionKind::SplitTrianglefreeDiam2 => split_forward(source, inst, certificate),
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub exact: ExactLimits,
    pub oracle: Option<OracleLimits>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// `None` when the check could not finish.
    pub passed: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub kind: ReductionKind,
    pub k: usize,
    pub kprime: usize,
    pub source_yes: Option<bool>,
    pub target_yes: Option<bool>,
    pub checks: Vec<Check>,
    pub incomplete: bool,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        !self.incomplete && self.checks.iter().all(|c| c.passed == Some(true))
    }
}

fn resource_error(e: &Error) -> bool {
    matches!(e, Error::OracleGuard { .. } | Error::SearchLimit { .. })
}

/// Runs the structural checks, the constructive forward direction and,
/// where the solvers finish, the full equivalence
/// `(source value ≤ k) ⇔ (γ(G') ≤ k')`.
///
/// `source` is the graph the instance was built from (for the split
/// reduction, the prepared graph). Oracle guards or search limits mark the
/// affected checks unfinished and the report incomplete.
pub fn verify_reduction(
    inst: &ReductionInstance,
    source: &Graph,
    k: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let structure = check_structure(inst);
    checks.push(Check {
        name: "structure",
        passed: Some(structure.is_ok()),
        detail: match &structure {
            Ok(()) => format!("{:?}: class and diameter hold", inst.kind),
            Err(e) => e.to_string(),
        },
    });

    let limits = opts.oracle.unwrap_or_else(OracleLimits::from_env);
    let witness = match inst.kind {
        ReductionKind::VcK14Diam2 => vc_set_oracle_with(source, &limits),
        _ => gamma_set_oracle_with(source, &limits),
    };
    let witness = match witness {
        Ok(w) => Some(w),
        Err(e) if resource_error(&e) => None,
        Err(e) => return Err(e),
    };
    let source_yes = witness.as_ref().map(|w| w.len() <= k);

    checks.push(match (&witness, source_yes) {
        (Some(w), Some(true)) => {
            let d = forward_solution(inst, source, w.members())?;
            let ok = d.len() <= inst.kprime && inst.gprime.is_dominating(d.members());
            Check {
                name: "forward",
                passed: Some(ok),
                detail: format!("constructed set of size {} for k' = {}", d.len(), inst.kprime),
            }
        }
        (_, Some(false)) => Check {
            name: "forward",
            passed: Some(true),
            detail: "source is a no-instance; nothing to construct".into(),
        },
        _ => Check {
            name: "forward",
            passed: None,
            detail: "source oracle did not finish".into(),
        },
    });

    let target = match dominating_set_within(&inst.gprime, inst.kprime, &opts.exact) {
        Ok(found) => Ok(found.is_some()),
        Err(e) if resource_error(&e) => Err(e.to_string()),
        Err(e) => return Err(e),
    };
    let target_yes = target.as_ref().ok().copied();
    checks.push(match (source_yes, target_yes) {
        (Some(a), Some(b)) => Check {
            name: "equivalence",
            passed: Some(a == b),
            detail: format!("source yes = {a}, target yes = {b}"),
        },
        _ => Check {
            name: "equivalence",
            passed: None,
            detail: match &target {
                Err(msg) => format!("target search did not finish: {msg}"),
                Ok(_) => "source oracle did not finish".into(),
            },
        },
    });

    let incomplete = checks.iter().any(|c| c.passed.is_none());
    Ok(VerificationReport {
        kind: inst.kind,
        k,
        kprime: inst.kprime,
        source_yes,
        target_yes,
        checks,
        incomplete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::parse_graph;

    #[test]
    fn cubic_k4_counts_and_forward() {
        let g = complete(4);
        let inst = reduce_cubic_clawfree(&g, 1, 3).unwrap();
        assert_eq!(inst.gprime.n(), 50);
        assert_eq!(inst.kprime, 10);
        let d = forward_solution(&inst, &g, &[0]).unwrap();
        assert_eq!(d.len(), 10);
        assert!(inst.gprime.is_dominating(d.members()));
    }

    #[test]
    fn cubic_k33_budget() {
        let inst = reduce_cubic_clawfree(&complete_bipartite(3, 3), 2, 3).unwrap();
        assert_eq!(inst.kprime, 15);
    }

    #[test]
    fn cubic_larger_diameters() {
        let g = complete(4);
        for d in 4..=9 {
            let inst = reduce_cubic_clawfree(&g, 1, d).unwrap();
            assert_eq!(diameter(&inst.gprime), Some(d));
            assert_eq!(inst.kprime, 2 * 4 + 1 + 1 + d / 3);
            let set = forward_solution(&inst, &g, &[0]).unwrap();
            assert!(set.len() <= inst.kprime, "d = {d}");
            assert!(inst.gprime.is_dominating(set.members()));
        }
    }

    #[test]
    fn cubic_rejects_bad_input() {
        assert!(reduce_cubic_clawfree(&cycle(4), 1, 3).is_err());
        assert!(reduce_cubic_clawfree(&complete(4), 1, 2).is_err());
        let two = crate::graph::disjoint_union(&complete(4), &complete(4));
        assert!(reduce_cubic_clawfree(&two, 1, 3).is_err());
    }

    #[test]
    fn vc_examples() {
        let inst = reduce_vc_k14(&complete(3), 2).unwrap();
        assert_eq!(inst.gprime.n(), 10);
        assert_eq!(inst.kprime, 2);
        let inst = reduce_vc_k14(&complete(2), 1).unwrap();
        assert_eq!(inst.gprime.n(), 5);
        assert!(reduce_vc_k14(&Graph::empty(3), 1).is_err());
    }

    #[test]
    fn vc_verify_k3() {
        let g = complete(3);
        for (k, yes) in [(2, true), (1, false)] {
            let inst = reduce_vc_k14(&g, k).unwrap();
            let r = verify_reduction(&inst, &g, k, &VerifyOptions::default()).unwrap();
            assert!(r.all_passed(), "{r:?}");
            assert_eq!(r.source_yes, Some(yes));
        }
    }

    fn split_example() -> (Graph, SplitPartition) {
        // K = {a, b, c} = {0, 1, 2}, S = {u, v} = {3, 4}.
        let g = parse_graph("5 7\n0 1\n0 2\n1 2\n3 0\n3 1\n4 1\n4 2\n", crate::graph::Format::EdgeList).unwrap();
        let p = SplitPartition {
            clique: VertexSet::new(5, [0, 1, 2]).unwrap(),
            stable: VertexSet::new(5, [3, 4]).unwrap(),
        };
        (g, p)
    }

    #[test]
    fn split_example_instance() {
        let (g, p) = split_example();
        let inst = reduce_split_trianglefree(&g, &p, 1).unwrap();
        assert_eq!(inst.gprime.n(), 9);
        assert_eq!(inst.kprime, 2);
        assert!(contains_induced(&inst.gprime, &Pattern::new(PatternName::C3)).unwrap().is_none());
        assert_eq!(diameter(&inst.gprime), Some(2));
    }

    /// γ(g) = 1 through b, which sees all of S. Then neither b1 nor t
    /// reaches S2, so copies of D plus t do not dominate, and in fact
    /// γ(G') = 3 > k + 1. The equivalence with `k' = k + 1` fails here.
    #[test]
    fn split_example_breaks_budget_k_plus_one() {
        let (g, p) = split_example();
        let inst = reduce_split_trianglefree(&g, &p, 1).unwrap();
        assert_eq!(crate::oracle::gamma_oracle(&g).unwrap(), 1);
        assert_eq!(crate::oracle::gamma_oracle(&inst.gprime).unwrap(), 3);
        let d = forward_solution(&inst, &g, &[1]).unwrap();
        assert!(!inst.gprime.is_dominating(d.members()));
        let r = verify_reduction(&inst, &g, 1, &VerifyOptions::default()).unwrap();
        assert_eq!((r.source_yes, r.target_yes), (Some(true), Some(false)));
        assert!(!r.all_passed());
    }

    #[test]
    fn split_rejects_reducible_pair() {
        // u = 3 sees {0}, v = 4 sees {0, 1}: N(u) ⊆ N(v).
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 0), (4, 0), (4, 1)]).unwrap();
        let p = SplitPartition {
            clique: VertexSet::new(5, [0, 1, 2]).unwrap(),
            stable: VertexSet::new(5, [3, 4]).unwrap(),
        };
        assert!(matches!(reduce_split_trianglefree(&g, &p, 1), Err(Error::InvalidInput(_))));
        // Vertex 0 dominates everything, so the reduction collapses the graph
        // to a single edge and the diameter-2 requirement is lost.
        assert!(matches!(prepare_split_instance(&g), Err(Error::ClassMismatch(_))));
    }

    #[test]
    fn prepare_reduces_then_builds() {
        // The example graph plus a stable vertex 5 seeing {0, 1, 2}, so
        // N(3) ⊆ N(5) and 5 is removed.
        let (g, _) = split_example();
        let mut edges = g.edges().to_vec();
        edges.extend([(5, 0), (5, 1), (5, 2)]);
        let g = Graph::from_edges(6, edges).unwrap();
        let prep = prepare_split_instance(&g).unwrap();
        assert!(prep.notice.is_some());
        assert!(!prep.kept.contains(&5));
        reduce_split_trianglefree(&prep.graph, &prep.partition, 1).unwrap();
    }

    #[test]
    fn sidecar_shape() {
        let inst = reduce_vc_k14(&complete(2), 1).unwrap();
        let v = inst.sidecar();
        assert_eq!(v["kind"], "vc_k14_diam2");
        assert_eq!(v["kprime"], 1);
        assert_eq!(v["provenance"].as_array().unwrap().len(), 5);
        assert_eq!(v["provenance"][4]["role"], "hub");
    }
}
