//! Decorated trees `(T; a_e; nu_e)` modelling the stable reduction of a
//! metacyclic cover of multiplicative type.
//!
//! Vertices are `0..vertex_count`. Directed edges come in opposite pairs.
//! Marked leaves carry the branch indices `1..=r`: `marked[i - 1]` is the
//! leaf of index `i`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub opposite: usize,
    pub a: Option<u64>,
    pub nu: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marking {
    pub leaf: usize,
    pub a: u64,
    pub nu: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzTree {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
    /// The leaf set `B`.
    pub leaves: Vec<usize>,
    pub marked: Vec<Marking>,
    pub m: u64,
}

/// One failed condition, naming the offending edge or vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EdgeEndpoint { edge: usize },
    OppositeNotInvolution { edge: usize },
    OppositeNotReversed { edge: usize },
    NotATree,
    LeafDegree { vertex: usize, degree: usize },
    MarkedNotLeaf { index: usize },
    DuplicateMarking { leaf: usize },
    MissingDecoration { edge: usize },
    /// `a_e` outside `[0, m]`.
    ARange { edge: usize },
    /// `a_e` at an edge into a leaf differs from the leaf label.
    LeafLabel { edge: usize },
    /// `sum_{s(e)=v} a_e != m`.
    VertexSum { vertex: usize, sum: u64 },
    /// `a_e + a_ebar != m`.
    OppositeSum { edge: usize },
    /// `nu_e + nu_ebar != -1`.
    NuOpposite { edge: usize },
    /// `sum_{s(e)=v} (nu_e - 1) != -3`.
    NuVertexSum { vertex: usize, sum: i64 },
    /// `nu_e` at an edge into a marked leaf differs from the leaf's `nu`.
    TerminalNu { edge: usize },
    // the remaining checks apply to special trees only
    UnmarkedLeaf { vertex: usize },
    SpecialA { edge: usize },
    NuBounds { edge: usize },
    /// Number of interior vertices with no negative outgoing `nu`.
    MedianCount { count: usize },
    NegativeEdges { vertex: usize, count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            EdgeEndpoint { edge } => write!(f, "edge {edge}: endpoint out of range or a loop"),
            OppositeNotInvolution { edge } => write!(f, "edge {edge}: opposite map is not a fixed-point-free involution"),
            OppositeNotReversed { edge } => write!(f, "edge {edge}: opposite edge does not swap source and target"),
            NotATree => write!(f, "underlying graph is not a tree"),
            LeafDegree { vertex, degree } => write!(f, "leaf {vertex} has {degree} incident edges"),
            MarkedNotLeaf { index } => write!(f, "marked index {index} is not on a leaf"),
            DuplicateMarking { leaf } => write!(f, "leaf {leaf} carries two markings"),
            MissingDecoration { edge } => write!(f, "edge {edge}: missing decoration"),
            ARange { edge } => write!(f, "edge {edge}: a_e outside [0, m]"),
            LeafLabel { edge } => write!(f, "edge {edge}: a_e differs from the leaf label"),
            VertexSum { vertex, sum } => write!(f, "vertex {vertex}: outgoing a_e sum to {sum}, not m"),
            OppositeSum { edge } => write!(f, "edge {edge}: a_e + a_opp != m"),
            NuOpposite { edge } => write!(f, "edge {edge}: nu_e + nu_opp != -1"),
            NuVertexSum { vertex, sum } => write!(f, "vertex {vertex}: sum of (nu_e - 1) is {sum}, not -3"),
            TerminalNu { edge } => write!(f, "edge {edge}: nu_e differs from the leaf's nu"),
            UnmarkedLeaf { vertex } => write!(f, "leaf {vertex} is unmarked"),
            SpecialA { edge } => write!(f, "edge {edge}: a_e not strictly between 0 and m"),
            NuBounds { edge } => write!(f, "edge {edge}: nu_e outside [-2, 1]"),
            MedianCount { count } => write!(f, "{count} interior vertices have only nonnegative outgoing nu"),
            NegativeEdges { vertex, count } => {
                write!(f, "vertex {vertex}: {count} outgoing edges with negative nu")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeError {
    Structure(Vec<Violation>),
    Inadmissible(&'static str),
    /// No assignment satisfies the label conditions; the leaf data are
    /// corrupt.
    NoConsistentAssignment { edge: usize, value: u64 },
    NotSpecial(&'static str),
    InvalidDecorations(Vec<Violation>),
    MedianMismatch { by_sign: Option<usize>, by_paths: usize },
    ZeroConductor { edge: usize },
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::Structure(v) | TreeError::InvalidDecorations(v) => {
                let kind = if matches!(self, TreeError::Structure(_)) { "structural" } else { "decoration" };
                write!(f, "{} {kind} error(s)", v.len())?;
                for x in v {
                    write!(f, "; {x}")?;
                }
                Ok(())
            }
            TreeError::Inadmissible(s) => write!(f, "inadmissible input: {s}"),
            TreeError::NoConsistentAssignment { edge, value } => {
                write!(f, "no consistent a_e assignment: edge {edge} would need {value}")
            }
            TreeError::NotSpecial(s) => write!(f, "not a special configuration: {s}"),
            TreeError::MedianMismatch { by_sign, by_paths } => {
                write!(f, "median by nu signs {by_sign:?} differs from path median {by_paths}")
            }
            TreeError::ZeroConductor { edge } => write!(f, "edge {edge}: zero conductor on a terminal edge"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TreeError {}

impl HurwitzTree {
    /// Undecorated tree on `vertex_count` vertices with one opposite pair
    /// per link; edge `2k` runs along `links[k]`, edge `2k+1` back. The
    /// leaves are the vertices of degree one.
    pub fn from_links(vertex_count: usize, links: &[(usize, usize)], marked: Vec<Marking>, m: u64) -> Self {
        let mut edges = Vec::with_capacity(2 * links.len());
        for (k, &(u, v)) in links.iter().enumerate() {
            edges.push(Edge { source: u, target: v, opposite: 2 * k + 1, a: None, nu: None });
            edges.push(Edge { source: v, target: u, opposite: 2 * k, a: None, nu: None });
        }
        let mut degree = vec![0usize; vertex_count];
        for &(u, v) in links {
            if u < vertex_count {
                degree[u] += 1;
            }
            if v < vertex_count {
                degree[v] += 1;
            }
        }
        let leaves = (0..vertex_count).filter(|&v| degree[v] == 1).collect();
        HurwitzTree { vertex_count, edges, leaves, marked, m }
    }

    pub fn r(&self) -> usize {
        self.marked.len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.leaves.contains(&v)
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count).filter(|v| !self.is_leaf(*v)).collect()
    }

    pub fn outgoing(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].source == v).collect()
    }

    /// Marked index (`1..=r`) at vertex `v`.
    pub fn marking_at(&self, v: usize) -> Option<usize> {
        self.marked.iter().position(|mk| mk.leaf == v).map(|i| i + 1)
    }

    pub fn is_star(&self) -> bool {
        self.interior_vertices().len() == 1
    }

    /// Marked indices in the component of `T - {e}` containing `t(e)`.
    pub fn leaves_beyond(&self, e: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let blocked = self.edges[e].source;
        let mut seen = vec![false; self.vertex_count];
        seen[blocked] = true;
        let mut stack = vec![self.edges[e].target];
        seen[self.edges[e].target] = true;
        while let Some(v) = stack.pop() {
            if let Some(i) = self.marking_at(v) {
                out.insert(i);
            }
            for f in self.outgoing(v) {
                let w = self.edges[f].target;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out
    }

    fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.vertex_count];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for f in self.outgoing(v) {
                let w = self.edges[f].target;
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut out = vec![to];
        let mut v = to;
        while v != from {
            v = parent[v];
            out.push(v);
        }
        out
    }
}

/// Structural conditions: endpoints, the opposite involution, tree shape,
/// leaf degrees and markings.
pub fn check_structure(t: &HurwitzTree) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = t.vertex_count;
    let ne = t.edges.len();
    let mut endpoints_ok = true;
    for (i, e) in t.edges.iter().enumerate() {
        if e.source >= n || e.target >= n || e.source == e.target {
            out.push(Violation::EdgeEndpoint { edge: i });
            endpoints_ok = false;
            continue;
        }
        if e.opposite >= ne || e.opposite == i || t.edges[e.opposite].opposite != i {
            out.push(Violation::OppositeNotInvolution { edge: i });
            continue;
        }
        let o = &t.edges[e.opposite];
        if o.source != e.target || o.target != e.source {
            out.push(Violation::OppositeNotReversed { edge: i });
        }
    }
    if !endpoints_ok {
        return out;
    }
    // connected with n - 1 undirected edges
    let mut seen = vec![false; n];
    if n > 0 {
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in t.outgoing(v) {
                let w = t.edges[e].target;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    if n == 0 || ne != 2 * (n - 1) || seen.iter().any(|s| !s) {
        out.push(Violation::NotATree);
    }
    for &v in &t.leaves {
        let degree = if v < n { t.outgoing(v).len() } else { 0 };
        if degree != 1 {
            out.push(Violation::LeafDegree { vertex: v, degree });
        }
    }
    let mut used = BTreeSet::new();
    for (i, mk) in t.marked.iter().enumerate() {
        if !t.is_leaf(mk.leaf) {
            out.push(Violation::MarkedNotLeaf { index: i + 1 });
        }
        if !used.insert(mk.leaf) {
            out.push(Violation::DuplicateMarking { leaf: mk.leaf });
        }
    }
    out
}

fn require_structure(t: &HurwitzTree) -> Result<(), TreeError> {
    let v = check_structure(t);
    if v.is_empty() {
        Ok(())
    } else {
        Err(TreeError::Structure(v))
    }
}

fn check_leaf_data(r: usize, a: &[u64], nu: &[i64], m: u64) -> Result<(), TreeError> {
    if r < 3 || a.len() != r || nu.len() != r {
        return Err(TreeError::Inadmissible("need r >= 3 labels of matching lengths"));
    }
    if a.iter().any(|&x| x == 0 || x >= m) {
        return Err(TreeError::Inadmissible("labels must lie strictly between 0 and m"));
    }
    if a.iter().sum::<u64>() != m {
        return Err(TreeError::Inadmissible("labels must sum to m"));
    }
    if nu.iter().any(|&x| x != 0 && x != 1) {
        return Err(TreeError::Inadmissible("nu must be 0 or 1"));
    }
    if nu.iter().sum::<i64>() != r as i64 - 3 {
        return Err(TreeError::Inadmissible("nu must sum to r - 3"));
    }
    Ok(())
}

/// Central vertex `0` joined to leaves `1..=r`. Edge `2(i-1)` runs from the
/// center to leaf `i`, edge `2i - 1` back.
pub fn star_tree(r: usize, a: &[u64], nu: &[i64], m: u64) -> Result<HurwitzTree, TreeError> {
    check_leaf_data(r, a, nu, m)?;
    let links: Vec<(usize, usize)> = (1..=r).map(|i| (0, i)).collect();
    let marked = (0..r).map(|i| Marking { leaf: i + 1, a: a[i], nu: Some(nu[i]) }).collect();
    let mut t = HurwitzTree::from_links(r + 1, &links, marked, m);
    for i in 0..r {
        t.edges[2 * i].a = Some(a[i]);
        t.edges[2 * i].nu = Some(nu[i]);
        t.edges[2 * i + 1].a = Some(m - a[i]);
        t.edges[2 * i + 1].nu = Some(-1 - nu[i]);
    }
    Ok(t)
}

/// Fills in every `a_e` from the leaf labels: `a_e` is the sum of the
/// labels beyond `e` (unmarked leaves count `0`).
pub fn assign_ae(t: &HurwitzTree) -> Result<HurwitzTree, TreeError> {
    require_structure(t)?;
    let m = t.m;
    let mut out = t.clone();
    for e in 0..t.edges.len() {
        let value: u64 = t.leaves_beyond(e).iter().map(|&i| t.marked[i - 1].a).sum();
        if value > m {
            return Err(TreeError::NoConsistentAssignment { edge: e, value });
        }
        out.edges[e].a = Some(value);
    }
    let bad = a_violations(&out);
    if let Some(v) = bad.first() {
        let edge = match *v {
            Violation::OppositeSum { edge } | Violation::LeafLabel { edge } | Violation::ARange { edge } => edge,
            _ => 0,
        };
        return Err(TreeError::NoConsistentAssignment { edge, value: out.edges[edge].a.unwrap_or(0) });
    }
    Ok(out)
}

fn a_violations(t: &HurwitzTree) -> Vec<Violation> {
    let m = t.m;
    let mut out = Vec::new();
    for (i, e) in t.edges.iter().enumerate() {
        let Some(a) = e.a else {
            out.push(Violation::MissingDecoration { edge: i });
            continue;
        };
        if a > m {
            out.push(Violation::ARange { edge: i });
        }
        if t.is_leaf(e.target) {
            let want = t.marking_at(e.target).map_or(0, |k| t.marked[k - 1].a);
            if a != want {
                out.push(Violation::LeafLabel { edge: i });
            }
        }
        if let Some(ao) = t.edges[e.opposite].a {
            if a + ao != m {
                out.push(Violation::OppositeSum { edge: i });
            }
        }
    }
    for v in t.interior_vertices() {
        let sum: u64 = t.outgoing(v).iter().filter_map(|&e| t.edges[e].a).sum();
        if sum != m {
            out.push(Violation::VertexSum { vertex: v, sum });
        }
    }
    out
}

fn nu_violations(t: &HurwitzTree) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, e) in t.edges.iter().enumerate() {
        let Some(nu) = e.nu else {
            out.push(Violation::MissingDecoration { edge: i });
            continue;
        };
        if let Some(no) = t.edges[e.opposite].nu {
            if nu + no != -1 {
                out.push(Violation::NuOpposite { edge: i });
            }
        }
        if let Some(k) = t.marking_at(e.target) {
            if t.marked[k - 1].nu.is_some_and(|x| x != nu) {
                out.push(Violation::TerminalNu { edge: i });
            }
        }
    }
    for v in t.interior_vertices() {
        let sum: i64 = t.outgoing(v).iter().filter_map(|&e| t.edges[e].nu).map(|x| x - 1).sum();
        if sum != -3 {
            out.push(Violation::NuVertexSum { vertex: v, sum });
        }
    }
    out
}

fn special_violations(t: &HurwitzTree) -> Vec<Violation> {
    let mut out = Vec::new();
    for &v in &t.leaves {
        if t.marking_at(v).is_none() {
            out.push(Violation::UnmarkedLeaf { vertex: v });
        }
    }
    for (i, e) in t.edges.iter().enumerate() {
        if e.a.is_some_and(|a| a == 0 || a >= t.m) {
            out.push(Violation::SpecialA { edge: i });
        }
        if e.nu.is_some_and(|x| !(-2..=1).contains(&x)) {
            out.push(Violation::NuBounds { edge: i });
        }
    }
    let mut medians = 0;
    for v in t.interior_vertices() {
        let negative = t.outgoing(v).iter().filter(|&&e| t.edges[e].nu.is_some_and(|x| x < 0)).count();
        if negative == 0 {
            medians += 1;
        } else if negative > 1 {
            out.push(Violation::NegativeEdges { vertex: v, count: negative });
        }
    }
    if medians != 1 {
        out.push(Violation::MedianCount { count: medians });
    }
    out
}

/// Itemized outcome of [`validate_decorations`]; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecorationReport {
    pub violations: Vec<Violation>,
}

impl DecorationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the structure, both label calculi, and with `special` set the
/// extra constraints satisfied by special covers.
pub fn validate_decorations(t: &HurwitzTree, special: bool) -> DecorationReport {
    let mut violations = check_structure(t);
    if violations.is_empty() {
        violations.extend(a_violations(t));
        violations.extend(nu_violations(t));
        if special {
            violations.extend(special_violations(t));
        }
    }
    DecorationReport { violations }
}

fn check_s0(t: &HurwitzTree, s0: [usize; 3]) -> Result<(), TreeError> {
    require_structure(t)?;
    let r = t.r();
    if t.leaves.iter().any(|&v| t.marking_at(v).is_none()) {
        return Err(TreeError::NotSpecial("some leaf is unmarked"));
    }
    if s0.iter().any(|&i| i == 0 || i > r) || s0[0] == s0[1] || s0[0] == s0[2] || s0[1] == s0[2] {
        return Err(TreeError::NotSpecial("S0 must be three distinct indices in 1..=r"));
    }
    for (i, mk) in t.marked.iter().enumerate() {
        let want = if s0.contains(&(i + 1)) { 0 } else { 1 };
        if mk.nu.is_some_and(|x| x != want) {
            return Err(TreeError::NotSpecial("leaf nu must be 0 exactly on S0"));
        }
    }
    Ok(())
}

/// Sets `nu_e = 1 - |I_e cap S0|` on every edge and `nu_i` on the leaves,
/// where `I_e` is the set of marked indices beyond `e`.
pub fn nu_from_leaves(t: &HurwitzTree, s0: [usize; 3]) -> Result<HurwitzTree, TreeError> {
    check_s0(t, s0)?;
    let mut out = t.clone();
    for e in 0..t.edges.len() {
        let hit = t.leaves_beyond(e).iter().filter(|i| s0.contains(i)).count() as i64;
        out.edges[e].nu = Some(1 - hit);
    }
    for (i, mk) in out.marked.iter_mut().enumerate() {
        mk.nu = Some(if s0.contains(&(i + 1)) { 0 } else { 1 });
    }
    let bad = nu_violations(&out);
    assert!(bad.is_empty(), "closed form violates the nu calculus: {bad:?}");
    Ok(out)
}

/// The interior vertex all of whose outgoing edges have `nu_e >= 0`, if
/// exactly one exists.
pub fn median_by_sign(t: &HurwitzTree) -> Option<usize> {
    let found: Vec<usize> = t
        .interior_vertices()
        .into_iter()
        .filter(|&v| t.outgoing(v).iter().all(|&e| t.edges[e].nu.is_some_and(|x| x >= 0)))
        .collect();
    (found.len() == 1).then(|| found[0])
}

/// The vertex common to the three pairwise paths between the `S0` leaves.
pub fn median_by_paths(t: &HurwitzTree, s0: [usize; 3]) -> usize {
    let leaf = |i: usize| t.marked[i - 1].leaf;
    let p01: BTreeSet<usize> = t.path(leaf(s0[0]), leaf(s0[1])).into_iter().collect();
    let p02: BTreeSet<usize> = t.path(leaf(s0[0]), leaf(s0[2])).into_iter().collect();
    let p12 = t.path(leaf(s0[1]), leaf(s0[2]));
    let common: Vec<usize> = p12.into_iter().filter(|v| p01.contains(v) && p02.contains(v)).collect();
    debug_assert_eq!(common.len(), 1);
    common[0]
}

/// The median vertex `v0` of the `S0` leaves, computed from the `nu` signs
/// of [`nu_from_leaves`] and by path intersection; the two must agree.
pub fn median_vertex(t: &HurwitzTree, s0: [usize; 3]) -> Result<usize, TreeError> {
    let with_nu = nu_from_leaves(t, s0)?;
    let by_sign = median_by_sign(&with_nu);
    let by_paths = median_by_paths(t, s0);
    match by_sign {
        Some(v) if v == by_paths => Ok(v),
        _ => Err(TreeError::MedianMismatch { by_sign, by_paths }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Star { center: usize },
    /// `vertex` is an interior vertex other than the median; `edge` is its
    /// unique outgoing edge with negative `nu`, along which the reduction
    /// would be an additive torsor with a nonexact differential.
    NonStarGeometricallyImpossible { vertex: usize, edge: usize, nu: i64 },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Star { .. } => "star",
            Verdict::NonStarGeometricallyImpossible { .. } => "non_star_geometrically_impossible",
        }
    }
}

/// Classifies a validly decorated special tree by its shape.
pub fn theorem1_verdict(t: &HurwitzTree) -> Result<Verdict, TreeError> {
    let report = validate_decorations(t, true);
    if !report.is_valid() {
        return Err(TreeError::InvalidDecorations(report.violations));
    }
    let v0 = median_by_sign(t).expect("validated");
    for v in t.interior_vertices() {
        if v == v0 {
            continue;
        }
        let edge = t.outgoing(v).into_iter().find(|&e| t.edges[e].nu.unwrap() < 0).expect("validated");
        return Ok(Verdict::NonStarGeometricallyImpossible { vertex: v, edge, nu: t.edges[edge].nu.unwrap() });
    }
    Ok(Verdict::Star { center: v0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ReductionTag {
    Multiplicative,
    Additive,
    Etale,
}

impl ReductionTag {
    pub fn label(self) -> &'static str {
        match self {
            ReductionTag::Multiplicative => "multiplicative",
            ReductionTag::Additive => "additive",
            ReductionTag::Etale => "etale",
        }
    }
}

/// A thickness in valuation units with `v(p) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Thickness {
    Exact(Ratio<i64>),
    /// Strictly between `0` and `upper`.
    Open { upper: Ratio<i64> },
    /// No constraint for this pair of reduction types.
    Unconstrained,
}

impl Thickness {
    fn scaled(self, k: Ratio<i64>) -> Thickness {
        match self {
            Thickness::Exact(x) => Thickness::Exact(x * k),
            Thickness::Open { upper } => Thickness::Open { upper: upper * k },
            Thickness::Unconstrained => Thickness::Unconstrained,
        }
    }
}

impl fmt::Display for Thickness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Thickness::Exact(x) => write!(f, "{x}"),
            Thickness::Open { upper } => write!(f, "(0, {upper})"),
            Thickness::Unconstrained => write!(f, "-"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeInvariants {
    pub edge: usize,
    /// `(nu_e m + a_e) / gcd(a_e, m)`.
    pub h: i64,
    pub source_tag: ReductionTag,
    pub target_tag: ReductionTag,
    /// Thickness of the cover at a point above the double point.
    pub thickness: Thickness,
    /// Thickness of the base at the double point.
    pub base_thickness: Thickness,
}

/// `(nu m + a) / gcd(a, m)`; `None` if the division is not exact.
pub fn conductor_of(a: u64, nu: i64, m: u64) -> Option<i64> {
    let g = a.gcd(&m) as i64;
    let num = nu * m as i64 + a as i64;
    (num % g == 0).then(|| num / g)
}

/// Per-edge conductors, reduction tags (leaves etale, the median
/// multiplicative, other interior vertices additive) and thickness data.
pub fn edge_invariants(t: &HurwitzTree, p: u64) -> Result<Vec<EdgeInvariants>, TreeError> {
    let m = t.m;
    if m < 2 || (p - 1) % m != 0 {
        return Err(TreeError::Inadmissible("m must divide p - 1"));
    }
    let report = validate_decorations(t, false);
    if !report.is_valid() {
        return Err(TreeError::InvalidDecorations(report.violations));
    }
    let v0 = median_by_sign(t).ok_or(TreeError::NotSpecial("no unique median vertex"))?;
    let tag = |v: usize| {
        if t.is_leaf(v) {
            ReductionTag::Etale
        } else if v == v0 {
            ReductionTag::Multiplicative
        } else {
            ReductionTag::Additive
        }
    };
    let mut out = Vec::with_capacity(t.edges.len());
    for (i, e) in t.edges.iter().enumerate() {
        let (a, nu) = (e.a.unwrap(), e.nu.unwrap());
        let h = conductor_of(a, nu, m).expect("gcd divides both terms");
        let (st, tt) = (tag(e.source), tag(e.target));
        let bound = || Ratio::new(1, (p as i64 - 1) * h);
        let thickness = match (st, tt) {
            _ if h == 0 && (tt == ReductionTag::Etale || st == ReductionTag::Multiplicative) => {
                return Err(TreeError::ZeroConductor { edge: i });
            }
            (ReductionTag::Multiplicative, ReductionTag::Etale) => Thickness::Exact(bound()),
            (ReductionTag::Multiplicative, ReductionTag::Additive) => Thickness::Open { upper: bound() },
            _ => Thickness::Unconstrained,
        };
        let g = a.gcd(&m);
        let base_thickness = thickness.scaled(Ratio::from_integer((p * a / g) as i64));
        out.push(EdgeInvariants { edge: i, h, source_tag: st, target_tag: tt, thickness, base_thickness });
    }
    Ok(out)
}
