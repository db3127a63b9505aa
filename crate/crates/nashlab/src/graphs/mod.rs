//! Host graphs and end-of-line instances over them.
//!
//! Three host families are built here: the double butterfly `H` (two glued
//! butterflies sharing their first/last layers), the multigraph `H^d` with
//! every edge repeated `d` times, and the constant-degree replacement product
//! `H'` obtained by substituting a layered routing gadget for every vertex of
//! `H^d`. Vertices carry bit-string labels chosen so that adjacent labels
//! differ in a small published number of coordinates.
//!
//! An [`EolInstance`] selects a subgraph of a host (edge indicators), or, for
//! the complete host of the warm-up experiments, carries successor and
//! predecessor pointer arrays. Solution checking implements both the strict
//! unit-degree rules and the relaxed balanced-degree rules.

pub mod butterfly;
pub mod gray;
pub mod io;
pub mod replacement;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use butterfly::{build_double_butterfly, multiply_edges};
pub use replacement::{replacement_product, KGadget, ReplacementView};

/// A vertex label: a bit string of up to 64 coordinates. Coordinate 0 is the
/// leftmost character in the textual form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Label {
    bits: u64,
    len: u8,
}

impl Label {
    pub fn new(bits: u64, len: u32) -> Self {
        assert!(len <= 64);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        Label {
            bits: bits & mask,
            len: len as u8,
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        u32::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, i: u32) -> bool {
        (self.bits >> i) & 1 == 1
    }

    /// Number of coordinates in which two labels differ.
    pub fn hamming(&self, other: &Label) -> u32 {
        debug_assert_eq!(self.len, other.len);
        (self.bits ^ other.bits).count_ones()
    }

    /// Concatenation: `self` takes coordinates `0..self.len`, `other` follows.
    pub fn concat(&self, other: &Label) -> Label {
        assert!(self.len() + other.len() <= 64);
        Label::new(self.bits | (other.bits << self.len()), self.len() + other.len())
    }

    /// The first `k` coordinates.
    pub fn prefix(&self, k: u32) -> Label {
        assert!(k <= self.len());
        Label::new(self.bits, k)
    }

    /// Coordinates `k..len`.
    pub fn suffix_from(&self, k: u32) -> Label {
        assert!(k <= self.len());
        Label::new(self.bits >> k, self.len() - k)
    }

    pub fn parse(s: &str) -> Result<Label> {
        if s.len() > 64 || s.is_empty() {
            return Err(Error::invalid(format!("bad label `{s}`")));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::invalid(format!("bad label `{s}`"))),
            }
        }
        Ok(Label::new(bits, s.len() as u32))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Coordinate-0-first lexicographic order on the textual form.
        let a = self.bits.reverse_bits() >> (64 - self.len());
        let b = other.bits.reverse_bits() >> (64 - other.len());
        self.len.cmp(&other.len).then(a.cmp(&b))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    CompleteWithPointers,
    ButterflyDouble,
    ButterflyMulti { d: u32 },
    ReplacementProduct { d: u32 },
}

impl GraphKind {
    pub fn token(&self) -> String {
        match self {
            GraphKind::CompleteWithPointers => "complete-with-pointers".into(),
            GraphKind::ButterflyDouble => "butterfly-double".into(),
            GraphKind::ButterflyMulti { .. } => "butterfly-multigraph".into(),
            GraphKind::ReplacementProduct { .. } => "replacement-product".into(),
        }
    }

    pub fn d(&self) -> Option<u32> {
        match self {
            GraphKind::ButterflyMulti { d } | GraphKind::ReplacementProduct { d } => Some(*d),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: u32,
    pub head: u32,
    /// Multiplicity slot, 1-based.
    pub slot: u32,
}

/// A bounded-degree directed multigraph with labeled vertices and a canonical
/// edge order (lexicographic by tail label, head label, then slot).
pub struct LabeledHostGraph {
    pub kind: GraphKind,
    /// Bits per base vertex (the `n` of the underlying `2^n`-vertex space).
    pub n: u32,
    labels: Vec<Label>,
    label_index: HashMap<Label, u32>,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<u32>>, // edge indices, canonical order within vertex
    in_adj: Vec<Vec<u32>>,
    degree_bound_out: u32,
    degree_bound_in: u32,
}

impl LabeledHostGraph {
    pub(crate) fn from_parts(
        kind: GraphKind,
        n: u32,
        labels: Vec<Label>,
        mut edges: Vec<Edge>,
    ) -> Self {
        let label_index: HashMap<Label, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (*l, i as u32))
            .collect();
        assert_eq!(label_index.len(), labels.len(), "labels must be unique");
        edges.sort_by(|a, b| {
            labels[a.tail as usize]
                .cmp(&labels[b.tail as usize])
                .then(labels[a.head as usize].cmp(&labels[b.head as usize]))
                .then(a.slot.cmp(&b.slot))
        });
        let mut out_adj = vec![Vec::new(); labels.len()];
        let mut in_adj = vec![Vec::new(); labels.len()];
        for (i, e) in edges.iter().enumerate() {
            out_adj[e.tail as usize].push(i as u32);
            in_adj[e.head as usize].push(i as u32);
        }
        for adj in in_adj.iter_mut() {
            adj.sort_by_key(|&i| {
                let e = &edges[i as usize];
                (labels[e.tail as usize], e.slot)
            });
        }
        let degree_bound_out = out_adj.iter().map(Vec::len).max().unwrap_or(0) as u32;
        let degree_bound_in = in_adj.iter().map(Vec::len).max().unwrap_or(0) as u32;
        LabeledHostGraph {
            kind,
            n,
            labels,
            label_index,
            edges,
            out_adj,
            in_adj,
            degree_bound_out,
            degree_bound_in,
        }
    }

    /// The complete host over `[N]`: vertices `0..N` labeled with
    /// `ceil(log2(N+1))`-bit strings so that the all-ones string is free to
    /// serve as the null-pointer sentinel. No explicit edges: instances carry
    /// successor/predecessor pointer arrays.
    pub fn complete(n_vertices: usize) -> Result<Self> {
        if n_vertices < 2 {
            return Err(Error::invalid("complete host needs at least 2 vertices"));
        }
        let width = usize::BITS - n_vertices.leading_zeros();
        let labels: Vec<Label> = (0..n_vertices)
            .map(|i| Label::new(i as u64, width))
            .collect();
        Ok(Self::from_parts(
            GraphKind::CompleteWithPointers,
            width,
            labels,
            Vec::new(),
        ))
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn label(&self, v: u32) -> Label {
        self.labels[v as usize]
    }

    pub fn label_bits(&self) -> u32 {
        self.labels.first().map_or(0, |l| l.len())
    }

    pub fn vertex_by_label(&self, label: &Label) -> Option<u32> {
        self.label_index.get(label).copied()
    }

    /// Edge indices leaving `v`, canonical order.
    pub fn out_edges(&self, v: u32) -> &[u32] {
        &self.out_adj[v as usize]
    }

    /// Edge indices entering `v`, canonical order.
    pub fn in_edges(&self, v: u32) -> &[u32] {
        &self.in_adj[v as usize]
    }

    pub fn degree_bound_out(&self) -> u32 {
        self.degree_bound_out
    }

    pub fn degree_bound_in(&self) -> u32 {
        self.degree_bound_in
    }

    /// Published bound on the number of coordinates in which labels of
    /// adjacent vertices may differ.
    pub fn published_label_diff(&self) -> Option<u32> {
        match self.kind {
            GraphKind::CompleteWithPointers => None,
            GraphKind::ButterflyDouble | GraphKind::ButterflyMulti { .. } => Some(2),
            GraphKind::ReplacementProduct { .. } => Some(replacement::LABEL_DIFF_BOUND),
        }
    }

    /// Exhaustive check of the adjacent-label difference property.
    pub fn max_label_diff(&self) -> u32 {
        self.edges
            .iter()
            .map(|e| self.labels[e.tail as usize].hamming(&self.labels[e.head as usize]))
            .max()
            .unwrap_or(0)
    }

    /// The distinguished start vertex (label all zeros).
    pub fn start_vertex(&self) -> u32 {
        0
    }
}

/// Solution-rule variants. Strict demands unit in/out degrees; relaxed only
/// balance (with the +1 offset at the start vertex) and is the natural rule
/// for the multigraph hosts where many paths share a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rules {
    Strict,
    Relaxed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolutionReason {
    SpecialNonSource,
    SpecialSink,
    Source,
    Sink,
    DegreeViolation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EolSolution {
    pub vertex: u32,
    pub label: Label,
    pub reason: SolutionReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EolInput {
    /// Successor/predecessor pointers over the complete host.
    Pointers {
        succ: Vec<Option<u32>>,
        pred: Vec<Option<u32>>,
    },
    /// One indicator bit per host edge, canonical order.
    Indicators(Vec<bool>),
}

/// An end-of-line instance: a host graph plus the input selecting `G_x`.
#[derive(Clone)]
pub struct EolInstance {
    pub host: Arc<LabeledHostGraph>,
    pub input: EolInput,
}

impl EolInstance {
    pub fn from_pointers(
        host: Arc<LabeledHostGraph>,
        succ: Vec<Option<u32>>,
        pred: Vec<Option<u32>>,
    ) -> Result<Self> {
        if host.kind != GraphKind::CompleteWithPointers {
            return Err(Error::invalid("pointer form requires the complete host"));
        }
        if succ.len() != host.vertex_count() || pred.len() != host.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: host.vertex_count(),
                got: succ.len().min(pred.len()),
            });
        }
        Ok(EolInstance {
            host,
            input: EolInput::Pointers { succ, pred },
        })
    }

    pub fn from_indicators(host: Arc<LabeledHostGraph>, bits: Vec<bool>) -> Result<Self> {
        if host.kind == GraphKind::CompleteWithPointers {
            return Err(Error::invalid("indicator form requires an explicit host"));
        }
        if bits.len() != host.edge_count() {
            return Err(Error::LengthMismatch {
                expected: host.edge_count(),
                got: bits.len(),
            });
        }
        Ok(EolInstance {
            host,
            input: EolInput::Indicators(bits),
        })
    }

    /// Empty subgraph over an explicit host.
    pub fn empty(host: Arc<LabeledHostGraph>) -> Result<Self> {
        let m = host.edge_count();
        Self::from_indicators(host, vec![false; m])
    }

    pub fn start_vertex(&self) -> u32 {
        self.host.start_vertex()
    }

    /// Out-degree of `v` in `G_x` (counting multiplicity for indicator hosts).
    pub fn out_degree(&self, v: u32) -> u32 {
        match &self.input {
            EolInput::Pointers { succ, pred } => match succ[v as usize] {
                Some(u) if pred[u as usize] == Some(v) => 1,
                _ => 0,
            },
            EolInput::Indicators(bits) => self
                .host
                .out_edges(v)
                .iter()
                .filter(|&&e| bits[e as usize])
                .count() as u32,
        }
    }

    pub fn in_degree(&self, v: u32) -> u32 {
        match &self.input {
            EolInput::Pointers { succ, pred } => match pred[v as usize] {
                Some(u) if succ[u as usize] == Some(v) => 1,
                _ => 0,
            },
            EolInput::Indicators(bits) => self
                .host
                .in_edges(v)
                .iter()
                .filter(|&&e| bits[e as usize])
                .count() as u32,
        }
    }

    /// The successor of `v` in `G_x` when well-defined: `None` when `v` has no
    /// outgoing edge, an error when it has several (not a paths-and-cycles
    /// instance).
    pub fn successor(&self, v: u32) -> Result<Option<u32>> {
        match &self.input {
            EolInput::Pointers { succ, pred } => Ok(match succ[v as usize] {
                Some(u) if pred[u as usize] == Some(v) => Some(u),
                _ => None,
            }),
            EolInput::Indicators(bits) => {
                let mut heads = self
                    .host
                    .out_edges(v)
                    .iter()
                    .filter(|&&e| bits[e as usize])
                    .map(|&e| self.host.edges()[e as usize].head);
                match (heads.next(), heads.next()) {
                    (None, _) => Ok(None),
                    (Some(u), None) => Ok(Some(u)),
                    (Some(_), Some(_)) => Err(Error::NotDecodable(format!(
                        "vertex {} has out-degree > 1",
                        self.host.label(v)
                    ))),
                }
            }
        }
    }

    pub fn predecessor(&self, v: u32) -> Result<Option<u32>> {
        match &self.input {
            EolInput::Pointers { succ, pred } => Ok(match pred[v as usize] {
                Some(u) if succ[u as usize] == Some(v) => Some(u),
                _ => None,
            }),
            EolInput::Indicators(bits) => {
                let mut tails = self
                    .host
                    .in_edges(v)
                    .iter()
                    .filter(|&&e| bits[e as usize])
                    .map(|&e| self.host.edges()[e as usize].tail);
                match (tails.next(), tails.next()) {
                    (None, _) => Ok(None),
                    (Some(u), None) => Ok(Some(u)),
                    (Some(_), Some(_)) => Err(Error::NotDecodable(format!(
                        "vertex {} has in-degree > 1",
                        self.host.label(v)
                    ))),
                }
            }
        }
    }

    /// Edge list of `G_x` (with multiplicity collapsed for indicator hosts).
    pub fn subgraph_edges(&self) -> Vec<(u32, u32)> {
        match &self.input {
            EolInput::Pointers { succ, pred } => succ
                .iter()
                .enumerate()
                .filter_map(|(v, s)| match s {
                    Some(u) if pred[*u as usize] == Some(v as u32) => Some((v as u32, *u)),
                    _ => None,
                })
                .collect(),
            EolInput::Indicators(bits) => self
                .host
                .edges()
                .iter()
                .zip(bits)
                .filter(|(_, b)| **b)
                .map(|(e, _)| (e.tail, e.head))
                .collect(),
        }
    }
}

/// Decide whether `v` is an end-of-line solution of `inst` under `rules`.
///
/// For replacement-product hosts, isolated non-special vertices are treated
/// as carrying a self-loop and therefore do not count as solutions.
pub fn check_eol_solution(inst: &EolInstance, v: u32, rules: Rules) -> Result<Option<EolSolution>> {
    if (v as usize) >= inst.host.vertex_count() {
        return Err(Error::UnknownVertex(format!("id {v}")));
    }
    let indeg = inst.in_degree(v);
    let outdeg = inst.out_degree(v);
    let special = v == inst.start_vertex();
    let label = inst.host.label(v);
    let sol = |reason| {
        Some(EolSolution {
            vertex: v,
            label,
            reason,
        })
    };
    let verdict = match rules {
        Rules::Strict => {
            if !special
                && indeg == 0
                && outdeg == 0
                && matches!(inst.host.kind, GraphKind::ReplacementProduct { .. })
            {
                // Isolated vertices of H' subgraphs carry implicit self-loops.
                None
            } else if special {
                if indeg != 0 {
                    sol(SolutionReason::SpecialNonSource)
                } else if outdeg == 0 {
                    sol(SolutionReason::SpecialSink)
                } else if outdeg != 1 {
                    sol(SolutionReason::DegreeViolation)
                } else {
                    None
                }
            } else if indeg == 0 && outdeg > 0 {
                sol(SolutionReason::Source)
            } else if outdeg == 0 && indeg > 0 {
                sol(SolutionReason::Sink)
            } else if indeg == 0 && outdeg == 0 {
                sol(SolutionReason::Source)
            } else if indeg != 1 || outdeg != 1 {
                sol(SolutionReason::DegreeViolation)
            } else {
                None
            }
        }
        Rules::Relaxed => {
            if special {
                if outdeg == indeg + 1 {
                    None
                } else if outdeg <= indeg {
                    sol(SolutionReason::SpecialSink)
                } else {
                    sol(SolutionReason::DegreeViolation)
                }
            } else if outdeg == indeg {
                None
            } else if outdeg < indeg {
                sol(SolutionReason::Sink)
            } else {
                sol(SolutionReason::Source)
            }
        }
    };
    Ok(verdict)
}

/// Brute-force scan of all vertices.
pub fn enumerate_solutions(inst: &EolInstance, rules: Rules) -> Result<Vec<EolSolution>> {
    let mut out = Vec::new();
    for v in 0..inst.host.vertex_count() as u32 {
        if let Some(s) = check_eol_solution(inst, v, rules)? {
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_instance(n_vertices: usize, order: &[u32]) -> EolInstance {
        let host = Arc::new(LabeledHostGraph::complete(n_vertices).unwrap());
        let mut succ = vec![None; n_vertices];
        let mut pred = vec![None; n_vertices];
        for w in order.windows(2) {
            succ[w[0] as usize] = Some(w[1]);
            pred[w[1] as usize] = Some(w[0]);
        }
        EolInstance::from_pointers(host, succ, pred).unwrap()
    }

    #[test]
    fn label_text_roundtrip_and_order() {
        let l = Label::parse("0110").unwrap();
        assert_eq!(l.to_string(), "0110");
        assert!(Label::parse("00").unwrap() < Label::parse("01").unwrap());
        assert!(Label::parse("01").unwrap() < Label::parse("10").unwrap());
        assert_eq!(
            Label::parse("011").unwrap().concat(&Label::parse("10").unwrap()),
            Label::parse("01110").unwrap()
        );
    }

    #[test]
    fn single_path_end_is_the_sink_solution() {
        // path 1 -> 2 -> 3 over a 3-vertex complete host (ids 0,1,2)
        let inst = path_instance(3, &[0, 1, 2]);
        let end = check_eol_solution(&inst, 2, Rules::Strict).unwrap();
        assert_eq!(end.unwrap().reason, SolutionReason::Sink);
        assert!(check_eol_solution(&inst, 1, Rules::Strict).unwrap().is_none());
        assert!(check_eol_solution(&inst, 0, Rules::Strict).unwrap().is_none());
        let all = enumerate_solutions(&inst, Rules::Strict).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].vertex, 2);
    }

    #[test]
    fn unknown_vertex_is_rejected() {
        let inst = path_instance(3, &[0, 1, 2]);
        assert!(check_eol_solution(&inst, 9, Rules::Strict).is_err());
    }

    #[test]
    fn pointer_agreement_is_required_for_an_edge() {
        // succ(0)=1 but pred(1)=2: no edge (0,1).
        let host = Arc::new(LabeledHostGraph::complete(3).unwrap());
        let succ = vec![Some(1), None, None];
        let pred = vec![None, Some(2), None];
        let inst = EolInstance::from_pointers(host, succ, pred).unwrap();
        assert_eq!(inst.out_degree(0), 0);
        assert_eq!(inst.subgraph_edges(), Vec::<(u32, u32)>::new());
    }
}
