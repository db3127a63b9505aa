//! The constant-degree replacement product `H'`.
//!
//! Every vertex of `H^d` (in/out degree `2d`, `2d` a power of two) is
//! replaced by a copy of a layered gadget `K`: a complete bipartite graph
//! between `2d` entry points and `2d` exit points with both sides' degree-2d
//! vertices expanded into binary trees of height `delta = log2(2d)`. `K` has
//! `2*delta + 1` layers and `O(d^2)` vertices; within `H'` every vertex has
//! in-degree and out-degree at most 2.
//!
//! Labels concatenate the `H` label with a `K` label made of a `2*delta`-bit
//! string plus a Gray-coded layer index. The string starts as
//! `(entry-slot, 0)` on the first layer and, walking through the gadget,
//! first reveals the exit slot behind the entry bits and then migrates it
//! into the leading coordinates, ending as `(exit-slot, 0)` on the last
//! layer. Edge slots of `H^d` are numbered `slot-copy` in the low bits and
//! `base-edge index` in the top bit, so the entry and exit slot strings of
//! one `H^d` edge differ in at most one coordinate and every `H'` edge moves
//! at most [`LABEL_DIFF_BOUND`] label coordinates.

use crate::error::{Error, Result};

use super::gray::{gray_cyclic, gray_width};
use super::{Edge, GraphKind, Label, LabeledHostGraph};

/// Published bound on adjacent-label coordinate differences in `H'`:
/// internal gadget steps move at most 3 coordinates (2 string + 1 Gray),
/// product edges at most 5 (1 base bit + 1 base Gray + 1 slot bit + 2 Gray).
pub const LABEL_DIFF_BOUND: u32 = 5;

/// Explicit materialization cap (vertex count) for `H'`.
const EXPLICIT_VERTEX_CAP: usize = 8_000_000;

/// A node of the routing gadget `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KNode {
    /// Left-side node at depth `t in 0..=delta`: entry slot `entry`, first
    /// `t` bits of the exit slot revealed in `exit_prefix`. Depth `delta` is
    /// the middle layer (full exit slot known).
    Left { entry: u32, exit_prefix: u32, depth: u32 },
    /// Right-side node at height `s in 1..=delta` above the middle: exit slot
    /// `exit`, remaining entry bits `entry_suffix = entry >> s`. Height
    /// `delta` is the exit root.
    Right { exit: u32, entry_suffix: u32, height: u32 },
}

/// The gadget for degree `2d` (`d` a power of two).
pub struct KGadget {
    pub d: u32,
    pub delta: u32,
    nodes: Vec<KNode>,
    index_of: std::collections::HashMap<(u8, u32, u32, u32), u32>,
    out_cache: Vec<Vec<u32>>,
    in_cache: Vec<Vec<u32>>,
    label_cache: Vec<Label>,
}

impl KGadget {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 || !d.is_power_of_two() {
            return Err(Error::invalid("replacement product needs d a power of two"));
        }
        let two_d = 2 * d;
        let delta = two_d.trailing_zeros();
        let mut nodes = Vec::new();
        let mut index_of = std::collections::HashMap::new();
        for depth in 0..=delta {
            for entry in 0..two_d {
                for exit_prefix in 0..(1u32 << depth) {
                    index_of.insert((0, entry, exit_prefix, depth), nodes.len() as u32);
                    nodes.push(KNode::Left {
                        entry,
                        exit_prefix,
                        depth,
                    });
                }
            }
        }
        for height in 1..=delta {
            for exit in 0..two_d {
                for entry_suffix in 0..(1u32 << (delta - height)) {
                    index_of.insert((1, exit, entry_suffix, height), nodes.len() as u32);
                    nodes.push(KNode::Right {
                        exit,
                        entry_suffix,
                        height,
                    });
                }
            }
        }
        let mut k = KGadget {
            d,
            delta,
            nodes,
            index_of,
            out_cache: Vec::new(),
            in_cache: Vec::new(),
            label_cache: Vec::new(),
        };
        let count = k.node_count() as u32;
        k.out_cache = (0..count).map(|i| k.compute_internal_out(i)).collect();
        k.in_cache = (0..count).map(|i| k.compute_internal_in(i)).collect();
        k.label_cache = (0..count).map(|i| k.compute_label(i)).collect();
        Ok(k)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, id: u32) -> KNode {
        self.nodes[id as usize]
    }

    fn id_left(&self, entry: u32, exit_prefix: u32, depth: u32) -> u32 {
        self.index_of[&(0, entry, exit_prefix, depth)]
    }

    fn id_right(&self, exit: u32, entry_suffix: u32, height: u32) -> u32 {
        self.index_of[&(1, exit, entry_suffix, height)]
    }

    /// Entry root (first layer) for incoming slot `entry`.
    pub fn entry_root(&self, entry: u32) -> u32 {
        self.id_left(entry, 0, 0)
    }

    /// Exit root (last layer) for outgoing slot `exit`.
    pub fn exit_root(&self, exit: u32) -> u32 {
        self.id_right(exit, 0, self.delta)
    }

    /// Layer index in `0..=2*delta`.
    pub fn layer(&self, id: u32) -> u32 {
        match self.node(id) {
            KNode::Left { depth, .. } => depth,
            KNode::Right { height, .. } => self.delta + height,
        }
    }

    /// Internal out-neighbors (within one gadget copy).
    pub fn internal_out(&self, id: u32) -> &[u32] {
        &self.out_cache[id as usize]
    }

    /// Internal in-neighbors (within one gadget copy).
    pub fn internal_in(&self, id: u32) -> &[u32] {
        &self.in_cache[id as usize]
    }

    fn compute_internal_out(&self, id: u32) -> Vec<u32> {
        match self.node(id) {
            KNode::Left {
                entry,
                exit_prefix,
                depth,
            } => {
                if depth < self.delta {
                    (0..2)
                        .map(|b| self.id_left(entry, exit_prefix | (b << depth), depth + 1))
                        .collect()
                } else {
                    // middle layer -> right side, merging entry bit 0
                    vec![self.id_right(exit_prefix, entry >> 1, 1)]
                }
            }
            KNode::Right {
                exit,
                entry_suffix,
                height,
            } => {
                if height < self.delta {
                    vec![self.id_right(exit, entry_suffix >> 1, height + 1)]
                } else {
                    Vec::new() // exit root: external edge only
                }
            }
        }
    }

    fn compute_internal_in(&self, id: u32) -> Vec<u32> {
        match self.node(id) {
            KNode::Left {
                entry,
                exit_prefix,
                depth,
            } => {
                if depth > 0 {
                    vec![self.id_left(entry, exit_prefix & !(1 << (depth - 1)), depth - 1)]
                } else {
                    Vec::new() // entry root: external edge only
                }
            }
            KNode::Right {
                exit,
                entry_suffix,
                height,
            } => {
                if height > 1 {
                    (0..2)
                        .map(|b| self.id_right(exit, (entry_suffix << 1) | b, height - 1))
                        .collect()
                } else {
                    // in from middle layer: entry = (entry_suffix << 1) | b
                    (0..2)
                        .map(|b| self.id_left((entry_suffix << 1) | b, exit, self.delta))
                        .collect()
                }
            }
        }
    }

    /// The `2*delta`-bit string part of the node label.
    pub fn label_string(&self, id: u32) -> u64 {
        let delta = self.delta;
        match self.node(id) {
            KNode::Left {
                entry,
                exit_prefix,
                ..
            } => u64::from(entry) | (u64::from(exit_prefix) << delta),
            KNode::Right {
                exit,
                entry_suffix,
                height,
            } => {
                let s = height;
                let low_exit = u64::from(exit) & ((1u64 << s) - 1);
                let entry_part = u64::from(entry_suffix) << s;
                let high_exit = (u64::from(exit) >> s) << (delta + s);
                low_exit | entry_part | high_exit
            }
        }
    }

    /// Full `K` label: string plus Gray-coded layer (ring of `2*delta + 2`
    /// so the product edge from the last layer back to a first layer moves
    /// at most 2 Gray coordinates).
    pub fn label(&self, id: u32) -> Label {
        self.label_cache[id as usize]
    }

    fn compute_label(&self, id: u32) -> Label {
        let ring = 2 * self.delta as usize + 2;
        let string = Label::new(self.label_string(id), 2 * self.delta);
        let layer = Label::new(
            gray_cyclic(self.layer(id) as usize, ring),
            gray_width(ring),
        );
        string.concat(&layer)
    }

    /// (in, out) internal+external degree of a node; uniform across copies.
    pub fn degrees(&self, id: u32) -> (u32, u32) {
        let inn = match self.node(id) {
            KNode::Left { depth: 0, .. } => 1, // external entry edge
            _ => self.in_cache[id as usize].len() as u32,
        };
        let out = match self.node(id) {
            KNode::Right { height, .. } if height == self.delta => 1, // external exit edge
            _ => self.out_cache[id as usize].len() as u32,
        };
        (inn, out)
    }

    pub fn label_bits(&self) -> u32 {
        2 * self.delta + gray_width(2 * self.delta as usize + 2)
    }
}

/// Slot numbering of the `2d` in/out edge slots at an `H^d` vertex: copy
/// index (`0..d`) in the low bits, base-edge index (0 or 1) in the top bit.
/// The entry and exit slots of one `H^d` edge then agree on the copy bits.
pub fn edge_slot(d: u32, base_index: u32, copy: u32) -> u32 {
    debug_assert!(base_index < 2 && copy < d);
    base_index * d + copy
}

/// A lazily evaluated `H'`: adjacency, labels and degrees are computed on
/// demand so that hosts far beyond materializable size can still be scanned
/// exhaustively.
pub struct ReplacementView {
    pub base: LabeledHostGraph, // the H^d multigraph
    pub k: KGadget,
}

impl ReplacementView {
    pub fn new(base: LabeledHostGraph) -> Result<Self> {
        let d = match base.kind {
            GraphKind::ButterflyMulti { d } => d,
            _ => {
                return Err(Error::invalid(
                    "replacement product requires the butterfly multigraph",
                ))
            }
        };
        let k = KGadget::new(d)?;
        // The slot-alignment argument needs every base vertex to have exactly
        // two base out-edges and two base in-edges, each with d copies.
        debug_assert!(base.edges().iter().all(|e| e.slot >= 1 && e.slot <= d));
        Ok(ReplacementView { base, k })
    }

    pub fn d(&self) -> u32 {
        self.k.d
    }

    pub fn vertex_count(&self) -> u64 {
        self.base.vertex_count() as u64 * self.k.node_count() as u64
    }

    pub fn vertex_id(&self, h: u32, knode: u32) -> u64 {
        u64::from(h) * self.k.node_count() as u64 + u64::from(knode)
    }

    pub fn split_id(&self, id: u64) -> (u32, u32) {
        let kc = self.k.node_count() as u64;
        ((id / kc) as u32, (id % kc) as u32)
    }

    pub fn label(&self, id: u64) -> Label {
        let (h, knode) = self.split_id(id);
        self.base.label(h).concat(&self.k.label(knode))
    }

    pub fn label_bits(&self) -> u32 {
        self.base.label_bits() + self.k.label_bits()
    }

    /// Base out-edges of `h` grouped per base neighbor in canonical order:
    /// returns the two (head, in-base-index-at-head) pairs.
    fn base_out(&self, h: u32) -> Vec<(u32, u32)> {
        let d = self.k.d;
        let edges = self.base.out_edges(h);
        debug_assert_eq!(edges.len() as u32, 2 * d);
        // canonical order groups slots of one head together
        let mut heads = Vec::with_capacity(2);
        for &e in edges {
            let head = self.base.edges()[e as usize].head;
            if !heads.contains(&head) {
                heads.push(head);
            }
        }
        heads
            .into_iter()
            .map(|head| {
                let cin = self
                    .base_in_tails(head)
                    .iter()
                    .position(|&t| t == h)
                    .expect("base edge must appear among head's in-edges")
                    as u32;
                (head, cin)
            })
            .collect()
    }

    fn base_in_tails(&self, h: u32) -> Vec<u32> {
        let mut tails = Vec::with_capacity(2);
        for &e in self.base.in_edges(h) {
            let tail = self.base.edges()[e as usize].tail;
            if !tails.contains(&tail) {
                tails.push(tail);
            }
        }
        tails
    }

    /// (in, out) degree of an `H'` vertex, computed without allocation.
    pub fn degrees(&self, id: u64) -> (u32, u32) {
        let (_, knode) = self.split_id(id);
        self.k.degrees(knode)
    }

    pub fn out_neighbors(&self, id: u64) -> Vec<u64> {
        let (h, knode) = self.split_id(id);
        let mut out: Vec<u64> = self
            .k
            .internal_out(knode)
            .iter()
            .map(|&k2| self.vertex_id(h, k2))
            .collect();
        if let KNode::Right { exit, height, .. } = self.k.node(knode) {
            if height == self.k.delta {
                let d = self.k.d;
                let base_index = exit / d;
                let copy = exit % d;
                let (head, cin) = self.base_out(h)[base_index as usize];
                let entry = edge_slot(d, cin, copy);
                out.push(self.vertex_id(head, self.k.entry_root(entry)));
            }
        }
        out
    }

    pub fn in_neighbors(&self, id: u64) -> Vec<u64> {
        let (h, knode) = self.split_id(id);
        let mut inn: Vec<u64> = self
            .k
            .internal_in(knode)
            .iter()
            .map(|&k2| self.vertex_id(h, k2))
            .collect();
        if let KNode::Left { entry, depth, .. } = self.k.node(knode) {
            if depth == 0 {
                let d = self.k.d;
                let base_index = entry / d;
                let copy = entry % d;
                let tail = self.base_in_tails(h)[base_index as usize];
                let cout = self
                    .base_out(tail)
                    .iter()
                    .position(|&(head, _)| head == h)
                    .expect("base edge must appear among tail's out-edges")
                    as u32;
                let exit = edge_slot(d, cout as u32, copy);
                inn.push(self.vertex_id(tail, self.k.exit_root(exit)));
            }
        }
        inn
    }
}

/// Materialize `H'` explicitly. Fails for hosts beyond desk scale; the
/// [`ReplacementView`] serves the large-side scans.
pub fn replacement_product(hd: &LabeledHostGraph) -> Result<LabeledHostGraph> {
    let d = match hd.kind {
        GraphKind::ButterflyMulti { d } => d,
        _ => {
            return Err(Error::invalid(
                "replacement product requires the butterfly multigraph",
            ))
        }
    };
    if !d.is_power_of_two() {
        return Err(Error::invalid("replacement product needs d a power of two"));
    }
    // Rebuild a view over an owned copy of the base graph.
    let base = LabeledHostGraph::from_parts(
        hd.kind,
        hd.n,
        (0..hd.vertex_count() as u32).map(|v| hd.label(v)).collect(),
        hd.edges().to_vec(),
    );
    let view = ReplacementView::new(base)?;
    let total = view.vertex_count();
    if total > EXPLICIT_VERTEX_CAP as u64 {
        return Err(Error::invalid(format!(
            "H' would have {total} vertices; beyond the explicit cap, use ReplacementView"
        )));
    }
    let total = total as usize;
    let mut labels = Vec::with_capacity(total);
    for id in 0..total as u64 {
        labels.push(view.label(id));
    }
    let mut edges = Vec::new();
    for id in 0..total as u64 {
        for head in view.out_neighbors(id) {
            edges.push(Edge {
                tail: id as u32,
                head: head as u32,
                slot: 1,
            });
        }
    }
    Ok(LabeledHostGraph::from_parts(
        GraphKind::ReplacementProduct { d },
        hd.n,
        labels,
        edges,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::butterfly::{build_double_butterfly, multiply_edges};

    fn small_view(n: u32, d: u32) -> ReplacementView {
        let h = build_double_butterfly(n).unwrap();
        let hd = multiply_edges(&h, d).unwrap();
        ReplacementView::new(hd).unwrap()
    }

    #[test]
    fn gadget_layer_count_matches_two_log_plus_one() {
        // d=2 -> 2d=4 -> delta=2 -> 5 layers
        let k = KGadget::new(2).unwrap();
        assert_eq!(k.delta, 2);
        let max_layer = (0..k.node_count() as u32).map(|i| k.layer(i)).max().unwrap();
        assert_eq!(max_layer + 1, 5);
    }

    #[test]
    fn rejects_non_power_of_two_d() {
        assert!(KGadget::new(3).is_err());
        assert!(KGadget::new(0).is_err());
    }

    #[test]
    fn explicit_product_matches_lazy_view() {
        let n = 1;
        let d = 2;
        let h = build_double_butterfly(n).unwrap();
        let hd = multiply_edges(&h, d).unwrap();
        let explicit = replacement_product(&hd).unwrap();
        let view = small_view(n, d);
        assert_eq!(explicit.vertex_count() as u64, view.vertex_count());
        for id in 0..view.vertex_count() {
            assert_eq!(explicit.label(id as u32), view.label(id));
            let mut expl: Vec<u32> = explicit
                .out_edges(id as u32)
                .iter()
                .map(|&e| explicit.edges()[e as usize].head)
                .collect();
            expl.sort_unstable();
            let mut lazy: Vec<u32> = view.out_neighbors(id).iter().map(|&x| x as u32).collect();
            lazy.sort_unstable();
            assert_eq!(expl, lazy);
        }
    }

    #[test]
    fn degrees_are_bounded_by_two_each_way() {
        let view = small_view(2, 2);
        for id in 0..view.vertex_count() {
            assert!(view.out_neighbors(id).len() <= 2);
            assert!(view.in_neighbors(id).len() <= 2);
        }
    }

    #[test]
    fn in_and_out_neighbor_maps_are_inverse() {
        let view = small_view(1, 2);
        for id in 0..view.vertex_count() {
            for head in view.out_neighbors(id) {
                assert!(view.in_neighbors(head).contains(&id), "id={id} head={head}");
            }
            for tail in view.in_neighbors(id) {
                assert!(view.out_neighbors(tail).contains(&id));
            }
        }
    }

    #[test]
    fn label_difference_is_within_the_published_bound() {
        for (n, d) in [(1u32, 2u32), (2, 2), (2, 4)] {
            let view = small_view(n, d);
            let mut worst = 0;
            for id in 0..view.vertex_count() {
                let l = view.label(id);
                for head in view.out_neighbors(id) {
                    worst = worst.max(l.hamming(&view.label(head)));
                }
            }
            assert!(worst <= LABEL_DIFF_BOUND, "n={n} d={d} worst={worst}");
        }
    }

    #[test]
    fn labels_are_unique() {
        let view = small_view(2, 2);
        let mut seen = std::collections::HashSet::new();
        for id in 0..view.vertex_count() {
            assert!(seen.insert(view.label(id).bits()));
        }
    }
}
