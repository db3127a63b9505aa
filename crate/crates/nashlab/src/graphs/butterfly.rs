//! The double butterfly host `H` and its edge multigraph `H^d`.

use crate::error::{Error, Result};

use super::gray::{gray_cyclic, gray_width};
use super::{Edge, GraphKind, Label, LabeledHostGraph};

/// Vertex id of `(z, layer)` in the double butterfly on `2^n * 2n` vertices.
pub fn butterfly_id(n: u32, z: u64, layer: u32) -> u32 {
    debug_assert!(layer < 2 * n);
    (u64::from(layer) * (1u64 << n) + z) as u32
}

/// Inverse of [`butterfly_id`].
pub fn butterfly_coords(n: u32, id: u32) -> (u64, u32) {
    let big_n = 1u64 << n;
    (u64::from(id) % big_n, (u64::from(id) / big_n) as u32)
}

fn butterfly_label(n: u32, z: u64, layer: u32) -> Label {
    let layers = 2 * n as usize;
    let z_part = Label::new(z, n);
    let layer_part = Label::new(gray_cyclic(layer as usize, layers), gray_width(layers));
    z_part.concat(&layer_part)
}

/// Bit flipped when stepping out of `layer`.
pub fn flip_bit(n: u32, layer: u32) -> u32 {
    layer % n
}

/// Build the double butterfly `H`: two `n`-th butterflies glued along their
/// first/last layers, giving `2 * 2^n * n` vertices arranged in a ring of
/// `2n` layers. Layer 0 carries the `[N]` identification (vertex `v` of the
/// end-of-line vertex set maps to `(z = v, layer 0)`, in lexicographic label
/// order, so the special vertex is the all-zero label).
pub fn build_double_butterfly(n: u32) -> Result<LabeledHostGraph> {
    if n == 0 {
        return Err(Error::invalid("butterfly requires n >= 1"));
    }
    if n > 20 {
        return Err(Error::invalid("butterfly too large to materialize"));
    }
    let big_n = 1u64 << n;
    let layers = 2 * n;
    let mut labels = Vec::with_capacity((big_n as usize) * layers as usize);
    for layer in 0..layers {
        for z in 0..big_n {
            debug_assert_eq!(labels.len() as u32, butterfly_id(n, z, layer));
            labels.push(butterfly_label(n, z, layer));
        }
    }
    let mut edges = Vec::with_capacity(labels.len() * 2);
    for layer in 0..layers {
        let next = (layer + 1) % layers;
        let bit = flip_bit(n, layer);
        for z in 0..big_n {
            let tail = butterfly_id(n, z, layer);
            edges.push(Edge {
                tail,
                head: butterfly_id(n, z, next),
                slot: 1,
            });
            edges.push(Edge {
                tail,
                head: butterfly_id(n, z ^ (1 << bit), next),
                slot: 1,
            });
        }
    }
    Ok(LabeledHostGraph::from_parts(
        GraphKind::ButterflyDouble,
        n,
        labels,
        edges,
    ))
}

/// `H^d`: every edge of the double butterfly repeated `d` times with
/// multiplicity slots `1..=d`.
pub fn multiply_edges(h: &LabeledHostGraph, d: u32) -> Result<LabeledHostGraph> {
    if h.kind != GraphKind::ButterflyDouble {
        return Err(Error::invalid("multiply_edges requires the double butterfly"));
    }
    if d == 0 {
        return Err(Error::invalid("edge multiplicity d must be positive"));
    }
    let labels: Vec<Label> = (0..h.vertex_count() as u32).map(|v| h.label(v)).collect();
    let mut edges = Vec::with_capacity(h.edge_count() * d as usize);
    for e in h.edges() {
        for slot in 1..=d {
            edges.push(Edge {
                tail: e.tail,
                head: e.head,
                slot,
            });
        }
    }
    Ok(LabeledHostGraph::from_parts(
        GraphKind::ButterflyMulti { d },
        h.n,
        labels,
        edges,
    ))
}

/// The `d` used throughout the pipeline: smallest power of two at least
/// `log2(vertex count of H)`.
pub fn default_multiplicity(n: u32) -> u32 {
    let n_prime = 2u64 * (1u64 << n) * u64::from(n);
    let log = (64 - (n_prime - 1).leading_zeros()) as u32; // ceil(log2 N')
    log.next_power_of_two()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_count_matches_two_n_times_n() {
        // N' = 2 * N * n with N = 2^n
        let h = build_double_butterfly(2).unwrap();
        assert_eq!(h.vertex_count(), 16);
        assert_eq!(h.label_bits(), 2 + 2); // z + gray(4 layers)
    }

    #[test]
    fn every_vertex_has_out_degree_two() {
        let h = build_double_butterfly(1).unwrap();
        for v in 0..h.vertex_count() as u32 {
            assert_eq!(h.out_edges(v).len(), 2);
            assert_eq!(h.in_edges(v).len(), 2);
        }
    }

    #[test]
    fn out_neighbors_flip_the_layer_bit() {
        // n=3, vertex (z=010, i=2): out-neighbors (010,3) and (110... bit 2
        // of 010 is 0 -> flipping coordinate 2 gives 011 in LSB-first, i.e.
        // the paper's z^i with i the layer index.
        let n = 3;
        let h = build_double_butterfly(n).unwrap();
        let z = 0b010u64; // coordinate 1 set
        let v = butterfly_id(n, z, 2);
        let heads: Vec<(u64, u32)> = h
            .out_edges(v)
            .iter()
            .map(|&e| butterfly_coords(n, h.edges()[e as usize].head))
            .collect();
        assert!(heads.contains(&(z, 3)));
        assert!(heads.contains(&(z ^ 0b100, 3)));
    }

    #[test]
    fn adjacent_labels_differ_in_at_most_two_coordinates() {
        for n in [1u32, 2, 3, 4] {
            let h = build_double_butterfly(n).unwrap();
            assert!(h.max_label_diff() <= h.published_label_diff().unwrap());
        }
    }

    #[test]
    fn multiplied_graph_has_d_times_edges_and_degree_2d() {
        let h = build_double_butterfly(2).unwrap();
        let hd = multiply_edges(&h, 4).unwrap();
        assert_eq!(hd.edge_count(), 4 * h.edge_count());
        for v in 0..hd.vertex_count() as u32 {
            assert_eq!(hd.out_edges(v).len(), 8);
            assert_eq!(hd.in_edges(v).len(), 8);
        }
    }

    #[test]
    fn d_one_is_the_identity_on_edges() {
        let h = build_double_butterfly(2).unwrap();
        let h1 = multiply_edges(&h, 1).unwrap();
        assert_eq!(h1.edges(), h.edges());
    }

    #[test]
    fn zero_multiplicity_is_rejected() {
        let h = build_double_butterfly(2).unwrap();
        assert!(multiply_edges(&h, 0).is_err());
    }

    #[test]
    fn default_multiplicity_is_a_power_of_two_at_least_log() {
        // n=10: N' = 20480, log2 ~ 14.3 -> 16
        assert_eq!(default_multiplicity(10), 16);
        assert_eq!(default_multiplicity(12), 32);
    }
}
