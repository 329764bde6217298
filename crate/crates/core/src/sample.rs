//! Random graphs and spines for fuzzing and sampling.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{RegularGraph, DEGREE};
use crate::spine::{Chirality, Spine};

/// A connected 4-regular multigraph from a uniformly random dart pairing
/// (configuration model), resampled until connected.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, vertex_count: usize) -> RegularGraph {
    assert!(vertex_count > 0);
    let mut darts: Vec<usize> = (0..DEGREE * vertex_count).collect();
    loop {
        darts.shuffle(rng);
        let pairs: Vec<[usize; 2]> = darts.chunks(2).map(|p| [p[0], p[1]]).collect();
        let g = RegularGraph::new(vertex_count, &pairs).expect("a shuffled pairing is valid");
        if g.is_connected() {
            return g;
        }
    }
}

/// A random decoration of `graph`.
pub fn random_decoration<R: Rng + ?Sized>(rng: &mut R, graph: RegularGraph) -> Spine {
    let chirality = (0..graph.vertex_count())
        .map(|_| if rng.gen::<bool>() { Chirality::Positive } else { Chirality::Negative })
        .collect();
    let gluing = (0..graph.edge_count()).map(|_| rng.gen_range(0..3u8)).collect();
    Spine::new(graph, chirality, gluing).expect("connected graph, well-shaped decoration")
}

pub fn random_spine<R: Rng + ?Sized>(rng: &mut R, vertex_count: usize) -> Spine {
    let g = random_graph(rng, vertex_count);
    random_decoration(rng, g)
}

/// A uniformly random relabeling: vertex permutation plus a local permutation
/// per vertex.
pub fn random_relabeling<R: Rng + ?Sized>(rng: &mut R, vertex_count: usize) -> (Vec<usize>, Vec<[usize; 4]>) {
    let mut vertex_map: Vec<usize> = (0..vertex_count).collect();
    vertex_map.shuffle(rng);
    let local = (0..vertex_count)
        .map(|_| {
            let mut p = [0, 1, 2, 3];
            p.shuffle(rng);
            p
        })
        .collect();
    (vertex_map, local)
}
