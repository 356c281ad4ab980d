#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sscirc::Network;

/// Random DAG on at most `max_v` vertices. Vertex order is topological;
/// inputs are drawn from a prefix and outputs from a suffix so they stay
/// sources and sinks. Parallel edges are allowed.
pub fn random_dag(seed: u64, max_v: usize) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = rng.gen_range(2..=max_v);
    let a = rng.gen_range(1..=(v / 2).max(1));
    let b = rng.gen_range(1..=(v - a).min(v / 2).max(1));
    let inputs: Vec<usize> = (0..a).collect();
    let outputs: Vec<usize> = (v - b..v).collect();
    let density = rng.gen_range(0.15..0.7);
    let mut edges = Vec::new();
    for x in 0..v {
        for y in x + 1..v {
            if y < a || x >= v - b {
                continue;
            }
            if rng.gen_bool(density) {
                edges.push((x, y));
                if rng.gen_bool(0.1) {
                    edges.push((x, y));
                }
            }
        }
    }
    Network::new(v, edges, inputs, outputs).unwrap()
}

/// Minimum number of vertices whose removal disconnects `sources` from
/// `sinks` (positions), found by trying every vertex set.
pub fn brute_force_min_cut(net: &Network, sources: &[usize], sinks: &[usize]) -> usize {
    let v = net.vertex_count();
    assert!(v <= 16);
    let adj = net.out_adjacency();
    let src: Vec<usize> = sources.iter().map(|&i| net.inputs()[i]).collect();
    let dst: Vec<usize> = sinks.iter().map(|&i| net.outputs()[i]).collect();
    let mut best = usize::MAX;
    for cut in 0u32..1 << v {
        let size = cut.count_ones() as usize;
        if size >= best {
            continue;
        }
        let mut seen = vec![false; v];
        let mut stack: Vec<usize> = src.iter().copied().filter(|&s| cut >> s & 1 == 0).collect();
        for &s in &stack {
            seen[s] = true;
        }
        let mut connected = false;
        while let Some(x) = stack.pop() {
            if dst.contains(&x) {
                connected = true;
                break;
            }
            for &y in &adj[x] {
                if !seen[y] && cut >> y & 1 == 0 {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if !connected {
            best = size;
        }
    }
    best
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}
