//! Directed acyclic `(m, n)`-networks: validation, composition, and
//! connectivity verification by vertex-capacitated max-flow.
//!
//! Vertex ids are `0..vertex_count`. Inputs and outputs are ordered lists of
//! vertex ids; subsets of terminals are always given as *positions* in those
//! lists. The edge list is kept sorted, so anything stored parallel to it
//! (circuit coefficients) is parallel to the serialized order.

mod flow;
mod verify;

use std::collections::VecDeque;

use thiserror::Error;

pub use flow::SplitFlow;
pub use verify::{
    check_disjoint_paths, verify_concentrator, verify_partial_sc, verify_superconcentrator, DEFAULT_BUDGET,
};

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("graph contains a cycle")]
    CyclicGraph,
    #[error("dangling terminal: {0}")]
    DanglingInputOutput(String),
    #[error("duplicate terminal vertex {0}")]
    DuplicateTerminal(VertexId),
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(VertexId, VertexId, usize),
    #[error("terminal position {index} out of range ({len} available)")]
    TerminalNotInNetwork { index: usize, len: usize },
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("malformed network document: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    inputs: Vec<VertexId>,
    outputs: Vec<VertexId>,
    depth: usize,
}

impl Network {
    /// Validates and canonicalizes (sorts) the edge list.
    ///
    /// Beyond acyclicity, inputs must be sources and outputs must be sinks,
    /// and the two terminal lists must be duplicate-free and disjoint.
    pub fn new(
        vertex_count: usize,
        mut edges: Vec<(VertexId, VertexId)>,
        inputs: Vec<VertexId>,
        outputs: Vec<VertexId>,
    ) -> Result<Self, NetworkError> {
        edges.sort_unstable();
        let mut net = Network { vertex_count, edges, inputs, outputs, depth: 0 };
        net.check_terminals()?;
        let order = net.topo_order()?;
        net.depth = net.longest_path(&order);
        Ok(net)
    }

    /// Re-checks every structural invariant, including the cached depth.
    pub fn validate(&self) -> Result<(), NetworkError> {
        let rebuilt = Network::new(self.vertex_count, self.edges.clone(), self.inputs.clone(), self.outputs.clone())?;
        if rebuilt.depth != self.depth || rebuilt.edges != self.edges {
            return Err(NetworkError::Format("cached depth or edge order is stale".into()));
        }
        Ok(())
    }

    fn check_terminals(&self) -> Result<(), NetworkError> {
        let v = self.vertex_count;
        for &(a, b) in &self.edges {
            if a >= v || b >= v {
                return Err(NetworkError::VertexOutOfRange(a, b, v));
            }
        }
        let mut role = vec![0u8; v];
        for (&t, mark) in self.inputs.iter().map(|t| (t, 1u8)).chain(self.outputs.iter().map(|t| (t, 2u8))) {
            if t >= v {
                return Err(NetworkError::DanglingInputOutput(format!("terminal {t} is not a vertex")));
            }
            if role[t] != 0 {
                return Err(NetworkError::DuplicateTerminal(t));
            }
            role[t] = mark;
        }
        for &(a, b) in &self.edges {
            if role[b] == 1 {
                return Err(NetworkError::DanglingInputOutput(format!("input {b} has an incoming edge from {a}")));
            }
            if role[a] == 2 {
                return Err(NetworkError::DanglingInputOutput(format!("output {a} has an outgoing edge to {b}")));
            }
        }
        Ok(())
    }

    /// Kahn's algorithm; smallest ready vertex first.
    pub fn topo_order(&self) -> Result<Vec<VertexId>, NetworkError> {
        let mut indeg = vec![0usize; self.vertex_count];
        let adj = self.out_adjacency();
        for &(_, b) in &self.edges {
            indeg[b] += 1;
        }
        let mut queue: VecDeque<VertexId> = (0..self.vertex_count).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.vertex_count);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if order.len() != self.vertex_count {
            return Err(NetworkError::CyclicGraph);
        }
        Ok(order)
    }

    fn longest_path(&self, order: &[VertexId]) -> usize {
        let adj = self.out_adjacency();
        let mut dist: Vec<Option<usize>> = vec![None; self.vertex_count];
        for &i in &self.inputs {
            dist[i] = Some(0);
        }
        for &v in order {
            if let Some(d) = dist[v] {
                for &w in &adj[v] {
                    dist[w] = Some(dist[w].map_or(d + 1, |x| x.max(d + 1)));
                }
            }
        }
        self.outputs.iter().filter_map(|&o| dist[o]).max().unwrap_or(0)
    }

    pub fn out_adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
        }
        adj
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn inputs(&self) -> &[VertexId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[VertexId] {
        &self.outputs
    }

    /// Longest input-to-output path, in edges.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Vertices that lie on no input-to-output path.
    pub fn prunable_vertices(&self) -> Vec<VertexId> {
        let fwd = reach(&self.out_adjacency(), &self.inputs);
        let rev = reach(&self.reverse().out_adjacency(), &self.outputs);
        (0..self.vertex_count).filter(|&v| !(fwd[v] && rev[v])).collect()
    }

    /// Complete bipartite `K_{a,b}`: inputs `0..a`, outputs `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Network {
        let edges = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
        Network::new(a + b, edges, (0..a).collect(), (a..a + b).collect()).expect("complete bipartite is valid")
    }

    /// `k` disjoint edges `inputs[i] -> outputs[i]`.
    pub fn matching(k: usize) -> Network {
        Network::new(2 * k, (0..k).map(|i| (i, k + i)).collect(), (0..k).collect(), (k..2 * k).collect())
            .expect("matching is valid")
    }

    /// Flips every edge and swaps the roles of inputs and outputs.
    pub fn reverse(&self) -> Network {
        let mut edges: Vec<_> = self.edges.iter().map(|&(a, b)| (b, a)).collect();
        edges.sort_unstable();
        Network {
            vertex_count: self.vertex_count,
            edges,
            inputs: self.outputs.clone(),
            outputs: self.inputs.clone(),
            depth: self.depth,
        }
    }

    /// Identifies `top.outputs[i]` with `bottom.inputs[i]`.
    pub fn serial_compose(top: &Network, bottom: &Network) -> Result<Network, NetworkError> {
        if top.outputs.len() != bottom.inputs.len() {
            return Err(NetworkError::ArityMismatch(format!(
                "top has {} outputs, bottom has {} inputs",
                top.outputs.len(),
                bottom.inputs.len()
            )));
        }
        let mut map = vec![usize::MAX; bottom.vertex_count];
        for (i, &b) in bottom.inputs.iter().enumerate() {
            map[b] = top.outputs[i];
        }
        let mut next = top.vertex_count;
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        let mut edges = top.edges.clone();
        edges.extend(bottom.edges.iter().map(|&(a, b)| (map[a], map[b])));
        let outputs = bottom.outputs.iter().map(|&o| map[o]).collect();
        Network::new(next, edges, top.inputs.clone(), outputs)
    }

    /// Merges the terminals of several networks: member input `j` becomes
    /// shared input `j` (likewise outputs); internal vertices stay disjoint.
    pub fn parallel_union(nets: &[Network], shared_inputs: usize, shared_outputs: usize) -> Result<Network, NetworkError> {
        let mut edges = Vec::new();
        let mut next = shared_inputs + shared_outputs;
        for (k, net) in nets.iter().enumerate() {
            if net.inputs.len() > shared_inputs || net.outputs.len() > shared_outputs {
                return Err(NetworkError::ArityMismatch(format!(
                    "member {k} has {} inputs and {} outputs; shared terminals are {shared_inputs} and {shared_outputs}",
                    net.inputs.len(),
                    net.outputs.len()
                )));
            }
            let mut map = vec![usize::MAX; net.vertex_count];
            for (j, &v) in net.inputs.iter().enumerate() {
                map[v] = j;
            }
            for (j, &v) in net.outputs.iter().enumerate() {
                map[v] = shared_inputs + j;
            }
            for slot in map.iter_mut() {
                if *slot == usize::MAX {
                    *slot = next;
                    next += 1;
                }
            }
            edges.extend(net.edges.iter().map(|&(a, b)| (map[a], map[b])));
        }
        Network::new(
            next,
            edges,
            (0..shared_inputs).collect(),
            (shared_inputs..shared_inputs + shared_outputs).collect(),
        )
    }

    /// Maximum number of vertex-disjoint paths from the inputs at positions
    /// `sources` to the outputs at positions `sinks`.
    pub fn max_vertex_disjoint_paths(&self, sources: &[usize], sinks: &[usize]) -> Result<usize, NetworkError> {
        for (&i, len) in sources.iter().map(|i| (i, self.inputs.len())).chain(sinks.iter().map(|o| (o, self.outputs.len()))) {
            if i >= len {
                return Err(NetworkError::TerminalNotInNetwork { index: i, len });
            }
        }
        let mut flow = SplitFlow::new(self);
        for &s in sources {
            flow.enable_source(s);
        }
        for &t in sinks {
            flow.enable_sink(t);
        }
        Ok(flow.augment_to(usize::MAX))
    }
}

fn reach(adj: &[Vec<VertexId>], start: &[VertexId]) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<VertexId> = start.to_vec();
    for &s in start {
        seen[s] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}
