//! Unit-capacity max-flow on the vertex-split graph of a [`Network`].
//!
//! Every vertex `v` becomes `in(v) -> out(v)` with capacity 1; each edge
//! `(u, v)` becomes `out(u) -> in(v)` with capacity 1. The source feeds
//! `in(x)` for every *enabled* input and `out(y)` feeds the sink for every
//! enabled output. Terminals can be toggled while a flow is held, which lets
//! the sweeps walk a revolving-door sequence of subsets with one
//! augmentation per step instead of a fresh max-flow.

use super::Network;

/// Residual graph plus the current flow. Arcs come in pairs `(a, a ^ 1)`;
/// even arcs are forward, odd arcs are their residual twins.
#[derive(Debug, Clone)]
pub struct SplitFlow {
    head: Vec<u32>,
    res: Vec<u8>,
    adj_start: Vec<u32>,
    adj: Vec<u32>,
    source: u32,
    sink: u32,
    source_arc: Vec<u32>,
    sink_arc: Vec<u32>,
    value: usize,
    // BFS scratch
    parent: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl SplitFlow {
    /// All terminals start disabled and the flow is zero.
    pub fn new(net: &Network) -> Self {
        let v = net.vertex_count();
        let nodes = 2 * v + 2;
        let source = (2 * v) as u32;
        let sink = source + 1;
        let mut tail: Vec<u32> = Vec::new();
        let mut head: Vec<u32> = Vec::new();
        let mut res: Vec<u8> = Vec::new();
        let mut add = |a: u32, b: u32, cap: u8| -> u32 {
            let id = head.len() as u32;
            tail.push(a);
            head.push(b);
            res.push(cap);
            tail.push(b);
            head.push(a);
            res.push(0);
            id
        };
        for x in 0..v as u32 {
            add(2 * x, 2 * x + 1, 1);
        }
        for &(a, b) in net.edges() {
            add(2 * a as u32 + 1, 2 * b as u32, 1);
        }
        let source_arc: Vec<u32> = net.inputs().iter().map(|&i| add(source, 2 * i as u32, 0)).collect();
        let sink_arc: Vec<u32> = net.outputs().iter().map(|&o| add(2 * o as u32 + 1, sink, 0)).collect();

        let mut degree = vec![0u32; nodes + 1];
        for &t in &tail {
            degree[t as usize + 1] += 1;
        }
        for i in 0..nodes {
            degree[i + 1] += degree[i];
        }
        let adj_start = degree.clone();
        let mut fill = degree;
        let mut adj = vec![0u32; tail.len()];
        for (a, &t) in tail.iter().enumerate() {
            adj[fill[t as usize] as usize] = a as u32;
            fill[t as usize] += 1;
        }
        SplitFlow {
            head,
            res,
            adj_start,
            adj,
            source,
            sink,
            source_arc,
            sink_arc,
            value: 0,
            parent: vec![NONE; nodes],
            stamp: vec![0; nodes],
            epoch: 0,
            queue: Vec::with_capacity(nodes),
        }
    }

    pub fn value(&self) -> usize {
        self.value
    }

    fn carries(&self, arc: u32) -> bool {
        self.res[(arc ^ 1) as usize] > 0
    }

    fn enabled(&self, arc: u32) -> bool {
        self.res[arc as usize] > 0 || self.carries(arc)
    }

    pub fn enable_source(&mut self, pos: usize) {
        let a = self.source_arc[pos];
        if !self.enabled(a) {
            self.res[a as usize] = 1;
        }
    }

    pub fn enable_sink(&mut self, pos: usize) {
        let a = self.sink_arc[pos];
        if !self.enabled(a) {
            self.res[a as usize] = 1;
        }
    }

    /// Disables input `pos`, first cancelling the unit of flow it carries.
    pub fn disable_source(&mut self, pos: usize) {
        let a = self.source_arc[pos];
        if self.carries(a) {
            self.undo(a);
            let mut x = self.head[a as usize];
            while x != self.sink {
                let b = self
                    .out_arcs(x)
                    .find(|&b| b % 2 == 0 && self.carries(b))
                    .expect("flow conservation");
                self.undo(b);
                x = self.head[b as usize];
            }
            self.value -= 1;
        }
        self.res[a as usize] = 0;
        self.res[(a ^ 1) as usize] = 0;
    }

    /// Disables output `pos`, first cancelling the unit of flow it carries.
    pub fn disable_sink(&mut self, pos: usize) {
        let a = self.sink_arc[pos];
        if self.carries(a) {
            self.undo(a);
            // tail of the sink arc
            let mut x = self.head[(a ^ 1) as usize];
            while x != self.source {
                // an odd arc leaving x with residual is the twin of a
                // forward arc entering x that carries flow
                let r = self
                    .out_arcs(x)
                    .find(|&r| r % 2 == 1 && self.res[r as usize] > 0)
                    .expect("flow conservation");
                self.undo(r ^ 1);
                x = self.head[r as usize];
            }
            self.value -= 1;
        }
        self.res[a as usize] = 0;
        self.res[(a ^ 1) as usize] = 0;
    }

    fn undo(&mut self, forward: u32) {
        self.res[forward as usize] += 1;
        self.res[(forward ^ 1) as usize] -= 1;
    }

    fn out_arcs(&self, x: u32) -> impl Iterator<Item = u32> + '_ {
        let s = self.adj_start[x as usize] as usize;
        let e = self.adj_start[x as usize + 1] as usize;
        self.adj[s..e].iter().copied()
    }

    /// One shortest augmenting path (BFS); returns whether one was found.
    pub fn augment(&mut self) -> bool {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        self.queue.clear();
        self.queue.push(self.source);
        self.stamp[self.source as usize] = epoch;
        let mut qi = 0;
        let mut found = false;
        'bfs: while qi < self.queue.len() {
            let x = self.queue[qi];
            qi += 1;
            let s = self.adj_start[x as usize] as usize;
            let e = self.adj_start[x as usize + 1] as usize;
            for &a in &self.adj[s..e] {
                if self.res[a as usize] == 0 {
                    continue;
                }
                let y = self.head[a as usize];
                if self.stamp[y as usize] == epoch {
                    continue;
                }
                self.stamp[y as usize] = epoch;
                self.parent[y as usize] = a;
                if y == self.sink {
                    found = true;
                    break 'bfs;
                }
                self.queue.push(y);
            }
        }
        if !found {
            return false;
        }
        let mut y = self.sink;
        while y != self.source {
            let a = self.parent[y as usize];
            self.res[a as usize] -= 1;
            self.res[(a ^ 1) as usize] += 1;
            y = self.head[(a ^ 1) as usize];
        }
        self.value += 1;
        true
    }

    /// Augments until the flow reaches `limit` or no path remains.
    pub fn augment_to(&mut self, limit: usize) -> usize {
        while self.value < limit && self.augment() {}
        self.value
    }

    /// Disables every terminal and clears the flow.
    pub fn clear(&mut self) {
        for a in (0..self.res.len()).step_by(2) {
            let total = self.res[a] + self.res[a + 1];
            self.res[a] = total;
            self.res[a + 1] = 0;
        }
        for i in 0..self.source_arc.len() {
            self.res[self.source_arc[i] as usize] = 0;
        }
        for i in 0..self.sink_arc.len() {
            self.res[self.sink_arc[i] as usize] = 0;
        }
        self.value = 0;
    }
}
