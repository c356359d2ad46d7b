//! Dinic's maximum flow with integer capacities.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Arc {
    to: usize,
    rev: usize,
    cap: i64,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
    arcs: Vec<(usize, usize)>,
    original: Vec<i64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

/// Capacity large enough to never be the bottleneck in this crate's networks.
pub const INF: i64 = i64::MAX / 4;

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); n],
            arcs: Vec::new(),
            original: Vec::new(),
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    /// Adds an arc and returns its handle for [`FlowNetwork::flow_on`].
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        debug_assert!(cap >= 0);
        let rf = self.adj[to].len() + usize::from(from == to);
        let rt = self.adj[from].len();
        self.adj[from].push(Arc { to, rev: rf, cap });
        self.adj[to].push(Arc {
            to: from,
            rev: rt,
            cap: 0,
        });
        self.arcs.push((from, rt));
        self.original.push(cap);
        self.arcs.len() - 1
    }

    pub fn flow_on(&self, handle: usize) -> i64 {
        let (u, i) = self.arcs[handle];
        self.original[handle] - self.adj[u][i].cap
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for a in &self.adj[u] {
                if a.cap > 0 && self.level[a.to] < 0 {
                    self.level[a.to] = self.level[u] + 1;
                    q.push_back(a.to);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i64) -> i64 {
        if u == t {
            return pushed;
        }
        while self.iter[u] < self.adj[u].len() {
            let i = self.iter[u];
            let Arc { to, rev, cap } = self.adj[u][i];
            if cap > 0 && self.level[u] < self.level[to] {
                let d = self.dfs(to, t, pushed.min(cap));
                if d > 0 {
                    self.adj[u][i].cap -= d;
                    self.adj[to][rev].cap += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return total;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, INF);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network (the source side of
    /// a minimum cut once `max_flow` has run).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for a in &self.adj[u] {
                if a.cap > 0 && !seen[a.to] {
                    seen[a.to] = true;
                    q.push_back(a.to);
                }
            }
        }
        seen
    }
}
