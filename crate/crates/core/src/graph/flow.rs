//! Maximum-weight closure via Dinic's max-flow.
//!
//! Used to decide "is there a nonempty vertex set whose weighted edge count
//! beats a linear vertex penalty" on graphs too large for subset enumeration.

use std::collections::VecDeque;

const INF: i64 = i64::MAX / 4;

struct Arc {
    to: usize,
    cap: i64,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            next: vec![0; nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: i64) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &id in &self.out[v] {
                let arc = &self.arcs[id];
                if arc.cap > 0 && self.level[arc.to] < 0 {
                    self.level[arc.to] = self.level[v] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: i64) -> i64 {
        if v == t {
            return pushed;
        }
        while self.next[v] < self.out[v].len() {
            let id = self.out[v][self.next[v]];
            let (to, cap) = (self.arcs[id].to, self.arcs[id].cap);
            if cap > 0 && self.level[to] == self.level[v] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.arcs[id].cap -= got;
                    self.arcs[id ^ 1].cap += got;
                    return got;
                }
            }
            self.next[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|n| *n = 0);
            loop {
                let f = self.dfs(s, t, INF);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }
}

/// Maximum over vertex sets `S` (containing every `forced` vertex, avoiding
/// every `excluded` one) of `sum_{v in S} weight[v] + sum of pair weights with
/// both ends in S`. Pair weights must be nonnegative. The empty set is allowed
/// when nothing is forced.
pub(crate) fn max_closure(weights: &[i64], pairs: &[(usize, usize, i64)], forced: &[usize], excluded: &[usize]) -> i64 {
    let n = weights.len();
    let mut banned = vec![false; n];
    for &x in excluded {
        banned[x] = true;
    }
    let big: i64 = weights.iter().map(|w| w.abs()).sum::<i64>() + pairs.iter().map(|p| p.2).sum::<i64>() + 1;
    let mut w: Vec<i64> = weights.to_vec();
    for &f in forced {
        if banned[f] {
            return i64::MIN;
        }
        w[f] += big;
    }
    let live_pairs: Vec<_> = pairs
        .iter()
        .filter(|&&(a, b, c)| c > 0 && !banned[a] && !banned[b])
        .collect();
    let source = n + live_pairs.len();
    let sink = source + 1;
    let mut net = Network::new(sink + 1);
    let mut positive = 0;
    for v in (0..n).filter(|&v| !banned[v]) {
        if w[v] > 0 {
            positive += w[v];
            net.add(source, v, w[v]);
        } else if w[v] < 0 {
            net.add(v, sink, -w[v]);
        }
    }
    for (i, &&(a, b, c)) in live_pairs.iter().enumerate() {
        let node = n + i;
        positive += c;
        net.add(source, node, c);
        net.add(node, a, INF);
        net.add(node, b, INF);
    }
    positive - net.max_flow(source, sink) - big * forced.len() as i64
}

/// Whether some nonempty `S` avoiding `excluded` has
/// `constant + sum weights + sum pair weights >= 0`.
pub(crate) fn exists_nonnegative_set(
    weights: &[i64],
    pairs: &[(usize, usize, i64)],
    constant: i64,
    excluded: &[usize],
) -> bool {
    let n = weights.len() as i64;
    if constant <= 0 {
        // Scale by n+1 and reward each chosen vertex by 1: the optimum then
        // clears `(n+1)*deficit` exactly when a nonempty set reaches zero slack.
        let deficit = -constant;
        let scaled: Vec<i64> = weights.iter().map(|w| w * (n + 1) + 1).collect();
        let scaled_pairs: Vec<_> = pairs.iter().map(|&(a, b, c)| (a, b, c * (n + 1))).collect();
        max_closure(&scaled, &scaled_pairs, &[], excluded) > (n + 1) * deficit
    } else {
        (0..weights.len())
            .filter(|v| !excluded.contains(v))
            .any(|v| constant + max_closure(weights, pairs, &[v], excluded) >= 0)
    }
}
