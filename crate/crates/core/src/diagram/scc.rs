//! Strongly connected components, their periods and the component DAG.

use num_integer::Integer;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SccInfo {
    /// Component id per vertex; ids are in topological order (sources first).
    pub component: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    /// gcd of cycle lengths; 0 for a single vertex without a loop.
    pub periods: Vec<usize>,
    /// Arrows between distinct components.
    pub dag: Vec<Vec<usize>>,
}

impl SccInfo {
    pub fn is_trivial(&self, c: usize) -> bool {
        self.periods[c] == 0
    }

    /// Non-trivial components.
    pub fn recurrent(&self) -> Vec<usize> {
        (0..self.periods.len()).filter(|&c| self.periods[c] > 0).collect()
    }
}

pub fn scc(arrows: &[Vec<usize>]) -> SccInfo {
    let n = arrows.len();
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for (u, ts) in arrows.iter().enumerate() {
        for &v in ts {
            g.add_edge(nodes[u], nodes[v], ());
        }
    }
    // Tarjan yields components in reverse topological order.
    let mut comps: Vec<Vec<usize>> =
        tarjan_scc(&g).into_iter().map(|c| c.into_iter().map(|x| x.index()).collect()).collect();
    comps.reverse();
    let mut component = vec![0; n];
    for (c, members) in comps.iter_mut().enumerate() {
        members.sort_unstable();
        for &v in members.iter() {
            component[v] = c;
        }
    }
    let mut periods = Vec::with_capacity(comps.len());
    let mut level = vec![usize::MAX; n];
    for (c, members) in comps.iter().enumerate() {
        let root = members[0];
        level[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut g_per = 0usize;
        while let Some(u) = queue.pop_front() {
            for &v in &arrows[u] {
                if component[v] != c {
                    continue;
                }
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                } else {
                    g_per = g_per.gcd(&(level[u] + 1).abs_diff(level[v]));
                }
            }
        }
        periods.push(g_per);
    }
    let mut dag = vec![Vec::new(); comps.len()];
    for (u, ts) in arrows.iter().enumerate() {
        for &v in ts {
            let (a, b) = (component[u], component[v]);
            if a != b && !dag[a].contains(&b) {
                dag[a].push(b);
            }
        }
    }
    SccInfo { component, members: comps, periods, dag }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periods() {
        assert_eq!(scc(&[vec![0, 1], vec![0, 1]]).periods, vec![1]);
        assert_eq!(scc(&[vec![1], vec![2], vec![0]]).periods, vec![3]);
        assert_eq!(scc(&[vec![0, 1], vec![0]]).periods, vec![1]);
    }

    #[test]
    fn dag_order() {
        // 0 -> {1,2} cycle, 2 -> 3 (trivial).
        let info = scc(&[vec![1], vec![2], vec![1, 3], vec![]]);
        assert_eq!(info.periods.len(), 3);
        assert!(info.component[0] < info.component[1]);
        assert!(info.component[1] < info.component[3]);
        assert_eq!(info.periods[info.component[1]], 2);
        assert!(info.is_trivial(info.component[3]));
    }
}
