//! The ASM graph `(A_n, →)` and its Graphviz export.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write;

use rayon::prelude::*;

use crate::asm::Asm;
use crate::enumerate::enumerate_asms_with;
use crate::error::{Limit, Result};

use super::edge::edges_from;
use super::order::beta;
use super::Rect;

/// An edge stored by canonical node indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphEdge {
    pub source: usize,
    pub target: usize,
    pub rect: Rect,
    pub edge_type: u8,
}

/// The ASM graph on `A_n`; nodes are in canonical enumeration order.
#[derive(Clone, Debug)]
pub struct AsmGraph {
    n: usize,
    nodes: Vec<Asm>,
    betas: Vec<u32>,
    adjacency: Vec<Vec<GraphEdge>>,
}

pub fn build_graph(n: usize) -> Result<AsmGraph> {
    build_graph_with(n, Limit::Default)
}

pub fn build_graph_with(n: usize, limit: Limit) -> Result<AsmGraph> {
    let nodes = enumerate_asms_with(n, limit)?;
    let betas = nodes.par_iter().map(beta).collect();
    let adjacency = nodes
        .par_iter()
        .enumerate()
        .map(|(s, a)| {
            edges_from(a)
                .into_iter()
                .map(|e| GraphEdge {
                    source: s,
                    target: nodes.binary_search(&e.target).expect("targets are ASMs"),
                    rect: e.rect,
                    edge_type: e.edge_type,
                })
                .collect()
        })
        .collect();
    Ok(AsmGraph { n, nodes, betas, adjacency })
}

impl AsmGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[Asm] {
        &self.nodes
    }

    pub fn beta(&self, idx: usize) -> u32 {
        self.betas[idx]
    }

    pub fn index_of(&self, a: &Asm) -> Option<usize> {
        self.nodes.binary_search(a).ok()
    }

    pub fn out_edges(&self, idx: usize) -> &[GraphEdge] {
        &self.adjacency[idx]
    }

    pub fn edges(&self) -> impl Iterator<Item = &GraphEdge> {
        self.adjacency.iter().flatten()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// Nodes reachable from `start` along directed edges (including `start`).
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for e in &self.adjacency[v] {
                if !seen[e.target] {
                    seen[e.target] = true;
                    queue.push_back(e.target);
                }
            }
        }
        seen
    }

    /// Kahn's algorithm; true iff there is no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let mut indegree = vec![0usize; self.nodes.len()];
        for e in self.edges() {
            indegree[e.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.nodes.len()).filter(|&v| indegree[v] == 0).collect();
        let mut visited = 0;
        while let Some(v) = queue.pop_front() {
            visited += 1;
            for e in &self.adjacency[v] {
                indegree[e.target] -= 1;
                if indegree[e.target] == 0 {
                    queue.push_back(e.target);
                }
            }
        }
        visited == self.nodes.len()
    }

    /// Nodes with no incoming edge.
    pub fn sources(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.nodes.len()];
        for e in self.edges() {
            has_in[e.target] = true;
        }
        (0..self.nodes.len()).filter(|&v| !has_in[v]).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct DotOptions {
    /// Render each node's matrix rows in its label.
    pub show_matrices: bool,
}

const EDGE_COLORS: [&str; 16] = [
    "black", "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4", "gold3", "navy",
    "firebrick", "olivedrab", "deeppink", "slateblue", "gray40",
];

/// Graphviz `digraph` with nodes labelled `idx:β`, edges labelled and
/// colored by type, and nodes of equal β grouped with `rank=same`.
pub fn export_dot(g: &AsmGraph, options: &DotOptions) -> String {
    let mut out = String::new();
    writeln!(out, "digraph asm_graph_{} {{", g.n).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    let mut ranks: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (idx, a) in g.nodes.iter().enumerate() {
        ranks.entry(g.betas[idx]).or_default().push(idx);
        let mut label = format!("{}:{}", idx, g.betas[idx]);
        if options.show_matrices {
            for row in a.rows() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                write!(label, "\\n{}", cells.join(" ")).unwrap();
            }
        }
        writeln!(out, "  n{idx} [label=\"{label}\"];").unwrap();
    }
    for (b, members) in &ranks {
        let names: Vec<String> = members.iter().map(|v| format!("n{v}")).collect();
        writeln!(out, "  {{ rank=same; /* beta={b} */ {}; }}", names.join("; ")).unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "  n{} -> n{} [label={}, color={}];",
            e.source,
            e.target,
            e.edge_type,
            EDGE_COLORS[usize::from(e.edge_type - 1)]
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
