//! Essential rectangles, the ASM graph, ASM order, and the bigrassmannian
//! statistic.

mod edge;
mod essential;
mod graph;
mod order;
mod rect;

pub use edge::{classify_edge, edge_between, edges_from, verify_edge_table, Edge, CORNER_DIFFERENCE, EDGE_TYPES};
pub use essential::{
    apply_rect, dual_essential_rects, essential_points, essential_rects, is_dual_essential, is_essential,
};
pub use graph::{build_graph, build_graph_with, export_dot, AsmGraph, DotOptions, GraphEdge};
pub use order::{
    asm_leq, beta, beta_bigrassmannian_count, beta_corner_sum, beta_entry_formula, beta_twice_entry_formula,
    bigrassmannians, covered_by, covering_chain, fulton_essential_set, is_bigrassmannian,
};
pub use rect::Rect;
