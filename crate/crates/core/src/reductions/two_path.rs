//! Graphs whose edges split into two parts of single edges and two-edge
//! paths, and the construction producing them from cubic graphs.

use super::graph::{four_edge_color, EdgeColor, UndirectedGraph};
use crate::error::{Error, Result};

/// Graph with every edge labelled part 1 or part 2 such that each part is
/// a disjoint union of edges and two-edge paths, every vertex meets both
/// parts and has degree at most 3, and the parts have equal size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPathColoredGraph {
    graph: UndirectedGraph,
    parts: Vec<u8>,
}

impl TwoPathColoredGraph {
    pub fn new(graph: UndirectedGraph, parts: Vec<u8>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidTwoPathColoring(msg));
        if parts.len() != graph.edges().len() {
            return bad(format!("{} part labels for {} edges", parts.len(), graph.edges().len()));
        }
        if let Some(p) = parts.iter().find(|&&p| p != 1 && p != 2) {
            return bad(format!("part label {p} is neither 1 nor 2"));
        }
        let size = |h: u8| parts.iter().filter(|&&p| p == h).count();
        if size(1) != size(2) {
            return bad(format!("parts have {} and {} edges", size(1), size(2)));
        }
        for v in 0..graph.vertex_count() {
            let incident = graph.incident(v);
            if incident.len() > 3 {
                return bad(format!("vertex {v} has degree {}", incident.len()));
            }
            for h in [1, 2] {
                if !incident.iter().any(|&e| parts[e] == h) {
                    return bad(format!("vertex {v} meets no edge of part {h}"));
                }
            }
        }
        let colored = Self { graph, parts };
        for h in [1, 2] {
            for component in colored.components(h) {
                if component.len() > 2 {
                    return bad(format!("part {h} has a component with {} edges", component.len()));
                }
            }
        }
        Ok(colored)
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    pub fn part_edges(&self, h: u8) -> Vec<usize> {
        (0..self.parts.len()).filter(|&e| self.parts[e] == h).collect()
    }

    /// Connected components of part `h`, as edge index lists, ordered by
    /// their smallest vertex.
    fn components(&self, h: u8) -> Vec<Vec<usize>> {
        let edges = self.graph.edges();
        let mut label: Vec<Option<usize>> = vec![None; self.graph.vertex_count()];
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for v in 0..self.graph.vertex_count() {
            if label[v].is_some() {
                continue;
            }
            let mut stack = vec![v];
            let mut members = Vec::new();
            label[v] = Some(groups.len());
            while let Some(x) = stack.pop() {
                for e in self.part_edges(h) {
                    let (a, b) = edges[e];
                    if a != x && b != x {
                        continue;
                    }
                    if !members.contains(&e) {
                        members.push(e);
                    }
                    let y = if a == x { b } else { a };
                    if label[y].is_none() {
                        label[y] = Some(groups.len());
                        stack.push(y);
                    }
                }
            }
            if !members.is_empty() {
                groups.push((v, members));
            }
        }
        groups.sort_by_key(|g| g.0);
        groups.into_iter().map(|g| g.1).collect()
    }

    /// Edges of part `h` numbered so that edges sharing a vertex get
    /// consecutive positions: components by smallest vertex, and a path
    /// `a - c - b` with `a < b` lists `a - c` before `c - b`.
    pub fn numbered(&self, h: u8) -> Vec<usize> {
        let edges = self.graph.edges();
        let mut order = Vec::new();
        for component in self.components(h) {
            match component.as_slice() {
                [e] => order.push(*e),
                [e, f] => {
                    let (x, y) = (edges[*e], edges[*f]);
                    let center = if x.0 == y.0 || x.0 == y.1 { x.0 } else { x.1 };
                    let far = |(a, b): (usize, usize)| if a == center { b } else { a };
                    if far(x) < far(y) {
                        order.extend([*e, *f]);
                    } else {
                        order.extend([*f, *e]);
                    }
                }
                _ => unreachable!("validated at construction"),
            }
        }
        order
    }
}

/// Two copies of a cubic graph with every edge subdivided twice; the
/// colors of a proper four-edge-coloring decide which part (red = 1,
/// blue = 2) each of the three new edges joins. Returns the graph and the
/// vertex-cover budget `2 (budget + |E|)` that matches `budget` on the
/// original graph.
pub fn to_2path_colored(graph: &UndirectedGraph, budget: usize) -> Result<(TwoPathColoredGraph, usize)> {
    let colors = four_edge_color(graph)?;
    let v = graph.vertex_count();
    let e = graph.edges().len();
    let mut edges = Vec::with_capacity(6 * e);
    let mut parts = Vec::with_capacity(6 * e);
    for copy in 0..2 {
        for (k, &(a, b)) in graph.edges().iter().enumerate() {
            let offset = copy * v;
            let x = 2 * v + copy * 2 * e + 2 * k;
            let red_outside = matches!(colors[k], EdgeColor::A | EdgeColor::B) == (copy == 0);
            let (outer, inner) = if red_outside { (1, 2) } else { (2, 1) };
            edges.extend([(a + offset, x), (x, x + 1), (x + 1, b + offset)]);
            parts.extend([outer, inner, outer]);
        }
    }
    let g2 = UndirectedGraph::new(2 * v + 4 * e, &edges)?;
    Ok((TwoPathColoredGraph::new(g2, parts)?, 2 * (budget + e)))
}

#[cfg(test)]
pub(crate) mod samples {
    use super::super::graph::samples::c4;
    use super::TwoPathColoredGraph;

    /// The 4-cycle with opposite edges in the same part.
    pub fn alternating_c4() -> TwoPathColoredGraph {
        TwoPathColoredGraph::new(c4(), vec![1, 2, 1, 2]).unwrap()
    }
}
