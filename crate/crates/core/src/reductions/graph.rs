//! Simple undirected graphs, vertex cover and proper edge colorings.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Undirected graph without loops or parallel edges. Edges are stored as
/// `(min, max)` pairs in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} leaves the {vertices} vertices")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("repeated edge {}-{}", e.0, e.1)));
            }
            normalized.push(e);
        }
        Ok(Self { vertices, edges: normalized })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Indices of the edges touching `v`, in edge order.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].0 == v || self.edges[e].1 == v).collect()
    }

    pub fn is_cubic(&self) -> bool {
        self.check_cubic().is_ok()
    }

    pub fn check_cubic(&self) -> Result<()> {
        let mut degree = vec![0usize; self.vertices];
        for &(u, v) in &self.edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        match degree.iter().position(|&d| d != 3) {
            Some(vertex) => Err(Error::NotCubic { vertex, degree: degree[vertex] }),
            None => Ok(()),
        }
    }
}

/// Reads an edge list: one `u v` pair per line, 0-based, with an optional
/// third column `1` or `2` naming the part of a two-path coloring. Blank
/// lines and `#` comments are ignored. The vertex count is one more than
/// the largest index mentioned.
pub fn parse_edge_list(text: &str) -> Result<(UndirectedGraph, Option<Vec<u8>>)> {
    let mut edges = Vec::new();
    let mut parts = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::InvalidGraph(format!("line {}: expected `u v` or `u v part`, found {raw:?}", k + 1));
        let index = |s: &str| s.parse::<usize>().map_err(|_| bad());
        match fields.as_slice() {
            [u, v] => edges.push((index(u)?, index(v)?)),
            [u, v, part @ ("1" | "2")] => {
                edges.push((index(u)?, index(v)?));
                parts.push((edges.len() - 1, part.parse::<u8>().expect("matched digit")));
            }
            _ => return Err(bad()),
        }
    }
    let vertices = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let graph = UndirectedGraph::new(vertices, &edges)?;
    let parts = match parts.len() {
        0 => None,
        n if n == edges.len() => Some(parts.into_iter().map(|(_, p)| p).collect()),
        _ => return Err(Error::InvalidGraph("either every edge or no edge names a part".into())),
    };
    Ok((graph, parts))
}

pub fn write_edge_list(graph: &UndirectedGraph, parts: Option<&[u8]>) -> String {
    graph
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| match parts {
            Some(parts) => format!("{u} {v} {}\n", parts[e]),
            None => format!("{u} {v}\n"),
        })
        .collect()
}

/// Whether some set of at most `budget` vertices touches every edge.
pub fn vc_exact(graph: &UndirectedGraph, budget: usize) -> bool {
    fn cover(edges: &[(usize, usize)], chosen: &mut [bool], budget: usize) -> bool {
        let Some(&(u, v)) = edges.iter().find(|&&(u, v)| !chosen[u] && !chosen[v]) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for w in [u, v] {
            chosen[w] = true;
            let found = cover(edges, chosen, budget - 1);
            chosen[w] = false;
            if found {
                return true;
            }
        }
        false
    }
    cover(graph.edges(), &mut vec![false; graph.vertex_count()], budget)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeColor {
    A,
    B,
    C,
    D,
}

const COLORS: [EdgeColor; 4] = [EdgeColor::A, EdgeColor::B, EdgeColor::C, EdgeColor::D];

/// Proper coloring with `colors` colors by backtracking, always extending
/// the uncolored edge with the fewest colors left.
pub fn edge_color_with(graph: &UndirectedGraph, colors: usize) -> Option<Vec<EdgeColor>> {
    let edges = graph.edges();
    let touching: Vec<Vec<usize>> = edges
        .iter()
        .map(|&(u, v)| {
            (0..edges.len())
                .filter(|&f| {
                    let (a, b) = edges[f];
                    (a, b) != (u, v) && (a == u || a == v || b == u || b == v)
                })
                .collect()
        })
        .collect();

    fn extend(touching: &[Vec<usize>], assigned: &mut [Option<EdgeColor>], colors: usize) -> bool {
        let free = |e: usize, assigned: &[Option<EdgeColor>]| -> Vec<EdgeColor> {
            COLORS[..colors].iter().copied().filter(|c| touching[e].iter().all(|&f| assigned[f] != Some(*c))).collect()
        };
        let next = (0..assigned.len()).filter(|&e| assigned[e].is_none()).min_by_key(|&e| {
            (free(e, assigned).len(), std::cmp::Reverse(touching[e].iter().filter(|&&f| assigned[f].is_some()).count()))
        });
        let Some(e) = next else {
            return true;
        };
        for c in free(e, assigned) {
            assigned[e] = Some(c);
            if extend(touching, assigned, colors) {
                return true;
            }
        }
        assigned[e] = None;
        false
    }

    let mut assigned = vec![None; edges.len()];
    extend(&touching, &mut assigned, colors).then(|| assigned.into_iter().map(|c| c.expect("colored")).collect())
}

pub fn is_proper_coloring(graph: &UndirectedGraph, coloring: &[EdgeColor]) -> bool {
    let edges = graph.edges();
    coloring.len() == edges.len()
        && (0..edges.len()).all(|e| {
            (e + 1..edges.len()).all(|f| {
                let share = edges[e].0 == edges[f].0
                    || edges[e].0 == edges[f].1
                    || edges[e].1 == edges[f].0
                    || edges[e].1 == edges[f].1;
                !share || coloring[e] != coloring[f]
            })
        })
}

/// Proper edge coloring of a cubic graph with at most four colors; three
/// are used whenever three suffice.
pub fn four_edge_color(graph: &UndirectedGraph) -> Result<Vec<EdgeColor>> {
    graph.check_cubic()?;
    let coloring = edge_color_with(graph, 3)
        .or_else(|| edge_color_with(graph, 4))
        .expect("every cubic graph has a proper four-edge-coloring");
    debug_assert!(is_proper_coloring(graph, &coloring));
    Ok(coloring)
}

#[cfg(test)]
pub(crate) mod samples {
    use super::UndirectedGraph;

    pub fn k4() -> UndirectedGraph {
        UndirectedGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    pub fn petersen() -> UndirectedGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        UndirectedGraph::new(10, &edges).unwrap()
    }

    pub fn c4() -> UndirectedGraph {
        UndirectedGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }
}
