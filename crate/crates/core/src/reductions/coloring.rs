//! Proper edge coloring of cubic graphs with at most four colors, packaged
//! as four disjoint matchings. Fan rotation plus cd-path inversion, the
//! constructive route to the Delta+1 bound.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::reductions::source::Graph;

/// Four disjoint matchings covering the edge set of a cubic graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    matchings: [Vec<(u32, u32)>; 4],
}

impl EdgeColoring {
    pub fn matchings(&self) -> &[Vec<(u32, u32)>; 4] {
        &self.matchings
    }

    /// Edges not in matching `l`, in normalized order.
    pub fn edges_outside(&self, l: usize) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self
            .matchings
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != l)
            .flat_map(|(_, m)| m.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// Vertices (out of `0..vertex_count`) not incident to matching `l`.
    pub fn vertices_outside(&self, l: usize, vertex_count: u32) -> Vec<u32> {
        let touched: BTreeSet<u32> = self.matchings[l]
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .collect();
        (0..vertex_count).filter(|v| !touched.contains(v)).collect()
    }

    fn check(&self, graph: &Graph) -> Result<()> {
        let mut seen = BTreeSet::new();
        for matching in &self.matchings {
            let mut endpoints = BTreeSet::new();
            for &(u, v) in matching {
                if !graph.has_edge(u, v) {
                    return Err(Error::invalid_argument("colored edge not in graph"));
                }
                if !seen.insert((u, v)) {
                    return Err(Error::invalid_argument("edge colored twice"));
                }
                if !endpoints.insert(u) || !endpoints.insert(v) {
                    return Err(Error::invalid_argument("color class is not a matching"));
                }
            }
        }
        if seen.len() != graph.edge_count() {
            return Err(Error::invalid_argument("coloring does not cover every edge"));
        }
        Ok(())
    }
}

/// Proper 4-edge-coloring of a cubic graph, deterministic in the input edge
/// order. Properness is re-checked before returning.
pub fn misra_gries_color(graph: &Graph) -> Result<EdgeColoring> {
    if !graph.is_cubic() {
        return Err(Error::invalid_argument(
            "edge coloring here requires a cubic graph",
        ));
    }
    const COLORS: usize = 4; // max degree + 1

    let adjacency = graph.adjacency();
    let mut color: Vec<Option<usize>> = vec![None; graph.edge_count()];
    // colors used at each vertex
    let mut used: Vec<[bool; COLORS]> = vec![[false; COLORS]; graph.vertex_count() as usize];

    let free_color = |used: &[[bool; COLORS]], v: u32| -> usize {
        (0..COLORS)
            .find(|&c| !used[v as usize][c])
            .expect("a cubic vertex always has a free color among four")
    };
    let is_free = |used: &[[bool; COLORS]], v: u32, c: usize| -> bool { !used[v as usize][c] };

    // Edges along a cd-path or fan share endpoints, so flag bookkeeping
    // must clear every old color before setting any new one.
    let apply = |color: &mut Vec<Option<usize>>,
                 used: &mut Vec<[bool; COLORS]>,
                 updates: &[(usize, usize)]| {
        for &(e, _) in updates {
            if let Some(old) = color[e] {
                let (a, b) = graph.edges()[e];
                used[a as usize][old] = false;
                used[b as usize][old] = false;
            }
        }
        for &(e, new) in updates {
            let (a, b) = graph.edges()[e];
            color[e] = Some(new);
            used[a as usize][new] = true;
            used[b as usize][new] = true;
        }
    };

    for edge_idx in 0..graph.edge_count() {
        if color[edge_idx].is_some() {
            continue;
        }
        let (u, v) = graph.edges()[edge_idx];

        // maximal fan of u starting at v
        let mut fan: Vec<(u32, usize)> = vec![(v, edge_idx)];
        let mut fan_members: BTreeSet<u32> = BTreeSet::from([v]);
        loop {
            let last = fan.last().unwrap().0;
            let next = adjacency[u as usize].iter().find(|&&(w, e)| {
                !fan_members.contains(&w)
                    && color[e].map(|c| is_free(&used, last, c)).unwrap_or(false)
            });
            match next {
                Some(&(w, e)) => {
                    fan.push((w, e));
                    fan_members.insert(w);
                }
                None => break,
            }
        }

        let c = free_color(&used, u);
        let d = free_color(&used, fan.last().unwrap().0);

        // walk the cd-path from u (edges alternating d, c, d, ...) and flip
        // it; per vertex each color appears on at most one edge, so the
        // walk cannot backtrack
        let mut path: Vec<(usize, usize)> = Vec::new(); // (edge, flipped color)
        let mut cur = u;
        let mut want = d;
        loop {
            let step = adjacency[cur as usize]
                .iter()
                .find(|&&(_, e)| color[e] == Some(want));
            match step {
                Some(&(w, e)) => {
                    path.push((e, if want == c { d } else { c }));
                    cur = w;
                    want = if want == c { d } else { c };
                }
                None => break,
            }
        }
        apply(&mut color, &mut used, &path);

        // rotate the sub-fan ending at the first vertex with d free
        let w = fan
            .iter()
            .position(|&(x, _)| is_free(&used, x, d))
            .unwrap_or(0);
        let mut rotation: Vec<(usize, usize)> = Vec::with_capacity(w + 1);
        for i in 1..=w {
            let shifted = color[fan[i].1].expect("fan edges beyond the first are colored");
            rotation.push((fan[i - 1].1, shifted));
        }
        rotation.push((fan[w].1, d));
        apply(&mut color, &mut used, &rotation);
    }

    let mut matchings: [Vec<(u32, u32)>; 4] = Default::default();
    for (e, col) in color.iter().enumerate() {
        let col = col.ok_or_else(|| Error::invalid_argument("edge left uncolored"))?;
        matchings[col].push(graph.edges()[e]);
    }
    for m in &mut matchings {
        m.sort_unstable();
    }
    let coloring = EdgeColoring { matchings };
    coloring.check(graph)?;
    Ok(coloring)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_decomposes_into_four_matchings() {
        let coloring = misra_gries_color(&Graph::k4()).unwrap();
        let total: usize = coloring.matchings().iter().map(|m| m.len()).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn k33_is_covered_properly() {
        let coloring = misra_gries_color(&Graph::k33()).unwrap();
        let total: usize = coloring.matchings().iter().map(|m| m.len()).sum();
        assert_eq!(total, 9);
    }

    #[test]
    fn non_cubic_input_is_rejected() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(misra_gries_color(&path).is_err());
    }

    #[test]
    fn outside_sets_partition_the_graph() {
        let g = Graph::k4();
        let coloring = misra_gries_color(&g).unwrap();
        for l in 0..4 {
            let inside = coloring.matchings()[l].len();
            let outside = coloring.edges_outside(l).len();
            assert_eq!(inside + outside, g.edge_count());
            let touched = 2 * inside;
            let untouched = coloring.vertices_outside(l, g.vertex_count()).len();
            assert_eq!(touched + untouched, g.vertex_count() as usize);
        }
    }
}
