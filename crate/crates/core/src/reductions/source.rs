//! Source problems the hardness gadgets are generated from: undirected
//! graphs, vertex-colored graphs and set cover instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..vertex_count`. No self-loops,
/// no duplicate edges; edges are stored as normalized `(min, max)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: u32,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new(vertex_count: u32, raw_edges: &[(u32, u32)]) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for &(u, v) in raw_edges {
            if u == v {
                return Err(Error::invalid_argument(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::invalid_argument(format!(
                    "edge ({u},{v}) references a vertex outside 0..{vertex_count}"
                )));
            }
            edges.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            vertex_count,
            edges: edges.into_iter().collect(),
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.vertex_count).all(|v| self.degree(v) == 3)
    }

    /// Neighbor lists with the connecting edge's index into `edges()`.
    pub fn adjacency(&self) -> Vec<Vec<(u32, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count as usize];
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            adj[u as usize].push((v, idx));
            adj[v as usize].push((u, idx));
        }
        adj
    }

    /// Complete graph on four vertices; the smallest cubic graph.
    pub fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Complete bipartite graph K_{3,3}; cubic with nine edges.
    pub fn k33() -> Graph {
        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                edges.push((u, v));
            }
        }
        Graph::new(6, &edges).unwrap()
    }

    /// Random cubic graph on an even number of vertices via the pairing
    /// model: three stubs per vertex, shuffled and matched, rejecting
    /// pairings with loops or parallel edges.
    pub fn random_cubic(vertex_count: u32, seed: u64) -> Result<Graph> {
        if vertex_count < 4 || vertex_count % 2 != 0 {
            return Err(Error::invalid_argument(
                "a cubic graph needs an even vertex count of at least four",
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        'retry: for _ in 0..100_000 {
            let mut stubs: Vec<u32> = (0..vertex_count).flat_map(|v| [v, v, v]).collect();
            stubs.shuffle(&mut rng);
            let mut seen = BTreeSet::new();
            let mut edges = Vec::new();
            for pair in stubs.chunks(2) {
                let (u, v) = (pair[0], pair[1]);
                if u == v || !seen.insert((u.min(v), u.max(v))) {
                    continue 'retry;
                }
                edges.push((u, v));
            }
            return Graph::new(vertex_count, &edges);
        }
        Err(Error::exhausted("could not sample a simple cubic pairing"))
    }
}

/// Graph whose vertices are partitioned into equal-size color classes, with
/// edges only between distinct colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    graph: Graph,
    classes: Vec<Vec<u32>>,
}

impl ColoredGraph {
    pub fn new(graph: Graph, classes: Vec<Vec<u32>>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::invalid_argument("at least one color class required"));
        }
        let size = classes[0].len();
        if size == 0 {
            return Err(Error::invalid_argument("color classes must be nonempty"));
        }
        let mut seen = BTreeSet::new();
        for class in &classes {
            if class.len() != size {
                return Err(Error::invalid_argument(
                    "all color classes must have the same size",
                ));
            }
            for &v in class {
                if v >= graph.vertex_count() {
                    return Err(Error::invalid_argument(format!("unknown vertex {v} in class")));
                }
                if !seen.insert(v) {
                    return Err(Error::invalid_argument(format!("vertex {v} in two classes")));
                }
            }
        }
        if seen.len() != graph.vertex_count() as usize {
            return Err(Error::invalid_argument(
                "color classes must partition the vertex set",
            ));
        }
        let color_of = {
            let mut color = vec![0usize; graph.vertex_count() as usize];
            for (i, class) in classes.iter().enumerate() {
                for &v in class {
                    color[v as usize] = i;
                }
            }
            color
        };
        for &(u, v) in graph.edges() {
            if color_of[u as usize] == color_of[v as usize] {
                return Err(Error::invalid_argument(format!(
                    "edge ({u},{v}) connects two vertices of the same color"
                )));
            }
        }
        Ok(ColoredGraph { graph, classes })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    /// Number of colors, i.e. the order of the sought clique.
    pub fn color_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_size(&self) -> usize {
        self.classes[0].len()
    }

    pub fn color_of(&self, v: u32) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&v))
            .expect("vertex must be colored")
    }

    /// Random properly colored graph: `h` classes of `class_size` vertices,
    /// each cross-color edge present with probability num/den.
    pub fn random(
        h: usize,
        class_size: usize,
        edge_density: (u32, u32),
        seed: u64,
    ) -> Result<ColoredGraph> {
        let (num, den) = edge_density;
        if den == 0 || num > den {
            return Err(Error::invalid_argument("edge density must be a rational in [0,1]"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = (h * class_size) as u32;
        let classes: Vec<Vec<u32>> = (0..h)
            .map(|i| ((i * class_size) as u32..((i + 1) * class_size) as u32).collect())
            .collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let cu = u as usize / class_size;
                let cv = v as usize / class_size;
                if cu != cv && rng.random_range(0..den) < num {
                    edges.push((u, v));
                }
            }
        }
        ColoredGraph::new(Graph::new(n, &edges)?, classes)
    }
}

/// Ground set `{0..ground_size}`, a family of subsets, and a budget `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    ground_size: u32,
    sets: Vec<BTreeSet<u32>>,
    h: u32,
}

impl SetCoverInstance {
    pub fn new(ground_size: u32, sets: Vec<BTreeSet<u32>>, h: u32) -> Result<Self> {
        if ground_size == 0 {
            return Err(Error::invalid_argument("ground set must be nonempty"));
        }
        for set in &sets {
            if set.iter().any(|&x| x >= ground_size) {
                return Err(Error::invalid_argument("set element outside ground set"));
            }
        }
        for x in 0..ground_size {
            if !sets.iter().any(|s| s.contains(&x)) {
                return Err(Error::invalid_argument(format!(
                    "element {x} is not contained in any set"
                )));
            }
        }
        Ok(SetCoverInstance {
            ground_size,
            sets,
            h,
        })
    }

    pub fn ground_size(&self) -> u32 {
        self.ground_size
    }

    pub fn sets(&self) -> &[BTreeSet<u32>] {
        &self.sets
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// Copy with the budget replaced.
    pub fn with_h(&self, h: u32) -> SetCoverInstance {
        SetCoverInstance {
            ground_size: self.ground_size,
            sets: self.sets.clone(),
            h,
        }
    }

    /// Random instance: each set contains each element with probability
    /// num/den; uncovered elements are patched into a random set so the
    /// coverage invariant holds.
    pub fn random(
        ground_size: u32,
        set_count: usize,
        h: u32,
        density: (u32, u32),
        seed: u64,
    ) -> Result<SetCoverInstance> {
        let (num, den) = density;
        if den == 0 || num > den || set_count == 0 || ground_size == 0 {
            return Err(Error::invalid_argument("bad set-cover sampling parameters"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sets: Vec<BTreeSet<u32>> = (0..set_count)
            .map(|_| {
                (0..ground_size)
                    .filter(|_| rng.random_range(0..den) < num)
                    .collect()
            })
            .collect();
        for x in 0..ground_size {
            if !sets.iter().any(|s| s.contains(&x)) {
                let j = rng.random_range(0..set_count);
                sets[j].insert(x);
            }
        }
        SetCoverInstance::new(ground_size, sets, h)
    }
}
