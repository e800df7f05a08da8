//! Biconnected components (blocks) and block-forest recognition.

use serde::Serialize;

use crate::graph::{Bits, Edge, Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Edge sets of the blocks, each sorted, blocks ordered by first edge.
    pub blocks: Vec<Vec<Edge>>,
    pub articulation_points: VertexSet,
}

impl BlockDecomposition {
    pub fn block_vertices(&self, i: usize) -> VertexSet {
        self.blocks[i]
            .iter()
            .flat_map(|e| [e.u, e.v])
            .collect()
    }
}

struct Dfs<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    stack: Vec<Edge>,
    blocks: Vec<Vec<Edge>>,
    cut: VertexSet,
}

impl Dfs<'_> {
    fn visit(&mut self, v: usize, parent: Option<usize>) {
        self.timer += 1;
        self.disc[v] = self.timer;
        self.low[v] = self.timer;
        let mut children = 0;
        for w in Bits(self.g.neighbors(v).bits()) {
            if Some(w) == parent {
                continue;
            }
            if self.disc[w] == 0 {
                children += 1;
                self.stack.push(Edge::new(v, w));
                self.visit(w, Some(v));
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    if parent.is_some() {
                        self.cut.insert(v);
                    }
                    let mut block = Vec::new();
                    while let Some(e) = self.stack.pop() {
                        block.push(e);
                        if e == Edge::new(v, w) {
                            break;
                        }
                    }
                    block.sort();
                    self.blocks.push(block);
                }
            } else if self.disc[w] < self.disc[v] {
                self.stack.push(Edge::new(v, w));
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
        if parent.is_none() && children > 1 {
            self.cut.insert(v);
        }
    }
}

/// Blocks of `g`. Bridges form two-vertex blocks; isolated vertices form none.
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut dfs = Dfs {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        timer: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cut: VertexSet::empty(),
    };
    for v in 0..n {
        if dfs.disc[v] == 0 {
            dfs.visit(v, None);
        }
    }
    let mut blocks = dfs.blocks;
    blocks.sort();
    BlockDecomposition {
        blocks,
        articulation_points: dfs.cut,
    }
}

/// True iff every block induces a clique.
pub fn is_block_forest(g: &Graph) -> bool {
    non_clique_block(g).is_none()
}

/// Vertex set of some block that is not a clique, if any.
pub fn non_clique_block(g: &Graph) -> Option<VertexSet> {
    let d = block_decomposition(g);
    (0..d.blocks.len())
        .map(|i| d.block_vertices(i))
        .find(|&s| !g.is_clique(s))
}
