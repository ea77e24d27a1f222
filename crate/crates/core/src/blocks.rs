//! Blocks, cut vertices and the block tree.

use serde::Serialize;

use crate::graph::{edge_key, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Sorted vertex set of each block.
    pub blocks: Vec<Vec<usize>>,
    /// Edges of each block, normalized and sorted.
    pub block_edges: Vec<Vec<(usize, usize)>>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<usize>,
    /// For each block, the cut vertices it contains (its neighbours in the block tree).
    pub block_tree: Vec<Vec<usize>>,
    /// Blocks of degree at most one in the block tree.
    pub endblock: Vec<bool>,
}

impl BlockDecomposition {
    pub fn is_bridge(&self, b: usize) -> bool {
        self.blocks[b].len() == 2
    }

    /// A block with at least three vertices is 2-connected.
    pub fn is_two_connected(&self, b: usize) -> bool {
        self.blocks[b].len() >= 3
    }

    pub fn endblocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.endblock[b])
            .collect()
    }
}

/// Block decomposition of `g`, with blocks ordered by discovery.
pub fn blocks(g: &Graph) -> BlockDecomposition {
    blocks_within(g, None)
}

/// Block decomposition of the subgraph induced by `allowed`.
pub fn blocks_within(g: &Graph, allowed: Option<&[bool]>) -> BlockDecomposition {
    let n = g.vertex_count();
    let inside = |v: usize| allowed.is_none_or(|a| a[v]);
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    let mut raw: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut singles: Vec<usize> = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if !inside(root) || disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if !g.neighbors(root).iter().any(|&w| inside(w)) {
            singles.push(root);
            continue;
        }
        let mut root_children = 0;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if !inside(w) {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((v, w));
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent == usize::MAX {
                    continue;
                }
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    if parent != root {
                        is_cut[parent] = true;
                    }
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(edge_key(e.0, e.1));
                        if e == (parent, v) {
                            break;
                        }
                    }
                    raw.push(block);
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }

    let mut blocks = Vec::new();
    let mut block_edges = Vec::new();
    for mut edges in raw {
        edges.sort_unstable();
        let mut vs: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.sort_unstable();
        vs.dedup();
        blocks.push(vs);
        block_edges.push(edges);
    }
    for v in singles {
        blocks.push(vec![v]);
        block_edges.push(Vec::new());
    }
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| is_cut[v]).collect();
    let block_tree: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| b.iter().copied().filter(|&v| is_cut[v]).collect())
        .collect();
    let endblock = block_tree.iter().map(|c| c.len() <= 1).collect();
    BlockDecomposition {
        blocks,
        block_edges,
        cut_vertices,
        block_tree,
        endblock,
    }
}
