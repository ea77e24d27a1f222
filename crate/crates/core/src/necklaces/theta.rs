use serde::{Deserialize, Serialize};

use crate::graph::{edge_key, Graph};

/// Two branch vertices joined by three internally disjoint legs, each listed from `u` to `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaGraph {
    pub u: usize,
    pub v: usize,
    pub legs: [Vec<usize>; 3],
}

impl ThetaGraph {
    pub fn leg_lengths(&self) -> [usize; 3] {
        [0, 1, 2].map(|i| self.legs[i].len().saturating_sub(1))
    }

    pub fn total_length(&self) -> usize {
        self.leg_lengths().iter().sum()
    }

    /// All vertices, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.legs.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// All edges, normalized and sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut es: Vec<(usize, usize)> = self
            .legs
            .iter()
            .flat_map(|l| l.windows(2).map(|w| edge_key(w[0], w[1])))
            .collect();
        es.sort_unstable();
        es
    }

    /// Interior vertices of leg `i`.
    pub fn interior(&self, i: usize) -> &[usize] {
        let l = &self.legs[i];
        if l.len() <= 2 {
            &[]
        } else {
            &l[1..l.len() - 1]
        }
    }

    /// Structural checks; with a host, also checks that every edge exists there.
    pub fn violations(&self, host: Option<&Graph>) -> Vec<String> {
        let mut out = Vec::new();
        if self.u == self.v {
            out.push("branch vertices coincide".to_string());
        }
        let mut seen = std::collections::BTreeMap::new();
        let mut short = 0;
        for (i, leg) in self.legs.iter().enumerate() {
            if leg.len() < 2 {
                out.push(format!("leg {i} has length 0"));
                continue;
            }
            if leg[0] != self.u || leg[leg.len() - 1] != self.v {
                out.push(format!("leg {i} does not run from u to v"));
            }
            if leg.len() == 2 {
                short += 1;
            }
            for &x in &leg[1..leg.len() - 1] {
                if x == self.u || x == self.v {
                    out.push(format!("leg {i} revisits a branch vertex"));
                } else if let Some(j) = seen.insert(x, i) {
                    out.push(format!("vertex {x} shared by legs {j} and {i}"));
                }
            }
            if let Some(h) = host {
                if let Err(e) = h.check_path(leg) {
                    out.push(format!("leg {i}: {e}"));
                }
            }
        }
        if short > 1 {
            out.push("more than one leg of length 1".to_string());
        }
        out
    }

    pub fn is_valid(&self, host: Option<&Graph>) -> bool {
        self.violations(host).is_empty()
    }
}
