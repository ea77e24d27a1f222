//! θ-graphs, necklaces, k-closeness and residue realization.

mod close;
mod theta;
mod theta_necklace;
mod wiggly;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge_key, Graph};

pub use close::{
    detect_k_close, kclose_to_necklace, max_k_close_connectors, random_kclose_pair, KClosePair,
};
pub use theta::ThetaGraph;
pub use theta_necklace::{
    build_theta_necklace, random_theta_necklace, realize_residue_theta, LegSplit, ThetaNecklace,
    ThetaRealization, ThetaShape,
};
pub use wiggly::{
    random_wiggly_necklace, realize_residue_wiggly, NecklaceBlock, WigglyNecklace,
    WigglyRealization,
};

/// Outcome of a structural check: every violated invariant, in discovery order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub valid: bool,
    pub violations: Vec<String>,
}

impl Report {
    pub fn push(&mut self, v: impl Into<String>) {
        self.violations.push(v.into());
    }

    pub fn done(mut self) -> Self {
        self.valid = self.violations.is_empty();
        self
    }

    /// The edge set must be simple and subcubic; with a host, every edge must exist there.
    pub(crate) fn check_union(&mut self, edges: &[(usize, usize)], host: Option<&Graph>) {
        let mut seen = BTreeSet::new();
        let mut degree = std::collections::BTreeMap::<usize, usize>::new();
        for &(a, b) in edges {
            if a == b {
                self.push(format!("loop at {a}"));
                continue;
            }
            if !seen.insert(edge_key(a, b)) {
                self.push(format!("edge ({a},{b}) used twice"));
                continue;
            }
            *degree.entry(a).or_default() += 1;
            *degree.entry(b).or_default() += 1;
            if let Some(h) = host {
                if a >= h.vertex_count() || b >= h.vertex_count() || !h.has_edge(a, b) {
                    self.push(format!("edge ({a},{b}) missing from host"));
                }
            }
        }
        for (v, d) in degree {
            if d > 3 {
                self.push(format!("vertex {v} has degree {d}"));
            }
        }
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `a` modulo `k` by the extended Euclidean algorithm.
pub fn mod_inverse(a: usize, k: usize) -> Option<usize> {
    if k == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (k as i64, (a % k) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(k as i64) as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KGoodWitness {
    Theta(ThetaNecklace),
    Wiggly(WigglyNecklace),
    KClose(KClosePair),
}

/// Claim that a graph is `k`-good, with the witnessing subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGoodCertificate {
    pub k: usize,
    pub witness: KGoodWitness,
}

impl KGoodWitness {
    /// The largest `k` for which this witness shows `k`-goodness.
    pub fn level(&self) -> usize {
        match self {
            KGoodWitness::Theta(n) if n.i == 1 || n.i == 2 => n.len(),
            KGoodWitness::Theta(_) => 0,
            KGoodWitness::Wiggly(n) => n.wiggle_count(),
            KGoodWitness::KClose(p) => p.connectors.len(),
        }
    }

    pub fn validate(&self, host: Option<&Graph>) -> Report {
        match self {
            KGoodWitness::Theta(n) => n.validate(host),
            KGoodWitness::Wiggly(n) => n.validate(host),
            KGoodWitness::KClose(p) => p.validate(host),
        }
    }
}

impl KGoodCertificate {
    pub fn validate(&self, host: Option<&Graph>) -> Report {
        let mut r = self.witness.validate(host);
        if let KGoodWitness::Theta(n) = &self.witness {
            if n.i != 1 && n.i != 2 {
                r.push(format!("third legs have length {}, expected 1 or 2", n.i));
            }
        }
        let level = self.witness.level();
        if level < self.k {
            r.push(format!(
                "witness has level {level}, certificate claims {}",
                self.k
            ));
        }
        r.done()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGoodRealization {
    pub cycle: Vec<usize>,
    /// Whether every threshold along the dispatch chain was met. When not,
    /// the construction was still attempted and its output verified.
    pub guaranteed: bool,
    /// Steps taken, e.g. `["k-close", "θ-necklace"]`.
    pub chain: Vec<String>,
}

/// A cycle of length ≡ `m` (mod `k`) in `g` from a goodness certificate, `k` odd.
///
/// Wiggly witnesses need `2k` wiggly blocks, θ-necklaces `3k⁴` θ-graphs, and
/// k-close pairs `162k⁸` connectors (turned into a θ(3k⁴, i)-necklace). Below
/// a threshold the same construction is tried on what is there; if it fails,
/// the error names the threshold that was not met.
pub fn kgood_realize(
    g: &Graph,
    cert: &KGoodCertificate,
    m: usize,
    k: usize,
) -> Result<KGoodRealization> {
    if k % 2 == 0 {
        return Err(Error::Precondition(format!("modulus {k} must be odd")));
    }
    let report = cert.witness.validate(Some(g));
    if !report.valid {
        return Err(Error::Invalid(report.violations.join("; ")));
    }
    let level = cert.witness.level();
    let short = |name: &str, need: u128| {
        Error::InsufficientLevel(format!(
            "{name} has level {level}, below the threshold {need}"
        ))
    };
    let k128 = k as u128;
    let (cycle, guaranteed, chain) = match &cert.witness {
        KGoodWitness::Wiggly(n) => {
            let need = 2 * k;
            let ok = level >= need;
            let r = wiggly::realize_with_majority(n, m, k)
                .map_err(|_| short("wiggly necklace", need as u128))?;
            (r.cycle, ok, vec!["wiggly".to_string()])
        }
        KGoodWitness::Theta(n) => {
            let need = 3 * k128.pow(4);
            let ok = level as u128 >= need;
            let r = theta_necklace::realize_with_scheme(n, m, k)
                .map_err(|_| short("θ-necklace", need))?;
            (r.cycle, ok, vec!["θ-necklace".to_string()])
        }
        KGoodWitness::KClose(p) => {
            let need = 162 * k128.pow(8);
            let ok = level as u128 >= need;
            let target = 3 * k.pow(4);
            let fits = ((level / 18) as f64).sqrt() as usize;
            let t = if ok { target } else { fits.min(target) };
            if t == 0 {
                return Err(short("k-close pair", need));
            }
            let neck = kclose_to_necklace(g, p, t).map_err(|_| short("k-close pair", need))?;
            let r = theta_necklace::realize_with_scheme(&neck, m, k)
                .map_err(|_| short("k-close pair", need))?;
            (
                r.cycle,
                ok,
                vec!["k-close".to_string(), "θ-necklace".to_string()],
            )
        }
    };
    g.check_cycle(&cycle)
        .map_err(|e| Error::Falsified(format!("realized cycle: {e}")))?;
    if cycle.len() % k != m % k {
        return Err(Error::Falsified(format!(
            "cycle of length {} is not ≡ {m} (mod {k})",
            cycle.len()
        )));
    }
    Ok(KGoodRealization {
        cycle,
        guaranteed,
        chain,
    })
}
