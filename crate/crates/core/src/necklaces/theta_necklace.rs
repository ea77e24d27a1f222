use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{gcd, Report};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::necklaces::ThetaGraph;

/// θ-graphs joined cyclically by connectors. In `thetas[j]`, `legs[0]` and
/// `legs[1]` carry the attachments and `legs[2]` is the short leg of length
/// `i`. `connectors[j]` runs from an interior vertex of `thetas[j].legs[1]` to
/// an interior vertex of `thetas[j + 1].legs[0]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaNecklace {
    pub i: usize,
    pub thetas: Vec<ThetaGraph>,
    pub connectors: Vec<Vec<usize>>,
}

/// Lengths `(a, b, c, d)` with `a = |w₁L₁u|`, `b = |uL₂w₂|`, `c − i = |w₁L₁v|`, `d − i = |vL₂w₂|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegSplit {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// Which `w₁`–`w₂` route a θ-graph contributes to a cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Route {
    /// w₁ L₁ u L₂ w₂
    Base,
    /// w₁ L₁ u L₃ v L₂ w₂
    ViaU,
    /// w₁ L₁ v L₃ u L₂ w₂
    ViaV,
    /// w₁ L₁ v L₂ w₂
    Far,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaRealization {
    pub cycle: Vec<usize>,
    pub base_length: usize,
    /// Numbers of θ-graphs switched to each of the three alternative routes.
    pub lambdas: [usize; 3],
    /// θ-graphs sharing the chosen difference triple.
    pub bucket: Vec<usize>,
}

impl ThetaNecklace {
    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    /// Attachment vertices `(w₁, w₂)` of θ-graph `j`.
    pub fn attachments(&self, j: usize) -> (usize, usize) {
        let t = self.len();
        let prev = &self.connectors[(j + t - 1) % t];
        (prev[prev.len() - 1], self.connectors[j][0])
    }

    pub fn split(&self, j: usize) -> Option<LegSplit> {
        let (w1, w2) = self.attachments(j);
        let th = &self.thetas[j];
        let p1 = th.legs[0].iter().position(|&x| x == w1)?;
        let p2 = th.legs[1].iter().position(|&x| x == w2)?;
        let (l1, l2) = (th.legs[0].len() - 1, th.legs[1].len() - 1);
        Some(LegSplit {
            a: p1,
            b: p2,
            c: l1 - p1 + self.i,
            d: l2 - p2 + self.i,
        })
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.thetas.iter().flat_map(|t| t.edges()).collect();
        for c in &self.connectors {
            out.extend(c.windows(2).map(|w| (w[0], w[1])));
        }
        out
    }

    /// Structural check; with a host, also that every edge exists there.
    pub fn validate(&self, host: Option<&Graph>) -> Report {
        let mut r = Report::default();
        let t = self.len();
        if t == 0 {
            r.push("necklace has no θ-graphs");
            return r.done();
        }
        if self.connectors.len() != t {
            r.push(format!(
                "{} θ-graphs but {} connectors",
                t,
                self.connectors.len()
            ));
            return r.done();
        }
        let mut owner: BTreeMap<usize, String> = BTreeMap::new();
        for (j, th) in self.thetas.iter().enumerate() {
            for v in th.violations(None) {
                r.push(format!("θ-graph {j}: {v}"));
            }
            if th.legs[2].len() != self.i + 1 {
                r.push(format!(
                    "θ-graph {j}: third leg has length {}, expected {}",
                    th.legs[2].len() - 1,
                    self.i
                ));
            }
            for v in th.vertices() {
                if let Some(o) = owner.insert(v, format!("θ-graph {j}")) {
                    r.push(format!("vertex {v} shared by {o} and θ-graph {j}"));
                }
            }
        }
        let interior = |th: &ThetaGraph, leg: usize, x: usize| th.interior(leg).contains(&x);
        for (j, c) in self.connectors.iter().enumerate() {
            if c.len() < 2 {
                r.push(format!("connector {j} has no edge"));
                continue;
            }
            let next = (j + 1) % t;
            if !interior(&self.thetas[j], 1, c[0]) {
                r.push(format!(
                    "connector {j} does not start inside the second leg of θ-graph {j}"
                ));
            }
            if !interior(&self.thetas[next], 0, c[c.len() - 1]) {
                r.push(format!(
                    "connector {j} does not end inside the first leg of θ-graph {next}"
                ));
            }
            for &v in &c[1..c.len() - 1] {
                if let Some(o) = owner.insert(v, format!("connector {j}")) {
                    r.push(format!("vertex {v} shared by {o} and connector {j}"));
                }
            }
        }
        r.check_union(&self.edges(), host);
        r.done()
    }

    fn route(&self, j: usize, route: Route) -> Vec<usize> {
        let (w1, w2) = self.attachments(j);
        let th = &self.thetas[j];
        let (l1, l2, l3) = (&th.legs[0], &th.legs[1], &th.legs[2]);
        let p1 = l1.iter().position(|&x| x == w1).unwrap();
        let p2 = l2.iter().position(|&x| x == w2).unwrap();
        let to_u: Vec<usize> = l1[..=p1].iter().rev().copied().collect();
        let to_v: Vec<usize> = l1[p1..].to_vec();
        let from_u: Vec<usize> = l2[..=p2].to_vec();
        let from_v: Vec<usize> = l2[p2..].iter().rev().copied().collect();
        let mut out = Vec::new();
        let mut push = |seg: &[usize]| {
            for &v in seg {
                if out.last() != Some(&v) {
                    out.push(v);
                }
            }
        };
        match route {
            Route::Base => {
                push(&to_u);
                push(&from_u);
            }
            Route::ViaU => {
                push(&to_u);
                push(l3);
                push(&from_v);
            }
            Route::ViaV => {
                push(&to_v);
                push(&l3.iter().rev().copied().collect::<Vec<_>>());
                push(&from_u);
            }
            Route::Far => {
                push(&to_v);
                push(&from_v);
            }
        }
        out
    }

    fn cycle(&self, routes: &[Route]) -> Vec<usize> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            out.extend(self.route(j, routes[j]));
            let c = &self.connectors[j];
            out.extend(&c[1..c.len() - 1]);
        }
        out
    }

    /// Length of the base cycle through every `w₁L₁uL₂w₂` segment.
    pub fn base_length(&self) -> usize {
        (0..self.len())
            .map(|j| {
                let s = self.split(j).unwrap();
                s.a + s.b + self.connectors[j].len() - 1
            })
            .sum()
    }

    /// Residues of every cycle the switching scheme can produce: the base
    /// cycle plus `(λ₁, λ₂, λ₃) ∈ [0, k)³` switches inside the fullest bucket.
    pub fn scheme_residues(&self, k: usize) -> Result<Vec<usize>> {
        let (key, bucket) = fullest_bucket(self, k)?;
        let base = self.base_length();
        let mut out = std::collections::BTreeSet::new();
        for l in lambda_triples(k, bucket.len()) {
            out.insert((base + l[0] * key[0] + l[1] * key[1] + l[2] * key[2]) % k);
        }
        Ok(out.into_iter().collect())
    }
}

/// Fullest bucket of θ-graphs by difference triple; ties go to the
/// lexicographically least triple.
fn fullest_bucket(neck: &ThetaNecklace, k: usize) -> Result<([usize; 3], Vec<usize>)> {
    let mut buckets: BTreeMap<[usize; 3], Vec<usize>> = BTreeMap::new();
    for j in 0..neck.len() {
        let s = neck
            .split(j)
            .ok_or_else(|| Error::Invalid(format!("θ-graph {j} has misplaced attachments")))?;
        buckets.entry(triple(s, neck.i, k)).or_default().push(j);
    }
    buckets
        .into_iter()
        .max_by(|x, y| x.1.len().cmp(&y.1.len()).then(y.0.cmp(&x.0)))
        .ok_or_else(|| Error::Invalid("necklace has no θ-graphs".into()))
}

/// Switch counts in `[0, k)³` whose total fits in `room`, lexicographically.
fn lambda_triples(k: usize, room: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..k)
        .flat_map(move |a| (0..k).flat_map(move |b| (0..k).map(move |c| [a, b, c])))
        .filter(move |l| l[0] + l[1] + l[2] <= room)
}

/// Difference triple `(d−b, c−a, c+d−2i−a−b)` modulo `k`.
fn triple(s: LegSplit, i: usize, k: usize) -> [usize; 3] {
    let k = k as i64;
    let (a, b, c, d, i) = (s.a as i64, s.b as i64, s.c as i64, s.d as i64, i as i64);
    [d - b, c - a, c + d - 2 * i - a - b].map(|x| x.rem_euclid(k) as usize)
}

/// A cycle of length ≡ `m` (mod `k`) in a θ(t, i)-necklace with `t ≥ 3k⁴` and
/// `gcd(k, 2i) = 1`.
///
/// The θ-graphs are bucketed by their difference triple; the fullest bucket
/// (lexicographically least triple on ties) supplies the switches. Among all
/// switch counts `(λ₁, λ₂, λ₃) ∈ [0, k)³` that fit in the bucket and hit the
/// residue, the one with fewest switches is used (ties: lexicographically
/// least); the choice `λ₁ ≡ λ₂ ≡ λ ≡ −λ₃` with `λ ≡ (m − |C|)(2i)⁻¹` is always
/// among the candidates.
pub fn realize_residue_theta(neck: &ThetaNecklace, m: usize, k: usize) -> Result<ThetaRealization> {
    if k == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    if gcd(k, 2 * neck.i) != 1 {
        return Err(Error::Precondition(format!("gcd({k}, 2·{}) ≠ 1", neck.i)));
    }
    let need = 3 * k.pow(4);
    if neck.len() < need {
        return Err(Error::InsufficientLevel(format!(
            "necklace has {} θ-graphs, at least 3k⁴ = {need} required",
            neck.len()
        )));
    }
    let report = neck.validate(None);
    if !report.valid {
        return Err(Error::Invalid(report.violations.join("; ")));
    }
    realize_with_scheme(neck, m, k)
}

/// The switching scheme without the size precondition; fails when the fullest
/// bucket is too small for any switch combination reaching `m`.
pub(crate) fn realize_with_scheme(
    neck: &ThetaNecklace,
    m: usize,
    k: usize,
) -> Result<ThetaRealization> {
    let (key, bucket) = fullest_bucket(neck, k)?;
    let base = neck.base_length();
    let target = (m % k + k - base % k) % k;
    let mut best: Option<(usize, [usize; 3])> = None;
    for l in lambda_triples(k, bucket.len()) {
        let total = l[0] + l[1] + l[2];
        let shift = (l[0] * key[0] + l[1] * key[1] + l[2] * key[2]) % k;
        if shift == target && best.is_none_or(|(t, _)| total < t) {
            best = Some((total, l));
        }
    }
    let Some((_, lambdas)) = best else {
        return Err(Error::NotFound(format!(
            "bucket of {} θ-graphs cannot reach residue {m}",
            bucket.len()
        )));
    };
    let mut routes = vec![Route::Base; neck.len()];
    let mut it = bucket.iter();
    for (count, route) in lambdas.iter().zip([Route::ViaU, Route::ViaV, Route::Far]) {
        for _ in 0..*count {
            routes[*it.next().unwrap()] = route;
        }
    }
    let cycle = neck.cycle(&routes);
    if cycle.len() % k != m % k {
        return Err(Error::Falsified(format!(
            "cycle of length {} is not ≡ {m} (mod {k})",
            cycle.len()
        )));
    }
    Ok(ThetaRealization {
        cycle,
        base_length: base,
        lambdas,
        bucket,
    })
}

/// Shape of one θ-graph for [`build_theta_necklace`]: first and second leg
/// lengths and the attachment positions on them (counted from `u`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaShape {
    pub leg1: usize,
    pub at1: usize,
    pub leg2: usize,
    pub at2: usize,
}

/// Builds a θ(t, i)-necklace with the given shapes and connector lengths, on
/// fresh vertices numbered from 0. Returns the host graph and the necklace.
pub fn build_theta_necklace(
    shapes: &[ThetaShape],
    i: usize,
    connector_lengths: &[usize],
) -> Result<(Graph, ThetaNecklace)> {
    if shapes.is_empty() || shapes.len() != connector_lengths.len() || i == 0 {
        return Err(Error::Precondition(
            "need one connector length per θ-graph and i ≥ 1".into(),
        ));
    }
    let mut next = 0usize;
    let mut fresh = |count: usize| -> Vec<usize> {
        let v: Vec<usize> = (next..next + count).collect();
        next += count;
        v
    };
    let mut thetas = Vec::new();
    for s in shapes {
        if s.at1 == 0
            || s.at1 >= s.leg1
            || s.at2 == 0
            || s.at2 >= s.leg2
            || (i == 1 && (s.leg1 == 1 || s.leg2 == 1))
        {
            return Err(Error::Precondition(format!("bad θ shape {s:?}")));
        }
        let uv = fresh(2);
        let (u, v) = (uv[0], uv[1]);
        let mut legs: [Vec<usize>; 3] = Default::default();
        for (leg, len) in legs.iter_mut().zip([s.leg1, s.leg2, i]) {
            leg.push(u);
            leg.extend(fresh(len - 1));
            leg.push(v);
        }
        thetas.push(ThetaGraph { u, v, legs });
    }
    let t = shapes.len();
    let mut connectors = Vec::new();
    for j in 0..t {
        let len = connector_lengths[j];
        if len == 0 {
            return Err(Error::Precondition(
                "connectors need at least one edge".into(),
            ));
        }
        let mut c = vec![thetas[j].legs[1][shapes[j].at2]];
        c.extend(fresh(len - 1));
        c.push(thetas[(j + 1) % t].legs[0][shapes[(j + 1) % t].at1]);
        connectors.push(c);
    }
    let neck = ThetaNecklace {
        i,
        thetas,
        connectors,
    };
    let g = Graph::from_edges(next, &neck.edges())?;
    Ok((g, neck))
}

/// Random θ(t, i)-necklace with first and second legs of length `2..=max_leg`
/// and connectors of length `1..=max_connector`.
pub fn random_theta_necklace<R: Rng>(
    t: usize,
    i: usize,
    max_leg: usize,
    max_connector: usize,
    rng: &mut R,
) -> (Graph, ThetaNecklace) {
    let max_leg = max_leg.max(2);
    let shapes: Vec<ThetaShape> = (0..t)
        .map(|_| {
            let leg1 = rng.gen_range(2..=max_leg);
            let leg2 = rng.gen_range(2..=max_leg);
            ThetaShape {
                leg1,
                at1: rng.gen_range(1..leg1),
                leg2,
                at2: rng.gen_range(1..leg2),
            }
        })
        .collect();
    let lens: Vec<usize> = (0..t)
        .map(|_| rng.gen_range(1..=max_connector.max(1)))
        .collect();
    build_theta_necklace(&shapes, i, &lens).expect("shapes are valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn uniform(t: usize) -> (Graph, ThetaNecklace) {
        let shape = ThetaShape {
            leg1: 2,
            at1: 1,
            leg2: 2,
            at2: 1,
        };
        build_theta_necklace(&vec![shape; t], 1, &vec![1; t]).unwrap()
    }

    #[test]
    fn single_theta_with_self_connector() {
        let (g, n) = uniform(1);
        assert!(n.validate(Some(&g)).valid);
        assert_eq!(
            n.split(0),
            Some(LegSplit {
                a: 1,
                b: 1,
                c: 2,
                d: 2
            })
        );
    }

    #[test]
    fn uniform_k3() {
        let (g, n) = uniform(243);
        assert_eq!(n.base_length(), 729);
        let r = realize_residue_theta(&n, 1, 3).unwrap();
        assert_eq!(r.cycle.len(), 730);
        g.check_cycle(&r.cycle).unwrap();
        let r = realize_residue_theta(&n, 0, 3).unwrap();
        assert_eq!(r.cycle.len(), 729);
        assert_eq!(r.lambdas, [0, 0, 0]);
        assert_eq!(realize_residue_theta(&n, 2, 3).unwrap().cycle.len() % 3, 2);
    }

    #[test]
    fn overlapping_thetas_reported() {
        let (_, mut n) = uniform(2);
        n.thetas[1].legs[2] = vec![n.thetas[1].u, n.thetas[0].u, n.thetas[1].v];
        let r = n.validate(None);
        assert!(!r.valid);
        assert!(r
            .violations
            .iter()
            .any(|v| v.contains(&format!("vertex {}", n.thetas[0].u))));
    }

    #[test]
    fn random_k5_i2() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (g, n) = random_theta_necklace(1875, 2, 5, 3, &mut rng);
        assert!(n.validate(Some(&g)).valid);
        for m in 0..5 {
            let r = realize_residue_theta(&n, m, 5).unwrap();
            assert_eq!(r.cycle.len() % 5, m);
            g.check_cycle(&r.cycle).unwrap();
        }
    }

    #[test]
    fn preconditions() {
        let (_, n) = uniform(10);
        assert!(matches!(
            realize_residue_theta(&n, 0, 3),
            Err(Error::InsufficientLevel(_))
        ));
        assert!(matches!(
            realize_residue_theta(&n, 0, 4),
            Err(Error::Precondition(_))
        ));
    }
}
