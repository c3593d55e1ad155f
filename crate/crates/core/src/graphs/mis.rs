//! Maximum (weight) independent set solvers and the independence-degree
//! invariants built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use super::{BitSet, Graph, DEFAULT_VERTEX_CAP};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// An optimal independent set together with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisResult {
    pub value: Rational,
    /// Sorted vertex indices.
    pub witness: Vec<usize>,
}

impl MisResult {
    /// Value as an integer cardinality; panics for fractional weights.
    pub fn size(&self) -> usize {
        self.value
            .to_integer()
            .to_usize()
            .expect("integral nonnegative value")
    }
}

/// One maximum-weight independent set instance.
pub struct MisProblem<'a> {
    pub graph: &'a Graph,
    /// Integer vertex weights; `None` means unit weights.
    pub weights: Option<&'a [u64]>,
    /// Optional partition of the vertices into cliques, one label per vertex.
    pub clique_partition: Option<&'a [usize]>,
    /// Restrict the search to these vertices.
    pub candidates: Option<&'a BitSet>,
    /// Stop as soon as an independent set of at least this weight is found.
    pub target: Option<u64>,
}

impl<'a> MisProblem<'a> {
    pub fn new(graph: &'a Graph) -> Self {
        MisProblem {
            graph,
            weights: None,
            clique_partition: None,
            candidates: None,
            target: None,
        }
    }

    fn weight(&self, v: usize) -> u64 {
        self.weights.map_or(1, |w| w[v])
    }

    fn candidate_set(&self) -> BitSet {
        match self.candidates {
            Some(c) => c.clone(),
            None => BitSet::full(self.graph.num_vertices()),
        }
    }
}

/// A maximum-weight independent set algorithm.
pub trait MisSolver: Send + Sync {
    fn name(&self) -> &'static str;

    /// Returns the optimum weight and a sorted witness. When a target is set the
    /// solver may return any set reaching it.
    fn solve(&self, problem: &MisProblem<'_>) -> Result<(u64, Vec<usize>)>;
}

/// Colour-ordered branch and bound.
///
/// Each node covers the candidate set by cliques (greedy sequential cover, or
/// the supplied clique partition when that is tighter) and visits vertices in
/// reverse cover order, pruning on the prefix sum of per-clique maximum weights.
#[derive(Clone, Copy, Debug, Default)]
pub struct BranchAndBound;

/// Enumeration of every vertex subset; exponential and capped at 26 vertices.
#[derive(Clone, Copy, Debug, Default)]
pub struct BruteForce;

impl BruteForce {
    pub const MAX_VERTICES: usize = 26;
}

impl MisSolver for BruteForce {
    fn name(&self) -> &'static str {
        "brute-force"
    }

    fn solve(&self, problem: &MisProblem<'_>) -> Result<(u64, Vec<usize>)> {
        let cand: Vec<usize> = problem.candidate_set().iter().collect();
        let k = cand.len();
        if k > Self::MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "brute-force independent set enumeration",
                size: k as u128,
                cap: Self::MAX_VERTICES as u128,
            });
        }
        let adj: Vec<u32> = cand
            .iter()
            .map(|&u| {
                cand.iter()
                    .enumerate()
                    .filter(|(_, &v)| problem.graph.has_edge(u, v))
                    .fold(0u32, |m, (j, _)| m | 1 << j)
            })
            .collect();
        let w: Vec<u64> = cand.iter().map(|&v| problem.weight(v)).collect();
        let mut best = 0u64;
        let mut best_set: Vec<usize> = Vec::new();
        for mask in 0u32..(1u32 << k) {
            let mut ok = true;
            let mut total = 0u64;
            let mut bits = mask;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if adj[j] & mask != 0 {
                    ok = false;
                    break;
                }
                total += w[j];
            }
            if !ok || total < best {
                continue;
            }
            let set: Vec<usize> = (0..k).filter(|j| mask >> j & 1 == 1).map(|j| cand[j]).collect();
            if total > best || set < best_set {
                best = total;
                best_set = set;
            }
        }
        Ok((best, best_set))
    }
}

impl MisSolver for BranchAndBound {
    fn name(&self) -> &'static str {
        "branch-and-bound"
    }

    fn solve(&self, problem: &MisProblem<'_>) -> Result<(u64, Vec<usize>)> {
        let g = problem.graph;
        let n = g.num_vertices();
        let weights: Vec<u64> = (0..n).map(|v| problem.weight(v)).collect();
        let mut cand = problem.candidate_set();
        // Zero-weight vertices never improve a solution.
        for v in cand.clone().iter() {
            if weights[v] == 0 {
                cand.remove(v);
            }
        }
        // Static order for the greedy cover: heavy vertices first, then by
        // ascending degree so that sparse vertices seed the cover classes.
        let mut order: Vec<usize> = cand.iter().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(weights[v]), g.degree(v), v));
        let mut search = Search {
            g,
            w: &weights,
            partition: problem.clique_partition,
            order,
            best: 0,
            best_set: Vec::new(),
            cur: Vec::new(),
            target: problem.target.unwrap_or(u64::MAX),
            done: false,
        };
        search.expand(cand, 0);
        let mut set = search.best_set;
        set.sort_unstable();
        Ok((search.best, set))
    }
}

struct Search<'a> {
    g: &'a Graph,
    w: &'a [u64],
    partition: Option<&'a [usize]>,
    order: Vec<usize>,
    best: u64,
    best_set: Vec<usize>,
    cur: Vec<usize>,
    target: u64,
    done: bool,
}

impl Search<'_> {
    /// Covers `p` by cliques, returning vertices grouped by class and the
    /// cumulative weight bound at each position.
    fn cover(&self, p: &BitSet) -> (Vec<usize>, Vec<u64>) {
        let greedy = self.greedy_cover(p);
        let classes = match self.partition {
            Some(part) => {
                let by_part = partition_cover(p, part);
                if class_bound(&by_part, self.w) < class_bound(&greedy, self.w) {
                    by_part
                } else {
                    greedy
                }
            }
            None => greedy,
        };
        let mut verts = Vec::with_capacity(p.count());
        let mut ub = Vec::with_capacity(verts.capacity());
        let mut acc = 0u64;
        for class in classes {
            acc += class.iter().map(|&v| self.w[v]).max().unwrap_or(0);
            for v in class {
                verts.push(v);
                ub.push(acc);
            }
        }
        (verts, ub)
    }

    fn greedy_cover(&self, p: &BitSet) -> Vec<Vec<usize>> {
        let mut classes: Vec<(BitSet, Vec<usize>)> = Vec::new();
        for &v in &self.order {
            if !p.contains(v) {
                continue;
            }
            match classes.iter_mut().find(|(common, _)| common.contains(v)) {
                Some((common, members)) => {
                    common.intersect_with(self.g.neighbors(v));
                    members.push(v);
                }
                None => {
                    let mut common = self.g.neighbors(v).clone();
                    common.intersect_with(p);
                    classes.push((common, vec![v]));
                }
            }
        }
        classes.into_iter().map(|(_, m)| m).collect()
    }

    fn expand(&mut self, mut p: BitSet, cur_w: u64) {
        if self.done {
            return;
        }
        // Vertices with no neighbour among the candidates belong to every
        // maximal extension.
        let mut cur_w = cur_w;
        let pushed = self.cur.len();
        for v in p.clone().iter() {
            if !self.g.neighbors(v).intersects(&p) {
                p.remove(v);
                self.cur.push(v);
                cur_w += self.w[v];
            }
        }
        if p.is_empty() {
            self.record(cur_w);
            self.cur.truncate(pushed);
            return;
        }
        let (verts, ub) = self.cover(&p);
        for i in (0..verts.len()).rev() {
            if self.done || cur_w + ub[i] <= self.best {
                break;
            }
            let v = verts[i];
            let mut next = p.difference(self.g.neighbors(v));
            next.remove(v);
            self.cur.push(v);
            if next.is_empty() {
                self.record(cur_w + self.w[v]);
            } else {
                self.expand(next, cur_w + self.w[v]);
            }
            self.cur.pop();
            p.remove(v);
        }
        // The current set itself is independent even if every child was pruned.
        self.record(cur_w);
        self.cur.truncate(pushed);
    }

    fn record(&mut self, total: u64) {
        if total > self.best {
            self.best = total;
            self.best_set = self.cur.clone();
            if self.best >= self.target {
                self.done = true;
            }
        }
    }
}

fn partition_cover(p: &BitSet, part: &[usize]) -> Vec<Vec<usize>> {
    let mut labels: Vec<(usize, usize)> = p.iter().map(|v| (part[v], v)).collect();
    labels.sort_unstable();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut last = None;
    for (l, v) in labels {
        if last != Some(l) {
            classes.push(Vec::new());
            last = Some(l);
        }
        classes.last_mut().expect("pushed").push(v);
    }
    classes
}

fn class_bound(classes: &[Vec<usize>], w: &[u64]) -> u64 {
    classes
        .iter()
        .map(|c| c.iter().map(|&v| w[v]).max().unwrap_or(0))
        .sum()
}

/// Options shared by the invariant computations.
#[derive(Clone, Copy)]
pub struct MisOptions<'a> {
    pub vertex_cap: usize,
    pub solver: &'a dyn MisSolver,
    /// Clique label per vertex (context index for exclusivity graphs).
    pub clique_partition: Option<&'a [usize]>,
    pub parallel: bool,
}

impl Default for MisOptions<'_> {
    fn default() -> Self {
        MisOptions {
            vertex_cap: DEFAULT_VERTEX_CAP,
            solver: &BranchAndBound,
            clique_partition: None,
            parallel: true,
        }
    }
}

impl<'a> MisOptions<'a> {
    pub fn with_partition(mut self, part: &'a [usize]) -> Self {
        self.clique_partition = Some(part);
        self
    }

    fn check_cap(&self, g: &Graph) -> Result<()> {
        if g.num_vertices() > self.vertex_cap {
            return Err(Error::CapExceeded {
                what: "graph vertex count",
                size: g.num_vertices() as u128,
                cap: self.vertex_cap as u128,
            });
        }
        Ok(())
    }
}

/// Scales nonnegative rational weights to integers by their common denominator.
fn integer_weights(weights: &[Rational]) -> Result<(Vec<u64>, BigInt)> {
    if let Some(w) = weights.iter().find(|w| w.is_negative()) {
        return Err(Error::domain(format!("negative vertex weight {w}")));
    }
    let den = weights
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let scaled = weights
        .iter()
        .map(|w| {
            (w.numer() * (&den / w.denom()))
                .to_u64()
                .ok_or_else(|| Error::domain("vertex weights too large for the exact solver"))
        })
        .collect::<Result<Vec<u64>>>()?;
    let total: u128 = scaled.iter().map(|&w| w as u128).sum();
    if total > u64::MAX as u128 {
        return Err(Error::domain("vertex weights too large for the exact solver"));
    }
    Ok((scaled, den))
}

/// `α(G, w)`: maximum total weight of an independent set (unit weights when
/// `weights` is `None`).
pub fn independence_number(
    g: &Graph,
    weights: Option<&[Rational]>,
    opts: &MisOptions<'_>,
) -> Result<MisResult> {
    opts.check_cap(g)?;
    let (int_w, den) = match weights {
        Some(w) => {
            if w.len() != g.num_vertices() {
                return Err(Error::domain(format!(
                    "{} weights for {} vertices",
                    w.len(),
                    g.num_vertices()
                )));
            }
            let (iw, den) = integer_weights(w)?;
            (Some(iw), den)
        }
        None => (None, BigInt::one()),
    };
    let problem = MisProblem {
        graph: g,
        weights: int_w.as_deref(),
        clique_partition: opts.clique_partition,
        candidates: None,
        target: None,
    };
    let (value, witness) = opts.solver.solve(&problem)?;
    debug_assert!(g.is_independent(&witness));
    Ok(MisResult {
        value: Rational::new(BigInt::from(value), den),
        witness,
    })
}

/// Upper bound on the independence number of `G[p]` from the clique partition.
fn partition_bound(p: &BitSet, part: Option<&[usize]>) -> Option<u64> {
    part.map(|part| {
        let mut labels: Vec<usize> = p.iter().map(|v| part[v]).collect();
        labels.sort_unstable();
        labels.dedup();
        labels.len() as u64
    })
}

fn degree_of(g: &Graph, v: usize, opts: &MisOptions<'_>) -> Result<MisResult> {
    let p = g.non_neighbors(v);
    let problem = MisProblem {
        graph: g,
        weights: None,
        clique_partition: opts.clique_partition,
        candidates: Some(&p),
        target: partition_bound(&p, opts.clique_partition),
    };
    let (value, mut witness) = opts.solver.solve(&problem)?;
    witness.push(v);
    witness.sort_unstable();
    debug_assert!(g.is_independent(&witness));
    Ok(MisResult {
        value: Rational::from_integer(BigInt::from(value + 1)),
        witness,
    })
}

/// Size of the largest independent set containing `v`.
pub fn independence_degree(g: &Graph, v: usize, opts: &MisOptions<'_>) -> Result<MisResult> {
    opts.check_cap(g)?;
    if v >= g.num_vertices() {
        return Err(Error::domain(format!(
            "vertex {v} not in graph of {} vertices",
            g.num_vertices()
        )));
    }
    degree_of(g, v, opts)
}

/// The minimum independence degree over all vertices and a vertex attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalIndependence {
    pub value: usize,
    pub vertex: usize,
    /// Largest independent set through `vertex`.
    pub witness: Vec<usize>,
}

pub fn minimal_independence_number(
    g: &Graph,
    opts: &MisOptions<'_>,
) -> Result<MinimalIndependence> {
    opts.check_cap(g)?;
    if g.num_vertices() == 0 {
        return Err(Error::domain("minimal independence number of the empty graph"));
    }
    let per_vertex = |v: usize| degree_of(g, v, opts).map(|r| (r.size(), v, r.witness));
    let all: Vec<(usize, usize, Vec<usize>)> = if opts.parallel {
        (0..g.num_vertices())
            .into_par_iter()
            .map(per_vertex)
            .collect::<Result<_>>()?
    } else {
        (0..g.num_vertices()).map(per_vertex).collect::<Result<_>>()?
    };
    let (value, vertex, witness) = all
        .into_iter()
        .min_by_key(|(d, v, _)| (*d, *v))
        .expect("nonempty graph");
    Ok(MinimalIndependence {
        value,
        vertex,
        witness,
    })
}

/// Finds a vertex whose independence degree is below `threshold`, scanning in
/// ascending non-neighbourhood size and stopping at the first hit.
pub fn min_degree_below(
    g: &Graph,
    threshold: usize,
    opts: &MisOptions<'_>,
) -> Result<Option<(usize, MisResult)>> {
    opts.check_cap(g)?;
    let mut verts: Vec<(usize, usize)> = (0..g.num_vertices())
        .map(|v| (g.num_vertices() - 1 - g.degree(v), v))
        .collect();
    verts.sort_unstable();
    for (_, v) in verts {
        let r = degree_of(g, v, opts)?;
        if r.size() < threshold {
            return Ok(Some((v, r)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn small_graphs() {
        let opts = MisOptions::default();
        assert_eq!(independence_number(&Graph::new(5), None, &opts).unwrap().size(), 5);
        assert_eq!(independence_number(&Graph::complete(4), None, &opts).unwrap().size(), 1);
        assert_eq!(independence_number(&cycle(5), None, &opts).unwrap().size(), 2);
        assert_eq!(independence_number(&cycle(8), None, &opts).unwrap().size(), 4);
        assert_eq!(independence_number(&Graph::new(0), None, &opts).unwrap().size(), 0);
    }

    #[test]
    fn weighted_path() {
        // Path 0-1-2 with a heavy middle vertex.
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let w = [int(1), int(3), int(1)];
        let r = independence_number(&g, Some(&w), &MisOptions::default()).unwrap();
        assert_eq!(r.value, int(3));
        assert_eq!(r.witness, vec![1]);
        let half = [crate::rational::frac(1, 2), int(0), crate::rational::frac(2, 3)];
        let r = independence_number(&g, Some(&half), &MisOptions::default()).unwrap();
        assert_eq!(r.value, crate::rational::frac(7, 6));
    }

    #[test]
    fn degrees() {
        let opts = MisOptions::default();
        let e = Graph::new(4);
        assert_eq!(independence_degree(&e, 2, &opts).unwrap().size(), 4);
        let k = Graph::complete(4);
        for v in 0..4 {
            let r = independence_degree(&k, v, &opts).unwrap();
            assert_eq!(r.size(), 1);
            assert_eq!(r.witness, vec![v]);
        }
        assert!(independence_degree(&k, 9, &opts).is_err());
        // Star: the centre has degree 1, leaves 3.
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]);
        let m = minimal_independence_number(&star, &opts).unwrap();
        assert_eq!((m.value, m.vertex), (1, 0));
        assert!(minimal_independence_number(&Graph::new(0), &opts).is_err());
        let hit = min_degree_below(&star, 3, &opts).unwrap().unwrap();
        assert_eq!(hit.0, 0);
        assert!(min_degree_below(&Graph::new(3), 3, &opts).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let opts = MisOptions {
            vertex_cap: 3,
            ..MisOptions::default()
        };
        let err = independence_number(&Graph::new(4), None, &opts).unwrap_err();
        assert!(err.is_cap_exceeded());
    }

    #[test]
    fn negative_weights_rejected() {
        let g = Graph::new(1);
        assert!(independence_number(&g, Some(&[int(-1)]), &MisOptions::default()).is_err());
    }

    #[test]
    fn brute_force_prefers_lexicographically_smallest() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]);
        let (v, set) = BruteForce.solve(&MisProblem::new(&g)).unwrap();
        assert_eq!(v, 2);
        assert_eq!(set, vec![0, 2]);
    }

    #[test]
    fn partition_hint_respected() {
        // Two triangles joined by one edge; partition = the triangles.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]);
        let part = [0, 0, 0, 1, 1, 1];
        let opts = MisOptions::default().with_partition(&part);
        assert_eq!(independence_number(&g, None, &opts).unwrap().size(), 2);
    }
}
