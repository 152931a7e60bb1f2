//! The implicit directed multigraph Sch(G ↻ Ω, A).
//!
//! Generators are materialized as permutation tables, so an edge lookup is a
//! single array read. Traversals work on bitmap frontiers ([`PointSet`]).

mod pointset;

use std::sync::{Arc, OnceLock};

pub use pointset::PointSet;

use crate::action::{ActionInstance, FamilySpec};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::random::GeneratorMultiset;

type Tables = Arc<Vec<Box<[u32]>>>;

/// Outcome of a radius search: the radius, or no covering up to the cutoff
/// (which includes the disconnected case).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reach {
    Within(u32),
    NotWithinCutoff,
}

impl Reach {
    pub fn radius(self) -> Option<u32> {
        match self {
            Reach::Within(r) => Some(r),
            Reach::NotWithinCutoff => None,
        }
    }
}

/// Cutoff used when callers do not supply one: 4n.
pub fn default_cutoff(degree: usize) -> u32 {
    u32::try_from(degree.saturating_mul(4)).unwrap_or(u32::MAX)
}

/// Sch(G ↻ Ω, A): vertex set `0..degree`, an edge x -> table[x] per generator.
#[derive(Debug)]
pub struct SchreierGraph {
    family: Option<FamilySpec>,
    degree: usize,
    gens: Tables,
    reverse: OnceLock<Tables>,
}

impl Clone for SchreierGraph {
    fn clone(&self) -> Self {
        let reverse = OnceLock::new();
        if let Some(r) = self.reverse.get() {
            let _ = reverse.set(r.clone());
        }
        SchreierGraph { family: self.family, degree: self.degree, gens: self.gens.clone(), reverse }
    }
}

fn is_permutation(table: &[u32]) -> bool {
    let mut seen = vec![false; table.len()];
    table.iter().all(|&y| {
        let y = y as usize;
        y < seen.len() && !std::mem::replace(&mut seen[y], true)
    })
}

fn inverse_table(table: &[u32]) -> Box<[u32]> {
    let mut inv = vec![0u32; table.len()];
    for (x, &y) in table.iter().enumerate() {
        inv[y as usize] = x as u32;
    }
    inv.into()
}

/// Builds the Schreier graph of `instance` with generators `a`.
pub fn build_graph(instance: &ActionInstance, a: &GeneratorMultiset) -> Result<SchreierGraph> {
    SchreierGraph::new(instance, a)
}

impl SchreierGraph {
    pub fn new(instance: &ActionInstance, a: &GeneratorMultiset) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptyGeneratorSet);
        }
        for g in a {
            instance.validate(g)?;
        }
        let tables = par::map_range(Exec::default(), a.k(), |i| {
            instance.materialize(&a.elements()[i]).map(Vec::into_boxed_slice)
        });
        let gens = tables.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(SchreierGraph {
            family: Some(instance.spec()),
            degree: instance.degree(),
            gens: Arc::new(gens),
            reverse: OnceLock::new(),
        })
    }

    /// A graph from raw permutation tables; every table must be a
    /// permutation of `0..degree`.
    pub fn from_tables(degree: usize, tables: Vec<Vec<u32>>) -> Result<Self> {
        if tables.is_empty() {
            return Err(Error::EmptyGeneratorSet);
        }
        if tables.iter().any(|t| t.len() != degree || !is_permutation(t)) {
            return Err(Error::InvalidFamilyParams("generator table is not a permutation".into()));
        }
        Ok(SchreierGraph {
            family: None,
            degree,
            gens: Arc::new(tables.into_iter().map(Vec::into_boxed_slice).collect()),
            reverse: OnceLock::new(),
        })
    }

    pub fn family(&self) -> Option<FamilySpec> {
        self.family
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of generators k (the out-degree of every vertex).
    pub fn k(&self) -> usize {
        self.gens.len()
    }

    pub fn tables(&self) -> &[Box<[u32]>] {
        &self.gens
    }

    fn reverse_tables(&self) -> &Tables {
        self.reverse.get_or_init(|| {
            let inv = par::map_range(Exec::default(), self.gens.len(), |i| inverse_table(&self.gens[i]));
            Arc::new(inv)
        })
    }

    /// The graph with every edge reversed: generator tables replaced by
    /// their inverses. Distances satisfy d_rev(x, y) = d(y, x).
    pub fn reverse(&self) -> SchreierGraph {
        let reverse = OnceLock::new();
        let _ = reverse.set(self.gens.clone());
        SchreierGraph {
            family: self.family,
            degree: self.degree,
            gens: self.reverse_tables().clone(),
            reverse,
        }
    }

    /// X^A: the union of the images of `x` under every generator.
    pub fn image_union(&self, x: &PointSet) -> PointSet {
        let mut out = PointSet::new(self.degree);
        self.image_union_into(x, &mut out);
        out
    }

    /// Writes X^A into `out`, which is cleared first.
    pub fn image_union_into(&self, x: &PointSet, out: &mut PointSet) {
        debug_assert_eq!(x.degree(), self.degree);
        out.clear();
        if x.is_full() {
            *out = PointSet::full(self.degree);
            return;
        }
        let points: Vec<u32> = x.iter().collect();
        let words = out.words_mut();
        for table in self.gens.iter() {
            for &p in &points {
                let y = table[p as usize] as usize;
                words[y >> 6] |= 1 << (y & 63);
            }
        }
        out.recount();
    }

    /// The sphere S_A(ω, t): endpoints of walks of length exactly t.
    pub fn sphere(&self, omega: u32, t: u32) -> PointSet {
        let mut cur = PointSet::singleton(self.degree, omega);
        let mut next = PointSet::new(self.degree);
        for _ in 0..t {
            if cur.is_full() {
                break;
            }
            self.image_union_into(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        cur
    }

    /// The ball: points at distance at most t from ω.
    pub fn ball(&self, omega: u32, t: u32) -> PointSet {
        let mut bfs = Bfs::new(self, omega);
        for _ in 0..t {
            if !bfs.step() {
                break;
            }
        }
        bfs.visited
    }

    /// Least t with ball(ω, t) = Ω, found by BFS with early exit.
    pub fn eccentricity(&self, omega: u32, cutoff: u32) -> Reach {
        self.bfs_from(omega, cutoff).eccentricity
    }

    /// Full BFS summary from ω, stopping at `cutoff` levels.
    pub fn bfs_from(&self, omega: u32, cutoff: u32) -> BfsSummary {
        let mut bfs = Bfs::new(self, omega);
        let mut level_sizes = vec![1usize];
        loop {
            if bfs.visited.is_full() {
                return BfsSummary {
                    eccentricity: Reach::Within(bfs.level),
                    reached: bfs.visited.len(),
                    farthest: bfs.frontier.last().copied().unwrap_or(omega),
                    level_sizes,
                };
            }
            if bfs.level >= cutoff || !bfs.step() {
                return BfsSummary {
                    eccentricity: Reach::NotWithinCutoff,
                    reached: bfs.visited.len(),
                    farthest: bfs.frontier.last().copied().unwrap_or(omega),
                    level_sizes,
                };
            }
            level_sizes.push(bfs.frontier.len());
        }
    }

    /// Distances from ω (`u32::MAX` where unreachable).
    pub fn distances_from(&self, omega: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.degree];
        dist[omega as usize] = 0;
        let mut bfs = Bfs::new(self, omega);
        while bfs.step() {
            for &y in &bfs.frontier {
                dist[y as usize] = bfs.level;
            }
        }
        dist
    }

    /// Least t with S_A(ω, t) = Ω.
    ///
    /// Sphere sizes never shrink and the sequence of spheres is eventually
    /// periodic; a repeated non-full sphere (Brent cycle detection) proves
    /// that no radius works, so the cutoff is rarely what stops the search.
    pub fn covering_radius(&self, omega: u32, cutoff: u32) -> Reach {
        let mut cur = PointSet::singleton(self.degree, omega);
        let mut next = PointSet::new(self.degree);
        let mut anchor = cur.clone();
        let (mut power, mut lambda) = (1u32, 0u32);
        let mut t = 0u32;
        loop {
            if cur.is_full() {
                return Reach::Within(t);
            }
            if t >= cutoff {
                return Reach::NotWithinCutoff;
            }
            self.image_union_into(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
            t += 1;
            lambda += 1;
            if !cur.is_full() && cur.len() == anchor.len() && cur.words() == anchor.words() {
                return Reach::NotWithinCutoff;
            }
            if lambda == power {
                anchor.clone_from(&cur);
                power = power.saturating_mul(2);
                lambda = 0;
            }
        }
    }

    /// Strong connectivity. In a finite group s^{-1} = s^{ord(s)-1}, so the
    /// forward-reachable set of 0 is its ⟨A⟩-orbit; one BFS decides it.
    pub fn is_connected(&self) -> bool {
        matches!(self.eccentricity(0, u32::MAX), Reach::Within(_))
    }
}

/// Result of [`SchreierGraph::bfs_from`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsSummary {
    pub eccentricity: Reach,
    pub reached: usize,
    /// A vertex in the last nonempty BFS level.
    pub farthest: u32,
    /// Sizes of the BFS levels (distance spheres), level 0 first.
    pub level_sizes: Vec<usize>,
}

/// Level-synchronous BFS over bitmap state. Each level gathers through every
/// generator table, walking the frontier in increasing point order.
struct Bfs<'g> {
    graph: &'g SchreierGraph,
    visited: PointSet,
    frontier: Vec<u32>,
    level: u32,
}

impl<'g> Bfs<'g> {
    fn new(graph: &'g SchreierGraph, omega: u32) -> Self {
        Bfs {
            graph,
            visited: PointSet::singleton(graph.degree, omega),
            frontier: vec![omega],
            level: 0,
        }
    }

    /// Expands one level; false when nothing new was reached.
    fn step(&mut self) -> bool {
        let mut next = PointSet::new(self.graph.degree);
        {
            let visited = self.visited.words();
            let fresh = next.words_mut();
            for table in self.graph.gens.iter() {
                for &x in &self.frontier {
                    let y = table[x as usize] as usize;
                    let (w, bit) = (y >> 6, 1u64 << (y & 63));
                    if visited[w] & bit == 0 {
                        fresh[w] |= bit;
                    }
                }
            }
        }
        next.recount();
        if next.is_empty() {
            return false;
        }
        self.visited.union_with(&next);
        self.frontier.clear();
        self.frontier.extend(next.iter());
        self.level += 1;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{build_action, GroupElement};

    fn cyclic_graph(m: u64, shifts: &[u64]) -> SchreierGraph {
        let inst = build_action(FamilySpec::CyclicRegular { m }).unwrap();
        let a = GeneratorMultiset::new(shifts.iter().map(|&s| GroupElement::Cyclic(s)).collect());
        build_graph(&inst, &a).unwrap()
    }

    fn set(n: usize, pts: &[u32]) -> PointSet {
        PointSet::from_points(n, pts.iter().copied())
    }

    #[test]
    fn build_examples() {
        let g = cyclic_graph(6, &[2, 3]);
        assert_eq!(&*g.tables()[0], &[2, 3, 4, 5, 0, 1]);
        assert_eq!(&*g.tables()[1], &[3, 4, 5, 0, 1, 2]);
        let loops = cyclic_graph(6, &[0]);
        assert!(loops.tables()[0].iter().enumerate().all(|(x, &y)| x as u32 == y));
        let dup = cyclic_graph(6, &[1, 1]);
        assert_eq!(dup.k(), 2);
        assert_eq!(dup.tables()[0], dup.tables()[1]);
        let inst = build_action(FamilySpec::CyclicRegular { m: 6 }).unwrap();
        assert!(matches!(
            build_graph(&inst, &GeneratorMultiset::new(vec![])),
            Err(Error::EmptyGeneratorSet)
        ));
        let wrong = GeneratorMultiset::new(vec![GroupElement::Affine { a: 1, b: 0 }]);
        assert!(matches!(build_graph(&inst, &wrong), Err(Error::FamilyMismatch { .. })));
    }

    #[test]
    fn image_union_examples() {
        let g = cyclic_graph(6, &[2, 3]);
        assert!(g.image_union(&PointSet::new(6)).is_empty());
        assert_eq!(g.image_union(&set(6, &[0])), set(6, &[2, 3]));
        assert!(g.image_union(&PointSet::full(6)).is_full());
    }

    #[test]
    fn sphere_and_ball_examples() {
        let g = cyclic_graph(6, &[2, 3]);
        assert_eq!(g.sphere(0, 0), set(6, &[0]));
        assert_eq!(g.sphere(0, 1), set(6, &[2, 3]));
        assert_eq!(g.sphere(0, 2), set(6, &[4, 5, 0]));
        assert_eq!(g.sphere(0, 3), set(6, &[0, 1, 2, 3]));
        // four terms from {2, 3} sum to 8..=12, which misses 1 mod 6
        assert_eq!(g.sphere(0, 4), set(6, &[0, 2, 3, 4, 5]));
        assert!(g.sphere(0, 5).is_full());
        assert_eq!(g.ball(0, 0), set(6, &[0]));
        assert_eq!(g.ball(0, 2), set(6, &[0, 2, 3, 4, 5]));
        assert!(g.ball(0, 3).is_full());
        assert_eq!(g.eccentricity(0, 100), Reach::Within(3));
        assert_eq!(g.covering_radius(0, 100), Reach::Within(5));
    }

    #[test]
    fn eccentricity_examples() {
        let id = cyclic_graph(5, &[0]);
        assert_eq!(id.eccentricity(0, 100), Reach::NotWithinCutoff);
        assert!(!id.is_connected());
        let cycle = cyclic_graph(10, &[1]);
        for w in 0..10 {
            assert_eq!(cycle.eccentricity(w, 100), Reach::Within(9));
        }
        assert_eq!(cycle.eccentricity(0, 8), Reach::NotWithinCutoff);
        assert!(cycle.is_connected());
    }

    #[test]
    fn covering_radius_examples() {
        // spheres alternate {1}, {0}, ... and never cover
        let c2 = cyclic_graph(2, &[1]);
        assert_eq!(c2.eccentricity(0, 8), Reach::Within(1));
        assert_eq!(c2.covering_radius(0, 1_000_000), Reach::NotWithinCutoff);
        // loops make spheres equal balls
        let g = cyclic_graph(12, &[0, 5, 7]);
        for w in 0..12 {
            assert_eq!(g.covering_radius(w, 100), g.eccentricity(w, 100));
        }
    }

    #[test]
    fn reverse_examples() {
        let g = cyclic_graph(6, &[2]);
        let r = g.reverse();
        assert_eq!(&*r.tables()[0], &[4, 5, 0, 1, 2, 3]);
        let rr = r.reverse();
        assert_eq!(rr.tables(), g.tables());
    }

    #[test]
    fn connectivity_of_even_shifts() {
        assert!(!cyclic_graph(8, &[2, 4, 6]).is_connected());
        assert!(cyclic_graph(8, &[2, 3]).is_connected());
    }

    #[test]
    fn from_tables_rejects_non_permutations() {
        assert!(SchreierGraph::from_tables(3, vec![vec![0, 0, 1]]).is_err());
        assert!(SchreierGraph::from_tables(3, vec![vec![0, 1]]).is_err());
        assert!(SchreierGraph::from_tables(3, vec![]).is_err());
        assert!(SchreierGraph::from_tables(3, vec![vec![2, 0, 1]]).is_ok());
    }

    #[test]
    fn bfs_summary_levels() {
        let g = cyclic_graph(6, &[2, 3]);
        let s = g.bfs_from(0, 100);
        assert_eq!(s.level_sizes, vec![1, 2, 2, 1]);
        assert_eq!(s.farthest, 1);
        assert_eq!(s.reached, 6);
        assert_eq!(g.distances_from(0), vec![0, 3, 1, 1, 2, 2]);
    }
}
