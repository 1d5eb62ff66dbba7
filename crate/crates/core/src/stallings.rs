//! Stallings graphs of finitely generated subgroups of free groups.
//!
//! Edges are stored once, with a positive label; an edge `u -g-> v` reads
//! `g` leaving `u` and `g⁻¹` leaving `v`. Vertex 0 is the basepoint.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub generator: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreGraph {
    vertices: usize,
    edges: Vec<Edge>,
    folded: bool,
}

/// Order in which the folding worklist is drained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FoldOrder {
    #[default]
    Fifo,
    Lifo,
}

/// One half-edge: `(edge id, read backwards)`.
type Half = (usize, bool);

impl CoreGraph {
    pub fn single_vertex() -> Self {
        Self {
            vertices: 1,
            edges: Vec::new(),
            folded: true,
        }
    }

    /// One closed path per word, all through the basepoint. Empty words
    /// contribute nothing.
    pub fn bouquet(words: &[Word]) -> Self {
        let mut g = Self::single_vertex();
        for w in words {
            g.attach_loop(w);
        }
        g.folded = g.edges.is_empty();
        g
    }

    fn attach_loop(&mut self, w: &Word) {
        let n = w.len();
        let mut at = 0;
        for (i, &l) in w.letters().iter().enumerate() {
            let next = if i + 1 == n {
                0
            } else {
                self.vertices += 1;
                self.vertices - 1
            };
            self.push_letter(at, next, l);
            at = next;
        }
    }

    fn push_letter(&mut self, from: usize, to: usize, l: Letter) {
        let (from, to) = if l.is_inverse() {
            (to, from)
        } else {
            (from, to)
        };
        self.edges.push(Edge {
            from,
            to,
            generator: l.generator(),
        });
    }

    /// `core` with each word attached as a further loop at the basepoint,
    /// without folding.
    pub fn wedge(core: &CoreGraph, loops: &[Word]) -> Self {
        let mut g = core.clone();
        for w in loops {
            g.attach_loop(w);
        }
        g.folded = false;
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_folded(&self) -> bool {
        self.folded
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    /// Labels readable leaving `v`, with the vertex reached.
    fn star(&self, v: usize) -> Vec<(Letter, usize)> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.from == v {
                out.push((Letter::pos(e.generator), e.to));
            }
            if e.to == v {
                out.push((Letter::neg(e.generator), e.from));
            }
        }
        out
    }

    fn transitions(&self) -> HashMap<(usize, Letter), usize> {
        let mut map = HashMap::with_capacity(2 * self.edges.len());
        for e in &self.edges {
            map.insert((e.from, Letter::pos(e.generator)), e.to);
            map.insert((e.to, Letter::neg(e.generator)), e.from);
        }
        map
    }

    pub fn fold(&self) -> CoreGraph {
        self.fold_with(FoldOrder::default())
    }

    /// Identifies pairs of edges with a common endpoint and a common label
    /// read from it until none remain.
    pub fn fold_with(&self, order: FoldOrder) -> CoreGraph {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        let mut alive = vec![true; self.edges.len()];
        let mut star: Vec<Vec<Half>> = vec![Vec::new(); self.vertices];
        for (i, e) in self.edges.iter().enumerate() {
            star[e.from].push((i, false));
            star[e.to].push((i, true));
        }
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut work: VecDeque<usize> = (0..self.vertices).collect();
        let edges = &self.edges;
        'work: while let Some(v) = match order {
            FoldOrder::Fifo => work.pop_front(),
            FoldOrder::Lifo => work.pop_back(),
        } {
            let v = find(&mut parent, v);
            // label -> (edge id, far endpoint)
            let mut seen: HashMap<Letter, (usize, usize)> = HashMap::new();
            let halves = star[v].clone();
            for (id, back) in halves {
                if !alive[id] {
                    continue;
                }
                let e = edges[id];
                let label = Letter::new(e.generator, back);
                let other = find(&mut parent, if back { e.from } else { e.to });
                match seen.get(&label) {
                    None => {
                        seen.insert(label, (id, other));
                    }
                    // a loop dropped earlier in this scan may still be recorded
                    Some(&(first_id, _)) if !alive[first_id] => {
                        seen.insert(label, (id, other));
                    }
                    Some(&(_, first)) => {
                        alive[id] = false;
                        let first = find(&mut parent, first);
                        if first != other {
                            let (keep, gone) = if star[first].len() >= star[other].len() {
                                (first, other)
                            } else {
                                (other, first)
                            };
                            // keep the basepoint's class rooted at 0
                            let (keep, gone) = if find(&mut parent, 0) == gone {
                                (gone, keep)
                            } else {
                                (keep, gone)
                            };
                            parent[gone] = keep;
                            let moved = std::mem::take(&mut star[gone]);
                            star[keep].extend(moved);
                            work.push_back(keep);
                            work.push_back(v);
                            continue 'work;
                        }
                    }
                }
            }
        }

        let mut index = vec![usize::MAX; self.vertices];
        let mut count = 0;
        let root = find(&mut parent, 0);
        index[root] = 0;
        count += 1;
        for v in 0..self.vertices {
            let r = find(&mut parent, v);
            if index[r] == usize::MAX {
                index[r] = count;
                count += 1;
            }
        }
        let mut out: Vec<Edge> = edges
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(e, _)| Edge {
                from: index[find(&mut parent, e.from)],
                to: index[find(&mut parent, e.to)],
                generator: e.generator,
            })
            .collect();
        out.sort_unstable();
        CoreGraph {
            vertices: count,
            edges: out,
            folded: true,
        }
    }

    /// Degree of `v`; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.from == v) as usize + (e.to == v) as usize)
            .sum()
    }

    pub fn basepoint_degree(&self) -> usize {
        self.degree(0)
    }

    /// Repeatedly deletes vertices other than the basepoint of degree at
    /// most one.
    pub fn trim_to_core(&self) -> CoreGraph {
        let mut degree = vec![0usize; self.vertices];
        for e in &self.edges {
            degree[e.from] += 1;
            degree[e.to] += 1;
        }
        let mut removed = vec![false; self.vertices];
        let mut alive = vec![true; self.edges.len()];
        let mut stack: Vec<usize> = (1..self.vertices).filter(|&v| degree[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if removed[v] {
                continue;
            }
            removed[v] = true;
            for (i, e) in self.edges.iter().enumerate() {
                if alive[i] && (e.from == v || e.to == v) {
                    alive[i] = false;
                    degree[e.from] -= 1;
                    degree[e.to] -= 1;
                    let other = if e.from == v { e.to } else { e.from };
                    if other != 0 && !removed[other] && degree[other] <= 1 {
                        stack.push(other);
                    }
                }
            }
        }
        let mut index = vec![usize::MAX; self.vertices];
        let mut count = 0;
        for v in 0..self.vertices {
            if !removed[v] {
                index[v] = count;
                count += 1;
            }
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(e, _)| Edge {
                from: index[e.from],
                to: index[e.to],
                generator: e.generator,
            })
            .collect();
        edges.sort_unstable();
        CoreGraph {
            vertices: count,
            edges,
            folded: self.folded,
        }
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices];
        let mut adjacency = vec![Vec::new(); self.vertices];
        for e in &self.edges {
            adjacency[e.from].push(e.to);
            adjacency[e.to].push(e.from);
        }
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `|E| − |V| + 1`, the rank of the fundamental group.
    pub fn rank(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.edges.len() + 1 - self.vertices)
    }

    /// Whether the reduced form of `w` reads a closed path at the
    /// basepoint. Unfolded graphs are folded first.
    pub fn membership(&self, w: &Word) -> bool {
        if !self.folded {
            return self.fold().membership(w);
        }
        let t = self.transitions();
        let mut at = 0;
        for &l in w.free_reduce().letters() {
            match t.get(&(at, l)) {
                Some(&next) => at = next,
                None => return false,
            }
        }
        at == 0
    }

    /// Signed letters of `alphabet` not read by any edge leaving the
    /// basepoint, in alphabet order.
    pub fn unused_basepoint_labels(&self, alphabet: &Alphabet) -> Vec<Letter> {
        let used: Vec<Letter> = self.star(0).into_iter().map(|(l, _)| l).collect();
        alphabet
            .signed_letters()
            .filter(|l| !used.contains(l))
            .collect()
    }

    /// The first `count` unused basepoint labels.
    pub fn take_unused_labels(&self, alphabet: &Alphabet, count: usize) -> Result<Vec<Letter>> {
        let unused = self.unused_basepoint_labels(alphabet);
        if unused.len() < count {
            return Err(Error::DegreeBoundViolated {
                requested: count,
                available: unused.len(),
            });
        }
        Ok(unused[..count].to_vec())
    }

    /// Relabels vertices in breadth-first order from the basepoint,
    /// exploring labels in alphabet order. Two folded graphs are isomorphic
    /// as based labelled graphs exactly when their canonical forms are
    /// equal.
    pub fn canonical(&self) -> CoreGraph {
        let mut stars: Vec<Vec<(Letter, usize)>> =
            (0..self.vertices).map(|v| self.star(v)).collect();
        for s in &mut stars {
            s.sort_unstable();
        }
        let mut index = vec![usize::MAX; self.vertices];
        let mut queue = VecDeque::from([0]);
        index[0] = 0;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &(_, u) in &stars[v] {
                if index[u] == usize::MAX {
                    index[u] = count;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        for i in &mut index {
            if *i == usize::MAX {
                *i = count;
                count += 1;
            }
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                from: index[e.from],
                to: index[e.to],
                generator: e.generator,
            })
            .collect();
        edges.sort_unstable();
        CoreGraph {
            vertices: self.vertices,
            edges,
            folded: self.folded,
        }
    }
}

/// Whether `images` freely generate a subgroup of rank `images.len()`,
/// i.e. the map sending the i-th basis element to `images[i]` is injective.
pub fn is_monomorphism(images: &[Word]) -> bool {
    let g = CoreGraph::bouquet(images).fold();
    g.rank().is_ok_and(|r| r == images.len())
}

/// Whether attaching `new_loops` at the basepoint of `core` needs no fold
/// at the basepoint: every loop is cyclically reduced and nonempty, and the
/// labels they read leaving the basepoint (first letter, inverse of last
/// letter) are pairwise distinct and unused by `core`.
pub fn wedge_extension_check(core: &CoreGraph, new_loops: &[Word]) -> bool {
    let mut labels: Vec<Letter> = core.star(0).into_iter().map(|(l, _)| l).collect();
    for w in new_loops {
        let (Some(first), Some(last)) = (w.first(), w.last()) else {
            return false;
        };
        if !w.is_cyclically_reduced() {
            return false;
        }
        labels.push(first);
        labels.push(last.inverse());
    }
    let n = labels.len();
    labels.sort_unstable();
    labels.dedup();
    labels.len() == n
}
