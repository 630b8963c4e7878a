use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

use super::{Axis, CosetTree, CosetVertex, DhatDistance, TreeVertex};
use crate::dihedral::{DihedralGroup, GarsideForm};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// All vertices of `T` within `radius` edges of `1_•`.
#[derive(Debug)]
pub struct TreeBall {
    tree: CosetTree,
    radius: u32,
    vertices: Vec<TreeVertex>,
    depth: Vec<u32>,
    index: HashMap<TreeVertex, usize>,
    adjacency: Vec<Vec<usize>>,
    coned: OnceLock<ConedBall>,
}

#[derive(Debug)]
struct ConedBall {
    adjacency: Vec<Vec<usize>>,
    axes: Vec<Axis>,
}

impl TreeBall {
    pub fn build(group: DihedralGroup, radius: u32, budget: usize) -> Result<TreeBall> {
        let tree = CosetTree::new(group);
        let base = TreeVertex::Coset(CosetVertex::base());
        let mut vertices = vec![base.clone()];
        let mut depth = vec![0];
        let mut index = HashMap::from([(base, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            if depth[i] >= radius {
                continue;
            }
            for nb in tree.neighbours(&vertices[i]) {
                if index.contains_key(&nb) {
                    continue;
                }
                if vertices.len() >= budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                index.insert(nb.clone(), vertices.len());
                vertices.push(nb);
                depth.push(depth[i] + 1);
                queue.push_back(vertices.len() - 1);
            }
        }
        // Incidences are recomputed from the algebra rather than copied from the search tree,
        // so acyclicity below is a real check.
        let mut edges = BTreeSet::new();
        for (i, v) in vertices.iter().enumerate() {
            for nb in tree.neighbours(v) {
                if let Some(&j) = index.get(&nb) {
                    edges.insert((i.min(j), i.max(j)));
                }
            }
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(i, j) in &edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        Ok(TreeBall { tree, radius, vertices, depth, index, adjacency, coned: OnceLock::new() })
    }

    pub fn tree(&self) -> &CosetTree {
        &self.tree
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertices(&self) -> &[TreeVertex] {
        &self.vertices
    }

    pub fn cosets(&self) -> impl Iterator<Item = &CosetVertex> {
        self.vertices.iter().filter_map(|v| match v {
            TreeVertex::Coset(c) => Some(c),
            TreeVertex::Simplex(_) => None,
        })
    }

    pub fn depth_of(&self, v: &TreeVertex) -> Option<u32> {
        self.index.get(v).map(|&i| self.depth[i])
    }

    pub fn contains(&self, v: &TreeVertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nbs) in self.adjacency.iter().enumerate() {
            out.extend(nbs.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_acyclic(&self) -> bool {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for &j in &self.adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == self.vertices.len() && self.edge_count() + 1 == self.vertices.len()
    }

    /// Valences of vertices strictly inside the ball.
    pub fn interior_valences(&self) -> BTreeSet<usize> {
        (0..self.vertices.len())
            .filter(|&i| self.depth[i] < self.radius)
            .map(|i| self.adjacency[i].len())
            .collect()
    }

    fn require(&self, v: &TreeVertex) -> Result<usize> {
        self.index.get(v).copied().ok_or_else(|| Error::VertexOutsideBall(v.to_string()))
    }

    pub fn distance(&self, x: &TreeVertex, y: &TreeVertex) -> Result<u64> {
        self.require(x)?;
        self.require(y)?;
        Ok(self.tree.distance(x, y))
    }

    pub fn geodesic(&self, x: &TreeVertex, y: &TreeVertex) -> Result<Vec<TreeVertex>> {
        self.require(x)?;
        self.require(y)?;
        let path = self.tree.geodesic(x, y);
        for v in &path {
            self.require(v)?;
        }
        Ok(path)
    }

    /// `min_v d(v, g·v)` over the ball.
    pub fn translation_length(&self, g: &GarsideForm) -> Result<u64> {
        let need = 2 * g.atom_count() as u32 + 4;
        if self.radius < need {
            return Err(Error::BallTooSmall {
                radius: self.radius,
                reason: format!("translation length needs radius >= {need}"),
            });
        }
        let (best, at) = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (self.tree.distance(v, &self.tree.act_vertex(g, v)), i))
            .min()
            .expect("ball contains 1_•");
        if self.depth[at] >= self.radius {
            return Err(Error::BallTooSmall {
                radius: self.radius,
                reason: "minimizing vertex lies on the boundary".into(),
            });
        }
        Ok(best)
    }

    pub fn axis_of(&self, g: &GarsideForm) -> Result<Vec<TreeVertex>> {
        let path = self.tree.axis_of(g)?;
        for v in &path {
            if !self.contains(v) {
                return Err(Error::BallTooSmall {
                    radius: self.radius,
                    reason: format!("axis vertex {v} is outside"),
                });
            }
        }
        Ok(path)
    }

    pub fn axes_through(&self, v: &CosetVertex) -> Result<BTreeSet<Axis>> {
        self.require(&TreeVertex::Coset(v.clone()))?;
        Ok(self.tree.axes_through(v).into_iter().collect())
    }

    fn coned(&self) -> &ConedBall {
        self.coned.get_or_init(|| {
            let n = self.vertices.len();
            let mut adjacency = self.adjacency.clone();
            let mut apex: HashMap<Axis, usize> = HashMap::new();
            let mut axes = Vec::new();
            for (i, v) in self.vertices.iter().enumerate() {
                let TreeVertex::Coset(c) = v else { continue };
                let at = self.tree.simplices_at(c);
                for axis in self.tree.axes_through(c) {
                    let id = *apex.entry(axis.clone()).or_insert_with(|| {
                        axes.push(axis.clone());
                        adjacency.push(Vec::new());
                        n + axes.len() - 1
                    });
                    let mut attach = vec![i];
                    attach.extend(
                        at.iter().filter_map(|s| self.index.get(&TreeVertex::Simplex(s.clone()))),
                    );
                    for j in attach {
                        if !adjacency[id].contains(&j) {
                            adjacency[id].push(j);
                            adjacency[j].push(id);
                        }
                    }
                }
            }
            ConedBall { adjacency, axes }
        })
    }

    /// Number of distinct axes meeting the ball.
    pub fn axis_count(&self) -> usize {
        self.coned().axes.len()
    }

    /// Breadth-first distance in the cone-off graph restricted to the ball.
    pub fn coned_bfs_distance(&self, x: &TreeVertex, y: &TreeVertex) -> Result<u64> {
        let s = self.require(x)?;
        let t = self.require(y)?;
        let adj = &self.coned().adjacency;
        let mut dist = vec![u64::MAX; adj.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            if i == t {
                return Ok(dist[i]);
            }
            for &j in &adj[i] {
                if dist[j] == u64::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        Ok(dist[t])
    }

    /// Interval-cover bounds, marked exact when the truncated cone-off search agrees.
    pub fn dhat_distance(&self, x: &CosetVertex, y: &CosetVertex) -> Result<DhatDistance> {
        let (vx, vy) = (TreeVertex::Coset(x.clone()), TreeVertex::Coset(y.clone()));
        self.geodesic(&vx, &vy)?;
        let mut d = self.tree.dhat(x, y);
        let bfs = self.coned_bfs_distance(&vx, &vy)?;
        d.exact = bfs == d.upper;
        d.upper = d.upper.min(bfs);
        Ok(d)
    }

    /// Graphviz rendering: cosets as circles, simplices as squares.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph T {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = match v {
                TreeVertex::Coset(_) => "circle",
                TreeVertex::Simplex(_) => "square",
            };
            let _ = writeln!(s, "  v{i} [label=\"{v}\", shape={shape}];");
        }
        for (i, j) in self.edges() {
            let _ = writeln!(s, "  v{i} -- v{j};");
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeword::parse;

    #[test]
    fn radius_two_has_seven_vertices() {
        let b = TreeBall::build(DihedralGroup::new(3).unwrap(), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(b.vertices().len(), 7);
        assert!(b.is_acyclic());
        let b0 = TreeBall::build(DihedralGroup::new(3).unwrap(), 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(b0.vertices().len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let err = TreeBall::build(DihedralGroup::new(3).unwrap(), 8, 10).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 10 });
    }

    #[test]
    fn ball_translation_length_matches_formula() {
        let g = DihedralGroup::new(3).unwrap();
        let b = TreeBall::build(g, 8, DEFAULT_BUDGET).unwrap();
        for w in ["a", "a b", "a b a", "a b^-1", "b a^2"] {
            let f = g.normal_form(&parse(w).unwrap());
            assert_eq!(b.translation_length(&f).unwrap(), b.tree().translation_length(&f), "{w}");
        }
    }

    #[test]
    fn dot_output_shapes() {
        let b = TreeBall::build(DihedralGroup::new(3).unwrap(), 2, DEFAULT_BUDGET).unwrap();
        let dot = b.to_dot();
        assert_eq!(dot.matches("shape=circle").count(), 5);
        assert_eq!(dot.matches("shape=square").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 6);
    }
}
