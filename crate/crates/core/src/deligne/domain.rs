use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use super::graph::{Coefficient, DefiningGraph, Dimension};
use super::PiMultiple;
use crate::error::{Error, Refusal, Result};

/// A vertex of the fundamental domain `K_Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DomainVertex {
    Empty,
    Gen(usize),
    /// `v_st` with `s < t`.
    Pair(usize, usize),
}

/// Which local group sits at `v_st`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairGroup {
    Dihedral(u32),
    Free,
}

/// `T_st`, spanned by `v_∅`, `v_s`, `v_st`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainTriangle {
    pub s: usize,
    pub t: usize,
    pub group: PairGroup,
    /// Angles at `v_∅`, `v_s`, `v_st`.
    pub angles: [PiMultiple; 3],
}

impl DomainTriangle {
    pub fn vertices(&self) -> [DomainVertex; 3] {
        let (i, j) = (self.s.min(self.t), self.s.max(self.t));
        [DomainVertex::Empty, DomainVertex::Gen(self.s), DomainVertex::Pair(i, j)]
    }
}

/// Angles of `T_st` at `v_∅`, `v_s`, `v_st`. A free pair carries `π/12`, the angle of `m = 6`.
pub fn triangle_angles(group: PairGroup) -> [PiMultiple; 3] {
    let apex = match group {
        PairGroup::Dihedral(m) => Ratio::new(1, 2 * i64::from(m)),
        PairGroup::Free => Ratio::new(1, 12),
    };
    let half = Ratio::new(1, 2);
    [half - apex, half, apex]
}

/// `K_Γ` with its metric data, possibly augmented at one `∞` pair.
#[derive(Debug, Clone, Serialize)]
pub struct DomainComplex {
    #[serde(skip)]
    graph: DefiningGraph,
    vertices: Vec<DomainVertex>,
    triangles: Vec<DomainTriangle>,
    free_pair: Option<(usize, usize)>,
}

impl DomainComplex {
    /// The complex for a 2-dimensional `Γ` of rank at least 3.
    pub fn build(graph: &DefiningGraph) -> Result<Self> {
        if graph.rank() < 3 {
            return Err(Error::Refused(Refusal::RankTooSmall));
        }
        match graph.dimension() {
            Dimension::Two => {}
            Dimension::Discrete => return Err(Error::Refused(Refusal::NotTwoDimensional)),
            Dimension::Spherical { triangle, .. } => return Err(Error::NotTwoDimensional(triangle)),
        }
        Ok(DomainComplex::assemble(graph.clone(), None))
    }

    /// `D_Γ^{st}`: identical to [`DomainComplex::build`] output when `m_st < ∞`.
    pub fn augmented(graph: &DefiningGraph, s: usize, t: usize) -> Self {
        let free = (s != t && !graph.coefficient(s, t).is_finite()).then(|| (s.min(t), s.max(t)));
        DomainComplex::assemble(graph.augment(s, t), free)
    }

    fn assemble(graph: DefiningGraph, free_pair: Option<(usize, usize)>) -> Self {
        let mut vertices = vec![DomainVertex::Empty];
        vertices.extend((0..graph.rank()).map(DomainVertex::Gen));
        let mut triangles = Vec::new();
        for (i, j, m) in graph.finite_edges() {
            vertices.push(DomainVertex::Pair(i, j));
            let group =
                if free_pair == Some((i, j)) { PairGroup::Free } else { PairGroup::Dihedral(m) };
            for (s, t) in [(i, j), (j, i)] {
                triangles.push(DomainTriangle { s, t, group, angles: triangle_angles(group) });
            }
        }
        DomainComplex { graph, vertices, triangles, free_pair }
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn vertices(&self) -> &[DomainVertex] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[DomainTriangle] {
        &self.triangles
    }

    pub fn free_pair(&self) -> Option<(usize, usize)> {
        self.free_pair
    }

    pub fn pair_group(&self, s: usize, t: usize) -> Option<PairGroup> {
        let key = (s.min(t), s.max(t));
        match self.graph.coefficient(s, t) {
            _ if self.free_pair == Some(key) => Some(PairGroup::Free),
            Coefficient::Finite(m) => Some(PairGroup::Dihedral(m)),
            Coefficient::Infinite => None,
        }
    }

    pub fn vertex_name(&self, v: DomainVertex) -> String {
        DomainVertexName(&self.graph, v).to_string()
    }
}

struct DomainVertexName<'a>(&'a DefiningGraph, DomainVertex);

impl fmt::Display for DomainVertexName<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.1 {
            DomainVertex::Empty => write!(f, "v_∅"),
            DomainVertex::Gen(i) => write!(f, "v_{}", self.0.name(i)),
            DomainVertex::Pair(i, j) => write!(f, "v_{}{}", self.0.name(i), self.0.name(j)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_counts() {
        let t = DefiningGraph::from_edges(&["a", "b", "c"], &[("a", "b", 3), ("a", "c", 3), ("b", "c", 3)])
            .unwrap();
        let k = DomainComplex::build(&t).unwrap();
        assert_eq!(k.vertices().len(), 7);
        assert_eq!(k.triangles().len(), 6);
        let sq = DefiningGraph::from_edges(
            &["a", "b", "c", "d"],
            &[("a", "b", 3), ("b", "c", 2), ("c", "d", 2), ("d", "a", 2)],
        )
        .unwrap();
        assert_eq!(DomainComplex::build(&sq).unwrap().triangles().len(), 8);
    }

    #[test]
    fn angles_sum_to_pi() {
        for m in 2..12 {
            let a = triangle_angles(PairGroup::Dihedral(m));
            assert_eq!(a[0] + a[1] + a[2], Ratio::from_integer(1));
            assert_eq!(a[2], Ratio::new(1, 2 * i64::from(m)));
        }
        let f = triangle_angles(PairGroup::Free);
        assert_eq!(f, [Ratio::new(5, 12), Ratio::new(1, 2), Ratio::new(1, 12)]);
    }

    #[test]
    fn build_refuses_bad_graphs() {
        let t = DefiningGraph::from_edges(&["a", "b", "c"], &[("a", "b", 2), ("a", "c", 3), ("b", "c", 5)])
            .unwrap();
        assert!(matches!(DomainComplex::build(&t), Err(Error::NotTwoDimensional(_))));
        let two = DefiningGraph::from_edges(&["a", "b"], &[("a", "b", 3)]).unwrap();
        assert_eq!(DomainComplex::build(&two).unwrap_err(), Error::Refused(Refusal::RankTooSmall));
    }

    #[test]
    fn augmentation() {
        let p = DefiningGraph::from_edges(&["a", "b", "c"], &[("a", "b", 3), ("a", "c", 3)]).unwrap();
        let base = DomainComplex::build(&p).unwrap();
        let aug = DomainComplex::augmented(&p, 1, 2);
        assert_eq!(aug.triangles().len(), base.triangles().len() + 2);
        assert_eq!(aug.pair_group(2, 1), Some(PairGroup::Free));
        assert_eq!(aug.vertex_name(DomainVertex::Pair(1, 2)), "v_bc");
        let same = DomainComplex::augmented(&p, 0, 1);
        assert_eq!(same.triangles(), base.triangles());
        assert_eq!(same.free_pair(), None);
    }
}
