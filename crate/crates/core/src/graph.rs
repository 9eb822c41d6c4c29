//! Labeled graphs of quadratic forms and the "delete k vertices, a path
//! remains" admissibility check used by every construction.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::gbf::Gbf;

/// Undirected simple graph with `Z_q` edge weights. Edge keys are stored
/// as `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    vertex_count: usize,
    edges: BTreeMap<(usize, usize), u32>,
}

impl LabeledGraph {
    pub fn new(vertex_count: usize) -> Self {
        LabeledGraph {
            vertex_count,
            edges: BTreeMap::new(),
        }
    }

    pub fn add_edge(&mut self, i: usize, j: usize, weight: u32) -> Result<()> {
        if i == j {
            return Err(Error::InvalidParams(format!("self-loop on vertex {i}")));
        }
        if i >= self.vertex_count || j >= self.vertex_count {
            return Err(Error::InvalidParams(format!(
                "edge {i}-{j} outside {} vertices",
                self.vertex_count
            )));
        }
        let key = (i.min(j), i.max(j));
        if self.edges.insert(key, weight).is_some() {
            return Err(Error::InvalidParams(format!("duplicate edge {}-{}", key.0, key.1)));
        }
        Ok(())
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)], weight: u32) -> Result<Self> {
        let mut g = LabeledGraph::new(vertex_count);
        for &(i, j) in edges {
            g.add_edge(i, j, weight)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.edges.iter().map(|(&k, &w)| (k, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<u32> {
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }
}

/// Graph of the quadratic part of `f`: one vertex per variable, one edge
/// per monomial `z_i z_j` weighted by its coefficient. Constant and linear
/// terms are ignored.
pub fn graph_of_quadratic(f: &Gbf) -> Result<LabeledGraph> {
    let mut g = LabeledGraph::new(f.m());
    for t in f.terms() {
        match t.degree() {
            0 | 1 => {}
            2 => {
                if t.literals.iter().any(|l| l.complemented) {
                    return Err(Error::ComplementedQuadratic);
                }
                g.add_edge(t.literals[0].var, t.literals[1].var, t.coefficient)?;
            }
            degree => return Err(Error::NotQuadratic { degree }),
        }
    }
    Ok(g)
}

/// Why a residual graph is not an admissible path.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PathViolation {
    #[error("deleted vertex {vertex} is out of range (graph has {vertex_count} vertices)")]
    DeletedOutOfRange { vertex: usize, vertex_count: usize },
    #[error("deleted vertex {vertex} listed more than once")]
    DeletedRepeated { vertex: usize },
    #[error("residual graph is empty")]
    EmptyResidual,
    #[error("residual graph has vertex {vertex} of degree {degree}")]
    DegreeTooHigh { vertex: usize, degree: usize },
    #[error("residual graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("residual graph is a cycle")]
    Cycle,
    #[error("residual edge {0}-{1} has weight {weight}, expected {required}", edge.0, edge.1)]
    WrongEdgeWeight {
        edge: (usize, usize),
        weight: u32,
        required: u32,
    },
    #[error("vertex {vertex} is not an end vertex of the residual path {path:?}")]
    NotAnEndVertex { vertex: usize, path: Vec<usize> },
}

/// Witness that deleting `deleted` leaves a path visiting `path_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCertificate {
    pub deleted: Vec<usize>,
    pub path_order: Vec<usize>,
    /// One entry for a single-vertex path, otherwise the two endpoints in
    /// ascending order.
    pub end_vertices: Vec<usize>,
}

impl PathCertificate {
    pub fn is_end_vertex(&self, v: usize) -> bool {
        self.end_vertices.contains(&v)
    }

    /// The endpoint at the other end of the path from `v`; `v` itself when
    /// the path is a single vertex.
    pub fn opposite_end(&self, v: usize) -> Option<usize> {
        let first = *self.path_order.first()?;
        let last = *self.path_order.last()?;
        if v == first {
            Some(last)
        } else if v == last {
            Some(first)
        } else {
            None
        }
    }

    /// Re-checks the certificate against `g`.
    pub fn is_valid_for(&self, g: &LabeledGraph) -> bool {
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        for &v in self.deleted.iter().chain(&self.path_order) {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        if seen.iter().any(|s| !s) || !self.deleted.windows(2).all(|w| w[0] < w[1]) {
            return false;
        }
        let p = &self.path_order;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                let adjacent = g.weight(p[a], p[b]).is_some();
                if adjacent != (b == a + 1) {
                    return false;
                }
            }
        }
        let mut ends = vec![p[0], p[p.len() - 1]];
        ends.sort_unstable();
        ends.dedup();
        ends == self.end_vertices
    }
}

impl fmt::Display for PathCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "delete {{{}}}, path {}, ends {{{}}}",
            join(&self.deleted),
            self.path_order
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join("-"),
            join(&self.end_vertices)
        )
    }
}

/// Checks that removing `deleted` (and every edge touching it) leaves a
/// single path through all remaining vertices. With `required_weight`,
/// every residual edge must also carry that weight.
pub fn validate_deletion_path(
    g: &LabeledGraph,
    deleted: &[usize],
    required_weight: Option<u32>,
) -> std::result::Result<PathCertificate, PathViolation> {
    let n = g.vertex_count();
    let mut removed = vec![false; n];
    for &v in deleted {
        if v >= n {
            return Err(PathViolation::DeletedOutOfRange {
                vertex: v,
                vertex_count: n,
            });
        }
        if removed[v] {
            return Err(PathViolation::DeletedRepeated { vertex: v });
        }
        removed[v] = true;
    }
    let residual: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    if residual.is_empty() {
        return Err(PathViolation::EmptyResidual);
    }

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut residual_edges = 0;
    for ((i, j), w) in g.edges() {
        if removed[i] || removed[j] {
            continue;
        }
        if let Some(required) = required_weight {
            if w != required {
                return Err(PathViolation::WrongEdgeWeight {
                    edge: (i, j),
                    weight: w,
                    required,
                });
            }
        }
        adj[i].push(j);
        adj[j].push(i);
        residual_edges += 1;
    }
    if let Some(&v) = residual.iter().find(|&&v| adj[v].len() > 2) {
        return Err(PathViolation::DegreeTooHigh {
            vertex: v,
            degree: adj[v].len(),
        });
    }

    let mut component = vec![usize::MAX; n];
    let mut components = 0;
    for &start in &residual {
        if component[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        component[start] = components;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if component[y] == usize::MAX {
                    component[y] = components;
                    stack.push(y);
                }
            }
        }
        components += 1;
    }
    if components > 1 {
        return Err(PathViolation::Disconnected { components });
    }
    if residual_edges != residual.len() - 1 {
        return Err(PathViolation::Cycle);
    }

    let start = *residual
        .iter()
        .find(|&&v| adj[v].len() <= 1)
        .expect("a connected acyclic graph has a leaf");
    let mut path_order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&y| y != prev) {
        path_order.push(next);
        prev = cur;
        cur = next;
    }
    let mut end_vertices = vec![start, cur];
    end_vertices.sort_unstable();
    end_vertices.dedup();

    let mut deleted = deleted.to_vec();
    deleted.sort_unstable();
    Ok(PathCertificate {
        deleted,
        path_order,
        end_vertices,
    })
}

/// Every `k`-subset (in lexicographic order) whose deletion leaves a path.
pub fn enumerate_admissible_deletions(
    g: &LabeledGraph,
    k: usize,
    required_weight: Option<u32>,
) -> Vec<PathCertificate> {
    let mut out = Vec::new();
    if k >= g.vertex_count() {
        return out;
    }
    for subset in combinations(g.vertex_count(), k) {
        if let Ok(cert) = validate_deletion_path(g, &subset, required_weight) {
            out.push(cert);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gbf::Literal;

    const EXAMPLE_Q: [(usize, usize); 5] = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)];

    fn example_graph() -> LabeledGraph {
        LabeledGraph::from_edges(4, &EXAMPLE_Q, 1).unwrap()
    }

    #[test]
    fn quadratic_graph_edges() {
        let mut q = Gbf::zero(4, 2).unwrap();
        for &(i, j) in &EXAMPLE_Q {
            q.add_term(1, &[Literal::var(i), Literal::var(j)]).unwrap();
        }
        q.add_term(1, &[Literal::var(3)]).unwrap();
        let g = graph_of_quadratic(&q).unwrap();
        assert_eq!(g, example_graph());

        let empty = graph_of_quadratic(&Gbf::zero(1, 2).unwrap()).unwrap();
        assert_eq!((empty.vertex_count(), empty.edge_count()), (1, 0));

        let cubic = Gbf::zero(3, 2)
            .unwrap()
            .with_term(1, &[Literal::var(0), Literal::var(1), Literal::var(2)])
            .unwrap();
        assert!(matches!(graph_of_quadratic(&cubic), Err(Error::NotQuadratic { degree: 3 })));
    }

    #[test]
    fn example_deletions() {
        let g = example_graph();
        let cert = validate_deletion_path(&g, &[0, 1], None).unwrap();
        assert_eq!(cert.path_order, vec![2, 3]);
        assert_eq!(cert.end_vertices, vec![2, 3]);
        assert!(cert.is_valid_for(&g));

        // 1-2-3 survives the deletion of vertex 0
        let cert = validate_deletion_path(&g, &[0], None).unwrap();
        assert_eq!(cert.path_order, vec![1, 2, 3]);

        assert_eq!(validate_deletion_path(&g, &[1], None), Err(PathViolation::Cycle));
        assert!(matches!(
            validate_deletion_path(&g, &[], None),
            Err(PathViolation::DegreeTooHigh { vertex: 0, degree: 3 })
        ));
    }

    #[test]
    fn trivial_path() {
        let g = LabeledGraph::new(1);
        let cert = validate_deletion_path(&g, &[], None).unwrap();
        assert_eq!(cert.path_order, vec![0]);
        assert_eq!(cert.end_vertices, vec![0]);
        assert_eq!(cert.opposite_end(0), Some(0));
    }

    #[test]
    fn structured_failures() {
        let g = LabeledGraph::from_edges(4, &[(0, 1), (2, 3)], 1).unwrap();
        assert_eq!(
            validate_deletion_path(&g, &[], None),
            Err(PathViolation::Disconnected { components: 2 })
        );
        assert!(matches!(
            validate_deletion_path(&g, &[4], None),
            Err(PathViolation::DeletedOutOfRange { .. })
        ));
        assert!(matches!(
            validate_deletion_path(&g, &[1, 1], None),
            Err(PathViolation::DeletedRepeated { vertex: 1 })
        ));
        let weighted = LabeledGraph::from_edges(3, &[(0, 1), (1, 2)], 1).unwrap();
        assert!(validate_deletion_path(&weighted, &[], Some(1)).is_ok());
        assert!(matches!(
            validate_deletion_path(&weighted, &[], Some(2)),
            Err(PathViolation::WrongEdgeWeight { required: 2, .. })
        ));
    }

    #[test]
    fn enumeration() {
        let g = example_graph();
        let all = enumerate_admissible_deletions(&g, 2, None);
        assert!(all.iter().any(|c| c.deleted == vec![0, 1]));
        // brute force: a 2-subset is admissible iff the two survivors are adjacent
        let expected: Vec<Vec<usize>> = combinations(4, 2)
            .into_iter()
            .filter(|d| {
                let rest: Vec<usize> = (0..4).filter(|v| !d.contains(v)).collect();
                g.weight(rest[0], rest[1]).is_some()
            })
            .collect();
        let got: Vec<Vec<usize>> = all.iter().map(|c| c.deleted.clone()).collect();
        assert_eq!(got, expected);

        let path = LabeledGraph::from_edges(3, &[(0, 1), (1, 2)], 1).unwrap();
        let certs = enumerate_admissible_deletions(&path, 0, None);
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].end_vertices, vec![0, 2]);

        let k4 = LabeledGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 1)
            .unwrap();
        assert!(enumerate_admissible_deletions(&k4, 0, None).is_empty());
    }

    #[test]
    fn certificate_display() {
        let cert = validate_deletion_path(&example_graph(), &[0, 1], None).unwrap();
        assert_eq!(cert.to_string(), "delete {0,1}, path 2-3, ends {2,3}");
    }
}
