//! The directed graph of nonzero entries of `W` and its components.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

use super::representation::{RepKind, Representation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixGraph {
    pub n: usize,
    /// `(i, j)` whenever `|W_ij| > zero_tol`, in row-major order.
    pub edges: Vec<(usize, usize)>,
}

impl MatrixGraph {
    fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            out[i].push(j);
        }
        out
    }

    fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(_, j) in &self.edges {
            deg[j] += 1;
        }
        deg
    }
}

/// Default threshold `1e−9 · max |W_ij|`.
pub fn default_zero_tol(w: &CMatrix) -> f64 {
    1e-9 * w.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn matrix_graph(w: &CMatrix, zero_tol: Option<f64>) -> MatrixGraph {
    let tol = zero_tol.unwrap_or_else(|| default_zero_tol(w));
    let n = w.nrows();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if w[(i, j)].norm() > tol {
                edges.push((i, j));
            }
        }
    }
    MatrixGraph { n, edges }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentKind {
    Loop(usize),
    String(usize),
    /// Contains a self-loop, as for `W = √μ U` with diagonal `U`.
    Degenerate(usize),
    Irregular(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Along the path or cycle for loops and strings, ascending otherwise.
    pub vertices: Vec<usize>,
    pub kind: ComponentKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphClassification {
    pub components: Vec<Component>,
    /// Vertices without incoming edges.
    pub transmitters: Vec<usize>,
    /// Vertices without outgoing edges.
    pub receivers: Vec<usize>,
}

pub fn components(g: &MatrixGraph) -> Vec<Component> {
    let mut uf = UnionFind::<usize>::new(g.n);
    for &(i, j) in &g.edges {
        uf.union(i, j);
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; g.n];
    for v in 0..g.n {
        let root = uf.find(v);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(v);
    }
    let succ = g.successors();
    let indeg = g.in_degrees();
    groups
        .into_iter()
        .map(|vs| classify_component(vs, &succ, &indeg))
        .collect()
}

fn classify_component(vs: Vec<usize>, succ: &[Vec<usize>], indeg: &[usize]) -> Component {
    let n = vs.len();
    if vs.iter().any(|&v| succ[v].contains(&v)) {
        return Component {
            vertices: vs,
            kind: ComponentKind::Degenerate(n),
        };
    }
    let walk = |start: usize| {
        let mut order = vec![start];
        let mut v = start;
        while let Some(&next) = succ[v].first() {
            if next == start || order.len() > n {
                break;
            }
            order.push(next);
            v = next;
        }
        order
    };
    let degrees_ok = vs.iter().all(|&v| succ[v].len() <= 1 && indeg[v] <= 1);
    if degrees_ok {
        if n >= 2 && vs.iter().all(|&v| succ[v].len() == 1 && indeg[v] == 1) {
            let order = walk(vs[0]);
            if order.len() == n {
                return Component {
                    vertices: order,
                    kind: ComponentKind::Loop(n),
                };
            }
        }
        let sources: Vec<usize> = vs.iter().copied().filter(|&v| indeg[v] == 0).collect();
        if sources.len() == 1 {
            let order = walk(sources[0]);
            if order.len() == n {
                return Component {
                    vertices: order,
                    kind: ComponentKind::String(n),
                };
            }
        }
    }
    Component {
        vertices: vs,
        kind: ComponentKind::Irregular(n),
    }
}

/// Components plus transmitters and receivers, cross-checked against the
/// diagonals of `D̃ = W†W` (zero exactly at transmitters) and `D = WW†`
/// (zero exactly at receivers).
pub fn graph_classify(g: &MatrixGraph, rep: &Representation) -> Result<GraphClassification> {
    if g.n != rep.dim() {
        return Err(Error::InconsistentGraph(format!(
            "graph has {} vertices, matrix has dimension {}",
            g.n,
            rep.dim()
        )));
    }
    let succ = g.successors();
    let indeg = g.in_degrees();
    let transmitters: Vec<usize> = (0..g.n).filter(|&v| indeg[v] == 0).collect();
    let receivers: Vec<usize> = (0..g.n).filter(|&v| succ[v].is_empty()).collect();
    let (d, dt) = (rep.d(), rep.d_tilde());
    let scale = (0..g.n)
        .map(|i| d[(i, i)].re.max(dt[(i, i)].re))
        .fold(0.0, f64::max);
    let tol = 1e-12 * scale.max(1.0) + g.n as f64 * default_zero_tol(&rep.w).powi(2) * 4.0;
    for v in 0..g.n {
        let is_t = dt[(v, v)].re <= tol;
        let is_r = d[(v, v)].re <= tol;
        if is_t != (indeg[v] == 0) {
            return Err(Error::InconsistentGraph(format!(
                "vertex {v}: in-degree {} but D~_vv = {:e}",
                indeg[v],
                dt[(v, v)].re
            )));
        }
        if is_r != succ[v].is_empty() {
            return Err(Error::InconsistentGraph(format!(
                "vertex {v}: out-degree {} but D_vv = {:e}",
                succ[v].len(),
                d[(v, v)].re
            )));
        }
    }
    Ok(GraphClassification {
        components: components(g),
        transmitters,
        receivers,
    })
}

fn submatrix(w: &CMatrix, idx: &[usize]) -> CMatrix {
    CMatrix::from_fn(idx.len(), idx.len(), |a, b| w[(idx[a], idx[b])])
}

/// Splits into one representation per graph component. Loops and strings come
/// out in standard form, `W[l−1, l]` along the path plus the loop corner.
pub fn decompose(rep: &Representation) -> Vec<Representation> {
    decompose_with_indices(rep)
        .into_iter()
        .map(|(_, r)| r)
        .collect()
}

/// As [`decompose`], keeping the original index of every row.
pub fn decompose_with_indices(rep: &Representation) -> Vec<(Vec<usize>, Representation)> {
    let g = matrix_graph(&rep.w, None);
    components(&g)
        .into_iter()
        .map(|comp| {
            let kind = match comp.kind {
                ComponentKind::Loop(_) => RepKind::Loop,
                ComponentKind::String(_) => RepKind::String,
                ComponentKind::Degenerate(_) | ComponentKind::Irregular(_) => {
                    if rep.kind == RepKind::Degenerate {
                        RepKind::Degenerate
                    } else {
                        RepKind::General
                    }
                }
            };
            let sub = submatrix(&rep.w, &comp.vertices);
            (comp.vertices, rep.with_matrix(sub, kind))
        })
        .collect()
}
