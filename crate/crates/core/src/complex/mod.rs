//! Simplicial complexes of dimension at most 3, their integral homology, simplex
//! orderings with boundary width, and fundamental-group presentations.

mod homology;
mod ordering;
mod presentation;
mod snf;

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

pub use homology::{homology, HomologyGroup};
pub use ordering::{greedy_ordering, greedy_region_ordering, ordering_width, SimplexOrdering, WidthReport};
pub use presentation::{presentation_from_complex, Letter, Presentation};
pub use snf::{smith_normal_form, IntegerMatrix};

pub const MAX_DIMENSION: usize = 3;

/// A face-closed set of simplices on `0..vertex_count`. Simplices are numbered by
/// dimension, then lexicographically; every vertex is a simplex.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    by_dim: [Vec<usize>; MAX_DIMENSION + 1],
    /// Codimension-one faces.
    faces: Vec<Vec<usize>>,
    /// Codimension-one cofaces.
    cofaces: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Closes the given simplices under taking faces.
    pub fn from_maximal(vertex_count: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut all: BTreeSet<(usize, Vec<u32>)> = (0..vertex_count as u32).map(|v| (0, vec![v])).collect();
        for s in maximal {
            let mut s: Vec<u32> = s.iter().map(|&v| v as u32).collect();
            s.sort_unstable();
            if s.is_empty() {
                return Err(Error::pre("empty simplex"));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::pre(format!("simplex {s:?} repeats a vertex")));
            }
            if s.len() > MAX_DIMENSION + 1 {
                return Err(Error::pre(format!(
                    "simplex {s:?} has dimension {} (at most {MAX_DIMENSION} supported)",
                    s.len() - 1
                )));
            }
            if let Some(&v) = s.iter().find(|&&v| v as usize >= vertex_count) {
                return Err(Error::pre(format!("vertex {v} is out of range")));
            }
            let k = s.len();
            for mask in 1u32..(1 << k) {
                let face: Vec<u32> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                all.insert((face.len() - 1, face));
            }
        }
        let simplices: Vec<Vec<u32>> = all.into_iter().map(|(_, s)| s).collect();
        let index: HashMap<Vec<u32>, usize> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut by_dim: [Vec<usize>; MAX_DIMENSION + 1] = Default::default();
        let mut faces = vec![Vec::new(); simplices.len()];
        let mut cofaces = vec![Vec::new(); simplices.len()];
        for (i, s) in simplices.iter().enumerate() {
            by_dim[s.len() - 1].push(i);
            if s.len() > 1 {
                for drop in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(drop);
                    let j = index[&f];
                    faces[i].push(j);
                    cofaces[j].push(i);
                }
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            simplices,
            index,
            by_dim,
            faces,
            cofaces,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex(&self, i: usize) -> &[u32] {
        &self.simplices[i]
    }

    pub fn simplices(&self) -> &[Vec<u32>] {
        &self.simplices
    }

    pub fn dim_of(&self, i: usize) -> usize {
        self.simplices[i].len() - 1
    }

    pub fn dimension(&self) -> Option<usize> {
        (0..=MAX_DIMENSION).rev().find(|&d| !self.by_dim[d].is_empty())
    }

    /// Indices of the simplices of dimension `d`, in increasing order.
    pub fn of_dim(&self, d: usize) -> &[usize] {
        if d > MAX_DIMENSION {
            return &[];
        }
        &self.by_dim[d]
    }

    pub fn count(&self, d: usize) -> usize {
        self.of_dim(d).len()
    }

    pub fn index_of(&self, vertices: &[u32]) -> Option<usize> {
        let mut s = vertices.to_vec();
        s.sort_unstable();
        self.index.get(&s).copied()
    }

    /// Codimension-one faces, in the order obtained by deleting vertex 0, 1, ….
    pub fn faces(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn cofaces(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    /// All proper nonempty faces.
    pub fn proper_faces(&self, i: usize) -> Vec<usize> {
        let s = &self.simplices[i];
        let k = s.len();
        (1u32..(1 << k) - 1)
            .map(|mask| {
                let f: Vec<u32> = (0..k).filter(|&j| mask >> j & 1 == 1).map(|j| s[j]).collect();
                self.index[&f]
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=MAX_DIMENSION)
            .map(|d| if d % 2 == 0 { 1 } else { -1 } * self.count(d) as i64)
            .sum()
    }

    /// Connected component label of every vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count;
        let mut label = vec![usize::MAX; n];
        let mut adj = vec![Vec::new(); n];
        for &e in self.of_dim(1) {
            let (u, v) = (self.simplices[e][0] as usize, self.simplices[e][1] as usize);
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Maximal simplices, sorted.
    pub fn maximal_simplices(&self) -> Vec<&[u32]> {
        (0..self.len())
            .filter(|&i| self.cofaces[i].is_empty())
            .map(|i| self.simplices[i].as_slice())
            .collect()
    }

    /// Text form: `vertices n`, one maximal simplex per line, then optionally an
    /// `order` section with every simplex.
    pub fn parse(text: &str) -> Result<(Self, Option<SimplexOrdering>)> {
        let mut vertex_count = None;
        let mut maximal = Vec::new();
        let mut order_lines: Option<Vec<(usize, Vec<usize>)>> = None;
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices") {
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line_no, "expected `vertices <count>`"))?;
                vertex_count = Some(n);
                continue;
            }
            if line == "order" {
                order_lines = Some(Vec::new());
                continue;
            }
            let ids = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::parse(line_no, format!("expected vertex ids, got `{line}`")))?;
            if vertex_count.is_none() {
                return Err(Error::parse(line_no, "simplex before `vertices` header"));
            }
            match order_lines.as_mut() {
                Some(o) => o.push((line_no, ids)),
                None => maximal.push(ids),
            }
        }
        let n = vertex_count.ok_or_else(|| Error::parse(0, "missing `vertices` header"))?;
        let complex = Self::from_maximal(n, &maximal)?;
        let ordering = match order_lines {
            None => None,
            Some(lines) => {
                let mut seq = Vec::with_capacity(lines.len());
                for (line_no, ids) in lines {
                    let s: Vec<u32> = ids.iter().map(|&v| v as u32).collect();
                    let i = complex
                        .index_of(&s)
                        .ok_or_else(|| Error::parse(line_no, format!("{ids:?} is not a simplex")))?;
                    seq.push(i);
                }
                Some(SimplexOrdering::new(&complex, seq)?)
            }
        };
        Ok((complex, ordering))
    }

    pub fn to_text(&self, ordering: Option<&SimplexOrdering>) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        let join = |s: &[u32]| s.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        for s in self.maximal_simplices() {
            out.push_str(&join(s));
            out.push('\n');
        }
        if let Some(ord) = ordering {
            out.push_str("order\n");
            for &i in ord.sequence() {
                out.push_str(&join(&self.simplices[i]));
                out.push('\n');
            }
        }
        out
    }
}

/// Small named triangulations used across tests and the bundled data.
pub mod examples {
    use super::SimplicialComplex;

    pub fn disk() -> SimplicialComplex {
        SimplicialComplex::from_maximal(3, &[vec![0, 1, 2]]).unwrap()
    }

    /// Boundary of the 3-simplex.
    pub fn sphere() -> SimplicialComplex {
        SimplicialComplex::from_maximal(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
            .unwrap()
    }

    /// Six-vertex projective plane.
    pub fn projective_plane() -> SimplicialComplex {
        let t = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [1, 3, 5],
            [2, 4, 5],
        ];
        SimplicialComplex::from_maximal(6, &t.map(|s| s.to_vec())).unwrap()
    }

    pub fn torus7_triangles() -> Vec<Vec<usize>> {
        (0..7)
            .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
            .collect()
    }

    /// Seven-vertex torus.
    pub fn torus7() -> SimplicialComplex {
        SimplicialComplex::from_maximal(7, &torus7_triangles()).unwrap()
    }

    /// Connected sum of two seven-vertex tori along the triangle {0, 1, 3}.
    pub fn genus2() -> SimplicialComplex {
        let glued = [0usize, 1, 3];
        let mut tris = Vec::new();
        for copy in 0..2 {
            let relabel = |v: usize| {
                if copy == 0 || glued.contains(&v) {
                    v
                } else {
                    // 2, 4, 5, 6 of the second copy become 7..10
                    7 + [2, 4, 5, 6].iter().position(|&w| w == v).unwrap()
                }
            };
            for t in torus7_triangles() {
                let mut s = t.clone();
                s.sort_unstable();
                if s == glued {
                    continue;
                }
                tris.push(t.iter().map(|&v| relabel(v)).collect());
            }
        }
        SimplicialComplex::from_maximal(11, &tris).unwrap()
    }

    /// Cycle graph on `n ≥ 3` vertices.
    pub fn cycle(n: usize) -> SimplicialComplex {
        let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        SimplicialComplex::from_maximal(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> SimplicialComplex {
        let edges: Vec<Vec<usize>> = (0..n.saturating_sub(1)).map(|i| vec![i, i + 1]).collect();
        SimplicialComplex::from_maximal(n, &edges).unwrap()
    }

    /// Torus from a `3 × len` grid, each square split by a diagonal. `len ≥ 3`.
    pub fn banded_torus(len: usize) -> SimplicialComplex {
        let v = |r: usize, c: usize| (c % len) * 3 + r % 3;
        let mut tris = Vec::new();
        for c in 0..len {
            for r in 0..3 {
                tris.push(vec![v(r, c), v(r + 1, c), v(r + 1, c + 1)]);
                tris.push(vec![v(r, c), v(r, c + 1), v(r + 1, c + 1)]);
            }
        }
        SimplicialComplex::from_maximal(3 * len, &tris).unwrap()
    }
}
