use crate::error::{Error, Result};

use super::SimplicialComplex;

/// A total order on all simplices in which every simplex follows its faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexOrdering {
    sequence: Vec<usize>,
}

impl SimplexOrdering {
    pub fn new(complex: &SimplicialComplex, sequence: Vec<usize>) -> Result<Self> {
        let n = complex.len();
        if sequence.len() != n {
            return Err(Error::pre(format!(
                "ordering lists {} simplices, complex has {n}",
                sequence.len()
            )));
        }
        let mut position = vec![usize::MAX; n];
        for (k, &s) in sequence.iter().enumerate() {
            if s >= n || position[s] != usize::MAX {
                return Err(Error::pre(format!("ordering repeats or misses simplex {s}")));
            }
            position[s] = k;
        }
        for (k, &s) in sequence.iter().enumerate() {
            if let Some(&f) = complex.faces(s).iter().find(|&&f| position[f] > k) {
                return Err(Error::pre(format!(
                    "ordering places {:?} before its face {:?}",
                    complex.simplex(s),
                    complex.simplex(f)
                )));
            }
        }
        Ok(SimplexOrdering { sequence })
    }

    /// All vertices, then all edges, and so on.
    pub fn by_dimension(complex: &SimplicialComplex) -> Self {
        SimplexOrdering {
            sequence: (0..complex.len()).collect(),
        }
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// Parses one simplex per line (vertex ids) into an ordering.
    pub fn parse(complex: &SimplicialComplex, text: &str) -> Result<Self> {
        let mut seq = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() || line == "order" {
                continue;
            }
            let ids = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::parse(no + 1, format!("expected vertex ids, got `{line}`")))?;
            seq.push(
                complex
                    .index_of(&ids)
                    .ok_or_else(|| Error::parse(no + 1, format!("{ids:?} is not a simplex")))?,
            );
        }
        Self::new(complex, seq)
    }
}

/// Tracks `bd(X_k)`: simplices of the prefix that still have a coface (of any
/// dimension) outside it. This set is closed under faces.
pub(crate) struct BoundaryTracker<'a> {
    complex: &'a SimplicialComplex,
    added: Vec<bool>,
    pending: Vec<u32>,
    proper_faces: Vec<Vec<usize>>,
    pub size: usize,
    pub edges: usize,
}

impl<'a> BoundaryTracker<'a> {
    pub fn new(complex: &'a SimplicialComplex) -> Self {
        let n = complex.len();
        let proper_faces: Vec<Vec<usize>> = (0..n).map(|i| complex.proper_faces(i)).collect();
        let mut pending = vec![0u32; n];
        for faces in &proper_faces {
            for &f in faces {
                pending[f] += 1;
            }
        }
        BoundaryTracker {
            complex,
            added: vec![false; n],
            pending,
            proper_faces,
            size: 0,
            edges: 0,
        }
    }

    /// Change in `(|bd|, |bd edges|)` if `s` were added now.
    pub fn delta(&self, s: usize) -> (isize, isize) {
        let mut d = (0isize, 0isize);
        if self.pending[s] > 0 {
            d.0 += 1;
            d.1 += (self.complex.dim_of(s) == 1) as isize;
        }
        for &f in &self.proper_faces[s] {
            if self.pending[f] == 1 {
                d.0 -= 1;
                d.1 -= (self.complex.dim_of(f) == 1) as isize;
            }
        }
        d
    }

    pub fn add(&mut self, s: usize) {
        let (a, b) = self.delta(s);
        self.added[s] = true;
        for &f in &self.proper_faces[s] {
            self.pending[f] -= 1;
        }
        self.size = (self.size as isize + a) as usize;
        self.edges = (self.edges as isize + b) as usize;
    }

    pub fn in_boundary(&self, s: usize) -> bool {
        self.added[s] && self.pending[s] > 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WidthReport {
    /// Largest `|bd(X_k)|` over all prefixes, counting simplices of every dimension.
    pub width: usize,
    /// Largest number of edges in any `bd(X_k)`.
    pub edge_width: usize,
}

pub fn ordering_width(complex: &SimplicialComplex, ordering: &SimplexOrdering) -> Result<WidthReport> {
    let ordering = SimplexOrdering::new(complex, ordering.sequence.clone())?;
    let mut tracker = BoundaryTracker::new(complex);
    let mut report = WidthReport {
        width: 0,
        edge_width: 0,
    };
    for &s in ordering.sequence() {
        tracker.add(s);
        report.width = report.width.max(tracker.size);
        report.edge_width = report.edge_width.max(tracker.edges);
    }
    Ok(report)
}

/// Greedy ordering: repeatedly add the available simplex that grows the boundary
/// least, preferring simplices that touch the current boundary, then higher
/// dimension, then lower index.
fn greedy_simplex_ordering(complex: &SimplicialComplex) -> SimplexOrdering {
    let n = complex.len();
    let mut tracker = BoundaryTracker::new(complex);
    let mut missing: Vec<usize> = (0..n).map(|s| complex.faces(s).len()).collect();
    let mut available: Vec<usize> = complex.of_dim(0).to_vec();
    let mut sequence = Vec::with_capacity(n);
    while !available.is_empty() {
        let key = |s: usize| {
            let touches = complex.faces(s).iter().any(|&f| tracker.in_boundary(f))
                || complex.cofaces(s).iter().any(|&c| {
                    complex.faces(c).iter().any(|&f| f != s && tracker.in_boundary(f))
                });
            let (d, _) = tracker.delta(s);
            (d, !touches, std::cmp::Reverse(complex.dim_of(s)), s)
        };
        let (pos, _) = available
            .iter()
            .enumerate()
            .min_by_key(|(_, &s)| key(s))
            .unwrap();
        let s = available.swap_remove(pos);
        tracker.add(s);
        sequence.push(s);
        for &c in complex.cofaces(s) {
            missing[c] -= 1;
            if missing[c] == 0 {
                available.push(c);
            }
        }
    }
    SimplexOrdering { sequence }
}

/// Runs both greedy heuristics and keeps the ordering with the smaller edge width.
pub fn greedy_ordering(complex: &SimplicialComplex) -> SimplexOrdering {
    let a = greedy_simplex_ordering(complex);
    let b = greedy_region_ordering(complex);
    let key = |o: &SimplexOrdering| {
        ordering_width(complex, o)
            .map(|w| (w.edge_width, w.width))
            .unwrap_or((usize::MAX, usize::MAX))
    };
    if key(&b) <= key(&a) {
        b
    } else {
        a
    }
}

/// Grows the prefix one maximal simplex at a time: each step takes the maximal
/// simplex whose addition (together with its missing faces) leaves the smallest
/// boundary, preferring ones that touch the current boundary.
pub fn greedy_region_ordering(complex: &SimplicialComplex) -> SimplexOrdering {
    let mut tracker = BoundaryTracker::new(complex);
    let mut units: Vec<usize> = (0..complex.len())
        .filter(|&s| complex.cofaces(s).is_empty())
        .collect();
    let mut sequence = Vec::with_capacity(complex.len());
    let mut added = vec![false; complex.len()];
    while !units.is_empty() {
        let cost = |u: usize| {
            let mut missing: Vec<usize> = complex
                .proper_faces(u)
                .into_iter()
                .filter(|&f| !added[f])
                .collect();
            missing.sort_by_key(|&f| (complex.dim_of(f), f));
            missing.push(u);
            let touches = missing.len() <= complex.proper_faces(u).len();
            // simulate on a copy of the pending counters
            let mut size = tracker.size as isize;
            let mut pending = std::collections::HashMap::new();
            for &s in &missing {
                let p = |x: usize, pending: &std::collections::HashMap<usize, u32>| {
                    pending.get(&x).copied().unwrap_or(tracker.pending[x])
                };
                if p(s, &pending) > 0 {
                    size += 1;
                }
                for &f in &tracker.proper_faces[s] {
                    let v = p(f, &pending);
                    if v == 1 {
                        size -= 1;
                    }
                    pending.insert(f, v - 1);
                }
            }
            (size, !touches, u, missing)
        };
        let (pos, (_, _, _, missing)) = units
            .iter()
            .map(|&u| cost(u))
            .enumerate()
            .min_by_key(|(_, c)| (c.0, c.1, c.2))
            .unwrap();
        units.swap_remove(pos);
        for s in missing {
            tracker.add(s);
            added[s] = true;
            sequence.push(s);
        }
    }
    SimplexOrdering { sequence }
}

#[cfg(test)]
mod tests {
    use super::super::examples;
    use super::*;

    /// bd(X_k) as X_k ∩ closure(X ∖ X_k), evaluated from scratch.
    fn direct_boundary(cx: &SimplicialComplex, prefix: &[usize]) -> usize {
        let mut inside = vec![false; cx.len()];
        for &s in prefix {
            inside[s] = true;
        }
        let mut closure_out = vec![false; cx.len()];
        for s in 0..cx.len() {
            if !inside[s] {
                closure_out[s] = true;
                for f in cx.proper_faces(s) {
                    closure_out[f] = true;
                }
            }
        }
        (0..cx.len()).filter(|&s| inside[s] && closure_out[s]).count()
    }

    fn check_against_direct(cx: &SimplicialComplex, ord: &SimplexOrdering) {
        let mut tracker = BoundaryTracker::new(cx);
        for k in 0..ord.sequence().len() {
            tracker.add(ord.sequence()[k]);
            assert_eq!(tracker.size, direct_boundary(cx, &ord.sequence()[..=k]));
        }
    }

    #[test]
    fn tracker_matches_direct_definition() {
        for cx in [examples::disk(), examples::sphere(), examples::torus7(), examples::projective_plane()] {
            check_against_direct(&cx, &SimplexOrdering::by_dimension(&cx));
            check_against_direct(&cx, &greedy_ordering(&cx));
        }
    }

    #[test]
    fn triangle_width() {
        let disk = examples::disk();
        let w = ordering_width(&disk, &SimplexOrdering::by_dimension(&disk)).unwrap();
        // three vertices, three edges are all boundary just before the face closes them
        assert_eq!(w.width, 6);
        assert_eq!(w.edge_width, 3);
        let empty = SimplicialComplex::from_maximal(0, &[]).unwrap();
        assert_eq!(ordering_width(&empty, &SimplexOrdering::by_dimension(&empty)).unwrap().width, 0);
    }

    #[test]
    fn invalid_orderings_rejected() {
        let disk = examples::disk();
        let mut seq: Vec<usize> = (0..disk.len()).collect();
        seq.swap(0, 6);
        assert!(SimplexOrdering::new(&disk, seq).is_err());
        assert!(SimplexOrdering::new(&disk, vec![0, 1, 2]).is_err());
    }

    #[test]
    fn greedy_on_graphs() {
        let p = examples::path(30);
        assert!(ordering_width(&p, &greedy_ordering(&p)).unwrap().width <= 2);
        let c = examples::cycle(30);
        assert!(ordering_width(&c, &greedy_ordering(&c)).unwrap().width <= 3);
    }

    fn column_sweep(cx: &SimplicialComplex) -> SimplexOrdering {
        let mut seq: Vec<usize> = (0..cx.len()).collect();
        seq.sort_by_key(|&s| {
            let col = cx.simplex(s).iter().map(|&v| v / 3).max().unwrap();
            (col, cx.dim_of(s), s)
        });
        SimplexOrdering::new(cx, seq).unwrap()
    }

    #[test]
    fn banded_torus_width_is_flat() {
        let sweep: Vec<usize> = [4, 8, 16, 32]
            .iter()
            .map(|&len| {
                let t = examples::banded_torus(len);
                ordering_width(&t, &column_sweep(&t)).unwrap().width
            })
            .collect();
        assert!(sweep.iter().all(|&w| w == sweep[0]), "{sweep:?}");
        let greedy: Vec<usize> = [8, 16, 32]
            .iter()
            .map(|&len| {
                let t = examples::banded_torus(len);
                ordering_width(&t, &greedy_ordering(&t)).unwrap().width
            })
            .collect();
        assert!(greedy.iter().all(|&w| w <= 2 * sweep[0]), "{greedy:?} vs {sweep:?}");
    }
}
