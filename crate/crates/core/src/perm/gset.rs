use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{greedy_generating_set, Elem, FiniteGroup};

use super::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitKind {
    Fixed,
    Free,
    /// Neither a fixed point nor a regular orbit.
    Other,
}

#[derive(Clone, Debug)]
struct Orbit {
    kind: OrbitKind,
    rep: usize,
    points: Vec<usize>,
}

/// A left action of a finite group on `0..points`, with its orbit decomposition
/// and a section (one representative per orbit).
#[derive(Clone, Debug)]
pub struct GSetAction {
    group: Arc<FiniteGroup>,
    points: usize,
    table: Vec<u32>,
    gens: Vec<Elem>,
    orbit_of: Vec<usize>,
    orbits: Vec<Orbit>,
    offset: Vec<Elem>,
}

impl GSetAction {
    /// `table[g * points + x] = g·x`. Checks the action axioms on every pair.
    pub fn from_table(group: Arc<FiniteGroup>, points: usize, table: Vec<u32>) -> Result<Self> {
        let n = group.order();
        if table.len() != n * points {
            return Err(Error::pre("action table has the wrong size"));
        }
        if table.iter().any(|&y| y as usize >= points) {
            return Err(Error::pre("action table entry out of range"));
        }
        for x in 0..points {
            if table[x] as usize != x {
                return Err(Error::Verification(format!("identity moves point {x}")));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                for x in 0..points {
                    let hx = table[h * points + x] as usize;
                    if table[gh * points + x] != table[g * points + hx] {
                        return Err(Error::Verification(format!(
                            "action is not compatible at ({g}, {h}, {x})"
                        )));
                    }
                }
            }
        }
        let gens = greedy_generating_set(&group);
        let mut act = GSetAction {
            group,
            points,
            table,
            gens,
            orbit_of: Vec::new(),
            orbits: Vec::new(),
            offset: Vec::new(),
        };
        act.decompose(None)?;
        Ok(act)
    }

    /// Extends rows given for some elements to the whole group. The listed elements
    /// must generate it.
    pub fn from_generator_rows(
        group: Arc<FiniteGroup>,
        points: usize,
        rows: &[(Elem, Vec<usize>)],
    ) -> Result<Self> {
        let n = group.order();
        let mut table: Vec<Option<Vec<u32>>> = vec![None; n];
        table[0] = Some((0..points as u32).collect());
        let mut stack = vec![0usize];
        for (g, row) in rows {
            if *g >= n || row.len() != points || row.iter().any(|&y| y >= points) {
                return Err(Error::pre(format!("malformed action row for element {g}")));
            }
        }
        // (g·y)·x = g·(y·x)
        while let Some(y) = stack.pop() {
            for (g, row) in rows {
                let gy = group.mul(*g, y);
                let ry = table[y].clone().unwrap();
                let img: Vec<u32> = ry.iter().map(|&p| row[p as usize] as u32).collect();
                match &table[gy] {
                    Some(existing) if *existing != img => {
                        return Err(Error::Verification(format!(
                            "action rows are inconsistent at element {gy}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        table[gy] = Some(img);
                        stack.push(gy);
                    }
                }
            }
        }
        let mut flat = Vec::with_capacity(n * points);
        for row in table {
            flat.extend(row.ok_or_else(|| Error::pre("action rows do not cover the group"))?);
        }
        Self::from_table(group, points, flat)
    }

    /// `fixed` fixed points followed by `orbits` regular orbits; orbit `j` occupies
    /// `fixed + j·|Γ| + g` with `h·(j, g) = (j, hg)`.
    pub fn regular(group: Arc<FiniteGroup>, fixed: usize, orbits: usize) -> Self {
        let n = group.order();
        let points = fixed + orbits * n;
        let mut table = vec![0u32; n * points];
        for h in 0..n {
            for x in 0..points {
                table[h * points + x] = if x < fixed {
                    x as u32
                } else {
                    let (j, g) = ((x - fixed) / n, (x - fixed) % n);
                    (fixed + j * n + group.mul(h, g)) as u32
                };
            }
        }
        Self::from_table(group, points, table).expect("regular action is valid")
    }

    /// The diagonal action on ordered pairs, pair `(x, y)` numbered `x·points + y`.
    pub fn diagonal_square(&self) -> Self {
        let m = self.points;
        let n = self.group.order();
        let mut table = vec![0u32; n * m * m];
        for g in 0..n {
            for x in 0..m {
                for y in 0..m {
                    table[g * m * m + x * m + y] = (self.act(g, x) * m + self.act(g, y)) as u32;
                }
            }
        }
        let mut sq = GSetAction {
            group: self.group.clone(),
            points: m * m,
            table,
            gens: self.gens.clone(),
            orbit_of: Vec::new(),
            orbits: Vec::new(),
            offset: Vec::new(),
        };
        sq.decompose(None).expect("diagonal action decomposes");
        sq
    }

    /// Replaces the section; `reps` lists one point per orbit, in orbit order.
    pub fn with_section(mut self, reps: &[usize]) -> Result<Self> {
        self.decompose(Some(reps))?;
        Ok(self)
    }

    fn decompose(&mut self, reps: Option<&[usize]>) -> Result<()> {
        let n = self.group.order();
        let mut orbit_of = vec![usize::MAX; self.points];
        let mut orbits = Vec::new();
        for x in 0..self.points {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let mut pts: Vec<usize> = (0..n).map(|g| self.act(g, x)).collect();
            pts.sort_unstable();
            pts.dedup();
            for &p in &pts {
                orbit_of[p] = orbits.len();
            }
            let kind = match pts.len() {
                1 => OrbitKind::Fixed,
                k if k == n => OrbitKind::Free,
                _ => OrbitKind::Other,
            };
            orbits.push(Orbit {
                kind,
                rep: pts[0],
                points: pts,
            });
        }
        if let Some(reps) = reps {
            if reps.len() != orbits.len() {
                return Err(Error::pre(format!(
                    "section lists {} points for {} orbits",
                    reps.len(),
                    orbits.len()
                )));
            }
            for (j, &r) in reps.iter().enumerate() {
                if r >= self.points || orbit_of[r] != j {
                    return Err(Error::pre(format!("section point {r} is not in orbit {j}")));
                }
                orbits[j].rep = r;
            }
        }
        let mut offset = vec![0; self.points];
        for orbit in &orbits {
            if orbit.kind == OrbitKind::Free {
                for g in 0..n {
                    offset[self.act(g, orbit.rep)] = g;
                }
            }
        }
        self.orbit_of = orbit_of;
        self.orbits = orbits;
        self.offset = offset;
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    #[inline]
    pub fn act(&self, g: Elem, x: usize) -> usize {
        self.table[g * self.points + x] as usize
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    pub fn orbit_kind(&self, orbit: usize) -> OrbitKind {
        self.orbits[orbit].kind
    }

    pub fn orbit_points(&self, orbit: usize) -> &[usize] {
        &self.orbits[orbit].points
    }

    /// Section representative of an orbit.
    pub fn rep(&self, orbit: usize) -> usize {
        self.orbits[orbit].rep
    }

    /// For a point of a free orbit, the unique `g` with `g·rep = x`.
    pub fn offset(&self, x: usize) -> Elem {
        self.offset[x]
    }

    pub fn free_orbits(&self) -> Vec<usize> {
        (0..self.orbits.len())
            .filter(|&j| self.orbits[j].kind == OrbitKind::Free)
            .collect()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.orbits
            .iter()
            .filter(|o| o.kind == OrbitKind::Fixed)
            .map(|o| o.rep)
            .collect()
    }

    pub fn is_equivariant(&self, p: &Permutation) -> bool {
        p.degree() == self.points
            && self.gens.iter().all(|&g| {
                (0..self.points).all(|x| p.apply(self.act(g, x)) == self.act(g, p.apply(x)))
            })
    }
}
