use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::bounds::WorkBounds;
use crate::error::{Error, Result};
use crate::group::{automorphisms, Elem, FiniteGroup, StemExtension};

use super::{schur_value, MCGGenerator, SurfaceTuple};

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRow {
    pub index: usize,
    pub size: usize,
    /// Smallest tuple in the orbit.
    pub representative: Vec<Elem>,
    /// Schur class of the representative, when a stem extension is given.
    pub schur: Option<Elem>,
    /// Whether every point has the same Schur class as the representative.
    pub schur_constant: bool,
    pub surjective: bool,
    pub surjectivity_constant: bool,
    /// Every automorphism of `G` maps the orbit to an orbit found in the same run
    /// and in fact to itself.
    pub aut_closed: bool,
}

/// Orbits of one `(Schur class, surjectivity)` class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub schur: Option<Elem>,
    pub surjective: bool,
    pub orbits: usize,
    pub points: usize,
    /// One orbit covers every explored point of the class.
    pub transitive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub genus: usize,
    pub group: String,
    pub generators: Vec<String>,
    pub points: usize,
    pub orbits: Vec<OrbitRow>,
    pub classes: Vec<ClassSummary>,
    /// Orbits whose Schur class is not constant; invariance predicts zero.
    pub schur_violations: usize,
}

/// Breadth-first orbit decomposition of the points reachable from `seeds` under
/// the generators. Each generator permutes the finite set `R̂_g(G)`, so forward
/// closure already yields full orbits.
pub fn orbit_report(
    seeds: &[SurfaceTuple],
    gens: &[MCGGenerator],
    group: &FiniteGroup,
    ext: Option<&StemExtension>,
    bounds: &WorkBounds,
) -> Result<OrbitReport> {
    let genus = seeds.first().map_or(0, SurfaceTuple::genus);
    if seeds.iter().any(|s| s.genus() != genus) {
        return Err(Error::pre("seeds of mixed genus"));
    }
    if let Some(g) = gens.iter().find(|g| g.min_genus() > genus) {
        return Err(Error::pre(format!("generator {} needs genus {}", g.name(), g.min_genus())));
    }
    if let Some(e) = ext {
        if e.base_order() != group.order() || !group.is_perfect() {
            return Err(Error::pre("Schur classes need a perfect group and a matching stem extension"));
        }
    }
    let mut orbit_of: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut members: Vec<Vec<Vec<Elem>>> = Vec::new();
    for s in seeds {
        if orbit_of.contains_key(s.elems()) {
            continue;
        }
        let id = members.len();
        let mut frontier = vec![s.elems().to_vec()];
        let mut found = vec![s.elems().to_vec()];
        orbit_of.insert(s.elems().to_vec(), id);
        while let Some(t) = frontier.pop() {
            for g in gens {
                let mut u = t.clone();
                g.apply(group, &mut u, false);
                if !orbit_of.contains_key(&u) {
                    if orbit_of.len() as u64 >= bounds.max_orbit_points {
                        return Err(Error::bound(
                            "orbit search",
                            format!("more than {}", bounds.max_orbit_points),
                            bounds.max_orbit_points,
                        ));
                    }
                    orbit_of.insert(u.clone(), id);
                    found.push(u.clone());
                    frontier.push(u);
                }
            }
        }
        members.push(found);
    }
    let auts = automorphisms(group, bounds)?;
    let mut orbits = Vec::with_capacity(members.len());
    let mut schur_violations = 0;
    for (index, pts) in members.iter().enumerate() {
        let rep = pts.iter().min().unwrap().clone();
        let schur = ext.map(|e| schur_value(e, &rep).expect("orbit points satisfy the relation"));
        let schur_constant = match ext {
            Some(e) => pts.iter().all(|p| schur_value(e, p) == schur),
            None => true,
        };
        if !schur_constant {
            schur_violations += 1;
        }
        let surjective = group.generates(&rep);
        let surjectivity_constant = pts.iter().all(|p| group.generates(p) == surjective);
        let aut_closed = auts.iter().all(|a| {
            let img: Vec<Elem> = rep.iter().map(|&x| a.apply(x)).collect();
            orbit_of.get(&img) == Some(&index)
        });
        orbits.push(OrbitRow {
            index,
            size: pts.len(),
            representative: rep,
            schur,
            schur_constant,
            surjective,
            surjectivity_constant,
            aut_closed,
        });
    }
    let mut by_class: BTreeMap<(Option<Elem>, bool), (usize, usize)> = BTreeMap::new();
    for o in &orbits {
        let e = by_class.entry((o.schur, o.surjective)).or_default();
        e.0 += 1;
        e.1 += o.size;
    }
    let classes = by_class
        .into_iter()
        .map(|((schur, surjective), (n, points))| ClassSummary {
            schur,
            surjective,
            orbits: n,
            points,
            transitive: n == 1,
        })
        .collect();
    Ok(OrbitReport {
        genus,
        group: group.name().to_string(),
        generators: gens.iter().map(|g| g.name().to_string()).collect(),
        points: orbit_of.len(),
        orbits,
        classes,
        schur_violations,
    })
}

impl OrbitReport {
    /// One line per orbit after a header.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "genus: {}\ngroup: {}\ngenerators: {}\npoints: {}\norbits: {}\nschur_violations: {}\n",
            self.genus,
            self.group,
            self.generators.join(" "),
            self.points,
            self.orbits.len(),
            self.schur_violations
        );
        for c in &self.classes {
            s.push_str(&format!(
                "class schur={} surjective={} orbits={} points={} transitive={}\n",
                c.schur.map_or("-".to_string(), |z| z.to_string()),
                c.surjective,
                c.orbits,
                c.points,
                c.transitive
            ));
        }
        for o in &self.orbits {
            let rep: Vec<String> = o.representative.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!(
                "orbit {} size={} schur={} surjective={} aut_closed={} rep=[{}]\n",
                o.index,
                o.size,
                o.schur.map_or("-".to_string(), |z| z.to_string()),
                o.surjective,
                o.aut_closed,
                rep.join(",")
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_reps, standard_generators, RepFilter};
    use super::*;

    #[test]
    fn trivial_seed_is_a_singleton() {
        let a5 = FiniteGroup::alternating(5);
        let r = orbit_report(
            &[SurfaceTuple::trivial(2)],
            &standard_generators(2),
            &a5,
            None,
            &WorkBounds::default(),
        )
        .unwrap();
        assert_eq!(r.orbits.len(), 1);
        assert_eq!(r.orbits[0].size, 1);
        assert!(r.orbits[0].aut_closed);
    }

    #[test]
    fn torus_orbits_partition_the_seeds() {
        let s3 = FiniteGroup::symmetric(3);
        let seeds = enumerate_reps(1, &s3, RepFilter::All, None, &WorkBounds::default()).unwrap();
        let r = orbit_report(&seeds, &standard_generators(1), &s3, None, &WorkBounds::default()).unwrap();
        assert_eq!(r.points, 18);
        assert_eq!(r.orbits.iter().map(|o| o.size).sum::<usize>(), 18);
        assert!(r.orbits.iter().all(|o| o.surjectivity_constant));
        assert!(r.to_text().contains("orbit 0 size=1"));
    }

    #[test]
    fn memory_bound() {
        let s3 = FiniteGroup::symmetric(3);
        let seeds = enumerate_reps(1, &s3, RepFilter::All, None, &WorkBounds::default()).unwrap();
        let tight = WorkBounds {
            max_orbit_points: 3,
            ..WorkBounds::default()
        };
        assert!(orbit_report(&seeds, &standard_generators(1), &s3, None, &tight).is_err());
    }
}
