use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::bounds::WorkBounds;
use crate::complex::{Letter, Presentation};
use crate::error::{Error, Result};
use crate::group::{Automorphism, Elem, FiniteGroup};

#[derive(Clone, Debug)]
enum Step {
    Enumerate(usize),
    /// Assign `gen` so that `relator` holds; `gen` occurs there exactly once, at `pos`.
    Solve { gen: usize, relator: usize, pos: usize },
}

/// Search plan: generators in assignment order, and after each step the relators
/// that just became fully assigned.
#[derive(Clone, Debug)]
struct Plan {
    steps: Vec<Step>,
    checks: Vec<Vec<usize>>,
}

fn make_plan(p: &Presentation) -> Plan {
    let r = p.generators();
    let rels = p.relators();
    let occurrences: Vec<Vec<usize>> = rels
        .iter()
        .map(|w| {
            let mut c = vec![0; r];
            for l in w {
                c[l.gen] += 1;
            }
            c
        })
        .collect();
    let mut assigned = vec![false; r];
    let mut done = vec![false; rels.len()];
    let mut steps = Vec::with_capacity(r);
    let mut checks = Vec::with_capacity(r);
    let unassigned_in = |i: usize, assigned: &[bool]| -> Vec<usize> {
        (0..r).filter(|&g| occurrences[i][g] > 0 && !assigned[g]).collect()
    };
    for _ in 0..r {
        let solvable = (0..rels.len()).find_map(|i| {
            if done[i] {
                return None;
            }
            match unassigned_in(i, &assigned)[..] {
                [g] if occurrences[i][g] == 1 => {
                    let pos = rels[i].iter().position(|l| l.gen == g).unwrap();
                    Some(Step::Solve { gen: g, relator: i, pos })
                }
                _ => None,
            }
        });
        let step = solvable.unwrap_or_else(|| {
            // enumerate the generator that leaves the most relators one step from solvable
            let score = |g: usize| {
                let mut with = assigned.clone();
                with[g] = true;
                let near = (0..rels.len())
                    .filter(|&i| !done[i] && occurrences[i][g] > 0)
                    .filter(|&i| unassigned_in(i, &with).len() <= 1)
                    .count();
                let uses = (0..rels.len()).filter(|&i| occurrences[i][g] > 0).count();
                (near, uses, std::cmp::Reverse(g))
            };
            let g = (0..r).filter(|&g| !assigned[g]).max_by_key(|&g| score(g)).unwrap();
            Step::Enumerate(g)
        });
        let gen = match step {
            Step::Enumerate(g) | Step::Solve { gen: g, .. } => g,
        };
        assigned[gen] = true;
        let mut now = Vec::new();
        for i in 0..rels.len() {
            if !done[i] && unassigned_in(i, &assigned).is_empty() {
                done[i] = true;
                let solved_here = matches!(step, Step::Solve { relator, .. } if relator == i);
                if !solved_here {
                    now.push(i);
                }
            }
        }
        steps.push(step);
        checks.push(now);
    }
    // relators with no letters at all are always satisfied
    Plan { steps, checks }
}

#[inline]
fn letter_value(g: &FiniteGroup, a: &[Elem], l: &Letter) -> Elem {
    let x = a[l.gen];
    if l.inverse {
        g.inv(x)
    } else {
        x
    }
}

fn eval_word(g: &FiniteGroup, a: &[Elem], w: &[Letter]) -> Elem {
    w.iter().fold(0, |acc, l| g.mul(acc, letter_value(g, a, l)))
}

/// What to tally at each homomorphism.
pub(crate) struct Tally<'a> {
    pub surjections: bool,
    /// Count canonical surjections: lexicographically least in their orbit.
    pub canonical: Option<&'a [Automorphism]>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Totals {
    pub homs: u64,
    pub surjections: u64,
    pub canonical: u64,
}

impl std::ops::Add for Totals {
    type Output = Totals;
    fn add(self, o: Totals) -> Totals {
        Totals {
            homs: self.homs + o.homs,
            surjections: self.surjections + o.surjections,
            canonical: self.canonical + o.canonical,
        }
    }
}

struct Search<'a> {
    p: &'a Presentation,
    g: &'a FiniteGroup,
    plan: &'a Plan,
    tally: &'a Tally<'a>,
    work: &'a AtomicU64,
    limit: u64,
}

impl Search<'_> {
    fn tick(&self) -> Result<()> {
        let w = self.work.fetch_add(1, Ordering::Relaxed) + 1;
        if w > self.limit {
            return Err(Error::bound("homomorphism enumeration nodes", w, self.limit));
        }
        Ok(())
    }

    fn checks_pass(&self, depth: usize, a: &[Elem]) -> bool {
        self.plan.checks[depth]
            .iter()
            .all(|&i| eval_word(self.g, a, &self.p.relators()[i]) == 0)
    }

    fn leaf(&self, a: &[Elem]) -> Totals {
        let mut t = Totals {
            homs: 1,
            ..Totals::default()
        };
        if self.tally.surjections || self.tally.canonical.is_some() {
            if self.g.generates(a) {
                t.surjections = 1;
                if let Some(auts) = self.tally.canonical {
                    let canonical = auts.iter().all(|phi| {
                        let image = a.iter().map(|&x| phi.apply(x));
                        image.cmp(a.iter().copied()) != std::cmp::Ordering::Less
                    });
                    t.canonical = canonical as u64;
                }
            }
        }
        t
    }

    fn solve(&self, a: &[Elem], relator: usize, pos: usize) -> Elem {
        let w = &self.p.relators()[relator];
        let left = eval_word(self.g, a, &w[..pos]);
        let right = eval_word(self.g, a, &w[pos + 1..]);
        let x = self.g.inv(self.g.mul(right, left));
        // L·x^ε·R = 1  ⇔  x^ε = L⁻¹R⁻¹ = (R·L)⁻¹
        if w[pos].inverse {
            self.g.inv(x)
        } else {
            x
        }
    }

    fn dfs(&self, depth: usize, a: &mut Vec<Elem>) -> Result<Totals> {
        if depth == self.plan.steps.len() {
            return Ok(self.leaf(a));
        }
        match self.plan.steps[depth] {
            Step::Solve { gen, relator, pos } => {
                self.tick()?;
                a[gen] = self.solve(a, relator, pos);
                if self.checks_pass(depth, a) {
                    self.dfs(depth + 1, a)
                } else {
                    Ok(Totals::default())
                }
            }
            Step::Enumerate(gen) => {
                let mut total = Totals::default();
                for x in self.g.elements() {
                    self.tick()?;
                    a[gen] = x;
                    if self.checks_pass(depth, a) {
                        total = total + self.dfs(depth + 1, a)?;
                    }
                }
                Ok(total)
            }
        }
    }

    /// Runs solve steps sequentially up to the first enumeration, then splits
    /// that enumeration across threads.
    fn run(&self) -> Result<Totals> {
        let mut a = vec![0; self.p.generators()];
        let mut depth = 0;
        while depth < self.plan.steps.len() {
            match self.plan.steps[depth] {
                Step::Solve { gen, relator, pos } => {
                    self.tick()?;
                    a[gen] = self.solve(&a, relator, pos);
                    if !self.checks_pass(depth, &a) {
                        return Ok(Totals::default());
                    }
                    depth += 1;
                }
                Step::Enumerate(gen) => {
                    let parts: Vec<Result<Totals>> = self
                        .g
                        .elements()
                        .into_par_iter()
                        .map(|x| {
                            self.tick()?;
                            let mut a = a.clone();
                            a[gen] = x;
                            if self.checks_pass(depth, &a) {
                                self.dfs(depth + 1, &mut a)
                            } else {
                                Ok(Totals::default())
                            }
                        })
                        .collect();
                    let mut total = Totals::default();
                    for part in parts {
                        total = total + part?;
                    }
                    return Ok(total);
                }
            }
        }
        Ok(self.leaf(&a))
    }
}

pub(crate) fn tally_homs(
    p: &Presentation,
    g: &FiniteGroup,
    bounds: &WorkBounds,
    tally: &Tally<'_>,
) -> Result<Totals> {
    let plan = make_plan(p);
    let work = AtomicU64::new(0);
    Search {
        p,
        g,
        plan: &plan,
        tally,
        work: &work,
        limit: bounds.max_enumeration,
    }
    .run()
}

/// Number of generators the search enumerates freely; the rest are solved.
pub fn enumerated_generators(p: &Presentation) -> usize {
    make_plan(p)
        .steps
        .iter()
        .filter(|s| matches!(s, Step::Enumerate(_)))
        .count()
}

/// Calls `visit` on every homomorphism, given as generator images, in a fixed order.
pub fn for_each_hom(
    p: &Presentation,
    g: &FiniteGroup,
    bounds: &WorkBounds,
    mut visit: impl FnMut(&[Elem]),
) -> Result<()> {
    let plan = make_plan(p);
    let mut work = 0u64;
    let mut a = vec![0; p.generators()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        p: &Presentation,
        g: &FiniteGroup,
        plan: &Plan,
        depth: usize,
        a: &mut Vec<Elem>,
        work: &mut u64,
        limit: u64,
        visit: &mut dyn FnMut(&[Elem]),
    ) -> Result<()> {
        if depth == plan.steps.len() {
            visit(a);
            return Ok(());
        }
        let candidates: Vec<Elem> = match plan.steps[depth] {
            Step::Enumerate(_) => g.elements().collect(),
            Step::Solve { .. } => vec![0],
        };
        for x in candidates {
            *work += 1;
            if *work > limit {
                return Err(Error::bound("homomorphism enumeration nodes", *work, limit));
            }
            match plan.steps[depth] {
                Step::Enumerate(gen) => a[gen] = x,
                Step::Solve { gen, relator, pos } => {
                    let w = &p.relators()[relator];
                    let left = eval_word(g, a, &w[..pos]);
                    let right = eval_word(g, a, &w[pos + 1..]);
                    let y = g.inv(g.mul(right, left));
                    a[gen] = if w[pos].inverse { g.inv(y) } else { y };
                }
            }
            if plan.checks[depth]
                .iter()
                .all(|&i| eval_word(g, a, &p.relators()[i]) == 0)
            {
                go(p, g, plan, depth + 1, a, work, limit, visit)?;
            }
        }
        Ok(())
    }
    go(p, g, &plan, 0, &mut a, &mut work, bounds.max_enumeration, &mut visit)
}
