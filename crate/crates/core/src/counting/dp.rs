use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bounds::WorkBounds;
use crate::complex::{SimplexOrdering, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// How edge labels are normalised before the sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gauge {
    /// Edges that join two components of the prefix (a spanning tree built in
    /// ordering order) carry the identity. The sweep then counts homomorphisms
    /// directly.
    SpanningTree,
    /// Every edge is free; the sweep counts all 1-cocycles and divides by
    /// `|G|^(v−1)` at the end.
    None,
}

/// Snapshot of the sweep after a prefix, for inspection.
#[derive(Clone, Debug)]
pub struct CocycleDpState {
    /// Number of simplices added so far.
    pub prefix: usize,
    /// Edges whose labels appear in the state keys, in key order.
    pub active_edges: Vec<usize>,
    /// Edges added but not yet constrained by any triangle. Their labels are
    /// free, so each contributes a factor `|G|` not yet folded into the counts.
    pub pending_edges: usize,
    pub states: Vec<(Vec<Elem>, BigUint)>,
}

#[derive(Clone, Debug)]
pub struct DpReport {
    pub homs: BigUint,
    /// `|Z¹(X; G)|`, only known without gauge fixing.
    pub cocycles: Option<BigUint>,
    pub max_states: usize,
    pub max_active_edges: usize,
    pub tree_edges: usize,
}

trait Count: Clone + Send {
    fn one() -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul_small(&self, k: u64) -> Option<Self>;
    fn big(&self) -> BigUint;
}

impl Count for u128 {
    fn one() -> Self {
        1
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul_small(&self, k: u64) -> Option<Self> {
        self.checked_mul(k as u128)
    }
    fn big(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Count for BigUint {
    fn one() -> Self {
        <BigUint as One>::one()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul_small(&self, k: u64) -> Option<Self> {
        Some(self * k)
    }
    fn big(&self) -> BigUint {
        self.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Label {
    Unseen,
    Identity,
    Pending,
    Slot(usize),
    Gone,
}

/// Internal outcome of one sweep attempt.
enum Attempt<T> {
    Done(T),
    Overflow,
}

type Key = Box<[u16]>;

struct Sweep<'a, C: Count> {
    cx: &'a SimplicialComplex,
    g: &'a FiniteGroup,
    gauge: Gauge,
    max_states: u64,
    label: Vec<Label>,
    slots: Vec<usize>,
    remaining: Vec<usize>,
    parent: Vec<usize>,
    states: HashMap<Key, C>,
    pending: usize,
    max_seen: usize,
    max_active: usize,
    tree_edges: usize,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn insert_add<C: Count>(map: &mut HashMap<Key, C>, key: Key, c: C) -> Option<()> {
    match map.get_mut(&key) {
        Some(v) => *v = v.add(&c)?,
        None => {
            map.insert(key, c);
        }
    }
    Some(())
}

impl<'a, C: Count> Sweep<'a, C> {
    fn new(cx: &'a SimplicialComplex, g: &'a FiniteGroup, gauge: Gauge, bounds: &WorkBounds) -> Self {
        let mut states = HashMap::new();
        states.insert(Key::default(), C::one());
        Sweep {
            cx,
            g,
            gauge,
            max_states: bounds.max_states,
            label: vec![Label::Unseen; cx.len()],
            slots: Vec::new(),
            remaining: (0..cx.len()).map(|s| cx.cofaces(s).len()).collect(),
            parent: (0..cx.vertex_count()).collect(),
            states,
            pending: 0,
            max_seen: 1,
            max_active: 0,
            tree_edges: 0,
        }
    }

    fn check_states(&self, n: usize) -> Result<()> {
        if n as u64 > self.max_states {
            return Err(Error::bound("cocycle sweep states", n, self.max_states));
        }
        Ok(())
    }

    fn add_edge(&mut self, e: usize) -> Option<()> {
        let s = self.cx.simplex(e);
        let (u, v) = (s[0] as usize, s[1] as usize);
        let (ru, rv) = (find(&mut self.parent, u), find(&mut self.parent, v));
        if ru != rv {
            self.parent[ru] = rv;
            if self.gauge == Gauge::SpanningTree {
                self.label[e] = Label::Identity;
                self.tree_edges += 1;
                return Some(());
            }
        }
        if self.cx.cofaces(e).is_empty() {
            // unconstrained: a factor of |G| on every state
            let n = self.g.order() as u64;
            for c in self.states.values_mut() {
                *c = c.mul_small(n)?;
            }
            self.label[e] = Label::Gone;
        } else {
            self.label[e] = Label::Pending;
            self.pending += 1;
        }
        Some(())
    }

    fn value(&self, e: usize, key: &[u16]) -> Elem {
        match self.label[e] {
            Label::Identity => 0,
            Label::Slot(p) => key[p] as Elem,
            other => unreachable!("edge label {other:?} read during triangle step"),
        }
    }

    fn add_triangle(&mut self, t: usize) -> Result<Option<()>> {
        let s = self.cx.simplex(t);
        let e = [
            self.cx.index_of(&[s[0], s[1]]).unwrap(),
            self.cx.index_of(&[s[1], s[2]]).unwrap(),
            self.cx.index_of(&[s[0], s[2]]).unwrap(),
        ];
        let pending: Vec<usize> = e
            .iter()
            .copied()
            .filter(|&x| self.label[x] == Label::Pending)
            .collect();
        let n = self.g.order();

        // all pending edges but the last get every label
        if pending.len() > 1 {
            for &x in &pending[..pending.len() - 1] {
                self.check_states(self.states.len() * n)?;
                let mut next = HashMap::with_capacity(self.states.len() * n);
                for (key, c) in self.states.drain() {
                    for y in 0..n {
                        let mut k = key.to_vec();
                        k.push(y as u16);
                        next.insert(k.into_boxed_slice(), c.clone());
                    }
                }
                self.states = next;
                self.label[x] = Label::Slot(self.slots.len());
                self.slots.push(x);
                self.pending -= 1;
            }
        }

        // the last pending edge, if any, is solved from g(uv)·g(vw) = g(uw)
        if let Some(&x) = pending.last() {
            let which = e.iter().position(|&y| y == x).unwrap();
            self.label[x] = Label::Slot(self.slots.len());
            self.slots.push(x);
            self.pending -= 1;
            let old = std::mem::take(&mut self.states);
            let mut next = HashMap::with_capacity(old.len());
            for (key, c) in old {
                let get = |i: usize, key: &[u16]| match self.label[e[i]] {
                    Label::Identity => 0,
                    Label::Slot(p) if p < key.len() => key[p] as Elem,
                    _ => unreachable!(),
                };
                let y = match which {
                    0 => self.g.mul(get(2, &key), self.g.inv(get(1, &key))),
                    1 => self.g.mul(self.g.inv(get(0, &key)), get(2, &key)),
                    _ => self.g.mul(get(0, &key), get(1, &key)),
                };
                let mut k = key.to_vec();
                k.push(y as u16);
                next.insert(k.into_boxed_slice(), c);
            }
            self.states = next;
        } else {
            let g = self.g;
            let violating: Vec<Key> = self
                .states
                .keys()
                .filter(|k| g.mul(self.value(e[0], k), self.value(e[1], k)) != self.value(e[2], k))
                .cloned()
                .collect();
            for k in violating {
                self.states.remove(&k);
            }
        }
        self.max_active = self.max_active.max(self.slots.len());

        // drop edges whose cofaces are all present now
        let mut closing = Vec::new();
        for &x in &e {
            self.remaining[x] -= 1;
            if self.remaining[x] == 0 {
                if let Label::Slot(p) = self.label[x] {
                    closing.push(p);
                }
                self.label[x] = Label::Gone;
            }
        }
        if !closing.is_empty() {
            let kept: Vec<usize> = (0..self.slots.len()).filter(|p| !closing.contains(p)).collect();
            let mut next: HashMap<Key, C> = HashMap::with_capacity(self.states.len());
            for (key, c) in self.states.drain() {
                let k: Key = kept.iter().map(|&p| key[p]).collect();
                if insert_add(&mut next, k, c).is_none() {
                    return Ok(None);
                }
            }
            self.states = next;
            self.slots = kept.iter().map(|&p| self.slots[p]).collect();
            for (p, &x) in self.slots.iter().enumerate() {
                self.label[x] = Label::Slot(p);
            }
        }
        Ok(Some(()))
    }

    fn snapshot(&self, prefix: usize) -> CocycleDpState {
        let mut states: Vec<(Vec<Elem>, BigUint)> = self
            .states
            .iter()
            .map(|(k, c)| (k.iter().map(|&x| x as Elem).collect(), c.big()))
            .collect();
        states.sort();
        CocycleDpState {
            prefix,
            active_edges: self.slots.clone(),
            pending_edges: self.pending,
            states,
        }
    }

    fn run(
        mut self,
        ordering: &SimplexOrdering,
        observer: &mut Option<&mut dyn FnMut(&CocycleDpState)>,
    ) -> Result<Attempt<(BigUint, Self)>> {
        for (k, &s) in ordering.sequence().iter().enumerate() {
            let ok = match self.cx.dim_of(s) {
                1 => self.add_edge(s),
                2 => match self.add_triangle(s)? {
                    Some(()) => Some(()),
                    None => None,
                },
                _ => Some(()),
            };
            if ok.is_none() {
                return Ok(Attempt::Overflow);
            }
            self.check_states(self.states.len())?;
            self.max_seen = self.max_seen.max(self.states.len());
            if let Some(obs) = observer.as_mut() {
                obs(&self.snapshot(k + 1));
            }
        }
        let mut total = BigUint::zero();
        for c in self.states.values() {
            total += c.big();
        }
        Ok(Attempt::Done((total, self)))
    }
}

/// Number of homomorphisms `π₁(X) → G` by a sweep over the ordering, with the
/// spanning-tree gauge.
pub fn dp_count_homs(
    complex: &SimplicialComplex,
    ordering: &SimplexOrdering,
    g: &FiniteGroup,
    bounds: &WorkBounds,
) -> Result<BigUint> {
    Ok(dp_count_homs_with(complex, ordering, g, bounds, Gauge::SpanningTree, None)?.homs)
}

/// The sweep with an explicit gauge and an optional per-step observer.
pub fn dp_count_homs_with(
    complex: &SimplicialComplex,
    ordering: &SimplexOrdering,
    g: &FiniteGroup,
    bounds: &WorkBounds,
    gauge: Gauge,
    mut observer: Option<&mut dyn FnMut(&CocycleDpState)>,
) -> Result<DpReport> {
    if complex.vertex_count() == 0 || !complex.is_connected() {
        return Err(Error::pre("cocycle sweep needs a connected, nonempty complex"));
    }
    if g.order() > u16::MAX as usize {
        return Err(Error::pre("group too large for the cocycle sweep"));
    }
    let ordering = SimplexOrdering::new(complex, ordering.sequence().to_vec())?;
    let (total, max_states, max_active, tree_edges) =
        match Sweep::<u128>::new(complex, g, gauge, bounds).run(&ordering, &mut observer)? {
            Attempt::Done((t, s)) => (t, s.max_seen, s.max_active, s.tree_edges),
            Attempt::Overflow => {
                match Sweep::<BigUint>::new(complex, g, gauge, bounds).run(&ordering, &mut observer)? {
                    Attempt::Done((t, s)) => (t, s.max_seen, s.max_active, s.tree_edges),
                    Attempt::Overflow => unreachable!("big integers do not overflow"),
                }
            }
        };
    let (homs, cocycles) = match gauge {
        Gauge::SpanningTree => (total, None),
        Gauge::None => {
            let gauge_size = BigUint::from(g.order()).pow((complex.vertex_count() - 1) as u32);
            if !(&total % &gauge_size).is_zero() {
                return Err(Error::Verification(format!(
                    "|Z¹| = {total} is not divisible by |G|^(v-1) = {gauge_size}"
                )));
            }
            (&total / &gauge_size, Some(total))
        }
    };
    Ok(DpReport {
        homs,
        cocycles,
        max_states,
        max_active_edges: max_active,
        tree_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{examples, greedy_ordering, presentation_from_complex};
    use crate::counting::count_homs;

    fn check(cx: &SimplicialComplex, g: &FiniteGroup) {
        let b = WorkBounds::default();
        let p = presentation_from_complex(cx, 0).unwrap();
        let brute = count_homs(&p, g, &b).unwrap();
        for ord in [SimplexOrdering::by_dimension(cx), greedy_ordering(cx)] {
            let tree = dp_count_homs_with(cx, &ord, g, &b, Gauge::SpanningTree, None).unwrap();
            assert_eq!(tree.homs, brute);
            if g.order() <= 3 {
                let none = dp_count_homs_with(cx, &ord, g, &b, Gauge::None, None).unwrap();
                assert_eq!(none.homs, brute);
            }
        }
    }

    #[test]
    fn agrees_with_enumeration() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
            for cx in [examples::disk(), examples::sphere(), examples::projective_plane(), examples::torus7()] {
                check(&cx, &g);
            }
        }
    }

    #[test]
    fn torus_into_s3() {
        let t = examples::torus7();
        let n = dp_count_homs(&t, &greedy_ordering(&t), &FiniteGroup::symmetric(3), &WorkBounds::default()).unwrap();
        assert_eq!(n, BigUint::from(18u32));
    }

    #[test]
    fn graphs_and_free_edges() {
        // π₁ of a cycle is Z; of a theta graph F2
        let c = examples::cycle(5);
        let s3 = FiniteGroup::symmetric(3);
        let b = WorkBounds::default();
        assert_eq!(dp_count_homs(&c, &greedy_ordering(&c), &s3, &b).unwrap(), BigUint::from(6u32));
        let theta = SimplicialComplex::from_maximal(4, &[vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3], vec![2, 3]]).unwrap();
        assert_eq!(dp_count_homs(&theta, &SimplexOrdering::by_dimension(&theta), &s3, &b).unwrap(), BigUint::from(36u32));
        let none = dp_count_homs_with(&theta, &SimplexOrdering::by_dimension(&theta), &s3, &b, Gauge::None, None).unwrap();
        assert_eq!(none.cocycles, Some(BigUint::from(6u32.pow(5))));
    }

    #[test]
    fn state_sums_track_prefix_cocycles() {
        // without a gauge, Σ counts · |G|^pending = |Z¹(X_k)|
        let cx = examples::projective_plane();
        let g = FiniteGroup::cyclic(2);
        let ord = greedy_ordering(&cx);
        let mut sums = Vec::new();
        let mut obs = |s: &CocycleDpState| {
            let total: BigUint = s.states.iter().map(|(_, c)| c.clone()).sum();
            assert!(s.states.iter().all(|(_, c)| !c.is_zero()));
            sums.push((s.prefix, total * BigUint::from(2u32).pow(s.pending_edges as u32)));
        };
        dp_count_homs_with(&cx, &ord, &g, &WorkBounds::default(), Gauge::None, Some(&mut obs)).unwrap();
        for (k, total) in sums {
            let prefix: Vec<usize> = ord.sequence()[..k].to_vec();
            assert_eq!(total, brute_cocycles(&cx, &prefix, &g), "prefix {k}");
        }
    }

    fn brute_cocycles(cx: &SimplicialComplex, prefix: &[usize], g: &FiniteGroup) -> BigUint {
        let edges: Vec<usize> = prefix.iter().copied().filter(|&s| cx.dim_of(s) == 1).collect();
        let tris: Vec<usize> = prefix.iter().copied().filter(|&s| cx.dim_of(s) == 2).collect();
        let n = g.order();
        let mut count = 0u64;
        for code in 0..n.pow(edges.len() as u32) {
            let mut c = code;
            let mut lab = HashMap::new();
            for &e in &edges {
                lab.insert(e, c % n);
                c /= n;
            }
            let ok = tris.iter().all(|&t| {
                let s = cx.simplex(t);
                let l = |a: u32, b: u32| lab[&cx.index_of(&[a, b]).unwrap()];
                g.mul(l(s[0], s[1]), l(s[1], s[2])) == l(s[0], s[2])
            });
            count += ok as u64;
        }
        count.into()
    }

    #[test]
    fn rejects_disconnected_and_bounds() {
        let two = SimplicialComplex::from_maximal(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let g = FiniteGroup::cyclic(2);
        assert!(dp_count_homs(&two, &SimplexOrdering::by_dimension(&two), &g, &WorkBounds::default()).is_err());
        let t = examples::torus7();
        let tight = WorkBounds {
            max_states: 2,
            ..WorkBounds::default()
        };
        let err = dp_count_homs(&t, &SimplexOrdering::by_dimension(&t), &FiniteGroup::symmetric(3), &tight);
        assert!(matches!(err, Err(Error::BoundExceeded { .. })));
    }
}
