//! Finite groups stored as multiplication tables.
//!
//! Elements are dense ids `0..order` with `0` the identity. Groups built from
//! permutation generators number their elements in breadth-first discovery order,
//! which makes every derived quantity (canonical representatives, orbit leaders)
//! deterministic.

mod auto;
mod extension;
mod lattice;

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub use auto::{
    automorphisms, extend_homomorphism, find_isomorphism, greedy_generating_set, Automorphism,
};
pub use extension::StemExtension;
pub use lattice::{subgroup_lattice, Subgroup, SubgroupLattice};

/// Element id inside a [`FiniteGroup`].
pub type Elem = usize;

/// Orders up to this are checked for associativity on every triple.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 128;
/// Number of random triples checked above [`FULL_ASSOCIATIVITY_LIMIT`].
pub const ASSOCIATIVITY_SAMPLES: usize = 200_000;

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    perms: Option<Vec<Permutation>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates a row-major multiplication table: `table[a * order + b] = a·b`.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty group description".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        for a in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for b in 0..order {
                let r = table[a * order + b] as usize;
                let c = table[b * order + a] as usize;
                if r >= order || c >= order {
                    return Err(Error::InvalidGroup(format!("entry out of range in row {a}")));
                }
                if row_seen[r] {
                    return Err(Error::InvalidGroup(format!("row {a} is not a bijection")));
                }
                if col_seen[c] {
                    return Err(Error::InvalidGroup(format!("column {a} is not a bijection")));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(Error::InvalidGroup(
                    "element 0 is not a two-sided identity".into(),
                ));
            }
        }
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("latin square row contains the identity");
            inverse[a] = b as u32;
        }
        let group = FiniteGroup {
            name: name.into(),
            order,
            table,
            inverse,
            perms: None,
        };
        group.check_associativity()?;
        Ok(group)
    }

    /// Closes a list of permutations into a group by breadth-first search.
    pub fn from_permutations(name: impl Into<String>, gens: &[Permutation]) -> Result<Self> {
        let degree = gens.iter().map(Permutation::degree).max().unwrap_or(0);
        let gens: Vec<Permutation> = gens.iter().map(|g| g.extended(degree)).collect();
        let identity = Permutation::identity(degree);
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        let mut elems = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let next = elems[i].then(g);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(next);
                }
            }
        }
        let order = elems.len();
        let mut table = vec![0u32; order * order];
        for (a, pa) in elems.iter().enumerate() {
            for (b, pb) in elems.iter().enumerate() {
                table[a * order + b] = index[&pa.then(pb)] as u32;
            }
        }
        let mut inverse = vec![0u32; order];
        for (a, pa) in elems.iter().enumerate() {
            inverse[a] = index[&pa.inverse()] as u32;
        }
        Ok(FiniteGroup {
            name: name.into(),
            order,
            table,
            inverse,
            perms: Some(elems),
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let inverse = (0..n).map(|a| ((n - a) % n) as u32).collect();
        FiniteGroup {
            name: format!("Z{n}"),
            order: n,
            table,
            inverse,
            perms: None,
        }
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        let mut g = Self::from_permutations(format!("S{n}"), &gens).unwrap();
        if n < 2 {
            g.name = format!("S{n}");
        }
        g
    }

    pub fn alternating(n: usize) -> Self {
        let gens: Vec<Permutation> = (2..n)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        Self::from_permutations(format!("A{n}"), &gens).unwrap()
    }

    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3);
        let rot = Permutation::from_cycles(n, &[(0..n).collect()]).unwrap();
        let refl_cycles: Vec<Vec<usize>> =
            (1..n).filter(|&i| i < n - i).map(|i| vec![i, n - i]).collect();
        let refl = Permutation::from_cycles(n, &refl_cycles).unwrap();
        Self::from_permutations(format!("D{n}"), &[rot, refl]).unwrap()
    }

    /// `SL(2, p)` for a prime `p`, acting on the `p² − 1` nonzero vectors of `F_p²`.
    pub fn special_linear_2(p: usize) -> Result<Self> {
        if p < 2 || (2..p).any(|d| p % d == 0) {
            return Err(Error::pre(format!("SL(2, {p}) needs a prime modulus")));
        }
        let index = |x: usize, y: usize| x * p + y - 1;
        let act = |m: [usize; 4]| {
            let mut images = vec![0u32; p * p - 1];
            for x in 0..p {
                for y in 0..p {
                    if x == 0 && y == 0 {
                        continue;
                    }
                    let nx = (m[0] * x + m[1] * y) % p;
                    let ny = (m[2] * x + m[3] * y) % p;
                    images[index(x, y)] = index(nx, ny) as u32;
                }
            }
            Permutation::from_images(images).expect("invertible matrix")
        };
        let gens = [act([1, 1, 0, 1]), act([0, p - 1, 1, 0])];
        Self::from_permutations(format!("SL(2,{p})"), &gens)
    }

    /// `(a, b)` has id `a * |right| + b`.
    pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> Self {
        let (m, n) = (left.order, right.order);
        let order = m * n;
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            for y in 0..order {
                let a = left.mul(x / n, y / n);
                let b = right.mul(x % n, y % n);
                table[x * order + y] = (a * n + b) as u32;
            }
        }
        let inverse = (0..order)
            .map(|x| (left.inv(x / n) * n + right.inv(x % n)) as u32)
            .collect();
        FiniteGroup {
            name: format!("{}x{}", left.name, right.name),
            order,
            table,
            inverse,
            perms: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a] as usize
    }

    /// `a b a⁻¹ b⁻¹`.
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        self.mul(self.mul(ab, self.inv(a)), self.inv(b))
    }

    /// `g a g⁻¹`.
    pub fn conjugate(&self, g: Elem, a: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Permutation realising each element, when the group came from generators.
    pub fn permutations(&self) -> Option<&[Permutation]> {
        self.perms.as_deref()
    }

    pub fn element_label(&self, a: Elem) -> String {
        match &self.perms {
            Some(p) => p[a].to_string(),
            None => format!("g{a}"),
        }
    }

    pub fn raw_table(&self) -> &[u32] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted element ids of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order];
        self.close_into(gens, &mut seen, usize::MAX);
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// Order of `⟨gens⟩`, stopping early once it reaches `stop_at`.
    pub fn generated_order(&self, gens: &[Elem], stop_at: usize) -> usize {
        let mut seen = vec![false; self.order];
        self.close_into(gens, &mut seen, stop_at)
    }

    pub fn generates(&self, gens: &[Elem]) -> bool {
        self.generated_order(gens, self.order) == self.order
    }

    fn close_into(&self, gens: &[Elem], seen: &mut [bool], stop_at: usize) -> usize {
        let gens: Vec<Elem> = {
            let mut g: Vec<Elem> = gens.iter().copied().filter(|&x| x != 0).collect();
            g.sort_unstable();
            g.dedup();
            g
        };
        seen[0] = true;
        let mut count = 1;
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    if count >= stop_at {
                        return count;
                    }
                    queue.push(y);
                }
            }
        }
        count
    }

    pub fn center(&self) -> Vec<Elem> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Subgroup generated by all commutators `[a, b]`.
    pub fn commutator_subgroup(&self) -> Subgroup {
        let mut comms = vec![false; self.order];
        for a in 0..self.order {
            for b in 0..self.order {
                comms[self.commutator(a, b)] = true;
            }
        }
        let gens: Vec<Elem> = (0..self.order).filter(|&x| comms[x]).collect();
        Subgroup::from_sorted(self.closure(&gens))
    }

    pub fn is_perfect(&self) -> bool {
        self.commutator_subgroup().order() == self.order
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their smallest element,
    /// so the identity coset is `0`.
    pub fn quotient(&self, normal: &Subgroup) -> Result<(FiniteGroup, Vec<Elem>)> {
        if !normal.is_normal_in(self) {
            return Err(Error::pre("quotient by a subgroup that is not normal"));
        }
        let mut coset = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &n in normal.members() {
                coset[self.mul(g, n)] = c;
            }
        }
        let q = reps.len();
        let mut table = vec![0u32; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q + j] = coset[self.mul(a, b)] as u32;
            }
        }
        let inverse = reps.iter().map(|&a| coset[self.inv(a)] as u32).collect();
        let group = FiniteGroup {
            name: format!("{}/N{}", self.name, normal.order()),
            order: q,
            table,
            inverse,
            perms: None,
        };
        Ok((group, coset))
    }

    pub fn abelianization(&self) -> AbelianizationMap {
        let (quotient, projection) = self
            .quotient(&self.commutator_subgroup())
            .expect("commutator subgroup is normal");
        AbelianizationMap {
            quotient: quotient.with_name(format!("{}_ab", self.name)),
            projection,
        }
    }

    /// The subgroup as a group in its own right, plus the embedding back into `self`.
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> (FiniteGroup, Vec<Elem>) {
        let members = sub.members();
        let mut local = HashMap::with_capacity(members.len());
        for (i, &m) in members.iter().enumerate() {
            local.insert(m, i);
        }
        let k = members.len();
        let mut table = vec![0u32; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i * k + j] = local[&self.mul(a, b)] as u32;
            }
        }
        let inverse = members.iter().map(|&a| local[&self.inv(a)] as u32).collect();
        let perms = self
            .perms
            .as_ref()
            .map(|p| members.iter().map(|&m| p[m].clone()).collect());
        (
            FiniteGroup {
                name: format!("{}<{}>", self.name, k),
                order: k,
                table,
                inverse,
                perms,
            },
            members.to_vec(),
        )
    }

    /// Cheap isomorphism invariant: order, abelian flag, element-order histogram,
    /// center order and commutator-subgroup order.
    pub fn fingerprint(&self) -> GroupFingerprint {
        let mut hist: Vec<(usize, usize)> = Vec::new();
        let mut orders: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        orders.sort_unstable();
        for o in orders {
            match hist.last_mut() {
                Some((v, c)) if *v == o => *c += 1,
                _ => hist.push((o, 1)),
            }
        }
        GroupFingerprint {
            order: self.order,
            abelian: self.is_abelian(),
            element_orders: hist,
            center: self.center().len(),
            derived: self.commutator_subgroup().order(),
        }
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
        };
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(Error::InvalidGroup(format!(
                                "table is not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa550c);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(Error::InvalidGroup(format!(
                        "table is not associative at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupFingerprint {
    pub order: usize,
    pub abelian: bool,
    pub element_orders: Vec<(usize, usize)>,
    pub center: usize,
    pub derived: usize,
}

/// The projection `G → G/[G,G]`.
#[derive(Clone, Debug)]
pub struct AbelianizationMap {
    pub quotient: FiniteGroup,
    pub projection: Vec<Elem>,
}

impl AbelianizationMap {
    pub fn project(&self, g: Elem) -> Elem {
        self.projection[g]
    }

    /// Some preimage of a quotient element.
    pub fn lift(&self, q: Elem) -> Elem {
        self.projection
            .iter()
            .position(|&p| p == q)
            .expect("projection is surjective")
    }
}
