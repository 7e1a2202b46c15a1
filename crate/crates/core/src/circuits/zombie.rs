use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::bounds::WorkBounds;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{rubik_membership, GSetAction, OrbitKind, Permutation};

use super::reversible::{Gate, ReversibleCircuit};
use super::rsat::{count_words, RsatAlphabet, RsatInstance};

/// A group-set alphabet for zombie circuits: one fixed point `z`, free orbits
/// otherwise, invariant subsets `I`, `F` and a warning alphabet `W` with two
/// marked symbols in distinct orbits.
#[derive(Clone, Debug)]
pub struct ZAlphabet {
    action: GSetAction,
    square: GSetAction,
    zombie: usize,
    init: Vec<usize>,
    finals: Vec<usize>,
    warning: Vec<usize>,
    z1: usize,
    z2: usize,
    /// Orbits of `I ∪ F`, in orbit order; data symbol `b` lifts to `rep(data[b])`.
    data: Vec<usize>,
    symbol_of_orbit: HashMap<usize, usize>,
    /// Orbits of `W` outside the orbits of `z1` and `z2`, target of the
    /// misalignment map.
    beta: Vec<usize>,
}

impl ZAlphabet {
    pub fn new(
        action: GSetAction,
        init: Vec<usize>,
        finals: Vec<usize>,
        warning: Vec<usize>,
        z1: usize,
        z2: usize,
    ) -> Result<Self> {
        let order = action.group().order();
        if order < 2 {
            return Err(Error::pre("zombie alphabets need a nontrivial group"));
        }
        let fixed = action.fixed_points();
        if fixed.len() != 1 {
            return Err(Error::pre(format!(
                "the alphabet must have exactly one fixed point, found {}",
                fixed.len()
            )));
        }
        if (0..action.orbit_count()).any(|o| action.orbit_kind(o) == OrbitKind::Other) {
            return Err(Error::pre("every non-fixed orbit must be free"));
        }
        let zombie = fixed[0];
        let n = action.points();
        let set = |v: &[usize]| -> Result<Vec<bool>> {
            let mut m = vec![false; n];
            for &x in v {
                if x >= n {
                    return Err(Error::pre(format!("symbol {x} outside the alphabet")));
                }
                m[x] = true;
            }
            Ok(m)
        };
        let (mi, mf, mw) = (set(&init)?, set(&finals)?, set(&warning)?);
        let invariant = |m: &[bool]| {
            (0..n).all(|x| !m[x] || (0..order).all(|g| m[action.act(g, x)]))
        };
        if !invariant(&mi) || !invariant(&mf) || !invariant(&mw) {
            return Err(Error::pre("I, F and W must be unions of orbits"));
        }
        let ni = mi.iter().filter(|&&b| b).count();
        let nf = mf.iter().filter(|&&b| b).count();
        let nw = mw.iter().filter(|&&b| b).count();
        let union = (0..n).filter(|&x| mi[x] || mf[x]).count();
        if mi[zombie] || mf[zombie] || mw[zombie] {
            return Err(Error::pre("the zombie symbol cannot lie in I, F or W"));
        }
        if ni < 2 * order || nf < 2 * order {
            return Err(Error::pre("need |I|, |F| ≥ 2|Γ|"));
        }
        if mi == mf {
            return Err(Error::pre("need I ≠ F"));
        }
        if n < 2 * union + 3 * order + 1 {
            return Err(Error::pre(format!(
                "need |A| ≥ 2|I ∪ F| + 3|Γ| + 1 = {}, have {n}",
                2 * union + 3 * order + 1
            )));
        }
        if (0..n).any(|x| mw[x] && (mi[x] || mf[x])) {
            return Err(Error::pre("W must avoid I ∪ F"));
        }
        if nw != union + 2 * order {
            return Err(Error::pre("need |W| = |I ∪ F| + 2|Γ|"));
        }
        if z1 >= n || z2 >= n || !mw[z1] || !mw[z2] {
            return Err(Error::pre("z1 and z2 must be warning symbols"));
        }
        if action.orbit_of(z1) == action.orbit_of(z2) {
            return Err(Error::pre("z1 and z2 must lie in distinct orbits"));
        }
        let mut data: Vec<usize> = (0..n)
            .filter(|&x| mi[x] || mf[x])
            .map(|x| action.orbit_of(x))
            .collect();
        data.dedup();
        data.sort_unstable();
        data.dedup();
        let symbol_of_orbit = data.iter().enumerate().map(|(b, &o)| (o, b)).collect();
        let mut beta: Vec<usize> = warning.iter().map(|&x| action.orbit_of(x)).collect();
        beta.sort_unstable();
        beta.dedup();
        beta.retain(|&o| o != action.orbit_of(z1) && o != action.orbit_of(z2));
        debug_assert_eq!(beta.len(), data.len());
        let square = action.diagonal_square();
        let sorted = |mut v: Vec<usize>| {
            v.sort_unstable();
            v
        };
        Ok(ZAlphabet {
            square,
            zombie,
            init: sorted(init),
            finals: sorted(finals),
            warning: sorted(warning),
            z1,
            z2,
            data,
            symbol_of_orbit,
            beta,
            action,
        })
    }

    /// The smallest conforming alphabet: `z` is point 0, then eleven regular
    /// orbits: `I` = orbits 0–1, `F` = orbits 2–3, `W` = orbits 4–9 with `z1`, `z2`
    /// in orbits 4 and 5, and one spare orbit.
    pub fn minimal(gamma: Arc<FiniteGroup>) -> Result<Self> {
        let m = gamma.order();
        let action = GSetAction::regular(gamma, 1, 11);
        let orbit = |j: usize| (1 + j * m..1 + (j + 1) * m).collect::<Vec<_>>();
        let pts = |r: std::ops::Range<usize>| r.flat_map(orbit).collect::<Vec<_>>();
        Self::new(action, pts(0..2), pts(2..4), pts(4..10), 1 + 4 * m, 1 + 5 * m)
    }

    pub fn action(&self) -> &GSetAction {
        &self.action
    }

    /// The diagonal action on `A²`, pair `(x, y)` numbered `x·|A| + y`.
    pub fn square(&self) -> &GSetAction {
        &self.square
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn size(&self) -> usize {
        self.action.points()
    }

    pub fn zombie(&self) -> usize {
        self.zombie
    }

    pub fn init(&self) -> &[usize] {
        &self.init
    }

    pub fn finals(&self) -> &[usize] {
        &self.finals
    }

    pub fn warning(&self) -> &[usize] {
        &self.warning
    }

    pub fn warning_marks(&self) -> (usize, usize) {
        (self.z1, self.z2)
    }

    fn is_data(&self, x: usize) -> bool {
        self.symbol_of_orbit.contains_key(&self.action.orbit_of(x))
    }

    /// The orbit alphabet `(I ∪ F)/Γ` with `I/Γ` and `F/Γ`.
    pub fn symbol_alphabet(&self) -> RsatAlphabet {
        let pick = |set: &[usize]| {
            let mut v: Vec<u32> = set
                .iter()
                .map(|&x| self.symbol_of_orbit[&self.action.orbit_of(x)] as u32)
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        RsatAlphabet::new(self.data.len(), pick(&self.init), pick(&self.finals))
            .expect("orbit alphabet is well formed")
    }

    /// Section lift of a data symbol.
    pub fn lift(&self, symbol: usize) -> usize {
        self.action.rep(self.data[symbol])
    }

    /// `(symbol, offset)` of a data point: `x = offset·lift(symbol)`.
    pub fn split(&self, x: usize) -> Option<(usize, usize)> {
        let b = *self.symbol_of_orbit.get(&self.action.orbit_of(x))?;
        Some((b, self.action.offset(x)))
    }

    fn data_points(&self) -> Vec<usize> {
        let mut v: Vec<usize> = std::iter::once(self.zombie)
            .chain((0..self.size()).filter(|&x| self.is_data(x)))
            .collect();
        v.sort_unstable();
        v
    }

    /// Main-computation gate for a binary gate `γ` on the orbit alphabet.
    pub fn main_gate(&self, gamma: &Gate) -> Result<Permutation> {
        let q = self.data.len();
        if gamma.arity() != 2 || gamma.table().len() != q * q {
            return Err(Error::pre("main gates come from binary gates on the orbit alphabet"));
        }
        let a = self.size();
        let z = self.zombie;
        let mut partial = vec![None; a * a];
        for &x in &self.data_points() {
            for &y in &self.data_points() {
                let image = match (self.split(x), self.split(y)) {
                    (Some((b1, g1)), Some((b2, g2))) => {
                        let mut t = [b1 as u32, b2 as u32];
                        gamma.apply_tuple(q, &mut t);
                        let c1 = self.action.act(g1, self.lift(t[0] as usize));
                        let c2 = self.action.act(g2, self.lift(t[1] as usize));
                        c1 * a + c2
                    }
                    _ => x * a + y,
                };
                debug_assert!(x != z || y != z || image == z * a + z);
                partial[x * a + y] = Some(image as u32);
            }
        }
        extend_to_rubik(&partial, &self.square)
    }

    /// Postcomputation gate: mixed zombie pairs produce `z1`/`z2` warnings,
    /// misaligned pairs send their first symbol into the warning alphabet, aligned
    /// pairs are fixed.
    pub fn post_gate(&self) -> Result<Permutation> {
        let a = self.size();
        let z = self.zombie;
        let act = &self.action;
        let mut partial = vec![None; a * a];
        for &x in &self.data_points() {
            for &y in &self.data_points() {
                let image = match (self.split(x), self.split(y)) {
                    _ if x == z && y == z => z * a + z,
                    (None, Some((_, g))) => act.act(g, self.z1) * a + y,
                    (Some((_, g)), None) => act.act(g, self.z2) * a + x,
                    (Some((b1, g1)), Some((_, g2))) => {
                        if g1 == g2 {
                            x * a + y
                        } else {
                            act.act(g1, act.rep(self.beta[b1])) * a + y
                        }
                    }
                    (None, None) => unreachable!(),
                };
                partial[x * a + y] = Some(image as u32);
            }
        }
        extend_to_rubik(&partial, &self.square)
    }
}

/// Extends an equivariant partial injection on a G-set to a permutation in the
/// Rubik group of the action.
///
/// Free orbits outside the domain are matched to free orbits outside the image,
/// orbits free on both sides first and mapped to themselves. The two
/// highest-numbered such orbits serve as scratch: swapping them repairs the
/// orbit parity, and a component on one of them repairs the abelianized product.
pub fn extend_to_rubik(partial: &[Option<u32>], act: &GSetAction) -> Result<Permutation> {
    let n = act.points();
    if partial.len() != n {
        return Err(Error::pre("partial map does not cover the G-set"));
    }
    let group = act.group();
    let mut hit = vec![false; n];
    for (x, y) in partial.iter().enumerate() {
        let Some(y) = *y else { continue };
        let y = y as usize;
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return Err(Error::pre("partial map is not injective"));
        }
        for g in group.elements() {
            if partial[act.act(g, x)] != Some(act.act(g, y) as u32) {
                return Err(Error::pre(format!("partial map is not equivariant at {x}")));
            }
        }
    }
    if (0..act.orbit_count()).any(|o| act.orbit_kind(o) == OrbitKind::Other) {
        return Err(Error::pre("the G-set has an orbit that is neither fixed nor free"));
    }

    let mut images: Vec<Option<u32>> = partial.to_vec();
    // fixed points
    let fixed = act.fixed_points();
    let mut spare_fixed: Vec<usize> = fixed.iter().copied().filter(|&x| !hit[x]).collect();
    for &x in &fixed {
        if images[x].is_none() {
            images[x] = Some(spare_fixed.remove(0) as u32);
        }
    }
    if let Some(&x) = fixed.iter().find(|&&x| act.orbit_kind(act.orbit_of(images[x].unwrap() as usize)) != OrbitKind::Fixed) {
        return Err(Error::pre(format!("fixed point {x} is sent into a free orbit")));
    }

    let free = act.free_orbits();
    let undefined: Vec<usize> = free
        .iter()
        .copied()
        .filter(|&o| partial[act.rep(o)].is_none())
        .collect();
    let unhit: Vec<usize> = free.iter().copied().filter(|&o| !hit[act.rep(o)]).collect();
    let both: Vec<usize> = undefined
        .iter()
        .copied()
        .filter(|o| unhit.binary_search(o).is_ok())
        .collect();
    if both.len() < 2 {
        return Err(Error::pre(
            "extension needs two free orbits untouched by the partial map",
        ));
    }
    let mut target: HashMap<usize, (usize, usize)> = HashMap::new();
    for &o in &both {
        target.insert(o, (o, 0));
    }
    let rest_u: Vec<usize> = undefined
        .iter()
        .copied()
        .filter(|o| both.binary_search(o).is_err())
        .collect();
    let rest_v = unhit.iter().copied().filter(|o| both.binary_search(o).is_err());
    for (u, v) in rest_u.into_iter().zip(rest_v) {
        target.insert(u, (v, 0));
    }
    let (s1, s2) = (both[both.len() - 2], both[both.len() - 1]);

    // orbit permutation and components of the whole map
    let position: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut orbit_images = vec![0u32; free.len()];
    let mut components = vec![0usize; free.len()];
    for (i, &o) in free.iter().enumerate() {
        let (to, c) = match partial[act.rep(o)] {
            Some(y) => (act.orbit_of(y as usize), act.offset(y as usize)),
            None => target[&o],
        };
        orbit_images[i] = position[&to] as u32;
        components[i] = c;
    }
    if !Permutation::from_images(orbit_images.clone())?.is_even() {
        orbit_images.swap(position[&s1], position[&s2]);
        target.insert(s1, (s2, 0));
        target.insert(s2, (s1, 0));
    }
    let ab = group.abelianization();
    let sigma = components
        .iter()
        .fold(0, |acc, &h| ab.quotient.mul(acc, ab.project(h)));
    if sigma != 0 {
        let fix = ab.lift(ab.quotient.inv(sigma));
        let entry = target.get_mut(&s1).unwrap();
        entry.1 = fix;
    }
    for (&o, &(to, c)) in &target {
        let rep_to = act.rep(to);
        for g in group.elements() {
            images[act.act(g, act.rep(o))] = Some(act.act(group.mul(g, c), rep_to) as u32);
        }
    }
    let images: Vec<u32> = images.into_iter().map(|y| y.expect("every point assigned")).collect();
    let p = Permutation::from_images(images)?;
    if !rubik_membership(&p, act)? {
        return Err(Error::Verification(
            "extension fell outside the Rubik group (odd fixed-point permutation?)".into(),
        ));
    }
    Ok(p)
}

/// A zombie circuit: binary planar gates in the Rubik group of the diagonal
/// action. Witnesses are words in `(I ∪ {z})ⁿ` whose image lies in `(F ∪ {z})ⁿ`.
#[derive(Clone, Debug)]
pub struct ZsatInstance {
    pub alphabet: Arc<ZAlphabet>,
    pub circuit: ReversibleCircuit,
}

impl ZsatInstance {
    pub fn width(&self) -> usize {
        self.circuit.width()
    }

    /// Checks that every gate is binary, planar, equivariant and in the Rubik group.
    pub fn verify(&self) -> Result<()> {
        let sq = self.alphabet.square();
        for (i, g) in self.circuit.gates().iter().enumerate() {
            if g.arity() != 2 || !g.is_planar() {
                return Err(Error::Verification(format!("gate {i} is not a planar binary gate")));
            }
            let p = Permutation::from_images(g.table().to_vec())?;
            if !sq.is_equivariant(&p) || !rubik_membership(&p, sq)? {
                return Err(Error::Verification(format!("gate {i} is not in the Rubik group")));
            }
        }
        Ok(())
    }

    /// The instance as an RSAT text block over `A` with `I ∪ {z}` and `F ∪ {z}`.
    pub fn to_text(&self) -> String {
        let z = self.alphabet.zombie();
        let with_z = |v: &[usize]| {
            let mut s: Vec<u32> = v.iter().map(|&x| x as u32).collect();
            s.push(z as u32);
            s.sort_unstable();
            s
        };
        let alph = RsatAlphabet::new(
            self.alphabet.size(),
            with_z(self.alphabet.init()),
            with_z(self.alphabet.finals()),
        )
        .unwrap();
        let mut s = format!("# zombie circuit over {}\n", self.alphabet.group().name());
        s.push_str(&RsatInstance::new(alph, self.circuit.clone()).unwrap().to_text());
        s
    }
}

/// Compiles a circuit on the orbit alphabet `(I ∪ F)/Γ` into a zombie circuit of
/// the same width: main gates for every gate (unary gates are widened to a
/// neighbouring wire), then the postcomputation gate on each adjacent pair from
/// left to right.
pub fn compile_zsat(c: &RsatInstance, z: &Arc<ZAlphabet>) -> Result<ZsatInstance> {
    if c.alphabet != z.symbol_alphabet() {
        return Err(Error::pre(
            "circuit alphabet does not match the orbit alphabet of the zombie alphabet",
        ));
    }
    let n = c.circuit.width();
    let q = c.alphabet.size();
    let planar = c.circuit.planarize();
    let mut out = ReversibleCircuit::new(z.size(), n);
    let mut cache: HashMap<Vec<u32>, Gate> = HashMap::new();
    let mut lower = |gamma: Gate, start: usize| -> Result<Gate> {
        if let Some(g) = cache.get(gamma.table()) {
            return Ok(g.on_wires(vec![start, start + 1]));
        }
        let p = z.main_gate(&gamma)?;
        let g = Gate::new(z.size(), vec![start, start + 1], p.images().to_vec())?;
        cache.insert(gamma.table().to_vec(), g.clone());
        Ok(g)
    };
    for g in planar.gates() {
        let w = g.wires()[0];
        let gate = match g.arity() {
            1 => {
                if n < 2 {
                    return Err(Error::pre("width-1 circuits with gates cannot be compiled"));
                }
                let u = g.table().to_vec();
                if w + 1 < n {
                    let b = Gate::from_fn(q, vec![0, 1], |x| vec![u[x[0] as usize], x[1]])?;
                    lower(b, w)?
                } else {
                    let b = Gate::from_fn(q, vec![0, 1], |x| vec![x[0], u[x[1] as usize]])?;
                    lower(b, w - 1)?
                }
            }
            2 => lower(g.on_wires(vec![0, 1]), w)?,
            k => {
                return Err(Error::pre(format!(
                    "zombie compilation takes unary and binary gates, found arity {k}"
                )))
            }
        };
        out.push(gate)?;
    }
    if n >= 2 {
        let post = Gate::new(z.size(), vec![0, 1], z.post_gate()?.images().to_vec())?;
        for i in 0..n - 1 {
            out.push(post.on_wires(vec![i, i + 1]))?;
        }
    }
    Ok(ZsatInstance {
        alphabet: z.clone(),
        circuit: out,
    })
}

pub fn count_zsat(instance: &ZsatInstance, bounds: &WorkBounds) -> Result<BigUint> {
    let z = &instance.alphabet;
    let mut domain: Vec<u32> = z.init().iter().map(|&x| x as u32).collect();
    domain.push(z.zombie() as u32);
    let mut accept = vec![false; z.size()];
    accept[z.zombie()] = true;
    for &f in z.finals() {
        accept[f] = true;
    }
    count_words(&instance.circuit, &domain, &accept, bounds, "ZSAT enumeration")
}

/// Relabels a paired-alphabet instance (`I = F = {0, 1}`) as an instance over the
/// orbit alphabet of `z`, assumed to have four symbols with `I/Γ = {0, 1}` and
/// `F/Γ = {2, 3}`: the circuit is kept and a final unary gate flips the ancilla
/// half of every symbol, moving `{0, 1}` onto `{2, 3}`.
pub fn orbit_instance_from_paired(paired: &RsatInstance, z: &ZAlphabet) -> Result<RsatInstance> {
    let target = z.symbol_alphabet();
    if paired.alphabet != super::rsat::paired_alphabet() {
        return Err(Error::pre("expected an instance over the paired alphabet"));
    }
    if target != RsatAlphabet::new(4, vec![0, 1], vec![2, 3]).unwrap() {
        return Err(Error::pre("orbit alphabet must be (4, {0,1}, {2,3})"));
    }
    let mut circuit = paired.circuit.clone();
    for w in 0..circuit.width() {
        circuit.push(Gate::unary(w, vec![2, 3, 0, 1])?)?;
    }
    RsatInstance::new(target, circuit)
}
