use std::fmt::Write as _;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bounds::WorkBounds;
use crate::error::{Error, Result};

use super::boolean::{BoolOp, BooleanCircuit};
use super::reversible::{decode, encode, Gate, ReversibleCircuit};

/// A finite alphabet `0..size` with initialization and finalization subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsatAlphabet {
    size: usize,
    init: Vec<u32>,
    finals: Vec<u32>,
}

impl RsatAlphabet {
    pub fn new(size: usize, mut init: Vec<u32>, mut finals: Vec<u32>) -> Result<Self> {
        init.sort_unstable();
        init.dedup();
        finals.sort_unstable();
        finals.dedup();
        if size < 2 {
            return Err(Error::pre("an alphabet needs at least two symbols"));
        }
        if init.iter().chain(&finals).any(|&s| s as usize >= size) {
            return Err(Error::pre("initialization or finalization symbol out of range"));
        }
        Ok(RsatAlphabet { size, init, finals })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn init(&self) -> &[u32] {
        &self.init
    }

    pub fn finals(&self) -> &[u32] {
        &self.finals
    }

    pub fn is_init(&self, s: u32) -> bool {
        self.init.binary_search(&s).is_ok()
    }

    pub fn is_final(&self, s: u32) -> bool {
        self.finals.binary_search(&s).is_ok()
    }

    /// `2 ≤ |I|, |F| < |A|`, the regime where satisfiability is nontrivial.
    pub fn is_nontrivial(&self) -> bool {
        let ok = |n: usize| n >= 2 && n < self.size;
        ok(self.init.len()) && ok(self.finals.len())
    }

    fn outside(&self) -> Vec<u32> {
        (0..self.size as u32)
            .filter(|&s| !self.is_init(s) && !self.is_final(s))
            .collect()
    }
}

/// Witnesses are words `x ∈ Iⁿ` with `C(x) ∈ Fⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsatInstance {
    pub alphabet: RsatAlphabet,
    pub circuit: ReversibleCircuit,
}

impl RsatInstance {
    pub fn new(alphabet: RsatAlphabet, circuit: ReversibleCircuit) -> Result<Self> {
        if alphabet.size != circuit.alphabet() {
            return Err(Error::pre(format!(
                "circuit over {} symbols with an alphabet of {}",
                circuit.alphabet(),
                alphabet.size
            )));
        }
        Ok(RsatInstance { alphabet, circuit })
    }

    /// `alphabet`, `init`, `final`, then the circuit block.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        writeln!(s, "alphabet {}", self.alphabet.size).unwrap();
        writeln!(s, "init {}", list(&self.alphabet.init)).unwrap();
        writeln!(s, "final {}", list(&self.alphabet.finals)).unwrap();
        s.push_str(&self.circuit.gates_to_text());
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut size = None;
        let mut init = None;
        let mut finals = None;
        let mut circuit: Option<ReversibleCircuit> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let ids = |t: &[&str]| -> Result<Vec<u32>> {
                t.iter()
                    .map(|x| x.parse().map_err(|_| Error::parse(line_no, format!("bad symbol {x}"))))
                    .collect()
            };
            match toks[0] {
                "alphabet" => {
                    size = Some(
                        toks.get(1)
                            .and_then(|t| t.parse::<usize>().ok())
                            .filter(|&q| q >= 2)
                            .ok_or_else(|| Error::parse(line_no, "expected `alphabet <size ≥ 2>`"))?,
                    )
                }
                "init" => init = Some(ids(&toks[1..])?),
                "final" => finals = Some(ids(&toks[1..])?),
                "width" => {
                    let q = size.ok_or_else(|| Error::parse(line_no, "`width` before `alphabet`"))?;
                    let n: usize = toks
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::parse(line_no, "expected `width <n>`"))?;
                    circuit = Some(ReversibleCircuit::new(q, n));
                }
                "gate" => {
                    let c = circuit
                        .as_mut()
                        .ok_or_else(|| Error::parse(line_no, "`gate` before `width`"))?;
                    let g = c.parse_gate(line_no, &toks[1..])?;
                    c.push(g)?;
                }
                other => return Err(Error::parse(line_no, format!("unknown keyword {other}"))),
            }
        }
        let size = size.ok_or_else(|| Error::parse(0, "missing `alphabet`"))?;
        let alphabet = RsatAlphabet::new(
            size,
            init.ok_or_else(|| Error::parse(0, "missing `init`"))?,
            finals.ok_or_else(|| Error::parse(0, "missing `final`"))?,
        )?;
        let circuit = circuit.ok_or_else(|| Error::parse(0, "missing `width`"))?;
        Self::new(alphabet, circuit)
    }
}

/// Counts words over `domain` of length `width` whose image lies in `accept`,
/// splitting the search on the first symbol.
pub(crate) fn count_words(
    circuit: &ReversibleCircuit,
    domain: &[u32],
    accept: &[bool],
    bounds: &WorkBounds,
    what: &'static str,
) -> Result<BigUint> {
    let n = circuit.width();
    let d = domain.len() as u64;
    let total = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(d));
    match total {
        Some(t) if t <= bounds.max_enumeration => {}
        _ => return Err(Error::bound(what, format!("{d}^{n}"), bounds.max_enumeration)),
    }
    if n == 0 || d == 0 {
        return Ok(BigUint::from(u8::from(n == 0)));
    }
    // Words are evaluated in blocks, gate by gate across the block.
    const BLOCK: u64 = 2048;
    let total = total.unwrap();
    let alphabet = circuit.alphabet();
    let blocks = total.div_ceil(BLOCK);
    let count_block = |b: u64| -> u64 {
        let start = b * BLOCK;
        let len = BLOCK.min(total - start) as usize;
        let mut rows = vec![0u32; len * n];
        for (k, row) in rows.chunks_exact_mut(n).enumerate() {
            let mut code = start + k as u64;
            for slot in row.iter_mut().rev() {
                *slot = domain[(code % d) as usize];
                code /= d;
            }
        }
        for g in circuit.gates() {
            g.apply_rows(alphabet, &mut rows, n);
        }
        rows.chunks_exact(n)
            .filter(|row| row.iter().all(|&s| accept[s as usize]))
            .count() as u64
    };
    let total: u64 = (0..blocks).into_par_iter().map(count_block).sum();
    Ok(BigUint::from(total))
}

pub fn count_rsat(instance: &RsatInstance, bounds: &WorkBounds) -> Result<BigUint> {
    let mut accept = vec![false; instance.alphabet.size];
    for &f in &instance.alphabet.finals {
        accept[f as usize] = true;
    }
    count_words(&instance.circuit, &instance.alphabet.init, &accept, bounds, "RSAT enumeration")
}

/// Binary circuit with variable wires `0..variables`, ancillas after them set to
/// zero, and a decision bit on wire `output`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rsat1Instance {
    pub circuit: ReversibleCircuit,
    pub variables: usize,
    pub ancillas: usize,
    pub output: usize,
}

impl Rsat1Instance {
    pub fn count(&self, bounds: &WorkBounds) -> Result<BigUint> {
        check_bits(self.variables, bounds, "RSAT1 enumeration")?;
        let width = self.circuit.width();
        let hits = (0..1u64 << self.variables)
            .into_par_iter()
            .filter(|&x| {
                let mut state: Vec<u32> = (0..width)
                    .map(|i| if i < self.variables { ((x >> i) & 1) as u32 } else { 0 })
                    .collect();
                self.circuit.eval_in_place(&mut state);
                state[self.output] == 1
            })
            .count();
        Ok(BigUint::from(hits))
    }
}

fn check_bits(bits: usize, bounds: &WorkBounds, what: &'static str) -> Result<()> {
    if bits >= 63 || (1u64 << bits) > bounds.max_enumeration {
        return Err(Error::bound(what, format!("2^{bits}"), bounds.max_enumeration));
    }
    Ok(())
}

/// Gate dilation: every gate writes into a fresh zero ancilla. An output that is
/// a circuit input is copied onto one more ancilla.
pub fn dilate_to_reversible(c: &BooleanCircuit) -> Rsat1Instance {
    let n = c.inputs();
    let copy_output = c.output() < n;
    let ancillas = c.gates().len() + usize::from(copy_output);
    let mut circuit = ReversibleCircuit::new(2, n + ancillas);
    for (i, g) in c.gates().iter().enumerate() {
        let target = n + i;
        let gate = match g.op {
            BoolOp::And => Gate::toffoli(g.inputs[0], g.inputs[1], target),
            BoolOp::Or => Gate::dilation(&g.inputs, target, |x| x[0] | x[1]),
            BoolOp::Not => Gate::dilation(&g.inputs, target, |x| x[0] ^ 1),
            BoolOp::Copy => Gate::cnot(g.inputs[0], target),
        };
        circuit.push(gate).expect("wires are in range");
    }
    let output = if copy_output {
        circuit.push(Gate::cnot(c.output(), n + c.gates().len())).unwrap();
        n + c.gates().len()
    } else {
        c.output()
    };
    Rsat1Instance {
        circuit,
        variables: n,
        ancillas,
        output,
    }
}

/// Binary circuit where the `zeros` wires must read 0 at both ends and the
/// `variables` wires are free; the two lists have equal length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rsat2Instance {
    pub circuit: ReversibleCircuit,
    pub variables: Vec<usize>,
    pub zeros: Vec<usize>,
}

impl Rsat2Instance {
    pub fn count(&self, bounds: &WorkBounds) -> Result<BigUint> {
        let m = self.variables.len();
        check_bits(m, bounds, "RSAT2 enumeration")?;
        let width = self.circuit.width();
        let hits = (0..1u64 << m)
            .into_par_iter()
            .filter(|&x| {
                let mut state = vec![0u32; width];
                for (i, &w) in self.variables.iter().enumerate() {
                    state[w] = ((x >> i) & 1) as u32;
                }
                self.circuit.eval_in_place(&mut state);
                self.zeros.iter().all(|&w| state[w] == 0)
            })
            .count();
        Ok(BigUint::from(hits))
    }
}

/// Uncomputation: run `C`, copy the decision bit onto a fresh bit `b` and negate
/// it, run `C⁻¹`, then pad so that half the register is variable.
///
/// Layout: `x` (n), ancillas `a` (k), `b`, then either `n − k − 1` idle zero
/// wires or `k + 1 − n` junk inputs that are copied onto the first ancillas.
pub fn uncompute_wrap(c: &Rsat1Instance) -> Result<Rsat2Instance> {
    let (n, k) = (c.variables, c.ancillas);
    if n == 0 {
        return Err(Error::pre("uncomputation needs at least one variable input"));
    }
    let m = n.max(k + 1);
    let b = n + k;
    let mut circuit = c.circuit.widened(2 * m);
    circuit.push(Gate::cnot(c.output, b))?;
    circuit.push(Gate::not(b))?;
    circuit.extend(c.circuit.inverse().gates().iter().cloned())?;
    let mut variables: Vec<usize> = (0..n).collect();
    let mut zeros: Vec<usize> = (n..=b).collect();
    if n > k + 1 {
        zeros.extend(b + 1..2 * m);
    } else {
        for (i, j) in (b + 1..2 * m).enumerate() {
            variables.push(j);
            circuit.push(Gate::cnot(j, n + i))?;
        }
    }
    Ok(Rsat2Instance {
        circuit,
        variables,
        zeros,
    })
}

/// The paired alphabet `Z/2 × Z/2`: symbol `x + 2a` holds a variable bit `x` and
/// an ancilla bit `a`, with `I = F = {(0,0), (1,0)} = {0, 1}`.
pub fn paired_alphabet() -> RsatAlphabet {
    RsatAlphabet::new(4, vec![0, 1], vec![0, 1]).unwrap()
}

/// Groups `variables[j]` with `zeros[j]` into symbol `j` of the paired alphabet and
/// rewrites each bit gate as binary gates on symbols.
pub fn pair_bits(c: &Rsat2Instance) -> Result<RsatInstance> {
    let m = c.variables.len();
    if c.zeros.len() != m || c.circuit.width() != 2 * m {
        return Err(Error::pre("RSAT2 instance must split its register in half"));
    }
    let mut slot = vec![(usize::MAX, 0usize); 2 * m];
    for j in 0..m {
        slot[c.variables[j]] = (j, 0);
        slot[c.zeros[j]] = (j, 1);
    }
    let mut out = ReversibleCircuit::new(4, m);
    for g in c.circuit.gates() {
        let mut symbols: Vec<usize> = Vec::new();
        for &w in g.wires() {
            if !symbols.contains(&slot[w].0) {
                symbols.push(slot[w].0);
            }
        }
        if symbols.len() <= 2 {
            let bits: Vec<(usize, usize)> = g
                .wires()
                .iter()
                .map(|&w| (symbols.iter().position(|&s| s == slot[w].0).unwrap(), slot[w].1))
                .collect();
            out.push(symbol_gate(&symbols, |state| {
                let x: Vec<u32> = bits.iter().map(|&(p, b)| state[p][b]).collect();
                let mut y = x;
                g.apply_tuple(2, &mut y);
                for (&(p, b), v) in bits.iter().zip(y) {
                    state[p][b] = v;
                }
            }))?;
            continue;
        }
        // three bits in three symbols: must be a dilation t ^= f(c1, c2)
        let t = dilation_target(g).ok_or_else(|| {
            Error::pre("a three-symbol bit gate must change a single bit")
        })?;
        let controls: Vec<usize> = (0..3).filter(|&i| i != t).collect();
        let f = |c1: u32, c2: u32| -> u32 {
            let mut x = [0u32; 3];
            x[controls[0]] = c1;
            x[controls[1]] = c2;
            let mut y = x;
            g.apply_tuple(2, &mut y);
            y[t] ^ x[t]
        };
        let (p, pb) = slot[g.wires()[controls[0]]];
        let (q, qb) = slot[g.wires()[controls[1]]];
        let (r, rb) = slot[g.wires()[t]];
        let spare = 1 - qb;
        let stash = symbol_gate(&[p, q], |s| {
            let v = f(s[0][pb], s[1][qb]);
            s[1][spare] ^= v;
        });
        let kick = symbol_gate(&[q, r], |s| {
            s[1][rb] ^= s[0][spare];
        });
        out.extend([stash.clone(), kick.clone(), stash, kick])?;
    }
    RsatInstance::new(paired_alphabet(), out)
}

fn dilation_target(g: &Gate) -> Option<usize> {
    let mut target = None;
    for idx in 0..8usize {
        let y = g.table()[idx] as usize;
        let diff = idx ^ y;
        if diff == 0 {
            continue;
        }
        if diff.count_ones() != 1 {
            return None;
        }
        // wire 0 is the most significant bit of the index
        let pos = 2 - diff.trailing_zeros() as usize;
        if *target.get_or_insert(pos) != pos {
            return None;
        }
    }
    Some(target.unwrap_or(2))
}

/// A gate over the paired alphabet acting on `symbols`; `f` edits the bits
/// `state[position][0 = variable, 1 = ancilla]`.
fn symbol_gate(symbols: &[usize], f: impl Fn(&mut [[u32; 2]])) -> Gate {
    Gate::from_fn(4, symbols.to_vec(), |x| {
        let mut state: Vec<[u32; 2]> = x.iter().map(|&s| [s & 1, s >> 1]).collect();
        f(&mut state);
        state.iter().map(|b| b[0] | (b[1] << 1)).collect()
    })
    .expect("bit edits on symbols are bijective")
}

/// Embeds an instance into a target alphabet with `I ∩ F = ∅`. Source symbols are
/// placed injectively with `I_s` inside `I` and the rest outside `I ∪ F`; every
/// gate acts as before on embedded tuples and fixes tuples holding other symbols,
/// up to a parity correction on tuples that start with a finalization symbol. A
/// final unary permutation sends the embedded `F_s` into `F` and every other
/// symbol that can occur into the complement of `F`.
pub fn regroup_embed(source: &RsatInstance, target: &RsatAlphabet) -> Result<RsatInstance> {
    let src = &source.alphabet;
    if target.init.iter().any(|&s| target.is_final(s)) {
        return Err(Error::pre("target alphabet must have disjoint I and F"));
    }
    let outside = target.outside();
    if outside.len() < 2 {
        return Err(Error::pre("target alphabet needs two symbols outside I ∪ F"));
    }
    if target.init.len() < 2 || target.finals.len() < 2 {
        return Err(Error::pre("target alphabet needs |I|, |F| ≥ 2"));
    }
    let rest: Vec<u32> = (0..src.size as u32).filter(|&s| !src.is_init(s)).collect();
    if src.init.len() > target.init.len()
        || rest.len() > outside.len()
        || src.finals.len() > target.finals.len()
    {
        return Err(Error::pre("target alphabet is too small for the embedding"));
    }
    let q = target.size;
    let mut embed = vec![0u32; src.size];
    for (i, &s) in src.init.iter().enumerate() {
        embed[s as usize] = target.init[i];
    }
    for (i, &s) in rest.iter().enumerate() {
        embed[s as usize] = outside[i];
    }
    let mut preimage = vec![u32::MAX; q];
    for (s, &e) in embed.iter().enumerate() {
        preimage[e as usize] = s as u32;
    }

    let (f0, f1) = (target.finals[0], target.finals[1]);
    let mut out = ReversibleCircuit::new(q, source.circuit.width());
    for g in source.circuit.gates() {
        let k = g.arity();
        // identity off the embedded tuples
        let size = q.pow(k as u32);
        let mut table: Vec<u32> = (0..size as u32).collect();
        let mut x = vec![0u32; k];
        for (idx, &img) in g.table().iter().enumerate() {
            decode(idx, src.size, &mut x);
            let from = x.iter().fold(0, |acc, &s| acc * q + embed[s as usize] as usize);
            decode(img as usize, src.size, &mut x);
            let to = x.iter().fold(0, |acc, &s| acc * q + embed[s as usize] as usize);
            table[from] = to as u32;
        }
        let mut gate = Gate::new(q, g.wires().to_vec(), table)?;
        if !gate.is_even() {
            let a = vec![f0; k];
            let mut b = vec![f0; k];
            b[0] = f1;
            let (ia, ib) = (encode(&a, q), encode(&b, q));
            let mut table = gate.table().to_vec();
            table.swap(ia, ib);
            gate = Gate::new(q, g.wires().to_vec(), table)?;
        }
        debug_assert!(gate.is_even());
        out.push(gate)?;
    }

    let mut pi = vec![u32::MAX; q];
    let mut used = vec![false; q];
    for (i, &f) in src.finals.iter().enumerate() {
        let t = target.finals[i];
        pi[embed[f as usize] as usize] = t;
        used[t as usize] = true;
    }
    let reachable = |s: u32| target.is_init(s) || preimage[s as usize] != u32::MAX;
    let mut non_final = (0..q as u32).filter(|&s| !target.is_final(s));
    for s in 0..q as u32 {
        if pi[s as usize] == u32::MAX && reachable(s) {
            let t = non_final.find(|&t| !used[t as usize]).expect("room outside F");
            pi[s as usize] = t;
            used[t as usize] = true;
        }
    }
    let mut free = Vec::new();
    let mut spare = (0..q as u32).filter(|&t| !used[t as usize]);
    for s in 0..q {
        if pi[s] == u32::MAX {
            pi[s] = spare.next().unwrap();
            free.push(s);
        }
    }
    let mut fin = Gate::unary(0, pi)?;
    if !fin.is_even() {
        let mut table = fin.table().to_vec();
        table.swap(free[0], free[1]);
        fin = Gate::unary(0, table)?;
    }
    for w in 0..out.width() {
        out.push(fin.on_wires(vec![w]))?;
    }
    RsatInstance::new(target.clone(), out)
}

/// Smallest `k ≥ 1` with `|A|^k ≥ |I|^k + |F|^k + 2`.
pub fn packing_degree(alphabet: &RsatAlphabet) -> Result<usize> {
    if !alphabet.is_nontrivial() {
        return Err(Error::pre("packing needs 2 ≤ |I|, |F| < |A|"));
    }
    let (a, i, f) = (
        alphabet.size as u128,
        alphabet.init.len() as u128,
        alphabet.finals.len() as u128,
    );
    for k in 1..=40u32 {
        if a.pow(k) >= i.pow(k) + f.pow(k) + 2 {
            return Ok(k as usize);
        }
    }
    Err(Error::pre("no packing degree below 40"))
}

/// The intermediate alphabet `A^k` with `I^k` and a finalization set of size
/// `|F|^k` outside it (`F^k` itself when `I ∩ F = ∅`).
pub fn packed_alphabet(alphabet: &RsatAlphabet, k: usize) -> Result<RsatAlphabet> {
    let q = alphabet.size;
    let size = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(q)).filter(|&s| s <= 1 << 20);
    let size = size.ok_or_else(|| Error::pre("packed alphabet is too large"))?;
    let power = |set: &[u32]| -> Vec<u32> {
        let mut words = vec![0u32];
        for _ in 0..k {
            words = words
                .iter()
                .flat_map(|&w| set.iter().map(move |&s| w * q as u32 + s))
                .collect();
        }
        words.sort_unstable();
        words
    };
    let init = power(&alphabet.init);
    let fk = power(&alphabet.finals);
    let finals = if alphabet.init.iter().any(|&s| alphabet.is_final(s)) {
        (0..size as u32)
            .filter(|s| init.binary_search(s).is_err())
            .take(fk.len())
            .collect()
    } else {
        fk
    };
    RsatAlphabet::new(size, init, finals)
}

/// Replaces each symbol of `A^k` by `k` symbols of `A`, keeping every gate table,
/// and appends a unary permutation of `A^k` sending the packed finalization set
/// onto `F^k`.
pub fn pack_alphabet(source: &RsatInstance, target: &RsatAlphabet) -> Result<RsatInstance> {
    let k = packing_degree(target)?;
    let expected = packed_alphabet(target, k)?;
    if source.alphabet != expected {
        return Err(Error::pre(format!(
            "source alphabet is not the degree-{k} packing of the target"
        )));
    }
    let q = target.size;
    let mut out = ReversibleCircuit::new(q, source.circuit.width() * k);
    let spread = |wires: &[usize]| -> Vec<usize> {
        wires.iter().flat_map(|&w| w * k..(w + 1) * k).collect()
    };
    for g in source.circuit.gates() {
        out.push(Gate::new(q, spread(g.wires()), g.table().to_vec())?)?;
    }
    let fk = packed_alphabet(&RsatAlphabet::new(q, target.finals.clone(), target.finals.clone())?, k)?
        .init
        .clone();
    if fk != expected.finals {
        let size = expected.size;
        let mut sigma = vec![0u32; size];
        for (&a, &b) in expected.finals.iter().zip(&fk) {
            sigma[a as usize] = b;
        }
        let not_a = (0..size as u32).filter(|s| expected.finals.binary_search(s).is_err());
        let not_b = (0..size as u32).filter(|s| fk.binary_search(s).is_err());
        for (a, b) in not_a.zip(not_b) {
            sigma[a as usize] = b;
        }
        for w in 0..source.circuit.width() {
            out.push(Gate::new(q, spread(&[w]), sigma.clone())?)?;
        }
    }
    RsatInstance::new(target.clone(), out)
}
