use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A reversible gate: a permutation of `A^k` applied to the listed wires. Table
/// index and value encode the `k` symbols in base `|A|`, first wire most
/// significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    wires: Vec<usize>,
    table: Arc<Vec<u32>>,
}

impl Gate {
    pub fn new(alphabet: usize, wires: Vec<usize>, table: Vec<u32>) -> Result<Self> {
        let k = wires.len();
        if k == 0 {
            return Err(Error::pre("gate acts on no wires"));
        }
        let size = checked_pow(alphabet, k)?;
        if table.len() != size {
            return Err(Error::pre(format!(
                "gate on {k} wires over {alphabet} symbols needs {size} entries, got {}",
                table.len()
            )));
        }
        let mut seen = vec![false; size];
        for &y in &table {
            if y as usize >= size || std::mem::replace(&mut seen[y as usize], true) {
                return Err(Error::pre("gate table is not a bijection"));
            }
        }
        let mut sorted = wires.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k {
            return Err(Error::pre("gate lists a wire twice"));
        }
        Ok(Gate {
            wires,
            table: Arc::new(table),
        })
    }

    /// Builds the table by evaluating `f` on every tuple.
    pub fn from_fn(
        alphabet: usize,
        wires: Vec<usize>,
        f: impl Fn(&[u32]) -> Vec<u32>,
    ) -> Result<Self> {
        let k = wires.len();
        let size = checked_pow(alphabet, k)?;
        let mut table = Vec::with_capacity(size);
        let mut tuple = vec![0u32; k];
        for idx in 0..size {
            decode(idx, alphabet, &mut tuple);
            let out = f(&tuple);
            if out.len() != k || out.iter().any(|&s| s as usize >= alphabet) {
                return Err(Error::pre("gate function returned a malformed tuple"));
            }
            table.push(encode(&out, alphabet) as u32);
        }
        Self::new(alphabet, wires, table)
    }

    pub fn swap(alphabet: usize, a: usize, b: usize) -> Self {
        Self::from_fn(alphabet, vec![a, b], |x| vec![x[1], x[0]]).expect("swap is a bijection")
    }

    /// A unary permutation of the alphabet.
    pub fn unary(wire: usize, perm: Vec<u32>) -> Result<Self> {
        let q = perm.len();
        Self::new(q, vec![wire], perm)
    }

    pub fn not(wire: usize) -> Self {
        Self::new(2, vec![wire], vec![1, 0]).unwrap()
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self::dilation(&[control], target, |x| x[0])
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Self {
        Self::dilation(&[c1, c2], target, |x| x[0] & x[1])
    }

    /// Reversible dilation of a Boolean function: `(x, a) ↦ (x, a ⊕ f(x))`, on the
    /// wires `controls ++ [target]`.
    pub fn dilation(controls: &[usize], target: usize, f: impl Fn(&[u32]) -> u32) -> Self {
        let mut wires = controls.to_vec();
        wires.push(target);
        let k = controls.len();
        Self::from_fn(2, wires, |x| {
            let mut y = x.to_vec();
            y[k] ^= f(&x[..k]) & 1;
            y
        })
        .expect("dilations are involutions")
    }

    pub fn wires(&self) -> &[usize] {
        &self.wires
    }

    pub fn arity(&self) -> usize {
        self.wires.len()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Same permutation on other wires.
    pub fn on_wires(&self, wires: Vec<usize>) -> Self {
        assert_eq!(wires.len(), self.wires.len());
        Gate {
            wires,
            table: self.table.clone(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Gate {
            wires: self.wires.clone(),
            table: Arc::new(inv),
        }
    }

    /// Parity of the permutation of `A^k` (not of the whole register).
    pub fn is_even(&self) -> bool {
        let n = self.table.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0usize;
        for start in 0..n {
            let mut x = start;
            let mut len = 0usize;
            while !seen[x] {
                seen[x] = true;
                x = self.table[x] as usize;
                len += 1;
            }
            transpositions += len.saturating_sub(1);
        }
        transpositions % 2 == 0
    }

    pub fn is_planar(&self) -> bool {
        self.wires.windows(2).all(|w| w[1] == w[0] + 1)
    }

    /// Applies the gate to a bare `k`-tuple, ignoring the wire list.
    pub fn apply_tuple(&self, alphabet: usize, x: &mut [u32]) {
        let idx = encode(x, alphabet);
        decode(self.table[idx] as usize, alphabet, x);
    }

    pub fn apply(&self, alphabet: usize, state: &mut [u32]) {
        if alphabet.is_power_of_two() {
            let bits = alphabet.trailing_zeros();
            let mask = alphabet - 1;
            let mut idx = 0usize;
            for &w in &self.wires {
                idx = (idx << bits) | state[w] as usize;
            }
            let mut y = self.table[idx] as usize;
            for &w in self.wires.iter().rev() {
                state[w] = (y & mask) as u32;
                y >>= bits;
            }
            return;
        }
        let mut idx = 0usize;
        for &w in &self.wires {
            idx = idx * alphabet + state[w] as usize;
        }
        let mut y = self.table[idx] as usize;
        for &w in self.wires.iter().rev() {
            state[w] = (y % alphabet) as u32;
            y /= alphabet;
        }
    }
}

impl Gate {
    /// Applies the gate to every row of a row-major block of words of length `width`.
    pub(crate) fn apply_rows(&self, alphabet: usize, rows: &mut [u32], width: usize) {
        let t = &self.table[..];
        match (self.wires.as_slice(), alphabet.is_power_of_two()) {
            (&[w], _) => {
                for row in rows.chunks_exact_mut(width) {
                    row[w] = t[row[w] as usize];
                }
            }
            (&[w0, w1], true) => {
                let bits = alphabet.trailing_zeros();
                let mask = (alphabet - 1) as u32;
                for row in rows.chunks_exact_mut(width) {
                    let y = t[((row[w0] as usize) << bits) | row[w1] as usize];
                    row[w0] = y >> bits;
                    row[w1] = y & mask;
                }
            }
            (&[w0, w1], false) => {
                let a = alphabet as u32;
                for row in rows.chunks_exact_mut(width) {
                    let y = t[(row[w0] * a + row[w1]) as usize];
                    row[w0] = y / a;
                    row[w1] = y % a;
                }
            }
            _ => {
                for row in rows.chunks_exact_mut(width) {
                    self.apply(alphabet, row);
                }
            }
        }
    }
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .filter(|&v| v <= 1 << 24)
            .ok_or_else(|| Error::pre(format!("gate table {base}^{exp} is too large")))?;
    }
    Ok(acc)
}

pub(crate) fn encode(tuple: &[u32], alphabet: usize) -> usize {
    tuple.iter().fold(0, |acc, &s| acc * alphabet + s as usize)
}

pub(crate) fn decode(mut idx: usize, alphabet: usize, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (idx % alphabet) as u32;
        idx /= alphabet;
    }
}

/// A width-`n` register over `0..alphabet` and a gate sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversibleCircuit {
    alphabet: usize,
    width: usize,
    gates: Vec<Gate>,
}

impl ReversibleCircuit {
    pub fn new(alphabet: usize, width: usize) -> Self {
        assert!(alphabet >= 2, "alphabet needs at least two symbols");
        ReversibleCircuit {
            alphabet,
            width,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        if let Some(&w) = gate.wires.iter().find(|&&w| w >= self.width) {
            return Err(Error::pre(format!(
                "gate wire {w} outside a register of width {}",
                self.width
            )));
        }
        if checked_pow(self.alphabet, gate.arity())? != gate.table.len() {
            return Err(Error::pre("gate table does not match the circuit alphabet"));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Same gates on a wider register.
    pub fn widened(&self, width: usize) -> Self {
        assert!(width >= self.width);
        ReversibleCircuit {
            width,
            ..self.clone()
        }
    }

    pub fn eval(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.width {
            return Err(Error::pre(format!(
                "input of length {} for a circuit of width {}",
                x.len(),
                self.width
            )));
        }
        if let Some(&s) = x.iter().find(|&&s| s as usize >= self.alphabet) {
            return Err(Error::pre(format!("symbol {s} outside the alphabet")));
        }
        let mut y = x.to_vec();
        self.eval_in_place(&mut y);
        Ok(y)
    }

    /// Unchecked evaluation for hot loops.
    pub fn eval_in_place(&self, state: &mut [u32]) {
        for g in &self.gates {
            g.apply(self.alphabet, state);
        }
    }

    pub fn inverse(&self) -> Self {
        ReversibleCircuit {
            alphabet: self.alphabet,
            width: self.width,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn is_planar(&self) -> bool {
        self.gates.iter().all(Gate::is_planar)
    }

    /// Rewrites every gate to act on consecutive wires in increasing order,
    /// conjugating by adjacent SWAP gates.
    pub fn planarize(&self) -> Self {
        let mut out = ReversibleCircuit::new(self.alphabet, self.width);
        for g in &self.gates {
            if g.is_planar() {
                out.gates.push(g.clone());
                continue;
            }
            let k = g.arity();
            let start = *g.wires.iter().min().unwrap();
            let mut at: Vec<usize> = (0..self.width).collect();
            let mut swaps = Vec::new();
            for (i, &w) in g.wires.iter().enumerate() {
                let mut p = at.iter().position(|&x| x == w).unwrap();
                while p > start + i {
                    at.swap(p - 1, p);
                    swaps.push(p - 1);
                    p -= 1;
                }
            }
            let swap = |p: usize| Gate::swap(self.alphabet, p, p + 1);
            out.gates.extend(swaps.iter().map(|&p| swap(p)));
            out.gates.push(g.on_wires((start..start + k).collect()));
            out.gates.extend(swaps.iter().rev().map(|&p| swap(p)));
        }
        out
    }

    /// Text block: `width n` followed by `gate <wires> <k> <images...>` lines, where
    /// `<wires>` is the window start for a planar gate and a comma list otherwise.
    pub fn gates_to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "width {}", self.width).unwrap();
        for g in &self.gates {
            let wires = if g.is_planar() {
                g.wires[0].to_string()
            } else {
                g.wires
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            write!(s, "gate {wires} {}", g.arity()).unwrap();
            for y in g.table.iter() {
                write!(s, " {y}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    /// Parses one `gate` line's arguments (everything after the keyword).
    pub(crate) fn parse_gate(&self, line: usize, args: &[&str]) -> Result<Gate> {
        if args.len() < 2 {
            return Err(Error::parse(line, "expected `gate <wire> <k> <images...>`"));
        }
        let k: usize = args[1]
            .parse()
            .map_err(|_| Error::parse(line, "bad gate arity"))?;
        let wires: Vec<usize> = if args[0].contains(',') {
            args[0]
                .split(',')
                .map(|t| t.parse().map_err(|_| Error::parse(line, "bad wire list")))
                .collect::<Result<_>>()?
        } else {
            let w: usize = args[0]
                .parse()
                .map_err(|_| Error::parse(line, "bad wire position"))?;
            (w..w + k).collect()
        };
        if wires.len() != k {
            return Err(Error::parse(line, "wire list does not match the arity"));
        }
        let table: Vec<u32> = args[2..]
            .iter()
            .map(|t| t.parse().map_err(|_| Error::parse(line, "bad image")))
            .collect::<Result<_>>()?;
        let gate = Gate::new(self.alphabet, wires, table).map_err(|e| Error::parse(line, e.to_string()))?;
        if gate.wires.iter().any(|&w| w >= self.width) {
            return Err(Error::parse(line, "gate wire outside the register"));
        }
        Ok(gate)
    }
}
