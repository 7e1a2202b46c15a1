use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use rand::Rng;

use crate::bounds::WorkBounds;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoolOp {
    And,
    Or,
    Not,
    Copy,
}

impl BoolOp {
    pub fn arity(self) -> usize {
        match self {
            BoolOp::And | BoolOp::Or => 2,
            BoolOp::Not | BoolOp::Copy => 1,
        }
    }

    pub fn eval(self, args: &[bool]) -> bool {
        match self {
            BoolOp::And => args[0] && args[1],
            BoolOp::Or => args[0] || args[1],
            BoolOp::Not => !args[0],
            BoolOp::Copy => args[0],
        }
    }

    fn name(self) -> &'static str {
        match self {
            BoolOp::And => "AND",
            BoolOp::Or => "OR",
            BoolOp::Not => "NOT",
            BoolOp::Copy => "COPY",
        }
    }
}

/// One gate; `inputs` are node ids. Nodes `0..inputs` are the circuit inputs and
/// gate `i` defines node `inputs + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolGate {
    pub op: BoolOp,
    pub inputs: Vec<usize>,
}

/// A Boolean circuit over {AND, OR, NOT, COPY} in topological order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanCircuit {
    inputs: usize,
    gates: Vec<BoolGate>,
    output: usize,
}

impl BooleanCircuit {
    pub fn new(inputs: usize, gates: Vec<BoolGate>, output: usize) -> Result<Self> {
        if inputs == 0 {
            return Err(Error::pre("a circuit needs at least one input"));
        }
        for (i, g) in gates.iter().enumerate() {
            if g.inputs.len() != g.op.arity() {
                return Err(Error::pre(format!(
                    "gate {i} ({}) takes {} arguments, got {}",
                    g.op.name(),
                    g.op.arity(),
                    g.inputs.len()
                )));
            }
            if let Some(&bad) = g.inputs.iter().find(|&&x| x >= inputs + i) {
                return Err(Error::pre(format!(
                    "gate {i} reads node {bad}, which is not defined before it"
                )));
            }
            if g.inputs.len() == 2 && g.inputs[0] == g.inputs[1] {
                return Err(Error::pre(format!("gate {i} reads node {} twice", g.inputs[0])));
            }
        }
        if output >= inputs + gates.len() {
            return Err(Error::pre(format!("output node {output} does not exist")));
        }
        Ok(BooleanCircuit {
            inputs,
            gates,
            output,
        })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn gates(&self) -> &[BoolGate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn node_count(&self) -> usize {
        self.inputs + self.gates.len()
    }

    /// Input bit `i` is `(x >> i) & 1`.
    pub fn eval(&self, x: u64) -> bool {
        let mut val = Vec::with_capacity(self.node_count());
        val.extend((0..self.inputs).map(|i| (x >> i) & 1 == 1));
        let mut args = [false; 2];
        for g in &self.gates {
            for (slot, &a) in args.iter_mut().zip(&g.inputs) {
                *slot = val[a];
            }
            val.push(g.op.eval(&args[..g.inputs.len()]));
        }
        val[self.output]
    }

    /// Text form: `in n`, one gate per line (`AND a b -> c`, `NOT a -> c`, ...),
    /// then `out c`. Node names are arbitrary tokens; inputs are `0..n`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut inputs = None;
        let mut names: HashMap<String, usize> = HashMap::new();
        let mut gates = Vec::new();
        let mut output = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let node = |names: &HashMap<String, usize>, t: &str| {
                names
                    .get(t)
                    .copied()
                    .ok_or_else(|| Error::parse(line_no, format!("unknown node {t}")))
            };
            match toks[0].to_ascii_uppercase().as_str() {
                "IN" => {
                    let n: usize = toks
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::parse(line_no, "expected `in <count>`"))?;
                    if inputs.is_some() {
                        return Err(Error::parse(line_no, "repeated `in` line"));
                    }
                    for i in 0..n {
                        names.insert(i.to_string(), i);
                    }
                    inputs = Some(n);
                }
                "OUT" => {
                    let t = toks
                        .get(1)
                        .ok_or_else(|| Error::parse(line_no, "expected `out <node>`"))?;
                    output = Some(node(&names, t)?);
                }
                op_name => {
                    let n = inputs.ok_or_else(|| Error::parse(line_no, "gate before `in`"))?;
                    let op = match op_name {
                        "AND" => BoolOp::And,
                        "OR" => BoolOp::Or,
                        "NOT" => BoolOp::Not,
                        "COPY" => BoolOp::Copy,
                        other => {
                            return Err(Error::parse(line_no, format!("unknown gate {other}")))
                        }
                    };
                    let arrow = toks
                        .iter()
                        .position(|&t| t == "->")
                        .ok_or_else(|| Error::parse(line_no, "missing `->`"))?;
                    if arrow != op.arity() + 1 || toks.len() != arrow + 2 {
                        return Err(Error::parse(line_no, "malformed gate line"));
                    }
                    let args = toks[1..arrow]
                        .iter()
                        .map(|t| node(&names, t))
                        .collect::<Result<Vec<_>>>()?;
                    let target = toks[arrow + 1];
                    if names.contains_key(target) {
                        return Err(Error::parse(line_no, format!("node {target} defined twice")));
                    }
                    names.insert(target.to_string(), n + gates.len());
                    gates.push(BoolGate { op, inputs: args });
                }
            }
        }
        let inputs = inputs.ok_or_else(|| Error::parse(0, "missing `in` line"))?;
        let output = output.unwrap_or((inputs + gates.len()).saturating_sub(1));
        Self::new(inputs, gates, output)
    }

    /// A uniformly random circuit with `inputs` inputs and `gates` gates.
    pub fn random<R: Rng>(rng: &mut R, inputs: usize, gates: usize) -> Self {
        let ops = [BoolOp::And, BoolOp::Or, BoolOp::Not, BoolOp::Copy];
        let mut list = Vec::with_capacity(gates);
        for i in 0..gates {
            let nodes = inputs + i;
            let mut op = ops[rng.gen_range(0..4)];
            if nodes < 2 && op.arity() == 2 {
                op = BoolOp::Not;
            }
            let args = if op.arity() == 2 {
                let a = rng.gen_range(0..nodes);
                let mut b = rng.gen_range(0..nodes - 1);
                if b >= a {
                    b += 1;
                }
                vec![a, b]
            } else {
                vec![rng.gen_range(0..nodes)]
            };
            list.push(BoolGate { op, inputs: args });
        }
        let output = inputs + gates - 1;
        Self::new(inputs, list, output).expect("random circuit is well formed")
    }

    /// Every circuit with exactly `inputs` inputs and `gates` gates whose output is
    /// the last node; binary gates read two distinct nodes in increasing order.
    pub fn enumerate(inputs: usize, gates: usize) -> Vec<BooleanCircuit> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        enumerate_rec(inputs, gates, &mut current, &mut out);
        out
    }
}

fn enumerate_rec(
    inputs: usize,
    gates: usize,
    current: &mut Vec<BoolGate>,
    out: &mut Vec<BooleanCircuit>,
) {
    if current.len() == gates {
        let output = inputs + gates - 1;
        out.push(BooleanCircuit::new(inputs, current.clone(), output).unwrap());
        return;
    }
    let nodes = inputs + current.len();
    let mut choices = Vec::new();
    for op in [BoolOp::And, BoolOp::Or] {
        for a in 0..nodes {
            for b in a + 1..nodes {
                choices.push(BoolGate {
                    op,
                    inputs: vec![a, b],
                });
            }
        }
    }
    for op in [BoolOp::Not, BoolOp::Copy] {
        for a in 0..nodes {
            choices.push(BoolGate { op, inputs: vec![a] });
        }
    }
    for g in choices {
        current.push(g);
        enumerate_rec(inputs, gates, current, out);
        current.pop();
    }
}

impl fmt::Display for BooleanCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "in {}", self.inputs)?;
        for (i, g) in self.gates.iter().enumerate() {
            write!(f, "{}", g.op.name())?;
            for a in &g.inputs {
                write!(f, " {a}")?;
            }
            writeln!(f, " -> {}", self.inputs + i)?;
        }
        writeln!(f, "out {}", self.output)
    }
}

/// Number of inputs on which the circuit outputs true.
pub fn count_csat(c: &BooleanCircuit, bounds: &WorkBounds) -> Result<BigUint> {
    if c.inputs >= 64 || (1u64 << c.inputs) > bounds.max_enumeration {
        return Err(Error::bound(
            "CSAT enumeration",
            format!("2^{}", c.inputs),
            bounds.max_enumeration,
        ));
    }
    let n = 1u64 << c.inputs;
    Ok(BigUint::from((0..n).filter(|&x| c.eval(x)).count()))
}
