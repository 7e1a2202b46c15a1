use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntegerMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q · row[src], from column `from` on.
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for j in from..self.cols {
            let v = &self.data[src * self.cols + j];
            if !v.is_zero() {
                let t = q * v;
                self.data[dst * self.cols + j] -= t;
            }
        }
    }

    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        for i in from..self.rows {
            let v = &self.data[i * self.cols + src];
            if !v.is_zero() {
                let t = q * v;
                self.data[i * self.cols + dst] -= t;
            }
        }
    }
}

/// Diagonal `d₁ | d₂ | …` of length `min(rows, cols)`, nonnegative, zeros last.
/// Pivots on the entry of least absolute value to keep coefficients small.
pub fn smith_normal_form(matrix: &IntegerMatrix) -> Vec<BigInt> {
    let mut m = matrix.clone();
    let n = m.rows.min(m.cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            // least nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    let v = m.get(i, j);
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m.get(bi, bj).abs()) {
                        best = Some((i, j));
                        if v.abs().is_one() {
                            break;
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.resize(n, BigInt::zero());
                return diag;
            };
            m.swap_rows(t, pi);
            m.swap_cols(t, pj);

            let pivot = m.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m.rows {
                if !m.get(i, t).is_zero() {
                    let q = m.get(i, t).div_floor(&pivot);
                    m.sub_row(i, t, &q, t);
                    clean &= m.get(i, t).is_zero();
                }
            }
            for j in t + 1..m.cols {
                if !m.get(t, j).is_zero() {
                    let q = m.get(t, j).div_floor(&pivot);
                    m.sub_col(j, t, &q, t);
                    clean &= m.get(t, j).is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and go again
            let offending = (t + 1..m.rows).find(|&i| {
                (t + 1..m.cols).any(|j| !m.get(i, j).is_multiple_of(&pivot))
            });
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    m.sub_row(t, i, &minus_one, t);
                }
                None => {
                    diag.push(pivot.abs());
                    break;
                }
            }
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(smith_normal_form(&IntegerMatrix::identity(3)), big(&[1, 1, 1]));
        assert_eq!(smith_normal_form(&IntegerMatrix::zeros(2, 3)), big(&[0, 0]));
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&m), big(&[2, 4]));
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m), big(&[1, 6]));
        assert_eq!(smith_normal_form(&IntegerMatrix::zeros(0, 4)), big(&[]));
    }
}
