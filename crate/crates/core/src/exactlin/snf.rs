//! Smith normal form with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `U·M·V = D` with `D` diagonal, nonnegative and `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

pub fn snf(m: &IntMatrix) -> Snf {
    let mut e = Eliminator::new(m.clone(), true);
    e.run();
    Snf {
        d: e.a,
        u: e.u,
        v: e.v,
    }
}

/// Nonzero invariant factors (including ones) without tracking transforms.
pub fn snf_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut e = Eliminator::new(m.clone(), false);
    e.run();
    let n = e.a.rows().min(e.a.cols());
    (0..n)
        .map(|i| e.a[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

struct Eliminator {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    track: bool,
}

impl Eliminator {
    fn new(a: IntMatrix, track: bool) -> Self {
        let (u, v) = if track {
            (IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols()))
        } else {
            (IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0))
        };
        Eliminator { a, u, v, track }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if self.track {
            self.u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if self.track {
            self.v.swap_cols(i, j);
        }
    }

    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.sub_row_multiple(dst, src, q);
        if self.track {
            self.u.sub_row_multiple(dst, src, q);
        }
    }

    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.sub_col_multiple(dst, src, q);
        if self.track {
            self.v.sub_col_multiple(dst, src, q);
        }
    }

    /// Position of the smallest nonzero entry in the trailing block.
    fn smallest_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(b, _, _)| ax < *b) {
                    let unit = ax.is_one();
                    best = Some((ax, i, j));
                    if unit {
                        return best.map(|(_, i, j)| (i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) {
        let (m, n) = (self.a.rows(), self.a.cols());
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.smallest_from(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..m {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    self.sub_row(i, t, &q);
                    if !self.a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    self.sub_col(j, t, &q);
                    if !self.a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    // pivot must divide the whole trailing block
                    let p = self.a[(t, t)].clone();
                    let bad = (t + 1..m)
                        .find(|&i| (t + 1..n).any(|j| !self.a[(i, j)].is_multiple_of(&p)));
                    match bad {
                        None => break,
                        Some(i) => {
                            self.sub_row(t, i, &BigInt::from(-1));
                            continue;
                        }
                    }
                }
                // move the smallest entry of row/column t onto the diagonal
                let mut best: Option<(BigInt, usize, bool)> = None;
                for i in t..m {
                    let x = &self.a[(i, t)];
                    if !x.is_zero() && best.as_ref().is_none_or(|(b, _, _)| x.abs() < *b) {
                        best = Some((x.abs(), i, true));
                    }
                }
                for j in t + 1..n {
                    let x = &self.a[(t, j)];
                    if !x.is_zero() && best.as_ref().is_none_or(|(b, _, _)| x.abs() < *b) {
                        best = Some((x.abs(), j, false));
                    }
                }
                match best {
                    Some((_, i, true)) => self.swap_rows(t, i),
                    Some((_, j, false)) => self.swap_cols(t, j),
                    None => unreachable!("pivot vanished"),
                }
            }
            if self.a[(t, t)].is_negative() {
                self.a.negate_row(t);
                if self.track {
                    self.u.negate_row(t);
                }
            }
            t += 1;
        }
    }
}
