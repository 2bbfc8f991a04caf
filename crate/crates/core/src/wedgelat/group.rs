use std::collections::HashSet;

use num_rational::BigRational;

use crate::arrangement::Subtorus;
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, Sublattice};

/// Finite group of unimodular integer matrices, identity first, remaining
/// elements in breadth-first discovery order.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    elements: Vec<IntMatrix>,
}

impl MatrixGroup {
    pub fn trivial(n: usize) -> Self {
        MatrixGroup {
            elements: vec![IntMatrix::identity(n)],
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn dimension(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn contains(&self, g: &IntMatrix) -> bool {
        self.elements.contains(g)
    }
}

/// Closure of `generators` under multiplication. Fails once more than
/// `bound` distinct elements have been found.
pub fn group_closure(n: usize, generators: &[IntMatrix], bound: usize) -> Result<MatrixGroup> {
    for (index, g) in generators.iter().enumerate() {
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if g.rows() != n { g.rows() } else { g.cols() },
            });
        }
        if !g.is_unimodular() {
            return Err(Error::NotUnimodular { index });
        }
    }
    let id = IntMatrix::identity(n);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in generators {
                let b = a.mul(g)?;
                if seen.insert(b.clone()) {
                    if seen.len() > bound {
                        return Err(Error::GroupTooLarge { bound });
                    }
                    elements.push(b.clone());
                    next.push(b);
                }
            }
        }
        frontier = next;
    }
    Ok(MatrixGroup { elements })
}

/// Image of `t` under `g`: stabilizer and offset both mapped by `g`.
pub fn act_on_subtorus(g: &IntMatrix, t: &Subtorus) -> Result<Subtorus> {
    let stab = Sublattice::from_generators(&g.mul(t.stabilizer().basis())?);
    let offset: Vec<BigRational> = (0..g.rows())
        .map(|i| {
            g.row(i)
                .iter()
                .zip(t.offset())
                .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
                .sum()
        })
        .collect();
    Subtorus::new(&stab, &offset)
}
