use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::subtorus::{dot, frac, Subtorus};
use crate::error::{Error, Result};
use crate::exactlin::{kernel, snf};

/// Connected components of `t1 ∩ t2`, sorted.
///
/// A point `x` lies on both iff `Q·x ≡ c (mod Z)` where `Q` stacks the two
/// annihilators and `c` the two keys. With `U·Q·V = D` in Smith form and
/// `y = V⁻¹x` this splits into `d_i·y_i ≡ (U·c)_i`; each choice of
/// `y_i = ((U·c)_i + k_i) / d_i`, `0 ≤ k_i < d_i`, gives one component.
pub fn intersect_subtori(t1: &Subtorus, t2: &Subtorus) -> Result<Vec<Subtorus>> {
    let n = t1.ambient();
    if t2.ambient() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t2.ambient(),
        });
    }
    if t1 == t2 {
        return Ok(vec![t1.clone()]);
    }
    let q = t1.annihilator().vstack(t2.annihilator())?;
    let mut c = t1.key().to_vec();
    c.extend(t2.key().iter().cloned());
    if q.rows() == 0 {
        return Ok(vec![t1.clone()]);
    }

    let s = snf(&q);
    let uc: Vec<BigRational> = (0..q.rows()).map(|i| dot(s.u.row(i), &c)).collect();
    let diag = s.diagonal();
    let r = diag.len();
    if uc[r..].iter().any(|x| !frac(x).is_zero()) {
        return Ok(Vec::new());
    }
    let stabilizer = kernel(&q);

    let counts: Vec<usize> = diag
        .iter()
        .map(|d| d.to_usize().expect("component count fits in usize"))
        .collect();
    let mut out = BTreeSet::new();
    let mut digits = vec![0usize; r];
    loop {
        let mut y = vec![BigRational::zero(); n];
        for i in 0..r {
            y[i] = (&uc[i] + BigRational::from_integer(BigInt::from(digits[i])))
                / BigRational::from_integer(diag[i].clone());
        }
        let x: Vec<BigRational> = (0..n).map(|i| dot(s.v.row(i), &y)).collect();
        out.insert(Subtorus::new(&stabilizer, &x)?);

        // odometer over the digit ranges
        let mut i = 0;
        while i < r {
            digits[i] += 1;
            if digits[i] < counts[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    Ok(out.into_iter().collect())
}
