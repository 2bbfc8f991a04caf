use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::snf_diagonal;

/// Finitely generated abelian group `Z^r ⊕ Z_{d1} ⊕ ... ⊕ Z_{dk}` with
/// `d1 | d2 | ... | dk` and every `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "factor_serde")]
    pub factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            factors: Vec::new(),
        }
    }

    /// Builds the group from a free rank and an arbitrary list of cyclic
    /// orders (any order, units allowed), normalizing to invariant factors.
    pub fn from_cyclic(free_rank: usize, orders: &[BigInt]) -> Self {
        let nonunit: Vec<BigInt> = orders
            .iter()
            .map(|d| d.magnitude().clone().into())
            .filter(|d: &BigInt| !d.is_one())
            .collect();
        let extra_free = nonunit.iter().filter(|d| d.is_zero()).count();
        let torsion: Vec<BigInt> = nonunit.into_iter().filter(|d| !d.is_zero()).collect();
        let factors = if torsion.is_empty() {
            Vec::new()
        } else {
            let diag = IntMatrix::from_rows(
                (0..torsion.len())
                    .map(|i| {
                        (0..torsion.len())
                            .map(|j| if i == j { torsion[i].clone() } else { BigInt::zero() })
                            .collect()
                    })
                    .collect(),
                torsion.len(),
            )
            .expect("square literal");
            snf_diagonal(&diag).into_iter().filter(|d| !d.is_one()).collect()
        };
        AbelianGroup {
            free_rank: free_rank + extra_free,
            factors,
        }
    }

    pub fn is_free(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of invariant factors divisible by `p`.
    pub fn p_torsion_rank(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.factors.iter().filter(|d| d.is_multiple_of(&p)).count()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn torsion(&self) -> AbelianGroup {
        AbelianGroup {
            free_rank: 0,
            factors: self.factors.clone(),
        }
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = self.factors.clone();
        orders.extend(other.factors.iter().cloned());
        Self::from_cyclic(self.free_rank + other.free_rank, &orders)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.factors.len() {
            let d = &self.factors[i];
            let run = self.factors[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("Z_{d}"));
            } else {
                parts.push(format!("Z_{d}^{run}"));
            }
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Factors travel as JSON numbers when they fit in `u64`, as decimal
/// strings otherwise.
mod factor_serde {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for d in v {
            match u64::try_from(d) {
                Ok(x) => seq.serialize_element(&x)?,
                Err(_) => seq.serialize_element(&d.to_string())?,
            }
        }
        seq.end()
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(u64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(|r| match r {
                Repr::Num(x) => Ok(BigInt::from(x)),
                Repr::Text(t) => t.parse::<BigInt>().map_err(D::Error::custom),
            })
            .collect()
    }
}
