use std::collections::BTreeSet;

use rayon::prelude::*;

use super::intersect::intersect_subtori;
use super::subtorus::{contains, Subtorus};
use crate::error::{Error, Result};
use crate::exactlin::{lattice_sum, Sublattice};
use crate::wedgelat::{act_on_subtorus, MatrixGroup};

/// Incidence structure of a finite union of rational 4-tori in `T^6`
/// together with their 2-dimensional and 0-dimensional intersections.
///
/// All lists are sorted by the canonical subtorus order, so indices are
/// reproducible.
#[derive(Clone, Debug)]
pub struct Arrangement {
    four_tori: Vec<Subtorus>,
    two_tori: Vec<Subtorus>,
    points: Vec<Subtorus>,
    /// For each 4-torus, the 2-tori it contains.
    incidence_12: Vec<Vec<usize>>,
    /// For each 4-torus, the points it contains.
    incidence_02: Vec<Vec<usize>>,
    /// For each 2-torus, the points it contains.
    incidence_01: Vec<Vec<usize>>,
}

impl Arrangement {
    /// Assembles an arrangement from explicit lists; incidences are
    /// recomputed by containment tests.
    pub fn from_parts(
        four_tori: Vec<Subtorus>,
        two_tori: Vec<Subtorus>,
        points: Vec<Subtorus>,
    ) -> Self {
        let incidence = |bigs: &[Subtorus], smalls: &[Subtorus]| -> Vec<Vec<usize>> {
            bigs.par_iter()
                .map(|b| {
                    smalls
                        .iter()
                        .enumerate()
                        .filter(|(_, s)| contains(b, s))
                        .map(|(i, _)| i)
                        .collect()
                })
                .collect()
        };
        let incidence_12 = incidence(&four_tori, &two_tori);
        let incidence_02 = incidence(&four_tori, &points);
        let incidence_01 = incidence(&two_tori, &points);
        Arrangement {
            four_tori,
            two_tori,
            points,
            incidence_12,
            incidence_02,
            incidence_01,
        }
    }

    pub fn four_tori(&self) -> &[Subtorus] {
        &self.four_tori
    }

    pub fn two_tori(&self) -> &[Subtorus] {
        &self.two_tori
    }

    pub fn points(&self) -> &[Subtorus] {
        &self.points
    }

    pub fn incidence_12(&self) -> &[Vec<usize>] {
        &self.incidence_12
    }

    pub fn incidence_02(&self) -> &[Vec<usize>] {
        &self.incidence_02
    }

    pub fn incidence_01(&self) -> &[Vec<usize>] {
        &self.incidence_01
    }

    pub fn l2(&self) -> usize {
        self.four_tori.len()
    }

    pub fn l1(&self) -> usize {
        self.two_tori.len()
    }

    pub fn l0(&self) -> usize {
        self.points.len()
    }

    pub fn l1_alpha(&self) -> Vec<usize> {
        self.incidence_12.iter().map(Vec::len).collect()
    }

    pub fn l0_alpha(&self) -> Vec<usize> {
        self.incidence_02.iter().map(Vec::len).collect()
    }

    pub fn l0_theta(&self) -> Vec<usize> {
        self.incidence_01.iter().map(Vec::len).collect()
    }

    /// Sum of the 4-torus stabilizers.
    pub fn stabilizer_span(&self) -> Result<Sublattice> {
        let mut acc = Sublattice::zero(6);
        for t in &self.four_tori {
            acc = lattice_sum(&acc, t.stabilizer())?;
        }
        Ok(acc)
    }

    /// Structural checks that hold by construction; a failure means a bug.
    pub fn check_invariants(&self) -> Result<()> {
        let mut covering_12 = vec![0usize; self.l1()];
        for (alpha, thetas) in self.incidence_12.iter().enumerate() {
            for &theta in thetas {
                covering_12[theta] += 1;
                if !self.four_tori[alpha]
                    .stabilizer()
                    .contains_lattice(self.two_tori[theta].stabilizer())?
                {
                    return Err(Error::IncidenceBroken { alpha, theta });
                }
            }
        }
        if let Some(theta) = covering_12.iter().position(|&c| c < 2) {
            return Err(Error::Invariant(format!(
                "2-torus {theta} lies in fewer than two 4-tori"
            )));
        }
        let mut covering_01 = vec![0usize; self.l0()];
        for pts in &self.incidence_01 {
            for &p in pts {
                covering_01[p] += 1;
            }
        }
        if let Some(p) = covering_01.iter().position(|&c| c < 2) {
            return Err(Error::Invariant(format!(
                "point {p} lies on fewer than two 2-tori"
            )));
        }
        Ok(())
    }

    /// Whether every torus list is mapped onto itself by every element of `group`.
    pub fn is_invariant_under(&self, group: &MatrixGroup) -> Result<bool> {
        for list in [&self.four_tori, &self.two_tori, &self.points] {
            let set: BTreeSet<&Subtorus> = list.iter().collect();
            for g in group.elements() {
                for t in list.iter() {
                    if !set.contains(&act_on_subtorus(g, t)?) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Orbit of the seeds under `group`, deduplicated and sorted.
pub fn expand_orbits(group: &MatrixGroup, seeds: &[Subtorus]) -> Result<Vec<Subtorus>> {
    let mut out = BTreeSet::new();
    for s in seeds {
        for g in group.elements() {
            out.insert(act_on_subtorus(g, s)?);
        }
    }
    Ok(out.into_iter().collect())
}

fn pairwise(
    tori: &[Subtorus],
    keep_dim: usize,
    what: &'static str,
) -> Result<Vec<Subtorus>> {
    let pairs: Vec<(usize, usize)> = (0..tori.len())
        .flat_map(|i| (i + 1..tori.len()).map(move |j| (i, j)))
        .collect();
    let found: Vec<Vec<Subtorus>> = pairs
        .par_iter()
        .map(|&(i, j)| intersect_subtori(&tori[i], &tori[j]))
        .collect::<Result<_>>()?;
    let mut out = BTreeSet::new();
    for c in found.into_iter().flatten() {
        if c.dim() != keep_dim {
            return Err(Error::NonGenericArrangement { what, rank: c.dim() });
        }
        out.insert(c);
    }
    Ok(out.into_iter().collect())
}

/// Builds the arrangement generated by the orbits of `seeds` under `group`.
pub fn build_arrangement(group: &MatrixGroup, seeds: &[Subtorus]) -> Result<Arrangement> {
    if seeds.is_empty() {
        return Err(Error::EmptySeed);
    }
    for (index, s) in seeds.iter().enumerate() {
        if s.dim() != 4 || s.ambient() != 6 {
            return Err(Error::RankDeficientSeed {
                index,
                rank: s.dim(),
            });
        }
    }
    let four_tori = expand_orbits(group, seeds)?;
    let two_tori = pairwise(&four_tori, 2, "4-tori")?;
    let points = pairwise(&two_tori, 0, "2-tori")?;
    Ok(Arrangement::from_parts(four_tori, two_tori, points))
}
