//! Cohomology of the tiling space from the arrangement homology and the
//! `S_k` groups.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactlin::{rank_mod_p, AbelianGroup};
use crate::mvss::{build_d1, homology_from_d1, homology_mod_p_from_d1, AHomology, D1Matrix};
use crate::skgroups::{
    compute_sk, m1_generators, m1prime_generators, top_wedge_matrix, S3Status, SkGroups,
};
use crate::wedgelat::binomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    #[serde(rename = "L2")]
    pub l2: usize,
    #[serde(rename = "L1")]
    pub l1: usize,
    #[serde(rename = "L0")]
    pub l0: usize,
    #[serde(rename = "L1_alpha")]
    pub l1_alpha: Vec<usize>,
    #[serde(rename = "L0_alpha")]
    pub l0_alpha: Vec<usize>,
    #[serde(rename = "L0_theta")]
    pub l0_theta: Vec<usize>,
    #[serde(rename = "L1_alpha_total")]
    pub l1_alpha_total: usize,
    #[serde(rename = "L0_alpha_total")]
    pub l0_alpha_total: usize,
    #[serde(rename = "L0_theta_total")]
    pub l0_theta_total: usize,
}

impl Counts {
    pub fn of(arr: &Arrangement) -> Self {
        Counts {
            l2: arr.l2(),
            l1: arr.l1(),
            l0: arr.l0(),
            l1_alpha: arr.l1_alpha(),
            l0_alpha: arr.l0_alpha(),
            l0_theta: arr.l0_theta(),
            l1_alpha_total: arr.l1_alpha().iter().sum(),
            l0_alpha_total: arr.l0_alpha().iter().sum(),
            l0_theta_total: arr.l0_theta().iter().sum(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionSource {
    pub degree: usize,
    pub factor: String,
    pub source: String,
}

/// `H^3` torsion when the `S_3` bounds do not meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionBracket {
    /// Torsion if the image of the boundary map is the saturated bound.
    pub assuming_upper_bound: AbelianGroup,
    /// Torsion if the image is only the proven lower bound.
    pub assuming_lower_bound: AbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTable {
    pub rational: Vec<usize>,
    pub mod_p: BTreeMap<u64, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    /// `H^0` through `H^3` of the tiling space.
    pub h: Vec<AbelianGroup>,
    pub chi: i64,
    /// `rk H^3 - rk H^2 + rk H^1 - rk H^0`.
    pub chi_betti: i64,
    pub s3_status: S3Status,
    pub homology_a: AHomology,
    /// `S_0` through `S_3`; `S_3` is absent when undetermined.
    pub s: Vec<Option<AbelianGroup>>,
    pub s3_lower_quotient: AbelianGroup,
    pub h3_torsion_bracket: Option<TorsionBracket>,
    pub rank_table: RankTable,
    pub counts: Counts,
    pub torsion_sources: Vec<TorsionSource>,
    pub warnings: Vec<String>,
}

/// Everything computed along the way, kept for verification passes.
pub struct Computation {
    pub d1: D1Matrix,
    pub sk: SkGroups,
    pub result: CohomologyResult,
}

pub fn cohomology(arr: &Arrangement) -> Result<CohomologyResult> {
    Ok(compute(arr, &[])?.result)
}

/// Full computation with extra `F_p` rank tables for `primes`.
pub fn compute(arr: &Arrangement, primes: &[u64]) -> Result<Computation> {
    let d1 = build_d1(arr)?;
    let ha = homology_from_d1(arr, &d1)?;
    let sk = compute_sk(arr)?;
    let mut warnings = Vec::new();

    let span = arr.stabilizer_span()?;
    if span.rank() < 6 {
        warnings.push(format!(
            "4-torus stabilizers span only rank {}; H_1(A) = Z^6 is assumed, not guaranteed",
            span.rank()
        ));
    }

    let rational = rational_ranks(&ha, &sk)?;
    let s3_status = sk.s3_verdict.status;
    let h3_torsion = ha.h[2].torsion();
    let h = vec![
        AbelianGroup::free(rational[0]),
        AbelianGroup::free(rational[1]),
        AbelianGroup {
            free_rank: rational[2],
            factors: sk.s2.factors.clone(),
        },
        AbelianGroup {
            free_rank: rational[3],
            factors: h3_torsion.factors.clone(),
        },
    ];

    let h3_torsion_bracket = if s3_status.is_free() {
        None
    } else {
        warnings.push(
            "S_3 bounds do not meet: ranks are exact, H^3 torsion is only bracketed".to_string(),
        );
        Some(TorsionBracket {
            assuming_upper_bound: h3_torsion.clone(),
            assuming_lower_bound: h3_torsion.direct_sum(&sk.s3_verdict.lower_quotient.torsion()),
        })
    };

    let chi_betti =
        rational[3] as i64 - rational[2] as i64 + rational[1] as i64 - rational[0] as i64;
    if chi_betti != ha.chi {
        warnings.push(format!(
            "alternating rank sum {chi_betti} differs from the Euler characteristic {}",
            ha.chi
        ));
    }

    let mut torsion_sources = Vec::new();
    for d in &h[2].factors {
        torsion_sources.push(TorsionSource {
            degree: 2,
            factor: d.to_string(),
            source: "S_2".into(),
        });
    }
    for d in &h[3].factors {
        torsion_sources.push(TorsionSource {
            degree: 3,
            factor: d.to_string(),
            source: "coker d1".into(),
        });
    }

    let mut mod_p = BTreeMap::new();
    for &p in primes {
        mod_p.insert(p, modular_ranks(arr, &d1, p)?.cohomology);
    }

    let s = vec![
        Some(sk.s0.clone()),
        Some(sk.s1.clone()),
        Some(sk.s2.clone()),
        sk.s3_verdict.s3.clone(),
    ];
    let result = CohomologyResult {
        h,
        chi: ha.chi,
        chi_betti,
        s3_status,
        s3_lower_quotient: sk.s3_verdict.lower_quotient.clone(),
        homology_a: ha,
        s,
        h3_torsion_bracket,
        rank_table: RankTable { rational, mod_p },
        counts: Counts::of(arr),
        torsion_sources,
        warnings,
    };
    check_torsion_provenance(&result)?;
    Ok(Computation { d1, sk, result })
}

/// `rk H^k = rk H_{5-k}(A) + rk S_k + rk S_{k+1} - C(6, k+1)` for `k = 0..3`.
fn rational_ranks(ha: &AHomology, sk: &SkGroups) -> Result<Vec<usize>> {
    let a_rank = |j: usize| if j <= 4 { ha.h[j].free_rank } else { 0 };
    (0..4)
        .map(|k| {
            let value = a_rank(5 - k) as i64 + sk.rank(k) as i64 + sk.rank(k + 1) as i64
                - binomial(6, k + 1) as i64;
            usize::try_from(value).map_err(|_| Error::InconsistentRanks { degree: k, value })
        })
        .collect()
}

/// Torsion of `H^2` must be that of `S_2`, torsion of `H^3` that of the
/// cokernel of `d1` when `S_3` is free.
pub fn check_torsion_provenance(r: &CohomologyResult) -> Result<()> {
    if !r.h[0].is_free() || !r.h[1].is_free() {
        return Err(Error::Invariant("H^0 or H^1 carries torsion".into()));
    }
    let s2 = r.s[2].as_ref().expect("S_2 always computed");
    if r.h[2].factors != s2.factors {
        return Err(Error::Invariant(format!(
            "H^2 torsion {} does not match S_2 torsion {}",
            r.h[2].torsion(),
            s2.torsion()
        )));
    }
    if r.s3_status.is_free() && r.h[3].factors != r.homology_a.coker_d1.factors {
        return Err(Error::Invariant(format!(
            "H^3 torsion {} does not match coker d1 torsion {}",
            r.h[3].torsion(),
            r.homology_a.coker_d1.torsion()
        )));
    }
    for k in [3, 4] {
        if !r.homology_a.h[k].is_free() {
            return Err(Error::Invariant(format!("H_{k}(A) carries torsion")));
        }
    }
    Ok(())
}

/// Ranks over `F_p`, each from its own modular elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularRanks {
    pub homology_a: Vec<usize>,
    pub s: Vec<usize>,
    pub cohomology: Vec<usize>,
}

pub fn modular_ranks(arr: &Arrangement, d1: &D1Matrix, p: u64) -> Result<ModularRanks> {
    let homology_a = homology_mod_p_from_d1(arr, d1, p)?;
    let s2 = 15 - rank_mod_p(&top_wedge_matrix(arr)?, p)?;
    let lower = m1_generators(arr)?.hstack(&m1prime_generators(arr)?)?;
    let s3 = 20 - rank_mod_p(&lower, p)?;
    let s = vec![1, 6, s2, s3];
    let s_at = |k: usize| s.get(k).copied().unwrap_or(0) as i64;
    let a_at = |j: usize| homology_a.get(j).copied().unwrap_or(0) as i64;
    let cohomology = (0..4)
        .map(|k| {
            let value = a_at(5 - k) + s_at(k) + s_at(k + 1) - binomial(6, k + 1) as i64;
            usize::try_from(value).map_err(|_| Error::InconsistentRanks { degree: k, value })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModularRanks {
        homology_a,
        s,
        cohomology,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identity {
    pub name: String,
    pub expected: i64,
    pub found: i64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub prime: u64,
    pub identities: Vec<Identity>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|i| i.passed)
    }

    fn push(&mut self, name: String, expected: i64, found: i64) {
        self.identities.push(Identity {
            name,
            expected,
            found,
            passed: expected == found,
        });
    }
}

/// Recomputes every rank over `F_p` and checks the universal coefficient
/// relations against the integral result.
pub fn verify_mod_p(arr: &Arrangement, result: &CohomologyResult, p: u64) -> Result<VerificationReport> {
    let d1 = build_d1(arr)?;
    let m = modular_ranks(arr, &d1, p)?;
    let mut rep = VerificationReport {
        prime: p,
        identities: Vec::new(),
    };
    let ha = &result.homology_a;
    let tp_h2a = ha.h[2].p_torsion_rank(p) as i64;
    let rk_a = |j: usize| ha.h[j].free_rank as i64;

    for j in [0, 1, 4] {
        rep.push(format!("dim H_{j}(A;F_p) = rk H_{j}(A)"), rk_a(j), m.homology_a[j] as i64);
    }
    rep.push(
        "dim H_2(A;F_p) - rk H_2(A) = T_p(H_2(A))".into(),
        tp_h2a,
        m.homology_a[2] as i64 - rk_a(2),
    );
    rep.push(
        "dim H_3(A;F_p) - rk H_3(A) = T_p(H_2(A))".into(),
        tp_h2a,
        m.homology_a[3] as i64 - rk_a(3),
    );

    let s2 = result.s[2].as_ref().expect("S_2 always computed");
    rep.push(
        "dim S_2(F_p) - rk S_2 = T_p(S_2)".into(),
        s2.p_torsion_rank(p) as i64,
        m.s[2] as i64 - s2.free_rank as i64,
    );
    if let Some(s3) = &result.s[3] {
        rep.push("dim S_3(F_p) = rk S_3".into(), s3.free_rank as i64, m.s[3] as i64);
    }

    let h = &result.h;
    let tp = |k: usize| h.get(k).map_or(0, |g| g.p_torsion_rank(p)) as i64;
    for k in 0..4 {
        rep.push(
            format!("dim H^{k}(F_p) - rk H^{k} = T_p(H^{k}) + T_p(H^{})", k + 1),
            tp(k) + tp(k + 1),
            m.cohomology[k] as i64 - h[k].free_rank as i64,
        );
    }
    rep.push(
        "dim H^3(F_p) - rk H^3 = T_p(H_2(A))".into(),
        tp_h2a,
        m.cohomology[3] as i64 - h[3].free_rank as i64,
    );
    Ok(rep)
}

/// Primes dividing any invariant factor in the result.
pub fn relevant_primes(result: &CohomologyResult) -> Vec<u64> {
    let mut groups: Vec<&AbelianGroup> = result.h.iter().collect();
    groups.extend(result.homology_a.h.iter());
    groups.extend(result.s.iter().flatten());
    let mut primes = std::collections::BTreeSet::new();
    for g in groups {
        for d in &g.factors {
            let mut n = d.clone();
            let mut q = BigInt::from(2);
            while &q * &q <= n {
                while n.is_multiple_of(&q) {
                    primes.insert(q.to_u64().expect("small prime"));
                    n /= &q;
                }
                q += 1;
            }
            if n > BigInt::one() {
                primes.insert(n.to_u64().unwrap_or(u64::MAX));
            }
        }
    }
    primes.into_iter().collect()
}
