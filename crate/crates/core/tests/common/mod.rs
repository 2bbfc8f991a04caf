//! Oracles shared by the integration tests, written independently of the
//! library's Smith form and subtorus code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tilecoh::exactlin::IntMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rows(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(-bound..=bound)).collect())
        .collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_i64_rows(&random_rows(rng, rows, cols, bound))
}

/// Random unimodular matrix as a product of elementary operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let q = rng.random_range(-2..=2);
        for row in m.iter_mut() {
            row[a] += q * row[b];
        }
        if rng.random_bool(0.2) {
            for row in m.iter_mut() {
                row.swap(a, b);
            }
        }
    }
    m
}

pub fn to_grid(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Invariant factors by plain elementary operations: repeatedly pick the
/// first nonzero entry, clear its row and column with Euclidean steps, and
/// fold in any entry it does not divide.
pub fn naive_invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = to_grid(m);
    let (r, c) = (m.rows(), m.cols());
    let mut out = Vec::new();
    for t in 0..r.min(c) {
        let Some((pi, pj)) = (t..r)
            .flat_map(|i| (t..c).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..r {
                while !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..c {
                        let s = &q * &a[t][j];
                        a[i][j] -= s;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                    }
                    changed = true;
                }
            }
            for j in t + 1..c {
                while !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let s = &q * &row[t];
                        row[j] -= s;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                    changed = true;
                }
            }
            if !changed {
                let bad = (t + 1..r)
                    .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
                match bad {
                    Some((i, _)) => {
                        for j in t..c {
                            let s = a[i][j].clone();
                            a[t][j] += s;
                        }
                    }
                    None => break,
                }
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

fn det_small(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det_small(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors as ratios of determinantal divisors (gcd of all
/// `k x k` minors).
pub fn determinantal_invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let a = to_grid(m);
    let mut divisors = vec![BigInt::one()];
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| a[i][j].clone()).collect())
                    .collect();
                g = g.gcd(&det_small(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

/// Reduced row echelon form over the rationals; returns the pivot columns.
pub fn rref(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let (r, c) = (rows.len(), rows.first().map_or(0, Vec::len));
    let mut pivots = Vec::new();
    let mut t = 0;
    for j in 0..c {
        let Some(p) = (t..r).find(|&i| !rows[i][j].is_zero()) else {
            continue;
        };
        rows.swap(t, p);
        let inv = rows[t][j].recip();
        for x in rows[t].iter_mut() {
            *x *= &inv;
        }
        for i in 0..r {
            if i != t && !rows[i][j].is_zero() {
                let f = rows[i][j].clone();
                for k in 0..c {
                    let s = &f * &rows[t][k];
                    rows[i][k] -= s;
                }
            }
        }
        pivots.push(j);
        t += 1;
        if t == r {
            break;
        }
    }
    pivots
}

pub fn rational_grid(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

pub fn rational_rank(m: &IntMatrix) -> usize {
    rref(&mut rational_grid(m)).len()
}

/// Basis of the rational null space, one vector per free column.
pub fn rational_nullspace(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    let mut a = rational_grid(m);
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..m.cols()).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); m.cols()];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Clears denominators and divides by the content.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Solves `B x = v` for `B` of full column rank, if a rational solution exists.
pub fn rational_solve(columns: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = v.len();
    let k = columns.len();
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> =
                columns.iter().map(|c| BigRational::from_integer(c[i].clone())).collect();
            row.push(BigRational::from_integer(v[i].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = rows[row][k].clone();
    }
    Some(x)
}

pub fn rank_mod_p_naive(m: &IntMatrix, p: u64) -> usize {
    let p = p as i128;
    let mut a: Vec<Vec<i128>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| (x % BigInt::from(p)).to_i128().unwrap().rem_euclid(p))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for j in 0..m.cols() {
        let Some(pr) = (rank..a.len()).find(|&i| a[i][j] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        for i in 0..a.len() {
            if i != rank && a[i][j] != 0 {
                // a[i] <- a[rank][j]*a[i] - a[i][j]*a[rank]
                let (f, g) = (a[rank][j], a[i][j]);
                for k in 0..m.cols() {
                    a[i][k] = (f * a[i][k] - g * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Random subtorus of `T^6` of dimension `dim` with small stabilizer
/// entries and offsets with denominator `den`.
pub fn random_subtorus(rng: &mut ChaCha8Rng, dim: usize, den: i64) -> tilecoh::arrangement::Subtorus {
    use tilecoh::exactlin::Sublattice;
    loop {
        let rows: Vec<Vec<i64>> = (0..dim)
            .map(|_| (0..6).map(|_| [-1, 0, 0, 0, 1][rng.random_range(0..5)]).collect())
            .collect();
        let s = Sublattice::from_i64_vectors(6, &rows).unwrap();
        if s.rank() != dim {
            continue;
        }
        let offset: Vec<BigRational> = (0..6).map(|_| rat(rng.random_range(0..den), den)).collect();
        return tilecoh::arrangement::Subtorus::new(&s, &offset).unwrap();
    }
}

/// Whether `x` lies on `offset + span(basis) + Z^6`, decided by solving
/// for the image of `x - offset` under a rational complement projection.
pub fn on_torus(basis: &[Vec<BigInt>], offset: &[BigRational], x: &[BigRational]) -> bool {
    use tilecoh::exactlin::{member, Sublattice};
    let n = offset.len();
    let bt = if basis.is_empty() {
        IntMatrix::zeros(1, n)
    } else {
        IntMatrix::from_rows(basis.to_vec(), n).unwrap()
    };
    let phis = rational_nullspace(&bt);
    if phis.is_empty() {
        return true;
    }
    let diff: Vec<BigRational> = x.iter().zip(offset).map(|(a, b)| a - b).collect();
    let image: Vec<BigRational> = phis
        .iter()
        .map(|phi| phi.iter().zip(&diff).map(|(a, b)| a * b).sum())
        .collect();
    let gens: Vec<Vec<BigRational>> = (0..n).map(|i| phis.iter().map(|phi| phi[i].clone()).collect()).collect();
    let l = image
        .iter()
        .chain(gens.iter().flatten())
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scale = |v: &[BigRational]| -> Vec<BigInt> {
        v.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect()
    };
    let lattice = Sublattice::from_vectors(phis.len(), &gens.iter().map(|g| scale(g)).collect::<Vec<_>>()).unwrap();
    member(&lattice, &scale(&image)).unwrap()
}

/// Containment by definition: tangent inclusion plus the small offset on the big torus.
pub fn contains_oracle(big: &tilecoh::arrangement::Subtorus, small: &tilecoh::arrangement::Subtorus) -> bool {
    let bb = big.stabilizer().basis_vectors();
    small
        .stabilizer()
        .basis_vectors()
        .iter()
        .all(|v| rational_solve(&bb, v).is_some())
        && on_torus(&bb, big.offset(), small.offset())
}
