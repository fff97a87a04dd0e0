//! Independent oracles for Smith normal form and homology: determinantal
//! divisors, rational kernels and Gaussian elimination mod 2.

use hft_core::zmod::{gf2_normal_form, smith_normal_form, HomologyBasis, IntegerMatrix, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect())
        .collect()
}

pub fn to_matrix(m: &[Vec<i64>], cols: usize) -> IntegerMatrix {
    IntegerMatrix::from_rows(cols, m)
}

/// Fraction-free (Bareiss) determinant.
pub fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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

/// Invariant factors `D_k / D_{k-1}` from gcds of `k × k` minors.
pub fn invariant_factors(m: &[Vec<i64>], rows: usize, cols: usize) -> Vec<i128> {
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect())
                    .collect();
                g = g.gcd(&det(minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// Checks SNF invariant factors and the unimodular identities on `cases`
/// random matrices.
pub fn check_invariant_factors(seed: u64, cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let m = random_matrix(&mut rng, r, c);
        let a = to_matrix(&m, c);
        let s = smith_normal_form(&a);
        let expected = invariant_factors(&m, r, c);
        assert_eq!(s.rank, expected.len(), "rank of {m:?}");
        let got: Vec<i128> = s.diag[..s.rank]
            .iter()
            .map(|d| d.to_i128().unwrap())
            .collect();
        assert_eq!(got, expected, "invariant factors of {m:?}");
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d_matrix());
        assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(r));
        assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(c));
    }
}

pub fn rank_mod2(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<u8>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(2) as u8).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if let Some(p) = (rank..a.len()).find(|&r| a[r][c] == 1) {
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && a[r][c] == 1 {
                    let pivot = a[rank].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

pub fn check_gf2_rank(seed: u64, cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let m = random_matrix(&mut rng, r, c);
        let s = gf2_normal_form(&to_matrix(&m, c));
        assert_eq!(s.rank, rank_mod2(&m), "{m:?}");
    }
}

/// Integer vectors spanning the rational kernel of `a`.
pub fn rational_kernel(a: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            v.iter()
                .map(|x| {
                    (x * BigRational::from_integer(l.clone()))
                        .to_integer()
                        .to_i64()
                        .unwrap()
                })
                .collect()
        })
        .collect()
}

/// Checks `ker A / im B` over both rings on `cases` random pairs.
pub fn check_homology(seed: u64, cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nontrivial_torsion = 0;
    for _ in 0..cases {
        let (m, n, p) = (
            rng.gen_range(1..=5),
            rng.gen_range(1..=6),
            rng.gen_range(1..=5),
        );
        let a = random_matrix(&mut rng, m, n);
        let kernel = rational_kernel(&a, n);
        // b = kernel combination, columns scaled to create torsion
        let b: Vec<Vec<i64>> = if kernel.is_empty() {
            vec![vec![0; p]; n]
        } else {
            let mix: Vec<Vec<i64>> = (0..kernel.len())
                .map(|_| (0..p).map(|_| rng.gen_range(-2..=2)).collect())
                .collect();
            let scale: Vec<i64> = (0..p).map(|_| rng.gen_range(1..=3)).collect();
            (0..n)
                .map(|i| {
                    (0..p)
                        .map(|j| {
                            scale[j]
                                * (0..kernel.len())
                                    .map(|k| kernel[k][i] * mix[k][j])
                                    .sum::<i64>()
                        })
                        .collect()
                })
                .collect()
        };
        let (am, bm) = (to_matrix(&a, n), to_matrix(&b, p));
        assert!(am.mul(&bm).is_zero());
        let h = HomologyBasis::new(&am, &bm, Ring::Integers).unwrap();
        let rank_a = invariant_factors(&a, m, n).len();
        let fb = invariant_factors(&b, n, p);
        // ker A is saturated, so the torsion of ker A / im B is that of Z^n / im B.
        let torsion: Vec<BigInt> = fb
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| BigInt::from(d))
            .collect();
        assert_eq!(
            h.group.free_rank,
            n - rank_a - fb.len(),
            "free rank for {a:?} / {b:?}"
        );
        assert_eq!(h.group.torsion, torsion, "torsion for {a:?} / {b:?}");
        if !torsion.is_empty() {
            nontrivial_torsion += 1;
        }
        // over GF(2): dim ker A - rank B
        let h2 = HomologyBasis::new(&am, &bm, Ring::Gf2).unwrap();
        assert_eq!(h2.group.generators(), n - rank_mod2(&a) - rank_mod2(&b));
        assert!(
            h2.group.torsion.iter().all(|d| d == &BigInt::from(2)) || h2.group.torsion.is_empty()
        );
    }
    assert!(
        nontrivial_torsion > cases / 20,
        "too few torsion cases ({nontrivial_torsion})"
    );
}
